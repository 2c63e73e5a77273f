//! Analytic reference states and brute-force quadrature oracles, kept
//! independent of the library's FFT transform path.

// shared across test binaries; not every binary uses every oracle
#![allow(dead_code)]

use num_complex::Complex64 as C64;

pub const PI: f64 = std::f64::consts::PI;

/// Closed-form oscillator eigenstate ψ_n(x) for ħ = 1, written with explicit
/// Hermite polynomials (no recurrence shared with the library).
pub fn psi_n(n: usize) -> impl Fn(f64) -> C64 {
    move |x: f64| {
        let norm = PI.powf(-0.25);
        let gauss = (-x * x / 2.0).exp();
        let h = match n {
            0 => 1.0,
            1 => 2.0 * x,
            2 => 4.0 * x * x - 2.0,
            3 => 8.0 * x.powi(3) - 12.0 * x,
            5 => 32.0 * x.powi(5) - 160.0 * x.powi(3) + 120.0 * x,
            _ => panic!("oracle only carries n ∈ {{0,1,2,3,5}}"),
        };
        let fact = [1.0, 1.0, 2.0, 6.0, 24.0, 120.0][n];
        let coeff = 1.0 / (2f64.powi(n as i32) * fact).sqrt();
        C64::new(norm * coeff * h * gauss, 0.0)
    }
}

/// Coherent state displaced to (x0, p0) with the e^{i p0 x} phase
/// convention (ħ = 1).
pub fn psi_coherent(x0: f64, p0: f64) -> impl Fn(f64) -> C64 {
    move |x: f64| {
        let env = PI.powf(-0.25) * (-(x - x0) * (x - x0) / 2.0).exp();
        C64::new(0.0, p0 * x).exp() * env
    }
}

/// Normalized cat state: coherent states at ±d/2 with parity ±1 (ħ = 1).
pub fn psi_cat(d: f64, parity: f64) -> impl Fn(f64) -> C64 {
    let a = d / 2.0;
    let norm = (2.0 * (1.0 + parity * (-d * d / 4.0).exp())).sqrt().recip();
    move |x: f64| {
        let plus = PI.powf(-0.25) * (-(x - a) * (x - a) / 2.0).exp();
        let minus = PI.powf(-0.25) * (-(x + a) * (x + a) / 2.0).exp();
        C64::new(norm * (plus + parity * minus), 0.0)
    }
}

/// Simpson quadrature of a complex integrand over [lo, hi].
pub fn simpson<F: Fn(f64) -> C64>(f: F, lo: f64, hi: f64, intervals: usize) -> C64 {
    let n = if intervals.is_multiple_of(2) { intervals } else { intervals + 1 };
    let h = (hi - lo) / n as f64;
    let mut acc = f(lo) + f(hi);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(lo + i as f64 * h);
    }
    acc * (h / 3.0)
}

/// Brute-force Wigner value W(x, p) = (1/π) ∫ψ*(x+y)ψ(x−y)e^{2ipy}dy (ħ=1),
/// computed by direct quadrature of the defining integral.
pub fn wigner_point<F: Fn(f64) -> C64>(psi: &F, x: f64, p: f64) -> f64 {
    let val = simpson(
        |y| psi(x + y).conj() * psi(x - y) * C64::new(0.0, 2.0 * p * y).exp(),
        -12.0,
        12.0,
        24000,
    );
    val.re / PI
}

/// Brute-force Husimi value via the coherent-state overlap route:
/// Q(x, p) = |⟨φ_{x,p}|ψ⟩|² / 2π with the κ-squeezed minimal packet (ħ=1).
pub fn husimi_point<F: Fn(f64) -> C64>(psi: &F, x: f64, p: f64, kappa: f64) -> f64 {
    let packet = move |y: f64| {
        let norm = (PI * kappa).powf(-0.25);
        let env = norm * (-(y - x) * (y - x) / (2.0 * kappa)).exp();
        C64::new(0.0, p * y).exp() * env
    };
    let overlap = simpson(|y| packet(y).conj() * psi(y), -12.0, 12.0, 4800);
    overlap.norm_sqr() / (2.0 * PI)
}

/// |ψ̃(p)|² for the closed-form fixtures (ħ = 1): oscillator eigenstates are
/// Fourier eigenfunctions; displacement only shifts phases.
pub fn momentum_density_fock(n: usize) -> impl Fn(f64) -> f64 {
    let psi = psi_n(n);
    move |p: f64| psi(p).norm_sqr()
}

pub fn momentum_density_coherent(p0: f64) -> impl Fn(f64) -> f64 {
    move |p: f64| PI.powf(-0.5) * (-(p - p0) * (p - p0)).exp()
}

pub fn momentum_density_cat(d: f64, parity: f64) -> impl Fn(f64) -> f64 {
    let a = d / 2.0;
    let norm_sq = 1.0 / (2.0 * (1.0 + parity * (-d * d / 4.0).exp()));
    move |p: f64| {
        let trig = if parity > 0.0 {
            2.0 * (a * p).cos()
        } else {
            2.0 * (a * p).sin()
        };
        norm_sq * PI.powf(-0.5) * (-p * p).exp() * trig * trig
    }
}
