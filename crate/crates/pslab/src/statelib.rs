//! Analytic catalog of fixture states and test fields: oscillator
//! eigenstates, coherent and cat states, compactly supported box fields,
//! the exponentially growing counterexample field, and Gaussian bumps.

use ndarray::Array1;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldKind, PhaseSpaceField};
use crate::grid::PhaseSpaceGrid;
use crate::state::WaveFunction;

/// Shape of the compactly supported box region.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoxShape {
    Square,
    Disk,
}

/// Declarative description of a fixture state or field; the payload of the
/// scenario schema and the claims-suite fixture lists.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StateSpec {
    Fock {
        n: usize,
    },
    Coherent {
        x0: f64,
        p0: f64,
    },
    Cat {
        separation: f64,
        /// +1 for the even superposition, −1 for the odd one.
        parity: i8,
    },
    Box {
        omega: f64,
        shape: BoxShape,
    },
    ExpQuadratic {
        a: f64,
    },
    GaussianField {
        sigma_x: f64,
        sigma_p: f64,
        #[serde(default)]
        x0: f64,
        #[serde(default)]
        p0: f64,
    },
}

/// What a `StateSpec` builds: a pure state or a raw phase-space field.
#[derive(Debug, Clone)]
pub enum BuiltState {
    Pure(WaveFunction),
    Field(PhaseSpaceField),
}

impl StateSpec {
    /// Construct the state/field on a grid.
    pub fn build(&self, grid: &PhaseSpaceGrid) -> Result<BuiltState> {
        match *self {
            StateSpec::Fock { n } => Ok(BuiltState::Pure(harmonic_eigenstate(n, grid)?)),
            StateSpec::Coherent { x0, p0 } => {
                Ok(BuiltState::Pure(coherent_state(x0, p0, grid)?))
            }
            StateSpec::Cat { separation, parity } => {
                Ok(BuiltState::Pure(cat_state(separation, parity, grid)?))
            }
            StateSpec::Box { omega, shape } => {
                Ok(BuiltState::Field(box_field(omega, shape, grid)?))
            }
            StateSpec::ExpQuadratic { a } => {
                Ok(BuiltState::Field(exp_quadratic_field(a, grid)?))
            }
            StateSpec::GaussianField {
                sigma_x,
                sigma_p,
                x0,
                p0,
            } => Ok(BuiltState::Field(gaussian_bump_field(
                sigma_x, sigma_p, x0, p0, grid,
            )?)),
        }
    }

    /// Parse the compact CLI syntax, e.g. `fock:0`, `coherent:x0=2,p0=0`,
    /// `cat:d=6,parity=-1`, `box:omega=4,shape=square`,
    /// `exp_quadratic:a=1.0`, `gaussian:sigma_x=1,sigma_p=1,x0=1,p0=1`.
    pub fn parse_cli(text: &str) -> Result<Self> {
        let bad = |reason: String| Error::InvalidParameter {
            name: "state",
            reason,
        };
        let (kind, rest) = match text.split_once(':') {
            Some((k, r)) => (k.trim(), r.trim()),
            None => (text.trim(), ""),
        };
        let mut kv = std::collections::BTreeMap::new();
        let mut positional = Vec::new();
        if !rest.is_empty() {
            for part in rest.split(',') {
                match part.split_once('=') {
                    Some((k, v)) => {
                        kv.insert(k.trim().to_string(), v.trim().to_string());
                    }
                    None => positional.push(part.trim().to_string()),
                }
            }
        }
        let num = |kv: &std::collections::BTreeMap<String, String>, key: &str| -> Result<f64> {
            kv.get(key)
                .ok_or_else(|| bad(format!("{kind} requires {key}=<value>")))?
                .parse::<f64>()
                .map_err(|e| bad(format!("{key}: {e}")))
        };
        let num_or = |kv: &std::collections::BTreeMap<String, String>,
                      key: &str,
                      default: f64|
         -> Result<f64> {
            match kv.get(key) {
                Some(v) => v.parse::<f64>().map_err(|e| bad(format!("{key}: {e}"))),
                None => Ok(default),
            }
        };
        match kind {
            "fock" => {
                let n = if let Some(first) = positional.first() {
                    first
                        .parse::<usize>()
                        .map_err(|e| bad(format!("fock level: {e}")))?
                } else if let Some(v) = kv.get("n") {
                    v.parse::<usize>().map_err(|e| bad(format!("n: {e}")))?
                } else {
                    return Err(bad("fock requires a level, e.g. fock:0".into()));
                };
                Ok(StateSpec::Fock { n })
            }
            "coherent" => Ok(StateSpec::Coherent {
                x0: num(&kv, "x0")?,
                p0: num(&kv, "p0")?,
            }),
            "cat" => {
                let parity_text = kv
                    .get("parity")
                    .ok_or_else(|| bad("cat requires parity=+1 or parity=-1".into()))?;
                let parity: i8 = parity_text
                    .trim_start_matches('+')
                    .parse()
                    .map_err(|e| bad(format!("parity: {e}")))?;
                Ok(StateSpec::Cat {
                    separation: num_or(&kv, "d", f64::NAN).and_then(|v| {
                        if v.is_nan() {
                            num(&kv, "separation")
                        } else {
                            Ok(v)
                        }
                    })?,
                    parity,
                })
            }
            "box" => {
                let shape = match kv.get("shape").map(String::as_str) {
                    Some("square") | None => BoxShape::Square,
                    Some("disk") => BoxShape::Disk,
                    Some(other) => return Err(bad(format!("unknown shape {other:?}"))),
                };
                Ok(StateSpec::Box {
                    omega: num(&kv, "omega")?,
                    shape,
                })
            }
            "exp_quadratic" => Ok(StateSpec::ExpQuadratic { a: num(&kv, "a")? }),
            "gaussian" | "gaussian_field" => Ok(StateSpec::GaussianField {
                sigma_x: num(&kv, "sigma_x")?,
                sigma_p: num(&kv, "sigma_p")?,
                x0: num_or(&kv, "x0", 0.0)?,
                p0: num_or(&kv, "p0", 0.0)?,
            }),
            other => Err(bad(format!(
                "unknown state kind {other:?} (expected fock, coherent, cat, box, \
                 exp_quadratic, gaussian)"
            ))),
        }
    }
}

/// Clear the x = −L sample. That point has no mirror partner in the
/// half-open domain, so a sampled state is exactly parity-covariant only
/// with it removed; the edge guards keep its amplitude at tail level anyway.
fn clear_boundary_sample(mut values: Array1<C64>) -> Array1<C64> {
    values[0] = C64::new(0.0, 0.0);
    values
}

/// Oscillator eigenstate ψ_n via the normalized three-term recurrence
/// (m = ω = 1, length scale √ħ).
pub fn harmonic_eigenstate(n: usize, grid: &PhaseSpaceGrid) -> Result<WaveFunction> {
    if n > 30 {
        return Err(Error::InvalidParameter {
            name: "n",
            reason: format!("recurrence is validated up to n = 30, got {n}"),
        });
    }
    let turning_point = (grid.hbar * (2.0 * n as f64 + 1.0)).sqrt();
    if turning_point > 0.85 * grid.half_width {
        return Err(Error::InvalidParameter {
            name: "n",
            reason: format!(
                "state of size ~{turning_point:.2} does not fit the domain half-width {}",
                grid.half_width
            ),
        });
    }
    let sqrt_hbar = grid.hbar.sqrt();
    let norm0 = (std::f64::consts::PI * grid.hbar).powf(-0.25);
    let mut values = Array1::from_elem(grid.nx, C64::new(0.0, 0.0));
    for j in 0..grid.nx {
        let xi = grid.x(j) / sqrt_hbar;
        let mut prev = 0.0__f64;
        let mut cur = norm0 * (-xi * xi / 2.0).exp();
        for k in 0..n {
            let next = (2.0 / (k as f64 + 1.0)).sqrt() * xi * cur
                - (k as f64 / (k as f64 + 1.0)).sqrt() * prev;
            prev = cur;
            cur = next;
        }
        values[j] = C64::new(cur, 0.0);
    }
    WaveFunction::from_samples(*grid, clear_boundary_sample(values))?.normalized()
}

/// Ground state displaced to (x0, p0): ψ(x) = φ₀(x−x0)·e^{i p0 x/ħ}.
pub fn coherent_state(x0: f64, p0: f64, grid: &PhaseSpaceGrid) -> Result<WaveFunction> {
    if x0.abs() > grid.half_width / 2.0 {
        return Err(Error::InvalidParameter {
            name: "x0",
            reason: format!(
                "|x0| must stay within half the domain ({}), got {x0}",
                grid.half_width / 2.0
            ),
        });
    }
    if p0.abs() > grid.momentum_half_width() / 2.0 {
        return Err(Error::InvalidParameter {
            name: "p0",
            reason: format!(
                "|p0| must stay within half the momentum domain ({}), got {p0}",
                grid.momentum_half_width() / 2.0
            ),
        });
    }
    let norm0 = (std::f64::consts::PI * grid.hbar).powf(-0.25);
    let values = Array1::from_iter((0..grid.nx).map(|j| {
        let x = grid.x(j);
        let envelope = norm0 * (-(x - x0) * (x - x0) / (2.0 * grid.hbar)).exp();
        let phase = p0 * x / grid.hbar;
        C64::new(envelope * phase.cos(), envelope * phase.sin())
    }));
    WaveFunction::from_samples(*grid, clear_boundary_sample(values))?.normalized()
}

/// Superposition of coherent states at ±d/2 with the given parity; the
/// normalization carries the cross-term overlap e^{−d²/4ħ}.
pub fn cat_state(separation: f64, parity: i8, grid: &PhaseSpaceGrid) -> Result<WaveFunction> {
    if !(separation.is_finite() && separation >= 1.0) {
        return Err(Error::InvalidParameter {
            name: "separation",
            reason: format!("must be ≥ 1, got {separation}"),
        });
    }
    if parity != 1 && parity != -1 {
        return Err(Error::InvalidParameter {
            name: "parity",
            reason: format!("must be +1 or -1, got {parity}"),
        });
    }
    let a = separation / 2.0;
    let plus = coherent_state(a, 0.0, grid)?;
    let minus = coherent_state(-a, 0.0, grid)?;
    let overlap = (-separation * separation / (4.0 * grid.hbar)).exp();
    let norm = (2.0 * (1.0 + parity as f64 * overlap)).sqrt().recip();
    let values = Array1::from_iter(
        plus.values
            .iter()
            .zip(minus.values.iter())
            .map(|(p, m)| norm * (p + parity as f64 * m)),
    );
    WaveFunction::from_samples(*grid, clear_boundary_sample(values))?.normalized()
}

/// Compactly supported field: 1/Ω inside a region of area Ω, 0 outside.
///
/// The region is snapped to refined-lattice cells (edges on grid lines, no
/// anti-aliasing), so the field integrates to exactly 1 against the lattice
/// quadrature; the constant is 1/Ω_actual with Ω_actual within a cell
/// perimeter of the request.
pub fn box_field(omega: f64, shape: BoxShape, grid: &PhaseSpaceGrid) -> Result<PhaseSpaceField> {
    if !(omega.is_finite() && omega > 0.0) {
        return Err(Error::InvalidParameter {
            name: "omega",
            reason: format!("must be positive, got {omega}"),
        });
    }
    let h = 0.5 * grid.dx;
    let dp2 = 0.5 * grid.dp;
    let p_half = grid.momentum_half_width();
    let mut mask = ndarray::Array2::from_elem((grid.nx_fine(), grid.np_fine()), false);
    let mut count = 0usize;
    match shape {
        BoxShape::Square => {
            let side = omega.sqrt();
            if side / 2.0 > 0.8 * grid.half_width || side / 2.0 > 0.8 * p_half {
                return Err(Error::InvalidParameter {
                    name: "omega",
                    reason: format!("square of side {side:.3} does not fit the grid with margin"),
                });
            }
            let cx = ((side / h).round() as usize).max(1);
            let cp = ((side / dp2).round() as usize).max(1);
            let s0 = grid.nx as i64 - (cx / 2) as i64;
            let t0 = grid.np as i64 - (cp / 2) as i64;
            for s in s0..s0 + cx as i64 {
                for t in t0..t0 + cp as i64 {
                    mask[[s as usize, t as usize]] = true;
                    count += 1;
                }
            }
        }
        BoxShape::Disk => {
            let radius = (omega / std::f64::consts::PI).sqrt();
            if radius > 0.8 * grid.half_width || radius > 0.8 * p_half {
                return Err(Error::InvalidParameter {
                    name: "omega",
                    reason: format!("disk of radius {radius:.3} does not fit the grid with margin"),
                });
            }
            let r2 = radius * radius;
            for s in 0..grid.nx_fine() {
                let x = grid.x_fine(s);
                for t in 0..grid.np_fine() {
                    let p = grid.p_fine(t);
                    if x * x + p * p <= r2 {
                        mask[[s, t]] = true;
                        count += 1;
                    }
                }
            }
        }
    }
    let omega_actual = count as f64 * grid.fine_cell_area();
    let value = 1.0 / omega_actual;
    let fine = mask.mapv(|inside| if inside { value } else { 0.0 });
    Ok(PhaseSpaceField::from_fine(*grid, FieldKind::Generic, fine))
}

/// The everywhere-positive field e^{a(x²+p²)}, unnormalized by design.
pub fn exp_quadratic_field(a: f64, grid: &PhaseSpaceGrid) -> Result<PhaseSpaceField> {
    if !(a.is_finite() && a > 0.0) {
        return Err(Error::InvalidParameter {
            name: "a",
            reason: format!("must be positive, got {a}"),
        });
    }
    Ok(PhaseSpaceField::from_fn(
        *grid,
        FieldKind::Generic,
        |x, p| (a * (x * x + p * p)).exp(),
    ))
}

/// Normalized Gaussian bump centered at (x0, p0).
pub fn gaussian_bump_field(
    sigma_x: f64,
    sigma_p: f64,
    x0: f64,
    p0: f64,
    grid: &PhaseSpaceGrid,
) -> Result<PhaseSpaceField> {
    for (name, v) in [("sigma_x", sigma_x), ("sigma_p", sigma_p)] {
        if !(v.is_finite() && v > 0.0) {
            return Err(Error::InvalidParameter {
                name,
                reason: format!("must be positive, got {v}"),
            });
        }
    }
    let norm = 1.0 / (2.0 * std::f64::consts::PI * sigma_x * sigma_p);
    Ok(PhaseSpaceField::from_fn(
        *grid,
        FieldKind::Generic,
        move |x, p| {
            let dx = (x - x0) / sigma_x;
            let dp = (p - p0) / sigma_p;
            norm * (-0.5 * (dx * dx + dp * dp)).exp()
        },
    ))
}

/// Constant field of value 1 everywhere (degenerate test functional).
pub fn constant_field(grid: &PhaseSpaceGrid) -> PhaseSpaceField {
    PhaseSpaceField::from_fn(*grid, FieldKind::Generic, |_, _| 1.0)
}
