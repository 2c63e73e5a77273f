fn main() {
    std::process::exit(pslab::cli::run_cli(std::env::args()));
}
