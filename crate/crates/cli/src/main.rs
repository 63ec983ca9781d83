//! Command-line front end for the qubit-oscillator double-well library:
//! energy spectra, wavefunction projections, tunneling dynamics, effective
//! potentials, and laboratory-unit feasibility estimates, exported as
//! plotting-ready CSV or JSON.
//!
//! Exit codes: 0 success, 2 configuration/usage error, 3 numerical or
//! convergence failure, 4 physical-regime error (e.g. single-minimum
//! potential where the two-well construction is requested).

mod commands;
mod config;
mod table;

use clap::Parser;

fn main() {
    let cli = match config::Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            std::process::exit(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Err(f) = commands::run(cli) {
        eprintln!("error ({}): {}", f.kind(), f.message());
        std::process::exit(f.exit_code());
    }
}
