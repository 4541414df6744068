//! Broadband noise through modeled room paths, comparing LMS, NLMS and FXLMS.
//!
//! Plain LMS ignores the secondary path and usually does far worse here.

use anc_toolkit::anc::{anc_run, generate_broadband, AncConfig, Algorithm, FirPath};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fs = 8000.0;
    let n = 40_000;
    let seed = 2024;
    let noise = generate_broadband(seed, 100.0, 1000.0, n, fs)?;
    let (primary, secondary) = (FirPath::room_primary(), FirPath::room_secondary());

    for alg in [Algorithm::Lms, Algorithm::Nlms, Algorithm::Fxlms] {
        let cfg = AncConfig::new(alg, n, seed);
        let run = anc_run(&cfg, &noise, &primary, &secondary)?;
        println!(
            "{:<6} step {:<8} steady state {:>7.2} dB{}",
            alg.name(),
            cfg.step_size,
            run.steady_state_attenuation_db,
            if run.diverged { "  (diverged)" } else { "" }
        );
    }
    Ok(())
}
