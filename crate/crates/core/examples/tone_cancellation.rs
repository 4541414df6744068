//! Cancel a 200 Hz tone with a two-tap FXLMS controller on ideal paths, then
//! show the ideal inverse (phase-flipped copy) for comparison.

use anc_toolkit::anc::{anc_run, attenuation_db, generate_tone, invert_phase, AncConfig, Algorithm, FirPath};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fs = 8000.0;
    let n = 16_000;
    let tone = generate_tone(200.0, 1.0, 0.0, n, fs)?;

    let ideal = tone.superpose(&invert_phase(&tone))?;
    println!("ideal inverse: {:.1} dB", attenuation_db(&tone, &ideal)?);

    let cfg = AncConfig::new(Algorithm::Fxlms, n, 0)
        .with_filter_length(2)
        .with_step_size(0.05);
    let id = FirPath::identity();
    let run = anc_run(&cfg, &tone, &id, &id)?;
    println!("window  attenuation");
    for (i, db) in run.attenuation_trace_db.iter().enumerate() {
        println!("{:>6}  {db:>8.2} dB", i + 1);
    }
    println!("steady state: {:.2} dB, weights {:?}", run.steady_state_attenuation_db, run.final_weights);
    Ok(())
}
