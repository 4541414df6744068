//! Weighted scoring of the candidate concepts.

use std::fs::File;
use std::path::PathBuf;

use anc_toolkit::planning::{concept_score, read_concept_csv};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/concepts.csv");
    let matrix = read_concept_csv(File::open(path)?)?;
    println!("{} criteria", matrix.criteria.len());
    for s in concept_score(&matrix)? {
        println!("{:<12} {:.2}  rank {}", s.name, s.total, s.rank);
    }
    Ok(())
}
