//! Characteristics, input rank and canonical representatives of
//! input-equivalence classes.

use chanorder::channel::{compose, deterministic, Channel};
use chanorder::geometry::ToleranceConfig;
use chanorder::json::to_canonical_string;
use chanorder::ordering::{canonical_representative, characteristic, input_rank, is_input_equivalent};

fn main() -> chanorder::Result<()> {
    let tol = ToleranceConfig::default();
    let w = Channel::validate(vec![
        vec![0.6, 0.3, 0.1],
        vec![0.1, 0.3, 0.6],
        vec![0.35, 0.3, 0.35],
        vec![0.2, 0.6, 0.2],
    ])?;
    println!("rank {}", input_rank(&w, &tol)?);
    print!("characteristic {}", to_canonical_string(&characteristic(&w, &tol)?)?);

    let rep = canonical_representative(&w, &tol)?;
    println!("representative has {} rows", rep.input_size());

    // Relabeling and duplicating inputs never changes the class.
    let merged = compose(&w, &deterministic(&[3, 0, 1, 1, 2, 0], 4)?)?;
    println!("W ~ W∘D_f: {}", is_input_equivalent(&w, &merged, &tol)?);
    println!("W ~ rep: {}", is_input_equivalent(&w, &rep, &tol)?);
    println!("W ~ identity? {}", is_input_equivalent(&w, &Channel::validate(vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]])?, &tol)?);

    // With two outputs every class has rank at most two.
    let binary = Channel::validate(vec![vec![0.9, 0.1], vec![0.5, 0.5], vec![0.3, 0.7], vec![0.2, 0.8]])?;
    println!("binary-output rank {}", input_rank(&binary, &tol)?);
    Ok(())
}
