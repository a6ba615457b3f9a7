//! Sums and products of channels and how their row hulls decompose.

use chanorder::channel::{channel_product, channel_sum, Channel};
use chanorder::geometry::{Distribution, ToleranceConfig};
use chanorder::ordering::{
    characteristic, decompose_sum_point, product_hull_membership, similarity_distance,
};

fn main() -> chanorder::Result<()> {
    let tol = ToleranceConfig::default();
    let a = Channel::bsc(0.1)?;
    let b = Channel::validate(vec![vec![0.5, 0.3, 0.2], vec![0.1, 0.1, 0.8]])?;
    let (ca, cb) = (characteristic(&a, &tol)?, characteristic(&b, &tol)?);

    let sum = channel_sum(&a, &b);
    println!("sum: {} inputs, {} outputs", sum.input_size(), sum.output_size());
    let q = Distribution::new(vec![0.27, 0.13, 0.18, 0.12, 0.3])?;
    match decompose_sum_point(&q, sum.output_labels(), &ca, &cb, &tol)? {
        Some(dec) => println!(
            "  q splits with lambda {:.2}: left {:.3?}, right {:.3?}",
            dec.lambda, dec.left_weights, dec.right_weights
        ),
        None => println!("  q is outside the sum hull"),
    }

    let prod = channel_product(&a, &b);
    println!("product: {} inputs, {} outputs", prod.input_size(), prod.output_size());
    let mixed: Vec<f64> = prod.rows()[0]
        .probs()
        .iter()
        .zip(prod.rows()[3].probs())
        .map(|(x, y)| 0.5 * (x + y))
        .collect();
    let m = product_hull_membership(&Distribution::new(mixed)?, prod.output_labels(), &ca, &cb, &tol)?;
    println!("  midpoint of two product rows inside: {}", m.is_inside());

    let a2 = Channel::bsc(0.2)?;
    let b2 = Channel::validate(vec![vec![0.4, 0.4, 0.2], vec![0.1, 0.2, 0.7]])?;
    let parts = similarity_distance(&a, &a2, &tol)? + similarity_distance(&b, &b2, &tol)?;
    println!(
        "d(sum) {:.4}, d(product) {:.4}, sum of parts {:.4}",
        similarity_distance(&sum, &channel_sum(&a2, &b2), &tol)?,
        similarity_distance(&prod, &channel_product(&a2, &b2), &tol)?,
        parts
    );
    Ok(())
}
