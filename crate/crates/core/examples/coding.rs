//! Exhaustive error probabilities, estimation success and capacity.

use chanorder::channel::Channel;
use chanorder::coding::{
    capacity, pc, pe_decoder_ml, pe_encoder, pe_opt, Decoder, Encoder, DEFAULT_CODING_CAP,
};
use chanorder::geometry::Distribution;

fn main() -> chanorder::Result<()> {
    let w = Channel::bsc(0.1)?;

    let d = Decoder::single_letter(vec![0, 1], 2)?;
    println!("P_e,D for the identity decoder: {:.4}", pe_decoder_ml(&w, &d, DEFAULT_CODING_CAP)?);

    // Repetition code of length three with majority-vote likelihoods.
    let e = Encoder::new(vec![vec![0, 0, 0], vec![1, 1, 1]])?;
    println!("P_e,E for the repetition code: {:.4}", pe_encoder(&w, &e, DEFAULT_CODING_CAP)?);

    for (n, m) in [(1, 2), (2, 2), (2, 3), (3, 2)] {
        let best = pe_opt(&w, n, m, DEFAULT_CODING_CAP)?;
        println!("best ({n},{m}) code: P_e {:.4}, codewords {:?}", best.error_probability, best.encoder.codewords());
    }

    let p = Distribution::new(vec![0.7, 0.3])?;
    let est = pc(&p, &w, &Channel::identity(2))?;
    println!("P_c = {:.4} with encoder {:?}", est.success_probability, est.encoder);

    for p in [0.0, 0.1, 0.25, 0.5] {
        let c = capacity(&Channel::bsc(p)?, 1e-9)?;
        println!("C(BSC({p})) = {:.6} nats ({} iterations)", c.capacity, c.iterations);
    }
    let z = Channel::validate(vec![vec![1.0, 0.0], vec![0.3, 0.7]])?;
    let c = capacity(&z, 1e-9)?;
    println!("Z channel: {:.6} nats, optimal input {:.4?}", c.capacity, c.input_distribution);
    Ok(())
}
