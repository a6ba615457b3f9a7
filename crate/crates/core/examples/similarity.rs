//! The similarity distance: Hausdorff distance in total variation between
//! row hulls, compared with the plain row-wise distance.

use chanorder::channel::{channel_distance, Channel};
use chanorder::geometry::ToleranceConfig;
use chanorder::ordering::similarity_distance;

fn main() -> chanorder::Result<()> {
    let tol = ToleranceConfig::default();
    let ps = [0.0, 0.05, 0.1, 0.2, 0.3, 0.5];
    println!("d(BSC(p), BSC(q))");
    print!("{:>6}", "");
    for q in ps {
        print!("{q:>7}");
    }
    println!();
    for p in ps {
        print!("{p:>6}");
        for q in ps {
            print!("{:>7.3}", similarity_distance(&Channel::bsc(p)?, &Channel::bsc(q)?, &tol)?);
        }
        println!();
    }

    // Swapping the rows moves every row but leaves the hull alone.
    let a = Channel::bsc(0.1)?;
    let swapped = Channel::validate(vec![vec![0.1, 0.9], vec![0.9, 0.1]])?;
    println!(
        "row distance {:.3}, similarity {:.3}",
        channel_distance(&a, &swapped)?,
        similarity_distance(&a, &swapped, &tol)?
    );
    Ok(())
}
