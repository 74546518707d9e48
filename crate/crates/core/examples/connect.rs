//! Connected sets through both points that avoid chosen zero sets.

use halfbranch::branch::{BranchPoint, Side};
use halfbranch::exactnum::{int, Sign};
use halfbranch::pbcheck::{connectedness_witness, SamplingConfig, WitnessSet};
use halfbranch::polyring::{parse_polynomial, PuiseuxPoly};

fn point(terms: &[(i64, i64)], side: Side) -> halfbranch::Result<BranchPoint> {
    let phi = PuiseuxPoly::new(terms.iter().map(|&(e, c)| (int(e), int(c))))?;
    BranchPoint::new(Sign::Positive, phi, side)
}

fn main() -> halfbranch::Result<()> {
    let gs = vec![parse_polynomial("x")?, parse_polynomial("y")?];

    let (a, b) = (point(&[(2, 1)], Side::Above)?, point(&[(2, 1), (3, 1)], Side::Below)?);
    match connectedness_witness(&a, &b, &gs, SamplingConfig::default(), 64)? {
        WitnessSet::Ball { epsilon, map, samples, .. } => {
            println!("ball of squared radius {epsilon} mapped by {map:?}, {} samples", samples.len())
        }
        other => println!("{other:?}"),
    }

    // Opposite sides of y = x^2 only differ at the curve itself.
    let (a, b) = (point(&[(2, 1)], Side::Above)?, point(&[(2, 1)], Side::Below)?);
    if let WitnessSet::Curve { curve, samples, .. } = connectedness_witness(&a, &b, &gs, SamplingConfig::default(), 64)? {
        println!("component along {curve} = 0, checked at {} parameters", samples.len());
    }
    Ok(())
}
