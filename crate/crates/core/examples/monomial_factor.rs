//! Non-members become monomial times unit on the last chart.

use halfbranch::blowup::monomial_factor;
use halfbranch::branch::{BranchPoint, Side};
use halfbranch::exactnum::{int, Sign};
use halfbranch::polyring::{parse_polynomial, PuiseuxPoly};
use halfbranch::sepideal::{h_witness, member, separating_ideal};

fn main() -> halfbranch::Result<()> {
    let alpha = BranchPoint::new(Sign::Positive, PuiseuxPoly::new([(int(2), int(1))])?, Side::Above)?;
    let beta = BranchPoint::new(Sign::Positive, PuiseuxPoly::new([(int(2), int(1)), (int(3), int(1))])?, Side::Below)?;
    let s = separating_ideal(&alpha, &beta, 64)?;
    let chain = s.chain.as_ref().expect("height two");

    for src in ["x", "y", "x^2 + y^2", "y - 2 x^2"] {
        let g = parse_polynomial(src)?;
        let m = monomial_factor(&g, chain)?;
        println!("{src:>10} = x^{} y^{} ({})", m.e, m.f, m.w);
    }

    let a = parse_polynomial("y - x^2")?;
    assert!(member(&a, &s));
    println!("h for {a}: {}", h_witness(&a, &s)?);
    Ok(())
}
