use halfbranch::branch::{BranchPoint, Side};
use halfbranch::exactnum::{int, rat, Sign};
use halfbranch::polyring::{parse_polynomial, PuiseuxPoly};
use halfbranch::sepideal::{member, separating_ideal, signchanger_oracle, OracleCaps};

fn main() -> halfbranch::Result<()> {
    let alpha = BranchPoint::new(Sign::Positive, PuiseuxPoly::new([(rat(3, 2), int(1)), (int(2), int(1))])?, Side::Above)?;
    let beta = BranchPoint::new(Sign::Positive, PuiseuxPoly::new([(rat(3, 2), int(1)), (rat(5, 2), int(1))])?, Side::Below)?;

    let s = separating_ideal(&alpha, &beta, 64)?;
    println!("{:?} ideal after {:?} transforms, threshold {}", s.kind, s.r(), s.threshold);
    for g in &s.generators {
        println!("  generator {g}");
    }
    for src in ["y^2 - x^3", "x^2 y", "x^3", "y^2 - x^3 - x^2 y"] {
        let g = parse_polynomial(src)?;
        println!("{src:>18} member: {}", member(&g, &s));
    }

    let oracle = signchanger_oracle(&alpha, &beta, OracleCaps::default())?;
    println!("brute force: least sign changer value {} via {}", oracle.min_value, oracle.witness);
    Ok(())
}
