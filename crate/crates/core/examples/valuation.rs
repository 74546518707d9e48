//! Values and signs of polynomials at half-branch points.

use halfbranch::branch::{BranchPoint, Side};
use halfbranch::exactnum::{int, rat, Sign};
use halfbranch::polyring::{parse_polynomial, PuiseuxPoly};

fn main() -> halfbranch::Result<()> {
    // y = x^{3/2} + x^2, approached from above.
    let phi = PuiseuxPoly::new([(rat(3, 2), int(1)), (int(2), int(1))])?;
    let alpha = BranchPoint::new(Sign::Positive, phi, Side::Above)?;

    for src in ["x", "y", "y^2 - x^3", "y - x^2", "x^3 - y^2 + 2 x^2 y"] {
        let f = parse_polynomial(src)?;
        println!("{src:>22}  value {:<8} sign {:?}", alpha.value(&f).to_string(), alpha.sign(&f));
    }
    println!("curve of the branch: {}", alpha.curve());
    Ok(())
}
