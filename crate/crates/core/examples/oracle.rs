//! Cross-checks the threshold against a bounded brute-force search.

use halfbranch::branch::{BranchPoint, Side};
use halfbranch::exactnum::{int, rat, Sign};
use halfbranch::polyring::PuiseuxPoly;
use halfbranch::sepideal::{gap_dimension_check, separating_ideal, signchanger_oracle, simplicity_check, OracleCaps};

fn main() -> halfbranch::Result<()> {
    let alpha = BranchPoint::new(Sign::Positive, PuiseuxPoly::new([(rat(3, 2), int(1))])?, Side::Above)?;
    let beta = BranchPoint::new(Sign::Positive, PuiseuxPoly::new([(rat(3, 2), int(-1))])?, Side::Above)?;
    let caps = OracleCaps { degree: 3, coeff: 2, support: 3 };

    let s = separating_ideal(&alpha, &beta, 64)?;
    let o = signchanger_oracle(&alpha, &beta, caps)?;
    println!("threshold {} and oracle {} ({})", s.threshold, o.min_value, o.witness);

    let gap = gap_dimension_check(&s, caps)?;
    println!("gap dimensions hold on {} values", gap.values_checked);
    for c in simplicity_check(&s)? {
        println!("chart {}: proper {} maximal {}", c.index, c.proper, c.maximal);
    }
    Ok(())
}
