//! Pairwise checks, chains and sup-inf assembly for piecewise polynomials.

use halfbranch::branch::{BranchPoint, Side};
use halfbranch::exactnum::{int, Sign};
use halfbranch::pbcheck::{
    assemble_supinf, build_witnesses, chain_transfer, pw_pair_check, Condition, Piece, PiecewiseFunction, Relation, SamplingConfig,
};
use halfbranch::polyring::{parse_polynomial as p, PuiseuxPoly};

fn main() -> halfbranch::Result<()> {
    let abs = PiecewiseFunction::new(vec![
        Piece { region: vec![Condition { poly: p("y")?, rel: Relation::Ge }], value: p("y")? },
        Piece { region: vec![Condition { poly: p("y")?, rel: Relation::Le }], value: p("-y")? },
    ])?;
    let above = BranchPoint::new(Sign::Positive, PuiseuxPoly::new([])?, Side::Above)?;
    let below = BranchPoint::new(Sign::Positive, PuiseuxPoly::new([])?, Side::Below)?;

    let verdict = pw_pair_check(&abs, &above, &below, 64)?;
    println!("|y| across the axis: pass {} ({} vs {})", verdict.pass, verdict.value, verdict.threshold);

    let points = [above, below];
    let witnesses = build_witnesses(&abs, &points, 64)?;
    let asm = assemble_supinf(&abs, &points, &witnesses, SamplingConfig::default())?;
    println!("|y| = {} on {} samples", asm.expression, asm.samples_checked);

    // Two pieces glued along y = x^2 + x^3/2, compared across y = x^2.
    let s = p("y - x^2 - 1/2 x^3")?;
    let t = PiecewiseFunction::new(vec![
        Piece { region: vec![Condition { poly: s.clone(), rel: Relation::Ge }], value: p("x y - x^3 - 1/2 x^4")? },
        Piece { region: vec![Condition { poly: s, rel: Relation::Le }], value: p("0")? },
    ])?;
    let alpha = BranchPoint::new(Sign::Positive, PuiseuxPoly::new([(int(2), int(1))])?, Side::Above)?;
    let beta = BranchPoint::new(Sign::Positive, PuiseuxPoly::new([(int(2), int(1)), (int(3), int(1))])?, Side::Below)?;
    let outcome = chain_transfer(&t, &alpha, &beta, &[(0, 1)], 64)?;
    println!("{}", serde_json::to_string_pretty(&outcome).expect("serializable"));
    Ok(())
}
