//! Walks the quadratic transforms that separate two branches.

use halfbranch::blowup::run_chain;
use halfbranch::branch::BranchPoint;
use halfbranch::exactnum::{int, Sign};
use halfbranch::polyring::PuiseuxPoly;
use halfbranch::branch::Side;

fn main() -> halfbranch::Result<()> {
    let alpha = BranchPoint::new(Sign::Positive, PuiseuxPoly::new([(int(2), int(1))])?, Side::Above)?;
    let beta = BranchPoint::new(Sign::Positive, PuiseuxPoly::new([(int(2), int(1)), (int(3), int(1))])?, Side::Below)?;

    let chain = run_chain(&alpha, &beta, 64)?;
    for chart in &chain.charts {
        let (px, py) = &chart.down_map;
        println!("chart {}: {:?}  x = {}  y = {}  (x, y) -> ({px}, {py})", chart.index, chart.case, chart.x_param, chart.y_param);
    }
    println!("stopped: {:?}", chain.stop_reason);
    if let Some(c) = &chain.changer {
        println!("sign changer on the last chart {c}, threshold {}", chain.threshold);
    }
    Ok(())
}
