#![allow(dead_code)]

use std::path::PathBuf;

use halfbranch::branch::{BranchPoint, Side};
use halfbranch::cli;
use halfbranch::exactnum::{int, parse_rational, Sign};
use halfbranch::polyring::{parse_polynomial, Poly2, PuiseuxPoly};

pub fn p(s: &str) -> Poly2 {
    parse_polynomial(s).unwrap()
}

/// Branch from `(exponent, coefficient)` strings.
pub fn branch(orient: Sign, terms: &[(&str, i64)], side: Side) -> BranchPoint {
    let phi = PuiseuxPoly::new(terms.iter().map(|&(q, c)| (parse_rational(q).unwrap(), int(c)))).unwrap();
    BranchPoint::new(orient, phi, side).unwrap()
}

pub fn fixture(name: &str) -> BranchPoint {
    let path = format!("{}/tests/fixtures/{name}.json", env!("CARGO_MANIFEST_DIR"));
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

pub fn main_pair() -> (BranchPoint, BranchPoint) {
    (fixture("main_alpha"), fixture("main_beta"))
}

/// Branch pairs of the fixture corpus that share the origin and differ.
pub fn corpus_pairs() -> Vec<(&'static str, BranchPoint, BranchPoint)> {
    [
        ("main", "main_alpha", "main_beta"),
        ("cusp", "cusp_alpha", "cusp_beta"),
        ("lines", "line_pos", "line_neg"),
        ("contact", "contact_alpha", "contact_beta"),
        ("puiseux", "puiseux_alpha", "puiseux_beta"),
        ("on_curve", "parabola_on", "main_beta"),
    ]
    .into_iter()
    .map(|(n, a, b)| (n, fixture(a), fixture(b)))
    .collect()
}

pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub code: i32,
}

const MAIN: [&str; 4] = ["--alpha", "tests/fixtures/main_alpha.json", "--beta", "tests/fixtures/main_beta.json"];

macro_rules! case {
    ($name:expr, $code:expr, [$($a:expr),* $(,)?]) => {
        Case { name: $name, args: &[$($a),*], code: $code }
    };
}

pub const CASES: &[Case] = &[
    case!("val_main", 0, ["val", "--alpha", "tests/fixtures/main_beta.json", "--f", "y - x^2"]),
    case!("val_on_curve", 0, ["val", "--alpha", "tests/fixtures/parabola_on.json", "--f", "y - x^2"]),
    case!("sign_main", 0, ["sign", "--alpha", "tests/fixtures/main_beta.json", "--f", "x^3 - 2y + 2x^2"]),
    case!("sign_text", 0, ["sign", "--format", "text", "--alpha", "tests/fixtures/cusp_beta.json", "--f", "y"]),
    case!("curve_eq_cusp", 0, ["curve-eq", "--alpha", "tests/fixtures/cusp_alpha.json"]),
    case!("curve_eq_puiseux", 0, ["curve-eq", "--alpha", "tests/fixtures/puiseux_alpha.json"]),
    case!("blowup_main", 0, ["blowup", MAIN[0], MAIN[1], MAIN[2], MAIN[3]]),
    case!("blowup_cusp", 0, ["blowup", "--alpha", "tests/fixtures/cusp_alpha.json", "--beta", "tests/fixtures/cusp_beta.json"]),
    case!("blowup_limit", 3, ["blowup", "--max-steps", "1", MAIN[0], MAIN[1], MAIN[2], MAIN[3]]),
    case!("sepideal_main", 0, ["sepideal", MAIN[0], MAIN[1], MAIN[2], MAIN[3]]),
    case!("sepideal_text", 0, ["sepideal", "--format", "text", MAIN[0], MAIN[1], MAIN[2], MAIN[3]]),
    case!("sepideal_puiseux", 0, ["sepideal", "--alpha", "tests/fixtures/puiseux_alpha.json", "--beta", "tests/fixtures/puiseux_beta.json"]),
    case!("sepideal_sides", 0, ["sepideal", "--alpha", "tests/fixtures/parabola_above.json", "--beta", "tests/fixtures/parabola_below.json"]),
    case!("sepideal_zero", 0, ["sepideal", "--alpha", "tests/fixtures/cusp_alpha.json", "--beta", "tests/fixtures/cusp_alpha.json"]),
    case!("sepideal_unit", 0, ["sepideal", "--alpha", "tests/fixtures/shifted.json", "--beta", "tests/fixtures/main_beta.json"]),
    case!("sepideal_centered", 0, ["sepideal", "--center", "1,0", "--alpha", "tests/fixtures/shifted.json", "--beta", "tests/fixtures/shifted.json"]),
    case!("sepideal_shared_center", 4, ["sepideal", "--alpha", "tests/fixtures/shifted.json", "--beta", "tests/fixtures/shifted.json"]),
    case!("sepideal_malformed", 2, ["sepideal", "--alpha", "tests/fixtures/malformed.json", "--beta", "tests/fixtures/main_beta.json"]),
    case!("sepideal_bad_orient", 2, ["sepideal", "--alpha", "tests/fixtures/bad_orient.json", "--beta", "tests/fixtures/main_beta.json"]),
    case!("sepideal_missing_file", 2, ["sepideal", "--alpha", "tests/fixtures/absent.json", "--beta", "tests/fixtures/main_beta.json"]),
    case!("member_x2", 0, ["member", MAIN[0], MAIN[1], MAIN[2], MAIN[3], "--g", "x^2"]),
    case!("member_curve", 0, ["member", MAIN[0], MAIN[1], MAIN[2], MAIN[3], "--g", "y - x^2"]),
    case!("member_parse_error", 2, ["member", MAIN[0], MAIN[1], MAIN[2], MAIN[3], "--g", "y -- x"]),
    case!("factor_y", 0, ["factor", MAIN[0], MAIN[1], MAIN[2], MAIN[3], "--g", "y"]),
    case!("factor_member", 4, ["factor", MAIN[0], MAIN[1], MAIN[2], MAIN[3], "--g", "y - x^2"]),
    case!("witness_curve", 0, ["witness", MAIN[0], MAIN[1], MAIN[2], MAIN[3], "--a", "y - x^2"]),
    case!("witness_nonmember", 4, ["witness", MAIN[0], MAIN[1], MAIN[2], MAIN[3], "--a", "x"]),
    case!("connect_ball", 0, ["connect", MAIN[0], MAIN[1], MAIN[2], MAIN[3], "--g", "x", "--g", "y"]),
    case!("connect_curve", 0, ["connect", "--alpha", "tests/fixtures/parabola_above.json", "--beta", "tests/fixtures/parabola_below.json", "--g", "x"]),
    case!("connect_member", 4, ["connect", MAIN[0], MAIN[1], MAIN[2], MAIN[3], "--g", "y - x^2"]),
    case!("pwcheck_abs", 0, ["pwcheck", "--t", "tests/fixtures/abs_y.json", "--alpha", "tests/fixtures/axis_above.json", "--beta", "tests/fixtures/axis_below.json"]),
    case!("pwcheck_fail", 0, ["pwcheck", "--t", "tests/fixtures/pw_fail.json", MAIN[0], MAIN[1], MAIN[2], MAIN[3]]),
    case!("chain_pass", 0, ["chain", "--t", "tests/fixtures/pw_pass.json", "--adjacency", "0-1", MAIN[0], MAIN[1], MAIN[2], MAIN[3]]),
    case!("chain_fail", 0, ["chain", "--t", "tests/fixtures/pw_fail.json", "--adjacency", "0-1", MAIN[0], MAIN[1], MAIN[2], MAIN[3]]),
    case!("chain_bad_adjacency", 2, ["chain", "--t", "tests/fixtures/pw_fail.json", "--adjacency", "0to1", MAIN[0], MAIN[1], MAIN[2], MAIN[3]]),
    case!("assemble_abs", 0, ["assemble", "--t", "tests/fixtures/abs_y.json", "--point", "tests/fixtures/axis_above.json", "--point", "tests/fixtures/axis_below.json", "--witnesses", "tests/fixtures/abs_witnesses.json"]),
    case!("assemble_built", 0, ["assemble", "--t", "tests/fixtures/abs_y.json", "--point", "tests/fixtures/axis_above.json", "--point", "tests/fixtures/axis_below.json"]),
    case!("oracle_main", 0, ["oracle", MAIN[0], MAIN[1], MAIN[2], MAIN[3]]),
    case!("oracle_cusp", 0, ["oracle", "--alpha", "tests/fixtures/cusp_alpha.json", "--beta", "tests/fixtures/cusp_beta.json"]),
    case!("unknown_command", 2, ["frobnicate"]),
];

pub fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.out"))
}

pub fn run_case(case: &Case) -> cli::Outcome {
    let args = std::iter::once("halfbranch").chain(case.args.iter().copied());
    cli::run(args, &mut std::io::empty())
}

/// Compares a case against its golden file; `UPDATE_GOLDEN=1` rewrites it.
pub fn check_case(case: &Case) -> Result<(), String> {
    let first = run_case(case);
    let second = run_case(case);
    if first != second {
        return Err(format!("{}: output differs between runs", case.name));
    }
    if first.code != case.code {
        return Err(format!("{}: exit code {} (expected {})\n{}", case.name, first.code, case.code, first.stderr));
    }
    let path = golden_path(case.name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &first.stdout).map_err(|e| e.to_string())?;
        return Ok(());
    }
    let expected = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    if expected != first.stdout {
        return Err(format!("{}: output differs from {}", case.name, path.display()));
    }
    Ok(())
}

/// Commands with at least one golden case.
pub fn covered_commands() -> std::collections::BTreeSet<&'static str> {
    CASES.iter().filter(|c| c.code == 0).map(|c| c.args[0]).collect()
}

pub const ALL_COMMANDS: [&str; 13] = [
    "val", "sign", "curve-eq", "blowup", "sepideal", "member", "factor", "witness", "connect", "pwcheck", "chain",
    "assemble", "oracle",
];

pub mod gen {
    use halfbranch::branch::{BranchPoint, Side};
    use halfbranch::exactnum::{int, rat, Sign};
    use halfbranch::polyring::{Poly2, PuiseuxPoly};
    use rand::Rng;
    use rand_chacha::ChaCha8Rng;

    pub fn poly(rng: &mut ChaCha8Rng, max_deg: u32, max_terms: usize, coeff: i64) -> Poly2 {
        let n = rng.gen_range(1..=max_terms);
        Poly2::from_terms((0..n).map(|_| {
            let d = rng.gen_range(0..=max_deg);
            let i = rng.gen_range(0..=d);
            let mut c = rng.gen_range(-coeff..=coeff);
            if c == 0 {
                c = 1;
            }
            ((i, d - i), int(c))
        }))
    }

    pub fn branch(rng: &mut ChaCha8Rng) -> BranchPoint {
        let n: i64 = rng.gen_range(1..=3);
        let mut k = 0i64;
        let terms: Vec<_> = (0..rng.gen_range(0..=3))
            .map(|_| {
                k += rng.gen_range(1..=3);
                let mut c = rng.gen_range(-3..=3);
                if c == 0 {
                    c = 2;
                }
                (rat(k + n, n), int(c))
            })
            .collect();
        let orient = if rng.gen_bool(0.5) { Sign::Positive } else { Sign::Negative };
        let side = [Side::Above, Side::Below, Side::On][rng.gen_range(0..3)];
        BranchPoint::new(orient, PuiseuxPoly::new(terms).unwrap(), side).unwrap()
    }
}
