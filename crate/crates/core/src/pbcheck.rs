//! Piecewise polynomials and sup-inf certificates.
//!
//! Everything decided at branch points is exact. Statements about whole
//! regions are backed by grid sampling and reported as such.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::blowup::{monomial_factor, MonomialFactor, Param};
use crate::branch::{eval_at_branch, BranchPoint};
use crate::error::{Error, Result};
use crate::exactnum::{format_rational, int, rat, ExtValue, Rational, Sign};
use crate::polyring::{Poly2, RatFunc2};
use crate::sepideal::{common_specialization, h_witness, member, separating_ideal, IdealKind, Specialization};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "=")]
    Eq,
}

impl Relation {
    pub fn holds(self, s: Sign) -> bool {
        match self {
            Relation::Ge => s >= Sign::Zero,
            Relation::Le => s <= Sign::Zero,
            Relation::Eq => s == Sign::Zero,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Condition {
    pub poly: Poly2,
    pub rel: Relation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Piece {
    #[serde(rename = "where")]
    pub region: Vec<Condition>,
    pub value: Poly2,
}

impl Piece {
    pub fn contains_branch(&self, alpha: &BranchPoint) -> bool {
        self.region.iter().all(|c| c.rel.holds(alpha.sign(&c.poly)))
    }

    pub fn contains_point(&self, x: &Rational, y: &Rational) -> bool {
        self.region
            .iter()
            .all(|c| c.rel.holds(Sign::of(&c.poly.eval(x, y))))
    }
}

/// Closed pieces `{conditions} → polynomial`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiecewiseFunction {
    pub pieces: Vec<Piece>,
}

impl PiecewiseFunction {
    pub fn new(pieces: Vec<Piece>) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::Input("a piecewise function needs at least one piece".into()));
        }
        Ok(PiecewiseFunction { pieces })
    }

    pub fn value(&self, j: usize) -> &Poly2 {
        &self.pieces[j].value
    }

    pub fn pieces_containing(&self, alpha: &BranchPoint) -> Vec<usize> {
        (0..self.pieces.len())
            .filter(|&j| self.pieces[j].contains_branch(alpha))
            .collect()
    }

    /// Value at a rational point from the first piece containing it.
    pub fn eval_point(&self, x: &Rational, y: &Rational) -> Option<Rational> {
        self.pieces
            .iter()
            .find(|p| p.contains_point(x, y))
            .map(|p| p.value.eval(x, y))
    }
}

/// Least index of a piece whose conditions hold at `α`.
pub fn locate_piece(t: &PiecewiseFunction, alpha: &BranchPoint) -> Result<usize> {
    t.pieces
        .iter()
        .position(|p| p.contains_branch(alpha))
        .ok_or_else(|| Error::domain("cover does not contain point"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairVerdict {
    pub pass: bool,
    pub kind: IdealKind,
    pub alpha_piece: usize,
    pub beta_piece: usize,
    pub difference: Poly2,
    pub value: ExtValue,
    pub threshold: ExtValue,
}

/// `t_α − t_β ∈ ⟨α, β⟩`.
pub fn pw_pair_check(
    t: &PiecewiseFunction,
    alpha: &BranchPoint,
    beta: &BranchPoint,
    max_steps: usize,
) -> Result<PairVerdict> {
    let s = separating_ideal(alpha, beta, max_steps)?;
    let ia = locate_piece(t, alpha)?;
    let ib = locate_piece(t, beta)?;
    let difference = t.value(ia) - t.value(ib);
    Ok(PairVerdict {
        pass: member(&difference, &s),
        kind: s.kind,
        alpha_piece: ia,
        beta_piece: ib,
        value: alpha.value(&difference),
        threshold: s.threshold.clone(),
        difference,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Link {
    pub from: usize,
    pub to: usize,
    pub difference: Poly2,
    pub member: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainCertificate {
    pub t_alpha_index: usize,
    pub t_beta_index: usize,
    pub chain: Vec<usize>,
    pub differences: Vec<Link>,
    pub telescoping_verified: bool,
    pub direct_member: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum ChainOutcome {
    Certificate(ChainCertificate),
    Fail {
        /// Pieces reachable from those containing `α` (the set `K`).
        reachable: Vec<usize>,
        unreachable: Vec<usize>,
        /// Adjacency edges surviving the membership pruning.
        kept_edges: Vec<(usize, usize)>,
    },
}

/// Breadth-first search over adjacency pruned to links whose difference
/// lies in `⟨α, β⟩`.
pub fn chain_transfer(
    t: &PiecewiseFunction,
    alpha: &BranchPoint,
    beta: &BranchPoint,
    adjacency: &[(usize, usize)],
    max_steps: usize,
) -> Result<ChainOutcome> {
    let n = t.pieces.len();
    if let Some(&(j, k)) = adjacency.iter().find(|&&(j, k)| j >= n || k >= n) {
        return Err(Error::Input(format!("adjacency pair ({j}, {k}) names a missing piece")));
    }
    let s = separating_ideal(alpha, beta, max_steps)?;
    let edges: BTreeSet<(usize, usize)> = adjacency
        .iter()
        .filter(|(j, k)| j != k)
        .map(|&(j, k)| (j.min(k), j.max(k)))
        .collect();
    let kept: Vec<(usize, usize)> = edges
        .into_iter()
        .filter(|&(j, k)| member(&(t.value(j) - t.value(k)), &s))
        .collect();
    let mut neighbors = vec![Vec::new(); n];
    for &(j, k) in &kept {
        neighbors[j].push(k);
        neighbors[k].push(j);
    }
    for list in neighbors.iter_mut() {
        list.sort_unstable();
    }

    let sources = t.pieces_containing(alpha);
    let targets: BTreeSet<usize> = t.pieces_containing(beta).into_iter().collect();
    if sources.is_empty() || targets.is_empty() {
        return Err(Error::domain("cover does not contain point"));
    }
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut queue: VecDeque<usize> = VecDeque::new();
    for &j in &sources {
        seen[j] = true;
        queue.push_back(j);
    }
    let mut found = None;
    while let Some(j) = queue.pop_front() {
        if targets.contains(&j) {
            found = Some(j);
            break;
        }
        for &k in &neighbors[j] {
            if !seen[k] {
                seen[k] = true;
                parent[k] = Some(j);
                queue.push_back(k);
            }
        }
    }

    let Some(end) = found else {
        // finish the search so that `K` is the full reachable set
        while let Some(j) = queue.pop_front() {
            for &k in &neighbors[j] {
                if !seen[k] {
                    seen[k] = true;
                    queue.push_back(k);
                }
            }
        }
        let reachable = (0..n).filter(|&j| seen[j]).collect();
        let unreachable = (0..n).filter(|&j| !seen[j]).collect();
        return Ok(ChainOutcome::Fail {
            reachable,
            unreachable,
            kept_edges: kept,
        });
    };

    let mut chain = vec![end];
    while let Some(p) = parent[*chain.last().expect("nonempty")] {
        chain.push(p);
    }
    chain.reverse();
    let differences: Vec<Link> = chain
        .windows(2)
        .map(|w| {
            let d = t.value(w[0]) - t.value(w[1]);
            Link {
                from: w[0],
                to: w[1],
                member: member(&d, &s),
                difference: d,
            }
        })
        .collect();
    let first = chain[0];
    let total = t.value(first) - t.value(end);
    let sum = differences
        .iter()
        .fold(Poly2::zero(), |acc, l| acc + l.difference.clone());
    let telescoping_verified = sum == total && differences.iter().all(|l| l.member);
    let direct_member = member(&total, &s);
    if !telescoping_verified || !direct_member {
        return Err(Error::internal("chain certificate failed verification"));
    }
    Ok(ChainOutcome::Certificate(ChainCertificate {
        t_alpha_index: first,
        t_beta_index: end,
        chain,
        differences,
        telescoping_verified,
        direct_member,
    }))
}

/// `sup_i inf_j h_ij`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupInfExpression {
    pub terms: Vec<Vec<Poly2>>,
}

impl SupInfExpression {
    pub fn new(terms: Vec<Vec<Poly2>>) -> Result<Self> {
        if terms.is_empty() || terms.iter().any(Vec::is_empty) {
            return Err(Error::Input("sup-inf expression needs nonempty levels".into()));
        }
        Ok(SupInfExpression { terms })
    }

    pub fn eval_point(&self, x: &Rational, y: &Rational) -> Rational {
        self.terms
            .iter()
            .map(|row| {
                row.iter()
                    .map(|h| h.eval(x, y))
                    .min()
                    .expect("nonempty inf")
            })
            .max()
            .expect("nonempty sup")
    }

    /// The leaf polynomial realizing the expression at `α`.
    pub fn select_at_branch(&self, alpha: &BranchPoint) -> &Poly2 {
        let pick = |a: &&Poly2, b: &&Poly2| alpha.sign(&(*a - *b)).as_i8().cmp(&0);
        let infs: Vec<&Poly2> = self
            .terms
            .iter()
            .map(|row| row.iter().min_by(pick).expect("nonempty inf"))
            .collect();
        infs.into_iter().max_by(pick).expect("nonempty sup")
    }
}

impl fmt::Display for SupInfExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("sup(")?;
        for (i, row) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("inf(")?;
            for (j, h) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{h}")?;
            }
            f.write_str(")")?;
        }
        f.write_str(")")
    }
}

#[derive(Serialize, Deserialize)]
struct RawInf {
    inf: Vec<Poly2>,
}

#[derive(Serialize, Deserialize)]
struct RawSupInf {
    sup: Vec<RawInf>,
}

impl Serialize for SupInfExpression {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawSupInf {
            sup: self.terms.iter().map(|r| RawInf { inf: r.clone() }).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SupInfExpression {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawSupInf::deserialize(d)?;
        SupInfExpression::new(raw.sup.into_iter().map(|r| r.inf).collect()).map_err(serde::de::Error::custom)
    }
}

/// Grid sampling parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SamplingConfig {
    /// Grid size; rounded up to a square `n × n`.
    pub samples: usize,
    pub seed: u64,
    /// Extra pseudo-random points on top of the grid.
    pub densify: usize,
}

impl Default for SamplingConfig {
    fn default() -> Self {
        SamplingConfig {
            samples: 49,
            seed: 0,
            densify: 0,
        }
    }
}

impl SamplingConfig {
    fn side(&self) -> usize {
        let mut n = 1;
        while n * n < self.samples {
            n += 1;
        }
        n.max(2)
    }

    /// `n` evenly spaced values in `[lo, hi]`.
    fn line(&self, lo: &Rational, hi: &Rational) -> Vec<Rational> {
        let n = self.side();
        let step = (hi - lo) / int((n - 1) as i64);
        (0..n).map(|k| lo + &step * int(k as i64)).collect()
    }

    /// `n` values in `(0, hi]`.
    fn positive_line(&self, hi: &Rational) -> Vec<Rational> {
        let n = self.side();
        (1..=n).map(|k| hi * rat(k as i64, n as i64)).collect()
    }

    fn random_unit(rng: &mut ChaCha8Rng, positive: bool) -> Rational {
        let d: i64 = 1 << 16;
        if positive {
            rat(rng.gen_range(1..=d), d)
        } else {
            rat(rng.gen_range(-d..=d), d)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PointCheck {
    pub point: usize,
    pub piece: usize,
    pub selected: Poly2,
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Assembly {
    pub expression: SupInfExpression,
    pub point_checks: Vec<PointCheck>,
    pub samples_checked: usize,
    pub warnings: Vec<String>,
}

/// Verifies the witness sign conditions and assembles `sup_i inf_j h_ij`.
pub fn assemble_supinf(
    t: &PiecewiseFunction,
    points: &[BranchPoint],
    witnesses: &[Vec<Poly2>],
    sampling: SamplingConfig,
) -> Result<Assembly> {
    let n = points.len();
    if n == 0 {
        return Err(Error::Input("at least one point is required".into()));
    }
    if witnesses.len() != n || witnesses.iter().any(|row| row.len() != n) {
        return Err(Error::Input(format!("witness matrix must be {n} x {n}")));
    }
    let pieces: Vec<usize> = points.iter().map(|p| locate_piece(t, p)).collect::<Result<_>>()?;
    for i in 0..n {
        for j in 0..n {
            let h = &witnesses[i][j];
            let ti = t.value(pieces[i]);
            let tj = t.value(pieces[j]);
            if points[i].sign(&(h - ti)) < Sign::Zero {
                return Err(Error::domain(format!(
                    "witness ({i}, {j}) fails h(alpha_{i}) >= t(alpha_{i})"
                )));
            }
            if points[j].sign(&(h - tj)) > Sign::Zero {
                return Err(Error::domain(format!(
                    "witness ({i}, {j}) fails h(alpha_{j}) <= t(alpha_{j})"
                )));
            }
        }
    }
    let expression = SupInfExpression::new(witnesses.to_vec())?;

    let mut point_checks = Vec::with_capacity(n);
    for (k, alpha) in points.iter().enumerate() {
        let selected = expression.select_at_branch(alpha).clone();
        let agrees = alpha.sign(&(&selected - t.value(pieces[k]))) == Sign::Zero;
        if !agrees {
            return Err(Error::internal(format!("assembled expression misses t at point {k}")));
        }
        point_checks.push(PointCheck {
            point: k,
            piece: pieces[k],
            selected,
            agrees,
        });
    }

    let mut warnings = Vec::new();
    let mut samples_checked = 0;
    let one = Rational::one();
    let line = sampling.line(&-one.clone(), &one);
    let mut grid: Vec<(Rational, Rational)> = Vec::new();
    for y in &line {
        for x in &line {
            grid.push((x.clone(), y.clone()));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(sampling.seed);
    for _ in 0..sampling.densify {
        let x = SamplingConfig::random_unit(&mut rng, false);
        let y = SamplingConfig::random_unit(&mut rng, false);
        grid.push((x, y));
    }
    for (x, y) in &grid {
        let here: Vec<usize> = (0..t.pieces.len())
            .filter(|&j| t.pieces[j].contains_point(x, y))
            .collect();
        let Some(&first) = here.first() else {
            continue;
        };
        let tv = t.value(first).eval(x, y);
        if here.iter().any(|&j| t.value(j).eval(x, y) != tv) {
            warnings.push(format!(
                "pieces disagree at ({}, {})",
                format_rational(x),
                format_rational(y)
            ));
        }
        samples_checked += 1;
        if expression.eval_point(x, y) != tv {
            warnings.push(format!(
                "expression differs from t at ({}, {})",
                format_rational(x),
                format_rational(y)
            ));
        }
    }
    Ok(Assembly {
        expression,
        point_checks,
        samples_checked,
        warnings,
    })
}

/// Witness matrix built from `h_witness`: the entry `(i, j)` is `t_j` when
/// `t_i ≤ t_j` at `α_i`, and `t_j + h` for a witness `h` of `t_i − t_j`
/// otherwise.
pub fn build_witnesses(t: &PiecewiseFunction, points: &[BranchPoint], max_steps: usize) -> Result<Vec<Vec<Poly2>>> {
    let pieces: Vec<usize> = points.iter().map(|p| locate_piece(t, p)).collect::<Result<_>>()?;
    let n = points.len();
    let mut out = vec![vec![Poly2::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let ti = t.value(pieces[i]);
            let tj = t.value(pieces[j]);
            if i == j {
                out[i][j] = ti.clone();
                continue;
            }
            let a = ti - tj;
            if points[i].sign(&a) <= Sign::Zero {
                out[i][j] = tj.clone();
                continue;
            }
            let s = separating_ideal(&points[i], &points[j], max_steps)?;
            if !member(&a, &s) {
                return Err(Error::domain(format!(
                    "pair ({i}, {j}) fails the pairwise membership criterion"
                )));
            }
            out[i][j] = tj + &h_witness(&a, &s)?;
        }
    }
    Ok(out)
}

/// Largest `ε = 2^{-k} ≤ 1` with `|w − w(0,0)| < |w(0,0)|` on the disk
/// `X² + Y² < ε`, by the bound `|X^i Y^j| ≤ ε^{(i+j)/2}`.
pub fn ball_radius_squared(w: &Poly2) -> Option<Rational> {
    let c0 = w.constant_term().abs();
    if c0.is_zero() {
        return None;
    }
    let mut eps = Rational::one();
    for _ in 0..64 {
        let mut even = Rational::zero();
        let mut odd = Rational::zero();
        for (&(i, j), c) in w.terms() {
            let d = i + j;
            if d == 0 {
                continue;
            }
            let p = num_traits::pow(eps.clone(), (d / 2) as usize);
            if d % 2 == 0 {
                even += c.abs() * p;
            } else {
                odd += c.abs() * p;
            }
        }
        let margin = &c0 - &even;
        if margin.is_positive() && &eps * &odd * &odd < &margin * &margin {
            return Some(eps);
        }
        eps /= int(2);
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Sample {
    pub chart: [String; 2],
    pub image: [String; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorRecord {
    pub g: Poly2,
    #[serde(flatten)]
    pub factor: MonomialFactor,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CurveSample {
    pub parameter: String,
    pub on_curve: [String; 2],
    pub above: [String; 2],
    pub below: [String; 2],
}

/// A connected set containing both points and avoiding every `{g = 0}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WitnessSet {
    /// `ψ_r({X² + Y² < ε} ∩ {p > 0 : p nonchanger})`.
    Ball {
        chart: usize,
        epsilon: String,
        map: [Poly2; 2],
        positive: Vec<String>,
        factors: Vec<FactorRecord>,
        alpha_inside: bool,
        beta_inside: bool,
        samples: Vec<Sample>,
    },
    /// The connected component of `{Πg ≠ 0}` containing the branch germ.
    Curve {
        curve: Poly2,
        specialization: Specialization,
        exponent: u32,
        samples: Vec<CurveSample>,
    },
    /// `α = β`.
    Point,
}

fn pair(x: &Rational, y: &Rational) -> [String; 2] {
    [format_rational(x), format_rational(y)]
}

fn nonzero_at(gs: &[Poly2], x: &Rational, y: &Rational) -> bool {
    gs.iter().all(|g| !g.eval(x, y).is_zero())
}

pub fn connectedness_witness(
    alpha: &BranchPoint,
    beta: &BranchPoint,
    gs: &[Poly2],
    sampling: SamplingConfig,
    max_steps: usize,
) -> Result<WitnessSet> {
    let s = separating_ideal(alpha, beta, max_steps)?;
    if let Some(g) = gs.iter().find(|g| member(g, &s)) {
        return Err(Error::domain(format!("g lies in the separating ideal: {g}")));
    }
    match s.kind {
        IdealKind::Zero => Ok(WitnessSet::Point),
        IdealKind::Unit => Err(Error::domain("branches have distinct centers")),
        IdealKind::HeightTwo => ball_witness(&s, gs, sampling),
        IdealKind::HeightOne => curve_witness(&s, gs),
    }
}

fn ball_witness(s: &crate::sepideal::SeparatingIdeal, gs: &[Poly2], sampling: SamplingConfig) -> Result<WitnessSet> {
    let chain = s.chain.as_ref().expect("height-two ideal carries its chain");
    let chart = chain.last();
    let mut factors = Vec::with_capacity(gs.len());
    let mut eps = Rational::one();
    for g in gs {
        let factor = monomial_factor(g, chain)?;
        let e = ball_radius_squared(&factor.w)
            .ok_or_else(|| Error::internal("cofactor vanishes at the chart origin"))?;
        eps = eps.min(e);
        factors.push(FactorRecord { g: g.clone(), factor });
    }

    let ball = &(&(&chart.x_param * &chart.x_param) + &(&chart.y_param * &chart.y_param))
        - &RatFunc2::constant(eps.clone());
    let inside = |p: &BranchPoint| -> Result<bool> {
        if eval_at_branch(&ball, p)?.sign != Sign::Negative {
            return Ok(false);
        }
        for &q in &chain.nonchangers {
            if eval_at_branch(chart.param(q), p)?.sign != Sign::Positive {
                return Ok(false);
            }
        }
        Ok(true)
    };
    let alpha_inside = inside(&s.alpha)?;
    let beta_inside = inside(&s.beta)?;
    if !alpha_inside || !beta_inside {
        return Err(Error::internal("a point lies outside the witness region"));
    }

    // a square of half-width ρ with 2ρ² < ε sits inside the disk
    let mut rho = Rational::one();
    while &rho * &rho * int(2) >= eps {
        rho /= int(2);
    }
    let axis = |p: Param| {
        if chain.is_nonchanger(p) {
            sampling.positive_line(&rho)
        } else {
            sampling.line(&-rho.clone(), &rho)
        }
    };
    let mut points = Vec::new();
    for y in axis(Param::Y) {
        for x in axis(Param::X) {
            points.push((x, y.clone()));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(sampling.seed);
    for _ in 0..sampling.densify {
        let x = &rho * SamplingConfig::random_unit(&mut rng, chain.is_nonchanger(Param::X));
        let y = &rho * SamplingConfig::random_unit(&mut rng, chain.is_nonchanger(Param::Y));
        points.push((x, y));
    }
    let (px, py) = &chart.down_map;
    let mut samples = Vec::with_capacity(points.len());
    for (cx, cy) in points {
        let (x, y) = (px.eval(&cx, &cy), py.eval(&cx, &cy));
        if !nonzero_at(gs, &x, &y) {
            return Err(Error::internal("a sampled point of the witness region meets {g = 0}"));
        }
        samples.push(Sample {
            chart: pair(&cx, &cy),
            image: pair(&x, &y),
        });
    }
    let r = chain.r();
    Ok(WitnessSet::Ball {
        chart: r,
        epsilon: format_rational(&eps),
        map: [px.clone(), py.clone()],
        positive: chain
            .nonchangers
            .iter()
            .map(|p| match p {
                Param::X => format!("x_{r}"),
                Param::Y => format!("y_{r}"),
            })
            .collect(),
        factors,
        alpha_inside,
        beta_inside,
        samples,
    })
}

const CURVE_SAMPLES: i64 = 20;

fn curve_witness(s: &crate::sepideal::SeparatingIdeal, gs: &[Poly2]) -> Result<WitnessSet> {
    let alpha = &s.alpha;
    let curve = s.curve.clone().expect("height-one ideal carries its curve");
    let n = alpha.ramification() as usize;
    let sigma = int(alpha.orient().as_i8().into());
    let top = alpha
        .series()
        .integral_terms()
        .last()
        .map_or(1, |t| t.0);
    let k = top + 1;
    let mut rho = Rational::one();
    for _ in 0..64 {
        let mut samples = Vec::with_capacity(CURVE_SAMPLES as usize);
        let mut ok = true;
        for j in 1..=CURVE_SAMPLES {
            let tau = &rho * rat(j, CURVE_SAMPLES);
            let x = &sigma * num_traits::pow(tau.clone(), n);
            let y = alpha.series().eval_hat(&tau);
            let off = num_traits::pow(tau.clone(), k as usize);
            let (ya, yb) = (&y + &off, &y - &off);
            if !(nonzero_at(gs, &x, &y) && nonzero_at(gs, &x, &ya) && nonzero_at(gs, &x, &yb)) {
                ok = false;
                break;
            }
            samples.push(CurveSample {
                parameter: format_rational(&tau),
                on_curve: pair(&x, &y),
                above: pair(&x, &ya),
                below: pair(&x, &yb),
            });
        }
        if ok {
            return Ok(WitnessSet::Curve {
                curve,
                specialization: common_specialization(s),
                exponent: k,
                samples,
            });
        }
        rho /= int(2);
    }
    Err(Error::internal("no punctured curve neighborhood avoids {g = 0}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::branch::Side;
    use crate::polyring::{parse_polynomial, PuiseuxPoly};

    fn p(s: &str) -> Poly2 {
        parse_polynomial(s).unwrap()
    }

    fn branch(terms: &[(i64, i64)], side: Side) -> BranchPoint {
        let phi = PuiseuxPoly::new(terms.iter().map(|&(q, c)| (int(q), int(c)))).unwrap();
        BranchPoint::new(Sign::Positive, phi, side).unwrap()
    }

    fn cond(poly: &str, rel: Relation) -> Condition {
        Condition { poly: p(poly), rel }
    }

    fn abs_y() -> PiecewiseFunction {
        PiecewiseFunction::new(vec![
            Piece { region: vec![cond("y", Relation::Ge)], value: p("y") },
            Piece { region: vec![cond("y", Relation::Le)], value: p("-y") },
        ])
        .unwrap()
    }

    #[test]
    fn absolute_value() {
        let t = abs_y();
        let a = branch(&[], Side::Above);
        let b = branch(&[], Side::Below);
        assert_eq!(locate_piece(&t, &a).unwrap(), 0);
        assert_eq!(locate_piece(&t, &b).unwrap(), 1);
        assert!(pw_pair_check(&t, &a, &b, 64).unwrap().pass);
        let w = vec![vec![p("y"), p("y")], vec![p("-y"), p("-y")]];
        let asm = assemble_supinf(&t, &[a.clone(), b.clone()], &w, SamplingConfig::default()).unwrap();
        assert_eq!(asm.expression.to_string(), "sup(inf(y, y), inf(-y, -y))");
        assert_eq!(asm.samples_checked, 49);
        assert!(asm.warnings.is_empty());
        let built = build_witnesses(&t, &[a, b], 64).unwrap();
        assert_eq!(built[0][0], p("y"));
    }

    #[test]
    fn failing_pair() {
        let s = "y - x^2 - 1/2 x^3";
        let t = PiecewiseFunction::new(vec![
            Piece { region: vec![cond(s, Relation::Le)], value: p("x") },
            Piece { region: vec![cond(s, Relation::Ge)], value: p("2x") },
        ])
        .unwrap();
        let a = branch(&[(2, 1)], Side::Above);
        let b = branch(&[(2, 1), (3, 1)], Side::Below);
        let v = pw_pair_check(&t, &a, &b, 64).unwrap();
        assert!(!v.pass);
        assert_eq!(v.value, ExtValue::int(1));
        assert_eq!(v.threshold, ExtValue::int(3));
        match chain_transfer(&t, &a, &b, &[(0, 1)], 64).unwrap() {
            ChainOutcome::Fail { reachable, .. } => assert_eq!(reachable, vec![0]),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn epsilon_bounds() {
        assert_eq!(ball_radius_squared(&p("1")), Some(int(1)));
        assert_eq!(ball_radius_squared(&p("y + 1")), Some(rat(1, 2)));
        assert_eq!(ball_radius_squared(&p("x y")), None);
    }

    #[test]
    fn ball_witness_main_example() {
        let a = branch(&[(2, 1)], Side::Above);
        let b = branch(&[(2, 1), (3, 1)], Side::Below);
        for (g, eps) in [("x", "1"), ("y", "1/2")] {
            match connectedness_witness(&a, &b, &[p(g)], SamplingConfig::default(), 64).unwrap() {
                WitnessSet::Ball { epsilon, samples, map, .. } => {
                    assert_eq!(epsilon, eps);
                    assert_eq!(samples.len(), 49);
                    assert_eq!(map, [p("x"), p("x^2 y + x^2")]);
                }
                other => panic!("unexpected {other:?}"),
            }
        }
        assert!(connectedness_witness(&a, &b, &[p("y - x^2")], SamplingConfig::default(), 64).is_err());
    }

    #[test]
    fn curve_witness_parabola_sides() {
        let a = branch(&[(2, 1)], Side::Above);
        let b = branch(&[(2, 1)], Side::Below);
        match connectedness_witness(&a, &b, &[p("x")], SamplingConfig::default(), 64).unwrap() {
            WitnessSet::Curve { samples, curve, .. } => {
                assert_eq!(samples.len(), 20);
                assert_eq!(curve, p("y - x^2"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
