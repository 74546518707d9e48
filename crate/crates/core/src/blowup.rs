//! Quadratic transforms along the valuation of a branch point.
//!
//! Chart `i` has coordinates `(X, Y)`; its parameters `x_i`, `y_i` are kept
//! as rational functions of the root coordinates `(x, y)`, and `down_map`
//! is the polynomial map `ψ_i` with `(x, y) = ψ_i(X, Y)`.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::branch::{BranchPoint, Leading};
use crate::error::{Error, Result};
use crate::exactnum::{format_rational, ExtValue, Rational, Sign};
use crate::polyring::{substitute, Exponent, Poly2, RatFunc2};

/// The rule that produced a chart from its predecessor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseTag {
    Root,
    I1,
    I2,
    II1,
    II2,
}

impl CaseTag {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::Root => "root",
            CaseTag::I1 => "I1",
            CaseTag::I2 => "I2",
            CaseTag::II1 => "II1",
            CaseTag::II2 => "II2",
        }
    }

    /// Whether the exceptional coordinate of this step is `Y` rather than `X`.
    fn exceptional_is_y(self) -> bool {
        matches!(self, CaseTag::I2 | CaseTag::II2)
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for CaseTag {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// One of the two chart coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Param {
    X,
    Y,
}

impl Param {
    pub fn poly(self) -> Poly2 {
        match self {
            Param::X => Poly2::x(),
            Param::Y => Poly2::y(),
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Chart {
    pub index: usize,
    pub x_param: RatFunc2,
    pub y_param: RatFunc2,
    pub down_map: (Poly2, Poly2),
    pub case: CaseTag,
    /// The constant `u` of a case II step, zero otherwise.
    pub shift: Rational,
    /// Signs multiplied into `(x_i, y_i)` to make them positive at `α`.
    pub sign_normalization: (Sign, Sign),
    /// The step used `a = y_{i-1}` (root: the parameters are `(±y, ±x)`).
    pub swapped: bool,
}

impl fmt::Debug for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Chart {} [{}]: x = {}, y = {}, psi = ({}, {})",
            self.index, self.case, self.x_param, self.y_param, self.down_map.0, self.down_map.1
        )
    }
}

fn rational_of_sign(s: Sign) -> Rational {
    Rational::from_integer(s.as_i8().into())
}

/// `s` with `Zero` read as `+`.
fn flip_of(s: Sign) -> Sign {
    if s == Sign::Negative {
        Sign::Negative
    } else {
        Sign::Positive
    }
}

impl Chart {
    /// The root chart, ordered so that `v_α(x_0) ≤ v_α(y_0)` and signed so
    /// both parameters are non-negative at `α`.
    pub fn root(alpha: &BranchPoint) -> Chart {
        let vx = alpha.value(&Poly2::x());
        let vy = alpha.value(&Poly2::y());
        let swapped = vy < vx;
        let (first, second) = if swapped {
            (Poly2::y(), Poly2::x())
        } else {
            (Poly2::x(), Poly2::y())
        };
        let s1 = flip_of(alpha.sign(&first));
        let s2 = flip_of(alpha.sign(&second));
        let x_param = first.scale(&rational_of_sign(s1));
        let y_param = second.scale(&rational_of_sign(s2));
        // x = s1·X, y = s2·Y, or with the roles exchanged when swapped
        let down_map = if swapped {
            (y_param_coord(s2), x_param_coord(s1))
        } else {
            (x_param_coord(s1), y_param_coord(s2))
        };
        Chart {
            index: 0,
            x_param: x_param.into(),
            y_param: y_param.into(),
            down_map,
            case: CaseTag::Root,
            shift: Rational::zero(),
            sign_normalization: (s1, s2),
            swapped,
        }
    }

    pub fn param(&self, p: Param) -> &RatFunc2 {
        match p {
            Param::X => &self.x_param,
            Param::Y => &self.y_param,
        }
    }

    /// A chart-coordinate polynomial as a function of the root coordinates.
    pub fn to_root(&self, g: &Poly2) -> RatFunc2 {
        substitute(g, &self.x_param, &self.y_param)
    }

    /// `f ∘ ψ_i` for a root-coordinate polynomial `f`.
    pub fn pullback(&self, f: &Poly2) -> Poly2 {
        f.compose(&self.down_map.0, &self.down_map.1)
    }

    /// `x_i ∘ ψ_i = X` and `y_i ∘ ψ_i = Y` as exact identities.
    pub fn is_consistent(&self) -> bool {
        let (px, py) = (&self.down_map.0, &self.down_map.1);
        let check = |r: &RatFunc2, target: Poly2| {
            let num = r.numer().compose(px, py);
            let den = r.denom().compose(px, py);
            !den.is_zero() && num == &den * &target
        };
        check(&self.x_param, Poly2::x()) && check(&self.y_param, Poly2::y())
    }

    /// Previous-chart coordinates `(X, Y)` in terms of this chart's
    /// coordinates. For the root chart this is `ψ_0`.
    pub fn step_relation(&self) -> (Poly2, Poly2) {
        if self.case == CaseTag::Root {
            return self.down_map.clone();
        }
        let (x, y) = (Poly2::x(), Poly2::y());
        let u = Poly2::constant(self.shift.clone());
        let eps_x = Poly2::x().scale(&rational_of_sign(self.sign_normalization.0));
        let eps_y = Poly2::y().scale(&rational_of_sign(self.sign_normalization.1));
        let (a, b) = match self.case {
            CaseTag::I1 => (x.clone(), &x * &y),
            CaseTag::I2 => (y.clone(), &x * &y),
            CaseTag::II1 => (x.clone(), &x * &(eps_y + u)),
            CaseTag::II2 => (y.clone(), &y * &(eps_x + u)),
            CaseTag::Root => unreachable!(),
        };
        if self.swapped {
            (b, a)
        } else {
            (a, b)
        }
    }

    /// This chart's coordinates as rational functions of the previous
    /// chart's coordinates. For the root chart: in terms of `(x, y)`.
    pub fn inverse_relation(&self) -> (RatFunc2, RatFunc2) {
        if self.case == CaseTag::Root {
            return (self.x_param.clone(), self.y_param.clone());
        }
        let (xa, xb) = if self.swapped {
            (Poly2::y(), Poly2::x())
        } else {
            (Poly2::x(), Poly2::y())
        };
        let a = RatFunc2::from_poly(xa.clone());
        let ratio = RatFunc2::new(xb, xa).expect("nonzero coordinate");
        let shifted = |eps: Sign| {
            (&ratio - &RatFunc2::constant(self.shift.clone())).scale(&rational_of_sign(eps))
        };
        match self.case {
            CaseTag::I1 => (a, ratio),
            CaseTag::I2 => (ratio, a),
            CaseTag::II1 => (a, shifted(self.sign_normalization.1)),
            CaseTag::II2 => (shifted(self.sign_normalization.0), a),
            CaseTag::Root => unreachable!(),
        }
    }

    /// The coordinate of the previous chart playing the role of `a`.
    fn previous_a(&self) -> Param {
        if self.swapped {
            Param::Y
        } else {
            Param::X
        }
    }

    /// The exceptional coordinate of this chart (image of `a`).
    fn exceptional(&self) -> Param {
        if self.case.exceptional_is_y() {
            Param::Y
        } else {
            Param::X
        }
    }
}

fn x_param_coord(s: Sign) -> Poly2 {
    Poly2::x().scale(&rational_of_sign(s))
}

fn y_param_coord(s: Sign) -> Poly2 {
    Poly2::y().scale(&rational_of_sign(s))
}

fn leading_at(alpha: &BranchPoint, f: &RatFunc2) -> Result<Option<Leading>> {
    alpha.leading_ratfunc(f)
}

fn value_of(lead: &Option<Leading>) -> ExtValue {
    lead.as_ref().map_or(ExtValue::Infinite, |l| l.value.clone())
}

fn sign_of(lead: &Option<Leading>) -> Sign {
    lead.as_ref().map_or(Sign::Zero, |l| Sign::of(&l.coeff))
}

/// One quadratic transform along `v_α`.
pub fn blowup_step(chart: &Chart, alpha: &BranchPoint) -> Result<Chart> {
    let lx = leading_at(alpha, &chart.x_param)?;
    let ly = leading_at(alpha, &chart.y_param)?;
    let (vx, vy) = (value_of(&lx), value_of(&ly));
    if !vx.is_positive() || !vy.is_positive() {
        return Err(Error::domain("valuation not centered in chart"));
    }
    let swapped = vy < vx;
    let (a, b, la, lb) = if swapped {
        (&chart.y_param, &chart.x_param, ly, lx)
    } else {
        (&chart.x_param, &chart.y_param, lx, ly)
    };
    let (va, vb) = (value_of(&la), value_of(&lb));
    let la = la.ok_or_else(|| Error::internal("both chart parameters vanish at the point"))?;
    let ratio = b.checked_div(a)?;

    let (case, shift, signs, x_next, y_next) = if va < vb {
        let vc = vb.checked_sub(&va).expect("finite value");
        if va <= vc {
            (CaseTag::I1, Rational::zero(), (Sign::Positive, Sign::Positive), a.clone(), ratio)
        } else {
            (CaseTag::I2, Rational::zero(), (Sign::Positive, Sign::Positive), ratio, a.clone())
        }
    } else {
        let lb = lb.expect("equal finite values");
        let u = &lb.coeff / &la.coeff;
        let d = &ratio - &RatFunc2::constant(u.clone());
        let ld = leading_at(alpha, &d)?;
        let eps = flip_of(sign_of(&ld));
        let d = d.scale(&rational_of_sign(eps));
        if va <= value_of(&ld) {
            (CaseTag::II1, u, (Sign::Positive, eps), a.clone(), d)
        } else {
            (CaseTag::II2, u, (eps, Sign::Positive), d, a.clone())
        }
    };

    let mut next = Chart {
        index: chart.index + 1,
        x_param: x_next,
        y_param: y_next,
        down_map: (Poly2::zero(), Poly2::zero()),
        case,
        shift,
        sign_normalization: signs,
        swapped,
    };
    let (rx, ry) = next.step_relation();
    next.down_map = (
        chart.down_map.0.compose(&rx, &ry),
        chart.down_map.1.compose(&rx, &ry),
    );
    Ok(next)
}

/// Ascending critical coefficients for the pencil `p + d·q`, `d ≠ 0`.
fn critical_set(pairs: &[(&Option<Leading>, &Option<Leading>)]) -> Vec<Rational> {
    let mut ds = vec![Rational::one(), -Rational::one()];
    for (p, q) in pairs {
        if let (Some(p), Some(q)) = (p, q) {
            if p.value == q.value {
                let r = -(&p.coeff / &q.coeff);
                ds.push(&r - Rational::one());
                ds.push(&r + Rational::one());
                ds.push(r);
            }
        }
    }
    ds.retain(|d| !d.is_zero());
    ds.sort();
    ds.dedup();
    ds
}

/// A sign changer of value `min(v_α(x_i), v_α(y_i))` among the coordinates
/// and their critical linear combinations, oriented non-negative at `α`.
pub fn stopping_test(chart: &Chart, alpha: &BranchPoint, beta: &BranchPoint) -> Result<Option<Poly2>> {
    let ax = leading_at(alpha, &chart.x_param)?;
    let ay = leading_at(alpha, &chart.y_param)?;
    let bx = leading_at(beta, &chart.x_param)?;
    let by = leading_at(beta, &chart.y_param)?;
    let target = value_of(&ax).min(value_of(&ay));

    let mut candidates = vec![Poly2::x(), Poly2::y()];
    for d in critical_set(&[(&ax, &ay), (&bx, &by)]) {
        candidates.push(Poly2::x() + Poly2::monomial(0, 1, d));
    }
    for d in critical_set(&[(&ay, &ax), (&by, &bx)]) {
        candidates.push(Poly2::y() + Poly2::monomial(1, 0, d));
    }

    for c in candidates {
        let f = chart.to_root(&c);
        let la = leading_at(alpha, &f)?;
        if value_of(&la) != target {
            continue;
        }
        let sa = sign_of(&la);
        let sb = sign_of(&leading_at(beta, &f)?);
        if sa != sb {
            return Ok(Some(if sa == Sign::Negative { -c } else { c }));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    SeparatingIdealIsMaximal,
    IterationLimit,
}

impl StopReason {
    pub fn as_str(self) -> &'static str {
        match self {
            StopReason::SeparatingIdealIsMaximal => "separating_ideal_is_maximal",
            StopReason::IterationLimit => "iteration_limit",
        }
    }
}

/// The sequence of charts from the root to the first chart in which the
/// separating ideal becomes the maximal ideal.
#[derive(Debug, Clone)]
pub struct BlowupChain {
    pub alpha: BranchPoint,
    pub beta: BranchPoint,
    pub charts: Vec<Chart>,
    pub stop_reason: StopReason,
    /// Sign changer in the last chart's coordinates, non-negative at `α`.
    pub changer: Option<Poly2>,
    pub nonchangers: Vec<Param>,
    /// Root-coordinate generators of the separating ideal.
    pub generators: Vec<Poly2>,
    pub threshold: ExtValue,
}

impl BlowupChain {
    pub fn r(&self) -> usize {
        self.charts.len() - 1
    }

    pub fn last(&self) -> &Chart {
        self.charts.last().expect("chain has a root chart")
    }

    pub fn is_nonchanger(&self, p: Param) -> bool {
        self.nonchangers.contains(&p)
    }
}

/// Runs quadratic transforms along `v_α` until a minimal-value sign
/// changer between `α` and `β` appears.
pub fn run_chain(alpha: &BranchPoint, beta: &BranchPoint, max_steps: usize) -> Result<BlowupChain> {
    if alpha.center() != beta.center() {
        return Err(Error::domain("branches have distinct centers"));
    }
    if !alpha.is_origin_centered() {
        return Err(Error::domain("branches must be centered at the origin; translate first"));
    }
    if alpha == beta {
        return Err(Error::domain("identical points: the separating ideal is zero"));
    }
    if alpha.same_curve_germ(beta) {
        return Err(Error::domain(
            "points lie on the same branch curve: the separating ideal has height one",
        ));
    }

    let mut charts = vec![Chart::root(alpha)];
    loop {
        let chart = charts.last().expect("nonempty");
        if let Some(changer) = stopping_test(chart, alpha, beta)? {
            return finish_chain(alpha, beta, charts, changer);
        }
        if charts.len() > max_steps {
            let partial = BlowupChain {
                alpha: alpha.clone(),
                beta: beta.clone(),
                charts,
                stop_reason: StopReason::IterationLimit,
                changer: None,
                nonchangers: Vec::new(),
                generators: Vec::new(),
                threshold: ExtValue::Infinite,
            };
            return Err(Error::IterationLimit {
                limit: max_steps,
                partial: Box::new(partial),
            });
        }
        let centered = [&chart.x_param, &chart.y_param]
            .into_iter()
            .map(|p| leading_at(beta, p).map(|l| value_of(&l).is_positive()))
            .collect::<Result<Vec<bool>>>()
            .map_err(|_| Error::internal("inconsistent separation"))?;
        if centered.contains(&false) {
            return Err(Error::internal("inconsistent separation"));
        }
        let next = blowup_step(chart, alpha)?;
        charts.push(next);
    }
}

fn finish_chain(
    alpha: &BranchPoint,
    beta: &BranchPoint,
    charts: Vec<Chart>,
    changer: Poly2,
) -> Result<BlowupChain> {
    let last = charts.last().expect("nonempty");
    let mut nonchangers = Vec::new();
    for p in [Param::X, Param::Y] {
        let f = last.param(p);
        if sign_of(&leading_at(alpha, f)?) == sign_of(&leading_at(beta, f)?) {
            nonchangers.push(p);
        }
    }
    if nonchangers.is_empty() {
        return Err(Error::internal("both final coordinates change sign"));
    }
    let threshold = chart_threshold(&charts, alpha, 0)?;
    let root = &charts[0];
    let (rx, ry) = (
        root.x_param.as_polynomial().expect("root parameters are polynomial"),
        root.y_param.as_polynomial().expect("root parameters are polynomial"),
    );
    let generators = normalize_generators(
        simple_ideal_at(&charts, alpha, 0)?
            .iter()
            .map(|g| g.compose(&rx, &ry)),
    );
    let least = generators.iter().map(|g| alpha.value(g)).min();
    if least.as_ref() != Some(&threshold) {
        return Err(Error::internal("separating ideal generators miss the threshold"));
    }
    Ok(BlowupChain {
        alpha: alpha.clone(),
        beta: beta.clone(),
        charts,
        stop_reason: StopReason::SeparatingIdealIsMaximal,
        changer: Some(changer),
        nonchangers,
        generators,
        threshold,
    })
}

/// Inverse transforms from the last chart of `charts` down to chart 0,
/// then rewritten in root coordinates and normalized.
pub fn fold_to_root(charts: &[Chart], gens: Vec<Poly2>) -> Result<Vec<Poly2>> {
    let gens = fold_to_chart(charts, 0, gens)?;
    let root = &charts[0];
    let (rx, ry) = (
        root.x_param.as_polynomial().expect("root parameters are polynomial"),
        root.y_param.as_polynomial().expect("root parameters are polynomial"),
    );
    Ok(normalize_generators(gens.iter().map(|g| g.compose(&rx, &ry))))
}

/// Inverse transforms of chart-`r` generators (last chart of `charts`)
/// down to chart `target`, in that chart's coordinates.
pub fn fold_to_chart(charts: &[Chart], target: usize, gens: Vec<Poly2>) -> Result<Vec<Poly2>> {
    let mut gens = gens;
    for chart in charts[target + 1..].iter().rev() {
        gens = inverse_transform_ideal(&gens, chart)?;
    }
    Ok(gens)
}

/// Order `o_i` of the simple ideal at each chart of the chain.
///
/// Point `j` is proximate to point `i < j` when the strict transform of the
/// divisor created by blowing up point `i` passes through point `j`; then
/// `o_r = 1` and `o_i = Σ_{j proximate to i} o_j`.
pub fn proximity_orders(charts: &[Chart]) -> Vec<u32> {
    let r = charts.len() - 1;
    // axes[i] = divisors on {X = 0} and {Y = 0} at the origin of chart i
    let mut axes: Vec<[Option<usize>; 2]> = vec![[None, None]];
    for (i, chart) in charts.iter().enumerate().skip(1) {
        let prev = axes[i - 1];
        let b_old = match chart.previous_a() {
            Param::X => prev[1],
            Param::Y => prev[0],
        };
        let other = match chart.case {
            CaseTag::I1 | CaseTag::I2 => b_old,
            _ => None,
        };
        axes.push(match chart.exceptional() {
            Param::X => [Some(i - 1), other],
            Param::Y => [other, Some(i - 1)],
        });
    }
    let mut orders = vec![0u32; r + 1];
    orders[r] = 1;
    for i in (0..r).rev() {
        orders[i] = (i + 1..=r)
            .filter(|&j| axes[j].contains(&Some(i)))
            .map(|j| orders[j])
            .sum();
    }
    orders
}

/// `v_α` of the simple ideal at chart `target`, from the proximity orders.
pub fn chart_threshold(charts: &[Chart], alpha: &BranchPoint, target: usize) -> Result<ExtValue> {
    let orders = proximity_orders(charts);
    let last = charts.last().expect("nonempty");
    let mut s = std::cmp::min(
        value_of(&leading_at(alpha, &last.x_param)?),
        value_of(&leading_at(alpha, &last.y_param)?),
    );
    for i in target..charts.len() - 1 {
        let next = &charts[i + 1];
        let exc = value_of(&leading_at(alpha, next.param(next.exceptional()))?);
        s = s + exc.scale(orders[i]);
    }
    Ok(s)
}

/// Coefficients of `τ^0 .. τ^{len-1}` of `f` along `α`, with the side
/// infinitesimal set to zero.
fn tau_series(alpha: &BranchPoint, f: &RatFunc2, len: usize) -> Result<Vec<Rational>> {
    let on_curve = |p: &Poly2| {
        let e = alpha.expand(p);
        let top = e.terms().filter(|(k, _)| k.1 == 0).map(|(k, _)| k.0 as usize).max();
        let mut out = vec![Rational::zero(); top.map_or(0, |t| t + 1)];
        for (&(i, j), c) in e.terms() {
            if j == 0 {
                out[i as usize] = c.clone();
            }
        }
        out
    };
    let num = on_curve(f.numer());
    let den = on_curve(f.denom());
    let k = den
        .iter()
        .position(|c| !c.is_zero())
        .ok_or_else(|| Error::internal("denominator vanishes along the branch"))?;
    if num.iter().take(k).any(|c| !c.is_zero()) {
        return Err(Error::internal("chart parameter has negative value"));
    }
    let at = |v: &[Rational], i: usize| v.get(i).cloned().unwrap_or_else(Rational::zero);
    let mut q: Vec<Rational> = Vec::with_capacity(len);
    for j in 0..len {
        let mut c = at(&num, j + k);
        for (l, ql) in q.iter().enumerate() {
            c -= ql * at(&den, k + j - l);
        }
        q.push(c / &den[k]);
    }
    Ok(q)
}

fn series_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let len = a.len();
    let mut out = vec![Rational::zero(); len];
    for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
        for (j, y) in b.iter().take(len - i).enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Row-reduced span of polynomials, pivoting on the first canonical term.
#[derive(Default)]
struct Span {
    rows: Vec<(Exponent, Poly2)>,
}

impl Span {
    fn reduce(&self, p: &Poly2) -> Poly2 {
        let mut p = p.clone();
        for (e, row) in &self.rows {
            let c = p.coeff(e.0, e.1);
            if !c.is_zero() {
                p = &p - &row.scale(&c);
            }
        }
        p
    }

    /// Adds `p`; `false` when it already lies in the span.
    fn insert(&mut self, p: &Poly2) -> bool {
        let p = self.reduce(p);
        let Some((e, c)) = p.canonical_terms().first().map(|(e, c)| (*e, (*c).clone())) else {
            return false;
        };
        let p = p.scale(&c.recip());
        for (_, row) in self.rows.iter_mut() {
            let f = row.coeff(e.0, e.1);
            if !f.is_zero() {
                *row = &*row - &p.scale(&f);
            }
        }
        self.rows.push((e, p));
        true
    }
}

/// Minimal generators of `{f : v_α(f ∘ ψ) ≥ s}` in the local ring of
/// `chart` at its origin, `s` finite. `hints` are returned when they
/// already generate.
pub fn valuation_ideal(alpha: &BranchPoint, chart: &Chart, s: &ExtValue, hints: &[Poly2]) -> Result<Vec<Poly2>> {
    let s = match s.omega_part() {
        Some(0) => s.finite_part().expect("finite").clone(),
        _ => return Err(Error::domain("valuation ideals are computed for finite thresholds")),
    };
    let n = Rational::from_integer(alpha.ramification().into());
    let len = (&s * &n).ceil().to_integer();
    let len = usize::try_from(len).map_err(|_| Error::internal("threshold out of range"))?;
    if len == 0 {
        return Ok(vec![Poly2::one()]);
    }
    let sx = tau_series(alpha, &chart.x_param, len)?;
    let sy = tau_series(alpha, &chart.y_param, len)?;
    let order = |v: &[Rational]| v.iter().position(|c| !c.is_zero());
    let k = match (order(&sx), order(&sy)) {
        (None, None) => 1,
        (a, b) => {
            let o = a.into_iter().chain(b).min().expect("some order");
            if o == 0 {
                return Err(Error::internal("chart origin is not the center of the branch"));
            }
            len.div_ceil(o)
        }
    } as u32;

    let pow = |base: &[Rational], e: u32| {
        let mut acc = vec![Rational::zero(); len];
        acc[0] = Rational::one();
        for _ in 0..e {
            acc = series_mul(&acc, base);
        }
        acc
    };
    let series_of = |p: &Poly2| {
        let mut acc = vec![Rational::zero(); len];
        for (&(a, b), c) in p.terms() {
            for (t, v) in acc.iter_mut().zip(series_mul(&pow(&sx, a), &pow(&sy, b))) {
                *t += c * v;
            }
        }
        acc
    };
    let as_poly = |v: &[Rational]| Poly2::from_terms(v.iter().enumerate().map(|(i, c)| ((i as u32, 0), c.clone())));

    // kernel of the truncated series map on polynomials of degree < k
    let mut image: Vec<(Exponent, Poly2, Poly2)> = Vec::new();
    let mut kernel: Vec<Poly2> = Vec::new();
    for d in 0..k {
        for a in (0..=d).rev() {
            let mono = Poly2::monomial(a, d - a, Rational::one());
            let mut ser = as_poly(&series_of(&mono));
            let mut tag = mono;
            for (e, row, row_tag) in &image {
                let c = ser.coeff(e.0, e.1);
                if !c.is_zero() {
                    ser = &ser - &row.scale(&c);
                    tag = &tag - &row_tag.scale(&c);
                }
            }
            match ser.canonical_terms().first().map(|(e, c)| (*e, (*c).clone())) {
                None => kernel.push(tag),
                Some((e, c)) => {
                    let inv = c.recip();
                    image.push((e, ser.scale(&inv), tag.scale(&inv)));
                }
            }
        }
    }
    let top: Vec<Poly2> = (0..=k).map(|a| Poly2::monomial(a, k - a, Rational::one())).collect();

    // m·I modulo m^{k+1}
    let mut base = Span::default();
    for v in &kernel {
        base.insert(&v.mul_monomial(1, 0));
        base.insert(&v.mul_monomial(0, 1));
    }
    let mut full = Span::default();
    for g in kernel.iter().chain(&top) {
        full.insert(g);
    }
    let pick = |cands: &[Poly2]| {
        let mut span = Span { rows: base.rows.clone() };
        let chosen: Vec<Poly2> = cands.iter().filter(|c| span.insert(&truncate(c, k))).cloned().collect();
        let covers = kernel.iter().chain(&top).all(|g| span.reduce(g).is_zero());
        (chosen, covers)
    };
    let hints_inside = !hints.is_empty()
        && hints
            .iter()
            .all(|h| series_of(h).iter().all(Zero::is_zero) && full.reduce(&truncate(h, k)).is_zero());
    if hints_inside {
        let (chosen, covers) = pick(hints);
        if covers {
            return Ok(normalize_generators(chosen));
        }
    }
    let cands: Vec<Poly2> = kernel.iter().chain(&top).cloned().collect();
    let (chosen, covers) = pick(&cands);
    if !covers {
        return Err(Error::internal("valuation ideal generators do not span"));
    }
    Ok(normalize_generators(chosen))
}

fn truncate(p: &Poly2, k: u32) -> Poly2 {
    Poly2::from_terms(p.terms().filter(|(e, _)| e.0 + e.1 <= k).map(|(e, c)| (*e, c.clone())))
}

/// Generators of the separating ideal transformed to chart `target`.
pub fn simple_ideal_at(charts: &[Chart], alpha: &BranchPoint, target: usize) -> Result<Vec<Poly2>> {
    let hints = fold_to_chart(charts, target, vec![Poly2::x(), Poly2::y()])?;
    let s = chart_threshold(charts, alpha, target)?;
    let chart = &charts[target];
    valuation_ideal(alpha, chart, &s, &hints)
}

/// Normalized, deduplicated generators in canonical order of appearance.
pub fn normalize_generators(gens: impl IntoIterator<Item = Poly2>) -> Vec<Poly2> {
    let mut out: Vec<Poly2> = Vec::new();
    for g in gens {
        let g = g.normalized();
        if !out.contains(&g) {
            out.push(g);
        }
    }
    out
}

fn check_gens(gens: &[Poly2]) -> Result<()> {
    if gens.is_empty() || gens.iter().any(Poly2::is_zero) {
        return Err(Error::domain("ideal generators must be nonzero"));
    }
    Ok(())
}

/// Transform of an ideal of chart `next.index − 1` into chart `next.index`:
/// substitute the step relations and strip the common power of the
/// exceptional coordinate.
pub fn transform_ideal(gens: &[Poly2], next: &Chart) -> Result<Vec<Poly2>> {
    check_gens(gens)?;
    if next.case == CaseTag::Root {
        return Err(Error::domain("the root chart has no predecessor"));
    }
    let (rx, ry) = next.step_relation();
    let subs: Vec<Poly2> = gens.iter().map(|g| g.compose(&rx, &ry)).collect();
    let exc = next.exceptional();
    let rho = subs
        .iter()
        .map(|g| {
            let (a, b) = g.monomial_content();
            if exc == Param::X {
                a
            } else {
                b
            }
        })
        .min()
        .unwrap_or(0);
    Ok(subs
        .into_iter()
        .map(|g| match exc {
            Param::X => g.divide_monomial(rho, 0),
            Param::Y => g.divide_monomial(0, rho),
        })
        .collect())
}

/// Inverse transform of an ideal of chart `next.index` into the previous
/// chart: rewrite through the inverse relations and multiply by the
/// least power of `a` that clears all denominators.
pub fn inverse_transform_ideal(gens: &[Poly2], next: &Chart) -> Result<Vec<Poly2>> {
    check_gens(gens)?;
    if next.case == CaseTag::Root {
        return Err(Error::domain("the root chart has no predecessor"));
    }
    let (ix, iy) = next.inverse_relation();
    let a = next.previous_a();
    let mut parts = Vec::with_capacity(gens.len());
    for g in gens {
        let r = substitute(g, &ix, &iy);
        let den = r.denom();
        let k = match den.terms().next() {
            Some((&(i, j), c)) if den.len() == 1 && c.is_one() => match a {
                Param::X if j == 0 => i,
                Param::Y if i == 0 => j,
                _ => return Err(Error::internal("inverse transform denominator is not a power of a")),
            },
            _ => return Err(Error::internal("inverse transform denominator is not a power of a")),
        };
        parts.push((r.numer().clone(), k));
    }
    let n = parts.iter().map(|p| p.1).max().unwrap_or(0);
    Ok(parts
        .into_iter()
        .map(|(num, k)| match a {
            Param::X => num.mul_monomial(n - k, 0),
            Param::Y => num.mul_monomial(0, n - k),
        })
        .collect())
}

/// `g ∘ ψ_r = X^e · Y^f · w` with `w(0, 0) ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonomialFactor {
    pub e: u32,
    pub f: u32,
    pub w: Poly2,
}

pub fn monomial_factor(g: &Poly2, chain: &BlowupChain) -> Result<MonomialFactor> {
    if chain.stop_reason != StopReason::SeparatingIdealIsMaximal {
        return Err(Error::domain("chain did not reach separation"));
    }
    if chain.alpha.value(g) >= chain.threshold {
        return Err(Error::domain("not a unit: g lies in the separating ideal"));
    }
    let h = chain.last().pullback(g);
    let (e, f) = h.monomial_content();
    let w = h.divide_monomial(e, f);
    if w.constant_term().is_zero() {
        return Err(Error::internal("cofactor vanishes at the chart origin"));
    }
    if (e > 0 && !chain.is_nonchanger(Param::X)) || (f > 0 && !chain.is_nonchanger(Param::Y)) {
        return Err(Error::internal("a sign-changing coordinate divides a non-member"));
    }
    Ok(MonomialFactor { e, f, w })
}

#[derive(Serialize)]
struct RawChart<'a> {
    index: usize,
    case: CaseTag,
    x_param: &'a RatFunc2,
    y_param: &'a RatFunc2,
    down_map: [&'a Poly2; 2],
    shift: String,
}

impl Serialize for Chart {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawChart {
            index: self.index,
            case: self.case,
            x_param: &self.x_param,
            y_param: &self.y_param,
            down_map: [&self.down_map.0, &self.down_map.1],
            shift: format_rational(&self.shift),
        }
        .serialize(s)
    }
}

#[derive(Serialize)]
struct RawChain<'a> {
    r: usize,
    stop_reason: &'static str,
    charts: &'a [Chart],
    #[serde(skip_serializing_if = "Option::is_none")]
    changer: Option<&'a Poly2>,
    nonchangers: Vec<String>,
}

impl Serialize for BlowupChain {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let r = self.r();
        RawChain {
            r,
            stop_reason: self.stop_reason.as_str(),
            charts: &self.charts,
            changer: self.changer.as_ref(),
            nonchangers: self
                .nonchangers
                .iter()
                .map(|p| match p {
                    Param::X => format!("x_{r}"),
                    Param::Y => format!("y_{r}"),
                })
                .collect(),
        }
        .serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::branch::Side;
    use crate::exactnum::{int, rat};
    use crate::polyring::{parse_polynomial, PuiseuxPoly};

    fn p(s: &str) -> Poly2 {
        parse_polynomial(s).unwrap()
    }

    fn branch(orient: Sign, terms: &[(Rational, i64)], side: Side) -> BranchPoint {
        let phi = PuiseuxPoly::new(terms.iter().map(|(q, c)| (q.clone(), int(*c)))).unwrap();
        BranchPoint::new(orient, phi, side).unwrap()
    }

    fn main_pair() -> (BranchPoint, BranchPoint) {
        (
            branch(Sign::Positive, &[(int(2), 1)], Side::Above),
            branch(Sign::Positive, &[(int(2), 1), (int(3), 1)], Side::Below),
        )
    }

    #[test]
    fn main_chain() {
        let (a, b) = main_pair();
        let chain = run_chain(&a, &b, 64).unwrap();
        assert_eq!(chain.r(), 2);
        assert_eq!(chain.charts[1].case, CaseTag::I1);
        assert_eq!(chain.charts[2].case, CaseTag::II1);
        assert_eq!(chain.charts[2].shift, int(1));
        assert_eq!(chain.charts[2].y_param, RatFunc2::new(p("y - x^2"), p("x^2")).unwrap());
        assert_eq!(chain.charts[2].down_map, (p("x"), p("x^2 y + x^2")));
        assert_eq!(chain.changer, Some(p("x - 2y")));
        assert_eq!(chain.nonchangers, vec![Param::X, Param::Y]);
        assert_eq!(chain.generators, vec![p("x^3"), p("y - x^2")]);
        assert_eq!(chain.threshold, ExtValue::int(3));
        assert!(chain.charts.iter().all(Chart::is_consistent));
    }

    #[test]
    fn no_changer_at_root_of_main_example() {
        let (a, b) = main_pair();
        assert_eq!(stopping_test(&Chart::root(&a), &a, &b).unwrap(), None);
    }

    #[test]
    fn opposite_orientation_stops_at_root() {
        let a = branch(Sign::Positive, &[(int(1), 1)], Side::Above);
        let b = branch(Sign::Negative, &[(int(1), 1)], Side::Above);
        let chain = run_chain(&a, &b, 64).unwrap();
        assert_eq!(chain.r(), 0);
        assert_eq!(chain.changer, Some(p("x")));
        assert_eq!(chain.nonchangers, vec![Param::Y]);
    }

    #[test]
    fn proximity_of_satellite_points() {
        let a = branch(Sign::Positive, &[(rat(3, 2), 1), (int(2), 1)], Side::Above);
        let b = branch(Sign::Positive, &[(rat(3, 2), 1), (rat(5, 2), 1)], Side::Below);
        let chain = run_chain(&a, &b, 64).unwrap();
        assert_eq!(chain.r(), 3);
        assert_eq!(proximity_orders(&chain.charts), vec![2, 1, 1, 1]);
        assert_eq!(chain.threshold, ExtValue::rational(rat(7, 2)));
        let (main_a, main_b) = main_pair();
        let main = run_chain(&main_a, &main_b, 64).unwrap();
        assert_eq!(proximity_orders(&main.charts), vec![1, 1, 1]);
    }

    #[test]
    fn cusp_pair_uses_case_i2() {
        let a = branch(Sign::Positive, &[(rat(3, 2), 1)], Side::Above);
        let b = branch(Sign::Positive, &[(rat(3, 2), -1)], Side::Above);
        let chain = run_chain(&a, &b, 64).unwrap();
        assert_eq!(chain.r(), 1);
        assert_eq!(chain.charts[1].case, CaseTag::I2);
        assert_eq!(chain.nonchangers, vec![Param::Y]);
        assert_eq!(chain.threshold, ExtValue::rational(rat(3, 2)));
    }

    #[test]
    fn transforms_on_main_chain() {
        let (a, b) = main_pair();
        let chain = run_chain(&a, &b, 64).unwrap();
        let c1 = &chain.charts[1];
        let c2 = &chain.charts[2];
        assert_eq!(transform_ideal(&[p("x^3"), p("y - x^2")], c1).unwrap(), vec![p("x^2"), p("y - x")]);
        assert_eq!(transform_ideal(&[p("x^2")], c1).unwrap(), vec![p("1")]);
        assert_eq!(inverse_transform_ideal(&[p("x"), p("y")], c2).unwrap(), vec![p("x^2"), p("y - x")]);
        assert_eq!(inverse_transform_ideal(&[p("x^2"), p("y - x")], c1).unwrap(), vec![p("x^3"), p("y - x^2")]);
        assert_eq!(inverse_transform_ideal(&[p("1")], c1).unwrap(), vec![p("1")]);
        assert_eq!(transform_ideal(&[p("x^2"), p("y - x")], c2).unwrap(), vec![p("x"), p("y")]);
    }

    #[test]
    fn factor_examples() {
        let (a, b) = main_pair();
        let chain = run_chain(&a, &b, 64).unwrap();
        assert_eq!(monomial_factor(&p("x"), &chain).unwrap(), MonomialFactor { e: 1, f: 0, w: p("1") });
        assert_eq!(monomial_factor(&p("y"), &chain).unwrap(), MonomialFactor { e: 2, f: 0, w: p("y + 1") });
        assert!(matches!(
            monomial_factor(&p("y - x^2"), &chain),
            Err(Error::Domain(m)) if m.starts_with("not a unit")
        ));
    }

    #[test]
    fn iteration_limit_keeps_partial_chain() {
        let (a, b) = main_pair();
        match run_chain(&a, &b, 1) {
            Err(Error::IterationLimit { limit: 1, partial }) => assert_eq!(partial.charts.len(), 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn degenerate_pairs_are_rejected() {
        let (a, _) = main_pair();
        assert!(matches!(run_chain(&a, &a, 8), Err(Error::Domain(_))));
        let below = branch(Sign::Positive, &[(int(2), 1)], Side::Below);
        assert!(matches!(run_chain(&a, &below, 8), Err(Error::Domain(_))));
    }
}
