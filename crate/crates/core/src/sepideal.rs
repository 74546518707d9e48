//! Separating ideals of pairs of branch points.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::blowup::{
    normalize_generators, run_chain, simple_ideal_at, transform_ideal, BlowupChain, CaseTag,
};
use crate::branch::{common_center, BranchPoint, CommonCenter};
use crate::error::{Error, Result};
use crate::exactnum::{int, ExtValue, Rational, Sign};
use crate::polyring::{canonical_cmp, Exponent, Poly2};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IdealKind {
    Zero,
    HeightOne,
    HeightTwo,
    Unit,
}

/// `⟨α, β⟩` in root coordinates.
#[derive(Debug, Clone)]
pub struct SeparatingIdeal {
    pub kind: IdealKind,
    pub generators: Vec<Poly2>,
    /// `v_α` of the ideal; `∞` for the zero ideal.
    pub threshold: ExtValue,
    pub chain: Option<BlowupChain>,
    pub curve: Option<Poly2>,
    pub alpha: BranchPoint,
    pub beta: BranchPoint,
}

impl SeparatingIdeal {
    pub fn r(&self) -> Option<usize> {
        self.chain.as_ref().map(BlowupChain::r)
    }
}

impl Serialize for SeparatingIdeal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let n = if self.chain.is_some() { 4 } else { 3 };
        let mut st = s.serialize_struct("SeparatingIdeal", n)?;
        st.serialize_field("kind", &self.kind)?;
        st.serialize_field("generators", &self.generators)?;
        st.serialize_field("threshold", &self.threshold)?;
        if let Some(r) = self.r() {
            st.serialize_field("r", &r)?;
        }
        st.end()
    }
}

pub fn separating_ideal(alpha: &BranchPoint, beta: &BranchPoint, max_steps: usize) -> Result<SeparatingIdeal> {
    let base = |kind, generators, threshold, chain, curve| SeparatingIdeal {
        kind,
        generators,
        threshold,
        chain,
        curve,
        alpha: alpha.clone(),
        beta: beta.clone(),
    };
    match common_center(alpha, beta) {
        CommonCenter::Distinct => {
            return Ok(base(IdealKind::Unit, vec![Poly2::one()], ExtValue::zero(), None, None))
        }
        CommonCenter::Shared { .. } => {
            return Err(Error::domain(
                "branches share a center other than the origin; translate it to the origin first",
            ))
        }
        CommonCenter::Origin => {}
    }
    if alpha == beta {
        return Ok(base(IdealKind::Zero, Vec::new(), ExtValue::Infinite, None, None));
    }
    if alpha.same_curve_germ(beta) {
        let curve = alpha.curve();
        let threshold = alpha.value(&curve);
        return Ok(base(IdealKind::HeightOne, vec![curve.clone()], threshold, None, Some(curve)));
    }
    let chain = run_chain(alpha, beta, max_steps)?;
    Ok(base(
        IdealKind::HeightTwo,
        chain.generators.clone(),
        chain.threshold.clone(),
        Some(chain),
        None,
    ))
}

pub fn member(g: &Poly2, s: &SeparatingIdeal) -> bool {
    match s.kind {
        IdealKind::Unit => true,
        IdealKind::HeightOne => {
            let curve = s.curve.as_ref().expect("height-one ideal carries its curve");
            g.div_exact(curve).is_some()
        }
        IdealKind::Zero | IdealKind::HeightTwo => s.alpha.value(g) >= s.threshold,
    }
}

/// A polynomial non-negative at `α` and non-positive at `β` from which
/// witnesses are scaled.
fn base_changer(s: &SeparatingIdeal) -> Result<Poly2> {
    let (alpha, beta) = (&s.alpha, &s.beta);
    let b = match s.kind {
        IdealKind::Zero => return Err(Error::internal("the zero ideal has no sign changer")),
        IdealKind::HeightTwo => {
            let chain = s.chain.as_ref().expect("height-two ideal carries its chain");
            let changer = chain.changer.as_ref().expect("completed chain has a changer");
            let f = chain.last().to_root(changer);
            let den = f.denom();
            let (da, db) = (alpha.sign(den), beta.sign(den));
            let b = if da == db && da != Sign::Zero {
                f.numer().scale(&Rational::from_integer(da.as_i8().into()))
            } else {
                f.numer() * den
            };
            if alpha.value(&b) == s.threshold {
                b
            } else {
                // the pulled-back changer carries surplus exceptional factors
                changer_from_generators(s).ok_or_else(|| Error::internal("no sign changer of threshold value"))?
            }
        }
        IdealKind::HeightOne => s.curve.clone().expect("height-one ideal carries its curve"),
        IdealKind::Unit => {
            let (p, q) = (alpha.center(), beta.center());
            let (dx, dy) = (&q.0 - &p.0, &q.1 - &p.1);
            let mx = (&p.0 + &q.0) / int(2);
            let my = (&p.1 + &q.1) / int(2);
            // ⟨q − p, m − z⟩ is positive near p and negative near q
            Poly2::from_terms([
                ((0, 0), &dx * &mx + &dy * &my),
                ((1, 0), -dx),
                ((0, 1), -dy),
            ])
        }
    };
    let (sa, sb) = (alpha.sign(&b), beta.sign(&b));
    if sa >= Sign::Zero && sb <= Sign::Zero && (sa, sb) != (Sign::Zero, Sign::Zero) {
        Ok(b)
    } else if sa <= Sign::Zero && sb >= Sign::Zero && (sa, sb) != (Sign::Zero, Sign::Zero) {
        Ok(-b)
    } else {
        Err(Error::internal("stored changer does not separate the points"))
    }
}

fn separates_at_threshold(s: &SeparatingIdeal, b: &Poly2) -> bool {
    let (sa, sb) = (s.alpha.sign(b), s.beta.sign(b));
    sa >= Sign::Zero && sb <= Sign::Zero && sa != sb && s.alpha.value(b) == s.threshold
}

/// A sign changer of value `s` among `g_1 + λ g_2` for generators and their
/// multiples by `x`, `y`. Signs at `α` and `β` are constant in `λ` between
/// the cancellation ratios, so one `λ` per interval suffices.
fn changer_from_generators(s: &SeparatingIdeal) -> Option<Poly2> {
    let mut pool = s.generators.clone();
    for g in &s.generators {
        pool.push(g.mul_monomial(1, 0));
        pool.push(g.mul_monomial(0, 1));
    }
    let try_both = |f: Poly2| {
        if separates_at_threshold(s, &f) {
            Some(f)
        } else if separates_at_threshold(s, &-f.clone()) {
            Some(-f)
        } else {
            None
        }
    };
    for g in &pool {
        if let Some(f) = try_both(g.clone()) {
            return Some(f);
        }
    }
    for g1 in &pool {
        for g2 in &pool {
            if g1 == g2 {
                continue;
            }
            let mut crit = vec![Rational::zero()];
            for point in [&s.alpha, &s.beta] {
                if let (Some(l1), Some(l2)) = (point.leading(g1), point.leading(g2)) {
                    if l1.value == l2.value {
                        crit.push(-(&l1.coeff / &l2.coeff));
                    }
                }
            }
            crit.sort();
            crit.dedup();
            let mut lambdas = vec![&crit[0] - Rational::one(), crit[crit.len() - 1].clone() + Rational::one()];
            lambdas.extend(crit.windows(2).map(|w| (&w[0] + &w[1]) / int(2)));
            for l in lambdas {
                if let Some(f) = try_both(g1 + &g2.scale(&l)) {
                    return Some(f);
                }
            }
        }
    }
    None
}

/// `h` with `a(α) ≤ h(α)` and `h(β) ≤ 0`, verified exactly.
pub fn h_witness(a: &Poly2, s: &SeparatingIdeal) -> Result<Poly2> {
    let (alpha, beta) = (&s.alpha, &s.beta);
    if alpha.sign(a) == Sign::Negative {
        return Err(Error::domain("a is negative at alpha"));
    }
    if !member(a, s) {
        return Err(Error::domain("a does not lie in the separating ideal"));
    }
    if a.is_zero() {
        return Ok(Poly2::zero());
    }
    if s.kind == IdealKind::Zero {
        return Ok(a.clone());
    }
    let b = base_changer(s)?;
    let la = alpha.leading(a);
    let lb = alpha.leading(&b);
    let mut lambda = match (&la, &lb) {
        (Some(la), Some(lb)) if la.value == lb.value => crate::branch::abs_ratio(la, lb) + Rational::one(),
        _ => Rational::one(),
    };
    for _ in 0..=16 {
        let h = b.scale(&lambda);
        if alpha.sign(&(&h - a)) >= Sign::Zero && beta.sign(&h) <= Sign::Zero {
            return Ok(h);
        }
        lambda *= int(2);
    }
    Err(Error::Exhausted("no witness found".into()))
}

/// The least common specialization of `α` and `β`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Specialization {
    /// The closed point at the common center.
    Origin,
    /// The point on the curve `{curve = 0}` approached along the branch.
    Curve { curve: Poly2, point: BranchPoint },
    /// `α` itself.
    Point { point: BranchPoint },
    /// Distinct centers: no common specialization.
    None,
}

pub fn common_specialization(s: &SeparatingIdeal) -> Specialization {
    match s.kind {
        IdealKind::HeightTwo => Specialization::Origin,
        IdealKind::HeightOne => Specialization::Curve {
            curve: s.curve.clone().expect("height-one ideal carries its curve"),
            point: s.alpha.on_curve(),
        },
        IdealKind::Zero => Specialization::Point {
            point: s.alpha.clone(),
        },
        IdealKind::Unit => Specialization::None,
    }
}

/// Search caps for the brute-force sign changer enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleCaps {
    pub degree: u32,
    pub coeff: i64,
    pub support: usize,
}

impl Default for OracleCaps {
    fn default() -> Self {
        OracleCaps {
            degree: 3,
            coeff: 2,
            support: 3,
        }
    }
}

/// Monomials of degree at most `d` in canonical order.
pub fn monomials_up_to(d: u32) -> Vec<Exponent> {
    let mut v: Vec<Exponent> = (0..=d)
        .flat_map(|i| (0..=d - i).map(move |j| (i, j)))
        .collect();
    v.sort_by(canonical_cmp);
    v
}

/// Calls `visit(poly, expansion_alpha, expansion_beta)` for every polynomial
/// of the search space, in a fixed order.
fn enumerate<F>(alpha: &BranchPoint, beta: &BranchPoint, caps: OracleCaps, mut visit: F)
where
    F: FnMut(&Poly2, &Poly2, &Poly2),
{
    let monos = monomials_up_to(caps.degree);
    let ea: Vec<Poly2> = monos
        .iter()
        .map(|&(i, j)| alpha.expand(&Poly2::monomial(i, j, Rational::one())))
        .collect();
    let eb: Vec<Poly2> = monos
        .iter()
        .map(|&(i, j)| beta.expand(&Poly2::monomial(i, j, Rational::one())))
        .collect();
    let coeffs: Vec<i64> = (-caps.coeff..=caps.coeff).filter(|c| *c != 0).collect();
    let mut subset = Vec::new();
    visit_subsets(monos.len(), caps.support, 0, &mut subset, &mut |idx| {
        let mut choice = vec![0usize; idx.len()];
        loop {
            let mut p = Poly2::zero();
            let mut xa = Poly2::zero();
            let mut xb = Poly2::zero();
            for (k, &m) in idx.iter().enumerate() {
                let c = int(coeffs[choice[k]]);
                let (i, j) = monos[m];
                p.add_term((i, j), c.clone());
                xa += ea[m].scale(&c);
                xb += eb[m].scale(&c);
            }
            visit(&p, &xa, &xb);
            let mut k = idx.len();
            loop {
                if k == 0 {
                    return;
                }
                k -= 1;
                choice[k] += 1;
                if choice[k] < coeffs.len() {
                    break;
                }
                choice[k] = 0;
            }
        }
    });
}

fn visit_subsets(n: usize, max: usize, start: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if !cur.is_empty() {
        f(cur);
    }
    if cur.len() == max {
        return;
    }
    for i in start..n {
        cur.push(i);
        visit_subsets(n, max, i + 1, cur, f);
        cur.pop();
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleResult {
    pub min_value: ExtValue,
    pub witness: Poly2,
}

/// Smallest `v_α` of a polynomial in the search space that is `≥ 0` at `α`,
/// `≤ 0` at `β` and not zero at both.
pub fn signchanger_oracle(alpha: &BranchPoint, beta: &BranchPoint, caps: OracleCaps) -> Result<OracleResult> {
    if alpha == beta {
        return Err(Error::domain("the oracle needs two distinct points"));
    }
    let mut best: Option<OracleResult> = None;
    enumerate(alpha, beta, caps, |p, xa, xb| {
        let la = alpha.leading_of_expansion(xa);
        let sa = la.as_ref().map_or(Sign::Zero, |l| Sign::of(&l.coeff));
        let sb = beta
            .leading_of_expansion(xb)
            .map_or(Sign::Zero, |l| Sign::of(&l.coeff));
        if sa < Sign::Zero || sb > Sign::Zero || (sa == Sign::Zero && sb == Sign::Zero) {
            return;
        }
        let v = la.map_or(ExtValue::Infinite, |l| l.value);
        if best.as_ref().is_none_or(|b| v < b.min_value) {
            best = Some(OracleResult {
                min_value: v,
                witness: p.clone(),
            });
        }
    });
    best.ok_or_else(|| Error::Exhausted("oracle inconclusive".into()))
}

/// Outcome of the gap-dimension check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GapReport {
    /// Distinct values below the threshold realized by the search space.
    pub values_checked: usize,
    pub polynomials_checked: usize,
}

/// For each value `s' < s` met in the search space, any two polynomials of
/// value `s'` are proportional modulo higher value.
pub fn gap_dimension_check(s: &SeparatingIdeal, caps: OracleCaps) -> Result<GapReport> {
    let alpha = &s.alpha;
    let mut reps: BTreeMap<ExtValue, (Rational, Poly2)> = BTreeMap::new();
    let mut failures = 0usize;
    let mut count = 0usize;
    enumerate(alpha, &s.beta, caps, |_, xa, _| {
        let Some(l) = alpha.leading_of_expansion(xa) else {
            return;
        };
        if l.value >= s.threshold {
            return;
        }
        count += 1;
        match reps.get(&l.value) {
            None => {
                reps.insert(l.value.clone(), (l.coeff.clone(), xa.clone()));
            }
            Some((c, rep)) => {
                let diff = xa - &rep.scale(&(&l.coeff / c));
                let higher = alpha
                    .leading_of_expansion(&diff)
                    .is_none_or(|d| d.value > l.value);
                if !higher {
                    failures += 1;
                }
            }
        }
    });
    if failures > 0 {
        return Err(Error::internal(format!(
            "{failures} polynomials break the one-dimensional gap property"
        )));
    }
    Ok(GapReport {
        values_checked: reps.len(),
        polynomials_checked: count,
    })
}

/// The transformed separating ideal in one chart.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChartIdeal {
    pub index: usize,
    pub generators: Vec<Poly2>,
    pub proper: bool,
    pub maximal: bool,
    /// Agrees with the simple ideal computed directly in this chart.
    pub matches_fold: bool,
}

fn linear_rank(gens: &[Poly2]) -> usize {
    let rows: Vec<[Rational; 2]> = gens.iter().map(|g| [g.coeff(1, 0), g.coeff(0, 1)]).collect();
    let nonzero: Vec<&[Rational; 2]> = rows.iter().filter(|r| !r[0].is_zero() || !r[1].is_zero()).collect();
    match nonzero.len() {
        0 => 0,
        _ => {
            let first = nonzero[0];
            let independent = nonzero
                .iter()
                .any(|r| &first[0] * &r[1] - &first[1] * &r[0] != Rational::zero());
            if independent {
                2
            } else {
                1
            }
        }
    }
}

fn same_up_to_units(a: &[Poly2], b: &[Poly2]) -> bool {
    let strip = |gs: &[Poly2]| {
        let mut v: Vec<Poly2> = gs
            .iter()
            .map(|g| {
                let (i, j) = g.monomial_content();
                g.divide_monomial(i, j)
            })
            .collect();
        v = normalize_generators(v);
        v.sort_by_key(|p| p.to_string());
        v
    };
    strip(a) == strip(b)
}

fn same_local_ideal(a: &[Poly2], b: &[Poly2]) -> bool {
    match (LocalIdeal::new(a, 16), LocalIdeal::new(b, 16)) {
        (Some(la), Some(lb)) => a.iter().all(|g| lb.contains(g)) && b.iter().all(|g| la.contains(g)),
        _ => false,
    }
}

/// Transforms of the separating ideal along the chain: proper and not
/// maximal before the last chart, maximal at the last chart, and equal to
/// the simple ideal computed in every chart.
pub fn simplicity_check(s: &SeparatingIdeal) -> Result<Vec<ChartIdeal>> {
    let chain = s
        .chain
        .as_ref()
        .ok_or_else(|| Error::domain("simplicity is checked on height-two ideals"))?;
    let r = chain.r();
    let root = &chain.charts[0];
    let mut gens: Vec<Poly2> = s.generators.iter().map(|g| root.pullback(g)).collect();
    let mut out = Vec::with_capacity(r + 1);
    for (i, chart) in chain.charts.iter().enumerate() {
        if i > 0 {
            debug_assert_ne!(chart.case, CaseTag::Root);
            gens = transform_ideal(&gens, chart)?;
        }
        let proper = gens.iter().all(|g| g.constant_term().is_zero());
        let maximal = proper && linear_rank(&gens) == 2;
        let fold = simple_ideal_at(&chain.charts, &s.alpha, i)?;
        out.push(ChartIdeal {
            index: i,
            generators: normalize_generators(gens.clone()),
            proper,
            maximal,
            matches_fold: same_up_to_units(&gens, &fold) || same_local_ideal(&gens, &fold),
        });
    }
    let ok = out
        .iter()
        .all(|c| c.proper && c.matches_fold && (c.maximal == (c.index == r)));
    if !ok {
        return Err(Error::internal("separating ideal transforms are not simple along the chain"));
    }
    Ok(out)
}

/// Membership in the ideal generated by `gens` in the local ring at the
/// origin, decided modulo `m^K` once `m^K` is known to lie in the ideal.
pub struct LocalIdeal {
    k: u32,
    index: BTreeMap<Exponent, usize>,
    basis: Vec<(usize, Vec<Rational>)>,
}

impl LocalIdeal {
    /// `None` when no `K ≤ max_k` with `m^K ⊆ I` exists (ideal not m-primary).
    pub fn new(gens: &[Poly2], max_k: u32) -> Option<LocalIdeal> {
        for k in 1..=max_k {
            let li = LocalIdeal::truncated(gens, k);
            let covers = monomials_up_to(k)
                .into_iter()
                .filter(|e| e.0 + e.1 == k)
                .all(|(i, j)| li.contains_truncated(&Poly2::monomial(i, j, Rational::one())));
            if covers {
                return Some(li);
            }
        }
        None
    }

    /// Span of `mono · gen` truncated above degree `k`.
    fn truncated(gens: &[Poly2], k: u32) -> LocalIdeal {
        let monos = monomials_up_to(k);
        let index: BTreeMap<Exponent, usize> = monos.iter().enumerate().map(|(n, e)| (*e, n)).collect();
        let mut li = LocalIdeal {
            k,
            index,
            basis: Vec::new(),
        };
        for g in gens {
            for &(a, b) in &monos {
                let v = li.vector(&g.mul_monomial(a, b));
                li.insert(v);
            }
        }
        li
    }

    fn vector(&self, p: &Poly2) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.index.len()];
        for (&(i, j), c) in p.terms() {
            if i + j <= self.k {
                v[self.index[&(i, j)]] = c.clone();
            }
        }
        v
    }

    fn reduce(&self, mut v: Vec<Rational>) -> Vec<Rational> {
        for (pivot, row) in &self.basis {
            if !v[*pivot].is_zero() {
                let f = v[*pivot].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    *x -= &f * r;
                }
            }
        }
        v
    }

    fn insert(&mut self, v: Vec<Rational>) {
        let mut v = self.reduce(v);
        if let Some(pivot) = v.iter().position(|c| !c.is_zero()) {
            let inv = v[pivot].recip();
            for x in v.iter_mut() {
                *x *= &inv;
            }
            for (_, row) in self.basis.iter_mut() {
                if !row[pivot].is_zero() {
                    let f = row[pivot].clone();
                    for (r, x) in row.iter_mut().zip(&v) {
                        *r -= &f * x;
                    }
                }
            }
            self.basis.push((pivot, v));
        }
    }

    fn contains_truncated(&self, p: &Poly2) -> bool {
        self.reduce(self.vector(p)).iter().all(Zero::is_zero)
    }

    pub fn contains(&self, p: &Poly2) -> bool {
        self.contains_truncated(p)
    }

    pub fn k(&self) -> u32 {
        self.k
    }
}

/// Counts of the bounded-degree comparison between `{v_α ≥ s}` and the
/// ideal generated by the height-two generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentificationReport {
    pub k: u32,
    pub checked: usize,
    pub discrepancies: Vec<Poly2>,
}

pub fn threshold_identification_check(s: &SeparatingIdeal, caps: OracleCaps) -> Result<IdentificationReport> {
    if s.kind != IdealKind::HeightTwo {
        return Err(Error::domain("identification is checked on height-two ideals"));
    }
    let local = LocalIdeal::new(&s.generators, 16)
        .ok_or_else(|| Error::internal("height-two separating ideal is not m-primary"))?;
    let mut checked = 0usize;
    let mut discrepancies = Vec::new();
    enumerate(&s.alpha, &s.beta, caps, |p, xa, _| {
        checked += 1;
        let by_value = s
            .alpha
            .leading_of_expansion(xa)
            .is_none_or(|l| l.value >= s.threshold);
        if by_value != local.contains(p) {
            discrepancies.push(p.clone());
        }
    });
    Ok(IdentificationReport {
        k: local.k(),
        checked,
        discrepancies,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::branch::Side;
    use crate::exactnum::rat;
    use crate::polyring::{parse_polynomial, PuiseuxPoly};

    fn p(s: &str) -> Poly2 {
        parse_polynomial(s).unwrap()
    }

    fn branch(orient: Sign, terms: &[(Rational, i64)], side: Side) -> BranchPoint {
        let phi = PuiseuxPoly::new(terms.iter().map(|(q, c)| (q.clone(), int(*c)))).unwrap();
        BranchPoint::new(orient, phi, side).unwrap()
    }

    fn main_ideal() -> SeparatingIdeal {
        let a = branch(Sign::Positive, &[(int(2), 1)], Side::Above);
        let b = branch(Sign::Positive, &[(int(2), 1), (int(3), 1)], Side::Below);
        separating_ideal(&a, &b, 64).unwrap()
    }

    #[test]
    fn main_example() {
        let s = main_ideal();
        assert_eq!(s.kind, IdealKind::HeightTwo);
        assert_eq!(s.generators, vec![p("x^3"), p("y - x^2")]);
        assert_eq!(s.threshold, ExtValue::int(3));
        assert_eq!(s.r(), Some(2));
        assert!(member(&p("x y - x^3"), &s));
        assert!(!member(&p("x^2"), &s));
        assert!(member(&Poly2::zero(), &s));
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(
            json,
            r#"{"kind":"height_two","generators":["x^3","y - x^2"],"threshold":{"omega":0,"finite":"3"},"r":2}"#
        );
    }

    #[test]
    fn degenerate_kinds() {
        let a = branch(Sign::Positive, &[(int(2), 1)], Side::Above);
        let b = branch(Sign::Positive, &[(int(2), 1)], Side::Below);
        let s = separating_ideal(&a, &b, 64).unwrap();
        assert_eq!(s.kind, IdealKind::HeightOne);
        assert_eq!(s.generators, vec![p("y - x^2")]);
        assert!(member(&p("x y - x^3"), &s));
        assert!(!member(&p("x^5"), &s));

        let z = separating_ideal(&a, &a, 64).unwrap();
        assert_eq!(z.kind, IdealKind::Zero);
        assert!(z.generators.is_empty());
        assert_eq!(z.threshold, ExtValue::Infinite);

        let moved = a.clone().with_center(int(1), int(0));
        assert_eq!(separating_ideal(&a, &moved, 64).unwrap().kind, IdealKind::Unit);
    }

    #[test]
    fn oracle_matches_threshold() {
        let s = main_ideal();
        let caps = OracleCaps { degree: 3, coeff: 2, support: 3 };
        let o = signchanger_oracle(&s.alpha, &s.beta, caps).unwrap();
        assert_eq!(o.min_value, ExtValue::int(3));
        assert!(s.alpha.sign(&o.witness) >= Sign::Zero);
        assert!(s.beta.sign(&o.witness) <= Sign::Zero);
    }

    #[test]
    fn oracle_on_axis_sides() {
        let a = branch(Sign::Positive, &[], Side::Above);
        let b = branch(Sign::Positive, &[], Side::Below);
        let o = signchanger_oracle(&a, &b, OracleCaps { degree: 2, coeff: 1, support: 2 }).unwrap();
        assert_eq!(o.min_value, ExtValue::new(1, int(0)));
        assert_eq!(o.witness, p("y"));
    }

    #[test]
    fn witnesses_verify() {
        let s = main_ideal();
        for a in ["x^3", "y - x^2", "2 x^3 + x y", "x^4"] {
            let a = p(a);
            let a = if s.alpha.sign(&a) == Sign::Negative { -a } else { a };
            let h = h_witness(&a, &s).unwrap();
            assert!(s.alpha.sign(&(&h - &a)) >= Sign::Zero);
            assert!(s.beta.sign(&h) <= Sign::Zero);
        }
        assert_eq!(h_witness(&Poly2::zero(), &s).unwrap(), Poly2::zero());
        assert!(h_witness(&p("x"), &s).is_err());
    }

    #[test]
    fn specialization_kinds() {
        assert_eq!(common_specialization(&main_ideal()), Specialization::Origin);
    }

    #[test]
    fn simplicity_and_gap() {
        let s = main_ideal();
        let charts = simplicity_check(&s).unwrap();
        assert_eq!(charts.len(), 3);
        assert!(charts[2].maximal);
        let caps = OracleCaps { degree: 3, coeff: 1, support: 2 };
        let gap = gap_dimension_check(&s, caps).unwrap();
        assert!(gap.values_checked >= 2);
        let id = threshold_identification_check(&s, caps).unwrap();
        assert!(id.discrepancies.is_empty(), "{:?}", id.discrepancies);
    }

    #[test]
    fn cusp_pair_threshold() {
        let a = branch(Sign::Positive, &[(rat(3, 2), 1)], Side::Above);
        let b = branch(Sign::Positive, &[(rat(3, 2), -1)], Side::Above);
        let s = separating_ideal(&a, &b, 64).unwrap();
        assert_eq!(s.generators, vec![p("y"), p("x^2")]);
        let o = signchanger_oracle(&a, &b, OracleCaps::default()).unwrap();
        assert_eq!(o.min_value, s.threshold);
    }

    #[test]
    fn satellite_chain_threshold() {
        let a = branch(Sign::Positive, &[(rat(3, 2), 1), (int(2), 1)], Side::Above);
        let b = branch(Sign::Positive, &[(rat(3, 2), 1), (rat(5, 2), 1)], Side::Below);
        let s = separating_ideal(&a, &b, 64).unwrap();
        assert_eq!(s.threshold, ExtValue::rational(rat(7, 2)));
        assert_eq!(s.generators.len(), 3);
        // y^2 - x^3 - x^2 y changes sign with value 7/2
        let g = p("y^2 - x^3 - x^2 y");
        assert!(a.sign(&g) > Sign::Zero && b.sign(&g) < Sign::Zero);
        assert!(member(&g, &s));
        let o = signchanger_oracle(&a, &b, OracleCaps::default()).unwrap();
        assert_eq!(o.min_value, s.threshold);
        assert!(simplicity_check(&s).is_ok());
        let id = threshold_identification_check(&s, OracleCaps { degree: 4, coeff: 1, support: 2 }).unwrap();
        assert!(id.discrepancies.is_empty(), "{:?}", id.discrepancies);
        let h = h_witness(&g, &s).unwrap();
        assert!(a.sign(&(&h - &g)) >= Sign::Zero && b.sign(&h) <= Sign::Zero);
    }
}
