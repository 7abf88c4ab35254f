//! The oriented graph on `V = {(x, y) : 1 <= x < y}` with edges
//! `(x, y) -> (y, a*y + x)` for `a >= 1`, the map
//! `ell(x, y) = log y / log x` (`1` when `x = 1`), and trail construction.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::cf::{format_ratio, int_to_json, parse_ratio, PartialQuotients};
use crate::error::{Error, Result};
use crate::exact::{approx_pow_ratio, cmp_powers, decimal_digits, least_satisfying, log2_approx};
use crate::{BigRational, Expansion};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vertex {
    x: BigUint,
    y: BigUint,
}

impl Vertex {
    pub fn new(x: BigUint, y: BigUint) -> Result<Self> {
        if x.is_zero() || x >= y {
            return Err(Error::InvalidArgument(format!(
                "({x}, {y}) is not a vertex: need 1 <= x < y"
            )));
        }
        Ok(Vertex { x, y })
    }

    pub fn from_u64(x: u64, y: u64) -> Result<Self> {
        Self::new(BigUint::from(x), BigUint::from(y))
    }

    pub fn x(&self) -> &BigUint {
        &self.x
    }

    pub fn y(&self) -> &BigUint {
        &self.y
    }

    pub fn is_coprime(&self) -> bool {
        self.x.gcd(&self.y).is_one()
    }

    /// `ell(v)` for display only.
    pub fn ell_approx(&self) -> f64 {
        if self.x.is_one() {
            1.0
        } else {
            log2_approx(&self.y) / log2_approx(&self.x)
        }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// The vertex reached from `v` along the edge labelled `a`.
pub fn edge(v: &Vertex, a: &BigUint) -> Result<Vertex> {
    if a.is_zero() {
        return Err(Error::InvalidArgument("edge label must be >= 1".into()));
    }
    Ok(Vertex {
        x: v.y.clone(),
        y: a * &v.y + &v.x,
    })
}

/// The unique predecessor of `v` and the connecting label, if any.
pub fn predecessor(v: &Vertex) -> Option<(Vertex, BigUint)> {
    let (a, rem) = v.y.div_rem(&v.x);
    if rem.is_zero() {
        return None;
    }
    Some((
        Vertex {
            x: rem,
            y: v.x.clone(),
        },
        a,
    ))
}

/// Result of walking predecessors back as far as they exist.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decoded {
    pub root: Vertex,
    /// Labels from `root` forward to the decoded vertex.
    pub labels: Vec<BigUint>,
}

pub fn decode_to_root(v: &Vertex) -> Decoded {
    let mut cur = v.clone();
    let mut labels = Vec::new();
    while let Some((prev, a)) = predecessor(&cur) {
        labels.push(a);
        cur = prev;
    }
    labels.reverse();
    Decoded { root: cur, labels }
}

/// A rational target `t >= 1` or infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RationalTarget {
    Finite(BigRational),
    Infinite,
}

impl RationalTarget {
    pub fn finite(t: BigRational) -> Result<Self> {
        if t < BigRational::one() {
            return Err(Error::InvalidArgument(format!("target {t} must be >= 1")));
        }
        Ok(RationalTarget::Finite(t))
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "\u{221e}" => Ok(RationalTarget::Infinite),
            other => Self::finite(parse_ratio(other)?),
        }
    }

    pub fn as_finite(&self) -> Option<&BigRational> {
        match self {
            RationalTarget::Finite(t) => Some(t),
            RationalTarget::Infinite => None,
        }
    }
}

impl fmt::Display for RationalTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RationalTarget::Finite(t) => f.write_str(&format_ratio(t)),
            RationalTarget::Infinite => f.write_str("inf"),
        }
    }
}

fn exponent(v: &BigInt) -> Result<u64> {
    v.to_u64()
        .ok_or_else(|| Error::InvalidArgument(format!("exponent {v} out of range")))
}

/// Exact comparison of `ell(v)` with a rational, via `y^q` vs `x^p` for `r = p/q`.
pub fn ell_compare(v: &Vertex, r: &BigRational) -> Result<Ordering> {
    if v.x.is_one() {
        return Ok(BigRational::one().cmp(r));
    }
    if !r.is_positive() {
        return Ok(Ordering::Greater);
    }
    let p = exponent(r.numer())?;
    let q = exponent(r.denom())?;
    Ok(cmp_powers(&v.y, q, &v.x, p))
}

fn split_eps(eps: &BigRational) -> Result<(u64, u64)> {
    if !eps.is_positive() || eps >= &BigRational::one() {
        return Err(Error::InvalidArgument(format!(
            "eps = {eps} must lie in (0, 1)"
        )));
    }
    Ok((exponent(eps.numer())?, exponent(eps.denom())?))
}

/// Whether `y > (10/eps)^(1/eps)`, decided as `r^s * y^r > (10 s)^s` for `eps = r/s`.
pub fn targeting_precondition(y: &BigUint, eps: &BigRational) -> Result<bool> {
    let (r, s) = split_eps(eps)?;
    let ten_s = BigUint::from(10u64) * s;
    if r == 1 {
        return Ok(cmp_powers(y, 1, &ten_s, s) == Ordering::Greater);
    }
    let s32 =
        u32::try_from(s).map_err(|_| Error::InvalidArgument("eps denominator too large".into()))?;
    let r32 =
        u32::try_from(r).map_err(|_| Error::InvalidArgument("eps numerator too large".into()))?;
    Ok(BigUint::from(r).pow(s32) * y.pow(r32) > ten_s.pow(s32))
}

/// Least `y` satisfying [`targeting_precondition`] for `eps`.
pub fn min_admissible_y(eps: &BigRational) -> Result<BigUint> {
    let (r, s) = split_eps(eps)?;
    let s32 =
        u32::try_from(s).map_err(|_| Error::InvalidArgument("eps denominator too large".into()))?;
    let bound = (BigUint::from(10u64) * s).pow(s32);
    if r == 1 {
        return Ok(bound + 1u32);
    }
    let guess = approx_pow_ratio(&(BigUint::from(10u64) * s), s, r)
        / BigUint::from(r).pow(s32 / r as u32).max(BigUint::one());
    let mut err = None;
    let y = least_satisfying(guess, BigUint::one(), |y| {
        match targeting_precondition(y, eps) {
            Ok(b) => b,
            Err(e) => {
                err = Some(e);
                true
            }
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(y),
    }
}

/// One application of the targeting step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TargetStep {
    pub label: BigUint,
    pub vertex: Vertex,
}

/// Smallest label `a >= 1` with `ell(edge(v, a)) >= t`, i.e.
/// `(a*y + x)^q >= y^p` for `t = p/q`; this is `ceil(y^(t-1) - x/y)`.
pub fn minimal_label(v: &Vertex, t: &BigRational) -> Result<BigUint> {
    let p = exponent(t.numer())?;
    let q = exponent(t.denom())?;
    let root = approx_pow_ratio(&v.y, p, q);
    let guess = if root > v.x {
        (root - &v.x).div_ceil(&v.y)
    } else {
        BigUint::one()
    };
    Ok(least_satisfying(guess, BigUint::one(), |a| {
        cmp_powers(&(a * &v.y + &v.x), q, &v.y, p) != Ordering::Less
    }))
}

/// Steps from `v` to a successor with `ell` in `[t, t + eps)`.
///
/// Fails with [`Error::PreconditionViolated`] unless `y > (10/eps)^(1/eps)`.
/// Both ends of the returned certificate are re-checked exactly.
pub fn target_step(v: &Vertex, t: &BigRational, eps: &BigRational) -> Result<TargetStep> {
    if t < &BigRational::one() {
        return Err(Error::InvalidArgument(format!("target {t} must be >= 1")));
    }
    if !targeting_precondition(&v.y, eps)? {
        return Err(Error::PreconditionViolated {
            y: v.y.to_string(),
            eps: format_ratio(eps),
            min_y: min_admissible_y(eps)?.to_string(),
        });
    }
    let label = minimal_label(v, t)?;
    let vertex = edge(v, &label)?;
    let upper = t + eps;
    if ell_compare(&vertex, t)? == Ordering::Less || ell_compare(&vertex, &upper)? != Ordering::Less
    {
        return Err(Error::Domain(format!(
            "targeting certificate failed at {v} for [{}, {})",
            format_ratio(t),
            format_ratio(&upper)
        )));
    }
    Ok(TargetStep { label, vertex })
}

/// The unique `m >= 2` with `(10m)^m < y <= (10m + 10)^(m + 1)`, searched
/// upward from `from` (pass 2, or the previous index for increasing `y`).
pub fn schedule_index(y: &BigUint, from: u64) -> Result<u64> {
    let tile = |m: u64| BigUint::from(10 * m);
    let mut m = from.max(2);
    if cmp_powers(&tile(m), m, y, 1) != Ordering::Less {
        if m == 2 {
            return Err(Error::InvalidArgument(format!("y = {y} must exceed 400")));
        }
        return schedule_index(y, 2);
    }
    while cmp_powers(&tile(m + 1), m + 1, y, 1) == Ordering::Less {
        m += 1;
    }
    Ok(m)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrailStep {
    pub label: BigUint,
    pub vertex: Vertex,
}

/// Exact claim `ell(steps[step].vertex)` in `[lo, hi)`; `index` is the
/// schedule index that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub step: usize,
    pub index: u64,
    pub lo: BigRational,
    pub hi: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trail {
    pub start: Vertex,
    pub steps: Vec<TrailStep>,
    pub certificates: Vec<Certificate>,
}

impl Trail {
    pub fn new(start: Vertex) -> Self {
        Trail {
            start,
            steps: Vec::new(),
            certificates: Vec::new(),
        }
    }

    pub fn last(&self) -> &Vertex {
        self.steps.last().map_or(&self.start, |s| &s.vertex)
    }

    /// Start followed by every step's vertex.
    pub fn vertices(&self) -> impl Iterator<Item = &Vertex> {
        std::iter::once(&self.start).chain(self.steps.iter().map(|s| &s.vertex))
    }

    pub fn push(&mut self, label: BigUint, vertex: Vertex) {
        self.steps.push(TrailStep { label, vertex });
    }

    /// Whether each consecutive pair is joined by its recorded edge.
    pub fn edges_valid(&self) -> bool {
        let mut prev = &self.start;
        for s in &self.steps {
            match edge(prev, &s.label) {
                Ok(v) if v == s.vertex => prev = &s.vertex,
                _ => return false,
            }
        }
        true
    }

    /// Re-checks every certificate with exact comparisons.
    pub fn certificates_hold(&self) -> Result<bool> {
        for c in &self.certificates {
            let Some(s) = self.steps.get(c.step) else {
                return Ok(false);
            };
            if ell_compare(&s.vertex, &c.lo)? == Ordering::Less
                || ell_compare(&s.vertex, &c.hi)? != Ordering::Less
            {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Trail starting at `self.steps[k - 1]` (or the start for `k = 0`).
    pub fn suffix(&self, k: usize) -> Trail {
        let start = if k == 0 {
            self.start.clone()
        } else {
            self.steps[k - 1].vertex.clone()
        };
        Trail {
            start,
            steps: self.steps[k..].to_vec(),
            certificates: self
                .certificates
                .iter()
                .filter(|c| c.step >= k)
                .map(|c| Certificate {
                    step: c.step - k,
                    ..c.clone()
                })
                .collect(),
        }
    }
}

fn check_budget(y: &BigUint, budget: u64) -> Result<()> {
    let digits = decimal_digits(y);
    if digits > budget {
        return Err(Error::ResourceLimit { digits, budget });
    }
    Ok(())
}

/// First step label of the prescribed-type construction.
pub const FIRST_LABEL: u32 = 400;

/// Trail whose `ell` values converge to `t`.
///
/// Step 0 uses the label 400. Each of the following `n` steps locates the
/// schedule index `m` of the current `y`, targets `[t + 2/m, t + 3/m)`
/// (for `t = inf`: `[m, m + 1/m)`) with `eps = 1/m`, and records the
/// certificate. Fails with [`Error::ResourceLimit`] before an integer would
/// exceed `digit_budget` decimal digits.
pub fn build_prescribed_type_trail(
    start: &Vertex,
    target: &RationalTarget,
    n: usize,
    digit_budget: u64,
) -> Result<Trail> {
    let mut trail = Trail::new(start.clone());
    let v0 = edge(start, &BigUint::from(FIRST_LABEL))?;
    trail.push(BigUint::from(FIRST_LABEL), v0);
    let mut m = 2u64;
    for _ in 0..n {
        let v = trail.last().clone();
        m = schedule_index(&v.y, m)?;
        let mr = BigRational::from_integer(BigInt::from(m));
        let eps = mr.recip();
        let (t_m, hi) = match target {
            RationalTarget::Finite(t) => (t + &eps * BigInt::from(2), t + &eps * BigInt::from(3)),
            RationalTarget::Infinite => (mr.clone(), &mr + &eps),
        };
        // ell(next) < hi bounds the digit count of the next y.
        let projected = decimal_digits(&v.y) as f64 * hi.numer().to_f64().unwrap_or(f64::MAX)
            / hi.denom().to_f64().unwrap_or(1.0);
        if projected > digit_budget as f64 {
            return Err(Error::ResourceLimit {
                digits: projected.min(u64::MAX as f64) as u64,
                budget: digit_budget,
            });
        }
        let step = target_step(&v, &t_m, &eps)?;
        check_budget(&step.vertex.y, digit_budget)?;
        trail.certificates.push(Certificate {
            step: trail.steps.len(),
            index: m,
            lo: t_m,
            hi,
        });
        trail.push(step.label, step.vertex);
    }
    Ok(trail)
}

/// Quotient expansion `[0; 1, y_r - 1, head labels..., step labels...]` whose
/// denominator pairs `(k_n, k_{n+1})`, `n >= 1`, walk the decoded root
/// `(1, y_r)` and then the trail.
pub fn trail_to_quotients(trail: &Trail) -> Result<Expansion> {
    if !trail.start.is_coprime() {
        return Err(Error::NonCoprimeStart {
            x: trail.start.x.to_string(),
            y: trail.start.y.to_string(),
        });
    }
    let decoded = decode_to_root(&trail.start);
    debug_assert!(decoded.root.x.is_one());
    let mut quotients: Vec<BigInt> = vec![BigInt::one(), BigInt::from(&decoded.root.y - 1u32)];
    quotients.extend(decoded.labels.into_iter().map(BigInt::from));
    quotients.extend(trail.steps.iter().map(|s| BigInt::from(s.label.clone())));
    PartialQuotients::new(BigInt::zero(), quotients)
}

/// Trail `v_1 -> v_2 -> ... -> v_n` with `v_j = (k_j, k_{j+1})` and labels `a_{j+2}`.
pub fn quotients_to_trail(pq: &Expansion, n: usize) -> Result<Trail> {
    if n < 1 {
        return Err(Error::InvalidArgument("need at least one vertex".into()));
    }
    let c = crate::cf::convergents(pq, n + 1)?;
    let to_u = |v: &BigInt| v.to_biguint().expect("denominators are positive");
    let mut trail = Trail::new(Vertex::new(to_u(&c.k[1]), to_u(&c.k[2]))?);
    for j in 2..=n {
        trail.push(
            to_u(&pq.get(j + 1)?),
            Vertex::new(to_u(&c.k[j]), to_u(&c.k[j + 1]))?,
        );
    }
    Ok(trail)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StepFile {
    pub a: String,
    pub v: [String; 2],
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertificateFile {
    pub m: u64,
    pub t_lo: String,
    pub t_hi: String,
    pub step: usize,
}

/// JSON trail format; big integers in steps are decimal strings.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TrailFile {
    pub start: [Value; 2],
    pub steps: Vec<StepFile>,
    pub certificates: Vec<CertificateFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<String>,
    #[serde(default, rename = "Jmax", skip_serializing_if = "Option::is_none")]
    pub jmax: Option<u64>,
}

fn parse_uint(v: &Value) -> Result<BigUint> {
    let text = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        other => return Err(Error::Parse(format!("expected integer, got {other}"))),
    };
    text.trim()
        .parse::<BigUint>()
        .map_err(|e| Error::Parse(format!("{text:?}: {e}")))
}

impl Trail {
    pub fn to_file(&self) -> TrailFile {
        TrailFile {
            start: [int_to_json(&self.start.x), int_to_json(&self.start.y)],
            steps: self
                .steps
                .iter()
                .map(|s| StepFile {
                    a: s.label.to_string(),
                    v: [s.vertex.x.to_string(), s.vertex.y.to_string()],
                })
                .collect(),
            certificates: self
                .certificates
                .iter()
                .map(|c| CertificateFile {
                    m: c.index,
                    t_lo: format_ratio(&c.lo),
                    t_hi: format_ratio(&c.hi),
                    step: c.step,
                })
                .collect(),
            t: None,
            jmax: None,
        }
    }

    pub fn from_file(file: &TrailFile) -> Result<Self> {
        let start = Vertex::new(parse_uint(&file.start[0])?, parse_uint(&file.start[1])?)?;
        let mut trail = Trail::new(start);
        for s in &file.steps {
            let v = Vertex::new(
                parse_uint(&Value::String(s.v[0].clone()))?,
                parse_uint(&Value::String(s.v[1].clone()))?,
            )?;
            trail.push(parse_uint(&Value::String(s.a.clone()))?, v);
        }
        for c in &file.certificates {
            trail.certificates.push(Certificate {
                step: c.step,
                index: c.m,
                lo: parse_ratio(&c.t_lo)?,
                hi: parse_ratio(&c.t_hi)?,
            });
        }
        Ok(trail)
    }
}

/// `ell` lower bound `t + 2/m` as a float, for display.
pub fn ratio_to_f64(r: &Ratio<BigInt>) -> f64 {
    let (n, d) = (r.numer(), r.denom());
    let shift = n.bits().max(d.bits()).saturating_sub(60);
    let n = (n >> shift).to_f64().unwrap_or(f64::NAN);
    let d = (d >> shift).to_f64().unwrap_or(f64::NAN);
    n / d
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: u64, y: u64) -> Vertex {
        Vertex::from_u64(x, y).unwrap()
    }

    fn r(p: i64, q: i64) -> BigRational {
        Ratio::new(BigInt::from(p), BigInt::from(q))
    }

    #[test]
    fn edges() {
        assert_eq!(edge(&v(1, 2), &BigUint::from(1u32)).unwrap(), v(2, 3));
        assert_eq!(edge(&v(2, 3), &BigUint::from(4u32)).unwrap(), v(3, 14));
        assert_eq!(
            edge(&v(3, 401), &BigUint::from(401u32)).unwrap(),
            v(401, 160804)
        );
        assert!(edge(&v(1, 2), &BigUint::zero()).is_err());
    }

    #[test]
    fn vertex_invariant() {
        assert!(Vertex::from_u64(2, 2).is_err());
        assert!(Vertex::from_u64(0, 2).is_err());
    }

    #[test]
    fn predecessors() {
        assert_eq!(predecessor(&v(3, 14)), Some((v(2, 3), BigUint::from(4u32))));
        assert_eq!(predecessor(&v(2, 4)), None);
        assert_eq!(predecessor(&v(1, 9)), None);
    }

    #[test]
    fn decoding() {
        let d = decode_to_root(&v(3, 14));
        assert_eq!(d.root, v(1, 2));
        assert_eq!(d.labels, vec![BigUint::from(1u32), BigUint::from(4u32)]);
        let d = decode_to_root(&v(1, 5));
        assert_eq!((d.root, d.labels.len()), (v(1, 5), 0));
        let d = decode_to_root(&v(2, 4));
        assert_eq!((d.root, d.labels.len()), (v(2, 4), 0));
    }

    #[test]
    fn ell_comparisons() {
        assert_eq!(ell_compare(&v(2, 8), &r(3, 1)).unwrap(), Ordering::Equal);
        assert_eq!(ell_compare(&v(1, 7), &r(1, 1)).unwrap(), Ordering::Equal);
        assert_eq!(ell_compare(&v(3, 27), &r(5, 2)).unwrap(), Ordering::Greater);
        assert_eq!(ell_compare(&v(4, 8), &r(3, 2)).unwrap(), Ordering::Equal);
    }

    #[test]
    fn targeting_example() {
        let step = target_step(&v(3, 401), &r(2, 1), &r(1, 2)).unwrap();
        assert_eq!(step.label, BigUint::from(401u32));
        assert_eq!(step.vertex, v(401, 160804));
    }

    #[test]
    fn targeting_t_one_uses_label_one() {
        let step = target_step(&v(5, 1000), &r(1, 1), &r(1, 2)).unwrap();
        assert_eq!(step.label, BigUint::one());
    }

    #[test]
    fn targeting_precondition_reports_bound() {
        match target_step(&v(3, 400), &r(2, 1), &r(1, 2)) {
            Err(Error::PreconditionViolated { min_y, .. }) => assert_eq!(min_y, "401"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn admissible_bounds() {
        assert_eq!(min_admissible_y(&r(1, 2)).unwrap(), BigUint::from(401u32));
        assert_eq!(
            min_admissible_y(&r(1, 4)).unwrap(),
            BigUint::from(2_560_001u32)
        );
        // eps = 2/3: 8 * y^2 > 30^3 = 27000 -> y^2 > 3375 -> y >= 59.
        assert_eq!(min_admissible_y(&r(2, 3)).unwrap(), BigUint::from(59u32));
        assert!(targeting_precondition(&BigUint::from(59u32), &r(2, 3)).unwrap());
        assert!(!targeting_precondition(&BigUint::from(58u32), &r(2, 3)).unwrap());
    }

    #[test]
    fn schedule_tiles() {
        assert_eq!(schedule_index(&BigUint::from(801u32), 2).unwrap(), 2);
        assert_eq!(schedule_index(&BigUint::from(27000u32), 2).unwrap(), 2);
        assert_eq!(schedule_index(&BigUint::from(27001u32), 2).unwrap(), 3);
        assert!(schedule_index(&BigUint::from(400u32), 2).is_err());
    }

    #[test]
    fn first_steps_of_prescribed_trail() {
        let t =
            build_prescribed_type_trail(&v(1, 2), &RationalTarget::parse("2").unwrap(), 1, 1000)
                .unwrap();
        assert_eq!(t.steps[0].vertex, v(2, 801));
        assert_eq!(t.certificates[0].index, 2);
        assert_eq!(t.certificates[0].lo, r(3, 1));
        assert_eq!(t.certificates[0].hi, r(7, 2));
        assert!(t.certificates_hold().unwrap());
    }

    #[test]
    fn digit_budget_is_enforced() {
        let err =
            build_prescribed_type_trail(&v(1, 2), &RationalTarget::Infinite, 10, 50).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit { .. }));
    }

    #[test]
    fn quotient_trail_correspondence() {
        let pq =
            PartialQuotients::new(BigInt::zero(), [1, 1, 1, 4].map(BigInt::from).to_vec()).unwrap();
        let trail = quotients_to_trail(&pq, 3).unwrap();
        let verts: Vec<_> = trail.vertices().cloned().collect();
        assert_eq!(verts, vec![v(1, 2), v(2, 3), v(3, 14)]);
        let back = trail_to_quotients(&trail).unwrap();
        assert_eq!(back.take(5).unwrap(), pq.take(5).unwrap());

        let single = trail_to_quotients(&Trail::new(v(1, 2))).unwrap();
        assert_eq!(
            single.take(3).unwrap(),
            [0, 1, 1].map(BigInt::from).to_vec()
        );
        assert!(matches!(
            trail_to_quotients(&Trail::new(v(2, 4))),
            Err(Error::NonCoprimeStart { .. })
        ));
    }

    #[test]
    fn trail_json_round_trip() {
        let t =
            build_prescribed_type_trail(&v(1, 2), &RationalTarget::parse("3/2").unwrap(), 3, 1000)
                .unwrap();
        let back = Trail::from_file(&t.to_file()).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn targets_parse() {
        assert_eq!(
            RationalTarget::parse("inf").unwrap(),
            RationalTarget::Infinite
        );
        assert!(RationalTarget::parse("1/2").is_err());
        assert_eq!(RationalTarget::parse("5/2").unwrap().to_string(), "5/2");
    }
}
