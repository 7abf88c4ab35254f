//! Theta sequences `theta_n = log k_{n+1} / log k_n`, windowed type
//! estimates and nearest-integer-distance oracles.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::cf::{convergents, format_ratio, ConvergentSeq, Convergents};
use crate::error::{Error, Result};
use crate::exact::{cmp_powers, log2_approx, scaled_root_floor};
use crate::scalar::CfInt;
use crate::{BigInterval, BigRational, Expansion};

/// Refinement cap for decisions that depend on the value of an expansion.
pub const MAX_REFINEMENTS: usize = 200_000;

#[derive(Clone, Debug, PartialEq)]
pub struct ThetaEntry {
    pub n: usize,
    pub k: BigUint,
    pub k_next: BigUint,
    /// Display value, within `2^-30` of the true ratio.
    pub value: f64,
}

impl ThetaEntry {
    /// Exact `theta_n >= r`, i.e. `k_{n+1}^q >= k_n^p` for `r = p/q`.
    pub fn ge_rational(&self, r: &BigRational) -> bool {
        if !r.is_positive() {
            return true;
        }
        match (r.numer().to_u64(), r.denom().to_u64()) {
            (Some(p), Some(q)) => cmp_powers(&self.k_next, q, &self.k, p) != Ordering::Less,
            _ => panic!("threshold {r} has an oversized numerator or denominator"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct ThetaSeq {
    pub entries: Vec<ThetaEntry>,
}

impl ThetaSeq {
    pub fn values(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.value).collect()
    }

    pub fn get(&self, n: usize) -> Option<&ThetaEntry> {
        self.entries.iter().find(|e| e.n == n)
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("n,theta\n");
        for e in &self.entries {
            s.push_str(&format!("{},{}\n", e.n, e.value));
        }
        s
    }
}

fn to_biguint<T: CfInt>(v: &T) -> Result<BigUint> {
    v.to_bigint()
        .to_biguint()
        .ok_or_else(|| Error::Domain(format!("negative denominator {v}")))
}

/// `theta_n` for every `n >= n0` with `k_{n+1}` present in `ks`.
pub fn theta_sequence<T: CfInt>(ks: &ConvergentSeq<T>, n0: usize) -> Result<ThetaSeq> {
    if n0 >= ks.len() {
        return Err(Error::InsufficientPrefix {
            needed: n0 + 1,
            available: ks.len(),
        });
    }
    let mut entries = Vec::new();
    for n in n0..ks.len().saturating_sub(1) {
        let k = to_biguint(&ks.k[n])?;
        if k < BigUint::from(2u32) {
            return Err(Error::Domain(format!("theta_{n} undefined: k_{n} = {k}")));
        }
        let k_next = to_biguint(&ks.k[n + 1])?;
        let value = log2_approx(&k_next) / log2_approx(&k);
        entries.push(ThetaEntry {
            n,
            k,
            k_next,
            value,
        });
    }
    Ok(ThetaSeq { entries })
}

#[derive(Clone, Debug, PartialEq)]
pub struct TypeEstimate {
    /// `max theta_n` over the window; display only.
    pub value: f64,
    pub horizon: usize,
    pub window: usize,
    /// Index where the maximum is attained.
    pub argmax: usize,
    pub method: &'static str,
    pub thetas: ThetaSeq,
}

impl TypeEstimate {
    /// Exact `max theta_n >= r`.
    pub fn at_least(&self, r: &BigRational) -> bool {
        self.thetas.entries.iter().any(|e| e.ge_rational(r))
    }

    /// Exact `max theta_n < r`.
    pub fn below(&self, r: &BigRational) -> bool {
        !self.at_least(r)
    }
}

/// `ceil(N / 2)`, at least 1.
pub fn default_window(horizon: usize) -> usize {
    horizon.div_ceil(2).max(1)
}

/// `max { theta_n : W <= n <= N }`; needs `k_{N+1}`.
pub fn estimate_type(pq: &Expansion, horizon: usize, window: usize) -> Result<TypeEstimate> {
    if window < 1 || window > horizon {
        return Err(Error::InvalidArgument(format!(
            "need N >= W >= 1, got N = {horizon}, W = {window}"
        )));
    }
    let ks = convergents(pq, horizon + 1)?;
    let thetas = theta_sequence(&ks, window)?;
    let (argmax, value) = thetas.entries.iter().map(|e| (e.n, e.value)).fold(
        (window, f64::NEG_INFINITY),
        |acc, x| if x.1 > acc.1 { x } else { acc },
    );
    Ok(TypeEstimate {
        value,
        horizon,
        window,
        argmax,
        method: "window-max",
        thetas,
    })
}

fn ratio(n: BigInt, d: BigInt) -> BigRational {
    BigRational::new(n, d)
}

/// Shrinking open interval around the value of an expansion, bounded by
/// consecutive convergents.
pub struct Enclosure<'a> {
    it: Convergents<'a, BigInt>,
    prev: (BigInt, BigInt),
    cur: (BigInt, BigInt),
    lo: BigRational,
    hi: BigRational,
}

impl<'a> Enclosure<'a> {
    pub fn new(pq: &'a Expansion) -> Result<Self> {
        let mut it = Convergents::new(pq);
        let prev = it.next_pair()?;
        let cur = it.next_pair()?;
        let mut e = Enclosure {
            it,
            prev,
            cur,
            lo: BigRational::zero(),
            hi: BigRational::zero(),
        };
        e.update();
        Ok(e)
    }

    fn update(&mut self) {
        let a = ratio(self.prev.0.clone(), self.prev.1.clone());
        let b = ratio(self.cur.0.clone(), self.cur.1.clone());
        if a < b {
            (self.lo, self.hi) = (a, b);
        } else {
            (self.lo, self.hi) = (b, a);
        }
    }

    /// Consumes one more quotient.
    pub fn refine(&mut self) -> Result<()> {
        if self.it.index() > MAX_REFINEMENTS {
            return Err(Error::Domain(format!(
                "comparison undecided after {MAX_REFINEMENTS} quotients"
            )));
        }
        let next = self.it.next_pair()?;
        self.prev = std::mem::replace(&mut self.cur, next);
        self.update();
        Ok(())
    }

    /// `1 / (k_n k_{n+1})`.
    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn bounds(&self) -> (&BigRational, &BigRational) {
        (&self.lo, &self.hi)
    }

    pub fn refine_below(&mut self, width: &BigRational) -> Result<()> {
        while &self.width() >= width {
            self.refine()?;
        }
        Ok(())
    }

    /// `‖q x‖` over the enclosure, if the nearest integer is the same
    /// throughout. Endpoints are open.
    pub fn nearest_dist(&self, q: &BigInt) -> Option<BigInterval> {
        let a = &self.lo * q;
        let b = &self.hi * q;
        let halves = (&a * BigInt::from(2)).floor().to_integer();
        let top = ratio(&halves + 1, BigInt::from(2));
        if b > top {
            return None;
        }
        let (f, odd) = halves.div_mod_floor(&BigInt::from(2));
        let interval = if odd.is_zero() {
            let f = BigRational::from_integer(f);
            BigInterval {
                lo: a - &f,
                hi: b - f,
            }
        } else {
            let f1 = BigRational::from_integer(f + 1);
            BigInterval {
                lo: &f1 - b,
                hi: f1 - a,
            }
        };
        Some(interval)
    }

    /// Nearest integer to `q x`, with the signed offset `q x - h` enclosed.
    pub fn nearest_int(&self, q: &BigInt) -> Option<(BigInt, BigInterval)> {
        let a = &self.lo * q;
        let b = &self.hi * q;
        let h = (&a + ratio(BigInt::one(), BigInt::from(2)))
            .floor()
            .to_integer();
        let hr = BigRational::from_integer(h.clone());
        let half = ratio(BigInt::one(), BigInt::from(2));
        if b > &hr + &half {
            return None;
        }
        Some((
            h,
            BigInterval {
                lo: a - &hr,
                hi: b - hr,
            },
        ))
    }

    /// Refines until `decide` returns an answer for the distance interval of `q x`.
    pub fn decide_dist<F>(&mut self, q: &BigInt, mut decide: F) -> Result<bool>
    where
        F: FnMut(&BigInterval) -> Option<bool>,
    {
        loop {
            if let Some(d) = self.nearest_dist(q) {
                if let Some(ans) = decide(&d) {
                    return Ok(ans);
                }
            }
            self.refine()?;
        }
    }
}

/// `‖q alpha‖` enclosed in an open rational interval of width below `precision`.
pub fn nearest_int_dist(
    pq: &Expansion,
    q: &BigInt,
    precision: &BigRational,
) -> Result<BigInterval> {
    if !q.is_positive() || !precision.is_positive() {
        return Err(Error::InvalidArgument(
            "q and precision must be positive".into(),
        ));
    }
    let mut enc = Enclosure::new(pq)?;
    loop {
        if let Some(d) = enc.nearest_dist(q) {
            if &d.width() < precision {
                return Ok(d);
            }
        }
        enc.refine()?;
    }
}

/// Every `k <= bound` with `k ‖k alpha‖ < 1/2`, decided exactly.
pub fn best_approx_denominators(pq: &Expansion, bound: u64) -> Result<Vec<u64>> {
    let mut enc = Enclosure::new(pq)?;
    let b = BigInt::from(bound.max(1));
    enc.refine_below(&ratio(BigInt::one(), &b * &b * BigInt::from(64)))?;
    let half = ratio(BigInt::one(), BigInt::from(2));
    let mut out = Vec::new();
    for k in 1..=bound {
        let kb = BigInt::from(k);
        let hit = enc.decide_dist(&kb, |d| {
            if &d.hi * &kb <= half {
                Some(true)
            } else if &d.lo * &kb >= half {
                Some(false)
            } else {
                None
            }
        })?;
        if hit {
            out.push(k);
        }
    }
    Ok(out)
}

/// Exact check `1/2 < k_{n+1} ‖k_n alpha‖ < 1`.
pub fn check_kn_nest(pq: &Expansion, n: usize) -> Result<bool> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("n = {n} must be >= 2")));
    }
    let c = convergents(pq, n + 1)?;
    let (kn, kn1) = (c.k[n].clone(), c.k[n + 1].clone());
    let half = ratio(BigInt::one(), BigInt::from(2));
    let one = BigRational::one();
    let mut enc = Enclosure::new(pq)?;
    enc.decide_dist(&kn, |d| {
        let (lo, hi) = (&d.lo * &kn1, &d.hi * &kn1);
        if lo >= half && hi <= one {
            Some(true)
        } else if hi <= half || lo >= one {
            Some(false)
        } else {
            None
        }
    })
}

/// Pair `(h, k)` with `|alpha - h/k| < k^(-t-1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TauSolution {
    pub h: String,
    pub k: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TauReport {
    pub t: String,
    pub bound: u64,
    pub tau1_count: usize,
    pub tau1_solutions: Vec<TauSolution>,
    /// Enclosure of `min_{k <= Q} k^t ‖k alpha‖` as `"p/q"` strings.
    pub min_scaled_dist: [String; 2],
    pub min_scaled_dist_k: u64,
    pub horizon: usize,
    pub window: usize,
    pub estimate: f64,
}

const ROOT_FRAC_BITS: u64 = 64;

/// Decides `|z|^q k^p < 1` for `z` in the open interval `(lo, hi)`.
fn tau1_decide(lo: &BigRational, hi: &BigRational, k: &BigInt, p: u32, q: u32) -> Option<bool> {
    let (m_lo, m_hi) = if lo.is_negative() && hi.is_positive() {
        (BigRational::zero(), lo.abs().max(hi.abs()))
    } else {
        let (a, b) = (lo.abs(), hi.abs());
        if a < b {
            (a, b)
        } else {
            (b, a)
        }
    };
    let kp = BigRational::from_integer(k.pow(p));
    let one = BigRational::one();
    if num_traits::pow(m_hi, q as usize) * &kp <= one {
        Some(true)
    } else if num_traits::pow(m_lo, q as usize) * &kp >= one {
        Some(false)
    } else {
        None
    }
}

/// Consistency report for the three definitions of the type at threshold `t`.
pub fn tau_defs_report(
    pq: &Expansion,
    t: &BigRational,
    bound: u64,
    horizon: usize,
) -> Result<TauReport> {
    if !t.is_positive() {
        return Err(Error::InvalidArgument(format!("t = {t} must be positive")));
    }
    let p = t
        .numer()
        .to_u32()
        .ok_or_else(|| Error::InvalidArgument("t numerator too large".into()))?;
    let q = t
        .denom()
        .to_u32()
        .ok_or_else(|| Error::InvalidArgument("t denominator too large".into()))?;
    let mut enc = Enclosure::new(pq)?;
    let b = BigInt::from(bound.max(1));
    enc.refine_below(&ratio(BigInt::one(), &b * &b * BigInt::from(64)))?;

    let mut solutions = Vec::new();
    let mut min: Option<(BigRational, BigRational, u64)> = None;
    let scale = BigInt::one() << ROOT_FRAC_BITS as usize;
    for k in 1..=bound {
        let kb = BigInt::from(k);
        // |k alpha - h| < k^-t <= 1 leaves only floor(k alpha) and its successor.
        let base = loop {
            let a = (enc.bounds().0 * &kb).floor().to_integer();
            if a == (enc.bounds().1 * &kb).floor().to_integer() {
                break a;
            }
            enc.refine()?;
        };
        for h in [base.clone(), &base + 1] {
            let hit = loop {
                let (lo, hi) = enc.bounds();
                let zl = lo * &kb - BigRational::from_integer(h.clone());
                let zh = hi * &kb - BigRational::from_integer(h.clone());
                match tau1_decide(&zl, &zh, &kb, p, q) {
                    Some(v) => break v,
                    None => enc.refine()?,
                }
            };
            if hit {
                solutions.push(TauSolution {
                    h: h.to_string(),
                    k,
                });
            }
        }

        let d = loop {
            match enc.nearest_dist(&kb) {
                Some(d) => break d,
                None => enc.refine()?,
            }
        };
        let root = scaled_root_floor(&BigUint::from(k), p, q, ROOT_FRAC_BITS);
        let root = BigInt::from_biguint(Sign::Plus, root);
        let lo = d.lo * ratio(root.clone(), scale.clone());
        let hi = d.hi * ratio(root + 1, scale.clone());
        min = match min {
            Some((mlo, mhi, mk)) => {
                let nk = if hi < mhi { k } else { mk };
                Some((mlo.min(lo), mhi.min(hi), nk))
            }
            None => Some((lo, hi, k)),
        };
    }
    let (mlo, mhi, mk) = min.unwrap_or((BigRational::zero(), BigRational::zero(), 0));
    let window = default_window(horizon);
    let est = estimate_type(pq, horizon, window)?;
    Ok(TauReport {
        t: format_ratio(t),
        bound,
        tau1_count: solutions.len(),
        tau1_solutions: solutions,
        min_scaled_dist: [format_ratio(&mlo), format_ratio(&mhi)],
        min_scaled_dist_k: mk,
        horizon,
        window,
        estimate: est.value,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct EstimateReport {
    pub value: f64,
    pub horizon: usize,
    pub window: usize,
    pub argmax: usize,
    pub method: String,
    pub thetas: Vec<(usize, f64)>,
}

impl From<&TypeEstimate> for EstimateReport {
    fn from(e: &TypeEstimate) -> Self {
        EstimateReport {
            value: e.value,
            horizon: e.horizon,
            window: e.window,
            argmax: e.argmax,
            method: e.method.to_string(),
            thetas: e.thetas.entries.iter().map(|t| (t.n, t.value)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cf::PartialQuotients;

    fn seq(ks: &[u64]) -> ConvergentSeq<BigInt> {
        ConvergentSeq {
            h: ks.iter().map(|_| BigInt::zero()).collect(),
            k: ks.iter().map(|&k| BigInt::from(k)).collect(),
        }
    }

    fn r(p: i64, q: i64) -> BigRational {
        ratio(BigInt::from(p), BigInt::from(q))
    }

    #[test]
    fn squaring_thetas() {
        let th = theta_sequence(&seq(&[2, 4, 16, 256]), 0).unwrap();
        assert_eq!(th.values(), vec![2.0, 2.0, 2.0]);
        assert!(th.entries.iter().all(|e| e.ge_rational(&r(2, 1))));
        assert!(!th.entries[0].ge_rational(&r(2_000_001, 1_000_000)));
    }

    #[test]
    fn boundary_threshold() {
        let th = theta_sequence(&seq(&[4, 8]), 0).unwrap();
        assert!(th.entries[0].ge_rational(&r(3, 2)));
    }

    #[test]
    fn k_one_is_a_domain_error() {
        assert!(matches!(
            theta_sequence(&seq(&[1, 2]), 0),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn windows() {
        assert_eq!(default_window(30), 15);
        assert_eq!(default_window(11), 6);
        assert_eq!(default_window(1), 1);
        let g = PartialQuotients::golden_ratio();
        assert!(estimate_type(&g, 5, 6).is_err());
        assert!(estimate_type(&g, 5, 0).is_err());
    }

    #[test]
    fn sqrt2_minus_one_distance() {
        let pq = PartialQuotients::constant(BigInt::zero(), BigInt::from(2)).unwrap();
        let d = nearest_int_dist(&pq, &BigInt::one(), &r(1, 1_000_000)).unwrap();
        assert!(d.lo > BigRational::zero() && d.hi < r(1, 2));
        assert!(d.lo < r(4142136, 10_000_000) && d.hi > r(4142135, 10_000_000));
    }

    #[test]
    fn kn_nest_boundary() {
        let g = PartialQuotients::golden_ratio();
        assert!(check_kn_nest(&g, 2).unwrap());
        assert!(check_kn_nest(&g, 1).is_err());
    }

    #[test]
    fn finite_prefix_runs_out() {
        let pq =
            PartialQuotients::new(BigInt::zero(), vec![BigInt::from(2), BigInt::from(3)]).unwrap();
        let err = nearest_int_dist(&pq, &BigInt::one(), &r(1, 1_000_000_000)).unwrap_err();
        assert!(matches!(err, Error::InsufficientPrefix { .. }));
    }
}
