//! The action `alpha -> (a alpha + b) / (c alpha + d)` of nonsingular integer
//! matrices on continued-fraction expansions.
//!
//! [`HomographicStream`] keeps a state matrix `[[A, B], [C, D]]` describing the
//! output remainder as a function of the unread input tail `z > 1`. Reading
//! a quotient `q` substitutes `z -> q + 1/z`; a quotient `e` is written once
//! the image of `(1, inf)` lies in `[e, e + 1]`, after which the state becomes
//! `1 / (f - e)`.

use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde_json::Value;

use crate::cf::{int_to_json, json_to_int, PartialQuotients};
use crate::error::{Error, Result};
use crate::metrics::{default_window, estimate_type, EstimateReport};
use crate::scalar::CfInt;
use crate::{BigRational, Expansion};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MoebiusMatrix<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
}

impl<T: CfInt> MoebiusMatrix<T> {
    pub fn new(a: T, b: T, c: T, d: T) -> Result<Self> {
        let m = MoebiusMatrix { a, b, c, d };
        if m.det_big().is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(m)
    }

    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        let conv = |v: i64| T::from_i64(v).ok_or(Error::Overflow("conversion"));
        Self::new(conv(a)?, conv(b)?, conv(c)?, conv(d)?)
    }

    pub fn identity() -> Self {
        MoebiusMatrix {
            a: T::one(),
            b: T::zero(),
            c: T::zero(),
            d: T::one(),
        }
    }

    /// `alpha -> alpha + n`.
    pub fn translation(n: T) -> Self {
        MoebiusMatrix {
            a: T::one(),
            b: n,
            c: T::zero(),
            d: T::one(),
        }
    }

    /// `alpha -> 1 / alpha`.
    pub fn inversion() -> Self {
        MoebiusMatrix {
            a: T::zero(),
            b: T::one(),
            c: T::one(),
            d: T::zero(),
        }
    }

    /// `alpha -> -alpha`.
    pub fn negation() -> Self {
        MoebiusMatrix {
            a: -T::one(),
            b: T::zero(),
            c: T::zero(),
            d: T::one(),
        }
    }

    /// `alpha -> (u / v) alpha`.
    pub fn scaling(u: T, v: T) -> Result<Self> {
        Self::new(u, T::zero(), T::zero(), v)
    }

    fn big(&self) -> [BigInt; 4] {
        [
            self.a.to_bigint(),
            self.b.to_bigint(),
            self.c.to_bigint(),
            self.d.to_bigint(),
        ]
    }

    fn from_big(m: [BigInt; 4]) -> Result<Self> {
        let conv = |v: &BigInt| T::from_bigint(v).ok_or(Error::Overflow("matrix entry"));
        Self::new(conv(&m[0])?, conv(&m[1])?, conv(&m[2])?, conv(&m[3])?)
    }

    fn det_big(&self) -> BigInt {
        let [a, b, c, d] = self.big();
        a * d - b * c
    }

    pub fn det(&self) -> Result<T> {
        T::from_bigint(&self.det_big()).ok_or(Error::Overflow("determinant"))
    }

    /// `self * other`, so that `(g * h)(alpha) = g(h(alpha))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        let [a, b, c, d] = self.big();
        let [e, f, g, h] = other.big();
        Self::from_big([
            &a * &e + &b * &g,
            &a * &f + &b * &h,
            &c * &e + &d * &g,
            &c * &f + &d * &h,
        ])
    }

    /// Adjugate `[[d, -b], [-c, a]]`: the inverse with the determinant cleared.
    pub fn adjugate(&self) -> Self {
        MoebiusMatrix {
            a: self.d.clone(),
            b: -self.b.clone(),
            c: -self.c.clone(),
            d: self.a.clone(),
        }
    }

    /// Whether the matrix is `z * I`, which acts trivially.
    pub fn is_scalar(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.a == self.d
    }

    /// Image of a rational point, `None` at the pole.
    pub fn apply_rational(&self, x: &BigRational) -> Option<BigRational> {
        let [a, b, c, d] = self.big();
        let num = &a * x.numer() + &b * x.denom();
        let den = &c * x.numer() + &d * x.denom();
        if den.is_zero() {
            None
        } else {
            Some(Ratio::new(num, den))
        }
    }

    pub fn to_json(&self) -> Value {
        Value::Array(vec![
            Value::Array(vec![int_to_json(&self.a), int_to_json(&self.b)]),
            Value::Array(vec![int_to_json(&self.c), int_to_json(&self.d)]),
        ])
    }

    /// Parses `[[a, b], [c, d]]`.
    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = || Error::Parse(format!("expected [[a,b],[c,d]], got {v}"));
        let rows = v.as_array().filter(|r| r.len() == 2).ok_or_else(bad)?;
        let mut out = Vec::with_capacity(4);
        for row in rows {
            let row = row.as_array().filter(|r| r.len() == 2).ok_or_else(bad)?;
            for e in row {
                out.push(json_to_int::<T>(e)?);
            }
        }
        let mut it = out.into_iter();
        let mut next = || it.next().expect("four entries");
        Self::new(next(), next(), next(), next())
    }
}

impl MoebiusMatrix<BigInt> {
    /// Clears denominators of a rational matrix by their lcm.
    pub fn from_rationals(
        a: &BigRational,
        b: &BigRational,
        c: &BigRational,
        d: &BigRational,
    ) -> Result<Self> {
        let l = [a, b, c, d]
            .iter()
            .fold(BigInt::one(), |l, r| l.lcm(r.denom()));
        let clear = |r: &BigRational| (r * &l).to_integer();
        Self::new(clear(a), clear(b), clear(c), clear(d))
    }
}

/// Incremental homographic transducer over an input expansion.
pub struct HomographicStream<T: CfInt> {
    m: [BigInt; 4],
    input: PartialQuotients<T>,
    consumed: usize,
    emitted: usize,
}

impl<T: CfInt> HomographicStream<T> {
    pub fn new(g: &MoebiusMatrix<T>, input: PartialQuotients<T>) -> Self {
        HomographicStream {
            m: g.big(),
            input,
            consumed: 0,
            emitted: 0,
        }
    }

    /// Input quotients read so far (`a0` counts).
    pub fn consumed(&self) -> usize {
        self.consumed
    }

    pub fn emitted(&self) -> usize {
        self.emitted
    }

    /// Current state `[A, B, C, D]`.
    pub fn state(&self) -> &[BigInt; 4] {
        &self.m
    }

    fn pole_outside(&self) -> bool {
        let [_, _, c, d] = &self.m;
        let cd = c + d;
        !c.is_zero() && !cd.is_zero() && c.signum() == cd.signum()
    }

    fn try_emit(&self) -> Option<BigInt> {
        if self.consumed == 0 || !self.pole_outside() {
            return None;
        }
        let [a, b, c, d] = &self.m;
        let at_one = Ratio::new(a + b, c + d);
        let at_inf = Ratio::new(a.clone(), c.clone());
        let (lo, hi) = if at_one < at_inf {
            (at_one, at_inf)
        } else {
            (at_inf, at_one)
        };
        let e = lo.floor().to_integer();
        if hi <= Ratio::from_integer(&e + 1) {
            Some(e)
        } else {
            None
        }
    }

    /// Next output quotient (the first one is the output's `a0`).
    pub fn next_quotient(&mut self) -> Result<BigInt> {
        loop {
            if let Some(e) = self.try_emit() {
                let [a, b, c, d] = std::mem::take(&mut self.m);
                self.m = [c.clone(), d.clone(), a - &e * c, b - &e * d];
                self.emitted += 1;
                return Ok(e);
            }
            let q = match self.input.get(self.consumed) {
                Ok(q) => q.to_bigint(),
                Err(Error::InsufficientPrefix { .. })
                    if !self.pole_outside() && self.consumed > 0 =>
                {
                    return Err(Error::PoleCrossing {
                        consumed: self.consumed,
                    })
                }
                Err(e) => return Err(e),
            };
            let [a, b, c, d] = std::mem::take(&mut self.m);
            self.m = [&a * &q + &b, a, &c * &q + &d, c];
            self.consumed += 1;
        }
    }
}

/// Expansion of `g(alpha)` with at least `out_len` entries (counting `a0`)
/// computed up front; later entries are produced on demand.
///
/// Scalar matrices return the input unchanged.
pub fn apply_homographic<T: CfInt>(
    g: &MoebiusMatrix<T>,
    pq: &PartialQuotients<T>,
    out_len: usize,
) -> Result<PartialQuotients<T>> {
    if g.det_big().is_zero() {
        return Err(Error::SingularMatrix);
    }
    if g.is_scalar() {
        for i in 0..out_len {
            pq.get(i)?;
        }
        return Ok(pq.clone());
    }
    let mut stream = HomographicStream::new(g, pq.clone());
    let a0 = T::from_bigint(&stream.next_quotient()?).ok_or(Error::Overflow("output quotient"))?;
    let shared = Arc::new(Mutex::new((stream, None::<Error>)));
    let state = Arc::clone(&shared);
    let out = PartialQuotients::from_fn(a0, move |_| {
        let mut guard = state.lock().expect("transducer poisoned");
        let (stream, err) = &mut *guard;
        match stream.next_quotient() {
            Ok(v) => match T::from_bigint(&v) {
                Some(v) => Some(v),
                None => {
                    *err = Some(Error::Overflow("output quotient"));
                    None
                }
            },
            Err(e) => {
                *err = Some(e);
                None
            }
        }
    })?;
    for i in 1..out_len {
        if let Err(e) = out.get(i) {
            let stored = shared.lock().expect("transducer poisoned").1.take();
            return Err(stored.unwrap_or(e));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct InvarianceReport {
    pub matrix: Value,
    pub input: EstimateReport,
    pub output: EstimateReport,
    pub abs_diff: f64,
}

/// Windowed estimates of `alpha` and `g(alpha)` at the same horizon.
pub fn invariance_report(
    pq: &Expansion,
    g: &MoebiusMatrix<BigInt>,
    horizon: usize,
) -> Result<InvarianceReport> {
    let window = default_window(horizon);
    let out = apply_homographic(g, pq, horizon + 2)?;
    let a = estimate_type(pq, horizon, window)?;
    let b = estimate_type(&out, horizon, window)?;
    Ok(InvarianceReport {
        matrix: g.to_json(),
        abs_diff: (a.value - b.value).abs(),
        input: EstimateReport::from(&a),
        output: EstimateReport::from(&b),
    })
}

/// Common tail `alpha_{>=m} = beta_{>=n}` seen on `overlap` quotients.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SerretMatch {
    pub m: usize,
    pub n: usize,
    pub overlap: usize,
}

/// Searches `m, n <= horizon` (by increasing `m + n`, then `m`) for tails of
/// the two expansions that agree on every quotient read, requiring at least
/// `min_overlap` compared quotients. Each expansion is read to index
/// `2 * horizon` at most. `None` is not a proof that no common tail exists.
pub fn serret_check<T: CfInt>(
    pa: &PartialQuotients<T>,
    pb: &PartialQuotients<T>,
    horizon: usize,
    min_overlap: usize,
) -> Result<Option<SerretMatch>> {
    let read = |p: &PartialQuotients<T>| -> Result<Vec<T>> {
        let avail = p.available_up_to(2 * horizon);
        if avail < horizon {
            return Err(Error::InsufficientPrefix {
                needed: horizon,
                available: avail,
            });
        }
        p.take(avail + 1)
    };
    let (a, b) = (read(pa)?, read(pb)?);
    for s in 0..=2 * horizon {
        for m in s.saturating_sub(horizon)..=s.min(horizon) {
            let n = s - m;
            if m >= a.len() || n >= b.len() {
                continue;
            }
            let overlap = (a.len() - m).min(b.len() - n);
            if overlap >= min_overlap && a[m..m + overlap] == b[n..n + overlap] {
                return Ok(Some(SerretMatch { m, n, overlap }));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    type M = MoebiusMatrix<BigInt>;

    fn pq(a0: i64, q: &[i64]) -> Expansion {
        PartialQuotients::new(
            BigInt::from(a0),
            q.iter().map(|&v| BigInt::from(v)).collect(),
        )
        .unwrap()
    }

    fn take(p: &Expansion, n: usize) -> Vec<i64> {
        p.take(n)
            .unwrap()
            .iter()
            .map(|v| i64::try_from(v).unwrap())
            .collect()
    }

    #[test]
    fn singular_rejected() {
        assert!(matches!(
            M::from_i64(1, 2, 2, 4),
            Err(Error::SingularMatrix)
        ));
    }

    #[test]
    fn translation_bumps_a0() {
        let g = PartialQuotients::golden_ratio();
        let out = apply_homographic(&M::translation(BigInt::one()), &g, 10).unwrap();
        assert_eq!(take(&out, 10), [2, 1, 1, 1, 1, 1, 1, 1, 1, 1]);
    }

    #[test]
    fn inversion_shifts() {
        let p = PartialQuotients::with_generator(
            BigInt::zero(),
            [3, 1, 4, 1, 5].map(BigInt::from).to_vec(),
            crate::cf::Generator::Constant(BigInt::from(2)),
        )
        .unwrap();
        let out = apply_homographic(&M::inversion(), &p, 8).unwrap();
        assert_eq!(take(&out, 8), [3, 1, 4, 1, 5, 2, 2, 2]);
    }

    #[test]
    fn negation_normalizes_head() {
        // -[0; 2, 2, ...] = [-1; 1, 1, 2, 2, ...]
        let p = PartialQuotients::constant(BigInt::zero(), BigInt::from(2)).unwrap();
        let out = apply_homographic(&M::negation(), &p, 6).unwrap();
        assert_eq!(take(&out, 6), [-1, 1, 1, 2, 2, 2]);
    }

    #[test]
    fn identity_and_scalars_are_trivial() {
        let p = pq(1, &[2, 3, 4]);
        let out = apply_homographic(&M::identity(), &p, 4).unwrap();
        assert_eq!(out.to_json(), p.to_json());
        let out = apply_homographic(&M::from_i64(7, 0, 0, 7).unwrap(), &p, 4).unwrap();
        assert_eq!(out.to_json(), p.to_json());
    }

    #[test]
    fn finite_input_runs_out() {
        let p = pq(0, &[2, 3]);
        let err = apply_homographic(&M::from_i64(2, 1, 1, 1).unwrap(), &p, 10).unwrap_err();
        assert!(matches!(
            err,
            Error::InsufficientPrefix { .. } | Error::PoleCrossing { .. }
        ));
    }

    #[test]
    fn pole_in_range_reported() {
        // 2/(2 alpha - 1) with alpha = [0; 2, ...] next to the pole 1/2.
        let p = pq(0, &[2]);
        let err = apply_homographic(&M::from_i64(0, 2, 2, -1).unwrap(), &p, 3).unwrap_err();
        assert!(matches!(err, Error::PoleCrossing { .. }), "{err:?}");
    }

    #[test]
    fn rational_matrix_cleared() {
        let h = |p: i64, q: i64| BigRational::new(BigInt::from(p), BigInt::from(q));
        let m = M::from_rationals(&h(1, 2), &h(0, 1), &h(0, 1), &h(1, 3)).unwrap();
        assert_eq!(m, M::from_i64(3, 0, 0, 2).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let m = M::from_i64(2, 1, 1, 1).unwrap();
        assert_eq!(M::from_json(&m.to_json()).unwrap(), m);
    }

    #[test]
    fn serret_examples() {
        let g = PartialQuotients::golden_ratio();
        let p = PartialQuotients::with_generator(
            BigInt::zero(),
            [5, 7, 9].map(BigInt::from).to_vec(),
            crate::cf::Generator::Periodic([1, 2].map(BigInt::from).to_vec()),
        )
        .unwrap();
        let t3 = p.tail(3).unwrap();
        let hit = serret_check(&p, &t3, 10, 10).unwrap().unwrap();
        assert_eq!((hit.m, hit.n), (3, 0));

        let two = PartialQuotients::constant(BigInt::zero(), BigInt::from(2)).unwrap();
        let three = PartialQuotients::constant(BigInt::zero(), BigInt::from(3)).unwrap();
        assert_eq!(serret_check(&two, &three, 20, 20).unwrap(), None);

        let gg = apply_homographic(&M::from_i64(1, 1, 1, 0).unwrap(), &g, 12).unwrap();
        assert!(serret_check(&g, &gg, 10, 10).unwrap().is_some());
    }
}
