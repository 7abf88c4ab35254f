//! Simple continued fractions `[a0; a1, a2, ...]` over an integer scalar.
//!
//! A [`PartialQuotients`] is a view into a shared, memoizing quotient source:
//! a finite seed prefix plus an optional [`Generator`] that extends it on
//! demand. Clones and tails share the source, so every reader sees the same
//! sequence no matter who forced it first.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_json::{Number, Value};

use crate::error::{Error, Result};
use crate::scalar::{self, CfInt};

/// Rule that produces tail quotients past the seed prefix.
///
/// Callback generators receive the absolute position in the tail stream
/// (0 for `a1`) and return `None` once exhausted. They are called in
/// increasing position order, each position exactly once.
#[derive(Clone)]
pub enum Generator<T> {
    Constant(T),
    Periodic(Vec<T>),
    Callback(Arc<dyn Fn(usize) -> Option<T> + Send + Sync>),
}

impl<T: fmt::Debug> fmt::Debug for Generator<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Constant(v) => f.debug_tuple("Constant").field(v).finish(),
            Generator::Periodic(p) => f.debug_tuple("Periodic").field(p).finish(),
            Generator::Callback(_) => f.write_str("Callback(..)"),
        }
    }
}

struct SourceState<T> {
    entries: Vec<T>,
    exhausted: bool,
}

struct QuotientSource<T> {
    seed_len: usize,
    generator: Option<Generator<T>>,
    state: Mutex<SourceState<T>>,
}

impl<T: CfInt> QuotientSource<T> {
    fn fetch(&self, pos: usize) -> Result<T> {
        let mut state = self.state.lock().expect("quotient cache poisoned");
        while state.entries.len() <= pos {
            let next = if state.exhausted {
                None
            } else {
                let at = state.entries.len();
                match &self.generator {
                    None => None,
                    Some(Generator::Constant(v)) => Some(v.clone()),
                    Some(Generator::Periodic(period)) => {
                        Some(period[(at - self.seed_len) % period.len()].clone())
                    }
                    Some(Generator::Callback(f)) => f(at),
                }
            };
            match next {
                Some(v) if v >= T::one() => state.entries.push(v),
                Some(v) => {
                    state.exhausted = true;
                    return Err(Error::InvalidQuotient {
                        index: state.entries.len() + 1,
                        value: v.to_string(),
                    });
                }
                None => {
                    state.exhausted = true;
                    return Err(Error::InsufficientPrefix {
                        needed: pos + 1,
                        available: state.entries.len(),
                    });
                }
            }
        }
        Ok(state.entries[pos].clone())
    }

    fn cached_len(&self) -> usize {
        self.state
            .lock()
            .expect("quotient cache poisoned")
            .entries
            .len()
    }

    fn snapshot(&self, from: usize) -> Vec<T> {
        let state = self.state.lock().expect("quotient cache poisoned");
        state
            .entries
            .get(from..)
            .map(<[T]>::to_vec)
            .unwrap_or_default()
    }
}

/// A continued-fraction expansion: integer `a0` and positive tail quotients.
#[derive(Clone)]
pub struct PartialQuotients<T> {
    a0: T,
    source: Arc<QuotientSource<T>>,
    offset: usize,
}

impl<T: CfInt> fmt::Debug for PartialQuotients<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<T: CfInt> fmt::Display for PartialQuotients<T> {
    /// Shows the cached prefix, with `...` when more quotients may follow.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}", self.a0)?;
        for (i, q) in self.source.snapshot(self.offset).iter().enumerate() {
            write!(f, "{}{}", if i == 0 { ";" } else { "," }, q)?;
        }
        if self.source.generator.is_some() {
            f.write_str(",...")?;
        }
        f.write_str("]")
    }
}

impl<T: CfInt> PartialQuotients<T> {
    /// Finite expansion `[a0; quotients...]`.
    pub fn new(a0: T, quotients: Vec<T>) -> Result<Self> {
        Self::build(a0, quotients, None)
    }

    /// Expansion whose seed prefix is continued by `generator`.
    pub fn with_generator(a0: T, quotients: Vec<T>, generator: Generator<T>) -> Result<Self> {
        match &generator {
            Generator::Constant(v) if *v < T::one() => {
                return Err(Error::InvalidArgument(
                    "constant generator must be >= 1".into(),
                ))
            }
            Generator::Periodic(p) if p.is_empty() || p.iter().any(|v| *v < T::one()) => {
                return Err(Error::InvalidArgument(
                    "periodic generator needs a non-empty period of entries >= 1".into(),
                ))
            }
            _ => {}
        }
        Self::build(a0, quotients, Some(generator))
    }

    /// `[a0; f(0), f(1), ...]` for a callback producing quotients on demand.
    pub fn from_fn<F>(a0: T, f: F) -> Result<Self>
    where
        F: Fn(usize) -> Option<T> + Send + Sync + 'static,
    {
        Self::build(a0, Vec::new(), Some(Generator::Callback(Arc::new(f))))
    }

    /// `[a0; v, v, v, ...]`.
    pub fn constant(a0: T, v: T) -> Result<Self> {
        Self::with_generator(a0, Vec::new(), Generator::Constant(v))
    }

    /// The golden ratio `[1; 1, 1, ...]`.
    pub fn golden_ratio() -> Self {
        Self::constant(T::one(), T::one()).expect("valid")
    }

    fn build(a0: T, quotients: Vec<T>, generator: Option<Generator<T>>) -> Result<Self> {
        if let Some(i) = quotients.iter().position(|q| *q < T::one()) {
            return Err(Error::InvalidQuotient {
                index: i + 1,
                value: quotients[i].to_string(),
            });
        }
        Ok(PartialQuotients {
            a0,
            source: Arc::new(QuotientSource {
                seed_len: quotients.len(),
                generator,
                state: Mutex::new(SourceState {
                    entries: quotients,
                    exhausted: false,
                }),
            }),
            offset: 0,
        })
    }

    pub fn a0(&self) -> &T {
        &self.a0
    }

    /// Quotient `a_i` (`i = 0` gives `a0`), forcing the generator if needed.
    pub fn get(&self, i: usize) -> Result<T> {
        if i == 0 {
            Ok(self.a0.clone())
        } else {
            self.source.fetch(self.offset + i - 1)
        }
    }

    /// Tail quotients currently materialized (not counting `a0`).
    pub fn prefix_len(&self) -> usize {
        self.source.cached_len().saturating_sub(self.offset)
    }

    /// Whether a generator is attached (a callback may still run dry).
    pub fn has_generator(&self) -> bool {
        self.source.generator.is_some()
    }

    /// Number of tail quotients obtainable up to `limit`, forcing the generator.
    pub fn available_up_to(&self, limit: usize) -> usize {
        (1..=limit)
            .take_while(|&i| self.get(i).is_ok())
            .last()
            .unwrap_or(0)
    }

    /// `[a0, a1, ..., a_{n-1}]`.
    pub fn take(&self, n: usize) -> Result<Vec<T>> {
        (0..n).map(|i| self.get(i)).collect()
    }

    /// The `n`-th tail `[a_n; a_{n+1}, ...]`, sharing this expansion's source.
    pub fn tail(&self, n: usize) -> Result<Self> {
        if n == 0 {
            return Ok(self.clone());
        }
        let a0 = self.get(n)?;
        Ok(PartialQuotients {
            a0,
            source: Arc::clone(&self.source),
            offset: self.offset + n,
        })
    }

    /// Finite copy holding `a0` and the first `len` tail quotients.
    pub fn truncated(&self, len: usize) -> Result<Self> {
        let quotients = (1..=len).map(|i| self.get(i)).collect::<Result<Vec<_>>>()?;
        Self::new(self.a0.clone(), quotients)
    }

    /// Same expansion with `a0` replaced.
    pub fn with_a0(&self, a0: T) -> Self {
        PartialQuotients {
            a0,
            source: Arc::clone(&self.source),
            offset: self.offset,
        }
    }

    /// Exact rational value of a finite expansion truncated after `a_n`.
    pub fn head(&self, n: usize) -> Result<Ratio<T>> {
        let c = convergents(self, n)?;
        Ok(Ratio::new(c.h[n].clone(), c.k[n].clone()))
    }

    /// Generator description as seen from this view (periodic phase adjusted).
    fn generator_from_here(&self) -> Option<Generator<T>> {
        let gen = self.source.generator.as_ref()?;
        Some(match gen {
            Generator::Periodic(period) if self.offset > self.source.seed_len => {
                let shift = (self.offset - self.source.seed_len) % period.len();
                let mut rotated = period[shift..].to_vec();
                rotated.extend_from_slice(&period[..shift]);
                Generator::Periodic(rotated)
            }
            other => other.clone(),
        })
    }
}

/// Convergent numerators `h` and denominators `k` for indices `0..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergentSeq<T> {
    pub h: Vec<T>,
    pub k: Vec<T>,
}

impl<T: CfInt> ConvergentSeq<T> {
    pub fn len(&self) -> usize {
        self.k.len()
    }

    pub fn is_empty(&self) -> bool {
        self.k.is_empty()
    }

    pub fn convergent(&self, n: usize) -> Ratio<T> {
        Ratio::new(self.h[n].clone(), self.k[n].clone())
    }

    /// Recovers the quotients from the denominators alone:
    /// `a1 = k1`, `a_{n+2} = (k_{n+2} - k_n) / k_{n+1}`.
    pub fn quotients_from_denominators(&self) -> Vec<T> {
        let k = &self.k;
        let mut out = Vec::with_capacity(k.len().saturating_sub(1));
        if k.len() > 1 {
            out.push(k[1].clone());
        }
        for n in 2..k.len() {
            out.push((k[n].clone() - k[n - 2].clone()) / k[n - 1].clone());
        }
        out
    }

    /// CSV rows `n,h,k` with a header line.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("n,h,k\n");
        for n in 0..self.len() {
            s.push_str(&format!("{},{},{}\n", n, self.h[n], self.k[n]));
        }
        s
    }
}

/// Incremental convergent recursion; yields `(h_n, k_n)` for `n = 0, 1, ...`.
pub struct Convergents<'a, T> {
    pq: &'a PartialQuotients<T>,
    n: usize,
    prev: (T, T),
    cur: (T, T),
}

impl<'a, T: CfInt> Convergents<'a, T> {
    pub fn new(pq: &'a PartialQuotients<T>) -> Self {
        // (h_{-1}, k_{-1}) = (1, 0) and (h_{-2}, k_{-2}) = (0, 1) reproduce the base cases.
        Convergents {
            pq,
            n: 0,
            prev: (T::zero(), T::one()),
            cur: (T::one(), T::zero()),
        }
    }

    pub fn next_pair(&mut self) -> Result<(T, T)> {
        let a = self.pq.get(self.n)?;
        let h = scalar::mul_add(&a, &self.cur.0, &self.prev.0)?;
        let k = scalar::mul_add(&a, &self.cur.1, &self.prev.1)?;
        self.prev = std::mem::replace(&mut self.cur, (h.clone(), k.clone()));
        self.n += 1;
        Ok((h, k))
    }

    /// Index of the next convergent to be produced.
    pub fn index(&self) -> usize {
        self.n
    }
}

/// `h_0..h_n`, `k_0..k_n` by the exact recursions.
pub fn convergents<T: CfInt>(pq: &PartialQuotients<T>, n: usize) -> Result<ConvergentSeq<T>> {
    let mut it = Convergents::new(pq);
    let mut h = Vec::with_capacity(n + 1);
    let mut k = Vec::with_capacity(n + 1);
    for _ in 0..=n {
        let (hn, kn) = it.next_pair()?;
        h.push(hn);
        k.push(kn);
    }
    Ok(ConvergentSeq { h, k })
}

/// Canonical finite expansion of `num / den` by the Euclidean algorithm.
///
/// The result's last quotient is at least 2 whenever it has a tail.
pub fn expand_rational<T: CfInt>(num: T, den: T) -> Result<PartialQuotients<T>> {
    if den < T::one() {
        return Err(Error::InvalidArgument("denominator must be >= 1".into()));
    }
    let (a0, mut r) = num.div_mod_floor(&den);
    let mut d = den;
    let mut quotients = Vec::new();
    while !r.is_zero() {
        let (q, rem) = d.div_mod_floor(&r);
        quotients.push(q);
        d = std::mem::replace(&mut r, rem);
    }
    PartialQuotients::new(a0, quotients)
}

/// Merges a trailing `1` into its predecessor: `[..., a, 1] -> [..., a + 1]`.
pub fn canonical_form<T: CfInt>(a0: T, quotients: &[T]) -> Result<(T, Vec<T>)> {
    let mut a0 = a0;
    let mut q = quotients.to_vec();
    if q.last().is_some_and(|v| v.is_one()) {
        q.pop();
        match q.last_mut() {
            Some(last) => *last = scalar::add(last, &T::one())?,
            None => a0 = scalar::add(&a0, &T::one())?,
        }
    }
    Ok((a0, q))
}

/// Open interval with exact rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalInterval<T: Clone + num_integer::Integer> {
    pub lo: Ratio<T>,
    pub hi: Ratio<T>,
}

impl<T: CfInt> RationalInterval<T> {
    pub fn new(lo: Ratio<T>, hi: Ratio<T>) -> Result<Self> {
        if lo >= hi {
            return Err(Error::InvalidArgument(format!(
                "empty interval ({lo}, {hi})"
            )));
        }
        Ok(RationalInterval { lo, hi })
    }

    /// Interval spanned by two distinct endpoints in either order.
    pub fn spanning(a: Ratio<T>, b: Ratio<T>) -> Result<Self> {
        match a.cmp(&b) {
            Ordering::Less => Self::new(a, b),
            _ => Self::new(b, a),
        }
    }

    pub fn width(&self) -> Ratio<T> {
        self.hi.clone() - self.lo.clone()
    }

    pub fn contains(&self, x: &Ratio<T>) -> bool {
        &self.lo < x && x < &self.hi
    }

    pub fn contains_interval(&self, other: &Self) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }
}

/// Interval between `h_n/k_n` and `h_{n+1}/k_{n+1}`, which strictly contains
/// the value of every infinite extension of the prefix `a_0..a_{n+1}`.
pub fn value_interval<T: CfInt>(pq: &PartialQuotients<T>, n: usize) -> Result<RationalInterval<T>> {
    let c = convergents(pq, n + 1)?;
    RationalInterval::spanning(c.convergent(n), c.convergent(n + 1))
}

/// Serialized generator, see [`ExpansionFile`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GeneratorSpec {
    Constant { value: Value },
    Periodic { period: Vec<Value> },
}

/// JSON form `{"a0": int, "quotients": [int, ...], "generator": ...}`.
///
/// Integers are written as JSON numbers of arbitrary length; decimal strings
/// are accepted on input as well.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExpansionFile {
    pub a0: Value,
    pub quotients: Vec<Value>,
    pub generator: Option<GeneratorSpec>,
}

pub(crate) fn int_to_json<T: fmt::Display>(v: &T) -> Value {
    Value::Number(Number::from_str(&v.to_string()).expect("integer literal"))
}

pub(crate) fn json_to_int<T: CfInt>(v: &Value) -> Result<T> {
    let text = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.trim().to_string(),
        other => return Err(Error::Parse(format!("expected integer, got {other}"))),
    };
    let big = BigInt::from_str(&text).map_err(|e| Error::Parse(format!("{text:?}: {e}")))?;
    T::from_bigint(&big).ok_or(Error::Overflow("integer parse"))
}

impl<T: CfInt> PartialQuotients<T> {
    /// Serializable form. Callback generators cannot be written; only the
    /// materialized prefix is kept for them.
    pub fn to_file(&self) -> ExpansionFile {
        let quotients = match self.source.generator {
            Some(Generator::Periodic(_)) | Some(Generator::Constant(_)) => {
                let seed = self.source.seed_len;
                let state = self.source.state.lock().expect("quotient cache poisoned");
                state
                    .entries
                    .get(self.offset.min(seed)..seed)
                    .map(<[T]>::to_vec)
                    .unwrap_or_default()
            }
            _ => self.source.snapshot(self.offset),
        };
        let generator = match self.generator_from_here() {
            Some(Generator::Constant(v)) => Some(GeneratorSpec::Constant {
                value: int_to_json(&v),
            }),
            Some(Generator::Periodic(p)) => Some(GeneratorSpec::Periodic {
                period: p.iter().map(int_to_json).collect(),
            }),
            _ => None,
        };
        ExpansionFile {
            a0: int_to_json(&self.a0),
            quotients: quotients.iter().map(int_to_json).collect(),
            generator,
        }
    }

    pub fn from_file(file: &ExpansionFile) -> Result<Self> {
        let a0 = json_to_int(&file.a0)?;
        let quotients = file
            .quotients
            .iter()
            .map(json_to_int)
            .collect::<Result<Vec<T>>>()?;
        match &file.generator {
            None => Self::new(a0, quotients),
            Some(GeneratorSpec::Constant { value }) => {
                Self::with_generator(a0, quotients, Generator::Constant(json_to_int(value)?))
            }
            Some(GeneratorSpec::Periodic { period }) => {
                let period = period.iter().map(json_to_int).collect::<Result<Vec<T>>>()?;
                Self::with_generator(a0, quotients, Generator::Periodic(period))
            }
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("serializable") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_file(&serde_json::from_str(text)?)
    }
}

/// Parses `"p/q"` or `"n"` into a rational.
pub fn parse_ratio(s: &str) -> Result<Ratio<BigInt>> {
    let s = s.trim();
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p = BigInt::from_str(p).map_err(|e| Error::Parse(format!("{s:?}: {e}")))?;
    let q = BigInt::from_str(q).map_err(|e| Error::Parse(format!("{s:?}: {e}")))?;
    if q.is_zero() {
        return Err(Error::Parse(format!("{s:?}: zero denominator")));
    }
    Ok(Ratio::new(p, q))
}

/// Formats a rational as `"p/q"` (always with a denominator).
pub fn format_ratio(r: &Ratio<BigInt>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pq(a0: i64, q: &[i64]) -> PartialQuotients<BigInt> {
        PartialQuotients::new(
            BigInt::from(a0),
            q.iter().map(|&v| BigInt::from(v)).collect(),
        )
        .unwrap()
    }

    fn r(p: i64, q: i64) -> Ratio<BigInt> {
        Ratio::new(BigInt::from(p), BigInt::from(q))
    }

    #[test]
    fn fibonacci_convergents() {
        let c = convergents(&pq(1, &[1, 1, 1, 1]), 4).unwrap();
        let got: Vec<_> = (0..5).map(|n| c.convergent(n)).collect();
        assert_eq!(got, vec![r(1, 1), r(2, 1), r(3, 2), r(5, 3), r(8, 5)]);
    }

    #[test]
    fn base_cases() {
        let c = convergents(&pq(0, &[2]), 1).unwrap();
        assert_eq!(c.h, vec![BigInt::from(0), BigInt::from(1)]);
        assert_eq!(c.k, vec![BigInt::from(1), BigInt::from(2)]);
    }

    #[test]
    fn pi_prefix_gives_355_113() {
        let c = convergents(&pq(3, &[7, 15, 1]), 3).unwrap();
        assert_eq!(c.convergent(3), r(355, 113));
        assert_eq!(c.h[2], BigInt::from(333));
        assert_eq!(c.k[2], BigInt::from(106));
    }

    #[test]
    fn machine_scalar_works_until_overflow() {
        let small = PartialQuotients::<i64>::new(3, vec![7, 15, 1]).unwrap();
        assert_eq!(convergents(&small, 3).unwrap().k[3], 113);
        let huge = PartialQuotients::<i32>::constant(0, 1_000_000).unwrap();
        assert!(matches!(convergents(&huge, 5), Err(Error::Overflow(_))));
    }

    #[test]
    fn insufficient_prefix() {
        let err = convergents(&pq(0, &[2]), 3).unwrap_err();
        assert!(matches!(err, Error::InsufficientPrefix { .. }));
    }

    #[test]
    fn euclid_expansions() {
        let e = expand_rational(BigInt::from(355), BigInt::from(113)).unwrap();
        assert_eq!(
            e.take(3).unwrap(),
            vec![3, 7, 16]
                .into_iter()
                .map(BigInt::from)
                .collect::<Vec<_>>()
        );
        assert_eq!(e.prefix_len(), 2);
        let e = expand_rational(BigInt::from(7), BigInt::from(1)).unwrap();
        assert_eq!(e.prefix_len(), 0);
        assert_eq!(e.a0(), &BigInt::from(7));
        let e = expand_rational(BigInt::from(1), BigInt::from(2)).unwrap();
        assert_eq!(e.take(2).unwrap(), vec![BigInt::from(0), BigInt::from(2)]);
        let e = expand_rational(BigInt::from(-7), BigInt::from(3)).unwrap();
        assert_eq!(e.head(e.prefix_len()).unwrap(), r(-7, 3));
        assert!(expand_rational(BigInt::from(1), BigInt::from(0)).is_err());
    }

    #[test]
    fn value_intervals() {
        let iv = value_interval(&pq(1, &[1, 1, 1]), 2).unwrap();
        assert_eq!((iv.lo, iv.hi), (r(3, 2), r(5, 3)));
        let iv = value_interval(&pq(0, &[2, 2]), 1).unwrap();
        assert_eq!(iv.width(), r(1, 10));
    }

    #[test]
    fn heads_and_tails() {
        let p = PartialQuotients::with_generator(
            BigInt::from(2),
            vec![1, 2, 1].into_iter().map(BigInt::from).collect(),
            Generator::Periodic(vec![BigInt::from(2), BigInt::from(1)]),
        )
        .unwrap();
        assert_eq!(p.head(2).unwrap(), r(8, 3));
        assert_eq!(p.head(0).unwrap(), r(2, 1));
        let t = p.tail(1).unwrap();
        assert_eq!(
            t.take(4).unwrap(),
            vec![1, 2, 1, 2]
                .into_iter()
                .map(BigInt::from)
                .collect::<Vec<_>>()
        );
    }

    #[test]
    fn canonical_merge() {
        let (a0, q) = canonical_form(
            BigInt::from(3),
            &[BigInt::from(7), BigInt::from(15), BigInt::from(1)],
        )
        .unwrap();
        assert_eq!(a0, BigInt::from(3));
        assert_eq!(q, vec![BigInt::from(7), BigInt::from(16)]);
        let (a0, q) = canonical_form(BigInt::from(3), &[BigInt::from(1)]).unwrap();
        assert_eq!((a0, q.len()), (BigInt::from(4), 0));
    }

    #[test]
    fn rejects_nonpositive_quotients() {
        assert!(PartialQuotients::new(BigInt::from(0), vec![BigInt::from(0)]).is_err());
        let bad = PartialQuotients::from_fn(BigInt::from(0), |i| Some(BigInt::from(2 - i as i64)))
            .unwrap();
        assert!(bad.get(2).is_ok());
        assert!(matches!(bad.get(3), Err(Error::InvalidQuotient { .. })));
    }

    #[test]
    fn callback_is_memoized() {
        use std::sync::atomic::{AtomicUsize, Ordering};
        let calls = Arc::new(AtomicUsize::new(0));
        let c2 = Arc::clone(&calls);
        let p = PartialQuotients::from_fn(BigInt::from(0), move |i| {
            c2.fetch_add(1, Ordering::SeqCst);
            Some(BigInt::from(i as i64 + 1))
        })
        .unwrap();
        let first = p.take(10).unwrap();
        let second = p.clone().take(10).unwrap();
        assert_eq!(first, second);
        assert_eq!(calls.load(Ordering::SeqCst), 9);
    }

    #[test]
    fn json_round_trip_keeps_periodic_phase() {
        let p = PartialQuotients::with_generator(
            BigInt::from(0),
            vec![BigInt::from(5)],
            Generator::Periodic(vec![BigInt::from(1), BigInt::from(2), BigInt::from(3)]),
        )
        .unwrap();
        let t = p.tail(3).unwrap();
        let back = PartialQuotients::<BigInt>::from_json(&t.to_json()).unwrap();
        assert_eq!(back.take(8).unwrap(), t.take(8).unwrap());
        let same = PartialQuotients::<BigInt>::from_json(&p.to_json()).unwrap();
        assert_eq!(same.to_json(), p.to_json());
    }

    #[test]
    fn json_accepts_strings_and_huge_numbers() {
        let text = r#"{"a0": "-3", "quotients": [123456789012345678901234567890, "2"], "generator": null}"#;
        let p = PartialQuotients::<BigInt>::from_json(text).unwrap();
        assert_eq!(
            p.get(1).unwrap().to_string(),
            "123456789012345678901234567890"
        );
        assert!(p.to_json().contains("123456789012345678901234567890"));
    }

    #[test]
    fn ratio_strings() {
        assert_eq!(parse_ratio("5/2").unwrap(), r(5, 2));
        assert_eq!(parse_ratio("3").unwrap(), r(3, 1));
        assert_eq!(format_ratio(&r(4, 2)), "2/1");
        assert!(parse_ratio("1/0").is_err());
    }
}
