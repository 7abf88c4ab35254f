//! Sequences given by a finite prefix and a decidable tail, and the
//! prefix-computable maps between them.

use serde::{Deserialize, Serialize};

use super::{pair, unpair};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum TailSpec {
    Periodic {
        period: Vec<u64>,
    },
    Constant {
        value: u64,
    },
    /// `x(i) = i + offset` at absolute index `i`.
    IdentityGrowth {
        offset: u64,
    },
}

/// `prefix` followed by the tail rule, indexed from 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrefixStream {
    pub prefix: Vec<u64>,
    pub tail: TailSpec,
}

impl PrefixStream {
    pub fn new(prefix: Vec<u64>, tail: TailSpec) -> Result<Self> {
        if let TailSpec::Periodic { period } = &tail {
            if period.is_empty() {
                return Err(Error::InvalidArgument("empty period".into()));
            }
        }
        Ok(PrefixStream { prefix, tail })
    }

    pub fn constant(value: u64) -> Self {
        PrefixStream {
            prefix: Vec::new(),
            tail: TailSpec::Constant { value },
        }
    }

    /// `x(n) = n + offset`.
    pub fn identity(offset: u64) -> Self {
        PrefixStream {
            prefix: Vec::new(),
            tail: TailSpec::IdentityGrowth { offset },
        }
    }

    pub fn get(&self, i: usize) -> u64 {
        if let Some(v) = self.prefix.get(i) {
            return *v;
        }
        match &self.tail {
            TailSpec::Periodic { period } => period[(i - self.prefix.len()) % period.len()],
            TailSpec::Constant { value } => *value,
            TailSpec::IdentityGrowth { offset } => i as u64 + offset,
        }
    }

    pub fn take(&self, n: usize) -> Vec<u64> {
        (0..n).map(|i| self.get(i)).collect()
    }

    fn tail_values(&self) -> Option<&[u64]> {
        match &self.tail {
            TailSpec::Periodic { period } => Some(period),
            TailSpec::Constant { value } => Some(std::slice::from_ref(value)),
            TailSpec::IdentityGrowth { .. } => None,
        }
    }

    /// Whether every entry is 0 or 1.
    pub fn is_binary(&self) -> bool {
        self.prefix.iter().all(|&v| v <= 1)
            && self
                .tail_values()
                .is_some_and(|t| t.iter().all(|&v| v <= 1))
    }

    /// Whether every entry is at least 1.
    pub fn is_positive(&self) -> bool {
        self.prefix.iter().all(|&v| v >= 1)
            && match &self.tail {
                TailSpec::IdentityGrowth { offset } => self.prefix.len() as u64 + offset >= 1,
                _ => self
                    .tail_values()
                    .is_some_and(|t| t.iter().all(|&v| v >= 1)),
            }
    }

    /// Eventually zero.
    pub fn eventually_zero(&self) -> bool {
        self.tail_values()
            .is_some_and(|t| t.iter().all(|&v| v == 0))
    }

    /// Tends to infinity.
    pub fn diverges(&self) -> bool {
        matches!(self.tail, TailSpec::IdentityGrowth { .. })
    }

    /// Least upper bound of the values taken infinitely often, if finite.
    pub fn limsup(&self) -> Option<u64> {
        self.tail_values()
            .map(|t| t.iter().copied().max().unwrap_or(0))
    }

    /// Least value taken infinitely often, if any.
    pub fn liminf(&self) -> Option<u64> {
        self.tail_values()
            .map(|t| t.iter().copied().min().unwrap_or(0))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let s: PrefixStream = serde_json::from_str(text)?;
        Self::new(s.prefix, s.tail)
    }
}

/// A binary matrix `alpha(m, n)`: explicit rows, then `rest` for every
/// row index past them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixSpec {
    pub rows: Vec<PrefixStream>,
    pub rest: PrefixStream,
}

impl MatrixSpec {
    pub fn new(rows: Vec<PrefixStream>, rest: PrefixStream) -> Result<Self> {
        if !rows
            .iter()
            .chain(std::iter::once(&rest))
            .all(PrefixStream::is_binary)
        {
            return Err(Error::InvalidArgument("matrix rows must be binary".into()));
        }
        Ok(MatrixSpec { rows, rest })
    }

    pub fn zero() -> Self {
        MatrixSpec {
            rows: Vec::new(),
            rest: PrefixStream::constant(0),
        }
    }

    pub fn row(&self, m: u64) -> &PrefixStream {
        usize::try_from(m)
            .ok()
            .and_then(|m| self.rows.get(m))
            .unwrap_or(&self.rest)
    }

    pub fn get(&self, m: u64, n: u64) -> u64 {
        self.row(m).get(n as usize)
    }

    /// Every row has finitely many ones.
    pub fn rows_finite(&self) -> bool {
        self.rows.iter().all(PrefixStream::eventually_zero) && self.rest.eventually_zero()
    }

    /// Rows as a `rows x cols` prefix; `rows` may exceed the explicit rows.
    pub fn prefix(&self, rows: usize, cols: usize) -> Vec<Vec<u64>> {
        (0..rows as u64).map(|m| self.row(m).take(cols)).collect()
    }
}

/// First `out_len` values of `f(alpha)(k) = k` if `alpha(m, n) = 0`, else `m`,
/// where `k = <m, n>`.
pub fn matrix_to_nseq(mat: &MatrixSpec, out_len: usize) -> Vec<u64> {
    (0..out_len as u64)
        .map(|k| {
            let (m, n) = unpair(k);
            debug_assert_eq!(pair(m, n).ok(), Some(k));
            if mat.get(m, n) == 0 {
                k
            } else {
                m
            }
        })
        .collect()
}

/// A map `2^omega -> 2^omega` (or from naturals) computable from prefixes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum PrefixMap {
    Identity,
    /// `g(x)(n) = x(n + by)`.
    Shift {
        by: usize,
    },
    /// `g(x)(n) = value`.
    Constant {
        value: u64,
    },
    /// `g(x)(n) = 1` iff `x(n) = value`.
    Indicator {
        value: u64,
    },
}

impl PrefixMap {
    /// Input length needed for the first `n` outputs.
    pub fn demand(&self, n: usize) -> usize {
        match self {
            PrefixMap::Identity | PrefixMap::Indicator { .. } => n,
            PrefixMap::Shift { by } => n + by,
            PrefixMap::Constant { .. } => 0,
        }
    }

    pub fn eval(&self, x: &[u64], n: usize) -> Result<Vec<u64>> {
        let need = self.demand(n);
        if need > x.len() {
            return Err(Error::PrefixDemand {
                demanded: need,
                available: x.len(),
            });
        }
        Ok(match self {
            PrefixMap::Identity => x[..n].to_vec(),
            PrefixMap::Shift { by } => x[*by..by + n].to_vec(),
            PrefixMap::Constant { value } => vec![*value; n],
            PrefixMap::Indicator { value } => {
                x[..n].iter().map(|v| u64::from(v == value)).collect()
            }
        })
    }

    /// Image of a decidable stream, again decidable.
    pub fn image(&self, x: &PrefixStream) -> PrefixStream {
        match self {
            PrefixMap::Identity => x.clone(),
            PrefixMap::Shift { by } => {
                let by = *by;
                let kept = by.min(x.prefix.len());
                let skip = by - kept;
                let tail = match &x.tail {
                    TailSpec::Periodic { period } => {
                        let s = skip % period.len();
                        let mut p = period[s..].to_vec();
                        p.extend_from_slice(&period[..s]);
                        TailSpec::Periodic { period: p }
                    }
                    TailSpec::IdentityGrowth { offset } => TailSpec::IdentityGrowth {
                        offset: offset + by as u64,
                    },
                    c => c.clone(),
                };
                PrefixStream {
                    prefix: x.prefix[kept..].to_vec(),
                    tail,
                }
            }
            PrefixMap::Constant { value } => PrefixStream::constant(*value),
            PrefixMap::Indicator { value } => {
                let ind = |v: &u64| u64::from(v == value);
                match &x.tail {
                    TailSpec::IdentityGrowth { offset } => {
                        // Hits `value` at most once, at index value - offset.
                        let len = x
                            .prefix
                            .len()
                            .max((value.saturating_sub(*offset) + 1) as usize);
                        PrefixStream {
                            prefix: (0..len).map(|i| ind(&x.get(i))).collect(),
                            tail: TailSpec::Constant { value: 0 },
                        }
                    }
                    TailSpec::Periodic { period } => PrefixStream {
                        prefix: x.prefix.iter().map(ind).collect(),
                        tail: TailSpec::Periodic {
                            period: period.iter().map(ind).collect(),
                        },
                    },
                    TailSpec::Constant { value: c } => PrefixStream {
                        prefix: x.prefix.iter().map(ind).collect(),
                        tail: TailSpec::Constant { value: ind(c) },
                    },
                }
            }
        }
    }
}

/// Rows `g_m(x)` for the first `cols` columns, from a finite prefix of `x`.
pub fn family_to_matrix(maps: &[PrefixMap], x: &[u64], cols: usize) -> Result<Vec<Vec<u64>>> {
    maps.iter().map(|g| g.eval(x, cols)).collect()
}

/// The matrix `g(x)(m, n) = g_m(x)(n)` as a decidable spec; rows past the
/// family are zero.
pub fn family_image(maps: &[PrefixMap], x: &PrefixStream) -> Result<MatrixSpec> {
    MatrixSpec::new(
        maps.iter().map(|g| g.image(x)).collect(),
        PrefixStream::constant(0),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn periodic(prefix: &[u64], period: &[u64]) -> PrefixStream {
        PrefixStream::new(
            prefix.to_vec(),
            TailSpec::Periodic {
                period: period.to_vec(),
            },
        )
        .unwrap()
    }

    #[test]
    fn stream_access() {
        let s = periodic(&[5, 6], &[1, 2, 3]);
        assert_eq!(s.take(8), [5, 6, 1, 2, 3, 1, 2, 3]);
        assert_eq!(PrefixStream::identity(1).take(3), [1, 2, 3]);
        assert_eq!(s.limsup(), Some(3));
        assert_eq!(s.liminf(), Some(1));
    }

    #[test]
    fn zero_matrix_gives_identity() {
        assert_eq!(matrix_to_nseq(&MatrixSpec::zero(), 6), [0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn row_of_ones_recurs() {
        let mut rows = vec![PrefixStream::constant(0); 3];
        rows.push(PrefixStream::constant(1));
        let mat = MatrixSpec::new(rows, PrefixStream::constant(0)).unwrap();
        let out = matrix_to_nseq(&mat, 1 << 12);
        for (k, v) in out.iter().enumerate() {
            assert_eq!(*v == 3 && k != 3, unpair(k as u64).0 == 3 && k != 3);
        }
        assert!(!mat.rows_finite());
    }

    #[test]
    fn shift_images_match_prefixes() {
        let x = periodic(&[1, 0, 0], &[0, 1]);
        for by in 0..6 {
            let g = PrefixMap::Shift { by };
            assert_eq!(g.image(&x).take(10), g.eval(&x.take(20), 10).unwrap());
        }
        let y = PrefixStream::new(vec![3, 4], TailSpec::IdentityGrowth { offset: 7 }).unwrap();
        for by in 0..5 {
            let g = PrefixMap::Shift { by };
            assert_eq!(g.image(&y).take(10), g.eval(&y.take(20), 10).unwrap());
        }
    }

    #[test]
    fn indicator_of_growth_is_finite() {
        let x = PrefixStream::identity(2);
        let img = PrefixMap::Indicator { value: 5 }.image(&x);
        assert!(img.eventually_zero());
        assert_eq!(img.take(6), [0, 0, 0, 1, 0, 0]);
    }

    #[test]
    fn demand_error() {
        let err = family_to_matrix(&[PrefixMap::Shift { by: 4 }], &[0, 1, 0], 2).unwrap_err();
        assert!(matches!(
            err,
            Error::PrefixDemand {
                demanded: 6,
                available: 3
            }
        ));
    }

    #[test]
    fn json_shape() {
        let s = PrefixStream::identity(0);
        assert_eq!(
            serde_json::to_value(&s).unwrap(),
            serde_json::json!({"prefix": [], "tail": {"kind": "identityGrowth", "offset": 0}})
        );
        assert_eq!(PrefixStream::from_json(&s.to_json()).unwrap(), s);
        assert!(
            PrefixStream::from_json(r#"{"prefix":[],"tail":{"kind":"periodic","period":[]}}"#)
                .is_err()
        );
    }
}
