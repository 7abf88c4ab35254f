//! Continuous map from positive sequences `beta` to trails, driven by a
//! dyadic schedule of targets `t_j = t + 2^(1-j)` and tolerances `eps_j = 2^-j`.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use super::PrefixStream;
use crate::error::{Error, Result};
use crate::exact::decimal_digits;
use crate::trail::{min_admissible_y, target_step, Certificate, Trail, Vertex};
use crate::BigRational;

pub const DEFAULT_JMAX: usize = 12;

/// `t_j`, `eps_j`, `U_j = [t_j, t_j + eps_j)` and thresholds `y_j` for `j = 1..=jmax`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScheduleConfig {
    pub t: BigRational,
    pub jmax: usize,
    t_j: Vec<BigRational>,
    eps_j: Vec<BigRational>,
    y_j: Vec<BigUint>,
}

impl ScheduleConfig {
    pub fn new(t: BigRational, jmax: usize) -> Result<Self> {
        if t < BigRational::one() {
            return Err(Error::InvalidArgument(format!("t = {t} must be >= 1")));
        }
        if jmax == 0 || jmax > 24 {
            return Err(Error::InvalidArgument(format!(
                "Jmax = {jmax} must lie in 1..=24"
            )));
        }
        let mut t_j = Vec::with_capacity(jmax);
        let mut eps_j = Vec::with_capacity(jmax);
        let mut y_j = Vec::with_capacity(jmax);
        for j in 1..=jmax {
            let eps = BigRational::new(BigInt::one(), BigInt::one() << j);
            t_j.push(&t + &eps * BigInt::from(2));
            y_j.push(min_admissible_y(&eps)?);
            eps_j.push(eps);
        }
        let s = ScheduleConfig {
            t,
            jmax,
            t_j,
            eps_j,
            y_j,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn t_j(&self, j: usize) -> &BigRational {
        &self.t_j[j - 1]
    }

    pub fn eps_j(&self, j: usize) -> &BigRational {
        &self.eps_j[j - 1]
    }

    pub fn y_j(&self, j: usize) -> &BigUint {
        &self.y_j[j - 1]
    }

    /// `t_j + eps_j`.
    pub fn upper(&self, j: usize) -> BigRational {
        self.t_j(j) + self.eps_j(j)
    }

    /// Exact check of the schedule's monotonicity and disjointness conditions.
    pub fn validate(&self) -> Result<()> {
        let fail = |what: &str| Err(Error::InvalidArgument(format!("schedule: {what}")));
        for j in 1..=self.jmax {
            if self.eps_j(j) >= &BigRational::one() || self.eps_j(j) <= &BigRational::zero() {
                return fail("eps_j must lie in (0, 1)");
            }
            if self.t_j(j) <= &self.t {
                return fail("t_j must exceed t");
            }
            if j > 1 {
                if self.t_j(j) >= self.t_j(j - 1) || self.eps_j(j) >= self.eps_j(j - 1) {
                    return fail("t_j and eps_j must strictly decrease");
                }
                if self.y_j(j) <= self.y_j(j - 1) {
                    return fail("y_j must strictly increase");
                }
            }
            for i in j + 1..=self.jmax {
                if self.upper(i) > *self.t_j(j) {
                    return fail("intervals U_j must be disjoint");
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WadgeTrail {
    pub trail: Trail,
    /// `j(n)` for `n = 1..=N`.
    pub js: Vec<usize>,
}

/// Builds `v_0 = (1, y_1 + 1)` and `v_n = target(v_{n-1}, t_j, eps_j)` with
/// `j = j(n)` the largest `j <= min(beta(n), Jmax)` such that `y_j < k_n`.
pub fn wadge_f(
    beta: &PrefixStream,
    sched: &ScheduleConfig,
    n: usize,
    digit_budget: u64,
) -> Result<WadgeTrail> {
    if n == 0 {
        return Err(Error::InvalidArgument("need N >= 1".into()));
    }
    sched.validate()?;
    let k1 = sched.y_j(1) + 1u32;
    let mut trail = Trail::new(Vertex::new(BigUint::one(), k1)?);
    let mut js = Vec::with_capacity(n);
    for step in 1..=n {
        let b = beta.get(step);
        if b == 0 {
            return Err(Error::InvalidArgument(format!(
                "beta({step}) = 0; beta must be positive"
            )));
        }
        let v = trail.last().clone();
        let cap = (b as usize).min(sched.jmax);
        let j = (1..=cap)
            .rev()
            .find(|&j| sched.y_j(j).cmp(v.y()) == Ordering::Less)
            .expect("y_1 < k_n");
        let next = target_step(&v, sched.t_j(j), sched.eps_j(j))?;
        let digits = decimal_digits(next.vertex.y());
        if digits > digit_budget {
            return Err(Error::ResourceLimit {
                digits,
                budget: digit_budget,
            });
        }
        trail.certificates.push(Certificate {
            step: trail.steps.len(),
            index: j as u64,
            lo: sched.t_j(j).clone(),
            hi: sched.upper(j),
        });
        trail.push(next.label, next.vertex);
        js.push(j);
    }
    Ok(WadgeTrail { trail, js })
}
