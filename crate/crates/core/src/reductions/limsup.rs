//! Block construction of a trail whose `ell`-limsup matches the limsup of a
//! caller-supplied function of finite trails.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exact::decimal_digits;
use crate::trail::{
    ell_compare, min_admissible_y, target_step, Certificate, TargetStep, Trail, Vertex,
};
use crate::BigRational;

/// A labeling `ell_hat: V -> [base, inf)` that can be steered into any
/// `[t, t + eps)` in one step of the relation `B` from vertices with `y > M(eps)`.
///
/// `B` is taken inside the edge relation of the graph so that steps carry labels.
pub trait TargetControlled {
    fn base(&self) -> BigRational;

    /// An acceptable `M(eps)`.
    fn bound(&self, eps: &BigRational) -> Result<BigUint>;

    /// Membership `(v, w) in B`.
    fn related(&self, v: &Vertex, w: &Vertex) -> bool;

    /// A step `(v, w) in B` with `ell_hat(w)` in `[t, t + eps)`.
    fn target(&self, v: &Vertex, t: &BigRational, eps: &BigRational) -> Result<TargetStep>;

    /// Exact `ell_hat(w)` in `[lo, hi)`.
    fn value_in(&self, w: &Vertex, lo: &BigRational, hi: &BigRational) -> Result<bool>;
}

/// `ell(x, y) = log y / log x` with `B` the full edge relation, base 1, and
/// `M(eps)` the least integer above `(10/eps)^(1/eps)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct EllInstance;

impl TargetControlled for EllInstance {
    fn base(&self) -> BigRational {
        BigRational::one()
    }

    fn bound(&self, eps: &BigRational) -> Result<BigUint> {
        min_admissible_y(eps)
    }

    fn related(&self, v: &Vertex, w: &Vertex) -> bool {
        w.x() == v.y() && w.y() > v.x() && (w.y() - v.x()).is_multiple_of(v.y())
    }

    fn target(&self, v: &Vertex, t: &BigRational, eps: &BigRational) -> Result<TargetStep> {
        target_step(v, t, eps)
    }

    fn value_in(&self, w: &Vertex, lo: &BigRational, hi: &BigRational) -> Result<bool> {
        Ok(ell_compare(w, lo)? != Ordering::Less && ell_compare(w, hi)? == Ordering::Less)
    }
}

/// `u` on the finite trail `(v_1, ..., v_m)`; `None` stands for `-inf`.
pub type TrailCallback<'a> = dyn Fn(&[Vertex]) -> Result<Option<BigRational>> + 'a;

/// Steps `first..=last` of the trail, all targeted at `[target, target + eps)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub n: usize,
    pub target: BigRational,
    pub eps: BigRational,
    pub first: usize,
    pub last: usize,
    /// Whether the block ended because `y` passed `M(eps_{n+1})`.
    pub closed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimsupTrail {
    pub trail: Trail,
    pub blocks: Vec<Block>,
    /// `M_1, M_2, ...` as used.
    pub bounds: Vec<BigUint>,
}

fn dyadic(n: usize) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << n)
}

/// Runs `n` targeted steps of the block construction from `s`.
///
/// With `s` empty the trail starts at the auxiliary vertex `(M_1, M_1 + 1)`,
/// which is not passed to `u`. Block `n` uses `eps_n = 2^-n` and ends at the
/// first step whose `y` exceeds `M_{n+1}`. The next target is the largest real
/// value of `u` over the block's trails, or `-(n + 1)` if there is none; both
/// are raised to the base when below it. The first target is `u(s)` if real,
/// else the base.
pub fn limsup_builder<C: TargetControlled + ?Sized>(
    u: &TrailCallback<'_>,
    tc: &C,
    s: &[Vertex],
    n: usize,
    digit_budget: u64,
) -> Result<LimsupTrail> {
    let base = tc.base();
    let clamp = |t: BigRational| if t < base { base.clone() } else { t };
    let mut bounds = vec![tc.bound(&dyadic(1))?];

    let mut vs: Vec<Vertex> = s.to_vec();
    let mut trail = match s.split_first() {
        None => {
            let m1 = &bounds[0];
            Trail::new(Vertex::new(m1.clone(), m1 + 1u32)?)
        }
        Some((first, rest)) => {
            let mut t = Trail::new(first.clone());
            for w in rest {
                let v = t.last().clone();
                if !tc.related(&v, w) {
                    return Err(Error::InvalidArgument(format!(
                        "{v} -> {w} is not a step of B"
                    )));
                }
                t.push((w.y() - v.x()) / v.y(), w.clone());
            }
            if t.last().y() <= &bounds[0] {
                return Err(Error::PreconditionViolated {
                    y: t.last().y().to_string(),
                    eps: "1/2".into(),
                    min_y: (&bounds[0] + 1u32).to_string(),
                });
            }
            t
        }
    };

    let mut target = clamp(u(&vs)?.unwrap_or_else(|| base.clone()));
    let mut blocks = Vec::new();
    let mut block_n = 1usize;
    let mut block_first = trail.steps.len();
    let mut block_max: Option<BigRational> = None;

    for _ in 0..n {
        let eps = dyadic(block_n);
        let v = trail.last().clone();
        let step = tc.target(&v, &target, &eps)?;
        let hi = &target + &eps;
        if !tc.related(&v, &step.vertex) || !tc.value_in(&step.vertex, &target, &hi)? {
            return Err(Error::Domain(format!(
                "targeting certificate failed at {v}"
            )));
        }
        let digits = decimal_digits(step.vertex.y());
        if digits > digit_budget {
            return Err(Error::ResourceLimit {
                digits,
                budget: digit_budget,
            });
        }
        trail.certificates.push(Certificate {
            step: trail.steps.len(),
            index: block_n as u64,
            lo: target.clone(),
            hi,
        });
        trail.push(step.label, step.vertex.clone());
        vs.push(step.vertex.clone());
        if let Some(r) = u(&vs)? {
            block_max = Some(match block_max {
                Some(m) if m >= r => m,
                _ => r,
            });
        }

        if bounds.len() <= block_n {
            bounds.push(tc.bound(&dyadic(block_n + 1))?);
        }
        if step.vertex.y() > &bounds[block_n] {
            blocks.push(Block {
                n: block_n,
                target: target.clone(),
                eps,
                first: block_first,
                last: trail.steps.len() - 1,
                closed: true,
            });
            let fallback = -BigRational::from_integer(BigInt::from(block_n as u64 + 1));
            target = clamp(block_max.take().unwrap_or(fallback));
            block_n += 1;
            block_first = trail.steps.len();
        }
    }
    if block_first < trail.steps.len() {
        blocks.push(Block {
            n: block_n,
            target,
            eps: dyadic(block_n),
            first: block_first,
            last: trail.steps.len() - 1,
            closed: false,
        });
    }
    Ok(LimsupTrail {
        trail,
        blocks,
        bounds,
    })
}

impl LimsupTrail {
    /// Re-checks that every block ends at the first step with `y > M_{n+1}`.
    pub fn boundaries_exact(&self) -> bool {
        self.blocks.iter().all(|b| {
            let Some(next) = self.bounds.get(b.n) else {
                return !b.closed;
            };
            let inside = (b.first..b.last).all(|i| self.trail.steps[i].vertex.y() <= next);
            let end = self.trail.steps[b.last].vertex.y() > next;
            inside && end == b.closed
        })
    }
}
