//! Exact order decisions between integer powers.
//!
//! Every comparison of the form `a^ea` vs `b^eb` in this crate goes through
//! [`cmp_powers`]. The answer is always exact. It is obtained from, in order:
//! rigorous `f64` log2 bounds, interval bounds computed in a truncated binary
//! floating format with directed rounding at doubling precision, and as a last
//! resort the full integer powers. The first two stages only return when the
//! bounds separate, so they never change the result, only its cost.

use std::cmp::Ordering;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// Positive binary float `m * 2^e` used for directed-rounding bounds.
#[derive(Clone, Debug)]
struct Bf {
    m: BigUint,
    e: i64,
}

impl Bf {
    fn from_int(m: BigUint) -> Self {
        Bf { m, e: 0 }
    }

    /// Truncates the mantissa to `prec` bits, rounding toward zero or toward +inf.
    fn round(self, prec: u64, up: bool) -> Self {
        let bits = self.m.bits();
        if bits <= prec {
            return self;
        }
        let s = bits - prec;
        let exact = self.m.trailing_zeros().is_some_and(|tz| tz >= s);
        let mut m = self.m >> s;
        if up && !exact {
            m += 1u32;
        }
        Bf {
            m,
            e: self.e + s as i64,
        }
    }

    fn mul(&self, other: &Bf, prec: u64, up: bool) -> Bf {
        Bf {
            m: &self.m * &other.m,
            e: self.e + other.e,
        }
        .round(prec, up)
    }

    fn pow(&self, n: u64, prec: u64, up: bool) -> Bf {
        debug_assert!(n >= 1);
        let base = self.clone().round(prec, up);
        let mut acc = base.clone();
        for i in (0..63 - n.leading_zeros()).rev() {
            acc = acc.mul(&acc, prec, up);
            if (n >> i) & 1 == 1 {
                acc = acc.mul(&base, prec, up);
            }
        }
        acc
    }

    /// Quotient to roughly `prec` bits (truncated).
    fn div(&self, other: &Bf, prec: u64) -> Bf {
        let shift = (prec as i64 + other.m.bits() as i64 - self.m.bits() as i64 + 1).max(0);
        Bf {
            m: (&self.m << shift as usize) / &other.m,
            e: self.e - other.e - shift,
        }
    }

    fn add(&self, other: &Bf) -> Bf {
        let (hi, lo) = if self.e >= other.e {
            (self, other)
        } else {
            (other, self)
        };
        Bf {
            m: (&hi.m << (hi.e - lo.e) as usize) + &lo.m,
            e: lo.e,
        }
    }

    fn floor(&self) -> BigUint {
        if self.e >= 0 {
            &self.m << self.e as usize
        } else {
            &self.m >> (-self.e) as usize
        }
    }

    /// Exponent of the leading bit plus one.
    fn magnitude(&self) -> i64 {
        self.m.bits() as i64 + self.e
    }

    fn cmp(&self, other: &Bf) -> Ordering {
        if self.m.is_zero() || other.m.is_zero() {
            return self.m.is_zero().cmp(&other.m.is_zero()).reverse();
        }
        match self.magnitude().cmp(&other.magnitude()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        if self.e >= other.e {
            (&self.m << (self.e - other.e) as usize).cmp(&other.m)
        } else {
            self.m.cmp(&(&other.m << (other.e - self.e) as usize))
        }
    }
}

/// Rigorous enclosure of `log2(a)` for `a >= 1`.
pub(crate) fn log2_bounds(a: &BigUint) -> (f64, f64) {
    let bits = a.bits();
    let (lo, hi) = if bits <= 53 {
        let v = a.to_u64().expect("fits") as f64;
        let l = v.log2();
        (l, l)
    } else {
        let shift = bits - 53;
        let top = (a >> shift).to_u64().expect("53 bits");
        (
            shift as f64 + (top as f64).log2(),
            shift as f64 + ((top + 1) as f64).log2(),
        )
    };
    let tol = (hi.abs() + 64.0) * 8.0 * f64::EPSILON;
    ((lo - tol).max(0.0), hi + tol)
}

/// `log2(a)` as a display value; see [`log2_bounds`] for the error.
pub fn log2_approx(a: &BigUint) -> f64 {
    let (lo, hi) = log2_bounds(a);
    0.5 * (lo + hi)
}

/// Decimal digit count of `a >= 1`, possibly one too low.
pub fn decimal_digits(a: &BigUint) -> u64 {
    (a.bits().saturating_sub(1) as f64 * std::f64::consts::LOG10_2).floor() as u64 + 1
}

/// Compares `a^ea` with `b^eb` exactly.
pub fn cmp_powers(a: &BigUint, ea: u64, b: &BigUint, eb: u64) -> Ordering {
    // Dispose of 0 and 1 so that the general path sees bases >= 2 and exponents >= 1.
    let trivial = |base: &BigUint, exp: u64| -> Option<u8> {
        if exp == 0 || base.is_one() {
            Some(1)
        } else if base.is_zero() {
            Some(0)
        } else {
            None
        }
    };
    match (trivial(a, ea), trivial(b, eb)) {
        (Some(x), Some(y)) => return x.cmp(&y),
        // The non-trivial side is at least 2.
        (Some(_), None) => return Ordering::Less,
        (None, Some(_)) => return Ordering::Greater,
        (None, None) => {}
    }
    let g = ea.gcd(&eb);
    let (ea, eb) = (ea / g, eb / g);
    if a == b {
        return ea.cmp(&eb);
    }

    let (alo, ahi) = log2_bounds(a);
    let (blo, bhi) = log2_bounds(b);
    let widen = |x: f64| x * (1.0 + 8.0 * f64::EPSILON);
    let narrow = |x: f64| x * (1.0 - 8.0 * f64::EPSILON);
    let (la_lo, la_hi) = (narrow(alo * ea as f64), widen(ahi * ea as f64));
    let (lb_lo, lb_hi) = (narrow(blo * eb as f64), widen(bhi * eb as f64));
    if la_lo > lb_hi {
        return Ordering::Greater;
    }
    if la_hi < lb_lo {
        return Ordering::Less;
    }

    let exact_bits = (ea.saturating_mul(a.bits())).max(eb.saturating_mul(b.bits()));
    let base_a = Bf::from_int(a.clone());
    let base_b = Bf::from_int(b.clone());
    let mut prec = 128u64;
    while prec.saturating_mul(2) < exact_bits {
        let a_lo = base_a.pow(ea, prec, false);
        let b_hi = base_b.pow(eb, prec, true);
        if a_lo.cmp(&b_hi) == Ordering::Greater {
            return Ordering::Greater;
        }
        let a_hi = base_a.pow(ea, prec, true);
        let b_lo = base_b.pow(eb, prec, false);
        if a_hi.cmp(&b_lo) == Ordering::Less {
            return Ordering::Less;
        }
        prec *= 2;
    }
    let ea = u32::try_from(ea).expect("exponent too large for exact fallback");
    let eb = u32::try_from(eb).expect("exponent too large for exact fallback");
    a.pow(ea).cmp(&b.pow(eb))
}

/// Approximates `y^(p/q)` (typically to within a few units).
///
/// Only used as a starting point for exact searches; callers must certify the
/// result with [`cmp_powers`].
pub fn approx_pow_ratio(y: &BigUint, p: u64, q: u64) -> BigUint {
    assert!(q >= 1, "q must be positive");
    if p == 0 || y.is_one() {
        return BigUint::one();
    }
    if y.is_zero() {
        return BigUint::zero();
    }
    let g = p.gcd(&q);
    let (p, q) = (p / g, q / g);
    if q == 1 {
        return y.pow(u32::try_from(p).expect("exponent too large"));
    }
    let (lo, hi) = log2_bounds(y);
    let target = 0.5 * (lo + hi) * p as f64 / q as f64;
    let int_part = target.floor();
    let frac = target - int_part;
    let mant = (frac.exp2() * (1u64 << 52) as f64).round() as u64;
    let mut z = Bf {
        m: BigUint::from(mant),
        e: int_part as i64 - 52,
    };

    let final_prec = target.ceil() as u64 + 64;
    let base = Bf::from_int(y.clone());
    let q_bf = Bf::from_int(BigUint::from(q));
    let newton = |z: &Bf, prec: u64| -> Bf {
        let guard = prec + 32;
        let big_y = base.pow(p, guard, false);
        let zq1 = if q > 1 {
            z.pow(q - 1, guard, false)
        } else {
            Bf::from_int(BigUint::one())
        };
        let quot = big_y.div(&zq1, guard);
        let scaled = Bf {
            m: &z.m * BigUint::from(q - 1),
            e: z.e,
        };
        scaled.add(&quot).div(&q_bf, guard).round(prec, false)
    };
    let mut prec = 48u64;
    loop {
        prec = (prec * 2).min(final_prec);
        z = newton(&z, prec);
        if prec == final_prec {
            break;
        }
    }
    z = newton(&z, final_prec);
    z = newton(&z, final_prec);
    z.floor()
}

/// Least `a >= lower` with `pred(a)`, for a predicate that is monotone
/// (false below some threshold, true from it on). `guess` seeds a galloping
/// search, so a good guess costs two or three evaluations.
pub fn least_satisfying<F>(guess: BigUint, lower: BigUint, mut pred: F) -> BigUint
where
    F: FnMut(&BigUint) -> bool,
{
    let guess = guess.max(lower.clone());
    let (mut lo, mut hi);
    if pred(&guess) {
        hi = guess;
        let mut step = BigUint::one();
        loop {
            if hi <= lower {
                return hi;
            }
            let cand = if hi >= &lower + &step {
                &hi - &step
            } else {
                lower.clone()
            };
            if pred(&cand) {
                hi = cand;
                step <<= 1;
            } else {
                lo = cand;
                break;
            }
        }
    } else {
        lo = guess;
        let mut step = BigUint::one();
        loop {
            let cand = &lo + &step;
            if pred(&cand) {
                hi = cand;
                break;
            }
            lo = cand;
            step <<= 1;
        }
    }
    // Invariant: pred(lo) false, pred(hi) true.
    while &hi - &lo > BigUint::one() {
        let mid = (&lo + &hi) >> 1;
        if pred(&mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Floor of `k^(p/q) * 2^frac_bits`: the returned `r` satisfies
/// `r / 2^frac_bits <= k^(p/q) < (r + 1) / 2^frac_bits`.
pub fn scaled_root_floor(k: &BigUint, p: u32, q: u32, frac_bits: u64) -> BigUint {
    let radicand = k.pow(p) << (frac_bits as usize * q as usize);
    radicand.nth_root(q)
}
