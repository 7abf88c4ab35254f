#![allow(dead_code)]

use std::sync::Arc;

use cftype::cf::{Generator, PartialQuotients};
use cftype::trail::{
    build_prescribed_type_trail, trail_to_quotients, RationalTarget, Trail, Vertex,
};
use cftype::{BigRational, Expansion, DEFAULT_DIGIT_BUDGET};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

fn quotient_at(seed: u64, i: usize) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ i as u64);
    match rng.gen_range(0..20) {
        0 => rng.gen_range(50..1000),
        1..=4 => rng.gen_range(5..50),
        _ => rng.gen_range(1..5),
    }
}

/// Infinite expansion with pseudo-random quotients, reproducible from `seed`.
pub fn random_expansion(seed: u64) -> Expansion {
    let a0 = (seed % 5) as i64 - 2;
    let gen = Generator::Callback(Arc::new(move |i| Some(BigInt::from(quotient_at(seed, i)))));
    PartialQuotients::with_generator(BigInt::from(a0), Vec::new(), gen).unwrap()
}

pub fn constructed_trail(t: &str, n: usize) -> Trail {
    let start = Vertex::from_u64(1, 2).unwrap();
    build_prescribed_type_trail(
        &start,
        &RationalTarget::parse(t).unwrap(),
        n,
        DEFAULT_DIGIT_BUDGET,
    )
    .unwrap()
}

/// Number of prescribed type `t` read off a constructed trail.
pub fn constructed_number(t: &str, n: usize) -> Expansion {
    trail_to_quotients(&constructed_trail(t, n)).unwrap()
}
