//! Seeded generators of sparse random series for the randomized checks,
//! and a small free target model with a flat generator.

use std::sync::Arc;

use rand::Rng;

use crate::error::Result;
use crate::exact::{ratio, Rational};
use crate::freeseries::{Alphabet, Derivation, Series, Word};
use crate::models::{DifferentialModel, ModelKind};

/// Nonzero rational with small numerator and denominator.
pub fn small_rational<R: Rng>(rng: &mut R) -> Rational {
    let mut num = 0;
    while num == 0 {
        num = rng.gen_range(-5i64..=5);
    }
    ratio(num, rng.gen_range(1i64..=4))
}

/// Random word of exactly `degree`, with length in `1..=max_len`, by rejection.
pub fn random_word<R: Rng>(rng: &mut R, al: &Alphabet, degree: i32, max_len: usize) -> Word {
    loop {
        let len = rng.gen_range(1..=max_len);
        let w = Word((0..len).map(|_| rng.gen_range(0..al.len()) as u8).collect());
        if al.word_degree(&w) == degree {
            return w;
        }
    }
}

/// Sparse homogeneous series: `1..=max_terms` random words of `degree`.
pub fn random_series<R: Rng>(
    rng: &mut R,
    al: &Arc<Alphabet>,
    order: usize,
    degree: i32,
    max_len: usize,
    max_terms: usize,
) -> Series {
    loop {
        let n = rng.gen_range(1..=max_terms);
        let terms: Vec<_> = (0..n).map(|_| (random_word(rng, al, degree, max_len), small_rational(rng))).collect();
        let s = Series::from_terms(al, order, terms);
        if !s.is_zero() {
            return s;
        }
    }
}

pub fn free_target_alphabet() -> Arc<Alphabet> {
    Alphabet::from_pairs(&[("v", -1), ("e", 0), ("h", 1)]).expect("static alphabet")
}

/// Free DGL on `v` (flat, degree −1), `e` (degree 0, closed) and `h`
/// (degree 1, `∂h = e`). Degree-0 words such as `v⊗h` give gauge
/// parameters with nonzero differential.
pub fn model_free_target(order: usize) -> Result<DifferentialModel> {
    let al = free_target_alphabet();
    let v = Series::generator(&al, order, "v")?;
    let images = vec![-(&v * &v), Series::zero(&al, order), Series::generator(&al, order, "e")?];
    DifferentialModel::new("free-target", ModelKind::Lie, Derivation::new(&al, -1, images)?)
}
