//! Baker-Campbell-Hausdorff series `BCH(y,x) = log(e^y e^x)` over the
//! two-letter alphabet `{y, x}`.
//!
//! The series is assembled from formal products only, so no grading enters.
//! The alphabet still carries degrees (`y` odd, `x` even) so that the
//! substitution `y ↦ u' - u`, `x ↦ su` into the cylinder is degree-preserving.

use std::sync::Arc;

use crate::error::Result;
use crate::exact::{bernoulli, factorial, int, Rational};
use crate::freeseries::{exp, log1p, Alphabet, Letter, Series, Word};

pub const Y: Letter = Letter(0);
pub const X: Letter = Letter(1);

pub fn bch_alphabet() -> Arc<Alphabet> {
    Alphabet::from_pairs(&[("y", -1), ("x", 0)]).expect("static alphabet")
}

/// `log1p(e^y e^x - 1)` through word length `order`.
pub fn bch_log(order: usize) -> Result<Series> {
    let al = bch_alphabet();
    let y = Series::letter(&al, order, Y);
    let x = Series::letter(&al, order, X);
    let product = exp(&y)?.product(&exp(&x)?)?;
    log1p(&(product - Series::one(&al, order)))
}

/// The double sum
/// `sum_k (-1)^{k-1}/k sum y^{p_1} x^{q_1} ... y^{p_k} x^{q_k} / (p_1! q_1! ... p_k! q_k!)`
/// over block tuples with every `p_i + q_i > 0` and total weight `<= order`.
pub fn bch_direct(order: usize) -> Series {
    let al = bch_alphabet();
    let mut out = Vec::new();
    let mut word = Vec::with_capacity(order);
    blocks(order, 0, &int(1), &mut word, &mut out);
    Series::from_terms(&al, order, out)
}

fn blocks(room: usize, k: usize, weight: &Rational, word: &mut Vec<u8>, out: &mut Vec<(Word, Rational)>) {
    if k > 0 {
        let sign = if k % 2 == 1 { int(1) } else { int(-1) };
        out.push((Word(word.clone()), sign * weight / int(k as i64)));
    }
    for total in 1..=room {
        for p in 0..=total {
            let q = total - p;
            let len = word.len();
            word.extend(std::iter::repeat_n(Y.0, p));
            word.extend(std::iter::repeat_n(X.0, q));
            let w = weight / (factorial(p) * factorial(q));
            blocks(room - total, k + 1, &w, word, out);
            word.truncate(len);
        }
    }
}

/// Restriction of `s` to words containing `g` exactly once.
pub fn linear_part(s: &Series, g: Letter) -> Series {
    s.filter(|w| w.count(g) == 1)
}

/// `sum_{n < order} sum_{p+q=n} (-1)^q B_n/(p! q!) x^p y x^q`, which for even
/// `x` equals `sum_n B_n/n! ad_x^n(y)`.
pub fn bch_linear_closed(order: usize) -> Series {
    bch_linear_with(order, |p, q| {
        let sign = if q % 2 == 0 { int(1) } else { int(-1) };
        sign * bernoulli(p + q) / (factorial(p) * factorial(q))
    })
}

/// `sum c(p,q) x^p y x^q` for an arbitrary coefficient table.
pub fn bch_linear_with(order: usize, c: impl Fn(usize, usize) -> Rational) -> Series {
    let al = bch_alphabet();
    let mut terms = Vec::new();
    for n in 0..order {
        for p in 0..=n {
            let q = n - p;
            let mut w = vec![X.0; p];
            w.push(Y.0);
            w.extend(std::iter::repeat_n(X.0, q));
            terms.push((Word(w), c(p, q)));
        }
    }
    Series::from_terms(&al, order, terms)
}
