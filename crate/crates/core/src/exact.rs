//! Exact rational scalars, binomials, factorials and Bernoulli numbers.
//!
//! Bernoulli numbers follow the convention `B_1 = -1/2`, produced by the
//! recursion
//!
//! ```text
//! -n B_n = sum_{k=1}^{n} C(n,k) B_k B_{n-k} + n B_{n-1},   B_0 = 1.
//! ```
//!
//! The `k = n` summand is `B_n` itself, so the recursion is solved for `B_n`
//! by moving it to the left-hand side.

use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// The only scalar in the system: an arbitrary-precision fraction in lowest terms.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num/den` reduced to lowest terms. Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Canonical `"p/q"` rendering, integers as `"p"`.
pub fn render(r: &Rational) -> String {
    r.to_string()
}

pub fn factorial(n: usize) -> Rational {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= k;
    }
    Rational::from_integer(acc)
}

/// `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: usize, k: i64) -> Rational {
    if k < 0 || k as usize > n {
        return Rational::zero();
    }
    let k = (k as usize).min(n - k as usize);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    Rational::from_integer(acc)
}

fn table() -> &'static RwLock<Vec<Rational>> {
    static TABLE: OnceLock<RwLock<Vec<Rational>>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(vec![Rational::one()]))
}

/// `B_n` with `B_1 = -1/2`. Memoized; behaves as a pure function.
pub fn bernoulli(n: usize) -> Rational {
    if let Some(b) = table().read().expect("bernoulli table poisoned").get(n) {
        return b.clone();
    }
    let mut values = table().write().expect("bernoulli table poisoned");
    // Another thread may have extended the table while we waited.
    while values.len() <= n {
        let m = values.len();
        let next = next_bernoulli(&values, m);
        values.push(next);
    }
    values[n].clone()
}

/// The first `count` Bernoulli numbers `B_0..B_{count-1}`.
pub fn bernoulli_table(count: usize) -> Vec<Rational> {
    if count == 0 {
        return Vec::new();
    }
    bernoulli(count - 1);
    table().read().expect("bernoulli table poisoned")[..count].to_vec()
}

// (n + 1) B_n = -( sum_{k=1}^{n-1} C(n,k) B_k B_{n-k} + n B_{n-1} )
fn next_bernoulli(prev: &[Rational], n: usize) -> Rational {
    let mut rhs = int(n as i64) * &prev[n - 1];
    for k in 1..n {
        rhs += binomial(n, k as i64) * &prev[k] * &prev[n - k];
    }
    -rhs / int(n as i64 + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: B_n from the classical generating-function recurrence
    /// sum_{k=0}^{n} C(n+1,k) B_k = 0 (n >= 1), which yields B_1 = -1/2.
    fn oracle(max: usize) -> Vec<Rational> {
        let mut b = vec![Rational::one()];
        for n in 1..=max {
            let mut s = Rational::zero();
            for (k, bk) in b.iter().enumerate() {
                s += binomial(n + 1, k as i64) * bk;
            }
            b.push(-s / int(n as i64 + 1));
        }
        b
    }

    #[test]
    fn small_values() {
        assert_eq!(bernoulli(0), int(1));
        assert_eq!(bernoulli(1), ratio(-1, 2));
        assert_eq!(bernoulli(2), ratio(1, 6));
        assert_eq!(bernoulli(3), int(0));
        assert_eq!(bernoulli(4), ratio(-1, 30));
        assert_eq!(bernoulli(6), ratio(1, 42));
    }

    #[test]
    fn matches_independent_recurrence() {
        let reference = oracle(60);
        assert_eq!(bernoulli_table(61), reference);
    }

    #[test]
    fn odd_indices_vanish() {
        for n in (3..60).step_by(2) {
            assert!(bernoulli(n).is_zero(), "B_{n} != 0");
        }
    }

    #[test]
    fn binomial_edges() {
        assert_eq!(binomial(5, 4), int(5));
        assert_eq!(binomial(7, 0), int(1));
        assert_eq!(binomial(2, 3), int(0));
        assert_eq!(binomial(2, -1), int(0));
        for n in 0..30usize {
            for k in 0..=n as i64 {
                assert_eq!(binomial(n, k), binomial(n, n as i64 - k));
                if n > 0 {
                    assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
                }
            }
        }
    }

    #[test]
    fn coefficient_readings_agree() {
        for n in 0..=30usize {
            for q in 0..=n {
                let p = n - q;
                let lhs = bernoulli(n) / factorial(n) * binomial(n, q as i64);
                let rhs = bernoulli(n) / (factorial(p) * factorial(q));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn concurrent_access_is_consistent() {
        let handles: Vec<_> = (0..8)
            .map(|t| std::thread::spawn(move || (0..40).map(|n| bernoulli((n * 7 + t) % 50)).collect::<Vec<_>>()))
            .collect();
        let reference = oracle(50);
        for (t, h) in handles.into_iter().enumerate() {
            for (n, b) in h.join().unwrap().into_iter().enumerate() {
                assert_eq!(b, reference[(n * 7 + t) % 50]);
            }
        }
    }

    #[test]
    fn rendering() {
        assert_eq!(render(&ratio(-2, 4)), "-1/2");
        assert_eq!(render(&int(3)), "3");
    }
}
