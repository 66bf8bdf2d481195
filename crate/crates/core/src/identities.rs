//! Bernoulli-number identities evaluated exactly. Every evaluator returns a
//! residual (left-hand side minus right-hand side) that should be zero.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{bernoulli, binomial, factorial, int, Rational};

/// `c(p,q) = (-1)^q B_{p+q}/(p+q)! C(p+q, q)`, the coefficient of
/// `x^p y x^q` in the Bernoulli tail of `D(su)`.
pub fn c_coeff(p: usize, q: usize) -> Rational {
    let n = p + q;
    let v = bernoulli(n) / factorial(n) * binomial(n, q as i64);
    if q.is_multiple_of(2) {
        v
    } else {
        -v
    }
}

/// `c(p,q) + sum_{i=0}^{p} c(p+1-i,q) c(i,0) - sum_{j=0}^{q} c(p,q+1-j) c(0,j)`
/// for an arbitrary coefficient table.
pub fn eq4_residual_with(c: impl Fn(usize, usize) -> Rational, p: usize, q: usize) -> Rational {
    let mut r = c(p, q);
    for i in 0..=p {
        r += c(p + 1 - i, q) * c(i, 0);
    }
    for j in 0..=q {
        r -= c(p, q + 1 - j) * c(0, j);
    }
    r
}

pub fn eq4_residual(p: usize, q: usize) -> Rational {
    eq4_residual_with(c_coeff, p, q)
}

/// `-n B_n - sum_{k=1}^{n} C(n,k) B_k B_{n-k} - n B_{n-1}`.
pub fn recursion_residual(n: usize) -> Result<Rational> {
    if n == 0 {
        return Err(Error::Domain("recursion residual needs n >= 1".into()));
    }
    let nn = int(n as i64);
    let mut r = -(&nn * bernoulli(n)) - &nn * bernoulli(n - 1);
    for k in 1..=n {
        r -= binomial(n, k as i64) * bernoulli(k) * bernoulli(n - k);
    }
    Ok(r)
}

fn scaled(k: usize) -> Rational {
    bernoulli(k) / factorial(k)
}

/// `-(n+1) B_n/n! - sum_{k=2}^{n-2} B_k/k! B_{n-k}/(n-k)!`, for even `n > 2`.
pub fn euler_residual(n: usize) -> Result<Rational> {
    if !n.is_multiple_of(2) || n <= 2 {
        return Err(Error::Domain(format!("Euler's formula needs an even n > 2, got {n}")));
    }
    let mut r = -int(n as i64 + 1) * scaled(n);
    for k in 2..=n - 2 {
        r -= scaled(k) * scaled(n - k);
    }
    Ok(r)
}

/// How the two sums on the right of the generalized Euler identity are joined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GenEulerVariant {
    /// `first - second`, as the identity is usually printed.
    AsPrinted,
    /// `first + second`, the form obtained by substituting `c(p,q)` into the
    /// `x^p y² x^q` coefficient identity with `n = p+q+1`, `m = p`.
    SumCorrected,
}

impl GenEulerVariant {
    pub const ALL: [GenEulerVariant; 2] = [GenEulerVariant::AsPrinted, GenEulerVariant::SumCorrected];

    pub fn label(self) -> &'static str {
        match self {
            GenEulerVariant::AsPrinted => "as-printed",
            GenEulerVariant::SumCorrected => "sum-corrected",
        }
    }
}

impl std::str::FromStr for GenEulerVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "as-printed" => Ok(GenEulerVariant::AsPrinted),
            "sum-corrected" => Ok(GenEulerVariant::SumCorrected),
            other => Err(Error::Domain(format!("unknown variant `{other}`"))),
        }
    }
}

/// The two right-hand sums
/// `S1 = sum_{i=2}^{m} B_i/i! B_{n-i}/(n-i)! C(n-i, n-m-1)` and
/// `S2 = sum_{j=2}^{n-m-1} B_j/j! B_{n-j}/(n-j)! C(n-j, m)`.
/// A sum whose upper index is below 2 is zero.
pub fn gen_euler_sums(n: usize, m: usize) -> (Rational, Rational) {
    let mut first = Rational::zero();
    for i in 2..=m {
        first += scaled(i) * scaled(n - i) * binomial(n - i, (n - m - 1) as i64);
    }
    let mut second = Rational::zero();
    for j in 2..=(n - m - 1) {
        second += scaled(j) * scaled(n - j) * binomial(n - j, m as i64);
    }
    (first, second)
}

/// LHS minus RHS of `-B_n/n! C(n+1, n-m) = S1 ∓ S2`, for even `n >= 2`
/// and `0 <= m <= n-1`.
pub fn gen_euler_residual(n: usize, m: usize, variant: GenEulerVariant) -> Result<Rational> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::Domain(format!("generalized Euler identity needs an even n >= 2, got {n}")));
    }
    if m > n - 1 {
        return Err(Error::Domain(format!("generalized Euler identity needs 0 <= m <= n-1, got m = {m}, n = {n}")));
    }
    let lhs = -scaled(n) * binomial(n + 1, (n - m) as i64);
    let (first, second) = gen_euler_sums(n, m);
    let rhs = match variant {
        GenEulerVariant::AsPrinted => first - second,
        GenEulerVariant::SumCorrected => first + second,
    };
    Ok(lhs - rhs)
}

/// First `(n, m)` in `(n asc, m asc)` order, over even `n` in
/// `min_n..=max_n`, where the variant has a nonzero residual.
pub fn gen_euler_first_failure(
    min_n: usize,
    max_n: usize,
    variant: GenEulerVariant,
) -> Result<Option<((usize, usize), Rational)>> {
    let start = min_n.max(2) + min_n.max(2) % 2;
    for n in (start..=max_n).step_by(2) {
        for m in 0..n {
            let r = gen_euler_residual(n, m, variant)?;
            if !r.is_zero() {
                return Ok(Some(((n, m), r)));
            }
        }
    }
    Ok(None)
}
