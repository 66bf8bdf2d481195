//! Maurer-Cartan elements and the gauge action of degree-0 elements.
//!
//! Only degree-0 gauge parameters are supported, so `ad_x` preserves degree
//! and every operator series below is sign-free. Local nilpotency is
//! replaced by word-length truncation: each application of `ad_x` adds at
//! least one letter, so every operator series is a finite sum.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{bernoulli, factorial, int, Rational};
use crate::freeseries::{bracket, AlgebraMorphism, Series};
use crate::models::{ls_alphabet, DifferentialModel};

/// `sum_n coeff(n) ad_x^n(y)`, stopping once the iterated bracket vanishes.
fn ad_series(x: &Series, y: &Series, coeff: impl Fn(usize) -> Rational) -> Result<Series> {
    x.require_degree(0)?;
    let mut acc = Series::zero(y.alphabet(), y.order().min(x.order()));
    let mut term = y.truncate(acc.order());
    let mut n = 0;
    while !term.is_zero() {
        acc.add_scaled(&term, &coeff(n))?;
        term = bracket(x, &term)?;
        n += 1;
    }
    Ok(acc)
}

/// `e^{ad_x}(y) = sum ad_x^n(y) / n!`.
pub fn op_exp_ad(x: &Series, y: &Series) -> Result<Series> {
    ad_series(x, y, |n| int(1) / factorial(n))
}

/// `f_x(y) = ((e^{ad_x} - id) / ad_x)(y) = sum ad_x^n(y) / (n+1)!`.
pub fn op_f(x: &Series, y: &Series) -> Result<Series> {
    ad_series(x, y, |n| int(1) / factorial(n + 1))
}

/// `f_x^{-1}(y) = (ad_x / (e^{ad_x} - id))(y) = sum B_n ad_x^n(y) / n!`.
pub fn op_f_inv(x: &Series, y: &Series) -> Result<Series> {
    ad_series(x, y, |n| bernoulli(n) / factorial(n))
}

#[derive(Debug, Clone)]
pub struct McCheck {
    pub flat: bool,
    /// `∂s + ½[s,s]`.
    pub residual: Series,
}

/// Tests `∂s = -½[s,s]` through the model's order.
pub fn is_mc(model: &DifferentialModel, s: &Series) -> Result<McCheck> {
    s.require_degree(-1)?;
    let s = s.truncate(model.order());
    let residual = model.d(&s)?.try_add(&bracket(&s, &s)?.scale(&crate::exact::ratio(1, 2)))?;
    Ok(McCheck { flat: residual.is_zero(), residual })
}

fn check_gauge_degrees(x: &Series, a: &Series) -> Result<()> {
    x.require_degree(0)?;
    a.require_degree(-1)
}

/// `x * a = e^{ad_x}(a) - f_x(∂x)`.
pub fn gauge(model: &DifferentialModel, x: &Series, a: &Series) -> Result<Series> {
    check_gauge_degrees(x, a)?;
    let x = x.truncate(model.order());
    let dx = model.d(&x)?;
    op_exp_ad(&x, a)?.try_sub(&op_f(&x, &dx)?)
}

/// Coefficients of the polynomial path `p(t) = sum a_i t^i` solving the
/// linear flow whose time-1 value is the gauge action.
#[derive(Debug, Clone)]
pub struct GaugePath {
    pub x: Series,
    pub coefficients: Vec<Series>,
}

impl GaugePath {
    pub fn evaluate(&self, t: &Rational) -> Series {
        let mut acc = Series::zero(self.x.alphabet(), self.coefficients.first().map_or(self.x.order(), Series::order));
        let mut power = int(1);
        for c in &self.coefficients {
            acc.add_scaled(c, &power).expect("path coefficients share an alphabet");
            power *= t;
        }
        acc
    }

    pub fn at_one(&self) -> Series {
        self.evaluate(&int(1))
    }
}

fn build_path(x: Series, a0: Series, a1: Series, step: impl Fn(&Series, usize) -> Result<Series>) -> Result<GaugePath> {
    let mut coefficients = vec![a0, a1];
    let mut n = 1;
    while !coefficients[n].is_zero() {
        let next = step(&coefficients[n], n)?;
        coefficients.push(next);
        n += 1;
    }
    coefficients.pop();
    Ok(GaugePath { x, coefficients })
}

/// Power-series solution of `p' = ad_x p - ∂x`, `p(0) = a`:
/// `a_1 = [x,a] - ∂x`, `a_{n+1} = [x,a_n] / (n+1)`. Its value at `t = 1`
/// is `gauge(model, x, a)`.
pub fn gauge_ode(model: &DifferentialModel, x: &Series, a: &Series) -> Result<GaugePath> {
    check_gauge_degrees(x, a)?;
    let x = x.truncate(model.order());
    let a = a.truncate(model.order());
    let a1 = bracket(&x, &a)?.try_sub(&model.d(&x)?)?;
    let xs = x.clone();
    build_path(x, a, a1, move |an, n| Ok(bracket(&xs, an)?.scale(&(int(1) / int(n as i64 + 1)))))
}

/// The recursion with the opposite orientation,
/// `a_1 = ∂x - [x,a]`, `a_{n+1} = -[x,a_n] / (n+1)`, i.e. the flow
/// `p' = ∂x - ad_x p`. Its value at `t = 1` is `gauge(model, -x, a)`.
pub fn gauge_ode_reversed(model: &DifferentialModel, x: &Series, a: &Series) -> Result<GaugePath> {
    check_gauge_degrees(x, a)?;
    let x = x.truncate(model.order());
    let a = a.truncate(model.order());
    let a1 = model.d(&x)?.try_sub(&bracket(&x, &a)?)?;
    let xs = x.clone();
    build_path(x, a, a1, move |an, n| Ok(bracket(&xs, an)?.scale(&(int(-1) / int(n as i64 + 1)))))
}

/// The morphism `Φ: L → target` with `Φ(a) = w * v`, `Φ(b) = v`, `Φ(z) = w`.
pub fn morphism_from_gauge(w: &Series, v: &Series, target: &DifferentialModel) -> Result<AlgebraMorphism> {
    w.require_degree(0)?;
    let check = is_mc(target, v)?;
    if !check.flat {
        let (word, c) = check.residual.leading_term().expect("nonzero residual");
        return Err(Error::NotMaurerCartan {
            residual: format!("{}·{}", crate::exact::render(c), check.residual.word_text(word)),
        });
    }
    if !w.constant_term().is_zero() {
        return Err(Error::ConstantTerm { op: "gauge parameter", constant: crate::exact::render(&w.constant_term()) });
    }
    let order = target.order();
    let u = gauge(target, w, v)?;
    AlgebraMorphism::from_named(
        &ls_alphabet(),
        target.alphabet(),
        vec![("a", u), ("b", v.truncate(order)), ("z", w.truncate(order))],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;
    use crate::models::{chain_map_check, model_ls};

    #[test]
    fn flat_generators_and_zero() {
        let m = model_ls(5).unwrap();
        assert!(is_mc(&m, &m.generator("a").unwrap()).unwrap().flat);
        assert!(is_mc(&m, &m.generator("b").unwrap()).unwrap().flat);
        assert!(is_mc(&m, &m.zero()).unwrap().flat);
        assert!(matches!(is_mc(&m, &m.generator("z").unwrap()), Err(Error::Degree { .. })));
    }

    #[test]
    fn sum_of_flat_generators_is_not_flat() {
        let m = model_ls(5).unwrap();
        let s = &m.generator("a").unwrap() + &m.generator("b").unwrap();
        let check = is_mc(&m, &s).unwrap();
        assert!(!check.flat);
        // ∂(a+b) + ½[a+b,a+b] = -aa - bb + aa + bb + ab + ba = ab + ba = [a,b].
        let ab = bracket(&m.generator("a").unwrap(), &m.generator("b").unwrap()).unwrap();
        assert_eq!(check.residual, ab);
    }

    #[test]
    fn operator_edge_cases() {
        let m = model_ls(6).unwrap();
        let (z, b) = (m.generator("z").unwrap(), m.generator("b").unwrap());
        assert_eq!(op_exp_ad(&m.zero(), &b).unwrap(), b);
        let f = op_f(&z, &b).unwrap();
        let low = f.truncate(2);
        assert_eq!(low, &b + &bracket(&z, &b).unwrap().scale(&ratio(1, 2)));
        assert_eq!(op_f_inv(&z, &f).unwrap(), b);
        assert!(matches!(op_f(&b, &z), Err(Error::Degree { .. })));
    }

    #[test]
    fn trivial_gauge() {
        let m = model_ls(6).unwrap();
        let a = m.generator("a").unwrap();
        assert_eq!(gauge(&m, &m.zero(), &a).unwrap(), a);
        let path = gauge_ode(&m, &m.zero(), &a).unwrap();
        assert_eq!(path.coefficients, vec![a.clone()]);
    }

    #[test]
    fn z_carries_b_to_a() {
        let m = model_ls(7).unwrap();
        let got = gauge(&m, &m.generator("z").unwrap(), &m.generator("b").unwrap()).unwrap();
        assert_eq!(got, m.generator("a").unwrap());
    }

    #[test]
    fn first_path_coefficient() {
        let m = model_ls(6).unwrap();
        let (z, a) = (m.generator("z").unwrap(), m.generator("a").unwrap());
        let zz = &z * &z;
        let path = gauge_ode(&m, &zz, &a).unwrap();
        let expected = bracket(&zz, &a).unwrap() - m.d(&zz).unwrap();
        assert_eq!(path.coefficients[1], expected);
        let rev = gauge_ode_reversed(&m, &zz, &a).unwrap();
        assert_eq!(rev.coefficients[1], -expected);
    }

    #[test]
    fn reversed_path_is_action_of_negative() {
        let m = model_ls(7).unwrap();
        let z = m.generator("z").unwrap();
        let x = &z + &(&z * &z).scale(&ratio(-2, 3));
        let b = m.generator("b").unwrap();
        let rev = gauge_ode_reversed(&m, &x, &b).unwrap().at_one();
        assert_eq!(rev, gauge(&m, &-&x, &b).unwrap());
        assert_ne!(rev, gauge(&m, &x, &b).unwrap());
    }

    #[test]
    fn identity_morphism_from_gauge() {
        let m = model_ls(6).unwrap();
        let phi = morphism_from_gauge(&m.generator("z").unwrap(), &m.generator("b").unwrap(), &m).unwrap();
        assert_eq!(phi, AlgebraMorphism::identity(m.alphabet(), 6));
        assert!(chain_map_check(&phi, &m, &m).unwrap().passed());
    }

    #[test]
    fn constant_path_morphism() {
        let m = model_ls(6).unwrap();
        let a = m.generator("a").unwrap();
        let phi = morphism_from_gauge(&m.zero(), &a, &m).unwrap();
        assert_eq!(phi.image("a").unwrap(), &a);
        assert_eq!(phi.image("b").unwrap(), &a);
        assert!(phi.image("z").unwrap().is_zero());
        assert!(chain_map_check(&phi, &m, &m).unwrap().passed());
    }

    #[test]
    fn non_flat_target_rejected() {
        let m = model_ls(5).unwrap();
        let v = &m.generator("a").unwrap() + &m.generator("b").unwrap();
        assert!(matches!(
            morphism_from_gauge(&m.generator("z").unwrap(), &v, &m),
            Err(Error::NotMaurerCartan { .. })
        ));
    }
}
