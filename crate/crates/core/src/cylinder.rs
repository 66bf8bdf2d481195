//! The one-generator cylinder `T(u ⊕ u' ⊕ su)`: the classical differential,
//! the Bernoulli-perturbed completion, the comparison morphism from the
//! Lawrence-Sullivan construction, and the `D²(su) = 0` machinery.
//!
//! Throughout, `x = su` (degree 0) and `y = u' - u` (degree −1), and `B`
//! denotes the Bernoulli tail of `D(su)`:
//! `D(su) = su⊗u' - u'⊗su + B`, `B = sum c(p,q) x^p y x^q`.

use std::sync::Arc;

use crate::bch::{bch_alphabet, bch_linear_with, X, Y};
use crate::error::{Error, Result};
use crate::exact::{int, Rational};
use crate::freeseries::{AlgebraMorphism, Alphabet, Derivation, Series, Word};
use crate::identities::c_coeff;
use crate::models::{chain_map_check, ls_alphabet, model_ls, model_s0, s0_alphabet, DifferentialModel, GeneratorReport, ModelKind};

pub fn cyl_alphabet() -> Arc<Alphabet> {
    Alphabet::from_pairs(&[("u", -1), ("u'", -1), ("su", 0)]).expect("static alphabet")
}

fn gen(order: usize, name: &str) -> Series {
    Series::generator(&cyl_alphabet(), order, name).expect("cylinder generator")
}

fn check_order(order: usize) -> Result<()> {
    if order < 2 {
        Err(Error::Domain(format!("truncation order must be at least 2, got {order}")))
    } else {
        Ok(())
    }
}

fn flat_images(order: usize) -> (Series, Series) {
    let (u, up) = (gen(order, "u"), gen(order, "u'"));
    (-(&u * &u), -(&up * &up))
}

/// `du = -u⊗u`, `du' = -u'⊗u'`, `d(su) = u' - u + su⊗u' - u⊗su`.
pub fn cyl_classical(order: usize) -> Result<DifferentialModel> {
    check_order(order)?;
    let (du, dup) = flat_images(order);
    let (u, up, su) = (gen(order, "u"), gen(order, "u'"), gen(order, "su"));
    let dsu = &up - &u + &su * &up - &u * &su;
    DifferentialModel::new("cyl", ModelKind::Associative, Derivation::new(&cyl_alphabet(), -1, vec![du, dup, dsu])?)
}

/// `sum_{p+q < order} c(p,q) su^p (u' - u) su^q`.
pub fn dsu_tail_with(order: usize, c: impl Fn(usize, usize) -> Rational) -> Result<Series> {
    let subst = bch_substitution(order)?;
    subst.apply(&bch_linear_with(order, c))
}

/// The Bernoulli tail of `D(su)` with coefficients `c(p,q)`.
pub fn dsu_tail(order: usize) -> Result<Series> {
    dsu_tail_with(order, c_coeff)
}

/// The completed cylinder with `D(su) = su⊗u' - u'⊗su + sum c(p,q) su^p (u'-u) su^q`.
pub fn cyl_perturbed_with(order: usize, c: impl Fn(usize, usize) -> Rational) -> Result<DifferentialModel> {
    check_order(order)?;
    let (du, dup) = flat_images(order);
    let (up, su) = (gen(order, "u'"), gen(order, "su"));
    let dsu = &su * &up - &up * &su + dsu_tail_with(order, c)?;
    DifferentialModel::new("cyl-perturbed", ModelKind::Associative, Derivation::new(&cyl_alphabet(), -1, vec![du, dup, dsu])?)
}

pub fn cyl_perturbed(order: usize) -> Result<DifferentialModel> {
    cyl_perturbed_with(order, c_coeff)
}

/// `y ↦ u' - u`, `x ↦ su` from the BCH alphabet into the cylinder.
pub fn bch_substitution(order: usize) -> Result<AlgebraMorphism> {
    AlgebraMorphism::from_named(
        &bch_alphabet(),
        &cyl_alphabet(),
        vec![("y", gen(order, "u'") - gen(order, "u")), ("x", gen(order, "su"))],
    )
}

/// `a ↦ u`, `b ↦ u'`, `z ↦ su`.
pub fn comparison_morphism(order: usize) -> Result<AlgebraMorphism> {
    AlgebraMorphism::from_named(
        &ls_alphabet(),
        &cyl_alphabet(),
        vec![("a", gen(order, "u")), ("b", gen(order, "u'")), ("z", gen(order, "su"))],
    )
}

/// Chain-map check of the comparison morphism `L → cyl_perturbed`.
pub fn theorem1_check(order: usize) -> Result<GeneratorReport> {
    chain_map_check(&comparison_morphism(order)?, &model_ls(order)?, &cyl_perturbed(order)?)
}

/// `i_0` (`u ↦ u`) or `i_1` (`u ↦ u'`) from `T(u)` into the cylinder.
pub fn inclusion(end: u8, order: usize) -> Result<AlgebraMorphism> {
    let image = match end {
        0 => gen(order, "u"),
        1 => gen(order, "u'"),
        _ => return Err(Error::Domain(format!("cylinder ends are 0 and 1, got {end}"))),
    };
    AlgebraMorphism::from_named(&s0_alphabet(), &cyl_alphabet(), vec![("u", image)])
}

/// `p(u) = p(u') = u`, `p(su) = 0`.
pub fn projection(order: usize) -> Result<AlgebraMorphism> {
    let t = s0_alphabet();
    let u = Series::generator(&t, order, "u")?;
    AlgebraMorphism::from_named(&cyl_alphabet(), &t, vec![("u", u.clone()), ("u'", u), ("su", Series::zero(&t, order))])
}

/// Labelled reports for `i_0`, `i_1` into both cylinders.
pub fn inclusion_reports(order: usize) -> Result<Vec<(String, GeneratorReport)>> {
    let s0 = model_s0(order)?;
    let mut out = Vec::new();
    for cyl in [cyl_classical(order)?, cyl_perturbed(order)?] {
        for end in [0u8, 1] {
            let r = chain_map_check(&inclusion(end, order)?, &s0, &cyl)?;
            out.push((format!("i{end} -> {}", cyl.name()), r));
        }
    }
    Ok(out)
}

/// Labelled reports for `p` out of both cylinders, plus `p∘i_0` and `p∘i_1`
/// compared with the identity.
pub fn projection_reports(order: usize) -> Result<Vec<(String, GeneratorReport)>> {
    let s0 = model_s0(order)?;
    let p = projection(order)?;
    let mut out = Vec::new();
    for cyl in [cyl_classical(order)?, cyl_perturbed(order)?] {
        out.push((format!("p <- {}", cyl.name()), chain_map_check(&p, &cyl, &s0)?));
    }
    let id = AlgebraMorphism::identity(&s0_alphabet(), order);
    for end in [0u8, 1] {
        let composite = p.compose(&inclusion(end, order)?)?;
        let residuals = s0
            .alphabet()
            .generators()
            .iter()
            .zip(composite.images().iter().zip(id.images()))
            .map(|(g, (l, r))| (g.name.clone(), l - r))
            .collect();
        out.push((format!("p∘i{end} = id"), GeneratorReport { order, residuals }));
    }
    Ok(out)
}

/// `D(B) + B⊗u' + u'⊗B` in the cylinder built from coefficients `c`; equal
/// to `D²(su)`.
pub fn eq2_residual_with(order: usize, c: impl Fn(usize, usize) -> Rational + Copy) -> Result<Series> {
    check_order(order)?;
    let model = cyl_perturbed_with(order, c)?;
    let tail = dsu_tail_with(order, c)?;
    let up = gen(order, "u'");
    Ok(model.d(&tail)? + &tail * &up + &up * &tail)
}

pub fn eq2_residual(order: usize) -> Result<Series> {
    eq2_residual_with(order, c_coeff)
}

fn x_power(order: usize, n: usize) -> Series {
    Series::monomial(&bch_alphabet(), order, Word(vec![X.0; n]), int(1))
}

/// `Γ(p,q) = x^p y² x^q + sum_{i<p} x^i B x^{p-1-i} y x^q - sum_{i<q} x^p y x^i B x^{q-1-i}`
/// over the alphabet `{y, x}`, with `B = sum c(p,q) x^p y x^q`.
pub fn gamma_term(order: usize, tail: &Series, p: usize, q: usize) -> Result<Series> {
    let al = bch_alphabet();
    let y = Series::letter(&al, order, Y);
    let mut out = x_power(order, p) * &y * &y * x_power(order, q);
    for i in 0..p {
        let t = x_power(order, i) * tail * x_power(order, p - 1 - i) * &y * x_power(order, q);
        out.add_scaled(&t, &int(1))?;
    }
    for i in 0..q {
        let t = x_power(order, p) * &y * x_power(order, i) * tail * x_power(order, q - 1 - i);
        out.add_scaled(&t, &int(-1))?;
    }
    Ok(out)
}

/// `sum_{p+q} c(p,q) Γ(p,q)` through `order`, over `{y, x}`.
pub fn gamma_sum_with(order: usize, c: impl Fn(usize, usize) -> Rational + Copy) -> Result<Series> {
    check_order(order)?;
    let tail = bch_linear_with(order, c);
    let mut acc = Series::zero(&bch_alphabet(), order);
    // Γ(p,q) starts at word length p + q + 1 (B has a length-1 term).
    for n in 0..order {
        for p in 0..=n {
            let q = n - p;
            acc.add_scaled(&gamma_term(order, &tail, p, q)?, &c(p, q))?;
        }
    }
    Ok(acc)
}

pub fn gamma_residual(order: usize) -> Result<Series> {
    gamma_sum_with(order, c_coeff)
}

/// Coefficient of `x^p y y x^q` in a series over `{y, x}`.
pub fn xy2x_coefficient(s: &Series, p: usize, q: usize) -> Rational {
    let mut w = vec![X.0; p];
    w.extend([Y.0, Y.0]);
    w.extend(std::iter::repeat_n(X.0, q));
    s.coeff(&Word(w))
}
