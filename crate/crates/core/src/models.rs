//! The differential models: the S⁰ model `(L(u), ∂)`, the Lawrence-Sullivan
//! construction `(L̂(a,b,z), ∂)` and the interval model `(L̂(a,z), ∂)`, plus
//! the generic d² and chain-map checks used by every other module.
//!
//! Lie elements are represented by their images in the complete tensor
//! algebra. d² is checked on generators only: d² = ½[d,d] is itself a
//! derivation, so it vanishes everywhere once it vanishes on generators.

use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{bernoulli, factorial, ratio, Rational};
use crate::freeseries::{ad_pow, bracket, AlgebraMorphism, Alphabet, Derivation, Series, Word};
use crate::gauge;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    Lie,
    Associative,
}

/// An alphabet with a degree −1 differential materialized through `order`.
#[derive(Debug, Clone)]
pub struct DifferentialModel {
    name: String,
    kind: ModelKind,
    differential: Derivation,
    order: usize,
}

impl DifferentialModel {
    pub fn new(name: impl Into<String>, kind: ModelKind, differential: Derivation) -> Result<Self> {
        if differential.degree() != -1 {
            return Err(Error::Domain(format!("differential must have degree -1, got {}", differential.degree())));
        }
        let order = differential.order();
        Ok(DifferentialModel { name: name.into(), kind, differential, order })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        self.differential.alphabet()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn differential(&self) -> &Derivation {
        &self.differential
    }

    pub fn d(&self, s: &Series) -> Result<Series> {
        self.differential.apply(s)
    }

    pub fn image(&self, name: &str) -> Result<&Series> {
        self.differential.image(name)
    }

    pub fn generator(&self, name: &str) -> Result<Series> {
        Series::generator(self.alphabet(), self.order, name)
    }

    pub fn zero(&self) -> Series {
        Series::zero(self.alphabet(), self.order)
    }

    /// Same model with one generator image replaced (mutation testing).
    pub fn with_image(&self, generator: &str, image: Series) -> Result<Self> {
        Self::new(self.name.clone(), self.kind, self.differential.with_image(generator, image)?)
    }
}

/// A location where an identity failed: expected value versus computed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub location: String,
    pub expected: Rational,
    pub actual: Rational,
}

/// Per-generator residual series of some identity that should vanish.
#[derive(Debug, Clone)]
pub struct GeneratorReport {
    pub order: usize,
    pub residuals: Vec<(String, Series)>,
}

impl GeneratorReport {
    pub fn passed(&self) -> bool {
        self.residuals.iter().all(|(_, r)| r.is_zero())
    }

    /// First generator (in alphabet order) with a nonzero residual, and the
    /// first offending word of that residual in canonical order.
    pub fn first_failure(&self) -> Option<Failure> {
        self.residuals.iter().find_map(|(g, r)| {
            r.leading_term().map(|(w, c)| Failure {
                location: format!("{g}: {}", r.word_text(w)),
                expected: Rational::zero(),
                actual: c.clone(),
            })
        })
    }
}

/// First failing word of `residual`, viewed as "expected 0".
pub fn series_failure(residual: &Series) -> Option<Failure> {
    residual.leading_term().map(|(w, c)| Failure {
        location: residual.word_text(w),
        expected: Rational::zero(),
        actual: c.clone(),
    })
}

/// Failure record for `lhs == rhs` through `order`.
pub fn mismatch_failure(lhs: &Series, rhs: &Series, order: usize) -> Option<Failure> {
    lhs.first_mismatch_through(rhs, order).map(|m| Failure {
        location: lhs.word_text(&m.word),
        expected: m.right,
        actual: m.left,
    })
}

/// `d(d(g))` for every generator `g`, truncated to the model's order.
pub fn d_squared_report(model: &DifferentialModel) -> Result<GeneratorReport> {
    let mut residuals = Vec::new();
    for (g, img) in model.alphabet().generators().iter().zip(model.differential().images()) {
        residuals.push((g.name.clone(), model.d(img)?));
    }
    Ok(GeneratorReport { order: model.order(), residuals })
}

/// `f(d_src(g)) - d_tgt(f(g))` for every source generator, through the
/// common order.
pub fn chain_map_check(f: &AlgebraMorphism, src: &DifferentialModel, tgt: &DifferentialModel) -> Result<GeneratorReport> {
    if f.source() != src.alphabet() || f.target() != tgt.alphabet() {
        return Err(Error::AlphabetMismatch {
            left: format!("{} -> {}", f.source(), f.target()),
            right: format!("{} -> {}", src.alphabet(), tgt.alphabet()),
        });
    }
    let order = src.order().min(tgt.order()).min(f.order());
    let mut residuals = Vec::new();
    for ((g, dg), fg) in src.alphabet().generators().iter().zip(src.differential().images()).zip(f.images()) {
        let lhs = f.apply(&dg.truncate(order))?;
        let rhs = tgt.d(&fg.truncate(order))?;
        residuals.push((g.name.clone(), lhs.try_sub(&rhs)?.truncate(order)));
    }
    Ok(GeneratorReport { order, residuals })
}

/// `-x⊗x` for a single degree −1 generator: the image `-½[x,x]`.
fn flat_image(al: &Arc<Alphabet>, order: usize, name: &str) -> Result<Series> {
    let x = Series::generator(al, order, name)?;
    Ok(bracket(&x, &x)?.scale(&ratio(-1, 2)))
}

fn check_order(order: usize) -> Result<()> {
    if order < 2 {
        Err(Error::Domain(format!("truncation order must be at least 2, got {order}")))
    } else {
        Ok(())
    }
}

pub fn s0_alphabet() -> Arc<Alphabet> {
    Alphabet::from_pairs(&[("u", -1)]).expect("static alphabet")
}

pub fn ls_alphabet() -> Arc<Alphabet> {
    Alphabet::from_pairs(&[("a", -1), ("b", -1), ("z", 0)]).expect("static alphabet")
}

pub fn interval_alphabet() -> Arc<Alphabet> {
    Alphabet::from_pairs(&[("a", -1), ("z", 0)]).expect("static alphabet")
}

/// `(L(u), ∂)` with `∂u = -½[u,u] = -u⊗u`.
pub fn model_s0(order: usize) -> Result<DifferentialModel> {
    check_order(order)?;
    let al = s0_alphabet();
    let d = Derivation::new(&al, -1, vec![flat_image(&al, order, "u")?])?;
    DifferentialModel::new("s0", ModelKind::Lie, d)
}

/// Taylor coefficient `B_i / i!` of `ad_z / (e^{ad_z} - id)`.
pub fn ls_coefficient(i: usize) -> Rational {
    bernoulli(i) / factorial(i)
}

/// `[z,b] + sum_i coeff(i) ad_z^i(b - a)` through `order`.
pub fn ls_dz_with(order: usize, coeff: impl Fn(usize) -> Rational) -> Result<Series> {
    let al = ls_alphabet();
    let z = Series::generator(&al, order, "z")?;
    let b = Series::generator(&al, order, "b")?;
    let diff = &b - &Series::generator(&al, order, "a")?;
    let mut dz = bracket(&z, &b)?;
    let mut term = diff;
    // ad_z^i(b - a) has word length i + 1.
    for i in 0..order {
        dz.add_scaled(&term, &coeff(i))?;
        term = bracket(&z, &term)?;
    }
    Ok(dz)
}

/// The Lawrence-Sullivan construction with the Bernoulli coefficients
/// replaced by `coeff` (mutation testing uses this).
pub fn model_ls_with(order: usize, coeff: impl Fn(usize) -> Rational) -> Result<DifferentialModel> {
    check_order(order)?;
    let al = ls_alphabet();
    let images = vec![flat_image(&al, order, "a")?, flat_image(&al, order, "b")?, ls_dz_with(order, coeff)?];
    DifferentialModel::new("ls", ModelKind::Lie, Derivation::new(&al, -1, images)?)
}

/// `a`, `b` flat; `∂z = [z,b] + sum_i B_i/i! ad_z^i(b - a)`.
pub fn model_ls(order: usize) -> Result<DifferentialModel> {
    model_ls_with(order, ls_coefficient)
}

/// `∂z = ad_z(b) + f_z^{-1}(b - a)` computed through the operator series.
pub fn dz_alternative(order: usize) -> Result<Series> {
    check_order(order)?;
    let al = ls_alphabet();
    let z = Series::generator(&al, order, "z")?;
    let b = Series::generator(&al, order, "b")?;
    let a = Series::generator(&al, order, "a")?;
    bracket(&z, &b)?.try_add(&gauge::op_f_inv(&z, &(&b - &a))?)
}

/// The interval model: `a` flat, `∂z = -sum_i B_i/i! ad_z^i(a)`.
pub fn model_interval(order: usize) -> Result<DifferentialModel> {
    check_order(order)?;
    let al = interval_alphabet();
    let z = Series::generator(&al, order, "z")?;
    let mut dz = Series::zero(&al, order);
    for i in 0..order {
        let term = ad_pow(&z, i, &Series::generator(&al, order, "a")?)?;
        dz.add_scaled(&term, &-ls_coefficient(i))?;
    }
    let images = vec![flat_image(&al, order, "a")?, dz];
    DifferentialModel::new("interval", ModelKind::Lie, Derivation::new(&al, -1, images)?)
}

/// The quotient map `L → L_I` killing `b`.
pub fn quotient_to_interval(order: usize) -> Result<AlgebraMorphism> {
    let (src, tgt) = (ls_alphabet(), interval_alphabet());
    AlgebraMorphism::from_named(
        &src,
        &tgt,
        vec![
            ("a", Series::generator(&tgt, order, "a")?),
            ("b", Series::zero(&tgt, order)),
            ("z", Series::generator(&tgt, order, "z")?),
        ],
    )
}

/// The morphism `L → L` exchanging `a` and `b`, fixing `z`.
pub fn ls_swap(order: usize) -> Result<AlgebraMorphism> {
    let al = ls_alphabet();
    let g = |n: &str| Series::generator(&al, order, n);
    AlgebraMorphism::from_named(&al, &al, vec![("a", g("b")?), ("b", g("a")?), ("z", g("z")?)])
}

/// Word helper used in tests and reports: spell a word by names.
pub fn word(al: &Alphabet, names: &[&str]) -> Result<Word> {
    Ok(Word(names.iter().map(|n| al.letter(n).map(|l| l.0)).collect::<Result<_>>()?))
}
