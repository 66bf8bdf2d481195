use std::sync::Arc;

use num_traits::Zero;

use super::alphabet::Alphabet;
use super::series::{ensure_same, Series};
use crate::error::{Error, Result};
use crate::exact::render;

/// A continuous, degree-preserving algebra morphism between complete tensor
/// algebras, fixed by generator images.
///
/// Images may not carry a constant term: each letter maps into words of
/// length at least one, so a truncated source determines its image through
/// the same order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraMorphism {
    source: Arc<Alphabet>,
    target: Arc<Alphabet>,
    images: Vec<Series>,
}

impl AlgebraMorphism {
    pub fn new(source: &Arc<Alphabet>, target: &Arc<Alphabet>, images: Vec<Series>) -> Result<Self> {
        if images.len() != source.len() {
            return Err(Error::ImageCount { expected: source.len(), found: images.len() });
        }
        for (g, img) in source.generators().iter().zip(&images) {
            ensure_same(target, img.alphabet())?;
            img.require_degree(g.degree)?;
            if !img.constant_term().is_zero() {
                return Err(Error::ConstantTerm { op: "morphism image", constant: render(&img.constant_term()) });
            }
        }
        Ok(AlgebraMorphism { source: source.clone(), target: target.clone(), images })
    }

    /// Builds a morphism from `(source generator, image)` pairs; every source
    /// generator must appear exactly once.
    pub fn from_named(source: &Arc<Alphabet>, target: &Arc<Alphabet>, pairs: Vec<(&str, Series)>) -> Result<Self> {
        let mut slots: Vec<Option<Series>> = vec![None; source.len()];
        for (name, img) in pairs {
            let l = source.letter(name)?;
            if slots[l.0 as usize].replace(img).is_some() {
                return Err(Error::DuplicateGenerator(name.to_string()));
            }
        }
        let found = slots.iter().filter(|s| s.is_some()).count();
        let images: Option<Vec<Series>> = slots.into_iter().collect();
        let images = images.ok_or(Error::ImageCount { expected: source.len(), found })?;
        Self::new(source, target, images)
    }

    pub fn identity(alphabet: &Arc<Alphabet>, order: usize) -> Self {
        let images = alphabet.letters().map(|l| Series::letter(alphabet, order, l)).collect();
        AlgebraMorphism { source: alphabet.clone(), target: alphabet.clone(), images }
    }

    pub fn source(&self) -> &Arc<Alphabet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Alphabet> {
        &self.target
    }

    pub fn images(&self) -> &[Series] {
        &self.images
    }

    pub fn image(&self, name: &str) -> Result<&Series> {
        Ok(&self.images[self.source.letter(name)?.0 as usize])
    }

    pub fn order(&self) -> usize {
        self.images.iter().map(Series::order).min().unwrap_or(0)
    }

    /// Multiplicative-linear extension; result order is
    /// `min(order(s), order(self))`.
    pub fn apply(&self, s: &Series) -> Result<Series> {
        ensure_same(&self.source, s.alphabet())?;
        let order = s.order().min(self.order());
        let mut out = Series::zero(&self.target, order);
        for (w, c) in s.terms() {
            if w.len() > order {
                break;
            }
            let mut acc = Series::one(&self.target, order);
            for l in w.letters() {
                acc = acc.product(&self.images[l.0 as usize])?;
                if acc.is_zero() {
                    break;
                }
            }
            out.add_scaled(&acc, c)?;
        }
        Ok(out)
    }

    /// `self ∘ inner`: first `inner`, then `self`.
    pub fn compose(&self, inner: &AlgebraMorphism) -> Result<AlgebraMorphism> {
        ensure_same(&self.source, &inner.target)?;
        let images = inner.images.iter().map(|img| self.apply(img)).collect::<Result<Vec<_>>>()?;
        Ok(AlgebraMorphism { source: inner.source.clone(), target: self.target.clone(), images })
    }
}
