use std::collections::BTreeMap;
use std::sync::Arc;

use super::alphabet::{Alphabet, Word};
use super::series::{accumulate, ensure_same, Series};
use crate::error::{Error, Result};

/// A graded derivation, determined by its generator images and extended by
/// `D(vw) = D(v) w + (-1)^{d |v|} v D(w)`.
///
/// Images are valid through `order()`; applying the derivation to a series
/// of higher order truncates the result to that order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    alphabet: Arc<Alphabet>,
    degree: i32,
    images: Vec<Series>,
}

impl Derivation {
    /// `images[i]` is the image of the `i`-th generator. Every image must be
    /// homogeneous of degree `deg(g) + degree`.
    pub fn new(alphabet: &Arc<Alphabet>, degree: i32, images: Vec<Series>) -> Result<Self> {
        if images.len() != alphabet.len() {
            return Err(Error::ImageCount { expected: alphabet.len(), found: images.len() });
        }
        for (g, img) in alphabet.generators().iter().zip(&images) {
            ensure_same(alphabet, img.alphabet())?;
            img.require_degree(g.degree + degree)?;
        }
        Ok(Derivation { alphabet: alphabet.clone(), degree, images })
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.images.iter().map(Series::order).min().unwrap_or(0)
    }

    pub fn images(&self) -> &[Series] {
        &self.images
    }

    pub fn image(&self, name: &str) -> Result<&Series> {
        Ok(&self.images[self.alphabet.letter(name)?.0 as usize])
    }

    /// Copy with one generator image replaced; degree is re-validated.
    pub fn with_image(&self, name: &str, image: Series) -> Result<Self> {
        let mut images = self.images.clone();
        images[self.alphabet.letter(name)?.0 as usize] = image;
        Derivation::new(&self.alphabet, self.degree, images)
    }

    /// Linear extension of the graded Leibniz rule.
    pub fn apply(&self, s: &Series) -> Result<Series> {
        ensure_same(&self.alphabet, s.alphabet())?;
        let order = s.order().min(self.order());
        let mut terms = BTreeMap::new();
        let odd = self.degree % 2 != 0;
        for (w, c) in s.terms() {
            if w.len() > order {
                break;
            }
            let mut prefix_degree = 0;
            for (i, l) in w.letters().enumerate() {
                let negative = odd && prefix_degree % 2 != 0;
                let room = order + 1 - w.len();
                for (iw, ic) in self.images[l.0 as usize].terms() {
                    if iw.len() > room {
                        break;
                    }
                    let mut v = Vec::with_capacity(w.len() - 1 + iw.len());
                    v.extend_from_slice(&w.0[..i]);
                    v.extend_from_slice(&iw.0);
                    v.extend_from_slice(&w.0[i + 1..]);
                    let k = c * ic;
                    accumulate(&mut terms, Word(v), if negative { -k } else { k });
                }
                prefix_degree += self.alphabet.degree(l);
            }
        }
        Ok(Series::from_terms(&self.alphabet, order, terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;
    use crate::freeseries::ops::bracket;

    fn s0(order: usize) -> Derivation {
        let al = Alphabet::from_pairs(&[("u", -1)]).unwrap();
        let du = Series::from_named_terms(&al, order, [(&["u", "u"][..], int(-1))]).unwrap();
        Derivation::new(&al, -1, vec![du]).unwrap()
    }

    #[test]
    fn flat_generator_image() {
        let d = s0(6);
        let al = d.alphabet().clone();
        let u = Series::generator(&al, 6, "u").unwrap();
        let half_bracket = bracket(&u, &u).unwrap().scale(&crate::exact::ratio(-1, 2));
        assert_eq!(d.apply(&u).unwrap(), half_bracket);
    }

    #[test]
    fn koszul_sign_on_products() {
        let d = s0(6);
        let al = d.alphabet().clone();
        let u = Series::generator(&al, 6, "u").unwrap();
        let du = d.apply(&u).unwrap();
        let uu = &u * &u;
        assert_eq!(d.apply(&uu).unwrap(), &du * &u - &u * &du);
        assert!(d.apply(&d.apply(&u).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn rejects_wrong_degree_images() {
        let al = Alphabet::from_pairs(&[("u", -1)]).unwrap();
        let bad = Series::generator(&al, 3, "u").unwrap();
        assert!(matches!(Derivation::new(&al, -1, vec![bad]), Err(Error::Degree { .. })));
        assert!(matches!(Derivation::new(&al, -1, vec![]), Err(Error::ImageCount { .. })));
    }
}
