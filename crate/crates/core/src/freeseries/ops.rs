//! Graded commutators and the formal exponential/logarithm.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::series::{accumulate, ensure_same, Series};
use crate::error::{Error, Result};
use crate::exact::{int, render};

/// Graded commutator `[s,t] = st - (-1)^{|s||t|} ts`, with signs taken per
/// pair of homogeneous words.
pub fn bracket(s: &Series, t: &Series) -> Result<Series> {
    ensure_same(s.alphabet(), t.alphabet())?;
    let al = s.alphabet();
    let order = s.order().min(t.order());
    let mut terms = BTreeMap::new();
    for (w1, c1) in s.terms() {
        if w1.len() > order {
            break;
        }
        let d1 = al.word_degree(w1);
        let room = order - w1.len();
        for (w2, c2) in t.terms() {
            if w2.len() > room {
                break;
            }
            let d2 = al.word_degree(w2);
            let c = c1 * c2;
            if (d1 * d2) % 2 == 0 {
                accumulate(&mut terms, w2.concat(w1), -c.clone());
            } else {
                accumulate(&mut terms, w2.concat(w1), c.clone());
            }
            accumulate(&mut terms, w1.concat(w2), c);
        }
    }
    Ok(Series::from_terms(al, order, terms))
}

/// `ad_x^n(y) = [x,[x,...,[x,y]...]]`.
pub fn ad_pow(x: &Series, n: usize, y: &Series) -> Result<Series> {
    ensure_same(x.alphabet(), y.alphabet())?;
    let mut acc = y.clone();
    for _ in 0..n {
        if acc.is_zero() {
            break;
        }
        acc = bracket(x, &acc)?;
    }
    Ok(acc)
}

fn require_no_constant(op: &'static str, s: &Series) -> Result<()> {
    let c = s.constant_term();
    if c.is_zero() {
        Ok(())
    } else {
        Err(Error::ConstantTerm { op, constant: render(&c) })
    }
}

/// `sum_{n>=0} s^n / n!`. Finite at fixed order because `s` has no
/// constant term, so `s^n` vanishes once `n` exceeds the order.
pub fn exp(s: &Series) -> Result<Series> {
    require_no_constant("exp", s)?;
    let mut acc = Series::one(s.alphabet(), s.order());
    let mut term = acc.clone();
    for n in 1.. {
        term = term.product(s)?.scale(&(int(1) / int(n)));
        if term.is_zero() {
            break;
        }
        acc.add_scaled(&term, &int(1))?;
    }
    Ok(acc)
}

/// `log(1 + s) = sum_{n>=1} (-1)^{n-1} s^n / n`.
pub fn log1p(s: &Series) -> Result<Series> {
    require_no_constant("log1p", s)?;
    let mut acc = Series::zero(s.alphabet(), s.order());
    let mut power = s.clone();
    for n in 1i64.. {
        if power.is_zero() {
            break;
        }
        let k = if n % 2 == 1 { int(1) / int(n) } else { int(-1) / int(n) };
        acc.add_scaled(&power, &k)?;
        power = power.product(s)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{binomial, ratio};
    use crate::freeseries::{Alphabet, Word};
    use std::sync::Arc;

    fn lsa() -> Arc<Alphabet> {
        Alphabet::from_pairs(&[("a", -1), ("b", -1), ("z", 0)]).unwrap()
    }

    #[test]
    fn self_brackets() {
        let al = lsa();
        let a = Series::generator(&al, 4, "a").unwrap();
        let z = Series::generator(&al, 4, "z").unwrap();
        let b = Series::generator(&al, 4, "b").unwrap();
        assert_eq!(bracket(&a, &a).unwrap(), Series::from_named_terms(&al, 4, [(&["a", "a"][..], int(2))]).unwrap());
        assert!(bracket(&z, &z).unwrap().is_zero());
        let zb = Series::from_named_terms(&al, 4, [(&["z", "b"][..], int(1)), (&["b", "z"][..], int(-1))]).unwrap();
        assert_eq!(bracket(&z, &b).unwrap(), zb);
        assert_eq!(ad_pow(&z, 1, &b).unwrap(), zb);
        assert_eq!(ad_pow(&z, 0, &b).unwrap(), b);
    }

    #[test]
    fn exp_basics() {
        let al = Alphabet::from_pairs(&[("y", 0), ("x", 0)]).unwrap();
        assert_eq!(exp(&Series::zero(&al, 3)).unwrap(), Series::one(&al, 3));
        let x = Series::generator(&al, 2, "x").unwrap();
        let y = Series::generator(&al, 2, "y").unwrap();
        let ex = exp(&x).unwrap();
        let expected =
            Series::from_named_terms(&al, 2, [(&[][..], int(1)), (&["x"][..], int(1)), (&["x", "x"][..], ratio(1, 2))])
                .unwrap();
        assert_eq!(ex, expected);
        // Independent product oracle, written out by hand.
        let eyx = exp(&y).unwrap() * ex;
        let oracle = Series::from_named_terms(
            &al,
            2,
            [
                (&[][..], int(1)),
                (&["y"][..], int(1)),
                (&["x"][..], int(1)),
                (&["y", "y"][..], ratio(1, 2)),
                (&["y", "x"][..], int(1)),
                (&["x", "x"][..], ratio(1, 2)),
            ],
        )
        .unwrap();
        assert_eq!(eyx, oracle);
    }

    #[test]
    fn constant_terms_rejected() {
        let al = Alphabet::from_pairs(&[("x", 0)]).unwrap();
        let one = Series::one(&al, 3);
        assert!(matches!(exp(&one), Err(Error::ConstantTerm { .. })));
        assert!(matches!(log1p(&one), Err(Error::ConstantTerm { .. })));
    }

    #[test]
    fn log_inverts_exp() {
        let al = Alphabet::from_pairs(&[("x", 0)]).unwrap();
        let x = Series::generator(&al, 6, "x").unwrap();
        let e = exp(&x).unwrap() - Series::one(&al, 6);
        assert_eq!(log1p(&e).unwrap(), x);
        assert!(log1p(&Series::zero(&al, 6)).unwrap().is_zero());
    }

    #[test]
    fn ad_pow_of_even_element_is_binomial() {
        let al = lsa();
        let n_max = 6;
        let z = Series::generator(&al, 8, "z").unwrap();
        let b = Series::generator(&al, 8, "b").unwrap();
        let zl = al.letter("z").unwrap().0;
        let bl = al.letter("b").unwrap().0;
        for n in 0..=n_max {
            let mut oracle = Series::zero(&al, 8);
            for k in 0..=n {
                let mut w = vec![zl; n - k];
                w.push(bl);
                w.extend(std::iter::repeat_n(zl, k));
                let sign = if k % 2 == 0 { int(1) } else { int(-1) };
                oracle = oracle + Series::monomial(&al, 8, Word(w), sign * binomial(n, k as i64));
            }
            assert_eq!(ad_pow(&z, n, &b).unwrap(), oracle, "n = {n}");
        }
    }
}
