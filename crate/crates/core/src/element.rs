//! Ordered monomials and their exact linear combinations.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use crate::scalar::Scalar;

/// Exponent vector over the generators of a presentation, in generator order.
///
/// Negative entries only occur for generators that have been localized.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial(pub Vec<i32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn generator(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        Monomial(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|e| e.unsigned_abs()).sum()
    }

    /// Parity under the given odd-generator mask.
    pub fn parity(&self, odd: &[bool]) -> u32 {
        self.0
            .iter()
            .zip(odd)
            .filter(|(_, &o)| o)
            .map(|(e, _)| e.unsigned_abs())
            .sum::<u32>()
            % 2
    }

    /// Graded order used for rendering: higher degree first, then
    /// lexicographically larger exponent vectors first.
    pub fn render_cmp(&self, other: &Self) -> Ordering {
        other
            .degree()
            .cmp(&self.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

/// Finite linear combination of monomials with nonzero rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct Element {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn constant(n: usize, c: Scalar) -> Self {
        Element::term(Monomial::one(n), c)
    }

    pub fn one(n: usize) -> Self {
        Element::constant(n, Scalar::one())
    }

    pub fn term(m: Monomial, c: Scalar) -> Self {
        let mut e = Element::zero();
        e.add_term(m, c);
        e
    }

    pub fn monomial(m: Monomial) -> Self {
        Element::term(m, Scalar::one())
    }

    pub fn generator(n: usize, i: usize) -> Self {
        Element::monomial(Monomial::generator(n, i))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, Scalar)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Element, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (m, v) in &other.terms {
            self.add_term(m.clone(), v * c);
        }
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        let mut out = Element::zero();
        out.add_scaled(self, c);
        out
    }

    /// Maximum over terms of the sum of absolute exponents; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// The scalar value if this element is a multiple of 1 (zero included).
    pub fn as_scalar(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// The single term if this element is `c * m`.
    pub fn as_term(&self) -> Option<(&Monomial, &Scalar)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// Parity of every monomial if they all agree; `None` if mixed or zero.
    pub fn parity(&self, odd: &[bool]) -> Option<u32> {
        let mut it = self.terms.keys().map(|m| m.parity(odd));
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }

    /// Terms in rendering order.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &Scalar)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.render_cmp(b.0));
        v
    }
}

impl Add<&Element> for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(rhs, &Scalar::one());
        out
    }
}

impl Sub<&Element> for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Scalar::one());
        out
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale(&-Scalar::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn no_stored_zeros() {
        let mut e = Element::generator(2, 0);
        e.add_term(Monomial::generator(2, 0), Scalar::from_int(-1));
        assert!(e.is_zero());
        assert_eq!(e, Element::zero());
        assert_eq!(e.degree(), None);
    }

    #[test]
    fn degree_counts_inverse_exponents() {
        let e = Element::monomial(Monomial(vec![-2, 1]));
        assert_eq!(e.degree(), Some(3));
    }

    #[test]
    fn render_order_is_graded() {
        let mut e = Element::one(2);
        e.add_term(Monomial(vec![1, 1]), Scalar::one());
        e.add_term(Monomial(vec![0, 1]), Scalar::one());
        let order: Vec<_> = e.sorted_terms().into_iter().map(|(m, _)| m.0.clone()).collect();
        assert_eq!(order, vec![vec![1, 1], vec![0, 1], vec![0, 0]]);
    }
}
