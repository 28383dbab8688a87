//! Multivariate polynomials with exact rational coefficients.

use std::fmt;

use crate::error::{Error, Result};
use crate::order::{Term, TermOrder};
use crate::rational::Rat;
use crate::ring::{Monomial, Ring};
use crate::vector::Vector;

/// A polynomial in a fixed ring, stored in canonical form: terms sorted
/// decreasingly in graded reverse lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    ring: Ring,
    vec: Vector<Rat>,
}

/// The canonical order of polynomial terms in `ring`.
pub fn poly_order(ring: &Ring) -> TermOrder {
    TermOrder::degrevlex(ring, &[0])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Subtract,
    Multiply,
}

/// Checked binary arithmetic.
pub fn polynomial_arithmetic(op: ArithOp, f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    if f.ring != g.ring {
        return Err(Error::RingMismatch);
    }
    Ok(match op {
        ArithOp::Add => f.add(g),
        ArithOp::Subtract => f.sub(g),
        ArithOp::Multiply => f.mul(g),
    })
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Polynomial { ring: ring.clone(), vec: Vector::zero() }
    }

    pub fn constant(ring: &Ring, c: Rat) -> Self {
        Polynomial { ring: ring.clone(), vec: Vector::term(Term::new(Monomial::one(), 0), c) }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, Rat::one())
    }

    pub fn var(ring: &Ring, i: usize) -> Self {
        assert!(i < ring.nvars(), "variable index out of range");
        Self::monomial(ring, Monomial::var(i, 1), Rat::one())
    }

    pub fn monomial(ring: &Ring, m: Monomial, c: Rat) -> Self {
        Polynomial { ring: ring.clone(), vec: Vector::term(Term::new(m, 0), c) }
    }

    pub fn from_terms(ring: &Ring, terms: Vec<(Monomial, Rat)>) -> Self {
        let ord = poly_order(ring);
        let terms = terms.into_iter().map(|(m, c)| (Term::new(m, 0), c)).collect();
        Polynomial { ring: ring.clone(), vec: Vector::from_terms(terms, &ord) }
    }

    /// Wraps a slot-0 vector already sorted in [`poly_order`].
    pub(crate) fn from_sorted_vector(ring: &Ring, vec: Vector<Rat>) -> Self {
        Polynomial { ring: ring.clone(), vec }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.vec.is_zero()
    }

    pub fn len(&self) -> usize {
        self.vec.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vec.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.vec.terms.iter().map(|(t, c)| (&t.mono, c))
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rat)> {
        self.vec.terms.first().map(|(t, c)| (&t.mono, c))
    }

    pub fn coefficient(&self, m: &Monomial) -> Rat {
        self.terms().find(|(x, _)| *x == m).map(|(_, c)| c.clone()).unwrap_or_default()
    }

    /// Largest weighted degree of a term, `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        self.terms().map(|(m, _)| self.ring.deg(m)).max()
    }

    /// The common degree of all terms, `None` for zero or inhomogeneous input.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let mut it = self.terms().map(|(m, _)| self.ring.deg(m));
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn is_constant(&self) -> bool {
        self.terms().all(|(m, _)| m.is_one())
    }

    pub fn add(&self, o: &Polynomial) -> Polynomial {
        let ord = poly_order(&self.ring);
        Polynomial { ring: self.ring.clone(), vec: self.vec.add(&o.vec, &ord) }
    }

    pub fn sub(&self, o: &Polynomial) -> Polynomial {
        let ord = poly_order(&self.ring);
        Polynomial { ring: self.ring.clone(), vec: self.vec.sub(&o.vec, &ord) }
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial { ring: self.ring.clone(), vec: self.vec.neg() }
    }

    pub fn scale(&self, c: &Rat) -> Polynomial {
        Polynomial { ring: self.ring.clone(), vec: self.vec.scale(c) }
    }

    pub fn mul_mono(&self, m: &Monomial) -> Polynomial {
        Polynomial { ring: self.ring.clone(), vec: self.vec.mul_mono(m) }
    }

    pub fn mul(&self, o: &Polynomial) -> Polynomial {
        let mut terms = Vec::with_capacity(self.len() * o.len());
        for (a, x) in self.terms() {
            for (b, y) in o.terms() {
                terms.push((a.mul(b), x * y));
            }
        }
        Polynomial::from_terms(&self.ring, terms)
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Substitutes `images[i]` for the i-th variable; images may live in
    /// another ring.
    pub fn substitute(&self, target: &Ring, images: &[Polynomial]) -> Polynomial {
        assert_eq!(images.len(), self.ring.nvars(), "one image per variable");
        let mut acc = Polynomial::zero(target);
        for (m, c) in self.terms() {
            let mut t = Polynomial::constant(target, c.clone());
            for (i, img) in images.iter().enumerate() {
                for _ in 0..m.exp(i) {
                    t = t.mul(img);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// The same terms read in another ring with at least as many variables.
    pub fn embed(&self, target: &Ring) -> Polynomial {
        assert!(target.nvars() >= self.ring.nvars());
        Polynomial::from_terms(target, self.terms().map(|(m, c)| (*m, c.clone())).collect())
    }

    /// Term list as a vector in `slot`.
    pub fn to_vector(&self, slot: usize) -> Vector<Rat> {
        Vector {
            terms: self.vec.terms.iter().map(|(t, c)| (Term::new(t.mono, slot), c.clone())).collect(),
        }
    }

    pub fn as_vector(&self) -> &Vector<Rat> {
        &self.vec
    }

    /// True when every coefficient is an integer.
    pub fn has_integer_coefficients(&self) -> bool {
        self.terms().all(|(_, c)| c.is_integer())
    }
}

impl fmt::Display for Polynomial {
    /// Canonical text form, inverse to the parser.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", m.display(&self.ring))?;
            } else {
                write!(f, "{a}*{}", m.display(&self.ring))?;
            }
        }
        Ok(())
    }
}
