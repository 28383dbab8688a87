//! Polynomial rings and monomials.

use std::fmt;
use std::ops::Deref;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest number of variables a ring may have.
pub const MAX_VARS: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CoefficientField {
    Rationals,
    /// Prime field, offered only as a cross-check.
    Prime(u64),
}

/// A graded polynomial ring with named variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingSpec {
    names: Vec<String>,
    degrees: Vec<u32>,
    field: CoefficientField,
}

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl RingSpec {
    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn field(&self) -> &CoefficientField {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn is_standard_graded(&self) -> bool {
        self.degrees.iter().all(|&d| d == 1)
    }

    /// Weighted degree of a monomial.
    pub fn deg(&self, m: &Monomial) -> i64 {
        self.degrees
            .iter()
            .enumerate()
            .map(|(i, &w)| w as i64 * m.exp(i) as i64)
            .sum()
    }
}

/// Shared handle to a ring.
#[derive(Clone, Debug)]
pub struct Ring(Arc<RingSpec>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl Eq for Ring {}

impl Deref for Ring {
    type Target = RingSpec;
    fn deref(&self) -> &RingSpec {
        &self.0
    }
}

impl Ring {
    /// Standard-graded ring over the rationals.
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Ring> {
        Self::with_degrees(names, &vec![1; names.len()], CoefficientField::Rationals)
    }

    pub fn with_degrees<S: AsRef<str>>(
        names: &[S],
        degrees: &[u32],
        field: CoefficientField,
    ) -> Result<Ring> {
        if names.is_empty() {
            return Err(Error::InvalidRing("a ring needs at least one variable".into()));
        }
        if names.len() > MAX_VARS {
            return Err(Error::InvalidRing(format!(
                "{} variables requested, at most {MAX_VARS} supported",
                names.len()
            )));
        }
        if degrees.len() != names.len() {
            return Err(Error::LengthMismatch(names.len(), degrees.len()));
        }
        if degrees.contains(&0) {
            return Err(Error::InvalidRing("variable degrees must be positive".into()));
        }
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            if !valid_name(n) {
                return Err(Error::InvalidRing(format!("invalid variable name `{n}`")));
            }
            if names[..i].contains(n) {
                return Err(Error::InvalidRing(format!("duplicate variable `{n}`")));
            }
        }
        Ok(Ring(Arc::new(RingSpec { names, degrees: degrees.to_vec(), field })))
    }

    /// Ring with variables `prefix1, ..., prefixN`.
    pub fn numbered(prefix: &str, n: usize) -> Result<Ring> {
        let names: Vec<String> = (1..=n).map(|i| format!("{prefix}{i}")).collect();
        Ring::new(&names)
    }

    pub fn spec(&self) -> &RingSpec {
        &self.0
    }
}

/// Exponent vector; entries past the ring's variable count are zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    e: [u16; MAX_VARS],
}

impl Default for Monomial {
    fn default() -> Self {
        Monomial::one()
    }
}

impl Monomial {
    pub const fn one() -> Self {
        Monomial { e: [0; MAX_VARS] }
    }

    pub fn var(i: usize, exp: u16) -> Self {
        let mut m = Monomial::one();
        m.e[i] = exp;
        m
    }

    /// Panics if `exps` is longer than [`MAX_VARS`] or an entry overflows.
    pub fn from_exps(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many exponents");
        let mut m = Monomial::one();
        for (i, &x) in exps.iter().enumerate() {
            m.e[i] = u16::try_from(x).expect("exponent overflow");
        }
        m
    }

    pub fn exp(&self, i: usize) -> u16 {
        self.e[i]
    }

    pub fn set_exp(&mut self, i: usize, v: u16) {
        self.e[i] = v;
    }

    pub fn exps(&self, n: usize) -> Vec<u32> {
        self.e[..n].iter().map(|&x| x as u32).collect()
    }

    pub fn raw(&self) -> &[u16; MAX_VARS] {
        &self.e
    }

    pub fn is_one(&self) -> bool {
        self.e.iter().all(|&x| x == 0)
    }

    /// Unweighted total degree.
    pub fn total(&self) -> u32 {
        self.e.iter().map(|&x| x as u32).sum()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut r = *self;
        for i in 0..MAX_VARS {
            r.e[i] = self.e[i].checked_add(o.e[i]).expect("exponent overflow");
        }
        r
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        self.e.iter().zip(o.e.iter()).all(|(a, b)| a <= b)
    }

    /// `o / self` when `self` divides `o`.
    pub fn quotient_of(&self, o: &Monomial) -> Option<Monomial> {
        if !self.divides(o) {
            return None;
        }
        let mut r = *o;
        for i in 0..MAX_VARS {
            r.e[i] -= self.e[i];
        }
        Some(r)
    }

    pub fn lcm(&self, o: &Monomial) -> Monomial {
        let mut r = *self;
        for i in 0..MAX_VARS {
            r.e[i] = self.e[i].max(o.e[i]);
        }
        r
    }

    pub fn gcd(&self, o: &Monomial) -> Monomial {
        let mut r = *self;
        for i in 0..MAX_VARS {
            r.e[i] = self.e[i].min(o.e[i]);
        }
        r
    }

    pub fn coprime(&self, o: &Monomial) -> bool {
        self.e.iter().zip(o.e.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// The single variable index when this is a pure power `x_i^k`, `k ≥ 1`.
    pub fn pure_power(&self) -> Option<usize> {
        let mut found = None;
        for (i, &x) in self.e.iter().enumerate() {
            if x > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.e.iter().enumerate().filter(|(_, &x)| x > 0).map(|(i, _)| i)
    }

    pub fn display<'a>(&'a self, ring: &'a RingSpec) -> MonomialDisplay<'a> {
        MonomialDisplay { m: self, ring }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.e.iter().rposition(|&x| x > 0).map_or(0, |p| p + 1);
        write!(f, "{:?}", &self.e[..last])
    }
}

pub struct MonomialDisplay<'a> {
    m: &'a Monomial,
    ring: &'a RingSpec,
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, name) in self.ring.names().iter().enumerate() {
            let x = self.m.exp(i);
            if x == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(name)?;
            if x > 1 {
                write!(f, "^{x}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_validation() {
        assert!(Ring::new(&["X", "Y"]).is_ok());
        assert!(Ring::new(&["X", "X"]).is_err());
        assert!(Ring::new(&[""]).is_err());
        assert!(Ring::new::<&str>(&[]).is_err());
        assert!(Ring::with_degrees(&["X"], &[0], CoefficientField::Rationals).is_err());
    }

    #[test]
    fn monomial_basics() {
        let a = Monomial::from_exps(&[2, 1]);
        let b = Monomial::from_exps(&[1, 3]);
        assert_eq!(a.lcm(&b), Monomial::from_exps(&[2, 3]));
        assert_eq!(a.gcd(&b), Monomial::from_exps(&[1, 1]));
        assert!(Monomial::from_exps(&[1, 1]).divides(&a));
        assert_eq!(
            Monomial::from_exps(&[1, 1]).quotient_of(&a),
            Some(Monomial::from_exps(&[1]))
        );
        assert_eq!(Monomial::var(1, 4).pure_power(), Some(1));
        assert_eq!(a.pure_power(), None);
        let r = Ring::new(&["X", "Y"]).unwrap();
        assert_eq!(a.display(&r).to_string(), "X^2*Y");
        assert_eq!(Monomial::one().display(&r).to_string(), "1");
    }
}
