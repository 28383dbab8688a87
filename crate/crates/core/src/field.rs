//! Coefficient fields.

use std::fmt;

use num_traits::ToPrimitive;

use crate::rational::Rat;

/// Operations the Gröbner engine needs from a coefficient field.
pub trait Field: Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Panics on zero.
    fn inv(&self) -> Self;
    fn from_i64(n: i64) -> Self;
    /// Image of a rational number, `None` when its denominator vanishes.
    fn from_rat(r: &Rat) -> Option<Self>;

    fn div(&self, o: &Self) -> Self {
        self.mul(&o.inv())
    }
}

impl Field for Rat {
    fn zero() -> Self {
        Rat::zero()
    }
    fn one() -> Self {
        Rat::one()
    }
    fn is_zero(&self) -> bool {
        Rat::is_zero(self)
    }
    fn is_one(&self) -> bool {
        Rat::is_one(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        Rat::inv(self)
    }
    fn from_i64(n: i64) -> Self {
        Rat::from_int(n)
    }
    fn from_rat(r: &Rat) -> Option<Self> {
        Some(r.clone())
    }
}

/// The prime 2^31 - 1.
pub const PRIME: u64 = 2_147_483_647;

/// Element of the prime field of order [`PRIME`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Fp(u32);

impl Fp {
    pub fn new(n: i64) -> Self {
        Fp(n.rem_euclid(PRIME as i64) as u32)
    }

    pub fn value(self) -> u32 {
        self.0
    }

    fn pow(self, mut e: u64) -> Fp {
        let mut base = self.0 as u64;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % PRIME;
            }
            base = base * base % PRIME;
            e >>= 1;
        }
        Fp(acc as u32)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Field for Fp {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn is_one(&self) -> bool {
        self.0 == 1
    }
    fn add(&self, o: &Self) -> Self {
        Fp(((self.0 as u64 + o.0 as u64) % PRIME) as u32)
    }
    fn sub(&self, o: &Self) -> Self {
        Fp(((self.0 as u64 + PRIME - o.0 as u64) % PRIME) as u32)
    }
    fn mul(&self, o: &Self) -> Self {
        Fp((self.0 as u64 * o.0 as u64 % PRIME) as u32)
    }
    fn neg(&self) -> Self {
        Fp(((PRIME - self.0 as u64) % PRIME) as u32)
    }
    fn inv(&self) -> Self {
        assert!(self.0 != 0, "inverse of zero");
        self.pow(PRIME - 2)
    }
    fn from_i64(n: i64) -> Self {
        Fp::new(n)
    }
    fn from_rat(r: &Rat) -> Option<Self> {
        let p = num_bigint::BigInt::from(PRIME);
        let n = (r.numer() % &p).to_i64()?;
        let d = (r.denom() % &p).to_i64()?;
        if d == 0 {
            return None;
        }
        Some(Fp::new(n).mul(&Fp::new(d).inv()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_inverse() {
        for n in [1i64, 2, 3, 12345, -7, PRIME as i64 - 1] {
            let a = Fp::new(n);
            assert!(a.mul(&a.inv()).is_one());
        }
        assert_eq!(Fp::new(-1), Fp::new(PRIME as i64 - 1));
    }

    #[test]
    fn rational_images() {
        let half = Fp::from_rat(&Rat::new(1, 2)).unwrap();
        assert_eq!(half.add(&half), Fp::one());
        assert_eq!(Fp::from_rat(&Rat::new(1, PRIME as i64)), None);
    }
}
