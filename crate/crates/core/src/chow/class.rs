use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// A rational class `a0 + a1 H + a2 H^2 + a3 H^3` in the numerical Chow ring
/// of a Picard-rank-one threefold. Products are truncated above degree 3.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChowClass {
    coeffs: [BigRational; 4],
}

pub(crate) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub(crate) fn frac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl ChowClass {
    pub fn new(a0: BigRational, a1: BigRational, a2: BigRational, a3: BigRational) -> Self {
        ChowClass {
            coeffs: [a0, a1, a2, a3],
        }
    }

    pub fn zero() -> Self {
        ChowClass::new(
            BigRational::zero(),
            BigRational::zero(),
            BigRational::zero(),
            BigRational::zero(),
        )
    }

    pub fn one() -> Self {
        ChowClass::constant(rat(1))
    }

    pub fn constant(a0: BigRational) -> Self {
        let mut c = ChowClass::zero();
        c.coeffs[0] = a0;
        c
    }

    /// `k` times the class of a point, i.e. `k/h3 · H^3`.
    pub fn points(k: i64, h3: i64) -> Self {
        let mut c = ChowClass::zero();
        c.coeffs[3] = frac(k, h3);
        c
    }

    /// `exp(t H)`, the Chern character of `O(t)`.
    pub fn exp_hyperplane(t: i64) -> Self {
        ChowClass::new(rat(1), rat(t), frac(t * t, 2), frac(t * t * t, 6))
    }

    pub fn coeff(&self, i: usize) -> &BigRational {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[BigRational; 4] {
        &self.coeffs
    }

    /// Degree of the top piece, `a3 · H^3`.
    pub fn degree(&self, h3: i64) -> BigRational {
        &self.coeffs[3] * rat(h3)
    }

    /// Multiplies by `exp(tH)`; this is the Chern character of a twist by `O(t)`.
    pub fn twist(&self, t: i64) -> Self {
        self * &ChowClass::exp_hyperplane(t)
    }

    /// Flips the sign of the odd-degree pieces (Chern character of the dual
    /// of a locally free sheaf).
    pub fn dual(&self) -> Self {
        let [a0, a1, a2, a3] = self.coeffs.clone();
        ChowClass::new(a0, -a1, a2, -a3)
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        let [a0, a1, a2, a3] = &self.coeffs;
        ChowClass::new(a0 * k, a1 * k, a2 * k, a3 * k)
    }
}

impl Add<&ChowClass> for &ChowClass {
    type Output = ChowClass;
    fn add(self, rhs: &ChowClass) -> ChowClass {
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        out
    }
}

impl Add for ChowClass {
    type Output = ChowClass;
    fn add(self, rhs: ChowClass) -> ChowClass {
        &self + &rhs
    }
}

impl Sub<&ChowClass> for &ChowClass {
    type Output = ChowClass;
    fn sub(self, rhs: &ChowClass) -> ChowClass {
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
        out
    }
}

impl Sub for ChowClass {
    type Output = ChowClass;
    fn sub(self, rhs: ChowClass) -> ChowClass {
        &self - &rhs
    }
}

impl Neg for &ChowClass {
    type Output = ChowClass;
    fn neg(self) -> ChowClass {
        ChowClass::zero() - self.clone()
    }
}

impl Mul<&ChowClass> for &ChowClass {
    type Output = ChowClass;
    fn mul(self, rhs: &ChowClass) -> ChowClass {
        let mut out = ChowClass::zero();
        for i in 0..4 {
            for j in 0..4 - i {
                out.coeffs[i + j] += &self.coeffs[i] * &rhs.coeffs[j];
            }
        }
        out
    }
}

impl Mul for ChowClass {
    type Output = ChowClass;
    fn mul(self, rhs: ChowClass) -> ChowClass {
        &self * &rhs
    }
}

impl fmt::Display for ChowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a0, a1, a2, a3] = &self.coeffs;
        write!(f, "{a0} + ({a1})H + ({a2})H^2 + ({a3})H^3")
    }
}

pub(crate) fn is_integer(q: &BigRational) -> bool {
    q.denom().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_is_a_homomorphism() {
        for a in -5..=5 {
            for b in -5..=5 {
                let lhs = ChowClass::exp_hyperplane(a) * ChowClass::exp_hyperplane(b);
                assert_eq!(lhs, ChowClass::exp_hyperplane(a + b));
            }
        }
    }

    #[test]
    fn product_truncates() {
        let h = ChowClass::new(rat(0), rat(1), rat(0), rat(0));
        let h2 = &h * &h;
        let h4 = &h2 * &h2;
        assert_eq!(h4, ChowClass::zero());
        assert_eq!((&h2 * &h).degree(5), rat(5));
    }
}
