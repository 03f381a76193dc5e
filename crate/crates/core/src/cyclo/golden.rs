//! The real quadratic field Q(sqrt5), used for the H3/H4 reflection matrices.

use super::Rational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Exact element a + b*sqrt(5) of Q(sqrt5).
///
/// Much faster than the same value embedded in Q(zeta_5); the embedding
/// sqrt5 = 2*(E(5) + E(5)^4) + 1 is available via [`GoldenRational::to_cyclo`]
/// on the cyclotomic side.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GoldenRational {
    a: Rational,
    b: Rational,
}

impl GoldenRational {
    pub fn new(a: Rational, b: Rational) -> Self {
        GoldenRational { a, b }
    }

    pub fn from_int(n: i64) -> Self {
        GoldenRational::new(Rational::from_integer(n.into()), Rational::zero())
    }

    pub fn from_rational(a: Rational) -> Self {
        GoldenRational::new(a, Rational::zero())
    }

    pub fn sqrt5() -> Self {
        GoldenRational::new(Rational::zero(), Rational::one())
    }

    /// The golden ratio (1 + sqrt5)/2 = 2*cos(pi/5).
    pub fn phi() -> Self {
        let half = Rational::new(1.into(), 2.into());
        GoldenRational::new(half.clone(), half)
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn sqrt5_part(&self) -> &Rational {
        &self.b
    }

    /// Galois conjugate a - b*sqrt(5).
    pub fn conj(&self) -> Self {
        GoldenRational::new(self.a.clone(), -self.b.clone())
    }

    /// Field norm a^2 - 5 b^2.
    pub fn norm(&self) -> Rational {
        let five = Rational::from_integer(5.into());
        self.a.clone() * self.a.clone() - five * self.b.clone() * self.b.clone()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.a.clone())
    }

    pub fn inv(&self) -> Self {
        let n = self.norm();
        assert!(!n.is_zero(), "inverse of zero in Q(sqrt5)");
        GoldenRational::new(self.a.clone() / n.clone(), -self.b.clone() / n)
    }

    /// Value in the embedding sqrt5 -> +2.2360... (or the conjugate one).
    pub fn to_f64(&self, primary: bool) -> f64 {
        let r = |x: &Rational| -> f64 {
            let n = x.numer().to_string().parse::<f64>().unwrap_or(f64::NAN);
            let d = x.denom().to_string().parse::<f64>().unwrap_or(f64::NAN);
            n / d
        };
        let s = if primary { 5f64.sqrt() } else { -(5f64.sqrt()) };
        r(&self.a) + r(&self.b) * s
    }

    /// Exact sign in the primary embedding: -1, 0 or 1.
    pub fn sign(&self) -> i32 {
        // a + b*sqrt5 > 0  <=>  a > -b*sqrt5; compare squares with care for signs.
        let sa = rat_sign(&self.a);
        let sb = rat_sign(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 {
            return sb;
        }
        if sa == sb {
            return sa;
        }
        // Opposite signs: |a| vs |b|*sqrt5, i.e. a^2 vs 5 b^2.
        let five = Rational::from_integer(5.into());
        let lhs = self.a.clone() * self.a.clone();
        let rhs = five * self.b.clone() * self.b.clone();
        match lhs.cmp(&rhs) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }
}

fn rat_sign(x: &Rational) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

impl PartialOrd for GoldenRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order induced by the primary real embedding (exact).
impl Ord for GoldenRational {
    fn cmp(&self, other: &Self) -> Ordering {
        let d = self.clone() - other.clone();
        match d.sign() {
            1 => Ordering::Greater,
            -1 => Ordering::Less,
            _ => Ordering::Equal,
        }
    }
}

impl Add for GoldenRational {
    type Output = GoldenRational;
    fn add(self, rhs: Self) -> Self {
        GoldenRational::new(self.a + rhs.a, self.b + rhs.b)
    }
}

impl Sub for GoldenRational {
    type Output = GoldenRational;
    fn sub(self, rhs: Self) -> Self {
        GoldenRational::new(self.a - rhs.a, self.b - rhs.b)
    }
}

impl Mul for GoldenRational {
    type Output = GoldenRational;
    fn mul(self, rhs: Self) -> Self {
        let five = Rational::from_integer(5.into());
        GoldenRational::new(
            self.a.clone() * rhs.a.clone() + five * self.b.clone() * rhs.b.clone(),
            self.a * rhs.b + self.b * rhs.a,
        )
    }
}

impl Div for GoldenRational {
    type Output = GoldenRational;
    fn div(self, rhs: Self) -> Self {
        self * rhs.inv()
    }
}

impl Neg for GoldenRational {
    type Output = GoldenRational;
    fn neg(self) -> Self {
        GoldenRational::new(-self.a, -self.b)
    }
}

impl Zero for GoldenRational {
    fn zero() -> Self {
        GoldenRational::new(Rational::zero(), Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for GoldenRational {
    fn one() -> Self {
        GoldenRational::new(Rational::one(), Rational::zero())
    }
}

impl fmt::Display for GoldenRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if self.a.is_zero() {
            return write!(f, "{}*r5", self.b);
        }
        if self.b.is_positive() {
            write!(f, "{}+{}*r5", self.a, self.b)
        } else {
            write!(f, "{}{}*r5", self.a, self.b)
        }
    }
}

impl fmt::Debug for GoldenRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::rat;

    #[test]
    fn phi_satisfies_its_quadratic() {
        let phi = GoldenRational::phi();
        assert_eq!(
            phi.clone() * phi.clone(),
            phi.clone() + GoldenRational::from_int(1)
        );
        assert_eq!(phi.clone() * phi.conj(), -GoldenRational::from_int(1));
        assert_eq!(phi.norm(), rat(-1, 1));
    }

    #[test]
    fn exact_ordering() {
        // phi = 1.618... lies strictly between 8/5 and 13/8.
        let phi = GoldenRational::phi();
        assert!(GoldenRational::from_rational(rat(8, 5)) < phi);
        assert!(phi < GoldenRational::from_rational(rat(13, 8)));
        // sqrt5 = 2.236... : squares compare as 5 < 81/16.
        assert!(GoldenRational::sqrt5() < GoldenRational::from_rational(rat(9, 4)));
        assert!(GoldenRational::from_rational(rat(11, 5)) < GoldenRational::sqrt5());
        assert_eq!(GoldenRational::sqrt5().sign(), 1);
        assert_eq!((-GoldenRational::phi()).sign(), -1);
        assert_eq!(GoldenRational::from_int(0).sign(), 0);
    }

    #[test]
    fn inverses_and_embedding() {
        let x = GoldenRational::new(rat(3, 2), rat(-1, 3));
        assert_eq!(x.clone() * x.inv(), GoldenRational::from_int(1));
        let f = x.to_f64(true);
        let expect = 1.5 - 5f64.sqrt() / 3.0;
        assert!((f - expect).abs() < 1e-12);
        // Conjugate embedding flips the sign of sqrt5.
        assert!((x.to_f64(false) - (1.5 + 5f64.sqrt() / 3.0)).abs() < 1e-12);
        assert!(x.clone() * x.conj() == GoldenRational::from_rational(x.norm()));
    }
}
