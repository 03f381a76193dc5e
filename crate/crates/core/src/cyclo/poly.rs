//! Dense univariate polynomials over a generic scalar ring.

use crate::{Error, FieldScalar, Result, RingScalar};
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Polynomial in one variable; coefficient vector with constant term first.
/// The zero polynomial is the empty vector, and trailing zeros are trimmed so
/// equality is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: RingScalar> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(c: T) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial c * x^k.
    pub fn monomial(c: T, k: usize) -> Self {
        let mut v = vec![T::zero(); k + 1];
        v[k] = c;
        Poly::new(v)
    }

    /// The variable x.
    pub fn x() -> Self {
        Poly::monomial(T::one(), 1)
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Coefficient of x^k (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    /// Lowest exponent with a nonzero coefficient, or `None` for zero.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    /// Evaluate through a scalar homomorphism, e.g. into `Complex64`.
    pub fn eval_map<U: RingScalar>(&self, x: &U, f: impl Fn(&T) -> U) -> U {
        let mut acc = U::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + f(c);
        }
        acc
    }

    pub fn map<U: RingScalar>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn scale(&self, c: &T) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Multiply by x^k.
    pub fn shift(&self, k: usize) -> Self {
        if self.coeffs.is_empty() {
            return self.clone();
        }
        let mut v = vec![T::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Poly { coeffs: v }
    }

    /// x^c * p(1/x); requires c >= deg(p).
    pub fn reverse(&self, c: usize) -> Result<Self> {
        match self.degree() {
            None => Ok(Poly::new(vec![])),
            Some(d) if d > c => Err(Error::InvalidParameter(format!(
                "reverse exponent {c} below degree {d}"
            ))),
            Some(_) => {
                let mut v = vec![T::zero(); c + 1];
                for (k, a) in self.coeffs.iter().enumerate() {
                    v[c - k] = a.clone();
                }
                Ok(Poly::new(v))
            }
        }
    }

    /// Whether x^c * p(1/x) == p.
    pub fn is_palindromic(&self, c: usize) -> bool {
        self.reverse(c).map_or(false, |r| r == *self)
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Poly::constant(T::one());
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            n >>= 1;
        }
        acc
    }
}

impl<T: FieldScalar> Poly<T> {
    /// Long division; returns (quotient, remainder).
    pub fn div_rem(&self, d: &Poly<T>) -> Result<(Poly<T>, Poly<T>)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = d.leading().unwrap().inv();
        let mut rem = self.coeffs.clone();
        if rem.len() < dd + 1 {
            return Ok((Poly::new(vec![]), self.clone()));
        }
        let mut quot = vec![T::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = rem[k].clone() * lead_inv.clone();
            if !c.is_zero() {
                for j in 0..dd {
                    let t = rem[k - dd + j].clone() - c.clone() * d.coeffs[j].clone();
                    rem[k - dd + j] = t;
                }
            }
            rem[k] = T::zero();
            quot[k - dd] = c;
        }
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    /// Exact division; errors if the remainder is nonzero.
    pub fn exact_div(&self, d: &Poly<T>) -> Result<Poly<T>> {
        let (q, r) = self.div_rem(d)?;
        if r.coeffs.is_empty() {
            Ok(q)
        } else {
            Err(Error::InexactDivision(format!(
                "remainder of degree {:?}",
                r.degree()
            )))
        }
    }

    pub fn gcd(&self, other: &Poly<T>) -> Poly<T> {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.coeffs.is_empty() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        if let Some(l) = a.leading().cloned() {
            a = a.scale(&l.inv());
        }
        a
    }
}

impl<T: RingScalar> Add for &Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for k in 0..n {
            v.push(self.coeff(k) + rhs.coeff(k));
        }
        Poly::new(v)
    }
}

impl<T: RingScalar> Sub for &Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for k in 0..n {
            v.push(self.coeff(k) - rhs.coeff(k));
        }
        Poly::new(v)
    }
}

impl<T: RingScalar> Mul for &Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: &Poly<T>) -> Poly<T> {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Poly::new(vec![]);
        }
        let mut v = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let t = v[i + j].clone() + a.clone() * b.clone();
                v[i + j] = t;
            }
        }
        Poly::new(v)
    }
}

impl<T: RingScalar> Add for Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: Poly<T>) -> Poly<T> {
        &self + &rhs
    }
}
impl<T: RingScalar> Sub for Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: Poly<T>) -> Poly<T> {
        &self - &rhs
    }
}
impl<T: RingScalar> Mul for Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: Poly<T>) -> Poly<T> {
        &self * &rhs
    }
}
impl<T: RingScalar> Neg for Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl<T: RingScalar> Zero for Poly<T> {
    fn zero() -> Self {
        Poly { coeffs: vec![] }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<T: RingScalar> One for Poly<T> {
    fn one() -> Self {
        Poly::constant(T::one())
    }
}

impl<T: RingScalar + fmt::Display> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let s = c.to_string();
            // A sum-like coefficient (cyclotomic with several terms) keeps its
            // own sign structure and gets parenthesized.
            let compound = s.len() > 1 && s[1..].contains(['+', '-']);
            let (neg, mag) = if !compound && s.starts_with('-') {
                (true, s[1..].to_string())
            } else {
                (false, s)
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let var = match k {
                0 => String::new(),
                1 => "x".into(),
                _ => format!("x^{k}"),
            };
            match (k, mag.as_str(), compound) {
                (0, _, _) => write!(f, "{mag}")?,
                (_, "1", false) => write!(f, "{var}")?,
                (_, _, true) => write!(f, "({mag})*{var}")?,
                _ => write!(f, "{mag}*{var}")?,
            }
        }
        Ok(())
    }
}

impl<T: RingScalar + fmt::Display> fmt::Debug for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::{int, rat, Rational};

    fn p(cs: &[i64]) -> Poly<Rational> {
        Poly::new(cs.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn division_with_remainder() {
        let a = p(&[1, 0, 0, 0, 0, -1]); // 1 - x^5
        let d = p(&[1, -1]); // 1 - x
        let q = a.exact_div(&d).unwrap();
        assert_eq!(q, p(&[1, 1, 1, 1, 1]));
        let (q2, r2) = p(&[1, 2, 3]).div_rem(&p(&[1, 1])).unwrap();
        assert_eq!(&(&q2 * &p(&[1, 1])) + &r2, p(&[1, 2, 3]));
        assert!(r2.degree() < Some(1) || r2.is_zero());
        assert!(p(&[1, 1, 1]).exact_div(&p(&[1, 1])).is_err());
    }

    #[test]
    fn gcd_is_monic() {
        let a = &p(&[-1, 0, 1]) * &p(&[3, 3]); // (x^2-1)(3x+3)
        let b = &p(&[1, 1]) * &p(&[0, 2]); // (x+1)(2x)
        assert_eq!(a.gcd(&b), p(&[1, 1]));
        assert_eq!(p(&[0]).gcd(&p(&[])), Poly::new(vec![]));
    }

    #[test]
    fn reverse_and_palindromes() {
        let a = p(&[1, 2, 3]);
        assert_eq!(a.reverse(2).unwrap(), p(&[3, 2, 1]));
        assert_eq!(a.reverse(4).unwrap(), p(&[0, 0, 3, 2, 1]));
        assert!(a.reverse(1).is_err());
        assert!(p(&[1, 5, 1]).is_palindromic(2));
        assert!(!p(&[1, 5, 2]).is_palindromic(2));
        // Poincare polynomial of a rank-2 example: (1+x)(1+x+x^2).
        let poin = &p(&[1, 1]) * &p(&[1, 1, 1]);
        assert!(poin.is_palindromic(3));
    }

    #[test]
    fn eval_and_maps() {
        let a = p(&[2, 0, 1]); // 2 + x^2
        assert_eq!(a.eval(&int(3)), int(11));
        assert_eq!(a.eval_map(&rat(1, 2), |c| c.clone()), rat(9, 4));
        assert_eq!(a.valuation(), Some(0));
        assert_eq!(p(&[0, 0, 7]).valuation(), Some(2));
        assert_eq!(Poly::<Rational>::new(vec![]).valuation(), None);
        assert_eq!(a.map(|c| c * int(2)), p(&[4, 0, 2]));
    }

    #[test]
    fn display_ascending() {
        assert_eq!(p(&[]).to_string(), "0");
        assert_eq!(p(&[1, -2, 0, 1]).to_string(), "1 - 2*x + x^3");
    }
}
