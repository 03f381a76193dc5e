//! Exact scalar types: rationals, cyclotomics, the golden field, and dense
//! univariate polynomials over any of them.

mod cyclotomic;
mod golden;
mod parse;
mod poly;

pub use cyclotomic::CycloNumber;
pub use golden::GoldenRational;
pub use poly::Poly;

#[allow(unused_imports)]
pub(crate) use cyclotomic::rational_f64;

/// Arbitrary-precision rational, the base scalar for everything exact.
pub type Rational = num::BigRational;

/// Shorthand: the rational p/q.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}

/// Shorthand: the rational n.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};

    #[test]
    fn zeta_four_squares_to_minus_one() {
        let i = CycloNumber::zeta(4, 1);
        assert_eq!(i.clone() * i.clone(), CycloNumber::from_int(-1));
        assert_eq!(i.pow(4), CycloNumber::one());
        assert!(!i.is_real());
        assert_eq!(i.conj(), CycloNumber::zeta(4, 3));
    }

    #[test]
    fn conductor_is_minimal() {
        // E(6) = 1 + E(3), stored at order 3.
        let z6 = CycloNumber::zeta(6, 1);
        assert_eq!(z6.order(), 3);
        assert_eq!(z6, CycloNumber::one() + CycloNumber::zeta(3, 1));
        // 1 + E(5) + E(5)^2 + E(5)^3 + E(5)^4 = 0 collapses to order 1.
        let s = CycloNumber::sum((0..5).map(|k| CycloNumber::zeta(5, k)));
        assert!(s.is_zero());
        // E(8) + E(8)^7 = sqrt2 stays at order 8; its square is rational.
        let sqrt2 = CycloNumber::zeta(8, 1) + CycloNumber::zeta(8, 7);
        assert_eq!(sqrt2.order(), 8);
        assert_eq!(sqrt2.clone() * sqrt2, CycloNumber::from_int(2));
    }

    #[test]
    fn golden_embedding_round_trips() {
        let phi = GoldenRational::phi();
        let c = CycloNumber::from_golden(&phi);
        assert_eq!(c.order(), 5);
        // phi = 1 + E(5) + E(5)^4 ... check against the defining quadratic.
        assert_eq!(c.clone() * c.clone(), c.clone() + CycloNumber::one());
        assert_eq!(c.to_golden().unwrap(), phi);
        // 2cos(2pi/5) = E(5) + E(5)^4 = phi - 1.
        let two_cos = CycloNumber::zeta(5, 1) + CycloNumber::zeta(5, 4);
        assert_eq!(
            two_cos.to_golden().unwrap(),
            phi - GoldenRational::from_int(1)
        );
    }

    #[test]
    fn inverse_and_division() {
        let x = CycloNumber::zeta(7, 3) + CycloNumber::from_int(2);
        let y = x.inv().unwrap();
        assert!((x.clone() * y).is_one());
        let q = CycloNumber::zeta(12, 5) / CycloNumber::zeta(12, 2);
        assert_eq!(q, CycloNumber::zeta(12, 3));
    }

    #[test]
    fn galois_fixes_rationals_and_permutes_roots() {
        let z = CycloNumber::zeta(9, 1);
        assert_eq!(z.galois(2), CycloNumber::zeta(9, 2));
        let r = CycloNumber::from_rational(rat(-7, 3));
        assert_eq!(r.galois(5), r);
        // Trace of E(9) over Q: sum over the Galois orbit is rational.
        let tr = CycloNumber::sum(
            (1..9)
                .filter(|a| gcd(*a, 9) == 1)
                .map(|a| z.galois(a as i64)),
        );
        assert_eq!(tr, CycloNumber::zero_value());
    }

    #[test]
    fn display_and_parse_round_trip() {
        let vals = [
            CycloNumber::zero_value(),
            CycloNumber::from_int(-3),
            CycloNumber::from_rational(rat(5, 4)),
            CycloNumber::zeta(5, 2),
            CycloNumber::from_rational(rat(1, 2))
                - CycloNumber::from_rational(rat(3, 2)) * CycloNumber::zeta(7, 4)
                + CycloNumber::zeta(7, 1),
            CycloNumber::zeta(8, 1) + CycloNumber::zeta(8, 7),
        ];
        for v in vals {
            let s = v.to_string();
            let back: CycloNumber = s.parse().unwrap();
            assert_eq!(back, v, "round trip failed for {s}");
        }
        let parsed: CycloNumber = "1/2 - 1/2*E(5)^2 + E(5)^3".parse().unwrap();
        let built = CycloNumber::from_rational(rat(1, 2))
            - CycloNumber::from_rational(rat(1, 2)) * CycloNumber::zeta(5, 2)
            + CycloNumber::zeta(5, 3);
        assert_eq!(parsed, built);
        assert!("E(0)".parse::<CycloNumber>().is_err());
        assert!("2**E(3)".parse::<CycloNumber>().is_err());
        assert!("".parse::<CycloNumber>().is_err());
    }

    #[test]
    fn float_embedding_matches() {
        let z = CycloNumber::zeta(5, 1) + CycloNumber::zeta(5, 4);
        let v = z.to_complex_primary();
        let expect = 2.0 * (2.0 * std::f64::consts::PI / 5.0).cos();
        assert!((v.re - expect).abs() < 1e-12 && v.im.abs() < 1e-12);
        // Golden field: primary embedding of sqrt5 is +sqrt(5).
        let s5 = CycloNumber::from_golden(&GoldenRational::sqrt5());
        assert!((s5.to_complex_primary().re - 5f64.sqrt()).abs() < 1e-12);
        // sqrt5 changes sign across embeddings, so it is not totally positive
        // but its square is.
        assert!(!s5.totally_positive());
        assert!((s5.clone() * s5.clone()).totally_positive());
        assert_eq!((s5.clone() * s5).to_rational(), Some(int(5)));
    }

    #[test]
    fn root_of_unity_detection() {
        assert_eq!(CycloNumber::one().as_root_of_unity(), Some((1, 0)));
        assert_eq!(CycloNumber::from_int(-1).as_root_of_unity(), Some((2, 1)));
        assert_eq!(CycloNumber::zeta(12, 7).as_root_of_unity(), Some((12, 7)));
        assert_eq!(
            (CycloNumber::zeta(3, 1) * CycloNumber::from_int(-1)).as_root_of_unity(),
            Some((6, 5))
        );
        assert_eq!(CycloNumber::from_int(2).as_root_of_unity(), None);
        assert_eq!(
            (CycloNumber::zeta(8, 1) + CycloNumber::zeta(8, 7)).as_root_of_unity(),
            None
        );
    }

    fn gcd(a: u32, b: u32) -> u32 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
}
