//! Exact cyclotomic arithmetic in the power basis.
//!
//! A [`CycloNumber`] is an element of Q(zeta_N) stored as rational coordinates
//! on the power basis 1, zeta, ..., zeta^(phi(N)-1), reduced modulo the N-th
//! cyclotomic polynomial.  Every arithmetic result is brought to its least
//! conductor (descending through the primes dividing N), so equality and
//! hashing are structural.  Values are immutable and safe to share across
//! threads; per-order reduction data is cached in a global registry.

use super::{GoldenRational, Poly, Rational};
use crate::{Error, Result};
use num::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use once_cell::sync::Lazy;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, Mutex};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloNumber {
    order: u32,
    coeffs: Vec<Rational>,
}

/// Per-order reduction data: the cyclotomic polynomial, the expansion of every
/// power zeta^k on the basis, and solvers for conductor descent.
struct Ctx {
    order: u32,
    phi: usize,
    powers: Vec<Vec<Rational>>,
    descents: Mutex<HashMap<u32, Arc<Descent>>>,
    embeds: Mutex<HashMap<u32, Arc<Vec<Vec<Rational>>>>>,
}

/// Row-reduction transform solving  A y = x  for the subfield basis matrix A.
struct Descent {
    target_phi: usize,
    transform: Vec<Vec<Rational>>,
}

static REGISTRY: Lazy<Mutex<HashMap<u32, Arc<Ctx>>>> = Lazy::new(|| Mutex::new(HashMap::new()));

fn euler_phi(n: u32) -> usize {
    let mut n = n as u64;
    let mut result = n;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result as usize
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut p = 2u32;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn cyclotomic_poly(n: u32) -> Poly<Rational> {
    // x^n - 1 divided by the product of Phi_d over proper divisors d of n.
    let mut xn = vec![Rational::zero(); n as usize + 1];
    xn[0] = -Rational::one();
    xn[n as usize] = Rational::one();
    let mut p = Poly::new(xn);
    for d in 1..n {
        if n % d == 0 {
            p = p
                .exact_div(&cyclotomic_poly(d))
                .expect("cyclotomic division");
        }
    }
    p
}

fn ctx(order: u32) -> Arc<Ctx> {
    assert!(order >= 1, "cyclotomic order must be positive");
    if let Some(c) = REGISTRY.lock().unwrap().get(&order) {
        return c.clone();
    }
    let phi = euler_phi(order);
    let min_poly = cyclotomic_poly(order);
    debug_assert_eq!(min_poly.degree(), Some(phi));
    // powers[k] = zeta^k on the basis, for 0 <= k < max(order, 2*phi - 1).
    let top = (order as usize).max(2 * phi.max(1) - 1);
    let mut powers: Vec<Vec<Rational>> = Vec::with_capacity(top);
    for k in 0..top {
        if k < phi {
            let mut v = vec![Rational::zero(); phi];
            v[k] = Rational::one();
            powers.push(v);
        } else {
            // zeta * powers[k-1], reducing the overflow term via
            // zeta^phi = -(c_0 + c_1 zeta + ... + c_{phi-1} zeta^{phi-1}).
            let prev = &powers[k - 1];
            let mut v = vec![Rational::zero(); phi + 1];
            for (i, c) in prev.iter().enumerate() {
                v[i + 1] = c.clone();
            }
            let lead = v[phi].clone();
            if !lead.is_zero() {
                for i in 0..phi {
                    let t = v[i].clone() - lead.clone() * min_poly.coeff(i);
                    v[i] = t;
                }
            }
            v.truncate(phi);
            powers.push(v);
        }
    }
    let c = Arc::new(Ctx {
        order,
        phi,
        powers,
        descents: Mutex::new(HashMap::new()),
        embeds: Mutex::new(HashMap::new()),
    });
    REGISTRY.lock().unwrap().insert(order, c.clone());
    c
}

impl Ctx {
    /// Basis expansion rows for the subfield Q(zeta_m), m | order.
    fn embed_rows(&self, m: u32) -> Arc<Vec<Vec<Rational>>> {
        if let Some(r) = self.embeds.lock().unwrap().get(&m) {
            return r.clone();
        }
        assert_eq!(self.order % m, 0);
        let step = (self.order / m) as usize;
        let phi_m = euler_phi(m);
        let rows: Vec<Vec<Rational>> = (0..phi_m)
            .map(|i| self.powers[(i * step) % self.order.max(1) as usize].clone())
            .collect();
        let rows = Arc::new(rows);
        self.embeds.lock().unwrap().insert(m, rows.clone());
        rows
    }

    /// Row transform T with T*A = [I; 0] for the embedding matrix A of
    /// Q(zeta_m) into Q(zeta_order); used to test and perform descent.
    fn descent(&self, m: u32) -> Arc<Descent> {
        if let Some(d) = self.descents.lock().unwrap().get(&m) {
            return d.clone();
        }
        let rows = self.embed_rows(m);
        let phi_m = rows.len();
        let n = self.phi;
        // Augment A (n x phi_m, columns = subfield basis vectors) with I_n.
        let mut aug: Vec<Vec<Rational>> = (0..n)
            .map(|r| {
                let mut row: Vec<Rational> = (0..phi_m).map(|c| rows[c][r].clone()).collect();
                row.extend((0..n).map(|i| {
                    if i == r {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                }));
                row
            })
            .collect();
        let mut pivot_row = 0usize;
        for col in 0..phi_m {
            let Some(p) = (pivot_row..n).find(|&r| !aug[r][col].is_zero()) else {
                panic!("embedding matrix not of full column rank");
            };
            aug.swap(pivot_row, p);
            let inv = Rational::one() / aug[pivot_row][col].clone();
            for c in col..phi_m + n {
                let t = aug[pivot_row][c].clone() * inv.clone();
                aug[pivot_row][c] = t;
            }
            for r in 0..n {
                if r != pivot_row && !aug[r][col].is_zero() {
                    let f = aug[r][col].clone();
                    for c in col..phi_m + n {
                        let t = aug[r][c].clone() - f.clone() * aug[pivot_row][c].clone();
                        aug[r][c] = t;
                    }
                }
            }
            pivot_row += 1;
        }
        let transform: Vec<Vec<Rational>> =
            aug.into_iter().map(|row| row[phi_m..].to_vec()).collect();
        let d = Arc::new(Descent {
            target_phi: phi_m,
            transform,
        });
        self.descents.lock().unwrap().insert(m, d.clone());
        d
    }
}

impl CycloNumber {
    fn raw(order: u32, coeffs: Vec<Rational>) -> Self {
        let mut x = CycloNumber { order, coeffs };
        x.reduce();
        x
    }

    pub fn zero_value() -> Self {
        CycloNumber {
            order: 1,
            coeffs: vec![Rational::zero()],
        }
    }

    pub fn from_rational(r: Rational) -> Self {
        CycloNumber {
            order: 1,
            coeffs: vec![r],
        }
    }

    pub fn from_int(n: i64) -> Self {
        CycloNumber::from_rational(Rational::from_integer(n.into()))
    }

    /// The root of unity E(n)^k.
    pub fn zeta(n: u32, k: i64) -> Self {
        assert!(n >= 1);
        let kk = k.rem_euclid(n as i64) as u32;
        if kk == 0 {
            return CycloNumber::one();
        }
        let g = gcd_u32(kk, n);
        let (n, kk) = (n / g, kk / g);
        if n == 1 {
            return CycloNumber::one();
        }
        if n == 2 {
            return CycloNumber::from_int(-1);
        }
        let c = ctx(n);
        CycloNumber::raw(n, c.powers[kk as usize].clone())
    }

    /// Least conductor of the field the value is stored in.
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_rational(&self) -> bool {
        self.order == 1
    }

    pub fn to_rational(&self) -> Option<Rational> {
        (self.order == 1).then(|| self.coeffs[0].clone())
    }

    pub fn is_integer(&self) -> bool {
        self.order == 1 && self.coeffs[0].denom().is_one()
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.coeffs[0].numer().clone())
    }

    /// Bring to canonical form: least conductor, basis coordinates.
    fn reduce(&mut self) {
        loop {
            if self.order == 1 {
                return;
            }
            if self.coeffs.iter().skip(1).all(|c| c.is_zero()) {
                self.coeffs.truncate(1);
                self.order = 1;
                return;
            }
            let c = ctx(self.order);
            let mut descended = false;
            for p in prime_factors(self.order) {
                let m = self.order / p;
                let d = c.descent(m);
                // y = T x; solvable iff the tail rows vanish.
                let mut y = Vec::with_capacity(d.target_phi);
                let mut ok = true;
                for (r, row) in d.transform.iter().enumerate() {
                    let mut acc = Rational::zero();
                    for (t, x) in row.iter().zip(self.coeffs.iter()) {
                        if !t.is_zero() && !x.is_zero() {
                            acc += t.clone() * x.clone();
                        }
                    }
                    if r < d.target_phi {
                        y.push(acc);
                    } else if !acc.is_zero() {
                        ok = false;
                        break;
                    }
                }
                if ok {
                    self.order = m;
                    self.coeffs = y;
                    descended = true;
                    break;
                }
            }
            if !descended {
                return;
            }
        }
    }

    /// Coordinates lifted into Q(zeta_n) for order | n.
    fn lift_coeffs(&self, n: u32) -> Vec<Rational> {
        if n == self.order {
            return self.coeffs.clone();
        }
        let c = ctx(n);
        let rows = c.embed_rows(self.order);
        let mut v = vec![Rational::zero(); c.phi];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rows[i].iter().enumerate() {
                if !b.is_zero() {
                    v[j] += a.clone() * b.clone();
                }
            }
        }
        v
    }

    /// Sum of many values, reducing only once (fast path for inner products).
    pub fn sum<I: IntoIterator<Item = CycloNumber>>(items: I) -> CycloNumber {
        let items: Vec<CycloNumber> = items.into_iter().collect();
        if items.is_empty() {
            return CycloNumber::zero_value();
        }
        let n = items.iter().fold(1u32, |l, x| lcm_u32(l, x.order));
        let phi = ctx(n).phi;
        let mut acc = vec![Rational::zero(); phi];
        for x in items {
            let v = x.lift_coeffs(n);
            for (a, b) in acc.iter_mut().zip(v) {
                if !b.is_zero() {
                    *a += b;
                }
            }
        }
        CycloNumber::raw(n, acc)
    }

    /// Galois twist zeta -> zeta^a; requires gcd(a, order) = 1.
    pub fn galois(&self, a: i64) -> CycloNumber {
        if self.order == 1 {
            return self.clone();
        }
        let n = self.order;
        let aa = a.rem_euclid(n as i64) as u32;
        assert_eq!(gcd_u32(aa, n), 1, "galois exponent must be invertible");
        let c = ctx(n);
        let mut v = vec![Rational::zero(); c.phi];
        for (k, coeff) in self.coeffs.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let row = &c.powers[(k * aa as usize) % n as usize];
            for (j, b) in row.iter().enumerate() {
                if !b.is_zero() {
                    v[j] += coeff.clone() * b.clone();
                }
            }
        }
        CycloNumber::raw(n, v)
    }

    /// Complex conjugate.
    pub fn conj(&self) -> CycloNumber {
        if self.order == 1 {
            return self.clone();
        }
        self.galois(self.order as i64 - 1)
    }

    pub fn is_real(&self) -> bool {
        self.order == 1 || *self == self.conj()
    }

    pub fn inv(&self) -> Result<CycloNumber> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.order == 1 {
            return Ok(CycloNumber::from_rational(
                Rational::one() / self.coeffs[0].clone(),
            ));
        }
        let min_poly = cyclotomic_poly(self.order);
        let a = Poly::new(self.coeffs.clone());
        // Extended Euclid: u*a + v*Phi = g (constant), so a^{-1} = u/g mod Phi.
        let (g, u) = ext_gcd_mod(&a, &min_poly);
        let ginv = Rational::one() / g;
        let u = u.scale(&ginv);
        let (_, r) = u.div_rem(&min_poly)?;
        let mut v = vec![Rational::zero(); euler_phi(self.order)];
        for (k, c) in r.coeffs().iter().enumerate() {
            v[k] = c.clone();
        }
        Ok(CycloNumber::raw(self.order, v))
    }

    pub fn pow(&self, n: i64) -> CycloNumber {
        if n < 0 {
            return self.inv().expect("inverse in pow").pow(-n);
        }
        let mut acc = CycloNumber::one();
        let mut base = self.clone();
        let mut n = n as u64;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            n >>= 1;
        }
        acc
    }

    /// Complex value under zeta_N -> exp(2 pi i a / N).
    pub fn to_complex(&self, a: i64) -> Complex64 {
        let n = self.order as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let theta = 2.0 * std::f64::consts::PI * (k as f64) * (a as f64) / n;
            acc += Complex64::from_polar(rational_f64(c), theta);
        }
        acc
    }

    /// Primary complex embedding.
    pub fn to_complex_primary(&self) -> Complex64 {
        self.to_complex(1)
    }

    pub fn from_golden(g: &GoldenRational) -> CycloNumber {
        // sqrt5 = 1 + 2*(E(5) + E(5)^4) = -1 - 2*E(5)^2 - 2*E(5)^3 on the basis.
        let sqrt5 = CycloNumber::raw(
            5,
            vec![
                -Rational::one(),
                Rational::zero(),
                -Rational::from_integer(2.into()),
                -Rational::from_integer(2.into()),
            ],
        );
        CycloNumber::from_rational(g.rational_part().clone())
            + CycloNumber::from_rational(g.sqrt5_part().clone()) * sqrt5
    }

    /// Inverse of [`CycloNumber::from_golden`] when the value lies in Q(sqrt5).
    pub fn to_golden(&self) -> Option<GoldenRational> {
        if self.order == 1 {
            return Some(GoldenRational::from_rational(self.coeffs[0].clone()));
        }
        if self.order != 5 {
            return None;
        }
        // a + b*sqrt5 has coordinates (a - b, 0, -2b, -2b).
        if !self.coeffs[1].is_zero() || self.coeffs[2] != self.coeffs[3] {
            return None;
        }
        let b = -self.coeffs[2].clone() / Rational::from_integer(2.into());
        let a = self.coeffs[0].clone() + b.clone();
        Some(GoldenRational::new(a, b))
    }

    /// If the value is a root of unity, return (n, k) with value = E(n)^k and
    /// n minimal.
    pub fn as_root_of_unity(&self) -> Option<(u32, u32)> {
        if self.is_zero() {
            return None;
        }
        let bound = if self.order % 2 == 0 {
            self.order
        } else {
            2 * self.order
        };
        for n in 1..=bound {
            if bound % n != 0 {
                continue;
            }
            if self.pow(n as i64) == CycloNumber::one() {
                for k in 0..n {
                    if *self == CycloNumber::zeta(n, k as i64) {
                        return Some((n, k));
                    }
                }
            }
        }
        None
    }

    /// Exact check: a nonnegative rational integer.
    pub fn is_nonneg_integer(&self) -> bool {
        self.to_integer().map_or(false, |n| !n.is_negative())
    }

    /// Sign in every real embedding, for totally-real values.
    ///
    /// Determined from guarded floating embeddings: each embedded value must
    /// exceed the guard band 1e-9 in absolute value (asserted), which the
    /// desk-scale data here clears by many orders of magnitude.  Equality
    /// tests elsewhere remain exact; only inequalities use this.
    pub fn totally_positive(&self) -> bool {
        assert!(self.is_real(), "positivity asked of a non-real value");
        if let Some(r) = self.to_rational() {
            return r.is_positive();
        }
        let n = self.order;
        for a in 1..n {
            if gcd_u32(a, n) != 1 {
                continue;
            }
            let v = self.to_complex(a as i64);
            assert!(v.im.abs() < 1e-9, "real embedding expected, got {v}");
            assert!(
                v.re.abs() > 1e-9,
                "sign determination too close to zero: {v}"
            );
            if v.re < 0.0 {
                return false;
            }
        }
        true
    }
}

/// Extended Euclid for a against the (monic) modulus; returns (g, u) with
/// u*a = g modulo the modulus and g a nonzero constant when gcd = 1.
fn ext_gcd_mod(a: &Poly<Rational>, modulus: &Poly<Rational>) -> (Rational, Poly<Rational>) {
    let mut r0 = modulus.clone();
    let mut r1 = a.clone();
    let mut u0 = Poly::new(vec![]);
    let mut u1 = Poly::new(vec![Rational::one()]);
    while r1.degree().is_some() && r1.degree() != Some(0) {
        let (q, r) = r0.div_rem(&r1).expect("nonzero divisor");
        let u = &u0 - &(&q * &u1);
        r0 = r1;
        r1 = r;
        u0 = u1;
        u1 = u;
    }
    match r1.degree() {
        Some(0) => (r1.coeff(0), u1),
        _ => panic!("value not invertible modulo the cyclotomic polynomial"),
    }
}

pub(crate) fn rational_f64(x: &Rational) -> f64 {
    x.numer().to_f64().unwrap_or(f64::NAN) / x.denom().to_f64().unwrap_or(f64::NAN)
}

fn gcd_u32(a: u32, b: u32) -> u32 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub(crate) fn lcm_u32(a: u32, b: u32) -> u32 {
    a / gcd_u32(a, b) * b
}

impl Add for CycloNumber {
    type Output = CycloNumber;
    fn add(self, rhs: Self) -> Self {
        let n = lcm_u32(self.order, rhs.order);
        let mut v = self.lift_coeffs(n);
        for (a, b) in v.iter_mut().zip(rhs.lift_coeffs(n)) {
            if !b.is_zero() {
                *a += b;
            }
        }
        CycloNumber::raw(n, v)
    }
}

impl Sub for CycloNumber {
    type Output = CycloNumber;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for CycloNumber {
    type Output = CycloNumber;
    fn neg(self) -> Self {
        CycloNumber {
            order: self.order,
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for CycloNumber {
    type Output = CycloNumber;
    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return CycloNumber::zero_value();
        }
        if self.order == 1 {
            let c = self.coeffs[0].clone();
            return CycloNumber::raw(
                rhs.order,
                rhs.coeffs.into_iter().map(|b| b * c.clone()).collect(),
            );
        }
        if rhs.order == 1 {
            return rhs * self;
        }
        let n = lcm_u32(self.order, rhs.order);
        let c = ctx(n);
        let a = self.lift_coeffs(n);
        let b = rhs.lift_coeffs(n);
        let mut prod = vec![Rational::zero(); 2 * c.phi - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x.clone() * y.clone();
                }
            }
        }
        let mut v = prod[..c.phi].to_vec();
        for (k, p) in prod.iter().enumerate().skip(c.phi) {
            if p.is_zero() {
                continue;
            }
            for (j, b) in c.powers[k].iter().enumerate() {
                if !b.is_zero() {
                    v[j] += p.clone() * b.clone();
                }
            }
        }
        CycloNumber::raw(n, v)
    }
}

impl Div for CycloNumber {
    type Output = CycloNumber;
    fn div(self, rhs: Self) -> Self {
        self * rhs.inv().expect("division by zero cyclotomic")
    }
}

impl Zero for CycloNumber {
    fn zero() -> Self {
        CycloNumber::zero_value()
    }
    fn is_zero(&self) -> bool {
        self.order == 1 && self.coeffs[0].is_zero()
    }
}

impl One for CycloNumber {
    fn one() -> Self {
        CycloNumber::from_rational(Rational::one())
    }
    fn is_one(&self) -> bool {
        self.order == 1 && self.coeffs[0].is_one()
    }
}

impl From<i64> for CycloNumber {
    fn from(n: i64) -> Self {
        CycloNumber::from_int(n)
    }
}

impl From<Rational> for CycloNumber {
    fn from(r: Rational) -> Self {
        CycloNumber::from_rational(r)
    }
}

impl fmt::Display for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.order == 1 {
            return write!(f, "{}", self.coeffs[0]);
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() {
                ("-", -c.clone())
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, "{sign}")?;
            }
            if k == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write!(f, "E({})", self.order)?;
                if k > 1 {
                    write!(f, "^{k}")?;
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Deterministic (non-arithmetic) total order used for canonical sorting.
impl PartialOrd for CycloNumber {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CycloNumber {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.order
            .cmp(&other.order)
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}
