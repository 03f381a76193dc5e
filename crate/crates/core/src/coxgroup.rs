//! Construction and full enumeration of the finite Coxeter groups of types
//! A_n, BC_n, D_n, I2(m), H3 and H4.
//!
//! Elements are dense integer ids, ordered by length and then by the
//! lexicographic canonical form of the underlying representation, so ids are
//! deterministic across runs.  Only (element x generator) products are stored;
//! general products are composed from reduced words.
//!
//! Concrete representations: permutations of [n+1] for A_n, signed
//! permutations for BC_n and D_n (D_n sits inside the BC_n type as the
//! even-sign subgroup), (rotation, reflection-flag) pairs for I2(m), and exact
//! reflection-representation matrices over Z[phi] for H3 and H4.

use crate::cyclo::{int, CycloNumber, GoldenRational, Poly, Rational};
use crate::mat::Mat;
use crate::{CPoly, Error, GMat, Result};
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

/// Default cap on |W|, overridable via the COXFS_MAX_ORDER environment
/// variable or [`CoxeterGroup::build_with_bound`].
pub const DEFAULT_MAX_ORDER: u64 = 200_000;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum CoxType {
    A(usize),
    BC(usize),
    D(usize),
    I2(u32),
    H3,
    H4,
}

impl CoxType {
    pub fn rank(&self) -> usize {
        match *self {
            CoxType::A(n) | CoxType::BC(n) | CoxType::D(n) => n,
            CoxType::I2(_) => 2,
            CoxType::H3 => 3,
            CoxType::H4 => 4,
        }
    }

    pub fn order(&self) -> u64 {
        match *self {
            CoxType::A(n) => factorial(n as u64 + 1),
            CoxType::BC(n) => factorial(n as u64) << n,
            CoxType::D(n) => factorial(n as u64) << (n - 1),
            CoxType::I2(m) => 2 * m as u64,
            CoxType::H3 => 120,
            CoxType::H4 => 14400,
        }
    }

    /// Degrees of the basic polynomial invariants.
    pub fn degrees(&self) -> Vec<u32> {
        match *self {
            CoxType::A(n) => (2..=n as u32 + 1).collect(),
            CoxType::BC(n) => (1..=n as u32).map(|i| 2 * i).collect(),
            CoxType::D(n) => {
                let mut d: Vec<u32> = (1..n as u32).map(|i| 2 * i).collect();
                d.push(n as u32);
                d.sort();
                d
            }
            CoxType::I2(m) => vec![2, m],
            CoxType::H3 => vec![2, 6, 10],
            CoxType::H4 => vec![2, 12, 20, 30],
        }
    }

    /// Number of reflections N = sum of (d_i - 1) = l(w0).
    pub fn num_reflections(&self) -> u32 {
        self.degrees().iter().map(|d| d - 1).sum()
    }

    fn validate(&self) -> Result<()> {
        let ok = match *self {
            CoxType::A(n) => n >= 1,
            CoxType::BC(n) => n >= 1,
            CoxType::D(n) => n >= 2,
            CoxType::I2(m) => m >= 3,
            CoxType::H3 | CoxType::H4 => true,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!(
                "parameter out of range for {self}"
            )))
        }
    }
}

impl fmt::Display for CoxType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            CoxType::A(n) => write!(f, "A{n}"),
            CoxType::BC(n) => write!(f, "BC{n}"),
            CoxType::D(n) => write!(f, "D{n}"),
            CoxType::I2(m) => write!(f, "I2({m})"),
            CoxType::H3 => write!(f, "H3"),
            CoxType::H4 => write!(f, "H4"),
        }
    }
}

impl FromStr for CoxType {
    type Err = Error;

    fn from_str(s: &str) -> Result<CoxType> {
        let s = s.trim();
        let bad = || Error::Parse(format!("unrecognized Coxeter type '{s}'"));
        let t = if let Some(rest) = s.strip_prefix("I2") {
            let inner = rest
                .trim()
                .strip_prefix('(')
                .and_then(|r| r.strip_suffix(')'))
                .unwrap_or(rest);
            CoxType::I2(inner.trim().parse().map_err(|_| bad())?)
        } else if s == "H3" {
            CoxType::H3
        } else if s == "H4" {
            CoxType::H4
        } else if let Some(rest) = s.strip_prefix("BC") {
            CoxType::BC(rest.parse().map_err(|_| bad())?)
        } else if let Some(rest) = s.strip_prefix('A') {
            CoxType::A(rest.parse().map_err(|_| bad())?)
        } else if let Some(rest) = s.strip_prefix('D') {
            CoxType::D(rest.parse().map_err(|_| bad())?)
        } else {
            return Err(bad());
        };
        t.validate()?;
        Ok(t)
    }
}

fn factorial(n: u64) -> u64 {
    (2..=n).product::<u64>().max(1)
}

// ---------------------------------------------------------------------------
// Z[phi]: integers a + b*phi with phi^2 = phi + 1.  The reflection matrices of
// H3/H4 have entries here, so the whole group lives in integer pairs.

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
struct ZPhi {
    a: i64,
    b: i64,
}

impl ZPhi {
    const ZERO: ZPhi = ZPhi { a: 0, b: 0 };
    const ONE: ZPhi = ZPhi { a: 1, b: 0 };
    const PHI: ZPhi = ZPhi { a: 0, b: 1 };
    const MINUS_ONE: ZPhi = ZPhi { a: -1, b: 0 };

    fn mul(self, o: ZPhi) -> ZPhi {
        ZPhi {
            a: self.a * o.a + self.b * o.b,
            b: self.a * o.b + self.b * o.a + self.b * o.b,
        }
    }

    fn add(self, o: ZPhi) -> ZPhi {
        ZPhi {
            a: self.a + o.a,
            b: self.b + o.b,
        }
    }

    fn to_golden(self) -> GoldenRational {
        // a + b*phi = (a + b/2) + (b/2) sqrt5.
        GoldenRational::new(
            int(self.a) + Rational::new(self.b.into(), 2.into()),
            Rational::new(self.b.into(), 2.into()),
        )
    }
}

/// Flat row-major product of rank x rank matrices over Z[phi].
fn zphi_mat_mul(a: &[ZPhi], b: &[ZPhi], r: usize) -> Vec<ZPhi> {
    let mut out = vec![ZPhi::ZERO; r * r];
    for i in 0..r {
        for k in 0..r {
            let x = a[i * r + k];
            if x == ZPhi::ZERO {
                continue;
            }
            for j in 0..r {
                out[i * r + j] = out[i * r + j].add(x.mul(b[k * r + j]));
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Per-family concrete element payloads.

enum Elems {
    /// Permutations of 0..=n as image vectors.
    Perm(Vec<Vec<u8>>),
    /// Signed permutations: v[i] = w(i+1) as a value in {±1, ..., ±n}.
    Signed(Vec<Vec<i16>>),
    /// Normal forms (is_reflection, j): rot(j) = (rs)^j, refl(j) = (rs)^j r.
    Dihedral { m: u32, forms: Vec<(bool, u32)> },
    /// Reflection representation matrices, flat row-major over Z[phi].
    Golden { rank: usize, mats: Vec<Vec<ZPhi>> },
}

fn perm_mul(a: &[u8], b: &[u8]) -> Vec<u8> {
    b.iter().map(|&i| a[i as usize]).collect()
}

fn signed_mul(a: &[i16], b: &[i16]) -> Vec<i16> {
    b.iter()
        .map(|&v| {
            if v > 0 {
                a[v as usize - 1]
            } else {
                -a[(-v) as usize - 1]
            }
        })
        .collect()
}

/// rot(i)rot(j) = rot(i+j), rot(i)refl(j) = refl(i+j),
/// refl(i)rot(j) = refl(i-j), refl(i)refl(j) = rot(i-j).
fn dihedral_mul(m: u32, a: (bool, u32), b: (bool, u32)) -> (bool, u32) {
    let (fa, i) = a;
    let (fb, j) = b;
    let k = if fa { (i + m - j % m) % m } else { (i + j) % m };
    (fa ^ fb, k)
}

// ---------------------------------------------------------------------------

/// A fully enumerated finite Coxeter group.
///
/// Immutable after [`CoxeterGroup::build`]; all queries are read-only.
pub struct CoxeterGroup {
    typ: CoxType,
    rank: usize,
    order: usize,
    /// right[w*rank + s] = w * s
    right: Vec<u32>,
    /// left[w*rank + s] = s * w
    left: Vec<u32>,
    length: Vec<u32>,
    inverse: Vec<u32>,
    words: Vec<Vec<u8>>,
    class_of: Vec<u32>,
    class_reps: Vec<u32>,
    class_members: Vec<Vec<u32>>,
    involutions: Vec<u32>,
    inv_class_reps: Vec<(String, u32)>,
    is_reflection: Vec<bool>,
    elems: Elems,
}

impl CoxeterGroup {
    pub fn build(typ: CoxType) -> Result<CoxeterGroup> {
        let bound = std::env::var("COXFS_MAX_ORDER")
            .ok()
            .and_then(|v| v.parse().ok())
            .unwrap_or(DEFAULT_MAX_ORDER);
        CoxeterGroup::build_with_bound(typ, bound)
    }

    /// Process-wide cached instance.  Builds are deterministic, so sharing one
    /// copy per type is safe and saves the (nontrivial) H4 enumeration when
    /// several callers need the same group.
    pub fn shared(typ: CoxType) -> Result<std::sync::Arc<CoxeterGroup>> {
        use once_cell::sync::Lazy;
        use std::sync::{Arc, Mutex};
        static CACHE: Lazy<Mutex<HashMap<CoxType, Arc<CoxeterGroup>>>> =
            Lazy::new(|| Mutex::new(HashMap::new()));
        let mut cache = CACHE.lock().unwrap();
        if let Some(g) = cache.get(&typ) {
            return Ok(Arc::clone(g));
        }
        let g = Arc::new(CoxeterGroup::build(typ)?);
        cache.insert(typ, Arc::clone(&g));
        Ok(g)
    }

    pub fn build_with_bound(typ: CoxType, bound: u64) -> Result<CoxeterGroup> {
        typ.validate()?;
        let order = typ.order();
        if order > bound {
            return Err(Error::BoundExceeded { order, bound });
        }
        let mut g = match typ {
            CoxType::A(n) => {
                let id: Vec<u8> = (0..=n as u8).collect();
                let gens: Vec<Vec<u8>> = (0..n)
                    .map(|i| {
                        let mut v = id.clone();
                        v.swap(i, i + 1);
                        v
                    })
                    .collect();
                let e = enumerate(id, &gens, |a, b| perm_mul(a, b));
                e.into_group(typ, Elems::Perm(e_sorted(&e)))
            }
            CoxType::BC(n) => {
                let id: Vec<i16> = (1..=n as i16).collect();
                let mut gens: Vec<Vec<i16>> = (0..n.saturating_sub(1))
                    .map(|i| {
                        let mut v = id.clone();
                        v.swap(i, i + 1);
                        v
                    })
                    .collect();
                let mut t = id.clone();
                t[n - 1] = -(n as i16);
                gens.push(t);
                let e = enumerate(id, &gens, |a, b| signed_mul(a, b));
                e.into_group(typ, Elems::Signed(e_sorted(&e)))
            }
            CoxType::D(n) => {
                let id: Vec<i16> = (1..=n as i16).collect();
                let mut gens: Vec<Vec<i16>> = (0..n - 1)
                    .map(|i| {
                        let mut v = id.clone();
                        v.swap(i, i + 1);
                        v
                    })
                    .collect();
                let mut t = id.clone();
                t[n - 2] = -(n as i16);
                t[n - 1] = -(n as i16 - 1);
                gens.push(t);
                let e = enumerate(id, &gens, |a, b| signed_mul(a, b));
                e.into_group(typ, Elems::Signed(e_sorted(&e)))
            }
            CoxType::I2(m) => {
                let id = (false, 0u32);
                let gens = vec![(true, 0u32), (true, m - 1)];
                let e = enumerate(id, &gens, |a, b| dihedral_mul(m, *a, *b));
                e.into_group(
                    typ,
                    Elems::Dihedral {
                        m,
                        forms: e_sorted(&e),
                    },
                )
            }
            CoxType::H3 | CoxType::H4 => {
                let rank = typ.rank();
                let gens = golden_generators(typ);
                let id: Vec<ZPhi> = {
                    let mut v = vec![ZPhi::ZERO; rank * rank];
                    for i in 0..rank {
                        v[i * rank + i] = ZPhi::ONE;
                    }
                    v
                };
                let e = enumerate(id, &gens, |a, b| zphi_mat_mul(a, b, rank));
                e.into_group(
                    typ,
                    Elems::Golden {
                        rank,
                        mats: e_sorted(&e),
                    },
                )
            }
        };
        debug_assert_eq!(g.order as u64, order);
        g.finish()?;
        Ok(g)
    }

    /// Completes class, involution and reflection data after enumeration.
    fn finish(&mut self) -> Result<()> {
        let n = self.order;
        // Inverses: fold the reversed reduced word (generators are involutions).
        for w in 0..n as u32 {
            let mut acc = 0u32;
            for &s in self.words[w as usize].iter().rev() {
                acc = self.right_mul(acc, s as usize);
            }
            self.inverse[w as usize] = acc;
        }
        // Conjugacy classes by closure under s . s.
        let mut class_of = vec![u32::MAX; n];
        for w in 0..n as u32 {
            if class_of[w as usize] != u32::MAX {
                continue;
            }
            let c = self.class_reps.len() as u32;
            self.class_reps.push(w);
            let mut members = vec![w];
            class_of[w as usize] = c;
            let mut stack = vec![w];
            while let Some(v) = stack.pop() {
                for s in 0..self.rank {
                    let u = self.left_mul(s, self.right_mul(v, s));
                    if class_of[u as usize] == u32::MAX {
                        class_of[u as usize] = c;
                        members.push(u);
                        stack.push(u);
                    }
                }
            }
            members.sort();
            self.class_members.push(members);
        }
        self.class_of = class_of;
        self.involutions = (0..n as u32)
            .filter(|&w| self.inverse[w as usize] == w)
            .collect();
        // Reflections: union of the classes of the generators.
        let mut is_refl = vec![false; n];
        for s in 0..self.rank {
            let c = self.class_of[self.gen(s) as usize] as usize;
            for &w in &self.class_members[c] {
                is_refl[w as usize] = true;
            }
        }
        self.is_reflection = is_refl;
        let nrefl = self.is_reflection.iter().filter(|&&b| b).count() as u32;
        if nrefl != self.typ.num_reflections() || self.len(self.w0()) != self.typ.num_reflections()
        {
            return Err(Error::Verification(format!(
                "reflection count or longest-element length off in {}",
                self.typ
            )));
        }
        self.inv_class_reps = self.named_involution_reps()?;
        Ok(())
    }

    pub fn cox_type(&self) -> CoxType {
        self.typ
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Element id of the generator with the given index.
    pub fn gen(&self, s: usize) -> u32 {
        self.right[s]
    }

    pub fn right_mul(&self, w: u32, s: usize) -> u32 {
        self.right[w as usize * self.rank + s]
    }

    pub fn left_mul(&self, s: usize, w: u32) -> u32 {
        self.left[w as usize * self.rank + s]
    }

    /// General product a * b via the reduced word of b.
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.words[b as usize]
            .iter()
            .fold(a, |acc, &s| self.right_mul(acc, s as usize))
    }

    pub fn inv(&self, w: u32) -> u32 {
        self.inverse[w as usize]
    }

    pub fn len(&self, w: u32) -> u32 {
        self.length[w as usize]
    }

    /// A reduced word for w (generator indices).
    pub fn word(&self, w: u32) -> &[u8] {
        &self.words[w as usize]
    }

    /// The longest element.
    pub fn w0(&self) -> u32 {
        (self.order - 1) as u32
    }

    /// Bitmask of {s : l(ws) < l(w)}.
    pub fn right_descents(&self, w: u32) -> u16 {
        let mut mask = 0u16;
        for s in 0..self.rank {
            if self.len(self.right_mul(w, s)) < self.len(w) {
                mask |= 1 << s;
            }
        }
        mask
    }

    /// Bitmask of {s : l(sw) < l(w)}.
    pub fn left_descents(&self, w: u32) -> u16 {
        let mut mask = 0u16;
        for s in 0..self.rank {
            if self.len(self.left_mul(s, w)) < self.len(w) {
                mask |= 1 << s;
            }
        }
        mask
    }

    pub fn num_classes(&self) -> usize {
        self.class_reps.len()
    }

    pub fn class_of(&self, w: u32) -> usize {
        self.class_of[w as usize] as usize
    }

    pub fn class_rep(&self, c: usize) -> u32 {
        self.class_reps[c]
    }

    pub fn class_size(&self, c: usize) -> usize {
        self.class_members[c].len()
    }

    pub fn class_members(&self, c: usize) -> &[u32] {
        &self.class_members[c]
    }

    pub fn is_involution(&self, w: u32) -> bool {
        self.inverse[w as usize] == w
    }

    /// All w with w^2 = 1, identity included, ascending.
    pub fn involutions(&self) -> &[u32] {
        &self.involutions
    }

    /// One representative per involution class, labeled as in the literature:
    /// sigma[m] (A), sigma[k,l,m] (BC/D) with sigma'[0,0,n/2] for the extra
    /// split class in D_even, 1/a/ac/(abc)^5/(abcd)^15 (H), 1/r/s/w0 (I2).
    pub fn involution_class_reps(&self) -> &[(String, u32)] {
        &self.inv_class_reps
    }

    pub fn is_reflection(&self, w: u32) -> bool {
        self.is_reflection[w as usize]
    }

    pub fn reflections(&self) -> Vec<u32> {
        (0..self.order as u32)
            .filter(|&w| self.is_reflection[w as usize])
            .collect()
    }

    pub fn element_order(&self, w: u32) -> u32 {
        let mut k = 1;
        let mut v = w;
        while v != 0 {
            v = self.mul(v, w);
            k += 1;
        }
        k
    }

    /// w^k for any integer k.
    pub fn power(&self, w: u32, k: i64) -> u32 {
        let (mut base, mut k) = if k < 0 {
            (self.inv(w), (-k) as u64)
        } else {
            (w, k as u64)
        };
        let mut acc = 0u32;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// Exponent of the group: lcm of the element orders.
    pub fn exponent(&self) -> u32 {
        self.class_reps
            .iter()
            .map(|&r| self.element_order(r))
            .fold(1u32, lcm_u32)
    }

    // -- concrete representations ------------------------------------------

    pub fn perm(&self, w: u32) -> Option<&[u8]> {
        match &self.elems {
            Elems::Perm(v) => Some(&v[w as usize]),
            _ => None,
        }
    }

    pub fn signed_perm(&self, w: u32) -> Option<&[i16]> {
        match &self.elems {
            Elems::Signed(v) => Some(&v[w as usize]),
            _ => None,
        }
    }

    /// (is_reflection, j) normal form in I2(m).
    pub fn dihedral_form(&self, w: u32) -> Option<(bool, u32)> {
        match &self.elems {
            Elems::Dihedral { forms, .. } => Some(forms[w as usize]),
            _ => None,
        }
    }

    /// Exact reflection-representation matrix (H types only).
    pub fn matrix(&self, w: u32) -> Option<GMat> {
        match &self.elems {
            Elems::Golden { rank, mats } => {
                let m = &mats[w as usize];
                Some(Mat::from_fn(*rank, *rank, |i, j| {
                    m[i * rank + j].to_golden()
                }))
            }
            _ => None,
        }
    }

    /// Cycle type of a type-A element as a partition of n+1.
    pub fn cycle_type(&self, w: u32) -> Option<Vec<usize>> {
        let p = self.perm(w)?;
        let mut seen = vec![false; p.len()];
        let mut parts = Vec::new();
        for start in 0..p.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = p[i] as usize;
                len += 1;
            }
            parts.push(len);
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Some(parts)
    }

    /// Signed cycle type (positive-cycle parts, negative-cycle parts), each
    /// weakly decreasing; defined for BC/D elements.
    pub fn signed_cycle_type(&self, w: u32) -> Option<(Vec<usize>, Vec<usize>)> {
        let v = self.signed_perm(w)?;
        let n = v.len();
        let mut seen = vec![false; n];
        let (mut pos, mut neg) = (Vec::new(), Vec::new());
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut sign = 1i16;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                let im = v[i];
                sign *= im.signum();
                i = im.unsigned_abs() as usize - 1;
                len += 1;
            }
            if sign > 0 {
                pos.push(len);
            } else {
                neg.push(len);
            }
        }
        pos.sort_unstable_by(|a, b| b.cmp(a));
        neg.sort_unstable_by(|a, b| b.cmp(a));
        Some((pos, neg))
    }

    /// Dimension n(w) of the -1 eigenspace of w in the reflection
    /// representation, exact in every type.
    pub fn neg_eigenspace_dim(&self, w: u32) -> usize {
        match &self.elems {
            Elems::Perm(_) => {
                let t = self.cycle_type(w).unwrap();
                t.iter().filter(|&&c| c % 2 == 0).count()
            }
            Elems::Signed(_) => {
                let (pos, neg) = self.signed_cycle_type(w).unwrap();
                pos.iter().filter(|&&c| c % 2 == 0).count()
                    + neg.iter().filter(|&&c| c % 2 == 1).count()
            }
            Elems::Dihedral { m, forms } => match forms[w as usize] {
                (true, _) => 1,
                (false, 0) => 0,
                (false, j) => {
                    if 2 * j == *m {
                        2
                    } else {
                        0
                    }
                }
            },
            Elems::Golden { rank, .. } => {
                // dim ker(w + 1) over the golden field.
                let m = self.matrix(w).unwrap();
                let mp1 = &m + &Mat::identity(*rank);
                *rank - mp1.rank()
            }
        }
    }

    /// det(1 - x w) on the reflection representation, with cyclotomic
    /// coefficients (rational for classical types, golden-embedded for H).
    pub fn det_one_minus_xw(&self, w: u32) -> CPoly {
        let c = |r: &Rational| CycloNumber::from_rational(r.clone());
        match &self.elems {
            Elems::Perm(_) => {
                let t = self.cycle_type(w).unwrap();
                let mut p = Poly::constant(Rational::one());
                for part in t {
                    p = &p * &cycle_factor(part, false);
                }
                let p = p
                    .exact_div(&cycle_factor(1, false))
                    .expect("1-x divides the permutation determinant");
                p.map(c)
            }
            Elems::Signed(_) => {
                let (pos, neg) = self.signed_cycle_type(w).unwrap();
                let mut p = Poly::constant(Rational::one());
                for part in pos {
                    p = &p * &cycle_factor(part, false);
                }
                for part in neg {
                    p = &p * &cycle_factor(part, true);
                }
                p.map(c)
            }
            Elems::Dihedral { m, forms } => match forms[w as usize] {
                (true, _) => Poly::new(vec![
                    CycloNumber::one(),
                    CycloNumber::zero(),
                    -CycloNumber::one(),
                ]),
                (false, j) => Poly::new(vec![
                    CycloNumber::one(),
                    -(CycloNumber::zeta(*m, j as i64) + CycloNumber::zeta(*m, -(j as i64))),
                    CycloNumber::one(),
                ]),
            },
            Elems::Golden { rank, .. } => {
                let m = self.matrix(w).unwrap();
                let cp = golden_char_poly(&m, *rank);
                // det(1 - xw) = x^rank charpoly(1/x) for monic charpoly.
                let rev = cp.reverse(*rank).expect("characteristic polynomial degree");
                rev.map(|g| CycloNumber::from_golden(g))
            }
        }
    }
}

/// (1 -+ x^k) factors of signed permutation determinants.
fn cycle_factor(k: usize, negative: bool) -> Poly<Rational> {
    let mut v = vec![Rational::zero(); k + 1];
    v[0] = Rational::one();
    v[k] = if negative {
        Rational::one()
    } else {
        -Rational::one()
    };
    Poly::new(v)
}

/// Characteristic polynomial det(xI - M) by the trace-recursion method.
fn golden_char_poly(m: &GMat, rank: usize) -> Poly<GoldenRational> {
    let mut coeffs = vec![GoldenRational::from_int(0); rank + 1];
    coeffs[rank] = GoldenRational::from_int(1);
    let mut mk = m.clone();
    let mut ck = GoldenRational::from_int(1);
    for k in 1..=rank {
        if k > 1 {
            let mut shifted = mk.clone();
            for i in 0..rank {
                let t = shifted[(i, i)].clone() + ck.clone();
                shifted[(i, i)] = t;
            }
            mk = m * &shifted;
        }
        ck = -(mk.trace() / GoldenRational::from_int(k as i64));
        coeffs[rank - k] = ck.clone();
    }
    Poly::new(coeffs)
}

fn golden_generators(typ: CoxType) -> Vec<Vec<ZPhi>> {
    let rank = typ.rank();
    // Coxeter matrix entries for the chain a -5- b -3- c (-3- d).
    let m_ij = |i: usize, j: usize| -> u32 {
        if i == j {
            1
        } else if i > j {
            return m_val(j, i);
        } else {
            m_val(i, j)
        }
    };
    fn m_val(i: usize, j: usize) -> u32 {
        if j == i + 1 {
            if i == 0 {
                5
            } else {
                3
            }
        } else {
            2
        }
    }
    // 2cos(pi/m): m=2 -> 0, m=3 -> 1, m=5 -> phi.
    let two_cos = |m: u32| match m {
        2 => ZPhi::ZERO,
        3 => ZPhi::ONE,
        5 => ZPhi::PHI,
        _ => unreachable!(),
    };
    (0..rank)
        .map(|s| {
            let mut mat = vec![ZPhi::ZERO; rank * rank];
            for i in 0..rank {
                mat[i * rank + i] = ZPhi::ONE;
            }
            for j in 0..rank {
                mat[s * rank + j] = if j == s {
                    ZPhi::MINUS_ONE
                } else {
                    two_cos(m_ij(s, j))
                };
            }
            mat
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Generic breadth-first enumeration in the right Cayley graph.

struct Enumerated<E> {
    elems: Vec<E>,
    length: Vec<u32>,
    words: Vec<Vec<u8>>,
    num_gens: usize,
    right: Vec<u32>,
    left: Vec<u32>,
}

fn enumerate<E, F>(id: E, gens: &[E], mul: F) -> Enumerated<E>
where
    E: Clone + Eq + Ord + std::hash::Hash,
    F: Fn(&E, &E) -> E,
{
    let mut elems = vec![id.clone()];
    let mut index = HashMap::new();
    index.insert(id, 0u32);
    let mut length = vec![0u32];
    let mut words: Vec<Vec<u8>> = vec![vec![]];
    let mut frontier: Vec<u32> = vec![0];
    let mut depth = 0u32;
    while !frontier.is_empty() {
        depth += 1;
        let mut found: Vec<(E, u32, u8)> = Vec::new();
        for &w in &frontier {
            for (si, s) in gens.iter().enumerate() {
                let e = mul(&elems[w as usize], s);
                if !index.contains_key(&e) {
                    found.push((e, w, si as u8));
                }
            }
        }
        found.sort_by(|a, b| a.0.cmp(&b.0));
        found.dedup_by(|a, b| a.0 == b.0);
        frontier = Vec::with_capacity(found.len());
        for (e, parent, s) in found {
            let id = elems.len() as u32;
            index.insert(e.clone(), id);
            elems.push(e);
            length.push(depth);
            let mut word = words[parent as usize].clone();
            word.push(s);
            words.push(word);
            frontier.push(id);
        }
    }
    let n = elems.len();
    let ng = gens.len();
    let mut right = vec![0u32; n * ng];
    let mut left = vec![0u32; n * ng];
    for (w, e) in elems.iter().enumerate() {
        for (si, s) in gens.iter().enumerate() {
            right[w * ng + si] = index[&mul(e, s)];
            left[w * ng + si] = index[&mul(s, e)];
        }
    }
    Enumerated {
        elems,
        length,
        words,
        num_gens: ng,
        right,
        left,
    }
}

/// The element payloads in id order (the enumeration is already sorted).
fn e_sorted<E: Clone>(e: &Enumerated<E>) -> Vec<E> {
    e.elems.clone()
}

impl<E: Clone> Enumerated<E> {
    fn into_group(&self, typ: CoxType, elems: Elems) -> CoxeterGroup {
        let n = self.elems.len();
        CoxeterGroup {
            typ,
            rank: self.num_gens,
            order: n,
            right: self.right.clone(),
            left: self.left.clone(),
            length: self.length.clone(),
            inverse: vec![0; n],
            words: self.words.clone(),
            class_of: Vec::new(),
            class_reps: Vec::new(),
            class_members: Vec::new(),
            involutions: Vec::new(),
            inv_class_reps: Vec::new(),
            is_reflection: Vec::new(),
            elems,
        }
    }
}

fn lcm_u32(a: u32, b: u32) -> u32 {
    fn gcd(a: u32, b: u32) -> u32 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

// ---------------------------------------------------------------------------
// Named involution class representatives.

impl CoxeterGroup {
    fn named_involution_reps(&self) -> Result<Vec<(String, u32)>> {
        let mut reps: Vec<(String, u32)> = Vec::new();
        match &self.elems {
            Elems::Perm(all) => {
                let n1 = all[0].len();
                for m in 0..=n1 / 2 {
                    let mut v: Vec<u8> = (0..n1 as u8).collect();
                    for i in 0..m {
                        v.swap(i, m + i);
                    }
                    reps.push((format!("sigma[{m}]"), self.find_perm(&v)?));
                }
            }
            Elems::Signed(_) => {
                let n = self.rank;
                let d_even = matches!(self.typ, CoxType::D(_));
                for m in 0..=n / 2 {
                    for l in 0..=(n - 2 * m) {
                        if d_even && l % 2 == 1 {
                            continue;
                        }
                        let k = n - 2 * m - l;
                        let v = sigma_klm(n, k, l, m);
                        reps.push((format!("sigma[{k},{l},{m}]"), self.find_signed(&v)?));
                    }
                }
                if d_even && n % 2 == 0 {
                    // The split class: sigma_{0,0,n/2} with its last 2-cycle
                    // (m, 2m) made negative, i.e. m -> -2m -> m.  (Negating
                    // the last two *coordinates* instead does not square to
                    // the identity once m >= 2, because they lie in different
                    // 2-cycles of sigma_m.)
                    let m2 = n / 2;
                    let mut v = sigma_klm(n, 0, 0, m2);
                    v[m2 - 1] = -v[m2 - 1];
                    v[n - 1] = -v[n - 1];
                    reps.push((format!("sigma'[0,0,{m2}]"), self.find_signed(&v)?));
                }
            }
            Elems::Dihedral { m, .. } => {
                reps.push(("1".into(), 0));
                reps.push(("r".into(), self.gen(0)));
                let s = self.gen(1);
                if self.class_of(s) != self.class_of(self.gen(0)) {
                    reps.push(("s".into(), s));
                }
                if m % 2 == 0 {
                    reps.push(("w0".into(), self.w0()));
                }
            }
            Elems::Golden { .. } => {
                let a = self.gen(0);
                let ac = self.mul(a, self.gen(2));
                reps.push(("1".into(), 0));
                reps.push(("a".into(), a));
                reps.push(("ac".into(), ac));
                if self.typ == CoxType::H3 {
                    reps.push(("(abc)^5".into(), self.w0()));
                } else {
                    let abc = self.mul(self.mul(a, self.gen(1)), self.gen(2));
                    reps.push(("(abc)^5".into(), self.power(abc, 5)));
                    reps.push(("(abcd)^15".into(), self.w0()));
                }
            }
        }
        // The named elements must hit every involution class exactly once.
        let mut classes: Vec<usize> = reps.iter().map(|(_, w)| self.class_of(*w)).collect();
        classes.sort_unstable();
        classes.dedup();
        let inv_classes: std::collections::HashSet<usize> =
            self.involutions.iter().map(|&w| self.class_of(w)).collect();
        if classes.len() != reps.len() || classes.len() != inv_classes.len() {
            return Err(Error::Verification(format!(
                "named involution representatives do not match the involution classes of {}",
                self.typ
            )));
        }
        for (_, w) in &reps {
            if !self.is_involution(*w) {
                return Err(Error::Verification("non-involution representative".into()));
            }
        }
        Ok(reps)
    }

    /// Element id of the permutation `v` (one-line form, 0-indexed images).
    /// Only valid for type A groups.
    pub fn find_perm(&self, v: &[u8]) -> Result<u32> {
        if let Elems::Perm(all) = &self.elems {
            if let Some(i) = all.iter().position(|e| e == v) {
                return Ok(i as u32);
            }
        }
        Err(Error::Verification("element not found".into()))
    }

    /// Element id of the signed permutation `v` (images of 1..n, one-based,
    /// sign carried on the value).  Only valid for types BC and D.
    pub fn find_signed(&self, v: &[i16]) -> Result<u32> {
        if let Elems::Signed(all) = &self.elems {
            if let Some(i) = all.iter().position(|e| e == v) {
                return Ok(i as u32);
            }
        }
        Err(Error::Verification("element not found".into()))
    }
}

/// sigma_{k,l,m} as a signed permutation: the first 2m coordinates carry the
/// involution (1,m+1)(2,m+2)...(m,2m), the next k are fixed, the last l are
/// negated.
fn sigma_klm(n: usize, k: usize, l: usize, m: usize) -> Vec<i16> {
    assert_eq!(2 * m + k + l, n);
    let mut v: Vec<i16> = (1..=n as i16).collect();
    for i in 0..m {
        v[i] = (m + i + 1) as i16;
        v[m + i] = (i + 1) as i16;
    }
    for i in 0..l {
        let p = 2 * m + k + i;
        v[p] = -(p as i16 + 1);
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(t: &str) -> CoxeterGroup {
        CoxeterGroup::build(t.parse().unwrap()).unwrap()
    }

    #[test]
    fn type_parsing_and_data() {
        assert_eq!("A3".parse::<CoxType>().unwrap(), CoxType::A(3));
        assert_eq!("BC2".parse::<CoxType>().unwrap(), CoxType::BC(2));
        assert_eq!("I2(7)".parse::<CoxType>().unwrap(), CoxType::I2(7));
        assert!("I2(2)".parse::<CoxType>().is_err());
        assert!("D1".parse::<CoxType>().is_err());
        assert!("E8".parse::<CoxType>().is_err());
        assert_eq!(CoxType::H3.order(), 120);
        assert_eq!(CoxType::H4.order(), 14400);
        assert_eq!(CoxType::H3.num_reflections(), 15);
        assert_eq!(CoxType::H4.num_reflections(), 60);
        assert_eq!(CoxType::D(4).degrees(), vec![2, 4, 4, 6]);
        for t in ["A4", "BC3", "D4", "I2(6)", "H3"] {
            let t: CoxType = t.parse().unwrap();
            let prod: u64 = t.degrees().iter().map(|&d| d as u64).product();
            assert_eq!(prod, t.order());
        }
    }

    #[test]
    fn bound_is_enforced() {
        match CoxeterGroup::build_with_bound(CoxType::A(7), 1000) {
            Err(Error::BoundExceeded { order, bound }) => {
                assert_eq!((order, bound), (40320, 1000));
            }
            _ => panic!("expected a bound error"),
        }
    }

    #[test]
    fn coxeter_relations_hold() {
        for t in ["A3", "BC3", "D4", "I2(5)", "I2(6)", "H3"] {
            let g = g(t);
            for i in 0..g.rank() {
                assert_eq!(g.mul(g.gen(i), g.gen(i)), 0, "{t}: generator order 2");
                for j in 0..i {
                    let prod = g.mul(g.gen(i), g.gen(j));
                    let m = g.element_order(prod);
                    // (s_i s_j)^m = 1 and the product of all orders matches
                    // a valid Coxeter matrix entry.
                    assert_eq!(g.power(prod, m as i64), 0);
                    assert!(m >= 2);
                }
            }
        }
    }

    #[test]
    fn lengths_and_descents() {
        let g = g("BC2");
        assert_eq!(g.order(), 8);
        assert_eq!(g.len(0), 0);
        let w0 = g.w0();
        assert_eq!(g.len(w0), 4);
        assert_eq!(g.right_descents(w0), 0b11);
        for w in 0..g.order() as u32 {
            for s in 0..g.rank() {
                let ws = g.right_mul(w, s);
                assert_eq!(
                    g.len(ws).abs_diff(g.len(w)),
                    1,
                    "length changes by one along edges"
                );
            }
            assert_eq!(g.len(g.mul(w0, w)), 4 - g.len(w), "l(w0 w) = N - l(w)");
            assert_eq!(g.len(g.inv(w)), g.len(w));
        }
    }

    #[test]
    fn involutions_have_symmetric_descents() {
        for t in ["A3", "BC3", "D4", "I2(7)", "H3"] {
            let g = g(t);
            for &w in g.involutions() {
                assert_eq!(g.left_descents(w), g.right_descents(w), "{t}");
            }
        }
    }

    #[test]
    fn class_data_consistency() {
        for t in ["A4", "BC3", "D4", "I2(6)", "H3"] {
            let g = g(t);
            let total: usize = (0..g.num_classes()).map(|c| g.class_size(c)).sum();
            assert_eq!(total, g.order(), "{t}: class equation");
            for c in 0..g.num_classes() {
                let r = g.class_rep(c);
                assert_eq!(g.class_of(r), c);
                // Conjugating the representative by anything stays in class.
                let x = g.mul(g.gen(0), g.mul(r, g.inv(g.gen(0))));
                assert_eq!(g.class_of(x), c);
            }
        }
    }

    #[test]
    fn a2_small_group() {
        let g = g("A2");
        assert_eq!(g.order(), 6);
        // 1, the two generators, and w0 = sts (the third transposition).
        assert_eq!(g.involutions().len(), 4);
        let reps = g.involution_class_reps();
        assert_eq!(reps.len(), 2);
        assert_eq!(reps[0], ("sigma[0]".to_string(), 0));
        assert_eq!(reps[1].0, "sigma[1]");
    }

    #[test]
    fn bc2_involution_classes() {
        let g = g("BC2");
        let labels: Vec<&str> = g
            .involution_class_reps()
            .iter()
            .map(|(l, _)| l.as_str())
            .collect();
        assert_eq!(
            labels,
            vec![
                "sigma[2,0,0]",
                "sigma[1,1,0]",
                "sigma[0,2,0]",
                "sigma[0,0,1]"
            ]
        );
        assert_eq!(g.involutions().len(), 6);
    }

    #[test]
    fn d4_has_split_involution_class() {
        let g = g("D4");
        assert_eq!(g.order(), 192);
        let labels: Vec<&str> = g
            .involution_class_reps()
            .iter()
            .map(|(l, _)| l.as_str())
            .collect();
        assert!(labels.contains(&"sigma[0,0,2]"));
        assert!(labels.contains(&"sigma'[0,0,2]"));
        // D4 has 13 conjugacy classes in total.
        assert_eq!(g.num_classes(), 13);
    }

    #[test]
    fn h3_structure() {
        let g = g("H3");
        assert_eq!(g.order(), 120);
        assert_eq!(g.len(g.w0()), 15);
        assert_eq!(g.reflections().len(), 15);
        assert_eq!(g.num_classes(), 10);
        assert_eq!(g.involution_class_reps().len(), 4);
        // w0 = (abc)^5 = -identity.
        let abc = g.mul(g.mul(g.gen(0), g.gen(1)), g.gen(2));
        assert_eq!(g.power(abc, 5), g.w0());
        assert_eq!(g.neg_eigenspace_dim(g.w0()), 3);
        let m = g.matrix(g.w0()).unwrap();
        assert_eq!(
            &m,
            &(&Mat::identity(3)).map(|x: &GoldenRational| -x.clone())
        );
    }

    #[test]
    fn i2_structure() {
        let g5 = g("I2(5)");
        assert_eq!(g5.order(), 10);
        assert_eq!(g5.reflections().len(), 5);
        assert_eq!(g5.involution_class_reps().len(), 2); // 1 and the reflections
        let g6 = g("I2(6)");
        assert_eq!(g6.involution_class_reps().len(), 4);
        assert_eq!(g6.neg_eigenspace_dim(g6.w0()), 2);
        // In even dihedral groups r and s are not conjugate.
        assert_ne!(g6.class_of(g6.gen(0)), g6.class_of(g6.gen(1)));
    }

    #[test]
    fn neg_eigenspace_examples() {
        let a3 = g("A3");
        assert_eq!(a3.neg_eigenspace_dim(0), 0);
        for (label, w) in a3.involution_class_reps() {
            let m: usize = label[6..label.len() - 1].parse().unwrap();
            assert_eq!(a3.neg_eigenspace_dim(*w), m);
        }
        let b3 = g("BC3");
        // n(sw) = n(w) + 1 for involutions w with sw = ws, s not a descent.
        for &w in b3.involutions() {
            for s in 0..b3.rank() {
                let sw = b3.left_mul(s, w);
                if sw == b3.right_mul(w, s) && b3.right_descents(w) & (1 << s) == 0 {
                    assert_eq!(b3.neg_eigenspace_dim(sw), b3.neg_eigenspace_dim(w) + 1);
                }
            }
        }
    }

    #[test]
    fn determinant_polynomials() {
        let a2 = g("A2");
        // Identity: (1-x)^rank.
        assert_eq!(a2.det_one_minus_xw(0).to_string(), "1 - 2*x + x^2");
        let b2 = g("BC2");
        let w0 = b2.w0();
        // w0 = -1 in BC2: det(1 - x w0) = (1+x)^2.
        assert_eq!(b2.det_one_minus_xw(w0).to_string(), "1 + 2*x + x^2");
        // Coxeter element of I2(5): 1 - (zeta + zeta^4) x + x^2.
        let g5 = g("I2(5)");
        let rot1 = g5.mul(g5.gen(0), g5.gen(1));
        let p = g5.det_one_minus_xw(rot1);
        let tr = CycloNumber::zeta(5, 1) + CycloNumber::zeta(5, 4);
        assert_eq!(p.coeff(1), -tr);
        assert!(p.coeff(0).is_one() && p.coeff(2).is_one());
        // det(1 - xw) is a class function.
        let h3 = g("H3");
        for c in 0..h3.num_classes() {
            let members = h3.class_members(c);
            let p0 = h3.det_one_minus_xw(members[0]);
            assert!(members.iter().all(|&w| h3.det_one_minus_xw(w) == p0));
        }
        // Molien's formula at a rational point x0:
        //   sum_w 1/det(1 - x0 w)  =  |W| / prod_i (1 - x0^{d_i}).
        for x0 in [2i64, 3] {
            let x = CycloNumber::from_int(x0);
            let mut sum = CycloNumber::zero();
            for w in 0..h3.order() as u32 {
                sum = sum + h3.det_one_minus_xw(w).eval(&x).inv().unwrap();
            }
            let mut rhs = Rational::from_integer((h3.order() as i64).into());
            for d in h3.typ.degrees() {
                rhs /= Rational::from_integer((1 - x0.pow(d as u32)).into());
            }
            assert_eq!(sum, CycloNumber::from_rational(rhs));
        }
    }

    #[test]
    fn h4_builds_with_correct_involution_count() {
        let g = g("H4");
        assert_eq!(g.order(), 14400);
        assert_eq!(g.len(g.w0()), 60);
        assert_eq!(g.num_classes(), 34);
        assert_eq!(g.involution_class_reps().len(), 5);
        assert_eq!(g.exponent() % 30, 0);
    }
}
