//! The module spanned by the involutions of W.
//!
//! The basis is {a_w : w^2 = 1} (the identity included), and a generator s
//! acts by one of three moves:
//!
//! ```text
//!   a_w  ->  a_w + k a_{sw}   if sw = ws and length goes up,
//!   a_w  ->  -a_w             if sw = ws and length goes down,
//!   a_w  ->  a_{sws}          if sw != ws,
//! ```
//!
//! for a fixed rational parameter k.  Every k yields a genuine representation
//! and they all share one character, so the per-class characters chi_{W,sigma}
//! can be read off the signed conjugation walk at k = 0.  A deformation with
//! polynomial coefficients specializing (at q = 1) to the k = 2 module is
//! checked in [`hecke_relations_check`].

use std::collections::HashMap;
use std::sync::Arc;

use num::{One, Zero};
use num_traits::ToPrimitive;

use crate::chartab::{self, CharacterTable, ClassFunction, IrrLabel};
use crate::combinat::{self, SymbolKind};
use crate::coxgroup::{CoxType, CoxeterGroup};
use crate::cyclo::{CycloNumber, Rational};
use crate::mat::Mat;
use crate::{Error, QPoly, Result};

/// Action of one generator on one basis element, with the index of the
/// partner basis element it involves.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Move {
    /// sw = ws, length goes down: a_w -> -a_w.  The partner sw only matters
    /// for the polynomial deformation.
    Lower(u32),
    /// sw = ws, length goes up: a_w -> a_w + k a_{sw}.
    Raise(u32),
    /// sw != ws: a_w -> a_{sws}.
    Cross(u32),
}

/// The involution module at a fixed parameter k, stored as one move per
/// (generator, basis element); every matrix column has at most two nonzeros.
pub struct InvolutionModule {
    g: Arc<CoxeterGroup>,
    k: Rational,
    basis: Vec<u32>,
    pos: HashMap<u32, u32>,
    moves: Vec<Vec<Move>>,
}

/// Build the module for the group at the given parameter.
pub fn build_rho(g: &Arc<CoxeterGroup>, k: Rational) -> InvolutionModule {
    let basis: Vec<u32> = g.involutions().to_vec();
    let pos: HashMap<u32, u32> = basis
        .iter()
        .enumerate()
        .map(|(i, &w)| (w, i as u32))
        .collect();
    let moves: Vec<Vec<Move>> = (0..g.rank())
        .map(|s| {
            basis
                .iter()
                .map(|&w| {
                    let sw = g.left_mul(s, w);
                    if sw == g.right_mul(w, s) {
                        if g.len(sw) < g.len(w) {
                            Move::Lower(pos[&sw])
                        } else {
                            Move::Raise(pos[&sw])
                        }
                    } else {
                        Move::Cross(pos[&g.right_mul(sw, s)])
                    }
                })
                .collect()
        })
        .collect();
    InvolutionModule {
        g: Arc::clone(g),
        k,
        basis,
        pos,
        moves,
    }
}

impl InvolutionModule {
    pub fn group(&self) -> &Arc<CoxeterGroup> {
        &self.g
    }
    pub fn k(&self) -> &Rational {
        &self.k
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    /// Element ids of the basis, in involution order.
    pub fn basis(&self) -> &[u32] {
        &self.basis
    }
    pub fn basis_index(&self, w: u32) -> Option<usize> {
        self.pos.get(&w).map(|&i| i as usize)
    }

    /// Matrix column of generator s at basis index i, as (row, coefficient)
    /// pairs.
    pub fn column(&self, s: usize, i: usize) -> Vec<(usize, Rational)> {
        match self.moves[s][i] {
            Move::Lower(_) => vec![(i, -Rational::one())],
            Move::Raise(j) => {
                let mut col = vec![(i, Rational::one())];
                if !self.k.is_zero() {
                    col.push((j as usize, self.k.clone()));
                }
                col
            }
            Move::Cross(j) => vec![(j as usize, Rational::one())],
        }
    }

    /// The matrix of generator s times a dense coefficient vector.
    fn apply_generator(&self, s: usize, x: &[Rational]) -> Vec<Rational> {
        let mut y = vec![Rational::zero(); x.len()];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            match self.moves[s][i] {
                Move::Lower(_) => y[i] -= xi,
                Move::Raise(j) => {
                    y[i] += xi;
                    if !self.k.is_zero() {
                        y[j as usize] += &self.k * xi;
                    }
                }
                Move::Cross(j) => y[j as usize] += xi,
            }
        }
        y
    }

    /// The image of a dense vector under the element w, multiplying in the
    /// letters of a reduced word from the right.
    pub fn apply(&self, w: u32, x: &[Rational]) -> Vec<Rational> {
        let word = self.g.word(w).to_vec();
        let mut v = x.to_vec();
        for &s in word.iter().rev() {
            v = self.apply_generator(s as usize, &v);
        }
        v
    }

    /// Trace of the matrix of w, computed densely at this module's k.
    pub fn trace(&self, w: u32) -> Rational {
        let n = self.dim();
        let mut tr = Rational::zero();
        for i in 0..n {
            let mut e = vec![Rational::zero(); n];
            e[i] = Rational::one();
            let mut v = self.apply(w, &e);
            tr += std::mem::take(&mut v[i]);
        }
        tr
    }

    /// Sparse variant of the generator action; the relation checks below keep
    /// supports tiny, so this avoids touching the whole basis.
    fn apply_generator_sparse(
        &self,
        s: usize,
        x: &HashMap<usize, Rational>,
    ) -> HashMap<usize, Rational> {
        let mut y: HashMap<usize, Rational> = HashMap::with_capacity(2 * x.len());
        for (&i, xi) in x {
            match self.moves[s][i] {
                Move::Lower(_) => {
                    *y.entry(i).or_insert_with(Rational::zero) -= xi;
                }
                Move::Raise(j) => {
                    *y.entry(i).or_insert_with(Rational::zero) += xi;
                    if !self.k.is_zero() {
                        *y.entry(j as usize).or_insert_with(Rational::zero) += &self.k * xi;
                    }
                }
                Move::Cross(j) => {
                    *y.entry(j as usize).or_insert_with(Rational::zero) += xi;
                }
            }
        }
        y.retain(|_, v| !v.is_zero());
        y
    }

    /// Whether the product of the listed generator matrices (leftmost factor
    /// applied last) fixes the basis vector at index i.
    fn product_fixes_basis_vector(&self, seq: &[usize], i: usize) -> bool {
        let mut v = HashMap::from([(i, Rational::one())]);
        for &s in seq.iter().rev() {
            v = self.apply_generator_sparse(s, &v);
        }
        v.len() == 1 && v.get(&i).map(|c| c.is_one()).unwrap_or(false)
    }

    fn basis_name(&self, i: usize) -> String {
        let wd = self.g.word(self.basis[i]);
        if wd.is_empty() {
            "e".into()
        } else {
            wd.iter().map(|d| (d + 1).to_string()).collect()
        }
    }
}

/// Exact check that the generator matrices satisfy the defining relations:
/// each one squares to the identity and the braid products
/// (G_s G_t)^{m(s,t)} are the identity.  The error names the first violated
/// relation and the basis vector witnessing it.
pub fn verify_representation(m: &InvolutionModule) -> Result<()> {
    let g = Arc::clone(m.group());
    for s in 0..g.rank() {
        for i in 0..m.dim() {
            if !m.product_fixes_basis_vector(&[s, s], i) {
                return Err(Error::Verification(format!(
                    "generator {} does not square to the identity on a_{{{}}}",
                    s + 1,
                    m.basis_name(i),
                )));
            }
        }
    }
    for s in 0..g.rank() {
        for t in (s + 1)..g.rank() {
            let mst = g.element_order(g.mul(g.gen(s), g.gen(t))) as usize;
            let mut seq = Vec::with_capacity(2 * mst);
            for _ in 0..mst {
                seq.push(s);
                seq.push(t);
            }
            for i in 0..m.dim() {
                if !m.product_fixes_basis_vector(&seq, i) {
                    return Err(Error::Verification(format!(
                        "braid relation (G_{} G_{})^{} = I fails on a_{{{}}}",
                        s + 1,
                        t + 1,
                        mst,
                        m.basis_name(i),
                    )));
                }
            }
        }
    }
    Ok(())
}

/// The characters chi_{W,sigma} of the per-class summands, one per conjugacy
/// class of involutions, keyed by the class labels used across the crate.
///
/// Grading the basis by n(w) (the dimension of the -1 eigenspace) makes the
/// generator matrices block triangular with k showing up only strictly below
/// the diagonal blocks, and each involution class is homogeneous for that
/// grading; the trace of any product on a class block therefore equals its
/// k = 0 value, which is what the signed walk computes.  The dense traces at
/// several k are compared against this in the tests.
pub fn class_characters(m: &InvolutionModule) -> Vec<(String, ClassFunction)> {
    let g = m.group();
    let sizes: Vec<u64> = (0..g.num_classes())
        .map(|c| g.class_size(c) as u64)
        .collect();
    g.involution_class_reps()
        .iter()
        .map(|(name, rep)| {
            let values = chartab::k0_class_character(g, *rep)
                .into_iter()
                .map(CycloNumber::from_int)
                .collect();
            (
                name.clone(),
                ClassFunction {
                    typ: g.cox_type(),
                    class_sizes: sizes.clone(),
                    values,
                },
            )
        })
        .collect()
}

/// The full character chi_W, i.e. the sum of chi_{W,sigma} over the
/// involution classes; its value at the identity is the involution count.
pub fn character_of(m: &InvolutionModule) -> ClassFunction {
    let g = m.group();
    let sizes: Vec<u64> = (0..g.num_classes())
        .map(|c| g.class_size(c) as u64)
        .collect();
    let mut values = vec![CycloNumber::zero(); g.num_classes()];
    for (_, cf) in class_characters(m) {
        for (acc, v) in values.iter_mut().zip(cf.values) {
            *acc = acc.clone() + v;
        }
    }
    ClassFunction {
        typ: g.cox_type(),
        class_sizes: sizes,
        values,
    }
}

/// Multiplicities of the table's irreducibles in f, in row order.  Fails
/// unless every inner product is a nonnegative integer and the result
/// reconstructs f exactly.
pub fn decompose(f: &ClassFunction, t: &CharacterTable) -> Result<Vec<u64>> {
    if f.typ != t.typ() || f.values.len() != t.num_classes() {
        return Err(Error::InvalidParameter(
            "class function does not match the table's group".into(),
        ));
    }
    let mut mults = Vec::with_capacity(t.num_irr());
    for i in 0..t.num_irr() {
        let p = t.inner(&f.values, t.row(i))?;
        let m = p.to_integer().and_then(|n| n.to_u64()).ok_or_else(|| {
            Error::Verification(format!(
                "multiplicity of {} is not a nonnegative integer",
                t.label(i)
            ))
        })?;
        mults.push(m);
    }
    for c in 0..t.num_classes() {
        let mut acc = CycloNumber::zero();
        for (i, &mi) in mults.iter().enumerate() {
            if mi != 0 {
                acc = acc + t.row(i)[c].clone() * CycloNumber::from_int(mi as i64);
            }
        }
        if acc != f.values[c] {
            return Err(Error::Verification(
                "multiplicities do not reconstruct the class function".into(),
            ));
        }
    }
    Ok(mults)
}

/// True when chi_W is multiplicity free with every irreducible present.
pub fn is_gelfand_model(t: &CharacterTable, g: &Arc<CoxeterGroup>) -> Result<bool> {
    let m = build_rho(g, Rational::zero());
    let mults = decompose(&character_of(&m), t)?;
    Ok(mults.iter().all(|&c| c == 1))
}

fn parse_sigma_a(label: &str) -> Result<u32> {
    label
        .strip_prefix("sigma[")
        .and_then(|r| r.strip_suffix(']'))
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::Parse(format!("bad type A involution class label '{label}'")))
}

/// Parses `sigma[k,l,m]` or `sigma'[0,0,m]`; returns (primed, k, l, m).
fn parse_sigma_klm(label: &str) -> Result<(bool, u32, u32, u32)> {
    let bad = || Error::Parse(format!("bad signed involution class label '{label}'"));
    let (primed, rest) = if let Some(r) = label.strip_prefix("sigma'[") {
        (true, r)
    } else if let Some(r) = label.strip_prefix("sigma[") {
        (false, r)
    } else {
        return Err(bad());
    };
    let inner = rest.strip_suffix(']').ok_or_else(bad)?;
    let parts: Vec<u32> = inner
        .split(',')
        .map(|p| p.parse().map_err(|_| bad()))
        .collect::<Result<_>>()?;
    if parts.len() != 3 {
        return Err(bad());
    }
    Ok((primed, parts[0], parts[1], parts[2]))
}

/// Binomial coefficient with the convention that out-of-range arguments give
/// zero.
fn binom(n: u32, k: i64) -> u64 {
    if k < 0 || k > n as i64 {
        return 0;
    }
    let k = (k as u32).min(n - k as u32);
    let mut c = 1u64;
    for i in 0..k as u64 {
        c = c * (n as u64 - i) / (i + 1);
    }
    c
}

/// Closed-form multiplicity of an irreducible in chi_{W,sigma} for the
/// classical types, evaluated purely combinatorially.
///
/// Type A(n), class `sigma[m]`: the character labeled by a partition of
/// n + 1 appears once exactly when its diagram has n + 1 - 2m odd columns.
///
/// Type BC(n), class `sigma[k,l,m]`: the character labeled (alpha, beta)
/// appears binom(d, |alpha ∩ beta| - m) times when the pair is special with
/// |alpha| = k + m and |beta| = l + m, where d counts the corner bends shared
/// by the two diagrams; otherwise not at all.
///
/// Type D(n), class `sigma[k,l,m]` (l even): the character labeled by an
/// unordered pair appears binom(e, f - l) times when one partition of size m
/// sits inside the other of size k + l + m with no 2x2 square in the skew
/// diagram (e its component count, f its row count); the two characters
/// split from a doubled partition appear once each, for the classes
/// `sigma[0,0,n/2]` and `sigma'[0,0,n/2]` respectively.
pub fn kottwitz_multiplicity_oracle(typ: CoxType, sigma: &str, irr: &IrrLabel) -> Result<u64> {
    let labels_disagree =
        || Error::InvalidParameter(format!("label {irr} does not belong to type {typ}"));
    match typ {
        CoxType::A(n) => {
            let m = parse_sigma_a(sigma)?;
            let IrrLabel::Alpha(a) = irr else {
                return Err(labels_disagree());
            };
            let n1 = (n + 1) as u32;
            if a.size() != n1 || 2 * m > n1 {
                return Err(labels_disagree());
            }
            Ok(u64::from(a.odd_columns() as u32 == n1 - 2 * m))
        }
        CoxType::BC(n) => {
            let (primed, k, l, m) = parse_sigma_klm(sigma)?;
            if primed || k + l + 2 * m != n as u32 {
                return Err(Error::InvalidParameter(format!(
                    "class {sigma} does not exist in {typ}"
                )));
            }
            let IrrLabel::Pair(a, b) = irr else {
                return Err(labels_disagree());
            };
            if a.size() + b.size() != n as u32 {
                return Err(labels_disagree());
            }
            if a.size() != k + m
                || b.size() != l + m
                || !combinat::is_special_bipartition(SymbolKind::BC, a, b)
            {
                return Ok(0);
            }
            let d = combinat::d_stat(a, b);
            let cap = a.intersect(b).size() as i64;
            Ok(binom(d, cap - m as i64))
        }
        CoxType::D(n) => {
            let (primed, k, l, m) = parse_sigma_klm(sigma)?;
            if l % 2 != 0 || k + l + 2 * m != n as u32 || (primed && (k != 0 || l != 0)) {
                return Err(Error::InvalidParameter(format!(
                    "class {sigma} does not exist in {typ}"
                )));
            }
            match irr {
                IrrLabel::Unordered(a, b) => {
                    if a.size() + b.size() != n as u32 {
                        return Err(labels_disagree());
                    }
                    if primed {
                        return Ok(0);
                    }
                    let (small, big) = if b.contains(a) {
                        (a, b)
                    } else if a.contains(b) {
                        (b, a)
                    } else {
                        return Ok(0);
                    };
                    if small.size() != m
                        || big.size() != k + l + m
                        || combinat::skew_has_square(small, big)
                    {
                        return Ok(0);
                    }
                    let e = combinat::e_stat(small, big)?;
                    let f = combinat::f_stat(small, big);
                    Ok(binom(e, f as i64 - l as i64))
                }
                IrrLabel::Split(a, half) => {
                    if n % 2 != 0 || a.size() != (n / 2) as u32 {
                        return Err(labels_disagree());
                    }
                    let hit = k == 0 && l == 0 && *half == if primed { 2 } else { 1 };
                    Ok(u64::from(hit))
                }
                _ => Err(labels_disagree()),
            }
        }
        _ => Err(Error::InvalidParameter(format!(
            "no closed-form multiplicities for type {typ}"
        ))),
    }
}

const HECKE_MAX_ORDER: u64 = 2000;

/// The deformed action of one generator with polynomial coefficients:
///
/// ```text
///   a_w -> q a_w + (q+1) a_{sw}              commuting, length up
///   a_w -> (q^2-q-1) a_w + (q^2-q) a_{sw}    commuting, length down
///   a_w -> a_{sws}                           crossing, length up
///   a_w -> (q^2-1) a_w + q^2 a_{sws}         crossing, length down
/// ```
fn hecke_generator(m0: &InvolutionModule, s: usize) -> Mat<QPoly> {
    let n = m0.dim();
    let g = m0.group();
    let q = QPoly::x();
    let one = QPoly::one();
    let q2 = &q * &q;
    let qq = &q2 - &q;
    let mut rows = vec![vec![QPoly::zero(); n]; n];
    for i in 0..n {
        match m0.moves[s][i] {
            Move::Raise(j) => {
                rows[i][i] = q.clone();
                rows[j as usize][i] = &q + &one;
            }
            Move::Lower(j) => {
                rows[i][i] = &qq - &one;
                rows[j as usize][i] = qq.clone();
            }
            Move::Cross(j) => {
                let j = j as usize;
                if g.len(m0.basis[j]) > g.len(m0.basis[i]) {
                    rows[j][i] = one.clone();
                } else {
                    rows[i][i] = &q2 - &one;
                    rows[j][i] = q2.clone();
                }
            }
        }
    }
    Mat::from_rows(rows).expect("square by construction")
}

/// Exact polynomial-matrix check of the deformed module: every generator
/// matrix satisfies (T + 1)(T - q^2) = 0, the braid products agree, and
/// setting q = 1 recovers the k = 2 module.  Only available at small orders;
/// the plain representation check covers everything else.
pub fn hecke_relations_check(g: &Arc<CoxeterGroup>) -> Result<()> {
    if g.order() as u64 > HECKE_MAX_ORDER {
        return Err(Error::BoundExceeded {
            order: g.order() as u64,
            bound: HECKE_MAX_ORDER,
        });
    }
    let m0 = build_rho(g, Rational::zero());
    let n = m0.dim();
    let mats: Vec<Mat<QPoly>> = (0..g.rank()).map(|s| hecke_generator(&m0, s)).collect();
    let q2 = &QPoly::x() * &QPoly::x();

    for (s, t_s) in mats.iter().enumerate() {
        let plus = Mat::from_fn(n, n, |r, c| {
            let mut v = t_s.row(r)[c].clone();
            if r == c {
                v = v + QPoly::one();
            }
            v
        });
        let minus = Mat::from_fn(n, n, |r, c| {
            let mut v = t_s.row(r)[c].clone();
            if r == c {
                v = v - q2.clone();
            }
            v
        });
        let prod = &plus * &minus;
        for r in 0..n {
            for c in 0..n {
                if !prod.row(r)[c].is_zero() {
                    return Err(Error::Verification(format!(
                        "(T_{0} + 1)(T_{0} - q^2) is nonzero at a_{{{1}}}",
                        s + 1,
                        m0.basis_name(c),
                    )));
                }
            }
        }
    }

    for s in 0..g.rank() {
        for t in (s + 1)..g.rank() {
            let mst = g.element_order(g.mul(g.gen(s), g.gen(t))) as usize;
            let braid = |first: usize, second: usize| {
                let mut acc = Mat::<QPoly>::identity(n);
                for step in 0..mst {
                    let which = if step % 2 == 0 { first } else { second };
                    acc = &acc * &mats[which];
                }
                acc
            };
            let st = braid(s, t);
            let ts = braid(t, s);
            if st != ts {
                let c = (0..n)
                    .find(|&c| (0..n).any(|r| st.row(r)[c] != ts.row(r)[c]))
                    .unwrap_or(0);
                return Err(Error::Verification(format!(
                    "braid products of T_{} and T_{} differ at a_{{{}}}",
                    s + 1,
                    t + 1,
                    m0.basis_name(c),
                )));
            }
        }
    }

    // q = 1 must reproduce the k = 2 action column by column.
    let m2 = build_rho(g, Rational::from_integer(2.into()));
    let one = Rational::one();
    for (s, t_s) in mats.iter().enumerate() {
        for i in 0..n {
            let mut dense = vec![Rational::zero(); n];
            for (r, v) in m2.column(s, i) {
                dense[r] = v;
            }
            for r in 0..n {
                if t_s.row(r)[i].eval(&one) != dense[r] {
                    return Err(Error::Verification(format!(
                        "q = 1 specialization of T_{} disagrees with the k = 2 module at a_{{{}}}",
                        s + 1,
                        m0.basis_name(i),
                    )));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartab::char_table;
    use proptest::prelude::*;

    fn grp(s: &str) -> Arc<CoxeterGroup> {
        CoxeterGroup::shared(s.parse().unwrap()).unwrap()
    }

    fn rat(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    /// Nonzero multiplicities paired with their row labels, sorted.
    fn named_mults(t: &CharacterTable, mults: &[u64]) -> Vec<(String, u64)> {
        let mut v: Vec<(String, u64)> = mults
            .iter()
            .enumerate()
            .filter(|&(_, &m)| m != 0)
            .map(|(i, &m)| (t.label(i).to_string(), m))
            .collect();
        v.sort();
        v
    }

    fn expect(pairs: &[(&str, u64)]) -> Vec<(String, u64)> {
        let mut v: Vec<(String, u64)> = pairs.iter().map(|&(s, m)| (s.to_string(), m)).collect();
        v.sort();
        v
    }

    fn sigma_mults(g: &Arc<CoxeterGroup>, label: &str) -> Vec<u64> {
        let t = char_table(g).unwrap();
        let m = build_rho(g, rat(0));
        let (_, cf) = class_characters(&m)
            .into_iter()
            .find(|(name, _)| name == label)
            .unwrap_or_else(|| panic!("no involution class labeled {label}"));
        decompose(&cf, &t).unwrap()
    }

    #[test]
    fn dimensions_and_the_identity_column() {
        assert_eq!(build_rho(&grp("A3"), rat(0)).dim(), 10);
        assert_eq!(build_rho(&grp("H3"), rat(0)).dim(), 32);
        assert_eq!(build_rho(&grp("H4"), rat(0)).dim(), 572);
        for m in [3u32, 5, 7, 9] {
            let g = grp(&format!("I2({m})"));
            assert_eq!(build_rho(&g, rat(0)).dim(), m as usize + 1);
        }
        for m in [4u32, 6, 8, 12] {
            let g = grp(&format!("I2({m})"));
            assert_eq!(build_rho(&g, rat(0)).dim(), m as usize + 2);
        }

        // rho(s) a_e = a_e + k a_s, and each column has at most two entries.
        let g = grp("A2");
        let k = Rational::new(3.into(), 2.into());
        let m = build_rho(&g, k.clone());
        let id = m.basis_index(0).unwrap();
        let s0 = m.basis_index(g.gen(0)).unwrap();
        assert_eq!(m.column(0, id), vec![(id, rat(1)), (s0, k)]);
        for s in 0..g.rank() {
            for i in 0..m.dim() {
                assert!(m.column(s, i).len() <= 2);
            }
        }

        // The character at the identity counts the involutions.
        for ts in ["A3", "BC3", "D4", "I2(7)", "H3"] {
            let g = grp(ts);
            let m = build_rho(&g, rat(0));
            let chi = character_of(&m);
            assert_eq!(
                chi.values[0],
                CycloNumber::from_int(g.involutions().len() as i64),
                "{ts}"
            );
        }
    }

    #[test]
    fn relations_hold_for_assorted_parameters() {
        for (ts, k) in [
            ("BC3", rat(0)),
            ("H3", rat(2)),
            ("A3", rat(1)),
            ("D4", Rational::new(7.into(), 3.into())),
            ("I2(7)", rat(-2)),
        ] {
            let g = grp(ts);
            verify_representation(&build_rho(&g, k)).unwrap();
        }

        // Negative control: rewiring one column must be caught.
        let g = grp("A3");
        let mut m = build_rho(&g, rat(0));
        let id = m.basis_index(0).unwrap();
        let s0 = m.basis_index(g.gen(0)).unwrap();
        m.moves[0][id] = Move::Cross(s0 as u32);
        let err = verify_representation(&m).unwrap_err();
        assert!(
            matches!(err, Error::Verification(ref msg) if msg.contains("square")),
            "unexpected error: {err:?}"
        );
    }

    #[test]
    fn characters_are_independent_of_k() {
        for ts in ["A3", "BC3", "D3", "I2(5)", "I2(6)"] {
            let g = grp(ts);
            let walk = character_of(&build_rho(&g, rat(0)));
            for k in [rat(0), rat(1), rat(2), Rational::new(1.into(), 2.into())] {
                let m = build_rho(&g, k);
                for c in 0..g.num_classes() {
                    assert_eq!(
                        CycloNumber::from_rational(m.trace(g.class_rep(c))),
                        walk.values[c],
                        "{ts}, class {c}"
                    );
                }
            }
        }
    }

    #[test]
    fn generator_matrices_are_graded_block_triangular() {
        // Grade the basis by the dimension n(w) of the -1 eigenspace.  Raise
        // moves (the only ones involving k) go up by exactly one grade, so in
        // a basis sorted by n(w) the matrices are block lower triangular and
        // the diagonal blocks carry no k.
        for ts in ["A3", "BC3", "D4", "H3"] {
            let g = grp(ts);
            let m = build_rho(&g, rat(1));
            for s in 0..g.rank() {
                for i in 0..m.dim() {
                    let ni = g.neg_eigenspace_dim(m.basis[i]);
                    match m.moves[s][i] {
                        Move::Raise(j) => {
                            assert_eq!(g.neg_eigenspace_dim(m.basis[j as usize]), ni + 1)
                        }
                        Move::Lower(j) => {
                            assert_eq!(g.neg_eigenspace_dim(m.basis[j as usize]) + 1, ni)
                        }
                        Move::Cross(j) => {
                            assert_eq!(g.neg_eigenspace_dim(m.basis[j as usize]), ni)
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn involution_class_characters_decompose_per_the_tables() {
        // The identity class always carries the trivial character.
        for ts in ["A4", "BC3", "D4", "I2(6)", "H3"] {
            let g = grp(ts);
            let t = char_table(&g).unwrap();
            let m = build_rho(&g, rat(0));
            let (_, cf) = class_characters(&m)
                .into_iter()
                .find(|(_, cf)| cf.values[0] == CycloNumber::from_int(1))
                .unwrap();
            let mults = decompose(&cf, &t).unwrap();
            let mut want = vec![0u64; t.num_irr()];
            want[t.index_of_trivial()] = 1;
            assert_eq!(mults, want, "{ts}");
        }

        let a2 = grp("A2");
        let t2 = char_table(&a2).unwrap();
        assert_eq!(
            named_mults(&t2, &sigma_mults(&a2, "sigma[1]")),
            expect(&[("[2,1]", 1), ("[1,1,1]", 1)])
        );

        let a3 = grp("A3");
        let t3 = char_table(&a3).unwrap();
        assert_eq!(
            named_mults(&t3, &sigma_mults(&a3, "sigma[2]")),
            expect(&[("[2,2]", 1), ("[1,1,1,1]", 1)])
        );

        let bc2 = grp("BC2");
        let tb = char_table(&bc2).unwrap();
        let chi = character_of(&build_rho(&bc2, rat(0)));
        let mults = decompose(&chi, &tb).unwrap();
        assert_eq!(mults[tb.index_of_name("([1],[1])").unwrap()], 2);

        let h3 = grp("H3");
        let th = char_table(&h3).unwrap();
        for (label, want) in [
            ("1", expect(&[("phi[1,0]", 1)])),
            ("(abc)^5", expect(&[("phi[1,15]", 1)])),
            (
                "a",
                expect(&[
                    ("phi[3,1]", 1),
                    ("phi[3,3]", 1),
                    ("phi[4,3]", 1),
                    ("phi[5,5]", 1),
                ]),
            ),
            (
                "ac",
                expect(&[
                    ("phi[3,6]", 1),
                    ("phi[3,8]", 1),
                    ("phi[4,4]", 1),
                    ("phi[5,2]", 1),
                ]),
            ),
        ] {
            assert_eq!(named_mults(&th, &sigma_mults(&h3, label)), want, "{label}");
        }
    }

    #[test]
    fn h4_involution_characters_match_the_published_decompositions() {
        let g = grp("H4");
        let t = char_table(&g).unwrap();
        for (label, want) in [
            ("1", expect(&[("phi[1,0]", 1)])),
            ("(abcd)^15", expect(&[("phi[1,60]", 1)])),
            (
                "a",
                expect(&[
                    ("phi[4,1]", 1),
                    ("phi[4,7]", 1),
                    ("phi[16,3]", 1),
                    ("phi[36,5]", 1),
                ]),
            ),
            (
                "(abc)^5",
                expect(&[
                    ("phi[4,31]", 1),
                    ("phi[4,37]", 1),
                    ("phi[16,21]", 1),
                    ("phi[36,15]", 1),
                ]),
            ),
            (
                "ac",
                expect(&[
                    ("phi[9,2]", 1),
                    ("phi[9,6]", 1),
                    ("phi[9,22]", 1),
                    ("phi[9,26]", 1),
                    ("phi[16,6]", 1),
                    ("phi[16,18]", 1),
                    ("phi[25,4]", 1),
                    ("phi[25,16]", 1),
                    ("phi[24,6]", 2),
                    ("phi[24,12]", 2),
                    ("phi[18,10]", 2),
                    ("phi[30,10,12]", 2),
                    ("phi[30,10,14]", 2),
                    ("phi[40,8]", 2),
                ]),
            ),
        ] {
            assert_eq!(named_mults(&t, &sigma_mults(&g, label)), want, "{label}");
        }
    }

    #[test]
    fn gelfand_models_are_exactly_the_multiplicity_free_cases() {
        // D2 = A1 x A1 and D3 = A3 as Coxeter systems, so they land on the
        // multiplicity-free side despite the label.
        for ts in [
            "A1", "A2", "A3", "A4", "A5", "D2", "D3", "H3", "I2(3)", "I2(5)", "I2(7)", "I2(9)",
        ] {
            let g = grp(ts);
            let t = char_table(&g).unwrap();
            assert!(is_gelfand_model(&t, &g).unwrap(), "{ts}");
        }
        for ts in [
            "BC2", "BC3", "BC4", "D4", "D5", "I2(4)", "I2(6)", "I2(8)", "I2(12)", "H4",
        ] {
            let g = grp(ts);
            let t = char_table(&g).unwrap();
            assert!(!is_gelfand_model(&t, &g).unwrap(), "{ts}");
        }

        // In I2(6) the failure is lopsided: one two-dimensional character
        // appears twice and the other not at all.
        let g = grp("I2(6)");
        let t = char_table(&g).unwrap();
        let mults = decompose(&character_of(&build_rho(&g, rat(0))), &t).unwrap();
        assert_eq!(mults[t.index_of_name("phi[2,1]").unwrap()], 2);
        assert_eq!(mults[t.index_of_name("phi[2,2]").unwrap()], 0);
    }

    #[test]
    fn closed_form_multiplicities_match_brute_force() {
        for ts in [
            "A1", "A2", "A3", "A4", "A5", "A6", "BC2", "BC3", "BC4", "BC5", "D2", "D3", "D4", "D5",
            "D6",
        ] {
            let g = grp(ts);
            let t = char_table(&g).unwrap();
            let m = build_rho(&g, rat(0));
            for (label, cf) in class_characters(&m) {
                let mults = decompose(&cf, &t).unwrap();
                for (i, &got) in mults.iter().enumerate() {
                    let want =
                        kottwitz_multiplicity_oracle(g.cox_type(), &label, t.label(i)).unwrap();
                    assert_eq!(got, want, "{ts}, {label}, {}", t.label(i));
                }
            }
        }

        // Out-of-range binomial arguments give zero rather than an error.
        let zero = kottwitz_multiplicity_oracle(
            CoxType::D(4),
            "sigma[0,2,1]",
            &IrrLabel::Unordered(
                crate::combinat::Partition::new(vec![1]),
                crate::combinat::Partition::new(vec![3]),
            ),
        )
        .unwrap();
        assert_eq!(zero, 0);

        // No closed form outside the classical types.
        assert!(kottwitz_multiplicity_oracle(
            CoxType::H3,
            "1",
            &IrrLabel::Alpha(crate::combinat::Partition::new(vec![1]))
        )
        .is_err());
    }

    #[test]
    fn full_involution_character_closed_form() {
        // Summing the per-class multiplicities over all involution classes:
        // in type BC each special pair contributes 2^d, in type D each
        // nested square-free pair contributes 2^(e-1) and each split
        // character appears once.
        for n in [2usize, 3, 4] {
            let g = grp(&format!("BC{n}"));
            let t = char_table(&g).unwrap();
            let mults = decompose(&character_of(&build_rho(&g, rat(0))), &t).unwrap();
            for (i, &got) in mults.iter().enumerate() {
                let IrrLabel::Pair(a, b) = t.label(i) else {
                    panic!()
                };
                let want = if combinat::is_special_bipartition(SymbolKind::BC, a, b) {
                    1u64 << combinat::d_stat(a, b)
                } else {
                    0
                };
                assert_eq!(got, want, "BC{n}, {}", t.label(i));
            }
        }
        for n in [3usize, 4, 5] {
            let g = grp(&format!("D{n}"));
            let t = char_table(&g).unwrap();
            let mults = decompose(&character_of(&build_rho(&g, rat(0))), &t).unwrap();
            for (i, &got) in mults.iter().enumerate() {
                let want = match t.label(i) {
                    IrrLabel::Split(_, _) => 1,
                    IrrLabel::Unordered(a, b) => {
                        let (small, big) = if b.contains(a) { (a, b) } else { (b, a) };
                        if big.contains(small) && !combinat::skew_has_square(small, big) {
                            1u64 << (combinat::e_stat(small, big).unwrap() - 1)
                        } else {
                            0
                        }
                    }
                    other => panic!("unexpected label {other}"),
                };
                assert_eq!(got, want, "D{n}, {}", t.label(i));
            }
        }
    }

    #[test]
    fn restriction_from_the_signed_group_differs() {
        // The involutions with an even number of sign flips span an
        // invariant subspace of the signed group's module, but the subgroup
        // representation carried by that subspace is not the subgroup's own
        // involution module.
        for n in [3usize, 4] {
            let bc = grp(&format!("BC{n}"));
            let d = grp(&format!("D{n}"));
            let even_invs: Vec<u32> = bc
                .involutions()
                .iter()
                .copied()
                .filter(|&w| {
                    bc.signed_perm(w)
                        .unwrap()
                        .iter()
                        .filter(|&&x| x < 0)
                        .count()
                        % 2
                        == 0
                })
                .collect();
            assert_eq!(even_invs.len(), d.involutions().len());

            let sizes: Vec<u64> = (0..d.num_classes())
                .map(|c| d.class_size(c) as u64)
                .collect();
            let restricted: Vec<CycloNumber> = (0..d.num_classes())
                .map(|c| {
                    let wbc = bc
                        .find_signed(d.signed_perm(d.class_rep(c)).unwrap())
                        .unwrap();
                    let tr: i64 = even_invs
                        .iter()
                        .map(|&tau| {
                            let (im, sg) = chartab::k0_apply(&bc, wbc, tau);
                            // the subspace really is invariant
                            assert!(even_invs.contains(&im));
                            if im == tau {
                                sg
                            } else {
                                0
                            }
                        })
                        .sum();
                    CycloNumber::from_int(tr)
                })
                .collect();
            let restricted = ClassFunction {
                typ: d.cox_type(),
                class_sizes: sizes,
                values: restricted,
            };

            let intrinsic = character_of(&build_rho(&d, rat(0)));
            let t = char_table(&d).unwrap();
            // both are genuine characters of the subgroup...
            decompose(&restricted, &t).unwrap();
            decompose(&intrinsic, &t).unwrap();
            // ...of the same dimension, but they are different.
            assert_eq!(restricted.values[0], intrinsic.values[0]);
            assert_ne!(restricted.values, intrinsic.values, "D{n}");
        }
    }

    #[test]
    fn hecke_deformation_relations() {
        for ts in ["A3", "BC2", "BC3", "D3", "I2(5)", "I2(6)", "H3"] {
            hecke_relations_check(&grp(ts)).unwrap_or_else(|e| panic!("{ts}: {e:?}"));
        }
        assert!(matches!(
            hecke_relations_check(&grp("H4")),
            Err(Error::BoundExceeded { .. })
        ));
    }

    proptest! {
        #[test]
        fn trace_ignores_k(num in -8i64..=8, den in 1i64..=4) {
            let g = grp("BC2");
            let m = build_rho(&g, Rational::new(num.into(), den.into()));
            let walk = character_of(&build_rho(&g, rat(0)));
            for c in 0..g.num_classes() {
                prop_assert_eq!(
                    CycloNumber::from_rational(m.trace(g.class_rep(c))),
                    walk.values[c].clone()
                );
            }
        }
    }
}
