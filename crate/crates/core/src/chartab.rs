//! Exact character tables with canonical labels, fake degrees, and the L2
//! inner product on class functions.
//!
//! Construction by type: A_n uses the Murnaghan-Nakayama recursion on
//! partitions of n+1; BC_n induces chi^alpha_+ (x) chi^beta_- classwise from
//! the subgroup W_|alpha| x W_|beta|, which reduces to a finite sum over
//! splittings of signed cycle types weighted by centralizer orders; D_n
//! restricts the BC table for unequal bipartitions and separates the split
//! pairs with the exact class-algebra method below; I2(m) has closed forms in
//! roots of unity; H3 and H4 run a Dixon-Schneider computation: split the
//! class-multiplication matrices over a prime field F_p with p = 1 mod exp(W)
//! and lift eigenvalue multiplicities back into Q(zeta) exactly.

use crate::combinat::{bipartitions, partitions, Partition};
use crate::coxgroup::{CoxType, CoxeterGroup};
use crate::cyclo::{CycloNumber, Rational};
use crate::{Error, QPoly, Result};
use num::BigInt;
use num_traits::{One, Zero};
use once_cell::sync::Lazy;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

// ---------------------------------------------------------------------------
// group interface for the class-algebra method

/// The group data the Dixon-Schneider engine needs.  Elements are dense ids
/// with 0 the identity; classes are indexed 0..num_classes with class 0 the
/// identity class.
pub trait GroupTable {
    fn order(&self) -> usize;
    fn num_classes(&self) -> usize;
    fn class_of(&self, g: u32) -> usize;
    fn class_rep(&self, c: usize) -> u32;
    fn class_size(&self, c: usize) -> usize;
    fn mul(&self, a: u32, b: u32) -> u32;
    fn inv(&self, g: u32) -> u32;

    fn element_order(&self, g: u32) -> u32 {
        let mut x = g;
        let mut o = 1;
        while x != 0 {
            x = self.mul(x, g);
            o += 1;
        }
        o
    }

    fn exponent(&self) -> u32 {
        (0..self.num_classes())
            .map(|c| self.element_order(self.class_rep(c)) as u64)
            .fold(1u64, num::integer::lcm) as u32
    }
}

impl GroupTable for CoxeterGroup {
    fn order(&self) -> usize {
        CoxeterGroup::order(self)
    }
    fn num_classes(&self) -> usize {
        CoxeterGroup::num_classes(self)
    }
    fn class_of(&self, g: u32) -> usize {
        CoxeterGroup::class_of(self, g)
    }
    fn class_rep(&self, c: usize) -> u32 {
        CoxeterGroup::class_rep(self, c)
    }
    fn class_size(&self, c: usize) -> usize {
        CoxeterGroup::class_size(self, c)
    }
    fn mul(&self, a: u32, b: u32) -> u32 {
        CoxeterGroup::mul(self, a, b)
    }
    fn inv(&self, g: u32) -> u32 {
        CoxeterGroup::inv(self, g)
    }
    fn element_order(&self, g: u32) -> u32 {
        CoxeterGroup::element_order(self, g)
    }
    fn exponent(&self) -> u32 {
        CoxeterGroup::exponent(self)
    }
}

/// A finite group given by an explicit multiplication table, with conjugacy
/// classes computed on construction.  Used for the small auxiliary groups
/// that show up as centralizers, and to cross-check the generic engine.
pub struct CayleyGroup {
    n: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    class_of: Vec<usize>,
    class_reps: Vec<u32>,
    class_sizes: Vec<usize>,
}

impl CayleyGroup {
    /// Element 0 must be the identity.
    pub fn from_mul(n: usize, f: impl Fn(u32, u32) -> u32) -> Result<CayleyGroup> {
        let mut mul = vec![0u32; n * n];
        for a in 0..n as u32 {
            for b in 0..n as u32 {
                let c = f(a, b);
                if c as usize >= n {
                    return Err(Error::InvalidParameter(
                        "multiplication escapes the element range".into(),
                    ));
                }
                mul[a as usize * n + b as usize] = c;
            }
        }
        for x in 0..n as u32 {
            if mul[x as usize] != x || mul[x as usize * n] != x {
                return Err(Error::InvalidParameter(
                    "element 0 is not the identity".into(),
                ));
            }
        }
        let mut inv = vec![u32::MAX; n];
        for a in 0..n {
            for b in 0..n {
                if mul[a * n + b] == 0 {
                    inv[a] = b as u32;
                }
            }
        }
        if inv.iter().any(|&x| x == u32::MAX) {
            return Err(Error::InvalidParameter(
                "not a group: missing inverse".into(),
            ));
        }
        let mut class_of = vec![usize::MAX; n];
        let mut class_reps = Vec::new();
        let mut class_sizes = Vec::new();
        for x in 0..n {
            if class_of[x] != usize::MAX {
                continue;
            }
            let c = class_reps.len();
            class_reps.push(x as u32);
            let mut size = 0;
            for g in 0..n {
                let y = mul[mul[g * n + x] as usize * n + inv[g] as usize] as usize;
                if class_of[y] == usize::MAX {
                    class_of[y] = c;
                    size += 1;
                }
            }
            class_sizes.push(size);
        }
        Ok(CayleyGroup {
            n,
            mul,
            inv,
            class_of,
            class_reps,
            class_sizes,
        })
    }
}

impl GroupTable for CayleyGroup {
    fn order(&self) -> usize {
        self.n
    }
    fn num_classes(&self) -> usize {
        self.class_reps.len()
    }
    fn class_of(&self, g: u32) -> usize {
        self.class_of[g as usize]
    }
    fn class_rep(&self, c: usize) -> u32 {
        self.class_reps[c]
    }
    fn class_size(&self, c: usize) -> usize {
        self.class_sizes[c]
    }
    fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.n + b as usize]
    }
    fn inv(&self, g: u32) -> u32 {
        self.inv[g as usize]
    }
}

// ---------------------------------------------------------------------------
// labels

/// Canonical name of an irreducible character.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum IrrLabel {
    /// Type A: a partition of n+1.
    Alpha(Partition),
    /// Type BC: an ordered bipartition (alpha, beta) of n.
    Pair(Partition, Partition),
    /// Type D with alpha != beta: the unordered pair, stored with alpha < beta.
    Unordered(Partition, Partition),
    /// Type D split character {alpha}, index 1 or 2.
    Split(Partition, u8),
    /// Dihedral and H-type characters phi_{d,e}: d the degree, e the lowest
    /// fake-degree exponent, `third` the next exponent when (d,e) collides,
    /// and `primes` 1 or 2 for the dihedral phi' / phi'' pair.
    Phi {
        d: u32,
        e: u32,
        third: Option<u32>,
        primes: u8,
    },
}

impl fmt::Display for IrrLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IrrLabel::Alpha(a) => write!(f, "{a}"),
            IrrLabel::Pair(a, b) => write!(f, "({a},{b})"),
            IrrLabel::Unordered(a, b) => write!(f, "{{{a},{b}}}"),
            IrrLabel::Split(a, i) => write!(f, "{{{a}}},{i}"),
            IrrLabel::Phi {
                d,
                e,
                third,
                primes,
            } => {
                let ticks = match primes {
                    0 => "",
                    1 => "'",
                    _ => "''",
                };
                match third {
                    Some(t) => write!(f, "phi{ticks}[{d},{e},{t}]"),
                    None => write!(f, "phi{ticks}[{d},{e}]"),
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// class functions and tables

/// A function constant on conjugacy classes, carrying enough context to take
/// inner products without rebuilding the group.
#[derive(Clone, Debug)]
pub struct ClassFunction {
    pub typ: CoxType,
    pub class_sizes: Vec<u64>,
    pub values: Vec<CycloNumber>,
}

/// (1/|W|) sum over W of f * conj(h), computed classwise.
pub fn inner_product(f: &ClassFunction, h: &ClassFunction) -> Result<CycloNumber> {
    if f.typ != h.typ || f.class_sizes != h.class_sizes {
        return Err(Error::InvalidParameter(
            "inner product of class functions on different groups".into(),
        ));
    }
    Ok(inner_with_sizes(&f.class_sizes, &f.values, &h.values))
}

fn inner_with_sizes(sizes: &[u64], f: &[CycloNumber], h: &[CycloNumber]) -> CycloNumber {
    let order: u64 = sizes.iter().sum();
    let mut acc = CycloNumber::zero();
    for (k, &n) in sizes.iter().enumerate() {
        acc = acc + f[k].clone() * h[k].conj() * CycloNumber::from_int(n as i64);
    }
    acc * CycloNumber::from_rational(Rational::new(BigInt::one(), BigInt::from(order)))
}

/// The complete character table of one of the supported reflection groups.
/// Rows are indexed like `labels`, columns by the group's conjugacy classes
/// in their id order.
pub struct CharacterTable {
    typ: CoxType,
    group_order: u64,
    class_names: Vec<String>,
    class_sizes: Vec<u64>,
    class_reps: Vec<u32>,
    id_class: usize,
    labels: Vec<IrrLabel>,
    rows: Vec<Vec<CycloNumber>>,
    fake: Vec<QPoly>,
}

impl CharacterTable {
    pub fn typ(&self) -> CoxType {
        self.typ
    }
    pub fn group_order(&self) -> u64 {
        self.group_order
    }
    pub fn num_classes(&self) -> usize {
        self.class_names.len()
    }
    pub fn num_irr(&self) -> usize {
        self.labels.len()
    }
    pub fn class_name(&self, c: usize) -> &str {
        &self.class_names[c]
    }
    pub fn class_size(&self, c: usize) -> u64 {
        self.class_sizes[c]
    }
    pub fn class_sizes(&self) -> &[u64] {
        &self.class_sizes
    }
    pub fn class_rep(&self, c: usize) -> u32 {
        self.class_reps[c]
    }
    pub fn identity_class(&self) -> usize {
        self.id_class
    }
    pub fn labels(&self) -> &[IrrLabel] {
        &self.labels
    }
    pub fn label(&self, i: usize) -> &IrrLabel {
        &self.labels[i]
    }
    pub fn row(&self, i: usize) -> &[CycloNumber] {
        &self.rows[i]
    }
    pub fn value(&self, i: usize, c: usize) -> &CycloNumber {
        &self.rows[i][c]
    }
    pub fn degree(&self, i: usize) -> u64 {
        use num_traits::ToPrimitive;
        self.rows[i][self.id_class]
            .to_integer()
            .unwrap()
            .to_u64()
            .unwrap()
    }
    pub fn fake_degree(&self, i: usize) -> &QPoly {
        &self.fake[i]
    }

    pub fn index_of(&self, label: &IrrLabel) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Look a character up by the display form of its label, e.g. "phi[4,3]".
    pub fn index_of_name(&self, name: &str) -> Option<usize> {
        self.labels.iter().position(|l| l.to_string() == name)
    }

    pub fn index_of_trivial(&self) -> usize {
        self.rows
            .iter()
            .position(|r| r.iter().all(|v| v == &CycloNumber::one()))
            .expect("every table contains the trivial character")
    }

    /// Index of the determinant (sign) character, given the group.
    pub fn index_of_sign(&self, g: &CoxeterGroup) -> usize {
        let vals: Vec<CycloNumber> = self
            .class_reps
            .iter()
            .map(|&w| CycloNumber::from_int(if g.len(w) % 2 == 1 { -1 } else { 1 }))
            .collect();
        self.rows
            .iter()
            .position(|r| r == &vals)
            .expect("every table contains the sign character")
    }

    /// Class function view of row i.
    pub fn irr(&self, i: usize) -> ClassFunction {
        ClassFunction {
            typ: self.typ,
            class_sizes: self.class_sizes.clone(),
            values: self.rows[i].clone(),
        }
    }

    /// Inner product of two value vectors in this table's class order.
    pub fn inner(&self, f: &[CycloNumber], h: &[CycloNumber]) -> Result<CycloNumber> {
        if f.len() != self.num_classes() || h.len() != self.num_classes() {
            return Err(Error::InvalidParameter(
                "class-function length mismatch".into(),
            ));
        }
        Ok(inner_with_sizes(&self.class_sizes, f, h))
    }
}

// ---------------------------------------------------------------------------
// construction

/// Build (and cache) the character table for the group's type.
pub fn char_table(g: &CoxeterGroup) -> Result<Arc<CharacterTable>> {
    static CACHE: Lazy<Mutex<HashMap<CoxType, Arc<CharacterTable>>>> =
        Lazy::new(|| Mutex::new(HashMap::new()));
    if let Some(t) = CACHE.lock().unwrap().get(&g.cox_type()) {
        return Ok(Arc::clone(t));
    }
    let t = Arc::new(build_table(g)?);
    CACHE.lock().unwrap().insert(g.cox_type(), Arc::clone(&t));
    Ok(t)
}

struct RawTable {
    labels: Vec<IrrLabel>,
    rows: Vec<Vec<CycloNumber>>,
    fake: Option<Vec<QPoly>>,
}

fn build_table(g: &CoxeterGroup) -> Result<CharacterTable> {
    let raw = match g.cox_type() {
        CoxType::A(n) => build_a(g, n),
        CoxType::BC(n) => build_bc(g, n),
        CoxType::D(n) => build_d(g, n)?,
        CoxType::I2(m) => build_i2(g, m),
        CoxType::H3 | CoxType::H4 => build_h(g)?,
    };
    let fake = match raw.fake {
        Some(f) => f,
        None => fake_degree_engine(g, &raw.rows)?,
    };
    let id_class = GroupTable::class_of(g, 0);
    let class_sizes: Vec<u64> = (0..g.num_classes())
        .map(|c| g.class_size(c) as u64)
        .collect();
    let class_reps: Vec<u32> = (0..g.num_classes()).map(|c| g.class_rep(c)).collect();
    let class_names = (0..g.num_classes()).map(|c| class_name(g, c)).collect();

    let t = CharacterTable {
        typ: g.cox_type(),
        group_order: CoxeterGroup::order(g) as u64,
        class_names,
        class_sizes,
        class_reps,
        id_class,
        labels: raw.labels,
        rows: raw.rows,
        fake,
    };
    verify_table(&t)?;
    Ok(t)
}

fn verify_table(t: &CharacterTable) -> Result<()> {
    let r = t.num_classes();
    if t.labels.len() != r || t.rows.len() != r || t.fake.len() != r {
        return Err(Error::Verification(format!(
            "{}: table shape mismatch ({} labels, {} rows, {} classes)",
            t.typ,
            t.labels.len(),
            t.rows.len(),
            r
        )));
    }
    for i in 0..r {
        for j in 0..r {
            if i != j && t.labels[i] == t.labels[j] {
                return Err(Error::Verification(format!(
                    "{}: duplicate label {}",
                    t.typ, t.labels[i]
                )));
            }
            if i != j && t.class_names[i] == t.class_names[j] {
                return Err(Error::Verification(format!(
                    "{}: duplicate class name {}",
                    t.typ, t.class_names[i]
                )));
            }
        }
    }
    // Row orthonormality pins the table down completely given exactness.
    for i in 0..r {
        for j in i..r {
            let ip = inner_with_sizes(&t.class_sizes, &t.rows[i], &t.rows[j]);
            let expect = if i == j {
                CycloNumber::one()
            } else {
                CycloNumber::zero()
            };
            if ip != expect {
                return Err(Error::Verification(format!(
                    "{}: rows {} and {} have inner product {}",
                    t.typ, t.labels[i], t.labels[j], ip
                )));
            }
        }
    }
    let sumsq: u64 = (0..r).map(|i| t.degree(i) * t.degree(i)).sum();
    if sumsq != t.group_order {
        return Err(Error::Verification(format!(
            "{}: sum of squared degrees {} != |W| = {}",
            t.typ, sumsq, t.group_order
        )));
    }
    Ok(())
}

fn class_name(g: &CoxeterGroup, c: usize) -> String {
    let w = g.class_rep(c);
    match g.cox_type() {
        CoxType::A(_) => {
            let t = g.cycle_type(w).unwrap();
            Partition::new(t.iter().map(|&x| x as u32).collect::<Vec<_>>()).to_string()
        }
        CoxType::BC(_) => {
            let (l, m) = g.signed_cycle_type(w).unwrap();
            format!("({},{})", part_of(&l), part_of(&m))
        }
        CoxType::D(_) => {
            let (l, m) = g.signed_cycle_type(w).unwrap();
            let base = format!("({},{})", part_of(&l), part_of(&m));
            if m.is_empty() && l.iter().all(|&x| x % 2 == 0) {
                if class_has_unsigned_member(g, c) {
                    format!("{base}+")
                } else {
                    format!("{base}-")
                }
            } else {
                base
            }
        }
        CoxType::I2(_) => match g.dihedral_form(w).unwrap() {
            (false, 0) => "1".to_string(),
            (false, j) => format!("(rs)^{j}"),
            (true, j) => {
                if j % 2 == 0 {
                    "r".to_string()
                } else {
                    "s".to_string()
                }
            }
        },
        CoxType::H3 | CoxType::H4 => {
            if w == 0 {
                "1".to_string()
            } else {
                g.word(w)
                    .iter()
                    .map(|&s| (b'a' + s) as char)
                    .collect::<String>()
            }
        }
    }
}

fn part_of(v: &[usize]) -> Partition {
    Partition::new(v.iter().map(|&x| x as u32).collect::<Vec<_>>())
}

fn class_has_unsigned_member(g: &CoxeterGroup, c: usize) -> bool {
    g.class_members(c)
        .iter()
        .any(|&w| g.signed_perm(w).unwrap().iter().all(|&x| x > 0))
}

// ---------------------------------------------------------------------------
// type A: Murnaghan-Nakayama

type MnMemo = HashMap<(Vec<u32>, Vec<u32>), i64>;

/// chi^lambda evaluated at the class with cycle type mu (mu in any order).
fn mn_char(lam: &Partition, mu: &[u32], memo: &mut MnMemo) -> i64 {
    if mu.is_empty() {
        return 1;
    }
    let key = (lam.parts().to_vec(), mu.to_vec());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let t = mu[0];
    let k = lam.num_parts();
    let beta: Vec<u32> = (0..k)
        .map(|i| lam.part(i + 1) + (k - 1 - i) as u32)
        .collect();
    let mut total = 0i64;
    for i in 0..k {
        let b = beta[i];
        if b < t || beta.contains(&(b - t)) {
            continue;
        }
        let height = beta.iter().filter(|&&x| b - t < x && x < b).count();
        let mut nb = beta.clone();
        nb[i] = b - t;
        nb.sort_unstable_by(|a, b| b.cmp(a));
        let parts: Vec<u32> = nb
            .iter()
            .enumerate()
            .map(|(j, &x)| x - (k - 1 - j) as u32)
            .collect();
        let sign = if height % 2 == 0 { 1 } else { -1 };
        total += sign * mn_char(&Partition::new(parts), &mu[1..], memo);
    }
    memo.insert(key, total);
    total
}

fn build_a(g: &CoxeterGroup, n: usize) -> RawTable {
    let labels: Vec<Partition> = partitions(n as u32 + 1);
    let class_types: Vec<Vec<u32>> = (0..g.num_classes())
        .map(|c| {
            g.cycle_type(g.class_rep(c))
                .unwrap()
                .iter()
                .map(|&x| x as u32)
                .collect()
        })
        .collect();
    let mut memo = MnMemo::new();
    let rows = labels
        .iter()
        .map(|lam| {
            class_types
                .iter()
                .map(|mu| CycloNumber::from_int(mn_char(lam, mu, &mut memo)))
                .collect()
        })
        .collect();
    RawTable {
        labels: labels.into_iter().map(IrrLabel::Alpha).collect(),
        rows,
        fake: None,
    }
}

// ---------------------------------------------------------------------------
// type BC: classwise induction from W_k x W_l

/// Centralizer order of a signed cycle type inside the full hyperoctahedral
/// group on (|lam| + |mu|) letters.
fn z_signed(lam: &Partition, mu: &Partition) -> u64 {
    let mut z = 1u64;
    for p in [lam, mu] {
        let mut i = 0;
        let parts = p.parts();
        while i < parts.len() {
            let v = parts[i];
            let mut c = 0u64;
            while i < parts.len() && parts[i] == v {
                c += 1;
                i += 1;
            }
            for j in 1..=c {
                z *= 2 * v as u64;
                z *= j;
            }
        }
    }
    z
}

/// All splittings of the parts of `p` into an ordered pair of sub-multisets;
/// each distinct split appears exactly once.
fn multiset_splits(p: &Partition) -> Vec<(Partition, Partition)> {
    let mut groups: Vec<(u32, u32)> = Vec::new();
    for &v in p.parts() {
        match groups.last_mut() {
            Some((gv, c)) if *gv == v => *c += 1,
            _ => groups.push((v, 1)),
        }
    }
    let mut out = Vec::new();
    let mut choice = vec![0u32; groups.len()];
    loop {
        let mut left = Vec::new();
        let mut right = Vec::new();
        for (gi, &(v, c)) in groups.iter().enumerate() {
            for _ in 0..choice[gi] {
                left.push(v);
            }
            for _ in 0..c - choice[gi] {
                right.push(v);
            }
        }
        out.push((Partition::new(left), Partition::new(right)));
        let mut gi = 0;
        loop {
            if gi == groups.len() {
                return out;
            }
            if choice[gi] < groups[gi].1 {
                choice[gi] += 1;
                break;
            }
            choice[gi] = 0;
            gi += 1;
        }
    }
}

fn union_parts(a: &Partition, b: &Partition) -> Vec<u32> {
    let mut v: Vec<u32> = a.parts().iter().chain(b.parts()).copied().collect();
    v.sort_unstable_by(|x, y| y.cmp(x));
    v
}

/// Value of chi^{(alpha,beta)} on the class with signed cycle type (lam, mu).
fn bc_char(
    alpha: &Partition,
    beta: &Partition,
    lam: &Partition,
    mu: &Partition,
    memo: &mut MnMemo,
) -> i64 {
    let k = alpha.size();
    let z_full = z_signed(lam, mu);
    let mut total = Rational::zero();
    for (l1, l2) in multiset_splits(lam) {
        for (m1, m2) in multiset_splits(mu) {
            if l1.size() + m1.size() != k {
                continue;
            }
            let a_val = mn_char(alpha, &union_parts(&l1, &m1), memo);
            if a_val == 0 {
                continue;
            }
            let b_val = mn_char(beta, &union_parts(&l2, &m2), memo);
            if b_val == 0 {
                continue;
            }
            let sign = if m2.num_parts() % 2 == 0 { 1 } else { -1 };
            let weight = Rational::new(
                BigInt::from(z_full),
                BigInt::from(z_signed(&l1, &m1) * z_signed(&l2, &m2)),
            );
            total += weight * Rational::from_integer(BigInt::from(a_val * b_val * sign));
        }
    }
    assert!(
        total.is_integer(),
        "induced character value must be integral"
    );
    use num_traits::ToPrimitive;
    total.to_integer().to_i64().unwrap()
}

fn build_bc(g: &CoxeterGroup, n: usize) -> RawTable {
    let labels = bipartitions(n as u32);
    let class_types: Vec<(Partition, Partition)> = (0..g.num_classes())
        .map(|c| {
            let (l, m) = g.signed_cycle_type(g.class_rep(c)).unwrap();
            (part_of(&l), part_of(&m))
        })
        .collect();
    let mut memo = MnMemo::new();
    let rows = labels
        .iter()
        .map(|(a, b)| {
            class_types
                .iter()
                .map(|(l, m)| CycloNumber::from_int(bc_char(a, b, l, m, &mut memo)))
                .collect()
        })
        .collect();
    RawTable {
        labels: labels
            .into_iter()
            .map(|(a, b)| IrrLabel::Pair(a, b))
            .collect(),
        rows,
        fake: None,
    }
}

// ---------------------------------------------------------------------------
// type D: restriction plus splitting

/// Image and sign of the basis vector a_tau under w in the k = 0 involution
/// module: letters of a reduced word act right to left; a letter commuting
/// with the current involution keeps it and contributes its descent sign, a
/// non-commuting letter conjugates with no sign.
pub(crate) fn k0_apply(g: &CoxeterGroup, w: u32, tau: u32) -> (u32, i64) {
    let mut t = tau;
    let mut sign = 1i64;
    for &s in g.word(w).iter().rev() {
        let s = s as usize;
        let st = g.left_mul(s, t);
        let ts = g.right_mul(t, s);
        if st == ts {
            if g.len(st) < g.len(t) {
                sign = -sign;
            }
        } else {
            t = g.right_mul(st, s);
        }
    }
    (t, sign)
}

/// Character of the k = 0 involution module restricted to the span of one
/// conjugacy class of involutions, as a vector over all classes.
pub(crate) fn k0_class_character(g: &CoxeterGroup, inv_rep: u32) -> Vec<i64> {
    let members = g.class_members(GroupTable::class_of(g, inv_rep)).to_vec();
    (0..g.num_classes())
        .map(|c| {
            let w = g.class_rep(c);
            members
                .iter()
                .map(|&tau| {
                    let (im, s) = k0_apply(g, w, tau);
                    if im == tau {
                        s
                    } else {
                        0
                    }
                })
                .sum()
        })
        .collect()
}

fn build_d(g: &CoxeterGroup, n: usize) -> Result<RawTable> {
    let class_types: Vec<(Partition, Partition)> = (0..g.num_classes())
        .map(|c| {
            let (l, m) = g.signed_cycle_type(g.class_rep(c)).unwrap();
            (part_of(&l), part_of(&m))
        })
        .collect();
    let mut memo = MnMemo::new();
    let restriction_row = |a: &Partition, b: &Partition, memo: &mut MnMemo| -> Vec<CycloNumber> {
        class_types
            .iter()
            .map(|(l, m)| CycloNumber::from_int(bc_char(a, b, l, m, memo)))
            .collect()
    };

    // For even n, the split rows come out of the generic engine and get
    // matched against the restrictions; the convention fixing which member
    // is "{alpha},1" is that it occurs in the involution-module character of
    // the class of sigma[0,0,n/2].
    let (dixon, theta): (Vec<Vec<CycloNumber>>, Vec<CycloNumber>) = if n % 2 == 0 {
        let rows = dixon_character_table(g)?;
        let target = format!("sigma[0,0,{}]", n / 2);
        let rep = g
            .involution_class_reps()
            .iter()
            .find(|(name, _)| *name == target)
            .map(|&(_, w)| w)
            .ok_or_else(|| Error::Verification(format!("missing involution class {target}")))?;
        let theta = k0_class_character(g, rep)
            .into_iter()
            .map(CycloNumber::from_int)
            .collect();
        (rows, theta)
    } else {
        (Vec::new(), Vec::new())
    };
    let class_sizes: Vec<u64> = (0..g.num_classes())
        .map(|c| g.class_size(c) as u64)
        .collect();

    let mut labels = Vec::new();
    let mut rows: Vec<Vec<CycloNumber>> = Vec::new();
    for (a, b) in bipartitions(n as u32) {
        if a < b {
            labels.push(IrrLabel::Unordered(a.clone(), b.clone()));
            rows.push(restriction_row(&a, &b, &mut memo));
        } else if a == b {
            let res = restriction_row(&a, &b, &mut memo);
            let mut pair = Vec::new();
            for u in &dixon {
                let ip = inner_with_sizes(&class_sizes, u, &res);
                if ip == CycloNumber::one() {
                    pair.push(u.clone());
                } else if ip != CycloNumber::zero() {
                    return Err(Error::Verification(format!(
                        "restriction of ({a},{a}) meets a constituent with multiplicity {ip}"
                    )));
                }
            }
            if pair.len() != 2 {
                return Err(Error::Verification(format!(
                    "restriction of ({a},{a}) has {} constituents, expected 2",
                    pair.len()
                )));
            }
            let sum_ok = res
                .iter()
                .enumerate()
                .all(|(c, v)| pair[0][c].clone() + pair[1][c].clone() == *v);
            if !sum_ok {
                return Err(Error::Verification(format!(
                    "constituents of ({a},{a}) do not sum to the restriction"
                )));
            }
            let m0 = inner_with_sizes(&class_sizes, &theta, &pair[0]);
            let m1 = inner_with_sizes(&class_sizes, &theta, &pair[1]);
            let (first, second) = if m0 == CycloNumber::one() && m1 == CycloNumber::zero() {
                (0, 1)
            } else if m1 == CycloNumber::one() && m0 == CycloNumber::zero() {
                (1, 0)
            } else {
                return Err(Error::Verification(format!(
                    "split pair for {a} pairs with the involution module as ({m0},{m1})"
                )));
            };
            labels.push(IrrLabel::Split(a.clone(), 1));
            rows.push(pair[first].clone());
            labels.push(IrrLabel::Split(a.clone(), 2));
            rows.push(pair[second].clone());
        }
    }
    Ok(RawTable {
        labels,
        rows,
        fake: None,
    })
}

// ---------------------------------------------------------------------------
// dihedral closed forms

fn build_i2(g: &CoxeterGroup, m: u32) -> RawTable {
    let forms: Vec<(bool, u32)> = (0..g.num_classes())
        .map(|c| g.dihedral_form(g.class_rep(c)).unwrap())
        .collect();
    let mut labels = Vec::new();
    let mut rows = Vec::new();

    let mut push = |label: IrrLabel, f: &dyn Fn(bool, u32) -> CycloNumber| {
        labels.push(label);
        rows.push(forms.iter().map(|&(r, j)| f(r, j)).collect());
    };
    let int = CycloNumber::from_int;

    push(
        IrrLabel::Phi {
            d: 1,
            e: 0,
            third: None,
            primes: 0,
        },
        &|_, _| int(1),
    );
    push(
        IrrLabel::Phi {
            d: 1,
            e: m,
            third: None,
            primes: 0,
        },
        &|r, _| int(if r { -1 } else { 1 }),
    );
    if m % 2 == 0 {
        // The two linear characters separating r from s: values (-1)^j on
        // both rotations (rs)^j and reflections (rs)^j r, with the prime
        // convention fixed by phi'(r) = 1.
        push(
            IrrLabel::Phi {
                d: 1,
                e: m / 2,
                third: None,
                primes: 1,
            },
            &|_, j| int(if j % 2 == 0 { 1 } else { -1 }),
        );
        push(
            IrrLabel::Phi {
                d: 1,
                e: m / 2,
                third: None,
                primes: 2,
            },
            &|r, j| {
                let flip = (j + r as u32) % 2;
                int(if flip == 0 { 1 } else { -1 })
            },
        );
    }
    for k in 1..=(m - 1) / 2 {
        push(
            IrrLabel::Phi {
                d: 2,
                e: k,
                third: None,
                primes: 0,
            },
            &|r, j| {
                if r {
                    CycloNumber::zero()
                } else {
                    CycloNumber::zeta(m, (j * k) as i64) + CycloNumber::zeta(m, -((j * k) as i64))
                }
            },
        );
    }
    RawTable {
        labels,
        rows,
        fake: None,
    }
}

// ---------------------------------------------------------------------------
// H3 / H4 via the generic engine

fn build_h(g: &CoxeterGroup) -> Result<RawTable> {
    let rows = dixon_character_table(g)?;
    let fake = fake_degree_engine(g, &rows)?;
    let id_class = GroupTable::class_of(g, 0);
    use num_traits::ToPrimitive;
    let info: Vec<(u32, u32)> = rows
        .iter()
        .zip(&fake)
        .map(|(row, f)| {
            let d = row[id_class].to_integer().unwrap().to_u32().unwrap();
            let e = f.valuation().expect("fake degree is nonzero") as u32;
            (d, e)
        })
        .collect();
    // (d, e) almost always identifies the character; on a collision the next
    // fake-degree exponent separates the pair.
    let mut labels: Vec<IrrLabel> = Vec::with_capacity(rows.len());
    for (i, &(d, e)) in info.iter().enumerate() {
        let collides = info.iter().enumerate().any(|(j, &x)| j != i && x == (d, e));
        let third = if collides {
            let f = &fake[i];
            let next = (e as usize + 1..)
                .find(|&k| !f.coeff(k).is_zero())
                .expect("colliding fake degrees must differ past the valuation");
            Some(next as u32)
        } else {
            None
        };
        labels.push(IrrLabel::Phi {
            d,
            e,
            third,
            primes: 0,
        });
    }
    let mut idx: Vec<usize> = (0..rows.len()).collect();
    let sort_key = |l: &IrrLabel| match *l {
        IrrLabel::Phi { d, e, third, .. } => (d, e, third.unwrap_or(0)),
        _ => unreachable!(),
    };
    idx.sort_by_key(|&i| sort_key(&labels[i]));
    let mut out_labels = Vec::new();
    let mut out_rows = Vec::new();
    let mut out_fake = Vec::new();
    for &i in &idx {
        out_labels.push(labels[i].clone());
        out_rows.push(rows[i].clone());
        out_fake.push(fake[i].clone());
    }
    Ok(RawTable {
        labels: out_labels,
        rows: out_rows,
        fake: Some(out_fake),
    })
}

// ---------------------------------------------------------------------------
// Dixon-Schneider: exact character values from class-multiplication matrices

/// Compute the full set of irreducible character value rows of a finite
/// group, exactly.  The class-multiplication matrices are simultaneously
/// diagonalized over F_p for a prime p = 1 (mod exp G) with p > 2*sqrt(|G|);
/// eigenvalue multiplicities of each rho(g) are then recovered by discrete
/// Fourier inversion mod p and lifted, giving values in Q(zeta_{ord g}).
/// Rows are returned sorted by degree, then by display form.
pub fn dixon_character_table<G: GroupTable>(g: &G) -> Result<Vec<Vec<CycloNumber>>> {
    let n = g.order();
    let r = g.num_classes();
    let id_class = g.class_of(0);
    if id_class != 0 || g.class_size(id_class) != 1 {
        return Err(Error::Verification("identity class must be class 0".into()));
    }
    let e = g.exponent() as u64;
    let p = pick_prime(e, n as u64)?;

    let reps: Vec<u32> = (0..r).map(|c| g.class_rep(c)).collect();
    let sizes: Vec<u64> = (0..r).map(|c| g.class_size(c) as u64).collect();
    let inv_class: Vec<usize> = reps.iter().map(|&w| g.class_of(g.inv(w))).collect();

    // a[(i*r + j)*r + k] = #{(u,v) in C_i x C_j : uv = rep_k}
    let mut a = vec![0u32; r * r * r];
    for x in 0..n as u32 {
        let i = g.class_of(x);
        let xi = g.inv(x);
        for (k, &rep) in reps.iter().enumerate() {
            let j = g.class_of(g.mul(xi, rep));
            a[(i * r + j) * r + k] += 1;
        }
    }

    // Split the common eigenvectors of all A_i over F_p.
    let apply = |i: usize, v: &[u64]| -> Vec<u64> {
        (0..r)
            .map(|j| {
                let mut acc = 0u64;
                for k in 0..r {
                    acc = (acc + a[(i * r + j) * r + k] as u64 * v[k]) % p;
                }
                acc
            })
            .collect()
    };
    let mut subspaces: Vec<Echelon> = vec![Echelon::full(r)];
    for i in 1..r {
        let mut next = Vec::new();
        for sub in subspaces {
            if sub.rows.len() == 1 {
                next.push(sub);
                continue;
            }
            let m = sub.rows.len();
            let mut b = vec![vec![0u64; m]; m];
            for (t, v) in sub.rows.iter().enumerate() {
                let w = apply(i, v);
                let coords = sub.coords(&w, p).ok_or_else(|| {
                    Error::Verification("class-algebra subspace is not invariant".into())
                })?;
                for s in 0..m {
                    b[s][t] = coords[s];
                }
            }
            let cp = charpoly_mod(&b, p);
            let roots: Vec<u64> = (0..p).filter(|&x| poly_eval_mod(&cp, x, p) == 0).collect();
            if roots.len() <= 1 {
                next.push(sub);
                continue;
            }
            let mut found = 0;
            for &lam in &roots {
                let mut bl = b.clone();
                for s in 0..m {
                    bl[s][s] = (bl[s][s] + p - lam) % p;
                }
                let ker = kernel_mod(&bl, p);
                found += ker.len();
                let vecs: Vec<Vec<u64>> = ker
                    .iter()
                    .map(|coef| {
                        let mut v = vec![0u64; r];
                        for (s, &cs) in coef.iter().enumerate() {
                            for (vk, &sk) in v.iter_mut().zip(&sub.rows[s]) {
                                *vk = (*vk + cs * sk) % p;
                            }
                        }
                        v
                    })
                    .collect();
                next.push(Echelon::from_rows(vecs, p));
            }
            if found != m {
                return Err(Error::Verification(
                    "class-multiplication matrix failed to diagonalize".into(),
                ));
            }
        }
        subspaces = next;
    }
    if subspaces.len() != r || subspaces.iter().any(|s| s.rows.len() != 1) {
        return Err(Error::Verification(
            "joint eigenspaces of the class algebra are not one-dimensional".into(),
        ));
    }

    // Normalize each eigenvector so its identity-class entry is 1, recover
    // the degree, then the character values mod p.
    let inv_sizes: Vec<u64> = sizes.iter().map(|&s| inv_mod(s % p, p)).collect();
    let mut value_rows_mod: Vec<(u64, Vec<u64>)> = Vec::with_capacity(r);
    for sub in &subspaces {
        let v = &sub.rows[0];
        if v[id_class] == 0 {
            return Err(Error::Verification(
                "eigenvector vanishes at the identity".into(),
            ));
        }
        let scale = inv_mod(v[id_class], p);
        let omega: Vec<u64> = v.iter().map(|&x| x * scale % p).collect();
        let mut t = 0u64;
        for k in 0..r {
            t = (t + omega[k] * omega[inv_class[k]] % p * inv_sizes[k]) % p;
        }
        let d2 = n as u64 % p * inv_mod(t, p) % p;
        let mut deg = 0u64;
        for d in 1..=isqrt(n as u64) {
            if d * d % p == d2 {
                deg = d;
                break;
            }
        }
        if deg == 0 {
            return Err(Error::Verification(
                "no degree matches the eigenvector norm".into(),
            ));
        }
        let vals: Vec<u64> = (0..r)
            .map(|k| deg % p * omega[k] % p * inv_sizes[k] % p)
            .collect();
        value_rows_mod.push((deg, vals));
    }

    // Lift: the multiplicity of zeta_o^l among the eigenvalues of rho(g) is
    // (1/o) sum_t chi(g^t) zeta_o^{-lt}, a nonnegative integer at most deg.
    let gen = primitive_root(p)?;
    let z = pow_mod(gen, (p - 1) / e, p);
    let mut rows: Vec<Vec<CycloNumber>> = Vec::with_capacity(r);
    for (deg, vals) in &value_rows_mod {
        let mut row = Vec::with_capacity(r);
        for (k, &rep) in reps.iter().enumerate() {
            let o = g.element_order(rep) as u64;
            if o == 1 {
                row.push(CycloNumber::from_int(*deg as i64));
                continue;
            }
            let mut pow_classes = Vec::with_capacity(o as usize);
            let mut x = 0u32;
            for _ in 0..o {
                pow_classes.push(g.class_of(x));
                x = g.mul(x, rep);
            }
            let zo = pow_mod(z, e / o, p);
            let zo_inv = inv_mod(zo, p);
            let o_inv = inv_mod(o % p, p);
            let mut value = CycloNumber::zero();
            for l in 0..o {
                let mut acc = 0u64;
                for (t, &ct) in pow_classes.iter().enumerate() {
                    let tw = pow_mod(zo_inv, l * t as u64 % o, p);
                    acc = (acc + vals[ct] * tw) % p;
                }
                let m = acc * o_inv % p;
                if m > *deg {
                    return Err(Error::Verification(format!(
                        "eigenvalue multiplicity {m} exceeds the degree {deg}"
                    )));
                }
                if m > 0 {
                    value = value
                        + CycloNumber::from_int(m as i64) * CycloNumber::zeta(o as u32, l as i64);
                }
            }
            let _ = k;
            row.push(value);
        }
        rows.push(row);
    }

    rows.sort_by_key(|row| {
        (
            row[id_class].to_integer().unwrap(),
            row.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        )
    });

    // The lift is only trusted once the rows pass exact first orthogonality.
    for i in 0..r {
        for j in i..r {
            let mut acc = CycloNumber::zero();
            for k in 0..r {
                acc = acc
                    + rows[i][k].clone()
                        * rows[j][k].conj()
                        * CycloNumber::from_int(sizes[k] as i64);
            }
            let expect = if i == j {
                CycloNumber::from_int(n as i64)
            } else {
                CycloNumber::zero()
            };
            if acc != expect {
                return Err(Error::Verification(format!(
                    "character rows {i},{j} fail orthogonality"
                )));
            }
        }
    }
    Ok(rows)
}

/// Row-echelonized basis of a subspace of F_p^r, pivots normalized to 1.
struct Echelon {
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Echelon {
    fn full(r: usize) -> Echelon {
        let rows = (0..r)
            .map(|i| {
                let mut v = vec![0u64; r];
                v[i] = 1;
                v
            })
            .collect();
        Echelon {
            rows,
            pivots: (0..r).collect(),
        }
    }

    fn from_rows(mut rows: Vec<Vec<u64>>, p: u64) -> Echelon {
        let mut pivots = Vec::new();
        let mut rank = 0;
        let cols = rows.first().map_or(0, |v| v.len());
        for col in 0..cols {
            let Some(pr) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else {
                continue;
            };
            rows.swap(rank, pr);
            let s = inv_mod(rows[rank][col], p);
            for x in rows[rank].iter_mut() {
                *x = *x * s % p;
            }
            for i in 0..rows.len() {
                if i != rank && rows[i][col] != 0 {
                    let f = rows[i][col];
                    for c in 0..cols {
                        let sub = f * rows[rank][c] % p;
                        rows[i][c] = (rows[i][c] + p - sub) % p;
                    }
                }
            }
            pivots.push(col);
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        rows.truncate(rank);
        Echelon { rows, pivots }
    }

    /// Coordinates of v in this basis, or None if v is outside the span.
    fn coords(&self, v: &[u64], p: u64) -> Option<Vec<u64>> {
        let mut v = v.to_vec();
        let mut coords = vec![0u64; self.rows.len()];
        for (i, &pc) in self.pivots.iter().enumerate() {
            let c = v[pc];
            if c != 0 {
                coords[i] = c;
                for (vx, rx) in v.iter_mut().zip(&self.rows[i]) {
                    *vx = (*vx + p - c * rx % p) % p;
                }
            }
        }
        if v.iter().all(|&x| x == 0) {
            Some(coords)
        } else {
            None
        }
    }
}

/// Characteristic polynomial mod p by the trace recurrence; returns
/// coefficients leading-first, so out[0] = 1.
fn charpoly_mod(b: &[Vec<u64>], p: u64) -> Vec<u64> {
    let m = b.len();
    let mut mk = b.to_vec();
    let mut coeffs = vec![1u64];
    for k in 1..=m {
        let tr: u64 = (0..m).fold(0, |acc, i| (acc + mk[i][i]) % p);
        let ck = (p - tr % p) % p * inv_mod(k as u64 % p, p) % p;
        coeffs.push(ck);
        if k == m {
            break;
        }
        for (i, row) in mk.iter_mut().enumerate() {
            row[i] = (row[i] + ck) % p;
        }
        let mut nxt = vec![vec![0u64; m]; m];
        for i in 0..m {
            for t in 0..m {
                let bij = b[i][t];
                if bij == 0 {
                    continue;
                }
                for (nv, mv) in nxt[i].iter_mut().zip(&mk[t]) {
                    *nv = (*nv + bij * mv) % p;
                }
            }
        }
        mk = nxt;
    }
    coeffs
}

fn poly_eval_mod(coeffs: &[u64], x: u64, p: u64) -> u64 {
    coeffs.iter().fold(0u64, |acc, &c| (acc * x + c) % p)
}

/// Kernel basis (coordinate vectors) of a square matrix over F_p.
fn kernel_mod(mat: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let m = mat.len();
    let ech = Echelon::from_rows(mat.to_vec(), p);
    let mut is_pivot = vec![false; m];
    for &c in &ech.pivots {
        is_pivot[c] = true;
    }
    let mut out = Vec::new();
    for free in 0..m {
        if is_pivot[free] {
            continue;
        }
        let mut v = vec![0u64; m];
        v[free] = 1;
        for (i, &pc) in ech.pivots.iter().enumerate() {
            v[pc] = (p - ech.rows[i][free]) % p;
        }
        out.push(v);
    }
    out
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Smallest prime p = 1 (mod e) with p > 2*sqrt(order) and p not dividing
/// the group order.
fn pick_prime(e: u64, order: u64) -> Result<u64> {
    let floor = 2 * isqrt(order) + 1;
    let mut p = e + 1;
    while p < floor || !is_prime(p) || order % p == 0 {
        p += e;
        if p > 1 << 40 {
            return Err(Error::Verification("no workable prime found".into()));
        }
    }
    Ok(p)
}

fn primitive_root(p: u64) -> Result<u64> {
    let qs = distinct_prime_factors(p - 1);
    for g in 2..p {
        if qs.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1) {
            return Ok(g);
        }
    }
    Err(Error::Verification(format!("no primitive root mod {p}")))
}

// ---------------------------------------------------------------------------
// fake degrees

/// Graded multiplicities of each row in the coinvariant algebra:
/// prod_i (1 - x^{d_i}) * (1/|W|) sum_w chi(w) / det(1 - xw), evaluated as a
/// truncated power series classwise.  Coefficients must come out nonnegative
/// integers; anything else signals an arithmetic bug upstream.
pub fn fake_degree_engine(g: &CoxeterGroup, rows: &[Vec<CycloNumber>]) -> Result<Vec<QPoly>> {
    let nn = g.cox_type().num_reflections() as usize;
    let r = g.num_classes();
    let order = CoxeterGroup::order(g) as i64;

    let mut prod = vec![CycloNumber::zero(); nn + 1];
    prod[0] = CycloNumber::one();
    for d in g.cox_type().degrees() {
        let d = d as usize;
        for j in (d..=nn).rev() {
            let low = prod[j - d].clone();
            prod[j] = prod[j].clone() - low;
        }
    }

    // q_c = prod / det(1 - x w_c) mod x^{nn+1}, weighted by the class size.
    let mut weighted: Vec<Vec<CycloNumber>> = Vec::with_capacity(r);
    for c in 0..r {
        let det = g.det_one_minus_xw(g.class_rep(c));
        if det.coeff(0) != CycloNumber::one() {
            return Err(Error::Verification(
                "det(1 - xw) has nonunit constant term".into(),
            ));
        }
        let mut inv = vec![CycloNumber::zero(); nn + 1];
        inv[0] = CycloNumber::one();
        for j in 1..=nn {
            let mut acc = CycloNumber::zero();
            for t in 1..=j {
                acc = acc + det.coeff(t) * inv[j - t].clone();
            }
            inv[j] = -acc;
        }
        let size = CycloNumber::from_int(g.class_size(c) as i64);
        let q: Vec<CycloNumber> = (0..=nn)
            .map(|j| {
                let mut acc = CycloNumber::zero();
                for t in 0..=j {
                    acc = acc + prod[t].clone() * inv[j - t].clone();
                }
                acc * size.clone()
            })
            .collect();
        weighted.push(q);
    }

    let inv_order = CycloNumber::from_rational(Rational::new(BigInt::one(), BigInt::from(order)));
    rows.iter()
        .map(|row| {
            let mut acc = vec![CycloNumber::zero(); nn + 1];
            for (c, q) in weighted.iter().enumerate() {
                if row[c].is_zero() {
                    continue;
                }
                for (av, qv) in acc.iter_mut().zip(q) {
                    *av = av.clone() + row[c].clone() * qv.clone();
                }
            }
            let coeffs: Vec<Rational> = acc
                .into_iter()
                .map(|v| {
                    let v = v * inv_order.clone();
                    if !v.is_nonneg_integer() {
                        return Err(Error::Verification(format!(
                            "fake degree coefficient {v} is not a nonnegative integer"
                        )));
                    }
                    Ok(v.to_rational().unwrap())
                })
                .collect::<Result<_>>()?;
            Ok(QPoly::new(coeffs))
        })
        .collect()
}

/// Fake degrees in the table's row order (same data the table stores).
pub fn fake_degrees(g: &CoxeterGroup, table: &CharacterTable) -> Result<Vec<QPoly>> {
    fake_degree_engine(g, &table.rows)
}
