//! Partitions, bipartitions, and symbol combinatorics.
//!
//! This module carries the bookkeeping that the classical character
//! labellings run on: integer partitions and their transposes, the
//! statistics `d`, `e`, `f` on pairs of partitions, the "special"
//! conditions, two-row symbols with their family grouping, and the
//! counting function `mgamma_count`.

use std::collections::BTreeMap;
use std::fmt;

use crate::{Error, Result};

/// An integer partition: weakly decreasing positive parts.
///
/// Constructors sort and drop zeros, so two equal partitions always compare
/// equal structurally.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: impl Into<Vec<u32>>) -> Self {
        let mut parts = parts.into();
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// The `i`-th part, **1-indexed**, with implicit zeros past the end.
    pub fn part(&self, i: usize) -> u32 {
        if i == 0 {
            panic!("parts are 1-indexed");
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn transpose(&self) -> Partition {
        let cols = self.part(1) as usize;
        let parts = (1..=cols)
            .map(|j| self.parts.iter().take_while(|&&p| p as usize >= j).count() as u32)
            .collect();
        Partition { parts }
    }

    /// Whether `other` fits inside `self` row by row.
    pub fn contains(&self, other: &Partition) -> bool {
        (1..=other.num_parts()).all(|i| other.part(i) <= self.part(i))
    }

    /// Row-wise minimum: the diagram intersection.
    pub fn intersect(&self, other: &Partition) -> Partition {
        let n = self.num_parts().min(other.num_parts());
        Partition::new(
            (1..=n)
                .map(|i| self.part(i).min(other.part(i)))
                .collect::<Vec<_>>(),
        )
    }

    /// Number of columns of odd length.
    pub fn odd_columns(&self) -> usize {
        self.transpose()
            .parts
            .iter()
            .filter(|&&c| c % 2 == 1)
            .count()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All partitions of `n`, in descending lexicographic order.
pub fn partitions(n: u32) -> Vec<Partition> {
    fn rec(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        let mut p = max.min(rem);
        while p >= 1 {
            cur.push(p);
            rec(rem - p, p, cur, out);
            cur.pop();
            p -= 1;
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// All ordered pairs `(a, b)` with `|a| + |b| = n`, ordered by `|a|`
/// descending and then lexicographically within each block.
pub fn bipartitions(n: u32) -> Vec<(Partition, Partition)> {
    let mut out = Vec::new();
    for k in (0..=n).rev() {
        for a in partitions(k) {
            for b in partitions(n - k) {
                out.push((a.clone(), b));
            }
        }
    }
    out
}

/// Number of cells lying simultaneously at the end of a column of `a` and at
/// the end of a row of `b`; equivalently the number of pairs `(i, j)` with
/// `i = a'_j` and `j = b_i`.
pub fn d_stat(a: &Partition, b: &Partition) -> u32 {
    let at = a.transpose();
    (1..=b.num_parts())
        .filter(|&i| {
            let j = b.part(i) as usize;
            j >= 1 && at.part(j) == i as u32
        })
        .count() as u32
}

/// Number of connected components of the skew diagram `b \ a` (left-right
/// and up-down adjacency). Errors unless `a` fits inside `b`.
pub fn e_stat(a: &Partition, b: &Partition) -> Result<u32> {
    if !b.contains(a) {
        return Err(Error::InvalidParameter(format!(
            "skew diagram requires containment: {a} is not inside {b}"
        )));
    }
    // Collect skew cells and flood fill.
    let mut cells: Vec<(u32, u32)> = Vec::new();
    for i in 1..=b.num_parts() {
        for j in (a.part(i) + 1)..=b.part(i) {
            cells.push((i as u32, j));
        }
    }
    let mut seen = vec![false; cells.len()];
    let mut components = 0;
    for start in 0..cells.len() {
        if seen[start] {
            continue;
        }
        components += 1;
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(c) = stack.pop() {
            let (r, q) = cells[c];
            for (idx, &(r2, q2)) in cells.iter().enumerate() {
                if !seen[idx] && r.abs_diff(r2) + q.abs_diff(q2) == 1 {
                    seen[idx] = true;
                    stack.push(idx);
                }
            }
        }
    }
    Ok(components)
}

/// Number of rows where `a` and `b` differ.
pub fn f_stat(a: &Partition, b: &Partition) -> u32 {
    let n = a.num_parts().max(b.num_parts());
    (1..=n).filter(|&i| a.part(i) != b.part(i)).count() as u32
}

/// Whether the skew diagram `b \ a` contains a full 2x2 square.
/// Assumes `a` fits inside `b` when interpreted as a skew diagram.
pub fn skew_has_square(a: &Partition, b: &Partition) -> bool {
    // Rows i and i+1 share two consecutive columns exactly when
    // b_{i+1} >= a_i + 2.
    (1..=b.num_parts()).any(|i| b.part(i + 1) >= a.part(i) + 2)
}

/// The two classical flavours of two-row symbols.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum SymbolKind {
    /// Rows of lengths `m + 1` and `m`.
    BC,
    /// Rows of equal length `m`.
    D,
}

/// Whether the pair indexes a special character.
///
/// `BC`: `b_i <= a_i + 1` and `a'_i <= b'_i + 1` for all `i`.
/// `D`: one partition properly contains the other and the skew diagram has
/// no 2x2 square; an equal pair is special by convention (such pairs label
/// the split characters, which are always special).
pub fn is_special_bipartition(kind: SymbolKind, a: &Partition, b: &Partition) -> bool {
    match kind {
        SymbolKind::BC => {
            let rows = (1..=b.num_parts()).all(|i| b.part(i) <= a.part(i) + 1);
            let at = a.transpose();
            let bt = b.transpose();
            let cols = (1..=at.num_parts()).all(|i| at.part(i) <= bt.part(i) + 1);
            rows && cols
        }
        SymbolKind::D => {
            if a == b {
                return true;
            }
            (b.contains(a) && !skew_has_square(a, b)) || (a.contains(b) && !skew_has_square(b, a))
        }
    }
}

/// A two-row symbol: strictly increasing rows obtained from a pair of
/// partitions by staircase shifts.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Symbol {
    kind: SymbolKind,
    top: Vec<u32>,
    bottom: Vec<u32>,
}

/// Build the symbol of `(a, b)` at width `m`:
/// top row `t_i = a_{w-(i-1)} + (i-1)` where `w = m + 1` (BC) or `w = m` (D),
/// bottom row `u_i = b_{m-(i-1)} + (i-1)`.
pub fn symbol_of(kind: SymbolKind, a: &Partition, b: &Partition, m: usize) -> Result<Symbol> {
    let top_len = match kind {
        SymbolKind::BC => m + 1,
        SymbolKind::D => m,
    };
    if a.num_parts() > top_len || b.num_parts() > m {
        return Err(Error::InvalidParameter(format!(
            "symbol width {m} too small for ({a},{b})"
        )));
    }
    let top = (0..top_len)
        .map(|i| a.part(top_len - i) + i as u32)
        .collect::<Vec<_>>();
    let bottom = (0..m).map(|i| b.part(m - i) + i as u32).collect::<Vec<_>>();
    debug_assert!(top.windows(2).all(|w| w[0] < w[1]));
    debug_assert!(bottom.windows(2).all(|w| w[0] < w[1]));
    Ok(Symbol { kind, top, bottom })
}

impl Symbol {
    pub fn kind(&self) -> SymbolKind {
        self.kind
    }

    pub fn top(&self) -> &[u32] {
        &self.top
    }

    pub fn bottom(&self) -> &[u32] {
        &self.bottom
    }

    /// Difference of row lengths: 1 for BC symbols, 0 for D symbols.
    pub fn defect(&self) -> usize {
        self.top.len() - self.bottom.len()
    }
}

/// The sorted multiset of all entries of the symbol. Two characters lie in
/// the same family exactly when their symbols have equal keys.
pub fn family_key(sym: &Symbol) -> Vec<u32> {
    let mut key: Vec<u32> = sym.top.iter().chain(&sym.bottom).copied().collect();
    key.sort_unstable();
    key
}

/// The rank `k` such that the family of this symbol is parametrized by the
/// pairs-with-characters set of (Z/2)^k: counting the entries `a` that occur
/// exactly once in the key, `k = (a - 1)/2` for BC symbols and
/// `k = (a - 2)/2` (or 0 when every entry is repeated) for D symbols.
pub fn family_gamma_rank(sym: &Symbol) -> u32 {
    let key = family_key(sym);
    let mut counts: BTreeMap<u32, u32> = BTreeMap::new();
    for e in key {
        *counts.entry(e).or_insert(0) += 1;
    }
    let singles = counts.values().filter(|&&c| c == 1).count() as u32;
    match sym.kind {
        SymbolKind::BC => (singles - 1) / 2,
        SymbolKind::D => {
            if singles == 0 {
                0
            } else {
                (singles - 2) / 2
            }
        }
    }
}

/// Number of pairs `(x, s)` with `x` in the symmetric group S_n and `s` an
/// irreducible character of its centralizer, taken up to simultaneous
/// conjugation: the coefficient of `x^n` in `prod_k (1 - x^k)^{-sigma(k)}`
/// where `sigma` is the divisor-sum function.
pub fn mgamma_count(n: u32) -> u64 {
    let n = n as usize;
    let mut series = vec![0u128; n + 1];
    series[0] = 1;
    for k in 1..=n {
        let sigma: usize = (1..=k).filter(|d| k % d == 0).sum();
        for _ in 0..sigma {
            // Multiply by 1/(1 - x^k): prefix sums with stride k.
            for j in k..=n {
                series[j] += series[j - k];
            }
        }
    }
    series[n] as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }

    /// Count of cells in the intersection diagram that end both a column of
    /// `a` and a row of `b` — scans cells instead of part indices.
    fn d_by_cells(a: &Partition, b: &Partition) -> u32 {
        let inter = a.intersect(b);
        let at = a.transpose();
        let mut count = 0;
        for i in 1..=inter.num_parts() {
            for j in 1..=inter.part(i) as usize {
                if at.part(j) == i as u32 && b.part(i) == j as u32 {
                    count += 1;
                }
            }
        }
        count
    }

    /// Components of `b \ a` counted as the entries of the shifted
    /// `b`-sequence missing from the shifted `a`-sequence (valid when the
    /// skew has no 2x2 square).
    fn e_by_sequences(a: &Partition, b: &Partition) -> u32 {
        let m = b.size() as usize;
        let lam: Vec<u32> = (0..m).map(|i| a.part(m - i) + i as u32).collect();
        let mu: Vec<u32> = (0..m).map(|i| b.part(m - i) + i as u32).collect();
        mu.iter().filter(|v| !lam.contains(v)).count() as u32
    }

    /// Interleaving form of the special condition, from the staircase-shift
    /// sequences directly.
    fn special_by_interleaving(kind: SymbolKind, a: &Partition, b: &Partition) -> bool {
        let m = (a.size() + b.size()) as usize;
        match kind {
            SymbolKind::BC => {
                let lam: Vec<u32> = (0..=m).map(|i| a.part(m + 1 - i) + i as u32).collect();
                let mu: Vec<u32> = (0..m).map(|i| b.part(m - i) + i as u32).collect();
                (0..m).all(|i| lam[i] <= mu[i] && mu[i] <= lam[i + 1])
            }
            SymbolKind::D => {
                let lam: Vec<u32> = (0..m).map(|i| a.part(m - i) + i as u32).collect();
                let mu: Vec<u32> = (0..m).map(|i| b.part(m - i) + i as u32).collect();
                (0..m).all(|i| lam[i] <= mu[i] && (i + 1 == m || mu[i] <= lam[i + 1]))
                    || (0..m).all(|i| mu[i] <= lam[i] && (i + 1 == m || lam[i] <= mu[i + 1]))
            }
        }
    }

    /// Count partitions of `n` whose parts of size `k` carry one of
    /// `sigma(k)` labels, by direct enumeration of labeled multisets.
    fn mgamma_direct(n: u32) -> u64 {
        fn sigma(k: u32) -> u32 {
            (1..=k).filter(|d| k % d == 0).sum()
        }
        // Choose parts in decreasing (size, label) order.
        fn rec(rem: u32, max_size: u32, max_label: u32) -> u64 {
            if rem == 0 {
                return 1;
            }
            let mut total = 0;
            for size in (1..=max_size.min(rem)).rev() {
                let labels = if size == max_size {
                    max_label
                } else {
                    sigma(size)
                };
                for label in (1..=labels).rev() {
                    total += rec(rem - size, size, label);
                }
            }
            total
        }
        rec(n, n, sigma(n))
    }

    #[test]
    fn partition_basics() {
        let a = p(&[3, 1, 1]);
        assert_eq!(a.size(), 5);
        assert_eq!(a.transpose(), p(&[3, 1, 1]));
        assert_eq!(p(&[4, 2]).transpose(), p(&[2, 2, 1, 1]));
        for q in partitions(7) {
            assert_eq!(q.transpose().transpose(), q);
        }
        assert_eq!(p(&[2, 2]).odd_columns(), 0);
        assert_eq!(p(&[3, 2]).odd_columns(), 1);
        assert!(p(&[3, 2]).contains(&p(&[2, 2])));
        assert!(!p(&[3]).contains(&p(&[1, 1])));
        assert_eq!(p(&[3, 1]).intersect(&p(&[2, 2])), p(&[2, 1]));
        // Canonicalization: order and zeros don't matter.
        assert_eq!(Partition::new(vec![0, 1, 3, 0, 1]), p(&[3, 1, 1]));
        assert_eq!(p(&[3, 1]).to_string(), "[3,1]");
        let counts: Vec<usize> = (0..10).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, [1, 1, 2, 3, 5, 7, 11, 15, 22, 30]);
        assert_eq!(bipartitions(2).len(), 5);
        assert_eq!(bipartitions(4).len(), 20);
    }

    #[test]
    fn d_statistic() {
        assert_eq!(d_stat(&p(&[1]), &p(&[1])), 1);
        assert_eq!(d_stat(&p(&[2]), &Partition::empty()), 0);
        assert_eq!(d_stat(&p(&[2, 1]), &p(&[2, 1])), 2);
        // The index formula agrees with the cell-scan everywhere.
        for n in 0..=8 {
            for (a, b) in bipartitions(n) {
                assert_eq!(d_stat(&a, &b), d_by_cells(&a, &b), "({a},{b})");
            }
        }
    }

    #[test]
    fn e_and_f_statistics() {
        let b = p(&[7, 5, 2, 2]);
        let a = p(&[5, 4, 1]);
        assert_eq!(e_stat(&a, &b).unwrap(), 3);
        assert_eq!(f_stat(&a, &b), 4);
        // Adding one cell.
        assert_eq!(e_stat(&p(&[2, 1]), &p(&[2, 2])).unwrap(), 1);
        assert_eq!(f_stat(&p(&[2, 1]), &p(&[2, 2])), 1);
        // A 2x2 block is one component.
        assert_eq!(e_stat(&Partition::empty(), &p(&[2, 2])).unwrap(), 1);
        assert!(skew_has_square(&Partition::empty(), &p(&[2, 2])));
        assert!(!skew_has_square(&a, &b));
        assert!(e_stat(&p(&[3]), &p(&[2, 2])).is_err());
    }

    #[test]
    fn e_matches_sequence_count_without_squares() {
        for n in 0..=9 {
            for b in partitions(n) {
                for k in 0..n {
                    for a in partitions(k) {
                        if b.contains(&a) && !skew_has_square(&a, &b) {
                            assert_eq!(
                                e_stat(&a, &b).unwrap(),
                                e_by_sequences(&a, &b),
                                "({a},{b})"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn special_conditions() {
        use SymbolKind::*;
        assert!(is_special_bipartition(BC, &p(&[1]), &p(&[1])));
        assert!(!is_special_bipartition(BC, &Partition::empty(), &p(&[2])));
        assert!(is_special_bipartition(BC, &p(&[2]), &Partition::empty()));
        assert!(is_special_bipartition(D, &p(&[1]), &p(&[2, 1])));
        assert!(!is_special_bipartition(D, &Partition::empty(), &p(&[2, 2])));
        // The split-character labels.
        assert!(is_special_bipartition(D, &p(&[2]), &p(&[2])));
        // Row/column inequalities match the interleaving form.
        for n in 0..=10 {
            for (a, b) in bipartitions(n) {
                assert_eq!(
                    is_special_bipartition(BC, &a, &b),
                    special_by_interleaving(BC, &a, &b),
                    "BC ({a},{b})"
                );
                if a != b {
                    assert_eq!(
                        is_special_bipartition(D, &a, &b),
                        special_by_interleaving(D, &a, &b),
                        "D ({a},{b})"
                    );
                }
            }
        }
    }

    #[test]
    fn symbols_and_families() {
        use SymbolKind::*;
        let s = symbol_of(BC, &p(&[1]), &p(&[1]), 2).unwrap();
        assert_eq!(s.top(), &[0, 1, 3]);
        assert_eq!(s.bottom(), &[0, 2]);
        assert_eq!(s.defect(), 1);
        assert_eq!(family_key(&s), vec![0, 0, 1, 2, 3]);
        assert_eq!(family_gamma_rank(&s), 1);
        assert!(symbol_of(BC, &p(&[1, 1, 1]), &Partition::empty(), 1).is_err());

        // Group the five pairs for n = 2 by key: one triple plus two
        // singletons.
        let mut groups: BTreeMap<Vec<u32>, Vec<(Partition, Partition)>> = BTreeMap::new();
        for (a, b) in bipartitions(2) {
            let key = family_key(&symbol_of(BC, &a, &b, 2).unwrap());
            groups.entry(key).or_default().push((a, b));
        }
        let mut sizes: Vec<usize> = groups.values().map(|v| v.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, [1, 1, 3]);
        let triple = groups.values().find(|v| v.len() == 3).unwrap();
        assert!(triple.contains(&(p(&[1]), p(&[1]))));
        assert!(triple.contains(&(p(&[1, 1]), Partition::empty())));
        assert!(triple.contains(&(Partition::empty(), p(&[2]))));
        let single = symbol_of(BC, &p(&[2]), &Partition::empty(), 2).unwrap();
        assert_eq!(family_gamma_rank(&single), 0);

        // Equal-length rows: the degenerate pair has rank 0, and the
        // nondegenerate grouping for n = 4 has a rank-1 family of three.
        let degenerate = symbol_of(D, &p(&[1]), &p(&[1]), 1).unwrap();
        assert_eq!(degenerate.defect(), 0);
        assert_eq!(family_gamma_rank(&degenerate), 0);
        let mut dgroups: BTreeMap<Vec<u32>, Vec<(Partition, Partition)>> = BTreeMap::new();
        for (a, b) in bipartitions(4) {
            if a < b {
                let key = family_key(&symbol_of(D, &a, &b, 4).unwrap());
                dgroups.entry(key).or_default().push((a, b));
            }
        }
        let big: Vec<_> = dgroups.values().filter(|v| v.len() > 1).collect();
        assert_eq!(big.len(), 1);
        assert_eq!(big[0].len(), 3);
        for (a, b) in big[0] {
            assert_eq!(family_gamma_rank(&symbol_of(D, a, b, 4).unwrap()), 1);
        }
        // Rank 0 throughout n = 3 (where the group is a symmetric group in
        // disguise, so every family must be a singleton).
        for (a, b) in bipartitions(3) {
            if a < b {
                assert_eq!(family_gamma_rank(&symbol_of(D, &a, &b, 3).unwrap()), 0);
            }
        }
    }

    #[test]
    fn d_equals_gamma_rank_for_specials() {
        for n in 0..=8 {
            for (a, b) in bipartitions(n) {
                if is_special_bipartition(SymbolKind::BC, &a, &b) {
                    let sym = symbol_of(SymbolKind::BC, &a, &b, n as usize).unwrap();
                    assert_eq!(d_stat(&a, &b), family_gamma_rank(&sym), "({a},{b})");
                }
            }
        }
    }

    #[test]
    fn mgamma_counts() {
        let values: Vec<u64> = (1..=8).map(mgamma_count).collect();
        assert_eq!(values, [1, 4, 8, 21, 39, 92, 170, 360]);
        // Direct enumeration of labeled partitions agrees.
        for n in 1..=6 {
            assert_eq!(mgamma_count(n), mgamma_direct(n), "n={n}");
        }
        // n = 2 by hand: the two centralizers are both of order 2.
        assert_eq!(mgamma_count(2), 4);
    }
}
