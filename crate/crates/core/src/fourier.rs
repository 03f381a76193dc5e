//! Fourier transform matrices attached to the families of Uch(W), the
//! fusion-datum axioms they satisfy, and the solver for the extended
//! Frobenius-Schur indicator.
//!
//! Three constructions cover every family with an intrinsic matrix: the
//! pairing on M(Gamma) for a small group Gamma, the dihedral transform D_m
//! on the index set X(m), and a fixed 4x4 datum shared by the exceptional
//! families.  Classical non-singleton families keep their matrix implicit
//! (only row sums of M over the (Z/2)^k pairing are ever needed), and the
//! 74-element H4 family uses whatever matrix was ingested.

use num::{One, Signed, Zero};

use crate::chartab::GroupTable;
use crate::coxgroup::{CoxType, CoxeterGroup};
use crate::cyclo::{CycloNumber, Rational};
use crate::invmod;
use crate::mat::Mat;
use crate::uch::{dihedral_x, GammaKind, MGammaSet, UchLabel, UchSet, UnipotentCharacter, XSlot};
use crate::{CPoly, Error, Result};

// ---------------------------------------------------------------------------
// matrices

/// A real symmetric involutory matrix indexed by a family (or by M(Gamma)).
/// The constructor enforces all three properties exactly.
#[derive(Clone, Debug)]
pub struct FourierMatrix {
    index: Vec<String>,
    mat: Mat<CycloNumber>,
}

impl FourierMatrix {
    pub fn new(index: Vec<String>, mat: Mat<CycloNumber>) -> Result<Self> {
        let n = index.len();
        if mat.nrows() != n || mat.ncols() != n {
            return Err(Error::InvalidParameter(format!(
                "matrix is {}x{} but the index set has {n} elements",
                mat.nrows(),
                mat.ncols()
            )));
        }
        for i in 0..n {
            for j in i..n {
                if !mat[(i, j)].is_real() {
                    return Err(Error::Verification(format!("entry ({i},{j}) is not real")));
                }
                if mat[(i, j)] != mat[(j, i)] {
                    return Err(Error::Verification(format!(
                        "matrix is not symmetric at ({i},{j})"
                    )));
                }
            }
        }
        if n > 0 && &mat * &mat != Mat::identity(n) {
            return Err(Error::Verification("matrix does not square to 1".into()));
        }
        Ok(FourierMatrix { index, mat })
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }
    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }
    pub fn index(&self) -> &[String] {
        &self.index
    }
    pub fn label(&self, i: usize) -> &str {
        &self.index[i]
    }
    pub fn mat(&self) -> &Mat<CycloNumber> {
        &self.mat
    }
    pub fn entry(&self, i: usize, j: usize) -> &CycloNumber {
        &self.mat[(i, j)]
    }
}

/// The tuple (X, x0, Delta, M, F) subject to the four fusion axioms.
#[derive(Clone, Debug)]
pub struct FusionDatum {
    pub index: Vec<String>,
    pub x0: usize,
    /// Involutory permutation of the index set.
    pub delta: Vec<usize>,
    pub m: FourierMatrix,
    /// Diagonal of roots of unity.
    pub f: Vec<CycloNumber>,
}

/// Outcome of checking one fusion datum, one flag per axiom.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct AxiomReport {
    /// M = Delta M Delta and F^-1 = Delta F Delta.
    pub commutability: bool,
    /// M[x, x0] > 0 for all x, and F[x0] = 1.
    pub positivity: bool,
    /// M^2 = (F Delta M)^3 = 1.
    pub modularity: bool,
    /// All structure constants sum_w M[x,w] M[y,w] M[z,w] / M[x0,w] are
    /// nonnegative integers.
    pub integrality: bool,
}

impl AxiomReport {
    pub fn all(&self) -> bool {
        self.commutability && self.positivity && self.modularity && self.integrality
    }
}

/// The indicator values, one per Uch member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsilonFunction {
    values: Vec<i8>,
}

impl EpsilonFunction {
    pub fn value(&self, i: usize) -> i8 {
        self.values[i]
    }
    pub fn values(&self) -> &[i8] {
        &self.values
    }
    pub fn len(&self) -> usize {
        self.values.len()
    }
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

// ---------------------------------------------------------------------------
// sign of a real cyclotomic number

/// Exact sign in the standard embedding zeta_n = exp(2 pi i / n): -1, 0, 1.
///
/// Rational and Q(sqrt5) values are decided exactly; everything else falls
/// back to a guarded floating evaluation that panics rather than guess when
/// the value is within 1e-9 of zero (desk-scale entries clear the band by
/// many orders of magnitude).
fn sign_real(v: &CycloNumber) -> i32 {
    if v.is_zero() {
        return 0;
    }
    if let Some(r) = v.to_rational() {
        return if r.is_positive() { 1 } else { -1 };
    }
    if let Some(g) = v.to_golden() {
        return g.sign();
    }
    assert!(v.is_real(), "sign asked of a non-real value");
    let z = v.to_complex_primary();
    assert!(z.im.abs() < 1e-9, "real embedding expected, got {z}");
    assert!(
        z.re.abs() > 1e-9,
        "sign determination too close to zero: {z}"
    );
    if z.re > 0.0 {
        1
    } else {
        -1
    }
}

// ---------------------------------------------------------------------------
// the pairing on M(Gamma)

/// The symmetric pairing matrix of M(Gamma):
/// {(x,sigma),(y,tau)} = (1/|C(x)||C(y)|) sum over g with x(gyg^-1)=(gyg^-1)x
/// of sigma(gyg^-1) tau(g^-1 x^-1 g).  For abelian Gamma each entry reduces
/// to sigma(y) tau(x^-1) / |Gamma|.
pub fn mgamma_matrix(s: &MGammaSet) -> Result<FourierMatrix> {
    let n = s.len();
    let gamma = s.gamma();
    let order = gamma.order() as u32;
    let mut mat = Mat::zero(n, n);
    for i in 0..n {
        for j in i..n {
            let x = s.member(i).x;
            let y = s.member(j).x;
            let xinv = gamma.inv(x);
            let mut terms = Vec::new();
            for g in 0..order {
                let ginv = gamma.inv(g);
                let ycnj = gamma.mul(gamma.mul(g, y), ginv);
                if gamma.mul(x, ycnj) != gamma.mul(ycnj, x) {
                    continue;
                }
                let xcnj = gamma.mul(gamma.mul(ginv, xinv), g);
                terms.push(s.value(i, ycnj)? * s.value(j, xcnj)?);
            }
            let denom = (s.cent_order(i) * s.cent_order(j)) as i64;
            let e = CycloNumber::sum(terms) / CycloNumber::from_int(denom);
            mat[(i, j)] = e.clone();
            mat[(j, i)] = e;
        }
    }
    let index = s
        .members()
        .iter()
        .map(|m| format!("({},{})", m.x, m.sigma))
        .collect();
    FourierMatrix::new(index, mat)
}

/// The fusion datum carried by M(Gamma): base point (1, trivial), the
/// character-conjugation involution, and the diagonal of central character
/// values sigma(x)/sigma(1).
pub fn mgamma_datum(s: &MGammaSet) -> Result<FusionDatum> {
    let m = mgamma_matrix(s)?;
    let x0 = s
        .members()
        .iter()
        .position(|e| e.x == 0 && e.sigma == 0)
        .ok_or_else(|| Error::Verification("missing base pair (1, trivial)".into()))?;
    let delta = (0..s.len())
        .map(|i| s.conj_member(i))
        .collect::<Result<Vec<_>>>()?;
    let f = (0..s.len())
        .map(|i| s.eigenvalue(i))
        .collect::<Result<Vec<_>>>()?;
    Ok(FusionDatum {
        index: m.index().to_vec(),
        x0,
        delta,
        m,
        f,
    })
}

// ---------------------------------------------------------------------------
// the dihedral transform

fn xslot_label(s: XSlot, m: u32) -> String {
    match s {
        XSlot::Pair(i, j) => format!("({i},{j})"),
        XSlot::Prime(1) => format!("(0,{})'", m / 2),
        XSlot::Prime(_) => format!("(0,{})''", m / 2),
    }
}

fn dihedral_entry(m: u32, a: XSlot, b: XSlot) -> CycloNumber {
    let mm = m as i64;
    let rat = |p: i64, q: i64| CycloNumber::from_rational(Rational::new(p.into(), q.into()));
    let sgn = |t: u32| if t % 2 == 0 { 1i64 } else { -1 };
    match (a, b) {
        (XSlot::Pair(i, j), XSlot::Pair(k, l)) => {
            let (i, j, k, l) = (i as i64, j as i64, k as i64, l as i64);
            let z = |e: i64| CycloNumber::zeta(m, e);
            (z(j * k - i * l) + z(i * l - j * k) - z(j * l - i * k) - z(i * k - j * l))
                / CycloNumber::from_int(mm)
        }
        (XSlot::Pair(i, j), XSlot::Prime(_)) | (XSlot::Prime(_), XSlot::Pair(i, j)) => {
            rat(sgn(i) - sgn(j), mm)
        }
        (XSlot::Prime(p), XSlot::Prime(q)) => {
            let base = rat(1 - sgn(m / 2), 2 * mm);
            if p == q {
                base + rat(1, 2)
            } else {
                base - rat(1, 2)
            }
        }
    }
}

/// The dihedral Fourier transform on the index set X(m) of
/// [`dihedral_x`], in that order.
pub fn dihedral_matrix(m: u32) -> Result<FourierMatrix> {
    if m < 3 {
        return Err(Error::InvalidParameter(format!(
            "dihedral transform needs m >= 3, got {m}"
        )));
    }
    let slots = dihedral_x(m);
    let n = slots.len();
    let mut mat = Mat::zero(n, n);
    for i in 0..n {
        for j in i..n {
            let e = dihedral_entry(m, slots[i], slots[j]);
            mat[(i, j)] = e.clone();
            mat[(j, i)] = e;
        }
    }
    let index = slots.iter().map(|&s| xslot_label(s, m)).collect();
    FourierMatrix::new(index, mat)
}

// ---------------------------------------------------------------------------
// the exceptional 4-point datum

/// The fixed datum shared by the exceptional families: the M(S2) pairing
/// matrix, the involution swapping the last two points, and eigenvalues
/// (1, 1, i, -i).
pub fn exceptional_datum() -> FusionDatum {
    let half = CycloNumber::from_rational(Rational::new(1.into(), 2.into()));
    let signs = [[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, 1, -1], [1, -1, -1, 1]];
    let mat = Mat::from_fn(4, 4, |i, j| {
        half.clone() * CycloNumber::from_int(signs[i][j])
    });
    let index: Vec<String> = ["(1,1)", "(1,sgn)", "(s,1)", "(s,sgn)"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let m = FourierMatrix::new(index.clone(), mat).expect("fixed matrix is valid");
    FusionDatum {
        index,
        x0: 0,
        delta: vec![0, 1, 3, 2],
        m,
        f: vec![
            CycloNumber::one(),
            CycloNumber::one(),
            CycloNumber::zeta(4, 1),
            CycloNumber::zeta(4, 3),
        ],
    }
}

// ---------------------------------------------------------------------------
// assembly over Uch(W)

/// Per-family Fourier blocks of one Uch set.  A block is `None` when no
/// matrix is available: classical non-singleton families (whose pairing with
/// M((Z/2)^k) is never materialized) and the 74-element family before its
/// data is attached.
pub struct FourierAssembly {
    blocks: Vec<Option<FourierMatrix>>,
}

impl FourierAssembly {
    pub fn block(&self, family: usize) -> Option<&FourierMatrix> {
        self.blocks[family].as_ref()
    }
    pub fn blocks(&self) -> &[Option<FourierMatrix>] {
        &self.blocks
    }
    pub fn missing(&self) -> Vec<usize> {
        self.blocks
            .iter()
            .enumerate()
            .filter_map(|(i, b)| b.is_none().then_some(i))
            .collect()
    }

    /// The block-diagonal matrix over the whole set, in member order.
    /// Errors if any family block is missing.
    pub fn full_matrix(&self, u: &UchSet) -> Result<Mat<CycloNumber>> {
        let n = u.len();
        let mut full = Mat::zero(n, n);
        for (fi, fam) in u.families().iter().enumerate() {
            let block = self.blocks[fi]
                .as_ref()
                .ok_or_else(|| Error::MissingData(format!("family {fi} has no Fourier block")))?;
            for (a, &i) in fam.members.iter().enumerate() {
                for (b, &j) in fam.members.iter().enumerate() {
                    full[(i, j)] = block.entry(a, b).clone();
                }
            }
        }
        Ok(full)
    }
}

/// Attach the intrinsic matrix to each family: 1x1 identity for singletons,
/// the dihedral transform for X(m)-indexed families, the fixed 4-point
/// matrix for exceptional ones, and the ingested matrix for the 74-element
/// family.  Families without an intrinsic matrix yield `None` when
/// `allow_missing` is set and an error otherwise.
pub fn assemble_fourier(u: &UchSet, allow_missing: bool) -> Result<FourierAssembly> {
    let mut blocks = Vec::with_capacity(u.families().len());
    for fam in u.families() {
        let block = match fam.gamma {
            GammaKind::Trivial => {
                let label = u.member(fam.members[0]).label.to_string();
                Some(FourierMatrix::new(vec![label], Mat::identity(1))?)
            }
            GammaKind::DihedralX(m) => {
                let d = dihedral_matrix(m)?;
                if d.len() != fam.members.len() {
                    return Err(Error::Verification(format!(
                        "family of {} members against an index set of {}",
                        fam.members.len(),
                        d.len()
                    )));
                }
                Some(d)
            }
            GammaKind::SymmetricPair => Some(exceptional_datum().m),
            GammaKind::Elementary(_) => None,
            GammaKind::Big74 => match u.big_family_matrix() {
                Some(mat) => {
                    let index = fam
                        .members
                        .iter()
                        .map(|&i| u.member(i).label.to_string())
                        .collect();
                    Some(FourierMatrix::new(index, mat.clone())?)
                }
                None => None,
            },
        };
        blocks.push(block);
    }
    if !allow_missing {
        let missing: Vec<usize> = blocks
            .iter()
            .enumerate()
            .filter_map(|(i, b)| b.is_none().then_some(i))
            .collect();
        if !missing.is_empty() {
            return Err(Error::MissingData(format!(
                "no Fourier block for families {missing:?}"
            )));
        }
    }
    Ok(FourierAssembly { blocks })
}

/// The fusion datum of one family: base point at its special member, the
/// eigenvalue-conjugating involution restricted to the family, the family's
/// block, and the diagonal of Frobenius eigenvalues.
pub fn family_datum(u: &UchSet, family: usize, block: &FourierMatrix) -> Result<FusionDatum> {
    let fam = &u.families()[family];
    if block.len() != fam.members.len() {
        return Err(Error::InvalidParameter(
            "block does not match the family size".into(),
        ));
    }
    let d = u.delta_involution()?;
    let local_of: std::collections::HashMap<usize, usize> = fam
        .members
        .iter()
        .enumerate()
        .map(|(l, &i)| (i, l))
        .collect();
    let delta = fam
        .members
        .iter()
        .map(|&i| {
            local_of
                .get(&d[i])
                .copied()
                .ok_or_else(|| Error::Verification("involution leaves the family".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let x0 = local_of[&fam.special];
    let index = fam
        .members
        .iter()
        .map(|&i| u.member(i).label.to_string())
        .collect();
    let f = fam
        .members
        .iter()
        .map(|&i| u.member(i).eigenvalue.clone())
        .collect();
    Ok(FusionDatum {
        index,
        x0,
        delta,
        m: block.clone(),
        f,
    })
}

// ---------------------------------------------------------------------------
// axiom verification

/// Check the four fusion axioms exactly.  A zero entry in the base row makes
/// the structure constants undefined; this is reported as a positivity
/// failure and integrality is not attempted.
pub fn verify_fusion_datum(fd: &FusionDatum) -> AxiomReport {
    let n = fd.index.len();
    let m = fd.m.mat();
    let d = &fd.delta;

    let mut commutability = true;
    for x in 0..n {
        if fd.f[d[x]].clone() * fd.f[x].clone() != CycloNumber::one() {
            commutability = false;
        }
        for y in 0..n {
            if m[(d[x], d[y])] != m[(x, y)] {
                commutability = false;
            }
        }
    }

    let mut positivity = fd.f[fd.x0].is_one();
    let mut base_row_nonzero = true;
    for x in 0..n {
        let e = &m[(x, fd.x0)];
        if e.is_zero() {
            base_row_nonzero = false;
            positivity = false;
        } else if sign_real(e) <= 0 {
            positivity = false;
        }
    }

    let mut modularity = &(m * m) == &Mat::identity(n);
    let fdm = Mat::from_fn(n, n, |x, y| fd.f[x].clone() * m[(d[x], y)].clone());
    let cube = &(&fdm * &fdm) * &fdm;
    if cube != Mat::identity(n) {
        modularity = false;
    }

    let mut integrality = base_row_nonzero;
    if base_row_nonzero {
        let inv_base: Vec<CycloNumber> = (0..n)
            .map(|w| m[(fd.x0, w)].inv().expect("nonzero entry"))
            .collect();
        'outer: for x in 0..n {
            for y in x..n {
                let pair: Vec<CycloNumber> = (0..n)
                    .map(|w| m[(x, w)].clone() * m[(y, w)].clone() * inv_base[w].clone())
                    .collect();
                for z in y..n {
                    let c = CycloNumber::sum((0..n).map(|w| pair[w].clone() * m[(z, w)].clone()));
                    if !c.is_nonneg_integer() {
                        integrality = false;
                        break 'outer;
                    }
                }
            }
        }
    }

    AxiomReport {
        commutability,
        positivity,
        modularity,
        integrality,
    }
}

// ---------------------------------------------------------------------------
// the indicator

/// Multiplicities of the table's irreducibles in the involution character,
/// in row order.
pub fn chi_w_multiplicities(u: &UchSet) -> Result<Vec<u64>> {
    let g = CoxeterGroup::shared(u.typ())?;
    let module = invmod::build_rho(&g, Rational::zero());
    invmod::decompose(&invmod::character_of(&module), u.table())
}

/// Whether a member may carry a nonzero indicator value: the members fixed
/// by the eigenvalue-conjugating involution.  For ingested members the test
/// is realness of the eigenvalue.
fn epsilon_support(typ: CoxType, mem: &UnipotentCharacter) -> bool {
    match &mem.label {
        UchLabel::Irr(_) => true,
        UchLabel::Dihedral(_, j) => matches!(typ, CoxType::I2(m) if 2 * j == m),
        UchLabel::Formal(_, _) => false,
        UchLabel::Named(_) => mem.eigenvalue.is_real(),
    }
}

/// All ways to flip a subset of the supported members from +1 to -1 so that
/// the base row of the block sums to the target, reported as flip masks over
/// `entries`; stops once two are found.  `entries` holds the base-row values
/// at the supported columns.
fn sign_solutions(entries: &[CycloNumber], target: i64) -> Result<Vec<Vec<bool>>> {
    let base = CycloNumber::sum(entries.iter().cloned());
    // flipping a subset S changes the sum by -2 sum(S); solutions are the
    // subsets with sum (base - target) / 2
    let need = (base - CycloNumber::from_int(target)) / CycloNumber::from_int(2);
    let all_positive = entries.iter().all(|e| sign_real(e) > 0);
    let mut found: Vec<Vec<bool>> = Vec::new();
    let mut mask = vec![false; entries.len()];
    if all_positive {
        // positive entries make the subset sum monotone, so the search is
        // pruned exactly
        let mut suffix = vec![CycloNumber::zero(); entries.len() + 1];
        for i in (0..entries.len()).rev() {
            suffix[i] = suffix[i + 1].clone() + entries[i].clone();
        }
        fn dfs(
            entries: &[CycloNumber],
            suffix: &[CycloNumber],
            idx: usize,
            left: CycloNumber,
            mask: &mut Vec<bool>,
            found: &mut Vec<Vec<bool>>,
        ) {
            if found.len() >= 2 {
                return;
            }
            if left.is_zero() {
                found.push(mask.clone());
                return;
            }
            if idx == entries.len()
                || sign_real(&left) < 0
                || sign_real(&(left.clone() - suffix[idx].clone())) > 0
            {
                return;
            }
            mask[idx] = true;
            dfs(
                entries,
                suffix,
                idx + 1,
                left.clone() - entries[idx].clone(),
                mask,
                found,
            );
            mask[idx] = false;
            dfs(entries, suffix, idx + 1, left, mask, found);
        }
        dfs(entries, &suffix, 0, need, &mut mask, &mut found);
    } else {
        if entries.len() > 20 {
            return Err(Error::Verification(format!(
                "sign search over {} mixed-sign members is out of reach",
                entries.len()
            )));
        }
        fn dfs(
            entries: &[CycloNumber],
            idx: usize,
            acc: CycloNumber,
            need: &CycloNumber,
            mask: &mut Vec<bool>,
            found: &mut Vec<Vec<bool>>,
        ) {
            if found.len() >= 2 {
                return;
            }
            if idx == entries.len() {
                if &acc == need {
                    found.push(mask.clone());
                }
                return;
            }
            mask[idx] = true;
            dfs(
                entries,
                idx + 1,
                acc.clone() + entries[idx].clone(),
                need,
                mask,
                found,
            );
            mask[idx] = false;
            dfs(entries, idx + 1, acc, need, mask, found);
        }
        dfs(
            entries,
            0,
            CycloNumber::zero(),
            &need,
            &mut mask,
            &mut found,
        );
    }
    Ok(found)
}

/// Solve for the unique function with values in {-1, 0, 1} which vanishes
/// exactly off the conjugation-fixed members and whose image under the
/// Fourier matrix meets the involution-character multiplicity at every
/// special member.  The constraint decouples over families; a family whose
/// block is missing is handled by the (Z/2)^k row-sum law when classical and
/// is an error otherwise.
pub fn solve_epsilon(u: &UchSet, asm: &FourierAssembly, chiw: &[u64]) -> Result<EpsilonFunction> {
    if chiw.len() != u.num_irr() {
        return Err(Error::InvalidParameter(
            "multiplicity vector does not match the table".into(),
        ));
    }
    let typ = u.typ();
    let mut values = vec![0i8; u.len()];
    for (fi, fam) in u.families().iter().enumerate() {
        let sp_row = u
            .member(fam.special)
            .irr
            .ok_or_else(|| Error::Verification("special member outside Irr(W)".into()))?;
        let target = chiw[sp_row];
        match asm.block(fi) {
            Some(block) => {
                let supp: Vec<usize> = (0..fam.members.len())
                    .filter(|&l| epsilon_support(typ, u.member(fam.members[l])))
                    .collect();
                if supp.len() > 26 {
                    return Err(Error::Verification(format!(
                        "family {fi}: sign search over {} members is out of reach",
                        supp.len()
                    )));
                }
                let x0 = fam
                    .members
                    .iter()
                    .position(|&i| i == fam.special)
                    .expect("special is a member");
                let entries: Vec<CycloNumber> =
                    supp.iter().map(|&l| block.entry(x0, l).clone()).collect();
                let sols = sign_solutions(&entries, target as i64)?;
                match sols.len() {
                    0 => {
                        return Err(Error::Verification(format!(
                            "family {fi}: no sign pattern reaches multiplicity {target}"
                        )))
                    }
                    1 => {
                        for (&l, &flip) in supp.iter().zip(&sols[0]) {
                            values[fam.members[l]] = if flip { -1 } else { 1 };
                        }
                    }
                    _ => {
                        return Err(Error::Verification(format!(
                            "family {fi}: several sign patterns reach multiplicity {target}"
                        )))
                    }
                }
            }
            None => match fam.gamma {
                GammaKind::Elementary(k) => {
                    // the all-ones function on the full index set has row sum
                    // |Gamma| at the base pair and 0 elsewhere, so the only
                    // checkable constraints are the multiplicities themselves
                    if target != 1u64 << k {
                        return Err(Error::Verification(format!(
                            "family {fi}: special multiplicity {target} instead of {}",
                            1u64 << k
                        )));
                    }
                    for &mi in &fam.members {
                        let r = u.member(mi).irr.expect("classical members are in Irr(W)");
                        if mi != fam.special && chiw[r] != 0 {
                            return Err(Error::Verification(format!(
                                "family {fi}: nonzero multiplicity off the special member"
                            )));
                        }
                        values[mi] = 1;
                    }
                }
                _ => {
                    return Err(Error::MissingData(format!(
                        "family {fi} has no Fourier block to solve against"
                    )))
                }
            },
        }
    }
    Ok(EpsilonFunction { values })
}

/// The image of the indicator under the block-diagonal Fourier matrix, per
/// member.  Classical blockless families use the row-sum law (2^k at the
/// special member, 0 elsewhere), which requires the indicator to be 1 on
/// their members.
pub fn m_epsilon(
    u: &UchSet,
    asm: &FourierAssembly,
    eps: &EpsilonFunction,
) -> Result<Vec<CycloNumber>> {
    if eps.len() != u.len() {
        return Err(Error::InvalidParameter(
            "indicator does not match the set".into(),
        ));
    }
    let mut out = vec![CycloNumber::zero(); u.len()];
    for (fi, fam) in u.families().iter().enumerate() {
        match asm.block(fi) {
            Some(block) => {
                for (a, &i) in fam.members.iter().enumerate() {
                    out[i] = CycloNumber::sum(fam.members.iter().enumerate().map(|(b, &j)| {
                        block.entry(a, b).clone() * CycloNumber::from_int(eps.value(j) as i64)
                    }));
                }
            }
            None => match fam.gamma {
                GammaKind::Elementary(k) => {
                    for &i in &fam.members {
                        if eps.value(i) != 1 {
                            return Err(Error::Verification(
                                "row-sum law needs the all-ones indicator".into(),
                            ));
                        }
                        out[i] = if i == fam.special {
                            CycloNumber::from_int(1 << k)
                        } else {
                            CycloNumber::zero()
                        };
                    }
                }
                _ => {
                    return Err(Error::MissingData(format!(
                        "family {fi} has no Fourier block"
                    )))
                }
            },
        }
    }
    Ok(out)
}

/// Check the full consequence of the indicator: its Fourier image is a
/// nonnegative integer everywhere, matches the involution-character
/// multiplicity at every member of Irr(W), and vanishes off Irr(W) except
/// for at most one member, which only H4 admits.
pub fn verify_all_note(
    u: &UchSet,
    asm: &FourierAssembly,
    eps: &EpsilonFunction,
    chiw: &[u64],
) -> Result<()> {
    let v = m_epsilon(u, asm, eps)?;
    let mut outside = Vec::new();
    for (i, mem) in u.members().iter().enumerate() {
        if !v[i].is_nonneg_integer() {
            return Err(Error::Verification(format!(
                "transform at {} is not a nonnegative integer",
                mem.label
            )));
        }
        match mem.irr {
            Some(r) => {
                if v[i] != CycloNumber::from_int(chiw[r] as i64) {
                    return Err(Error::Verification(format!(
                        "transform at {} is {} but the multiplicity is {}",
                        mem.label, v[i], chiw[r]
                    )));
                }
            }
            None => {
                if !v[i].is_zero() {
                    outside.push(i);
                }
            }
        }
    }
    let allowed = usize::from(u.typ() == CoxType::H4);
    if outside.len() > allowed {
        return Err(Error::Verification(format!(
            "transform is nonzero at {} members outside Irr(W)",
            outside.len()
        )));
    }
    Ok(())
}

/// Dihedral-only identity: the full Fourier matrix composed with the
/// fake-degree reversing involution carries the fake-degree vector to the
/// generic-degree vector, as exact polynomials.
pub fn verify_p1_i2(u: &UchSet, asm: &FourierAssembly) -> Result<()> {
    if !matches!(u.typ(), CoxType::I2(_)) {
        return Err(Error::InvalidParameter(format!(
            "{} is not dihedral",
            u.typ()
        )));
    }
    let j = u.j_involution()?;
    let full = asm.full_matrix(u)?;
    let fakes: Vec<CPoly> = u
        .members()
        .iter()
        .map(|m| m.fake_degree.map(|r| CycloNumber::from_rational(r.clone())))
        .collect();
    for (i, mem) in u.members().iter().enumerate() {
        let mut acc = CPoly::zero();
        for c in 0..u.len() {
            if !full[(i, c)].is_zero() {
                acc = acc + fakes[j[c]].clone().scale(&full[(i, c)]);
            }
        }
        let deg = mem
            .degree
            .as_ref()
            .ok_or_else(|| Error::MissingData(format!("{} has no stored degree", mem.label)))?;
        if &acc != deg {
            return Err(Error::Verification(format!(
                "transformed fake degrees disagree with the degree at {}",
                mem.label
            )));
        }
    }
    Ok(())
}
