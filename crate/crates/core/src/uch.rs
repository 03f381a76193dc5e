//! Unipotent character data attached to a finite Coxeter group.
//!
//! Members of Uch(W) carry three attributes: a fake degree (zero outside
//! Irr(W)), a generic degree where a closed form is implemented (all of
//! I2(m)), and a root-of-unity Frobenius eigenvalue.  The set splits into
//! families, each with a unique special member and a combinatorial index set
//! on which a Fourier transform matrix is later supported.  Dihedral types
//! are materialized in full; H3 and H4 get their explicit small families,
//! with the 74-element H4 family fillable from an external table; classical
//! types materialize only the members inside Irr(W).

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use num::{One, Zero};
use num_traits::ToPrimitive;

use crate::chartab::{
    char_table, dixon_character_table, CayleyGroup, CharacterTable, GroupTable, IrrLabel,
};
use crate::combinat::{self, SymbolKind};
use crate::coxgroup::{CoxType, CoxeterGroup};
use crate::cyclo::{CycloNumber, Rational};
use crate::mat::Mat;
use crate::{CPoly, Error, QPoly, Result};

// ---------------------------------------------------------------------------
// labels

/// Which of the two non-principal slots of a four-element family a formal
/// member occupies, in the order of the family's index set.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum FormalSlot {
    /// The slot (1,2) of the five-element dihedral index set.
    P12,
    /// The slot (1,3).
    P13,
    /// The slot (s, 1) of M(S2).
    SId,
    /// The slot (s, sgn).
    SSgn,
}

/// Name of a unipotent character.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum UchLabel {
    /// A member of Irr(W).
    Irr(IrrLabel),
    /// I2(m) only: the formal member Phi_(i,j) with 0 < i < j < i+j < m.
    Dihedral(u32, u32),
    /// H3/H4: a formal member of a four-element family, tagged by the
    /// family's special character (two families can share slot names, so the
    /// tag is part of the identity).
    Formal(IrrLabel, FormalSlot),
    /// A member adopted verbatim from an external data file.
    Named(String),
}

impl fmt::Display for UchLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UchLabel::Irr(l) => write!(f, "{l}"),
            UchLabel::Dihedral(i, j) => write!(f, "Phi({i},{j})"),
            UchLabel::Formal(l, slot) => {
                let s = match slot {
                    FormalSlot::P12 => "1,2",
                    FormalSlot::P13 => "1,3",
                    FormalSlot::SId => "s,1",
                    FormalSlot::SSgn => "s,sgn",
                };
                write!(f, "Phi({s}|{l})")
            }
            UchLabel::Named(s) => write!(f, "{s}"),
        }
    }
}

// ---------------------------------------------------------------------------
// members and families

/// One member of Uch(W).
#[derive(Clone, Debug)]
pub struct UnipotentCharacter {
    pub label: UchLabel,
    /// Character-table row when the member lies in Irr(W).
    pub irr: Option<usize>,
    /// Zero outside Irr(W).
    pub fake_degree: QPoly,
    /// Generic degree, where a closed form is implemented.  The coefficients
    /// are validated to be real.
    pub degree: Option<CPoly>,
    /// Frobenius eigenvalue, a root of unity; 1 on Irr(W).
    pub eigenvalue: CycloNumber,
    pub special: bool,
    /// Index into [`UchSet::families`].
    pub family: usize,
}

impl UnipotentCharacter {
    pub fn is_irr(&self) -> bool {
        self.irr.is_some()
    }
}

/// Index-set shape of the Fourier block a family supports.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum GammaKind {
    /// Singleton family (1x1 identity block).
    Trivial,
    /// Classical non-singleton family, indexed by M((Z/2)^k) with k >= 1.
    Elementary(u32),
    /// Four-element family indexed by M(S2); these are the exceptional ones.
    SymmetricPair,
    /// Family indexed by the dihedral set X(m) of [`dihedral_x`].
    DihedralX(u32),
    /// The 74-element H4 family, whose matrix is ingested rather than built.
    Big74,
}

/// A block of Uch(W) supporting one Fourier transform matrix.
///
/// `members` lists the materialized members in the family's index-set order:
/// X(m) order for `DihedralX`, the order (1,1), (1,sgn), (s,1), (s,sgn) for
/// `SymmetricPair`, ascending table row for classical kinds, and file order
/// once a `Big74` family has its data attached.
#[derive(Clone, Debug)]
pub struct Family {
    pub members: Vec<usize>,
    /// Member index (into the whole set) of the unique special member.
    pub special: usize,
    pub gamma: GammaKind,
    pub exceptional: bool,
    /// Size of the full index set; exceeds `members.len()` where formal
    /// members are not materialized (classical types, H4 before ingest).
    pub full_size: usize,
}

// ---------------------------------------------------------------------------
// the dihedral index set

/// One slot of the dihedral index set X(m).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum XSlot {
    Pair(u32, u32),
    /// The two slots written (0, m/2)' and (0, m/2)'', present for even m.
    Prime(u8),
}

/// The index set X(m): pairs (0,j) with 0 < j < m/2, the two primed slots
/// when m is even, then pairs (i,j) with 0 < i < j < i+j < m in
/// lexicographic order.
pub fn dihedral_x(m: u32) -> Vec<XSlot> {
    let mut x = Vec::new();
    for j in 1..m {
        if 2 * j < m {
            x.push(XSlot::Pair(0, j));
        }
    }
    if m % 2 == 0 {
        x.push(XSlot::Prime(1));
        x.push(XSlot::Prime(2));
    }
    for i in 1..m {
        for j in (i + 1)..m {
            if i + j < m {
                x.push(XSlot::Pair(i, j));
            }
        }
    }
    x
}

// ---------------------------------------------------------------------------
// the set

/// The unipotent character set of one Coxeter type.  Immutable after build,
/// except for the optional attachment of the H4 big-family contents.
pub struct UchSet {
    typ: CoxType,
    table: Arc<CharacterTable>,
    members: Vec<UnipotentCharacter>,
    families: Vec<Family>,
    big_matrix: Option<Mat<CycloNumber>>,
}

impl UchSet {
    pub fn typ(&self) -> CoxType {
        self.typ
    }
    pub fn table(&self) -> &Arc<CharacterTable> {
        &self.table
    }
    pub fn len(&self) -> usize {
        self.members.len()
    }
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
    pub fn member(&self, i: usize) -> &UnipotentCharacter {
        &self.members[i]
    }
    pub fn members(&self) -> &[UnipotentCharacter] {
        &self.members
    }
    pub fn families(&self) -> &[Family] {
        &self.families
    }
    pub fn family(&self, i: usize) -> &Family {
        &self.families[i]
    }
    pub fn num_irr(&self) -> usize {
        self.table.num_irr()
    }
    pub fn index_of(&self, label: &UchLabel) -> Option<usize> {
        self.members.iter().position(|m| &m.label == label)
    }
    /// Member index of the irreducible character at the given table row.
    pub fn index_of_row(&self, row: usize) -> Option<usize> {
        self.members.iter().position(|m| m.irr == Some(row))
    }
    /// The special member of each family, in family order.
    pub fn specials(&self) -> Vec<usize> {
        self.families.iter().map(|f| f.special).collect()
    }
    /// The ingested matrix of the 74-element family, if attached.
    pub fn big_family_matrix(&self) -> Option<&Mat<CycloNumber>> {
        self.big_matrix.as_ref()
    }
}

/// Build the unipotent character set of any supported type.
pub fn build(typ: CoxType) -> Result<UchSet> {
    let g = CoxeterGroup::shared(typ)?;
    let table = char_table(&g)?;
    match typ {
        CoxType::I2(m) => build_uch_i2(m),
        CoxType::H3 => build_uch_h3(table),
        CoxType::H4 => build_uch_h4(table),
        CoxType::A(_) | CoxType::BC(_) | CoxType::D(_) => build_classical(table),
    }
}

// ---------------------------------------------------------------------------
// dihedral construction

/// Full unipotent data for I2(m) from the closed forms: fake degrees are
/// checked against the character table, generic degrees are produced by an
/// exact division (an error if the division fails), and the eigenvalue of
/// Phi_(i,j) is zeta_m^(-ij).
pub fn build_uch_i2(m: u32) -> Result<UchSet> {
    if m < 3 {
        return Err(Error::InvalidParameter(format!("I2({m}) needs m >= 3")));
    }
    let g = CoxeterGroup::shared(CoxType::I2(m))?;
    let table = char_table(&g)?;
    let nirr = table.num_irr();
    let half = m / 2;
    let row = |name: &str| -> Result<usize> {
        table
            .index_of_name(name)
            .ok_or_else(|| Error::Verification(format!("I2({m}): missing character {name}")))
    };
    let trivial = table.index_of_trivial();
    let sign = row(&format!("phi[1,{m}]"))?;

    let x_order = dihedral_x(m);
    let mut slot_of_row: HashMap<usize, XSlot> = HashMap::new();
    for s in &x_order {
        let name = match *s {
            XSlot::Pair(0, j) => format!("phi[2,{j}]"),
            XSlot::Prime(1) => format!("phi'[1,{half}]"),
            XSlot::Prime(_) => format!("phi''[1,{half}]"),
            XSlot::Pair(_, _) => continue,
        };
        slot_of_row.insert(row(&name)?, *s);
    }

    let mut members: Vec<UnipotentCharacter> = Vec::with_capacity(x_order.len() + 2);
    for r in 0..nirr {
        let (fake, degree) = if r == trivial {
            (QPoly::one(), CPoly::one())
        } else if r == sign {
            (
                qmono(m as usize),
                CPoly::monomial(CycloNumber::one(), m as usize),
            )
        } else {
            match slot_of_row.get(&r) {
                Some(XSlot::Pair(0, j)) => (
                    qmono(*j as usize) + qmono((m - j) as usize),
                    i2_pair_degree(m, 0, *j)?,
                ),
                Some(XSlot::Prime(_)) => (qmono(half as usize), i2_prime_degree(m)?),
                _ => {
                    return Err(Error::Verification(format!(
                        "I2({m}): unexpected character {}",
                        table.label(r)
                    )))
                }
            }
        };
        if table.fake_degree(r) != &fake {
            return Err(Error::Verification(format!(
                "I2({m}): fake degree of {} does not match its closed form",
                table.label(r)
            )));
        }
        members.push(UnipotentCharacter {
            label: UchLabel::Irr(table.label(r).clone()),
            irr: Some(r),
            fake_degree: fake,
            degree: Some(degree),
            eigenvalue: CycloNumber::one(),
            special: false,
            family: 2,
        });
    }
    members[trivial].family = 0;
    members[sign].family = 1;

    let mut big = Vec::with_capacity(x_order.len());
    for s in &x_order {
        match *s {
            XSlot::Pair(0, j) => big.push(row(&format!("phi[2,{j}]"))?),
            XSlot::Prime(1) => big.push(row(&format!("phi'[1,{half}]"))?),
            XSlot::Prime(_) => big.push(row(&format!("phi''[1,{half}]"))?),
            XSlot::Pair(i, j) => {
                big.push(members.len());
                members.push(UnipotentCharacter {
                    label: UchLabel::Dihedral(i, j),
                    irr: None,
                    fake_degree: QPoly::zero(),
                    degree: Some(i2_pair_degree(m, i, j)?),
                    eigenvalue: CycloNumber::zeta(m, -(i as i64 * j as i64)),
                    special: false,
                    family: 2,
                });
            }
        }
    }

    let k = half as usize;
    let expected = if m % 2 == 1 { k * k + 2 } else { k * k - k + 4 };
    if members.len() != expected {
        return Err(Error::Verification(format!(
            "I2({m}): {} members where {expected} were expected",
            members.len()
        )));
    }

    let full = big.len();
    let mut families = vec![
        Family {
            members: vec![trivial],
            special: trivial,
            gamma: GammaKind::Trivial,
            exceptional: false,
            full_size: 1,
        },
        Family {
            members: vec![sign],
            special: sign,
            gamma: GammaKind::Trivial,
            exceptional: false,
            full_size: 1,
        },
        Family {
            members: big,
            special: 0,
            gamma: GammaKind::DihedralX(m),
            exceptional: false,
            full_size: full,
        },
    ];
    let sp = strict_min_e(&members, &families[2].members)?;
    if members[sp].irr != Some(row("phi[2,1]")?) {
        return Err(Error::Verification(format!(
            "I2({m}): the big family's minimal fake degree is not at phi[2,1]"
        )));
    }
    families[2].special = sp;
    for f in &families {
        members[f.special].special = true;
    }

    Ok(UchSet {
        typ: CoxType::I2(m),
        table,
        members,
        families,
        big_matrix: None,
    })
}

/// The generic degree of Phi_(i,j), 0 <= i < j < i+j < m: a scalar multiple
/// of x (x^2-1)(x^m-1) divided by (x-z^i)(x-z^-i)(x-z^j)(x-z^-j), where z is
/// a primitive m-th root of unity.  The division must be exact and the
/// result must have real coefficients.
fn i2_pair_degree(m: u32, i: u32, j: u32) -> Result<CPoly> {
    let z = |t: i64| CycloNumber::zeta(m, t);
    let x = CPoly::x();
    let pref = (z(i as i64) + z(-(i as i64)) - z(j as i64) - z(-(j as i64)))
        / CycloNumber::from_int(m as i64);
    let num = (x.pow(2) - CPoly::one()) * (x.pow(m) - CPoly::one());
    let mut den = CPoly::one();
    for t in [i as i64, -(i as i64), j as i64, -(j as i64)] {
        den = den * (x.clone() - CPoly::constant(z(t)));
    }
    let deg = num.exact_div(&den)?.shift(1).scale(&pref);
    check_real(&deg, || format!("I2({m}): degree at ({i},{j})"))?;
    Ok(deg)
}

/// The common generic degree of the two primed members at (0, m/2):
/// (2/m) x (x-z)(x-z^-1)...(x-z^(m/2-1))(x-z^(1-m/2)), of degree m-1.
fn i2_prime_degree(m: u32) -> Result<CPoly> {
    let x = CPoly::x();
    let mut p = CPoly::one();
    for t in 1..(m / 2) {
        p = p
            * (x.clone() - CPoly::constant(CycloNumber::zeta(m, t as i64)))
            * (x.clone() - CPoly::constant(CycloNumber::zeta(m, -(t as i64))));
    }
    let pref = CycloNumber::from_int(2) / CycloNumber::from_int(m as i64);
    let deg = p.shift(1).scale(&pref);
    check_real(&deg, || format!("I2({m}): primed degree"))?;
    Ok(deg)
}

fn check_real(p: &CPoly, what: impl Fn() -> String) -> Result<()> {
    for c in p.coeffs() {
        if !c.is_real() {
            return Err(Error::Verification(format!(
                "{} has a non-real coefficient",
                what()
            )));
        }
    }
    Ok(())
}

fn qmono(k: usize) -> QPoly {
    QPoly::monomial(Rational::one(), k)
}

/// The unique Irr member of the family whose fake degree has strictly
/// smallest valuation.
fn strict_min_e(members: &[UnipotentCharacter], fam: &[usize]) -> Result<usize> {
    let mut best: Option<(usize, usize)> = None;
    let mut tied = false;
    for &i in fam {
        let mem = &members[i];
        if !mem.is_irr() {
            continue;
        }
        let v = mem
            .fake_degree
            .valuation()
            .ok_or_else(|| Error::Verification(format!("{} has a zero fake degree", mem.label)))?;
        match best {
            None => best = Some((v, i)),
            Some((bv, _)) if v < bv => {
                best = Some((v, i));
                tied = false;
            }
            Some((bv, _)) if v == bv => tied = true,
            _ => {}
        }
    }
    let (_, i) =
        best.ok_or_else(|| Error::Verification("family has no members in Irr(W)".into()))?;
    if tied {
        return Err(Error::Verification(
            "no strict fake-degree minimum in the family".into(),
        ));
    }
    Ok(i)
}

// ---------------------------------------------------------------------------
// H3 and H4

const H3_SINGLETONS: [&str; 4] = ["phi[1,0]", "phi[1,15]", "phi[5,2]", "phi[5,5]"];
const H3_PENTAGONAL: [[&str; 2]; 2] = [["phi[3,1]", "phi[3,3]"], ["phi[3,6]", "phi[3,8]"]];
const H3_EXCEPTIONAL: [[&str; 2]; 1] = [["phi[4,3]", "phi[4,4]"]];

const H4_SINGLETONS: [&str; 6] = [
    "phi[1,0]",
    "phi[1,60]",
    "phi[25,4]",
    "phi[25,16]",
    "phi[36,5]",
    "phi[36,15]",
];
const H4_PENTAGONAL: [[&str; 2]; 4] = [
    ["phi[4,1]", "phi[4,7]"],
    ["phi[4,31]", "phi[4,37]"],
    ["phi[9,2]", "phi[9,6]"],
    ["phi[9,22]", "phi[9,26]"],
];
const H4_EXCEPTIONAL: [[&str; 2]; 2] = [["phi[16,3]", "phi[16,6]"], ["phi[16,18]", "phi[16,21]"]];
const H4_BIG_SPECIAL: &str = "phi[24,6]";

/// The 16 members of Uch(H3): ten irreducible characters in four singleton
/// and three four-element families, plus six formal members.
pub fn build_uch_h3(table: Arc<CharacterTable>) -> Result<UchSet> {
    if table.typ() != CoxType::H3 {
        return Err(Error::InvalidParameter(format!(
            "expected an H3 table, got {}",
            table.typ()
        )));
    }
    let u = build_h_families(table, &H3_SINGLETONS, &H3_PENTAGONAL, &H3_EXCEPTIONAL, None)?;
    if u.len() != 16 || u.families().len() != 7 {
        return Err(Error::Verification(format!(
            "H3: {} members in {} families",
            u.len(),
            u.families().len()
        )));
    }
    Ok(u)
}

/// The materialized part of Uch(H4): 34 irreducible characters and the 12
/// formal members of the six four-element families.  The 58 formal members
/// of the 74-element family are added by [`UchSet::attach_big_family`].
pub fn build_uch_h4(table: Arc<CharacterTable>) -> Result<UchSet> {
    if table.typ() != CoxType::H4 {
        return Err(Error::InvalidParameter(format!(
            "expected an H4 table, got {}",
            table.typ()
        )));
    }
    let u = build_h_families(
        table,
        &H4_SINGLETONS,
        &H4_PENTAGONAL,
        &H4_EXCEPTIONAL,
        Some(H4_BIG_SPECIAL),
    )?;
    if u.len() != 46 || u.families().len() != 13 {
        return Err(Error::Verification(format!(
            "H4: {} members in {} families",
            u.len(),
            u.families().len()
        )));
    }
    Ok(u)
}

enum HPlan {
    Single(usize),
    Pentagonal(usize, usize),
    Exceptional(usize, usize),
    Big(usize, Vec<usize>),
}

fn build_h_families(
    table: Arc<CharacterTable>,
    singles: &[&str],
    pentagonal: &[[&str; 2]],
    exceptional: &[[&str; 2]],
    big_special: Option<&str>,
) -> Result<UchSet> {
    let typ = table.typ();
    let nirr = table.num_irr();
    let row = |name: &str| -> Result<usize> {
        table
            .index_of_name(name)
            .ok_or_else(|| Error::Verification(format!("{typ}: missing character {name}")))
    };

    let mut named = vec![false; nirr];
    let mut plans: Vec<(usize, HPlan)> = Vec::new();
    for n in singles {
        let r = row(n)?;
        named[r] = true;
        plans.push((r, HPlan::Single(r)));
    }
    for p in pentagonal {
        let (a, b) = (row(p[0])?, row(p[1])?);
        named[a] = true;
        named[b] = true;
        plans.push((a, HPlan::Pentagonal(a, b)));
    }
    for p in exceptional {
        let (a, b) = (row(p[0])?, row(p[1])?);
        named[a] = true;
        named[b] = true;
        plans.push((a, HPlan::Exceptional(a, b)));
    }
    match big_special {
        Some(n) => {
            let r = row(n)?;
            let rest: Vec<usize> = (0..nirr).filter(|&i| !named[i]).collect();
            if named[r] || !rest.contains(&r) {
                return Err(Error::Verification(format!(
                    "{typ}: {n} is already assigned to a small family"
                )));
            }
            plans.push((r, HPlan::Big(r, rest)));
        }
        None => {
            if let Some(r) = (0..nirr).find(|&i| !named[i]) {
                return Err(Error::Verification(format!(
                    "{typ}: {} belongs to no family",
                    table.label(r)
                )));
            }
        }
    }
    plans.sort_by_key(|(r, _)| *r);

    let mut members: Vec<UnipotentCharacter> = (0..nirr)
        .map(|r| UnipotentCharacter {
            label: UchLabel::Irr(table.label(r).clone()),
            irr: Some(r),
            fake_degree: table.fake_degree(r).clone(),
            degree: None,
            eigenvalue: CycloNumber::one(),
            special: false,
            family: usize::MAX,
        })
        .collect();

    let mut families = Vec::with_capacity(plans.len());
    for (fi, (_, plan)) in plans.iter().enumerate() {
        let fam = match plan {
            HPlan::Single(r) => Family {
                members: vec![*r],
                special: *r,
                gamma: GammaKind::Trivial,
                exceptional: false,
                full_size: 1,
            },
            HPlan::Pentagonal(a, b) => {
                let tag = table.label(*a).clone();
                let mut list = vec![*a, *b];
                for (slot, eig) in [
                    (FormalSlot::P12, CycloNumber::zeta(5, 3)),
                    (FormalSlot::P13, CycloNumber::zeta(5, 2)),
                ] {
                    list.push(members.len());
                    members.push(UnipotentCharacter {
                        label: UchLabel::Formal(tag.clone(), slot),
                        irr: None,
                        fake_degree: QPoly::zero(),
                        degree: None,
                        eigenvalue: eig,
                        special: false,
                        family: fi,
                    });
                }
                Family {
                    members: list,
                    special: *a,
                    gamma: GammaKind::DihedralX(5),
                    exceptional: false,
                    full_size: 4,
                }
            }
            HPlan::Exceptional(a, b) => {
                let tag = table.label(*a).clone();
                let mut list = vec![*a, *b];
                for (slot, eig) in [
                    (FormalSlot::SId, CycloNumber::zeta(4, 1)),
                    (FormalSlot::SSgn, CycloNumber::zeta(4, 3)),
                ] {
                    list.push(members.len());
                    members.push(UnipotentCharacter {
                        label: UchLabel::Formal(tag.clone(), slot),
                        irr: None,
                        fake_degree: QPoly::zero(),
                        degree: None,
                        eigenvalue: eig,
                        special: false,
                        family: fi,
                    });
                }
                Family {
                    members: list,
                    special: *a,
                    gamma: GammaKind::SymmetricPair,
                    exceptional: true,
                    full_size: 4,
                }
            }
            HPlan::Big(r, rest) => Family {
                members: rest.clone(),
                special: *r,
                gamma: GammaKind::Big74,
                exceptional: false,
                full_size: 74,
            },
        };
        for &i in &fam.members {
            if members[i].is_irr() {
                if members[i].family != usize::MAX {
                    return Err(Error::Verification(format!(
                        "{typ}: {} is assigned to two families",
                        members[i].label
                    )));
                }
                members[i].family = fi;
            }
        }
        families.push(fam);
    }
    if let Some(m) = members.iter().find(|m| m.family == usize::MAX) {
        return Err(Error::Verification(format!(
            "{typ}: {} belongs to no family",
            m.label
        )));
    }
    for f in &families {
        let sp = strict_min_e(&members, &f.members)?;
        if sp != f.special {
            return Err(Error::Verification(format!(
                "{typ}: the fake-degree minimum of a family is at {}, not at {}",
                members[sp].label, members[f.special].label
            )));
        }
        members[sp].special = true;
    }

    Ok(UchSet {
        typ,
        table,
        members,
        families,
        big_matrix: None,
    })
}

// ---------------------------------------------------------------------------
// classical types

/// Group the irreducible characters of a classical table into families, with
/// the (Z/2)^k rank read off the symbol content.  Family member indices are
/// table rows (which coincide with member indices in the built set).
pub fn classical_families(table: &CharacterTable) -> Result<Vec<Family>> {
    let nirr = table.num_irr();
    match table.typ() {
        CoxType::A(_) => Ok((0..nirr)
            .map(|r| Family {
                members: vec![r],
                special: r,
                gamma: GammaKind::Trivial,
                exceptional: false,
                full_size: 1,
            })
            .collect()),
        CoxType::BC(n) => classical_grouping(table, SymbolKind::BC, n),
        CoxType::D(n) => classical_grouping(table, SymbolKind::D, n),
        t => Err(Error::InvalidParameter(format!("{t} is not classical"))),
    }
}

fn classical_grouping(table: &CharacterTable, kind: SymbolKind, n: usize) -> Result<Vec<Family>> {
    let mut groups: HashMap<Vec<u32>, Vec<usize>> = HashMap::new();
    let mut fams = Vec::new();
    for r in 0..table.num_irr() {
        let (a, b) = match table.label(r) {
            IrrLabel::Pair(a, b) => (a.clone(), b.clone()),
            IrrLabel::Unordered(a, b) => (a.clone(), b.clone()),
            IrrLabel::Split(_, _) => {
                // the two halves of a degenerate symbol are their own
                // singleton families, both special
                fams.push(Family {
                    members: vec![r],
                    special: r,
                    gamma: GammaKind::Trivial,
                    exceptional: false,
                    full_size: 1,
                });
                continue;
            }
            l => {
                return Err(Error::Verification(format!(
                    "{}: unexpected label {l}",
                    table.typ()
                )))
            }
        };
        let sym = combinat::symbol_of(kind, &a, &b, n)?;
        groups
            .entry(combinat::family_key(&sym))
            .or_default()
            .push(r);
    }

    for rows in groups.into_values() {
        let mut rank = None;
        let mut specials = Vec::new();
        for &r in &rows {
            let (a, b) = match table.label(r) {
                IrrLabel::Pair(a, b) | IrrLabel::Unordered(a, b) => (a, b),
                _ => unreachable!(),
            };
            let k = combinat::family_gamma_rank(&combinat::symbol_of(kind, a, b, n)?);
            if *rank.get_or_insert(k) != k {
                return Err(Error::Verification(format!(
                    "{}: mixed ranks within one family",
                    table.typ()
                )));
            }
            if combinat::is_special_bipartition(kind, a, b) {
                specials.push(r);
            }
        }
        let k = rank.unwrap();
        let expect = match kind {
            SymbolKind::BC => binom(2 * k as u64 + 1, k as u64),
            SymbolKind::D => {
                if k == 0 {
                    1
                } else {
                    binom(2 * k as u64 + 2, k as u64 + 1) / 2
                }
            }
        };
        if rows.len() as u64 != expect {
            return Err(Error::Verification(format!(
                "{}: a rank-{k} family has {} members where {expect} were expected",
                table.typ(),
                rows.len()
            )));
        }
        if specials.len() != 1 {
            return Err(Error::Verification(format!(
                "{}: a family with {} special members",
                table.typ(),
                specials.len()
            )));
        }
        fams.push(Family {
            members: rows,
            special: specials[0],
            gamma: if k == 0 {
                GammaKind::Trivial
            } else {
                GammaKind::Elementary(k)
            },
            exceptional: false,
            full_size: 1usize << (2 * k),
        });
    }
    fams.sort_by_key(|f| f.special);
    Ok(fams)
}

fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn build_classical(table: Arc<CharacterTable>) -> Result<UchSet> {
    let fams = classical_families(&table)?;
    let nirr = table.num_irr();
    let mut members: Vec<UnipotentCharacter> = (0..nirr)
        .map(|r| UnipotentCharacter {
            label: UchLabel::Irr(table.label(r).clone()),
            irr: Some(r),
            fake_degree: table.fake_degree(r).clone(),
            degree: None,
            eigenvalue: CycloNumber::one(),
            special: false,
            family: usize::MAX,
        })
        .collect();
    for (fi, f) in fams.iter().enumerate() {
        for &r in &f.members {
            if members[r].family != usize::MAX {
                return Err(Error::Verification(format!(
                    "{}: {} is assigned to two families",
                    table.typ(),
                    members[r].label
                )));
            }
            members[r].family = fi;
        }
        members[f.special].special = true;
    }
    if let Some(m) = members.iter().find(|m| m.family == usize::MAX) {
        return Err(Error::Verification(format!(
            "{}: {} belongs to no family",
            table.typ(),
            m.label
        )));
    }
    Ok(UchSet {
        typ: table.typ(),
        table,
        members,
        families: fams,
        big_matrix: None,
    })
}

// ---------------------------------------------------------------------------
// the two involutions

impl UchSet {
    /// The involution that preserves generic degrees and conjugates
    /// eigenvalues: the identity on classical types and on Irr(W), the map
    /// Phi_(i,j) -> Phi_(i,m-j) on dihedral formal members, the swap of the
    /// two formal members of each four-element family, and unique
    /// conjugate-eigenvalue pairing inside an attached big family (an error
    /// if such pairing is ambiguous).
    pub fn delta_involution(&self) -> Result<Vec<usize>> {
        let mut d: Vec<usize> = (0..self.members.len()).collect();
        for (idx, mem) in self.members.iter().enumerate() {
            match &mem.label {
                UchLabel::Irr(_) => {}
                UchLabel::Dihedral(i, j) => {
                    let m = match self.typ {
                        CoxType::I2(m) => m,
                        _ => {
                            return Err(Error::Verification(
                                "dihedral member outside a dihedral type".into(),
                            ))
                        }
                    };
                    if 2 * j != m {
                        d[idx] =
                            self.index_of(&UchLabel::Dihedral(*i, m - j))
                                .ok_or_else(|| {
                                    Error::Verification(format!(
                                        "missing partner Phi({},{})",
                                        i,
                                        m - j
                                    ))
                                })?;
                    }
                }
                UchLabel::Formal(tag, slot) => {
                    let partner = match slot {
                        FormalSlot::P12 => FormalSlot::P13,
                        FormalSlot::P13 => FormalSlot::P12,
                        FormalSlot::SId => FormalSlot::SSgn,
                        FormalSlot::SSgn => FormalSlot::SId,
                    };
                    d[idx] = self
                        .index_of(&UchLabel::Formal(tag.clone(), partner))
                        .ok_or_else(|| {
                            Error::Verification(format!("missing partner of {}", mem.label))
                        })?;
                }
                UchLabel::Named(_) => {
                    if mem.eigenvalue.is_real() {
                        continue;
                    }
                    let want = mem.eigenvalue.conj();
                    let hits: Vec<usize> = self.families[mem.family]
                        .members
                        .iter()
                        .copied()
                        .filter(|&k| {
                            let o = &self.members[k];
                            !o.is_irr() && o.eigenvalue == want
                        })
                        .collect();
                    if hits.len() != 1 {
                        return Err(Error::Verification(format!(
                            "eigenvalue pairing for {} is ambiguous ({} candidates)",
                            mem.label,
                            hits.len()
                        )));
                    }
                    d[idx] = hits[0];
                }
            }
        }
        for i in 0..d.len() {
            let (a, b) = (&self.members[i], &self.members[d[i]]);
            if d[d[i]] != i || b.family != a.family {
                return Err(Error::Verification(
                    "the eigenvalue-conjugating map is not a family-preserving involution".into(),
                ));
            }
            if b.eigenvalue != a.eigenvalue.conj() {
                return Err(Error::Verification(format!(
                    "eigenvalue of {} is not conjugated",
                    a.label
                )));
            }
            if let (Some(p), Some(q)) = (&a.degree, &b.degree) {
                if p != q {
                    return Err(Error::Verification(format!(
                        "degree of {} is not preserved",
                        a.label
                    )));
                }
            }
        }
        Ok(d)
    }

    /// The fake-degree reversing involution: an Irr member chi with
    /// reflection-representation content N_chi is matched against
    /// x^(N - N_chi) * FakeDeg(chi)(1/x) within its family, where N counts
    /// the reflections of W; members outside Irr(W) are fixed.
    pub fn j_involution(&self) -> Result<Vec<usize>> {
        let g = CoxeterGroup::shared(self.typ)?;
        let reflections = g.reflections();
        let n_refl = reflections.len() as i64;
        let mut j: Vec<usize> = (0..self.members.len()).collect();
        for (idx, mem) in self.members.iter().enumerate() {
            let Some(r) = mem.irr else { continue };
            let s = CycloNumber::sum(
                reflections
                    .iter()
                    .map(|&t| self.table.value(r, g.class_of(t)).clone()),
            );
            let nphi = (s / CycloNumber::from_int(self.table.degree(r) as i64))
                .to_rational()
                .and_then(|q| {
                    if q.is_integer() {
                        q.to_integer().to_i64()
                    } else {
                        None
                    }
                })
                .ok_or_else(|| {
                    Error::Verification(format!(
                        "reflection sum of {} is not an integer",
                        mem.label
                    ))
                })?;
            let c = n_refl - nphi;
            let dfake = mem.fake_degree.degree().ok_or_else(|| {
                Error::Verification(format!("{} has a zero fake degree", mem.label))
            })? as i64;
            if c < dfake {
                return Err(Error::Verification(format!(
                    "reversal exponent {c} below the fake degree of {}",
                    mem.label
                )));
            }
            let rev = mem.fake_degree.reverse(c as usize)?;
            if rev == mem.fake_degree {
                continue;
            }
            let hits: Vec<usize> = self.families[mem.family]
                .members
                .iter()
                .copied()
                .filter(|&k| k != idx && self.members[k].fake_degree == rev)
                .collect();
            if hits.len() != 1 {
                return Err(Error::Verification(format!(
                    "reversed fake degree of {} matches {} family members",
                    mem.label,
                    hits.len()
                )));
            }
            j[idx] = hits[0];
        }
        for i in 0..j.len() {
            if j[j[i]] != i {
                return Err(Error::Verification(
                    "fake-degree reversal is not an involution".into(),
                ));
            }
        }
        Ok(j)
    }
}

// ---------------------------------------------------------------------------
// external big-family data

/// Contents of the 74-element H4 family as read from an external table.
/// Members inside Irr(W) are named by their character-table labels (for
/// example "phi[24,6]"); the other 58 names are taken verbatim.
#[derive(Clone, Debug)]
pub struct BigFamilyData {
    pub labels: Vec<String>,
    pub eigenvalues: Vec<CycloNumber>,
    pub fourier: Vec<Vec<CycloNumber>>,
}

impl UchSet {
    /// Attach externally supplied contents to the 74-element family: the 58
    /// members outside Irr(W) are created, the family is reordered to the
    /// file order, and the matrix is stored after shape, symmetry, realness,
    /// involution (M^2 = I) and eigenvalue checks.
    pub fn attach_big_family(&mut self, data: &BigFamilyData) -> Result<()> {
        if self.typ != CoxType::H4 {
            return Err(Error::InvalidParameter(format!(
                "{} has no attachable family",
                self.typ
            )));
        }
        let bf = self
            .families
            .iter()
            .position(|f| f.gamma == GammaKind::Big74)
            .ok_or_else(|| Error::MissingData("no 74-element family".into()))?;
        if self.families[bf].members.len() == self.families[bf].full_size {
            return Err(Error::InvalidParameter(
                "family data already attached".into(),
            ));
        }
        let n = self.families[bf].full_size;
        if data.labels.len() != n || data.eigenvalues.len() != n {
            return Err(Error::Verification(format!(
                "expected {n} labels and eigenvalues, got {} and {}",
                data.labels.len(),
                data.eigenvalues.len()
            )));
        }
        let mut seen = HashSet::new();
        for l in &data.labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::Verification(format!("duplicate label {l}")));
            }
        }
        if data.fourier.len() != n || data.fourier.iter().any(|row| row.len() != n) {
            return Err(Error::Verification(format!("matrix is not {n} x {n}")));
        }
        for i in 0..n {
            for k in i..n {
                if !data.fourier[i][k].is_real() {
                    return Err(Error::Verification(format!(
                        "matrix entry ({i},{k}) is not real"
                    )));
                }
                if data.fourier[i][k] != data.fourier[k][i] {
                    return Err(Error::Verification(format!(
                        "matrix is not symmetric at ({i},{k})"
                    )));
                }
            }
        }
        let mat = Mat::from_rows(data.fourier.clone())?;
        if &mat * &mat != Mat::identity(n) {
            return Err(Error::Verification("matrix does not square to 1".into()));
        }

        let irr_by_name: HashMap<String, usize> = self.families[bf]
            .members
            .iter()
            .map(|&k| (self.members[k].label.to_string(), k))
            .collect();
        let mut plan: Vec<Option<usize>> = Vec::with_capacity(n);
        for (pos, l) in data.labels.iter().enumerate() {
            if let Some(&k) = irr_by_name.get(l) {
                if !data.eigenvalues[pos].is_one() {
                    return Err(Error::Verification(format!(
                        "{l} lies in Irr(W) but has eigenvalue {}",
                        data.eigenvalues[pos]
                    )));
                }
                plan.push(Some(k));
            } else {
                if self.table.index_of_name(l).is_some() {
                    return Err(Error::Verification(format!(
                        "{l} is an irreducible character outside this family"
                    )));
                }
                if data.eigenvalues[pos].as_root_of_unity().is_none() {
                    return Err(Error::Verification(format!(
                        "eigenvalue of {l} is not a root of unity"
                    )));
                }
                plan.push(None);
            }
        }
        let matched = plan.iter().filter(|p| p.is_some()).count();
        if matched != irr_by_name.len() {
            return Err(Error::Verification(format!(
                "file names {matched} of the {} members inside Irr(W)",
                irr_by_name.len()
            )));
        }

        let mut list = Vec::with_capacity(n);
        for (pos, p) in plan.into_iter().enumerate() {
            match p {
                Some(k) => list.push(k),
                None => {
                    list.push(self.members.len());
                    self.members.push(UnipotentCharacter {
                        label: UchLabel::Named(data.labels[pos].clone()),
                        irr: None,
                        fake_degree: QPoly::zero(),
                        degree: None,
                        eigenvalue: data.eigenvalues[pos].clone(),
                        special: false,
                        family: bf,
                    });
                }
            }
        }
        self.families[bf].members = list;
        self.big_matrix = Some(mat);
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// pairs (x, sigma) modulo simultaneous conjugation

/// A pair (x, sigma) with x a group element and sigma an irreducible
/// character of its centralizer, up to (x, sigma) ~ (gxg^-1, sigma^g).
/// Since conjugation by the centralizer itself fixes sigma, taking x to be
/// a class representative makes the pair canonical.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct MGammaElement {
    /// Canonical class representative.
    pub x: u32,
    /// Class index of x (also indexes the centralizer record).
    pub cent: usize,
    /// Row of sigma in the centralizer's character table.
    pub sigma: usize,
}

/// Descriptor of the small groups supported by [`mgamma`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum GammaDesc {
    /// (Z/2)^k with k <= 4.
    Elementary(u32),
    /// S_n with n <= 5.
    Symmetric(u32),
}

struct Centralizer {
    /// Global element ids, ascending (so the identity comes first).
    elements: Vec<u32>,
    local: CayleyGroup,
    /// Character rows over the local classes, the trivial character first.
    chars: Vec<Vec<CycloNumber>>,
}

/// The set M(Gamma) together with the data needed to evaluate its pairing:
/// the ambient group, one centralizer table per class, and the eigenvalue
/// map (x, sigma) -> sigma(x)/sigma(1).
pub struct MGammaSet {
    desc: GammaDesc,
    gamma: CayleyGroup,
    cents: Vec<Centralizer>,
    members: Vec<MGammaElement>,
}

/// Enumerate M(Gamma) with canonical representatives: class representatives
/// in discovery order, and within each centralizer the trivial character
/// first.
pub fn mgamma(desc: GammaDesc) -> Result<MGammaSet> {
    let gamma = match desc {
        GammaDesc::Elementary(k) => {
            if k > 4 {
                return Err(Error::InvalidParameter(format!(
                    "(Z/2)^{k} is out of range"
                )));
            }
            CayleyGroup::from_mul(1usize << k, |a, b| a ^ b)?
        }
        GammaDesc::Symmetric(n) => {
            if n == 0 || n > 5 {
                return Err(Error::InvalidParameter(format!("S_{n} is out of range")));
            }
            symmetric_cayley(n as usize)?
        }
    };
    let mut cents = Vec::with_capacity(gamma.num_classes());
    let mut members = Vec::new();
    for c in 0..gamma.num_classes() {
        let x = gamma.class_rep(c);
        let elements: Vec<u32> = (0..gamma.order() as u32)
            .filter(|&h| gamma.mul(h, x) == gamma.mul(x, h))
            .collect();
        let pos: HashMap<u32, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, &e)| (e, i as u32))
            .collect();
        let local = CayleyGroup::from_mul(elements.len(), |a, b| {
            pos[&gamma.mul(elements[a as usize], elements[b as usize])]
        })?;
        let mut chars = dixon_character_table(&local)?;
        if let Some(t) = chars.iter().position(|row| row.iter().all(|v| v.is_one())) {
            let triv = chars.remove(t);
            chars.insert(0, triv);
        }
        for sigma in 0..chars.len() {
            members.push(MGammaElement { x, cent: c, sigma });
        }
        cents.push(Centralizer {
            elements,
            local,
            chars,
        });
    }
    Ok(MGammaSet {
        desc,
        gamma,
        cents,
        members,
    })
}

impl MGammaSet {
    pub fn desc(&self) -> GammaDesc {
        self.desc
    }
    pub fn gamma(&self) -> &CayleyGroup {
        &self.gamma
    }
    pub fn len(&self) -> usize {
        self.members.len()
    }
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
    pub fn members(&self) -> &[MGammaElement] {
        &self.members
    }
    pub fn member(&self, i: usize) -> MGammaElement {
        self.members[i]
    }
    pub fn cent_order(&self, i: usize) -> usize {
        self.cents[self.members[i].cent].elements.len()
    }

    /// sigma(z) for a global element z that centralizes the member's x.
    pub fn value(&self, i: usize, z: u32) -> Result<CycloNumber> {
        let m = self.members[i];
        let cent = &self.cents[m.cent];
        let Ok(pos) = cent.elements.binary_search(&z) else {
            return Err(Error::InvalidParameter(format!(
                "element {z} does not centralize the representative"
            )));
        };
        Ok(cent.chars[m.sigma][cent.local.class_of(pos as u32)].clone())
    }

    /// sigma(x)/sigma(1): the root of unity by which the (central) element x
    /// acts in sigma.
    pub fn eigenvalue(&self, i: usize) -> Result<CycloNumber> {
        let m = self.members[i];
        let t = self.value(i, m.x)? / self.cents[m.cent].chars[m.sigma][0].clone();
        if t.as_root_of_unity().is_none() {
            return Err(Error::Verification(
                "central character value is not a root of unity".into(),
            ));
        }
        Ok(t)
    }

    /// The member (x, conj(sigma)).
    pub fn conj_member(&self, i: usize) -> Result<usize> {
        let m = self.members[i];
        let cent = &self.cents[m.cent];
        let want: Vec<CycloNumber> = cent.chars[m.sigma].iter().map(|v| v.conj()).collect();
        let sigma = cent
            .chars
            .iter()
            .position(|row| *row == want)
            .ok_or_else(|| {
                Error::Verification("conjugate character missing from the centralizer".into())
            })?;
        self.members
            .iter()
            .position(|e| e.cent == m.cent && e.sigma == sigma)
            .ok_or_else(|| Error::Verification("conjugate member missing".into()))
    }
}

/// S_n as a multiplication table over the n! one-line words in lexicographic
/// order (the identity word sorts first).
fn symmetric_cayley(n: usize) -> Result<CayleyGroup> {
    use itertools::Itertools;
    let perms: Vec<Vec<u8>> = (0..n as u8).permutations(n).collect();
    let pos: HashMap<Vec<u8>, u32> = perms
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), i as u32))
        .collect();
    CayleyGroup::from_mul(perms.len(), |a, b| {
        let (p, q) = (&perms[a as usize], &perms[b as usize]);
        let comp: Vec<u8> = (0..n).map(|i| p[q[i] as usize]).collect();
        pos[&comp]
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigInt;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    fn cpoly(coeffs: &[(i64, i64)]) -> CPoly {
        CPoly::new(
            coeffs
                .iter()
                .map(|&(n, d)| CycloNumber::from_rational(rat(n, d)))
                .collect(),
        )
    }

    fn expected_size(m: u32) -> usize {
        let k = (m / 2) as usize;
        if m % 2 == 1 {
            k * k + 2
        } else {
            k * k - k + 4
        }
    }

    #[test]
    fn i2_census() {
        for m in 3u32..=12 {
            let u = build(CoxType::I2(m)).unwrap();
            let t = Arc::clone(u.table());
            assert_eq!(u.len(), expected_size(m), "m={m}");
            assert_eq!(u.families().len(), 3);
            let g = CoxeterGroup::shared(CoxType::I2(m)).unwrap();
            assert_eq!(u.families()[0].members, vec![t.index_of_trivial()]);
            assert_eq!(u.families()[1].members, vec![t.index_of_sign(&g)]);
            let big = &u.families()[2];
            assert_eq!(big.members.len(), u.len() - 2);
            assert_eq!(big.gamma, GammaKind::DihedralX(m));
            assert_eq!(big.full_size, u.len() - 2);
            assert!(!big.exceptional);
            let sp = u.specials();
            assert_eq!(u.member(sp[2]).label.to_string(), "phi[2,1]");
            for (i, mem) in u.members().iter().enumerate() {
                assert_eq!(mem.special, sp.contains(&i));
                assert!(mem.degree.is_some());
                if mem.is_irr() {
                    assert!(mem.eigenvalue.is_one());
                } else {
                    assert!(mem.fake_degree.is_zero());
                }
            }
            for r in 0..t.num_irr() {
                assert_eq!(u.member(r).irr, Some(r));
            }
            if m % 2 == 0 {
                let k = m / 2;
                let p1 = t.index_of_name(&format!("phi'[1,{k}]")).unwrap();
                let p2 = t.index_of_name(&format!("phi''[1,{k}]")).unwrap();
                let d1 = u.member(p1).degree.clone().unwrap();
                assert_eq!(d1, u.member(p2).degree.clone().unwrap());
                assert_eq!(d1.degree(), Some((m - 1) as usize));
                assert_eq!(d1.valuation(), Some(1));
                assert_eq!(
                    d1.coeff(1),
                    CycloNumber::from_int(2) / CycloNumber::from_int(m as i64)
                );
            }
        }
        let u7 = build(CoxType::I2(7)).unwrap();
        let i = u7.index_of(&UchLabel::Dihedral(2, 3)).unwrap();
        assert_eq!(u7.member(i).eigenvalue, CycloNumber::zeta(7, -6));
        let u5 = build(CoxType::I2(5)).unwrap();
        assert_eq!(u5.len(), 6);
        let names: Vec<String> = u5.families()[2]
            .members
            .iter()
            .map(|&i| u5.member(i).label.to_string())
            .collect();
        assert_eq!(names, ["phi[2,1]", "phi[2,2]", "Phi(1,2)", "Phi(1,3)"]);
        assert_eq!(build(CoxType::I2(6)).unwrap().len(), 10);
    }

    #[test]
    fn b2_degrees_match_hand_computation() {
        let u = build(CoxType::I2(4)).unwrap();
        let t = Arc::clone(u.table());
        // (1/2) x (x+1)^2
        let r = t.index_of_name("phi[2,1]").unwrap();
        assert_eq!(
            u.member(r).degree.clone().unwrap(),
            cpoly(&[(0, 1), (1, 2), (1, 1), (1, 2)])
        );
        // (1/2) x (x-1)^2
        let i = u.index_of(&UchLabel::Dihedral(1, 2)).unwrap();
        assert_eq!(
            u.member(i).degree.clone().unwrap(),
            cpoly(&[(0, 1), (1, 2), (-1, 1), (1, 2)])
        );
        // (1/2) x (x^2+1)
        let p = t.index_of_name("phi'[1,2]").unwrap();
        assert_eq!(
            u.member(p).degree.clone().unwrap(),
            cpoly(&[(0, 1), (1, 2), (0, 1), (1, 2)])
        );
        assert_eq!(
            u.member(t.index_of_trivial()).degree.clone().unwrap(),
            CPoly::one()
        );
        let g = CoxeterGroup::shared(CoxType::I2(4)).unwrap();
        assert_eq!(
            u.member(t.index_of_sign(&g)).degree.clone().unwrap(),
            CPoly::monomial(CycloNumber::one(), 4)
        );
    }

    #[test]
    fn dihedral_delta_and_j() {
        for m in 3u32..=12 {
            let u = build(CoxType::I2(m)).unwrap();
            let d = u.delta_involution().unwrap();
            let j = u.j_involution().unwrap();
            assert!(j.iter().enumerate().all(|(i, &x)| x == i), "m={m}");
            for (i, mem) in u.members().iter().enumerate() {
                let moved = matches!(mem.label, UchLabel::Dihedral(_, jj) if 2 * jj != m);
                assert_eq!(d[i] != i, moved, "m={m} member {}", mem.label);
                if d[i] == i {
                    assert!(mem.eigenvalue.is_real());
                }
            }
        }
        // moved members with real eigenvalues: the fixed set is given by the
        // index pattern, not by eigenvalue realness
        let u = build(CoxType::I2(12)).unwrap();
        let d = u.delta_involution().unwrap();
        let a = u.index_of(&UchLabel::Dihedral(2, 3)).unwrap();
        assert!(u.member(a).eigenvalue.is_real());
        assert_eq!(d[a], u.index_of(&UchLabel::Dihedral(2, 9)).unwrap());
        let b = u.index_of(&UchLabel::Dihedral(3, 4)).unwrap();
        assert!(u.member(b).eigenvalue.is_one());
        assert_eq!(d[b], u.index_of(&UchLabel::Dihedral(3, 8)).unwrap());
    }

    fn check_family_partition(u: &UchSet, expect_irr: impl Fn(u32) -> u64) {
        let total: usize = u.families().iter().map(|f| f.members.len()).sum();
        assert_eq!(total, u.len());
        for f in u.families() {
            let nspecial = f.members.iter().filter(|&&i| u.member(i).special).count();
            assert_eq!(nspecial, 1);
            assert!(u.member(f.special).special);
            assert!(u.member(f.special).is_irr());
            assert_eq!(strict_min_e(u.members(), &f.members).unwrap(), f.special);
            match f.gamma {
                GammaKind::Trivial => {
                    assert_eq!(f.members.len(), 1);
                    assert_eq!(f.full_size, 1);
                }
                GammaKind::Elementary(k) => {
                    assert!(k >= 1);
                    assert_eq!(f.full_size, 1 << (2 * k));
                    assert_eq!(f.members.len() as u64, expect_irr(k));
                }
                _ => panic!("unexpected family kind"),
            }
        }
    }

    #[test]
    fn classical_family_census() {
        for n in 1..=5 {
            let u = build(CoxType::A(n)).unwrap();
            assert_eq!(u.families().len(), u.len());
            assert!(u.members().iter().all(|m| m.special && m.is_irr()));
            let j = u.j_involution().unwrap();
            assert!(j.iter().enumerate().all(|(i, &x)| x == i));
        }
        for n in 2..=5 {
            let u = build(CoxType::BC(n)).unwrap();
            check_family_partition(&u, |k| binom(2 * k as u64 + 1, k as u64));
            assert!(u
                .delta_involution()
                .unwrap()
                .iter()
                .enumerate()
                .all(|(i, &x)| x == i));
            let j = u.j_involution().unwrap();
            assert!(j.iter().enumerate().all(|(i, &x)| x == i));
        }
        for n in 4..=5 {
            let u = build(CoxType::D(n)).unwrap();
            check_family_partition(&u, |k| binom(2 * k as u64 + 2, k as u64 + 1) / 2);
            let j = u.j_involution().unwrap();
            assert!(j.iter().enumerate().all(|(i, &x)| x == i));
        }

        let u = build(CoxType::BC(2)).unwrap();
        let mut sizes: Vec<usize> = u.families().iter().map(|f| f.members.len()).collect();
        sizes.sort();
        assert_eq!(sizes, [1, 1, 3]);
        assert_eq!(
            u.families()
                .iter()
                .filter(|f| f.gamma == GammaKind::Elementary(1))
                .count(),
            1
        );

        let u = build(CoxType::D(4)).unwrap();
        let r = u.table().index_of_name("{[1],[2,1]}").unwrap();
        let f = &u.families()[u.member(r).family];
        assert_eq!(f.members.len(), 3);
        assert_eq!(f.gamma, GammaKind::Elementary(1));
        assert_eq!(f.full_size, 4);
        let splits: Vec<usize> = (0..u.num_irr())
            .filter(|&r| matches!(u.table().label(r), IrrLabel::Split(_, _)))
            .collect();
        assert_eq!(splits.len(), 4);
        for r in splits {
            let f = &u.families()[u.member(r).family];
            assert_eq!(f.members, vec![r]);
            assert!(u.member(r).special);
        }
    }

    #[test]
    fn h3_census() {
        let u = build(CoxType::H3).unwrap();
        assert_eq!(u.len(), 16);
        assert_eq!(u.num_irr(), 10);
        let sizes: Vec<usize> = u.families().iter().map(|f| f.members.len()).collect();
        assert_eq!(sizes, [1, 1, 4, 4, 4, 1, 1]);
        let exc: Vec<bool> = u.families().iter().map(|f| f.exceptional).collect();
        assert_eq!(exc, [false, false, false, false, true, false, false]);
        let specials: Vec<String> = u
            .specials()
            .iter()
            .map(|&i| u.member(i).label.to_string())
            .collect();
        assert_eq!(
            specials,
            [
                "phi[1,0]",
                "phi[1,15]",
                "phi[3,1]",
                "phi[3,6]",
                "phi[4,3]",
                "phi[5,2]",
                "phi[5,5]"
            ]
        );

        let f31 = &u.families()[2];
        let labels: Vec<String> = f31
            .members
            .iter()
            .map(|&i| u.member(i).label.to_string())
            .collect();
        assert_eq!(
            labels,
            [
                "phi[3,1]",
                "phi[3,3]",
                "Phi(1,2|phi[3,1])",
                "Phi(1,3|phi[3,1])"
            ]
        );
        assert_eq!(f31.gamma, GammaKind::DihedralX(5));
        assert_eq!(u.member(f31.members[2]).eigenvalue, CycloNumber::zeta(5, 3));
        assert_eq!(u.member(f31.members[3]).eigenvalue, CycloNumber::zeta(5, 2));
        let fe = &u.families()[4];
        assert_eq!(fe.gamma, GammaKind::SymmetricPair);
        assert_eq!(u.member(fe.members[2]).eigenvalue, CycloNumber::zeta(4, 1));
        assert_eq!(u.member(fe.members[3]).eigenvalue, CycloNumber::zeta(4, 3));

        let j = u.j_involution().unwrap();
        let moved: Vec<usize> = (0..u.len()).filter(|&i| j[i] != i).collect();
        let r43 = u.table().index_of_name("phi[4,3]").unwrap();
        let r44 = u.table().index_of_name("phi[4,4]").unwrap();
        assert_eq!(moved, [r43, r44]);
        assert_eq!(j[r43], r44);

        let d = u.delta_involution().unwrap();
        let dmoved: Vec<usize> = (0..u.len()).filter(|&i| d[i] != i).collect();
        assert_eq!(dmoved, (10..16).collect::<Vec<_>>());
        for i in 0..u.len() {
            assert_eq!(u.member(d[i]).family, u.member(i).family);
        }
        for mem in u.members() {
            assert!(mem.degree.is_none());
            if mem.is_irr() {
                assert!(mem.eigenvalue.is_one());
            } else {
                assert!(mem.fake_degree.is_zero());
            }
        }
    }

    #[test]
    fn h4_census() {
        let u = build(CoxType::H4).unwrap();
        assert_eq!(u.len(), 46);
        assert_eq!(u.num_irr(), 34);
        assert_eq!(u.families().len(), 13);
        let mut by_kind: HashMap<GammaKind, usize> = HashMap::new();
        for f in u.families() {
            *by_kind.entry(f.gamma).or_insert(0) += 1;
        }
        assert_eq!(by_kind[&GammaKind::Trivial], 6);
        assert_eq!(by_kind[&GammaKind::DihedralX(5)], 4);
        assert_eq!(by_kind[&GammaKind::SymmetricPair], 2);
        assert_eq!(by_kind[&GammaKind::Big74], 1);

        let big = u
            .families()
            .iter()
            .find(|f| f.gamma == GammaKind::Big74)
            .unwrap();
        assert_eq!(big.members.len(), 16);
        assert_eq!(big.full_size, 74);
        assert_eq!(u.member(big.special).label.to_string(), "phi[24,6]");
        let big_names: HashSet<String> = big
            .members
            .iter()
            .map(|&i| u.member(i).label.to_string())
            .collect();
        let expected: HashSet<String> = [
            "phi[6,12]",
            "phi[6,20]",
            "phi[8,12]",
            "phi[8,13]",
            "phi[10,12]",
            "phi[16,11]",
            "phi[16,13]",
            "phi[18,10]",
            "phi[24,6]",
            "phi[24,7]",
            "phi[24,11]",
            "phi[24,12]",
            "phi[30,10,12]",
            "phi[30,10,14]",
            "phi[40,8]",
            "phi[48,9]",
        ]
        .iter()
        .map(|s| s.to_string())
        .collect();
        assert_eq!(big_names, expected);

        let j = u.j_involution().unwrap();
        let moved: HashSet<String> = (0..u.len())
            .filter(|&i| j[i] != i)
            .map(|i| u.member(i).label.to_string())
            .collect();
        let expected: HashSet<String> = ["phi[16,3]", "phi[16,6]", "phi[16,18]", "phi[16,21]"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(moved, expected);

        let d = u.delta_involution().unwrap();
        let dmoved: Vec<usize> = (0..u.len()).filter(|&i| d[i] != i).collect();
        assert_eq!(dmoved.len(), 12);
        assert!(dmoved.iter().all(|&i| !u.member(i).is_irr()));
    }

    #[test]
    fn mgamma_enumeration() {
        let s2 = mgamma(GammaDesc::Symmetric(2)).unwrap();
        assert_eq!(s2.len(), 4);
        let xs: Vec<u32> = s2.members().iter().map(|e| e.x).collect();
        assert_eq!(xs, [0, 0, 1, 1]);
        let eigs: Vec<CycloNumber> = (0..4).map(|i| s2.eigenvalue(i).unwrap()).collect();
        assert_eq!(
            eigs,
            [
                CycloNumber::one(),
                CycloNumber::one(),
                CycloNumber::one(),
                CycloNumber::from_int(-1)
            ]
        );

        for n in 1..=5u32 {
            let s = mgamma(GammaDesc::Symmetric(n)).unwrap();
            assert_eq!(s.len() as u64, combinat::mgamma_count(n), "n={n}");
            for i in 0..s.len() {
                let e = s.eigenvalue(i).unwrap();
                assert!(e.as_root_of_unity().is_some());
                let c = s.conj_member(i).unwrap();
                assert_eq!(s.conj_member(c).unwrap(), i);
                assert_eq!(s.eigenvalue(c).unwrap(), e.conj());
            }
        }
        assert_eq!(mgamma(GammaDesc::Symmetric(3)).unwrap().len(), 8);
        assert_eq!(mgamma(GammaDesc::Symmetric(4)).unwrap().len(), 21);
        assert_eq!(mgamma(GammaDesc::Symmetric(5)).unwrap().len(), 39);

        for k in 0..=4u32 {
            let e = mgamma(GammaDesc::Elementary(k)).unwrap();
            assert_eq!(e.len(), 1usize << (2 * k));
            assert!((0..e.len()).all(|i| e.eigenvalue(i).unwrap().is_real()));
            assert!((0..e.len()).all(|i| e.conj_member(i).unwrap() == i));
        }
        assert!(mgamma(GammaDesc::Elementary(5)).is_err());
        assert!(mgamma(GammaDesc::Symmetric(6)).is_err());

        let s3 = mgamma(GammaDesc::Symmetric(3)).unwrap();
        let eigs: Vec<CycloNumber> = (0..8).map(|i| s3.eigenvalue(i).unwrap()).collect();
        assert_eq!(eigs.iter().filter(|e| e.is_one()).count(), 5);
        assert_eq!(
            eigs.iter()
                .filter(|e| **e == CycloNumber::from_int(-1))
                .count(),
            1
        );
        assert!(eigs.contains(&CycloNumber::zeta(3, 1)));
        assert!(eigs.contains(&CycloNumber::zeta(3, 2)));

        let per_class = |s: &MGammaSet| {
            let mut c: HashMap<usize, usize> = HashMap::new();
            for e in s.members() {
                *c.entry(e.cent).or_insert(0) += 1;
            }
            let mut sizes: Vec<usize> = c.into_values().collect();
            sizes.sort();
            sizes
        };
        assert_eq!(
            per_class(&mgamma(GammaDesc::Symmetric(4)).unwrap()),
            [3, 4, 4, 5, 5]
        );
        assert_eq!(
            per_class(&mgamma(GammaDesc::Symmetric(5)).unwrap()),
            [4, 5, 5, 6, 6, 6, 7]
        );
    }

    fn synthetic_big_data(u: &UchSet) -> BigFamilyData {
        let big = u
            .families()
            .iter()
            .find(|f| f.gamma == GammaKind::Big74)
            .unwrap();
        let mut labels: Vec<String> = big
            .members
            .iter()
            .map(|&i| u.member(i).label.to_string())
            .collect();
        let mut eigenvalues = vec![CycloNumber::one(); labels.len()];
        for t in 0..58 {
            labels.push(format!("c{t}"));
            eigenvalues.push(match t {
                0 => CycloNumber::zeta(5, 1),
                1 => CycloNumber::zeta(5, 4),
                2 => CycloNumber::zeta(4, 1),
                3 => CycloNumber::zeta(4, 3),
                _ => CycloNumber::from_int(if t % 2 == 0 { 1 } else { -1 }),
            });
        }
        let fourier: Vec<Vec<CycloNumber>> = (0..74)
            .map(|i| {
                (0..74)
                    .map(|k| {
                        if i == k {
                            CycloNumber::one()
                        } else {
                            CycloNumber::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        BigFamilyData {
            labels,
            eigenvalues,
            fourier,
        }
    }

    #[test]
    fn big_family_ingest_round_trip() {
        let mut u = build(CoxType::H4).unwrap();
        let data = synthetic_big_data(&u);
        u.attach_big_family(&data).unwrap();
        assert_eq!(u.len(), 104);
        let big = u
            .families()
            .iter()
            .find(|f| f.gamma == GammaKind::Big74)
            .unwrap();
        assert_eq!(big.members.len(), 74);
        let names: Vec<String> = big
            .members
            .iter()
            .map(|&i| u.member(i).label.to_string())
            .collect();
        assert_eq!(names, data.labels);
        assert!(u.big_family_matrix().is_some());
        assert_eq!(u.member(big.special).label.to_string(), "phi[24,6]");

        let d = u.delta_involution().unwrap();
        let c0 = u.index_of(&UchLabel::Named("c0".into())).unwrap();
        let c1 = u.index_of(&UchLabel::Named("c1".into())).unwrap();
        assert_eq!(d[c0], c1);
        let c2 = u.index_of(&UchLabel::Named("c2".into())).unwrap();
        let c3 = u.index_of(&UchLabel::Named("c3".into())).unwrap();
        assert_eq!(d[c2], c3);
        let c4 = u.index_of(&UchLabel::Named("c4".into())).unwrap();
        assert_eq!(d[c4], c4);

        assert!(u.attach_big_family(&data).is_err());
    }

    #[test]
    fn big_family_ingest_rejects_bad_data() {
        let u0 = build(CoxType::H4).unwrap();
        let good = synthetic_big_data(&u0);
        let attach = |d: &BigFamilyData| -> Result<()> {
            let mut u = build(CoxType::H4).unwrap();
            u.attach_big_family(d)
        };
        assert!(attach(&good).is_ok());

        let mut u3 = build(CoxType::H3).unwrap();
        assert!(u3.attach_big_family(&good).is_err());

        let mut d = good.clone();
        d.labels.pop();
        assert!(attach(&d).is_err());

        let mut d = good.clone();
        d.labels[17] = d.labels[16].clone();
        assert!(attach(&d).is_err());

        let mut d = good.clone();
        d.labels[0] = "c99".into(); // drops one name inside Irr(W)
        assert!(attach(&d).is_err());

        let mut d = good.clone();
        d.eigenvalues[0] = CycloNumber::from_int(-1);
        assert!(attach(&d).is_err());

        let mut d = good.clone();
        d.eigenvalues[20] = CycloNumber::from_int(2);
        assert!(attach(&d).is_err());

        let mut d = good.clone();
        d.labels[20] = "phi[1,0]".into();
        assert!(attach(&d).is_err());

        let mut d = good.clone();
        d.fourier[0][1] = CycloNumber::one();
        assert!(attach(&d).is_err());

        let mut d = good.clone();
        d.fourier[0][1] = CycloNumber::zeta(5, 1);
        d.fourier[1][0] = CycloNumber::zeta(5, 1);
        assert!(attach(&d).is_err());

        let mut d = good.clone();
        for i in 0..74 {
            d.fourier[i][i] = CycloNumber::from_int(2);
        }
        assert!(attach(&d).is_err());

        // conjugate-eigenvalue pairing must be unambiguous for delta
        let mut d = good.clone();
        d.eigenvalues[18] = CycloNumber::zeta(5, 1);
        d.eigenvalues[19] = CycloNumber::zeta(5, 4);
        let mut u = build(CoxType::H4).unwrap();
        u.attach_big_family(&d).unwrap();
        assert!(u.delta_involution().is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn dihedral_invariants(m in 3u32..=24) {
            let u = build(CoxType::I2(m)).unwrap();
            prop_assert_eq!(u.len(), expected_size(m));
            let d = u.delta_involution().unwrap();
            for i in 0..u.len() {
                prop_assert_eq!(d[d[i]], i);
                prop_assert_eq!(u.member(d[i]).family, u.member(i).family);
            }
            let j = u.j_involution().unwrap();
            prop_assert!(j.iter().enumerate().all(|(i, &x)| x == i));
            for f in u.families() {
                prop_assert_eq!(f.members.iter().filter(|&&i| u.member(i).special).count(), 1);
                prop_assert_eq!(strict_min_e(u.members(), &f.members).unwrap(), f.special);
            }
        }
    }
}
