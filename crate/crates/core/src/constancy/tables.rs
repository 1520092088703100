//! Clause tables for the four local lemmas, stored as data.
//!
//! Each clause is a conjunction of guards over a small feature vector. A
//! clause belongs to block 1 or block 2; the block fixes the constant value
//! (see [`LemmaId::block_value`]).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::kronecker;
use crate::local_root::Sign;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LemmaId {
    J0W2,
    J0W3,
    J1728W2,
    J1728W3,
}

impl LemmaId {
    pub const ALL: [LemmaId; 4] = [LemmaId::J0W2, LemmaId::J0W3, LemmaId::J1728W2, LemmaId::J1728W3];

    pub fn name(self) -> &'static str {
        match self {
            LemmaId::J0W2 => "j0w2",
            LemmaId::J0W3 => "j0w3",
            LemmaId::J1728W2 => "j1728w2",
            LemmaId::J1728W3 => "j1728w3",
        }
    }

    /// The prime whose local factor the lemma describes.
    pub fn prime(self) -> u32 {
        match self {
            LemmaId::J0W2 | LemmaId::J1728W2 => 2,
            LemmaId::J0W3 | LemmaId::J1728W3 => 3,
        }
    }

    /// Number of enumerated options in the printed lemma.
    pub fn printed_clause_count(self) -> usize {
        match self {
            LemmaId::J0W2 => 13,
            LemmaId::J0W3 => 76,
            LemmaId::J1728W2 => 25,
            LemmaId::J1728W3 => 2,
        }
    }

    /// Constant value announced for a clause of `block`, given the features.
    pub fn block_value(self, block: u8, f: &Features) -> Sign {
        match self {
            LemmaId::J0W2 => Sign::of_symbol(kronecker(-1, f.c2 as i128)),
            LemmaId::J0W3 => Sign::from_parity((f.v3c + u32::from(block == 1)) % 2 == 1),
            LemmaId::J1728W2 => {
                let s = Sign::of_symbol(kronecker(-2, f.c2 as i128));
                if block == 1 {
                    s
                } else {
                    -s
                }
            }
            LemmaId::J1728W3 => {
                if block == 1 {
                    Sign::Plus
                } else {
                    Sign::Minus
                }
            }
        }
    }
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Feature {
    /// `v2(A)`
    V2A,
    /// `v2(B)`
    V2B,
    K,
    V2C,
    V3C,
    /// `v3(AB)`
    V3AB,
    /// odd part of `C`, signed
    C2,
    /// prime-to-3 part of `C`, signed
    C3,
    /// `A'^2` (j = 0) or `A^2` with the 2-part removed (j = 1728)
    ASq,
    BSq,
}

/// Everything a clause guard may look at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Features {
    pub v2a: u32,
    pub v2b: u32,
    pub k: u32,
    pub v2c: u32,
    pub v3c: u32,
    pub v3ab: u32,
    pub c2: i64,
    pub c3: i64,
    pub asq: i64,
    pub bsq: i64,
}

impl Features {
    pub fn get(&self, f: Feature) -> i64 {
        match f {
            Feature::V2A => self.v2a as i64,
            Feature::V2B => self.v2b as i64,
            Feature::K => self.k as i64,
            Feature::V2C => self.v2c as i64,
            Feature::V3C => self.v3c as i64,
            Feature::V3AB => self.v3ab as i64,
            Feature::C2 => self.c2,
            Feature::C3 => self.c3,
            Feature::ASq => self.asq,
            Feature::BSq => self.bsq,
        }
    }

    pub fn set(&mut self, f: Feature, v: i64) {
        match f {
            Feature::V2A => self.v2a = v as u32,
            Feature::V2B => self.v2b = v as u32,
            Feature::K => self.k = v as u32,
            Feature::V2C => self.v2c = v as u32,
            Feature::V3C => self.v3c = v as u32,
            Feature::V3AB => self.v3ab = v as u32,
            Feature::C2 => self.c2 = v,
            Feature::C3 => self.c3 = v,
            Feature::ASq => self.asq = v,
            Feature::BSq => self.bsq = v,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "guard", rename_all = "snake_case")]
pub enum Guard {
    /// `feature mod modulus ∈ residues`
    Cong { feature: Feature, modulus: i64, residues: Vec<i64> },
    /// `lhs ≡ rhs + offset (mod modulus)`
    Diff { lhs: Feature, rhs: Feature, modulus: i64, offset: i64 },
}

impl Guard {
    pub fn holds(&self, f: &Features) -> bool {
        match self {
            Guard::Cong { feature, modulus, residues } => {
                let r = f.get(*feature).rem_euclid(*modulus);
                residues.iter().any(|&x| x.rem_euclid(*modulus) == r)
            }
            Guard::Diff { lhs, rhs, modulus, offset } => {
                (f.get(*lhs) - f.get(*rhs) - offset).rem_euclid(*modulus) == 0
            }
        }
    }

    pub fn features(&self) -> Vec<Feature> {
        match self {
            Guard::Cong { feature, .. } => vec![*feature],
            Guard::Diff { lhs, rhs, .. } => vec![*lhs, *rhs],
        }
    }
}

impl fmt::Display for Guard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Guard::Cong { feature, modulus, residues } => {
                let rs: Vec<String> = residues.iter().map(|r| r.to_string()).collect();
                write!(f, "{feature:?} = {} mod {modulus}", rs.join(","))
            }
            Guard::Diff { lhs, rhs, modulus, offset } => {
                write!(f, "{lhs:?} = {rhs:?} + {offset} mod {modulus}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Clause {
    pub id: String,
    pub block: u8,
    pub guards: Vec<Guard>,
}

impl Clause {
    pub fn fires(&self, f: &Features) -> bool {
        self.guards.iter().all(|g| g.holds(f))
    }

    pub fn describe(&self) -> String {
        let gs: Vec<String> = self.guards.iter().map(|g| g.to_string()).collect();
        format!("{} [block {}]: {}", self.id, self.block, gs.join(" & "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaClauseTable {
    pub lemma: LemmaId,
    pub clauses: Vec<Clause>,
}

impl LemmaClauseTable {
    pub fn first_firing(&self, f: &Features) -> Option<&Clause> {
        self.clauses.iter().find(|c| c.fires(f))
    }

    pub fn firing(&self, f: &Features) -> Vec<&Clause> {
        self.clauses.iter().filter(|c| c.fires(f)).collect()
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }
}

/// The four tables together; the unit of substitution for audits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClauseTables {
    pub j0w2: LemmaClauseTable,
    pub j0w3: LemmaClauseTable,
    pub j1728w2: LemmaClauseTable,
    pub j1728w3: LemmaClauseTable,
}

impl ClauseTables {
    pub fn paper() -> ClauseTables {
        ClauseTables {
            j0w2: j0w2_table(),
            j0w3: j0w3_table(),
            j1728w2: j1728w2_table(),
            j1728w3: j1728w3_table(),
        }
    }

    pub fn get(&self, id: LemmaId) -> &LemmaClauseTable {
        match id {
            LemmaId::J0W2 => &self.j0w2,
            LemmaId::J0W3 => &self.j0w3,
            LemmaId::J1728W2 => &self.j1728w2,
            LemmaId::J1728W3 => &self.j1728w3,
        }
    }
}

impl Default for ClauseTables {
    fn default() -> Self {
        ClauseTables::paper()
    }
}

// Builders.

pub(crate) fn cong(feature: Feature, modulus: i64, residues: &[i64]) -> Guard {
    Guard::Cong { feature, modulus, residues: residues.to_vec() }
}

pub(crate) fn diff(lhs: Feature, rhs: Feature, modulus: i64, offset: i64) -> Guard {
    Guard::Diff { lhs, rhs, modulus, offset }
}

pub(crate) fn clause(id: impl Into<String>, block: u8, guards: Vec<Guard>) -> Clause {
    Clause { id: id.into(), block, guards }
}

use Feature::*;

fn j0w2_table() -> LemmaClauseTable {
    let mut cs = vec![clause(
        "1",
        1,
        vec![cong(V2A, 3, &[0]), cong(V2B, 3, &[0]), cong(V2C, 6, &[0])],
    )];
    // (option, feature, residue, [(v2C, C2 mod 4 or none)])
    let rows: [(&str, Feature, i64, [Option<i64>; 3]); 4] = [
        ("2", V2A, 1, [None, Some(1), Some(3)]),
        ("3", V2B, 1, [None, Some(3), Some(1)]),
        ("4", V2A, 2, [Some(1), None, Some(3)]),
        ("5", V2B, 2, [Some(3), None, Some(1)]),
    ];
    for (opt, feat, r, subs) in rows {
        for (i, (v, c)) in [0i64, 2, 4].iter().zip(subs).enumerate() {
            let mut g = vec![cong(feat, 3, &[r]), cong(V2C, 6, &[*v])];
            if let Some(c) = c {
                g.push(cong(C2, 4, &[c]));
            }
            cs.push(clause(format!("{opt}.{}", letter(i)), 1, g));
        }
    }
    LemmaClauseTable { lemma: LemmaId::J0W2, clauses: cs }
}

fn letter(i: usize) -> char {
    (b'a' + i as u8) as char
}

fn roman(i: usize) -> &'static str {
    ["i", "ii", "iii", "iv", "v", "vi"][i]
}

/// A `(square feature, square residue, C3 residues mod 9)` row.
type SqRow = (Feature, i64, &'static [i64]);
/// A `C3 mod 9; X'^2 ∈ set; Y'^2 = value` row.
type MixRow = (i64, Feature, &'static [i64], Feature, i64);

pub(crate) enum W3Sub {
    Sq(i64, [SqRow; 3]),
    Mix(i64, [MixRow; 6]),
    /// `v3(C) ∈ set` and `C3 ≡ r mod 3`
    Coarse(&'static [i64], i64),
}

pub(crate) fn w3_block(
    cs: &mut Vec<Clause>,
    prefix: &str,
    block: u8,
    k: i64,
    subs: &[W3Sub],
) {
    for (si, sub) in subs.iter().enumerate() {
        let base = format!("{prefix}{}.{}", k + 1, letter(si));
        match sub {
            W3Sub::Sq(v, rows) => {
                for (ri, (f, sq, c3)) in rows.iter().enumerate() {
                    cs.push(clause(
                        format!("{base}.{}", roman(ri)),
                        block,
                        vec![
                            cong(K, 3, &[k]),
                            cong(V3C, 6, &[*v]),
                            cong(*f, 9, &[*sq]),
                            cong(C3, 9, c3),
                        ],
                    ));
                }
            }
            W3Sub::Mix(v, rows) => {
                for (ri, (c3, fx, xs, fy, y)) in rows.iter().enumerate() {
                    cs.push(clause(
                        format!("{base}.{}", roman(ri)),
                        block,
                        vec![
                            cong(K, 3, &[k]),
                            cong(V3C, 6, &[*v]),
                            cong(C3, 9, &[*c3]),
                            cong(*fx, 9, xs),
                            cong(*fy, 9, &[*y]),
                        ],
                    ));
                }
            }
            W3Sub::Coarse(vs, r) => {
                cs.push(clause(
                    base,
                    block,
                    vec![cong(K, 3, &[k]), cong(V3C, 6, vs), cong(C3, 3, &[*r])],
                ));
            }
        }
    }
}

fn j0w3_table() -> LemmaClauseTable {
    use W3Sub::*;
    let mut cs = Vec::new();
    // first block: w3 = (-1)^(v3(C)+1)
    w3_block(&mut cs, "I.", 1, 0, &[
        Sq(0, [(BSq, 1, &[5]), (BSq, 4, &[8]), (BSq, 7, &[2])]),
        Sq(2, [(ASq, 1, &[1, 7]), (ASq, 4, &[4, 7]), (ASq, 7, &[1, 4])]),
        Sq(3, [(BSq, 1, &[4]), (BSq, 4, &[1]), (BSq, 7, &[7])]),
        Sq(5, [(ASq, 1, &[2, 8]), (ASq, 4, &[2, 5]), (ASq, 7, &[5, 8])]),
    ]);
    w3_block(&mut cs, "I.", 1, 1, &[
        Mix(0, [
            (1, BSq, &[1, 4], ASq, 7),
            (2, BSq, &[1, 4], ASq, 7),
            (4, BSq, &[1, 7], ASq, 4),
            (5, BSq, &[4, 7], ASq, 1),
            (7, BSq, &[4, 7], ASq, 1),
            (8, BSq, &[1, 7], ASq, 4),
        ]),
        Coarse(&[1, 2], 1),
        Mix(3, [
            (1, BSq, &[1, 4], ASq, 4),
            (2, BSq, &[1, 4], ASq, 1),
            (4, BSq, &[1, 7], ASq, 1),
            (5, BSq, &[4, 7], ASq, 4),
            (7, BSq, &[4, 7], ASq, 7),
            (8, BSq, &[1, 7], ASq, 7),
        ]),
        Coarse(&[4, 5], 2),
    ]);
    w3_block(&mut cs, "I.", 1, 2, &[
        Sq(0, [(BSq, 1, &[5]), (BSq, 4, &[8]), (BSq, 7, &[2])]),
        Sq(1, [(ASq, 1, &[1, 4]), (ASq, 4, &[1, 7]), (ASq, 7, &[4, 7])]),
        Sq(3, [(BSq, 1, &[2]), (BSq, 4, &[5]), (BSq, 7, &[8])]),
        Sq(4, [(ASq, 1, &[5, 8]), (ASq, 4, &[2, 8]), (ASq, 7, &[2, 5])]),
    ]);
    // second block: w3 = (-1)^v3(C)
    w3_block(&mut cs, "II.", 2, 0, &[
        Sq(0, [(BSq, 1, &[1, 4]), (BSq, 4, &[1, 7]), (BSq, 7, &[4, 7])]),
        Sq(2, [(ASq, 1, &[2]), (ASq, 4, &[5]), (ASq, 7, &[8])]),
        Sq(3, [(BSq, 1, &[5, 8]), (BSq, 4, &[2, 8]), (BSq, 7, &[2, 5])]),
        Sq(5, [(ASq, 1, &[7]), (ASq, 4, &[4]), (ASq, 7, &[1])]),
    ]);
    w3_block(&mut cs, "II.", 2, 1, &[
        Mix(0, [
            (1, ASq, &[1, 4], BSq, 7),
            (2, ASq, &[1, 4], BSq, 7),
            (4, ASq, &[1, 7], BSq, 4),
            (5, ASq, &[4, 7], BSq, 1),
            (7, ASq, &[4, 7], BSq, 1),
            (8, ASq, &[1, 7], BSq, 4),
        ]),
        Coarse(&[1, 2], 2),
        Mix(3, [
            (1, BSq, &[1, 4], ASq, 4),
            (2, BSq, &[1, 4], ASq, 1),
            (4, BSq, &[1, 7], ASq, 1),
            (5, BSq, &[4, 7], ASq, 4),
            (7, BSq, &[4, 7], ASq, 7),
            (8, BSq, &[1, 7], ASq, 7),
        ]),
        Coarse(&[4, 5], 2),
    ]);
    w3_block(&mut cs, "II.", 2, 2, &[
        Sq(0, [(BSq, 1, &[2, 8]), (BSq, 4, &[2, 5]), (BSq, 7, &[5, 8])]),
        Sq(1, [(ASq, 1, &[5]), (ASq, 4, &[8]), (ASq, 7, &[2])]),
        Sq(3, [(BSq, 1, &[1, 7]), (BSq, 4, &[4, 7]), (BSq, 7, &[1, 4])]),
        Sq(4, [(ASq, 1, &[4]), (ASq, 4, &[1]), (ASq, 7, &[7])]),
    ]);
    LemmaClauseTable { lemma: LemmaId::J0W3, clauses: cs }
}

/// Residues of `A^2` and `B^2` (odd parts) modulo 16.
#[derive(Clone, Copy)]
pub(crate) enum Sq16 {
    Any,
    Both(i64),
    A(i64),
    B(i64),
    /// `A^2 ≡ B^2 + offset (mod 16)`
    Shift(i64),
}

impl Sq16 {
    fn guards(self) -> Vec<Guard> {
        match self {
            Sq16::Any => vec![],
            Sq16::Both(r) => vec![cong(ASq, 16, &[r]), cong(BSq, 16, &[r])],
            Sq16::A(r) => vec![cong(ASq, 16, &[r])],
            Sq16::B(r) => vec![cong(BSq, 16, &[r])],
            Sq16::Shift(o) => vec![diff(ASq, BSq, 16, o)],
        }
    }
}

/// `(k parity, v2(C) residues mod 4, [(C2 modulus, C2 residues, squares)])`
pub(crate) type W2Group = (i64, &'static [i64], Vec<(i64, &'static [i64], Sq16)>);

pub(crate) fn w2_groups(cs: &mut Vec<Clause>, prefix: &str, block: u8, groups: Vec<W2Group>) {
    for (gi, (kpar, vs, rows)) in groups.into_iter().enumerate() {
        for (ri, (m, rs, sq)) in rows.into_iter().enumerate() {
            let mut g = vec![cong(K, 2, &[kpar]), cong(V2C, 4, vs), cong(C2, m, rs)];
            g.extend(sq.guards());
            cs.push(clause(format!("{prefix}{}.{}", gi + 1, roman(ri)), block, g));
        }
    }
}

fn j1728w2_table() -> LemmaClauseTable {
    use Sq16::*;
    let mut cs = Vec::new();
    // first list: w2 = (-2/C2)
    w2_groups(&mut cs, "I.", 1, vec![
        (1, &[0], vec![(16, &[3, 7], Both(1)), (16, &[11, 15], Both(9))]),
        (1, &[1, 3], vec![(16, &[3, 7], Any)]),
        (1, &[2], vec![(16, &[5, 7], Both(1)), (16, &[9, 13], Both(9))]),
        (0, &[0, 2], vec![(8, &[7], Both(9))]),
        (0, &[1], vec![(16, &[7, 15], Shift(8))]),
        (0, &[3], vec![(8, &[5], Shift(8))]),
    ]);
    // second list: w2 = -(-2/C2)
    w2_groups(&mut cs, "II.", 2, vec![
        (1, &[0], vec![
            (16, &[1, 5, 9, 13], Any),
            (16, &[3, 7], Both(9)),
            (16, &[11, 15], Both(1)),
        ]),
        (1, &[1, 3], vec![(8, &[1, 3], Any)]),
        (1, &[2], vec![
            (16, &[3, 7, 11, 15], Any),
            (16, &[1, 5], Both(1)),
            (16, &[9, 13], Both(9)),
        ]),
        (0, &[0], vec![
            (16, &[1], B(1)),
            (16, &[3], A(9)),
            (16, &[9], B(9)),
            (16, &[11], A(1)),
        ]),
        (0, &[1], vec![(16, &[3, 11], Shift(0))]),
        (0, &[2], vec![
            (16, &[1], A(1)),
            (16, &[3], B(9)),
            (16, &[9], A(9)),
            (16, &[11], B(1)),
        ]),
        (0, &[3], vec![(8, &[1], Shift(0))]),
    ]);
    LemmaClauseTable { lemma: LemmaId::J1728W2, clauses: cs }
}

fn j1728w3_table() -> LemmaClauseTable {
    LemmaClauseTable {
        lemma: LemmaId::J1728W3,
        clauses: vec![
            clause("even", 1, vec![cong(V3AB, 2, &[0]), cong(V3C, 4, &[0, 1, 3])]),
            clause("even.v3C=2", 2, vec![cong(V3AB, 2, &[0]), cong(V3C, 4, &[2])]),
        ],
    }
}

/// Finite domain used to enumerate each lemma's guards exhaustively.
pub fn enumeration_domain(id: LemmaId) -> Vec<(Feature, Vec<i64>)> {
    let odd16: Vec<i64> = (1..16).step_by(2).collect();
    let units9: Vec<i64> = vec![1, 2, 4, 5, 7, 8];
    let sq9 = vec![1, 4, 7];
    match id {
        LemmaId::J0W2 => vec![
            (V2A, (0..6).collect()),
            (V2B, (0..6).collect()),
            (V2C, (0..12).collect()),
            (C2, odd16),
        ],
        LemmaId::J0W3 => vec![
            (K, (0..6).collect()),
            (V3C, (0..12).collect()),
            (C3, units9),
            (ASq, sq9.clone()),
            (BSq, sq9),
        ],
        LemmaId::J1728W2 => vec![
            (K, (0..6).collect()),
            (V2C, (0..12).collect()),
            (C2, odd16),
            (ASq, vec![1, 9]),
            (BSq, vec![1, 9]),
        ],
        LemmaId::J1728W3 => vec![(V3AB, (0..6).collect()), (V3C, (0..12).collect())],
    }
}

/// All feature vectors of the domain; for j0w2 pairs with both `v2(A)` and
/// `v2(B)` positive are skipped since `A` and `B` are coprime.
pub fn enumerate_domain(id: LemmaId) -> Vec<Features> {
    let dom = enumeration_domain(id);
    let mut out = vec![Features::default()];
    for (feat, vals) in &dom {
        let mut next = Vec::with_capacity(out.len() * vals.len());
        for f in &out {
            for &v in vals {
                let mut g = *f;
                g.set(*feat, v);
                next.push(g);
            }
        }
        out = next;
    }
    if id == LemmaId::J0W2 {
        out.retain(|f| f.v2a == 0 || f.v2b == 0);
    }
    out
}
