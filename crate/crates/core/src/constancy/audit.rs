//! Conformance audit of the clause tables.
//!
//! Four checks: clause counts against the printed option counts, pairwise
//! disjointness of clauses over a finite feature domain, coherence of the
//! lemma tables with the theorem lists, and a per-clause comparison with the
//! p-adic local factor computed on concrete surfaces.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::local::{local_factor, LocalValue};
use super::tables::{
    clause, cong, enumerate_domain, w2_groups, w3_block, Clause, ClauseTables, Feature, Features,
    LemmaClauseTable, LemmaId, Sq16, W3Sub,
};
use super::{
    classify, classify_components, features_j0w2, features_j0w3, features_j1728w2,
    features_j1728w3, CmRepresentation, ComponentVerdict, ConstancyVerdict, KReading, Surface,
    SurfaceJ1728,
};
use crate::error::Result;
use crate::local_root::{closed_form_in_domain, global_root, Family, RootMode, Sign};
use crate::scan::{cross_validate_verdict, CrossValidation};

const EXAMPLES: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClauseCount {
    pub lemma: LemmaId,
    pub encoded: usize,
    pub printed: usize,
}

impl ClauseCount {
    pub fn matches(&self) -> bool {
        self.encoded == self.printed
    }
}

pub fn clause_counts(t: &ClauseTables) -> Vec<ClauseCount> {
    LemmaId::ALL
        .iter()
        .map(|&id| ClauseCount { lemma: id, encoded: t.get(id).len(), printed: id.printed_clause_count() })
        .collect()
}

/// Two clauses of one lemma firing on a common feature vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Overlap {
    pub lemma: LemmaId,
    pub first: String,
    pub second: String,
    pub points: usize,
    pub example: Features,
    /// Whether the two clauses announce the same value at `example`.
    pub same_value: bool,
}

/// All overlapping clause pairs of `table` over its enumeration domain.
pub fn overlaps(table: &LemmaClauseTable) -> Vec<Overlap> {
    let mut found: BTreeMap<(usize, usize), Overlap> = BTreeMap::new();
    for f in enumerate_domain(table.lemma) {
        let firing: Vec<usize> = (0..table.clauses.len()).filter(|&i| table.clauses[i].fires(&f)).collect();
        for (x, &i) in firing.iter().enumerate() {
            for &j in &firing[x + 1..] {
                let (ci, cj) = (&table.clauses[i], &table.clauses[j]);
                found
                    .entry((i, j))
                    .or_insert_with(|| Overlap {
                        lemma: table.lemma,
                        first: ci.id.clone(),
                        second: cj.id.clone(),
                        points: 0,
                        example: f,
                        same_value: table.lemma.block_value(ci.block, &f)
                            == table.lemma.block_value(cj.block, &f),
                    })
                    .points += 1;
            }
        }
    }
    found.into_values().collect()
}

/// Value implied at one feature vector by a set of clauses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "sign", rename_all = "lowercase")]
pub enum Implied {
    Varies,
    Value(Sign),
    Conflict,
}

impl Implied {
    fn from_values(vals: impl IntoIterator<Item = Sign>) -> Implied {
        let mut out = Implied::Varies;
        for v in vals {
            out = match out {
                Implied::Varies => Implied::Value(v),
                Implied::Value(s) if s == v => out,
                _ => Implied::Conflict,
            };
        }
        out
    }
}

/// A theorem list whose options imply a fixed value of one lemma's factor.
#[derive(Debug, Clone)]
pub struct TheoremList {
    pub name: &'static str,
    pub value: Sign,
    pub clauses: Vec<Clause>,
}

#[derive(Debug, Clone)]
pub struct TheoremFixture {
    pub name: &'static str,
    pub lemma: LemmaId,
    pub lists: Vec<TheoremList>,
}

impl TheoremFixture {
    fn implied(&self, f: &Features) -> Implied {
        Implied::from_values(
            self.lists
                .iter()
                .filter(|l| l.clauses.iter().any(|c| c.fires(f)))
                .map(|l| l.value),
        )
    }
}

use Feature::*;

fn j0_first_list() -> TheoremFixture {
    // (option, feature, residue mod 3, v2(C) residues mod 6)
    let a: [(&str, Feature, i64, &[i64]); 4] =
        [("2", V2A, 1, &[0, 4]), ("3", V2B, 1, &[0, 2]), ("4", V2A, 2, &[2, 4]), ("5", V2B, 2, &[0, 2])];
    let b: [(&str, Feature, i64, &[i64]); 4] =
        [("2", V2A, 1, &[0, 2]), ("3", V2B, 1, &[0, 4]), ("4", V2A, 2, &[0, 2]), ("5", V2B, 2, &[2, 4])];
    let list = |name: &'static str, c2: i64, value: Sign, rows: [(&str, Feature, i64, &[i64]); 4]| {
        let mut cs = vec![clause(
            format!("{name}.1"),
            1,
            vec![cong(V2A, 3, &[0]), cong(V2B, 3, &[0]), cong(V2C, 6, &[0]), cong(C2, 4, &[c2])],
        )];
        for (opt, feat, r, vs) in rows {
            cs.push(clause(
                format!("{name}.{opt}"),
                1,
                vec![cong(feat, 3, &[r]), cong(V2C, 6, vs), cong(C2, 4, &[c2])],
            ));
        }
        TheoremList { name, value, clauses: cs }
    };
    TheoremFixture {
        name: "j0 first list",
        lemma: LemmaId::J0W2,
        lists: vec![list("A", 3, Sign::Minus, a), list("B", 1, Sign::Plus, b)],
    }
}

fn j0_second_list() -> TheoremFixture {
    use W3Sub::*;
    let mut one = Vec::new();
    w3_block(&mut one, "1.", 1, 0, &[
        Sq(3, [(BSq, 1, &[4]), (BSq, 4, &[1]), (BSq, 7, &[7])]),
        Sq(5, [(ASq, 1, &[2, 8]), (ASq, 4, &[2, 5]), (ASq, 7, &[5, 8])]),
        Sq(0, [(BSq, 1, &[1, 4]), (BSq, 4, &[1, 7]), (BSq, 7, &[4, 7])]),
        Sq(2, [(ASq, 1, &[2]), (ASq, 4, &[5]), (ASq, 7, &[8])]),
    ]);
    w3_block(&mut one, "1.", 1, 1, &[
        Mix(0, [
            (1, ASq, &[1, 4], BSq, 7),
            (2, ASq, &[1, 4], BSq, 7),
            (4, ASq, &[1, 7], BSq, 4),
            (5, ASq, &[4, 7], BSq, 1),
            (7, ASq, &[4, 7], BSq, 1),
            (8, ASq, &[1, 7], BSq, 4),
        ]),
        Coarse(&[1, 4], 1),
        Coarse(&[2, 5], 2),
        Mix(3, [
            (1, BSq, &[1, 4], ASq, 4),
            (2, BSq, &[1, 4], ASq, 1),
            (4, BSq, &[1, 7], ASq, 1),
            (5, BSq, &[4, 7], ASq, 4),
            (7, BSq, &[4, 7], ASq, 7),
            (8, BSq, &[1, 7], ASq, 7),
        ]),
    ]);
    w3_block(&mut one, "1.", 1, 2, &[
        Sq(1, [(ASq, 1, &[1, 4]), (ASq, 4, &[1, 7]), (ASq, 7, &[4, 7])]),
        Sq(3, [(BSq, 1, &[2]), (BSq, 4, &[5]), (BSq, 7, &[8])]),
        Sq(0, [(BSq, 1, &[2, 8]), (BSq, 4, &[2, 5]), (BSq, 7, &[5, 8])]),
        Sq(4, [(ASq, 1, &[4]), (ASq, 4, &[1]), (ASq, 7, &[7])]),
    ]);
    let mut two = Vec::new();
    w3_block(&mut two, "2.", 2, 0, &[
        Sq(0, [(BSq, 1, &[5]), (BSq, 4, &[8]), (BSq, 7, &[2])]),
        Sq(2, [(ASq, 1, &[1, 7]), (ASq, 4, &[4, 7]), (ASq, 7, &[1, 4])]),
        Sq(3, [(BSq, 1, &[5, 8]), (BSq, 4, &[2, 8]), (BSq, 7, &[2, 5])]),
        Sq(5, [(ASq, 1, &[7]), (ASq, 4, &[4]), (ASq, 7, &[1])]),
    ]);
    w3_block(&mut two, "2.", 2, 1, &[
        Mix(0, [
            (1, BSq, &[1, 4], ASq, 7),
            (2, BSq, &[1, 4], ASq, 7),
            (4, BSq, &[1, 7], ASq, 4),
            (5, BSq, &[4, 7], ASq, 1),
            (7, BSq, &[4, 7], ASq, 1),
            (8, BSq, &[1, 7], ASq, 4),
        ]),
        Coarse(&[1, 4], 2),
        Coarse(&[2, 5], 1),
        Mix(3, [
            (1, BSq, &[1, 4], ASq, 4),
            (2, BSq, &[1, 4], ASq, 1),
            (4, BSq, &[1, 7], ASq, 1),
            (5, BSq, &[4, 7], ASq, 4),
            (7, BSq, &[4, 7], ASq, 7),
            (8, BSq, &[1, 7], ASq, 7),
        ]),
    ]);
    w3_block(&mut two, "2.", 2, 2, &[
        Sq(0, [(BSq, 1, &[5]), (BSq, 4, &[8]), (BSq, 7, &[2])]),
        Sq(1, [(ASq, 1, &[5]), (ASq, 4, &[8]), (ASq, 7, &[2])]),
        Sq(3, [(BSq, 1, &[1, 7]), (BSq, 4, &[4, 7]), (BSq, 7, &[1, 4])]),
        Sq(4, [(ASq, 1, &[5, 8]), (ASq, 4, &[2, 8]), (ASq, 7, &[2, 5])]),
    ]);
    TheoremFixture {
        name: "j0 second list",
        lemma: LemmaId::J0W3,
        lists: vec![
            TheoremList { name: "1", value: Sign::Minus, clauses: one },
            TheoremList { name: "2", value: Sign::Plus, clauses: two },
        ],
    }
}

fn j1728_list() -> TheoremFixture {
    use Sq16::*;
    let mut one = Vec::new();
    w2_groups(&mut one, "1.", 1, vec![
        (1, &[0], vec![(16, &[3], Both(1)), (16, &[11], Both(9))]),
        (1, &[1, 3], vec![(16, &[3], Any)]),
        (1, &[2], vec![(16, &[9], Both(9))]),
        (0, &[0], vec![(16, &[5, 13], Any), (16, &[7], Both(9)), (16, &[15], Both(1))]),
        (0, &[2], vec![(16, &[7, 15], Any), (16, &[5], Both(1)), (16, &[13], Both(9))]),
    ]);
    let mut two = Vec::new();
    w2_groups(&mut two, "2.", 2, vec![
        (1, &[0], vec![(16, &[7], Both(1)), (16, &[15], Both(9))]),
        (1, &[1, 3], vec![(16, &[7], Any)]),
        (1, &[2], vec![(16, &[5, 7], Both(1))]),
        (0, &[0, 2], vec![(8, &[7], Both(9))]),
        (0, &[1], vec![(16, &[7, 15], Shift(8))]),
        (0, &[3], vec![(8, &[5], Shift(8))]),
        (1, &[0], vec![(16, &[1, 9], Any), (16, &[3], Both(9)), (16, &[11], Both(1))]),
        (1, &[1, 3], vec![(8, &[1, 3], Any)]),
        (1, &[2], vec![(16, &[3, 11], Any), (16, &[1], Both(1)), (16, &[9], Both(9))]),
        (0, &[0], vec![(16, &[1], B(1)), (16, &[3], A(9)), (16, &[9], B(9)), (16, &[11], A(1))]),
        (0, &[1], vec![(16, &[3, 11], Shift(0))]),
        (0, &[2], vec![(16, &[1], A(1)), (16, &[3], B(9)), (16, &[9], A(9)), (16, &[11], B(1))]),
        (0, &[3], vec![(8, &[1], Shift(0))]),
    ]);
    TheoremFixture {
        name: "j1728 list",
        lemma: LemmaId::J1728W2,
        lists: vec![
            TheoremList { name: "1", value: Sign::Plus, clauses: one },
            TheoremList { name: "2", value: Sign::Minus, clauses: two },
        ],
    }
}

/// The theorem lists, each tied to the lemma factor it determines.
pub fn theorem_fixtures() -> Vec<TheoremFixture> {
    vec![j0_first_list(), j0_second_list(), j1728_list()]
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoherenceExample {
    pub features: Features,
    pub theorem: Implied,
    pub lemma: Implied,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coherence {
    pub fixture: String,
    pub lemma: LemmaId,
    pub points: usize,
    pub mismatches: usize,
    /// Mismatches with every list value negated.
    pub flipped_mismatches: usize,
    pub examples: Vec<CoherenceExample>,
}

/// Compare the value a theorem list implies with the one the lemma table
/// implies, point by point.
pub fn coherence(fixture: &TheoremFixture, t: &ClauseTables) -> Coherence {
    let table = t.get(fixture.lemma);
    let dom = enumerate_domain(fixture.lemma);
    let mut out = Coherence {
        fixture: fixture.name.to_string(),
        lemma: fixture.lemma,
        points: dom.len(),
        mismatches: 0,
        flipped_mismatches: 0,
        examples: Vec::new(),
    };
    for f in dom {
        let theorem = fixture.implied(&f);
        let lemma = Implied::from_values(table.firing(&f).iter().map(|c| table.lemma.block_value(c.block, &f)));
        let flipped = match theorem {
            Implied::Value(s) => Implied::Value(-s),
            x => x,
        };
        if flipped != lemma {
            out.flipped_mismatches += 1;
        }
        if theorem != lemma {
            out.mismatches += 1;
            if out.examples.len() < EXAMPLES {
                out.examples.push(CoherenceExample { features: f, theorem, lemma });
            }
        }
    }
    out
}

/// A concrete surface realizing a feature vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    pub family: Family,
    pub a: i128,
    pub b: i128,
    pub c: i128,
}

impl Instance {
    /// Coefficients of `δ = α m^d + β n^d`.
    fn coefficients(&self) -> (BigInt, BigInt) {
        let (a, b, c) = (BigInt::from(self.a), BigInt::from(self.b), BigInt::from(self.c));
        match self.family {
            Family::J0 => (BigInt::from(3) * &a * &a * &c, &b * &b * &c),
            Family::J1728 => (&a * &a * &c, &b * &b * &c),
        }
    }

    fn features(&self, id: LemmaId) -> Option<Features> {
        let rep = CmRepresentation { a: self.a, b: self.b, c: self.c };
        Some(match id {
            LemmaId::J0W2 => features_j0w2(&rep),
            LemmaId::J0W3 => features_j0w3(&rep, KReading::ThreeAdic),
            LemmaId::J1728W2 => features_j1728w2(&SurfaceJ1728::new(self.a, self.b, self.c).ok()?),
            LemmaId::J1728W3 => features_j1728w3(&SurfaceJ1728::new(self.a, self.b, self.c).ok()?),
        })
    }
}

fn roots_mod(sq: i64, m: i64, candidates: &[i64]) -> Vec<i64> {
    candidates.iter().copied().filter(|x| (x * x).rem_euclid(m) == sq).collect()
}

fn pairs(xs: &[i64], ys: &[i64], want: usize) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for (i, &x) in xs.iter().enumerate() {
        let y = ys[(i + 1) % ys.len()];
        if x.gcd(&y) == 1 {
            out.push((x, y));
        }
    }
    for &x in xs {
        for &y in ys {
            if out.len() >= want {
                return out;
            }
            if x.gcd(&y) == 1 && !out.contains(&(x, y)) {
                out.push((x, y));
            }
        }
    }
    out.truncate(want);
    out
}

/// Surfaces whose lemma features equal `f`.
pub fn instances(id: LemmaId, f: &Features) -> Vec<Instance> {
    let p2 = |e: u32| 2i128.pow(e);
    let p3 = |e: u32| 3i128.pow(e);
    let mut out = Vec::new();
    match id {
        LemmaId::J0W2 => {
            for (x, y) in [(1i128, 1i128), (3, 5), (7, 3)] {
                for c in [f.c2 as i128, f.c2 as i128 - 16] {
                    out.push(Instance { family: Family::J0, a: p2(f.v2a) * x, b: p2(f.v2b) * y, c: p2(f.v2c) * c });
                }
            }
        }
        LemmaId::J0W3 => {
            let cands = [1, 2, 4, 5, 7, 8, 10, 11, 13];
            let xs = roots_mod(f.asq, 9, &cands);
            let ys = roots_mod(f.bsq, 9, &cands);
            let c = p3(f.v3c) * f.c3 as i128;
            for (x, y) in pairs(&xs, &ys, 2) {
                let (x, y) = (x as i128, y as i128);
                out.push(Instance { family: Family::J0, a: p3(f.k) * x, b: y, c });
                out.push(Instance { family: Family::J0, a: y, b: p3(f.k + 1) * x, c });
            }
        }
        LemmaId::J1728W2 => {
            let odd: Vec<i64> = (1..16).step_by(2).collect();
            let xs = roots_mod(f.asq, 16, &odd);
            let ys = roots_mod(f.bsq, 16, &odd);
            for (x, y) in pairs(&xs, &ys, 2) {
                for c in [f.c2 as i128, f.c2 as i128 - 16] {
                    out.push(Instance {
                        family: Family::J1728,
                        a: p2(f.k) * x as i128,
                        b: y as i128,
                        c: p2(f.v2c) * c,
                    });
                }
            }
        }
        LemmaId::J1728W3 => {
            let t = p3(f.v3ab);
            for (a, b) in [(t, 1), (t, 2), (2, t)] {
                for c in [1i128, 2, -1, 5] {
                    out.push(Instance { family: Family::J1728, a, b, c: p3(f.v3c) * c });
                }
            }
        }
    }
    out.retain(|i| i.features(id).as_ref() == Some(f));
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalWitness {
    pub instance: Instance,
    pub claimed: Option<Sign>,
    pub local: Vec<LocalValue>,
}

/// Outcome of one clause on every instance where it fires.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClauseCheck {
    pub clause: String,
    pub instances: usize,
    pub contradicted: usize,
    pub counterexample: Option<LocalWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalConformance {
    pub lemma: LemmaId,
    pub points: usize,
    pub instances: usize,
    /// Domain points with no constructed instance.
    pub unrealized: usize,
    pub clauses: Vec<ClauseCheck>,
    /// Points where no clause fires yet every instance has a constant factor.
    pub missing: usize,
    pub missing_examples: Vec<LocalWitness>,
}

impl LocalConformance {
    pub fn contradicted_clauses(&self) -> usize {
        self.clauses.iter().filter(|c| c.contradicted > 0).count()
    }
}

struct PointResult {
    instances: usize,
    per_clause: Vec<(usize, bool, Option<LocalWitness>)>,
    missing: Option<LocalWitness>,
}

fn check_point(table: &LemmaClauseTable, f: &Features) -> Result<PointResult> {
    let id = table.lemma;
    let insts = instances(id, f);
    let firing: Vec<usize> = (0..table.clauses.len()).filter(|&i| table.clauses[i].fires(f)).collect();
    let mut res = PointResult { instances: insts.len(), per_clause: Vec::new(), missing: None };
    let mut all_constant = !insts.is_empty();
    let mut first_const = None;
    for inst in insts {
        let (alpha, beta) = inst.coefficients();
        let lv = local_factor(inst.family, id.prime() as u64, &alpha, &beta)?;
        let got = lv.constant();
        if got.is_none() {
            all_constant = false;
        } else if first_const.is_none() {
            first_const = Some(LocalWitness { instance: inst.clone(), claimed: None, local: lv.values.clone() });
        }
        for &ci in &firing {
            let claimed = id.block_value(table.clauses[ci].block, f);
            let bad = got != Some(claimed);
            let wit = bad.then(|| LocalWitness { instance: inst.clone(), claimed: Some(claimed), local: lv.values.clone() });
            res.per_clause.push((ci, bad, wit));
        }
    }
    if firing.is_empty() && all_constant {
        res.missing = first_const;
    }
    Ok(res)
}

/// Compare every clause of `table` with the local factor on surfaces
/// realizing each domain point.
pub fn local_conformance(table: &LemmaClauseTable) -> Result<LocalConformance> {
    let dom = enumerate_domain(table.lemma);
    let results: Vec<Result<PointResult>> = dom.par_iter().map(|f| check_point(table, f)).collect();
    let mut checks: Vec<ClauseCheck> = table
        .clauses
        .iter()
        .map(|c| ClauseCheck { clause: c.id.clone(), instances: 0, contradicted: 0, counterexample: None })
        .collect();
    let mut out = LocalConformance {
        lemma: table.lemma,
        points: dom.len(),
        instances: 0,
        unrealized: 0,
        clauses: Vec::new(),
        missing: 0,
        missing_examples: Vec::new(),
    };
    for r in results {
        let r = r?;
        out.instances += r.instances;
        if r.instances == 0 {
            out.unrealized += 1;
        }
        for (ci, bad, wit) in r.per_clause {
            let c = &mut checks[ci];
            c.instances += 1;
            if bad {
                c.contradicted += 1;
                if c.counterexample.is_none() {
                    c.counterexample = wit;
                }
            }
        }
        if let Some(w) = r.missing {
            out.missing += 1;
            if out.missing_examples.len() < EXAMPLES {
                out.missing_examples.push(w);
            }
        }
    }
    out.clauses = checks;
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedFormCheck {
    pub family: Family,
    pub limit: i128,
    pub checked: usize,
    pub disagreements: usize,
    /// Disagreements where the closed form is expected to hold.
    pub in_domain: usize,
    pub examples: Vec<i128>,
}

/// Closed-form root number against the per-prime product for `0 < |δ| ≤ limit`.
pub fn closed_form_check(family: Family, limit: i128) -> Result<ClosedFormCheck> {
    let mut out = ClosedFormCheck { family, limit, checked: 0, disagreements: 0, in_domain: 0, examples: Vec::new() };
    for d in (-limit..=limit).filter(|&d| d != 0) {
        out.checked += 1;
        let a = global_root(d, family, RootMode::PerPrime)?.sign;
        let b = global_root(d, family, RootMode::PaperClosedForm)?.sign;
        if a != b {
            out.disagreements += 1;
            if closed_form_in_domain(d, family)? {
                out.in_domain += 1;
            }
            if out.examples.len() < EXAMPLES * 2 {
                out.examples.push(d);
            }
        }
    }
    Ok(out)
}

/// A literal verdict checked against a fiber census.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanFlag {
    pub surface: Surface,
    pub verdict: ConstancyVerdict,
    pub clauses: Vec<String>,
    pub outcome: CrossValidation,
}

pub fn scan_flag(surface: &Surface, h: u32, t: &ClauseTables) -> Result<ScanFlag> {
    let verdict = classify(surface, t)?;
    let clauses = classify_components(surface, t)?
        .into_iter()
        .filter_map(|c| match c {
            ComponentVerdict::Constant { lemma, clause, .. } => Some(format!("{lemma} {clause}")),
            ComponentVerdict::Varies { .. } => None,
        })
        .collect();
    let outcome = cross_validate_verdict(surface, &verdict, h)?;
    Ok(ScanFlag { surface: *surface, verdict, clauses, outcome })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConformanceReport {
    pub counts: Vec<ClauseCount>,
    pub overlaps: Vec<Overlap>,
    pub coherence: Vec<Coherence>,
    pub local: Vec<LocalConformance>,
    pub closed_form: Vec<ClosedFormCheck>,
    pub scans: Vec<ScanFlag>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditOptions {
    pub local: bool,
    pub closed_form_limit: i128,
    pub scan_height: u32,
    pub surfaces: Vec<Surface>,
}

impl Default for AuditOptions {
    fn default() -> Self {
        AuditOptions { local: true, closed_form_limit: 2000, scan_height: 20, surfaces: Vec::new() }
    }
}

pub fn audit(t: &ClauseTables, opts: &AuditOptions) -> Result<ConformanceReport> {
    let mut report = ConformanceReport {
        counts: clause_counts(t),
        overlaps: LemmaId::ALL.iter().flat_map(|&id| overlaps(t.get(id))).collect(),
        coherence: theorem_fixtures().iter().map(|fx| coherence(fx, t)).collect(),
        local: Vec::new(),
        closed_form: Vec::new(),
        scans: Vec::new(),
    };
    if opts.local {
        for id in LemmaId::ALL {
            report.local.push(local_conformance(t.get(id))?);
        }
    }
    if opts.closed_form_limit > 0 {
        for fam in [Family::J0, Family::J1728] {
            report.closed_form.push(closed_form_check(fam, opts.closed_form_limit)?);
        }
    }
    for s in &opts.surfaces {
        report.scans.push(scan_flag(s, opts.scan_height, t)?);
    }
    Ok(report)
}

impl ConformanceReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "clause counts");
        for c in &self.counts {
            let mark = if c.matches() { "ok" } else { "MISMATCH" };
            let _ = writeln!(s, "  {}: {} encoded, {} printed ({mark})", c.lemma, c.encoded, c.printed);
        }
        let _ = writeln!(s, "overlapping clauses: {}", self.overlaps.len());
        for o in &self.overlaps {
            let _ = writeln!(
                s,
                "  {} {} / {}: {} points, {} values",
                o.lemma,
                o.first,
                o.second,
                o.points,
                if o.same_value { "equal" } else { "opposite" }
            );
        }
        let _ = writeln!(s, "theorem coherence");
        for c in &self.coherence {
            let _ = writeln!(
                s,
                "  {} vs {}: {} of {} points differ ({} with the list values negated)",
                c.fixture, c.lemma, c.mismatches, c.points, c.flipped_mismatches
            );
        }
        if !self.local.is_empty() {
            let _ = writeln!(s, "local factor conformance");
        }
        for l in &self.local {
            let _ = writeln!(
                s,
                "  {}: {} instances, {} of {} clauses contradicted, {} uncovered constant points",
                l.lemma,
                l.instances,
                l.contradicted_clauses(),
                l.clauses.len(),
                l.missing
            );
            for c in l.clauses.iter().filter(|c| c.contradicted > 0) {
                let _ = write!(s, "    {}: {}/{}", c.clause, c.contradicted, c.instances);
                if let Some(w) = &c.counterexample {
                    let vals: Vec<String> = w.local.iter().map(|v| v.sign.to_string()).collect();
                    let _ = write!(
                        s,
                        " e.g. (A, B, C) = ({}, {}, {}) claims {} but g takes {}",
                        w.instance.a,
                        w.instance.b,
                        w.instance.c,
                        w.claimed.map_or("-".into(), |x| x.to_string()),
                        vals.join(", ")
                    );
                }
                s.push('\n');
            }
        }
        for c in &self.closed_form {
            let _ = writeln!(
                s,
                "closed form {:?} |delta| <= {}: {} disagreements ({} inside the expected domain)",
                c.family, c.limit, c.disagreements, c.in_domain
            );
        }
        for f in &self.scans {
            let tag = match &f.outcome {
                CrossValidation::Agree { .. } => "agrees",
                CrossValidation::SoundnessViolation { .. } => "CONTRADICTED",
                CrossValidation::WitnessNotFound { .. } => "no witness",
            };
            let _ = writeln!(s, "scan {}: {} [{}] {tag}", f.surface, f.verdict, f.clauses.join(", "));
        }
        s
    }
}
