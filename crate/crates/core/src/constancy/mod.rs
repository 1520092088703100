//! Constancy of the fiber root number for the j = 0 and j = 1728 families.
//!
//! Two engines live here. [`classify_j0`] / [`classify_j1728`] read the
//! clause tables literally. [`decide_j0`] / [`decide_j1728`] run an
//! independent p-adic analysis of the local factors and are sound by
//! construction. The audit module compares the two.

pub mod audit;
pub mod local;
pub mod tables;

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::arith::{gcd_i128, exact_sqrt, sigma_invariant, split_unchecked};
use crate::error::{Error, Result};
use crate::local_root::{Family, Sign};

pub use local::{decide, decide_j0, decide_j1728, LocalAnalysis, LocalVerdict};
pub use tables::{ClauseTables, Clause, Feature, Features, Guard, LemmaClauseTable, LemmaId};

/// `(a, b, C)` with `a = 3A^2 C` and `b = B^2 C`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CmRepresentation {
    #[serde(rename = "A")]
    pub a: i128,
    #[serde(rename = "B")]
    pub b: i128,
    #[serde(rename = "C")]
    pub c: i128,
}

/// `y^2 = x^3 + a T^6 + b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawJ0", into = "RawJ0")]
pub struct SurfaceJ0 {
    pub a: i128,
    pub b: i128,
    pub rep: Option<CmRepresentation>,
}

impl SurfaceJ0 {
    pub fn new(a: i128, b: i128) -> Result<SurfaceJ0> {
        if a == 0 || b == 0 {
            return Err(Error::ZeroInput);
        }
        Ok(SurfaceJ0 { a, b, rep: cm_representation(a, b) })
    }

    /// `δ(m, n) = a m^6 + b n^6`; `None` on overflow.
    #[inline]
    pub fn delta(&self, m: i128, n: i128) -> Option<i128> {
        let m6 = pow_checked(m, 6)?;
        let n6 = pow_checked(n, 6)?;
        self.a.checked_mul(m6)?.checked_add(self.b.checked_mul(n6)?)
    }
}

#[derive(Serialize, Deserialize)]
struct RawJ0 {
    a: i128,
    b: i128,
}

impl TryFrom<RawJ0> for SurfaceJ0 {
    type Error = Error;
    fn try_from(r: RawJ0) -> Result<SurfaceJ0> {
        SurfaceJ0::new(r.a, r.b)
    }
}

impl From<SurfaceJ0> for RawJ0 {
    fn from(s: SurfaceJ0) -> RawJ0 {
        RawJ0 { a: s.a, b: s.b }
    }
}

/// `y^2 = x^3 + C (A^2 T^4 + B^2) x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawJ1728")]
pub struct SurfaceJ1728 {
    #[serde(rename = "A")]
    pub a: i128,
    #[serde(rename = "B")]
    pub b: i128,
    #[serde(rename = "C")]
    pub c: i128,
}

impl SurfaceJ1728 {
    pub fn new(a: i128, b: i128, c: i128) -> Result<SurfaceJ1728> {
        if a == 0 || b == 0 || c == 0 {
            return Err(Error::ZeroInput);
        }
        let g = gcd_i128(a, b);
        if g != 1 {
            return Err(Error::NotCoprime(g));
        }
        Ok(SurfaceJ1728 { a, b, c })
    }

    /// `δ(m, n) = C (A^2 m^4 + B^2 n^4)`; `None` on overflow.
    #[inline]
    pub fn delta(&self, m: i128, n: i128) -> Option<i128> {
        let f = self
            .a
            .checked_mul(self.a)?
            .checked_mul(pow_checked(m, 4)?)?
            .checked_add(self.b.checked_mul(self.b)?.checked_mul(pow_checked(n, 4)?)?)?;
        self.c.checked_mul(f)
    }
}

#[derive(Deserialize)]
struct RawJ1728 {
    #[serde(rename = "A")]
    a: i128,
    #[serde(rename = "B")]
    b: i128,
    #[serde(rename = "C")]
    c: i128,
}

impl TryFrom<RawJ1728> for SurfaceJ1728 {
    type Error = Error;
    fn try_from(r: RawJ1728) -> Result<SurfaceJ1728> {
        SurfaceJ1728::new(r.a, r.b, r.c)
    }
}

#[inline]
fn pow_checked(x: i128, e: u32) -> Option<i128> {
    x.checked_pow(e)
}

/// A family of either kind, as consumed by the scanner and the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "FamilySpec", into = "FamilySpec")]
pub enum Surface {
    J0(SurfaceJ0),
    J1728(SurfaceJ1728),
}

/// Flat serialized form of [`Surface`].
#[derive(Serialize, Deserialize)]
struct FamilySpec {
    family: Family,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    a: Option<i128>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    b: Option<i128>,
    #[serde(default, rename = "A", skip_serializing_if = "Option::is_none")]
    big_a: Option<i128>,
    #[serde(default, rename = "B", skip_serializing_if = "Option::is_none")]
    big_b: Option<i128>,
    #[serde(default, rename = "C", skip_serializing_if = "Option::is_none")]
    big_c: Option<i128>,
}

impl TryFrom<FamilySpec> for Surface {
    type Error = String;
    fn try_from(f: FamilySpec) -> std::result::Result<Surface, String> {
        let missing = |n: &str| format!("missing field `{n}`");
        match f.family {
            Family::J0 => SurfaceJ0::new(f.a.ok_or_else(|| missing("a"))?, f.b.ok_or_else(|| missing("b"))?)
                .map(Surface::J0)
                .map_err(|e| e.to_string()),
            Family::J1728 => SurfaceJ1728::new(
                f.big_a.ok_or_else(|| missing("A"))?,
                f.big_b.ok_or_else(|| missing("B"))?,
                f.big_c.ok_or_else(|| missing("C"))?,
            )
            .map(Surface::J1728)
            .map_err(|e| e.to_string()),
        }
    }
}

impl From<Surface> for FamilySpec {
    fn from(s: Surface) -> FamilySpec {
        match s {
            Surface::J0(x) => FamilySpec {
                family: Family::J0,
                a: Some(x.a),
                b: Some(x.b),
                big_a: None,
                big_b: None,
                big_c: None,
            },
            Surface::J1728(x) => FamilySpec {
                family: Family::J1728,
                a: None,
                b: None,
                big_a: Some(x.a),
                big_b: Some(x.b),
                big_c: Some(x.c),
            },
        }
    }
}

impl Surface {
    pub fn family(&self) -> Family {
        match self {
            Surface::J0(_) => Family::J0,
            Surface::J1728(_) => Family::J1728,
        }
    }

    #[inline]
    pub fn delta(&self, m: i128, n: i128) -> Option<i128> {
        match self {
            Surface::J0(s) => s.delta(m, n),
            Surface::J1728(s) => s.delta(m, n),
        }
    }

    pub fn label(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Surface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Surface::J0(s) => write!(f, "j0(a={}, b={})", s.a, s.b),
            Surface::J1728(s) => write!(f, "j1728(A={}, B={}, C={})", s.a, s.b, s.c),
        }
    }
}

/// Find `C, A, B` with `a = 3A^2 C`, `b = B^2 C`, `gcd(A, B) = 1`, `A, B > 0`.
///
/// `C` carries the common sign of `a` and `b` and is `±gcd(a, b)` or
/// `±gcd(a, b)/3`.
pub fn cm_representation(a: i128, b: i128) -> Option<CmRepresentation> {
    if a == 0 || b == 0 || (a > 0) != (b > 0) {
        return None;
    }
    let g = gcd_i128(a, b);
    let sign = if b > 0 { 1 } else { -1 };
    let mut cands = vec![sign * g];
    if g % 3 == 0 {
        cands.push(sign * g / 3);
    }
    for c in cands {
        if a % c != 0 || b % c != 0 {
            continue;
        }
        let (x, y) = (a / c, b / c);
        if x % 3 != 0 {
            continue;
        }
        let (Some(ra), Some(rb)) = (exact_sqrt(x / 3), exact_sqrt(y)) else {
            continue;
        };
        if gcd_i128(ra, rb) == 1 {
            return Some(CmRepresentation { a: ra, b: rb, c });
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum ConstancyVerdict {
    Constant { sign: Sign, trail: Vec<String> },
    Varies { reason: String },
}

impl ConstancyVerdict {
    pub fn constant_sign(&self) -> Option<Sign> {
        match self {
            ConstancyVerdict::Constant { sign, .. } => Some(*sign),
            ConstancyVerdict::Varies { .. } => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.constant_sign().is_some()
    }
}

impl fmt::Display for ConstancyVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstancyVerdict::Constant { sign, trail } => {
                write!(f, "Constant({sign})")?;
                for t in trail {
                    write!(f, "\n  {t}")?;
                }
                Ok(())
            }
            ConstancyVerdict::Varies { reason } => write!(f, "Varies: {reason}"),
        }
    }
}

/// Outcome of one lemma on one surface.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ComponentVerdict {
    Constant { value: Sign, lemma: LemmaId, clause: String },
    Varies { lemma: LemmaId },
}

impl ComponentVerdict {
    pub fn value(&self) -> Option<Sign> {
        match self {
            ComponentVerdict::Constant { value, .. } => Some(*value),
            ComponentVerdict::Varies { .. } => None,
        }
    }

    fn trail_entry(&self) -> String {
        match self {
            ComponentVerdict::Constant { value, lemma, clause } => {
                format!("{lemma} clause {clause}: {value}")
            }
            ComponentVerdict::Varies { lemma } => format!("{lemma}: no clause fires"),
        }
    }
}

/// How `k`, `A'`, `B'` are read in the j = 0 lemma at 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KReading {
    /// valuations at 3
    #[default]
    ThreeAdic,
    /// valuations at 2, as printed
    TwoAdic,
}

pub fn paper_tables() -> &'static ClauseTables {
    static T: OnceLock<ClauseTables> = OnceLock::new();
    T.get_or_init(ClauseTables::paper)
}

fn odd_part(n: i128, p: i128) -> (u32, i128) {
    split_unchecked(n, p)
}

fn residue(n: i128, m: i128) -> i64 {
    n.rem_euclid(m) as i64
}

pub fn features_j0w2(rep: &CmRepresentation) -> Features {
    let (v2c, c2) = odd_part(rep.c, 2);
    Features {
        v2a: split_unchecked(rep.a, 2).0,
        v2b: split_unchecked(rep.b, 2).0,
        v2c,
        c2: residue(c2, 16),
        ..Features::default()
    }
}

pub fn features_j0w3(rep: &CmRepresentation, reading: KReading) -> Features {
    let (v3c, c3) = odd_part(rep.c, 3);
    let (k, ap, bp) = match reading {
        KReading::ThreeAdic => {
            let (va, a3) = odd_part(rep.a, 3);
            let (vb, b3) = odd_part(rep.b, 3);
            if vb == 0 {
                (va, a3, rep.b)
            } else {
                (vb - 1, b3, a3)
            }
        }
        KReading::TwoAdic => {
            let v2a = split_unchecked(rep.a, 2).0;
            let v2b = split_unchecked(rep.b, 2).0;
            let a3 = odd_part(rep.a, 3).1;
            let b3 = odd_part(rep.b, 3).1;
            if v2b == 0 {
                (v2a, a3, b3)
            } else {
                (v2b - 1, b3, a3)
            }
        }
    };
    Features {
        k,
        v3c,
        c3: residue(c3, 9),
        asq: residue(ap * ap, 9),
        bsq: residue(bp * bp, 9),
        ..Features::default()
    }
}

/// `A` is taken to be the even member when one exists; squares are of the
/// odd parts.
pub fn features_j1728w2(s: &SurfaceJ1728) -> Features {
    let (a, b) = if s.b % 2 == 0 { (s.b, s.a) } else { (s.a, s.b) };
    let (k, a2) = odd_part(a, 2);
    let (v2c, c2) = odd_part(s.c, 2);
    let b2 = odd_part(b, 2).1;
    Features {
        k,
        v2c,
        c2: residue(c2, 16),
        asq: residue(a2 * a2, 16),
        bsq: residue(b2 * b2, 16),
        ..Features::default()
    }
}

pub fn features_j1728w3(s: &SurfaceJ1728) -> Features {
    Features {
        v3ab: split_unchecked(s.a, 3).0 + split_unchecked(s.b, 3).0,
        v3c: split_unchecked(s.c, 3).0,
        ..Features::default()
    }
}

fn run_table(table: &LemmaClauseTable, f: &Features) -> ComponentVerdict {
    match table.first_firing(f) {
        Some(c) => ComponentVerdict::Constant {
            value: table.lemma.block_value(c.block, f),
            lemma: table.lemma,
            clause: c.id.clone(),
        },
        None => ComponentVerdict::Varies { lemma: table.lemma },
    }
}

fn rep_of(s: &SurfaceJ0) -> Result<CmRepresentation> {
    s.rep.ok_or(Error::NoCmRepresentation)
}

pub fn classify_w2_j0(s: &SurfaceJ0) -> Result<ComponentVerdict> {
    classify_w2_j0_with(s, paper_tables())
}

pub fn classify_w2_j0_with(s: &SurfaceJ0, t: &ClauseTables) -> Result<ComponentVerdict> {
    Ok(run_table(&t.j0w2, &features_j0w2(&rep_of(s)?)))
}

pub fn classify_w3_j0(s: &SurfaceJ0) -> Result<ComponentVerdict> {
    classify_w3_j0_with(s, paper_tables(), KReading::default())
}

pub fn classify_w3_j0_with(
    s: &SurfaceJ0,
    t: &ClauseTables,
    reading: KReading,
) -> Result<ComponentVerdict> {
    Ok(run_table(&t.j0w3, &features_j0w3(&rep_of(s)?, reading)))
}

pub fn classify_w2_j1728(s: &SurfaceJ1728) -> ComponentVerdict {
    classify_w2_j1728_with(s, paper_tables())
}

pub fn classify_w2_j1728_with(s: &SurfaceJ1728, t: &ClauseTables) -> ComponentVerdict {
    run_table(&t.j1728w2, &features_j1728w2(s))
}

pub fn classify_w3_j1728(s: &SurfaceJ1728) -> ComponentVerdict {
    classify_w3_j1728_with(s, paper_tables())
}

pub fn classify_w3_j1728_with(s: &SurfaceJ1728, t: &ClauseTables) -> ComponentVerdict {
    run_table(&t.j1728w3, &features_j1728w3(s))
}

fn combine(
    sign_c: Sign,
    sigma: u32,
    sigma_label: &str,
    parts: [ComponentVerdict; 2],
) -> ConstancyVerdict {
    let mut trail: Vec<String> = parts.iter().map(|p| p.trail_entry()).collect();
    let (Some(x), Some(y)) = (parts[0].value(), parts[1].value()) else {
        let varying: Vec<String> = parts
            .iter()
            .filter(|p| p.value().is_none())
            .map(|p| p.trail_entry())
            .collect();
        return ConstancyVerdict::Varies { reason: varying.join("; ") };
    };
    let s = Sign::from_parity(sigma % 2 == 1);
    trail.push(format!("sigma ({sigma_label}) = {sigma}: {s}"));
    if sign_c == Sign::Minus {
        trail.push("sign(C) = -1".to_string());
    }
    ConstancyVerdict::Constant { sign: -(sign_c * x * y * s), trail }
}

/// Lemma-literal verdict for `y^2 = x^3 + a T^6 + b`.
pub fn classify_j0(a: i128, b: i128) -> Result<ConstancyVerdict> {
    classify_j0_with(a, b, paper_tables(), KReading::default())
}

pub fn classify_j0_with(
    a: i128,
    b: i128,
    t: &ClauseTables,
    reading: KReading,
) -> Result<ConstancyVerdict> {
    let s = SurfaceJ0::new(a, b)?;
    let Some(rep) = s.rep else {
        return Ok(ConstancyVerdict::Varies {
            reason: "no representation a = 3A^2 C, b = B^2 C (3ab is not a square)".to_string(),
        });
    };
    let sigma = sigma_invariant(rep.c, 2, 3)?;
    let parts = [classify_w2_j0_with(&s, t)?, classify_w3_j0_with(&s, t, reading)?];
    let sign_c = if rep.c > 0 { Sign::Plus } else { Sign::Minus };
    Ok(combine(sign_c, sigma, "p = 2 mod 3", parts))
}

/// Lemma-literal verdict for `y^2 = x^3 + C (A^2 T^4 + B^2) x`.
pub fn classify_j1728(a: i128, b: i128, c: i128) -> Result<ConstancyVerdict> {
    classify_j1728_with(a, b, c, paper_tables())
}

pub fn classify_j1728_with(a: i128, b: i128, c: i128, t: &ClauseTables) -> Result<ConstancyVerdict> {
    let s = SurfaceJ1728::new(a, b, c)?;
    let sigma = sigma_invariant(c, 3, 4)?;
    let parts = [classify_w2_j1728_with(&s, t), classify_w3_j1728_with(&s, t)];
    let sign_c = if c > 0 { Sign::Plus } else { Sign::Minus };
    Ok(combine(sign_c, sigma, "p = 3 mod 4", parts))
}

/// The two lemma outcomes behind a lemma-literal verdict.
pub fn classify_components(s: &Surface, t: &ClauseTables) -> Result<Vec<ComponentVerdict>> {
    match s {
        Surface::J0(x) => {
            if x.rep.is_none() {
                return Ok(Vec::new());
            }
            Ok(vec![classify_w2_j0_with(x, t)?, classify_w3_j0_with(x, t, KReading::default())?])
        }
        Surface::J1728(x) => Ok(vec![classify_w2_j1728_with(x, t), classify_w3_j1728_with(x, t)]),
    }
}

/// Lemma-literal verdict for either family.
pub fn classify(s: &Surface, t: &ClauseTables) -> Result<ConstancyVerdict> {
    match s {
        Surface::J0(x) => classify_j0_with(x.a, x.b, t, KReading::default()),
        Surface::J1728(x) => classify_j1728_with(x.a, x.b, x.c, t),
    }
}
