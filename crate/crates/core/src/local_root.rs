//! Local and global root numbers of `y^2 = x^3 + δ` (j = 0) and
//! `y^2 = x^3 + δx` (j = 1728).
//!
//! The 2- and 3-adic factors are read from fixed residue tables; primes
//! `p >= 5` follow the additive-reduction classification by the
//! ramification degree `e = 12 / gcd(v(Δ), 12)`.

use std::fmt;
use std::ops::{Mul, MulAssign, Neg};

use serde::{Deserialize, Serialize};

use crate::arith::{decompose_j0, decompose_j1728, factorize, kronecker, split_unchecked};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "i8", try_from = "i8")]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn from_i8(v: i8) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    /// For symbols known to be nonzero.
    #[inline]
    pub fn of_symbol(v: i8) -> Sign {
        debug_assert!(v == 1 || v == -1);
        if v < 0 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    #[inline]
    pub fn from_parity(odd: bool) -> Sign {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl From<Sign> for i8 {
    fn from(s: Sign) -> i8 {
        s.as_i8()
    }
}

impl TryFrom<i8> for Sign {
    type Error = String;
    fn try_from(v: i8) -> std::result::Result<Self, Self::Error> {
        Sign::from_i8(v).ok_or_else(|| format!("sign must be +1 or -1, got {v}"))
    }
}

impl Mul for Sign {
    type Output = Sign;
    #[inline]
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl MulAssign for Sign {
    fn mul_assign(&mut self, rhs: Sign) {
        *self = *self * rhs;
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    J0,
    J1728,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::J0 => "j0",
            Family::J1728 => "j1728",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum RootMode {
    #[default]
    PerPrime,
    PaperClosedForm,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEntry {
    /// `"inf"`, a prime, or a symbol such as `(-1/d1)` in closed-form mode.
    pub place: String,
    pub sign: Sign,
    pub rule: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct LocalTrace {
    pub entries: Vec<TraceEntry>,
}

impl LocalTrace {
    fn push(&mut self, place: impl Into<String>, sign: Sign, rule: impl Into<String>) {
        self.entries.push(TraceEntry { place: place.into(), sign, rule: rule.into() });
    }

    pub fn product(&self) -> Sign {
        self.entries.iter().fold(Sign::Plus, |acc, e| acc * e.sign)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootNumber {
    pub sign: Sign,
    pub trace: LocalTrace,
}

fn nonzero(t: i128) -> Result<()> {
    if t == 0 {
        Err(Error::ZeroInput)
    } else {
        Ok(())
    }
}

// Table bodies, shared by the checked entry points and the scan fast path.

#[inline]
fn w2_j0_rule(t: i128) -> (Sign, &'static str) {
    let (v, u) = split_unchecked(t, 2);
    if matches!(v % 6, 0 | 2) {
        (Sign::Minus, "v2 = 0,2 mod 6")
    } else if u.rem_euclid(4) == 3 {
        (Sign::Minus, "v2 = 1,3,4,5 mod 6, t2 = 3 mod 4")
    } else {
        (Sign::Plus, "v2 = 1,3,4,5 mod 6, t2 = 1 mod 4")
    }
}

#[inline]
fn w3_j0_rule(t: i128) -> (Sign, &'static str) {
    let (v, u) = split_unchecked(t, 3);
    let r = v % 6;
    let u3 = u.rem_euclid(3);
    let u9 = u.rem_euclid(9);
    match r {
        1 | 2 if u3 == 1 => (Sign::Minus, "v3 = 1,2 mod 6, t3 = 1 mod 3"),
        4 | 5 if u3 == 2 => (Sign::Minus, "v3 = 4,5 mod 6, t3 = 2 mod 3"),
        0 if u9 == 5 || u9 == 7 => (Sign::Minus, "v3 = 0 mod 6, t3 = 5,7 mod 9"),
        3 if u9 == 2 || u9 == 4 => (Sign::Minus, "v3 = 3 mod 6, t3 = 2,4 mod 9"),
        _ => (Sign::Plus, "otherwise"),
    }
}

#[inline]
fn w2_j1728_rule(t: i128) -> (Sign, &'static str) {
    let (v, u) = split_unchecked(t, 2);
    let u8_ = u.rem_euclid(8);
    let u16_ = u.rem_euclid(16);
    match v % 4 {
        1 if u8_ == 1 || u8_ == 3 => (Sign::Minus, "v2 = 1 mod 4, t2 = 1,3 mod 8"),
        3 if u8_ == 5 || u8_ == 7 => (Sign::Minus, "v2 = 3 mod 4, t2 = 5,7 mod 8"),
        0 if matches!(u16_, 1 | 5 | 9 | 11 | 13 | 15) => {
            (Sign::Minus, "v2 = 0 mod 4, t2 = 1,5,9,11,13,15 mod 16")
        }
        2 if matches!(u16_, 1 | 3 | 5 | 7 | 11 | 15) => {
            (Sign::Minus, "v2 = 2 mod 4, t2 = 1,3,5,7,11,15 mod 16")
        }
        _ => (Sign::Plus, "otherwise"),
    }
}

#[inline]
fn w3_j1728_rule(t: i128) -> (Sign, &'static str) {
    let (v, _) = split_unchecked(t, 3);
    if v % 4 == 2 {
        (Sign::Minus, "v3 = 2 mod 4")
    } else {
        (Sign::Plus, "v3 != 2 mod 4")
    }
}

pub fn w2_j0(t: i128) -> Result<Sign> {
    nonzero(t)?;
    Ok(w2_j0_rule(t).0)
}

pub fn w3_j0(t: i128) -> Result<Sign> {
    nonzero(t)?;
    Ok(w3_j0_rule(t).0)
}

/// Local root number at 2 of `y^2 = x^3 + tx`.
///
/// For `v2(t) = 3 mod 4` the sign is `-1` exactly when `t2 = 5, 7 mod 8`;
/// the same odd-valuation row with `t2 = 1, 3 mod 8` applied to both
/// residues is kept as [`w2_j1728_as_printed`] for comparison.
pub fn w2_j1728(t: i128) -> Result<Sign> {
    nonzero(t)?;
    Ok(w2_j1728_rule(t).0)
}

/// The table variant that uses `t2 = 1, 3 mod 8` for every odd `v2(t)`.
/// It disagrees with [`w2_j1728`] exactly when `v2(t) = 3 mod 4`.
pub fn w2_j1728_as_printed(t: i128) -> Result<Sign> {
    nonzero(t)?;
    let (v, u) = split_unchecked(t, 2);
    if v % 2 == 1 {
        return Ok(Sign::from_parity(matches!(u.rem_euclid(8), 1 | 3)));
    }
    Ok(w2_j1728_rule(t).0)
}

pub fn w3_j1728(t: i128) -> Result<Sign> {
    nonzero(t)?;
    Ok(w3_j1728_rule(t).0)
}

#[inline]
fn wp_ge5_unchecked(p: i128, v: u32, family: Family) -> (Sign, &'static str) {
    match family {
        Family::J0 => match v % 6 {
            0 => (Sign::Plus, "v = 0 mod 6"),
            1 | 3 | 5 => (Sign::of_symbol(kronecker(-1, p)), "v odd: (-1/p)"),
            _ => (Sign::of_symbol(kronecker(-3, p)), "v = 2,4 mod 6: (-3/p)"),
        },
        Family::J1728 => match v % 4 {
            0 => (Sign::Plus, "v = 0 mod 4"),
            2 => (Sign::of_symbol(kronecker(-1, p)), "v = 2 mod 4: (-1/p)"),
            _ => (Sign::of_symbol(kronecker(-2, p)), "v odd: (-2/p)"),
        },
    }
}

pub fn wp_ge5(p: i128, v: u32, family: Family) -> Result<Sign> {
    if p < 5 {
        return Err(Error::BadPrime(p));
    }
    if !crate::arith::is_prime(p as u128) {
        return Err(Error::NotPrime(p));
    }
    Ok(wp_ge5_unchecked(p, v, family).0)
}

pub fn global_root(delta: i128, family: Family, mode: RootMode) -> Result<RootNumber> {
    match family {
        Family::J0 => global_root_j0(delta, mode),
        Family::J1728 => global_root_j1728(delta, mode),
    }
}

pub fn global_root_j0(delta: i128, mode: RootMode) -> Result<RootNumber> {
    nonzero(delta)?;
    let mut trace = LocalTrace::default();
    trace.push("inf", Sign::Minus, "W_inf = -1");
    let (s2, r2) = w2_j0_rule(delta);
    trace.push("2", s2, r2);
    let (s3, r3) = w3_j0_rule(delta);
    trace.push("3", s3, r3);
    match mode {
        RootMode::PerPrime => {
            for &(p, e) in factorize(delta)?.iter().filter(|(p, _)| *p >= 5) {
                let (s, r) = wp_ge5_unchecked(p as i128, e, Family::J0);
                trace.push(p.to_string(), s, format!("v = {e}; {r}"));
            }
        }
        RootMode::PaperClosedForm => {
            let d = decompose_j0(delta)?;
            let s1 = Sign::of_symbol(kronecker(-1, d.d1 as i128));
            trace.push("(-1/d1)", s1, format!("d1 = {}", d.d1));
            let s2 = Sign::of_symbol(kronecker(-3, d.d2 as i128));
            trace.push("(-3/d2)", s2, format!("d2 = {}", d.d2));
        }
    }
    Ok(RootNumber { sign: trace.product(), trace })
}

pub fn global_root_j1728(delta: i128, mode: RootMode) -> Result<RootNumber> {
    nonzero(delta)?;
    let mut trace = LocalTrace::default();
    trace.push("inf", Sign::Minus, "W_inf = -1");
    let (s2, r2) = w2_j1728_rule(delta);
    trace.push("2", s2, r2);
    let (s3, r3) = w3_j1728_rule(delta);
    trace.push("3", s3, r3);
    match mode {
        RootMode::PerPrime => {
            for &(p, e) in factorize(delta)?.iter().filter(|(p, _)| *p >= 5) {
                let (s, r) = wp_ge5_unchecked(p as i128, e, Family::J1728);
                trace.push(p.to_string(), s, format!("v = {e}; {r}"));
            }
        }
        RootMode::PaperClosedForm => {
            let d = decompose_j1728(delta)?;
            let s1 = Sign::of_symbol(kronecker(-2, d.t1 as i128));
            trace.push("(-2/t1)", s1, format!("t1 = {}", d.t1));
            let s2 = Sign::of_symbol(kronecker(-1, d.tau2 as i128));
            trace.push("(-1/tau2)", s2, format!("tau2 = {}", d.tau2));
        }
    }
    Ok(RootNumber { sign: trace.product(), trace })
}

/// Per-prime global root number without building a trace; the scan hot path.
pub fn root_number(delta: i128, family: Family) -> Result<Sign> {
    nonzero(delta)?;
    let mut s = Sign::Minus;
    match family {
        Family::J0 => s *= w2_j0_rule(delta).0 * w3_j0_rule(delta).0,
        Family::J1728 => s *= w2_j1728_rule(delta).0 * w3_j1728_rule(delta).0,
    }
    for &(p, e) in factorize(delta)?.iter().filter(|(p, _)| *p >= 5) {
        s *= wp_ge5_unchecked(p as i128, e, family).0;
    }
    Ok(s)
}

/// Whether the closed form is expected to agree with the per-prime product:
/// always for j = 1728, and for j = 0 when every `p >= 5` has `v_p(δ) <= 3`.
pub fn closed_form_in_domain(delta: i128, family: Family) -> Result<bool> {
    nonzero(delta)?;
    Ok(match family {
        Family::J1728 => true,
        Family::J0 => factorize(delta)?.iter().all(|&(p, e)| p < 5 || e <= 3),
    })
}
