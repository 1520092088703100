//! Height-bounded fiber census and cross-validation of verdicts.

use std::fmt::Write as _;

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::constancy::{classify, paper_tables, ConstancyVerdict, Surface};
use crate::error::{Error, Result};
use crate::local_root::{root_number, Sign};

/// Coprime `(m, n)` with `|m| ≤ H`, `1 ≤ n ≤ H`, ordered by `(n, m)`.
pub fn enumerate_fibers(h: u32) -> impl Iterator<Item = (i128, i128)> {
    enumerate_fibers_with(h, false)
}

/// As [`enumerate_fibers`], optionally starting with the point `(1, 0)` at
/// infinity.
pub fn enumerate_fibers_with(h: u32, include_infinity: bool) -> impl Iterator<Item = (i128, i128)> {
    let h = h as i128;
    let inf = include_infinity.then_some((1i128, 0i128));
    inf.into_iter().chain((1..=h).flat_map(move |n| {
        (-h..=h).filter(move |m| m.gcd(&n) == 1).map(move |m| (m, n))
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberSample {
    pub m: i128,
    pub n: i128,
    pub delta: i128,
    pub sign: Sign,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub family: Surface,
    #[serde(rename = "H")]
    pub h: u32,
    pub wplus: u64,
    pub wminus: u64,
    pub skipped: u64,
    pub constant_observed: bool,
    pub witnesses: Vec<FiberSample>,
}

impl ScanReport {
    pub fn total(&self) -> u64 {
        self.wplus + self.wminus + self.skipped
    }

    pub fn observed_sign(&self) -> Option<Sign> {
        match (self.wplus, self.wminus) {
            (0, 0) => None,
            (_, 0) => Some(Sign::Plus),
            (0, _) => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn witness(&self, sign: Sign) -> Option<&FiberSample> {
        self.witnesses.iter().find(|w| w.sign == sign)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("family,H,wplus,wminus,skipped,constant_observed,m,n,delta,sign\n");
        let head = format!(
            "\"{}\",{},{},{},{},{}",
            self.family, self.h, self.wplus, self.wminus, self.skipped, self.constant_observed
        );
        if self.witnesses.is_empty() {
            let _ = writeln!(out, "{head},,,,");
        }
        for w in &self.witnesses {
            let _ = writeln!(out, "{head},{},{},{},{}", w.m, w.n, w.delta, w.sign.as_i8());
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "{} H={}: W+ = {}, W- = {}, skipped = {}, constant observed: {}",
            self.family, self.h, self.wplus, self.wminus, self.skipped, self.constant_observed
        );
        for w in &self.witnesses {
            let _ = write!(s, "\n  {} at (m, n) = ({}, {}), delta = {}", w.sign, w.m, w.n, w.delta);
        }
        s
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ScanOptions {
    /// Worker count; `None` uses the available parallelism.
    pub threads: Option<usize>,
}

const CHUNK: usize = 2048;

fn sign_of(surface: &Surface, m: i128, n: i128) -> Result<Option<(i128, Sign)>> {
    let delta = surface.delta(m, n).ok_or(Error::Overflow("fiber discriminant"))?;
    if delta == 0 {
        return Ok(None);
    }
    Ok(Some((delta, root_number(delta, surface.family())?)))
}

fn with_pool<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(f()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| Error::Internal(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}

/// Full census at height `H`.
pub fn scan(surface: &Surface, h: u32, opts: ScanOptions) -> Result<ScanReport> {
    let fibers: Vec<(i128, i128)> = enumerate_fibers(h).collect();
    let signs: Vec<Result<Option<(i128, Sign)>>> = with_pool(opts.threads, || {
        fibers
            .par_chunks(CHUNK)
            .map(|chunk| chunk.iter().map(|&(m, n)| sign_of(surface, m, n)).collect::<Vec<_>>())
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect()
    })?;
    let mut report = ScanReport {
        family: *surface,
        h,
        wplus: 0,
        wminus: 0,
        skipped: 0,
        constant_observed: false,
        witnesses: Vec::new(),
    };
    let width = 2 * h as usize + 1;
    let mut row: Vec<Option<Sign>> = vec![None; width];
    let mut current_n = 0i128;
    for (&(m, n), s) in fibers.iter().zip(signs) {
        if n != current_n {
            row.iter_mut().for_each(|x| *x = None);
            current_n = n;
        }
        match s? {
            None => report.skipped += 1,
            Some((delta, sign)) => {
                match sign {
                    Sign::Plus => report.wplus += 1,
                    Sign::Minus => report.wminus += 1,
                }
                if report.witness(sign).is_none() {
                    report.witnesses.push(FiberSample { m, n, delta, sign });
                }
                // both families are even in T
                let mirror = (h as i128 - m) as usize;
                if m > 0 {
                    if let Some(other) = row[mirror] {
                        if other != sign {
                            return Err(Error::Internal(format!("sign({m}, {n}) != sign({}, {n})", -m)));
                        }
                    }
                }
                row[(h as i128 + m) as usize] = Some(sign);
            }
        }
    }
    report.constant_observed = report.wplus == 0 || report.wminus == 0;
    Ok(report)
}

/// First fibers of each sign, stopping as soon as both are seen.
pub fn find_both_signs(surface: &Surface, h: u32) -> Result<(Option<FiberSample>, Option<FiberSample>)> {
    let mut plus = None;
    let mut minus = None;
    for (m, n) in enumerate_fibers(h) {
        if let Some((delta, sign)) = sign_of(surface, m, n)? {
            let slot = if sign == Sign::Plus { &mut plus } else { &mut minus };
            if slot.is_none() {
                *slot = Some(FiberSample { m, n, delta, sign });
            }
            if plus.is_some() && minus.is_some() {
                break;
            }
        }
    }
    Ok((plus, minus))
}

/// First fiber whose sign differs from `s`.
pub fn find_counterexample(surface: &Surface, s: Sign, h: u32) -> Result<Option<FiberSample>> {
    for (m, n) in enumerate_fibers(h) {
        if let Some((delta, sign)) = sign_of(surface, m, n)? {
            if sign != s {
                return Ok(Some(FiberSample { m, n, delta, sign }));
            }
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CrossValidation {
    Agree { witnesses: Vec<FiberSample> },
    SoundnessViolation { claimed: Sign, witness: FiberSample },
    WitnessNotFound { observed: Option<Sign> },
}

impl CrossValidation {
    pub fn is_violation(&self) -> bool {
        matches!(self, CrossValidation::SoundnessViolation { .. })
    }
}

/// Check a verdict against the fibers up to height `H`.
pub fn cross_validate_verdict(surface: &Surface, verdict: &ConstancyVerdict, h: u32) -> Result<CrossValidation> {
    match verdict.constant_sign() {
        Some(s) => Ok(match find_counterexample(surface, s, h)? {
            Some(w) => CrossValidation::SoundnessViolation { claimed: s, witness: w },
            None => CrossValidation::Agree { witnesses: Vec::new() },
        }),
        None => Ok(match find_both_signs(surface, h)? {
            (Some(p), Some(q)) => CrossValidation::Agree { witnesses: vec![p, q] },
            (p, q) => CrossValidation::WitnessNotFound { observed: p.or(q).map(|w| w.sign) },
        }),
    }
}

/// Cross-validate the lemma-literal classifier.
pub fn cross_validate(surface: &Surface, h: u32) -> Result<CrossValidation> {
    let v = classify(surface, paper_tables())?;
    cross_validate_verdict(surface, &v, h)
}
