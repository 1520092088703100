//! Sound constancy decision through the local factors.
//!
//! Write `δ(m, n) = α m^d + β n^d` (d = 6 for j = 0, d = 4 for j = 1728).
//! Pulling the Kronecker symbols of the prime-to-6 part of `δ` into the
//! factors at 2 and 3 gives
//!
//! `W(m, n) = -sign(δ) · g_2 · g_3 · ∏_{p ≥ 5} g_p`
//!
//! where `g_2 = W_2 (-1/δ_2)`, `g_3 = W_3 (-1)^{v_3 δ}` for j = 0,
//! `g_2 = W_2 (-2/δ_2)`, `g_3 = W_3` for j = 1728, and for `p ≥ 5` the factor
//! `g_p` is `(-3/p)` (resp. `(-1/p)`) when `v_p(δ) ≡ 2, 4 mod 6`
//! (resp. `≡ 2 mod 4`) and `1` otherwise. Each `g_p` is a locally constant
//! function on `P^1(Q_p)`, so by weak approximation `W` is constant iff every
//! `g_p` is. Only primes dividing `6αβ` can contribute a non-constant
//! factor.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{factorize, kronecker, pow_mod, split_unchecked};
use crate::error::{Error, Result};
use crate::local_root::{w2_j0, w2_j1728, w3_j0, w3_j1728, Family, Sign};

use super::{cm_representation, ConstancyVerdict, SurfaceJ1728};

const MAX_DEPTH: u32 = 512;

/// One observed value of a local factor, with a fiber realizing it when the
/// analysis produced one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalValue {
    pub sign: Sign,
    pub valuation: u32,
    pub witness: Option<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalVerdict {
    pub prime: u64,
    pub values: Vec<LocalValue>,
    /// Residue classes visited (tree) or valuations examined (closed form).
    pub explored: usize,
}

impl LocalVerdict {
    pub fn constant(&self) -> Option<Sign> {
        match self.values.as_slice() {
            [v] => Some(v.sign),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalAnalysis {
    pub family: Family,
    pub alpha: String,
    pub beta: String,
    pub places: Vec<LocalVerdict>,
    pub verdict: ConstancyVerdict,
}

/// `g_p` evaluated on an integer with the same `p`-adic data as `δ`.
fn g_small(family: Family, p: u64, delta: i128) -> Sign {
    match (family, p) {
        (Family::J0, 2) => {
            let (_, u) = split_unchecked(delta, 2);
            w2_j0(delta).expect("nonzero") * Sign::of_symbol(kronecker(-1, u))
        }
        (Family::J0, 3) => {
            let (v, _) = split_unchecked(delta, 3);
            w3_j0(delta).expect("nonzero") * Sign::from_parity(v % 2 == 1)
        }
        (Family::J1728, 2) => {
            let (_, u) = split_unchecked(delta, 2);
            w2_j1728(delta).expect("nonzero") * Sign::of_symbol(kronecker(-2, u))
        }
        (Family::J1728, 3) => w3_j1728(delta).expect("nonzero"),
        _ => unreachable!("g_small is only used at 2 and 3"),
    }
}

/// `g_p` for `p ≥ 5`, which depends on `v_p(δ)` only.
pub fn g_large(family: Family, p: u64, v: u32) -> Sign {
    let p = p as i128;
    match family {
        Family::J0 if matches!(v % 6, 2 | 4) => Sign::of_symbol(kronecker(-3, p)),
        Family::J1728 if v % 4 == 2 => Sign::of_symbol(kronecker(-1, p)),
        _ => Sign::Plus,
    }
}

fn degree(family: Family) -> u32 {
    match family {
        Family::J0 => 6,
        Family::J1728 => 4,
    }
}

/// Precision in the unit part needed to fix `g_p`: `p^r`.
fn unit_precision(family: Family, p: u64) -> u32 {
    match (family, p) {
        (Family::J0, 2) | (Family::J0, 3) => 2,
        (Family::J1728, 2) => 4,
        _ => 0,
    }
}

fn vp_big(x: &BigInt, p: u64) -> (u32, BigInt) {
    let pb = BigInt::from(p);
    let mut v = 0;
    let mut u = x.clone();
    while !u.is_zero() && (&u % &pb).is_zero() {
        u /= &pb;
        v += 1;
    }
    (v, u)
}

struct Recorder {
    values: Vec<LocalValue>,
}

impl Recorder {
    fn record(&mut self, sign: Sign, valuation: u32, witness: Option<(String, String)>) -> bool {
        if !self.values.iter().any(|v| v.sign == sign) {
            self.values.push(LocalValue { sign, valuation, witness });
        }
        self.values.len() > 1
    }
}

/// Lower bound for `v_p(F(t0 + p^k x) - F(t0))` where `F(t) = lead t^d + c`,
/// from the Taylor expansion at `t0`.
fn increment_bound(lead_v: u32, t0: &BigInt, k: u32, d: u32, p: u64) -> u32 {
    let vt = if t0.is_zero() { None } else { Some(vp_big(t0, p).0) };
    let mut binom = 1u64;
    let mut best = u32::MAX;
    for i in 1..=d {
        binom = binom * u64::from(d - i + 1) / u64::from(i);
        let vb = vp_big(&BigInt::from(binom), p).0;
        let rest = match (i == d, vt) {
            (true, _) => 0,
            (false, Some(v)) => (d - i) * v,
            (false, None) => continue,
        };
        best = best.min(lead_v + vb + rest + i * k);
    }
    best
}

/// Exhaustive class tree on `P^1(Z_p)` for `p ∈ {2, 3}`.
fn tree(family: Family, p: u64, alpha: &BigInt, beta: &BigInt) -> Result<LocalVerdict> {
    let d = degree(family);
    let r = unit_precision(family, p).max(1);
    let pb = BigInt::from(p);
    let modulus_r = BigInt::from(p.pow(r));
    let mut rec = Recorder { values: Vec::new() };
    let mut explored = 0usize;
    let (va, vb) = (vp_big(alpha, p).0, vp_big(beta, p).0);
    // (affine chart?, representative, depth k meaning class mod p^k)
    let mut work: Vec<(bool, BigInt, u32)> = (0..p).map(|t| (true, BigInt::from(t), 1)).collect();
    work.push((false, BigInt::zero(), 1));
    work.reverse();
    while let Some((affine, t0, k)) = work.pop() {
        explored += 1;
        if k > MAX_DEPTH {
            return Err(Error::LocalAnalysisDiverged(p));
        }
        let val = if affine {
            alpha * t0.pow(d) + beta
        } else {
            alpha + beta * t0.pow(d)
        };
        if !val.is_zero() {
            let (v, u) = vp_big(&val, p);
            let lead_v = if affine { va } else { vb };
            if v + r <= increment_bound(lead_v, &t0, k, d, p) {
                let unit = u.mod_floor(&modulus_r).to_i128().expect("small");
                let surrogate = (p as i128).pow(v % 12) * unit;
                let sign = g_small(family, p, surrogate);
                let (m, n) = if affine {
                    (t0.to_string(), "1".to_string())
                } else {
                    ("1".to_string(), t0.to_string())
                };
                if rec.record(sign, v, Some((m, n))) {
                    break;
                }
                continue;
            }
        }
        let step = pb.pow(k);
        for j in (0..p).rev() {
            work.push((affine, &t0 + &step * j, k + 1));
        }
    }
    Ok(LocalVerdict { prime: p, values: rec.values, explored })
}

/// Is `x` a nonzero `d`-th power residue modulo the prime `p`?
fn is_dth_power(x: &BigInt, d: u32, p: u64) -> bool {
    let r = x.mod_floor(&BigInt::from(p)).to_u128().expect("reduced");
    if r == 0 {
        return false;
    }
    let g = (d as u64).gcd(&(p - 1));
    pow_mod(r, ((p - 1) / g) as u128, p as u128) == 1
}

/// Achievable `v_p(α m^d + β n^d)` for primitive `(m, n)`: a finite set and
/// an optional start of an unbounded tail.
pub fn valuation_set(alpha: &BigInt, beta: &BigInt, d: u32, p: u64) -> (BTreeSet<u32>, Option<u32>) {
    let (av, au) = vp_big(alpha, p);
    let (bv, bu) = vp_big(beta, p);
    let ratio_is_power = {
        // -β'/α' mod p
        let pb = BigInt::from(p);
        let inv = au.mod_floor(&pb).modpow(&BigInt::from(p - 2), &pb);
        is_dth_power(&(-(&bu * inv)), d, p)
    };
    let only_one_power_class = (d as u64).is_multiple_of(p - 1);
    let mut finite = BTreeSet::new();
    let mut tail: Option<u32> = None;
    let mut visit = |x: u32, y: u32| {
        if x != y {
            finite.insert(x.min(y));
        } else {
            if !(ratio_is_power && only_one_power_class) {
                finite.insert(x);
            }
            if ratio_is_power {
                tail = Some(tail.map_or(x + 1, |t: u32| t.min(x + 1)));
            }
        }
    };
    for j in 0..=(bv / d + 2) {
        visit(av + d * j, bv);
    }
    for j in 1..=(av / d + 2) {
        visit(av, bv + d * j);
    }
    (finite, tail)
}

fn closed_form(family: Family, p: u64, alpha: &BigInt, beta: &BigInt) -> LocalVerdict {
    let (finite, tail) = valuation_set(alpha, beta, degree(family), p);
    let mut vals: Vec<u32> = finite.into_iter().collect();
    if let Some(t) = tail {
        vals.extend(t..t + 12);
    }
    let mut rec = Recorder { values: Vec::new() };
    for &v in &vals {
        if rec.record(g_large(family, p, v), v, None) {
            break;
        }
    }
    LocalVerdict { prime: p, values: rec.values, explored: vals.len() }
}

/// The local factor `g_p` of the family `α m^d + β n^d` over `P^1(Q_p)`.
pub fn local_factor(family: Family, p: u64, alpha: &BigInt, beta: &BigInt) -> Result<LocalVerdict> {
    if alpha.is_zero() || beta.is_zero() {
        return Err(Error::ZeroInput);
    }
    if p == 2 || p == 3 {
        tree(family, p, alpha, beta)
    } else {
        Ok(closed_form(family, p, alpha, beta))
    }
}

fn primes_of(xs: &[i128]) -> Result<BTreeSet<u64>> {
    let mut ps: BTreeSet<u64> = [2, 3].into_iter().collect();
    for &x in xs {
        for &(p, _) in factorize(x)?.iter() {
            ps.insert(p as u64);
        }
    }
    Ok(ps)
}

fn assemble(
    family: Family,
    alpha: BigInt,
    beta: BigInt,
    primes: BTreeSet<u64>,
    sign_delta: Sign,
) -> Result<LocalAnalysis> {
    let mut places = Vec::new();
    let mut varying = Vec::new();
    let mut sign = -sign_delta;
    let mut trail = vec![format!("-sign(delta) = {}", -sign_delta)];
    for p in primes {
        let lv = local_factor(family, p, &alpha, &beta)?;
        match lv.constant() {
            Some(s) => {
                sign *= s;
                if p < 5 || s == Sign::Minus {
                    trail.push(format!("g_{p} = {s} on P^1(Q_{p})"));
                }
            }
            None => {
                let wit: Vec<String> = lv
                    .values
                    .iter()
                    .map(|v| match &v.witness {
                        Some((m, n)) => format!("{} at (m, n) = ({m}, {n})", v.sign),
                        None => format!("{} at v_{p} = {}", v.sign, v.valuation),
                    })
                    .collect();
                varying.push(format!("g_{p} takes {}", wit.join(" and ")));
            }
        }
        places.push(lv);
    }
    let verdict = if varying.is_empty() {
        ConstancyVerdict::Constant { sign, trail }
    } else {
        ConstancyVerdict::Varies { reason: varying.join("; ") }
    };
    Ok(LocalAnalysis { family, alpha: alpha.to_string(), beta: beta.to_string(), places, verdict })
}

/// Local analysis of `y^2 = x^3 + a T^6 + b`.
pub fn analyze_j0(a: i128, b: i128) -> Result<LocalAnalysis> {
    if a == 0 || b == 0 {
        return Err(Error::ZeroInput);
    }
    if cm_representation(a, b).is_none() {
        // infinitely many primes carry a varying factor
        return Ok(LocalAnalysis {
            family: Family::J0,
            alpha: a.to_string(),
            beta: b.to_string(),
            places: Vec::new(),
            verdict: ConstancyVerdict::Varies {
                reason: "3ab is not a square: the root number varies".to_string(),
            },
        });
    }
    let primes = primes_of(&[a, b])?;
    let sign_delta = if a > 0 { Sign::Plus } else { Sign::Minus };
    assemble(Family::J0, BigInt::from(a), BigInt::from(b), primes, sign_delta)
}

/// Local analysis of `y^2 = x^3 + C (A^2 T^4 + B^2) x`.
pub fn analyze_j1728(a: i128, b: i128, c: i128) -> Result<LocalAnalysis> {
    let s = SurfaceJ1728::new(a, b, c)?;
    let primes = primes_of(&[s.a, s.b, s.c])?;
    let cb = BigInt::from(s.c);
    let alpha = &cb * BigInt::from(s.a).pow(2);
    let beta = &cb * BigInt::from(s.b).pow(2);
    let sign_delta = if s.c > 0 { Sign::Plus } else { Sign::Minus };
    assemble(Family::J1728, alpha, beta, primes, sign_delta)
}

pub fn decide_j0(a: i128, b: i128) -> Result<ConstancyVerdict> {
    Ok(analyze_j0(a, b)?.verdict)
}

pub fn decide_j1728(a: i128, b: i128, c: i128) -> Result<ConstancyVerdict> {
    Ok(analyze_j1728(a, b, c)?.verdict)
}

pub fn decide(s: &super::Surface) -> Result<ConstancyVerdict> {
    match s {
        super::Surface::J0(x) => decide_j0(x.a, x.b),
        super::Surface::J1728(x) => decide_j1728(x.a, x.b, x.c),
    }
}

/// `(m, n)` as small integers, when the witness fits.
pub fn witness_pair(v: &LocalValue) -> Option<(i128, i128)> {
    let (m, n) = v.witness.as_ref()?;
    Some((m.parse().ok()?, n.parse().ok()?))
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::local_root::root_number;

    fn brute_signs(family: Family, delta: impl Fn(i128, i128) -> i128, h: i128) -> BTreeSet<i8> {
        let mut s = BTreeSet::new();
        for n in 1..=h {
            for m in -h..=h {
                if num_integer::gcd(m, n) != 1 {
                    continue;
                }
                let d = delta(m, n);
                if d != 0 {
                    s.insert(root_number(d, family).unwrap().as_i8());
                }
            }
        }
        s
    }

    #[test]
    fn worked_examples() {
        // all three j = 0 worked examples against direct computation
        for (a, b) in [(1053i128, 39i128), (405, 15), (27, 16)] {
            let v = decide_j0(a, b).unwrap();
            let seen = brute_signs(Family::J0, |m, n| a * m.pow(6) + b * n.pow(6), 12);
            match v.constant_sign() {
                Some(s) => assert_eq!(seen, [s.as_i8()].into_iter().collect(), "{a},{b}"),
                None => assert_eq!(seen.len(), 2, "{a},{b}"),
            }
        }
        assert_eq!(decide_j0(27, 16).unwrap().constant_sign(), Some(Sign::Plus));
        assert!(!decide_j0(1053, 39).unwrap().is_constant());
        assert!(!decide_j0(1, 1).unwrap().is_constant());
        assert_eq!(decide_j1728(1, 1, 1).unwrap().constant_sign(), Some(Sign::Plus));
        assert!(!decide_j1728(3, 5, 7).unwrap().is_constant());
        assert!(!decide_j1728(3, 5, 11).unwrap().is_constant());
    }

    #[test]
    fn varying_factor_witnesses_reproduce() {
        let an = analyze_j1728(3, 5, 7).unwrap();
        let varying: Vec<&LocalVerdict> = an.places.iter().filter(|p| p.constant().is_none()).collect();
        assert!(varying.iter().any(|p| p.prime == 3));
        for lv in varying {
            for v in &lv.values {
                let (m, n) = witness_pair(v).unwrap();
                let d = 7 * (9 * m.pow(4) + 25 * n.pow(4));
                let (vp, _) = split_unchecked(d, lv.prime as i128);
                assert_eq!(vp, v.valuation);
                assert_eq!(g_small(Family::J1728, lv.prime, d), v.sign);
            }
        }
    }

    #[test]
    fn valuation_sets() {
        // m^4 + 9 n^4 at p = 3: 0 (m unit), 2 (3 | m... no: m unit only) ...
        let (f, t) = valuation_set(&BigInt::from(1), &BigInt::from(9), 4, 3);
        assert_eq!(f, [0, 2].into_iter().collect());
        assert_eq!(t, None);
        // 5 | beta, d = 6: v in {0, 1}
        let (f, t) = valuation_set(&BigInt::from(1), &BigInt::from(5), 6, 5);
        assert_eq!(f, [0, 1].into_iter().collect());
        assert_eq!(t, None);
        // m^4 + n^4 at 17: -1 is a 4th power mod 17, simple roots, all v
        let (f, t) = valuation_set(&BigInt::from(1), &BigInt::from(1), 4, 17);
        assert_eq!(f, [0].into_iter().collect());
        assert_eq!(t, Some(1));
        // m^4 + 4 n^4 at 5: u^4 = 1 for every unit so 1 + 4 u^4 = 0 mod 5
        let (f, t) = valuation_set(&BigInt::from(1), &BigInt::from(4), 4, 5);
        assert!(!f.contains(&0) || t.is_some());
    }

    #[test]
    fn valuation_sets_against_brute_force() {
        for (a, b, d, p) in [(1i128, 25i128, 4u32, 5u64), (7, 49, 6, 7), (3, 11 * 11, 6, 11), (1, 4, 4, 5), (2, 7, 6, 7)] {
            let (f, t) = valuation_set(&BigInt::from(a), &BigInt::from(b), d, p);
            let mut seen = BTreeSet::new();
            for n in 1..=60i128 {
                for m in -60..=60i128 {
                    if num_integer::gcd(m, n) != 1 {
                        continue;
                    }
                    let x = a * m.pow(d) + b * n.pow(d);
                    if x != 0 {
                        let (v, _) = split_unchecked(x, p as i128);
                        seen.insert(v);
                    }
                }
            }
            for v in &seen {
                assert!(f.contains(v) || t.is_some_and(|t| *v >= t), "{a} {b} {d} {p}: {v}");
            }
            for v in &f {
                assert!(seen.contains(v), "{a} {b} {d} {p}: predicted {v} not seen");
            }
        }
    }
}
