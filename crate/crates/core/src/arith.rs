//! Integer arithmetic on the fiber coefficient: p-adic splits, Kronecker
//! symbols, factorization, and the two δ-decompositions used by the
//! closed-form root-number products.
//!
//! Everything here works on `i128`. Fiber coefficients of the scanned
//! families stay far below `2^63`; the factorization routines remain
//! correct up to `2^127` (with a slower modular multiplication above `2^64`).

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `n = prime^valuation * unit` with `prime ∤ unit`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PadicSplit {
    pub prime: i128,
    pub valuation: u32,
    pub unit: i128,
}

/// Prime factorization of `|n|`, ascending by prime.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorMultiset(pub Vec<(u128, u32)>);

impl FactorMultiset {
    pub fn iter(&self) -> impl Iterator<Item = &(u128, u32)> {
        self.0.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent_of(&self, p: u128) -> u32 {
        self.0
            .iter()
            .find(|(q, _)| *q == p)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    /// Product of `p^e`; `None` on overflow.
    pub fn product(&self) -> Option<u128> {
        self.0.iter().try_fold(1u128, |acc, &(p, e)| {
            acc.checked_mul(p.checked_pow(e)?)
        })
    }
}

/// `2^{v2} 3^{v3} d1 d2^2 = |δ|`, with `d1` collecting odd exponents and
/// `d2` half of the even exponents, over primes `p >= 5`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaDecompositionJ0 {
    pub v2: u32,
    pub v3: u32,
    pub d1: u128,
    pub d2: u128,
}

/// Squarefree markers for `j = 1728`: `t1 = ∏{p >= 5 : v_p odd}`,
/// `tau2 = ∏{p >= 5 : v_p ≡ 2 mod 4}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaDecompositionJ1728 {
    pub v2: u32,
    pub v3: u32,
    pub t1: u128,
    pub tau2: u128,
}

/// Valuation and unit part without any primality check. `n` must be nonzero
/// and `p >= 2`.
#[inline]
pub fn split_unchecked(mut n: i128, p: i128) -> (u32, i128) {
    debug_assert!(n != 0 && p >= 2);
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    (v, n)
}

pub fn padic_split(n: i128, p: i128) -> Result<PadicSplit> {
    if n == 0 {
        return Err(Error::ZeroInput);
    }
    if p < 2 || !is_prime(p as u128) {
        return Err(Error::NotPrime(p));
    }
    let (valuation, unit) = split_unchecked(n, p);
    Ok(PadicSplit { prime: p, valuation, unit })
}

/// Kronecker symbol `(a/n)`, defined for all integers.
pub fn kronecker(a: i128, n: i128) -> i8 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    let mut result: i8 = 1;
    let mut m = n.unsigned_abs();
    if n < 0 && a < 0 {
        result = -result;
    }
    let tz = m.trailing_zeros();
    if tz > 0 {
        if a % 2 == 0 {
            return 0;
        }
        m >>= tz;
        // (a/2) = +1 for a ≡ ±1 mod 8, -1 for a ≡ ±3 mod 8
        if tz % 2 == 1 && matches!(a.rem_euclid(8), 3 | 5) {
            result = -result;
        }
    }
    if m == 1 {
        return result;
    }
    result * jacobi(a.rem_euclid(m as i128) as u128, m)
}

/// Jacobi symbol for odd `n >= 1`, `0 <= a < n`.
fn jacobi(mut a: u128, mut n: u128) -> i8 {
    debug_assert!(n % 2 == 1);
    let mut t: i8 = 1;
    while a != 0 {
        let tz = a.trailing_zeros();
        a >>= tz;
        if tz % 2 == 1 && matches!(n % 8, 3 | 5) {
            t = -t;
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}

const TRIAL_BOUND: u32 = 1 << 10;

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_BOUND as usize;
        let mut sieve = vec![true; n + 1];
        sieve[0] = false;
        sieve[1] = false;
        let mut i = 2;
        while i * i <= n {
            if sieve[i] {
                let mut j = i * i;
                while j <= n {
                    sieve[j] = false;
                    j += i;
                }
            }
            i += 1;
        }
        (2..=n).filter(|&k| sieve[k]).map(|k| k as u32).collect()
    })
}

#[inline]
fn mul_mod(a: u128, b: u128, m: u128) -> u128 {
    if m <= u64::MAX as u128 {
        return (a * b) % m;
    }
    // m < 2^127 so sums of two residues never overflow.
    let (mut a, mut b) = (a % m, b % m);
    let mut acc = 0u128;
    while b > 0 {
        if b & 1 == 1 {
            acc = (acc + a) % m;
        }
        a = (a + a) % m;
        b >>= 1;
    }
    acc
}

pub fn pow_mod(mut base: u128, mut exp: u128, m: u128) -> u128 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin; the witness set covers every `n < 3.3·10^24`.
pub fn is_prime(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &small_primes()[..12] {
        let p = p as u128;
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let d0 = n - 1;
    let s = d0.trailing_zeros();
    let d = d0 >> s;
    'witness: for &a in &[2u128, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        if a % n == 0 {
            continue;
        }
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Brent's variant of Pollard rho; `n` odd composite.
fn rho_factor(n: u128) -> u128 {
    let mut c = 1u128;
    loop {
        let f = |x: u128| (mul_mod(x, x, n) + c) % n;
        let (mut y, mut r, mut q) = (2u128, 1u64, 1u128);
        let m = 128u64;
        let mut g = 1u128;
        let mut x = y;
        let mut ys = y;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..m.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd_u128(q, n);
                k += m;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd_u128(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}

fn factor_into(n: u128, out: &mut Vec<u128>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = rho_factor(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

/// Exact factorization of `|n|`: trial division by primes below 2^10, then
/// Miller–Rabin and Brent–Pollard rho on the cofactor.
pub fn factorize(n: i128) -> Result<FactorMultiset> {
    if n == 0 {
        return Err(Error::ZeroInput);
    }
    let mut m = n.unsigned_abs();
    let mut out: Vec<(u128, u32)> = Vec::new();
    for &p in small_primes() {
        let p = p as u128;
        if p * p > m {
            break;
        }
        if m.is_multiple_of(p) {
            let mut e = 0;
            while m.is_multiple_of(p) {
                m /= p;
                e += 1;
            }
            out.push((p, e));
        }
    }
    if m > 1 {
        let mut big = Vec::new();
        factor_into(m, &mut big);
        big.sort_unstable();
        for p in big {
            match out.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => out.push((p, 1)),
            }
        }
    }
    Ok(FactorMultiset(out))
}

pub fn decompose_j0(delta: i128) -> Result<DeltaDecompositionJ0> {
    let f = factorize(delta)?;
    let (mut v2, mut v3, mut d1, mut d2) = (0, 0, 1u128, 1u128);
    for &(p, e) in f.iter() {
        match p {
            2 => v2 = e,
            3 => v3 = e,
            _ if e % 2 == 1 => d1 *= p.pow(e),
            _ => d2 *= p.pow(e / 2),
        }
    }
    Ok(DeltaDecompositionJ0 { v2, v3, d1, d2 })
}

pub fn decompose_j1728(delta: i128) -> Result<DeltaDecompositionJ1728> {
    let f = factorize(delta)?;
    let (mut v2, mut v3, mut t1, mut tau2) = (0, 0, 1u128, 1u128);
    for &(p, e) in f.iter() {
        match p {
            2 => v2 = e,
            3 => v3 = e,
            _ if e % 2 == 1 => t1 *= p,
            _ if e % 4 == 2 => tau2 *= p,
            _ => {}
        }
    }
    Ok(DeltaDecompositionJ1728 { v2, v3, t1, tau2 })
}

/// Number of distinct primes `p` with `p^2 | c` and `p ≡ residue (mod modulus)`.
pub fn sigma_invariant(c: i128, residue: i64, modulus: i64) -> Result<u32> {
    if c == 0 {
        return Err(Error::ZeroInput);
    }
    if modulus != 3 && modulus != 4 {
        return Err(Error::InvalidModulus(modulus));
    }
    let f = factorize(c)?;
    let r = residue.rem_euclid(modulus) as u128;
    Ok(f
        .iter()
        .filter(|&&(p, e)| e >= 2 && p % modulus as u128 == r)
        .count() as u32)
}

/// `|n|` with all factors 2 and 3 removed.
pub fn prime_to_six_part(n: i128) -> u128 {
    let (_, u) = split_unchecked(n, 2);
    let (_, u) = split_unchecked(u, 3);
    u.unsigned_abs()
}

pub fn gcd_i128(a: i128, b: i128) -> i128 {
    gcd_u128(a.unsigned_abs(), b.unsigned_abs()) as i128
}

/// Exact integer square root of a nonnegative perfect square.
pub fn exact_sqrt(n: i128) -> Option<i128> {
    if n < 0 {
        return None;
    }
    let mut r = (n as f64).sqrt() as i128;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    (r * r == n).then_some(r)
}
