//! Dense univariate polynomials over Z and Q in the variable `T`.
//!
//! `IntPoly` carries a declared degree bound `D` so that it can be read as
//! the binary form `V^D P(U/V)`; the place at infinity is then the factor `V`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::factorize;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
    bound: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

fn trim<T: Zero>(v: &mut Vec<T>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

impl IntPoly {
    pub fn new<I: Into<BigInt>>(coeffs: Vec<I>, bound: usize) -> Result<IntPoly> {
        let mut c: Vec<BigInt> = coeffs.into_iter().map(Into::into).collect();
        trim(&mut c);
        if !c.is_empty() && c.len() - 1 > bound {
            return Err(Error::DegreeExceedsBound { degree: c.len() - 1, bound });
        }
        Ok(IntPoly { coeffs: c, bound })
    }

    /// Polynomial whose bound equals its degree (0 for the zero polynomial).
    pub fn from_coeffs<I: Into<BigInt>>(coeffs: Vec<I>) -> IntPoly {
        let mut c: Vec<BigInt> = coeffs.into_iter().map(Into::into).collect();
        trim(&mut c);
        let bound = c.len().saturating_sub(1);
        IntPoly { coeffs: c, bound }
    }

    pub fn zero(bound: usize) -> IntPoly {
        IntPoly { coeffs: Vec::new(), bound }
    }

    pub fn constant<I: Into<BigInt>>(c: I, bound: usize) -> IntPoly {
        IntPoly::new(vec![c.into()], bound).expect("constant fits any bound")
    }

    /// `T`.
    pub fn t() -> IntPoly {
        IntPoly::from_coeffs(vec![0, 1])
    }

    pub fn with_bound(&self, bound: usize) -> Result<IntPoly> {
        IntPoly::new(self.coeffs.clone(), bound)
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn eval(&self, t: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * t + BigRational::from_integer(c.clone()))
    }

    pub fn eval_int(&self, t: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * t + c)
    }

    /// `n^D P(m/n)` for the declared bound `D`.
    pub fn eval_homogeneous(&self, m: &BigInt, n: &BigInt) -> Result<BigInt> {
        if m.is_zero() && n.is_zero() {
            return Err(Error::BothZero);
        }
        let mut acc = BigInt::zero();
        let mut mp = BigInt::one();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                mp *= m;
            }
            if !c.is_zero() {
                acc += c * &mp * num_traits::pow(n.clone(), self.bound - i);
            }
        }
        Ok(acc)
    }

    pub fn to_rat(&self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().cloned().map(BigRational::from_integer).collect())
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect();
        IntPoly::from_coeffs::<BigInt>(c).with_bound_at_least(self.bound.max(other.bound))
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero(self.bound + other.bound);
        }
        let mut c = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(c).with_bound_at_least(self.bound + other.bound)
    }

    pub fn scale(&self, k: &BigInt) -> IntPoly {
        IntPoly::from_coeffs(self.coeffs.iter().map(|c| c * k).collect::<Vec<_>>())
            .with_bound_at_least(self.bound)
    }

    pub fn pow(&self, e: u32) -> IntPoly {
        let mut acc = IntPoly::constant(1, 0);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `P(T + b)`.
    pub fn shift(&self, b: &BigRational) -> RatPoly {
        self.to_rat().shift(b)
    }

    /// `P(T + b)` for integral `b`, keeping the bound.
    pub fn shift_int(&self, b: &BigInt) -> IntPoly {
        let r = self.shift(&BigRational::from_integer(b.clone()));
        let c: Vec<BigInt> = r.coeffs.iter().map(|x| x.to_integer()).collect();
        IntPoly::new(c, self.bound).expect("shift preserves degree")
    }

    /// `V^D P(1/V)` read as a polynomial in `V`: coefficients reversed
    /// against the bound.
    pub fn reversed(&self) -> IntPoly {
        let c: Vec<BigInt> = (0..=self.bound).rev().map(|i| self.coeff(i)).collect();
        IntPoly::new(c, self.bound).expect("reversal preserves the bound")
    }

    /// Order of vanishing at `T = 0`; `None` for the zero polynomial.
    pub fn order_at_zero(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// `bound - deg`: order of vanishing of the binary form at infinity.
    pub fn order_at_infinity(&self) -> Option<usize> {
        self.degree().map(|d| self.bound - d)
    }

    fn with_bound_at_least(mut self, b: usize) -> IntPoly {
        self.bound = self.bound.max(b);
        self
    }
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> RatPoly {
        trim(&mut coeffs);
        RatPoly { coeffs }
    }

    pub fn zero() -> RatPoly {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn one() -> RatPoly {
        RatPoly::new(vec![BigRational::one()])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, t: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * t + c)
    }

    pub fn add(&self, o: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn mul(&self, o: &RatPoly) -> RatPoly {
        if self.is_zero() || o.is_zero() {
            return RatPoly::zero();
        }
        let mut c = vec![BigRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        RatPoly::new(c)
    }

    pub fn scale(&self, k: &BigRational) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn derivative(&self) -> RatPoly {
        RatPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// Euclidean division; `d` must be nonzero.
    pub fn divrem(&self, d: &RatPoly) -> (RatPoly, RatPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.coeffs.len() - 1;
        let lead = d.leading();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (RatPoly::zero(), self.clone());
        }
        let mut q = vec![BigRational::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = &r[i + dd] / &lead;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[i + j] -= &c * dc;
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        (RatPoly::new(q), RatPoly::new(r))
    }

    pub fn monic(&self) -> RatPoly {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.leading().recip();
        self.scale(&l)
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, o: &RatPoly) -> RatPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `P(T + b)` by Horner's scheme on `T + b`.
    pub fn shift(&self, b: &BigRational) -> RatPoly {
        let lin = RatPoly::new(vec![b.clone(), BigRational::one()]);
        self.coeffs.iter().rev().fold(RatPoly::zero(), |acc, c| {
            acc.mul(&lin).add(&RatPoly::new(vec![c.clone()]))
        })
    }

    /// Primitive integer polynomial with positive leading coefficient and the
    /// rational `k` with `self = k * result`.
    pub fn primitive_part(&self) -> (BigRational, IntPoly) {
        if self.is_zero() {
            return (BigRational::zero(), IntPoly::zero(0));
        }
        let den = self.coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * &den).to_integer()).collect();
        let mut g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if ints.last().unwrap().is_negative() {
            g = -g;
        }
        let prim: Vec<BigInt> = ints.iter().map(|c| c / &g).collect();
        (BigRational::new(g, den), IntPoly::from_coeffs(prim))
    }

    /// Integer coefficients if every coefficient is integral.
    pub fn to_int(&self, bound: usize) -> Option<IntPoly> {
        if self.coeffs.iter().any(|c| !c.is_integer()) {
            return None;
        }
        IntPoly::new(self.coeffs.iter().map(|c| c.to_integer()).collect(), bound).ok()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DiscriminantConvention {
    /// `4A^3 + 27B^2`.
    #[default]
    Additive,
    /// `4A^3 - 27B^2`.
    Subtractive,
    /// `-16(4A^3 + 27B^2)`.
    Standard,
}

/// Discriminant polynomial of `y^2 = x^3 + A(T)x + B(T)` with bound 12.
pub fn discriminant_cubic(a: &IntPoly, b: &IntPoly, conv: DiscriminantConvention) -> Result<IntPoly> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::BothZeroPolys);
    }
    let four_a3 = a.pow(3).scale(&BigInt::from(4));
    let b2 = b.pow(2).scale(&BigInt::from(27));
    let d = match conv {
        DiscriminantConvention::Additive => four_a3.add(&b2),
        DiscriminantConvention::Subtractive => four_a3.add(&b2.scale(&BigInt::from(-1))),
        DiscriminantConvention::Standard => four_a3.add(&b2).scale(&BigInt::from(-16)),
    };
    let bound = (3 * a.bound()).max(2 * b.bound()).max(d.degree().unwrap_or(0));
    d.with_bound(bound)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquarefreeDecomposition {
    /// Rational constant `k` with `P = k * ∏ f_i^{m_i}`.
    pub content: BigRational,
    /// Primitive factors with positive leading coefficient, by multiplicity.
    pub factors: Vec<(IntPoly, u32)>,
}

impl SquarefreeDecomposition {
    pub fn reconstruct(&self) -> RatPoly {
        self.factors
            .iter()
            .fold(RatPoly::new(vec![self.content.clone()]), |acc, (f, m)| {
                (0..*m).fold(acc, |a, _| a.mul(&f.to_rat()))
            })
    }
}

/// Yun's algorithm over Q.
pub fn squarefree_decompose(p: &IntPoly) -> Result<SquarefreeDecomposition> {
    if p.is_zero() {
        return Err(Error::ZeroPoly);
    }
    let f = p.to_rat();
    let mut factors = Vec::new();
    if f.degree() == Some(0) {
        return Ok(SquarefreeDecomposition { content: f.leading(), factors });
    }
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.divrem(&a0).0;
    let c = df.divrem(&a0).0;
    let mut d = c.sub(&b.derivative());
    let mut i = 1u32;
    while b.degree().unwrap_or(0) > 0 {
        let a = b.gcd(&d);
        let nb = b.divrem(&a).0;
        let nc = d.divrem(&a).0;
        if a.degree().unwrap_or(0) > 0 {
            factors.push((a.primitive_part().1, i));
        }
        d = nc.sub(&nb.derivative());
        b = nb;
        i += 1;
    }
    let prod = factors.iter().fold(RatPoly::one(), |acc, (g, m)| {
        (0..*m).fold(acc, |a, _| a.mul(&g.to_rat()))
    });
    let content = f.leading() / prod.leading();
    Ok(SquarefreeDecomposition { content, factors })
}

/// Squarefree part (radical) as a primitive integer polynomial.
pub fn radical(p: &IntPoly) -> Result<IntPoly> {
    let sf = squarefree_decompose(p)?;
    Ok(sf
        .factors
        .iter()
        .fold(IntPoly::constant(1, 0), |acc, (f, _)| acc.mul(f)))
}

fn positive_divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let f = match n.to_i128() {
        Some(v) => factorize(v).expect("nonzero"),
        None => {
            // Very large constants only arise from pathological input; fall
            // back to trial division, which is exact though slow.
            let mut out = Vec::new();
            let mut d = BigInt::one();
            while &d * &d <= n {
                if (&n % &d).is_zero() {
                    out.push(d.clone());
                    out.push(&n / &d);
                }
                d += 1;
            }
            out.sort();
            out.dedup();
            return out;
        }
    };
    let mut divs = vec![BigInt::one()];
    for &(p, e) in f.iter() {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = d.clone();
            for _ in 0..=e {
                next.push(pk.clone());
                pk *= BigInt::from(p);
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}

/// All rational roots, repeated by multiplicity, in ascending order.
pub fn rational_roots(p: &IntPoly) -> Result<Vec<BigRational>> {
    if p.is_zero() {
        return Err(Error::ZeroPoly);
    }
    let mut roots = Vec::new();
    let z = p.order_at_zero().unwrap();
    roots.extend(std::iter::repeat_n(BigRational::zero(), z));
    let mut rest = p.to_rat().divrem(&RatPoly::new({
        let mut v = vec![BigRational::zero(); z];
        v.push(BigRational::one());
        v
    })).0;
    if rest.degree().unwrap_or(0) == 0 {
        return Ok(roots);
    }
    let (_, prim) = rest.primitive_part();
    let nums = positive_divisors(&prim.coeff(0));
    let dens = positive_divisors(&prim.leading());
    let mut cands: Vec<BigRational> = Vec::new();
    for a in &nums {
        for b in &dens {
            let r = BigRational::new(a.clone(), b.clone());
            cands.push(r.clone());
            cands.push(-r);
        }
    }
    cands.sort();
    cands.dedup();
    for r in cands {
        let lin = RatPoly::new(vec![-r.clone(), BigRational::one()]);
        while rest.degree().unwrap_or(0) > 0 && rest.eval(&r).is_zero() {
            rest = rest.divrem(&lin).0;
            roots.push(r.clone());
        }
    }
    roots.sort();
    Ok(roots)
}

/// A factorization of an integer quartic into two integer quadratics, if
/// one exists (a split into linear factors also yields one).
pub fn quadratic_factor_quartic(p: &IntPoly) -> Option<(IntPoly, IntPoly)> {
    if p.degree() != Some(4) {
        return None;
    }
    let c: Vec<BigInt> = (0..=4).map(|i| p.coeff(i)).collect();
    if c[0].is_zero() {
        // p = T * cubic: a quadratic split exists iff the cubic has a
        // rational root.
        let cubic = IntPoly::from_coeffs(c[1..].to_vec());
        let r = rational_roots(&cubic).ok()?.into_iter().next()?;
        let lin = RatPoly::new(vec![-r, BigRational::one()]).primitive_part().1;
        let first = IntPoly::t().mul(&lin);
        let (k, rest) = p.to_rat().divrem(&first.to_rat()).0.primitive_part();
        let second = rest.to_rat().scale(&k).to_int(2)?;
        return Some((first, second));
    }
    let a4s = positive_divisors(&c[4]);
    let a0s = positive_divisors(&c[0]);
    for p2 in &a4s {
        let q2 = &c[4] / p2;
        for p0abs in &a0s {
            for s in [1i32, -1] {
                let p0 = p0abs * BigInt::from(s);
                let q0 = &c[0] / &p0;
                // T^3: p2 q1 + p1 q2 = a3;  T^1: p1 q0 + p0 q1 = a1
                let det = p2 * &q0 - &p0 * &q2;
                let candidates: Vec<(BigRational, BigRational)> = if !det.is_zero() {
                    let p1 = BigRational::new(&c[3] * &p0 - p2 * &c[1], -det.clone());
                    let q1 = BigRational::new(&q0 * &c[3] - &q2 * &c[1], det.clone());
                    vec![(p1, q1)]
                } else {
                    // Dependent system; the T^2 equation is a quadratic in p1:
                    // q2 p1^2 - a3 p1 + p2 (a2 - p2 q0 - p0 q2) = 0
                    let rhs = &c[2] - p2 * &q0 - &p0 * &q2;
                    let quad = IntPoly::from_coeffs(vec![p2 * &rhs, -c[3].clone(), q2.clone()]);
                    if quad.is_zero() {
                        vec![]
                    } else {
                        rational_roots(&quad)
                            .unwrap_or_default()
                            .into_iter()
                            .map(|p1| {
                                let q1 = (BigRational::from_integer(c[3].clone())
                                    - &p1 * BigRational::from_integer(q2.clone()))
                                    / BigRational::from_integer(p2.clone());
                                (p1, q1)
                            })
                            .collect()
                    }
                };
                for (p1, q1) in candidates {
                    if !p1.is_integer() || !q1.is_integer() {
                        continue;
                    }
                    let f = IntPoly::from_coeffs(vec![p0.clone(), p1.to_integer(), p2.clone()]);
                    let g = IntPoly::from_coeffs(vec![q0.clone(), q1.to_integer(), q2.clone()]);
                    if f.mul(&g).coeffs == p.coeffs {
                        return Some((f, g));
                    }
                }
            }
        }
    }
    None
}

/// Product of the multiplicative places of `y^2 = x^3 + A x + B`: the
/// distinct irreducible factors of the homogenized discriminant that do not
/// divide the homogenized `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicativePart {
    /// Primitive, squarefree, positive leading coefficient.
    pub finite: IntPoly,
    pub at_infinity: bool,
}

impl MultiplicativePart {
    pub fn total_degree(&self) -> usize {
        self.finite.degree().unwrap_or(0) + usize::from(self.at_infinity)
    }
}

pub fn multiplicative_part(a: &IntPoly, b: &IntPoly, conv: DiscriminantConvention) -> Result<MultiplicativePart> {
    let a = a.with_bound(4)?;
    let b = b.with_bound(6)?;
    let delta = if a.is_zero() && b.is_zero() {
        return Err(Error::SingularSurface);
    } else {
        discriminant_cubic(&a, &b, conv)?.with_bound(12)?
    };
    if delta.is_zero() {
        return Err(Error::SingularSurface);
    }
    if a.is_zero() {
        return Ok(MultiplicativePart { finite: IntPoly::constant(1, 0), at_infinity: false });
    }
    let rad = radical(&delta)?.to_rat();
    let shared = rad.gcd(&a.to_rat());
    let m = rad.divrem(&shared).0.primitive_part().1;
    let at_infinity = delta.order_at_infinity().unwrap() > 0 && a.order_at_infinity().unwrap() == 0;
    Ok(MultiplicativePart { finite: m, at_infinity })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "label", rename_all = "lowercase")]
pub enum HelfgottShape {
    Unconditional(String),
    Conditional(String),
}

pub fn helfgott_shape(m: &MultiplicativePart) -> Result<HelfgottShape> {
    if m.finite.is_zero() {
        return Err(Error::ZeroPoly);
    }
    let total = m.total_degree();
    if total == 0 {
        return Ok(HelfgottShape::Unconditional("M empty".into()));
    }
    let fin_deg = m.finite.degree().unwrap();
    let n_roots = if fin_deg == 0 { 0 } else { rational_roots(&m.finite)?.len() };
    if n_roots == fin_deg {
        return Ok(HelfgottShape::Unconditional("all places rational".into()));
    }
    let linear_count = n_roots + usize::from(m.at_infinity);
    if total == 3 && linear_count == 1 {
        return Ok(HelfgottShape::Unconditional("linear × quadratic".into()));
    }
    if total <= 3 {
        return Ok(HelfgottShape::Unconditional("degree ≤ 3".into()));
    }
    Ok(HelfgottShape::Conditional("shape not covered".into()))
}

/// Shape of a finite `M` alone (no place at infinity).
pub fn helfgott_shape_poly(m: &IntPoly) -> Result<HelfgottShape> {
    helfgott_shape(&MultiplicativePart { finite: m.clone(), at_infinity: false })
}

/// Irreducibility over Q for degree <= 4.
pub fn is_irreducible_low_degree(p: &IntPoly) -> Option<bool> {
    match p.degree()? {
        0 => Some(false),
        1 => Some(true),
        2 | 3 => Some(rational_roots(p).ok()?.is_empty()),
        4 => Some(rational_roots(p).ok()?.is_empty() && quadratic_factor_quartic(p).is_none()),
        _ => None,
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let mono = match i {
                0 => String::new(),
                1 => "T".to_string(),
                _ => format!("T^{i}"),
            };
            if i == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if i == 1 {
                        f.write_str("T")?;
                    } else {
                        write!(f, "T^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

fn parse_err(text: &str, reason: impl Into<String>) -> Error {
    Error::Parse { text: text.to_string(), reason: reason.into() }
}

/// Parses `c_k*T^k + ... + c_0` (whitespace-insensitive; `t` is accepted
/// for `T`; coefficients may be omitted; repeated powers are summed).
/// The bound of the result is its degree.
impl FromStr for IntPoly {
    type Err = Error;
    fn from_str(text: &str) -> Result<IntPoly> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(parse_err(text, "empty input"));
        }
        let bytes = s.as_bytes();
        let mut terms: Vec<(bool, &str)> = Vec::new();
        let mut start = 0;
        let mut neg = false;
        if bytes[0] == b'+' || bytes[0] == b'-' {
            neg = bytes[0] == b'-';
            start = 1;
        }
        let mut i = start;
        while i < bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && i > start && bytes[i - 1] != b'^' {
                terms.push((neg, &s[start..i]));
                neg = bytes[i] == b'-';
                start = i + 1;
            }
            i += 1;
        }
        terms.push((neg, &s[start..]));
        let mut coeffs: Vec<BigInt> = Vec::new();
        for (neg, term) in terms {
            if term.is_empty() {
                return Err(parse_err(text, "empty term"));
            }
            let (coef_txt, mono_txt) = match term.find(['T', 't']) {
                Some(pos) => {
                    let c = &term[..pos];
                    let c = c.strip_suffix('*').unwrap_or(c);
                    if c.is_empty() && pos > 0 {
                        return Err(parse_err(text, format!("bad coefficient in `{term}`")));
                    }
                    (c, Some(&term[pos + 1..]))
                }
                None => (term, None),
            };
            let mut c = if coef_txt.is_empty() {
                BigInt::one()
            } else {
                BigInt::from_str(coef_txt)
                    .map_err(|_| parse_err(text, format!("bad coefficient `{coef_txt}`")))?
            };
            if neg {
                c = -c;
            }
            let k: usize = match mono_txt {
                None => 0,
                Some("") => 1,
                Some(rest) => {
                    let e = rest
                        .strip_prefix('^')
                        .ok_or_else(|| parse_err(text, format!("expected `^` in `{term}`")))?;
                    e.parse()
                        .map_err(|_| parse_err(text, format!("bad exponent `{e}`")))?
                }
            };
            if k > 64 {
                return Err(parse_err(text, format!("exponent {k} too large")));
            }
            if coeffs.len() <= k {
                coeffs.resize(k + 1, BigInt::zero());
            }
            coeffs[k] += c;
        }
        Ok(IntPoly::from_coeffs(coeffs))
    }
}

pub fn parse_poly(text: &str) -> Result<IntPoly> {
    text.parse()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPoly {
        s.parse().unwrap()
    }
    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }
    fn bi(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn eval_homogeneous_examples() {
        assert_eq!(p("T^2 + 1").eval_homogeneous(&bi(1), &bi(2)).unwrap(), bi(5));
        assert_eq!(p("T").eval_homogeneous(&bi(3), &bi(1)).unwrap(), bi(3));
        assert_eq!(p("27*T^6 + 16").eval_homogeneous(&bi(1), &bi(1)).unwrap(), bi(43));
        assert_eq!(p("T").eval_homogeneous(&bi(0), &bi(0)), Err(Error::BothZero));
        // bound larger than degree
        let b = IntPoly::new(vec![1, 1], 3).unwrap();
        assert_eq!(b.eval_homogeneous(&bi(2), &bi(3)).unwrap(), bi(27 + 2 * 9));
    }

    #[test]
    fn shift_examples() {
        let s = p("T^4 + 4*T^3").shift(&q(-1, 1));
        assert_eq!(s.to_int(4).unwrap(), p("T^4 - 6*T^2 + 8*T - 3"));
        assert_eq!(p("T^2").shift(&q(0, 1)).to_int(2).unwrap(), p("T^2"));
        assert_eq!(p("T").shift(&q(1, 1)).to_int(1).unwrap(), p("T + 1"));
    }

    #[test]
    fn discriminant_examples() {
        let c = DiscriminantConvention::Additive;
        assert_eq!(discriminant_cubic(&IntPoly::zero(4), &p("T"), c).unwrap().coeffs(), p("27*T^2").coeffs());
        assert_eq!(discriminant_cubic(&p("T"), &IntPoly::zero(6), c).unwrap().coeffs(), p("4*T^3").coeffs());
        assert_eq!(discriminant_cubic(&p("1"), &p("T"), c).unwrap().coeffs(), p("27*T^2 + 4").coeffs());
        assert_eq!(
            discriminant_cubic(&p("1"), &p("T"), DiscriminantConvention::Subtractive).unwrap().coeffs(),
            p("-27*T^2 + 4").coeffs()
        );
        assert_eq!(
            discriminant_cubic(&p("1"), &p("T"), DiscriminantConvention::Standard).unwrap().coeffs(),
            p("-432*T^2 - 64").coeffs()
        );
        assert_eq!(
            discriminant_cubic(&IntPoly::zero(4), &IntPoly::zero(6), c),
            Err(Error::BothZeroPolys)
        );
    }

    #[test]
    fn squarefree_examples() {
        let d = squarefree_decompose(&p("4*T^3 + 27*T^2")).unwrap();
        assert_eq!(d.factors, vec![(p("4*T + 27"), 1), (p("T"), 2)].into_iter().collect::<Vec<_>>());
        assert_eq!(squarefree_decompose(&p("T^4")).unwrap().factors, vec![(p("T"), 4)]);
        assert_eq!(squarefree_decompose(&p("27*T^2 + 4")).unwrap().factors, vec![(p("27*T^2 + 4"), 1)]);
        assert_eq!(squarefree_decompose(&IntPoly::zero(3)), Err(Error::ZeroPoly));
        let c = squarefree_decompose(&p("-6")).unwrap();
        assert!(c.factors.is_empty());
        assert_eq!(c.content, q(-6, 1));
    }

    #[test]
    fn rational_roots_examples() {
        assert_eq!(rational_roots(&p("T^2 - 1")).unwrap(), vec![q(-1, 1), q(1, 1)]);
        assert!(rational_roots(&p("27*T^2 + 4")).unwrap().is_empty());
        assert_eq!(rational_roots(&p("2*T - 3")).unwrap(), vec![q(3, 2)]);
        assert_eq!(rational_roots(&p("T^3 - T^2")).unwrap(), vec![q(0, 1), q(0, 1), q(1, 1)]);
        assert_eq!(
            rational_roots(&p("4*T^4 - 4*T^3 - 3*T^2 + 4*T - 1")).unwrap(),
            vec![q(-1, 1), q(1, 2), q(1, 2), q(1, 1)]
        );
    }

    #[test]
    fn multiplicative_part_examples() {
        let c = DiscriminantConvention::Additive;
        let m = multiplicative_part(&p("1"), &p("T"), c).unwrap();
        assert_eq!(m.finite, p("27*T^2 + 4"));
        assert!(!m.at_infinity);
        let m = multiplicative_part(&IntPoly::zero(4), &p("T"), c).unwrap();
        assert_eq!(m.total_degree(), 0);
        let m = multiplicative_part(&p("T"), &p("T"), c).unwrap();
        assert_eq!(m.finite, p("4*T + 27"));
        assert!(!m.at_infinity);
        // deg A = 4 and deg Δ < 12: the place at infinity is multiplicative
        let m = multiplicative_part(&p("T^4 + 1"), &p("T^4"), c).unwrap();
        assert!(!m.at_infinity || m.total_degree() >= 1);
    }

    #[test]
    fn helfgott_examples() {
        assert_eq!(
            helfgott_shape_poly(&p("1")).unwrap(),
            HelfgottShape::Unconditional("M empty".into())
        );
        assert_eq!(
            helfgott_shape_poly(&p("27*T^3 + 4*T")).unwrap(),
            HelfgottShape::Unconditional("linear × quadratic".into())
        );
        assert_eq!(
            helfgott_shape(&MultiplicativePart { finite: p("27*T^2 + 4"), at_infinity: true }).unwrap(),
            HelfgottShape::Unconditional("linear × quadratic".into())
        );
        assert_eq!(
            helfgott_shape_poly(&p("T^4 + T + 1")).unwrap(),
            HelfgottShape::Conditional("shape not covered".into())
        );
        assert_eq!(
            helfgott_shape_poly(&p("T^4 - 5*T^2 + 4")).unwrap(),
            HelfgottShape::Unconditional("all places rational".into())
        );
        assert_eq!(
            helfgott_shape_poly(&p("T^3 + 2")).unwrap(),
            HelfgottShape::Unconditional("degree ≤ 3".into())
        );
    }

    #[test]
    fn quartic_factor_search() {
        assert_eq!(is_irreducible_low_degree(&p("T^4 + T + 1")), Some(true));
        assert_eq!(is_irreducible_low_degree(&p("T^4 + 1")), Some(true));
        assert_eq!(is_irreducible_low_degree(&p("T^4 + 4")), Some(false));
        let (f, g) = quadratic_factor_quartic(&p("T^4 + 4")).unwrap();
        assert_eq!(f.mul(&g), p("T^4 + 4"));
        let (f, g) = quadratic_factor_quartic(&p("6*T^4 + 5*T^3 + 10*T^2 + 4*T + 3")).unwrap();
        assert_eq!(f.mul(&g), p("6*T^4 + 5*T^3 + 10*T^2 + 4*T + 3"));
        assert!(quadratic_factor_quartic(&p("T^4 - 2")).is_none());
        let (f, g) = quadratic_factor_quartic(&p("T^4 - T")).unwrap();
        assert_eq!(f.mul(&g).coeffs(), p("T^4 - T").coeffs());
    }

    #[test]
    fn print_parse_round_trip_examples() {
        for s in ["27*T^6 + 16", "T^2 - 1", "-T", "0", "-3*T + 2", "T^4 + T + 1", "5"] {
            assert_eq!(p(s).to_string(), s);
        }
        assert_eq!(p(" 2 t ^2 +3 - t^2"), p("T^2 + 3"));
        assert_eq!(p("-T^2+T"), p("T - T^2"));
        assert!("T^".parse::<IntPoly>().is_err());
        assert!("3**T".parse::<IntPoly>().is_err());
        assert!("".parse::<IntPoly>().is_err());
        assert!("2+".parse::<IntPoly>().is_err());
        assert!(IntPoly::new(vec![1, 2, 3], 1).is_err());
    }

    mod props {
        use super::super::*;
        use proptest::prelude::*;

        fn poly(max_deg: usize) -> impl Strategy<Value = IntPoly> {
            prop::collection::vec(-20i64..20, 1..=max_deg + 1).prop_map(IntPoly::from_coeffs)
        }

        proptest! {
            #[test]
            fn shift_inverts(pl in poly(8), n in -30i64..30, d in 1i64..10) {
                let b = BigRational::new(n.into(), d.into());
                let back = pl.shift(&b).shift(&-b.clone());
                prop_assert_eq!(back, pl.to_rat());
            }

            #[test]
            fn homogeneous_scaling(pl in poly(6), m in -20i64..20, n in -20i64..20, k in 1i64..6) {
                prop_assume!(m != 0 || n != 0);
                let bound = pl.degree().unwrap_or(0) + 2;
                let pl = pl.with_bound(bound).unwrap();
                let kk = BigInt::from(k);
                let lhs = pl.eval_homogeneous(&(BigInt::from(m) * &kk), &(BigInt::from(n) * &kk)).unwrap();
                let rhs = pl.eval_homogeneous(&BigInt::from(m), &BigInt::from(n)).unwrap() * num_traits::pow(kk, bound);
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn squarefree_reconstructs(fs in prop::collection::vec((poly(3), 1u32..4), 1..4)) {
                let prod = fs.iter().fold(IntPoly::constant(1, 0), |acc, (f, m)| acc.mul(&f.pow(*m)));
                prop_assume!(!prod.is_zero() && prod.degree().unwrap() <= 12);
                let d = squarefree_decompose(&prod).unwrap();
                prop_assert_eq!(d.reconstruct(), prod.to_rat());
                for (i, (f, _)) in d.factors.iter().enumerate() {
                    let fr = f.to_rat();
                    prop_assert_eq!(fr.gcd(&fr.derivative()).degree(), Some(0));
                    for (g, _) in &d.factors[i + 1..] {
                        prop_assert_eq!(fr.gcd(&g.to_rat()).degree(), Some(0));
                    }
                }
            }

            #[test]
            fn print_parse_round_trip(pl in poly(10)) {
                let text = pl.to_string();
                prop_assert_eq!(text.parse::<IntPoly>().unwrap(), pl);
            }

            #[test]
            fn multiplicative_part_divides_radical(a in poly(4), b in poly(6)) {
                let conv = DiscriminantConvention::Additive;
                let Ok(delta) = discriminant_cubic(&a, &b, conv) else { return Ok(()); };
                prop_assume!(!delta.is_zero());
                let m = multiplicative_part(&a, &b, conv).unwrap();
                let rad = radical(&delta).unwrap().to_rat();
                prop_assert!(rad.divrem(&m.finite.to_rat()).1.is_zero());
                if !a.is_zero() {
                    for r in rational_roots(&m.finite).unwrap() {
                        prop_assert!(delta.eval(&r).is_zero());
                        prop_assert!(!a.eval(&r).is_zero());
                    }
                }
            }
        }
    }
}
