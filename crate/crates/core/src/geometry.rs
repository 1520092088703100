//! Surface-level structure of `y^2 = x^3 + A(T) x + B(T)`: rationality,
//! Kodaira fibers, the del Pezzo test, isotriviality, and the quartic
//! construction of sections on `y^2 = x^3 + A(T) x`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::constancy::Surface;
use crate::error::{Error, Result};
use crate::poly::{
    discriminant_cubic, rational_roots, squarefree_decompose, DiscriminantConvention, IntPoly, RatPoly,
};
use crate::weierstrass::{lutz_nagell_filter, scale_point, torsion_order, LutzNagell, Point, TorsionOrder, WeierstrassCurve};

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `0 < max(3 deg A, 2 deg B) ≤ 12`.
pub fn is_rational_surface(a: &IntPoly, b: &IntPoly) -> Result<bool> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::SingularSurface);
    }
    let d = |p: &IntPoly| p.degree().map_or(0, |d| d);
    let m = (3 * d(a)).max(2 * d(b));
    Ok(m > 0 && m <= 12)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EllipticSurfaceModel {
    a: IntPoly,
    b: IntPoly,
}

/// A place of `P^1_Q`. A finite place is a primitive squarefree polynomial
/// whose irreducible factors all carry the same valuations of `A`, `B` and
/// `Δ`; linear factors are always split off.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Place {
    Finite(IntPoly),
    Infinity,
}

impl Place {
    pub fn degree(&self) -> usize {
        match self {
            Place::Finite(p) => p.degree().unwrap_or(0),
            Place::Infinity => 1,
        }
    }

    pub fn linear(root: &BigRational) -> Place {
        Place::Finite(IntPoly::from_coeffs(vec![-root.numer().clone(), root.denom().clone()]))
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{p}"),
            Place::Infinity => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum KodairaType {
    I0,
    I(u32),
    II,
    III,
    IV,
    I0Star,
    IStar(u32),
    IVStar,
    IIIStar,
    IIStar,
}

impl KodairaType {
    /// Euler number of the fiber.
    pub fn euler(self) -> u32 {
        match self {
            KodairaType::I0 => 0,
            KodairaType::I(n) => n,
            KodairaType::II => 2,
            KodairaType::III => 3,
            KodairaType::IV => 4,
            KodairaType::I0Star => 6,
            KodairaType::IStar(n) => n + 6,
            KodairaType::IVStar => 8,
            KodairaType::IIIStar => 9,
            KodairaType::IIStar => 10,
        }
    }

    /// Type from the valuations of a minimal model; `None` stands for `+∞`.
    pub fn from_valuations(va: Option<u32>, vb: Option<u32>, vd: u32) -> Result<KodairaType> {
        let big = u32::MAX;
        let (va, vb) = (va.unwrap_or(big), vb.unwrap_or(big));
        if vd == 0 {
            return Err(Error::GoodReduction);
        }
        if va == 0 || vb == 0 {
            return Ok(KodairaType::I(vd));
        }
        Ok(match vd {
            2 => KodairaType::II,
            3 => KodairaType::III,
            4 => KodairaType::IV,
            6 => KodairaType::I0Star,
            _ if vd > 6 && va == 2 && vb == 3 => KodairaType::IStar(vd - 6),
            8 => KodairaType::IVStar,
            9 => KodairaType::IIIStar,
            10 => KodairaType::IIStar,
            _ => return Err(Error::Internal(format!("no Kodaira type for ({va}, {vb}, {vd})"))),
        })
    }
}

impl fmt::Display for KodairaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KodairaType::I0 => f.write_str("I0"),
            KodairaType::I(n) => write!(f, "I{n}"),
            KodairaType::II => f.write_str("II"),
            KodairaType::III => f.write_str("III"),
            KodairaType::IV => f.write_str("IV"),
            KodairaType::I0Star => f.write_str("I0*"),
            KodairaType::IStar(n) => write!(f, "I{n}*"),
            KodairaType::IVStar => f.write_str("IV*"),
            KodairaType::IIIStar => f.write_str("III*"),
            KodairaType::IIStar => f.write_str("II*"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Isotriviality {
    NonIsotrivial,
    J0,
    J1728,
    TwistForm,
}

/// Times `f` divides `p`; `None` when `p = 0`.
fn valuation(p: &RatPoly, f: &RatPoly) -> Option<u32> {
    if p.is_zero() {
        return None;
    }
    let mut v = 0;
    let mut cur = p.clone();
    loop {
        let (quo, rem) = cur.divrem(f);
        if !rem.is_zero() {
            return Some(v);
        }
        cur = quo;
        v += 1;
    }
}

fn positive_degree(p: &RatPoly) -> bool {
    p.degree().is_some_and(|d| d > 0)
}

/// Pairwise coprime squarefree refinement of a set of squarefree polynomials.
fn coprime_base(mut ps: Vec<RatPoly>) -> Vec<RatPoly> {
    ps.retain(positive_degree);
    'outer: loop {
        for i in 0..ps.len() {
            for j in i + 1..ps.len() {
                let g = ps[i].gcd(&ps[j]);
                if positive_degree(&g) {
                    let a = ps[i].divrem(&g).0;
                    let b = ps[j].divrem(&g).0;
                    ps.remove(j);
                    ps.remove(i);
                    ps.extend([a, b, g].into_iter().filter(positive_degree));
                    continue 'outer;
                }
            }
        }
        return ps;
    }
}

impl EllipticSurfaceModel {
    /// `A` of degree at most 4 and `B` of degree at most 6, with `Δ ≠ 0`.
    pub fn new(a: IntPoly, b: IntPoly) -> Result<EllipticSurfaceModel> {
        let a = a.with_bound(4)?;
        let b = b.with_bound(6)?;
        if a.is_zero() && b.is_zero() {
            return Err(Error::SingularSurface);
        }
        let m = EllipticSurfaceModel { a, b };
        if m.discriminant().is_zero() {
            return Err(Error::SingularSurface);
        }
        Ok(m)
    }

    pub fn from_surface(s: &Surface) -> Result<EllipticSurfaceModel> {
        match s {
            Surface::J0(x) => EllipticSurfaceModel::new(
                IntPoly::zero(4),
                IntPoly::from_coeffs(vec![x.b, 0, 0, 0, 0, 0, x.a]),
            ),
            Surface::J1728(x) => {
                let c = BigInt::from(x.c);
                let a2 = BigInt::from(x.a).pow(2) * &c;
                let b2 = BigInt::from(x.b).pow(2) * &c;
                let zero = BigInt::zero();
                EllipticSurfaceModel::new(
                    IntPoly::from_coeffs(vec![b2, zero.clone(), zero.clone(), zero, a2]),
                    IntPoly::zero(6),
                )
            }
        }
    }

    pub fn a(&self) -> &IntPoly {
        &self.a
    }

    pub fn b(&self) -> &IntPoly {
        &self.b
    }

    /// `4A^3 + 27B^2` as a form of degree 12.
    pub fn discriminant(&self) -> IntPoly {
        discriminant_cubic(&self.a, &self.b, DiscriminantConvention::Additive)
            .and_then(|d| d.with_bound(12))
            .expect("degrees are bounded")
    }

    pub fn is_rational(&self) -> bool {
        is_rational_surface(&self.a, &self.b).unwrap_or(false)
    }

    /// Places where `Δ` vanishes, the infinite place last.
    pub fn places(&self) -> Result<Vec<Place>> {
        let delta = self.discriminant();
        let mut gens = Vec::new();
        for p in [&self.a, &self.b, &delta] {
            if p.is_zero() || p.degree() == Some(0) {
                continue;
            }
            for (f, _) in squarefree_decompose(p)?.factors {
                gens.push(f.to_rat());
            }
        }
        let d = delta.to_rat();
        let mut out = Vec::new();
        let mut base = coprime_base(gens);
        base.retain(|f| valuation(&d, f).unwrap_or(0) > 0);
        for f in base {
            let (_, prim) = f.primitive_part();
            let mut rest = prim.to_rat();
            let mut roots = rational_roots(&prim)?;
            roots.dedup();
            for r in roots {
                let lin = Place::linear(&r);
                if let Place::Finite(l) = &lin {
                    rest = rest.divrem(&l.to_rat()).0;
                }
                out.push(lin);
            }
            if positive_degree(&rest) {
                out.push(Place::Finite(rest.primitive_part().1));
            }
        }
        out.sort_by_key(|p| (p.degree(), p.to_string()));
        if delta.order_at_infinity().unwrap_or(0) > 0 {
            out.push(Place::Infinity);
        }
        Ok(out)
    }

    /// `(v(A), v(B), v(Δ))` at a place, before minimalization.
    pub fn valuations(&self, place: &Place) -> Result<(Option<u32>, Option<u32>, u32)> {
        let delta = self.discriminant();
        let inf = |p: &IntPoly| p.order_at_infinity().map(|v| v as u32);
        let (va, vb, vd) = match place {
            Place::Infinity => (inf(&self.a), inf(&self.b), inf(&delta).unwrap_or(0)),
            Place::Finite(f) => {
                if !positive_degree(&f.to_rat()) {
                    return Err(Error::PlaceNotOnDiscriminant);
                }
                let f = f.to_rat();
                (
                    valuation(&self.a.to_rat(), &f),
                    valuation(&self.b.to_rat(), &f),
                    valuation(&delta.to_rat(), &f).unwrap_or(0),
                )
            }
        };
        if vd == 0 {
            return Err(Error::PlaceNotOnDiscriminant);
        }
        Ok((va, vb, vd))
    }

    pub fn kodaira_type(&self, place: &Place) -> Result<KodairaType> {
        let (mut va, mut vb, mut vd) = self.valuations(place)?;
        while va.is_none_or(|v| v >= 4) && vb.is_none_or(|v| v >= 6) && vd >= 12 {
            va = va.map(|v| v - 4);
            vb = vb.map(|v| v - 6);
            vd -= 12;
        }
        if vd == 0 {
            return Ok(KodairaType::I0);
        }
        KodairaType::from_valuations(va, vb, vd)
    }

    pub fn fiber_configuration(&self) -> Result<Vec<(Place, KodairaType)>> {
        self.places()?
            .into_iter()
            .map(|p| {
                let k = self.kodaira_type(&p)?;
                Ok((p, k))
            })
            .filter(|r| !matches!(r, Ok((_, KodairaType::I0))))
            .collect()
    }

    /// `Σ deg(place) · e(F)`; equals 12 exactly on minimal rational models.
    pub fn euler_sum(&self) -> Result<u32> {
        Ok(self
            .fiber_configuration()?
            .iter()
            .map(|(p, k)| p.degree() as u32 * k.euler())
            .sum())
    }

    /// Every bad fiber is of type `II` or `I1`.
    pub fn is_del_pezzo_degree1(&self) -> Result<bool> {
        if !self.is_rational() {
            return Ok(false);
        }
        Ok(self
            .fiber_configuration()?
            .iter()
            .all(|(_, k)| matches!(k, KodairaType::II | KodairaType::I(1))))
    }

    pub fn isotriviality(&self) -> Isotriviality {
        if self.a.is_zero() {
            return Isotriviality::J0;
        }
        if self.b.is_zero() {
            return Isotriviality::J1728;
        }
        // A^3 / B^2 constant iff A^3 * lc(B^2) = B^2 * lc(A^3)
        let a3 = self.a.pow(3);
        let b2 = self.b.pow(2);
        if a3.scale(&b2.leading()) == b2.scale(&a3.leading()) {
            Isotriviality::TwistForm
        } else {
            Isotriviality::NonIsotrivial
        }
    }

    /// The fiber at `t = m/n` as `y^2 = x^3 + n^4 A(t) x + n^6 B(t)`.
    pub fn fiber_curve(&self, t: &BigRational) -> Result<WeierstrassCurve> {
        self.fiber_curve_homogeneous(t.numer(), t.denom())
    }

    pub fn fiber_curve_homogeneous(&self, m: &BigInt, n: &BigInt) -> Result<WeierstrassCurve> {
        let a = self.a.eval_homogeneous(m, n)?;
        let b = self.b.eval_homogeneous(m, n)?;
        WeierstrassCurve::short(BigRational::from_integer(a), BigRational::from_integer(b))
            .map_err(|_| Error::SingularFiber(format!("{m}/{n}")))
    }
}

impl fmt::Display for EllipticSurfaceModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^2 = x^3 + ({})x + ({})", self.a, self.b)
    }
}

/// `Y^2 = a4 T^4 + a3 T^3 + a2 T^2 + a1 T + a0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuarticModel {
    pub a4: BigRational,
    pub a3: BigRational,
    pub a2: BigRational,
    pub a1: BigRational,
    pub a0: BigRational,
}

impl QuarticModel {
    pub fn new(a4: BigRational, a3: BigRational, a2: BigRational, a1: BigRational, a0: BigRational) -> Result<QuarticModel> {
        if a4.is_zero() {
            return Err(Error::ZeroLeading);
        }
        Ok(QuarticModel { a4, a3, a2, a1, a0 })
    }

    pub fn from_ints(c: [i64; 5]) -> Result<QuarticModel> {
        QuarticModel::new(q(c[0]), q(c[1]), q(c[2]), q(c[3]), q(c[4]))
    }

    pub fn to_poly(&self) -> RatPoly {
        RatPoly::new(vec![self.a0.clone(), self.a1.clone(), self.a2.clone(), self.a3.clone(), self.a4.clone()])
    }

    fn from_poly(p: &RatPoly) -> QuarticModel {
        QuarticModel { a4: p.coeff(4), a3: p.coeff(3), a2: p.coeff(2), a1: p.coeff(1), a0: p.coeff(0) }
    }

    pub fn eval(&self, t: &BigRational) -> BigRational {
        self.to_poly().eval(t)
    }

    pub fn contains(&self, t: &BigRational, y: &BigRational) -> bool {
        y * y == self.eval(t)
    }
}

/// A depressed quartic and the shift `s` with `T_old = T_new + s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Depressed {
    pub model: QuarticModel,
    pub shift: BigRational,
}

pub fn depress_quartic(q: &QuarticModel) -> Depressed {
    let shift = -(&q.a3) / (BigRational::from_integer(BigInt::from(4)) * &q.a4);
    let model = QuarticModel::from_poly(&q.to_poly().shift(&shift));
    Depressed { model, shift }
}

fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    (&n * &n == *x.numer() && &d * &d == *x.denom()).then(|| BigRational::new(n, d))
}

/// The Weierstrass model `S^2 + (h1/4) S = R^3 - g0 R^2 - (h0/4) R` of a
/// depressed quartic with square leading coefficient `b^2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuarticWeierstrass {
    pub curve: WeierstrassCurve,
    pub b: BigRational,
    pub g0: BigRational,
    pub h1: BigRational,
    pub h0: BigRational,
}

impl QuarticWeierstrass {
    /// `(T, Y) ↦ (R, S) = ((T^2 + g0 + Y/b)/2, R T)`.
    pub fn transport(&self, t: &BigRational, y: &BigRational) -> Point {
        let r = (t * t + &self.g0 + y / &self.b) / q(2);
        let s = &r * t;
        Point::affine(r, s)
    }

    /// Image of the point at infinity with `Y/T^2 → b`.
    pub fn infinity_plus(&self) -> Point {
        Point::Infinity
    }

    /// Image of the point at infinity with `Y/T^2 → -b`.
    pub fn infinity_minus(&self) -> Point {
        Point::affine(BigRational::zero(), -(&self.h1) / q(4))
    }
}

pub fn quartic_to_weierstrass(m: &QuarticModel) -> Result<QuarticWeierstrass> {
    if !m.a3.is_zero() {
        return Err(Error::NotDepressed);
    }
    let b = rational_sqrt(&m.a4).ok_or_else(|| Error::LeadingNotSquare(m.a4.to_string()))?;
    let g0 = &m.a2 / (q(2) * &m.a4);
    let h1 = &m.a1 / &m.a4;
    let h0 = (q(4) * &m.a4 * &m.a0 - &m.a2 * &m.a2) / (q(4) * &m.a4 * &m.a4);
    let z = BigRational::zero();
    let curve = WeierstrassCurve::new(z.clone(), -g0.clone(), &h1 / q(4), -(&h0) / q(4), z)?;
    Ok(QuarticWeierstrass { curve, b, g0, h1, h0 })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SectionAnalysis {
    InfiniteOrderSection,
    TwoTorsionOnly,
    /// `A = a4 (T^2 - α)(T^2 - β)` after depression, `α ≤ β`.
    BiquadraticConicBundle { alpha: String, beta: String },
}

fn depressed_a(a: &IntPoly) -> Result<Depressed> {
    if a.degree() != Some(4) {
        return Err(Error::NotDegreeFour(a.degree().unwrap_or(0)));
    }
    let c = |i: usize| BigRational::from_integer(a.coeff(i));
    Ok(depress_quartic(&QuarticModel::new(c(4), c(3), c(2), c(1), c(0))?))
}

/// Section structure of `y^2 = x^3 + A(T) x` for `deg A = 4`.
pub fn analyze_section_j1728(a: &IntPoly) -> Result<SectionAnalysis> {
    let d = depressed_a(a)?.model;
    if !d.a1.is_zero() {
        return Ok(SectionAnalysis::InfiniteOrderSection);
    }
    // a4 u^2 + a2 u + a0 with rational roots
    let disc = &d.a2 * &d.a2 - q(4) * &d.a4 * &d.a0;
    if let Some(r) = rational_sqrt(&disc) {
        let two_a = q(2) * &d.a4;
        let u1 = (-(&d.a2) - &r) / &two_a;
        let u2 = (-(&d.a2) + &r) / &two_a;
        let (lo, hi) = if u1 <= u2 { (u1, u2) } else { (u2, u1) };
        return Ok(SectionAnalysis::BiquadraticConicBundle { alpha: lo.to_string(), beta: hi.to_string() });
    }
    Ok(SectionAnalysis::TwoTorsionOnly)
}

/// The curve `C_x` cut out by fixing `x` on `y^2 = x^3 + A(T) x`, as a quartic
/// in the depressed parameter.
pub fn section_quartic(a: &IntPoly, x: &BigRational) -> Result<QuarticModel> {
    let d = depressed_a(a)?.model;
    QuarticModel::new(&d.a4 * x, BigRational::zero(), &d.a2 * x, &d.a1 * x, &d.a0 * x + x * x * x)
}

/// One sample of the section construction at `x = a4 z^2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionSample {
    pub z: BigRational,
    pub x: BigRational,
    pub model: QuarticWeierstrass,
    pub point: Point,
    /// Scaling used to reach an integral model.
    pub alpha: BigInt,
    pub lutz_nagell: LutzNagell,
    pub order: TorsionOrder,
}

/// Smallest `w ≥ 3` prime to `2 a4 k`, so that `z = k / w` gives `x = a4 z^2`
/// a denominator prime to `2 a4`.
pub fn admissible_denominator(a4: &BigInt, k: i64) -> i64 {
    let m = a4.abs() * BigInt::from(2 * k.abs().max(1));
    (3..).find(|w: &i64| BigInt::from(*w).gcd(&m).is_one()).expect("unbounded search")
}

pub fn section_sample(a: &IntPoly, z: &BigRational) -> Result<SectionSample> {
    let d = depressed_a(a)?.model;
    let x = &d.a4 * z * z;
    let model = quartic_to_weierstrass(&section_quartic(a, &x)?)?;
    let point = model.infinity_minus();
    // α = 2 a4 v with v the denominator of x, else the generic factor
    let a4 = d.a4.numer() * d.a4.denom();
    let mut alpha = BigInt::from(2) * a4.abs() * x.denom();
    let integral = match model.curve.scale_to_integral(&alpha) {
        Ok(c) => c,
        Err(_) => {
            alpha = model.curve.integral_scaling_factor();
            model.curve.scale_to_integral(&alpha)?
        }
    };
    let lutz_nagell = lutz_nagell_filter(&integral, &scale_point(&point, &alpha))?;
    let order = torsion_order(&model.curve, &point, 12)?;
    Ok(SectionSample { z: z.clone(), x, model, point, alpha, lutz_nagell, order })
}

/// Samples `z = k / w` for `k = 1..=n` with admissible `w`.
pub fn section_samples(a: &IntPoly, n: i64) -> Result<Vec<SectionSample>> {
    let a4 = depressed_a(a)?.model.a4;
    let a4 = a4.numer() * a4.denom();
    (1..=n)
        .map(|k| {
            let w = admissible_denominator(&a4, k);
            section_sample(a, &BigRational::new(BigInt::from(k), BigInt::from(w)))
        })
        .collect()
}

impl fmt::Display for QuarticModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Y^2 = {}", self.to_poly())
    }
}

impl QuarticWeierstrass {
    pub fn describe(&self) -> String {
        format!(
            "S^2 + ({})S = R^3 - ({})R^2 - ({})R",
            &self.h1 / q(4),
            self.g0,
            &self.h0 / q(4)
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constancy::{SurfaceJ0, SurfaceJ1728};
    use crate::poly::parse_poly;

    fn p(s: &str) -> IntPoly {
        parse_poly(s).unwrap()
    }

    fn model(a: &str, b: &str) -> EllipticSurfaceModel {
        EllipticSurfaceModel::new(p(a), p(b)).unwrap()
    }

    fn qi(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn rationality() {
        assert!(is_rational_surface(&p("T^4"), &p("T^6")).unwrap());
        assert!(!is_rational_surface(&p("0"), &p("T^7")).unwrap());
        assert!(matches!(is_rational_surface(&p("0"), &p("0")), Err(Error::SingularSurface)));
    }

    #[test]
    fn kodaira_examples() {
        let zero = Place::linear(&BigRational::zero());
        assert_eq!(model("T^2", "T^3").kodaira_type(&zero).unwrap(), KodairaType::I0Star);
        assert_eq!(model("T", "0").kodaira_type(&zero).unwrap(), KodairaType::III);
        assert_eq!(model("0", "T").kodaira_type(&zero).unwrap(), KodairaType::II);
        let one = Place::linear(&q(1));
        assert!(matches!(model("0", "T").kodaira_type(&one), Err(Error::PlaceNotOnDiscriminant)));
    }

    #[test]
    fn valuation_table() {
        use KodairaType::*;
        let t = |a, b, d| KodairaType::from_valuations(a, b, d).unwrap();
        assert_eq!(t(Some(0), Some(0), 5), I(5));
        assert_eq!(t(Some(2), Some(3), 8), IStar(2));
        assert_eq!(t(Some(3), Some(4), 8), IVStar);
        assert_eq!(t(Some(3), None, 9), IIIStar);
        assert_eq!(t(None, Some(5), 10), IIStar);
        assert!(matches!(KodairaType::from_valuations(Some(1), Some(1), 0), Err(Error::GoodReduction)));
    }

    #[test]
    fn euler_sums() {
        for (a, b) in [
            ("T^2", "T^3"),
            ("T", "0"),
            ("0", "T"),
            ("0", "T^5 + 3*T + 1"),
            ("T^4 + 1", "0"),
            ("T^2 + T + 1", "T^3 - 2"),
            ("-3*T^4", "2*T^6 + T"),
        ] {
            assert_eq!(model(a, b).euler_sum().unwrap(), 12, "{a}, {b}");
        }
    }

    #[test]
    fn del_pezzo() {
        assert!(model("0", "T^5 + T + 1").is_del_pezzo_degree1().unwrap());
        assert!(model("0", "T^6 + 1").is_del_pezzo_degree1().unwrap());
        assert!(!model("T^2", "T^3").is_del_pezzo_degree1().unwrap());
    }

    #[test]
    fn isotriviality_examples() {
        assert_eq!(model("0", "T^6 + 1").isotriviality(), Isotriviality::J0);
        assert_eq!(model("T^4 + 1", "0").isotriviality(), Isotriviality::J1728);
        assert_eq!(model("T^4 + 2*T^2 + 1", "T^6 + 3*T^4 + 3*T^2 + 1").isotriviality(), Isotriviality::TwistForm);
        assert_eq!(model("T", "T + 1").isotriviality(), Isotriviality::NonIsotrivial);
    }

    #[test]
    fn places_split_rational_roots() {
        let m = model("0", "T^3 - T");
        let places = m.places().unwrap();
        assert_eq!(places.len(), 4);
        assert_eq!(places[3], Place::Infinity);
        let m = model("0", "T^2 + 1");
        let places: Vec<String> = m.places().unwrap().iter().map(|p| p.to_string()).collect();
        assert_eq!(places, vec!["T^2 + 1", "inf"]);
    }

    #[test]
    fn depress_examples() {
        let d = depress_quartic(&QuarticModel::from_ints([1, 4, 0, 0, 0]).unwrap());
        assert_eq!(d.model, QuarticModel::from_ints([1, 0, -6, 8, -3]).unwrap());
        assert_eq!(d.shift, q(-1));
        for c in [[1, 0, 2, 3, 4], [2, 0, 0, 0, 1]] {
            let m = QuarticModel::from_ints(c).unwrap();
            assert_eq!(depress_quartic(&m).model, m);
        }
    }

    #[test]
    fn quartic_examples() {
        let w = quartic_to_weierstrass(&QuarticModel::from_ints([1, 0, 0, 0, 2]).unwrap()).unwrap();
        assert_eq!((w.g0.clone(), w.h1.clone(), w.h0.clone()), (q(0), q(0), q(2)));
        assert_eq!(w.describe(), "S^2 + (0)S = R^3 - (0)R^2 - (1/2)R");
        assert_eq!(w.infinity_minus(), Point::affine(q(0), q(0)));
        assert!(w.curve.double(&w.infinity_minus()).unwrap().is_infinity());

        let w = quartic_to_weierstrass(&QuarticModel::from_ints([1, 0, 0, 1, 2]).unwrap()).unwrap();
        assert_eq!(w.h1, q(1));
        assert_eq!(w.infinity_minus(), Point::affine(q(0), qi(-1, 4)));
        assert!(w.curve.contains(&w.infinity_minus()));

        let w = quartic_to_weierstrass(&QuarticModel::from_ints([4, 0, 0, 0, 1]).unwrap()).unwrap();
        assert_eq!(w.h0, qi(1, 4));

        assert!(matches!(
            quartic_to_weierstrass(&QuarticModel::from_ints([2, 0, 0, 0, 1]).unwrap()),
            Err(Error::LeadingNotSquare(_))
        ));
        assert!(matches!(
            quartic_to_weierstrass(&QuarticModel::from_ints([1, 1, 0, 0, 1]).unwrap()),
            Err(Error::NotDepressed)
        ));
    }

    #[test]
    fn transport_lands_on_curve() {
        // Y^2 = T^4 - 6T^2 + 8T - 3 + 16 has the point T = 1, Y = 4
        let m = QuarticModel::from_ints([1, 0, -6, 8, 13]).unwrap();
        assert!(m.contains(&q(1), &q(4)));
        let w = quartic_to_weierstrass(&m).unwrap();
        for y in [q(4), q(-4)] {
            assert!(w.curve.contains(&w.transport(&q(1), &y)));
        }
    }

    #[test]
    fn section_analysis_examples() {
        assert_eq!(analyze_section_j1728(&p("T^4 + T + 1")).unwrap(), SectionAnalysis::InfiniteOrderSection);
        assert_eq!(
            analyze_section_j1728(&p("T^4 + 4*T^3 + 6*T^2 + 4*T + 2")).unwrap(),
            SectionAnalysis::TwoTorsionOnly
        );
        assert_eq!(
            analyze_section_j1728(&p("T^4 - 5*T^2 + 4")).unwrap(),
            SectionAnalysis::BiquadraticConicBundle { alpha: "1".into(), beta: "4".into() }
        );
        assert!(matches!(analyze_section_j1728(&p("T^3 + 1")), Err(Error::NotDegreeFour(3))));
    }

    #[test]
    fn section_samples() {
        let s = section_sample(&p("T^4 + 1"), &q(3)).unwrap();
        assert_eq!(s.order, TorsionOrder::Order(2));
        // integral z: the double stays integral, the multiples do not
        let s = section_sample(&p("T^4 + T + 1"), &q(2)).unwrap();
        assert_eq!(s.lutz_nagell, LutzNagell::TorsionCandidate);
        assert_eq!(s.order, TorsionOrder::Infinite);
        let s = section_sample(&p("T^4 + T + 1"), &qi(2, 3)).unwrap();
        assert_eq!(s.lutz_nagell, LutzNagell::InfiniteOrder);
        assert!(s.model.curve.contains(&s.point));
        assert_eq!(admissible_denominator(&BigInt::from(1), 3), 5);
        assert_eq!(admissible_denominator(&BigInt::from(5), 2), 3);
    }

    #[test]
    fn fiber_curves() {
        let m = EllipticSurfaceModel::from_surface(&Surface::J0(SurfaceJ0::new(1053, 39).unwrap())).unwrap();
        let c = m.fiber_curve(&q(0)).unwrap();
        assert_eq!(c.coefficients()[4], &q(39));
        let m = EllipticSurfaceModel::from_surface(&Surface::J1728(SurfaceJ1728::new(3, 5, 7).unwrap())).unwrap();
        assert_eq!(m.fiber_curve(&q(1)).unwrap().coefficients()[3], &q(238));
        let m = EllipticSurfaceModel::from_surface(&Surface::J0(SurfaceJ0::new(27, 16).unwrap())).unwrap();
        assert_eq!(m.fiber_curve(&qi(1, 2)).unwrap().coefficients()[4], &q(1051));
        let m = model("T", "0");
        assert!(matches!(m.fiber_curve(&q(0)), Err(Error::SingularFiber(_))));
    }
}
