//! Long Weierstrass curves over Q with exact chord-tangent arithmetic.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeierstrassCurve {
    pub a1: BigRational,
    pub a2: BigRational,
    pub a3: BigRational,
    pub a4: BigRational,
    pub a6: BigRational,
    pub b2: BigRational,
    pub b4: BigRational,
    pub b6: BigRational,
    pub b8: BigRational,
    pub c4: BigRational,
    pub c6: BigRational,
    pub discriminant: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Point {
    Infinity,
    Affine { x: BigRational, y: BigRational },
}

impl Point {
    pub fn affine(x: BigRational, y: BigRational) -> Point {
        Point::Affine { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Point {
        Point::Affine { x: q(x), y: q(y) }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }

    pub fn is_integral(&self) -> bool {
        match self {
            Point::Infinity => true,
            Point::Affine { x, y } => x.is_integer() && y.is_integer(),
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Infinity => f.write_str("O"),
            Point::Affine { x, y } => write!(f, "({x}, {y})"),
        }
    }
}

impl WeierstrassCurve {
    pub fn new(
        a1: BigRational,
        a2: BigRational,
        a3: BigRational,
        a4: BigRational,
        a6: BigRational,
    ) -> Result<WeierstrassCurve> {
        let b2 = &a1 * &a1 + q(4) * &a2;
        let b4 = q(2) * &a4 + &a1 * &a3;
        let b6 = &a3 * &a3 + q(4) * &a6;
        let b8 = &a1 * &a1 * &a6 + q(4) * &a2 * &a6 - &a1 * &a3 * &a4 + &a2 * &a3 * &a3 - &a4 * &a4;
        let c4 = &b2 * &b2 - q(24) * &b4;
        let c6 = -(&b2 * &b2 * &b2) + q(36) * &b2 * &b4 - q(216) * &b6;
        let discriminant = -(&b2 * &b2 * &b8) - q(8) * &b4 * &b4 * &b4 - q(27) * &b6 * &b6
            + q(9) * &b2 * &b4 * &b6;
        if discriminant.is_zero() {
            return Err(Error::SingularCurve);
        }
        Ok(WeierstrassCurve { a1, a2, a3, a4, a6, b2, b4, b6, b8, c4, c6, discriminant })
    }

    /// `y^2 = x^3 + a4 x + a6`.
    pub fn short(a4: BigRational, a6: BigRational) -> Result<WeierstrassCurve> {
        let z = BigRational::zero();
        WeierstrassCurve::new(z.clone(), z.clone(), z, a4, a6)
    }

    pub fn short_int(a4: i64, a6: i64) -> Result<WeierstrassCurve> {
        WeierstrassCurve::short(q(a4), q(a6))
    }

    pub fn coefficients(&self) -> [&BigRational; 5] {
        [&self.a1, &self.a2, &self.a3, &self.a4, &self.a6]
    }

    pub fn is_integral(&self) -> bool {
        self.coefficients().iter().all(|c| c.is_integer())
    }

    pub fn contains(&self, p: &Point) -> bool {
        match p {
            Point::Infinity => true,
            Point::Affine { x, y } => {
                let lhs = y * y + &self.a1 * x * y + &self.a3 * y;
                let rhs = x * x * x + &self.a2 * x * x + &self.a4 * x + &self.a6;
                lhs == rhs
            }
        }
    }

    fn check(&self, p: &Point) -> Result<()> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(Error::PointNotOnCurve)
        }
    }

    pub fn negate(&self, p: &Point) -> Result<Point> {
        self.check(p)?;
        Ok(self.neg_unchecked(p))
    }

    fn neg_unchecked(&self, p: &Point) -> Point {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine { x, y } => Point::Affine {
                x: x.clone(),
                y: -y - &self.a1 * x - &self.a3,
            },
        }
    }

    pub fn add(&self, p: &Point, r: &Point) -> Result<Point> {
        self.check(p)?;
        self.check(r)?;
        Ok(self.add_unchecked(p, r))
    }

    pub fn double(&self, p: &Point) -> Result<Point> {
        self.add(p, p)
    }

    fn add_unchecked(&self, p: &Point, r: &Point) -> Point {
        let (x1, y1, x2, y2) = match (p, r) {
            (Point::Infinity, _) => return r.clone(),
            (_, Point::Infinity) => return p.clone(),
            (Point::Affine { x: x1, y: y1 }, Point::Affine { x: x2, y: y2 }) => (x1, y1, x2, y2),
        };
        let lambda;
        let nu;
        if x1 == x2 {
            let y1n = -y2 - &self.a1 * x2 - &self.a3;
            if *y1 == y1n {
                // P2 = -P1, including the vertical tangent at 2-torsion
                return Point::Infinity;
            }
            let den = q(2) * y1 + &self.a1 * x1 + &self.a3;
            lambda = (q(3) * x1 * x1 + q(2) * &self.a2 * x1 + &self.a4 - &self.a1 * y1) / &den;
            nu = (-(x1 * x1 * x1) + &self.a4 * x1 + q(2) * &self.a6 - &self.a3 * y1) / &den;
        } else {
            lambda = (y2 - y1) / (x2 - x1);
            nu = (y1 * x2 - y2 * x1) / (x2 - x1);
        }
        let x3 = &lambda * &lambda + &self.a1 * &lambda - &self.a2 - x1 - x2;
        let y3 = -(&lambda + &self.a1) * &x3 - &nu - &self.a3;
        Point::Affine { x: x3, y: y3 }
    }

    /// `[k]P` for any integer `k`.
    pub fn mul(&self, p: &Point, k: i64) -> Result<Point> {
        self.check(p)?;
        let base = if k < 0 { self.neg_unchecked(p) } else { p.clone() };
        let mut n = k.unsigned_abs();
        let mut acc = Point::Infinity;
        let mut b = base;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.add_unchecked(&acc, &b);
            }
            b = self.add_unchecked(&b, &b);
            n >>= 1;
        }
        Ok(acc)
    }

    /// The model with `a_i` replaced by `α^i a_i`; points map by
    /// `(x, y) ↦ (α^2 x, α^3 y)`. Fails unless the result is integral.
    pub fn scale_to_integral(&self, alpha: &BigInt) -> Result<WeierstrassCurve> {
        let s = self.scale(alpha)?;
        if !s.is_integral() {
            return Err(Error::NotIntegralAfterScaling(alpha.to_string()));
        }
        Ok(s)
    }

    /// The `α`-scaled model without an integrality requirement.
    pub fn scale(&self, alpha: &BigInt) -> Result<WeierstrassCurve> {
        if alpha.is_zero() {
            return Err(Error::ZeroInput);
        }
        let a = BigRational::from_integer(alpha.clone());
        let a2 = &a * &a;
        let a3 = &a2 * &a;
        let a4 = &a2 * &a2;
        let a6 = &a3 * &a3;
        WeierstrassCurve::new(
            &self.a1 * &a,
            &self.a2 * &a2,
            &self.a3 * &a3,
            &self.a4 * &a4,
            &self.a6 * &a6,
        )
    }

    /// Smallest positive `α` with `α^i a_i` integral for every `i`.
    pub fn integral_scaling_factor(&self) -> BigInt {
        // the lcm of denominators always works; shrink it prime by prime
        let den = self
            .coefficients()
            .iter()
            .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let mut alpha = den.clone();
        let mut d = den;
        let mut p = BigInt::from(2);
        while d > BigInt::one() {
            if (&d % &p).is_zero() {
                while (&d % &p).is_zero() {
                    d /= &p;
                }
                while (&alpha % &p).is_zero() {
                    let trial = &alpha / &p;
                    if self.scale(&trial).map(|c| c.is_integral()).unwrap_or(false) {
                        alpha = trial;
                    } else {
                        break;
                    }
                }
            }
            p += 1;
        }
        alpha
    }

    /// The integral short model `y^2 = x^3 - 27 c4 x - 54 c6` of an integral
    /// curve, and the point map into it.
    pub fn short_integral_model(&self) -> Result<(WeierstrassCurve, impl Fn(&Point) -> Point + '_)> {
        if !self.is_integral() {
            return Err(Error::NonIntegralModel);
        }
        let short = WeierstrassCurve::short(-q(27) * &self.c4, -q(54) * &self.c6)?;
        let map = move |p: &Point| match p {
            Point::Infinity => Point::Infinity,
            Point::Affine { x, y } => Point::Affine {
                x: q(36) * x + q(3) * &self.b2,
                y: q(108) * (q(2) * y + &self.a1 * x + &self.a3),
            },
        };
        Ok((short, map))
    }
}

pub fn scale_point(p: &Point, alpha: &BigInt) -> Point {
    match p {
        Point::Infinity => Point::Infinity,
        Point::Affine { x, y } => {
            let a = BigRational::from_integer(alpha.clone());
            Point::Affine { x: &a * &a * x, y: &a * &a * &a * y }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LutzNagell {
    TorsionCandidate,
    InfiniteOrder,
}

/// The integrality filter: a torsion point and its double are integral (or
/// the double is `O`) on an integral short model. Long models are first
/// carried to their integral short model, where the classical statement
/// holds without the 2-adic exceptions of the general form.
pub fn lutz_nagell_filter(curve: &WeierstrassCurve, p: &Point) -> Result<LutzNagell> {
    if !curve.is_integral() {
        return Err(Error::NonIntegralModel);
    }
    if !curve.contains(p) {
        return Err(Error::PointNotOnCurve);
    }
    let (short, map) = curve.short_integral_model()?;
    let sp = map(p);
    if !sp.is_integral() {
        return Ok(LutzNagell::InfiniteOrder);
    }
    let d = short.add_unchecked(&sp, &sp);
    if d.is_infinity() || d.is_integral() {
        Ok(LutzNagell::TorsionCandidate)
    } else {
        Ok(LutzNagell::InfiniteOrder)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "order", rename_all = "lowercase")]
pub enum TorsionOrder {
    Order(u32),
    Infinite,
    /// Every multiple up to the bound is integral and none is `O`.
    Inconclusive,
}

pub const MAZUR_ORDERS: [u32; 11] = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12];

pub fn torsion_order(curve: &WeierstrassCurve, p: &Point, bound: u32) -> Result<TorsionOrder> {
    if !curve.contains(p) {
        return Err(Error::PointNotOnCurve);
    }
    let mut acc = Point::Infinity;
    for k in 1..=bound {
        acc = curve.add_unchecked(&acc, p);
        if acc.is_infinity() {
            return Ok(TorsionOrder::Order(k));
        }
    }
    let alpha = curve.integral_scaling_factor();
    let integral = curve.scale_to_integral(&alpha)?;
    let (short, map) = integral.short_integral_model()?;
    let sp = map(&scale_point(p, &alpha));
    let mut acc = Point::Infinity;
    for _ in 1..=bound {
        acc = short.add_unchecked(&acc, &sp);
        if !acc.is_integral() {
            return Ok(TorsionOrder::Infinite);
        }
    }
    Ok(TorsionOrder::Inconclusive)
}

impl fmt::Display for WeierstrassCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut lhs = String::from("y^2");
        let push = |s: &mut String, c: &BigRational, mono: &str| {
            if c.is_zero() {
                return;
            }
            let sign = if c.is_negative() { " - " } else { " + " };
            let mag = c.abs();
            if mono.is_empty() {
                s.push_str(&format!("{sign}{mag}"));
            } else if mag.is_one() {
                s.push_str(&format!("{sign}{mono}"));
            } else {
                s.push_str(&format!("{sign}{mag}*{mono}"));
            }
        };
        push(&mut lhs, &self.a1, "x*y");
        push(&mut lhs, &self.a3, "y");
        let mut rhs = String::from("x^3");
        push(&mut rhs, &self.a2, "x^2");
        push(&mut rhs, &self.a4, "x");
        push(&mut rhs, &self.a6, "");
        write!(f, "{lhs} = {rhs}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn doubling_examples() {
        let e = WeierstrassCurve::short_int(0, 1).unwrap();
        let p = Point::from_ints(2, 3);
        // tangent slope 3x^2 / 2y = 2 at (2, 3); x3 = 4 - 4 = 0, y3 = -(2*0 + 3 - 4) = 1
        assert_eq!(e.double(&p).unwrap(), Point::from_ints(0, 1));
        assert_eq!(e.add(&p, &Point::Infinity).unwrap(), p);
        let e2 = WeierstrassCurve::short_int(-1, 0).unwrap();
        assert_eq!(e2.double(&Point::from_ints(0, 0)).unwrap(), Point::Infinity);
        assert_eq!(e.add(&Point::from_ints(1, 1), &p), Err(Error::PointNotOnCurve));
    }

    #[test]
    fn multiples_oracle_order_six() {
        let e = WeierstrassCurve::short_int(0, 1).unwrap();
        let p = Point::from_ints(2, 3);
        let mut seen = vec![];
        let mut acc = Point::Infinity;
        for _ in 0..6 {
            acc = e.add(&acc, &p).unwrap();
            seen.push(acc.clone());
        }
        assert_eq!(
            seen,
            vec![
                Point::from_ints(2, 3),
                Point::from_ints(0, 1),
                Point::from_ints(-1, 0),
                Point::from_ints(0, -1),
                Point::from_ints(2, -3),
                Point::Infinity
            ]
        );
        assert_eq!(e.mul(&p, 6).unwrap(), Point::Infinity);
        assert_eq!(e.mul(&p, -1).unwrap(), Point::from_ints(2, -3));
    }

    #[test]
    fn scale_examples() {
        let z = BigRational::zero();
        let c = WeierstrassCurve::new(z.clone(), z.clone(), r(1, 4), r(-1, 2), z.clone()).unwrap();
        let s = c.scale_to_integral(&BigInt::from(2)).unwrap();
        assert_eq!(s.a3, r(2, 1));
        assert_eq!(s.a4, r(-8, 1));
        let e = WeierstrassCurve::short_int(3, 5).unwrap();
        assert_eq!(e.scale_to_integral(&BigInt::one()).unwrap(), e);
        let t = WeierstrassCurve::short(r(1, 3), z.clone()).unwrap();
        assert_eq!(t.scale_to_integral(&BigInt::from(3)).unwrap().a4, r(27, 1));
        assert!(matches!(
            c.scale_to_integral(&BigInt::one()),
            Err(Error::NotIntegralAfterScaling(_))
        ));
        assert_eq!(c.integral_scaling_factor(), BigInt::from(2));
    }

    #[test]
    fn lutz_nagell_examples() {
        let e = WeierstrassCurve::short_int(-1, 0).unwrap();
        assert_eq!(lutz_nagell_filter(&e, &Point::from_ints(0, 0)).unwrap(), LutzNagell::TorsionCandidate);
        let e = WeierstrassCurve::short_int(0, 1).unwrap();
        assert_eq!(lutz_nagell_filter(&e, &Point::from_ints(2, 3)).unwrap(), LutzNagell::TorsionCandidate);
        // y^2 = x^3 + 5x through (1/4, 9/8)? 1/64 + 5/4 = 81/64: yes
        let e = WeierstrassCurve::short_int(0, 0);
        assert!(e.is_err());
        let e = WeierstrassCurve::short_int(5, 0).unwrap();
        let p = Point::affine(r(1, 4), r(9, 8));
        assert!(e.contains(&p));
        assert_eq!(lutz_nagell_filter(&e, &p).unwrap(), LutzNagell::InfiniteOrder);
        // (4, 6) on y^2 = x^3 + 5x? 64 + 20 = 84 no; (1, ...) 6 no; use the double of (1/4, 9/8)
        let d = e.double(&p).unwrap();
        assert!(!d.is_integral());
        let nonint = WeierstrassCurve::short(r(1, 2), BigRational::zero()).unwrap();
        assert_eq!(lutz_nagell_filter(&nonint, &Point::from_ints(0, 0)), Err(Error::NonIntegralModel));
    }

    #[test]
    fn torsion_order_examples() {
        let e = WeierstrassCurve::short_int(-1, 0).unwrap();
        assert_eq!(torsion_order(&e, &Point::from_ints(0, 0), 12).unwrap(), TorsionOrder::Order(2));
        let e = WeierstrassCurve::short_int(0, 1).unwrap();
        assert_eq!(torsion_order(&e, &Point::from_ints(2, 3), 12).unwrap(), TorsionOrder::Order(6));
        let e = WeierstrassCurve::short_int(1, 0).unwrap();
        assert_eq!(torsion_order(&e, &Point::from_ints(0, 0), 12).unwrap(), TorsionOrder::Order(2));
        // rank one: (0, 0) on y^2 + y = x^3 - x
        let z = BigRational::zero();
        let e = WeierstrassCurve::new(z.clone(), z.clone(), r(1, 1), r(-1, 1), z.clone()).unwrap();
        assert_eq!(torsion_order(&e, &Point::from_ints(0, 0), 12).unwrap(), TorsionOrder::Infinite);
        // order 4 on a long model with a non-integral 2-torsion point:
        // y^2 + xy - y = x^3 - x^2 (11a3 has torsion Z/5; use y^2 + xy = x^3 - x^2 + ... )
        let e = WeierstrassCurve::new(r(1, 1), z.clone(), r(-1, 1), z.clone(), z.clone()).unwrap();
        let o = torsion_order(&e, &Point::from_ints(0, 0), 12).unwrap();
        assert!(matches!(o, TorsionOrder::Order(k) if MAZUR_ORDERS.contains(&k)) || o == TorsionOrder::Infinite);
    }

    #[test]
    fn short_model_map_is_on_curve() {
        let z = BigRational::zero();
        let e = WeierstrassCurve::new(r(1, 1), r(-1, 1), r(1, 1), r(-2, 1), z.clone()).unwrap();
        let p = Point::from_ints(0, 0);
        assert!(e.contains(&p));
        let (s, map) = e.short_integral_model().unwrap();
        let mut acc = Point::Infinity;
        for _ in 0..6 {
            acc = e.add(&acc, &p).unwrap();
            assert!(s.contains(&map(&acc)));
        }
    }

    mod props {
        use super::super::*;
        use proptest::prelude::*;

        // Points on y^2 = x^3 + a x + b built from (x0, y0) by choosing b.
        fn curve_and_points() -> impl Strategy<Value = (WeierstrassCurve, Vec<Point>)> {
            (-6i64..6, -5i64..5, -5i64..5).prop_filter_map("nonsingular", |(a, x0, y0)| {
                let b = y0 * y0 - x0 * x0 * x0 - a * x0;
                let e = WeierstrassCurve::short_int(a, b).ok()?;
                let p = Point::from_ints(x0, y0);
                let pts: Vec<Point> = (1..=3).map(|k| e.mul(&p, k).unwrap()).collect();
                Some((e, pts))
            })
        }

        proptest! {
            #[test]
            fn associativity((e, pts) in curve_and_points()) {
                let (p, q, r) = (&pts[0], &pts[1], &pts[2]);
                let lhs = e.add(&e.add(p, q).unwrap(), r).unwrap();
                let rhs = e.add(p, &e.add(q, r).unwrap()).unwrap();
                prop_assert_eq!(lhs, rhs);
                let q2 = e.add(q, &e.double(p).unwrap()).unwrap();
                prop_assert!(e.contains(&q2));
            }

            #[test]
            fn inverse((e, pts) in curve_and_points()) {
                for p in &pts {
                    prop_assert_eq!(e.add(p, &e.negate(p).unwrap()).unwrap(), Point::Infinity);
                }
            }

            #[test]
            fn scaling_is_a_homomorphism((e, pts) in curve_and_points(), alpha in 1i64..7) {
                let a = BigInt::from(alpha);
                let s = e.scale(&a).unwrap();
                let (p, q) = (&pts[0], &pts[1]);
                let sum = scale_point(&e.add(p, q).unwrap(), &a);
                let ssum = s.add(&scale_point(p, &a), &scale_point(q, &a)).unwrap();
                prop_assert_eq!(sum, ssum);
            }

            #[test]
            fn torsion_orders_are_mazur_admissible((e, pts) in curve_and_points()) {
                if let TorsionOrder::Order(k) = torsion_order(&e, &pts[0], 12).unwrap() {
                    prop_assert!(MAZUR_ORDERS.contains(&k));
                }
            }
        }
    }
}
