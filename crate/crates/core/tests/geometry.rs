use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rootscan::geometry::{
    depress_quartic, quartic_to_weierstrass, EllipticSurfaceModel, KodairaType, Place, QuarticModel,
};
use rootscan::poly::IntPoly;
use rootscan::weierstrass::Point;

fn poly(max_deg: usize) -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-4i64..=4, 0..=max_deg + 1).prop_map(IntPoly::from_coeffs)
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn model(a: IntPoly, b: IntPoly) -> Option<EllipticSurfaceModel> {
    EllipticSurfaceModel::new(a, b).ok()
}

fn minimal(m: &EllipticSurfaceModel) -> bool {
    m.places().unwrap().iter().all(|p| {
        let (va, vb, _) = m.valuations(p).unwrap();
        !(va.is_none_or(|v| v >= 4) && vb.is_none_or(|v| v >= 6))
    })
}

fn configuration(m: &EllipticSurfaceModel) -> Vec<(usize, KodairaType)> {
    let mut v: Vec<_> = m.fiber_configuration().unwrap().into_iter().map(|(p, k)| (p.degree(), k)).collect();
    v.sort_by_key(|(d, k)| (*d, k.to_string()));
    v
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, ..ProptestConfig::default() })]

    #[test]
    fn euler_sum_is_twelve_on_minimal_rational_models(a in poly(4), b in poly(6)) {
        let Some(m) = model(a, b) else { return Ok(()) };
        prop_assume!(m.is_rational() && minimal(&m));
        prop_assert_eq!(m.euler_sum().unwrap(), 12, "A = {}, B = {}", m.a(), m.b());
    }

    #[test]
    fn configuration_is_invariant_under_translation(a in poly(4), b in poly(6), c in -3i64..=3) {
        let Some(m) = model(a.clone(), b.clone()) else { return Ok(()) };
        let c = BigInt::from(c);
        let moved = model(a.shift_int(&c), b.shift_int(&c)).unwrap();
        prop_assert_eq!(configuration(&m), configuration(&moved));
    }

    #[test]
    fn transport_lands_on_the_curve(
        b in 1i64..6, a3 in -6i64..6, a2 in -6i64..6, a1 in -6i64..6, t in -5i64..5, y in -9i64..9,
    ) {
        // choose a0 so that (t, y) lies on Y^2 = b^2 T^4 + a3 T^3 + a2 T^2 + a1 T + a0
        let (bt, tt) = (b * b, t);
        let a0 = y * y - (bt * tt.pow(4) + a3 * tt.pow(3) + a2 * tt * tt + a1 * tt);
        let quartic = QuarticModel::from_ints([bt, a3, a2, a1, a0]).unwrap();
        prop_assert!(quartic.contains(&q(t), &q(y)));
        let d = depress_quartic(&quartic);
        prop_assert!(d.model.contains(&(q(t) - &d.shift), &q(y)));
        let Ok(w) = quartic_to_weierstrass(&d.model) else { return Ok(()) };
        let p = w.transport(&(q(t) - &d.shift), &q(y));
        prop_assert!(w.curve.contains(&p));
        prop_assert!(w.curve.contains(&w.infinity_minus()));
        prop_assert_eq!(w.infinity_plus(), Point::Infinity);
    }
}

#[test]
fn isotrivial_configurations() {
    use KodairaType::*;
    let allowed_twist = [I0Star];
    let allowed_1728 = [I0Star, III, IIIStar];
    let allowed_0 = [I0Star, II, IIStar, IV, IVStar];
    let mut seen = [0usize; 3];
    for c in 1..=40i64 {
        let f = IntPoly::from_coeffs(vec![c, -2, 1, c % 3]);
        let g = IntPoly::from_coeffs(vec![1, c]);
        // y^2 = x^3 + f^2 x + f^3: a twist of a constant curve
        let twist = model(f.mul(&f), f.mul(&f).mul(&f));
        // y^2 = x^3 + A x and y^2 = x^3 + B
        let j1728 = model(f.mul(&g), IntPoly::zero(6));
        let j0 = model(IntPoly::zero(4), f.mul(&f).mul(&g));
        for (i, (m, allowed)) in [(twist, &allowed_twist[..]), (j1728, &allowed_1728[..]), (j0, &allowed_0[..])]
            .into_iter()
            .enumerate()
        {
            let Some(m) = m else { continue };
            for (p, k) in m.fiber_configuration().unwrap() {
                assert!(allowed.contains(&k), "{k} at {p} for A = {}, B = {}", m.a(), m.b());
                seen[i] += 1;
            }
        }
    }
    assert!(seen.iter().all(|&n| n > 0));
}

#[test]
fn places_include_infinity_only_when_needed() {
    let m = model(IntPoly::zero(4), IntPoly::from_coeffs(vec![1, 0, 0, 0, 0, 0, 1])).unwrap();
    assert!(!m.places().unwrap().contains(&Place::Infinity));
    let m = model(IntPoly::zero(4), IntPoly::from_coeffs(vec![1, 1])).unwrap();
    assert!(m.places().unwrap().contains(&Place::Infinity));
}
