use num_rational::BigRational;
use proptest::prelude::*;

use qdisc::fock;
use qdisc::modalg::{ExtKey, ExtendedFinite, ModuleAlgebra, PolCq, StarAlgebra, UqModule};
use qdisc::ncpoly::{self, NCExpr, Word};
use qdisc::parse;
use qdisc::scalars::IntPoly;
use qdisc::uqsl2::{self, Pbw, UqElement};
use qdisc::{LinComb, Scalar};

fn poly(max_len: usize) -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-5i64..=5, 0..=max_len).prop_map(|c| IntPoly::from_i64s(&c))
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (poly(4), poly(3), -3i64..=3).prop_map(|(n, d, k)| {
        let d = if d.is_zero() { IntPoly::one() } else { d };
        Scalar::from_parts(n, d).unwrap() * Scalar::s_pow(k)
    })
}

fn uq_element() -> impl Strategy<Value = UqElement> {
    prop::collection::vec(((0u32..=2, -2i32..=2, 0u32..=2), scalar()), 1..=3)
        .prop_map(|terms| terms.into_iter().map(|((f, k, e), c)| (Pbw::new(f, k, e), c)).collect())
}

fn disc_word(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(prop_oneof![Just(ncpoly::Z), Just(ncpoly::ZSTAR)], 0..=max_len).prop_map(Word)
}

fn pol_element() -> impl Strategy<Value = LinComb<(u32, u32)>> {
    prop::collection::vec(((0u32..=3, 0u32..=3), scalar()), 0..=3).prop_map(|t| t.into_iter().collect())
}

fn ext_element() -> impl Strategy<Value = LinComb<ExtKey>> {
    let key = prop_oneof![
        (0u32..=2, 0u32..=2).prop_map(|(a, b)| ExtKey::Pol(a, b)),
        (0u32..=2, 0u32..=2).prop_map(|(a, b)| ExtKey::Fin(a, b)),
    ];
    prop::collection::vec((key, scalar()), 0..=3).prop_map(|t| t.into_iter().collect())
}

fn generator() -> impl Strategy<Value = UqElement> {
    prop_oneof![Just(uqsl2::e()), Just(uqsl2::f()), Just(uqsl2::k_pow(1)), Just(uqsl2::k_pow(-1))]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn scalar_field(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!((&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &a * &b + &a * &c);
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), Scalar::one());
        }
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in scalar(), b in scalar(), n in 1i64..=7, d in 8i64..=13) {
        let s0 = BigRational::new(n.into(), d.into());
        if let (Ok(x), Ok(y), Ok(p)) = (a.eval_at_s(&s0), b.eval_at_s(&s0), (&a * &b).eval_at_s(&s0)) {
            prop_assert_eq!(p, &x * &y);
            prop_assert_eq!((&a + &b).eval_at_s(&s0).unwrap(), x + y);
        }
    }

    #[test]
    fn scalar_display_parses_back(a in scalar()) {
        prop_assert_eq!(parse::parse_scalar(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn pbw_product_is_associative(x in uq_element(), y in uq_element(), z in uq_element()) {
        let l = uqsl2::multiply(&uqsl2::multiply(&x, &y), &z);
        let r = uqsl2::multiply(&x, &uqsl2::multiply(&y, &z));
        prop_assert_eq!(l, r);
    }

    #[test]
    fn hopf_maps(x in uq_element(), y in uq_element()) {
        let xy = uqsl2::multiply(&x, &y);
        prop_assert_eq!(uqsl2::counit(&xy), uqsl2::counit(&x) * uqsl2::counit(&y));
        prop_assert_eq!(
            uqsl2::comultiply(&xy),
            uqsl2::tensor_mul(&uqsl2::comultiply(&x), &uqsl2::comultiply(&y))
        );
        prop_assert_eq!(
            uqsl2::antipode(&xy),
            uqsl2::multiply(&uqsl2::antipode(&y), &uqsl2::antipode(&x))
        );
        prop_assert_eq!(uqsl2::involution(&uqsl2::involution(&x)), x.clone());
        let dx = uqsl2::comultiply(&x);
        let left = uqsl2::contract(&dx, uqsl2::antipode, |u| u.clone());
        let right = uqsl2::contract(&dx, |u| u.clone(), uqsl2::antipode);
        let eps = uqsl2::one().scale(&uqsl2::counit(&x));
        prop_assert_eq!(&left, &eps);
        prop_assert_eq!(&right, &eps);
    }

    #[test]
    fn uq_display_parses_back(x in uq_element()) {
        prop_assert_eq!(parse::parse_uq(&uqsl2::format(&x)).unwrap(), x);
    }

    #[test]
    fn normal_form_idempotent_and_linear(w1 in disc_word(6), w2 in disc_word(6), c in scalar()) {
        let p = ncpoly::pol_c_q();
        let (e1, e2) = (NCExpr::basis(w1), NCExpr::basis(w2));
        let n1 = p.normal_form(&e1).unwrap();
        let n2 = p.normal_form(&e2).unwrap();
        prop_assert_eq!(p.normal_form(&n1).unwrap(), n1.clone());
        prop_assert_eq!(p.normal_form(&e1.add(&e2.scale(&c))).unwrap(), n1.add(&n2.scale(&c)));
        prop_assert!(n1.keys().all(|w| p.is_normal_word(w)));
    }

    #[test]
    fn pol_star_is_an_antilinear_antiautomorphism(f in pol_element(), g in pol_element()) {
        let pol = PolCq::new();
        prop_assert_eq!(pol.star(&pol.star(&f)), f.clone());
        prop_assert_eq!(pol.star(&pol.mul(&f, &g)), pol.mul(&pol.star(&g), &pol.star(&f)));
    }

    #[test]
    fn module_algebra_on_pol(xi in generator(), f in pol_element(), g in pol_element()) {
        let pol = PolCq::new();
        let lhs = pol.act(&xi, &pol.mul(&f, &g));
        let mut rhs = LinComb::zero();
        for (key, c) in &uqsl2::comultiply(&xi) {
            let a = pol.act(&UqElement::basis(key[0]), &f);
            let b = pol.act(&UqElement::basis(key[1]), &g);
            rhs.add_scaled(&pol.mul(&a, &b), c);
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn star_compatibility_on_finite(xi in generator(), f in ext_element()) {
        let ext = ExtendedFinite::new();
        let lhs = ext.star(&ext.act(&xi, &f));
        let rhs = ext.act(&uqsl2::star_of_antipode(&xi), &ext.star(&f));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn fock_is_multiplicative(f in ext_element(), g in ext_element()) {
        let ext = ExtendedFinite::new();
        let n = 10;
        let (tf, tg, tfg) = (
            fock::represent(&f, n).unwrap(),
            fock::represent(&g, n).unwrap(),
            fock::represent(&ext.mul(&f, &g), n).unwrap(),
        );
        // entries on columns untouched by the truncation of either factor
        let cols = (tf.boundary_start + tg.boundary_start).saturating_sub(n + 1).min(tfg.boundary_start);
        prop_assert_eq!(tf.mul(&tg).valid_entries(cols), tfg.valid_entries(cols));
    }
}
