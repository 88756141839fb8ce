mod common;

use common::*;
use hecke_core::hecke::{self, HeckeElement};
use hecke_core::kms::{
    big_to_f64, kms_identity_check, phi_element, phi_symmetric, phi_symmetric_f64, phi_via_kms,
};
use hecke_core::oracle::small_monomials;
use hecke_core::torsion::{denominator, TorsionClass};
use hecke_core::{FieldCtx, Rat};
use num_traits::Signed;
use proptest::prelude::*;

fn combo(k: &FieldCtx, idx: &[(usize, i128)]) -> HeckeElement {
    let monos = small_monomials(k, 4);
    HeckeElement::from_terms(
        idx.iter()
            .map(|&(i, c)| (monos[i % monos.len()].clone(), Rat::from_integer(c))),
    )
}

fn kms_fields() -> impl Strategy<Value = FieldCtx> {
    prop::sample::select(vec![0i64, 1, 3]).prop_map(ctx)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(80))]

    #[test]
    fn kms_condition(k in kms_fields(), i in any::<usize>(), j in any::<usize>(), beta in 2i64..5) {
        let x = combo(&k, &[(i, 1)]);
        let y = combo(&k, &[(j, 1)]);
        prop_assert!(kms_identity_check(&k, &x, &y, beta));
    }

    #[test]
    fn positive_on_squares(k in kms_fields(), terms in prop::collection::vec((any::<usize>(), -3i128..4), 1..4), beta in 2i64..4) {
        let x = combo(&k, &terms);
        let v = phi_element(&k, &hecke::mul(&k, &x.adjoint(), &x), beta);
        prop_assert!(!v.is_negative());
    }

    #[test]
    fn conjugation_by_isometries((k, x, _, _) in field_triple(), a in 1i128..5, beta in 2i64..5) {
        let a = hecke_core::FieldElem::int(a);
        let lhs = phi_via_kms(&k, &a, &x, beta).unwrap();
        let rhs = phi_symmetric(&k, &TorsionClass::new(&k.mul(&a, &x)), beta);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn depends_only_on_denominator((k, x, y, _) in field_triple(), beta in 2i64..6) {
        let r = TorsionClass::new(&x);
        let b = denominator(&k, &r).gen;
        let j = y.scale(&Rat::from_integer(*y.c0.denom() * *y.c1.denom()));
        if !j.is_zero() && k.coprime(&j, &b).unwrap() {
            prop_assert_eq!(phi_symmetric(&k, &r.scale(&k, &j), beta), phi_symmetric(&k, &r, beta));
        }
    }

    #[test]
    fn float_matches_exact((k, x, _, _) in field_triple(), beta in 2i64..8) {
        let r = TorsionClass::new(&x);
        let exact = big_to_f64(&phi_symmetric(&k, &r, beta));
        let est = phi_symmetric_f64(&k, &r, beta as f64);
        prop_assert!((exact - est.value).abs() <= est.error + exact.abs() * 1e-15);
    }
}
