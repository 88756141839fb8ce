mod common;

use common::*;
use hecke_core::hecke::{self, HeckeElement};
use hecke_core::oracle::{
    count_l, count_r, double_coset_key, right_cosets_in_double_coset, small_monomials, GroupElem,
    Oracle,
};
use hecke_core::{FieldCtx, FieldElem, Rat};
use proptest::prelude::*;

fn group_elem(k: &FieldCtx) -> impl Strategy<Value = GroupElem> {
    let rational = k.is_rational();
    (integral(k, 3), -5i128..5, 1i128..7, -5i128..5, 1i128..7).prop_map(move |(x, a, b, c, d)| {
        let y = FieldElem::new(
            Rat::new(a, b),
            if rational {
                Rat::from_integer(0)
            } else {
                Rat::new(c, d)
            },
        );
        GroupElem::new(y, x).unwrap()
    })
}

fn field_and_group_elem() -> impl Strategy<Value = (FieldCtx, GroupElem, GroupElem)> {
    prop::sample::select(vec![0i64, 1, 2, 3])
        .prop_map(ctx)
        .prop_flat_map(|k| {
            let u = (integral(&k, 2), 0usize..6).prop_map({
                let k = k.clone();
                move |(y, i)| GroupElem::new(y, k.units()[i % k.unit_count()].clone()).unwrap()
            });
            (Just(k.clone()), group_elem(&k), u)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn count_r_matches_enumeration((k, g, _) in field_and_group_elem()) {
        prop_assert_eq!(count_r(&k, &g), right_cosets_in_double_coset(&k, &g).len());
        prop_assert_eq!(count_l(&k, &g), right_cosets_in_double_coset(&k, &g.inv(&k)).len());
    }

    #[test]
    fn double_coset_key_is_bi_invariant((k, g, p) in field_and_group_elem()) {
        let key = double_coset_key(&k, &g);
        prop_assert_eq!(&double_coset_key(&k, &p.mul(&k, &g)), &key);
        prop_assert_eq!(&double_coset_key(&k, &g.mul(&k, &p)), &key);
        prop_assert_eq!(double_coset_key(&k, &key.rep(&k)), key);
    }

    #[test]
    fn r_of_diagonal_is_norm((k, a) in field_and_ideal(6)) {
        let g = GroupElem::new(FieldElem::zero(), a.clone()).unwrap();
        prop_assert_eq!(count_r(&k, &g) as u64, k.int_norm(&a));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn oracle_is_multiplicative(d in prop::sample::select(vec![0i64, 1]), i in any::<usize>(), j in any::<usize>(), c in -3i128..4) {
        let k = ctx(d);
        let monos = small_monomials(&k, 4);
        let o = Oracle::new(&k, 1 << 16);
        let x = HeckeElement::from_monomial(monos[i % monos.len()].clone());
        let y = HeckeElement::from_monomial(monos[j % monos.len()].clone())
            .add(&HeckeElement::identity(&k).scale(&Rat::from_integer(c)));
        let lhs = o.symbolic_to_oracle(&hecke::mul(&k, &x, &y)).unwrap();
        let rhs = o.convolve(&o.symbolic_to_oracle(&x).unwrap(), &o.symbolic_to_oracle(&y).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
