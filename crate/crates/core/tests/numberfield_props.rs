mod common;

use common::*;
use hecke_core::FieldElem;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_laws((k, x, y, z) in field().prop_flat_map(|k| {
        (Just(k.clone()), element(&k), element(&k), element(&k))
    })) {
        prop_assert_eq!(k.mul(&x, &y), k.mul(&y, &x));
        prop_assert_eq!(k.mul(&k.mul(&x, &y), &z), k.mul(&x, &k.mul(&y, &z)));
        prop_assert_eq!(k.mul(&x, &(&y + &z)), &k.mul(&x, &y) + &k.mul(&x, &z));
        prop_assert_eq!(k.field_norm(&k.mul(&x, &y)), k.field_norm(&x) * k.field_norm(&y));
        prop_assert_eq!(k.trace(&(&x + &y)), k.trace(&x) + k.trace(&y));
        if !x.is_zero() {
            prop_assert!(k.mul(&x, &k.inv(&x).unwrap()).is_one());
        }
    }

    #[test]
    fn residues_and_reduction((k, a) in field_and_ideal(6), x in (-60i128..60, -60i128..60)) {
        let res = k.residues(&a).unwrap();
        prop_assert_eq!(res.len() as u64, k.int_norm(&a));
        let x = FieldElem::ints(x.0, if k.is_rational() { 0 } else { x.1 });
        let r = k.reduce_mod(&x, &a).unwrap();
        prop_assert!(res.contains(&r));
        prop_assert!(k.divides(&a, &(&x - &r)));
    }

    #[test]
    fn canonical_generators((k, a) in field_and_ideal(9)) {
        prop_assert_eq!(k.canonical_generator(&a).unwrap(), a.clone());
        for u in k.units() {
            prop_assert_eq!(k.canonical_generator(&k.mul(u, &a)).unwrap(), a.clone());
        }
    }

    #[test]
    fn gcd_and_lcm((k, a) in field_and_ideal(8), b in (-8i128..=8, -8i128..=8)) {
        let b = FieldElem::ints(b.0, if k.is_rational() { 0 } else { b.1 });
        prop_assume!(!b.is_zero());
        let g = k.gcd_gen(&a, &b).unwrap();
        let l = k.lcm_gen(&a, &b).unwrap();
        prop_assert!(k.divides(&g, &a) && k.divides(&g, &b));
        prop_assert!(k.divides(&a, &l) && k.divides(&b, &l));
        prop_assert_eq!(k.int_norm(&g) * k.int_norm(&l), k.int_norm(&a) * k.int_norm(&b));
    }

    #[test]
    fn factorization_reconstructs((k, a) in field_and_ideal(15)) {
        let f = k.factor(&a).unwrap();
        let mut prod = f.unit.clone();
        for (p, e) in &f.primes {
            prod = k.mul(&prod, &k.pow(&p.gen, *e));
            let n = p.norm;
            let s = (n as f64).sqrt() as u64;
            let prime_power = hecke_core::arith::is_prime(n) || (s * s == n && hecke_core::arith::is_prime(s));
            prop_assert!(prime_power, "N = {} is not p or p^2", n);
        }
        prop_assert_eq!(prod, a);
        prop_assert!(k.is_unit(&f.unit));
    }

    #[test]
    fn norm_counts_ideals(k in field(), n in 1u64..60) {
        // elements of norm n up to units are the ideals of norm n
        let elems = k.elements_of_norm(n);
        let ideals: std::collections::BTreeSet<_> = elems
            .iter()
            .map(|x| k.canonical_generator(x).unwrap())
            .collect();
        let per = if k.is_rational() { 2 } else { k.unit_count() };
        prop_assert_eq!(elems.len(), ideals.len() * per);
        for x in &elems {
            prop_assert_eq!(k.int_norm(x), n);
        }
    }
}
