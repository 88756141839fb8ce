mod common;

use common::*;
use hecke_core::torsion::{self, TorsionClass};
use hecke_core::FieldElem;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn group_laws((k, x, y, z) in field_triple()) {
        let (r, s, t) = (TorsionClass::new(&x), TorsionClass::new(&y), TorsionClass::new(&z));
        prop_assert_eq!(r.add(&s), s.add(&r));
        prop_assert_eq!(r.add(&s).add(&t), r.add(&s.add(&t)));
        prop_assert!(r.add(&r.neg()).is_zero());
        prop_assert_eq!(r.add(&TorsionClass::zero()), r.clone());
        // reduction mod O is well defined
        prop_assert_eq!(TorsionClass::new(&(&x + &k.omega())), r.clone());
        prop_assert_eq!(TorsionClass::new(&(&x + &FieldElem::int(3))), r);
    }

    #[test]
    fn orbit_stabilizer((k, x, _, _) in field_triple()) {
        let r = TorsionClass::new(&x);
        let orb = torsion::orbit(&k, &r);
        let stab = torsion::stabilizer(&k, &r);
        prop_assert_eq!(orb.len() * stab.len(), k.unit_count());
        let oc = torsion::orbit_canonical(&k, &r);
        for u in k.units() {
            prop_assert_eq!(torsion::orbit_canonical(&k, &r.scale(&k, u)), oc.clone());
        }
    }

    #[test]
    fn denominator_annihilates((k, x, _, _) in field_triple()) {
        let r = TorsionClass::new(&x);
        let b = torsion::denominator(&k, &r);
        prop_assert!(r.scale(&k, &b.gen).is_zero());
        // no proper divisor of b kills r
        if let Ok(f) = k.factor(&b.gen) {
            for (p, _) in f.primes {
                let smaller = k.div(&b.gen, &p.gen).unwrap();
                prop_assert!(!r.scale(&k, &smaller).is_zero());
            }
        }
    }

    #[test]
    fn torsion_points_have_level((k, c) in field_and_ideal(5)) {
        let pts = torsion::torsion_points(&k, &c).unwrap();
        prop_assert_eq!(pts.len() as u64, k.int_norm(&c));
        for r in &pts {
            prop_assert!(k.divides(&torsion::denominator(&k, r).gen, &c));
        }
    }
}
