mod common;

use common::ctx;
use hecke_core::hecke::{self, HeckeElement, Monomial};
use hecke_core::oracle::{small_monomials, Oracle};
use hecke_core::{FieldCtx, FieldElem, Rat};
use proptest::prelude::*;

fn setup(d: i64) -> (FieldCtx, Vec<Monomial>) {
    let k = ctx(d);
    let m = small_monomials(&k, 5);
    (k, m)
}

fn pick(monos: &[Monomial], i: usize) -> HeckeElement {
    HeckeElement::from_monomial(monos[i % monos.len()].clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn associativity(d in prop::sample::select(vec![0i64, 1, 3]), i in any::<usize>(), j in any::<usize>(), l in any::<usize>()) {
        let (k, m) = setup(d);
        let (x, y, z) = (pick(&m, i), pick(&m, j), pick(&m, l));
        let lhs = hecke::mul(&k, &hecke::mul(&k, &x, &y), &z);
        let rhs = hecke::mul(&k, &x, &hecke::mul(&k, &y, &z));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn adjoint_reverses_products(d in prop::sample::select(vec![0i64, 1, 3]), i in any::<usize>(), j in any::<usize>()) {
        let (k, m) = setup(d);
        let (x, y) = (pick(&m, i), pick(&m, j));
        prop_assert_eq!(hecke::mul(&k, &x, &y).adjoint(), hecke::mul(&k, &y.adjoint(), &x.adjoint()));
        prop_assert_eq!(x.adjoint().adjoint(), x);
    }

    #[test]
    fn dynamics_is_multiplicative(d in prop::sample::select(vec![0i64, 1]), i in any::<usize>(), j in any::<usize>(), beta in 1i32..4) {
        let (k, m) = setup(d);
        let (x, y) = (pick(&m, i), pick(&m, j));
        let lhs = hecke::mul(&k, &x, &y).sigma_i_beta(beta);
        let rhs = hecke::mul(&k, &x.sigma_i_beta(beta), &y.sigma_i_beta(beta));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn raw_triples_match_generators(d in prop::sample::select(vec![0i64, 1]), a in 1i128..5, b in 1i128..5, u in 0usize..4, num in -6i128..6, den in 1i128..7) {
        let k = ctx(d);
        let a = k.mul(&FieldElem::int(a), &k.units()[u % k.unit_count()]);
        let b = FieldElem::int(b);
        let r = FieldElem::from_rat(Rat::new(num, den));
        let canon = hecke::monomial(&k, &a, &r, &b).unwrap();
        let gens = hecke::mul_all(&k, &[
            hecke::mu_star(&k, &a).unwrap(),
            hecke::theta(&k, &r),
            hecke::mu(&k, &b).unwrap(),
        ]);
        prop_assert_eq!(&canon, &gens);
    }
}

// Raw (non-coprime, non-canonical) triples pushed through the convolution model
// agree with the image of their normal form.
#[test]
fn raw_triple_oracle_images() {
    for d in [0, 1] {
        let k = ctx(d);
        let o = Oracle::new(&k, 1 << 16);
        let gens: Vec<FieldElem> = if d == 0 {
            vec![
                FieldElem::int(2),
                FieldElem::int(-2),
                FieldElem::int(3),
                FieldElem::int(4),
            ]
        } else {
            vec![
                FieldElem::ints(1, 1),
                FieldElem::int(2),
                FieldElem::ints(0, 2),
                FieldElem::ints(2, 1),
            ]
        };
        let rs = [
            Rat::new(0, 1),
            Rat::new(1, 2),
            Rat::new(1, 3),
            Rat::new(3, 4),
        ];
        for a in &gens {
            for b in &gens {
                for r in &rs {
                    let r = FieldElem::from_rat(*r);
                    let na = k.int_norm(a) as i128;
                    let raw = o
                        .convolve(&o.convolve(&o.nu_star(a), &o.theta(&r)).unwrap(), &o.nu(b))
                        .unwrap()
                        .scale(&Rat::new(1, na));
                    let sym = o
                        .symbolic_to_oracle(&hecke::monomial(&k, a, &r, b).unwrap())
                        .unwrap();
                    assert_eq!(raw, sym, "d={d} a={a} r={r} b={b}");
                }
            }
        }
    }
}
