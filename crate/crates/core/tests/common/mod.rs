#![allow(dead_code)]

use hecke_core::{FieldCtx, FieldElem, Rat};
use proptest::prelude::*;

pub const FIELDS: [i64; 6] = [0, 1, 2, 3, 7, 11];

pub fn ctx(d: i64) -> FieldCtx {
    FieldCtx::new(d).unwrap()
}

pub fn field() -> impl Strategy<Value = FieldCtx> {
    prop::sample::select(FIELDS.to_vec()).prop_map(ctx)
}

/// Nonzero integral element with small coordinates (second one zero over Q).
pub fn integral(k: &FieldCtx, max: i128) -> impl Strategy<Value = FieldElem> {
    let rational = k.is_rational();
    (-max..=max, -max..=max)
        .prop_map(move |(a, b)| FieldElem::ints(a, if rational { 0 } else { b }))
        .prop_filter("nonzero", |x| !x.is_zero())
}

pub fn element(k: &FieldCtx) -> impl Strategy<Value = FieldElem> {
    let rational = k.is_rational();
    (-30i128..=30, 1i128..=12, -30i128..=30, 1i128..=12).prop_map(move |(a, b, c, d)| {
        FieldElem::new(
            Rat::new(a, b),
            if rational {
                Rat::from_integer(0)
            } else {
                Rat::new(c, d)
            },
        )
    })
}

/// Field together with a small canonical ideal generator.
pub fn field_and_ideal(max: i128) -> impl Strategy<Value = (FieldCtx, FieldElem)> {
    field()
        .prop_flat_map(move |k| {
            let g = integral(&k, max);
            (Just(k), g)
        })
        .prop_map(|(k, g)| {
            let c = k.canonical_generator(&g).unwrap();
            (k, c)
        })
}

/// Field with three small elements.
pub fn field_triple() -> impl Strategy<Value = (FieldCtx, FieldElem, FieldElem, FieldElem)> {
    field().prop_flat_map(|k| (Just(k.clone()), element(&k), element(&k), element(&k)))
}
