//! Classes in `K/O` and their orbits under the unit group.

use std::fmt;

use crate::error::{HeckeError, Result};
use crate::numberfield::{FieldCtx, FieldElem, PrincipalIdeal};
use num_integer::Integer;

/// A class `r + O`, stored by its representative with both coordinates in
/// `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorsionClass(FieldElem);

impl TorsionClass {
    pub fn new(x: &FieldElem) -> Self {
        TorsionClass(x.frac())
    }

    pub fn zero() -> Self {
        TorsionClass(FieldElem::zero())
    }

    pub fn rep(&self) -> &FieldElem {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn add(&self, other: &TorsionClass) -> TorsionClass {
        TorsionClass::new(&(&self.0 + &other.0))
    }

    pub fn neg(&self) -> TorsionClass {
        TorsionClass::new(&-&self.0)
    }

    /// `a * r` for integral `a`; well defined on classes.
    pub fn scale(&self, ctx: &FieldCtx, a: &FieldElem) -> TorsionClass {
        TorsionClass::new(&ctx.mul(a, &self.0))
    }
}

impl fmt::Display for TorsionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The `O*`-orbit of a class: its minimal member and the stabilizer data.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbitClass {
    pub rep: TorsionClass,
    pub stab_size: usize,
    /// `R(r) = [O* : O*_r]`, the orbit size.
    pub r_index: usize,
}

/// `O*_r = {u : (u - 1) r in O}`.
pub fn stabilizer(ctx: &FieldCtx, r: &TorsionClass) -> Vec<FieldElem> {
    ctx.units()
        .iter()
        .filter(|u| r.scale(ctx, u) == *r)
        .cloned()
        .collect()
}

/// The distinct members of `{u r : u in O*}`, sorted.
pub fn orbit(ctx: &FieldCtx, r: &TorsionClass) -> Vec<TorsionClass> {
    let mut v: Vec<TorsionClass> = ctx.units().iter().map(|u| r.scale(ctx, u)).collect();
    v.sort();
    v.dedup();
    v
}

/// Minimal orbit member without the stabilizer bookkeeping.
pub(crate) fn orbit_min(ctx: &FieldCtx, r: &TorsionClass) -> TorsionClass {
    ctx.units()
        .iter()
        .map(|u| r.scale(ctx, u))
        .min()
        .expect("unit group is nonempty")
}

pub fn orbit_canonical(ctx: &FieldCtx, r: &TorsionClass) -> OrbitClass {
    let orb = orbit(ctx, r);
    let r_index = orb.len();
    OrbitClass {
        rep: orb.into_iter().next().expect("orbit is nonempty"),
        stab_size: ctx.unit_count() / r_index,
        r_index,
    }
}

/// `R(r) = [O* : O*_r]`.
pub fn r_index(ctx: &FieldCtx, r: &TorsionClass) -> usize {
    orbit(ctx, r).len()
}

/// Canonical generator `b` of `{x in O : x r in O}`; `r = a/b` in lowest terms.
pub fn denominator(ctx: &FieldCtx, r: &TorsionClass) -> PrincipalIdeal {
    let x = r.rep();
    let m = x.c0.denom().lcm(x.c1.denom());
    let n = x.scale(&crate::numberfield::rat(m));
    let mm = FieldElem::int(m);
    let g = if n.is_zero() {
        mm.clone()
    } else {
        ctx.gcd_gen(&n, &mm).expect("m is nonzero")
    };
    let b = ctx.div(&mm, &g).expect("gcd is nonzero");
    ctx.ideal(&b).expect("denominator is integral")
}

/// The `N_c` classes of `(1/c)O / O`.
pub fn torsion_points(ctx: &FieldCtx, c: &FieldElem) -> Result<Vec<TorsionClass>> {
    if c.is_zero() {
        return Err(HeckeError::Zero("level"));
    }
    let inv = ctx.inv(c)?;
    let mut v: Vec<TorsionClass> = ctx
        .residues(c)?
        .iter()
        .map(|x| TorsionClass::new(&ctx.mul(x, &inv)))
        .collect();
    v.sort();
    Ok(v)
}

/// One representative per orbit among the level-`c` torsion points.
pub fn orbit_points(ctx: &FieldCtx, c: &FieldElem) -> Result<Vec<OrbitClass>> {
    let mut v: Vec<OrbitClass> = torsion_points(ctx, c)?
        .iter()
        .map(|r| orbit_canonical(ctx, r))
        .collect();
    v.sort();
    v.dedup();
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numberfield::Rat;

    fn ctx(d: i64) -> FieldCtx {
        FieldCtx::new(d).unwrap()
    }

    fn tc(a: (i128, i128), b: (i128, i128)) -> TorsionClass {
        TorsionClass::new(&FieldElem::new(Rat::new(a.0, a.1), Rat::new(b.0, b.1)))
    }

    #[test]
    fn stabilizer_examples() {
        let g = ctx(1);
        assert_eq!(stabilizer(&g, &TorsionClass::zero()).len(), 4);
        let half = tc((1, 2), (0, 1));
        assert_eq!(
            stabilizer(&g, &half),
            vec![FieldElem::int(1), FieldElem::int(-1)]
        );
        assert_eq!(r_index(&g, &half), 2);
        // 1/(1+i) = (1 - i)/2
        let r = TorsionClass::new(&g.inv(&FieldElem::ints(1, 1)).unwrap());
        assert_eq!(stabilizer(&g, &r).len(), 4);
    }

    #[test]
    fn orbit_examples() {
        let g = ctx(1);
        let z = orbit_canonical(&g, &TorsionClass::zero());
        assert_eq!((z.r_index, z.stab_size), (1, 4));
        let a = orbit_canonical(&g, &tc((-1, 2), (1, 2)));
        let b = orbit_canonical(&g, &tc((1, 2), (1, 2)));
        assert_eq!(a, b);
        assert_eq!(a.r_index, 1);
        let h = orbit_canonical(&g, &tc((1, 2), (0, 1)));
        assert_eq!(h.r_index, 2);
        assert_eq!(
            orbit(&g, &h.rep),
            vec![tc((0, 1), (1, 2)), tc((1, 2), (0, 1))]
        );
    }

    #[test]
    fn denominator_examples() {
        let g = ctx(1);
        assert!(denominator(&g, &TorsionClass::zero()).gen.is_one());
        assert_eq!(denominator(&g, &tc((1, 2), (0, 1))).gen, FieldElem::int(2));
        let d = denominator(&g, &tc((1, 2), (1, 2)));
        assert_eq!(
            d.gen,
            g.canonical_generator(&FieldElem::ints(1, 1)).unwrap()
        );
        assert_eq!(d.norm, 2);
        let q = ctx(0);
        assert_eq!(denominator(&q, &tc((5, 6), (0, 1))).gen, FieldElem::int(6));
    }

    #[test]
    fn torsion_point_examples() {
        let q = ctx(0);
        assert_eq!(
            torsion_points(&q, &FieldElem::one()).unwrap(),
            vec![TorsionClass::zero()]
        );
        assert_eq!(
            torsion_points(&q, &FieldElem::int(2)).unwrap(),
            vec![TorsionClass::zero(), tc((1, 2), (0, 1))]
        );
        let g = ctx(1);
        let pts = torsion_points(&g, &FieldElem::int(2)).unwrap();
        assert_eq!(
            pts,
            vec![
                TorsionClass::zero(),
                tc((0, 1), (1, 2)),
                tc((1, 2), (0, 1)),
                tc((1, 2), (1, 2))
            ]
        );
        assert!(torsion_points(&g, &FieldElem::zero()).is_err());
    }

    #[test]
    fn denominator_is_reduced_form() {
        for d in [0, 1, 2, 3, 7, 11] {
            let k = ctx(d);
            for n in 1..=20u64 {
                for c in k.elements_of_norm(n) {
                    for r in torsion_points(&k, &c).unwrap() {
                        let b = denominator(&k, &r);
                        assert!(k.divides(&b.gen, &c));
                        let a = k.mul(&b.gen, r.rep());
                        assert!(a.is_integral());
                        if !a.is_zero() {
                            assert!(k.coprime(&a, &b.gen).unwrap());
                        } else {
                            assert!(b.gen.is_one());
                        }
                        for u in k.units() {
                            assert_eq!(denominator(&k, &r.scale(&k, u)), b);
                        }
                    }
                }
            }
        }
    }
}
