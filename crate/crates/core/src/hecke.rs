//! The symbolic Hecke algebra on the basis `M(a, r, b) = mu_a^* theta_r mu_b`.
//!
//! Products are evaluated by lifting the left factor to the group algebra of
//! `K/O`: writing `e_t` for the group-like element with `theta_r` the unit
//! average of `e_{ur}`, the relations give
//!
//! ```text
//! E(a,r,b) M(c,s,d) = mu*_{a c1} [ alpha_{c1}(e_r) alpha_{lcm(b,c)}(1) alpha_{b1}(theta_s) ] mu_{b1 d}
//! ```
//!
//! with `g = gcd(b,c)`, `b = g b1`, `c = g c1`. Every `mu_A^* e_t mu_B`
//! depends on `t` only modulo `(1/lcm(A,B))O`, so the bracket collapses to at
//! most `|O*| N_{L'}` group-like terms, where `L'` is the part of
//! `lcm(b,c)` not dividing `lcm(A,B)`. Averaging over units turns the sum of
//! group-like terms back into canonical monomials.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{HeckeError, Result};
use crate::numberfield::{rat, FieldCtx, FieldElem, PrincipalIdeal, Rat};
use crate::torsion::{orbit_min, torsion_points, TorsionClass};

/// Canonical basis element `M(a, r, b)`.
///
/// `a`, `b` are coprime canonical generators and `key` is the orbit-minimal
/// class of `a*b*r` in `K/O`; the class of `r` itself only matters modulo
/// `(1/ab)O` and up to units.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub a: PrincipalIdeal,
    pub b: PrincipalIdeal,
    key: TorsionClass,
}

impl Monomial {
    /// `mu_a^* theta_r mu_b` for nonzero integral `a`, `b` and any `r` in `K`.
    pub fn new(ctx: &FieldCtx, a: &FieldElem, r: &FieldElem, b: &FieldElem) -> Result<Self> {
        for x in [a, b] {
            if x.is_zero() {
                return Err(HeckeError::Zero("isometry index"));
            }
            if !x.is_integral() {
                return Err(HeckeError::NotIntegral(x.to_string()));
            }
        }
        let h = ctx.gcd_gen(a, b)?;
        let a1 = ctx.div(a, &h)?;
        let b1 = ctx.div(b, &h)?;
        let t = TorsionClass::new(&ctx.mul(&ctx.mul(&ctx.mul(&a1, &b1), &h), r));
        Ok(Self::from_key(ctx, ctx.ideal(&a1)?, ctx.ideal(&b1)?, &t))
    }

    /// Monomial with coprime canonical `a`, `b` and key class `t = ab*r`.
    pub(crate) fn from_key(
        ctx: &FieldCtx,
        a: PrincipalIdeal,
        b: PrincipalIdeal,
        t: &TorsionClass,
    ) -> Self {
        Monomial {
            a,
            b,
            key: orbit_min(ctx, t),
        }
    }

    pub fn theta(ctx: &FieldCtx, r: &FieldElem) -> Self {
        let one = ctx.ideal(&FieldElem::one()).expect("1 is integral");
        Self::from_key(ctx, one.clone(), one, &TorsionClass::new(r))
    }

    pub fn identity(ctx: &FieldCtx) -> Self {
        Self::theta(ctx, &FieldElem::zero())
    }

    /// The class `ab*r` identifying the monomial once `a`, `b` are fixed.
    pub fn key(&self) -> &TorsionClass {
        &self.key
    }

    /// A representative `r` in `K`, reduced mod `O`.
    pub fn r(&self, ctx: &FieldCtx) -> TorsionClass {
        let ab = ctx.mul(&self.a.gen, &self.b.gen);
        TorsionClass::new(&ctx.div(self.key.rep(), &ab).expect("ab is nonzero"))
    }

    pub fn is_theta(&self) -> bool {
        self.a.gen.is_one() && self.b.gen.is_one()
    }

    pub fn adjoint(&self) -> Self {
        Monomial {
            a: self.b.clone(),
            b: self.a.clone(),
            key: self.key.clone(),
        }
    }

    /// `N_b / N_a`; `sigma_t` multiplies the monomial by its `it`-th power.
    pub fn dynamics_weight(&self) -> Rat {
        Rat::new(self.b.norm as i128, self.a.norm as i128)
    }

    pub fn display(&self, ctx: &FieldCtx) -> String {
        format!("M({}, {}, {})", self.a.gen, self.r(ctx), self.b.gen)
    }
}

/// Finite rational combination of canonical monomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct HeckeElement {
    terms: BTreeMap<Monomial, Rat>,
}

impl HeckeElement {
    pub fn zero() -> Self {
        HeckeElement::default()
    }

    pub fn identity(ctx: &FieldCtx) -> Self {
        Self::from_monomial(Monomial::identity(ctx))
    }

    pub fn from_monomial(m: Monomial) -> Self {
        Self::from_terms([(m, Rat::one())])
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rat)>>(terms: I) -> Self {
        let mut out = HeckeElement::zero();
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add(&self, other: &HeckeElement) -> HeckeElement {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &HeckeElement) -> HeckeElement {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, q: &Rat) -> HeckeElement {
        if q.is_zero() {
            return HeckeElement::zero();
        }
        HeckeElement {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * q)).collect(),
        }
    }

    pub fn adjoint(&self) -> HeckeElement {
        HeckeElement {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.adjoint(), c.clone()))
                .collect(),
        }
    }

    /// Supported on `A_theta`, i.e. every monomial has `a = b = 1`.
    pub fn is_theta(&self) -> bool {
        self.terms.keys().all(Monomial::is_theta)
    }

    /// `sigma_{i beta}` for integer `beta`: each monomial times
    /// `(N_b/N_a)^(-beta)`.
    pub fn sigma_i_beta(&self, beta: i32) -> HeckeElement {
        HeckeElement {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * m.dynamics_weight().pow(-beta)))
                .collect(),
        }
    }

    pub fn display(&self, ctx: &FieldCtx) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|(m, c)| format!("{}*{}", c, m.display(ctx)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

pub fn theta(ctx: &FieldCtx, r: &FieldElem) -> HeckeElement {
    HeckeElement::from_monomial(Monomial::theta(ctx, r))
}

pub fn mu(ctx: &FieldCtx, a: &FieldElem) -> Result<HeckeElement> {
    Ok(HeckeElement::from_monomial(Monomial::new(
        ctx,
        &FieldElem::one(),
        &FieldElem::zero(),
        a,
    )?))
}

pub fn mu_star(ctx: &FieldCtx, a: &FieldElem) -> Result<HeckeElement> {
    Ok(mu(ctx, a)?.adjoint())
}

pub fn monomial(
    ctx: &FieldCtx,
    a: &FieldElem,
    r: &FieldElem,
    b: &FieldElem,
) -> Result<HeckeElement> {
    Ok(HeckeElement::from_monomial(Monomial::new(ctx, a, r, b)?))
}

/// Accumulates group-like terms `mu_A^* e_t mu_B` (fixed `A`, `B`, keyed by
/// the class of `lcm(A,B) t`) and folds them into canonical monomials.
struct OrbitAccumulator<'a> {
    ctx: &'a FieldCtx,
    out: HashMap<Monomial, Rat>,
}

impl<'a> OrbitAccumulator<'a> {
    fn new(ctx: &'a FieldCtx) -> Self {
        OrbitAccumulator {
            ctx,
            out: HashMap::new(),
        }
    }

    fn push(&mut self, a: &PrincipalIdeal, b: &PrincipalIdeal, key: &TorsionClass, c: Rat) {
        let m = Monomial::from_key(self.ctx, a.clone(), b.clone(), key);
        *self.out.entry(m).or_insert_with(Rat::zero) += c;
    }

    fn finish(self) -> HeckeElement {
        HeckeElement::from_terms(self.out)
    }
}

fn ratio_ideal(ctx: &FieldCtx, x: &FieldElem, y: &FieldElem) -> PrincipalIdeal {
    ctx.ideal(&ctx.div(x, y).expect("nonzero divisor"))
        .expect("exact quotient")
}

/// Product of two canonical monomials.
pub fn mul_monomials(ctx: &FieldCtx, m1: &Monomial, m2: &Monomial) -> HeckeElement {
    let mut acc = OrbitAccumulator::new(ctx);
    mul_monomials_into(ctx, m1, m2, &Rat::one(), &mut acc);
    acc.finish()
}

fn mul_monomials_into(
    ctx: &FieldCtx,
    m1: &Monomial,
    m2: &Monomial,
    coeff: &Rat,
    acc: &mut OrbitAccumulator<'_>,
) {
    let (a, b) = (&m1.a.gen, &m1.b.gen);
    let (c, d) = (&m2.a.gen, &m2.b.gen);
    let g = ctx.gcd_gen(b, c).expect("nonzero");
    let b1 = ctx.div(b, &g).expect("g | b");
    let c1 = ctx.div(c, &g).expect("g | c");
    let big_l = ctx.mul(b, &c1);
    let big_a = ctx.mul(a, &c1);
    let big_b = ctx.mul(&b1, d);
    let h = ctx.gcd_gen(&big_a, &big_b).expect("nonzero");
    let a_out = ratio_ideal(ctx, &big_a, &h);
    let b_out = ratio_ideal(ctx, &big_b, &h);
    let m = ctx.mul(&ctx.mul(&a_out.gen, &b_out.gen), &h);
    // L' = L / gcd(L, m)
    let lg = ctx.gcd_gen(&big_l, &m).expect("nonzero");
    let l_prime = ctx.div(&big_l, &lg).expect("exact");
    let shifts = torsion_points(ctx, &l_prime).expect("nonzero");

    let r = m1.r(ctx);
    let s = m2.r(ctx);
    let base = r.scale(ctx, &ctx.div(&m, &c1).expect("c1 | m"));
    let s_scaled = s.scale(ctx, &ctx.div(&m, &b1).expect("b1 | m"));
    let weight = coeff / rat((ctx.unit_count() * shifts.len()) as i128);
    for u in ctx.units() {
        let t = base.add(&s_scaled.scale(ctx, u));
        for z in &shifts {
            acc.push(&a_out, &b_out, &t.add(z), weight.clone());
        }
    }
}

/// Bilinear product in the Hecke algebra.
pub fn mul(ctx: &FieldCtx, x: &HeckeElement, y: &HeckeElement) -> HeckeElement {
    let mut acc = OrbitAccumulator::new(ctx);
    for (m1, c1) in x.terms() {
        for (m2, c2) in y.terms() {
            mul_monomials_into(ctx, m1, m2, &(c1 * c2), &mut acc);
        }
    }
    acc.finish()
}

pub fn mul_all(ctx: &FieldCtx, xs: &[HeckeElement]) -> HeckeElement {
    xs.iter()
        .fold(HeckeElement::identity(ctx), |acc, x| mul(ctx, &acc, x))
}

/// `theta_r theta_s`.
pub fn theta_product(ctx: &FieldCtx, r: &FieldElem, s: &FieldElem) -> HeckeElement {
    mul(ctx, &theta(ctx, r), &theta(ctx, s))
}

fn require_theta(x: &HeckeElement, ctx: &FieldCtx) -> Result<()> {
    if x.is_theta() {
        Ok(())
    } else {
        Err(HeckeError::NotTheta(x.display(ctx)))
    }
}

/// `alpha_a(theta_r) = (1/N_a) sum_{y in O/aO} theta_{(r+y)/a}` extended
/// linearly to `A_theta`.
pub fn alpha(ctx: &FieldCtx, a: &FieldElem, x: &HeckeElement) -> Result<HeckeElement> {
    require_theta(x, ctx)?;
    let res = ctx.residues(a)?;
    let inv = ctx.inv(a)?;
    let one = ctx.ideal(&FieldElem::one())?;
    let mut acc = OrbitAccumulator::new(ctx);
    let w = Rat::new(1, res.len() as i128);
    for (m, c) in x.terms() {
        let r = m.key().rep();
        for y in &res {
            let t = TorsionClass::new(&ctx.mul(&(r + y), &inv));
            acc.push(&one, &one, &t, c * &w);
        }
    }
    Ok(acc.finish())
}

/// `alpha_a(1) = mu_a mu_a^*`.
pub fn alpha_one(ctx: &FieldCtx, a: &FieldElem) -> Result<HeckeElement> {
    alpha(ctx, a, &HeckeElement::identity(ctx))
}

/// `beta_a(theta_r) = theta_{ar}`.
pub fn beta_endo(ctx: &FieldCtx, a: &FieldElem, x: &HeckeElement) -> Result<HeckeElement> {
    require_theta(x, ctx)?;
    if a.is_zero() {
        return Err(HeckeError::Zero("endomorphism index"));
    }
    if !a.is_integral() {
        return Err(HeckeError::NotIntegral(a.to_string()));
    }
    Ok(HeckeElement::from_terms(x.terms().map(|(m, c)| {
        (Monomial::theta(ctx, &ctx.mul(a, m.key().rep())), c.clone())
    })))
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M({}, [{}], {})", self.a.gen, self.key, self.b.gen)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(d: i64) -> FieldCtx {
        FieldCtx::new(d).unwrap()
    }

    fn q(n: i128, d: i128) -> FieldElem {
        FieldElem::from_rat(Rat::new(n, d))
    }

    #[test]
    fn theta_zero_is_identity() {
        let k = ctx(1);
        assert_eq!(theta(&k, &FieldElem::zero()), HeckeElement::identity(&k));
        assert_eq!(theta(&k, &FieldElem::int(3)), HeckeElement::identity(&k));
    }

    #[test]
    fn mu_relations() {
        for d in [0, 1, 3] {
            let k = ctx(d);
            for u in k.units() {
                assert_eq!(mu(&k, u).unwrap(), HeckeElement::identity(&k));
            }
            let mut gens = vec![FieldElem::int(2), FieldElem::int(3)];
            if d != 0 {
                gens.push(FieldElem::ints(1, 1));
            }
            for a in gens {
                let m = mu(&k, &a).unwrap();
                assert_eq!(mul(&k, &m.adjoint(), &m), HeckeElement::identity(&k));
            }
        }
    }

    #[test]
    fn theta_products_from_examples() {
        let q0 = ctx(0);
        assert_eq!(
            theta_product(&q0, &q(1, 2), &q(1, 2)),
            HeckeElement::identity(&q0)
        );
        let g = ctx(1);
        let got = theta_product(&g, &q(1, 2), &q(1, 2));
        let want = HeckeElement::identity(&g)
            .add(&theta(&g, &FieldElem::new(Rat::new(1, 2), Rat::new(1, 2))))
            .scale(&Rat::new(1, 2));
        assert_eq!(got, want);
        let r = q(1, 3);
        assert_eq!(theta_product(&g, &r, &FieldElem::zero()), theta(&g, &r));
    }

    #[test]
    fn alpha_examples() {
        let k = ctx(0);
        let a2 = alpha_one(&k, &FieldElem::int(2)).unwrap();
        let want = HeckeElement::identity(&k)
            .add(&theta(&k, &q(1, 2)))
            .scale(&Rat::new(1, 2));
        assert_eq!(a2, want);
        let m2 = mu(&k, &FieldElem::int(2)).unwrap();
        assert_eq!(mul(&k, &m2, &m2.adjoint()), a2);
        let a3 = alpha_one(&k, &FieldElem::int(3)).unwrap();
        assert_eq!(
            mul(&k, &a2, &a3),
            alpha_one(&k, &FieldElem::int(6)).unwrap()
        );
        let t = theta(&k, &q(1, 5));
        assert_eq!(alpha(&k, &FieldElem::one(), &t).unwrap(), t);
        assert!(alpha(&k, &FieldElem::int(2), &m2).is_err());
    }

    #[test]
    fn beta_examples() {
        let k = ctx(0);
        let two = FieldElem::int(2);
        assert_eq!(
            beta_endo(&k, &two, &theta(&k, &q(1, 4))).unwrap(),
            theta(&k, &q(1, 2))
        );
        let t = theta(&k, &q(1, 2));
        assert_eq!(
            beta_endo(&k, &two, &alpha(&k, &two, &t).unwrap()).unwrap(),
            t
        );
    }

    #[test]
    fn coprime_mu_commute() {
        let k = ctx(0);
        let m2 = mu(&k, &FieldElem::int(2)).unwrap();
        let m3 = mu(&k, &FieldElem::int(3)).unwrap();
        assert_eq!(mul(&k, &m3.adjoint(), &m2), mul(&k, &m2, &m3.adjoint()));
    }

    #[test]
    fn weights() {
        let k = ctx(0);
        let m2 = Monomial::new(
            &k,
            &FieldElem::one(),
            &FieldElem::zero(),
            &FieldElem::int(2),
        )
        .unwrap();
        assert_eq!(m2.dynamics_weight(), rat(2));
        assert_eq!(m2.adjoint().dynamics_weight(), Rat::new(1, 2));
        assert_eq!(Monomial::theta(&k, &q(1, 3)).dynamics_weight(), rat(1));
    }

    #[test]
    fn common_factor_moves_into_r() {
        let k = ctx(1);
        let r = FieldElem::new(Rat::new(1, 5), Rat::new(2, 5));
        let g = FieldElem::ints(1, 1);
        let lhs = Monomial::new(
            &k,
            &k.mul(&g, &FieldElem::int(3)),
            &r,
            &k.mul(&g, &FieldElem::ints(2, 1)),
        )
        .unwrap();
        let rhs = Monomial::new(
            &k,
            &FieldElem::int(3),
            &k.mul(&g, &r),
            &FieldElem::ints(2, 1),
        )
        .unwrap();
        assert_eq!(lhs, rhs);
    }
}
