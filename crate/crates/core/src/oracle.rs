//! Brute-force model of the Hecke algebra as bi-invariant functions on
//! `P_K = {(y, x) : y in K, x in K*}` modulo `P_O = {(a, u) : a in O, u in O*}`.
//!
//! `(y, x)` is the matrix `[[1, y], [0, x]]`. Bi-invariant functions are
//! stored on double-coset keys and multiplied by enumerating right cosets:
//! if `P_O g P_O = U_i P_O a_i` and `P_O h P_O = U_j P_O b_j` then
//! `[P_O g P_O] * [P_O h P_O] = sum_{i,j} [P_O a_i b_j]`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};

use crate::error::{HeckeError, Result};
use crate::hecke::{HeckeElement, Monomial};
use crate::numberfield::{rat, FieldCtx, FieldElem, Rat};
use crate::torsion::{denominator, orbit_min, r_index, TorsionClass};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupElem {
    pub y: FieldElem,
    pub x: FieldElem,
}

impl GroupElem {
    pub fn new(y: FieldElem, x: FieldElem) -> Result<Self> {
        if x.is_zero() {
            return Err(HeckeError::Zero("x"));
        }
        Ok(GroupElem { y, x })
    }

    pub fn identity() -> Self {
        GroupElem {
            y: FieldElem::zero(),
            x: FieldElem::one(),
        }
    }

    /// Matrix product: `(y1, x1)(y2, x2) = (y2 + y1 x2, x1 x2)`.
    pub fn mul(&self, ctx: &FieldCtx, o: &GroupElem) -> GroupElem {
        GroupElem {
            y: &o.y + &ctx.mul(&self.y, &o.x),
            x: ctx.mul(&self.x, &o.x),
        }
    }

    pub fn inv(&self, ctx: &FieldCtx) -> GroupElem {
        let xi = ctx.inv(&self.x).expect("x is nonzero");
        GroupElem {
            y: -&ctx.mul(&self.y, &xi),
            x: xi,
        }
    }

    /// Membership in `P_O`.
    pub fn in_subgroup(&self, ctx: &FieldCtx) -> bool {
        self.y.is_integral() && ctx.is_unit(&self.x)
    }
}

/// Key of the right coset `P_O (y, x) = (y + xO, xO*)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RightCosetKey {
    pub x: FieldElem,
    pub y: FieldElem,
}

impl RightCosetKey {
    pub fn rep(&self) -> GroupElem {
        GroupElem {
            y: self.y.clone(),
            x: self.x.clone(),
        }
    }
}

/// Key of `P_O (y, x) P_O`: the canonical generator of `xO*` and the
/// orbit-minimal class of `beta*y` in `K/O`, where `x = alpha/beta` in lowest
/// terms. The double coset is `(u(y + O + xO), xO*)`, and `O + xO = beta^{-1} O`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DoubleCosetKey {
    pub x: FieldElem,
    pub y: TorsionClass,
}

/// `x = alpha / beta` with coprime canonical integral `alpha`, `beta`.
pub fn lowest_terms(ctx: &FieldCtx, x: &FieldElem) -> (FieldElem, FieldElem) {
    let beta = denominator(ctx, &TorsionClass::new(x)).gen;
    let alpha = ctx
        .canonical_generator(&ctx.mul(&beta, x))
        .expect("x is nonzero");
    (alpha, beta)
}

pub fn right_coset_key(ctx: &FieldCtx, g: &GroupElem) -> RightCosetKey {
    let x = ctx.canonical_generator(&g.x).expect("x is nonzero");
    let y = ctx.reduce_mod(&g.y, &x).expect("x is nonzero");
    RightCosetKey { x, y }
}

pub fn double_coset_key(ctx: &FieldCtx, g: &GroupElem) -> DoubleCosetKey {
    let (_, beta) = lowest_terms(ctx, &g.x);
    let t = TorsionClass::new(&ctx.mul(&beta, &g.y));
    DoubleCosetKey {
        x: ctx.canonical_generator(&g.x).expect("x is nonzero"),
        y: orbit_min(ctx, &t),
    }
}

impl DoubleCosetKey {
    pub fn rep(&self, ctx: &FieldCtx) -> GroupElem {
        let (_, beta) = lowest_terms(ctx, &self.x);
        GroupElem {
            y: ctx.div(self.y.rep(), &beta).expect("beta is nonzero"),
            x: self.x.clone(),
        }
    }

    /// `max(N_alpha, N_beta, N(denominator of y))` for the canonical
    /// representative; the quantity bounded by an oracle level.
    pub fn level(&self, ctx: &FieldCtx) -> u64 {
        let (alpha, beta) = lowest_terms(ctx, &self.x);
        let g = self.rep(ctx);
        let den = denominator(ctx, &TorsionClass::new(&g.y)).norm;
        ctx.int_norm(&alpha).max(ctx.int_norm(&beta)).max(den)
    }
}

/// Distinct right cosets of `P_O g P_O`, from the right translates
/// `g (a, u) = (a + y u, x u)`.
pub fn right_cosets_in_double_coset(ctx: &FieldCtx, g: &GroupElem) -> Vec<RightCosetKey> {
    let (alpha, _) = lowest_terms(ctx, &g.x);
    // translates by a in alpha*O = O ∩ xO leave the right coset unchanged
    let shifts = ctx.residues(&alpha).expect("alpha is nonzero");
    let mut keys: Vec<RightCosetKey> = Vec::new();
    for u in ctx.units() {
        for a in &shifts {
            let h = GroupElem {
                y: a + &ctx.mul(&g.y, u),
                x: ctx.mul(&g.x, u),
            };
            keys.push(right_coset_key(ctx, &h));
        }
    }
    keys.sort();
    keys.dedup();
    keys
}

/// `R(g) = [O* : O*_{yA}] [O : O ∩ xO]` with `A = (O + xO)^{-1} = beta O`.
pub fn count_r(ctx: &FieldCtx, g: &GroupElem) -> usize {
    let (alpha, beta) = lowest_terms(ctx, &g.x);
    let t = TorsionClass::new(&ctx.mul(&beta, &g.y));
    r_index(ctx, &t) * ctx.int_norm(&alpha) as usize
}

/// `L(g) = R(g^{-1})`.
pub fn count_l(ctx: &FieldCtx, g: &GroupElem) -> usize {
    count_r(ctx, &g.inv(ctx))
}

/// Bi-invariant function with finite support, stored per double coset.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CosetFunction {
    values: BTreeMap<DoubleCosetKey, Rat>,
}

impl CosetFunction {
    pub fn zero() -> Self {
        CosetFunction::default()
    }

    /// Characteristic function `[P_O]`.
    pub fn unit() -> Self {
        let mut f = CosetFunction::zero();
        f.add_value(
            DoubleCosetKey {
                x: FieldElem::one(),
                y: TorsionClass::zero(),
            },
            Rat::one(),
        );
        f
    }

    pub fn indicator(ctx: &FieldCtx, g: &GroupElem) -> Self {
        let mut f = CosetFunction::zero();
        f.add_value(double_coset_key(ctx, g), Rat::one());
        f
    }

    pub fn add_value(&mut self, k: DoubleCosetKey, v: Rat) {
        let slot = self.values.entry(k.clone()).or_insert_with(Rat::zero);
        *slot += v;
        if slot.is_zero() {
            self.values.remove(&k);
        }
    }

    pub fn values(&self) -> impl Iterator<Item = (&DoubleCosetKey, &Rat)> {
        self.values.iter()
    }

    pub fn support_size(&self) -> usize {
        self.values.len()
    }

    pub fn eval(&self, ctx: &FieldCtx, g: &GroupElem) -> Rat {
        self.values
            .get(&double_coset_key(ctx, g))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn scale(&self, q: &Rat) -> Self {
        let mut out = CosetFunction::zero();
        for (k, v) in &self.values {
            out.add_value(k.clone(), v * q);
        }
        out
    }

    pub fn add(&self, other: &CosetFunction) -> Self {
        let mut out = self.clone();
        for (k, v) in &other.values {
            out.add_value(k.clone(), v.clone());
        }
        out
    }

    /// `f*(g) = f(g^{-1})` (values are rational, so no conjugation).
    pub fn adjoint(&self, ctx: &FieldCtx) -> Self {
        let mut out = CosetFunction::zero();
        for (k, v) in &self.values {
            out.add_value(double_coset_key(ctx, &k.rep(ctx).inv(ctx)), v.clone());
        }
        out
    }

    /// The same function as a left-invariant function on right cosets.
    pub fn to_right_cosets(&self, ctx: &FieldCtx) -> RightCosetFunction {
        let mut out = RightCosetFunction::default();
        for (k, v) in &self.values {
            for rk in right_cosets_in_double_coset(ctx, &k.rep(ctx)) {
                out.values.insert(rk, v.clone());
            }
        }
        out
    }
}

/// Left-invariant function with finite support, stored per right coset.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RightCosetFunction {
    values: BTreeMap<RightCosetKey, Rat>,
}

impl RightCosetFunction {
    /// `e_r`, the indicator of `P_O (r, 1)`.
    pub fn e(ctx: &FieldCtx, r: &FieldElem) -> Self {
        let mut f = RightCosetFunction::default();
        f.values.insert(
            right_coset_key(
                ctx,
                &GroupElem {
                    y: r.clone(),
                    x: FieldElem::one(),
                },
            ),
            Rat::one(),
        );
        f
    }

    pub fn add(&self, other: &RightCosetFunction) -> Self {
        let mut out = self.clone();
        for (k, v) in &other.values {
            let slot = out.values.entry(k.clone()).or_insert_with(Rat::zero);
            *slot += v;
            if slot.is_zero() {
                out.values.remove(k);
            }
        }
        out
    }

    pub fn scale(&self, q: &Rat) -> Self {
        RightCosetFunction {
            values: self
                .values
                .iter()
                .map(|(k, v)| (k.clone(), v * q))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
        }
    }

    pub fn eval(&self, ctx: &FieldCtx, g: &GroupElem) -> Rat {
        self.values
            .get(&right_coset_key(ctx, g))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn keys(&self) -> impl Iterator<Item = (&RightCosetKey, &Rat)> {
        self.values.iter()
    }
}

/// `f_r`, the indicator of the left coset `(r, 1) P_O`.
pub fn f_indicator(ctx: &FieldCtx, r: &FieldElem, g: &GroupElem) -> Rat {
    let h = GroupElem {
        y: -r,
        x: FieldElem::one(),
    }
    .mul(ctx, g);
    if h.in_subgroup(ctx) {
        Rat::one()
    } else {
        Rat::zero()
    }
}

/// The literal sum `(f * g)(h) = sum_{P_O h1} f(h h1^{-1}) g(h1)` for a
/// right-invariant `f` given pointwise and a left-invariant `g`.
pub fn convolve_at<F: Fn(&GroupElem) -> Rat>(
    ctx: &FieldCtx,
    f: F,
    g: &RightCosetFunction,
    h: &GroupElem,
) -> Rat {
    g.keys()
        .map(|(k, v)| f(&h.mul(ctx, &k.rep().inv(ctx))) * v)
        .fold(Rat::zero(), |a, b| a + b)
}

/// Enumeration engine with caches for right-coset lists and images of
/// monomials.
pub struct Oracle {
    ctx: FieldCtx,
    level: u64,
    cosets: Mutex<HashMap<DoubleCosetKey, Arc<Vec<GroupElem>>>>,
    images: Mutex<HashMap<Monomial, Arc<CosetFunction>>>,
}

impl Oracle {
    pub fn new(ctx: &FieldCtx, level: u64) -> Self {
        Oracle {
            ctx: ctx.clone(),
            level,
            cosets: Mutex::new(HashMap::new()),
            images: Mutex::new(HashMap::new()),
        }
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    fn reps(&self, k: &DoubleCosetKey) -> Arc<Vec<GroupElem>> {
        if let Some(v) = self.cosets.lock().expect("cache lock").get(k) {
            return v.clone();
        }
        let ctx = &self.ctx;
        let v: Vec<GroupElem> = right_cosets_in_double_coset(ctx, &k.rep(ctx))
            .into_iter()
            .map(|rk| rk.rep())
            .collect();
        let v = Arc::new(v);
        self.cosets
            .lock()
            .expect("cache lock")
            .insert(k.clone(), v.clone());
        v
    }

    fn check_level(&self, k: &DoubleCosetKey) -> Result<()> {
        let l = k.level(&self.ctx);
        if l > self.level {
            return Err(HeckeError::LevelOverflow(format!(
                "double coset of ({}, {}) has level {} > {}",
                k.rep(&self.ctx).y,
                k.x,
                l,
                self.level
            )));
        }
        Ok(())
    }

    /// `[D1] * [D2]` as counts per double coset, checking that the count is
    /// constant over the right cosets of each resulting double coset.
    fn convolve_cosets(
        &self,
        d1: &DoubleCosetKey,
        d2: &DoubleCosetKey,
    ) -> Result<Vec<(DoubleCosetKey, usize)>> {
        let ctx = &self.ctx;
        let (r1, r2) = (self.reps(d1), self.reps(d2));
        let mut counts: HashMap<RightCosetKey, usize> = HashMap::new();
        for a in r1.iter() {
            for b in r2.iter() {
                *counts
                    .entry(right_coset_key(ctx, &a.mul(ctx, b)))
                    .or_insert(0) += 1;
            }
        }
        let mut grouped: HashMap<DoubleCosetKey, (usize, usize)> = HashMap::new();
        for (rk, c) in &counts {
            let dk = double_coset_key(ctx, &rk.rep());
            let e = grouped.entry(dk.clone()).or_insert((*c, 0));
            if e.0 != *c {
                return Err(HeckeError::Precondition(format!(
                    "convolution is not left-invariant on the double coset of ({}, {})",
                    dk.rep(ctx).y,
                    dk.x
                )));
            }
            e.1 += 1;
        }
        let mut out = Vec::with_capacity(grouped.len());
        for (dk, (c, seen)) in grouped {
            if seen != self.reps(&dk).len() {
                return Err(HeckeError::Precondition(format!(
                    "convolution misses right cosets of the double coset of ({}, {})",
                    dk.rep(ctx).y,
                    dk.x
                )));
            }
            self.check_level(&dk)?;
            out.push((dk, c));
        }
        Ok(out)
    }

    pub fn convolve(&self, f: &CosetFunction, g: &CosetFunction) -> Result<CosetFunction> {
        let mut out = CosetFunction::zero();
        for (k1, v1) in f.values() {
            for (k2, v2) in g.values() {
                for (k, c) in self.convolve_cosets(k1, k2)? {
                    out.add_value(k, v1 * v2 * rat(c as i128));
                }
            }
        }
        Ok(out)
    }

    /// `nu_a = [P_O (0, a) P_O]`, the unnormalized `mu_a`.
    pub fn nu(&self, a: &FieldElem) -> CosetFunction {
        CosetFunction::indicator(
            &self.ctx,
            &GroupElem {
                y: FieldElem::zero(),
                x: a.clone(),
            },
        )
    }

    /// `nu_a^* = [P_O (0, 1/a) P_O]`.
    pub fn nu_star(&self, a: &FieldElem) -> CosetFunction {
        let x = self.ctx.inv(a).expect("a is nonzero");
        CosetFunction::indicator(
            &self.ctx,
            &GroupElem {
                y: FieldElem::zero(),
                x,
            },
        )
    }

    /// `theta_r = R(r)^{-1} [P_O (r, 1) P_O]`.
    pub fn theta(&self, r: &FieldElem) -> CosetFunction {
        let g = GroupElem {
            y: r.clone(),
            x: FieldElem::one(),
        };
        CosetFunction::indicator(&self.ctx, &g).scale(&Rat::new(1, count_r(&self.ctx, &g) as i128))
    }

    /// Image of `M(a, r, b)`: `N_a^{-1} nu_a^* * theta_r * nu_b`.
    pub fn monomial_image(&self, m: &Monomial) -> Result<Arc<CosetFunction>> {
        if let Some(f) = self.images.lock().expect("cache lock").get(m) {
            return Ok(f.clone());
        }
        let ctx = &self.ctx;
        let r = m.r(ctx);
        let left = self.convolve(&self.nu_star(&m.a.gen), &self.theta(r.rep()))?;
        let f = self
            .convolve(&left, &self.nu(&m.b.gen))?
            .scale(&Rat::new(1, m.a.norm as i128));
        let f = Arc::new(f);
        self.images
            .lock()
            .expect("cache lock")
            .insert(m.clone(), f.clone());
        Ok(f)
    }

    /// Linear extension of [`Oracle::monomial_image`].
    pub fn symbolic_to_oracle(&self, x: &HeckeElement) -> Result<CosetFunction> {
        let mut out = CosetFunction::zero();
        for (m, c) in x.terms() {
            out = out.add(&self.monomial_image(m)?.scale(c));
        }
        Ok(out)
    }
}

/// Canonical generators of all integral ideals with norm at most `bound`.
pub fn ideals_up_to(ctx: &FieldCtx, bound: u64) -> Vec<crate::numberfield::PrincipalIdeal> {
    let mut v: Vec<_> = (1..=bound)
        .flat_map(|n| ctx.elements_of_norm(n))
        .filter(|x| !ctx.is_rational() || x.c0 > Rat::zero())
        .map(|x| ctx.ideal(&x).expect("integral"))
        .collect();
    v.sort();
    v.dedup();
    v
}

/// Distinct canonical monomials `M(a, r, b)` with `N_a, N_b <= bound` and
/// `r` ranging over classes whose denominator has norm at most `bound`.
pub fn small_monomials(ctx: &FieldCtx, bound: u64) -> Vec<Monomial> {
    let ideals = ideals_up_to(ctx, bound);
    let mut rs: Vec<TorsionClass> = ideals
        .iter()
        .flat_map(|c| crate::torsion::torsion_points(ctx, &c.gen).expect("nonzero"))
        .collect();
    rs.sort();
    rs.dedup();
    let mut out = Vec::new();
    for a in &ideals {
        for b in &ideals {
            if !ctx.coprime(&a.gen, &b.gen).expect("nonzero") {
                continue;
            }
            for r in &rs {
                out.push(Monomial::new(ctx, &a.gen, r.rep(), &b.gen).expect("valid monomial"));
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Outcome of comparing the rewrite engine with the convolution model.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SweepReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

/// Checks `phi(x y) = phi(x) * phi(y)` for every ordered pair of the given
/// monomials, where `phi` is [`Oracle::symbolic_to_oracle`].
pub fn equivalence_sweep(oracle: &Oracle, monos: &[Monomial]) -> SweepReport {
    let ctx = oracle.ctx();
    let mut report = SweepReport::default();
    for m1 in monos {
        for m2 in monos {
            report.checked += 1;
            let outcome = (|| -> Result<bool> {
                let sym = crate::hecke::mul_monomials(ctx, m1, m2);
                let lhs = oracle.symbolic_to_oracle(&sym)?;
                let rhs =
                    oracle.convolve(&*oracle.monomial_image(m1)?, &*oracle.monomial_image(m2)?)?;
                Ok(lhs == rhs)
            })();
            match outcome {
                Ok(true) => {}
                Ok(false) => {
                    report
                        .failures
                        .push(format!("{} * {}", m1.display(ctx), m2.display(ctx)))
                }
                Err(e) => {
                    report
                        .failures
                        .push(format!("{} * {}: {e}", m1.display(ctx), m2.display(ctx)))
                }
            }
        }
    }
    report
}
