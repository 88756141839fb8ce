//! Finite-level characters of `K/O` coming from the inverse different.
//!
//! At level `c` an extreme point is a unit residue `w` in `(O/cO)*`; it pairs
//! with `r` in `(1/c)O/O` as `<r, chi_w> = exp(2 pi i Tr(r w / delta))`.

use num_traits::Zero;

use crate::cyclo::CycloNum;
use crate::error::{HeckeError, Result};
use crate::numberfield::{FieldCtx, FieldElem, PrincipalIdeal, Rat};
use crate::torsion::{denominator, stabilizer, torsion_points, TorsionClass};

/// `exp(2 pi i exponent / order)` with `gcd(exponent, order) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RootOfUnity {
    pub order: u64,
    pub exponent: u64,
}

impl RootOfUnity {
    fn from_fraction(q: &Rat) -> Self {
        let f = q - q.floor();
        RootOfUnity {
            order: *f.denom() as u64,
            exponent: *f.numer() as u64,
        }
    }

    pub fn to_cyclo(&self, modulus: u64) -> CycloNum {
        assert!(
            modulus % self.order == 0,
            "modulus must be a multiple of the order"
        );
        CycloNum::root(modulus, (self.exponent * (modulus / self.order)) as i64)
    }

    pub fn to_complex(&self) -> (f64, f64) {
        let a = std::f64::consts::TAU * self.exponent as f64 / self.order as f64;
        (a.cos(), a.sin())
    }
}

/// Extreme point of the inverse different at level `c`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CharacterPoint {
    pub level: PrincipalIdeal,
    pub w: FieldElem,
}

impl CharacterPoint {
    pub fn new(ctx: &FieldCtx, level: &FieldElem, w: &FieldElem) -> Result<Self> {
        let level = ctx.ideal(level)?;
        if !w.is_integral() {
            return Err(HeckeError::NotIntegral(w.to_string()));
        }
        if !w.is_zero() || !level.gen.is_one() {
            let g = ctx.gcd_gen(w, &level.gen)?;
            if !g.is_one() {
                return Err(HeckeError::Precondition(format!(
                    "w = {w} is not a unit modulo c = {}",
                    level.gen
                )));
            }
        }
        let w = ctx.reduce_mod(w, &level.gen)?;
        Ok(CharacterPoint { level, w })
    }

    /// The point `w mod c'` for a divisor `c'` of the level.
    pub fn restrict(&self, ctx: &FieldCtx, c: &FieldElem) -> Result<CharacterPoint> {
        if !ctx.divides(c, &self.level.gen) {
            return Err(HeckeError::LevelMismatch(format!(
                "{c} does not divide the level {}",
                self.level.gen
            )));
        }
        CharacterPoint::new(ctx, c, &self.w)
    }

    /// A multiple `x * chi`: multiplies `w` by an integral element.
    pub fn times(&self, ctx: &FieldCtx, x: &FieldElem) -> Result<CharacterPoint> {
        CharacterPoint::new(ctx, &self.level.gen, &ctx.mul(x, &self.w))
    }

    /// `e_c |disc|` with `e_c` the positive generator of `cO ∩ Z`; every
    /// value of the character has order dividing it.
    pub fn value_modulus(&self, ctx: &FieldCtx) -> u64 {
        let e = ctx
            .ideal_lattice(std::slice::from_ref(&self.level.gen))
            .expect("level is nonzero")
            .h1;
        e as u64 * ctx.discriminant().unsigned_abs() as u64
    }
}

/// `Tr(x / delta) mod 1`.
pub fn trace_form(ctx: &FieldCtx, x: &FieldElem) -> Rat {
    let q = ctx.trace(&ctx.div(x, ctx.different()).expect("delta is nonzero"));
    q.clone() - q.floor()
}

/// `<r, chi>`; requires the denominator of `r` to divide the level.
pub fn pair(ctx: &FieldCtx, r: &TorsionClass, chi: &CharacterPoint) -> Result<RootOfUnity> {
    let b = denominator(ctx, r);
    if !ctx.divides(&b.gen, &chi.level.gen) {
        return Err(HeckeError::LevelMismatch(format!(
            "denominator {} of r = {r} does not divide the level {}",
            b.gen, chi.level.gen
        )));
    }
    Ok(pair_unchecked(ctx, r, &chi.w))
}

pub(crate) fn pair_unchecked(ctx: &FieldCtx, r: &TorsionClass, w: &FieldElem) -> RootOfUnity {
    RootOfUnity::from_fraction(&trace_form(ctx, &ctx.mul(r.rep(), w)))
}

/// `<r, chi>` as an element of `Q(zeta_m)` with `m` the value modulus.
pub fn pair_cyclo(ctx: &FieldCtx, r: &TorsionClass, chi: &CharacterPoint) -> Result<CycloNum> {
    Ok(pair(ctx, r, chi)?.to_cyclo(chi.value_modulus(ctx)))
}

/// Result of [`character_laws`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CharacterReport {
    pub points: usize,
    pub additive: bool,
    pub trivial_on_o: bool,
    pub extreme: bool,
}

impl CharacterReport {
    pub fn passed(&self) -> bool {
        self.additive && self.trivial_on_o && self.extreme
    }
}

/// `x -> <x ., chi_w>` from `O/cO` to characters of `(1/c)O/O` is
/// injective; this holds exactly when `w` is a unit mod `c`.
pub fn is_extreme(ctx: &FieldCtx, c: &FieldElem, w: &FieldElem) -> Result<bool> {
    let pts = torsion_points(ctx, c)?;
    for x in ctx.residues(c)? {
        if x.is_zero() {
            continue;
        }
        let trivial = pts
            .iter()
            .all(|r| trace_form(ctx, &ctx.mul(&ctx.mul(&x, r.rep()), w)).is_zero());
        if trivial {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Additivity, triviality on `O` and extremality over all level-`c` points.
pub fn character_laws(ctx: &FieldCtx, chi: &CharacterPoint) -> Result<CharacterReport> {
    let c = &chi.level.gen;
    let pts = torsion_points(ctx, c)?;
    let frac = |r: &TorsionClass| trace_form(ctx, &ctx.mul(r.rep(), &chi.w));
    let mut additive = true;
    for r in &pts {
        for s in &pts {
            let lhs = frac(&r.add(s));
            let rhs = frac(r) + frac(s);
            if !(rhs - lhs).is_integer() {
                additive = false;
            }
        }
    }
    let mut trivial_on_o = true;
    for r in &pts {
        for x in [FieldElem::one(), ctx.omega()] {
            let shifted = trace_form(ctx, &ctx.mul(&(r.rep() + &x), &chi.w));
            if shifted != frac(r) {
                trivial_on_o = false;
            }
        }
    }
    Ok(CharacterReport {
        points: pts.len(),
        additive,
        trivial_on_o,
        extreme: is_extreme(ctx, c, &chi.w)?,
    })
}

/// `(O/cO)*` as canonical residues.
pub fn unit_residues(ctx: &FieldCtx, c: &FieldElem) -> Result<Vec<FieldElem>> {
    let mut out = Vec::new();
    for x in ctx.residues(c)? {
        if ctx.gcd_gen(&x, c)?.is_one() {
            out.push(x);
        }
    }
    out.sort();
    Ok(out)
}

/// Image of `O*` in `(O/cO)*`.
pub fn unit_image(ctx: &FieldCtx, c: &FieldElem) -> Result<Vec<FieldElem>> {
    let mut out = Vec::new();
    for u in ctx.units() {
        out.push(ctx.reduce_mod(u, c)?);
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// `G_c = O* / O*_{1/c}`: its order from the stabilizer of `1/c`.
pub fn g_order(ctx: &FieldCtx, c: &FieldElem) -> Result<usize> {
    let r = TorsionClass::new(&ctx.inv(c)?);
    Ok(ctx.unit_count() / stabilizer(ctx, &r).len())
}

/// The finite symmetry group `(O/cO)* / image(O*)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryGroup {
    pub level: PrincipalIdeal,
    /// One canonical representative per coset (the smallest residue).
    pub reps: Vec<FieldElem>,
    pub unit_image: Vec<FieldElem>,
    pub ambient_order: usize,
}

impl SymmetryGroup {
    pub fn new(ctx: &FieldCtx, c: &FieldElem) -> Result<Self> {
        let level = ctx.ideal(c)?;
        let units = unit_residues(ctx, c)?;
        let image = unit_image(ctx, c)?;
        let mut reps = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for x in &units {
            if seen.contains(x) {
                continue;
            }
            for u in &image {
                seen.insert(ctx.reduce_mod(&ctx.mul(x, u), c)?);
            }
            reps.push(x.clone());
        }
        Ok(SymmetryGroup {
            level,
            reps,
            unit_image: image,
            ambient_order: units.len(),
        })
    }

    pub fn order(&self) -> usize {
        self.reps.len()
    }

    /// Canonical representative of the coset of `x`.
    pub fn class_of(&self, ctx: &FieldCtx, x: &FieldElem) -> Result<FieldElem> {
        let c = &self.level.gen;
        let mut best: Option<FieldElem> = None;
        for u in &self.unit_image {
            let y = ctx.reduce_mod(&ctx.mul(x, u), c)?;
            if best.as_ref().map_or(true, |b| y < *b) {
                best = Some(y);
            }
        }
        Ok(best.expect("unit image is nonempty"))
    }
}

/// Reduction `(O/bO)* -> (O/aO)*` for `a | b`, mapped onto symmetry classes.
pub fn project_class(
    ctx: &FieldCtx,
    from: &SymmetryGroup,
    to: &SymmetryGroup,
    x: &FieldElem,
) -> Result<FieldElem> {
    if !ctx.divides(&to.level.gen, &from.level.gen) {
        return Err(HeckeError::LevelMismatch(format!(
            "{} does not divide {}",
            to.level.gen, from.level.gen
        )));
    }
    to.class_of(ctx, &ctx.reduce_mod(x, &to.level.gen)?)
}
