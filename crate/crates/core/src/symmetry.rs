//! The finite-level symmetry group `(O/cO)* / image(O*)`, acting
//! geometrically on character points and arithmetically (through the norm)
//! on cyclotomic state values.

use num_integer::Integer;

use crate::cyclo::CycloNum;
use crate::error::{HeckeError, Result};
use crate::kms::phi_extreme_infty;
use crate::numberfield::{FieldCtx, FieldElem};
use crate::pairing::{pair, unit_image, CharacterPoint, SymmetryGroup};
use crate::torsion::{orbit_points, torsion_points, TorsionClass};

/// A class `j` in the level-`c` symmetry group, stored by its canonical
/// representative. `lift` keeps the residue it was built from; equality
/// ignores it.
#[derive(Clone, Debug)]
pub struct SymmetryElem {
    pub level: FieldElem,
    pub j: FieldElem,
    pub lift: FieldElem,
}

impl PartialEq for SymmetryElem {
    fn eq(&self, o: &Self) -> bool {
        self.level == o.level && self.j == o.j
    }
}

impl Eq for SymmetryElem {}

impl std::hash::Hash for SymmetryElem {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        self.level.hash(h);
        self.j.hash(h);
    }
}

impl SymmetryElem {
    pub fn new(ctx: &FieldCtx, c: &FieldElem, j: &FieldElem) -> Result<Self> {
        let c = ctx.canonical_generator(c)?;
        // validates that j is a unit residue
        CharacterPoint::new(ctx, &c, j)?;
        let group = SymmetryGroup::new(ctx, &c)?;
        Ok(SymmetryElem {
            j: group.class_of(ctx, j)?,
            lift: ctx.reduce_mod(j, &c)?,
            level: c,
        })
    }

    pub fn identity(ctx: &FieldCtx, c: &FieldElem) -> Result<Self> {
        Self::new(ctx, c, &FieldElem::one())
    }

    pub fn mul(&self, ctx: &FieldCtx, other: &SymmetryElem) -> Result<Self> {
        if self.level != other.level {
            return Err(HeckeError::LevelMismatch(format!(
                "{} vs {}",
                self.level, other.level
            )));
        }
        Self::new(ctx, &self.level, &ctx.mul(&self.j, &other.j))
    }

    /// Every element of the group, in the order of `SymmetryGroup::reps`.
    pub fn all(ctx: &FieldCtx, c: &FieldElem) -> Result<Vec<SymmetryElem>> {
        let c = ctx.canonical_generator(c)?;
        let group = SymmetryGroup::new(ctx, &c)?;
        group
            .reps
            .iter()
            .map(|j| SymmetryElem::new(ctx, &c, j))
            .collect()
    }
}

/// `chi_w -> chi_{jw}`.
pub fn act_geometric(
    ctx: &FieldCtx,
    j: &SymmetryElem,
    chi: &CharacterPoint,
) -> Result<CharacterPoint> {
    if j.level != chi.level.gen {
        return Err(HeckeError::LevelMismatch(format!(
            "symmetry at level {} acting on a character of level {}",
            j.level, chi.level.gen
        )));
    }
    chi.times(ctx, &j.j)
}

/// An integral lift `t` of `j` with `gcd(N(t), m) = 1`, searched among
/// `j + c z` for small `z` (smallest `|z|` first, starting from the
/// residue `j` was built from).
pub fn norm_lift(ctx: &FieldCtx, j: &SymmetryElem, m: u64) -> Result<(FieldElem, i128)> {
    let m = m as i128;
    let range: i128 = 12;
    let second = if ctx.is_rational() {
        0..=0
    } else {
        -range..=range
    };
    let mut best: Option<(u128, FieldElem, i128)> = None;
    for z0 in -range..=range {
        for z1 in second.clone() {
            let t = &j.lift + &ctx.mul(&j.level, &FieldElem::ints(z0, z1));
            if t.is_zero() {
                continue;
            }
            let n = ctx.field_norm(&t).to_integer();
            if n.gcd(&m) != 1 {
                continue;
            }
            let size = (z0.abs() + z1.abs()) as u128;
            if best.as_ref().map_or(true, |b| size < b.0) {
                best = Some((size, t, n));
            }
        }
    }
    best.map(|(_, t, n)| (t, n)).ok_or_else(|| {
        HeckeError::Precondition(format!(
            "no lift of j = {} mod {} has norm prime to {m}; raise the level",
            j.j, j.level
        ))
    })
}

/// `zeta_m -> zeta_m^{N(t)}` for a lift `t` of `j` with norm prime to `m`.
pub fn act_arithmetic(ctx: &FieldCtx, j: &SymmetryElem, v: &CycloNum) -> Result<CycloNum> {
    let m = v.modulus();
    if m == 1 {
        return Ok(v.clone());
    }
    let (_, n) = norm_lift(ctx, j, m)?;
    Ok(v.galois(n.rem_euclid(m as i128) as i64))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompareReport {
    pub geometric: CycloNum,
    pub arithmetic: CycloNum,
    pub equal: bool,
}

/// `phi_{j chi, inf}(theta_r)` against `j` applied to `phi_{chi, inf}(theta_r)`.
pub fn compare_actions(
    ctx: &FieldCtx,
    r: &TorsionClass,
    chi: &CharacterPoint,
    j: &SymmetryElem,
) -> Result<CompareReport> {
    let geometric = phi_extreme_infty(ctx, r, &act_geometric(ctx, j, chi)?)?;
    let base = phi_extreme_infty(ctx, r, chi)?;
    let arithmetic = act_arithmetic(ctx, j, &base.lift(chi.value_modulus(ctx)))?;
    let equal = geometric == arithmetic;
    Ok(CompareReport {
        geometric,
        arithmetic,
        equal,
    })
}

/// `phi_{j chi, inf}(theta_r) = |O*|^{-1} sum_u <j u r, chi>`, expanded
/// through the pairing, for every level-`c` point.
pub fn state_transport_holds(
    ctx: &FieldCtx,
    j: &SymmetryElem,
    chi: &CharacterPoint,
) -> Result<bool> {
    let moved = act_geometric(ctx, j, chi)?;
    let m = chi.value_modulus(ctx);
    for r in torsion_points(ctx, &chi.level.gen)? {
        let mut pulled = CycloNum::zero().lift(m);
        for u in ctx.units() {
            let x = r.scale(ctx, &ctx.mul(u, &j.j));
            pulled = pulled.add(&pair(ctx, &x, chi)?.to_cyclo(m));
        }
        let pulled = pulled.scale(&crate::numberfield::Rat::new(1, ctx.unit_count() as i128));
        if pulled != phi_extreme_infty(ctx, &r, &moved)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularityReport {
    pub level: FieldElem,
    pub group_order: usize,
    /// Distinct tuples `(phi_{chi_w, inf}(theta_r))_r` over unit residues `w`.
    pub extreme_classes: usize,
    pub transitive: bool,
    pub free: bool,
}

impl RegularityReport {
    pub fn regular(&self) -> bool {
        self.group_order == self.extreme_classes && self.transitive && self.free
    }
}

/// Value tuple of `phi_{chi_w, inf}` on the level-`c` orbit representatives.
fn state_signature(ctx: &FieldCtx, chi: &CharacterPoint) -> Result<Vec<Vec<String>>> {
    let c = &chi.level.gen;
    let mut sig = Vec::new();
    for o in orbit_points(ctx, c)? {
        let v = phi_extreme_infty(ctx, &o.rep, chi)?.lift(chi.value_modulus(ctx));
        sig.push(v.coeffs().iter().map(|q| q.to_string()).collect());
    }
    Ok(sig)
}

/// Compares the symmetry group at level `c` with the set of extreme states
/// it acts on, and checks that the geometric action is free and transitive.
pub fn regularity_check(ctx: &FieldCtx, c: &FieldElem) -> Result<RegularityReport> {
    let c = ctx.canonical_generator(c)?;
    let group = SymmetryGroup::new(ctx, &c)?;
    let elems = SymmetryElem::all(ctx, &c)?;
    let mut classes = std::collections::BTreeSet::new();
    for w in crate::pairing::unit_residues(ctx, &c)? {
        classes.insert(state_signature(ctx, &CharacterPoint::new(ctx, &c, &w)?)?);
    }
    let base = CharacterPoint::new(ctx, &c, &FieldElem::one())?;
    let mut orbit = std::collections::BTreeSet::new();
    let mut free = true;
    for j in &elems {
        let sig = state_signature(ctx, &act_geometric(ctx, j, &base)?)?;
        if !orbit.insert(sig) {
            free = false;
        }
    }
    // freeness at every point, not just the base one
    let identity = SymmetryElem::identity(ctx, &c)?;
    for w in &group.reps {
        let chi = CharacterPoint::new(ctx, &c, w)?;
        let own = state_signature(ctx, &chi)?;
        for j in elems.iter().filter(|j| **j != identity) {
            if state_signature(ctx, &act_geometric(ctx, j, &chi)?)? == own {
                free = false;
            }
        }
    }
    Ok(RegularityReport {
        level: c,
        group_order: group.order(),
        extreme_classes: classes.len(),
        transitive: orbit.len() == classes.len(),
        free,
    })
}

/// For `a | b`: reduction mod `a` carries the unit image at level `b` onto the
/// one at level `a`, and induces a well-defined surjection `G_b -> G_a`.
pub fn projective_coherence(ctx: &FieldCtx, a: &FieldElem, b: &FieldElem) -> Result<bool> {
    if !ctx.divides(a, b) {
        return Err(HeckeError::LevelMismatch(format!(
            "{a} does not divide {b}"
        )));
    }
    let ga = SymmetryGroup::new(ctx, a)?;
    let gb = SymmetryGroup::new(ctx, b)?;
    let mut image: Vec<FieldElem> = unit_image(ctx, b)?
        .iter()
        .map(|u| ctx.reduce_mod(u, a))
        .collect::<Result<_>>()?;
    image.sort();
    image.dedup();
    if image != ga.unit_image {
        return Ok(false);
    }
    let mut hit = std::collections::BTreeSet::new();
    for x in crate::pairing::unit_residues(ctx, b)? {
        let via_class = crate::pairing::project_class(ctx, &gb, &ga, &gb.class_of(ctx, &x)?)?;
        let direct = crate::pairing::project_class(ctx, &gb, &ga, &x)?;
        if via_class != direct {
            return Ok(false);
        }
        hit.insert(direct);
    }
    Ok(hit.len() == ga.order())
}

/// `true` when the unit multiple `-1` acts trivially on values, i.e. every
/// value of `phi_{chi, inf}` is real.
pub fn values_are_real(v: &CycloNum) -> bool {
    v.conj() == *v
}
