//! KMS states of the Hecke system: the symmetric state `phi_beta`, the
//! extreme states `phi_{chi,beta}` and `phi_{chi,inf}`, and the Dedekind zeta
//! function as partition function.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::primes_up_to;
use crate::cyclo::CycloNum;
use crate::error::{HeckeError, Result};
use crate::hecke::{self, HeckeElement, Monomial};
use crate::numberfield::{FieldCtx, FieldElem, LatticeHnf, Rat, Splitting};
use crate::pairing::{pair, pair_unchecked, trace_form, CharacterPoint};
use crate::torsion::{denominator, TorsionClass};

/// Inverse temperature: a finite rational or `+inf`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Beta {
    Finite(Rat),
    Infinite,
}

impl Beta {
    pub fn parse(s: &str) -> Result<Beta> {
        let t = s.trim();
        if matches!(t, "inf" | "infinity" | "+inf" | "oo") {
            return Ok(Beta::Infinite);
        }
        if let Ok(q) = crate::parse::parse_rational(t) {
            return Ok(Beta::Finite(q));
        }
        let f: f64 = t
            .parse()
            .map_err(|_| HeckeError::Parse(format!("invalid beta '{s}'")))?;
        Rat::approximate_float(f)
            .map(Beta::Finite)
            .ok_or_else(|| HeckeError::Parse(format!("invalid beta '{s}'")))
    }

    pub fn as_integer(&self) -> Option<i64> {
        match self {
            Beta::Finite(q) if q.is_integer() => Some(q.to_integer() as i64),
            _ => None,
        }
    }

    pub fn as_f64(&self) -> f64 {
        match self {
            Beta::Finite(q) => crate::numberfield::rat_to_f64(q),
            Beta::Infinite => f64::INFINITY,
        }
    }
}

/// Parameters of numerical KMS evaluations.
#[derive(Clone, Debug, PartialEq)]
pub struct KmsParams {
    pub beta: Beta,
    /// Ideal-norm cutoff `B` of truncated Dirichlet series.
    pub bound: u64,
    pub tolerance: f64,
}

/// A numerical value with a certified absolute error bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

fn big(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn big_pow(n: u64, e: i64) -> BigRational {
    let b = big(n);
    if e >= 0 {
        num_traits::pow(b, e as usize)
    } else {
        num_traits::pow(b.recip(), (-e) as usize)
    }
}

/// `phi_beta(theta_r) = N_b^{-beta} prod_{p | b} (1 - N_p^{beta-1}) / (1 - N_p^{-1})`
/// with `b` the denominator of `r`; exact for integer `beta`.
pub fn phi_symmetric(ctx: &FieldCtx, r: &TorsionClass, beta: i64) -> BigRational {
    let b = denominator(ctx, r);
    let mut v = big_pow(b.norm, -beta);
    for (p, _) in ctx.factor(&b.gen).expect("denominator is integral").primes {
        let np = p.norm;
        let num = BigRational::one() - big_pow(np, beta - 1);
        let den = BigRational::one() - big_pow(np, -1);
        v = v * num / den;
    }
    v
}

/// Floating-point `phi_beta(theta_r)` for real `beta`, with a rounding bound.
pub fn phi_symmetric_f64(ctx: &FieldCtx, r: &TorsionClass, beta: f64) -> Estimate {
    let b = denominator(ctx, r);
    let primes = ctx.factor(&b.gen).expect("denominator is integral").primes;
    let mut v = (b.norm as f64).powf(-beta);
    for (p, _) in &primes {
        let np = p.norm as f64;
        v *= (1.0 - np.powf(beta - 1.0)) / (1.0 - 1.0 / np);
    }
    let ops = 4.0 * (primes.len() as f64 + 1.0);
    Estimate {
        value: v,
        error: v.abs() * ops * 4.0 * f64::EPSILON,
    }
}

/// `phi_beta` on a canonical monomial: zero unless `aO = bO`, which for
/// coprime canonical `a`, `b` means `a = b = 1`.
pub fn phi_monomial(ctx: &FieldCtx, m: &Monomial, beta: i64) -> BigRational {
    if !m.is_theta() {
        return BigRational::zero();
    }
    phi_symmetric(ctx, m.key(), beta)
}

fn to_big(q: &Rat) -> BigRational {
    BigRational::new(BigInt::from(*q.numer()), BigInt::from(*q.denom()))
}

pub fn phi_element(ctx: &FieldCtx, x: &HeckeElement, beta: i64) -> BigRational {
    x.terms()
        .map(|(m, c)| to_big(c) * phi_monomial(ctx, m, beta))
        .fold(BigRational::zero(), |a, b| a + b)
}

/// `N_a^beta phi_beta(theta_r alpha_a(1))`, the value the KMS condition
/// forces on `mu_a^* theta_r mu_a = theta_{ar}`.
pub fn phi_via_kms(ctx: &FieldCtx, a: &FieldElem, r: &FieldElem, beta: i64) -> Result<BigRational> {
    let prod = hecke::mul(ctx, &hecke::theta(ctx, r), &hecke::alpha_one(ctx, a)?);
    Ok(big_pow(ctx.int_norm(a), beta) * phi_element(ctx, &prod, beta))
}

/// Exact comparison of `phi_beta(x y)` and `phi_beta(y sigma_{i beta}(x))`.
pub fn kms_identity_check(ctx: &FieldCtx, x: &HeckeElement, y: &HeckeElement, beta: i64) -> bool {
    let lhs = phi_element(ctx, &hecke::mul(ctx, x, y), beta);
    let rhs = phi_element(ctx, &hecke::mul(ctx, y, &x.sigma_i_beta(beta as i32)), beta);
    lhs == rhs
}

/// `phi_{chi,inf}(theta_r) = |O*|^{-1} sum_u <u r, chi>`, an element of the
/// cyclotomic field of the character's value modulus.
pub fn phi_extreme_infty(
    ctx: &FieldCtx,
    r: &TorsionClass,
    chi: &CharacterPoint,
) -> Result<CycloNum> {
    pair(ctx, r, chi)?;
    let m = chi.value_modulus(ctx);
    let mut sum = CycloNum::zero().lift(m);
    for u in ctx.units() {
        sum = sum.add(&pair_unchecked(ctx, &r.scale(ctx, u), &chi.w).to_cyclo(m));
    }
    Ok(sum.scale(&Rat::new(1, ctx.unit_count() as i128)))
}

fn require_beta_gt_one(beta: f64) -> Result<()> {
    if beta.is_nan() || beta <= 1.0 {
        return Err(HeckeError::BetaTooSmall(format!("{beta}")));
    }
    Ok(())
}

/// Number of integral ideals of each norm `0..=n` (index 0 unused).
pub fn ideal_counts(ctx: &FieldCtx, n: usize) -> Vec<u32> {
    let mut counts = vec![1u32; n + 1];
    counts[0] = 0;
    if ctx.is_rational() || n < 2 {
        return counts;
    }
    let mut spf = vec![0u32; n + 1];
    let mut split = vec![Splitting::Ramified; n + 1];
    for p in primes_up_to(n) {
        split[p as usize] = ctx.splitting(p);
        let mut m = p as usize;
        while m <= n {
            if spf[m] == 0 {
                spf[m] = p as u32;
            }
            m += p as usize;
        }
    }
    for m in 2..=n {
        let p = spf[m] as usize;
        let (mut rest, mut e) = (m, 0u32);
        while rest % p == 0 {
            rest /= p;
            e += 1;
        }
        let local = match split[p] {
            Splitting::Split => e + 1,
            Splitting::Inert => u32::from(e % 2 == 0),
            Splitting::Ramified => 1,
        };
        counts[m] = local * counts[rest];
    }
    counts
}

/// `log N_a` for every ideal with `N_a <= bound`, sorted, with multiplicity.
pub fn eigenvalue_list(ctx: &FieldCtx, bound: u64) -> Vec<(u64, f64)> {
    let counts = ideal_counts(ctx, bound as usize);
    let mut out = Vec::new();
    for (n, &c) in counts.iter().enumerate().skip(1) {
        for _ in 0..c {
            out.push((n as u64, (n as f64).ln()));
        }
    }
    out
}

/// `sum_{N_a <= B} N_a^{-beta}`, exact for positive integer `beta`.
pub fn partial_zeta_exact(ctx: &FieldCtx, bound: u64, beta: u32) -> BigRational {
    ideal_counts(ctx, bound as usize)
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, &c)| c > 0)
        .map(|(n, &c)| big(c as u64) * big_pow(n as u64, -(beta as i64)))
        .fold(BigRational::zero(), |a, b| a + b)
}

pub fn partial_zeta(ctx: &FieldCtx, bound: u64, beta: f64) -> f64 {
    let mut s = Neumaier::default();
    for (n, &c) in ideal_counts(ctx, bound as usize).iter().enumerate().skip(1) {
        if c > 0 {
            s.add(c as f64 * (n as f64).powf(-beta));
        }
    }
    s.sum()
}

/// Compensated summation.
#[derive(Clone, Copy, Debug, Default)]
pub struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn sum(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Result of the Euler-product evaluation of `zeta_K`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZetaEstimate {
    pub value: f64,
    pub error: f64,
    pub prime_bound: u64,
}

/// Euler-product tail: with at most two primes above each `p`, the omitted
/// factors change `log zeta` by at most `2 P^{1-beta} / ((beta-1)(1-P^{-beta}))`.
fn euler_log_tail(p: f64, beta: f64) -> f64 {
    2.0 * p.powf(1.0 - beta) / ((beta - 1.0) * (1.0 - p.powf(-beta)))
}

/// `zeta_K(beta)` from the Euler product over rational primes `<= P`, with
/// `P` chosen so that the certified error is below `tol`.
pub fn zeta_k(ctx: &FieldCtx, beta: f64, tol: f64) -> Result<ZetaEstimate> {
    require_beta_gt_one(beta)?;
    if !(tol > 0.0) {
        return Err(HeckeError::Precondition(
            "tolerance must be positive".into(),
        ));
    }
    // zeta_K(beta) <= zeta(beta)^2 <= (beta/(beta-1))^2 bounds the value
    let cap = (beta / (beta - 1.0)).powi(2);
    let mut p = 1000.0f64;
    while euler_log_tail(p, beta).exp_m1() * cap > tol / 2.0 {
        p *= 2.0;
        if p > 5.0e8 {
            return Err(HeckeError::Precondition(format!(
                "tolerance {tol} needs more than 5e8 primes at beta = {beta}"
            )));
        }
    }
    zeta_euler(ctx, beta, p as u64)
}

/// Euler product over rational primes up to `prime_bound`.
pub fn zeta_euler(ctx: &FieldCtx, beta: f64, prime_bound: u64) -> Result<ZetaEstimate> {
    require_beta_gt_one(beta)?;
    let mut log_sum = Neumaier::default();
    let primes = primes_up_to(prime_bound as usize);
    for &p in &primes {
        let pf = p as f64;
        let lf = |q: f64| -(-q.powf(-beta)).ln_1p();
        let term = if ctx.is_rational() {
            lf(pf)
        } else {
            match ctx.splitting(p) {
                Splitting::Split => 2.0 * lf(pf),
                Splitting::Inert => lf(pf * pf),
                Splitting::Ramified => lf(pf),
            }
        };
        log_sum.add(term);
    }
    let value = log_sum.sum().exp();
    let tail = euler_log_tail(prime_bound as f64, beta);
    let rounding = value * (primes.len() as f64 + 10.0) * 4.0 * f64::EPSILON;
    Ok(ZetaEstimate {
        value,
        error: value * tail.exp_m1() + rounding,
        prime_bound,
    })
}

/// Sums `sum N_x^{-beta}` over nonzero `x in O` with `N_x <= B`, split by the
/// residue class of `x` modulo an ideal `bO`, together with the data of a
/// certified estimate for the omitted tail of each class.
#[derive(Clone, Debug)]
pub struct ClassSums {
    pub modulus: FieldElem,
    hnf: LatticeHnf,
    pub classes: Vec<FieldElem>,
    pub sums: Vec<f64>,
    /// Main term of every class tail: `kappa B^{1-beta}/(beta-1)`.
    pub tail_main: f64,
    /// Certified bound on `|class tail - tail_main|`, uniform in the class.
    pub tail_error: f64,
    /// Accumulated rounding bound for every class sum.
    pub rounding: f64,
}

/// Lattice points `(x0, x1)` of `O` with `0 < N <= B` and their weights.
#[derive(Clone, Debug)]
pub struct LatticeWeights {
    pub bound: u64,
    pub beta: f64,
    points: Vec<(i64, i64, f64)>,
}

impl LatticeWeights {
    pub fn new(ctx: &FieldCtx, bound: u64, beta: f64) -> Result<Self> {
        require_beta_gt_one(beta)?;
        let mut points = Vec::new();
        let w = |n: i128| -> f64 {
            if beta == beta.trunc() && beta < 64.0 {
                (n as f64).powi(-(beta as i32))
            } else {
                (n as f64).powf(-beta)
            }
        };
        let b = bound as i128;
        if ctx.is_rational() {
            for x in 1..=b {
                points.push((x as i64, 0, w(x)));
                points.push((-x as i64, 0, w(x)));
            }
        } else {
            let (t, n) = ctx.omega_poly();
            let abs_disc = -ctx.discriminant();
            let y_max = crate::arith::isqrt(4 * b / abs_disc);
            for y in -y_max..=y_max {
                // 4N = (2x + t y)^2 + |disc| y^2 <= 4B
                let rem = 4 * b - abs_disc * y * y;
                if rem < 0 {
                    continue;
                }
                let s = crate::arith::isqrt(rem);
                let lo = (-s - t * y).div_euclid(2) - 1;
                let hi = (s - t * y).div_euclid(2) + 1;
                for x in lo..=hi {
                    let nx = x * x + t * x * y + n * y * y;
                    if nx == 0 || nx > b {
                        continue;
                    }
                    points.push((x as i64, y as i64, w(nx)));
                }
            }
        }
        Ok(LatticeWeights {
            bound,
            beta,
            points,
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Diameter of a fundamental parallelogram of `bO` in the complex plane,
/// after Gauss reduction of the basis `(b, b w)`.
fn cell_diameter(ctx: &FieldCtx, b: &FieldElem) -> f64 {
    let v1 = ctx.to_complex(b);
    let v2 = ctx.to_complex(&ctx.mul(b, &ctx.omega()));
    let (mut u, mut v) = (v1, v2);
    let dot = |a: (f64, f64), c: (f64, f64)| a.0 * c.0 + a.1 * c.1;
    loop {
        if dot(u, u) > dot(v, v) {
            std::mem::swap(&mut u, &mut v);
        }
        let m = (dot(u, v) / dot(u, u)).round();
        let nv = (v.0 - m * u.0, v.1 - m * u.1);
        // ties (hexagonal lattices) would otherwise cycle
        if m == 0.0 || dot(nv, nv) >= dot(v, v) * (1.0 - 1e-12) {
            break;
        }
        v = nv;
    }
    let s = (u.0 + v.0, u.1 + v.1);
    let d = (u.0 - v.0, u.1 - v.1);
    dot(s, s).sqrt().max(dot(d, d).sqrt()) * (1.0 + 1e-12)
}

impl ClassSums {
    pub fn new(ctx: &FieldCtx, weights: &LatticeWeights, b: &FieldElem) -> Result<Self> {
        let hnf = ctx.ideal_lattice(std::slice::from_ref(b))?;
        let (h1, h2, off) = (hnf.h1 as i64, hnf.h2 as i64, hnf.b as i64);
        let count = (h1 * h2) as usize;
        let mut acc = vec![Neumaier::default(); count];
        let mut sizes = vec![0usize; count];
        for &(x0, x1, wt) in &weights.points {
            let q = x1.div_euclid(h2);
            let s = x1 - q * h2;
            let r = (x0 - q * off).rem_euclid(h1);
            let idx = (s * h1 + r) as usize;
            acc[idx].add(wt);
            sizes[idx] += 1;
        }
        let classes = (0..count as i64)
            .map(|i| FieldElem::ints((i % h1) as i128, (i / h1) as i128))
            .collect();
        let beta = weights.beta;
        let big_b = weights.bound as f64;
        let nb = ctx.int_norm(b) as f64;
        let (kappa, c1, c0) = if ctx.is_rational() {
            // |#{x in rho + bZ : 0 < |x| <= t} - 2t/b| <= 2 (+1 for x = 0)
            (2.0 / nb, 0.0, 3.0)
        } else {
            let covol = nb * (-ctx.discriminant() as f64).sqrt() / 2.0;
            let dia = cell_diameter(ctx, b);
            let pi = std::f64::consts::PI;
            (
                pi / covol,
                2.0 * pi * dia / covol,
                pi * dia * dia / covol + 1.0,
            )
        };
        let tail_main = kappa * big_b.powf(1.0 - beta) / (beta - 1.0);
        let tail_error = c1 * big_b.powf(0.5 - beta) * (1.0 + beta / (beta - 0.5))
            + 2.0 * c0 * big_b.powf(-beta);
        let max_size = sizes.iter().copied().max().unwrap_or(0) as f64;
        Ok(ClassSums {
            modulus: b.clone(),
            hnf,
            classes,
            sums: acc.iter().map(Neumaier::sum).collect(),
            tail_main,
            tail_error,
            rounding: (max_size + 10.0) * 4.0 * f64::EPSILON * 3.0,
        })
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn lattice(&self) -> &LatticeHnf {
        &self.hnf
    }
}

/// Certified value of `zeta_K(beta) = |O*|^{-1} sum_{x != 0} N_x^{-beta}` from
/// the lattice sum with its tail main term added back.
pub fn zeta_lattice(ctx: &FieldCtx, weights: &LatticeWeights) -> Result<Estimate> {
    let cs = ClassSums::new(ctx, weights, &FieldElem::one())?;
    let units = ctx.unit_count() as f64;
    Ok(Estimate {
        value: (cs.sums[0] + cs.tail_main) / units,
        error: (cs.tail_error + cs.rounding) / units,
    })
}

/// Both evaluations of `phi_{chi,beta}(theta_r)` at cutoff `B`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExtremeEstimate {
    /// `S_B / zeta_K(beta)`: the plain truncated series.
    pub truncated: f64,
    /// Bound for `truncated` from the ideal-count estimate of the tail.
    pub truncated_error: f64,
    /// Series with the lattice-count main term of its tail restored.
    pub corrected: f64,
    /// Certified bound for `corrected`.
    pub corrected_error: f64,
}

/// `kappa` with `#{ideals of norm <= x} <= kappa x`, estimated from norms up
/// to 1000 with a safety factor 2.
pub fn ideal_density_bound(ctx: &FieldCtx) -> f64 {
    let total: u32 = ideal_counts(ctx, 1000).iter().sum();
    2.0 * total as f64 / 1000.0
}

/// Evaluator for extreme KMS states at a fixed `(B, beta)`.
pub struct ExtremeEvaluator {
    ctx: FieldCtx,
    weights: LatticeWeights,
    zeta: Estimate,
    cache: std::collections::HashMap<FieldElem, ClassSums>,
}

impl ExtremeEvaluator {
    pub fn new(ctx: &FieldCtx, bound: u64, beta: f64) -> Result<Self> {
        require_beta_gt_one(beta)?;
        if bound < 2 {
            return Err(HeckeError::Precondition(
                "truncation bound must be at least 2".into(),
            ));
        }
        let weights = LatticeWeights::new(ctx, bound, beta)?;
        let zeta = zeta_lattice(ctx, &weights)?;
        Ok(ExtremeEvaluator {
            ctx: ctx.clone(),
            weights,
            zeta,
            cache: std::collections::HashMap::new(),
        })
    }

    pub fn zeta(&self) -> Estimate {
        self.zeta
    }

    fn class_sums(&mut self, b: &FieldElem) -> Result<&ClassSums> {
        if !self.cache.contains_key(b) {
            let cs = ClassSums::new(&self.ctx, &self.weights, b)?;
            self.cache.insert(b.clone(), cs);
        }
        Ok(&self.cache[b])
    }

    /// `phi_{chi,beta}(theta_r) = zeta^{-1} |O*|^{-1} sum_{x != 0} N_x^{-beta} <x r, chi>`.
    pub fn phi(&mut self, r: &TorsionClass, chi: &CharacterPoint) -> Result<ExtremeEstimate> {
        pair(&self.ctx, r, chi)?;
        let ctx = self.ctx.clone();
        let b = denominator(&ctx, r).gen;
        let units = ctx.unit_count() as f64;
        let zeta = self.zeta;
        let (bound, beta) = (self.weights.bound as f64, self.weights.beta);
        let cs = self.class_sums(&b)?;
        let mut s = Neumaier::default();
        let mut char_sum = 0.0;
        for (rho, sum) in cs.classes.iter().zip(&cs.sums) {
            let f = trace_form(&ctx, &ctx.mul(&ctx.mul(rho, r.rep()), &chi.w));
            let c = (std::f64::consts::TAU * crate::numberfield::rat_to_f64(&f)).cos();
            s.add(c * sum);
            char_sum += c;
        }
        let n = cs.class_count() as f64;
        // the character sum over O/bO is N_b for r = 0 and 0 otherwise
        let char_sum = if (char_sum - n).abs() < 0.5 { n } else { 0.0 };
        let plain = s.sum() / units;
        let corrected_sum = (s.sum() + char_sum * cs.tail_main) / units;
        let sum_err = n * (cs.tail_error + cs.rounding) / units;
        let corrected = corrected_sum / zeta.value;
        let corrected_error =
            (sum_err + corrected_sum.abs() / zeta.value * zeta.error) / (zeta.value - zeta.error);
        let naive_tail = ideal_density_bound(&ctx) * beta / (beta - 1.0) * bound.powf(1.0 - beta);
        Ok(ExtremeEstimate {
            truncated: plain / zeta.value,
            truncated_error: (naive_tail + plain.abs() / zeta.value * zeta.error)
                / (zeta.value - zeta.error),
            corrected,
            corrected_error,
        })
    }
}

/// Exact value of a rational as `f64`, for reporting.
pub fn big_to_f64(q: &BigRational) -> f64 {
    match (q.numer().to_f64(), q.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // scale down huge numerators/denominators before dividing
            let shift = q.numer().bits().max(q.denom().bits()).saturating_sub(1000);
            let n = (q.numer().abs() >> shift).to_f64().unwrap_or(f64::MAX);
            let d = (q.denom() >> shift).to_f64().unwrap_or(f64::MAX);
            if q.is_negative() {
                -n / d
            } else {
                n / d
            }
        }
    }
}

pub fn big_to_string(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
