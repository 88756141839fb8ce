//! Exact arithmetic in `Q` and in the imaginary quadratic fields of class
//! number one.
//!
//! Elements are stored on the integral basis `(1, w)` where `w = sqrt(-d)`
//! when `-d = 2, 3 mod 4` and `w = (1 + sqrt(-d))/2` when `-d = 1 mod 4`.
//! In both cases `w^2 = t*w - n` with `t = Tr(w)` and `n = N(w)`. For `Q`
//! the second coordinate is always zero.
//!
//! The context ([`FieldCtx`]) carries the multiplication table, the unit
//! group and the generator of the different; elements are plain values and
//! every operation that needs the field goes through the context.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::arith::{self, factor_integer, isqrt, kronecker};
use crate::error::{HeckeError, Result};

/// Exact rational scalar used throughout the crate.
pub type Rat = Ratio<i128>;

/// Field tags with class number one and finite unit group.
pub const SUPPORTED_FIELDS: [u32; 10] = [0, 1, 2, 3, 7, 11, 19, 43, 67, 163];

pub(crate) fn rat(n: i128) -> Rat {
    Rat::from_integer(n)
}

pub(crate) fn frac_part(q: &Rat) -> Rat {
    q - q.floor()
}

/// Element `c0 + c1*w` of the field.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElem {
    pub c0: Rat,
    pub c1: Rat,
}

impl FieldElem {
    pub fn new(c0: Rat, c1: Rat) -> Self {
        FieldElem { c0, c1 }
    }

    pub fn int(n: i128) -> Self {
        FieldElem::new(rat(n), Rat::zero())
    }

    pub fn from_rat(q: Rat) -> Self {
        FieldElem::new(q, Rat::zero())
    }

    pub fn ints(a: i128, b: i128) -> Self {
        FieldElem::new(rat(a), rat(b))
    }

    pub fn zero() -> Self {
        FieldElem::int(0)
    }

    pub fn one() -> Self {
        FieldElem::int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.c1.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.c0.is_one() && self.c1.is_zero()
    }

    /// Both coordinates are rational integers, i.e. the element lies in `O`.
    pub fn is_integral(&self) -> bool {
        self.c0.is_integer() && self.c1.is_integer()
    }

    pub(crate) fn int_coords(&self) -> Option<(i128, i128)> {
        self.is_integral()
            .then(|| (self.c0.to_integer(), self.c1.to_integer()))
    }

    pub fn scale(&self, q: &Rat) -> Self {
        FieldElem::new(&self.c0 * q, &self.c1 * q)
    }

    /// Reduction of both coordinates into `[0, 1)`: the canonical
    /// representative of the class modulo `O`.
    pub fn frac(&self) -> Self {
        FieldElem::new(frac_part(&self.c0), frac_part(&self.c1))
    }
}

impl std::ops::Add for &FieldElem {
    type Output = FieldElem;
    fn add(self, o: &FieldElem) -> FieldElem {
        FieldElem::new(&self.c0 + &o.c0, &self.c1 + &o.c1)
    }
}

impl std::ops::Sub for &FieldElem {
    type Output = FieldElem;
    fn sub(self, o: &FieldElem) -> FieldElem {
        FieldElem::new(&self.c0 - &o.c0, &self.c1 - &o.c1)
    }
}

impl std::ops::Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        FieldElem::new(-&self.c0, -&self.c1)
    }
}

fn fmt_rat(q: &Rat) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for FieldElem {
    /// Text syntax `"p/q + r/s*w"`, accepted back by the parser.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c1.is_zero() {
            return write!(f, "{}", fmt_rat(&self.c0));
        }
        let w_part = |q: &Rat| {
            if q.is_one() {
                "w".to_string()
            } else {
                format!("{}*w", fmt_rat(q))
            }
        };
        if self.c0.is_zero() {
            if self.c1.is_negative() {
                return write!(f, "-{}", w_part(&-&self.c1));
            }
            return write!(f, "{}", w_part(&self.c1));
        }
        let sign = if self.c1.is_negative() { '-' } else { '+' };
        write!(
            f,
            "{} {} {}",
            fmt_rat(&self.c0),
            sign,
            w_part(&self.c1.abs())
        )
    }
}

/// Hermite basis `{(h1, 0), (b, h2)}` of a full-rank sublattice of `Z^2`
/// (coordinates over `(1, w)`), with `0 <= b < h1`. For `Q` the second
/// coordinate is trivial and `h2 = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeHnf {
    pub h1: i128,
    pub b: i128,
    pub h2: i128,
}

impl LatticeHnf {
    fn from_generators(gens: &[(i128, i128)], rational: bool) -> Self {
        let (mut h1, mut b, mut h2) = (0i128, 0i128, 0i128);
        for &(v0, v1) in gens {
            if v1 == 0 {
                h1 = arith::gcd(h1, v0);
            } else if h2 == 0 {
                let s = v1.signum();
                b = s * v0;
                h2 = s * v1;
            } else {
                let (g, s, t) = arith::ext_gcd(h2, v1);
                let e = (h2 / g) * v0 - (v1 / g) * b;
                b = s * b + t * v0;
                h2 = g;
                h1 = arith::gcd(h1, e);
            }
            if h1 != 0 {
                b = b.rem_euclid(h1);
            }
        }
        if rational {
            h2 = 1;
            b = 0;
        }
        LatticeHnf { h1, b, h2 }
    }

    pub fn index(&self) -> i128 {
        self.h1 * self.h2
    }

    pub fn contains(&self, x: (i128, i128)) -> bool {
        if x.1 % self.h2 != 0 {
            return false;
        }
        let k = x.1 / self.h2;
        (x.0 - k * self.b) % self.h1 == 0
    }
}

/// Principal integral ideal, stored through its canonical generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrincipalIdeal {
    pub gen: FieldElem,
    pub norm: u64,
}

impl Ord for PrincipalIdeal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.norm
            .cmp(&other.norm)
            .then_with(|| self.gen.cmp(&other.gen))
    }
}

impl PartialOrd for PrincipalIdeal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PrincipalIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.gen)
    }
}

/// `a = unit * prod(p_i ^ e_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FieldElem,
    pub primes: Vec<(PrincipalIdeal, u32)>,
}

/// How a rational prime decomposes in the ring of integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Splitting {
    Split,
    Inert,
    Ramified,
}

#[derive(Clone, Debug)]
pub struct FieldCtx {
    tag: u32,
    omega_trace: i128,
    omega_norm: i128,
    disc: i128,
    units: Vec<FieldElem>,
    different: FieldElem,
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.tag == other.tag
    }
}

impl Eq for FieldCtx {}

impl FieldCtx {
    /// Builds the context for `Q` (`d = 0`) or `Q(sqrt(-d))`.
    pub fn new(d: i64) -> Result<Self> {
        if d < 0 || !SUPPORTED_FIELDS.contains(&(d as u32)) {
            return Err(HeckeError::UnsupportedField(d));
        }
        let tag = d as u32;
        let (omega_trace, omega_norm, disc) = match tag {
            0 => (0, 0, 1),
            1 | 2 => (0, d as i128, -4 * d as i128),
            _ => (1, (1 + d as i128) / 4, -(d as i128)),
        };
        let mut ctx = FieldCtx {
            tag,
            omega_trace,
            omega_norm,
            disc,
            units: Vec::new(),
            different: FieldElem::one(),
        };
        // units are exactly the integral elements of norm 1
        let mut units = ctx.elements_of_norm(1);
        units.sort_by(|x, y| ctx.associate_order(y, x));
        ctx.units = units;
        ctx.different = if ctx.is_rational() {
            FieldElem::one()
        } else {
            // (2w - t)^2 = t^2 - 4n = disc
            FieldElem::ints(-omega_trace, 2)
        };
        Ok(ctx)
    }

    pub fn tag(&self) -> u32 {
        self.tag
    }

    /// `"Q"` or `"d<k>"`, the spelling used by the command line.
    pub fn name(&self) -> String {
        if self.is_rational() {
            "Q".to_string()
        } else {
            format!("d{}", self.tag)
        }
    }

    pub fn is_rational(&self) -> bool {
        self.tag == 0
    }

    pub fn degree(&self) -> u32 {
        if self.is_rational() {
            1
        } else {
            2
        }
    }

    pub fn discriminant(&self) -> i128 {
        self.disc
    }

    /// `(Tr(w), N(w))`, so that `w^2 = t*w - n`.
    pub fn omega_poly(&self) -> (i128, i128) {
        (self.omega_trace, self.omega_norm)
    }

    pub fn units(&self) -> &[FieldElem] {
        &self.units
    }

    pub fn unit_count(&self) -> usize {
        self.units.len()
    }

    /// Generator of the different ideal: `sqrt(disc)` (`1` for `Q`).
    pub fn different(&self) -> &FieldElem {
        &self.different
    }

    pub fn omega(&self) -> FieldElem {
        FieldElem::ints(0, 1)
    }

    pub fn mul(&self, x: &FieldElem, y: &FieldElem) -> FieldElem {
        let (t, n) = (rat(self.omega_trace), rat(self.omega_norm));
        let bd = &x.c1 * &y.c1;
        FieldElem::new(
            &x.c0 * &y.c0 - &n * &bd,
            &x.c0 * &y.c1 + &x.c1 * &y.c0 + &t * &bd,
        )
    }

    pub fn conj(&self, x: &FieldElem) -> FieldElem {
        if self.is_rational() {
            return x.clone();
        }
        FieldElem::new(&x.c0 + &x.c1 * rat(self.omega_trace), -&x.c1)
    }

    /// `N_{K/Q}(x)`. For the imaginary quadratic fields this is `x * conj(x)`
    /// and is nonnegative; for `Q` it is `x` itself.
    pub fn field_norm(&self, x: &FieldElem) -> Rat {
        if self.is_rational() {
            return x.c0.clone();
        }
        &x.c0 * &x.c0 + &x.c0 * &x.c1 * rat(self.omega_trace) + &x.c1 * &x.c1 * rat(self.omega_norm)
    }

    /// Absolute norm `|N_{K/Q}(x)|`; equals `|O/xO|` for integral `x`.
    pub fn norm(&self, x: &FieldElem) -> Rat {
        self.field_norm(x).abs()
    }

    /// Absolute norm of a nonzero integral element as an integer.
    pub fn int_norm(&self, x: &FieldElem) -> u64 {
        let n = self.norm(x);
        assert!(n.is_integer(), "int_norm of non-integral element {x}");
        n.to_integer() as u64
    }

    pub fn trace(&self, x: &FieldElem) -> Rat {
        if self.is_rational() {
            return x.c0.clone();
        }
        &x.c0 * rat(2) + &x.c1 * rat(self.omega_trace)
    }

    pub fn inv(&self, x: &FieldElem) -> Result<FieldElem> {
        if x.is_zero() {
            return Err(HeckeError::Zero("divisor"));
        }
        if self.is_rational() {
            return Ok(FieldElem::from_rat(x.c0.recip()));
        }
        let n = self.field_norm(x);
        Ok(self.conj(x).scale(&n.recip()))
    }

    pub fn div(&self, x: &FieldElem, y: &FieldElem) -> Result<FieldElem> {
        Ok(self.mul(x, &self.inv(y)?))
    }

    pub fn pow(&self, x: &FieldElem, e: u32) -> FieldElem {
        let mut acc = FieldElem::one();
        for _ in 0..e {
            acc = self.mul(&acc, x);
        }
        acc
    }

    pub fn is_unit(&self, x: &FieldElem) -> bool {
        self.units.contains(x)
    }

    /// `a | b` in `O` (for `a != 0`).
    pub fn divides(&self, a: &FieldElem, b: &FieldElem) -> bool {
        self.div(b, a).map(|q| q.is_integral()).unwrap_or(false)
    }

    /// Complex embedding fixed by `sqrt(-d) -> i*sqrt(d)`.
    pub fn to_complex(&self, x: &FieldElem) -> (f64, f64) {
        let c0 = rat_to_f64(&x.c0);
        let c1 = rat_to_f64(&x.c1);
        if self.is_rational() {
            return (c0, 0.0);
        }
        let s = (self.tag as f64).sqrt();
        if self.omega_trace == 0 {
            (c0, c1 * s)
        } else {
            (c0 + c1 / 2.0, c1 * s / 2.0)
        }
    }

    /// Total order used to pick canonical associates: larger `(c0, c1)` wins.
    fn associate_order(&self, x: &FieldElem, y: &FieldElem) -> Ordering {
        x.c0.cmp(&y.c0).then_with(|| x.c1.cmp(&y.c1))
    }

    /// The canonical member of `{u * x : u in O*}`, the associate with
    /// lexicographically largest coordinates.
    pub fn canonical_generator(&self, x: &FieldElem) -> Result<FieldElem> {
        if x.is_zero() {
            return Err(HeckeError::Zero("generator"));
        }
        Ok(self
            .units
            .iter()
            .map(|u| self.mul(u, x))
            .max_by(|p, q| self.associate_order(p, q))
            .expect("unit group is nonempty"))
    }

    /// The principal ideal `xO` of a nonzero integral element.
    pub fn ideal(&self, x: &FieldElem) -> Result<PrincipalIdeal> {
        if !x.is_integral() {
            return Err(HeckeError::NotIntegral(x.to_string()));
        }
        let gen = self.canonical_generator(x)?;
        let norm = self.int_norm(&gen);
        Ok(PrincipalIdeal { gen, norm })
    }

    /// Images of the basis under multiplication by an integral element.
    fn mul_images(&self, a: (i128, i128)) -> Vec<(i128, i128)> {
        if self.is_rational() {
            return vec![(a.0, 0)];
        }
        vec![a, (-self.omega_norm * a.1, a.0 + self.omega_trace * a.1)]
    }

    /// Hermite basis of the ideal generated by the given integral elements.
    pub fn ideal_lattice(&self, gens: &[FieldElem]) -> Result<LatticeHnf> {
        let mut vecs = Vec::new();
        for g in gens {
            let c = g
                .int_coords()
                .ok_or_else(|| HeckeError::NotIntegral(g.to_string()))?;
            vecs.extend(self.mul_images(c));
        }
        let h = LatticeHnf::from_generators(&vecs, self.is_rational());
        if h.h1 == 0 || h.h2 == 0 {
            return Err(HeckeError::Zero("ideal generator"));
        }
        Ok(h)
    }

    /// Canonical representative of `x` modulo `m*O`: `m * frac(x/m)`.
    pub fn reduce_mod(&self, x: &FieldElem, m: &FieldElem) -> Result<FieldElem> {
        let q = self.div(x, m)?;
        Ok(self.mul(m, &q.frac()))
    }

    /// A transversal of `O/aO`, each member in canonical reduced form.
    pub fn residues(&self, a: &FieldElem) -> Result<Vec<FieldElem>> {
        if a.is_zero() {
            return Err(HeckeError::Zero("modulus"));
        }
        let h = self.ideal_lattice(std::slice::from_ref(a))?;
        let mut out = Vec::with_capacity(h.index() as usize);
        for y in 0..h.h2 {
            for x in 0..h.h1 {
                out.push(self.reduce_mod(&FieldElem::ints(x, y), a)?);
            }
        }
        Ok(out)
    }

    /// All integral elements of absolute norm exactly `n`.
    pub fn elements_of_norm(&self, n: u64) -> Vec<FieldElem> {
        let n = n as i128;
        if self.is_rational() {
            return if n == 0 {
                vec![FieldElem::zero()]
            } else {
                vec![FieldElem::int(n), FieldElem::int(-n)]
            };
        }
        // 4N(x + yw) = (2x + ty)^2 + |disc| y^2
        let abs_disc = -self.disc;
        let t = self.omega_trace;
        let y_max = isqrt(4 * n / abs_disc);
        let mut out = Vec::new();
        for y in -y_max..=y_max {
            let rem = 4 * n - abs_disc * y * y;
            if rem < 0 {
                continue;
            }
            let s = isqrt(rem);
            if s * s != rem {
                continue;
            }
            let roots: &[i128] = if s == 0 { &[0] } else { &[s, -s] };
            for &r in roots {
                let two_x = r - t * y;
                if two_x % 2 == 0 {
                    out.push(FieldElem::ints(two_x / 2, y));
                }
            }
        }
        out.sort();
        out
    }

    /// Canonical generator of `aO + bO`, found as an element of the lattice
    /// `aO + bO` whose norm equals the lattice index.
    pub fn gcd_gen(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem> {
        let gens: Vec<FieldElem> = [a, b]
            .into_iter()
            .filter(|x| !x.is_zero())
            .cloned()
            .collect();
        if gens.is_empty() {
            return Err(HeckeError::Zero("gcd argument"));
        }
        let h = self.ideal_lattice(&gens)?;
        if self.is_rational() {
            return Ok(FieldElem::int(h.h1));
        }
        let idx = h.index() as u64;
        let g = self
            .elements_of_norm(idx)
            .into_iter()
            .find(|x| h.contains(x.int_coords().expect("integral")))
            .expect("class number one: every ideal is principal");
        self.canonical_generator(&g)
    }

    /// Canonical generator of `aO ∩ bO` for nonzero integral `a`, `b`.
    pub fn lcm_gen(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem> {
        let g = self.gcd_gen(a, b)?;
        let l = self.div(&self.mul(a, b), &g)?;
        self.canonical_generator(&l)
    }

    pub fn coprime(&self, a: &FieldElem, b: &FieldElem) -> Result<bool> {
        Ok(self.gcd_gen(a, b)?.is_one())
    }

    /// How the rational prime `p` decomposes, from the Kronecker symbol.
    pub fn splitting(&self, p: u64) -> Splitting {
        if self.is_rational() {
            return Splitting::Split;
        }
        match kronecker(self.disc, p) {
            1 => Splitting::Split,
            -1 => Splitting::Inert,
            _ => Splitting::Ramified,
        }
    }

    /// Canonical generators of the prime ideals above the rational prime `p`.
    pub fn primes_above(&self, p: u64) -> Vec<PrincipalIdeal> {
        let mk = |g: FieldElem| self.ideal(&g).expect("prime generator is integral");
        if self.is_rational() {
            return vec![mk(FieldElem::int(p as i128))];
        }
        match self.splitting(p) {
            Splitting::Inert => vec![mk(FieldElem::int(p as i128))],
            Splitting::Ramified => {
                let pi = self
                    .elements_of_norm(p)
                    .into_iter()
                    .next()
                    .expect("ramified prime");
                vec![mk(pi)]
            }
            Splitting::Split => {
                let pi = self
                    .elements_of_norm(p)
                    .into_iter()
                    .next()
                    .expect("split prime");
                let mut v = vec![mk(self.conj(&pi)), mk(pi)];
                v.sort();
                v.dedup();
                v
            }
        }
    }

    /// Prime factorization of a nonzero integral element.
    pub fn factor(&self, a: &FieldElem) -> Result<Factorization> {
        if a.is_zero() {
            return Err(HeckeError::Zero("factored element"));
        }
        if !a.is_integral() {
            return Err(HeckeError::NotIntegral(a.to_string()));
        }
        let mut rest = a.clone();
        let mut primes = Vec::new();
        for (p, _) in factor_integer(self.int_norm(a)) {
            for ideal in self.primes_above(p) {
                let mut e = 0;
                while let Ok(q) = self.div(&rest, &ideal.gen) {
                    if !q.is_integral() {
                        break;
                    }
                    rest = q;
                    e += 1;
                }
                if e > 0 {
                    primes.push((ideal, e));
                }
            }
        }
        debug_assert!(self.is_unit(&rest), "leftover {rest} is not a unit");
        primes.sort();
        Ok(Factorization { unit: rest, primes })
    }
}

pub fn rat_to_f64(q: &Rat) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}

/// A nonnegative rational as a `u64` when it is an integer.

#[allow(dead_code)]
pub(crate) fn lcm_u64(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(d: i64) -> FieldCtx {
        FieldCtx::new(d).unwrap()
    }

    #[test]
    fn rejects_unsupported_fields() {
        for d in [-1, 5, 6, 10, 15, 23] {
            assert_eq!(FieldCtx::new(d), Err(HeckeError::UnsupportedField(d)));
        }
    }

    #[test]
    fn unit_groups() {
        assert_eq!(ctx(0).units(), &[FieldElem::int(1), FieldElem::int(-1)]);
        let g = ctx(1);
        assert_eq!(g.unit_count(), 4);
        for u in [
            FieldElem::ints(1, 0),
            FieldElem::ints(-1, 0),
            FieldElem::ints(0, 1),
            FieldElem::ints(0, -1),
        ] {
            assert!(g.is_unit(&u));
        }
        assert_eq!(g.discriminant(), -4);
        assert_eq!(g.different(), &FieldElem::ints(0, 2));
        let e = ctx(3);
        assert_eq!(e.unit_count(), 6);
        assert_eq!(e.discriminant(), -3);
        for d in [2, 7, 11, 19, 43, 67, 163] {
            assert_eq!(ctx(d).unit_count(), 2, "d = {d}");
        }
    }

    #[test]
    fn unit_group_is_closed() {
        for &d in &SUPPORTED_FIELDS {
            let k = ctx(d as i64);
            for u in k.units() {
                assert_eq!(k.norm(u), rat(1));
                assert!(k.is_unit(&k.inv(u).unwrap()));
                assert!(k.is_unit(&-u));
                for v in k.units() {
                    assert!(k.is_unit(&k.mul(u, v)));
                }
            }
        }
    }

    #[test]
    fn different_squares_to_discriminant() {
        for &d in &SUPPORTED_FIELDS[1..] {
            let k = ctx(d as i64);
            let delta = k.different();
            assert_eq!(k.mul(delta, delta), FieldElem::int(k.discriminant()));
            assert_eq!(
                k.mul(delta, &k.conj(delta)),
                FieldElem::int(-k.discriminant())
            );
            let inv = k.inv(delta).unwrap();
            for basis in [FieldElem::one(), k.omega()] {
                assert!(k.trace(&k.mul(&basis, &inv)).is_integer());
            }
        }
    }

    #[test]
    fn norm_examples() {
        let g = ctx(1);
        assert_eq!(g.norm(&FieldElem::one()), rat(1));
        assert_eq!(g.norm(&FieldElem::ints(1, 1)), rat(2));
        assert_eq!(g.norm(&FieldElem::int(2)), rat(4));
        assert_eq!(g.residues(&FieldElem::int(2)).unwrap().len(), 4);
    }

    #[test]
    fn residue_examples() {
        let q = ctx(0);
        assert_eq!(
            q.residues(&FieldElem::one()).unwrap(),
            vec![FieldElem::zero()]
        );
        assert_eq!(
            q.residues(&FieldElem::int(2)).unwrap(),
            vec![FieldElem::int(0), FieldElem::int(1)]
        );
        let g = ctx(1);
        let res = g.residues(&FieldElem::ints(1, 1)).unwrap();
        assert_eq!(res.len(), 2);
        assert!(!g.divides(&FieldElem::ints(1, 1), &(&res[0] - &res[1])));
    }

    #[test]
    fn residues_are_transversals() {
        for d in [0, 1, 2, 3, 7] {
            let k = ctx(d);
            for n in 1..=40u64 {
                for a in k.elements_of_norm(n) {
                    let res = k.residues(&a).unwrap();
                    assert_eq!(res.len() as u64, n, "d={d} a={a}");
                    for i in 0..res.len() {
                        for j in 0..i {
                            assert!(!k.divides(&a, &(&res[i] - &res[j])));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn gcd_examples() {
        let g = ctx(1);
        let pi = FieldElem::ints(1, 1);
        assert_eq!(g.gcd_gen(&pi, &FieldElem::int(2)).unwrap(), pi);
        assert_eq!(
            g.gcd_gen(&FieldElem::ints(-1, 1), &FieldElem::zero())
                .unwrap(),
            pi
        );
        let q = ctx(0);
        assert_eq!(
            q.gcd_gen(&FieldElem::int(2), &FieldElem::int(3)).unwrap(),
            FieldElem::one()
        );
        assert_eq!(
            q.gcd_gen(&FieldElem::int(-6), &FieldElem::int(0)).unwrap(),
            FieldElem::int(6)
        );
    }

    #[test]
    fn gcd_is_greatest_common_divisor() {
        for d in [1, 2, 3, 19, 43] {
            let k = ctx(d);
            let small: Vec<FieldElem> = (1..=12).flat_map(|n| k.elements_of_norm(n)).collect();
            for a in small.iter().step_by(3) {
                for b in small.iter().step_by(2) {
                    let g = k.gcd_gen(a, b).unwrap();
                    assert!(k.divides(&g, a) && k.divides(&g, b));
                    for c in &small {
                        if k.divides(c, a) && k.divides(c, b) {
                            assert!(k.divides(c, &g), "d={d}: {c} | {a}, {b} but not {g}");
                        }
                    }
                    let h = k.ideal_lattice(&[a.clone(), b.clone()]).unwrap();
                    assert_eq!(k.int_norm(&g) as i128, h.index());
                }
            }
        }
    }

    #[test]
    fn factor_examples() {
        let g = ctx(1);
        let f = g.factor(&FieldElem::int(2)).unwrap();
        assert_eq!(f.primes.len(), 1);
        assert_eq!(f.primes[0].0.gen, FieldElem::ints(1, 1));
        assert_eq!(f.primes[0].1, 2);
        let f5 = g.factor(&FieldElem::int(5)).unwrap();
        let gens: Vec<_> = f5.primes.iter().map(|(p, e)| (p.gen.clone(), *e)).collect();
        assert!(gens.contains(&(FieldElem::ints(2, 1), 1)));
        assert!(gens.contains(&(FieldElem::ints(2, -1), 1)));
        assert!(g.factor(&FieldElem::one()).unwrap().primes.is_empty());
    }

    #[test]
    fn factor_reconstructs() {
        for &d in &SUPPORTED_FIELDS {
            let k = ctx(d as i64);
            for n in 1..=60u64 {
                for a in k.elements_of_norm(n) {
                    let f = k.factor(&a).unwrap();
                    let mut prod = f.unit.clone();
                    for (p, e) in &f.primes {
                        prod = k.mul(&prod, &k.pow(&p.gen, *e));
                    }
                    assert_eq!(prod, a, "d={d}");
                }
            }
        }
    }

    #[test]
    fn canonical_generator_examples() {
        let q = ctx(0);
        assert_eq!(
            q.canonical_generator(&FieldElem::int(-3)).unwrap(),
            FieldElem::int(3)
        );
        let g = ctx(1);
        let pi = FieldElem::ints(1, 1);
        let ipi = g.mul(&g.omega(), &pi);
        assert_eq!(
            g.canonical_generator(&ipi).unwrap(),
            g.canonical_generator(&pi).unwrap()
        );
        for &d in &SUPPORTED_FIELDS {
            let k = ctx(d as i64);
            for u in k.units() {
                assert!(k.canonical_generator(u).unwrap().is_one());
            }
        }
        assert!(g.canonical_generator(&FieldElem::zero()).is_err());
    }

    #[test]
    fn display_syntax() {
        assert_eq!(
            FieldElem::new(Rat::new(1, 2), Rat::new(-3, 4)).to_string(),
            "1/2 - 3/4*w"
        );
        assert_eq!(FieldElem::ints(0, 1).to_string(), "w");
        assert_eq!(FieldElem::ints(0, -1).to_string(), "-w");
        assert_eq!(FieldElem::ints(-2, 0).to_string(), "-2");
    }

    #[test]
    fn complex_embedding_is_multiplicative() {
        for &d in &SUPPORTED_FIELDS {
            let k = ctx(d as i64);
            let x = FieldElem::new(Rat::new(3, 2), Rat::new(-1, 3));
            let y = FieldElem::ints(2, 5);
            let (a, b) = k.to_complex(&x);
            let (c, e) = k.to_complex(&y);
            let (re, im) = k.to_complex(&k.mul(&x, &y));
            assert!((re - (a * c - b * e)).abs() < 1e-9);
            assert!((im - (a * e + b * c)).abs() < 1e-9);
        }
    }
}
