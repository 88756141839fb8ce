//! Exact arithmetic in cyclotomic fields `Q(zeta_m)`.
//!
//! An element is a rational combination of `zeta_m^j`, `0 <= j < phi(m)`,
//! reduced modulo the `m`-th cyclotomic polynomial. Elements of different
//! moduli are compared and combined after lifting to the lcm of the moduli.

use std::collections::HashMap;
use std::f64::consts::TAU;
use std::sync::{Mutex, OnceLock};

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::factor_integer;
use crate::numberfield::{rat_to_f64, Rat};

#[derive(Clone, Debug)]
pub struct CycloNum {
    modulus: u64,
    coeffs: Vec<Rat>,
}

fn poly_mul(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division of integer polynomials by a monic divisor.
fn poly_div_exact(num: &[i128], den: &[i128]) -> Vec<i128> {
    let mut rem = num.to_vec();
    let dl = den.len();
    let mut q = vec![0i128; num.len() + 1 - dl];
    for i in (0..q.len()).rev() {
        let c = rem[i + dl - 1];
        q[i] = c;
        for (j, d) in den.iter().enumerate() {
            rem[i + j] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    q
}

fn compute_cyclotomic(m: u64) -> Vec<i128> {
    // x^m - 1 = prod_{d | m} Phi_d
    let mut num = vec![0i128; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    let mut den = vec![1i128];
    for d in 1..m {
        if m % d == 0 {
            den = poly_mul(&den, &cyclotomic_poly(d));
        }
    }
    poly_div_exact(&num, &den)
}

/// Coefficients of `Phi_m`, lowest degree first.
pub fn cyclotomic_poly(m: u64) -> Vec<i128> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Vec<i128>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().expect("cache lock").get(&m) {
        return p.clone();
    }
    let p = compute_cyclotomic(m);
    cache.lock().expect("cache lock").insert(m, p.clone());
    p
}

fn phi(m: u64) -> usize {
    factor_integer(m)
        .into_iter()
        .map(|(p, e)| ((p - 1) * p.pow(e - 1)) as usize)
        .product()
}

impl CycloNum {
    /// Reduces an arbitrary polynomial in `zeta_m` (coefficient `j` on
    /// `zeta_m^j`, any length).
    pub fn from_poly(modulus: u64, mut poly: Vec<Rat>) -> Self {
        assert!(modulus >= 1, "cyclotomic modulus must be positive");
        let cp = cyclotomic_poly(modulus);
        let deg = cp.len() - 1;
        // x^m = 1 first, then reduce by the monic Phi_m
        if poly.len() > modulus as usize {
            let mut folded = vec![Rat::zero(); modulus as usize];
            for (j, c) in poly.into_iter().enumerate() {
                folded[j % modulus as usize] += c;
            }
            poly = folded;
        }
        for i in (deg..poly.len()).rev() {
            let c = poly[i].clone();
            if c.is_zero() {
                continue;
            }
            for (j, p) in cp.iter().enumerate() {
                poly[i - deg + j] -= &c * Rat::from_integer(*p);
            }
        }
        poly.truncate(deg);
        poly.resize(deg, Rat::zero());
        CycloNum {
            modulus,
            coeffs: poly,
        }
    }

    pub fn from_rat(q: Rat) -> Self {
        CycloNum {
            modulus: 1,
            coeffs: vec![q],
        }
    }

    pub fn zero() -> Self {
        Self::from_rat(Rat::zero())
    }

    pub fn one() -> Self {
        Self::from_rat(Rat::one())
    }

    /// `zeta_m^k`.
    pub fn root(modulus: u64, k: i64) -> Self {
        let e = k.rem_euclid(modulus as i64) as usize;
        let mut poly = vec![Rat::zero(); e + 1];
        poly[e] = Rat::one();
        Self::from_poly(modulus, poly)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Coordinates on `zeta_m^j`, `0 <= j < phi(m)`.
    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// The same number written over `zeta_M`, `m | M`.
    pub fn lift(&self, big: u64) -> CycloNum {
        assert!(big % self.modulus == 0, "lift target must be a multiple");
        if big == self.modulus {
            return self.clone();
        }
        let step = (big / self.modulus) as usize;
        let mut poly = vec![Rat::zero(); step * self.coeffs.len().max(1)];
        for (j, c) in self.coeffs.iter().enumerate() {
            poly[j * step] = c.clone();
        }
        Self::from_poly(big, poly)
    }

    fn align(&self, other: &CycloNum) -> (CycloNum, CycloNum) {
        let m = self.modulus.lcm(&other.modulus);
        (self.lift(m), other.lift(m))
    }

    pub fn add(&self, other: &CycloNum) -> CycloNum {
        let (a, b) = self.align(other);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        CycloNum {
            modulus: a.modulus,
            coeffs,
        }
    }

    pub fn neg(&self) -> CycloNum {
        self.scale(&-Rat::one())
    }

    pub fn sub(&self, other: &CycloNum) -> CycloNum {
        self.add(&other.neg())
    }

    pub fn scale(&self, q: &Rat) -> CycloNum {
        CycloNum {
            modulus: self.modulus,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    pub fn mul(&self, other: &CycloNum) -> CycloNum {
        let (a, b) = self.align(other);
        let mut poly = vec![Rat::zero(); a.coeffs.len() + b.coeffs.len()];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                poly[i + j] += x * y;
            }
        }
        Self::from_poly(a.modulus, poly)
    }

    /// The automorphism `zeta_m -> zeta_m^k` for `gcd(k, m) = 1`.
    pub fn galois(&self, k: i64) -> CycloNum {
        let m = self.modulus as i64;
        assert!(
            k.gcd(&m) == 1,
            "galois exponent must be prime to the modulus"
        );
        let k = k.rem_euclid(m) as usize;
        let mut poly = vec![Rat::zero(); self.modulus as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            poly[(j * k) % self.modulus as usize] += c;
        }
        Self::from_poly(self.modulus, poly)
    }

    /// Complex conjugation, `zeta -> zeta^{-1}`.
    pub fn conj(&self) -> CycloNum {
        self.galois(-1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// `Some(q)` when the value is rational.
    pub fn as_rational(&self) -> Option<Rat> {
        if self.coeffs.iter().skip(1).all(Zero::is_zero) {
            Some(self.coeffs.first().cloned().unwrap_or_else(Rat::zero))
        } else {
            None
        }
    }

    /// Complex value under `zeta_m -> exp(2 pi i / m)`.
    pub fn to_complex(&self) -> (f64, f64) {
        let m = self.modulus as f64;
        self.coeffs
            .iter()
            .enumerate()
            .fold((0.0, 0.0), |(re, im), (j, c)| {
                let a = TAU * j as f64 / m;
                let q = rat_to_f64(c);
                (re + q * a.cos(), im + q * a.sin())
            })
    }

    /// Degree `phi(m)` of the ambient field.
    pub fn field_degree(&self) -> usize {
        phi(self.modulus)
    }

    pub fn display(&self) -> String {
        let mut out = String::new();
        for (j, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let mag = if c < &Rat::zero() { -c } else { c.clone() };
            let body = match j {
                0 => mag.to_string(),
                _ if mag.is_one() && j == 1 => format!("z{}", self.modulus),
                _ if mag.is_one() => format!("z{}^{j}", self.modulus),
                1 => format!("{mag}*z{}", self.modulus),
                _ => format!("{mag}*z{}^{j}", self.modulus),
            };
            let neg = c < &Rat::zero();
            if out.is_empty() {
                out = if neg { format!("-{body}") } else { body };
            } else {
                out.push_str(if neg { " - " } else { " + " });
                out.push_str(&body);
            }
        }
        if out.is_empty() {
            "0".to_string()
        } else {
            out
        }
    }
}

impl PartialEq for CycloNum {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.align(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycloNum {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_poly(5), vec![1, 1, 1, 1, 1]);
        assert_eq!(cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
        for m in 1..60 {
            assert_eq!(cyclotomic_poly(m).len() - 1, phi(m));
        }
    }

    #[test]
    fn roots_multiply() {
        for m in [1u64, 2, 3, 4, 5, 8, 12, 20] {
            for a in 0..m as i64 {
                for b in 0..m as i64 {
                    assert_eq!(
                        CycloNum::root(m, a).mul(&CycloNum::root(m, b)),
                        CycloNum::root(m, a + b)
                    );
                }
            }
            let sum = (0..m as i64).fold(CycloNum::zero(), |s, k| s.add(&CycloNum::root(m, k)));
            let want = if m == 1 {
                CycloNum::one()
            } else {
                CycloNum::zero()
            };
            assert_eq!(sum, want);
        }
    }

    #[test]
    fn lifting_preserves_value() {
        let x = CycloNum::root(5, 2).add(&CycloNum::from_rat(Rat::new(1, 3)));
        let y = x.lift(20);
        assert_eq!(x, y);
        let (a, b) = (x.to_complex(), y.to_complex());
        assert!((a.0 - b.0).abs() < 1e-12 && (a.1 - b.1).abs() < 1e-12);
        assert_eq!(CycloNum::root(4, 1), CycloNum::root(20, 5));
        assert_eq!(
            CycloNum::root(2, 1),
            CycloNum::from_rat(Rat::from_integer(-1))
        );
    }

    #[test]
    fn galois_action() {
        let z5 = CycloNum::root(5, 1);
        assert_eq!(z5.galois(3), CycloNum::root(5, 3));
        assert_eq!(z5.galois(9), CycloNum::root(5, 4));
        let s = z5.add(&z5.conj());
        assert_eq!(s.galois(4), s);
        assert_ne!(s.galois(2), s);
    }

    #[test]
    fn display_form() {
        let x = CycloNum::from_rat(Rat::new(1, 2))
            .add(&CycloNum::root(20, 4).scale(&Rat::new(1, 4)))
            .sub(&CycloNum::root(20, 6).scale(&Rat::new(1, 4)));
        assert_eq!(x.display(), "1/2 + 1/4*z20^4 - 1/4*z20^6");
        assert_eq!(CycloNum::root(5, 1).neg().display(), "-z5");
        assert_eq!(CycloNum::zero().display(), "0");
    }

    #[test]
    fn numeric_embedding() {
        let x = CycloNum::root(7, 3)
            .mul(&CycloNum::root(3, 1))
            .scale(&Rat::new(5, 2));
        let (re, im) = x.to_complex();
        let a = TAU * (3.0 / 7.0 + 1.0 / 3.0);
        assert!((re - 2.5 * a.cos()).abs() < 1e-12);
        assert!((im - 2.5 * a.sin()).abs() < 1e-12);
    }
}
