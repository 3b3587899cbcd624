//! Exact coefficient rings: Gaussian rationals and cyclotomic fields.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num::integer::Integer;
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

/// Arithmetic needed by the truncated series types.
///
/// Methods take references and return owned values so generic code never
/// needs reference-operator bounds.
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_rational(q: BigRational) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn scaled(&self, q: &BigRational) -> Self;
    fn inverse(&self) -> Option<Self>;
    /// Floating-point image under the standard complex embedding.
    fn to_complex(&self) -> (f64, f64);
    fn to_json(&self) -> Value;

    fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negated())
    }

    fn from_i64(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// The coefficient as a rational number, when it is one.
    fn as_rational(&self) -> Option<BigRational>;
}

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rational_string(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn rational_to_f64(q: &BigRational) -> f64 {
    q.numer().to_f64().unwrap_or(f64::NAN) / q.denom().to_f64().unwrap_or(f64::NAN)
}

/// Element `re + i*im` of Q(i).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn i() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// `i^k`.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Self::one(),
            1 => Self::i(),
            2 => Self::from_i64(-1),
            _ => Self::i().negated(),
        }
    }

    pub fn is_integral(&self) -> bool {
        self.re.is_integer() && self.im.is_integer()
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", rational_string(&self.re))
        } else if self.re.is_zero() {
            write!(f, "{}i", rational_string(&self.im))
        } else if self.im.is_negative() {
            write!(
                f,
                "{} - {}i",
                rational_string(&self.re),
                rational_string(&-self.im.clone())
            )
        } else {
            write!(
                f,
                "{} + {}i",
                rational_string(&self.re),
                rational_string(&self.im)
            )
        }
    }
}

impl Coeff for GaussianRational {
    fn zero() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }
    fn one() -> Self {
        Self::new(BigRational::one(), BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn from_rational(q: BigRational) -> Self {
        Self::new(q, BigRational::zero())
    }
    fn plus(&self, o: &Self) -> Self {
        Self::new(&self.re + &o.re, &self.im + &o.im)
    }
    fn minus(&self, o: &Self) -> Self {
        Self::new(&self.re - &o.re, &self.im - &o.im)
    }
    fn times(&self, o: &Self) -> Self {
        if self.im.is_zero() && o.im.is_zero() {
            return Self::from_rational(&self.re * &o.re);
        }
        Self::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
    fn negated(&self) -> Self {
        Self::new(-self.re.clone(), -self.im.clone())
    }
    fn scaled(&self, q: &BigRational) -> Self {
        Self::new(&self.re * q, &self.im * q)
    }
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = &self.re * &self.re + &self.im * &self.im;
        Some(Self::new(&self.re / &n, -(&self.im / &n)))
    }
    fn to_complex(&self) -> (f64, f64) {
        (rational_to_f64(&self.re), rational_to_f64(&self.im))
    }
    fn to_json(&self) -> Value {
        json!([rational_string(&self.re), rational_string(&self.im)])
    }
    fn as_rational(&self) -> Option<BigRational> {
        self.im.is_zero().then(|| self.re.clone())
    }
}

type PolyZ = Vec<i64>;

fn cyclotomic_cache() -> &'static Mutex<HashMap<u32, Arc<PolyZ>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<PolyZ>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients (constant term first) of the n-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(n: u32) -> Arc<PolyZ> {
    assert!(n >= 1);
    if let Some(p) = cyclotomic_cache().lock().expect("cache poisoned").get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by every proper divisor's cyclotomic polynomial
    let mut num: PolyZ = vec![0; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic_polynomial(d);
            num = exact_monic_div(&num, &phi_d);
        }
    }
    let arc = Arc::new(num);
    cyclotomic_cache()
        .lock()
        .expect("cache poisoned")
        .insert(n, arc.clone());
    arc
}

fn exact_monic_div(num: &[i64], den: &[i64]) -> PolyZ {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut q = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn];
        q[i] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    q
}

pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Element of the cyclotomic field Q(zeta_n), zeta_n = e^{2 pi i/n}, kept
/// reduced modulo the n-th cyclotomic polynomial.
///
/// The representation is canonical for a fixed `order`, so equality and
/// zero tests are structural after lifting both sides to a common order.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    order: u32,
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    fn from_raw(order: u32, mut coeffs: Vec<BigRational>) -> Self {
        let phi = cyclotomic_polynomial(order);
        reduce_mod(&mut coeffs, &phi);
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { order, coeffs }
    }

    pub fn rational(q: BigRational) -> Self {
        Self::from_raw(1, vec![q])
    }

    /// `zeta_n^k`.
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        assert!(n >= 1);
        let k = k.rem_euclid(n as i64) as usize;
        let mut v = vec![BigRational::zero(); k + 1];
        v[k] = BigRational::one();
        Self::from_raw(n, v)
    }

    /// `q * zeta_n^k`.
    pub fn monomial(q: BigRational, n: u32, k: i64) -> Self {
        Self::root_of_unity(n, k).scaled(&q)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Canonical coefficient vector in the power basis of Q(zeta_order).
    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Re-express in Q(zeta_m) for a multiple m of the current order.
    pub fn lift(&self, m: u32) -> Self {
        assert!(m % self.order == 0, "lift target must be a multiple");
        if m == self.order {
            return self.clone();
        }
        let step = (m / self.order) as usize;
        let mut v = vec![BigRational::zero(); self.coeffs.len().saturating_sub(1) * step + 1];
        for (j, c) in self.coeffs.iter().enumerate() {
            v[j * step] = c.clone();
        }
        Self::from_raw(m, v)
    }

    fn common(&self, other: &Self) -> (Self, Self) {
        if self.order == other.order {
            return (self.clone(), other.clone());
        }
        let m = self.order.lcm(&other.order);
        (self.lift(m), other.lift(m))
    }

    /// Smallest order whose field contains this element, found by trying
    /// divisors of the current order.
    pub fn minimal_order(&self) -> u32 {
        let n = self.order;
        let mut divisors: Vec<u32> = (1..=n).filter(|d| n % d == 0).collect();
        divisors.sort_unstable();
        for d in divisors {
            if d == n {
                return n;
            }
            if let Some(v) = self.descend(d) {
                if v.lift(n).coeffs == self.coeffs {
                    return d;
                }
            }
        }
        n
    }

    /// Attempt to write the element in Q(zeta_d) by reading off the
    /// coefficients at multiples of n/d.
    fn descend(&self, d: u32) -> Option<Self> {
        let step = (self.order / d) as usize;
        let mut v = Vec::new();
        for (j, c) in self.coeffs.iter().enumerate() {
            if j % step == 0 {
                v.push(c.clone());
            } else if !c.is_zero() {
                return None;
            }
        }
        Some(Self::from_raw(d, v))
    }

    /// Positive square root of a positive integer, built from quadratic
    /// Gauss sums.
    pub fn sqrt_integer(n: u64) -> Self {
        assert!(n > 0);
        let mut square = 1u64;
        let mut free = 1u64;
        let mut m = n;
        let mut p = 2u64;
        while p * p <= m {
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            square *= p.pow(e / 2);
            if e % 2 == 1 {
                free *= p;
            }
            p += 1;
        }
        if m > 1 {
            free *= m;
        }
        let mut acc = Self::rational(BigRational::from_integer(BigInt::from(square)));
        let mut f = free;
        let mut p = 2u64;
        while f > 1 {
            if f % p == 0 {
                f /= p;
                acc = acc.times(&Self::sqrt_prime(p));
            }
            p += 1;
        }
        acc
    }

    fn sqrt_prime(p: u64) -> Self {
        if p == 2 {
            return Self::root_of_unity(8, 1).plus(&Self::root_of_unity(8, 7));
        }
        let n = p as u32;
        let mut g = Self::zero();
        for a in 1..p {
            let leg = crate::expsums::kronecker(a as i64, p as i64);
            let term = Self::root_of_unity(n, a as i64).scaled(&rational(leg as i64, 1));
            g = g.plus(&term);
        }
        if p % 4 == 1 {
            g
        } else {
            // the Gauss sum is i*sqrt(p)
            g.times(&Self::root_of_unity(4, 3))
        }
    }
}

fn reduce_mod(v: &mut Vec<BigRational>, phi: &[i64]) {
    let deg = phi.len() - 1;
    if v.len() <= deg {
        return;
    }
    for i in (deg..v.len()).rev() {
        if v[i].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut v[i], BigRational::zero());
        for (j, &pj) in phi.iter().enumerate().take(deg) {
            if pj != 0 {
                let t = &c * BigRational::from_integer(BigInt::from(pj));
                v[i - deg + j] -= t;
            }
        }
    }
    v.truncate(deg);
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.common(other);
        a.coeffs == b.coeffs
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            return write!(f, "{}", rational_string(&q));
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match j {
                0 => write!(f, "{}", rational_string(c))?,
                _ => write!(f, "({})*z{}^{}", rational_string(c), self.order, j)?,
            }
        }
        Ok(())
    }
}

fn poly_trim(v: &mut Vec<BigRational>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

/// Remainder and quotient of polynomial division over Q.
fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if r.len() <= db {
        return (vec![], r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    for i in (0..q.len()).rev() {
        let c = &r[i + db] / &lead;
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                let t = &c * bj;
                r[i + j] -= t;
            }
        }
        q[i] = c;
    }
    poly_trim(&mut r);
    (q, r)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    poly_trim(&mut out);
    out
}

impl Coeff for Cyclotomic {
    fn zero() -> Self {
        Self {
            order: 1,
            coeffs: vec![],
        }
    }
    fn one() -> Self {
        Self::rational(BigRational::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn from_rational(q: BigRational) -> Self {
        Self::rational(q)
    }
    fn plus(&self, other: &Self) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        let (a, b) = self.common(other);
        let n = a.coeffs.len().max(b.coeffs.len());
        let mut v = vec![BigRational::zero(); n];
        for (i, x) in a.coeffs.iter().enumerate() {
            v[i] += x;
        }
        for (i, y) in b.coeffs.iter().enumerate() {
            v[i] += y;
        }
        Self::from_raw(a.order, v)
    }
    fn times(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let (a, b) = self.common(other);
        Self::from_raw(a.order, poly_mul(&a.coeffs, &b.coeffs))
    }
    fn negated(&self) -> Self {
        Self {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
    fn scaled(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Self {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // extended Euclid against the defining polynomial
        let phi: Vec<BigRational> = cyclotomic_polynomial(self.order)
            .iter()
            .map(|&c| BigRational::from_integer(BigInt::from(c)))
            .collect();
        let (mut r0, mut r1) = (phi, self.coeffs.clone());
        let (mut t0, mut t1): (Vec<BigRational>, Vec<BigRational>) =
            (vec![], vec![BigRational::one()]);
        while !r1.is_empty() {
            let (q, r) = poly_divmod(&r0, &r1);
            let t = poly_sub(&t0, &poly_mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            t0 = std::mem::replace(&mut t1, t);
        }
        // r0 is a nonzero constant since phi is irreducible
        let c = r0[0].clone();
        let v: Vec<BigRational> = t0.iter().map(|x| x / &c).collect();
        Some(Self::from_raw(self.order, v))
    }
    fn to_complex(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, c) in self.coeffs.iter().enumerate() {
            let x = rational_to_f64(c);
            let ang = 2.0 * std::f64::consts::PI * j as f64 / self.order as f64;
            re += x * ang.cos();
            im += x * ang.sin();
        }
        (re, im)
    }
    fn to_json(&self) -> Value {
        json!({
            "order": self.order,
            "basis": self.coeffs.iter().map(rational_string).collect::<Vec<_>>(),
        })
    }
    fn as_rational(&self) -> Option<BigRational> {
        match self.coeffs.len() {
            0 => Some(BigRational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(24).len() - 1, 8);
        assert_eq!(cyclotomic_polynomial(144).len() - 1, 48);
    }

    #[test]
    fn roots_of_unity_multiply() {
        let z = Cyclotomic::root_of_unity(12, 5);
        let w = Cyclotomic::root_of_unity(8, 3);
        let p = z.times(&w);
        assert_eq!(p, Cyclotomic::root_of_unity(24, 10 + 9));
        let full = Cyclotomic::root_of_unity(24, 1);
        let mut acc = Cyclotomic::one();
        for _ in 0..24 {
            acc = acc.times(&full);
        }
        assert_eq!(acc, Cyclotomic::one());
    }

    #[test]
    fn sum_of_all_roots_vanishes() {
        for n in [2u32, 3, 6, 12, 46] {
            let mut s = Cyclotomic::zero();
            for k in 0..n {
                s = s.plus(&Cyclotomic::root_of_unity(n, k as i64));
            }
            assert!(s.is_zero(), "n = {n}");
        }
    }

    #[test]
    fn square_roots_square() {
        for n in [2u64, 3, 5, 6, 7, 12, 23, 46, 50] {
            let s = Cyclotomic::sqrt_integer(n);
            let sq = s.times(&s);
            assert_eq!(sq.as_rational(), Some(rational(n as i64, 1)), "n = {n}");
            let (re, im) = s.to_complex();
            assert!((re - (n as f64).sqrt()).abs() < 1e-9 && im.abs() < 1e-9);
        }
    }

    #[test]
    fn inverse_round_trip() {
        let x = Cyclotomic::root_of_unity(9, 2)
            .plus(&Cyclotomic::rational(rational(3, 2)))
            .plus(&Cyclotomic::root_of_unity(9, 7).scaled(&rational(-5, 3)));
        let y = x.inverse().expect("nonzero");
        assert_eq!(x.times(&y), Cyclotomic::one());
    }

    #[test]
    fn lift_and_descend() {
        let x = Cyclotomic::root_of_unity(6, 1);
        assert_eq!(x.lift(24).minimal_order(), 6);
        let i = Cyclotomic::root_of_unity(4, 1);
        assert_eq!(i.times(&i).as_rational(), Some(rational(-1, 1)));
    }

    #[test]
    fn gaussian_inverse() {
        let z = GaussianRational::new(rational(3, 1), rational(-4, 1));
        let w = z.inverse().expect("nonzero");
        assert_eq!(z.times(&w), GaussianRational::one());
        assert_eq!(w, GaussianRational::new(rational(3, 25), rational(4, 25)));
    }
}
