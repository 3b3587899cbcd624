//! Double-double floating point and complex values built on top of it.
//!
//! A [`DoubleDouble`] stores an unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`,
//! giving roughly 106 significant bits. Roots of unity are evaluated from an
//! exact rational angle, so `cis_turns(k, n)` never sees a rounded multiple of pi.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Working precision of [`DoubleDouble`] in significant bits.
pub const WORKING_BITS: u32 = 106;

/// Name of the environment variable that sets the requested precision.
pub const PRECISION_ENV: &str = "MOONSHINE_PRECISION_BITS";

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

/// A real number carried as the unevaluated sum of two doubles.
#[derive(Clone, Copy, Debug, Default, PartialEq, PartialOrd)]
pub struct DoubleDouble {
    hi: f64,
    lo: f64,
}

impl DoubleDouble {
    pub const ZERO: Self = Self { hi: 0.0, lo: 0.0 };
    pub const ONE: Self = Self { hi: 1.0, lo: 0.0 };
    pub const PI: Self = Self {
        hi: 3.141_592_653_589_793_116e0,
        lo: 1.224_646_799_147_353_207e-16,
    };
    pub const FRAC_PI_2: Self = Self {
        hi: 1.570_796_326_794_896_558e0,
        lo: 6.123_233_995_736_766_036e-17,
    };

    pub fn new(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }

    /// Exact conversion for integers below 2^106 in magnitude.
    pub fn from_i128(n: i128) -> Self {
        let hi = n as f64;
        let rest = n - hi as i128;
        let (hi, lo) = quick_two_sum(hi, rest as f64);
        Self { hi, lo }
    }

    pub fn from_ratio(num: i128, den: i128) -> Self {
        Self::from_i128(num) / Self::from_i128(den)
    }

    pub fn hi(self) -> f64 {
        self.hi
    }

    pub fn lo(self) -> f64 {
        self.lo
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }

    pub fn is_zero(self) -> bool {
        self.hi == 0.0
    }

    pub fn mul_f64(self, b: f64) -> Self {
        let (p, e) = two_prod(self.hi, b);
        let (hi, lo) = quick_two_sum(p, e + self.lo * b);
        Self { hi, lo }
    }

    pub fn div_f64(self, b: f64) -> Self {
        let q1 = self.hi / b;
        let r = self - Self::new(b).mul_f64(q1);
        let q2 = r.hi / b;
        let r = r - Self::new(b).mul_f64(q2);
        let q3 = r.hi / b;
        let (hi, lo) = quick_two_sum(q1, q2);
        Self { hi, lo } + Self::new(q3)
    }

    pub fn recip(self) -> Self {
        Self::ONE / self
    }

    pub fn sqrt(self) -> Self {
        if self.hi <= 0.0 {
            return Self::ZERO;
        }
        let s = self.hi.sqrt();
        let sd = Self::new(s);
        let r = self - sd * sd;
        sd + Self::new(r.hi / (2.0 * s))
    }

    pub fn sqr(self) -> Self {
        self * self
    }

    /// `(cos, sin)` of `2*pi*num/den`, with the angle reduced exactly.
    pub fn cis_turns(num: i128, den: i128) -> (Self, Self) {
        assert!(den != 0, "cis_turns with zero denominator");
        let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
        let r = num.rem_euclid(den);
        // quadrant and position inside it, both exact
        let t = 4 * r;
        let quadrant = t / den;
        let f = t % den;
        let (c, s) = if 2 * f <= den {
            cos_sin_small(Self::FRAC_PI_2 * Self::from_ratio(f, den))
        } else {
            let (c, s) = cos_sin_small(Self::FRAC_PI_2 * Self::from_ratio(den - f, den));
            (s, c)
        };
        match quadrant {
            0 => (c, s),
            1 => (-s, c),
            2 => (-c, -s),
            _ => (s, -c),
        }
    }
}

/// Taylor series for `|x| <= pi/4`.
fn cos_sin_small(x: DoubleDouble) -> (DoubleDouble, DoubleDouble) {
    let x2 = x.sqr();
    let mut sin = x;
    let mut cos = DoubleDouble::ONE;
    let mut term_s = x;
    let mut term_c = DoubleDouble::ONE;
    let mut k = 1.0_f64;
    loop {
        term_c = -(term_c * x2).div_f64(k * (k + 1.0));
        term_s = -(term_s * x2).div_f64((k + 1.0) * (k + 2.0));
        cos += term_c;
        sin += term_s;
        if term_c.hi.abs() < 1e-34 && term_s.hi.abs() < 1e-34 {
            break;
        }
        k += 2.0;
    }
    (cos, sin)
}

impl Add for DoubleDouble {
    type Output = Self;
    fn add(self, b: Self) -> Self {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Self { hi, lo }
    }
}

impl AddAssign for DoubleDouble {
    fn add_assign(&mut self, b: Self) {
        *self = *self + b;
    }
}

impl Neg for DoubleDouble {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Sub for DoubleDouble {
    type Output = Self;
    fn sub(self, b: Self) -> Self {
        self + (-b)
    }
}

impl Mul for DoubleDouble {
    type Output = Self;
    fn mul(self, b: Self) -> Self {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Self { hi, lo }
    }
}

impl Div for DoubleDouble {
    type Output = Self;
    fn div(self, b: Self) -> Self {
        let q1 = self.hi / b.hi;
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Self { hi, lo } + Self::new(q3)
    }
}

impl fmt::Display for DoubleDouble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.17e}", self.to_f64())
    }
}

/// Requested numeric precision in bits, validated against what the
/// double-double backend can deliver.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Precision(u32);

impl Precision {
    pub const MIN_BITS: u32 = 64;

    pub fn new(bits: u32) -> Result<Self> {
        if !(Self::MIN_BITS..=WORKING_BITS).contains(&bits) {
            return Err(Error::InvalidArgument(format!(
                "precision must lie in {}..={} bits, got {bits}",
                Self::MIN_BITS,
                WORKING_BITS
            )));
        }
        Ok(Self(bits))
    }

    /// Reads [`PRECISION_ENV`], defaulting to the working precision.
    pub fn from_env() -> Result<Self> {
        match std::env::var(PRECISION_ENV) {
            Ok(s) => {
                let bits = s.trim().parse::<u32>().map_err(|_| {
                    Error::InvalidArgument(format!("{PRECISION_ENV}={s} is not an integer"))
                })?;
                Self::new(bits)
            }
            Err(_) => Ok(Self::default()),
        }
    }

    pub fn bits(self) -> u32 {
        self.0
    }
}

impl Default for Precision {
    fn default() -> Self {
        Self(WORKING_BITS)
    }
}

/// Complex number with double-double parts.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ComplexValue {
    pub re: DoubleDouble,
    pub im: DoubleDouble,
}

impl ComplexValue {
    pub const ZERO: Self = Self {
        re: DoubleDouble::ZERO,
        im: DoubleDouble::ZERO,
    };
    pub const ONE: Self = Self {
        re: DoubleDouble::ONE,
        im: DoubleDouble::ZERO,
    };
    pub const I: Self = Self {
        re: DoubleDouble::ZERO,
        im: DoubleDouble::ONE,
    };

    pub fn new(re: DoubleDouble, im: DoubleDouble) -> Self {
        Self { re, im }
    }

    pub fn from_f64(re: f64, im: f64) -> Self {
        Self::new(DoubleDouble::new(re), DoubleDouble::new(im))
    }

    pub fn real(re: DoubleDouble) -> Self {
        Self::new(re, DoubleDouble::ZERO)
    }

    pub fn from_i128(n: i128) -> Self {
        Self::real(DoubleDouble::from_i128(n))
    }

    /// `e^{2 pi i num/den}`.
    pub fn root_of_unity(num: i128, den: i128) -> Self {
        let (c, s) = DoubleDouble::cis_turns(num, den);
        Self::new(c, s)
    }

    /// Bits carried by the arithmetic.
    pub fn precision(&self) -> u32 {
        WORKING_BITS
    }

    pub fn conj(self) -> Self {
        Self::new(self.re, -self.im)
    }

    pub fn scale(self, x: DoubleDouble) -> Self {
        Self::new(self.re * x, self.im * x)
    }

    pub fn norm_sqr(self) -> DoubleDouble {
        self.re.sqr() + self.im.sqr()
    }

    pub fn abs(self) -> DoubleDouble {
        self.norm_sqr().sqrt()
    }

    /// Largest absolute deviation in either component, as an `f64`.
    pub fn abs_f64(self) -> f64 {
        self.abs().to_f64()
    }

    pub fn mul_i(self) -> Self {
        Self::new(-self.im, self.re)
    }

    pub fn to_pair(self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    pub fn recip(self) -> Self {
        let n = self.norm_sqr();
        Self::new(self.re / n, -self.im / n)
    }
}

impl Add for ComplexValue {
    type Output = Self;
    fn add(self, b: Self) -> Self {
        Self::new(self.re + b.re, self.im + b.im)
    }
}

impl AddAssign for ComplexValue {
    fn add_assign(&mut self, b: Self) {
        *self = *self + b;
    }
}

impl Sub for ComplexValue {
    type Output = Self;
    fn sub(self, b: Self) -> Self {
        Self::new(self.re - b.re, self.im - b.im)
    }
}

impl Neg for ComplexValue {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

impl Mul for ComplexValue {
    type Output = Self;
    fn mul(self, b: Self) -> Self {
        Self::new(
            self.re * b.re - self.im * b.im,
            self.re * b.im + self.im * b.re,
        )
    }
}

impl fmt::Display for ComplexValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.to_pair();
        if im < 0.0 {
            write!(f, "{re:.15e} - {:.15e}i", -im)
        } else {
            write!(f, "{re:.15e} + {im:.15e}i")
        }
    }
}
