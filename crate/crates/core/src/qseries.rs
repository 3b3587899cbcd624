//! Truncated Laurent series in q with exact coefficients and rational exponents.
//!
//! A series stores its exponents on the lattice `(1/denom)Z` together with a
//! truncation order: every coefficient strictly below `trunc` is exact, and
//! nothing at or beyond it is stored.

use std::collections::BTreeMap;
use std::fmt;

use num::integer::Integer;
use num::rational::Ratio;
use num::{BigInt, BigRational, One, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ring::{rational, Coeff, GaussianRational};

/// Exponents and truncation orders.
pub type Exponent = Ratio<i64>;

/// Series over the Gaussian rationals, the default coefficient ring.
pub type FormalQSeries = QSeries<GaussianRational>;

pub fn exponent(n: i64, d: i64) -> Exponent {
    Ratio::new(n, d)
}

/// Parses `p`, `p/q` or `-p/q`.
pub fn parse_exponent(s: &str) -> Result<Exponent> {
    let bad = || Error::InvalidArgument(format!("`{s}` is not a rational number p/q"));
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: i64 = n.parse().map_err(|_| bad())?;
    let d: i64 = d.parse().map_err(|_| bad())?;
    if d == 0 {
        return Err(bad());
    }
    Ok(Ratio::new(n, d))
}

pub fn exponent_string(e: &Exponent) -> String {
    if e.is_integer() {
        e.numer().to_string()
    } else {
        format!("{}/{}", e.numer(), e.denom())
    }
}

/// Smallest integer k with k >= x.
fn ceil_i64(x: Exponent) -> i64 {
    x.ceil().to_integer()
}

/// Truncated q-series with coefficients in `C`.
#[derive(Clone, Debug, PartialEq)]
pub struct QSeries<C: Coeff> {
    denom: i64,
    coeffs: BTreeMap<i64, C>,
    trunc: Exponent,
}

impl<C: Coeff> QSeries<C> {
    /// The zero series known up to `trunc`.
    pub fn zero(trunc: Exponent) -> Self {
        Self {
            denom: 1,
            coeffs: BTreeMap::new(),
            trunc,
        }
    }

    pub fn constant(c: C, trunc: Exponent) -> Self {
        Self::monomial(c, Exponent::zero(), trunc)
    }

    /// `c * q^e`, exact below `trunc`.
    pub fn monomial(c: C, e: Exponent, trunc: Exponent) -> Self {
        Self::from_terms([(e, c)], trunc)
    }

    /// Builds a series from (exponent, coefficient) pairs; repeated exponents
    /// are summed and terms at or beyond `trunc` are dropped.
    pub fn from_terms<I: IntoIterator<Item = (Exponent, C)>>(terms: I, trunc: Exponent) -> Self {
        let terms: Vec<(Exponent, C)> = terms.into_iter().collect();
        let denom = terms
            .iter()
            .fold(1i64, |acc, (e, _)| acc.lcm(e.denom()));
        let mut coeffs: BTreeMap<i64, C> = BTreeMap::new();
        for (e, c) in terms {
            if e >= trunc {
                continue;
            }
            let k = e.numer() * (denom / e.denom());
            add_into(&mut coeffs, k, &c);
        }
        Self::normalized(denom, coeffs, trunc)
    }

    fn normalized(denom: i64, mut coeffs: BTreeMap<i64, C>, trunc: Exponent) -> Self {
        coeffs.retain(|_, c| !c.is_zero());
        let g = coeffs.keys().fold(denom, |acc, k| acc.gcd(k));
        if g > 1 {
            coeffs = coeffs.into_iter().map(|(k, c)| (k / g, c)).collect();
        }
        Self {
            denom: denom / g.max(1),
            coeffs,
            trunc,
        }
    }

    pub fn denom(&self) -> i64 {
        self.denom
    }

    pub fn trunc(&self) -> Exponent {
        self.trunc
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Least exponent with a nonzero coefficient; `None` for the zero series.
    pub fn valuation(&self) -> Option<Exponent> {
        self.coeffs
            .keys()
            .next()
            .map(|&k| Ratio::new(k, self.denom))
    }

    fn valuation_or_trunc(&self) -> Exponent {
        self.valuation().unwrap_or(self.trunc)
    }

    pub fn leading(&self) -> Option<(Exponent, &C)> {
        self.coeffs
            .iter()
            .next()
            .map(|(&k, c)| (Ratio::new(k, self.denom), c))
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (Exponent, &C)> + '_ {
        self.coeffs
            .iter()
            .map(move |(&k, c)| (Ratio::new(k, self.denom), c))
    }

    /// Coefficient of `q^e`; zero when absent.
    ///
    /// Panics if `e` is not below the truncation order, since the value is
    /// unknown there.
    pub fn coeff(&self, e: Exponent) -> C {
        assert!(
            e < self.trunc,
            "coefficient of q^{} requested beyond truncation {}",
            exponent_string(&e),
            exponent_string(&self.trunc)
        );
        let scaled = e * self.denom;
        if !scaled.is_integer() {
            return C::zero();
        }
        self.coeffs
            .get(&scaled.to_integer())
            .cloned()
            .unwrap_or_else(C::zero)
    }

    /// Drops everything at or beyond `order` (never raises the truncation).
    pub fn truncate(&self, order: Exponent) -> Self {
        let trunc = order.min(self.trunc);
        let bound = ceil_i64(trunc * self.denom);
        let coeffs = self
            .coeffs
            .range(..bound)
            .map(|(&k, c)| (k, c.clone()))
            .collect();
        Self::normalized(self.denom, coeffs, trunc)
    }

    pub fn add(&self, other: &Self) -> Self {
        let l = self.denom.lcm(&other.denom);
        let trunc = self.trunc.min(other.trunc);
        let bound = ceil_i64(trunc * l);
        let mut coeffs = BTreeMap::new();
        for (s, f) in [(self, l / self.denom), (other, l / other.denom)] {
            for (&k, c) in &s.coeffs {
                let k = k * f;
                if k < bound {
                    add_into(&mut coeffs, k, c);
                }
            }
        }
        Self::normalized(l, coeffs, trunc)
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.negated())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &C) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(&k, x)| (k, x.times(c)))
            .collect();
        Self::normalized(self.denom, coeffs, self.trunc)
    }

    pub fn scale_rational(&self, q: &BigRational) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(&k, x)| (k, x.scaled(q)))
            .collect();
        Self::normalized(self.denom, coeffs, self.trunc)
    }

    /// Coefficientwise map into another ring; exponents and truncation kept.
    pub fn map_coeffs<D: Coeff, F: Fn(&C) -> D>(&self, f: F) -> QSeries<D> {
        let coeffs = self.coeffs.iter().map(|(&k, c)| (k, f(c))).collect();
        QSeries::normalized(self.denom, coeffs, self.trunc)
    }

    /// Product with truncation `min(t1 + v2, t2 + v1)`.
    pub fn mul(&self, other: &Self) -> Self {
        let l = self.denom.lcm(&other.denom);
        let (fa, fb) = (l / self.denom, l / other.denom);
        let trunc = (self.trunc + other.valuation_or_trunc())
            .min(other.trunc + self.valuation_or_trunc());
        let bound = ceil_i64(trunc * l);
        let mut coeffs: BTreeMap<i64, C> = BTreeMap::new();
        for (&ka, ca) in &self.coeffs {
            for (&kb, cb) in &other.coeffs {
                let k = ka * fa + kb * fb;
                if k >= bound {
                    break;
                }
                let p = ca.times(cb);
                add_into(&mut coeffs, k, &p);
            }
        }
        Self::normalized(l, coeffs, trunc)
    }

    /// Multiplicative inverse; the truncation becomes `t - 2v`.
    pub fn inv(&self) -> Result<Self> {
        let (&k0, c0) = self.coeffs.iter().next().ok_or(Error::ZeroSeries)?;
        let c0inv = c0
            .inverse()
            .ok_or_else(|| Error::NonInvertibleLeadingCoefficient(c0.to_string()))?;
        let v = Ratio::new(k0, self.denom);
        let n_max = ceil_i64((self.trunc - v) * self.denom).max(0) as usize;
        let unit: Vec<(usize, C)> = self
            .coeffs
            .iter()
            .skip(1)
            .map(|(&k, c)| ((k - k0) as usize, c.times(&c0inv)))
            .take_while(|(j, _)| *j < n_max)
            .collect();
        let mut b: Vec<C> = Vec::with_capacity(n_max);
        for n in 0..n_max {
            if n == 0 {
                b.push(C::one());
                continue;
            }
            let mut s = C::zero();
            for (j, u) in &unit {
                if *j > n {
                    break;
                }
                if !b[n - j].is_zero() {
                    s = s.plus(&u.times(&b[n - j]));
                }
            }
            b.push(s.negated());
        }
        let coeffs = b
            .into_iter()
            .enumerate()
            .map(|(n, c)| (n as i64 - k0, c.times(&c0inv)))
            .collect();
        Ok(Self::normalized(self.denom, coeffs, self.trunc - v * 2))
    }

    /// `q -> q^m`.
    pub fn dilate(&self, m: i64) -> Self {
        assert!(m > 0);
        let coeffs = self
            .coeffs
            .iter()
            .map(|(&k, c)| (k * m, c.clone()))
            .collect();
        Self::normalized(self.denom, coeffs, self.trunc * m)
    }

    /// Multiplication by `q^e`.
    pub fn shift(&self, e: Exponent) -> Self {
        let l = self.denom.lcm(e.denom());
        let f = l / self.denom;
        let s = e.numer() * (l / e.denom());
        let coeffs = self
            .coeffs
            .iter()
            .map(|(&k, c)| (k * f + s, c.clone()))
            .collect();
        Self::normalized(l, coeffs, self.trunc + e)
    }

    /// `(exponent, coefficient)` pairs where the two series differ below the
    /// common truncation.
    pub fn differences(&self, other: &Self) -> Vec<(Exponent, C, C)> {
        let d = self.sub(other);
        d.terms()
            .map(|(e, _)| (e, self.coeff(e), other.coeff(e)))
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .coeffs
            .iter()
            .map(|(&k, c)| {
                let mut row = vec![json!(k)];
                match c.to_json() {
                    Value::Array(parts) => row.extend(parts),
                    other => row.push(other),
                }
                Value::Array(row)
            })
            .collect();
        json!({
            "denom": self.denom,
            "trunc": exponent_string(&self.trunc),
            "terms": terms,
        })
    }
}

fn add_into<C: Coeff>(map: &mut BTreeMap<i64, C>, k: i64, c: &C) {
    match map.get_mut(&k) {
        Some(x) => *x = x.plus(c),
        None => {
            map.insert(k, c.clone());
        }
    }
}

impl<C: Coeff> fmt::Display for QSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (e, c)) in self.terms().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})q^{}", exponent_string(&e))?;
        }
        write!(f, " + O(q^{})", exponent_string(&self.trunc))
    }
}

/// Sum of the divisors of n.
pub fn sigma1(n: u64) -> u64 {
    let mut s = 0;
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            s += d;
            if d * d != n {
                s += n / d;
            }
        }
        d += 1;
    }
    s
}

/// Integer coefficients of `prod_{n>=1} (1 - q^n)^e` below `q^len`, any sign of `e`.
pub fn euler_power_coeffs(e: i64, len: usize) -> Vec<BigInt> {
    let mut a = vec![BigInt::zero(); len];
    if len == 0 {
        return a;
    }
    a[0] = BigInt::one();
    for n in 1..len {
        for _ in 0..e.unsigned_abs() {
            if e > 0 {
                for k in (n..len).rev() {
                    let t = a[k - n].clone();
                    a[k] -= t;
                }
            } else {
                // division by (1 - q^n)
                for k in n..len {
                    let t = a[k - n].clone();
                    a[k] += t;
                }
            }
        }
    }
    a
}

/// `eta(tau)^e` below `q^order`, from the Euler product for `e > 0` and by
/// inversion for `e < 0`.
pub fn eta_power<C: Coeff>(e: i64, order: Exponent) -> QSeries<C> {
    if e == 0 {
        return QSeries::constant(C::one(), order);
    }
    if e < 0 {
        let inner_order = order + exponent(-e, 12);
        let pos: QSeries<C> = eta_power(-e, inner_order);
        return pos
            .inv()
            .expect("eta has unit leading coefficient")
            .truncate(order);
    }
    let len = ceil_i64(order - exponent(e, 24)).max(0) as usize;
    let c = euler_power_coeffs(e, len);
    let terms = c
        .into_iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(k, x)| {
            (
                exponent(e + 24 * k as i64, 24),
                C::from_rational(BigRational::from_integer(x)),
            )
        });
    QSeries::from_terms(terms, order)
}

/// `E_2 = 1 - 24 sum sigma_1(n) q^n`.
pub fn eisenstein_e2<C: Coeff>(order: Exponent) -> QSeries<C> {
    let n_max = ceil_i64(order).max(0);
    let terms = (0..n_max).map(|n| {
        let c = if n == 0 {
            1
        } else {
            -24 * sigma1(n as u64) as i64
        };
        (exponent(n, 1), C::from_i64(c))
    });
    QSeries::from_terms(terms, order)
}

/// `F_2^(2) = sum_{r>s>0, r-s odd} (-1)^r s q^{rs/2}`.
pub fn f2_2<C: Coeff>(order: Exponent) -> QSeries<C> {
    let mut terms = Vec::new();
    let limit = order * 2;
    let mut s = 1i64;
    while exponent(s * (s + 1), 1) < limit {
        let mut r = s + 1;
        while exponent(r * s, 1) < limit {
            let sign = if r % 2 == 0 { 1 } else { -1 };
            terms.push((exponent(r * s, 2), C::from_i64(sign * s)));
            r += 2;
        }
        s += 1;
    }
    QSeries::from_terms(terms, order)
}

/// `Lambda_M = M(M-1)/24 + M sum sigma_1(k)(q^k - M q^{Mk})`.
pub fn lambda_m<C: Coeff>(m: i64, order: Exponent) -> QSeries<C> {
    assert!(m >= 1);
    let mut terms = vec![(Exponent::zero(), C::from_rational(rational(m * (m - 1), 24)))];
    let n_max = ceil_i64(order).max(0);
    for k in 1..n_max {
        let s = sigma1(k as u64) as i64;
        terms.push((exponent(k, 1), C::from_i64(m * s)));
        if k * m < n_max {
            terms.push((exponent(k * m, 1), C::from_i64(-m * m * s)));
        }
    }
    QSeries::from_terms(terms, order)
}

/// Formal product `scalar * prod eta(M tau)^e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaQuotientSpec {
    pub factors: Vec<(u32, i32)>,
    pub scalar: Ratio<i64>,
}

impl EtaQuotientSpec {
    pub fn new(factors: &[(u32, i32)], scalar: Ratio<i64>) -> Self {
        assert!(factors.iter().all(|&(m, _)| m > 0), "scales must be positive");
        Self {
            factors: factors.to_vec(),
            scalar,
        }
    }

    /// Order of vanishing at infinity, `sum M e / 24`.
    pub fn valuation(&self) -> Exponent {
        self.factors
            .iter()
            .map(|&(m, e)| exponent(m as i64 * e as i64, 24))
            .sum()
    }

    /// Weight of the quotient, `sum e / 2`.
    pub fn weight(&self) -> Exponent {
        self.factors
            .iter()
            .map(|&(_, e)| exponent(e as i64, 2))
            .sum()
    }

    pub fn scalar_rational(&self) -> BigRational {
        rational(*self.scalar.numer(), *self.scalar.denom())
    }
}

impl fmt::Display for EtaQuotientSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", exponent_string(&self.scalar))?;
        for &(m, e) in &self.factors {
            write!(f, "*eta({m}t)^{e}")?;
        }
        Ok(())
    }
}

/// Expansion of an eta quotient below `q^order`.
pub fn eta_quotient<C: Coeff>(spec: &EtaQuotientSpec, order: Exponent) -> QSeries<C> {
    let margin: Exponent = spec
        .factors
        .iter()
        .map(|&(m, e)| exponent((m as i64 * e as i64).abs(), 24))
        .sum();
    let work = order + margin;
    let mut acc = QSeries::constant(C::from_rational(spec.scalar_rational()), work);
    for &(m, e) in &spec.factors {
        let m = m as i64;
        let f: QSeries<C> = eta_power(e as i64, work / m);
        acc = acc.mul(&f.dilate(m));
    }
    acc.truncate(order)
}

/// True when every coefficient is a rational integer.
pub fn has_integer_coefficients(s: &FormalQSeries) -> bool {
    s.terms().all(|(_, c)| c.is_integral())
}

/// Integer value of a rational coefficient, if it is one.
pub fn as_integer(c: &GaussianRational) -> Option<BigInt> {
    (c.im.is_zero() && c.re.is_integer()).then(|| c.re.to_integer())
}

/// Convenience: the coefficient as an `i64`, for small integral values.
pub fn as_i64(c: &GaussianRational) -> Option<i64> {
    as_integer(c).and_then(|n| n.to_i64())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: i64) -> GaussianRational {
        GaussianRational::from_i64(n)
    }

    fn ints(s: &FormalQSeries) -> Vec<(Exponent, i64)> {
        s.terms().map(|(e, c)| (e, as_i64(c).unwrap())).collect()
    }

    #[test]
    fn geometric_inverse() {
        let t = exponent(10, 1);
        let a = FormalQSeries::from_terms([(exponent(0, 1), g(1)), (exponent(1, 1), g(-1))], t);
        let geo = a.inv().unwrap();
        let ones: Vec<_> = (0..10).map(|k| (exponent(k, 1), 1)).collect();
        assert_eq!(ints(&geo), ones);
        let prod = a.mul(&geo);
        assert_eq!(ints(&prod), vec![(exponent(0, 1), 1)]);
    }

    #[test]
    fn monomial_inverse() {
        let m = FormalQSeries::monomial(g(1), exponent(1, 8), exponent(5, 1));
        let inv = m.inv().unwrap();
        assert_eq!(inv.valuation(), Some(exponent(-1, 8)));
        assert_eq!(inv.len(), 1);
        assert_eq!(inv.trunc(), exponent(5, 1) - exponent(1, 4));
    }

    #[test]
    fn inverse_of_eta_cubed_series() {
        // 1 - 3q + 5q^3 - 7q^6 + 9q^10
        let t = exponent(4, 1);
        let a = FormalQSeries::from_terms(
            [(0, 1), (1, -3), (3, 5)].map(|(k, c)| (exponent(k, 1), g(c))),
            t,
        );
        let b = a.inv().unwrap();
        // long division oracle: b_n = 3 b_{n-1} - 5 b_{n-3}
        let mut bn = vec![1i64];
        for n in 1..4 {
            let mut v = 3 * bn[n - 1];
            if n >= 3 {
                v -= 5 * bn[n - 3];
            }
            bn.push(v);
        }
        assert_eq!(bn, vec![1, 3, 9, 22]);
        let got: Vec<i64> = (0..4).map(|k| as_i64(&b.coeff(exponent(k, 1))).unwrap()).collect();
        assert_eq!(got, bn);
    }

    #[test]
    fn eta_matches_pentagonal_numbers() {
        let e: FormalQSeries = eta_power(1, exponent(30, 1));
        // pentagonal oracle: exponents k(3k-1)/2 with sign (-1)^k
        let mut expected: Vec<(Exponent, i64)> = Vec::new();
        for k in -10i64..=10 {
            let p = k * (3 * k - 1) / 2;
            if p < 30 {
                expected.push((exponent(24 * p + 1, 24), if k % 2 == 0 { 1 } else { -1 }));
            }
        }
        expected.sort();
        assert_eq!(ints(&e), expected);
    }

    #[test]
    fn eta_cubed_is_jacobi_triangular_series() {
        let e: FormalQSeries = eta_power(3, exponent(30, 1));
        let mut expected = Vec::new();
        for n in 0i64..10 {
            let t = n * (n + 1) / 2;
            if t < 30 {
                let sign = if n % 2 == 0 { 1 } else { -1 };
                expected.push((exponent(8 * t + 1, 8), sign * (2 * n + 1)));
            }
        }
        assert_eq!(ints(&e), expected);
    }

    #[test]
    fn eta_zero_is_one() {
        let e: FormalQSeries = eta_power(0, exponent(3, 1));
        assert_eq!(ints(&e), vec![(exponent(0, 1), 1)]);
    }

    #[test]
    fn e2_coefficients() {
        let e2: FormalQSeries = eisenstein_e2(exponent(51, 1));
        for n in 1..=50u64 {
            let oracle: u64 = (1..=n).filter(|d| n % d == 0).sum();
            assert_eq!(
                as_i64(&e2.coeff(exponent(n as i64, 1))).unwrap(),
                -24 * oracle as i64
            );
        }
        assert_eq!(as_i64(&e2.coeff(exponent(2, 1))), Some(-72));
        assert_eq!(as_i64(&e2.coeff(exponent(6, 1))), Some(-288));
        let sq = e2.mul(&e2);
        assert_eq!(as_i64(&sq.coeff(exponent(1, 1))), Some(-48));
    }

    #[test]
    fn f2_2_first_terms() {
        let f: FormalQSeries = f2_2(exponent(6, 1));
        let got: Vec<i64> = (1..6).map(|k| as_i64(&f.coeff(exponent(k, 1))).unwrap()).collect();
        assert_eq!(got, vec![1, 1, -1, 1, -1]);
        assert!(f.coeff(exponent(1, 2)).is_zero());
    }

    #[test]
    fn lambda_two() {
        let l: FormalQSeries = lambda_m(2, exponent(4, 1));
        assert_eq!(l.coeff(exponent(0, 1)).re, rational(1, 12));
        let got: Vec<i64> = (1..4).map(|k| as_i64(&l.coeff(exponent(k, 1))).unwrap()).collect();
        assert_eq!(got, vec![2, 2, 8]);
        let t = l.scale_rational(&rational(16, 1));
        assert_eq!(t.coeff(exponent(0, 1)).re, rational(4, 3));
    }

    #[test]
    fn eta_quotient_examples() {
        let spec = EtaQuotientSpec::new(&[(1, 8), (2, -4)], Ratio::from_integer(2));
        let s: FormalQSeries = eta_quotient(&spec, exponent(3, 1));
        let got: Vec<i64> = (0..3).map(|k| as_i64(&s.coeff(exponent(k, 1))).unwrap()).collect();
        assert_eq!(got, vec![2, -16, 48]);
        let spec = EtaQuotientSpec::new(&[(1, 2), (11, 2)], Ratio::from_integer(1));
        let s: FormalQSeries = eta_quotient(&spec, exponent(5, 1));
        assert_eq!(s.valuation(), Some(exponent(1, 1)));
        let spec = EtaQuotientSpec::new(&[], Ratio::from_integer(5));
        let s: FormalQSeries = eta_quotient(&spec, exponent(5, 1));
        assert_eq!(ints(&s), vec![(exponent(0, 1), 5)]);
    }

    #[test]
    fn truncation_rule() {
        let a = FormalQSeries::from_terms([(exponent(1, 4), g(1))], exponent(3, 1));
        let b = FormalQSeries::from_terms([(exponent(-1, 8), g(2))], exponent(2, 1));
        let p = a.mul(&b);
        assert_eq!(p.trunc(), exponent(2, 1) + exponent(1, 4));
        let sq = a.mul(&a);
        assert_eq!(sq.valuation(), Some(exponent(1, 2)));
    }

    #[test]
    fn parse_exponents() {
        assert_eq!(parse_exponent("10").unwrap(), exponent(10, 1));
        assert_eq!(parse_exponent("-7/8").unwrap(), exponent(-7, 8));
        assert!(parse_exponent("1/0").is_err());
        assert!(parse_exponent("x").is_err());
    }

    #[test]
    fn json_shape() {
        let s = FormalQSeries::from_terms([(exponent(-1, 8), g(-2))], exponent(1, 1));
        let v = s.to_json();
        assert_eq!(v["denom"], 8);
        assert_eq!(v["trunc"], "1");
        assert_eq!(v["terms"][0], json!([-1, "-2", "0"]));
    }
}
