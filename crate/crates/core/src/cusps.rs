//! Expansions of the weight two forms `T_g` at the cusps of `Gamma_0(N)`.
//!
//! Slashing `eta(M tau)` or `E_2(M tau)` by `gamma` goes through the
//! factorization `diag(M, 1) gamma = gamma' U` with `gamma'` in `SL_2(Z)` and
//! `U = [[a_U, b_U], [0, d_U]]` upper triangular, so that the result is an
//! exact q-expansion with coefficients in a cyclotomic field.

use std::fmt;

use num::complex::Complex64;
use num::rational::Ratio;
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::expsums::eta_multiplier_turns;
use crate::matrix::{divisors, gcd, mod_inv, Matrix2};
use crate::mockforms::{class, classes, ConjugacyClassData, LeafEvaluator};
use crate::qseries::{
    euler_power_coeffs, exponent, exponent_string, parse_exponent, sigma1, EtaQuotientSpec,
    Exponent, QSeries,
};
use crate::ring::{rational, rational_string, Coeff, Cyclotomic};

/// Series with cyclotomic coefficients.
pub type CyclotomicSeries = QSeries<Cyclotomic>;

/// A cusp `a/c` of `Gamma_0(level)` with `gamma` mapping infinity to it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CuspRep {
    pub a: i64,
    pub c: i64,
    pub gamma: Matrix2,
    pub width: u64,
    pub level: u64,
}

impl CuspRep {
    pub fn infinity(level: u64) -> Self {
        Self::new(1, 0, level).expect("infinity is a valid cusp")
    }

    pub fn new(a: i64, c: i64, level: u64) -> Result<Self> {
        if level == 0 || c < 0 || gcd(a, c) != 1 {
            return Err(Error::InvalidArgument(format!(
                "{a}/{c} is not a reduced cusp of level {level}"
            )));
        }
        let gamma = Matrix2::with_first_column(a, c).expect("coprime");
        let n = level as i64;
        let width = (n / gcd(c * c, n)) as u64;
        Ok(Self {
            a,
            c,
            gamma,
            width,
            level,
        })
    }

    pub fn is_infinity(&self) -> bool {
        self.c == 0
    }

    /// Parses `inf`, `oo`, `∞`, `0` or `a/c`.
    pub fn parse(s: &str, level: u64) -> Result<Self> {
        let t = s.trim();
        if matches!(t, "inf" | "oo" | "∞" | "infinity" | "1/0") {
            return Ok(Self::infinity(level));
        }
        let (a, c) = match t.split_once('/') {
            Some((a, c)) => (a.trim().parse::<i64>(), c.trim().parse::<i64>()),
            None => (t.parse::<i64>(), Ok(1)),
        };
        match (a, c) {
            (Ok(a), Ok(c)) if c >= 0 => {
                let g = gcd(a, c).max(1);
                Self::new(a / g, c / g, level)
            }
            _ => Err(Error::InvalidArgument(format!("cannot parse cusp `{s}`"))),
        }
    }

    /// Width of this point as a cusp of `Gamma_0(n)`.
    pub fn width_at_level(&self, n: u64) -> u64 {
        let n = n as i64;
        (n / gcd(self.c * self.c, n)) as u64
    }
}

impl fmt::Display for CuspRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a, self.c) {
            (_, 0) => write!(f, "∞"),
            (0, 1) => write!(f, "0"),
            (a, c) => write!(f, "{a}/{c}"),
        }
    }
}

/// One representative per cusp of `Gamma_0(n)`: infinity, 0, then `a/c` for
/// the proper divisors `c` of `n` with `a` running over units modulo
/// `gcd(c, n/c)`.
pub fn enumerate_cusps(n: u64) -> Vec<CuspRep> {
    assert!(n >= 1);
    let mut out = vec![CuspRep::infinity(n)];
    if n == 1 {
        return out;
    }
    out.push(CuspRep::new(0, 1, n).expect("valid"));
    let ni = n as i64;
    for c in divisors(n).into_iter().map(|c| c as i64) {
        if c == 1 || c == ni {
            continue;
        }
        let g = gcd(c, ni / c);
        for residue in 0..g {
            if gcd(residue, g) != 1 {
                continue;
            }
            let start = if residue == 0 { g } else { residue };
            let a = (0..)
                .map(|k| start + k * g)
                .find(|&a| gcd(a, c) == 1)
                .expect("a unit exists");
            out.push(CuspRep::new(a, c, n).expect("valid"));
        }
    }
    out
}

/// `diag(M, 1) gamma = gamma' U`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ScalingDecomposition {
    pub gamma_prime: Matrix2,
    pub a_u: i64,
    pub b_u: i64,
    pub d_u: i64,
}

impl ScalingDecomposition {
    pub fn upper(&self) -> Matrix2 {
        Matrix2::new(self.a_u, self.b_u, 0, self.d_u)
    }
}

fn check_gamma(gamma: &Matrix2) -> Result<()> {
    let reject = |reason| Error::InvalidMatrix {
        a: gamma.a,
        b: gamma.b,
        c: gamma.c,
        d: gamma.d,
        reason,
    };
    if !gamma.is_sl2() {
        return Err(reject("determinant is not 1"));
    }
    if gamma.c < 0 || (gamma.c == 0 && gamma.a != 1) {
        return Err(reject("need c > 0, or c = 0 with a = d = 1"));
    }
    Ok(())
}

/// Factors `diag(m, 1) gamma` as `gamma' U` with `gamma'` in `SL_2(Z)`,
/// `a_U d_U = m` and `0 <= b_U < d_U`.
pub fn scaling_decomposition(m: u64, gamma: &Matrix2) -> Result<ScalingDecomposition> {
    check_gamma(gamma)?;
    let m = m as i64;
    let Matrix2 { a, b, c, d } = *gamma;
    let a_u = gcd(m, c);
    let d_u = m / a_u;
    let c_p = c / a_u;
    let b_u = if d_u == 1 {
        0
    } else {
        (d * mod_inv(c_p, d_u).expect("c' is a unit mod d_U")).rem_euclid(d_u)
    };
    let gamma_prime = Matrix2::new(a * d_u, a_u * b - a * b_u, c_p, (d - c_p * b_u) / d_u);
    debug_assert_eq!(gamma_prime.mul(&Matrix2::new(a_u, b_u, 0, d_u)), Matrix2::new(m * a, m * b, c, d));
    Ok(ScalingDecomposition {
        gamma_prime,
        a_u,
        b_u,
        d_u,
    })
}

/// `zeta_n^k` in the smallest field containing it.
fn zeta(n: i64, k: i64) -> Cyclotomic {
    let k = k.rem_euclid(n);
    let g = gcd(k, n).max(1);
    if k == 0 {
        return Cyclotomic::one();
    }
    Cyclotomic::root_of_unity((n / g) as u32, k / g)
}

/// `e(t)` for a rational number of turns.
fn turn(t: Ratio<i64>) -> Cyclotomic {
    zeta(*t.denom(), *t.numer())
}

fn big(q: &Ratio<i64>) -> BigRational {
    rational(*q.numer(), *q.denom())
}

/// Exact positive square root of a positive rational.
fn sqrt_rational(q: &BigRational) -> Cyclotomic {
    assert!(q.is_positive());
    let n = q.numer() * q.denom();
    let root = n.sqrt();
    let den = BigRational::from_integer(q.denom().clone());
    if &root * &root == n {
        return Cyclotomic::rational(BigRational::from_integer(root) / den);
    }
    let n64 = n.to_u64().expect("square-free part fits in u64");
    Cyclotomic::sqrt_integer(n64).scaled(&(BigRational::one() / den))
}

/// Phase of `eta(gamma' w) / ((c' w + d')^{1/2} eta(w))` in turns.
fn eta_phase_turns(gp: &Matrix2) -> Result<Ratio<i64>> {
    if gp.c == 0 {
        // gamma' = [[1, x], [0, 1]]
        return Ok(Ratio::new(gp.b.rem_euclid(24), 24));
    }
    eta_multiplier_turns(gp)
}

/// `(phase turns, d_U^{-e}, series)` with
/// `eta(M gamma tau)^e (c tau + d)^{-e/2} = e(phase) d_U^{-e/2} series`.
fn eta_factor(
    m: u64,
    e: i64,
    gamma: &Matrix2,
    trunc: Exponent,
) -> Result<(Ratio<i64>, BigRational, CyclotomicSeries)> {
    let dec = scaling_decomposition(m, gamma)?;
    let (a_u, b_u, d_u) = (dec.a_u, dec.b_u, dec.d_u);
    let turns = eta_phase_turns(&dec.gamma_prime)? * e + Ratio::new(e * b_u, 24 * d_u);
    let val = exponent(e * a_u, 24 * d_u);
    let step = exponent(a_u, d_u);
    let len = ((trunc - val) / step).ceil().to_integer().max(0) as usize;
    let coeffs = euler_power_coeffs(e, len);
    let terms = coeffs
        .into_iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(k, x)| {
            let k = k as i64;
            let c = zeta(d_u, k * b_u).scaled(&BigRational::from_integer(x));
            (val + step * k, c)
        });
    let scale = BigRational::from_integer(BigInt::from(d_u)).pow(-e as i32);
    Ok((turns, scale, QSeries::from_terms(terms, trunc)))
}

/// A slashed form expanded at a cusp, in powers of `q^{1/lattice_width}`.
#[derive(Clone, Debug, PartialEq)]
pub struct CuspExpansion {
    pub series: CyclotomicSeries,
    pub lattice_width: u64,
}

impl CuspExpansion {
    pub fn constant(&self) -> Cyclotomic {
        self.series.coeff(Exponent::zero())
    }

    /// The constant term when it is rational.
    pub fn constant_rational(&self) -> Option<BigRational> {
        self.constant().as_rational()
    }

    /// Valuation of the expansion minus its constant term; `None` when
    /// nothing nonzero remains below the truncation.
    pub fn remainder_valuation(&self) -> Option<Exponent> {
        self.series
            .terms()
            .find(|(e, c)| !e.is_zero() && !c.is_zero())
            .map(|(e, _)| e)
    }

    /// Pointwise value at `tau` in the upper half plane.
    pub fn evaluate(&self, tau: Complex64) -> Complex64 {
        let two_pi_i = Complex64::new(0.0, 2.0 * std::f64::consts::PI);
        self.series
            .terms()
            .map(|(e, c)| {
                let (re, im) = c.to_complex();
                let x = e.numer().to_f64().unwrap() / e.denom().to_f64().unwrap();
                Complex64::new(re, im) * (two_pi_i * tau * x).exp()
            })
            .sum()
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .series
            .terms()
            .map(|(e, c)| {
                let (re, im) = c.to_complex();
                json!({"exponent": exponent_string(&e), "exact": c.to_json(), "approx": [re, im]})
            })
            .collect();
        json!({
            "lattice_width": self.lattice_width,
            "trunc": exponent_string(&self.series.trunc()),
            "terms": terms,
        })
    }
}

/// `eta(M gamma tau) (c tau + d)^{-1/2}` with the principal square root.
pub fn eta_at_cusp(m: u64, gamma: &Matrix2, order: Exponent) -> Result<CuspExpansion> {
    let spec = EtaQuotientSpec::new(&[(m as u32, 1)], Ratio::one());
    let series = eta_quotient_at_cusp(&spec, gamma, order)?;
    let dec = scaling_decomposition(m, gamma)?;
    Ok(CuspExpansion {
        lattice_width: (24 * dec.d_u / gcd(dec.a_u, 24 * dec.d_u)) as u64,
        series,
    })
}

/// `prod eta(M gamma tau)^{e_M} (c tau + d)^{-e_M/2}` times the scalar.
pub fn eta_quotient_at_cusp(
    spec: &EtaQuotientSpec,
    gamma: &Matrix2,
    order: Exponent,
) -> Result<CyclotomicSeries> {
    let mut vals = Vec::new();
    for &(m, e) in &spec.factors {
        let dec = scaling_decomposition(m as u64, gamma)?;
        vals.push(exponent(e as i64 * dec.a_u, 24 * dec.d_u));
    }
    let total: Exponent = vals.iter().copied().sum();
    if total >= order || spec.scalar.is_zero() {
        return Ok(QSeries::zero(order));
    }
    let mut turns = Ratio::<i64>::zero();
    let mut scale = BigRational::one();
    // each factor keeps its leading term, so the product is exact below order
    let mut acc: Option<CyclotomicSeries> = None;
    for (&(m, e), v) in spec.factors.iter().zip(&vals) {
        let (t, s, series) = eta_factor(m as u64, e as i64, gamma, order - total + v)?;
        turns += t;
        scale *= s;
        acc = Some(match acc {
            None => series,
            Some(a) => a.mul(&series),
        });
    }
    let acc = acc.unwrap_or_else(|| CyclotomicSeries::constant(Cyclotomic::one(), order));
    let turns = turns - turns.floor();
    let coefficient = turn(turns)
        .times(&sqrt_rational(&scale))
        .scaled(&big(&spec.scalar));
    Ok(acc.truncate(order).scale(&coefficient))
}

/// `E_2(U tau) = 1 - 24 sum sigma_1(n) zeta_{d_U}^{n b_U} q^{n a_U/d_U}`.
fn e2_upper(dec: &ScalingDecomposition, order: Exponent) -> CyclotomicSeries {
    let step = exponent(dec.a_u, dec.d_u);
    let n_max = (order / step).ceil().to_integer().max(0);
    let terms = (0..n_max).map(|n| {
        let c = if n == 0 {
            Cyclotomic::one()
        } else {
            zeta(dec.d_u, n * dec.b_u).scaled(&rational(-24 * sigma1(n as u64) as i64, 1))
        };
        (step * n, c)
    });
    QSeries::from_terms(terms, order)
}

/// `Lambda_M |_2 gamma` from `Lambda_M = (M^2 E_2(M tau) - M E_2(tau)) / 24`;
/// the non-holomorphic parts of the two `E_2` slashes cancel.
pub fn lambda_at_cusp(m: u64, gamma: &Matrix2, order: Exponent) -> Result<CuspExpansion> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!("Lambda_M needs M >= 2, got {m}")));
    }
    let dec = scaling_decomposition(m, gamma)?;
    let one = scaling_decomposition(1, gamma)?;
    let mi = m as i64;
    let c_prime = dec.gamma_prime.c;
    // M^2 c' / d_U^2 * (c tau + d)/... collects to M (M c'/d_U - c)/(c tau + d)
    let residue = mi * c_prime - gamma.c * dec.d_u;
    if residue != 0 {
        return Err(Error::AnomalyResidue(format!(
            "M = {m}, gamma = {gamma}: M c'/d_U - c = {}",
            Ratio::new(residue, dec.d_u)
        )));
    }
    let lhs = e2_upper(&dec, order).scale_rational(&rational(mi * mi, 24 * dec.d_u * dec.d_u));
    let rhs = e2_upper(&one, order).scale_rational(&rational(mi, 24));
    Ok(CuspExpansion {
        series: lhs.sub(&rhs),
        lattice_width: (dec.d_u / gcd(dec.a_u, dec.d_u)) as u64,
    })
}

/// Leaf expansions slashed by a fixed matrix.
pub struct AtCusp {
    pub gamma: Matrix2,
    pub order: Exponent,
}

impl LeafEvaluator for AtCusp {
    type C = Cyclotomic;
    fn order(&self) -> Exponent {
        self.order
    }
    fn lambda(&self, m: u32) -> Result<CyclotomicSeries> {
        if m == 1 {
            return Ok(QSeries::zero(self.order));
        }
        Ok(lambda_at_cusp(m as u64, &self.gamma, self.order)?.series)
    }
    fn eta(&self, spec: &EtaQuotientSpec) -> Result<CyclotomicSeries> {
        eta_quotient_at_cusp(spec, &self.gamma, self.order)
    }
}

/// `T_g |_2 gamma` for the matrix of a cusp of `Gamma_0(n_g)` (or of any
/// level divisible by `n_g`), expanded below `q^order`.
pub fn t_g_at_cusp(
    class: &ConjugacyClassData,
    cusp: &CuspRep,
    order: Exponent,
) -> Result<CuspExpansion> {
    if cusp.level % class.n as u64 != 0 {
        return Err(Error::CuspLevelMismatch {
            cusp: cusp.to_string(),
            level: class.n as u64,
        });
    }
    let series = class.recipe.evaluate(&AtCusp {
        gamma: cusp.gamma,
        order,
    })?;
    Ok(CuspExpansion {
        series,
        lattice_width: cusp.width_at_level(class.level() as u64),
    })
}

/// Listed behaviour of `T_g` at one cusp: the constant term and the
/// exponent of the error term, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CuspTableEntry {
    pub cusp: &'static str,
    pub constant: Exponent,
    pub remainder: Option<Exponent>,
}

const CUSP_TABLE: &[(&str, &[(&str, &str, &str)])] = &[
    ("1A", &[("inf", "0", "")]),
    ("2A", &[("inf", "4/3", "1"), ("0", "-2/3", "1/2")]),
    ("2B", &[("inf", "2", "1"), ("0", "0", "1/4")]),
    ("3A", &[("inf", "3/2", "1"), ("0", "-1/2", "1/3")]),
    ("3B", &[("inf", "2", "1"), ("0", "0", "2/9")]),
    ("4A", &[("inf", "2", "1"), ("0", "0", "1/8"), ("1/2", "0", "1/6")]),
    ("4B", &[("inf", "5/3", "1"), ("0", "-1/3", "1/4"), ("1/2", "-1/3", "1")]),
    ("4C", &[("inf", "2", "1"), ("0", "0", "3/16"), ("1/2", "0", "1/4")]),
    ("5A", &[("inf", "5/3", "1"), ("0", "-1/3", "1/5")]),
    (
        "6A",
        &[("inf", "11/6", "1"), ("0", "-1/6", "1/6"), ("1/2", "-1/6", "1/3"), ("1/3", "-1/6", "1/2")],
    ),
    (
        "6B",
        &[("inf", "2", "1"), ("0", "0", "5/36"), ("1/2", "0", "2/9"), ("1/3", "0", "1/4")],
    ),
    ("7AB", &[("inf", "7/4", "1"), ("0", "-1/4", "1/7")]),
    (
        "8A",
        &[("inf", "11/6", "1"), ("0", "-1/6", "1/8"), ("1/2", "-1/6", "1/2"), ("1/4", "-1/6", "1")],
    ),
    (
        "10A",
        &[("inf", "2", "1"), ("0", "0", "3/10"), ("1/2", "0", "1/5"), ("1/5", "0", "1/4")],
    ),
    ("11A", &[("inf", "11/6", "1"), ("0", "-1/6", "2/11")]),
    (
        "12A",
        &[
            ("inf", "2", "1"),
            ("0", "0", "1/8"),
            ("1/2", "0", "1/6"),
            ("1/3", "0", "1/8"),
            ("1/4", "0", "1/3"),
            ("1/6", "0", "1/2"),
        ],
    ),
    (
        "12B",
        &[
            ("inf", "2", "1"),
            ("0", "0", "23/144"),
            ("1/2", "0", "5/36"),
            ("1/3", "0", "7/48"),
            ("1/4", "0", "2/9"),
            ("1/6", "0", "1/4"),
        ],
    ),
    (
        "14AB",
        &[("inf", "23/12", "1"), ("0", "-1/12", "1/7"), ("1/2", "-1/12", "1/7"), ("1/7", "-1/12", "1/2")],
    ),
    (
        "15AB",
        &[("inf", "23/12", "1"), ("0", "-1/12", "2/15"), ("1/3", "-1/12", "1/5"), ("1/5", "-1/12", "1/3")],
    ),
    (
        "21AB",
        &[("inf", "2", "1"), ("0", "0", "8/63"), ("1/3", "0", "1/7"), ("1/7", "0", "2/9")],
    ),
    ("23AB", &[("inf", "23/12", "1"), ("0", "-1/12", "3/23")]),
];

/// The listed cusp data for a class.
pub fn cusp_table_entries(label: &str) -> Result<Vec<CuspTableEntry>> {
    let c = class(label)?;
    let (_, rows) = CUSP_TABLE
        .iter()
        .find(|(l, _)| *l == c.label)
        .ok_or_else(|| Error::UnknownClassLabel(label.to_string()))?;
    Ok(rows
        .iter()
        .map(|(cusp, k, rem)| CuspTableEntry {
            cusp,
            constant: parse_exponent(k).expect("table constant"),
            remainder: (!rem.is_empty()).then(|| parse_exponent(rem).expect("table exponent")),
        })
        .collect())
}

/// Comparison of one cusp row against the computed expansion.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CuspCheck {
    pub cusp: String,
    pub width: u64,
    pub expected_constant: String,
    pub constant: String,
    pub expected_remainder: Option<String>,
    /// First nonzero exponent after the constant, if below the truncation.
    pub valuation: Option<String>,
    pub order: String,
    pub pass: bool,
}

/// Result of checking every listed cusp of one class.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CuspTableReport {
    pub class: String,
    pub rows: Vec<CuspCheck>,
    pub pass: bool,
}

fn constant_string(c: &Cyclotomic) -> String {
    match c.as_rational() {
        Some(q) => rational_string(&q),
        None => c.to_string(),
    }
}

/// Checks constants (exactly) and error-term exponents against the table.
pub fn verify_cusp_table(class: &ConjugacyClassData) -> Result<CuspTableReport> {
    let entries = cusp_table_entries(class.label)?;
    let mut rows = Vec::new();
    for entry in entries {
        let cusp = CuspRep::parse(entry.cusp, class.n as u64)?;
        let order = entry.remainder.unwrap_or(Exponent::one()) + 1;
        let exp = t_g_at_cusp(class, &cusp, order)?;
        let constant = exp.constant();
        let constant_ok = constant == Cyclotomic::rational(big(&entry.constant));
        let valuation = exp.remainder_valuation();
        let remainder_ok = match (entry.remainder, valuation) {
            (_, None) => true,
            (None, Some(_)) => false,
            (Some(x), Some(v)) => v >= x,
        };
        rows.push(CuspCheck {
            cusp: cusp.to_string(),
            width: cusp.width,
            expected_constant: exponent_string(&entry.constant),
            constant: constant_string(&constant),
            expected_remainder: entry.remainder.map(|x| exponent_string(&x)),
            valuation: valuation.map(|v| exponent_string(&v)),
            order: exponent_string(&order),
            pass: constant_ok && remainder_ok,
        });
    }
    let pass = rows.iter().all(|r| r.pass);
    Ok(CuspTableReport {
        class: class.label.to_string(),
        rows,
        pass,
    })
}

/// At every finite cusp of `Gamma_0(n_g)`: constant `-chi/12` and no
/// further terms below `q^{1/8}`.
pub fn finite_cusp_gate(class: &ConjugacyClassData) -> Result<Vec<CuspCheck>> {
    let expected = rational(-(class.chi as i64), 12);
    let bound = exponent(1, 8);
    let order = exponent(1, 4);
    let mut out = Vec::new();
    for cusp in enumerate_cusps(class.n as u64).into_iter().filter(|c| !c.is_infinity()) {
        let exp = t_g_at_cusp(class, &cusp, order)?;
        let constant = exp.constant();
        let valuation = exp.remainder_valuation();
        let pass = constant == Cyclotomic::rational(expected.clone())
            && valuation.is_none_or(|v| v >= bound);
        out.push(CuspCheck {
            cusp: cusp.to_string(),
            width: cusp.width,
            expected_constant: rational_string(&expected),
            constant: constant_string(&constant),
            expected_remainder: Some(exponent_string(&bound)),
            valuation: valuation.map(|v| exponent_string(&v)),
            order: exponent_string(&order),
            pass,
        });
    }
    Ok(out)
}

/// Outcome of the stronger `O(q^{1/4})` condition at one cusp.
#[derive(Clone, Debug, PartialEq)]
pub struct ZgCondition {
    pub holds: bool,
    /// First term `c q^x` with `0 < x < 1/4`, when there is one.
    pub witness: Option<(Exponent, Cyclotomic)>,
}

impl ZgCondition {
    pub fn to_json(&self) -> Value {
        json!({
            "holds": self.holds,
            "witness": self.witness.as_ref().map(|(e, c)| {
                let (re, im) = c.to_complex();
                json!({"exponent": exponent_string(e), "exact": c.to_json(), "approx": [re, im]})
            }),
        })
    }
}

/// Whether `T_g |_2 gamma = -chi/12 + O(q^{1/4})` at a finite cusp.
pub fn zg_cusp_condition(class: &ConjugacyClassData, cusp: &CuspRep) -> Result<ZgCondition> {
    if cusp.is_infinity() {
        return Err(Error::InvalidArgument(
            "the condition concerns finite cusps".into(),
        ));
    }
    let exp = t_g_at_cusp(class, cusp, exponent(1, 4))?;
    let witness = exp
        .series
        .terms()
        .find(|(e, c)| e.is_positive() && !c.is_zero())
        .map(|(e, c)| (e, c.clone()));
    Ok(ZgCondition {
        holds: witness.is_none(),
        witness,
    })
}

/// Every class with its cusp table report.
pub fn verify_all() -> Result<Vec<CuspTableReport>> {
    classes().iter().map(verify_cusp_table).collect()
}
