//! Fourier coefficients of the weight one, index two Maass-Jacobi Poincare
//! series at `(n, r) = (0, 1)`, summed numerically over `c`.
//!
//! For `D' = r'^2 - 8 n' < 0`
//! `b(n', r') = -2 pi i |D'|^{-1/4} sum_{N | c} c^{-3/2} K_c I_{1/2}(pi sqrt|D'| / (2c))`
//! and the holomorphic coefficient is `c(n', r') = b(n', r') - b(n', -r')`.

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::expsums::{
    chi_minus4, classical_index, kloosterman_classical, kloosterman_jacobi,
    kloosterman_principal_fast, KloostermanParams,
};
use crate::jacseries::phi_g_holo;
use crate::mockforms::ConjugacyClassData;
use crate::numeric::{ComplexValue, DoubleDouble, Precision};
use crate::qseries::exponent;
use crate::ring::Coeff;

/// Bessel functions of order 1/2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BesselKind {
    J,
    I,
}

/// `J_{1/2}(x) = sqrt(2/(pi x)) sin x`, `I_{1/2}(x) = sqrt(2/(pi x)) sinh x`.
pub fn bessel_half(kind: BesselKind, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::NonpositiveArgument(format!("Bessel argument {x}")));
    }
    let scale = (2.0 / (std::f64::consts::PI * x)).sqrt();
    Ok(match kind {
        BesselKind::J => scale * x.sin(),
        BesselKind::I => scale * x.sinh(),
    })
}

/// `Gamma(1/2, x) = sqrt(pi) erfc(sqrt(x))`.
pub fn inc_gamma_half(x: f64) -> Result<f64> {
    if !(x >= 0.0) {
        return Err(Error::NonpositiveArgument(format!(
            "incomplete gamma argument {x}"
        )));
    }
    Ok(std::f64::consts::PI.sqrt() * libm::erfc(x.sqrt()))
}

/// How the Kloosterman sums inside the c-sum are evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum KloostermanPath {
    /// `O(c)` per term through the closed-form skew Gauss sums.
    Fast,
    /// `O(c^2)` double sum, for auditing.
    Brute,
}

/// Level data and summation range for one coefficient.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PoincareRequest {
    pub level: i64,
    pub h: i64,
    pub nprime: i64,
    pub rprime: i64,
    pub cmax: i64,
    pub precision: Precision,
    pub path: KloostermanPath,
}

impl PoincareRequest {
    pub fn new(level: i64, h: i64, nprime: i64, rprime: i64, cmax: i64) -> Self {
        Self {
            level,
            h,
            nprime,
            rprime,
            cmax,
            precision: Precision::default(),
            path: KloostermanPath::Fast,
        }
    }

    pub fn for_class(class: &ConjugacyClassData, nprime: i64, rprime: i64, cmax: i64) -> Self {
        Self::new(class.n as i64, class.h as i64, nprime, rprime, cmax)
    }

    pub fn with_path(mut self, path: KloostermanPath) -> Self {
        self.path = path;
        self
    }

    pub fn with_precision(mut self, precision: Precision) -> Self {
        self.precision = precision;
        self
    }

    /// `D' = r'^2 - 8 n'`.
    pub fn discriminant(&self) -> i64 {
        self.rprime * self.rprime - 8 * self.nprime
    }

    fn validate(&self) -> Result<()> {
        if self.level < 1 || self.h < 1 || self.cmax < 1 {
            return Err(Error::InvalidArgument(format!(
                "need N, h, Cmax >= 1, got {self:?}"
            )));
        }
        classical_index(self.nprime, self.rprime)?;
        if self.discriminant() == 0 {
            return Err(Error::InvalidArgument(
                "coefficients with D' = 0 are not covered".into(),
            ));
        }
        Ok(())
    }

    fn moduli(&self) -> Vec<i64> {
        (1..=self.cmax / self.level).map(|k| k * self.level).collect()
    }
}

/// Partial sums of a c-sum, in increasing `c`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceTrace {
    pub partials: Vec<(i64, ComplexValue)>,
    pub final_value: ComplexValue,
    /// `max |partial(C) - final|` over `C > 3 Cmax / 4`.
    pub stabilization: f64,
}

impl ConvergenceTrace {
    fn from_terms(moduli: &[i64], terms: Vec<ComplexValue>, cmax: i64) -> Self {
        let mut acc = ComplexValue::ZERO;
        let partials: Vec<(i64, ComplexValue)> = moduli
            .iter()
            .zip(terms)
            .map(|(&c, t)| {
                acc += t;
                (c, acc)
            })
            .collect();
        let final_value = acc;
        let stabilization = partials
            .iter()
            .filter(|(c, _)| 4 * c > 3 * cmax)
            .map(|(_, v)| (*v - final_value).abs_f64())
            .fold(0.0, f64::max);
        Self {
            partials,
            final_value,
            stabilization,
        }
    }

    /// Partial sums at the given cut-offs (the last partial at or below each).
    pub fn sampled(&self, cutoffs: &[i64]) -> Vec<(i64, ComplexValue)> {
        cutoffs
            .iter()
            .filter_map(|&cut| {
                self.partials
                    .iter()
                    .rev()
                    .find(|(c, _)| *c <= cut)
                    .map(|(_, v)| (cut, *v))
            })
            .collect()
    }

    pub fn to_json(&self, samples: usize) -> Value {
        let n = self.partials.len();
        let step = (n / samples.max(1)).max(1);
        let trace: Vec<Value> = self
            .partials
            .iter()
            .enumerate()
            .filter(|(i, _)| (i + 1) % step == 0 || i + 1 == n)
            .map(|(_, (c, v))| {
                let (re, im) = v.to_pair();
                json!([c, format!("{re:.12e}"), format!("{im:.12e}")])
            })
            .collect();
        let (re, im) = self.final_value.to_pair();
        json!({
            "final": [format!("{re:.12e}"), format!("{im:.12e}")],
            "stabilization": format!("{:.6e}", self.stabilization),
            "partials": trace,
        })
    }
}

fn bessel_for(d: i64, c: i64) -> Result<f64> {
    let x = std::f64::consts::PI * (d.unsigned_abs() as f64).sqrt() / (2.0 * c as f64);
    if d < 0 {
        bessel_half(BesselKind::I, x)
    } else {
        bessel_half(BesselKind::J, x)
    }
}

/// `-2 pi i |D'|^{-1/4}`, divided by `Gamma(1/2)` when `D' > 0`.
fn b_prefactor(d: i64) -> ComplexValue {
    let mut scale = 2.0 * std::f64::consts::PI * (d.unsigned_abs() as f64).powf(-0.25);
    if d > 0 {
        scale /= std::f64::consts::PI.sqrt();
    }
    ComplexValue::from_f64(0.0, -scale)
}

/// Partial sums of `b(n', r')`.
pub fn poincare_b(req: &PoincareRequest) -> Result<ConvergenceTrace> {
    req.validate()?;
    let d = req.discriminant();
    let pre = b_prefactor(d);
    let moduli = req.moduli();
    let terms: Result<Vec<ComplexValue>> = moduli
        .par_iter()
        .map(|&c| {
            let k = match req.path {
                KloostermanPath::Fast => {
                    kloosterman_principal_fast(c, req.nprime, req.rprime, req.level, req.h)?
                }
                KloostermanPath::Brute => kloosterman_jacobi(&KloostermanParams::principal(
                    c, req.nprime, req.rprime, req.level, req.h,
                ))?,
            };
            let w = bessel_for(d, c)? * (c as f64).powf(-1.5);
            Ok((pre * k).scale(DoubleDouble::new(w)))
        })
        .collect();
    Ok(ConvergenceTrace::from_terms(&moduli, terms?, req.cmax))
}

/// Partial sums of `c(n', r') = b(n', r') - b(n', -r')` through the
/// classical Kloosterman sums:
/// `-4 pi (-4/r') |D'|^{-1/4} sum_c S(k, c) I_{1/2}(...) / c` for `D' < 0`.
pub fn poincare_c(req: &PoincareRequest) -> Result<ConvergenceTrace> {
    req.validate()?;
    let d = req.discriminant();
    let k = classical_index(req.nprime, req.rprime)?;
    // 2 (-4/r') e(3/4) b_prefactor
    let pre = (b_prefactor(d) * ComplexValue::root_of_unity(3, 4))
        .scale(DoubleDouble::new(2.0 * chi_minus4(req.rprime) as f64));
    let moduli = req.moduli();
    let terms: Result<Vec<ComplexValue>> = moduli
        .par_iter()
        .map(|&c| {
            let s = kloosterman_classical(k, c, req.level, req.h)?;
            let w = bessel_for(d, c)? / c as f64;
            Ok((pre * s).scale(DoubleDouble::new(w)))
        })
        .collect();
    let trace = ConvergenceTrace::from_terms(&moduli, terms?, req.cmax);
    check_real(&trace)?;
    Ok(trace)
}

/// `b(n', r') - b(n', -r')` term by term from the Jacobi-Kloosterman sums.
pub fn poincare_c_from_b(req: &PoincareRequest) -> Result<ConvergenceTrace> {
    let plus = poincare_b(req)?;
    let mut neg = *req;
    neg.rprime = -req.rprime;
    let minus = poincare_b(&neg)?;
    let moduli: Vec<i64> = plus.partials.iter().map(|(c, _)| *c).collect();
    let mut prev_p = ComplexValue::ZERO;
    let mut prev_m = ComplexValue::ZERO;
    let terms = plus
        .partials
        .iter()
        .zip(&minus.partials)
        .map(|((_, p), (_, m))| {
            let t = (*p - prev_p) - (*m - prev_m);
            prev_p = *p;
            prev_m = *m;
            t
        })
        .collect();
    let trace = ConvergenceTrace::from_terms(&moduli, terms, req.cmax);
    check_real(&trace)?;
    Ok(trace)
}

fn check_real(trace: &ConvergenceTrace) -> Result<()> {
    let (re, im) = trace.final_value.to_pair();
    if im.abs() > 1e-6 * re.abs().max(1.0) {
        return Err(Error::NonRealResult(format!("{re} + {im}i")));
    }
    Ok(())
}

/// Numeric coefficient next to the exact coefficient of `q^{n'} zeta^{r'}`
/// in the holomorphic part of the class's index two form.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PoincareComparison {
    pub class: String,
    pub nprime: i64,
    pub rprime: i64,
    pub cmax: i64,
    pub numeric: f64,
    pub exact: i64,
    pub difference: f64,
    pub stabilization: f64,
    /// `|numeric - exact| < 0.5` and `stabilization < 0.25`.
    pub pass: bool,
}

pub const ROUNDING_GATE: f64 = 0.5;
pub const STABILIZATION_GATE: f64 = 0.25;

/// Exact coefficient of `q^{n'} zeta^{r'}` in `phi_g^+`.
pub fn exact_coefficient(class: &ConjugacyClassData, nprime: i64, rprime: i64) -> Result<i64> {
    let order = exponent(nprime + 1, 1);
    let phi = phi_g_holo(class, order)?;
    let c = phi.coeff(exponent(nprime, 1), exponent(rprime, 1));
    let q = c
        .as_rational()
        .filter(|q| q.is_integer())
        .ok_or_else(|| Error::NonRealResult(c.to_string()))?;
    q.to_integer()
        .try_into()
        .map_err(|_| Error::InvalidArgument(format!("coefficient {q} out of range")))
}

pub fn compare_exact(
    class: &ConjugacyClassData,
    nprime: i64,
    rprime: i64,
    cmax: i64,
) -> Result<(PoincareComparison, ConvergenceTrace)> {
    let req = PoincareRequest::for_class(class, nprime, rprime, cmax);
    let trace = poincare_c(&req)?;
    let exact = exact_coefficient(class, nprime, rprime)?;
    let numeric = trace.final_value.re.to_f64();
    let difference = (numeric - exact as f64).abs();
    let cmp = PoincareComparison {
        class: class.label.to_string(),
        nprime,
        rprime,
        cmax,
        numeric,
        exact,
        difference,
        stabilization: trace.stabilization,
        pass: difference < ROUNDING_GATE && trace.stabilization < STABILIZATION_GATE,
    };
    Ok((cmp, trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mockforms::class;

    #[test]
    fn bessel_values() {
        let pi = std::f64::consts::PI;
        assert!(bessel_half(BesselKind::J, pi).unwrap().abs() < 1e-16);
        assert!((bessel_half(BesselKind::J, pi / 2.0).unwrap() - 2.0 / pi).abs() < 1e-15);
        for x in [1e-3, 0.5, 3.0, 30.0] {
            assert!(bessel_half(BesselKind::I, x).unwrap() > 0.0);
        }
        assert!(matches!(
            bessel_half(BesselKind::I, 0.0),
            Err(Error::NonpositiveArgument(_))
        ));
    }

    fn quadrature(x: f64) -> f64 {
        // substitute t = x + u^2: int_0^inf 2 e^{-(x+u^2)} / sqrt(x+u^2) u du
        let n = 200_000;
        let upper = 12.0;
        let h = upper / n as f64;
        let f = |u: f64| 2.0 * u * (-(x + u * u)).exp() / (x + u * u).sqrt();
        let mut s = f(0.0) + f(upper);
        for i in 1..n {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            s += w * f(i as f64 * h);
        }
        s * h / 3.0
    }

    #[test]
    fn incomplete_gamma() {
        assert!((inc_gamma_half(0.0).unwrap() - std::f64::consts::PI.sqrt()).abs() < 1e-15);
        assert!((inc_gamma_half(1.0).unwrap() - quadrature(1.0)).abs() < 1e-12);
        let mut prev = f64::INFINITY;
        for i in 0..50 {
            let v = inc_gamma_half(i as f64 * 0.5).unwrap();
            assert!(v < prev);
            prev = v;
        }
        assert!(prev < 1e-10);
    }

    #[test]
    fn single_term() {
        let req = PoincareRequest::new(1, 1, 1, 1, 1);
        let t = poincare_b(&req).unwrap();
        let d = 7f64;
        let x = std::f64::consts::PI * d.sqrt() / 2.0;
        let i_half = (2.0 / (std::f64::consts::PI * x)).sqrt() * x.sinh();
        // -2 pi i 7^{-1/4} e(-1/4) I = -2 pi 7^{-1/4} I
        let expect = -2.0 * std::f64::consts::PI * d.powf(-0.25) * i_half;
        let (re, im) = t.final_value.to_pair();
        assert!((re - expect).abs() < 1e-12 && im.abs() < 1e-12);
    }

    #[test]
    fn paths_agree() {
        for (level, h, np, rp) in [(1, 1, 1, 1), (2, 1, 1, 3), (4, 2, 2, 1)] {
            let req = PoincareRequest::new(level, h, np, rp, 120);
            let fast = poincare_b(&req).unwrap();
            let brute = poincare_b(&req.with_path(KloostermanPath::Brute)).unwrap();
            assert!((fast.final_value - brute.final_value).abs_f64() < 1e-8);
            let c = poincare_c(&req).unwrap();
            let from_b = poincare_c_from_b(&req).unwrap();
            assert!((c.final_value - from_b.final_value).abs_f64() < 1e-8);
        }
    }

    #[test]
    fn positive_discriminant_branch() {
        // D' = 1: J_{1/2} terms with the extra 1/Gamma(1/2)
        let req = PoincareRequest::new(1, 1, 1, 3, 1);
        let x = std::f64::consts::PI / 2.0;
        let j = (2.0 / (std::f64::consts::PI * x)).sqrt() * x.sin();
        let k1 = ComplexValue::root_of_unity(-3, 4);
        let expect = ComplexValue::from_f64(0.0, -2.0 * std::f64::consts::PI.sqrt() * j) * k1;
        let got = poincare_b(&req).unwrap().final_value;
        assert!((got - expect).abs_f64() < 1e-12);

        let req = PoincareRequest::new(2, 1, 1, 3, 120);
        let fast = poincare_b(&req).unwrap();
        let brute = poincare_b(&req.with_path(KloostermanPath::Brute)).unwrap();
        assert!((fast.final_value - brute.final_value).abs_f64() < 1e-8);
        assert!(fast.final_value.abs_f64().is_finite());
    }

    #[test]
    fn antisymmetry_and_parity() {
        let req = PoincareRequest::new(1, 1, 1, 1, 200);
        let mut neg = req;
        neg.rprime = -1;
        let a = poincare_c(&req).unwrap().final_value;
        let b = poincare_c(&neg).unwrap().final_value;
        assert!((a + b).abs_f64() < 1e-12);
        let even = PoincareRequest::new(1, 1, 1, 2, 10);
        assert!(matches!(poincare_c(&even), Err(Error::ParityViolation(_))));
    }

    #[test]
    fn exact_targets() {
        assert_eq!(exact_coefficient(class("1A").unwrap(), 1, 1).unwrap(), -90);
        assert_eq!(exact_coefficient(class("1A").unwrap(), 2, 1).unwrap(), -462);
        assert_eq!(exact_coefficient(class("2A").unwrap(), 1, 1).unwrap(), 6);
    }

    #[test]
    fn short_sum_is_close() {
        let (cmp, _) = compare_exact(class("1A").unwrap(), 1, 1, 400).unwrap();
        assert!(cmp.difference < 1.5, "{cmp:?}");
    }
}
