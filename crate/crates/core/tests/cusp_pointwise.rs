//! Exact cusp expansions of `T_g` against direct evaluation of the slashed
//! form at random points of the upper half-plane.

use moonshine_core::cusps::{enumerate_cusps, t_g_at_cusp};
use moonshine_core::matrix::Matrix2;
use moonshine_core::mockforms::{classes, Recipe};
use moonshine_core::qseries::{exponent, sigma1};
use num::complex::Complex64;
use num::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

fn nome(tau: Complex64) -> Complex64 {
    (Complex64::i() * TWO_PI * tau).exp()
}

fn log_eta(tau: Complex64) -> Complex64 {
    let q = nome(tau);
    let mut acc = Complex64::i() * TWO_PI * tau / 24.0;
    let mut qn = q;
    while qn.norm() > 1e-18 {
        acc += (Complex64::new(1.0, 0.0) - qn).ln();
        qn *= q;
    }
    acc
}

fn e2(tau: Complex64) -> Complex64 {
    let q = nome(tau);
    let mut s = Complex64::new(1.0, 0.0);
    let mut qn = q;
    let mut n = 1u64;
    while qn.norm() > 1e-20 {
        s -= 24.0 * sigma1(n) as f64 * qn;
        qn *= q;
        n += 1;
    }
    s
}

fn t_numeric(recipe: &Recipe, tau: Complex64) -> Complex64 {
    recipe
        .linear_terms()
        .into_iter()
        .map(|(w, leaf)| {
            let w = w.to_f64().unwrap();
            match leaf {
                Recipe::Lambda(m) => {
                    let m = m as f64;
                    w * (e2(tau * m) * m * m - e2(tau) * m) / 24.0
                }
                Recipe::Eta(spec) => {
                    let log: Complex64 = spec
                        .factors
                        .iter()
                        .map(|&(m, e)| log_eta(tau * m as f64) * e as f64)
                        .sum();
                    w * spec.scalar.to_f64().unwrap() * log.exp()
                }
                _ => unreachable!(),
            }
        })
        .sum()
}

fn apply(g: &Matrix2, tau: Complex64) -> Complex64 {
    (tau * g.a as f64 + g.b as f64) / (tau * g.c as f64 + g.d as f64)
}

#[test]
fn expansions_match_slashed_values() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let order = exponent(6, 1);
    for class in classes() {
        for cusp in enumerate_cusps(class.n as u64) {
            let exp = t_g_at_cusp(class, &cusp, order).unwrap();
            for _ in 0..3 {
                let tau = Complex64::new(rng.gen_range(-0.5..0.5), rng.gen_range(0.9..1.3));
                let g = cusp.gamma;
                let j = tau * g.c as f64 + g.d as f64;
                let direct = t_numeric(&class.recipe, apply(&g, tau)) / (j * j);
                let got = exp.evaluate(tau);
                assert!(
                    (got - direct).norm() < 1e-8,
                    "{} at {cusp}, tau = {tau}: {got} vs {direct}",
                    class.label
                );
            }
        }
    }
}
