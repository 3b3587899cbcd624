//! The mock modular form H, the weight two forms T_g and the twined forms H_g.

use std::fmt;
use std::sync::OnceLock;

use num::rational::Ratio;
use num::BigRational;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::qseries::{
    eisenstein_e2, eta_power, eta_quotient, exponent, f2_2, lambda_m, EtaQuotientSpec, Exponent,
    FormalQSeries, QSeries,
};
use crate::ring::{rational, Coeff, GaussianRational};

/// Symbolic description of a weight two form as a rational combination of
/// `Lambda_M`, eta quotients and the two level-23 cusp forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Recipe {
    Lambda(u32),
    Eta(EtaQuotientSpec),
    F23a,
    F23b,
    Sum(Vec<(Ratio<i64>, Recipe)>),
}

fn eta(factors: &[(u32, i32)]) -> Recipe {
    Recipe::Eta(EtaQuotientSpec::new(factors, Ratio::from_integer(1)))
}

fn r(n: i64, d: i64) -> Ratio<i64> {
    Ratio::new(n, d)
}

impl Recipe {
    pub fn zero() -> Self {
        Recipe::Sum(Vec::new())
    }

    /// The defining sum behind an `F23a`/`F23b` leaf, or the recipe itself.
    pub fn definition(&self) -> Recipe {
        match self {
            Recipe::F23a => Recipe::Sum(vec![
                (r(1, 1), eta(&[(1, 3), (23, 3), (2, -1), (46, -1)])),
                (r(3, 1), eta(&[(1, 2), (23, 2)])),
                (r(4, 1), eta(&[(1, 1), (2, 1), (23, 1), (46, 1)])),
                (r(4, 1), eta(&[(2, 2), (46, 2)])),
            ]),
            Recipe::F23b => Recipe::Sum(vec![(r(1, 1), eta(&[(1, 2), (23, 2)]))]),
            other => other.clone(),
        }
    }

    /// Flattens into a rational combination of `Lambda` and `Eta` leaves.
    pub fn linear_terms(&self) -> Vec<(Ratio<i64>, Recipe)> {
        match self {
            Recipe::Lambda(_) | Recipe::Eta(_) => vec![(r(1, 1), self.clone())],
            Recipe::F23a | Recipe::F23b => self.definition().linear_terms(),
            Recipe::Sum(parts) => parts
                .iter()
                .flat_map(|(w, p)| {
                    p.linear_terms()
                        .into_iter()
                        .map(move |(v, leaf)| (w * v, leaf))
                })
                .collect(),
        }
    }

    /// Evaluates the recipe with the supplied leaf expansions.
    pub fn evaluate<E: LeafEvaluator>(&self, ev: &E) -> Result<QSeries<E::C>> {
        let mut acc = QSeries::zero(ev.order());
        for (w, leaf) in self.linear_terms() {
            let s = match &leaf {
                Recipe::Lambda(m) => ev.lambda(*m)?,
                Recipe::Eta(spec) => ev.eta(spec)?,
                _ => unreachable!("linear_terms only yields leaves"),
            };
            acc = acc.add(&s.scale_rational(&rational(*w.numer(), *w.denom())));
        }
        Ok(acc)
    }
}

impl fmt::Display for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Recipe::Lambda(m) => write!(f, "Lambda_{m}"),
            Recipe::Eta(spec) => write!(f, "{spec}"),
            Recipe::F23a => write!(f, "f23a"),
            Recipe::F23b => write!(f, "f23b"),
            Recipe::Sum(parts) if parts.is_empty() => write!(f, "0"),
            Recipe::Sum(parts) => {
                for (i, (w, p)) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, " + ")?;
                    }
                    write!(f, "({w})*{p}")?;
                }
                Ok(())
            }
        }
    }
}

/// Supplies expansions of recipe leaves in some coefficient ring, e.g. at
/// infinity or after slashing to another cusp.
pub trait LeafEvaluator {
    type C: Coeff;
    fn order(&self) -> Exponent;
    fn lambda(&self, m: u32) -> Result<QSeries<Self::C>>;
    fn eta(&self, spec: &EtaQuotientSpec) -> Result<QSeries<Self::C>>;
}

/// Expansion at the infinite cusp.
pub struct AtInfinity {
    pub order: Exponent,
}

impl LeafEvaluator for AtInfinity {
    type C = GaussianRational;
    fn order(&self) -> Exponent {
        self.order
    }
    fn lambda(&self, m: u32) -> Result<FormalQSeries> {
        Ok(lambda_m(m as i64, self.order))
    }
    fn eta(&self, spec: &EtaQuotientSpec) -> Result<FormalQSeries> {
        Ok(eta_quotient(spec, self.order))
    }
}

/// One row of the class table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClassData {
    pub label: &'static str,
    /// Number of fixed points in the 24-point permutation representation.
    pub chi: u32,
    /// Order of the element.
    pub n: u32,
    pub h: u32,
    pub recipe: Recipe,
}

impl ConjugacyClassData {
    /// Level `n * h` on which the multiplier becomes trivial.
    pub fn level(&self) -> u32 {
        self.n * self.h
    }

    pub fn to_json(&self) -> Value {
        json!({
            "label": self.label,
            "chi": self.chi,
            "n": self.n,
            "h": self.h,
            "level": self.level(),
            "recipe": self.recipe.to_string(),
        })
    }
}

fn build_table() -> Vec<ConjugacyClassData> {
    use Recipe::{Lambda, Sum};
    let row = |label, chi, n, h, recipe| ConjugacyClassData {
        label,
        chi,
        n,
        h,
        recipe,
    };
    let scaled = |s: i64, f: &[(u32, i32)]| {
        Recipe::Eta(EtaQuotientSpec::new(f, Ratio::from_integer(s)))
    };
    vec![
        row("1A", 24, 1, 1, Recipe::zero()),
        row("2A", 8, 2, 1, Sum(vec![(r(16, 1), Lambda(2))])),
        row("2B", 0, 2, 2, scaled(2, &[(1, 8), (2, -4)])),
        row("3A", 6, 3, 1, Sum(vec![(r(6, 1), Lambda(3))])),
        row("3B", 0, 3, 3, scaled(2, &[(1, 6), (3, -2)])),
        row("4A", 0, 4, 2, scaled(2, &[(2, 8), (4, -4)])),
        row(
            "4B",
            4,
            4,
            1,
            Sum(vec![(r(-4, 1), Lambda(2)), (r(4, 1), Lambda(4))]),
        ),
        row("4C", 0, 4, 4, scaled(2, &[(1, 4), (2, 2), (4, -2)])),
        row("5A", 4, 5, 1, Sum(vec![(r(2, 1), Lambda(5))])),
        row(
            "6A",
            2,
            6,
            1,
            Sum(vec![
                (r(-2, 1), Lambda(2)),
                (r(-2, 1), Lambda(3)),
                (r(2, 1), Lambda(6)),
            ]),
        ),
        row("6B", 0, 6, 6, scaled(2, &[(1, 2), (2, 2), (3, 2), (6, -2)])),
        row("7AB", 3, 7, 1, Sum(vec![(r(1, 1), Lambda(7))])),
        row(
            "8A",
            2,
            8,
            1,
            Sum(vec![(r(-1, 1), Lambda(4)), (r(1, 1), Lambda(8))]),
        ),
        row("10A", 0, 10, 2, scaled(2, &[(1, 3), (2, 1), (5, 1), (10, -1)])),
        row(
            "11A",
            2,
            11,
            1,
            Sum(vec![
                (r(2, 5), Lambda(11)),
                (r(-22, 5), eta(&[(1, 2), (11, 2)])),
            ]),
        ),
        row(
            "12A",
            0,
            12,
            2,
            scaled(2, &[(1, 3), (4, 2), (6, 3), (2, -1), (3, -1), (12, -2)]),
        ),
        row(
            "12B",
            0,
            12,
            12,
            scaled(2, &[(1, 4), (4, 1), (6, 1), (2, -1), (12, -1)]),
        ),
        row(
            "14AB",
            1,
            14,
            1,
            Sum(vec![
                (r(-1, 3), Lambda(2)),
                (r(-1, 3), Lambda(7)),
                (r(1, 3), Lambda(14)),
                (r(-14, 3), eta(&[(1, 1), (2, 1), (7, 1), (14, 1)])),
            ]),
        ),
        row(
            "15AB",
            1,
            15,
            1,
            Sum(vec![
                (r(-1, 4), Lambda(3)),
                (r(-1, 4), Lambda(5)),
                (r(1, 4), Lambda(15)),
                (r(-15, 4), eta(&[(1, 1), (3, 1), (5, 1), (15, 1)])),
            ]),
        ),
        row(
            "21AB",
            0,
            21,
            3,
            Sum(vec![
                (r(7, 3), eta(&[(1, 3), (7, 3), (3, -1), (21, -1)])),
                (r(-1, 3), eta(&[(1, 6), (3, -2)])),
            ]),
        ),
        row(
            "23AB",
            1,
            23,
            1,
            Sum(vec![
                (r(1, 11), Lambda(23)),
                (r(-23, 11), Recipe::F23a),
                (r(-69, 11), Recipe::F23b),
            ]),
        ),
    ]
}

/// All 21 class rows, in table order.
pub fn classes() -> &'static [ConjugacyClassData] {
    static TABLE: OnceLock<Vec<ConjugacyClassData>> = OnceLock::new();
    TABLE.get_or_init(build_table)
}

/// Looks a class up by label; `7A` and `7B` both resolve to the `7AB` row.
pub fn class(label: &str) -> Result<&'static ConjugacyClassData> {
    let want = label.trim().to_ascii_uppercase();
    let table = classes();
    if let Some(c) = table.iter().find(|c| c.label == want) {
        return Ok(c);
    }
    if want.len() >= 2 {
        let (num, letter) = want.split_at(want.len() - 1);
        if let Some(c) = table.iter().find(|c| {
            c.label.len() == num.len() + 2
                && c.label.starts_with(num)
                && c.label[num.len()..].contains(letter)
        }) {
            return Ok(c);
        }
    }
    Err(Error::UnknownClassLabel(label.to_string()))
}

/// Canonical text of the (label, chi, n, h, recipe) table, one row per line.
pub fn table_canonical_text() -> String {
    classes()
        .iter()
        .map(|c| format!("{},{},{},{},{}\n", c.label, c.chi, c.n, c.h, c.recipe))
        .collect()
}

/// Position-weighted integer summary of the numeric table columns.
pub fn table_fingerprint() -> u64 {
    classes()
        .iter()
        .enumerate()
        .map(|(i, c)| (i as u64 + 1) * (c.chi as u64 + 100 * c.n as u64 + 10_000 * c.h as u64))
        .sum()
}

/// A q-expansion whose leading term is `-2 q^{-1/8}`.
#[derive(Clone, Debug, PartialEq)]
pub struct MockFormExpansion {
    pub series: FormalQSeries,
}

impl MockFormExpansion {
    /// Coefficient of `q^{n - 1/8}`.
    pub fn coefficient(&self, n: i64) -> GaussianRational {
        self.series.coeff(exponent(8 * n - 1, 8))
    }

    /// The sequence of coefficients of `q^{n - 1/8}` for `n = 0, 1, ...`
    /// below the truncation.
    pub fn coefficients(&self) -> Vec<GaussianRational> {
        let mut out = Vec::new();
        let mut n = 0;
        while exponent(8 * n - 1, 8) < self.series.trunc() {
            out.push(self.coefficient(n));
            n += 1;
        }
        out
    }

    pub fn to_json(&self) -> Value {
        self.series.to_json()
    }
}

fn check_order(order: Exponent) -> Result<()> {
    if order <= exponent(-1, 8) {
        return Err(Error::InvalidArgument(format!(
            "order must exceed -1/8, got {order}"
        )));
    }
    Ok(())
}

/// `H = (-2 E_2 + 48 F_2^(2)) / eta^3`.
pub fn mock_h(order: Exponent) -> Result<MockFormExpansion> {
    check_order(order)?;
    let work = order + exponent(1, 8);
    let e2: FormalQSeries = eisenstein_e2(work);
    let f: FormalQSeries = f2_2(work);
    let num = e2
        .scale_rational(&rational(-2, 1))
        .add(&f.scale_rational(&rational(48, 1)));
    let eta_inv: FormalQSeries = eta_power(-3, order.max(exponent(1, 8)));
    Ok(MockFormExpansion {
        series: num.mul(&eta_inv).truncate(order),
    })
}

/// `T_g` at the infinite cusp.
pub fn t_g(class: &ConjugacyClassData, order: Exponent) -> Result<FormalQSeries> {
    class.recipe.evaluate(&AtInfinity { order })
}

/// `T_g` by label.
pub fn t_g_by_label(label: &str, order: Exponent) -> Result<FormalQSeries> {
    t_g(class(label)?, order)
}

/// `H_g = (chi/24) H - T_g / eta^3`.
pub fn h_g(class: &ConjugacyClassData, order: Exponent) -> Result<MockFormExpansion> {
    check_order(order)?;
    let h = mock_h(order)?;
    let work = order + exponent(1, 8);
    let t = t_g(class, work)?;
    let eta_inv: FormalQSeries = eta_power(-3, order.max(exponent(1, 8)));
    let twist = t.mul(&eta_inv);
    let series = h
        .series
        .scale_rational(&rational(class.chi as i64, 24))
        .sub(&twist)
        .truncate(order);
    Ok(MockFormExpansion { series })
}

/// Expected constant term `2 - chi/12` of `T_g`.
pub fn expected_t_constant(class: &ConjugacyClassData) -> BigRational {
    rational(24 - class.chi as i64, 12)
}
