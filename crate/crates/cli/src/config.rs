use std::path::PathBuf;

use clap::ValueEnum;
use moonshine_core::qseries::parse_exponent;
use moonshine_core::{Exponent, Precision};

use crate::error::{CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, ValueEnum)]
pub enum Verb {
    Classes,
    H,
    Hg,
    Tg,
    Z,
    Zg,
    Phig,
    Table2,
    #[value(name = "zg-cusp-check")]
    ZgCuspCheck,
    Gauss,
    Dedekind,
    Kloosterman,
    #[value(name = "verify-gauss")]
    VerifyGauss,
    #[value(name = "verify-F", alias = "verify-f")]
    VerifyF,
    #[value(name = "verify-reduction")]
    VerifyReduction,
    Poincare,
    #[value(name = "verify-all")]
    VerifyAll,
}

impl Verb {
    pub fn name(self) -> &'static str {
        match self {
            Verb::Classes => "classes",
            Verb::H => "h",
            Verb::Hg => "hg",
            Verb::Tg => "tg",
            Verb::Z => "z",
            Verb::Zg => "zg",
            Verb::Phig => "phig",
            Verb::Table2 => "table2",
            Verb::ZgCuspCheck => "zg-cusp-check",
            Verb::Gauss => "gauss",
            Verb::Dedekind => "dedekind",
            Verb::Kloosterman => "kloosterman",
            Verb::VerifyGauss => "verify-gauss",
            Verb::VerifyF => "verify-F",
            Verb::VerifyReduction => "verify-reduction",
            Verb::Poincare => "poincare",
            Verb::VerifyAll => "verify-all",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

/// Default tolerances.
pub const EXPSUM_TOL: f64 = 1e-9;
pub const REDUCTION_TOL: f64 = 1e-8;
pub const ROUNDING_TOL: f64 = 0.5;
pub const DEFAULT_CMAX: i64 = 2000;
pub const DEFAULT_SEED: u64 = 1;

/// Everything one invocation needs.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub verb: Verb,
    pub classes: Vec<String>,
    pub order: Option<Exponent>,
    pub cmax: Option<i64>,
    pub tol: Option<f64>,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub seed: u64,
    pub fast: bool,
    pub audit: bool,
    pub checksum: bool,
    pub nprime: Option<i64>,
    pub rprime: Option<i64>,
    pub a: Option<i64>,
    pub b: Option<i64>,
    pub c: Option<i64>,
    pub cusp: Option<String>,
    pub precision: Precision,
}

impl RunConfig {
    pub fn new(verb: Verb) -> Self {
        Self {
            verb,
            classes: Vec::new(),
            order: None,
            cmax: None,
            tol: None,
            format: Format::Json,
            out: None,
            seed: DEFAULT_SEED,
            fast: false,
            audit: false,
            checksum: false,
            nprime: None,
            rprime: None,
            a: None,
            b: None,
            c: None,
            cusp: None,
            precision: Precision::default(),
        }
    }

    pub fn with_class(mut self, label: &str) -> Self {
        self.classes.push(label.to_string());
        self
    }

    pub fn with_order(mut self, order: Exponent) -> Self {
        self.order = Some(order);
        self
    }

    pub fn parse_order(s: &str) -> CliResult<Exponent> {
        parse_exponent(s).map_err(|e| CliError::usage(format!("--order: {e}")))
    }

    /// The tolerance for this verb, explicit or default.
    pub fn tolerance(&self) -> f64 {
        self.tol.unwrap_or(match self.verb {
            Verb::VerifyReduction => REDUCTION_TOL,
            Verb::Poincare => ROUNDING_TOL,
            _ => EXPSUM_TOL,
        })
    }

    pub fn single_class(&self) -> CliResult<&str> {
        match self.classes.as_slice() {
            [one] => Ok(one),
            [] => Err(CliError::usage(format!("{} needs --class", self.verb.name()))),
            _ => Err(CliError::usage(format!(
                "{} takes a single --class",
                self.verb.name()
            ))),
        }
    }

    pub fn require(&self, value: Option<i64>, flag: &str) -> CliResult<i64> {
        value.ok_or_else(|| CliError::usage(format!("{} needs --{flag}", self.verb.name())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use moonshine_core::qseries::exponent;

    #[test]
    fn default_tolerances() {
        assert_eq!(RunConfig::new(Verb::Gauss).tolerance(), 1e-9);
        assert_eq!(RunConfig::new(Verb::VerifyReduction).tolerance(), 1e-8);
        assert_eq!(RunConfig::new(Verb::Poincare).tolerance(), 0.5);
        let mut c = RunConfig::new(Verb::Gauss);
        c.tol = Some(1e-3);
        assert_eq!(c.tolerance(), 1e-3);
    }

    #[test]
    fn orders_and_classes() {
        assert_eq!(RunConfig::parse_order("7/8").unwrap(), exponent(7, 8));
        assert!(matches!(RunConfig::parse_order("seven"), Err(CliError::Usage(_))));
        let c = RunConfig::new(Verb::Hg);
        assert!(c.single_class().is_err());
        assert_eq!(c.with_class("2A").single_class().unwrap(), "2A");
    }
}
