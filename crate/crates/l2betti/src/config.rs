use std::path::PathBuf;

use l2betti_core::ring::parse_rational;
use l2betti_core::spectral::{validate_schedules, DEFAULT_TOLERANCE};
use l2betti_core::Rational;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::error::CliError;
use crate::formats::Format;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Betti,
    Heat,
    Verify,
    Complex,
}

/// A time read from the command line, kept exactly for the exact engine.
#[derive(Clone, Debug, PartialEq)]
pub struct Time {
    pub text: String,
    pub exact: Rational,
}

impl Time {
    pub fn value(&self) -> f64 {
        self.exact.to_f64().unwrap_or(f64::NAN)
    }
}

/// Parses `3`, `1/4` or `0.25` into an exact nonnegative rational.
pub fn parse_time(text: &str) -> Result<Time, CliError> {
    let s = text.trim();
    let bad = || CliError::Input(format!("`{text}` is not a nonnegative number or fraction"));
    let exact = if let Some((whole, frac)) = s.split_once('.') {
        let digits = format!("{whole}{frac}");
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let num: BigInt = digits.parse().map_err(|_| bad())?;
        Rational::new(num, BigInt::from(10u32).pow(frac.len() as u32))
    } else {
        parse_rational(s).map_err(|_| bad())?
    };
    if exact.is_negative() {
        return Err(bad());
    }
    Ok(Time { text: s.to_string(), exact })
}

/// Everything one invocation needs.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub group: String,
    pub command: Command,
    pub degree: Option<usize>,
    pub max_degree: Option<usize>,
    pub classes: Vec<String>,
    pub t_schedule: Vec<Time>,
    pub radius_schedule: Vec<usize>,
    /// Taylor order for exact heat rows; none means float rows only.
    pub order: Option<usize>,
    /// Times for exact rows; defaults to the whole schedule.
    pub exact_times: Vec<Time>,
    pub tolerance: f64,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub threads: Option<usize>,
}

impl RunConfig {
    pub fn new(command: Command, group: impl Into<String>) -> Self {
        Self {
            group: group.into(),
            command,
            degree: None,
            max_degree: None,
            classes: Vec::new(),
            t_schedule: ["2", "5", "10"].iter().map(|t| parse_time(t).unwrap()).collect(),
            radius_schedule: vec![4, 6, 8],
            order: None,
            exact_times: Vec::new(),
            tolerance: DEFAULT_TOLERANCE,
            format: Format::Json,
            out: None,
            threads: None,
        }
    }

    pub fn degree_or(&self, default: usize) -> usize {
        self.degree.unwrap_or(default)
    }

    /// Class words, `e` when none were given.
    pub fn class_words(&self) -> Vec<String> {
        if self.classes.is_empty() {
            vec!["e".to_string()]
        } else {
            self.classes.clone()
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let ts: Vec<f64> = self.t_schedule.iter().map(Time::value).collect();
        validate_schedules(&ts, &self.radius_schedule, self.tolerance)?;
        if self.threads == Some(0) {
            return Err(CliError::Input("thread count must be positive".into()));
        }
        if self.max_degree == Some(0) {
            return Err(CliError::Input("max degree must be positive".into()));
        }
        Ok(())
    }
}
