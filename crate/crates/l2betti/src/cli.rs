use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use l2betti_core::groups::split_top_level;

use crate::config::{parse_time, Command, RunConfig, Time};
use crate::error::CliError;
use crate::formats::Format;

#[derive(Debug, Parser)]
#[command(name = "l2betti", version, about = "Delocalised L2-Betti numbers of free products and products of free groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Sub,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads for the heat grid.
    #[arg(long, env = "L2BETTI_THREADS", global = true)]
    pub threads: Option<usize>,
}

#[derive(Debug, Args)]
pub struct GroupArgs {
    /// Group spec such as `Z2*Z3`, `F2`, `F2xF2xZ2` or `@table.json`.
    #[arg(long)]
    pub group: String,
}

#[derive(Debug, Subcommand)]
pub enum Sub {
    /// Exact Betti numbers from the K-class of the Kazhdan projection.
    Betti {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value_t = 1)]
        degree: usize,
        /// Conjugacy class representatives, comma separated.
        #[arg(long, alias = "class")]
        classes: Vec<String>,
    },
    /// Heat-trace scan over times and ball radii.
    Heat {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value_t = 1)]
        degree: usize,
        #[arg(long, alias = "classes")]
        class: Vec<String>,
        #[arg(long = "t", value_delimiter = ',', default_value = "2,5,10")]
        t: Vec<String>,
        #[arg(long, value_delimiter = ',', default_value = "4,6,8")]
        radius: Vec<usize>,
        /// Taylor order for exact rows.
        #[arg(long)]
        order: Option<usize>,
        /// Times for exact rows; defaults to the whole schedule.
        #[arg(long = "exact-t", value_delimiter = ',')]
        exact_t: Vec<String>,
        #[arg(long, default_value_t = l2betti_core::spectral::DEFAULT_TOLERANCE)]
        tolerance: f64,
    },
    /// Exact identity checks for the family of a group.
    Verify {
        #[command(flatten)]
        group: GroupArgs,
    },
    /// Coboundaries and Laplacians of the standard complex.
    Complex {
        #[command(flatten)]
        group: GroupArgs,
        /// Print only this Laplacian.
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long = "max-degree")]
        max_degree: Option<usize>,
    },
}

fn times(raw: &[String]) -> Result<Vec<Time>, CliError> {
    raw.iter().map(|t| parse_time(t)).collect()
}

/// Splits class lists at commas outside parentheses, so `(a,f),e` is two classes.
fn class_list(raw: Vec<String>) -> Vec<String> {
    raw.iter()
        .flat_map(|item| split_top_level(item))
        .map(|c| c.trim().to_string())
        .filter(|c| !c.is_empty())
        .collect()
}

impl Cli {
    pub fn into_config(self) -> Result<RunConfig, CliError> {
        let mut config = match self.command {
            Sub::Betti { group, degree, classes } => {
                let mut c = RunConfig::new(Command::Betti, group.group);
                c.degree = Some(degree);
                c.classes = class_list(classes);
                c
            }
            Sub::Heat { group, degree, class, t, radius, order, exact_t, tolerance } => {
                let mut c = RunConfig::new(Command::Heat, group.group);
                c.degree = Some(degree);
                c.classes = class_list(class);
                c.t_schedule = times(&t)?;
                c.radius_schedule = radius;
                c.order = order;
                c.exact_times = times(&exact_t)?;
                c.tolerance = tolerance;
                c
            }
            Sub::Verify { group } => RunConfig::new(Command::Verify, group.group),
            Sub::Complex { group, degree, max_degree } => {
                let mut c = RunConfig::new(Command::Complex, group.group);
                c.degree = degree;
                c.max_degree = max_degree;
                c
            }
        };
        config.format = self.format;
        config.out = self.out;
        config.threads = self.threads;
        Ok(config)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heat_flags() {
        let cli = Cli::try_parse_from([
            "l2betti", "heat", "--group", "Z2*Z3", "--class", "e,s", "--t", "1/2,1", "--radius", "4,8", "--format", "csv",
        ])
        .unwrap();
        let c = cli.into_config().unwrap();
        assert_eq!(c.command, Command::Heat);
        assert_eq!(c.classes, ["e", "s"]);
        assert_eq!(c.t_schedule.len(), 2);
        assert_eq!(c.radius_schedule, [4, 8]);
        assert_eq!(c.format, Format::Csv);
    }

    #[test]
    fn tuple_classes_keep_their_commas() {
        let cli = Cli::try_parse_from(["l2betti", "betti", "--group", "F2xZ3", "--classes", "(a,f),e", "--classes", "b"]);
        assert_eq!(cli.unwrap().into_config().unwrap().classes, ["(a,f)", "e", "b"]);
    }

    #[test]
    fn complex_degree_is_optional() {
        let c = Cli::try_parse_from(["l2betti", "complex", "--group", "F2"]).unwrap().into_config().unwrap();
        assert_eq!(c.degree, None);
    }
}
