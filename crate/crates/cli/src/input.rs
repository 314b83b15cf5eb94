//! Shared input handling: boundary samples come from a CSV file or from the
//! built-in catalog.

use std::path::PathBuf;

use clap::Args;
use windext::catalog::make_case;
use windext::grid::{BoundaryFunction, CircleGrid};
use windext::io::read_samples_csv;

use crate::CliError;

/// Largest grid accepted on the command line.
pub const MAX_GRID_N: usize = 16384;

#[derive(Debug, Args)]
pub struct InputArgs {
    /// CSV sample file with header `theta,re,im`.
    #[arg(long = "in", value_name = "FILE", conflicts_with = "catalog")]
    pub input: Option<PathBuf>,

    /// Catalog case name (see `catalog list`).
    #[arg(long, value_name = "NAME")]
    pub catalog: Option<String>,

    /// Catalog case parameter, `key=value`; repeatable.
    #[arg(long = "param", value_name = "K=V")]
    pub params: Vec<String>,

    /// Grid size: a power of two between 64 and 16384.
    #[arg(long, default_value_t = 2048, value_name = "N")]
    pub grid_n: usize,
}

impl InputArgs {
    pub fn grid(&self) -> Result<CircleGrid, CliError> {
        if self.grid_n > MAX_GRID_N {
            return Err(CliError::data(format!(
                "grid size {} exceeds the maximum {MAX_GRID_N}",
                self.grid_n
            )));
        }
        CircleGrid::new(self.grid_n).map_err(CliError::from)
    }

    pub fn parsed_params(&self) -> Result<Vec<(String, String)>, CliError> {
        self.params
            .iter()
            .map(|p| {
                p.split_once('=')
                    .map(|(k, v)| (k.to_string(), v.to_string()))
                    .ok_or_else(|| CliError::usage(format!("parameter `{p}` must be key=value")))
            })
            .collect()
    }

    pub fn load(&self) -> Result<BoundaryFunction, CliError> {
        let grid = self.grid()?;
        match (&self.input, &self.catalog) {
            (Some(path), None) => Ok(read_samples_csv(path, grid)?),
            (None, Some(name)) => {
                let params = self.parsed_params()?;
                Ok(make_case(name, &params, grid)?.f)
            }
            (None, None) => Err(CliError::usage(
                "provide boundary samples with --in FILE or --catalog NAME".into(),
            )),
            (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
        }
    }
}
