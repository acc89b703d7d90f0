use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use tetfield::records::{read_points, write_records};
use tetfield::{evaluate, load_mesh, EvalSet};

use crate::error::CliError;
use crate::scan::{GridSpec, LineSpec};

/// Where the evaluation points come from.
#[derive(Clone, Debug, PartialEq)]
pub enum PointSource {
    File(PathBuf),
    Line(LineSpec),
    Grid(GridSpec),
}

impl PointSource {
    pub fn eval_set(&self) -> Result<EvalSet, CliError> {
        match self {
            PointSource::File(path) => {
                let file = File::open(path).map_err(|e| CliError::Points {
                    path: path.clone(),
                    source: e.into(),
                })?;
                let points = read_points(file).map_err(|source| CliError::Points {
                    path: path.clone(),
                    source,
                })?;
                Ok(EvalSet::explicit(points)?)
            }
            PointSource::Line(spec) => spec.eval_set(),
            PointSource::Grid(spec) => spec.eval_set(),
        }
    }
}

/// Evaluates the mesh at every point and writes the records as CSV. Returns
/// the number of records written.
pub fn run(mesh: &Path, points: &PointSource, out: &Path) -> Result<usize, CliError> {
    let mesh = load_mesh(mesh)?;
    let set = points.eval_set()?;
    let records = evaluate(&mesh, &set);
    let output_error = |source| CliError::Output {
        path: out.to_owned(),
        source,
    };
    let file = File::create(out).map_err(|e| output_error(e.into()))?;
    write_records(BufWriter::new(file), &records).map_err(output_error)?;
    Ok(records.len())
}
