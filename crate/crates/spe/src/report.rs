//! JSON and CSV report files.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use spe_core::analysis::AnalysisReport;
use spe_core::SolveReport;

use crate::SpeError;

/// Per-run solver report written by `spe apply`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApplyReport {
    pub solver: String,
    pub gradient_term: String,
    pub lambda_l: f64,
    pub lambda_ab: f64,
    pub height: usize,
    pub width: usize,
    pub residual_l: f64,
    pub residual_a: f64,
    pub residual_b: f64,
    pub iterations_l: usize,
    pub iterations_a: usize,
    pub iterations_b: usize,
    pub converged_l: bool,
    pub converged_a: bool,
    pub converged_b: bool,
    pub solve_time_l: f64,
    pub solve_time_a: f64,
    pub solve_time_b: f64,
    /// Color conversion plus all three solves, excluding file IO.
    pub wall_time_seconds: f64,
    pub kl_stylized_vs_content: f64,
    pub kl_output_vs_content: f64,
}

impl ApplyReport {
    pub fn set_channels(&mut self, reports: &[SolveReport; 3]) {
        let [l, a, b] = reports;
        self.residual_l = l.residual_norm;
        self.residual_a = a.residual_norm;
        self.residual_b = b.residual_norm;
        self.iterations_l = l.iterations;
        self.iterations_a = a.iterations;
        self.iterations_b = b.iterations;
        self.converged_l = l.converged;
        self.converged_a = a.converged;
        self.converged_b = b.converged;
        self.solve_time_l = l.wall_time_seconds;
        self.solve_time_a = a.wall_time_seconds;
        self.solve_time_b = b.wall_time_seconds;
    }
}

/// Gradient histograms over a shared binning, as written by `spe analyze`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisJson {
    pub bins: usize,
    pub range: f64,
    pub bin_edges: Vec<f64>,
    pub counts_content: Vec<u64>,
    pub counts_stylized: Vec<u64>,
    pub counts_output: Vec<u64>,
    pub p_content: Vec<f64>,
    pub p_stylized: Vec<f64>,
    pub p_output: Vec<f64>,
    pub kl_stylized_vs_content: f64,
    pub kl_output_vs_content: f64,
}

impl From<&AnalysisReport> for AnalysisJson {
    fn from(r: &AnalysisReport) -> Self {
        Self {
            bins: r.content.bins(),
            range: r.content.range(),
            bin_edges: r.content.bin_edges().to_vec(),
            counts_content: r.content.counts().to_vec(),
            counts_stylized: r.stylized.counts().to_vec(),
            counts_output: r.output.counts().to_vec(),
            p_content: r.content.probabilities().to_vec(),
            p_stylized: r.stylized.probabilities().to_vec(),
            p_output: r.output.probabilities().to_vec(),
            kl_stylized_vs_content: r.kl_stylized_vs_content,
            kl_output_vs_content: r.kl_output_vs_content,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CsvRow {
    pub edge_low: f64,
    pub edge_high: f64,
    pub p_content: f64,
    pub p_stylized: f64,
    pub p_output: f64,
}

pub fn csv_rows(r: &AnalysisReport) -> Vec<CsvRow> {
    let edges = r.content.bin_edges();
    (0..r.content.bins())
        .map(|k| CsvRow {
            edge_low: edges[k],
            edge_high: edges[k + 1],
            p_content: r.content.probabilities()[k],
            p_stylized: r.stylized.probabilities()[k],
            p_output: r.output.probabilities()[k],
        })
        .collect()
}

pub fn write_json<T: Serialize>(value: &T, path: &Path) -> Result<(), SpeError> {
    let file = File::create(path).map_err(|source| SpeError::Io {
        path: path.to_owned(),
        source,
    })?;
    let mut w = BufWriter::new(file);
    serde_json::to_writer_pretty(&mut w, value).map_err(|source| SpeError::Json {
        path: path.to_owned(),
        source,
    })?;
    w.write_all(b"\n")
        .and_then(|_| w.flush())
        .map_err(|source| SpeError::Io {
            path: path.to_owned(),
            source,
        })
}

pub fn write_csv(report: &AnalysisReport, path: &Path) -> Result<(), SpeError> {
    let err = |source| SpeError::Csv {
        path: path.to_owned(),
        source,
    };
    let mut w = csv::Writer::from_path(path).map_err(err)?;
    for row in csv_rows(report) {
        w.serialize(row).map_err(err)?;
    }
    w.flush().map_err(|source| SpeError::Io {
        path: path.to_owned(),
        source,
    })
}
