//! JSON reports and human-readable witnesses.

use std::collections::BTreeMap;
use std::io::Write;

use serde::Serialize;

use braidlike_core::{Check, Matrix, Relation, Scalar, Witness};

#[derive(Debug, Serialize)]
pub struct TrialResult {
    pub check: Check,
    pub trial: usize,
    /// The random instance drawn for this trial, when none was given.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub params: Option<BTreeMap<String, Scalar>>,
    pub passed: bool,
    pub witness: Option<Witness>,
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub source: String,
    pub relation: Relation,
    pub m: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub params: Option<BTreeMap<String, Scalar>>,
    pub seed: u64,
    pub trials: usize,
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub results: Vec<TrialResult>,
}

/// A chain operator in the matrix format plus the chain metadata.
#[derive(Debug, Serialize)]
pub struct MatrixWithMeta {
    #[serde(flatten)]
    pub matrix: Matrix,
    pub n: usize,
    pub m: usize,
    pub z: Scalar,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<Scalar>,
}

/// Pretty JSON on stdout. A closed pipe (`| head`) is not an error.
pub fn emit_json<T: Serialize + ?Sized>(value: &T) -> std::io::Result<()> {
    let mut out = std::io::stdout().lock();
    let written =
        serde_json::to_writer_pretty(&mut out, value).map_err(std::io::Error::from).and_then(|()| writeln!(out));
    match written {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        other => other,
    }
}

pub fn print_witness(label: &str, w: &Witness) {
    eprintln!("FAIL {label}: {} (entry ({}, {}), residual {})", w.desc, w.row, w.col, w.residual);
}
