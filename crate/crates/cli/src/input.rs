//! Resolving the generator a command operates on.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use serde::de::DeserializeOwned;

use braidlike_core::catalog::build_family;
use braidlike_core::suite::relation_of;
use braidlike_core::{Error, Family, FamilyInstance, LocalOperator, Matrix, Relation, Scalar};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RelationArg {
    Sigma,
    Tau,
}

#[derive(Args, Debug)]
pub struct GeneratorArgs {
    /// Catalog family: S1..S7, TASEP_S or TASEP_T.
    #[arg(long, conflicts_with_all = ["spec", "matrix"])]
    pub family: Option<Family>,
    /// Local dimension for the TASEP families.
    #[arg(long, default_value_t = 2)]
    pub m: usize,
    /// Parameter assignments, e.g. `a=1,b=2/3` or `rho_1=2,mu_1_2=1/2`.
    #[arg(long, value_delimiter = ',', value_parser = parse_assignment, allow_hyphen_values = true)]
    pub params: Option<Vec<(String, Scalar)>>,
    /// Family instance as JSON: {"family": "S4", "m": 2, "params": {"a": "1", ...}}.
    #[arg(long, conflicts_with = "matrix")]
    pub spec: Option<PathBuf>,
    /// Custom generator as a JSON matrix.
    #[arg(long)]
    pub matrix: Option<PathBuf>,
    /// Relation a custom generator is checked against.
    #[arg(long, value_enum, default_value = "sigma", requires = "matrix")]
    pub relation: RelationArg,
}

/// A generator together with what is known about where it came from.
#[derive(Clone, Debug)]
pub struct Resolved {
    pub op: LocalOperator,
    pub relation: Relation,
    pub spec: Option<FamilyInstance>,
}

impl Resolved {
    pub fn from_spec(spec: FamilyInstance) -> Result<Self, CliError> {
        let op = build_family(&spec)?;
        Ok(Resolved { op, relation: relation_of(spec.family), spec: Some(spec) })
    }

    pub fn label(&self) -> String {
        self.spec.as_ref().map_or_else(|| "matrix".to_string(), |s| s.family.to_string())
    }
}

impl GeneratorArgs {
    /// The generator, failing when the family has no parameters.
    pub fn resolve(&self) -> Result<Resolved, CliError> {
        match self.resolve_optional()? {
            Some(r) => Ok(r),
            None => match self.family {
                Some(family) => {
                    let name = FamilyInstance::new(family, self.m, BTreeMap::new()).required_params().remove(0);
                    Err(Error::MissingParameter { family: family.to_string(), name }.into())
                }
                None => Err(CliError::Usage("one of --family, --spec or --matrix is required".into())),
            },
        }
    }

    /// The generator if fully specified. `None` means a bare `--family`
    /// whose parameters the caller may draw at random.
    pub fn resolve_optional(&self) -> Result<Option<Resolved>, CliError> {
        if let Some(path) = &self.matrix {
            if self.params.is_some() {
                return Err(CliError::Usage("--params cannot be combined with --matrix".into()));
            }
            let mat: Matrix = read_json(path)?;
            let op = LocalOperator::from_matrix(mat)?;
            let relation = match self.relation {
                RelationArg::Sigma => Relation::Sigma,
                RelationArg::Tau => Relation::Tau,
            };
            return Ok(Some(Resolved { op, relation, spec: None }));
        }
        if let Some(path) = &self.spec {
            let mut spec: FamilyInstance = read_json(path)?;
            if let Some(pairs) = &self.params {
                for (k, v) in pairs {
                    spec.params.insert(k.clone(), v.clone());
                }
            }
            check_names(&spec)?;
            spec.validate()?;
            return Resolved::from_spec(spec).map(Some);
        }
        match (self.family, &self.params) {
            (Some(family), Some(pairs)) => Resolved::from_spec(instance_from_pairs(family, self.m, pairs)?).map(Some),
            (Some(family), None) => {
                if !family.is_tasep() && self.m != 2 {
                    return Err(Error::InvalidParameter(format!("{family} is a 4×4 family and needs m = 2")).into());
                }
                Ok(None)
            }
            (None, Some(_)) => Err(CliError::Usage("--params needs --family or --spec".into())),
            (None, None) => Ok(None),
        }
    }
}

pub fn instance_from_pairs(family: Family, m: usize, pairs: &[(String, Scalar)]) -> Result<FamilyInstance, CliError> {
    let mut params = BTreeMap::new();
    for (k, v) in pairs {
        if params.insert(k.clone(), v.clone()).is_some() {
            return Err(Error::InvalidParameter(format!("parameter `{k}` given twice")).into());
        }
    }
    let spec = FamilyInstance::new(family, m, params);
    check_names(&spec)?;
    spec.validate()?;
    Ok(spec)
}

fn check_names(spec: &FamilyInstance) -> Result<(), CliError> {
    let known = spec.required_params();
    if let Some(extra) = spec.params.keys().find(|k| !known.contains(k)) {
        return Err(Error::InvalidParameter(format!(
            "unknown parameter `{extra}` for {} (expected {})",
            spec.family,
            known.join(", ")
        ))
        .into());
    }
    Ok(())
}

/// Parses one `name=value` assignment.
pub fn parse_assignment(text: &str) -> Result<(String, Scalar), String> {
    let (name, value) = text.split_once('=').ok_or_else(|| format!("expected name=value, got `{text}`"))?;
    let name = name.trim();
    if name.is_empty() {
        return Err(format!("empty parameter name in `{text}`"));
    }
    let value: Scalar = value.trim().parse().map_err(|e: Error| e.to_string())?;
    Ok((name.to_string(), value))
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    serde_json::from_str(&text).map_err(|source| CliError::Json { path: path.to_path_buf(), source })
}
