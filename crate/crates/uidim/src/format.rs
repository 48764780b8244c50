//! JSON family and expression files, CSV tables.
//!
//! Family file:
//!
//! ```json
//! {"universe": ["a", "b", "c"], "sets": [["a"], ["a", "b"]]}
//! ```
//!
//! Expression file, either bare or wrapped with an explicit universe:
//!
//! ```json
//! {"universe": ["a", "b"], "expr": {"op": "union", "children": [
//!     {"op": "chain", "sets": [["a"], ["a", "b"]]},
//!     {"op": "det", "set": ["b"]}]}}
//! ```
//!
//! Operators: `union`, `intersect` (optional `k` and `bounded` child index,
//! given together), `chain`, `det`, `explicit` (optional `dim`). A bare
//! expression takes its universe from element names in order of first
//! appearance.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use uidim_core::rules::{CardinalityBound, FamilyExpr};
use uidim_core::sampling::TrialBatch;
use uidim_core::rademacher::RadReport;
use uidim_core::{GroundSet, SetFamily, Subset};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("{path}: line {line}, column {column}: {message}")]
    Json {
        path: PathBuf,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: {message}")]
    Schema { path: PathBuf, message: String },
    #[error("{path}: {source}")]
    Invalid { path: PathBuf, source: uidim_core::Error },
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl FormatError {
    fn json(path: &Path, e: serde_json::Error) -> Self {
        FormatError::Json {
            path: path.to_owned(),
            line: e.line(),
            column: e.column(),
            message: strip_position(&e.to_string()),
        }
    }
}

fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_owned(),
        None => msg.to_owned(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyFile {
    pub universe: Vec<String>,
    pub sets: Vec<Vec<String>>,
}

impl FamilyFile {
    pub fn from_family(f: &SetFamily) -> Self {
        let g = f.ground();
        FamilyFile {
            universe: g.names().to_vec(),
            sets: f.sets().iter().map(|s| names(g, s)).collect(),
        }
    }

    pub fn into_family(self) -> Result<SetFamily, uidim_core::Error> {
        let ground = Arc::new(GroundSet::new(self.universe)?);
        SetFamily::from_names(ground, &self.sets)
    }
}

pub fn names(g: &GroundSet, s: &Subset) -> Vec<String> {
    g.element_names(s).map(str::to_owned).collect()
}

fn read(path: &Path) -> Result<String, FormatError> {
    fs::read_to_string(path).map_err(|source| FormatError::Read {
        path: path.to_owned(),
        source,
    })
}

pub fn parse_family(text: &str, path: &Path) -> Result<SetFamily, FormatError> {
    let file: FamilyFile = serde_json::from_str(text).map_err(|e| FormatError::json(path, e))?;
    file.into_family().map_err(|source| FormatError::Invalid {
        path: path.to_owned(),
        source,
    })
}

pub fn load_family(path: &Path) -> Result<SetFamily, FormatError> {
    parse_family(&read(path)?, path)
}

pub fn write_family(path: &Path, f: &SetFamily) -> Result<(), FormatError> {
    write_json(path, &serde_json::to_value(FamilyFile::from_family(f)).expect("plain data"))
}

/// Serialized form of [`FamilyExpr`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase", deny_unknown_fields)]
pub enum ExprNode {
    Union {
        children: Vec<ExprNode>,
    },
    Intersect {
        children: Vec<ExprNode>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        k: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        bounded: Option<usize>,
    },
    Chain {
        sets: Vec<Vec<String>>,
    },
    Det {
        set: Vec<String>,
    },
    Explicit {
        sets: Vec<Vec<String>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        dim: Option<u32>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExprFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub universe: Option<Vec<String>>,
    pub expr: ExprNode,
}

impl ExprNode {
    fn collect_names(&self, out: &mut Vec<String>) {
        let mut push = |sets: &[Vec<String>]| {
            for n in sets.iter().flatten() {
                if !out.contains(n) {
                    out.push(n.clone());
                }
            }
        };
        match self {
            ExprNode::Union { children } | ExprNode::Intersect { children, .. } => {
                children.iter().for_each(|c| c.collect_names(out))
            }
            ExprNode::Chain { sets } | ExprNode::Explicit { sets, .. } => push(sets),
            ExprNode::Det { set } => push(std::slice::from_ref(set)),
        }
    }

    pub fn to_expr(&self, ground: &Arc<GroundSet>) -> Result<FamilyExpr, String> {
        let subset = |s: &[String]| ground.subset(s).map_err(|e| e.to_string());
        Ok(match self {
            ExprNode::Union { children } => {
                FamilyExpr::Union(children.iter().map(|c| c.to_expr(ground)).collect::<Result<_, _>>()?)
            }
            ExprNode::Intersect { children, k, bounded } => {
                let bounded = match (k, bounded) {
                    (Some(k), Some(child)) => Some(CardinalityBound { child: *child, k: *k }),
                    (None, None) => None,
                    _ => return Err("intersect needs both `k` and `bounded`, or neither".into()),
                };
                FamilyExpr::Intersect {
                    children: children.iter().map(|c| c.to_expr(ground)).collect::<Result<_, _>>()?,
                    bounded,
                }
            }
            ExprNode::Chain { sets } => FamilyExpr::Chain(sets.iter().map(|s| subset(s)).collect::<Result<_, _>>()?),
            ExprNode::Det { set } => FamilyExpr::Deterministic(subset(set)?),
            ExprNode::Explicit { sets, dim } => FamilyExpr::Explicit {
                family: SetFamily::from_names(ground.clone(), sets).map_err(|e| e.to_string())?,
                declared_dim: *dim,
            },
        })
    }

    pub fn from_expr(e: &FamilyExpr, ground: &GroundSet) -> Self {
        let list = |sets: &[Subset]| sets.iter().map(|s| names(ground, s)).collect();
        match e {
            FamilyExpr::Union(c) => ExprNode::Union {
                children: c.iter().map(|c| Self::from_expr(c, ground)).collect(),
            },
            FamilyExpr::Intersect { children, bounded } => ExprNode::Intersect {
                children: children.iter().map(|c| Self::from_expr(c, ground)).collect(),
                k: bounded.map(|b| b.k),
                bounded: bounded.map(|b| b.child),
            },
            FamilyExpr::Chain(sets) => ExprNode::Chain { sets: list(sets) },
            FamilyExpr::Deterministic(s) => ExprNode::Det { set: names(ground, s) },
            FamilyExpr::Explicit { family, declared_dim } => ExprNode::Explicit {
                sets: list(family.sets()),
                dim: *declared_dim,
            },
        }
    }
}

/// A parsed expression file: the ground set and the expression over it.
#[derive(Debug, Clone)]
pub struct LoadedExpr {
    pub ground: Arc<GroundSet>,
    pub expr: FamilyExpr,
}

pub fn parse_expr(text: &str, path: &Path) -> Result<LoadedExpr, FormatError> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| FormatError::json(path, e))?;
    let schema = |message: String| FormatError::Schema {
        path: path.to_owned(),
        message,
    };
    let file: ExprFile = if value.get("expr").is_some() {
        serde_json::from_value(value).map_err(|e| schema(e.to_string()))?
    } else {
        ExprFile {
            universe: None,
            expr: serde_json::from_value(value).map_err(|e| schema(e.to_string()))?,
        }
    };
    let universe = file.universe.clone().unwrap_or_else(|| {
        let mut names = Vec::new();
        file.expr.collect_names(&mut names);
        names
    });
    let ground = Arc::new(GroundSet::new(universe).map_err(|source| FormatError::Invalid {
        path: path.to_owned(),
        source,
    })?);
    let expr = file.expr.to_expr(&ground).map_err(schema)?;
    Ok(LoadedExpr { ground, expr })
}

pub fn load_expr(path: &Path) -> Result<LoadedExpr, FormatError> {
    parse_expr(&read(path)?, path)
}

pub fn write_json(path: &Path, value: &serde_json::Value) -> Result<(), FormatError> {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    fs::write(path, text).map_err(|source| FormatError::Write {
        path: path.to_owned(),
        source,
    })
}

/// `trial_index, chosen_set_size, reds, imbalance, threshold, exceeded`.
pub fn write_trials_csv<W: Write>(out: W, batch: &TrialBatch) -> Result<(), FormatError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["trial_index", "chosen_set_size", "reds", "imbalance", "threshold", "exceeded"])?;
    for (i, r) in batch.records.iter().enumerate() {
        w.write_record([
            i.to_string(),
            r.size.to_string(),
            r.reds.to_string(),
            r.imbalance.to_string(),
            r.bound_value.map_or_else(String::new, |b| b.to_string()),
            r.exceeded.to_string(),
        ])?;
    }
    w.flush().map_err(|e| FormatError::Csv(e.into()))?;
    Ok(())
}

/// `j, count, rad, slice_bound` per cardinality slice.
pub fn write_slices_csv<W: Write>(out: W, report: &RadReport) -> Result<(), FormatError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["j", "count", "rad", "slice_bound"])?;
    for s in &report.slices {
        w.write_record([s.j.to_string(), s.count.to_string(), s.value.to_string(), s.bound.to_string()])?;
    }
    w.flush().map_err(|e| FormatError::Csv(e.into()))?;
    Ok(())
}
