//! Reading and writing model files.
//!
//! A model file is a TOML document:
//!
//! ```toml
//! # per-server arrival rate; jobs arrive at total rate N * lambda
//! lambda = 0.7
//!
//! [[servers]]
//! id = 1
//! speed = 1.0
//!
//! [[types]]
//! servers = [1, 2]
//! prob = 0.125
//! ```
//!
//! Server ids must be exactly `1..=N` (any order). Parse and validation
//! errors name the offending field path.

use crate::error::{Error, Result};
use crate::model::{CompatibilityModel, ServerSet};
use serde::{Deserialize, Serialize};

#[derive(Debug, Serialize, Deserialize)]
struct FileServer {
    id: usize,
    speed: f64,
}

#[derive(Debug, Serialize, Deserialize)]
struct FileType {
    servers: Vec<usize>,
    prob: f64,
}

#[derive(Debug, Serialize, Deserialize)]
struct ModelDoc {
    lambda: f64,
    servers: Vec<FileServer>,
    types: Vec<FileType>,
}

fn file_err(path: &str, source: &str, message: impl Into<String>) -> Error {
    Error::ModelFile {
        path: format!("{source}: {path}"),
        message: message.into(),
    }
}

/// Parses a model document. `source` is used in error messages (a file path
/// or a fixture name).
pub fn parse_model(text: &str, source: &str) -> Result<CompatibilityModel> {
    let doc: ModelDoc = toml::from_str(text).map_err(|e| Error::ModelFile {
        path: source.to_string(),
        message: e.to_string(),
    })?;

    let n = doc.servers.len();
    if n == 0 {
        return Err(file_err("servers", source, "at least one server required"));
    }
    let mut speeds = vec![f64::NAN; n];
    for (i, s) in doc.servers.iter().enumerate() {
        if s.id == 0 || s.id > n {
            return Err(file_err(
                &format!("servers[{i}].id"),
                source,
                format!("id {} outside 1..={n}", s.id),
            ));
        }
        if !speeds[s.id - 1].is_nan() {
            return Err(file_err(
                &format!("servers[{i}].id"),
                source,
                format!("duplicate server id {}", s.id),
            ));
        }
        if !s.speed.is_finite() || s.speed < 0.0 {
            return Err(file_err(
                &format!("servers[{i}].speed"),
                source,
                format!("speed {} must be a non-negative number", s.speed),
            ));
        }
        speeds[s.id - 1] = s.speed;
    }

    let mut types = Vec::with_capacity(doc.types.len());
    for (i, t) in doc.types.iter().enumerate() {
        for (j, &sid) in t.servers.iter().enumerate() {
            if sid == 0 || sid > n {
                return Err(file_err(
                    &format!("types[{i}].servers[{j}]"),
                    source,
                    format!("server id {sid} outside 1..={n}"),
                ));
            }
        }
        let set = ServerSet::from_servers(t.servers.iter().copied()).map_err(|e| {
            file_err(&format!("types[{i}].servers"), source, e.to_string())
        })?;
        if set.len() != t.servers.len() {
            return Err(file_err(
                &format!("types[{i}].servers"),
                source,
                "repeated server id within one type",
            ));
        }
        types.push((set, t.prob));
    }

    CompatibilityModel::new(speeds, types, doc.lambda).map_err(|e| {
        let path = match &e {
            Error::NonPositiveLambda { .. } => "lambda".to_string(),
            Error::ProbabilitySum { .. } => "types".to_string(),
            Error::NonPositiveProbability { index, .. } => format!("types[{index}].prob"),
            Error::EmptyTypeSubset { index } => format!("types[{index}].servers"),
            Error::DuplicateTypeSubset { .. } => "types".to_string(),
            Error::ZeroAverageSpeed => "servers".to_string(),
            _ => "model".to_string(),
        };
        file_err(&path, source, e.to_string())
    })
}

/// Serializes a model to the document format above.
pub fn to_toml(model: &CompatibilityModel) -> String {
    let doc = ModelDoc {
        lambda: model.lambda(),
        servers: model
            .speeds()
            .iter()
            .enumerate()
            .map(|(i, &speed)| FileServer { id: i + 1, speed })
            .collect(),
        types: model
            .job_types()
            .iter()
            .map(|t| FileType {
                servers: t.servers.iter().collect(),
                prob: t.prob,
            })
            .collect(),
    };
    toml::to_string(&doc).expect("model serialization cannot fail")
}
