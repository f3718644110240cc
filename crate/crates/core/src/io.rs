//! Versioned JSON documents and file loading.

use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::knotmodel::{KnotSurgeryModel, SCHEMA_VERSION};
use crate::surgery::ManifoldHF;

/// `{"schema": 1, "kind": ..., <body>}`.
#[derive(Debug, Serialize, Deserialize)]
pub struct Document<T> {
    pub schema: u32,
    pub kind: String,
    #[serde(flatten)]
    pub body: T,
}

pub fn to_document<T: Serialize>(kind: &str, body: &T) -> String {
    let doc = Document { schema: SCHEMA_VERSION, kind: kind.to_string(), body };
    let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
    s.push('\n');
    s
}

pub fn from_document<T: DeserializeOwned>(kind: &str, text: &str) -> Result<T> {
    let doc: Document<serde_json::Value> = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if doc.schema != SCHEMA_VERSION {
        return Err(Error::Parse(format!("schema: unsupported version {}", doc.schema)));
    }
    if doc.kind != kind {
        return Err(Error::Parse(format!("kind: expected {kind:?}, found {:?}", doc.kind)));
    }
    serde_json::from_value(doc.body).map_err(|e| Error::Parse(e.to_string()))
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

/// Parses and validates a knot model file.
pub fn load_model(path: &Path) -> Result<KnotSurgeryModel> {
    let text = read(path)?;
    let model = KnotSurgeryModel::from_json(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    model.ensure_valid()?;
    Ok(model)
}

pub fn manifold_to_json(y: &ManifoldHF) -> String {
    to_document("manifold", y)
}

pub fn manifold_from_json(text: &str) -> Result<ManifoldHF> {
    let y: ManifoldHF = from_document("manifold", text)?;
    y.check()?;
    Ok(y)
}

pub fn load_manifold(path: &Path) -> Result<ManifoldHF> {
    manifold_from_json(&read(path)?).map_err(|e| match e {
        Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
        other => other,
    })
}
