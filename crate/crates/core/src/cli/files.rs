//! JSON wire formats: algebra files, diagram files, identity files.
//!
//! Operation tables are nested arrays, one level per argument, the first
//! argument outermost. All integers are carrier indices.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

use crate::algebra::{AlgRef, FinAlgebra, Homomorphism, OpTable};
use crate::error::{Error, Result};
use crate::reflection::IdentitySet;
use crate::relcore::Carrier;

/// A file read as input, with the digest used to detect stale replays.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputRef {
    pub path: String,
    pub sha256: String,
}

impl InputRef {
    pub fn of_bytes(path: &Path, bytes: &[u8]) -> Self {
        InputRef {
            path: path.display().to_string(),
            sha256: hex::encode(Sha256::digest(bytes)),
        }
    }

    /// Whether the file still has the recorded digest.
    pub fn is_current(&self) -> bool {
        fs::read(&self.path)
            .map(|b| hex::encode(Sha256::digest(&b)) == self.sha256)
            .unwrap_or(false)
    }
}

fn read(path: &Path) -> Result<(Value, InputRef)> {
    let bytes = fs::read(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    let v = serde_json::from_slice(&bytes).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    let abs = fs::canonicalize(path).unwrap_or_else(|_| path.to_path_buf());
    Ok((v, InputRef::of_bytes(&abs, &bytes)))
}

fn nested(v: &Value, depth: usize, size: usize, op: &str, idx: &mut Vec<usize>, out: &mut Vec<usize>) -> Result<()> {
    let at = || {
        if idx.is_empty() {
            String::new()
        } else {
            idx.iter().map(|i| format!("[{i}]")).collect()
        }
    };
    if depth == 0 {
        let Some(x) = v.as_u64() else {
            return Err(Error::Input(format!("operation `{op}` entry {} is not an index: {v}", at())));
        };
        if x as usize >= size {
            return Err(Error::Input(format!(
                "operation `{op}` entry {} = {x} out of range for size {size}",
                at()
            )));
        }
        out.push(x as usize);
        return Ok(());
    }
    let Some(items) = v.as_array() else {
        return Err(Error::Input(format!("operation `{op}` at {} must be an array", at())));
    };
    if items.len() != size {
        return Err(Error::Input(format!(
            "operation `{op}` at {} has {} entries, expected {size}",
            at(),
            items.len()
        )));
    }
    for (i, item) in items.iter().enumerate() {
        idx.push(i);
        nested(item, depth - 1, size, op, idx, out)?;
        idx.pop();
    }
    Ok(())
}

fn unnest(table: &[usize], depth: usize, size: usize) -> Value {
    if depth == 0 {
        return Value::from(table[0]);
    }
    let stride = size.pow(depth as u32 - 1);
    Value::Array((0..size).map(|i| unnest(&table[i * stride..], depth - 1, size)).collect())
}

pub fn algebra_from_json(v: &Value) -> Result<FinAlgebra> {
    let obj = v.as_object().ok_or_else(|| Error::Input("algebra must be a JSON object".into()))?;
    let name = obj.get("name").and_then(Value::as_str).unwrap_or("A").to_string();
    let size = obj
        .get("size")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Input(format!("algebra `{name}`: missing integer \"size\"")))? as usize;
    let carrier = match obj.get("labels") {
        None | Some(Value::Null) => Carrier::new(size),
        Some(l) => {
            let labels: Vec<String> = serde_json::from_value(l.clone())
                .map_err(|e| Error::Input(format!("algebra `{name}`: labels: {e}")))?;
            if labels.len() != size {
                return Err(Error::Input(format!(
                    "algebra `{name}`: {} labels for size {size}",
                    labels.len()
                )));
            }
            Carrier::with_labels(labels)
        }
    };
    let mut ops = Vec::new();
    if let Some(o) = obj.get("operations") {
        let o = o
            .as_object()
            .ok_or_else(|| Error::Input(format!("algebra `{name}`: \"operations\" must be an object")))?;
        for (op, spec) in o {
            let arity = spec
                .get("arity")
                .and_then(Value::as_u64)
                .ok_or_else(|| Error::Input(format!("operation `{op}`: missing integer \"arity\"")))?
                as usize;
            let table = spec
                .get("table")
                .ok_or_else(|| Error::Input(format!("operation `{op}`: missing \"table\"")))?;
            let mut flat = Vec::new();
            nested(table, arity, size, op, &mut Vec::new(), &mut flat)?;
            ops.push(OpTable::new(op.clone(), arity, flat));
        }
    }
    FinAlgebra::new(name, carrier, ops)
}

pub fn algebra_to_json(alg: &FinAlgebra) -> Value {
    let mut ops = Map::new();
    for (k, sym) in alg.signature().ops().iter().enumerate() {
        let mut o = Map::new();
        o.insert("arity".into(), Value::from(sym.arity));
        o.insert("table".into(), unnest(alg.table(k), sym.arity, alg.size()));
        ops.insert(sym.name.clone(), Value::Object(o));
    }
    let mut obj = Map::new();
    obj.insert("name".into(), Value::from(alg.name()));
    obj.insert("size".into(), Value::from(alg.size()));
    obj.insert("operations".into(), Value::Object(ops));
    if let Some(l) = &alg.carrier().labels {
        obj.insert("labels".into(), Value::from(l.clone()));
    }
    Value::Object(obj)
}

pub fn load_algebra(path: &Path) -> Result<(FinAlgebra, InputRef)> {
    let (v, input) = read(path)?;
    let alg = algebra_from_json(&v).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    Ok((alg, input))
}

pub fn load_identities(path: &Path) -> Result<(IdentitySet, InputRef)> {
    let (v, input) = read(path)?;
    let ids = serde_json::from_value(v).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    Ok((ids, input))
}

/// Algebras are given by a path relative to the diagram file or inline.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraSource {
    Path(String),
    Inline(Value),
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct DiagramFile {
    pub algebras: BTreeMap<String, AlgebraSource>,
    pub maps: BTreeMap<String, Vec<usize>>,
}

impl DiagramFile {
    pub fn with_algebra(mut self, name: &str, alg: &FinAlgebra) -> Self {
        self.algebras.insert(name.into(), AlgebraSource::Inline(algebra_to_json(alg)));
        self
    }

    pub fn with_map(mut self, name: &str, h: &Homomorphism) -> Self {
        self.maps.insert(name.into(), h.map().to_vec());
        self
    }

    pub fn to_string_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("diagram files serialize")
    }
}

/// A diagram file with its algebras loaded.
#[derive(Debug, Clone)]
pub struct LoadedDiagram {
    pub algebras: BTreeMap<String, AlgRef>,
    pub maps: BTreeMap<String, Vec<usize>>,
    pub inputs: Vec<InputRef>,
}

impl LoadedDiagram {
    pub fn from_file(file: &DiagramFile, dir: &Path) -> Result<(Self, Vec<InputRef>)> {
        let mut algebras = BTreeMap::new();
        let mut inputs = Vec::new();
        for (name, src) in &file.algebras {
            let alg = match src {
                AlgebraSource::Path(p) => {
                    let path: PathBuf = dir.join(p);
                    let (alg, input) = load_algebra(&path)?;
                    inputs.push(input);
                    alg
                }
                AlgebraSource::Inline(v) => {
                    algebra_from_json(v).map_err(|e| Error::Input(format!("algebra `{name}`: {e}")))?
                }
            };
            algebras.insert(name.clone(), alg.into_ref());
        }
        let d = LoadedDiagram {
            algebras,
            maps: file.maps.clone(),
            inputs: inputs.clone(),
        };
        Ok((d, inputs))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let (v, input) = read(path)?;
        let file: DiagramFile =
            serde_json::from_value(v).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
        let dir = path.parent().unwrap_or(Path::new("."));
        let (mut d, _) = Self::from_file(&file, dir)?;
        d.inputs.insert(0, input);
        Ok(d)
    }

    pub fn alg(&self, name: &str) -> Result<AlgRef> {
        self.algebras
            .get(name)
            .cloned()
            .ok_or_else(|| Error::Input(format!("diagram: missing algebra `{name}`")))
    }

    pub fn has_map(&self, name: &str) -> bool {
        self.maps.contains_key(name)
    }

    /// The map `name: src → dst`, validated as a homomorphism.
    pub fn hom(&self, name: &str, src: &str, dst: &str) -> Result<Homomorphism> {
        let map = self
            .maps
            .get(name)
            .ok_or_else(|| Error::Input(format!("diagram: missing map `{name}`")))?;
        Homomorphism::new(self.alg(src)?, self.alg(dst)?, map.clone())
            .map_err(|e| Error::Input(format!("map `{name}`: {e}")))
    }
}
