#![allow(dead_code)]

use std::path::PathBuf;
use std::process::Command;
use std::str::FromStr;

use num_rational::BigRational;
use serde_json::Value;

pub const FIXTURES: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(FIXTURES).join(format!("{name}.json"))
}

pub fn fixture_names() -> Vec<String> {
    let mut names: Vec<String> = std::fs::read_dir(FIXTURES)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .map(|p| p.file_stem().unwrap().to_string_lossy().into_owned())
        .collect();
    names.sort();
    names
}

pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the built binary.
pub fn qavg(args: &[&str]) -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_qavg")).args(args).output().unwrap();
    Outcome {
        code: out.status.code().expect("exited normally"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

pub fn load(name: &str) -> Value {
    serde_json::from_str(&std::fs::read_to_string(fixture(name)).unwrap()).unwrap()
}

/// Adds `delta` to the real part of the sparse entry at `index` in `list`,
/// inserting the entry when it is absent.
pub fn perturb_entry(list: &mut Value, index: &[usize], delta: &str) {
    let entries = list.as_array_mut().unwrap();
    let idx = Value::from(index.to_vec());
    let pos = entries.iter().position(|e| e[0] == idx);
    let pos = pos.unwrap_or_else(|| {
        entries.push(serde_json::json!([index, ["0", "0"]]));
        entries.len() - 1
    });
    let re = &mut entries[pos][1][0];
    *re = add_to_part(re, delta);
}

/// Adds `delta` to the real part of a dense scalar vector entry.
pub fn perturb_dense(list: &mut Value, i: usize, delta: &str) {
    let re = &mut list[i][0];
    *re = add_to_part(re, delta);
}

fn add_to_part(part: &Value, delta: &str) -> Value {
    match part {
        Value::String(s) => {
            let sum = BigRational::from_str(s).unwrap() + BigRational::from_str(delta).unwrap();
            Value::String(sum.to_string())
        }
        Value::Number(n) => {
            let d = BigRational::from_str(delta).unwrap();
            let d = num_traits::ToPrimitive::to_f64(&d).unwrap();
            Value::from(n.as_f64().unwrap() + d)
        }
        other => panic!("not a scalar part: {other}"),
    }
}

/// Writes `doc` into a fresh temporary file and returns its handle.
pub fn write_temp(doc: &Value) -> tempfile::NamedTempFile {
    let file = tempfile::Builder::new().suffix(".json").tempfile().unwrap();
    std::fs::write(file.path(), serde_json::to_string_pretty(doc).unwrap()).unwrap();
    file
}
