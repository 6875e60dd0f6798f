#![allow(dead_code)]

use std::path::Path;
use std::process::Command;

use negarr::fields::Rational;
use num_bigint::BigInt;
use serde_json::Value;

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn negarr(args: &[&str], dir: &Path, env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_negarr"));
    cmd.args(args).current_dir(dir).env_remove("NEGARR_BUDGET");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("spawn negarr");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
    }
}

/// Reads `{num, den}` without going through the library's own decoder.
pub fn exact(v: &Value) -> Rational {
    let part = |key: &str| -> BigInt {
        match &v[key] {
            Value::Number(n) => n.to_string().parse().expect("integer"),
            other => panic!("{key} is not a number: {other}"),
        }
    };
    Rational::new(part("num"), part("den"))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Catalog names in the tested parameter ranges.
pub fn catalog_names() -> Vec<String> {
    let mut names: Vec<String> = ["dualhesse", "klein", "wiman", "kgon:4"].map(String::from).to_vec();
    names.extend((3..=12).map(|r| format!("generic:{r}")));
    names.extend((2..=8).map(|d| format!("pencil:{d}")));
    names.extend((3..=12).map(|d| format!("quasipencil:{d}")));
    names.extend((3..=8).map(|n| format!("fermat:{n}")));
    names.extend([2, 3, 4, 5, 7, 8, 9].map(|q| format!("pg2:{q}")));
    names.extend((3..=12).map(|k| format!("kgon:{k}")));
    names.extend([6, 12, 18, 24].map(|k| format!("boroczky:{k}")));
    names.extend(
        ["4,1", "5,1", "7,1", "8,1", "3,3", "6,3", "9,3", "12,3", "9,9", "18,9"].map(|p| format!("cubicgroup:{p}")),
    );
    names
}

pub fn file_name(name: &str) -> String {
    format!("{}.arr", name.replace([':', ','], "_"))
}
