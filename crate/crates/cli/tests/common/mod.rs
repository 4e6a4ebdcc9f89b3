#![allow(dead_code)]

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

pub struct Output {
    pub ok: bool,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    /// Run directory printed on the last stdout line.
    pub fn dir(&self) -> PathBuf {
        let line = self.stdout.lines().last().unwrap_or_default();
        PathBuf::from(line.strip_prefix("results: ").unwrap_or_else(|| panic!("no results line in {:?}", self.stdout)))
    }
}

pub fn chiralqw(args: &[&str]) -> Output {
    let out = Command::new(env!("CARGO_BIN_EXE_chiralqw"))
        .args(args)
        .env_remove("CHIRALQW_THREADS")
        .output()
        .expect("binary runs");
    Output {
        ok: out.status.success(),
        stdout: String::from_utf8_lossy(&out.stdout).into_owned(),
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
    }
}

/// Runs and panics with stderr on failure.
pub fn chiralqw_ok(args: &[&str]) -> Output {
    let out = chiralqw(args);
    assert!(out.ok, "chiralqw {args:?} failed:\n{}", out.stderr);
    out
}

pub fn write_edges(path: &Path, edges: &[(usize, usize)]) {
    let text: String = edges.iter().map(|(a, b)| format!("g{a}\tg{b}\n")).collect();
    fs::write(path, text).unwrap();
}

/// Every file of a run directory except the timing record.
pub fn primary_files(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap())
        .filter(|e| e.file_name() != "timing.json")
        .map(|e| (e.file_name().to_string_lossy().into_owned(), fs::read(e.path()).unwrap()))
        .collect()
}

pub fn report(dir: &Path) -> serde_json::Value {
    serde_json::from_slice(&fs::read(dir.join("report.json")).unwrap()).unwrap()
}

/// Rows of a CSV file as maps from header to field.
pub fn csv_rows(path: &Path) -> Vec<BTreeMap<String, String>> {
    let text = fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    lines.map(|l| header.iter().map(|h| h.to_string()).zip(l.split(',').map(str::to_string)).collect()).collect()
}
