//! Helpers shared by the integration test targets.
#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use sha2::{Digest, Sha256};

pub fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_patcorpus"))
}

pub fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary spawns")
}

pub fn assert_ok(args: &[&str]) -> Output {
    let out = run(args);
    assert!(
        out.status.success(),
        "command {args:?} failed\nstderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

pub fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("terminated by signal")
}

pub fn stderr_text(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

/// SHA-256 over every file in a tree: sorted relative paths, each hashed
/// as path, then content, with separators. Equal trees ⇔ equal hashes.
pub fn tree_hash(root: &Path) -> String {
    let mut files = Vec::new();
    collect(root, root, &mut files);
    files.sort();
    let mut hasher = Sha256::new();
    for rel in &files {
        hasher.update(rel.to_string_lossy().as_bytes());
        hasher.update([0]);
        hasher.update(fs::read(root.join(rel)).unwrap());
        hasher.update([1]);
    }
    format!("{:x}", hasher.finalize())
}

fn collect(root: &Path, dir: &Path, files: &mut Vec<PathBuf>) {
    for entry in fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        if path.is_dir() {
            collect(root, &path, files);
        } else {
            files.push(path.strip_prefix(root).unwrap().to_path_buf());
        }
    }
}
