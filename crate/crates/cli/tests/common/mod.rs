//! Golden-file suite: every job under `tests/jobs` is run twice in each
//! output format and compared byte for byte with `tests/golden`.
//! Set `DIAGRES_BLESS=1` to rewrite the expected files.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

fn run(job: &Path, format: &str) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_diagres"))
        .arg(job)
        .args(["--format", format])
        .output()
        .expect("binary runs");
    let mut record = format!("exit {}\n--- stdout\n", out.status.code().unwrap_or(-1)).into_bytes();
    record.extend_from_slice(&out.stdout);
    record.extend_from_slice(b"--- stderr\n");
    record.extend_from_slice(&out.stderr);
    record
}

pub fn jobs() -> Vec<PathBuf> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/jobs");
    let mut v: Vec<PathBuf> = fs::read_dir(dir)
        .expect("job directory")
        .map(|e| e.expect("entry").path())
        .filter(|p| p.extension().is_some_and(|x| x == "toml"))
        .collect();
    v.sort();
    v
}

/// Runs the whole suite; returns the names of jobs whose output drifted.
pub fn check_suite() -> Vec<String> {
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let bless = std::env::var_os("DIAGRES_BLESS").is_some();
    let mut failures = Vec::new();
    for job in jobs() {
        let stem = job.file_stem().unwrap().to_string_lossy().into_owned();
        for format in ["human", "machine"] {
            let first = run(&job, format);
            let second = run(&job, format);
            let name = format!("{stem}.{format}");
            if first != second {
                failures.push(format!("{name} (runs differ)"));
                continue;
            }
            let path = golden.join(&name);
            if bless {
                fs::create_dir_all(&golden).unwrap();
                fs::write(&path, &first).unwrap();
            } else if fs::read(&path).ok().as_deref() != Some(&first[..]) {
                failures.push(name);
            }
        }
    }
    failures
}
