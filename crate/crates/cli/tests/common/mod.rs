#![allow(dead_code)]

use std::path::Path;
use std::process::Command;

pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn adaptstream(args: &[&str]) -> Output {
    adaptstream_in(None, args)
}

pub fn adaptstream_in(dir: Option<&Path>, args: &[&str]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_adaptstream"));
    cmd.args(args);
    if let Some(dir) = dir {
        cmd.current_dir(dir);
    }
    let out = cmd.output().expect("binary runs");
    Output {
        code: out.status.code().expect("exited normally"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

/// Parses the `name = v1, v2` first line of `eval` output.
pub fn eval_values(stdout: &str) -> (String, Vec<f64>) {
    let line = stdout.lines().next().expect("eval prints a value line");
    let (name, values) = line.split_once(" = ").expect("name = values");
    let values = values.split(", ").map(|v| v.parse().unwrap()).collect();
    (name.to_owned(), values)
}
