//! Rendering and routing of command output.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write as _};
use std::path::PathBuf;

use clap::ValueEnum;
use pulsestream::format::round_sig;
use serde_json::{json, Map, Value};

/// Directory that receives output files when set. Relative `--output` paths
/// are resolved against it; without `--output` the file is `<command>.<ext>`.
pub const OUTPUT_DIR_ENV: &str = "PULSESTREAM_OUTPUT_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

/// The stable `{command, params, results}` envelope with every float rounded
/// to 12 significant digits.
pub fn envelope(command: &str, params: Value, results: Value) -> Value {
    let mut v = json!({ "command": command, "params": params, "results": results });
    round_floats(&mut v);
    v
}

fn round_floats(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round_sig(n.as_f64().expect("f64 number"));
            *v = json!(x);
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

pub fn to_json(doc: &Value) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("serializable value");
    s.push('\n');
    s
}

/// `key,value` rows for scalar reports, nested keys joined with dots.
pub fn to_key_value_csv(doc: &Value) -> String {
    let mut out = String::from("key,value\n");
    flatten("", doc, &mut out);
    out
}

fn flatten(prefix: &str, v: &Value, out: &mut String) {
    let join = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(map) => map.iter().for_each(|(k, x)| flatten(&join(k), x, out)),
        Value::Array(items) => items
            .iter()
            .enumerate()
            .for_each(|(i, x)| flatten(&join(&i.to_string()), x, out)),
        Value::Null => writeln!(out, "{prefix},").unwrap(),
        Value::String(s) => writeln!(out, "{prefix},{}", csv_field(s)).unwrap(),
        other => writeln!(out, "{prefix},{other}").unwrap(),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn object(pairs: impl IntoIterator<Item = (&'static str, Value)>) -> Value {
    Value::Object(
        pairs
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect::<Map<_, _>>(),
    )
}

fn destination(command: &str, format: Format, output: Option<PathBuf>) -> Option<PathBuf> {
    let dir = std::env::var_os(OUTPUT_DIR_ENV).map(PathBuf::from);
    match (output, dir) {
        (Some(p), Some(d)) if p.is_relative() => Some(d.join(p)),
        (Some(p), _) => Some(p),
        (None, Some(d)) => Some(d.join(format!("{command}.{}", format.extension()))),
        (None, None) => None,
    }
}

/// Writes to the resolved file, or stdout when no destination is configured.
pub fn emit(command: &str, format: Format, output: Option<PathBuf>, body: &str) -> io::Result<()> {
    match destination(command, format, output) {
        Some(path) => {
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                fs::create_dir_all(parent)?;
            }
            fs::write(&path, body)?;
            eprintln!("wrote {}", path.display());
            Ok(())
        }
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(body.as_bytes())?;
            stdout.flush()
        }
    }
}
