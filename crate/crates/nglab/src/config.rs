//! `key=value` config files mirroring command-line flags.

use crate::error::{NglabError, Result};

/// Parses `key = value` lines; `#` starts a comment.
pub fn parse(text: &str) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| NglabError::Input(format!("config line {}: expected key=value", no + 1)))?;
        let key = k.trim().trim_start_matches("--").to_string();
        if key.is_empty() {
            return Err(NglabError::Input(format!("config line {}: empty key", no + 1)));
        }
        out.push((key, v.trim().to_string()));
    }
    Ok(out)
}

fn config_path(argv: &[String]) -> Result<Option<String>> {
    for (i, a) in argv.iter().enumerate() {
        if let Some(p) = a.strip_prefix("--config=") {
            return Ok(Some(p.to_string()));
        }
        if a == "--config" {
            return argv
                .get(i + 1)
                .cloned()
                .map(Some)
                .ok_or_else(|| NglabError::Input("--config needs a path".into()));
        }
    }
    Ok(None)
}

fn has_flag(argv: &[String], key: &str) -> bool {
    let long = format!("--{key}");
    let prefixed = format!("--{key}=");
    argv.iter().any(|a| *a == long || a.starts_with(&prefixed))
}

/// Appends config entries for flags absent from `argv`; explicit flags win.
/// `true` becomes a bare switch and `false` is dropped.
pub fn apply(argv: Vec<String>, entries: &[(String, String)]) -> Vec<String> {
    let mut out = argv.clone();
    for (k, v) in entries {
        if has_flag(&argv, k) {
            continue;
        }
        match v.as_str() {
            "true" => out.push(format!("--{k}")),
            "false" => {}
            _ => {
                out.push(format!("--{k}"));
                out.push(v.clone());
            }
        }
    }
    out
}

/// Reads the file named by `--config`, if any, and merges it into `argv`.
pub fn merge(argv: Vec<String>) -> Result<Vec<String>> {
    let Some(path) = config_path(&argv)? else { return Ok(argv) };
    let text = std::fs::read_to_string(&path)
        .map_err(|e| NglabError::Input(format!("cannot read config {path}: {e}")))?;
    Ok(apply(argv, &parse(&text)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn argv(s: &str) -> Vec<String> {
        s.split_whitespace().map(String::from).collect()
    }

    #[test]
    fn explicit_flags_win() {
        let entries = parse("q = 7\n# comment\nt=3\ncsv=true\nbrute-force=false\n").unwrap();
        let merged = apply(argv("nglab census --q 5"), &entries);
        assert_eq!(merged, argv("nglab census --q 5 --t 3 --csv"));
    }

    #[test]
    fn malformed_lines_are_rejected() {
        assert!(parse("q 7").is_err());
        assert!(parse("=7").is_err());
    }
}
