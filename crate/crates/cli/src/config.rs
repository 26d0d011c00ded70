//! `key = value` config files. Entries become long flags placed before the
//! user's own arguments, so anything given on the command line wins.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;

use anyhow::{bail, Context, Result};

/// Flags that take no value; `true` turns them on, anything else drops them.
const SWITCHES: &[&str] = &["no-clock"];

pub fn parse(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            bail!("line {}: expected key = value, got {raw:?}", lineno + 1);
        };
        let key = k.trim().trim_start_matches("--").replace('_', "-");
        if key.is_empty() {
            bail!("line {}: empty key", lineno + 1);
        }
        out.insert(key, v.trim().to_string());
    }
    Ok(out)
}

fn take_config_path(args: &mut Vec<OsString>) -> Result<Option<String>> {
    let mut i = 0;
    while i < args.len() {
        let a = args[i].to_string_lossy().into_owned();
        if a == "--config" {
            if i + 1 >= args.len() {
                bail!("--config needs a path");
            }
            let path = args.remove(i + 1).to_string_lossy().into_owned();
            args.remove(i);
            return Ok(Some(path));
        }
        if let Some(path) = a.strip_prefix("--config=") {
            let path = path.to_string();
            args.remove(i);
            return Ok(Some(path));
        }
        i += 1;
    }
    Ok(None)
}

fn given(args: &[OsString], key: &str) -> bool {
    let flag = format!("--{key}");
    let prefix = format!("--{key}=");
    args.iter().any(|a| {
        let a = a.to_string_lossy();
        a == flag || a.starts_with(&prefix)
    })
}

/// Rewrites `argv` with the entries of any `--config` file merged in.
pub fn expand(argv: Vec<OsString>) -> Result<Vec<OsString>> {
    let mut iter = argv.into_iter();
    let prog = iter.next().unwrap_or_else(|| "hsplab".into());
    let mut args: Vec<OsString> = iter.collect();
    let Some(path) = take_config_path(&mut args)? else {
        let mut out = vec![prog];
        out.extend(args);
        return Ok(out);
    };
    let text = fs::read_to_string(&path).with_context(|| format!("reading config {path}"))?;
    let mut entries = parse(&text)?;
    let command = entries.remove("command");

    let mut out = vec![prog];
    let has_sub = args.first().is_some_and(|a| !a.to_string_lossy().starts_with('-'));
    if has_sub {
        out.push(args.remove(0));
    } else if let Some(cmd) = command {
        out.push(cmd.into());
    } else {
        bail!("no subcommand given and config {path} has no `command` entry");
    }
    for (key, value) in entries {
        if given(&args, &key) {
            continue;
        }
        if SWITCHES.contains(&key.as_str()) {
            if value == "true" {
                out.push(format!("--{key}").into());
            }
        } else {
            out.push(format!("--{key}").into());
            out.push(value.into());
        }
    }
    out.extend(args);
    Ok(out)
}
