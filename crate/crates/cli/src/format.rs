//! File formats: JSON instances and certificates with decimal-string
//! entries (bit-exact at any precision), and the line-oriented text
//! formats for scalar and exact-cover inputs.

use std::fmt;
use std::fs;
use std::path::Path;

use num_bigint::BigUint;
use serde::Deserialize;
use tropical_knapsack::reductions::X3CInstance;
use tropical_knapsack::{Certificate, ProblemInstance, SemiringTag, TropicalMatrix};

/// A reportable failure, carrying the exit code it maps to: 64 for usage
/// mistakes, 65 for unreadable or malformed data.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError { code: 64, message: message.into() }
    }

    pub fn data(message: impl Into<String>) -> Self {
        CliError { code: 65, message: message.into() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::data(format!("{}: {e}", path.display())))
}

pub fn tag_name(tag: SemiringTag) -> &'static str {
    match tag {
        SemiringTag::MaxPlus => "max_plus",
        SemiringTag::MaxTimes => "max_times",
    }
}

fn tag_from_name(name: &str) -> Option<SemiringTag> {
    match name {
        "max_plus" => Some(SemiringTag::MaxPlus),
        "max_times" => Some(SemiringTag::MaxTimes),
        _ => None,
    }
}

fn parse_entry(s: &str, context: &str) -> Result<BigUint, CliError> {
    s.parse::<BigUint>()
        .map_err(|_| CliError::data(format!("{context}: `{s}` is not a decimal integer")))
}

/// On-disk instance shape: entries are decimal strings, matrices are
/// row-major arrays of rows.
#[derive(Deserialize)]
struct InstanceFile {
    semiring: String,
    k: usize,
    witnesses: Vec<Vec<Vec<String>>>,
    target: Vec<Vec<String>>,
}

fn matrix_from_rows(
    rows: &[Vec<String>],
    k: usize,
    tag: SemiringTag,
    context: &str,
) -> Result<TropicalMatrix, CliError> {
    if rows.len() != k {
        return Err(CliError::data(format!("{context}: expected {k} rows, found {}", rows.len())));
    }
    let mut entries = Vec::with_capacity(k * k);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != k {
            return Err(CliError::data(format!(
                "{context}, row {i}: expected {k} entries, found {}",
                row.len()
            )));
        }
        for s in row {
            entries.push(parse_entry(s, context)?);
        }
    }
    TropicalMatrix::new(k, tag, entries).map_err(|e| CliError::data(format!("{context}: {e}")))
}

fn matrix_to_rows(m: &TropicalMatrix) -> Vec<Vec<String>> {
    let k = m.dim();
    (0..k)
        .map(|i| (0..k).map(|j| m.entry(i, j).to_str_radix(10)).collect())
        .collect()
}

pub fn read_instance(path: &Path) -> Result<ProblemInstance, CliError> {
    let text = read_text(path)?;
    let file: InstanceFile = serde_json::from_str(&text)
        .map_err(|e| CliError::data(format!("{}: {e}", path.display())))?;
    let tag = tag_from_name(&file.semiring).ok_or_else(|| {
        CliError::data(format!(
            "{}: unknown semiring `{}` (expected max_plus or max_times)",
            path.display(),
            file.semiring
        ))
    })?;
    let here = path.display();
    let witnesses = file
        .witnesses
        .iter()
        .enumerate()
        .map(|(i, rows)| matrix_from_rows(rows, file.k, tag, &format!("{here}: witness {i}")))
        .collect::<Result<Vec<_>, _>>()?;
    let target = matrix_from_rows(&file.target, file.k, tag, &format!("{here}: target"))?;
    ProblemInstance::new(witnesses, target).map_err(|e| CliError::data(format!("{here}: {e}")))
}

/// Renders a matrix as a single JSON line: `[["2", "2"], ["2", "2"]]`.
fn matrix_json(m: &TropicalMatrix) -> String {
    let rows: Vec<String> = matrix_to_rows(m)
        .iter()
        .map(|row| {
            let cells: Vec<String> = row.iter().map(|s| format!("\"{s}\"")).collect();
            format!("[{}]", cells.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

/// One matrix per line, so instance files diff cleanly under version
/// control. The output is plain JSON; [`read_instance`] accepts any
/// whitespace layout.
pub fn instance_to_json(instance: &ProblemInstance) -> String {
    let mut out = String::new();
    out.push_str("{\n");
    out.push_str(&format!("  \"semiring\": \"{}\",\n", tag_name(instance.tag())));
    out.push_str(&format!("  \"k\": {},\n", instance.dim()));
    if instance.witnesses().is_empty() {
        out.push_str("  \"witnesses\": [],\n");
    } else {
        out.push_str("  \"witnesses\": [\n");
        for (i, w) in instance.witnesses().iter().enumerate() {
            let sep = if i + 1 == instance.len() { "" } else { "," };
            out.push_str(&format!("    {}{sep}\n", matrix_json(w)));
        }
        out.push_str("  ],\n");
    }
    out.push_str(&format!("  \"target\": {}\n", matrix_json(instance.target())));
    out.push_str("}\n");
    out
}

pub fn read_certificate(path: &Path) -> Result<Certificate, CliError> {
    let text = read_text(path)?;
    let raw: Vec<String> = serde_json::from_str(&text)
        .map_err(|e| CliError::data(format!("{}: {e}", path.display())))?;
    let exponents = raw
        .iter()
        .map(|s| parse_entry(s, &format!("{}", path.display())))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Certificate(exponents))
}

/// Scalar problems on disk: `items:` and `target:` lines, `#` comments.
#[derive(Debug)]
pub struct ScalarFile {
    pub items: Vec<BigUint>,
    pub target: BigUint,
}

pub fn read_scalar(path: &Path) -> Result<ScalarFile, CliError> {
    let text = read_text(path)?;
    let mut items: Option<Vec<BigUint>> = None;
    let mut target: Option<BigUint> = None;
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let here = format!("{}:{}", path.display(), idx + 1);
        let (key, rest) = line
            .split_once(':')
            .ok_or_else(|| CliError::data(format!("{here}: expected `key: values`")))?;
        match key.trim() {
            "items" => {
                if items.is_some() {
                    return Err(CliError::data(format!("{here}: duplicate `items` line")));
                }
                let parsed = rest
                    .split_whitespace()
                    .map(|s| parse_entry(s, &here))
                    .collect::<Result<Vec<_>, _>>()?;
                items = Some(parsed);
            }
            "target" => {
                if target.is_some() {
                    return Err(CliError::data(format!("{here}: duplicate `target` line")));
                }
                target = Some(parse_entry(rest.trim(), &here)?);
            }
            other => {
                return Err(CliError::data(format!("{here}: unknown key `{other}`")));
            }
        }
    }
    let items =
        items.ok_or_else(|| CliError::data(format!("{}: missing `items` line", path.display())))?;
    let target = target
        .ok_or_else(|| CliError::data(format!("{}: missing `target` line", path.display())))?;
    Ok(ScalarFile { items, target })
}

pub fn scalar_to_text(items: &[BigUint], target: &BigUint) -> String {
    let rendered: Vec<String> = items.iter().map(|w| w.to_str_radix(10)).collect();
    format!("items: {}\ntarget: {}\n", rendered.join(" "), target.to_str_radix(10))
}

/// Exact-cover instances on disk: a `ground:` line and a `triples:` line
/// with `;`-separated triples, `#` comments.
pub fn read_x3c(path: &Path) -> Result<X3CInstance, CliError> {
    let text = read_text(path)?;
    let mut ground: Option<usize> = None;
    let mut triples: Option<Vec<[usize; 3]>> = None;
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let here = format!("{}:{}", path.display(), idx + 1);
        let (key, rest) = line
            .split_once(':')
            .ok_or_else(|| CliError::data(format!("{here}: expected `key: values`")))?;
        match key.trim() {
            "ground" => {
                if ground.is_some() {
                    return Err(CliError::data(format!("{here}: duplicate `ground` line")));
                }
                let n = rest.trim().parse::<usize>().map_err(|_| {
                    CliError::data(format!("{here}: `{}` is not a ground size", rest.trim()))
                })?;
                ground = Some(n);
            }
            "triples" => {
                if triples.is_some() {
                    return Err(CliError::data(format!("{here}: duplicate `triples` line")));
                }
                let mut parsed = Vec::new();
                for chunk in rest.split(';') {
                    let chunk = chunk.trim();
                    if chunk.is_empty() {
                        continue;
                    }
                    let members = chunk
                        .split_whitespace()
                        .map(|s| {
                            s.parse::<usize>().map_err(|_| {
                                CliError::data(format!(
                                    "{here}: `{s}` is not a ground element"
                                ))
                            })
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    if members.len() != 3 {
                        return Err(CliError::data(format!(
                            "{here}: triple `{chunk}` has {} members",
                            members.len()
                        )));
                    }
                    parsed.push([members[0], members[1], members[2]]);
                }
                triples = Some(parsed);
            }
            other => {
                return Err(CliError::data(format!("{here}: unknown key `{other}`")));
            }
        }
    }
    let ground = ground
        .ok_or_else(|| CliError::data(format!("{}: missing `ground` line", path.display())))?;
    let triples = triples
        .ok_or_else(|| CliError::data(format!("{}: missing `triples` line", path.display())))?;
    X3CInstance::new(ground, triples).map_err(|e| CliError::data(format!("{}: {e}", path.display())))
}

pub fn write_output(path: Option<&Path>, content: &str) -> Result<(), CliError> {
    match path {
        Some(path) => fs::write(path, content)
            .map_err(|e| CliError::data(format!("{}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}
