//! Group-spec strings.
//!
//! ```text
//! group   := product
//! product := free ("x" free)*
//! free    := atom ("*" atom)*
//! atom    := "Z" k | "F" k | "@" path ".json"
//! ```
//!
//! `x` binds looser than `*`, so `Z2*Z3xZ2` is `(Z2*Z3) x Z2`. A free product may only
//! contain cyclic atoms.

use std::path::Path;

use l2betti_core::GroupSpec;

use crate::error::CliError;
use crate::formats::TableJson;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Atom {
    Cyclic(u32),
    Free(u32),
    Table(String),
}

fn invalid(input: &str, reason: impl std::fmt::Display) -> CliError {
    CliError::Input(format!("bad group spec `{input}`: {reason}"))
}

/// Splits on `sep` outside `@….json` atoms.
fn split(input: &str, sep: char) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut start = 0;
    let mut in_path = false;
    let bytes = input.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c == '@' {
            in_path = true;
        } else if in_path && input[i..].starts_with(".json") {
            in_path = false;
            i += ".json".len();
            continue;
        } else if !in_path && c == sep {
            parts.push(&input[start..i]);
            start = i + 1;
        }
        i += 1;
    }
    parts.push(&input[start..]);
    parts
}

fn atom(input: &str, token: &str) -> Result<Atom, CliError> {
    let token = token.trim();
    if let Some(path) = token.strip_prefix('@') {
        return Ok(Atom::Table(path.to_string()));
    }
    let number = |s: &str| s.parse::<u32>().map_err(|_| invalid(input, format_args!("`{token}` is not Zk, Fk or @file.json")));
    match token.split_at_checked(1) {
        Some(("Z", k)) => Ok(Atom::Cyclic(number(k)?)),
        Some(("F", k)) => Ok(Atom::Free(number(k)?)),
        _ => Err(invalid(input, format_args!("`{token}` is not Zk, Fk or @file.json"))),
    }
}

fn build_atom(input: &str, a: Atom, base: &Path) -> Result<GroupSpec, CliError> {
    match a {
        Atom::Cyclic(m) => Ok(GroupSpec::cyclic(m)?),
        Atom::Free(k) => Ok(GroupSpec::free(k)?),
        Atom::Table(path) => {
            let full = base.join(&path);
            let text = std::fs::read_to_string(&full)
                .map_err(|e| invalid(input, format_args!("cannot read {}: {e}", full.display())))?;
            let json: TableJson = serde_json::from_str(&text)
                .map_err(|e| invalid(input, format_args!("{}: {e}", full.display())))?;
            Ok(GroupSpec::table(json.into_table()?))
        }
    }
}

/// Parses a group spec; table paths are resolved against the working directory.
pub fn parse_group(input: &str) -> Result<GroupSpec, CliError> {
    parse_group_in(input, Path::new("."))
}

/// Parses a group spec, resolving table paths against `base`.
pub fn parse_group_in(input: &str, base: &Path) -> Result<GroupSpec, CliError> {
    let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(invalid(input, "empty"));
    }
    let mut factors = Vec::new();
    for part in split(&compact, 'x') {
        let atoms = split(part, '*')
            .into_iter()
            .map(|t| atom(input, t))
            .collect::<Result<Vec<_>, _>>()?;
        if atoms.len() == 1 {
            factors.push(build_atom(input, atoms.into_iter().next().unwrap(), base)?);
            continue;
        }
        let orders = atoms
            .iter()
            .map(|a| match a {
                Atom::Cyclic(m) => Ok(*m),
                _ => Err(invalid(input, "free products are only supported between cyclic factors")),
            })
            .collect::<Result<Vec<_>, _>>()?;
        factors.push(GroupSpec::free_product(orders)?);
    }
    Ok(GroupSpec::product(factors)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let g = parse_group("Z2*Z3xZ2").unwrap();
        assert_eq!(g.factors().len(), 2);
        assert_eq!(g.to_string(), "Z2*Z3xZ2");
        assert_eq!(parse_group("F2xF2xZ2").unwrap().factors().len(), 3);
        assert_eq!(parse_group(" Z2 * Z3 ").unwrap(), GroupSpec::free_product(vec![2, 3]).unwrap());
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "Q3", "Z", "F2*Z3", "Z2**Z3", "Z1"] {
            assert!(parse_group(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn table_paths_may_contain_x() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("klein_x.json");
        std::fs::write(
            &path,
            r#"{"labels":["e","a","b","c"],"table":[["e","a","b","c"],["a","e","c","b"],["b","c","e","a"],["c","b","a","e"]],"identity":"e"}"#,
        )
        .unwrap();
        let g = parse_group_in("@klein_x.jsonxF2", dir.path()).unwrap();
        assert_eq!(g.factors().len(), 2);
        assert_eq!(g.factors()[0].order(), Some(4));
    }
}
