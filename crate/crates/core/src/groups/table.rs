use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// A finite group given by its Cayley table, validated on construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteTable {
    name: Option<String>,
    labels: Vec<String>,
    table: Vec<u32>,
    identity: u32,
    inverses: Vec<u32>,
}

impl FiniteTable {
    /// Largest supported order.
    pub const MAX_ORDER: usize = 24;

    /// Build a table group. `table[a][b]` is the index of the product `ab`.
    pub fn new(labels: Vec<String>, table: Vec<Vec<usize>>, identity: usize) -> Result<Self> {
        let n = labels.len();
        let bad = |msg: String| Err(Error::InvalidSpec(msg));
        if n == 0 || n > Self::MAX_ORDER {
            return bad(format!("table order {n} outside 1..={}", Self::MAX_ORDER));
        }
        for (i, label) in labels.iter().enumerate() {
            if !valid_label(label) {
                return bad(format!("label `{label}` must be non-empty alphanumeric or '_'"));
            }
            if labels[..i].contains(label) {
                return bad(format!("duplicate label `{label}`"));
            }
        }
        if identity >= n {
            return bad(format!("identity index {identity} out of range"));
        }
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return bad(format!("table must be {n}x{n}"));
        }
        if table.iter().flatten().any(|&x| x >= n) {
            return bad("table entry out of range".to_string());
        }
        for a in 0..n {
            if table[identity][a] != a || table[a][identity] != a {
                return bad(format!("`{}` is not a two-sided identity", labels[identity]));
            }
        }
        let mut inverses = Vec::with_capacity(n);
        for a in 0..n {
            let right = (0..n).filter(|&b| table[a][b] == identity).collect::<Vec<_>>();
            match right.as_slice() {
                [b] if table[*b][a] == identity => inverses.push(*b as u32),
                _ => return bad(format!("`{}` has no two-sided inverse", labels[a])),
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return bad(format!(
                            "not associative at ({}, {}, {})",
                            labels[a], labels[b], labels[c]
                        ));
                    }
                }
            }
        }
        Ok(Self {
            name: None,
            labels,
            table: table.into_iter().flatten().map(|x| x as u32).collect(),
            identity: identity as u32,
            inverses,
        })
    }

    /// The cyclic group of order `m` with elements labelled `e, x, xx, ...` for the given letter.
    pub fn cyclic(m: usize, letter: char) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidSpec("cyclic order must be positive".to_string()));
        }
        let labels = (0..m)
            .map(|k| if k == 0 { "e".to_string() } else { core::iter::repeat(letter).take(k).collect() })
            .collect();
        let table = (0..m).map(|a| (0..m).map(|b| (a + b) % m).collect()).collect();
        Ok(Self::new(labels, table, 0)?.with_name(format!("T{m}")))
    }

    /// Attach a display name used when printing the group.
    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn identity(&self) -> u32 {
        self.identity
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: u32) -> &str {
        &self.labels[a as usize]
    }

    pub fn index_of(&self, label: &str) -> Option<u32> {
        self.labels.iter().position(|l| l == label).map(|i| i as u32)
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize * self.order() + b as usize]
    }

    pub fn inv(&self, a: u32) -> u32 {
        self.inverses[a as usize]
    }

    /// Rows of the multiplication table as indices.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order()).map(|r| r.iter().map(|&x| x as usize).collect()).collect()
    }
}

fn valid_label(label: &str) -> bool {
    !label.is_empty() && label.chars().all(|c| c.is_alphanumeric() || c == '_')
}
