//! Invariant tables: batch evaluation, grouping, formatting and
//! comparison with reference tables.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::cocycle::Cochain2;
use crate::diagram::NamedDiagram;
use crate::invariant::{check_reduced, cocycle_invariant_unchecked, InvariantError, InvariantPolynomial};
use crate::par::Execution;
use crate::rack::Rack;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub name: String,
    pub value: InvariantPolynomial,
}

/// Evaluates the cocycle invariant on every link, in input order. Links
/// run through `exec`; each link's framing sweep is sequential.
pub fn evaluate(
    links: &[NamedDiagram],
    rack: &Rack,
    phi: &Cochain2,
    exec: Execution,
) -> Result<Vec<TableRow>, InvariantError> {
    check_reduced(rack, phi)?;
    Ok(exec.map(links.iter().collect(), |l| TableRow {
        name: l.name.clone(),
        value: cocycle_invariant_unchecked(&l.diagram, rack, phi, Execution::Sequential),
    }))
}

/// Sort key for grouped tables: constant term, then the coefficient vector.
fn group_key(p: &InvariantPolynomial) -> (u64, Vec<u64>) {
    (p.coefficient(0), p.coefficients().to_vec())
}

/// Links sharing a value, groups ordered by [`group_key`], names in input order.
pub fn group(rows: &[TableRow]) -> Vec<(InvariantPolynomial, Vec<String>)> {
    let mut groups: BTreeMap<(u64, Vec<u64>), (InvariantPolynomial, Vec<String>)> = BTreeMap::new();
    for r in rows {
        groups
            .entry(group_key(&r.value))
            .or_insert_with(|| (r.value.clone(), Vec::new()))
            .1
            .push(r.name.clone());
    }
    groups.into_values().collect()
}

/// One `name : value` line per link.
pub fn format_text(rows: &[TableRow]) -> String {
    rows.iter().fold(String::new(), |mut s, r| {
        let _ = writeln!(s, "{} : {}", r.name, r.value);
        s
    })
}

/// One `value | names` line per group.
pub fn format_grouped(rows: &[TableRow]) -> String {
    group(rows).iter().fold(String::new(), |mut s, (p, names)| {
        let _ = writeln!(s, "{} | {}", p, names.join(", "));
        s
    })
}

/// Header line, then `name<TAB>value<TAB>colorings` per link.
pub fn format_tsv(rows: &[TableRow]) -> String {
    rows.iter().fold(String::from("link\tinvariant\tcolorings\n"), |mut s, r| {
        let _ = writeln!(s, "{}\t{}\t{}", r.name, r.value, r.value.eval_at_one());
        s
    })
}

/// Grouped `<tab>\t<names>` TSV.
pub fn format_grouped_tsv(rows: &[TableRow]) -> String {
    group(rows).iter().fold(String::from("invariant\tlinks\n"), |mut s, (p, names)| {
        let _ = writeln!(s, "{}\t{}", p, names.join(","));
        s
    })
}

/// Expected values keyed by link name.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GoldenTable {
    entries: BTreeMap<String, InvariantPolynomial>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Mismatch {
    Missing { name: String, expected: InvariantPolynomial },
    Differs { name: String, expected: InvariantPolynomial, actual: InvariantPolynomial },
}

impl std::fmt::Display for Mismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Mismatch::Missing { name, expected } => write!(f, "{name}: expected {expected}, not computed"),
            Mismatch::Differs { name, expected, actual } => write!(f, "{name}: expected {expected}, got {actual}"),
        }
    }
}

impl GoldenTable {
    /// Accepts both `name : value` lines and grouped `value | a, b, c`
    /// lines; `#` starts a comment.
    pub fn parse(text: &str, modulus: u64) -> Result<GoldenTable, InvariantError> {
        let mut entries = BTreeMap::new();
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some((value, names)) = line.split_once('|') {
                let p = InvariantPolynomial::parse(value, modulus)?;
                for name in names.split(',').map(str::trim).filter(|n| !n.is_empty()) {
                    entries.insert(name.to_string(), p.clone());
                }
            } else if let Some((name, value)) = line.split_once(':') {
                entries.insert(name.trim().to_string(), InvariantPolynomial::parse(value, modulus)?);
            } else {
                return Err(InvariantError::Parse(format!("bad table line `{line}`")));
            }
        }
        Ok(GoldenTable { entries })
    }

    pub fn get(&self, name: &str) -> Option<&InvariantPolynomial> {
        self.entries.get(name)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    /// Every expected entry that is absent from `rows` or has another value.
    pub fn diff(&self, rows: &[TableRow]) -> Vec<Mismatch> {
        let computed: BTreeMap<&str, &InvariantPolynomial> = rows.iter().map(|r| (r.name.as_str(), &r.value)).collect();
        self.entries
            .iter()
            .filter_map(|(name, expected)| match computed.get(name.as_str()) {
                None => Some(Mismatch::Missing { name: name.clone(), expected: expected.clone() }),
                Some(&actual) if actual != expected => Some(Mismatch::Differs {
                    name: name.clone(),
                    expected: expected.clone(),
                    actual: actual.clone(),
                }),
                Some(_) => None,
            })
            .collect()
    }
}
