//! Builtin varieties with their expected invariants.

use crate::variety::VarietyFile;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Expected {
    pub r: usize,
    pub dim: usize,
    pub smooth: bool,
    pub generator_count: usize,
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub file: VarietyFile,
    pub expected: Expected,
}

fn entry(name: &'static str, vars: &[&str], gens: &[&str], r: usize, dim: usize, smooth: bool, count: usize) -> CatalogEntry {
    CatalogEntry {
        name,
        file: VarietyFile::new(name, vars, gens),
        expected: Expected { r, dim, smooth, generator_count: count },
    }
}

pub fn catalog() -> Vec<CatalogEntry> {
    vec![
        entry("cusp", &["x", "y"], &["x^3 - y^2"], 1, 1, false, 1),
        entry("node", &["x", "y"], &["y^2 - x^2*(x + 1)"], 1, 1, false, 1),
        entry("circle", &["x", "y"], &["x^2 + y^2 - 1"], 1, 1, true, 1),
        entry("twisted-cubic", &["x", "y", "z"], &["y - x^2", "z - x^3"], 2, 1, true, 1),
        entry("whitney-umbrella", &["x", "y", "z"], &["x^2 - y^2*z"], 1, 2, false, 3),
        entry("subspace-1-2", &["x1", "x2"], &["x1"], 1, 1, true, 1),
        entry("subspace-2-4", &["x1", "x2", "x3", "x4"], &["x1", "x2"], 2, 2, true, 2),
        entry("double-cusp", &["x", "y", "u", "v"], &["x^3 - y^2", "u^3 - v^2"], 2, 2, false, 4),
    ]
}

/// Looks up an entry by name, tolerating a `.json` suffix.
pub fn lookup(name: &str) -> Option<CatalogEntry> {
    let base = name.strip_suffix(".json").unwrap_or(name);
    catalog().into_iter().find(|e| e.name == base)
}
