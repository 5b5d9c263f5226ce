//! Algebras bundled with the crate.

use super::format::{parse_algebra, AlgebraFile, LoadError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub text: &'static str,
}

impl CatalogEntry {
    pub fn load(&self) -> Result<AlgebraFile, LoadError> {
        parse_algebra(self.text, self.name)
    }
}

macro_rules! entry {
    ($name:literal, $description:literal) => {
        CatalogEntry {
            name: $name,
            description: $description,
            text: include_str!(concat!("../../catalog/", $name, ".lr")),
        }
    };
}

const ENTRIES: &[CatalogEntry] = &[
    entry!("abelian-dim2", "abelian Lie algebra of dimension 2"),
    entry!("coordinate-2d", "Der Q[x1, x2]"),
    entry!("coordinate-2d-curved", "Der Q[x1, x2], curved top connection"),
    entry!("coordinate-3d", "Der Q[x1, x2, x3]"),
    entry!("heisenberg-dim3", "Heisenberg algebra, [e1, e2] = e3"),
    entry!("heisenberg-dim3-curved", "Heisenberg algebra, curved top connection"),
    entry!("nonabelian-dim2", "[e1, e2] = e1"),
    entry!("nonabelian-dim2-curved", "[e1, e2] = e1, curved top connection"),
    entry!("poisson-linear-2d", "cotangent algebra of pi12 = x1"),
    entry!("poisson-symplectic-2d", "cotangent algebra of pi12 = 1"),
    entry!("sl2", "sl(2), basis h, e, f"),
];

/// All bundled algebras, sorted by name.
pub fn catalog() -> &'static [CatalogEntry] {
    ENTRIES
}

pub fn catalog_entry(name: &str) -> Option<&'static CatalogEntry> {
    ENTRIES.iter().find(|e| e.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_loads_under_its_own_name() {
        for e in catalog() {
            let f = e.load().unwrap_or_else(|err| panic!("{}: {err}", e.name));
            assert_eq!(f.name, e.name);
        }
        let names: Vec<_> = catalog().iter().map(|e| e.name).collect();
        let mut sorted = names.clone();
        sorted.sort_unstable();
        assert_eq!(names, sorted);
    }
}
