//! Named small groups given by explicit generators.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{PermGroup, DEFAULT_CAP};
use crate::perm::Permutation;

#[derive(Debug, Clone)]
pub struct CatalogGroup {
    pub name: String,
    pub group: Arc<PermGroup>,
}

/// `C_{n_1} x .. x C_{n_s}` acting on disjoint cycles.
pub fn cyclic_product(orders: &[usize]) -> PermGroup {
    let degree: usize = orders.iter().sum::<usize>().max(1);
    let mut gens = Vec::new();
    let mut offset = 0;
    for &n in orders {
        let cycle: Vec<usize> = (offset..offset + n).collect();
        if n > 1 {
            gens.push(Permutation::from_cycles(degree, &[&cycle]).expect("disjoint cycles"));
        }
        offset += n;
    }
    PermGroup::generate(degree, gens, DEFAULT_CAP).expect("small abelian group")
}

fn abelian_name(orders: &[usize]) -> String {
    let parts: Vec<String> = orders.iter().map(|n| format!("C{n}")).collect();
    parts.join("x")
}

/// Invariant factors `n_1 | n_2 | ..` of every abelian group of order `2..=16`.
pub const ABELIAN_UP_TO_16: &[&[usize]] = &[
    &[2],
    &[3],
    &[4],
    &[2, 2],
    &[5],
    &[6],
    &[7],
    &[8],
    &[2, 4],
    &[2, 2, 2],
    &[9],
    &[3, 3],
    &[10],
    &[11],
    &[12],
    &[2, 6],
    &[13],
    &[14],
    &[15],
    &[16],
    &[2, 8],
    &[4, 4],
    &[2, 2, 4],
    &[2, 2, 2, 2],
];

const NONABELIAN: &[(&str, usize, &[&str])] = &[
    ("S3", 3, &["(1 2 3)", "(1 2)"]),
    ("D4", 4, &["(1 2 3 4)", "(1 3)"]),
    ("Q8", 8, &["(1 2 4 7)(3 6 8 5)", "(1 3 4 8)(2 5 7 6)"]),
    ("D5", 5, &["(1 2 3 4 5)", "(2 5)(3 4)"]),
    ("D6", 6, &["(1 2 3 4 5 6)", "(2 6)(3 5)"]),
    ("A4", 4, &["(1 2 3)", "(1 2)(3 4)"]),
    ("Dic3", 7, &["(1 2 3)", "(2 3)(4 5 6 7)"]),
    ("S4", 4, &["(1 2 3 4)", "(1 2)"]),
];

pub fn group_catalog() -> Vec<CatalogGroup> {
    let mut out: Vec<CatalogGroup> = ABELIAN_UP_TO_16
        .iter()
        .map(|o| CatalogGroup { name: abelian_name(o), group: Arc::new(cyclic_product(o)) })
        .collect();
    for (name, degree, gens) in NONABELIAN {
        let gens = gens.iter().map(|s| Permutation::parse(*degree, s).expect("catalog generator")).collect();
        let group = PermGroup::generate(*degree, gens, DEFAULT_CAP).expect("catalog group");
        out.push(CatalogGroup { name: name.to_string(), group: Arc::new(group) });
    }
    out
}

/// Looks up a catalog group by name (`C6`, `C2xC2`, `Q8`, ...). `C1` is the
/// trivial group.
pub fn catalog_group(name: &str) -> Result<CatalogGroup> {
    if name == "C1" {
        return Ok(CatalogGroup { name: name.into(), group: Arc::new(PermGroup::trivial(1)) });
    }
    group_catalog()
        .into_iter()
        .find(|g| g.name == name)
        .ok_or_else(|| Error::Unknown { kind: "group", name: name.to_string() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_match_names() {
        let expect = [("S3", 6), ("D4", 8), ("Q8", 8), ("D5", 10), ("D6", 12), ("A4", 12), ("Dic3", 12), ("S4", 24)];
        for (name, order) in expect {
            assert_eq!(catalog_group(name).unwrap().group.order(), order, "{name}");
        }
        for o in ABELIAN_UP_TO_16 {
            let g = catalog_group(&abelian_name(o)).unwrap();
            assert_eq!(g.group.order(), o.iter().product::<usize>());
            assert!(g.group.is_abelian());
        }
    }

    #[test]
    fn quaternion_has_one_involution() {
        let q8 = catalog_group("Q8").unwrap().group;
        assert!(!q8.is_abelian());
        assert_eq!(q8.elements().iter().filter(|e| e.order() == 2).count(), 1);
        let dic3 = catalog_group("Dic3").unwrap().group;
        assert_eq!(dic3.elements().iter().filter(|e| e.order() == 2).count(), 1);
    }
}
