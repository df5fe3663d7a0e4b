use std::sync::Arc;

use crate::action::{homogeneity_test, stable_family_action, GroupAction, HomogeneityMode, Point};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::wreath::{imprimitive_on_subsets, primitive_stabilizer_family, wreath_action, WreathActionKind, WreathGroup};

use super::mindeg::minimal_faithful_degree;
use super::{FamilyBuilder, FamilyBundle, FamilyInput};

/// `Lambda_{(i,A)} = {v in Omega^P(m,r,k) : v_i = A}`; `nu_l = r_l`.
pub fn build_primitive_family(g: &WreathGroup, k: usize) -> Result<FamilyBundle> {
    let base = wreath_action(g, WreathActionKind::Primitive(k))?;
    if !base.is_transitive() {
        return Err(Error::NotTransitive);
    }
    let stable = primitive_stabilizer_family(g, k)?;
    let index = imprimitive_on_subsets(g, k)?;
    FamilyBundle::assemble("primitive", base, index, stable)
}

/// `Lambda_i = {A in binom([m],k) : i in A}`; `nu = k`.
pub fn build_homogeneous_family(g: &Arc<PermGroup>, k: usize) -> Result<FamilyBundle> {
    let m = g.degree();
    if k == 0 || 2 * k > m.max(2) {
        return Err(Error::InvalidParameters(format!("need 1 <= k <= m/2, got k={k}, m={m}")));
    }
    let base = GroupAction::on_subsets(g.clone(), k);
    if !base.is_transitive() {
        return Err(Error::NotTransitive);
    }
    let index = GroupAction::natural(g.clone());
    let members = member_sets(&base, |p, i| matches!(p, Point::Subset(s) if s.contains(&i)), m);
    let stable = stable_family_action(&base, &index, &members)?;
    FamilyBundle::assemble("homogeneous", base, index, stable)
}

/// `Lambda_i = {v in [m]_k : v_1 = i}`; `nu = 1`.
pub fn build_transitive_tuple_family(g: &Arc<PermGroup>, k: usize) -> Result<FamilyBundle> {
    let m = g.degree();
    if k == 0 || k > m {
        return Err(Error::InvalidParameters(format!("need 1 <= k <= m, got k={k}, m={m}")));
    }
    if !homogeneity_test(g, k, HomogeneityMode::Tuples)? {
        return Err(Error::NotKTransitive(k));
    }
    let base = GroupAction::on_tuples(g.clone(), k);
    let index = GroupAction::natural(g.clone());
    let members = member_sets(&base, |p, i| matches!(p, Point::Tuple(v) if v[0] == i), m);
    let stable = stable_family_action(&base, &index, &members)?;
    FamilyBundle::assemble("tuple", base, index, stable)
}

/// `Lambda_i = {sigma in G : sigma(i_l) = i}` over a faithful action of `G`
/// on `[mu]`, with `i_l` the least point of the orbit of `i`; each `nu_l = 1`.
pub fn build_regular_family(g: &Arc<PermGroup>, embedding: Option<&GroupAction>) -> Result<FamilyBundle> {
    let minimal = minimal_faithful_degree(g)?;
    let embedding = match embedding {
        Some(e) => {
            if e.group().elements() != g.elements() {
                return Err(Error::MismatchedAction("embedding acts by a different group".into()));
            }
            if !e.is_faithful() {
                return Err(Error::EmbeddingNotFaithful);
            }
            if e.num_points() != minimal.degree {
                return Err(Error::EmbeddingNotMinimal { got: e.num_points(), minimal: minimal.degree });
            }
            e.clone()
        }
        None => minimal.action,
    };
    let base = GroupAction::regular(g.clone());
    let mut anchor = vec![0; embedding.num_points()];
    for orbit in embedding.orbit_partition() {
        for &p in &orbit {
            anchor[p] = orbit[0];
        }
    }
    let members: Vec<Vec<usize>> = (0..embedding.num_points())
        .map(|i| (0..g.order()).filter(|&e| embedding.act(e, anchor[i]) == i).collect())
        .collect();
    let stable = stable_family_action(&base, &embedding, &members)?;
    if stable.family.len() != minimal.degree {
        return Err(Error::EmbeddingNotMinimal { got: stable.family.len(), minimal: minimal.degree });
    }
    FamilyBundle::assemble("regular", base, embedding, stable)
}

fn member_sets<F: Fn(&Point, usize) -> bool>(base: &GroupAction, contains: F, m: usize) -> Vec<Vec<usize>> {
    (0..m)
        .map(|i| (0..base.num_points()).filter(|&p| contains(&base.points()[p], i)).collect())
        .collect()
}

pub struct PrimitiveBuilder;
pub struct HomogeneousBuilder;
pub struct TupleBuilder;
pub struct RegularBuilder;

impl FamilyBuilder for PrimitiveBuilder {
    fn name(&self) -> &'static str {
        "primitive"
    }

    fn summary(&self) -> &'static str {
        "wreath subgroup on binom([m],k)^r, members fix one coordinate"
    }

    fn build(&self, input: &FamilyInput) -> Result<FamilyBundle> {
        let (m, r) = input
            .blocks
            .ok_or_else(|| Error::InvalidParameters("primitive family needs block shape (m, r)".into()))?;
        let g = WreathGroup::from_perm_group(m, r, (*input.group).clone())?;
        build_primitive_family(&g, input.k)
    }
}

impl FamilyBuilder for HomogeneousBuilder {
    fn name(&self) -> &'static str {
        "homogeneous"
    }

    fn summary(&self) -> &'static str {
        "k-homogeneous group on k-subsets, members contain a point"
    }

    fn build(&self, input: &FamilyInput) -> Result<FamilyBundle> {
        build_homogeneous_family(&input.group, input.k)
    }
}

impl FamilyBuilder for TupleBuilder {
    fn name(&self) -> &'static str {
        "tuple"
    }

    fn summary(&self) -> &'static str {
        "k-transitive group on k-tuples, members share a first coordinate"
    }

    fn build(&self, input: &FamilyInput) -> Result<FamilyBundle> {
        build_transitive_tuple_family(&input.group, input.k)
    }
}

impl FamilyBuilder for RegularBuilder {
    fn name(&self) -> &'static str {
        "regular"
    }

    fn summary(&self) -> &'static str {
        "regular action, members are fibres of a minimal faithful action"
    }

    fn build(&self, input: &FamilyInput) -> Result<FamilyBundle> {
        build_regular_family(&input.group, input.embedding.as_ref())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::Nu;
    use crate::group::DEFAULT_CAP;
    use crate::iso::action_isomorphism;
    use crate::perm::Permutation;

    fn grp(n: usize, gens: &[&str]) -> Arc<PermGroup> {
        let gens = gens.iter().map(|s| Permutation::parse(n, s).unwrap()).collect();
        Arc::new(PermGroup::generate(n, gens, DEFAULT_CAP).unwrap())
    }

    fn nus(b: &FamilyBundle) -> Vec<usize> {
        b.nus().iter().map(|n| n.as_integer().unwrap()).collect()
    }

    #[test]
    fn primitive_examples() {
        let full = WreathGroup::full(2, 2).unwrap();
        let b = build_primitive_family(&full, 1).unwrap();
        assert_eq!(nus(&b), vec![2]);
        let base = WreathGroup::base(2, 2).unwrap();
        assert_eq!(nus(&build_primitive_family(&base, 1).unwrap()), vec![1, 1]);
        let b = build_primitive_family(&WreathGroup::full(3, 2).unwrap(), 1).unwrap();
        assert_eq!((b.s(), b.family.len()), (1, 6));
        assert!(b.degree_bookkeeping_holds());
        let b = build_primitive_family(&WreathGroup::full(4, 2).unwrap(), 2).unwrap();
        assert_eq!((b.family.len(), nus(&b)), (12, vec![2]));
    }

    #[test]
    fn homogeneous_examples() {
        let b = build_homogeneous_family(&Arc::new(PermGroup::symmetric(4)), 2).unwrap();
        assert_eq!((nus(&b), b.family.len()), (vec![2], 4));
        let a4 = Arc::new(PermGroup::alternating(4));
        let b = build_homogeneous_family(&a4, 2).unwrap();
        assert_eq!(nus(&b), vec![2]);
        assert!(action_isomorphism(&b.family_action, &GroupAction::natural(a4)).is_some());
        let c4 = grp(4, &["(1 2 3 4)"]);
        assert_eq!(build_homogeneous_family(&c4, 2).unwrap_err(), Error::NotTransitive);
    }

    #[test]
    fn tuple_examples() {
        let s3 = Arc::new(PermGroup::symmetric(3));
        let b = build_transitive_tuple_family(&s3, 2).unwrap();
        assert_eq!((b.family.len(), nus(&b)), (3, vec![1]));
        assert!(b.family.members().iter().all(|m| m.len() == 2));
        let b = build_transitive_tuple_family(&s3, 3).unwrap();
        assert!(b.family.members().iter().all(|m| m.len() == 2));
        let c3 = grp(3, &["(1 2 3)"]);
        assert_eq!(build_transitive_tuple_family(&c3, 2).unwrap_err(), Error::NotKTransitive(2));
    }

    #[test]
    fn regular_examples() {
        let c6 = grp(6, &["(1 2 3 4 5 6)"]);
        let b = build_regular_family(&c6, None).unwrap();
        assert_eq!((b.family.len(), nus(&b)), (5, vec![1, 1]));
        let s3 = Arc::new(PermGroup::symmetric(3));
        let b = build_regular_family(&s3, None).unwrap();
        assert_eq!((b.family.len(), b.s()), (3, 1));
        let reg = GroupAction::regular(s3.clone());
        assert_eq!(
            build_regular_family(&s3, Some(&reg)).unwrap_err(),
            Error::EmbeddingNotMinimal { got: 6, minimal: 3 }
        );
        assert_eq!(Nu::new(4, 2).as_integer(), Some(2));
    }

    #[test]
    fn registry_lookup() {
        let b = crate::families::family_builder("tuple").unwrap();
        let bundle = b.build(&FamilyInput::new(Arc::new(PermGroup::symmetric(3)), 2)).unwrap();
        assert!(bundle.index_isomorphism_holds());
        assert!(crate::families::family_builder("nope").is_err());
    }
}
