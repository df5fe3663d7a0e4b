//! Stable families `Lambda` attached to a transitive action `(G, Omega)`,
//! split into `G`-orbits `Lambda^(l)` with exponents
//! `nu_l = |Lambda^(l)| |A_l| / |Omega|`.

mod builders;
pub mod mindeg;

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use serde::Serialize;

use crate::action::{GroupAction, Point, SetFamily, StableFamily};
use crate::error::{Error, Result};
use crate::group::PermGroup;

pub use builders::{
    build_homogeneous_family, build_primitive_family, build_regular_family, build_transitive_tuple_family,
    HomogeneousBuilder, PrimitiveBuilder, RegularBuilder, TupleBuilder,
};
pub use mindeg::{coset_action, minimal_faithful_degree, MinimalDegree};

/// A non-negative rational in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Nu {
    pub num: usize,
    pub den: usize,
}

impl Nu {
    pub fn new(num: usize, den: usize) -> Self {
        let g = num.gcd(&den).max(1);
        Nu { num: num / g, den: den / g }
    }

    pub fn as_integer(&self) -> Option<usize> {
        (self.den == 1).then_some(self.num)
    }
}

impl fmt::Display for Nu {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// One orbit `Lambda^(l)` of the family.
#[derive(Debug, Clone)]
pub struct FamilyOrbit {
    /// Indices into the family action's points.
    pub members: Vec<usize>,
    /// `A_l`, the least-label member, as indices of `Omega`.
    pub representative: Vec<usize>,
    pub nu: Nu,
    /// `(G_l, Lambda^(l))`, the faithful image on this orbit.
    pub target: GroupAction,
}

#[derive(Debug, Clone)]
pub struct FamilyBundle {
    pub builder: &'static str,
    /// `(G, Omega)`.
    pub base_action: GroupAction,
    /// `(G, Delta)`, the action indexing the family.
    pub index_action: GroupAction,
    pub family: SetFamily,
    /// `(G, Lambda)`.
    pub family_action: GroupAction,
    /// `iota[d]` is the point of `family_action` holding `Lambda_d`.
    pub iota: Vec<usize>,
    pub orbits: Vec<FamilyOrbit>,
}

impl FamilyBundle {
    pub(crate) fn assemble(
        builder: &'static str,
        base_action: GroupAction,
        index_action: GroupAction,
        stable: StableFamily,
    ) -> Result<Self> {
        let StableFamily { family, action: family_action, iota } = stable;
        if !family_action.is_faithful() {
            return Err(Error::Internal(format!("{builder} family action is not faithful")));
        }
        let omega = base_action.num_points();
        let mut orbits = Vec::new();
        for orbit in family_action.orbit_partition() {
            let Point::Members(rep) = &family_action.points()[orbit[0]] else {
                return Err(Error::Internal("family points must be member sets".into()));
            };
            let nu = Nu::new(orbit.len() * rep.len(), omega);
            let target = family_action.restrict(&orbit)?.faithful_image();
            orbits.push(FamilyOrbit { representative: rep.clone(), members: orbit, nu, target });
        }
        Ok(FamilyBundle { builder, base_action, index_action, family, family_action, iota, orbits })
    }

    /// Number of orbits `s`.
    pub fn s(&self) -> usize {
        self.orbits.len()
    }

    pub fn nus(&self) -> Vec<Nu> {
        self.orbits.iter().map(|o| o.nu).collect()
    }

    /// Member `Lambda` at a family-action point, as indices of `Omega`.
    pub fn member(&self, point: usize) -> &[usize] {
        match &self.family_action.points()[point] {
            Point::Members(m) => m,
            _ => unreachable!("family points are member sets"),
        }
    }

    /// `sum_l |Lambda^(l)| |A_l| = sum_l nu_l |Omega|`, both sides as rationals.
    pub fn degree_bookkeeping_holds(&self) -> bool {
        let omega = self.base_action.num_points();
        let lhs: usize = self.orbits.iter().map(|o| o.members.len() * o.representative.len()).sum();
        // sum nu_l |Omega| with a common denominator.
        let den = self.orbits.iter().fold(1usize, |acc, o| acc.lcm(&o.nu.den));
        let rhs: usize = self.orbits.iter().map(|o| o.nu.num * (den / o.nu.den) * omega).sum();
        lhs * den == rhs
    }

    /// `iota` intertwines `(G, Delta)` with `(G, Lambda)` for every element.
    pub fn index_isomorphism_holds(&self) -> bool {
        let n = self.index_action.group().order();
        (0..n).all(|e| {
            (0..self.index_action.num_points())
                .all(|d| self.family_action.act(e, self.iota[d]) == self.iota[self.index_action.act(e, d)])
        })
    }

    /// Structured text report: members, nu vector, orbit sizes.
    pub fn report(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "family {} |G|={} |Omega|={} |Lambda|={} s={}\n",
            self.builder,
            self.base_action.group().order(),
            self.base_action.num_points(),
            self.family.len(),
            self.s()
        ));
        for (l, o) in self.orbits.iter().enumerate() {
            let rep: Vec<String> = o.representative.iter().map(|&p| self.base_action.points()[p].to_string()).collect();
            out.push_str(&format!(
                "orbit {} size={} nu={} A={{{}}} |G_l|={}\n",
                l + 1,
                o.members.len(),
                o.nu,
                rep.join(","),
                o.target.group().order()
            ));
        }
        out
    }
}

/// Input shared by all family builders.
#[derive(Debug, Clone)]
pub struct FamilyInput {
    pub group: Arc<PermGroup>,
    pub k: usize,
    /// `(m, r)` when `group` is a wreath subgroup on `[r] x [m]`.
    pub blocks: Option<(usize, usize)>,
    /// A faithful action of `group`, for the regular builder.
    pub embedding: Option<GroupAction>,
}

impl FamilyInput {
    pub fn new(group: Arc<PermGroup>, k: usize) -> Self {
        FamilyInput { group, k, blocks: None, embedding: None }
    }
}

/// A named stable-family construction.
pub trait FamilyBuilder: Send + Sync {
    fn name(&self) -> &'static str;
    fn summary(&self) -> &'static str;
    fn build(&self, input: &FamilyInput) -> Result<FamilyBundle>;
}

pub fn family_builders() -> Vec<Box<dyn FamilyBuilder>> {
    vec![Box::new(PrimitiveBuilder), Box::new(HomogeneousBuilder), Box::new(TupleBuilder), Box::new(RegularBuilder)]
}

pub fn family_builder(name: &str) -> Result<Box<dyn FamilyBuilder>> {
    family_builders()
        .into_iter()
        .find(|b| b.name() == name)
        .ok_or_else(|| Error::Unknown { kind: "family", name: name.to_string() })
}
