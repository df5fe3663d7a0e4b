//! Named target actions `(G, Omega)` for classification.
//!
//! One action per line:
//!
//! ```text
//! # comment
//! S3_natural degree=3 gens=(1,2);(1,2,3) points=natural
//! V4_regular group=C2xC2 points=regular
//! S4_pairs group=S4 points=subsets:2
//! ```
//!
//! `group=` names a group from the built-in catalog; otherwise `degree=` and
//! `gens=` (cycles separated by `;`) give it directly. `points` is one of
//! `natural`, `subsets:k`, `tuples:k`, `regular`.

use std::fmt;
use std::sync::Arc;

use crate::action::GroupAction;
use crate::catalog::catalog_group;
use crate::error::{Error, Result};
use crate::galois::candidates::candidate_table;
use crate::group::{PermGroup, DEFAULT_CAP};
use crate::perm::Permutation;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointSpec {
    Natural,
    Subsets(usize),
    Tuples(usize),
    Regular,
}

impl PointSpec {
    pub fn parse(s: &str) -> Result<Self> {
        let k = |t: &str| -> Result<usize> {
            t.parse().ok().filter(|&k| k > 0).ok_or_else(|| Error::Parse(format!("bad point spec `{s}`")))
        };
        match s.split_once(':') {
            None if s == "natural" => Ok(PointSpec::Natural),
            None if s == "regular" => Ok(PointSpec::Regular),
            Some(("subsets", t)) => Ok(PointSpec::Subsets(k(t)?)),
            Some(("tuples", t)) => Ok(PointSpec::Tuples(k(t)?)),
            _ => Err(Error::Parse(format!("bad point spec `{s}`"))),
        }
    }

    pub fn action(&self, g: Arc<PermGroup>) -> GroupAction {
        let a = match self {
            PointSpec::Natural => GroupAction::natural(g),
            PointSpec::Subsets(k) => GroupAction::on_subsets(g, *k),
            PointSpec::Tuples(k) => GroupAction::on_tuples(g, *k),
            PointSpec::Regular => GroupAction::regular(g),
        };
        a.faithful_image()
    }
}

impl fmt::Display for PointSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointSpec::Natural => write!(f, "natural"),
            PointSpec::Subsets(k) => write!(f, "subsets:{k}"),
            PointSpec::Tuples(k) => write!(f, "tuples:{k}"),
            PointSpec::Regular => write!(f, "regular"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ActionEntry {
    pub label: String,
    pub group: Arc<PermGroup>,
    pub points: PointSpec,
    /// Faithful image of the action.
    pub action: GroupAction,
}

impl ActionEntry {
    pub fn new(label: &str, group: Arc<PermGroup>, points: PointSpec) -> Self {
        let action = points.action(group.clone());
        ActionEntry { label: label.to_string(), group, points, action }
    }

    pub fn degree(&self) -> usize {
        self.action.num_points()
    }

    pub fn to_line(&self) -> String {
        let gens: Vec<String> =
            self.group.small_generating_set().iter().map(|g| g.to_string().replace(' ', ",")).collect();
        let gens = if gens.is_empty() { "()".to_string() } else { gens.join(";") };
        format!("{} degree={} gens={} points={}", self.label, self.group.degree(), gens, self.points)
    }
}

#[derive(Debug, Clone, Default)]
pub struct ActionCatalog {
    pub entries: Vec<ActionEntry>,
}

impl ActionCatalog {
    pub fn new(entries: Vec<ActionEntry>) -> Self {
        ActionCatalog { entries }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| Error::Parse(format!("catalog line {}: {msg}", lineno + 1));
            let mut tokens = line.split_whitespace();
            let label = tokens.next().expect("non-empty line");
            let (mut degree, mut gens, mut group, mut points) = (None, None, None, PointSpec::Natural);
            for tok in tokens {
                let (key, value) = tok.split_once('=').ok_or_else(|| err(format!("expected key=value, got `{tok}`")))?;
                match key {
                    "degree" => degree = Some(value.parse::<usize>().map_err(|_| err(format!("bad degree `{value}`")))?),
                    "gens" => gens = Some(value.to_string()),
                    "group" => group = Some(value.to_string()),
                    "points" => points = PointSpec::parse(value).map_err(|e| err(e.to_string()))?,
                    _ => return Err(err(format!("unknown key `{key}`"))),
                }
            }
            let g = match (group, degree, gens) {
                (Some(name), None, None) => catalog_group(&name)?.group,
                (None, Some(d), Some(gens)) => {
                    let perms = gens
                        .split(';')
                        .map(|s| Permutation::parse(d, s))
                        .collect::<Result<Vec<_>>>()
                        .map_err(|e| err(e.to_string()))?;
                    Arc::new(PermGroup::generate(d, perms, DEFAULT_CAP)?)
                }
                _ => return Err(err("give either group= or degree= with gens=".into())),
            };
            if entries.iter().any(|e: &ActionEntry| e.label == label) {
                return Err(err(format!("duplicate label `{label}`")));
            }
            entries.push(ActionEntry::new(label, g, points));
        }
        Ok(ActionCatalog { entries })
    }

    pub fn to_text(&self) -> String {
        self.entries.iter().map(|e| e.to_line() + "\n").collect()
    }

    /// Every transitive group of degree `n` up to conjugacy, in its natural
    /// action, smallest order first.
    pub fn transitive(n: usize) -> Result<Self> {
        if n == 0 || n > 8 {
            return Err(Error::InvalidParameters(format!("no transitive table for degree {n}")));
        }
        let table = candidate_table(n);
        let mut groups: Vec<Arc<PermGroup>> = Vec::new();
        for class in 0..table.class_orders.len() {
            let c = table.candidates.iter().find(|c| c.class == class).expect("class member");
            groups.push(c.group.clone());
        }
        if n == 1 {
            groups.push(Arc::new(PermGroup::trivial(1)));
        } else if n == 2 {
            groups.push(Arc::new(PermGroup::symmetric(2)));
        } else {
            if n >= 4 {
                groups.push(Arc::new(PermGroup::alternating(n)));
            } else {
                // A_3 = C_3 is not in the table for degree 3.
                groups.push(Arc::new(PermGroup::alternating(3)));
            }
            groups.push(Arc::new(PermGroup::symmetric(n)));
        }
        let mut entries: Vec<ActionEntry> = Vec::new();
        for g in groups {
            let mut label = format!("{}_natural", transitive_name(&g));
            if entries.iter().any(|e| e.label == label) {
                let mut k = 2;
                while entries.iter().any(|e| e.label == format!("{label}{k}")) {
                    k += 1;
                }
                label = format!("{label}{k}");
            }
            entries.push(ActionEntry::new(&label, g, PointSpec::Natural));
        }
        Ok(ActionCatalog { entries })
    }

    pub fn labels(&self) -> Vec<&str> {
        self.entries.iter().map(|e| e.label.as_str()).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }
}

fn transitive_name(g: &PermGroup) -> String {
    let n = g.degree();
    let order = g.order();
    let has_n_cycle = g.elements().iter().any(|p| p.cycle_type() == vec![n]);
    let named = match (n, order) {
        (1, 1) => Some("C1"),
        (2, 2) => Some("C2"),
        (3, 3) => Some("C3"),
        (3, 6) => Some("S3"),
        (4, 4) if has_n_cycle => Some("C4"),
        (4, 4) => Some("V4"),
        (4, 8) => Some("D4"),
        (4, 12) => Some("A4"),
        (4, 24) => Some("S4"),
        (5, 5) => Some("C5"),
        (5, 10) => Some("D5"),
        (5, 20) => Some("F20"),
        (5, 60) => Some("A5"),
        (5, 120) => Some("S5"),
        (7, 7) => Some("C7"),
        (7, 14) => Some("D7"),
        (7, 21) => Some("F21"),
        (7, 42) => Some("F42"),
        (7, 168) => Some("L7"),
        _ => None,
    };
    match named {
        Some(s) => s.to_string(),
        None if order == 2520 && n == 7 => "A7".into(),
        None if order == 5040 && n == 7 => "S7".into(),
        None => format!("T{n}o{order}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trip() {
        let text = "S3_natural degree=3 gens=(1,2);(1,2,3) points=natural\nV4_regular group=C2xC2 points=regular\n";
        let c = ActionCatalog::parse(text).unwrap();
        assert_eq!(c.labels(), vec!["S3_natural", "V4_regular"]);
        assert_eq!(c.entries[1].degree(), 4);
        let again = ActionCatalog::parse(&c.to_text()).unwrap();
        assert_eq!(again.entries[0].group.order(), 6);
        assert!(ActionCatalog::parse("X degree=3").is_err());
        assert!(ActionCatalog::parse("X group=S3 points=pairs").is_err());
    }

    #[test]
    fn transitive_catalogs() {
        let names = |n| ActionCatalog::transitive(n).unwrap().labels().iter().map(|s| s.to_string()).collect::<Vec<_>>();
        assert_eq!(names(2), vec!["C2_natural"]);
        assert_eq!(names(3), vec!["C3_natural", "S3_natural"]);
        assert_eq!(names(4), vec!["V4_natural", "C4_natural", "D4_natural", "A4_natural", "S4_natural"]);
        assert_eq!(ActionCatalog::transitive(6).unwrap().len(), 16);
    }
}
