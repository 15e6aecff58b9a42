use std::collections::BTreeSet;
use std::sync::Arc;

use crate::fincat::{FinCategory, Obj};
use crate::label::{first_duplicate, set, sort_labels};
use crate::Bounds;

use super::{all_sieves, GrothendieckTopology, SiteError};

/// A finite topological space. Opens are kept sorted by size and then by
/// their sorted member indices, so `∅` comes first and the whole space last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSpace {
    points: Vec<String>,
    opens: Vec<BTreeSet<usize>>,
    names: Vec<Option<String>>,
}

fn open_order(a: &BTreeSet<usize>, b: &BTreeSet<usize>) -> std::cmp::Ordering {
    (a.len(), a.iter().collect::<Vec<_>>()).cmp(&(b.len(), b.iter().collect::<Vec<_>>()))
}

impl FiniteSpace {
    /// Validates that the opens contain `∅` and the whole space and are
    /// closed under binary union and intersection.
    pub fn new(points: Vec<String>, opens: Vec<Vec<String>>) -> Result<Self, SiteError> {
        let (points, opens) = Self::resolve(points, opens)?;
        let all: BTreeSet<usize> = (0..points.len()).collect();
        if !opens.contains(&BTreeSet::new()) {
            return Err(SiteError::InvalidSpace("the empty set is not open".into()));
        }
        if !opens.contains(&all) {
            return Err(SiteError::InvalidSpace("the whole space is not open".into()));
        }
        let label = |s: &BTreeSet<usize>| set(s.iter().map(|&i| points[i].as_str()));
        for a in &opens {
            for b in &opens {
                let u: BTreeSet<usize> = a.union(b).copied().collect();
                if !opens.contains(&u) {
                    return Err(SiteError::InvalidSpace(format!("{} ∪ {} is not open", label(a), label(b))));
                }
                let i: BTreeSet<usize> = a.intersection(b).copied().collect();
                if !opens.contains(&i) {
                    return Err(SiteError::InvalidSpace(format!("{} ∩ {} is not open", label(a), label(b))));
                }
            }
        }
        let names = vec![None; opens.len()];
        Ok(FiniteSpace { points, opens, names })
    }

    /// The topology generated by a subbasis: all unions of finite
    /// intersections, together with `∅` and the whole space.
    pub fn generated(points: Vec<String>, subbasis: Vec<Vec<String>>) -> Result<Self, SiteError> {
        let (points, sub) = Self::resolve(points, subbasis)?;
        let all: BTreeSet<usize> = (0..points.len()).collect();
        let mut opens: BTreeSet<BTreeSet<usize>> = sub.into_iter().collect();
        opens.insert(BTreeSet::new());
        opens.insert(all);
        loop {
            let current: Vec<BTreeSet<usize>> = opens.iter().cloned().collect();
            let before = opens.len();
            for a in &current {
                for b in &current {
                    opens.insert(a.union(b).copied().collect());
                    opens.insert(a.intersection(b).copied().collect());
                }
            }
            if opens.len() == before {
                break;
            }
        }
        let opens = opens
            .into_iter()
            .map(|s| s.into_iter().map(|i| points[i].clone()).collect())
            .collect();
        FiniteSpace::new(points, opens)
    }

    fn resolve(
        mut points: Vec<String>,
        sets: Vec<Vec<String>>,
    ) -> Result<(Vec<String>, Vec<BTreeSet<usize>>), SiteError> {
        if let Some(d) = first_duplicate(&points) {
            return Err(SiteError::InvalidSpace(format!("point `{d}` listed twice")));
        }
        sort_labels(&mut points);
        let mut opens = Vec::new();
        for s in sets {
            let mut members = BTreeSet::new();
            for p in s {
                let i = points
                    .iter()
                    .position(|q| *q == p)
                    .ok_or_else(|| SiteError::InvalidSpace(format!("unknown point `{p}`")))?;
                members.insert(i);
            }
            if !opens.contains(&members) {
                opens.push(members);
            }
        }
        opens.sort_by(open_order);
        Ok((points, opens))
    }

    /// Gives an open a display name, used as its object name in the site.
    pub fn name_open(&mut self, members: &[&str], name: &str) -> Result<(), SiteError> {
        let target: BTreeSet<usize> = members
            .iter()
            .map(|p| {
                self.points
                    .iter()
                    .position(|q| q == p)
                    .ok_or_else(|| SiteError::InvalidSpace(format!("unknown point `{p}`")))
            })
            .collect::<Result<_, _>>()?;
        let i = self
            .opens
            .iter()
            .position(|o| *o == target)
            .ok_or_else(|| SiteError::InvalidSpace(format!("{} is not open", set(members.iter().copied()))))?;
        if self.labels().iter().enumerate().any(|(j, l)| j != i && l == name) {
            return Err(SiteError::InvalidSpace(format!("open name `{name}` already in use")));
        }
        self.names[i] = Some(name.to_string());
        Ok(())
    }

    pub fn with_name(mut self, members: &[&str], name: &str) -> Self {
        self.name_open(members, name).expect("named open exists");
        self
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn opens(&self) -> &[BTreeSet<usize>] {
        &self.opens
    }

    pub fn open_count(&self) -> usize {
        self.opens.len()
    }

    /// Display label of every open: its name if it has one, otherwise its
    /// members in set notation.
    pub fn labels(&self) -> Vec<String> {
        (0..self.opens.len()).map(|i| self.label(i)).collect()
    }

    pub fn label(&self, i: usize) -> String {
        match &self.names[i] {
            Some(n) => n.clone(),
            None => set(self.opens[i].iter().map(|&p| self.points[p].as_str())),
        }
    }

    pub fn names(&self) -> Vec<(String, String)> {
        (0..self.opens.len())
            .filter_map(|i| {
                self.names[i]
                    .as_ref()
                    .map(|n| (n.clone(), set(self.opens[i].iter().map(|&p| self.points[p].as_str()))))
            })
            .collect()
    }

    /// Looks up an open by display label or by set notation.
    pub fn open_by_label(&self, label: &str) -> Option<usize> {
        (0..self.opens.len()).find(|&i| {
            self.label(i) == label || set(self.opens[i].iter().map(|&p| self.points[p].as_str())) == label
        })
    }

    pub fn members(&self, i: usize) -> Vec<&str> {
        self.opens[i].iter().map(|&p| self.points[p].as_str()).collect()
    }

    pub fn intersection(&self, i: usize, j: usize) -> usize {
        let m: BTreeSet<usize> = self.opens[i].intersection(&self.opens[j]).copied().collect();
        self.opens.iter().position(|o| *o == m).expect("opens are closed under intersection")
    }

    pub fn union(&self, i: usize, j: usize) -> usize {
        let m: BTreeSet<usize> = self.opens[i].union(&self.opens[j]).copied().collect();
        self.opens.iter().position(|o| *o == m).expect("opens are closed under union")
    }

    /// The smallest open containing point `p`.
    pub fn minimal_open(&self, p: usize) -> usize {
        (0..self.opens.len())
            .filter(|&i| self.opens[i].contains(&p))
            .min_by_key(|&i| self.opens[i].len())
            .expect("the whole space is open")
    }

    /// The poset of opens under inclusion, objects named by [`labels`](Self::labels).
    pub fn category(&self) -> FinCategory {
        FinCategory::preorder(self.labels(), |i, j| self.opens[i].is_subset(&self.opens[j]))
            .expect("inclusion is a partial order")
    }

    /// `{⊤, ⊥}` with opens `∅ ⊆ {⊤} ⊆ S`; points are called `top` and `bot`
    /// and the whole space is named `S`.
    pub fn sierpinski() -> Self {
        FiniteSpace::new(
            vec!["top".into(), "bot".into()],
            vec![vec![], vec!["top".into()], vec!["top".into(), "bot".into()]],
        )
        .expect("Sierpiński space is valid")
        .with_name(&["top", "bot"], "S")
    }

    /// The discrete space on `points`.
    pub fn discrete(points: &[&str]) -> Self {
        let pts: Vec<String> = points.iter().map(|s| s.to_string()).collect();
        let singletons = pts.iter().map(|p| vec![p.clone()]).collect();
        FiniteSpace::generated(pts, singletons).expect("discrete space is valid")
    }

    /// The discrete space `{a, b}` with the whole space named `D`.
    pub fn discrete2() -> Self {
        FiniteSpace::discrete(&["a", "b"]).with_name(&["a", "b"], "D")
    }

    /// The chain `∅ ⊆ {1} ⊆ {1,2} ⊆ {1,2,3}`.
    pub fn chain3() -> Self {
        let p = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        FiniteSpace::new(p(&["1", "2", "3"]), vec![p(&[]), p(&["1"]), p(&["1", "2"]), p(&["1", "2", "3"])])
            .expect("chain is valid")
    }

    /// The four-point pseudocircle: open points `a`, `b` and closed points
    /// `x`, `y`, covered by `Ux = {a,b,x}` and `Uy = {a,b,y}` meeting in `{a,b}`.
    pub fn pseudocircle() -> Self {
        let p = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        FiniteSpace::generated(p(&["a", "b", "x", "y"]), vec![p(&["a"]), p(&["b"]), p(&["a", "b", "x"]), p(&["a", "b", "y"])])
            .expect("pseudocircle is valid")
            .with_name(&["a", "b", "x"], "Ux")
            .with_name(&["a", "b", "y"], "Uy")
            .with_name(&["a", "b", "x", "y"], "whole")
    }
}

/// The site of opens of a finite space with the open-cover topology.
#[derive(Clone, Debug)]
pub struct OpenCoverSite {
    pub space: FiniteSpace,
    pub category: Arc<FinCategory>,
    pub topology: GrothendieckTopology,
}

impl OpenCoverSite {
    /// Object of the site for open `i` of the space.
    pub fn object(&self, i: usize) -> Obj {
        Obj(i)
    }

    pub fn object_by_label(&self, label: &str) -> Option<Obj> {
        self.space.open_by_label(label).map(Obj)
    }
}

/// `J(U)` = the sieves on `U` whose domains have union `U`.
pub fn open_cover_topology(space: &FiniteSpace, bounds: &Bounds) -> Result<OpenCoverSite, SiteError> {
    let category = Arc::new(space.category());
    let mut covers = Vec::with_capacity(space.open_count());
    for u in category.objects() {
        let covering: Vec<_> = all_sieves(&category, u, bounds)?
            .into_iter()
            .filter(|s| {
                let union: BTreeSet<usize> = s
                    .domains(&category)
                    .iter()
                    .flat_map(|v| space.opens()[v.0].iter().copied())
                    .collect();
                union == space.opens()[u.0]
            })
            .collect();
        covers.push(covering);
    }
    let topology = GrothendieckTopology::from_sieves(category.clone(), covers)?;
    Ok(OpenCoverSite {
        space: space.clone(),
        category,
        topology,
    })
}
