use crate::label::tuple;

use super::limit::{number_classes, union};
use super::LimitError;

/// A function between finite labelled sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetMap {
    pub domain: Vec<String>,
    pub codomain: Vec<String>,
    pub map: Vec<usize>,
}

impl SetMap {
    pub fn new(domain: Vec<String>, codomain: Vec<String>, map: Vec<usize>) -> Result<Self, LimitError> {
        if map.len() != domain.len() || map.iter().any(|&y| y >= codomain.len()) {
            return Err(LimitError::InvalidDiagram("map is not a function between the given sets".into()));
        }
        Ok(SetMap { domain, codomain, map })
    }

    /// Builds a map from `(x, f(x))` label pairs.
    pub fn from_pairs(
        domain: Vec<String>,
        codomain: Vec<String>,
        pairs: &[(String, String)],
    ) -> Result<Self, LimitError> {
        let bad = |msg: String| LimitError::InvalidDiagram(msg);
        let mut map = vec![None; domain.len()];
        for (x, y) in pairs {
            let xi = domain.iter().position(|e| e == x).ok_or_else(|| bad(format!("unknown element `{x}`")))?;
            let yi = codomain.iter().position(|e| e == y).ok_or_else(|| bad(format!("unknown element `{y}`")))?;
            map[xi] = Some(yi);
        }
        let map = map
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| bad("map is not total".into()))?;
        SetMap::new(domain, codomain, map)
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn after(&self, first: &SetMap) -> SetMap {
        SetMap {
            domain: first.domain.clone(),
            codomain: self.codomain.clone(),
            map: first.map.iter().map(|&y| self.map[y]).collect(),
        }
    }
}

/// `A ×_C B` for `f: A → C` and `g: B → C`, in lexicographic order of pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pullback {
    pub apex: Vec<String>,
    pub pairs: Vec<(usize, usize)>,
}

impl Pullback {
    pub fn first(&self) -> Vec<usize> {
        self.pairs.iter().map(|p| p.0).collect()
    }

    pub fn second(&self) -> Vec<usize> {
        self.pairs.iter().map(|p| p.1).collect()
    }
}

pub fn pullback(f: &SetMap, g: &SetMap) -> Result<Pullback, LimitError> {
    if f.codomain != g.codomain {
        return Err(LimitError::CodomainMismatch);
    }
    let mut pairs = Vec::new();
    for a in 0..f.domain.len() {
        for b in 0..g.domain.len() {
            if f.map[a] == g.map[b] {
                pairs.push((a, b));
            }
        }
    }
    let apex = pairs
        .iter()
        .map(|&(a, b)| tuple([f.domain[a].as_str(), g.domain[b].as_str()]))
        .collect();
    Ok(Pullback { apex, pairs })
}

/// The equalizer of `f, g: A → B` as the inclusion of the agreeing elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equalizer {
    pub apex: Vec<String>,
    pub inclusion: Vec<usize>,
}

pub fn equalizer(f: &SetMap, g: &SetMap) -> Result<Equalizer, LimitError> {
    if f.domain != g.domain || f.codomain != g.codomain {
        return Err(LimitError::ShapeMismatch);
    }
    let inclusion: Vec<usize> = (0..f.domain.len()).filter(|&x| f.map[x] == g.map[x]).collect();
    let apex = inclusion.iter().map(|&x| f.domain[x].clone()).collect();
    Ok(Equalizer { apex, inclusion })
}

/// The coequalizer of `f, g: A → B`: the quotient of `B` by the equivalence
/// generated by `f(x) ~ g(x)`, classes ordered by least member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coequalizer {
    pub apex: Vec<String>,
    pub quotient: Vec<usize>,
    /// Least member of each class.
    pub representatives: Vec<usize>,
}

pub fn coequalizer(f: &SetMap, g: &SetMap) -> Result<Coequalizer, LimitError> {
    if f.domain != g.domain || f.codomain != g.codomain {
        return Err(LimitError::ShapeMismatch);
    }
    let mut parent: Vec<usize> = (0..f.codomain.len()).collect();
    for x in 0..f.domain.len() {
        union(&mut parent, f.map[x], g.map[x]);
    }
    let (quotient, representatives) = number_classes(&mut parent);
    let apex = representatives.iter().map(|&r| f.codomain[r].clone()).collect();
    Ok(Coequalizer {
        apex,
        quotient,
        representatives,
    })
}

/// Cartesian product of finite sets, lexicographic with the first factor
/// most significant. Returns the index tuples.
pub fn product_indices(sizes: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &n in sizes {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<usize>| {
                (0..n).map(move |i| {
                    let mut t = prefix.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
    }
    out
}
