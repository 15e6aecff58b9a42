use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::fincat::{FinCategory, Obj, SetFunctor};
use crate::search::Search;
use crate::site::{generate_sieve, GrothendieckTopology};
use crate::Bounds;

use super::{GroupSheaf, TorsorCandidate, TorsorError};

/// A finite family of objects below `target` whose generated sieve covers it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cover {
    target: Obj,
    members: Vec<Obj>,
    // overlaps[i][j] = U_i ∩ U_j
    overlaps: Vec<Vec<Obj>>,
}

impl Cover {
    pub fn new(j: &GrothendieckTopology, target: Obj, members: Vec<Obj>) -> Result<Self, TorsorError> {
        let cat = j.base();
        if !cat.is_thin() {
            return Err(TorsorError::NotACover("covers need a thin site".into()));
        }
        let mut arrows = Vec::new();
        for &m in &members {
            let f = cat.arrow_between(m, target).ok_or_else(|| {
                TorsorError::NotACover(format!("`{}` does not lie below `{}`", cat.name(m), cat.name(target)))
            })?;
            arrows.push(f);
        }
        let mut overlaps = Vec::new();
        for &a in &members {
            let mut row = Vec::new();
            for &b in &members {
                row.push(cat.meet(a, b).ok_or_else(|| {
                    TorsorError::NotACover(format!("`{}` and `{}` have no meet", cat.name(a), cat.name(b)))
                })?);
            }
            overlaps.push(row);
        }
        let cover = Cover {
            target,
            members,
            overlaps,
        };
        for i in 0..cover.len() {
            for k in 0..cover.len() {
                cat.meet(cover.overlaps[i][k], cover.members[k])
                    .ok_or_else(|| TorsorError::NotACover("a triple overlap has no meet".into()))?;
            }
        }
        if !j.is_covering(&generate_sieve(cat, target, &arrows)?) {
            return Err(TorsorError::NotACover(format!(
                "{} does not generate a covering sieve on `{}`",
                crate::label::set(cover.members.iter().map(|&m| cat.name(m))),
                cat.name(target)
            )));
        }
        Ok(cover)
    }

    pub fn target(&self) -> Obj {
        self.target
    }

    pub fn members(&self) -> &[Obj] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn overlap(&self, i: usize, j: usize) -> Obj {
        self.overlaps[i][j]
    }

    pub fn triple(&self, cat: &FinCategory, i: usize, j: usize, k: usize) -> Obj {
        cat.meet(self.overlaps[i][j], self.members[k]).expect("checked on construction")
    }

    pub fn names<'c>(&self, cat: &'c FinCategory) -> Vec<&'c str> {
        self.members.iter().map(|&m| cat.name(m)).collect()
    }
}

/// Restricts `x ∈ G(from)` to `to ≤ from`.
fn restrict(g: &GroupSheaf, from: Obj, to: Obj, x: usize) -> usize {
    let f = g.base().arrow_between(to, from).expect("restriction to a smaller object");
    g.presheaf.restrict(f, x)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle {
    pub cover: Cover,
    /// `values[i][j]` is an element of `G(U_i ∩ U_j)`.
    pub values: Vec<Vec<usize>>,
}

impl Cocycle {
    pub fn new(group: &GroupSheaf, cover: Cover, values: Vec<Vec<usize>>) -> Result<Self, TorsorError> {
        let n = cover.len();
        let fits = values.len() == n
            && values.iter().enumerate().all(|(i, row)| {
                row.len() == n && row.iter().enumerate().all(|(j, &x)| x < group.groups[cover.overlap(i, j).0].len())
            });
        if !fits {
            return Err(TorsorError::Shape("one group element per ordered pair of members".into()));
        }
        Ok(Cocycle { cover, values })
    }

    /// Builds a cocycle from labelled entries `(i, j, g_ij)`. Missing
    /// diagonal entries are units and a missing `g_ji` is the inverse of `g_ij`.
    pub fn from_labels(group: &GroupSheaf, cover: Cover, entries: &[(usize, usize, &str)]) -> Result<Self, TorsorError> {
        let n = cover.len();
        let cat = group.base();
        let mut values = vec![vec![None; n]; n];
        for &(i, j, label) in entries {
            if i >= n || j >= n {
                return Err(TorsorError::Shape(format!("no member {}", i.max(j))));
            }
            let o = cover.overlap(i, j);
            let x = group.presheaf.position(o, label).ok_or_else(|| {
                TorsorError::Shape(format!("`{label}` is not an element over `{}`", cat.name(o)))
            })?;
            values[i][j] = Some(x);
        }
        let mut full = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                let g = &group.groups[cover.overlap(i, j).0];
                full[i][j] = match (values[i][j], values[j][i]) {
                    (Some(x), _) => x,
                    (None, Some(y)) => g.inv(y),
                    (None, None) if i == j => g.unit(),
                    _ => {
                        return Err(TorsorError::Shape(format!(
                            "no value for `{}` over `{}`",
                            cat.name(cover.members[i]),
                            cat.name(cover.members[j])
                        )))
                    }
                };
            }
        }
        Cocycle::new(group, cover, full)
    }

    pub fn unit(group: &GroupSheaf, cover: Cover) -> Self {
        let n = cover.len();
        let values = (0..n)
            .map(|i| (0..n).map(|j| group.groups[cover.overlap(i, j).0].unit()).collect())
            .collect();
        Cocycle { cover, values }
    }

    /// `g_ij = h_i⁻¹ h_j` on overlaps.
    pub fn coboundary(group: &GroupSheaf, cover: Cover, h: &[usize]) -> Result<Self, TorsorError> {
        let n = cover.len();
        if h.len() != n || h.iter().enumerate().any(|(i, &x)| x >= group.groups[cover.members[i].0].len()) {
            return Err(TorsorError::Shape("one group element per member".into()));
        }
        let values = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let o = cover.overlap(i, j);
                        let hi = restrict(group, cover.members[i], o, h[i]);
                        let hj = restrict(group, cover.members[j], o, h[j]);
                        let g = &group.groups[o.0];
                        g.mul(g.inv(hi), hj)
                    })
                    .collect()
            })
            .collect();
        Ok(Cocycle { cover, values })
    }

    pub fn label<'g>(&self, group: &'g GroupSheaf, i: usize, j: usize) -> &'g str {
        group.presheaf.label(self.cover.overlap(i, j), self.values[i][j])
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CocycleReport {
    /// Members whose `g_ii` is not the unit.
    pub bad_units: Vec<String>,
    /// Ordered triples with `g_ij g_jk ≠ g_ik` on the triple overlap.
    pub bad_triples: Vec<(String, String, String)>,
}

impl CocycleReport {
    pub fn holds(&self) -> bool {
        self.bad_units.is_empty() && self.bad_triples.is_empty()
    }

    pub fn describe(&self) -> Option<String> {
        if let Some(u) = self.bad_units.first() {
            return Some(format!("the diagonal entry at `{u}` is not the unit"));
        }
        self.bad_triples
            .first()
            .map(|(i, j, k)| format!("the cocycle identity fails on ({i}, {j}, {k})"))
    }
}

pub fn check_cocycle(group: &GroupSheaf, c: &Cocycle) -> CocycleReport {
    let cat = group.base();
    let cover = &c.cover;
    let names = cover.names(cat);
    let n = cover.len();
    let mut report = CocycleReport::default();
    for i in 0..n {
        if c.values[i][i] != group.groups[cover.overlap(i, i).0].unit() {
            report.bad_units.push(names[i].to_string());
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let t = cover.triple(cat, i, j, k);
                let g = &group.groups[t.0];
                let at = |a: usize, b: usize| restrict(group, cover.overlap(a, b), t, c.values[a][b]);
                if g.mul(at(i, j), at(j, k)) != at(i, k) {
                    report
                        .bad_triples
                        .push((names[i].to_string(), names[j].to_string(), names[k].to_string()));
                }
            }
        }
    }
    report
}

/// A chosen section `s_i ∈ P(U_i)` for every member of a cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalSections {
    pub cover: Cover,
    pub sections: Vec<usize>,
}

impl LocalSections {
    pub fn new(t: &TorsorCandidate, cover: Cover, sections: Vec<usize>) -> Result<Self, TorsorError> {
        let ok = sections.len() == cover.len()
            && sections.iter().zip(cover.members()).all(|(&s, &m)| s < t.space.size(m));
        if !ok {
            return Err(TorsorError::Shape("one section per member of the cover".into()));
        }
        Ok(LocalSections { cover, sections })
    }
}

/// Every choice of local sections over the cover.
pub fn local_section_choices(t: &TorsorCandidate, cover: &Cover, bounds: &Bounds) -> Result<Vec<LocalSections>, TorsorError> {
    let domains = cover.members().iter().map(|&m| t.space.size(m)).collect();
    Ok(Search::new(domains)
        .solutions(bounds.enumeration, bounds.exec)?
        .into_iter()
        .map(|sections| LocalSections {
            cover: cover.clone(),
            sections,
        })
        .collect())
}

/// The unique `g_ij` with `s_j = s_i · g_ij` on each overlap.
pub fn extract_cocycle(t: &TorsorCandidate, l: &LocalSections) -> Result<Cocycle, TorsorError> {
    let cat = t.base();
    let cover = &l.cover;
    let n = cover.len();
    let mut values = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let o = cover.overlap(i, j);
            let down = |k: usize| {
                let f = cat.arrow_between(o, cover.members()[k]).expect("overlap lies below the member");
                t.space.restrict(f, l.sections[k])
            };
            let (si, sj) = (down(i), down(j));
            let g = &t.group.groups[o.0];
            let carriers: Vec<usize> = (0..g.len()).filter(|&a| t.act(o, si, a) == sj).collect();
            if carriers.len() != 1 {
                return Err(TorsorError::NotUniquelyTransitive {
                    object: cat.name(o).to_string(),
                    from: t.space.label(o, si).to_string(),
                    to: t.space.label(o, sj).to_string(),
                    count: carriers.len(),
                });
            }
            values[i][j] = carriers[0];
        }
    }
    Ok(Cocycle {
        cover: cover.clone(),
        values,
    })
}

/// Searches for `h_i ∈ G(U_i)` with `c2_ij = h_i⁻¹ c1_ij h_j` on every
/// overlap and returns the lexicographically first witness.
pub fn cocycles_equivalent(group: &GroupSheaf, c1: &Cocycle, c2: &Cocycle) -> Result<Option<Vec<usize>>, TorsorError> {
    if c1.cover != c2.cover {
        return Err(TorsorError::CoverMismatch);
    }
    let cover = &c1.cover;
    let fits = |c: &Cocycle| {
        c.values.iter().enumerate().all(|(i, row)| {
            row.iter().enumerate().all(|(j, &x)| x < group.groups[cover.overlap(i, j).0].len())
        })
    };
    if cover.members().iter().any(|m| m.0 >= group.groups.len()) || !fits(c1) || !fits(c2) {
        return Err(TorsorError::CoverMismatch);
    }
    let n = cover.len();
    let mut search = Search::new(cover.members().iter().map(|&m| group.groups[m.0].len()).collect());
    for i in 0..n {
        for j in 0..n {
            let (a, b) = (c1.values[i][j], c2.values[i][j]);
            search.constrain(&[i, j], move |h| {
                let o = cover.overlap(i, j);
                let g = &group.groups[o.0];
                let hi = restrict(group, cover.members()[i], o, h[i]);
                let hj = restrict(group, cover.members()[j], o, h[j]);
                g.mul(g.mul(g.inv(hi), a), hj) == b
            });
        }
    }
    Ok(search.first())
}

/// Every cocycle on the cover, in lexicographic order of the entries
/// `g_ij` with `i < j`.
pub fn all_cocycles(group: &GroupSheaf, cover: &Cover, bounds: &Bounds) -> Result<Vec<Cocycle>, TorsorError> {
    let cat = group.base();
    let n = cover.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let var = |i: usize, j: usize| pairs.iter().position(|&p| p == (i, j)).expect("an upper pair");
    let mut search = Search::new(pairs.iter().map(|&(i, j)| group.groups[cover.overlap(i, j).0].len()).collect());
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let (ij, jk, ik) = (var(i, j), var(j, k), var(i, k));
                let t = cover.triple(cat, i, j, k);
                search.constrain(&[ij, jk, ik], move |a| {
                    let at = |x: usize, y: usize, v: usize| restrict(group, cover.overlap(x, y), t, a[v]);
                    group.groups[t.0].mul(at(i, j, ij), at(j, k, jk)) == at(i, k, ik)
                });
            }
        }
    }
    let solutions = search.solutions(bounds.enumeration, bounds.exec)?;
    Ok(solutions
        .into_iter()
        .map(|a| {
            let values = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            let g = &group.groups[cover.overlap(i, j).0];
                            match i.cmp(&j) {
                                std::cmp::Ordering::Equal => g.unit(),
                                std::cmp::Ordering::Less => a[var(i, j)],
                                std::cmp::Ordering::Greater => g.inv(a[var(j, i)]),
                            }
                        })
                        .collect()
                })
                .collect();
            Cocycle {
                cover: cover.clone(),
                values,
            }
        })
        .collect())
}

/// `count` cocycles drawn uniformly, with replacement, from [`all_cocycles`].
pub fn random_cocycles(
    group: &GroupSheaf,
    cover: &Cover,
    count: usize,
    seed: u64,
    bounds: &Bounds,
) -> Result<Vec<Cocycle>, TorsorError> {
    let all = all_cocycles(group, cover, bounds)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..count).map(|_| all[rng.gen_range(0..all.len())].clone()).collect())
}
