use std::sync::Arc;

use crate::fincat::{FinCategory, Presheaf, SetFunctor};
use crate::site::OpenCoverSite;

use super::TorsorError;

/// A finite group given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    labels: Vec<String>,
    table: Vec<usize>,
    unit: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Validates closure, associativity, the unit and inverses.
    pub fn new(labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self, TorsorError> {
        let n = labels.len();
        if n == 0 || table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(TorsorError::NotAGroup("table does not match the elements".into()));
        }
        let flat: Vec<usize> = table.concat();
        let mul = |a: usize, b: usize| flat[a * n + b];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                        return Err(TorsorError::NotAGroup(format!(
                            "({0}{1}){2} differs from {0}({1}{2})",
                            labels[a], labels[b], labels[c]
                        )));
                    }
                }
            }
        }
        let unit = (0..n)
            .find(|&e| (0..n).all(|a| mul(e, a) == a && mul(a, e) == a))
            .ok_or_else(|| TorsorError::NotAGroup("no unit".into()))?;
        let inverse = (0..n)
            .map(|a| {
                (0..n)
                    .find(|&b| mul(a, b) == unit && mul(b, a) == unit)
                    .ok_or_else(|| TorsorError::NotAGroup(format!("`{}` has no inverse", labels[a])))
            })
            .collect::<Result<_, _>>()?;
        Ok(FiniteGroup {
            labels,
            table: flat,
            unit,
            inverse,
        })
    }

    /// `ℤ/n` with elements `0, …, n-1`.
    pub fn cyclic(n: usize) -> Self {
        let labels = (0..n).map(|i| i.to_string()).collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroup::new(labels, table).expect("cyclic groups are groups")
    }

    pub fn trivial() -> Self {
        FiniteGroup::new(vec!["e".into()], vec![vec![0]]).expect("the trivial group")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.len() + b]
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.len()).map(<[usize]>::to_vec).collect()
    }
}

/// A presheaf whose value at each object is a group, with every
/// restriction a homomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSheaf {
    pub presheaf: Presheaf,
    pub groups: Vec<FiniteGroup>,
}

impl GroupSheaf {
    pub fn new(presheaf: Presheaf, groups: Vec<FiniteGroup>) -> Result<Self, TorsorError> {
        let cat = presheaf.base().clone();
        if groups.len() != cat.object_count() || cat.objects().any(|u| groups[u.0].labels() != presheaf.elements(u)) {
            return Err(TorsorError::Shape("group elements must be the presheaf's elements".into()));
        }
        for m in cat.morphisms() {
            let (v, u) = (cat.source(m), cat.target(m));
            let (gu, gv) = (&groups[u.0], &groups[v.0]);
            let r = |x| presheaf.restrict(m, x);
            let hom = (0..gu.len()).all(|a| (0..gu.len()).all(|b| r(gu.mul(a, b)) == gv.mul(r(a), r(b))));
            if !hom {
                return Err(TorsorError::NotAHomomorphism(cat.mor_name(m).to_string()));
            }
        }
        Ok(GroupSheaf { presheaf, groups })
    }

    /// The same group at every object, with identity restrictions.
    pub fn constant(base: Arc<FinCategory>, group: &FiniteGroup) -> Self {
        let values = base.objects().map(|_| group.labels().to_vec()).collect();
        let restrict = base.morphisms().map(|_| (0..group.len()).collect()).collect();
        let presheaf = Presheaf::new(base.clone(), values, restrict).expect("constant presheaf");
        let groups = base.objects().map(|_| group.clone()).collect();
        GroupSheaf { presheaf, groups }
    }

    /// Locally constant `group`-valued functions on the opens of a finite
    /// space, multiplied pointwise. Elements are listed lexicographically with
    /// the first point most significant and labelled by concatenating the
    /// values (comma separated unless every label is one character); the
    /// empty open carries `*`.
    pub fn locally_constant(site: &OpenCoverSite, group: &FiniteGroup) -> Self {
        let space = &site.space;
        let cat = site.category.clone();
        let n = group.len();
        let sep = if group.labels().iter().all(|l| l.chars().count() == 1) { "" } else { "," };
        let mut assignments: Vec<Vec<Vec<usize>>> = Vec::new();
        let mut values = Vec::new();
        for u in 0..space.open_count() {
            let pts: Vec<usize> = space.opens()[u].iter().copied().collect();
            let mut here = Vec::new();
            for code in 0..n.pow(pts.len() as u32) {
                let mut c = code;
                let mut vals = vec![0; pts.len()];
                for slot in vals.iter_mut().rev() {
                    *slot = c % n;
                    c /= n;
                }
                let at = |p: usize| pts.iter().position(|&q| q == p).map(|i| vals[i]);
                let constant = pts
                    .iter()
                    .all(|&p| space.opens()[space.minimal_open(p)].iter().all(|&q| at(q) == at(p)));
                if constant {
                    here.push(vals);
                }
            }
            values.push(
                here.iter()
                    .map(|vals| {
                        if vals.is_empty() {
                            "*".to_string()
                        } else {
                            vals.iter().map(|&g| group.label(g)).collect::<Vec<_>>().join(sep)
                        }
                    })
                    .collect::<Vec<_>>(),
            );
            assignments.push(here);
        }
        let restrict = cat
            .morphisms()
            .map(|m| {
                let (v, u) = (cat.source(m).0, cat.target(m).0);
                let pts_u: Vec<usize> = space.opens()[u].iter().copied().collect();
                let keep: Vec<usize> = (0..pts_u.len()).filter(|&i| space.opens()[v].contains(&pts_u[i])).collect();
                assignments[u]
                    .iter()
                    .map(|a| {
                        let cut: Vec<usize> = keep.iter().map(|&i| a[i]).collect();
                        assignments[v].iter().position(|b| *b == cut).expect("restrictions stay locally constant")
                    })
                    .collect()
            })
            .collect();
        let groups = assignments
            .iter()
            .zip(&values)
            .map(|(elems, labels)| {
                let table = elems
                    .iter()
                    .map(|a| {
                        elems
                            .iter()
                            .map(|b| {
                                let prod: Vec<usize> = a.iter().zip(b).map(|(&x, &y)| group.mul(x, y)).collect();
                                elems.iter().position(|c| *c == prod).expect("pointwise products stay locally constant")
                            })
                            .collect()
                    })
                    .collect();
                FiniteGroup::new(labels.clone(), table).expect("pointwise products form a group")
            })
            .collect();
        let presheaf = Presheaf::new(cat, values, restrict).expect("locally constant functions form a presheaf");
        GroupSheaf::new(presheaf, groups).expect("restriction is a homomorphism")
    }

    pub fn base(&self) -> &Arc<FinCategory> {
        self.presheaf.base()
    }
}
