use std::sync::Arc;

use crate::fincat::{enumerate_actions, FinCategory, FinFunctor, Mor, Obj, SetFunctor};
use crate::label::{first_duplicate, sort_labels};
use crate::{Bounds, Intractable};

use super::LimitError;

/// A covariant functor from a finite shape category to finite sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    shape: Arc<FinCategory>,
    values: Vec<Vec<String>>,
    action: Vec<Vec<usize>>,
}

impl SetFunctor for Diagram {
    fn base(&self) -> &Arc<FinCategory> {
        &self.shape
    }

    fn size(&self, o: Obj) -> usize {
        self.values[o.0].len()
    }

    fn action_ends(&self, m: Mor) -> (Obj, Obj) {
        (self.shape.source(m), self.shape.target(m))
    }

    fn act(&self, m: Mor, x: usize) -> usize {
        self.action[m.0][x]
    }

    fn element(&self, o: Obj, x: usize) -> &str {
        &self.values[o.0][x]
    }
}

impl Diagram {
    /// Validates shapes, identities and functoriality.
    pub fn new(
        shape: Arc<FinCategory>,
        values: Vec<Vec<String>>,
        action: Vec<Vec<usize>>,
    ) -> Result<Self, LimitError> {
        let bad = |msg: String| Err(LimitError::InvalidDiagram(msg));
        if values.len() != shape.object_count() || action.len() != shape.morphism_count() {
            return bad("value or action tables do not match the shape".into());
        }
        for (o, vals) in values.iter().enumerate() {
            if let Some(d) = first_duplicate(vals) {
                return bad(format!("element `{d}` listed twice at `{}`", shape.name(Obj(o))));
            }
        }
        for m in shape.morphisms() {
            let (s, t) = (shape.source(m), shape.target(m));
            if action[m.0].len() != values[s.0].len() || action[m.0].iter().any(|&y| y >= values[t.0].len()) {
                return bad(format!("action of `{}` is not a function", shape.mor_name(m)));
            }
        }
        for o in shape.objects() {
            if action[shape.identity(o).0].iter().enumerate().any(|(x, &y)| x != y) {
                return bad(format!("identity of `{}` does not act trivially", shape.name(o)));
            }
        }
        for (g, f) in shape.composable_pairs() {
            let h = shape.comp(g, f);
            for x in 0..values[shape.source(f).0].len() {
                if action[h.0][x] != action[g.0][action[f.0][x]] {
                    return bad(format!(
                        "action of `{} ∘ {}` is not the composite",
                        shape.mor_name(g),
                        shape.mor_name(f)
                    ));
                }
            }
        }
        Ok(Diagram { shape, values, action })
    }

    pub(crate) fn new_unchecked(shape: Arc<FinCategory>, values: Vec<Vec<String>>, action: Vec<Vec<usize>>) -> Self {
        Diagram { shape, values, action }
    }

    /// Builds a diagram from labels; value sets are put in canonical order
    /// and identity actions may be omitted.
    pub fn from_labels(
        shape: Arc<FinCategory>,
        values: &[(String, Vec<String>)],
        actions: &[(String, Vec<(String, String)>)],
    ) -> Result<Self, LimitError> {
        let bad = |msg: String| LimitError::InvalidDiagram(msg);
        let mut sets: Vec<Option<Vec<String>>> = vec![None; shape.object_count()];
        for (o, vals) in values {
            let o = shape.object_by_name(o).ok_or_else(|| bad(format!("unknown object `{o}`")))?;
            let mut vals = vals.clone();
            sort_labels(&mut vals);
            sets[o.0] = Some(vals);
        }
        let sets: Vec<Vec<String>> = sets
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| bad(format!("no value set for `{}`", shape.name(Obj(i))))))
            .collect::<Result<_, _>>()?;
        let mut maps: Vec<Option<Vec<usize>>> = vec![None; shape.morphism_count()];
        for (m, pairs) in actions {
            let m = shape.morphism_by_name(m).ok_or_else(|| bad(format!("unknown morphism `{m}`")))?;
            let (s, t) = (shape.source(m), shape.target(m));
            let mut map = vec![None; sets[s.0].len()];
            for (x, y) in pairs {
                let xi = sets[s.0].iter().position(|e| e == x).ok_or_else(|| bad(format!("unknown element `{x}`")))?;
                let yi = sets[t.0].iter().position(|e| e == y).ok_or_else(|| bad(format!("unknown element `{y}`")))?;
                map[xi] = Some(yi);
            }
            maps[m.0] = Some(
                map.into_iter()
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| bad(format!("action of `{}` is not total", shape.mor_name(m))))?,
            );
        }
        for o in shape.objects() {
            let id = shape.identity(o);
            if maps[id.0].is_none() {
                maps[id.0] = Some((0..sets[o.0].len()).collect());
            }
        }
        let maps = maps
            .into_iter()
            .enumerate()
            .map(|(i, m)| m.ok_or_else(|| bad(format!("no action for `{}`", shape.mor_name(Mor(i))))))
            .collect::<Result<_, _>>()?;
        Diagram::new(shape, sets, maps)
    }

    pub fn shape(&self) -> &Arc<FinCategory> {
        &self.shape
    }

    pub fn values(&self) -> &[Vec<String>] {
        &self.values
    }

    pub fn elements(&self, o: Obj) -> &[String] {
        &self.values[o.0]
    }

    pub fn action(&self, m: Mor) -> &[usize] {
        &self.action[m.0]
    }

    /// `F ∘ K` for a functor `K` into this diagram's shape.
    pub fn precompose(&self, k: &FinFunctor) -> Diagram {
        let a = k.source();
        let values = a.objects().map(|o| self.values[k.object(o).0].clone()).collect();
        let action = a.morphisms().map(|m| self.action[k.morphism(m).0].clone()).collect();
        Diagram::new_unchecked(a.clone(), values, action)
    }

    /// The diagram on the cospan `A → C ← B` given by two maps.
    pub fn from_cospan(f: &super::SetMap, g: &super::SetMap) -> Result<Diagram, LimitError> {
        let shape = Arc::new(FinCategory::cospan());
        let vals = vec![
            (String::from("A"), f.domain.clone()),
            (String::from("B"), g.domain.clone()),
            (String::from("C"), f.codomain.clone()),
        ];
        let pairs = |m: &super::SetMap| -> Vec<(String, String)> {
            m.map
                .iter()
                .enumerate()
                .map(|(x, &y)| (m.domain[x].clone(), m.codomain[y].clone()))
                .collect()
        };
        Diagram::from_labels(shape, &vals, &[("f".into(), pairs(f)), ("g".into(), pairs(g))])
    }

    /// Every diagram on `shape` with the given sizes, elements labelled `0, 1, …`.
    pub fn enumerate_with_sizes(
        shape: &Arc<FinCategory>,
        sizes: &[usize],
        bounds: &Bounds,
    ) -> Result<Vec<Diagram>, Intractable> {
        let actions = enumerate_actions(shape, sizes, false, bounds)?;
        let values: Vec<Vec<String>> = sizes.iter().map(|&n| (0..n).map(|i| i.to_string()).collect()).collect();
        Ok(actions
            .into_iter()
            .map(|action| Diagram::new_unchecked(shape.clone(), values.clone(), action))
            .collect())
    }

    /// Every diagram on `shape` with value sets of size at most `max_size`.
    pub fn enumerate(shape: &Arc<FinCategory>, max_size: usize, bounds: &Bounds) -> Result<Vec<Diagram>, Intractable> {
        let mut out = Vec::new();
        for sizes in crate::fincat::size_vectors(shape.object_count(), max_size) {
            out.extend(Diagram::enumerate_with_sizes(shape, &sizes, bounds)?);
            if out.len() > bounds.enumeration {
                return Err(Intractable { bound: bounds.enumeration });
            }
        }
        Ok(out)
    }
}
