use crate::search::Search;
use crate::Bounds;

use super::{NaturalError, Obj, SetFunctor};

/// A natural transformation, stored as one component function per object.
/// The source and target functors are supplied alongside when it is used.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Natural {
    pub components: Vec<Vec<usize>>,
}

/// A naturality square that does not commute.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaturalityFailure {
    pub morphism: String,
    pub element: String,
}

impl Natural {
    pub fn component(&self, o: Obj) -> &[usize] {
        &self.components[o.0]
    }

    pub fn at(&self, o: Obj, x: usize) -> usize {
        self.components[o.0][x]
    }

    /// The identity transformation on `f`.
    pub fn identity(f: &dyn SetFunctor) -> Self {
        Natural {
            components: f.base().objects().map(|o| (0..f.size(o)).collect()).collect(),
        }
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &Natural) -> Natural {
        Natural {
            components: first
                .components
                .iter()
                .zip(&self.components)
                .map(|(a, b)| a.iter().map(|&x| b[x]).collect())
                .collect(),
        }
    }

    /// True when every component is a bijection.
    pub fn is_iso(&self, source: &dyn SetFunctor, target: &dyn SetFunctor) -> bool {
        source.base().objects().all(|o| {
            if source.size(o) != target.size(o) {
                return false;
            }
            let mut hit = vec![false; target.size(o)];
            self.components[o.0].iter().all(|&y| !std::mem::replace(&mut hit[y], true))
        })
    }

    /// Checks shapes and every naturality square.
    pub fn check(&self, source: &dyn SetFunctor, target: &dyn SetFunctor) -> Result<(), NaturalError> {
        if !source.same_base(target) {
            return Err(NaturalError::BaseMismatch);
        }
        let cat = source.base();
        if self.components.len() != cat.object_count()
            || cat.objects().any(|o| {
                self.components[o.0].len() != source.size(o)
                    || self.components[o.0].iter().any(|&y| y >= target.size(o))
            })
        {
            return Err(NaturalError::Shape);
        }
        if let Some(fail) = self.naturality_failure(source, target) {
            return Err(NaturalError::NotNatural(fail));
        }
        Ok(())
    }

    /// The first square that fails to commute, if any.
    pub fn naturality_failure(
        &self,
        source: &dyn SetFunctor,
        target: &dyn SetFunctor,
    ) -> Option<NaturalityFailure> {
        let cat = source.base();
        for m in cat.morphisms() {
            let (from, to) = source.action_ends(m);
            for x in 0..source.size(from) {
                let down_then_across = self.components[to.0][source.act(m, x)];
                let across_then_down = target.act(m, self.components[from.0][x]);
                if down_then_across != across_then_down {
                    return Some(NaturalityFailure {
                        morphism: cat.mor_name(m).to_string(),
                        element: source.element(from, x).to_string(),
                    });
                }
            }
        }
        None
    }
}

/// Builds the constraint problem whose solutions are the natural
/// transformations `source ⇒ target`. Variable `offsets[o] + x` is the
/// component at `o` applied to `x`.
pub(crate) fn naturality_search<'a>(
    source: &'a dyn SetFunctor,
    target: &'a dyn SetFunctor,
) -> (Search<'a>, Vec<usize>) {
    let cat = source.base();
    let mut offsets = Vec::with_capacity(cat.object_count());
    let mut domains = Vec::new();
    for o in cat.objects() {
        offsets.push(domains.len());
        domains.extend(std::iter::repeat_n(target.size(o), source.size(o)));
    }
    let mut search = Search::new(domains);
    for m in cat.morphisms() {
        let (from, to) = source.action_ends(m);
        for x in 0..source.size(from) {
            let vx = offsets[from.0] + x;
            let vy = offsets[to.0] + source.act(m, x);
            search.constrain(&[vx, vy], move |a| target.act(m, a[vx]) == a[vy]);
        }
    }
    (search, offsets)
}

pub(crate) fn unflatten(cat_sizes: &[usize], offsets: &[usize], a: &[usize]) -> Natural {
    Natural {
        components: offsets
            .iter()
            .zip(cat_sizes)
            .map(|(&off, &n)| a[off..off + n].to_vec())
            .collect(),
    }
}

/// Every natural transformation `source ⇒ target`, in canonical
/// (lexicographic) order.
pub fn enumerate_naturals(
    source: &dyn SetFunctor,
    target: &dyn SetFunctor,
    bounds: &Bounds,
) -> Result<Vec<Natural>, NaturalError> {
    if !source.same_base(target) {
        return Err(NaturalError::BaseMismatch);
    }
    let (search, offsets) = naturality_search(source, target);
    let sizes: Vec<usize> = source.base().objects().map(|o| source.size(o)).collect();
    let sols = search.solutions(bounds.enumeration, bounds.exec)?;
    Ok(sols.iter().map(|a| unflatten(&sizes, &offsets, a)).collect())
}

/// Number of natural transformations `source ⇒ target`.
pub fn count_naturals(
    source: &dyn SetFunctor,
    target: &dyn SetFunctor,
    bounds: &Bounds,
) -> Result<usize, NaturalError> {
    if !source.same_base(target) {
        return Err(NaturalError::BaseMismatch);
    }
    let (search, _) = naturality_search(source, target);
    Ok(search.count(bounds.enumeration, bounds.exec)?)
}

/// A natural isomorphism `source ⇒ target`, if one exists.
pub fn find_isomorphism(source: &dyn SetFunctor, target: &dyn SetFunctor) -> Option<Natural> {
    if !source.same_base(target) {
        return None;
    }
    let cat = source.base();
    if cat.objects().any(|o| source.size(o) != target.size(o)) {
        return None;
    }
    let (mut search, offsets) = naturality_search(source, target);
    for o in cat.objects() {
        let off = offsets[o.0];
        for x in 0..source.size(o) {
            for y in 0..x {
                let (vx, vy) = (off + x, off + y);
                search.constrain(&[vx, vy], move |a| a[vx] != a[vy]);
            }
        }
    }
    let sizes: Vec<usize> = cat.objects().map(|o| source.size(o)).collect();
    search.first().map(|a| unflatten(&sizes, &offsets, &a))
}
