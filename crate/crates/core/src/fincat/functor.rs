use std::sync::Arc;

use super::{FinCategory, FunctorError, Mor, Obj};

/// A functor between finite categories, stored as its object and morphism maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinFunctor {
    source: Arc<FinCategory>,
    target: Arc<FinCategory>,
    on_objects: Vec<Obj>,
    on_morphisms: Vec<Mor>,
}

impl FinFunctor {
    /// Checks that the maps preserve sources, targets, identities and composition.
    pub fn new(
        source: Arc<FinCategory>,
        target: Arc<FinCategory>,
        on_objects: Vec<Obj>,
        on_morphisms: Vec<Mor>,
    ) -> Result<Self, FunctorError> {
        if on_objects.len() != source.object_count() || on_morphisms.len() != source.morphism_count() {
            return Err(FunctorError::Shape);
        }
        if on_objects.iter().any(|o| o.0 >= target.object_count())
            || on_morphisms.iter().any(|m| m.0 >= target.morphism_count())
        {
            return Err(FunctorError::Shape);
        }
        for f in source.morphisms() {
            let image = on_morphisms[f.0];
            if target.source(image) != on_objects[source.source(f).0]
                || target.target(image) != on_objects[source.target(f).0]
            {
                return Err(FunctorError::Ends(source.mor_name(f).to_string()));
            }
        }
        for o in source.objects() {
            if on_morphisms[source.identity(o).0] != target.identity(on_objects[o.0]) {
                return Err(FunctorError::Identity(source.name(o).to_string()));
            }
        }
        for (g, f) in source.composable_pairs() {
            let lhs = on_morphisms[source.comp(g, f).0];
            let rhs = target.comp(on_morphisms[g.0], on_morphisms[f.0]);
            if lhs != rhs {
                return Err(FunctorError::Composition {
                    g: source.mor_name(g).to_string(),
                    f: source.mor_name(f).to_string(),
                });
            }
        }
        Ok(FinFunctor {
            source,
            target,
            on_objects,
            on_morphisms,
        })
    }

    /// Builds a functor from name maps.
    pub fn from_names(
        source: Arc<FinCategory>,
        target: Arc<FinCategory>,
        objects: &[(String, String)],
        morphisms: &[(String, String)],
    ) -> Result<Self, FunctorError> {
        let mut on_objects = vec![None; source.object_count()];
        for (a, b) in objects {
            let a = source.object_by_name(a).ok_or_else(|| FunctorError::Unknown(a.clone()))?;
            let b = target.object_by_name(b).ok_or_else(|| FunctorError::Unknown(b.clone()))?;
            on_objects[a.0] = Some(b);
        }
        let on_objects: Vec<Obj> = on_objects
            .into_iter()
            .enumerate()
            .map(|(i, o)| o.ok_or_else(|| FunctorError::Unmapped(source.name(Obj(i)).to_string())))
            .collect::<Result<_, _>>()?;
        let mut on_morphisms = vec![None; source.morphism_count()];
        for (f, g) in morphisms {
            let f = source.morphism_by_name(f).ok_or_else(|| FunctorError::Unknown(f.clone()))?;
            let g = target.morphism_by_name(g).ok_or_else(|| FunctorError::Unknown(g.clone()))?;
            on_morphisms[f.0] = Some(g);
        }
        // identities may be left implicit
        for o in source.objects() {
            let id = source.identity(o);
            if on_morphisms[id.0].is_none() {
                on_morphisms[id.0] = Some(target.identity(on_objects[o.0]));
            }
        }
        // in a thin target every arrow is forced
        for f in source.morphisms() {
            if on_morphisms[f.0].is_none() && target.is_thin() {
                on_morphisms[f.0] =
                    target.arrow_between(on_objects[source.source(f).0], on_objects[source.target(f).0]);
            }
        }
        let on_morphisms: Vec<Mor> = on_morphisms
            .into_iter()
            .enumerate()
            .map(|(i, m)| m.ok_or_else(|| FunctorError::Unmapped(source.mor_name(Mor(i)).to_string())))
            .collect::<Result<_, _>>()?;
        FinFunctor::new(source, target, on_objects, on_morphisms)
    }

    pub fn identity(cat: Arc<FinCategory>) -> Self {
        let on_objects = cat.objects().collect();
        let on_morphisms = cat.morphisms().collect();
        FinFunctor {
            source: cat.clone(),
            target: cat,
            on_objects,
            on_morphisms,
        }
    }

    /// The unique functor to the terminal category.
    pub fn to_terminal(cat: Arc<FinCategory>) -> Self {
        let target = Arc::new(FinCategory::terminal());
        let on_objects = vec![Obj(0); cat.object_count()];
        let on_morphisms = vec![Mor(0); cat.morphism_count()];
        FinFunctor {
            source: cat,
            target,
            on_objects,
            on_morphisms,
        }
    }

    pub fn source(&self) -> &Arc<FinCategory> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinCategory> {
        &self.target
    }

    pub fn object(&self, o: Obj) -> Obj {
        self.on_objects[o.0]
    }

    pub fn morphism(&self, f: Mor) -> Mor {
        self.on_morphisms[f.0]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arrow_into_parallel_pair() {
        let a = Arc::new(FinCategory::arrow());
        let p = Arc::new(FinCategory::parallel_pair());
        let k = FinFunctor::from_names(
            a.clone(),
            p.clone(),
            &[("0".into(), "0".into()), ("1".into(), "1".into())],
            &[("a".into(), "g".into())],
        )
        .unwrap();
        assert_eq!(p.mor_name(k.morphism(a.morphism_by_name("a").unwrap())), "g");
    }

    #[test]
    fn rejects_wrong_ends() {
        let a = Arc::new(FinCategory::arrow());
        let err = FinFunctor::from_names(
            a.clone(),
            a.clone(),
            &[("0".into(), "1".into()), ("1".into(), "0".into())],
            &[("a".into(), "a".into())],
        )
        .unwrap_err();
        assert!(matches!(err, FunctorError::Ends(_)));
    }
}
