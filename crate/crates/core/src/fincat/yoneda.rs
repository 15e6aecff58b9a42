use std::sync::Arc;

use super::{FinCategory, Natural, NaturalError, Obj, Presheaf, SetFunctor};

/// The representable presheaf `Hom(-, a)`. Elements are morphism names and
/// restriction along `g` is precomposition with `g`.
pub fn yoneda_presheaf(cat: &Arc<FinCategory>, a: Obj) -> Presheaf {
    let values: Vec<Vec<String>> = cat
        .objects()
        .map(|x| cat.hom(x, a).iter().map(|&f| cat.mor_name(f).to_string()).collect())
        .collect();
    let restrict = cat
        .morphisms()
        .map(|g| {
            // g: y → x acts Hom(x, a) → Hom(y, a)
            let (y, x) = (cat.source(g), cat.target(g));
            cat.hom(x, a)
                .iter()
                .map(|&f| {
                    let fg = cat.comp(f, g);
                    cat.hom(y, a).iter().position(|&h| h == fg).expect("composite lands in Hom(y, a)")
                })
                .collect()
        })
        .collect();
    Presheaf::new_unchecked(cat.clone(), values, restrict)
}

/// Looks up `a` by name and builds `Hom(-, a)`.
pub fn yoneda_presheaf_named(cat: &Arc<FinCategory>, a: &str) -> Result<Presheaf, NaturalError> {
    let a = cat
        .object_by_name(a)
        .ok_or_else(|| NaturalError::UnknownObject(a.to_string()))?;
    Ok(yoneda_presheaf(cat, a))
}

/// `Φ(η) = η_a(id_a)`.
pub fn yoneda_to_element(f: &Presheaf, a: Obj, eta: &Natural) -> Result<usize, NaturalError> {
    let cat = f.base();
    let h = yoneda_presheaf(cat, a);
    eta.check(&h, f)?;
    let id_pos = cat
        .hom(a, a)
        .iter()
        .position(|&m| m == cat.identity(a))
        .expect("identity is in Hom(a, a)");
    Ok(eta.at(a, id_pos))
}

/// `Ψ(x)`, whose component at `X` sends `f: X → a` to `F(f)(x)`.
pub fn yoneda_from_element(f: &Presheaf, a: Obj, x: usize) -> Result<Natural, NaturalError> {
    if x >= f.size(a) {
        return Err(NaturalError::Shape);
    }
    let cat = f.base();
    Ok(Natural {
        components: cat
            .objects()
            .map(|o| cat.hom(o, a).iter().map(|&m| f.restrict(m, x)).collect())
            .collect(),
    })
}
