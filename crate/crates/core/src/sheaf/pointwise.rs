use std::collections::HashMap;
use std::sync::Arc;

use crate::fincat::{count_naturals, enumerate_naturals, yoneda_presheaf, FinCategory, Natural, Obj, Presheaf, SetFunctor};
use crate::limits::{limit, Diagram};
use crate::Bounds;

use super::SheafError;

/// A covariant diagram of presheaves over a common base: one presheaf per
/// shape object and one natural transformation per shape morphism.
#[derive(Clone, Debug)]
pub struct PresheafDiagram {
    pub shape: Arc<FinCategory>,
    pub objects: Vec<Presheaf>,
    pub arrows: Vec<Natural>,
}

/// A pointwise limit with its projections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresheafLimit {
    pub presheaf: Presheaf,
    pub legs: Vec<Natural>,
}

impl PresheafDiagram {
    fn validate(&self, base: &Arc<FinCategory>) -> Result<(), SheafError> {
        if self.objects.len() != self.shape.object_count() || self.arrows.len() != self.shape.morphism_count() {
            return Err(SheafError::Construction("diagram does not match its shape".into()));
        }
        if self.objects.iter().any(|p| !(Arc::ptr_eq(p.base(), base) || **p.base() == **base)) {
            return Err(SheafError::BaseMismatch);
        }
        for m in self.shape.morphisms() {
            let (s, t) = (self.shape.source(m), self.shape.target(m));
            self.arrows[m.0].check(&self.objects[s.0], &self.objects[t.0])?;
        }
        Ok(())
    }
}

/// Limit of a diagram of presheaves, computed objectwise with
/// [`limits::limit`](crate::limits::limit); restrictions act componentwise.
pub fn presheaf_limit(
    base: &Arc<FinCategory>,
    d: &PresheafDiagram,
    bounds: &Bounds,
) -> Result<PresheafLimit, SheafError> {
    d.validate(base)?;
    let shape = &d.shape;
    let mut lims = Vec::with_capacity(base.object_count());
    for u in base.objects() {
        let values = shape.objects().map(|i| d.objects[i.0].elements(u).to_vec()).collect();
        let action = shape.morphisms().map(|m| d.arrows[m.0].component(u).to_vec()).collect();
        let pointwise = Diagram::new(shape.clone(), values, action)?;
        lims.push(limit(&pointwise, bounds)?);
    }
    let positions: Vec<HashMap<&Vec<usize>, usize>> = lims
        .iter()
        .map(|l| l.families.iter().enumerate().map(|(i, f)| (f, i)).collect())
        .collect();
    let restrict = base
        .morphisms()
        .map(|g| {
            let (v, u) = (base.source(g), base.target(g));
            lims[u.0]
                .families
                .iter()
                .map(|fam| {
                    let moved: Vec<usize> = shape.objects().map(|i| d.objects[i.0].restrict(g, fam[i.0])).collect();
                    positions[v.0][&moved]
                })
                .collect()
        })
        .collect();
    let values = lims.iter().map(|l| l.apex.clone()).collect();
    let presheaf = Presheaf::new(base.clone(), values, restrict).map_err(|e| SheafError::Construction(e.to_string()))?;
    let legs = shape
        .objects()
        .map(|i| Natural {
            components: lims.iter().map(|l| l.leg(i)).collect(),
        })
        .collect();
    Ok(PresheafLimit { presheaf, legs })
}

/// The product of presheaves. The empty product is the terminal presheaf.
pub fn product(base: &Arc<FinCategory>, factors: &[Presheaf], bounds: &Bounds) -> Result<PresheafLimit, SheafError> {
    let labels = (0..factors.len()).map(|i| i.to_string()).collect();
    let shape = Arc::new(FinCategory::discrete(labels));
    let arrows = shape
        .objects()
        .map(|i| Natural::identity(&factors[i.0]))
        .collect();
    presheaf_limit(
        base,
        &PresheafDiagram {
            shape,
            objects: factors.to_vec(),
            arrows,
        },
        bounds,
    )
}

/// Pullback of `alpha: A ⇒ C` and `beta: B ⇒ C`.
pub fn presheaf_pullback(
    a: &Presheaf,
    b: &Presheaf,
    c: &Presheaf,
    alpha: &Natural,
    beta: &Natural,
    bounds: &Bounds,
) -> Result<PresheafLimit, SheafError> {
    let shape = Arc::new(FinCategory::cospan());
    let mut arrows = vec![Natural::identity(a); shape.morphism_count()];
    for m in shape.morphisms() {
        arrows[m.0] = match shape.mor_name(m) {
            "f" => alpha.clone(),
            "g" => beta.clone(),
            _ => {
                let o = shape.source(m);
                Natural::identity([a, b, c][o.0])
            }
        };
    }
    presheaf_limit(
        a.base(),
        &PresheafDiagram {
            shape,
            objects: vec![a.clone(), b.clone(), c.clone()],
            arrows,
        },
        bounds,
    )
}

/// Equalizer of `alpha, beta: A ⇒ B`.
pub fn presheaf_equalizer(
    a: &Presheaf,
    b: &Presheaf,
    alpha: &Natural,
    beta: &Natural,
    bounds: &Bounds,
) -> Result<PresheafLimit, SheafError> {
    let shape = Arc::new(FinCategory::parallel_pair());
    let arrows = shape
        .morphisms()
        .map(|m| match shape.mor_name(m) {
            "f" => alpha.clone(),
            "g" => beta.clone(),
            _ => Natural::identity([a, b][shape.source(m).0]),
        })
        .collect();
    presheaf_limit(
        a.base(),
        &PresheafDiagram {
            shape,
            objects: vec![a.clone(), b.clone()],
            arrows,
        },
        bounds,
    )
}

/// `Bᴬ(U) = Nat(h_U × A, B)`, restricting along `g: V → U` by
/// precomposing with `h_g × A`.
pub fn exponential(a: &Presheaf, b: &Presheaf, bounds: &Bounds) -> Result<Presheaf, SheafError> {
    if !a.same_base(b) {
        return Err(SheafError::BaseMismatch);
    }
    let base = a.base().clone();
    let mut prods = Vec::with_capacity(base.object_count());
    let mut nats = Vec::with_capacity(base.object_count());
    for u in base.objects() {
        let hu = yoneda_presheaf(&base, u);
        let p = product(&base, &[hu, a.clone()], bounds)?;
        nats.push(enumerate_naturals(&p.presheaf, b, bounds)?);
        prods.push(p);
    }
    // product element at W over U: the pair (k: W → U, x ∈ A(W))
    let pair_index: Vec<Vec<HashMap<(usize, usize), usize>>> = prods
        .iter()
        .map(|p| {
            base.objects()
                .map(|w| {
                    let (k, x) = (p.legs[0].component(w), p.legs[1].component(w));
                    (0..k.len()).map(|e| ((k[e], x[e]), e)).collect()
                })
                .collect()
        })
        .collect();
    let positions: Vec<HashMap<&Natural, usize>> = nats
        .iter()
        .map(|ns| ns.iter().enumerate().map(|(i, n)| (n, i)).collect())
        .collect();
    let restrict = base
        .morphisms()
        .map(|g| {
            let (v, u) = (base.source(g), base.target(g));
            nats[u.0]
                .iter()
                .map(|eta| {
                    let components = base
                        .objects()
                        .map(|w| {
                            let pv = &prods[v.0];
                            let (ks, xs) = (pv.legs[0].component(w), pv.legs[1].component(w));
                            (0..ks.len())
                                .map(|e| {
                                    // k: W → V indexes Hom(W, V); g ∘ k indexes Hom(W, U)
                                    let k = base.hom(w, v)[ks[e]];
                                    let gk = base.comp(g, k);
                                    let gk_ix = base.hom(w, u).iter().position(|&m| m == gk).expect("composite in Hom(W, U)");
                                    eta.at(w, pair_index[u.0][w.0][&(gk_ix, xs[e])])
                                })
                                .collect()
                        })
                        .collect();
                    positions[v.0][&Natural { components }]
                })
                .collect()
        })
        .collect();
    let values = nats
        .iter()
        .map(|ns| ns.iter().map(|n| natural_label(n, b)).collect())
        .collect();
    Presheaf::new(base, values, restrict).map_err(|e| SheafError::Construction(e.to_string()))
}

fn natural_label(n: &Natural, b: &Presheaf) -> String {
    let groups: Vec<String> = n
        .components
        .iter()
        .enumerate()
        .map(|(w, comp)| comp.iter().map(|&y| b.label(Obj(w), y)).collect::<Vec<_>>().join(","))
        .collect();
    format!("[{}]", groups.join("|"))
}

/// `(|Nat(X × A, B)|, |Nat(X, Bᴬ)|)`, equal whenever the exponential is right.
pub fn adjunction_counts(
    x: &Presheaf,
    a: &Presheaf,
    b: &Presheaf,
    exp: &Presheaf,
    bounds: &Bounds,
) -> Result<(usize, usize), SheafError> {
    let xa = product(x.base(), &[x.clone(), a.clone()], bounds)?;
    Ok((
        count_naturals(&xa.presheaf, b, bounds)?,
        count_naturals(x, exp, bounds)?,
    ))
}
