use std::collections::HashMap;
use std::sync::Arc;

use crate::fincat::{enumerate_naturals, naturality_search, FinCategory, FinFunctor, Mor, Natural, Obj, SetFunctor};
use crate::{Bounds, Exec, Intractable};

use super::limit::{class_labels, family_label, offsets_of, Certificate, Colimit, Limit};
use super::special::{coequalizer, equalizer, product_indices, SetMap};
use super::{colimit, limit, Diagram, LimitError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KanDirection {
    Left,
    Right,
}

/// A Kan extension along the functor to the terminal category, i.e. a
/// colimit (left) or limit (right).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointKan {
    Left(Colimit),
    Right(Limit),
}

/// Kan extension of `d` along `! : C → 1`.
///
/// This deliberately does not call [`colimit`] or [`limit`]: the left
/// extension is the coequalizer of the two maps `∐_m D(dom m) ⇉ ∐_c D(c)`
/// and the right extension is the equalizer of `∏_c D(c) ⇉ ∏_m D(cod m)`,
/// so comparing against the direct constructions is a genuine cross-check.
pub fn kan_to_point(direction: KanDirection, d: &Diagram, bounds: &Bounds) -> Result<PointKan, LimitError> {
    let shape = d.shape();
    let arrows: Vec<Mor> = shape.morphisms().filter(|&m| !shape.is_identity(m)).collect();
    match direction {
        KanDirection::Left => {
            let offsets = offsets_of(d);
            let coproduct: Vec<String> = shape
                .objects()
                .flat_map(|o| (0..d.size(o)).map(move |x| format!("{}.{x}", o.0)))
                .collect();
            let mut relations = Vec::new();
            let (mut s, mut t) = (Vec::new(), Vec::new());
            for &m in &arrows {
                let (from, to) = (shape.source(m), shape.target(m));
                for x in 0..d.size(from) {
                    relations.push(format!("{}.{x}", m.0));
                    s.push(offsets[from.0] + x);
                    t.push(offsets[to.0] + d.act(m, x));
                }
            }
            let s = SetMap::new(relations.clone(), coproduct.clone(), s)?;
            let t = SetMap::new(relations, coproduct, t)?;
            let q = coequalizer(&s, &t)?;
            let apex = class_labels(d, &offsets, &q.representatives);
            let legs = shape
                .objects()
                .map(|o| (0..d.size(o)).map(|x| q.quotient[offsets[o.0] + x]).collect())
                .collect();
            Ok(PointKan::Left(Colimit { apex, legs }))
        }
        KanDirection::Right => {
            let sizes: Vec<usize> = shape.objects().map(|o| d.size(o)).collect();
            let total = sizes.iter().try_fold(1usize, |acc, &n| acc.checked_mul(n));
            if total.is_none_or(|t| t > bounds.enumeration) {
                return Err(Intractable { bound: bounds.enumeration }.into());
            }
            let product = product_indices(&sizes);
            let p_img: Vec<Vec<usize>> = product
                .iter()
                .map(|fam| arrows.iter().map(|&m| fam[shape.target(m).0]).collect())
                .collect();
            let q_img: Vec<Vec<usize>> = product
                .iter()
                .map(|fam| arrows.iter().map(|&m| d.act(m, fam[shape.source(m).0])).collect())
                .collect();
            // only the images matter for the equalizer, not the whole product
            let mut image: Vec<Vec<usize>> = p_img.iter().chain(&q_img).cloned().collect();
            image.sort();
            image.dedup();
            let index: HashMap<&Vec<usize>, usize> = image.iter().enumerate().map(|(i, v)| (v, i)).collect();
            let names = |n: usize| (0..n).map(|i| i.to_string()).collect::<Vec<_>>();
            let p = SetMap::new(names(product.len()), names(image.len()), p_img.iter().map(|v| index[v]).collect())?;
            let q = SetMap::new(names(product.len()), names(image.len()), q_img.iter().map(|v| index[v]).collect())?;
            let eq = equalizer(&p, &q)?;
            let families: Vec<Vec<usize>> = eq.inclusion.iter().map(|&i| product[i].clone()).collect();
            let apex = families.iter().map(|f| family_label(d, f)).collect();
            Ok(PointKan::Right(Limit { apex, families }))
        }
    }
}

/// The comma category `(K ↓ b)` (left) or `(b ↓ K)` (right), with the
/// underlying object and morphism of `A` for each of its objects and arrows.
pub(crate) struct Comma {
    pub cat: Arc<FinCategory>,
    pub objects: Vec<(Obj, Mor)>,
    pub arrows: Vec<Mor>,
    index: HashMap<(Obj, Mor), usize>,
}

impl Comma {
    fn position(&self, a: Obj, arrow: Mor) -> usize {
        self.index[&(a, arrow)]
    }
}

pub(crate) fn comma(k: &FinFunctor, b: Obj, direction: KanDirection, bound: usize) -> Result<Comma, LimitError> {
    let (a_cat, b_cat) = (k.source(), k.target());
    let too_big = |size| LimitError::IntractableSize {
        what: format!("comma category at `{}`", b_cat.name(b)),
        size,
        bound,
    };
    let mut objects = Vec::new();
    for a in a_cat.objects() {
        let arrows = match direction {
            KanDirection::Left => b_cat.hom(k.object(a), b),
            KanDirection::Right => b_cat.hom(b, k.object(a)),
        };
        objects.extend(arrows.iter().map(|&phi| (a, phi)));
    }
    if objects.len() > bound {
        return Err(too_big(objects.len()));
    }
    let index: HashMap<(Obj, Mor), usize> = objects.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let names: Vec<String> = objects
        .iter()
        .map(|&(a, phi)| format!("({},{})", a_cat.name(a), b_cat.mor_name(phi)))
        .collect();
    let mut arrows: Vec<(String, Obj, Obj)> = Vec::new();
    let mut under = Vec::new();
    let mut lookup: HashMap<(Mor, usize, usize), usize> = HashMap::new();
    for (i, &(a, phi)) in objects.iter().enumerate() {
        for (j, &(a2, phi2)) in objects.iter().enumerate() {
            for &u in a_cat.hom(a, a2) {
                let ku = k.morphism(u);
                let commutes = match direction {
                    KanDirection::Left => b_cat.comp(phi2, ku) == phi,
                    KanDirection::Right => b_cat.comp(ku, phi) == phi2,
                };
                if commutes {
                    lookup.insert((u, i, j), arrows.len());
                    arrows.push((format!("{}:{i}->{j}", a_cat.mor_name(u)), Obj(i), Obj(j)));
                    under.push(u);
                }
            }
        }
        if objects.len() + arrows.len() > bound {
            return Err(too_big(objects.len() + arrows.len()));
        }
    }
    let identities: Vec<Mor> = objects
        .iter()
        .enumerate()
        .map(|(i, &(a, _))| Mor(lookup[&(a_cat.identity(a), i, i)]))
        .collect();
    let m = arrows.len();
    let mut table = vec![None; m * m];
    for (g, gu) in under.iter().enumerate() {
        for (f, fu) in under.iter().enumerate() {
            if arrows[f].2 == arrows[g].1 {
                let h = lookup[&(a_cat.comp(*gu, *fu), arrows[f].1 .0, arrows[g].2 .0)];
                table[g * m + f] = Some(Mor(h));
            }
        }
    }
    let cat = Arc::new(FinCategory::from_parts(names, arrows, identities, table));
    Ok(Comma {
        cat,
        objects,
        arrows: under,
        index,
    })
}

/// A pointwise Kan extension of `F: A → Set` along `K: A → B`, with its unit
/// `F ⇒ Lan·K` (left) or counit `Ran·K ⇒ F` (right).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KanExtension {
    pub direction: KanDirection,
    pub extension: Diagram,
    pub unit: Natural,
}

/// Computes `Lan_K F` or `Ran_K F` pointwise as (co)limits over comma
/// categories. Each comma category counts against `bounds.comma`.
pub fn kan_extension(
    direction: KanDirection,
    k: &FinFunctor,
    f: &Diagram,
    bounds: &Bounds,
) -> Result<KanExtension, LimitError> {
    if !Arc::ptr_eq(k.source(), f.shape()) && **k.source() != **f.shape() {
        return Err(LimitError::ShapeMismatch);
    }
    let (a_cat, b_cat) = (k.source(), k.target());
    let commas: Vec<Comma> = b_cat
        .objects()
        .map(|b| comma(k, b, direction, bounds.comma))
        .collect::<Result<_, _>>()?;
    let restricted: Vec<Diagram> = commas
        .iter()
        .map(|c| {
            let values = c.objects.iter().map(|&(a, _)| f.elements(a).to_vec()).collect();
            let action = c.arrows.iter().map(|&u| f.action(u).to_vec()).collect();
            Diagram::new_unchecked(c.cat.clone(), values, action)
        })
        .collect();

    match direction {
        KanDirection::Left => {
            let colims: Vec<Colimit> = restricted.iter().map(colimit).collect();
            let values = colims.iter().map(|c| c.apex.clone()).collect();
            let action = b_cat
                .morphisms()
                .map(|beta| {
                    let (b, b2) = (b_cat.source(beta), b_cat.target(beta));
                    let (here, there) = (&commas[b.0], &commas[b2.0]);
                    (0..colims[b.0].apex.len())
                        .map(|class| {
                            let (i, x) = representative(&colims[b.0], class);
                            let (a, phi) = here.objects[i];
                            let j = there.position(a, b_cat.comp(beta, phi));
                            colims[b2.0].legs[j][x]
                        })
                        .collect()
                })
                .collect();
            let extension = Diagram::new(b_cat.clone(), values, action)?;
            let unit = Natural {
                components: a_cat
                    .objects()
                    .map(|a| {
                        let ka = k.object(a);
                        let i = commas[ka.0].position(a, b_cat.identity(ka));
                        colims[ka.0].legs[i].clone()
                    })
                    .collect(),
            };
            Ok(KanExtension {
                direction,
                extension,
                unit,
            })
        }
        KanDirection::Right => {
            let lims: Vec<Limit> = restricted
                .iter()
                .map(|d| limit(d, bounds))
                .collect::<Result<_, _>>()?;
            let values = lims.iter().map(|l| l.apex.clone()).collect();
            let positions: Vec<HashMap<&Vec<usize>, usize>> = lims
                .iter()
                .map(|l| l.families.iter().enumerate().map(|(i, f)| (f, i)).collect())
                .collect();
            let action = b_cat
                .morphisms()
                .map(|beta| {
                    let (b, b2) = (b_cat.source(beta), b_cat.target(beta));
                    let (here, there) = (&commas[b.0], &commas[b2.0]);
                    lims[b.0]
                        .families
                        .iter()
                        .map(|fam| {
                            let moved: Vec<usize> = there
                                .objects
                                .iter()
                                .map(|&(a, psi)| fam[here.position(a, b_cat.comp(psi, beta))])
                                .collect();
                            positions[b2.0][&moved]
                        })
                        .collect()
                })
                .collect();
            let extension = Diagram::new(b_cat.clone(), values, action)?;
            let unit = Natural {
                components: a_cat
                    .objects()
                    .map(|a| {
                        let ka = k.object(a);
                        let i = commas[ka.0].position(a, b_cat.identity(ka));
                        lims[ka.0].families.iter().map(|fam| fam[i]).collect()
                    })
                    .collect(),
            };
            Ok(KanExtension {
                direction,
                extension,
                unit,
            })
        }
    }
}

fn representative(c: &Colimit, class: usize) -> (usize, usize) {
    c.legs
        .iter()
        .enumerate()
        .find_map(|(i, leg)| leg.iter().position(|&y| y == class).map(|x| (i, x)))
        .expect("every colimit class has a member")
}

/// Checks the universal property of `ext` against every functor `G: B → Set`
/// with value sets of size at most `max_size`: each `α: F ⇒ G·K` (left) or
/// `α: G·K ⇒ F` (right) must factor through the unit in exactly one way.
pub fn verify_kan(
    k: &FinFunctor,
    f: &Diagram,
    ext: &KanExtension,
    max_size: usize,
    bounds: &Bounds,
) -> Result<Certificate, LimitError> {
    let a_cat = k.source();
    let mut cert = Certificate::default();
    for g in Diagram::enumerate(k.target(), max_size, bounds)? {
        let gk = g.precompose(k);
        let alphas = match ext.direction {
            KanDirection::Left => enumerate_naturals(f, &gk, bounds)?,
            KanDirection::Right => enumerate_naturals(&gk, f, bounds)?,
        };
        for alpha in alphas {
            let count = match ext.direction {
                KanDirection::Left => {
                    let (mut search, offsets) = naturality_search(&ext.extension, &g);
                    for a in a_cat.objects() {
                        let ka = k.object(a);
                        for x in 0..f.size(a) {
                            let v = offsets[ka.0] + ext.unit.at(a, x);
                            let want = alpha.at(a, x);
                            search.constrain(&[v], move |s| s[v] == want);
                        }
                    }
                    search.count(2, Exec::Sequential).unwrap_or(2)
                }
                KanDirection::Right => {
                    let (mut search, offsets) = naturality_search(&g, &ext.extension);
                    for a in a_cat.objects() {
                        let ka = k.object(a);
                        let counit = ext.unit.component(a);
                        for y in 0..gk.size(a) {
                            let v = offsets[ka.0] + y;
                            let want = alpha.at(a, y);
                            search.constrain(&[v], move |s| counit[s[v]] == want);
                        }
                    }
                    search.count(2, Exec::Sequential).unwrap_or(2)
                }
            };
            if count != 1 {
                cert.failures.push((cert.cones_checked, count));
            }
            cert.cones_checked += 1;
        }
    }
    Ok(cert)
}
