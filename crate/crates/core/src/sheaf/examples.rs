//! Presheaves used in tests, benchmarks and the command-line gallery.

use std::sync::Arc;

use crate::fincat::{FinCategory, Obj, Presheaf};
use crate::site::FiniteSpace;

/// The constant presheaf on `labels` over the opens of a space, with the
/// singleton `*` over the empty open.
pub fn constant_on_nonempty(cat: &Arc<FinCategory>, space: &FiniteSpace, labels: &[&str]) -> Presheaf {
    let labels: Vec<String> = labels.iter().map(|s| s.to_string()).collect();
    let empty: Vec<Obj> = (0..space.open_count()).filter(|&i| space.opens()[i].is_empty()).map(Obj).collect();
    Presheaf::constant(cat.clone(), &labels, &empty)
}

/// The constant presheaf on `labels` everywhere, including the empty open.
pub fn constant_everywhere(cat: &Arc<FinCategory>, labels: &[&str]) -> Presheaf {
    let labels: Vec<String> = labels.iter().map(|s| s.to_string()).collect();
    Presheaf::constant(cat.clone(), &labels, &[])
}

/// Continuous functions to `{0, 1}` on each open, i.e. the locally constant
/// functions: an element of `F(U)` assigns a value to every point of `U`
/// and must be constant on each minimal open neighbourhood.
pub fn locally_constant(cat: &Arc<FinCategory>, space: &FiniteSpace, labels: &[&str]) -> Presheaf {
    let mut values = Vec::new();
    let mut assignments: Vec<Vec<Vec<(usize, usize)>>> = Vec::new();
    for u in 0..space.open_count() {
        let pts: Vec<usize> = space.opens()[u].iter().copied().collect();
        let mut here = Vec::new();
        let mut labels_here = Vec::new();
        let total = labels.len().pow(pts.len() as u32);
        for code in 0..total {
            let mut c = code;
            let mut assign = Vec::new();
            for &p in pts.iter().rev() {
                assign.push((p, c % labels.len()));
                c /= labels.len();
            }
            assign.reverse();
            let value = |p: usize| assign.iter().find(|&&(q, _)| q == p).map(|&(_, v)| v);
            let ok = pts.iter().all(|&p| {
                let nbhd = space.minimal_open(p);
                space.opens()[nbhd].iter().all(|&q| value(q) == value(p))
            });
            if ok {
                labels_here.push(if pts.is_empty() {
                    "*".to_string()
                } else {
                    assign.iter().map(|&(_, v)| labels[v]).collect::<Vec<_>>().join("")
                });
                here.push(assign);
            }
        }
        values.push(labels_here);
        assignments.push(here);
    }
    let restrict = cat
        .morphisms()
        .map(|g| {
            let (v, u) = (cat.source(g).0, cat.target(g).0);
            assignments[u]
                .iter()
                .map(|assign| {
                    let cut: Vec<(usize, usize)> =
                        assign.iter().copied().filter(|(p, _)| space.opens()[v].contains(p)).collect();
                    assignments[v].iter().position(|a| *a == cut).expect("restriction stays locally constant")
                })
                .collect()
        })
        .collect();
    Presheaf::new(cat.clone(), values, restrict).expect("locally constant functions form a presheaf")
}
