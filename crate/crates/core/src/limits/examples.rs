//! Standard diagrams used in tests, benchmarks and the command-line gallery.

use std::sync::Arc;

use crate::fincat::FinCategory;

use super::{Diagram, SetMap};

fn labels(range: impl Iterator<Item = usize>) -> Vec<String> {
    range.map(|i| i.to_string()).collect()
}

/// The tower `Z/2 ← Z/4 ← ⋯ ← Z/2ⁿ` of reduction maps. Object `k` holds
/// `Z/2ᵏ` and every `k → j` (for `k ≥ j`) reduces modulo `2ʲ`.
pub fn two_adic_tower(n: usize) -> Diagram {
    let shape = Arc::new(
        FinCategory::preorder(labels(1..=n), |i, j| i >= j).expect("reverse order is a preorder"),
    );
    let values = (0..n).map(|i| labels(0..1 << (i + 1))).collect();
    let action = shape
        .morphisms()
        .map(|m| {
            let (i, j) = (shape.source(m).0, shape.target(m).0);
            (0..1usize << (i + 1)).map(|x| x % (1 << (j + 1))).collect()
        })
        .collect();
    Diagram::new(shape, values, action).expect("reductions compose")
}

/// The chain of inclusions `{1} ⊆ {1,2} ⊆ ⋯ ⊆ {1..n}`.
pub fn inclusion_chain(n: usize) -> Diagram {
    let shape = Arc::new(FinCategory::preorder(labels(1..=n), |i, j| i <= j).expect("order is a preorder"));
    let values = (0..n).map(|i| labels(1..=i + 1)).collect();
    let action = shape
        .morphisms()
        .map(|m| (0..=shape.source(m).0).collect())
        .collect();
    Diagram::new(shape, values, action).expect("inclusions compose")
}

/// `f: {1,2} → {*}` and `g: {a,b} → {*}`.
pub fn terminal_cospan() -> (SetMap, SetMap) {
    let star = vec!["*".to_string()];
    let f = SetMap::new(vec!["1".into(), "2".into()], star.clone(), vec![0, 0]).unwrap();
    let g = SetMap::new(vec!["a".into(), "b".into()], star, vec![0, 0]).unwrap();
    (f, g)
}

/// The span `A ← C → B` with `C = {1,2}`, the identity into `A = {1,2}` and
/// `h(1) = a, h(2) = b` into `B = {a,b}`.
pub fn bijective_span() -> Diagram {
    let shape = Arc::new(FinCategory::span());
    let vals = [
        ("A", vec!["1", "2"]),
        ("B", vec!["a", "b"]),
        ("C", vec!["1", "2"]),
    ];
    let vals: Vec<(String, Vec<String>)> = vals
        .iter()
        .map(|(o, v)| (o.to_string(), v.iter().map(|s| s.to_string()).collect()))
        .collect();
    let pairs = |p: &[(&str, &str)]| p.iter().map(|(x, y)| (x.to_string(), y.to_string())).collect();
    let actions = vec![
        ("f".to_string(), pairs(&[("1", "1"), ("2", "2")])),
        ("g".to_string(), pairs(&[("1", "a"), ("2", "b")])),
    ];
    Diagram::from_labels(shape, &vals, &actions).expect("span is a diagram")
}
