use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::fincat::{FinCategory, SetFunctor};

use super::limit::{number_classes, union};
use super::Diagram;

/// Random diagrams on small shapes, reproducible from a seed.
///
/// Most samples live on a random finite poset. Each object `i` gets a subset
/// `X_i` of a small ground set and a partition `q_i` of it, both growing
/// along the order, so the class maps are automatically functorial. The
/// rest are random parallel pairs `f, g: A → B`.
pub struct DiagramSampler {
    rng: ChaCha8Rng,
    pub max_objects: usize,
    pub max_size: usize,
}

impl DiagramSampler {
    pub fn new(seed: u64) -> Self {
        DiagramSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            max_objects: 4,
            max_size: 4,
        }
    }

    pub fn sample(&mut self) -> Diagram {
        if self.rng.gen_bool(0.25) {
            self.parallel_pair()
        } else {
            self.poset_diagram()
        }
    }

    fn parallel_pair(&mut self) -> Diagram {
        let shape = Arc::new(FinCategory::parallel_pair());
        let nb = self.rng.gen_range(0..=self.max_size);
        let na = if nb == 0 { 0 } else { self.rng.gen_range(0..=self.max_size) };
        let (a, b) = (shape.object_by_name("0").unwrap(), shape.object_by_name("1").unwrap());
        let mut values = vec![Vec::new(); 2];
        values[a.0] = (0..na).map(|i| format!("a{i}")).collect();
        values[b.0] = (0..nb).map(|i| format!("b{i}")).collect();
        let action = shape
            .morphisms()
            .map(|m| {
                if shape.is_identity(m) {
                    (0..values[shape.source(m).0].len()).collect()
                } else {
                    (0..na).map(|_| self.rng.gen_range(0..nb)).collect()
                }
            })
            .collect();
        Diagram::new(shape, values, action).expect("random parallel pair is a functor")
    }

    fn poset_diagram(&mut self) -> Diagram {
        let n = self.rng.gen_range(1..=self.max_objects);
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
            for cell in row.iter_mut().skip(i + 1) {
                *cell = self.rng.gen_bool(0.4);
            }
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if leq[i][k] && leq[k][j] {
                        leq[i][j] = true;
                    }
                }
            }
        }
        let labels: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
        let shape = Arc::new(FinCategory::preorder(labels, |i, j| leq[i][j]).expect("closure is a preorder"));

        let ground = self.rng.gen_range(1..=self.max_size);
        let seeds: Vec<Vec<bool>> = (0..n)
            .map(|_| (0..ground).map(|_| self.rng.gen_bool(0.5)).collect())
            .collect();
        let blocks: Vec<Vec<usize>> = (0..n)
            .map(|_| (0..ground).map(|_| self.rng.gen_range(0..ground)).collect())
            .collect();

        let mut members = Vec::with_capacity(n);
        let mut class_of = Vec::with_capacity(n);
        for i in 0..n {
            let below: Vec<usize> = (0..n).filter(|&j| leq[j][i]).collect();
            let subset: Vec<usize> = (0..ground).filter(|&x| below.iter().any(|&j| seeds[j][x])).collect();
            let mut parent: Vec<usize> = (0..ground).collect();
            for &j in &below {
                for x in 0..ground {
                    for y in x + 1..ground {
                        if blocks[j][x] == blocks[j][y] {
                            union(&mut parent, x, y);
                        }
                    }
                }
            }
            let (classes, _) = number_classes(&mut parent);
            members.push(subset);
            class_of.push(classes);
        }

        // value set at i: the classes of q_i that meet X_i, labelled by least member
        let mut values = Vec::with_capacity(n);
        let mut slot = Vec::with_capacity(n);
        for i in 0..n {
            let mut seen: Vec<usize> = Vec::new();
            let mut labels = Vec::new();
            for &x in &members[i] {
                let c = class_of[i][x];
                if !seen.contains(&c) {
                    seen.push(c);
                    labels.push(format!("x{x}"));
                }
            }
            values.push(labels);
            slot.push(seen);
        }
        let action = shape
            .morphisms()
            .map(|m| {
                let (i, j) = (shape.source(m).0, shape.target(m).0);
                slot[i]
                    .iter()
                    .map(|&c| {
                        let x = members[i].iter().copied().find(|&x| class_of[i][x] == c).unwrap();
                        let target = class_of[j][x];
                        slot[j].iter().position(|&d| d == target).unwrap()
                    })
                    .collect()
            })
            .collect();
        let d = Diagram::new(shape, values, action).expect("random poset diagram is a functor");
        debug_assert!(d.shape().objects().all(|o| d.size(o) <= self.max_size));
        d
    }
}
