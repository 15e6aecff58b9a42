//! Backtracking enumeration over finite-domain variables.
//!
//! Almost every exhaustive check in the crate (natural transformations,
//! subobjects, matching families, cones, functors, cocycle witnesses) is a
//! finite constraint problem: assign each variable a value below its domain
//! size so that every constraint holds. Variables are assigned in index
//! order, and each constraint is evaluated as soon as the highest variable it
//! mentions is assigned. Solutions are produced in lexicographic order, with
//! variable 0 most significant, regardless of the execution mode.

use std::ops::ControlFlow;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};

use thiserror::Error;

/// How an enumeration is executed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    /// Splits the search tree into independent prefixes and explores them on
    /// the rayon pool. Behaves like `Sequential` without the `parallel` feature.
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

/// An enumeration produced more results than its bound allows.
#[derive(Clone, Copy, Debug, Error, PartialEq, Eq)]
#[error("enumeration exceeded the bound of {bound} results")]
pub struct Intractable {
    pub bound: usize,
}

type Pred<'c> = Box<dyn Fn(&[usize]) -> bool + Send + Sync + 'c>;

/// A finite constraint problem.
pub struct Search<'c> {
    domains: Vec<usize>,
    // checks[k] runs right after variable k is assigned
    checks: Vec<Vec<Pred<'c>>>,
    infeasible: bool,
}

impl<'c> Search<'c> {
    pub fn new(domains: Vec<usize>) -> Self {
        let checks = domains.iter().map(|_| Vec::new()).collect();
        Search {
            domains,
            checks,
            infeasible: false,
        }
    }

    pub fn var_count(&self) -> usize {
        self.domains.len()
    }

    /// Adds a constraint over `vars`. The predicate receives the assignment
    /// prefix and may read any variable listed in `vars`.
    pub fn constrain<F>(&mut self, vars: &[usize], pred: F)
    where
        F: Fn(&[usize]) -> bool + Send + Sync + 'c,
    {
        match vars.iter().max() {
            None => {
                if !pred(&[]) {
                    self.infeasible = true;
                }
            }
            Some(&k) => {
                assert!(k < self.domains.len(), "constraint on unknown variable {k}");
                self.checks[k].push(Box::new(pred));
            }
        }
    }

    /// Pins variable `var` to `value`.
    pub fn fix(&mut self, var: usize, value: usize) {
        self.constrain(&[var], move |a| a[var] == value);
    }

    fn consistent(&self, prefix: &[usize]) -> bool {
        let k = prefix.len() - 1;
        self.checks[k].iter().all(|c| c(prefix))
    }

    fn dfs(
        &self,
        prefix: &[usize],
        visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let n = self.domains.len();
        let start = prefix.len();
        let mut a = prefix.to_vec();
        if start == n {
            return visit(&a);
        }
        a.resize(n, 0);
        let mut depth = start;
        loop {
            if a[depth] < self.domains[depth] {
                if self.consistent(&a[..=depth]) {
                    if depth + 1 == n {
                        visit(&a)?;
                        a[depth] += 1;
                    } else {
                        depth += 1;
                        a[depth] = 0;
                    }
                } else {
                    a[depth] += 1;
                }
            } else {
                if depth == start {
                    return ControlFlow::Continue(());
                }
                depth -= 1;
                a[depth] += 1;
            }
        }
    }

    /// Consistent prefixes that together cover the whole search tree, in
    /// lexicographic order.
    #[cfg_attr(not(feature = "parallel"), allow(dead_code))]
    fn frontier(&self, target: usize) -> Vec<Vec<usize>> {
        let mut frontier = vec![Vec::new()];
        let mut depth = 0;
        while depth < self.domains.len() && frontier.len() < target {
            let mut next = Vec::new();
            for p in &frontier {
                for v in 0..self.domains[depth] {
                    let mut q = p.clone();
                    q.push(v);
                    if self.consistent(&q) {
                        next.push(q);
                    }
                }
            }
            frontier = next;
            depth += 1;
        }
        frontier
    }

    /// All solutions, or [`Intractable`] if there are more than `bound`.
    pub fn solutions(&self, bound: usize, exec: Exec) -> Result<Vec<Vec<usize>>, Intractable> {
        if self.infeasible {
            return Ok(Vec::new());
        }
        match exec {
            #[cfg(feature = "parallel")]
            Exec::Parallel => self.solutions_parallel(bound),
            _ => {
                let mut out = Vec::new();
                let mut over = false;
                let _ = self.dfs(&[], &mut |a| {
                    if out.len() == bound {
                        over = true;
                        return ControlFlow::Break(());
                    }
                    out.push(a.to_vec());
                    ControlFlow::Continue(())
                });
                if over {
                    Err(Intractable { bound })
                } else {
                    Ok(out)
                }
            }
        }
    }

    #[cfg(feature = "parallel")]
    fn solutions_parallel(&self, bound: usize) -> Result<Vec<Vec<usize>>, Intractable> {
        use rayon::prelude::*;

        let target = (rayon::current_num_threads() * 8).max(16);
        let frontier = self.frontier(target);
        let produced = AtomicUsize::new(0);
        let over = AtomicBool::new(false);
        let chunks: Vec<Vec<Vec<usize>>> = frontier
            .par_iter()
            .map(|prefix| {
                let mut out = Vec::new();
                let _ = self.dfs(prefix, &mut |a| {
                    if over.load(Ordering::Relaxed) || produced.fetch_add(1, Ordering::Relaxed) >= bound {
                        over.store(true, Ordering::Relaxed);
                        return ControlFlow::Break(());
                    }
                    out.push(a.to_vec());
                    ControlFlow::Continue(())
                });
                out
            })
            .collect();
        if over.load(Ordering::Relaxed) {
            return Err(Intractable { bound });
        }
        Ok(chunks.into_iter().flatten().collect())
    }

    /// Number of solutions, or [`Intractable`] if there are more than `bound`.
    pub fn count(&self, bound: usize, exec: Exec) -> Result<usize, Intractable> {
        if self.infeasible {
            return Ok(0);
        }
        let produced = AtomicUsize::new(0);
        let over = AtomicBool::new(false);
        let run = |prefix: &[usize]| {
            let _ = self.dfs(prefix, &mut |_| {
                if over.load(Ordering::Relaxed) || produced.fetch_add(1, Ordering::Relaxed) >= bound {
                    over.store(true, Ordering::Relaxed);
                    return ControlFlow::Break(());
                }
                ControlFlow::Continue(())
            });
        };
        match exec {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                let target = (rayon::current_num_threads() * 8).max(16);
                self.frontier(target).par_iter().for_each(|p| run(p));
            }
            _ => run(&[]),
        }
        if over.load(Ordering::Relaxed) {
            Err(Intractable { bound })
        } else {
            Ok(produced.load(Ordering::Relaxed))
        }
    }

    /// The lexicographically first solution.
    pub fn first(&self) -> Option<Vec<usize>> {
        if self.infeasible {
            return None;
        }
        let mut found = None;
        let _ = self.dfs(&[], &mut |a| {
            found = Some(a.to_vec());
            ControlFlow::Break(())
        });
        found
    }

    pub fn exists(&self) -> bool {
        self.first().is_some()
    }
}

/// Runs `f` over `items`, in parallel when `exec` allows, preserving order.
pub fn map_ordered<T, R, F>(items: &[T], exec: Exec, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Send + Sync,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}
