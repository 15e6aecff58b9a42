//! Brute-force reference computations, written without the library's
//! search engine so they can be compared against it.

#![allow(dead_code)]

use workbench_core::fincat::{FinCategory, Mor, Obj, SetFunctor};
use workbench_core::limits::Diagram;
use workbench_core::site::{generate_sieve, GrothendieckTopology};
use workbench_core::torsor::{Cocycle, GroupSheaf};

/// Every natural transformation `src ⇒ tgt` as per-object component tables,
/// by trying all functions object by object.
pub fn naturals(src: &dyn SetFunctor, tgt: &dyn SetFunctor) -> Vec<Vec<Vec<usize>>> {
    let cat = src.base().clone();
    let objs: Vec<Obj> = cat.objects().collect();
    let mut out = Vec::new();
    let mut comps: Vec<Vec<usize>> = Vec::new();
    fn go(
        cat: &FinCategory,
        objs: &[Obj],
        src: &dyn SetFunctor,
        tgt: &dyn SetFunctor,
        comps: &mut Vec<Vec<usize>>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        let k = comps.len();
        if k == objs.len() {
            let natural = cat.morphisms().all(|m| {
                let (d, c) = src.action_ends(m);
                (0..src.size(d)).all(|x| tgt.act(m, comps[d.0][x]) == comps[c.0][src.act(m, x)])
            });
            if natural {
                out.push(comps.clone());
            }
            return;
        }
        let (n, t) = (src.size(objs[k]), tgt.size(objs[k]));
        if n > 0 && t == 0 {
            return;
        }
        for code in 0..t.pow(n as u32).max(1) {
            let mut c = code;
            let f: Vec<usize> = (0..n)
                .map(|_| {
                    let v = c % t;
                    c /= t;
                    v
                })
                .collect();
            comps.push(f);
            go(cat, objs, src, tgt, comps, out);
            comps.pop();
        }
    }
    go(&cat, &objs, src, tgt, &mut comps, &mut out);
    out
}

/// Subfunctors of `f`: every choice of subsets closed under the action.
pub fn subfunctors(f: &dyn SetFunctor) -> Vec<Vec<Vec<bool>>> {
    let cat = f.base().clone();
    let cells: Vec<(Obj, usize)> = cat.objects().flat_map(|o| (0..f.size(o)).map(move |x| (o, x))).collect();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << cells.len()) {
        let mut parts: Vec<Vec<bool>> = cat.objects().map(|o| vec![false; f.size(o)]).collect();
        for (i, &(o, x)) in cells.iter().enumerate() {
            parts[o.0][x] = mask >> i & 1 == 1;
        }
        let closed = cat.morphisms().all(|m| {
            let (d, c) = f.action_ends(m);
            (0..f.size(d)).all(|x| !parts[d.0][x] || parts[c.0][f.act(m, x)])
        });
        if closed {
            out.push(parts);
        }
    }
    out
}

/// The arrows into `u` along which `x` lands in `parts`.
fn truth_arrows(f: &dyn SetFunctor, parts: &[Vec<bool>], u: Obj, x: usize) -> Vec<Mor> {
    let cat = f.base();
    cat.morphisms()
        .filter(|&m| cat.target(m) == u && parts[cat.source(m).0][f.act(m, x)])
        .collect()
}

/// `J`-closed subfunctors of a presheaf.
pub fn closed_subfunctors(f: &dyn SetFunctor, j: &GrothendieckTopology) -> Vec<Vec<Vec<bool>>> {
    let cat = f.base().clone();
    subfunctors(f)
        .into_iter()
        .filter(|parts| {
            cat.objects().all(|u| {
                (0..f.size(u)).all(|x| {
                    let s = generate_sieve(&cat, u, &truth_arrows(f, parts, u, x)).expect("arrows into u");
                    parts[u.0][x] || !j.is_covering(&s)
                })
            })
        })
        .collect()
}

/// Sieves on `u` that are `J`-closed: `f ∈ S` whenever `f*S` covers.
pub fn closed_sieve_count(cat: &FinCategory, j: &GrothendieckTopology, u: Obj) -> usize {
    let into: Vec<Mor> = cat.morphisms().filter(|&m| cat.target(m) == u).collect();
    let mut count = 0;
    for mask in 0u64..(1u64 << into.len()) {
        let chosen: Vec<Mor> = (0..into.len()).filter(|&i| mask >> i & 1 == 1).map(|i| into[i]).collect();
        let is_sieve = chosen.iter().all(|&f| {
            cat.morphisms()
                .filter(|&g| cat.target(g) == cat.source(f))
                .all(|g| chosen.contains(&cat.comp(f, g)))
        });
        if !is_sieve {
            continue;
        }
        let closed = into.iter().all(|&f| {
            let pulled: Vec<Mor> = cat
                .morphisms()
                .filter(|&g| cat.target(g) == cat.source(f) && chosen.contains(&cat.comp(f, g)))
                .collect();
            let s = generate_sieve(cat, cat.source(f), &pulled).expect("arrows into the source");
            chosen.contains(&f) || !j.is_covering(&s)
        });
        if closed {
            count += 1;
        }
    }
    count
}

/// Compatible families of a diagram, found by assigning objects in order
/// and pruning on every arrow whose ends are both assigned.
pub fn limit_count(d: &Diagram) -> usize {
    let shape = d.shape().clone();
    let objs: Vec<Obj> = shape.objects().collect();
    fn go(d: &Diagram, shape: &FinCategory, objs: &[Obj], chosen: &mut Vec<usize>) -> usize {
        let k = chosen.len();
        if k == objs.len() {
            return 1;
        }
        let mut total = 0;
        for x in 0..d.elements(objs[k]).len() {
            chosen.push(x);
            let ok = shape.morphisms().all(|m| {
                let (s, t) = (shape.source(m).0, shape.target(m).0);
                s > k || t > k || d.action(m)[chosen[s]] == chosen[t]
            });
            if ok {
                total += go(d, shape, objs, chosen);
            }
            chosen.pop();
        }
        total
    }
    go(d, &shape, &objs, &mut Vec::new())
}

/// Classes of the disjoint union under `x ~ F(m)(x)`, by union-find.
pub fn colimit_classes(d: &Diagram) -> Vec<Vec<(Obj, usize)>> {
    let shape = d.shape();
    let cells: Vec<(Obj, usize)> = shape.objects().flat_map(|o| (0..d.elements(o).len()).map(move |x| (o, x))).collect();
    let index = |o: Obj, x: usize| cells.iter().position(|&c| c == (o, x)).expect("cell");
    let mut parent: Vec<usize> = (0..cells.len()).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        if p[i] != i {
            p[i] = find(p, p[i]);
        }
        p[i]
    }
    for m in shape.morphisms() {
        for (x, &y) in d.action(m).iter().enumerate() {
            let a = find(&mut parent, index(shape.source(m), x));
            let b = find(&mut parent, index(shape.target(m), y));
            parent[a] = b;
        }
    }
    let mut classes: Vec<(usize, Vec<(Obj, usize)>)> = Vec::new();
    for (i, &c) in cells.iter().enumerate() {
        let r = find(&mut parent, i);
        match classes.iter_mut().find(|(root, _)| *root == r) {
            Some((_, v)) => v.push(c),
            None => classes.push((r, vec![c])),
        }
    }
    classes.into_iter().map(|(_, v)| v).collect()
}

/// `g_ij · g_jk = g_ik` on every triple overlap and `g_ii = 1`, using only
/// the group tables and restrictions.
pub fn cocycle_identities(cat: &FinCategory, group: &GroupSheaf, c: &Cocycle) -> bool {
    let n = c.cover.len();
    let m = c.cover.members();
    let meet = |a: Obj, b: Obj| cat.meet(a, b).expect("thin site with meets");
    let restrict = |from: Obj, to: Obj, g: usize| {
        let arrow = cat.arrow_between(to, from).expect("inclusion of overlaps");
        group.presheaf.restrict(arrow, g)
    };
    for i in 0..n {
        if c.values[i][i] != group.groups[m[i].0].unit() {
            return false;
        }
        for j in 0..n {
            for k in 0..n {
                let t = meet(meet(m[i], m[j]), m[k]);
                let gij = restrict(meet(m[i], m[j]), t, c.values[i][j]);
                let gjk = restrict(meet(m[j], m[k]), t, c.values[j][k]);
                let gik = restrict(meet(m[i], m[k]), t, c.values[i][k]);
                if group.groups[t.0].mul(gij, gjk) != gik {
                    return false;
                }
            }
        }
    }
    true
}

/// Whether `c2 = h_i⁻¹ c1 h_j` for some choice of `h_i`, by trying every choice.
pub fn cohomologous(cat: &FinCategory, group: &GroupSheaf, c1: &Cocycle, c2: &Cocycle) -> bool {
    let m = c1.cover.members();
    let n = m.len();
    let sizes: Vec<usize> = m.iter().map(|&u| group.presheaf.size(u)).collect();
    let total: usize = sizes.iter().product();
    (0..total).any(|mut code| {
        let h: Vec<usize> = sizes
            .iter()
            .map(|&s| {
                let v = code % s;
                code /= s;
                v
            })
            .collect();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let o = cat.meet(m[i], m[j]).expect("overlap");
                let g = &group.groups[o.0];
                let hi = group.presheaf.restrict(cat.arrow_between(o, m[i]).expect("inclusion"), h[i]);
                let hj = group.presheaf.restrict(cat.arrow_between(o, m[j]).expect("inclusion"), h[j]);
                g.mul(g.mul(g.inv(hi), c1.values[i][j]), hj) == c2.values[i][j]
            })
        })
    })
}
