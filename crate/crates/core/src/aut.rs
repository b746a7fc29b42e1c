//! Automorphisms (X, x) ↦ (C²X^{p^i} + A, ε·N(C)·x^{p^i}) of NG(q, t).
//!
//! For odd q the translation A is 0; for even q the sign ε is +1.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::bitset::{count, ones, BitMatrix};
use crate::error::{Error, Result};
use crate::ff::Fe;
use crate::normgraph::{GraphCtx, Vertex};

/// Composite ω_ε∘σ_C∘π_i (odd q) or μ_A∘σ_C∘π_i (even q).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AutMap {
    pub c: Fe,
    /// Frobenius exponent, reduced into [0, k(t−1)).
    pub i: u32,
    pub eps: i8,
    pub a: Fe,
}

fn frob_degree(gc: &GraphCtx) -> u32 {
    gc.k() * (gc.t() - 1)
}

fn frob(gc: &GraphCtx, x: Fe, i: u32) -> Fe {
    gc.big().pow(x, gc.p().pow(i))
}

/// Validated map in canonical form.
pub fn make_aut(gc: &GraphCtx, c: Fe, i: u32, eps: i8, a: Fe) -> Result<AutMap> {
    let f = gc.big();
    f.check(c)?;
    f.check(a)?;
    if c.is_zero() {
        return Err(Error::InvalidParameters("C must be nonzero".into()));
    }
    if eps != 1 && eps != -1 {
        return Err(Error::InvalidParameters("sign must be +1 or -1".into()));
    }
    if gc.is_odd() && !a.is_zero() {
        return Err(Error::InvalidParameters("translations are automorphisms only for even q".into()));
    }
    if !gc.is_odd() && eps != 1 {
        return Err(Error::InvalidParameters("the sign map is trivial for even q".into()));
    }
    Ok(canonical(gc, AutMap { c, i: i % frob_degree(gc), eps, a }))
}

/// Picks the representative with C ≤ −C (odd q); σ_{−C} = ω_{(−1)^{t−1}}∘σ_C.
pub fn canonical(gc: &GraphCtx, m: AutMap) -> AutMap {
    let f = gc.big();
    let i = m.i % frob_degree(gc);
    if !gc.is_odd() {
        return AutMap { i, ..m };
    }
    let neg = f.neg(m.c);
    if neg < m.c {
        let flip = if (gc.t() - 1) % 2 == 1 { -1 } else { 1 };
        AutMap { c: neg, i, eps: m.eps * flip, a: m.a }
    } else {
        AutMap { i, ..m }
    }
}

pub fn identity(gc: &GraphCtx) -> AutMap {
    let f = gc.big();
    AutMap { c: f.one(), i: 0, eps: 1, a: f.zero() }
}

pub fn apply(gc: &GraphCtx, m: &AutMap, v: &Vertex) -> Vertex {
    let f = gc.big();
    let first = f.add(f.mul(f.mul(m.c, m.c), frob(gc, v.first, m.i)), m.a);
    let mut second = f.mul(gc.norm(m.c), frob(gc, v.second, m.i));
    if m.eps < 0 {
        second = f.neg(second);
    }
    Vertex { first, second }
}

/// m1∘m2 (apply m2 first).
pub fn compose(gc: &GraphCtx, m1: &AutMap, m2: &AutMap) -> AutMap {
    let f = gc.big();
    let c2 = frob(gc, m2.c, m1.i);
    let a2 = frob(gc, m2.a, m1.i);
    let c1sq = f.mul(m1.c, m1.c);
    canonical(
        gc,
        AutMap {
            c: f.mul(m1.c, c2),
            i: (m1.i + m2.i) % frob_degree(gc),
            eps: m1.eps * m2.eps,
            a: f.add(f.mul(c1sq, a2), m1.a),
        },
    )
}

pub fn inverse(gc: &GraphCtx, m: &AutMap) -> AutMap {
    let f = gc.big();
    let d = frob_degree(gc);
    let r = (d - m.i % d) % d;
    let c = frob(gc, f.inv(m.c), r);
    let a = f.neg(f.mul(f.mul(c, c), frob(gc, m.a, r)));
    canonical(gc, AutMap { c, i: r, eps: m.eps, a })
}

/// |Aut(NG(q, t))| for q > 2.
pub fn aut_order(gc: &GraphCtx) -> Result<u128> {
    if gc.q() == 2 {
        return Err(Error::DegenerateGraph);
    }
    let qt = u128::from(gc.big_order());
    let base = (qt - 1) * u128::from(frob_degree(gc));
    Ok(if gc.is_odd() { base } else { qt * base })
}

/// Isomorphism type as a string such as "Z_8⋊Z_2".
pub fn structure(gc: &GraphCtx) -> Result<String> {
    if gc.q() == 2 {
        return Err(Error::DegenerateGraph);
    }
    let qt = gc.big_order();
    let d = frob_degree(gc);
    Ok(if !gc.is_odd() {
        format!("((Z_{})^{}⋊Z_{})⋊Z_{}", gc.p(), d, qt - 1, d)
    } else if (gc.t() - 1) % 2 == 1 {
        format!("Z_{}⋊Z_{}", qt - 1, d)
    } else {
        format!("(Z_2×Z_{})⋊Z_{}", (qt - 1) / 2, d)
    })
}

/// Every automorphism once, in canonical form: ε (or A), then C, then i.
pub fn enumerate_aut(gc: &GraphCtx) -> Result<Vec<AutMap>> {
    if gc.q() == 2 {
        return Err(Error::DegenerateGraph);
    }
    let f = gc.big();
    let d = frob_degree(gc);
    let mut out = Vec::new();
    if gc.is_odd() {
        for eps in [1i8, -1] {
            for c in f.nonzero().filter(|&c| c <= f.neg(c)) {
                for i in 0..d {
                    out.push(AutMap { c, i, eps, a: f.zero() });
                }
            }
        }
    } else {
        for a in f.elements() {
            for c in f.nonzero() {
                for i in 0..d {
                    out.push(AutMap { c, i, eps: 1, a });
                }
            }
        }
    }
    Ok(out)
}

/// The vertex permutation induced by a map, as images of vertex indices.
pub fn permutation(gc: &GraphCtx, m: &AutMap) -> Vec<usize> {
    gc.vertices().map(|v| gc.vertex_index(&apply(gc, m, &v))).collect()
}

/// Exhaustive check that m is a bijection preserving the loop-inclusive
/// adjacency relation.
pub fn preserves_adjacency(gc: &GraphCtx, adj: &BitMatrix, m: &AutMap) -> bool {
    let perm = permutation(gc, m);
    let mut seen = vec![false; perm.len()];
    for &j in &perm {
        if core::mem::replace(&mut seen[j], true) {
            return false;
        }
    }
    (0..perm.len()).all(|u| (0..perm.len()).all(|v| adj.get(u, v) == adj.get(perm[u], perm[v])))
}

/// Largest vertex count accepted by [`brute_force_aut`].
pub const BRUTE_FORCE_LIMIT: u64 = 30;

/// Number of vertex bijections preserving adjacency; with `respect_loops`
/// the relation includes the loops.
pub fn brute_force_aut(gc: &GraphCtx, respect_loops: bool) -> Result<u64> {
    let adj = gc.adjacency(!respect_loops, BRUTE_FORCE_LIMIT)?;
    Ok(count_automorphisms(&adj))
}

/// Backtracking automorphism count of a 0/1 relation.
pub fn count_automorphisms(adj: &BitMatrix) -> u64 {
    let n = adj.size();
    // Invariant: (loop, degree, sorted common degrees to all other vertices).
    let invariant: Vec<(bool, usize, Vec<usize>)> = (0..n)
        .map(|u| {
            let mut cd: Vec<usize> = (0..n)
                .filter(|&v| v != u)
                .map(|v| adj.row(u).iter().zip(adj.row(v)).map(|(a, b)| (a & b).count_ones() as usize).sum())
                .collect();
            cd.sort_unstable();
            (adj.get(u, u), adj.degree(u), cd)
        })
        .collect();
    // Connected-first order keeps adjacency constraints tight.
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    while order.len() < n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| (order.iter().filter(|&&u| adj.get(u, v)).count(), core::cmp::Reverse(v)))
            .expect("unplaced vertex");
        placed[next] = true;
        order.push(next);
    }
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn rec(
        depth: usize,
        order: &[usize],
        adj: &BitMatrix,
        inv: &[(bool, usize, Vec<usize>)],
        image: &mut [usize],
        used: &mut [bool],
    ) -> u64 {
        if depth == order.len() {
            return 1;
        }
        let u = order[depth];
        let mut total = 0;
        for w in 0..adj.size() {
            if used[w] || inv[w] != inv[u] {
                continue;
            }
            let ok = order[..depth].iter().all(|&v| adj.get(u, v) == adj.get(w, image[v]) && adj.get(v, u) == adj.get(image[v], w));
            if !ok {
                continue;
            }
            used[w] = true;
            image[u] = w;
            total += rec(depth + 1, order, adj, inv, image, used);
            used[w] = false;
            image[u] = usize::MAX;
        }
        total
    }
    rec(0, &order, adj, &invariant, &mut image, &mut used)
}

/// Conjugation by π_i keeps maps with i = 0 inside the normal subgroup, with
/// parameters C^{p^r}, A^{p^r} (r = k(t−1) − i); checked symbolically and on
/// every vertex (or the first `sample` vertices).
pub fn frobenius_conjugation_check(gc: &GraphCtx, m: &AutMap, i: u32, sample: usize) -> Result<bool> {
    if m.i != 0 {
        return Err(Error::InvalidParameters("map must have trivial Frobenius part".into()));
    }
    let f = gc.big();
    let d = frob_degree(gc);
    let pi = AutMap { c: f.one(), i: i % d, eps: 1, a: f.zero() };
    let conj = compose(gc, &inverse(gc, &pi), &compose(gc, m, &pi));
    let r = (d - i % d) % d;
    let expected = canonical(gc, AutMap { c: frob(gc, m.c, r), i: 0, eps: m.eps, a: frob(gc, m.a, r) });
    let pointwise = gc.vertices().take(sample).all(|v| {
        let direct = apply(gc, &inverse(gc, &pi), &apply(gc, m, &apply(gc, &pi, &v)));
        direct == apply(gc, &conj, &v)
    });
    Ok(conj.i == 0 && conj == expected && pointwise)
}

/// μ_A^{σ_C} = μ_{C^{−2}A} for even q.
pub fn translation_conjugation_check(gc: &GraphCtx, a: Fe, c: Fe, sample: usize) -> Result<bool> {
    if gc.is_odd() {
        return Err(Error::InvalidParameters("translations exist only for even q".into()));
    }
    let f = gc.big();
    let mu = make_aut(gc, f.one(), 0, 1, a)?;
    let sigma = make_aut(gc, c, 0, 1, f.zero())?;
    let conj = compose(gc, &inverse(gc, &sigma), &compose(gc, &mu, &sigma));
    let ci = f.inv(c);
    let expected = make_aut(gc, f.one(), 0, 1, f.mul(f.mul(ci, ci), a))?;
    let pointwise = gc.vertices().take(sample).all(|v| {
        apply(gc, &conj, &v) == apply(gc, &inverse(gc, &sigma), &apply(gc, &mu, &apply(gc, &sigma, &v)))
    });
    Ok(conj == expected && pointwise)
}

/// Pairs with common degree below (q^{t−1}−1)/(q−1), as a relation.
fn poor_pairs(gc: &GraphCtx, limit: u64) -> Result<BitMatrix> {
    let adj = gc.adjacency(false, limit)?;
    let n = adj.size();
    let threshold = gc.norm_exponent() as usize;
    let mut poor = BitMatrix::new(n);
    for u in 0..n {
        for v in u + 1..n {
            let cd: usize = adj.row(u).iter().zip(adj.row(v)).map(|(a, b)| (a & b).count_ones() as usize).sum();
            if cd < threshold {
                poor.set(u, v);
                poor.set(v, u);
            }
        }
    }
    Ok(poor)
}

/// Whether every pair of the set has common degree below (q^{t−1}−1)/(q−1).
pub fn is_poor(gc: &GraphCtx, set: &[Vertex]) -> bool {
    let threshold = gc.norm_exponent() as usize;
    set.iter().enumerate().all(|(i, u)| {
        set[i + 1..].iter().all(|v| crate::neighborhoods::common_neighborhood_bruteforce(gc, &[*u, *v]).len() < threshold)
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoorSetReport {
    /// Every fibre S_x = {(X, x)} is poor.
    pub fibers_poor: bool,
    /// Number of poor sets of size q^{t−1}.
    pub poor_sets: usize,
    /// Each of them is a fibre.
    pub all_fibers: bool,
}

impl PoorSetReport {
    pub fn holds(&self) -> bool {
        self.fibers_poor && self.all_fibers
    }
}

/// Vertex cap for [`poor_set_check`].
pub const POOR_SET_LIMIT: u64 = 2_000;

/// Enumerates all poor sets of size q^{t−1} as cliques of the poor-pair relation.
pub fn poor_set_check(gc: &GraphCtx) -> Result<PoorSetReport> {
    let poor = poor_pairs(gc, POOR_SET_LIMIT)?;
    let n = poor.size();
    let size = gc.big_order() as usize;
    let fibers: BTreeSet<Vec<usize>> = gc
        .base()
        .nonzero()
        .iter()
        .map(|&x| {
            let mut s: Vec<usize> = gc.big().elements().map(|a| gc.vertex_index(&Vertex { first: a, second: x })).collect();
            s.sort_unstable();
            s
        })
        .collect();
    let fibers_poor = fibers.iter().all(|s| s.iter().all(|&u| s.iter().all(|&v| u == v || poor.get(u, v))));
    let mut found: Vec<Vec<usize>> = Vec::new();
    let all: Vec<u64> = {
        let mut b = BitMatrix::new(n);
        for v in 0..n {
            b.set(0, v);
        }
        b.row(0).to_vec()
    };
    fn cliques(poor: &BitMatrix, cand: Vec<u64>, cur: &mut Vec<usize>, size: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        if cur.len() + count(&cand) < size {
            return;
        }
        let members: Vec<usize> = ones(&cand).collect();
        for v in members {
            let mut next: Vec<u64> = cand.iter().zip(poor.row(v)).map(|(a, b)| a & b).collect();
            // only larger indices, so each clique appears once
            for (wi, w) in next.iter_mut().enumerate() {
                let lo = wi * 64;
                if lo + 64 <= v + 1 {
                    *w = 0;
                } else if lo <= v {
                    *w &= !((1u64 << (v + 1 - lo)) - 1);
                }
            }
            cur.push(v);
            cliques(poor, next, cur, size, out);
            cur.pop();
        }
    }
    cliques(&poor, all, &mut Vec::new(), size, &mut found);
    let all_fibers = found.iter().all(|s| fibers.contains(s));
    Ok(PoorSetReport { fibers_poor, poor_sets: found.len(), all_fibers })
}
