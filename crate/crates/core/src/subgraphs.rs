//! Labeled subgraph counts in NG(q, t), degeneracy orderings and common-degree extrema.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand_core::RngCore;

use crate::bitset::{count, ones, BitMatrix};
use crate::error::{Error, Result};
use crate::normgraph::{GraphCtx, Vertex};

/// Largest pattern handled (vertex sets are u64 masks).
pub const MAX_PATTERN_VERTICES: usize = 64;
/// Default work cap for [`count_labeled`].
pub const DEFAULT_BUDGET: u64 = 1_000_000_000;
/// Host graphs above this many vertices are refused.
pub const HOST_LIMIT: u64 = 1 << 14;

/// A small simple graph on vertices 0..v.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternGraph {
    v: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<u64>,
}

impl PatternGraph {
    pub fn new(v: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if v == 0 || v > MAX_PATTERN_VERTICES {
            return Err(Error::InvalidParameters(format!("pattern needs 1..={MAX_PATTERN_VERTICES} vertices")));
        }
        let mut adj = vec![0u64; v];
        let mut list = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if a >= v || b >= v {
                return Err(Error::InvalidParameters(format!("edge ({a}, {b}) out of range")));
            }
            if a == b {
                return Err(Error::InvalidParameters(format!("loop at {a}")));
            }
            if adj[a] >> b & 1 == 1 {
                return Err(Error::InvalidParameters(format!("repeated edge ({a}, {b})")));
            }
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
            list.push((a.min(b), a.max(b)));
        }
        Ok(PatternGraph { v, edges: list, adj })
    }

    /// Text format: a line "v e" followed by e lines "i j" (0-indexed).
    pub fn parse(text: &str) -> Result<Self> {
        let mut nums = text
            .split_whitespace()
            .map(|s| s.parse::<usize>().map_err(|_| Error::InvalidParameters(format!("bad integer {s:?}"))));
        let mut next = |what: &'static str| nums.next().unwrap_or(Err(Error::InvalidParameters(format!("missing {what}"))));
        let v = next("vertex count")?;
        let e = next("edge count")?;
        let mut edges = Vec::with_capacity(e);
        for _ in 0..e {
            edges.push((next("edge endpoint")?, next("edge endpoint")?));
        }
        if nums.next().is_some() {
            return Err(Error::InvalidParameters("trailing data after edge list".into()));
        }
        Self::new(v, &edges)
    }

    pub fn complete(n: usize) -> Result<Self> {
        let edges: Vec<_> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        Self::new(n, &edges)
    }
    /// Path with n vertices.
    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::new(n, &edges)
    }
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParameters("cycles need at least 3 vertices".into()));
        }
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::new(n, &edges)
    }
    /// K_{s,t} with parts 0..s and s..s+t.
    pub fn complete_bipartite(s: usize, t: usize) -> Result<Self> {
        let edges: Vec<_> = (0..s).flat_map(|a| (s..s + t).map(move |b| (a, b))).collect();
        Self::new(s + t, &edges)
    }

    /// Names such as K2, K4, P3, C4 or K3,3 / K_{4,7}.
    pub fn named(name: &str) -> Result<Self> {
        let bad = || Error::InvalidParameters(format!("unknown pattern {name:?}"));
        let s = name.trim();
        let body: &str = s.get(1..).ok_or_else(bad)?;
        let cleaned: alloc::string::String = body.chars().filter(|c| !matches!(c, '_' | '{' | '}')).collect();
        let num = |x: &str| x.parse::<usize>().map_err(|_| bad());
        match s.chars().next() {
            Some('K') if cleaned.contains(',') => {
                let (a, b) = cleaned.split_once(',').ok_or_else(bad)?;
                Self::complete_bipartite(num(a)?, num(b)?)
            }
            Some('K') => Self::complete(num(&cleaned)?),
            Some('P') => Self::path(num(&cleaned)?),
            Some('C') => Self::cycle(num(&cleaned)?),
            _ => Err(bad()),
        }
    }

    pub fn v(&self) -> usize {
        self.v
    }
    pub fn e(&self) -> usize {
        self.edges.len()
    }
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }
    pub fn neighbors(&self, u: usize) -> u64 {
        self.adj[u]
    }
    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].count_ones() as usize
    }

    /// The graph with vertex u renamed perm[u].
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let edges: Vec<_> = self.edges.iter().map(|&(a, b)| (perm[a], perm[b])).collect();
        Self::new(self.v, &edges)
    }

    pub fn remove_edge(&self, idx: usize) -> Result<Self> {
        let mut edges = self.edges.clone();
        edges.remove(idx);
        Self::new(self.v, &edges)
    }

    pub fn to_matrix(&self) -> BitMatrix {
        let mut m = BitMatrix::new(self.v);
        for &(a, b) in &self.edges {
            m.set(a, b);
            m.set(b, a);
        }
        m
    }

    /// |Aut(H)|.
    pub fn automorphism_count(&self) -> u64 {
        crate::aut::count_automorphisms(&self.to_matrix())
    }
}

/// Ordering with back-degrees d_i (neighbours earlier in the order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegeneracyOrder {
    pub order: Vec<usize>,
    pub back_degrees: Vec<usize>,
    pub degeneracy: usize,
}

/// Repeatedly removes a minimum-degree vertex (smallest index on ties); the
/// ordering is the reversed removal sequence.
pub fn degeneracy_order(h: &PatternGraph) -> DegeneracyOrder {
    let n = h.v();
    let mut alive: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut removal = Vec::with_capacity(n);
    while alive != 0 {
        let u = (0..n)
            .filter(|&u| alive >> u & 1 == 1)
            .min_by_key(|&u| ((h.neighbors(u) & alive).count_ones(), u))
            .expect("alive vertex");
        removal.push(u);
        alive &= !(1 << u);
    }
    removal.reverse();
    let mut seen = 0u64;
    let back_degrees: Vec<usize> = removal
        .iter()
        .map(|&u| {
            let d = (h.neighbors(u) & seen).count_ones() as usize;
            seen |= 1 << u;
            d
        })
        .collect();
    let degeneracy = back_degrees.iter().copied().max().unwrap_or(0);
    DegeneracyOrder { order: removal, back_degrees, degeneracy }
}

/// Fewest positions with back-degree exactly 3 over all orderings whose
/// back-degrees are at most 3; `None` when H is not 3-degenerate. Exact
/// subset dynamic programme, so limited to 20 vertices.
pub fn min_three_count(h: &PatternGraph) -> Result<Option<usize>> {
    let n = h.v();
    if n > 20 {
        return Err(Error::TooLarge { size: n as u64, limit: 20 });
    }
    let full = (1usize << n) - 1;
    let mut dp = vec![usize::MAX; full + 1];
    dp[0] = 0;
    for s in 0..=full {
        if dp[s] == usize::MAX {
            continue;
        }
        for u in (0..n).filter(|&u| s >> u & 1 == 0) {
            let back = (h.neighbors(u) & s as u64).count_ones();
            if back > 3 {
                continue;
            }
            let cost = dp[s] + usize::from(back == 3);
            let t = s | 1 << u;
            dp[t] = dp[t].min(cost);
        }
    }
    Ok((dp[full] != usize::MAX).then_some(dp[full]))
}

/// Vertex classes with identical neighbourhoods: false twins (same open
/// neighbourhood) and true twins (same closed neighbourhood).
fn twin_classes(h: &PatternGraph) -> Vec<Vec<usize>> {
    let n = h.v();
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for key_closed in [false, true] {
        for u in 0..n {
            if class_of[u] != usize::MAX {
                continue;
            }
            let key = |w: usize| if key_closed { h.neighbors(w) | 1 << w } else { h.neighbors(w) };
            let members: Vec<usize> = (u..n).filter(|&w| class_of[w] == usize::MAX && key(w) == key(u)).collect();
            if members.len() > 1 || key_closed {
                for &w in &members {
                    class_of[w] = classes.len();
                }
                classes.push(members);
            }
        }
    }
    classes
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

fn factorial(k: usize) -> u128 {
    (1..=k as u128).product()
}

/// Support sets larger than this skip the filter in the search.
const SUPPORT_FILTER_LIMIT: usize = 256;
/// Words per host row (host size is capped at [`HOST_LIMIT`]).
const MAX_WORDS: usize = (HOST_LIMIT as usize).div_ceil(64);

type Row = [u64; MAX_WORDS];

/// Word w of the set of bits present in at least k of the rows (bit-sliced count).
fn at_least_word(adj: &BitMatrix, rows: &[usize], k: usize, w: usize) -> u64 {
    let mut sliced = [0u64; 10];
    let width = (usize::BITS - k.leading_zeros()) as usize;
    let mut overflow = 0u64;
    for &x in rows {
        let mut carry = adj.row(x)[w];
        for slice in sliced.iter_mut().take(width) {
            let sum = *slice ^ carry;
            carry &= *slice;
            *slice = sum;
        }
        overflow |= carry;
    }
    let (mut gt, mut eq) = (overflow, !overflow);
    for b in (0..width).rev() {
        if k >> b & 1 == 1 {
            eq &= sliced[b];
        } else {
            gt |= eq & sliced[b];
            eq &= !sliced[b];
        }
    }
    gt | eq
}

struct Counter<'a> {
    adj: &'a BitMatrix,
    h: &'a PatternGraph,
    words: usize,
    order: &'a [usize],
    /// Previously ordered member of the same class, if any.
    prev_twin: &'a [Option<usize>],
    tail: &'a [usize],
    classes: &'a [Vec<usize>],
    image: Vec<usize>,
    used: Row,
    work: u64,
    budget: u64,
    root: Option<usize>,
}

impl Counter<'_> {
    /// Unused host vertices adjacent to the images of u's placed neighbours.
    fn candidates(&self, u: usize, placed: u64, out: &mut Row) {
        let n = self.adj.size();
        for (w, c) in out.iter_mut().enumerate().take(self.words) {
            let lo = w * 64;
            let full = if lo + 64 <= n { u64::MAX } else { (1u64 << (n - lo)) - 1 };
            *c = full & !self.used[w];
        }
        let mut nb = self.h.neighbors(u) & placed;
        while nb != 0 {
            let x = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            for (c, r) in out.iter_mut().zip(self.adj.row(self.image[x])) {
                *c &= r;
            }
        }
    }

    fn tick(&mut self, amount: u64) -> Result<()> {
        self.work += amount;
        if self.work > self.budget {
            return Err(Error::BudgetExceeded { used: self.work, budget: self.budget });
        }
        Ok(())
    }

    /// Every unplaced class with a placed neighbour still has room for its
    /// unplaced members.
    fn hall_ok(&mut self, placed: u64) -> Result<bool> {
        let mut buf = [0u64; MAX_WORDS];
        for ci in 0..self.classes.len() {
            let members = &self.classes[ci];
            let unplaced = members.iter().filter(|&&m| placed >> m & 1 == 0).count();
            let rep = members[0];
            if unplaced == 0 || self.h.neighbors(rep) & placed == 0 {
                continue;
            }
            self.candidates(rep, placed, &mut buf);
            self.tick(1)?;
            if count(&buf[..self.words]) < unplaced {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn rec(&mut self, depth: usize, placed: u64) -> Result<u128> {
        let words = self.words;
        let mut cand = [0u64; MAX_WORDS];
        if depth == self.order.len() {
            let Some(&rep) = self.tail.first() else { return Ok(1) };
            self.candidates(rep, placed, &mut cand);
            self.tick(1)?;
            return Ok(binomial(count(&cand[..words]) as u128, self.tail.len() as u128));
        }
        let u = self.order[depth];
        self.candidates(u, placed, &mut cand);
        if let Some(prev) = self.prev_twin[u] {
            let floor = self.image[prev] + 1;
            for (w, c) in cand.iter_mut().enumerate().take(words) {
                let lo = w * 64;
                if lo + 64 <= floor {
                    *c = 0;
                } else if lo < floor {
                    *c &= !((1u64 << (floor - lo)) - 1);
                }
            }
        }
        // A vertex adjacent to the whole tail must see at least |tail| of its candidates.
        if let Some(&rep) = self.tail.first() {
            if self.h.neighbors(u) >> rep & 1 == 1 {
                let mut support = [0u64; MAX_WORDS];
                self.candidates(rep, placed, &mut support);
                let s = count(&support[..words]);
                self.tick(1)?;
                if s < self.tail.len() {
                    return Ok(0);
                }
                if s <= SUPPORT_FILTER_LIMIT {
                    let mut rows = [0usize; SUPPORT_FILTER_LIMIT];
                    for (slot, x) in rows.iter_mut().zip(ones(&support[..words])) {
                        *slot = x;
                    }
                    for (w, c) in cand.iter_mut().enumerate().take(words) {
                        if *c != 0 {
                            *c &= at_least_word(self.adj, &rows[..s], self.tail.len(), w);
                        }
                    }
                    self.tick(s as u64)?;
                }
            }
        }
        if depth == 0 {
            if let Some(r) = self.root {
                let hit = cand[r / 64] >> (r % 64) & 1;
                cand[..words].fill(0);
                cand[r / 64] = hit << (r % 64);
            }
        }
        let mut total = 0u128;
        for x in ones(&cand[..words]) {
            self.tick(1)?;
            self.image[u] = x;
            self.used[x / 64] |= 1 << (x % 64);
            let next = placed | 1 << u;
            if self.hall_ok(next)? {
                total += self.rec(depth + 1, next)?;
            }
            self.used[x / 64] &= !(1 << (x % 64));
        }
        self.image[u] = usize::MAX;
        Ok(total)
    }
}

/// Search layout for one (host, pattern) pair. The first vertex of the
/// order is the root; per-root counts can be computed independently and
/// summed.
pub struct CountPlan<'a> {
    adj: &'a BitMatrix,
    h: &'a PatternGraph,
    order: Vec<usize>,
    prev_twin: Vec<Option<usize>>,
    tail: Vec<usize>,
    classes: Vec<Vec<usize>>,
    symmetry: u128,
}

impl<'a> CountPlan<'a> {
    pub fn new(adj: &'a BitMatrix, h: &'a PatternGraph) -> Result<Self> {
        if adj.words() > MAX_WORDS {
            return Err(Error::TooLarge { size: adj.size() as u64, limit: HOST_LIMIT });
        }
        let classes = twin_classes(h);
        let mut class_of = vec![0; h.v()];
        for (ci, c) in classes.iter().enumerate() {
            for &u in c {
                class_of[u] = ci;
            }
        }
        // The closed-form tail: the largest independent class.
        let tail_class = (0..classes.len())
            .filter(|&ci| {
                let c = &classes[ci];
                c.iter().all(|&a| c.iter().all(|&b| h.neighbors(a) >> b & 1 == 0))
            })
            .max_by_key(|&ci| (classes[ci].len(), h.degree(classes[ci][0]), core::cmp::Reverse(ci)));
        let tail: Vec<usize> = tail_class.map(|ci| classes[ci].clone()).unwrap_or_default();
        let tail_mask: u64 = tail.iter().fold(0, |m, &u| m | 1 << u);
        // Greedy connected order on the rest.
        let mut order = Vec::new();
        let mut placed = 0u64;
        while order.len() + tail.len() < h.v() {
            let u = (0..h.v())
                .filter(|&u| (placed | tail_mask) >> u & 1 == 0)
                .max_by_key(|&u| ((h.neighbors(u) & placed).count_ones(), h.degree(u), core::cmp::Reverse(u)))
                .expect("unplaced vertex");
            order.push(u);
            placed |= 1 << u;
        }
        let mut prev_twin = vec![None; h.v()];
        let mut last_in_class: Vec<Option<usize>> = vec![None; classes.len()];
        for &u in &order {
            prev_twin[u] = last_in_class[class_of[u]];
            last_in_class[class_of[u]] = Some(u);
        }
        let symmetry = classes.iter().map(|c| factorial(c.len())).product();
        Ok(CountPlan { adj, h, order, prev_twin, tail, classes, symmetry })
    }

    /// Pattern vertices in embedding order, followed by the closed-form tail.
    pub fn order(&self) -> (&[usize], &[usize]) {
        (&self.order, &self.tail)
    }

    /// Host vertices to try for the root; empty when the whole pattern is
    /// counted in closed form.
    pub fn roots(&self) -> core::ops::Range<usize> {
        if self.order.is_empty() {
            0..0
        } else {
            0..self.adj.size()
        }
    }

    fn counter(&self, budget: u64) -> Counter<'_> {
        Counter {
            adj: self.adj,
            h: self.h,
            words: self.adj.words(),
            order: &self.order,
            prev_twin: &self.prev_twin,
            tail: &self.tail,
            classes: &self.classes,
            image: vec![usize::MAX; self.h.v()],
            used: [0; MAX_WORDS],
            work: 0,
            budget,
            root: None,
        }
    }

    /// Raw count (before the twin-class factor) with the root pinned to x,
    /// together with the work spent.
    pub fn count_root(&self, x: usize, budget: u64) -> Result<(u128, u64)> {
        let mut c = self.counter(budget);
        c.root = Some(x);
        let n = c.rec(0, 0)?;
        Ok((n, c.work))
    }

    /// Count for patterns with no branching vertex.
    fn count_closed(&self, budget: u64) -> Result<(u128, u64)> {
        let mut c = self.counter(budget);
        let n = c.rec(0, 0)?;
        Ok((n, c.work))
    }

    /// Multiplier restoring the orderings removed inside twin classes.
    pub fn symmetry(&self) -> u128 {
        self.symmetry
    }

    /// Combines per-root results in root order.
    pub fn finish(&self, parts: impl IntoIterator<Item = (u128, u64)>, budget: u64) -> Result<u128> {
        let (mut total, mut work) = (0u128, 0u64);
        for (n, w) in parts {
            total += n;
            work = work.saturating_add(w);
        }
        if work > budget {
            return Err(Error::BudgetExceeded { used: work, budget });
        }
        Ok(total * self.symmetry)
    }

    /// Sequential count.
    pub fn count(&self, budget: u64) -> Result<u128> {
        if self.order.is_empty() {
            let part = self.count_closed(budget)?;
            return self.finish([part], budget);
        }
        let mut parts = Vec::with_capacity(self.adj.size());
        let mut spent = 0u64;
        for x in self.roots() {
            let part = self.count_root(x, budget - spent)?;
            spent += part.1;
            parts.push(part);
        }
        self.finish(parts, budget)
    }
}

/// Number of injective maps V(H) → V(G) carrying edges to edges, for a
/// symmetric loop-free 0/1 matrix G.
pub fn count_in_matrix(adj: &BitMatrix, h: &PatternGraph, budget: u64) -> Result<u128> {
    CountPlan::new(adj, h)?.count(budget)
}

/// X_H(NG(q, t)) with simple adjacency.
pub fn count_labeled(gc: &GraphCtx, h: &PatternGraph, budget: u64) -> Result<u128> {
    let build = host_build_cost(gc);
    if build > budget {
        return Err(Error::BudgetExceeded { used: build, budget });
    }
    let adj = gc.adjacency(true, HOST_LIMIT)?;
    count_in_matrix(&adj, h, budget - build)
}

/// Work charged for building the host adjacency: n·q^{t−1} norm evaluations.
pub fn host_build_cost(gc: &GraphCtx) -> u64 {
    gc.n_vertices().saturating_mul(gc.big_order())
}

/// How the count is compared with q^{tv − e}.
#[derive(Clone, Debug, PartialEq)]
pub enum Band {
    /// |X_H − q^{tv−e}| = O(q^{tv−e−1/2}); `constant` = |ratio − 1|·√q.
    Deviation { constant: f64 },
    /// Θ only: the window [1, 2^{c(H)}].
    Theta { c_h: usize, low: f64, high: f64 },
    /// Outside the range of the asymptotic statement.
    Unclaimed,
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuasirandomReport {
    pub count: u128,
    /// q^{tv − e}.
    pub expected: f64,
    pub ratio: f64,
    pub degeneracy: usize,
    pub band: Band,
}

pub fn quasirandom_ratio(gc: &GraphCtx, h: &PatternGraph, budget: u64) -> Result<QuasirandomReport> {
    quasirandom_from_count(gc, h, count_labeled(gc, h, budget)?)
}

/// Band annotation for an already computed X_H.
pub fn quasirandom_from_count(gc: &GraphCtx, h: &PatternGraph, count: u128) -> Result<QuasirandomReport> {
    let q = gc.q() as f64;
    let exp = (gc.t() as usize * h.v()) as f64 - h.e() as f64;
    let expected = libm::pow(q, exp);
    let ratio = count as f64 / expected;
    let degeneracy = degeneracy_order(h).degeneracy;
    let t = gc.t();
    let band = if (degeneracy <= 2 && t >= 3) || (degeneracy == 3 && t >= 5) {
        Band::Deviation { constant: libm::fabs(ratio - 1.0) * libm::sqrt(q) }
    } else if degeneracy == 3 && t == 4 {
        let c_h = min_three_count(h)?.unwrap_or(h.v());
        Band::Theta { c_h, low: 1.0, high: libm::pow(2.0, c_h as f64) }
    } else {
        Band::Unclaimed
    };
    Ok(QuasirandomReport { count, expected, ratio, degeneracy, band })
}

/// Largest and smallest common degree over generic d-sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeExtrema {
    pub d: usize,
    pub max: u64,
    pub min: u64,
    /// Exhaustive sweep rather than a sample.
    pub exact: bool,
    pub examined: u64,
    pub argmax: Vec<Vertex>,
    pub argmin: Vec<Vertex>,
}

/// Sets are swept exhaustively up to this many.
pub const EXTREMA_EXHAUSTIVE_LIMIT: u128 = 10_000_000;

/// Number of generic d-sets: C(q^{t−1}, d)·(q − 1)^d.
pub fn generic_set_count(gc: &GraphCtx, d: usize) -> u128 {
    binomial(u128::from(gc.big_order()), d as u128) * u128::from(gc.q() - 1).pow(d as u32)
}

fn uniform<R: RngCore + ?Sized>(rng: &mut R, n: u64) -> u64 {
    let zone = u64::MAX - u64::MAX % n;
    loop {
        let x = rng.next_u64();
        if x < zone {
            return x % n;
        }
    }
}

pub fn degree_extrema<R: RngCore + ?Sized>(gc: &GraphCtx, d: usize, sample: u64, rng: &mut R) -> Result<DegreeExtrema> {
    if !(1..=4).contains(&d) {
        return Err(Error::InvalidParameters("d must lie in 1..=4".into()));
    }
    let adj = gc.adjacency(false, HOST_LIMIT)?;
    let w = (gc.q() - 1) as usize;
    let qt = gc.big_order() as usize;
    let mut best = DegreeExtrema { d, max: 0, min: u64::MAX, exact: false, examined: 0, argmax: vec![], argmin: vec![] };
    let consider = |idx: &[usize], best: &mut DegreeExtrema| {
        let mut acc: Vec<u64> = adj.row(idx[0]).to_vec();
        for &i in &idx[1..] {
            for (a, r) in acc.iter_mut().zip(adj.row(i)) {
                *a &= r;
            }
        }
        let c = count(&acc) as u64;
        best.examined += 1;
        if c > best.max || best.argmax.is_empty() {
            best.max = c;
            best.argmax = idx.iter().map(|&i| gc.vertex_at(i)).collect();
        }
        if c < best.min {
            best.min = c;
            best.argmin = idx.iter().map(|&i| gc.vertex_at(i)).collect();
        }
    };
    if generic_set_count(gc, d) <= EXTREMA_EXHAUSTIVE_LIMIT {
        best.exact = true;
        // Distinct first coordinates in increasing order, any second coordinates.
        let mut firsts = vec![0usize; d];
        fn walk(
            pos: usize,
            start: usize,
            qt: usize,
            w: usize,
            firsts: &mut Vec<usize>,
            f: &mut dyn FnMut(&[usize]),
        ) {
            if pos == firsts.len() {
                let d = firsts.len();
                let total = w.pow(d as u32);
                let mut idx = vec![0usize; d];
                for code in 0..total {
                    let mut c = code;
                    for j in 0..d {
                        idx[j] = firsts[j] * w + c % w;
                        c /= w;
                    }
                    f(&idx);
                }
                return;
            }
            for a in start..qt {
                firsts[pos] = a;
                walk(pos + 1, a + 1, qt, w, firsts, f);
            }
        }
        walk(0, 0, qt, w, &mut firsts, &mut |idx| consider(idx, &mut best));
    } else {
        for _ in 0..sample {
            let mut firsts: Vec<usize> = Vec::with_capacity(d);
            while firsts.len() < d {
                let a = uniform(rng, qt as u64) as usize;
                if !firsts.contains(&a) {
                    firsts.push(a);
                }
            }
            let idx: Vec<usize> = firsts.iter().map(|&a| a * w + uniform(rng, w as u64) as usize).collect();
            consider(&idx, &mut best);
        }
    }
    if best.examined == 0 {
        return Err(Error::InvalidParameters("no generic sets examined".into()));
    }
    Ok(best)
}
