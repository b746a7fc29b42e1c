//! The projective norm graph NG(q, t) as an implicit graph.

use alloc::vec::Vec;

use crate::bitset::BitMatrix;
use crate::error::{Error, Result};
use crate::ff::{Fe, FieldCtx, Subfield};

/// Parameters (q, t) with the big field F_{q^{t−1}} and its subfield F_q.
#[derive(Clone, Debug)]
pub struct GraphCtx {
    p: u64,
    k: u32,
    q: u64,
    t: u32,
    big: FieldCtx,
    base: Subfield,
    norm_exponent: u64,
    norm_table: Option<alloc::sync::Arc<Vec<u32>>>,
}

/// Big fields up to this order get a precomputed norm table.
const NORM_TABLE_LIMIT: u64 = 1 << 18;

/// A vertex (A, a): `first` lies in F_{q^{t−1}}, `second` in the embedded F_q*.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex {
    pub first: Fe,
    pub second: Fe,
}

/// Vertex list with its generic / aligned flags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexSet {
    pub vertices: Vec<Vertex>,
    /// First coordinates pairwise distinct.
    pub generic: bool,
    /// All second coordinates equal.
    pub aligned: bool,
}

impl VertexSet {
    /// Indicator of being aligned.
    pub fn xi(&self) -> u64 {
        u64::from(self.aligned)
    }
    pub fn len(&self) -> usize {
        self.vertices.len()
    }
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

pub fn classify_set(vs: &[Vertex]) -> VertexSet {
    let mut firsts: Vec<Fe> = vs.iter().map(|v| v.first).collect();
    firsts.sort();
    firsts.dedup();
    VertexSet {
        vertices: vs.to_vec(),
        generic: firsts.len() == vs.len(),
        aligned: vs.windows(2).all(|w| w[0].second == w[1].second),
    }
}

/// Vertex, edge and loop counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Census {
    pub n: u64,
    pub edges: u64,
    pub loops: u64,
    /// Result of the exhaustive edge count, when it was run.
    pub verified: Option<bool>,
}

/// Instances up to this many vertices get an exhaustive census check.
pub const CENSUS_VERIFY_LIMIT: u64 = 10_000;

impl GraphCtx {
    pub fn new(p: u64, k: u32, t: u32) -> Result<Self> {
        if t < 2 {
            return Err(Error::InvalidParameters("t must be at least 2".into()));
        }
        let q = crate::ff::zp::checked_pow(p, k).ok_or(Error::FieldTooLarge)?;
        let big = FieldCtx::new(p, k * (t - 1), None)?;
        let base = Subfield::new(&big, k as usize)?;
        let qt = big.order();
        let norm_exponent = (qt - 1) / (q - 1);
        let norm_table = (qt <= NORM_TABLE_LIMIT).then(|| {
            alloc::sync::Arc::new(big.elements().map(|x| big.pow(x, norm_exponent).value() as u32).collect())
        });
        Ok(GraphCtx { p, k, q, t, big, base, norm_exponent, norm_table })
    }

    /// From q given as a prime power.
    pub fn from_q(q: u64, t: u32) -> Result<Self> {
        let (p, k) = crate::ff::prime_power(q).ok_or(Error::CompositeCharacteristic(q))?;
        Self::new(p, k, t)
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn k(&self) -> u32 {
        self.k
    }
    pub fn q(&self) -> u64 {
        self.q
    }
    pub fn t(&self) -> u32 {
        self.t
    }
    pub fn is_odd(&self) -> bool {
        self.p != 2
    }
    /// F_{q^{t−1}}.
    pub fn big(&self) -> &FieldCtx {
        &self.big
    }
    /// F_q inside the big field.
    pub fn base(&self) -> &Subfield {
        &self.base
    }
    /// q^{t−1}.
    pub fn big_order(&self) -> u64 {
        self.big.order()
    }
    pub fn norm_exponent(&self) -> u64 {
        self.norm_exponent
    }
    /// Number of vertices q^{t−1}(q − 1).
    pub fn n_vertices(&self) -> u64 {
        self.big.order() * (self.q - 1)
    }

    /// N(X) = X^{1+q+…+q^{t−2}}.
    #[inline]
    pub fn norm(&self, x: Fe) -> Fe {
        if let Some(t) = &self.norm_table {
            if self.big.owns(x) {
                return self.big.elem(t[x.value() as usize] as u64).expect("table entry");
            }
        }
        self.big.pow(x, self.norm_exponent)
    }

    pub fn subfield_test(&self, x: Fe) -> bool {
        self.base.contains(x)
    }

    /// Validated vertex.
    pub fn vertex(&self, first: Fe, second: Fe) -> Result<Vertex> {
        self.big.check(first)?;
        self.big.check(second)?;
        if second.is_zero() || !self.base.contains(second) {
            return Err(Error::InvalidVertex);
        }
        Ok(Vertex { first, second })
    }

    /// Vertex from canonical encodings.
    pub fn vertex_from_values(&self, first: u64, second: u64) -> Result<Vertex> {
        self.vertex(self.big.elem(first)?, self.big.elem(second)?)
    }

    /// Dense index in [0, n).
    pub fn vertex_index(&self, v: &Vertex) -> usize {
        let j = self.base.index_of(v.second).expect("second coordinate in F_q") - 1;
        v.first.value() as usize * (self.q as usize - 1) + j
    }

    pub fn vertex_at(&self, idx: usize) -> Vertex {
        let w = self.q as usize - 1;
        Vertex {
            first: self.big.elem((idx / w) as u64).expect("index in range"),
            second: self.base.nonzero()[idx % w],
        }
    }

    /// All vertices in index order.
    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.n_vertices() as usize).map(move |i| self.vertex_at(i))
    }

    pub fn is_adjacent(&self, u: &Vertex, v: &Vertex) -> bool {
        let f = &self.big;
        self.norm(f.add(u.first, v.first)) == f.mul(u.second, v.second)
    }

    pub fn is_loop(&self, v: &Vertex) -> bool {
        self.is_odd() && self.is_adjacent(v, v)
    }

    /// Neighbours (X, a⁻¹N(A+X)) for X ≠ −A; `simple` drops the vertex itself.
    pub fn neighbors<'a>(&'a self, v: &Vertex, simple: bool) -> impl Iterator<Item = Vertex> + 'a {
        let f = &self.big;
        let v = *v;
        let skip = f.neg(v.first);
        let inv = f.inv(v.second);
        f.elements().filter(move |&x| x != skip).filter_map(move |x| {
            let w = Vertex { first: x, second: f.mul(inv, self.norm(f.add(v.first, x))) };
            (!(simple && w == v)).then_some(w)
        })
    }

    pub fn census(&self) -> Census {
        let n = self.n_vertices();
        let qt = self.big.order();
        let loops = self.vertices().filter(|v| self.is_loop(v)).count() as u64;
        let edges = if self.is_odd() { (qt - 1) * (n - 1) / 2 } else { (qt - 1) * n / 2 };
        let verified = (n <= CENSUS_VERIFY_LIMIT).then(|| {
            let mut twice = 0u64;
            for v in self.vertices() {
                twice += self.neighbors(&v, true).count() as u64;
            }
            twice == 2 * edges
        });
        Census { n, edges, loops, verified }
    }

    /// Dense adjacency matrix (loop-inclusive when `simple` is false).
    pub fn adjacency(&self, simple: bool, limit: u64) -> Result<BitMatrix> {
        let n = self.n_vertices();
        if n > limit {
            return Err(Error::TooLarge { size: n, limit });
        }
        let mut m = BitMatrix::new(n as usize);
        for (i, v) in self.vertices().enumerate() {
            for w in self.neighbors(&v, simple) {
                m.set(i, self.vertex_index(&w));
            }
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_census_values() {
        let c = GraphCtx::from_q(3, 2).unwrap().census();
        assert_eq!((c.n, c.edges, c.loops, c.verified), (6, 5, 2, Some(true)));
        let c = GraphCtx::from_q(4, 2).unwrap().census();
        assert_eq!((c.n, c.edges, c.loops, c.verified), (12, 18, 0, Some(true)));
        let c = GraphCtx::from_q(2, 3).unwrap().census();
        assert_eq!((c.n, c.edges, c.loops), (4, 6, 0));
    }

    #[test]
    fn adjacency_examples_q3_t2() {
        let g = GraphCtx::from_q(3, 2).unwrap();
        let v = |a, b| g.vertex_from_values(a, b).unwrap();
        assert!(g.is_adjacent(&v(1, 1), &v(0, 1)));
        assert!(g.is_loop(&v(2, 1)));
        for x in 1..3 {
            assert!(!g.is_adjacent(&v(1, 1), &v(2, x)));
        }
    }

    #[test]
    fn norm_of_x_in_f9() {
        let g = GraphCtx::from_q(3, 3).unwrap();
        assert_eq!(g.norm(g.big().x()), g.big().one());
        let loops = g.vertices().filter(|v| g.is_loop(v)).count();
        assert_eq!(loops, 8);
    }

    #[test]
    fn neighbor_stream_lengths() {
        let g = GraphCtx::from_q(3, 3).unwrap();
        for v in g.vertices() {
            let all = g.neighbors(&v, false).count();
            let simple = g.neighbors(&v, true).count();
            assert_eq!(all, 8);
            assert_eq!(simple, if g.is_loop(&v) { 7 } else { 8 });
            assert!(g.neighbors(&v, false).all(|w| g.is_adjacent(&v, &w)));
        }
    }

    #[test]
    fn index_roundtrip() {
        let g = GraphCtx::from_q(4, 3).unwrap();
        for i in 0..g.n_vertices() as usize {
            assert_eq!(g.vertex_index(&g.vertex_at(i)), i);
        }
        assert_eq!(g.vertex_from_values(0, 0), Err(Error::InvalidVertex));
    }

    #[test]
    fn classify_examples() {
        let g = GraphCtx::from_q(3, 3).unwrap();
        let v = |a, b| g.vertex_from_values(a, b).unwrap();
        let s = classify_set(&[v(0, 1), v(1, 1)]);
        assert!(s.generic && s.xi() == 1);
        assert!(!classify_set(&[v(0, 1), v(0, 2)]).generic);
    }
}
