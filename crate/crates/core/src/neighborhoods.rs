//! Common neighbourhoods of generic vertex sets: the reduction to norm
//! equations, closed forms for pairs and triples, and brute-force oracles.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::ff::{Embedding, Fe, FieldCtx, Poly};
use crate::normgraph::{classify_set, GraphCtx, Vertex};

/// Exact common neighbourhood (loop-inclusive) by intersecting neighbour
/// streams; sorted by vertex index.
pub fn common_neighborhood_bruteforce(gc: &GraphCtx, vs: &[Vertex]) -> Vec<Vertex> {
    let f = gc.big();
    let Some((head, rest)) = vs.split_first() else {
        return gc.vertices().collect();
    };
    let inv = f.inv(head.second);
    let mut out: Vec<Vertex> = f
        .elements()
        .filter_map(|x| {
            let s = f.add(head.first, x);
            if s.is_zero() {
                return None;
            }
            let w = f.mul(inv, gc.norm(s));
            rest.iter()
                .all(|v| gc.norm(f.add(v.first, x)) == f.mul(v.second, w))
                .then_some(Vertex { first: x, second: w })
        })
        .collect();
    out.sort_by_key(|v| gc.vertex_index(v));
    out
}

/// The norm system N(Y + B_i) = b_i, i < ℓ, attached to a generic ℓ-set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedSystem {
    pub shifts: Vec<Fe>,
    pub targets: Vec<Fe>,
    /// The distinguished last vertex (A_ℓ, a_ℓ).
    pub anchor: Vertex,
}

pub fn reduce(gc: &GraphCtx, vs: &[Vertex]) -> Result<ReducedSystem> {
    let set = classify_set(vs);
    if !set.generic || vs.len() < 2 {
        return Err(Error::NotGeneric);
    }
    let f = gc.big();
    let anchor = *vs.last().unwrap();
    let inv_a = f.inv(anchor.second);
    let mut shifts = Vec::with_capacity(vs.len() - 1);
    let mut targets = Vec::with_capacity(vs.len() - 1);
    for v in &vs[..vs.len() - 1] {
        let b = f.inv(f.sub(v.first, anchor.first));
        shifts.push(b);
        targets.push(f.mul(f.mul(v.second, inv_a), gc.norm(b)));
    }
    Ok(ReducedSystem { shifts, targets, anchor })
}

impl ReducedSystem {
    /// Whether Y solves every equation.
    pub fn satisfied_by(&self, gc: &GraphCtx, y: Fe) -> bool {
        let f = gc.big();
        self.shifts.iter().zip(&self.targets).all(|(&b, &t)| gc.norm(f.add(y, b)) == t)
    }

    /// H(U), by enumeration of the big field.
    pub fn solutions(&self, gc: &GraphCtx) -> Vec<Fe> {
        gc.big().elements().filter(|&y| self.satisfied_by(gc, y)).collect()
    }

    /// The common neighbour (1/Y − A_ℓ, 1/(a_ℓ N(Y))) attached to Y ≠ 0.
    pub fn lift(&self, gc: &GraphCtx, y: Fe) -> Vertex {
        let f = gc.big();
        Vertex {
            first: f.sub(f.inv(y), self.anchor.first),
            second: f.inv(f.mul(self.anchor.second, gc.norm(y))),
        }
    }
}

/// Common degree of a generic pair: (q^{t−1}−1)/(q−1) − ξ.
pub fn pair_degree(gc: &GraphCtx, vs: &[Vertex]) -> Result<u64> {
    let set = classify_set(vs);
    if vs.len() != 2 || !set.generic {
        return Err(Error::NotGeneric);
    }
    Ok(gc.norm_exponent() - set.xi())
}

/// The invariants (c1, c2) of a generic triple and whether a1 = a2 = a3.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TripleInvariants {
    pub c1: Fe,
    pub c2: Fe,
    pub all_equal: bool,
}

pub fn triple_invariants(gc: &GraphCtx, vs: &[Vertex]) -> Result<TripleInvariants> {
    let set = classify_set(vs);
    if vs.len() != 3 || !set.generic {
        return Err(Error::NotGeneric);
    }
    let f = gc.big();
    let [(a1, x1), (a2, x2), (a3, x3)] = [0, 1, 2].map(|i| (vs[i].first, vs[i].second));
    let d = f.inv(f.sub(a1, a2));
    let inv3 = f.inv(x3);
    let c1 = f.mul(f.mul(x1, inv3), gc.norm(f.mul(f.sub(a2, a3), d)));
    let c2 = f.mul(f.mul(x2, inv3), gc.norm(f.mul(f.sub(a1, a3), d)));
    Ok(TripleInvariants { c1, c2, all_equal: set.aligned })
}

fn check_base(gc: &GraphCtx, c: Fe) -> Result<()> {
    gc.big().check(c)?;
    if c.is_zero() || !gc.base().contains(c) {
        return Err(Error::InvalidParameters("expected a nonzero element of F_q".into()));
    }
    Ok(())
}

/// S_t(c1, c2) = {X : N(X) = c1, N(X+1) = c2} by enumeration of F_{q^{t−1}};
/// `t` must match the graph context.
pub fn st_enumerate(gc: &GraphCtx, t: u32, c1: Fe, c2: Fe) -> Result<Vec<Fe>> {
    if t != gc.t() || t < 3 {
        return Err(Error::InvalidParameters("t must equal the context's t (≥ 3)".into()));
    }
    check_base(gc, c1)?;
    check_base(gc, c2)?;
    let f = gc.big();
    let one = f.one();
    Ok(f.elements().filter(|&x| gc.norm(x) == c1 && gc.norm(f.add(x, one)) == c2).collect())
}

/// 1 + q + … + q^{j−1}.
pub fn geometric(q: u64, j: u32) -> u64 {
    (0..j).map(|i| q.pow(i)).sum()
}

/// f_{t,c1,c2}(Y) = n(Y+1)n(Y) + c1 n(Y+1) − c2 n(Y) with n(Y) = Y^{1+q+…+q^{t−3}}.
pub fn f_poly(gc: &GraphCtx, t: u32, c1: Fe, c2: Fe) -> Result<Poly> {
    if t < 3 {
        return Err(Error::InvalidParameters("t must be at least 3".into()));
    }
    check_base(gc, c1)?;
    check_base(gc, c2)?;
    let f = gc.big();
    let q = gc.q() as usize;
    let e = geometric(gc.q(), t - 2) as usize;
    let n_y = Poly::monomial(f, f.one(), e);
    // (Y+1)^{q^j} = Y^{q^j} + 1 in characteristic p.
    let mut n_y1 = Poly::constant(f, f.one());
    let mut qj = 1usize;
    for _ in 0..t - 2 {
        n_y1 = n_y1.mul(&Poly::monomial(f, f.one(), qj).add(&Poly::constant(f, f.one())));
        qj *= q;
    }
    Ok(n_y1.mul(&n_y).add(&n_y1.scale(c1)).sub(&n_y.scale(c2)))
}

/// |S_t(c1, c2)| from the t = 3 closed form and the recursion in t.
pub fn st_size(gc: &GraphCtx, t: u32, c1: Fe, c2: Fe) -> Result<i64> {
    if t < 3 {
        return Err(Error::InvalidParameters("t must be at least 3".into()));
    }
    if !gc.is_odd() {
        return Err(Error::EvenCharacteristic);
    }
    check_base(gc, c1)?;
    check_base(gc, c2)?;
    let mut memo = BTreeMap::new();
    st_size_memo(gc, t, c1, c2, &mut memo)
}

fn st_size_memo(
    gc: &GraphCtx,
    t: u32,
    c1: Fe,
    c2: Fe,
    memo: &mut BTreeMap<(u32, u64, u64), i64>,
) -> Result<i64> {
    let key = (t, c1.value(), c2.value());
    if let Some(&v) = memo.get(&key) {
        return Ok(v);
    }
    let f = gc.big();
    let value = if t == 3 {
        let s = f.sub(f.add(f.one(), c1), c2);
        let disc = f.sub(f.mul(s, s), f.mul(f.from_int(4), c1));
        1 - gc.base().quad_char(disc)? as i64
    } else {
        let mut total = 2 * geometric(gc.q(), t - 2) as i64;
        let minus_c1 = f.neg(c1);
        for &b in gc.base().nonzero() {
            if b == minus_c1 {
                continue;
            }
            let c2n = f.div(f.mul(b, c2), f.add(b, c1));
            total -= st_size_memo(gc, t - 1, b, c2n, memo)?;
        }
        total
    };
    memo.insert(key, value);
    Ok(value)
}

/// How a triple degree was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegreeMethod {
    ClosedForm,
    /// Even q: enumeration only, no proven formula.
    BruteForce,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TripleDegree {
    pub degree: u64,
    pub invariants: TripleInvariants,
    pub method: DegreeMethod,
}

/// Common degree of a generic triple: |S_t(c1,c2)| − [a1 = a2 = a3].
pub fn triple_degree(gc: &GraphCtx, vs: &[Vertex]) -> Result<TripleDegree> {
    let invariants = triple_invariants(gc, vs)?;
    if !gc.is_odd() {
        let degree = common_neighborhood_bruteforce(gc, vs).len() as u64;
        return Ok(TripleDegree { degree, invariants, method: DegreeMethod::BruteForce });
    }
    let s = st_size(gc, gc.t(), invariants.c1, invariants.c2)?;
    let degree = (s - i64::from(invariants.all_equal)) as u64;
    Ok(TripleDegree { degree, invariants, method: DegreeMethod::ClosedForm })
}

/// The field F_{q^{t−2}} together with a map from the F_q inside the big
/// field of a graph context to the F_q inside it.
#[derive(Clone, Debug)]
pub struct AuxField {
    aux: FieldCtx,
    to_big: Embedding,
    to_aux: Embedding,
}

impl AuxField {
    pub fn new(gc: &GraphCtx) -> Result<Self> {
        if gc.t() < 3 {
            return Err(Error::InvalidParameters("t must be at least 3".into()));
        }
        let fq = FieldCtx::new(gc.p(), gc.k(), None)?;
        let aux = FieldCtx::new(gc.p(), gc.k() * (gc.t() - 2), None)?;
        Ok(AuxField { to_big: Embedding::new(&fq, gc.big())?, to_aux: Embedding::new(&fq, &aux)?, aux })
    }

    pub fn field(&self) -> &FieldCtx {
        &self.aux
    }

    /// Transports a polynomial with coefficients in F_q ⊂ big to the aux field.
    pub fn transport(&self, p: &Poly) -> Result<Poly> {
        let coeffs = p
            .coeffs()
            .iter()
            .map(|&c| self.to_big.preimage(c).map(|x| self.to_aux.apply(x)).ok_or(Error::NotInSubfield))
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::new(&self.aux, coeffs))
    }
}

/// Outcome of the identity |S_t| + |roots of f in F_{q^{t−2}}| = 2(1+…+q^{t−3}).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RootIdentity {
    pub s_size: u64,
    pub aux_roots: u64,
    pub expected: u64,
    pub holds: bool,
}

pub fn lemma3iii_check(gc: &GraphCtx, aux: &AuxField, c1: Fe, c2: Fe) -> Result<RootIdentity> {
    let t = gc.t();
    let s_size = st_enumerate(gc, t, c1, c2)?.len() as u64;
    let f = aux.transport(&f_poly(gc, t, c1, c2)?)?;
    let aux_roots = f.roots()?.len() as u64;
    let expected = 2 * geometric(gc.q(), t - 2);
    Ok(RootIdentity { s_size, aux_roots, expected, holds: s_size + aux_roots == expected })
}

/// Multiple roots of f_{t,c1,c2} are exactly S_t(c1,c2) ∩ F_q: checks that
/// gcd(f, f′) = Π (Y − x) over that intersection.
pub fn lemma3ii_check(gc: &GraphCtx, c1: Fe, c2: Fe) -> Result<bool> {
    let f = gc.big();
    let poly = f_poly(gc, gc.t(), c1, c2)?;
    let g = poly.gcd(&poly.derivative());
    let rational: Vec<Fe> =
        st_enumerate(gc, gc.t(), c1, c2)?.into_iter().filter(|&x| gc.base().contains(x)).collect();
    let mut prod = Poly::constant(f, f.one());
    for x in rational {
        prod = prod.mul(&Poly::linear_root(f, x));
    }
    Ok(g == prod)
}

/// All (c1, c2) ∈ (F_q*)² in encoding order.
pub fn base_pairs(gc: &GraphCtx) -> Vec<(Fe, Fe)> {
    let nz = gc.base().nonzero();
    let mut out = vec![];
    for &a in nz {
        for &b in nz {
            out.push((a, b));
        }
    }
    out
}
