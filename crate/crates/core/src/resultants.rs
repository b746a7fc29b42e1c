//! Elimination bound for common neighbourhoods of generic quadruples.
//!
//! From the reduced system N(Y + B_i) = b_i (i = 1, 2, 3) we build
//! f_i = Π_j (Y_j − C_{i,j}) − b_i with C_{i,j} = −B_i^{q^{j−1}}, eliminate the
//! last two variables with Sylvester resultants, divide out h_3 and substitute
//! Y_j = Y^{q^{j−1}} to obtain a univariate polynomial whose roots contain
//! every solution.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::ff::{sylvester_resultant, Fe, MPoly, Poly};
use crate::neighborhoods::{common_neighborhood_bruteforce, geometric, reduce, ReducedSystem};
use crate::normgraph::{GraphCtx, Vertex};

/// Constants of the three multilinear equations.
#[derive(Clone, Debug)]
pub struct QuadSystem {
    pub reduced: ReducedSystem,
    /// c[i][j] = −B_{i+1}^{q^j}.
    pub c: Vec<Vec<Fe>>,
}

impl QuadSystem {
    pub fn new(gc: &GraphCtx, quad: &[Vertex]) -> Result<Self> {
        if quad.len() != 4 {
            return Err(Error::InvalidParameters("expected four vertices".into()));
        }
        let reduced = reduce(gc, quad)?;
        let f = gc.big();
        let c = reduced
            .shifts
            .iter()
            .map(|&b| {
                let mut row = Vec::new();
                let mut cur = b;
                for _ in 0..gc.t() - 1 {
                    row.push(f.neg(cur));
                    cur = f.pow(cur, gc.q());
                }
                row
            })
            .collect();
        Ok(QuadSystem { reduced, c })
    }

    /// f_i in variables Y_1..Y_{t−1} (indices 0..t−2).
    pub fn f(&self, gc: &GraphCtx, i: usize) -> Result<MPoly> {
        let f = gc.big();
        let nv = self.c[i].len();
        let mut prod = MPoly::constant(f, nv, f.one());
        for (j, &cij) in self.c[i].iter().enumerate() {
            prod = prod.mul(&MPoly::linear(f, nv, j, cij))?;
        }
        Ok(prod.sub(&MPoly::constant(f, nv, self.reduced.targets[i])))
    }

    /// h_i = Π_{j ≤ t−3} (Y_j − C_{i,j}).
    pub fn h(&self, gc: &GraphCtx, i: usize) -> Result<MPoly> {
        let f = gc.big();
        let nv = self.c[i].len();
        let mut prod = MPoly::constant(f, nv, f.one());
        for j in 0..nv.saturating_sub(2) {
            prod = prod.mul(&MPoly::linear(f, nv, j, self.c[i][j]))?;
        }
        Ok(prod)
    }
}

/// Intermediate polynomials of the elimination.
#[derive(Clone, Debug)]
pub struct Elimination {
    pub g1: MPoly,
    pub g2: MPoly,
    pub g: MPoly,
    pub g_star: MPoly,
    pub g_tilde: Poly,
    /// Largest exponent of any spectator variable in g.
    pub g_max_degree: usize,
}

/// Runs the elimination for t ∈ {4, 5}.
pub fn build_gtilde(gc: &GraphCtx, quad: &[Vertex]) -> Result<Elimination> {
    let t = gc.t();
    if !(4..=5).contains(&t) {
        return Err(Error::InvalidParameters(format!("elimination supports t = 4, 5, not {t}")));
    }
    let sys = QuadSystem::new(gc, quad)?;
    let nv = (t - 1) as usize;
    let (last, second) = (nv - 1, nv - 2);
    let f3 = sys.f(gc, 2)?;
    let g1 = sylvester_resultant(&sys.f(gc, 0)?, &f3, last)?;
    let g2 = sylvester_resultant(&sys.f(gc, 1)?, &f3, last)?;
    let g = sylvester_resultant(&g1, &g2, second)?;
    let spectators = nv - 2;
    let g_max_degree = (0..spectators).filter_map(|a| g.degree_in(a)).max().unwrap_or(0);
    if g_max_degree >= 8 {
        return Err(Error::InvariantViolation("degree-8 coefficient of g is nonzero".into()));
    }
    let mut g_star = g.clone();
    for j in 0..spectators {
        g_star = g_star.div_linear(j, sys.c[2][j])?;
    }
    let weights: Vec<u64> = (0..nv as u32).map(|j| gc.q().pow(j)).collect();
    let g_tilde = g_star.substitute_powers(&weights);
    let bound = 6 * geometric(gc.q(), t - 3) as usize;
    if g_tilde.degree().is_some_and(|d| d > bound) {
        return Err(Error::InvariantViolation(format!("deg g~ exceeds {bound}")));
    }
    Ok(Elimination { g1, g2, g, g_star, g_tilde, g_max_degree })
}

/// How the exact quadruple degree was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuadMethod {
    /// Roots of the eliminated polynomial filtered by the norm equations.
    Elimination,
    /// The eliminated polynomial vanished identically; all of F_{q^{t−1}} was scanned.
    ZeroEliminant,
    /// t ≥ 6: brute-force oracle.
    BruteForce,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadrupleDegree {
    pub bound: u64,
    pub exact: u64,
    pub witnesses: Vec<Vertex>,
    pub method: QuadMethod,
}

/// Common degree of a generic quadruple with the bound 6(1 + q + … + q^{t−4}).
pub fn quadruple_degree(gc: &GraphCtx, quad: &[Vertex]) -> Result<QuadrupleDegree> {
    let t = gc.t();
    if t < 4 {
        return Err(Error::InvalidParameters("quadruple bound needs t ≥ 4".into()));
    }
    let bound = 6 * geometric(gc.q(), t - 3);
    let sys = QuadSystem::new(gc, quad)?;
    if t >= 6 {
        let witnesses = common_neighborhood_bruteforce(gc, quad);
        return Ok(QuadrupleDegree { bound, exact: witnesses.len() as u64, witnesses, method: QuadMethod::BruteForce });
    }
    let elim = build_gtilde(gc, quad)?;
    let (candidates, method) = if elim.g_tilde.is_zero() {
        (gc.big().elements().collect(), QuadMethod::ZeroEliminant)
    } else {
        (elim.g_tilde.roots()?, QuadMethod::Elimination)
    };
    let mut witnesses: Vec<Vertex> = candidates
        .into_iter()
        .filter(|&y| !y.is_zero() && sys.reduced.satisfied_by(gc, y))
        .map(|y| sys.reduced.lift(gc, y))
        .collect();
    witnesses.sort_by_key(|v| gc.vertex_index(v));
    Ok(QuadrupleDegree { bound, exact: witnesses.len() as u64, witnesses, method })
}
