//! K_{4,6} subgraphs of NG(q, 4) for p ∉ {2, 3}.
//!
//! The set S_4(1, −1) factors through h(Y, Z) = Y^{q+1} + Y^q Z + Z^{q+1}. A
//! Möbius map C(z) = (z − a⁻¹)/(z − a), with a a primitive cube root of unity,
//! carries its non-rational part onto G ∖ G³, where G is the group of
//! 3(q − e_q)-th roots of unity. All of this is computed inside F_{q⁶}.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::ff::{Embedding, Fe, FieldCtx};
use crate::neighborhoods::st_enumerate;
use crate::normgraph::{classify_set, GraphCtx, Vertex, VertexSet};

/// Fixed data for the construction at a given q.
#[derive(Clone, Debug)]
pub struct CubicEnv {
    gc: GraphCtx,
    over: FieldCtx,
    cubic: Embedding,
    e_q: i8,
    a: Fe,
    a_inv: Fe,
    g: Fe,
    g_order: u64,
}

/// How the parameter A of the quadruple is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BuildMode {
    /// First non-rational special A with A² + A + 1 a square.
    Fast,
    /// A = C⁻¹(g²) for the fixed generator g of G.
    Certified,
}

pub fn make_env(p: u64, k: u32) -> Result<CubicEnv> {
    if p == 2 || p == 3 {
        return Err(Error::BadCharacteristic(p));
    }
    let gc = GraphCtx::new(p, k, 4)?;
    let over = FieldCtx::new(p, 6 * k, None)?;
    let cubic = Embedding::new(gc.big(), &over)?;
    let q = gc.q();
    let e_q: i8 = if q % 3 == 1 { 1 } else { -1 };
    let n = over.order() - 1;
    let gamma = over.generator();
    let w = over.pow(gamma, n / 3);
    let a = w.min(over.mul(w, w));
    let a_inv = over.inv(a);
    let g_order = 3 * (q as i64 - i64::from(e_q)) as u64;
    let g = over.pow(gamma, n / g_order);
    let env = CubicEnv { gc, over, cubic, e_q, a, a_inv, g, g_order };
    let o = &env.over;
    if !o.add(o.add(o.mul(a, a), a), o.one()).is_zero() || o.pow(a, q * q) != a {
        return Err(Error::InvariantViolation("cube root of unity misplaced".into()));
    }
    Ok(env)
}

impl CubicEnv {
    /// NG(q, 4); its big field is F_{q³}.
    pub fn gc(&self) -> &GraphCtx {
        &self.gc
    }
    pub fn q(&self) -> u64 {
        self.gc.q()
    }
    /// F_{q⁶}.
    pub fn over(&self) -> &FieldCtx {
        &self.over
    }
    pub fn cubic(&self) -> &Embedding {
        &self.cubic
    }
    pub fn e_q(&self) -> i8 {
        self.e_q
    }
    /// The cube root of unity with the smaller encoding.
    pub fn a(&self) -> Fe {
        self.a
    }
    /// Generator of G.
    pub fn g(&self) -> Fe {
        self.g
    }
    /// |G| = 3(q − e_q).
    pub fn g_order(&self) -> u64 {
        self.g_order
    }

    /// F_{q³} → F_{q⁶}.
    pub fn embed(&self, x: Fe) -> Fe {
        self.cubic.apply(x)
    }

    pub fn in_quadratic(&self, x: Fe) -> bool {
        let q = self.q();
        self.over.pow(x, q * q) == x
    }

    pub fn in_g(&self, x: Fe) -> bool {
        !x.is_zero() && self.over.pow(x, self.g_order) == self.over.one()
    }

    /// Membership in G³ = {x : x^{q − e_q} = 1}.
    pub fn in_g3(&self, x: Fe) -> bool {
        !x.is_zero() && self.over.pow(x, self.g_order / 3) == self.over.one()
    }

    /// N(X) = 1 and N(X + 1) = −1, for X in F_{q³}.
    pub fn is_special(&self, x: Fe) -> bool {
        let f = self.gc.big();
        self.gc.norm(x) == f.one() && self.gc.norm(f.add(x, f.one())) == f.from_int(-1)
    }

    fn is_rational(&self, x: Fe) -> bool {
        self.gc.base().contains(x)
    }

    /// h(Y, Z) over F_{q³}.
    pub fn h(&self, y: Fe, z: Fe) -> Fe {
        let f = self.gc.big();
        let q = self.q();
        let yq = f.pow(y, q);
        f.add(f.add(f.mul(yq, y), f.mul(yq, z)), f.mul(f.pow(z, q), z))
    }
}

/// Roots of h(X, 1)·h(1, X) in F_{q³}, in encoding order.
pub fn s4_special(env: &CubicEnv) -> Vec<Fe> {
    let f = env.gc.big();
    let one = f.one();
    f.elements().filter(|&x| f.mul(env.h(x, one), env.h(one, x)).is_zero()).collect()
}

/// The members of S_4(1, −1) outside F_q.
pub fn s4_nonrational(env: &CubicEnv) -> Vec<Fe> {
    s4_special(env).into_iter().filter(|&x| !env.is_rational(x)).collect()
}

/// Structure of the special set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialSetReport {
    pub size: usize,
    /// 2q + 1 − η(−3).
    pub expected: usize,
    pub rational: usize,
    pub matches_enumeration: bool,
    pub norms_ok: bool,
}

impl SpecialSetReport {
    pub fn holds(&self, e_q: i8) -> bool {
        self.size == self.expected
            && self.rational as i64 == 1 + i64::from(e_q)
            && self.matches_enumeration
            && self.norms_ok
    }
}

/// Compares the factored description of S_4(1, −1) with the norm-pair enumeration.
pub fn special_set_report(env: &CubicEnv) -> Result<SpecialSetReport> {
    let gc = &env.gc;
    let f = gc.big();
    let special = s4_special(env);
    let oracle = st_enumerate(gc, 4, f.one(), f.from_int(-1))?;
    let eta = gc.base().quad_char(f.from_int(-3))?;
    Ok(SpecialSetReport {
        size: special.len(),
        expected: (2 * env.q() as i64 + 1 - i64::from(eta)) as usize,
        rational: special.iter().filter(|&&x| env.is_rational(x)).count(),
        matches_enumeration: special == oracle,
        norms_ok: special.iter().all(|&x| env.is_special(x)),
    })
}

/// C(z) = (z − a⁻¹)/(z − a) on F_{q⁶}.
pub fn mobius_c(env: &CubicEnv, z: Fe) -> Result<Fe> {
    let o = &env.over;
    o.check(z)?;
    if z == env.a {
        return Err(Error::PoleInput);
    }
    Ok(o.div(o.sub(z, env.a_inv), o.sub(z, env.a)))
}

/// C⁻¹(w) = (a·w − a⁻¹)/(w − 1).
pub fn mobius_c_inv(env: &CubicEnv, w: Fe) -> Result<Fe> {
    let o = &env.over;
    o.check(w)?;
    if w == o.one() {
        return Err(Error::PoleInput);
    }
    Ok(o.div(o.sub(o.mul(env.a, w), env.a_inv), o.sub(w, o.one())))
}

/// G ∖ G³ in encoding order.
pub fn g_minus_g3(env: &CubicEnv) -> Vec<Fe> {
    let o = &env.over;
    let mut out = Vec::with_capacity((env.g_order - env.g_order / 3) as usize);
    let mut cur = o.one();
    for j in 0..env.g_order {
        if j % 3 != 0 {
            out.push(cur);
        }
        cur = o.mul(cur, env.g);
    }
    out.sort();
    out
}

/// C maps the non-rational special set bijectively onto G ∖ G³.
pub fn bijection_check(env: &CubicEnv) -> Result<bool> {
    let mut image = s4_nonrational(env)
        .into_iter()
        .map(|z| mobius_c(env, env.embed(z)))
        .collect::<Result<Vec<_>>>()?;
    image.sort();
    let n = image.len();
    image.dedup();
    Ok(image.len() == n && image == g_minus_g3(env))
}

/// C(z)^q = C(z)^{e_q}·a^{±e_q}, with + when h(z, 1) = 0 and − when h(1, z) = 0.
pub fn frobenius_identity_check(env: &CubicEnv) -> Result<bool> {
    let o = &env.over;
    let f = env.gc.big();
    let (a_pos, a_neg) = if env.e_q == 1 { (env.a, env.a_inv) } else { (env.a_inv, env.a) };
    for z in s4_nonrational(env) {
        let c = mobius_c(env, env.embed(z))?;
        let ce = if env.e_q == 1 { c } else { o.inv(c) };
        let lhs = o.pow(c, env.q());
        let first = env.h(z, f.one()).is_zero();
        let second = env.h(f.one(), z).is_zero();
        let ok = (first && lhs == o.mul(ce, a_pos)) || (second && lhs == o.mul(ce, a_neg));
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether an element of F_{q⁶} lies in F_{q³} and in S_4(1, −1).
pub fn special_member(env: &CubicEnv, x: Fe) -> bool {
    env.cubic.preimage(x).is_some_and(|y| env.is_special(y))
}

/// aA and a⁻¹A lie outside S_4(1, −1) for every non-rational special A.
pub fn third_root_exclusion_check(env: &CubicEnv) -> bool {
    let o = &env.over;
    s4_nonrational(env).into_iter().all(|x| {
        let y = env.embed(x);
        !special_member(env, o.mul(env.a, y)) && !special_member(env, o.mul(env.a_inv, y))
    })
}

/// Compares η_G(C(D)) = C(D)^{|G|/2} with the quadratic character of D² + D + 1.
pub fn square_transfer(env: &CubicEnv, d: Fe) -> Result<bool> {
    let f = env.gc.big();
    f.check(d)?;
    if !env.is_special(d) || env.is_rational(d) {
        return Err(Error::NotInSpecialSet);
    }
    let o = &env.over;
    let c = mobius_c(env, env.embed(d))?;
    let r = o.pow(c, env.g_order / 2);
    let eta_g = if r == o.one() {
        1
    } else if r == o.from_int(-1) {
        -1
    } else {
        return Err(Error::InvariantViolation("C(D) is not in G".into()));
    };
    let eta_f = f.quad_char(f.add(f.add(f.mul(d, d), d), f.one()))?;
    Ok(eta_g == eta_f)
}

/// Solutions of N(Y) = 1, N(Y + A) = −1, N(Y + B) = −1, split by which pair
/// of h-equations they satisfy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialSolution {
    /// h(Y,A)=h(Y,B)=0; h(Y,A)=h(B,Y)=0; h(A,Y)=h(Y,B)=0; h(A,Y)=h(B,Y)=0.
    pub parts: [Vec<Fe>; 4],
    /// η(A² + AB + B²).
    pub eta: i8,
    /// Union of the parts in encoding order.
    pub solutions: Vec<Fe>,
}

fn quadratic_roots(f: &FieldCtx, a2: Fe, a1: Fe, a0: Fe) -> Result<Vec<Fe>> {
    let disc = f.sub(f.mul(a1, a1), f.mul(f.from_int(4), f.mul(a2, a0)));
    let Some(s) = f.sqrt(disc)? else { return Ok(Vec::new()) };
    let den = f.inv(f.add(a2, a2));
    let mut r = vec![f.mul(f.sub(s, a1), den), f.mul(f.sub(f.neg(s), a1), den)];
    r.sort();
    r.dedup();
    Ok(r)
}

/// Closed-form solver: two linear and two quadratic equations in Y.
pub fn special_solve(env: &CubicEnv, a: Fe, b: Fe) -> Result<SpecialSolution> {
    let gc = &env.gc;
    let f = gc.big();
    f.check(a)?;
    f.check(b)?;
    let one = f.one();
    if gc.norm(a) != one || gc.norm(b) != one {
        return Err(Error::PreconditionViolated("N(A) = N(B) = 1"));
    }
    let d = f.div(a, b);
    if !env.is_special(d) || env.is_rational(d) {
        return Err(Error::PreconditionViolated("A/B must be a non-rational member of S_4(1, -1)"));
    }
    let q = env.q();
    let (aq, bq) = (f.pow(a, q), f.pow(b, q));
    let (aq1, bq1) = (f.mul(aq, a), f.mul(bq, b));
    let lin_den = f.sub(aq1, bq1);
    let den4 = f.sub(bq, aq);
    if lin_den.is_zero() || den4.is_zero() {
        return Err(Error::InvariantViolation("degenerate linear equation".into()));
    }
    let x1 = f.div(f.sub(f.mul(a, bq1), f.mul(aq1, b)), lin_den);
    let x2 = f.div(lin_den, den4);
    let p2 = quadratic_roots(f, bq, f.add(f.sub(f.mul(a, bq), aq1), bq1), f.mul(a, bq1))?;
    let p3 = quadratic_roots(f, aq, f.sub(f.add(aq1, f.mul(aq, b)), bq1), f.mul(aq1, b))?;
    let parts = [vec![x1], p2, p3, vec![x2]];

    let minus_one = f.from_int(-1);
    for (i, part) in parts.iter().enumerate() {
        for &y in part {
            let (first, second) = match i {
                0 => (env.h(y, a), env.h(y, b)),
                1 => (env.h(y, a), env.h(b, y)),
                2 => (env.h(a, y), env.h(y, b)),
                _ => (env.h(a, y), env.h(b, y)),
            };
            let norms = gc.norm(y) == one
                && gc.norm(f.add(y, a)) == minus_one
                && gc.norm(f.add(y, b)) == minus_one;
            if !first.is_zero() || !second.is_zero() || !norms {
                return Err(Error::InvariantViolation(format!("candidate of subsystem {} fails", i + 1)));
            }
        }
    }
    let mut solutions: Vec<Fe> = parts.iter().flatten().copied().collect();
    solutions.sort();
    let total = solutions.len();
    solutions.dedup();
    if solutions.len() != total {
        return Err(Error::InvariantViolation("subsystem solution sets overlap".into()));
    }
    let eta = f.quad_char(f.add(f.add(f.mul(a, a), f.mul(a, b)), f.mul(b, b)))?;
    if total as i64 != 5 + i64::from(eta) {
        return Err(Error::InvariantViolation(format!("{total} solutions, expected 5 + ({eta})")));
    }
    Ok(SpecialSolution { parts, eta, solutions })
}

/// The quadruple {(1,1), (1/(A+1), −N(1/(A+1))), (1/2, −N(1/2)), (0,1)} with its
/// common neighbourhood.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialQuadruple {
    pub a_param: Fe,
    pub vertices: Vec<Vertex>,
    pub neighbors: Vec<Vertex>,
}

pub fn special_quadruple(env: &CubicEnv, a_param: Fe) -> Result<SpecialQuadruple> {
    let gc = &env.gc;
    let f = gc.big();
    let one = f.one();
    let vertex_with_minus_norm = |x: Fe| -> Result<Vertex> {
        let inv = f.try_inv(x)?;
        gc.vertex(inv, f.neg(gc.norm(inv)))
    };
    let vertices = vec![
        gc.vertex(one, one)?,
        vertex_with_minus_norm(f.add(a_param, one))?,
        vertex_with_minus_norm(f.from_int(2))?,
        gc.vertex(f.zero(), one)?,
    ];
    let sol = special_solve(env, a_param, one)?;
    let mut neighbors = Vec::with_capacity(sol.solutions.len());
    for y in sol.solutions {
        let x = f.sub(y, one);
        if x.is_zero() {
            return Err(Error::InvariantViolation("zero shift in the reduced system".into()));
        }
        neighbors.push(gc.vertex(f.inv(x), f.inv(gc.norm(x)))?);
    }
    neighbors.sort_by_key(|v| gc.vertex_index(v));
    Ok(SpecialQuadruple { a_param, vertices, neighbors })
}

/// Picks A according to the build mode.
pub fn choose_parameter(env: &CubicEnv, mode: BuildMode) -> Result<Fe> {
    let f = env.gc.big();
    let good = |x: Fe| -> Result<bool> {
        Ok(env.is_special(x)
            && !env.is_rational(x)
            && f.quad_char(f.add(f.add(f.mul(x, x), x), f.one()))? == 1)
    };
    match mode {
        BuildMode::Fast => {
            for x in s4_nonrational(env) {
                if good(x)? {
                    return Ok(x);
                }
            }
            Err(Error::NotFound("special element with square A^2 + A + 1"))
        }
        BuildMode::Certified => {
            let z = mobius_c_inv(env, env.over.mul(env.g, env.g))?;
            let x = env
                .cubic
                .preimage(z)
                .ok_or_else(|| Error::InvariantViolation("C^-1(g^2) is outside F_{q^3}".into()))?;
            if !good(x)? {
                return Err(Error::InvariantViolation("C^-1(g^2) is not a usable parameter".into()));
            }
            Ok(x)
        }
    }
}

/// U^{α,β,c} = {(βA_i + α, N(β)·c·a_i)}.
pub fn translate(gc: &GraphCtx, u: &[Vertex], alpha: Fe, beta: Fe, c: Fe) -> Result<VertexSet> {
    let f = gc.big();
    check_translation(gc, alpha, beta, c)?;
    let s = f.mul(gc.norm(beta), c);
    let vs = u
        .iter()
        .map(|v| gc.vertex(f.add(f.mul(beta, v.first), alpha), f.mul(s, v.second)))
        .collect::<Result<Vec<_>>>()?;
    Ok(classify_set(&vs))
}

/// Image of a common neighbour: (βW − α, c⁻¹w).
pub fn translate_neighbor(gc: &GraphCtx, w: &Vertex, alpha: Fe, beta: Fe, c: Fe) -> Result<Vertex> {
    let f = gc.big();
    check_translation(gc, alpha, beta, c)?;
    gc.vertex(f.sub(f.mul(beta, w.first), alpha), f.div(w.second, c))
}

fn check_translation(gc: &GraphCtx, alpha: Fe, beta: Fe, c: Fe) -> Result<()> {
    let f = gc.big();
    f.check(alpha)?;
    f.check(beta)?;
    f.check(c)?;
    if beta.is_zero() || c.is_zero() || !gc.base().contains(c) {
        return Err(Error::InvalidParameters("need beta != 0 and c in F_q^*".into()));
    }
    Ok(())
}

/// Number of parameter triples (α, β, c) guaranteed to give a K_{4,6}.
pub fn k46_lower_bound(q: u64) -> i128 {
    let q3 = i128::from(q).pow(3);
    (q3 - 1) * (i128::from(q) - 1) * (q3 - 24)
}

/// A K_{4,6} together with the parameters that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct K46Certificate {
    pub q: u64,
    pub mode: BuildMode,
    pub a_param: Fe,
    pub alpha: Fe,
    pub beta: Fe,
    pub c: Fe,
    pub left: Vec<Vertex>,
    pub right: Vec<Vertex>,
}

/// Sweeps (β, c, α) lexicographically from (1, 1, 0) and returns the first
/// `count` translates that are disjoint from their neighbourhoods.
pub fn find_k46(env: &CubicEnv, mode: BuildMode, count: usize) -> Result<Vec<K46Certificate>> {
    let gc = &env.gc;
    let f = gc.big();
    let a_param = choose_parameter(env, mode)?;
    let quad = special_quadruple(env, a_param)?;
    if quad.neighbors.len() != 6 {
        return Err(Error::InvariantViolation(format!("{} common neighbours", quad.neighbors.len())));
    }
    let mut out = Vec::new();
    if count == 0 {
        return Ok(out);
    }
    for beta in f.nonzero() {
        let nb = gc.norm(beta);
        for &c in gc.base().nonzero() {
            let s = f.mul(nb, c);
            let cinv = f.inv(c);
            let left_second: Vec<Fe> = quad.vertices.iter().map(|v| f.mul(s, v.second)).collect();
            let right_second: Vec<Fe> = quad.neighbors.iter().map(|w| f.mul(cinv, w.second)).collect();
            let bl: Vec<Fe> = quad.vertices.iter().map(|v| f.mul(beta, v.first)).collect();
            let br: Vec<Fe> = quad.neighbors.iter().map(|w| f.mul(beta, w.first)).collect();
            for alpha in f.elements() {
                let clash = (0..4).any(|i| {
                    (0..6).any(|j| {
                        left_second[i] == right_second[j] && f.add(bl[i], alpha) == f.sub(br[j], alpha)
                    })
                });
                if clash {
                    continue;
                }
                let left = (0..4).map(|i| gc.vertex(f.add(bl[i], alpha), left_second[i])).collect::<Result<_>>()?;
                let right = (0..6).map(|j| gc.vertex(f.sub(br[j], alpha), right_second[j])).collect::<Result<_>>()?;
                out.push(K46Certificate { q: env.q(), mode, a_param, alpha, beta, c, left, right });
                if out.len() == count {
                    return Ok(out);
                }
            }
        }
    }
    Ok(out)
}

pub fn build_k46(env: &CubicEnv, mode: BuildMode) -> Result<K46Certificate> {
    find_k46(env, mode, 1)?.pop().ok_or(Error::NotFound("loop-free translate"))
}

/// Outcome of an independent certificate check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateCheck {
    pub ok: bool,
    pub violations: Vec<String>,
}

pub fn verify_certificate(gc: &GraphCtx, cert: &K46Certificate) -> CertificateCheck {
    let mut violations = Vec::new();
    if cert.left.len() != 4 || cert.right.len() != 6 {
        violations.push(format!("part sizes {} and {}", cert.left.len(), cert.right.len()));
    }
    let all: Vec<Vertex> = cert.left.iter().chain(&cert.right).copied().collect();
    for v in &all {
        if gc.vertex(v.first, v.second).is_err() {
            violations.push(format!("invalid vertex ({}, {})", v.first.value(), v.second.value()));
        }
    }
    if !violations.is_empty() {
        return CertificateCheck { ok: false, violations };
    }
    let mut sorted = all.clone();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != all.len() {
        violations.push("vertices are not pairwise distinct".into());
    }
    for (i, l) in cert.left.iter().enumerate() {
        for (j, r) in cert.right.iter().enumerate() {
            if l == r {
                violations.push(format!("left {i} equals right {j} (loop incidence)"));
            } else if !gc.is_adjacent(l, r) {
                violations.push(format!("left {i} and right {j} are not adjacent"));
            }
        }
    }
    if !classify_set(&cert.left).generic {
        violations.push("left part is not generic".into());
    }
    CertificateCheck { ok: violations.is_empty(), violations }
}
