//! Quadratic character sums of polynomials and the quartic L_{c1,c2}.

use crate::error::{Error, Result};
use crate::ff::{Fe, FieldCtx, Poly, Subfield};
use crate::neighborhoods::st_enumerate;
use crate::normgraph::GraphCtx;

/// Σ_{a ∈ F} η(f(a)).
pub fn char_sum(field: &FieldCtx, f: &Poly) -> Result<i64> {
    if !field.is_odd() {
        return Err(Error::EvenCharacteristic);
    }
    if f.field().id() != field.id() {
        return Err(Error::FieldMismatch);
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    field.elements().map(|a| field.quad_char(f.eval(a)).map(i64::from)).sum()
}

/// Σ_{a ∈ K} η_K(f(a)) for a subfield K containing the coefficients of f.
pub fn char_sum_subfield(sub: &Subfield, f: &Poly) -> Result<i64> {
    if sub.field().p() == 2 {
        return Err(Error::EvenCharacteristic);
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.coeffs().iter().any(|&c| !sub.contains(c)) {
        return Err(Error::NotInSubfield);
    }
    sub.elements().iter().map(|&a| sub.quad_char(f.eval(a)).map(i64::from)).sum()
}

/// Which half of the Weil estimate applies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeilBranch {
    /// f = c·g²; the sum equals (q − r)·η(c) with r the number of roots of g.
    Square { c: Fe, g: Poly, roots: usize },
    /// |sum| ≤ (d − 1)√q.
    Generic,
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeilReport {
    pub sum: i64,
    pub degree: usize,
    pub bound: f64,
    /// Exact value predicted in the square branch.
    pub expected: Option<i64>,
    pub branch: WeilBranch,
    pub ok: bool,
}

/// f = c·g² exactly when every square-free factor has even multiplicity.
pub fn square_part(f: &Poly) -> Result<Option<(Fe, Poly)>> {
    let c = f.lead().ok_or(Error::ZeroPolynomial)?;
    let field = f.field();
    let mut g = Poly::constant(field, field.one());
    for (fac, m) in f.squarefree_decomposition()? {
        if m % 2 == 1 {
            return Ok(None);
        }
        g = g.mul(&fac.pow(m as u64 / 2));
    }
    Ok(Some((c, g)))
}

pub fn weil_check(field: &FieldCtx, f: &Poly) -> Result<WeilReport> {
    let sum = char_sum(field, f)?;
    let degree = f.degree().unwrap_or(0);
    if degree == 0 {
        return Err(Error::InvalidParameters("polynomial must have degree at least 1".into()));
    }
    let q = field.order();
    match square_part(f)? {
        Some((c, g)) => {
            let roots = if g.degree() == Some(0) { 0 } else { g.roots()?.len() };
            let expected = (q as i64 - roots as i64) * i64::from(field.quad_char(c)?);
            Ok(WeilReport {
                sum,
                degree,
                bound: expected.unsigned_abs() as f64,
                expected: Some(expected),
                branch: WeilBranch::Square { c, g, roots },
                ok: sum == expected,
            })
        }
        None => {
            let d1 = degree as i128 - 1;
            let ok = i128::from(sum).pow(2) <= d1 * d1 * i128::from(q);
            Ok(WeilReport {
                sum,
                degree,
                bound: d1 as f64 * libm::sqrt(q as f64),
                expected: None,
                branch: WeilBranch::Generic,
                ok,
            })
        }
    }
}

/// L(b) = b⁴ + 2(c1−c2−1)b³ + ((1+c1−c2)² − 6c1)b² + 2c1(1−c1−c2)b + c1².
pub fn l_poly(field: &FieldCtx, c1: Fe, c2: Fe) -> Poly {
    let f = field;
    let two = f.from_int(2);
    let one = f.one();
    let s = f.sub(f.add(one, c1), c2);
    let coeffs = [
        f.mul(c1, c1),
        f.mul(f.mul(two, c1), f.sub(f.sub(one, c1), c2)),
        f.sub(f.mul(s, s), f.mul(f.from_int(6), c1)),
        f.mul(two, f.sub(f.sub(c1, c2), one)),
        one,
    ];
    Poly::new(f, coeffs.to_vec())
}

/// Solves L_{c1,c2} = (b² + α1·b + α0)² by comparing coefficients.
pub fn claim9_check(field: &FieldCtx, c1: Fe, c2: Fe) -> Option<(Fe, Fe)> {
    let f = field;
    let l = l_poly(f, c1, c2);
    let alpha1 = f.sub(f.sub(c1, c2), f.one());
    [c1, f.neg(c1)].into_iter().find_map(|alpha0| {
        let b2 = f.add(f.mul(alpha1, alpha1), f.add(alpha0, alpha0));
        let b1 = f.mul(f.from_int(2), f.mul(alpha1, alpha0));
        (b2 == l.coeff(2) && b1 == l.coeff(1) && f.mul(alpha0, alpha0) == l.coeff(0)).then_some((alpha1, alpha0))
    })
}

/// |S_4(c1, c2)| as q + 2 + Σ_{b ∈ F_q} η(L(b)).
pub fn s4_identity(gc: &GraphCtx, c1: Fe, c2: Fe) -> Result<i64> {
    if !gc.is_odd() {
        return Err(Error::EvenCharacteristic);
    }
    if gc.t() != 4 {
        return Err(Error::InvalidParameters("the identity is stated for t = 4".into()));
    }
    for c in [c1, c2] {
        if c.is_zero() || !gc.base().contains(c) {
            return Err(Error::InvalidParameters("expected nonzero elements of F_q".into()));
        }
    }
    let l = l_poly(gc.big(), c1, c2);
    Ok(gc.q() as i64 + 2 + char_sum_subfield(gc.base(), &l)?)
}

/// Three-way |S_4| comparison: identity, recursion and enumeration.
pub fn s4_three_way(gc: &GraphCtx, c1: Fe, c2: Fe) -> Result<(i64, i64, i64)> {
    let identity = s4_identity(gc, c1, c2)?;
    let recursion = crate::neighborhoods::st_size(gc, 4, c1, c2)?;
    let enumeration = st_enumerate(gc, 4, c1, c2)?.len() as i64;
    Ok((identity, recursion, enumeration))
}

/// A quadratic a2·Y² + a1·Y + a0 has 1 + η(disc) roots.
pub fn quadratic_root_identity(field: &FieldCtx, a2: Fe, a1: Fe, a0: Fe) -> Result<bool> {
    if a2.is_zero() {
        return Err(Error::InvalidParameters("leading coefficient is zero".into()));
    }
    let f = field;
    let disc = f.sub(f.mul(a1, a1), f.mul(f.from_int(4), f.mul(a2, a0)));
    let roots = Poly::new(f, [a0, a1, a2].to_vec()).roots()?.len() as i64;
    Ok(roots == 1 + i64::from(f.quad_char(disc)?))
}
