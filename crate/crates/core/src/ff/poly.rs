use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::field::{Fe, FieldCtx};
use super::subfield::Subfield;
use crate::error::{Error, Result};

/// Dense univariate polynomial over one field; no trailing zero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: FieldCtx,
    coeffs: Vec<Fe>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals: Vec<u64> = self.coeffs.iter().map(|c| c.value()).collect();
        write!(f, "Poly{vals:?}")
    }
}

impl Poly {
    pub fn new(field: &FieldCtx, coeffs: Vec<Fe>) -> Self {
        for &c in &coeffs {
            assert!(field.owns(c), "field mismatch");
        }
        let mut p = Poly { field: field.clone(), coeffs };
        p.trim();
        p
    }

    pub fn zero(field: &FieldCtx) -> Self {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn constant(field: &FieldCtx, c: Fe) -> Self {
        Self::new(field, vec![c])
    }

    /// c·Y^d.
    pub fn monomial(field: &FieldCtx, c: Fe, d: usize) -> Self {
        let mut v = vec![field.zero(); d + 1];
        v[d] = c;
        Self::new(field, v)
    }

    /// Y − r.
    pub fn linear_root(field: &FieldCtx, r: Fe) -> Self {
        Self::new(field, vec![field.neg(r), field.one()])
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    /// Coefficient of Y^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Fe {
        self.coeffs.get(i).copied().unwrap_or_else(|| self.field.zero())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<Fe> {
        self.coeffs.last().copied()
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n).map(|i| f.add(self.coeff(i), o.coeff(i))).collect();
        Poly::new(f, v)
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n).map(|i| f.sub(self.coeff(i), o.coeff(i))).collect();
        Poly::new(f, v)
    }

    pub fn scale(&self, c: Fe) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&x| f.mul(x, c)).collect())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let f = &self.field;
        if self.is_zero() || o.is_zero() {
            return Poly::zero(f);
        }
        let mut v = vec![f.zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                v[i + j] = f.add(v[i + j], f.mul(a, b));
            }
        }
        Poly::new(f, v)
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut base = self.clone();
        let mut r = Poly::constant(&self.field, self.field.one());
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        r
    }

    /// Quotient and remainder.
    pub fn divrem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        let f = &self.field;
        let dd = d.degree().ok_or(Error::ZeroPolynomial)?;
        let inv_lead = f.inv(d.lead().unwrap());
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Poly::zero(f), self.clone()));
        }
        let mut q = vec![f.zero(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = f.mul(r[i], inv_lead);
            if c.is_zero() {
                continue;
            }
            q[i - dd] = c;
            for (j, &dj) in d.coeffs.iter().enumerate() {
                let k = i - dd + j;
                r[k] = f.sub(r[k], f.mul(c, dj));
            }
        }
        r.truncate(dd);
        Ok((Poly::new(f, q), Poly::new(f, r)))
    }

    pub fn rem(&self, d: &Poly) -> Result<Poly> {
        Ok(self.divrem(d)?.1)
    }

    /// Monic scalar multiple (zero stays zero).
    pub fn monic(&self) -> Poly {
        match self.lead() {
            None => self.clone(),
            Some(l) => self.scale(self.field.inv(l)),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(c, f.from_int(i as i64)))
            .collect();
        Poly::new(f, v)
    }

    pub fn eval(&self, x: Fe) -> Fe {
        let f = &self.field;
        self.coeffs.iter().rev().fold(f.zero(), |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// All roots in the coefficient field, by exhaustive evaluation, sorted by encoding.
    pub fn roots(&self) -> Result<Vec<Fe>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self.field.elements().filter(|&x| self.eval(x).is_zero()).collect())
    }

    /// Roots lying in a subfield of the coefficient field.
    pub fn roots_in(&self, sub: &Subfield) -> Result<Vec<Fe>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(sub.elements().iter().copied().filter(|&x| self.eval(x).is_zero()).collect())
    }

    /// self^e mod m.
    pub fn pow_mod(&self, mut e: u64, m: &Poly) -> Result<Poly> {
        let mut base = self.rem(m)?;
        let mut r = Poly::constant(&self.field, self.field.one()).rem(m)?;
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&base).rem(m)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).rem(m)?;
            }
        }
        Ok(r)
    }

    /// Applies x ↦ x^{p^i} to every coefficient.
    pub fn frobenius_coeffs(&self, i: u64) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&c| f.frobenius(c, i)).collect())
    }

    /// Monic g with g² = self / lead(self), when one exists (odd characteristic).
    pub fn sqrt_monic(&self) -> Option<Poly> {
        let f = &self.field;
        let d = self.degree()?;
        if d % 2 == 1 || !f.is_odd() {
            return None;
        }
        let m = self.monic();
        let h = d / 2;
        // g = Y^h + Σ g_j Y^j; match coefficients of Y^{d-1} down to Y^h.
        let mut g = vec![f.zero(); h + 1];
        g[h] = f.one();
        let two_inv = f.inv(f.from_int(2));
        for k in (0..h).rev() {
            // coefficient of Y^{h+k} in g² is 2 g_k + Σ_{i+j=h+k, i,j>k} g_i g_j
            let mut acc = f.zero();
            for i in (k + 1)..=h {
                let j = h + k - i;
                if j > k && j <= h {
                    acc = f.add(acc, f.mul(g[i], g[j]));
                }
            }
            g[k] = f.mul(f.sub(m.coeff(h + k), acc), two_inv);
        }
        let g = Poly::new(f, g);
        (g.mul(&g) == m).then_some(g)
    }

    /// Square-free decomposition: pairs (a_i, i) with self = lead · Π a_i^i,
    /// each a_i monic and square-free, pairwise coprime.
    pub fn squarefree_decomposition(&self) -> Result<Vec<(Poly, usize)>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut out = Vec::new();
        sqf_rec(&self.monic(), 1, &mut out);
        out.sort_by_key(|(_, m)| *m);
        let mut merged: Vec<(Poly, usize)> = Vec::new();
        for (p, m) in out {
            match merged.last_mut() {
                Some((q, mm)) if *mm == m => *q = q.mul(&p),
                _ => merged.push((p, m)),
            }
        }
        Ok(merged)
    }
}

fn is_one(p: &Poly) -> bool {
    p.degree() == Some(0)
}

fn sqf_rec(f: &Poly, scale: usize, out: &mut Vec<(Poly, usize)>) {
    let field = f.field().clone();
    if f.degree().unwrap_or(0) == 0 {
        return;
    }
    let c0 = f.gcd(&f.derivative());
    let mut w = f.divrem(&c0).unwrap().0;
    let mut c = c0;
    let mut i = 1;
    while !is_one(&w) {
        let y = w.gcd(&c);
        let fac = w.divrem(&y).unwrap().0;
        if !is_one(&fac) {
            out.push((fac.monic(), i * scale));
        }
        w = y;
        c = c.divrem(&w).unwrap().0;
        i += 1;
    }
    if !is_one(&c) {
        // c is a p-th power: take p-th roots coefficientwise.
        let p = field.p() as usize;
        let m = field.degree() as u64;
        let root: Vec<Fe> = c
            .coeffs()
            .iter()
            .step_by(p)
            .map(|&a| field.frobenius(a, m - 1))
            .collect();
        sqf_rec(&Poly::new(&field, root), scale * p, out);
    }
}
