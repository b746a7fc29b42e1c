use alloc::vec;
use alloc::vec::Vec;

use super::field::{Fe, FieldCtx};
use super::poly::Poly;
use crate::error::{Error, Result};

/// Maximum number of variables.
pub const MAX_VARS: usize = 4;
/// Per-variable degree cap.
pub const MAX_VAR_DEGREE: usize = 8;

/// Dense multivariate polynomial; `dims[v]` is one more than the degree
/// bound currently allocated for variable v.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    field: FieldCtx,
    nvars: usize,
    dims: [usize; MAX_VARS],
    coeffs: Vec<Fe>,
}

type Exps = [usize; MAX_VARS];

impl MPoly {
    pub fn zero(field: &FieldCtx, nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "too many variables");
        MPoly { field: field.clone(), nvars, dims: [1; MAX_VARS], coeffs: vec![field.zero()] }
    }

    pub fn constant(field: &FieldCtx, nvars: usize, c: Fe) -> Self {
        let mut p = Self::zero(field, nvars);
        p.coeffs[0] = c;
        p
    }

    /// The variable Y_v.
    pub fn var(field: &FieldCtx, nvars: usize, v: usize) -> Self {
        let mut e = [0; MAX_VARS];
        e[v] = 1;
        Self::monomial(field, nvars, field.one(), e).expect("degree 1")
    }

    pub fn monomial(field: &FieldCtx, nvars: usize, c: Fe, e: Exps) -> Result<Self> {
        if e.iter().any(|&d| d > MAX_VAR_DEGREE) || e[nvars..].iter().any(|&d| d != 0) {
            return Err(Error::DegreeBoundExceeded);
        }
        let mut dims = [1; MAX_VARS];
        for v in 0..nvars {
            dims[v] = e[v] + 1;
        }
        let mut p = MPoly { field: field.clone(), nvars, dims, coeffs: vec![field.zero(); dims.iter().product()] };
        let idx = p.index(&e);
        p.coeffs[idx] = c;
        Ok(p)
    }

    /// (Y_v − c).
    pub fn linear(field: &FieldCtx, nvars: usize, v: usize, c: Fe) -> Self {
        Self::var(field, nvars, v).sub(&Self::constant(field, nvars, c))
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    fn index(&self, e: &Exps) -> usize {
        let mut idx = 0;
        for v in (0..MAX_VARS).rev() {
            idx = idx * self.dims[v] + e[v];
        }
        idx
    }

    fn exps(&self, mut idx: usize) -> Exps {
        let mut e = [0; MAX_VARS];
        for (v, slot) in e.iter_mut().enumerate() {
            *slot = idx % self.dims[v];
            idx /= self.dims[v];
        }
        e
    }

    /// Nonzero terms as (exponents, coefficient).
    pub fn terms(&self) -> impl Iterator<Item = (Exps, Fe)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, &c)| (self.exps(i), c))
    }

    pub fn coeff(&self, e: &Exps) -> Fe {
        if (0..MAX_VARS).any(|v| e[v] >= self.dims[v]) {
            return self.field.zero();
        }
        self.coeffs[self.index(e)]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Degree in variable v, `None` for the zero polynomial.
    pub fn degree_in(&self, v: usize) -> Option<usize> {
        self.terms().map(|(e, _)| e[v]).max()
    }

    fn with_dims(&self, dims: Exps) -> Result<Self> {
        if dims.iter().any(|&d| d > MAX_VAR_DEGREE + 1) {
            return Err(Error::DegreeBoundExceeded);
        }
        Ok(MPoly {
            field: self.field.clone(),
            nvars: self.nvars,
            dims,
            coeffs: vec![self.field.zero(); dims.iter().product()],
        })
    }

    fn with_terms(&self, dims: Exps, terms: impl Iterator<Item = (Exps, Fe)>) -> Result<Self> {
        let mut out = self.with_dims(dims)?;
        for (e, c) in terms {
            let idx = out.index(&e);
            out.coeffs[idx] = self.field.add(out.coeffs[idx], c);
        }
        Ok(out.shrink())
    }

    /// Drops unused trailing degree slots.
    fn shrink(self) -> Self {
        let mut dims = [1; MAX_VARS];
        for (e, _) in self.terms() {
            for v in 0..MAX_VARS {
                dims[v] = dims[v].max(e[v] + 1);
            }
        }
        if dims == self.dims {
            return self;
        }
        let mut out = self.with_dims(dims).expect("smaller dims");
        for (e, c) in self.terms() {
            let idx = out.index(&e);
            out.coeffs[idx] = c;
        }
        out
    }

    fn check_same(&self, o: &MPoly) {
        assert!(self.field == o.field && self.nvars == o.nvars, "incompatible polynomials");
    }

    pub fn add(&self, o: &MPoly) -> MPoly {
        self.check_same(o);
        let mut dims = [1; MAX_VARS];
        for v in 0..MAX_VARS {
            dims[v] = self.dims[v].max(o.dims[v]);
        }
        self.with_terms(dims, self.terms().chain(o.terms())).expect("dims within bounds")
    }

    pub fn neg(&self) -> MPoly {
        let f = &self.field;
        MPoly { coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect(), ..self.clone() }
    }

    pub fn sub(&self, o: &MPoly) -> MPoly {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: Fe) -> MPoly {
        let f = &self.field;
        MPoly { coeffs: self.coeffs.iter().map(|&x| f.mul(x, c)).collect(), ..self.clone() }.shrink()
    }

    pub fn mul(&self, o: &MPoly) -> Result<MPoly> {
        self.check_same(o);
        let f = &self.field;
        let mut dims = [1; MAX_VARS];
        for v in 0..MAX_VARS {
            dims[v] = self.dims[v] + o.dims[v] - 1;
        }
        let mut out = self.with_dims(dims)?;
        let rhs: Vec<(Exps, Fe)> = o.terms().collect();
        for (ea, ca) in self.terms() {
            for (eb, cb) in &rhs {
                let mut e = [0; MAX_VARS];
                for v in 0..MAX_VARS {
                    e[v] = ea[v] + eb[v];
                }
                let idx = out.index(&e);
                out.coeffs[idx] = f.add(out.coeffs[idx], f.mul(ca, *cb));
            }
        }
        Ok(out.shrink())
    }

    /// Coefficients of Y_v^0, Y_v^1, … as polynomials free of Y_v.
    pub fn coeffs_in(&self, v: usize) -> Vec<MPoly> {
        let d = self.degree_in(v).unwrap_or(0);
        let mut dims = self.dims;
        dims[v] = 1;
        (0..=d)
            .map(|k| {
                let terms = self.terms().filter(|(e, _)| e[v] == k).map(|(mut e, c)| {
                    e[v] = 0;
                    (e, c)
                });
                self.with_terms(dims, terms).expect("dims within bounds")
            })
            .collect()
    }

    /// Exact quotient by (Y_v − c); a nonzero remainder is reported as an
    /// invariant violation.
    pub fn div_linear(&self, v: usize, c: Fe) -> Result<MPoly> {
        let f = &self.field;
        let slices = self.coeffs_in(v);
        let d = slices.len() - 1;
        if d == 0 {
            return if self.is_zero() {
                Ok(self.clone())
            } else {
                Err(Error::InvariantViolation("linear factor does not divide".into()))
            };
        }
        // Synthetic division from the top: q_{k-1} = a_k + c·q_k.
        let mut q = vec![MPoly::zero(f, self.nvars); d];
        let mut carry = MPoly::zero(f, self.nvars);
        for k in (1..=d).rev() {
            carry = slices[k].add(&carry.scale(c));
            q[k - 1] = carry.clone();
        }
        let rem = slices[0].add(&carry.scale(c));
        if !rem.is_zero() {
            return Err(Error::InvariantViolation("linear factor does not divide".into()));
        }
        let yv = MPoly::var(f, self.nvars, v);
        let mut out = MPoly::zero(f, self.nvars);
        let mut pw = MPoly::constant(f, self.nvars, f.one());
        for qk in &q {
            out = out.add(&qk.mul(&pw)?);
            pw = pw.mul(&yv)?;
        }
        Ok(out)
    }

    pub fn eval(&self, point: &[Fe]) -> Fe {
        let f = &self.field;
        self.terms().fold(f.zero(), |acc, (e, c)| {
            let mut t = c;
            for v in 0..self.nvars {
                t = f.mul(t, f.pow(point[v], e[v] as u64));
            }
            f.add(acc, t)
        })
    }

    /// Univariate polynomial obtained by Y_v ↦ Y^{weights[v]}.
    pub fn substitute_powers(&self, weights: &[u64]) -> Poly {
        let f = &self.field;
        let mut deg = 0usize;
        let terms: Vec<(usize, Fe)> = self
            .terms()
            .map(|(e, c)| {
                let d: u64 = (0..self.nvars).map(|v| e[v] as u64 * weights[v]).sum();
                deg = deg.max(d as usize);
                (d as usize, c)
            })
            .collect();
        let mut v = vec![f.zero(); deg + 1];
        for (d, c) in terms {
            v[d] = f.add(v[d], c);
        }
        Poly::new(f, v)
    }
}

/// Determinant of a square matrix of polynomials by Laplace expansion along
/// rows with memoised minors over column subsets.
pub fn determinant(field: &FieldCtx, nvars: usize, m: &[Vec<MPoly>]) -> Result<MPoly> {
    let n = m.len();
    if n == 0 {
        return Ok(MPoly::constant(field, nvars, field.one()));
    }
    assert!(n <= 20 && m.iter().all(|r| r.len() == n), "square matrix expected");
    let mut memo: alloc::collections::BTreeMap<u32, MPoly> = alloc::collections::BTreeMap::new();
    minor(field, nvars, m, 0, (1u32 << n) - 1, &mut memo)
}

fn minor(
    field: &FieldCtx,
    nvars: usize,
    m: &[Vec<MPoly>],
    row: usize,
    cols: u32,
    memo: &mut alloc::collections::BTreeMap<u32, MPoly>,
) -> Result<MPoly> {
    if cols == 0 {
        return Ok(MPoly::constant(field, nvars, field.one()));
    }
    if let Some(v) = memo.get(&cols) {
        return Ok(v.clone());
    }
    let mut acc = MPoly::zero(field, nvars);
    let mut pos = 0;
    for c in 0..m.len() {
        if cols & (1 << c) == 0 {
            continue;
        }
        let entry = &m[row][c];
        if !entry.is_zero() {
            let sub = minor(field, nvars, m, row + 1, cols & !(1 << c), memo)?;
            let term = entry.mul(&sub)?;
            acc = if pos % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        pos += 1;
    }
    memo.insert(cols, acc.clone());
    Ok(acc)
}

/// Sylvester resultant with respect to `var`: rows of p's coefficients come
/// first, then rows of r's, each shifted one column right per row.
pub fn sylvester_resultant(p: &MPoly, r: &MPoly, var: usize) -> Result<MPoly> {
    let field = p.field().clone();
    let nv = p.nvars();
    let n = p.degree_in(var).ok_or(Error::ZeroPolynomial)?;
    let m = r.degree_in(var).ok_or(Error::ZeroPolynomial)?;
    let pc = p.coeffs_in(var);
    let rc = r.coeffs_in(var);
    let size = n + m;
    if size == 0 {
        return Ok(MPoly::constant(&field, nv, field.one()));
    }
    let zero = MPoly::zero(&field, nv);
    let mut mat = vec![vec![zero.clone(); size]; size];
    for i in 0..m {
        for k in 0..=n {
            mat[i][i + n - k] = pc[k].clone();
        }
    }
    for i in 0..n {
        for k in 0..=m {
            mat[m + i][i + m - k] = rc[k].clone();
        }
    }
    determinant(&field, nv, &mat)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f7() -> FieldCtx {
        FieldCtx::prime(7).unwrap()
    }

    #[test]
    fn resultant_of_linear_forms() {
        let f = f7();
        let (u, v) = (f.from_int(2), f.from_int(5));
        let p = MPoly::linear(&f, 1, 0, u);
        let r = MPoly::linear(&f, 1, 0, v);
        let res = sylvester_resultant(&p, &r, 0).unwrap();
        // det [[1, −u], [1, −v]] = u − v
        assert_eq!(res, MPoly::constant(&f, 1, f.sub(u, v)));
    }

    #[test]
    fn shared_root_gives_zero() {
        let f = f7();
        let (a, b, c) = (f.from_int(1), f.from_int(3), f.from_int(6));
        let p = MPoly::linear(&f, 1, 0, a).mul(&MPoly::linear(&f, 1, 0, c)).unwrap();
        let r = MPoly::linear(&f, 1, 0, b).mul(&MPoly::linear(&f, 1, 0, c)).unwrap();
        assert!(sylvester_resultant(&p, &r, 0).unwrap().is_zero());
    }

    #[test]
    fn spectator_resultant_vanishes_on_common_roots() {
        let f = f7();
        // p = Y1 − Y0², r = Y1 − 2: common root iff Y0² = 2.
        let y0 = MPoly::var(&f, 2, 0);
        let p = MPoly::var(&f, 2, 1).sub(&y0.mul(&y0).unwrap());
        let r = MPoly::linear(&f, 2, 1, f.from_int(2));
        let res = sylvester_resultant(&p, &r, 1).unwrap();
        for x in f.elements() {
            let vanish = res.eval(&[x, f.zero()]).is_zero();
            assert_eq!(vanish, f.mul(x, x) == f.from_int(2));
        }
    }

    #[test]
    fn division_by_linear_factor() {
        let f = f7();
        let a = MPoly::linear(&f, 2, 0, f.from_int(3));
        let b = MPoly::var(&f, 2, 1).add(&MPoly::var(&f, 2, 0).mul(&MPoly::var(&f, 2, 0)).unwrap());
        let prod = a.mul(&b).unwrap();
        assert_eq!(prod.div_linear(0, f.from_int(3)).unwrap(), b);
        assert!(matches!(b.div_linear(0, f.from_int(3)), Err(Error::InvariantViolation(_))));
    }

    #[test]
    fn degree_cap() {
        let f = f7();
        let y = MPoly::var(&f, 1, 0);
        let mut p = y.clone();
        for _ in 0..7 {
            p = p.mul(&y).unwrap();
        }
        assert_eq!(p.degree_in(0), Some(8));
        assert_eq!(p.mul(&y), Err(Error::DegreeBoundExceeded));
    }
}
