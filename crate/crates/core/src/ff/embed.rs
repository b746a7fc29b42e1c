use alloc::vec;
use alloc::vec::Vec;

use super::field::{Fe, FieldCtx};
use super::subfield::Subfield;
use super::zp::{mod_inv, mod_mul};
use crate::error::{Error, Result};

/// Field embedding `small → large` determined by the image of X, chosen as
/// the root of the small modulus with the smallest encoding.
#[derive(Clone, Debug)]
pub struct Embedding {
    small: FieldCtx,
    large: FieldCtx,
    root: Fe,
    /// Coefficient vectors of root^i, i < deg(small).
    basis: Vec<Vec<u64>>,
    /// Row-reduction data for preimages.
    transform: Vec<Vec<u64>>,
    pivots: Vec<usize>,
    reduced: Vec<Vec<u64>>,
}

impl Embedding {
    pub fn new(small: &FieldCtx, large: &FieldCtx) -> Result<Self> {
        let (ms, ml) = (small.degree(), large.degree());
        if small.p() != large.p() || ml % ms != 0 {
            return Err(Error::InvalidParameters("no embedding between these fields".into()));
        }
        let modulus = small.modulus();
        let eval = |x: Fe| {
            modulus
                .iter()
                .rev()
                .fold(large.zero(), |acc, &c| large.add(large.mul(acc, x), large.from_int(c as i64)))
        };
        let sub = Subfield::new(large, ms)?;
        let root = sub
            .elements()
            .iter()
            .copied()
            .find(|&x| eval(x).is_zero())
            .ok_or(Error::NotFound("root of modulus"))?;
        let mut basis = Vec::with_capacity(ms);
        let mut cur = large.one();
        for _ in 0..ms {
            basis.push(large.coeffs(cur));
            cur = large.mul(cur, root);
        }
        let (transform, pivots, reduced) = row_reduce(&basis, large.p());
        Ok(Embedding {
            small: small.clone(),
            large: large.clone(),
            root,
            basis,
            transform,
            pivots,
            reduced,
        })
    }

    pub fn small(&self) -> &FieldCtx {
        &self.small
    }
    pub fn large(&self) -> &FieldCtx {
        &self.large
    }
    /// Image of the generator X of the small field.
    pub fn root(&self) -> Fe {
        self.root
    }

    pub fn apply(&self, x: Fe) -> Fe {
        let p = self.large.p();
        let c = self.small.coeffs(x);
        let mut out = vec![0u64; self.large.degree()];
        for (ci, row) in c.iter().zip(&self.basis) {
            if *ci == 0 {
                continue;
            }
            for (o, &b) in out.iter_mut().zip(row) {
                *o = (*o + mod_mul(*ci, b, p)) % p;
            }
        }
        self.large.from_coeffs(&out).expect("reduced coefficients")
    }

    /// Inverse image, or `None` when `y` lies outside the embedded copy.
    pub fn preimage(&self, y: Fe) -> Option<Fe> {
        let p = self.large.p();
        let yc = self.large.coeffs(y);
        let ms = self.small.degree();
        let d: Vec<u64> = self.pivots.iter().map(|&c| yc[c]).collect();
        for (col, &target) in yc.iter().enumerate() {
            let mut s = 0u64;
            for i in 0..ms {
                s = (s + mod_mul(d[i], self.reduced[i][col], p)) % p;
            }
            if s != target {
                return None;
            }
        }
        let mut c = vec![0u64; ms];
        for (i, &di) in d.iter().enumerate() {
            for (j, cj) in c.iter_mut().enumerate() {
                *cj = (*cj + mod_mul(di, self.transform[i][j], p)) % p;
            }
        }
        Some(self.small.from_coeffs(&c).expect("reduced coefficients"))
    }
}

/// Reduces the rows of `b` (linearly independent) to reduced row echelon form
/// `r = t·b`, returning (t, pivot columns, r).
#[allow(clippy::type_complexity)]
fn row_reduce(b: &[Vec<u64>], p: u64) -> (Vec<Vec<u64>>, Vec<usize>, Vec<Vec<u64>>) {
    let n = b.len();
    let cols = b[0].len();
    let mut r: Vec<Vec<u64>> = b.to_vec();
    let mut t: Vec<Vec<u64>> = (0..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect();
    let mut pivots = Vec::with_capacity(n);
    let mut row = 0;
    for col in 0..cols {
        if row == n {
            break;
        }
        let Some(piv) = (row..n).find(|&i| r[i][col] != 0) else { continue };
        r.swap(row, piv);
        t.swap(row, piv);
        let inv = mod_inv(r[row][col], p);
        for j in 0..cols {
            r[row][j] = mod_mul(r[row][j], inv, p);
        }
        for j in 0..n {
            t[row][j] = mod_mul(t[row][j], inv, p);
        }
        for i in 0..n {
            if i != row && r[i][col] != 0 {
                let f = r[i][col];
                for j in 0..cols {
                    r[i][j] = (r[i][j] + p - mod_mul(f, r[row][j], p)) % p;
                }
                for j in 0..n {
                    t[i][j] = (t[i][j] + p - mod_mul(f, t[row][j], p)) % p;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    assert_eq!(row, n, "basis images are independent");
    (t, pivots, r)
}
