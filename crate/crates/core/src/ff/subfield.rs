use alloc::vec::Vec;

use super::field::{Fe, FieldCtx};
use crate::error::{Error, Result};

/// The subfield F_{p^s} of a field, viewed as the fixed set of x ↦ x^{p^s}.
#[derive(Clone, Debug)]
pub struct Subfield {
    field: FieldCtx,
    s: usize,
    order: u64,
    elements: Vec<Fe>,
}

impl Subfield {
    /// Requires `s` to divide the degree of `field`.
    pub fn new(field: &FieldCtx, s: usize) -> Result<Self> {
        let m = field.degree();
        if s == 0 || !m.is_multiple_of(s) {
            return Err(Error::InvalidParameters(alloc::format!(
                "subfield degree {s} does not divide {m}"
            )));
        }
        let order = field.p().pow(s as u32);
        let mut elements = Vec::with_capacity(order as usize);
        elements.push(field.zero());
        if s == m {
            elements.extend(field.nonzero());
        } else {
            let w = field.pow(field.generator(), (field.order() - 1) / (order - 1));
            let mut cur = field.one();
            for _ in 0..order - 1 {
                elements.push(cur);
                cur = field.mul(cur, w);
            }
            elements.sort();
        }
        Ok(Subfield { field: field.clone(), s, order, elements })
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }
    pub fn order(&self) -> u64 {
        self.order
    }
    /// Degree over the prime field.
    pub fn degree(&self) -> usize {
        self.s
    }
    /// Elements sorted by encoding.
    pub fn elements(&self) -> &[Fe] {
        &self.elements
    }
    pub fn nonzero(&self) -> &[Fe] {
        &self.elements[1..]
    }

    pub fn contains(&self, x: Fe) -> bool {
        self.field.owns(x) && self.elements.binary_search(&x).is_ok()
    }

    /// Position in the sorted element list.
    pub fn index_of(&self, x: Fe) -> Option<usize> {
        self.elements.binary_search(&x).ok()
    }

    /// Quadratic character of the subfield: x^{(order−1)/2} ∈ {0, ±1}.
    pub fn quad_char(&self, x: Fe) -> Result<i8> {
        self.field.check(x)?;
        if self.field.p() == 2 {
            return Err(Error::EvenCharacteristic);
        }
        if x.is_zero() {
            return Ok(0);
        }
        let r = self.field.pow(x, (self.order - 1) / 2);
        Ok(if r == self.field.one() { 1 } else { -1 })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f3_inside_f9() {
        let f = FieldCtx::new(3, 2, None).unwrap();
        let s = Subfield::new(&f, 1).unwrap();
        assert_eq!(s.elements().len(), 3);
        let fixed = f.elements().filter(|&x| f.pow(x, 3) == x).count();
        assert_eq!(fixed, 3);
        assert!(s.contains(f.zero()) && s.contains(f.one()));
    }

    #[test]
    fn f4_inside_f16_matches_fixed_points() {
        let f = FieldCtx::new(2, 4, None).unwrap();
        let s = Subfield::new(&f, 2).unwrap();
        let fixed: Vec<Fe> = f.elements().filter(|&x| f.pow(x, 4) == x).collect();
        assert_eq!(s.elements(), &fixed[..]);
        assert!(Subfield::new(&f, 3).is_err());
    }
}
