use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::zp;
use crate::error::{Error, Result};

/// Largest supported extension degree.
pub const MAX_DEGREE: usize = 32;
/// Fields up to this order get discrete log tables.
const TABLE_LIMIT: u64 = 1 << 18;

/// Structural identity of a field: a hash of (p, modulus).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct FieldId(u64);

/// Element of a finite field, stored by its canonical encoding Σ c_i p^i.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fe {
    field: FieldId,
    value: u64,
}

impl Fe {
    pub fn value(self) -> u64 {
        self.value
    }
    pub fn field_id(self) -> FieldId {
        self.field
    }
    pub fn is_zero(self) -> bool {
        self.value == 0
    }
}

impl fmt::Debug for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fe({})", self.value)
    }
}

struct Tables {
    /// exp[i] = g^i for 0 ≤ i < 2(n−1).
    exp: Vec<u32>,
    /// log[x] for x ≠ 0.
    log: Vec<u32>,
}

struct Inner {
    p: u64,
    m: usize,
    order: u64,
    modulus: Vec<u64>,
    id: FieldId,
    generator: u64,
    group_factors: Vec<u64>,
    tables: Option<Tables>,
}

/// Immutable finite-field context F_p[X]/(modulus). Cloning is cheap.
#[derive(Clone)]
pub struct FieldCtx(Arc<Inner>);

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldCtx({}^{}, modulus {:?})", self.0.p, self.0.m, self.0.modulus)
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.0.id == other.0.id
    }
}
impl Eq for FieldCtx {}

fn fingerprint(p: u64, modulus: &[u64]) -> FieldId {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let mut mix = |x: u64| {
        for b in x.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
    };
    mix(p);
    mix(modulus.len() as u64);
    for &c in modulus {
        mix(c);
    }
    FieldId(h)
}

impl FieldCtx {
    /// Builds F_{p^m}. Without an override the modulus is the lexicographically
    /// smallest monic irreducible; an override lists c_0..c_{m−1} (monic implied).
    pub fn new(p: u64, m: u32, modulus_override: Option<&[u64]>) -> Result<Self> {
        if !zp::is_prime(p) || p >= 1 << 31 {
            return Err(Error::CompositeCharacteristic(p));
        }
        if m == 0 || m as usize > MAX_DEGREE {
            return Err(Error::InvalidParameters(alloc::format!("degree {m} unsupported")));
        }
        let order = zp::checked_pow(p, m).filter(|&n| n < 1 << 62).ok_or(Error::FieldTooLarge)?;
        let modulus = match modulus_override {
            Some(c) => {
                if c.len() != m as usize {
                    return Err(Error::InvalidModulus("expected m coefficients c_0..c_{m-1}"));
                }
                if c.iter().any(|&x| x >= p) {
                    return Err(Error::InvalidModulus("coefficient not reduced mod p"));
                }
                let mut f = c.to_vec();
                f.push(1);
                if !zp::is_irreducible(&f, p) {
                    return Err(Error::ReducibleModulus);
                }
                f
            }
            None => zp::smallest_irreducible(p, m, order),
        };
        let id = fingerprint(p, &modulus);
        let bare = FieldCtx(Arc::new(Inner {
            p,
            m: m as usize,
            order,
            modulus,
            id,
            generator: 0,
            group_factors: zp::prime_factors(order - 1),
            tables: None,
        }));
        let g = bare.search_generator();
        let tables = (order <= TABLE_LIMIT).then(|| build_tables(&bare, g));
        let mut inner = Arc::try_unwrap(bare.0).ok().expect("sole owner");
        inner.generator = g;
        inner.tables = tables;
        Ok(FieldCtx(Arc::new(inner)))
    }

    /// Prime field Z_p.
    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, 1, None)
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }
    pub fn degree(&self) -> usize {
        self.0.m
    }
    pub fn order(&self) -> u64 {
        self.0.order
    }
    /// Monic modulus coefficients c_0..c_m.
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }
    pub fn id(&self) -> FieldId {
        self.0.id
    }
    pub fn is_odd(&self) -> bool {
        self.0.p != 2
    }

    fn mk(&self, value: u64) -> Fe {
        Fe { field: self.0.id, value }
    }

    pub fn zero(&self) -> Fe {
        self.mk(0)
    }
    pub fn one(&self) -> Fe {
        self.mk(1)
    }
    /// The residue class X.
    pub fn x(&self) -> Fe {
        if self.0.m == 1 {
            self.mk((self.0.p - self.0.modulus[0]) % self.0.p)
        } else {
            self.mk(self.0.p)
        }
    }

    /// Element with the given canonical encoding.
    pub fn elem(&self, value: u64) -> Result<Fe> {
        if value >= self.0.order {
            return Err(Error::ElementOutOfRange(value));
        }
        Ok(self.mk(value))
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Fe {
        self.mk(n.rem_euclid(self.0.p as i64) as u64)
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<Fe> {
        if coeffs.len() > self.0.m || coeffs.iter().any(|&c| c >= self.0.p) {
            return Err(Error::InvalidParameters("coefficient vector".into()));
        }
        Ok(self.mk(self.encode(coeffs)))
    }

    pub fn coeffs(&self, x: Fe) -> Vec<u64> {
        let mut buf = [0u64; MAX_DEGREE];
        self.decode(x.value, &mut buf);
        buf[..self.0.m].to_vec()
    }

    /// True when `x` was produced by this field.
    pub fn owns(&self, x: Fe) -> bool {
        x.field == self.0.id
    }

    pub fn check(&self, x: Fe) -> Result<Fe> {
        if self.owns(x) {
            Ok(x)
        } else {
            Err(Error::FieldMismatch)
        }
    }

    #[inline]
    fn same(&self, x: Fe) {
        assert!(x.field == self.0.id, "field mismatch");
    }

    /// All elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = Fe> + '_ {
        (0..self.0.order).map(move |v| self.mk(v))
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Fe> + '_ {
        (1..self.0.order).map(move |v| self.mk(v))
    }

    #[inline]
    fn decode(&self, mut v: u64, out: &mut [u64; MAX_DEGREE]) {
        let p = self.0.p;
        for slot in out.iter_mut().take(self.0.m) {
            *slot = v % p;
            v /= p;
        }
    }

    #[inline]
    fn encode(&self, c: &[u64]) -> u64 {
        let mut v = 0u64;
        for &x in c.iter().rev() {
            v = v * self.0.p + x;
        }
        v
    }

    #[inline]
    pub fn add(&self, x: Fe, y: Fe) -> Fe {
        self.same(x);
        self.same(y);
        self.mk(self.add_raw(x.value, y.value))
    }

    #[inline]
    fn add_raw(&self, mut a: u64, mut b: u64) -> u64 {
        let p = self.0.p;
        if p == 2 {
            return a ^ b;
        }
        if self.0.m == 1 {
            let s = a + b;
            return if s >= p { s - p } else { s };
        }
        let mut r = 0u64;
        let mut pw = 1u64;
        while a != 0 || b != 0 {
            let mut d = a % p + b % p;
            if d >= p {
                d -= p;
            }
            r += d * pw;
            pw *= p;
            a /= p;
            b /= p;
        }
        r
    }

    #[inline]
    fn neg_raw(&self, mut a: u64) -> u64 {
        let p = self.0.p;
        if p == 2 {
            return a;
        }
        if self.0.m == 1 {
            return if a == 0 { 0 } else { p - a };
        }
        let mut r = 0u64;
        let mut pw = 1u64;
        while a != 0 {
            let d = a % p;
            if d != 0 {
                r += (p - d) * pw;
            }
            pw *= p;
            a /= p;
        }
        r
    }

    pub fn neg(&self, x: Fe) -> Fe {
        self.same(x);
        self.mk(self.neg_raw(x.value))
    }

    pub fn sub(&self, x: Fe, y: Fe) -> Fe {
        self.same(x);
        self.same(y);
        self.mk(self.add_raw(x.value, self.neg_raw(y.value)))
    }

    #[inline]
    pub fn mul(&self, x: Fe, y: Fe) -> Fe {
        self.same(x);
        self.same(y);
        self.mk(self.mul_raw(x.value, y.value))
    }

    #[inline]
    fn mul_raw(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        if let Some(t) = &self.0.tables {
            let s = t.log[a as usize] + t.log[b as usize];
            return t.exp[s as usize] as u64;
        }
        self.mul_slow(a, b)
    }

    fn mul_slow(&self, a: u64, b: u64) -> u64 {
        let p = self.0.p;
        let m = self.0.m;
        if m == 1 {
            return zp::mod_mul(a, b, p);
        }
        let mut ca = [0u64; MAX_DEGREE];
        let mut cb = [0u64; MAX_DEGREE];
        self.decode(a, &mut ca);
        self.decode(b, &mut cb);
        let mut prod = [0u64; 2 * MAX_DEGREE];
        for i in 0..m {
            if ca[i] == 0 {
                continue;
            }
            for j in 0..m {
                prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p;
            }
        }
        let f = &self.0.modulus;
        for i in (m..2 * m - 1).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for j in 0..m {
                let k = i - m + j;
                prod[k] = (prod[k] + (p - c) * f[j]) % p;
            }
        }
        self.encode(&prod[..m])
    }

    pub fn pow(&self, x: Fe, e: u64) -> Fe {
        self.same(x);
        if e == 0 {
            return self.one();
        }
        if x.value == 0 {
            return self.zero();
        }
        if let Some(t) = &self.0.tables {
            let n1 = self.0.order - 1;
            let l = (t.log[x.value as usize] as u128 * (e % n1) as u128 % n1 as u128) as usize;
            return self.mk(t.exp[l] as u64);
        }
        self.mk(self.pow_raw(x.value, e))
    }

    fn pow_raw(&self, mut b: u64, mut e: u64) -> u64 {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul_slow(r, b);
            }
            e >>= 1;
            if e > 0 {
                b = self.mul_slow(b, b);
            }
        }
        r
    }

    pub fn inv(&self, x: Fe) -> Fe {
        self.try_inv(x).expect("inverse of zero")
    }

    pub fn try_inv(&self, x: Fe) -> Result<Fe> {
        self.check(x)?;
        if x.value == 0 {
            return Err(Error::DivisionByZero);
        }
        if let Some(t) = &self.0.tables {
            let n1 = (self.0.order - 1) as u32;
            let l = (n1 - t.log[x.value as usize]) % n1;
            return Ok(self.mk(t.exp[l as usize] as u64));
        }
        Ok(self.mk(self.pow_raw(x.value, self.0.order - 2)))
    }

    pub fn div(&self, x: Fe, y: Fe) -> Fe {
        self.mul(x, self.inv(y))
    }

    pub fn try_add(&self, x: Fe, y: Fe) -> Result<Fe> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.add(x, y))
    }
    pub fn try_sub(&self, x: Fe, y: Fe) -> Result<Fe> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.sub(x, y))
    }
    pub fn try_mul(&self, x: Fe, y: Fe) -> Result<Fe> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.mul(x, y))
    }
    pub fn try_div(&self, x: Fe, y: Fe) -> Result<Fe> {
        self.check(x)?;
        let yi = self.try_inv(y)?;
        Ok(self.mul(x, yi))
    }

    /// x^{p^i} by repeated p-th powering.
    pub fn frobenius(&self, x: Fe, i: u64) -> Fe {
        let steps = i % self.0.m as u64;
        let mut r = x;
        for _ in 0..steps {
            r = self.pow(r, self.0.p);
        }
        r
    }

    /// Cached smallest generator of the multiplicative group.
    pub fn generator(&self) -> Fe {
        self.mk(self.0.generator)
    }

    /// Distinct primes dividing |F| − 1.
    pub fn group_factors(&self) -> &[u64] {
        &self.0.group_factors
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, x: Fe) -> u64 {
        assert!(!x.is_zero());
        let mut ord = self.0.order - 1;
        for &r in &self.0.group_factors {
            while ord.is_multiple_of(r) && self.pow(x, ord / r).value == 1 {
                ord /= r;
            }
        }
        ord
    }

    fn search_generator(&self) -> u64 {
        let n1 = self.0.order - 1;
        'cand: for v in 1..self.0.order {
            for &r in &self.0.group_factors {
                if self.pow_raw(v, n1 / r) == 1 {
                    continue 'cand;
                }
            }
            return v;
        }
        unreachable!()
    }

    /// Quadratic character: 0, +1 or −1.
    pub fn quad_char(&self, x: Fe) -> Result<i8> {
        self.check(x)?;
        if !self.is_odd() {
            return Err(Error::EvenCharacteristic);
        }
        if x.is_zero() {
            return Ok(0);
        }
        let r = self.pow(x, (self.0.order - 1) / 2);
        Ok(if r.value == 1 { 1 } else { -1 })
    }

    /// Square root by Tonelli–Shanks; of the two roots the one with the
    /// smaller encoding is returned.
    pub fn sqrt(&self, x: Fe) -> Result<Option<Fe>> {
        let chi = self.quad_char(x)?;
        if chi == 0 {
            return Ok(Some(self.zero()));
        }
        if chi < 0 {
            return Ok(None);
        }
        let n1 = self.0.order - 1;
        let s = n1.trailing_zeros();
        let odd = n1 >> s;
        let z = self
            .nonzero()
            .find(|&c| self.pow(c, n1 / 2).value != 1)
            .expect("non-residue exists");
        let mut m = s;
        let mut c = self.pow(z, odd);
        let mut t = self.pow(x, odd);
        let mut r = self.pow(x, odd.div_ceil(2));
        while t.value != 1 {
            let mut i = 0;
            let mut tt = t;
            while tt.value != 1 {
                tt = self.mul(tt, tt);
                i += 1;
            }
            let mut b = c;
            for _ in 0..(m - i - 1) {
                b = self.mul(b, b);
            }
            m = i;
            c = self.mul(b, b);
            t = self.mul(t, c);
            r = self.mul(r, b);
        }
        debug_assert_eq!(self.mul(r, r), x);
        let other = self.neg(r);
        Ok(Some(if other.value < r.value { other } else { r }))
    }
}

fn build_tables(ctx: &FieldCtx, g: u64) -> Tables {
    let n = ctx.0.order as usize;
    let mut exp = vec![0u32; 2 * (n - 1)];
    let mut log = vec![0u32; n];
    let mut cur = 1u64;
    for i in 0..n - 1 {
        exp[i] = cur as u32;
        log[cur as usize] = i as u32;
        cur = ctx.mul_slow(cur, g);
    }
    for i in n - 1..2 * (n - 1) {
        exp[i] = exp[i - (n - 1)];
    }
    Tables { exp, log }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f9_basics() {
        let f = FieldCtx::new(3, 2, None).unwrap();
        assert_eq!(f.modulus(), &[1, 0, 1]);
        let x = f.x();
        assert_eq!(f.mul(x, x).value(), 2);
        assert_eq!(f.generator().value(), 4);
        assert_eq!(f.frobenius(x, 1), f.mul(f.from_int(2), x));
    }

    #[test]
    fn override_must_be_irreducible() {
        assert_eq!(FieldCtx::new(3, 2, Some(&[0, 1])).unwrap_err(), Error::ReducibleModulus);
        assert!(FieldCtx::new(3, 2, Some(&[1, 0])).is_ok());
        assert_eq!(FieldCtx::new(6, 1, None).unwrap_err(), Error::CompositeCharacteristic(6));
    }

    #[test]
    fn prime_field_modulus_is_x() {
        let f = FieldCtx::new(2, 1, None).unwrap();
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!(f.order(), 2);
        assert_eq!(f.generator().value(), 1);
    }

    #[test]
    fn slow_and_table_paths_agree() {
        let f = FieldCtx::new(3, 4, None).unwrap();
        for a in f.elements() {
            for b in f.elements().step_by(7) {
                assert_eq!(f.mul(a, b).value(), f.mul_slow(a.value(), b.value()));
            }
        }
    }

    #[test]
    fn sqrt_choice() {
        let f = FieldCtx::prime(5).unwrap();
        assert_eq!(f.sqrt(f.from_int(4)).unwrap(), Some(f.from_int(2)));
        assert_eq!(f.sqrt(f.from_int(2)).unwrap(), None);
        assert_eq!(f.sqrt(f.zero()).unwrap(), Some(f.zero()));
        assert_eq!(f.quad_char(f.from_int(2)).unwrap(), -1);
    }

    #[test]
    fn even_characteristic_refuses_characters() {
        let f = FieldCtx::new(2, 2, None).unwrap();
        assert_eq!(f.quad_char(f.one()), Err(Error::EvenCharacteristic));
        assert_eq!(f.sqrt(f.one()), Err(Error::EvenCharacteristic));
    }

    #[test]
    fn cross_field_ops_rejected() {
        let a = FieldCtx::prime(5).unwrap();
        let b = FieldCtx::prime(7).unwrap();
        assert_eq!(a.try_mul(a.one(), b.one()), Err(Error::FieldMismatch));
        assert_eq!(a.try_inv(a.zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn large_field_without_tables() {
        let f = FieldCtx::new(7, 12, None).unwrap();
        assert!(f.0.tables.is_none());
        let g = f.generator();
        assert_eq!(f.mult_order(g), f.order() - 1);
        let y = f.elem(123_456_789).unwrap();
        assert_eq!(f.mul(y, f.inv(y)), f.one());
        assert_eq!(f.frobenius(y, 12), y);
    }
}
