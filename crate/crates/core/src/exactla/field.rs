//! Finite fields GF(p^n) in the polynomial basis.
//!
//! An element is stored packed as the integer `sum c_i p^i` of its
//! coefficient vector (constant term least significant). Multiplication goes
//! through discrete log tables built once per field; the packed value, and so
//! every serialized form, is the polynomial-basis coefficient vector.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest field order for which tables are built.
pub const MAX_ORDER: u64 = 1 << 16;

/// Serializable description of GF(p^n): `modulus` holds the n+1 coefficients
/// of a monic irreducible polynomial, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldDesc {
    pub p: u32,
    pub n: u32,
    pub modulus: Vec<u32>,
}

/// A field element in packed polynomial-basis form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FieldElem(pub(crate) u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// The packed integer (base-p digits are the coefficients).
    pub fn index(self) -> u32 {
        self.0
    }
}

struct Inner {
    desc: FieldDesc,
    q: u32,
    // exp has length 2(q-1) so that log a + log b never needs a reduction
    exp: Vec<u32>,
    log: Vec<u32>,
    add: Option<Vec<u32>>,
    neg: Vec<u32>,
}

/// Handle to a finite field; cheap to clone and shareable across threads.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.desc == other.0.desc
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.p(), self.n())
    }
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

// Dense polynomials over Z/p as coefficient vectors, used only while
// validating moduli and building tables.
fn inv_mod(a: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let mut b = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p) as u64;
    while r.len() > dm {
        let dr = r.len() - 1;
        let c = (r[dr] as u64 * lead_inv % p as u64) as u32;
        if c != 0 {
            for (i, &mi) in m.iter().enumerate() {
                let idx = dr - dm + i;
                r[idx] = ((r[idx] as u64 + (p - c) as u64 * mi as u64) % p as u64) as u32;
            }
        }
        r.pop();
    }
    r
}

fn is_irreducible(m: &[u32], p: u32) -> bool {
    let n = m.len() - 1;
    if n <= 1 {
        return n == 1;
    }
    // trial division by every monic polynomial of degree 1..=n/2
    for d in 1..=n / 2 {
        let count = (p as u64).pow(d as u32);
        for v in 0..count {
            let mut div = Vec::with_capacity(d + 1);
            let mut x = v;
            for _ in 0..d {
                div.push((x % p as u64) as u32);
                x /= p as u64;
            }
            div.push(1);
            let r = poly_rem(m, &div, p);
            if r.iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn digits(mut v: u32, p: u32, n: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        out.push(v % p);
        v /= p;
    }
    out
}

fn pack(c: &[u32], p: u32) -> u32 {
    c.iter().rev().fold(0u32, |acc, &d| acc * p + d)
}

impl Field {
    /// Build GF(p^n). Without a modulus the lexicographically least monic
    /// irreducible polynomial of degree n is used.
    pub fn new(p: u32, n: u32, modulus: Option<&[u32]>) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n == 0 {
            return Err(Error::BadModulus("degree must be at least 1".into()));
        }
        let q = (p as u64).checked_pow(n).unwrap_or(u64::MAX);
        if q > MAX_ORDER {
            return Err(Error::FieldTooLarge(q));
        }
        let modulus = if n == 1 {
            vec![0, 1]
        } else {
            match modulus {
                Some(m) => {
                    if m.len() != n as usize + 1 || m[n as usize] != 1 || m.iter().any(|&c| c >= p) {
                        return Err(Error::BadModulus(format!(
                            "{m:?} is not a monic degree-{n} polynomial over GF({p})"
                        )));
                    }
                    if !is_irreducible(m, p) {
                        return Err(Error::Reducible(m.to_vec(), p));
                    }
                    m.to_vec()
                }
                None => Self::least_irreducible(p, n),
            }
        };
        Ok(Self::build(FieldDesc { p, n, modulus }))
    }

    pub fn prime(p: u32) -> Result<Field> {
        Field::new(p, 1, None)
    }

    pub fn from_desc(desc: &FieldDesc) -> Result<Field> {
        Field::new(desc.p, desc.n, Some(&desc.modulus))
    }

    fn least_irreducible(p: u32, n: u32) -> Vec<u32> {
        let pn = (p as u64).pow(n);
        (0..pn)
            .map(|v| {
                let mut m = digits(v as u32, p, n as usize);
                m.push(1);
                m
            })
            .find(|m| is_irreducible(m, p))
            .expect("an irreducible polynomial of every degree exists")
    }

    fn build(desc: FieldDesc) -> Field {
        let p = desc.p;
        let n = desc.n as usize;
        let q = p.pow(desc.n);
        let slow_mul = |a: u32, b: u32| -> u32 {
            let da = digits(a, p, n);
            let db = digits(b, p, n);
            let mut prod = vec![0u32; 2 * n];
            for i in 0..n {
                for j in 0..n {
                    prod[i + j] = ((prod[i + j] as u64 + da[i] as u64 * db[j] as u64) % p as u64) as u32;
                }
            }
            let mut r = poly_rem(&prod, &desc.modulus, p);
            r.resize(n, 0);
            pack(&r, p)
        };
        // find a primitive element by brute force
        let order = q - 1;
        let mut exp = Vec::new();
        for g in 1..q {
            let mut powers = Vec::with_capacity(order as usize);
            let mut x = 1u32;
            let mut ok = true;
            for k in 0..order {
                if k > 0 && x == 1 {
                    ok = false;
                    break;
                }
                powers.push(x);
                x = slow_mul(x, g);
            }
            if ok && x == 1 {
                exp = powers;
                break;
            }
        }
        let mut log = vec![0u32; q as usize];
        for (k, &v) in exp.iter().enumerate() {
            log[v as usize] = k as u32;
        }
        let doubled: Vec<u32> = exp.iter().chain(exp.iter()).copied().collect();
        let add_digits = |a: u32, b: u32| -> u32 {
            let da = digits(a, p, n);
            let db = digits(b, p, n);
            let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
            pack(&s, p)
        };
        let neg: Vec<u32> = (0..q)
            .map(|a| {
                let s: Vec<u32> = digits(a, p, n).iter().map(|&d| (p - d) % p).collect();
                pack(&s, p)
            })
            .collect();
        let add = if p != 2 && n > 1 && q <= 256 {
            let mut t = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = add_digits(a, b);
                }
            }
            Some(t)
        } else {
            None
        };
        Field(Arc::new(Inner { desc, q, exp: doubled, log, add, neg }))
    }

    pub fn desc(&self) -> &FieldDesc {
        &self.0.desc
    }

    pub fn p(&self) -> u32 {
        self.0.desc.p
    }

    pub fn n(&self) -> u32 {
        self.0.desc.n
    }

    pub fn order(&self) -> u32 {
        self.0.q
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem::ZERO
    }

    pub fn one(&self) -> FieldElem {
        FieldElem::ONE
    }

    /// The generator `t` of the polynomial basis (equal to 0 in a prime field).
    pub fn gen(&self) -> FieldElem {
        if self.n() == 1 {
            FieldElem::ZERO
        } else {
            FieldElem(self.p())
        }
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, v: i64) -> FieldElem {
        FieldElem(v.rem_euclid(self.p() as i64) as u32)
    }

    pub fn from_index(&self, v: u32) -> FieldElem {
        debug_assert!(v < self.0.q);
        FieldElem(v)
    }

    pub fn elem(&self, coeffs: &[u32]) -> Result<FieldElem> {
        let p = self.p();
        if coeffs.len() != self.n() as usize || coeffs.iter().any(|&c| c >= p) {
            return Err(Error::Parse(format!("{coeffs:?} is not an element of {self:?}")));
        }
        Ok(FieldElem(pack(coeffs, p)))
    }

    pub fn coeffs(&self, a: FieldElem) -> Vec<u32> {
        digits(a.0, self.p(), self.n() as usize)
    }

    /// All elements in packed order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.0.q).map(FieldElem)
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let inner = &*self.0;
        let p = inner.desc.p;
        if p == 2 {
            FieldElem(a.0 ^ b.0)
        } else if inner.desc.n == 1 {
            let s = a.0 + b.0;
            FieldElem(if s >= p { s - p } else { s })
        } else if let Some(t) = &inner.add {
            FieldElem(t[(a.0 * inner.q + b.0) as usize])
        } else {
            let n = inner.desc.n as usize;
            let da = digits(a.0, p, n);
            let db = digits(b.0, p, n);
            let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
            FieldElem(pack(&s, p))
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElem) -> FieldElem {
        FieldElem(self.0.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a.0 == 0 || b.0 == 0 {
            return FieldElem::ZERO;
        }
        let inner = &*self.0;
        FieldElem(inner.exp[(inner.log[a.0 as usize] + inner.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a.0 == 0 {
            return Err(Error::ZeroInverse);
        }
        let inner = &*self.0;
        let order = inner.q - 1;
        let l = inner.log[a.0 as usize];
        Ok(FieldElem(inner.exp[((order - l) % order) as usize]))
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElem, e: u64) -> FieldElem {
        if e == 0 {
            return FieldElem::ONE;
        }
        if a.0 == 0 {
            return FieldElem::ZERO;
        }
        let inner = &*self.0;
        let order = (inner.q - 1) as u64;
        let l = inner.log[a.0 as usize] as u64;
        FieldElem(inner.exp[((l * (e % order)) % order) as usize])
    }

    /// `dst += f * src`, element-wise.
    #[inline]
    pub fn axpy(&self, dst: &mut [FieldElem], f: FieldElem, src: &[FieldElem]) {
        if f.0 == 0 {
            return;
        }
        let inner = &*self.0;
        let p = inner.desc.p;
        if p == 2 && f.0 == 1 {
            for (d, s) in dst.iter_mut().zip(src) {
                d.0 ^= s.0;
            }
        } else if inner.desc.n == 1 {
            let f = f.0;
            for (d, s) in dst.iter_mut().zip(src) {
                d.0 = (d.0 + f * s.0) % p;
            }
        } else {
            for (d, s) in dst.iter_mut().zip(src) {
                if s.0 != 0 {
                    *d = self.add(*d, self.mul(f, *s));
                }
            }
        }
    }

    pub fn scale(&self, v: &mut [FieldElem], f: FieldElem) {
        for x in v.iter_mut() {
            *x = self.mul(*x, f);
        }
    }

    /// Whether `self` is the prime subfield of `other` or equal to it.
    pub fn embeds_into(&self, other: &Field) -> bool {
        self.p() == other.p() && other.n() % self.n() == 0
    }

    /// Ring embedding into an extension field. For a non-prime source the
    /// generator goes to the least (packed order) root of its modulus.
    pub fn embedding(&self, target: &Field) -> Result<Embedding> {
        if self == target {
            return Ok(Embedding { table: self.elements().collect() });
        }
        if !self.embeds_into(target) {
            return Err(Error::NotExtension(format!("{target:?}"), format!("{self:?}")));
        }
        if self.n() == 1 {
            return Ok(Embedding { table: self.elements().map(|a| FieldElem(a.0)).collect() });
        }
        let modulus = &self.desc().modulus;
        let eval = |x: FieldElem| -> FieldElem {
            modulus
                .iter()
                .rev()
                .fold(FieldElem::ZERO, |acc, &c| target.add(target.mul(acc, x), target.from_int(c as i64)))
        };
        let root = target
            .elements()
            .find(|&x| eval(x).is_zero())
            .ok_or_else(|| Error::NotExtension(format!("{target:?}"), format!("{self:?}")))?;
        let table = self
            .elements()
            .map(|a| {
                self.coeffs(a)
                    .iter()
                    .rev()
                    .fold(FieldElem::ZERO, |acc, &c| target.add(target.mul(acc, root), target.from_int(c as i64)))
            })
            .collect();
        Ok(Embedding { table })
    }

    /// The subfield map `x -> x^(p^s)`.
    pub fn frobenius(&self, a: FieldElem, s: u32) -> FieldElem {
        self.pow(a, (self.p() as u64).pow(s))
    }

    /// Matrix of multiplication by `a` on the polynomial basis 1, t, .., t^(n-1)
    /// over the prime field: column j holds the coefficients of `a * t^j`.
    pub fn mult_matrix(&self, a: FieldElem) -> Vec<Vec<u32>> {
        let n = self.n() as usize;
        let t = self.gen();
        let mut cols = Vec::with_capacity(n);
        let mut basis = FieldElem::ONE;
        for _ in 0..n {
            cols.push(self.coeffs(self.mul(a, basis)));
            basis = if n == 1 { basis } else { self.mul(basis, t) };
        }
        (0..n).map(|i| (0..n).map(|j| cols[j][i]).collect()).collect()
    }

    /// Element `sum c_i t^i` from prime-field coefficients (no validation of length).
    pub fn from_prime_coeffs(&self, c: &[u32]) -> FieldElem {
        FieldElem(pack(c, self.p()))
    }
}

/// A precomputed field embedding.
#[derive(Debug, Clone)]
pub struct Embedding {
    table: Vec<FieldElem>,
}

impl Embedding {
    pub fn apply(&self, a: FieldElem) -> FieldElem {
        self.table[a.0 as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_and_gf4_modulus() {
        let f2 = Field::new(2, 1, None).unwrap();
        assert_eq!(f2.order(), 2);
        let f4 = Field::new(2, 2, None).unwrap();
        assert_eq!(f4.desc().modulus, vec![1, 1, 1]);
        assert_eq!(Field::new(3, 2, None).unwrap().desc().modulus, vec![1, 0, 1]);
    }

    #[test]
    fn reducible_and_nonprime_rejected() {
        assert!(matches!(Field::new(2, 2, Some(&[1, 0, 1])), Err(Error::Reducible(..))));
        assert!(matches!(Field::new(4, 1, None), Err(Error::NotPrime(4))));
        assert!(matches!(Field::new(2, 2, Some(&[1, 1, 0])), Err(Error::BadModulus(_))));
    }

    #[test]
    fn gf4_arithmetic() {
        let f = Field::new(2, 2, None).unwrap();
        let one = f.one();
        assert_eq!(f.add(one, one), f.zero());
        let t = f.gen();
        let t1 = f.elem(&[1, 1]).unwrap();
        assert_eq!(f.mul(t, t), t1);
        assert_eq!(f.inv(t).unwrap(), t1);
        assert_eq!(f.inv(f.zero()), Err(Error::ZeroInverse));
        assert_eq!(f.pow(t, 3), one);
    }

    #[test]
    fn embeddings() {
        let f2 = Field::prime(2).unwrap();
        let f4 = Field::new(2, 2, None).unwrap();
        let e = f2.embedding(&f4).unwrap();
        assert_eq!(e.apply(f2.one()), f4.one());
        for a in f2.elements() {
            for b in f2.elements() {
                assert_eq!(e.apply(f2.add(a, b)), f4.add(e.apply(a), e.apply(b)));
            }
        }
        let f3 = Field::prime(3).unwrap();
        let f9 = Field::new(3, 2, None).unwrap();
        assert_eq!(f3.embedding(&f9).unwrap().apply(f3.zero()), f9.zero());
        assert!(f3.embedding(&f4).is_err());
        // GF(4) into GF(16) is a ring homomorphism
        let f16 = Field::new(2, 4, None).unwrap();
        let e = f4.embedding(&f16).unwrap();
        for a in f4.elements() {
            for b in f4.elements() {
                assert_eq!(e.apply(f4.mul(a, b)), f16.mul(e.apply(a), e.apply(b)));
                assert_eq!(e.apply(f4.add(a, b)), f16.add(e.apply(a), e.apply(b)));
            }
        }
        assert!(f4.embedding(&Field::new(2, 3, None).unwrap()).is_err());
    }

    #[test]
    fn field_axioms_exhaustive() {
        for (p, n) in [(2, 1), (3, 1), (2, 2), (2, 3), (3, 2), (5, 1), (2, 4), (3, 3), (7, 2), (3, 4)] {
            let f = Field::new(p, n, None).unwrap();
            assert!(f.order() <= 81);
            let els: Vec<_> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.add(a, f.neg(a)), f.zero());
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
                }
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                }
            }
            for &a in &els {
                for &b in &els {
                    for &c in &els {
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn same_parameters_same_modulus() {
        for (p, n) in [(2, 3), (3, 3), (5, 2)] {
            assert_eq!(Field::new(p, n, None).unwrap().desc(), Field::new(p, n, None).unwrap().desc());
        }
    }
}
