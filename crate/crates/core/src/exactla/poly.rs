//! Univariate polynomials over a finite field: minimal polynomials of
//! matrices, squarefree parts and factorisation into irreducibles.

use rand::Rng;

use super::field::{Field, FieldElem};
use super::matrix::Matrix;

/// Coefficients lowest degree first; the zero polynomial is empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    pub coeffs: Vec<FieldElem>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<FieldElem>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Poly {
        Poly { coeffs: vec![] }
    }

    pub fn one() -> Poly {
        Poly { coeffs: vec![FieldElem::ONE] }
    }

    pub fn x() -> Poly {
        Poly { coeffs: vec![FieldElem::ZERO, FieldElem::ONE] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    fn lead(&self) -> FieldElem {
        *self.coeffs.last().expect("nonzero polynomial")
    }

    pub fn monic(&self, f: &Field) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = f.inv(self.lead()).expect("nonzero leading coefficient");
        Poly::new(self.coeffs.iter().map(|&c| f.mul(c, inv)).collect())
    }

    pub fn add(&self, other: &Poly, f: &Field) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut c = vec![FieldElem::ZERO; n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            c[i] = a;
        }
        for (i, &b) in other.coeffs.iter().enumerate() {
            c[i] = f.add(c[i], b);
        }
        Poly::new(c)
    }

    pub fn sub(&self, other: &Poly, f: &Field) -> Poly {
        let neg = Poly { coeffs: other.coeffs.iter().map(|&c| f.neg(c)).collect() };
        self.add(&neg, f)
    }

    pub fn mul(&self, other: &Poly, f: &Field) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![FieldElem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            f.axpy(&mut c[i..i + other.coeffs.len()], a, &other.coeffs);
        }
        Poly::new(c)
    }

    pub fn divrem(&self, d: &Poly, f: &Field) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.coeffs.len() < d.coeffs.len() {
            return (Poly::zero(), self.clone());
        }
        let mut r = self.coeffs.clone();
        let dd = d.coeffs.len() - 1;
        let inv = f.inv(d.lead()).unwrap();
        let mut q = vec![FieldElem::ZERO; r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = f.mul(r[k + dd], inv);
            q[k] = c;
            if !c.is_zero() {
                f.axpy(&mut r[k..k + dd + 1], f.neg(c), &d.coeffs);
            }
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    pub fn rem(&self, d: &Poly, f: &Field) -> Poly {
        self.divrem(d, f).1
    }

    /// Monic greatest common divisor.
    pub fn gcd(a: &Poly, b: &Poly, f: &Field) -> Poly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.rem(&b, f);
            a = b;
            b = r;
        }
        a.monic(f)
    }

    pub fn derivative(&self, f: &Field) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| f.mul(f.from_int(i as i64), c))
                .collect(),
        )
    }

    /// `self^e mod m`.
    pub fn powmod(&self, e: u128, m: &Poly, f: &Field) -> Poly {
        let mut result = Poly::one().rem(m, f);
        let mut base = self.rem(m, f);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base, f).rem(m, f);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, f).rem(m, f);
            }
        }
        result
    }

    pub fn eval(&self, x: FieldElem, f: &Field) -> FieldElem {
        self.coeffs.iter().rev().fold(FieldElem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Evaluate at a square matrix by Horner's rule.
    pub fn eval_matrix(&self, a: &Matrix) -> Matrix {
        let f = a.field();
        let n = a.rows();
        let mut acc = Matrix::zeros(f, n, n);
        let id = Matrix::identity(f, n);
        for &c in self.coeffs.iter().rev() {
            acc = acc.dot(a);
            acc.add_scaled(c, &id);
        }
        acc
    }
}

/// Minimal polynomial of a square matrix, found as the first linear
/// dependency among I, A, A^2, ...
pub fn min_poly(a: &Matrix) -> Poly {
    let f = a.field().clone();
    let n = a.rows();
    let len = n * n;
    // reduced vectors with their pivot and the combination of powers they represent
    let mut basis: Vec<(usize, Vec<FieldElem>, Vec<FieldElem>)> = Vec::new();
    let mut power = Matrix::identity(&f, n);
    for k in 0..=n {
        let mut v = power.data().to_vec();
        let mut combo = vec![FieldElem::ZERO; k + 1];
        combo[k] = FieldElem::ONE;
        for (piv, bv, bc) in &basis {
            let c = v[*piv];
            if !c.is_zero() {
                let neg = f.neg(c);
                f.axpy(&mut v, neg, bv);
                f.axpy(&mut combo[..bc.len()], neg, bc);
            }
        }
        match (0..len).find(|&i| !v[i].is_zero()) {
            None => return Poly::new(combo).monic(&f),
            Some(piv) => {
                let inv = f.inv(v[piv]).unwrap();
                f.scale(&mut v, inv);
                f.scale(&mut combo, inv);
                basis.push((piv, v, combo));
            }
        }
        power = power.dot(a);
    }
    unreachable!("Cayley-Hamilton bounds the degree by n")
}

/// Product of the distinct monic irreducible factors of `m`.
pub fn squarefree_part(m: &Poly, f: &Field) -> Poly {
    let m = m.monic(f);
    if m.degree() <= 1 {
        return m;
    }
    // gcd with X^(q^i) - X collects the irreducible factors of degree dividing i
    let q = f.order() as u128;
    let mut result = Poly::one();
    let mut rest = m.clone();
    let mut h = Poly::x();
    for _ in 0..m.degree() {
        if rest.degree() == 0 {
            break;
        }
        h = h.powmod(q, &rest, f);
        let g = Poly::gcd(&rest, &h.sub(&Poly::x(), f), f);
        if g.degree() > 0 {
            result = result.mul(&g, f);
            loop {
                let c = Poly::gcd(&rest, &g, f);
                if c.degree() == 0 {
                    break;
                }
                rest = rest.divrem(&c, f).0.monic(f);
            }
            h = h.rem(&rest, f);
        }
    }
    result
}

/// Irreducible factors of a monic squarefree polynomial, sorted by degree
/// then coefficients.
pub fn factor_squarefree<R: Rng>(g: &Poly, f: &Field, rng: &mut R) -> Vec<Poly> {
    let mut out = Vec::new();
    let mut rest = g.monic(f);
    let q = f.order() as u128;
    let mut h = Poly::x();
    let mut i = 0;
    while rest.degree() >= 2 * (i + 1) {
        i += 1;
        h = h.powmod(q, &rest, f);
        let part = Poly::gcd(&rest, &h.sub(&Poly::x(), f), f);
        if part.degree() > 0 {
            equal_degree(&part, i, f, rng, &mut out);
            rest = rest.divrem(&part, f).0.monic(f);
            h = h.rem(&rest, f);
        }
    }
    if rest.degree() > 0 {
        out.push(rest);
    }
    out.sort_by(|a, b| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.coeffs.iter().map(|c| c.index()).cmp(b.coeffs.iter().map(|c| c.index())))
    });
    out
}

fn equal_degree<R: Rng>(g: &Poly, d: usize, f: &Field, rng: &mut R, out: &mut Vec<Poly>) {
    if g.degree() == d {
        out.push(g.clone());
        return;
    }
    let q = f.order() as u128;
    let n = g.degree();
    loop {
        let a = Poly::new((0..n).map(|_| f.from_index(rng.gen_range(0..f.order()))).collect());
        if a.degree() == 0 {
            continue;
        }
        let b = if f.p() == 2 {
            // absolute trace of F_{q^d} over F_2 applied to a
            let steps = f.n() as usize * d;
            let mut t = a.rem(g, f);
            let mut acc = t.clone();
            for _ in 1..steps {
                t = t.mul(&t, f).rem(g, f);
                acc = acc.add(&t, f);
            }
            acc
        } else {
            let e = (q.pow(d as u32) - 1) / 2;
            a.powmod(e, g, f).sub(&Poly::one(), f)
        };
        let c = Poly::gcd(g, &b, f);
        if c.degree() > 0 && c.degree() < n {
            let other = g.divrem(&c, f).0.monic(f);
            equal_degree(&c, d, f, rng, out);
            equal_degree(&other, d, f, rng, out);
            return;
        }
    }
}

pub fn is_irreducible<R: Rng>(g: &Poly, f: &Field, rng: &mut R) -> bool {
    if g.degree() == 0 {
        return false;
    }
    squarefree_part(g, f) == g.monic(f) && factor_squarefree(g, f, rng).len() == 1
}
