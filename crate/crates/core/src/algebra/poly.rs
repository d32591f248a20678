//! Dense univariate polynomials over a [`Field`].

use crate::field::{Elem, Field};

/// Little-endian coefficients; the zero polynomial is empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldPoly {
    field: Field,
    coeffs: Vec<Elem>,
}

impl FieldPoly {
    pub fn new(field: &Field, mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        FieldPoly { field: field.clone(), coeffs }
    }

    pub fn x(field: &Field) -> Self {
        Self::new(field, vec![Elem::ZERO, Elem::ONE])
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: Elem) -> Elem {
        let f = &self.field;
        self.coeffs.iter().rev().fold(Elem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = &self.field;
        let len = self.coeffs.len().max(other.coeffs.len());
        let at = |v: &[Elem], i: usize| v.get(i).copied().unwrap_or(Elem::ZERO);
        let c = (0..len).map(|i| f.add(at(&self.coeffs, i), at(&other.coeffs, i))).collect();
        Self::new(f, c)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let f = &self.field;
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::new(f, vec![]);
        }
        let mut c = vec![Elem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                c[i + j] = f.add(c[i + j], f.mul(a, b));
            }
        }
        Self::new(f, c)
    }

    /// Remainder modulo a nonzero polynomial.
    pub fn rem(&self, m: &Self) -> Self {
        let f = &self.field;
        let dm = m.degree().expect("nonzero modulus");
        let lead_inv = f.inv(m.coeffs[dm]);
        let mut r = self.coeffs.clone();
        while r.len() > dm {
            let dr = r.len() - 1;
            let c = f.mul(r[dr], lead_inv);
            for (i, &mi) in m.coeffs.iter().enumerate() {
                let k = dr - dm + i;
                r[k] = f.sub(r[k], f.mul(c, mi));
            }
            r.pop();
        }
        Self::new(f, r)
    }

    pub fn mul_mod(&self, other: &Self, m: &Self) -> Self {
        self.mul(other).rem(m)
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while b.degree().is_some() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        match a.degree() {
            None => a,
            Some(d) => {
                let f = a.field.clone();
                let inv = f.inv(a.coeffs[d]);
                let c = a.coeffs.iter().map(|&c| f.mul(c, inv)).collect();
                Self::new(&f, c)
            }
        }
    }
}
