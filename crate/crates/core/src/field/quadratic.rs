//! Square roots, quadratic equations and a few distinguished elements.

use super::{Elem, Field};
use crate::error::{Error, Result};
use crate::gf2::Gf2Map;

/// Query for [`Field::special_elements`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpecialQuery {
    /// `1` together with the roots of `X^2 + X + 1`.
    CubeRootsOfUnity,
    /// An element of exact multiplicative order `m`.
    PrimitiveRoot(u64),
    /// Whether `x` lies in GF(p^m), i.e. `x^(p^m) = x`.
    SubfieldMember(Elem, u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Special {
    Elements(Vec<Elem>),
    Flag(bool),
}

impl Field {
    /// A square root of `x`, or `None` for non-squares. In odd
    /// characteristic the root with the smaller index is returned.
    pub fn sqrt(&self, x: Elem) -> Option<Elem> {
        if x.is_zero() {
            return Some(x);
        }
        if self.is_binary() {
            return Some(self.pow(x, self.q() as i128 / 2));
        }
        if self.eta(x).ok()? != 1 {
            return None;
        }
        let r = self.tonelli_shanks(x);
        let s = self.neg(r);
        Some(r.min(s))
    }

    fn tonelli_shanks(&self, x: Elem) -> Elem {
        let order = self.q() as i128 - 1;
        let s = order.trailing_zeros();
        let odd = order >> s;
        let z = self
            .nonzero_elements()
            .find(|&z| self.eta(z) == Ok(-1))
            .expect("odd-order fields contain non-squares");
        let mut m = s;
        let mut c = self.pow(z, odd);
        let mut t = self.pow(x, odd);
        let mut r = self.pow(x, (odd + 1) / 2);
        while t != Elem::ONE {
            let mut i = 0u32;
            let mut t2 = t;
            while t2 != Elem::ONE {
                t2 = self.square(t2);
                i += 1;
            }
            let mut b = c;
            for _ in 0..m - i - 1 {
                b = self.square(b);
            }
            m = i;
            c = self.square(b);
            t = self.mul(t, c);
            r = self.mul(r, b);
        }
        r
    }

    /// `sum_{i=0}^{(n-1)/2} c^(4^i)`, a root of `Y^2 + Y = c` when `n` is
    /// odd and `Tr(c) = 0`.
    pub fn half_trace(&self, c: Elem) -> Elem {
        let mut acc = Elem::ZERO;
        let mut y = c;
        for _ in 0..=(self.n() - 1) / 2 {
            acc = self.add(acc, y);
            y = self.square(self.square(y));
        }
        acc
    }

    /// The linear map `y -> y^2 + y` of GF(2^n) over Z_2.
    fn artin_schreier_map(&self) -> Gf2Map {
        let cols = (0..self.n())
            .map(|i| {
                let e = Elem(1 << i);
                self.add(self.square(e), e).0 as u64
            })
            .collect();
        Gf2Map::from_columns(self.n() as usize, cols)
    }

    /// One root of `Y^2 + Y = c` in characteristic 2 (the other is that root
    /// plus 1), or `None` when `Tr(c) = 1`.
    pub fn solve_artin_schreier(&self, c: Elem) -> Option<Elem> {
        debug_assert!(self.is_binary());
        if self.trace(c) != 0 {
            return None;
        }
        if self.n() % 2 == 1 {
            Some(self.half_trace(c))
        } else {
            self.artin_schreier_map().solve(c.0 as u64).map(|y| Elem(y as u32))
        }
    }

    /// All roots of `A X^2 + B X + C`, ascending by index.
    pub fn solve_quadratic(&self, a: Elem, b: Elem, c: Elem) -> Result<Vec<Elem>> {
        if a.is_zero() {
            return Err(Error::ZeroLeadingCoefficient);
        }
        let mut roots = if self.is_binary() {
            if b.is_zero() {
                vec![self.sqrt(self.div(c, a)).expect("squaring is bijective")]
            } else {
                // X = (B/A) Y turns the equation into Y^2 + Y = AC/B^2.
                let scale = self.div(b, a);
                let k = self.div(self.mul(a, c), self.square(b));
                match self.solve_artin_schreier(k) {
                    None => vec![],
                    Some(y) => vec![self.mul(scale, y), self.mul(scale, self.add(y, Elem::ONE))],
                }
            }
        } else {
            let two_a = self.add(a, a);
            let disc = self.sub(self.square(b), self.mul(self.from_int(4), self.mul(a, c)));
            match self.sqrt(disc) {
                None => vec![],
                Some(s) => {
                    let nb = self.neg(b);
                    vec![
                        self.div(self.add(nb, s), two_a),
                        self.div(self.sub(nb, s), two_a),
                    ]
                }
            }
        };
        roots.sort_unstable();
        roots.dedup();
        Ok(roots)
    }

    /// `{1}` plus the roots of `X^2 + X + 1`, ascending.
    pub fn cube_roots_of_unity(&self) -> Vec<Elem> {
        let mut v = self
            .solve_quadratic(Elem::ONE, Elem::ONE, Elem::ONE)
            .expect("monic");
        v.push(Elem::ONE);
        v.sort_unstable();
        v.dedup();
        v
    }

    /// `g^((q-1)/m)` for the fixed generator `g`.
    pub fn primitive_root_of_unity(&self, m: u64) -> Result<Elem> {
        let order = self.q() as u64 - 1;
        if m == 0 || order % m != 0 {
            return Err(Error::NoRootOfUnity { m, order });
        }
        Ok(self.pow(self.generator(), (order / m) as i128))
    }

    /// Whether `x^(p^m) = x`.
    pub fn in_subfield(&self, x: Elem, m: u32) -> Result<bool> {
        if m == 0 {
            return Err(Error::OutOfRange("subfield degree must be at least 1".into()));
        }
        let mut y = x;
        for _ in 0..m {
            y = self.frobenius(y);
        }
        Ok(y == x)
    }

    pub fn special_elements(&self, query: SpecialQuery) -> Result<Special> {
        Ok(match query {
            SpecialQuery::CubeRootsOfUnity => Special::Elements(self.cube_roots_of_unity()),
            SpecialQuery::PrimitiveRoot(m) => {
                Special::Elements(vec![self.primitive_root_of_unity(m)?])
            }
            SpecialQuery::SubfieldMember(x, m) => Special::Flag(self.in_subfield(x, m)?),
        })
    }
}
