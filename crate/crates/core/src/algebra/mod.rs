//! Root counting and factorization helpers: cubics in odd characteristic,
//! quartics `X^4 + a2 X^2 + a1 X + a0` over GF(2^n), and kernels of
//! linearized polynomials.

mod poly;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::gf2::Gf2Map;

pub use poly::FieldPoly;

/// Roots of a monic cubic in odd characteristic together with its discriminant class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CubicAnalysis {
    pub roots: Vec<Elem>,
    pub discriminant: Elem,
    /// Quadratic character of the discriminant.
    pub disc_eta: i8,
}

impl CubicAnalysis {
    /// For a separable cubic: exactly one root iff the discriminant is a non-square.
    pub fn dickson_holds(&self) -> bool {
        self.discriminant.is_zero() || (self.roots.len() == 1) == (self.disc_eta == -1)
    }
}

/// Discriminant `18 c2 c1 c0 - 4 c2^3 c0 + c2^2 c1^2 - 4 c1^3 - 27 c0^2` of `X^3 + c2 X^2 + c1 X + c0`.
pub fn cubic_discriminant(f: &Field, c2: Elem, c1: Elem, c0: Elem) -> Elem {
    let k = |v: i64| f.from_int(v);
    let c2c1 = f.mul(c2, c1);
    let terms = [
        f.mul(k(18), f.mul(c2c1, c0)),
        f.neg(f.mul(k(4), f.mul(f.pow(c2, 3), c0))),
        f.square(c2c1),
        f.neg(f.mul(k(4), f.pow(c1, 3))),
        f.neg(f.mul(k(27), f.square(c0))),
    ];
    terms.into_iter().fold(Elem::ZERO, |acc, t| f.add(acc, t))
}

/// Roots of `X^3 + c2 X^2 + c1 X + c0` (exhaustive scan) and `η(disc)`.
pub fn cubic_roots_odd(f: &Field, c2: Elem, c1: Elem, c0: Elem) -> Result<CubicAnalysis> {
    if f.is_binary() {
        return Err(Error::NeedsOddCharacteristic);
    }
    let roots = f
        .elements()
        .filter(|&x| {
            let v = f.add(f.mul(f.add(f.mul(f.add(x, c2), x), c1), x), c0);
            v.is_zero()
        })
        .collect();
    let discriminant = cubic_discriminant(f, c2, c1, c0);
    Ok(CubicAnalysis { roots, discriminant, disc_eta: f.eta(discriminant)? })
}

/// Factorization pattern of a quartic (degrees of irreducible factors).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum QuarticPattern {
    /// (1,1,1,1)
    Linear4,
    /// (2,2)
    TwoQuadratics,
    /// (1,3)
    LinearCubic,
    /// (1,1,2)
    TwoLinearQuadratic,
    /// (4)
    Irreducible,
}

impl QuarticPattern {
    pub fn degrees(self) -> &'static [u32] {
        match self {
            QuarticPattern::Linear4 => &[1, 1, 1, 1],
            QuarticPattern::TwoQuadratics => &[2, 2],
            QuarticPattern::LinearCubic => &[1, 3],
            QuarticPattern::TwoLinearQuadratic => &[1, 1, 2],
            QuarticPattern::Irreducible => &[4],
        }
    }

    pub fn root_count(self) -> usize {
        self.degrees().iter().filter(|&&d| d == 1).count()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuarticAnalysis {
    pub a2: Elem,
    pub a1: Elem,
    pub a0: Elem,
    /// Roots of `Y^3 + a2 Y + a1` in the field.
    pub cubic_roots: Vec<Elem>,
    /// `a0 r^2 / a1^2` for each cubic root `r`.
    pub w_values: Vec<Elem>,
    pub pattern: QuarticPattern,
}

fn check_quartic(f: &Field, a1: Elem, a0: Elem) -> Result<()> {
    if !f.is_binary() {
        return Err(Error::NeedsCharTwo);
    }
    if a0.is_zero() || a1.is_zero() {
        return Err(Error::OutOfRange("quartic needs a0 * a1 != 0".into()));
    }
    Ok(())
}

/// Roots of the companion cubic `Y^3 + a2 Y + a1`, ascending.
pub fn companion_cubic_roots(f: &Field, a2: Elem, a1: Elem) -> Vec<Elem> {
    f.elements()
        .filter(|&y| f.add(f.mul(f.add(f.square(y), a2), y), a1).is_zero())
        .collect()
}

/// Factorization pattern of `X^4 + a2 X^2 + a1 X + a0` over GF(2^n) from the
/// companion cubic and the traces of the `w_i`.
pub fn quartic_pattern_char2(f: &Field, a2: Elem, a1: Elem, a0: Elem) -> Result<QuarticAnalysis> {
    check_quartic(f, a1, a0)?;
    let cubic_roots = companion_cubic_roots(f, a2, a1);
    let a1_sq_inv = f.inv(f.square(a1));
    let w_values: Vec<Elem> = cubic_roots
        .iter()
        .map(|&r| f.mul(f.mul(a0, f.square(r)), a1_sq_inv))
        .collect();
    let traces: Vec<u32> = w_values.iter().map(|&w| f.trace(w)).collect();
    let pattern = match cubic_roots.len() {
        // g = (1,1,1): the traces sum to zero, so either none or two are 1.
        3 if traces.iter().all(|&t| t == 0) => QuarticPattern::Linear4,
        3 => QuarticPattern::TwoQuadratics,
        1 if traces[0] == 0 => QuarticPattern::TwoLinearQuadratic,
        1 => QuarticPattern::Irreducible,
        0 => QuarticPattern::LinearCubic,
        k => unreachable!("companion cubic is separable, found {k} roots"),
    };
    Ok(QuarticAnalysis { a2, a1, a0, cubic_roots, w_values, pattern })
}

/// Roots of `X^4 + a2 X^2 + a1 X + a0` via the factorization
/// `(X^2 + rX + s)(X^2 + rX + s')` with `r` a companion-cubic root. When the
/// cubic has no root the quartic is (1,3) and its single root is found by scan.
pub fn quartic_roots_char2(f: &Field, a2: Elem, a1: Elem, a0: Elem) -> Result<Vec<Elem>> {
    check_quartic(f, a1, a0)?;
    let mut roots = Vec::new();
    match companion_cubic_roots(f, a2, a1).first() {
        Some(&r) => {
            // s + s' = a1 / r, s s' = a0.
            for s in f.solve_quadratic(Elem::ONE, f.div(a1, r), a0)? {
                roots.extend(f.solve_quadratic(Elem::ONE, r, s)?);
            }
        }
        None => {
            let quartic = FieldPoly::new(f, vec![a0, a1, a2, Elem::ZERO, Elem::ONE]);
            roots.extend(f.elements().filter(|&x| quartic.eval(x).is_zero()));
        }
    }
    roots.sort_unstable();
    roots.dedup();
    Ok(roots)
}

/// Pattern from root counting, with `gcd(f, X^(q^2) - X)` separating (2,2) from (4).
pub fn quartic_pattern_bruteforce(f: &Field, a2: Elem, a1: Elem, a0: Elem) -> Result<QuarticPattern> {
    check_quartic(f, a1, a0)?;
    let quartic = FieldPoly::new(f, vec![a0, a1, a2, Elem::ZERO, Elem::ONE]);
    let roots = f.elements().filter(|&x| quartic.eval(x).is_zero()).count();
    Ok(match roots {
        4 => QuarticPattern::Linear4,
        2 => QuarticPattern::TwoLinearQuadratic,
        1 => QuarticPattern::LinearCubic,
        0 => {
            // X^(q^2) by 2n squarings of X modulo the quartic.
            let mut xp = FieldPoly::x(f);
            for _ in 0..2 * f.n() {
                xp = xp.mul_mod(&xp, &quartic);
            }
            let g = quartic.gcd(&xp.add(&FieldPoly::x(f)));
            if g.degree() == Some(4) {
                QuarticPattern::TwoQuadratics
            } else {
                QuarticPattern::Irreducible
            }
        }
        k => unreachable!("separable quartic with {k} roots"),
    })
}

/// `dim ker (x -> x^(2^t) + B x^2 + (B+1) x)` over Z_2.
pub fn linearized_kernel_dim(f: &Field, t: u32, b: Elem) -> Result<u32> {
    if !f.is_binary() {
        return Err(Error::NeedsCharTwo);
    }
    if t == 0 || t >= f.n() {
        return Err(Error::OutOfRange(format!("need 1 <= t < n, got t={t}, n={}", f.n())));
    }
    Ok(linearized_map(f, t, b).kernel_dim() as u32)
}

pub(crate) fn linearized_map(f: &Field, t: u32, b: Elem) -> Gf2Map {
    let b1 = f.add(b, Elem::ONE);
    let cols = (0..f.n())
        .map(|i| {
            let e = Elem(1 << i);
            let mut et = e;
            for _ in 0..t {
                et = f.square(et);
            }
            f.add(f.add(et, f.mul(b, f.square(e))), f.mul(b1, e)).index() as u64
        })
        .collect();
    Gf2Map::from_columns(f.n() as usize, cols)
}

#[cfg(test)]
mod tests;
