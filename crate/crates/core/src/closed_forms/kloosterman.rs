//! Binary Kloosterman sums and the closed-form vanishing-flat counts.

use std::str::FromStr;

use super::{gcd, TheoremId};
use crate::algebra::linearized_kernel_dim;
use crate::error::{Error, Result};
use crate::field::{Elem, Field};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KloostermanMethod {
    /// Sum of `(-1)^Tr(1/x + x)` over the field (with `1/0 = 0`).
    Direct,
    /// Closed form through the binomial expansion of `(1 ± √-7)^n`.
    Carlitz,
}

impl FromStr for KloostermanMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "direct" => Ok(KloostermanMethod::Direct),
            "carlitz" => Ok(KloostermanMethod::Carlitz),
            _ => Err(Error::OutOfRange(format!("unknown method {s:?} (direct|carlitz)"))),
        }
    }
}

/// `K_n(1)` over GF(2^n).
pub fn kloosterman(n: u32, method: KloostermanMethod) -> Result<i64> {
    match method {
        KloostermanMethod::Direct => direct_kloosterman(&Field::new(2, n)?),
        KloostermanMethod::Carlitz => carlitz_kloosterman(n),
    }
}

pub fn direct_kloosterman(field: &Field) -> Result<i64> {
    if !field.is_binary() {
        return Err(Error::NeedsCharTwo);
    }
    Ok(field
        .elements()
        .map(|x| if field.trace(field.add(field.inv(x), x)) == 0 { 1i64 } else { -1 })
        .sum())
}

fn binomial(n: u32, k: u32) -> i128 {
    (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
}

/// `1 + (-1)^(n-1) / 2^(n-1) * sum_i (-1)^i C(n, 2i) 7^i`.
pub fn carlitz_kloosterman(n: u32) -> Result<i64> {
    if n == 0 || n > 40 {
        return Err(Error::OutOfRange(format!("Carlitz form supports 1 <= n <= 40, got {n}")));
    }
    let mut sum = 0i128;
    let mut seven = 1i128;
    for i in 0..=n / 2 {
        let term = binomial(n, 2 * i) * seven;
        sum += if i % 2 == 0 { term } else { -term };
        seven *= 7;
    }
    let denom = 1i128 << (n - 1);
    if sum % denom != 0 {
        return Err(Error::InexactDivision(format!("{sum} / 2^{}", n - 1)));
    }
    let sign = if n % 2 == 1 { 1 } else { -1 };
    Ok((1 + sign * sum / denom) as i64)
}

fn exact_div(num: i128, den: i128, what: &str) -> Result<i64> {
    if num % den != 0 {
        return Err(Error::InexactDivision(format!("{what}: {num} / {den}")));
    }
    Ok((num / den) as i64)
}

/// Predicted `#S6` (the `b` with `δ_F(B) = 6`) for the odd-`n` families.
/// `low` selects the `2^(n-2) - 5` branch.
pub fn s6_count_formula(n: u32, low: bool, k: i64) -> Result<i64> {
    let c: i128 = if low { -5 } else { 1 };
    // 6 ((2^(n-2) + c)/6 - K/8) = (4 (2^(n-2) + c) - 3K) / 4
    exact_div(4 * ((1i128 << (n - 2)) + c) - 3 * k as i128, 4, "#S6")
}

/// Closed-form number of vanishing 2-flats of the family named by `id`.
///
/// `THMT` takes `t`; the other ids fix the exponent from `n`.
pub fn vanishing_count_formula(id: TheoremId, n: u32, t: Option<u32>) -> Result<i64> {
    if n < 2 || n > 30 {
        return Err(Error::OutOfRange(format!("vanishing-flat formulas need 2 <= n <= 30, got {n}")));
    }
    let q1 = (1i128 << n) - 1;
    let pow2 = |e: u32| 1i128 << e;
    match id {
        TheoremId::CF1Vb | TheoremId::CF1 => {
            let m = n / 2;
            if n % 2 != 0 || m < 2 {
                return Err(Error::hypothesis(id.name(), "needs n = 2m with m >= 2"));
            }
            let mut core = (pow2(m - 2) - 1) * (pow2(m - 1) - 1);
            if m % 2 == 1 {
                core += 1;
            }
            exact_div(core * q1, 3, "C_F1 count")
        }
        TheoremId::CF2Vb | TheoremId::CF2 | TheoremId::CF3Vb | TheoremId::CF3 => {
            if n % 2 == 0 || n < 3 {
                return Err(Error::hypothesis(id.name(), "needs n odd"));
            }
            let c = match id {
                TheoremId::CF2Vb | TheoremId::CF2 if ((n - 1) / 2) % 3 == 1 => 7,
                _ => 1,
            };
            let k = carlitz_kloosterman(n)? as i128;
            // ((2^(n-2) + c)/6 - K/8)(2^n - 1)
            exact_div((4 * (pow2(n - 2) + c) - 3 * k) * q1, 24, "vanishing count")
        }
        TheoremId::Thmt => {
            let t = t.ok_or_else(|| Error::hypothesis(id.name(), "needs t"))?;
            let field = Field::new(2, n)?;
            thmt_vanishing_count(&field, t)
        }
        _ => Err(Error::Unsupported(format!("{id} has no vanishing-flat formula"))),
    }
}

/// `(1/24) (2^n - 1) [ 2^g1(2^g1 - 2) + (2^g0 - 4)(2^g0 - 2) + sum_b (2^r(b) - 4)^+ ]`
/// where the sum runs over `b ∉ {0,1}` with `B(b) ∉ {0,1}`.
fn thmt_vanishing_count(field: &Field, t: u32) -> Result<i64> {
    let n = field.n();
    if t == 0 || t >= n {
        return Err(Error::hypothesis("THMT", format!("needs 1 <= t < n, got t = {t}")));
    }
    let g1 = gcd((t - 1) as u64, n as u64) as u32;
    let g0 = gcd(t as u64, n as u64) as u32;
    let mut inner = (1i128 << g1) * ((1i128 << g1) - 2) + ((1i128 << g0) - 4) * ((1i128 << g0) - 2);
    for b in field.nonzero_elements().filter(|&b| b != Elem::ONE) {
        let bb = super::predict::thmt_b(field, t, b);
        if bb.is_zero() || bb == Elem::ONE {
            continue;
        }
        let r = linearized_kernel_dim(field, t, bb)?;
        inner += ((1i128 << r) - 4).max(0);
    }
    exact_div(inner * ((1i128 << n) - 1), 24, "THMT count")
}
