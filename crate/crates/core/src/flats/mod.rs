//! Vanishing 2-flats and k-th order sum-freedom over GF(2^n).

use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::function::FunctionUnderTest;
use crate::spectra::fbct_spectrum;

/// Number of 2-dimensional affine subspaces of GF(2^n).
pub fn count_two_flats(n: u32) -> Result<u128> {
    if n < 2 {
        return Err(Error::OutOfRange(format!("2-flats need n >= 2, got {n}")));
    }
    if n > 40 {
        return Err(Error::OutOfRange(format!("n = {n} is too large")));
    }
    let q = 1u128 << n;
    Ok(q * (q - 1) * (q - 2) / 24)
}

/// A 4-set `x1 < x2 < x3 < x4` with `x1 + x2 + x3 + x4 = 0`.
pub type Block = [Elem; 4];

#[derive(Clone, Debug, Serialize)]
pub struct FlatReport {
    pub n: u32,
    pub total_two_flats: u128,
    pub vanishing_count: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub listing: Option<Vec<Block>>,
}

impl FlatReport {
    /// One block per line, `e1|e2|e3|e4`.
    pub fn write_listing<W: Write>(&self, field: &Field, mut out: W) -> Result<()> {
        for block in self.listing.iter().flatten() {
            let parts: Vec<String> = block.iter().map(|&e| field.format_element(e)).collect();
            writeln!(out, "{}", parts.join("|"))?;
        }
        Ok(())
    }
}

fn require_binary(field: &Field) -> Result<()> {
    if field.is_binary() {
        Ok(())
    } else {
        Err(Error::NeedsCharTwo)
    }
}

/// Counts (and optionally lists) the vanishing flats of `F`.
///
/// Each unordered block is produced once, from `x1 < x2 < x3` with
/// `x4 = x1 + x2 + x3 > x3`.
pub fn vanishing_flats(f: &FunctionUnderTest, list: bool) -> Result<FlatReport> {
    let field = f.field();
    require_binary(field)?;
    let total_two_flats = count_two_flats(field.n())?;
    let q = field.q();
    let v: Vec<u32> = f.values().iter().map(|e| e.index()).collect();
    let per_x1 = |x1: u32| -> (u64, Vec<Block>) {
        let mut count = 0u64;
        let mut blocks = Vec::new();
        for x2 in x1 + 1..q {
            let s = x1 ^ x2;
            let target = v[x1 as usize] ^ v[x2 as usize];
            for x3 in x2 + 1..q {
                let x4 = s ^ x3;
                if x4 > x3 && v[x3 as usize] ^ v[x4 as usize] == target {
                    count += 1;
                    if list {
                        blocks.push([Elem(x1), Elem(x2), Elem(x3), Elem(x4)]);
                    }
                }
            }
        }
        (count, blocks)
    };
    let parts: Vec<(u64, Vec<Block>)> = (0..q).into_par_iter().map(per_x1).collect();
    let vanishing_count = parts.iter().map(|p| p.0).sum();
    let listing = list.then(|| parts.into_iter().flat_map(|p| p.1).collect());
    Ok(FlatReport { n: field.n(), total_two_flats, vanishing_count, listing })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PropIdentity {
    /// `sum FB_F(a,b)` over `a, b != 0`, `a != b`.
    pub fbct_sum: u128,
    pub vanishing_count: u64,
    pub holds: bool,
}

/// Compares `sum FB_F(a,b)` (from the FBCT) with `24 #VB` (from enumeration).
pub fn check_prop_identity(f: &FunctionUnderTest) -> Result<PropIdentity> {
    require_binary(f.field())?;
    let spectrum = fbct_spectrum(f, false);
    let fbct_sum = spectrum
        .histogram
        .iter()
        .map(|e| e.value as u128 * e.count as u128)
        .sum();
    let vanishing_count = vanishing_flats(f, false)?.vanishing_count;
    Ok(PropIdentity {
        fbct_sum,
        vanishing_count,
        holds: fbct_sum == 24 * vanishing_count as u128,
    })
}

/// `offset + span(basis)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AffineFlat {
    pub offset: Elem,
    pub basis: Vec<Elem>,
}

impl AffineFlat {
    pub fn points(&self) -> Vec<Elem> {
        let mut pts = Vec::with_capacity(1 << self.basis.len());
        for mask in 0u32..1 << self.basis.len() {
            let mut x = self.offset.index();
            for (i, b) in self.basis.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    x ^= b.index();
                }
            }
            pts.push(Elem(x));
        }
        pts
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SumFreeResult {
    pub k: u32,
    pub sum_free: bool,
    /// First flat (in enumeration order) whose value-sum is zero.
    pub witness: Option<AffineFlat>,
    pub flats_checked: u64,
}

/// Bases, in reduced row-echelon form, of every `k`-dimensional subspace of
/// `Z_2^n`, each subspace exactly once. Row `i` has its pivot at its lowest
/// set bit, and no other row has that bit set.
pub fn subspace_bases(n: u32, k: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut pivots = Vec::with_capacity(k as usize);
    choose_pivots(n, k, 0, &mut pivots, &mut out);
    out
}

fn choose_pivots(n: u32, k: u32, start: u32, pivots: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if pivots.len() == k as usize {
        fill_free_entries(n, pivots, out);
        return;
    }
    for p in start..n {
        pivots.push(p);
        choose_pivots(n, k, p + 1, pivots, out);
        pivots.pop();
    }
}

fn fill_free_entries(n: u32, pivots: &[u32], out: &mut Vec<Vec<u32>>) {
    let pivot_mask: u32 = pivots.iter().map(|&p| 1u32 << p).sum();
    // Free positions of row i: non-pivot columns above its pivot.
    let free: Vec<Vec<u32>> = pivots
        .iter()
        .map(|&p| (p + 1..n).filter(|&c| pivot_mask >> c & 1 == 0).collect())
        .collect();
    let total_bits: usize = free.iter().map(Vec::len).sum();
    for assignment in 0u64..1 << total_bits {
        let mut bit = 0;
        let basis = pivots
            .iter()
            .zip(&free)
            .map(|(&p, cols)| {
                let mut row = 1u32 << p;
                for &c in cols {
                    if assignment >> bit & 1 == 1 {
                        row |= 1 << c;
                    }
                    bit += 1;
                }
                row
            })
            .collect();
        out.push(basis);
    }
}

/// Tests whether `sum_{x in A} F(x) != 0` for every `k`-dimensional affine
/// subspace `A`. Cosets are represented by vectors vanishing on the pivot
/// coordinates, so each flat is visited once.
pub fn is_kth_sum_free(f: &FunctionUnderTest, k: u32) -> Result<SumFreeResult> {
    let field = f.field();
    require_binary(field)?;
    let n = field.n();
    if k < 2 || k > n {
        return Err(Error::OutOfRange(format!("need 2 <= k <= n, got k={k}, n={n}")));
    }
    let v: Vec<u32> = f.values().iter().map(|e| e.index()).collect();
    let mut checked = 0u64;
    for basis in subspace_bases(n, k) {
        let pivot_mask: u32 = basis.iter().map(|r| 1u32 << r.trailing_zeros()).sum();
        let span = span_of(&basis);
        let free_bits: Vec<u32> = (0..n).filter(|&c| pivot_mask >> c & 1 == 0).collect();
        for m in 0u32..1 << free_bits.len() {
            let offset = free_bits
                .iter()
                .enumerate()
                .filter(|(i, _)| m >> i & 1 == 1)
                .fold(0u32, |acc, (_, &c)| acc | 1 << c);
            checked += 1;
            let sum = span.iter().fold(0u32, |acc, &s| acc ^ v[(offset ^ s) as usize]);
            if sum == 0 {
                return Ok(SumFreeResult {
                    k,
                    sum_free: false,
                    witness: Some(AffineFlat {
                        offset: Elem(offset),
                        basis: basis.iter().map(|&b| Elem(b)).collect(),
                    }),
                    flats_checked: checked,
                });
            }
        }
    }
    Ok(SumFreeResult { k, sum_free: true, witness: None, flats_checked: checked })
}

fn span_of(basis: &[u32]) -> Vec<u32> {
    let mut span = vec![0u32];
    for &b in basis {
        let ext: Vec<u32> = span.iter().map(|&s| s ^ b).collect();
        span.extend(ext);
    }
    span
}

#[cfg(test)]
mod tests;
