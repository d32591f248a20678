//! Exhaustive DDT and FBCT (second-order zero differential) spectra.
//!
//! Domains follow the usual conventions: the DDT maximum runs over `a != 0`;
//! the FBCT maximum runs over `a, b != 0` and, in characteristic 2, also
//! `a != b`. Cells outside the domain are kept in a separate histogram.

use std::collections::BTreeMap;
use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Elem, Field, FieldSpec};
use crate::function::FunctionUnderTest;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SpectrumKind {
    Ddt,
    Fbct,
}

/// How an FBCT is filled.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FillMethod {
    /// Row reduction for monomials, entry-wise otherwise.
    Auto,
    /// Every cell scanned independently.
    EntryWise,
    /// `∇(a,b) = ∇(1, b/a)`; monomials only.
    MonomialRow,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HistogramEntry {
    pub value: u32,
    pub count: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumReport {
    pub field: FieldSpec,
    pub function: String,
    pub kind: SpectrumKind,
    /// Cells in the domain of the maximum, ascending by value.
    pub histogram: Vec<HistogramEntry>,
    /// Cells outside that domain (first row/column, and the diagonal in characteristic 2).
    pub trivial: Vec<HistogramEntry>,
    pub uniformity: u32,
    pub beta: Option<u32>,
    #[serde(skip)]
    pub full_table: Option<Vec<u32>>,
}

impl SpectrumReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn count_of(&self, value: u32) -> u64 {
        self.histogram.iter().find(|e| e.value == value).map_or(0, |e| e.count)
    }

    pub fn values(&self) -> Vec<u32> {
        self.histogram.iter().map(|e| e.value).collect()
    }

    /// `a,b,value` rows in enumeration order; needs the full table.
    pub fn write_csv<W: Write>(&self, field: &Field, out: W) -> Result<()> {
        let table = self
            .full_table
            .as_ref()
            .ok_or_else(|| Error::Unsupported("CSV output needs the full table (--keep-table)".into()))?;
        let q = field.q() as usize;
        let mut w = csv::Writer::from_writer(out);
        let io = |e: csv::Error| Error::Io(e.to_string());
        w.write_record(["a", "b", "value"]).map_err(io)?;
        for (i, v) in table.iter().enumerate() {
            let a = field.format_element(Elem((i / q) as u32));
            let b = field.format_element(Elem((i % q) as u32));
            w.write_record([a, b, v.to_string()]).map_err(io)?;
        }
        w.flush()?;
        Ok(())
    }
}

fn to_entries(map: BTreeMap<u32, u64>) -> Vec<HistogramEntry> {
    map.into_iter().map(|(value, count)| HistogramEntry { value, count }).collect()
}

fn merge(mut a: BTreeMap<u32, u64>, b: BTreeMap<u32, u64>) -> BTreeMap<u32, u64> {
    for (k, v) in b {
        *a.entry(k).or_insert(0) += v;
    }
    a
}

/// `#{x : F(x+a) - F(x) = b}`.
pub fn ddt_entry(f: &FunctionUnderTest, a: Elem, b: Elem) -> u32 {
    let fld = f.field();
    let v = f.values();
    fld.elements()
        .filter(|&x| fld.sub(v[fld.add(x, a).index() as usize], v[x.index() as usize]) == b)
        .count() as u32
}

/// `δ_F(a, ·)` for every `b`, in one pass over `x`.
pub fn ddt_row(f: &FunctionUnderTest, a: Elem) -> Vec<u32> {
    let fld = f.field();
    let v = f.values();
    let mut row = vec![0u32; fld.q() as usize];
    for x in fld.elements() {
        let d = fld.sub(v[fld.add(x, a).index() as usize], v[x.index() as usize]);
        row[d.index() as usize] += 1;
    }
    row
}

/// `max { δ_F(a,b) : a != 0 }`.
pub fn differential_uniformity(f: &FunctionUnderTest) -> u32 {
    f.values();
    f.field()
        .nonzero_elements()
        .par_bridge()
        .map(|a| ddt_row(f, a).into_iter().max().unwrap_or(0))
        .max()
        .unwrap_or(0)
}

/// `#{x : F(x+a+b) - F(x+b) - F(x+a) + F(x) = 0}`.
pub fn fbct_entry(f: &FunctionUnderTest, a: Elem, b: Elem) -> u32 {
    fbct_entry_values(f.field(), f.values(), a, b)
}

#[inline]
fn fbct_entry_values(fld: &Field, v: &[Elem], a: Elem, b: Elem) -> u32 {
    let at = |y: Elem| v[y.index() as usize];
    if fld.is_binary() {
        let (a, b) = (a.index(), b.index());
        let ab = a ^ b;
        (0..fld.q())
            .filter(|&x| {
                let s = v[(x ^ ab) as usize].index()
                    ^ v[(x ^ b) as usize].index()
                    ^ v[(x ^ a) as usize].index()
                    ^ v[x as usize].index();
                s == 0
            })
            .count() as u32
    } else {
        fld.elements()
            .filter(|&x| {
                let xa = fld.add(x, a);
                let xb = fld.add(x, b);
                let xab = fld.add(xa, b);
                fld.add(at(xab), at(x)) == fld.add(at(xb), at(xa))
            })
            .count() as u32
    }
}

/// `∇_F(a, ·)` for every `b`.
pub fn fbct_row(f: &FunctionUnderTest, a: Elem) -> Vec<u32> {
    let fld = f.field();
    let v = f.values();
    fld.elements().map(|b| fbct_entry_values(fld, v, a, b)).collect()
}

/// `∇_F(1, b)` for a monomial `F`.
pub fn monomial_row(f: &FunctionUnderTest, b: Elem) -> Result<u32> {
    if !f.is_monomial() {
        return Err(Error::InvalidFunction(format!(
            "row reduction needs a monomial, got {}",
            f.describe()
        )));
    }
    Ok(fbct_entry(f, Elem::ONE, b))
}

/// `∇_F(1, b)` for all `b`, computed in parallel.
pub fn monomial_row_all(f: &FunctionUnderTest) -> Result<Vec<u32>> {
    monomial_row(f, Elem::ZERO)?;
    let fld = f.field();
    let v = f.values();
    Ok((0..fld.q())
        .into_par_iter()
        .map(|b| fbct_entry_values(fld, v, Elem::ONE, Elem(b)))
        .collect())
}

/// Whether `(a, b)` lies in the domain of the FBCT maximum.
#[inline]
pub fn in_fbct_domain(field: &Field, a: Elem, b: Elem) -> bool {
    !a.is_zero() && !b.is_zero() && !(field.is_binary() && a == b)
}

/// The full FBCT, row-major (`a * q + b`).
pub fn fbct_table(f: &FunctionUnderTest, method: FillMethod) -> Result<Vec<u32>> {
    let fld = f.field();
    let q = fld.q() as usize;
    let use_row = match method {
        FillMethod::Auto => f.is_monomial(),
        FillMethod::EntryWise => false,
        FillMethod::MonomialRow => true,
    };
    if use_row {
        let row = monomial_row_all(f)?;
        let mut table = vec![0u32; q * q];
        table
            .par_chunks_mut(q)
            .enumerate()
            .for_each(|(a, out)| {
                let a = Elem(a as u32);
                if a.is_zero() {
                    out.fill(fld.q());
                    return;
                }
                let ainv = fld.inv(a);
                for (b, cell) in out.iter_mut().enumerate() {
                    *cell = row[fld.mul(Elem(b as u32), ainv).index() as usize];
                }
            });
        Ok(table)
    } else {
        f.values();
        let rows: Vec<Vec<u32>> = (0..fld.q())
            .into_par_iter()
            .map(|a| fbct_row(f, Elem(a)))
            .collect();
        Ok(rows.concat())
    }
}

/// FBCT histogram, `∇_F` and (in characteristic 2) `β_F`.
pub fn fbct_spectrum(f: &FunctionUnderTest, keep_table: bool) -> SpectrumReport {
    fbct_spectrum_with(f, keep_table, FillMethod::Auto).expect("auto method always applies")
}

pub fn fbct_spectrum_with(
    f: &FunctionUnderTest,
    keep_table: bool,
    method: FillMethod,
) -> Result<SpectrumReport> {
    let fld = f.field();
    let q = fld.q();
    let reduced = match method {
        FillMethod::Auto => f.is_monomial(),
        FillMethod::EntryWise => false,
        FillMethod::MonomialRow => true,
    };
    let (hist, trivial, table) = if reduced && !keep_table {
        // Every nonzero row is a permutation of ∇(1, ·), so counting that
        // row once and scaling by q - 1 gives the histogram in O(q^2).
        let row = monomial_row_all(f)?;
        let mut hist = BTreeMap::new();
        let mut trivial = BTreeMap::new();
        *trivial.entry(q).or_insert(0) += q as u64;
        for (b, &v) in row.iter().enumerate() {
            let target = if in_fbct_domain(fld, Elem::ONE, Elem(b as u32)) {
                &mut hist
            } else {
                &mut trivial
            };
            *target.entry(v).or_insert(0) += q as u64 - 1;
        }
        (hist, trivial, None)
    } else {
        let table = fbct_table(f, method)?;
        let (hist, trivial) = table
            .par_chunks(q as usize)
            .enumerate()
            .map(|(a, row)| {
                let mut h = BTreeMap::new();
                let mut t = BTreeMap::new();
                for (b, &v) in row.iter().enumerate() {
                    let target = if in_fbct_domain(fld, Elem(a as u32), Elem(b as u32)) {
                        &mut h
                    } else {
                        &mut t
                    };
                    *target.entry(v).or_insert(0u64) += 1;
                }
                (h, t)
            })
            .reduce(
                || (BTreeMap::new(), BTreeMap::new()),
                |(h1, t1), (h2, t2)| (merge(h1, h2), merge(t1, t2)),
            );
        (hist, trivial, keep_table.then_some(table))
    };
    let uniformity = hist.keys().next_back().copied().unwrap_or(0);
    Ok(SpectrumReport {
        field: fld.spec().clone(),
        function: f.describe(),
        kind: SpectrumKind::Fbct,
        histogram: to_entries(hist),
        trivial: to_entries(trivial),
        uniformity,
        beta: fld.is_binary().then_some(uniformity),
        full_table: table,
    })
}

/// DDT histogram over `a != 0` and `δ_F`.
pub fn ddt_spectrum(f: &FunctionUnderTest, keep_table: bool) -> SpectrumReport {
    let fld = f.field();
    let q = fld.q();
    f.values();
    let rows: Vec<Vec<u32>> = (0..q).into_par_iter().map(|a| ddt_row(f, Elem(a))).collect();
    let mut hist = BTreeMap::new();
    let mut trivial = BTreeMap::new();
    for (a, row) in rows.iter().enumerate() {
        let target = if a == 0 { &mut trivial } else { &mut hist };
        for &v in row {
            *target.entry(v).or_insert(0u64) += 1;
        }
    }
    let uniformity = hist.keys().next_back().copied().unwrap_or(0);
    SpectrumReport {
        field: fld.spec().clone(),
        function: f.describe(),
        kind: SpectrumKind::Ddt,
        histogram: to_entries(hist),
        trivial: to_entries(trivial),
        uniformity,
        beta: None,
        full_table: keep_table.then(|| rows.concat()),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub differential_uniformity: u32,
    pub is_pn: bool,
    pub is_apn: bool,
    /// Only defined for monomials in characteristic 2.
    pub is_locally_apn: Option<bool>,
    pub is_gapn: bool,
}

pub fn classify(f: &FunctionUnderTest) -> Classification {
    let fld = f.field();
    let delta = differential_uniformity(f);
    let is_locally_apn = (fld.is_binary() && f.is_monomial()).then(|| {
        let row = ddt_row(f, Elem::ONE);
        row.iter().skip(2).copied().max().unwrap_or(0) == 2
    });
    let is_gapn = fld.nonzero_elements().par_bridge().all(|a| {
        let mut counts = vec![0u32; fld.q() as usize];
        for x in fld.elements() {
            counts[f.gapn_derivative(a, x).index() as usize] += 1;
        }
        counts.into_iter().all(|c| c <= fld.p())
    });
    Classification {
        differential_uniformity: delta,
        is_pn: !fld.is_binary() && delta == 1,
        is_apn: delta == 2,
        is_locally_apn,
        is_gapn,
    }
}
