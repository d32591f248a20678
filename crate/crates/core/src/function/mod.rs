//! Functions under analysis and their difference operators.

mod expr;

use std::fmt;
use std::path::Path;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};

pub use expr::{eval_expr, ExprVars};

/// The shape of a function under test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FunctionKind {
    /// `X^d`, with `0^d` following the `0^(-1) = 0` convention.
    Monomial { d: i128 },
    /// `X^(-1) + Tr(X^2 / (X + 1))` over GF(2^n).
    InversePlusTrace,
    /// `1 / (X + γ Tr(X^(2^t + 1)))` over GF(2^n).
    GammaTraceInverse { t: u32, gamma: Elem },
    /// Explicit lookup table in enumeration order.
    Table(Vec<Elem>),
}

/// A validated function bound to its field, tabulated on first use.
#[derive(Clone)]
pub struct FunctionUnderTest {
    field: Field,
    kind: FunctionKind,
    values: OnceLock<Vec<Elem>>,
}

impl fmt::Debug for FunctionUnderTest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {:?}", self.describe(), self.field)
    }
}

impl PartialEq for FunctionUnderTest {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.kind == other.kind
    }
}

impl FunctionUnderTest {
    pub fn monomial(field: &Field, d: i128) -> Self {
        Self::from_kind(field, FunctionKind::Monomial { d })
    }

    pub fn inverse_plus_trace(field: &Field) -> Result<Self> {
        if !field.is_binary() {
            return Err(Error::NeedsCharTwo);
        }
        Ok(Self::from_kind(field, FunctionKind::InversePlusTrace))
    }

    /// Checks `0 < t < n`, `γ ≠ 0`, `γ^(2^(2t)) = γ` and `Tr(γ^(2^t+1)) = 0`.
    pub fn gamma_trace_inverse(field: &Field, t: u32, gamma: Elem) -> Result<Self> {
        if !field.is_binary() {
            return Err(Error::NeedsCharTwo);
        }
        if let Some(reason) = gamma_violation(field, t, gamma) {
            return Err(Error::InvalidFunction(reason));
        }
        Ok(Self::from_kind(field, FunctionKind::GammaTraceInverse { t, gamma }))
    }

    pub fn table(field: &Field, values: Vec<Elem>) -> Result<Self> {
        if values.len() != field.q() as usize {
            return Err(Error::InvalidFunction(format!(
                "table has {} entries, field has {}",
                values.len(),
                field.q()
            )));
        }
        if let Some(v) = values.iter().find(|v| v.index() >= field.q()) {
            return Err(Error::InvalidFunction(format!("table entry {} out of range", v.index())));
        }
        let f = Self::from_kind(field, FunctionKind::Table(values.clone()));
        let _ = f.values.set(values);
        Ok(f)
    }

    /// Reads one element encoding per line; blank lines are ignored.
    pub fn table_from_file(field: &Field, path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let values = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(|l| field.parse_element(l))
            .collect::<Result<Vec<_>>>()?;
        Self::table(field, values)
    }

    /// Pseudo-random table from a seeded generator.
    pub fn random_table(field: &Field, rng: &mut impl rand::Rng) -> Self {
        let q = field.q();
        let values = (0..q).map(|_| Elem(rng.gen_range(0..q))).collect();
        Self::table(field, values).expect("entries in range")
    }

    fn from_kind(field: &Field, kind: FunctionKind) -> Self {
        FunctionUnderTest { field: field.clone(), kind, values: OnceLock::new() }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn kind(&self) -> &FunctionKind {
        &self.kind
    }

    /// Canonical monomial exponent in `[1, q-1]` (or 0 for the constant 1).
    pub fn exponent(&self) -> Option<u32> {
        match self.kind {
            FunctionKind::Monomial { d } => Some(canonical_exponent(d, self.field.q())),
            _ => None,
        }
    }

    pub fn is_monomial(&self) -> bool {
        matches!(self.kind, FunctionKind::Monomial { .. })
    }

    /// Text form accepted back by [`parse_function`] (tables excepted).
    pub fn describe(&self) -> String {
        match &self.kind {
            FunctionKind::Monomial { .. } => format!("monomial:d={}", self.exponent().unwrap()),
            FunctionKind::InversePlusTrace => "inv-plus-trace".into(),
            FunctionKind::GammaTraceInverse { t, gamma } => format!(
                "gamma-trace-inverse:t={t},gamma={}",
                self.field.format_element(*gamma)
            ),
            FunctionKind::Table(_) => "table".into(),
        }
    }

    /// Direct evaluation, bypassing the tabulation.
    pub fn eval_direct(&self, x: Elem) -> Elem {
        let f = &self.field;
        match &self.kind {
            FunctionKind::Monomial { d } => f.pow(x, *d),
            FunctionKind::InversePlusTrace => {
                let inner = f.mul(f.square(x), f.inv(f.add(x, Elem::ONE)));
                f.add(f.inv(x), Elem(f.trace(inner)))
            }
            FunctionKind::GammaTraceInverse { t, gamma } => {
                let e = (1i128 << t) + 1;
                let shift = if f.trace(f.pow(x, e)) == 1 { *gamma } else { Elem::ZERO };
                f.inv(f.add(x, shift))
            }
            FunctionKind::Table(v) => v[x.index() as usize],
        }
    }

    /// All values in enumeration order.
    pub fn values(&self) -> &[Elem] {
        self.values
            .get_or_init(|| self.field.elements().map(|x| self.eval_direct(x)).collect())
    }

    #[inline]
    pub fn eval(&self, x: Elem) -> Elem {
        self.values()[x.index() as usize]
    }

    /// `F(x+a+b) - F(x+b) - F(x+a) + F(x)`.
    #[inline]
    pub fn second_order_diff(&self, a: Elem, b: Elem, x: Elem) -> Elem {
        second_order_diff(&self.field, self.values(), a, b, x)
    }

    /// `sum_{i in F_p} F(x + a i)`.
    pub fn gapn_derivative(&self, a: Elem, x: Elem) -> Elem {
        let f = &self.field;
        let v = self.values();
        (0..f.p()).fold(Elem::ZERO, |acc, i| {
            let y = f.add(x, f.mul(a, Elem(i)));
            f.add(acc, v[y.index() as usize])
        })
    }
}

/// Second-order difference against a value table.
#[inline]
pub fn second_order_diff(f: &Field, v: &[Elem], a: Elem, b: Elem, x: Elem) -> Elem {
    let xa = f.add(x, a);
    let xb = f.add(x, b);
    let xab = f.add(xa, b);
    let at = |y: Elem| v[y.index() as usize];
    if f.is_binary() {
        Elem(at(xab).0 ^ at(xb).0 ^ at(xa).0 ^ at(x).0)
    } else {
        f.add(f.sub(at(xab), f.add(at(xb), at(xa))), at(x))
    }
}

/// Representative of `d` used for reporting: `((d-1) mod (q-1)) + 1`, or 0 for `d = 0`.
pub fn canonical_exponent(d: i128, q: u32) -> u32 {
    if d == 0 {
        0
    } else {
        ((d - 1).rem_euclid(q as i128 - 1) + 1) as u32
    }
}

/// Why `(t, γ)` is not admissible for the γ-trace-inverse family, if it is not.
pub fn gamma_violation(field: &Field, t: u32, gamma: Elem) -> Option<String> {
    let n = field.n();
    if t == 0 || t >= n {
        return Some(format!("need 0 < t < n, got t={t}, n={n}"));
    }
    if gamma.is_zero() {
        return Some("gamma must be nonzero".into());
    }
    let mut y = gamma;
    for _ in 0..2 * t {
        y = field.square(y);
    }
    if y != gamma {
        return Some(format!("gamma^(2^{}) != gamma", 2 * t));
    }
    if field.trace(field.pow(gamma, (1i128 << t) + 1)) != 0 {
        return Some(format!("Tr(gamma^(2^{t}+1)) != 0"));
    }
    None
}

/// Every admissible `(t, γ)` for the γ-trace-inverse family over GF(2^n).
pub fn admissible_gammas(field: &Field) -> Vec<(u32, Elem)> {
    (1..field.n())
        .flat_map(|t| field.nonzero_elements().map(move |g| (t, g)))
        .filter(|&(t, g)| gamma_violation(field, t, g).is_none())
        .collect()
}

/// Parses the function grammar:
/// `monomial:d=<formula>`, `inv-plus-trace`,
/// `gamma-trace-inverse:t=<int>,gamma=<coeffs>`, `table:@<path>`.
///
/// `k` and `t` in exponent formulas come from `extra`; `p`, `q`, `n` from the field.
pub fn parse_function(field: &Field, text: &str, extra: &ExprVars) -> Result<FunctionUnderTest> {
    let text = text.trim();
    let (head, rest) = text.split_once(':').unwrap_or((text, ""));
    match head {
        "monomial" => {
            let formula = rest
                .strip_prefix("d=")
                .ok_or_else(|| Error::InvalidFunction(format!("expected monomial:d=<exponent>, got {text:?}")))?;
            let vars = ExprVars {
                p: Some(field.p() as i128),
                q: Some(field.q() as i128),
                n: Some(field.n() as i128),
                ..*extra
            };
            Ok(FunctionUnderTest::monomial(field, eval_expr(formula, &vars)?))
        }
        "inv-plus-trace" if rest.is_empty() => FunctionUnderTest::inverse_plus_trace(field),
        "gamma-trace-inverse" => {
            let bad = || {
                Error::InvalidFunction(format!(
                    "expected gamma-trace-inverse:t=<int>,gamma=<coeffs>, got {text:?}"
                ))
            };
            let rest = rest.strip_prefix("t=").ok_or_else(bad)?;
            let (t, gamma) = rest.split_once(",gamma=").ok_or_else(bad)?;
            let t: u32 = t.trim().parse().map_err(|_| bad())?;
            let gamma = field.parse_element(gamma)?;
            FunctionUnderTest::gamma_trace_inverse(field, t, gamma)
        }
        "table" => {
            let path = rest
                .strip_prefix('@')
                .ok_or_else(|| Error::InvalidFunction(format!("expected table:@<path>, got {text:?}")))?;
            FunctionUnderTest::table_from_file(field, Path::new(path))
        }
        _ => Err(Error::InvalidFunction(format!("unknown function {text:?}"))),
    }
}
