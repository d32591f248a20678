//! Exact arithmetic in GF(p^n).
//!
//! An element is stored as its index `sum c_i p^i` over the little-endian
//! coefficient vector `(c_0, .., c_{n-1})` of its polynomial-basis
//! representative, so the index order is the canonical enumeration order.
//! Multiplication reduces modulo a monic irreducible polynomial; for
//! `q <= 2^20` a log/antilog table is built on first use and produces the
//! same results as the polynomial path.

mod poly;
mod quadratic;

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub use poly::is_irreducible;
pub use quadratic::{Special, SpecialQuery};

/// Largest order for which log/antilog tables are built.
pub const TABLE_LIMIT: u32 = 1 << 20;
/// Largest odd-characteristic extension order with a full addition table.
const ADD_TABLE_LIMIT: u32 = 2048;

/// A field element, bound to the [`Field`] that produced it.
///
/// Holds the enumeration index; arithmetic goes through the owning field.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize)]
#[serde(transparent)]
pub struct Elem(pub(crate) u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    /// Position in the canonical enumeration order.
    #[inline]
    pub fn index(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Parameters of a concrete GF(p^n).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    p: u32,
    n: u32,
    modulus: Vec<u32>,
    q: u32,
}

impl FieldSpec {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Little-endian coefficients, `n + 1` entries, last one is 1.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn modulus_text(&self) -> String {
        format_coeffs(&self.modulus)
    }
}

impl Serialize for FieldSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("FieldSpec", 3)?;
        st.serialize_field("p", &self.p)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("modulus", &self.modulus_text())?;
        st.end()
    }
}

struct LogTables {
    /// `exp[i] = g^(i mod (q-1))`, length `2(q-1)`.
    exp: Vec<u32>,
    log: Vec<u32>,
}

struct Inner {
    spec: FieldSpec,
    pow_p: Vec<u32>,
    trace_basis: Vec<u32>,
    generator: OnceLock<Elem>,
    tables: OnceLock<Option<LogTables>>,
    add_table: OnceLock<Option<Vec<u16>>>,
}

/// A finite field GF(p^n). Cheap to clone; all clones share lazily built tables.
#[derive(Clone)]
pub struct Field {
    inner: Arc<Inner>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.spec == other.inner.spec
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.spec();
        write!(f, "GF({}^{}) mod [{}]", s.p, s.n, s.modulus_text())
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors in ascending order.
pub fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= m {
        if m % d == 0 {
            out.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// Parses the comma-separated little-endian coefficient format, e.g. `"1,1,0,0,1"`.
pub fn parse_coeffs(text: &str) -> Result<Vec<u32>> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::InvalidElement("empty coefficient list".into()));
    }
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| Error::InvalidElement(format!("bad coefficient {t:?} in {text:?}")))
        })
        .collect()
}

pub fn format_coeffs(c: &[u32]) -> String {
    let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
    parts.join(",")
}

/// Builds GF(p^n). Without a modulus the smallest monic irreducible (by
/// the integer value `sum c_i p^i` of its lower coefficients) is used.
pub fn make_field(p: u64, n: u32, modulus: Option<&[u32]>) -> Result<Field> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n == 0 {
        return Err(Error::ZeroDegree);
    }
    let q = p
        .checked_pow(n)
        .filter(|&q| q <= u32::MAX as u64)
        .ok_or(Error::OrderOverflow { p, n })? as u32;
    let p = p as u32;
    let modulus = match modulus {
        Some(m) => {
            if m.len() != n as usize + 1 {
                return Err(Error::InvalidModulus(format!(
                    "expected {} coefficients, got {}",
                    n + 1,
                    m.len()
                )));
            }
            if let Some(c) = m.iter().find(|&&c| c >= p) {
                return Err(Error::InvalidModulus(format!("coefficient {c} not in [0,{p})")));
            }
            if m[n as usize] != 1 {
                return Err(Error::InvalidModulus("modulus is not monic".into()));
            }
            if !is_irreducible(m, p) {
                return Err(Error::ReducibleModulus(p));
            }
            m.to_vec()
        }
        None => poly::smallest_irreducible(p, n),
    };
    Ok(Field::from_parts(FieldSpec { p, n, modulus, q }))
}

impl Field {
    pub fn new(p: u64, n: u32) -> Result<Field> {
        make_field(p, n, None)
    }

    pub fn with_modulus(p: u64, n: u32, modulus: &[u32]) -> Result<Field> {
        make_field(p, n, Some(modulus))
    }

    fn from_parts(spec: FieldSpec) -> Field {
        let mut pow_p = Vec::with_capacity(spec.n as usize);
        let mut acc = 1u32;
        for i in 0..spec.n {
            pow_p.push(acc);
            if i + 1 < spec.n {
                acc *= spec.p;
            }
        }
        let mut field = Field {
            inner: Arc::new(Inner {
                spec,
                pow_p,
                trace_basis: Vec::new(),
                generator: OnceLock::new(),
                tables: OnceLock::new(),
                add_table: OnceLock::new(),
            }),
        };
        let basis: Vec<u32> = (0..field.n())
            .map(|i| {
                let x = Elem(field.inner.pow_p[i as usize]);
                let mut acc = Elem::ZERO;
                let mut y = x;
                for _ in 0..field.n() {
                    acc = field.add(acc, y);
                    y = field.pow_reference(y, field.p() as u64);
                }
                debug_assert!(acc.0 < field.p());
                acc.0
            })
            .collect();
        Arc::get_mut(&mut field.inner).expect("unshared").trace_basis = basis;
        field
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.inner.spec
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.inner.spec.p
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.inner.spec.n
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.inner.spec.q
    }

    #[inline]
    pub fn is_binary(&self) -> bool {
        self.inner.spec.p == 2
    }

    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    pub fn one(&self) -> Elem {
        Elem::ONE
    }

    /// All elements in enumeration order.
    pub fn elements(&self) -> impl DoubleEndedIterator<Item = Elem> + ExactSizeIterator + Clone {
        (0..self.q()).map(Elem)
    }

    pub fn nonzero_elements(&self) -> impl DoubleEndedIterator<Item = Elem> + ExactSizeIterator + Clone {
        (1..self.q()).map(Elem)
    }

    pub fn from_index(&self, i: u32) -> Result<Elem> {
        if i < self.q() {
            Ok(Elem(i))
        } else {
            Err(Error::InvalidElement(format!("index {i} >= q = {}", self.q())))
        }
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, v: i64) -> Elem {
        Elem(v.rem_euclid(self.p() as i64) as u32)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Elem> {
        if coeffs.len() > self.n() as usize {
            return Err(Error::InvalidElement(format!(
                "{} coefficients for a degree-{} field",
                coeffs.len(),
                self.n()
            )));
        }
        let mut idx = 0u32;
        for (i, &c) in coeffs.iter().enumerate() {
            if c >= self.p() {
                return Err(Error::InvalidElement(format!(
                    "coefficient {c} not in [0,{})",
                    self.p()
                )));
            }
            idx += c * self.inner.pow_p[i];
        }
        Ok(Elem(idx))
    }

    pub fn coeffs(&self, x: Elem) -> Vec<u32> {
        let p = self.p();
        let mut v = x.0;
        (0..self.n())
            .map(|_| {
                let c = v % p;
                v /= p;
                c
            })
            .collect()
    }

    pub fn parse_element(&self, text: &str) -> Result<Elem> {
        self.from_coeffs(&parse_coeffs(text)?)
    }

    pub fn format_element(&self, x: Elem) -> String {
        format_coeffs(&self.coeffs(x))
    }

    /// The class of `x` as a root of the modulus, i.e. the polynomial `x`.
    pub fn x(&self) -> Elem {
        if self.n() == 1 {
            // In GF(p) the generator of the polynomial basis is the root of the
            // linear modulus, which is `-m_0`.
            self.neg(Elem(self.inner.spec.modulus[0]))
        } else {
            Elem(self.p())
        }
    }

    #[inline]
    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        let p = self.p();
        if p == 2 {
            return Elem(x.0 ^ y.0);
        }
        if self.n() == 1 {
            let s = x.0 as u64 + y.0 as u64;
            return Elem((s % p as u64) as u32);
        }
        if let Some(t) = self.add_table() {
            return Elem(t[(x.0 * self.q() + y.0) as usize] as u32);
        }
        self.add_digits(x, y)
    }

    fn add_digits(&self, x: Elem, y: Elem) -> Elem {
        let p = self.p();
        let (mut a, mut b) = (x.0, y.0);
        let mut out = 0u32;
        for &w in &self.inner.pow_p {
            let s = (a % p + b % p) % p;
            out += s * w;
            a /= p;
            b /= p;
        }
        Elem(out)
    }

    fn add_table(&self) -> Option<&Vec<u16>> {
        self.inner
            .add_table
            .get_or_init(|| {
                let q = self.q();
                if self.p() == 2 || self.n() == 1 || q > ADD_TABLE_LIMIT {
                    return None;
                }
                let mut t = vec![0u16; (q * q) as usize];
                for x in 0..q {
                    for y in 0..q {
                        t[(x * q + y) as usize] = self.add_digits(Elem(x), Elem(y)).0 as u16;
                    }
                }
                Some(t)
            })
            .as_ref()
    }

    #[inline]
    pub fn neg(&self, x: Elem) -> Elem {
        let p = self.p();
        if p == 2 || x.0 == 0 {
            return x;
        }
        if self.n() == 1 {
            return Elem(p - x.0);
        }
        let mut a = x.0;
        let mut out = 0u32;
        for &w in &self.inner.pow_p {
            let c = a % p;
            out += ((p - c) % p) * w;
            a /= p;
        }
        Elem(out)
    }

    #[inline]
    pub fn sub(&self, x: Elem, y: Elem) -> Elem {
        if self.p() == 2 {
            return Elem(x.0 ^ y.0);
        }
        self.add(x, self.neg(y))
    }

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        if x.0 == 0 || y.0 == 0 {
            return Elem::ZERO;
        }
        match self.tables() {
            Some(t) => Elem(t.exp[(t.log[x.0 as usize] + t.log[y.0 as usize]) as usize]),
            None => self.mul_reference(x, y),
        }
    }

    #[inline]
    pub fn square(&self, x: Elem) -> Elem {
        self.mul(x, x)
    }

    /// Multiplicative inverse with the convention `inv(0) = 0`.
    #[inline]
    pub fn inv(&self, x: Elem) -> Elem {
        if x.0 == 0 {
            return Elem::ZERO;
        }
        match self.tables() {
            Some(t) => Elem(t.exp[(self.q() - 1 - t.log[x.0 as usize]) as usize]),
            None => self.pow_reference(x, self.q() as u64 - 2),
        }
    }

    /// `x / y` using `inv(0) = 0`.
    #[inline]
    pub fn div(&self, x: Elem, y: Elem) -> Elem {
        self.mul(x, self.inv(y))
    }

    /// `x^e` for any integer `e`; negative exponents are inverse powers.
    /// `0^0 = 1` and `0^e = 0` otherwise.
    pub fn pow(&self, x: Elem, e: i128) -> Elem {
        if x.0 == 0 {
            return if e == 0 { Elem::ONE } else { Elem::ZERO };
        }
        let order = self.q() as i128 - 1;
        let r = e.rem_euclid(order) as u64;
        match self.tables() {
            Some(t) => {
                let l = (t.log[x.0 as usize] as u64 * r) % order as u64;
                Elem(t.exp[l as usize])
            }
            None => self.pow_reference(x, r),
        }
    }

    /// `x^p`.
    pub fn frobenius(&self, x: Elem) -> Elem {
        self.pow(x, self.p() as i128)
    }

    /// Absolute trace, returned as a value in `[0, p)`.
    pub fn trace(&self, x: Elem) -> u32 {
        let p = self.p() as u64;
        let mut a = x.0;
        let mut acc = 0u64;
        for &t in &self.inner.trace_basis {
            acc += (a % self.p()) as u64 * t as u64;
            a /= self.p();
        }
        (acc % p) as u32
    }

    /// Trace computed as `sum x^(p^i)` directly.
    pub fn trace_reference(&self, x: Elem) -> u32 {
        let mut acc = Elem::ZERO;
        let mut y = x;
        for _ in 0..self.n() {
            acc = self.add(acc, y);
            y = self.pow_reference(y, self.p() as u64);
        }
        debug_assert!(acc.0 < self.p());
        acc.0
    }

    /// Quadratic character: 1 on nonzero squares, -1 on non-squares, 0 at 0.
    pub fn eta(&self, x: Elem) -> Result<i8> {
        if self.is_binary() {
            return Err(Error::NeedsOddCharacteristic);
        }
        if x.0 == 0 {
            return Ok(0);
        }
        Ok(match self.tables() {
            Some(t) => {
                if t.log[x.0 as usize] % 2 == 0 {
                    1
                } else {
                    -1
                }
            }
            None => self.eta_reference(x),
        })
    }

    /// Euler's criterion `x^((q-1)/2)`.
    pub fn eta_reference(&self, x: Elem) -> i8 {
        if x.0 == 0 {
            return 0;
        }
        let e = self.pow_reference(x, (self.q() as u64 - 1) / 2);
        if e == Elem::ONE {
            1
        } else {
            -1
        }
    }

    /// A primitive element: the smallest index of multiplicative order `q - 1`.
    pub fn generator(&self) -> Elem {
        *self.inner.generator.get_or_init(|| {
            let order = self.q() as u64 - 1;
            if order == 1 {
                return Elem::ONE;
            }
            let factors = prime_factors(order);
            (2..self.q())
                .map(Elem)
                .find(|&g| {
                    factors
                        .iter()
                        .all(|&r| self.pow_reference(g, order / r) != Elem::ONE)
                })
                .expect("a finite field has a primitive element")
        })
    }

    /// Discrete log base [`Field::generator`] for nonzero `x`.
    pub fn log(&self, x: Elem) -> Option<u32> {
        if x.0 == 0 {
            return None;
        }
        match self.tables() {
            Some(t) => Some(t.log[x.0 as usize]),
            None => {
                let g = self.generator();
                let mut y = Elem::ONE;
                for k in 0..self.q() - 1 {
                    if y == x {
                        return Some(k);
                    }
                    y = self.mul_reference(y, g);
                }
                None
            }
        }
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, x: Elem) -> Option<u64> {
        if x.0 == 0 {
            return None;
        }
        let mut ord = self.q() as u64 - 1;
        for r in prime_factors(ord) {
            while ord % r == 0 && self.pow_reference(x, ord / r) == Elem::ONE {
                ord /= r;
            }
        }
        Some(ord)
    }

    fn tables(&self) -> Option<&LogTables> {
        self.inner
            .tables
            .get_or_init(|| {
                let q = self.q();
                if q > TABLE_LIMIT {
                    return None;
                }
                let order = (q - 1) as usize;
                let g = self.generator();
                let mut exp = vec![0u32; 2 * order.max(1)];
                let mut log = vec![0u32; q as usize];
                let mut y = Elem::ONE;
                for k in 0..order {
                    exp[k] = y.0;
                    log[y.0 as usize] = k as u32;
                    y = self.mul_reference(y, g);
                }
                for k in order..2 * order {
                    exp[k] = exp[k - order];
                }
                if order == 1 {
                    exp[1] = 1;
                }
                Some(LogTables { exp, log })
            })
            .as_ref()
    }

    /// Polynomial-basis product reduced by the modulus.
    pub fn mul_reference(&self, x: Elem, y: Elem) -> Elem {
        let n = self.n() as usize;
        let p = self.p() as u64;
        let a = self.coeffs(x);
        let b = self.coeffs(y);
        let mut r = vec![0u64; 2 * n - 1];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                r[i + j] = (r[i + j] + ai as u64 * bj as u64 % p) % p;
            }
        }
        let m = &self.inner.spec.modulus;
        for k in (n..2 * n - 1).rev() {
            let c = r[k];
            if c == 0 {
                continue;
            }
            for i in 0..=n {
                let idx = k - n + i;
                r[idx] = (r[idx] + (p - c) * m[i] as u64 % p) % p;
            }
        }
        let coeffs: Vec<u32> = r[..n].iter().map(|&c| c as u32).collect();
        Elem(
            coeffs
                .iter()
                .zip(&self.inner.pow_p)
                .map(|(&c, &w)| c * w)
                .sum(),
        )
    }

    /// Square-and-multiply on the polynomial path.
    pub fn pow_reference(&self, x: Elem, mut e: u64) -> Elem {
        let mut base = x;
        let mut acc = Elem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_reference(acc, base);
            }
            base = self.mul_reference(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn element(&self, x: Elem) -> FieldElement {
        FieldElement {
            field: self.clone(),
            elem: x,
        }
    }
}

/// Arithmetic operation selector for [`arith`].
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Inv,
    Pow,
}

/// Second operand of [`arith`].
#[derive(Clone, Copy, Debug)]
pub enum Operand<'a> {
    Element(&'a FieldElement),
    Exponent(i128),
    None,
}

/// A field element paired with its field, for checked arithmetic at API boundaries.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: Field,
    elem: Elem,
}

impl FieldElement {
    pub fn new(field: &Field, elem: Elem) -> Self {
        field.element(elem)
    }

    pub fn parse(field: &Field, text: &str) -> Result<Self> {
        Ok(field.element(field.parse_element(text)?))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn elem(&self) -> Elem {
        self.elem
    }

    pub fn coeffs(&self) -> Vec<u32> {
        self.field.coeffs(self.elem)
    }

    fn same_field(&self, other: &FieldElement) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }

    pub fn arith(&self, op: ArithOp, rhs: Operand<'_>) -> Result<FieldElement> {
        let f = &self.field;
        let elem = match (op, rhs) {
            (ArithOp::Inv, _) => f.inv(self.elem),
            (ArithOp::Pow, Operand::Exponent(e)) => f.pow(self.elem, e),
            (ArithOp::Add | ArithOp::Sub | ArithOp::Mul, Operand::Element(y)) => {
                self.same_field(y)?;
                match op {
                    ArithOp::Add => f.add(self.elem, y.elem),
                    ArithOp::Sub => f.sub(self.elem, y.elem),
                    _ => f.mul(self.elem, y.elem),
                }
            }
            (op, _) => {
                return Err(Error::OutOfRange(format!("{op:?} given the wrong kind of operand")))
            }
        };
        Ok(f.element(elem))
    }

    pub fn trace(&self) -> u32 {
        self.field.trace(self.elem)
    }
}

/// Free-function form of [`FieldElement::arith`].
pub fn arith(op: ArithOp, x: &FieldElement, y: Operand<'_>) -> Result<FieldElement> {
    x.arith(op, y)
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format_element(self.elem))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] in {:?}", self, self.field)
    }
}
