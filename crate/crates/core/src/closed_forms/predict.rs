//! Per-cell predictions of `FB_F(a,b)` / `∇_F(a,b)` from the closed forms.

use serde::Serialize;

use super::{check_hypotheses, Params, TheoremId};
use crate::algebra::{linearized_kernel_dim, quartic_pattern_char2, quartic_roots_char2, QuarticPattern};
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::function::FunctionUnderTest;
use crate::spectra::ddt_row;

/// A predicted cell: an exact value, or membership in a value set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Prediction {
    Exact(u32),
    OneOf(Vec<u32>),
}

impl Prediction {
    pub fn admits(&self, value: u32) -> bool {
        match self {
            Prediction::Exact(v) => *v == value,
            Prediction::OneOf(set) => set.contains(&value),
        }
    }
}

enum Rule {
    /// `∇(a,b) = row[b/a]`.
    Row(Vec<u32>),
    ValueSet(Vec<u32>),
    L1 { omegas: Vec<Elem> },
    L2,
    T1,
    T3,
    T4,
    T6 { omega: Elem },
}

/// Cell predictor for one claim and one function.
pub struct Predictor {
    id: TheoremId,
    function: FunctionUnderTest,
    rule: Rule,
}

/// `2^t - 1` over the binary field.
fn mersenne(t: u32) -> i128 {
    (1i128 << t) - 1
}

/// `(p^k + 1)/2` reduced modulo `q - 1`.
fn half_power_exponent(p: u64, k: u32, q: u32) -> i128 {
    let m = 2 * (q as u128 - 1);
    let mut r = 1u128 % m;
    for _ in 0..k {
        r = r * p as u128 % m;
    }
    ((r + 1) / 2) as i128
}

/// The function a family claim is about.
pub(crate) fn family_function(id: TheoremId, params: &Params, field: &Field) -> Result<FunctionUnderTest> {
    let q = field.q();
    let n = params.n;
    Ok(match id {
        TheoremId::L1 | TheoremId::L2 => FunctionUnderTest::monomial(field, -1),
        TheoremId::T1 => FunctionUnderTest::monomial(field, (2 * q as i128 - 1) / 3),
        TheoremId::T2 => {
            let k = params.k.ok_or_else(|| Error::hypothesis(id.name(), "needs k"))?;
            FunctionUnderTest::monomial(field, half_power_exponent(params.p, k, q))
        }
        TheoremId::T3 => FunctionUnderTest::monomial(field, 4),
        TheoremId::T4 => FunctionUnderTest::monomial(field, (q as i128 - 1) / 2 + 2),
        TheoremId::Thmt => {
            let t = params.t.ok_or_else(|| Error::hypothesis(id.name(), "needs t"))?;
            FunctionUnderTest::monomial(field, mersenne(t))
        }
        TheoremId::CF1 | TheoremId::CF1Vb => FunctionUnderTest::monomial(field, mersenne(n / 2)),
        TheoremId::CF2 | TheoremId::CF2Vb => FunctionUnderTest::monomial(field, mersenne((n - 1) / 2)),
        TheoremId::CF3 | TheoremId::CF3Vb => FunctionUnderTest::monomial(field, mersenne((n + 3) / 2)),
        TheoremId::T6 => FunctionUnderTest::inverse_plus_trace(field)?,
        TheoremId::T7 => {
            let (Some(t), Some(g)) = (params.t, params.gamma.as_deref()) else {
                return Err(Error::hypothesis(id.name(), "needs t and gamma"));
            };
            FunctionUnderTest::gamma_trace_inverse(field, t, field.parse_element(g)?)?
        }
        _ => {
            return Err(Error::Unsupported(format!("{id} has no single function under test")));
        }
    })
}

/// `B = (b^(2^t) + b) / (b (b+1))`.
pub(crate) fn thmt_b(field: &Field, t: u32, b: Elem) -> Elem {
    let mut bt = b;
    for _ in 0..t {
        bt = field.square(bt);
    }
    field.div(field.add(bt, b), field.mul(b, field.add(b, Elem::ONE)))
}

/// `b ∉ {0,1}`, `b^(2^t-2) != 1`, `b^(2^t-1) != 1` and `δ_F(1, B) = 6`.
pub(crate) fn in_s6(field: &Field, t: u32, ddt1: &[u32], b: Elem) -> bool {
    if b.is_zero() || b == Elem::ONE {
        return false;
    }
    if field.pow(b, mersenne(t) - 1) == Elem::ONE || field.pow(b, mersenne(t)) == Elem::ONE {
        return false;
    }
    ddt1[thmt_b(field, t, b).index() as usize] == 6
}

/// Predicted `∇(1, b)` for `X^(2^t-1)` from `B` and `dim ker P_B`.
fn thmt_row(field: &Field, t: u32) -> Result<Vec<u32>> {
    let n = field.n();
    let q = field.q();
    let g1 = super::gcd((t - 1) as u64, n as u64) as u32;
    let g0 = super::gcd(t as u64, n as u64) as u32;
    field
        .elements()
        .map(|b| {
            if b.is_zero() || b == Elem::ONE {
                return Ok(q);
            }
            let bb = thmt_b(field, t, b);
            Ok(if bb == Elem::ONE {
                1 << g1
            } else if bb.is_zero() {
                (1u32 << g0).saturating_sub(4)
            } else {
                (1u32 << linearized_kernel_dim(field, t, bb)?).saturating_sub(4)
            })
        })
        .collect()
}

fn s6_row(field: &Field, f: &FunctionUnderTest, t: u32, special: impl Fn(Elem) -> Option<u32>) -> Vec<u32> {
    let ddt1 = ddt_row(f, Elem::ONE);
    field
        .elements()
        .map(|b| {
            if b.is_zero() || b == Elem::ONE {
                field.q()
            } else if let Some(v) = special(b) {
                v
            } else if in_s6(field, t, &ddt1, b) {
                4
            } else {
                0
            }
        })
        .collect()
}

fn is_one(field: &Field, b: Elem, e: i128) -> bool {
    field.pow(b, e) == Elem::ONE
}

impl Predictor {
    /// Checks the hypotheses of `id` and builds the predictor.
    ///
    /// `T2` has no per-cell rule (its branch conditions depend on an unbound
    /// exponent) and is rejected; it is verified on the value set only.
    pub fn new(id: TheoremId, params: &Params) -> Result<Self> {
        if id == TheoremId::T2 {
            return Err(Error::Unsupported(
                "T2 has no per-cell predictor; verify checks its value set".into(),
            ));
        }
        Self::build(id, params)
    }

    pub(crate) fn build(id: TheoremId, params: &Params) -> Result<Self> {
        check_hypotheses(id, params)?;
        let field = params.field()?;
        let function = family_function(id, params, &field)?;
        let n = field.n();
        let rule = match id {
            TheoremId::L1 => {
                let omegas = field.cube_roots_of_unity().into_iter().filter(|&w| w != Elem::ONE).collect();
                Rule::L1 { omegas }
            }
            TheoremId::L2 => Rule::L2,
            TheoremId::T1 => Rule::T1,
            TheoremId::T2 => {
                let mut set = vec![0, 1, (params.p as u32 - 3) / 2];
                set.sort_unstable();
                set.dedup();
                Rule::ValueSet(set)
            }
            TheoremId::T3 => Rule::T3,
            TheoremId::T4 => Rule::T4,
            TheoremId::Thmt => Rule::Row(thmt_row(&field, params.t.expect("checked by family_function"))?),
            TheoremId::CF1 => {
                let m = n / 2;
                let big = (1u32 << m) - 4;
                let row = field
                    .elements()
                    .map(|b| {
                        if b.is_zero() || b == Elem::ONE {
                            field.q()
                        } else if m % 2 == 1 && is_one(&field, b, mersenne(m) - 1) {
                            4
                        } else if is_one(&field, b, mersenne(m)) {
                            big
                        } else {
                            0
                        }
                    })
                    .collect();
                Rule::Row(row)
            }
            TheoremId::CF2 => {
                let m = (n - 1) / 2;
                let row = s6_row(&field, &function, m, |b| {
                    (m % 3 == 1 && is_one(&field, b, mersenne(m) - 1)).then_some(8)
                });
                Rule::Row(row)
            }
            TheoremId::CF3 => {
                let t = (n + 3) / 2;
                let row = s6_row(&field, &function, t, |b| {
                    (n % 3 == 0 && is_one(&field, b, mersenne(t))).then_some(4)
                });
                Rule::Row(row)
            }
            TheoremId::T6 => {
                let omega = field.cube_roots_of_unity().into_iter().find(|&w| w != Elem::ONE);
                Rule::T6 { omega: omega.expect("n even gives a primitive cube root of unity") }
            }
            TheoremId::T7 => Rule::ValueSet(vec![0, 4, 8]),
            _ => return Err(Error::Unsupported(format!("{id} is not a per-cell claim"))),
        };
        Ok(Predictor { id, function, rule })
    }

    pub fn theorem(&self) -> TheoremId {
        self.id
    }

    pub fn function(&self) -> &FunctionUnderTest {
        &self.function
    }

    pub fn field(&self) -> &Field {
        self.function.field()
    }

    /// Predicted cell `(a, b)`.
    pub fn predict(&self, a: Elem, b: Elem) -> Prediction {
        let f = self.field();
        let q = f.q();
        if a.is_zero() || b.is_zero() || (f.is_binary() && a == b) {
            return Prediction::Exact(q);
        }
        let eta = |x: Elem| f.eta(x).expect("odd characteristic");
        Prediction::Exact(match &self.rule {
            Rule::Row(row) => row[f.div(b, a).index() as usize],
            Rule::ValueSet(set) => return Prediction::OneOf(set.clone()),
            Rule::L1 { omegas } => {
                if omegas.iter().any(|&w| f.mul(b, w) == a) {
                    4
                } else {
                    0
                }
            }
            Rule::L2 => 0,
            Rule::T1 => 1,
            Rule::T3 => {
                let s = f.add(f.square(a), f.square(b));
                if s.is_zero() {
                    1
                } else if eta(f.div(f.neg(s), f.from_int(3))) == 1 {
                    2
                } else {
                    0
                }
            }
            Rule::T4 => {
                // a^2 + b^2 = 0 needs -1 to be a square, impossible for odd n.
                if eta(f.add(f.square(a), f.square(b))) == 1 {
                    1
                } else {
                    3
                }
            }
            Rule::T6 { omega } => t6_cell(f, *omega, a, b),
        })
    }
}

fn t6_g(f: &Field, y: Elem) -> Elem {
    f.mul(f.square(y), f.inv(f.add(y, Elem::ONE)))
}

struct T6Traces {
    /// `Tr(b^3/(b^3+1))`
    t1: u32,
    /// `Tr(b^3)`
    tb3: u32,
    /// `Tr(ω^i / b)` for `i = 0, 1, 2`.
    tw: [u32; 3],
}

impl T6Traces {
    fn new(f: &Field, omega: Elem, b: Elem) -> Self {
        let b3 = f.mul(f.square(b), b);
        let binv = f.inv(b);
        let omega2 = f.square(omega);
        T6Traces {
            t1: f.trace(f.mul(b3, f.inv(f.add(b3, Elem::ONE)))),
            tb3: f.trace(b3),
            tw: [f.trace(binv), f.trace(f.mul(binv, omega)), f.trace(f.mul(binv, omega2))],
        }
    }

    fn eight_branch(&self) -> bool {
        self.t1 == 0 && self.tw == [0, 0, 0] && self.tb3 == 1
    }
}

/// Whether `a ∈ {bω, bω²}`, i.e. `a² + ab + b² = 0`.
pub(crate) fn t6_case_a(f: &Field, a: Elem, b: Elem) -> bool {
    f.add(f.add(f.square(a), f.mul(a, b)), f.square(b)).is_zero()
}

/// Whether `b` meets the trace conditions of the 8-valued branch.
pub(crate) fn t6_eight_conditions(f: &Field, omega: Elem, b: Elem) -> bool {
    T6Traces::new(f, omega, b).eight_branch()
}

/// `FB(a,b)` of `X^-1 + Tr(X^2/(X+1))` from the case analysis on `a² + ab + b²`
/// (nontrivial cells only).
fn t6_cell(f: &Field, omega: Elem, a: Elem, b: Elem) -> u32 {
    if t6_case_a(f, a, b) {
        let tr = T6Traces::new(f, omega, b);
        let mut v = 0;
        if tr.t1 == 0 {
            v += 4;
        }
        if tr.tw == [0, 0, 0] && tr.tb3 == 1 {
            v += 4;
        }
        return v;
    }
    let a2 = f.add(f.add(f.square(a), f.mul(a, b)), f.square(b));
    let a1 = f.mul(f.mul(a, b), f.add(a, b));
    let analysis = quartic_pattern_char2(f, a2, a1, a1).expect("a1 != 0 off the trivial cells");
    if analysis.pattern != QuarticPattern::Linear4 {
        return 0;
    }
    let roots = quartic_roots_char2(f, a2, a1, a1).expect("a1 != 0");
    let x = roots[0];
    let ab = f.add(a, b);
    let sum = [x, f.add(x, a), f.add(x, b), f.add(x, ab)]
        .into_iter()
        .fold(Elem::ZERO, |acc, y| f.add(acc, t6_g(f, y)));
    if f.trace(sum) == 1 {
        4
    } else {
        0
    }
}

/// The value the five printed clauses give for `X^-1 + Tr(X^2/(X+1))` at a
/// nontrivial cell, taken literally.
pub fn t6_literal(f: &Field, omega: Elem, a: Elem, b: Elem) -> u32 {
    let q = f.q();
    if a.is_zero() || b.is_zero() || a == b {
        return q;
    }
    let tr = T6Traces::new(f, omega, b);
    if tr.eight_branch() {
        return 8;
    }
    let ab = f.add(a, b);
    let prod = f.mul(f.mul(a, b), ab);
    let w1 = f.div(a, f.mul(b, ab));
    let w2 = f.div(b, f.mul(a, ab));
    let w3 = f.div(ab, f.mul(a, b));
    let denom = [f.square(a), f.square(b), prod, f.mul(a, b), Elem::ONE]
        .into_iter()
        .fold(Elem::ZERO, |acc, y| f.add(acc, y));
    let w4 = f.mul(prod, f.inv(denom));
    let four = (tr.tw == [0, 0, 0] && tr.t1 == 1 && tr.tb3 == 1)
        || (tr.t1 == 0 && tr.tb3 == 0 && tr.tw.contains(&1))
        || [w1, w2, w3, w4].iter().all(|&w| f.trace(w) == 1);
    if four {
        4
    } else {
        0
    }
}

/// `FB_F(a,b)` predicted by claim `id` at `params`.
pub fn predict(id: TheoremId, params: &Params, a: Elem, b: Elem) -> Result<Prediction> {
    Ok(Predictor::new(id, params)?.predict(a, b))
}
