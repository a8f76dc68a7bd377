//! Function tables for the maps under study.
//!
//! The central family is `F(x) = x^r * (1 + u*chi(x))` with `r = (q+1)/4`
//! by default (so `q = 3 (mod 4)`); plain power maps `x^d` are provided as
//! a reference point. Functions are materialized as full output tables so
//! downstream sweeps are index lookups.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};

/// What a table was built from. `u` is stored by canonical index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FunctionKind {
    Binomial { r: u64, u: u32 },
    Power { d: u64 },
}

/// A function on a field, tabulated on every element.
#[derive(Clone)]
pub struct FunctionTable {
    field: Arc<Field>,
    outputs: Vec<u32>,
    kind: FunctionKind,
    label: String,
}

impl std::fmt::Debug for FunctionTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FunctionTable")
            .field("q", &self.field.q())
            .field("kind", &self.kind)
            .field("label", &self.label)
            .finish_non_exhaustive()
    }
}

impl FunctionTable {
    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn kind(&self) -> &FunctionKind {
        &self.kind
    }

    /// Human-readable description, e.g. `x^3*(1 + 2*chi(x)) over F_11`.
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn outputs(&self) -> &[u32] {
        &self.outputs
    }

    /// `F(x)` by canonical index. Panics on an out-of-range index.
    #[inline]
    pub fn eval_idx(&self, x: u32) -> u32 {
        self.outputs[x as usize]
    }

    pub fn eval(&self, x: FieldElement) -> Result<FieldElement> {
        let x = self.field.check(x)?;
        Ok(self.field.element(self.outputs[x as usize] as u64)?)
    }

    /// True iff the table hits every element exactly once.
    pub fn is_permutation(&self) -> bool {
        let q = self.field.q() as usize;
        let mut seen = vec![false; q];
        for &y in &self.outputs {
            if seen[y as usize] {
                return false;
            }
            seen[y as usize] = true;
        }
        true
    }
}

/// Builds `F(x) = x^r * (1 + u*chi(x))`.
///
/// `r = None` selects the canonical exponent `(q+1)/4`, which requires
/// `q = 3 (mod 4)`. Any explicit `r >= 1` is accepted on any odd field.
/// `u` may be any element; `u = 0` degenerates to the power map `x^r`.
pub fn build_binomial(field: &Arc<Field>, r: Option<u64>, u: FieldElement) -> Result<FunctionTable> {
    let u = field.check(u)?;
    let r = match r {
        Some(0) => return Err(Error::InvalidArgument("exponent r must be >= 1")),
        Some(r) => r,
        None => field.r().ok_or(Error::ResidueMismatch {
            q: field.q(),
            needed: "3 (mod 4)",
        })?,
    };
    let one = 1u32;
    let c_plus = field.add_idx(one, u); // 1 + u, scales squares
    let c_minus = field.sub_idx(one, u); // 1 - u, scales non-squares
    let q = field.q();
    let mut outputs = Vec::with_capacity(q as usize);
    for x in 0..q as u32 {
        let t = field.pow_idx(x, r);
        let y = match field.chi_idx(x) {
            1 => field.mul_idx(c_plus, t),
            -1 => field.mul_idx(c_minus, t),
            _ => 0, // F(0) = 0
        };
        outputs.push(y);
    }
    let u_str = field.fmt_element_idx(u);
    let label = if u == 0 {
        format!("x^{} over F_{}", r, q)
    } else {
        format!("x^{}*(1 + {}*chi(x)) over F_{}", r, u_str, q)
    };
    Ok(FunctionTable {
        field: Arc::clone(field),
        outputs,
        kind: FunctionKind::Binomial { r, u },
        label,
    })
}

/// Builds the power map `x^d`, `d >= 1`.
pub fn build_power(field: &Arc<Field>, d: u64) -> Result<FunctionTable> {
    if d == 0 {
        return Err(Error::InvalidArgument("exponent d must be >= 1"));
    }
    let q = field.q();
    let outputs = (0..q as u32).map(|x| field.pow_idx(x, d)).collect();
    Ok(FunctionTable {
        field: Arc::clone(field),
        outputs,
        kind: FunctionKind::Power { d },
        label: format!("x^{} over F_{}", d, q),
    })
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Predicts whether `F(x) = x^r * (1 + u*chi(x))` permutes the field,
/// without building the table.
///
/// Valid for `u` outside `{1, -1}` (those two need the full table; the
/// criterion's derivation divides by `1 - u^2`). The test is
/// `gcd(r, (q-1)/2) = 1` together with `chi(1+u) != (-1)^r * chi(1-u)`.
pub fn predict_permutation(field: &Field, r: Option<u64>, u: FieldElement) -> Result<bool> {
    let u = field.check(u)?;
    let r = match r {
        Some(0) => return Err(Error::InvalidArgument("exponent r must be >= 1")),
        Some(r) => r,
        None => field.r().ok_or(Error::ResidueMismatch {
            q: field.q(),
            needed: "3 (mod 4)",
        })?,
    };
    if u == 1 || u == field.neg_idx(1) {
        return Err(Error::InvalidArgument(
            "permutation criterion is undefined for u = 1 or u = -1",
        ));
    }
    if gcd(r, (field.q() - 1) / 2) != 1 {
        return Ok(false);
    }
    let chi_plus = field.chi_idx(field.add_idx(1, u));
    let chi_minus = field.chi_idx(field.sub_idx(1, u));
    let sign = if r % 2 == 0 { 1 } else { -1 };
    Ok(chi_plus != sign * chi_minus)
}
