//! Homogeneous binary forms in `(s, t)`.
//!
//! Coefficient `k` of a degree-`d` form multiplies `s^(d-k) t^k`, so the index of a
//! coefficient is its `t`-exponent.

use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalars::{format_terms, FieldSpec, Scalar};

/// A binary form with an explicit degree, including for the zero form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinForm {
    field: FieldSpec,
    degree: usize,
    coeffs: Vec<Scalar>,
}

/// Ring operations for [`bf_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
}

pub fn bf_arith(f: &BinForm, g: &BinForm, op: BinOp) -> Result<BinForm> {
    match op {
        BinOp::Add => f.checked_add(g),
        BinOp::Sub => f.checked_sub(g),
        BinOp::Mul => f.checked_mul(g),
    }
}

impl BinForm {
    pub fn zero(field: FieldSpec, degree: usize) -> Self {
        BinForm { field, degree, coeffs: vec![field.zero(); degree + 1] }
    }

    /// `coeff · s^(degree - t_exp) t^t_exp`.
    pub fn monomial(field: FieldSpec, degree: usize, t_exp: usize, coeff: Scalar) -> Self {
        assert!(t_exp <= degree, "t-exponent exceeds degree");
        let mut f = BinForm::zero(field, degree);
        f.coeffs[t_exp] = coeff;
        f
    }

    /// `s^a t^b` with coefficient one.
    pub fn st(field: FieldSpec, a: usize, b: usize) -> Self {
        BinForm::monomial(field, a + b, b, field.one())
    }

    pub fn from_coeffs(field: FieldSpec, coeffs: Vec<Scalar>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::IndexOutOfRange("a binary form needs at least one coefficient".into()));
        }
        if coeffs.iter().any(|c| c.field() != field) {
            return Err(Error::FieldMismatch);
        }
        Ok(BinForm { field, degree: coeffs.len() - 1, coeffs })
    }

    pub fn from_i64(field: FieldSpec, coeffs: &[i64]) -> Self {
        BinForm::from_coeffs(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
            .expect("nonempty coefficient list")
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, t_exp: usize) -> &Scalar {
        &self.coeffs[t_exp]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    /// Smallest `t`-exponent with a nonzero coefficient.
    pub fn t_order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Largest `t`-exponent with a nonzero coefficient.
    pub fn t_top(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    fn same_shape(&self, other: &BinForm) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(self.degree as i64, other.degree as i64));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &BinForm) -> Result<BinForm> {
        self.same_shape(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(BinForm { field: self.field, degree: self.degree, coeffs })
    }

    pub fn checked_sub(&self, other: &BinForm) -> Result<BinForm> {
        self.same_shape(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(BinForm { field: self.field, degree: self.degree, coeffs })
    }

    pub fn checked_mul(&self, other: &BinForm) -> Result<BinForm> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let mut out = BinForm::zero(self.field, self.degree + other.degree);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] = &out.coeffs[i + j] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> BinForm {
        BinForm {
            field: self.field,
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplies by `s^a t^b`.
    pub fn shift(&self, a: usize, b: usize) -> BinForm {
        let mut coeffs = vec![self.field.zero(); b];
        coeffs.extend(self.coeffs.iter().cloned());
        coeffs.extend(std::iter::repeat_n(self.field.zero(), a));
        BinForm { field: self.field, degree: self.degree + a + b, coeffs }
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a remainder.
    pub fn divide_exact(&self, divisor: &BinForm) -> Option<BinForm> {
        let lg = divisor.t_order()?;
        if divisor.degree > self.degree || self.field != divisor.field {
            return None;
        }
        let qdeg = self.degree - divisor.degree;
        let lead_inv = divisor.coeffs[lg].inv().ok()?;
        let mut h = vec![self.field.zero(); qdeg + 1];
        for k in 0..=qdeg {
            if k + lg > self.degree {
                break;
            }
            let mut acc = self.coeffs[k + lg].clone();
            for i in (lg + 1)..=divisor.degree {
                if k + lg >= i {
                    acc = &acc - &(&divisor.coeffs[i] * &h[k + lg - i]);
                }
            }
            h[k] = &acc * &lead_inv;
        }
        let q = BinForm { field: self.field, degree: qdeg, coeffs: h };
        (q.checked_mul(divisor).ok()? == *self).then_some(q)
    }

    /// Value at `(s, t)`.
    pub fn eval(&self, s: &Scalar, t: &Scalar) -> Scalar {
        let mut acc = self.field.zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = &acc + &(&(c * &s.pow((self.degree - k) as u32)) * &t.pow(k as u32));
            }
        }
        acc
    }
}

/// Monic gcd: common `s`-power times the monic gcd of the dehomogenizations at `s = 1`.
pub fn bf_gcd(f: &BinForm, g: &BinForm) -> Result<BinForm> {
    if f.field != g.field {
        return Err(Error::FieldMismatch);
    }
    let field = f.field;
    // Exponent of s dividing a nonzero form is degree - (top t-exponent).
    let s_content = |h: &BinForm| h.t_top().map(|top| h.degree - top);
    let s_pow = match (s_content(f), s_content(g)) {
        (None, None) => return Err(Error::BothZero),
        (Some(a), None) | (None, Some(a)) => a,
        (Some(a), Some(b)) => a.min(b),
    };
    let trim = |h: &BinForm| -> Vec<Scalar> {
        match h.t_top() {
            Some(top) => h.coeffs[..=top].to_vec(),
            None => Vec::new(),
        }
    };
    let gt = upoly_gcd(trim(f), trim(g));
    Ok(BinForm { field, degree: gt.len() - 1, coeffs: gt }.shift(s_pow, 0))
}

/// Euclid on univariate polynomials (index = exponent, no trailing zeros), returned monic.
fn upoly_gcd(mut a: Vec<Scalar>, mut b: Vec<Scalar>) -> Vec<Scalar> {
    while !b.is_empty() {
        let r = upoly_rem(&a, &b);
        a = b;
        b = r;
    }
    let lead_inv = a.last().expect("not both zero").inv().expect("nonzero lead");
    a.iter().map(|c| c * &lead_inv).collect()
}

fn upoly_rem(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let mut r = a.to_vec();
    let lead_inv = b.last().unwrap().inv().unwrap();
    while r.len() >= b.len() {
        let c = r.last().unwrap() * &lead_inv;
        let shift = r.len() - b.len();
        for (i, bi) in b.iter().enumerate() {
            r[shift + i] = &r[shift + i] - &(&c * bi);
        }
        r.pop();
        while r.last().is_some_and(Scalar::is_zero) {
            r.pop();
        }
    }
    r
}

/// Matrix of `f ↦ p·f` from degree-`m` forms to degree-`m + deg p` forms in the
/// monomial bases ordered by `t`-exponent.
pub fn mult_matrix(p: &BinForm, m: usize) -> Matrix {
    let mut out = Matrix::zeros(p.field, m + p.degree + 1, m + 1);
    for j in 0..=m {
        for (k, c) in p.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out.set(j + k, j, c.clone());
            }
        }
    }
    out
}

impl fmt::Display for BinForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var = |name: &str, e: usize| match e {
            0 => String::new(),
            1 => name.to_string(),
            _ => format!("{name}^{e}"),
        };
        let terms = self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| {
            let parts: Vec<String> = [var("s", self.degree - k), var("t", k)]
                .into_iter()
                .filter(|p| !p.is_empty())
                .collect();
            (c, parts.join("*"))
        });
        f.write_str(&format_terms(terms))
    }
}

impl Serialize for BinForm {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("BinForm", 2)?;
        st.serialize_field("degree", &self.degree)?;
        st.serialize_field("coeffs", &self.coeffs)?;
        st.end()
    }
}
