//! Sparse homogeneous polynomials in `x_0, …, x_n`.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalars::{format_terms, FieldSpec, Scalar};

/// Exponent vector of length `n + 1`.
pub type Exponents = Vec<u32>;

/// A homogeneous polynomial; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    field: FieldSpec,
    n: usize,
    degree: u32,
    terms: BTreeMap<Exponents, Scalar>,
}

/// Operations for [`mp_arith`]; scaling by a scalar is [`MPoly::scale`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MpOp {
    Add,
    Sub,
    Mul,
}

pub fn mp_arith(f: &MPoly, g: &MPoly, op: MpOp) -> Result<MPoly> {
    match op {
        MpOp::Add => f.checked_add(g),
        MpOp::Sub => f.checked_sub(g),
        MpOp::Mul => f.checked_mul(g),
    }
}

impl MPoly {
    pub fn zero(field: FieldSpec, n: usize, degree: u32) -> Self {
        MPoly { field, n, degree, terms: BTreeMap::new() }
    }

    pub fn one(field: FieldSpec, n: usize) -> Self {
        MPoly::monomial(field, vec![0; n + 1], field.one())
    }

    /// The coordinate `x_i`.
    pub fn var(field: FieldSpec, n: usize, i: usize) -> Self {
        assert!(i <= n, "variable index out of range");
        let mut e = vec![0; n + 1];
        e[i] = 1;
        MPoly::monomial(field, e, field.one())
    }

    /// `coeff · x^exps`; the ambient dimension is `exps.len() - 1`.
    pub fn monomial(field: FieldSpec, exps: Exponents, coeff: Scalar) -> Self {
        let n = exps.len() - 1;
        let degree = exps.iter().sum();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exps, coeff);
        }
        MPoly { field, n, degree, terms }
    }

    /// Builds a polynomial from terms, merging repeated exponents.
    pub fn from_terms(
        field: FieldSpec,
        n: usize,
        degree: u32,
        terms: impl IntoIterator<Item = (Exponents, Scalar)>,
    ) -> Result<Self> {
        let mut p = MPoly::zero(field, n, degree);
        for (e, c) in terms {
            if e.len() != n + 1 {
                return Err(Error::AmbientMismatch(e.len() - 1, n));
            }
            let deg: u32 = e.iter().sum();
            if deg != degree {
                return Err(Error::DegreeMismatch(deg as i64, degree as i64));
            }
            if c.field() != field {
                return Err(Error::FieldMismatch);
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// Ambient dimension: variables are `x_0..=x_n`.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Exponents, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> Scalar {
        self.terms.get(exps).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub(crate) fn add_term(&mut self, e: Exponents, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v = &*v + &c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    fn same_shape(&self, other: &MPoly) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.n != other.n {
            return Err(Error::AmbientMismatch(self.n, other.n));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &MPoly) -> Result<MPoly> {
        self.same_shape(other)?;
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(self.degree as i64, other.degree as i64));
        }
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &MPoly) -> Result<MPoly> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &MPoly) -> Result<MPoly> {
        self.same_shape(other)?;
        let mut out = MPoly::zero(self.field, self.n, self.degree + other.degree);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> MPoly {
        let mut out = MPoly::zero(self.field, self.n, self.degree);
        if !c.is_zero() {
            out.terms = self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect();
        }
        out
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            field: self.field,
            n: self.n,
            degree: self.degree,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> MPoly {
        let mut acc = MPoly::one(self.field, self.n);
        for _ in 0..k {
            acc = acc.checked_mul(self).expect("same ring");
        }
        acc
    }

    /// `∂F/∂x_i`, homogeneous of degree `deg F − 1`.
    pub fn partial_derivative(&self, i: usize) -> Result<MPoly> {
        if i > self.n {
            return Err(Error::IndexOutOfRange(format!("x{i} with n = {}", self.n)));
        }
        if self.degree == 0 {
            return Err(Error::DegreeMismatch(0, 1));
        }
        let mut out = MPoly::zero(self.field, self.n, self.degree - 1);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(e2, c * &self.field.from_i64(e[i] as i64));
        }
        Ok(out)
    }

    /// Parses text such as `x0^2*x2 - 3*x1*x3` or `1/2*x1^2`.
    pub fn parse(field: FieldSpec, n: usize, text: &str) -> Result<MPoly> {
        let bad = |msg: &str| Error::Parse(format!("{msg} in '{}'", text.trim()));
        let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(bad("empty polynomial"));
        }
        // Split into signed terms.
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        for ch in cleaned.chars() {
            if (ch == '+' || ch == '-') && !cur.is_empty() && !cur.ends_with('^') {
                pieces.push((neg, std::mem::take(&mut cur)));
                neg = ch == '-';
            } else if (ch == '+' || ch == '-') && cur.is_empty() {
                if ch == '-' {
                    neg = !neg;
                }
            } else {
                cur.push(ch);
            }
        }
        if cur.is_empty() {
            return Err(bad("dangling sign"));
        }
        pieces.push((neg, cur));

        let mut parsed = Vec::new();
        for (neg, piece) in pieces {
            let mut coeff = field.one();
            let mut exps = vec![0u32; n + 1];
            for factor in piece.split('*') {
                if let Some(rest) = factor.strip_prefix('x') {
                    let (idx, pow) = match rest.split_once('^') {
                        Some((i, p)) => (i, p.parse::<u32>().map_err(|_| bad("bad exponent"))?),
                        None => (rest, 1),
                    };
                    let idx: usize = idx.parse().map_err(|_| bad("bad variable"))?;
                    if idx > n {
                        return Err(Error::IndexOutOfRange(format!("x{idx} with n = {n}")));
                    }
                    exps[idx] += pow;
                } else {
                    coeff = &coeff * &field.parse_scalar(factor)?;
                }
            }
            if neg {
                coeff = -coeff;
            }
            parsed.push((exps, coeff));
        }
        let degree = parsed[0].0.iter().sum();
        MPoly::from_terms(field, n, degree, parsed)
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms.iter().rev().map(|(e, c)| {
            let parts: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { format!("x{i}") } else { format!("x{i}^{k}") })
                .collect();
            (c, parts.join("*"))
        });
        f.write_str(&format_terms(terms))
    }
}

struct TermJson<'a>(&'a Exponents, &'a Scalar);

impl Serialize for TermJson<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Term", 2)?;
        st.serialize_field("exponents", self.0)?;
        st.serialize_field("coeff", self.1)?;
        st.end()
    }
}

impl Serialize for MPoly {
    /// A list of `{exponents, coeff}` in descending lexicographic order.
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (e, c) in self.terms.iter().rev() {
            seq.serialize_element(&TermJson(e, c))?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn x(n: usize, i: usize) -> MPoly {
        MPoly::var(Q, n, i)
    }

    #[test]
    fn arithmetic() {
        let a = x(3, 0).checked_mul(&x(3, 1)).unwrap();
        let b = x(3, 1).checked_mul(&x(3, 0)).unwrap();
        let sum = mp_arith(&a, &b, MpOp::Add).unwrap();
        assert_eq!(sum, a.scale(&Q.from_i64(2)));
        assert!(mp_arith(&a, &a, MpOp::Sub).unwrap().is_zero());
        assert_eq!(
            mp_arith(&a, &x(3, 0), MpOp::Add),
            Err(Error::DegreeMismatch(2, 1))
        );
        assert_eq!(
            mp_arith(&x(3, 0), &x(4, 0), MpOp::Add),
            Err(Error::AmbientMismatch(3, 4))
        );
    }

    #[test]
    fn derivatives() {
        let d = 5;
        let f = MPoly::monomial(Q, vec![d - 2, 1, 1, 0], Q.one());
        let df = f.partial_derivative(0).unwrap();
        assert_eq!(df, MPoly::monomial(Q, vec![d - 3, 1, 1, 0], Q.from_i64((d - 2) as i64)));
        let q12 = MPoly::parse(Q, 2, "x1^2 - x0*x2").unwrap();
        assert_eq!(q12.partial_derivative(1).unwrap(), x(2, 1).scale(&Q.from_i64(2)));
        let g = MPoly::parse(Q, 3, "x0*x1 + x2^2").unwrap();
        let dg = g.partial_derivative(3).unwrap();
        assert!(dg.is_zero());
        assert_eq!(dg.degree(), 1);
    }

    #[test]
    fn text_roundtrip() {
        let f = MPoly::parse(Q, 3, "x0^2*x2 - 3*x1*x3^2").unwrap();
        assert_eq!(f.to_string(), "x0^2*x2 - 3*x1*x3^2");
        let g = MPoly::parse(Q, 3, "-x3^2*x1*3 + x2*x0^2").unwrap();
        assert_eq!(f, g);
        let h = MPoly::parse(Q, 2, "1/2*x1^2 - x0 * x2").unwrap();
        assert_eq!(h.to_string(), "-x0*x2 + 1/2*x1^2");
        assert!(MPoly::parse(Q, 2, "x0 + x1^2").is_err());
        assert!(MPoly::parse(Q, 2, "x3").is_err());
        let json = serde_json::to_string(&MPoly::parse(Q, 1, "x0*x1 - 2*x1^2").unwrap()).unwrap();
        assert_eq!(
            json,
            r#"[{"exponents":[1,1],"coeff":"1"},{"exponents":[0,2],"coeff":"-2"}]"#
        );
    }

    fn arb_poly(n: usize, degree: u32) -> impl Strategy<Value = MPoly> {
        let term = (prop::collection::vec(0usize..=n, degree as usize), -5i64..6);
        prop::collection::vec(term, 0..6).prop_map(move |ts| {
            let terms = ts.into_iter().map(|(vars, c)| {
                let mut e = vec![0u32; n + 1];
                for v in vars {
                    e[v] += 1;
                }
                (e, Q.from_i64(c))
            });
            MPoly::from_terms(Q, n, degree, terms).unwrap()
        })
    }

    fn euler(f: &MPoly) -> MPoly {
        let mut acc = MPoly::zero(f.field(), f.n(), f.degree());
        for i in 0..=f.n() {
            let term = MPoly::var(f.field(), f.n(), i)
                .checked_mul(&f.partial_derivative(i).unwrap())
                .unwrap();
            acc = acc.checked_add(&term).unwrap();
        }
        acc
    }

    proptest! {
        #[test]
        fn euler_relation(f in (1u32..5).prop_flat_map(|d| arb_poly(4, d))) {
            prop_assert_eq!(euler(&f), f.scale(&Q.from_i64(f.degree() as i64)));
        }

        #[test]
        fn euler_relation_mod_p(f in (1u32..9).prop_flat_map(|d| arb_poly(3, d))) {
            prop_assume!(!f.is_zero());
            let f5 = FieldSpec::PrimeField(5);
            let g = MPoly::parse(f5, 3, &f.to_string()).unwrap();
            prop_assert_eq!(euler(&g), g.scale(&f5.from_i64(g.degree() as i64)));
        }

        #[test]
        fn text_roundtrip_random(f in (1u32..4).prop_flat_map(|d| arb_poly(3, d))) {
            prop_assume!(!f.is_zero());
            prop_assert_eq!(MPoly::parse(Q, 3, &f.to_string()).unwrap(), f);
        }
    }
}
