//! The rational normal curve `C = R_e ⊂ ℙⁿ`, parametrized by
//! `(s^e : s^(e-1)t : … : t^e : 0 : … : 0)`, and its ideal.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::binforms::BinForm;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::mpoly::{Exponents, MPoly};
use crate::scalars::{FieldSpec, Scalar};

/// Ambient dimension `n`, curve degree `e` and coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CurveContext {
    pub n: usize,
    pub e: usize,
    pub field: FieldSpec,
}

/// `F = Σ F_ij Q_ij + Σ G_k x_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealDecomposition {
    /// `(i, j) ↦ F_ij` for `1 ≤ i < j ≤ e`, each of degree `d − 2`.
    pub quad_coeffs: BTreeMap<(usize, usize), MPoly>,
    /// `k ↦ G_k` for `e < k ≤ n`, each of degree `d − 1`.
    pub lin_coeffs: BTreeMap<usize, MPoly>,
}

impl CurveContext {
    pub fn new(n: usize, e: usize, field: FieldSpec) -> Result<Self> {
        if e < 2 || e > n {
            return Err(Error::InvalidContext(format!("need 2 <= e <= n, got n = {n}, e = {e}")));
        }
        Ok(CurveContext { n, e, field })
    }

    pub fn x(&self, i: usize) -> MPoly {
        MPoly::var(self.field, self.n, i)
    }

    fn check(&self, f: &MPoly) -> Result<()> {
        if f.n() != self.n {
            return Err(Error::AmbientMismatch(f.n(), self.n));
        }
        if f.field() != self.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    /// `t`-exponent of the restriction of a monomial, or `None` if it vanishes on `C`.
    fn restrict_exponent(&self, exps: &[u32]) -> Option<usize> {
        if exps[self.e + 1..].iter().any(|&k| k > 0) {
            return None;
        }
        Some(exps.iter().enumerate().map(|(i, &k)| i * k as usize).sum())
    }

    /// Substitutes `x_i ↦ s^(e-i) t^i` (`i ≤ e`) and `x_i ↦ 0` (`i > e`).
    pub fn restrict(&self, f: &MPoly) -> Result<BinForm> {
        self.check(f)?;
        let deg = self.e * f.degree() as usize;
        let mut coeffs = vec![self.field.zero(); deg + 1];
        for (exps, c) in f.terms() {
            if let Some(k) = self.restrict_exponent(exps) {
                coeffs[k] = &coeffs[k] + c;
            }
        }
        BinForm::from_coeffs(self.field, coeffs)
    }

    /// `Q_ij = x_i x_(j-1) − x_(i-1) x_j` for `1 ≤ i < j ≤ e`.
    pub fn quadric_gen(&self, i: usize, j: usize) -> Result<MPoly> {
        if !(1 <= i && i < j && j <= self.e) {
            return Err(Error::IndexOutOfRange(format!("Q_({i},{j}) with e = {}", self.e)));
        }
        let a = self.x(i).checked_mul(&self.x(j - 1))?;
        let b = self.x(i - 1).checked_mul(&self.x(j))?;
        a.checked_sub(&b)
    }

    /// The balanced degree-`k` monomial restricting to `s^(ek−β) t^β`:
    /// `x_q^(k−r) x_(q+1)^r` with `β = kq + r`.
    pub fn lift_monomial(&self, beta: usize, k: usize) -> Result<MPoly> {
        let max = self.e * k;
        if beta > max || k == 0 {
            return Err(Error::BetaOutOfRange { beta, max });
        }
        let (q, r) = (beta / k, beta % k);
        let mut exps = vec![0u32; self.n + 1];
        exps[q] += (k - r) as u32;
        if r > 0 {
            exps[q + 1] += r as u32;
        }
        Ok(MPoly::monomial(self.field, exps, self.field.one()))
    }

    /// All degree-`d` exponent vectors in `x_0..x_n`, in descending lexicographic order.
    pub fn monomials(&self, d: u32) -> Vec<Exponents> {
        fn rec(pos: usize, left: u32, cur: &mut Exponents, out: &mut Vec<Exponents>) {
            if pos + 1 == cur.len() {
                cur[pos] = left;
                out.push(cur.clone());
                return;
            }
            for k in (0..=left).rev() {
                cur[pos] = k;
                rec(pos + 1, left - k, cur, out);
            }
            cur[pos] = 0;
        }
        let mut out = Vec::new();
        rec(0, d, &mut vec![0; self.n + 1], &mut out);
        out
    }

    /// Matrix of restriction from degree-`d` forms (columns: [`Self::monomials`]) to
    /// binary forms of degree `de` (rows: `t`-exponent).
    pub fn restriction_matrix(&self, d: u32) -> Matrix {
        let monos = self.monomials(d);
        let mut m = Matrix::zeros(self.field, self.e * d as usize + 1, monos.len());
        for (j, exps) in monos.iter().enumerate() {
            if let Some(k) = self.restrict_exponent(exps) {
                m.set(k, j, self.field.one());
            }
        }
        m
    }

    /// A basis of `H⁰(I_C(d))`: the nullspace of the restriction matrix.
    pub fn ideal_basis(&self, d: u32) -> Vec<MPoly> {
        let monos = self.monomials(d);
        self.restriction_matrix(d)
            .nullspace()
            .into_iter()
            .map(|v| {
                let terms = monos.iter().cloned().zip(v).filter(|(_, c)| !c.is_zero());
                MPoly::from_terms(self.field, self.n, d, terms).expect("homogeneous basis vector")
            })
            .collect()
    }

    /// Writes `F ∈ I_C` as `Σ F_ij Q_ij + Σ G_k x_k` by straightening.
    ///
    /// Terms divisible by some `x_k` with `k > e` go to `G_k` for the largest such `k`.
    /// On the rest, each term whose extreme indices `a < b` satisfy `b − a ≥ 2` is
    /// rewritten with `x_a x_b = x_(a+1) x_(b-1) − Q_(a+1,b)` until every term has index
    /// spread at most one; those terms restrict to distinct binary monomials, so the
    /// remainder is zero exactly when `F ∈ I_C`.
    pub fn straighten_decompose(&self, f: &MPoly) -> Result<IdealDecomposition> {
        self.check(f)?;
        let d = f.degree();
        if d == 0 {
            return Err(Error::DegreeMismatch(0, 1));
        }
        let mut lin: BTreeMap<usize, MPoly> = BTreeMap::new();
        let mut quad: BTreeMap<(usize, usize), MPoly> = BTreeMap::new();
        let mut work: BTreeMap<Exponents, Scalar> = BTreeMap::new();
        for (exps, c) in f.terms() {
            match (self.e + 1..=self.n).rev().find(|&k| exps[k] > 0) {
                Some(k) => {
                    let mut cof = exps.clone();
                    cof[k] -= 1;
                    lin.entry(k)
                        .or_insert_with(|| MPoly::zero(self.field, self.n, d - 1))
                        .add_term(cof, c.clone());
                }
                None => {
                    work.insert(exps.clone(), c.clone());
                }
            }
        }

        let mut normal = MPoly::zero(self.field, self.n, d);
        while let Some((exps, c)) = work.pop_first() {
            let a = exps.iter().position(|&k| k > 0).expect("degree >= 1");
            let b = exps.iter().rposition(|&k| k > 0).expect("degree >= 1");
            if b - a <= 1 {
                normal.add_term(exps, c);
                continue;
            }
            let mut cof = exps.clone();
            cof[a] -= 1;
            cof[b] -= 1;
            quad.entry((a + 1, b))
                .or_insert_with(|| MPoly::zero(self.field, self.n, d - 2))
                .add_term(cof.clone(), -&c);
            let mut next = cof;
            next[a + 1] += 1;
            next[b - 1] += 1;
            let v = match work.get(&next) {
                Some(old) => old + &c,
                None => c,
            };
            if v.is_zero() {
                work.remove(&next);
            } else {
                work.insert(next, v);
            }
        }
        if !normal.is_zero() {
            return Err(Error::NotInIdeal(normal.to_string()));
        }
        quad.retain(|_, p| !p.is_zero());
        lin.retain(|_, p| !p.is_zero());
        Ok(IdealDecomposition { quad_coeffs: quad, lin_coeffs: lin })
    }
}

impl IdealDecomposition {
    /// `Σ F_ij Q_ij + Σ G_k x_k` as a single polynomial of degree `d`.
    pub fn reconstruct(&self, ctx: &CurveContext, d: u32) -> Result<MPoly> {
        let mut acc = MPoly::zero(ctx.field, ctx.n, d);
        for (&(i, j), fij) in &self.quad_coeffs {
            acc = acc.checked_add(&fij.checked_mul(&ctx.quadric_gen(i, j)?)?)?;
        }
        for (&k, gk) in &self.lin_coeffs {
            acc = acc.checked_add(&gk.checked_mul(&ctx.x(k))?)?;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn ctx(n: usize, e: usize) -> CurveContext {
        CurveContext::new(n, e, Q).unwrap()
    }

    #[test]
    fn context_bounds() {
        assert!(CurveContext::new(3, 1, Q).is_err());
        assert!(CurveContext::new(3, 4, Q).is_err());
        assert!(CurveContext::new(2, 2, Q).is_ok());
    }

    #[test]
    fn restrictions() {
        let c = ctx(5, 4);
        assert_eq!(c.restrict(&c.x(0)).unwrap(), BinForm::st(Q, 4, 0));
        assert!(c.restrict(&c.quadric_gen(1, 2).unwrap()).unwrap().is_zero());
        for k in 1..5u32 {
            let mut e = vec![0; 6];
            e[0] = k - 1;
            e[2] = 1;
            let f = MPoly::monomial(Q, e, Q.one());
            assert_eq!(c.restrict(&f).unwrap(), BinForm::st(Q, 4 * k as usize - 2, 2));
        }
        assert!(c.restrict(&c.x(5)).unwrap().is_zero());
    }

    #[test]
    fn generators() {
        let c = ctx(4, 4);
        assert_eq!(c.quadric_gen(1, 2).unwrap(), MPoly::parse(Q, 4, "x1^2 - x0*x2").unwrap());
        assert_eq!(c.quadric_gen(1, 3).unwrap(), MPoly::parse(Q, 4, "x1*x2 - x0*x3").unwrap());
        assert!(matches!(c.quadric_gen(2, 2), Err(Error::IndexOutOfRange(_))));
        assert!(matches!(c.quadric_gen(0, 2), Err(Error::IndexOutOfRange(_))));
        assert!(matches!(c.quadric_gen(1, 5), Err(Error::IndexOutOfRange(_))));
        for i in 1..=4 {
            for j in i + 1..=4 {
                assert!(c.restrict(&c.quadric_gen(i, j).unwrap()).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn lifts() {
        let c = ctx(4, 3);
        assert_eq!(c.lift_monomial(0, 3).unwrap(), MPoly::parse(Q, 4, "x0^3").unwrap());
        assert_eq!(c.lift_monomial(9, 3).unwrap(), MPoly::parse(Q, 4, "x3^3").unwrap());
        let m = c.lift_monomial(2, 3).unwrap();
        assert_eq!(m, MPoly::parse(Q, 4, "x0*x1^2").unwrap());
        // The alternative lift x_0^(k-1) x_2 restricts to the same binary monomial.
        let alt = MPoly::parse(Q, 4, "x0^2*x2").unwrap();
        assert_eq!(c.restrict(&m).unwrap(), c.restrict(&alt).unwrap());
        assert_eq!(c.restrict(&m).unwrap(), BinForm::st(Q, 7, 2));
        assert_eq!(c.lift_monomial(10, 3), Err(Error::BetaOutOfRange { beta: 10, max: 9 }));
    }

    #[test]
    fn lift_roundtrip() {
        for e in 2..=7 {
            let c = ctx(e, e);
            for k in 1..=5 {
                for beta in 0..=e * k {
                    let m = c.lift_monomial(beta, k).unwrap();
                    assert_eq!(c.restrict(&m).unwrap(), BinForm::st(Q, e * k - beta, beta));
                }
            }
        }
    }

    #[test]
    fn basis_sizes() {
        assert!(ctx(2, 2).ideal_basis(1).is_empty());
        let b = ctx(3, 2).ideal_basis(1);
        assert_eq!(b.len(), 1);
        assert_eq!(b[0], ctx(3, 2).x(3));
        let c = ctx(5, 3);
        let r = c.restriction_matrix(2);
        assert_eq!((r.rows(), r.cols()), (7, 21));
        assert_eq!(r.rank(), 7);
        assert_eq!(c.ideal_basis(2).len(), 14);
    }

    #[test]
    fn straightening_examples() {
        let c = ctx(4, 4);
        let q12 = c.quadric_gen(1, 2).unwrap();
        let dec = c.straighten_decompose(&q12).unwrap();
        assert_eq!(dec.quad_coeffs.len(), 1);
        assert_eq!(dec.quad_coeffs[&(1, 2)], MPoly::one(Q, 4));
        assert!(dec.lin_coeffs.is_empty());

        let f = MPoly::parse(Q, 4, "x0*x3 - x1*x2").unwrap();
        let dec = c.straighten_decompose(&f).unwrap();
        assert_eq!(dec.quad_coeffs.len(), 1);
        assert_eq!(dec.quad_coeffs[&(1, 3)], MPoly::one(Q, 4).neg());

        let c3 = ctx(3, 3);
        let g = MPoly::parse(Q, 3, "x0*x3").unwrap();
        assert!(matches!(c3.straighten_decompose(&g), Err(Error::NotInIdeal(_))));
    }

    #[test]
    fn straightening_reconstructs_basis() {
        for (n, e, d) in [(5, 3, 2), (4, 4, 3), (6, 2, 3), (5, 5, 2)] {
            let c = ctx(n, e);
            for f in c.ideal_basis(d) {
                let dec = c.straighten_decompose(&f).unwrap();
                assert_eq!(dec.reconstruct(&c, d).unwrap(), f);
                for p in dec.quad_coeffs.values() {
                    assert_eq!(p.degree(), d - 2);
                }
                for p in dec.lin_coeffs.values() {
                    assert_eq!(p.degree(), d - 1);
                }
            }
        }
    }
}
