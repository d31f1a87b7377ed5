//! The evaluation map `ψ_F : N_{C/ℙⁿ} → O(de)` and the linear map `φ : F ↦ ψ_F`.
//!
//! `N_{C/ℙⁿ} ≅ O(e+2)^(e−1) ⊕ O(e)^(n−e)`, so `ψ_F` is a row of `n − 1` binary forms:
//! `e − 1` entries `c_l` of degree `e(d−1) − 2`, then `n − e` entries `G_k|_C` of
//! degree `e(d−1)`.

use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::binforms::BinForm;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::mpoly::MPoly;
use crate::rnc::CurveContext;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiMap {
    ctx: CurveContext,
    d: usize,
    entries: Vec<BinForm>,
}

impl PsiMap {
    /// Checks that there are `n − 1` entries of the right degrees.
    pub fn new(ctx: CurveContext, d: usize, entries: Vec<BinForm>) -> Result<Self> {
        if d < 2 {
            return Err(Error::DegreeMismatch(d as i64, 2));
        }
        if entries.len() != ctx.n - 1 {
            return Err(Error::IndexOutOfRange(format!(
                "expected {} entries, got {}",
                ctx.n - 1,
                entries.len()
            )));
        }
        let psi = PsiMap { ctx, d, entries };
        for (pos, f) in psi.entries.iter().enumerate() {
            if f.field() != ctx.field {
                return Err(Error::FieldMismatch);
            }
            let want = psi.entry_degree(pos);
            if f.degree() != want {
                return Err(Error::DegreeMismatch(f.degree() as i64, want as i64));
            }
        }
        Ok(psi)
    }

    /// Inverse of [`Self::flatten`].
    pub fn from_flat(ctx: CurveContext, d: usize, flat: &[crate::scalars::Scalar]) -> Result<Self> {
        let widths: Vec<usize> =
            (0..ctx.n - 1).map(|p| d * ctx.e - summand_degree(&ctx, p) + 1).collect();
        if flat.len() != widths.iter().sum::<usize>() {
            return Err(Error::IndexOutOfRange(format!(
                "{} coefficients for a map with {} slots",
                flat.len(),
                widths.iter().sum::<usize>()
            )));
        }
        let mut entries = Vec::with_capacity(widths.len());
        let mut at = 0;
        for w in widths {
            entries.push(BinForm::from_coeffs(ctx.field, flat[at..at + w].to_vec())?);
            at += w;
        }
        PsiMap::new(ctx, d, entries)
    }

    pub fn ctx(&self) -> &CurveContext {
        &self.ctx
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn entries(&self) -> &[BinForm] {
        &self.entries
    }

    /// Degree of the normal-bundle summand at 0-based position `pos`.
    pub fn summand_degree(&self, pos: usize) -> usize {
        summand_degree(&self.ctx, pos)
    }

    pub fn summand_degrees(&self) -> Vec<usize> {
        (0..self.entries.len()).map(|p| self.summand_degree(p)).collect()
    }

    /// Target degree `de` minus the summand degree.
    pub fn entry_degree(&self, pos: usize) -> usize {
        self.d * self.ctx.e - self.summand_degree(pos)
    }

    pub fn target_degree(&self) -> usize {
        self.d * self.ctx.e
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(BinForm::is_zero)
    }

    /// All entry coefficients concatenated: `c_1..c_(e−1)` then `G_(e+1)..G_n`, each in
    /// ascending `t`-degree.
    pub fn flatten(&self) -> Vec<crate::scalars::Scalar> {
        self.entries.iter().flat_map(|f| f.coeffs().iter().cloned()).collect()
    }

    pub fn checked_add(&self, other: &PsiMap) -> Result<PsiMap> {
        if self.ctx != other.ctx || self.d != other.d {
            return Err(Error::InvalidContext("adding maps of different shapes".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.checked_add(b))
            .collect::<Result<_>>()?;
        Ok(PsiMap { ctx: self.ctx, d: self.d, entries })
    }

    pub fn scale(&self, c: &crate::scalars::Scalar) -> PsiMap {
        PsiMap {
            ctx: self.ctx,
            d: self.d,
            entries: self.entries.iter().map(|f| f.scale(c)).collect(),
        }
    }
}

pub(crate) fn summand_degree(ctx: &CurveContext, pos: usize) -> usize {
    if pos + 1 < ctx.e {
        ctx.e + 2
    } else {
        ctx.e
    }
}

/// Row dimension of `φ`: `(e−1)(e(d−1)−1) + (n−e)(e(d−1)+1)`.
pub fn phi_codomain_dim(ctx: &CurveContext, d: usize) -> usize {
    let (n, e) = (ctx.n, ctx.e);
    (e - 1) * (e * (d - 1) - 1) + (n - e) * (e * (d - 1) + 1)
}

/// `ψ_F` for `F ∈ I_C` of degree `d ≥ 2`.
///
/// With `F = Σ F_ij Q_ij + Σ G_k x_k`,
/// `c_l = Σ_{i ≤ l < j} F_ij|_C · s^(e−j−i+l) t^(j+i−l−2)` and the `G`-entries are `G_k|_C`.
pub fn psi_from_poly(ctx: &CurveContext, d: usize, f: &MPoly) -> Result<PsiMap> {
    if f.degree() as usize != d {
        return Err(Error::DegreeMismatch(f.degree() as i64, d as i64));
    }
    if d < 2 {
        return Err(Error::DegreeMismatch(d as i64, 2));
    }
    let e = ctx.e;
    let dec = ctx.straighten_decompose(f)?;
    let c_deg = e * (d - 1) - 2;
    let mut entries = vec![BinForm::zero(ctx.field, c_deg); e - 1];
    for (&(i, j), fij) in &dec.quad_coeffs {
        let r = ctx.restrict(fij)?;
        if r.is_zero() {
            continue;
        }
        for l in i..j {
            let term = r.shift(e + l - j - i, j + i - l - 2);
            entries[l - 1] = entries[l - 1].checked_add(&term)?;
        }
    }
    for k in e + 1..=ctx.n {
        entries.push(match dec.lin_coeffs.get(&k) {
            Some(g) => ctx.restrict(g)?,
            None => BinForm::zero(ctx.field, e * (d - 1)),
        });
    }
    PsiMap::new(*ctx, d, entries)
}

/// The matrix of `φ : H⁰(I_C(d)) → Hom(N_{C/ℙⁿ}, O(de))`; column `b` is the flattened
/// `ψ` of the `b`-th element of [`CurveContext::ideal_basis`].
pub fn phi_matrix(ctx: &CurveContext, d: usize) -> Result<Matrix> {
    let basis = ctx.ideal_basis(d as u32);
    phi_matrix_on(ctx, d, &basis)
}

/// The matrix of `φ` restricted to the span of `basis`.
pub fn phi_matrix_on(ctx: &CurveContext, d: usize, basis: &[MPoly]) -> Result<Matrix> {
    let columns = basis
        .par_iter()
        .map(|f| psi_from_poly(ctx, d, f).map(|p| p.flatten()))
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_columns(ctx.field, phi_codomain_dim(ctx, d), &columns))
}

impl Serialize for PsiMap {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("PsiMap", 4)?;
        st.serialize_field("e", &self.ctx.e)?;
        st.serialize_field("n", &self.ctx.n)?;
        st.serialize_field("d", &self.d)?;
        st.serialize_field("entries", &self.entries)?;
        st.end()
    }
}
