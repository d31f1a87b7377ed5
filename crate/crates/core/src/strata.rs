//! Dimensions and codimensions of the loci of hypersurfaces with a given splitting type.
//!
//! `Σ = H⁰(I_C(d))`, `Σ_a ⊂ Σ` the hypersurfaces with `N_{C/X} ≅ E_a`, and `Φ_a` the maps
//! `N_{C/ℙⁿ} → O(de)` with kernel `E_a`. Everything here is closed-form line-bundle
//! cohomology on `ℙ¹`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::normalmap::summand_degree;
use crate::rnc::CurveContext;
use crate::splitting::{enumerate_types, h0_line, h1_end, h1_line, is_admissible, SplitType};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StratumReport {
    #[serde(rename = "type")]
    pub split_type: SplitType,
    /// Number of summands of degree `e + 2`.
    pub z: usize,
    pub h1_end: i64,
    /// `(n − e)·z`.
    pub correction: i64,
    pub codim_sigma: i64,
    pub dim_sigma: i64,
    pub dim_phi_stratum: i64,
}

fn binomial(n: u64, k: u64) -> u64 {
    (1..=k).fold(1, |acc, i| acc * (n + 1 - i) / i)
}

/// `Σ_i Σ_σ h(O(σ − v_i))` over the summands `σ` of `N_{C/ℙⁿ}`.
fn hom_to_normal(ctx: &CurveContext, st: &SplitType, h: fn(i64) -> i64) -> i64 {
    let sigmas: Vec<i64> = (0..ctx.n - 1).map(|p| summand_degree(ctx, p) as i64).collect();
    st.degrees()
        .iter()
        .map(|&v| sigmas.iter().map(|&s| h(s - v)).sum::<i64>())
        .sum()
}

/// `dim Σ = h⁰(I_C(d)) = C(n+d, d) − (de + 1)`.
pub fn dim_sigma(ctx: &CurveContext, d: usize) -> i64 {
    binomial((ctx.n + d) as u64, d as u64) as i64 - (d * ctx.e + 1) as i64
}

/// `h¹(Hom(E, N_{C/ℙⁿ}))`; equals `(n − e)·z` for admissible types.
pub fn h1_hom_normal(ctx: &CurveContext, st: &SplitType) -> i64 {
    hom_to_normal(ctx, st, h1_line)
}

pub fn stratum_report(ctx: &CurveContext, d: usize, st: &SplitType) -> Result<StratumReport> {
    let (n, e) = (ctx.n, ctx.e);
    if !is_admissible(n, e, d, st) {
        return Err(Error::InadmissibleType(format!("{st} for (n, e, d) = ({n}, {e}, {d})")));
    }
    let z = st.degrees().iter().filter(|&&v| v == e as i64 + 2).count();
    let h1 = h1_end(st);
    let correction = ((n - e) * z) as i64;
    let h0_end: i64 = st
        .degrees()
        .iter()
        .flat_map(|&x| st.degrees().iter().map(move |&y| h0_line(y - x)))
        .sum();
    let dim_phi_stratum = hom_to_normal(ctx, st, h0_line) + 1 - h0_end;
    Ok(StratumReport {
        split_type: st.clone(),
        z,
        h1_end: h1,
        correction,
        codim_sigma: h1 - correction,
        dim_sigma: dim_sigma(ctx, d),
        dim_phi_stratum,
    })
}

/// Closed forms for `d = 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct QuadricPhiDims {
    /// `h⁰(I_C²(2)) = (n−e)(n−e+1)/2`, the kernel of `φ`.
    pub h0_isq: i64,
    /// `(2ne + 2n − 3e − e²)/2`, the rank of `φ`.
    pub image_dim: i64,
}

pub fn quadric_phi_dims(ctx: &CurveContext) -> QuadricPhiDims {
    let (n, e) = (ctx.n as i64, ctx.e as i64);
    QuadricPhiDims {
        h0_isq: (n - e) * (n - e + 1) / 2,
        image_dim: (2 * n * e + 2 * n - 3 * e - e * e) / 2,
    }
}

/// One report per admissible type, sorted by `codim_sigma` (ties in descending type order).
pub fn census(ctx: &CurveContext, d: usize) -> Result<Vec<StratumReport>> {
    let types = enumerate_types(ctx.n, ctx.e, d)?;
    let mut reports = types
        .par_iter()
        .map(|t| stratum_report(ctx, d, t))
        .collect::<Result<Vec<_>>>()?;
    reports.sort_by_key(|r| r.codim_sigma);
    Ok(reports)
}
