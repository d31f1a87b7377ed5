//! Explicit hypersurfaces realizing a prescribed splitting type of `N_{C/X}`.
//!
//! Every construction is checked before it is returned: the splitting type of its `ψ_F`
//! is recomputed by the twist scan and smoothness along `C` by a gcd test.

mod chain;
mod quadric;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::binforms::{bf_gcd, BinForm};
use crate::error::{Error, Result};
use crate::mpoly::MPoly;
use crate::normalmap::psi_from_poly;
use crate::rnc::CurveContext;
use crate::splitting::{enumerate_types, expected_total, is_admissible, splitting_type, SplitType};

pub use chain::construct_d3;
pub use quadric::{
    construct_quadric, construct_quadric_low_corank, corank_bound, low_corank_search,
    quad_corank, quad_matrix, schur_rank, LowCorankOutcome, QuadMat, L_SEARCH_ATTEMPTS, L_SEARCH_SEED,
};

/// A constructed `F` with its target and verified splitting type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionReport {
    pub f: MPoly,
    pub target: SplitType,
    pub achieved: SplitType,
    pub smooth_along_c: bool,
    /// Corank of the quadratic form (quadrics only).
    pub corank: Option<usize>,
}

impl Serialize for ConstructionReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("ConstructionReport", 5)?;
        st.serialize_field("F", &self.f.to_string())?;
        st.serialize_field("target", &self.target)?;
        st.serialize_field("achieved", &self.achieved)?;
        st.serialize_field("smooth_along_C", &self.smooth_along_c)?;
        st.serialize_field("corank", &self.corank)?;
        st.end()
    }
}

/// True iff `F` has no singular point on `C`: the restricted partials have constant gcd.
pub fn smooth_along_curve(ctx: &CurveContext, f: &MPoly) -> Result<bool> {
    let r = ctx.restrict(f)?;
    if !r.is_zero() {
        return Err(Error::NotInIdeal(r.to_string()));
    }
    if f.degree() == 0 {
        return Ok(false);
    }
    let mut g: Option<BinForm> = None;
    for i in 0..=ctx.n {
        let p = ctx.restrict(&f.partial_derivative(i)?)?;
        if p.is_zero() {
            continue;
        }
        g = Some(match g {
            None => bf_gcd(&p, &p)?,
            Some(acc) => bf_gcd(&acc, &p)?,
        });
        if g.as_ref().is_some_and(|g| g.degree() == 0) {
            return Ok(true);
        }
    }
    Ok(false)
}

pub(crate) fn require_admissible(ctx: &CurveContext, d: usize, target: &SplitType) -> Result<()> {
    if is_admissible(ctx.n, ctx.e, d, target) {
        Ok(())
    } else {
        Err(Error::InadmissibleType(format!(
            "{target} for (n, e, d) = ({}, {}, {d})",
            ctx.n, ctx.e
        )))
    }
}

/// Computes the splitting type and smoothness of `F` and packages them.
pub(crate) fn report_for(
    ctx: &CurveContext,
    d: usize,
    f: MPoly,
    target: &SplitType,
) -> Result<ConstructionReport> {
    let psi = psi_from_poly(ctx, d, &f)?;
    let achieved = splitting_type(&psi)?;
    let smooth = smooth_along_curve(ctx, &f)?;
    Ok(ConstructionReport { f, target: target.clone(), achieved, smooth_along_c: smooth, corank: None })
}

/// [`construct_quadric`] for `d = 2`, [`construct_d3`] otherwise.
pub fn construct(ctx: &CurveContext, d: usize, target: &SplitType) -> Result<ConstructionReport> {
    if d == 2 {
        construct_quadric(ctx, target)
    } else {
        construct_d3(ctx, d, target)
    }
}

/// Outcome of constructing one admissible type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GridCheck {
    pub target: SplitType,
    pub achieved: Option<SplitType>,
    pub smooth_along_c: bool,
    pub degree_identity: bool,
    pub in_ideal: bool,
    pub error: Option<String>,
}

impl GridCheck {
    pub fn passed(&self) -> bool {
        self.error.is_none()
            && self.achieved.as_ref() == Some(&self.target)
            && self.smooth_along_c
            && self.degree_identity
            && self.in_ideal
    }
}

/// Constructs every admissible type for `(n, e, d)` and checks target, smoothness along `C`,
/// the degree identity and membership in `H⁰(I_C(d))`.
pub fn verify_grid_point(ctx: &CurveContext, d: usize) -> Result<Vec<GridCheck>> {
    let types = enumerate_types(ctx.n, ctx.e, d)?;
    let total = expected_total(ctx.n, ctx.e, d);
    Ok(types
        .into_iter()
        .map(|target| match construct(ctx, d, &target) {
            Ok(rep) => GridCheck {
                degree_identity: rep.achieved.total() == total,
                in_ideal: ctx.restrict(&rep.f).is_ok_and(|r| r.is_zero()),
                achieved: Some(rep.achieved),
                smooth_along_c: rep.smooth_along_c,
                target,
                error: None,
            },
            Err(err) => GridCheck {
                target,
                achieved: None,
                smooth_along_c: false,
                degree_identity: false,
                in_ideal: false,
                error: Some(err.to_string()),
            },
        })
        .collect())
}
