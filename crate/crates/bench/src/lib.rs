//! Fixtures shared by the benchmarks.

use splitkit::{balanced_type, construct, CurveContext, FieldSpec, MPoly, PsiMap};

/// A verified hypersurface with balanced normal bundle and its `ψ`.
pub fn balanced_fixture(n: usize, e: usize, d: usize, field: FieldSpec) -> (CurveContext, MPoly, PsiMap) {
    let ctx = CurveContext::new(n, e, field).expect("valid context");
    let target = balanced_type(n, e, d).expect("balanced type");
    let rep = construct(&ctx, d, &target).expect("balanced construction");
    let psi = splitkit::psi_from_poly(&ctx, d, &rep.f).expect("in ideal");
    (ctx, rep.f, psi)
}
