//! Quadrics (`d = 2`): the explicit construction and corank reduction.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{report_for, require_admissible, ConstructionReport};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::mpoly::MPoly;
use crate::rnc::CurveContext;
use crate::splitting::SplitType;

/// Attempts at a random invertible lower-right block before giving up.
pub const L_SEARCH_ATTEMPTS: usize = 64;

/// Default seed of the lower-block search.
pub const L_SEARCH_SEED: u64 = 0x5eed_c0de;

/// Entries of the random lower block are drawn from `[-L_ENTRY_BOUND, L_ENTRY_BOUND]` over ℚ.
const L_ENTRY_BOUND: i64 = 9;

/// Symmetric `(n+1)×(n+1)` matrix `M` with `F(x) = xᵀMx`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadMat {
    matrix: Matrix,
}

impl QuadMat {
    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn size(&self) -> usize {
        self.matrix.rows()
    }

    /// `(Q, A, L)` with `Q` on `x_0..x_e`, `L` on `x_(e+1)..x_n` and `A` the cross block.
    pub fn blocks(&self, e: usize) -> (Matrix, Matrix, Matrix) {
        let top: Vec<usize> = (0..=e).collect();
        let bottom: Vec<usize> = (e + 1..self.size()).collect();
        (
            self.matrix.submatrix(&top, &top),
            self.matrix.submatrix(&top, &bottom),
            self.matrix.submatrix(&bottom, &bottom),
        )
    }
}

/// The symmetric matrix of a quadratic form: `M_ii = coeff(x_i²)`, `M_ij = coeff(x_i x_j)/2`.
pub fn quad_matrix(ctx: &CurveContext, f: &MPoly) -> Result<QuadMat> {
    if ctx.field.characteristic() == 2 {
        return Err(Error::CharTwo);
    }
    if f.degree() != 2 {
        return Err(Error::DegreeMismatch(f.degree() as i64, 2));
    }
    if f.n() != ctx.n {
        return Err(Error::AmbientMismatch(f.n(), ctx.n));
    }
    let two = ctx.field.from_i64(2);
    let mut m = Matrix::zeros(ctx.field, ctx.n + 1, ctx.n + 1);
    for (exps, c) in f.terms() {
        let idx: Vec<usize> = exps
            .iter()
            .enumerate()
            .flat_map(|(i, &k)| std::iter::repeat_n(i, k as usize))
            .collect();
        let (i, j) = (idx[0], idx[1]);
        if i == j {
            m.set(i, i, c.clone());
        } else {
            let half = c.checked_div(&two)?;
            m.set(i, j, half.clone());
            m.set(j, i, half);
        }
    }
    Ok(QuadMat { matrix: m })
}

/// `(n + 1) − rank(M)`.
pub fn quad_corank(m: &QuadMat) -> usize {
    m.size() - m.matrix.rank()
}

/// `rank(Q − A L⁻¹ Aᵀ) + rank(L)`, the rank of `(Q A; Aᵀ L)` for invertible `L`.
pub fn schur_rank(q: &Matrix, a: &Matrix, l: &Matrix) -> Result<usize> {
    let l_inv = l.inverse()?;
    let correction = a.mul(&l_inv)?.mul(&a.transpose())?;
    Ok(q.sub(&correction)?.rank() + l.rank())
}

/// Splits a type into the ascending `a`-values (`O(e+2−a)`, `e − 2` of them) and the
/// `b`-values (`O(e−b)`, `n − e` of them). The largest degrees go to the `a`-slots.
fn split_ab(ctx: &CurveContext, target: &SplitType) -> (Vec<i64>, Vec<i64>) {
    let e = ctx.e as i64;
    let degrees = target.degrees();
    let k = ctx.e - 2;
    let mut a: Vec<i64> = degrees[..k].iter().map(|&v| e + 2 - v).collect();
    a.sort_unstable();
    let b = degrees[k..].iter().map(|&v| e - v).collect();
    (a, b)
}

/// `Σ_{a_i ≥ 4} (a_i − 3)` for the `a`-values used by [`construct_quadric`].
pub fn corank_bound(ctx: &CurveContext, target: &SplitType) -> usize {
    let (a, _) = split_ab(ctx, target);
    a.iter().filter(|&&v| v >= 4).map(|&v| (v - 3) as usize).sum()
}

/// `Σ_{i=0}^{e−2} Q_(β_i+1, β_i+2) + Σ_{j>e} x_(γ_j) x_j` with `β` the partial sums of
/// the ascending `a` and `γ_j = e − Σ_{k>j} b_k`.
/// With `distinct`, a repeated `β` contributes its `Q` once instead of with multiplicity.
fn base_quadric(ctx: &CurveContext, a: &[i64], b: &[i64], distinct: bool) -> Result<MPoly> {
    let mut f = MPoly::zero(ctx.field, ctx.n, 2);
    let mut beta = 0usize;
    f = f.checked_add(&ctx.quadric_gen(1, 2)?)?;
    for &ai in a {
        beta += ai as usize;
        if distinct && ai == 0 {
            continue;
        }
        f = f.checked_add(&ctx.quadric_gen(beta + 1, beta + 2)?)?;
    }
    let mut gamma = ctx.e;
    for j in (ctx.e + 1..=ctx.n).rev() {
        f = f.checked_add(&ctx.x(gamma).checked_mul(&ctx.x(j))?)?;
        gamma -= b[j - ctx.e - 1] as usize;
    }
    Ok(f)
}

fn with_corank(ctx: &CurveContext, mut rep: ConstructionReport) -> Result<ConstructionReport> {
    rep.corank = Some(quad_corank(&quad_matrix(ctx, &rep.f)?));
    Ok(rep)
}

/// The explicit quadric for an admissible type, verified.
pub fn construct_quadric(ctx: &CurveContext, target: &SplitType) -> Result<ConstructionReport> {
    require_admissible(ctx, 2, target)?;
    let (a, b) = split_ab(ctx, target);
    let f = base_quadric(ctx, &a, &b, false)?;
    let rep = report_for(ctx, 2, f, target)?;
    if rep.achieved != *target || !rep.smooth_along_c {
        return Err(Error::VerificationFailed(format!(
            "quadric {} gave {} (smooth along C: {})",
            rep.f, rep.achieved, rep.smooth_along_c
        )));
    }
    with_corank(ctx, rep)
}

/// First-block replacement, keyed on `l = #{a_i = 1} + 1` and `m = Σ_{a_i ≤ 2} a_i + 2`.
fn first_block_change(ctx: &CurveContext, a: &[i64]) -> Result<Option<MPoly>> {
    let l = a.iter().filter(|&&v| v == 1).count() + 1;
    let m = a.iter().filter(|&&v| v <= 2).sum::<i64>() as usize + 2;
    let q = |i, j| ctx.quadric_gen(i, j);
    let change = match (l, m) {
        (1, m) if m % 4 == 0 => q(m / 2, m / 2 + 1)?.checked_add(&q(m / 2 - 1, m / 2 + 1)?)?,
        (3, 4) => q(1, 3)?.checked_add(&q(1, 4)?)?,
        (3, _) => q(4, 5)?.checked_sub(&q(2, 3)?)?,
        _ => return Ok(None),
    };
    Ok(Some(change))
}

/// Result of [`low_corank_search`], reported even when the bound is missed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowCorankOutcome {
    pub report: ConstructionReport,
    pub bound: usize,
    /// Lower blocks drawn (0 when `e = n`).
    pub attempts: usize,
}

impl LowCorankOutcome {
    pub fn corank(&self) -> usize {
        self.report.corank.expect("quadric reports carry a corank")
    }

    pub fn meets_bound(&self) -> bool {
        self.corank() <= self.bound
    }
}

fn type_seed(seed: u64, ctx: &CurveContext, target: &SplitType) -> u64 {
    let mut h = seed ^ ((ctx.n as u64) << 48) ^ ((ctx.e as u64) << 40);
    for &v in target.degrees() {
        h = h.rotate_left(7) ^ (v as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15);
    }
    h
}

fn random_symmetric(ctx: &CurveContext, size: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let mut l = Matrix::zeros(ctx.field, size, size);
    for i in 0..size {
        for j in i..size {
            let v = ctx.field.random(rng, L_ENTRY_BOUND);
            l.set(i, j, v.clone());
            l.set(j, i, v);
        }
    }
    l
}

/// `x_(e+1..n)ᵀ L x_(e+1..n)` as a polynomial.
fn lower_block_poly(ctx: &CurveContext, l: &Matrix) -> Result<MPoly> {
    let two = ctx.field.from_i64(2);
    let mut f = MPoly::zero(ctx.field, ctx.n, 2);
    for i in 0..l.rows() {
        for j in i..l.cols() {
            let c = l.get(i, j);
            if c.is_zero() {
                continue;
            }
            let c = if i == j { c.clone() } else { c.checked_mul(&two)? };
            let mono = ctx.x(ctx.e + 1 + i).checked_mul(&ctx.x(ctx.e + 1 + j))?;
            f = f.checked_add(&mono.scale(&c))?;
        }
    }
    Ok(f)
}

/// Accepts `candidate` only if it still realizes `target` and is smooth along `C`.
fn verified_step(
    ctx: &CurveContext,
    target: &SplitType,
    candidate: MPoly,
    step: &str,
) -> Result<MPoly> {
    let rep = report_for(ctx, 2, candidate, target)?;
    if rep.achieved != *target || !rep.smooth_along_c {
        return Err(Error::SurgeryVerificationFailed(format!(
            "{step} on {target}: {} gave {} (smooth along C: {})",
            rep.f, rep.achieved, rep.smooth_along_c
        )));
    }
    Ok(rep.f)
}

/// Base quadric with each repeated `β` counted once, first-block surgery, then for
/// `e < n` a seeded search over invertible symmetric lower blocks `L` keeping the one of
/// largest Schur rank. Every modified `F` is re-verified; a changed splitting is
/// [`Error::SurgeryVerificationFailed`].
///
/// The block analysis behind the surgery reads the diagonal of the base quadric as 1s and
/// 0s, which holds only when each `Q_(β+1,β+2)` appears once; repeated summands scale
/// entries of `ψ_F` and leave the splitting unchanged, so they are collapsed first.
pub fn low_corank_search(
    ctx: &CurveContext,
    target: &SplitType,
    seed: u64,
) -> Result<LowCorankOutcome> {
    construct_quadric(ctx, target)?;
    let bound = corank_bound(ctx, target);
    let (a, b) = split_ab(ctx, target);
    let mut rng = ChaCha8Rng::seed_from_u64(type_seed(seed, ctx, target));
    let mut best: Option<LowCorankOutcome> = None;
    // The order of the b-values only moves the cross terms x_γ x_j; try each.
    for b in distinct_permutations(&b) {
        let outcome = reduce_corank(ctx, target, &a, &b, bound, &mut rng)?;
        let done = outcome.meets_bound();
        if best.as_ref().is_none_or(|o| outcome.corank() < o.corank()) {
            best = Some(outcome);
        }
        if done {
            break;
        }
    }
    Ok(best.expect("at least one ordering"))
}

fn distinct_permutations(values: &[i64]) -> Vec<Vec<i64>> {
    let mut cur = values.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    // Lexicographic successor until the sequence is nonincreasing.
    loop {
        let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).expect("successor exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

fn reduce_corank(
    ctx: &CurveContext,
    target: &SplitType,
    a: &[i64],
    b: &[i64],
    bound: usize,
    rng: &mut ChaCha8Rng,
) -> Result<LowCorankOutcome> {
    let mut f = verified_step(ctx, target, base_quadric(ctx, a, b, true)?, "collapsing repeats")?;
    if let Some(change) = first_block_change(ctx, a)? {
        f = verified_step(ctx, target, f.checked_add(&change)?, "first-block change")?;
    }

    let mut attempts = 0;
    if ctx.e < ctx.n {
        let (q, a_block, _) = quad_matrix(ctx, &f)?.blocks(ctx.e);
        let size = ctx.n - ctx.e;
        let mut best: Option<(usize, Matrix)> = None;
        while attempts < L_SEARCH_ATTEMPTS {
            attempts += 1;
            let l = random_symmetric(ctx, size, rng);
            let Ok(rank) = schur_rank(&q, &a_block, &l) else {
                continue;
            };
            if best.as_ref().is_none_or(|(r, _)| rank > *r) {
                best = Some((rank, l));
            }
            if rank == ctx.n + 1 {
                break;
            }
        }
        if let Some((_, l)) = best {
            let candidate = f.checked_add(&lower_block_poly(ctx, &l)?)?;
            f = verified_step(ctx, target, candidate, "lower block")?;
        }
    }

    let report = with_corank(ctx, report_for(ctx, 2, f, target)?)?;
    Ok(LowCorankOutcome { report, bound, attempts })
}

/// [`low_corank_search`] with the default seed, failing unless the corank bound is met.
pub fn construct_quadric_low_corank(
    ctx: &CurveContext,
    target: &SplitType,
) -> Result<ConstructionReport> {
    let outcome = low_corank_search(ctx, target, L_SEARCH_SEED)?;
    if outcome.meets_bound() {
        Ok(outcome.report)
    } else if ctx.e < ctx.n {
        Err(Error::LSearchExhausted(outcome.attempts))
    } else {
        Err(Error::VerificationFailed(format!(
            "corank {} exceeds bound {}",
            outcome.corank(),
            outcome.bound
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normalmap::psi_from_poly;
    use crate::scalars::FieldSpec;
    use crate::splitting::enumerate_types;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn st(s: &str) -> SplitType {
        s.parse().unwrap()
    }

    fn entries(psi: &crate::normalmap::PsiMap) -> Vec<String> {
        psi.entries().iter().map(|f| f.to_string()).collect()
    }

    fn q_sum(ctx: &CurveContext, pairs: &[(usize, usize)]) -> MPoly {
        pairs.iter().fold(MPoly::zero(ctx.field, ctx.n, 2), |f, &(i, j)| {
            f.checked_add(&ctx.quadric_gen(i, j).unwrap()).unwrap()
        })
    }

    #[test]
    fn balanced_quadric() {
        let ctx = CurveContext::new(5, 5, Q).unwrap();
        let rep = construct_quadric(&ctx, &st("6,6,6")).unwrap();
        assert_eq!(rep.f, q_sum(&ctx, &[(1, 2), (2, 3), (3, 4), (4, 5)]));
        assert_eq!(rep.achieved, st("6,6,6"));
    }

    #[test]
    fn duplicate_summand_kept() {
        let ctx = CurveContext::new(5, 5, Q).unwrap();
        let rep = construct_quadric(&ctx, &st("7,6,5")).unwrap();
        assert_eq!(rep.f, q_sum(&ctx, &[(1, 2), (1, 2), (2, 3), (4, 5)]));
        assert_eq!(rep.achieved, st("7,6,5"));
    }

    #[test]
    fn cross_terms() {
        let ctx = CurveContext::new(4, 3, Q).unwrap();
        let rep = construct_quadric(&ctx, &st("5,2")).unwrap();
        let want = q_sum(&ctx, &[(1, 2), (1, 2)])
            .checked_add(&ctx.x(3).checked_mul(&ctx.x(4)).unwrap())
            .unwrap();
        assert_eq!(rep.f, want);
        let psi = psi_from_poly(&ctx, 2, &rep.f).unwrap();
        assert_eq!(entries(&psi), vec!["2*s", "0", "t^3"]);
        assert!(rep.smooth_along_c);
    }

    #[test]
    fn displayed_matrix() {
        // ψ = (s³, s²t, 0, t³): a = (0, 1, 2).
        let ctx = CurveContext::new(5, 5, Q).unwrap();
        let f = q_sum(&ctx, &[(1, 2), (2, 3), (4, 5)]);
        let m = quad_matrix(&ctx, &f).unwrap();
        let h = Q.fraction(-1, 2).unwrap();
        let mut want = Matrix::zeros(Q, 6, 6);
        for (i, j) in [(0, 2), (1, 3), (3, 5)] {
            want.set(i, j, h.clone());
            want.set(j, i, h.clone());
        }
        for i in [1, 2, 4] {
            want.set(i, i, Q.one());
        }
        assert_eq!(m.matrix(), &want);
        assert!(m.matrix().is_symmetric());
    }

    #[test]
    fn trivial_coranks() {
        for n in 2..=6 {
            let ctx = CurveContext::new(n, 2, Q).unwrap();
            let f = ctx.x(0).checked_mul(&ctx.x(1)).unwrap();
            assert_eq!(quad_corank(&quad_matrix(&ctx, &f).unwrap()), n - 1);
            let diag = (0..=n).fold(MPoly::zero(Q, n, 2), |acc, i| {
                acc.checked_add(&ctx.x(i).pow(2).scale(&Q.from_i64(i as i64 + 1))).unwrap()
            });
            assert_eq!(quad_corank(&quad_matrix(&ctx, &diag).unwrap()), 0);
        }
    }

    #[test]
    fn surgery_l3_m4() {
        // a = (1, 1) gives l = 3, m = 4.
        let ctx = CurveContext::new(4, 4, Q).unwrap();
        let t = st("5,5");
        let rep = construct_quadric_low_corank(&ctx, &t).unwrap();
        assert_eq!(rep.achieved, t);
        assert_eq!(rep.corank, Some(0));
        let psi = psi_from_poly(&ctx, 2, &rep.f).unwrap();
        assert_eq!(
            entries(&psi)[..3],
            ["s^2 + s*t + t^2", "s^2 + 2*s*t", "s^2 + t^2"]
        );
    }

    #[test]
    fn corank_one_bound() {
        let ctx = CurveContext::new(6, 6, Q).unwrap();
        let t = st("8,8,8,4");
        assert_eq!(corank_bound(&ctx, &t), 1);
        let rep = construct_quadric_low_corank(&ctx, &t).unwrap();
        assert!(rep.corank.unwrap() <= 1);
    }

    #[test]
    fn bounds_hold_small() {
        for (n, e) in [(5, 5), (6, 6), (5, 3), (6, 4)] {
            let ctx = CurveContext::new(n, e, Q).unwrap();
            for t in enumerate_types(n, e, 2).unwrap() {
                let out = low_corank_search(&ctx, &t, L_SEARCH_SEED).unwrap();
                assert_eq!(out.report.achieved, t);
                if n == e {
                    assert!(out.meets_bound(), "({n},{e}) {t}: {:?}", out.corank());
                }
            }
        }
    }

    #[test]
    fn schur_identity_example() {
        let m = Matrix::from_i64(Q, &[&[1, 2, 0, 1], &[2, 4, 1, 0], &[0, 1, 3, 1], &[1, 0, 1, 2]]);
        let qm = QuadMat { matrix: m.clone() };
        let (q, a, l) = qm.blocks(1);
        assert_eq!(schur_rank(&q, &a, &l).unwrap(), m.rank());
    }
}
