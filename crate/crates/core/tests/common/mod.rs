//! Oracles shared by the integration tests. They recompute quantities from first
//! principles instead of calling the routines under test.
#![allow(dead_code)]

use rand::Rng;
use splitkit::{BinForm, CurveContext, FieldSpec, MPoly, Matrix, PsiMap, Scalar};

/// Splitting type of `ker ψ` read off `h⁰(ker ψ(m))`, each computed as the nullity of
/// an explicitly assembled section map.
pub fn oracle_split(psi: &PsiMap) -> Vec<i64> {
    let ctx = psi.ctx();
    let rank = ctx.n - 2;
    let sigmas = psi.summand_degrees();
    let target = psi.target_degree() as i64;
    let mut degrees = Vec::new();
    let mut prev = 0usize;
    let mut prev_inc = 0usize;
    let start = -(ctx.e as i64) - 3;
    for m in start..start + 400 {
        let h0 = kernel_sections(ctx.field, psi.entries(), &sigmas, target, m);
        let inc = h0 - prev;
        for _ in prev_inc..inc {
            degrees.push(-m);
        }
        if inc == rank {
            degrees.sort_unstable_by(|a, b| b.cmp(a));
            return degrees;
        }
        prev = h0;
        prev_inc = inc;
    }
    panic!("oracle scan did not terminate");
}

fn kernel_sections(
    field: FieldSpec,
    entries: &[BinForm],
    sigmas: &[usize],
    target: i64,
    m: i64,
) -> usize {
    let rows = target + m + 1;
    if rows <= 0 {
        // Every section maps into zero; all of H⁰(N(m)) is in the kernel.
        return sigmas.iter().map(|&s| (s as i64 + m + 1).max(0) as usize).sum();
    }
    let mut columns: Vec<Vec<Scalar>> = Vec::new();
    for (f, &s) in entries.iter().zip(sigmas) {
        let width = s as i64 + m;
        if width < 0 {
            continue;
        }
        for k in 0..=width as usize {
            // Column for the section s^(width−k) t^k on this summand.
            let prod = f.shift(width as usize - k, k);
            columns.push(prod.coeffs().to_vec());
        }
    }
    if columns.is_empty() {
        return 0;
    }
    let mat = Matrix::from_columns(field, rows as usize, &columns);
    columns.len() - mat.rank()
}

/// Direct substitution `x_i ↦ s^(e−i) t^i` (zero for `i > e`), as a coefficient vector.
pub fn oracle_restrict(ctx: &CurveContext, f: &MPoly) -> Vec<Scalar> {
    let mut out = vec![ctx.field.zero(); ctx.e * f.degree() as usize + 1];
    'terms: for (exps, c) in f.terms() {
        let mut t = 0;
        for (i, &k) in exps.iter().enumerate() {
            if k > 0 && i > ctx.e {
                continue 'terms;
            }
            t += i * k as usize;
        }
        out[t] = &out[t] + c;
    }
    out
}

/// A random form of degree `deg` in `x_0..x_n` with `terms` random monomials.
pub fn random_form<R: Rng>(ctx: &CurveContext, deg: u32, terms: usize, rng: &mut R) -> MPoly {
    let mut f = MPoly::zero(ctx.field, ctx.n, deg);
    if deg == 0 {
        return MPoly::one(ctx.field, ctx.n).scale(&random_nonzero(ctx.field, rng));
    }
    for _ in 0..terms {
        let mut exps = vec![0u32; ctx.n + 1];
        for _ in 0..deg {
            exps[rng.gen_range(0..=ctx.n)] += 1;
        }
        let c = random_nonzero(ctx.field, rng);
        f = f.checked_add(&MPoly::monomial(ctx.field, exps, c)).unwrap();
    }
    f
}

pub fn random_nonzero<R: Rng>(field: FieldSpec, rng: &mut R) -> Scalar {
    loop {
        let c = field.random(rng, 5);
        if !c.is_zero() {
            return c;
        }
    }
}

/// A random `F = Σ F_ij Q_ij + Σ G_k x_k` together with `ψ_F` evaluated directly from
/// these (unstraightened) coefficients.
pub fn random_decomposed<R: Rng>(ctx: &CurveContext, d: usize, rng: &mut R) -> (MPoly, PsiMap) {
    let e = ctx.e;
    let field = ctx.field;
    let c_deg = e * (d - 1) - 2;
    let mut f = MPoly::zero(field, ctx.n, d as u32);
    let mut c = vec![BinForm::zero(field, c_deg); e - 1];
    for i in 1..e {
        for j in i + 1..=e {
            if rng.gen_bool(0.5) {
                continue;
            }
            let fij = random_form(ctx, d as u32 - 2, 3, rng);
            f = f.checked_add(&fij.checked_mul(&ctx.quadric_gen(i, j).unwrap()).unwrap()).unwrap();
            let r = BinForm::from_coeffs(field, oracle_restrict(ctx, &fij)).unwrap();
            for l in i..j {
                c[l - 1] = c[l - 1].checked_add(&r.shift(e + l - i - j, i + j - l - 2)).unwrap();
            }
        }
    }
    let mut entries = c;
    for k in e + 1..=ctx.n {
        let g = random_form(ctx, d as u32 - 1, 3, rng);
        f = f.checked_add(&g.checked_mul(&ctx.x(k)).unwrap()).unwrap();
        entries.push(BinForm::from_coeffs(field, oracle_restrict(ctx, &g)).unwrap());
    }
    (f, PsiMap::new(*ctx, d, entries).unwrap())
}

/// A random element of `H⁰(I_C²(d))`: products of two generators of `I_C` times a form.
pub fn random_square_element<R: Rng>(ctx: &CurveContext, d: usize, rng: &mut R) -> MPoly {
    let mut gens: Vec<MPoly> = Vec::new();
    for i in 1..ctx.e {
        for j in i + 1..=ctx.e {
            gens.push(ctx.quadric_gen(i, j).unwrap());
        }
    }
    for k in ctx.e + 1..=ctx.n {
        gens.push(ctx.x(k));
    }
    let mut h = MPoly::zero(ctx.field, ctx.n, d as u32);
    for _ in 0..4 {
        let a = &gens[rng.gen_range(0..gens.len())];
        let b = &gens[rng.gen_range(0..gens.len())];
        let deg = a.degree() + b.degree();
        if deg as usize > d {
            continue;
        }
        let rest = random_form(ctx, d as u32 - deg, 2, rng);
        h = h.checked_add(&a.checked_mul(b).unwrap().checked_mul(&rest).unwrap()).unwrap();
    }
    h
}

/// `Σ_i Σ_σ h¹(O(σ − v_i))` over the summands of `N_{C/ℙⁿ} = O(e+2)^(e−1) ⊕ O(e)^(n−e)`.
pub fn oracle_h1_hom_normal(n: usize, e: usize, degrees: &[i64]) -> i64 {
    let h1 = |a: i64| (-a - 1).max(0);
    let e = e as i64;
    degrees
        .iter()
        .map(|&v| (e - 1) * h1(e + 2 - v) + (n as i64 - e) * h1(e - v))
        .sum()
}
