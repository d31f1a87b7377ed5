//! Degree `d ≥ 3`: hypersurfaces whose `ψ_F` is a chain of monomials.
//!
//! Take `F = Σ F_p Q_(p,p+1) + Σ G_k x_k` with monomial `F_p`, `G_k`. Then every nonzero
//! entry of `ψ_F` is a monomial; write `L` for its `t`-exponent and `σ` for the degree of
//! the normal-bundle summand it sits on (`e + 2` for `c`-entries, `e` for `G`-entries).
//! If the nonzero entries, in order, have nondecreasing `L` and `L + σ`, consecutive
//! entries satisfy a binomial relation of degree `L_k + σ_k − L_(k+1)` and these relations
//! together with the zero entries span `ker ψ_F`. The entries are coprime, so `F` is smooth
//! along `C`, when the chain starts at `L = 0` and ends at `L = de − σ`.
//!
//! For a `c`-entry at position `p` (1-based), `L = p − 1 + β` with `F_p|_C = s^(e(d−2)−β) t^β`,
//! so `p − 1 ≤ L ≤ p − 1 + e(d − 2)`. A `G`-entry can take any `L` in `0..=e(d−1)`.
//!
//! The search puts every summand of degree `e + 2` it can on a zero `c`-entry, uses the
//! summands of degree above `e` (and then the largest remaining ones) as `c`–`c` relations,
//! and the rest as the `c`–`G` transition and `G`–`G` relations. If that layout does not fit
//! the position windows it backtracks over zero counts, relation choices and orders.

use super::{report_for, require_admissible, ConstructionReport};
use crate::error::{Error, Result};
use crate::mpoly::MPoly;
use crate::rnc::CurveContext;
use crate::splitting::SplitType;

/// Upper bound on layouts tried before giving up.
const MAX_LAYOUTS: usize = 20_000;

/// Nonzero entries of `ψ_F`: `(position p, L)` for the `c` block and `(k, L)` for `G_k`.
#[derive(Clone, Debug, Default)]
struct Layout {
    c: Vec<(usize, usize)>,
    g: Vec<(usize, usize)>,
}

/// An `F` of degree `d ≥ 3`, smooth along `C`, with `N_{C/X}` of the given type.
pub fn construct_d3(ctx: &CurveContext, d: usize, target: &SplitType) -> Result<ConstructionReport> {
    if d < 3 {
        return Err(Error::InvalidContext(format!("construct_d3 needs d >= 3, got {d}")));
    }
    require_admissible(ctx, d, target)?;
    let mut tried = 0usize;
    let mut found = None;
    let mut failure = None;
    for_each_layout(ctx, d, target, &mut |layout| {
        tried += 1;
        let attempt = build(ctx, d, layout).and_then(|f| report_for(ctx, d, f, target));
        match attempt {
            Ok(rep) if rep.achieved == *target && rep.smooth_along_c => {
                found = Some(rep);
                true
            }
            Ok(rep) => {
                failure = Some(format!("layout {layout:?} gave {}", rep.achieved));
                tried >= MAX_LAYOUTS
            }
            Err(err) => {
                failure = Some(err.to_string());
                tried >= MAX_LAYOUTS
            }
        }
    });
    found.ok_or_else(|| {
        Error::VerificationFailed(format!(
            "no monomial chain realizes {target} after {tried} layouts{}",
            failure.map(|f| format!("; last: {f}")).unwrap_or_default()
        ))
    })
}

fn build(ctx: &CurveContext, d: usize, layout: &Layout) -> Result<MPoly> {
    let mut f = MPoly::zero(ctx.field, ctx.n, d as u32);
    for &(p, l) in &layout.c {
        let fp = ctx.lift_monomial(l - (p - 1), d - 2)?;
        f = f.checked_add(&fp.checked_mul(&ctx.quadric_gen(p, p + 1)?)?)?;
    }
    for &(k, l) in &layout.g {
        let gk = ctx.lift_monomial(l, d - 1)?;
        f = f.checked_add(&gk.checked_mul(&ctx.x(k))?)?;
    }
    Ok(f)
}

/// Removes `count` copies of `v` from a multiset.
fn remove_copies(values: &mut Vec<i64>, v: i64, count: usize) {
    for _ in 0..count {
        let i = values.iter().position(|&x| x == v).expect("value present");
        values.remove(i);
    }
}

/// Sub-multisets of `values` (sorted descending) of size `k`, largest choices first.
fn sub_multisets(values: &[i64], k: usize) -> Vec<Vec<i64>> {
    fn rec(values: &[i64], start: usize, k: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let mut last = None;
        for i in start..values.len() {
            if last == Some(values[i]) {
                continue;
            }
            last = Some(values[i]);
            cur.push(values[i]);
            rec(values, i + 1, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(values, 0, k, &mut Vec::new(), &mut out);
    out
}

/// Calls `visit` on candidate layouts until it returns true.
fn for_each_layout(
    ctx: &CurveContext,
    d: usize,
    target: &SplitType,
    visit: &mut dyn FnMut(&Layout) -> bool,
) {
    let (n, e) = (ctx.n, ctx.e);
    let ei = e as i64;
    let values = target.degrees().to_vec();
    let tops = values.iter().filter(|&&v| v == ei + 2).count();
    let equals_e = values.iter().filter(|&&v| v == ei).count();
    for zc in (0..=tops.min(e - 2)).rev() {
        let kc = e - 1 - zc;
        for zg in 0..=equals_e.min(n - e) {
            let kg = n - e - zg;
            let mut rest = values.clone();
            remove_copies(&mut rest, ei + 2, zc);
            remove_copies(&mut rest, ei, zg);
            let hi: Vec<i64> = rest.iter().copied().filter(|&v| v > ei).collect();
            let low: Vec<i64> = rest.iter().copied().filter(|&v| v <= ei).collect();
            if hi.len() > kc - 1 {
                continue;
            }
            for combo in sub_multisets(&low, kc - 1 - hi.len()) {
                let mut cc: Vec<i64> = hi.iter().chain(&combo).copied().collect();
                cc.sort_unstable();
                let mut g_rel = low.clone();
                for v in &combo {
                    remove_copies(&mut g_rel, *v, 1);
                }
                let search = ChainSearch { ctx, d, kc, kg, g_rel: &g_rel };
                let mut used = vec![false; cc.len()];
                let mut c_chain = vec![(1usize, 0usize)];
                if search.extend(&cc, &mut used, &mut c_chain, visit) {
                    return;
                }
            }
        }
    }
}

struct ChainSearch<'a> {
    ctx: &'a CurveContext,
    d: usize,
    kc: usize,
    kg: usize,
    g_rel: &'a [i64],
}

impl ChainSearch<'_> {
    fn window(&self) -> usize {
        self.ctx.e * (self.d - 2)
    }

    /// Extends the `c` chain with every distinct unused relation in ascending order.
    fn extend(
        &self,
        cc: &[i64],
        used: &mut [bool],
        chain: &mut Vec<(usize, usize)>,
        visit: &mut dyn FnMut(&Layout) -> bool,
    ) -> bool {
        let e = self.ctx.e;
        if chain.len() == self.kc {
            return self.finish(chain, visit);
        }
        let (p, l) = *chain.last().expect("chain starts at position 1");
        let mut last = None;
        for i in 0..cc.len() {
            if used[i] || last == Some(cc[i]) {
                continue;
            }
            last = Some(cc[i]);
            let next_l = l as i64 + e as i64 + 2 - cc[i];
            if next_l < 0 {
                continue;
            }
            let next_l = next_l as usize;
            let next_p = (p + 1).max((next_l + 1).saturating_sub(self.window()));
            let remaining = self.kc - chain.len() - 1;
            if next_p > next_l + 1 || next_p + remaining > e - 1 {
                continue;
            }
            used[i] = true;
            chain.push((next_p, next_l));
            let stop = self.extend(cc, used, chain, visit);
            chain.pop();
            used[i] = false;
            if stop {
                return true;
            }
        }
        false
    }

    fn finish(&self, chain: &[(usize, usize)], visit: &mut dyn FnMut(&Layout) -> bool) -> bool {
        let (n, e, d) = (self.ctx.n, self.ctx.e, self.d);
        let &(p_last, l_last) = chain.last().expect("nonempty chain");
        let mut layout = Layout { c: chain.to_vec(), g: Vec::new() };
        if self.kg == 0 {
            if p_last != e - 1 || l_last != e * (d - 1) - 2 {
                return false;
            }
        } else {
            let mut rel: Vec<i64> = self.g_rel.to_vec();
            rel.sort_unstable_by(|a, b| b.cmp(a));
            let mut l = l_last as i64 + e as i64 + 2 - rel[0];
            let first_k = n - self.kg + 1;
            layout.g.push((first_k, l as usize));
            for (idx, &r) in rel[1..].iter().enumerate() {
                l += e as i64 - r;
                layout.g.push((first_k + 1 + idx, l as usize));
            }
            if l != (e * (d - 1)) as i64 {
                return false;
            }
        }
        visit(&layout)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normalmap::psi_from_poly;
    use crate::scalars::FieldSpec;
    use crate::splitting::{balanced_type, enumerate_types};

    const Q: FieldSpec = FieldSpec::Rationals;

    fn st(s: &str) -> SplitType {
        s.parse().unwrap()
    }

    #[test]
    fn balanced_quintic_curve_in_cubic() {
        let ctx = CurveContext::new(5, 5, Q).unwrap();
        assert_eq!(balanced_type(5, 5, 3).unwrap(), st("5,4,4"));
        let rep = construct_d3(&ctx, 3, &st("5,4,4")).unwrap();
        assert_eq!(rep.achieved, st("5,4,4"));
        assert!(rep.smooth_along_c);
        // β = (0, 2, 4, 5): β_i = (i−1)(n+1−A) for 2 ≤ i ≤ m+1 with A = 4, m = 2.
        let want = MPoly::parse(
            Q,
            5,
            "x0*x1^2 - x0^2*x2 + x2^3 - x1*x2*x3 + x3^2*x4 - x2*x4^2 + x4^2*x5 - x3*x5^2",
        )
        .unwrap();
        assert_eq!(rep.f, want);
    }

    #[test]
    fn zero_slot() {
        let ctx = CurveContext::new(5, 5, Q).unwrap();
        let rep = construct_d3(&ctx, 3, &st("7,4,2")).unwrap();
        assert_eq!(rep.achieved, st("7,4,2"));
        assert!(rep.smooth_along_c);
        let psi = psi_from_poly(&ctx, 3, &rep.f).unwrap();
        assert_eq!(psi.entries().iter().filter(|f| f.is_zero()).count(), 1);
    }

    #[test]
    fn g_block() {
        let ctx = CurveContext::new(5, 4, Q).unwrap();
        let rep = construct_d3(&ctx, 3, &st("6,3,1")).unwrap();
        assert_eq!(rep.achieved, st("6,3,1"));
        assert!(rep.smooth_along_c);
        let psi = psi_from_poly(&ctx, 3, &rep.f).unwrap();
        assert!(!psi.entries()[3].is_zero());
    }

    #[test]
    fn all_types_small() {
        for (n, e, d) in [(4, 2, 3), (4, 4, 4), (6, 3, 3)] {
            let ctx = CurveContext::new(n, e, Q).unwrap();
            for t in enumerate_types(n, e, d).unwrap() {
                let rep = construct_d3(&ctx, d, &t).unwrap();
                assert_eq!(rep.achieved, t);
                assert!(rep.smooth_along_c);
            }
        }
    }
}
