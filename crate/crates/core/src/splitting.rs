//! Splitting types of `ker ψ` on ℙ¹ and line-bundle cohomology helpers.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::binforms::{bf_gcd, mult_matrix};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::normalmap::PsiMap;

/// Degrees `b_j` of `⊕ O(b_j)`, stored in descending order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SplitType {
    degrees: Vec<i64>,
}

impl SplitType {
    pub fn new(mut degrees: Vec<i64>) -> Self {
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        SplitType { degrees }
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn total(&self) -> i64 {
        self.degrees.iter().sum()
    }

    pub fn is_balanced(&self) -> bool {
        match (self.degrees.first(), self.degrees.last()) {
            (Some(hi), Some(lo)) => hi - lo <= 1,
            _ => true,
        }
    }
}

impl fmt::Display for SplitType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.degrees.iter().map(i64::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl FromStr for SplitType {
    type Err = Error;

    /// Comma-separated degrees, optionally wrapped in braces: `7,6,5` or `{7,6,5}`.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches(['{', '[']).trim_end_matches(['}', ']']);
        if inner.trim().is_empty() {
            return Ok(SplitType::new(Vec::new()));
        }
        inner
            .split(',')
            .map(|p| p.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad degree '{p}'"))))
            .collect::<Result<Vec<_>>>()
            .map(SplitType::new)
    }
}

/// `m ↦ h⁰(ker ψ(m))` on the scanned window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistProfile {
    pub values: BTreeMap<i64, usize>,
}

impl TwistProfile {
    /// `f(m) − f(m−1)` for each scanned `m` (with `f = 0` just below the window).
    pub fn increments(&self) -> BTreeMap<i64, usize> {
        let mut prev = 0;
        self.values
            .iter()
            .map(|(&m, &v)| {
                let inc = v - prev;
                prev = v;
                (m, inc)
            })
            .collect()
    }
}

/// Splitting type of `ker ψ` together with the data used to find it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplittingReport {
    pub split_type: SplitType,
    /// Degree of the gcd of the entries (length of the torsion cokernel).
    pub gcd_degree: usize,
    /// `Σ d_i − de + gcd_degree`.
    pub total_degree: i64,
    pub profile: TwistProfile,
}

pub fn h0_line(a: i64) -> i64 {
    (a + 1).max(0)
}

pub fn h1_line(a: i64) -> i64 {
    (-a - 1).max(0)
}

/// `h⁰(ker ψ(m))`: the nullity of `⊕ H⁰(O(d_i + m)) → H⁰(O(de + m))`.
pub fn h0_twist(psi: &PsiMap, m: i64) -> usize {
    section_map(psi, m).nullity()
}

fn section_map(psi: &PsiMap, m: i64) -> Matrix {
    let field = psi.ctx().field;
    let rows = (psi.target_degree() as i64 + m + 1).max(0) as usize;
    let mut blocks = Vec::new();
    for (pos, entry) in psi.entries().iter().enumerate() {
        let dm = psi.summand_degree(pos) as i64 + m;
        if dm >= 0 {
            blocks.push(mult_matrix(entry, dm as usize));
        }
    }
    let cols = blocks.iter().map(Matrix::cols).sum();
    let mut out = Matrix::zeros(field, rows, cols);
    let mut off = 0;
    for b in blocks {
        for i in 0..b.rows() {
            for j in 0..b.cols() {
                let v = b.get(i, j);
                if !v.is_zero() {
                    out.set(i, off + j, v.clone());
                }
            }
        }
        off += b.cols();
    }
    out
}

/// Recovers the splitting type of `ker ψ` from `h⁰` of its twists.
///
/// `f(m) − f(m−1) = #{b_j ≥ −m}`. Every `b_j ≤ e + 2`, so `f` vanishes below
/// `−(e+2)`; the smallest degree is at least `total − (r−1)(e+2)`, which bounds the scan.
pub fn splitting_report(psi: &PsiMap) -> Result<SplittingReport> {
    if psi.is_zero() {
        return Err(Error::ZeroMap);
    }
    let ctx = psi.ctx();
    let r = ctx.n as i64 - 2;
    let mut g: Option<crate::binforms::BinForm> = None;
    for f in psi.entries().iter().filter(|f| !f.is_zero()) {
        g = Some(match g {
            None => bf_gcd(f, f)?,
            Some(acc) => bf_gcd(&acc, f)?,
        });
    }
    let gcd_degree = g.map_or(0, |g| g.degree());
    let total_degree = psi.summand_degrees().iter().sum::<usize>() as i64
        - psi.target_degree() as i64
        + gcd_degree as i64;
    let top = ctx.e as i64 + 2;
    let lo = -top;
    let hi = (r - 1) * top - total_degree;

    let mut profile = BTreeMap::new();
    let mut degrees = Vec::new();
    if r > 0 {
        let (mut prev_f, mut prev_inc) = (0usize, 0usize);
        let mut m = lo;
        loop {
            if m > hi {
                return Err(Error::ScanIncomplete { lo, hi });
            }
            let f = h0_twist(psi, m);
            profile.insert(m, f);
            let inc = f - prev_f;
            for _ in prev_inc..inc {
                degrees.push(-m);
            }
            if inc as i64 == r {
                break;
            }
            prev_f = f;
            prev_inc = inc;
            m += 1;
        }
    }
    Ok(SplittingReport {
        split_type: SplitType::new(degrees),
        gcd_degree,
        total_degree,
        profile: TwistProfile { values: profile },
    })
}

pub fn splitting_type(psi: &PsiMap) -> Result<SplitType> {
    splitting_report(psi).map(|r| r.split_type)
}

fn check_params(n: usize, e: usize, d: usize) -> Result<()> {
    if e < 2 || e > n || d < 2 {
        return Err(Error::InvalidContext(format!(
            "need 2 <= e <= n and d >= 2, got (n, e, d) = ({n}, {e}, {d})"
        )));
    }
    Ok(())
}

/// `e(n−d+1) − 2`, the degree of `N_{C/X}` when `X` is smooth along `C`.
pub fn expected_total(n: usize, e: usize, d: usize) -> i64 {
    e as i64 * (n as i64 - d as i64 + 1) - 2
}

/// The balanced type of rank `n − 2` and degree `e(n−d+1) − 2`; empty when `n = 2`
/// (where it is only admissible for `d = 2`).
pub fn balanced_type(n: usize, e: usize, d: usize) -> Result<SplitType> {
    check_params(n, e, d)?;
    let r = n as i64 - 2;
    if r == 0 {
        return Ok(SplitType::new(Vec::new()));
    }
    let total = expected_total(n, e, d);
    let a = total.div_euclid(r);
    let extra = total - a * r;
    let degrees = (0..r).map(|i| if i < extra { a + 1 } else { a }).collect();
    Ok(SplitType::new(degrees))
}

/// All `{e+2−a_i} ∪ {e−b_j}` with `e − 2` values `a_i ≥ 0`, `n − e` values `b_j ≥ 0` and
/// `Σa + Σb = e(d−1) − 2`, in descending lexicographic order.
///
/// For `n = 2` there are no slots, so the list is `[{}]` when `d = 2` and empty otherwise
/// (a plane curve of degree `d ≥ 3` through a conic is singular somewhere on it).
pub fn enumerate_types(n: usize, e: usize, d: usize) -> Result<Vec<SplitType>> {
    check_params(n, e, d)?;
    let budget = e * (d - 1) - 2;
    let mut found = BTreeSet::new();
    for a_sum in 0..=budget {
        for a in partitions(a_sum, e - 2) {
            for b in partitions(budget - a_sum, n - e) {
                let degrees = a
                    .iter()
                    .map(|&x| e as i64 + 2 - x as i64)
                    .chain(b.iter().map(|&x| e as i64 - x as i64))
                    .collect();
                found.insert(SplitType::new(degrees));
            }
        }
    }
    Ok(found.into_iter().rev().collect())
}

/// Nonincreasing sequences of `slots` nonnegative integers summing to `total`.
fn partitions(total: usize, slots: usize) -> Vec<Vec<usize>> {
    fn rec(left: usize, slots: usize, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 0 {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        if left > cap * slots {
            return;
        }
        for v in (0..=cap.min(left)).rev() {
            cur.push(v);
            rec(left - v, slots - 1, v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, slots, total, &mut Vec::new(), &mut out);
    out
}

/// Membership in [`enumerate_types`] without enumerating: rank `n − 2`, every degree at
/// most `e + 2`, at most `e − 2` degrees above `e`, and total `e(n−d+1) − 2`.
pub fn is_admissible(n: usize, e: usize, d: usize, st: &SplitType) -> bool {
    if check_params(n, e, d).is_err() || st.rank() != n - 2 {
        return false;
    }
    let e = e as i64;
    st.degrees().iter().all(|&v| v <= e + 2)
        && st.degrees().iter().filter(|&&v| v > e).count() as i64 <= e - 2
        && st.total() == expected_total(n, e as usize, d)
}

/// `h¹(End ⊕O(a_i)) = Σ_{ordered pairs} max(0, a_i − a_j − 1)`.
pub fn h1_end(st: &SplitType) -> i64 {
    let a = st.degrees();
    a.iter()
        .flat_map(|&x| a.iter().map(move |&y| h1_line(y - x)))
        .sum()
}
