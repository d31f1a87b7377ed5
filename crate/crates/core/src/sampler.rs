//! Seeded Monte-Carlo sampling of hypersurfaces containing `C` over a prime field.
//!
//! Trial `k` draws from a ChaCha stream keyed by `(seed, k)`, so results do not depend on
//! the thread count or the order trials finish in.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::mpoly::MPoly;
use crate::normalmap::{phi_matrix_on, PsiMap};
use crate::rnc::CurveContext;
use crate::scalars::{FieldSpec, Scalar};
use crate::splitting::{splitting_type, SplitType};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleConfig {
    pub ctx: CurveContext,
    pub d: usize,
    pub trials: usize,
    pub seed: u64,
    /// Worker threads; 0 uses the rayon default.
    pub threads: usize,
}

impl SampleConfig {
    pub fn new(ctx: CurveContext, d: usize, trials: usize, seed: u64, threads: usize) -> Result<Self> {
        if !matches!(ctx.field, FieldSpec::PrimeField(_)) {
            return Err(Error::InvalidContext("sampling needs a prime field".into()));
        }
        if trials == 0 {
            return Err(Error::InvalidContext("need at least one trial".into()));
        }
        if d < 2 {
            return Err(Error::DegreeMismatch(d as i64, 2));
        }
        Ok(SampleConfig { ctx, d, trials, seed, threads })
    }
}

/// The RNG of one trial: the master seed with the trial index as stream.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

fn draw_coeffs(field: FieldSpec, count: usize, rng: &mut ChaCha8Rng) -> Vec<Scalar> {
    (0..count).map(|_| field.random(rng, 0)).collect()
}

/// `Σ c_b · basis_b` with uniform `c_b`.
pub fn random_ideal_element(cfg: &SampleConfig, basis: &[MPoly], rng: &mut ChaCha8Rng) -> MPoly {
    let coeffs = draw_coeffs(cfg.ctx.field, basis.len(), rng);
    combine(cfg, basis, &coeffs)
}

fn combine(cfg: &SampleConfig, basis: &[MPoly], coeffs: &[Scalar]) -> MPoly {
    let mut f = MPoly::zero(cfg.ctx.field, cfg.ctx.n, cfg.d as u32);
    for (b, c) in basis.iter().zip(coeffs) {
        if !c.is_zero() {
            f = f.checked_add(&b.scale(c)).expect("same ring");
        }
    }
    f
}

/// Splitting-type counts of sampled hypersurfaces.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FrequencyTable {
    pub counts: BTreeMap<SplitType, usize>,
    pub total: usize,
    /// Draws with `ψ_F = 0`.
    pub rejected: usize,
}

impl FrequencyTable {
    pub fn count(&self, st: &SplitType) -> usize {
        self.counts.get(st).copied().unwrap_or(0)
    }

    /// Share of all draws (rejected ones included) with the given type.
    pub fn frequency(&self, st: &SplitType) -> f64 {
        self.count(st) as f64 / self.total as f64
    }
}

impl Serialize for FrequencyTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let counts: BTreeMap<String, usize> =
            self.counts.iter().map(|(k, v)| (k.to_string(), *v)).collect();
        let mut st = serializer.serialize_struct("FrequencyTable", 3)?;
        st.serialize_field("total", &self.total)?;
        st.serialize_field("rejected", &self.rejected)?;
        st.serialize_field("counts", &counts)?;
        st.end()
    }
}

/// `ψ` of one trial, from the precomputed matrix of `φ` on the sampling basis.
fn trial_psi(cfg: &SampleConfig, phi: &Matrix, trial: u64) -> Result<PsiMap> {
    let mut rng = trial_rng(cfg.seed, trial);
    let coeffs = draw_coeffs(cfg.ctx.field, phi.cols(), &mut rng);
    PsiMap::from_flat(cfg.ctx, cfg.d, &phi.mul_vec(&coeffs)?)
}

pub fn sample_distribution(cfg: &SampleConfig) -> Result<FrequencyTable> {
    let basis = cfg.ctx.ideal_basis(cfg.d as u32);
    let phi = phi_matrix_on(&cfg.ctx, cfg.d, &basis)?;
    let run = || {
        (0..cfg.trials as u64)
            .into_par_iter()
            .map(|k| {
                let psi = trial_psi(cfg, &phi, k)?;
                if psi.is_zero() {
                    Ok(None)
                } else {
                    splitting_type(&psi).map(Some)
                }
            })
            .collect::<Result<Vec<_>>>()
    };
    let outcomes = if cfg.threads == 0 {
        run()?
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.threads)
            .build()
            .map_err(|e| Error::InvalidContext(format!("thread pool: {e}")))?
            .install(run)?
    };
    let mut table = FrequencyTable { total: cfg.trials, ..Default::default() };
    for outcome in outcomes {
        match outcome {
            Some(st) => *table.counts.entry(st).or_default() += 1,
            None => table.rejected += 1,
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normalmap::psi_from_poly;
    use crate::splitting::balanced_type;

    fn cfg(n: usize, e: usize, d: usize, trials: usize, threads: usize) -> SampleConfig {
        let ctx = CurveContext::new(n, e, FieldSpec::PrimeField(32003)).unwrap();
        SampleConfig::new(ctx, d, trials, 7, threads).unwrap()
    }

    #[test]
    fn rejects_bad_configs() {
        let q = CurveContext::new(5, 5, FieldSpec::Rationals).unwrap();
        assert!(SampleConfig::new(q, 2, 10, 0, 0).is_err());
        let p = CurveContext::new(5, 5, FieldSpec::PrimeField(7)).unwrap();
        assert!(SampleConfig::new(p, 2, 0, 0, 0).is_err());
    }

    #[test]
    fn deterministic_element_in_ideal() {
        let c = cfg(5, 4, 3, 1, 0);
        let basis = c.ctx.ideal_basis(3);
        let f = random_ideal_element(&c, &basis, &mut trial_rng(c.seed, 0));
        let g = random_ideal_element(&c, &basis, &mut trial_rng(c.seed, 0));
        assert_eq!(f, g);
        assert!(c.ctx.restrict(&f).unwrap().is_zero());
        // The matrix shortcut agrees with straightening the drawn polynomial.
        let phi = phi_matrix_on(&c.ctx, 3, &basis).unwrap();
        assert_eq!(trial_psi(&c, &phi, 0).unwrap(), psi_from_poly(&c.ctx, 3, &f).unwrap());
    }

    #[test]
    fn balanced_dominates() {
        for (n, e, d) in [(5, 5, 2), (5, 5, 3)] {
            let table = sample_distribution(&cfg(n, e, d, 200, 0)).unwrap();
            let bal = balanced_type(n, e, d).unwrap();
            assert!(table.frequency(&bal) >= 0.95, "{table:?}");
            assert_eq!(table.counts.values().sum::<usize>(), table.total - table.rejected);
        }
    }

    #[test]
    fn thread_count_does_not_matter() {
        let one = sample_distribution(&cfg(5, 3, 2, 40, 1)).unwrap();
        let four = sample_distribution(&cfg(5, 3, 2, 40, 4)).unwrap();
        assert_eq!(one, four);
    }

    #[test]
    fn small_field_shows_special_types() {
        let ctx = CurveContext::new(4, 4, FieldSpec::PrimeField(3)).unwrap();
        let table = sample_distribution(&SampleConfig::new(ctx, 2, 300, 1, 0).unwrap()).unwrap();
        assert!(table.counts.len() + usize::from(table.rejected > 0) > 1, "{table:?}");
    }
}
