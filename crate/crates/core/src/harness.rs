//! Verification campaigns.
//!
//! Geometric checks sample pairs of flags from the components attached to
//! two tableaux and compare the most frequent relative position with the
//! matrix given by variant RSK. Combinatorial sweeps run exhaustively over
//! all small contents.
//!
//! Every trial draws its randomness from a seed derived from
//! `(master seed, case, trial, role)`, so reports do not depend on how the
//! work is scheduled across threads.

use std::collections::{BTreeMap, BTreeSet};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::flag::{
    make_nilpotent, relative_position, sample_flag_in_component_with, ComponentSampler,
    DEFAULT_MAX_ATTEMPTS,
};
use crate::linalg::PrimeField;
use crate::rsk::{
    array_to_matrix_sized, matrices_with_margins, matrix_to_array, rsk_classic,
    rsk_inverse_classic, rsk_inverse_variant, rsk_variant, Convention, RelPosMatrix,
};
use crate::standardize::{
    std_array_classical, std_array_variant, std_inverse, std_tableau_classical, std_tableau_variant,
};
use crate::tableau::{
    all_compositions, compositions_of, enumerate_semistandard_paper, partitions_of,
    standard_tableaux, Composition, Partition, Tableau,
};

/// Environment variable bounding the worker threads used by sweeps.
pub const THREADS_ENV: &str = "RSKFLAGS_THREADS";

/// Failures kept verbatim in a sweep summary.
const KEPT_FAILURES: usize = 10;

/// The matrix whose variant-RSK pair is `(t, s)`: rows follow the content of
/// `s`, columns the content of `t`.
pub fn rsk_matrix_of_tableaux(t: &Tableau, s: &Tableau) -> Result<RelPosMatrix> {
    let (st, ss) = (t.shape()?, s.shape()?);
    if st != ss {
        return Err(Error::ShapeMismatch(st.into(), ss.into()));
    }
    let array = rsk_inverse_variant(t, s)?;
    array_to_matrix_sized(&array, s.content()?.len(), t.content()?.len())
}

/// Same matrix computed by standardizing both tableaux, inverting classic RSK
/// on the resulting standard pair, and undoing the array standardization.
pub fn rsk_matrix_via_standardization(t: &Tableau, s: &Tableau) -> Result<RelPosMatrix> {
    let (mu, nu) = (t.content()?, s.content()?);
    let word = rsk_inverse_classic(&std_tableau_variant(t)?, &std_tableau_variant(s)?)?;
    let array = std_inverse(&word.with_convention(Convention::PaperOrder)?, &mu, &nu)?;
    array_to_matrix_sized(&array, nu.len(), mu.len())
}

/// Parameters of a sampling campaign.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub trials: usize,
    pub prime: u64,
    pub seed: u64,
    pub max_attempts: usize,
    /// Agreement fraction a case must reach on top of the mode check.
    pub min_agreement: f64,
    pub sampler: ComponentSampler,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            trials: 100,
            prime: 10007,
            seed: 42,
            max_attempts: DEFAULT_MAX_ATTEMPTS,
            min_agreement: 0.9,
            sampler: ComponentSampler::Directed,
        }
    }
}

/// A pair of tableaux together with their shape and contents.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremCase {
    pub lambda: Partition,
    pub mu: Composition,
    pub nu: Composition,
    pub t: Tableau,
    pub s: Tableau,
}

impl TheoremCase {
    /// Builds a case, checking shapes and contents.
    pub fn new(
        lambda: Partition,
        mu: Composition,
        nu: Composition,
        t: Tableau,
        s: Tableau,
    ) -> Result<Self> {
        for tab in [&t, &s] {
            if !tab.is_semistandard_paper() {
                return Err(Error::NotSemistandard);
            }
            let shape = tab.shape()?;
            if shape != lambda {
                return Err(Error::ShapeMismatch(shape.into(), lambda.clone().into()));
            }
        }
        let (ct, cs) = (t.content()?, s.content()?);
        if ct != mu || cs != nu {
            return Err(Error::SizeMismatch(format!(
                "tableau contents {ct} and {cs} do not match declared {mu} and {nu}"
            )));
        }
        Ok(TheoremCase {
            lambda,
            mu,
            nu,
            t,
            s,
        })
    }

    /// Derives shape and contents from the tableaux.
    pub fn from_tableaux(t: Tableau, s: Tableau) -> Result<Self> {
        TheoremCase::new(t.shape()?, t.content()?, s.content()?, t, s)
    }

    fn key(&self) -> String {
        format!(
            "{}|{}|{}|{}|{}",
            self.lambda, self.mu, self.nu, self.t, self.s
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Outcome of one sampling case.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub lambda: Partition,
    pub mu: Composition,
    pub nu: Composition,
    #[serde(rename = "T")]
    pub t: String,
    #[serde(rename = "S")]
    pub s: String,
    pub p: u64,
    pub seed: u64,
    pub sampler: ComponentSampler,
    pub trials: usize,
    pub agreement_count: usize,
    pub agreement: f64,
    /// Calibration threshold for `agreement`; not part of the verdict.
    pub min_agreement: f64,
    pub meets_agreement: bool,
    pub mode_matrix: Option<RelPosMatrix>,
    pub mode_count: usize,
    pub expected_matrix: RelPosMatrix,
    pub distinct_matrices: usize,
    /// Pass iff the mode of the sampled relative positions equals the expected matrix.
    pub verdict: Verdict,
    /// Sampler attempts per drawn flag -> number of flags.
    pub attempts_histogram: BTreeMap<usize, usize>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass && self.meets_agreement
    }
}

/// Seeds a generator from the master seed, the case, the trial and the role of the draw.
pub fn derive_rng(master: u64, case: &str, trial: usize, role: &str) -> ChaCha8Rng {
    let digest = Sha256::new()
        .chain_update(master.to_le_bytes())
        .chain_update(case.as_bytes())
        .chain_update([0u8])
        .chain_update((trial as u64).to_le_bytes())
        .chain_update(role.as_bytes())
        .finalize();
    let mut seed = [0u8; 32];
    seed.copy_from_slice(&digest);
    ChaCha8Rng::from_seed(seed)
}

/// Samples `cfg.trials` pairs `(F, G)` from the components of `case.t` and
/// `case.s` for a shared Jordan operator, and compares the mode of `M(F, G)`
/// with [`rsk_matrix_of_tableaux`].
pub fn verify_main_theorem(case: &TheoremCase, cfg: &RunConfig) -> Result<VerificationReport> {
    let field = PrimeField::new(cfg.prime)?;
    let x = make_nilpotent(&case.lambda, field);
    let expected = rsk_matrix_of_tableaux(&case.t, &case.s)?;
    let key = case.key();

    let mut counts: BTreeMap<RelPosMatrix, usize> = BTreeMap::new();
    let mut attempts_histogram = BTreeMap::new();
    for trial in 0..cfg.trials {
        let mut rng_f = derive_rng(cfg.seed, &key, trial, "F");
        let mut rng_g = derive_rng(cfg.seed, &key, trial, "G");
        let f =
            sample_flag_in_component_with(&x, &case.t, &mut rng_f, cfg.max_attempts, cfg.sampler)?;
        let g =
            sample_flag_in_component_with(&x, &case.s, &mut rng_g, cfg.max_attempts, cfg.sampler)?;
        for a in [f.attempts, g.attempts] {
            *attempts_histogram.entry(a).or_insert(0) += 1;
        }
        *counts
            .entry(relative_position(&f.flag, &g.flag)?)
            .or_insert(0) += 1;
    }

    // ties resolve to the smallest matrix so reports stay deterministic
    let mode = counts
        .iter()
        .fold(None::<(&RelPosMatrix, usize)>, |best, (m, &c)| match best {
            Some((_, bc)) if bc >= c => best,
            _ => Some((m, c)),
        });
    let agreement_count = counts.get(&expected).copied().unwrap_or(0);
    let agreement = if cfg.trials == 0 {
        0.0
    } else {
        agreement_count as f64 / cfg.trials as f64
    };
    let verdict = match mode {
        Some((m, _)) if *m == expected => Verdict::Pass,
        _ => Verdict::Fail,
    };
    Ok(VerificationReport {
        lambda: case.lambda.clone(),
        mu: case.mu.clone(),
        nu: case.nu.clone(),
        t: case.t.to_string(),
        s: case.s.to_string(),
        p: cfg.prime,
        seed: cfg.seed,
        sampler: cfg.sampler,
        trials: cfg.trials,
        agreement_count,
        agreement,
        min_agreement: cfg.min_agreement,
        meets_agreement: agreement >= cfg.min_agreement,
        mode_matrix: mode.map(|(m, _)| m.clone()),
        mode_count: mode.map_or(0, |(_, c)| c),
        expected_matrix: expected,
        distinct_matrices: counts.len(),
        verdict,
        attempts_histogram,
    })
}

/// Runs [`verify_main_theorem`] on every case, in parallel, preserving order.
pub fn verify_cases(cases: &[TheoremCase], cfg: &RunConfig) -> Result<Vec<VerificationReport>> {
    cases
        .par_iter()
        .map(|c| verify_main_theorem(c, cfg))
        .collect()
}

/// Complete-flag case: all pairs of standard tableaux of shape `lambda`.
pub fn verify_steinberg(lambda: &Partition, cfg: &RunConfig) -> Result<Vec<VerificationReport>> {
    verify_cases(&steinberg_cases(lambda), cfg)
}

pub fn steinberg_cases(lambda: &Partition) -> Vec<TheoremCase> {
    let ones = Composition::ones(lambda.size());
    let tabs = standard_tableaux(lambda);
    tabs.iter()
        .flat_map(|t| {
            tabs.iter().map(|s| TheoremCase {
                lambda: lambda.clone(),
                mu: ones.clone(),
                nu: ones.clone(),
                t: t.clone(),
                s: s.clone(),
            })
        })
        .collect()
}

/// Every `(T, S)` of shape `lambda` whose contents have all parts at most
/// `max_part` (no bound when `None`).
pub fn theorem_cases(lambda: &Partition, max_part: Option<usize>) -> Vec<TheoremCase> {
    let d = lambda.size();
    let tabs: Vec<(Composition, Tableau)> = compositions_of(d, d, max_part.unwrap_or(d))
        .into_iter()
        .flat_map(|mu| {
            enumerate_semistandard_paper(lambda, &mu)
                .expect("sizes agree")
                .into_iter()
                .map(move |t| (mu.clone(), t))
        })
        .collect();
    tabs.iter()
        .flat_map(|(mu, t)| {
            tabs.iter().map(move |(nu, s)| TheoremCase {
                lambda: lambda.clone(),
                mu: mu.clone(),
                nu: nu.clone(),
                t: t.clone(),
                s: s.clone(),
            })
        })
        .collect()
}

/// Counts of an exhaustive combinatorial sweep.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub name: String,
    pub d_max: usize,
    pub checked: usize,
    pub failed: usize,
    pub failures: Vec<String>,
}

impl SweepSummary {
    fn new(name: &str, d_max: usize) -> Self {
        SweepSummary {
            name: name.into(),
            d_max,
            ..Default::default()
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < KEPT_FAILURES {
                self.failures.push(describe());
            }
        }
    }

    fn merge(mut self, other: SweepSummary) -> Self {
        self.checked += other.checked;
        self.failed += other.failed;
        let room = KEPT_FAILURES.saturating_sub(self.failures.len());
        self.failures.extend(other.failures.into_iter().take(room));
        self
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

fn composition_pairs(d_max: usize, max_parts: usize) -> Vec<(Composition, Composition)> {
    (1..=d_max)
        .flat_map(|d| {
            let comps = compositions_of(d, max_parts, d);
            comps
                .iter()
                .flat_map(|mu| comps.iter().map(move |nu| (mu.clone(), nu.clone())))
                .collect::<Vec<_>>()
        })
        .collect()
}

fn sweep_pairs(
    name: &str,
    d_max: usize,
    max_parts: usize,
    check: impl Fn(&Composition, &Composition, &mut SweepSummary) + Sync,
) -> SweepSummary {
    composition_pairs(d_max, max_parts)
        .par_iter()
        .map(|(mu, nu)| {
            let mut local = SweepSummary::new(name, d_max);
            check(mu, nu, &mut local);
            local
        })
        .reduce(|| SweepSummary::new(name, d_max), SweepSummary::merge)
}

/// Standardization commutes with variant RSK on every matrix with margins
/// `(ν, μ)`, `|μ| = |ν| <= d_max`.
pub fn verify_lemma2(d_max: usize) -> SweepSummary {
    sweep_pairs("lemma2", d_max, d_max, |mu, nu, out| {
        for m in matrices_with_margins(nu, mu) {
            let a = matrix_to_array(&m, Convention::PaperOrder);
            let ok = (|| -> Result<bool> {
                let (p, q) = rsk_variant(&a)?;
                let top = rsk_classic(
                    &std_array_variant(&a)?.with_convention(Convention::Lexicographic)?,
                )?;
                let content_ok = p.content()? == *mu && q.content()? == *nu;
                Ok(content_ok && top == (std_tableau_variant(&p)?, std_tableau_variant(&q)?))
            })();
            out.record(matches!(ok, Ok(true)), || {
                format!("lemma2 {mu} {nu}: {a} -> {ok:?}")
            });
        }
    })
}

/// The classical square: lexicographic arrays, classic RSK, left-to-right standardization.
pub fn verify_lemma1(d_max: usize) -> SweepSummary {
    sweep_pairs("lemma1", d_max, d_max, |mu, nu, out| {
        for m in matrices_with_margins(nu, mu) {
            let a = matrix_to_array(&m, Convention::Lexicographic);
            let ok = (|| -> Result<bool> {
                let (p, q) = rsk_classic(&a)?;
                let top = rsk_classic(&std_array_classical(&a)?)?;
                let content_ok = p.content()? == *mu && q.content()? == *nu;
                let semistandard = p.is_semistandard_classical() && q.is_semistandard_classical();
                Ok(content_ok
                    && semistandard
                    && top == (std_tableau_classical(&p)?, std_tableau_classical(&q)?))
            })();
            out.record(matches!(ok, Ok(true)), || {
                format!("lemma1 {mu} {nu}: {a} -> {ok:?}")
            });
        }
    })
}

/// Outcome of [`verify_bijection`].
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BijectionSummary {
    pub roundtrip: SweepSummary,
    pub counting: SweepSummary,
}

impl BijectionSummary {
    pub fn passed(&self) -> bool {
        self.roundtrip.passed() && self.counting.passed()
    }
}

/// Exhaustive roundtrips of variant RSK in both directions on every content
/// pair with at most `max_parts` parts, plus
/// `|M^{μ,ν}| = Σ_λ |SS(λ, μ)| · |SS(λ, ν)|`.
pub fn verify_bijection(d_max: usize, max_parts: usize) -> BijectionSummary {
    let pairs = composition_pairs(d_max, max_parts);
    let shapes: Vec<Vec<Partition>> = (0..=d_max).map(partitions_of).collect();
    pairs
        .par_iter()
        .map(|(mu, nu)| {
            let mut roundtrip = SweepSummary::new("bijection-roundtrip", d_max);
            let mut counting = SweepSummary::new("bijection-counting", d_max);
            let matrices = matrices_with_margins(nu, mu);
            let mut images = BTreeSet::new();
            for m in &matrices {
                let a = matrix_to_array(m, Convention::PaperOrder);
                let ok = (|| -> Result<bool> {
                    let (p, q) = rsk_variant(&a)?;
                    let well_formed = p.is_semistandard_paper()
                        && q.is_semistandard_paper()
                        && p.shape()? == q.shape()?
                        && p.content()? == *mu
                        && q.content()? == *nu;
                    let back = rsk_inverse_variant(&p, &q)? == a;
                    Ok(well_formed && back && images.insert((p, q)))
                })();
                roundtrip.record(matches!(ok, Ok(true)), || {
                    format!("matrix {m} ({mu},{nu}): {ok:?}")
                });
            }
            let mut pair_count = 0;
            for lambda in &shapes[mu.size()] {
                let ts = enumerate_semistandard_paper(lambda, mu).expect("sizes agree");
                let ss = enumerate_semistandard_paper(lambda, nu).expect("sizes agree");
                pair_count += ts.len() * ss.len();
                for t in &ts {
                    for s in &ss {
                        let ok = (|| -> Result<bool> {
                            let a = rsk_inverse_variant(t, s)?;
                            let m = array_to_matrix_sized(&a, nu.len(), mu.len())?;
                            Ok(rsk_variant(&a)? == (t.clone(), s.clone())
                                && m.col_sums() == mu.parts()
                                && m.row_sums() == nu.parts())
                        })();
                        roundtrip.record(matches!(ok, Ok(true)), || {
                            format!("pair ({t}),({s}): {ok:?}")
                        });
                    }
                }
            }
            counting.record(pair_count == matrices.len(), || {
                format!(
                    "({mu},{nu}): {} matrices vs {pair_count} tableau pairs",
                    matrices.len()
                )
            });
            BijectionSummary {
                roundtrip,
                counting,
            }
        })
        .reduce(
            || BijectionSummary {
                roundtrip: SweepSummary::new("bijection-roundtrip", d_max),
                counting: SweepSummary::new("bijection-counting", d_max),
            },
            |a, b| BijectionSummary {
                roundtrip: a.roundtrip.merge(b.roundtrip),
                counting: a.counting.merge(b.counting),
            },
        )
}

/// [`rsk_matrix_of_tableaux`] against [`rsk_matrix_via_standardization`] on
/// every row-strict pair of equal shape with `d <= d_max`.
pub fn verify_oracle_equivalence(d_max: usize) -> SweepSummary {
    let mut jobs: Vec<(Partition, Composition, Composition)> = Vec::new();
    for d in 1..=d_max {
        let comps = all_compositions(d);
        for lambda in partitions_of(d) {
            for mu in &comps {
                for nu in &comps {
                    jobs.push((lambda.clone(), mu.clone(), nu.clone()));
                }
            }
        }
    }
    jobs.par_iter()
        .map(|(lambda, mu, nu)| {
            let mut out = SweepSummary::new("oracle-equivalence", d_max);
            let ts = enumerate_semistandard_paper(lambda, mu).expect("sizes agree");
            if ts.is_empty() {
                return out;
            }
            let ss = enumerate_semistandard_paper(lambda, nu).expect("sizes agree");
            for t in &ts {
                for s in &ss {
                    let direct = rsk_matrix_of_tableaux(t, s);
                    let oracle = rsk_matrix_via_standardization(t, s);
                    out.record(direct.is_ok() && direct == oracle, || {
                        format!("({t}),({s}): {direct:?} vs {oracle:?}")
                    });
                }
            }
            out
        })
        .reduce(
            || SweepSummary::new("oracle-equivalence", d_max),
            SweepSummary::merge,
        )
}

/// Thread pool sized by [`THREADS_ENV`] when set, otherwise rayon's default.
pub fn thread_pool_from_env() -> rayon::ThreadPool {
    let threads = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .unwrap_or(0);
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool")
}
