//! Seeded Monte Carlo experiment harness: sample a random MDP per trial, run
//! the classical algorithm, and aggregate iteration/work statistics.
//!
//! Trial k of a run draws from the counter-derived stream (master_seed, k),
//! so results are reproducible regardless of execution order or parallelism;
//! summaries use integer accumulators and are order-independent.

use std::collections::BTreeMap;
use std::io::Write;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use statrs::distribution::{Beta, ContinuousCDF};

use crate::error::{Error, Result};
use crate::mdp::{gen_worst_case, Mdp};
use crate::models::{
    sample_constant_outdegree, sample_gnp, to_mdp, trial_rng, DegreeSpec, GnpSpec, TargetSpec,
};
use crate::solve::{classical_buchi, reverse_reachable};

/// A generative model for one experiment.
#[derive(Debug, Clone)]
pub enum ModelSpec {
    /// Constant out-degree model; Büchi set = the degree spec's canonical targets.
    ConstDeg {
        degrees: DegreeSpec,
        player1_prob: f64,
    },
    /// Directed G(n,p) with uniformly placed targets.
    Gnp(GnpSpec),
    /// The deterministic linear-iteration family (ignores the RNG).
    WorstCase { stages: usize },
}

impl ModelSpec {
    pub fn name(&self) -> &'static str {
        match self {
            ModelSpec::ConstDeg { .. } => "const-deg",
            ModelSpec::Gnp(_) => "gnp",
            ModelSpec::WorstCase { .. } => "worst-case",
        }
    }

    pub fn n(&self) -> usize {
        match self {
            ModelSpec::ConstDeg { degrees, .. } => degrees.n(),
            ModelSpec::Gnp(spec) => spec.n,
            ModelSpec::WorstCase { stages } => 3 * stages + 1,
        }
    }

    /// Semicolon-separated parameter echo (comma-free so it can sit in a
    /// CSV field).
    pub fn param_string(&self) -> String {
        match self {
            ModelSpec::ConstDeg {
                degrees,
                player1_prob,
            } => {
                let classes = degrees
                    .entries()
                    .iter()
                    .map(|e| format!("{}:{}:{}", e.degree, e.count, e.targets))
                    .collect::<Vec<_>>()
                    .join(";");
                format!("degrees={classes};p1={player1_prob}")
            }
            ModelSpec::Gnp(s) => {
                format!("p={};targets={};p1={}", s.p, s.target_count, s.player1_prob)
            }
            ModelSpec::WorstCase { stages } => format!("stages={stages}"),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            ModelSpec::ConstDeg { player1_prob, .. } => {
                if !(0.0..=1.0).contains(player1_prob) {
                    return Err(Error::spec(format!(
                        "player1_prob = {player1_prob} outside [0, 1]"
                    )));
                }
                Ok(())
            }
            ModelSpec::Gnp(spec) => spec.validate(),
            ModelSpec::WorstCase { stages } => {
                if *stages == 0 {
                    return Err(Error::spec("worst-case family needs stages >= 1"));
                }
                Ok(())
            }
        }
    }

    /// Key-value echo of the full model, one `key = value` per line.
    pub fn to_kv(&self) -> String {
        let mut out = String::new();
        match self {
            ModelSpec::ConstDeg {
                degrees,
                player1_prob,
            } => {
                out.push_str("model = const-deg\n");
                let classes = degrees
                    .entries()
                    .iter()
                    .map(|e| format!("{}:{}:{}", e.degree, e.count, e.targets))
                    .collect::<Vec<_>>()
                    .join(",");
                out.push_str(&format!("degrees = {classes}\n"));
                out.push_str(&format!("player1_prob = {player1_prob:?}\n"));
            }
            ModelSpec::Gnp(s) => {
                out.push_str("model = gnp\n");
                out.push_str(&format!("n = {}\n", s.n));
                out.push_str(&format!("p = {:?}\n", s.p));
                out.push_str(&format!("player1_prob = {:?}\n", s.player1_prob));
                out.push_str(&format!("targets = {}\n", s.target_count));
            }
            ModelSpec::WorstCase { stages } => {
                out.push_str("model = worst-case\n");
                out.push_str(&format!("stages = {stages}\n"));
            }
        }
        out
    }

    fn sample(&self, stream: u64, master_seed: u64) -> Mdp {
        let mut rng = trial_rng(master_seed, stream);
        match self {
            ModelSpec::ConstDeg {
                degrees,
                player1_prob,
            } => {
                let graph = sample_constant_outdegree(degrees, &mut rng);
                to_mdp(
                    graph,
                    *player1_prob,
                    TargetSpec::Set(degrees.canonical_targets()),
                    &mut rng,
                )
                .expect("canonical targets are valid")
            }
            ModelSpec::Gnp(spec) => {
                let graph = sample_gnp(spec, &mut rng);
                to_mdp(
                    graph,
                    spec.player1_prob,
                    TargetSpec::Count(spec.target_count),
                    &mut rng,
                )
                .expect("validated spec")
            }
            ModelSpec::WorstCase { stages } => gen_worst_case(*stages),
        }
    }
}

/// One Monte Carlo sample.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrialRecord {
    pub trial: u64,
    pub model: String,
    pub n: usize,
    pub param: String,
    pub seed_stream: u64,
    /// Size of the first-iteration reverse reachable set.
    pub size_reverse_reachable: usize,
    pub iterations: usize,
    /// Total vertices removed across all iterations.
    pub removed: usize,
    pub work: u64,
    /// Wall time of the solve call alone, in nanoseconds.
    pub wall_ns: u128,
}

pub const CSV_HEADER: &str =
    "trial,model,n,param,seed_stream,size_s,iterations,removed,work,wall_ns";

impl TrialRecord {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.trial,
            self.model,
            self.n,
            self.param,
            self.seed_stream,
            self.size_reverse_reachable,
            self.iterations,
            self.removed,
            self.work,
            self.wall_ns
        )
    }
}

/// Aggregate statistics over a set of trials. All moments come from integer
/// accumulators, so the summary does not depend on record order.
#[derive(Debug, Clone, Serialize)]
pub struct ExperimentSummary {
    pub trials: u64,
    pub mean_iterations: f64,
    pub var_iterations: f64,
    /// Normal-approximation 95% CI for the mean iteration count.
    pub ci95_mean_iterations: (f64, f64),
    pub frac_iterations_gt1: f64,
    /// Normal-approximation 95% CI for the fraction of trials with more than
    /// one iteration.
    pub ci95_frac_gt1: (f64, f64),
    /// Empirical distribution of the reverse-reachable-set size.
    pub size_distribution: BTreeMap<usize, u64>,
    pub mean_work: f64,
    pub mean_work_per_vertex: f64,
    pub max_work: u64,
    pub mean_wall_ns: f64,
}

pub fn summarize(records: &[TrialRecord]) -> ExperimentSummary {
    let trials = records.len() as u64;
    assert!(trials > 0, "summary of zero trials");
    let mut sum_iter: u128 = 0;
    let mut sum_iter_sq: u128 = 0;
    let mut gt1: u64 = 0;
    let mut sum_work: u128 = 0;
    let mut max_work: u64 = 0;
    let mut sum_wall: u128 = 0;
    let mut size_distribution = BTreeMap::new();
    // Work-per-vertex needs a float sum; sum in trial-index order is not
    // available here, so accumulate exactly via integer pairs (work, n) and
    // divide at the end per record group. n is constant within one
    // experiment, which keeps this exact; mixed-n record sets fall back to
    // the integer totals.
    let mut sum_work_over_n = 0.0;
    let mut records_sorted: Vec<&TrialRecord> = records.iter().collect();
    records_sorted.sort_by_key(|r| r.trial);
    for r in records_sorted {
        sum_iter += r.iterations as u128;
        sum_iter_sq += (r.iterations as u128) * (r.iterations as u128);
        if r.iterations > 1 {
            gt1 += 1;
        }
        sum_work += r.work as u128;
        sum_work_over_n += r.work as f64 / r.n as f64;
        max_work = max_work.max(r.work);
        sum_wall += r.wall_ns;
        *size_distribution
            .entry(r.size_reverse_reachable)
            .or_insert(0) += 1;
    }
    let tf = trials as f64;
    let mean_iterations = sum_iter as f64 / tf;
    let var_iterations = (sum_iter_sq as f64 / tf - mean_iterations * mean_iterations).max(0.0);
    let se_mean = (var_iterations / tf).sqrt();
    let frac = gt1 as f64 / tf;
    let se_frac = (frac * (1.0 - frac) / tf).sqrt();
    ExperimentSummary {
        trials,
        mean_iterations,
        var_iterations,
        ci95_mean_iterations: (
            mean_iterations - 1.96 * se_mean,
            mean_iterations + 1.96 * se_mean,
        ),
        frac_iterations_gt1: frac,
        ci95_frac_gt1: (
            (frac - 1.96 * se_frac).max(0.0),
            (frac + 1.96 * se_frac).min(1.0),
        ),
        size_distribution,
        mean_work: sum_work as f64 / tf,
        mean_work_per_vertex: sum_work_over_n / tf,
        max_work,
        mean_wall_ns: sum_wall as f64 / tf,
    }
}

impl ExperimentSummary {
    /// Structured text report, one `key = value` line per statistic.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("trials = {}\n", self.trials));
        out.push_str(&format!("mean_iterations = {:.6}\n", self.mean_iterations));
        out.push_str(&format!("var_iterations = {:.6}\n", self.var_iterations));
        out.push_str(&format!(
            "ci95_mean_iterations = [{:.6}, {:.6}]\n",
            self.ci95_mean_iterations.0, self.ci95_mean_iterations.1
        ));
        out.push_str(&format!(
            "frac_iterations_gt1 = {:.6}\n",
            self.frac_iterations_gt1
        ));
        out.push_str(&format!(
            "ci95_frac_gt1 = [{:.6}, {:.6}]\n",
            self.ci95_frac_gt1.0, self.ci95_frac_gt1.1
        ));
        out.push_str(&format!("mean_work = {:.3}\n", self.mean_work));
        out.push_str(&format!(
            "mean_work_per_vertex = {:.6}\n",
            self.mean_work_per_vertex
        ));
        out.push_str(&format!("max_work = {}\n", self.max_work));
        out.push_str(&format!("mean_wall_ns = {:.0}\n", self.mean_wall_ns));
        let shown: Vec<String> = self
            .size_distribution
            .iter()
            .map(|(k, c)| format!("{k}:{c}"))
            .collect();
        out.push_str(&format!("size_distribution = {}\n", shown.join(" ")));
        out
    }
}

fn run_one(model: &ModelSpec, master_seed: u64, stream: u64) -> TrialRecord {
    let mdp = model.sample(stream, master_seed);
    let n = mdp.n();
    let buchi = mdp.buchi_vertices();
    let all: Vec<usize> = (0..n).collect();
    let size_s = reverse_reachable(&mdp, &buchi, &all)
        .expect("well-formed sample")
        .len();
    let start = Instant::now();
    let res = classical_buchi(&mdp);
    let wall_ns = start.elapsed().as_nanos();
    debug_assert!(res.work <= res.iterations as u64 * mdp.edge_count() as u64);
    TrialRecord {
        trial: stream,
        model: model.name().to_string(),
        n,
        param: model.param_string(),
        seed_stream: stream,
        size_reverse_reachable: size_s,
        iterations: res.iterations,
        removed: res.removals.iter().map(Vec::len).sum(),
        work: res.work,
        wall_ns,
    }
}

fn with_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match jobs {
        None => Ok(f()),
        Some(j) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(j)
                .build()
                .map_err(|e| Error::input(format!("cannot build thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

/// Runs `trials` seeded trials of the model concurrently and aggregates.
/// Records come back ordered by trial index.
pub fn run_experiment(
    model: &ModelSpec,
    trials: u64,
    master_seed: u64,
    jobs: Option<usize>,
) -> Result<(ExperimentSummary, Vec<TrialRecord>)> {
    if trials == 0 {
        return Err(Error::input("trials must be >= 1"));
    }
    model.validate()?;
    let records: Vec<TrialRecord> = with_pool(jobs, || {
        (0..trials)
            .into_par_iter()
            .map(|k| run_one(model, master_seed, k))
            .collect()
    })?;
    let summary = summarize(&records);
    Ok((summary, records))
}

/// Empirical distribution of the reverse-reachable-set size with exact
/// (Clopper-Pearson) binomial confidence intervals per size.
#[derive(Debug, Clone, Serialize)]
pub struct SizeHistogram {
    pub trials: u64,
    pub n: usize,
    pub counts: BTreeMap<usize, u64>,
    /// Per observed size: (size, estimate, ci_low, ci_high) at 95%.
    pub cis: Vec<(usize, f64, f64, f64)>,
    /// Lower edge of the range [30 x ln n, n-1] that the tail bounds call
    /// negligible (x = 1 for G(n,p)).
    pub forbidden_lo: usize,
    /// Observed trials with size in that range.
    pub forbidden_mass: u64,
}

/// Clopper-Pearson 95% interval for x successes out of n.
fn clopper_pearson(x: u64, n: u64) -> (f64, f64) {
    let alpha = 0.05;
    let lo = if x == 0 {
        0.0
    } else {
        Beta::new(x as f64, (n - x + 1) as f64)
            .unwrap()
            .inverse_cdf(alpha / 2.0)
    };
    let hi = if x == n {
        1.0
    } else {
        Beta::new((x + 1) as f64, (n - x) as f64)
            .unwrap()
            .inverse_cdf(1.0 - alpha / 2.0)
    };
    (lo, hi)
}

/// Estimates the distribution of the reverse-reachable-set size over seeded
/// trials of the model.
pub fn estimate_size_distribution(
    model: &ModelSpec,
    trials: u64,
    master_seed: u64,
    jobs: Option<usize>,
) -> Result<SizeHistogram> {
    if trials == 0 {
        return Err(Error::input("trials must be >= 1"));
    }
    model.validate()?;
    let sizes: Vec<usize> = with_pool(jobs, || {
        (0..trials)
            .into_par_iter()
            .map(|k| {
                let mdp = model.sample(k, master_seed);
                let buchi = mdp.buchi_vertices();
                let all: Vec<usize> = (0..mdp.n()).collect();
                reverse_reachable(&mdp, &buchi, &all)
                    .expect("well-formed sample")
                    .len()
            })
            .collect()
    })?;
    let n = model.n();
    let x = match model {
        ModelSpec::ConstDeg { degrees, .. } => degrees.x(),
        _ => 1,
    };
    let mut counts: BTreeMap<usize, u64> = BTreeMap::new();
    for s in sizes {
        *counts.entry(s).or_insert(0) += 1;
    }
    let forbidden_lo = (30.0 * x as f64 * (n as f64).ln()).ceil() as usize;
    let forbidden_mass = counts
        .iter()
        .filter(|(&s, _)| s >= forbidden_lo && s <= n.saturating_sub(1))
        .map(|(_, &c)| c)
        .sum();
    let cis = counts
        .iter()
        .map(|(&s, &c)| {
            let (lo, hi) = clopper_pearson(c, trials);
            (s, c as f64 / trials as f64, lo, hi)
        })
        .collect();
    Ok(SizeHistogram {
        trials,
        n,
        counts,
        cis,
        forbidden_lo,
        forbidden_mass,
    })
}

/// One row of a scaling study.
#[derive(Debug, Clone, Serialize)]
pub struct ScalingRow {
    pub n: usize,
    pub trials: u64,
    pub mean_work: f64,
    pub mean_iterations: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScalingTable {
    pub rows: Vec<ScalingRow>,
    /// Least-squares slope of ln(mean work) against ln(n).
    pub work_growth_exponent: f64,
}

/// Runs `trials_per_point` trials of `family(n)` for each grid point and
/// fits the log-log growth of mean work. The grid needs at least 4 sizes.
pub fn scaling_study(
    family: &(dyn Fn(usize) -> ModelSpec + Sync),
    grid: &[usize],
    trials_per_point: u64,
    master_seed: u64,
    jobs: Option<usize>,
) -> Result<ScalingTable> {
    if grid.len() < 4 {
        return Err(Error::input(
            "scaling study needs a grid of at least 4 sizes",
        ));
    }
    let mut rows = Vec::with_capacity(grid.len());
    for (row, &n) in grid.iter().enumerate() {
        let model = family(n);
        model.validate()?;
        let records: Vec<TrialRecord> = with_pool(jobs, || {
            (0..trials_per_point)
                .into_par_iter()
                .map(|j| run_one(&model, master_seed, row as u64 * trials_per_point + j))
                .collect()
        })?;
        let summary = summarize(&records);
        rows.push(ScalingRow {
            n: model.n(),
            trials: trials_per_point,
            mean_work: summary.mean_work,
            mean_iterations: summary.mean_iterations,
        });
    }
    let xs: Vec<f64> = rows.iter().map(|r| (r.n as f64).ln()).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.mean_work.ln()).collect();
    let xbar = xs.iter().sum::<f64>() / xs.len() as f64;
    let ybar = ys.iter().sum::<f64>() / ys.len() as f64;
    let sxy: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (x - xbar) * (y - ybar))
        .sum();
    let sxx: f64 = xs.iter().map(|x| (x - xbar) * (x - xbar)).sum();
    Ok(ScalingTable {
        rows,
        work_growth_exponent: sxy / sxx,
    })
}

/// Writes the trial records as CSV with provenance comment lines (master
/// seed and full model echo) before the header.
pub fn write_csv(
    out: &mut dyn Write,
    model: &ModelSpec,
    master_seed: u64,
    records: &[TrialRecord],
) -> std::io::Result<()> {
    for line in model.to_kv().lines() {
        writeln!(out, "# {line}")?;
    }
    writeln!(out, "# master_seed = {master_seed}")?;
    writeln!(out, "{CSV_HEADER}")?;
    for r in records {
        writeln!(out, "{}", r.csv_row())?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_gnp() -> ModelSpec {
        ModelSpec::Gnp(GnpSpec {
            n: 30,
            p: 0.2,
            player1_prob: 0.5,
            target_count: 1,
        })
    }

    #[test]
    fn zero_trials_is_an_input_error() {
        assert!(matches!(
            run_experiment(&small_gnp(), 0, 1, None),
            Err(Error::Input(_))
        ));
        assert!(matches!(
            estimate_size_distribution(&small_gnp(), 0, 1, None),
            Err(Error::Input(_))
        ));
    }

    /// Strips the one nondeterministic field (wall time).
    fn timeless(mut records: Vec<TrialRecord>) -> Vec<TrialRecord> {
        for r in &mut records {
            r.wall_ns = 0;
        }
        records
    }

    #[test]
    fn experiment_is_deterministic() {
        let (s1, r1) = run_experiment(&small_gnp(), 50, 7, None).unwrap();
        let (s2, r2) = run_experiment(&small_gnp(), 50, 7, Some(2)).unwrap();
        assert_eq!(timeless(r1.clone()), timeless(r2));
        assert_eq!(s1.mean_iterations, s2.mean_iterations);
        let (_, r3) = run_experiment(&small_gnp(), 50, 8, None).unwrap();
        assert_ne!(timeless(r1), timeless(r3));
    }

    #[test]
    fn summary_is_order_independent() {
        let (_, mut records) = run_experiment(&small_gnp(), 40, 3, None).unwrap();
        let s1 = summarize(&records);
        records.reverse();
        records.rotate_left(13);
        let s2 = summarize(&records);
        assert_eq!(s1.mean_iterations.to_bits(), s2.mean_iterations.to_bits());
        assert_eq!(s1.var_iterations.to_bits(), s2.var_iterations.to_bits());
        assert_eq!(
            s1.mean_work_per_vertex.to_bits(),
            s2.mean_work_per_vertex.to_bits()
        );
        assert_eq!(s1.size_distribution, s2.size_distribution);
    }

    #[test]
    fn one_iteration_iff_everything_reaches_targets() {
        let (_, records) = run_experiment(&small_gnp(), 200, 11, None).unwrap();
        for r in &records {
            assert_eq!(r.iterations == 1, r.size_reverse_reachable == r.n, "{r:?}");
            assert!(r.size_reverse_reachable <= r.n);
            assert!(r.iterations >= 1);
            assert!(r.work <= r.iterations as u64 * 2 * 30 * 30);
        }
    }

    #[test]
    fn histogram_mass_sums_to_trials() {
        let model = ModelSpec::ConstDeg {
            degrees: DegreeSpec::uniform(2, 5, 1).unwrap(),
            player1_prob: 0.5,
        };
        let hist = estimate_size_distribution(&model, 1000, 5, None).unwrap();
        assert_eq!(hist.counts.values().sum::<u64>(), 1000);
        for &(_, p, lo, hi) in &hist.cis {
            assert!((0.0..=1.0).contains(&lo) && lo <= p && p <= hi && hi <= 1.0);
        }
    }

    #[test]
    fn gnp_n100_half_never_needs_a_second_iteration() {
        // The exact tail says 1 - R(100, 1/2) < (3/4)^100 ~ 3e-13, so 10^4
        // trials must all finish in one iteration.
        let model = ModelSpec::Gnp(GnpSpec {
            n: 100,
            p: 0.5,
            player1_prob: 0.5,
            target_count: 1,
        });
        let (summary, _) = run_experiment(&model, 10_000, 424242, None).unwrap();
        assert_eq!(summary.frac_iterations_gt1, 0.0);
    }

    #[test]
    fn large_target_set_means_constant_iterations() {
        // t = 2 * ceil(30 ln n) targets: essentially every trial resolves in
        // one iteration; the mean stays near 1 (assert <= 2, generous).
        let n = 10_000;
        let t = 2 * (30.0 * (n as f64).ln()).ceil() as usize;
        let model = ModelSpec::ConstDeg {
            degrees: DegreeSpec::uniform(3, n, t).unwrap(),
            player1_prob: 0.5,
        };
        let (summary, _) = run_experiment(&model, 200, 99, None).unwrap();
        assert!(
            summary.mean_iterations <= 2.0,
            "mean = {}",
            summary.mean_iterations
        );
    }

    #[test]
    fn gnp_logarithmic_family_stays_near_one_iteration() {
        // p = 3 ln(n)/n: the mean iteration count stays below 1.2 at every
        // grid point (empirical means, 100 trials each).
        let table = scaling_study(
            &|n| {
                ModelSpec::Gnp(GnpSpec {
                    n,
                    p: 3.0 * (n as f64).ln() / n as f64,
                    player1_prob: 0.5,
                    target_count: 1,
                })
            },
            &[1 << 10, 1 << 11, 1 << 12, 1 << 13, 1 << 14],
            100,
            31337,
            None,
        )
        .unwrap();
        for row in &table.rows {
            assert!(
                row.mean_iterations <= 1.2,
                "n = {}: mean iterations {}",
                row.n,
                row.mean_iterations
            );
        }
    }

    #[test]
    fn worst_case_scaling_is_exact_and_superlinear() {
        let table = scaling_study(
            &|s| ModelSpec::WorstCase { stages: s },
            &[64, 128, 256, 512, 1024],
            1,
            0,
            None,
        )
        .unwrap();
        for row in &table.rows {
            // n = 3s + 1, iterations = s + 1.
            let stages = (row.n - 1) / 3;
            assert_eq!(row.mean_iterations, (stages + 1) as f64);
        }
        assert!(
            table.work_growth_exponent > 1.5,
            "worst-case work exponent {} not superlinear",
            table.work_growth_exponent
        );
    }

    #[test]
    fn scaling_study_needs_four_sizes() {
        let err = scaling_study(
            &|s| ModelSpec::WorstCase { stages: s },
            &[8, 16, 32],
            1,
            0,
            None,
        );
        assert!(matches!(err, Err(Error::Input(_))));
    }

    #[test]
    fn csv_output_shape() {
        let (_, records) = run_experiment(&small_gnp(), 3, 21, None).unwrap();
        let mut buf = Vec::new();
        write_csv(&mut buf, &small_gnp(), 21, &records).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.lines().next().unwrap().starts_with("# model = gnp"));
        assert!(text.contains("# master_seed = 21"));
        let header = text.lines().find(|l| !l.starts_with('#')).unwrap();
        assert_eq!(header, CSV_HEADER);
        let data: Vec<&str> = text
            .lines()
            .filter(|l| !l.starts_with('#'))
            .skip(1)
            .collect();
        assert_eq!(data.len(), 3);
        for row in data {
            assert_eq!(row.split(',').count(), CSV_HEADER.split(',').count());
        }
    }
}
