//! Replication harness: per-dimension digit conformance, replicated metric
//! runs, convergence studies, and boxplot-style summaries.
//!
//! Replicate `r` of a study always uses seed `base_seed + r`, so any record
//! depends only on its spec and replicate index, never on execution order;
//! record lists are emitted sorted so downstream CSV output is byte-stable.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::benford::{digit_bin, nb_probability, nbd_flat, nbd_joint, JointMode};
use crate::design::Design;
use crate::discrepancy::centered_l2_squared;
use crate::samplers::{sample, SamplerKind, SamplerSpec};
use crate::{Error, Result};

/// Metric a benchmark record reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Metric {
    NbdFlat,
    NbdJoint,
    Cd2,
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Metric::NbdFlat => "nbd_flat",
            Metric::NbdJoint => "nbd_joint",
            Metric::Cd2 => "cd2",
        })
    }
}

impl FromStr for Metric {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "nbd_flat" | "nbd-flat" => Ok(Metric::NbdFlat),
            "nbd_joint" | "nbd-joint" => Ok(Metric::NbdJoint),
            "cd2" => Ok(Metric::Cd2),
            other => Err(format!(
                "unknown metric '{other}' (expected nbd-flat, nbd-joint, or cd2)"
            )),
        }
    }
}

/// One (sampler, size, replicate, metric) measurement.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkRecord {
    pub sampler: SamplerKind,
    pub n_points: usize,
    pub n_dims: usize,
    pub replicate: usize,
    pub metric: Metric,
    pub value: f64,
}

/// Signed deviation of one digit's frequency in one dimension.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DigitErrorRow {
    pub dimension: usize,
    /// Digit 1..=9.
    pub digit: u8,
    /// Empirical probability minus the law's probability.
    pub deviation: f64,
}

/// Per-dimension digit conformance table: 9 rows per dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct DigitErrorTable {
    pub rows: Vec<DigitErrorRow>,
}

/// For each dimension independently: the column's empirical digit
/// frequencies minus the law. Each dimension's nine deviations sum to zero
/// (both distributions sum to 1).
pub fn per_dimension_digit_errors(design: &Design) -> DigitErrorTable {
    let n = design.n_points() as f64;
    let mut rows = Vec::with_capacity(design.n_dims() * 9);
    for dim in 0..design.n_dims() {
        let mut counts = [0u64; 9];
        for x in design.column(dim) {
            counts[digit_bin(x)] += 1;
        }
        for (i, &count) in counts.iter().enumerate() {
            let digit = i as u8 + 1;
            let reference = nb_probability(digit).expect("digits 1..=9 are in range");
            rows.push(DigitErrorRow {
                dimension: dim,
                digit,
                deviation: count as f64 / n - reference,
            });
        }
    }
    DigitErrorTable { rows }
}

fn evaluate(design: &Design, metric: Metric) -> Result<f64> {
    Ok(match metric {
        Metric::NbdFlat => nbd_flat(design).value,
        Metric::NbdJoint => nbd_joint(design, JointMode::default())?.value,
        Metric::Cd2 => centered_l2_squared(design).value,
    })
}

/// Samples `replicates` designs of `spec`'s shape and records `metric` for
/// each; replicate `r` reuses the spec with seed `spec.seed + r`.
pub fn run_replicates(
    spec: &SamplerSpec,
    metric: Metric,
    replicates: usize,
) -> Result<Vec<BenchmarkRecord>> {
    let mut records = Vec::with_capacity(replicates);
    for replicate in 0..replicates {
        let rep_spec = spec.with_seed(spec.seed.wrapping_add(replicate as u64));
        let design = sample(&rep_spec)?;
        records.push(BenchmarkRecord {
            sampler: spec.kind,
            n_points: spec.n_points,
            n_dims: spec.n_dims,
            replicate,
            metric,
            value: evaluate(&design, metric)?,
        });
    }
    Ok(records)
}

/// Spec a study uses for one sampler kind: Sobol' digitally shifted, LHS
/// jittered within strata, so every sampler is randomized comparably.
pub fn study_spec(kind: SamplerKind, n_points: usize, n_dims: usize, seed: u64) -> SamplerSpec {
    match kind {
        SamplerKind::Mc => SamplerSpec::mc(n_points, n_dims, seed),
        SamplerKind::Sobol => SamplerSpec::sobol(n_points, n_dims, seed, true),
        SamplerKind::Lhs => SamplerSpec::lhs(n_points, n_dims, seed, false),
    }
}

/// Full convergence cross-product: for every sampler kind, design size, and
/// replicate, evaluates `nbd_flat` and `nbd_joint` on the same sampled
/// design. Records come back sorted by (metric, sampler, n_points,
/// replicate). `ns_list` is expected ascending.
pub fn convergence_study(
    kinds: &[SamplerKind],
    ns_list: &[usize],
    n_dims: usize,
    replicates: usize,
    base_seed: u64,
) -> Result<Vec<BenchmarkRecord>> {
    debug_assert!(ns_list.windows(2).all(|w| w[0] < w[1]));
    let mut records = Vec::with_capacity(kinds.len() * ns_list.len() * replicates * 2);
    for &kind in kinds {
        for &n_points in ns_list {
            for replicate in 0..replicates {
                let seed = base_seed.wrapping_add(replicate as u64);
                let design = sample(&study_spec(kind, n_points, n_dims, seed))?;
                for metric in [Metric::NbdFlat, Metric::NbdJoint] {
                    records.push(BenchmarkRecord {
                        sampler: kind,
                        n_points,
                        n_dims,
                        replicate,
                        metric,
                        value: evaluate(&design, metric)?,
                    });
                }
            }
        }
    }
    records.sort_by(|a, b| {
        (a.metric, a.sampler, a.n_points, a.replicate).cmp(&(
            b.metric,
            b.sampler,
            b.n_points,
            b.replicate,
        ))
    });
    Ok(records)
}

/// Boxplot statistics of one (metric, sampler, n_points) record group.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SummaryRow {
    pub metric: Metric,
    pub sampler: SamplerKind,
    pub n_points: usize,
    pub mean: f64,
    pub median: f64,
    pub q25: f64,
    pub q75: f64,
    pub min: f64,
    pub max: f64,
}

/// Quantile by linear interpolation between order statistics of a sorted
/// slice: the p-quantile sits at rank `(len − 1) · p`.
fn quantile(sorted: &[f64], p: f64) -> f64 {
    let rank = (sorted.len() - 1) as f64 * p;
    let lo = rank.floor() as usize;
    let hi = rank.ceil() as usize;
    sorted[lo] + (rank - lo as f64) * (sorted[hi] - sorted[lo])
}

/// Groups records by (metric, sampler, n_points) and computes boxplot
/// statistics; groups come back in that key order.
pub fn summarize(records: &[BenchmarkRecord]) -> Result<Vec<SummaryRow>> {
    if records.is_empty() {
        return Err(Error::NoRecords);
    }
    let mut groups: BTreeMap<(Metric, SamplerKind, usize), Vec<f64>> = BTreeMap::new();
    for record in records {
        groups
            .entry((record.metric, record.sampler, record.n_points))
            .or_default()
            .push(record.value);
    }
    let rows = groups
        .into_iter()
        .map(|((metric, sampler, n_points), mut values)| {
            values.sort_by(f64::total_cmp);
            SummaryRow {
                metric,
                sampler,
                n_points,
                mean: values.iter().sum::<f64>() / values.len() as f64,
                median: quantile(&values, 0.5),
                q25: quantile(&values, 0.25),
                q75: quantile(&values, 0.75),
                min: values[0],
                max: values[values.len() - 1],
            }
        })
        .collect();
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samplers::sample_mc;

    #[test]
    fn digit_errors_sum_to_zero_per_dimension() {
        let design = sample_mc(&SamplerSpec::mc(50, 7, 123)).unwrap();
        let table = per_dimension_digit_errors(&design);
        assert_eq!(table.rows.len(), 7 * 9);
        for dim in 0..7 {
            let sum: f64 = table
                .rows
                .iter()
                .filter(|r| r.dimension == dim)
                .map(|r| r.deviation)
                .sum();
            assert!(sum.abs() < 1e-12, "dimension {dim}: {sum}");
        }
    }

    #[test]
    fn single_replicate_equals_direct_call() {
        let spec = SamplerSpec::mc(20, 3, 77);
        let records = run_replicates(&spec, Metric::NbdFlat, 1).unwrap();
        assert_eq!(records.len(), 1);
        let direct = nbd_flat(&sample(&spec).unwrap()).value;
        assert_eq!(records[0].value, direct);
        assert_eq!(records[0].replicate, 0);
    }

    #[test]
    fn replicates_are_reproducible() {
        let spec = SamplerSpec::sobol(16, 4, 5, true);
        let a = run_replicates(&spec, Metric::NbdJoint, 10).unwrap();
        let b = run_replicates(&spec, Metric::NbdJoint, 10).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn sobol_beats_mc_on_flat_nbd() {
        let mc = run_replicates(&SamplerSpec::mc(32, 10, 1000), Metric::NbdFlat, 99).unwrap();
        let sobol = run_replicates(
            &SamplerSpec::sobol(32, 10, 2000, true),
            Metric::NbdFlat,
            99,
        )
        .unwrap();
        let mean = |records: &[BenchmarkRecord]| {
            records.iter().map(|r| r.value).sum::<f64>() / records.len() as f64
        };
        assert!(mean(&sobol) < mean(&mc));
    }

    #[test]
    fn convergence_study_shape_and_determinism() {
        let kinds = [SamplerKind::Mc, SamplerKind::Sobol];
        let ns = [16, 32];
        let a = convergence_study(&kinds, &ns, 4, 3, 9).unwrap();
        assert_eq!(a.len(), 2 * 2 * 3 * 2);
        let b = convergence_study(&kinds, &ns, 4, 3, 9).unwrap();
        assert_eq!(a, b);
        let keys: Vec<_> = a
            .iter()
            .map(|r| (r.metric, r.sampler, r.n_points, r.replicate))
            .collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn joint_nbd_saturates_while_flat_decays() {
        let ns = [32, 64, 128, 256, 512, 1024, 2048, 4096];
        let records = convergence_study(&[SamplerKind::Sobol], &ns, 10, 20, 0).unwrap();
        let mean = |metric: Metric, n: usize| {
            let values: Vec<f64> = records
                .iter()
                .filter(|r| r.metric == metric && r.n_points == n)
                .map(|r| r.value)
                .collect();
            values.iter().sum::<f64>() / values.len() as f64
        };
        let flat_ratio = mean(Metric::NbdFlat, 4096) / mean(Metric::NbdFlat, 32);
        let joint_ratio = mean(Metric::NbdJoint, 4096) / mean(Metric::NbdJoint, 32);
        assert!(flat_ratio < 0.15, "flat NBD should keep decaying: {flat_ratio}");
        assert!(joint_ratio > 0.3, "joint NBD should level off: {joint_ratio}");
    }

    #[test]
    fn mc_digit_spread_across_dimensions_exceeds_sobol() {
        // Spread = standard deviation, across dimensions, of one digit's
        // deviations; averaged over 99 replicates.
        let (n, d, reps) = (32, 10, 99);
        let spread = |kind: SamplerKind| -> [f64; 9] {
            let mut acc = [0.0f64; 9];
            for rep in 0..reps {
                let spec = study_spec(kind, n, d, 500 + rep as u64);
                let table = per_dimension_digit_errors(&sample(&spec).unwrap());
                for digit in 1..=9u8 {
                    let devs: Vec<f64> = table
                        .rows
                        .iter()
                        .filter(|r| r.digit == digit)
                        .map(|r| r.deviation)
                        .collect();
                    let mean = devs.iter().sum::<f64>() / devs.len() as f64;
                    let var =
                        devs.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / devs.len() as f64;
                    acc[digit as usize - 1] += var.sqrt();
                }
            }
            acc.map(|s| s / reps as f64)
        };
        let mc = spread(SamplerKind::Mc);
        let sobol = spread(SamplerKind::Sobol);
        let wins = (0..9).filter(|&i| mc[i] > sobol[i]).count();
        assert!(wins >= 7, "MC spread should exceed Sobol' for most digits: {wins}/9");
        let mc_mean: f64 = mc.iter().sum::<f64>() / 9.0;
        let sobol_mean: f64 = sobol.iter().sum::<f64>() / 9.0;
        assert!(mc_mean > sobol_mean);
    }

    #[test]
    fn summarize_single_record() {
        let records = run_replicates(&SamplerSpec::mc(8, 2, 4), Metric::Cd2, 1).unwrap();
        let rows = summarize(&records).unwrap();
        assert_eq!(rows.len(), 1);
        let row = rows[0];
        assert_eq!(row.mean, records[0].value);
        assert_eq!(row.median, row.mean);
        assert_eq!(row.min, row.max);
        assert_eq!(row.metric, Metric::Cd2);
    }

    #[test]
    fn summarize_interpolates_quantiles() {
        let records: Vec<BenchmarkRecord> = [1.0, 2.0, 3.0, 4.0]
            .iter()
            .enumerate()
            .map(|(replicate, &value)| BenchmarkRecord {
                sampler: SamplerKind::Mc,
                n_points: 4,
                n_dims: 1,
                replicate,
                metric: Metric::NbdFlat,
                value,
            })
            .collect();
        let row = summarize(&records).unwrap()[0];
        assert_eq!(row.median, 2.5);
        assert_eq!(row.q25, 1.75);
        assert_eq!(row.q75, 3.25);
        assert_eq!(row.min, 1.0);
        assert_eq!(row.max, 4.0);
        assert_eq!(row.mean, 2.5);
    }

    #[test]
    fn summarize_rejects_empty_input() {
        assert_eq!(summarize(&[]), Err(Error::NoRecords));
    }
}
