//! Design generators: Monte Carlo, Sobol' (optionally digital-shift
//! scrambled), and Latin hypercube.
//!
//! Every sampler is a pure function of its [`SamplerSpec`]: the PRNG is
//! ChaCha8 seeded from `spec.seed`, whose stream is stable across platforms,
//! so the same spec always yields the same design. No global state is used.

mod sobol;

pub use sobol::max_sobol_dims;

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::design::Design;
use crate::{Error, Result};

/// Design generator family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SamplerKind {
    /// I.i.d. uniform sampling.
    Mc,
    /// Sobol' low-discrepancy sequence.
    Sobol,
    /// Latin hypercube sampling.
    Lhs,
}

impl fmt::Display for SamplerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SamplerKind::Mc => "mc",
            SamplerKind::Sobol => "sobol",
            SamplerKind::Lhs => "lhs",
        })
    }
}

impl FromStr for SamplerKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "mc" => Ok(SamplerKind::Mc),
            "sobol" => Ok(SamplerKind::Sobol),
            "lhs" => Ok(SamplerKind::Lhs),
            other => Err(format!("unknown sampler kind '{other}' (expected mc, sobol, or lhs)")),
        }
    }
}

/// Full recipe for one design: generator family, shape, and randomization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SamplerSpec {
    pub kind: SamplerKind,
    pub n_points: usize,
    pub n_dims: usize,
    pub seed: u64,
    /// Apply a random digital shift (Sobol' only).
    pub scramble: bool,
    /// Place points at stratum midpoints instead of jittering them (LHS only).
    pub centered: bool,
}

impl SamplerSpec {
    /// Monte Carlo spec.
    pub fn mc(n_points: usize, n_dims: usize, seed: u64) -> Self {
        Self {
            kind: SamplerKind::Mc,
            n_points,
            n_dims,
            seed,
            scramble: false,
            centered: false,
        }
    }

    /// Sobol' spec; `scramble` selects the seed-derived digital shift.
    pub fn sobol(n_points: usize, n_dims: usize, seed: u64, scramble: bool) -> Self {
        Self {
            kind: SamplerKind::Sobol,
            n_points,
            n_dims,
            seed,
            scramble,
            centered: false,
        }
    }

    /// Latin hypercube spec; `centered` picks stratum midpoints.
    pub fn lhs(n_points: usize, n_dims: usize, seed: u64, centered: bool) -> Self {
        Self {
            kind: SamplerKind::Lhs,
            n_points,
            n_dims,
            seed,
            scramble: false,
            centered,
        }
    }

    /// The same spec with a different seed (replicate schedules).
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

/// Generates the design described by `spec`.
pub fn sample(spec: &SamplerSpec) -> Result<Design> {
    match spec.kind {
        SamplerKind::Mc => sample_mc(spec),
        SamplerKind::Sobol => sample_sobol(spec),
        SamplerKind::Lhs => sample_lhs(spec),
    }
}

/// `n_points × n_dims` i.i.d. uniform values in `[0, 1)`, filled row-major.
pub fn sample_mc(spec: &SamplerSpec) -> Result<Design> {
    debug_assert_eq!(spec.kind, SamplerKind::Mc);
    if spec.n_points == 0 || spec.n_dims == 0 {
        return Err(Error::EmptyDesign);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let points = (0..spec.n_points * spec.n_dims)
        .map(|_| rng.random::<f64>())
        .collect();
    Design::new(points, spec.n_points, spec.n_dims)
}

/// First `n_points` of the Sobol' sequence in Gray-code order, the all-zeros
/// point included. With `scramble`, each dimension's binary expansion is
/// XORed with a seed-derived random word (random digital shift), so
/// replicates differ while the net structure is preserved.
pub fn sample_sobol(spec: &SamplerSpec) -> Result<Design> {
    debug_assert_eq!(spec.kind, SamplerKind::Sobol);
    sobol::sobol_design(spec)
}

/// Latin hypercube design: per dimension an independent random permutation π
/// of `{1..n_points}` assigns each point its stratum; centered designs sit at
/// `(π(i) − ½)/n_points`, otherwise points are jittered uniformly within
/// their stratum (`(π(i) − u)/n_points` with `u` uniform in `(0, 1]`).
pub fn sample_lhs(spec: &SamplerSpec) -> Result<Design> {
    debug_assert_eq!(spec.kind, SamplerKind::Lhs);
    let (n, d) = (spec.n_points, spec.n_dims);
    if n == 0 || d == 0 {
        return Err(Error::EmptyDesign);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let nf = n as f64;
    let mut points = vec![0.0; n * d];
    for col in 0..d {
        let mut ranks: Vec<usize> = (0..n).collect();
        ranks.shuffle(&mut rng);
        for (row, &rank) in ranks.iter().enumerate() {
            let offset = if spec.centered { 0.5 } else { rng.random::<f64>() };
            points[row * d + col] = (rank as f64 + offset) / nf;
        }
    }
    Design::new(points, n, d)
}

/// Returns a copy of `design` with column `dim` reordered so that row `i`
/// receives the column's old row `perm[i]` (0-based); all other columns are
/// untouched.
pub fn permute_column(design: &Design, dim: usize, perm: &[usize]) -> Result<Design> {
    let n = design.n_points();
    let d = design.n_dims();
    if dim >= d {
        return Err(Error::ColumnOutOfRange { dim, n_dims: d });
    }
    if perm.len() != n {
        return Err(Error::InvalidPermutation(format!(
            "length {} does not match {n} rows",
            perm.len()
        )));
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n {
            return Err(Error::InvalidPermutation(format!(
                "index {p} out of range for {n} rows"
            )));
        }
        if seen[p] {
            return Err(Error::InvalidPermutation(format!("index {p} appears twice")));
        }
        seen[p] = true;
    }
    let mut points = design.values().to_vec();
    for (row, &p) in perm.iter().enumerate() {
        points[row * d + dim] = design.get(p, dim);
    }
    Design::new(points, n, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benford::nbd_flat;

    #[test]
    fn mc_is_deterministic_per_seed() {
        let spec = SamplerSpec::mc(16, 3, 42);
        assert_eq!(sample_mc(&spec).unwrap(), sample_mc(&spec).unwrap());
        let other = sample_mc(&spec.with_seed(43)).unwrap();
        assert_ne!(sample_mc(&spec).unwrap(), other);
    }

    #[test]
    fn mc_stays_in_range() {
        let spec = SamplerSpec::mc(4096, 10, 7);
        let design = sample_mc(&spec).unwrap();
        assert!(design.values().iter().all(|&x| (0.0..1.0).contains(&x)));
    }

    #[test]
    fn empty_specs_are_rejected() {
        assert!(sample_mc(&SamplerSpec::mc(0, 3, 0)).is_err());
        assert!(sample_lhs(&SamplerSpec::lhs(5, 0, 0, true)).is_err());
        assert!(sample_sobol(&SamplerSpec::sobol(0, 2, 0, false)).is_err());
    }

    #[test]
    fn lhs_centered_levels() {
        let design = sample_lhs(&SamplerSpec::lhs(6, 2, 1, true)).unwrap();
        let expected: Vec<f64> = (0..6).map(|k| (k as f64 + 0.5) / 6.0).collect();
        for col in 0..2 {
            let mut levels: Vec<f64> = design.column(col).collect();
            levels.sort_by(f64::total_cmp);
            assert_eq!(levels, expected);
        }
    }

    #[test]
    fn lhs_stratifies_every_column() {
        for (seed, centered) in [(0, true), (1, false), (2, false)] {
            let n = 16;
            let design = sample_lhs(&SamplerSpec::lhs(n, 4, seed, centered)).unwrap();
            for col in 0..4 {
                let mut strata: Vec<usize> =
                    design.column(col).map(|x| (x * n as f64) as usize).collect();
                strata.sort_unstable();
                assert_eq!(strata, (0..n).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn lhs_is_deterministic_per_seed() {
        let spec = SamplerSpec::lhs(12, 3, 9, false);
        assert_eq!(sample_lhs(&spec).unwrap(), sample_lhs(&spec).unwrap());
    }

    #[test]
    fn centered_lhs_flat_nbd_is_permutation_free() {
        let mut values = Vec::new();
        for seed in 0..5 {
            let design = sample_lhs(&SamplerSpec::lhs(6, 2, seed, true)).unwrap();
            values.push(nbd_flat(&design).value);
        }
        for &v in &values {
            assert!((v - 0.0693).abs() < 5e-4);
            assert_eq!(v, values[0]);
        }
    }

    #[test]
    fn permute_column_examples() {
        let design = sample_lhs(&SamplerSpec::lhs(5, 2, 3, true)).unwrap();
        let identity: Vec<usize> = (0..5).collect();
        assert_eq!(permute_column(&design, 1, &identity).unwrap(), design);

        let perm = vec![3, 0, 4, 1, 2];
        let mut inverse = vec![0; 5];
        for (i, &p) in perm.iter().enumerate() {
            inverse[p] = i;
        }
        let permuted = permute_column(&design, 1, &perm).unwrap();
        let restored = permute_column(&permuted, 1, &inverse).unwrap();
        assert_eq!(restored, design);
        assert_eq!(nbd_flat(&permuted).value, nbd_flat(&design).value);
    }

    #[test]
    fn permute_column_validates_input() {
        let design = sample_lhs(&SamplerSpec::lhs(4, 2, 3, true)).unwrap();
        assert!(matches!(
            permute_column(&design, 2, &[0, 1, 2, 3]),
            Err(Error::ColumnOutOfRange { dim: 2, .. })
        ));
        assert!(matches!(
            permute_column(&design, 0, &[0, 1]),
            Err(Error::InvalidPermutation(_))
        ));
        assert!(matches!(
            permute_column(&design, 0, &[0, 1, 2, 4]),
            Err(Error::InvalidPermutation(_))
        ));
        assert!(matches!(
            permute_column(&design, 0, &[0, 1, 1, 2]),
            Err(Error::InvalidPermutation(_))
        ));
    }

    #[test]
    fn dispatch_matches_direct_calls() {
        let spec = SamplerSpec::sobol(8, 3, 5, true);
        assert_eq!(sample(&spec).unwrap(), sample_sobol(&spec).unwrap());
    }
}
