//! Sobol' sequence generation in Gray-code order.
//!
//! Direction numbers come from the Joe-Kuo style table embedded at
//! `data/new-joe-kuo-6.201.txt` (one row per dimension: index, polynomial
//! degree `s`, polynomial coefficient integer `a`, then the `s` initial
//! direction integers `m_i`). The table covers dimensions 2..=201; the first
//! dimension is the conventional van der Corput radical inverse (all `m = 1`).

use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::design::Design;
use crate::samplers::SamplerSpec;
use crate::{Error, Result};

const BITS: usize = 32;
const TABLE: &str = include_str!("../../data/new-joe-kuo-6.201.txt");

struct DimensionParams {
    /// Degree of the primitive polynomial.
    s: usize,
    /// Interior polynomial coefficients, packed as bits.
    a: u32,
    /// Initial direction integers `m_1..m_s` (each `m_j < 2^j`, odd).
    m: Vec<u32>,
}

fn table() -> &'static [DimensionParams] {
    static T: OnceLock<Vec<DimensionParams>> = OnceLock::new();
    T.get_or_init(|| parse_table(TABLE).expect("embedded direction-number table is well-formed"))
}

fn parse_table(text: &str) -> Option<Vec<DimensionParams>> {
    let mut rows = Vec::new();
    for line in text.lines().skip(1) {
        if line.trim().is_empty() {
            continue;
        }
        let mut fields = line.split_whitespace();
        let dim: usize = fields.next()?.parse().ok()?;
        let s: usize = fields.next()?.parse().ok()?;
        let a: u32 = fields.next()?.parse().ok()?;
        let m: Vec<u32> = fields.map(|f| f.parse().ok()).collect::<Option<_>>()?;
        if dim != rows.len() + 2 || m.len() != s {
            return None;
        }
        rows.push(DimensionParams { s, a, m });
    }
    Some(rows)
}

/// Highest dimension count the embedded direction-number table supports.
pub fn max_sobol_dims() -> usize {
    table().len() + 1
}

/// Direction numbers `v_1..v_32` for one dimension, each an `m_j << (32−j)`
/// word, extended past the table's `s` initial values by the recurrence
/// `v_j = v_{j−s} ^ (v_{j−s} >> s) ^ Σ_{k=1}^{s−1} a_k v_{j−k}`.
fn direction_numbers(dim: usize) -> [u32; BITS] {
    let mut v = [0u32; BITS];
    if dim == 0 {
        for (j, word) in v.iter_mut().enumerate() {
            *word = 1 << (31 - j);
        }
        return v;
    }
    let params = &table()[dim - 1];
    let s = params.s;
    for (j, word) in v.iter_mut().enumerate().take(s.min(BITS)) {
        *word = params.m[j] << (31 - j);
    }
    for j in s..BITS {
        let mut word = v[j - s] ^ (v[j - s] >> s);
        for k in 1..s {
            if (params.a >> (s - 1 - k)) & 1 == 1 {
                word ^= v[j - k];
            }
        }
        v[j] = word;
    }
    v
}

pub(super) fn sobol_design(spec: &SamplerSpec) -> Result<Design> {
    let (n, d) = (spec.n_points, spec.n_dims);
    if n == 0 || d == 0 {
        return Err(Error::EmptyDesign);
    }
    let max = max_sobol_dims();
    if d > max {
        return Err(Error::SobolDimensions { requested: d, max });
    }

    let directions: Vec<[u32; BITS]> = (0..d).map(direction_numbers).collect();
    let shifts: Vec<u32> = if spec.scramble {
        let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
        (0..d).map(|_| rng.random::<u32>()).collect()
    } else {
        vec![0; d]
    };

    // Gray-code walk: point i differs from point i−1 in direction
    // trailing_zeros(i); the first point is the origin.
    let scale = 1.0 / (1u64 << 32) as f64;
    let mut state = vec![0u32; d];
    let mut points = Vec::with_capacity(n * d);
    for i in 0..n {
        if i > 0 {
            let bit = (i as u64).trailing_zeros() as usize;
            for (word, v) in state.iter_mut().zip(&directions) {
                *word ^= v[bit];
            }
        }
        for (&word, &shift) in state.iter().zip(&shifts) {
            points.push(f64::from(word ^ shift) * scale);
        }
    }
    Design::new(points, n, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samplers::sample_sobol;

    #[test]
    fn parses_known_table_rows() {
        let rows = table();
        assert_eq!(rows.len(), 200);
        let known: [(usize, u32, &[u32]); 7] = [
            (1, 0, &[1]),
            (2, 1, &[1, 3]),
            (3, 1, &[1, 3, 1]),
            (3, 2, &[1, 1, 1]),
            (4, 1, &[1, 1, 3, 3]),
            (4, 4, &[1, 3, 5, 13]),
            (5, 2, &[1, 1, 5, 5, 17]),
        ];
        for (i, (s, a, m)) in known.iter().enumerate() {
            assert_eq!(rows[i].s, *s, "dimension {}", i + 2);
            assert_eq!(rows[i].a, *a, "dimension {}", i + 2);
            assert_eq!(rows[i].m, *m, "dimension {}", i + 2);
        }
    }

    #[test]
    fn first_points_in_two_dimensions() {
        let design = sample_sobol(&SamplerSpec::sobol(4, 2, 0, false)).unwrap();
        let expected = [
            [0.0, 0.0],
            [0.5, 0.5],
            [0.75, 0.25],
            [0.25, 0.75],
        ];
        for (row, want) in design.rows().zip(&expected) {
            assert_eq!(row, want);
        }
    }

    #[test]
    fn first_points_in_ten_dimensions() {
        // First eight unscrambled points, dimensions 1..=10; dyadic values,
        // so exact equality is expected.
        let design = sample_sobol(&SamplerSpec::sobol(8, 10, 0, false)).unwrap();
        let expected: [[f64; 10]; 8] = [
            [0.0; 10],
            [0.5; 10],
            [0.75, 0.25, 0.25, 0.25, 0.75, 0.75, 0.25, 0.75, 0.75, 0.75],
            [0.25, 0.75, 0.75, 0.75, 0.25, 0.25, 0.75, 0.25, 0.25, 0.25],
            [0.375, 0.375, 0.625, 0.875, 0.375, 0.125, 0.375, 0.875, 0.875, 0.625],
            [0.875, 0.875, 0.125, 0.375, 0.875, 0.625, 0.875, 0.375, 0.375, 0.125],
            [0.625, 0.125, 0.875, 0.625, 0.625, 0.875, 0.125, 0.125, 0.125, 0.375],
            [0.125, 0.625, 0.375, 0.125, 0.125, 0.375, 0.625, 0.625, 0.625, 0.875],
        ];
        for (row, want) in design.rows().zip(&expected) {
            assert_eq!(row, want);
        }
    }

    #[test]
    fn scrambling_is_deterministic_and_seed_sensitive() {
        let spec = SamplerSpec::sobol(32, 5, 11, true);
        assert_eq!(sample_sobol(&spec).unwrap(), sample_sobol(&spec).unwrap());
        assert_ne!(
            sample_sobol(&spec).unwrap(),
            sample_sobol(&spec.with_seed(12)).unwrap()
        );
    }

    #[test]
    fn unscrambled_balance_in_dyadic_intervals() {
        let m = 5;
        let n = 1 << m;
        let design = sample_sobol(&SamplerSpec::sobol(n, 8, 0, false)).unwrap();
        for col in 0..8 {
            let mut cells: Vec<usize> = design
                .column(col)
                .map(|x| (x * n as f64) as usize)
                .collect();
            cells.sort_unstable();
            assert_eq!(cells, (0..n).collect::<Vec<_>>(), "column {col}");
        }
    }

    #[test]
    fn digital_shift_preserves_stratification() {
        let m = 5;
        let n = 1 << m;
        for seed in [0, 1, 99] {
            let design = sample_sobol(&SamplerSpec::sobol(n, 10, seed, true)).unwrap();
            for col in 0..10 {
                let mut cells: Vec<usize> = design
                    .column(col)
                    .map(|x| (x * n as f64) as usize)
                    .collect();
                cells.sort_unstable();
                assert_eq!(cells, (0..n).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn dimension_limit_is_enforced() {
        let design = sample_sobol(&SamplerSpec::sobol(4, 201, 0, false)).unwrap();
        assert_eq!(design.n_dims(), 201);
        assert!(design.values().iter().all(|&x| (0.0..1.0).contains(&x)));
        let err = sample_sobol(&SamplerSpec::sobol(4, 202, 0, false)).unwrap_err();
        assert_eq!(
            err,
            Error::SobolDimensions {
                requested: 202,
                max: 201
            }
        );
    }
}
