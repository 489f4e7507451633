//! The Newcomb-Benford law, first-digit extraction, and both NBD variants.
//!
//! Pipeline for the flattened variant: transform every design entry `x` to
//! `10^x ∈ [1, 10)`, take the first significant digit, histogram the digits,
//! and report the RMSE between the empirical digit frequencies and the
//! logarithmic law. The joint variant applies the same idea to the 81 first
//! digit pairs of every ordered 2-dimensional subprojection.
//!
//! All operations are pure; everything here is safe to call from multiple
//! threads concurrently.

use std::sync::OnceLock;

use crate::design::Design;
use crate::{Error, Result};

/// Probability the Newcomb-Benford law assigns to a first digit.
///
/// `Pr(g) = log10(1 + 1/g)` for `g` in `1..=9`; the nine probabilities
/// telescope to exactly 1.
pub fn nb_probability(digit: u8) -> Result<f64> {
    if !(1..=9).contains(&digit) {
        return Err(Error::DigitOutOfRange(digit));
    }
    Ok((1.0 + 1.0 / f64::from(digit)).log10())
}

/// `log10(g)` for `g = 1..=9`; `first_digit` is a threshold search in here.
fn thresholds() -> &'static [f64; 9] {
    static T: OnceLock<[f64; 9]> = OnceLock::new();
    T.get_or_init(|| std::array::from_fn(|i| ((i + 1) as f64).log10()))
}

/// First significant digit of `10^x` for `x` in `[0, 1)`.
///
/// Equivalent to `clamp(floor(10^x), 1, 9)`, but implemented as a comparison
/// against the `log10(g)` thresholds so the hot path never evaluates a
/// transcendental per entry.
pub fn first_digit(x: f64) -> Result<u8> {
    if !(0.0..1.0).contains(&x) {
        return Err(Error::ValueOutOfRange(x));
    }
    Ok(digit_index(x, thresholds()) as u8 + 1)
}

/// Zero-based digit bin of a coordinate already known to lie in `[0, 1)`.
#[inline]
fn digit_index(x: f64, t: &[f64; 9]) -> usize {
    let mut idx = 0usize;
    for &threshold in &t[1..] {
        idx += usize::from(x >= threshold);
    }
    idx
}

/// Zero-based digit bin; assumes the design invariant `0 <= x < 1`.
pub(crate) fn digit_bin(x: f64) -> usize {
    digit_index(x, thresholds())
}

/// Counts of first significant digits 1..=9.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitHistogram {
    counts: [u64; 9],
    total: u64,
}

impl DigitHistogram {
    /// Per-digit counts, index 0 holding digit 1.
    pub fn counts(&self) -> &[u64; 9] {
        &self.counts
    }

    /// Number of values counted; always the sum of `counts`.
    pub fn total(&self) -> u64 {
        self.total
    }

    /// Empirical probabilities `counts / total`.
    pub fn probabilities(&self) -> [f64; 9] {
        std::array::from_fn(|i| self.counts[i] as f64 / self.total as f64)
    }
}

/// Digit histogram of every entry of the design, flattened across dimensions.
///
/// `counts[g-1]` is the number of entries whose first digit (after the `10^x`
/// transform) equals `g`; `total` is `N_s × d`.
pub fn digit_histogram_flat(design: &Design) -> DigitHistogram {
    let t = thresholds();
    let mut counts = [0u64; 9];
    for &x in design.values() {
        counts[digit_index(x, t)] += 1;
    }
    DigitHistogram {
        counts,
        total: design.values().len() as u64,
    }
}

/// Digit histogram of a single column of the design.
pub fn digit_histogram_column(design: &Design, col: usize) -> Result<DigitHistogram> {
    if col >= design.n_dims() {
        return Err(Error::ColumnOutOfRange {
            dim: col,
            n_dims: design.n_dims(),
        });
    }
    let t = thresholds();
    let mut counts = [0u64; 9];
    for x in design.column(col) {
        counts[digit_index(x, t)] += 1;
    }
    Ok(DigitHistogram {
        counts,
        total: design.n_points() as u64,
    })
}

/// 9×9 counts of first-digit pairs for one ordered 2-dimensional
/// subprojection `(dim_j, dim_k)` of a design.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairDigitHistogram {
    counts: [[u64; 9]; 9],
    total: u64,
}

impl PairDigitHistogram {
    /// Counts indexed by `[digit_j - 1][digit_k - 1]`.
    pub fn counts(&self) -> &[[u64; 9]; 9] {
        &self.counts
    }

    /// Number of sample points counted; always the sum over all 81 cells.
    pub fn total(&self) -> u64 {
        self.total
    }

    /// Empirical probabilities of the 81 cells, row-major:
    /// index `(a-1) * 9 + (b-1)` holds the frequency of the pair `(a, b)`.
    pub fn probabilities(&self) -> Vec<f64> {
        let total = self.total as f64;
        self.counts
            .iter()
            .flatten()
            .map(|&c| c as f64 / total)
            .collect()
    }
}

/// Pair-digit histogram of the ordered subprojection `(dim_j, dim_k)`.
pub fn pair_digit_histogram(design: &Design, dim_j: usize, dim_k: usize) -> Result<PairDigitHistogram> {
    let n_dims = design.n_dims();
    for dim in [dim_j, dim_k] {
        if dim >= n_dims {
            return Err(Error::ColumnOutOfRange { dim, n_dims });
        }
    }
    let t = thresholds();
    let mut counts = [[0u64; 9]; 9];
    for row in design.rows() {
        counts[digit_index(row[dim_j], t)][digit_index(row[dim_k], t)] += 1;
    }
    Ok(PairDigitHistogram {
        counts,
        total: design.n_points() as u64,
    })
}

/// Which reference distribution a comparison targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReferenceMode {
    /// The 9-bin marginal law `log10(1 + 1/g)`.
    Marginal,
    /// 81-bin independent-digit product law.
    PairProduct,
    /// 81-bin concatenated two-digit law, renormalized.
    PairConcatenated,
}

/// Pairwise reference family used by the joint NBD.
///
/// `Concatenated` is the default: unlike the product law it leaves a strictly
/// positive error floor (the RMSE between the two pairwise laws, ≈ 0.00886)
/// that the joint NBD of any uncorrelated design saturates towards as `N_s`
/// grows, which is the behavior the joint metric is meant to expose.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum JointMode {
    /// Independent first digits: `Pr(a, b) = Pr(a) · Pr(b)`.
    Product,
    /// First digits of the two-digit concatenation:
    /// `Pr(a, b) ∝ log10(1 + 1/(10a + b))`, renormalized over the 81 cells.
    #[default]
    Concatenated,
}

/// Reference probability vector: 9 bins (marginal) or 81 bins (pairwise).
#[derive(Debug, Clone, PartialEq)]
pub struct NbReference {
    probs: Vec<f64>,
    mode: ReferenceMode,
}

impl NbReference {
    /// The marginal Newcomb-Benford law over digits 1..=9.
    pub fn marginal() -> Self {
        let probs = (1..=9)
            .map(|g| nb_probability(g).expect("digits 1..=9 are in range"))
            .collect();
        Self {
            probs,
            mode: ReferenceMode::Marginal,
        }
    }

    /// Pairwise law of independent first digits, `Pr(a, b) = Pr(a) · Pr(b)`.
    ///
    /// Sums to 1 since each factor does. Row-major over `(a, b)`.
    pub fn pair_product() -> Self {
        let marginal: Vec<f64> = NbReference::marginal().probs;
        let mut probs = Vec::with_capacity(81);
        for &pa in &marginal {
            for &pb in &marginal {
                probs.push(pa * pb);
            }
        }
        Self {
            probs,
            mode: ReferenceMode::PairProduct,
        }
    }

    /// Pairwise law of concatenated digit pairs: the two-leading-digit law
    /// `log10(1 + 1/(10a + b))` restricted to second digits 1..=9 (second
    /// digit 0 cannot arise from a digit pair) and renormalized.
    pub fn pair_concatenated() -> Self {
        let mut probs: Vec<f64> = Vec::with_capacity(81);
        for a in 1..=9u32 {
            for b in 1..=9u32 {
                probs.push((1.0 + 1.0 / f64::from(10 * a + b)).log10());
            }
        }
        let z: f64 = probs.iter().sum();
        for p in &mut probs {
            *p /= z;
        }
        Self {
            probs,
            mode: ReferenceMode::PairConcatenated,
        }
    }

    /// The pairwise reference of the requested joint mode.
    pub fn pairwise(mode: JointMode) -> Self {
        match mode {
            JointMode::Product => Self::pair_product(),
            JointMode::Concatenated => Self::pair_concatenated(),
        }
    }

    /// Reference probabilities (length 9 or 81).
    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Which law this reference encodes.
    pub fn mode(&self) -> ReferenceMode {
        self.mode
    }
}

/// Root-mean-square error between empirical bin probabilities and a
/// reference: `sqrt((1/B) Σ (ref_i − emp_i)²)`.
///
/// Both vectors must have the same number of bins; the empirical vector is
/// expected to sum to 1 (it comes from a histogram).
pub fn rmse_vs_reference(empirical: &[f64], reference: &NbReference) -> Result<f64> {
    let probs = reference.probs();
    if empirical.len() != probs.len() {
        return Err(Error::BinCountMismatch {
            expected: probs.len(),
            got: empirical.len(),
        });
    }
    debug_assert!(
        (empirical.iter().sum::<f64>() - 1.0).abs() < 1e-9,
        "empirical probabilities must sum to 1"
    );
    Ok(rmse(empirical, probs))
}

fn rmse(empirical: &[f64], reference: &[f64]) -> f64 {
    let sum_sq: f64 = empirical
        .iter()
        .zip(reference)
        .map(|(e, r)| (r - e) * (r - e))
        .sum();
    (sum_sq / reference.len() as f64).sqrt()
}

/// Which NBD variant produced a result.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NbdVariant {
    Flattened,
    Joint,
}

/// Outcome of an NBD evaluation.
///
/// For the flattened variant, `per_digit_error[i]` is the signed deviation
/// (empirical minus reference) of digit `i + 1`, and
/// `value² × 9 == Σ per_digit_error²` holds to machine precision.
///
/// For the joint variant, `value` is the mean over all ordered dimension
/// pairs of each pair's 81-bin RMSE, and `per_digit_error` carries the
/// across-pairs mean signed deviation per cell (row-major over digit pairs);
/// the quadratic identity does not transfer to a mean of RMSEs.
#[derive(Debug, Clone, PartialEq)]
pub struct NbdResult {
    pub value: f64,
    pub variant: NbdVariant,
    pub per_digit_error: Vec<f64>,
}

/// Flattened Newcomb-Benford discrepancy of a design.
///
/// RMSE of the pooled `N_s × d` digit frequencies against the marginal law;
/// `O(N_s × d)` time, one pass over the entries.
pub fn nbd_flat(design: &Design) -> NbdResult {
    let emp = digit_histogram_flat(design).probabilities();
    let reference = NbReference::marginal();
    let per_digit_error: Vec<f64> = emp
        .iter()
        .zip(reference.probs())
        .map(|(e, r)| e - r)
        .collect();
    let value = rmse(&emp, reference.probs());
    NbdResult {
        value,
        variant: NbdVariant::Flattened,
        per_digit_error,
    }
}

/// Joint Newcomb-Benford discrepancy of a design.
///
/// For every ordered pair of distinct dimensions `(j, k)` the 81-bin
/// first-digit-pair frequencies of the subprojection are scored (RMSE)
/// against the pairwise reference of `mode`; the result is the mean over all
/// `d² − d` pairs. `O(N_s × (d² − d))` time.
pub fn nbd_joint(design: &Design, mode: JointMode) -> Result<NbdResult> {
    let d = design.n_dims();
    if d < 2 {
        return Err(Error::JointNeedsPairs(d));
    }
    let reference = NbReference::pairwise(mode);
    let n = design.n_points();
    let nf = n as f64;

    // One pass to digitize, so the pair loops are pure integer work.
    let digits: Vec<u8> = design.values().iter().map(|&x| digit_bin(x) as u8).collect();

    let mut rmse_sum = 0.0;
    let mut mean_dev = vec![0.0f64; 81];
    let mut emp = vec![0.0f64; 81];
    for j in 0..d {
        for k in 0..d {
            if j == k {
                continue;
            }
            let mut counts = [0u32; 81];
            for row in 0..n {
                let a = digits[row * d + j] as usize;
                let b = digits[row * d + k] as usize;
                counts[a * 9 + b] += 1;
            }
            for (e, &c) in emp.iter_mut().zip(&counts) {
                *e = f64::from(c) / nf;
            }
            rmse_sum += rmse(&emp, reference.probs());
            for ((dev, &e), &r) in mean_dev.iter_mut().zip(&emp).zip(reference.probs()) {
                *dev += e - r;
            }
        }
    }
    let pairs = (d * d - d) as f64;
    for dev in &mut mean_dev {
        *dev /= pairs;
    }
    Ok(NbdResult {
        value: rmse_sum / pairs,
        variant: NbdVariant::Joint,
        per_digit_error: mean_dev,
    })
}
