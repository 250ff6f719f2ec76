//! Distillation analysis: logical Z-error class distributions, output-error
//! maps, depolarizing thresholds, basins of attraction, and overhead
//! estimates.
//!
//! Two independent evaluators compute the same class distribution:
//!
//! * [`class_probs_bruteforce`] enumerates every zero-syndrome error pattern
//!   directly and is the oracle;
//! * [`class_probs_charsum`] evaluates the dual character sum over the
//!   X-stabilizer group, compressed into complete weight enumerators of the
//!   logical-shifted stabilizer cosets so that repeated map evaluations are
//!   cheap.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::code::TriorthogonalCode;
use crate::error::{Error, Result};
use crate::gf3::{dot_slices, for_each_in_span, Trit, TritVector};
use crate::wigner;

/// Iteration cap for fixed-point searches.
pub const ITERATION_CAP: usize = 200;
/// Both error components below this value counts as convergence to (0, 0).
pub const CONVERGENCE_TOL: f64 = 1e-10;
/// Distance within which an iterate is matched to a fixed point.
pub const CLASSIFY_TOL: f64 = 1e-6;
/// Bisection tolerance on the depolarizing threshold.
pub const BISECTION_TOL: f64 = 1e-4;
/// Default brute-force budget: at most 3^16 error patterns.
pub const DEFAULT_BRUTEFORCE_EXP: u32 = 16;
/// Cap on 3^(rank Lx + k) when building the character-sum tables.
const CHARSUM_EXP_CAP: u32 = 16;
/// Joint distributions are refused beyond this many logical qutrits.
const JOINT_K_CAP: usize = 12;

/// Twirled-state error coordinates (eps1, eps2) on the magic-state simplex.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NoisePoint {
    pub eps1: f64,
    pub eps2: f64,
}

impl NoisePoint {
    pub fn new(eps1: f64, eps2: f64) -> NoisePoint {
        NoisePoint { eps1, eps2 }
    }

    /// The depolarizing line: eps1 = eps2 = delta / 3.
    pub fn depolarizing(delta: f64) -> NoisePoint {
        NoisePoint::new(delta / 3.0, delta / 3.0)
    }

    pub fn validate(&self) -> Result<()> {
        if self.eps1 < 0.0 || self.eps2 < 0.0 || self.eps1 + self.eps2 > 1.0 + 1e-12 {
            return Err(Error::OutsideSimplex {
                eps1: self.eps1,
                eps2: self.eps2,
            });
        }
        Ok(())
    }

    /// Total deviation from the target magic state.
    pub fn infidelity(&self) -> f64 {
        self.eps1 + self.eps2
    }

    /// Image under the simplex rotation induced by conjugating every input by
    /// Z, which cycles the three pure magic states forward.
    pub fn rotated(&self) -> NoisePoint {
        NoisePoint::new(1.0 - self.eps1 - self.eps2, self.eps1)
    }

    pub fn distance(&self, other: &NoisePoint) -> f64 {
        ((self.eps1 - other.eps1).powi(2) + (self.eps2 - other.eps2).powi(2)).sqrt()
    }
}

/// Single-qutrit diagonal noise: probabilities of Z^0, Z^1, Z^2.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiagonalChannel {
    pub p0: f64,
    pub p1: f64,
    pub p2: f64,
}

impl DiagonalChannel {
    pub fn new(p0: f64, p1: f64, p2: f64) -> Result<DiagonalChannel> {
        if p0 < -1e-12 || p1 < -1e-12 || p2 < -1e-12 || (p0 + p1 + p2 - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidState(format!(
                "({p0}, {p1}, {p2}) is not a probability vector"
            )));
        }
        Ok(DiagonalChannel { p0, p1, p2 })
    }

    pub fn from_noise_point(point: NoisePoint) -> Result<DiagonalChannel> {
        point.validate()?;
        DiagonalChannel::new(1.0 - point.eps1 - point.eps2, point.eps1, point.eps2)
    }

    pub fn depolarizing(delta: f64) -> Result<DiagonalChannel> {
        DiagonalChannel::from_noise_point(NoisePoint::depolarizing(delta))
    }
}

/// Probabilities of each logical Z-error class j in F_3^k, conditioned on
/// nothing: the entries sum to the acceptance probability, not to 1.
#[derive(Clone, Debug)]
pub struct ClassDistribution {
    k: usize,
    probs: Vec<f64>,
}

impl ClassDistribution {
    pub(crate) fn new(k: usize, probs: Vec<f64>) -> ClassDistribution {
        debug_assert_eq!(probs.len(), 3usize.pow(k as u32));
        ClassDistribution { k, probs }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Probability of the class with the given digits (one trit per logical).
    pub fn prob(&self, label: &[u8]) -> f64 {
        assert_eq!(label.len(), self.k);
        let idx: usize = label
            .iter()
            .enumerate()
            .map(|(a, &d)| (d as usize) * 3usize.pow(a as u32))
            .sum();
        self.probs[idx]
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Probability of the trivial syndrome outcome.
    pub fn acceptance(&self) -> f64 {
        self.probs.iter().sum()
    }

    pub fn max_abs_diff(&self, other: &ClassDistribution) -> f64 {
        assert_eq!(self.k, other.k);
        self.probs
            .iter()
            .zip(&other.probs)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

fn class_index(e: &[Trit], logicals: &[TritVector]) -> usize {
    logicals
        .iter()
        .enumerate()
        .map(|(a, x)| (dot_slices(e, x.as_slice()).value() as usize) * 3usize.pow(a as u32))
        .sum()
}

/// Oracle evaluator: enumerate every error pattern with trivial syndrome
/// against the X stabilizers (the kernel of Lx), bucket by logical class,
/// and sum the pattern probabilities.
pub fn class_probs_bruteforce(
    code: &TriorthogonalCode,
    channel: &DiagonalChannel,
) -> Result<ClassDistribution> {
    class_probs_bruteforce_with_budget(code, channel, DEFAULT_BRUTEFORCE_EXP)
}

pub fn class_probs_bruteforce_with_budget(
    code: &TriorthogonalCode,
    channel: &DiagonalChannel,
    budget_exp: u32,
) -> Result<ClassDistribution> {
    let kernel = code.lx().kernel();
    let dim = kernel.rows() as u32;
    if dim > budget_exp {
        return Err(Error::BudgetExceeded {
            needed: 3u128.pow(dim),
            budget: 3u128.pow(budget_exp),
        });
    }
    let n = code.n();
    let logicals = code.logical_x().row_vecs();
    let mut probs = vec![0.0f64; 3usize.pow(code.k() as u32)];
    // power tables keep the inner loop to counting
    let pow0: Vec<f64> = (0..=n).map(|i| channel.p0.powi(i as i32)).collect();
    let pow1: Vec<f64> = (0..=n).map(|i| channel.p1.powi(i as i32)).collect();
    let pow2: Vec<f64> = (0..=n).map(|i| channel.p2.powi(i as i32)).collect();
    for_each_in_span(&kernel, |e| {
        let mut ones = 0usize;
        let mut twos = 0usize;
        for t in e {
            match t.value() {
                1 => ones += 1,
                2 => twos += 1,
                _ => {}
            }
        }
        let idx = class_index(e, &logicals);
        probs[idx] += pow0[n - ones - twos] * pow1[ones] * pow2[twos];
    });
    Ok(ClassDistribution::new(code.k(), probs))
}

/// Exact class-resolved complete weight enumerator of the zero-syndrome set:
/// integer counts of patterns per (class, #ones, #twos). A cross-check
/// artifact; evaluating it at a channel reproduces the class distribution.
#[derive(Clone, Debug)]
pub struct ClassWeightEnumerator {
    n: usize,
    k: usize,
    /// counts[class][ones * (n + 1) + twos]
    counts: Vec<Vec<u128>>,
}

impl ClassWeightEnumerator {
    pub fn counts(&self, label: &[u8]) -> &[u128] {
        assert_eq!(label.len(), self.k);
        let idx: usize = label
            .iter()
            .enumerate()
            .map(|(a, &d)| (d as usize) * 3usize.pow(a as u32))
            .sum();
        &self.counts[idx]
    }

    pub fn evaluate(&self, channel: &DiagonalChannel) -> ClassDistribution {
        let n = self.n;
        let pow0: Vec<f64> = (0..=n).map(|i| channel.p0.powi(i as i32)).collect();
        let pow1: Vec<f64> = (0..=n).map(|i| channel.p1.powi(i as i32)).collect();
        let pow2: Vec<f64> = (0..=n).map(|i| channel.p2.powi(i as i32)).collect();
        let probs = self
            .counts
            .iter()
            .map(|table| {
                let mut total = 0.0;
                for ones in 0..=n {
                    for twos in 0..=(n - ones) {
                        let c = table[ones * (n + 1) + twos];
                        if c != 0 {
                            total += c as f64 * pow0[n - ones - twos] * pow1[ones] * pow2[twos];
                        }
                    }
                }
                total
            })
            .collect();
        ClassDistribution::new(self.k, probs)
    }
}

pub fn class_weight_enumerator(code: &TriorthogonalCode) -> Result<ClassWeightEnumerator> {
    let kernel = code.lx().kernel();
    let dim = kernel.rows() as u32;
    if dim > DEFAULT_BRUTEFORCE_EXP {
        return Err(Error::BudgetExceeded {
            needed: 3u128.pow(dim),
            budget: 3u128.pow(DEFAULT_BRUTEFORCE_EXP),
        });
    }
    let n = code.n();
    let logicals = code.logical_x().row_vecs();
    let mut counts = vec![vec![0u128; (n + 1) * (n + 1)]; 3usize.pow(code.k() as u32)];
    for_each_in_span(&kernel, |e| {
        let ones = e.iter().filter(|t| t.value() == 1).count();
        let twos = e.iter().filter(|t| t.value() == 2).count();
        counts[class_index(e, &logicals)][ones * (n + 1) + twos] += 1;
    });
    Ok(ClassWeightEnumerator {
        n,
        k: code.k(),
        counts,
    })
}

/// One (#ones, #twos) -> count entry of a coset weight enumerator.
#[derive(Clone, Copy, Debug)]
struct CweEntry {
    ones: u16,
    twos: u16,
    count: f64,
}

/// Production evaluator. For every logical shift t in F_3^k the complete
/// weight enumerator of the coset span(Lx) + sum_a t_a x_a is tabulated once;
/// a class distribution is then a short character sum over those tables.
#[derive(Clone, Debug)]
pub struct CharsumEvaluator {
    n: usize,
    k: usize,
    rank_lx: usize,
    /// indexed by the base-3 label of t
    cosets: Vec<Vec<CweEntry>>,
}

impl CharsumEvaluator {
    pub fn new(code: &TriorthogonalCode) -> Result<CharsumEvaluator> {
        let n = code.n();
        let k = code.k();
        let r = code.rank_lx();
        if k > JOINT_K_CAP {
            return Err(Error::TooLarge(format!(
                "joint distribution over {k} logicals; use marginal_error_rates"
            )));
        }
        if (r + k) as u32 > CHARSUM_EXP_CAP {
            return Err(Error::BudgetExceeded {
                needed: 3u128.pow((r + k) as u32),
                budget: 3u128.pow(CHARSUM_EXP_CAP),
            });
        }
        let logicals = code.logical_x().row_vecs();
        let num_t = 3usize.pow(k as u32);
        let mut cosets = Vec::with_capacity(num_t);
        for t_idx in 0..num_t {
            let mut shift = TritVector::zeros(n);
            let mut rem = t_idx;
            for x in &logicals {
                let digit = (rem % 3) as u8;
                rem /= 3;
                if digit != 0 {
                    shift = shift.add(&x.scaled(Trit::new(digit)))?;
                }
            }
            cosets.push(coset_weight_enumerator(code, shift.as_slice(), n));
        }
        Ok(CharsumEvaluator {
            n,
            k,
            rank_lx: r,
            cosets,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// S_t = sum over the coset of chi1^ones * chi2^twos.
    fn coset_sums(&self, channel: &DiagonalChannel) -> Vec<Complex64> {
        let w = wigner::omega3();
        let chi1 = channel.p0 + channel.p1 * w + channel.p2 * w * w;
        let chi2 = channel.p0 + channel.p1 * w * w + channel.p2 * w;
        let pow1: Vec<Complex64> = powers(chi1, self.n);
        let pow2: Vec<Complex64> = powers(chi2, self.n);
        self.cosets
            .iter()
            .map(|entries| {
                entries
                    .iter()
                    .map(|e| e.count * pow1[e.ones as usize] * pow2[e.twos as usize])
                    .sum()
            })
            .collect()
    }

    /// P_j = 3^-(r + k) sum_t w^(-t.j) S_t, clamped to real nonnegative.
    pub fn class_probs(&self, channel: &DiagonalChannel) -> ClassDistribution {
        let sums = self.coset_sums(channel);
        let num = sums.len();
        let w = wigner::omega3();
        let norm = 1.0 / 3f64.powi((self.rank_lx + self.k) as i32);
        let mut probs = Vec::with_capacity(num);
        for j_idx in 0..num {
            let mut acc = Complex64::new(0.0, 0.0);
            for (t_idx, s) in sums.iter().enumerate() {
                let tj = trit_label_dot(t_idx, j_idx, self.k);
                // w^(-tj)
                acc += s * w.powu(((3 - tj) % 3) as u32);
            }
            let p = acc * norm;
            debug_assert!(p.im.abs() < 1e-11, "imaginary residue {}", p.im);
            probs.push(p.re.max(0.0));
        }
        ClassDistribution::new(self.k, probs)
    }

    /// Trivial-syndrome probability: the t = 0 coset sum alone.
    pub fn acceptance(&self, channel: &DiagonalChannel) -> f64 {
        let w = wigner::omega3();
        let chi1 = channel.p0 + channel.p1 * w + channel.p2 * w * w;
        let chi2 = channel.p0 + channel.p1 * w * w + channel.p2 * w;
        let pow1 = powers(chi1, self.n);
        let pow2 = powers(chi2, self.n);
        let s0: Complex64 = self.cosets[0]
            .iter()
            .map(|e| e.count * pow1[e.ones as usize] * pow2[e.twos as usize])
            .sum();
        (s0.re / 3f64.powi(self.rank_lx as i32)).max(0.0)
    }
}

fn powers(base: Complex64, n: usize) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = Complex64::new(1.0, 0.0);
    for _ in 0..=n {
        out.push(acc);
        acc *= base;
    }
    out
}

/// Dot product of two base-3 digit strings of length k, mod 3.
fn trit_label_dot(mut a: usize, mut b: usize, k: usize) -> usize {
    let mut acc = 0;
    for _ in 0..k {
        acc += (a % 3) * (b % 3);
        a /= 3;
        b /= 3;
    }
    acc % 3
}

fn coset_weight_enumerator(code: &TriorthogonalCode, shift: &[Trit], n: usize) -> Vec<CweEntry> {
    let mut dense = vec![0.0f64; (n + 1) * (n + 1)];
    for_each_in_span(code.lx(), |g| {
        let mut ones = 0usize;
        let mut twos = 0usize;
        for (a, b) in g.iter().zip(shift) {
            match (*a + *b).value() {
                1 => ones += 1,
                2 => twos += 1,
                _ => {}
            }
        }
        dense[ones * (n + 1) + twos] += 1.0;
    });
    let mut entries = Vec::new();
    for ones in 0..=n {
        for twos in 0..=n {
            let count = dense[ones * (n + 1) + twos];
            if count != 0.0 {
                entries.push(CweEntry {
                    ones: ones as u16,
                    twos: twos as u16,
                    count,
                });
            }
        }
    }
    entries
}

/// Production-path class distribution (see [`CharsumEvaluator`]). Build the
/// evaluator directly when the same code is used repeatedly.
pub fn class_probs_charsum(
    code: &TriorthogonalCode,
    channel: &DiagonalChannel,
) -> Result<ClassDistribution> {
    Ok(CharsumEvaluator::new(code)?.class_probs(channel))
}

/// Mapping from logical Z-error classes to output-error coordinates.
///
/// The trit class labels themselves are unambiguous (class j means logical
/// Z^j); which of the two nontrivial classes feeds eps1' is a convention.
/// `Conjugate` is the calibrated default: under it each pure twirled input is
/// a fixed point of the output map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Orientation {
    /// eps1' tracks class 1, eps2' tracks class 2.
    Direct,
    /// eps1' tracks class 2, eps2' tracks class 1.
    #[default]
    Conjugate,
}

impl Orientation {
    pub fn flipped(self) -> Orientation {
        match self {
            Orientation::Direct => Orientation::Conjugate,
            Orientation::Conjugate => Orientation::Direct,
        }
    }
}

impl std::fmt::Display for Orientation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Orientation::Direct => write!(f, "direct"),
            Orientation::Conjugate => write!(f, "conjugate"),
        }
    }
}

impl std::str::FromStr for Orientation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Orientation> {
        match s {
            "direct" => Ok(Orientation::Direct),
            "conjugate" => Ok(Orientation::Conjugate),
            other => Err(Error::Parse(format!("unknown orientation: {other}"))),
        }
    }
}

/// The single-round output-error map of a k = 1 code, with its evaluator
/// built once so iteration is cheap.
#[derive(Clone, Debug)]
pub struct DistillationMap {
    evaluator: CharsumEvaluator,
    orientation: Orientation,
}

impl DistillationMap {
    pub fn new(code: &TriorthogonalCode, orientation: Orientation) -> Result<DistillationMap> {
        if code.k() != 1 {
            return Err(Error::SingleLogicalOnly(code.k()));
        }
        Ok(DistillationMap {
            evaluator: CharsumEvaluator::new(code)?,
            orientation,
        })
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    /// One round: (eps1', eps2') together with the acceptance probability.
    pub fn apply_with_acceptance(&self, point: NoisePoint) -> Result<(NoisePoint, f64)> {
        let channel = DiagonalChannel::from_noise_point(point)?;
        let dist = self.evaluator.class_probs(&channel);
        let total = dist.acceptance();
        let (p1, p2) = (dist.prob(&[1]), dist.prob(&[2]));
        let out = match self.orientation {
            Orientation::Direct => NoisePoint::new(p1 / total, p2 / total),
            Orientation::Conjugate => NoisePoint::new(p2 / total, p1 / total),
        };
        Ok((out, total))
    }

    pub fn apply(&self, point: NoisePoint) -> Result<NoisePoint> {
        Ok(self.apply_with_acceptance(point)?.0)
    }
}

/// Convenience wrapper building the evaluator per call; use
/// [`DistillationMap`] for iteration.
pub fn output_error_map(
    code: &TriorthogonalCode,
    point: NoisePoint,
    orientation: Orientation,
) -> Result<NoisePoint> {
    DistillationMap::new(code, orientation)?.apply(point)
}

/// Where iterated distillation can end up.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BasinLabel {
    M0,
    M1,
    M2,
    Mixed,
    Unresolved,
}

impl BasinLabel {
    const FIXED_POINTS: [(BasinLabel, NoisePoint); 4] = [
        (BasinLabel::M0, NoisePoint { eps1: 0.0, eps2: 0.0 }),
        (BasinLabel::M1, NoisePoint { eps1: 1.0, eps2: 0.0 }),
        (BasinLabel::M2, NoisePoint { eps1: 0.0, eps2: 1.0 }),
        (
            BasinLabel::Mixed,
            NoisePoint {
                eps1: 1.0 / 3.0,
                eps2: 1.0 / 3.0,
            },
        ),
    ];

    /// Label after conjugating every state by Z (M0 -> M1 -> M2 -> M0).
    pub fn rotated(self) -> BasinLabel {
        match self {
            BasinLabel::M0 => BasinLabel::M1,
            BasinLabel::M1 => BasinLabel::M2,
            BasinLabel::M2 => BasinLabel::M0,
            other => other,
        }
    }
}

impl std::fmt::Display for BasinLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            BasinLabel::M0 => "M0",
            BasinLabel::M1 => "M1",
            BasinLabel::M2 => "M2",
            BasinLabel::Mixed => "MIXED",
            BasinLabel::Unresolved => "UNRESOLVED",
        };
        write!(f, "{s}")
    }
}

fn classify_with_map(map: &DistillationMap, start: NoisePoint) -> Result<BasinLabel> {
    start.validate()?;
    let mut point = start;
    for _ in 0..ITERATION_CAP {
        // stop early once pinned to a fixed point well inside tolerance
        if BasinLabel::FIXED_POINTS
            .iter()
            .any(|(_, fp)| point.distance(fp) < 1e-12)
        {
            break;
        }
        point = map.apply(point)?;
    }
    for (label, fp) in BasinLabel::FIXED_POINTS {
        if point.distance(&fp) < CLASSIFY_TOL {
            return Ok(label);
        }
    }
    Ok(BasinLabel::Unresolved)
}

/// Iterate the output map from `start` and classify the fixed point reached.
pub fn basin_classify(
    code: &TriorthogonalCode,
    start: NoisePoint,
    orientation: Orientation,
) -> Result<BasinLabel> {
    classify_with_map(&DistillationMap::new(code, orientation)?, start)
}

fn converges_to_magic(map: &DistillationMap, delta: f64) -> Result<bool> {
    let mut point = NoisePoint::depolarizing(delta);
    for _ in 0..ITERATION_CAP {
        if point.eps1 < CONVERGENCE_TOL && point.eps2 < CONVERGENCE_TOL {
            return Ok(true);
        }
        point = map.apply(point)?;
    }
    Ok(point.eps1 < CONVERGENCE_TOL && point.eps2 < CONVERGENCE_TOL)
}

/// Result of a depolarizing-threshold bisection.
#[derive(Clone, Debug, Serialize)]
pub struct ThresholdRun {
    pub code: String,
    pub delta_star: f64,
    pub iterations: usize,
    pub tolerance: f64,
    pub orientation: String,
}

/// Largest depolarizing rate from which iterated distillation converges to
/// the pure magic state, located by bisection to [`BISECTION_TOL`].
pub fn depolarizing_threshold(
    code: &TriorthogonalCode,
    orientation: Orientation,
) -> Result<ThresholdRun> {
    let map = DistillationMap::new(code, orientation)?;
    let mut lo = 0.0f64;
    let mut hi = 1.0f64;
    debug_assert!(converges_to_magic(&map, lo)?);
    let mut iterations = 0;
    while hi - lo > BISECTION_TOL {
        let mid = 0.5 * (lo + hi);
        if converges_to_magic(&map, mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }
    Ok(ThresholdRun {
        code: format!("[{},{}]_3", code.n(), code.k()),
        delta_star: 0.5 * (lo + hi),
        iterations,
        tolerance: BISECTION_TOL,
        orientation: orientation.to_string(),
    })
}

/// One classified simplex lattice point.
#[derive(Clone, Debug, Serialize)]
pub struct BasinCell {
    pub eps1: f64,
    pub eps2: f64,
    pub label: BasinLabel,
    pub in_polytope: bool,
}

/// Basin classification of the whole simplex lattice (i/r, j/r), i + j <= r,
/// with Wigner-polytope membership flags.
#[derive(Clone, Debug)]
pub struct BasinGrid {
    pub resolution: usize,
    pub cells: Vec<BasinCell>,
}

impl BasinGrid {
    pub fn cell(&self, i: usize, j: usize) -> &BasinCell {
        // cells are stored in row-major order: i = 0..=r, j = 0..=r-i
        let r = self.resolution;
        let offset: usize = (0..i).map(|ii| r + 1 - ii).sum();
        &self.cells[offset + j]
    }

    /// CSV with an `eps1,eps2,label,in_polytope` header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("eps1,eps2,label,in_polytope\n");
        for c in &self.cells {
            out.push_str(&format!(
                "{},{},{},{}\n",
                c.eps1, c.eps2, c.label, c.in_polytope
            ));
        }
        out
    }
}

pub fn basin_grid(
    code: &TriorthogonalCode,
    resolution: usize,
    orientation: Orientation,
) -> Result<BasinGrid> {
    if resolution < 2 {
        return Err(Error::InvalidDimension(
            "basin grid resolution must be at least 2".into(),
        ));
    }
    let map = DistillationMap::new(code, orientation)?;
    let r = resolution;
    let points: Vec<(usize, usize)> = (0..=r)
        .flat_map(|i| (0..=r - i).map(move |j| (i, j)))
        .collect();
    let cells: Result<Vec<BasinCell>> = points
        .par_iter()
        .map(|&(i, j)| {
            let point = NoisePoint::new(i as f64 / r as f64, j as f64 / r as f64);
            let label = classify_with_map(&map, point)?;
            let state = wigner::twirled_state(point)?;
            Ok(BasinCell {
                eps1: point.eps1,
                eps2: point.eps2,
                label,
                in_polytope: wigner::in_polytope(&state),
            })
        })
        .collect();
    Ok(BasinGrid {
        resolution,
        cells: cells?,
    })
}

/// Per-logical marginal output-error coordinates, normalized by acceptance.
pub fn marginal_error_rates(
    code: &TriorthogonalCode,
    channel: &DiagonalChannel,
    orientation: Orientation,
) -> Result<Vec<NoisePoint>> {
    let n = code.n();
    let mut out = Vec::with_capacity(code.k());
    let w = wigner::omega3();
    let chi1 = channel.p0 + channel.p1 * w + channel.p2 * w * w;
    let chi2 = channel.p0 + channel.p1 * w * w + channel.p2 * w;
    let pow1 = powers(chi1, n);
    let pow2 = powers(chi2, n);
    let norm = 1.0 / 3f64.powi(code.rank_lx() as i32 + 1);
    for a in 0..code.k() {
        let x = code.logical_x().row_vec(a);
        let mut sums = [Complex64::new(0.0, 0.0); 3];
        for (t, sum) in sums.iter_mut().enumerate() {
            let shift = x.scaled(Trit::new(t as u8));
            let entries = coset_weight_enumerator(code, shift.as_slice(), n);
            *sum = entries
                .iter()
                .map(|e| e.count * pow1[e.ones as usize] * pow2[e.twos as usize])
                .sum();
        }
        let mut probs = [0.0f64; 3];
        for (j, p) in probs.iter_mut().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for (t, s) in sums.iter().enumerate() {
                acc += s * w.powu(((3 - t * j % 3) % 3) as u32);
            }
            *p = (acc * norm).re.max(0.0);
        }
        let acceptance: f64 = probs.iter().sum();
        let point = match orientation {
            Orientation::Direct => NoisePoint::new(probs[1] / acceptance, probs[2] / acceptance),
            Orientation::Conjugate => NoisePoint::new(probs[2] / acceptance, probs[1] / acceptance),
        };
        out.push(point);
    }
    Ok(out)
}

/// Expected number of noisy input states consumed per distilled output at the
/// target infidelity, accounting for post-selection failures each round.
pub fn overhead_estimate(
    code: &TriorthogonalCode,
    target_eps: f64,
    input_delta: f64,
) -> Result<f64> {
    if target_eps <= 0.0 {
        return Err(Error::InvalidDimension("target_eps must be positive".into()));
    }
    let evaluator = CharsumEvaluator::new(code)?;
    let per_round = code.n() as f64 / code.k() as f64;
    let mut point = NoisePoint::depolarizing(input_delta);
    let mut cost = 1.0;
    for _ in 0..ITERATION_CAP {
        let channel = DiagonalChannel::from_noise_point(point)?;
        let acceptance = evaluator.acceptance(&channel);
        cost *= per_round / acceptance;
        let next = if code.k() == 1 {
            let dist = evaluator.class_probs(&channel);
            let total = dist.acceptance();
            // conjugate orientation; the infidelity below is symmetric in it
            NoisePoint::new(dist.prob(&[2]) / total, dist.prob(&[1]) / total)
        } else {
            let marginals = marginal_error_rates(code, &channel, Orientation::default())?;
            marginals.iter().fold(NoisePoint::new(0.0, 0.0), |acc, p| {
                NoisePoint::new(acc.eps1.max(p.eps1), acc.eps2.max(p.eps2))
            })
        };
        if next.infidelity() <= target_eps {
            return Ok(cost);
        }
        if next.infidelity() >= point.infidelity() {
            return Err(Error::AboveThreshold { delta: input_delta });
        }
        point = next;
    }
    Err(Error::AboveThreshold { delta: input_delta })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::family_code;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn random_channel(rng: &mut impl Rng) -> DiagonalChannel {
        let a = rng.gen::<f64>();
        let b = rng.gen::<f64>();
        let c = rng.gen::<f64>();
        let s = a + b + c;
        DiagonalChannel::new(a / s, b / s, c / s).unwrap()
    }

    #[test]
    fn noiseless_channel_gives_class_zero() {
        let code = family_code(1, 1).unwrap();
        let ch = DiagonalChannel::new(1.0, 0.0, 0.0).unwrap();
        for dist in [
            class_probs_bruteforce(&code, &ch).unwrap(),
            class_probs_charsum(&code, &ch).unwrap(),
        ] {
            assert!((dist.prob(&[0]) - 1.0).abs() < 1e-12);
            assert!(dist.prob(&[1]).abs() < 1e-12);
            assert!(dist.prob(&[2]).abs() < 1e-12);
            assert!((dist.acceptance() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn bruteforce_pattern_count_8_1() {
        // zero-syndrome patterns of the [8,1] code number 3^6
        let code = family_code(1, 1).unwrap();
        assert_eq!(code.lx().kernel().rows(), 6);
        let cwe = class_weight_enumerator(&code).unwrap();
        let total: u128 = (0..3u8)
            .map(|j| cwe.counts(&[j]).iter().sum::<u128>())
            .sum();
        assert_eq!(total, 729);
    }

    #[test]
    fn charsum_matches_bruteforce_8_1() {
        let code = family_code(1, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(101);
        for _ in 0..20 {
            let ch = random_channel(&mut rng);
            let brute = class_probs_bruteforce(&code, &ch).unwrap();
            let char_ = class_probs_charsum(&code, &ch).unwrap();
            assert!(brute.max_abs_diff(&char_) < 1e-12);
        }
    }

    #[test]
    fn charsum_matches_bruteforce_14_4() {
        let code = family_code(2, 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..5 {
            let ch = random_channel(&mut rng);
            let brute = class_probs_bruteforce(&code, &ch).unwrap();
            let char_ = class_probs_charsum(&code, &ch).unwrap();
            assert!(brute.max_abs_diff(&char_) < 1e-12);
        }
    }

    #[test]
    fn weight_enumerator_matches_bruteforce() {
        let code = family_code(1, 1).unwrap();
        let cwe = class_weight_enumerator(&code).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..5 {
            let ch = random_channel(&mut rng);
            let brute = class_probs_bruteforce(&code, &ch).unwrap();
            assert!(brute.max_abs_diff(&cwe.evaluate(&ch)) < 1e-12);
        }
    }

    #[test]
    fn uniform_channel_class_structure_17_1() {
        let code = family_code(2, 1).unwrap();
        let ch = DiagonalChannel::new(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0).unwrap();
        let dist = class_probs_charsum(&code, &ch).unwrap();
        // classes equiprobable by coset structure; acceptance = 3^-rank(Lx)
        let expected_acc = 3f64.powi(-(code.rank_lx() as i32));
        assert!((dist.acceptance() - expected_acc).abs() < 1e-12);
        for j in 0..3u8 {
            assert!((dist.prob(&[j]) - expected_acc / 3.0).abs() < 1e-12);
        }
    }

    #[test]
    fn acceptance_shortcut_agrees() {
        let code = family_code(2, 1).unwrap();
        let evaluator = CharsumEvaluator::new(&code).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..5 {
            let ch = random_channel(&mut rng);
            let dist = evaluator.class_probs(&ch);
            assert!((evaluator.acceptance(&ch) - dist.acceptance()).abs() < 1e-12);
        }
    }

    #[test]
    fn fixed_points_of_output_map() {
        for code in [family_code(1, 1).unwrap(), family_code(2, 1).unwrap()] {
            let map = DistillationMap::new(&code, Orientation::default()).unwrap();
            for fp in [
                NoisePoint::new(0.0, 0.0),
                NoisePoint::new(1.0, 0.0),
                NoisePoint::new(0.0, 1.0),
                NoisePoint::new(1.0 / 3.0, 1.0 / 3.0),
            ] {
                let out = map.apply(fp).unwrap();
                assert!(
                    out.distance(&fp) < 1e-10,
                    "fixed point {fp:?} moved to {out:?}"
                );
            }
        }
    }

    #[test]
    fn direct_orientation_swaps_pure_points() {
        // under the uncalibrated orientation the pure inputs exchange
        let code = family_code(1, 1).unwrap();
        let map = DistillationMap::new(&code, Orientation::Direct).unwrap();
        let out = map.apply(NoisePoint::new(1.0, 0.0)).unwrap();
        assert!(out.distance(&NoisePoint::new(0.0, 1.0)) < 1e-10);
    }

    #[test]
    fn output_map_symmetric_on_depolarizing_line() {
        let code = family_code(1, 1).unwrap();
        let map = DistillationMap::new(&code, Orientation::default()).unwrap();
        let out = map.apply(NoisePoint::depolarizing(0.2)).unwrap();
        assert!((out.eps1 - out.eps2).abs() < 1e-12);
    }

    #[test]
    fn quadratic_suppression_at_small_noise() {
        for code in [family_code(1, 1).unwrap(), family_code(2, 1).unwrap()] {
            let map = DistillationMap::new(&code, Orientation::default()).unwrap();
            let r3 = map.apply(NoisePoint::depolarizing(1e-3)).unwrap();
            let r4 = map.apply(NoisePoint::depolarizing(1e-4)).unwrap();
            // eps'(delta) / delta must vanish linearly in delta
            let ratio3 = r3.infidelity() / 1e-3;
            let ratio4 = r4.infidelity() / 1e-4;
            let exponent = (r3.infidelity() / r4.infidelity()).log10();
            assert!(ratio4 < ratio3 / 5.0);
            assert!((exponent - 2.0).abs() < 0.05, "exponent {exponent}");
        }
    }

    #[test]
    fn threshold_8_1() {
        let code = family_code(1, 1).unwrap();
        let run = depolarizing_threshold(&code, Orientation::default()).unwrap();
        assert!(
            (run.delta_star - 0.317).abs() < 1e-3,
            "delta_star = {}",
            run.delta_star
        );
    }

    #[test]
    fn threshold_17_1() {
        let code = family_code(2, 1).unwrap();
        let run = depolarizing_threshold(&code, Orientation::default()).unwrap();
        assert!(
            (run.delta_star - 0.353).abs() < 1e-3,
            "delta_star = {}",
            run.delta_star
        );
    }

    #[test]
    fn threshold_orientation_invariant() {
        let code = family_code(1, 1).unwrap();
        let a = depolarizing_threshold(&code, Orientation::Conjugate).unwrap();
        let b = depolarizing_threshold(&code, Orientation::Direct).unwrap();
        assert!((a.delta_star - b.delta_star).abs() < 2.0 * BISECTION_TOL);
    }

    #[test]
    fn basin_classification_consistent_with_threshold() {
        let code = family_code(2, 1).unwrap();
        assert_eq!(
            basin_classify(&code, NoisePoint::new(0.0, 0.0), Orientation::default()).unwrap(),
            BasinLabel::M0
        );
        assert_eq!(
            basin_classify(&code, NoisePoint::depolarizing(0.30), Orientation::default()).unwrap(),
            BasinLabel::M0
        );
        assert_eq!(
            basin_classify(&code, NoisePoint::depolarizing(0.40), Orientation::default()).unwrap(),
            BasinLabel::Mixed
        );
    }

    #[test]
    fn basin_grid_small() {
        let code = family_code(1, 1).unwrap();
        let grid = basin_grid(&code, 2, Orientation::default()).unwrap();
        assert_eq!(grid.cells.len(), 6);
        assert_eq!(grid.cell(0, 0).label, BasinLabel::M0);
        assert_eq!(grid.cell(2, 0).label, BasinLabel::M1);
        assert_eq!(grid.cell(0, 2).label, BasinLabel::M2);
        let csv = grid.to_csv();
        assert!(csv.starts_with("eps1,eps2,label,in_polytope\n"));
        assert_eq!(csv.lines().count(), 7);
    }

    #[test]
    fn marginals_match_joint_for_k1() {
        let code = family_code(2, 1).unwrap();
        let ch = DiagonalChannel::new(0.8, 0.15, 0.05).unwrap();
        let marg = marginal_error_rates(&code, &ch, Orientation::default()).unwrap();
        assert_eq!(marg.len(), 1);
        let evaluator = CharsumEvaluator::new(&code).unwrap();
        let dist = evaluator.class_probs(&ch);
        let total = dist.acceptance();
        assert!((marg[0].eps1 - dist.prob(&[2]) / total).abs() < 1e-12);
        assert!((marg[0].eps2 - dist.prob(&[1]) / total).abs() < 1e-12);
    }

    #[test]
    fn marginals_identical_under_symmetric_channel() {
        let code = family_code(2, 4).unwrap();
        let ch = DiagonalChannel::depolarizing(0.15).unwrap();
        let marg = marginal_error_rates(&code, &ch, Orientation::default()).unwrap();
        assert_eq!(marg.len(), 4);
        for p in &marg[1..] {
            assert!((p.eps1 - marg[0].eps1).abs() < 1e-12);
            assert!((p.eps2 - marg[0].eps2).abs() < 1e-12);
        }
        let clean = marginal_error_rates(
            &code,
            &DiagonalChannel::new(1.0, 0.0, 0.0).unwrap(),
            Orientation::default(),
        )
        .unwrap();
        for p in clean {
            assert!(p.eps1.abs() < 1e-12 && p.eps2.abs() < 1e-12);
        }
    }

    #[test]
    fn overhead_single_round_when_target_is_input() {
        let code = family_code(1, 1).unwrap();
        let delta = 0.1;
        let target = 2.0 * delta / 3.0;
        let cost = overhead_estimate(&code, target, delta).unwrap();
        let ch = DiagonalChannel::depolarizing(delta).unwrap();
        let acc = CharsumEvaluator::new(&code).unwrap().acceptance(&ch);
        assert!((cost - 8.0 / acc).abs() < 1e-9);
    }

    #[test]
    fn overhead_monotone_in_target() {
        for code in [family_code(1, 1).unwrap(), family_code(2, 4).unwrap()] {
            let shallow = overhead_estimate(&code, 1e-6, 0.1).unwrap();
            let deep = overhead_estimate(&code, 1e-12, 0.1).unwrap();
            assert!(shallow.is_finite() && deep.is_finite());
            assert!(deep > shallow, "deeper target must cost more");
        }
    }

    #[test]
    fn overhead_rejects_above_threshold_input() {
        let code = family_code(1, 1).unwrap();
        assert!(matches!(
            overhead_estimate(&code, 1e-6, 0.5),
            Err(Error::AboveThreshold { .. })
        ));
    }
}
