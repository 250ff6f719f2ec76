//! Exact dense state-vector oracle for small blocks.
//!
//! Everything here works directly with complex amplitudes over the
//! computational basis of n qutrits and makes no use of the F_3 dot-product
//! shortcuts in [`crate::distill`]; that independence is what makes it a
//! useful cross-check. Dense vectors are limited to n <= 10 qutrits.

use num_complex::Complex64;

use crate::code::TriorthogonalCode;
use crate::distill::{ClassDistribution, DiagonalChannel};
use crate::error::{Error, Result};
use crate::gf3::{for_each_in_span, Trit, TritMatrix, TritVector};
use crate::wigner::{omega3, omega9};

/// Dense representations are refused beyond this many qutrits.
pub const MAX_QUTRITS: usize = 10;
/// One-round simulation additionally enumerates 3^n error branches.
pub const MAX_SIMULATION_QUTRITS: usize = 9;
/// Residual above which the transversal gate is deemed to leave the codespace.
pub const RESIDUAL_TOL: f64 = 1e-10;

/// Dense state vector of n qutrits; index built big-endian from the digits.
#[derive(Clone, Debug)]
pub struct StateVector {
    n: usize,
    amps: Vec<Complex64>,
}

fn check_size(n: usize) -> Result<()> {
    if n == 0 || n > MAX_QUTRITS {
        return Err(Error::TooLarge(format!(
            "dense state vectors support 1..={MAX_QUTRITS} qutrits, got {n}"
        )));
    }
    Ok(())
}

/// Basis-state index of a digit string (qutrit 0 most significant).
pub fn basis_index(digits: &[Trit]) -> usize {
    digits.iter().fold(0, |acc, t| acc * 3 + t.value() as usize)
}

/// Integer digit sum of a basis-state index (not reduced mod anything).
fn digit_sum(mut idx: usize, n: usize) -> u32 {
    let mut s = 0u32;
    for _ in 0..n {
        s += (idx % 3) as u32;
        idx /= 3;
    }
    s
}

impl StateVector {
    pub fn zero(n: usize) -> Result<StateVector> {
        check_size(n)?;
        Ok(StateVector {
            n,
            amps: vec![Complex64::new(0.0, 0.0); 3usize.pow(n as u32)],
        })
    }

    pub fn basis_state(n: usize, digits: &[Trit]) -> Result<StateVector> {
        let mut v = StateVector::zero(n)?;
        v.amps[basis_index(digits)] = Complex64::new(1.0, 0.0);
        Ok(v)
    }

    /// |+>^n, the uniform superposition.
    pub fn plus_all(n: usize) -> Result<StateVector> {
        check_size(n)?;
        let dim = 3usize.pow(n as u32);
        let a = Complex64::new(1.0 / (dim as f64).sqrt(), 0.0);
        Ok(StateVector {
            n,
            amps: vec![a; dim],
        })
    }

    /// |M_0>^n with |M_0> = 3^(-1/2) sum_c w9^c |c>.
    pub fn magic_product(n: usize) -> Result<StateVector> {
        check_size(n)?;
        let dim = 3usize.pow(n as u32);
        let w9 = omega9();
        let norm = 1.0 / (dim as f64).sqrt();
        let amps = (0..dim)
            .map(|idx| norm * w9.powu(digit_sum(idx, n)))
            .collect();
        Ok(StateVector { n, amps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amp(&self, idx: usize) -> Complex64 {
        self.amps[idx]
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// <self|other>.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        assert_eq!(self.n, other.n);
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Apply Z^e transversally: |x> picks up w3^(e.x).
    pub fn apply_z_pattern(&mut self, e: &TritVector) -> Result<()> {
        if e.len() != self.n {
            return Err(Error::LengthMismatch {
                left: e.len(),
                right: self.n,
            });
        }
        let w3 = omega3();
        let n = self.n;
        for (idx, amp) in self.amps.iter_mut().enumerate() {
            let mut rem = idx;
            let mut dot = 0u32;
            for i in (0..n).rev() {
                dot += (rem % 3) as u32 * e.get(i).value() as u32;
                rem /= 3;
            }
            *amp *= w3.powu(dot % 3);
        }
        Ok(())
    }

    /// Apply X^g transversally: |x> -> |x + g>.
    pub fn apply_x_pattern(&mut self, g: &TritVector) -> Result<()> {
        if g.len() != self.n {
            return Err(Error::LengthMismatch {
                left: g.len(),
                right: self.n,
            });
        }
        let n = self.n;
        let mut out = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        for (idx, amp) in self.amps.iter().enumerate() {
            let mut rem = idx;
            let mut target = 0usize;
            let mut place = 1usize;
            for i in (0..n).rev() {
                let digit = (rem % 3 + g.get(i).value() as usize) % 3;
                target += digit * place;
                place *= 3;
                rem /= 3;
            }
            out[target] = *amp;
        }
        self.amps = out;
        Ok(())
    }

    /// Apply T^n transversally: |x> picks up w9^(sum of digits).
    pub fn apply_t_all(&mut self) {
        let w9 = omega9();
        let n = self.n;
        for (idx, amp) in self.amps.iter_mut().enumerate() {
            *amp *= w9.powu(digit_sum(idx, n));
        }
    }

    /// Apply (T^dagger)^n transversally.
    pub fn apply_t_dagger_all(&mut self) {
        let w9 = omega9().conj();
        let n = self.n;
        for (idx, amp) in self.amps.iter_mut().enumerate() {
            *amp *= w9.powu(digit_sum(idx, n));
        }
    }
}

/// Uniform superposition over the coset shift + span(rows). Performs no
/// validation of the rows, so it can build "codewords" of corrupted
/// stabilizer sets for negative controls.
pub fn coset_superposition(rows: &TritMatrix, shift: &TritVector) -> Result<StateVector> {
    let n = shift.len();
    if rows.cols() != n {
        return Err(Error::LengthMismatch {
            left: rows.cols(),
            right: n,
        });
    }
    let mut state = StateVector::zero(n)?;
    let count = for_each_in_span(rows, |g| {
        let mut digits = shift.clone();
        for (i, t) in g.iter().enumerate() {
            digits.set(i, digits.get(i) + *t);
        }
        state.amps[basis_index(digits.as_slice())] += Complex64::new(1.0, 0.0);
    });
    let norm = 1.0 / (count as f64).sqrt();
    for a in &mut state.amps {
        *a *= norm;
    }
    Ok(state)
}

fn logical_shift(code: &TriorthogonalCode, label: &[Trit]) -> Result<TritVector> {
    if label.len() != code.k() {
        return Err(Error::LengthMismatch {
            left: label.len(),
            right: code.k(),
        });
    }
    let mut shift = TritVector::zeros(code.n());
    for (a, &t) in label.iter().enumerate() {
        if t != Trit::ZERO {
            shift = shift.add(&code.logical_x().row_vec(a).scaled(t))?;
        }
    }
    Ok(shift)
}

/// The logical basis state |label>_L: the uniform superposition over
/// sum_a label_a x_a + span(Lx).
pub fn codeword(code: &TriorthogonalCode, label: &[Trit]) -> Result<StateVector> {
    coset_superposition(code.lx(), &logical_shift(code, label)?)
}

/// All 3^k logical basis states, ordered by the base-3 label index used by
/// [`ClassDistribution`] (digit a is logical a).
pub fn codewords(code: &TriorthogonalCode) -> Result<Vec<StateVector>> {
    let k = code.k();
    let mut out = Vec::with_capacity(3usize.pow(k as u32));
    for idx in 0..3usize.pow(k as u32) {
        let mut rem = idx;
        let label: Vec<Trit> = (0..k)
            .map(|_| {
                let d = (rem % 3) as u8;
                rem /= 3;
                Trit::new(d)
            })
            .collect();
        out.push(codeword(code, &label)?);
    }
    Ok(out)
}

/// Diagonal logical unitary extracted from a transversal gate, with the
/// global phase fixed so the |0...0>_L entry is 1.
#[derive(Clone, Debug)]
pub struct LogicalUnitary {
    k: usize,
    phases: Vec<Complex64>,
}

impl LogicalUnitary {
    pub fn k(&self) -> usize {
        self.k
    }

    /// Phase on the logical basis state with the given label index.
    pub fn phase(&self, label_idx: usize) -> Complex64 {
        self.phases[label_idx]
    }

    /// Express every phase as w9^e; errors if any phase is not a ninth root
    /// of unity to within `tol`.
    pub fn ninth_root_exponents(&self, tol: f64) -> Result<Vec<u8>> {
        let w9 = omega9();
        self.phases
            .iter()
            .map(|p| {
                for e in 0..9u8 {
                    if (p - w9.powu(e as u32)).norm() < tol {
                        return Ok(e);
                    }
                }
                Err(Error::InvalidState(format!(
                    "phase {p} is not a ninth root of unity"
                )))
            })
            .collect()
    }
}

/// Largest deviation of T^n from acting as a phase on each raw codeword, plus
/// the extracted phases. Usable on arbitrary (even corrupted) stabilizer rows.
pub struct TransversalCheck {
    pub max_residual: f64,
    pub phases: Vec<Complex64>,
}

pub fn transversal_t_check(
    stabilizer_rows: &TritMatrix,
    shifts: &[TritVector],
) -> Result<TransversalCheck> {
    let mut max_residual = 0.0f64;
    let mut phases = Vec::with_capacity(shifts.len());
    for shift in shifts {
        let word = coset_superposition(stabilizer_rows, shift)?;
        let mut rotated = word.clone();
        rotated.apply_t_all();
        let phi = word.inner(&rotated);
        let mut residual2 = 0.0f64;
        for (a, b) in rotated.amps.iter().zip(&word.amps) {
            residual2 += (a - phi * b).norm_sqr();
        }
        max_residual = max_residual.max(residual2.sqrt());
        phases.push(phi);
    }
    Ok(TransversalCheck {
        max_residual,
        phases,
    })
}

/// Verify that T^n preserves the codespace and extract its diagonal logical
/// action. Fails with [`Error::CodespaceNotPreserved`] if any codeword is
/// moved by more than [`RESIDUAL_TOL`].
pub fn transversal_t_logical(code: &TriorthogonalCode) -> Result<LogicalUnitary> {
    let k = code.k();
    let mut shifts = Vec::with_capacity(3usize.pow(k as u32));
    for idx in 0..3usize.pow(k as u32) {
        let mut rem = idx;
        let label: Vec<Trit> = (0..k)
            .map(|_| {
                let d = (rem % 3) as u8;
                rem /= 3;
                Trit::new(d)
            })
            .collect();
        shifts.push(logical_shift(code, &label)?);
    }
    let check = transversal_t_check(code.lx(), &shifts)?;
    if check.max_residual > RESIDUAL_TOL {
        return Err(Error::CodespaceNotPreserved {
            residual: check.max_residual,
        });
    }
    let global = check.phases[0];
    let phases = check.phases.iter().map(|p| p / global).collect();
    Ok(LogicalUnitary { k, phases })
}

fn class_from_alphas(alphas: &[Complex64], k: usize) -> usize {
    let mut class_idx = 0usize;
    for a in 0..k {
        let unit = 3usize.pow(a as u32);
        let ratio = alphas[unit] * alphas[0].conj();
        let angle = ratio.arg().rem_euclid(2.0 * std::f64::consts::PI);
        let digit = (angle / (2.0 * std::f64::consts::PI / 3.0)).round() as usize % 3;
        class_idx += digit * unit;
    }
    class_idx
}

/// Phase-kickback class assignment of a single Z-error pattern, computed
/// purely from codeword overlaps: `None` when the pattern triggers a
/// nontrivial syndrome and is rejected, otherwise the logical class index.
/// This is the oracle that calibrates the error-orientation convention.
pub fn error_pattern_class(code: &TriorthogonalCode, e: &TritVector) -> Result<Option<usize>> {
    let n = code.n();
    let k = code.k();
    if k == 0 {
        return Err(Error::NoLogicals);
    }
    let mut errored = StateVector::plus_all(n)?;
    errored.apply_z_pattern(e)?;
    let words = codewords(code)?;
    let alphas: Vec<Complex64> = words.iter().map(|w| w.inner(&errored)).collect();
    let weight: f64 = alphas.iter().map(|a| a.norm_sqr()).sum();
    let accept_weight = 3f64.powi((code.rank_lx() + k) as i32 - n as i32);
    if weight < 0.5 * accept_weight {
        return Ok(None);
    }
    Ok(Some(class_from_alphas(&alphas, k)))
}

/// Simulate one full distillation round by explicit amplitude arithmetic.
///
/// Every Z-error branch e is enumerated; the branch state
/// (T^dagger)^n Z^e |M_0>^n is built from the dense magic product state, its
/// overlaps with every codeword are computed, and acceptance and logical
/// class are read off the amplitudes alone: a branch is accepted when the
/// squared overlaps sum to the trivial-syndrome projector weight, and its
/// class is recovered from the phase ratios of the overlaps.
pub fn simulate_one_round(
    code: &TriorthogonalCode,
    channel: &DiagonalChannel,
) -> Result<ClassDistribution> {
    let n = code.n();
    if n > MAX_SIMULATION_QUTRITS {
        return Err(Error::TooLarge(format!(
            "one-round simulation supports up to {MAX_SIMULATION_QUTRITS} qutrits, got {n}"
        )));
    }
    let k = code.k();
    if k == 0 {
        return Err(Error::NoLogicals);
    }
    let words = codewords(code)?;
    // sparse supports: (basis index, conjugated amplitude)
    let supports: Vec<Vec<(usize, Complex64)>> = words
        .iter()
        .map(|w| {
            (0..w.dim())
                .filter(|&idx| w.amp(idx).norm() > 1e-14)
                .map(|idx| (idx, w.amp(idx).conj()))
                .collect()
        })
        .collect();
    let magic = StateVector::magic_product(n)?;
    let w3 = omega3();
    let w9c = omega9().conj();
    // accept threshold: the trivial-syndrome projector weight of a branch
    let accept_weight = 3f64.powi((code.rank_lx() + k) as i32 - n as i32);
    let num_classes = 3usize.pow(k as u32);
    let mut probs = vec![0.0f64; num_classes];
    let num_branches = 3usize.pow(n as u32);
    let mut e = vec![Trit::ZERO; n];
    for branch in 0..num_branches {
        // decode the branch index into the error pattern (qutrit 0 most significant)
        let mut rem = branch;
        for i in (0..n).rev() {
            e[i] = Trit::new((rem % 3) as u8);
            rem /= 3;
        }
        let mut p_branch = 1.0f64;
        for t in &e {
            p_branch *= match t.value() {
                0 => 1.0 - channel.p1 - channel.p2,
                1 => channel.p1,
                _ => channel.p2,
            };
        }
        if p_branch == 0.0 {
            continue;
        }
        // overlaps alpha_j = <c_j| (T^dag)^n Z^e |M_0>^n, evaluated lazily on
        // each codeword's support
        let mut alphas = vec![Complex64::new(0.0, 0.0); num_classes];
        for (j, support) in supports.iter().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for &(idx, conj_amp) in support {
                let mut rem = idx;
                let mut dot = 0u32;
                for i in (0..n).rev() {
                    dot += (rem % 3) as u32 * e[i].value() as u32;
                    rem /= 3;
                }
                let s = digit_sum(idx, n);
                acc += conj_amp * w9c.powu(s) * w3.powu(dot % 3) * magic.amp(idx);
            }
            alphas[j] = acc;
        }
        let weight: f64 = alphas.iter().map(|a| a.norm_sqr()).sum();
        if weight < 0.5 * accept_weight {
            continue; // nontrivial syndrome: rejected
        }
        probs[class_from_alphas(&alphas, k)] += p_branch;
    }
    Ok(ClassDistribution::new(k, probs))
}
