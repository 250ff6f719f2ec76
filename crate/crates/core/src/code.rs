//! CSS code assembly from a punctured triorthogonal matrix: stabilizer spans,
//! logical representatives, distance enumeration, and the yield parameter.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf3::{dot, RowSpace, Trit, TritMatrix, TritVector};
use crate::space::{default_punctures, family_space, puncture, TriorthogonalMatrix};

/// Enumeration cap for the full-span route of [`distance_x`].
const DISTANCE_X_SPAN_BUDGET: u32 = 16; // 3^16 codewords

/// A qutrit CSS code built from a triorthogonal matrix.
///
/// `lx` spans the X stabilizers (the self-orthogonal H0 rows), `lz` spans the
/// Z stabilizers (the kernel of the full H), and the H1 rows are the logical
/// X representatives.
#[derive(Clone, Debug)]
pub struct TriorthogonalCode {
    n: usize,
    k: usize,
    lx: TritMatrix,
    lz: TritMatrix,
    logical_x: TritMatrix,
    h: TritMatrix,
}

impl TriorthogonalCode {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// RREF basis of the X-stabilizer span.
    pub fn lx(&self) -> &TritMatrix {
        &self.lx
    }

    /// Basis of the Z-stabilizer span (kernel of H).
    pub fn lz(&self) -> &TritMatrix {
        &self.lz
    }

    /// Logical X representatives, one row per logical qutrit.
    pub fn logical_x(&self) -> &TritMatrix {
        &self.logical_x
    }

    /// The full punctured matrix (H1 rows first).
    pub fn h(&self) -> &TritMatrix {
        &self.h
    }

    pub fn rank_lx(&self) -> usize {
        self.lx.rows()
    }

    pub fn rank_lz(&self) -> usize {
        self.lz.rows()
    }

    pub fn label(&self, d: usize) -> String {
        format!("[{},{},{}]_3", self.n, self.k, d)
    }
}

/// Assemble the CSS code. Fails on rank-deficient H or when the X-stabilizer
/// span is not contained in the Z-stabilizer span (an invalid puncture).
pub fn build_code(tm: &TriorthogonalMatrix) -> Result<TriorthogonalCode> {
    let h = tm.h().clone();
    let rank = h.rank();
    if rank != h.rows() {
        return Err(Error::RankDeficient {
            rank,
            rows: h.rows(),
        });
    }
    let h0 = tm.h0_rows();
    let lx = if h0.is_empty() {
        TritMatrix::zeros(0, tm.cols())
    } else {
        TritMatrix::from_rows(&h0)?.rref_trimmed()
    };
    let lz = h.kernel();
    // CSS consistency: every X stabilizer must be orthogonal to every row of
    // H, i.e. lie in the span of the kernel of H.
    for r in 0..lx.rows() {
        let g = lx.row_vec(r);
        for hr in 0..h.rows() {
            if dot(&g, &h.row_vec(hr))? != Trit::ZERO {
                return Err(Error::CssViolation { row: r });
            }
        }
    }
    let logical_x = if tm.h1_count() == 0 {
        TritMatrix::zeros(0, tm.cols())
    } else {
        TritMatrix::from_rows(&tm.h1_rows())?
    };
    let code = TriorthogonalCode {
        n: tm.cols(),
        k: tm.h1_count(),
        lx,
        lz,
        logical_x,
        h,
    };
    debug_assert_eq!(code.rank_lx() + code.k, rank);
    debug_assert_eq!(code.rank_lz(), code.n - rank);
    Ok(code)
}

/// Convenience: the [9m-k, k] family code with the default puncture pattern.
pub fn family_code(m: usize, k: usize) -> Result<TriorthogonalCode> {
    let space = family_space(m)?;
    let tm = puncture(&space, &default_punctures(m, k)?)?;
    build_code(&tm)
}

/// All nonzero value patterns on a fixed support, as vectors.
fn support_patterns(n: usize, support: &[usize]) -> Vec<TritVector> {
    let w = support.len();
    let mut out = Vec::with_capacity(1 << w);
    for mask in 0..(1u32 << w) {
        let mut v = TritVector::zeros(n);
        for (bit, &i) in support.iter().enumerate() {
            let val = if mask & (1 << bit) == 0 { 1 } else { 2 };
            v.set(i, Trit::new(val));
        }
        out.push(v);
    }
    out
}

/// Minimum weight of a Z error with trivial syndrome against every X
/// stabilizer that is not itself a Z stabilizer. Enumerates supports in
/// increasing weight with early exit.
pub fn distance_z(code: &TriorthogonalCode) -> Result<usize> {
    if code.k == 0 {
        return Err(Error::NoLogicals);
    }
    let lz_space = RowSpace::new(code.lz());
    let lx_rows = code.lx().row_vecs();
    for w in 1..=code.n {
        let mut best: Option<usize> = None;
        for support in (0..code.n).combinations(w) {
            for e in support_patterns(code.n, &support) {
                let undetected = lx_rows
                    .iter()
                    .all(|g| dot(&e, g).unwrap() == Trit::ZERO);
                if undetected && !lz_space.contains(&e) {
                    best = Some(w);
                    break;
                }
            }
            if best.is_some() {
                break;
            }
        }
        if let Some(d) = best {
            return Ok(d);
        }
    }
    unreachable!("a nontrivial logical Z class always exists when k >= 1")
}

/// Minimum weight of an element of rowspace(H) outside the X-stabilizer span.
/// Enumerates the full row space, so requires 3^rank(H) within budget.
pub fn distance_x(code: &TriorthogonalCode) -> Result<usize> {
    if code.k == 0 {
        return Err(Error::NoLogicals);
    }
    let kappa = code.h.rows();
    if kappa as u32 > DISTANCE_X_SPAN_BUDGET {
        return Err(Error::BudgetExceeded {
            needed: 3u128.pow(kappa as u32),
            budget: 3u128.pow(DISTANCE_X_SPAN_BUDGET),
        });
    }
    let lx_space = RowSpace::new(code.lx());
    let mut best = usize::MAX;
    crate::gf3::for_each_in_span(&code.h, |e| {
        let v = TritVector::from_trits(e.to_vec());
        if v.is_zero() || lx_space.contains(&v) {
            return;
        }
        best = best.min(v.weight());
    });
    debug_assert!(best < usize::MAX);
    Ok(best)
}

/// Overhead exponent log_d(n / k).
pub fn yield_param(n: usize, k: usize, d: usize) -> Result<f64> {
    if k == 0 {
        return Err(Error::NoLogicals);
    }
    if n <= k || d < 2 {
        return Err(Error::InvalidDimension(format!(
            "yield parameter requires n > k >= 1 and d >= 2, got n={n}, k={k}, d={d}"
        )));
    }
    Ok((n as f64 / k as f64).ln() / (d as f64).ln())
}

/// Closed-form yield of the maximally punctured [6m+2, 3m-2, 2] family member:
/// log2(2 + 6/(3m-2)).
pub fn family_yield(m: usize) -> f64 {
    assert!(m >= 1);
    (2.0 + 6.0 / (3.0 * m as f64 - 2.0)).log2()
}

/// JSON summary of a constructed code.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CodeSummary {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    pub punctures: Vec<usize>,
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub gamma: f64,
    pub rank_lx: usize,
    pub rank_lz: usize,
}

impl CodeSummary {
    pub fn new(
        code: &TriorthogonalCode,
        m: Option<usize>,
        punctures: &[usize],
        d: usize,
    ) -> Result<CodeSummary> {
        Ok(CodeSummary {
            m,
            punctures: punctures.to_vec(),
            n: code.n(),
            k: code.k(),
            d,
            gamma: yield_param(code.n(), code.k(), d)?,
            rank_lx: code.rank_lx(),
            rank_lz: code.rank_lz(),
        })
    }
}

/// One row of the yield-curve table for the maximally punctured family.
#[derive(Clone, Debug, Serialize)]
pub struct YieldRow {
    pub m: usize,
    pub n: usize,
    pub k: usize,
    pub gamma: f64,
}

/// Yield table rows (m, 6m+2, 3m-2, gamma) for m = 1..=m_max.
pub fn yield_table(m_max: usize) -> Vec<YieldRow> {
    (1..=m_max)
        .map(|m| YieldRow {
            m,
            n: 6 * m + 2,
            k: 3 * m - 2,
            gamma: family_yield(m),
        })
        .collect()
}
