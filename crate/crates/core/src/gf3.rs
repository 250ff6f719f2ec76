//! Exact linear algebra over the three-element field.
//!
//! Everything downstream (spaces, codes, searches) is built on [`Trit`],
//! [`TritVector`] and [`TritMatrix`]. All arithmetic is exact mod 3; there is
//! no floating point in this module.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// An element of GF(3), stored as 0, 1 or 2. Note 2 = -1.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct Trit(u8);

impl Trit {
    pub const ZERO: Trit = Trit(0);
    pub const ONE: Trit = Trit(1);
    pub const TWO: Trit = Trit(2);

    /// Construct from a value already in {0, 1, 2}. Panics otherwise.
    pub fn new(v: u8) -> Trit {
        assert!(v < 3, "trit value out of range: {v}");
        Trit(v)
    }

    /// Construct from any integer, reducing mod 3.
    pub fn from_i64(v: i64) -> Trit {
        Trit(v.rem_euclid(3) as u8)
    }

    pub fn value(self) -> u8 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Multiplicative inverse; `None` for zero. Both nonzero elements are
    /// self-inverse in GF(3).
    pub fn inverse(self) -> Option<Trit> {
        match self.0 {
            0 => None,
            v => Some(Trit(v)),
        }
    }
}

impl Add for Trit {
    type Output = Trit;
    fn add(self, rhs: Trit) -> Trit {
        Trit((self.0 + rhs.0) % 3)
    }
}

impl AddAssign for Trit {
    fn add_assign(&mut self, rhs: Trit) {
        *self = *self + rhs;
    }
}

impl Sub for Trit {
    type Output = Trit;
    fn sub(self, rhs: Trit) -> Trit {
        Trit((3 + self.0 - rhs.0) % 3)
    }
}

impl Neg for Trit {
    type Output = Trit;
    fn neg(self) -> Trit {
        Trit((3 - self.0) % 3)
    }
}

impl Mul for Trit {
    type Output = Trit;
    fn mul(self, rhs: Trit) -> Trit {
        Trit((self.0 * rhs.0) % 3)
    }
}

impl fmt::Display for Trit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A fixed-length vector over GF(3).
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct TritVector {
    entries: Vec<Trit>,
}

impl TritVector {
    pub fn zeros(n: usize) -> TritVector {
        TritVector {
            entries: vec![Trit::ZERO; n],
        }
    }

    pub fn from_trits(entries: Vec<Trit>) -> TritVector {
        TritVector { entries }
    }

    /// Build from raw digits in {0,1,2}.
    pub fn from_digits(digits: &[u8]) -> TritVector {
        TritVector {
            entries: digits.iter().map(|&d| Trit::new(d)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> Trit {
        self.entries[i]
    }

    pub fn set(&mut self, i: usize, v: Trit) {
        self.entries[i] = v;
    }

    pub fn as_slice(&self) -> &[Trit] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|t| t.is_zero())
    }

    /// Number of nonzero entries.
    pub fn weight(&self) -> usize {
        self.entries.iter().filter(|t| !t.is_zero()).count()
    }

    pub fn scaled(&self, c: Trit) -> TritVector {
        TritVector {
            entries: self.entries.iter().map(|&t| t * c).collect(),
        }
    }

    pub fn add(&self, other: &TritVector) -> Result<TritVector> {
        check_len(self.len(), other.len())?;
        Ok(TritVector {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| a + b)
                .collect(),
        })
    }

    /// Componentwise product (used to linearize triple-product constraints).
    pub fn hadamard(&self, other: &TritVector) -> Result<TritVector> {
        check_len(self.len(), other.len())?;
        Ok(TritVector {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| a * b)
                .collect(),
        })
    }

    /// Sum of all entries mod 3. Equals the self-triple-product since x^3 = x.
    pub fn entry_sum(&self) -> Trit {
        self.entries.iter().fold(Trit::ZERO, |acc, &t| acc + t)
    }
}

fn check_len(left: usize, right: usize) -> Result<()> {
    if left != right {
        return Err(Error::LengthMismatch { left, right });
    }
    Ok(())
}

/// Inner product sum_i u_i v_i mod 3.
pub fn dot(u: &TritVector, v: &TritVector) -> Result<Trit> {
    check_len(u.len(), v.len())?;
    Ok(dot_slices(u.as_slice(), v.as_slice()))
}

/// Triple product sum_i u_i v_i w_i mod 3.
pub fn triple_dot(u: &TritVector, v: &TritVector, w: &TritVector) -> Result<Trit> {
    check_len(u.len(), v.len())?;
    check_len(u.len(), w.len())?;
    let mut acc = 0u32;
    for i in 0..u.len() {
        acc += (u.get(i).value() * v.get(i).value() * w.get(i).value()) as u32;
    }
    Ok(Trit::from_i64(acc as i64))
}

pub(crate) fn dot_slices(u: &[Trit], v: &[Trit]) -> Trit {
    let mut acc = 0u32;
    for (a, b) in u.iter().zip(v) {
        acc += (a.value() * b.value()) as u32;
    }
    Trit::from_i64(acc as i64)
}

pub(crate) fn add_assign_slices(dst: &mut [Trit], src: &[Trit]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d += *s;
    }
}

/// A dense row-major matrix over GF(3).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TritMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Trit>,
}

impl TritMatrix {
    pub fn zeros(rows: usize, cols: usize) -> TritMatrix {
        TritMatrix {
            rows,
            cols,
            data: vec![Trit::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> TritMatrix {
        let mut m = TritMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Trit::ONE);
        }
        m
    }

    pub fn from_rows(rows: &[TritVector]) -> Result<TritMatrix> {
        let cols = rows.first().map_or(0, TritVector::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            check_len(cols, r.len())?;
            data.extend_from_slice(r.as_slice());
        }
        Ok(TritMatrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Build from raw digits in row-major order.
    pub fn from_digits(rows: usize, cols: usize, digits: &[u8]) -> TritMatrix {
        assert_eq!(rows * cols, digits.len());
        TritMatrix {
            rows,
            cols,
            data: digits.iter().map(|&d| Trit::new(d)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Trit {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Trit) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row_slice(&self, r: usize) -> &[Trit] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vec(&self, r: usize) -> TritVector {
        TritVector::from_trits(self.row_slice(r).to_vec())
    }

    pub fn row_vecs(&self) -> Vec<TritVector> {
        (0..self.rows).map(|r| self.row_vec(r)).collect()
    }

    pub fn row_is_zero(&self, r: usize) -> bool {
        self.row_slice(r).iter().all(|t| t.is_zero())
    }

    /// Stack two matrices with equal column counts.
    pub fn stacked(&self, other: &TritMatrix) -> Result<TritMatrix> {
        check_len(self.cols, other.cols)?;
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(TritMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Copy of the matrix keeping only the listed columns (0-indexed, in order).
    pub fn select_cols(&self, keep: &[usize]) -> TritMatrix {
        let mut m = TritMatrix::zeros(self.rows, keep.len());
        for r in 0..self.rows {
            for (cnew, &cold) in keep.iter().enumerate() {
                m.set(r, cnew, self.get(r, cold));
            }
        }
        m
    }

    /// Copy with columns permuted: entry (r, c) of the result is (r, perm[c])
    /// of the original.
    pub fn permuted_cols(&self, perm: &[usize]) -> TritMatrix {
        assert_eq!(perm.len(), self.cols);
        self.select_cols(perm)
    }

    fn scale_row(&mut self, r: usize, c: Trit) {
        for x in &mut self.data[r * self.cols..(r + 1) * self.cols] {
            *x = *x * c;
        }
    }

    /// row r += c * row s
    fn add_scaled_row(&mut self, r: usize, s: usize, c: Trit) {
        if c.is_zero() {
            return;
        }
        for i in 0..self.cols {
            let v = self.get(r, i) + c * self.get(s, i);
            self.set(r, i, v);
        }
    }

    /// Unique reduced row-echelon form. Leftmost pivots, pivots scaled to 1,
    /// entries above and below pivots cleared. Deterministic: the first row
    /// with a nonzero entry in the pivot column is used.
    pub fn rref(&self) -> TritMatrix {
        let mut m = self.clone();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let Some(r) = (pivot_row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            if r != pivot_row {
                for i in 0..m.cols {
                    let (a, b) = (m.get(pivot_row, i), m.get(r, i));
                    m.set(pivot_row, i, b);
                    m.set(r, i, a);
                }
            }
            let inv = m.get(pivot_row, col).inverse().unwrap();
            m.scale_row(pivot_row, inv);
            for rr in 0..m.rows {
                if rr != pivot_row {
                    let c = m.get(rr, col);
                    m.add_scaled_row(rr, pivot_row, -c);
                }
            }
            pivot_row += 1;
        }
        m
    }

    /// RREF with all-zero rows removed.
    pub fn rref_trimmed(&self) -> TritMatrix {
        let r = self.rref();
        let rows: Vec<TritVector> = (0..r.rows)
            .filter(|&i| !r.row_is_zero(i))
            .map(|i| r.row_vec(i))
            .collect();
        if rows.is_empty() {
            TritMatrix::zeros(0, self.cols)
        } else {
            TritMatrix::from_rows(&rows).unwrap()
        }
    }

    pub fn rank(&self) -> usize {
        let r = self.rref();
        (0..r.rows).filter(|&i| !r.row_is_zero(i)).count()
    }

    /// Basis of {v : Mv = 0}, returned as rows. dim = cols - rank.
    pub fn kernel(&self) -> TritMatrix {
        let r = self.rref();
        // pivot_of[col] = Some(row) if col is the leading column of that row
        let mut pivot_of = vec![None; self.cols];
        for row in 0..r.rows {
            if let Some(c) = (0..self.cols).find(|&c| !r.get(row, c).is_zero()) {
                pivot_of[c] = Some(row);
            }
        }
        let free_cols: Vec<usize> = (0..self.cols).filter(|&c| pivot_of[c].is_none()).collect();
        let mut basis = Vec::with_capacity(free_cols.len());
        for &f in &free_cols {
            let mut v = TritVector::zeros(self.cols);
            v.set(f, Trit::ONE);
            for c in 0..self.cols {
                if let Some(pr) = pivot_of[c] {
                    v.set(c, -r.get(pr, f));
                }
            }
            basis.push(v);
        }
        if basis.is_empty() {
            TritMatrix::zeros(0, self.cols)
        } else {
            TritMatrix::from_rows(&basis).unwrap()
        }
    }

    /// Matrix-vector product M v.
    pub fn mul_vec(&self, v: &TritVector) -> Result<TritVector> {
        check_len(self.cols, v.len())?;
        let mut out = TritVector::zeros(self.rows);
        for r in 0..self.rows {
            out.set(r, dot_slices(self.row_slice(r), v.as_slice()));
        }
        Ok(out)
    }

    /// Shared repo-wide text format: first line "<rows> <cols>", then one line
    /// of space-separated digits per row.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.rows, self.cols);
        for r in 0..self.rows {
            let line: Vec<String> = self.row_slice(r).iter().map(|t| t.to_string()).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<TritMatrix> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty matrix text".into()))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad header: {header}"))))
            .collect::<Result<_>>()?;
        if dims.len() != 2 {
            return Err(Error::Parse(format!("bad header: {header}")));
        }
        let (rows, cols) = (dims[0], dims[1]);
        let mut data = Vec::with_capacity(rows * cols);
        for _ in 0..rows {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse("missing matrix row".into()))?;
            let entries: Vec<Trit> = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<u8>()
                        .ok()
                        .filter(|&v| v < 3)
                        .map(Trit::new)
                        .ok_or_else(|| Error::Parse(format!("bad entry: {t}")))
                })
                .collect::<Result<_>>()?;
            if entries.len() != cols {
                return Err(Error::Parse(format!(
                    "row has {} entries, expected {cols}",
                    entries.len()
                )));
            }
            data.extend(entries);
        }
        Ok(TritMatrix { rows, cols, data })
    }
}

impl fmt::Display for TritMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Row space of a matrix, held in canonical RREF form. Supports membership
/// and equality tests.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowSpace {
    rref: TritMatrix,
}

impl RowSpace {
    pub fn new(m: &TritMatrix) -> RowSpace {
        RowSpace {
            rref: m.rref_trimmed(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rref.rows()
    }

    pub fn ambient(&self) -> usize {
        self.rref.cols()
    }

    pub fn basis(&self) -> &TritMatrix {
        &self.rref
    }

    /// Reduce v against the basis; membership iff the residue is zero.
    pub fn contains(&self, v: &TritVector) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn reduce(&self, v: &TritVector) -> TritVector {
        let mut w = v.clone();
        for r in 0..self.rref.rows() {
            let lead = (0..self.rref.cols()).find(|&c| !self.rref.get(r, c).is_zero());
            if let Some(c) = lead {
                let coeff = w.get(c);
                if !coeff.is_zero() {
                    // pivot entries are 1
                    for i in 0..w.len() {
                        let val = w.get(i) - coeff * self.rref.get(r, i);
                        w.set(i, val);
                    }
                }
            }
        }
        w
    }
}

/// Odometer-style iteration over the span of the given basis rows.
/// Calls `f` once per element (including zero first), passing the current
/// vector. Returns the number of elements visited.
pub(crate) fn for_each_in_span<F: FnMut(&[Trit])>(basis: &TritMatrix, mut f: F) -> u64 {
    let dim = basis.rows();
    let n = basis.cols();
    let mut current = vec![Trit::ZERO; n];
    let mut digits = vec![0u8; dim];
    let mut count = 0u64;
    loop {
        f(&current);
        count += 1;
        // increment base-3 counter; adding 1 to digit d adds basis row d,
        // wrapping 2 -> 0 also adds basis row d (since 2 + 1 = 0 mod 3)
        let mut d = 0;
        while d < dim && digits[d] == 2 {
            digits[d] = 0;
            add_assign_slices(&mut current, basis.row_slice(d));
            d += 1;
        }
        if d == dim {
            break;
        }
        digits[d] += 1;
        add_assign_slices(&mut current, basis.row_slice(d));
    }
    count
}
