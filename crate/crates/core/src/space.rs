//! Ternary triorthogonal spaces: construction of the blockwise family,
//! verification, maximality testing, and puncturing into triorthogonal
//! matrices.

use crate::error::{Error, Result};
use crate::gf3::{dot, triple_dot, RowSpace, Trit, TritMatrix, TritVector};

/// Default cap on candidate extension vectors examined by [`is_maximal`].
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 531_441; // 3^12

/// A self-orthogonal subspace of GF(3)^n whose generator triples all have
/// vanishing triple products.
///
/// The basis is kept exactly as supplied (generator rows, full rank); space
/// equality is row-space equality, and [`TriorthogonalSpace::canonical_basis`]
/// gives the unique RREF form when a canonical representative is needed.
#[derive(Clone, Debug)]
pub struct TriorthogonalSpace {
    basis: TritMatrix,
}

impl TriorthogonalSpace {
    /// Validate and wrap a generator matrix. Requires full rank and
    /// triorthogonality of the rows.
    pub fn new(basis: TritMatrix) -> Result<TriorthogonalSpace> {
        let rank = basis.rank();
        if rank != basis.rows() {
            return Err(Error::RankDeficient {
                rank,
                rows: basis.rows(),
            });
        }
        if !is_triorthogonal(&basis) {
            return Err(Error::InvalidDimension(
                "basis rows are not triorthogonal".into(),
            ));
        }
        Ok(TriorthogonalSpace { basis })
    }

    /// Zero-dimensional space, used as the search root.
    pub fn empty(n: usize) -> TriorthogonalSpace {
        TriorthogonalSpace {
            basis: TritMatrix::zeros(0, n),
        }
    }

    pub fn n(&self) -> usize {
        self.basis.cols()
    }

    pub fn kappa(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &TritMatrix {
        &self.basis
    }

    /// Canonical RREF basis; two spaces are equal iff these agree.
    pub fn canonical_basis(&self) -> TritMatrix {
        self.basis.rref_trimmed()
    }

    pub fn row_space(&self) -> RowSpace {
        RowSpace::new(&self.basis)
    }

    pub fn row_space_eq(&self, other: &TriorthogonalSpace) -> bool {
        self.canonical_basis() == other.canonical_basis()
    }

    /// Space extended by one generator. The caller must have checked that the
    /// extension preserves triorthogonality.
    pub fn extended(&self, v: &TritVector) -> Result<TriorthogonalSpace> {
        let mut rows = self.basis.row_vecs();
        rows.push(v.clone());
        TriorthogonalSpace::new(TritMatrix::from_rows(&rows)?)
    }
}

/// True iff every pair of rows has vanishing inner product and every multiset
/// of three rows has vanishing triple product. By bilinearity/trilinearity
/// this extends to the whole span.
pub fn is_triorthogonal(basis: &TritMatrix) -> bool {
    let k = basis.rows();
    let rows: Vec<TritVector> = basis.row_vecs();
    for a in 0..k {
        for b in a..k {
            if dot(&rows[a], &rows[b]).unwrap() != Trit::ZERO {
                return false;
            }
            for c in b..k {
                if triple_dot(&rows[a], &rows[b], &rows[c]).unwrap() != Trit::ZERO {
                    return false;
                }
            }
        }
    }
    true
}

/// The 9m-trit triorthogonal space of dimension 3m spanned by the repeating
/// vector (0,1,2,0,1,2,...) together with the 3m-1 block vectors that are 1 on
/// one length-3 block and 2 on the final block.
pub fn family_space(m: usize) -> Result<TriorthogonalSpace> {
    if m < 1 {
        return Err(Error::InvalidDimension("m must be at least 1".into()));
    }
    let n = 9 * m;
    let mut rows = Vec::with_capacity(3 * m);
    let w: Vec<u8> = (0..n).map(|i| (i % 3) as u8).collect();
    rows.push(TritVector::from_digits(&w));
    for a in 1..3 * m {
        let mut v = vec![0u8; n];
        for i in 3 * (a - 1)..3 * a {
            v[i] = 1;
        }
        for i in n - 3..n {
            v[i] = 2;
        }
        rows.push(TritVector::from_digits(&v));
    }
    TriorthogonalSpace::new(TritMatrix::from_rows(&rows)?)
}

/// Strictly increasing list of 1-indexed coordinates to puncture.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PunctureSet {
    coords: Vec<usize>,
}

impl PunctureSet {
    pub fn new(mut coords: Vec<usize>) -> Result<PunctureSet> {
        coords.sort_unstable();
        for pair in coords.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::DuplicatePuncture(pair[0]));
            }
        }
        if let Some(&0) = coords.first() {
            return Err(Error::InvalidPuncture { coord: 0, n: 0 });
        }
        Ok(PunctureSet { coords })
    }

    pub fn empty() -> PunctureSet {
        PunctureSet { coords: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// 1-indexed coordinates, ascending.
    pub fn coords(&self) -> &[usize] {
        &self.coords
    }

    fn validate_for(&self, n: usize) -> Result<()> {
        for &c in &self.coords {
            if c < 1 || c > n {
                return Err(Error::InvalidPuncture { coord: c, n });
            }
        }
        Ok(())
    }
}

/// The distance-2 puncture pattern for the blockwise family: coordinates
/// 3j+1 for 0 <= j < k, valid for k <= 3m-2.
pub fn default_punctures(m: usize, k: usize) -> Result<PunctureSet> {
    let max = 3 * m - 2;
    if k > max {
        return Err(Error::PunctureCountOutOfRange { m, k, max });
    }
    PunctureSet::new((0..k).map(|j| 3 * j + 1).collect())
}

/// A punctured generator matrix, partitioned into the non-self-orthogonal
/// rows (H1, future logical representatives) and the self-orthogonal rows
/// (H0, future X stabilizers). Rows are stored H1-first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriorthogonalMatrix {
    h: TritMatrix,
    h1_count: usize,
}

impl TriorthogonalMatrix {
    /// Assemble from explicit partition rows. Every H0 row must be
    /// self-orthogonal and every H1 row must not be.
    pub fn from_partition(h1: Vec<TritVector>, h0: Vec<TritVector>) -> Result<TriorthogonalMatrix> {
        for r in &h1 {
            if dot(r, r)? == Trit::ZERO {
                return Err(Error::InvalidDimension(
                    "H1 row is self-orthogonal".into(),
                ));
            }
        }
        for r in &h0 {
            if dot(r, r)? != Trit::ZERO {
                return Err(Error::InvalidDimension(
                    "H0 row is not self-orthogonal".into(),
                ));
            }
        }
        let h1_count = h1.len();
        let mut rows = h1;
        rows.extend(h0);
        Ok(TriorthogonalMatrix {
            h: TritMatrix::from_rows(&rows)?,
            h1_count,
        })
    }

    pub fn h(&self) -> &TritMatrix {
        &self.h
    }

    pub fn cols(&self) -> usize {
        self.h.cols()
    }

    pub fn h1_count(&self) -> usize {
        self.h1_count
    }

    pub fn h0_count(&self) -> usize {
        self.h.rows() - self.h1_count
    }

    pub fn h1_rows(&self) -> Vec<TritVector> {
        (0..self.h1_count).map(|r| self.h.row_vec(r)).collect()
    }

    pub fn h0_rows(&self) -> Vec<TritVector> {
        (self.h1_count..self.h.rows())
            .map(|r| self.h.row_vec(r))
            .collect()
    }

    /// Serialized form: a "H1 <count> H0 <count>" header, then the matrix in
    /// the shared text format (H1 rows first).
    pub fn to_text(&self) -> String {
        format!(
            "H1 {} H0 {}\n{}",
            self.h1_count,
            self.h0_count(),
            self.h.to_text()
        )
    }

    pub fn from_text(text: &str) -> Result<TriorthogonalMatrix> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty triorthogonal matrix text".into()))?;
        let toks: Vec<&str> = header.split_whitespace().collect();
        if toks.len() != 4 || toks[0] != "H1" || toks[2] != "H0" {
            return Err(Error::Parse(format!("bad partition header: {header}")));
        }
        let h1_count: usize = toks[1]
            .parse()
            .map_err(|_| Error::Parse(format!("bad H1 count: {}", toks[1])))?;
        let h0_count: usize = toks[3]
            .parse()
            .map_err(|_| Error::Parse(format!("bad H0 count: {}", toks[3])))?;
        let rest: String = lines.collect::<Vec<_>>().join("\n");
        let h = TritMatrix::from_text(&rest)?;
        if h.rows() != h1_count + h0_count {
            return Err(Error::Parse("partition counts do not match matrix".into()));
        }
        let tm = TriorthogonalMatrix { h, h1_count };
        // re-validate the partition
        TriorthogonalMatrix::from_partition(tm.h1_rows(), tm.h0_rows())
    }
}

/// Delete the punctured columns of the basis and classify the surviving rows
/// by self-inner-product. Column order of survivors is preserved.
pub fn puncture(
    space: &TriorthogonalSpace,
    punctures: &PunctureSet,
) -> Result<TriorthogonalMatrix> {
    punctures.validate_for(space.n())?;
    let keep: Vec<usize> = (0..space.n())
        .filter(|i| !punctures.coords().contains(&(i + 1)))
        .collect();
    let punctured = space.basis().select_cols(&keep);
    let mut h1 = Vec::new();
    let mut h0 = Vec::new();
    for r in 0..punctured.rows() {
        let row = punctured.row_vec(r);
        if dot(&row, &row)? == Trit::ZERO {
            h0.push(row);
        } else {
            h1.push(row);
        }
    }
    TriorthogonalMatrix::from_partition(h1, h0)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MaximalityStatus {
    Maximal,
    NotMaximal,
    Inconclusive,
}

/// Outcome of a maximality check.
#[derive(Clone, Debug)]
pub struct MaximalityVerdict {
    pub status: MaximalityStatus,
    /// An extension vector preserving triorthogonality, when one exists.
    pub witness: Option<TritVector>,
    /// Number of candidate extension vectors examined.
    pub enumerated_count: u64,
}

/// Result of scanning for extension vectors of a triorthogonal space.
pub(crate) struct ExtensionScan {
    pub witnesses: Vec<TritVector>,
    pub examined: u64,
    pub exhausted: bool,
}

/// Find vectors v such that the space extended by v is still triorthogonal.
///
/// The conditions linear in v (orthogonality to each generator, vanishing
/// triple product against each generator pair, and zero entry sum, which is
/// the self-triple condition since x^3 = x) are solved exactly as a kernel.
/// The space itself always lies in that kernel; candidates are the nonzero
/// coset representatives, filtered by the residual quadratic conditions
/// dot(v, v) = 0 and triple(v, v, h) = 0 for every generator h.
///
/// When `stop_at_first` is set the scan returns after the first witness.
/// Kernel of the conditions linear in an extension vector v: orthogonality to
/// each generator, vanishing triple product against each generator pair, and
/// zero entry sum (the self-triple condition, since x^3 = x). The space itself
/// always lies inside this kernel.
pub(crate) fn extension_linear_kernel(space: &TriorthogonalSpace) -> TritMatrix {
    let n = space.n();
    let rows = space.basis().row_vecs();
    let mut constraint_rows: Vec<TritVector> = Vec::new();
    for r in &rows {
        constraint_rows.push(r.clone());
    }
    for a in 0..rows.len() {
        for b in a..rows.len() {
            constraint_rows.push(rows[a].hadamard(&rows[b]).unwrap());
        }
    }
    constraint_rows.push(TritVector::from_digits(&vec![1u8; n]));
    let constraints = TritMatrix::from_rows(&constraint_rows).unwrap();
    constraints.kernel()
}

/// The residual quadratic extension conditions: dot(v, v) = 0 and
/// triple(v, v, h) = 0 for every generator h.
pub(crate) fn extension_quad_ok(space: &TriorthogonalSpace, v: &TritVector) -> bool {
    if dot(v, v).unwrap() != Trit::ZERO {
        return false;
    }
    space
        .basis()
        .row_vecs()
        .iter()
        .all(|h| triple_dot(v, v, h).unwrap() == Trit::ZERO)
}

pub(crate) fn extension_scan(
    space: &TriorthogonalSpace,
    budget: u64,
    stop_at_first: bool,
) -> ExtensionScan {
    let rows = space.basis().row_vecs();
    let linear_kernel = extension_linear_kernel(space);

    // complement of the space inside the kernel
    let space_rs = space.row_space();
    let mut complement: Vec<TritVector> = Vec::new();
    {
        let mut accum: Vec<TritVector> = space.basis().row_vecs();
        let mut rank = space.kappa();
        for i in 0..linear_kernel.rows() {
            let cand = linear_kernel.row_vec(i);
            let mut trial = accum.clone();
            trial.push(cand.clone());
            let m = TritMatrix::from_rows(&trial).unwrap();
            if m.rank() > rank {
                rank = m.rank();
                accum = trial;
                complement.push(cand);
            }
        }
    }
    debug_assert!(space_rs.dim() + complement.len() == linear_kernel.rank());

    let c = complement.len();
    if c == 0 {
        return ExtensionScan {
            witnesses: Vec::new(),
            examined: 0,
            exhausted: true,
        };
    }

    let quad_ok = |v: &TritVector| -> bool {
        if dot(v, v).unwrap() != Trit::ZERO {
            return false;
        }
        rows.iter()
            .all(|h| triple_dot(v, v, h).unwrap() == Trit::ZERO)
    };

    // odometer over nonzero coefficient vectors of the complement
    let comp_matrix = TritMatrix::from_rows(&complement).unwrap();
    let mut witnesses = Vec::new();
    let mut examined = 0u64;
    let mut exhausted = true;
    let mut stop = false;
    crate::gf3::for_each_in_span(&comp_matrix, |e| {
        if stop || e.iter().all(|t| t.is_zero()) {
            return;
        }
        if examined >= budget {
            exhausted = false;
            stop = true;
            return;
        }
        examined += 1;
        let v = TritVector::from_trits(e.to_vec());
        if quad_ok(&v) {
            witnesses.push(v);
            if stop_at_first {
                stop = true;
            }
        }
    });
    if stop_at_first && !witnesses.is_empty() {
        // finding any witness answers the maximality question conclusively
        exhausted = true;
    }
    ExtensionScan {
        witnesses,
        examined,
        exhausted,
    }
}

/// Decide whether the space admits any triorthogonality-preserving extension
/// vector, examining at most `enumeration_budget` candidates. Budget
/// exhaustion is reported in-band as `Inconclusive`.
pub fn is_maximal(space: &TriorthogonalSpace, enumeration_budget: u64) -> MaximalityVerdict {
    let scan = extension_scan(space, enumeration_budget, true);
    if let Some(w) = scan.witnesses.into_iter().next() {
        return MaximalityVerdict {
            status: MaximalityStatus::NotMaximal,
            witness: Some(w),
            enumerated_count: scan.examined,
        };
    }
    MaximalityVerdict {
        status: if scan.exhausted {
            MaximalityStatus::Maximal
        } else {
            MaximalityStatus::Inconclusive
        },
        witness: None,
        enumerated_count: scan.examined,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force maximality oracle: try every vector in GF(3)^n.
    fn maximal_by_brute_force(space: &TriorthogonalSpace) -> Option<TritVector> {
        let n = space.n();
        let rows = space.basis().row_vecs();
        let rs = space.row_space();
        let id = TritMatrix::identity(n);
        let mut witness = None;
        crate::gf3::for_each_in_span(&id, |e| {
            if witness.is_some() {
                return;
            }
            let v = TritVector::from_trits(e.to_vec());
            if v.is_zero() || rs.contains(&v) {
                return;
            }
            let mut ok = dot(&v, &v).unwrap() == Trit::ZERO
                && triple_dot(&v, &v, &v).unwrap() == Trit::ZERO;
            for h in &rows {
                if !ok {
                    break;
                }
                ok &= dot(&v, h).unwrap() == Trit::ZERO
                    && triple_dot(&v, &v, h).unwrap() == Trit::ZERO;
                for h2 in &rows {
                    ok &= triple_dot(&v, h, h2).unwrap() == Trit::ZERO;
                }
            }
            if ok {
                witness = Some(v);
            }
        });
        witness
    }

    #[test]
    fn family_m1_contains_w() {
        let s = family_space(1).unwrap();
        assert_eq!(s.n(), 9);
        assert_eq!(s.kappa(), 3);
        let w = TritVector::from_digits(&[0, 1, 2, 0, 1, 2, 0, 1, 2]);
        assert!(s.row_space().contains(&w));
    }

    #[test]
    fn family_m2_matches_explicit_matrix() {
        let s = family_space(2).unwrap();
        #[rustfmt::skip]
        let explicit = TritMatrix::from_digits(6, 18, &[
            0,1,2,0,1,2,0,1,2,0,1,2,0,1,2,0,1,2,
            1,1,1,0,0,0,0,0,0,0,0,0,0,0,0,2,2,2,
            0,0,0,1,1,1,0,0,0,0,0,0,0,0,0,2,2,2,
            0,0,0,0,0,0,1,1,1,0,0,0,0,0,0,2,2,2,
            0,0,0,0,0,0,0,0,0,1,1,1,0,0,0,2,2,2,
            0,0,0,0,0,0,0,0,0,0,0,0,1,1,1,2,2,2,
        ]);
        assert_eq!(s.canonical_basis(), explicit.rref_trimmed());
        // in this instance the rows coincide as sets, not just as a span
        let mut ours = s.basis().row_vecs();
        let mut theirs = explicit.row_vecs();
        ours.sort();
        theirs.sort();
        assert_eq!(ours, theirs);
    }

    #[test]
    fn family_is_triorthogonal_up_to_m8() {
        for m in 1..=8 {
            let s = family_space(m).unwrap();
            assert_eq!(s.kappa(), 3 * m);
            assert!(is_triorthogonal(s.basis()), "m = {m}");
        }
    }

    #[test]
    fn single_row_triorthogonality() {
        let ok = TritMatrix::from_digits(1, 3, &[1, 1, 1]);
        assert!(is_triorthogonal(&ok));
        let bad = TritMatrix::from_digits(1, 3, &[1, 0, 0]);
        assert!(!is_triorthogonal(&bad));
    }

    #[test]
    fn default_puncture_patterns() {
        assert_eq!(default_punctures(2, 4).unwrap().coords(), &[1, 4, 7, 10]);
        assert!(default_punctures(2, 0).unwrap().is_empty());
        assert_eq!(
            default_punctures(3, 7).unwrap().coords(),
            &[1, 4, 7, 10, 13, 16, 19]
        );
        assert!(matches!(
            default_punctures(2, 5),
            Err(Error::PunctureCountOutOfRange { .. })
        ));
    }

    #[test]
    fn puncture_m2_matches_printed_h() {
        let s = family_space(2).unwrap();
        let tm = puncture(&s, &default_punctures(2, 4).unwrap()).unwrap();
        assert_eq!(tm.h1_count(), 4);
        assert_eq!(tm.h0_count(), 2);
        #[rustfmt::skip]
        let h1_expected = TritMatrix::from_digits(4, 14, &[
            1,1,0,0,0,0,0,0,0,0,0,2,2,2,
            0,0,1,1,0,0,0,0,0,0,0,2,2,2,
            0,0,0,0,1,1,0,0,0,0,0,2,2,2,
            0,0,0,0,0,0,1,1,0,0,0,2,2,2,
        ]);
        #[rustfmt::skip]
        let h0_expected = TritMatrix::from_digits(2, 14, &[
            1,2,1,2,1,2,1,2,0,1,2,0,1,2,
            0,0,0,0,0,0,0,0,1,1,1,2,2,2,
        ]);
        let mut h1 = tm.h1_rows();
        let mut e1 = h1_expected.row_vecs();
        h1.sort();
        e1.sort();
        assert_eq!(h1, e1);
        let mut h0 = tm.h0_rows();
        let mut e0 = h0_expected.row_vecs();
        h0.sort();
        e0.sort();
        assert_eq!(h0, e0);
    }

    #[test]
    fn empty_puncture_keeps_everything_self_orthogonal() {
        let s = family_space(1).unwrap();
        let tm = puncture(&s, &PunctureSet::empty()).unwrap();
        assert_eq!(tm.h1_count(), 0);
        assert_eq!(tm.h().rows(), 3);
        assert_eq!(tm.h(), s.basis());
    }

    #[test]
    fn puncture_m3_seven_coords() {
        let s = family_space(3).unwrap();
        let tm = puncture(&s, &default_punctures(3, 7).unwrap()).unwrap();
        assert_eq!(tm.h().rows(), 9);
        assert_eq!(tm.cols(), 20);
        assert_eq!(tm.h1_count(), 7);
    }

    #[test]
    fn default_punctures_put_exactly_punctured_rows_in_h1() {
        for m in 1..=8 {
            let s = family_space(m).unwrap();
            for k in 0..=3 * m - 2 {
                let tm = puncture(&s, &default_punctures(m, k).unwrap()).unwrap();
                assert_eq!(tm.h1_count(), k, "m = {m}, k = {k}");
            }
        }
    }

    #[test]
    fn h0_rows_orthogonal_to_all_of_h() {
        for m in 1..=6 {
            let s = family_space(m).unwrap();
            for k in [1, 3 * m - 2] {
                let tm = puncture(&s, &default_punctures(m, k).unwrap()).unwrap();
                for h0 in tm.h0_rows() {
                    for r in 0..tm.h().rows() {
                        assert_eq!(dot(&h0, &tm.h().row_vec(r)).unwrap(), Trit::ZERO);
                    }
                }
            }
        }
    }

    #[test]
    fn puncture_rejects_bad_coords() {
        let s = family_space(1).unwrap();
        assert!(puncture(&s, &PunctureSet::new(vec![10]).unwrap()).is_err());
        assert!(PunctureSet::new(vec![1, 1]).is_err());
    }

    #[test]
    fn family_spaces_are_maximal() {
        for m in 1..=2 {
            let s = family_space(m).unwrap();
            let v = is_maximal(&s, DEFAULT_ENUMERATION_BUDGET);
            assert_eq!(v.status, MaximalityStatus::Maximal, "m = {m}");
        }
    }

    #[test]
    fn maximality_agrees_with_brute_force_small() {
        // 1-dim space at n = 6
        let s = TriorthogonalSpace::new(TritMatrix::from_digits(1, 6, &[1, 1, 1, 2, 2, 2]))
            .unwrap();
        let fast = is_maximal(&s, 1_000_000);
        let brute = maximal_by_brute_force(&s);
        match (&fast.status, &brute) {
            (MaximalityStatus::Maximal, None) => {}
            (MaximalityStatus::NotMaximal, Some(_)) => {
                let w = fast.witness.as_ref().unwrap();
                assert!(s.extended(w).is_ok());
                assert!(is_triorthogonal(s.extended(w).unwrap().basis()));
            }
            other => panic!("disagreement: {other:?}"),
        }
    }

    #[test]
    fn maximality_cross_check_various_small_spaces() {
        let candidates = [
            (3usize, vec![1u8, 1, 1]),
            (6, vec![1, 1, 1, 1, 1, 1]),
            (7, vec![1, 1, 1, 2, 2, 2, 0]),
        ];
        for (n, digits) in candidates {
            let m = TritMatrix::from_digits(1, n, &digits);
            if !is_triorthogonal(&m) {
                continue;
            }
            let s = TriorthogonalSpace::new(m).unwrap();
            let fast = is_maximal(&s, 1_000_000);
            let brute = maximal_by_brute_force(&s);
            assert_eq!(
                fast.status == MaximalityStatus::Maximal,
                brute.is_none(),
                "n = {n}"
            );
        }
    }

    #[test]
    fn not_maximal_witness_extends_space() {
        // a 1-dim subspace of the m=1 family space must not be maximal
        let fam = family_space(1).unwrap();
        let sub =
            TriorthogonalSpace::new(TritMatrix::from_rows(&[fam.basis().row_vec(1)]).unwrap())
                .unwrap();
        let v = is_maximal(&sub, DEFAULT_ENUMERATION_BUDGET);
        assert_eq!(v.status, MaximalityStatus::NotMaximal);
        let w = v.witness.unwrap();
        let ext = sub.extended(&w).unwrap();
        assert_eq!(ext.kappa(), 2);
        assert!(is_triorthogonal(ext.basis()));
    }

    #[test]
    fn zero_budget_is_inconclusive_on_extendable_space() {
        let fam = family_space(1).unwrap();
        let sub =
            TriorthogonalSpace::new(TritMatrix::from_rows(&[fam.basis().row_vec(1)]).unwrap())
                .unwrap();
        let v = is_maximal(&sub, 0);
        assert_eq!(v.status, MaximalityStatus::Inconclusive);
    }

    #[test]
    fn triorthogonal_matrix_text_round_trip() {
        let s = family_space(2).unwrap();
        let tm = puncture(&s, &default_punctures(2, 4).unwrap()).unwrap();
        let text = tm.to_text();
        assert!(text.starts_with("H1 4 H0 2\n"));
        assert_eq!(TriorthogonalMatrix::from_text(&text).unwrap(), tm);
    }
}
