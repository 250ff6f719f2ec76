//! Search for maximal triorthogonal spaces of small size.
//!
//! The exhaustive mode grows spaces one generator at a time in breadth-first
//! order, deduplicating by canonical row-space form, and reduces the maximal
//! finds into coordinate-permutation classes at the end. The randomized mode
//! grows spaces by sampled extensions with restarts and is suitable for sizes
//! where exhaustive enumeration is out of reach.

use std::collections::HashSet;
use std::path::{Path, PathBuf};

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf3::{RowSpace, Trit, TritMatrix, TritVector};
use crate::space::{
    extension_linear_kernel, extension_quad_ok, extension_scan, is_maximal, MaximalityStatus,
    TriorthogonalSpace, DEFAULT_ENUMERATION_BUDGET,
};

/// Default cap on node expansions.
pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000;
/// Sampling attempts per extension step in randomized mode.
const RANDOM_EXTENSION_ATTEMPTS: usize = 2_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchMode {
    Exhaustive,
    Randomized { restarts: usize, seed: u64 },
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub n: usize,
    /// Minimum dimension of reported spaces; floor(n / 3) asks the
    /// low-overhead question.
    pub kappa_min: usize,
    /// Node-expansion cap.
    pub budget: u64,
    pub mode: SearchMode,
}

impl SearchConfig {
    pub fn exhaustive(n: usize, kappa_min: usize) -> SearchConfig {
        SearchConfig {
            n,
            kappa_min,
            budget: DEFAULT_NODE_BUDGET,
            mode: SearchMode::Exhaustive,
        }
    }

    pub fn randomized(n: usize, kappa_min: usize, restarts: usize, seed: u64) -> SearchConfig {
        SearchConfig {
            n,
            kappa_min,
            budget: DEFAULT_NODE_BUDGET,
            mode: SearchMode::Randomized { restarts, seed },
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidDimension("search length must be >= 1".into()));
        }
        if self.kappa_min == 0 {
            return Err(Error::InvalidDimension("kappa_min must be >= 1".into()));
        }
        Ok(())
    }
}

/// One permutation class of found spaces.
#[derive(Clone, Debug)]
pub struct SearchEntry {
    pub space: TriorthogonalSpace,
    pub status: MaximalityStatus,
    /// Zero coordinate or disjoint-support direct sum; flagged, not dropped.
    pub trivial: bool,
    /// Number of row-space-distinct spaces collapsed into this class.
    pub class_size: usize,
}

#[derive(Clone, Debug)]
pub struct SearchReport {
    pub n: usize,
    pub kappa_min: usize,
    pub entries: Vec<SearchEntry>,
    pub nodes_expanded: u64,
    /// True only for a completed exhaustive run.
    pub exhausted: bool,
    /// Distinct non-maximal spaces that met the dimension filter anyway;
    /// reported because the dimension-only reading of the question differs.
    pub dimension_only_hits: u64,
}

impl SearchReport {
    pub fn nontrivial_entries(&self) -> impl Iterator<Item = &SearchEntry> {
        self.entries.iter().filter(|e| !e.trivial)
    }
}

/// Resumable state of an interrupted exhaustive run.
#[derive(Serialize, Deserialize)]
pub struct SearchCheckpoint {
    pub n: usize,
    pub kappa_min: usize,
    frontier: Vec<String>,
    visited: Vec<String>,
    maximal: Vec<String>,
    nodes_expanded: u64,
    dimension_only_hits: u64,
}

impl SearchCheckpoint {
    pub fn save(&self, path: &Path) -> Result<()> {
        let file = std::fs::File::create(path)?;
        serde_json::to_writer(std::io::BufWriter::new(file), self)?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<SearchCheckpoint> {
        let file = std::fs::File::open(path)?;
        Ok(serde_json::from_reader(std::io::BufReader::new(file))?)
    }
}

pub fn search(config: &SearchConfig) -> Result<SearchReport> {
    let (report, _) = search_resumable(config, None)?;
    Ok(report)
}

/// Run the search; a budget-interrupted exhaustive run additionally returns a
/// checkpoint that can be passed back in to continue where it stopped.
pub fn search_resumable(
    config: &SearchConfig,
    resume: Option<SearchCheckpoint>,
) -> Result<(SearchReport, Option<SearchCheckpoint>)> {
    config.validate()?;
    match config.mode {
        SearchMode::Exhaustive => exhaustive_search(config, resume),
        SearchMode::Randomized { restarts, seed } => {
            Ok((randomized_search(config, restarts, seed)?, None))
        }
    }
}

fn space_from_text(text: &str) -> Result<TriorthogonalSpace> {
    let m = TritMatrix::from_text(text)?;
    if m.rows() == 0 {
        return Ok(TriorthogonalSpace::empty(m.cols()));
    }
    TriorthogonalSpace::new(m)
}

fn exhaustive_search(
    config: &SearchConfig,
    resume: Option<SearchCheckpoint>,
) -> Result<(SearchReport, Option<SearchCheckpoint>)> {
    let n = config.n;
    let mut visited: HashSet<String>;
    let mut frontier: Vec<TriorthogonalSpace>;
    let mut maximal_raw: Vec<TriorthogonalSpace>;
    let mut nodes_expanded: u64;
    let mut dimension_only_hits: u64;
    match resume {
        Some(cp) => {
            if cp.n != n || cp.kappa_min != config.kappa_min {
                return Err(Error::Parse(
                    "checkpoint parameters do not match the search config".into(),
                ));
            }
            visited = cp.visited.into_iter().collect();
            frontier = cp
                .frontier
                .iter()
                .map(|t| space_from_text(t))
                .collect::<Result<_>>()?;
            maximal_raw = cp
                .maximal
                .iter()
                .map(|t| space_from_text(t))
                .collect::<Result<_>>()?;
            nodes_expanded = cp.nodes_expanded;
            dimension_only_hits = cp.dimension_only_hits;
        }
        None => {
            let root = TriorthogonalSpace::empty(n);
            visited = HashSet::from([root.canonical_basis().to_text()]);
            frontier = vec![root];
            maximal_raw = Vec::new();
            nodes_expanded = 0;
            dimension_only_hits = 0;
        }
    }

    let mut scan_complete = true;
    let mut budget_hit = false;
    while !frontier.is_empty() && !budget_hit {
        let mut next = Vec::new();
        let mut idx = 0;
        while idx < frontier.len() {
            if nodes_expanded >= config.budget {
                budget_hit = true;
                break;
            }
            let space = &frontier[idx];
            idx += 1;
            nodes_expanded += 1;
            let scan = extension_scan(space, DEFAULT_ENUMERATION_BUDGET, false);
            if !scan.exhausted {
                scan_complete = false;
            }
            if scan.witnesses.is_empty() {
                if scan.exhausted && space.kappa() >= config.kappa_min {
                    maximal_raw.push(space.clone());
                }
            } else {
                if space.kappa() >= config.kappa_min {
                    dimension_only_hits += 1;
                }
                for w in &scan.witnesses {
                    let child = space.extended(w)?;
                    let key = child.canonical_basis().to_text();
                    if visited.insert(key) {
                        next.push(child);
                    }
                }
            }
        }
        if budget_hit {
            // keep the unexpanded tail of the current level
            next.extend(frontier.drain(idx..));
        }
        frontier = next;
    }

    let checkpoint = if budget_hit {
        Some(SearchCheckpoint {
            n,
            kappa_min: config.kappa_min,
            frontier: frontier
                .iter()
                .map(|s| s.canonical_basis().to_text())
                .collect(),
            visited: visited.iter().cloned().collect(),
            maximal: maximal_raw
                .iter()
                .map(|s| s.canonical_basis().to_text())
                .collect(),
            nodes_expanded,
            dimension_only_hits,
        })
    } else {
        None
    };

    let entries = reduce_to_classes(maximal_raw, |_| MaximalityStatus::Maximal);
    Ok((
        SearchReport {
            n,
            kappa_min: config.kappa_min,
            entries,
            nodes_expanded,
            exhausted: !budget_hit && scan_complete,
            dimension_only_hits,
        },
        checkpoint,
    ))
}

fn random_extension(
    space: &TriorthogonalSpace,
    rng: &mut ChaCha8Rng,
) -> Result<Option<TritVector>> {
    let kernel = extension_linear_kernel(space);
    if kernel.rank() <= space.kappa() {
        return Ok(None); // kernel is the space itself: no extension exists
    }
    let rs = space.row_space();
    for _ in 0..RANDOM_EXTENSION_ATTEMPTS {
        let mut v = TritVector::zeros(space.n());
        for r in 0..kernel.rows() {
            let c = Trit::new(rng.gen_range(0..3u8));
            if c != Trit::ZERO {
                v = v.add(&kernel.row_vec(r).scaled(c))?;
            }
        }
        if rs.contains(&v) {
            continue;
        }
        if extension_quad_ok(space, &v) {
            return Ok(Some(v));
        }
    }
    Ok(None)
}

fn randomized_search(config: &SearchConfig, restarts: usize, seed: u64) -> Result<SearchReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut found: Vec<TriorthogonalSpace> = Vec::new();
    let mut seen = HashSet::new();
    let mut nodes_expanded = 0u64;
    for _ in 0..restarts {
        let mut space = TriorthogonalSpace::empty(config.n);
        loop {
            if nodes_expanded >= config.budget {
                break;
            }
            nodes_expanded += 1;
            match random_extension(&space, &mut rng)? {
                Some(v) => space = space.extended(&v)?,
                None => {
                    // sampling stalled; a deterministic scan may still extend
                    let verdict = is_maximal(&space, DEFAULT_ENUMERATION_BUDGET);
                    match verdict.witness {
                        Some(w) => space = space.extended(&w)?,
                        None => break,
                    }
                }
            }
        }
        if space.kappa() >= config.kappa_min && seen.insert(space.canonical_basis().to_text()) {
            found.push(space);
        }
    }
    let entries = reduce_to_classes(found, |s| is_maximal(s, DEFAULT_ENUMERATION_BUDGET).status);
    // randomized entries must individually be maximal or honestly unknown
    let entries = entries
        .into_iter()
        .filter(|e| e.status != MaximalityStatus::NotMaximal)
        .collect();
    Ok(SearchReport {
        n: config.n,
        kappa_min: config.kappa_min,
        entries,
        nodes_expanded,
        exhausted: false,
        dimension_only_hits: 0,
    })
}

fn reduce_to_classes<F>(spaces: Vec<TriorthogonalSpace>, status_of: F) -> Vec<SearchEntry>
where
    F: Fn(&TriorthogonalSpace) -> MaximalityStatus,
{
    let mut entries: Vec<SearchEntry> = Vec::new();
    for space in spaces {
        match entries
            .iter_mut()
            .find(|e| permutation_equivalent(&e.space, &space))
        {
            Some(e) => e.class_size += 1,
            None => {
                let trivial = is_trivial(&space);
                let status = status_of(&space);
                entries.push(SearchEntry {
                    space,
                    status,
                    trivial,
                    class_size: 1,
                });
            }
        }
    }
    // deterministic order: by dimension descending, then canonical text
    entries.sort_by(|a, b| {
        b.space
            .kappa()
            .cmp(&a.space.kappa())
            .then_with(|| {
                a.space
                    .canonical_basis()
                    .to_text()
                    .cmp(&b.space.canonical_basis().to_text())
            })
    });
    entries
}

/// A space is trivial when some coordinate is identically zero, or when the
/// coordinates split into two nonempty parts such that the space is the
/// direct sum of its restrictions (each part then carries a smaller
/// triorthogonal space). Decided exactly by scanning coordinate subsets.
pub fn is_trivial(space: &TriorthogonalSpace) -> bool {
    let basis = space.canonical_basis();
    let n = space.n();
    let kappa = basis.rows();
    if kappa == 0 {
        return true;
    }
    for c in 0..n {
        if (0..kappa).all(|r| basis.get(r, c) == Trit::ZERO) {
            return true;
        }
    }
    // direct-sum split: rank(B|_A) + rank(B|_complement) == kappa for some
    // nonempty proper subset A; fixing coordinate 0 in A halves the scan
    debug_assert!(n <= 24, "subset scan over 2^(n-1) parts");
    for mask in 0u32..(1u32 << (n - 1)) {
        let full: u32 = ((1u64 << n) - 1) as u32;
        let a_mask = (mask << 1) | 1;
        if a_mask == full {
            continue;
        }
        let a: Vec<usize> = (0..n).filter(|i| a_mask >> i & 1 == 1).collect();
        let b: Vec<usize> = (0..n).filter(|i| a_mask >> i & 1 == 0).collect();
        if basis.select_cols(&a).rank() + basis.select_cols(&b).rank() == kappa {
            return true;
        }
    }
    false
}

/// Image of the space projected onto the ordered coordinate pair (i, j),
/// encoded as 0 (zero), 1..=4 (the four lines of F_3^2, by normalized
/// direction), or 5 (the full plane). Basis-independent, hence a permutation
/// invariant.
fn pair_code(basis: &TritMatrix, i: usize, j: usize) -> u8 {
    let mut m = TritMatrix::zeros(basis.rows(), 2);
    for r in 0..basis.rows() {
        m.set(r, 0, basis.get(r, i));
        m.set(r, 1, basis.get(r, j));
    }
    let rr = m.rref_trimmed();
    match rr.rows() {
        0 => 0,
        2 => 5,
        _ => {
            let (a, b) = (rr.get(0, 0), rr.get(0, 1));
            if a == Trit::ZERO {
                4 // the line through (0, 1)
            } else {
                1 + b.value() // lines through (1, 0), (1, 1), (1, 2)
            }
        }
    }
}

/// Per-coordinate permutation invariant: the sorted histogram of pair codes
/// against every other coordinate.
fn column_signature(basis: &TritMatrix, i: usize, n: usize) -> [u8; 7] {
    let mut hist = [0u8; 7];
    hist[6] = pair_code(basis, i, i).min(1); // zero column marker
    for j in 0..n {
        if j != i {
            hist[pair_code(basis, i, j) as usize] += 1;
        }
    }
    hist
}

/// True iff some coordinate permutation maps the row space of `s1` onto the
/// row space of `s2`. Backtracking column matching pruned by pair-projection
/// invariants, with an exact row-space check at every complete assignment.
pub fn permutation_equivalent(s1: &TriorthogonalSpace, s2: &TriorthogonalSpace) -> bool {
    let n = s1.n();
    if n != s2.n() {
        return false;
    }
    let a = s1.canonical_basis();
    let b = s2.canonical_basis();
    if a.rows() != b.rows() {
        return false;
    }
    if a == b {
        return true;
    }
    let sig_a: Vec<[u8; 7]> = (0..n).map(|i| column_signature(&a, i, n)).collect();
    let sig_b: Vec<[u8; 7]> = (0..n).map(|i| column_signature(&b, i, n)).collect();
    let mut sorted_a = sig_a.clone();
    let mut sorted_b = sig_b.clone();
    sorted_a.sort();
    sorted_b.sort();
    if sorted_a != sorted_b {
        return false;
    }
    let pair_a: Vec<Vec<u8>> = (0..n)
        .map(|i| (0..n).map(|j| pair_code(&a, i, j)).collect())
        .collect();
    let pair_b: Vec<Vec<u8>> = (0..n)
        .map(|i| (0..n).map(|j| pair_code(&b, i, j)).collect())
        .collect();
    // match rarest-signature columns first
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| sig_b.iter().filter(|s| **s == sig_a[i]).count());
    let target = RowSpace::new(&b);
    let mut assign = vec![usize::MAX; n]; // a-column -> b-column
    let mut used = vec![false; n];
    backtrack(
        &a, &target, &order, &sig_a, &sig_b, &pair_a, &pair_b, &mut assign, &mut used, 0,
    )
}

#[allow(clippy::too_many_arguments)]
fn backtrack(
    a: &TritMatrix,
    target: &RowSpace,
    order: &[usize],
    sig_a: &[[u8; 7]],
    sig_b: &[[u8; 7]],
    pair_a: &[Vec<u8>],
    pair_b: &[Vec<u8>],
    assign: &mut [usize],
    used: &mut [bool],
    depth: usize,
) -> bool {
    let n = order.len();
    if depth == n {
        // assemble the permuted matrix: column c of the result is the a-column
        // mapped to b-column c
        let mut perm = vec![0usize; n];
        for (ai, &bi) in assign.iter().enumerate() {
            perm[bi] = ai;
        }
        let permuted = a.permuted_cols(&perm);
        return RowSpace::new(&permuted) == *target;
    }
    let ai = order[depth];
    for bi in 0..n {
        if used[bi] || sig_a[ai] != sig_b[bi] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&aj| {
            let bj = assign[aj];
            pair_a[ai][aj] == pair_b[bi][bj] && pair_a[aj][ai] == pair_b[bj][bi]
        });
        if !consistent {
            continue;
        }
        assign[ai] = bi;
        used[bi] = true;
        if backtrack(
            a, target, order, sig_a, sig_b, pair_a, pair_b, assign, used, depth + 1,
        ) {
            return true;
        }
        used[bi] = false;
        assign[ai] = usize::MAX;
    }
    false
}

/// Entry of the on-disk catalog index.
#[derive(Serialize, Deserialize)]
pub struct CatalogIndexEntry {
    pub file: String,
    pub kappa: usize,
    pub maximal: String,
    pub trivial: bool,
    pub class_size: usize,
}

#[derive(Serialize, Deserialize)]
pub struct CatalogIndex {
    pub n: usize,
    pub kappa_min: usize,
    pub nodes_expanded: u64,
    pub exhausted: bool,
    pub entries: Vec<CatalogIndexEntry>,
}

/// Write one matrix file per representative plus an `index.json`; returns the
/// paths written.
pub fn write_catalog(report: &SearchReport, dir: &Path) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let mut paths = Vec::new();
    let mut index_entries = Vec::new();
    for (i, entry) in report.entries.iter().enumerate() {
        let file = format!("space_{:03}.txt", i);
        let path = dir.join(&file);
        std::fs::write(&path, entry.space.canonical_basis().to_text())?;
        index_entries.push(CatalogIndexEntry {
            file,
            kappa: entry.space.kappa(),
            maximal: match entry.status {
                MaximalityStatus::Maximal => "maximal",
                MaximalityStatus::NotMaximal => "not-maximal",
                MaximalityStatus::Inconclusive => "inconclusive",
            }
            .to_string(),
            trivial: entry.trivial,
            class_size: entry.class_size,
        });
        paths.push(path);
    }
    let index = CatalogIndex {
        n: report.n,
        kappa_min: report.kappa_min,
        nodes_expanded: report.nodes_expanded,
        exhausted: report.exhausted,
        entries: index_entries,
    };
    let index_path = dir.join("index.json");
    std::fs::write(&index_path, serde_json::to_string_pretty(&index)?)?;
    paths.push(index_path);
    Ok(paths)
}
