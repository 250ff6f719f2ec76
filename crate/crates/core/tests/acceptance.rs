//! Acceptance gate: one test per release criterion, each printing a single
//! PASS/FAIL line (visible under `--nocapture`). Tolerances are pinned here
//! and deliberately not shared with unit tests.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use triortho::code::{distance_z, family_code, family_yield, yield_param};
use triortho::distill::{
    basin_grid, class_probs_bruteforce, class_probs_charsum, depolarizing_threshold,
    BasinLabel, DiagonalChannel, DistillationMap, NoisePoint, Orientation,
};
use triortho::gf3::{RowSpace, Trit, TritMatrix, TritVector};
use triortho::search::{permutation_equivalent, search, SearchConfig};
use triortho::space::{
    default_punctures, family_space, is_maximal, is_triorthogonal, puncture, MaximalityStatus,
    DEFAULT_ENUMERATION_BUDGET,
};
use triortho::statevec::{simulate_one_round, transversal_t_check, transversal_t_logical};
use triortho::wigner::{operator_identity_residual, polytope_depolarizing_bound};

fn report(criterion: &str, outcome: Result<String, String>) {
    match outcome {
        Ok(detail) => println!("[PASS] {criterion}: {detail}"),
        Err(detail) => {
            println!("[FAIL] {criterion}: {detail}");
            panic!("{criterion} failed: {detail}");
        }
    }
}

fn random_channel(rng: &mut ChaCha8Rng) -> DiagonalChannel {
    let a: f64 = rng.gen();
    let b: f64 = rng.gen();
    let c: f64 = rng.gen();
    let s = a + b + c;
    DiagonalChannel::new(a / s, b / s, c / s).unwrap()
}

/// The printed 6x18 generator matrix of the m = 2 space.
fn printed_generator() -> TritMatrix {
    TritMatrix::from_digits(
        6,
        18,
        &[
            0, 1, 2, 0, 1, 2, 0, 1, 2, 0, 1, 2, 0, 1, 2, 0, 1, 2, //
            1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 2, 2, 2, //
            0, 0, 0, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 2, 2, 2, //
            0, 0, 0, 0, 0, 0, 1, 1, 1, 0, 0, 0, 0, 0, 0, 2, 2, 2, //
            0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 0, 0, 0, 2, 2, 2, //
            0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 2, 2, 2,
        ],
    )
}

/// The printed 6x14 punctured matrix: four H1 rows, then two H0 rows.
fn printed_h() -> (Vec<Vec<u8>>, Vec<Vec<u8>>) {
    let h1 = vec![
        vec![1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 2, 2, 2],
        vec![0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 2, 2, 2],
        vec![0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 2, 2, 2],
        vec![0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 2, 2, 2],
    ];
    let h0 = vec![
        vec![1, 2, 1, 2, 1, 2, 1, 2, 0, 1, 2, 0, 1, 2],
        vec![0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 2, 2, 2],
    ];
    (h1, h0)
}

#[test]
fn criterion_01_golden_matrices() {
    report("criterion-01 golden matrices", (|| {
        let space = family_space(2).map_err(|e| e.to_string())?;
        if RowSpace::new(space.basis()) != RowSpace::new(&printed_generator()) {
            return Err("m = 2 generator row space differs from the printed matrix".into());
        }
        let punctures = default_punctures(2, 4).map_err(|e| e.to_string())?;
        if punctures.coords() != [1, 4, 7, 10] {
            return Err(format!("unexpected default punctures {:?}", punctures.coords()));
        }
        let tm = puncture(&space, &punctures).map_err(|e| e.to_string())?;
        let (h1, h0) = printed_h();
        if tm.h1_rows().len() != 4 || tm.h0_rows().len() != 2 {
            return Err(format!(
                "partition sizes {} / {}",
                tm.h1_rows().len(),
                tm.h0_rows().len()
            ));
        }
        let as_digits = |rows: &[TritVector]| -> Vec<Vec<u8>> {
            rows.iter()
                .map(|r| (0..r.len()).map(|i| r.get(i).value()).collect())
                .collect()
        };
        let mut got_h1 = as_digits(&tm.h1_rows());
        let mut got_h0 = as_digits(&tm.h0_rows());
        let (mut want_h1, mut want_h0) = (h1, h0);
        got_h1.sort();
        got_h0.sort();
        want_h1.sort();
        want_h0.sort();
        if got_h1 != want_h1 || got_h0 != want_h0 {
            return Err("punctured rows differ from the printed H".into());
        }
        Ok("6x18 generator and 6x14 H match exactly".into())
    })());
}

#[test]
fn criterion_02_family_verification() {
    report("criterion-02 family verification", (|| {
        for m in 1..=8 {
            let space = family_space(m).map_err(|e| e.to_string())?;
            if !is_triorthogonal(space.basis()) {
                return Err(format!("T_{m} is not triorthogonal"));
            }
            if m <= 4 {
                let v = is_maximal(&space, DEFAULT_ENUMERATION_BUDGET);
                if v.status != MaximalityStatus::Maximal {
                    return Err(format!("T_{m} maximality verdict {:?}", v.status));
                }
            }
            for k in 1..=3 * m - 2 {
                let code = family_code(m, k).map_err(|e| e.to_string())?;
                let d = distance_z(&code).map_err(|e| e.to_string())?;
                if d != 2 {
                    return Err(format!("[{}, {}] has distance {}", code.n(), k, d));
                }
            }
        }
        Ok("m <= 8 triorthogonal, m <= 4 maximal, all punctured codes distance 2".into())
    })());
}

#[test]
fn criterion_03_yield_values() {
    report("criterion-03 yield values", (|| {
        for (n, k, d, want) in [
            (15, 1, 3, 2.465),
            (14, 4, 2, 1.807),
            (20, 7, 2, 1.514),
            (50, 22, 2, 1.184),
        ] {
            let got = yield_param(n, k, d).map_err(|e| e.to_string())?;
            if (got - want).abs() > 5e-3 {
                return Err(format!("gamma({n},{k},{d}) = {got:.4}, want {want}"));
            }
        }
        for m in 1..=10_000usize {
            let closed = (2.0 + 6.0 / (3.0 * m as f64 - 2.0)).log2();
            if (family_yield(m) - closed).abs() > 1e-12 {
                return Err(format!("family_yield({m}) deviates from the closed form"));
            }
        }
        Ok("four golden gammas within 0.005; closed form to 1e-12 for m <= 1e4".into())
    })());
}

#[test]
fn criterion_04_oracle_equivalence() {
    report("criterion-04 oracle equivalence", (|| {
        let small = family_code(1, 1).map_err(|e| e.to_string())?;
        let mut rng = ChaCha8Rng::seed_from_u64(40);
        let mut worst_small = 0.0f64;
        for _ in 0..20 {
            let ch = random_channel(&mut rng);
            let brute = class_probs_bruteforce(&small, &ch).map_err(|e| e.to_string())?;
            let charsum = class_probs_charsum(&small, &ch).map_err(|e| e.to_string())?;
            let sim = simulate_one_round(&small, &ch).map_err(|e| e.to_string())?;
            worst_small = worst_small
                .max(brute.max_abs_diff(&charsum))
                .max(brute.max_abs_diff(&sim));
        }
        if worst_small > 1e-12 {
            return Err(format!("[8,1] three-route deviation {worst_small:.2e}"));
        }
        let big = family_code(2, 1).map_err(|e| e.to_string())?;
        let mut worst_big = 0.0f64;
        for _ in 0..5 {
            let ch = random_channel(&mut rng);
            let brute = class_probs_bruteforce(&big, &ch).map_err(|e| e.to_string())?;
            let charsum = class_probs_charsum(&big, &ch).map_err(|e| e.to_string())?;
            worst_big = worst_big.max(brute.max_abs_diff(&charsum));
        }
        if worst_big > 1e-10 {
            return Err(format!("[17,1] dual-route deviation {worst_big:.2e}"));
        }
        Ok(format!(
            "[8,1] x20 within {worst_small:.1e}; [17,1] x5 within {worst_big:.1e}"
        ))
    })());
}

#[test]
fn criterion_05_thresholds() {
    report("criterion-05 thresholds", (|| {
        let mut stars = Vec::new();
        for m in 1..=5 {
            let code = family_code(m, 1).map_err(|e| e.to_string())?;
            let run =
                depolarizing_threshold(&code, Orientation::default()).map_err(|e| e.to_string())?;
            stars.push(run.delta_star);
        }
        if (stars[0] - 0.317).abs() > 1e-3 {
            return Err(format!("[8,1] threshold {:.4}", stars[0]));
        }
        if (stars[1] - 0.353).abs() > 1e-3 {
            return Err(format!("[17,1] threshold {:.4}", stars[1]));
        }
        let max_at = stars
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .unwrap()
            .0
            + 1;
        if max_at != 2 {
            return Err(format!("sweep maximum at m = {max_at}, want 2"));
        }
        Ok(format!(
            "sweep {:?} with maximum at m = 2",
            stars.iter().map(|s| (s * 1e4).round() / 1e4).collect::<Vec<_>>()
        ))
    })());
}

#[test]
fn criterion_06_quadratic_suppression() {
    report("criterion-06 quadratic suppression", (|| {
        for m in [1, 2] {
            let code = family_code(m, 1).map_err(|e| e.to_string())?;
            let map =
                DistillationMap::new(&code, Orientation::default()).map_err(|e| e.to_string())?;
            let hi = map
                .apply(NoisePoint::depolarizing(1e-3))
                .map_err(|e| e.to_string())?
                .infidelity();
            let lo = map
                .apply(NoisePoint::depolarizing(1e-4))
                .map_err(|e| e.to_string())?
                .infidelity();
            let exponent = (hi / lo).log10();
            if (exponent - 2.0).abs() > 0.05 {
                return Err(format!("m = {m}: fitted exponent {exponent:.3}"));
            }
        }
        Ok("fitted exponents 2.0 +- 0.05 for [8,1] and [17,1]".into())
    })());
}

#[test]
fn criterion_07_wigner_bound() {
    report("criterion-07 wigner bound", (|| {
        let residual = operator_identity_residual();
        if residual > 1e-12 {
            return Err(format!("operator identity residual {residual:.2e}"));
        }
        let bound = polytope_depolarizing_bound();
        if (bound - 0.467).abs() > 1e-3 {
            return Err(format!("polytope bound {bound:.4}"));
        }
        Ok(format!("identities to {residual:.1e}; bound {bound:.4}"))
    })());
}

#[test]
fn criterion_08_basin_consistency() {
    report("criterion-08 basin consistency", (|| {
        let code = family_code(2, 1).map_err(|e| e.to_string())?;
        let r = 200usize;
        let grid = basin_grid(&code, r, Orientation::default()).map_err(|e| e.to_string())?;
        // (a) no distillable label inside the polytope
        for cell in &grid.cells {
            if cell.in_polytope
                && matches!(cell.label, BasinLabel::M0 | BasinLabel::M1 | BasinLabel::M2)
            {
                return Err(format!(
                    "polytope point ({}, {}) labeled {}",
                    cell.eps1, cell.eps2, cell.label
                ));
            }
        }
        // (b) the diagonal M0/MIXED boundary sits within one step of delta*
        let delta_star = depolarizing_threshold(&code, Orientation::default())
            .map_err(|e| e.to_string())?
            .delta_star;
        let mut last_m0 = 0usize;
        for i in 0..=r / 2 {
            if grid.cell(i, i).label == BasinLabel::M0 {
                last_m0 = i;
            }
        }
        let boundary_delta = 3.0 * last_m0 as f64 / r as f64;
        if (boundary_delta - delta_star).abs() > 3.0 / r as f64 + 1e-12 {
            return Err(format!(
                "diagonal boundary at delta = {boundary_delta:.4}, threshold {delta_star:.4}"
            ));
        }
        // (c) three-fold conjugation symmetry of the labels
        for i in 0..=r {
            for j in 0..=r - i {
                let rotated = grid.cell(r - i - j, i).label;
                if rotated != grid.cell(i, j).label.rotated() {
                    return Err(format!("symmetry breaks at grid point ({i}, {j})"));
                }
            }
        }
        Ok(format!(
            "20301 points consistent; boundary {boundary_delta:.3} vs threshold {delta_star:.3}"
        ))
    })());
}

#[test]
fn criterion_09_transversality() {
    report("criterion-09 transversality", (|| {
        let code = family_code(1, 1).map_err(|e| e.to_string())?;
        let logical = transversal_t_logical(&code).map_err(|e| e.to_string())?;
        let exps = logical.ninth_root_exponents(1e-10).map_err(|e| e.to_string())?;
        let mut corrupted = code.lx().clone();
        corrupted.set(0, 0, corrupted.get(0, 0) + Trit::new(1));
        let check = transversal_t_check(&corrupted, &[TritVector::zeros(code.n())])
            .map_err(|e| e.to_string())?;
        if check.max_residual < 1e-10 {
            return Err("corrupted H passed the transversality check".into());
        }
        Ok(format!(
            "residual < 1e-10, logical diag(w9^{exps:?}); corrupted residual {:.2}",
            check.max_residual
        ))
    })());
}

#[test]
fn criterion_10_search_uniqueness() {
    report("criterion-10 search uniqueness", (|| {
        let report = search(&SearchConfig::exhaustive(9, 3)).map_err(|e| e.to_string())?;
        if !report.exhausted {
            return Err("exhaustive n = 9 search did not terminate in budget".into());
        }
        let nontrivial: Vec<_> = report.nontrivial_entries().collect();
        if nontrivial.len() != 1 {
            return Err(format!("{} non-trivial classes, want 1", nontrivial.len()));
        }
        let t1 = family_space(1).map_err(|e| e.to_string())?;
        if !permutation_equivalent(&nontrivial[0].space, &t1) {
            return Err("the unique class is not T_1".into());
        }
        // non-gating extended check: randomized probe at n = 18
        let extended = search(&SearchConfig::randomized(18, 6, 2, 7)).map_err(|e| e.to_string());
        let extended_note = match extended {
            Ok(rep) => {
                let t2 = family_space(2).map_err(|e| e.to_string())?;
                let hit = rep
                    .nontrivial_entries()
                    .any(|e| permutation_equivalent(&e.space, &t2));
                format!("n = 18 randomized probe found T_2: {hit}")
            }
            Err(e) => format!("n = 18 randomized probe skipped ({e})"),
        };
        Ok(format!(
            "n = 9 unique non-trivial class is T_1 ({} copies); {extended_note}",
            nontrivial[0].class_size
        ))
    })());
}
