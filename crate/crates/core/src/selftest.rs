//! End-to-end self-test: every named check exercises one of the cross-cutting
//! guarantees (dual-route agreement, golden values, operator identities,
//! orientation calibration) and reports pass/fail with a human-readable
//! detail line. The CLI `selftest` command renders the report and sets its
//! exit code from the aggregate.

use crate::code::{distance_z, family_code, family_yield, yield_param};
use crate::distill::{
    class_probs_bruteforce, class_probs_charsum, depolarizing_threshold, DiagonalChannel,
    DistillationMap, NoisePoint, Orientation,
};
use crate::error::Result;
use crate::gf3::TritVector;
use crate::space::{family_space, is_maximal, is_triorthogonal, DEFAULT_ENUMERATION_BUDGET};
use crate::statevec::{error_pattern_class, simulate_one_round, transversal_t_logical};
use crate::wigner;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Debug)]
pub struct SelftestCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct SelftestReport {
    pub orientation: Orientation,
    pub checks: Vec<SelftestCheck>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn render(&self) -> String {
        let mut out = format!("selftest (orientation: {})\n", self.orientation);
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("{tag}  {:<28} {}\n", c.name, c.detail));
        }
        let verdict = if self.passed() { "OK" } else { "FAILED" };
        out.push_str(&format!(
            "{} ({}/{} checks)\n",
            verdict,
            self.checks.iter().filter(|c| c.passed).count(),
            self.checks.len()
        ));
        out
    }
}

fn check(name: &str, passed: bool, detail: String) -> SelftestCheck {
    SelftestCheck {
        name: name.to_string(),
        passed,
        detail,
    }
}

/// Run every check. All checks use exact or golden expectations except the
/// orientation calibration, which is sensitive to `orientation` by design:
/// running with the uncalibrated orientation must fail it.
pub fn run_selftest(orientation: Orientation) -> Result<SelftestReport> {
    let mut checks = Vec::new();

    // golden ranks of the two workhorse codes
    {
        let c17 = family_code(2, 1)?;
        let c14 = family_code(2, 4)?;
        let ok = c17.n() == 17
            && c17.rank_lx() == 5
            && c17.rank_lz() == 11
            && c14.n() == 14
            && c14.rank_lx() == 2
            && c14.rank_lz() == 8;
        checks.push(check(
            "golden-ranks",
            ok,
            format!(
                "[17,1]: rank Lx {} Lz {}; [14,4]: rank Lx {} Lz {}",
                c17.rank_lx(),
                c17.rank_lz(),
                c14.rank_lx(),
                c14.rank_lz()
            ),
        ));
    }

    // the family is triorthogonal (m <= 4) and maximal (m <= 2)
    {
        let mut ok = true;
        for m in 1..=4 {
            ok &= is_triorthogonal(family_space(m)?.basis());
        }
        for m in 1..=2 {
            ok &= is_maximal(&family_space(m)?, DEFAULT_ENUMERATION_BUDGET).status
                == crate::space::MaximalityStatus::Maximal;
        }
        checks.push(check(
            "family-construction",
            ok,
            "triorthogonal m<=4, maximal m<=2".into(),
        ));
    }

    // distance 2 across the puncture range for m <= 3
    {
        let mut ok = true;
        let mut detail = String::new();
        for m in 1..=3usize {
            for k in 1..=3 * m - 2 {
                let d = distance_z(&family_code(m, k)?)?;
                if d != 2 {
                    ok = false;
                    detail = format!("m={m} k={k}: d={d}");
                }
            }
        }
        if ok {
            detail = "d = 2 for all k <= 3m-2, m <= 3".into();
        }
        checks.push(check("distance", ok, detail));
    }

    // golden yield figures
    {
        let ok = (yield_param(15, 1, 3)? - 2.465).abs() < 5e-3
            && (family_yield(2) - 1.807).abs() < 5e-3
            && (family_yield(3) - 1.514).abs() < 5e-3;
        checks.push(check(
            "yield-goldens",
            ok,
            format!(
                "gamma(15,1,3) = {:.3}, family m=2: {:.3}, m=3: {:.3}",
                yield_param(15, 1, 3)?,
                family_yield(2),
                family_yield(3)
            ),
        ));
    }

    // dual-route agreement: brute force vs character sum vs state vector
    {
        let code = family_code(1, 1)?;
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let mut worst = 0.0f64;
        for _ in 0..5 {
            let a: f64 = rng.gen();
            let b: f64 = rng.gen();
            let c: f64 = rng.gen();
            let s = a + b + c;
            let ch = DiagonalChannel::new(a / s, b / s, c / s)?;
            let brute = class_probs_bruteforce(&code, &ch)?;
            let charsum = class_probs_charsum(&code, &ch)?;
            let sim = simulate_one_round(&code, &ch)?;
            worst = worst
                .max(brute.max_abs_diff(&charsum))
                .max(brute.max_abs_diff(&sim));
        }
        checks.push(check(
            "oracle-equivalence",
            worst < 1e-12,
            format!("[8,1] three-route max deviation {worst:.2e}"),
        ));
    }

    // orientation calibration: undetected uniform shift patterns name the
    // conjugate classes, and pure inputs must be fixed points
    {
        let code = family_code(1, 1)?;
        let all_ones = TritVector::from_digits(&vec![1u8; code.n()]);
        let class = error_pattern_class(&code, &all_ones)?;
        let expected = match orientation {
            Orientation::Conjugate => Some(2),
            Orientation::Direct => Some(1),
        };
        let map = DistillationMap::new(&code, orientation)?;
        let pure = NoisePoint::new(1.0, 0.0);
        let moved = map.apply(pure)?.distance(&pure);
        let ok = class == expected && moved < 1e-10;
        checks.push(check(
            "orientation-calibration",
            ok,
            format!("all-ones class {class:?}, |M_1| fixed-point drift {moved:.2e}"),
        ));
    }

    // depolarizing thresholds
    {
        let t8 = depolarizing_threshold(&family_code(1, 1)?, orientation)?.delta_star;
        let t17 = depolarizing_threshold(&family_code(2, 1)?, orientation)?.delta_star;
        let ok = (t8 - 0.317).abs() < 1e-3 && (t17 - 0.353).abs() < 1e-3;
        checks.push(check(
            "thresholds",
            ok,
            format!("[8,1]: {t8:.4}, [17,1]: {t17:.4}"),
        ));
    }

    // Wigner phase-point algebra and the polytope bound
    {
        let residual = wigner::operator_identity_residual();
        let bound = wigner::polytope_depolarizing_bound();
        let ok = residual < 1e-12 && (bound - 0.467).abs() < 1e-3;
        checks.push(check(
            "wigner-polytope",
            ok,
            format!("identity residual {residual:.2e}, bound {bound:.4}"),
        ));
    }

    // transversality of T on the smallest code
    {
        let code = family_code(1, 1)?;
        let detail = match transversal_t_logical(&code) {
            Ok(logical) => {
                let exps = logical.ninth_root_exponents(1e-10)?;
                checks.push(check(
                    "transversal-t",
                    true,
                    format!("logical phases w9^{exps:?}"),
                ));
                None
            }
            Err(e) => Some(e.to_string()),
        };
        if let Some(msg) = detail {
            checks.push(check("transversal-t", false, msg));
        }
    }

    Ok(SelftestReport {
        orientation,
        checks,
    })
}
