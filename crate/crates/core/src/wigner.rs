//! Single-qutrit discrete Wigner function and polytope membership.
//!
//! Uses the standard odd-prime phase-space construction: displacement
//! operators D_(x,z) = w^(2xz) X^x Z^z with w a cube root of unity and 2 the
//! inverse of 2 mod 3, phase-point operators A_u = D_u A_0 D_u^dag. The
//! operator identities (Hermiticity, unit trace, Tr(A_u A_v) = 3 delta_uv)
//! are asserted when the table is first built.

use num_complex::Complex64;
use once_cell::sync::Lazy;

use crate::distill::NoisePoint;
use crate::error::{Error, Result};

type Mat3 = [[Complex64; 3]; 3];

const HERMITICITY_TOL: f64 = 1e-12;
const POLYTOPE_TOL: f64 = 1e-10;

/// Cube root of unity e^(2 pi i / 3).
pub fn omega3() -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0)
}

/// Ninth root of unity e^(2 pi i / 9).
pub fn omega9() -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 9.0)
}

fn zero3() -> Mat3 {
    [[Complex64::new(0.0, 0.0); 3]; 3]
}

fn mat_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    let mut c = zero3();
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                c[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    c
}

fn mat_add_scaled(a: &mut Mat3, b: &Mat3, s: Complex64) {
    for i in 0..3 {
        for j in 0..3 {
            a[i][j] += s * b[i][j];
        }
    }
}

fn dagger(a: &Mat3) -> Mat3 {
    let mut c = zero3();
    for i in 0..3 {
        for j in 0..3 {
            c[i][j] = a[j][i].conj();
        }
    }
    c
}

fn trace(a: &Mat3) -> Complex64 {
    a[0][0] + a[1][1] + a[2][2]
}

fn trace_prod(a: &Mat3, b: &Mat3) -> Complex64 {
    let mut t = Complex64::new(0.0, 0.0);
    for i in 0..3 {
        for j in 0..3 {
            t += a[i][j] * b[j][i];
        }
    }
    t
}

/// Shift operator: X|k> = |k+1 mod 3>.
fn shift() -> Mat3 {
    let mut x = zero3();
    for k in 0..3 {
        x[(k + 1) % 3][k] = Complex64::new(1.0, 0.0);
    }
    x
}

/// Clock operator: Z|k> = w^k |k>.
fn clock() -> Mat3 {
    let w = omega3();
    let mut z = zero3();
    for k in 0..3 {
        z[k][k] = w.powu(k as u32);
    }
    z
}

fn mat_pow(a: &Mat3, e: usize) -> Mat3 {
    let mut out = zero3();
    for i in 0..3 {
        out[i][i] = Complex64::new(1.0, 0.0);
    }
    for _ in 0..e {
        out = mat_mul(&out, a);
    }
    out
}

/// D_(x,z) = w^(2xz) X^x Z^z.
fn displacement(x: usize, z: usize) -> Mat3 {
    let w = omega3();
    let phase = w.powu((2 * x * z % 3) as u32);
    let mut d = mat_mul(&mat_pow(&shift(), x), &mat_pow(&clock(), z));
    for row in &mut d {
        for e in row.iter_mut() {
            *e *= phase;
        }
    }
    d
}

/// The nine phase-point operators, indexed by u = (a, b) as 3a + b.
/// Verified on first use: each A_u Hermitian, Tr A_u = 1, Tr(A_u A_v) = 3 d_uv.
static PHASE_POINT_OPS: Lazy<[Mat3; 9]> = Lazy::new(|| {
    let mut a0 = zero3();
    for x in 0..3 {
        for z in 0..3 {
            mat_add_scaled(&mut a0, &displacement(x, z), Complex64::new(1.0 / 3.0, 0.0));
        }
    }
    let mut ops = [zero3(); 9];
    for a in 0..3 {
        for b in 0..3 {
            let d = displacement(a, b);
            ops[3 * a + b] = mat_mul(&mat_mul(&d, &a0), &dagger(&d));
        }
    }
    for (u, op) in ops.iter().enumerate() {
        let dag = dagger(op);
        for i in 0..3 {
            for j in 0..3 {
                assert!((op[i][j] - dag[i][j]).norm() < HERMITICITY_TOL, "A_{u} not Hermitian");
            }
        }
        assert!((trace(op) - 1.0).norm() < HERMITICITY_TOL, "Tr A_{u} != 1");
        for (v, other) in ops.iter().enumerate() {
            let expected = if u == v { 3.0 } else { 0.0 };
            assert!(
                (trace_prod(op, other) - expected).norm() < HERMITICITY_TOL,
                "Tr(A_{u} A_{v}) != {expected}"
            );
        }
    }
    ops
});

/// Largest deviation of the phase-point operators from their defining
/// identities: Hermiticity, unit trace, and Tr(A_u A_v) = 3 delta_uv.
pub fn operator_identity_residual() -> f64 {
    let ops = &*PHASE_POINT_OPS;
    let mut worst = 0.0f64;
    for (u, op) in ops.iter().enumerate() {
        let dag = dagger(op);
        for i in 0..3 {
            for j in 0..3 {
                worst = worst.max((op[i][j] - dag[i][j]).norm());
            }
        }
        worst = worst.max((trace(op) - 1.0).norm());
        for (v, other) in ops.iter().enumerate() {
            let expected = if u == v { 3.0 } else { 0.0 };
            worst = worst.max((trace_prod(op, other) - expected).norm());
        }
    }
    worst
}

/// A single-qutrit density matrix.
#[derive(Clone, Debug)]
pub struct QutritState {
    rho: Mat3,
}

impl QutritState {
    /// Validate Hermiticity, unit trace and positive semidefiniteness
    /// (within numerical tolerance) and wrap.
    pub fn new(rho: Mat3) -> Result<QutritState> {
        let dag = dagger(&rho);
        for i in 0..3 {
            for j in 0..3 {
                if (rho[i][j] - dag[i][j]).norm() > HERMITICITY_TOL {
                    return Err(Error::InvalidState("not Hermitian".into()));
                }
            }
        }
        if (trace(&rho) - 1.0).norm() > HERMITICITY_TOL {
            return Err(Error::InvalidState("trace is not 1".into()));
        }
        // PSD via the elementary symmetric functions of the (real) spectrum
        let t1 = trace(&rho).re;
        let t2 = trace_prod(&rho, &rho).re;
        let e2 = (t1 * t1 - t2) / 2.0;
        let det = det3(&rho);
        if e2 < -1e-10 || det.re < -1e-10 || det.im.abs() > 1e-10 {
            return Err(Error::InvalidState("not positive semidefinite".into()));
        }
        Ok(QutritState { rho })
    }

    /// Pure state from a (not necessarily normalized) amplitude vector.
    pub fn from_ket(ket: [Complex64; 3]) -> QutritState {
        let norm2: f64 = ket.iter().map(|a| a.norm_sqr()).sum();
        let mut rho = zero3();
        for i in 0..3 {
            for j in 0..3 {
                rho[i][j] = ket[i] * ket[j].conj() / norm2;
            }
        }
        QutritState { rho }
    }

    pub fn rho(&self) -> &Mat3 {
        &self.rho
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.rho[i][j]
    }
}

fn det3(a: &Mat3) -> Complex64 {
    a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
        - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
}

/// Amplitudes of the equatorial magic state |M_j> = Z^j |M_0| with
/// |M_0> proportional to sum_k e^(2 pi i k / 9) |k>.
pub fn magic_ket(j: u8) -> [Complex64; 3] {
    assert!(j < 3);
    let w9 = omega9();
    let w3 = omega3();
    let norm = 1.0 / 3f64.sqrt();
    let mut ket = [Complex64::new(0.0, 0.0); 3];
    for (k, amp) in ket.iter_mut().enumerate() {
        *amp = norm * w9.powu(k as u32) * w3.powu((j as u32) * (k as u32));
    }
    ket
}

/// Density matrix |M_j><M_j|.
pub fn magic_state(j: u8) -> QutritState {
    QutritState::from_ket(magic_ket(j))
}

/// The twirled noisy magic state
/// (1 - e1 - e2)|M_0><M_0| + e1 |M_1><M_1| + e2 |M_2><M_2|.
pub fn twirled_state(point: NoisePoint) -> Result<QutritState> {
    point.validate()?;
    let weights = [1.0 - point.eps1 - point.eps2, point.eps1, point.eps2];
    let mut rho = zero3();
    for (j, &w) in weights.iter().enumerate() {
        mat_add_scaled(&mut rho, magic_state(j as u8).rho(), Complex64::new(w, 0.0));
    }
    QutritState::new(rho)
}

/// The nine Wigner values of a state, indexed by phase-space point (a, b).
#[derive(Clone, Debug)]
pub struct WignerTable {
    values: [f64; 9],
}

impl WignerTable {
    pub fn value(&self, a: usize, b: usize) -> f64 {
        self.values[3 * a + b]
    }

    pub fn values(&self) -> &[f64; 9] {
        &self.values
    }

    pub fn min(&self) -> f64 {
        self.values.iter().cloned().fold(f64::INFINITY, f64::min)
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }
}

/// W(u) = (1/3) Tr(A_u rho).
pub fn wigner(state: &QutritState) -> WignerTable {
    let ops = &*PHASE_POINT_OPS;
    let mut values = [0.0; 9];
    for (u, op) in ops.iter().enumerate() {
        let t = trace_prod(op, state.rho());
        debug_assert!(t.im.abs() < 1e-10);
        values[u] = t.re / 3.0;
    }
    WignerTable { values }
}

/// True iff the state has no negative Wigner value (within tolerance). Such
/// states cannot be distilled to a magic state by any protocol.
pub fn in_polytope(state: &QutritState) -> bool {
    wigner(state).min() >= -POLYTOPE_TOL
}

fn min_wigner_on_depolarizing_line(delta: f64) -> f64 {
    let state = twirled_state(NoisePoint::new(delta / 3.0, delta / 3.0)).unwrap();
    wigner(&state).min()
}

/// The depolarizing rate at which the twirled magic state crosses into the
/// Wigner polytope, found by bisection on the minimum Wigner value.
pub fn polytope_depolarizing_bound() -> f64 {
    let mut lo = 0.0; // negative here
    let mut hi = 1.0; // nonnegative here
    debug_assert!(min_wigner_on_depolarizing_line(lo) < 0.0);
    debug_assert!(min_wigner_on_depolarizing_line(hi) > 0.0);
    while hi - lo > 1e-6 {
        let mid = 0.5 * (lo + hi);
        if min_wigner_on_depolarizing_line(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
