//! Tree-level QED spin-amplitude matrices.
//!
//! Entry `(f, i)` is the amplitude from initial spins `i = 2 s₁ + s₂` to
//! final spins `f = 2 r₁ + r₂`, with `↑ = 0`. The overall coupling and
//! the sign of the photon propagator are dropped.

use serde::Serialize;

use crate::error::Error;
use crate::kinematics::{FourVec, KinematicPoint, Process};
use crate::linalg::{gates, Mat4, C64, ONE};
use crate::spinor::{current, dirac_u, dirac_v, Spin};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinAmplitudeMatrix {
    pub entries: Mat4,
    pub point: KinematicPoint,
}

type Current = [C64; 4];

fn contract(a: &Current, b: &Current) -> C64 {
    a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3]
}

fn contract_real(a: &Current, q: &FourVec) -> C64 {
    a[0] * q[0] - a[1] * q[1] - a[2] * q[2] - a[3] * q[3]
}

/// One photon exchange with momentum `q`, in the gauge
/// `−g^{μν}/q² + ξ q^μ q^ν / q⁴` (sign stripped).
fn exchange(j1: &Current, j2: &Current, q: &FourVec, xi: f64) -> C64 {
    let q2 = q[0] * q[0] - q[1] * q[1] - q[2] * q[2] - q[3] * q[3];
    let mut val = contract(j1, j2) / q2;
    if xi != 0.0 {
        val -= contract_real(j1, q) * contract_real(j2, q) * (xi / (q2 * q2));
    }
    val
}

fn three(p: &FourVec) -> [f64; 3] {
    [p[1], p[2], p[3]]
}

fn add(a: &FourVec, b: &FourVec) -> FourVec {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]]
}

fn sub(a: &FourVec, b: &FourVec) -> FourVec {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]]
}

/// Amplitude matrix in Feynman gauge.
pub fn amplitude_matrix(point: &KinematicPoint) -> SpinAmplitudeMatrix {
    amplitude_matrix_gauge(point, 0.0)
}

/// Amplitude matrix with gauge parameter `ξ` added to the propagator.
pub fn amplitude_matrix_gauge(point: &KinematicPoint, xi: f64) -> SpinAmplitudeMatrix {
    let mom = point.momenta();
    let [m1, m2, n1, n2] = point.masses();
    let (p1, p2, k1, k2) = (three(&mom.p1), three(&mom.p2), three(&mom.k1), three(&mom.k2));

    // Spinors indexed by spin; which of u/v applies depends on the process.
    let u_p1 = Spin::BOTH.map(|s| dirac_u(m1, &p1, s));
    let u_k1 = Spin::BOTH.map(|s| dirac_u(n1, &k1, s));
    let (leg_p2, leg_k2) = match point.process {
        Process::EeToMuMu | Process::MuMuToEe | Process::Bhabha => (
            Spin::BOTH.map(|s| dirac_v(m2, &p2, s)),
            Spin::BOTH.map(|s| dirac_v(n2, &k2, s)),
        ),
        Process::Moller | Process::EMuElastic => (
            Spin::BOTH.map(|s| dirac_u(m2, &p2, s)),
            Spin::BOTH.map(|s| dirac_u(n2, &k2, s)),
        ),
    };

    let q_s = add(&mom.p1, &mom.p2);
    let q_t = sub(&mom.p1, &mom.k1);
    let q_u = sub(&mom.p1, &mom.k2);

    let mut a = Mat4::zeros();
    for (s1, up1) in u_p1.iter().enumerate() {
        for (s2, l2) in leg_p2.iter().enumerate() {
            for (r1, uk1) in u_k1.iter().enumerate() {
                for (r2, lk2) in leg_k2.iter().enumerate() {
                    let val = match point.process {
                        Process::EeToMuMu | Process::MuMuToEe => {
                            exchange(&current(l2, up1), &current(uk1, lk2), &q_s, xi)
                        }
                        Process::Moller => {
                            exchange(&current(uk1, up1), &current(lk2, l2), &q_t, xi)
                                - exchange(&current(lk2, up1), &current(uk1, l2), &q_u, xi)
                        }
                        Process::Bhabha => {
                            exchange(&current(uk1, up1), &current(l2, lk2), &q_t, xi)
                                - exchange(&current(uk1, lk2), &current(l2, up1), &q_s, xi)
                        }
                        Process::EMuElastic => {
                            exchange(&current(uk1, up1), &current(lk2, l2), &q_t, xi)
                        }
                    };
                    a.0[2 * r1 + r2][2 * s1 + s2] = val;
                }
            }
        }
    }
    SpinAmplitudeMatrix {
        entries: a,
        point: *point,
    }
}

impl SpinAmplitudeMatrix {
    /// Largest `|A_fi|²`, the reference scale for vanishing final states.
    pub fn reference_scale(&self) -> f64 {
        let m = self.entries.max_abs();
        m * m
    }

    pub fn phase_fixed(&self) -> Option<Mat4> {
        self.entries.fix_phase_and_scale()
    }
}

/// Operator `W` with `A(π − θ) = −W A(θ) W'` for identical final fermions:
/// swapping the two final particles combined with the spin relabeling
/// `↑ ↔ ↓` on both slots that restores the frame orientation.
fn exchange_operators() -> (Mat4, Mat4) {
    let xx = gates::on_qubit(&gates::pauli_x(), 0) * gates::on_qubit(&gates::pauli_x(), 1);
    (gates::swap() * xx, xx)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExchangeReport {
    pub theta: f64,
    pub mu: f64,
    /// Largest entrywise deviation relative to the largest entry.
    pub max_relative_deviation: f64,
    pub passed: bool,
}

/// Compare `A(π − θ)` with `−(SWAP · X⊗X) A(θ) (X⊗X)` for Møller scattering.
pub fn exchange_antisymmetry_check(
    point: &KinematicPoint,
    tolerance: f64,
) -> Result<ExchangeReport, Error> {
    if point.process != Process::Moller {
        return Err(Error::InvalidParameter {
            name: "process",
            value: f64::NAN,
            reason: "exchange antisymmetry applies to identical final fermions (moller)",
        });
    }
    let mirrored = KinematicPoint::new(
        point.process,
        std::f64::consts::PI - point.theta,
        point.lambda,
        point.mu,
    )?;
    let a = amplitude_matrix(point).entries;
    let b = amplitude_matrix(&mirrored).entries;
    let (left, right) = exchange_operators();
    let predicted = (left * a * right).scale(-ONE);
    let scale = a.max_abs().max(b.max_abs());
    let dev = b.max_abs_diff(&predicted) / scale;
    Ok(ExchangeReport {
        theta: point.theta,
        mu: point.mu,
        max_relative_deviation: dev,
        passed: dev <= tolerance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::EPS_NORM;
    use crate::stabilizer::stabilizer;

    fn pt(p: Process, th: f64, lam: f64, mu: f64) -> KinematicPoint {
        KinematicPoint::new(p, th, lam, mu).unwrap()
    }

    #[test]
    fn state_41_annihilated_in_s_channel() {
        let s41 = stabilizer(41).unwrap().state;
        for (p, mu) in [(Process::EeToMuMu, 500.0), (Process::MuMuToEe, 0.5), (Process::MuMuToEe, 1e5)] {
            for th in [0.3, 1.2, 2.9] {
                let a = amplitude_matrix(&pt(p, th, 0.005, mu));
                let out = a.entries.apply(&s41);
                assert!(out.norm_sqr() < EPS_NORM * a.reference_scale());
            }
        }
    }

    #[test]
    fn gauge_independence() {
        for p in Process::ALL {
            let mu = if p == Process::EeToMuMu { 300.0 } else { 0.7 };
            let point = pt(p, 0.9, 0.01, mu);
            let a = amplitude_matrix(&point).entries;
            let b = amplitude_matrix_gauge(&point, 1.0).entries;
            assert!(a.max_abs_diff(&b) <= 1e-10 * a.max_abs(), "{p}");
        }
    }

    #[test]
    fn threshold_matrix_shape() {
        let point = KinematicPoint::above_threshold(1.0, 0.005, 1e-6).unwrap();
        let a = amplitude_matrix(&point).phase_fixed().unwrap();
        // ↑↑ → ↑↑ dominates; ↑↓ entries carry λ relative to it.
        assert!((a[(0, 0)] - ONE).norm() < 1e-4);
        assert!((a[(1, 1)] - C64::new(0.0025, 0.0)).norm() < 1e-6);
        assert!(a[(0, 1)].norm() < 1e-6);
    }

    #[test]
    fn exchange_antisymmetry_low_and_high() {
        for (th, mu) in [(std::f64::consts::FRAC_PI_3, 1e6), (std::f64::consts::FRAC_PI_2, 1e6), (0.1, 1e-3)] {
            let r = exchange_antisymmetry_check(&pt(Process::Moller, th, 0.005, mu), 1e-10).unwrap();
            assert!(r.passed, "{r:?}");
        }
        assert!(exchange_antisymmetry_check(&pt(Process::Bhabha, 1.0, 0.005, 1.0), 1e-10).is_err());
    }

    #[test]
    fn overall_scale_does_not_change_magic() {
        use crate::magic::MagicValue;
        let a = amplitude_matrix(&pt(Process::Bhabha, 1.1, 0.005, 3.0));
        let psi = stabilizer(13).unwrap().state;
        let m = MagicValue::of_unnormalized(&a.entries.apply(&psi), a.reference_scale()).unwrap();
        let scaled = a.entries.scale(C64::new(-0.3, 2.7));
        let n = MagicValue::of_unnormalized(&scaled.apply(&psi), 1.0).unwrap();
        assert!((m.m2 - n.m2).abs() < 1e-12);
    }
}
