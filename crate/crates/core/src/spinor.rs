//! Dirac spinors in the Dirac representation, spin quantized along the
//! fixed lab `z` axis and boosted to momentum `p⃗`.

use std::sync::OnceLock;

use serde::Serialize;

use crate::kinematics::{FourVec, ThreeVec};
use crate::linalg::{gates, CMat, CVec, Mat2, Mat4, Vec2, Vec4, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Spin {
    Up,
    Down,
}

impl Spin {
    pub const BOTH: [Spin; 2] = [Spin::Up, Spin::Down];

    /// Basis index: `Up = 0`, `Down = 1`.
    pub fn index(self) -> usize {
        match self {
            Spin::Up => 0,
            Spin::Down => 1,
        }
    }

    /// Two-component `σ³` eigenvector.
    pub fn chi(self) -> Vec2 {
        Vec2::basis(self.index())
    }
}

fn block(a: &Mat2, b: &Mat2, c: &Mat2, d: &Mat2) -> Mat4 {
    let mut m = Mat4::zeros();
    for r in 0..2 {
        for col in 0..2 {
            m.0[r][col] = a.0[r][col];
            m.0[r][col + 2] = b.0[r][col];
            m.0[r + 2][col] = c.0[r][col];
            m.0[r + 2][col + 2] = d.0[r][col];
        }
    }
    m
}

/// `γ⁰ … γ³` in the Dirac representation.
pub fn gammas() -> &'static [Mat4; 4] {
    static CELL: OnceLock<[Mat4; 4]> = OnceLock::new();
    CELL.get_or_init(|| {
        let one = Mat2::identity();
        let zero = Mat2::zeros();
        let g0 = block(&one, &zero, &zero, &(-one));
        let s = [gates::pauli_x(), gates::pauli_y(), gates::pauli_z()];
        let gi = s.map(|si| block(&zero, &si, &(-si), &zero));
        [g0, gi[0], gi[1], gi[2]]
    })
}

/// `γ⁰ γ^μ`, so that `ψ̄_a γ^μ ψ_b = ψ_a† (γ⁰γ^μ) ψ_b`.
fn gamma0_gammas() -> &'static [Mat4; 4] {
    static CELL: OnceLock<[Mat4; 4]> = OnceLock::new();
    CELL.get_or_init(|| {
        let g = gammas();
        [g[0] * g[0], g[0] * g[1], g[0] * g[2], g[0] * g[3]]
    })
}

/// Feynman slash `γ^μ p_μ` with metric (+, −, −, −).
pub fn slash(p: &FourVec) -> Mat4 {
    let g = gammas();
    g[0].scale(C64::new(p[0], 0.0))
        - g[1].scale(C64::new(p[1], 0.0))
        - g[2].scale(C64::new(p[2], 0.0))
        - g[3].scale(C64::new(p[3], 0.0))
}

fn sigma_dot(p: &ThreeVec) -> Mat2 {
    gates::pauli_x().scale(C64::new(p[0], 0.0))
        + gates::pauli_y().scale(C64::new(p[1], 0.0))
        + gates::pauli_z().scale(C64::new(p[2], 0.0))
}

fn stack(upper: Vec2, lower: Vec2) -> Vec4 {
    CVec([upper[0], upper[1], lower[0], lower[1]])
}

fn energy(mass: f64, p: &ThreeVec) -> f64 {
    (mass * mass + p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt()
}

/// Particle spinor `u(p, s)` with `ū u = 2m`.
pub fn dirac_u(mass: f64, p: &ThreeVec, spin: Spin) -> Vec4 {
    let root = (energy(mass, p) + mass).sqrt();
    let chi = spin.chi();
    let lower = sigma_dot(p).apply(&chi).scale(C64::new(1.0 / root, 0.0));
    stack(chi.scale(C64::new(root, 0.0)), lower)
}

/// Antiparticle spinor `v(p, s)` with `v̄ v = −2m`.
///
/// The two-component seed is `η_s = σ¹ χ_s`, so the label `s` is the
/// physical spin projection of the antiparticle along `z`.
pub fn dirac_v(mass: f64, p: &ThreeVec, spin: Spin) -> Vec4 {
    let root = (energy(mass, p) + mass).sqrt();
    let eta = gates::pauli_x().apply(&spin.chi());
    let upper = sigma_dot(p).apply(&eta).scale(C64::new(1.0 / root, 0.0));
    stack(upper, eta.scale(C64::new(root, 0.0)))
}

/// Dirac adjoint contraction `ā b = a† γ⁰ b`.
pub fn bar_dot(a: &Vec4, b: &Vec4) -> C64 {
    a.inner(&gammas()[0].apply(b))
}

/// Vector current `ā γ^μ b` (upper index).
pub fn current(a: &Vec4, b: &Vec4) -> [C64; 4] {
    let g = gamma0_gammas();
    [0, 1, 2, 3].map(|mu| a.inner(&g[mu].apply(b)))
}

/// Outer product `a ā = a a† γ⁰`.
pub fn bar_outer(a: &Vec4) -> Mat4 {
    let mut m = CMat::zeros();
    for r in 0..4 {
        for c in 0..4 {
            m.0[r][c] = a[r] * a[c].conj();
        }
    }
    m * gammas()[0]
}

pub fn identity_scaled(x: f64) -> Mat4 {
    Mat4::identity().scale(C64::new(x, 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kinematics::on_shell;

    fn sample_momenta() -> Vec<ThreeVec> {
        vec![
            [0.3, -0.2, 0.9],
            [2.0, 1.0, -3.0],
            [-40.0, 5.0, 7.0],
            [0.0, 0.0, 1e-3],
        ]
    }

    #[test]
    fn rest_frame_spinors() {
        let u = dirac_u(1.0, &[0.0; 3], Spin::Up);
        let expect = Vec4::basis(0).scale(C64::new(2f64.sqrt(), 0.0));
        assert!(u.max_abs_diff(&expect) < 1e-15);
    }

    #[test]
    fn normalization() {
        for m in [1.0, 206.7] {
            for p in sample_momenta() {
                for s in Spin::BOTH {
                    for t in Spin::BOTH {
                        let uu = bar_dot(&dirac_u(m, &p, s), &dirac_u(m, &p, t));
                        let vv = bar_dot(&dirac_v(m, &p, s), &dirac_v(m, &p, t));
                        let want = if s == t { 2.0 * m } else { 0.0 };
                        let e = energy(m, &p);
                        assert!((uu - want).norm() < 1e-12 * e);
                        assert!((vv + want).norm() < 1e-12 * e);
                    }
                }
            }
        }
    }

    #[test]
    fn completeness() {
        for m in [1.0, 3.0] {
            for p in sample_momenta() {
                let p4 = on_shell(m, &p);
                let mut su = Mat4::zeros();
                let mut sv = Mat4::zeros();
                for s in Spin::BOTH {
                    su = su + bar_outer(&dirac_u(m, &p, s));
                    sv = sv + bar_outer(&dirac_v(m, &p, s));
                }
                let tol = 1e-12 * p4[0];
                assert!(su.max_abs_diff(&(slash(&p4) + identity_scaled(m))) < tol);
                assert!(sv.max_abs_diff(&(slash(&p4) - identity_scaled(m))) < tol);
            }
        }
    }

    #[test]
    fn dirac_equation() {
        for p in sample_momenta() {
            let m = 1.7;
            let ps = slash(&on_shell(m, &p));
            for s in Spin::BOTH {
                let u = dirac_u(m, &p, s);
                let v = dirac_v(m, &p, s);
                assert!(ps.apply(&u).max_abs_diff(&u.scale(C64::new(m, 0.0))) < 1e-11 * m.max(p[2].abs()).max(40.0));
                assert!(ps.apply(&v).max_abs_diff(&v.scale(C64::new(-m, 0.0))) < 1e-11 * 40.0);
            }
        }
    }

    #[test]
    fn clifford_algebra() {
        let g = gammas();
        let eta = [1.0, -1.0, -1.0, -1.0];
        for a in 0..4 {
            for b in 0..4 {
                let anti = g[a] * g[b] + g[b] * g[a];
                let want = if a == b { identity_scaled(2.0 * eta[a]) } else { Mat4::zeros() };
                assert!(anti.max_abs_diff(&want) < 1e-15);
            }
        }
    }
}
