//! Analytic limit forms of the spin-amplitude matrices and the closed-form
//! `Ξ₂` distributions they generate.
//!
//! Matrices use the same `(final, initial)` layout as
//! [`amplitude_matrix`](crate::amplitude::amplitude_matrix). Overall powers
//! of `μ` are stripped since they cancel on normalization.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::Error;
use crate::kinematics::{Process, Regime};
use crate::linalg::{Mat4, Vec4};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitAmplitude {
    pub process: Process,
    pub regime: Regime,
    pub theta: f64,
    pub lambda: f64,
    /// Leading term of the expansion.
    pub leading: Mat4,
    /// Next order (coefficient of `1/μ`) where the expansion needs it.
    pub subleading: Option<Mat4>,
}

impl LimitAmplitude {
    /// Final state for input `psi`: the leading term, falling back to the
    /// subleading term when the leading one annihilates `psi` at every
    /// angle. A zero of the leading term at isolated angles is reported as
    /// `Err(VanishingState)`, as is a state annihilated by both orders.
    /// The result is unnormalized.
    pub fn final_state(&self, psi: &Vec4) -> Result<Vec4, crate::error::Error> {
        let lead = self.leading.apply(psi);
        let scale = self.leading.max_abs().powi(2);
        if lead.normalize_relative(scale).is_ok() {
            return Ok(lead);
        }
        if let Some(sub) = self.subleading.as_ref().filter(|_| in_leading_kernel(psi)) {
            let next = sub.apply(psi);
            let scale = sub.max_abs().powi(2);
            if next.normalize_relative(scale).is_ok() {
                return Ok(next);
            }
        }
        Err(Error::VanishingState)
    }
}

/// Whether the high-energy annihilation leading term kills `psi` at all
/// angles. Two generic angles suffice since its entries span
/// `{1, cos 2θ, sin 2θ}`.
fn in_leading_kernel(psi: &Vec4) -> bool {
    [1.0, 2.3].iter().all(|&t| {
        let m = annihilation_high_leading(t);
        m.apply(psi).normalize_relative(m.max_abs().powi(2)).is_err()
    })
}

fn check_theta(theta: f64) -> Result<(), Error> {
    if theta > 0.0 && theta < std::f64::consts::PI {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "theta",
            value: theta,
            reason: "must lie strictly inside (0, pi)",
        })
    }
}

fn check_lambda(lambda: f64) -> Result<(), Error> {
    if (0.0..=1.0).contains(&lambda) {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "lambda",
            value: lambda,
            reason: "must lie in [0, 1]",
        })
    }
}

pub fn limit_amplitude(
    process: Process,
    regime: Regime,
    theta: f64,
    lambda: f64,
) -> Result<LimitAmplitude, Error> {
    if !process.supports(regime) {
        return Err(Error::InvalidRegime { process, regime });
    }
    check_lambda(lambda)?;
    if regime != Regime::Threshold {
        check_theta(theta)?;
    }
    let (leading, subleading) = match (process, regime) {
        (Process::EeToMuMu, Regime::Threshold) => (threshold(lambda), None),
        (Process::Moller, Regime::Low) => (moller_low(theta), None),
        (Process::Bhabha, Regime::Low) => (scalar(2.0 / (1.0 - theta.cos())), None),
        (Process::EMuElastic, Regime::Low) => (scalar(2.0 * lambda / (theta.cos() - 1.0)), None),
        (Process::MuMuToEe, Regime::Low) => (mumu_low(theta, lambda), None),
        (Process::EeToMuMu | Process::MuMuToEe, Regime::High) => {
            (annihilation_high_leading(theta), Some(annihilation_high_next(theta, lambda)))
        }
        (Process::Moller, Regime::High) => (moller_high(theta).transpose(), None),
        (Process::Bhabha, Regime::High) => (bhabha_high(theta).transpose(), None),
        (Process::EMuElastic, Regime::High) => (emu_high(theta).transpose(), None),
        _ => return Err(Error::InvalidRegime { process, regime }),
    };
    Ok(LimitAmplitude {
        process,
        regime,
        theta,
        lambda,
        leading,
        subleading,
    })
}

/// Leading-order limit matrix.
pub fn limit_matrix(process: Process, regime: Regime, theta: f64, lambda: f64) -> Result<Mat4, Error> {
    Ok(limit_amplitude(process, regime, theta, lambda)?.leading)
}

fn scalar(x: f64) -> Mat4 {
    Mat4::from_real([[x, 0.0, 0.0, 0.0], [0.0, x, 0.0, 0.0], [0.0, 0.0, x, 0.0], [0.0, 0.0, 0.0, x]])
}

fn threshold(lambda: f64) -> Mat4 {
    let l = lambda;
    Mat4::from_real([
        [-2.0, 0.0, 0.0, 0.0],
        [0.0, -l, l, 0.0],
        [0.0, l, -l, 0.0],
        [0.0, 0.0, 0.0, -2.0],
    ])
}

fn moller_low(t: f64) -> Mat4 {
    let d = 4.0 / (t.tan() * t.sin());
    let a = 1.0 / (t / 2.0).sin().powi(2);
    let b = -1.0 / (t / 2.0).cos().powi(2);
    Mat4::from_real([
        [d, 0.0, 0.0, 0.0],
        [0.0, a, b, 0.0],
        [0.0, b, a, 0.0],
        [0.0, 0.0, 0.0, d],
    ])
}

fn mumu_low(t: f64, l: f64) -> Mat4 {
    let c2 = (2.0 * t).cos();
    let w = 0.5 * (-3.0 - l + (l - 1.0) * c2);
    let v = (1.0 - l) * t.sin().powi(2);
    let x = (1.0 - l) * t.cos() * t.sin();
    let y = 0.5 * (-1.0 - l + (1.0 - l) * c2);
    Mat4::from_real([
        [w, x, -x, v],
        [x, y, -y, x],
        [-x, -y, y, -x],
        [v, x, -x, w],
    ])
}

fn annihilation_high_leading(t: f64) -> Mat4 {
    let a = 0.5 * (2.0 * t).sin();
    let b = 0.5 * (1.0 - (2.0 * t).cos());
    let c = -0.5 * (3.0 + (2.0 * t).cos());
    Mat4::from_real([
        [c, 0.0, 0.0, b],
        [a, 0.0, 0.0, a],
        [-a, 0.0, 0.0, -a],
        [b, 0.0, 0.0, c],
    ])
}

fn annihilation_high_next(t: f64, l: f64) -> Mat4 {
    let a = -0.5 * (2.0 * t).sin();
    let b = -0.5 * (1.0 - (2.0 * t).cos());
    let c = 0.5 * (-1.0 + (2.0 * t).cos());
    let d = 0.5 * l * (2.0 * t).sin();
    let e = -0.5 * l * (1.0 - (2.0 * t).cos());
    Mat4::from_real([
        [c, d, -d, b],
        [a, e, -e, a],
        [-a, -e, e, -a],
        [b, d, -d, c],
    ])
}

// The three elastic high-energy matrices below are written with rows
// labelled by the initial spin state; callers transpose them.

fn moller_high(t: f64) -> Mat4 {
    let (s, c) = t.sin_cos();
    let csc = 1.0 / s;
    let c2 = (2.0 * t).cos();
    let diag = (7.0 + c2) * c / (s * s);
    let off = (3.0 + c2) * csc;
    let cs2 = 2.0 / (t / 2.0).sin().powi(2);
    let sc2 = 2.0 / (t / 2.0).cos().powi(2);
    Mat4::from_real([
        [diag, off, off, 2.0 * c],
        [-4.0 * csc, cs2, -sc2, 4.0 * csc],
        [-4.0 * csc, -sc2, cs2, 4.0 * csc],
        [2.0 * c, -off, -off, diag],
    ])
}

fn bhabha_high(t: f64) -> Mat4 {
    let c = t.cos();
    let ct = 1.0 / (t / 2.0).tan();
    let a = (15.0 * c + (3.0 * t).cos()) / (4.0 - 4.0 * c);
    let b = 0.5 * (3.0 + (2.0 * t).cos()) * ct;
    let d = -2.0 * (t / 2.0).cos().powi(2) * c;
    Mat4::from_real([
        [a, -b, b, d],
        [2.0 * ct, 2.0 * ct * ct, 2.0, 2.0 * ct],
        [-2.0 * ct, 2.0, 2.0 * ct * ct, -2.0 * ct],
        [d, -b, b, a],
    ])
}

fn emu_high(t: f64) -> Mat4 {
    let (s, c) = t.sin_cos();
    let ct = 1.0 / (t / 2.0).tan();
    let a = 3.0 + 4.0 / (c - 1.0) + c;
    let b = -2.0 * ct + s;
    Mat4::from_real([
        [a, b, b, -1.0 - c],
        [2.0 * ct, -2.0 * ct * ct, 2.0, -2.0 * ct],
        [2.0 * ct, 2.0, -2.0 * ct * ct, -2.0 * ct],
        [-1.0 - c, -b, -b, a],
    ])
}

/// Closed forms for `Ξ₂`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ClosedForm {
    F1,
    F2,
    F3,
    F4,
    F5,
    G1,
    G2,
    /// Minimum over θ of the id-13 low-energy μ⁺μ⁻ → e⁺e⁻ distribution.
    G8Max,
}

impl ClosedForm {
    pub const ALL: [ClosedForm; 8] = [
        ClosedForm::F1,
        ClosedForm::F2,
        ClosedForm::F3,
        ClosedForm::F4,
        ClosedForm::F5,
        ClosedForm::G1,
        ClosedForm::G2,
        ClosedForm::G8Max,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClosedForm::F1 => "F1",
            ClosedForm::F2 => "F2",
            ClosedForm::F3 => "F3",
            ClosedForm::F4 => "F4",
            ClosedForm::F5 => "F5",
            ClosedForm::G1 => "G1",
            ClosedForm::G2 => "G2",
            ClosedForm::G8Max => "G8max",
        }
    }

    pub fn depends_on_lambda(self) -> bool {
        matches!(self, ClosedForm::G1 | ClosedForm::G2 | ClosedForm::G8Max)
    }

    pub fn depends_on_theta(self) -> bool {
        matches!(
            self,
            ClosedForm::F2 | ClosedForm::F3 | ClosedForm::F4 | ClosedForm::F5
        )
    }
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ClosedForm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        ClosedForm::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse {
                kind: "closed form",
                value: s.to_string(),
            })
    }
}

/// Value of a `Ξ₂` closed form.
pub fn closed_form_xi2(form: ClosedForm, theta: f64, lambda: f64) -> f64 {
    let l2 = lambda * lambda;
    let l4 = l2 * l2;
    let l8 = l4 * l4;
    let cs = |k: f64| (k * theta).cos();
    match form {
        ClosedForm::F1 => 1.0,
        ClosedForm::F2 => {
            let c = theta.cos();
            let c4 = c.powi(4);
            16.0 * (c4 * c4 + 14.0 * c4 + 1.0) / (cs(2.0) + 3.0).powi(4)
        }
        ClosedForm::F3 => {
            (993.0 * cs(2.0) + 294.0 * cs(4.0) + 15.0 * cs(6.0) + 746.0)
                / (4.0 * (3.0 * cs(2.0) + 5.0).powi(3))
        }
        ClosedForm::F4 => {
            (13336.0 * cs(2.0)
                + 5796.0 * cs(4.0)
                + 1960.0 * cs(6.0)
                + 532.0 * cs(8.0)
                + 56.0 * cs(10.0)
                + 28.0 * cs(12.0)
                + 8.0 * cs(14.0)
                + cs(16.0)
                + 11051.0)
                / (128.0 * (cs(2.0) + 3.0).powi(4))
        }
        ClosedForm::F5 => (cs(8.0) + 7.0) / 8.0,
        ClosedForm::G1 => (l8 + 14.0 * l4 + 1.0) / (l2 + 1.0).powi(4),
        ClosedForm::G2 => (l8 + 28.0 * l4 + 16.0) / (l2 + 2.0).powi(4),
        ClosedForm::G8Max => (l8 + 19.0 * l4 + 18.0 * l2 + 7.0) / (l2 + 2.0).powi(4),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_8, PI};

    #[test]
    fn invalid_combinations() {
        assert!(matches!(
            limit_matrix(Process::EeToMuMu, Regime::Low, 1.0, 0.005),
            Err(Error::InvalidRegime { .. })
        ));
        assert!(limit_matrix(Process::Moller, Regime::Threshold, 1.0, 0.005).is_err());
        assert!(limit_matrix(Process::Moller, Regime::Low, 0.0, 0.005).is_err());
    }

    #[test]
    fn threshold_entries() {
        let m = limit_matrix(Process::EeToMuMu, Regime::Threshold, 0.3, 0.2).unwrap();
        assert_eq!(m[(1, 1)].re, -0.2);
        assert_eq!(m[(2, 1)].re, 0.2);
        assert_eq!(m[(0, 0)].re, -2.0);
        assert_eq!(m[(0, 3)].re, 0.0);
    }

    #[test]
    fn bhabha_low_is_scaled_identity() {
        let t = 1.3;
        let m = limit_matrix(Process::Bhabha, Regime::Low, t, 0.005).unwrap();
        let want = scalar(2.0 / (1.0 - t.cos()));
        assert!(m.max_abs_diff(&want) < 1e-15);
    }

    #[test]
    fn moller_high_at_right_angle() {
        let m = limit_matrix(Process::Moller, Regime::High, FRAC_PI_2, 0.005).unwrap();
        assert!(m[(0, 0)].norm() < 1e-15);
        // tabulated entry (row ↑↓, column ↑↑) = −4 csc θ sits at (final ↑↑, initial ↑↓)
        assert!((m[(0, 1)].re + 4.0).abs() < 1e-15);
        assert!((m[(1, 1)].re - 4.0).abs() < 1e-12);
    }

    #[test]
    fn closed_form_anchors() {
        assert!((closed_form_xi2(ClosedForm::G2, 0.0, 1.0) - 5.0 / 9.0).abs() < 1e-15);
        assert!((closed_form_xi2(ClosedForm::F5, FRAC_PI_8, 0.0) - 0.75).abs() < 1e-15);
        assert!((closed_form_xi2(ClosedForm::G8Max, 0.0, 0.0) - 7.0 / 16.0).abs() < 1e-15);
        assert!((closed_form_xi2(ClosedForm::G1, 0.0, 2f64.sqrt() - 1.0) - 0.75).abs() < 1e-14);
        assert!((closed_form_xi2(ClosedForm::F3, (2.0 * 2f64.sqrt()).atan(), 0.0) - 5.0 / 9.0).abs() < 1e-14);
        assert!((closed_form_xi2(ClosedForm::F4, PI / 4.0, 0.0) - 5.0 / 9.0).abs() < 1e-14);
    }

    #[test]
    fn subleading_used_when_leading_vanishes() {
        let amp = limit_amplitude(Process::EeToMuMu, Regime::High, 0.7, 0.005).unwrap();
        let up_down = Vec4::basis(1);
        let out = amp.final_state(&up_down).unwrap();
        assert!(out.norm() > 0.0);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let s41 = Vec4::from_real([0.0, h, h, 0.0]);
        assert_eq!(amp.final_state(&s41), Err(Error::VanishingState));
    }

    #[test]
    fn isolated_leading_zero_does_not_fall_back() {
        use crate::stabilizer::stabilizer;
        let amp = limit_amplitude(Process::EeToMuMu, Regime::High, FRAC_PI_2, 0.005).unwrap();
        let s11 = stabilizer(11).unwrap().state;
        assert_eq!(amp.final_state(&s11), Err(Error::VanishingState));
        let amp = limit_amplitude(Process::EeToMuMu, Regime::High, 1.2, 0.005).unwrap();
        assert!(amp.final_state(&s11).is_ok());
    }
}
