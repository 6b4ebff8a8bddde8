//! Processes, kinematic regimes and centre-of-mass kinematics.
//!
//! Units: the electron mass is 1 and the muon mass is `1/λ`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Process {
    /// e⁻e⁺ → μ⁻μ⁺ (s-channel).
    EeToMuMu,
    /// e⁻e⁻ → e⁻e⁻ (t- and u-channel).
    Moller,
    /// e⁻e⁺ → e⁻e⁺ (s- and t-channel).
    Bhabha,
    /// e⁻μ⁻ → e⁻μ⁻ (t-channel).
    EMuElastic,
    /// μ⁻μ⁺ → e⁻e⁺ (s-channel).
    MuMuToEe,
}

impl Process {
    pub const ALL: [Process; 5] = [
        Process::EeToMuMu,
        Process::Moller,
        Process::Bhabha,
        Process::EMuElastic,
        Process::MuMuToEe,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Process::EeToMuMu => "ee-mumu",
            Process::Moller => "moller",
            Process::Bhabha => "bhabha",
            Process::EMuElastic => "emu",
            Process::MuMuToEe => "mumu-ee",
        }
    }

    /// Regimes with an analytic limit form.
    pub fn regimes(self) -> &'static [Regime] {
        match self {
            Process::EeToMuMu => &[Regime::Threshold, Regime::High],
            _ => &[Regime::Low, Regime::High],
        }
    }

    pub fn supports(self, regime: Regime) -> bool {
        self.regimes().contains(&regime)
    }

    /// Masses `(in₁, in₂, out₁, out₂)` in electron-mass units.
    pub fn masses(self, lambda: f64) -> [f64; 4] {
        let m = 1.0 / lambda;
        match self {
            Process::EeToMuMu => [1.0, 1.0, m, m],
            Process::MuMuToEe => [m, m, 1.0, 1.0],
            Process::Moller | Process::Bhabha => [1.0; 4],
            Process::EMuElastic => [1.0, m, 1.0, m],
        }
    }

    /// Mass of the heaviest external particle.
    pub fn heaviest_mass(self, lambda: f64) -> f64 {
        self.masses(lambda).into_iter().fold(0.0, f64::max)
    }

    /// Whether the two final-state particles are an s-channel pair created
    /// from annihilation.
    pub fn is_annihilation(self) -> bool {
        matches!(self, Process::EeToMuMu | Process::MuMuToEe)
    }
}

impl fmt::Display for Process {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Process {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let key = s.to_ascii_lowercase().replace(['_', ' '], "-");
        Ok(match key.as_str() {
            "ee-mumu" | "eemumu" | "ee-to-mumu" => Process::EeToMuMu,
            "moller" | "møller" => Process::Moller,
            "bhabha" => Process::Bhabha,
            "emu" | "e-mu" | "emu-elastic" => Process::EMuElastic,
            "mumu-ee" | "mumuee" | "mumu-to-ee" => Process::MuMuToEe,
            _ => {
                return Err(Error::Parse {
                    kind: "process",
                    value: s.to_string(),
                })
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Regime {
    /// Just above the μ⁺μ⁻ pair threshold.
    Threshold,
    /// Non-relativistic incoming particles.
    Low,
    /// Ultrarelativistic limit.
    High,
}

impl Regime {
    pub fn name(self) -> &'static str {
        match self {
            Regime::Threshold => "threshold",
            Regime::Low => "low",
            Regime::High => "high",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Regime {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "threshold" => Regime::Threshold,
            "low" | "low-energy" | "low_energy" => Regime::Low,
            "high" | "high-energy" | "high_energy" => Regime::High,
            _ => {
                return Err(Error::Parse {
                    kind: "regime",
                    value: s.to_string(),
                })
            }
        })
    }
}

pub type ThreeVec = [f64; 3];
pub type FourVec = [f64; 4];

/// Minkowski product with signature (+, −, −, −).
pub fn minkowski(a: &FourVec, b: &FourVec) -> f64 {
    a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3]
}

pub fn on_shell(mass: f64, p: &ThreeVec) -> FourVec {
    let e = (mass * mass + dot3(p, p)).sqrt();
    [e, p[0], p[1], p[2]]
}

fn dot3(a: &ThreeVec, b: &ThreeVec) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: &ThreeVec, b: &ThreeVec) -> ThreeVec {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn unit(a: &ThreeVec) -> Option<ThreeVec> {
    let n = dot3(a, a).sqrt();
    (n > 0.0 && n.is_finite()).then(|| [a[0] / n, a[1] / n, a[2] / n])
}

/// Orthonormal right-handed scattering frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame {
    pub x: ThreeVec,
    pub y: ThreeVec,
    pub z: ThreeVec,
}

impl Frame {
    /// Components of `v` in this frame.
    pub fn coords(&self, v: &ThreeVec) -> ThreeVec {
        [dot3(v, &self.x), dot3(v, &self.y), dot3(v, &self.z)]
    }

    /// Azimuth of `v` about `z`, in `(−π, π]`.
    pub fn azimuth(&self, v: &ThreeVec) -> f64 {
        let c = self.coords(v);
        c[1].atan2(c[0])
    }
}

/// Frame with `z` along the incoming particle 1 and the scattering plane as
/// the `x–z` half-plane containing outgoing particle 1 at azimuth 0.
pub fn cm_frame(p1: &ThreeVec, k1: &ThreeVec) -> Result<Frame, Error> {
    let z = unit(p1).ok_or(Error::DegenerateFrame)?;
    let normal = cross(p1, k1);
    let n = dot3(&normal, &normal).sqrt();
    if n <= 1e-14 * dot3(p1, p1).sqrt() * dot3(k1, k1).sqrt() {
        return Err(Error::DegenerateFrame);
    }
    let y = unit(&normal).ok_or(Error::DegenerateFrame)?;
    let x = cross(&y, &z);
    Ok(Frame { x, y, z })
}

/// A single point in `(process, θ, λ, μ)` space with `μ = |p⃗ᵢₙ| / m_e`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KinematicPoint {
    pub process: Process,
    pub theta: f64,
    pub lambda: f64,
    pub mu: f64,
}

/// External four-momenta `(p₁, p₂, k₁, k₂)` in the CM frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Momenta {
    pub p1: FourVec,
    pub p2: FourVec,
    pub k1: FourVec,
    pub k2: FourVec,
}

impl KinematicPoint {
    pub fn new(process: Process, theta: f64, lambda: f64, mu: f64) -> Result<Self, Error> {
        if !(theta > 0.0 && theta < PI) {
            return Err(Error::InvalidParameter {
                name: "theta",
                value: theta,
                reason: "must lie strictly inside (0, pi)",
            });
        }
        if !(lambda > 0.0 && lambda <= 1.0) {
            return Err(Error::InvalidParameter {
                name: "lambda",
                value: lambda,
                reason: "must lie in (0, 1]",
            });
        }
        if !(mu > 0.0 && mu.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "mu",
                value: mu,
                reason: "must be positive and finite",
            });
        }
        let pt = KinematicPoint {
            process,
            theta,
            lambda,
            mu,
        };
        if process == Process::EeToMuMu {
            let threshold = 2.0 / lambda;
            let sqrt_s = pt.sqrt_s();
            if sqrt_s < threshold * (1.0 - 1e-15) {
                return Err(Error::BelowThreshold { sqrt_s, threshold });
            }
        }
        Ok(pt)
    }

    /// e⁻e⁺ → μ⁻μ⁺ at `√s = 2 m_μ (1 + ε)`.
    pub fn above_threshold(theta: f64, lambda: f64, eps: f64) -> Result<Self, Error> {
        if !(eps >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "eps",
                value: eps,
                reason: "must be non-negative",
            });
        }
        let e = (1.0 + eps) / lambda;
        let mu = ((e - 1.0) * (e + 1.0)).max(0.0).sqrt();
        Self::new(Process::EeToMuMu, theta, lambda, mu.max(f64::MIN_POSITIVE))
    }

    pub fn masses(&self) -> [f64; 4] {
        self.process.masses(self.lambda)
    }

    pub fn sqrt_s(&self) -> f64 {
        let [m1, m2, _, _] = self.masses();
        (m1 * m1 + self.mu * self.mu).sqrt() + (m2 * m2 + self.mu * self.mu).sqrt()
    }

    /// Magnitude of the outgoing three-momentum.
    pub fn k_out(&self) -> f64 {
        let [m1, _, n1, _] = self.masses();
        if !self.process.is_annihilation() {
            return self.mu;
        }
        let e = (m1 * m1 + self.mu * self.mu).sqrt();
        ((e - n1) * (e + n1)).max(0.0).sqrt()
    }

    pub fn momenta(&self) -> Momenta {
        let [m1, m2, n1, n2] = self.masses();
        let p = self.mu;
        let k = self.k_out();
        let (s, c) = self.theta.sin_cos();
        let p1 = [0.0, 0.0, p];
        let p2 = [0.0, 0.0, -p];
        let k1 = [k * s, 0.0, k * c];
        let k2 = [-k * s, 0.0, -k * c];
        Momenta {
            p1: on_shell(m1, &p1),
            p2: on_shell(m2, &p2),
            k1: on_shell(n1, &k1),
            k2: on_shell(n2, &k2),
        }
    }

    /// `(s, t, u)` with `t = (p₁ − k₁)²` and `u = (p₁ − k₂)²`.
    pub fn mandelstam(&self) -> (f64, f64, f64) {
        let m = self.momenta();
        let add = |a: &FourVec, b: &FourVec| [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]];
        let sub = |a: &FourVec, b: &FourVec| [a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]];
        let s = add(&m.p1, &m.p2);
        let t = sub(&m.p1, &m.k1);
        let u = sub(&m.p1, &m.k2);
        (minkowski(&s, &s), minkowski(&t, &t), minkowski(&u, &u))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frame_at_right_angle_is_standard() {
        let f = cm_frame(&[0.0, 0.0, 2.0], &[3.0, 0.0, 0.0]).unwrap();
        assert_eq!(f.x, [1.0, 0.0, 0.0]);
        assert_eq!(f.y, [0.0, 1.0, 0.0]);
        assert_eq!(f.z, [0.0, 0.0, 1.0]);
    }

    #[test]
    fn outgoing_azimuths() {
        for k in 1..20 {
            let th = k as f64 * PI / 20.0;
            let pt = KinematicPoint::new(Process::Moller, th, 0.005, 1.0).unwrap();
            let m = pt.momenta();
            let k1 = [m.k1[1], m.k1[2], m.k1[3]];
            let k2 = [m.k2[1], m.k2[2], m.k2[3]];
            let f = cm_frame(&[m.p1[1], m.p1[2], m.p1[3]], &k1).unwrap();
            assert!(f.azimuth(&k1).abs() < 1e-15);
            assert!((f.azimuth(&k2).abs() - PI).abs() < 1e-15);
        }
    }

    #[test]
    fn collinear_is_degenerate() {
        assert_eq!(
            cm_frame(&[0.0, 0.0, 1.0], &[0.0, 0.0, -4.0]),
            Err(Error::DegenerateFrame)
        );
    }

    #[test]
    fn threshold_enforced() {
        let err = KinematicPoint::new(Process::EeToMuMu, 1.0, 0.5, 1.0).unwrap_err();
        assert!(matches!(err, Error::BelowThreshold { .. }));
        let pt = KinematicPoint::above_threshold(1.0, 0.5, 1e-6).unwrap();
        assert!((pt.sqrt_s() - 4.0 * (1.0 + 1e-6)).abs() < 1e-12);
    }

    #[test]
    fn endpoints_rejected() {
        assert!(KinematicPoint::new(Process::Bhabha, 0.0, 0.5, 1.0).is_err());
        assert!(KinematicPoint::new(Process::Bhabha, PI, 0.5, 1.0).is_err());
    }

    #[test]
    fn mandelstam_sum() {
        let pt = KinematicPoint::new(Process::EMuElastic, 0.7, 0.3, 2.0).unwrap();
        let (s, t, u) = pt.mandelstam();
        let sum_m2: f64 = pt.masses().iter().map(|m| m * m).sum();
        assert!((s + t + u - sum_m2).abs() < 1e-10 * s);
    }

    #[test]
    fn names_round_trip() {
        for p in Process::ALL {
            assert_eq!(p.name().parse::<Process>().unwrap(), p);
        }
        for r in [Regime::Threshold, Regime::Low, Regime::High] {
            assert_eq!(r.name().parse::<Regime>().unwrap(), r);
        }
        assert!("compton".parse::<Process>().is_err());
    }
}
