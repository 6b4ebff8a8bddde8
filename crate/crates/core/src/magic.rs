//! Stabilizer Rényi entropies of pure states.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::error::Error;
use crate::linalg::{expectation, CVec, C64};
use crate::pauli::{PauliBasis, PauliString, Qubits};

/// `Ξ_P = ⟨ψ|P|ψ⟩² / d` for a normalized `ψ`.
pub fn xi_p<const D: usize>(psi: &CVec<D>, p: &PauliString<D>) -> f64 {
    let e = expectation(psi, &p.matrix).re;
    e * e / D as f64
}

/// All sixteen (or four) `⟨ψ|P|ψ⟩`, in canonical Pauli order.
pub fn pauli_expectations<const D: usize>(psi: &CVec<D>) -> Vec<f64>
where
    Qubits: PauliBasis<D>,
{
    <Qubits as PauliBasis<D>>::strings()
        .iter()
        .map(|p| expectation(psi, &p.matrix).re)
        .collect()
}

/// `Σ_P ⟨ψ|P|ψ⟩^{2α} / d`.
fn power_sum<const D: usize>(psi: &CVec<D>, alpha: u32) -> f64
where
    Qubits: PauliBasis<D>,
{
    pauli_expectations(psi)
        .into_iter()
        .map(|e| e.powi(2 * alpha as i32))
        .sum::<f64>()
        / D as f64
}

/// `Ξ₂ = Σ_P ⟨ψ|P|ψ⟩⁴ / d`; equal to 1 exactly on stabilizer states.
pub fn xi2<const D: usize>(psi: &CVec<D>) -> f64
where
    Qubits: PauliBasis<D>,
{
    power_sum(psi, 2)
}

/// Stabilizer Rényi entropy `M_α` in nats. `alpha` must be at least 2.
pub fn sre<const D: usize>(psi: &CVec<D>, alpha: u32) -> f64
where
    Qubits: PauliBasis<D>,
{
    assert!(alpha >= 2, "alpha must be an integer >= 2");
    power_sum(psi, alpha).ln() / (1.0 - alpha as f64) + 0.0
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MagicValue {
    pub xi2: f64,
    pub m2: f64,
}

impl MagicValue {
    pub fn from_xi2(xi2: f64) -> Self {
        // `0.0 - x` rather than `-x` keeps stabilizer states at +0.
        MagicValue { xi2, m2: 0.0 - xi2.ln() }
    }

    /// Normalize `v` against `reference` (see [`CVec::normalize_relative`])
    /// and evaluate `Ξ₂` and `M₂`.
    pub fn of_unnormalized(v: &CVec<4>, reference: f64) -> Result<Self, Error> {
        let psi = v.normalize_relative(reference)?;
        Ok(Self::from_xi2(xi2(&psi)))
    }

    pub fn of_state(psi: &CVec<4>) -> Self {
        Self::from_xi2(xi2(psi))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    /// Upper bound saturated only by Weyl-Heisenberg SIC fiducials.
    Sic,
    /// Value attained by Weyl-Heisenberg MUB states.
    WhMub,
}

/// Magic bounds for dimension `d` at Rényi index `alpha`.
pub fn max_magic_bound(d: usize, alpha: u32, kind: BoundKind) -> Result<f64, Error> {
    if d < 2 || !d.is_power_of_two() {
        return Err(Error::UnsupportedDimension(d));
    }
    if alpha < 2 {
        return Err(Error::InvalidParameter {
            name: "alpha",
            value: alpha as f64,
            reason: "must be an integer >= 2",
        });
    }
    let df = d as f64;
    let a = alpha as f64;
    let base = match kind {
        BoundKind::Sic => df + 1.0,
        BoundKind::WhMub => df,
    };
    let inner = (1.0 + (df - 1.0) * base.powf(1.0 - a)) / df;
    Ok(inner.ln() / (1.0 - a))
}

/// `log(16/7)`: the largest two-qubit `M₂`.
pub fn two_qubit_max_m2() -> f64 {
    (16.0f64 / 7.0).ln()
}

/// Haar-random pure state: independent complex Gaussians, normalized.
pub fn haar_state<const D: usize, R: Rng + ?Sized>(rng: &mut R) -> CVec<D> {
    loop {
        let mut v = CVec::<D>::zeros();
        for z in v.0.iter_mut() {
            *z = C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal));
        }
        if let Ok(psi) = v.normalize() {
            return psi;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{tensor_vec, Vec2, Vec4, I, ONE, ZERO};
    use crate::pauli::two_qubit_paulis;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn xi_p_examples() {
        let up = Vec4::basis(0);
        let s = two_qubit_paulis();
        assert!((xi_p(&up, &s[15]) - 0.25).abs() < 1e-15); // ZZ
        assert!(xi_p(&up, &s[4]).abs() < 1e-15); // XI
    }

    #[test]
    fn xi_p_sums_to_one() {
        let psi = CVec([ONE, I, ONE, I]).normalize().unwrap();
        let total: f64 = two_qubit_paulis().iter().map(|p| xi_p(&psi, p)).sum();
        assert!((total - 1.0).abs() < 1e-14);
    }

    #[test]
    fn bounds() {
        let sic = max_magic_bound(4, 2, BoundKind::Sic).unwrap();
        assert!((sic - 2.5f64.ln()).abs() < 1e-12);
        let mub = max_magic_bound(4, 2, BoundKind::WhMub).unwrap();
        assert!((mub - two_qubit_max_m2()).abs() < 1e-12);
        let q = max_magic_bound(2, 2, BoundKind::Sic).unwrap();
        assert!((q - 1.5f64.ln()).abs() < 1e-12);
        assert!(max_magic_bound(6, 2, BoundKind::Sic).is_err());
        assert!(max_magic_bound(4, 1, BoundKind::Sic).is_err());
    }

    #[test]
    fn single_qubit_never_exceeds_sic_bound() {
        let bound = max_magic_bound(2, 2, BoundKind::Sic).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20_000 {
            let psi: Vec2 = haar_state(&mut rng);
            assert!(sre(&psi, 2) <= bound + 1e-12);
        }
    }

    #[test]
    fn t_state_product_is_additive() {
        // (|0⟩ + e^{iπ/4}|1⟩)/√2 has M₂ = log(4/3) on one qubit.
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let t = CVec([C64::new(h, 0.0), C64::from_polar(h, std::f64::consts::FRAC_PI_4)]);
        let zero = CVec([ONE, ZERO]);
        let single = sre(&t, 2);
        assert!((single - (4.0f64 / 3.0).ln()).abs() < 1e-14);
        let both = sre(&tensor_vec(&t, &zero), 2);
        assert!((both - single).abs() < 1e-14);
    }

    #[test]
    fn higher_alpha_on_stabilizer_is_zero() {
        for alpha in 2..5 {
            assert!(sre(&Vec4::basis(2), alpha).abs() < 1e-14);
        }
    }
}
