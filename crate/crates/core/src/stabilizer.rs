//! The 60 two-qubit stabilizer states, in their fixed reference order.

use std::sync::OnceLock;

use serde::Serialize;

use crate::error::Error;
use crate::linalg::{gates, CVec, Mat4, Vec4, C64};
use crate::magic::sre;

const R1: C64 = C64::new(1.0, 0.0);
const RM: C64 = C64::new(-1.0, 0.0);
const IP: C64 = C64::new(0.0, 1.0);
const IM: C64 = C64::new(0.0, -1.0);
const O: C64 = C64::new(0.0, 0.0);

/// Unnormalized coefficients on `|↑↑⟩, |↑↓⟩, |↓↑⟩, |↓↓⟩`, ids 1..=60.
#[rustfmt::skip]
const COEFFS: [[C64; 4]; 60] = [
    [R1, O, O, O], [O, O, O, R1], [O, R1, O, O], [O, O, R1, O],
    [R1, R1, R1, R1], [R1, RM, RM, R1], [R1, RM, R1, RM], [R1, R1, RM, RM],
    [R1, IP, IP, RM], [R1, IM, IM, RM], [R1, IM, IP, R1], [R1, IP, IM, R1],
    [R1, IP, R1, IP], [R1, RM, IP, IM], [R1, IM, RM, IP], [R1, R1, IM, IM],
    [R1, IM, R1, IM], [R1, RM, IM, IP], [R1, IP, RM, IM], [R1, R1, IP, IP],
    [R1, IM, O, O], [O, R1, O, IM], [O, O, R1, IP], [R1, O, IP, O],
    [R1, IP, O, O], [O, R1, O, IP], [O, O, R1, IM], [R1, O, IM, O],
    [R1, R1, O, O], [O, R1, O, R1], [O, O, R1, RM], [R1, O, RM, O],
    [R1, RM, O, O], [O, R1, O, RM], [O, O, R1, R1], [R1, O, R1, O],
    [R1, O, O, R1], [R1, O, O, RM], [R1, O, O, IP], [R1, O, O, IM],
    [O, R1, R1, O], [O, R1, RM, O], [O, R1, IP, O], [O, R1, IM, O],
    [R1, RM, RM, RM], [R1, RM, R1, R1], [R1, R1, RM, R1], [R1, R1, R1, RM],
    [R1, IM, IM, R1], [R1, IP, IP, R1], [R1, RM, IM, IM], [R1, IM, RM, IM],
    [R1, RM, IP, IP], [R1, IP, RM, IP], [R1, IM, R1, IP], [R1, IP, R1, IM],
    [R1, R1, IM, IP], [R1, R1, IP, IM], [R1, IM, IP, RM], [R1, IP, IM, RM],
];

/// First entangled id; ids below it are product states.
pub const FIRST_ENTANGLED: usize = 37;

pub const CATALOG_LEN: usize = 60;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StabilizerState {
    pub id: usize,
    #[serde(serialize_with = "serialize_coeffs")]
    pub coeffs: [C64; 4],
    #[serde(skip)]
    pub state: Vec4,
    pub entangled: bool,
}

fn serialize_coeffs<S: serde::Serializer>(c: &[C64; 4], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(4))?;
    for z in c {
        seq.serialize_element(&[z.re, z.im])?;
    }
    seq.end()
}

impl StabilizerState {
    fn from_coeffs(id: usize, coeffs: [C64; 4]) -> Self {
        // Normalization 1, 1/√2 or 1/2 follows from the nonzero count.
        let nonzero = coeffs.iter().filter(|c| c.norm() > 0.0).count();
        let scale = 1.0 / (nonzero as f64).sqrt();
        StabilizerState {
            id,
            coeffs,
            state: CVec(coeffs).scale(C64::new(scale, 0.0)),
            entangled: id >= FIRST_ENTANGLED,
        }
    }
}

pub fn stabilizer_catalog() -> &'static [StabilizerState] {
    static CELL: OnceLock<Vec<StabilizerState>> = OnceLock::new();
    CELL.get_or_init(|| {
        COEFFS
            .iter()
            .enumerate()
            .map(|(k, c)| StabilizerState::from_coeffs(k + 1, *c))
            .collect()
    })
}

pub fn stabilizer(id: usize) -> Result<&'static StabilizerState, Error> {
    if !(1..=CATALOG_LEN).contains(&id) {
        return Err(Error::UnknownStabilizer(id));
    }
    Ok(&stabilizer_catalog()[id - 1])
}

/// Number of pure stabilizer states on `n` qubits, `2ⁿ ∏_{k<n} (2^{n-k} + 1)`.
pub fn count_stabilizer_states(n: u32) -> Result<u128, Error> {
    if n == 0 {
        return Err(Error::ZeroQubits);
    }
    let overflow = || Error::CountOverflow(n);
    let mut total = 1u128.checked_shl(n).filter(|_| n < 128).ok_or_else(overflow)?;
    for k in 0..n {
        let factor = 1u128
            .checked_shl(n - k)
            .filter(|_| n - k < 128)
            .and_then(|p| p.checked_add(1))
            .ok_or_else(overflow)?;
        total = total.checked_mul(factor).ok_or_else(overflow)?;
    }
    Ok(total)
}

/// Two-qubit concurrence `2|ψ₁ψ₄ − ψ₂ψ₃|` of a normalized state.
pub fn concurrence(psi: &Vec4) -> f64 {
    2.0 * (psi[0] * psi[3] - psi[1] * psi[2]).norm()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CatalogCheck {
    Count,
    ZeroMagic,
    DistinctRays,
    EntanglementLabel,
    Closure,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CatalogFailure {
    pub check: CatalogCheck,
    pub id: usize,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct CatalogReport {
    pub failures: Vec<CatalogFailure>,
}

impl CatalogReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn failed(&self, check: CatalogCheck) -> bool {
        self.failures.iter().any(|f| f.check == check)
    }
}

/// Index of the catalog ray equal to `v` (up to phase), if any.
fn find_ray(states: &[StabilizerState], v: &Vec4) -> Option<usize> {
    states
        .iter()
        .position(|s| (s.state.inner(v).norm() - 1.0).abs() < 1e-9)
}

/// Check count, zero magic, ray distinctness, entanglement labels and closure
/// under `H`, `S` on either qubit and both CNOTs.
pub fn verify_catalog(states: &[StabilizerState]) -> CatalogReport {
    let mut report = CatalogReport::default();
    let mut fail = |check, id, detail: String| {
        report.failures.push(CatalogFailure { check, id, detail });
    };

    let expected = count_stabilizer_states(2).unwrap_or(0) as usize;
    if states.len() != expected {
        fail(
            CatalogCheck::Count,
            0,
            format!("{} states, expected {expected}", states.len()),
        );
    }

    for s in states {
        let m2 = sre(&s.state, 2);
        if m2.abs() > 1e-12 {
            fail(CatalogCheck::ZeroMagic, s.id, format!("M2 = {m2:e}"));
        }
    }

    for (a, sa) in states.iter().enumerate() {
        for sb in &states[a + 1..] {
            let overlap = sa.state.inner(&sb.state).norm();
            if overlap >= 1.0 - 1e-9 {
                fail(
                    CatalogCheck::DistinctRays,
                    sb.id,
                    format!("same ray as state {}", sa.id),
                );
            }
        }
    }

    for s in states {
        let c = concurrence(&s.state);
        let ok = if s.entangled {
            (c - 1.0).abs() < 1e-9
        } else {
            c < 1e-9
        };
        if !ok {
            fail(
                CatalogCheck::EntanglementLabel,
                s.id,
                format!("concurrence {c:.3e}, entangled = {}", s.entangled),
            );
        }
    }

    let gens: [Mat4; 6] = gates::clifford_generators();
    const NAMES: [&str; 6] = ["H1", "H2", "S1", "S2", "CNOT12", "CNOT21"];
    for s in states {
        for (g, name) in gens.iter().zip(NAMES) {
            if find_ray(states, &g.apply(&s.state)).is_none() {
                fail(
                    CatalogCheck::Closure,
                    s.id,
                    format!("{name} maps it outside the set"),
                );
            }
        }
    }

    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{ONE, ZERO};

    #[test]
    fn counts() {
        assert_eq!(count_stabilizer_states(1).unwrap(), 6);
        assert_eq!(count_stabilizer_states(2).unwrap(), 60);
        assert_eq!(count_stabilizer_states(3).unwrap(), 1080);
        assert_eq!(count_stabilizer_states(0), Err(Error::ZeroQubits));
        assert_eq!(count_stabilizer_states(40), Err(Error::CountOverflow(40)));
    }

    #[test]
    fn count_matches_catalog() {
        assert_eq!(
            count_stabilizer_states(2).unwrap() as usize,
            stabilizer_catalog().len()
        );
    }

    #[test]
    fn reference_entries() {
        assert_eq!(stabilizer(1).unwrap().state, Vec4::basis(0));
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let s41 = Vec4::from_real([0.0, h, h, 0.0]);
        assert!(stabilizer(41).unwrap().state.max_abs_diff(&s41) < 1e-15);
        let s13 = CVec([ONE, IP, ONE, IP]).scale(C64::new(0.5, 0.0));
        assert!(stabilizer(13).unwrap().state.max_abs_diff(&s13) < 1e-15);
        assert!(stabilizer(0).is_err());
        assert!(stabilizer(61).is_err());
    }

    #[test]
    fn catalog_verifies() {
        let r = verify_catalog(stabilizer_catalog());
        assert!(r.passed(), "{:?}", r.failures);
    }

    #[test]
    fn tampered_magic_state_fails_magic_check() {
        let mut states = stabilizer_catalog().to_vec();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let t = C64::from_polar(h, std::f64::consts::FRAC_PI_4);
        states[12].state = CVec([C64::new(h, 0.0), t, ZERO, ZERO]);
        let r = verify_catalog(&states);
        assert!(r.failed(CatalogCheck::ZeroMagic));
        assert!(!r.failed(CatalogCheck::DistinctRays));
    }

    #[test]
    fn sign_flipped_13_is_still_a_stabilizer_state() {
        // (1, i, 1, −i)/2 = (I ⊗ SH)(|00⟩ + |11⟩)/√2 up to phase, so it has
        // zero magic and coincides with another catalog ray.
        let mut states = stabilizer_catalog().to_vec();
        states[12].state = CVec([ONE, IP, ONE, IM]).scale(C64::new(0.5, 0.0));
        let r = verify_catalog(&states);
        assert!(!r.failed(CatalogCheck::ZeroMagic));
        assert!(r.failed(CatalogCheck::DistinctRays));
    }

    #[test]
    fn duplicate_fails_distinctness() {
        let mut states = stabilizer_catalog().to_vec();
        states[1].state = CVec([ONE, ZERO, ZERO, ZERO]);
        let r = verify_catalog(&states);
        assert!(r.failed(CatalogCheck::DistinctRays));
    }

    #[test]
    fn four_pauli_expectations_are_unit() {
        use crate::magic::pauli_expectations;
        for s in stabilizer_catalog() {
            let e = pauli_expectations(&s.state);
            let unit = e.iter().filter(|x| (x.abs() - 1.0).abs() < 1e-12).count();
            let zero = e.iter().filter(|x| x.abs() < 1e-12).count();
            assert_eq!((unit, zero), (4, 12), "state {}", s.id);
        }
    }
}
