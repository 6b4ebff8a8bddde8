//! Fixed-size complex vectors and matrices for one and two qubits.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::Error;

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Relative squared-norm floor below which a state counts as annihilated.
///
/// Compared against `‖v‖² / max|A_ij|²`. The only exact physical zero sits
/// at roundoff (~1e-32), while helicity-suppressed amplitudes deep in the
/// ultrarelativistic regime reach ~1e-18, so the floor sits between them.
pub const EPS_NORM: f64 = 1e-24;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CVec<const N: usize>(pub [C64; N]);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CMat<const N: usize>(pub [[C64; N]; N]);

pub type Vec2 = CVec<2>;
pub type Vec4 = CVec<4>;
pub type Mat2 = CMat<2>;
pub type Mat4 = CMat<4>;

impl<const N: usize> CVec<N> {
    pub fn zeros() -> Self {
        CVec([ZERO; N])
    }

    pub fn from_real(v: [f64; N]) -> Self {
        CVec(v.map(|x| C64::new(x, 0.0)))
    }

    /// Computational basis vector `|k⟩`.
    pub fn basis(k: usize) -> Self {
        let mut v = Self::zeros();
        v.0[k] = ONE;
        v
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// `⟨self|other⟩`, antilinear in `self`.
    pub fn inner(&self, other: &Self) -> C64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn scale(&self, c: C64) -> Self {
        CVec(self.0.map(|z| z * c))
    }

    /// Unit vector along `self`, or `VanishingState` when `‖v‖² < EPS_NORM`.
    pub fn normalize(&self) -> Result<Self, Error> {
        self.normalize_relative(1.0)
    }

    /// Like [`normalize`](Self::normalize) with the floor measured against
    /// `reference` (typically the largest squared amplitude entry).
    pub fn normalize_relative(&self, reference: f64) -> Result<Self, Error> {
        let n2 = self.norm_sqr();
        if !n2.is_finite() || n2 < EPS_NORM * reference || n2 == 0.0 {
            return Err(Error::VanishingState);
        }
        Ok(self.scale(C64::new(1.0 / n2.sqrt(), 0.0)))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl<const N: usize> Index<usize> for CVec<N> {
    type Output = C64;
    fn index(&self, i: usize) -> &C64 {
        &self.0[i]
    }
}

impl<const N: usize> IndexMut<usize> for CVec<N> {
    fn index_mut(&mut self, i: usize) -> &mut C64 {
        &mut self.0[i]
    }
}

impl<const N: usize> Add for CVec<N> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let mut out = self;
        for (o, r) in out.0.iter_mut().zip(rhs.0) {
            *o += r;
        }
        out
    }
}

impl<const N: usize> Sub for CVec<N> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let mut out = self;
        for (o, r) in out.0.iter_mut().zip(rhs.0) {
            *o -= r;
        }
        out
    }
}

impl<const N: usize> CMat<N> {
    pub fn zeros() -> Self {
        CMat([[ZERO; N]; N])
    }

    pub fn identity() -> Self {
        let mut m = Self::zeros();
        for k in 0..N {
            m.0[k][k] = ONE;
        }
        m
    }

    pub fn from_real(rows: [[f64; N]; N]) -> Self {
        CMat(rows.map(|r| r.map(|x| C64::new(x, 0.0))))
    }

    pub fn diag(d: [C64; N]) -> Self {
        let mut m = Self::zeros();
        for k in 0..N {
            m.0[k][k] = d[k];
        }
        m
    }

    pub fn dagger(&self) -> Self {
        let mut m = Self::zeros();
        for r in 0..N {
            for c in 0..N {
                m.0[r][c] = self.0[c][r].conj();
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros();
        for r in 0..N {
            for c in 0..N {
                m.0[r][c] = self.0[c][r];
            }
        }
        m
    }

    pub fn scale(&self, c: C64) -> Self {
        CMat(self.0.map(|r| r.map(|z| z * c)))
    }

    pub fn apply(&self, v: &CVec<N>) -> CVec<N> {
        let mut out = CVec::zeros();
        for r in 0..N {
            let mut acc = ZERO;
            for c in 0..N {
                acc += self.0[r][c] * v.0[c];
            }
            out.0[r] = acc;
        }
        out
    }

    pub fn column(&self, c: usize) -> CVec<N> {
        let mut out = CVec::zeros();
        for r in 0..N {
            out.0[r] = self.0[r][c];
        }
        out
    }

    pub fn trace(&self) -> C64 {
        (0..N).map(|k| self.0[k][k]).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .flatten()
            .zip(other.0.iter().flatten())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.0
            .iter()
            .flatten()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.max_abs_diff(&self.dagger()) <= tol
    }

    /// Divide by the first (row-major) entry whose magnitude is within a
    /// relative 1e-9 of the largest, so that entry becomes exactly 1.
    ///
    /// Returns `None` for the zero matrix.
    pub fn fix_phase_and_scale(&self) -> Option<Self> {
        let max = self.max_abs();
        if max == 0.0 || !max.is_finite() {
            return None;
        }
        let pivot = self
            .0
            .iter()
            .flatten()
            .find(|z| z.norm() >= max * (1.0 - 1e-9))
            .copied()?;
        Some(self.scale(pivot.inv()))
    }
}

impl<const N: usize> Index<(usize, usize)> for CMat<N> {
    type Output = C64;
    fn index(&self, (r, c): (usize, usize)) -> &C64 {
        &self.0[r][c]
    }
}

impl<const N: usize> IndexMut<(usize, usize)> for CMat<N> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut C64 {
        &mut self.0[r][c]
    }
}

impl<const N: usize> Mul for CMat<N> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut m = Self::zeros();
        for r in 0..N {
            for c in 0..N {
                let mut acc = ZERO;
                for k in 0..N {
                    acc += self.0[r][k] * rhs.0[k][c];
                }
                m.0[r][c] = acc;
            }
        }
        m
    }
}

impl<const N: usize> Mul<CVec<N>> for CMat<N> {
    type Output = CVec<N>;
    fn mul(self, rhs: CVec<N>) -> CVec<N> {
        self.apply(&rhs)
    }
}

impl<const N: usize> Add for CMat<N> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let mut m = self;
        for r in 0..N {
            for c in 0..N {
                m.0[r][c] += rhs.0[r][c];
            }
        }
        m
    }
}

impl<const N: usize> Sub for CMat<N> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let mut m = self;
        for r in 0..N {
            for c in 0..N {
                m.0[r][c] -= rhs.0[r][c];
            }
        }
        m
    }
}

impl<const N: usize> Neg for CMat<N> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-ONE)
    }
}

/// Kronecker product with `a` acting on qubit 1 (the more significant bit).
pub fn tensor(a: &Mat2, b: &Mat2) -> Mat4 {
    let mut m = Mat4::zeros();
    for r in 0..4 {
        for c in 0..4 {
            m.0[r][c] = a.0[r >> 1][c >> 1] * b.0[r & 1][c & 1];
        }
    }
    m
}

pub fn tensor_vec(a: &Vec2, b: &Vec2) -> Vec4 {
    let mut v = Vec4::zeros();
    for k in 0..4 {
        v.0[k] = a.0[k >> 1] * b.0[k & 1];
    }
    v
}

/// `⟨v|m|v⟩` for a normalized `v`.
pub fn expectation<const N: usize>(v: &CVec<N>, m: &CMat<N>) -> C64 {
    v.inner(&m.apply(v))
}

pub mod gates {
    //! Single-qubit Paulis and the Clifford generators.

    use super::*;

    pub fn pauli_x() -> Mat2 {
        CMat([[ZERO, ONE], [ONE, ZERO]])
    }

    pub fn pauli_y() -> Mat2 {
        CMat([[ZERO, -I], [I, ZERO]])
    }

    pub fn pauli_z() -> Mat2 {
        CMat([[ONE, ZERO], [ZERO, -ONE]])
    }

    pub fn hadamard() -> Mat2 {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Mat2::from_real([[h, h], [h, -h]])
    }

    pub fn phase_s() -> Mat2 {
        CMat::diag([ONE, I])
    }

    /// Lift a single-qubit gate onto qubit `q` (0 = left factor) of two.
    pub fn on_qubit(g: &Mat2, q: usize) -> Mat4 {
        if q == 0 {
            tensor(g, &Mat2::identity())
        } else {
            tensor(&Mat2::identity(), g)
        }
    }

    /// CNOT with the given control qubit (0 or 1) on two qubits.
    pub fn cnot(control: usize) -> Mat4 {
        let mut m = Mat4::zeros();
        for k in 0..4usize {
            let (b1, b2) = (k >> 1, k & 1);
            let out = if control == 0 {
                (b1 << 1) | (b2 ^ b1)
            } else {
                ((b1 ^ b2) << 1) | b2
            };
            m.0[out][k] = ONE;
        }
        m
    }

    pub fn swap() -> Mat4 {
        let mut m = Mat4::zeros();
        for k in 0..4usize {
            let out = ((k & 1) << 1) | (k >> 1);
            m.0[out][k] = ONE;
        }
        m
    }

    /// The six generators used for random Clifford circuits:
    /// `H₁, H₂, S₁, S₂, CNOT₁₂, CNOT₂₁`.
    pub fn clifford_generators() -> [Mat4; 6] {
        [
            on_qubit(&hadamard(), 0),
            on_qubit(&hadamard(), 1),
            on_qubit(&phase_s(), 0),
            on_qubit(&phase_s(), 1),
            cnot(0),
            cnot(1),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::gates::*;
    use super::*;

    #[test]
    fn tensor_of_identities_is_identity() {
        assert_eq!(tensor(&Mat2::identity(), &Mat2::identity()), Mat4::identity());
    }

    #[test]
    fn zz_is_diagonal_signs() {
        let zz = tensor(&pauli_z(), &pauli_z());
        let expect = Mat4::diag([ONE, -ONE, -ONE, ONE]);
        assert_eq!(zz, expect);
    }

    #[test]
    fn xy_maps_up_up_to_i_down_down() {
        let out = tensor(&pauli_x(), &pauli_y()).apply(&Vec4::basis(0));
        let expect = Vec4::basis(3).scale(I);
        assert!(out.max_abs_diff(&expect) < 1e-15);
    }

    #[test]
    fn normalize_examples() {
        let v = Vec4::from_real([2.0, 0.0, 0.0, 0.0]).normalize().unwrap();
        assert_eq!(v, Vec4::basis(0));
        let v = Vec4::from_real([1.0; 4]).normalize().unwrap();
        assert!(v.max_abs_diff(&Vec4::from_real([0.5; 4])) < 1e-15);
        assert!(matches!(
            Vec4::zeros().normalize(),
            Err(Error::VanishingState)
        ));
    }

    #[test]
    fn expectation_examples() {
        let up = Vec4::basis(0);
        let zz = tensor(&pauli_z(), &pauli_z());
        assert!((expectation(&up, &zz) - ONE).norm() < 1e-15);

        let h = std::f64::consts::FRAC_1_SQRT_2;
        let bell = Vec4::from_real([h, 0.0, 0.0, h]);
        let xx = tensor(&pauli_x(), &pauli_x());
        assert!((expectation(&bell, &xx) - ONE).norm() < 1e-15);
        let zi = on_qubit(&pauli_z(), 0);
        assert!(expectation(&bell, &zi).norm() < 1e-15);
    }

    #[test]
    fn cnot_control_first_flips_second() {
        // |10⟩ -> |11⟩
        let out = cnot(0).apply(&Vec4::basis(2));
        assert_eq!(out, Vec4::basis(3));
        // control on qubit 2: |01⟩ -> |11⟩
        let out = cnot(1).apply(&Vec4::basis(1));
        assert_eq!(out, Vec4::basis(3));
    }

    #[test]
    fn generators_are_unitary() {
        for g in clifford_generators() {
            assert!((g * g.dagger()).max_abs_diff(&Mat4::identity()) < 1e-15);
        }
    }

    #[test]
    fn phase_fixing_makes_pivot_one() {
        let m = Mat2::identity().scale(C64::new(0.0, -3.0));
        let f = m.fix_phase_and_scale().unwrap();
        assert!(f.max_abs_diff(&Mat2::identity()) < 1e-15);
        assert!(Mat2::zeros().fix_phase_and_scale().is_none());
    }
}
