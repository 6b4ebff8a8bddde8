//! Phase-free Pauli strings.

use std::fmt;
use std::sync::OnceLock;

use crate::error::Error;
use crate::linalg::{gates, CMat, C64, ONE, ZERO};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    pub fn matrix(self) -> CMat<2> {
        match self {
            Pauli::I => CMat::identity(),
            Pauli::X => gates::pauli_x(),
            Pauli::Y => gates::pauli_y(),
            Pauli::Z => gates::pauli_z(),
        }
    }
}

impl fmt::Display for Pauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        };
        write!(f, "{c}")
    }
}

/// Tensor product of single-qubit Paulis; `labels[0]` acts on qubit 1.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliString<const D: usize> {
    pub labels: Vec<Pauli>,
    pub matrix: CMat<D>,
}

impl<const D: usize> PauliString<D> {
    pub fn new(labels: Vec<Pauli>) -> Result<Self, Error> {
        let n = qubits_for(D)?;
        if labels.len() != n as usize {
            return Err(Error::UnsupportedDimension(D));
        }
        let singles: Vec<CMat<2>> = labels.iter().map(|p| p.matrix()).collect();
        let mut m = CMat::<D>::zeros();
        for r in 0..D {
            for c in 0..D {
                let mut z: C64 = ONE;
                for (k, s) in singles.iter().enumerate() {
                    let shift = n as usize - 1 - k;
                    z *= s.0[(r >> shift) & 1][(c >> shift) & 1];
                    if z == ZERO {
                        break;
                    }
                }
                m.0[r][c] = z;
            }
        }
        Ok(PauliString { labels, matrix: m })
    }

    pub fn is_identity(&self) -> bool {
        self.labels.iter().all(|p| *p == Pauli::I)
    }

    /// Whether two strings commute (otherwise they anticommute).
    pub fn commutes_with(&self, other: &Self) -> bool {
        let clashes = self
            .labels
            .iter()
            .zip(&other.labels)
            .filter(|(a, b)| **a != Pauli::I && **b != Pauli::I && a != b)
            .count();
        clashes % 2 == 0
    }
}

impl<const D: usize> fmt::Display for PauliString<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.labels {
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

fn qubits_for(d: usize) -> Result<u32, Error> {
    if d < 2 || !d.is_power_of_two() {
        return Err(Error::UnsupportedDimension(d));
    }
    Ok(d.trailing_zeros())
}

/// All `D²` strings on `log₂ D` qubits, lexicographic in `I < X < Y < Z`
/// with qubit 1 as the most significant letter.
pub fn pauli_strings<const D: usize>() -> Result<Vec<PauliString<D>>, Error> {
    let n = qubits_for(D)? as usize;
    let mut out = Vec::with_capacity(D * D);
    for code in 0..(1usize << (2 * n)) {
        let labels = (0..n)
            .map(|k| Pauli::ALL[(code >> (2 * (n - 1 - k))) & 3])
            .collect();
        out.push(PauliString::new(labels)?);
    }
    Ok(out)
}

/// Dimensions with a cached Pauli basis.
pub trait PauliBasis<const D: usize> {
    fn strings() -> &'static [PauliString<D>];
}

/// Marker carrying the cached bases for one and two qubits.
pub struct Qubits;

impl PauliBasis<2> for Qubits {
    fn strings() -> &'static [PauliString<2>] {
        static CELL: OnceLock<Vec<PauliString<2>>> = OnceLock::new();
        CELL.get_or_init(|| pauli_strings::<2>().expect("dimension 2 is valid"))
    }
}

impl PauliBasis<4> for Qubits {
    fn strings() -> &'static [PauliString<4>] {
        static CELL: OnceLock<Vec<PauliString<4>>> = OnceLock::new();
        CELL.get_or_init(|| pauli_strings::<4>().expect("dimension 4 is valid"))
    }
}

pub fn two_qubit_paulis() -> &'static [PauliString<4>] {
    <Qubits as PauliBasis<4>>::strings()
}
