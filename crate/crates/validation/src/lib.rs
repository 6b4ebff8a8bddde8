//! Reference computations written without the `qedmagic` library, used to
//! cross-check it in the acceptance gate.
//!
//! Everything here works on plain `Vec<Complex64>` and dense row-major
//! matrices and favors directness over speed.

use std::collections::{HashSet, VecDeque};

use num_complex::Complex64 as C;

const Z: C = C::new(0.0, 0.0);
const O: C = C::new(1.0, 0.0);
const J: C = C::new(0.0, 1.0);

pub type Matrix = Vec<Vec<C>>;

/// `I, X, Y, Z`.
pub fn paulis() -> [[[C; 2]; 2]; 4] {
    [
        [[O, Z], [Z, O]],
        [[Z, O], [O, Z]],
        [[Z, -J], [J, Z]],
        [[O, Z], [Z, -O]],
    ]
}

pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let (n, m) = (a.len(), b.len());
    let mut out = vec![vec![Z; n * m]; n * m];
    for (i, ra) in a.iter().enumerate() {
        for (j, &x) in ra.iter().enumerate() {
            for (k, rb) in b.iter().enumerate() {
                for (l, &y) in rb.iter().enumerate() {
                    out[i * m + k][j * m + l] = x * y;
                }
            }
        }
    }
    out
}

pub fn apply(m: &Matrix, v: &[C]) -> Vec<C> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

fn to_matrix(p: &[[C; 2]; 2]) -> Matrix {
    p.iter().map(|r| r.to_vec()).collect()
}

/// All `4ⁿ` Pauli strings on `n` qubits, leftmost factor most significant.
pub fn pauli_strings(n: usize) -> Vec<Matrix> {
    let singles: Vec<Matrix> = paulis().iter().map(to_matrix).collect();
    let mut out = vec![vec![vec![O]]];
    for _ in 0..n {
        out = out
            .iter()
            .flat_map(|acc| singles.iter().map(move |p| kron(acc, p)))
            .collect();
    }
    out
}

/// `Σ_P ⟨ψ|P|ψ⟩⁴ / d` summed explicitly over Pauli strings, for any
/// nonzero vector of length `2ⁿ`.
pub fn xi2(psi: &[C]) -> f64 {
    let d = psi.len();
    let n = d.trailing_zeros() as usize;
    assert_eq!(1 << n, d, "dimension must be a power of two");
    let norm: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
    pauli_strings(n)
        .iter()
        .map(|p| {
            let e: C = psi.iter().zip(apply(p, psi)).map(|(a, b)| a.conj() * b).sum();
            (e.re / norm).powi(4)
        })
        .sum::<f64>()
        / d as f64
}

pub fn stabilizer_renyi_2(psi: &[C]) -> f64 {
    -xi2(psi).ln()
}

fn single_qubit(n: usize, q: usize, g: [[C; 2]; 2]) -> Matrix {
    let id = to_matrix(&paulis()[0]);
    (0..n).fold(vec![vec![O]], |acc, k| {
        kron(&acc, &if k == q { to_matrix(&g) } else { id.clone() })
    })
}

fn cnot(n: usize, control: usize, target: usize) -> Matrix {
    let d = 1 << n;
    let bit = |q: usize| 1usize << (n - 1 - q);
    (0..d)
        .map(|row| {
            // Row `row` has its 1 at the unique column mapped onto it.
            let col = if row & bit(control) != 0 { row ^ bit(target) } else { row };
            (0..d).map(|k| if k == col { O } else { Z }).collect()
        })
        .collect()
}

/// `H` and `S` on every qubit and `CNOT` on every ordered pair.
pub fn clifford_generators(n: usize) -> Vec<Matrix> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let had = [[C::new(h, 0.0), C::new(h, 0.0)], [C::new(h, 0.0), C::new(-h, 0.0)]];
    let s = [[O, Z], [Z, J]];
    let mut out = Vec::new();
    for q in 0..n {
        out.push(single_qubit(n, q, had));
        out.push(single_qubit(n, q, s));
    }
    for c in 0..n {
        for t in 0..n {
            if c != t {
                out.push(cnot(n, c, t));
            }
        }
    }
    out
}

/// Hashable representative of the ray through `v`: normalized, with the
/// first non-negligible entry made real positive, rounded to 1e-8.
pub fn ray_key(v: &[C]) -> Vec<(i64, i64)> {
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let pivot = v.iter().find(|z| z.norm() > 1e-6 * norm).copied().unwrap_or(O);
    let phase = pivot.conj() / pivot.norm();
    v.iter()
        .map(|z| {
            let w = z * phase / norm;
            ((w.re * 1e8).round() as i64, (w.im * 1e8).round() as i64)
        })
        .collect()
}

/// Orbit of `|0…0⟩` under the Clifford generators, one vector per ray.
pub fn stabilizer_states(n: usize) -> Vec<Vec<C>> {
    let gens = clifford_generators(n);
    let mut start = vec![Z; 1 << n];
    start[0] = O;
    let mut seen = HashSet::from([ray_key(&start)]);
    let mut queue = VecDeque::from([start.clone()]);
    let mut out = vec![start];
    while let Some(v) = queue.pop_front() {
        for g in &gens {
            let w = apply(g, &v);
            if seen.insert(ray_key(&w)) {
                queue.push_back(w.clone());
                out.push(w);
            }
        }
    }
    out
}

/// Spin amplitude matrix of e⁻e⁺ → μ⁻μ⁺ at threshold as tabulated, indexed
/// `[final][initial]` with basis `↑↑, ↑↓, ↓↑, ↓↓`.
pub fn tabulated_threshold_matrix(lambda: f64) -> [[f64; 4]; 4] {
    [
        [-2.0, 0.0, 0.0, 0.0],
        [0.0, -lambda, lambda, 0.0],
        [0.0, lambda, -lambda, 0.0],
        [0.0, 0.0, 0.0, -2.0],
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orbit_sizes() {
        assert_eq!(stabilizer_states(1).len(), 6);
        assert_eq!(stabilizer_states(2).len(), 60);
    }

    #[test]
    fn basis_state_has_no_magic() {
        assert!(stabilizer_renyi_2(&[O, Z, Z, Z]).abs() < 1e-14);
    }

    #[test]
    fn t_state_value() {
        // ⟨X⟩ = ⟨Y⟩ = 1/√2, ⟨Z⟩ = 0, so Ξ₂ = (1 + 1/4 + 1/4) / 2.
        let t = [O, C::from_polar(1.0, std::f64::consts::FRAC_PI_4)];
        assert!((xi2(&t) - 0.75).abs() < 1e-14);
    }
}
