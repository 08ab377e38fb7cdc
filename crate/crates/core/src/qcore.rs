//! Exact dense statevector engine for one- and two-qubit circuits.
//!
//! Basis ordering is `index = 2 * bit(qubit 1) + bit(qubit 2)`, so qubit 1 is
//! the leftmost ket symbol and the top wire of a circuit diagram.

use std::f64::consts::{FRAC_1_SQRT_2, TAU};
use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Tolerance used when validating gate unitarity at construction.
pub const UNITARY_TOL: f64 = 1e-10;

/// Tolerance on the squared norm of a state vector.
pub const NORM_TOL: f64 = 1e-12;

/// The random stream used by every stochastic operation in the crate.
pub type SimRng = ChaCha8Rng;

/// Creates the deterministic random stream for `seed`.
pub fn seeded_rng(seed: u64) -> SimRng {
    SimRng::seed_from_u64(seed)
}

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

fn check_qubits(n_qubits: usize) -> Result<()> {
    match n_qubits {
        1 | 2 => Ok(()),
        n => Err(Error::UnsupportedQubitCount(n)),
    }
}

/// A computational basis label such as `|0⟩` or `|10⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisLabel {
    n_qubits: usize,
    index: usize,
}

impl BasisLabel {
    pub fn new(n_qubits: usize, index: usize) -> Result<Self> {
        check_qubits(n_qubits)?;
        if index >= 1 << n_qubits {
            return Err(Error::DimensionMismatch {
                expected: 1 << n_qubits,
                found: index + 1,
            });
        }
        Ok(Self { n_qubits, index })
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// The bit carried by `qubit` (1-based, qubit 1 leftmost).
    pub fn bit(&self, qubit: usize) -> u8 {
        ((self.index >> (self.n_qubits - qubit)) & 1) as u8
    }

    /// Bit string without ket delimiters, e.g. `"10"`.
    pub fn bits(&self) -> String {
        (1..=self.n_qubits)
            .map(|q| if self.bit(q) == 0 { '0' } else { '1' })
            .collect()
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|{}⟩", self.bits())
    }
}

impl Serialize for BasisLabel {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.bits())
    }
}

/// Normalized amplitude vector over `2^n` basis states.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// Builds a state from raw amplitudes, checking length, finiteness and norm.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        let n_qubits = match amplitudes.len() {
            2 => 1,
            4 => 2,
            n => {
                return Err(Error::DimensionMismatch {
                    expected: 4,
                    found: n,
                })
            }
        };
        if amplitudes
            .iter()
            .any(|a| !a.re.is_finite() || !a.im.is_finite())
        {
            return Err(Error::NonFinite("amplitude"));
        }
        let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self {
            n_qubits,
            amplitudes,
        })
    }

    /// Builds a state from real amplitudes.
    pub fn from_real(amplitudes: &[f64]) -> Result<Self> {
        Self::new(amplitudes.iter().map(|&a| Complex64::new(a, 0.0)).collect())
    }

    /// The basis state `|label⟩`.
    pub fn basis(label: BasisLabel) -> Self {
        let mut amplitudes = vec![ZERO; 1 << label.n_qubits];
        amplitudes[label.index] = ONE;
        Self {
            n_qubits: label.n_qubits,
            amplitudes,
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Largest entrywise amplitude difference to `other`.
    pub fn max_abs_diff(&self, other: &StateVector) -> f64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Returns `|0⟩` or `|00⟩`.
pub fn initial_state(n_qubits: usize) -> Result<StateVector> {
    check_qubits(n_qubits)?;
    Ok(StateVector::basis(BasisLabel { n_qubits, index: 0 }))
}

/// Dense square complex matrix of dimension 2 or 4, stored row-major.
///
/// Unlike [`Gate`], a `Matrix` carries no unitarity guarantee.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl Matrix {
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if dim != 2 && dim != 4 {
            return Err(Error::DimensionMismatch {
                expected: 4,
                found: dim,
            });
        }
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: entries.len(),
            });
        }
        if entries
            .iter()
            .any(|a| !a.re.is_finite() || !a.im.is_finite())
        {
            return Err(Error::NonFinite("matrix entry"));
        }
        Ok(Self { dim, entries })
    }

    /// Builds a matrix from real row-major entries.
    pub fn from_real(dim: usize, entries: &[f64]) -> Result<Self> {
        Self::new(
            dim,
            entries.iter().map(|&a| Complex64::new(a, 0.0)).collect(),
        )
    }

    pub fn identity(dim: usize) -> Result<Self> {
        let entries = (0..dim * dim)
            .map(|k| if k % (dim + 1) == 0 { ONE } else { ZERO })
            .collect();
        Self::new(dim, entries)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Entry at zero-based `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn adjoint(&self) -> Matrix {
        let n = self.dim;
        let mut entries = vec![ZERO; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[j * n + i] = self.entries[i * n + j].conj();
            }
        }
        Matrix { dim: n, entries }
    }

    /// Kronecker product `self ⊗ other`; `self` acts on the leading qubit.
    pub fn kron(&self, other: &Matrix) -> Result<Matrix> {
        if self.dim != 2 || other.dim != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: self.dim.max(other.dim),
            });
        }
        let mut entries = vec![ZERO; 16];
        for i in 0..2 {
            for j in 0..2 {
                let a = self.get(i, j);
                for k in 0..2 {
                    for l in 0..2 {
                        entries[(2 * i + k) * 4 + 2 * j + l] = a * other.get(k, l);
                    }
                }
            }
        }
        Ok(Matrix { dim: 4, entries })
    }

    /// Largest entrywise deviation of `U†U` from the identity.
    pub fn unitarity_deviation(&self) -> f64 {
        let n = self.dim;
        let product = &self.adjoint() * self;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let target = if i == j { ONE } else { ZERO };
                worst = worst.max((product.get(i, j) - target).norm());
            }
        }
        worst
    }
}

impl Mul for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.dim, rhs.dim, "matrix dimensions must agree");
        let n = self.dim;
        let mut entries = vec![ZERO; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                for j in 0..n {
                    entries[i * n + j] += a * rhs.entries[k * n + j];
                }
            }
        }
        Matrix { dim: n, entries }
    }
}

impl AsRef<Matrix> for Matrix {
    fn as_ref(&self) -> &Matrix {
        self
    }
}

/// True iff every entry of `U†U - I` has modulus at most `tol`.
pub fn is_unitary(m: &Matrix, tol: f64) -> bool {
    m.unitarity_deviation() <= tol
}

/// A unitary matrix acting on one or two qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct Gate(Matrix);

impl Gate {
    /// Wraps `matrix`, rejecting it unless unitary within [`UNITARY_TOL`].
    pub fn new(matrix: Matrix) -> Result<Self> {
        let deviation = matrix.unitarity_deviation();
        if deviation > UNITARY_TOL {
            return Err(Error::NotUnitary(deviation));
        }
        Ok(Gate(matrix))
    }

    pub fn identity(dim: usize) -> Result<Self> {
        Matrix::identity(dim).map(Gate)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.0.get(row, col)
    }

    /// `self · other` (apply `other` first).
    pub fn compose(&self, other: &Gate) -> Result<Gate> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Gate::new(&self.0 * &other.0)
    }
}

impl AsRef<Matrix> for Gate {
    fn as_ref(&self) -> &Matrix {
        &self.0
    }
}

impl TryFrom<Matrix> for Gate {
    type Error = Error;

    fn try_from(matrix: Matrix) -> Result<Self> {
        Gate::new(matrix)
    }
}

/// Real rotation `[[cos, -sin], [sin, cos]]` by `angle` radians.
pub fn rotation_gate(angle: f64) -> Result<Gate> {
    if !angle.is_finite() {
        return Err(Error::NonFinite("rotation angle"));
    }
    let (s, c) = angle.sin_cos();
    Gate::new(Matrix::from_real(2, &[c, -s, s, c])?)
}

pub fn hadamard() -> Gate {
    let h = FRAC_1_SQRT_2;
    Gate(Matrix::from_real(2, &[h, h, h, -h]).expect("static shape"))
}

/// Controlled-NOT with `control` (1 or 2) as the control qubit.
///
/// `cnot(1)` swaps `|10⟩ ↔ |11⟩`; `cnot(2)` swaps `|01⟩ ↔ |11⟩`.
pub fn cnot(control: usize) -> Result<Gate> {
    let (a, b) = match control {
        1 => (2, 3),
        2 => (1, 3),
        c => return Err(Error::InvalidControl(c)),
    };
    let mut entries = vec![ZERO; 16];
    for i in 0..4 {
        let j = if i == a {
            b
        } else if i == b {
            a
        } else {
            i
        };
        entries[i * 4 + j] = ONE;
    }
    Ok(Gate(Matrix::new(4, entries)?))
}

/// Two-qubit gate `g1 ⊗ g2`, with `g1` on qubit 1.
pub fn tensor(g1: &Gate, g2: &Gate) -> Result<Gate> {
    Gate::new(g1.0.kron(&g2.0)?)
}

/// Matrix-vector product `g · s`.
pub fn apply(g: &Gate, s: &StateVector) -> Result<StateVector> {
    let n = g.dim();
    if n != s.dim() {
        return Err(Error::DimensionMismatch {
            expected: s.dim(),
            found: n,
        });
    }
    let amplitudes = (0..n)
        .map(|i| (0..n).map(|j| g.get(i, j) * s.amplitudes[j]).sum())
        .collect();
    Ok(StateVector {
        n_qubits: s.n_qubits,
        amplitudes,
    })
}

/// Labeled probabilities over measurement outcomes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutcomeDistribution {
    labels: Vec<BasisLabel>,
    probabilities: Vec<f64>,
}

impl OutcomeDistribution {
    pub fn new(labels: Vec<BasisLabel>, probabilities: Vec<f64>) -> Result<Self> {
        if labels.len() != probabilities.len() {
            return Err(Error::DimensionMismatch {
                expected: labels.len(),
                found: probabilities.len(),
            });
        }
        if let Some(p) = probabilities.iter().find(|p| !(0.0..=1.0).contains(*p)) {
            return Err(Error::InvalidDistribution(format!(
                "probability {p} outside [0, 1]"
            )));
        }
        let total: f64 = probabilities.iter().sum();
        if (total - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidDistribution(format!(
                "probabilities sum to {total}"
            )));
        }
        Ok(Self {
            labels,
            probabilities,
        })
    }

    pub fn labels(&self) -> &[BasisLabel] {
        &self.labels
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn probability(&self, label: BasisLabel) -> f64 {
        self.labels
            .iter()
            .position(|l| *l == label)
            .map_or(0.0, |i| self.probabilities[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (BasisLabel, f64)> + '_ {
        self.labels
            .iter()
            .copied()
            .zip(self.probabilities.iter().copied())
    }

    /// Draws one outcome index by inverse-CDF sampling.
    pub fn sample_index<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let u: f64 = rng.random();
        let mut acc = 0.0;
        for (i, p) in self.probabilities.iter().enumerate() {
            acc += p;
            if u < acc {
                return i;
            }
        }
        // u landed in the rounding gap above the last cumulative sum
        self.probabilities
            .iter()
            .rposition(|&p| p > 0.0)
            .unwrap_or(self.probabilities.len() - 1)
    }
}

/// Born-rule probabilities `|a_i|²` in basis order.
pub fn probabilities(s: &StateVector) -> OutcomeDistribution {
    let labels = (0..s.dim())
        .map(|index| BasisLabel {
            n_qubits: s.n_qubits,
            index,
        })
        .collect();
    let probabilities = s
        .amplitudes
        .iter()
        .map(|a| a.norm_sqr().clamp(0.0, 1.0))
        .collect();
    OutcomeDistribution {
        labels,
        probabilities,
    }
}

/// Measures every qubit, returning the observed label and the collapsed basis state.
pub fn measure_collapse<R: Rng + ?Sized>(
    s: &StateVector,
    rng: &mut R,
) -> (BasisLabel, StateVector) {
    let dist = probabilities(s);
    let label = dist.labels[dist.sample_index(rng)];
    (label, StateVector::basis(label))
}

/// Measures one qubit of a two-qubit state.
///
/// Returns the observed bit and the renormalized one-qubit state left on the
/// other wire.
pub fn measure_qubit<R: Rng + ?Sized>(
    s: &StateVector,
    qubit: usize,
    rng: &mut R,
) -> Result<(u8, StateVector)> {
    if s.n_qubits != 2 {
        return Err(Error::UnsupportedQubitCount(s.n_qubits));
    }
    if qubit != 1 && qubit != 2 {
        return Err(Error::InvalidQubit(qubit));
    }
    // indices of the remaining qubit's |0⟩ and |1⟩ for each measured bit
    let branch = |bit: usize| -> [usize; 2] {
        if qubit == 1 {
            [2 * bit, 2 * bit + 1]
        } else {
            [bit, 2 + bit]
        }
    };
    let weight = |bit: usize| -> f64 {
        branch(bit)
            .iter()
            .map(|&i| s.amplitudes[i].norm_sqr())
            .sum()
    };
    let p0 = weight(0);
    let u: f64 = rng.random();
    let bit = if u < p0 { 0 } else { 1 };
    let norm = weight(bit).sqrt();
    let amplitudes = branch(bit)
        .iter()
        .map(|&i| s.amplitudes[i] / norm)
        .collect();
    Ok((
        bit as u8,
        StateVector {
            n_qubits: 1,
            amplitudes,
        },
    ))
}

/// Samples `e^{iδ} · diag(e^{iα}, 1) · R_θ · diag(e^{iβ}, 1)` with
/// `θ = asin(√u)`, `u ~ U[0, 1]` and phases uniform on `[0, 2π)`.
pub fn random_unitary_2x2<R: Rng + ?Sized>(rng: &mut R) -> Gate {
    let u: f64 = rng.random();
    let alpha = rng.random::<f64>() * TAU;
    let beta = rng.random::<f64>() * TAU;
    let delta = rng.random::<f64>() * TAU;
    let theta = u.sqrt().asin();
    let phase = |x: f64| Complex64::from_polar(1.0, x);
    let left = Matrix::new(2, vec![phase(alpha), ZERO, ZERO, ONE]).expect("2x2");
    let right = Matrix::new(2, vec![phase(beta), ZERO, ZERO, ONE]).expect("2x2");
    let (s, c) = theta.sin_cos();
    let rot = Matrix::from_real(2, &[c, -s, s, c]).expect("2x2");
    let mut m = &(&left * &rot) * &right;
    let global = phase(delta);
    for e in &mut m.entries {
        *e *= global;
    }
    Gate::new(m).expect("product of unitaries is unitary")
}
