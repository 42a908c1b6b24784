//! Logical circuits: the input language of the compiler.

use nalgebra::DMatrix;

use super::CompileError;
use crate::linalg::{c, kron2, pauli_x, pauli_z, Mat4, C};
use crate::matchgate::{NamedGate, Unitary2};
use crate::oracle::StateVector;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum LogicalGate {
    OneQubit {
        target: usize,
        u: Unitary2,
    },
    Cz(usize, usize),
    /// `exp(i a X)`
    XRot {
        target: usize,
        a: f64,
    },
    /// `exp(i a X_x Z_z)`
    XzRot {
        x: usize,
        z: usize,
        a: f64,
    },
}

impl LogicalGate {
    pub fn targets(&self) -> Vec<usize> {
        match *self {
            LogicalGate::OneQubit { target, .. } | LogicalGate::XRot { target, .. } => vec![target],
            LogicalGate::Cz(i, j) => vec![i, j],
            LogicalGate::XzRot { x, z, .. } => vec![x, z],
        }
    }

    pub fn is_two_qubit(&self) -> bool {
        self.targets().len() == 2
    }

    /// Native to the XY-interaction compiler.
    pub fn is_xy_primitive(&self) -> bool {
        matches!(self, LogicalGate::XRot { .. } | LogicalGate::XzRot { .. })
    }

    pub fn name(&self) -> &'static str {
        match self {
            LogicalGate::OneQubit { .. } => "u",
            LogicalGate::Cz(..) => "cz",
            LogicalGate::XRot { .. } => "xrot",
            LogicalGate::XzRot { .. } => "xzrot",
        }
    }
}

/// `exp(i a X ⊗ Z)`.
pub fn xz_rotation(a: f64) -> Mat4 {
    Mat4::identity() * c(a.cos(), 0.0) + kron2(&pauli_x(), &pauli_z()) * c(0.0, a.sin())
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct LogicalCircuit {
    m: usize,
    gates: Vec<LogicalGate>,
}

impl LogicalCircuit {
    pub fn new(m: usize) -> Self {
        Self { m, gates: Vec::new() }
    }

    pub fn push(&mut self, gate: LogicalGate) -> Result<(), CompileError> {
        let targets = gate.targets();
        for &t in &targets {
            if t >= self.m {
                return Err(CompileError::LogicalOutOfRange { qubit: t, m: self.m });
            }
        }
        if targets.len() == 2 && targets[0] == targets[1] {
            return Err(CompileError::RepeatedLogicalTarget(targets[0]));
        }
        self.gates.push(gate);
        Ok(())
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn gates(&self) -> &[LogicalGate] {
        &self.gates
    }

    pub fn two_qubit_count(&self) -> usize {
        self.gates.iter().filter(|g| g.is_two_qubit()).count()
    }

    /// Dense `2^m x 2^m` unitary, logical qubit 0 most significant.
    pub fn unitary(&self) -> DMatrix<C> {
        let dim = 1usize << self.m;
        let mut u = DMatrix::zeros(dim, dim);
        for col in 0..dim {
            let mut state = StateVector::basis(self.m, col).expect("logical register is small");
            for g in &self.gates {
                match *g {
                    LogicalGate::OneQubit { target, u } => state.apply_single(u.matrix(), target),
                    LogicalGate::XRot { target, a } => state.apply_single(Unitary2::x_rotation(a).matrix(), target),
                    LogicalGate::Cz(i, j) => state.apply_two(&NamedGate::Cz.matrix(), i, j),
                    LogicalGate::XzRot { x, z, a } => state.apply_two(&xz_rotation(a), x, z),
                }
                .expect("targets validated on push");
            }
            for (r, a) in state.amplitudes().iter().enumerate() {
                u[(r, col)] = *a;
            }
        }
        u
    }

    /// `P^{⊗m} U P^{†⊗m}`: the same circuit with every `X` replaced by `Y`.
    pub fn unitary_conjugated_by_phase(&self) -> DMatrix<C> {
        let dim = 1usize << self.m;
        let diag: Vec<C> = (0..dim)
            .map(|x| {
                let ones = (x as u64).count_ones() % 4;
                [c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)][ones as usize]
            })
            .collect();
        let u = self.unitary();
        DMatrix::from_fn(dim, dim, |r, col| diag[r] * u[(r, col)] * diag[col].conj())
    }
}

/// `H_i H_j CZ e^{iaX_j} CZ H_j H_i = exp(i a X_i Z_j)`, in time order.
pub fn lower_xz_rotation(x: usize, z: usize, a: f64) -> Vec<LogicalGate> {
    let h = Unitary2::hadamard();
    vec![
        LogicalGate::OneQubit { target: x, u: h },
        LogicalGate::OneQubit { target: z, u: h },
        LogicalGate::Cz(x, z),
        LogicalGate::XRot { target: z, a },
        LogicalGate::Cz(x, z),
        LogicalGate::OneQubit { target: x, u: h },
        LogicalGate::OneQubit { target: z, u: h },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{fidelity_up_to_phase, max_abs_diff};

    #[test]
    fn xz_lowering_is_exact() {
        for a in [0.3, -1.1, std::f64::consts::FRAC_PI_2] {
            let mut direct = LogicalCircuit::new(3);
            direct.push(LogicalGate::XzRot { x: 2, z: 0, a }).unwrap();
            let mut lowered = LogicalCircuit::new(3);
            for g in lower_xz_rotation(2, 0, a) {
                lowered.push(g).unwrap();
            }
            assert!(max_abs_diff(&direct.unitary(), &lowered.unitary()) < 1e-12);
        }
    }

    #[test]
    fn phase_conjugation_turns_x_into_y() {
        let mut circ = LogicalCircuit::new(1);
        circ.push(LogicalGate::XRot { target: 0, a: 0.4 }).unwrap();
        let y_rot = crate::linalg::pauli_rotation(0.4, &crate::linalg::pauli_y());
        let expected = crate::linalg::to_dynamic2(&y_rot);
        assert!(fidelity_up_to_phase(&circ.unitary_conjugated_by_phase(), &expected) > 1.0 - 1e-12);
    }

    #[test]
    fn push_validates_targets() {
        let mut circ = LogicalCircuit::new(2);
        assert!(circ.push(LogicalGate::Cz(0, 2)).is_err());
        assert!(circ.push(LogicalGate::Cz(1, 1)).is_err());
    }
}
