//! Matchgate Hamiltonians as quadratic Majorana generators, and the
//! orthogonal rotations they induce.
//!
//! A gate `U = exp(iH)` with `H = (i/4) Σ h_ab c_a c_b` conjugates Majorana
//! operators linearly: `U† c_a U = Σ_b R_ab c_b` with `R = exp(-h)`. A
//! nearest-neighbour gate only touches four modes, so its generator and
//! rotation are stored as 4x4 blocks.

use nalgebra::{DMatrix, Matrix4};

use super::JwError;
use crate::matchgate::MatchgateHamiltonian;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Term {
    ZFirst,
    ZSecond,
    XX,
    YY,
    XY,
    YX,
}

fn coefficient(h: &MatchgateHamiltonian, t: Term) -> f64 {
    match t {
        Term::ZFirst => h.zu,
        Term::ZSecond => h.zv,
        Term::XX => h.xx,
        Term::YY => h.yy,
        Term::XY => h.xy,
        Term::YX => h.yx,
    }
}

// Each Pauli term equals s·i·c_a c_b for local modes a, b of the block.
// Path block modes are 2k, 2k+1, 2k+2, 2k+3.
const PATH_TERMS: [(Term, usize, usize, f64); 6] = [
    (Term::ZFirst, 0, 1, -1.0),
    (Term::ZSecond, 2, 3, -1.0),
    (Term::XX, 1, 2, -1.0),
    (Term::YY, 0, 3, 1.0),
    (Term::XY, 1, 3, -1.0),
    (Term::YX, 0, 2, 1.0),
];

// Wrap block modes are 0, 1, 2n-2, 2n-1. The two-qubit terms come out
// multiplied by the global parity, so they carry the sector sign as well.
const WRAP_TERMS: [(Term, usize, usize, f64, bool); 6] = [
    (Term::ZFirst, 0, 1, -1.0, false),
    (Term::ZSecond, 2, 3, -1.0, false),
    (Term::XX, 0, 3, -1.0, true),
    (Term::YY, 1, 2, 1.0, true),
    (Term::XY, 0, 2, 1.0, true),
    (Term::YX, 1, 3, -1.0, true),
];

/// Parity sector of the global `Z⊗...⊗Z` for gates across the wrap edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sector {
    Even,
    Odd,
}

impl Sector {
    fn sign(self) -> f64 {
        match self {
            Sector::Even => 1.0,
            Sector::Odd => -1.0,
        }
    }
}

/// Generator and rotation of one gate, restricted to the four modes it acts on.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockRotation {
    pub modes: [usize; 4],
    /// Real antisymmetric `h` on the block.
    pub generator: Matrix4<f64>,
    /// `exp(-h)`.
    pub rotation: Matrix4<f64>,
}

impl BlockRotation {
    fn from_terms<I>(modes: [usize; 4], terms: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        let mut generator = Matrix4::zeros();
        for (a, b, weight) in terms {
            generator[(a, b)] += 2.0 * weight;
            generator[(b, a)] -= 2.0 * weight;
        }
        let rotation = (-generator).exp();
        Self {
            modes,
            generator,
            rotation,
        }
    }

    /// The full `2n x 2n` generator.
    pub fn dense_generator(&self, n: usize) -> DMatrix<f64> {
        self.embed(n, &self.generator, 0.0)
    }

    /// The full `2n x 2n` rotation.
    pub fn dense_rotation(&self, n: usize) -> DMatrix<f64> {
        self.embed(n, &self.rotation, 1.0)
    }

    fn embed(&self, n: usize, block: &Matrix4<f64>, diag: f64) -> DMatrix<f64> {
        let mut m = DMatrix::identity(2 * n, 2 * n) * diag;
        for (i, &a) in self.modes.iter().enumerate() {
            for (j, &b) in self.modes.iter().enumerate() {
                m[(a, b)] = block[(i, j)];
            }
        }
        m
    }

    /// `R <- R_gate · R`: only the four block rows of `R` change.
    pub fn left_multiply(&self, r: &mut DMatrix<f64>) {
        let cols = r.ncols();
        let old: Vec<Vec<f64>> = self.modes.iter().map(|&m| r.row(m).iter().copied().collect()).collect();
        for (i, &m) in self.modes.iter().enumerate() {
            for col in 0..cols {
                r[(m, col)] = (0..4).map(|j| self.rotation[(i, j)] * old[j][col]).sum();
            }
        }
    }
}

/// Rotation of a gate on Jordan-Wigner positions `k` (first qubit of the
/// Hamiltonian) and `k + 1`.
pub fn gate_rotation(h: &MatchgateHamiltonian, k: usize, n: usize) -> Result<BlockRotation, JwError> {
    if k + 1 >= n {
        return Err(JwError::PositionOutOfRange { k, n });
    }
    let base = 2 * k;
    let modes = [base, base + 1, base + 2, base + 3];
    Ok(BlockRotation::from_terms(
        modes,
        PATH_TERMS.iter().map(|&(t, a, b, s)| (a, b, s * coefficient(h, t))),
    ))
}

/// Rotation of a gate across the edge joining positions `0` (first qubit of
/// the Hamiltonian) and `n - 1`, valid inside one parity sector.
pub fn wrap_gate_rotation(h: &MatchgateHamiltonian, n: usize, sector: Sector) -> Result<BlockRotation, JwError> {
    if n < 3 {
        return Err(JwError::PositionOutOfRange { k: 0, n });
    }
    let modes = [0, 1, 2 * n - 2, 2 * n - 1];
    Ok(BlockRotation::from_terms(
        modes,
        WRAP_TERMS.iter().map(|&(t, a, b, s, sectored)| {
            let sign = if sectored { sector.sign() } else { 1.0 };
            (a, b, s * sign * coefficient(h, t))
        }),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jw::pauli::{majorana, Pauli, PauliString};
    use crate::linalg::{c, max_abs_diff, C};
    use crate::matchgate::MatchgateHamiltonian;

    fn term_string(t: Term, first: usize, second: usize, n: usize) -> PauliString {
        let mut ops = vec![Pauli::I; n];
        let (p, q) = match t {
            Term::ZFirst => (Pauli::Z, Pauli::I),
            Term::ZSecond => (Pauli::I, Pauli::Z),
            Term::XX => (Pauli::X, Pauli::X),
            Term::YY => (Pauli::Y, Pauli::Y),
            Term::XY => (Pauli::X, Pauli::Y),
            Term::YX => (Pauli::Y, Pauli::X),
        };
        ops[first] = p;
        ops[second] = q;
        PauliString::new(0, ops)
    }

    // s · i · c_a c_b as a Pauli string
    fn bilinear(a: usize, b: usize, s: f64, n: usize) -> PauliString {
        let prod = &majorana(a, n).unwrap() * &majorana(b, n).unwrap();
        prod.with_phase(if s > 0.0 { 1 } else { 3 })
    }

    #[test]
    fn path_table_matches_pauli_algebra() {
        let n = 5;
        for k in 0..n - 1 {
            for &(t, a, b, s) in &PATH_TERMS {
                let lhs = term_string(t, k, k + 1, n);
                assert_eq!(bilinear(2 * k + a, 2 * k + b, s, n), lhs, "{t:?} at {k}");
            }
        }
    }

    #[test]
    fn wrap_table_matches_pauli_algebra() {
        let n = 5;
        let modes = [0, 1, 2 * n - 2, 2 * n - 1];
        let parity = PauliString::parity(n);
        for &(t, a, b, s, sectored) in &WRAP_TERMS {
            let term = term_string(t, 0, n - 1, n);
            let expected = if sectored { &term * &parity } else { term };
            assert_eq!(bilinear(modes[a], modes[b], s, n), expected, "{t:?}");
        }
    }

    fn sample_h() -> MatchgateHamiltonian {
        MatchgateHamiltonian {
            zu: 0.31,
            zv: -0.72,
            xx: 0.45,
            yy: -0.18,
            xy: 0.93,
            yx: 0.27,
            id: 0.4,
        }
    }

    fn dense_gate(h: &MatchgateHamiltonian, first: usize, second: usize, n: usize) -> DMatrix<C> {
        let terms = [
            (Term::ZFirst, h.zu),
            (Term::ZSecond, h.zv),
            (Term::XX, h.xx),
            (Term::YY, h.yy),
            (Term::XY, h.xy),
            (Term::YX, h.yx),
        ];
        let mut ham = DMatrix::<C>::zeros(1 << n, 1 << n);
        for (t, v) in terms {
            ham += term_string(t, first, second, n).to_dense() * c(v, 0.0);
        }
        (ham * c(0.0, 1.0)).exp()
    }

    fn rotated(majoranas: &[DMatrix<C>], r: &DMatrix<f64>, a: usize) -> DMatrix<C> {
        let dim = majoranas[0].nrows();
        let mut out = DMatrix::<C>::zeros(dim, dim);
        for (b, m) in majoranas.iter().enumerate() {
            out += m * c(r[(a, b)], 0.0);
        }
        out
    }

    // U† c_a U against Σ_b R_ab c_b
    fn check_conjugation(u: &DMatrix<C>, r: &DMatrix<f64>, n: usize) {
        let majoranas: Vec<DMatrix<C>> = (0..2 * n).map(|m| majorana(m, n).unwrap().to_dense()).collect();
        for a in 0..2 * n {
            let lhs = u.adjoint() * &majoranas[a] * u;
            assert!(max_abs_diff(&lhs, &rotated(&majoranas, r, a)) < 1e-10, "mode {a}");
        }
    }

    // A single Majorana flips parity, so inside one sector only bilinears
    // transform by R: U† c_a c_b U P = (R c)_a (R c)_b P.
    fn check_sector_bilinears(u: &DMatrix<C>, r: &DMatrix<f64>, n: usize, projector: &DMatrix<C>) {
        let majoranas: Vec<DMatrix<C>> = (0..2 * n).map(|m| majorana(m, n).unwrap().to_dense()).collect();
        for a in 0..2 * n {
            for b in a + 1..2 * n {
                let lhs = u.adjoint() * &majoranas[a] * &majoranas[b] * u * projector;
                let rhs = rotated(&majoranas, r, a) * rotated(&majoranas, r, b) * projector;
                assert!(max_abs_diff(&lhs, &rhs) < 1e-10, "modes {a} {b}");
            }
        }
    }

    #[test]
    fn path_rotation_conjugates_majoranas() {
        let n = 4;
        let h = sample_h();
        for k in 0..n - 1 {
            let rot = gate_rotation(&h, k, n).unwrap();
            let g = rot.dense_generator(n);
            assert!((&g + g.transpose()).amax() < 1e-15);
            let r = rot.dense_rotation(n);
            assert!((&r * r.transpose() - DMatrix::identity(2 * n, 2 * n)).amax() < 1e-12);
            check_conjugation(&dense_gate(&h, k, k + 1, n), &r, n);
        }
    }

    #[test]
    fn wrap_rotation_conjugates_within_sector() {
        let n = 4;
        let h = sample_h();
        let parity = PauliString::parity(n).to_dense();
        let id = DMatrix::<C>::identity(1 << n, 1 << n);
        let u = dense_gate(&h, 0, n - 1, n);
        for (sector, sign) in [(Sector::Even, 1.0), (Sector::Odd, -1.0)] {
            let projector = (&id + &parity * c(sign, 0.0)) * c(0.5, 0.0);
            let r = wrap_gate_rotation(&h, n, sector).unwrap().dense_rotation(n);
            check_sector_bilinears(&u, &r, n, &projector);
        }
    }

    #[test]
    fn left_multiply_matches_dense_product() {
        let n = 4;
        let rot = gate_rotation(&sample_h(), 1, n).unwrap();
        let mut r = wrap_gate_rotation(&sample_h(), n, Sector::Odd)
            .unwrap()
            .dense_rotation(n);
        let expected = rot.dense_rotation(n) * &r;
        rot.left_multiply(&mut r);
        assert!((expected - r).amax() < 1e-14);
    }

    #[test]
    fn out_of_range_positions() {
        assert!(gate_rotation(&sample_h(), 3, 4).is_err());
        assert!(wrap_gate_rotation(&sample_h(), 2, Sector::Even).is_err());
    }
}
