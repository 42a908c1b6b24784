//! `<Z_k>` after a matchgate circuit on a path or cycle, in polynomial time.

use nalgebra::DMatrix;

use super::pauli::Pauli;
use super::rotation::{gate_rotation, wrap_gate_rotation, Sector};
use super::JwError;
use crate::graph::{classify, Graph, GraphClass};
use crate::linalg::{C, ONE, ZERO};
use crate::matchgate::{gate_to_hamiltonian, PhysicalCircuit};
use crate::oracle::ProductState;

/// Imaginary parts of a computed expectation larger than this are errors.
pub const IMAG_TOL: f64 = 1e-9;

/// Map between graph vertices and Jordan-Wigner positions.
///
/// Paths are walked from their smallest-index endpoint, cycles from vertex 0
/// towards its smaller neighbour.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JwOrdering {
    pub class: GraphClass,
    /// `order[position] = vertex`
    pub order: Vec<usize>,
    /// `position[vertex]`
    pub position: Vec<usize>,
}

impl JwOrdering {
    pub fn for_graph(g: &Graph) -> Result<Self, JwError> {
        let class = classify(g)?;
        let n = g.n();
        let start = match class {
            GraphClass::Other => return Err(JwError::NotSimulable),
            GraphClass::Path => (0..n).find(|&v| g.degree(v) <= 1).unwrap_or(0),
            GraphClass::Cycle => 0,
        };
        let mut order = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        while order.len() < n {
            let next = g
                .neighbors(cur)
                .iter()
                .copied()
                .find(|&w| w != prev && w != start)
                .expect("paths and cycles are traversable");
            order.push(next);
            prev = cur;
            cur = next;
        }
        let mut position = vec![0; n];
        for (p, &v) in order.iter().enumerate() {
            position[v] = p;
        }
        Ok(Self { class, order, position })
    }
}

/// Accumulated Majorana rotations of a whole circuit.
///
/// `r` governs the even-parity sector and `r_odd` the odd one; they only
/// differ once a gate crosses the wrap edge of a cycle.
#[derive(Clone, Debug, PartialEq)]
pub struct RotationAccumulator {
    pub n: usize,
    pub r: DMatrix<f64>,
    pub r_odd: DMatrix<f64>,
    pub wrap_gates: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct JwSimulation {
    pub ordering: JwOrdering,
    pub rotations: RotationAccumulator,
}

pub fn accumulate(c: &PhysicalCircuit) -> Result<JwSimulation, JwError> {
    let ordering = JwOrdering::for_graph(c.graph())?;
    let n = c.n();
    let mut acc = RotationAccumulator {
        n,
        r: DMatrix::identity(2 * n, 2 * n),
        r_odd: DMatrix::identity(2 * n, 2 * n),
        wrap_gates: 0,
    };
    for g in c.gates() {
        let h = gate_to_hamiltonian(g)?;
        let (pu, pv) = (ordering.position[g.edge.0], ordering.position[g.edge.1]);
        if pu.abs_diff(pv) == 1 {
            let h = if pu < pv { h } else { h.swapped() };
            let rot = gate_rotation(&h, pu.min(pv), n)?;
            rot.left_multiply(&mut acc.r);
            rot.left_multiply(&mut acc.r_odd);
        } else if ordering.class == GraphClass::Cycle && pu.min(pv) == 0 && pu.max(pv) == n - 1 {
            let h = if pu == 0 { h } else { h.swapped() };
            wrap_gate_rotation(&h, n, Sector::Even)?.left_multiply(&mut acc.r);
            wrap_gate_rotation(&h, n, Sector::Odd)?.left_multiply(&mut acc.r_odd);
            acc.wrap_gates += 1;
        } else {
            return Err(JwError::EdgeNotAdjacent(g.edge.0, g.edge.1));
        }
    }
    Ok(JwSimulation {
        ordering,
        rotations: acc,
    })
}

// i^k · <P> where P is the product of `ops`
fn site(q: [C; 2], ops: &[Pauli]) -> C {
    let mut phase = 0u8;
    let mut acc = Pauli::I;
    for &op in ops {
        let (k, p) = acc.mul(op);
        phase += k;
        acc = p;
    }
    let i_pow = [ONE, C::new(0.0, 1.0), -ONE, C::new(0.0, -1.0)][(phase % 4) as usize];
    i_pow * acc.expectation(q)
}

/// `M_ab = <c_a c_b>` and `M^Z_ab = <c_a c_b Z...Z>` for a product state given
/// in Jordan-Wigner order, in `O(n²)` time.
pub fn majorana_correlations(input: &ProductState) -> (DMatrix<C>, DMatrix<C>) {
    let n = input.n();
    let q = input.qubits();
    let z: Vec<f64> = q.iter().map(|&s| Pauli::Z.expectation(s)).collect();
    // prefix[j] = Π_{i<j} <Z_i>, suffix[j] = Π_{i>j} <Z_i>
    let mut prefix = vec![1.0; n + 1];
    for j in 0..n {
        prefix[j + 1] = prefix[j] * z[j];
    }
    let mut suffix = vec![1.0; n];
    for j in (0..n.saturating_sub(1)).rev() {
        suffix[j] = suffix[j + 1] * z[j + 1];
    }
    let pm = |mu: usize| if mu.is_multiple_of(2) { Pauli::X } else { Pauli::Y };
    let (xi, zi) = (Pauli::I, Pauli::Z);

    let mut plain = DMatrix::from_element(2 * n, 2 * n, ZERO);
    let mut parity = DMatrix::from_element(2 * n, 2 * n, ZERO);
    for a in 0..2 * n {
        plain[(a, a)] = ONE;
        parity[(a, a)] = C::new(prefix[n], 0.0);
        let ja = a / 2;
        // same qubit partner
        if a % 2 == 0 {
            let b = a + 1;
            plain[(a, b)] = site(q[ja], &[pm(a), pm(b)]);
            parity[(a, b)] = site(q[ja], &[pm(a), pm(b), zi]) * prefix[ja] * suffix[ja];
        }
        let head_plain = site(q[ja], &[pm(a), zi]);
        let head_parity = site(q[ja], &[pm(a), zi, zi]) * prefix[ja];
        let mut middle = 1.0;
        for jb in ja + 1..n {
            for b in [2 * jb, 2 * jb + 1] {
                plain[(a, b)] = head_plain * middle * site(q[jb], &[xi, pm(b)]);
                parity[(a, b)] = head_parity * site(q[jb], &[pm(b), zi]) * suffix[jb];
            }
            middle *= z[jb];
        }
    }
    for a in 0..2 * n {
        for b in 0..a {
            plain[(a, b)] = -plain[(b, a)];
            parity[(a, b)] = -parity[(b, a)];
        }
    }
    (plain, parity)
}

// r1ᵀ M r2
fn bilinear(r1: &[f64], m: &DMatrix<C>, r2: &[f64]) -> C {
    let mut total = ZERO;
    for (a, &x) in r1.iter().enumerate() {
        if x == 0.0 {
            continue;
        }
        let mut row = ZERO;
        for (b, &y) in r2.iter().enumerate() {
            row += m[(a, b)] * y;
        }
        total += row * x;
    }
    total
}

fn real_part(z: C) -> Result<f64, JwError> {
    if z.im.abs() > IMAG_TOL {
        return Err(JwError::ImaginaryResidue(z.im));
    }
    Ok(z.re)
}

impl JwSimulation {
    fn check_input(&self, input: &ProductState, k: usize) -> Result<ProductState, JwError> {
        let n = self.rotations.n;
        if input.n() != n {
            return Err(JwError::SizeMismatch {
                expected: n,
                got: input.n(),
            });
        }
        if k >= n {
            return Err(JwError::QubitOutOfRange { k, n });
        }
        Ok(input.permuted(&self.ordering.order))
    }

    fn rows(r: &DMatrix<f64>, p: usize) -> (Vec<f64>, Vec<f64>) {
        (
            r.row(2 * p).iter().copied().collect(),
            r.row(2 * p + 1).iter().copied().collect(),
        )
    }

    /// `<Z_k>` for vertex `k`, ignoring any parity splitting.
    pub fn expected_z_path(&self, input: &ProductState, k: usize) -> Result<f64, JwError> {
        let jw_input = self.check_input(input, k)?;
        let (m, _) = majorana_correlations(&jw_input);
        let (r1, r2) = Self::rows(&self.rotations.r, self.ordering.position[k]);
        real_part(bilinear(&r1, &m, &r2) * C::new(0.0, -1.0))
    }

    /// `<Z_k>` for vertex `k`, combining both parity sectors.
    pub fn expected_z_cycle(&self, input: &ProductState, k: usize) -> Result<f64, JwError> {
        let jw_input = self.check_input(input, k)?;
        let (m, mz) = majorana_correlations(&jw_input);
        let even = (&m + &mz) * C::new(0.5, 0.0);
        let odd = (&m - &mz) * C::new(0.5, 0.0);
        let p = self.ordering.position[k];
        let (r1, r2) = Self::rows(&self.rotations.r, p);
        let (s1, s2) = Self::rows(&self.rotations.r_odd, p);
        let total = bilinear(&r1, &even, &r2) + bilinear(&s1, &odd, &s2);
        real_part(total * C::new(0.0, -1.0))
    }

    pub fn expected_z(&self, input: &ProductState, k: usize) -> Result<f64, JwError> {
        match self.ordering.class {
            GraphClass::Cycle => self.expected_z_cycle(input, k),
            _ => self.expected_z_path(input, k),
        }
    }

    /// `<Z_k>` for every vertex, sharing the correlation matrices.
    pub fn expected_z_all(&self, input: &ProductState) -> Result<Vec<f64>, JwError> {
        let n = self.rotations.n;
        let jw_input = self.check_input(input, 0)?;
        let (m, mz) = majorana_correlations(&jw_input);
        let cycle = self.ordering.class == GraphClass::Cycle;
        let (even, odd) = if cycle {
            ((&m + &mz) * C::new(0.5, 0.0), (&m - &mz) * C::new(0.5, 0.0))
        } else {
            (m.clone(), DMatrix::zeros(0, 0))
        };
        (0..n)
            .map(|k| {
                let p = self.ordering.position[k];
                let (r1, r2) = Self::rows(&self.rotations.r, p);
                let mut total = bilinear(&r1, &even, &r2);
                if cycle {
                    let (s1, s2) = Self::rows(&self.rotations.r_odd, p);
                    total += bilinear(&s1, &odd, &s2);
                }
                real_part(total * C::new(0.0, -1.0))
            })
            .collect()
    }
}

/// Convenience wrapper: accumulate and evaluate on a path.
pub fn expected_z_path(c: &PhysicalCircuit, input: &ProductState, k: usize) -> Result<f64, JwError> {
    let sim = accumulate(c)?;
    if sim.ordering.class != GraphClass::Path {
        return Err(JwError::NotSimulable);
    }
    sim.expected_z_path(input, k)
}

/// Convenience wrapper: accumulate and evaluate on a cycle.
pub fn expected_z_cycle(c: &PhysicalCircuit, input: &ProductState, k: usize) -> Result<f64, JwError> {
    let sim = accumulate(c)?;
    if sim.ordering.class != GraphClass::Cycle {
        return Err(JwError::NotSimulable);
    }
    sim.expected_z_cycle(input, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jw::pauli::{majorana, pauli_expectation, PauliString};
    use crate::linalg::c;
    use crate::matchgate::Matchgate;
    use crate::oracle::run_circuit;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn random_state(n: usize, rng: &mut StdRng) -> ProductState {
        let qubits = (0..n)
            .map(|_| {
                let t: f64 = rng.gen_range(0.0..std::f64::consts::PI);
                let p: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
                [c((t / 2.0).cos(), 0.0), C::from_polar((t / 2.0).sin(), p)]
            })
            .collect();
        ProductState::new(qubits).unwrap()
    }

    #[test]
    fn correlations_match_pauli_algebra() {
        let mut rng = StdRng::seed_from_u64(11);
        for n in 1..6 {
            let input = random_state(n, &mut rng);
            let (m, mz) = majorana_correlations(&input);
            let parity = PauliString::parity(n);
            for a in 0..2 * n {
                for b in 0..2 * n {
                    let prod = &majorana(a, n).unwrap() * &majorana(b, n).unwrap();
                    let plain = pauli_expectation(&input, &prod).unwrap();
                    let with_z = pauli_expectation(&input, &(&prod * &parity)).unwrap();
                    assert!((m[(a, b)] - plain).norm() < 1e-13, "M n={n} a={a} b={b}");
                    assert!((mz[(a, b)] - with_z).norm() < 1e-13, "MZ n={n} a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn ordering_relabels_paths_and_cycles() {
        let g = Graph::new(4, [(2, 0), (0, 3), (3, 1)]).unwrap();
        let o = JwOrdering::for_graph(&g).unwrap();
        assert_eq!(o.order, vec![1, 3, 0, 2]);
        let cyc = Graph::new(4, [(0, 2), (2, 1), (1, 3), (3, 0)]).unwrap();
        assert_eq!(JwOrdering::for_graph(&cyc).unwrap().order, vec![0, 2, 1, 3]);
        let star = crate::families::star(3);
        assert_eq!(JwOrdering::for_graph(&star), Err(JwError::NotSimulable));
    }

    #[test]
    fn fswap_moves_excitation() {
        let mut c = PhysicalCircuit::new(Graph::path(3));
        c.push(Matchgate::fswap(0, 1)).unwrap();
        let input = ProductState::from_basis_str("100").unwrap();
        let sim = accumulate(&c).unwrap();
        let z = sim.expected_z_all(&input).unwrap();
        assert!((z[0] - 1.0).abs() < 1e-12 && (z[1] + 1.0).abs() < 1e-12);
    }

    #[test]
    fn wrap_gate_agrees_with_dense() {
        let n = 5;
        let g = Graph::cycle(n).unwrap();
        let mut rng = StdRng::seed_from_u64(3);
        let mut c = PhysicalCircuit::new(g);
        for t in 0..12 {
            let v = t % n;
            let gate = Matchgate::xy(rng.gen_range(-2.0..2.0), v, (v + 1) % n);
            c.push(if t % 3 == 0 { gate.flipped() } else { gate }).unwrap();
            c.push(Matchgate::fswap((v + 2) % n, (v + 3) % n)).unwrap();
        }
        let input = random_state(n, &mut rng);
        let dense = run_circuit(&c, &input).unwrap();
        let sim = accumulate(&c).unwrap();
        assert!(sim.rotations.wrap_gates > 0);
        for k in 0..n {
            let fast = sim.expected_z_cycle(&input, k).unwrap();
            assert!((fast - dense.expectation_z(k).unwrap()).abs() < 1e-10);
        }
    }
}
