//! Random unitaries, matchgates and product states for tests and
//! benchmarks. Seed them with [`crate::families::seeded_rng`].

use std::f64::consts::PI;

use rand::Rng;

use crate::linalg::{c, Mat2};
use crate::matchgate::{Matchgate, Unitary2};
use crate::oracle::ProductState;

// Uniform point on the unit 3-sphere, by rejection from the cube.
fn unit_quaternion<R: Rng>(rng: &mut R) -> [f64; 4] {
    loop {
        let q: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        let norm = q.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-3 && norm <= 1.0 {
            return q.map(|x| x / norm);
        }
    }
}

/// Haar-random element of SU(2) with an extra phase `e^{iφ}`.
fn phased_su2<R: Rng>(rng: &mut R, phi: f64) -> Unitary2 {
    let [a, b, cc, d] = unit_quaternion(rng);
    let (alpha, beta) = (c(a, b), c(cc, d));
    let ph = c(phi.cos(), phi.sin());
    let m = Mat2::new(alpha, -beta.conj(), beta, alpha.conj()) * ph;
    Unitary2::new(m).expect("SU(2) element is unitary")
}

pub fn random_unitary2<R: Rng>(rng: &mut R) -> Unitary2 {
    let phi = rng.gen_range(0.0..2.0 * PI);
    phased_su2(rng, phi)
}

/// Matchgate with independent Haar-random blocks sharing one determinant.
pub fn random_matchgate<R: Rng>(rng: &mut R, edge: (usize, usize)) -> Matchgate {
    let phi = rng.gen_range(0.0..2.0 * PI);
    let a = phased_su2(rng, phi);
    let b = phased_su2(rng, phi);
    Matchgate::new(a, b, edge).expect("blocks share a determinant")
}

/// Product of independent uniformly random pure qubit states.
pub fn random_product_state<R: Rng>(rng: &mut R, n: usize) -> ProductState {
    let qubits = (0..n)
        .map(|_| {
            let cos_theta: f64 = rng.gen_range(-1.0..=1.0);
            let phi = rng.gen_range(0.0..2.0 * PI);
            let (cos_h, sin_h) = (((1.0 + cos_theta) / 2.0).sqrt(), ((1.0 - cos_theta) / 2.0).sqrt());
            [c(cos_h, 0.0), c(phi.cos() * sin_h, phi.sin() * sin_h)]
        })
        .collect();
    ProductState::new(qubits).expect("qubits are normalized")
}
