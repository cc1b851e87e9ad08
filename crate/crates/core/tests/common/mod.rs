//! Shared helpers for the integration suites.

use rand::Rng;
use tensor_orbits::{Felt, Field, Matrix};

/// A uniformly random invertible n×n matrix, by rejection sampling.
pub fn random_gl(f: &Field, n: usize, rng: &mut impl Rng) -> Matrix {
    loop {
        let entries: Vec<Felt> = (0..n * n)
            .map(|_| f.felt(rng.gen_range(0..f.q())))
            .collect();
        let m = Matrix::new(n, n, entries);
        if m.rank(f) == n {
            return m;
        }
    }
}

/// Fields covering the small orders the verification suites run at.
pub fn field_of_order(q: u64) -> Field {
    match q {
        4 => Field::new(2, 2).unwrap(),
        8 => Field::new(2, 3).unwrap(),
        9 => Field::new(3, 2).unwrap(),
        prime => Field::new(prime, 1).unwrap(),
    }
}
