//! Inputs shared by the benchmarks.

use std::sync::Arc;

use cohomcat::double::{triple_constraint_matrix, CocycleTriple};
use cohomcat::homology::kernel_generators;
use cohomcat::{BiCochain, FiniteGroup};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn group(name: &str) -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::builtin(name).expect("builtin group"))
}

pub fn random_cochain(g: &Arc<FiniteGroup>, modulus: u64, n: usize, m: usize, seed: u64) -> BiCochain {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let len = g.order().pow((n + m) as u32);
    BiCochain::from_values(g.clone(), modulus, n, m, (0..len).map(|_| r.gen_range(0..modulus)).collect())
        .expect("shape matches")
}

/// A random valid triple: a random combination of kernel generators.
pub fn random_triple(g: &Arc<FiniteGroup>, modulus: u64, seed: u64) -> CocycleTriple {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let gens = kernel_generators(&triple_constraint_matrix(g, modulus));
    let mut v = vec![0u64; 3 * g.order().pow(4)];
    for (_, gen) in &gens {
        let c = r.gen_range(0..modulus);
        v.iter_mut().zip(gen).for_each(|(x, &y)| *x = (*x + c * y) % modulus);
    }
    CocycleTriple::from_vector(g.clone(), modulus, &v).expect("kernel vector has triple length")
}
