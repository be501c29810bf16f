#![allow(dead_code)]

use std::sync::Arc;

use cohomcat::double::{triple_constraint_matrix, CocycleTriple};
use cohomcat::homology::kernel_generators;
use cohomcat::{BiCochain, FiniteGroup};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn group(name: &str) -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::builtin(name).unwrap())
}

pub fn random_cochain(g: &Arc<FiniteGroup>, modulus: u64, n: usize, m: usize, rng: &mut impl Rng) -> BiCochain {
    let len = g.order().pow((n + m) as u32);
    let values = (0..len).map(|_| rng.gen_range(0..modulus)).collect();
    BiCochain::from_values(g.clone(), modulus, n, m, values).unwrap()
}

/// Uniform samples from the space of valid triples.
pub struct TripleSampler {
    group: Arc<FiniteGroup>,
    modulus: u64,
    generators: Vec<Vec<u64>>,
}

impl TripleSampler {
    pub fn new(group: Arc<FiniteGroup>, modulus: u64) -> Self {
        let l3 = triple_constraint_matrix(&group, modulus);
        let generators = kernel_generators(&l3).into_iter().map(|(_, v)| v).collect();
        Self { group, modulus, generators }
    }

    pub fn sample(&self, rng: &mut impl Rng) -> CocycleTriple {
        let n = self.modulus;
        let len = 3 * self.group.order().pow(4);
        let mut v = vec![0u64; len];
        for gen in &self.generators {
            let c = rng.gen_range(0..n);
            if c == 0 {
                continue;
            }
            for (x, &y) in v.iter_mut().zip(gen) {
                *x = (*x + c * y) % n;
            }
        }
        CocycleTriple::from_vector(self.group.clone(), n, &v).unwrap()
    }
}

/// Rank over the prime field by plain Gaussian elimination.
pub fn rank_mod_p(m: &[Vec<u64>], p: u64) -> usize {
    let mut a: Vec<Vec<u64>> = m.iter().map(|r| r.iter().map(|x| x % p).collect()).collect();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..a.len()).find(|&r| a[r][c] != 0) else { continue };
        a.swap(rank, piv);
        let inv = (1..p).find(|x| x * a[rank][c] % p == 1).unwrap();
        let prow: Vec<u64> = a[rank].iter().map(|x| x * inv % p).collect();
        for (r, row) in a.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let f = row[c];
                for (x, y) in row.iter_mut().zip(&prow) {
                    *x = (*x + p * p - f * y % p) % p;
                }
            }
        }
        a[rank] = prow;
        rank += 1;
    }
    rank
}
