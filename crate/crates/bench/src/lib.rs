//! Seeded fixtures shared by the benchmarks.

use rand::SeedableRng;
use rand_xoshiro::Xoshiro256PlusPlus;
use spectral_turan::random::random_connected;
use spectral_turan::{build_family, FamilySpec, Graph};

pub const SEED: u64 = 0x5eed;

/// Connected random graphs of order `n` and edge probability `p`.
pub fn random_graphs(count: usize, n: usize, p: f64) -> Vec<Graph> {
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(SEED);
    (0..count).map(|_| random_connected(&mut rng, n, p)).collect()
}

/// The predicted maximizer and runner-up for odd `m ≥ 23`.
pub fn book_pair(m: usize) -> (Graph, Graph) {
    let book = build_family(&FamilySpec::book_for_size(m).expect("odd m")).expect("fits");
    let runner = build_family(&FamilySpec::pendant_book_for_size(m, 2).expect("odd m")).expect("fits");
    (book, runner)
}
