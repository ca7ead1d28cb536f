//! Shared input generators for the benchmarks.

use harmonika::{AlgebraElement, BandlimitedFunction, CMatrix, GroupTable, Spin, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Groups the transform benches run on, smallest first.
pub const GROUPS: [&str; 5] = ["symmetric:3", "dihedral:8", "symmetric:4", "cyclic:64", "dihedral:32"];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn complex(r: &mut impl Rng) -> C64 {
    C64::new(r.random_range(-1.0..1.0), r.random_range(-1.0..1.0))
}

pub fn element(g: &GroupTable, seed: u64) -> AlgebraElement {
    let mut r = rng(seed);
    AlgebraElement::from_fn(g, |_| complex(&mut r))
}

pub fn bandlimited(band: Spin, seed: u64) -> BandlimitedFunction {
    let mut r = rng(seed);
    let blocks = (0..=band.twice()).map(|tj| {
        let n = tj as usize + 1;
        CMatrix::from_fn(n, n, |_, _| complex(&mut r))
    });
    BandlimitedFunction::new(band, blocks.collect()).expect("blocks match the band")
}
