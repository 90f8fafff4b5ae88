//! Φ and ρ only need joint entropies, so any storage scheme can plug in
//! through [`EntropyOracle`]. Here: a vector code (α = 2) storing two
//! halves of a file on six nodes, each half replicated three times.

use locrep::code::EntropyOracle;
use locrep::coords::CoordSet;
use locrep::regset::{minimal_regsets, PhiSearch};

struct Mirrored;

impl EntropyOracle for Mirrored {
    fn length(&self) -> usize {
        6
    }

    fn file_size(&self) -> usize {
        4
    }

    fn alpha(&self) -> usize {
        2
    }

    // nodes 0..3 hold half A, nodes 3..6 hold half B, two symbols each
    fn joint_entropy(&self, set: CoordSet) -> usize {
        let a = set.intersection(CoordSet::from_mask(0b000111));
        let b = set.intersection(CoordSet::from_mask(0b111000));
        2 * (usize::from(!a.is_empty()) + usize::from(!b.is_empty()))
    }
}

fn main() -> locrep::Result<()> {
    let oracle = Mirrored;
    for set in minimal_regsets(&oracle, 0, oracle.length()) {
        println!("node 1 regenerated by {:?}", set.members().labels());
    }
    let profile = PhiSearch::new(&oracle).profile(4)?;
    println!("Φ = {:?}, ρ = {}", profile.phi, profile.rho);
    Ok(())
}
