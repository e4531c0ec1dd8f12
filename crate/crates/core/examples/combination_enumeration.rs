//! All non-negative integer combinations of the six angles summing to π or 2π.

use tetratile::combos::{enumerate_combinations, Target};
use tetratile::tetgeom::Tetrahedron;

fn main() {
    let t = Tetrahedron::from_ratios([(1, 2), (1, 2), (1, 3), (1, 3), (1, 3), (1, 3)]).unwrap();
    let combos = enumerate_combinations(&t, &Target::BOTH);
    for target in Target::BOTH {
        let of: Vec<_> = combos.iter().filter(|c| c.target == target).collect();
        println!("{} combinations of {target}", of.len());
        for c in of.iter().take(8) {
            println!("  {:?}  support {:?}", c.coeffs, c.support());
        }
    }
}
