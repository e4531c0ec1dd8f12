//! Existence check and edge-length enclosures under both normalizations.

use tetratile::angles::{AngleTuple, EDGE_LABELS};
use tetratile::realnum::Precision;
use tetratile::tetgeom::{check_existence, edge_lengths, Existence, Normalization, Tetrahedron};

fn main() {
    let cube_corner = AngleTuple::from_ratios([(1, 2); 6]).unwrap();
    match check_existence(&cube_corner, Precision::default()) {
        Existence::Invalid(r) => println!("all right angles: {r}"),
        Existence::Valid { .. } => println!("all right angles: valid?"),
    }

    let t = Tetrahedron::from_ratios([(1, 2), (1, 2), (1, 3), (1, 3), (1, 3), (1, 3)]).unwrap();
    println!("edge classes {:?}", t.edge_classes().classes());
    for n in [Normalization::MaxEdge, Normalization::UnitVolume] {
        let l = edge_lengths(&t, n, Precision::new(128, 1024)).unwrap();
        println!("{n}");
        for e in 0..6 {
            // midpoints only, the enclosures are much tighter than this
            println!("  {}  {:.12}", EDGE_LABELS[e], l.get(e).midpoint());
        }
    }
}
