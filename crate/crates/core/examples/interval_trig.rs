//! Rigorous cosine enclosures at rising precision.

use tetratile::angles::RationalAngle;
use tetratile::realnum::{cos_enclosure, has_rational_cosine, pi};

fn main() {
    println!("π ∈ {}", pi(128));
    for (p, q) in [(1, 3), (2, 7), (5, 12), (1, 2)] {
        let a = RationalAngle::new(p, q).unwrap();
        println!(
            "cos({a}π)  rational value: {}",
            has_rational_cosine(a.multiplier())
        );
        for prec in [32, 64, 256] {
            let c = cos_enclosure(&a, prec);
            println!("  {prec:>4} bits  {c}  width {}", c.width());
        }
    }
}
