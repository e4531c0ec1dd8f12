//! Combinations of the angles of `T_x` that hold for every `x`, and a check
//! on a random general member.

use tetratile::angles::RationalAngle;
use tetratile::combos::{enumerate_combinations, value_classes, Target};
use tetratile::families::{f2_member, general_combinations, is_general};

fn main() {
    for k in general_combinations() {
        println!("{k}");
    }

    let x = RationalAngle::new(19, 60).unwrap();
    assert!(is_general(&x).unwrap());
    let t = f2_member(&x).unwrap();
    let combos = enumerate_combinations(&t, &Target::BOTH);
    let values = value_classes(&combos, &t);
    // per-edge combinations collapse to the three value-level ones
    println!(
        "T_x at x = {x}π: {} per-edge, {} value-level",
        combos.len(),
        values.len()
    );
    for v in &values {
        let terms: Vec<String> = v.terms.iter().map(|(a, k)| format!("{k}·{a}π")).collect();
        println!("  {} = {}", terms.join(" + "), v.target);
    }
}
