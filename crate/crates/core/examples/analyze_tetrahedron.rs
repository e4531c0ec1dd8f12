//! Run all three criteria on one tetrahedron.
//!
//! `cargo run --example analyze_tetrahedron -- 7/12,5/12,5/12,5/12,1/4,1/4`

use tetratile::angles::{AngleTuple, EDGE_LABELS};
use tetratile::criteria::{analyze, AnalysisOptions};
use tetratile::tetgeom::Tetrahedron;

fn main() {
    let arg = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "7/12,5/12,5/12,5/12,1/4,1/4".to_string());
    let angles = AngleTuple::parse_list(&arg).expect("six angles p/q");
    let t = match Tetrahedron::new(angles) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(3);
        }
    };

    let v = analyze(&t, &AnalysisOptions::default()).expect("analysis");
    println!("tetrahedron {t}");
    for (e, l) in v.lengths.lengths().iter().enumerate() {
        println!("  edge {}  length {l}", EDGE_LABELS[e]);
    }
    println!("pattern      {}", v.pattern.kind);
    println!(
        "combinations {} of π, {} of 2π",
        v.pi_combinations.len(),
        v.two_pi_combinations.len()
    );
    println!("CRTN         {:?}", v.crtn().rules_out());
    println!("CRTF         {:?}", v.crtf.rules_out());
    println!("CRTL         {:?}", v.crtl.rules_out());
    println!(
        "verdict      {} {:?}",
        v.aggregate.label(),
        v.aggregate.reasons()
    );
}
