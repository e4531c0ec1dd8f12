//! Enumerate the specific members of `T_x` and analyze each one.

use tetratile::criteria::{analyze, AnalysisOptions};
use tetratile::families::enumerate_specific;

fn main() {
    let options = AnalysisOptions::default();
    let specific = enumerate_specific();
    println!("{} specific parameters", specific.len());
    for (x, t) in &specific {
        let v = analyze(t, &options).unwrap();
        println!(
            "x = {x:>6}π  {t}  {:<17} {:?}",
            v.aggregate.label(),
            v.aggregate.reasons()
        );
    }
}
