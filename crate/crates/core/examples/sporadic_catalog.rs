//! Analyze the built-in sporadic lists and tally the verdicts.

use rayon::prelude::*;
use tetratile::catalog::{builtin_catalog, SourceTag};
use tetratile::criteria::{analyze, AnalysisOptions};

fn main() {
    let options = AnalysisOptions::default();
    for tag in [SourceTag::A40, SourceTag::EXTRA2] {
        let entries = builtin_catalog(tag);
        let verdicts: Vec<_> = entries
            .par_iter()
            .map(|e| analyze(&e.tetrahedron().unwrap(), &options).unwrap())
            .collect();
        let ruled_out = verdicts
            .iter()
            .filter(|v| v.aggregate.does_not_tile())
            .count();
        println!("{tag}: {} entries, {ruled_out} do not tile", entries.len());
        for (e, v) in entries.iter().zip(&verdicts) {
            if v.aggregate.does_not_tile() {
                println!("  {} {} {:?}", e.id, e.angles, v.aggregate.reasons());
            }
        }
    }
}
