//! Build the combination matrix of a tetrahedron, search for a Farkas
//! certificate and check it independently.

use tetratile::combos::{enumerate_combinations, Target};
use tetratile::lp::{
    build_d_matrix, find_certificate, verify_certificate, LpOptions, Verification,
};
use tetratile::realnum::Precision;
use tetratile::tetgeom::{edge_lengths, Normalization, Tetrahedron};

fn main() {
    let t =
        Tetrahedron::from_ratios([(3, 20), (11, 20), (11, 20), (1, 4), (1, 3), (2, 3)]).unwrap();
    let combos = enumerate_combinations(&t, &Target::BOTH);
    let lengths = edge_lengths(&t, Normalization::MaxEdge, Precision::default()).unwrap();
    let d = build_d_matrix(&t, &combos, &lengths);
    println!("{} columns", d.ncols());

    let search = find_certificate(&d, &LpOptions::default());
    let Some(cert) = search.certificate() else {
        println!("no certificate");
        return;
    };
    let y: Vec<String> = cert.y.iter().map(|r| r.to_string()).collect();
    println!("y = ({})", y.join(", "));
    println!("1ᵀy = {}", cert.objective);
    println!(
        "LP optimum ≈ {:.6}, margin {}",
        cert.lp_optimum, cert.margin
    );

    match verify_certificate(&d, &cert.y, Precision::new(64, 1024)) {
        Verification::Verified { margin } => println!("re-verified, margin {margin}"),
        Verification::Rejected(r) => println!("rejected: {r:?}"),
    }
}
