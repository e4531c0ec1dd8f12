//! The simplex solver against LP duality, and certificates against the
//! primal system they refute.

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tetratile::catalog::{builtin_catalog, SourceTag};
use tetratile::combos::{enumerate_combinations, Target};
use tetratile::lp::simplex::{solve, LpStatus};
use tetratile::lp::{build_d_matrix, find_certificate, CertificateSearch, LpOptions};
use tetratile::realnum::Precision;
use tetratile::tetgeom::{edge_lengths, Normalization, Tetrahedron};

#[test]
fn random_feasible_programs_satisfy_strong_duality() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..200 {
        let m = rng.gen_range(1..=6);
        let n = rng.gen_range(m..=12);
        let a: Vec<Vec<f64>> = (0..m)
            .map(|_| (0..n).map(|_| rng.gen_range(-3.0..3.0)).collect())
            .collect();
        // b from a non-negative point, so the program is feasible
        let x0: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..2.0)).collect();
        let b: Vec<f64> = a
            .iter()
            .map(|r| r.iter().zip(&x0).map(|(u, v)| u * v).sum())
            .collect();
        let c: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..5.0)).collect();
        let s = solve(&a, &b, &c);
        assert_eq!(s.status, LpStatus::Optimal);
        let primal: f64 = c.iter().zip(&s.x).map(|(u, v)| u * v).sum();
        let dual: f64 = b.iter().zip(&s.duals).map(|(u, v)| u * v).sum();
        assert!((primal - s.objective).abs() < 1e-7 && (dual - s.objective).abs() < 1e-7);
        assert!(s.x.iter().all(|v| *v >= -1e-9));
        for r in 0..m {
            let ax: f64 = a[r].iter().zip(&s.x).map(|(u, v)| u * v).sum();
            assert!((ax - b[r]).abs() < 1e-7);
        }
        for j in 0..n {
            let aty: f64 = (0..m).map(|r| a[r][j] * s.duals[r]).sum();
            assert!(aty <= c[j] + 1e-7);
        }
    }
}

#[test]
fn infeasible_program_is_reported() {
    let s = solve(&[vec![1.0, 1.0]], &[-1.0], &[1.0, 1.0]);
    assert_eq!(s.status, LpStatus::Infeasible);
}

fn d_for(t: &Tetrahedron) -> tetratile::lp::DMatrix {
    let combos = enumerate_combinations(t, &Target::BOTH);
    let lengths = edge_lengths(t, Normalization::MaxEdge, Precision::default()).unwrap();
    build_d_matrix(t, &combos, &lengths)
}

#[test]
fn certified_tetrahedra_have_no_nonnegative_solution() {
    // Dx = 1 with x ≥ 0 has no solution when a certificate exists
    for e in builtin_catalog(SourceTag::EXTRA2) {
        let d = d_for(&e.tetrahedron().unwrap());
        assert!(matches!(
            find_certificate(&d, &LpOptions::default()),
            CertificateSearch::Found(_)
        ));
        let a = d.to_f64().unwrap();
        let n = d.ncols();
        let s = solve(&a, &[1.0; 6], &vec![0.0; n]);
        assert_eq!(s.status, LpStatus::Infeasible, "{}", e.id);
    }
}

#[test]
fn known_tiler_has_a_nonnegative_solution_and_no_certificate() {
    let t = Tetrahedron::from_ratios([(1, 2), (1, 2), (1, 3), (1, 3), (1, 3), (1, 3)]).unwrap();
    let d = d_for(&t);
    let a = d.to_f64().unwrap();
    let s = solve(&a, &[1.0; 6], &vec![0.0; d.ncols()]);
    assert_eq!(s.status, LpStatus::Optimal);
    assert!(matches!(
        find_certificate(&d, &LpOptions::default()),
        CertificateSearch::NotFound { .. }
    ));
}

#[test]
fn certificates_are_exact_and_negative() {
    let t = Tetrahedron::from_ratios([(7, 12), (5, 12), (5, 12), (5, 12), (1, 4), (1, 4)]).unwrap();
    let d = d_for(&t);
    let c = find_certificate(&d, &LpOptions::default())
        .certificate()
        .cloned()
        .unwrap();
    let sum: BigRational = c.y.iter().sum();
    assert_eq!(sum, c.objective);
    assert!(sum < BigRational::from_integer(0.into()));
    assert!(c.margin.is_nonnegative());
}
