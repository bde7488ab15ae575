use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use en_duality::basis::BasisSpace;
use en_duality::duality::chains::{sym_side, wedge_side};
use en_duality::duality::generation::{degenerate_v1, find_failing_witness};
use en_duality::duality::{bgg_generation_check, generic_chain_iso_search, verify_self_duality, IsoSearch, Side};
use en_duality::en::{en_complex, generic_phi};
use en_duality::linalg::{int, SparseMatrix};
use en_duality::rep::clebsch_gordan_v1;
use en_duality::Error;

#[test]
fn b2_certificate() {
    let v1 = clebsch_gordan_v1(2).unwrap();
    let cert = verify_self_duality(&v1, 2).unwrap();
    let dims: Vec<(usize, usize, usize)> = cert.degrees.iter().map(|d| (d.dim_p, d.dim_t, d.dim_c)).collect();
    assert_eq!(dims, vec![(3, 3, 3), (3, 3, 3)]);
    let scalars: Vec<&str> = cert.degrees.iter().map(|d| d.g_scalar.as_str()).collect();
    assert_eq!(scalars, vec!["1", "-1"]);
    assert!(cert.dual_identification);
}

#[test]
fn b3_certificate_dimensions_are_symmetric() {
    let v1 = clebsch_gordan_v1(3).unwrap();
    let cert = verify_self_duality(&v1, 3).unwrap();
    let p: Vec<usize> = cert.degrees.iter().map(|d| d.dim_p).collect();
    assert_eq!(p, vec![10, 20, 10]);
    let rev: Vec<usize> = p.iter().rev().copied().collect();
    assert_eq!(p, rev);
}

#[test]
fn certificate_json_is_deterministic() {
    let v1 = clebsch_gordan_v1(3).unwrap();
    let a = serde_json::to_string(&verify_self_duality(&v1, 3).unwrap()).unwrap();
    let b = serde_json::to_string(&verify_self_duality(&v1, 3).unwrap()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn random_generic_subspace_is_certified() {
    let ambient = BasisSpace::wedge(2, &BasisSpace::free(4));
    // a generic 5-dimensional subspace of ∧²Q⁴: the annihilator of e01 + e23
    let span = SparseMatrix::from_triplets(
        6,
        5,
        vec![(0, 0, int(1)), (5, 0, int(-1)), (1, 1, int(1)), (2, 2, int(1)), (3, 3, int(1)), (4, 4, int(1))],
    );
    let v1 = BasisSpace::subspace(&ambient, span).unwrap();
    let cert = verify_self_duality(&v1, 3).unwrap();
    assert_eq!(cert.degrees.len(), 3);
}

#[test]
fn failing_witness_is_rejected() {
    let w = find_failing_witness(3, 0, 10).unwrap().expect("a degenerate subspace fails the window");
    assert_eq!(w.v1.dim(), 5);
    assert!(w.window_dims.iter().skip(3).any(|&h| h > 0));
    match verify_self_duality(&w.v1, 3) {
        Err(Error::Precondition(_)) => {}
        other => panic!("expected a precondition failure, got {other:?}"),
    }
}

#[test]
fn degenerate_subspaces_are_never_certified() {
    for seed in 0..5 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v1 = degenerate_v1(3, &mut rng).unwrap();
        if v1.dim() == 5 {
            assert!(verify_self_duality(&v1, 3).is_err(), "seed {seed}");
        }
    }
}

#[test]
fn wrong_dimension_is_a_precondition_error() {
    let v1 = BasisSpace::wedge(2, &BasisSpace::free(4));
    assert!(matches!(verify_self_duality(&v1, 3), Err(Error::Precondition(_))));
}

#[test]
fn search_agrees_with_certificate_for_b3() {
    let v1 = clebsch_gordan_v1(3).unwrap();
    let p = sym_side(&v1, 3).unwrap();
    let r = generic_chain_iso_search(&p, &wedge_side(&v1).unwrap()).unwrap();
    assert!(r.is_found());
    let r = generic_chain_iso_search(&p, &p.dualize().shifted(2)).unwrap();
    match r {
        IsoSearch::Found { twist, map, .. } => {
            assert_eq!(twist, 6);
            assert!(map.verify().unwrap().is_ok());
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn generic_c2_and_c_minus_1_are_not_isomorphic() {
    let phi = generic_phi(3, 2).unwrap();
    let a = en_complex(&phi, 2).unwrap().complex;
    let b = en_complex(&phi, -1).unwrap().complex;
    assert_eq!(a.ranks(), vec![3, 6, 3]);
    assert!(matches!(generic_chain_iso_search(&a, &b).unwrap(), IsoSearch::NoneExists { .. }));
}

#[test]
fn p_hat_generation_b3() {
    let v1 = clebsch_gordan_v1(3).unwrap();
    let r = bgg_generation_check(&v1, 3, Side::PHat).unwrap();
    assert!(r.pass);
    assert!(r.conclusion.contains("verified via cited theorem's hypotheses"));
}

#[test]
fn p_generation_for_full_wedge_b3() {
    let v1 = BasisSpace::wedge(2, &BasisSpace::free(4));
    let r = bgg_generation_check(&v1, 3, Side::P).unwrap();
    let ranks: Vec<(usize, usize)> = r.checks.iter().map(|c| (c.rank, c.expected)).collect();
    assert_eq!(ranks, vec![(4, 4), (24, 24)]);
}
