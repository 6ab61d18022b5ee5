use jordan_core::finring::oracle::{
    all_addmaps, center_scan, derivation_scan, into_center_scan, is_prime_scan, is_semiprime_scan,
    is_torsion_free_scan, law_holds_everywhere, solve_brute, two_sided_scan,
};
use jordan_core::finring::{
    associative_tables, center, is_prime, is_semiprime, law_holds, maps_into_center, small_rings, solve_identity,
    verify_derivation, verify_two_sided, AddMap, Bounds, FinRing, LawSpec,
};
use jordan_core::Law;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const PARAMS: [(i64, i64); 3] = [(1, 1), (1, 2), (2, 1)];

fn assert_solver_matches_oracle(ring: &FinRing) {
    let bounds = Bounds::default();
    for law in Law::ALL {
        for (m, n) in PARAMS {
            let spec = LawSpec::new(law, m, n).unwrap();
            let fast = solve_identity(ring, &spec, &bounds).unwrap();
            let brute = solve_brute(ring, &spec, 100_000).unwrap();
            assert_eq!(
                fast.solutions.as_ref().unwrap(),
                &brute,
                "{} {spec}: solver and oracle disagree",
                ring.name()
            );
            assert_eq!(fast.count_u64(), Some(brute.len() as u64));
        }
    }
}

#[test]
fn solver_matches_oracle_on_small_tables() {
    for ring in small_rings() {
        assert_solver_matches_oracle(&ring);
    }
}

#[test]
fn solver_matches_oracle_on_sampled_three_generator_rings() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut rings: Vec<FinRing> = Vec::new();
    let mut z3z3 = associative_tables(&[3, 3]).unwrap();
    z3z3.shuffle(&mut rng);
    rings.extend(z3z3.into_iter().take(12));
    let z2z2 = associative_tables(&[2, 2]).unwrap();
    for r in z2z2.choose_multiple(&mut rng, 6) {
        rings.push(FinRing::product(r, &FinRing::zn(2).unwrap()).unwrap());
        rings.push(FinRing::product(&FinRing::zn(3).unwrap(), r).unwrap());
    }
    for ring in &rings {
        assert_solver_matches_oracle(ring);
    }
}

#[test]
fn law_holds_agrees_with_pointwise_check() {
    let ring = FinRing::product(&FinRing::zn(2).unwrap(), &FinRing::zn(3).unwrap()).unwrap();
    for law in [Law::Centralizer, Law::Derivation] {
        let spec = LawSpec::new(law, 1, 2).unwrap();
        for main in all_addmaps(&ring, 1000).unwrap() {
            let sol = jordan_core::finring::Solution { main, aux: None };
            assert_eq!(
                law_holds(&ring, &spec, &sol).unwrap(),
                law_holds_everywhere(&ring, &spec, &sol).unwrap()
            );
        }
    }
}

#[test]
fn z5_centralizer_solutions_are_scalar_multiples() {
    let ring = FinRing::zn(5).unwrap();
    let spec = LawSpec::new(Law::Centralizer, 1, 1).unwrap();
    let set = solve_identity(&ring, &spec, &Bounds::default()).unwrap();
    let sols = set.solutions.unwrap();
    assert_eq!(sols.len(), 5);
    assert_eq!(sols, solve_brute(&ring, &spec, 100).unwrap());
    assert_eq!(all_addmaps(&ring, 100).unwrap().len(), 5);
}

#[test]
fn predicates_match_definition_scans() {
    let bounds = Bounds::default();
    let mut rings = small_rings();
    rings.extend([
        FinRing::zn(4).unwrap(),
        FinRing::zn(12).unwrap(),
        FinRing::mat(2, 2).unwrap(),
        FinRing::product(&FinRing::zn(5).unwrap(), &FinRing::zn(5).unwrap()).unwrap(),
    ]);
    for r in &rings {
        assert_eq!(
            is_semiprime(r, &bounds).unwrap(),
            is_semiprime_scan(r, &bounds).unwrap(),
            "{}",
            r.name()
        );
        assert_eq!(
            is_prime(r, &bounds).unwrap(),
            is_prime_scan(r, &bounds).unwrap(),
            "{}",
            r.name()
        );
        assert_eq!(
            center(r, &bounds).unwrap(),
            center_scan(r, &bounds).unwrap(),
            "{}",
            r.name()
        );
    }
}

#[test]
fn z5_squared_is_semiprime_but_not_prime() {
    let bounds = Bounds::default();
    let r = FinRing::product(&FinRing::zn(5).unwrap(), &FinRing::zn(5).unwrap()).unwrap();
    assert!(is_semiprime_scan(&r, &bounds).unwrap());
    assert!(!is_prime_scan(&r, &bounds).unwrap());
    assert!(!is_prime(&r, &bounds).unwrap());
}

#[test]
fn hypothesis_examples() {
    let bounds = Bounds::default();
    assert!(!is_semiprime(&FinRing::zn(4).unwrap(), &bounds).unwrap());
    assert!(is_semiprime_scan(&FinRing::zn(6).unwrap(), &bounds).unwrap());
    assert!(FinRing::zn(5).unwrap().is_torsion_free(24));
    assert!(!FinRing::zn(6).unwrap().is_torsion_free(2));
    let m27 = FinRing::mat(2, 7).unwrap();
    assert!(m27.is_torsion_free(24));
    assert!(is_torsion_free_scan(&m27, 24, &bounds).unwrap());
    assert_eq!(center(&FinRing::zn(6).unwrap(), &bounds).unwrap().len(), 6);
    let zero = FinRing::from_table(vec![2, 3], vec![vec![vec![0, 0]; 2]; 2]).unwrap();
    assert_eq!(center(&zero, &bounds).unwrap().len(), 6);
}

#[test]
fn center_of_mat_2_5_is_the_scalars() {
    let bounds = Bounds::default();
    let r = FinRing::mat(2, 5).unwrap();
    let z = center_scan(&r, &bounds).unwrap();
    assert_eq!(z.len(), 5);
    for c in &z {
        assert_eq!(c.0[1], 0);
        assert_eq!(c.0[2], 0);
        assert_eq!(c.0[0], c.0[3]);
    }
    assert_eq!(center(&r, &bounds).unwrap(), z);
}

#[test]
fn map_predicates_match_pair_scans() {
    let bounds = Bounds::default();
    let r = FinRing::mat(2, 5).unwrap();
    let scalar = r.elem(&[3, 0, 0, 3]);
    let a = r.elem(&[1, 2, 0, 4]);
    let maps = [
        AddMap::left_mul(&r, &scalar),
        AddMap::left_mul(&r, &a),
        AddMap::right_mul(&r, &a),
        AddMap::inner_derivation(&r, &a),
        AddMap::identity(&r),
        AddMap::zero(&r),
    ];
    for t in &maps {
        assert_eq!(verify_two_sided(&r, t), two_sided_scan(&r, t, &bounds).unwrap(), "{t}");
        assert_eq!(
            verify_derivation(&r, t),
            derivation_scan(&r, t, &bounds).unwrap(),
            "{t}"
        );
        assert_eq!(
            maps_into_center(&r, t),
            into_center_scan(&r, t, &bounds).unwrap(),
            "{t}"
        );
    }
    assert!(two_sided_scan(&r, &maps[0], &bounds).unwrap());
    assert!(derivation_scan(&r, &maps[3], &bounds).unwrap());
    assert!(!into_center_scan(&r, &maps[3], &bounds).unwrap());
    let z6 = FinRing::zn(6).unwrap();
    assert!(two_sided_scan(&z6, &AddMap::identity(&z6), &bounds).unwrap());
}

#[test]
fn derivation_on_mat_2_5_has_only_the_zero_solution() {
    let r = FinRing::mat(2, 5).unwrap();
    let spec = LawSpec::new(Law::Derivation, 1, 2).unwrap();
    let set = solve_identity(&r, &spec, &Bounds::default()).unwrap();
    let sols = set.solutions.unwrap();
    for s in &sols {
        assert!(verify_derivation(&r, &s.main));
        assert!(maps_into_center(&r, &s.main));
        assert!(s.main.is_zero());
    }
    assert_eq!(sols.len(), 1);
}

#[test]
fn scans_respect_size_bounds() {
    let bounds = Bounds {
        pair_size: 100,
        triple_size: 10,
        max_size: 1000,
        ..Bounds::default()
    };
    let r = FinRing::mat(2, 5).unwrap();
    assert!(center_scan(&r, &bounds).is_err());
    assert!(is_prime_scan(&r, &bounds).is_err());
    assert!(is_semiprime(&FinRing::mat(2, 7).unwrap(), &bounds).is_err());
    assert!(solve_identity(
        &FinRing::mat(2, 7).unwrap(),
        &LawSpec::new(Law::Centralizer, 1, 1).unwrap(),
        &bounds
    )
    .is_err());
}
