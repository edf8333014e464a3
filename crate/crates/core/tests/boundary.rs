mod common;

use charpoly_forge_core::boundary::{
    quartic_base_matrix, quartic_charpoly, quartic_system, EqualSplitOutcome, QuarticOutcome,
    DEFAULT_BUDGET,
};
use charpoly_forge_core::{
    charpoly, check_quartic_counterexample, companion, normal_form_n, search_equal_split,
    EqualSplitProblem, Polynomial,
};
use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn x4_plus_1(spec: charpoly_forge_core::FieldSpec) -> Polynomial {
    Polynomial::from_i64s(spec, &[1, 0, 0, 0, 1])
}

#[test]
fn normal_form_is_square_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for i in 0..500 {
        let spec = fields()[i % fields().len()];
        let k = rng.gen_range(1..=4);
        let n = normal_form_n(&random_matrix(spec, k, k, &mut rng)).unwrap();
        assert!((&n * &n).is_zero());
    }
}

#[test]
fn quartic_closed_form_exhaustive_small_fields() {
    for p in [2, 3] {
        let spec = gf(p);
        let a = quartic_base_matrix(spec);
        for x in all_matrices(spec, 2, 2) {
            let generic = charpoly(&(&a + &normal_form_n(&x).unwrap())).unwrap();
            assert_eq!(quartic_charpoly(&x).unwrap(), generic);
        }
    }
}

#[test]
fn quartic_closed_form_random() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for spec in [gf(7), Q] {
        let a = quartic_base_matrix(spec);
        for _ in 0..200 {
            let x = random_matrix(spec, 2, 2, &mut rng);
            let generic = charpoly(&(&a + &normal_form_n(&x).unwrap())).unwrap();
            assert_eq!(quartic_charpoly(&x).unwrap(), generic);
        }
    }
}

#[test]
fn quartic_base_matrix_is_the_equal_split_shape() {
    let a = quartic_base_matrix(Q);
    assert_eq!(
        a.block(2, 2, 2, 2).unwrap(),
        companion(&Polynomial::from_i64s(Q, &[1, 0, 1])).unwrap()
    );
}

#[test]
fn quartic_solver_agrees_with_brute_force() {
    for p in [2, 3, 5, 7, 11, 13] {
        let spec = gf(p);
        let target = x4_plus_1(spec);
        let first = all_matrices(spec, 2, 2)
            .into_iter()
            .find(|x| quartic_charpoly(x).unwrap() == target);
        match (check_quartic_counterexample(spec), first) {
            (QuarticOutcome::Witness(w), Some(x)) => {
                assert_eq!(w, x, "GF({p})");
                let a = quartic_base_matrix(spec);
                assert_eq!(
                    charpoly(&(&a + &normal_form_n(&w).unwrap())).unwrap(),
                    target
                );
            }
            (QuarticOutcome::NoSolution(None), None) => {}
            (got, want) => panic!("GF({p}): {got:?} vs {want:?}"),
        }
    }
}

#[test]
fn rational_certificate_is_an_identity() {
    let QuarticOutcome::NoSolution(Some(cert)) = check_quartic_counterexample(Q) else {
        panic!()
    };
    assert!(cert.verify());
    // the certificate's equations are the coefficient conditions of the
    // closed form against x^4 + 1: check at a few points
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    for _ in 0..50 {
        let x = random_matrix(Q, 2, 2, &mut rng);
        let c = quartic_charpoly(&x).unwrap().padded_coeffs(5);
        let point = [x.get(0, 0), x.get(0, 1), x.get(1, 0), x.get(1, 1)];
        let values: Vec<_> = quartic_system(Q)
            .iter()
            .map(|e| e.evaluate(point))
            .collect();
        assert_eq!(values[0], c[2]);
        assert_eq!(values[1], -&c[1]);
        assert_eq!(values[2], &c[0] - &Q.one());
    }
}

#[test]
fn equal_split_search_agrees_with_brute_force() {
    // GF(2) and GF(3), k = 2, every invertible p22 and every admissible target
    for p in [2u64, 3] {
        let spec = gf(p);
        for p22 in all_monic(spec, 2)
            .into_iter()
            .filter(|f| !f.constant_term().is_zero())
        {
            let a = pad(2, &companion(&p22).unwrap());
            let reachable: Vec<Polynomial> = all_matrices(spec, 2, 2)
                .iter()
                .map(|x| charpoly(&(&a + &normal_form_n(x).unwrap())).unwrap())
                .collect();
            for q in all_monic(spec, 4) {
                if q.constant_term().is_zero() || q.trace().unwrap() != a.trace().unwrap() {
                    continue;
                }
                let problem = EqualSplitProblem::new(&a, &q).unwrap();
                let want = reachable.iter().position(|r| *r == q);
                match (search_equal_split(&problem, DEFAULT_BUDGET).unwrap(), want) {
                    (EqualSplitOutcome::Witness { index, x }, Some(i)) => {
                        assert_eq!(index as usize, i);
                        assert!(problem.is_witness(&x).unwrap());
                    }
                    (EqualSplitOutcome::Exhausted { candidates }, None) => {
                        assert_eq!(candidates, p.pow(4));
                    }
                    (got, want) => panic!("{got:?} vs {want:?}"),
                }
            }
        }
    }
}

#[test]
fn k_one_reaches_every_invertible_target() {
    // charpoly(diag(0, c) + [[x, -x^2], [1, -x]]) = t^2 - c t + c x
    for p in [2u64, 3, 5, 7] {
        let spec = gf(p);
        for c in 1..p as i64 {
            let p22 = Polynomial::from_i64s(spec, &[-c, 1]);
            for d in 1..p as i64 {
                let q = Polynomial::from_i64s(spec, &[d, -c, 1]);
                let problem = EqualSplitProblem::from_block(&p22, &q).unwrap();
                let outcome = search_equal_split(&problem, DEFAULT_BUDGET).unwrap();
                assert!(
                    matches!(outcome, EqualSplitOutcome::Witness { .. }),
                    "GF({p}) c={c} d={d}"
                );
            }
        }
    }
}

#[test]
fn range_search_matches_full_search() {
    let spec = gf(3);
    let p22 = Polynomial::from_i64s(spec, &[2, 1, 1]);
    let a = pad(2, &companion(&p22).unwrap());
    for q in all_monic(spec, 4) {
        let Ok(problem) = EqualSplitProblem::new(&a, &q) else {
            continue;
        };
        let full = problem.search_range(0..81).unwrap();
        let chunked = [0..20, 20..40, 40..81]
            .into_iter()
            .filter_map(|r| problem.search_range(r).unwrap())
            .min();
        assert_eq!(full, chunked);
    }
}
