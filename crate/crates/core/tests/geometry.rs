use std::collections::BTreeSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rskflags_core::flag::{
    forget, is_x_stable, make_nilpotent, relative_position, restriction_jordan_type,
    sample_flag_in_component_with, sample_stable_flag, sample_stable_flag_by_component,
    sample_stable_flag_with, tableau_of_flag, ComponentSampler, DEFAULT_MAX_ATTEMPTS,
};
use rskflags_core::harness::{rsk_matrix_of_tableaux, verify_main_theorem, RunConfig, TheoremCase};
use rskflags_core::standardize::std_tableau_variant;
use rskflags_core::tableau::{enumerate_semistandard_paper, standard_tableaux};
use rskflags_core::{Composition, Partition, PrimeField, Tableau};

fn field(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn lambda(s: &str) -> Partition {
    s.parse().unwrap()
}

/// Relabels a standard tableau by the blocks of `mu`.
fn coarsen(t: &Tableau, mu: &Composition) -> Tableau {
    Tableau::new(
        t.rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&v| mu.block_of(v as usize).unwrap() as u32)
                    .collect()
            })
            .collect(),
    )
}

#[test]
fn stable_flags_have_requested_type_and_shape() {
    let x = make_nilpotent(&lambda("3,2,1"), field(10007));
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for mu in [vec![1; 6], vec![2, 2, 2], vec![3, 1, 2], vec![1, 2, 3]] {
        let mu = Composition::new(mu).unwrap();
        for _ in 0..10 {
            let f = sample_stable_flag_by_component(&x, &mu, &mut rng).unwrap();
            assert_eq!(f.flag_type(), mu);
            assert!(is_x_stable(&x, &f).unwrap());
            let t = tableau_of_flag(&x, &f).unwrap();
            assert!(t.is_semistandard_paper());
            assert_eq!(t.shape().unwrap(), lambda("3,2,1"));
            assert_eq!(t.content().unwrap(), mu);
            assert_eq!(
                &restriction_jordan_type(&x, f.space(f.len())).unwrap(),
                x.jordan_type()
            );
        }
    }
}

#[test]
fn forgetting_steps_coarsens_the_tableau() {
    let x = make_nilpotent(&lambda("2,2,1"), field(10007));
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for mu in [vec![2, 1, 2], vec![1, 3, 1], vec![3, 2]] {
        let mu = Composition::new(mu).unwrap();
        for t in enumerate_semistandard_paper(&lambda("2,2,1"), &mu).unwrap() {
            let standard = std_tableau_variant(&t).unwrap();
            assert_eq!(coarsen(&standard, &mu), t);
            let f = sample_flag_in_component_with(
                &x,
                &standard,
                &mut rng,
                DEFAULT_MAX_ATTEMPTS,
                ComponentSampler::Directed,
            )
            .unwrap()
            .flag;
            let coarse = forget(&f, &mu).unwrap();
            assert_eq!(coarse.flag_type(), mu);
            assert_eq!(tableau_of_flag(&x, &coarse).unwrap(), t);
        }
    }
}

#[test]
fn forward_sampler_on_small_field_partial_types() {
    let x = make_nilpotent(&lambda("2,1"), field(5));
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for mu in [vec![2, 1], vec![1, 2]] {
        let mu = Composition::new(mu).unwrap();
        let f = sample_stable_flag(&x, &mu, &mut rng).unwrap();
        assert_eq!(f.flag_type(), mu);
        assert!(is_x_stable(&x, &f).unwrap());
    }
}

#[test]
fn forgetting_can_break_stability() {
    // single block: <e1> ⊂ V is stable, but 0 ⊂ V is not since x(V) = <e1>
    let x = make_nilpotent(&lambda("2"), field(7));
    let f =
        sample_stable_flag(&x, &Composition::ones(2), &mut ChaCha8Rng::seed_from_u64(0)).unwrap();
    let coarse = forget(&f, &Composition::new(vec![2]).unwrap()).unwrap();
    assert!(!is_x_stable(&x, &coarse).unwrap());
}

#[test]
fn forward_sampler_builds_complete_stable_flags() {
    let x = make_nilpotent(&lambda("2,2,1"), field(10007));
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..20 {
        let (f, _) = sample_stable_flag_with(&x, &Composition::ones(5), &mut rng, 1).unwrap();
        assert!(f.is_complete() && is_x_stable(&x, &f).unwrap());
        assert!(tableau_of_flag(&x, &f).unwrap().is_standard());
    }
}

#[test]
fn relative_position_margins_are_flag_types() {
    let x = make_nilpotent(&lambda("3,1,1"), field(101));
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mu, nu) = (
        Composition::new(vec![1, 2, 2]).unwrap(),
        Composition::new(vec![2, 1, 1, 1]).unwrap(),
    );
    for _ in 0..20 {
        let f = sample_stable_flag_by_component(&x, &mu, &mut rng).unwrap();
        let g = sample_stable_flag_by_component(&x, &nu, &mut rng).unwrap();
        let m = relative_position(&f, &g).unwrap();
        assert_eq!(m.col_sums(), mu.parts());
        assert_eq!(m.row_sums(), nu.parts());
        assert_eq!(relative_position(&g, &f).unwrap(), m.transpose());
    }
}

#[test]
fn rejection_sampler_reaches_every_component_over_small_field() {
    let x = make_nilpotent(&lambda("2,1"), field(101));
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let targets = standard_tableaux(&lambda("2,1"));
    assert_eq!(targets.len(), 2);
    for t in &targets {
        let sample =
            sample_flag_in_component_with(&x, t, &mut rng, 100_000, ComponentSampler::Rejection)
                .unwrap();
        assert_eq!(&tableau_of_flag(&x, &sample.flag).unwrap(), t);
        assert!(sample.attempts >= 1);
    }
}

#[test]
fn directed_sampler_covers_semistandard_components() {
    let x = make_nilpotent(&lambda("3,2"), field(10007));
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for content in [vec![2, 2, 1], vec![1, 2, 2], vec![2, 1, 1, 1]] {
        let content = Composition::new(content).unwrap();
        for t in enumerate_semistandard_paper(&lambda("3,2"), &content).unwrap() {
            let sample = sample_flag_in_component_with(
                &x,
                &t,
                &mut rng,
                DEFAULT_MAX_ATTEMPTS,
                ComponentSampler::Directed,
            )
            .unwrap();
            assert_eq!(tableau_of_flag(&x, &sample.flag).unwrap(), t);
            assert_eq!(sample.flag.flag_type(), content);
        }
    }
}

#[test]
fn sampler_rejects_bad_targets() {
    let x = make_nilpotent(&lambda("2,1"), field(101));
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let wrong_shape: Tableau = "1,2,3".parse().unwrap();
    let not_semistandard: Tableau = "1,1;2".parse().unwrap();
    for t in [wrong_shape, not_semistandard] {
        assert!(
            sample_flag_in_component_with(&x, &t, &mut rng, 10, ComponentSampler::Directed)
                .is_err()
        );
    }
}

#[test]
fn generic_relative_positions_vary_but_mode_is_rsk() {
    let t: Tableau = "1,2;1".parse().unwrap();
    let s: Tableau = "1,2;2".parse().unwrap();
    let case = TheoremCase::from_tableaux(t.clone(), s.clone()).unwrap();
    let cfg = RunConfig {
        trials: 40,
        prime: 10007,
        seed: 1,
        ..Default::default()
    };
    let report = verify_main_theorem(&case, &cfg).unwrap();
    assert_eq!(
        report.expected_matrix,
        rsk_matrix_of_tableaux(&t, &s).unwrap()
    );
    assert!(report.passed(), "{report:?}");
    // same seed, same report
    assert_eq!(verify_main_theorem(&case, &cfg).unwrap(), report);
}

#[test]
fn small_field_reports_are_reproducible_and_complete() {
    let cfg = RunConfig {
        trials: 30,
        prime: 3,
        seed: 99,
        ..Default::default()
    };
    let case =
        TheoremCase::from_tableaux("1,2;1".parse().unwrap(), "1,2;2".parse().unwrap()).unwrap();
    let r = verify_main_theorem(&case, &cfg).unwrap();
    assert_eq!(r.trials, 30);
    assert_eq!(r.attempts_histogram.values().sum::<usize>(), 60);
    let seen: BTreeSet<_> = r.mode_matrix.iter().collect();
    assert!(seen.len() <= r.distinct_matrices);
    assert!(r.agreement_count <= 30 && r.mode_count >= r.agreement_count);
}

#[test]
fn zero_operator_single_step_flags() {
    let t: Tableau = "1;1;1".parse().unwrap();
    let case = TheoremCase::from_tableaux(t.clone(), t).unwrap();
    let cfg = RunConfig {
        trials: 5,
        ..Default::default()
    };
    let r = verify_main_theorem(&case, &cfg).unwrap();
    assert_eq!(r.expected_matrix, "3".parse().unwrap());
    assert!(r.passed());
    assert_eq!(r.attempts_histogram.get(&1), Some(&10));
}
