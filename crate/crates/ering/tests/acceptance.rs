//! Acceptance gate: ten criteria, one printed pass/fail line each.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the
//! lines; each criterion is also an ordinary test, so a failure fails
//! the build.

use std::panic::{catch_unwind, resume_unwind, UnwindSafe};
use std::time::{Duration, Instant};

use ering::axioms::leq;
use ering::boolean::{bring_conditions, check_interpolation, extend_boolean_hom, lattice_sup};
use ering::carrier::{Carrier, Enumeration, MeasurableSpace, Mutation, ValueRing};
use ering::effects::{coexistence_witness, is_sharp, CoexistenceOutcome, Effect};
use ering::projections::{
    brute_force_infimum, brute_force_supremum, incompatible_projection_pair, mackey_compatible,
    orthogonality_conditions, product_conditions, proj_join, proj_meet, proj_orthodiff,
    projection_universe, retraction_projection, verify_omp, EndoTable, Projection,
    ProjectionError, RetractionError,
};
use ering::sample::{sample_effect, sample_group, sample_positive};
use ering::{
    run_suite_with, Element, Rational, SampleStrategy, SuiteId, Verdict, VerificationReport,
};

fn criterion(n: u32, what: &str, body: impl FnOnce() + UnwindSafe) {
    match catch_unwind(body) {
        Ok(()) => println!("criterion {n}: pass - {what}"),
        Err(cause) => {
            println!("criterion {n}: FAIL - {what}");
            resume_unwind(cause);
        }
    }
}

fn int_carrier(atoms: usize) -> Carrier {
    Carrier::function(MeasurableSpace::singletons(atoms).unwrap(), ValueRing::Integers, None)
        .unwrap()
}

fn grid_carrier(atoms: usize) -> Carrier {
    Carrier::function(MeasurableSpace::singletons(atoms).unwrap(), ValueRing::Rationals, Some(4))
        .unwrap()
}

fn rat_carrier(atoms: usize) -> Carrier {
    Carrier::function(MeasurableSpace::singletons(atoms).unwrap(), ValueRing::Rationals, None)
        .unwrap()
}

fn assert_clean(report: &VerificationReport) {
    assert_eq!(report.verdict, Verdict::Pass, "failures: {:?}", report.failures);
    assert!(report.failures.is_empty());
}

#[test]
fn criterion_01_axioms_exhaustive() {
    criterion(1, "axiom suite exhaustive on 2- and 3-atom integer carriers", || {
        let start = Instant::now();
        for atoms in [2, 3] {
            let c = int_carrier(atoms);
            // magnitude bound 6 caps sampled cone sums at six effect summands
            let strategy = SampleStrategy::exhaustive(0, 400, 6);
            let report = run_suite_with(&c, SuiteId::Axioms, &strategy).unwrap();
            assert_clean(&report);
            let enumerated = c.enumerate_effects().unwrap();
            assert!(enumerated.complete, "integer effect sets enumerate completely");
        }
        assert!(start.elapsed() < Duration::from_secs(10), "took {:?}", start.elapsed());
    });
}

#[test]
fn criterion_02_axioms_sampled_matrices() {
    criterion(2, "axiom suite sampled on 2x2 and 3x3 matrix carriers", || {
        let start = Instant::now();
        for dim in [2, 3] {
            let c = Carrier::matrix(dim).unwrap();
            let strategy = SampleStrategy::seeded(7, 500, 5);
            let report = run_suite_with(&c, SuiteId::Axioms, &strategy).unwrap();
            assert_clean(&report);
            assert!(report.cases_total >= 2000, "only {} cases", report.cases_total);
        }
        assert!(start.elapsed() < Duration::from_secs(60), "took {:?}", start.elapsed());
    });
}

#[test]
fn criterion_03_mutation_kill() {
    criterion(3, "six broken fixtures rejected with counterexample payloads", || {
        let strategy = SampleStrategy::seeded(1, 200, 4);
        let mut kills = 0;

        // effect set not closed under orthosupplement
        let c = grid_carrier(2).with_mutation(Mutation::EffectSetNotComplemented).unwrap();
        let report = run_suite_with(&c, SuiteId::Axioms, &strategy).unwrap();
        assert_eq!(report.verdict, Verdict::Fail);
        assert!(report.failures.iter().any(|f| !f.inputs.is_empty()));
        kills += 1;

        // cone containing a nonzero element and its negative
        let c = int_carrier(2).with_mutation(Mutation::ConeAcceptsNegatives).unwrap();
        let report = run_suite_with(&c, SuiteId::Axioms, &strategy).unwrap();
        assert_eq!(report.verdict, Verdict::Fail);
        assert!(report.failures.iter().any(|f| f.law == "ering.i" && !f.inputs.is_empty()));
        kills += 1;

        // positivity oracle accepting an indefinite matrix
        let c = Carrier::matrix(2).unwrap().with_mutation(Mutation::PsdAcceptsIndefinite).unwrap();
        let report = run_suite_with(&c, SuiteId::Axioms, &strategy).unwrap();
        assert_eq!(report.verdict, Verdict::Fail);
        assert!(report.failures.iter().any(|f| !f.inputs.is_empty()));
        kills += 1;

        // non-idempotent element admitted to a projection universe
        let rat = rat_carrier(2);
        let mut universe = projection_universe(&rat);
        universe.push(Element::Function(vec![Rational::new(1, 2), Rational::zero()]));
        match verify_omp(&rat, &universe, &strategy) {
            Err(ProjectionError::NotIdempotent { element }) => {
                assert_eq!(element, "(1/2, 0)");
            }
            other => panic!("expected idempotency rejection, got {other:?}"),
        }
        kills += 1;

        // one-sided multiplication g -> pg offered as a retraction
        let m = Carrier::matrix(2).unwrap();
        let p = m.ring(&Element::Matrix(
            ering::SymMatrix::from_int_rows(&[&[1, 0], &[0, 0]]).unwrap(),
        ));
        let table = EndoTable::from_ring_fn(&m, |b| p.mul(b));
        match retraction_projection(&m, &table, &strategy) {
            Err(RetractionError::ImageOutsideGroup { input, image }) => {
                assert!(!input.is_empty() && !image.is_empty());
            }
            other => panic!("expected image-outside-group rejection, got {other:?}"),
        }
        kills += 1;

        // atom map whose extension breaks a join law
        let c3 = int_carrier(3);
        let a0 = Element::Function(vec![Rational::one(), Rational::zero(), Rational::zero()]);
        match extend_boolean_hom(&c3, &c3, &[a0.clone(), a0.clone(), a0]) {
            Err(ering::boolean::BooleanError::NotBooleanHom { law, left, right }) => {
                assert_eq!(law, "join");
                assert!(!left.is_empty() && !right.is_empty());
            }
            other => panic!("expected Boolean-law rejection, got {other:?}"),
        }
        kills += 1;

        assert!(kills >= 6);
    });
}

#[test]
fn criterion_04_projection_order() {
    criterion(4, "meets/joins/orthodiffs match brute force on all 3-atom pairs", || {
        let start = Instant::now();
        let c = int_carrier(3);
        let Enumeration { elements: effects, complete } = c.enumerate_effects().unwrap();
        assert!(complete);
        let projections = projection_universe(&c);
        assert_eq!(projections.len(), 8);

        for p in &projections {
            for q in &projections {
                let (pp, qq) =
                    (Projection::new(&c, p.clone()).unwrap(), Projection::new(&c, q.clone()).unwrap());
                let meet = proj_meet(&pp, &qq).unwrap().into_element();
                let join = proj_join(&pp, &qq).unwrap().into_element();
                assert_eq!(Some(&meet), brute_force_infimum(&c, &effects, p, q).as_ref());
                assert_eq!(Some(&join), brute_force_supremum(&c, &effects, p, q).as_ref());

                // each multi-way equivalence answers uniformly
                let orth = orthogonality_conditions(&c, p, q);
                assert!(orth.iter().all(|&x| x == orth[0]), "orthogonality split on {p}, {q}");
                let prod = product_conditions(&c, p, q);
                assert!(prod.iter().all(|&x| x == prod[0]), "product split on {p}, {q}");

                if leq(&c, p, q) {
                    let diff = proj_orthodiff(&pp, &qq).unwrap().into_element();
                    let q_minus_p = c.sub(q, p);
                    assert_eq!(diff, q_minus_p);
                    // q - p is the meet of q with the complement of p
                    let compl = c.sub(&c.one(), p);
                    assert_eq!(
                        Some(&diff),
                        brute_force_infimum(&c, &effects, q, &compl).as_ref()
                    );
                }
            }
        }
        assert!(start.elapsed() < Duration::from_secs(5), "took {:?}", start.elapsed());
    });
}

#[test]
fn criterion_05_omp_certificates_and_coexistence() {
    criterion(5, "OMP certificates, Mackey refusal, and the halved-pair witness", || {
        let strategy = SampleStrategy::seeded(2, 150, 4);

        let m = Carrier::matrix(2).unwrap();
        let (p1, q1) = incompatible_projection_pair(&m).unwrap();
        let one = m.one();
        let universe = vec![
            m.zero(),
            one.clone(),
            p1.clone(),
            m.sub(&one, &p1),
            q1.clone(),
            m.sub(&one, &q1),
        ];
        let cert = verify_omp(&m, &universe, &strategy).unwrap();
        assert!(cert.passed(), "failures: {:?}", cert.failures);

        let c3 = int_carrier(3);
        let cube = projection_universe(&c3);
        assert_eq!(cube.len(), 8);
        let cert = verify_omp(&c3, &cube, &strategy).unwrap();
        assert!(cert.passed(), "failures: {:?}", cert.failures);

        let pp = Projection::new(&m, p1.clone()).unwrap();
        let qq = Projection::new(&m, q1.clone()).unwrap();
        let (compatible, decomposition) = mackey_compatible(&pp, &qq);
        assert!(!compatible && decomposition.is_none());

        // the same pair halved coexists, with nothing shared: d = 0
        let half = Rational::new(1, 2);
        let hp = Effect::new(&m, m.try_scalar_mul(&half, &p1).unwrap()).unwrap();
        let hq = Effect::new(&m, m.try_scalar_mul(&half, &q1).unwrap()).unwrap();
        match coexistence_witness(&hp, &hq, &strategy).unwrap() {
            CoexistenceOutcome::Coexistent(w) => {
                assert!(w.d.is_zero(), "expected the d = 0 witness, got d = {}", w.d);
                assert!(w.validates(&hp, &hq));
            }
            other => panic!("halved pair must coexist, got {other:?}"),
        }
    });
}

#[test]
fn criterion_06_sharpness_equivalence() {
    criterion(6, "three sharpness conditions agree on 125 grid and 500 matrix effects", || {
        // the grid slice of the rational effect set: 5 levels per atom
        let c = grid_carrier(3);
        let effects = c.enumerate_effects().unwrap();
        assert_eq!(effects.elements.len(), 125);
        let strategy = SampleStrategy::seeded(3, 60, 4);
        for e in &effects.elements {
            let report = is_sharp(&Effect::new(&c, e.clone()).unwrap(), &strategy);
            assert!(report.conditions_agree(), "conditions split on {e}");
        }

        let m = Carrier::matrix(2).unwrap();
        for i in 0..500u64 {
            let mut rng = strategy.case_rng(i);
            let e = sample_effect(&m, &mut rng, 4);
            let report = is_sharp(&Effect::new(&m, e.clone()).unwrap(), &strategy);
            assert!(report.conditions_agree(), "conditions split on {e}");
        }
    });
}

#[test]
fn criterion_07_bring_equivalence() {
    criterion(7, "six b-ring conditions agree on all four reference carriers", || {
        let strategy = SampleStrategy::seeded(5, 100, 4);
        let cases = [
            (int_carrier(2), true),
            (int_carrier(3), true),
            (grid_carrier(2), false),
            (Carrier::matrix(2).unwrap(), false),
        ];
        for (c, expected) in &cases {
            let conds = bring_conditions(c, &strategy);
            assert!(
                conds.agree(),
                "conditions disagree on {}: {:?}",
                c.describe(),
                conds.as_array()
            );
            assert_eq!(conds.holds(), *expected, "wrong verdict on {}", c.describe());
        }
    });
}

#[test]
fn criterion_08_stone_round_trip() {
    criterion(8, "structure isomorphism verified on all effects and 1000 group samples", || {
        let start = Instant::now();
        for atoms in [2, 3] {
            let c = int_carrier(atoms);
            let strategy = SampleStrategy::seeded(11, 1000, 5);
            let report = run_suite_with(&c, SuiteId::Stone, &strategy).unwrap();
            assert_clean(&report);
            let group_cases = report
                .laws
                .iter()
                .find(|l| l.law == "stone.roundtrip.group")
                .map(|l| l.cases)
                .unwrap_or(0);
            assert!(group_cases >= 1000, "only {group_cases} sampled group elements");
            for law in ["stone.additive", "stone.multiplicative", "stone.order.iff", "stone.unital"] {
                assert!(report.laws.iter().any(|l| l.law == law && l.failures == 0));
            }
        }
        assert!(start.elapsed() < Duration::from_secs(10), "took {:?}", start.elapsed());
    });
}

#[test]
fn criterion_09_lattice_machinery() {
    criterion(9, "suprema, minimality, and interpolation on 1000 sampled rational pairs", || {
        let c = rat_carrier(3);
        let strategy = SampleStrategy::seeded(13, 1000, 5);
        for i in 0..1000u64 {
            let mut rng = strategy.case_rng(i);
            let g = sample_group(&c, &mut rng, 5);
            let h = sample_group(&c, &mut rng, 5);
            let sup = lattice_sup(&c, &g, &h).unwrap();
            assert_eq!(Some(&sup), c.pointwise_max(&g, &h).as_ref(), "sup({g}, {h})");

            // every constructed upper bound sits above the computed sup
            for _ in 0..100 {
                let u = c.add(&sup, &sample_positive(&c, &mut rng, 3));
                assert!(leq(&c, &g, &u) && leq(&c, &h, &u));
                assert!(leq(&c, &sup, &u), "sup({g}, {h}) not minimal under {u}");
            }

            let u1 = c.add(&sup, &sample_positive(&c, &mut rng, 3));
            let u2 = c.add(&sup, &sample_positive(&c, &mut rng, 3));
            let t = check_interpolation(&c, &g, &h, &u1, &u2).unwrap();
            assert!(leq(&c, &g, &t) && leq(&c, &h, &t) && leq(&c, &t, &u1) && leq(&c, &t, &u2));
        }
    });
}

#[test]
fn criterion_10_deterministic_reports() {
    criterion(10, "identical runs produce byte-identical json reports", || {
        let runs: [(Carrier, SuiteId); 4] = [
            (int_carrier(2), SuiteId::All),
            (Carrier::matrix(2).unwrap(), SuiteId::Effects),
            (Carrier::matrix(2).unwrap(), SuiteId::Axioms),
            (grid_carrier(2), SuiteId::Bring),
        ];
        for (c, suite) in &runs {
            let strategy = SampleStrategy::seeded(17, 120, 4);
            let a = run_suite_with(c, *suite, &strategy).unwrap().to_json_string();
            let b = run_suite_with(c, *suite, &strategy).unwrap().to_json_string();
            assert_eq!(a, b, "suite {suite} not reproducible on {}", c.describe());
        }
    });
}
