use hopf_cyclic::catalog;
use hopf_cyclic::cyclic::{verify_lambda_relations, AlgebraCyclicModule, HopfCyclicModule, LambdaModule};
use hopf_cyclic::{Report, Tensor};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn hopf_module(name: &str, pair: &str) -> HopfCyclicModule {
    let e = catalog::build(name).unwrap();
    HopfCyclicModule::checked(e.hopf_arc().unwrap(), e.pair(pair).unwrap(), 3).unwrap()
}

fn failures(r: &Report) -> Vec<String> {
    r.failures().map(|c| format!("{}: {:?}", c.name, c.witness)).collect()
}

#[test]
fn lambda_relations_hold_for_hopf_modules() {
    for (name, pair) in [("h1", "delta,1"), ("sweedler", "eps,g"), ("u-heisenberg", "eps,1"), ("taft-3", "eps,ginv")] {
        let m = hopf_module(name, pair);
        let r = verify_lambda_relations(&m, 3, 25, 11);
        assert!(r.passed(), "{name}: {:?}", failures(&r));
    }
}

#[test]
fn lambda_relations_hold_for_algebra_modules() {
    for name in ["nc-torus-2", "m2", "nc-torus-3"] {
        let e = catalog::build(name).unwrap();
        let m = AlgebraCyclicModule::new(e.algebra_arc(), 1);
        let r = verify_lambda_relations(&m, 3, 25, 5);
        assert!(r.passed(), "{name}: {:?}", failures(&r));
    }
}

#[test]
fn simplicial_relations_hold_without_involution() {
    let e = catalog::build("sweedler").unwrap();
    let m = HopfCyclicModule::new(e.hopf_arc().unwrap(), e.pair("eps,1").unwrap());
    let r = verify_lambda_relations(&m, 3, 10, 2);
    for c in &r.checks {
        let simplicial = c.name.starts_with("face-face") || c.name.starts_with("degeneracy-");
        if simplicial {
            assert!(c.witness.is_none(), "{}", c.name);
        }
    }
    assert!(!r.passed());
}

#[test]
fn hopf_b_and_big_b_anticommute() {
    for (name, pair) in [("h1", "delta,1"), ("sweedler", "eps,g"), ("u-affine-1", "delta,1"), ("taft-3", "eps,ginv")] {
        // weight-2 samples in h1 blow up past level 3
        let m = hopf_module(name, pair).with_sample_weight(1);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for level in 0..=4usize {
            for k in 0..6 {
                let x: Tensor = m.sample(level, 100 + k, &mut rng);
                assert!(m.b(&m.b(&x)).is_zero(), "{name}: b² on level {level}");
                if level >= 1 {
                    let bx = m.big_b(&x).unwrap();
                    if level >= 2 {
                        assert!(m.big_b(&bx).unwrap().is_zero(), "{name}: B² on level {level}");
                    }
                    let anti = m.b(&bx).add(&m.big_b(&m.b(&x)).unwrap());
                    assert!(anti.is_zero(), "{name}: bB + Bb on level {level}");
                }
            }
        }
    }
}

#[test]
fn algebra_b_and_big_b_anticommute() {
    for name in ["nc-torus-2", "m2", "laurent-z2"] {
        let e = catalog::build(name).unwrap();
        let m = AlgebraCyclicModule::new(e.algebra_arc(), 1);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for level in 0..=3usize {
            let phi = m.sample(level, 0, &mut rng);
            let zero = |x: &hopf_cyclic::cyclic::AlgebraCochain, rng: &mut ChaCha8Rng| {
                let z = hopf_cyclic::cyclic::AlgebraCochain::zero(x.degree());
                !m.differs(x, &z, rng)
            };
            assert!(zero(&m.b(&m.b(&phi)), &mut rng), "{name}: b² at {level}");
            if level >= 1 {
                let bb = m.big_b(&phi);
                if level >= 2 {
                    assert!(zero(&m.big_b(&bb), &mut rng), "{name}: B² at {level}");
                }
                let anti = hopf_cyclic::cyclic::AlgebraCochain::linear_combination(&[
                    (hopf_cyclic::Scalar::one(), m.b(&bb)),
                    (hopf_cyclic::Scalar::one(), m.big_b(&m.b(&phi))),
                ]);
                assert!(zero(&anti, &mut rng), "{name}: bB + Bb at {level}");
            }
        }
    }
}
