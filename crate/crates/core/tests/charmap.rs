use std::collections::BTreeMap;
use std::sync::Arc;

use hopf_cyclic::catalog::{self, Functional};
use hopf_cyclic::charmap::{
    chern_character, chern_constant, check_chern_cycle, group_cocycle_to_cyclic, pairing, AlgebraMatrix,
    CharacteristicMap, FiniteGroup, GroupCocycle, HopfAction, Lattice, TracedAlgebra,
};
use hopf_cyclic::cyclic::{AlgebraCochain, AlgebraCyclicModule};
use hopf_cyclic::expr::parse_element;
use hopf_cyclic::report::Status;
use hopf_cyclic::{lie, AlgebraExt, Element, Error, Scalar, Tensor};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn torus_map(m: u32) -> CharacteristicMap {
    let h = catalog::build("u-abelian-2").unwrap();
    let a = catalog::build(&format!("nc-torus-{m}")).unwrap();
    let action = HopfAction::from_catalog(&h, &a).unwrap();
    let traced = TracedAlgebra::new(a.algebra_arc(), a.trace.clone().unwrap());
    CharacteristicMap::new(Arc::new(action), Arc::new(traced), h.pair("eps,1").unwrap())
}

fn el(map: &CharacteristicMap, src: &str) -> Element {
    parse_element(map.traced().algebra(), src).unwrap()
}

fn derivation(i: u32) -> Element {
    Element::monomial(vec![i])
}

#[test]
fn gamma_commutes_with_the_cyclic_structure_on_the_torus() {
    let map = torus_map(2);
    let report = map.verify(2, 25, 0);
    let failures: Vec<_> = report.failures().map(|c| c.name.clone()).collect();
    assert!(report.passed(), "{failures:?}");
    assert!(report.checks.iter().all(|c| c.status == Status::Pass));
    // 4 prechecks, faces 2 + 3, degeneracies 1 + 2, cyclic 3
    assert_eq!(report.checks.len(), 4 + 5 + 3 + 3);
}

#[test]
fn gamma_also_commutes_at_a_cube_root_of_unity() {
    assert!(torus_map(3).verify(2, 10, 1).passed());
}

#[test]
fn corrupted_trace_fails_invariance() {
    let map = torus_map(3);
    let a = catalog::build("nc-torus-3").unwrap();
    let bad = a.trace.clone().unwrap().with_value(vec![0, 0], Scalar::one());
    let traced = TracedAlgebra::new(a.algebra_arc(), bad);
    let h = catalog::build("u-abelian-2").unwrap();
    let broken = CharacteristicMap::new(
        Arc::new(HopfAction::from_catalog(&h, &a).unwrap()),
        Arc::new(traced),
        h.pair("eps,1").unwrap(),
    );
    let report = broken.verify(2, 10, 0);
    assert_eq!(report.find("delta-invariance").unwrap().status, Status::Fail);
    assert!(report.checks.iter().filter(|c| c.name.starts_with("gamma")).all(|c| c.status == Status::Skip));
    // the witness is the commutator of V with U²V²
    assert_eq!(
        map.action().act(&derivation(0), &el(&map, "U^2 V^2")),
        el(&map, "(zeta^2 - 1) U^2")
    );
}

#[test]
fn gamma_on_small_chains() {
    let map = torus_map(2);
    let g0 = map.gamma(&Tensor::scalar(Scalar::one()));
    assert_eq!(g0.eval(&[el(&map, "3 + U")]), Scalar::from_int(3));
    // ad V kills V, so the second slot always vanishes here
    let g = map.gamma(&Tensor::pure(&[derivation(0), derivation(1)]));
    assert_eq!(g.eval(&[Element::one(), el(&map, "U"), el(&map, "V")]), Scalar::zero());
    // τ(U · ad V(U)) = τ(-2 U U V) = -2 τ(V) = 0
    let g1 = map.gamma(&Tensor::pure(&[derivation(0)]));
    assert_eq!(g1.eval(&[el(&map, "U"), el(&map, "U")]), Scalar::zero());
    assert_eq!(g1.eval(&[el(&map, "U V"), el(&map, "U")]), Scalar::from_int(2));
}

/// `kZ` acting on `M_2` by conjugation with `Q = diag(1, 2)`, with the
/// twisted trace `Tr(Q ·)`; the generator itself is the group-like `σ`.
fn twisted_matrix_map(trace: Functional) -> CharacteristicMap {
    let h = catalog::build("laurent-z1").unwrap();
    let m2 = catalog::build("m2").unwrap();
    let alg = m2.algebra_arc();
    let p = |s: &str| parse_element(alg.as_ref(), s).unwrap();
    let table = vec![vec![p("1/2 e"), p("2 f")], vec![p("2 e"), p("1/2 f")]];
    let action = HopfAction::new(h.hopf_arc().unwrap(), alg.clone(), table).unwrap();
    CharacteristicMap::new(Arc::new(action), Arc::new(TracedAlgebra::new(alg, trace)), h.pair("eps,U").unwrap())
}

#[test]
fn twisted_trace_with_nontrivial_sigma() {
    let twisted = Functional::new(BTreeMap::from([(vec![], Scalar::from_int(3)), (vec![0, 1], Scalar::one())]));
    let report = twisted_matrix_map(twisted).verify(2, 10, 0);
    assert!(report.passed(), "{:?}", report.failures().collect::<Vec<_>>());
    let plain = catalog::build("m2").unwrap().trace.unwrap();
    let report = twisted_matrix_map(plain).verify(1, 10, 0);
    assert_eq!(report.find("sigma-trace").unwrap().status, Status::Fail);
}

#[test]
fn action_checks_catch_a_bad_table() {
    let h = catalog::build("u-abelian-2").unwrap();
    let a = catalog::build("nc-torus-2").unwrap();
    let alg = a.algebra_arc();
    // U ↦ U, V ↦ 0 is not a derivation of U² = 1
    let table = vec![vec![Element::monomial(vec![0]), Element::zero()], vec![Element::zero(), Element::zero()]];
    let action = HopfAction::new(h.hopf_arc().unwrap(), alg, table).unwrap();
    let report = action.verify(2, 30, 0);
    assert!(!report.passed());
}

fn area(g: &[Vec<i64>]) -> Scalar {
    Scalar::from_int(g[0][0] * g[1][1] - g[0][1] * g[1][0])
}

#[test]
fn area_cocycle_gives_a_cyclic_cocycle() {
    let z2 = catalog::build("laurent-z2").unwrap();
    let alg = z2.algebra_arc();
    let c: GroupCocycle<Vec<i64>> = Arc::new(area);
    let phi = group_cocycle_to_cyclic(Arc::new(Lattice { rank: 2 }), 2, c, 100, 0).unwrap();
    let m = AlgebraCyclicModule::new(alg.clone(), 2);
    let bphi = m.b(&phi);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let args = m.random_args(4, &mut rng);
        assert!(bphi.eval(&args).is_zero());
        let t = m.random_args(3, &mut rng);
        let rotated = [t[1].clone(), t[2].clone(), t[0].clone()];
        assert_eq!(phi.eval(&rotated), phi.eval(&t));
    }
    // value on group elements summing to zero, and zero otherwise
    let lat = Lattice { rank: 2 };
    use hopf_cyclic::charmap::GroupBasis;
    let w = |v: Vec<i64>| lat.word(&v);
    assert_eq!(phi.eval_words(&[w(vec![-1, -1]), w(vec![1, 0]), w(vec![0, 1])]), Scalar::one());
    assert_eq!(phi.eval_words(&[w(vec![0, 0]), w(vec![1, 0]), w(vec![0, 1])]), Scalar::zero());
}

#[test]
fn one_sided_area_is_a_cocycle_but_not_cyclic() {
    let z2 = catalog::build("laurent-z2").unwrap();
    let c: GroupCocycle<Vec<i64>> = Arc::new(|g: &[Vec<i64>]| Scalar::from_int(g[0][0] * g[1][1]));
    let phi = group_cocycle_to_cyclic(Arc::new(Lattice { rank: 2 }), 2, c, 100, 0).unwrap();
    let m = AlgebraCyclicModule::new(z2.algebra_arc(), 2);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let broken = (0..100).any(|_| {
        let t = m.random_args(3, &mut rng);
        phi.eval(&[t[1].clone(), t[2].clone(), t[0].clone()]) != phi.eval(&t)
    });
    assert!(broken);
}

#[test]
fn group_cocycle_checks() {
    let lat = Arc::new(Lattice { rank: 2 });
    let square: GroupCocycle<Vec<i64>> = Arc::new(|g: &[Vec<i64>]| area(g).pow(2));
    assert!(matches!(group_cocycle_to_cyclic(lat.clone(), 2, square, 50, 0), Err(Error::Rejected { .. })));
    let shifted: GroupCocycle<Vec<i64>> = Arc::new(|g: &[Vec<i64>]| &area(g) + &Scalar::one());
    assert!(group_cocycle_to_cyclic(lat, 2, shifted, 50, 0).is_err());

    // the constant 0-cocycle on a finite group is the coefficient of 1
    let s3 = catalog::build("group-s3").unwrap();
    let table = catalog::symmetric_group_3().table;
    let one: GroupCocycle<usize> = Arc::new(|_: &[usize]| Scalar::one());
    let phi = group_cocycle_to_cyclic(Arc::new(FiniteGroup { table }), 0, one, 20, 0).unwrap();
    for w in s3.algebra().finite_basis().unwrap() {
        let expected = if w.is_empty() { Scalar::one() } else { Scalar::zero() };
        assert_eq!(phi.eval_words(&[w]), expected);
    }
}

fn idempotents() -> Vec<(String, Element)> {
    let mut out = Vec::new();
    for (name, src) in [("nc-torus-2", "1"), ("m2", "e f"), ("nc-torus-2", "(1 + U)/2"), ("nc-torus-3", "(1 + U + U^2)/3")] {
        let a = catalog::build(name).unwrap();
        out.push((name.to_string(), parse_element(a.algebra(), src).unwrap()));
    }
    out
}

#[test]
fn chern_characters_are_cycles() {
    for (name, e) in idempotents() {
        let a = catalog::build(&name).unwrap();
        let ch = chern_character(a.algebra(), &e, 4).unwrap();
        assert_eq!(ch.len(), 3);
        assert_eq!(ch[0], Tensor::from_element(&e));
        assert_eq!(check_chern_cycle(a.algebra(), &ch), None, "{name}");
    }
}

#[test]
fn rescaled_chern_components_are_not_cycles() {
    let a = catalog::build("m2").unwrap();
    let e = parse_element(a.algebra(), "e f").unwrap();
    let mut ch = chern_character(a.algebra(), &e, 4).unwrap();
    ch[1] = ch[1].scale(&Scalar::from_int(2));
    assert!(check_chern_cycle(a.algebra(), &ch).is_some());
}

fn trace_cochain(trace: Functional) -> AlgebraCochain {
    AlgebraCochain::new(0, move |args| trace.eval(&Element::monomial(args[0].clone())))
}

/// `γ(d₁⊗d₂ − d₂⊗d₁)`, the area cocycle of the torus.
fn area_cocycle(map: &CharacteristicMap) -> AlgebraCochain {
    let t = Tensor::pure(&[derivation(0), derivation(1)]).sub(&Tensor::pure(&[derivation(1), derivation(0)]));
    map.gamma(&t)
}

#[test]
fn pairings_agree_through_the_chern_character() {
    for (name, e) in idempotents() {
        let a = catalog::build(&name).unwrap();
        let tau = trace_cochain(a.trace.clone().unwrap());
        let p = pairing(a.algebra(), &tau, &AlgebraMatrix::scalar_entry(e.clone()), 0, 0).unwrap();
        assert!(p.coherent(), "{name}");
        assert_eq!(p.constant, Scalar::one());
        assert_eq!(p.direct, a.trace.clone().unwrap().eval(&e));
    }
    for m in [2, 3] {
        let map = torus_map(m);
        let phi = area_cocycle(&map);
        for (name, e) in idempotents().into_iter().filter(|(n, _)| n == &format!("nc-torus-{m}")) {
            let p = pairing(map.traced().algebra(), &phi, &AlgebraMatrix::scalar_entry(e), 0, 0).unwrap();
            assert!(p.coherent(), "{name}");
            assert_eq!(p.constant, chern_constant(1));
        }
    }
}

#[test]
fn pairing_examples() {
    let map = torus_map(2);
    let phi = area_cocycle(&map);
    let one = AlgebraMatrix::scalar_entry(Element::one());
    assert_eq!(pairing(map.traced().algebra(), &phi, &one, 0, 0).unwrap().direct, Scalar::zero());

    let k = catalog::build("ground-field").unwrap();
    let id = AlgebraCochain::new(0, |args| if args[0].is_empty() { Scalar::one() } else { Scalar::zero() });
    let rank_one = AlgebraMatrix::new(2, vec![Element::one(), Element::one(), Element::zero(), Element::zero()]).unwrap();
    assert_eq!(pairing(k.algebra(), &id, &rank_one, 0, 0).unwrap().direct, Scalar::one());

    let odd = AlgebraCochain::zero(1);
    assert!(matches!(pairing(k.algebra(), &odd, &rank_one, 0, 0), Err(Error::Rejected { .. })));
}

#[test]
fn area_pairing_is_conjugation_invariant() {
    let map = torus_map(3);
    let alg = map.traced().algebra();
    let phi = area_cocycle(&map);
    let e = el(&map, "(1 + U + U^2)/3");
    let base = AlgebraMatrix::corner(e, 2);
    // inner derivations make the area cocycle a coboundary, so pair with
    // the trace as well to see a nonzero value move under conjugation
    let tau = trace_cochain(catalog::build("nc-torus-3").unwrap().trace.unwrap());
    let p0 = pairing(alg, &phi, &base, 0, 0).unwrap();
    let t0 = pairing(alg, &tau, &base, 0, 0).unwrap();
    assert_eq!(t0.direct, Scalar::from_frac(1, 3));
    let words = alg.finite_basis().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..3 {
        let mut n = Element::zero();
        for _ in 0..2 {
            n.add_term(words[rng.gen_range(0..words.len())].clone(), &Scalar::from_int(rng.gen_range(1..=2)));
        }
        let u = AlgebraMatrix::new(2, vec![Element::one(), n.clone(), Element::zero(), Element::one()]).unwrap();
        let u_inv = AlgebraMatrix::new(2, vec![Element::one(), n.neg(), Element::zero(), Element::one()]).unwrap();
        assert_eq!(u.mul(alg, &u_inv), AlgebraMatrix::identity(2));
        let conj = u.mul(alg, &base).mul(alg, &u_inv);
        assert_ne!(conj, base);
        assert_eq!(pairing(alg, &phi, &conj, 0, 0).unwrap(), p0);
        assert_eq!(pairing(alg, &tau, &conj, 0, 0).unwrap(), t0);
    }
}

#[test]
fn gamma_chern_two_ways() {
    for m in [2, 3] {
        let map = torus_map(m);
        let e = el(&map, "(1 + U)/2");
        let e = if m == 2 { e } else { el(&map, "(1 + U + U^2)/3") };
        let (d0, c0) = map.gamma_chern(&e, &[]).unwrap();
        assert_eq!(d0, map.traced().trace(&e));
        assert_eq!(c0, d0);
        // The action is by commuting inner derivations, so every γ-image
        // cocycle is a coboundary and pairs to zero with an idempotent.
        let second_order = Element::monomial(vec![0, 1]);
        for hs in [
            [derivation(0), derivation(1)],
            [derivation(1), derivation(0)],
            [derivation(0), derivation(0)],
            [second_order.clone(), derivation(0)],
            [derivation(1), second_order],
        ] {
            let (direct, composed) = map.gamma_chern(&e, &hs).unwrap();
            assert_eq!(direct, composed, "m = {m}");
            assert!(direct.is_zero(), "m = {m}");
            let (d1, c1) = map.gamma_chern(&Element::one(), &hs).unwrap();
            assert!(d1.is_zero() && c1.is_zero());
        }
    }
}

#[test]
fn antisymmetrized_gamma_chern_is_a_lie_cocycle() {
    let h = catalog::build("u-abelian-2").unwrap();
    let g = h.lie.clone().unwrap();
    let map = torus_map(3);
    let e = el(&map, "(1 + U + U^2)/3");
    let phi = lie::antisymmetrize(&g, 2, |ix| {
        let hs: Vec<Element> = ix.iter().map(|&i| derivation(i as u32)).collect();
        map.gamma_chern(&e, &hs).unwrap().0
    });
    assert!(phi.is_cocycle(&g, &[Scalar::zero(), Scalar::zero()]));
}
