use hopf_cyclic::catalog;
use hopf_cyclic::cyclic::HopfCyclicModule;
use hopf_cyclic::homology::{cyclic_quotient_dims, parity_sum, TruncatedComplex, WeightCut};
use hopf_cyclic::lie;
use hopf_cyclic::Error;

fn module(name: &str, pair: &str) -> HopfCyclicModule {
    let e = catalog::build(name).unwrap();
    HopfCyclicModule::new(e.hopf_arc().unwrap(), e.pair(pair).unwrap())
}

/// Stable cyclic dims of the enveloping algebra against the parity sums of
/// Lie algebra homology with coefficients twisted by the character.
fn check_against_lie(name: &str, character: &str, expected_stable: &[(usize, usize)]) {
    let e = catalog::build(name).unwrap();
    let m = module(name, &format!("{character},1"));
    let cx = TruncatedComplex::hopf(&m, 4, Some(WeightCut::AtMost(3)), true).unwrap();
    let g = e.lie.as_ref().unwrap();
    let delta = e.lie_character(character).unwrap();
    let ce = lie::ce_homology_filtered(g, &delta, Some(3)).unwrap();
    let dims = cx.cohomology().unwrap();
    let stable: Vec<(usize, usize)> = dims.iter().filter(|d| d.stable).map(|d| (d.degree, d.dim)).collect();
    assert_eq!(stable, expected_stable, "{name}: stable degrees");
    for (n, dim) in stable {
        assert_eq!(dim, parity_sum(&ce, n), "{name}: degree {n}, lie homology {ce:?}");
    }
}

#[test]
fn abelian_one_matches_lie_homology() {
    check_against_lie("u-abelian-1", "eps", &[(1, 1), (2, 1), (3, 1), (4, 1)]);
}

#[test]
fn abelian_two_matches_lie_homology() {
    check_against_lie("u-abelian-2", "eps", &[(2, 2), (3, 2), (4, 2)]);
}

#[test]
fn heisenberg_matches_lie_homology() {
    check_against_lie("u-heisenberg", "eps", &[(2, 3), (3, 2), (4, 3)]);
}

#[test]
fn affine_with_trace_matches_lie_homology() {
    check_against_lie("u-affine-1", "delta", &[(2, 1), (3, 1), (4, 1)]);
}

#[test]
fn normalized_and_full_complexes_agree() {
    for (name, pair) in [("u-abelian-2", "eps,1"), ("u-affine-1", "delta,1")] {
        let m = module(name, pair);
        let full = TruncatedComplex::hopf(&m, 3, Some(WeightCut::AtMost(2)), false).unwrap();
        let norm = TruncatedComplex::hopf(&m, 3, Some(WeightCut::AtMost(2)), true).unwrap();
        assert_eq!(full.cohomology().unwrap(), norm.cohomology().unwrap(), "{name}");
    }
}

#[test]
fn graded_pieces_sum_to_filtered_dims() {
    for name in ["u-abelian-2", "u-heisenberg", "poly-unipotent-heisenberg"] {
        let m = module(name, "eps,1");
        let dims = |cut| -> Vec<usize> {
            let cx = TruncatedComplex::hopf(&m, 3, Some(cut), true).unwrap();
            cx.cohomology().unwrap().iter().map(|d| d.dim).collect()
        };
        let filtered = dims(WeightCut::AtMost(2));
        let mut summed = vec![0; filtered.len()];
        for w in 0..=2 {
            for (s, d) in summed.iter_mut().zip(dims(WeightCut::Exactly(w))) {
                *s += d;
            }
        }
        assert_eq!(summed, filtered, "{name}");
    }
}

#[test]
fn transposed_complex_has_the_same_dims() {
    let m = module("u-heisenberg", "eps,1");
    let cx = TruncatedComplex::hopf(&m, 3, Some(WeightCut::AtMost(2)), false).unwrap();
    let dims: Vec<usize> = cx.cohomology().unwrap().iter().map(|d| d.dim).collect();
    assert_eq!(cx.transposed_homology_dims().unwrap(), dims);

    let e = catalog::build("nc-torus-2").unwrap();
    let ax = TruncatedComplex::algebra(e.algebra(), 2, false).unwrap();
    let dims: Vec<usize> = ax.cohomology().unwrap().iter().map(|d| d.dim).collect();
    assert_eq!(ax.transposed_homology_dims().unwrap(), dims);
}

#[test]
fn finite_hopf_complexes_assemble() {
    for (name, pair) in [("sweedler", "eps,g"), ("taft-3", "eps,ginv")] {
        let m = module(name, pair);
        let cx = TruncatedComplex::hopf(&m, 2, None, false).unwrap();
        assert_eq!(cx.basis(1).len(), cx.basis(0).len() * catalog::build(name).unwrap().dimension().unwrap());
        cx.cohomology().unwrap();
    }
}

#[test]
fn broken_pair_is_not_a_complex() {
    // (ε, 1) on Sweedler fails the involution condition, so τ has the wrong
    // order and B no longer anticommutes with b.
    let e = catalog::build("sweedler").unwrap();
    let m = HopfCyclicModule::new(e.hopf_arc().unwrap(), e.pair("eps,1").unwrap());
    match TruncatedComplex::hopf(&m, 2, None, false) {
        Err(Error::Rejected { what, .. }) => assert!(what.contains("(b+B)^2")),
        other => panic!("expected a rejection, got {other:?}"),
    }
}

#[test]
fn infinite_weight_components_are_rejected() {
    let m = module("h1", "delta,1");
    assert!(matches!(
        TruncatedComplex::hopf(&m, 2, Some(WeightCut::AtMost(2)), false),
        Err(Error::Unsupported(_))
    ));
    assert!(matches!(TruncatedComplex::hopf(&m, 2, None, false), Err(Error::Unsupported(_))));
}

#[test]
fn algebra_bicomplexes() {
    let e = catalog::build("nc-torus-2").unwrap();
    let cx = TruncatedComplex::algebra(e.algebra(), 3, false).unwrap();
    assert_eq!(cx.total_dim(3), 4usize.pow(4) + 4usize.pow(2));
    let norm = TruncatedComplex::algebra(e.algebra(), 3, true).unwrap();
    let dims = |c: &TruncatedComplex| c.cohomology().unwrap().iter().map(|d| d.dim).collect::<Vec<_>>();
    assert_eq!(dims(&cx), dims(&norm));
}

#[test]
fn cyclic_cochain_cohomology() {
    let k = catalog::build("ground-field").unwrap();
    assert_eq!(cyclic_quotient_dims(k.algebra(), 5).unwrap(), vec![1, 0, 1, 0, 1, 0]);
    let m2 = catalog::build("m2").unwrap();
    assert_eq!(cyclic_quotient_dims(m2.algebra(), 0).unwrap(), vec![1]);
    let torus = catalog::build("nc-torus-2").unwrap();
    // With U² = V² = 1 and VU = -UV the torus is a 2x2 matrix algebra, so
    // commutators kill U, V and UV and the only trace is the coefficient of 1.
    assert_eq!(cyclic_quotient_dims(torus.algebra(), 2).unwrap(), vec![1, 0, 1]);
}

#[test]
fn cyclic_cochains_agree_with_the_bicomplex_for_separable_algebras() {
    let m2 = catalog::build("m2").unwrap();
    let cx = TruncatedComplex::algebra(m2.algebra(), 2, false).unwrap();
    let bic: Vec<usize> = cx.cohomology().unwrap().iter().map(|d| d.dim).collect();
    assert_eq!(cyclic_quotient_dims(m2.algebra(), 2).unwrap(), bic);
}

#[test]
fn export_is_coordinate_text() {
    let e = catalog::build("ground-field").unwrap();
    let cx = TruncatedComplex::algebra(e.algebra(), 2, false).unwrap();
    let files = cx.export();
    assert_eq!(files.len(), 3);
    assert_eq!(files[1].0, "d1");
    assert!(files[1].1.starts_with("2 1 "));
}
