use hopf_cyclic::catalog::{self, GroupLikePair, RMatrixData};
use hopf_cyclic::modular::{
    drinfeld_element, embed_legs, ribbon_mpi, square_roots_for, square_roots_from_catalog, verify_drinfeld,
    verify_quasitriangular, verify_ribbon, ModularSquare,
};
use hopf_cyclic::report::Status;
use hopf_cyclic::{AlgebraExt, Character, Element, Error, GroupLike, HopfExt, Scalar, Tensor};

fn t2(a: &[u32], b: &[u32]) -> Tensor {
    Tensor::basis(vec![a.to_vec(), b.to_vec()])
}

fn sweedler_r0() -> RMatrixData {
    catalog::build("sweedler").unwrap().r_matrices["r0"].clone()
}

#[test]
fn sweedler_r_matrix_is_quasitriangular() {
    let e = catalog::build("sweedler").unwrap();
    let h = e.require_hopf().unwrap();
    for (name, data) in &e.r_matrices {
        let report = verify_quasitriangular(h, data, 1);
        assert!(report.passed(), "{name}: {:?}", report.failures().collect::<Vec<_>>());
        assert_eq!(report.checks.len(), 4);
    }
}

#[test]
fn shipped_family_is_not_symmetric() {
    // the x-terms make R₂₁ differ from R, so R₂₁R = 1 is a real condition
    let e = catalog::build("sweedler").unwrap();
    let h = e.require_hopf().unwrap();
    let r = &e.r_matrices["r1"];
    assert_ne!(h.swap_legs(&r.r), r.r);
}

#[test]
fn unit_r_matrix_fails_on_a_noncocommutative_algebra() {
    let e = catalog::build("sweedler").unwrap();
    let h = e.require_hopf().unwrap();
    let trivial = RMatrixData { r: t2(&[], &[]), r_inverse: t2(&[], &[]), ribbon: None };
    let report = verify_quasitriangular(h, &trivial, 1);
    assert_eq!(report.find("quasi-cocommutative").unwrap().status, Status::Fail);
    assert_eq!(report.find("quasi-cocommutative").unwrap().witness.as_deref(), Some("x"));
}

#[test]
fn drinfeld_element_of_sweedler() {
    let e = catalog::build("sweedler").unwrap();
    let h = e.require_hopf().unwrap();
    let g = Element::monomial(vec![0]);
    let x = Element::monomial(vec![1]);
    for data in e.r_matrices.values() {
        let d = drinfeld_element(h, data).unwrap();
        // u = ½(1 + g + g - g²) = g, and the x-terms of the family all vanish
        assert_eq!(d.u, g);
        assert_eq!(h.counit(&d.u), Scalar::one());
        assert_eq!(h.antipode(&h.antipode(&x)), x.neg());
        let report = verify_drinfeld(h, data, &d, 1);
        assert!(report.passed(), "{:?}", report.failures().collect::<Vec<_>>());
    }
}

#[test]
fn trivial_r_matrix_on_cocommutative_algebras() {
    for name in ["group-s3", "u-abelian-2"] {
        let e = catalog::build(name).unwrap();
        let h = e.require_hopf().unwrap();
        let data = RMatrixData {
            r: t2(&[], &[]),
            r_inverse: t2(&[], &[]),
            ribbon: Some(GroupLikePair { element: Element::one(), inverse: Element::one() }),
        };
        assert!(verify_quasitriangular(h, &data, 1).passed(), "{name}");
        let d = drinfeld_element(h, &data).unwrap();
        assert_eq!(d.u, Element::one());
        let (pair, report) = ribbon_mpi(h, &data, 2).unwrap();
        assert!(report.passed(), "{name}");
        assert!(pair.sigma.is_one());
    }
}

#[test]
fn ribbon_pair_of_sweedler_is_in_involution() {
    let e = catalog::build("sweedler").unwrap();
    let h = e.require_hopf().unwrap();
    let (pair, report) = ribbon_mpi(h, &sweedler_r0(), 2).unwrap();
    assert!(report.passed(), "{:?}", report.failures().collect::<Vec<_>>());
    assert!(pair.delta.is_counit());
    // θ = 1, so σ = u = g
    assert_eq!(pair.sigma.element, Element::monomial(vec![0]));
    assert_eq!(report.find("involution").unwrap().status, Status::Pass);
    assert_eq!(h.antipode(&pair.sigma.element), pair.sigma.inverse);
    // θ² = u S(u) is the double-cover relation
    let d = drinfeld_element(h, &sweedler_r0()).unwrap();
    assert_eq!(h.mul(&d.u, &h.antipode(&d.u)), Element::one());
}

#[test]
fn noncentral_ribbon_candidate_is_rejected() {
    let e = catalog::build("sweedler").unwrap();
    let h = e.require_hopf().unwrap();
    let mut data = sweedler_r0();
    let g = Element::monomial(vec![0]);
    data.ribbon = Some(GroupLikePair { element: g.clone(), inverse: g });
    let report = verify_ribbon(h, &data, data.ribbon.as_ref().unwrap(), 1);
    assert_eq!(report.find("ribbon central").unwrap().status, Status::Fail);
    assert!(matches!(ribbon_mpi(h, &data, 1), Err(Error::Rejected { .. })));
}

#[test]
fn leg_numbering() {
    let r = t2(&[0], &[1]);
    assert_eq!(embed_legs(&r, [1, 2], 3), Tensor::basis(vec![vec![], vec![0], vec![1]]));
    assert_eq!(embed_legs(&r, [2, 0], 3), Tensor::basis(vec![vec![1], vec![], vec![0]]));
}

/// Sweedler's modular element `g` and modular function `χ` square to the
/// trivial ones, so no choice of roots squares to them. On `Ĥ` the twist by
/// `g` already cancels `S²`, which leaves conjugation by the root of `σ`.
#[test]
fn catalog_roots_of_sweedler_do_not_give_an_involution() {
    let e = catalog::build("sweedler").unwrap();
    let (base, roots) = square_roots_from_catalog(&e).unwrap();
    let sq = ModularSquare::new(&base, roots).unwrap();
    assert_eq!(sq.square.dim(), 16);
    // ⟨σ^{-1/2}, δ^{-1/2}⟩ = χ⁻¹(g⁻¹) = χ(g)
    assert_eq!(sq.pairing(), Scalar::from_int(-1));
    assert_eq!(sq.factor_scalar(), None);
    assert_eq!(sq.opposite_factor_scalar(), None);
    let report = sq.verify();
    for name in ["delta root group-like", "delta root inverse", "sigma root group-like", "modular pair"] {
        assert_eq!(report.find(name).unwrap().status, Status::Pass, "{name}");
    }
    for name in ["factor scalar", "opposite factor scalar", "involution", "presented involution"] {
        assert_eq!(report.find(name).unwrap().status, Status::Fail, "{name}");
    }
}

#[test]
fn consistent_roots_of_sweedler_give_an_involution() {
    let e = catalog::build("sweedler").unwrap();
    let chi = e.character("chi").unwrap();
    for (delta, sigma) in [(e.group_like("g").unwrap(), &Character::counit()), (&GroupLike::one(), chi)] {
        let (base, roots) = square_roots_for(&e, delta, sigma).unwrap();
        let sq = ModularSquare::new(&base, roots).unwrap();
        assert_eq!(sq.pairing(), Scalar::one());
        assert_eq!(sq.factor_scalar(), Some(Scalar::one()));
        assert_eq!(sq.opposite_factor_scalar(), Some(Scalar::one()));
        let report = sq.verify();
        assert!(report.passed(), "{:?}", report.failures().collect::<Vec<_>>());
        assert_eq!(report.find("presented involution").unwrap().status, Status::Pass);
    }
}

#[test]
fn trivial_square_of_a_group_algebra() {
    let e = catalog::build("group-z2").unwrap();
    let (base, roots) = square_roots_for(&e, &GroupLike::one(), &Character::counit()).unwrap();
    let sq = ModularSquare::new(&base, roots).unwrap();
    assert_eq!(sq.factor_scalar(), Some(Scalar::one()));
    assert!(sq.verify().passed());
}

#[test]
fn missing_roots_are_named() {
    let e = catalog::build("taft-3").unwrap();
    match square_roots_from_catalog(&e) {
        Err(Error::Unsupported(msg)) => assert!(msg.contains("no square root")),
        other => panic!("{other:?}"),
    }
}

#[test]
fn trivial_roots_are_a_negative_control() {
    // without a twist the square of the antipode of Ĥ is left uncorrected
    let e = catalog::build("sweedler").unwrap();
    let (base, roots) = square_roots_for(&e, &GroupLike::one(), &Character::counit()).unwrap();
    let sq = ModularSquare::new(&base, roots).unwrap();
    assert_eq!(sq.pairing(), Scalar::one());
    assert_eq!(sq.factor_scalar(), None);
    let report = sq.verify();
    assert_eq!(report.find("modular pair").unwrap().status, Status::Pass);
    assert_eq!(report.find("involution").unwrap().status, Status::Fail);
    assert_eq!(report.find("presented involution").unwrap().status, Status::Fail);
}
