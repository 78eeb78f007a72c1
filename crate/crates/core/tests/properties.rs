use proptest::prelude::*;

use hopf_cyclic::catalog;
use hopf_cyclic::linalg::{homology_dim, kernel_basis};
use hopf_cyclic::{AlgebraExt, Element, HopfExt, Scalar, SparseMatrix};

const CONDUCTORS: [u32; 6] = [1, 2, 3, 4, 5, 12];

/// Σ cᵢ ζ_m^i with small rational coefficients.
fn scalar_in(m: u32) -> impl Strategy<Value = Scalar> {
    prop::collection::vec((-4i64..=4, 1i64..=3), 1..=4).prop_map(move |cs| {
        let mut acc = Scalar::zero();
        for (i, (n, d)) in cs.into_iter().enumerate() {
            acc += &(&Scalar::from_frac(n, d) * &Scalar::root_of_unity(m, i as i64));
        }
        acc
    })
}

fn triple() -> impl Strategy<Value = (Scalar, Scalar, Scalar)> {
    prop::sample::select(CONDUCTORS.to_vec()).prop_flat_map(|m| (scalar_in(m), scalar_in(m), scalar_in(m)))
}

/// Dense matrix with entries in `Q(ζ_m)`, mostly zero.
fn matrix(max: usize) -> impl Strategy<Value = (usize, usize, Vec<Scalar>)> {
    (1..=max, 1..=max, prop::sample::select(vec![1u32, 3, 4])).prop_flat_map(|(r, c, m)| {
        let entry = prop_oneof![3 => Just(Scalar::zero()), 2 => scalar_in(m)];
        (Just(r), Just(c), prop::collection::vec(entry, r * c))
    })
}

fn sparse(rows: usize, cols: usize, dense: &[Scalar]) -> SparseMatrix {
    let trip = (0..rows).flat_map(|r| (0..cols).map(move |c| (r, c, dense[r * cols + c].clone())));
    SparseMatrix::from_triplets(rows, cols, trip).unwrap()
}

/// Plain row reduction on a dense copy, written independently of the
/// library's sparse elimination.
fn naive_rank(rows: usize, cols: usize, dense: &[Scalar]) -> usize {
    let mut a: Vec<Vec<Scalar>> = (0..rows).map(|r| dense[r * cols..(r + 1) * cols].to_vec()).collect();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(rank, p);
        let inv = a[rank][c].inv().unwrap();
        for r in 0..rows {
            if r != rank && !a[r][c].is_zero() {
                let f = &a[r][c] * &inv;
                for k in 0..cols {
                    let t = &f * &a[rank][k];
                    a[r][k] -= &t;
                }
            }
        }
        rank += 1;
    }
    rank
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms((a, b, c) in triple()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a - &a, Scalar::zero());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), Scalar::one());
        } else {
            prop_assert!(a.inv().is_err());
        }
    }

    #[test]
    fn roots_of_unity_have_their_order(m in 1u32..=12, k in -20i64..20) {
        let z = Scalar::root_of_unity(m, k);
        prop_assert_eq!(z.pow(m), Scalar::one());
        prop_assert_eq!(&z * &Scalar::root_of_unity(m, -k), Scalar::one());
    }

    #[test]
    fn rank_is_transpose_invariant((r, c, d) in matrix(6)) {
        let m = sparse(r, c, &d);
        let rank = m.rank();
        prop_assert_eq!(rank, m.transpose().rank());
        prop_assert_eq!(rank, naive_rank(r, c, &d));
    }

    #[test]
    fn kernel_vectors_are_killed((r, c, d) in matrix(6)) {
        let m = sparse(r, c, &d);
        let ker = kernel_basis(&m);
        prop_assert_eq!(ker.len(), c - m.rank());
        for v in &ker {
            prop_assert!(m.apply(v).iter().all(Scalar::is_zero));
        }
    }

    /// `incoming` is built from kernel vectors, so the pair is a complex and
    /// the homology has the rank-nullity dimension.
    #[test]
    fn homology_dimension_is_rank_nullity((r, c, d) in matrix(6), picks in prop::collection::vec(any::<u8>(), 0..5)) {
        let out = sparse(r, c, &d);
        let ker = kernel_basis(&out);
        let mut cols = Vec::new();
        for p in &picks {
            if ker.is_empty() {
                break;
            }
            let i = *p as usize % ker.len();
            let j = (*p as usize / 7) % ker.len();
            let scale = Scalar::from_int((*p % 5) as i64 - 2);
            cols.push(ker[i].iter().zip(&ker[j]).map(|(x, y)| x + &(&scale * y)).collect::<Vec<_>>());
        }
        let trip = cols.iter().enumerate().flat_map(|(k, v)| v.iter().enumerate().map(move |(row, x)| (row, k, x.clone())));
        let incoming = SparseMatrix::from_triplets(c, cols.len(), trip).unwrap();
        let h = homology_dim(&out, &incoming).unwrap();
        prop_assert_eq!(h, c - out.rank() - incoming.rank());
    }

    /// Products of normal forms are associative and the antipode law holds on
    /// random elements of the Sweedler algebra.
    #[test]
    fn sweedler_random_elements(coeffs in prop::collection::vec(-3i64..=3, 12)) {
        let e = catalog::build("sweedler").unwrap();
        let h = e.require_hopf().unwrap();
        let basis = h.finite_basis().unwrap();
        let el = |cs: &[i64]| Element::from_terms(basis.iter().cloned().zip(cs.iter().map(|&c| Scalar::from_int(c))));
        let (a, b, c) = (el(&coeffs[0..4]), el(&coeffs[4..8]), el(&coeffs[8..12]));
        prop_assert_eq!(h.mul(&h.mul(&a, &b), &c), h.mul(&a, &h.mul(&b, &c)));
        prop_assert_eq!(h.antipode(&h.mul(&a, &b)), h.mul(&h.antipode(&b), &h.antipode(&a)));
        let law = h.multiply_out(&h.map_in_slot(&h.coproduct(&a), 0, |w| h.antipode_word(w)));
        prop_assert_eq!(law, Element::scalar(h.counit(&a)));
    }
}
