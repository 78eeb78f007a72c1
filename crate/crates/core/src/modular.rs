//! Quasitriangular and ribbon structures, the modular pairs they carry, and
//! the modular square `Ĥ^op ⊗ Ĥ` of a finite-dimensional Hopf algebra.

use crate::algebra::{AlgebraExt, Element, Gen, Tensor, Word};
use crate::catalog::{CatalogEntry, GroupLikePair, RMatrixData};
use crate::error::{Error, Result};
use crate::finite::FiniteHopf;
use crate::hopf::{check_modular_pair, Character, GroupLike, Hopf, HopfExt, ModularPair};
use crate::report::{ComputationRecord, Report};
use crate::scalar::Scalar;

type Vector = Vec<Scalar>;

fn unit_tensor(level: usize) -> Tensor {
    Tensor::basis(vec![Word::new(); level])
}

/// Place the two legs of `t` in slots `legs` of a `level`-fold tensor,
/// padding the rest with units.
pub fn embed_legs(t: &Tensor, legs: [usize; 2], level: usize) -> Tensor {
    let mut out = Tensor::zero(level);
    for (k, c) in t.terms() {
        let mut key = vec![Word::new(); level];
        key[legs[0]] = k[0].clone();
        key[legs[1]] = k[1].clone();
        out.add_term(key, c);
    }
    out
}

fn first<T>(items: impl IntoIterator<Item = T>, fails: impl Fn(&T) -> bool, show: impl Fn(&T) -> String) -> Option<String> {
    items.into_iter().find(|x| fails(x)).map(|x| show(&x))
}

/// Generators of a finite-dimensional presentation, or those up to `cutoff`.
fn generators<H: Hopf + ?Sized>(h: &H, cutoff: u32) -> Vec<Gen> {
    h.generators_up_to(cutoff)
}

/// `(R₂₁R)⁻¹ = R⁻¹ (R⁻¹)₂₁`.
fn inverse_monodromy<H: Hopf + ?Sized>(h: &H, data: &RMatrixData) -> Tensor {
    h.tensor_mul(&data.r_inverse, &h.swap_legs(&data.r_inverse))
}

/// The three quasitriangularity identities plus invertibility of `R`.
pub fn verify_quasitriangular<H: Hopf + ?Sized>(h: &H, data: &RMatrixData, cutoff: u32) -> Report {
    let mut report = Report::new();
    let (r, r_inv) = (&data.r, &data.r_inverse);
    let one = unit_tensor(2);
    report.check(
        "R invertible",
        "R R⁻¹ = 1⊗1 = R⁻¹ R",
        (h.tensor_mul(r, r_inv) != one || h.tensor_mul(r_inv, r) != one).then(|| h.format_tensor(r)),
    );
    report.check(
        "quasi-cocommutative",
        "Δ^op(x) = R Δ(x) R⁻¹",
        first(
            generators(h, cutoff),
            |g| {
                let d = h.coproduct_gen(*g);
                h.swap_legs(&d) != h.tensor_mul(&h.tensor_mul(r, &d), r_inv)
            },
            |g| h.gen_name(*g),
        ),
    );
    let r13 = embed_legs(r, [0, 2], 3);
    let r12 = embed_legs(r, [0, 1], 3);
    let r23 = embed_legs(r, [1, 2], 3);
    report.check(
        "coproduct in first leg",
        "(Δ⊗I)(R) = R₁₃R₂₃",
        (h.coproduct_in_slot(r, 0) != h.tensor_mul(&r13, &r23)).then(|| h.format_tensor(r)),
    );
    report.check(
        "coproduct in second leg",
        "(I⊗Δ)(R) = R₁₃R₁₂",
        (h.coproduct_in_slot(r, 1) != h.tensor_mul(&r13, &r12)).then(|| h.format_tensor(r)),
    );
    report
}

/// The Drinfeld element `u = Σ S(tᵢ)sᵢ` with its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Drinfeld {
    pub u: Element,
    pub u_inverse: Element,
}

/// Compute `u` from `R = Σ sᵢ⊗tᵢ`; the inverse is taken from
/// `Σ tᵢS²(sᵢ)` or `Σ S⁻¹(t'ᵢ)s'ᵢ` over `R⁻¹`, whichever inverts `u`.
pub fn drinfeld_element<H: Hopf + ?Sized>(h: &H, data: &RMatrixData) -> Result<Drinfeld> {
    let mut u = Element::zero();
    let mut via_r = Element::zero();
    for (k, c) in data.r.terms() {
        let s = Element::monomial(k[0].clone());
        u.add_scaled(&h.mul(&h.antipode_word(&k[1]), &s), c);
        via_r.add_scaled(&h.mul(&Element::monomial(k[1].clone()), &h.antipode(&h.antipode(&s))), c);
    }
    let mut candidates = vec![via_r];
    if let Ok(via_inverse) = data.r_inverse.terms().try_fold(Element::zero(), |mut acc, (k, c)| {
        let t = h.antipode_inverse(&Element::monomial(k[1].clone()))?;
        acc.add_scaled(&h.mul(&t, &Element::monomial(k[0].clone())), c);
        Ok::<_, Error>(acc)
    }) {
        candidates.push(via_inverse);
    }
    let inverts = |v: &Element| h.mul(&u, v) == Element::one() && h.mul(v, &u) == Element::one();
    match candidates.into_iter().find(inverts) {
        Some(u_inverse) => Ok(Drinfeld { u, u_inverse }),
        None => Err(Error::Rejected { what: "Drinfeld element has no inverse".into(), witness: h.format_element(&u) }),
    }
}

/// Properties of the Drinfeld element that hold for any quasitriangular `R`.
pub fn verify_drinfeld<H: Hopf + ?Sized>(h: &H, data: &RMatrixData, d: &Drinfeld, cutoff: u32) -> Report {
    let mut report = Report::new();
    let gens = generators(h, cutoff);
    report.check(
        "square of antipode",
        "S²(x) = u x u⁻¹",
        first(
            gens.iter().copied(),
            |g| {
                let x = h.gen(*g);
                h.antipode(&h.antipode(&x)) != h.mul_all(&[d.u.clone(), x, d.u_inverse.clone()])
            },
            |g| h.gen_name(*g),
        ),
    );
    report.check(
        "counit of u",
        "ε(u) = 1",
        (!h.counit(&d.u).is_one()).then(|| h.format_element(&d.u)),
    );
    let su = h.antipode(&d.u);
    let c = h.mul(&d.u, &su);
    let central = h.mul(&su, &d.u) == c && gens.iter().all(|g| h.commutator(&c, &h.gen(*g)).is_zero());
    report.check("u S(u) central", "u S(u) = S(u) u is central", (!central).then(|| h.format_element(&c)));
    let uu = Tensor::pure(&[d.u.clone(), d.u.clone()]);
    report.check(
        "coproduct of u",
        "Δu = (R₂₁R)⁻¹(u⊗u)",
        (h.coproduct(&d.u) != h.tensor_mul(&inverse_monodromy(h, data), &uu)).then(|| h.format_element(&d.u)),
    );
    report
}

/// The ribbon identities for a candidate `θ`.
pub fn verify_ribbon<H: Hopf + ?Sized>(h: &H, data: &RMatrixData, theta: &GroupLikePair, cutoff: u32) -> Report {
    let mut report = Report::new();
    let t = &theta.element;
    let show = || h.format_element(t);
    report.check(
        "ribbon inverse",
        "θ θ⁻¹ = 1 = θ⁻¹ θ",
        (h.mul(t, &theta.inverse) != Element::one() || h.mul(&theta.inverse, t) != Element::one()).then(show),
    );
    report.check(
        "ribbon central",
        "θ x = x θ",
        first(generators(h, cutoff), |g| !h.commutator(t, &h.gen(*g)).is_zero(), |g| h.gen_name(*g)),
    );
    let tt = Tensor::pure(&[t.clone(), t.clone()]);
    report.check(
        "ribbon coproduct",
        "Δθ = (R₂₁R)⁻¹(θ⊗θ)",
        (h.coproduct(t) != h.tensor_mul(&inverse_monodromy(h, data), &tt)).then(show),
    );
    report.check("ribbon counit", "ε(θ) = 1", (!h.counit(t).is_one()).then(show));
    report.check("ribbon antipode", "S(θ) = θ", (h.antipode(t) != *t).then(show));
    report
}

/// The intrinsic modular pair `(ε, σ = θ⁻¹u)` of a ribbon algebra, with the
/// full record of checks leading to it. Any failed check is a rejection.
pub fn ribbon_mpi<H: Hopf + ?Sized>(h: &H, data: &RMatrixData, cutoff: u32) -> Result<(ModularPair, Report)> {
    let theta = data
        .ribbon
        .as_ref()
        .ok_or_else(|| Error::Unsupported("no ribbon element supplied".into()))?;
    let mut report = verify_quasitriangular(h, data, cutoff);
    let d = drinfeld_element(h, data)?;
    report.merge(verify_drinfeld(h, data, &d, cutoff));
    report.merge(verify_ribbon(h, data, theta, cutoff));
    let sigma = GroupLike {
        element: h.mul(&theta.inverse, &d.u),
        inverse: h.mul(&d.u_inverse, &theta.element),
    };
    let grouplike = sigma.validate(h).err().map(|e| e.to_string());
    report.check("sigma group-like", "Δσ = σ⊗σ, ε(σ) = 1", grouplike);
    report.check(
        "antipode of sigma",
        "S(σ) = σ⁻¹",
        (h.antipode(&sigma.element) != sigma.inverse).then(|| h.format_element(&sigma.element)),
    );
    if let Some(bad) = report.failures().next() {
        return Err(Error::Rejected { what: bad.name.clone(), witness: bad.witness.clone().unwrap_or_default() });
    }
    let pair = ModularPair::new(h, Character::counit(), sigma)?;
    report.merge(check_modular_pair(h, &pair, cutoff));
    Ok((pair, report))
}

/// Square-root data for the modular square, in the basis of `H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareRoots {
    /// Coordinates of the group-like `δ^{1/2}` and of its inverse.
    pub delta_half: Vector,
    pub delta_half_inverse: Vector,
    /// Values of the character `σ^{1/2}` on the basis, i.e. its
    /// coordinates in the dual basis of `Ĥ`.
    pub sigma_half: Vector,
}

/// `H̃ = Ĥ^op ⊗ Ĥ` with the character `δ̃ = δ^{1/2} ⊗ δ^{-1/2}` and the
/// group-like `σ̃ = σ^{1/2} ⊗ σ^{1/2}`.
#[derive(Clone, Debug)]
pub struct ModularSquare {
    pub base: FiniteHopf,
    pub dual: FiniteHopf,
    pub dual_op: FiniteHopf,
    pub square: FiniteHopf,
    pub roots: SquareRoots,
    /// `σ^{-1/2}` in `Ĥ`.
    pub sigma_half_inverse: Vector,
    /// Values of `δ̃` on the basis of `H̃`.
    pub delta: Vector,
    pub sigma: Vector,
    pub sigma_inverse: Vector,
}

fn kron(x: &[Scalar], y: &[Scalar]) -> Vector {
    x.iter().flat_map(|a| y.iter().map(move |b| a * b)).collect()
}

fn dot(x: &[Scalar], y: &[Scalar]) -> Scalar {
    x.iter().zip(y).fold(Scalar::zero(), |acc, (a, b)| &acc + &(a * b))
}

fn basis_vector(d: usize, i: usize) -> Vector {
    let mut v = vec![Scalar::zero(); d];
    v[i] = Scalar::one();
    v
}

fn is_group_like(k: &FiniteHopf, v: &[Scalar]) -> bool {
    let d = k.dim();
    if !dot(&k.counit, v).is_one() {
        return false;
    }
    (0..d).all(|i| {
        (0..d).all(|j| {
            let lhs = (0..d).fold(Scalar::zero(), |acc, m| &acc + &(&v[m] * &k.comult[m][i][j]));
            lhs == &v[i] * &v[j]
        })
    })
}

/// `x ↦ σ⁻¹ S_δ(x)` on coordinates, with `S_δ = δ ⋆ S`.
fn involution_step(k: &FiniteHopf, delta: &[Scalar], sigma_inverse: &[Scalar], x: &[Scalar]) -> Vector {
    let d = k.dim();
    let mut twisted = vec![Scalar::zero(); d];
    for (m, xm) in x.iter().enumerate() {
        if xm.is_zero() {
            continue;
        }
        for i in 0..d {
            if delta[i].is_zero() {
                continue;
            }
            for j in 0..d {
                let c = &k.comult[m][i][j];
                if c.is_zero() {
                    continue;
                }
                let w = &(xm * c) * &delta[i];
                for (t, s) in twisted.iter_mut().zip(&k.antipode[j]) {
                    *t += &(&w * s);
                }
            }
        }
    }
    k.mul_vec(sigma_inverse, &twisted)
}

fn squared_step(k: &FiniteHopf, delta: &[Scalar], sigma_inverse: &[Scalar], i: usize) -> Vector {
    let once = involution_step(k, delta, sigma_inverse, &basis_vector(k.dim(), i));
    involution_step(k, delta, sigma_inverse, &once)
}

/// The scalar `c` with `(σ⁻¹∘S_δ)² = c·I`, if the square is scalar.
pub fn involution_scalar(k: &FiniteHopf, delta: &[Scalar], sigma_inverse: &[Scalar]) -> Option<Scalar> {
    let c = squared_step(k, delta, sigma_inverse, 0)[0].clone();
    (0..k.dim())
        .all(|i| {
            let mut expect = basis_vector(k.dim(), i);
            expect[i] = c.clone();
            squared_step(k, delta, sigma_inverse, i) == expect
        })
        .then_some(c)
}

impl ModularSquare {
    pub fn new(base: &FiniteHopf, roots: SquareRoots) -> Result<Self> {
        let d = base.dim();
        for (what, v) in [
            ("δ^{1/2}", &roots.delta_half),
            ("δ^{-1/2}", &roots.delta_half_inverse),
            ("σ^{1/2}", &roots.sigma_half),
        ] {
            if v.len() != d {
                return Err(Error::Dimension(format!("{what} has {} coordinates, expected {d}", v.len())));
            }
        }
        let dual = base.dual();
        let dual_op = dual.opposite()?;
        let square = dual_op.tensor(&dual)?;
        let sigma_half_inverse = dual.antipode_vec(&roots.sigma_half);
        Ok(ModularSquare {
            base: base.clone(),
            delta: kron(&roots.delta_half, &roots.delta_half_inverse),
            sigma: kron(&roots.sigma_half, &roots.sigma_half),
            sigma_inverse: kron(&sigma_half_inverse, &sigma_half_inverse),
            sigma_half_inverse,
            dual,
            dual_op,
            square,
            roots,
        })
    }

    /// `⟨σ^{-1/2}, δ^{-1/2}⟩`.
    pub fn pairing(&self) -> Scalar {
        dot(&self.sigma_half_inverse, &self.roots.delta_half_inverse)
    }

    /// Scalar of `(σ^{-1/2}∘S_{δ^{-1/2}})²` on `Ĥ`.
    pub fn factor_scalar(&self) -> Option<Scalar> {
        involution_scalar(&self.dual, &self.roots.delta_half_inverse, &self.sigma_half_inverse)
    }

    /// Scalar of `(σ^{-1/2}∘S⁻¹_{δ^{1/2}})²` on `Ĥ^op`.
    pub fn opposite_factor_scalar(&self) -> Option<Scalar> {
        involution_scalar(&self.dual_op, &self.roots.delta_half, &self.sigma_half_inverse)
    }

    pub fn verify(&self) -> Report {
        let mut report = Report::new();
        let base = &self.base;
        let d = base.dim();
        let roots = &self.roots;
        report.check(
            "delta root group-like",
            "Δδ^{1/2} = δ^{1/2}⊗δ^{1/2} in H",
            (!is_group_like(base, &roots.delta_half)).then(|| "δ^{1/2}".to_string()),
        );
        report.check(
            "delta root inverse",
            "δ^{1/2} δ^{-1/2} = 1",
            (base.mul_vec(&roots.delta_half, &roots.delta_half_inverse) != base.unit).then(|| "δ^{-1/2}".to_string()),
        );
        report.check(
            "sigma root group-like",
            "σ^{1/2} is a character of H",
            (!is_group_like(&self.dual, &roots.sigma_half)).then(|| "σ^{1/2}".to_string()),
        );
        report.check(
            "modular pair",
            "δ̃(σ̃) = 1",
            (!dot(&self.delta, &self.sigma).is_one()).then(|| dot(&self.delta, &self.sigma).to_string()),
        );

        let pairing = self.pairing();
        let factor = self.factor_scalar();
        let opposite = self.opposite_factor_scalar();
        report.check(
            "factor scalar",
            "(σ^{-1/2}∘S_{δ^{-1/2}})² = ⟨σ^{-1/2}, δ^{-1/2}⟩ I on Ĥ",
            match &factor {
                Some(c) if *c == pairing => None,
                Some(c) => Some(format!("scalar {c}, pairing {pairing}")),
                None => Some("square is not scalar".into()),
            },
        );
        let reciprocal = pairing.inv().ok();
        report.check(
            "opposite factor scalar",
            "(σ^{-1/2}∘S⁻¹_{δ^{1/2}})² = ⟨σ^{-1/2}, δ^{-1/2}⟩⁻¹ I on Ĥ^op",
            match (&opposite, &reciprocal) {
                (Some(c), Some(r)) if c == r => None,
                (Some(c), _) => Some(format!("scalar {c}, pairing {pairing}")),
                (None, _) => Some("square is not scalar".into()),
            },
        );
        let values = |s: &Option<Scalar>| s.as_ref().map_or("none".to_string(), |c| c.to_string());
        report.compute(ComputationRecord {
            quantity: "factor scalars".into(),
            labels: vec![("dimension".into(), d.to_string())],
            values: vec![pairing.to_string(), values(&factor), values(&opposite)],
            stable: None,
        });

        let n = self.square.dim();
        report.check(
            "involution",
            "(σ̃⁻¹∘S_δ̃)² = I on a basis of H̃",
            first(
                0..n,
                |i| squared_step(&self.square, &self.delta, &self.sigma_inverse, *i) != basis_vector(n, *i),
                |i| self.square.names[*i].clone(),
            ),
        );
        report.merge(self.presented_checks());
        report
    }

    /// The same pair on the presented form of `H̃`, through the generic
    /// modular-pair checks.
    fn presented_checks(&self) -> Report {
        let mut report = Report::new();
        let identity = "generic modular-pair checks on the presented H̃";
        let presented = match self.square.to_presentation() {
            Ok(p) => p,
            Err(e) => {
                report.check("presented pair", identity, Some(e.to_string()));
                return report;
            }
        };
        let h = &presented.hopf;
        let sigma = GroupLike { element: presented.element(&self.sigma), inverse: presented.element(&self.sigma_inverse) };
        match ModularPair::new(h, presented.character(&self.delta), sigma) {
            Ok(pair) => {
                for mut c in check_modular_pair(h, &pair, 2).checks {
                    c.name = format!("presented {}", c.name);
                    report.checks.push(c);
                }
            }
            Err(e) => report.check("presented pair", identity, Some(e.to_string())),
        }
        report
    }
}

/// Coordinates of an element in a normal-form basis.
pub fn coordinates(basis: &[Word], e: &Element) -> Result<Vector> {
    let mut v = vec![Scalar::zero(); basis.len()];
    for (w, c) in e.terms() {
        let i = basis
            .iter()
            .position(|b| b == w)
            .ok_or_else(|| Error::Invalid(format!("word {w:?} is not in the basis")))?;
        v[i] = c.clone();
    }
    Ok(v)
}

/// Dense structure constants and square roots from a catalog entry, with
/// the named roots looked up among its group-likes and characters.
pub fn square_roots_from_catalog(entry: &CatalogEntry) -> Result<(FiniteHopf, SquareRoots)> {
    let names = entry
        .square_roots
        .as_ref()
        .ok_or_else(|| Error::Unsupported(format!("{}: no square root supplied for δ or σ", entry.name)))?;
    let delta = entry
        .group_likes
        .get(&names.delta_half)
        .ok_or_else(|| Error::Unsupported(format!("{}: no square root δ^{{1/2}} named {:?}", entry.name, names.delta_half)))?;
    let sigma = entry
        .characters
        .get(&names.sigma_half)
        .ok_or_else(|| Error::Unsupported(format!("{}: no square root σ^{{1/2}} named {:?}", entry.name, names.sigma_half)))?;
    square_roots_for(entry, delta, sigma)
}

/// Dense structure constants and explicitly chosen roots.
pub fn square_roots_for(entry: &CatalogEntry, delta_half: &GroupLike, sigma_half: &Character) -> Result<(FiniteHopf, SquareRoots)> {
    let h = entry.require_hopf()?;
    let basis = h.finite_basis()?;
    let base = FiniteHopf::from_hopf(h)?;
    let roots = SquareRoots {
        delta_half: coordinates(&basis, &delta_half.element)?,
        delta_half_inverse: coordinates(&basis, &delta_half.inverse)?,
        sigma_half: basis.iter().map(|w| sigma_half.eval_word(h, w)).collect(),
    };
    Ok((base, roots))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leg_embedding_pads_with_units() {
        let t = Tensor::basis(vec![vec![0], vec![1]]);
        let e = embed_legs(&t, [0, 2], 3);
        assert_eq!(e, Tensor::basis(vec![vec![0], vec![], vec![1]]));
    }

    #[test]
    fn kron_orders_like_the_tensor_basis() {
        let x = vec![Scalar::one(), Scalar::from_int(2)];
        let y = vec![Scalar::from_int(3), Scalar::from_int(5)];
        let k = kron(&x, &y);
        assert_eq!(k[1], Scalar::from_int(5));
        assert_eq!(k[2], Scalar::from_int(6));
    }
}
