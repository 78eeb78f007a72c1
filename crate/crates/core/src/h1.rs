//! The codimension-one transverse Hopf algebra generated by `Y`, `X` and
//! the infinite family `δ_n`, with `[Y,X]=X`, `[Y,δ_n]=nδ_n`,
//! `[X,δ_n]=δ_{n+1}`, `[δ_n,δ_m]=0`.
//!
//! Generators are materialized on demand: index 0 is `Y`, 1 is `X`, and
//! `n + 1` is `δ_n`. Normal forms are PBW monomials in the order
//! `δ_1 < δ_2 < … < X < Y`.

use std::collections::HashMap;
use std::sync::Mutex;

use crate::algebra::{Algebra, AlgebraExt, Element, Gen, NormalFormCache, Tensor, Word};
use crate::hopf::{Hopf, HopfCache, HopfExt};
use crate::scalar::Scalar;

pub const Y: Gen = 0;
pub const X: Gen = 1;

/// Generator index of `δ_n`.
pub fn delta(n: u32) -> Gen {
    assert!(n >= 1, "δ_n is indexed from 1");
    n + 1
}

#[derive(Debug, Default)]
pub struct H1 {
    cache: NormalFormCache,
    hopf: HopfCache,
    coproducts: Mutex<HashMap<Gen, Tensor>>,
    antipodes: Mutex<HashMap<Gen, Element>>,
    antipode_inverses: Mutex<HashMap<Gen, Element>>,
}

impl H1 {
    pub fn new() -> Self {
        H1::default()
    }

    fn order_key(g: Gen) -> u32 {
        match g {
            Y => u32::MAX,
            X => u32::MAX - 1,
            d => d - 1,
        }
    }

    /// `[a, b]` for generators with `a` after `b` in PBW order.
    fn bracket(a: Gen, b: Gen) -> Element {
        match (a, b) {
            (Y, X) => Element::monomial(vec![X]),
            (Y, d) => Element::term(vec![d], Scalar::from_int(i64::from(d - 1))),
            (X, d) => Element::monomial(vec![d + 1]),
            _ => Element::zero(),
        }
    }

    fn memo(map: &Mutex<HashMap<Gen, Element>>, g: Gen, f: impl FnOnce() -> Element) -> Element {
        if let Some(e) = map.lock().unwrap().get(&g) {
            return e.clone();
        }
        let e = f();
        map.lock().unwrap().insert(g, e.clone());
        e
    }
}

impl Algebra for H1 {
    fn name(&self) -> &str {
        "h1"
    }

    fn conductor(&self) -> u32 {
        1
    }

    fn gen_name(&self, g: Gen) -> String {
        match g {
            Y => "Y".into(),
            X => "X".into(),
            d => format!("d{}", d - 1),
        }
    }

    fn gen_weight(&self, g: Gen) -> u32 {
        match g {
            Y | X => 1,
            d => d - 1,
        }
    }

    fn gen_by_name(&self, name: &str) -> Option<Gen> {
        match name {
            "Y" => Some(Y),
            "X" => Some(X),
            _ => {
                let n: u32 = name.strip_prefix('d')?.parse().ok()?;
                (n >= 1).then(|| delta(n))
            }
        }
    }

    fn redex(&self, w: &[Gen]) -> Option<(usize, usize, Element)> {
        let i = w.windows(2).position(|p| H1::order_key(p[0]) > H1::order_key(p[1]))?;
        let (a, b) = (w[i], w[i + 1]);
        let mut rep = Element::monomial(vec![b, a]);
        rep.add_scaled(&H1::bracket(a, b), &Scalar::one());
        Some((i, 2, rep))
    }

    fn generators_up_to(&self, weight: u32) -> Vec<Gen> {
        if weight == 0 {
            return Vec::new();
        }
        let mut out = vec![Y, X];
        out.extend((1..=weight).map(delta));
        out
    }

    fn relations_up_to(&self, weight: u32) -> Vec<(Word, Element)> {
        let gens = self.generators_up_to(weight);
        let mut out = Vec::new();
        for &a in &gens {
            for &b in &gens {
                if H1::order_key(a) > H1::order_key(b) {
                    let mut rhs = Element::monomial(vec![b, a]);
                    rhs.add_scaled(&H1::bracket(a, b), &Scalar::one());
                    out.push((vec![a, b], rhs));
                }
            }
        }
        out
    }

    fn nf_cache(&self) -> &NormalFormCache {
        &self.cache
    }
}

impl Hopf for H1 {
    fn coproduct_gen(&self, g: Gen) -> Tensor {
        if let Some(t) = self.coproducts.lock().unwrap().get(&g) {
            return t.clone();
        }
        let primitive = |g: Gen| {
            Tensor::basis(vec![vec![g], vec![]]).add(&Tensor::basis(vec![vec![], vec![g]]))
        };
        let t = match g {
            Y => primitive(Y),
            X => primitive(X).add(&Tensor::basis(vec![vec![delta(1)], vec![Y]])),
            2 => primitive(2),
            d => {
                let dx = self.coproduct_gen(X);
                let dd = self.coproduct_gen(d - 1);
                self.tensor_mul(&dx, &dd).sub(&self.tensor_mul(&dd, &dx))
            }
        };
        self.coproducts.lock().unwrap().insert(g, t.clone());
        t
    }

    fn counit_gen(&self, _g: Gen) -> Scalar {
        Scalar::zero()
    }

    fn antipode_gen(&self, g: Gen) -> Element {
        H1::memo(&self.antipodes, g, || match g {
            Y => Element::term(vec![Y], Scalar::from_int(-1)),
            X => Element::from_terms([
                (vec![X], Scalar::from_int(-1)),
                (vec![delta(1), Y], Scalar::one()),
            ]),
            2 => Element::term(vec![2], Scalar::from_int(-1)),
            d => {
                let sx = self.antipode_gen(X);
                let sd = self.antipode_gen(d - 1);
                self.commutator(&sd, &sx)
            }
        })
    }

    fn antipode_inverse_gen(&self, g: Gen) -> Option<Element> {
        Some(H1::memo(&self.antipode_inverses, g, || match g {
            Y => Element::term(vec![Y], Scalar::from_int(-1)),
            // S(-X + Yδ₁) = X - δ₁Y + δ₁Y = X
            X => self.normalize(&Element::from_terms([
                (vec![X], Scalar::from_int(-1)),
                (vec![Y, delta(1)], Scalar::one()),
            ])),
            2 => Element::term(vec![2], Scalar::from_int(-1)),
            d => {
                let sx = self.antipode_inverse_gen(X).unwrap();
                let sd = self.antipode_inverse_gen(d - 1).unwrap();
                self.commutator(&sd, &sx)
            }
        }))
    }

    fn hopf_cache(&self) -> &HopfCache {
        &self.hopf
    }
}

impl H1 {
    /// `S²` applied to an element, exposed for the witness `S² ≠ id`.
    pub fn antipode_squared(&self, e: &Element) -> Element {
        self.antipode(&self.antipode(e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn commutator_x_delta1() {
        let h = H1::new();
        let c = h.commutator(&h.gen(X), &h.gen(delta(1)));
        assert_eq!(c, h.gen(delta(2)));
    }

    #[test]
    fn coproduct_delta2() {
        let h = H1::new();
        let expected = Tensor::basis(vec![vec![delta(2)], vec![]])
            .add(&Tensor::basis(vec![vec![], vec![delta(2)]]))
            .add(&Tensor::basis(vec![vec![delta(1)], vec![delta(1)]]));
        assert_eq!(h.coproduct_gen(delta(2)), expected);
    }

    #[test]
    fn normal_forms_sorted() {
        let h = H1::new();
        let e = h.normal_form_word(&[Y, X, delta(1), Y, X, delta(2)]);
        for (w, _) in e.terms() {
            assert!(w.windows(2).all(|p| H1::order_key(p[0]) <= H1::order_key(p[1])));
        }
    }
}
