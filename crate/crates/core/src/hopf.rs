//! Hopf structure on presented algebras: coproduct, counit, antipode,
//! characters, group-likes, modular pairs and their verification.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Mutex;

use crate::algebra::{Algebra, AlgebraExt, Element, Gen, NormalFormCache, Presentation, Tensor, Word};
use crate::error::{Error, Result};
use crate::report::Report;
use crate::scalar::Scalar;

/// Memo of structure maps evaluated on monomials.
#[derive(Default)]
pub struct HopfCache {
    coproduct: Mutex<HashMap<Word, Tensor>>,
    iterated: Mutex<HashMap<(Word, usize), Tensor>>,
    antipode: Mutex<HashMap<Word, Element>>,
}

impl fmt::Debug for HopfCache {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("HopfCache")
    }
}

/// A Hopf algebra given by its values on generators; everything else is
/// extended (anti)multiplicatively.
pub trait Hopf: Algebra {
    /// Coproduct of a generator, a level-2 tensor.
    fn coproduct_gen(&self, g: Gen) -> Tensor;
    fn counit_gen(&self, g: Gen) -> Scalar;
    fn antipode_gen(&self, g: Gen) -> Element;
    fn antipode_inverse_gen(&self, _g: Gen) -> Option<Element> {
        None
    }
    fn hopf_cache(&self) -> &HopfCache;
}

pub trait HopfExt: Hopf {
    fn coproduct_word(&self, w: &[Gen]) -> Tensor {
        if w.is_empty() {
            return Tensor::basis(vec![Word::new(), Word::new()]);
        }
        if let Some(t) = self.hopf_cache().coproduct.lock().unwrap().get(w) {
            return t.clone();
        }
        let mut acc = self.coproduct_gen(w[0]);
        for g in &w[1..] {
            acc = self.tensor_mul(&acc, &self.coproduct_gen(*g));
        }
        self.hopf_cache().coproduct.lock().unwrap().insert(w.to_vec(), acc.clone());
        acc
    }

    fn coproduct(&self, e: &Element) -> Tensor {
        let mut out = Tensor::zero(2);
        for (w, c) in e.terms() {
            out.add_scaled(&self.coproduct_word(w), c);
        }
        out
    }

    /// `Δ^{n-1}` landing in `n` slots; `n = 0` gives the counit.
    fn iterated_coproduct_word(&self, w: &[Gen], n: usize) -> Tensor {
        match n {
            0 => return Tensor::scalar(self.counit_word(w)),
            1 => return Tensor::basis(vec![w.to_vec()]),
            2 => return self.coproduct_word(w),
            _ => {}
        }
        let key = (w.to_vec(), n);
        if let Some(t) = self.hopf_cache().iterated.lock().unwrap().get(&key) {
            return t.clone();
        }
        let prev = self.iterated_coproduct_word(w, n - 1);
        let out = prev.map_slot(n - 2, 2, |u| self.coproduct_word(u));
        self.hopf_cache().iterated.lock().unwrap().insert(key, out.clone());
        out
    }

    fn iterated_coproduct(&self, e: &Element, n: usize) -> Tensor {
        let mut out = Tensor::zero(n);
        for (w, c) in e.terms() {
            out.add_scaled(&self.iterated_coproduct_word(w, n), c);
        }
        out
    }

    fn counit_word(&self, w: &[Gen]) -> Scalar {
        let mut acc = Scalar::one();
        for g in w {
            acc *= &self.counit_gen(*g);
            if acc.is_zero() {
                break;
            }
        }
        acc
    }

    fn counit(&self, e: &Element) -> Scalar {
        let mut acc = Scalar::zero();
        for (w, c) in e.terms() {
            acc += &(c * &self.counit_word(w));
        }
        acc
    }

    fn antipode_word(&self, w: &[Gen]) -> Element {
        if w.is_empty() {
            return Element::one();
        }
        if let Some(e) = self.hopf_cache().antipode.lock().unwrap().get(w) {
            return e.clone();
        }
        let mut acc = Element::one();
        for g in w.iter().rev() {
            acc = self.mul(&acc, &self.antipode_gen(*g));
        }
        self.hopf_cache().antipode.lock().unwrap().insert(w.to_vec(), acc.clone());
        acc
    }

    fn antipode(&self, e: &Element) -> Element {
        let mut out = Element::zero();
        for (w, c) in e.terms() {
            out.add_scaled(&self.antipode_word(w), c);
        }
        out
    }

    fn antipode_inverse(&self, e: &Element) -> Result<Element> {
        let mut out = Element::zero();
        for (w, c) in e.terms() {
            let mut acc = Element::one();
            for g in w.iter().rev() {
                let s = self.antipode_inverse_gen(*g).ok_or_else(|| {
                    Error::Unsupported(format!("{} has no antipode inverse table", self.name()))
                })?;
                acc = self.mul(&acc, &s);
            }
            out.add_scaled(&acc, c);
        }
        Ok(out)
    }

    /// Apply `Δ` to one slot of a tensor.
    fn coproduct_in_slot(&self, t: &Tensor, slot: usize) -> Tensor {
        t.map_slot(slot, 2, |w| self.coproduct_word(w))
    }

    /// Apply `ε` to one slot of a tensor, contracting it.
    fn counit_in_slot(&self, t: &Tensor, slot: usize) -> Tensor {
        t.map_slot(slot, 0, |w| Tensor::scalar(self.counit_word(w)))
    }

    /// Apply a linear endomorphism of `H` to one slot.
    fn map_in_slot(&self, t: &Tensor, slot: usize, f: impl Fn(&Word) -> Element) -> Tensor {
        t.map_slot(slot, 1, |w| Tensor::from_element(&f(w)))
    }

    /// Multiply all slots together, left to right.
    fn multiply_out(&self, t: &Tensor) -> Element {
        let mut out = Element::zero();
        for (k, c) in t.terms() {
            let mut acc = Element::one();
            for w in k {
                acc = self.mul(&acc, &Element::monomial(w.clone()));
            }
            out.add_scaled(&acc, c);
        }
        out
    }

    fn swap_legs(&self, t: &Tensor) -> Tensor {
        let mut out = Tensor::zero(2);
        for (k, c) in t.terms() {
            out.add_term(vec![k[1].clone(), k[0].clone()], c);
        }
        out
    }
}

impl<T: Hopf + ?Sized> HopfExt for T {}

/// Multiplicative functional on `H`, stored on generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    /// `None` is the counit; otherwise unlisted generators take value 0.
    values: Option<BTreeMap<Gen, Scalar>>,
}

impl Character {
    pub fn counit() -> Self {
        Character { values: None }
    }

    pub fn from_values(values: BTreeMap<Gen, Scalar>) -> Self {
        Character { values: Some(values) }
    }

    pub fn is_counit(&self) -> bool {
        self.values.is_none()
    }

    pub fn values(&self) -> Option<&BTreeMap<Gen, Scalar>> {
        self.values.as_ref()
    }

    /// `ε`, or the nonzero generator values such as `{Y: 1}`.
    pub fn describe<H: Hopf + ?Sized>(&self, h: &H) -> String {
        match &self.values {
            None => "ε".to_string(),
            Some(map) => {
                let parts: Vec<String> = map
                    .iter()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(g, v)| format!("{}: {}", h.gen_name(*g), crate::expr::format_scalar(v, h.conductor())))
                    .collect();
                format!("{{{}}}", parts.join(", "))
            }
        }
    }

    pub fn gen_value<H: Hopf + ?Sized>(&self, h: &H, g: Gen) -> Scalar {
        match &self.values {
            None => h.counit_gen(g),
            Some(map) => map.get(&g).cloned().unwrap_or_default(),
        }
    }

    pub fn eval_word<H: Hopf + ?Sized>(&self, h: &H, w: &[Gen]) -> Scalar {
        let mut acc = Scalar::one();
        for g in w {
            acc *= &self.gen_value(h, *g);
            if acc.is_zero() {
                break;
            }
        }
        acc
    }

    pub fn eval<H: Hopf + ?Sized>(&self, h: &H, e: &Element) -> Scalar {
        let mut acc = Scalar::zero();
        for (w, c) in e.terms() {
            acc += &(c * &self.eval_word(h, w));
        }
        acc
    }

    /// Check consistency with every defining relation of weight at most
    /// `weight`.
    pub fn validate<H: Hopf + ?Sized>(&self, h: &H, weight: u32) -> Result<()> {
        for (lhs, rhs) in h.relations_up_to(weight) {
            if self.eval_word(h, &lhs) != self.eval(h, &rhs) {
                return Err(Error::Rejected {
                    what: "character does not respect a defining relation".into(),
                    witness: format!("{} = {}", h.format_word(&lhs), h.format_element(&rhs)),
                });
            }
        }
        Ok(())
    }
}

/// Group-like element together with its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupLike {
    pub element: Element,
    pub inverse: Element,
}

impl GroupLike {
    pub fn one() -> Self {
        GroupLike { element: Element::one(), inverse: Element::one() }
    }

    pub fn is_one(&self) -> bool {
        self.element == Element::one()
    }

    pub fn validate<H: Hopf + ?Sized>(&self, h: &H) -> Result<()> {
        let s = &self.element;
        let reject = |what: &str| Error::Rejected { what: what.into(), witness: h.format_element(s) };
        if h.coproduct(s) != Tensor::pure(&[s.clone(), s.clone()]) {
            return Err(reject("not group-like: coproduct differs from σ⊗σ"));
        }
        if !h.counit(s).is_one() {
            return Err(reject("not group-like: counit differs from 1"));
        }
        if h.mul(s, &self.inverse) != Element::one() || h.mul(&self.inverse, s) != Element::one() {
            return Err(reject("supplied inverse is not a two-sided inverse"));
        }
        Ok(())
    }
}

/// A character `δ` and a group-like `σ` with `δ(σ) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularPair {
    pub delta: Character,
    pub sigma: GroupLike,
}

impl ModularPair {
    pub fn new<H: Hopf + ?Sized>(h: &H, delta: Character, sigma: GroupLike) -> Result<Self> {
        sigma.validate(h)?;
        let v = delta.eval(h, &sigma.element);
        if !v.is_one() {
            return Err(Error::Rejected {
                what: format!("δ(σ) = {v}, not 1"),
                witness: h.format_element(&sigma.element),
            });
        }
        Ok(ModularPair { delta, sigma })
    }

    /// The pair `(ε, 1)`.
    pub fn trivial() -> Self {
        ModularPair { delta: Character::counit(), sigma: GroupLike::one() }
    }
}

/// `S̃(g) = Σ δ(g₍₁₎) S(g₍₂₎)` for a generator, read off the coproduct table.
pub fn twisted_antipode_gen<H: Hopf + ?Sized>(h: &H, delta: &Character, g: Gen) -> Element {
    let mut out = Element::zero();
    for (k, c) in h.coproduct_gen(g).terms() {
        let d = delta.eval_word(h, &k[0]);
        if !d.is_zero() {
            out.add_scaled(&h.antipode_word(&k[1]), &(c * &d));
        }
    }
    out
}

/// Twisted antipode, extended as an antihomomorphism from generators.
pub fn twisted_antipode<H: Hopf + ?Sized>(h: &H, delta: &Character, e: &Element) -> Element {
    let mut gens: HashMap<Gen, Element> = HashMap::new();
    let mut out = Element::zero();
    for (w, c) in e.terms() {
        let mut acc = Element::one();
        for g in w.iter().rev() {
            let s = gens.entry(*g).or_insert_with(|| twisted_antipode_gen(h, delta, *g));
            acc = h.mul(&acc, s);
        }
        out.add_scaled(&acc, c);
    }
    out
}

/// Twisted antipode as the convolution `δ ⋆ S` on the full coproduct.
pub fn twisted_antipode_convolution<H: Hopf + ?Sized>(h: &H, delta: &Character, e: &Element) -> Element {
    let mut out = Element::zero();
    for (k, c) in h.coproduct(e).terms() {
        let d = delta.eval_word(h, &k[0]);
        if !d.is_zero() {
            out.add_scaled(&h.antipode_word(&k[1]), &(c * &d));
        }
    }
    out
}

/// `h ↦ σ⁻¹ S̃(h)`.
pub fn twisted_involution_step<H: Hopf + ?Sized>(h: &H, pair: &ModularPair, e: &Element) -> Element {
    h.mul(&pair.sigma.inverse, &twisted_antipode(h, &pair.delta, e))
}

fn first_failure<T>(items: &[T], fails: impl Fn(&T) -> bool, show: impl Fn(&T) -> String) -> Option<String> {
    items.iter().find(|x| fails(x)).map(show)
}

/// Cutoff-bounded verification of the Hopf algebra axioms.
pub fn check_hopf_axioms<H: Hopf + ?Sized>(h: &H, cutoff: u32) -> Report {
    let mut report = Report::new();
    let monomials = h.monomials_up_to(cutoff);
    let gens = h.generators_up_to(cutoff);
    let show = |w: &Word| h.format_word(w);

    report.check(
        "coassociativity",
        "(Δ⊗id)Δ(h) = (id⊗Δ)Δ(h)",
        first_failure(
            &monomials,
            |w| {
                let d = h.coproduct_word(w);
                h.coproduct_in_slot(&d, 0) != h.coproduct_in_slot(&d, 1)
            },
            |w| show(w),
        ),
    );
    report.check(
        "counit",
        "(ε⊗id)Δ(h) = h = (id⊗ε)Δ(h)",
        first_failure(
            &monomials,
            |w| {
                let d = h.coproduct_word(w);
                let id = Tensor::basis(vec![w.to_vec()]);
                h.counit_in_slot(&d, 0) != id || h.counit_in_slot(&d, 1) != id
            },
            |w| show(w),
        ),
    );
    report.check(
        "antipode",
        "m(S⊗id)Δ(h) = ε(h)1 = m(id⊗S)Δ(h)",
        first_failure(
            &monomials,
            |w| {
                let d = h.coproduct_word(w);
                let eps = Element::scalar(h.counit_word(w));
                let left = h.multiply_out(&h.map_in_slot(&d, 0, |u| h.antipode_word(u)));
                let right = h.multiply_out(&h.map_in_slot(&d, 1, |u| h.antipode_word(u)));
                left != eps || right != eps
            },
            |w| show(w),
        ),
    );

    let pairs: Vec<(Gen, Gen)> = gens.iter().flat_map(|a| gens.iter().map(move |b| (*a, *b))).collect();
    report.check(
        "coproduct multiplicative",
        "Δ(ab) = Δ(a)Δ(b)",
        first_failure(
            &pairs,
            |(a, b)| {
                let ab = h.mul_words(&[*a], &[*b]);
                h.coproduct(&ab) != h.tensor_mul(&h.coproduct_gen(*a), &h.coproduct_gen(*b))
            },
            |(a, b)| format!("{}·{}", h.gen_name(*a), h.gen_name(*b)),
        ),
    );
    report.check(
        "counit multiplicative",
        "ε(ab) = ε(a)ε(b)",
        first_failure(
            &pairs,
            |(a, b)| h.counit(&h.mul_words(&[*a], &[*b])) != &h.counit_gen(*a) * &h.counit_gen(*b),
            |(a, b)| format!("{}·{}", h.gen_name(*a), h.gen_name(*b)),
        ),
    );
    report.check(
        "antipode antimultiplicative",
        "S(ab) = S(b)S(a)",
        first_failure(
            &pairs,
            |(a, b)| {
                h.antipode(&h.mul_words(&[*a], &[*b])) != h.mul(&h.antipode_gen(*b), &h.antipode_gen(*a))
            },
            |(a, b)| format!("{}·{}", h.gen_name(*a), h.gen_name(*b)),
        ),
    );
    if gens.iter().all(|g| h.antipode_inverse_gen(*g).is_some()) {
        report.check(
            "antipode inverse",
            "S(S⁻¹(g)) = g = S⁻¹(S(g))",
            first_failure(
                &gens,
                |g| {
                    let x = h.gen(*g);
                    let sinv = h.antipode_inverse_gen(*g).unwrap();
                    let back = h.antipode_inverse(&h.antipode_gen(*g));
                    h.antipode(&sinv) != x || back.as_ref() != Ok(&x)
                },
                |g| h.gen_name(*g),
            ),
        );
    }
    report
}

/// Cutoff-bounded verification of the twisted-antipode identities and the
/// involution condition for a modular pair.
pub fn check_modular_pair<H: Hopf + ?Sized>(h: &H, pair: &ModularPair, cutoff: u32) -> Report {
    let mut report = Report::new();
    let monomials = h.monomials_up_to(cutoff);
    let delta = &pair.delta;
    let show = |w: &Word| h.format_word(w);
    let st = |w: &Word| twisted_antipode(h, delta, &Element::monomial(w.clone()));

    report.check(
        "twisted antipode two paths",
        "S̃(h) = Σ δ(h₍₁₎)S(h₍₂₎)",
        first_failure(
            &monomials,
            |w| st(w) != twisted_antipode_convolution(h, delta, &Element::monomial(w.clone())),
            |w| show(w),
        ),
    );
    report.check(
        "twisted antipode unit",
        "S̃(1) = 1",
        (st(&Word::new()) != Element::one()).then(|| "1".to_string()),
    );
    let pairs: Vec<(&Word, &Word)> = monomials
        .iter()
        .flat_map(|u| monomials.iter().map(move |v| (u, v)))
        .filter(|(u, v)| h.word_weight(u) + h.word_weight(v) <= cutoff)
        .collect();
    report.check(
        "twisted antipode antimultiplicative",
        "S̃(h¹h²) = S̃(h²)S̃(h¹)",
        first_failure(
            &pairs,
            |(u, v)| {
                let prod = h.mul_words(u, v);
                twisted_antipode_convolution(h, delta, &prod) != h.mul(&st(v), &st(u))
            },
            |(u, v)| format!("{} , {}", show(u), show(v)),
        ),
    );
    report.check(
        "twisted antipode coproduct",
        "ΔS̃(h) = Σ S(h₍₂₎)⊗S̃(h₍₁₎)",
        first_failure(
            &monomials,
            |w| {
                let lhs = h.coproduct(&st(w));
                let mut rhs = Tensor::zero(2);
                for (k, c) in h.coproduct_word(w).terms() {
                    let t = Tensor::pure(&[h.antipode_word(&k[1]), st(&k[0])]);
                    rhs.add_scaled(&t, c);
                }
                lhs != rhs
            },
            |w| show(w),
        ),
    );
    report.check(
        "counit of twisted antipode",
        "ε∘S̃ = δ",
        first_failure(&monomials, |w| h.counit(&st(w)) != delta.eval_word(h, w), |w| show(w)),
    );
    report.check(
        "character of twisted antipode",
        "δ∘S̃ = ε",
        first_failure(&monomials, |w| delta.eval(h, &st(w)) != h.counit_word(w), |w| show(w)),
    );
    report.check(
        "involution",
        "(σ⁻¹S̃)²(h) = h",
        first_failure(
            &monomials,
            |w| {
                let x = Element::monomial(w.clone());
                let once = twisted_involution_step(h, pair, &x);
                twisted_involution_step(h, pair, &once) != x
            },
            |w| show(w),
        ),
    );
    report
}

/// Hopf algebra given by generator tables over a [`Presentation`].
#[derive(Debug)]
pub struct HopfPresentation {
    algebra: Presentation,
    coproduct: Vec<Tensor>,
    counit: Vec<Scalar>,
    antipode: Vec<Element>,
    antipode_inverse: Option<Vec<Element>>,
    cache: HopfCache,
}

impl Clone for HopfPresentation {
    fn clone(&self) -> Self {
        HopfPresentation {
            algebra: self.algebra.clone(),
            coproduct: self.coproduct.clone(),
            counit: self.counit.clone(),
            antipode: self.antipode.clone(),
            antipode_inverse: self.antipode_inverse.clone(),
            cache: HopfCache::default(),
        }
    }
}

impl HopfPresentation {
    pub fn new(
        algebra: Presentation,
        coproduct: Vec<Tensor>,
        counit: Vec<Scalar>,
        antipode: Vec<Element>,
        antipode_inverse: Option<Vec<Element>>,
    ) -> Result<Self> {
        let n = algebra.generators().len();
        let lens_ok = coproduct.len() == n
            && counit.len() == n
            && antipode.len() == n
            && antipode_inverse.as_ref().is_none_or(|v| v.len() == n);
        if !lens_ok {
            return Err(Error::Invalid(format!("structure tables must list all {n} generators")));
        }
        if let Some(t) = coproduct.iter().find(|t| t.level() != 2) {
            return Err(Error::Invalid(format!("coproduct entry of level {} (expected 2)", t.level())));
        }
        let algebra_ref = &algebra;
        let antipode = antipode.iter().map(|e| algebra_ref.normalize(e)).collect();
        let antipode_inverse =
            antipode_inverse.map(|v| v.iter().map(|e| algebra_ref.normalize(e)).collect());
        let coproduct = coproduct.iter().map(|t| normalize_tensor(algebra_ref, t)).collect();
        Ok(HopfPresentation { algebra, coproduct, counit, antipode, antipode_inverse, cache: HopfCache::default() })
    }

    pub fn algebra(&self) -> &Presentation {
        &self.algebra
    }

    pub fn coproduct_table(&self) -> &[Tensor] {
        &self.coproduct
    }

    pub fn counit_table(&self) -> &[Scalar] {
        &self.counit
    }

    pub fn antipode_table(&self) -> &[Element] {
        &self.antipode
    }

    pub fn antipode_inverse_table(&self) -> Option<&[Element]> {
        self.antipode_inverse.as_deref()
    }

    /// Copy with one coproduct entry replaced (used for negative controls).
    pub fn with_coproduct_gen(&self, g: Gen, t: Tensor) -> Result<Self> {
        let mut coproduct = self.coproduct.clone();
        *coproduct.get_mut(g as usize).ok_or_else(|| Error::Index(format!("generator {g}")))? = t;
        HopfPresentation::new(
            self.algebra.clone(),
            coproduct,
            self.counit.clone(),
            self.antipode.clone(),
            self.antipode_inverse.clone(),
        )
    }
}

/// Rewrite every slot of a tensor to normal form.
pub fn normalize_tensor<A: Algebra + ?Sized>(a: &A, t: &Tensor) -> Tensor {
    let mut out = Tensor::zero(t.level());
    for (k, c) in t.terms() {
        let mut partial = Tensor::scalar(c.clone());
        for w in k {
            partial = partial.append_element(&a.normal_form_word(w));
        }
        out.add_scaled(&partial, &Scalar::one());
    }
    out
}

impl Algebra for HopfPresentation {
    fn name(&self) -> &str {
        self.algebra.name()
    }
    fn conductor(&self) -> u32 {
        self.algebra.conductor()
    }
    fn gen_name(&self, g: Gen) -> String {
        self.algebra.gen_name(g)
    }
    fn gen_weight(&self, g: Gen) -> u32 {
        self.algebra.gen_weight(g)
    }
    fn gen_by_name(&self, name: &str) -> Option<Gen> {
        self.algebra.gen_by_name(name)
    }
    fn redex(&self, w: &[Gen]) -> Option<(usize, usize, Element)> {
        self.algebra.redex(w)
    }
    fn generators_up_to(&self, weight: u32) -> Vec<Gen> {
        self.algebra.generators_up_to(weight)
    }
    fn relations_up_to(&self, weight: u32) -> Vec<(Word, Element)> {
        self.algebra.relations_up_to(weight)
    }
    fn finite_dimensional(&self) -> bool {
        self.algebra.finite_dimensional()
    }
    fn nf_cache(&self) -> &NormalFormCache {
        self.algebra.nf_cache()
    }
}

impl Hopf for HopfPresentation {
    fn coproduct_gen(&self, g: Gen) -> Tensor {
        self.coproduct[g as usize].clone()
    }
    fn counit_gen(&self, g: Gen) -> Scalar {
        self.counit[g as usize].clone()
    }
    fn antipode_gen(&self, g: Gen) -> Element {
        self.antipode[g as usize].clone()
    }
    fn antipode_inverse_gen(&self, g: Gen) -> Option<Element> {
        self.antipode_inverse.as_ref().map(|v| v[g as usize].clone())
    }
    fn hopf_cache(&self) -> &HopfCache {
        &self.cache
    }
}
