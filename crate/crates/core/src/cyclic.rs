//! Cyclic modules: the Hopf-cyclic module of a Hopf algebra with a modular
//! pair, the cochain module of an algebra, and a sampled verifier for the
//! relations of the cyclic category.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Algebra, AlgebraExt, Element, Tensor, Word};
use crate::error::{Error, Result};
use crate::hopf::{check_modular_pair, twisted_antipode, Hopf, HopfExt, ModularPair};
use crate::report::Report;
use crate::scalar::Scalar;

/// A module over the cyclic category, presented by its generating
/// operators. Faces raise the level by one, degeneracies lower it.
pub trait LambdaModule {
    type Cochain: Clone;

    fn label(&self) -> String;
    fn level(&self, x: &Self::Cochain) -> usize;
    /// `δ_i` from level `n - 1` to level `n`, `0 ≤ i ≤ n`.
    fn face(&self, i: usize, x: &Self::Cochain) -> Self::Cochain;
    /// `σ_i` from level `n + 1` to level `n`, `0 ≤ i ≤ n`.
    fn degeneracy(&self, i: usize, x: &Self::Cochain) -> Self::Cochain;
    /// `τ_n` on level `n`.
    fn cyclic(&self, x: &Self::Cochain) -> Self::Cochain;
    /// Deterministic sample number `index` at a level; early indices
    /// enumerate simple basis objects, later ones are random.
    fn sample(&self, level: usize, index: usize, rng: &mut ChaCha8Rng) -> Self::Cochain;
    fn differs(&self, a: &Self::Cochain, b: &Self::Cochain, rng: &mut ChaCha8Rng) -> bool;
    fn describe(&self, x: &Self::Cochain) -> String;
}

pub(crate) fn small_coeff(rng: &mut ChaCha8Rng) -> Scalar {
    let v: i64 = rng.gen_range(1..=3);
    Scalar::from_int(if rng.gen_bool(0.5) { v } else { -v })
}

pub(crate) fn random_element(monomials: &[Word], rng: &mut ChaCha8Rng) -> Element {
    let terms = rng.gen_range(1..=3);
    let mut e = Element::zero();
    for _ in 0..terms {
        let w = monomials[rng.gen_range(0..monomials.len())].clone();
        e.add_term(w, &small_coeff(rng));
    }
    e
}

/// `N_n = Σ_j (-1)^{nj} τ_n^j`, for any operator `tau` on level `n`.
fn norm_with<T: Clone>(n: usize, x: &T, tau: impl Fn(&T) -> T, add: impl Fn(&mut T, &T, i64)) -> T {
    let mut acc = x.clone();
    let mut cur = x.clone();
    for j in 1..=n {
        cur = tau(&cur);
        add(&mut acc, &cur, if (n * j).is_multiple_of(2) { 1 } else { -1 });
    }
    acc
}

/// The cyclic module `C^n(H) = H^{⊗n}` of a Hopf algebra with a modular pair.
pub struct HopfCyclicModule {
    h: Arc<dyn Hopf>,
    pair: ModularPair,
    sample_weight: u32,
    monomials: Vec<Word>,
    twisted: Mutex<HashMap<Word, Element>>,
}

impl HopfCyclicModule {
    /// Build without checking the involution condition (negative controls
    /// need this).
    pub fn new(h: Arc<dyn Hopf>, pair: ModularPair) -> Self {
        let sample_weight = 2;
        let monomials = h.monomials_up_to(sample_weight);
        HopfCyclicModule { h, pair, sample_weight, monomials, twisted: Mutex::new(HashMap::new()) }
    }

    /// Build after checking the modular pair up to `cutoff`.
    pub fn checked(h: Arc<dyn Hopf>, pair: ModularPair, cutoff: u32) -> Result<Self> {
        let report = check_modular_pair(h.as_ref(), &pair, cutoff);
        if let Some(f) = report.failures().next() {
            return Err(Error::Rejected {
                what: format!("modular pair is not in involution ({})", f.name),
                witness: f.witness.clone().unwrap_or_default(),
            });
        }
        Ok(HopfCyclicModule::new(h, pair))
    }

    /// Weight bound for random sample chains.
    pub fn with_sample_weight(mut self, w: u32) -> Self {
        self.sample_weight = w;
        self.monomials = self.h.monomials_up_to(w);
        self
    }

    pub fn hopf(&self) -> &dyn Hopf {
        self.h.as_ref()
    }

    pub fn pair(&self) -> &ModularPair {
        &self.pair
    }

    pub fn sample_weight(&self) -> u32 {
        self.sample_weight
    }

    fn twisted_word(&self, w: &Word) -> Element {
        if let Some(e) = self.twisted.lock().unwrap().get(w) {
            return e.clone();
        }
        let e = twisted_antipode(self.h.as_ref(), &self.pair.delta, &Element::monomial(w.clone()));
        self.twisted.lock().unwrap().insert(w.clone(), e.clone());
        e
    }

    /// `δ_i`: insert 1 in front (`i = 0`), apply `Δ` to slot `i` (inner),
    /// or append `σ` (`i = n`).
    pub fn face(&self, i: usize, c: &Tensor) -> Result<Tensor> {
        let n = c.level() + 1;
        if i > n {
            return Err(Error::Index(format!("face δ_{i} on level {}", c.level())));
        }
        Ok(if i == 0 {
            c.prepend_element(&Element::one())
        } else if i == n {
            c.append_element(&self.pair.sigma.element)
        } else {
            self.h.coproduct_in_slot(c, i - 1)
        })
    }

    /// `σ_i`: apply `ε` to slot `i`.
    pub fn degeneracy(&self, i: usize, c: &Tensor) -> Result<Tensor> {
        if i >= c.level() {
            return Err(Error::Index(format!("degeneracy σ_{i} on level {}", c.level())));
        }
        Ok(self.h.counit_in_slot(c, i))
    }

    /// `Δ^{n-1} S̃(h¹) · (h² ⊗ … ⊗ hⁿ ⊗ tail)` summed over the terms of `c`.
    fn twisted_shift(&self, c: &Tensor, tail: Option<&Element>) -> Tensor {
        let n = c.level();
        let out_level = if tail.is_some() { n } else { n - 1 };
        let mut out = Tensor::zero(out_level);
        for (k, coeff) in c.terms() {
            let front = self.h.iterated_coproduct(&self.twisted_word(&k[0]), out_level);
            let mut rest = Tensor::basis(k[1..].to_vec());
            if let Some(t) = tail {
                rest = rest.append_element(t);
            }
            out.add_scaled(&self.h.tensor_mul(&front, &rest), coeff);
        }
        out
    }

    /// `τ_n`; the identity on level 0.
    pub fn cyclic(&self, c: &Tensor) -> Tensor {
        if c.level() == 0 {
            return c.clone();
        }
        self.twisted_shift(c, Some(&self.pair.sigma.element))
    }

    /// Extra degeneracy `σ̃_{-1}` from level `n + 1` to `n`.
    pub fn extra_degeneracy(&self, c: &Tensor) -> Result<Tensor> {
        if c.level() == 0 {
            return Err(Error::Index("extra degeneracy on level 0".into()));
        }
        Ok(self.twisted_shift(c, None))
    }

    /// `b = Σ (-1)^i δ_i` from level `n - 1` to `n`.
    pub fn b(&self, c: &Tensor) -> Tensor {
        let n = c.level() + 1;
        let mut out = Tensor::zero(n);
        for i in 0..=n {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            out.add_scaled(&self.face(i, c).expect("index in range"), &Scalar::from_int(sign));
        }
        out
    }

    pub fn norm(&self, c: &Tensor) -> Tensor {
        norm_with(c.level(), c, |x| self.cyclic(x), |acc, x, s| acc.add_scaled(x, &Scalar::from_int(s)))
    }

    /// `B = N_n σ̃_{-1} (1 + (-1)^n τ_{n+1})` from level `n + 1` to `n`.
    pub fn big_b(&self, c: &Tensor) -> Result<Tensor> {
        let n = c.level().checked_sub(1).ok_or_else(|| Error::Index("B on level 0".into()))?;
        let mut x = c.clone();
        x.add_scaled(&self.cyclic(c), &Scalar::from_int(if n % 2 == 0 { 1 } else { -1 }));
        Ok(self.norm(&self.extra_degeneracy(&x)?))
    }

    /// `B̄ = N_n σ̃_{-1}`, defined on chains with every slot in `ker ε`.
    pub fn big_b_normalized(&self, c: &Tensor) -> Result<Tensor> {
        for slot in 0..c.level() {
            let contracted = self.h.counit_in_slot(c, slot);
            if !contracted.is_zero() {
                return Err(Error::Rejected {
                    what: format!("slot {} of the chain is not in the kernel of the counit", slot + 1),
                    witness: self.h.format_tensor(c),
                });
            }
        }
        Ok(self.norm(&self.extra_degeneracy(c)?))
    }

    fn random_chain(&self, level: usize, rng: &mut ChaCha8Rng) -> Tensor {
        if level == 0 {
            return Tensor::scalar(small_coeff(rng));
        }
        let mut out = Tensor::zero(level);
        for _ in 0..rng.gen_range(1..=2) {
            let slots: Vec<Element> = (0..level).map(|_| random_element(&self.monomials, rng)).collect();
            out.add_scaled(&Tensor::pure(&slots), &small_coeff(rng));
        }
        out
    }
}

impl LambdaModule for HopfCyclicModule {
    type Cochain = Tensor;

    fn label(&self) -> String {
        self.h.name().to_string()
    }

    fn level(&self, x: &Tensor) -> usize {
        x.level()
    }

    fn face(&self, i: usize, x: &Tensor) -> Tensor {
        HopfCyclicModule::face(self, i, x).expect("face index in range")
    }

    fn degeneracy(&self, i: usize, x: &Tensor) -> Tensor {
        HopfCyclicModule::degeneracy(self, i, x).expect("degeneracy index in range")
    }

    fn cyclic(&self, x: &Tensor) -> Tensor {
        HopfCyclicModule::cyclic(self, x)
    }

    fn sample(&self, level: usize, index: usize, rng: &mut ChaCha8Rng) -> Tensor {
        if level == 0 {
            return if index == 0 { Tensor::scalar(Scalar::one()) } else { self.random_chain(0, rng) };
        }
        if index < self.monomials.len() {
            // a basis monomial in the first slot, units elsewhere
            let mut key = vec![Word::new(); level];
            key[0] = self.monomials[index].clone();
            return Tensor::basis(key);
        }
        self.random_chain(level, rng)
    }

    fn differs(&self, a: &Tensor, b: &Tensor, _rng: &mut ChaCha8Rng) -> bool {
        a != b
    }

    fn describe(&self, x: &Tensor) -> String {
        self.h.format_tensor(x)
    }
}

/// Multilinear form `φ(a⁰, …, aⁿ)` on an algebra, given by its values on
/// tuples of normal-form words.
#[derive(Clone)]
pub struct AlgebraCochain {
    degree: usize,
    f: Arc<dyn Fn(&[Word]) -> Scalar + Send + Sync>,
}

impl std::fmt::Debug for AlgebraCochain {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "AlgebraCochain(degree {})", self.degree)
    }
}

impl AlgebraCochain {
    pub fn new(degree: usize, f: impl Fn(&[Word]) -> Scalar + Send + Sync + 'static) -> Self {
        AlgebraCochain { degree, f: Arc::new(f) }
    }

    /// Cochain given by a table of basis values; missing entries are 0.
    pub fn from_table(degree: usize, table: BTreeMap<Vec<Word>, Scalar>) -> Self {
        AlgebraCochain::new(degree, move |args| table.get(args).cloned().unwrap_or_default())
    }

    pub fn zero(degree: usize) -> Self {
        AlgebraCochain::new(degree, |_| Scalar::zero())
    }

    /// Number of arguments minus one.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn eval_words(&self, args: &[Word]) -> Scalar {
        debug_assert_eq!(args.len(), self.degree + 1);
        (self.f)(args)
    }

    /// Value on a tensor of level `degree + 1`.
    pub fn eval_tensor(&self, t: &Tensor) -> Scalar {
        let mut acc = Scalar::zero();
        for (k, c) in t.terms() {
            let v = (self.f)(k);
            if !v.is_zero() {
                acc += &(c * &v);
            }
        }
        acc
    }

    pub fn eval(&self, args: &[Element]) -> Scalar {
        self.eval_tensor(&Tensor::pure(args))
    }

    /// `x ↦ φ(g(x))` for a linear map `g` on word tuples of length
    /// `degree + 1` of the result.
    pub fn pullback(&self, degree: usize, g: impl Fn(&[Word]) -> Tensor + Send + Sync + 'static) -> Self {
        let inner = self.clone();
        AlgebraCochain::new(degree, move |args| inner.eval_tensor(&g(args)))
    }

    pub fn linear_combination(terms: &[(Scalar, AlgebraCochain)]) -> Self {
        let degree = terms.first().map(|t| t.1.degree).unwrap_or(0);
        let terms = terms.to_vec();
        AlgebraCochain::new(degree, move |args| {
            let mut acc = Scalar::zero();
            for (c, phi) in &terms {
                acc += &(c * &phi.eval_words(args));
            }
            acc
        })
    }

    /// Values on every tuple of the given basis words.
    pub fn tabulate(&self, basis: &[Word]) -> BTreeMap<Vec<Word>, Scalar> {
        let mut out = BTreeMap::new();
        for tuple in word_tuples(basis, self.degree + 1) {
            let v = self.eval_words(&tuple);
            if !v.is_zero() {
                out.insert(tuple, v);
            }
        }
        out
    }
}

/// Cochain with independent random values in `-3..=3` on word tuples,
/// drawn lazily in order of first access.
pub fn random_cochain(degree: usize, seed: u64) -> AlgebraCochain {
    let state = Mutex::new((ChaCha8Rng::seed_from_u64(seed), HashMap::<Vec<Word>, Scalar>::new()));
    AlgebraCochain::new(degree, move |args| {
        let mut guard = state.lock().unwrap();
        let (rng, values) = &mut *guard;
        if let Some(v) = values.get(args) {
            return v.clone();
        }
        let v = Scalar::from_int(rng.gen_range(-3..=3));
        values.insert(args.to_vec(), v.clone());
        v
    })
}

/// All tuples of length `n` drawn from `basis`, in lexicographic order of
/// basis indices.
pub fn word_tuples(basis: &[Word], n: usize) -> Vec<Vec<Word>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(out.len() * basis.len());
        for prefix in &out {
            for w in basis {
                let mut t: Vec<Word> = prefix.clone();
                t.push(w.clone());
                next.push(t);
            }
        }
        out = next;
    }
    out
}

/// Chain-level maps whose pullbacks are the cochain operators of an
/// algebra. Each takes a tuple of words and returns a tensor.
pub mod chain {
    use super::*;

    fn product_tensor(pre: &[Word], prod: Element, post: &[Word]) -> Tensor {
        let mut out = Tensor::zero(pre.len() + 1 + post.len());
        for (w, c) in prod.terms() {
            let mut key = pre.to_vec();
            key.push(w.clone());
            key.extend_from_slice(post);
            out.add_term(key, c);
        }
        out
    }

    /// Pullback of `δ_i`: `(a⁰…aⁿ) ↦ (…, a^i a^{i+1}, …)`, or
    /// `(aⁿa⁰, a¹, …, a^{n-1})` for `i = n`.
    pub fn face(alg: &dyn Algebra, i: usize, args: &[Word]) -> Tensor {
        let n = args.len() - 1;
        if i < n {
            let prod = alg.mul_words(&args[i], &args[i + 1]);
            product_tensor(&args[..i], prod, &args[i + 2..])
        } else {
            let prod = alg.mul_words(&args[n], &args[0]);
            product_tensor(&[], prod, &args[1..n])
        }
    }

    /// Pullback of `σ_j`: insert 1 after position `j`.
    pub fn degeneracy(j: usize, args: &[Word]) -> Tensor {
        let mut key = args[..=j].to_vec();
        key.push(Word::new());
        key.extend_from_slice(&args[j + 1..]);
        Tensor::basis(key)
    }

    /// Pullback of `τ_n`: `(a⁰…aⁿ) ↦ (aⁿ, a⁰, …, a^{n-1})`.
    pub fn cyclic(args: &[Word]) -> Tensor {
        let n = args.len() - 1;
        let mut key = vec![args[n].clone()];
        key.extend_from_slice(&args[..n]);
        Tensor::basis(key)
    }

    /// Apply a word-tuple map linearly to a tensor.
    pub fn apply(t: &Tensor, level: usize, f: impl Fn(&[Word]) -> Tensor) -> Tensor {
        let mut out = Tensor::zero(level);
        for (k, c) in t.terms() {
            out.add_scaled(&f(k), c);
        }
        out
    }

    /// Hochschild boundary, the transpose of the coboundary `b`, from
    /// `n + 2` slots to `n + 1`.
    pub fn b(alg: &dyn Algebra, args: &[Word]) -> Tensor {
        let m = args.len() - 1;
        let mut out = Tensor::zero(m);
        for j in 0..=m {
            let sign = Scalar::from_int(if j % 2 == 0 { 1 } else { -1 });
            out.add_scaled(&face(alg, j, args), &sign);
        }
        out
    }

    /// Transpose of `B = N B₀`, from `n` slots to `n + 1`.
    pub fn big_b(args: &[Word]) -> Tensor {
        let n = args.len();
        let mut rotated = Tensor::zero(n);
        for j in 0..n {
            let mut key = args[j..].to_vec();
            key.extend_from_slice(&args[..j]);
            let sign = if ((n - 1) * j).is_multiple_of(2) { 1 } else { -1 };
            rotated.add_term(key, &Scalar::from_int(sign));
        }
        let mut out = rotated.prepend_element(&Element::one());
        let tail_sign = if n.is_multiple_of(2) { -1 } else { 1 };
        out.add_scaled(&rotated.append_element(&Element::one()), &Scalar::from_int(tail_sign));
        out
    }
}

/// The cochain module `A♮` of an algebra.
pub struct AlgebraCyclicModule {
    alg: Arc<dyn Algebra>,
    monomials: Vec<Word>,
    probes: usize,
}

impl AlgebraCyclicModule {
    /// Sampling uses the full basis of a finite-dimensional algebra, or the
    /// monomials of weight at most `weight` otherwise.
    pub fn new(alg: Arc<dyn Algebra>, weight: u32) -> Self {
        let monomials = alg.finite_basis().unwrap_or_else(|_| alg.monomials_up_to(weight));
        AlgebraCyclicModule { alg, monomials, probes: 4 }
    }

    pub fn algebra(&self) -> &dyn Algebra {
        self.alg.as_ref()
    }

    pub fn monomials(&self) -> &[Word] {
        &self.monomials
    }

    pub fn face(&self, i: usize, phi: &AlgebraCochain) -> AlgebraCochain {
        let alg = self.alg.clone();
        phi.pullback(phi.degree + 1, move |args| chain::face(alg.as_ref(), i, args))
    }

    pub fn degeneracy(&self, j: usize, phi: &AlgebraCochain) -> AlgebraCochain {
        phi.pullback(phi.degree - 1, move |args| chain::degeneracy(j, args))
    }

    pub fn cyclic(&self, phi: &AlgebraCochain) -> AlgebraCochain {
        phi.pullback(phi.degree, chain::cyclic)
    }

    /// Coboundary `b` from degree `n` to `n + 1`.
    pub fn b(&self, phi: &AlgebraCochain) -> AlgebraCochain {
        let alg = self.alg.clone();
        phi.pullback(phi.degree + 1, move |args| chain::b(alg.as_ref(), args))
    }

    /// `B = N B₀` from degree `n` to `n - 1`.
    pub fn big_b(&self, phi: &AlgebraCochain) -> AlgebraCochain {
        phi.pullback(phi.degree - 1, chain::big_b)
    }

    /// `φ(a⁰,…,aⁿ) = (-1)^n φ(a¹,…,aⁿ,a⁰)` on sampled arguments.
    pub fn is_cyclic_on(&self, phi: &AlgebraCochain, args: &[Element]) -> bool {
        let n = phi.degree;
        let mut rotated = args[1..].to_vec();
        rotated.push(args[0].clone());
        let sign = Scalar::from_int(if n.is_multiple_of(2) { 1 } else { -1 });
        phi.eval(args) == &sign * &phi.eval(&rotated)
    }

    /// Random elements with at most two terms each.
    pub fn random_args(&self, n: usize, rng: &mut ChaCha8Rng) -> Vec<Element> {
        (0..n)
            .map(|_| {
                let mut e = Element::zero();
                for _ in 0..rng.gen_range(1..=2) {
                    let w = self.monomials[rng.gen_range(0..self.monomials.len())].clone();
                    e.add_term(w, &small_coeff(rng));
                }
                e
            })
            .collect()
    }
}

impl LambdaModule for AlgebraCyclicModule {
    type Cochain = AlgebraCochain;

    fn label(&self) -> String {
        format!("cochains on {}", self.alg.name())
    }

    fn level(&self, x: &AlgebraCochain) -> usize {
        x.degree
    }

    fn face(&self, i: usize, x: &AlgebraCochain) -> AlgebraCochain {
        AlgebraCyclicModule::face(self, i, x)
    }

    fn degeneracy(&self, i: usize, x: &AlgebraCochain) -> AlgebraCochain {
        AlgebraCyclicModule::degeneracy(self, i, x)
    }

    fn cyclic(&self, x: &AlgebraCochain) -> AlgebraCochain {
        AlgebraCyclicModule::cyclic(self, x)
    }

    fn sample(&self, level: usize, _index: usize, rng: &mut ChaCha8Rng) -> AlgebraCochain {
        random_cochain(level, rng.gen())
    }

    fn differs(&self, a: &AlgebraCochain, b: &AlgebraCochain, rng: &mut ChaCha8Rng) -> bool {
        let n = a.degree + 1;
        let on_words = (0..self.probes).any(|_| {
            let args: Vec<Word> =
                (0..n).map(|_| self.monomials[rng.gen_range(0..self.monomials.len())].clone()).collect();
            a.eval_words(&args) != b.eval_words(&args)
        });
        on_words || {
            let args = self.random_args(n, rng);
            a.eval(&args) != b.eval(&args)
        }
    }

    fn describe(&self, x: &AlgebraCochain) -> String {
        let table = x.tabulate(&self.monomials);
        let shown: Vec<String> = table
            .iter()
            .take(6)
            .map(|(k, v)| {
                let args: Vec<String> = k.iter().map(|w| self.alg.format_word(w)).collect();
                format!("φ({}) = {}", args.join(", "), v)
            })
            .collect();
        let more = if table.len() > 6 { format!(" … ({} nonzero values)", table.len()) } else { String::new() };
        format!("cochain of degree {} with {}{}", x.degree, shown.join("; "), more)
    }
}

type Op<'a, M> = Box<dyn Fn(&M, &<M as LambdaModule>::Cochain) -> <M as LambdaModule>::Cochain + 'a>;

struct RelationInstance<'a, M: LambdaModule> {
    family: &'static str,
    identity: &'static str,
    n: usize,
    index: Option<String>,
    source: usize,
    lhs: Op<'a, M>,
    rhs: Op<'a, M>,
}

fn compose<M: LambdaModule>(ops: Vec<(char, usize)>) -> impl Fn(&M, &M::Cochain) -> M::Cochain {
    // applied right to left, as written
    move |m: &M, x: &M::Cochain| {
        let mut cur = x.clone();
        for (kind, i) in ops.iter().rev() {
            cur = match kind {
                'd' => m.face(*i, &cur),
                's' => m.degeneracy(*i, &cur),
                _ => m.cyclic(&cur),
            };
        }
        cur
    }
}

fn relation_instances<'a, M: LambdaModule + 'a>(n_max: usize) -> Vec<RelationInstance<'a, M>> {
    let mut out: Vec<RelationInstance<'a, M>> = Vec::new();
    let mut push = |family, identity, n, index: Option<String>, source, l: Vec<(char, usize)>, r: Vec<(char, usize)>| {
        out.push(RelationInstance {
            family,
            identity,
            n,
            index,
            source,
            lhs: Box::new(compose::<M>(l)),
            rhs: Box::new(compose::<M>(r)),
        })
    };
    let t = ('t', 0);
    for n in 0..=n_max {
        if n >= 2 {
            for j in 0..=n {
                for i in 0..j {
                    push("face-face", "δ_j δ_i = δ_i δ_{j-1} (i < j)", n, Some(format!("i={i}, j={j}")), n - 2,
                        vec![('d', j), ('d', i)], vec![('d', i), ('d', j - 1)]);
                }
            }
        }
        for j in 0..=n {
            for i in 0..=j {
                push("degeneracy-degeneracy", "σ_j σ_i = σ_i σ_{j+1} (i ≤ j)", n, Some(format!("i={i}, j={j}")), n + 2,
                    vec![('s', j), ('s', i)], vec![('s', i), ('s', j + 1)]);
            }
        }
        for j in 0..=n {
            for i in 0..=n + 1 {
                let rhs = if i < j {
                    vec![('d', i), ('s', j - 1)]
                } else if i == j || i == j + 1 {
                    vec![]
                } else {
                    vec![('d', i - 1), ('s', j)]
                };
                push("degeneracy-face", "σ_j δ_i = δ_i σ_{j-1}, 1, δ_{i-1} σ_j", n, Some(format!("i={i}, j={j}")), n,
                    vec![('s', j), ('d', i)], rhs);
            }
        }
        if n >= 1 {
            for i in 1..=n {
                push("cyclic-face", "τ_n δ_i = δ_{i-1} τ_{n-1}", n, Some(format!("i={i}")), n - 1,
                    vec![t, ('d', i)], vec![('d', i - 1), t]);
            }
            for i in 1..=n {
                push("cyclic-degeneracy", "τ_n σ_i = σ_{i-1} τ_{n+1}", n, Some(format!("i={i}")), n + 1,
                    vec![t, ('s', i)], vec![('s', i - 1), t]);
            }
            push("cyclic order", "τ_n^{n+1} = 1_n", n, None, n, vec![t; n + 1], vec![]);
            push("cyclic-first-face", "τ_n δ_0 = δ_n", n, None, n - 1, vec![t, ('d', 0)], vec![('d', n)]);
        }
        push("cyclic-first-degeneracy", "τ_n σ_0 = σ_n τ_{n+1}^2", n, None, n + 1,
            vec![t, ('s', 0)], vec![('s', n), t, t]);
    }
    out
}

/// Check every relation of the cyclic category with subscript `n ≤ n_max`
/// on `samples` chains each. One report record per relation family and
/// level; the witness is the first chain on which the two sides differ.
pub fn verify_lambda_relations<M: LambdaModule>(m: &M, n_max: usize, samples: usize, seed: u64) -> Report {
    let mut report = Report::new();
    let instances = relation_instances::<M>(n_max);
    let mut groups: Vec<(String, &'static str, Option<String>)> = Vec::new();
    let mut index_of: HashMap<String, usize> = HashMap::new();
    for (idx, inst) in instances.iter().enumerate() {
        let name = format!("{} n={}", inst.family, inst.n);
        let g = *index_of.entry(name.clone()).or_insert_with(|| {
            groups.push((name.clone(), inst.identity, None));
            groups.len() - 1
        });
        if groups[g].2.is_some() {
            continue;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((idx as u64) << 20));
        for k in 0..samples {
            let x = m.sample(inst.source, k, &mut rng);
            let (l, r) = ((inst.lhs)(m, &x), (inst.rhs)(m, &x));
            if m.differs(&l, &r, &mut rng) {
                let shown = m.describe(&x);
                groups[g].2 = Some(match &inst.index {
                    Some(ix) => format!("{ix}: {shown}"),
                    None => shown,
                });
                break;
            }
        }
    }
    for (name, identity, witness) in groups {
        report.check(name, identity, witness);
    }
    report
}
