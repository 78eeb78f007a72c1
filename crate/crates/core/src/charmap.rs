//! Hopf actions on algebras, invariant traces, the characteristic map to
//! algebra cochains, cyclic cocycles from group cocycles, Chern characters
//! of idempotents and their pairing with cyclic cocycles.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Algebra, AlgebraExt, Element, Gen, Tensor, Word};
use crate::catalog::{CatalogEntry, Functional};
use crate::cyclic::{chain, random_element, AlgebraCochain, AlgebraCyclicModule, HopfCyclicModule, LambdaModule};
use crate::error::{Error, Result};
use crate::hopf::{Hopf, HopfExt, ModularPair};
use crate::report::Report;
use crate::scalar::Scalar;

/// Action of a Hopf algebra on an algebra, given on generators and
/// extended by `(gh)(a) = g(h(a))` and `g(ab) = Σ g₍₁₎(a) g₍₂₎(b)`.
pub struct HopfAction {
    hopf: Arc<dyn Hopf>,
    alg: Arc<dyn Algebra>,
    /// `table[h][a]`: Hopf generator `h` applied to algebra generator `a`.
    table: Vec<Vec<Element>>,
    memo: Mutex<HashMap<(Word, Word), Element>>,
}

impl fmt::Debug for HopfAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HopfAction({} on {})", self.hopf.name(), self.alg.name())
    }
}

impl HopfAction {
    pub fn new(hopf: Arc<dyn Hopf>, alg: Arc<dyn Algebra>, table: Vec<Vec<Element>>) -> Result<Self> {
        let ngen = alg.generators_up_to(u32::MAX).len();
        for (h, row) in table.iter().enumerate() {
            if row.len() != ngen {
                return Err(Error::Dimension(format!(
                    "action row for {} has {} entries, {} has {ngen} generators",
                    hopf.gen_name(h as Gen),
                    row.len(),
                    alg.name()
                )));
            }
        }
        let table = table.iter().map(|row| row.iter().map(|e| alg.normalize(e)).collect()).collect();
        Ok(HopfAction { hopf, alg, table, memo: Mutex::new(HashMap::new()) })
    }

    /// The action shipped with the algebra entry `target` for the Hopf
    /// entry `acting`.
    pub fn from_catalog(acting: &CatalogEntry, target: &CatalogEntry) -> Result<Self> {
        let table = target
            .action
            .as_ref()
            .filter(|t| t.hopf == acting.name)
            .ok_or_else(|| Error::Unsupported(format!("no action of {} on {}", acting.name, target.name)))?;
        let hopf = acting
            .hopf_arc()
            .ok_or_else(|| Error::Unsupported(format!("{} is not a Hopf algebra", acting.name)))?;
        HopfAction::new(hopf, target.algebra_arc(), table.table.clone())
    }

    pub fn hopf(&self) -> &dyn Hopf {
        self.hopf.as_ref()
    }

    pub fn algebra(&self) -> &dyn Algebra {
        self.alg.as_ref()
    }

    pub fn algebra_arc(&self) -> Arc<dyn Algebra> {
        self.alg.clone()
    }

    fn table_entry(&self, h: Gen, a: Gen) -> Element {
        self.table
            .get(h as usize)
            .and_then(|row| row.get(a as usize))
            .cloned()
            .unwrap_or_else(|| panic!("no action of {} in the table", self.hopf.gen_name(h)))
    }

    /// The Hopf word `h` applied to the normal-form algebra word `a`.
    pub fn act_word(&self, h: &[Gen], a: &[Gen]) -> Element {
        if h.is_empty() {
            return Element::monomial(a.to_vec());
        }
        let key = (h.to_vec(), a.to_vec());
        if let Some(e) = self.memo.lock().unwrap().get(&key) {
            return e.clone();
        }
        let out = if h.len() > 1 {
            let inner = self.act_word(&h[1..], a);
            self.act(&Element::monomial(h[..1].to_vec()), &inner)
        } else if a.is_empty() {
            Element::scalar(self.hopf.counit_word(h))
        } else if a.len() == 1 {
            self.table_entry(h[0], a[0])
        } else {
            let mut acc = Element::zero();
            for (k, c) in self.hopf.coproduct_word(h).terms() {
                let left = self.act_word(&k[0], &a[..1]);
                if left.is_zero() {
                    continue;
                }
                let right = self.act_word(&k[1], &a[1..]);
                acc.add_scaled(&self.alg.mul(&left, &right), c);
            }
            acc
        };
        self.memo.lock().unwrap().insert(key, out.clone());
        out
    }

    pub fn act(&self, h: &Element, a: &Element) -> Element {
        let mut out = Element::zero();
        for (hw, hc) in h.terms() {
            for (aw, ac) in a.terms() {
                out.add_scaled(&self.act_word(hw, aw), &(hc * ac));
            }
        }
        out
    }

    /// Check `g(h(a)) = (gh)(a)` and `h(ab) = Σ h₍₁₎(a) h₍₂₎(b)` on sampled
    /// Hopf monomials of weight at most `weight` and sampled elements.
    pub fn verify(&self, weight: u32, samples: usize, seed: u64) -> Report {
        let mut report = Report::new();
        let hm = self.hopf.monomials_up_to(weight);
        let am = algebra_sample_words(self.alg.as_ref());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut witness = None;
        for _ in 0..samples {
            let g = random_element(&hm, &mut rng);
            let h = random_element(&hm, &mut rng);
            let a = random_element(&am, &mut rng);
            let lhs = self.act(&g, &self.act(&h, &a));
            let rhs = self.act(&self.hopf.mul(&g, &h), &a);
            if lhs != rhs {
                witness = Some(self.describe_inputs(&[&g, &h], &[&a]));
                break;
            }
        }
        report.check("action property", "g(h(a)) = (gh)(a)", witness);
        let mut witness = None;
        for _ in 0..samples {
            let h = random_element(&hm, &mut rng);
            let a = random_element(&am, &mut rng);
            let b = random_element(&am, &mut rng);
            let lhs = self.act(&h, &self.alg.mul(&a, &b));
            let mut rhs = Element::zero();
            for (k, c) in self.hopf.coproduct(&h).terms() {
                let left = self.act(&Element::monomial(k[0].clone()), &a);
                let right = self.act(&Element::monomial(k[1].clone()), &b);
                rhs.add_scaled(&self.alg.mul(&left, &right), c);
            }
            if lhs != rhs {
                witness = Some(self.describe_inputs(&[&h], &[&a, &b]));
                break;
            }
        }
        report.check("Hopf-Leibniz", "h(ab) = h(1)(a) h(2)(b)", witness);
        report
    }

    fn describe_inputs(&self, hs: &[&Element], xs: &[&Element]) -> String {
        let h: Vec<String> = hs.iter().map(|e| self.hopf.format_element(e)).collect();
        let a: Vec<String> = xs.iter().map(|e| self.alg.format_element(e)).collect();
        format!("h = ({}), a = ({})", h.join(", "), a.join(", "))
    }
}

/// Basis words of a finite algebra, or its monomials of weight at most 2.
fn algebra_sample_words(alg: &dyn Algebra) -> Vec<Word> {
    alg.finite_basis().unwrap_or_else(|_| alg.monomials_up_to(2))
}

/// An algebra with a linear functional given on basis words.
#[derive(Clone)]
pub struct TracedAlgebra {
    alg: Arc<dyn Algebra>,
    trace: Functional,
}

impl fmt::Debug for TracedAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TracedAlgebra({})", self.alg.name())
    }
}

impl TracedAlgebra {
    pub fn new(alg: Arc<dyn Algebra>, trace: Functional) -> Self {
        TracedAlgebra { alg, trace }
    }

    pub fn algebra(&self) -> &dyn Algebra {
        self.alg.as_ref()
    }

    pub fn functional(&self) -> &Functional {
        &self.trace
    }

    pub fn trace(&self, a: &Element) -> Scalar {
        self.trace.eval(a)
    }

    /// `τ(ab) = τ(b σ(a))`, with `σ` acting through `action`.
    pub fn check_sigma_trace(&self, action: &HopfAction, sigma: &Element, samples: usize, seed: u64) -> Option<String> {
        let words = algebra_sample_words(self.algebra());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let a = random_element(&words, &mut rng);
            let b = random_element(&words, &mut rng);
            let lhs = self.trace(&self.alg.mul(&a, &b));
            let rhs = self.trace(&self.alg.mul(&b, &action.act(sigma, &a)));
            if lhs != rhs {
                return Some(format!("a = {}, b = {}", self.alg.format_element(&a), self.alg.format_element(&b)));
            }
        }
        None
    }

    /// `τ(h(a)) = δ(h) τ(a)` for Hopf monomials of weight at most `weight`
    /// against every sample word of the algebra.
    pub fn check_delta_invariance(&self, action: &HopfAction, pair: &ModularPair, weight: u32) -> Option<String> {
        let h = action.hopf();
        for hw in h.monomials_up_to(weight) {
            let d = pair.delta.eval_word(h, &hw);
            for aw in algebra_sample_words(self.algebra()) {
                let lhs = self.trace(&action.act_word(&hw, &aw));
                let rhs = &d * &self.trace.eval(&Element::monomial(aw.clone()));
                if lhs != rhs {
                    return Some(format!("h = {}, a = {}", h.format_word(&hw), self.alg.format_word(&aw)));
                }
            }
        }
        None
    }
}

/// `γ(h¹⊗…⊗hⁿ)(a⁰,…,aⁿ) = τ(a⁰ h¹(a¹) ⋯ hⁿ(aⁿ))`.
#[derive(Clone, Debug)]
pub struct CharacteristicMap {
    action: Arc<HopfAction>,
    traced: Arc<TracedAlgebra>,
    pair: ModularPair,
}

impl CharacteristicMap {
    pub fn new(action: Arc<HopfAction>, traced: Arc<TracedAlgebra>, pair: ModularPair) -> Self {
        CharacteristicMap { action, traced, pair }
    }

    pub fn action(&self) -> &HopfAction {
        &self.action
    }

    pub fn traced(&self) -> &TracedAlgebra {
        &self.traced
    }

    /// Action, σ-trace and δ-invariance checks that the map relies on.
    pub fn prechecks(&self, samples: usize, seed: u64) -> Report {
        let mut report = self.action.verify(2, samples, seed);
        report.check(
            "sigma-trace",
            "tau(ab) = tau(b sigma(a))",
            self.traced.check_sigma_trace(&self.action, &self.pair.sigma.element, samples, seed),
        );
        report.check(
            "delta-invariance",
            "tau(h(a)) = delta(h) tau(a)",
            self.traced.check_delta_invariance(&self.action, &self.pair, 2),
        );
        report
    }

    pub fn gamma(&self, c: &Tensor) -> AlgebraCochain {
        let n = c.level();
        let action = self.action.clone();
        let traced = self.traced.clone();
        let c = c.clone();
        AlgebraCochain::new(n, move |args| {
            let alg = traced.algebra();
            let mut acc = Scalar::zero();
            for (k, coeff) in c.terms() {
                let mut prod = Element::monomial(args[0].clone());
                for (h, a) in k.iter().zip(&args[1..]) {
                    prod = alg.mul(&prod, &action.act_word(h, a));
                    if prod.is_zero() {
                        break;
                    }
                }
                acc += &(coeff * &traced.trace(&prod));
            }
            acc
        })
    }

    /// Check `γ ∘ op = op ∘ γ` for every face, degeneracy and cyclic operator
    /// with source and target levels at most `n_max`, on sampled chains.
    /// Cochains on a finite algebra are compared on every basis tuple.
    pub fn verify(&self, n_max: usize, samples: usize, seed: u64) -> Report {
        let mut report = self.prechecks(samples, seed);
        let ready = report.passed();
        let hm = HopfCyclicModule::new(self.action.hopf.clone(), self.pair.clone());
        let am = AlgebraCyclicModule::new(self.action.alg.clone(), 2);
        let mut idx = 0u64;
        let mut run = |report: &mut Report, name: String, identity: &str, level: usize, hop: &dyn Fn(&Tensor) -> Tensor, aop: &dyn Fn(&AlgebraCochain) -> AlgebraCochain| {
            if !ready {
                report.skip(name, identity, "prechecks failed");
                return;
            }
            idx += 1;
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (idx << 20));
            let mut witness = None;
            for s in 0..samples {
                let c = hm.sample(level, s, &mut rng);
                let lhs = self.gamma(&hop(&c));
                let rhs = aop(&self.gamma(&c));
                if let Some(args) = first_difference(&am, &lhs, &rhs, &mut rng) {
                    witness = Some(format!("{} at ({})", hm.describe(&c), args));
                    break;
                }
            }
            report.check(name, identity, witness);
        };
        for n in 1..=n_max {
            for i in 0..=n {
                run(
                    &mut report,
                    format!("gamma face i={i} n={n}"),
                    "gamma(delta_i c) = delta_i gamma(c)",
                    n - 1,
                    &|c| hm.face(i, c).expect("face index"),
                    &|phi| am.face(i, phi),
                );
            }
        }
        for n in 0..n_max {
            for i in 0..=n {
                run(
                    &mut report,
                    format!("gamma degeneracy i={i} n={n}"),
                    "gamma(sigma_i c) = sigma_i gamma(c)",
                    n + 1,
                    &|c| hm.degeneracy(i, c).expect("degeneracy index"),
                    &|phi| am.degeneracy(i, phi),
                );
            }
        }
        for n in 0..=n_max {
            run(
                &mut report,
                format!("gamma cyclic n={n}"),
                "gamma(tau_n c) = tau_n gamma(c)",
                n,
                &|c| hm.cyclic(c),
                &|phi| am.cyclic(phi),
            );
        }
        report
    }

    /// `γ_*(ch_{2k}(e))(h¹,…,h^{2k})` two ways: directly as
    /// `c_k (τ(e h¹(e)⋯h^{2k}(e)) − ½ τ(h¹(e)⋯h^{2k}(e)))`, and by
    /// evaluating `γ(h¹⊗…⊗h^{2k})` on the chain `ch_{2k}(e)`.
    pub fn gamma_chern(&self, e: &Element, hs: &[Element]) -> Result<(Scalar, Scalar)> {
        let alg = self.traced.algebra();
        if hs.len() % 2 == 1 {
            return Err(Error::Invalid(format!("{} Hopf elements, expected an even number", hs.len())));
        }
        let k = hs.len() / 2;
        let mut tail = Element::one();
        for h in hs {
            tail = alg.mul(&tail, &self.action.act(h, e));
        }
        let half = Scalar::from_frac(1, 2);
        let direct = if k == 0 {
            self.traced.trace(e)
        } else {
            &chern_constant(k) * &(&self.traced.trace(&alg.mul(e, &tail)) - &(&half * &self.traced.trace(&tail)))
        };
        let ch = chern_character(alg, e, 2 * k)?;
        let composed = self.gamma(&Tensor::pure(hs)).eval_tensor(&ch[k]);
        Ok((direct, composed))
    }
}

/// Arguments on which two cochains differ: every basis tuple of a finite
/// algebra, otherwise random probes.
fn first_difference(
    am: &AlgebraCyclicModule,
    a: &AlgebraCochain,
    b: &AlgebraCochain,
    rng: &mut ChaCha8Rng,
) -> Option<String> {
    let alg = am.algebra();
    if let Ok(basis) = alg.finite_basis() {
        for args in crate::cyclic::word_tuples(&basis, a.degree() + 1) {
            if a.eval_words(&args) != b.eval_words(&args) {
                return Some(args.iter().map(|w| alg.format_word(w)).collect::<Vec<_>>().join(", "));
            }
        }
        None
    } else {
        am.differs(a, b, rng).then(|| "random probe".to_string())
    }
}

/// The constant `c_k = (-1)^k (2k)!/k!` in `ch_{2k}`. It is also the ratio
/// between the pairing through Chern characters and the direct trace
/// formula, for normalized cyclic cocycles.
pub fn chern_constant(k: usize) -> Scalar {
    let mut c: i64 = 1;
    for j in (k + 1)..=(2 * k) {
        c *= j as i64;
    }
    Scalar::from_int(if k.is_multiple_of(2) { c } else { -c })
}

/// Components `ch_0, ch_2, …, ch_{2K}` with `2K ≤ max_degree`, where
/// `ch_{2k}(e) = c_k (e^{⊗2k+1} − ½·1⊗e^{⊗2k})` and `ch_0(e) = e`.
pub fn chern_character(alg: &dyn Algebra, e: &Element, max_degree: usize) -> Result<Vec<Tensor>> {
    let e = alg.normalize(e);
    if alg.mul(&e, &e) != e {
        return Err(Error::Rejected { what: "not an idempotent".into(), witness: alg.format_element(&e) });
    }
    let half = Scalar::from_frac(1, 2);
    let mut out = vec![Tensor::from_element(&e)];
    for k in 1..=max_degree / 2 {
        let powers = Tensor::pure(&vec![e.clone(); 2 * k]);
        let full = powers.prepend_element(&e);
        let unit = powers.prepend_element(&Element::one());
        out.push(full.sub(&unit.scale(&half)).scale(&chern_constant(k)));
    }
    Ok(out)
}

/// Drop tuples with the unit in a slot after the first.
pub fn normalize_chain(t: &Tensor) -> Tensor {
    let mut out = Tensor::zero(t.level());
    for (k, c) in t.terms() {
        if k[1..].iter().all(|w| !w.is_empty()) {
            out.add_term(k.clone(), c);
        }
    }
    out
}

/// Chain-level `b` (from `n + 2` slots to `n + 1`) and `B` (from `n` slots
/// to `n + 1`).
fn chain_b(alg: &dyn Algebra, t: &Tensor) -> Tensor {
    chain::apply(t, t.level() - 1, |args| chain::b(alg, args))
}

fn chain_big_b(t: &Tensor) -> Tensor {
    chain::apply(t, t.level() + 1, chain::big_b)
}

/// `b ch_{2k} + B ch_{2k-2}` in normalized chains for each `k ≥ 1`, and
/// `b ch_0 = 0` trivially; `None` when every component vanishes.
pub fn check_chern_cycle(alg: &dyn Algebra, ch: &[Tensor]) -> Option<String> {
    for k in 1..ch.len() {
        let defect = normalize_chain(&chain_b(alg, &ch[k]).add(&chain_big_b(&ch[k - 1])));
        if !defect.is_zero() {
            return Some(format!("degree {}: {}", 2 * k - 1, alg.format_tensor(&defect)));
        }
    }
    None
}

/// Square matrix with entries in an algebra, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraMatrix {
    size: usize,
    entries: Vec<Element>,
}

impl AlgebraMatrix {
    pub fn new(size: usize, entries: Vec<Element>) -> Result<Self> {
        if entries.len() != size * size {
            return Err(Error::Dimension(format!("{} entries for a {size}x{size} matrix", entries.len())));
        }
        Ok(AlgebraMatrix { size, entries })
    }

    /// The `1x1` matrix `(a)`.
    pub fn scalar_entry(a: Element) -> Self {
        AlgebraMatrix { size: 1, entries: vec![a] }
    }

    pub fn identity(size: usize) -> Self {
        let entries = (0..size * size)
            .map(|i| if i / size == i % size { Element::one() } else { Element::zero() })
            .collect();
        AlgebraMatrix { size, entries }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &Element {
        &self.entries[i * self.size + j]
    }

    pub fn mul(&self, alg: &dyn Algebra, rhs: &AlgebraMatrix) -> AlgebraMatrix {
        let n = self.size;
        let entries = (0..n * n)
            .map(|idx| {
                let (i, j) = (idx / n, idx % n);
                let mut acc = Element::zero();
                for l in 0..n {
                    acc = acc.add(&alg.mul(self.get(i, l), rhs.get(l, j)));
                }
                acc
            })
            .collect();
        AlgebraMatrix { size: n, entries }
    }

    pub fn is_idempotent(&self, alg: &dyn Algebra) -> bool {
        &self.mul(alg, self) == self
    }

    /// The first nonzero entry of `E² - E`, as `(row, column, entry)`.
    pub fn idempotency_defect(&self, alg: &dyn Algebra) -> Option<(usize, usize, Element)> {
        let sq = self.mul(alg, self);
        let n = self.size;
        (0..n * n).find_map(|idx| {
            let d = sq.entries[idx].sub(&self.entries[idx]);
            (!d.is_zero()).then_some((idx / n, idx % n, d))
        })
    }

    /// `diag(a, 0, …, 0)` of the given size.
    pub fn corner(a: Element, size: usize) -> Self {
        let mut m = AlgebraMatrix { size, entries: vec![Element::zero(); size * size] };
        m.entries[0] = a;
        m
    }
}

/// `(φ ⊗ Tr)(M⁰, …, Mⁿ) = Σ φ(M⁰_{i₀i₁}, M¹_{i₁i₂}, …, Mⁿ_{iₙi₀})`.
pub fn trace_extension(phi: &AlgebraCochain, ms: &[&AlgebraMatrix]) -> Scalar {
    let n = ms[0].size();
    let len = ms.len();
    let mut idx = vec![0usize; len];
    let mut acc = Scalar::zero();
    loop {
        let args: Vec<Element> = (0..len).map(|s| ms[s].get(idx[s], idx[(s + 1) % len]).clone()).collect();
        if args.iter().all(|a| !a.is_zero()) {
            acc += &phi.eval(&args);
        }
        let mut p = 0;
        loop {
            if p == len {
                return acc;
            }
            idx[p] += 1;
            if idx[p] < n {
                break;
            }
            idx[p] = 0;
            p += 1;
        }
    }
}

/// The pairing of an even cyclic cocycle with an idempotent matrix, by two
/// routes: `direct = (φ⊗Tr)(E, …, E)` and `through_chern = ⟨φ⊗Tr, ch(E)⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pairing {
    pub direct: Scalar,
    pub through_chern: Scalar,
    /// `through_chern = constant · direct` is the coherence identity.
    pub constant: Scalar,
}

impl Pairing {
    pub fn coherent(&self) -> bool {
        self.through_chern == &self.constant * &self.direct
    }
}

/// Pair `φ` (degree `2k`) with `E`. `φ` must vanish when an argument after
/// the first is 1 and satisfy the cyclic symmetry; both are checked on basis
/// tuples for finite algebras and on `samples` random tuples otherwise.
pub fn pairing(alg: &dyn Algebra, phi: &AlgebraCochain, e: &AlgebraMatrix, samples: usize, seed: u64) -> Result<Pairing> {
    let n = phi.degree();
    if n % 2 == 1 {
        return Err(Error::Rejected { what: "odd cocycle degree".into(), witness: n.to_string() });
    }
    if let Some((i, j, d)) = e.idempotency_defect(alg) {
        let at = if e.size() == 1 { String::new() } else { format!(" at ({i}, {j})") };
        return Err(Error::Rejected {
            what: "not an idempotent".into(),
            witness: format!("E^2 - E{at} = {}", alg.format_element(&d)),
        });
    }
    check_normalized_cyclic(alg, phi, samples, seed)?;
    let k = n / 2;
    let copies: Vec<&AlgebraMatrix> = vec![e; n + 1];
    let direct = trace_extension(phi, &copies);
    let one = AlgebraMatrix::identity(e.size());
    let mut with_unit = vec![&one];
    with_unit.extend(vec![e; n]);
    let half = Scalar::from_frac(1, 2);
    let c = chern_constant(k);
    let through_chern = if k == 0 {
        direct.clone()
    } else {
        &c * &(&direct - &(&half * &trace_extension(phi, &with_unit)))
    };
    Ok(Pairing { direct, through_chern, constant: c })
}

fn check_normalized_cyclic(alg: &dyn Algebra, phi: &AlgebraCochain, samples: usize, seed: u64) -> Result<()> {
    let n = phi.degree();
    let sign = if n.is_multiple_of(2) { Scalar::one() } else { -Scalar::one() };
    let tuples: Vec<Vec<Word>> = match alg.finite_basis() {
        Ok(basis) => crate::cyclic::word_tuples(&basis, n + 1),
        Err(_) => {
            let words = alg.monomials_up_to(2);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..samples).map(|_| (0..=n).map(|_| words[rng.gen_range(0..words.len())].clone()).collect()).collect()
        }
    };
    let show = |t: &[Word]| t.iter().map(|w| alg.format_word(w)).collect::<Vec<_>>().join(", ");
    for t in &tuples {
        let mut rotated = t[1..].to_vec();
        rotated.push(t[0].clone());
        if phi.eval_words(&rotated) != &sign * &phi.eval_words(t) {
            return Err(Error::Rejected { what: "cochain is not cyclic".into(), witness: show(t) });
        }
        if t[1..].iter().any(|w| w.is_empty()) && !phi.eval_words(t).is_zero() {
            return Err(Error::Rejected { what: "cochain is not normalized".into(), witness: show(t) });
        }
    }
    Ok(())
}

/// Group elements behind the basis words of a group algebra.
pub trait GroupBasis: Send + Sync {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;
    fn element(&self, w: &[Gen]) -> Self::Elem;
    fn word(&self, g: &Self::Elem) -> Word;
    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn random(&self, rng: &mut ChaCha8Rng) -> Self::Elem;
}

/// `Z^d` with basis words `U^a V^b …` over generators `U, Ui, V, Vi, …`.
#[derive(Clone, Debug)]
pub struct Lattice {
    pub rank: usize,
}

impl GroupBasis for Lattice {
    type Elem = Vec<i64>;

    fn element(&self, w: &[Gen]) -> Vec<i64> {
        let mut v = vec![0; self.rank];
        for g in w {
            v[(*g / 2) as usize] += if g % 2 == 0 { 1 } else { -1 };
        }
        v
    }

    fn word(&self, g: &Vec<i64>) -> Word {
        let mut w = Word::new();
        for (i, &a) in g.iter().enumerate() {
            let gen = (2 * i + usize::from(a < 0)) as Gen;
            w.extend(std::iter::repeat_n(gen, a.unsigned_abs() as usize));
        }
        w
    }

    fn identity(&self) -> Vec<i64> {
        vec![0; self.rank]
    }

    fn mul(&self, a: &Vec<i64>, b: &Vec<i64>) -> Vec<i64> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    fn random(&self, rng: &mut ChaCha8Rng) -> Vec<i64> {
        (0..self.rank).map(|_| rng.gen_range(-2..=2)).collect()
    }
}

/// A finite group given by its multiplication table, identity at index 0;
/// element `i > 0` is the word `[i - 1]`.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    pub table: Vec<Vec<usize>>,
}

impl GroupBasis for FiniteGroup {
    type Elem = usize;

    fn element(&self, w: &[Gen]) -> usize {
        w.iter().fold(0, |acc, g| self.table[acc][*g as usize + 1])
    }

    fn word(&self, g: &usize) -> Word {
        if *g == 0 {
            Word::new()
        } else {
            vec![(*g - 1) as Gen]
        }
    }

    fn identity(&self) -> usize {
        0
    }

    fn mul(&self, a: &usize, b: &usize) -> usize {
        self.table[*a][*b]
    }

    fn random(&self, rng: &mut ChaCha8Rng) -> usize {
        rng.gen_range(0..self.table.len())
    }
}

/// A group `n`-cocycle with trivial coefficients.
pub type GroupCocycle<E> = Arc<dyn Fn(&[E]) -> Scalar + Send + Sync>;

/// `φ_c(g₀, …, gₙ) = c(g₁, …, gₙ)` when `g₀⋯gₙ = 1`, else 0, extended
/// linearly. `c` must be normalized and satisfy the cocycle identity; both
/// are checked on `samples` seeded tuples.
pub fn group_cocycle_to_cyclic<G: GroupBasis + 'static>(
    group: Arc<G>,
    n: usize,
    c: GroupCocycle<G::Elem>,
    samples: usize,
    seed: u64,
) -> Result<AlgebraCochain> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let gs: Vec<G::Elem> = (0..=n).map(|_| group.random(&mut rng)).collect();
        // Σ (-1)^i c(d_i(g₁…g_{n+1})) = 0
        let mut acc = c(&gs[1..]);
        for i in 0..n {
            let mut merged = gs[..i].to_vec();
            merged.push(group.mul(&gs[i], &gs[i + 1]));
            merged.extend_from_slice(&gs[i + 2..]);
            let term = c(&merged);
            acc = if i % 2 == 0 { &acc - &term } else { &acc + &term };
        }
        let last = c(&gs[..n]);
        acc = if n.is_multiple_of(2) { &acc - &last } else { &acc + &last };
        if !acc.is_zero() {
            return Err(Error::Rejected { what: "not a group cocycle".into(), witness: format!("{gs:?}") });
        }
        if n > 0 {
            let mut with_unit = gs[..n].to_vec();
            with_unit[rng.gen_range(0..n)] = group.identity();
            if !c(&with_unit).is_zero() {
                return Err(Error::Rejected { what: "cocycle is not normalized".into(), witness: format!("{with_unit:?}") });
            }
        }
    }
    Ok(AlgebraCochain::new(n, move |args| {
        let gs: Vec<G::Elem> = args.iter().map(|w| group.element(w)).collect();
        let prod = gs.iter().skip(1).fold(gs[0].clone(), |acc, g| group.mul(&acc, g));
        if prod == group.identity() {
            c(&gs[1..])
        } else {
            Scalar::zero()
        }
    }))
}
