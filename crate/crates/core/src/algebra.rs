//! Presented algebras: generator words, rewriting to normal form, and the
//! element/tensor containers shared by every other module.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Mutex;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Generator index within a presentation.
pub type Gen = u32;
/// A word in the generators; the empty word is the unit.
pub type Word = Vec<Gen>;

/// Finite linear combination of normal-form monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Element {
    terms: BTreeMap<Word, Scalar>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn one() -> Self {
        Element::monomial(Word::new())
    }

    pub fn monomial(w: Word) -> Self {
        Element::term(w, Scalar::one())
    }

    pub fn term(w: Word, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        Element { terms }
    }

    pub fn scalar(c: Scalar) -> Self {
        Element::term(Word::new(), c)
    }

    pub fn from_terms(iter: impl IntoIterator<Item = (Word, Scalar)>) -> Self {
        let mut e = Element::zero();
        for (w, c) in iter {
            e.add_term(w, &c);
        }
        e
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &[Gen]) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, w: Word, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Element, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (w, x) in &other.terms {
            self.add_term(w.clone(), &(x * c));
        }
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        let mut out = Element::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::one());
        out
    }

    pub fn sub(&self, other: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::from_int(-1));
        out
    }

    pub fn neg(&self) -> Element {
        self.scale(&Scalar::from_int(-1))
    }
}

/// Degree-`n` element of `H ⊗ … ⊗ H`; level 0 holds a bare scalar under
/// the empty key.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor {
    level: usize,
    terms: BTreeMap<Vec<Word>, Scalar>,
}

impl Tensor {
    pub fn zero(level: usize) -> Self {
        Tensor { level, terms: BTreeMap::new() }
    }

    pub fn scalar(c: Scalar) -> Self {
        let mut t = Tensor::zero(0);
        t.add_term(Vec::new(), &c);
        t
    }

    pub fn basis(key: Vec<Word>) -> Self {
        let mut t = Tensor::zero(key.len());
        t.add_term(key, &Scalar::one());
        t
    }

    pub fn pure(factors: &[Element]) -> Self {
        let mut t = Tensor::scalar(Scalar::one());
        for f in factors {
            t = t.append_element(f);
        }
        t
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Word>, &Scalar)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Vec<Word>, Scalar)> {
        self.terms.into_iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &[Word]) -> Scalar {
        self.terms.get(key).cloned().unwrap_or_default()
    }

    /// Value of a level-0 tensor.
    pub fn as_scalar(&self) -> Scalar {
        debug_assert_eq!(self.level, 0);
        self.coeff(&[])
    }

    pub fn add_term(&mut self, key: Vec<Word>, c: &Scalar) {
        debug_assert_eq!(key.len(), self.level);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Tensor, c: &Scalar) {
        assert_eq!(self.level, other.level, "tensor level mismatch");
        if c.is_zero() {
            return;
        }
        for (k, x) in &other.terms {
            self.add_term(k.clone(), &(x * c));
        }
    }

    pub fn add(&self, other: &Tensor) -> Tensor {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::one());
        out
    }

    pub fn sub(&self, other: &Tensor) -> Tensor {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::from_int(-1));
        out
    }

    pub fn scale(&self, c: &Scalar) -> Tensor {
        let mut out = Tensor::zero(self.level);
        out.add_scaled(self, c);
        out
    }

    /// `self ⊗ e`.
    pub fn append_element(&self, e: &Element) -> Tensor {
        let mut out = Tensor::zero(self.level + 1);
        for (k, x) in &self.terms {
            for (w, y) in e.terms() {
                let mut key = k.clone();
                key.push(w.clone());
                out.add_term(key, &(x * y));
            }
        }
        out
    }

    /// `e ⊗ self`.
    pub fn prepend_element(&self, e: &Element) -> Tensor {
        let mut out = Tensor::zero(self.level + 1);
        for (k, x) in &self.terms {
            for (w, y) in e.terms() {
                let mut key = Vec::with_capacity(k.len() + 1);
                key.push(w.clone());
                key.extend(k.iter().cloned());
                out.add_term(key, &(x * y));
            }
        }
        out
    }

    /// Tensor product `self ⊗ other`.
    pub fn concat(&self, other: &Tensor) -> Tensor {
        let mut out = Tensor::zero(self.level + other.level);
        for (k, x) in &self.terms {
            for (l, y) in &other.terms {
                let mut key = k.clone();
                key.extend(l.iter().cloned());
                out.add_term(key, &(x * y));
            }
        }
        out
    }

    /// Apply a linear map built from a per-monomial function on slot `slot`,
    /// where the map sends one slot to `width` slots.
    pub fn map_slot(&self, slot: usize, width: usize, f: impl Fn(&Word) -> Tensor) -> Tensor {
        let mut out = Tensor::zero(self.level - 1 + width);
        for (k, x) in &self.terms {
            let img = f(&k[slot]);
            for (l, y) in img.terms() {
                let mut key = Vec::with_capacity(out.level);
                key.extend(k[..slot].iter().cloned());
                key.extend(l.iter().cloned());
                key.extend(k[slot + 1..].iter().cloned());
                out.add_term(key, &(x * y));
            }
        }
        out
    }

    /// Collapse a level-1 tensor to an element.
    pub fn to_element(&self) -> Element {
        assert_eq!(self.level, 1);
        Element::from_terms(self.terms.iter().map(|(k, c)| (k[0].clone(), c.clone())))
    }

    pub fn from_element(e: &Element) -> Tensor {
        Tensor::scalar(Scalar::one()).append_element(e)
    }
}

/// Memo of normal forms of words.
#[derive(Default)]
pub struct NormalFormCache {
    map: Mutex<HashMap<Word, Element>>,
}

impl NormalFormCache {
    fn get(&self, w: &[Gen]) -> Option<Element> {
        self.map.lock().unwrap().get(w).cloned()
    }

    fn put(&self, w: Word, e: Element) {
        self.map.lock().unwrap().insert(w, e);
    }
}

impl fmt::Debug for NormalFormCache {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("NormalFormCache")
    }
}

/// A presented associative unital algebra over `Q(ζ_m)`.
///
/// Implementations supply a terminating, confluent rewriting system on
/// generator words; a word is in normal form iff [`Algebra::redex`] finds
/// nothing to rewrite.
pub trait Algebra: Send + Sync {
    fn name(&self) -> &str;
    fn conductor(&self) -> u32;
    fn gen_name(&self, g: Gen) -> String;
    fn gen_weight(&self, g: Gen) -> u32;
    fn gen_by_name(&self, name: &str) -> Option<Gen>;
    /// Leftmost reducible subword `w[start..start + len]` and its replacement.
    fn redex(&self, w: &[Gen]) -> Option<(usize, usize, Element)>;
    /// All generators of weight at most `weight`.
    fn generators_up_to(&self, weight: u32) -> Vec<Gen>;
    /// Defining relations among generators of weight at most `weight`.
    fn relations_up_to(&self, weight: u32) -> Vec<(Word, Element)>;
    /// Whether the normal-form basis is finite.
    fn finite_dimensional(&self) -> bool {
        false
    }
    fn nf_cache(&self) -> &NormalFormCache;
}

/// Derived operations available on every [`Algebra`].
pub trait AlgebraExt: Algebra {
    fn is_normal(&self, w: &[Gen]) -> bool {
        self.redex(w).is_none()
    }

    fn normal_form_word(&self, w: &[Gen]) -> Element {
        if let Some(e) = self.nf_cache().get(w) {
            return e;
        }
        let out = match self.redex(w) {
            None => Element::monomial(w.to_vec()),
            Some((start, len, rep)) => {
                let mut acc = Element::zero();
                for (r, c) in rep.terms() {
                    let mut nw = Vec::with_capacity(w.len() - len + r.len());
                    nw.extend_from_slice(&w[..start]);
                    nw.extend_from_slice(r);
                    nw.extend_from_slice(&w[start + len..]);
                    acc.add_scaled(&self.normal_form_word(&nw), c);
                }
                acc
            }
        };
        self.nf_cache().put(w.to_vec(), out.clone());
        out
    }

    /// Rewrite an arbitrary linear combination of words to normal form.
    fn normalize(&self, e: &Element) -> Element {
        let mut out = Element::zero();
        for (w, c) in e.terms() {
            out.add_scaled(&self.normal_form_word(w), c);
        }
        out
    }

    fn mul_words(&self, a: &[Gen], b: &[Gen]) -> Element {
        if a.is_empty() {
            return Element::monomial(b.to_vec());
        }
        if b.is_empty() {
            return Element::monomial(a.to_vec());
        }
        let mut w = Vec::with_capacity(a.len() + b.len());
        w.extend_from_slice(a);
        w.extend_from_slice(b);
        self.normal_form_word(&w)
    }

    fn mul(&self, a: &Element, b: &Element) -> Element {
        let mut out = Element::zero();
        for (u, x) in a.terms() {
            for (v, y) in b.terms() {
                out.add_scaled(&self.mul_words(u, v), &(x * y));
            }
        }
        out
    }

    fn mul_all(&self, factors: &[Element]) -> Element {
        factors.iter().fold(Element::one(), |acc, f| self.mul(&acc, f))
    }

    fn commutator(&self, a: &Element, b: &Element) -> Element {
        self.mul(a, b).sub(&self.mul(b, a))
    }

    fn pow(&self, a: &Element, e: u32) -> Element {
        let mut out = Element::one();
        for _ in 0..e {
            out = self.mul(&out, a);
        }
        out
    }

    fn word_weight(&self, w: &[Gen]) -> u32 {
        w.iter().map(|g| self.gen_weight(*g)).sum()
    }

    fn gen(&self, g: Gen) -> Element {
        Element::monomial(vec![g])
    }

    /// All normal-form monomials of weight at most `weight`, ordered by
    /// weight and then lexicographically.
    fn monomials_up_to(&self, weight: u32) -> Vec<Word> {
        let gens = self.generators_up_to(weight);
        let mut out = vec![Word::new()];
        let mut frontier = vec![(Word::new(), 0u32)];
        while let Some((w, wt)) = frontier.pop() {
            for g in &gens {
                let gw = self.gen_weight(*g);
                if wt + gw > weight {
                    continue;
                }
                let mut nw = w.clone();
                nw.push(*g);
                if self.is_normal(&nw) {
                    out.push(nw.clone());
                    frontier.push((nw, wt + gw));
                }
            }
        }
        out.sort_by(|a, b| self.word_weight(a).cmp(&self.word_weight(b)).then(a.cmp(b)));
        out
    }

    /// The full normal-form basis of a finite-dimensional algebra.
    fn finite_basis(&self) -> Result<Vec<Word>> {
        if !self.finite_dimensional() {
            return Err(Error::Unsupported(format!("{} is not finite-dimensional", self.name())));
        }
        let gens = self.generators_up_to(u32::MAX);
        let mut out = vec![Word::new()];
        let mut frontier = vec![Word::new()];
        while let Some(w) = frontier.pop() {
            for g in &gens {
                let mut nw = w.clone();
                nw.push(*g);
                if self.is_normal(&nw) {
                    out.push(nw.clone());
                    frontier.push(nw);
                }
            }
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        Ok(out)
    }

    /// Multiply two tensors of the same level slot by slot.
    fn tensor_mul(&self, a: &Tensor, b: &Tensor) -> Tensor {
        assert_eq!(a.level(), b.level(), "tensor level mismatch");
        let mut out = Tensor::zero(a.level());
        for (k, x) in a.terms() {
            'pairs: for (l, y) in b.terms() {
                let mut partial = Tensor::scalar(x * y);
                for (u, v) in k.iter().zip(l) {
                    partial = partial.append_element(&self.mul_words(u, v));
                    if partial.is_zero() {
                        continue 'pairs;
                    }
                }
                out.add_scaled(&partial, &Scalar::one());
            }
        }
        out
    }

    fn format_word(&self, w: &[Gen]) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < w.len() {
            let mut j = i;
            while j < w.len() && w[j] == w[i] {
                j += 1;
            }
            let name = self.gen_name(w[i]);
            if j - i == 1 {
                parts.push(name);
            } else {
                parts.push(format!("{name}^{}", j - i));
            }
            i = j;
        }
        parts.join("*")
    }

    fn format_element(&self, e: &Element) -> String {
        if e.is_zero() {
            return "0".to_string();
        }
        let parts: Vec<String> = e
            .terms()
            .map(|(w, c)| format_term(&crate::expr::format_scalar(c, self.conductor()), &self.format_word(w)))
            .collect();
        join_terms(&parts)
    }

    fn format_tensor(&self, t: &Tensor) -> String {
        if t.is_zero() {
            return "0".to_string();
        }
        let parts: Vec<String> = t
            .terms()
            .map(|(k, c)| {
                let body = if k.is_empty() {
                    "1".to_string()
                } else {
                    k.iter().map(|w| self.format_word(w)).collect::<Vec<_>>().join("|")
                };
                format_term(&crate::expr::format_scalar(c, self.conductor()), &body)
            })
            .collect();
        join_terms(&parts)
    }
}

impl<T: Algebra + ?Sized> AlgebraExt for T {}

fn format_term(coeff: &str, body: &str) -> String {
    let needs_paren = coeff.contains(' ');
    match (coeff, body) {
        ("1", b) => b.to_string(),
        ("-1", b) if b != "1" => format!("-{b}"),
        (c, "1") => {
            if needs_paren {
                format!("({c})")
            } else {
                c.to_string()
            }
        }
        (c, b) => {
            if needs_paren {
                format!("({c})*{b}")
            } else {
                format!("{c}*{b}")
            }
        }
    }
}

fn join_terms(parts: &[String]) -> String {
    let mut s = String::new();
    for (i, p) in parts.iter().enumerate() {
        if i == 0 {
            s.push_str(p);
        } else if let Some(rest) = p.strip_prefix('-') {
            s.push_str(" - ");
            s.push_str(rest);
        } else {
            s.push_str(" + ");
            s.push_str(p);
        }
    }
    s
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenInfo {
    pub name: String,
    pub weight: u32,
}

/// Algebra presented by finitely many generators and word rewrite rules.
#[derive(Debug)]
pub struct Presentation {
    name: String,
    conductor: u32,
    gens: Vec<GenInfo>,
    rules: HashMap<Word, Element>,
    rule_order: Vec<Word>,
    max_lhs: usize,
    finite: bool,
    cache: NormalFormCache,
}

impl Clone for Presentation {
    fn clone(&self) -> Self {
        Presentation {
            name: self.name.clone(),
            conductor: self.conductor,
            gens: self.gens.clone(),
            rules: self.rules.clone(),
            rule_order: self.rule_order.clone(),
            max_lhs: self.max_lhs,
            finite: self.finite,
            cache: NormalFormCache::default(),
        }
    }
}

impl Presentation {
    /// Rules map a word to a linear combination of words; right-hand sides
    /// need not be normal. Finite dimensionality is detected by enumeration.
    pub fn new(name: &str, conductor: u32, gens: Vec<GenInfo>, rules: Vec<(Word, Element)>) -> Result<Self> {
        let mut map = HashMap::new();
        let mut order = Vec::new();
        let mut max_lhs = 0;
        for (lhs, rhs) in rules {
            if lhs.is_empty() {
                return Err(Error::Invalid("rewrite rule with empty left-hand side".into()));
            }
            for g in lhs.iter().chain(rhs.terms().flat_map(|(w, _)| w.iter())) {
                if *g as usize >= gens.len() {
                    return Err(Error::Invalid(format!("generator index {g} out of range")));
                }
            }
            max_lhs = max_lhs.max(lhs.len());
            if map.insert(lhs.clone(), rhs).is_some() {
                return Err(Error::Invalid(format!("duplicate rule for word {lhs:?}")));
            }
            order.push(lhs);
        }
        let mut p = Presentation {
            name: name.to_string(),
            conductor,
            gens,
            rules: map,
            rule_order: order,
            max_lhs,
            finite: false,
            cache: NormalFormCache::default(),
        };
        p.finite = p.detect_finite();
        Ok(p)
    }

    fn detect_finite(&self) -> bool {
        // DFS over normal words; give up past a generous size bound
        const LIMIT: usize = 4096;
        let mut count = 1;
        let mut frontier = vec![Word::new()];
        let ng = self.gens.len() as Gen;
        while let Some(w) = frontier.pop() {
            for g in 0..ng {
                let mut nw = w.clone();
                nw.push(g);
                if self.redex(&nw).is_none() {
                    count += 1;
                    if count > LIMIT || nw.len() > LIMIT {
                        return false;
                    }
                    frontier.push(nw);
                }
            }
        }
        true
    }

    pub fn renamed(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn generators(&self) -> &[GenInfo] {
        &self.gens
    }

    pub fn rules(&self) -> impl Iterator<Item = (&Word, &Element)> {
        self.rule_order.iter().map(move |w| (w, &self.rules[w]))
    }
}

impl Algebra for Presentation {
    fn name(&self) -> &str {
        &self.name
    }

    fn conductor(&self) -> u32 {
        self.conductor
    }

    fn gen_name(&self, g: Gen) -> String {
        self.gens[g as usize].name.clone()
    }

    fn gen_weight(&self, g: Gen) -> u32 {
        self.gens[g as usize].weight
    }

    fn gen_by_name(&self, name: &str) -> Option<Gen> {
        self.gens.iter().position(|g| g.name == name).map(|i| i as Gen)
    }

    fn redex(&self, w: &[Gen]) -> Option<(usize, usize, Element)> {
        // leftmost end position, shortest match: innermost-first
        for end in 1..=w.len() {
            for len in 1..=self.max_lhs.min(end) {
                let start = end - len;
                if let Some(rhs) = self.rules.get(&w[start..end]) {
                    return Some((start, len, rhs.clone()));
                }
            }
        }
        None
    }

    fn generators_up_to(&self, weight: u32) -> Vec<Gen> {
        (0..self.gens.len() as Gen).filter(|g| self.gens[*g as usize].weight <= weight).collect()
    }

    fn relations_up_to(&self, _weight: u32) -> Vec<(Word, Element)> {
        self.rules().map(|(w, e)| (w.clone(), e.clone())).collect()
    }

    fn finite_dimensional(&self) -> bool {
        self.finite
    }

    fn nf_cache(&self) -> &NormalFormCache {
        &self.cache
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sweedler_algebra() -> Presentation {
        let gens = vec![
            GenInfo { name: "g".into(), weight: 1 },
            GenInfo { name: "x".into(), weight: 1 },
        ];
        let rules = vec![
            (vec![0, 0], Element::one()),
            (vec![1, 1], Element::zero()),
            (vec![1, 0], Element::term(vec![0, 1], Scalar::from_int(-1))),
        ];
        Presentation::new("sweedler-alg", 1, gens, rules).unwrap()
    }

    #[test]
    fn rewriting_and_basis() {
        let a = sweedler_algebra();
        assert!(a.finite_dimensional());
        assert_eq!(a.finite_basis().unwrap(), vec![vec![], vec![0], vec![1], vec![0, 1]]);
        let xg = a.mul_words(&[1], &[0]);
        assert_eq!(xg, Element::term(vec![0, 1], Scalar::from_int(-1)));
        // (gx)(gx) = -g g x x = 0
        assert!(a.mul_words(&[0, 1], &[0, 1]).is_zero());
        assert_eq!(a.format_element(&xg), "-g*x");
    }

    #[test]
    fn unit_is_neutral() {
        let a = sweedler_algebra();
        let h = Element::from_terms([(vec![0, 1], Scalar::from_int(3)), (vec![1], Scalar::one())]);
        assert_eq!(a.mul(&Element::one(), &h), h);
        assert_eq!(a.mul(&h, &Element::one()), h);
    }

    #[test]
    fn tensor_slot_product() {
        let a = sweedler_algebra();
        let t = Tensor::basis(vec![vec![1], vec![0]]);
        let u = Tensor::basis(vec![vec![0], vec![0]]);
        let p = a.tensor_mul(&t, &u);
        assert_eq!(p.coeff(&[vec![0, 1], vec![]]), Scalar::from_int(-1));
    }
}
