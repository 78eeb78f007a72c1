//! Truncated `(b, B)` total complexes and their cohomology.
//!
//! Cochain spaces `C^0, …, C^{N+1}` are assembled on explicit monomial bases;
//! total degree `n` is `TC^n = ⊕_p C^{n-2p}` with differential `b + B`.
//! Degrees `0..=N` are computed exactly. Whether a degree already equals
//! its periodic limit is decided by [`TruncatedComplex::cohomology`].

use std::collections::HashMap;

use crate::algebra::{Algebra, AlgebraExt, Element, Tensor, Word};
use crate::cyclic::{chain, HopfCyclicModule};
use crate::error::{Error, Result};
use crate::hopf::{Hopf, HopfExt};
use crate::linalg::{self, SparseMatrix};
use crate::scalar::Scalar;

/// Which weights of cochains to keep.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightCut {
    /// Total weight at most `w`: a subcomplex whenever the operators never
    /// raise weight.
    AtMost(u32),
    /// Total weight exactly `w`: a direct summand when they preserve it.
    Exactly(u32),
}

impl WeightCut {
    fn bound(self) -> u32 {
        match self {
            WeightCut::AtMost(w) | WeightCut::Exactly(w) => w,
        }
    }

    fn admits(self, w: u32) -> bool {
        match self {
            WeightCut::AtMost(m) => w <= m,
            WeightCut::Exactly(m) => w == m,
        }
    }
}

/// Cohomology in one total degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeDim {
    pub degree: usize,
    pub dim: usize,
    /// Whether the periodicity map is provably an isomorphism from here on.
    pub stable: bool,
}

#[derive(Clone, Debug)]
pub struct TruncatedComplex {
    label: String,
    max_degree: usize,
    weight: Option<WeightCut>,
    normalized: bool,
    /// `bases[n]` spans `C^n` for `n = 0..=N+1`; entries are printable labels.
    bases: Vec<Vec<String>>,
    /// `b[n]: C^n → C^{n+1}` for `n = 0..=N`.
    b: Vec<SparseMatrix>,
    /// `big_b[n]: C^{n+1} → C^n` for `n = 0..N`.
    big_b: Vec<SparseMatrix>,
    /// `total[n]: TC^n → TC^{n+1}` for `n = 0..=N`.
    total: Vec<SparseMatrix>,
    /// Normalized cochains vanish above this level, when known.
    vanishing_above: Option<usize>,
}

/// A relation, coproduct or antipode of a generator up to `weight` that
/// raises weight, if any.
fn raises_weight(h: &dyn Hopf, weight: u32) -> Option<String> {
    let top = |e: &Element| e.terms().map(|(w, _)| h.word_weight(w)).max().unwrap_or(0);
    for (lhs, rhs) in h.relations_up_to(weight) {
        if top(&rhs) > h.word_weight(&lhs) {
            return Some(format!("{} -> {}", h.format_word(&lhs), h.format_element(&rhs)));
        }
    }
    for g in h.generators_up_to(weight) {
        let wt = h.gen_weight(g);
        let cop = h.coproduct_word(&[g]);
        if cop.terms().any(|(k, _)| k.iter().map(|w| h.word_weight(w)).sum::<u32>() > wt) {
            return Some(format!("Δ({}) = {}", h.gen_name(g), h.format_tensor(&cop)));
        }
        let s = h.antipode_word(&[g]);
        if top(&s) > wt {
            return Some(format!("S({}) = {}", h.gen_name(g), h.format_element(&s)));
        }
    }
    None
}

/// Word tuples of length `len` from `monomials` whose total weight passes `cut`.
fn weighted_tuples(monomials: &[(Word, u32)], len: usize, cut: Option<WeightCut>) -> Vec<Vec<Word>> {
    fn rec(
        monomials: &[(Word, u32)],
        len: usize,
        cut: Option<WeightCut>,
        cur: &mut Vec<Word>,
        wt: u32,
        out: &mut Vec<(u32, Vec<Word>)>,
    ) {
        if cur.len() == len {
            if cut.is_none_or(|c| c.admits(wt)) {
                out.push((wt, cur.clone()));
            }
            return;
        }
        for (m, w) in monomials {
            if cut.is_some_and(|c| wt + w > c.bound()) {
                continue;
            }
            cur.push(m.clone());
            rec(monomials, len, cut, cur, wt + w, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(monomials, len, cut, &mut Vec::new(), 0, &mut out);
    out.sort();
    out.into_iter().map(|(_, t)| t).collect()
}

fn index_of(basis: &[Vec<Word>]) -> HashMap<Vec<Word>, usize> {
    basis.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect()
}

/// Matrix whose column `j` holds the coordinates of `op(source[j])`.
fn columns_from(
    source: &[Vec<Word>],
    target: &HashMap<Vec<Word>, usize>,
    rows: usize,
    describe: impl Fn(&Tensor) -> String,
    mut op: impl FnMut(&[Word]) -> Result<Tensor>,
) -> Result<SparseMatrix> {
    let mut trip = Vec::new();
    for (j, t) in source.iter().enumerate() {
        for (key, c) in op(t)?.into_terms() {
            let i = *target.get(&key).ok_or_else(|| Error::Rejected {
                what: "operator leaves the assembled subspace".into(),
                witness: format!("{} has a term {}", describe(&Tensor::basis(t.clone())), describe(&Tensor::basis(key))),
            })?;
            trip.push((i, j, c));
        }
    }
    SparseMatrix::from_triplets(rows, source.len(), trip)
}

/// Matrix of the cochain map `φ ↦ φ ∘ op`, where `op` sends each target
/// tuple to a chain of source tuples. Source tuples outside `source` carry
/// the value zero (normalized cochains vanish there).
fn pullback_matrix(
    source: &HashMap<Vec<Word>, usize>,
    cols: usize,
    target: &[Vec<Word>],
    op: impl Fn(&[Word]) -> Tensor,
) -> Result<SparseMatrix> {
    let mut trip = Vec::new();
    for (i, t) in target.iter().enumerate() {
        for (key, c) in op(t).into_terms() {
            if let Some(&j) = source.get(&key) {
                trip.push((i, j, c));
            }
        }
    }
    SparseMatrix::from_triplets(target.len(), cols, trip)
}

impl TruncatedComplex {
    /// Hopf-cyclic bicomplex of `module` through total degree `max_degree`.
    ///
    /// With a weight cut every generator must have positive weight so that
    /// each cochain space is finite; without one the Hopf algebra must be
    /// finite-dimensional. `normalized` restricts to `(ker ε)^{⊗n}` and uses
    /// the normalized `B`.
    pub fn hopf(
        module: &HopfCyclicModule,
        max_degree: usize,
        weight: Option<WeightCut>,
        normalized: bool,
    ) -> Result<Self> {
        let h = module.hopf();
        let words = match weight {
            Some(cut) => {
                let probe = cut.bound().max(1);
                if let Some(g) = h.generators_up_to(probe).into_iter().find(|g| h.gen_weight(*g) == 0) {
                    return Err(Error::Unsupported(format!(
                        "{}: infinite-dimensional weight component, generator {} has weight 0",
                        h.name(),
                        h.gen_name(g)
                    )));
                }
                if let Some(w) = raises_weight(h, cut.bound()) {
                    return Err(Error::Unsupported(format!(
                        "{}: infinite-dimensional weight component, since the weight is not a filtration ({w})",
                        h.name()
                    )));
                }
                h.monomials_up_to(cut.bound())
            }
            None => h.finite_basis()?,
        };
        let augmented = words.iter().all(|w| w.is_empty() || h.counit_word(w).is_zero());
        if normalized && !augmented {
            return Err(Error::Unsupported(format!(
                "{}: non-unit basis monomials do not span ker ε",
                h.name()
            )));
        }
        let monomials: Vec<(Word, u32)> = words
            .into_iter()
            .filter(|w| !(normalized && w.is_empty()))
            .map(|w| {
                let wt = h.word_weight(&w);
                (w, wt)
            })
            .collect();
        let bases: Vec<Vec<Vec<Word>>> =
            (0..=max_degree + 1).map(|n| weighted_tuples(&monomials, n, weight)).collect();
        let index: Vec<_> = bases.iter().map(|b| index_of(b)).collect();
        let describe = |t: &Tensor| h.format_tensor(t);
        let mut b = Vec::new();
        for n in 0..=max_degree {
            b.push(columns_from(&bases[n], &index[n + 1], bases[n + 1].len(), describe, |t| {
                Ok(module.b(&Tensor::basis(t.to_vec())))
            })?);
        }
        let mut big_b = Vec::new();
        for n in 0..max_degree {
            big_b.push(columns_from(&bases[n + 1], &index[n], bases[n].len(), describe, |t| {
                let c = Tensor::basis(t.to_vec());
                if normalized {
                    module.big_b_normalized(&c)
                } else {
                    module.big_b(&c)
                }
            })?);
        }
        // Normalized cochains of weight ≤ W need one weight per slot.
        let vanishing_above = match weight {
            Some(cut) if augmented => Some(cut.bound() as usize),
            None if monomials.iter().all(|(w, _)| w.is_empty()) => Some(0),
            _ => None,
        };
        let labels = bases.iter().map(|b| b.iter().map(|t| describe(&Tensor::basis(t.clone()))).collect()).collect();
        let pair = module.pair();
        let label = format!(
            "{} with ({}, {})",
            h.name(),
            pair.delta.describe(h),
            h.format_element(&pair.sigma.element)
        );
        Self::finish(label, max_degree, weight, normalized, labels, b, big_b, vanishing_above)
    }

    /// Connes bicomplex of cochains on a finite-dimensional algebra.
    ///
    /// `normalized` keeps cochains vanishing whenever an argument after the
    /// first is 1.
    pub fn algebra(alg: &dyn Algebra, max_degree: usize, normalized: bool) -> Result<Self> {
        let words = alg.finite_basis()?;
        let monomials: Vec<(Word, u32)> = words.iter().map(|w| (w.clone(), 0)).collect();
        let keep = |t: &Vec<Word>| !normalized || t[1..].iter().all(|w| !w.is_empty());
        let bases: Vec<Vec<Vec<Word>>> = (0..=max_degree + 1)
            .map(|n| weighted_tuples(&monomials, n + 1, None).into_iter().filter(|t| keep(t)).collect())
            .collect();
        let index: Vec<_> = bases.iter().map(|b| index_of(b)).collect();
        let mut b = Vec::new();
        for n in 0..=max_degree {
            b.push(pullback_matrix(&index[n], bases[n].len(), &bases[n + 1], |t| chain::b(alg, t))?);
        }
        let mut big_b = Vec::new();
        for n in 0..max_degree {
            big_b.push(pullback_matrix(&index[n + 1], bases[n + 1].len(), &bases[n], chain::big_b)?);
        }
        let vanishing_above = (words.len() == 1).then_some(0);
        let labels = bases
            .iter()
            .map(|b| b.iter().map(|t| alg.format_tensor(&Tensor::basis(t.clone()))).collect())
            .collect();
        Self::finish(format!("cochains on {}", alg.name()), max_degree, None, normalized, labels, b, big_b, vanishing_above)
    }

    #[allow(clippy::too_many_arguments)]
    fn finish(
        label: String,
        max_degree: usize,
        weight: Option<WeightCut>,
        normalized: bool,
        bases: Vec<Vec<String>>,
        b: Vec<SparseMatrix>,
        big_b: Vec<SparseMatrix>,
        vanishing_above: Option<usize>,
    ) -> Result<Self> {
        let mut cx = TruncatedComplex {
            label,
            max_degree,
            weight,
            normalized,
            bases,
            b,
            big_b,
            total: Vec::new(),
            vanishing_above,
        };
        cx.total = (0..=max_degree).map(|n| cx.total_map(n)).collect::<Result<_>>()?;
        for n in 1..=max_degree {
            let square = cx.total[n].mul(&cx.total[n - 1])?;
            let witness = square.entries().next().map(|(_, c, _)| c);
            if let Some(c) = witness {
                return Err(Error::Rejected {
                    what: format!("(b+B)^2 != 0 from total degree {}", n - 1),
                    witness: cx.describe_total(n - 1, c),
                });
            }
        }
        Ok(cx)
    }

    /// Levels making up `TC^n`, in block order.
    fn levels(n: usize) -> Vec<usize> {
        (0..=n / 2).map(|p| n - 2 * p).collect()
    }

    pub fn total_dim(&self, n: usize) -> usize {
        Self::levels(n).iter().map(|&l| self.bases[l].len()).sum()
    }

    fn total_map(&self, n: usize) -> Result<SparseMatrix> {
        let cols = Self::levels(n);
        let rows = Self::levels(n + 1);
        let col_dims: Vec<usize> = cols.iter().map(|&l| self.bases[l].len()).collect();
        let row_dims: Vec<usize> = rows.iter().map(|&l| self.bases[l].len()).collect();
        let blocks: Vec<Vec<Option<&SparseMatrix>>> = rows
            .iter()
            .map(|&r| {
                cols.iter()
                    .map(|&c| {
                        if r == c + 1 {
                            Some(&self.b[c])
                        } else if r + 1 == c {
                            Some(&self.big_b[r])
                        } else {
                            None
                        }
                    })
                    .collect()
            })
            .collect();
        SparseMatrix::block(&row_dims, &col_dims, &blocks)
    }

    fn describe_total(&self, n: usize, mut idx: usize) -> String {
        for l in Self::levels(n) {
            if idx < self.bases[l].len() {
                return format!("level {l} chain {}", self.bases[l][idx]);
            }
            idx -= self.bases[l].len();
        }
        format!("index {idx} out of range")
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn weight(&self) -> Option<WeightCut> {
        self.weight
    }

    pub fn normalized(&self) -> bool {
        self.normalized
    }

    /// Basis labels of `C^n`.
    pub fn basis(&self, n: usize) -> &[String] {
        &self.bases[n]
    }

    /// `b: C^n → C^{n+1}`.
    pub fn b_matrix(&self, n: usize) -> &SparseMatrix {
        &self.b[n]
    }

    /// `B: C^{n+1} → C^n`.
    pub fn big_b_matrix(&self, n: usize) -> &SparseMatrix {
        &self.big_b[n]
    }

    /// `b + B: TC^n → TC^{n+1}`.
    pub fn total_matrix(&self, n: usize) -> &SparseMatrix {
        &self.total[n]
    }

    fn incoming(&self, n: usize) -> SparseMatrix {
        if n == 0 {
            SparseMatrix::zero(self.total_dim(0), 0)
        } else {
            self.total[n - 1].clone()
        }
    }

    /// Hochschild (`b`-only) cohomology dims of `C^0, …, C^N`.
    pub fn hochschild_dims(&self) -> Result<Vec<usize>> {
        (0..=self.max_degree)
            .map(|n| {
                let incoming = if n == 0 { SparseMatrix::zero(self.bases[0].len(), 0) } else { self.b[n - 1].clone() };
                linalg::homology_dim(&self.b[n], &incoming)
            })
            .collect()
    }

    /// Cyclic cohomology dims of total degrees `0..=N`, each flagged stable
    /// when `HH^k = 0` is known for every `k > n`. Then the periodicity map
    /// is an isomorphism from degree `n` on, so the value is the periodic one.
    /// `HH^k` is computed for `k ≤ N`; above `N` it vanishes only when the
    /// normalized cochains do.
    pub fn cohomology(&self) -> Result<Vec<DegreeDim>> {
        let hh = self.hochschild_dims()?;
        let tail_vanishes = self.vanishing_above.is_some_and(|l| l <= self.max_degree);
        (0..=self.max_degree)
            .map(|n| {
                let dim = linalg::homology_dim(&self.total[n], &self.incoming(n))?;
                let stable = tail_vanishes && hh[n + 1..].iter().all(|&d| d == 0);
                Ok(DegreeDim { degree: n, dim, stable })
            })
            .collect()
    }

    /// Homology dims of the transposed complex, computed from ranks of the
    /// transposed matrices; equal to the cohomology dims over a field.
    pub fn transposed_homology_dims(&self) -> Result<Vec<usize>> {
        (0..=self.max_degree)
            .map(|n| {
                let down = self.total[n].transpose();
                let up = self.incoming(n).transpose();
                linalg::homology_dim(&up, &down)
            })
            .collect()
    }

    /// Total matrices in coordinate text form, keyed `d{n}`.
    pub fn export(&self) -> Vec<(String, String)> {
        self.total.iter().enumerate().map(|(n, m)| (format!("d{n}"), m.to_coordinate_text())).collect()
    }
}

/// Cohomology of the subcomplex of cyclic cochains,
/// `φ(aⁿ, a⁰, …, a^{n-1}) = (-1)^n φ(a⁰, …, aⁿ)`, in degrees `0..=max_degree`.
pub fn cyclic_quotient_dims(alg: &dyn Algebra, max_degree: usize) -> Result<Vec<usize>> {
    let words = alg.finite_basis()?;
    let monomials: Vec<(Word, u32)> = words.iter().map(|w| (w.clone(), 0)).collect();
    let bases: Vec<Vec<Vec<Word>>> = (0..=max_degree + 1).map(|n| weighted_tuples(&monomials, n + 1, None)).collect();
    let index: Vec<_> = bases.iter().map(|b| index_of(b)).collect();
    // Orbit sums Σ_j (-1)^{nj} e_{λ^j t}, one per rotation orbit.
    let cyclic_basis = |n: usize| -> Result<SparseMatrix> {
        let sign = if n.is_multiple_of(2) { Scalar::one() } else { -Scalar::one() };
        let mut seen = vec![false; bases[n].len()];
        let mut cols = Vec::new();
        for (start, t) in bases[n].iter().enumerate() {
            if seen[start] {
                continue;
            }
            let mut col: std::collections::BTreeMap<usize, Scalar> = Default::default();
            let mut cur = t.clone();
            let mut coeff = Scalar::one();
            for _ in 0..=n {
                let i = index[n][&cur];
                seen[i] = true;
                let e = col.entry(i).or_insert_with(Scalar::zero);
                *e += &coeff;
                coeff = &coeff * &sign;
                cur = chain::cyclic(&cur).into_terms().next().expect("rotation of a basis tuple").0;
            }
            col.retain(|_, v| !v.is_zero());
            if !col.is_empty() {
                cols.push(col);
            }
        }
        SparseMatrix::from_columns(bases[n].len(), cols)
    };
    let mut b_on_cyclic = Vec::new();
    let mut cyclic_dims = Vec::new();
    for n in 0..=max_degree {
        let b = pullback_matrix(&index[n], bases[n].len(), &bases[n + 1], |t| chain::b(alg, t))?;
        let k = cyclic_basis(n)?;
        cyclic_dims.push(k.cols());
        b_on_cyclic.push(b.mul(&k)?.rank());
    }
    Ok((0..=max_degree)
        .map(|n| cyclic_dims[n] - b_on_cyclic[n] - if n == 0 { 0 } else { b_on_cyclic[n - 1] })
        .collect())
}

/// `Σ_{i ≡ n (2)} dims[i]`.
pub fn parity_sum(dims: &[usize], n: usize) -> usize {
    dims.iter().skip(n % 2).step_by(2).sum()
}
