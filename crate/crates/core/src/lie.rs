//! Finite-dimensional Lie algebras by structure constants, their enveloping
//! algebras, and the Chevalley–Eilenberg complexes with coefficients in the
//! one-dimensional module given by a character.
//!
//! Sign conventions (chains of `Λ^k g`, character `δ`):
//!
//! ```text
//! ∂(x₁∧…∧x_k) = Σ_i (-1)^{i+1} δ(x_i) x₁∧…x̂_i…∧x_k
//!             + Σ_{i<j} (-1)^{i+j} [x_i,x_j]∧x₁∧…x̂_i…x̂_j…∧x_k
//! (df)(x₀,…,x_k) = Σ_i (-1)^i δ(x_i) f(…x̂_i…)
//!             + Σ_{i<j} (-1)^{i+j} f([x_i,x_j], …x̂_i…x̂_j…)
//! ```
//!
//! The cochain differential is the transpose of the chain boundary, so the
//! two computations are dual degree by degree.

use std::collections::BTreeMap;

use crate::algebra::{Element, GenInfo, Presentation, Tensor};
use crate::error::{Error, Result};
use crate::hopf::HopfPresentation;
use crate::linalg::{self, SparseMatrix};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieData {
    names: Vec<String>,
    weights: Vec<u32>,
    /// `table[i][j][k]` is the coefficient of `e_k` in `[e_i, e_j]`.
    table: Vec<Vec<Vec<Scalar>>>,
}

impl LieData {
    /// Build from brackets `[e_i, e_j] = Σ c_k e_k` listed for `i < j`;
    /// antisymmetry fills in the rest. Jacobi is checked.
    pub fn new(names: &[&str], weights: &[u32], brackets: &[(usize, usize, Vec<(usize, Scalar)>)]) -> Result<Self> {
        let n = names.len();
        if weights.len() != n {
            return Err(Error::Invalid("one weight per basis vector".into()));
        }
        if weights.contains(&0) {
            return Err(Error::Invalid("weights must be positive".into()));
        }
        let mut table = vec![vec![vec![Scalar::zero(); n]; n]; n];
        for (i, j, terms) in brackets {
            if *i >= n || *j >= n || i == j {
                return Err(Error::Invalid(format!("bad bracket indices ({i}, {j})")));
            }
            for (k, c) in terms {
                if *k >= n {
                    return Err(Error::Invalid(format!("bad bracket target {k}")));
                }
                table[*i][*j][*k] += c;
                table[*j][*i][*k] -= c;
            }
        }
        let g = LieData { names: names.iter().map(|s| s.to_string()).collect(), weights: weights.to_vec(), table };
        g.check_jacobi()?;
        Ok(g)
    }

    pub fn abelian(dim: usize) -> Self {
        let names: Vec<String> = (1..=dim).map(|i| format!("x{i}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        LieData::new(&refs, &vec![1; dim], &[]).expect("abelian data is valid")
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn bracket(&self, i: usize, j: usize) -> &[Scalar] {
        &self.table[i][j]
    }

    fn bracket_vec(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let mut out = vec![Scalar::zero(); n];
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() {
                    continue;
                }
                let c = &x[i] * &y[j];
                for k in 0..n {
                    if !self.table[i][j][k].is_zero() {
                        out[k] += &(&c * &self.table[i][j][k]);
                    }
                }
            }
        }
        out
    }

    fn unit(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim()];
        v[i] = Scalar::one();
        v
    }

    fn check_jacobi(&self) -> Result<()> {
        let n = self.dim();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let (x, y, z) = (self.unit(a), self.unit(b), self.unit(c));
                    let t1 = self.bracket_vec(&x, &self.bracket_vec(&y, &z));
                    let t2 = self.bracket_vec(&y, &self.bracket_vec(&z, &x));
                    let t3 = self.bracket_vec(&z, &self.bracket_vec(&x, &y));
                    if (0..n).any(|k| !(&(&t1[k] + &t2[k]) + &t3[k]).is_zero()) {
                        return Err(Error::Rejected {
                            what: "Jacobi identity fails".into(),
                            witness: format!("({}, {}, {})", self.names[a], self.names[b], self.names[c]),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// A character must vanish on all brackets.
    pub fn check_character(&self, delta: &[Scalar]) -> Result<()> {
        if delta.len() != self.dim() {
            return Err(Error::Dimension("character needs one value per basis vector".into()));
        }
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let v = self.table[i][j].iter().zip(delta).fold(Scalar::zero(), |acc, (c, d)| &acc + &(c * d));
                if !v.is_zero() {
                    return Err(Error::Rejected {
                        what: "not a character: nonzero on a bracket".into(),
                        witness: format!("[{}, {}]", self.names[i], self.names[j]),
                    });
                }
            }
        }
        Ok(())
    }

    /// Whether `[e_i, e_j]` only involves `e_k` of weight at most `w_i + w_j`.
    pub fn bracket_respects_weights(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            (0..n).all(|j| (0..n).all(|k| self.table[i][j][k].is_zero() || self.weights[k] <= self.weights[i] + self.weights[j]))
        })
    }
}

/// PBW presentation of `U(g)` with every basis vector primitive.
///
/// Normal monomials are non-decreasing in basis index; `e_j e_i` with
/// `j > i` rewrites to `e_i e_j + [e_j, e_i]`.
pub fn enveloping_algebra(g: &LieData, name: &str) -> Result<HopfPresentation> {
    let n = g.dim();
    let gens = g
        .names
        .iter()
        .zip(&g.weights)
        .map(|(s, w)| GenInfo { name: s.clone(), weight: *w })
        .collect();
    let mut rules = Vec::new();
    for j in 0..n {
        for i in 0..j {
            let mut rhs = Element::monomial(vec![i as u32, j as u32]);
            for (k, c) in g.table[j][i].iter().enumerate() {
                rhs.add_term(vec![k as u32], c);
            }
            rules.push((vec![j as u32, i as u32], rhs));
        }
    }
    let alg = Presentation::new(name, 1, gens, rules)?;
    let coproduct = (0..n as u32)
        .map(|k| Tensor::basis(vec![vec![k], vec![]]).add(&Tensor::basis(vec![vec![], vec![k]])))
        .collect();
    let counit = vec![Scalar::zero(); n];
    let neg: Vec<Element> = (0..n as u32).map(|k| Element::term(vec![k], Scalar::from_int(-1))).collect();
    HopfPresentation::new(alg, coproduct, counit, neg.clone(), Some(neg))
}

/// Sorted `k`-subsets of `0..n` of total weight at most `max_weight`.
fn wedge_basis(g: &LieData, k: usize, max_weight: Option<u32>) -> Vec<Vec<usize>> {
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(g.dim(), k, 0, &mut Vec::new(), &mut out);
    out.retain(|s| max_weight.is_none_or(|w| s.iter().map(|i| g.weights[*i]).sum::<u32>() <= w));
    out
}

/// Sort a wedge of distinct indices, returning the permutation sign, or
/// `None` when an index repeats.
fn sort_wedge(mut v: Vec<usize>) -> Option<(Vec<usize>, i64)> {
    let mut sign = 1;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|p| p[0] == p[1]) {
        None
    } else {
        Some((v, sign))
    }
}

/// Boundary `Λ^k g → Λ^{k-1} g` restricted to the weight filtration.
fn boundary(g: &LieData, delta: &[Scalar], k: usize, max_weight: Option<u32>) -> SparseMatrix {
    let src = wedge_basis(g, k, max_weight);
    let dst = wedge_basis(g, k - 1, max_weight);
    let index: BTreeMap<&Vec<usize>, usize> = dst.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut trips = Vec::new();
    let mut push = |wedge: Vec<usize>, c: Scalar, col: usize| {
        if let Some((sorted, sign)) = sort_wedge(wedge) {
            // weights never increase, so the target lies in the filtration
            let row = index[&sorted];
            trips.push((row, col, &c * &Scalar::from_int(sign)));
        }
    };
    for (col, s) in src.iter().enumerate() {
        for i in 0..k {
            let d = &delta[s[i]];
            if !d.is_zero() {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                let rest: Vec<usize> = s.iter().enumerate().filter(|(p, _)| *p != i).map(|(_, x)| *x).collect();
                push(rest, d * &Scalar::from_int(sign), col);
            }
        }
        for i in 0..k {
            for j in i + 1..k {
                // (-1)^{(i+1)+(j+1)} in 1-based positions
                let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                let rest: Vec<usize> =
                    s.iter().enumerate().filter(|(p, _)| *p != i && *p != j).map(|(_, x)| *x).collect();
                for (m, c) in g.table[s[i]][s[j]].iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let mut wedge = vec![m];
                    wedge.extend(&rest);
                    push(wedge, c * &Scalar::from_int(sign), col);
                }
            }
        }
    }
    SparseMatrix::from_triplets(dst.len(), src.len(), trips).expect("indices come from the bases")
}

/// Betti numbers `dim H_k(g, k_δ)` for `k = 0..=dim g`.
pub fn ce_homology(g: &LieData, delta: &[Scalar]) -> Result<Vec<usize>> {
    ce_homology_filtered(g, delta, None)
}

/// Homology of the subcomplex spanned by wedges of weight at most
/// `max_weight`; valid when brackets do not raise weight.
pub fn ce_homology_filtered(g: &LieData, delta: &[Scalar], max_weight: Option<u32>) -> Result<Vec<usize>> {
    g.check_character(delta)?;
    if max_weight.is_some() && !g.bracket_respects_weights() {
        return Err(Error::Unsupported("weight filtration is not a subcomplex".into()));
    }
    let n = g.dim();
    let maps: Vec<SparseMatrix> = (1..=n).map(|k| boundary(g, delta, k, max_weight)).collect();
    let size = |k: usize| wedge_basis(g, k, max_weight).len();
    let mut dims = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let outgoing = if k == 0 { SparseMatrix::zero(0, size(0)) } else { maps[k - 1].clone() };
        let incoming = if k == n { SparseMatrix::zero(size(n), 0) } else { maps[k].clone() };
        dims.push(linalg::homology_dim(&outgoing, &incoming)?);
    }
    Ok(dims)
}

/// Coboundary `C^k → C^{k+1}` in the dual wedge bases.
pub fn ce_coboundary(g: &LieData, delta: &[Scalar], k: usize) -> SparseMatrix {
    boundary(g, delta, k + 1, None).transpose()
}

/// Betti numbers `dim H^k(g, k_δ)` for `k = 0..=dim g`.
pub fn ce_cohomology(g: &LieData, delta: &[Scalar]) -> Result<Vec<usize>> {
    g.check_character(delta)?;
    let n = g.dim();
    let size = |k: usize| wedge_basis(g, k, None).len();
    let mut dims = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let outgoing = if k == n { SparseMatrix::zero(0, size(n)) } else { ce_coboundary(g, delta, k) };
        let incoming = if k == 0 { SparseMatrix::zero(size(0), 0) } else { ce_coboundary(g, delta, k - 1) };
        dims.push(linalg::homology_dim(&outgoing, &incoming)?);
    }
    Ok(dims)
}

/// A CE `k`-cochain as coordinates on the sorted wedge basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CeCochain {
    pub degree: usize,
    pub values: Vec<Scalar>,
}

impl CeCochain {
    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Scalar::is_zero)
    }

    /// Whether `d` annihilates this cochain.
    pub fn is_cocycle(&self, g: &LieData, delta: &[Scalar]) -> bool {
        if self.degree >= g.dim() {
            return true;
        }
        ce_coboundary(g, delta, self.degree).apply(&self.values).iter().all(Scalar::is_zero)
    }
}

/// `(x₁∧…∧x_n) ↦ (1/n!) Σ_π sign(π) φ(x_{π(1)},…,x_{π(n)})` on the basis.
pub fn antisymmetrize(g: &LieData, n: usize, phi: impl Fn(&[usize]) -> Scalar) -> CeCochain {
    let basis = wedge_basis(g, n, None);
    let perms = permutations(n);
    let fact: i64 = (1..=n as i64).product();
    let scale = Scalar::from_frac(1, fact.max(1));
    let values = basis
        .iter()
        .map(|s| {
            let mut acc = Scalar::zero();
            for (p, sign) in &perms {
                let args: Vec<usize> = p.iter().map(|i| s[*i]).collect();
                acc += &(&phi(&args) * &Scalar::from_int(*sign));
            }
            &acc * &scale
        })
        .collect();
    CeCochain { degree: n, values }
}

fn permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    fn rec(k: usize, cur: &mut Vec<usize>, sign: i64, out: &mut Vec<(Vec<usize>, i64)>) {
        if k == cur.len() {
            out.push((cur.clone(), sign));
            return;
        }
        for i in k..cur.len() {
            cur.swap(k, i);
            rec(k + 1, cur, if i == k { sign } else { -sign }, out);
            cur.swap(k, i);
        }
    }
    rec(0, &mut cur, 1, &mut out);
    out
}
