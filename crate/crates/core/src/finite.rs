//! Finite-dimensional Hopf algebras by dense structure constants, with the
//! dual, opposite and tensor-product constructions.

use std::collections::BTreeMap;

use crate::algebra::{AlgebraExt, Element, Gen, GenInfo, Presentation, Tensor, Word};
use crate::error::{Error, Result};
use crate::hopf::{Character, Hopf, HopfExt, HopfPresentation};
use crate::linalg;
use crate::scalar::Scalar;

type Vector = Vec<Scalar>;

/// Structure constants on a basis `e_0, …, e_{d-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteHopf {
    pub name: String,
    pub conductor: u32,
    pub names: Vec<String>,
    /// Coordinates of the unit.
    pub unit: Vector,
    /// `mult[i][j]` = coordinates of `e_i e_j`.
    pub mult: Vec<Vec<Vector>>,
    /// `comult[k][i][j]` = coefficient of `e_i ⊗ e_j` in `Δe_k`.
    pub comult: Vec<Vec<Vector>>,
    pub counit: Vector,
    /// `antipode[k]` = coordinates of `S(e_k)`.
    pub antipode: Vec<Vector>,
}

fn zeros(n: usize) -> Vector {
    vec![Scalar::zero(); n]
}

fn identifier(s: &str) -> String {
    s.chars().filter(|c| c.is_alphanumeric() || *c == '_').collect()
}

impl FiniteHopf {
    /// Read off structure constants from the normal-form basis.
    pub fn from_hopf<H: Hopf + ?Sized>(h: &H) -> Result<Self> {
        let basis = h.finite_basis()?;
        let index: BTreeMap<&Word, usize> = basis.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let d = basis.len();
        let coords = |e: &Element| -> Vector {
            let mut v = zeros(d);
            for (w, c) in e.terms() {
                v[index[w]] = c.clone();
            }
            v
        };
        let mut mult = vec![vec![Vec::new(); d]; d];
        for i in 0..d {
            for j in 0..d {
                mult[i][j] = coords(&h.mul_words(&basis[i], &basis[j]));
            }
        }
        let comult = basis
            .iter()
            .map(|w| {
                let mut m = vec![zeros(d); d];
                for (k, c) in h.coproduct_word(w).terms() {
                    m[index[&k[0]]][index[&k[1]]] = c.clone();
                }
                m
            })
            .collect();
        let mut unit = zeros(d);
        unit[index[&Word::new()]] = Scalar::one();
        Ok(FiniteHopf {
            name: h.name().to_string(),
            conductor: h.conductor(),
            names: basis.iter().map(|w| identifier(&h.format_word(w))).collect(),
            unit,
            mult,
            comult,
            counit: basis.iter().map(|w| h.counit_word(w)).collect(),
            antipode: basis.iter().map(|w| coords(&h.antipode_word(w))).collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn mul_vec(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let d = self.dim();
        let mut out = zeros(d);
        for i in 0..d {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..d {
                if y[j].is_zero() {
                    continue;
                }
                let c = &x[i] * &y[j];
                for k in 0..d {
                    if !self.mult[i][j][k].is_zero() {
                        out[k] += &(&c * &self.mult[i][j][k]);
                    }
                }
            }
        }
        out
    }

    pub fn antipode_vec(&self, x: &[Scalar]) -> Vector {
        let d = self.dim();
        let mut out = zeros(d);
        for (k, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for i in 0..d {
                out[i] += &(c * &self.antipode[k][i]);
            }
        }
        out
    }

    /// The dual Hopf algebra on the dual basis `f_i(e_j) = [i = j]`.
    pub fn dual(&self) -> FiniteHopf {
        let d = self.dim();
        let mut mult = vec![vec![zeros(d); d]; d];
        let mut comult = vec![vec![zeros(d); d]; d];
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    mult[i][j][k] = self.comult[k][i][j].clone();
                    comult[k][i][j] = self.mult[i][j][k].clone();
                }
            }
        }
        let antipode = (0..d).map(|k| (0..d).map(|i| self.antipode[i][k].clone()).collect()).collect();
        FiniteHopf {
            name: format!("dual-{}", self.name),
            conductor: self.conductor,
            names: self.names.iter().map(|n| format!("f{n}")).collect(),
            unit: self.counit.clone(),
            mult,
            comult,
            counit: self.unit.clone(),
            antipode,
        }
    }

    /// Opposite multiplication, same coproduct, antipode `S⁻¹`.
    pub fn opposite(&self) -> Result<FiniteHopf> {
        let d = self.dim();
        // rows of the matrix are images of basis vectors; invert the transpose
        let s: Vec<Vector> = (0..d).map(|i| (0..d).map(|k| self.antipode[k][i].clone()).collect()).collect();
        let inv = linalg::invert_dense(&s)
            .map_err(|_| Error::Unsupported(format!("antipode of {} is not invertible", self.name)))?;
        let antipode = (0..d).map(|k| (0..d).map(|i| inv[i][k].clone()).collect()).collect();
        let mult = (0..d).map(|i| (0..d).map(|j| self.mult[j][i].clone()).collect()).collect();
        Ok(FiniteHopf {
            name: format!("op-{}", self.name),
            mult,
            antipode,
            ..self.clone()
        })
    }

    /// Tensor product with componentwise structure; basis `(i, j) ↦ i·d₂ + j`.
    pub fn tensor(&self, other: &FiniteHopf) -> Result<FiniteHopf> {
        if self.conductor != other.conductor {
            return Err(Error::Invalid("tensor factors must share the coefficient field".into()));
        }
        let (d1, d2) = (self.dim(), other.dim());
        let d = d1 * d2;
        let kron = |x: &[Scalar], y: &[Scalar]| -> Vector {
            let mut v = zeros(d);
            for i in 0..d1 {
                if x[i].is_zero() {
                    continue;
                }
                for j in 0..d2 {
                    v[i * d2 + j] = &x[i] * &y[j];
                }
            }
            v
        };
        let mut mult = vec![vec![Vec::new(); d]; d];
        for a in 0..d {
            for b in 0..d {
                mult[a][b] = kron(&self.mult[a / d2][b / d2], &other.mult[a % d2][b % d2]);
            }
        }
        let mut comult = vec![vec![zeros(d); d]; d];
        for (k, slot) in comult.iter_mut().enumerate() {
            let (k1, k2) = (k / d2, k % d2);
            for a in 0..d {
                for b in 0..d {
                    let c1 = &self.comult[k1][a / d2][b / d2];
                    if c1.is_zero() {
                        continue;
                    }
                    slot[a][b] = c1 * &other.comult[k2][a % d2][b % d2];
                }
            }
        }
        let mut names = Vec::with_capacity(d);
        let mut counit = Vec::with_capacity(d);
        let mut antipode = Vec::with_capacity(d);
        for a in 0..d {
            names.push(format!("{}_{}", self.names[a / d2], other.names[a % d2]));
            counit.push(&self.counit[a / d2] * &other.counit[a % d2]);
            antipode.push(kron(&self.antipode[a / d2], &other.antipode[a % d2]));
        }
        Ok(FiniteHopf {
            name: format!("{}-x-{}", self.name, other.name),
            conductor: self.conductor,
            names,
            unit: kron(&self.unit, &other.unit),
            mult,
            comult,
            counit,
            antipode,
        })
    }

    /// Present as a [`HopfPresentation`] after a basis change that makes the
    /// unit a basis vector.
    pub fn to_presentation(&self) -> Result<FinitePresented> {
        let d = self.dim();
        let pivot = (0..d)
            .find(|i| !self.unit[*i].is_zero())
            .ok_or_else(|| Error::Invalid("unit has zero coordinates".into()))?;
        let up_inv = self.unit[pivot].inv()?;
        // new basis: B_p = 1, B_b = e_b otherwise
        let change: Vec<Vector> = (0..d)
            .map(|b| {
                if b == pivot {
                    self.unit.clone()
                } else {
                    let mut v = zeros(d);
                    v[b] = Scalar::one();
                    v
                }
            })
            .collect();
        let to_new = |v: &[Scalar]| -> Vector {
            let t = &v[pivot] * &up_inv;
            (0..d).map(|b| if b == pivot { t.clone() } else { &v[b] - &(&self.unit[b] * &t) }).collect()
        };
        let gen_of: Vec<Option<Gen>> = {
            let mut next = 0;
            (0..d)
                .map(|b| {
                    if b == pivot {
                        None
                    } else {
                        next += 1;
                        Some(next - 1)
                    }
                })
                .collect()
        };
        let word_of = |b: usize| -> Word { gen_of[b].map(|g| vec![g]).unwrap_or_default() };
        let as_element = |v: &[Scalar]| -> Element {
            let n = to_new(v);
            Element::from_terms((0..d).map(|b| (word_of(b), n[b].clone())))
        };

        let gens: Vec<GenInfo> = (0..d)
            .filter(|b| *b != pivot)
            .map(|b| GenInfo { name: self.names[b].clone(), weight: 1 })
            .collect();
        let mut rules = Vec::new();
        for a in (0..d).filter(|a| *a != pivot) {
            for b in (0..d).filter(|b| *b != pivot) {
                let prod = self.mul_vec(&change[a], &change[b]);
                rules.push((vec![gen_of[a].unwrap(), gen_of[b].unwrap()], as_element(&prod)));
            }
        }
        let alg = Presentation::new(&self.name, self.conductor, gens, rules)?;

        let mut coproduct = Vec::new();
        let mut counit = Vec::new();
        let mut antipode = Vec::new();
        let s_rows: Vec<Vector> = (0..d).map(|i| (0..d).map(|k| self.antipode[k][i].clone()).collect()).collect();
        let s_inv = linalg::invert_dense(&s_rows).ok();
        let mut antipode_inverse = s_inv.as_ref().map(|_| Vec::new());
        for b in (0..d).filter(|b| *b != pivot) {
            let x = &change[b];
            let mut t = Tensor::zero(2);
            for (k, xk) in x.iter().enumerate() {
                if xk.is_zero() {
                    continue;
                }
                for i in 0..d {
                    for j in 0..d {
                        let c = &self.comult[k][i][j];
                        if c.is_zero() {
                            continue;
                        }
                        let ei = to_new(&change_unit(d, i));
                        let ej = to_new(&change_unit(d, j));
                        for (p, ci) in ei.iter().enumerate() {
                            if ci.is_zero() {
                                continue;
                            }
                            for (q, cj) in ej.iter().enumerate() {
                                if cj.is_zero() {
                                    continue;
                                }
                                t.add_term(vec![word_of(p), word_of(q)], &(&(xk * c) * &(ci * cj)));
                            }
                        }
                    }
                }
            }
            coproduct.push(t);
            counit.push(x.iter().zip(&self.counit).fold(Scalar::zero(), |acc, (a, b)| &acc + &(a * b)));
            antipode.push(as_element(&self.antipode_vec(x)));
            if let (Some(inv), Some(out)) = (&s_inv, antipode_inverse.as_mut()) {
                let v: Vector = (0..d)
                    .map(|i| x.iter().enumerate().fold(Scalar::zero(), |acc, (k, xk)| &acc + &(xk * &inv[i][k])))
                    .collect();
                out.push(as_element(&v));
            }
        }
        let hopf = HopfPresentation::new(alg, coproduct, counit, antipode, antipode_inverse)?;
        let from_new: Vec<Vector> = change;
        Ok(FinitePresented { hopf, from_new, pivot, unit: self.unit.clone(), gen_of })
    }
}

fn change_unit(d: usize, i: usize) -> Vector {
    let mut v = zeros(d);
    v[i] = Scalar::one();
    v
}

/// A [`FiniteHopf`] together with its presentation and the basis change.
#[derive(Debug)]
pub struct FinitePresented {
    pub hopf: HopfPresentation,
    /// Coordinates of each new basis vector in the original basis.
    from_new: Vec<Vector>,
    pivot: usize,
    unit: Vector,
    gen_of: Vec<Option<Gen>>,
}

impl FinitePresented {
    /// Convert coordinates in the original basis to an element.
    pub fn element(&self, v: &[Scalar]) -> Element {
        let d = v.len();
        let up_inv = self.unit[self.pivot].inv().expect("pivot is nonzero");
        let t = &v[self.pivot] * &up_inv;
        let mut out = Element::scalar(t.clone());
        for b in 0..d {
            if let Some(g) = self.gen_of[b] {
                out.add_term(vec![g], &(&v[b] - &(&self.unit[b] * &t)));
            }
        }
        out
    }

    /// A character given by its values on the original basis.
    pub fn character(&self, values: &[Scalar]) -> Character {
        let mut map = BTreeMap::new();
        for (b, g) in self.gen_of.iter().enumerate() {
            if let Some(g) = g {
                let v = self.from_new[b].iter().zip(values).fold(Scalar::zero(), |acc, (x, y)| &acc + &(x * y));
                map.insert(*g, v);
            }
        }
        Character::from_values(map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::check_hopf_axioms;

    fn z2() -> FiniteHopf {
        let one = |i: usize| change_unit(2, i);
        let mut comult = vec![vec![zeros(2); 2]; 2];
        comult[0][0][0] = Scalar::one();
        comult[1][1][1] = Scalar::one();
        FiniteHopf {
            name: "z2".into(),
            conductor: 1,
            names: vec!["e".into(), "g".into()],
            unit: one(0),
            mult: vec![vec![one(0), one(1)], vec![one(1), one(0)]],
            comult,
            counit: vec![Scalar::one(), Scalar::one()],
            antipode: vec![one(0), one(1)],
        }
    }

    #[test]
    fn dual_of_dual_is_identity_on_constants() {
        let h = z2();
        let dd = h.dual().dual();
        assert_eq!(dd.mult, h.mult);
        assert_eq!(dd.comult, h.comult);
        assert_eq!(dd.antipode, h.antipode);
    }

    #[test]
    fn dual_of_z2_is_function_algebra() {
        let p = z2().dual().to_presentation().unwrap();
        assert!(check_hopf_axioms(&p.hopf, 2).passed());
        // functions on two points: the non-unit generator is idempotent
        let f = p.hopf.gen(0);
        assert_eq!(p.hopf.mul(&f, &f), f);
    }

    #[test]
    fn klein_four_from_tensor() {
        let k = z2().tensor(&z2()).unwrap();
        assert_eq!(k.dim(), 4);
        let p = k.to_presentation().unwrap();
        assert!(check_hopf_axioms(&p.hopf, 2).passed());
        for g in 0..3 {
            let x = p.hopf.gen(g);
            assert_eq!(p.hopf.mul(&x, &x), Element::one());
            assert_eq!(p.hopf.coproduct(&x), Tensor::pure(&[x.clone(), x.clone()]));
        }
    }
}
