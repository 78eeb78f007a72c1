//! JSON algebra-definition files. Catalog entries export to the same format,
//! so user-defined and built-in algebras are interchangeable.
//!
//! Words, elements and tensors are written in the expression syntax of
//! [`crate::expr`]; tensor slots are separated by `|`.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, AlgebraExt, Element, Gen, GenInfo, Presentation, Word};
use crate::catalog::{
    self, ActionTable, CatalogEntry, Functional, GroupLikePair, RMatrixData, SquareRoots, Structure,
};
use crate::error::{Error, Result};
use crate::expr::{format_scalar, parse_element, parse_scalar, parse_tensor_level};
use crate::hopf::{Character, GroupLike, HopfPresentation};
use crate::lie::LieData;

fn one() -> u32 {
    1
}

fn is_one(n: &u32) -> bool {
    *n == 1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub name: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub description: String,
    /// Name of a built-in structure that has no finite table form.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub builtin: Option<String>,
    /// The coefficient field is `Q(ζ)` for a primitive root of this order.
    #[serde(default = "one", skip_serializing_if = "is_one")]
    pub conductor: u32,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub generators: Vec<GeneratorDef>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rules: Vec<RuleDef>,
    /// Normal-form basis, checked against the rules when present.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hopf: Option<HopfTables>,
    /// Characters by their values on generators.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub characters: BTreeMap<String, BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub group_likes: BTreeMap<String, InvertibleDef>,
    /// Pairs as `[character, group-like]`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub modular_pairs: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lie: Option<LieDef>,
    /// Trace values on basis words.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<ActionDef>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub r_matrices: BTreeMap<String, RMatrixDef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub square_roots: Option<SquareRootsDef>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorDef {
    pub name: String,
    #[serde(default = "one")]
    pub weight: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RuleDef {
    pub lhs: String,
    pub rhs: String,
}

/// Coproduct, counit, antipode (and optionally its inverse) per generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HopfTables {
    pub coproduct: BTreeMap<String, String>,
    pub counit: BTreeMap<String, String>,
    pub antipode: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub antipode_inverse: Option<BTreeMap<String, String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InvertibleDef {
    pub element: String,
    pub inverse: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieDef {
    pub names: Vec<String>,
    pub weights: Vec<u32>,
    /// `[i, j]` for `i < j` as a map from basis name to coefficient.
    pub brackets: Vec<BracketDef>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketDef {
    pub left: String,
    pub right: String,
    pub value: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionDef {
    pub hopf: String,
    /// Image of each algebra generator under each Hopf generator.
    pub table: BTreeMap<String, BTreeMap<String, String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RMatrixDef {
    pub r: String,
    pub r_inverse: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ribbon: Option<InvertibleDef>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SquareRootsDef {
    pub delta_half: String,
    pub sigma_half: String,
}

fn parse_word<A: Algebra + ?Sized>(free: &A, src: &str) -> Result<Word> {
    let e = parse_element(free, src)?;
    match e.terms().collect::<Vec<_>>().as_slice() {
        [(w, c)] if c.is_one() => Ok((*w).clone()),
        _ => Err(Error::Parse(format!("{src:?} is not a single word"))),
    }
}

fn gen_named<A: Algebra + ?Sized>(a: &A, name: &str) -> Result<Gen> {
    a.gen_by_name(name).ok_or_else(|| Error::UnknownName(format!("generator {name:?}")))
}

/// One value per generator, in generator order.
fn per_generator<A: Algebra + ?Sized, T>(
    a: &A,
    table: &BTreeMap<String, String>,
    what: &str,
    parse: impl Fn(&str) -> Result<T>,
) -> Result<Vec<T>> {
    let n = a.generators_up_to(u32::MAX).len();
    if let Some(extra) = table.keys().find(|k| a.gen_by_name(k).is_none()) {
        return Err(Error::UnknownName(format!("{what}: generator {extra:?}")));
    }
    (0..n as Gen)
        .map(|g| {
            let name = a.gen_name(g);
            let src = table.get(&name).ok_or_else(|| Error::Invalid(format!("{what}: missing entry for {name}")))?;
            parse(src)
        })
        .collect()
}

fn invertible<A: Algebra + ?Sized>(a: &A, def: &InvertibleDef) -> Result<(Element, Element)> {
    Ok((parse_element(a, &def.element)?, parse_element(a, &def.inverse)?))
}

impl AlgebraFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("definition files serialize")
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Build and validate the described structure.
    pub fn build(&self) -> Result<CatalogEntry> {
        if let Some(b) = &self.builtin {
            let mut e = catalog::build(b)?;
            if !self.description.is_empty() {
                e.description = self.description.clone();
            }
            return Ok(e);
        }
        let gens: Vec<GenInfo> =
            self.generators.iter().map(|g| GenInfo { name: g.name.clone(), weight: g.weight }).collect();
        let free = Presentation::new(&self.name, self.conductor, gens.clone(), Vec::new())?;
        let rules = self
            .rules
            .iter()
            .map(|r| Ok((parse_word(&free, &r.lhs)?, parse_element(&free, &r.rhs)?)))
            .collect::<Result<Vec<_>>>()?;
        let alg = Presentation::new(&self.name, self.conductor, gens, rules)?;

        let mut entry = match &self.hopf {
            Some(t) => {
                let coproduct = per_generator(&alg, &t.coproduct, "coproduct", |s| parse_tensor_level(&alg, s, 2))?;
                let counit = per_generator(&alg, &t.counit, "counit", |s| parse_scalar(self.conductor, s))?;
                let antipode = per_generator(&alg, &t.antipode, "antipode", |s| parse_element(&alg, s))?;
                let antipode_inverse = match &t.antipode_inverse {
                    Some(m) => Some(per_generator(&alg, m, "antipode inverse", |s| parse_element(&alg, s))?),
                    None => None,
                };
                let h = HopfPresentation::new(alg, coproduct, counit, antipode, antipode_inverse)?;
                CatalogEntry::hopf_entry(&self.name, &self.description, Arc::new(h))
            }
            None => CatalogEntry::new(&self.name, &self.description, Structure::Algebra(Arc::new(alg))),
        };
        self.attach_data(&mut entry)?;
        Ok(entry)
    }

    fn attach_data(&self, entry: &mut CatalogEntry) -> Result<()> {
        let a = entry.algebra_arc();
        let a = a.as_ref();
        if let Some(basis) = &self.basis {
            let listed = basis.iter().map(|s| parse_word(a, s)).collect::<Result<Vec<_>>>()?;
            if listed != a.finite_basis()? {
                return Err(Error::Invalid("listed basis differs from the normal-form basis".into()));
            }
        }
        if let Some(values) = &self.trace {
            let map = values
                .iter()
                .map(|(w, v)| Ok((parse_word(a, w)?, parse_scalar(self.conductor, v)?)))
                .collect::<Result<BTreeMap<_, _>>>()?;
            entry.trace = Some(Functional::new(map));
        }
        if let Some(act) = &self.action {
            let acting = catalog::build(&act.hopf)?;
            let h = acting.require_hopf()?;
            if let Some(extra) = act.table.keys().find(|k| h.gen_by_name(k).is_none()) {
                return Err(Error::UnknownName(format!("action: generator {extra:?} of {}", act.hopf)));
            }
            let rows = h
                .generators_up_to(u32::MAX)
                .into_iter()
                .map(|g| {
                    let row = act
                        .table
                        .get(&h.gen_name(g))
                        .ok_or_else(|| Error::Invalid(format!("action: missing row for {}", h.gen_name(g))))?;
                    per_generator(a, row, "action row", |s| parse_element(a, s))
                })
                .collect::<Result<Vec<_>>>()?;
            entry.action = Some(ActionTable { hopf: act.hopf.clone(), table: rows });
        }
        if self.hopf.is_none() {
            let hopf_only = !self.characters.is_empty()
                || !self.group_likes.is_empty()
                || !self.modular_pairs.is_empty()
                || !self.r_matrices.is_empty()
                || self.square_roots.is_some()
                || self.lie.is_some();
            if hopf_only {
                return Err(Error::Invalid(format!("{}: Hopf data given without Hopf tables", self.name)));
            }
            return Ok(());
        }
        let h = entry.hopf_arc().expect("built with Hopf tables");
        let h = h.as_ref();
        for (name, values) in &self.characters {
            let mut map = BTreeMap::new();
            for (g, v) in values {
                map.insert(gen_named(h, g)?, parse_scalar(self.conductor, v)?);
            }
            let chi = Character::from_values(map);
            chi.validate(h, u32::MAX)?;
            entry.characters.insert(name.clone(), chi);
        }
        for (name, def) in &self.group_likes {
            let (element, inverse) = invertible(h, def)?;
            let g = GroupLike { element, inverse };
            g.validate(h)?;
            entry.group_likes.insert(name.clone(), g);
        }
        if let Some(lie) = &self.lie {
            let names: Vec<&str> = lie.names.iter().map(String::as_str).collect();
            let index = |n: &str| {
                names.iter().position(|m| *m == n).ok_or_else(|| Error::UnknownName(format!("Lie basis {n:?}")))
            };
            let mut brackets = Vec::new();
            for b in &lie.brackets {
                let terms = b
                    .value
                    .iter()
                    .map(|(k, c)| Ok((index(k)?, parse_scalar(self.conductor, c)?)))
                    .collect::<Result<Vec<_>>>()?;
                brackets.push((index(&b.left)?, index(&b.right)?, terms));
            }
            entry.lie = Some(LieData::new(&names, &lie.weights, &brackets)?);
        }
        for (name, def) in &self.r_matrices {
            let ribbon = match &def.ribbon {
                Some(r) => {
                    let (element, inverse) = invertible(h, r)?;
                    Some(GroupLikePair { element, inverse })
                }
                None => None,
            };
            let data = RMatrixData {
                r: parse_tensor_level(h, &def.r, 2)?,
                r_inverse: parse_tensor_level(h, &def.r_inverse, 2)?,
                ribbon,
            };
            entry.r_matrices.insert(name.clone(), data);
        }
        if let Some(roots) = &self.square_roots {
            entry.square_roots =
                Some(SquareRoots { delta_half: roots.delta_half.clone(), sigma_half: roots.sigma_half.clone() });
        }
        for [chi, g] in &self.modular_pairs {
            entry.pair(&format!("{chi},{g}"))?;
            entry.modular_pairs.push((chi.clone(), g.clone()));
        }
        Ok(())
    }

    /// Describe a catalog entry in file form.
    pub fn from_entry(entry: &CatalogEntry) -> Self {
        let mut file = AlgebraFile {
            name: entry.name.clone(),
            description: entry.description.clone(),
            builtin: entry.builtin.clone(),
            conductor: entry.algebra().conductor(),
            generators: Vec::new(),
            rules: Vec::new(),
            basis: None,
            hopf: None,
            characters: BTreeMap::new(),
            group_likes: BTreeMap::new(),
            modular_pairs: Vec::new(),
            lie: None,
            trace: None,
            action: None,
            r_matrices: BTreeMap::new(),
            square_roots: None,
        };
        if file.builtin.is_some() {
            return file;
        }
        let a = entry.algebra();
        let k = file.conductor;
        let gens = a.generators_up_to(u32::MAX);
        file.generators = gens.iter().map(|g| GeneratorDef { name: a.gen_name(*g), weight: a.gen_weight(*g) }).collect();
        file.rules = a
            .relations_up_to(u32::MAX)
            .iter()
            .map(|(w, e)| RuleDef { lhs: a.format_word(w), rhs: a.format_element(e) })
            .collect();
        if let Ok(basis) = a.finite_basis() {
            file.basis = Some(basis.iter().map(|w| a.format_word(w)).collect());
        }
        file.trace = entry.trace.as_ref().map(|t| {
            t.values().iter().map(|(w, c)| (a.format_word(w), format_scalar(c, k))).collect()
        });
        let acting = entry.action.as_ref().and_then(|t| Some((t, catalog::build(&t.hopf).ok()?)));
        if let Some((act, acting)) = acting {
            let h = acting.require_hopf().expect("action tables name Hopf algebras");
            let table = act
                .table
                .iter()
                .enumerate()
                .map(|(hg, row)| {
                    let row = row.iter().enumerate().map(|(ag, e)| (a.gen_name(ag as Gen), a.format_element(e))).collect();
                    (h.gen_name(hg as Gen), row)
                })
                .collect();
            file.action = Some(ActionDef { hopf: act.hopf.clone(), table });
        }
        let Some(h) = entry.hopf() else { return file };
        let by_gen = |f: &dyn Fn(Gen) -> String| -> BTreeMap<String, String> {
            gens.iter().map(|g| (h.gen_name(*g), f(*g))).collect()
        };
        let antipode_inverse = gens
            .iter()
            .all(|g| h.antipode_inverse_gen(*g).is_some())
            .then(|| by_gen(&|g| h.format_element(&h.antipode_inverse_gen(g).unwrap())));
        file.hopf = Some(HopfTables {
            coproduct: by_gen(&|g| h.format_tensor(&h.coproduct_gen(g))),
            counit: by_gen(&|g| format_scalar(&h.counit_gen(g), k)),
            antipode: by_gen(&|g| h.format_element(&h.antipode_gen(g))),
            antipode_inverse,
        });
        for (name, chi) in &entry.characters {
            if chi.is_counit() {
                continue;
            }
            file.characters.insert(name.clone(), by_gen(&|g| format_scalar(&chi.gen_value(h, g), k)));
        }
        for (name, g) in &entry.group_likes {
            if g.is_one() {
                continue;
            }
            let def = InvertibleDef { element: h.format_element(&g.element), inverse: h.format_element(&g.inverse) };
            file.group_likes.insert(name.clone(), def);
        }
        file.modular_pairs = entry.modular_pairs.iter().map(|(c, g)| [c.clone(), g.clone()]).collect();
        if let Some(g) = &entry.lie {
            let n = g.dim();
            let mut brackets = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    let value: BTreeMap<String, String> = g
                        .bracket(i, j)
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(m, c)| (g.names()[m].clone(), format_scalar(c, k)))
                        .collect();
                    if !value.is_empty() {
                        brackets.push(BracketDef { left: g.names()[i].clone(), right: g.names()[j].clone(), value });
                    }
                }
            }
            file.lie = Some(LieDef {
                names: g.names().to_vec(),
                weights: g.weights().to_vec(),
                brackets,
            });
        }
        for (name, r) in &entry.r_matrices {
            let ribbon = r.ribbon.as_ref().map(|t| InvertibleDef {
                element: h.format_element(&t.element),
                inverse: h.format_element(&t.inverse),
            });
            file.r_matrices.insert(
                name.clone(),
                RMatrixDef { r: h.format_tensor(&r.r), r_inverse: h.format_tensor(&r.r_inverse), ribbon },
            );
        }
        file.square_roots = entry
            .square_roots
            .as_ref()
            .map(|s| SquareRootsDef { delta_half: s.delta_half.clone(), sigma_half: s.sigma_half.clone() });
        file
    }
}

/// Every `*.json` definition in a directory, in file-name order. A missing
/// directory is an empty catalog.
pub fn load_dir(dir: &Path) -> Result<Vec<CatalogEntry>> {
    if !dir.exists() {
        return Ok(Vec::new());
    }
    let mut paths: Vec<_> = std::fs::read_dir(dir)
        .map_err(|e| Error::Invalid(format!("{}: {e}", dir.display())))?
        .filter_map(|d| d.ok().map(|d| d.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    paths.iter().map(|p| AlgebraFile::read(p)?.build()).collect()
}
