//! Built-in algebras and Hopf algebras with their distinguished data.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{Algebra, AlgebraExt, Element, Gen, GenInfo, Presentation, Tensor, Word};
use crate::error::{Error, Result};
use crate::h1::{self, H1};
use crate::hopf::{Character, GroupLike, Hopf, HopfPresentation, ModularPair};
use crate::lie::{self, LieData};
use crate::scalar::Scalar;

/// Linear functional on an algebra, stored on normal-form basis words.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Functional {
    values: BTreeMap<Word, Scalar>,
}

impl Functional {
    pub fn new(values: BTreeMap<Word, Scalar>) -> Self {
        let values = values.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Functional { values }
    }

    pub fn values(&self) -> &BTreeMap<Word, Scalar> {
        &self.values
    }

    pub fn eval(&self, e: &Element) -> Scalar {
        let mut acc = Scalar::zero();
        for (w, c) in e.terms() {
            if let Some(v) = self.values.get(w) {
                acc += &(c * v);
            }
        }
        acc
    }

    /// Copy with one basis value replaced.
    pub fn with_value(&self, w: Word, c: Scalar) -> Self {
        let mut values = self.values.clone();
        values.insert(w, c);
        Functional::new(values)
    }
}

/// Action of a catalog Hopf algebra on generators of this algebra:
/// `table[h][a]` is the image of algebra generator `a` under Hopf
/// generator `h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionTable {
    pub hopf: String,
    pub table: Vec<Vec<Element>>,
}

/// Universal R-matrix with explicit inverse and optional ribbon element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RMatrixData {
    pub r: Tensor,
    pub r_inverse: Tensor,
    pub ribbon: Option<GroupLikePair>,
}

/// An invertible element with its inverse (not necessarily group-like).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupLikePair {
    pub element: Element,
    pub inverse: Element,
}

/// Square roots for the modular square: a group-like of `H` (name) and a
/// character of `H` (name).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareRoots {
    pub delta_half: String,
    pub sigma_half: String,
}

#[derive(Clone)]
pub enum Structure {
    Hopf(Arc<dyn Hopf>),
    Algebra(Arc<dyn Algebra>),
}

#[derive(Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub description: String,
    pub structure: Structure,
    pub characters: BTreeMap<String, Character>,
    pub group_likes: BTreeMap<String, GroupLike>,
    /// Shipped modular pairs as (character name, group-like name).
    pub modular_pairs: Vec<(String, String)>,
    pub lie: Option<LieData>,
    pub r_matrices: BTreeMap<String, RMatrixData>,
    pub square_roots: Option<SquareRoots>,
    pub trace: Option<Functional>,
    pub action: Option<ActionTable>,
    /// Set for entries whose structure is not expressible as finite tables.
    pub builtin: Option<String>,
}

impl CatalogEntry {
    pub(crate) fn new(name: &str, description: &str, structure: Structure) -> Self {
        CatalogEntry {
            name: name.to_string(),
            description: description.to_string(),
            structure,
            characters: BTreeMap::new(),
            group_likes: BTreeMap::new(),
            modular_pairs: Vec::new(),
            lie: None,
            r_matrices: BTreeMap::new(),
            square_roots: None,
            trace: None,
            action: None,
            builtin: None,
        }
    }

    pub(crate) fn hopf_entry(name: &str, description: &str, h: Arc<dyn Hopf>) -> Self {
        let mut e = CatalogEntry::new(name, description, Structure::Hopf(h));
        e.characters.insert("eps".into(), Character::counit());
        e.group_likes.insert("1".into(), GroupLike::one());
        e
    }

    pub fn algebra(&self) -> &dyn Algebra {
        match &self.structure {
            Structure::Hopf(h) => h.as_ref(),
            Structure::Algebra(a) => a.as_ref(),
        }
    }

    pub fn algebra_arc(&self) -> Arc<dyn Algebra> {
        match &self.structure {
            Structure::Hopf(h) => h.clone(),
            Structure::Algebra(a) => a.clone(),
        }
    }

    pub fn hopf(&self) -> Option<&dyn Hopf> {
        match &self.structure {
            Structure::Hopf(h) => Some(h.as_ref()),
            Structure::Algebra(_) => None,
        }
    }

    pub fn hopf_arc(&self) -> Option<Arc<dyn Hopf>> {
        match &self.structure {
            Structure::Hopf(h) => Some(h.clone()),
            Structure::Algebra(_) => None,
        }
    }

    pub fn require_hopf(&self) -> Result<&dyn Hopf> {
        self.hopf().ok_or_else(|| Error::Unsupported(format!("{} is not a Hopf algebra", self.name)))
    }

    pub fn character(&self, name: &str) -> Result<&Character> {
        self.characters
            .get(name)
            .ok_or_else(|| Error::UnknownName(format!("character {name:?} of {}", self.name)))
    }

    pub fn group_like(&self, name: &str) -> Result<&GroupLike> {
        self.group_likes
            .get(name)
            .ok_or_else(|| Error::UnknownName(format!("group-like {name:?} of {}", self.name)))
    }

    /// Resolve a pair written `delta,sigma`.
    pub fn pair(&self, spec: &str) -> Result<ModularPair> {
        let (d, s) = spec
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("modular pair {spec:?} is not of the form delta,sigma")))?;
        let h = self.require_hopf()?;
        ModularPair::new(h, self.character(d.trim())?.clone(), self.group_like(s.trim())?.clone())
    }

    /// The first shipped pair, or `(ε, 1)`.
    pub fn default_pair_name(&self) -> String {
        self.modular_pairs
            .first()
            .map(|(d, s)| format!("{d},{s}"))
            .unwrap_or_else(|| "eps,1".to_string())
    }

    pub fn dimension(&self) -> Option<usize> {
        self.algebra().finite_basis().ok().map(|b| b.len())
    }

    /// Character values on the Lie basis, for enveloping-algebra entries.
    pub fn lie_character(&self, name: &str) -> Result<Vec<Scalar>> {
        let g = self.lie.as_ref().ok_or_else(|| Error::Unsupported(format!("{} has no Lie data", self.name)))?;
        let h = self.require_hopf()?;
        let chi = self.character(name)?;
        Ok((0..g.dim() as Gen).map(|i| chi.gen_value(h, i)).collect())
    }
}

pub const BUILTIN_NAMES: &[&str] = &[
    "ground-field",
    "h1",
    "sweedler",
    "taft-3",
    "u-abelian-1",
    "u-abelian-2",
    "u-heisenberg",
    "u-affine-1",
    "poly-unipotent-heisenberg",
    "group-z2",
    "group-klein",
    "group-s3",
    "laurent-z1",
    "laurent-z2",
    "nc-torus-2",
    "nc-torus-3",
    "m2",
];

/// Build a built-in entry; `taft-N` and `nc-torus-N` accept any `N ≥ 2`.
pub fn build(name: &str) -> Result<CatalogEntry> {
    if let Some(n) = name.strip_prefix("taft-") {
        return build_taft(parse_order(n, name)?);
    }
    if let Some(n) = name.strip_prefix("nc-torus-") {
        return build_nc_torus(parse_order(n, name)?);
    }
    match name {
        "ground-field" => build_ground_field(),
        "h1" => Ok(build_h1()),
        "sweedler" => build_sweedler(),
        "u-abelian-1" => build_ug("u-abelian-1", &LieData::abelian(1), &[]),
        "u-abelian-2" => build_ug("u-abelian-2", &LieData::abelian(2), &[]),
        "u-heisenberg" => {
            let g = LieData::new(&["e1", "e2", "e3"], &[1, 1, 2], &[(0, 1, vec![(2, Scalar::one())])])?;
            build_ug("u-heisenberg", &g, &[])
        }
        "u-affine-1" => {
            // [Y, X] = X with X before Y in PBW order
            let g = LieData::new(&["X", "Y"], &[1, 1], &[(0, 1, vec![(0, Scalar::from_int(-1))])])?;
            build_ug("u-affine-1", &g, &[("delta", vec![Scalar::zero(), Scalar::one()])])
        }
        "poly-unipotent-heisenberg" => build_poly_unipotent_heisenberg(),
        "group-z2" => build_group_algebra("group-z2", &cyclic_group(2)),
        "group-klein" => build_group_algebra("group-klein", &klein_group()),
        "group-s3" => build_group_algebra("group-s3", &symmetric_group_3()),
        "laurent-z1" => build_laurent(1),
        "laurent-z2" => build_laurent(2),
        "m2" => build_m2(),
        _ => Err(Error::UnknownName(format!("catalog entry {name:?}"))),
    }
}

fn parse_order(n: &str, name: &str) -> Result<u32> {
    let m: u32 = n.parse().map_err(|_| Error::UnknownName(format!("catalog entry {name:?}")))?;
    if m < 2 {
        return Err(Error::Invalid(format!("{name}: order must be at least 2")));
    }
    Ok(m)
}

fn gens(names: &[&str], weights: &[u32]) -> Vec<GenInfo> {
    names.iter().zip(weights).map(|(n, w)| GenInfo { name: n.to_string(), weight: *w }).collect()
}

fn mono(w: &[Gen]) -> Element {
    Element::monomial(w.to_vec())
}

fn term(w: &[Gen], c: Scalar) -> Element {
    Element::term(w.to_vec(), c)
}

fn t2(a: &[Gen], b: &[Gen]) -> Tensor {
    Tensor::basis(vec![a.to_vec(), b.to_vec()])
}

fn primitive(g: Gen) -> Tensor {
    t2(&[g], &[]).add(&t2(&[], &[g]))
}

pub fn build_ground_field() -> Result<CatalogEntry> {
    let alg = Presentation::new("ground-field", 1, Vec::new(), Vec::new())?;
    let h = HopfPresentation::new(alg, Vec::new(), Vec::new(), Vec::new(), Some(Vec::new()))?;
    let mut e = CatalogEntry::hopf_entry("ground-field", "the ground field as a Hopf algebra", Arc::new(h));
    e.modular_pairs.push(("eps".into(), "1".into()));
    e.trace = Some(Functional::new(BTreeMap::from([(Word::new(), Scalar::one())])));
    Ok(e)
}

pub fn build_h1() -> CatalogEntry {
    let h = Arc::new(H1::new());
    let mut e = CatalogEntry::hopf_entry(
        "h1",
        "codimension-one transverse Hopf algebra on Y, X, d_n with modular pair (delta, 1)",
        h,
    );
    e.characters.insert("delta".into(), Character::from_values(BTreeMap::from([(h1::Y, Scalar::one())])));
    e.modular_pairs.push(("delta".into(), "1".into()));
    e.builtin = Some("h1".into());
    e
}

/// `U(g)` with extra characters given by their values on the basis.
pub fn build_ug(name: &str, g: &LieData, characters: &[(&str, Vec<Scalar>)]) -> Result<CatalogEntry> {
    let h = lie::enveloping_algebra(g, name)?;
    let mut e = CatalogEntry::hopf_entry(name, &format!("enveloping algebra of a {}-dimensional Lie algebra", g.dim()), Arc::new(h));
    e.modular_pairs.push(("eps".into(), "1".into()));
    for (cname, values) in characters {
        g.check_character(values)?;
        let map = values.iter().enumerate().map(|(i, v)| (i as Gen, v.clone())).collect();
        e.characters.insert(cname.to_string(), Character::from_values(map));
        e.modular_pairs.push((cname.to_string(), "1".into()));
    }
    e.lie = Some(g.clone());
    Ok(e)
}

/// Taft algebra of order `n`: `g^n = 1`, `x^n = 0`, `xg = ζ gx`,
/// `Δx = x⊗1 + g⊗x`, `S(x) = -g⁻¹x`.
fn taft_presentation(name: &str, n: u32) -> Result<HopfPresentation> {
    let (g, x) = (0, 1);
    let zeta = Scalar::root_of_unity(n, 1);
    let rules = vec![
        (vec![g; n as usize], Element::one()),
        (vec![x; n as usize], Element::zero()),
        (vec![x, g], term(&[g, x], zeta)),
    ];
    let conductor = if n == 2 { 1 } else { n };
    let alg = Presentation::new(name, conductor, gens(&["g", "x"], &[1, 1]), rules)?;
    let ginv = vec![g; n as usize - 1];
    let mut ginv_x = ginv.clone();
    ginv_x.push(x);
    let mut x_ginv = vec![x];
    x_ginv.extend(&ginv);
    HopfPresentation::new(
        alg,
        vec![t2(&[g], &[g]), t2(&[x], &[]).add(&t2(&[g], &[x]))],
        vec![Scalar::one(), Scalar::zero()],
        vec![mono(&ginv), term(&ginv_x, Scalar::from_int(-1))],
        // S(-x g⁻¹) = x, so S⁻¹(x) = -x g⁻¹
        Some(vec![mono(&ginv), term(&x_ginv, Scalar::from_int(-1))]),
    )
}

pub fn build_sweedler() -> Result<CatalogEntry> {
    let h = Arc::new(taft_presentation("sweedler", 2)?);
    let (g, x) = (0, 1);
    let mut e = CatalogEntry::hopf_entry("sweedler", "Sweedler's four-dimensional Hopf algebra", h);
    e.group_likes.insert("g".into(), GroupLike { element: mono(&[g]), inverse: mono(&[g]) });
    e.characters.insert(
        "chi".into(),
        Character::from_values(BTreeMap::from([(g, Scalar::from_int(-1)), (x, Scalar::zero())])),
    );
    e.modular_pairs.push(("eps".into(), "g".into()));
    let half = Scalar::from_frac(1, 2);
    // R = ½(1⊗1 + 1⊗g + g⊗1 - g⊗g), self-inverse and symmetric
    let r = t2(&[], &[])
        .add(&t2(&[], &[g]))
        .add(&t2(&[g], &[]))
        .sub(&t2(&[g], &[g]))
        .scale(&half);
    e.r_matrices.insert(
        "r0".into(),
        RMatrixData {
            r: r.clone(),
            r_inverse: r.clone(),
            ribbon: Some(GroupLikePair { element: Element::one(), inverse: Element::one() }),
        },
    );
    // R₁ = R₀ + ½(x⊗x - x⊗gx + gx⊗x + gx⊗gx), with inverse R₁ flipped
    let nil = t2(&[x], &[x])
        .sub(&t2(&[x], &[g, x]))
        .add(&t2(&[g, x], &[x]))
        .add(&t2(&[g, x], &[g, x]))
        .scale(&half);
    let r1 = r.add(&nil);
    let mut r1_flipped = Tensor::zero(2);
    for (k, c) in r1.terms() {
        r1_flipped.add_term(vec![k[1].clone(), k[0].clone()], c);
    }
    e.r_matrices.insert(
        "r1".into(),
        RMatrixData {
            r: r1,
            r_inverse: r1_flipped,
            ribbon: Some(GroupLikePair { element: Element::one(), inverse: Element::one() }),
        },
    );
    e.square_roots = Some(SquareRoots { delta_half: "g".into(), sigma_half: "chi".into() });
    Ok(e)
}

pub fn build_taft(n: u32) -> Result<CatalogEntry> {
    let name = format!("taft-{n}");
    let h = Arc::new(taft_presentation(&name, n)?);
    let (g, x) = (0, 1);
    let ginv = vec![g; n as usize - 1];
    let mut e = CatalogEntry::hopf_entry(&name, &format!("Taft algebra of dimension {}", n * n), h);
    e.group_likes.insert("g".into(), GroupLike { element: mono(&[g]), inverse: mono(&ginv) });
    e.group_likes.insert("ginv".into(), GroupLike { element: mono(&ginv), inverse: mono(&[g]) });
    e.characters.insert(
        "chi".into(),
        Character::from_values(BTreeMap::from([(g, Scalar::root_of_unity(n, 1)), (x, Scalar::zero())])),
    );
    e.modular_pairs.push(("eps".into(), "ginv".into()));
    Ok(e)
}

pub fn build_poly_unipotent_heisenberg() -> Result<CatalogEntry> {
    let (a, b, c) = (0, 1, 2);
    let rules = vec![(vec![b, a], mono(&[a, b])), (vec![c, a], mono(&[a, c])), (vec![c, b], mono(&[b, c]))];
    let alg = Presentation::new("poly-unipotent-heisenberg", 1, gens(&["a", "b", "c"], &[1, 1, 2]), rules)?;
    let h = HopfPresentation::new(
        alg,
        vec![primitive(a), primitive(b), primitive(c).add(&t2(&[a], &[b]))],
        vec![Scalar::zero(); 3],
        vec![
            term(&[a], Scalar::from_int(-1)),
            term(&[b], Scalar::from_int(-1)),
            term(&[c], Scalar::from_int(-1)).add(&mono(&[a, b])),
        ],
        Some(vec![
            term(&[a], Scalar::from_int(-1)),
            term(&[b], Scalar::from_int(-1)),
            term(&[c], Scalar::from_int(-1)).add(&mono(&[a, b])),
        ]),
    )?;
    let mut e = CatalogEntry::hopf_entry(
        "poly-unipotent-heisenberg",
        "polynomial functions on the unipotent 3x3 group",
        Arc::new(h),
    );
    e.modular_pairs.push(("eps".into(), "1".into()));
    Ok(e)
}

/// A finite group by element names and a multiplication table; index 0 is
/// the identity.
#[derive(Clone, Debug)]
pub struct GroupTable {
    pub names: Vec<String>,
    pub table: Vec<Vec<usize>>,
}

impl GroupTable {
    fn validate(&self) -> Result<Vec<usize>> {
        let n = self.names.len();
        let bad = |what: &str, witness: String| Error::Rejected { what: what.into(), witness };
        if self.table.len() != n || self.table.iter().any(|r| r.len() != n || r.iter().any(|x| *x >= n)) {
            return Err(Error::Invalid("group table must be n x n with entries below n".into()));
        }
        for a in 0..n {
            if self.table[0][a] != a || self.table[a][0] != a {
                return Err(bad("index 0 is not the identity", self.names[a].clone()));
            }
            for b in 0..n {
                for c in 0..n {
                    if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]] {
                        return Err(bad(
                            "group table is not associative",
                            format!("({}, {}, {})", self.names[a], self.names[b], self.names[c]),
                        ));
                    }
                }
            }
        }
        (0..n)
            .map(|a| (0..n).find(|b| self.table[a][*b] == 0).ok_or_else(|| bad("element has no inverse", self.names[a].clone())))
            .collect()
    }
}

pub fn cyclic_group(n: usize) -> GroupTable {
    let names = (0..n).map(|i| if i == 0 { "e".to_string() } else { format!("c{i}") }).collect();
    let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    GroupTable { names, table }
}

pub fn klein_group() -> GroupTable {
    let names = ["e", "a", "b", "ab"].iter().map(|s| s.to_string()).collect();
    let table = (0..4).map(|x: usize| (0..4).map(|y: usize| x ^ y).collect()).collect();
    GroupTable { names, table }
}

pub fn symmetric_group_3() -> GroupTable {
    // permutations of {0,1,2}; r is the 3-cycle, s a transposition
    let r = [1usize, 2, 0];
    let s = [1usize, 0, 2];
    let compose = |p: &[usize; 3], q: &[usize; 3]| -> [usize; 3] { [p[q[0]], p[q[1]], p[q[2]]] };
    let id = [0usize, 1, 2];
    let r2 = compose(&r, &r);
    let elems = [id, r, r2, s, compose(&s, &r), compose(&s, &r2)];
    let names = ["e", "r", "r2", "s", "sr", "sr2"].iter().map(|s| s.to_string()).collect();
    let table = elems
        .iter()
        .map(|p| elems.iter().map(|q| elems.iter().position(|x| *x == compose(p, q)).unwrap()).collect())
        .collect();
    GroupTable { names, table }
}

/// Group algebra with the non-identity elements as generators.
pub fn build_group_algebra(name: &str, group: &GroupTable) -> Result<CatalogEntry> {
    let inverses = group.validate()?;
    let n = group.names.len();
    let word = |i: usize| -> Word { if i == 0 { Vec::new() } else { vec![(i - 1) as Gen] } };
    let gen_names: Vec<&str> = group.names[1..].iter().map(String::as_str).collect();
    let mut rules = Vec::new();
    for a in 1..n {
        for b in 1..n {
            rules.push((vec![(a - 1) as Gen, (b - 1) as Gen], Element::monomial(word(group.table[a][b]))));
        }
    }
    let alg = Presentation::new(name, 1, gens(&gen_names, &vec![1; n - 1]), rules)?;
    let elem = |i: usize| Element::monomial(word(i));
    let antipode: Vec<Element> = (1..n).map(|a| elem(inverses[a])).collect();
    let h = HopfPresentation::new(
        alg,
        (1..n).map(|a| t2(&word(a), &word(a))).collect(),
        vec![Scalar::one(); n - 1],
        antipode.clone(),
        Some(antipode),
    )?;
    let mut e = CatalogEntry::hopf_entry(name, &format!("group algebra of a group of order {n}"), Arc::new(h));
    for a in 1..n {
        e.group_likes.insert(group.names[a].clone(), GroupLike { element: elem(a), inverse: elem(inverses[a]) });
    }
    e.modular_pairs.push(("eps".into(), "1".into()));
    // coefficient of the identity is a trace
    e.trace = Some(Functional::new(BTreeMap::from([(Word::new(), Scalar::one())])));
    Ok(e)
}

const LAURENT_NAMES: [&str; 3] = ["U", "V", "W"];

/// Group algebra of `Z^d` with generators `U, Ui, V, Vi, …`; normal words
/// are `U^a V^b …` with each exponent written using `U` or `Ui`.
pub fn build_laurent(d: usize) -> Result<CatalogEntry> {
    if d == 0 || d > LAURENT_NAMES.len() {
        return Err(Error::Invalid(format!("Laurent rank {d} not supported")));
    }
    let name = format!("laurent-z{d}");
    let mut names = Vec::new();
    for base in &LAURENT_NAMES[..d] {
        names.push(base.to_string());
        names.push(format!("{base}i"));
    }
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let mut rules = Vec::new();
    for i in 0..d as Gen {
        let (p, q) = (2 * i, 2 * i + 1);
        rules.push((vec![p, q], Element::one()));
        rules.push((vec![q, p], Element::one()));
        for j in 0..i {
            for a in [2 * i, 2 * i + 1] {
                for b in [2 * j, 2 * j + 1] {
                    rules.push((vec![a, b], mono(&[b, a])));
                }
            }
        }
    }
    let alg = Presentation::new(&name, 1, gens(&refs, &vec![1; 2 * d]), rules)?;
    let partner = |g: Gen| g ^ 1;
    let h = HopfPresentation::new(
        alg,
        (0..2 * d as Gen).map(|g| t2(&[g], &[g])).collect(),
        vec![Scalar::one(); 2 * d],
        (0..2 * d as Gen).map(|g| mono(&[partner(g)])).collect(),
        Some((0..2 * d as Gen).map(|g| mono(&[partner(g)])).collect()),
    )?;
    let mut e = CatalogEntry::hopf_entry(&name, &format!("group algebra of Z^{d}"), Arc::new(h));
    for g in 0..2 * d as Gen {
        e.group_likes.insert(names[g as usize].clone(), GroupLike { element: mono(&[g]), inverse: mono(&[partner(g)]) });
    }
    e.modular_pairs.push(("eps".into(), "1".into()));
    e.trace = Some(Functional::new(BTreeMap::from([(Word::new(), Scalar::one())])));
    Ok(e)
}

/// Rational noncommutative torus at an `m`-th root of unity:
/// `U^m = V^m = 1`, `VU = ζ UV`, trace picking the coefficient of 1, and
/// the action of `U(abelian dim 2)` by the commuting inner derivations
/// `ad(V)` and `ad(V^{m-1})`.
pub fn build_nc_torus(m: u32) -> Result<CatalogEntry> {
    let name = format!("nc-torus-{m}");
    let (u, v) = (0, 1);
    let zeta = Scalar::root_of_unity(m, 1);
    let conductor = if m == 2 { 1 } else { m };
    let rules = vec![
        (vec![u; m as usize], Element::one()),
        (vec![v; m as usize], Element::one()),
        (vec![v, u], term(&[u, v], zeta.clone())),
    ];
    let alg = Arc::new(Presentation::new(&name, conductor, gens(&["U", "V"], &[1, 1]), rules)?);
    let mut e = CatalogEntry::new(
        &name,
        &format!("noncommutative torus at a primitive {m}-th root of unity, dimension {}", m * m),
        Structure::Algebra(alg.clone()),
    );
    e.trace = Some(Functional::new(BTreeMap::from([(Word::new(), Scalar::one())])));
    let ad = |x: &Element, y: &Element| alg.commutator(x, y);
    let vpow = alg.pow(&mono(&[v]), m - 1);
    let (eu, ev) = (mono(&[u]), mono(&[v]));
    e.action = Some(ActionTable {
        hopf: "u-abelian-2".into(),
        table: vec![vec![ad(&ev, &eu), ad(&ev, &ev)], vec![ad(&vpow, &eu), ad(&vpow, &ev)]],
    });
    Ok(e)
}

/// `M_2(k)` with `e = E12`, `f = E21`: `e² = f² = 0`, `fe = 1 - ef`.
pub fn build_m2() -> Result<CatalogEntry> {
    let (e_, f_) = (0, 1);
    let rules = vec![
        (vec![e_, e_], Element::zero()),
        (vec![f_, f_], Element::zero()),
        (vec![f_, e_], Element::one().sub(&mono(&[e_, f_]))),
    ];
    let alg = Arc::new(Presentation::new("m2", 1, gens(&["e", "f"], &[1, 1]), rules)?);
    let mut entry = CatalogEntry::new("m2", "2x2 matrices, e = E12 and f = E21", Structure::Algebra(alg));
    entry.trace = Some(Functional::new(BTreeMap::from([
        (Word::new(), Scalar::from_int(2)),
        (vec![e_, f_], Scalar::one()),
    ])));
    Ok(entry)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_element;

    #[test]
    fn sweedler_has_dimension_four() {
        let e = build("sweedler").unwrap();
        let basis = e.algebra().finite_basis().unwrap();
        assert_eq!(basis, vec![vec![], vec![0], vec![1], vec![0, 1]]);
    }

    #[test]
    fn affine_products() {
        let e = build("u-affine-1").unwrap();
        let a = e.algebra();
        assert_eq!(a.mul(&a.gen(0), &a.gen(1)), mono(&[0, 1]));
        assert_eq!(a.mul(&a.gen(1), &a.gen(0)), mono(&[0, 1]).add(&mono(&[0])));
    }

    #[test]
    fn nc_torus_relation() {
        let e = build("nc-torus-3").unwrap();
        let a = e.algebra();
        assert_eq!(a.mul(&a.gen(1), &a.gen(0)), term(&[0, 1], Scalar::root_of_unity(3, 1)));
        assert_eq!(e.dimension(), Some(9));
    }

    #[test]
    fn m2_matrix_units() {
        let e = build("m2").unwrap();
        let a = e.algebra();
        let e11 = parse_element(a, "e*f").unwrap();
        assert_eq!(a.mul(&e11, &e11), e11);
        assert_eq!(e.trace.as_ref().unwrap().eval(&e11), Scalar::one());
        assert_eq!(e.dimension(), Some(4));
    }

    #[test]
    fn s3_is_nonabelian() {
        let e = build("group-s3").unwrap();
        let a = e.algebra();
        let (r, s) = (a.gen_by_name("r").unwrap(), a.gen_by_name("s").unwrap());
        assert_ne!(a.mul(&a.gen(r), &a.gen(s)), a.mul(&a.gen(s), &a.gen(r)));
        assert_eq!(e.dimension(), Some(6));
    }

    #[test]
    fn bad_group_table_rejected() {
        let mut g = cyclic_group(3);
        g.table[1][1] = 1;
        assert!(build_group_algebra("bad", &g).is_err());
    }
}
