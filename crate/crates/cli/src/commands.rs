use std::path::Path;
use std::sync::Arc;

use hopf_cyclic::catalog::{self, CatalogEntry, BUILTIN_NAMES};
use hopf_cyclic::charmap::{
    group_cocycle_to_cyclic, pairing, AlgebraMatrix, CharacteristicMap, GroupCocycle, HopfAction, Lattice,
    TracedAlgebra,
};
use hopf_cyclic::cyclic::{verify_lambda_relations, AlgebraCochain, AlgebraCyclicModule, HopfCyclicModule};
use hopf_cyclic::expr::parse_element;
use hopf_cyclic::homology::{parity_sum, TruncatedComplex, WeightCut};
use hopf_cyclic::hopf::{check_hopf_axioms, check_modular_pair};
use hopf_cyclic::modular::{
    drinfeld_element, ribbon_mpi, square_roots_for, square_roots_from_catalog, verify_drinfeld,
    verify_quasitriangular, ModularSquare,
};
use hopf_cyclic::report::ComputationRecord;
use hopf_cyclic::schema::{load_dir, AlgebraFile};
use hopf_cyclic::{lie, AlgebraExt, HopfExt, Element, Error, Report, Result, Scalar, Tensor};

use crate::output::{print_stdout, Run, PASS};
use crate::{CatalogCommand, Cli, Command, Format, HcArgs, Oracle, PairArgs, Suite, VerifyArgs};

pub fn run(cli: &Cli) -> u8 {
    match &cli.command {
        Command::Catalog { action } => catalog_command(cli, action),
        Command::Verify(args) => {
            let mut run = Run::new("verify", cli.timing);
            record_verify_args(&mut run, args);
            let result = verify(cli, args, &mut run);
            finish(&run, result)
        }
        Command::Hc(args) => {
            let mut run = Run::new("hc", cli.timing);
            record_hc_args(&mut run, args);
            let result = hc(cli, args, &mut run);
            finish(&run, result)
        }
        Command::Pair(args) => {
            let mut run = Run::new("pair", cli.timing);
            run.arg("algebra", &args.algebra);
            run.arg("cocycle", &args.cocycle);
            run.arg("idempotent", &args.idempotent);
            run.arg("samples", args.samples);
            run.arg("seed", args.seed);
            let result = pair(cli, args, &mut run);
            finish(&run, result)
        }
    }
}

fn finish(run: &Run, result: Result<Report>) -> u8 {
    match result {
        Ok(report) => run.finish(&report),
        Err(e) => run.fail_with(&e, Report::new()),
    }
}

/// Catalog name, user entry, or path to a definition file.
fn resolve(cli: &Cli, name: &str) -> Result<CatalogEntry> {
    let path = Path::new(name);
    if name.ends_with(".json") || path.is_file() {
        return AlgebraFile::read(path)?.build();
    }
    if let Some(dir) = &cli.catalog_dir {
        if let Some(e) = load_dir(dir)?.into_iter().find(|e| e.name == name) {
            return Ok(e);
        }
    }
    catalog::build(name)
}

fn load(cli: &Cli, name: &str, run: &mut Run) -> Result<CatalogEntry> {
    let entry = resolve(cli, name)?;
    run.input(&AlgebraFile::from_entry(&entry).to_json());
    Ok(entry)
}

fn catalog_command(cli: &Cli, action: &CatalogCommand) -> u8 {
    let result = (|| -> Result<()> {
        match action {
            CatalogCommand::List { format } => {
                let mut entries: Vec<CatalogEntry> =
                    BUILTIN_NAMES.iter().map(|n| catalog::build(n)).collect::<Result<_>>()?;
                if let Some(dir) = &cli.catalog_dir {
                    entries.extend(load_dir(dir)?);
                }
                match format {
                    Format::Text => {
                        let width = entries.iter().map(|e| e.name.len()).max().unwrap_or(0);
                        for e in &entries {
                            let dim = e.dimension().map_or_else(|| "inf".to_string(), |d| d.to_string());
                            let pairs: Vec<String> = e.modular_pairs.iter().map(|(d, s)| format!("({d},{s})")).collect();
                            print_stdout(&format!(
                                "{:width$}  {:7}  dim {:>3}  {:18}  {}",
                                e.name,
                                kind(e),
                                dim,
                                pairs.join(" "),
                                e.description
                            ));
                        }
                    }
                    Format::Json => {
                        let list: Vec<serde_json::Value> = entries.iter().map(summary).collect();
                        print_stdout(&serde_json::to_string_pretty(&list).expect("catalog serializes"));
                    }
                }
            }
            CatalogCommand::Export { algebra } => {
                print_stdout(&AlgebraFile::from_entry(&resolve(cli, algebra)?).to_json());
            }
        }
        Ok(())
    })();
    match result {
        Ok(()) => PASS,
        Err(e) => {
            eprintln!("hcyc: {e}");
            crate::output::exit_code(&e)
        }
    }
}

fn kind(e: &CatalogEntry) -> &'static str {
    if e.hopf().is_some() {
        "hopf"
    } else {
        "algebra"
    }
}

fn summary(e: &CatalogEntry) -> serde_json::Value {
    serde_json::json!({
        "name": e.name,
        "provenance": if e.builtin.is_some() || BUILTIN_NAMES.contains(&e.name.as_str()) { "built-in" } else { "user" },
        "kind": kind(e),
        "description": e.description,
        "dimension": e.dimension(),
        "modular_pairs": e.modular_pairs.iter().map(|(d, s)| format!("{d},{s}")).collect::<Vec<_>>(),
        "r_matrices": e.r_matrices.keys().collect::<Vec<_>>(),
        "trace": e.trace.is_some(),
        "action": e.action.as_ref().map(|a| a.hopf.clone()),
    })
}

fn record_verify_args(run: &mut Run, a: &VerifyArgs) {
    run.arg("algebra", &a.algebra);
    run.arg("suite", format!("{:?}", a.suite).to_lowercase());
    run.arg("cutoff", a.cutoff);
    run.arg("n_max", a.n_max);
    run.arg("samples", a.samples);
    run.arg("seed", a.seed);
    for (k, v) in [("pair", &a.pair), ("r_matrix", &a.r_matrix), ("roots", &a.roots)] {
        if let Some(v) = v {
            run.arg(k, v);
        }
    }
    if let Some(w) = a.weight {
        run.arg("weight", w);
    }
}

fn pair_name(entry: &CatalogEntry, given: &Option<String>) -> String {
    given.clone().unwrap_or_else(|| entry.default_pair_name())
}

fn verify(cli: &Cli, a: &VerifyArgs, run: &mut Run) -> Result<Report> {
    let entry = load(cli, &a.algebra, run)?;
    let mut report = Report::new();
    match a.suite {
        Suite::Hopf => report.merge(check_hopf_axioms(entry.require_hopf()?, a.cutoff)),
        Suite::Mpi => {
            let pair = entry.pair(&pair_name(&entry, &a.pair))?;
            report.merge(check_modular_pair(entry.require_hopf()?, &pair, a.cutoff));
        }
        Suite::Lambda => match entry.hopf_arc() {
            Some(h) => {
                let pair = entry.pair(&pair_name(&entry, &a.pair))?;
                let mut m = HopfCyclicModule::new(h, pair);
                if let Some(w) = a.weight {
                    m = m.with_sample_weight(w);
                }
                report.merge(verify_lambda_relations(&m, a.n_max, a.samples, a.seed));
            }
            None => {
                let m = AlgebraCyclicModule::new(entry.algebra_arc(), a.weight.unwrap_or(2));
                report.merge(verify_lambda_relations(&m, a.n_max, a.samples, a.seed));
            }
        },
        Suite::Action => {
            let map = characteristic_map(cli, &entry, &a.pair, run)?;
            report.merge(map.action().verify(a.cutoff, a.samples, a.seed));
            report.merge(map.verify(a.n_max, a.samples, a.seed));
        }
        Suite::Ribbon => {
            let h = entry.require_hopf()?;
            if entry.r_matrices.is_empty() {
                return Err(Error::Unsupported(format!("{} ships no R-matrix", entry.name)));
            }
            for (name, data) in &entry.r_matrices {
                if a.r_matrix.as_ref().is_some_and(|r| r != name) {
                    continue;
                }
                let mut part = verify_quasitriangular(h, data, a.cutoff.min(1));
                match drinfeld_element(h, data) {
                    Ok(d) => part.merge(verify_drinfeld(h, data, &d, a.cutoff.min(1))),
                    Err(e) => part.check("drinfeld element", "u = Σ S(t) s invertible", Some(e.to_string())),
                }
                match ribbon_mpi(h, data, a.cutoff) {
                    Ok((pair, r)) => {
                        part.merge(r);
                        part.compute(ComputationRecord {
                            quantity: "ribbon modular pair".into(),
                            labels: vec![],
                            values: vec![pair.delta.describe(h), h.format_element(&pair.sigma.element)],
                            stable: None,
                        });
                    }
                    Err(Error::Rejected { what, witness }) => part.check(what, "ribbon modular pair", Some(witness)),
                    Err(e) => part.skip("ribbon modular pair", "σ = θ⁻¹u", e.to_string()),
                }
                for c in &mut part.checks {
                    c.name = format!("{name}: {}", c.name);
                }
                report.merge(part);
            }
            if report.checks.is_empty() {
                return Err(Error::UnknownName(format!("R-matrix {:?}", a.r_matrix.clone().unwrap_or_default())));
            }
        }
        Suite::Square => {
            let (base, roots) = match &a.roots {
                None => square_roots_from_catalog(&entry)?,
                Some(spec) => {
                    let (d, s) = spec
                        .split_once(',')
                        .ok_or_else(|| Error::Parse(format!("roots {spec:?} are not of the form group-like,character")))?;
                    square_roots_for(&entry, entry.group_like(d.trim())?, entry.character(s.trim())?)?
                }
            };
            let sq = ModularSquare::new(&base, roots)?;
            let show = |c: Option<Scalar>| c.map_or_else(|| "not scalar".to_string(), |c| c.to_string());
            report.compute(ComputationRecord {
                quantity: "root pairing".into(),
                labels: vec![],
                values: vec![sq.pairing().to_string()],
                stable: None,
            });
            report.compute(ComputationRecord {
                quantity: "per-factor scalars".into(),
                labels: vec![("factors".into(), "dual, dual opposite".into())],
                values: vec![show(sq.factor_scalar()), show(sq.opposite_factor_scalar())],
                stable: None,
            });
            report.merge(sq.verify());
        }
    }
    Ok(report)
}

/// Characteristic map of the action shipped with `entry`.
fn characteristic_map(cli: &Cli, entry: &CatalogEntry, pair: &Option<String>, run: &mut Run) -> Result<CharacteristicMap> {
    let table = entry
        .action
        .as_ref()
        .ok_or_else(|| Error::Unsupported(format!("{} has no Hopf action", entry.name)))?;
    let trace = entry
        .trace
        .clone()
        .ok_or_else(|| Error::Unsupported(format!("{} has no trace", entry.name)))?;
    let acting = load(cli, &table.hopf, run)?;
    let action = HopfAction::from_catalog(&acting, entry)?;
    let traced = TracedAlgebra::new(entry.algebra_arc(), trace);
    let pair = acting.pair(&pair_name(&acting, pair))?;
    Ok(CharacteristicMap::new(Arc::new(action), Arc::new(traced), pair))
}

fn record_hc_args(run: &mut Run, a: &HcArgs) {
    run.arg("algebra", &a.algebra);
    run.arg("max_degree", a.max_degree);
    if let Some(p) = &a.pair {
        run.arg("pair", p);
    }
    if let Some(w) = a.weight {
        run.arg("weight", w);
    }
    run.arg("graded", a.graded);
    run.arg("algebra_mode", a.algebra_mode);
    run.arg("full", a.full);
    if a.oracle.is_some() {
        run.arg("oracle", "lie");
    }
}

const DEFAULT_WEIGHT: u32 = 3;

fn hc(cli: &Cli, a: &HcArgs, run: &mut Run) -> Result<Report> {
    let entry = load(cli, &a.algebra, run)?;
    let hopf_mode = entry.hopf().is_some() && !a.algebra_mode;
    // infinite-dimensional Hopf algebras are cut at weight 3 unless told otherwise
    let weight = a.weight.or_else(|| (hopf_mode && entry.dimension().is_none()).then_some(DEFAULT_WEIGHT));
    if a.weight.is_none() {
        if let Some(w) = weight {
            run.arg("weight", w);
        }
    }
    let cut = weight.map(|w| if a.graded { WeightCut::Exactly(w) } else { WeightCut::AtMost(w) });
    let complex = match entry.hopf_arc() {
        Some(h) if hopf_mode => {
            let pair = entry.pair(&pair_name(&entry, &a.pair))?;
            let module = HopfCyclicModule::checked(h.clone(), pair, weight.unwrap_or(DEFAULT_WEIGHT).max(1))?;
            // normalized cochains need a monomial basis of ker ε
            let words = match weight {
                Some(w) => h.monomials_up_to(w),
                None => h.finite_basis()?,
            };
            let augmented = words.iter().all(|w| w.is_empty() || h.counit_word(w).is_zero());
            if !augmented && !a.full {
                run.arg("full", true);
            }
            TruncatedComplex::hopf(&module, a.max_degree, cut, augmented && !a.full)?
        }
        _ => {
            if cut.is_some() {
                return Err(Error::Unsupported("weight cuts apply to Hopf-cyclic complexes only".into()));
            }
            TruncatedComplex::algebra(entry.algebra(), a.max_degree, !a.full)?
        }
    };
    let mut report = Report::new();
    let dims = complex.cohomology()?;
    for d in &dims {
        report.compute(ComputationRecord {
            quantity: "HC".into(),
            labels: vec![("degree".into(), d.degree.to_string()), ("complex".into(), complex.label().to_string())],
            values: vec![d.dim.to_string()],
            stable: Some(d.stable),
        });
    }
    report.compute(ComputationRecord {
        quantity: "HH".into(),
        labels: vec![("degrees".into(), format!("0..={}", a.max_degree))],
        values: complex.hochschild_dims()?.iter().map(|d| d.to_string()).collect(),
        stable: None,
    });
    if a.oracle == Some(Oracle::Lie) {
        let g = entry
            .lie
            .as_ref()
            .ok_or_else(|| Error::Unsupported(format!("{} is not an enveloping algebra", entry.name)))?;
        let pair_spec = pair_name(&entry, &a.pair);
        let (delta_name, sigma_name) = pair_spec.split_once(',').unwrap_or((&pair_spec, "1"));
        if sigma_name.trim() != "1" {
            return Err(Error::Unsupported("the Lie oracle needs σ = 1".into()));
        }
        let filter = match cut {
            Some(WeightCut::Exactly(_)) => return Err(Error::Unsupported("the Lie oracle needs a weight bound, not a grading".into())),
            Some(WeightCut::AtMost(w)) => Some(w),
            None => None,
        };
        let ce = lie::ce_homology_filtered(g, &entry.lie_character(delta_name.trim())?, filter)?;
        report.compute(ComputationRecord {
            quantity: "Lie algebra homology".into(),
            labels: vec![("degrees".into(), format!("0..={}", g.dim()))],
            values: ce.iter().map(|d| d.to_string()).collect(),
            stable: None,
        });
        for d in &dims {
            let expected = parity_sum(&ce, d.degree);
            let name = format!("lie oracle degree {}", d.degree);
            let identity = "HC^n = sum of H_k(g; delta) over k of the parity of n";
            if !d.stable {
                report.skip(name, identity, "degree not yet stable");
            } else if d.dim == expected {
                report.check(name, identity, None);
            } else {
                report.check(name, identity, Some(format!("HC = {}, Lie side = {expected}", d.dim)));
            }
        }
    }
    if let Some(dir) = &a.export {
        std::fs::create_dir_all(dir).map_err(|e| Error::Invalid(format!("{}: {e}", dir.display())))?;
        for (name, text) in complex.export() {
            let path = dir.join(format!("{name}.txt"));
            std::fs::write(&path, text).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
        }
    }
    Ok(report)
}

fn pair(cli: &Cli, a: &PairArgs, run: &mut Run) -> Result<Report> {
    let entry = load(cli, &a.algebra, run)?;
    let alg = entry.algebra();
    let phi = match a.cocycle.as_str() {
        "trace" => {
            let trace = entry
                .trace
                .clone()
                .ok_or_else(|| Error::Unsupported(format!("{} has no trace", entry.name)))?;
            AlgebraCochain::new(0, move |args| trace.eval(&Element::monomial(args[0].clone())))
        }
        "area-cocycle" => area_cocycle(cli, &entry, run)?,
        other => return Err(Error::UnknownName(format!("cocycle {other:?}, expected trace or area-cocycle"))),
    };
    let e = parse_element(alg, &a.idempotent)?;
    let p = pairing(alg, &phi, &AlgebraMatrix::scalar_entry(e), a.samples, a.seed)?;
    let mut report = Report::new();
    report.compute(ComputationRecord {
        quantity: "pairing".into(),
        labels: vec![("cocycle".into(), a.cocycle.clone()), ("degree".into(), phi.degree().to_string())],
        values: vec![p.direct.to_string()],
        stable: None,
    });
    report.compute(ComputationRecord {
        quantity: "pairing through the Chern character".into(),
        labels: vec![("constant".into(), p.constant.to_string())],
        values: vec![p.through_chern.to_string()],
        stable: None,
    });
    let witness = (!p.coherent()).then(|| format!("{} != {} * {}", p.through_chern, p.constant, p.direct));
    report.check("chern coherence", "<phi, ch(e)> = c_k (phi # Tr)(e, ..., e)", witness);
    Ok(report)
}

/// Area cocycle: the γ-image of `X⊗Y − Y⊗X` for an algebra with an action
/// of a two-dimensional abelian Lie algebra, or the determinant cocycle on
/// the group algebra of `Z²`.
fn area_cocycle(cli: &Cli, entry: &CatalogEntry, run: &mut Run) -> Result<AlgebraCochain> {
    if entry.action.is_some() {
        let map = characteristic_map(cli, entry, &None, run)?;
        let h = map.action().hopf();
        if h.generators_up_to(1).len() != 2 {
            return Err(Error::Unsupported(format!("{}: the acting Hopf algebra needs two generators", entry.name)));
        }
        let (x, y) = (Element::monomial(vec![0]), Element::monomial(vec![1]));
        let t = Tensor::pure(&[x.clone(), y.clone()]).sub(&Tensor::pure(&[y, x]));
        return Ok(map.gamma(&t));
    }
    if entry.name == "laurent-z2" {
        let det: GroupCocycle<Vec<i64>> = Arc::new(|g: &[Vec<i64>]| Scalar::from_int(g[0][0] * g[1][1] - g[0][1] * g[1][0]));
        return group_cocycle_to_cyclic(Arc::new(Lattice { rank: 2 }), 2, det, 100, 0);
    }
    Err(Error::Unsupported(format!("{} carries no area cocycle", entry.name)))
}
