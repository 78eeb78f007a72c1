use hopf_cyclic::catalog::{self, BUILTIN_NAMES};
use hopf_cyclic::hopf::{check_hopf_axioms, check_modular_pair};
use hopf_cyclic::schema::{load_dir, AlgebraFile};
use hopf_cyclic::{AlgebraExt, Element, Error, HopfExt};

#[test]
fn every_builtin_round_trips() {
    for name in BUILTIN_NAMES {
        let entry = catalog::build(name).unwrap();
        let file = AlgebraFile::from_entry(&entry);
        let text = file.to_json();
        let parsed = AlgebraFile::from_json(&text).unwrap();
        assert_eq!(parsed, file, "{name}: JSON round trip");
        let rebuilt = parsed.build().unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(AlgebraFile::from_entry(&rebuilt), file, "{name}: rebuild");
        assert_eq!(rebuilt.modular_pairs, entry.modular_pairs, "{name}");
        assert_eq!(rebuilt.trace, entry.trace, "{name}");
        assert_eq!(rebuilt.r_matrices, entry.r_matrices, "{name}");

        // the rebuilt structure multiplies and comultiplies the same way
        let (a, b) = (entry.algebra(), rebuilt.algebra());
        let words = a.monomials_up_to(2);
        for u in &words {
            for v in &words {
                assert_eq!(a.mul_words(u, v), b.mul_words(u, v), "{name}");
            }
        }
        if let (Some(h), Some(k)) = (entry.hopf(), rebuilt.hopf()) {
            if entry.builtin.is_none() {
                for w in &words {
                    assert_eq!(h.coproduct_word(w), k.coproduct_word(w), "{name}");
                    assert_eq!(h.antipode_word(w), k.antipode_word(w), "{name}");
                }
            }
        }
    }
}

#[test]
fn h1_is_referenced_by_name() {
    let file = AlgebraFile::from_entry(&catalog::build("h1").unwrap());
    assert_eq!(file.builtin.as_deref(), Some("h1"));
    assert!(file.generators.is_empty());
    assert!(file.to_json().contains("\"builtin\": \"h1\""));
}

const SWEEDLER: &str = r#"{
  "name": "my-sweedler",
  "generators": [{"name": "g"}, {"name": "x"}],
  "rules": [
    {"lhs": "g^2", "rhs": "1"},
    {"lhs": "x^2", "rhs": "0"},
    {"lhs": "x g", "rhs": "-g x"}
  ],
  "hopf": {
    "coproduct": {"g": "g|g", "x": "x|1 + g|x"},
    "counit": {"g": "1", "x": "0"},
    "antipode": {"g": "g", "x": "-g x"}
  },
  "group_likes": {"g": {"element": "g", "inverse": "g"}},
  "modular_pairs": [["eps", "g"]]
}"#;

#[test]
fn hand_written_sweedler_matches_the_builtin() {
    let mine = AlgebraFile::from_json(SWEEDLER).unwrap().build().unwrap();
    let h = mine.hopf().unwrap();
    assert_eq!(mine.dimension(), Some(4));
    assert!(check_hopf_axioms(h, 3).passed());
    assert!(check_modular_pair(h, &mine.pair("eps,g").unwrap(), 3).passed());
    let builtin = catalog::build("sweedler").unwrap();
    let b = builtin.hopf().unwrap();
    for w in h.monomials_up_to(2) {
        assert_eq!(h.antipode_word(&w), b.antipode_word(&w));
        assert_eq!(h.coproduct_word(&w), b.coproduct_word(&w));
    }
}

#[test]
fn bad_definitions_are_rejected() {
    let with = |from: &str, to: &str| AlgebraFile::from_json(&SWEEDLER.replace(from, to)).unwrap().build();
    // δ(g) = -1 is fine, δ(x) = 1 breaks x² = 0
    assert!(matches!(
        with(r#""group_likes""#, r#""characters": {"bad": {"g": "-1", "x": "1"}}, "group_likes""#),
        Err(Error::Rejected { .. })
    ));
    // g x is not group-like
    assert!(with(r#"{"element": "g", "inverse": "g"}"#, r#"{"element": "g x", "inverse": "g"}"#).is_err());
    assert!(matches!(with(r#""x": "0"}"#, r#""y": "0"}"#), Err(Error::UnknownName(_))));
    assert!(with(r#"["eps", "g"]"#, r#"["eps", "h"]"#).is_err());
}

#[test]
fn user_catalog_directory() {
    let dir = std::env::temp_dir().join(format!("hcyc-catalog-{}", std::process::id()));
    assert!(load_dir(&dir).unwrap().is_empty());
    std::fs::create_dir_all(&dir).unwrap();
    assert!(load_dir(&dir).unwrap().is_empty());
    std::fs::write(dir.join("b.json"), SWEEDLER).unwrap();
    std::fs::write(dir.join("a.json"), SWEEDLER.replace("my-sweedler", "another")).unwrap();
    std::fs::write(dir.join("notes.txt"), "ignored").unwrap();
    let names: Vec<String> = load_dir(&dir).unwrap().into_iter().map(|e| e.name).collect();
    std::fs::remove_dir_all(&dir).unwrap();
    assert_eq!(names, ["another", "my-sweedler"]);
}

#[test]
fn scalars_in_cyclotomic_fields_survive() {
    let entry = catalog::build("taft-3").unwrap();
    let text = AlgebraFile::from_entry(&entry).to_json();
    assert!(text.contains("zeta"));
    let rebuilt = AlgebraFile::from_json(&text).unwrap().build().unwrap();
    let a = rebuilt.algebra();
    let (g, x) = (a.gen(0), a.gen(1));
    assert_ne!(a.mul(&x, &g), a.mul(&g, &x));
    assert_eq!(a.pow(&g, 3), Element::one());
}
