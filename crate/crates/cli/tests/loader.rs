use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use proptest::prelude::*;
use workbench_cli::gallery::{gallery, FIXTURES};
use workbench_cli::load::{document_files, load, parse_document, LoadError};
use workbench_cli::schema::{CategoryDoc, Document, MorphismSpec};
use workbench_core::Bounds;

fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn write(dir: &Path, file: &str, text: &str) {
    fs::write(dir.join(file), text).unwrap();
}

fn errors(dir: &Path) -> Vec<LoadError> {
    load(dir, &Bounds::default()).expect_err("expected load errors")
}

#[test]
fn gallery_lists_every_fixture_on_disk() {
    let root = fixtures_dir();
    let on_disk: BTreeSet<String> = document_files(&root)
        .unwrap()
        .iter()
        .map(|p| p.strip_prefix(&root).unwrap().to_string_lossy().replace('\\', "/"))
        .collect();
    let bundled: BTreeSet<String> = FIXTURES.iter().map(|(p, _)| p.to_string()).collect();
    assert_eq!(on_disk, bundled);
    for (path, text) in FIXTURES {
        assert_eq!(*text, fs::read_to_string(root.join(path)).unwrap(), "{path} is stale");
    }
}

#[test]
fn fixtures_are_canonical() {
    for entry in gallery() {
        let (_, text) = FIXTURES
            .iter()
            .find(|(p, _)| entry.origin == format!("gallery:{p}"))
            .unwrap();
        assert_eq!(entry.document.to_canonical(), *text, "{} is not canonical", entry.origin);
    }
}

#[test]
fn reserialization_is_idempotent() {
    for entry in gallery() {
        let once = entry.document.to_canonical();
        let reparsed = parse_document(&once, "again").unwrap();
        assert_eq!(reparsed, entry.document);
        assert_eq!(reparsed.to_canonical(), once);
    }
}

#[test]
fn every_fixture_directory_loads_on_its_own() {
    let mut total = 0;
    for dir in fs::read_dir(fixtures_dir()).unwrap() {
        let dir = dir.unwrap().path();
        let set = load(&dir, &Bounds::default()).unwrap_or_else(|e| panic!("{}: {e:?}", dir.display()));
        total += set.len();
    }
    assert_eq!(total, FIXTURES.len());
}

#[test]
fn syntax_errors_carry_line_and_column() {
    let err = parse_document("{\n  \"schema\": 1,\n  \"kind\": \"space\"\n  \"name\": \"x\"\n}\n", "bad.json").unwrap_err();
    match err {
        LoadError::Parse { line, column, ref origin, .. } => {
            assert_eq!(origin, "bad.json");
            assert_eq!((line, column), (4, 3));
        }
        other => panic!("{other:?}"),
    }
    assert!(err.to_string().starts_with("bad.json:4:3: parse error"));
}

#[test]
fn unknown_fields_are_parse_errors() {
    let text = r#"{"schema": 1, "kind": "category", "name": "c", "objects": ["a"], "colour": "red"}"#;
    let err = parse_document(text, "c.json").unwrap_err();
    assert!(matches!(err, LoadError::Parse { line: 1, .. }), "{err:?}");
    assert!(err.to_string().contains("colour"));
}

#[test]
fn schema_version_and_kind_are_checked() {
    let v2 = r#"{"schema": 2, "kind": "category", "name": "c", "objects": []}"#;
    assert!(matches!(parse_document(v2, "v2").unwrap_err(), LoadError::Schema { .. }));
    let odd = r#"{"schema": 1, "kind": "monad", "name": "m"}"#;
    let err = parse_document(odd, "m").unwrap_err();
    assert!(err.to_string().contains("unknown kind `monad`"));
}

#[test]
fn morphism_to_unknown_object_is_unresolved() {
    let dir = tempfile::tempdir().unwrap();
    write(
        dir.path(),
        "c.json",
        r#"{"schema": 1, "kind": "category", "name": "c", "objects": ["a"],
            "morphisms": [{"name": "f", "source": "a", "target": "ghost"}]}"#,
    );
    let errs = errors(dir.path());
    assert_eq!(
        errs,
        vec![LoadError::UnresolvedReference {
            document: "c".into(),
            reference: "ghost".into()
        }]
    );
    assert_eq!(errs[0].to_string(), "c: unresolved reference `ghost`");
}

#[test]
fn missing_documents_and_wrong_kinds_are_reported() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "p.json", r#"{"schema": 1, "kind": "presheaf", "name": "p", "site": "nowhere", "construction": {"type": "terminal"}}"#);
    write(dir.path(), "f.json", r#"{"schema": 1, "kind": "formula", "name": "f", "site": "p", "sorts": {}, "formula": "true"}"#);
    let errs = errors(dir.path());
    assert!(errs.iter().any(|e| matches!(e, LoadError::UnresolvedReference { reference, .. } if reference == "nowhere")));
    assert!(errs.iter().any(|e| matches!(e, LoadError::WrongKind { document, reference, .. } if document == "f" && reference == "p")));
}

#[test]
fn semantic_errors_name_the_document() {
    let dir = tempfile::tempdir().unwrap();
    write(
        dir.path(),
        "c.json",
        r#"{"schema": 1, "kind": "category", "name": "loop", "objects": ["a"],
            "morphisms": [{"name": "e", "source": "a", "target": "a"}], "compose": [["e", "e", "id_a"]]}"#,
    );
    write(dir.path(), "s.json", r#"{"schema": 1, "kind": "space", "name": "s", "points": ["p"], "opens": [["p"]]}"#);
    let errs = errors(dir.path());
    assert!(errs.iter().any(|e| matches!(e, LoadError::Semantic { document, .. } if document == "s")), "{errs:?}");
    let valid = load(&dir.path().join("c.json"), &Bounds::default()).unwrap();
    assert_eq!(valid.len(), 1);
}

#[test]
fn duplicate_names_in_one_layer_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let doc = r#"{"schema": 1, "kind": "category", "name": "c", "objects": ["a"]}"#;
    write(dir.path(), "one.json", doc);
    write(dir.path(), "two.json", doc);
    assert!(matches!(errors(dir.path())[0], LoadError::Duplicate { ref name, .. } if name == "c"));
}

fn name() -> impl Strategy<Value = String> {
    "[a-z][a-z0-9_]{0,5}"
}

proptest! {
    #[test]
    fn canonical_form_round_trips(
        objects in prop::collection::vec(name(), 0..4),
        arrows in prop::collection::vec((name(), name(), name()), 0..4),
        compose in prop::collection::vec((name(), name(), name()), 0..3),
    ) {
        let doc = Document::Category(CategoryDoc {
            schema: 1,
            kind: "category".into(),
            name: "generated".into(),
            objects,
            morphisms: arrows
                .into_iter()
                .map(|(name, source, target)| MorphismSpec { name, source, target })
                .collect(),
            compose,
        });
        let text = doc.to_canonical();
        let back = parse_document(&text, "generated").unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(back.to_canonical(), text);
    }
}
