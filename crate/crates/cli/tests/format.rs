use std::path::PathBuf;

use leibrack::corpus;
use leibrack_cli::error::CliError;
use leibrack_cli::format::{parse_algebra_file, AlgebraSpecFile};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
}

#[test]
fn shipped_files_match_builtins() {
    assert_eq!(
        parse_algebra_file(&data("dim5.leib")).unwrap().tensor(),
        corpus::dim5().tensor()
    );
    let h = parse_algebra_file(&data("heisenberg.leib")).unwrap();
    assert_eq!(h.tensor(), corpus::heisenberg().tensor());
    assert_eq!(h.basis_names(), ["x", "y", "z"]);
    assert_eq!(
        parse_algebra_file(&data("abelian3.leib")).unwrap(),
        corpus::abelian3()
    );
}

#[test]
fn non_leibniz_names_the_triple() {
    match parse_algebra_file(&data("not_leibniz.leib")) {
        Err(CliError::Validation { triple, defect }) => {
            assert_eq!(triple, ("e1".into(), "e1".into(), "e1".into()));
            assert_eq!(defect, ["-1", "0"]);
        }
        other => panic!("expected a validation error, got {other:?}"),
    }
}

#[test]
fn empty_brackets_give_abelian() {
    let alg = AlgebraSpecFile::from_json(r#"{"dim": 4, "brackets": []}"#)
        .unwrap()
        .to_algebra()
        .unwrap();
    assert_eq!(alg, leibrack::leibniz::LeibnizAlgebra::abelian(4));
    let alg = AlgebraSpecFile::from_json(r#"{"dim": 2}"#)
        .unwrap()
        .to_algebra()
        .unwrap();
    assert!(alg.is_lie());
}

#[test]
fn round_trip_through_text() {
    for (name, alg) in corpus::test_corpus() {
        let file = AlgebraSpecFile::from_algebra(&alg);
        let back = AlgebraSpecFile::from_json(&file.to_json()).unwrap();
        assert_eq!(back, file, "{name}");
        assert_eq!(back.to_algebra().unwrap(), alg, "{name}");
    }
}

#[test]
fn rational_coefficients() {
    let text = r#"{"dim": 2, "brackets": [{"left": 0, "right": 0, "value": {"1": "-3/4"}}]}"#;
    let alg = AlgebraSpecFile::from_json(text)
        .unwrap()
        .to_algebra()
        .unwrap();
    assert_eq!(
        leibrack::linalg::rational::format_rational(&alg.structure(0, 0)[1]),
        "-3/4"
    );
}

#[test]
fn malformed_json_is_a_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.leib");
    std::fs::write(&path, "{\"dim\": 2, \"brackets\": [").unwrap();
    assert!(matches!(parse_algebra_file(&path), Err(CliError::Parse(_))));
    assert!(matches!(
        parse_algebra_file(&dir.path().join("missing.leib")),
        Err(CliError::Io(_))
    ));
}
