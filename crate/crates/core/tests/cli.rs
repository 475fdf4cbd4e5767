use std::process::Command;

use serde_json::Value;
use weighted_algebroids::cli::{self, ExampleName};
use weighted_algebroids::dsl::SpecDocument;

fn root() -> std::path::PathBuf {
    std::path::PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn wla(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_wla"))
        .args(args)
        .current_dir(root())
        .output()
        .unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn shipped_files_are_regenerated_exactly() {
    let files = [
        ("adjoint", ExampleName::Adjoint, 2),
        ("tangent_graded", ExampleName::TangentGraded, 2),
        ("prolongation", ExampleName::Prolongation, 2),
        ("weighted_lie_algebra", ExampleName::WeightedLieAlgebra, 2),
        ("e7", ExampleName::E7, 2),
        ("aff1", ExampleName::Aff1, 2),
        ("sl2", ExampleName::Sl2, 2),
        ("abelian2", ExampleName::Abelian, 2),
        ("broken", ExampleName::Broken, 2),
        ("tangent_line", ExampleName::Tangent, 1),
    ];
    for (file, name, dim) in files {
        let text = std::fs::read_to_string(root().join("specs").join(format!("{file}.spec"))).unwrap();
        assert_eq!(name.document(dim).unwrap().print(), text, "{file}");
    }
}

#[test]
fn example_writes_a_file_that_checks() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("adjoint.spec");
    let p = path.to_str().unwrap();
    assert_eq!(wla(&["example", "adjoint", "-o", p]).0, 0);
    let (code, out) = wla(&["check", p]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("status: ok"));
}

#[test]
fn broken_names_the_jacobi_residual() {
    let (code, out) = wla(&["check", "specs/broken.spec"]);
    assert_eq!(code, 1);
    assert!(out.contains("jacobi (xi[1],xi[2],xi[3]) -> xi[2]"), "{out}");
}

#[test]
fn decompose_json_dims() {
    let (code, out) = wla(&["decompose", "specs/e7.spec", "--weight", "2", "--format", "json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["dims"], serde_json::json!({"(2,0)": 7, "(2,1)": 7, "(2,2)": 1}));
}

#[test]
fn parse_errors_carry_position() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.spec");
    std::fs::write(
        &path,
        "algebroid t degree 0\nbase x weight 0 dim 1\nodd y weight 0 dim 1\nd z[1] = y[1]*x[1]\n",
    )
    .unwrap();
    let (code, out) = wla(&["check", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(out.contains("t.spec:4:3: undeclared generator `z[1]`"), "{out}");
}

#[test]
fn weight_inconsistent_assignment_is_a_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.spec");
    std::fs::write(
        &path,
        "algebroid w degree 1\nbase x weight 0 dim 1\neven z weight 1 dim 1\nodd y weight 0 dim 1\nd x[1] = z[1]*y[1]\n",
    )
    .unwrap();
    let (code, out) = wla(&["--format", "json", "check", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["status"], "error");
    assert!(v["message"].as_str().unwrap().contains(":5:1:"), "{v}");
}

#[test]
fn text_and_json_agree_on_exit_codes() {
    for args in [
        vec!["check", "specs/sl2.spec"],
        vec!["rep", "specs/e7.spec", "--weight", "2"],
        vec!["cohomology", "specs/aff1.spec", "--weight", "0"],
        vec!["cohomology", "specs/e7.spec", "--weight", "1", "--cap", "2"],
        vec!["decompose", "specs/aff1.spec", "--weight", "1"],
    ] {
        let text = wla(&args).0;
        let mut json_args = args.clone();
        json_args.extend(["--format", "json"]);
        assert_eq!(wla(&json_args).0, text, "{args:?}");
    }
}

#[test]
fn every_document_round_trips() {
    for entry in std::fs::read_dir(root().join("specs")).unwrap() {
        let text = std::fs::read_to_string(entry.unwrap().path()).unwrap();
        let doc = SpecDocument::parse(&text).unwrap();
        assert_eq!(SpecDocument::parse(&doc.print()).unwrap(), doc);
    }
}

#[test]
fn in_process_and_binary_agree() {
    let mut buf = Vec::new();
    let code = cli::run(["wla", "--format", "json", "rep", "specs/adjoint.spec", "--weight", "1"], &mut buf);
    let (bin_code, bin_out) = wla(&["--format", "json", "rep", "specs/adjoint.spec", "--weight", "1"]);
    assert_eq!((code, bin_code), (0, 0));
    assert_eq!(String::from_utf8(buf).unwrap(), bin_out);
}
