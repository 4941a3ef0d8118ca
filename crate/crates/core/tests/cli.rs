use plab_core::cli::run;
use plab_core::io::GraphDoc;

fn plab(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("plab").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn enumerate_json_document() {
    let (code, out, _) = plab(&["enumerate", "3412", "--json", "--no-cache"]);
    assert_eq!(code, 0);
    let doc: GraphDoc = serde_json::from_str(&out).unwrap();
    assert_eq!((doc.order, doc.size), (2, 1));
    assert_eq!(doc.adjacency, ["1 → 2", "2 → 1"]);
    assert_eq!(doc.collections.len(), 2);
}

#[test]
fn enumerate_uses_cache() {
    let dir = tempfile::tempdir().unwrap();
    // SAFETY: no other test in this binary reads the variable.
    unsafe { std::env::set_var("POSITROID_LAB_CACHE", dir.path()) };
    let (c1, first, _) = plab(&["enumerate", "365124", "--json"]);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    let (c2, second, _) = plab(&["enumerate", "365124", "--json"]);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(first, second);
}

#[test]
fn equivalence_listing() {
    let (code, out, _) = plab(&["equiv", "365124"]);
    assert_eq!(code, 0);
    for p in ["451632", "465213", "541623"] {
        assert!(out.contains(&format!("\"{p}\"")), "{p} missing from {out}");
    }
}

#[test]
fn catalan_report() {
    let (code, out, _) = plab(&["verify", "catalan", "--interior-max", "3"]);
    assert_eq!(code, 0);
    let maxima: Vec<&str> = out.lines().map(|l| l.split_whitespace().nth(4).unwrap()).collect();
    assert_eq!(maxima, ["1", "2", "5", "14"]);
}

#[test]
fn error_exit_codes() {
    let (code, _, err) = plab(&["enumerate", "3x12"]);
    assert_eq!(code, 2);
    assert!(err.contains("malformed permutation"));
    let (code, _, err) = plab(&["enumerate", "2143"]);
    assert_eq!(code, 2);
    assert!(err.contains("not connected"));
    let (code, _, err) = plab(&["enumerate", "3456712", "--budget", "10", "--no-cache"]);
    assert_eq!(code, 2);
    assert!(err.contains("budget"));
    assert_eq!(plab(&["frobnicate"]).0, 2);
    assert_eq!(plab(&["classify", "--interior", "4"]).0, 2);
}

#[test]
fn necklace_and_perm_round_trip() {
    let (_, json, _) = plab(&["necklace", "38762145"]);
    let (code, out, _) = plab(&["perm", &json]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "38762145");
}

#[test]
fn classify_csv_matches_table_columns() {
    let (code, out, _) = plab(&["classify", "--interior", "2", "--csv"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "Interior Size,Equivalence Class,Exchange Graph Order,Exchange Graph");
    assert_eq!(&lines[1..], ["2,34512,5,D", "2,356214,3,C"]);
}

#[test]
fn output_independent_of_workers() {
    let (_, one, _) = plab(&["classify", "--interior", "3", "--jobs", "1"]);
    let (_, four, _) = plab(&["classify", "--interior", "3", "--jobs", "4"]);
    assert_eq!(one, four);
    assert!(one.contains("\"pass\": true"));
}

#[test]
fn tiling_svg_and_cconstant() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.svg");
    let (code, out, _) = plab(&["tiling", "3412", "--svg", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.starts_with("vertices 5  white faces 2  black faces 2"));
    let svg = std::fs::read_to_string(&path).unwrap();
    assert_eq!(svg.matches("<polygon").count(), 4);

    let (code, out, _) = plab(&["cconstant", "3412", "--drop", "13"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["order"], 2);
    assert_eq!(v["codimension"], 1);
    assert_eq!(v["catalogName"], "B");
}

#[test]
fn decompose_reports_parts() {
    let (_, out, _) = plab(&["decompose", "351624"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["prime"], false);
    assert_eq!(v["positions"].as_array().unwrap().len(), 2);
}
