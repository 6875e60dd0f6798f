mod common;

use std::fs;

use common::{catalog_names, exact, file_name, negarr, rat};
use negarr::catalog;
use serde_json::Value;
use tempfile::TempDir;

fn json(stdout: &str) -> Value {
    serde_json::from_str(stdout).expect("valid JSON")
}

fn generate(dir: &TempDir, name: &str) -> String {
    let file = file_name(name);
    let run = negarr(&["generate", name, "--out", &file], dir.path(), &[]);
    assert_eq!(run.code, 0, "{name}: {}", run.stderr);
    file
}

fn cert<'a>(report: &'a Value, kind: &str) -> &'a Value {
    report["certificates"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["kind"] == kind)
        .unwrap_or_else(|| panic!("no {kind} certificate"))
}

fn h_labelled(report: &Value, label: &str) -> negarr::fields::Rational {
    let entry = report["h"]
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["label"].as_str().unwrap().starts_with(label))
        .unwrap_or_else(|| panic!("no H entry {label}"));
    exact(&entry["h"])
}

#[test]
fn every_catalog_entry_round_trips_through_analyze() {
    let dir = TempDir::new().unwrap();
    for name in catalog_names() {
        let file = generate(&dir, &name);
        let run = negarr(&["analyze", &file, "--json"], dir.path(), &[]);
        let report = json(&run.stdout);
        let expected = catalog::generate(&name).unwrap().expected_h.unwrap();
        assert_eq!(h_labelled(&report, "full singular locus"), expected, "{name}");
        let check = &report["checks"][0];
        assert_eq!(check["label"], "catalog closed form");
        assert_eq!(check["holds"], true, "{name}");
        let failing = report["certificates"]
            .as_array()
            .unwrap()
            .iter()
            .any(|c| c["applicable"] == true && c["holds"] == false);
        assert_eq!(run.code, if failing { 1 } else { 0 }, "{name}");
    }
}

#[test]
fn generated_files_reparse_to_themselves() {
    let dir = TempDir::new().unwrap();
    for name in ["fermat:3", "pg2:4", "wiman", "kgon:4", "boroczky:6"] {
        let file = generate(&dir, name);
        let text = fs::read_to_string(dir.path().join(&file)).unwrap();
        let parsed = negarr::cli::format::parse_file(&text).unwrap();
        assert_eq!(negarr::cli::format::write_file(&parsed), text, "{name}");
    }
}

#[test]
fn generate_examples() {
    let dir = TempDir::new().unwrap();
    let fermat = negarr(&["generate", "fermat:3"], dir.path(), &[]);
    assert_eq!(fermat.code, 0);
    assert_eq!(fermat.stdout.lines().filter(|l| l.starts_with("line ")).count(), 9);
    assert!(fermat.stdout.contains("field EXT Q [1,1,1]"));

    let wiman = negarr(&["generate", "wiman"], dir.path(), &[]);
    for row in ["spectrum d=45", "t 3 120", "t 4 45", "t 5 36", "profile 3 8"] {
        assert!(wiman.stdout.contains(row), "missing {row}");
    }

    let pg6 = negarr(&["generate", "pg2:6"], dir.path(), &[]);
    assert_eq!(pg6.code, 2);
    assert!(pg6.stderr.contains("prime power"));
    assert_eq!(negarr(&["generate", "nosuch:3"], dir.path(), &[]).code, 2);
    assert_eq!(
        negarr(&["generate", "klein", "--format", "coords"], dir.path(), &[]).code,
        2
    );
}

#[test]
fn analyze_examples() {
    let dir = TempDir::new().unwrap();
    let klein = generate(&dir, "klein");
    let report = json(&negarr(&["analyze", &klein, "--json"], dir.path(), &[]).stdout);
    assert_eq!(h_labelled(&report, "full singular locus"), rat(-3, 1));
    assert_eq!(exact(&cert(&report, "hirzebruch")["slack"]), rat(0, 1));
    let melchior = cert(&report, "melchior");
    assert_eq!(exact(&melchior["e"]), rat(-24, 1));
    assert!(melchior["reason"]
        .as_str()
        .unwrap()
        .contains("not realizable over the reals"));

    let fermat = generate(&dir, "fermat:4");
    let report = json(&negarr(&["analyze", &fermat, "--json"], dir.path(), &[]).stdout);
    assert_eq!(h_labelled(&report, "full singular locus"), rat(-48, 19));

    let quasi = generate(&dir, "quasipencil:4");
    let report = json(&negarr(&["analyze", &quasi, "--json"], dir.path(), &[]).stdout);
    let main = cert(&report, "main_lower_bound");
    assert_eq!(exact(&main["bound"]), rat(-5, 4));
    assert_eq!(exact(&main["slack"]), rat(0, 1));
}

#[test]
fn text_output_shows_exact_and_decimal_values() {
    let dir = TempDir::new().unwrap();
    let wiman = generate(&dir, "wiman");
    let run = negarr(&["analyze", &wiman], dir.path(), &[]);
    assert_eq!(run.code, 0);
    assert!(run.stdout.contains("-225/67 (-3.358)"));
}

#[test]
fn unrealizable_spectrum_exits_one() {
    let dir = TempDir::new().unwrap();
    // the Fano plane's counts claimed over the complex numbers
    fs::write(dir.path().join("fano.arr"), "spectrum d=7\nt 3 7\nflags complete\n").unwrap();
    let run = negarr(&["analyze", "fano.arr", "--json"], dir.path(), &[]);
    assert_eq!(run.code, 1);
    assert_eq!(cert(&json(&run.stdout), "hirzebruch")["holds"], false);
}

#[test]
fn input_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let p = dir.path();
    fs::write(p.join("bad.arr"), "field Q\nline 1 2\n").unwrap();
    let run = negarr(&["analyze", "bad.arr"], p, &[]);
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("line 2"), "{}", run.stderr);
    assert_eq!(negarr(&["analyze", "missing.arr"], p, &[]).code, 2);
    assert_eq!(negarr(&["analyze"], p, &[]).code, 2);
    assert_eq!(negarr(&["frobnicate"], p, &[]).code, 2);

    let wiman = generate(&dir, "wiman");
    assert_eq!(negarr(&["subconfig", &wiman], p, &[]).code, 2);
    assert_eq!(negarr(&["subconfig", &wiman, "--remove", "0"], p, &[]).code, 2);
    assert_eq!(negarr(&["search", &wiman], p, &[]).code, 2);

    fs::write(p.join("empty.pts"), "field Q\n").unwrap();
    let generic = generate(&dir, "generic:4");
    assert_eq!(negarr(&["analyze", &generic, "--points", "empty.pts"], p, &[]).code, 2);
    assert_eq!(negarr(&["analyze", &wiman, "--points", "empty.pts"], p, &[]).code, 2);
}

#[test]
fn analyze_at_given_points() {
    let dir = TempDir::new().unwrap();
    let p = dir.path();
    let generic = generate(&dir, "generic:4");
    // two nodes of the four tangents plus two points on no line
    let coords = negarr::catalog::gen_generic(4).unwrap();
    let is = negarr::arrangement::singular_points(&coords).unwrap();
    let nodes: Vec<_> = is.points()[..2].iter().map(|pt| pt.coords.clone().unwrap()).collect();
    let mut text = negarr::cli::format::write_points(coords.field(), &nodes);
    text += "point 1000 1 0\npoint 1001 1 0\n";
    fs::write(p.join("some.pts"), text).unwrap();
    let run = negarr(&["analyze", &generic, "--points", "some.pts", "--json"], p, &[]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let report = json(&run.stdout);
    // (16 - 2*4 - 0 - 0)/4 and (16 - 8)/2
    assert_eq!(h_labelled(&report, "given points,"), rat(4, 1));
    assert_eq!(h_labelled(&report, "given points"), rat(2, 1));
}

#[test]
fn subconfig_examples() {
    let dir = TempDir::new().unwrap();
    let p = dir.path();
    let wiman = generate(&dir, "wiman");

    let run = negarr(&["subconfig", &wiman, "--formula", "d'=44", "--json"], p, &[]);
    assert_eq!(run.code, 0);
    assert_eq!(h_labelled(&json(&run.stdout), "formula"), rat(-220, 67));

    let run = negarr(&["subconfig", &wiman, "--formula", "43", "--json"], p, &[]);
    assert_eq!(h_labelled(&json(&run.stdout), "formula"), rat(-215, 67));

    let run = negarr(&["subconfig", &wiman, "--pairs-meeting", "3", "--json"], p, &[]);
    assert_eq!(run.code, 0);
    let report = json(&run.stdout);
    assert_eq!(
        h_labelled(&report, "subarrangement at its singular locus"),
        rat(-161, 50)
    );
    assert_eq!(
        h_labelled(&report, "subarrangement at the original points"),
        rat(-215, 67)
    );
    let rows: Vec<(u64, u64)> = report["spectrum"]["t"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| (r["k"].as_u64().unwrap(), r["count"].as_u64().unwrap()))
        .collect();
    assert_eq!(rows, vec![(2, 14), (3, 113), (4, 45), (5, 28)]);

    let fermat = generate(&dir, "fermat:3");
    let run = negarr(&["subconfig", &fermat, "--remove", "0", "--json"], p, &[]);
    assert_eq!(run.code, 0);
    let report = json(&run.stdout);
    let checks = report["checks"].as_array().unwrap();
    assert!(checks.iter().any(|c| c["label"] == "formula vs direct recomputation"));
    assert!(checks.iter().all(|c| c["holds"] == true));
    assert_eq!(h_labelled(&report, "subarrangement at its singular locus"), rat(-2, 1));

    let run = negarr(&["subconfig", &fermat, "--pairs-meeting", "3", "--json"], p, &[]);
    assert_eq!(run.code, 0);
    assert!(json(&run.stdout)["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["holds"] == true));

    let quasi = generate(&dir, "quasipencil:5");
    assert_eq!(negarr(&["subconfig", &quasi, "--formula", "4"], p, &[]).code, 2);
    assert_eq!(negarr(&["subconfig", &quasi, "--remove", "9"], p, &[]).code, 2);
}

#[test]
fn search_examples() {
    let dir = TempDir::new().unwrap();
    let p = dir.path();

    let fermat = generate(&dir, "fermat:3");
    let run = negarr(&["search", &fermat, "--max-remove", "1", "--json"], p, &[]);
    assert_eq!(run.code, 0);
    let search = &json(&run.stdout)["search"];
    assert_eq!(search["best_removed"], serde_json::json!([0]));
    assert_eq!(exact(&search["best_h"]), rat(-2, 1));

    let generic = generate(&dir, "generic:6");
    let run = negarr(&["search", &generic, "--max-remove", "2", "--json"], p, &[]);
    assert_eq!(run.code, 0);
    let report = json(&run.stdout);
    assert_eq!(report["search"]["candidates"], 21);
    // subarrangements stay generic and 2/(r-1) - 2 falls with r, so one removal wins
    assert_eq!(exact(&report["search"]["best_h"]), rat(-3, 2));
    assert_eq!(report["search"]["best_removed"], serde_json::json!([0]));
    assert_eq!(cert(&report, "main_lower_bound")["holds"], true);

    let plane = generate(&dir, "pg2:2");
    let run = negarr(
        &["search", &plane, "--max-remove", "7", "--budget", "200", "--json"],
        p,
        &[],
    );
    assert_eq!(run.code, 0, "{}", run.stderr);
    let search = &json(&run.stdout)["search"];
    assert_eq!(search["candidates"], 119);
    assert_eq!(search["pruning"], false);

    let big = generate(&dir, "generic:12");
    let run = negarr(&["search", &big, "--budget", "100"], p, &[]);
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("298"));
    assert_eq!(negarr(&["search", &big], p, &[("NEGARR_BUDGET", "100")]).code, 2);
    assert_eq!(
        negarr(&["search", &big, "--budget", "1000"], p, &[("NEGARR_BUDGET", "100")]).code,
        0
    );
    assert_eq!(negarr(&["search", &big], p, &[("NEGARR_BUDGET", "lots")]).code, 2);
}

#[test]
fn reports_are_byte_deterministic() {
    let dir = TempDir::new().unwrap();
    let p = dir.path();
    let fermat = generate(&dir, "fermat:4");
    for args in [
        vec!["analyze", &fermat],
        vec!["analyze", &fermat, "--json"],
        vec!["search", &fermat, "--max-remove", "2", "--json"],
        vec!["subconfig", &fermat, "--remove", "1,3"],
    ] {
        let first = negarr(&args, p, &[]);
        let second = negarr(&args, p, &[]);
        assert_eq!(first.code, 0, "{args:?}: {}", first.stderr);
        assert_eq!(first.stdout, second.stdout, "{args:?}");
    }
}
