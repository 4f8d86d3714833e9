use std::process::{Command, Output};

use edgeideal::graphs::Graph;
use edgeideal::groebner::buchberger;
use edgeideal::ideals::{build_ideal, IdealGenerators, IdealKind};
use edgeideal::resolution::{betti_table_schreyer, BettiTable};
use edgeideal::ring::{MonomialOrder, PolyRing, PrimeField};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_edgeideal")).args(args).env_remove("EDGEIDEAL_CHAR").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json_table(args: &[&str]) -> BettiTable {
    let mut full = vec!["betti", "--format", "json"];
    full.extend_from_slice(args);
    let o = run(&full);
    assert!(o.status.success(), "{}", stderr(&o));
    BettiTable::from_json(stdout(&o).trim()).unwrap()
}

#[test]
fn betti_of_the_triangle() {
    let o = run(&["betti", "--family", "cycle:3", "--ideal", "parity"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("total: 1 3 3 1"), "{text}");
    let json: Value = serde_json::from_str(text.lines().last().unwrap()).unwrap();
    assert_eq!(json["reg"], 3);
    assert_eq!(json["pure"], true);
}

#[test]
fn betti_json_reloads_to_the_library_table() {
    let t = json_table(&["--family", "complete_bipartite:2,3"]);
    assert_eq!(t.regularity().unwrap(), 2);
    let r = PolyRing::new(5, PrimeField::new(32003).unwrap(), MonomialOrder::DegRevLex).unwrap();
    let lib = betti_table_schreyer(&build_ideal(IdealKind::Parity, &Graph::complete_bipartite(2, 3).unwrap(), &r).unwrap()).unwrap();
    assert_eq!(t, lib);
}

#[test]
fn diamond_binomial_linear_syzygies() {
    let t = json_table(&["--family", "diamond", "--ideal", "binomial"]);
    assert_eq!(t.get(2, 3), 4);
}

#[test]
fn oracles_agree_and_koszul_is_labelled_partial() {
    let s = json_table(&["--family", "paw"]);
    let m = json_table(&["--family", "paw", "--oracle", "minimal"]);
    assert_eq!(s, m);
    let o = run(&["betti", "--family", "paw", "--oracle", "koszul", "--j-max", "7"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("partial table: internal degrees <= 7"), "{text}");
    let k = BettiTable::from_json(text.lines().last().unwrap()).unwrap();
    assert!(k.is_partial());
    assert_eq!(k, s.truncated(7));
}

#[test]
fn characteristic_from_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_edgeideal"))
        .args(["betti", "--family", "cycle:3"])
        .env("EDGEIDEAL_CHAR", "0")
        .output()
        .unwrap();
    assert!(stdout(&o).contains("characteristic 0"));
    let o = Command::new(env!("CARGO_BIN_EXE_edgeideal")).args(["betti", "--family", "cycle:3"]).env("EDGEIDEAL_CHAR", "12").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("not 0 or a prime"));
}

#[test]
fn exactly_one_input_source() {
    assert_eq!(run(&["betti"]).status.code(), Some(2));
    assert_eq!(run(&["betti", "--family", "claw", "--graph6", "Bw"]).status.code(), Some(2));
    let o = run(&["betti", "--family", "wheel:5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown graph family"));
}

#[test]
fn edge_list_and_graph6_inputs() {
    let path = std::env::temp_dir().join(format!("edgeideal-cli-{}.txt", std::process::id()));
    std::fs::write(&path, "# a triangle\n3\n1 2\n2 3\n3 1\n").unwrap();
    let a = json_table(&["--edges", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    let b = json_table(&["--graph6", &Graph::cycle(3).unwrap().to_graph6()]);
    assert_eq!(a, b);
    assert_eq!(a.regularity().unwrap(), 3);
}

fn parse_lines(text: &str, ring: &std::sync::Arc<PolyRing<PrimeField>>) -> IdealGenerators<PrimeField> {
    let polys = text.lines().map(|l| ring.parse(l).unwrap()).collect();
    IdealGenerators::custom(ring, polys).unwrap()
}

#[test]
fn printed_generators_reparse() {
    let r = PolyRing::new(3, PrimeField::new(32003).unwrap(), MonomialOrder::DegRevLex).unwrap();
    let o = run(&["ideal", "--family", "cycle:3", "--kind", "parity", "--show", "gens"]);
    let printed = parse_lines(&stdout(&o), &r);
    assert_eq!(printed.polys(), build_ideal(IdealKind::Parity, &Graph::cycle(3).unwrap(), &r).unwrap().polys());

    let o = run(&["ideal", "--family", "cycle:3", "--show", "gb"]);
    let gb = parse_lines(&stdout(&o), &r);
    assert_eq!(gb.polys(), buchberger(&build_ideal(IdealKind::Parity, &Graph::cycle(3).unwrap(), &r).unwrap()).basis().to_vec());
}

#[test]
fn phi_of_the_binomial_ideal_of_a_path() {
    let r = PolyRing::new(3, PrimeField::new(32003).unwrap(), MonomialOrder::DegRevLex).unwrap();
    let o = run(&["ideal", "--family", "path:3", "--kind", "binomial", "--phi"]);
    assert!(o.status.success());
    let image = parse_lines(&stdout(&o), &r);
    let parity = build_ideal(IdealKind::Parity, &Graph::path(3).unwrap(), &r).unwrap();
    assert_eq!(buchberger(&image), buchberger(&parity));
}

#[test]
fn colon_edge_output_and_hypotheses() {
    let r = PolyRing::new(5, PrimeField::new(32003).unwrap(), MonomialOrder::DegRevLex).unwrap();
    // the formula and the colon computed by elimination give the same ideal
    let formula = run(&["ideal", "--family", "cycle:5", "--kind", "parity", "--colon-edge", "1,2"]);
    let computed = run(&["ideal", "--family", "cycle:5", "--kind", "parity", "--colon-edge", "1,2", "--show", "gb"]);
    assert!(formula.status.success() && computed.status.success());
    assert_eq!(buchberger(&parse_lines(&stdout(&formula), &r)), buchberger(&parse_lines(&stdout(&computed), &r)));

    let o = run(&["ideal", "--family", "cycle:4", "--colon-edge", "1,2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("non-bipartite"), "{}", stderr(&o));
    let o = run(&["ideal", "--family", "cycle:5", "--colon-edge", "1,3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("edge"));
}

#[test]
fn eta_is_refused_in_characteristic_two() {
    let o = run(&["ideal", "--family", "path:2", "--eta", "--char", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("characteristic 2"));
    assert!(run(&["ideal", "--family", "path:2", "--eta"]).status.success());
}

#[test]
fn verify_reports_json_lines() {
    let o = run(&["verify", "--claims", "reg_odd_cycle", "--n-max", "7", "--format", "json"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let lines: Vec<Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let summary = &lines.last().unwrap()["summary"];
    assert_eq!(summary["claims"][0]["checked"], 3);
    assert_eq!(summary["failed"], false);
    let passed: Vec<&str> = lines.iter().filter(|l| l["verdict"] == "pass").map(|l| l["graph"].as_str().unwrap()).collect();
    let cycles: Vec<String> = [3, 5, 7].iter().map(|&n| Graph::cycle(n).unwrap().to_graph6()).collect();
    let found: Vec<String> = passed.iter().map(|g| edgeideal::graphs::canonical_form(&Graph::from_graph6(g).unwrap()).1.to_graph6()).collect();
    for c in cycles {
        assert!(found.contains(&edgeideal::graphs::canonical_form(&Graph::from_graph6(&c).unwrap()).1.to_graph6()));
    }
}

#[test]
fn verify_classification_and_probe() {
    let o = run(&["verify", "--claims", "pure_classification", "--n-max", "5", "--jobs", "2"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("all claims hold"));
    let path = std::env::temp_dir().join(format!("edgeideal-probe-{}.jsonl", std::process::id()));
    let o = run(&["verify", "--claims", "kk_conjecture_probe", "--n-max", "6", "--report", path.to_str().unwrap()]);
    assert!(o.status.success());
    let report = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    let summary: Value = serde_json::from_str(report.lines().last().unwrap()).unwrap();
    assert_eq!(summary["summary"]["counterexamples"], 0);
    assert_eq!(summary["summary"]["claims"][0]["checked"], 143);
}

#[test]
fn unknown_claims_list_the_valid_ones() {
    let o = run(&["verify", "--claims", "reg_odd_cycle,nope"]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("unknown claim `nope`") && err.contains("lower_bound"), "{err}");
}

#[test]
fn claims_listing() {
    let o = run(&["claims"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.lines().count() >= 21);
    assert!(text.contains("kk_conjecture_probe") && text.contains("probe"));
}
