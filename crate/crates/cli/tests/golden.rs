//! Golden-output coverage of every subcommand with pinned seeds, plus the
//! JSON-validity and exit-code contracts.

use std::io::Write;
use std::process::Command;

fn ramsey(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_ramsey"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().unwrap_or(-1),
    )
}

fn tmp_file(content: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(content.as_bytes()).unwrap();
    f
}

/// Drops the timing line so the rest of the output is byte-comparable.
fn strip_wall(s: &str) -> String {
    s.lines()
        .filter(|l| !l.trim_start().starts_with("\"wall_ms\""))
        .collect::<Vec<_>>()
        .join("\n")
}

fn parse(s: &str) -> serde_json::Value {
    serde_json::from_str(s).expect("valid JSON")
}

#[test]
fn build_golden() {
    let (out, _, code) = ramsey(&["build", "--family", "schur", "--size", "5"]);
    assert_eq!(code, 0);
    assert_eq!(out, "3 5 6\n0 1 4\n0 2 3\n1 2 3\n1 2 4\n1 3 4\n2 3 4\n");
}

#[test]
fn profile_golden() {
    let (out, _, code) = ramsey(&["profile", "--family", "schur", "--size", "5"]);
    assert_eq!(code, 0);
    let v = parse(&out);
    assert_eq!(v["s"], 3);
    assert_eq!(v["vertices"], 5);
    assert_eq!(v["edges"], 6);
    assert_eq!(v["per_t"][0]["max_degree"], 4);
    assert_eq!(v["per_t"][2]["max_degree"], 1);
}

#[test]
fn analyze_graph_golden() {
    let (out, _, code) = ramsey(&["analyze-graph", "--graph", "petersen", "--rsc-r", "2"]);
    assert_eq!(code, 0);
    let v = parse(&out);
    assert_eq!(v["m2"], "7/4");
    assert_eq!(v["m"], "3/2");
    assert_eq!(v["strictly_2_balanced"], true);
    assert_eq!(v["nearly_bipartite"], false);
    assert_eq!(v["collapsible"], false);
    assert_eq!(v["semi_collapsible"], false);
    assert_eq!(v["rsc"]["2"], false);
    // Repeat runs are byte-identical apart from timing.
    let (again, _, _) = ramsey(&["analyze-graph", "--graph", "petersen", "--rsc-r", "2"]);
    assert_eq!(strip_wall(&out), strip_wall(&again));
}

#[test]
fn arrow_golden() {
    let (out, _, code) = ramsey(&["arrow", "--g", "complete:6", "--h", "complete:3", "--r", "2"]);
    assert_eq!(code, 0);
    let v = parse(&out);
    assert_eq!(v["verdict"], true);
    assert_eq!(v["witness"], serde_json::Value::Null);

    let (out, _, code) = ramsey(&["arrow", "--g", "complete:5", "--h", "complete:3", "--r", "2"]);
    assert_eq!(code, 0);
    let v = parse(&out);
    assert_eq!(v["verdict"], false);
    assert_eq!(v["witness"].as_array().unwrap().len(), 10);
}

#[test]
fn colour_golden() {
    let fano = "3 7 7\n0 1 2\n0 3 4\n0 5 6\n1 3 5\n1 4 6\n2 3 6\n2 4 5\n";
    let file = tmp_file(fano);
    let path = file.path().to_str().unwrap();
    let (out, _, code) = ramsey(&["colour", "--hypergraph", path, "--r", "2", "--min-mono"]);
    assert_eq!(code, 0);
    let v = parse(&out);
    assert_eq!(v["verdict"], false);
    assert_eq!(v["min_monochromatic"]["exact"], true);
    assert!(v["min_monochromatic"]["value"].as_u64().unwrap() >= 1);

    let (out, _, code) = ramsey(&["colour", "--hypergraph", path, "--r", "3"]);
    assert_eq!(code, 0);
    assert_eq!(parse(&out)["verdict"], true);
}

#[test]
fn choosable_golden() {
    let (out, _, code) =
        ramsey(&["choosable", "--g", "complete:5", "--pattern", "complete:3"]);
    assert_eq!(code, 0);
    assert_eq!(parse(&out)["verdict"], true);

    let (out, _, code) =
        ramsey(&["choosable", "--g", "complete:6", "--pattern", "complete:3"]);
    assert_eq!(code, 0);
    let v = parse(&out);
    assert_eq!(v["verdict"], false);
    assert_eq!(v["witness"]["lists"].as_array().unwrap().len(), 15);

    let (out, _, code) = ramsey(&["choosable", "--family", "schur", "--size", "11", "--r", "2"]);
    assert_eq!(code, 0);
    assert_eq!(parse(&out)["verdict"], false);
}

#[test]
fn list_ramsey_golden() {
    let (out, _, code) =
        ramsey(&["list-ramsey", "--mode", "schur", "--n", "7", "--set", "1,2,3"]);
    assert_eq!(code, 0);
    assert_eq!(parse(&out)["verdict"], false);

    let (out, _, code) = ramsey(&[
        "list-ramsey",
        "--mode",
        "vdw",
        "--n",
        "7",
        "--k",
        "3",
        "--set",
        "0,1,2",
    ]);
    assert_eq!(code, 0);
    assert_eq!(parse(&out)["verdict"], false);
}

#[test]
fn reveal_golden() {
    let file = tmp_file("3 5 2\n0 1 2\n2 3 4\n");
    let path = file.path().to_str().unwrap();
    let (out, _, code) = ramsey(&["reveal", "--hypergraph", path, "--set", "0,1,2,3,4"]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        concat!(
            "{\"edge\":[0,1,2],\"kind\":\"new-layer\",\"layer\":2,\"new_vertices\":[1,2],\"step\":1}\n",
            "{\"edge\":[2,3,4],\"kind\":\"new-layer\",\"layer\":3,\"new_vertices\":[3,4],\"step\":2}\n",
            "{\"d\":3,\"degenerate\":[],\"layers\":[[0],[0,1,2],[0,1,2,3,4]],\"start\":0}\n",
        )
    );
    for line in out.lines() {
        parse(line);
    }
}

#[test]
fn clots_golden() {
    let fixture = "3 9 6\n0 1 3\n0 1 4\n0 2 5\n0 2 6\n1 2 7\n1 2 8\n";
    let file = tmp_file(fixture);
    let path = file.path().to_str().unwrap();
    let (out, _, code) = ramsey(&["clots", "--hypergraph", path]);
    assert_eq!(code, 0);
    let v = parse(&out);
    assert_eq!(v["count"], 1);
    assert_eq!(v["clots"][0]["nucleus"], serde_json::json!([0, 1, 2]));
}

#[test]
fn obstruction_golden() {
    let fano = "3 7 7\n0 1 2\n0 3 4\n0 5 6\n1 3 5\n1 4 6\n2 3 6\n2 4 5\n";
    let file = tmp_file(fano);
    let path = file.path().to_str().unwrap();
    let (out, _, code) = ramsey(&[
        "obstruction",
        "--hypergraph",
        path,
        "--set",
        "0,1,2,3,4,5,6",
        "--r",
        "2",
    ]);
    assert_eq!(code, 0);
    let v = parse(&out);
    assert_eq!(v["result"]["report"], "holds");
    assert!(v["result"]["degenerate_elements"].as_u64().unwrap() >= 2);
    // A 2-choosable set is reported as not applicable.
    let (out, _, code) =
        ramsey(&["obstruction", "--hypergraph", path, "--set", "0,1,2", "--r", "2"]);
    assert_eq!(code, 0);
    assert_eq!(parse(&out)["result"]["report"], "not-applicable");
}

#[test]
fn count_golden() {
    let (out, _, code) =
        ramsey(&["count", "--family", "schur", "--size", "7", "--what", "stars", "--r", "2"]);
    assert_eq!(code, 0);
    assert_eq!(parse(&out)["count"], "45");

    let parts = tmp_file("5 1\n3 1 2 4\n");
    let (out, _, code) =
        ramsey(&["count", "--y", parts.path().to_str().unwrap(), "--what", "prestars"]);
    assert_eq!(code, 0);
    assert_eq!(parse(&out)["count"], "24");

    let colouring = tmp_file("0 1\n1 1\n2 1\n3 1\n4 1\n5 1\n6 1\n");
    let (out, _, code) = ramsey(&[
        "count",
        "--family",
        "schur",
        "--size",
        "7",
        "--what",
        "rainbow",
        "--r",
        "2",
        "--colouring",
        colouring.path().to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let v = parse(&out);
    assert_eq!(v["any_stars"], "45");
    assert_eq!(v["per_i_stars"], serde_json::json!(["0", "45"]));
}

#[test]
fn sample_golden() {
    let args = [
        "sample",
        "--family",
        "schur",
        "--size",
        "31",
        "--property",
        "non-colourable",
        "--p",
        "0.4",
        "--trials",
        "50",
        "--seed",
        "3",
    ];
    let (out, _, code) = ramsey(&args);
    assert_eq!(code, 0);
    let expected = r#"{
  "failures": 29,
  "freq": 0.42,
  "inconclusive": 0,
  "instance": "schur:31",
  "p": 0.4,
  "property": "non-colourable",
  "seed": 3,
  "successes": 21,
  "trials": 50,
  "wilson_hi": 0.5576655823142177,
  "wilson_lo": 0.2937500335471198
}
"#;
    assert_eq!(out, expected);
}

#[test]
fn curve_golden_csv() {
    let args = [
        "curve", "--family", "schur", "--r", "2", "--size", "17", "--grid", "0.2,0.5,0.8",
        "--trials", "40", "--seed", "9", "--format", "csv",
    ];
    let (out, _, code) = ramsey(&args);
    assert_eq!(code, 0);
    let expected = "p,successes,trials,freq,wilson_lo,wilson_hi\n\
                    0.2,0,40,0,0,0.08762160119728664\n\
                    0.5,18,40,0.45,0.3070530781090492,0.6017090820106795\n\
                    0.8,40,40,1,0.9123783988027134,1\n";
    assert_eq!(out, expected);
}

#[test]
fn curve_config_file() {
    let cfg = tmp_file("family = schur\nr = 2\nsize = 17\ngrid = 0.2,0.5,0.8\ntrials = 40\nseed = 9\n");
    let (out, _, code) = ramsey(&["curve", "--config", cfg.path().to_str().unwrap()]);
    assert_eq!(code, 0);
    let v = parse(&out);
    assert_eq!(v["size"], 17);
    assert_eq!(v["points"][1]["successes"], 18);
    assert!(v["p_hat"].as_f64().unwrap() > 0.2);
}

#[test]
fn janson_golden() {
    let sets = tmp_file("10 2\n3 0 1 2\n4 3 4 5 6\n");
    let path = sets.path().to_str().unwrap();
    let (out, _, code) = ramsey(&["janson", "--sets", path, "--p", "0.5", "--t", "0.1"]);
    assert_eq!(code, 0);
    let v = parse(&out);
    assert_eq!(v["mu"], 0.1875);
    assert_eq!(v["pseudo_variance"], 0.1875);
    assert_eq!(v["bound"], 0.973685749353145);

    let (out, _, code) = ramsey(&[
        "janson", "--sets", path, "--p", "0.5", "--mode", "coarseness", "--c", "0.5",
        "--trials", "400", "--seed", "11",
    ]);
    assert_eq!(code, 0);
    let v = parse(&out);
    assert_eq!(v["holds"], true);
    // Deviations beyond the mean are input errors.
    let (_, err, code) = ramsey(&["janson", "--sets", path, "--p", "0.5", "--t", "0.2"]);
    assert_eq!(code, 1);
    assert!(err.contains("t must lie"));
}

#[test]
fn worker_count_does_not_change_bytes() {
    let base = [
        "sample", "--family", "schur", "--size", "31", "--property", "non-colourable", "--p",
        "0.35", "--trials", "64", "--seed", "12",
    ];
    let mut one = base.to_vec();
    one.extend(["--workers", "1"]);
    let mut eight = base.to_vec();
    eight.extend(["--workers", "8"]);
    assert_eq!(ramsey(&one).0, ramsey(&eight).0);
}

#[test]
fn json_parses_for_every_subcommand() {
    let fano = "3 7 7\n0 1 2\n0 3 4\n0 5 6\n1 3 5\n1 4 6\n2 3 6\n2 4 5\n";
    let file = tmp_file(fano);
    let path = file.path().to_str().unwrap().to_string();
    let sets = tmp_file("10 2\n3 0 1 2\n4 3 4 5 6\n");
    let sets_path = sets.path().to_str().unwrap().to_string();
    let invocations: Vec<Vec<&str>> = vec![
        vec!["profile", "--hypergraph", &path],
        vec!["analyze-graph", "--graph", "cycle:5", "--rsc-r", "2"],
        vec!["arrow", "--g", "complete:5", "--h", "complete:3", "--r", "2"],
        vec!["colour", "--hypergraph", &path, "--r", "2"],
        vec!["choosable", "--hypergraph", &path, "--r", "2"],
        vec!["list-ramsey", "--mode", "schur", "--n", "7", "--set", "1,2,3"],
        vec!["clots", "--hypergraph", &path],
        vec!["obstruction", "--hypergraph", &path, "--set", "0,1,2", "--r", "2"],
        vec!["count", "--hypergraph", &path, "--what", "stars", "--r", "2"],
        vec![
            "sample", "--hypergraph", &path, "--property", "non-colourable", "--p", "0.5",
            "--trials", "10", "--seed", "1",
        ],
        vec![
            "curve", "--family", "schur", "--r", "2", "--size", "11", "--grid", "0.3,0.6",
            "--trials", "10", "--seed", "1",
        ],
        vec!["janson", "--sets", &sets_path, "--p", "0.5", "--t", "0.1"],
    ];
    for args in invocations {
        let (out, err, code) = ramsey(&args);
        assert_eq!(code, 0, "{args:?}: {err}");
        parse(&out);
    }
    // Reveal emits JSON lines rather than one document.
    let (out, _, code) = ramsey(&["reveal", "--hypergraph", &path, "--set", "0,1,2"]);
    assert_eq!(code, 0);
    for line in out.lines() {
        parse(line);
    }
    // Build emits the hypergraph text format.
    let (out, _, code) = ramsey(&["build", "--family", "kap", "--k", "3", "--size", "7"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("3 7 "));
}

#[test]
fn exit_codes() {
    // Unknown flags are usage errors.
    let (_, _, code) = ramsey(&["arrow", "--bogus", "x"]);
    assert_eq!(code, 1);
    // Malformed files are input errors with line diagnostics.
    let broken = tmp_file("3 7 7\n0 1\n");
    let (_, err, code) = ramsey(&["profile", "--hypergraph", broken.path().to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("line"), "stderr: {err}");
    // Conflicting instance sources are usage errors.
    let f = tmp_file("3 4 1\n0 1 2\n");
    let (_, _, code) = ramsey(&[
        "profile",
        "--hypergraph",
        f.path().to_str().unwrap(),
        "--family",
        "schur",
        "--size",
        "7",
    ]);
    assert_eq!(code, 1);
    // Budget exhaustion is inconclusive.
    let (out, _, code) = ramsey(&[
        "choosable", "--family", "schur", "--size", "31", "--r", "4", "--max-nodes", "2",
    ]);
    assert_eq!(code, 2, "{out}");
    assert_eq!(parse(&out)["verdict"], "inconclusive");
    // Timeouts are inconclusive.
    let (out, _, code) = ramsey(&[
        "analyze-graph", "--graph", "petersen", "--rsc-r", "3", "--timeout-ms", "1",
    ]);
    assert_eq!(code, 2, "{out}");
    assert_eq!(parse(&out)["verdict"], "inconclusive");
}
