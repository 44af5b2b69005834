use std::fs;
use std::path::PathBuf;

use steinerpow::cli::{run, EXIT_INCONCLUSIVE, EXIT_NO, EXIT_OK, EXIT_USAGE};
use steinerpow::{Graph, SteinerTree};

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("steinerpow-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["steinerpow"];
    full.extend_from_slice(args);
    let code = run(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn file(name: &str, text: &str) -> String {
    let p = scratch(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn recognize_triangle_and_cycle() {
    let k3 = file("k3.graph", "3 3\n0 1\n1 2\n0 2\n");
    let (code, out, _) = call(&["recognize", "--k4", &k3]);
    assert_eq!(code, EXIT_OK);
    let t = SteinerTree::parse(&out).unwrap();
    assert_eq!(t.to_text(), out);

    let c4 = file("c4.graph", "4 4\n0 1\n1 2\n2 3\n3 0\n");
    let (code, out, _) = call(&["recognize", "--k4", &c4]);
    assert_eq!(code, EXIT_NO);
    assert_eq!(out.trim(), "reject not-chordal");
    let (code, out, _) = call(&["recognize", "--leaf6", &c4]);
    assert_eq!((code, out.trim()), (EXIT_NO, "reject not-chordal"));
}

#[test]
fn parse_errors_carry_line_numbers() {
    let bad = file("bad.graph", "# header next\n3 2\n0 1\n\n1 three\n");
    let (code, _, err) = call(&["recognize", "--k4", &bad]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("line 5"), "{err}");

    let g = file("p2.graph", "2 1\n0 1\n");
    let t = file("bad.tree", "2\n0 -1 r:0\n1 0 q\n");
    let (code, _, err) = call(&["verify", "--k", "4", &g, &t]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("line 3"), "{err}");

    let (code, _, _) = call(&["recognize", &g]);
    assert_eq!(code, EXIT_USAGE);
    let (code, _, _) = call(&["recognize", "--k4", "/nonexistent/graph"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn gen_recognize_verify_round_trip() {
    let prefix = scratch("gen1");
    let (code, _, _) = call(&["gen", "--k", "4", "--reals", "8", "--steiner", "6", "--seed", "1", "--out", prefix.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    let gp = prefix.with_extension("graph");
    let tp = prefix.with_extension("tree");
    let g_text = fs::read_to_string(&gp).unwrap();
    let t_text = fs::read_to_string(&tp).unwrap();
    assert_eq!(Graph::parse_edge_list(&g_text).unwrap().to_edge_list(), g_text);
    assert_eq!(SteinerTree::parse(&t_text).unwrap().to_text(), t_text);

    let (gs, ts) = (gp.to_str().unwrap(), tp.to_str().unwrap());
    assert_eq!(call(&["verify", "--k", "4", gs, ts]).0, EXIT_OK);

    let out_tree = scratch("gen1.found.tree");
    let (code, _, _) = call(&["recognize", "--k4", gs, "-o", out_tree.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    let (code, out, _) = call(&["verify", "--k", "4", gs, out_tree.to_str().unwrap()]);
    assert_eq!((code, out.as_str()), (EXIT_OK, "ok\n"));
    // a 4-root is not a 3-root here
    assert_eq!(call(&["verify", "--k", "3", gs, out_tree.to_str().unwrap()]).0, EXIT_NO);
}

#[test]
fn leaf_gen_round_trip() {
    let prefix = scratch("leaf1");
    let p = prefix.to_str().unwrap();
    assert_eq!(call(&["gen", "--k", "6", "--leaf", "--reals", "9", "--steiner", "4", "--seed", "3", "--out", p]).0, EXIT_OK);
    let gp = prefix.with_extension("graph");
    let gs = gp.to_str().unwrap();
    let (code, out, _) = call(&["recognize", "--leaf6", gs]);
    assert_eq!(code, EXIT_OK);
    let t = file("leaf1.found.tree", &out);
    assert_eq!(call(&["verify", "--k", "6", "--leaf", gs, &t]).0, EXIT_OK);
}

#[test]
fn oracle_and_arrange() {
    let p3 = file("p3.graph", "3 2\n0 1\n1 2\n");
    let (code, out, _) = call(&["oracle", "--k", "4", &p3]);
    assert_eq!(code, EXIT_OK);
    let t = file("p3.tree", &out);
    assert_eq!(call(&["verify", "--k", "4", &p3, &t]).0, EXIT_OK);

    let c4 = file("c4b.graph", "4 4\n0 1\n1 2\n2 3\n3 0\n");
    assert_eq!(call(&["oracle", "--k", "4", &c4]).0, EXIT_NO);
    let k5 = file("k5.graph", "5 10\n0 1\n0 2\n0 3\n0 4\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n");
    let (code, out, _) = call(&["oracle", "--k", "4", "--node-cap", "0", &k5]);
    assert_eq!((code, out.trim()), (EXIT_INCONCLUSIVE, "inconclusive"));

    let (code, out, _) = call(&["arrange", "--tree", &p3]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("{1} minimal-separator mult=1"), "{out}");
    assert!(out.contains("convergent=true"), "{out}");
}

#[test]
fn sweep_catches_injected_bugs() {
    let (code, out, _) = call(&["sweep", "--small", "--only", "2,4"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert_eq!(out.lines().filter(|l| l.starts_with("[PASS]")).count(), 2);
    for m in ["reject-trees", "subdivide"] {
        let (code, out, _) = call(&["sweep", "--small", "--only", "1,2,3", "--mutate", m]);
        assert_eq!(code, EXIT_NO, "{m}: {out}");
        assert!(out.contains("[FAIL]"));
    }
    assert_eq!(call(&["sweep", "--mutate", "nope"]).0, EXIT_USAGE);
}
