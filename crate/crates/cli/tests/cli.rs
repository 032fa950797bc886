use std::io::Write;
use std::process::{Command, Output};

use serde::de::DeserializeOwned;
use serde::Serialize;
use tempfile::NamedTempFile;

use raag_cli::output::*;

const C4: &str = "vertices: a b c d\nedges: a-b b-c c-d d-a\n";
const C5: &str = "# pentagon\nvertices: v1 v2 v3 v4 v5\nedges: v1-v2 v2-v3 v3-v4 v4-v5 v5-v1\n";

fn file(contents: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

fn raag(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_raag")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap().trim_end().to_string()
}

fn ok(args: &[&str]) -> String {
    let o = raag(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

/// Parses `--json` output into `T` and checks it survives a second round trip.
fn json<T: Serialize + DeserializeOwned + PartialEq + std::fmt::Debug>(args: &[&str]) -> T {
    let mut args = args.to_vec();
    args.push("--json");
    let text = ok(&args);
    let value: T = serde_json::from_str(&text).unwrap();
    let again: T = serde_json::from_str(&serde_json::to_string(&value).unwrap()).unwrap();
    assert_eq!(value, again);
    value
}

#[test]
fn normal_form() {
    let g = file(C4);
    let p = g.path().to_str().unwrap();
    assert_eq!(ok(&["nf", "-g", p, "a b a^-1"]), "b");
    assert_eq!(ok(&["mul", "--graph", p, "a b", "b^-1 c"]), "a c");
    let e: ElementOut = json(&["nf", "-g", p, "c a c^-1 a^-1"]);
    assert_eq!(e.length, 4);
}

#[test]
fn graph_check() {
    let g = file(C5);
    let text = ok(&["graph-check", "-g", g.path().to_str().unwrap()]);
    assert!(text.contains("transvection-free: true"));
    assert!(text.contains("separating-star: false"));
    assert!(text.contains("finite-out: true"));
    assert!(text.contains("de-rham: 1 irreducible factor"));

    let g = file(C4);
    let r: GraphCheckOut = json(&["graph-check", "-g", g.path().to_str().unwrap()]);
    assert_eq!(r.finite_out, Some(false));
    assert_eq!(r.irreducible_factors, vec![vec!["a", "c"], vec!["b", "d"]]);

    let g = file("vertices: x y\n");
    let r: GraphCheckOut = json(&["graph-check", "-g", g.path().to_str().unwrap()]);
    assert_eq!((r.connected, r.finite_out), (false, None));
}

#[test]
fn rays() {
    let g = file(C4);
    let p = g.path().to_str().unwrap();
    assert_eq!(ok(&["ray-classify", "-g", p, "--period", "a b"]), "non-regular, phi type {a,b}, rep \"\"");
    let o = raag(&["ray-classify", "-g", p, "--period", "a a^-1"]);
    assert_eq!(o.status.code(), Some(1));

    let g = file(C5);
    let p = g.path().to_str().unwrap();
    let r: RayOut = json(&["ray-classify", "-g", p, "--period", "v1 v3 v5 v2 v4"]);
    assert!(r.regular);
    assert_eq!(r.checked_to, 12);
    let r: RayOut = json(&["ray-classify", "-g", p, "--prefix", "v2", "--period", "v1"]);
    assert_eq!((r.regular, r.phi_type, r.phi_rep), (false, vec!["v1".to_string()], "v2".to_string()));
}

#[test]
fn parabolics() {
    let g = file(C5);
    let p = g.path().to_str().unwrap();
    let s: SupportOut = json(&["support", "-g", p, "v3 v1 v3^-1"]);
    assert_eq!(s.support.ptype, vec!["v1"]);
    assert_eq!(s.support.rep, "v3");
    let c: ParabolicOut = json(&["centralizer", "-g", p, "v1"]);
    assert_eq!(c.ptype, vec!["v1", "v2", "v5"]);
    assert_eq!(raag(&["centralizer", "-g", p, "v1 v3"]).status.code(), Some(1));
}

#[test]
fn extension_graph() {
    let g = file(C5);
    let p = g.path().to_str().unwrap();
    let b: ExtBallOut = json(&["ext-ball", "-g", p, "--radius", "0"]);
    assert_eq!((b.vertices.len(), b.edges.len()), (5, 5));
    let b: ExtBallOut = json(&["ext-ball", "-g", p, "--radius", "1"]);
    assert_eq!(b.vertices.len(), 25);
    assert!(ok(&["ext-ball", "-g", p, "--radius", "1", "--dot"]).starts_with("graph extension {"));

    assert_eq!(ok(&["ext-adjacent", "-g", p, "v1", "", "v2", ""]), "true");
    assert_eq!(ok(&["ext-adjacent", "-g", p, "v1", "", "v3", "v2"]), "false");
    let a: ExtAdjacentOut = json(&["ext-adjacent", "-g", p, "v1", "v2", "v2", "v1"]);
    assert_eq!(a.x.rep, "");

    let f: FixpointOut = json(&["fixpoint-scan", "-g", p, "v1", "", "v2", "", "--radius", "3"]);
    assert_eq!(f.count, 2);
    let f: FixpointOut = json(&["fixpoint-scan", "-g", p, "v1", "", "v3", "", "--radius", "2"]);
    assert_eq!(f.count, 19);
}

#[test]
fn hyperplanes() {
    let g = file(C5);
    let p = g.path().to_str().unwrap();
    let h: HyperplanesOut = json(&["hyperplanes", "-g", p, "v1 v3"]);
    assert_eq!(h.hyperplanes[1].coset_rep, "v1");
    assert!(h.crossings.is_empty());
    assert_eq!(raag(&["hyperplanes", "-g", p, "v1 v1^-1"]).status.code(), Some(1));
}

#[test]
fn free_subgroup() {
    let g = file(C5);
    let f: FreeOut = json(&["free-full-support", "-g", g.path().to_str().unwrap()]);
    assert_eq!((f.u0.as_deref(), f.v0.as_deref()), (Some("v1"), Some("v3")));
    assert!(f.local_isometry && f.failures.is_empty());
    assert_eq!(f.words_checked, 52);

    let g = file(C4);
    let f: FreeOut = json(&["free-full-support", "-g", g.path().to_str().unwrap(), "--max-len", "2"]);
    assert!(f.diagonal);
    assert_eq!(f.words_checked, 16);

    let g = file("vertices: a b\nedges: a-b\n");
    assert_eq!(raag(&["free-full-support", "-g", g.path().to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn lattices() {
    let gog = file("gvertex x 2\ngvertex y 4\ngvertex z 8\n");
    let c: CovolumeOut = json(&["lattice-covolume", "--gog", gog.path().to_str().unwrap()]);
    assert_eq!(c.partial_sums.last().map(String::as_str), Some("7/8"));

    let gog = file("tail a 2*2^k\n");
    let c: CovolumeOut = json(&["lattice-covolume", "--gog", gog.path().to_str().unwrap(), "--terms", "3"]);
    assert_eq!(c.partial_sums, vec!["1/2", "3/4", "7/8"]);
    assert_eq!(c.closed_form.as_deref(), Some("1/1"));

    let v: ValenceOut = json(&["gog-validate", "--family", "--depth", "4"]);
    assert!(v.passed);
    assert_eq!(v.skipped.as_deref(), Some("t4"));

    let bad = file("gvertex x 4\ngvertex y 4\ngvertex z 4\ngedge x y a 2\ngedge x z a 4\n");
    assert_eq!(raag(&["gog-validate", "--gog", bad.path().to_str().unwrap()]).status.code(), Some(1));
    let broken = file("gvertex x 4\ngvertex y 6\ngedge x y a 4\n");
    let o = raag(&["gog-validate", "--gog", broken.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("does not divide"));
}

#[test]
fn selftest() {
    let s: SelftestOut = json(&["selftest", "--only", "10"]);
    assert!(s.passed);
    assert_eq!(s.criteria.len(), 1);
    let text = ok(&["selftest", "--only", "7"]);
    assert!(text.starts_with("[PASS] criterion  7"));
    assert_eq!(raag(&["selftest", "--only", "11"]).status.code(), Some(1));
}

#[test]
fn exit_codes() {
    assert_eq!(raag(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(raag(&["nf", "a"]).status.code(), Some(2));
    assert_eq!(raag(&["nf", "-g", "/nonexistent/graph", "a"]).status.code(), Some(1));
    let g = file(C4);
    let o = raag(&["nf", "-g", g.path().to_str().unwrap(), "a^2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("malformed word"));
    let bad = file("vertices: a b\nedges: a-z\n");
    let o = raag(&["nf", "-g", bad.path().to_str().unwrap(), "a"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    assert_eq!(raag(&["--help"]).status.code(), Some(0));
}
