use std::path::PathBuf;
use std::process::Command;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

fn unnet(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_unnet")).args(args).current_dir(fixtures()).output().unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn ok(args: &[&str], expected: &str) {
    let r = unnet(args);
    assert_eq!(r.code, 0, "{args:?}: {}", r.stderr);
    assert_eq!(r.stdout, expected, "{args:?}");
}

fn fails(args: &[&str], code: i32, stderr_contains: &str) {
    let r = unnet(args);
    assert_eq!(r.code, code, "{args:?}: {}", r.stderr);
    assert!(r.stderr.contains(stderr_contains), "{args:?}: {}", r.stderr);
}

#[test]
fn analyze() {
    ok(&["analyze", "line4.txt"], "UNN: yes\n");
    ok(&["analyze", "k22.txt"], "UNN: no; witness 0,1\n");
    ok(&["analyze", "k4.txt", "--method", "naive"], "UNN: yes\n");
    ok(&["analyze", "line4.txt", "--method", "algebraic"], "UNN: yes\n");
    ok(&["analyze", "directed3.txt"], "UNN (out): yes\nUNN (in): yes\n");
    fails(&["analyze", "k22.txt", "--require"], 1, "not a UNN");
    fails(&["analyze", "k22.txt", "--method", "fast"], 2, "invalid value");
}

#[test]
fn kappa() {
    ok(&["kappa", "k4.txt"], "3\n");
    ok(&["kappa", "line4.txt"], "1\n");
    ok(&["kappa", "k22.txt"], "2\n");
    fails(&["kappa", "k4.txt", "--format", "dot"], 2, "supports --format text");
}

#[test]
fn extract() {
    ok(&["extract", "star4.txt"], "kept: 0,1\nexcluded: 2,3,4\nexcluded with degree > 1: none\n");
    ok(&["extract", "k4.txt"], "kept: 0,1\nexcluded: 2,3\nexcluded with degree > 1: 2,3\n");
    ok(&["extract", "line4.txt"], "kept: 0,1,2,3\nexcluded: none\nexcluded with degree > 1: none\n");

    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("star.dot");
    ok(
        &["extract", "star4.txt", "--format", "dot", "--output", dot.to_str().unwrap()],
        "kept: 0,1\nexcluded: 2,3,4\nexcluded with degree > 1: none\n",
    );
    assert_eq!(std::fs::read_to_string(dot).unwrap(), "// unnet-dot v1\ngraph {\n  2;\n  3;\n  4;\n  0 -- 1;\n}\n");
}

#[test]
fn extend() {
    ok(&["extend", "k22.txt"], "cost: 2\nadded: 0-1 2-3\noptimal: yes\n");
    ok(&["extend", "k22.txt", "--costs", "costs_k22.txt"], "cost: 11/2\nadded: 0-1 2-3\noptimal: yes\n");
    ok(&["extend", "k4.txt"], "cost: 0\nadded: none\noptimal: yes\n");

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("ext.txt");
    ok(&["extend", "k22.txt", "--output", out.to_str().unwrap()], "cost: 2\nadded: 0-1 2-3\noptimal: yes\n");
    assert_eq!(std::fs::read_to_string(out).unwrap(), "# unnet-edges v1\nn 4\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
    fails(&["extend", "k22.txt", "--budget", "0"], 2, "--budget");
}

#[test]
fn join() {
    ok(&["join", "k2.txt", "k2.txt", "--pairs", "0:0"], "joined: 4 vertices, 3 edges\n# unnet-edges v1\nn 4\n0 1\n0 2\n2 3\n");
    fails(&["join", "k2.txt", "k2.txt", "--pairs", "0:1,1:0"], 1, "twins 0 and 2");
    let r = unnet(&["join", "k4.txt", "k4.txt", "--pairs", "0:0,1:1,2:2", "--k", "3"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.starts_with("joined: 8 vertices, 15 edges\n"));
    fails(&["join", "k4.txt", "k4.txt", "--pairs", "0:0", "--k", "3"], 1, "");
    fails(&["join", "k2.txt", "k2.txt", "--pairs", "0-1"], 2, "not `u:v`");
}

#[test]
fn paths() {
    ok(&["paths", "k4.txt", "--from", "0", "--to", "1", "--k", "3"], "0 1\n0 2 1\n0 3 1\n");
    ok(&["paths", "line4.txt", "--from", "0", "--to", "2", "--k", "1"], "0 1 2\n");
    ok(
        &["paths", "k4.txt", "--from", "0", "--to", "1", "--k", "2", "--format", "csv"],
        "# unnet-paths v1\npath,vertices\n0,0 1\n1,0 2 1\n",
    );
    fails(&["paths", "line4.txt", "--from", "0", "--to", "3", "--k", "2"], 1, "only 1 vertex-disjoint paths");
    fails(&["paths", "k4.txt", "--from", "1", "--to", "1", "--k", "1"], 2, "must differ");
}

#[test]
fn simulate() {
    ok(
        &["simulate", "k5.txt", "--from", "0", "--to", "1", "--d", "2", "--k", "4", "--adversary", "active=3", "--seed", "7", "--message", "hi"],
        "keys: 10 provisioned, tree bound 4, pairwise bound 10\nstatus: success\ndelivered: hi\n\
         path 0: 0 1\npath 1: 0 2 1\npath 2: 0 3 1\npath 3: 0 4 1\ncorrupted paths: 2\n",
    );
    ok(
        &["simulate", "k22.txt", "--from", "0", "--to", "1", "--d", "1", "--k", "2", "--adversary", "passive=2", "--verify-threshold", "1"],
        "keys: 4 provisioned, tree bound 3, pairwise bound 6\nstatus: success\ndelivered: hello\n\
         path 0: 0 2 1\npath 1: 0 3 1\ncorrupted paths: none\nnode 2 observed 5 shares on path 0\n\
         authentication: accept (2/2 votes, threshold 1)\nwarning: neighborhood of 0 also belongs to 1\n",
    );
    ok(
        &["simulate", "k4.txt", "--from", "0", "--to", "1", "--d", "2", "--k", "3", "--adversary", "active=2"],
        "keys: 6 provisioned, tree bound 3, pairwise bound 6\nstatus: decode-failure\n\
         path 0: 0 1\npath 1: 0 2 1\npath 2: 0 3 1\ncorrupted paths: 1\n",
    );
    ok(
        &["simulate", "line4.txt", "--from", "0", "--to", "3", "--d", "1", "--k", "2"],
        "keys: 3 provisioned, tree bound 3, pairwise bound 6\nstatus: routing-failure\ncorrupted paths: none\n",
    );
    let r = unnet(&["simulate", "k5.txt", "--from", "0", "--to", "1", "--d", "2", "--k", "4", "--restrict-tree"]);
    assert!(r.stdout.starts_with("keys: 4 provisioned, tree bound 4, pairwise bound 10\nstatus: success\n"));
    fails(&["simulate", "k4.txt", "--from", "0", "--to", "0", "--d", "1", "--k", "1"], 2, "must differ");
    fails(&["simulate", "k4.txt", "--from", "0", "--to", "1", "--d", "3", "--k", "2"], 2, "d <= k");
    fails(&["simulate", "k4.txt", "--from", "0", "--to", "1", "--d", "1", "--k", "2", "--adversary", "spies=1"], 2, "unknown key");
    fails(&["simulate", "k4.txt", "--from", "0", "--to", "1", "--d", "1", "--k", "2", "--adversary", "active=1"], 1, "sender or receiver");
    fails(&["simulate", "k4.txt", "--from", "0", "--to", "1", "--d", "1", "--k", "2", "--p", "16"], 2, "not a prime");
}

#[test]
fn sweep() {
    let expected = "# unnet-sweep v1\nd,k,adversary,trials,success_rate,leaked\n\
                    2,4,1,20,1.0000,no\n2,4,2,20,0.0000,yes\n";
    let args = ["sweep", "k5.txt", "--from", "0", "--to", "1", "--d", "2", "--k", "4", "--adversary-sizes", "1,2", "--trials", "20", "--seed", "1"];
    ok(&args, expected);
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sweep.csv");
    let mut with_output = args.to_vec();
    with_output.extend(["--format", "csv", "--output", out.to_str().unwrap()]);
    ok(&with_output, "");
    assert_eq!(std::fs::read_to_string(out).unwrap(), expected);
    fails(&["sweep", "k5.txt", "--from", "0", "--to", "1", "--d", "2", "--k", "4", "--trials", "0"], 2, "--trials");
}

#[test]
fn share_and_reconstruct() {
    ok(&["share", "--secret", "5", "--d", "2", "--k", "3", "--p", "17", "--seed", "1"], "1 10\n2 15\n3 3\n");
    ok(
        &["share", "--secret", "5", "--d", "2", "--k", "3", "--p", "17", "--seed", "1", "--format", "csv"],
        "# unnet-shares v1\nx,y\n1,10\n2,15\n3,3\n",
    );
    ok(&["reconstruct", "shares_p17.txt", "--d", "2", "--p", "17"], "5\n");
    ok(&["reconstruct", "shares_corrupt_p17.txt", "--d", "2", "--p", "17", "--correct"], "5\n");

    let dir = tempfile::tempdir().unwrap();
    let shares = dir.path().join("s.txt");
    ok(&["share", "--secret", "200", "--d", "3", "--k", "5", "--seed", "9", "--output", shares.to_str().unwrap()], "");
    ok(&["reconstruct", shares.to_str().unwrap(), "--d", "3", "--correct"], "200\n");
    fails(&["share", "--secret", "17", "--d", "2", "--k", "3", "--p", "17"], 2, "below p");
    fails(&["share", "--secret", "1", "--d", "4", "--k", "3"], 2, "invalid sharing parameters");
}

#[test]
fn input_errors() {
    fails(&["kappa", "missing.txt"], 1, "cannot read missing.txt");
    fails(&["kappa", "bad_vertex.txt"], 1, "line 3");
    fails(&["analyze"], 2, "");
    fails(&["bogus"], 2, "unrecognized subcommand");
}
