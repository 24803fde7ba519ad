use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::sync::OnceLock;

fn work_dir(name: &str) -> PathBuf {
    let d = Path::new(env!("CARGO_TARGET_TMPDIR")).join("cli-tests").join(name);
    std::fs::create_dir_all(&d).unwrap();
    d
}

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_luroth")).current_dir(dir).args(args).output().expect("binary runs")
}

fn text(bytes: &[u8]) -> String {
    String::from_utf8_lossy(bytes).into_owned()
}

fn data_lines(s: &str) -> usize {
    s.lines().filter(|l| !l.trim().is_empty() && !l.starts_with('#')).count()
}

/// Expression at p = 2017 shared by the tests below.
fn expression_2017() -> &'static PathBuf {
    static L: OnceLock<PathBuf> = OnceLock::new();
    L.get_or_init(|| {
        let dir = work_dir("shared");
        let out = run(&dir, &["find-luroth", "--prime", "2017", "--seed", "1", "--out", "L.dat"]);
        assert!(out.status.success(), "{}", text(&out.stderr));
        dir.join("L.dat")
    })
}

#[test]
fn find_luroth_is_reproducible() {
    let first = std::fs::read(expression_2017()).unwrap();
    let dir = work_dir("rerun");
    let out = run(&dir, &["find-luroth", "--prime", "2017", "--seed", "1", "--out", "L.dat"]);
    assert!(out.status.success());
    let err = text(&out.stderr);
    for line in ["rank 1165", "dim N1 215", "dim N2 216", "extracted relations 1"] {
        assert!(err.contains(line), "missing {line:?} in {err}");
    }
    assert_eq!(std::fs::read(dir.join("L.dat")).unwrap(), first);
    let body = text(&first);
    assert!(body.contains("\ndegree 54\n") && body.contains("\nmodulus 2017\n"));
    for key in ["# tool luroth", "# command luroth find-luroth", "# seed 1", "# prime 2017"] {
        assert!(body.contains(key), "header lacks {key:?}");
    }
}

#[test]
fn small_prime_is_a_usage_error() {
    let out = run(&work_dir("usage"), &["find-luroth", "--prime", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(text(&out.stderr).contains("not a prime"));
    let out = run(&work_dir("usage"), &["gen", "generic", "--prime", "2011"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn invariants_of_fermat_and_degenerate_quartics() {
    let dir = work_dir("invariants");
    std::fs::write(dir.join("q.txt"), "# prime 10007\n1 0 0 0 0 0 0 0 0 0 1 0 0 0 1\n1 0 0 0 0 0 0 0 0 0 1 0 0 0 0\n").unwrap();
    let out = run(&dir, &["invariants", "q.txt"]);
    assert!(out.status.success());
    let stdout = text(&out.stdout);
    let rows: Vec<Vec<&str>> = stdout.lines().filter(|l| !l.starts_with('#')).map(|l| l.split(' ').collect()).collect();
    assert_eq!(rows[0].len(), 13);
    assert_eq!(rows[0][12], "I27");
    assert_ne!(rows[1][12], "0", "Fermat quartic is smooth");
    assert_eq!(rows[2][12], "0", "x^4 + y^4 is singular");

    std::fs::write(dir.join("bad.txt"), "# prime 10007\n\n1 0 0 0 0 0 0 0 0 0 1 0 0 1\n").unwrap();
    let out = run(&dir, &["invariants", "bad.txt"]);
    assert!(!out.status.success());
    assert!(text(&out.stderr).contains("line 3: expected 15 coefficients, found 14"), "{}", text(&out.stderr));
}

#[test]
fn empty_batch_has_a_header() {
    let out = run(&work_dir("empty"), &["gen", "generic", "--count", "0", "--seed", "4"]);
    assert!(out.status.success());
    let s = text(&out.stdout);
    assert_eq!(data_lines(&s), 0);
    assert!(s.contains("# seed 4") && s.contains("# prime 10007") && s.contains("# family generic") && s.contains("# count 0"));
}

#[test]
fn l1_batch_validates_and_probes_clean() {
    let dir = work_dir("l1");
    let l = expression_2017().to_str().unwrap();
    let out = run(&dir, &["gen", "l1", "--prime", "2017", "--count", "200", "--seed", "7", "--expression", l, "--out", "l1.txt"]);
    assert!(out.status.success(), "{}", text(&out.stderr));
    assert!(text(&out.stderr).contains("generated 200 of 200"));
    assert_eq!(data_lines(&std::fs::read_to_string(dir.join("l1.txt")).unwrap()), 200);
    let out = run(&dir, &["probe", "l1.txt", "--degree", "24", "--expect-new", "0"]);
    assert!(out.status.success());
    assert!(text(&out.stderr).contains("0 new relations"));
}

#[test]
fn l2_and_remark_probes() {
    let dir = work_dir("probes");
    assert!(run(&dir, &["gen", "l2", "--count", "200", "--seed", "3", "--out", "l2.txt"]).status.success());
    let out = run(&dir, &["probe", "l2.txt", "--degree", "30", "--expect-new", "1", "--out", "p30.txt"]);
    assert!(out.status.success());
    assert!(text(&out.stderr).contains("1 new relation: I3*I27"));
    let report = std::fs::read_to_string(dir.join("p30.txt")).unwrap();
    assert!(report.contains("generic_kernel_dim 1\nlocus_kernel_dim 2\nnew_relations 1\nrelation 1 monomial I3*I27\n"));
    let out = run(&dir, &["probe", "l2.txt", "--degree", "15"]);
    assert!(text(&out.stderr).contains("0 new relations"));

    assert!(run(&dir, &["gen", "remark", "--count", "60", "--seed", "3", "--out", "rem.txt"]).status.success());
    let out = run(&dir, &["probe", "rem.txt", "--degree", "24", "--expect-new", "27"]);
    assert!(out.status.success());
    assert!(text(&out.stderr).contains("27 new relations"));
    // a wrong expectation is a failed checkpoint
    let out = run(&dir, &["probe", "rem.txt", "--degree", "24", "--expect-new", "26"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn pentalateral_batch_file_is_accepted() {
    let dir = work_dir("batch");
    assert!(run(&dir, &["gen", "luroth", "--prime", "2017", "--count", "1500", "--seed", "5", "--out", "pent.txt"]).status.success());
    let out = run(&dir, &["find-luroth", "--prime", "2017", "--luroth-file", "pent.txt", "--out", "L.dat"]);
    assert!(out.status.success(), "{}", text(&out.stderr));
    let strip = |p: &Path| std::fs::read_to_string(p).unwrap().lines().filter(|l| !l.starts_with('#')).collect::<Vec<_>>().join("\n");
    assert_eq!(strip(&dir.join("L.dat")), strip(expression_2017()));
}

#[test]
fn ciani_commands() {
    let dir = work_dir("ciani");
    let out = run(&dir, &["expand-ciani", "--out", "product.txt"]);
    assert!(out.status.success());
    let err = text(&out.stderr);
    assert!(err.contains("support 1695") && err.contains("enumeration 3439"));
    let product = std::fs::read_to_string(dir.join("product.txt")).unwrap();
    assert!(product.contains("\nsupport 1695\n"));

    let l = expression_2017();
    let out = run(&dir, &["verify-ciani", l.to_str().unwrap(), "--trials", "200"]);
    assert!(out.status.success());
    let lambda = text(&out.stdout);
    assert!(lambda.starts_with("lambda ") && lambda.contains("over 200 trials"));

    // corrupt one coefficient
    let original = std::fs::read_to_string(l).unwrap();
    let mut lines: Vec<String> = original.lines().map(str::to_string).collect();
    let i = lines.iter().position(|s| s.starts_with("16 1 0")).unwrap();
    let mut words: Vec<&str> = lines[i].split(' ').collect();
    let bumped = (words[13].parse::<u64>().unwrap() + 1) % 2017;
    let bumped = bumped.to_string();
    words[13] = &bumped;
    lines[i] = words.join(" ");
    std::fs::write(dir.join("bad.dat"), lines.join("\n") + "\n").unwrap();
    let out = run(&dir, &["verify-ciani", "bad.dat"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(text(&out.stdout).contains("failure witness (a,b,c,d,e,f) = ("));
}

#[test]
fn ciani_interpolation_matches_the_product() {
    let dir = work_dir("interp");
    let out = run(&dir, &["interpolate-ciani", expression_2017().to_str().unwrap(), "--out", "restriction.txt"]);
    assert!(out.status.success(), "{}", text(&out.stderr));
    assert!(text(&out.stderr).contains("checkpoint restriction equals lambda * G^4*H^2*J: pass"));
}
