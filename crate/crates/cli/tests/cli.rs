use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hybrid-trust"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn example_paths_both_models() {
    let o = run(&["example-paths"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "path,model,cost");
    assert_eq!(lines.len(), 1 + 6 + 2);
    assert!(lines.contains(&"A-J-H,direct,3.4524"));
    assert!(lines.contains(&"A-B-G-H,recommended,4.3519"));
    assert!(lines.contains(&"A-E-C-D-H,recommended,5.5050"));
    assert_eq!(lines[7], "A-J-H,best:direct,3.4524");
    assert_eq!(lines[8], "A-B-G-H,best:recommended,4.3519");
}

#[test]
fn example_paths_single_model() {
    let text = stdout(&run(&["example-paths", "--model", "recommended"]));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 1 + 3 + 1);
    assert_eq!(lines[4], "A-B-G-H,best:recommended,4.3519");
    let text = stdout(&run(&["example-paths", "--model", "direct"]));
    assert!(text.ends_with("A-J-H,best:direct,3.4524\n"));
}

#[test]
fn trust_variation_defaults() {
    let text = stdout(&run(&["trust-variation"]));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "step,t1,tau,cost_direct,cost_recommended");
    assert_eq!(lines.len(), 11);
    assert!(lines[1].starts_with("0,1.000000,0.050000,21.000000,21.000000"));
    let last: Vec<f64> = lines[10].split(',').map(|x| x.parse().unwrap()).collect();
    assert_eq!((last[1], last[2]), (0.1, 0.33));
    assert!((last[3] - 13.0303).abs() < 1e-3 && (last[4] - 40.3030).abs() < 1e-3);
}

#[test]
fn trust_variation_reads_config_and_out() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "s.toml", "[variation]\nsteps = 4\n");
    let out = dir.path().join("v.csv");
    let o = run(&["trust-variation", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(out).unwrap().lines().count(), 5);
}

#[test]
fn alpha_sweep_small_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "s.toml", "[sweep]\nalphas = [0.0, 1.0]\nreplicates = 2\n");
    let a = run(&["alpha-sweep", "--config", &cfg, "--seed", "5", "--workers", "1"]);
    let b = run(&["alpha-sweep", "--config", &cfg, "--seed", "5", "--workers", "3"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "alpha,degree_target,mean_realized_degree,mean_failure,std_failure,replicates"
    );
    assert_eq!(lines.len(), 1 + 2 * 2);
    assert!(lines[1].starts_with("0,6.5,"));
    assert!(lines[4].starts_with("1,2.2,") && lines[4].ends_with(",2"));
    let c = run(&["alpha-sweep", "--config", &cfg, "--seed", "6"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn unreachable_degree_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "s.toml", "[sweep]\ndegree_targets = [7.9]\n");
    let o = run(&["alpha-sweep", "--config", &cfg]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn topology_generate_then_validate() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("grid.txt");
    let f = file.to_str().unwrap();
    let o = run(&["topology", "generate", "--seed", "9", "--out", f]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&file).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("node ")).count(), 225);
    assert_eq!(text.lines().filter(|l| l.ends_with(" distrusted")).count(), 45);

    let v = run(&["topology", "validate", f]);
    assert!(v.status.success());
    assert!(stdout(&v).contains("ok, 225 nodes"));
    assert!(v.stderr.is_empty());

    let again = run(&["topology", "generate", "--seed", "9"]);
    assert_eq!(stdout(&again), text);
}

#[test]
fn topology_generate_flags() {
    let o = run(&[
        "topology",
        "generate",
        "--rows",
        "3",
        "--cols",
        "4",
        "--target-degree",
        "3",
    ]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("node ")).count(), 12);
    let bad = run(&["topology", "generate", "--distrusted-fraction", "1.5"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn topology_validate_names_bad_lines() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "bad.txt",
        "node A trusted\nnode B trusted\nedge A B 1.5\nedge B A 0.5\nedge B C 0.5\n",
    );
    let o = run(&["topology", "validate", &f]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("bad.txt:3: trust 1.5"), "{err}");
    assert!(err.contains("bad.txt:5:"), "{err}");
    assert!(!err.contains(":4:"));
}

#[test]
fn trust_tree_command() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "t.toml",
        "[trust]\ninherent_weight = 0.5\nobserved_weight = 0.5\n\
         inherent = [{ name = \"contract\", weight = 1.0, value = 0.9 }]\n\
         observed = [{ name = \"dropping\", weight = 1.0, value = 0.5 }]\n",
    );
    let text = stdout(&run(&["trust-tree", "--config", &cfg]));
    assert_eq!(
        text,
        "component,value,band\ninherent,0.900000,strong trust\nobserved,0.500000,neutral\nuniversal,0.700000,weak trust\n"
    );
    let missing = run(&["trust-tree"]);
    assert_eq!(missing.status.code(), Some(1));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(run(&["example-paths", "--model", "sideways"]).status.code(), Some(1));
    assert_eq!(run(&["alpha-sweep", "--workers", "0"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));

    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "s.toml", "[vote]\nalpha = 0.5\nalhpa = 0.4\n");
    let o = run(&["alpha-sweep", "--config", &cfg]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8(o.stderr).unwrap().contains("line 3"));
    let missing = dir.path().join("nope.toml");
    assert_eq!(
        run(&["trust-variation", "--config", missing.to_str().unwrap()])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&["topology", "validate", missing.to_str().unwrap()]).status.code(),
        Some(2)
    );
}
