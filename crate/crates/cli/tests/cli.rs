use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use mvpavelka::algebra::{FiniteAlgebra, FiniteChain};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mvpavelka"))
        .args(args)
        .env_remove("MVPAVELKA_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn eval_strong_conjunction() {
    let o = run(&["eval", "--profile", "base", "p & q", "--val", "p=7/10,q=3/5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "3/10\n");
}

#[test]
fn eval_expansions() {
    let o = run(&["eval", "d3([3/4]) * K", "--val", ""]);
    assert_eq!(stdout(&o), "1/8\n");
}

#[test]
fn degree_summary_and_lines() {
    let o = run(&["degree", "--profile", "base,constants", "p -> (p & p)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "exact lo 1/2 hi 1/2 witness p=1/2\n");

    let o = run(&["degree", "--profile", "base,constants", "--format", "lines", "p -> (p & p)"]);
    assert_eq!(stdout(&o), "exact\nlo 1/2\nhi 1/2\nwitness {p: 1/2}\nvacuous: no\n");
}

#[test]
fn degree_with_products_uses_the_grid() {
    let o = run(&["degree", "p * p"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("grid lo 0 hi 0"), "{}", stdout(&o));
}

#[test]
fn degree_over_a_theory() {
    let dir = tempfile::tempdir().unwrap();
    let th = write(dir.path(), "t.th", "profile: base,constants\n[3/4] -> p\n");
    let o = run(&["degree", "p & p", "--theory", &th]);
    assert_eq!(stdout(&o), "exact lo 1/2 hi 1/2 witness p=3/4\n");
}

#[test]
fn exact_engine_rejects_products() {
    let o = run(&["degree", "--engine", "exact", "p * q"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
}

#[test]
fn malformed_inputs_exit_two() {
    for args in [
        vec!["eval", "p &"],
        vec!["eval", "--profile", "base", "p * q"],
        vec!["eval", "p", "--val", "p=3/2"],
        vec!["degree", "p", "--eps", "0"],
        vec!["check", "/nonexistent/proof"],
        vec!["eval", "p", "--profile", "sideways"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn replay_emits_a_checkable_proof() {
    let o = run(&["replay", "prop33", "--alpha", "p", "--beta", "q", "--gamma", "r"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("accepted steps 15"));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.proof");
    let p = path.to_str().unwrap();
    let o = run(&["replay", "prop33", "--alpha", "p -> q", "--beta", "!p", "--gamma", "q", "--out", p]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["check", p]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("accepted"));
}

#[test]
fn check_rejects_a_tampered_proof() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.proof");
    let p = path.to_str().unwrap();
    run(&["replay", "prop33", "--out", p]);
    let text = fs::read_to_string(&path).unwrap().replace("mp:1,4", "mp:2,4");
    fs::write(&path, text).unwrap();
    let o = run(&["check", p]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("rejected"), "{}", stdout(&o));
}

#[test]
fn gap_proof_rechecks() {
    let dir = tempfile::tempdir().unwrap();
    let th = write(dir.path(), "t.th", "profile: all\np\np -> q\n");
    let proof = dir.path().join("g.proof");
    let o = run(&["gap", "q", "--theory", &th, "--out", proof.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("proof_lower 1\n") && out.contains("gap 0\n") && out.contains("sound yes\n"), "{out}");
    let o = run(&["check", proof.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn gap_on_a_ground_formula_is_closed() {
    let o = run(&["gap", "[1/3] -> K * [1/2]"]);
    let out = stdout(&o);
    assert!(out.contains("proof_source ground\n") && out.contains("equal yes\n"), "{out}");
}

#[test]
fn compact_keeps_the_relevant_generator() {
    let dir = tempfile::tempdir().unwrap();
    let th = write(dir.path(), "c.th", "profile: base,constants\n[1/3] -> q\n[1/2] -> p\nq\n");
    let o = run(&["compact", "p", "--theory", &th, "--r", "1/2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "subset_size 1\nsubset_degree 1/2\nfull_degree 1/2\nevaluated 3\nkeep 2 [1/2] -> p\n"
    );
    let o = run(&["compact", "p", "--theory", &th, "--r", "3/4"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn congruences_of_chains_and_products() {
    let dir = tempfile::tempdir().unwrap();
    let chain = FiniteAlgebra::chain(&FiniteChain::with_elements(4));
    let a = write(dir.path(), "l4.alg", &chain.to_file());
    let o = run(&["congr", &a]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("congruences 2\n") && out.contains("simple yes\n"), "{out}");

    let two = FiniteAlgebra::chain(&FiniteChain::with_elements(2));
    let mut square = two.product(&two);
    // Swaps the coordinates, so it breaks both projection kernels.
    let swap: Vec<usize> = (0..4).map(|x| (x % 2) * 2 + x / 2).collect();
    square.insert_operation("swap", 1, swap);
    let b = write(dir.path(), "sq.alg", &square.to_file());
    let o = run(&["congr", &b, "--reduct", "impl,neg", "--expansion", "swap"]);
    let out = stdout(&o);
    assert!(out.contains("congruences 4\n") && out.contains("compatible no\n"), "{out}");
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn axioms_pass_and_are_seeded() {
    let a = run(&["axioms", "--trials", "200", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    assert!(stdout(&a).ends_with("failures 0 seed 7\n"));
    let lines = run(&["axioms", "--trials", "50", "--profile", "base", "--format", "lines"]);
    assert!(stdout(&lines).lines().all(|l| l.starts_with("PASS ") || l.starts_with("identities ")));
}

#[test]
fn output_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let th = write(dir.path(), "t.th", "profile: all\n[1/2] -> p\np -> q\n");
    for args in [
        vec!["degree", "q & p", "--theory", th.as_str(), "--format", "lines"],
        vec!["degree", "p * q", "--theory", th.as_str()],
        vec!["gap", "q", "--theory", th.as_str()],
        vec!["axioms", "--trials", "100", "--format", "lines"],
        vec!["replay", "prop33"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status.code(), b.status.code());
    }
}
