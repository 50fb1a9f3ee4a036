//! Acceptance suite. Prints one `PASS`/`FAIL` line per criterion and exits
//! non-zero if any criterion fails.
//!
//! Each criterion also yields a machine-readable report (no timings); the
//! determinism criterion reruns everything and compares reports byte for
//! byte. The seed comes from `MVPAVELKA_SEED`, default 0.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use mvpavelka::algebra::identities::{
    dmv_identities, fixpoint_line, mv_identities, mv_models, pmv_identities, run_suite,
};
use mvpavelka::algebra::{
    enumerate_congruences, value, FiniteAlgebra, FiniteChain, IdentityModel, Partition,
    DEFAULT_SIZE_BOUND, MV_OPERATIONS,
};
use mvpavelka::calculus::{
    check_proof, replay_prop33, standard_lemmas, validate_lemma, SearchBudget, ValidationBudget,
};
use mvpavelka::degrees::{
    compactness_probe, proof_degree_lower, truth_degree_exact, truth_degree_grid, GridOptions,
    DEFAULT_SUBSET_BOUND,
};
use mvpavelka::gen;
use mvpavelka::{parse, Formula, LogicProfile, Rational01, Theory, Valuation};

struct Outcome {
    pass: bool,
    summary: String,
    report: Vec<String>,
}

impl Outcome {
    fn new(pass: bool, summary: impl Into<String>, report: Vec<String>) -> Self {
        Outcome {
            pass,
            summary: summary.into(),
            report,
        }
    }
}

fn f(s: &str) -> Formula {
    parse(s, &LogicProfile::ALL).expect("fixture parses")
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn mv_variety(seed: u64) -> Outcome {
    let start = Instant::now();
    let lines = run_suite(&mv_identities(), &mv_models(seed, 10_000)).expect("base identities evaluate");
    let elapsed = start.elapsed();
    let failures: usize = lines.iter().map(|l| l.report.counterexamples.len()).sum();
    let cases: usize = lines.iter().map(|l| l.report.cases).sum();
    let fast = elapsed < Duration::from_secs(30);
    Outcome::new(
        failures == 0 && fast,
        format!("{cases} cases on L2..L6 and 10000 samples, {failures} counterexamples, {elapsed:.1?} (limit 30s)"),
        lines.iter().flat_map(|l| l.lines()).collect(),
    )
}

fn expansions(seed: u64) -> Outcome {
    let sampled = |salt: u64, trials| IdentityModel::Sampled {
        seed: seed.wrapping_add(salt),
        trials,
        max_denominator: 1000,
    };
    let mut lines = run_suite(&pmv_identities(), &[sampled(1, 10_000)]).expect("product identities evaluate");
    for n in 1..=12 {
        lines.extend(run_suite(&dmv_identities(n), &[sampled(100 + n as u64, 1000)]).expect("division identities evaluate"));
    }
    lines.push(fixpoint_line());
    let failures: usize = lines.iter().map(|l| l.report.counterexamples.len()).sum();
    Outcome::new(
        failures == 0,
        format!("product 10000 triples, division n=1..12 x 1000, fixpoint; {failures} failures"),
        lines.iter().flat_map(|l| l.lines()).collect(),
    )
}

fn exact_spots(seed: u64) -> Outcome {
    let empty = Theory::empty(LogicProfile::ALL);
    let mut report = Vec::new();
    let mut pass = true;
    let d = truth_degree_exact(&f("p -> (p & p)"), &empty).expect("in fragment");
    let want = Valuation::new().with("p", Rational01::half());
    pass &= d.lo == Rational01::half() && d.hi == Rational01::half() && d.witness.as_ref() == Some(&want);
    report.push(format!("square {}", d.summary()));
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x3);
    let mut const_ok = 0;
    for _ in 0..20 {
        let r = Rational01::sample(&mut rng, 1000);
        let d = truth_degree_exact(&Formula::Const(r.clone()), &empty).expect("constant");
        if d.lo == r && d.hi == r {
            const_ok += 1;
        }
        report.push(format!("const {r} {}", d.summary()));
    }
    pass &= const_ok == 20;
    let t = Theory::new(LogicProfile::ALL, vec![f("p"), f("p -> q")]);
    let d = truth_degree_exact(&f("q"), &t).expect("in fragment");
    pass &= d.lo.is_one();
    report.push(format!("detach {}", d.summary()));
    Outcome::new(pass, format!("square 1/2 at p=1/2, {const_ok}/20 constants, detachment 1"), report)
}

/// Exhaustive minimum of `φ` over `{0, 1/10, …, 1}^n` points satisfying the
/// theory exactly.
fn chain_minimum(phi: &Formula, theory: &Theory, vars: &[String]) -> Option<Rational01> {
    let chain = FiniteChain::new(10);
    let mut best: Option<Rational01> = None;
    for a in chain.assignments(vars) {
        let v: Valuation = a.iter().map(|(x, &k)| (x.clone(), chain.value_of(k))).collect();
        if theory.generators.iter().all(|g| value(g, &v).expect("evaluates").is_one()) {
            let x = value(phi, &v).expect("evaluates");
            if best.as_ref().is_none_or(|b| &x < b) {
                best = Some(x);
            }
        }
    }
    best
}

fn cross_validation(seed: u64) -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x4);
    let vars = gen::variable_names(3);
    let opts = GridOptions::new(q(1, 20), q(1, 100));
    let slack = q(1, 10);
    let (mut bracketed, mut above, mut within, mut grid_empty, mut vacuous) = (0, 0, 0, 0, 0);
    let mut report = Vec::new();
    for i in 0..50 {
        let nv = rng.gen_range(1..=3);
        let scope = &vars[..nv];
        let phi = gen::pl_formula(&mut rng, scope, 4, 8);
        let size = rng.gen_range(0..=3);
        // Random theories are often unsatisfiable; redraw a few times.
        let mut theory = gen::pl_theory(&mut rng, scope, size, 3, 4);
        let mut exact = truth_degree_exact(&phi, &theory).expect("corpus is in the fragment");
        for _ in 0..8 {
            if !exact.vacuous {
                break;
            }
            theory = gen::pl_theory(&mut rng, scope, size, 3, 4);
            exact = truth_degree_exact(&phi, &theory).expect("corpus is in the fragment");
        }
        let grid = truth_degree_grid(&phi, &theory, &opts);
        if grid.lo <= exact.lo && exact.lo <= grid.hi {
            bracketed += 1;
        }
        let all_vars: Vec<String> = {
            let mut s: BTreeSet<String> = mvpavelka::syntax::variables(&phi);
            for g in &theory.generators {
                s.extend(mvpavelka::syntax::variables(g));
            }
            s.into_iter().collect()
        };
        let brute = chain_minimum(&phi, &theory, &all_vars);
        let brute_text = match &brute {
            Some(b) => {
                if &exact.lo <= b {
                    above += 1;
                }
                if b.value() - exact.lo.value() <= slack {
                    within += 1;
                }
                b.to_string()
            }
            None => {
                grid_empty += 1;
                if exact.vacuous {
                    vacuous += 1;
                }
                "none".to_string()
            }
        };
        report.push(format!(
            "case {i} phi {phi} theory [{}] exact {} grid {} brute {brute_text}",
            theory.generators.iter().map(|g| g.to_string()).collect::<Vec<_>>().join("; "),
            exact.summary(),
            grid.summary(),
        ));
    }
    let elapsed = start.elapsed();
    let comparable = 50 - grid_empty;
    let pass = bracketed == 50
        && above == comparable
        && within == comparable
        && grid_empty == vacuous
        && elapsed < Duration::from_secs(300);
    Outcome::new(
        pass,
        format!(
            "grid brackets exact {bracketed}/50; chain minimum >= exact {above}/{comparable}, within 1/10 {within}/{comparable}; \
             {grid_empty} without chain-feasible points ({vacuous} vacuous); {elapsed:.1?} (limit 300s)"
        ),
        report,
    )
}

fn proof_checker(seed: u64) -> Outcome {
    let mut report = Vec::new();
    let proof = replay_prop33(&f("p"), &f("q"), &f("r"));
    let verdict = check_proof(&proof);
    let mut pass = verdict.accepted();
    report.extend(verdict.lines());
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5);
    let vars = gen::variable_names(3);
    let profile = LogicProfile::BASE.with_product();
    let mut rejected = 0;
    for i in 0..100 {
        let (a, b, c) = (
            gen::formula(&mut rng, &vars, 1, &profile),
            gen::formula(&mut rng, &vars, 1, &profile),
            gen::formula(&mut rng, &vars, 1, &profile),
        );
        let base = replay_prop33(&a, &b, &c);
        let (kind, mutant) = gen::mutate_proof(&mut rng, &base).expect("non-empty proof");
        let v = check_proof(&mutant);
        if !v.accepted() {
            rejected += 1;
        }
        report.push(format!("mutation {i} {kind:?} {}", if v.accepted() { "accepted" } else { "rejected" }));
    }
    pass &= rejected == 100;
    let budget = ValidationBudget {
        max_chain: 6,
        samples: 0,
        ..ValidationBudget::default()
    };
    let mut lemmas_ok = 0;
    for (name, pattern) in standard_lemmas() {
        match validate_lemma(name, &f(pattern), &budget) {
            Ok(cases) => {
                lemmas_ok += 1;
                report.push(format!("lemma {name} valid {cases} cases"));
            }
            Err(e) => report.push(format!("lemma {name} {e}")),
        }
    }
    pass &= lemmas_ok == 2;
    Outcome::new(
        pass,
        format!(
            "replay {}, {rejected}/100 mutations rejected, {lemmas_ok}/2 lemmas valid on L2..L6",
            if verdict.accepted() { "accepted" } else { "rejected" }
        ),
        report,
    )
}

fn soundness(seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6);
    let vars = gen::variable_names(2);
    let budget = SearchBudget {
        max_steps: 200,
        ..SearchBudget::default()
    };
    let (mut sound, mut checked, mut positive) = (0, 0, 0);
    let mut report = Vec::new();
    for i in 0..200 {
        let (phi, theory) = gen::derivable_instance(&mut rng, &vars);
        let found = proof_degree_lower(&phi, &theory, &budget).expect("constants enabled");
        let truth = truth_degree_exact(&phi, &theory).expect("in fragment");
        if check_proof(&found.proof).accepted() {
            checked += 1;
        }
        if found.lo <= truth.lo {
            sound += 1;
        }
        if !found.lo.is_zero() {
            positive += 1;
        }
        report.push(format!("case {i} phi {phi} r {} via {} truth {}", found.lo, found.source, truth.lo));
    }
    Outcome::new(
        sound == 200 && checked == 200,
        format!("{sound}/200 with r <= truth degree, {checked}/200 proofs re-checked, {positive} with r > 0"),
        report,
    )
}

fn ground_equality(seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7);
    let empty = Theory::empty(gen::pl_profile());
    let (mut equal, mut checked) = (0, 0);
    let mut report = Vec::new();
    for i in 0..50 {
        let phi = gen::ground_formula(&mut rng, 4);
        let found = proof_degree_lower(&phi, &empty, &SearchBudget::default()).expect("constants enabled");
        let truth = truth_degree_exact(&phi, &empty).expect("in fragment");
        if found.lo == truth.lo {
            equal += 1;
        }
        if check_proof(&found.proof).accepted() {
            checked += 1;
        }
        report.push(format!("case {i} phi {phi} proof {} truth {} steps {}", found.lo, truth.lo, found.proof.len()));
    }
    Outcome::new(
        equal == 50 && checked == 50,
        format!("{equal}/50 exact equalities, {checked}/50 proofs re-checked"),
        report,
    )
}

fn subsets(items: &[usize]) -> Vec<Vec<usize>> {
    (0..1usize << items.len())
        .map(|mask| items.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &x)| x).collect())
        .collect()
}

fn compactness(seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x8);
    let vars = gen::variable_names(3);
    let (mut reached, mut minimal) = (0, 0);
    let mut report = Vec::new();
    for i in 0..25 {
        let size = rng.gen_range(1..=6);
        let theory = gen::pl_theory(&mut rng, &vars, size, 2, 3);
        let phi = gen::pl_formula(&mut rng, &vars, 3, 6);
        let r = truth_degree_exact(&phi, &theory).expect("in fragment").lo;
        let rep = compactness_probe(&phi, &theory, &r, DEFAULT_SUBSET_BOUND).expect("precondition holds");
        let degree = |idx: &[usize]| truth_degree_exact(&phi, &theory.subset(idx)).expect("in fragment").lo;
        if degree(&rep.subset) >= r {
            reached += 1;
        }
        let proper_fail = subsets(&rep.subset)
            .into_iter()
            .filter(|s| s.len() < rep.subset.len())
            .all(|s| degree(&s) < r);
        if proper_fail {
            minimal += 1;
        }
        report.push(format!("case {i} size {size} r {r} subset {:?} evaluated {}", rep.subset, rep.evaluated));
    }
    Outcome::new(
        reached == 25 && minimal == 25,
        format!("{reached}/25 subsets reach r, {minimal}/25 inclusion-minimal by enumeration"),
        report,
    )
}

/// Restricted growth strings of length `m`: every partition exactly once.
fn all_partitions(m: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, max: usize, m: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == m {
            out.push(prefix.clone());
            return;
        }
        for b in 0..=max + 1 {
            prefix.push(b);
            go(prefix, max.max(b), m, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if m > 0 {
        go(&mut vec![0], 0, m, &mut out);
    }
    out
}

/// Congruences by testing every partition against every operation table.
fn brute_congruences(a: &FiniteAlgebra, signature: &[&str]) -> usize {
    let m = a.size();
    all_partitions(m)
        .into_iter()
        .filter(|labels| {
            signature.iter().all(|name| {
                let op = a.operation(name).expect("operation present");
                let rows: Vec<Vec<usize>> = (0..m.pow(op.arity as u32))
                    .map(|mut idx| {
                        let mut args = vec![0; op.arity];
                        for slot in args.iter_mut().rev() {
                            *slot = idx % m;
                            idx /= m;
                        }
                        args
                    })
                    .collect();
                rows.iter().all(|x| {
                    rows.iter().all(|y| {
                        let related = x.iter().zip(y).all(|(&u, &v)| labels[u] == labels[v]);
                        let fx = op.table[rows.iter().position(|r| r == x).unwrap()];
                        let fy = op.table[rows.iter().position(|r| r == y).unwrap()];
                        !related || labels[fx] == labels[fy]
                    })
                })
            })
        })
        .count()
}

fn congruences(_seed: u64) -> Outcome {
    let mut report = Vec::new();
    let chain = |m| FiniteAlgebra::chain(&FiniteChain::with_elements(m));
    let product = chain(2).product(&chain(3));
    let con = enumerate_congruences(&product, &MV_OPERATIONS, DEFAULT_SIZE_BOUND).expect("within bound");
    let oracle = brute_congruences(&product, &MV_OPERATIONS);
    report.push(format!(
        "L2xL3 congruences {} oracle {oracle} [{}]",
        con.len(),
        con.partitions.iter().map(Partition::to_string).collect::<Vec<_>>().join(" ")
    ));
    let mut pass = con.len() == 4 && oracle == 4;
    let fixpoints = product.negation_fixpoints();
    report.push(format!("L2xL3 negation fixpoints {}", fixpoints.len()));
    // Where the fixpoint exists the expansion by it must keep the congruences.
    let mut expansions = 0;
    for &k in &fixpoints {
        let expanded = product.clone().with_constant("k", k);
        let full: Vec<&str> = MV_OPERATIONS.iter().copied().chain(["k"]).collect();
        pass &= enumerate_congruences(&expanded, &full, DEFAULT_SIZE_BOUND).expect("within bound") == con;
        expansions += 1;
    }
    let square = chain(3).product(&chain(3));
    let square_con = enumerate_congruences(&square, &MV_OPERATIONS, DEFAULT_SIZE_BOUND).expect("within bound");
    for &k in &square.negation_fixpoints() {
        let expanded = square.clone().with_constant("k", k);
        let full: Vec<&str> = MV_OPERATIONS.iter().copied().chain(["k"]).collect();
        let same = enumerate_congruences(&expanded, &full, DEFAULT_SIZE_BOUND).expect("within bound") == square_con;
        pass &= same;
        report.push(format!("L3xL3 fixpoint {k} congruences {} unchanged {same}", square_con.len()));
    }
    let mut simple = 0;
    for m in 2..=8 {
        let c = enumerate_congruences(&chain(m), &MV_OPERATIONS, DEFAULT_SIZE_BOUND).expect("within bound");
        if c.len() == 2 && c.is_simple() {
            simple += 1;
        }
        report.push(format!("L{m} congruences {}", c.len()));
    }
    pass &= simple == 7;
    Outcome::new(
        pass,
        format!(
            "|Con(L2xL3)| = {} (oracle {oracle}); {} fixpoint expansions of L2xL3 checked, L3xL3 surrogate checked; {simple}/7 chains simple",
            con.len(),
            expansions
        ),
        report,
    )
}

type Criterion = (&'static str, fn(u64) -> Outcome);

const CRITERIA: [Criterion; 9] = [
    ("mv-variety", mv_variety),
    ("expansion-suites", expansions),
    ("exact-degree-spots", exact_spots),
    ("solver-cross-validation", cross_validation),
    ("proof-checker", proof_checker),
    ("soundness", soundness),
    ("ground-equality", ground_equality),
    ("compactness", compactness),
    ("congruences", congruences),
];

fn run_all(seed: u64, print: bool) -> (Vec<bool>, String) {
    let mut passes = Vec::new();
    let mut report = String::new();
    for (i, (name, run)) in CRITERIA.iter().enumerate() {
        let start = Instant::now();
        let out = run(seed);
        if print {
            let tag = if out.pass { "PASS" } else { "FAIL" };
            println!("{tag} {:02} {name}: {} [{:.1?}]", i + 1, out.summary, start.elapsed());
        }
        passes.push(out.pass);
        report.push_str(&format!("criterion {name} {}\n", if out.pass { "pass" } else { "fail" }));
        for line in out.report {
            report.push_str(&line);
            report.push('\n');
        }
    }
    (passes, report)
}

fn main() -> ExitCode {
    let seed = std::env::var("MVPAVELKA_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0u64);
    println!("acceptance seed {seed}");
    let (mut passes, first) = run_all(seed, true);
    let (_, second) = run_all(seed, false);
    let same = first == second;
    println!(
        "{} {:02} determinism: two runs with seed {seed}, reports of {} bytes {}",
        if same { "PASS" } else { "FAIL" },
        CRITERIA.len() + 1,
        first.len(),
        if same { "identical" } else { "differ" }
    );
    passes.push(same);
    if let Ok(path) = std::env::var("MVPAVELKA_ACCEPTANCE_REPORT") {
        std::fs::write(path, &first).expect("report path is writable");
    }
    let failed = passes.iter().filter(|p| !**p).count();
    println!("acceptance: {} passed, {failed} failed", passes.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
