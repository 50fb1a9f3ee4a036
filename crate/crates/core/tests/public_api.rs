use num_rational::BigRational;

use mvpavelka::algebra::{
    check_compatible_expansion, check_identity, enumerate_congruences, eval_chain, value,
    FiniteAlgebra, FiniteChain, IdentityModel, DEFAULT_SIZE_BOUND, MV_OPERATIONS,
};
use mvpavelka::calculus::{
    check_proof, match_scheme, register_lemma, replay_prop33, search_proof,
    synthesize_ground_proof, AxiomScheme, LemmaRegistry, Param, Proof, SearchBudget,
    ValidationBudget,
};
use mvpavelka::degrees::{
    compactness_probe, lipschitz_bound, pavelka_gap, proof_degree_lower, truth_degree_exact,
    truth_degree_grid, GridOptions, DEFAULT_REGION_CAP, DEFAULT_SUBSET_BOUND,
};
use mvpavelka::syntax::{expand_multiple, substitute, to_core, variables};
use mvpavelka::{
    parse, Formula, LemmaError, LogicProfile, ParseErrorKind, Rational01, SearchError, Theory,
    Valuation,
};

fn f(s: &str) -> Formula {
    parse(s, &LogicProfile::ALL).unwrap()
}

fn q(n: i64, d: i64) -> Rational01 {
    Rational01::new(n, d).unwrap()
}

fn theory(gs: &[&str]) -> Theory {
    Theory::new(LogicProfile::ALL, gs.iter().map(|s| f(s)).collect())
}

#[test]
fn parsing_and_printing() {
    let base = LogicProfile::BASE;
    assert_eq!(
        parse("p -> (q -> p)", &base).unwrap(),
        Formula::imp(Formula::var("p"), Formula::imp(Formula::var("q"), Formula::var("p")))
    );
    let consts = LogicProfile::BASE.with_constants();
    assert_eq!(parse("[1/2]", &consts).unwrap(), Formula::Const(Rational01::half()));
    let err = parse("d3(p)", &base).unwrap_err();
    assert!(matches!(err.kind, ParseErrorKind::NotInProfile(_)), "{err}");
    assert_eq!(Formula::imp(Formula::var("p"), Formula::Zero).to_string(), "p -> 0");
    assert_eq!(Formula::Const(q(2, 3)).to_string(), "[2/3]");
    assert_eq!(Formula::bullet(Formula::var("p"), Formula::var("q")).to_string(), "p * q");
}

#[test]
fn transformations() {
    let p = Formula::var("p");
    assert_eq!(to_core(&Formula::neg(p.clone())), Formula::imp(p.clone(), Formula::Zero));
    assert_eq!(to_core(&Formula::One), Formula::imp(Formula::Zero, Formula::Zero));
    assert_eq!(expand_multiple(1, &p), p);
    assert_eq!(expand_multiple(2, &p), Formula::imp(Formula::neg(p.clone()), p.clone()));
    assert_eq!(
        expand_multiple(3, &p),
        Formula::imp(Formula::neg(p.clone()), Formula::imp(Formula::neg(p.clone()), p.clone()))
    );
    let b = [("p".to_string(), Formula::Const(q(1, 3)))].into_iter().collect();
    assert_eq!(substitute(&f("p -> q"), &b).to_string(), "[1/3] -> q");
    let b = [("p".to_string(), f("q & q"))].into_iter().collect();
    assert_eq!(substitute(&f("p -> p"), &b).to_string(), "q & q -> q & q");
    assert_eq!(variables(&f("d3(p * p)")).into_iter().collect::<Vec<_>>(), vec!["p"]);
    assert!(variables(&f("[1/2]")).is_empty());
}

#[test]
fn standard_evaluation() {
    let v = Valuation::parse("p=7/10,q=6/10").unwrap();
    assert_eq!(value(&f("p & q"), &v).unwrap(), q(3, 10));
    assert!(value(&f("p -> p"), &v).unwrap().is_one());
    let half = Valuation::new().with("p", Rational01::half());
    assert_eq!(value(&f("d3(p)"), &half).unwrap(), q(1, 6));
    assert_eq!(value(&f("[1/2] * [1/3]"), &Valuation::new()).unwrap(), q(1, 6));
}

#[test]
fn chain_evaluation_and_identities() {
    let l5 = FiniteChain::with_elements(5);
    let a = [("x".to_string(), 3), ("y".to_string(), 2)].into_iter().collect();
    assert_eq!(eval_chain(&f("x & y"), &l5, &a).unwrap(), 1);
    let l2 = FiniteChain::with_elements(2);
    let a = [("x".to_string(), 1), ("y".to_string(), 0)].into_iter().collect();
    assert_eq!(eval_chain(&f("x -> y"), &l2, &a).unwrap(), 0);

    let l4 = IdentityModel::Chain(FiniteChain::with_elements(4));
    assert!(check_identity(&f("x & (x -> y)"), &f("x /\\ y"), &l4).unwrap().passed());
    let l6 = IdentityModel::Chain(FiniteChain::with_elements(6));
    assert!(check_identity(&f("(x -> 0) -> 0"), &f("x"), &l6).unwrap().passed());
    let l3 = IdentityModel::Chain(FiniteChain::with_elements(3));
    let rep = check_identity(&f("x -> y"), &f("y -> x"), &l3).unwrap();
    let want = Valuation::new().with("x", Rational01::one()).with("y", Rational01::zero());
    assert!(rep.counterexamples.iter().any(|c| c.assignment == want));
}

#[test]
fn congruence_examples() {
    let chain = |m| FiniteAlgebra::chain(&FiniteChain::with_elements(m));
    let l4 = enumerate_congruences(&chain(4), &MV_OPERATIONS, DEFAULT_SIZE_BOUND).unwrap();
    assert!(l4.is_simple() && l4.len() == 2);
    let prod = chain(2).product(&chain(3));
    assert_eq!(enumerate_congruences(&prod, &MV_OPERATIONS, DEFAULT_SIZE_BOUND).unwrap().len(), 4);
    assert_eq!(enumerate_congruences(&FiniteAlgebra::new(1, 0, 0), &[], 4).unwrap().len(), 1);

    // A simple algebra keeps its two congruences under any expansion.
    let l4_op = chain(4).with_unary("f", vec![0, 1, 1, 3]);
    assert!(check_compatible_expansion(&l4_op, &MV_OPERATIONS, &["f"], DEFAULT_SIZE_BOUND).unwrap());
    // On a non-simple product, swapping coordinates breaks the factor congruences.
    let square = chain(2).product(&chain(2)).with_unary("swap", vec![0, 2, 1, 3]);
    assert!(!check_compatible_expansion(&square, &MV_OPERATIONS, &["swap"], DEFAULT_SIZE_BOUND).unwrap());
    // Componentwise fixpoint of L3 x L3 as a constant.
    let l3sq = chain(3).product(&chain(3));
    let k = l3sq.negation_fixpoints()[0];
    let expanded = l3sq.with_constant("k", k);
    assert!(check_compatible_expansion(&expanded, &MV_OPERATIONS, &["k"], DEFAULT_SIZE_BOUND).unwrap());
}

#[test]
fn scheme_matching() {
    let l1 = AxiomScheme::by_name("L1").unwrap();
    let m = match_scheme(l1, &f("p -> (q -> p)")).unwrap();
    assert_eq!(m.formulas["alpha"], f("p"));
    assert_eq!(m.formulas["beta"], f("q"));
    assert!(match_scheme(l1, &f("p -> (q -> q)")).is_none());
    let bk2 = AxiomScheme::by_name("BK2").unwrap();
    let m = match_scheme(bk2, &f("([1/2] -> [3/4]) -> [1]")).unwrap();
    assert_eq!(m.params["r"], Param::Rat(q(1, 2)));
    assert_eq!(m.params["s"], Param::Rat(q(3, 4)));
}

#[test]
fn proof_files_round_trip_and_check() {
    let text = "profile: base\ntheory: p\ntheory: p -> q\n1 | p | hyp:1\n2 | p -> q | hyp:2\n3 | q | mp:1,2\n";
    let proof = Proof::parse_file(text, &LogicProfile::BASE).unwrap();
    assert!(check_proof(&proof).accepted());
    assert_eq!(Proof::parse_file(&proof.to_file(), &LogicProfile::BASE).unwrap(), proof);
    let swapped = text.replace("mp:1,2", "mp:2,1");
    let bad = Proof::parse_file(&swapped, &LogicProfile::BASE).unwrap();
    assert!(!check_proof(&bad).accepted());

    let replay = replay_prop33(&f("p"), &f("q"), &f("r"));
    assert_eq!(replay.conclusion(), Some(&f("(p -> q) -> ((r * p) -> (r * q))")));
    let reparsed = Proof::parse_file(&replay.to_file(), &LogicProfile::BASE).unwrap();
    let verdict = check_proof(&reparsed);
    assert!(verdict.accepted(), "{:?}", verdict.lines());
    assert_eq!(verdict.lemmas_used.len(), 2);
    let same = replay_prop33(&f("p"), &f("p"), &f("p"));
    assert!(check_proof(&same).accepted());
}

#[test]
fn lemma_registration() {
    let mut reg = LemmaRegistry::new();
    let budget = ValidationBudget {
        samples: 500,
        ..ValidationBudget::default()
    };
    assert!(register_lemma(&mut reg, "a", f("(alpha -> beta) -> !(alpha & !beta)"), &budget).is_ok());
    assert!(register_lemma(&mut reg, "b", f("!(alpha & !beta) -> (alpha -> beta)"), &budget).is_ok());
    match register_lemma(&mut reg, "bad", f("alpha -> (alpha & alpha)"), &budget) {
        Err(LemmaError::Counterexample { assignment, .. }) => assert_eq!(assignment, "alpha=1/2"),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn search_and_synthesis() {
    let budget = SearchBudget::default();
    let p = search_proof(&f("q"), &theory(&["p", "p -> q"]), &budget).unwrap();
    assert!(check_proof(&p).accepted());
    let p = search_proof(&f("p -> p"), &theory(&[]), &budget).unwrap();
    assert!(check_proof(&p).accepted());
    let small = SearchBudget {
        max_steps: 50,
        ..budget
    };
    assert!(matches!(
        search_proof(&f("0"), &theory(&[]), &small),
        Err(SearchError::BudgetExhausted { .. })
    ));
    for (phi, r) in [("[1/2] + [1/3]", q(5, 6)), ("[3/4]", q(3, 4)), ("d2([1/2])", q(1, 4))] {
        let proof = synthesize_ground_proof(&f(phi), &r, &LogicProfile::ALL).unwrap();
        assert!(check_proof(&proof).accepted(), "{phi}");
        assert_eq!(proof.conclusion(), Some(&Formula::imp(Formula::Const(r), f(phi))));
    }
}

#[test]
fn degree_examples() {
    let d = truth_degree_exact(&f("p -> (p & p)"), &theory(&[])).unwrap();
    assert_eq!(d.summary(), "exact lo 1/2 hi 1/2 witness p=1/2");
    assert_eq!(
        d.lines(),
        vec!["exact", "lo 1/2", "hi 1/2", "witness {p: 1/2}", "vacuous: no"]
    );
    assert!(truth_degree_exact(&f("p"), &theory(&["p"])).unwrap().lo.is_one());
    assert_eq!(truth_degree_exact(&f("[3/4]"), &theory(&[])).unwrap().lo, q(3, 4));

    let l = lipschitz_bound(&f("p + p"));
    assert_eq!(l["p"], BigRational::from_integer(2.into()));

    let eps = BigRational::new(1.into(), 100.into());
    let g = truth_degree_grid(&f("p * p"), &theory(&[]), &GridOptions::new(eps.clone(), eps.clone()));
    assert!(g.hi.is_zero() && g.lo.is_zero());

    let d = proof_degree_lower(&f("0"), &theory(&[]), &SearchBudget { max_steps: 10, ..SearchBudget::default() }).unwrap();
    assert!(d.lo.is_zero());
    assert!(check_proof(&d.proof).accepted());

    let r = pavelka_gap(&f("p"), &theory(&["p"]), &SearchBudget::default(), DEFAULT_REGION_CAP, &GridOptions::default()).unwrap();
    assert!(r.equal && r.sound);
    assert_eq!(r.lines()[0], "proof_lower 1");

    let t = theory(&["p", "p -> q", "q -> p"]);
    let c = compactness_probe(&f("q"), &t, &Rational01::one(), DEFAULT_SUBSET_BOUND).unwrap();
    assert_eq!(c.subset, vec![0, 1]);
}
