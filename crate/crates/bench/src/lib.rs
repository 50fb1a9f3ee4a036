//! Seeded workloads shared by the benchmarks.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use mvpavelka::gen;
use mvpavelka::{parse, Formula, LogicProfile, Rational01, Theory};

/// A truth-degree instance: a target and the theory it is measured over.
pub struct DegreeCase {
    pub phi: Formula,
    pub theory: Theory,
}

/// Piecewise-linear instances over `vars` variables with at most
/// `truncations` truncation nodes in the target.
pub fn pl_cases(seed: u64, count: usize, vars: usize, truncations: usize) -> Vec<DegreeCase> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let names = gen::variable_names(vars);
    (0..count)
        .map(|_| DegreeCase {
            phi: gen::pl_formula(&mut rng, &names, 3, truncations),
            theory: gen::pl_theory(&mut rng, &names, 2, 2, 3),
        })
        .collect()
}

/// Instances with products, which only the grid engine accepts.
pub fn product_cases() -> Vec<DegreeCase> {
    let profile = LogicProfile::ALL;
    let f = |s: &str| parse(s, &profile).expect("fixture parses");
    vec![
        DegreeCase {
            phi: f("p * q -> p & q"),
            theory: Theory::empty(profile),
        },
        DegreeCase {
            phi: f("(p * p) \\/ !q"),
            theory: Theory::new(profile, vec![f("[1/2] -> p"), f("p -> q")]),
        },
    ]
}

/// Derivable targets with their theories.
pub fn derivable_cases(seed: u64, count: usize) -> Vec<(Formula, Theory)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let names = gen::variable_names(2);
    (0..count).map(|_| gen::derivable_instance(&mut rng, &names)).collect()
}

/// Ground formulas paired with their values.
pub fn ground_cases(seed: u64, count: usize) -> Vec<(Formula, Rational01)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let f = gen::ground_formula(&mut rng, 3);
            let v = mvpavelka::algebra::value(&f, &mvpavelka::Valuation::new()).expect("ground formula");
            (f, v)
        })
        .collect()
}
