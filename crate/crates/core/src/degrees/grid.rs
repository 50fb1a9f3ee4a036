use std::cmp::Ordering;
use std::collections::{BTreeMap, BinaryHeap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::exact::{scope, valuation};
use super::{DegreeBounds, Relaxation};
use crate::rational::Rational01;
use crate::syntax::{Formula, Theory};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridOptions {
    pub eps: BigRational,
    pub delta: BigRational,
    /// Boxes popped before the search stops with the current lower bound.
    pub max_boxes: usize,
    /// Upper limit on points in the coarse feasibility sweep.
    pub sweep_points: usize,
}

impl Default for GridOptions {
    fn default() -> Self {
        GridOptions {
            eps: BigRational::new(1.into(), 100.into()),
            delta: BigRational::new(1.into(), 100.into()),
            max_boxes: 200_000,
            sweep_points: 20_000,
        }
    }
}

impl GridOptions {
    pub fn new(eps: BigRational, delta: BigRational) -> Self {
        GridOptions {
            eps,
            delta,
            ..GridOptions::default()
        }
    }
}

/// Per-variable constants `L_x` with
/// `|v(f) − v'(f)| ≤ Σ_x L_x·|v(x) − v'(x)|`.
pub fn lipschitz_bound(f: &Formula) -> BTreeMap<String, BigRational> {
    fn add(into: &mut BTreeMap<String, BigRational>, from: BTreeMap<String, BigRational>) {
        for (x, l) in from {
            *into.entry(x).or_insert_with(BigRational::zero) += l;
        }
    }
    use Formula::*;
    match f {
        Var(x) => BTreeMap::from([(x.clone(), BigRational::one())]),
        Zero | One | FixK | Const(_) => BTreeMap::new(),
        Neg(a) => lipschitz_bound(a),
        Div(n, a) => {
            let k = BigRational::new(1.into(), (*n).into());
            lipschitz_bound(a).into_iter().map(|(x, l)| (x, l * &k)).collect()
        }
        Impl(a, b) | Odot(a, b) | Oplus(a, b) | Meet(a, b) | Join(a, b) | Bullet(a, b) => {
            let mut out = lipschitz_bound(a);
            add(&mut out, lipschitz_bound(b));
            out
        }
    }
}

/// Value of `f` at `point`, variables indexed by `vars`.
fn eval_at(f: &Formula, vars: &[String], point: &[BigRational]) -> BigRational {
    use Formula::*;
    let one = BigRational::one;
    let zero = BigRational::zero;
    let clip = |x: BigRational| x.max(zero()).min(one());
    match f {
        Var(x) => point[vars.iter().position(|v| v == x).expect("variable in scope")].clone(),
        Zero => zero(),
        One => one(),
        FixK => BigRational::new(1.into(), 2.into()),
        Const(r) => r.value().clone(),
        Neg(a) => one() - eval_at(a, vars, point),
        Div(n, a) => eval_at(a, vars, point) / BigRational::from_integer((*n).into()),
        Impl(a, b) => clip(one() - eval_at(a, vars, point) + eval_at(b, vars, point)),
        Odot(a, b) => clip(eval_at(a, vars, point) + eval_at(b, vars, point) - one()),
        Oplus(a, b) => clip(eval_at(a, vars, point) + eval_at(b, vars, point)),
        Meet(a, b) => eval_at(a, vars, point).min(eval_at(b, vars, point)),
        Join(a, b) => eval_at(a, vars, point).max(eval_at(b, vars, point)),
        Bullet(a, b) => eval_at(a, vars, point) * eval_at(b, vars, point),
    }
}

/// A box `[lo_i/N, hi_i/N]` of the cube with a certified lower bound on `φ`.
struct Cell {
    bound: BigRational,
    seq: u64,
    lo: Vec<u64>,
    hi: Vec<u64>,
}

impl PartialEq for Cell {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Cell {}

impl PartialOrd for Cell {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cell {
    // Reversed: the heap pops the smallest bound, oldest first.
    fn cmp(&self, other: &Self) -> Ordering {
        other.bound.cmp(&self.bound).then(other.seq.cmp(&self.seq))
    }
}

struct Grid<'a> {
    phi: &'a Formula,
    generators: &'a [Formula],
    vars: Vec<String>,
    n: u64,
    l_phi: Vec<BigRational>,
    l_gen: Vec<Vec<BigRational>>,
    threshold: BigRational,
    best: Option<(BigRational, Vec<BigRational>)>,
    seq: u64,
}

impl Grid<'_> {
    fn weights(&self, f: &Formula) -> Vec<BigRational> {
        let l = lipschitz_bound(f);
        self.vars.iter().map(|x| l.get(x).cloned().unwrap_or_else(BigRational::zero)).collect()
    }

    fn slack(weights: &[BigRational], half: &[BigRational]) -> BigRational {
        weights.iter().zip(half).map(|(l, d)| l * d).sum()
    }

    fn offer(&mut self, point: &[BigRational], phi_value: BigRational) {
        let feasible = self.generators.iter().all(|g| eval_at(g, &self.vars, point).is_one());
        if feasible && self.best.as_ref().is_none_or(|(b, _)| &phi_value < b) {
            self.best = Some((phi_value, point.to_vec()));
        }
    }

    /// Certified bound for the cell, or `None` when some generator stays
    /// below `1 − δ` throughout it.
    fn cell(&mut self, lo: Vec<u64>, hi: Vec<u64>) -> Option<Cell> {
        let den = BigInt::from(2 * self.n);
        let center: Vec<BigRational> = lo
            .iter()
            .zip(&hi)
            .map(|(a, b)| BigRational::new(BigInt::from(a + b), den.clone()))
            .collect();
        let half: Vec<BigRational> = lo
            .iter()
            .zip(&hi)
            .map(|(a, b)| BigRational::new(BigInt::from(b - a), den.clone()))
            .collect();
        for (g, w) in self.generators.iter().zip(&self.l_gen) {
            if eval_at(g, &self.vars, &center) + Self::slack(w, &half) < self.threshold {
                return None;
            }
        }
        let value = eval_at(self.phi, &self.vars, &center);
        let bound = &value - Self::slack(&self.l_phi, &half);
        self.offer(&center, value);
        self.seq += 1;
        Some(Cell {
            bound,
            seq: self.seq,
            lo,
            hi,
        })
    }

    fn sweep(&mut self, den: u64) {
        let dim = self.vars.len();
        let mut idx = vec![0u64; dim];
        loop {
            let point: Vec<BigRational> =
                idx.iter().map(|&k| BigRational::new(k.into(), den.into())).collect();
            let value = eval_at(self.phi, &self.vars, &point);
            self.offer(&point, value);
            let mut i = 0;
            while i < dim && idx[i] == den {
                idx[i] = 0;
                i += 1;
            }
            if i == dim {
                return;
            }
            idx[i] += 1;
        }
    }
}

/// Bounds on the truth degree of `φ` for any formula, products included.
///
/// `lo` is a certified lower bound, within `eps`, on the infimum of `φ` over
/// valuations with every generator `≥ 1 − delta`; it is found by
/// best-first branch and bound over boxes of pitch `1/N`, `N` chosen from the
/// Lipschitz constants of `φ`. `hi` is the least value of `φ` at a sampled
/// point satisfying every generator exactly, or 1 if none was sampled.
pub fn truth_degree_grid(phi: &Formula, theory: &Theory, options: &GridOptions) -> DegreeBounds {
    let vars = scope(phi, theory);
    let mut grid = Grid {
        phi,
        generators: &theory.generators,
        vars: vars.clone(),
        n: 1,
        l_phi: vec![],
        l_gen: vec![],
        threshold: BigRational::one() - &options.delta,
        best: None,
        seq: 0,
    };
    grid.l_phi = grid.weights(phi);
    grid.l_gen = theory.generators.iter().map(|g| grid.weights(g)).collect();
    let total: BigRational = grid.l_phi.iter().sum();
    let pitch = if options.eps > BigRational::zero() {
        (total / &options.eps).ceil().to_integer().to_u64().unwrap_or(u64::MAX / 4)
    } else {
        1 << 20
    };
    grid.n = pitch.clamp(1, 1 << 40);

    let dim = vars.len();
    let mut heap = BinaryHeap::new();
    if let Some(root) = grid.cell(vec![0; dim], vec![grid.n; dim]) {
        heap.push(root);
    }
    let mut lower = None;
    let mut popped = 0usize;
    while let Some(cell) = heap.pop() {
        popped += 1;
        let widest = (0..dim).max_by_key(|&i| (cell.hi[i] - cell.lo[i], std::cmp::Reverse(i)));
        let leaf = widest.is_none_or(|i| cell.hi[i] - cell.lo[i] <= 1);
        if leaf || popped >= options.max_boxes {
            lower = Some(cell.bound);
            break;
        }
        let i = widest.expect("non-leaf cell has a dimension");
        let mid = (cell.lo[i] + cell.hi[i]) / 2;
        let mut left_hi = cell.hi.clone();
        left_hi[i] = mid;
        let mut right_lo = cell.lo.clone();
        right_lo[i] = mid;
        for (lo, hi) in [(cell.lo.clone(), left_hi), (right_lo, cell.hi)] {
            if let Some(c) = grid.cell(lo, hi) {
                heap.push(c);
            }
        }
    }

    let mut den = grid.n.min(12);
    while den > 1 && (den + 1).checked_pow(dim as u32).is_none_or(|p| p as usize > options.sweep_points) {
        den -= 1;
    }
    grid.sweep(den);

    let relaxation = Some(Relaxation {
        eps: options.eps.clone(),
        delta: options.delta.clone(),
    });
    let (hi, witness) = match &grid.best {
        Some((v, p)) => (
            Rational01::try_from_big(v.clone()).expect("formula values lie in [0,1]"),
            Some(valuation(&vars, p)),
        ),
        None => (Rational01::one(), None),
    };
    match lower {
        Some(lo) => DegreeBounds {
            lo: Rational01::clamp(lo),
            hi,
            exact: false,
            witness,
            vacuous: false,
            relaxation,
        },
        None => DegreeBounds {
            lo: Rational01::one(),
            hi: Rational01::one(),
            exact: false,
            witness: None,
            vacuous: true,
            relaxation,
        },
    }
}
