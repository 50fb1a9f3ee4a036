//! Finite algebras given by operation tables, and their congruence lattices.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use super::chain::FiniteChain;
use crate::error::AlgebraError;

/// Default carrier-size bound for congruence enumeration.
pub const DEFAULT_SIZE_BOUND: usize = 40;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Operation {
    pub arity: usize,
    /// Row-major table of length `m^arity`.
    pub table: Vec<usize>,
}

impl Operation {
    fn apply(&self, m: usize, args: &[usize]) -> usize {
        let idx = args.iter().fold(0, |acc, &a| acc * m + a);
        self.table[idx]
    }
}

/// A finite algebra on `{0, …, m−1}` with designated bottom and top.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAlgebra {
    size: usize,
    pub zero: usize,
    pub one: usize,
    ops: BTreeMap<String, Operation>,
}

/// MV operation names installed by [`FiniteAlgebra::chain`].
pub const MV_OPERATIONS: [&str; 6] = ["impl", "neg", "odot", "oplus", "meet", "join"];

impl FiniteAlgebra {
    pub fn new(size: usize, zero: usize, one: usize) -> Self {
        assert!(size >= 1 && zero < size && one < size);
        FiniteAlgebra {
            size,
            zero,
            one,
            ops: BTreeMap::new(),
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn operation(&self, name: &str) -> Option<&Operation> {
        self.ops.get(name)
    }

    pub fn operation_names(&self) -> impl Iterator<Item = &str> {
        self.ops.keys().map(String::as_str)
    }

    /// Installs a table; panics if its length does not match the arity.
    pub fn insert_operation(&mut self, name: &str, arity: usize, table: Vec<usize>) {
        assert_eq!(table.len(), self.size.pow(arity as u32), "table size for `{name}`");
        assert!(table.iter().all(|&x| x < self.size), "table entry out of range");
        self.ops.insert(name.to_string(), Operation { arity, table });
    }

    pub fn with_constant(mut self, name: &str, element: usize) -> Self {
        self.insert_operation(name, 0, vec![element]);
        self
    }

    pub fn with_unary(mut self, name: &str, table: Vec<usize>) -> Self {
        self.insert_operation(name, 1, table);
        self
    }

    /// The MV-chain as a table algebra, elements ordered by value.
    pub fn chain(c: &FiniteChain) -> Self {
        let n = c.denominator() as usize;
        let m = n + 1;
        let mut a = FiniteAlgebra::new(m, 0, n);
        let binary = |f: &dyn Fn(usize, usize) -> usize| -> Vec<usize> {
            (0..m).flat_map(|x| (0..m).map(move |y| (x, y))).map(|(x, y)| f(x, y)).collect()
        };
        a.insert_operation("impl", 2, binary(&|x, y| (n + y - x).min(n)));
        a.insert_operation("odot", 2, binary(&|x, y| (x + y).saturating_sub(n)));
        a.insert_operation("oplus", 2, binary(&|x, y| (x + y).min(n)));
        a.insert_operation("meet", 2, binary(&|x, y| x.min(y)));
        a.insert_operation("join", 2, binary(&|x, y| x.max(y)));
        a.insert_operation("neg", 1, (0..m).map(|x| n - x).collect());
        a
    }

    /// Direct product; element `(i, j)` is encoded as `i * other.size + j`.
    /// Only operations present in both factors are kept.
    pub fn product(&self, other: &FiniteAlgebra) -> Self {
        let (m1, m2) = (self.size, other.size);
        let enc = |i: usize, j: usize| i * m2 + j;
        let mut out = FiniteAlgebra::new(m1 * m2, enc(self.zero, other.zero), enc(self.one, other.one));
        for (name, op) in &self.ops {
            let Some(op2) = other.ops.get(name) else { continue };
            if op.arity != op2.arity {
                continue;
            }
            let arity = op.arity;
            let total = (m1 * m2).pow(arity as u32);
            let mut table = Vec::with_capacity(total);
            for idx in 0..total {
                let mut args = vec![0; arity];
                let mut rest = idx;
                for slot in args.iter_mut().rev() {
                    *slot = rest % (m1 * m2);
                    rest /= m1 * m2;
                }
                let left: Vec<usize> = args.iter().map(|a| a / m2).collect();
                let right: Vec<usize> = args.iter().map(|a| a % m2).collect();
                table.push(enc(op.apply(m1, &left), op2.apply(m2, &right)));
            }
            out.insert_operation(name, arity, table);
        }
        out
    }

    /// Elements fixed by `neg`.
    pub fn negation_fixpoints(&self) -> Vec<usize> {
        match self.ops.get("neg") {
            Some(op) => (0..self.size).filter(|&x| op.table[x] == x).collect(),
            None => Vec::new(),
        }
    }

    /// Reads the table format:
    ///
    /// ```text
    /// carrier: 3
    /// zero: 0
    /// one: 2
    /// op impl 2
    /// 2 2 2
    /// 1 2 2
    /// 0 1 2
    /// op neg 1
    /// 2 1 0
    /// ```
    ///
    /// A table of arity `k ≥ 1` has `m^(k−1)` rows of `m` entries; a constant
    /// has one row with a single entry. `#` starts a comment line.
    pub fn parse_file(text: &str) -> Result<Self, AlgebraError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
            .peekable();
        let err = |line: usize, msg: &str| AlgebraError::Format {
            line,
            msg: msg.to_string(),
        };
        let mut header = |key: &str| -> Result<(usize, usize), AlgebraError> {
            let (line, l) = lines.next().ok_or_else(|| err(0, &format!("missing `{key}:` header")))?;
            let v = l
                .strip_prefix(key)
                .and_then(|r| r.strip_prefix(':'))
                .ok_or_else(|| err(line, &format!("expected `{key}:` header")))?;
            v.trim()
                .parse::<usize>()
                .map(|v| (line, v))
                .map_err(|_| err(line, "expected a non-negative integer"))
        };
        let (line, size) = header("carrier")?;
        if size == 0 {
            return Err(err(line, "carrier must be non-empty"));
        }
        let (zl, zero) = header("zero")?;
        let (ol, one) = header("one")?;
        if zero >= size {
            return Err(err(zl, "zero outside carrier"));
        }
        if one >= size {
            return Err(err(ol, "one outside carrier"));
        }
        let mut alg = FiniteAlgebra::new(size, zero, one);
        while let Some((line, l)) = lines.next() {
            let parts: Vec<&str> = l.split_whitespace().collect();
            if parts.len() != 3 || parts[0] != "op" {
                return Err(err(line, "expected `op <name> <arity>`"));
            }
            let name = parts[1];
            let arity: usize = parts[2].parse().map_err(|_| err(line, "bad arity"))?;
            if arity > 2 {
                return Err(err(line, "arity above 2 is not supported"));
            }
            let (rows, cols) = if arity == 0 { (1, 1) } else { (size.pow(arity as u32 - 1), size) };
            let mut table = Vec::with_capacity(rows * cols);
            for _ in 0..rows {
                let (rl, row) = lines.next().ok_or_else(|| err(line, "table truncated"))?;
                let entries = row
                    .split_whitespace()
                    .map(|t| t.parse::<usize>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|_| err(rl, "non-numeric table entry"))?;
                if entries.len() != cols {
                    return Err(err(rl, &format!("expected {cols} entries")));
                }
                if entries.iter().any(|&e| e >= size) {
                    return Err(err(rl, "table entry outside carrier"));
                }
                table.extend(entries);
            }
            alg.insert_operation(name, arity, table);
        }
        Ok(alg)
    }

    pub fn to_file(&self) -> String {
        let mut out = format!("carrier: {}\nzero: {}\none: {}\n", self.size, self.zero, self.one);
        for (name, op) in &self.ops {
            let _ = writeln!(out, "op {name} {}", op.arity);
            let cols = if op.arity == 0 { 1 } else { self.size };
            for row in op.table.chunks(cols) {
                let cells: Vec<String> = row.iter().map(usize::to_string).collect();
                let _ = writeln!(out, "{}", cells.join(" "));
            }
        }
        out
    }
}

/// A partition of the carrier, stored as the least element of each
/// element's block.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn identity(m: usize) -> Self {
        Partition((0..m).collect())
    }

    pub fn total(m: usize) -> Self {
        Partition(vec![0; m])
    }

    pub fn from_labels(labels: &[usize]) -> Self {
        let mut first: BTreeMap<usize, usize> = BTreeMap::new();
        Partition(
            labels
                .iter()
                .enumerate()
                .map(|(i, l)| *first.entry(*l).or_insert(i))
                .collect(),
        )
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.0[a] == self.0[b]
    }

    pub fn block_count(&self) -> usize {
        self.0.iter().enumerate().filter(|(i, r)| *i == **r).count()
    }

    pub fn labels(&self) -> &[usize] {
        &self.0
    }

    pub fn meet(&self, other: &Partition) -> Partition {
        let pairs: Vec<(usize, usize)> = self.0.iter().copied().zip(other.0.iter().copied()).collect();
        let mut ids: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        let labels: Vec<usize> = pairs
            .iter()
            .map(|p| {
                let next = ids.len();
                *ids.entry(*p).or_insert(next)
            })
            .collect();
        Partition::from_labels(&labels)
    }

    pub fn join(&self, other: &Partition) -> Partition {
        let mut uf = UnionFind::new(self.0.len());
        for (i, (&a, &b)) in self.0.iter().zip(other.0.iter()).enumerate() {
            uf.union(i, a);
            uf.union(i, b);
        }
        uf.partition()
    }

    /// `{0,1}{2}` style rendering.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, &r) in self.0.iter().enumerate() {
            blocks.entry(r).or_default().push(i);
        }
        blocks.into_values().collect()
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for b in self.blocks() {
            let items: Vec<String> = b.iter().map(usize::to_string).collect();
            write!(f, "{{{}}}", items.join(","))?;
        }
        Ok(())
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    /// Returns whether a merge happened. The smaller root wins.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    fn partition(&mut self) -> Partition {
        let labels: Vec<usize> = (0..self.parent.len()).map(|i| self.find(i)).collect();
        Partition::from_labels(&labels)
    }
}

/// The congruences of an algebra for a chosen signature, in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceSet {
    pub partitions: Vec<Partition>,
}

impl CongruenceSet {
    pub fn len(&self) -> usize {
        self.partitions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.partitions.is_empty()
    }

    pub fn contains(&self, p: &Partition) -> bool {
        self.partitions.binary_search(p).is_ok()
    }

    /// Only the identity and total partitions.
    pub fn is_simple(&self) -> bool {
        self.partitions.len() == 2
    }
}

/// Smallest congruence for `signature` that contains the pairs `seed`.
fn generated_congruence(
    a: &FiniteAlgebra,
    signature: &[&Operation],
    seed: &[(usize, usize)],
) -> Partition {
    let m = a.size;
    let mut uf = UnionFind::new(m);
    for &(x, y) in seed {
        uf.union(x, y);
    }
    loop {
        let mut changed = false;
        for op in signature {
            match op.arity {
                0 => {}
                1 => {
                    for x in 0..m {
                        let r = uf.find(x);
                        if r != x {
                            changed |= uf.union(op.table[x], op.table[r]);
                        }
                    }
                }
                _ => {
                    for x in 0..m {
                        let r = uf.find(x);
                        if r == x {
                            continue;
                        }
                        for z in 0..m {
                            changed |= uf.union(op.apply(m, &[x, z]), op.apply(m, &[r, z]));
                            changed |= uf.union(op.apply(m, &[z, x]), op.apply(m, &[z, r]));
                        }
                    }
                }
            }
        }
        if !changed {
            return uf.partition();
        }
    }
}

/// All congruences of `a` with respect to the operations in `signature`.
///
/// Principal congruences `Cg(x, y)` are built by closure, then the set is
/// closed under joins; every congruence of a finite algebra is a join of
/// principal ones.
pub fn enumerate_congruences(
    a: &FiniteAlgebra,
    signature: &[&str],
    size_bound: usize,
) -> Result<CongruenceSet, AlgebraError> {
    if a.size > size_bound {
        return Err(AlgebraError::SizeBound {
            size: a.size,
            bound: size_bound,
        });
    }
    let ops: Vec<&Operation> = signature
        .iter()
        .map(|name| {
            a.ops
                .get(*name)
                .ok_or_else(|| AlgebraError::UnknownOperation(name.to_string()))
        })
        .collect::<Result<_, _>>()?;
    let m = a.size;
    let mut found: BTreeSet<Partition> = BTreeSet::new();
    found.insert(Partition::identity(m));
    for x in 0..m {
        for y in x + 1..m {
            found.insert(generated_congruence(a, &ops, &[(x, y)]));
        }
    }
    let mut frontier: Vec<Partition> = found.iter().cloned().collect();
    while !frontier.is_empty() {
        let snapshot: Vec<Partition> = found.iter().cloned().collect();
        let mut next = Vec::new();
        for p in &frontier {
            for q in &snapshot {
                let j = p.join(q);
                if !found.contains(&j) {
                    found.insert(j.clone());
                    next.push(j);
                }
            }
        }
        frontier = next;
    }
    Ok(CongruenceSet {
        partitions: found.into_iter().collect(),
    })
}

/// Whether adding the `expansion` operations leaves the congruences of the
/// `reduct` signature unchanged.
pub fn check_compatible_expansion(
    a: &FiniteAlgebra,
    reduct: &[&str],
    expansion: &[&str],
    size_bound: usize,
) -> Result<bool, AlgebraError> {
    let base = enumerate_congruences(a, reduct, size_bound)?;
    let full: Vec<&str> = reduct.iter().chain(expansion.iter()).copied().collect();
    let expanded = enumerate_congruences(a, &full, size_bound)?;
    Ok(base == expanded)
}
