//! Exact balanced domination numbers.
//!
//! BDFs of `G` are exactly the {-1,0,1} vectors in the rational kernel of
//! M(G) = A(G) + I. [`kernel`] computes a reduced row echelon form of M(G)
//! over the rationals; since every free column of the echelon form is an
//! actual vertex coordinate, enumerating {-1,0,1} values for the free
//! coordinates and keeping the assignments whose pivot coordinates also land
//! in {-1,0,1} visits every BDF exactly once.
//!
//! [`backtracking_oracle`] reaches the same answer by an unrelated route
//! (constraint propagation over closed neighborhoods) and is used to
//! cross-check the kernel path.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Labeling};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Largest kernel dimension the free-coordinate enumeration will attempt.
    pub max_free_enumeration: usize,
    /// Node budget for the backtracking search.
    pub node_budget: u64,
    pub workers: usize,
    /// Fall back to backtracking instead of failing when the nullity is too large.
    pub allow_fallback: bool,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_free_enumeration: 20, node_budget: 50_000_000, workers: 1, allow_fallback: false }
    }
}

/// `x_pivot = sum(coef * x_free)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PivotExpression {
    pub pivot: usize,
    pub terms: Vec<(usize, BigRational)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelDescription {
    pub n: usize,
    /// Nullity of M(G); equals `free_cols.len()`.
    pub dim: usize,
    pub pivot_cols: Vec<usize>,
    pub free_cols: Vec<usize>,
    /// One entry per pivot column, in pivot order.
    pub expressions: Vec<PivotExpression>,
}

impl KernelDescription {
    /// Full vector for a rational assignment of the free coordinates (in `free_cols` order).
    pub fn evaluate(&self, free_values: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(free_values.len(), self.dim, "one value per free coordinate");
        let mut x = vec![BigRational::zero(); self.n];
        for (&f, v) in self.free_cols.iter().zip(free_values) {
            x[f] = v.clone();
        }
        let slot: Vec<usize> = {
            let mut s = vec![usize::MAX; self.n];
            for (k, &f) in self.free_cols.iter().enumerate() {
                s[f] = k;
            }
            s
        };
        for e in &self.expressions {
            x[e.pivot] = e.terms.iter().map(|(f, c)| c * &free_values[slot[*f]]).sum();
        }
        x
    }

    /// Kernel basis: for each free coordinate, the vector with that coordinate 1
    /// and the other free coordinates 0.
    pub fn basis(&self) -> Vec<Vec<BigRational>> {
        (0..self.dim)
            .map(|k| {
                let mut free = vec![BigRational::zero(); self.dim];
                free[k] = BigRational::one();
                self.evaluate(&free)
            })
            .collect()
    }
}

/// Reduced row echelon decomposition of M(G) over the rationals. Pivot columns
/// are chosen left to right, each taking the first remaining row with a
/// nonzero entry in that column.
pub fn kernel(g: &Graph) -> KernelDescription {
    let n = g.n_vertices();
    let mut a: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); n]; n];
    for (v, row) in a.iter_mut().enumerate() {
        row[v] = BigRational::one();
        for &u in g.neighbors(v) {
            row[u] = BigRational::one();
        }
    }

    let mut pivot_cols = Vec::new();
    let mut rank = 0;
    for col in 0..n {
        let Some(src) = (rank..n).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, src);
        let inv = a[rank][col].recip();
        for entry in a[rank].iter_mut().skip(col) {
            *entry = &*entry * &inv;
        }
        let pivot_row = a[rank].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == rank || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (j, p) in pivot_row.iter().enumerate().skip(col) {
                if !p.is_zero() {
                    row[j] = &row[j] - &factor * p;
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
        if rank == n {
            break;
        }
    }

    let mut is_pivot = vec![false; n];
    for &p in &pivot_cols {
        is_pivot[p] = true;
    }
    let free_cols: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
    let expressions = pivot_cols
        .iter()
        .enumerate()
        .map(|(r, &p)| PivotExpression {
            pivot: p,
            terms: free_cols
                .iter()
                .filter(|&&f| !a[r][f].is_zero())
                .map(|&f| (f, -a[r][f].clone()))
                .collect(),
        })
        .collect();
    KernelDescription { n, dim: free_cols.len(), pivot_cols, free_cols, expressions }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    KernelTrivial,
    KernelEnumeration,
    Backtracking,
    GridPropagation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaResult {
    pub gamma: i64,
    pub witness: Labeling,
    pub d_balanced: bool,
    pub method: Method,
    /// Number of BDFs (zero labeling included) when the search was exhaustive.
    pub bdf_count: Option<u64>,
}

impl GammaResult {
    /// Builds the result from a full BDF list; the witness is the first
    /// labeling of maximum weight.
    pub(crate) fn from_bdfs(n: usize, bdfs: &[Labeling], method: Method) -> Self {
        let mut best: Option<&Labeling> = None;
        for lab in bdfs {
            if best.is_none_or(|b| lab.weight() > b.weight()) {
                best = Some(lab);
            }
        }
        let witness = best.cloned().unwrap_or_else(|| Labeling::zeros(n));
        let gamma = witness.weight().max(0);
        GammaResult {
            gamma,
            witness: if witness.weight() < 0 { Labeling::zeros(n) } else { witness },
            d_balanced: gamma == 0,
            method,
            bdf_count: Some(bdfs.len() as u64),
        }
    }
}

/// Integer form of a pivot expression: `x_pivot = (sum coef_k * x_{free k}) / denom`,
/// with free coordinates referred to by their position in the enumeration order.
struct IntegerForm {
    pivot: usize,
    denom: i64,
    terms: Vec<(usize, i64)>,
}

fn integer_forms(k: &KernelDescription) -> Result<Vec<IntegerForm>> {
    let mut slot = vec![usize::MAX; k.n];
    for (i, &f) in k.free_cols.iter().enumerate() {
        slot[f] = i;
    }
    let overflow = || Error::Overflow("kernel coefficients do not fit in 64 bits".into());
    k.expressions
        .iter()
        .map(|e| {
            let denom = e
                .terms
                .iter()
                .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
            let terms = e
                .terms
                .iter()
                .map(|(f, c)| {
                    let scaled = c.numer() * (&denom / c.denom());
                    scaled.to_i64().map(|v| (slot[*f], v)).ok_or_else(overflow)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(IntegerForm { pivot: e.pivot, denom: denom.to_i64().ok_or_else(overflow)?, terms })
        })
        .collect()
}

/// Visits every BDF by depth-first assignment of the free coordinates in
/// lexicographic order (values -1, 0, 1). A pivot coordinate is checked as
/// soon as its last free dependency is assigned.
fn enumerate_kernel<F: FnMut(&[i8])>(k: &KernelDescription, mut visit: F) -> Result<()> {
    let forms = integer_forms(k)?;
    let dim = k.dim;
    // checks[d]: forms whose last free dependency is position d
    let mut checks: Vec<Vec<usize>> = vec![Vec::new(); dim];
    let mut constant_pivots = Vec::new();
    for (i, form) in forms.iter().enumerate() {
        match form.terms.iter().map(|t| t.0).max() {
            Some(last) => checks[last].push(i),
            None => constant_pivots.push(form.pivot),
        }
    }
    let mut x = vec![0i8; k.n];
    let mut free_vals = vec![0i8; dim];

    fn rec<F: FnMut(&[i8])>(
        depth: usize,
        k: &KernelDescription,
        forms: &[IntegerForm],
        checks: &[Vec<usize>],
        free_vals: &mut [i8],
        x: &mut [i8],
        visit: &mut F,
    ) {
        if depth == free_vals.len() {
            visit(x);
            return;
        }
        'values: for v in [-1i8, 0, 1] {
            free_vals[depth] = v;
            x[k.free_cols[depth]] = v;
            for &fi in &checks[depth] {
                let form = &forms[fi];
                let num: i128 = form
                    .terms
                    .iter()
                    .map(|&(s, c)| i128::from(c) * i128::from(free_vals[s]))
                    .sum();
                let d = i128::from(form.denom);
                if num % d != 0 {
                    continue 'values;
                }
                let val = num / d;
                if !(-1..=1).contains(&val) {
                    continue 'values;
                }
                x[form.pivot] = val as i8;
            }
            rec(depth + 1, k, forms, checks, free_vals, x, visit);
        }
    }

    rec(0, k, &forms, &checks, &mut free_vals, &mut x, &mut visit);
    Ok(())
}

fn check_nullity(k: &KernelDescription, limits: &Limits) -> Result<()> {
    if k.dim > limits.max_free_enumeration {
        return Err(Error::NullityTooLarge { nullity: k.dim, limit: limits.max_free_enumeration });
    }
    Ok(())
}

/// Every BDF of `g`, including the zero labeling, in lexicographic order of
/// the free-coordinate assignment.
pub fn enumerate_bdfs(g: &Graph, limits: &Limits) -> Result<Vec<Labeling>> {
    let k = kernel(g);
    check_nullity(&k, limits)?;
    let mut out = Vec::new();
    enumerate_kernel(&k, |x| out.push(Labeling::new(x.to_vec()).expect("labels in range")))?;
    Ok(out)
}

/// Exact balanced domination number.
pub fn gamma_bd(g: &Graph, limits: &Limits) -> Result<GammaResult> {
    let n = g.n_vertices();
    let k = kernel(g);
    if k.dim == 0 {
        return Ok(GammaResult {
            gamma: 0,
            witness: Labeling::zeros(n),
            d_balanced: true,
            method: Method::KernelTrivial,
            bdf_count: Some(1),
        });
    }
    if let Err(e) = check_nullity(&k, limits) {
        return if limits.allow_fallback { backtracking_oracle(g, limits) } else { Err(e) };
    }
    let mut best: Option<Vec<i8>> = None;
    let mut best_weight = i64::MIN;
    let mut count = 0u64;
    enumerate_kernel(&k, |x| {
        count += 1;
        let w: i64 = x.iter().map(|&v| i64::from(v)).sum();
        if w > best_weight {
            best_weight = w;
            best = Some(x.to_vec());
        }
    })?;
    let witness = Labeling::new(best.expect("zero labeling is always a BDF")).expect("in range");
    Ok(GammaResult {
        gamma: witness.weight(),
        d_balanced: witness.weight() == 0,
        witness,
        method: Method::KernelEnumeration,
        bdf_count: Some(count),
    })
}

/// Depth-first search over closed-neighborhood constraints.
struct Search<'g> {
    g: &'g Graph,
    order: Vec<usize>,
    /// 2 marks "unassigned".
    val: Vec<i8>,
    sum: Vec<i64>,
    open: Vec<usize>,
    trail: Vec<usize>,
    nodes: u64,
    budget: u64,
}

const UNSET: i8 = 2;

impl<'g> Search<'g> {
    fn new(g: &'g Graph, budget: u64) -> Self {
        let n = g.n_vertices();
        let mut seen = vec![false; n];
        let mut order = Vec::with_capacity(n);
        for root in 0..n {
            if !seen[root] {
                for v in g.bfs_order(root) {
                    seen[v] = true;
                    order.push(v);
                }
            }
        }
        Search {
            g,
            order,
            val: vec![UNSET; n],
            sum: vec![0; n],
            open: (0..n).map(|v| g.degree(v) + 1).collect(),
            trail: Vec::new(),
            nodes: 0,
            budget,
        }
    }

    fn members(&self, c: usize) -> impl Iterator<Item = usize> + '_ {
        std::iter::once(c).chain(self.g.neighbors(c).iter().copied())
    }

    /// Assigns `v := x` and runs unit propagation. Returns false on conflict;
    /// the trail records everything assigned so the caller can undo.
    fn assign(&mut self, v: usize, x: i8) -> bool {
        let mut queue = vec![(v, x)];
        while let Some((u, x)) = queue.pop() {
            if self.val[u] != UNSET {
                if self.val[u] != x {
                    return false;
                }
                continue;
            }
            self.val[u] = x;
            self.trail.push(u);
            let constraints: Vec<usize> = self.members(u).collect();
            for &c in &constraints {
                self.sum[c] += i64::from(x);
                self.open[c] -= 1;
            }
            for c in constraints {
                let (s, open) = (self.sum[c], self.open[c] as i64);
                if s.abs() > open {
                    return false;
                }
                if open == 1 {
                    let w = self.members(c).find(|&w| self.val[w] == UNSET).expect("one open member");
                    queue.push((w, (-s) as i8));
                }
            }
        }
        true
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let u = self.trail.pop().unwrap();
            let x = self.val[u];
            self.val[u] = UNSET;
            for c in std::iter::once(u).chain(self.g.neighbors(u).iter().copied()) {
                self.sum[c] -= i64::from(x);
                self.open[c] += 1;
            }
        }
    }

    fn run<F: FnMut(&[i8])>(&mut self, pos: usize, visit: &mut F) -> Result<()> {
        let Some(&v) = self.order[pos..].iter().find(|&&v| self.val[v] == UNSET) else {
            visit(&self.val);
            return Ok(());
        };
        let next = pos + self.order[pos..].iter().position(|&w| w == v).unwrap();
        for x in [-1i8, 0, 1] {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::BudgetExhausted { budget: self.budget });
            }
            let mark = self.trail.len();
            if self.assign(v, x) {
                self.run(next + 1, visit)?;
            }
            self.undo_to(mark);
        }
        Ok(())
    }
}

/// All BDFs found by backtracking, sorted lexicographically.
pub fn backtracking_enumerate(g: &Graph, limits: &Limits) -> Result<Vec<Labeling>> {
    let mut out = Vec::new();
    let mut search = Search::new(g, limits.node_budget);
    search.run(0, &mut |x: &[i8]| out.push(Labeling::new(x.to_vec()).expect("complete assignment")))?;
    out.sort();
    Ok(out)
}

/// Balanced domination number by constraint search, independent of the kernel route.
pub fn backtracking_oracle(g: &Graph, limits: &Limits) -> Result<GammaResult> {
    let bdfs = backtracking_enumerate(g, limits)?;
    Ok(GammaResult::from_bdfs(g.n_vertices(), &bdfs, Method::Backtracking))
}

/// Exact rational determinant of a square integer matrix (Bareiss fraction-free elimination).
pub fn determinant(matrix: &[Vec<i64>]) -> BigRational {
    let n = matrix.len();
    let mut a: Vec<Vec<BigInt>> =
        matrix.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigRational::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let det = if n == 0 { BigInt::one() } else { sign * &a[n - 1][n - 1] };
    BigRational::from_integer(det)
}

/// `"p/q"` rendering with a positive denominator.
pub fn rational_string(r: &BigRational) -> String {
    let mut denom = r.denom().clone();
    let mut numer = r.numer().clone();
    if denom.is_negative() {
        denom = -denom;
        numer = -numer;
    }
    format!("{numer}/{denom}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{grid, two_level_tree, TwoLevelTreeSpec};

    fn path(n: usize) -> Graph {
        Graph::new(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn kernel_k1_is_trivial() {
        let k = kernel(&Graph::new(1, []).unwrap());
        assert_eq!(k.dim, 0);
        assert_eq!(k.pivot_cols, vec![0]);
    }

    #[test]
    fn kernel_of_paths() {
        // hand elimination of the 5x5 tridiagonal system: x1 free, spans (1,-1,0,1,-1)
        let k = kernel(&path(5));
        assert_eq!(k.dim, 1);
        let b = &k.basis()[0];
        let scale = b.iter().find(|v| !v.is_zero()).unwrap().clone();
        let normalized: Vec<BigRational> = b.iter().map(|v| v / &scale).collect();
        assert_eq!(normalized, [1, -1, 0, 1, -1].map(q).to_vec());
        assert_eq!(kernel(&path(3)).dim, 0);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let g = grid(4, 4).unwrap();
        let k = kernel(&g);
        assert_eq!(k.pivot_cols.len() + k.free_cols.len(), 16);
        let m = g.operator_matrix();
        for v in k.basis() {
            for row in m.rows() {
                let s: BigRational = row.iter().map(|&j| v[j].clone()).sum();
                assert!(s.is_zero());
            }
        }
    }

    #[test]
    fn enumerate_small_cases() {
        let lim = Limits::default();
        assert_eq!(enumerate_bdfs(&Graph::new(1, []).unwrap(), &lim).unwrap(), vec![Labeling::zeros(1)]);
        let bdfs = enumerate_bdfs(&path(5), &lim).unwrap();
        assert_eq!(bdfs.len(), 3);
        assert!(bdfs.contains(&Labeling::new(vec![1, -1, 0, 1, -1]).unwrap()));
        assert!(bdfs.contains(&Labeling::new(vec![-1, 1, 0, -1, 1]).unwrap()));
    }

    #[test]
    fn gamma_two_level() {
        let g = two_level_tree(&TwoLevelTreeSpec::new(vec![2, 0, 0]).unwrap()).unwrap();
        let r = gamma_bd(&g, &Limits::default()).unwrap();
        assert_eq!(r.gamma, 2);
        assert_eq!(r.method, Method::KernelEnumeration);
        assert!(crate::graph::is_bdf(&g, &r.witness).unwrap());
        assert_eq!(r.witness.weight(), 2);
    }

    #[test]
    fn nullity_limit_is_enforced() {
        let g = Graph::new(2, [(0, 1)]).unwrap();
        let lim = Limits { max_free_enumeration: 0, ..Limits::default() };
        assert_eq!(
            gamma_bd(&g, &lim).unwrap_err(),
            Error::NullityTooLarge { nullity: 1, limit: 0 }
        );
        let lim = Limits { allow_fallback: true, ..lim };
        assert_eq!(gamma_bd(&g, &lim).unwrap().method, Method::Backtracking);
    }

    #[test]
    fn oracle_small_cases() {
        let r = backtracking_oracle(&path(3), &Limits::default()).unwrap();
        assert_eq!((r.gamma, r.bdf_count), (0, Some(1)));
        let r = backtracking_oracle(&grid(2, 3).unwrap(), &Limits::default()).unwrap();
        assert_eq!((r.gamma, r.bdf_count), (0, Some(3)));
        let lim = Limits { node_budget: 2, ..Limits::default() };
        assert!(matches!(
            backtracking_oracle(&grid(3, 3).unwrap(), &lim),
            Err(Error::BudgetExhausted { budget: 2 })
        ));
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&[vec![3, 2, 0], vec![2, 3, 2], vec![0, 2, 3]]), q(3));
        assert_eq!(determinant(&[vec![0, 1], vec![1, 0]]), q(-1));
        assert_eq!(determinant(&[vec![1, 2], vec![2, 4]]), q(0));
        assert_eq!(rational_string(&q(-7)), "-7/1");
    }
}
