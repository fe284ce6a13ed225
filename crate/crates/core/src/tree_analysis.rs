//! Two-level rooted trees, full binary trees and caterpillars.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_solver::{gamma_bd, GammaResult, Limits};
use crate::generators::{caterpillar, full_binary_tree, CaterpillarSpec, Shape, TwoLevelTreeSpec};
use crate::graph::{is_bdf, Graph, Labeling};
use crate::parallel;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoLevelVerdict {
    pub d_balanced: bool,
    /// Number of children of the root with exactly two leaves.
    pub l_count: usize,
    /// `0` when d-balanced, otherwise `n - 1`.
    pub gamma_formula: i64,
}

/// A two-level tree with `n` root children fails to be d-balanced exactly when
/// every child has 0 or 2 leaves and exactly `(n - 1) / 2` of them have 2.
/// Every BDF then has weight `x_0 (1 - n)`, maximized at `x_0 = -1`.
pub fn two_level_verdict(spec: &TwoLevelTreeSpec) -> Result<TwoLevelVerdict> {
    let n = spec.n_children();
    if n < 2 {
        return Err(Error::arg("two-level verdict needs at least two children of the root"));
    }
    let l_count = spec.child_leaf_counts.iter().filter(|&&l| l == 2).count();
    let all_zero_or_two = spec.child_leaf_counts.iter().all(|&l| l == 0 || l == 2);
    let unbalanced = all_zero_or_two && 2 * l_count + 1 == n;
    Ok(TwoLevelVerdict {
        d_balanced: !unbalanced,
        l_count,
        gamma_formula: if unbalanced { n as i64 - 1 } else { 0 },
    })
}

/// Children lists of a tree rooted at `root`, or `None` if `g` is not a tree.
pub fn rooted_children(g: &Graph, root: usize) -> Option<Vec<Vec<usize>>> {
    let n = g.n_vertices();
    if root >= n || g.n_edges() + 1 != n {
        return None;
    }
    let order = g.bfs_order(root);
    if order.len() != n {
        return None;
    }
    let mut parent = vec![usize::MAX; n];
    let mut children = vec![Vec::new(); n];
    parent[root] = root;
    for &u in &order {
        for &w in g.neighbors(u) {
            if parent[w] == usize::MAX {
                parent[w] = u;
                children[u].push(w);
            }
        }
    }
    Some(children)
}

fn full_binary_children(g: &Graph) -> Result<Vec<Vec<usize>>> {
    let children = rooted_children(g, 0).ok_or_else(|| Error::arg("graph is not a tree"))?;
    if children.iter().any(|c| !c.is_empty() && c.len() != 2) {
        return Err(Error::arg("not a full binary tree rooted at vertex 0"));
    }
    Ok(children)
}

/// Whether the root label of a BDF on a full binary tree (root at index 0) is zero.
pub fn full_binary_root_zero(g: &Graph, lab: &Labeling) -> Result<bool> {
    full_binary_children(g)?;
    if !is_bdf(g, lab)? {
        return Err(Error::arg("labeling is not a BDF"));
    }
    Ok(lab.get(0) == 0)
}

/// Whether every internal vertex of the full binary tree carries label 0.
pub fn full_binary_internal_zero(g: &Graph, lab: &Labeling) -> Result<bool> {
    let children = full_binary_children(g)?;
    if !is_bdf(g, lab)? {
        return Err(Error::arg("labeling is not a BDF"));
    }
    Ok(children.iter().enumerate().all(|(v, c)| c.is_empty() || lab.get(v) == 0))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FullBinaryReport {
    pub d_balanced: bool,
    pub bdf_count: u64,
}

/// Solves the tree exactly; the only BDF is expected to be the zero labeling.
pub fn full_binary_d_balanced(shape: &Shape, limits: &Limits) -> Result<FullBinaryReport> {
    let g = full_binary_tree(shape)?;
    let r = gamma_bd(&g, limits)?;
    Ok(FullBinaryReport { d_balanced: r.d_balanced, bdf_count: r.bdf_count.unwrap_or(0) })
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CaterpillarAnalysis {
    pub spine_labels: Vec<i8>,
    pub leaf_counts: Vec<usize>,
    /// Consecutive spine pairs that are equal and non-zero.
    pub p: usize,
    /// Consecutive spine pairs that are non-zero with opposite signs.
    pub q: usize,
    /// Consecutive spine pairs containing a zero.
    pub r: usize,
    /// `sum x_i x_{i+1}`.
    pub pair_sum: i64,
    /// Weight of the induced labeling (leaves carry `-x_i`).
    pub weight: i64,
    /// Total leaf count `L(C_n)`.
    pub total_leaves: usize,
}

impl CaterpillarAnalysis {
    pub fn spec(&self) -> CaterpillarSpec {
        CaterpillarSpec { leaf_counts: self.leaf_counts.clone() }
    }

    /// Spine labels followed by leaf labels, in caterpillar generator order.
    pub fn induced_labeling(&self) -> Labeling {
        let mut values = self.spine_labels.clone();
        for (&x, &l) in self.spine_labels.iter().zip(&self.leaf_counts) {
            values.extend(std::iter::repeat_n(-x, l));
        }
        Labeling::new(values).expect("labels in range")
    }
}

/// Leaf counts forced by a spine labeling: `l_i = 1 + x_{i-1} x_i + x_i x_{i+1}`
/// with missing neighbors contributing nothing. `None` if some count would be
/// negative (an interior vertex whose neighbors both have the opposite sign).
pub fn derived_leaf_counts(spine: &[i8]) -> Option<Vec<usize>> {
    let n = spine.len();
    (0..n)
        .map(|i| {
            let left = if i > 0 { spine[i - 1] * spine[i] } else { 0 };
            let right = if i + 1 < n { spine[i] * spine[i + 1] } else { 0 };
            usize::try_from(1 + i32::from(left) + i32::from(right)).ok()
        })
        .collect()
}

/// Analysis of a spine labeling, or `None` when it does not induce a non-zero MBDF.
pub fn analyze_spine(spine: &[i8]) -> Option<CaterpillarAnalysis> {
    let n = spine.len();
    if n < 2 || spine[0] == 0 || spine[n - 1] == 0 {
        return None;
    }
    if spine.windows(2).any(|w| w[0] == 0 && w[1] == 0) {
        return None;
    }
    let leaf_counts = derived_leaf_counts(spine)?;
    let (mut p, mut q, mut r) = (0, 0, 0);
    for w in spine.windows(2) {
        match w[0] * w[1] {
            1 => p += 1,
            -1 => q += 1,
            _ => r += 1,
        }
    }
    let pair_sum: i64 = spine.windows(2).map(|w| i64::from(w[0] * w[1])).sum();
    let weight = spine
        .iter()
        .zip(&leaf_counts)
        .map(|(&x, &l)| i64::from(x) * (1 - l as i64))
        .sum();
    let analysis = CaterpillarAnalysis {
        spine_labels: spine.to_vec(),
        total_leaves: leaf_counts.iter().sum(),
        leaf_counts,
        p,
        q,
        r,
        pair_sum,
        weight,
    };
    // the formulas balance non-zero spine vertices and leaves; zero spine
    // vertices still need their neighbors to cancel
    let g = caterpillar(&analysis.spec()).expect("spine is non-empty");
    if !is_bdf(&g, &analysis.induced_labeling()).expect("lengths match") {
        return None;
    }
    Some(analysis)
}

fn spine_from_index(mut idx: u64, n: usize) -> Vec<i8> {
    let mut spine = vec![0i8; n];
    for slot in spine.iter_mut().rev() {
        *slot = (idx % 3) as i8 - 1;
        idx /= 3;
    }
    spine
}

/// All non-zero MBDFs on caterpillars with spine length `n`, found by
/// enumerating spine labelings. Results are sorted by spine labels.
pub fn caterpillar_mbdf_search(n: usize, workers: usize) -> Result<Vec<CaterpillarAnalysis>> {
    if n < 2 {
        return Err(Error::arg("caterpillar search needs spine length >= 2"));
    }
    if n > 30 {
        return Err(Error::Resource(format!("3^{n} spine labelings is too many to enumerate")));
    }
    let total = 3u64.pow(n as u32);
    let mut out = parallel::collect_range(total, workers, |idx| analyze_spine(&spine_from_index(idx, n)));
    out.sort();
    Ok(out)
}

pub fn caterpillar_gamma(spec: &CaterpillarSpec, limits: &Limits) -> Result<GammaResult> {
    gamma_bd(&caterpillar(spec)?, limits)
}
