//! Constructors for the graph families studied here.
//!
//! Index layouts are fixed and part of the external contract:
//!
//! * polytopes (`antiprism`, `polytope_d`, `polytope_r2`): layer-major, so
//!   vertex `x_i` of layer `k` is `k * n + i`;
//! * grids: row-major, cell `(i, j)` (0-based) is `i * n + j`;
//! * caterpillars: spine `a_1..a_n` as `0..n`, then leaves grouped by spine vertex;
//! * rooted trees: breadth-first order with the root at 0.
//!
//! Cyclic indices wrap modulo `n`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Family, Graph};

fn check_polytope_n(n: usize) -> Result<()> {
    if n < 5 {
        return Err(Error::arg(format!("polytope families need n >= 5, got {n}")));
    }
    Ok(())
}

/// Builds a layered circulant graph: `templates` lists `(layer_u, shift_u, layer_v, shift_v)`
/// and contributes the edge `u_{i+shift_u} v_{i+shift_v}` for every `i`.
fn layered(n: usize, templates: &[(usize, usize, usize, usize)]) -> Vec<(usize, usize)> {
    let mut edges = Vec::with_capacity(n * templates.len());
    for i in 0..n {
        for &(lu, su, lv, sv) in templates {
            edges.push((lu * n + (i + su) % n, lv * n + (i + sv) % n));
        }
    }
    edges
}

/// Antiprism `A_n`: layers a, b, c with edges
/// `a_i a_{i+1}, b_i b_{i+1}, c_i c_{i+1}, a_i b_i, b_i c_i, a_{i+1} b_i, b_{i+1} c_i`.
pub fn antiprism(n: usize) -> Result<Graph> {
    check_polytope_n(n)?;
    let (a, b, c) = (0, 1, 2);
    let edges = layered(
        n,
        &[(a, 0, a, 1), (b, 0, b, 1), (c, 0, c, 1), (a, 0, b, 0), (b, 0, c, 0), (a, 1, b, 0), (b, 1, c, 0)],
    );
    Ok(Graph::new(3 * n, edges)?.with_family(Family::Antiprism { n }))
}

/// `D_n`: layers a, b, c, d with edges
/// `a_i a_{i+1}, d_i d_{i+1}, a_i b_i, b_i c_i, b_{i+1} c_i, c_i d_i`.
pub fn polytope_d(n: usize) -> Result<Graph> {
    check_polytope_n(n)?;
    let (a, b, c, d) = (0, 1, 2, 3);
    let edges = layered(
        n,
        &[(a, 0, a, 1), (d, 0, d, 1), (a, 0, b, 0), (b, 0, c, 0), (b, 1, c, 0), (c, 0, d, 0)],
    );
    Ok(Graph::new(4 * n, edges)?.with_family(Family::PolytopeD { n }))
}

/// `R''_n`: layers a..f with edges `a_i a_{i+1}, f_i f_{i+1}, a_i b_i, b_i c_i,
/// c_i d_i, d_i e_i, e_i f_i, b_{i+1} c_i, d_i e_{i+1}`.
pub fn polytope_r2(n: usize) -> Result<Graph> {
    check_polytope_n(n)?;
    let (a, b, c, d, e, f) = (0, 1, 2, 3, 4, 5);
    let edges = layered(
        n,
        &[
            (a, 0, a, 1),
            (f, 0, f, 1),
            (a, 0, b, 0),
            (b, 0, c, 0),
            (c, 0, d, 0),
            (d, 0, e, 0),
            (e, 0, f, 0),
            (b, 1, c, 0),
            (d, 0, e, 1),
        ],
    );
    Ok(Graph::new(6 * n, edges)?.with_family(Family::PolytopeR2 { n }))
}

/// `m x n` lattice, row-major.
pub fn grid(m: usize, n: usize) -> Result<Graph> {
    if m == 0 || n == 0 {
        return Err(Error::arg("grid dimensions must be positive"));
    }
    let mut edges = Vec::with_capacity(m * (n - 1) + n * (m - 1));
    for i in 0..m {
        for j in 0..n {
            let v = i * n + j;
            if j + 1 < n {
                edges.push((v, v + 1));
            }
            if i + 1 < m {
                edges.push((v, v + n));
            }
        }
    }
    Ok(Graph::new(m * n, edges)?.with_family(Family::Grid { m, n }))
}

/// Spine length is `leaf_counts.len()`; `leaf_counts[i]` leaves hang off spine vertex `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CaterpillarSpec {
    pub leaf_counts: Vec<usize>,
}

impl CaterpillarSpec {
    pub fn new(leaf_counts: Vec<usize>) -> Result<Self> {
        if leaf_counts.is_empty() {
            return Err(Error::arg("caterpillar spine must have at least one vertex"));
        }
        Ok(CaterpillarSpec { leaf_counts })
    }

    pub fn spine_len(&self) -> usize {
        self.leaf_counts.len()
    }

    /// `L(C_n)`.
    pub fn total_leaves(&self) -> usize {
        self.leaf_counts.iter().sum()
    }

    pub fn n_vertices(&self) -> usize {
        self.spine_len() + self.total_leaves()
    }
}

pub fn caterpillar(spec: &CaterpillarSpec) -> Result<Graph> {
    let n = spec.spine_len();
    if n == 0 {
        return Err(Error::arg("caterpillar spine must have at least one vertex"));
    }
    let mut edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    let mut next = n;
    for (i, &l) in spec.leaf_counts.iter().enumerate() {
        for _ in 0..l {
            edges.push((i, next));
            next += 1;
        }
    }
    Ok(Graph::new(next, edges)?
        .with_family(Family::Caterpillar { leaf_counts: spec.leaf_counts.clone() }))
}

/// Root `a_0` with children `a_1..a_n`; child `a_i` has `child_leaf_counts[i-1]` leaves.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TwoLevelTreeSpec {
    pub child_leaf_counts: Vec<usize>,
}

impl TwoLevelTreeSpec {
    pub fn new(child_leaf_counts: Vec<usize>) -> Result<Self> {
        if child_leaf_counts.len() < 2 {
            return Err(Error::arg("a two-level tree needs at least two children of the root"));
        }
        Ok(TwoLevelTreeSpec { child_leaf_counts })
    }

    pub fn n_children(&self) -> usize {
        self.child_leaf_counts.len()
    }

    pub fn n_vertices(&self) -> usize {
        1 + self.n_children() + self.child_leaf_counts.iter().sum::<usize>()
    }
}

pub fn two_level_tree(spec: &TwoLevelTreeSpec) -> Result<Graph> {
    let n = spec.n_children();
    if n < 2 {
        return Err(Error::arg("a two-level tree needs at least two children of the root"));
    }
    let mut edges: Vec<(usize, usize)> = (1..=n).map(|i| (0, i)).collect();
    let mut next = n + 1;
    for (i, &l) in spec.child_leaf_counts.iter().enumerate() {
        for _ in 0..l {
            edges.push((i + 1, next));
            next += 1;
        }
    }
    Ok(Graph::new(next, edges)?
        .with_family(Family::TwoLevel { child_leaf_counts: spec.child_leaf_counts.clone() }))
}

/// Shape of a full binary tree.
///
/// Text form: a leaf is `.`, an internal vertex is `(LR)` with `L` and `R`
/// its subtrees, so `(..)` is the three-vertex tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Shape {
    Leaf,
    Node(Box<Shape>, Box<Shape>),
}

impl Shape {
    pub fn node(left: Shape, right: Shape) -> Shape {
        Shape::Node(Box::new(left), Box::new(right))
    }

    pub fn n_vertices(&self) -> usize {
        match self {
            Shape::Leaf => 1,
            Shape::Node(l, r) => 1 + l.n_vertices() + r.n_vertices(),
        }
    }

    pub fn n_leaves(&self) -> usize {
        match self {
            Shape::Leaf => 1,
            Shape::Node(l, r) => l.n_leaves() + r.n_leaves(),
        }
    }

    /// Perfect tree where every leaf sits at `depth` (depth 0 is a single vertex).
    pub fn perfect(depth: usize) -> Shape {
        if depth == 0 {
            Shape::Leaf
        } else {
            Shape::node(Shape::perfect(depth - 1), Shape::perfect(depth - 1))
        }
    }

    /// Every shape with exactly `n_vertices` vertices (empty for even counts).
    pub fn all_with_vertices(n_vertices: usize) -> Vec<Shape> {
        let mut memo: Vec<Vec<Shape>> = Vec::new();
        for k in 0..=n_vertices {
            let shapes = if k % 2 == 0 {
                Vec::new()
            } else if k == 1 {
                vec![Shape::Leaf]
            } else {
                let mut out = Vec::new();
                for left in (1..k - 1).step_by(2) {
                    let right = k - 1 - left;
                    for l in &memo[left] {
                        for r in &memo[right] {
                            out.push(Shape::node(l.clone(), r.clone()));
                        }
                    }
                }
                out
            };
            memo.push(shapes);
        }
        memo.pop().unwrap_or_default()
    }

    /// Every shape with at most `max_vertices` vertices, smallest first.
    pub fn all_up_to(max_vertices: usize) -> Vec<Shape> {
        (1..=max_vertices).step_by(2).flat_map(Shape::all_with_vertices).collect()
    }

    fn write_to(&self, out: &mut String) {
        match self {
            Shape::Leaf => out.push('.'),
            Shape::Node(l, r) => {
                out.push('(');
                l.write_to(out);
                r.write_to(out);
                out.push(')');
            }
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.write_to(&mut s);
        f.write_str(&s)
    }
}

impl FromStr for Shape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        fn parse(bytes: &[u8], pos: &mut usize) -> Result<Shape> {
            match bytes.get(*pos) {
                Some(b'.') => {
                    *pos += 1;
                    Ok(Shape::Leaf)
                }
                Some(b'(') => {
                    *pos += 1;
                    let left = parse(bytes, pos)?;
                    let right = parse(bytes, pos)?;
                    if bytes.get(*pos) != Some(&b')') {
                        return Err(Error::arg(format!(
                            "malformed shape: expected ')' at offset {}",
                            *pos
                        )));
                    }
                    *pos += 1;
                    Ok(Shape::node(left, right))
                }
                Some(c) => Err(Error::arg(format!(
                    "malformed shape: unexpected '{}' at offset {}",
                    *c as char, *pos
                ))),
                None => Err(Error::arg("malformed shape: unexpected end of input")),
            }
        }
        let compact: Vec<u8> = s.bytes().filter(|b| !b.is_ascii_whitespace()).collect();
        let mut pos = 0;
        let shape = parse(&compact, &mut pos)?;
        if pos != compact.len() {
            return Err(Error::arg(format!("malformed shape: trailing input at offset {pos}")));
        }
        Ok(shape)
    }
}

impl TryFrom<String> for Shape {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Shape> for String {
    fn from(shape: Shape) -> Self {
        shape.to_string()
    }
}

/// Full binary tree with the given shape, indexed breadth-first from the root.
pub fn full_binary_tree(shape: &Shape) -> Result<Graph> {
    let mut edges = Vec::new();
    let mut queue = std::collections::VecDeque::from([(shape, 0usize)]);
    let mut next = 1;
    while let Some((node, index)) = queue.pop_front() {
        if let Shape::Node(l, r) = node {
            for child in [l.as_ref(), r.as_ref()] {
                edges.push((index, next));
                queue.push_back((child, next));
                next += 1;
            }
        }
    }
    Ok(Graph::new(next, edges)?.with_family(Family::FullBinary { shape: shape.clone() }))
}

/// Rebuilds a generated graph from its family tag.
pub fn from_family(family: &Family) -> Result<Graph> {
    match family {
        Family::Antiprism { n } => antiprism(*n),
        Family::PolytopeD { n } => polytope_d(*n),
        Family::PolytopeR2 { n } => polytope_r2(*n),
        Family::Grid { m, n } => grid(*m, *n),
        Family::Caterpillar { leaf_counts } => {
            caterpillar(&CaterpillarSpec::new(leaf_counts.clone())?)
        }
        Family::TwoLevel { child_leaf_counts } => {
            two_level_tree(&TwoLevelTreeSpec::new(child_leaf_counts.clone())?)
        }
        Family::FullBinary { shape } => full_binary_tree(shape),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn degrees(g: &Graph) -> Vec<usize> {
        (0..g.n_vertices()).map(|v| g.degree(v)).collect()
    }

    #[test]
    fn antiprism_counts_and_layer_degrees() {
        let g = antiprism(5).unwrap();
        assert_eq!((g.n_vertices(), g.n_edges()), (15, 35));
        assert_eq!(g.closed_neighborhood(0).unwrap(), vec![0, 1, 4, 5, 9]);
        let d = degrees(&g);
        assert!(d[0..5].iter().all(|&x| x == 4));
        assert!(d[5..10].iter().all(|&x| x == 6));
        assert!(d[10..15].iter().all(|&x| x == 4));
        let g = antiprism(6).unwrap();
        assert_eq!((g.n_vertices(), g.n_edges()), (18, 42));
        assert!(antiprism(4).is_err());
    }

    #[test]
    fn polytope_d_counts() {
        let g = polytope_d(5).unwrap();
        assert_eq!((g.n_vertices(), g.n_edges()), (20, 30));
        assert!(degrees(&g).iter().all(|&x| x == 3));
        let g = polytope_d(7).unwrap();
        assert_eq!((g.n_vertices(), g.n_edges()), (28, 42));
        assert!(polytope_d(3).is_err());
    }

    #[test]
    fn polytope_r2_counts() {
        let g = polytope_r2(5).unwrap();
        assert_eq!((g.n_vertices(), g.n_edges()), (30, 45));
        let g = polytope_r2(6).unwrap();
        assert_eq!((g.n_vertices(), g.n_edges()), (36, 54));
        // a-layer is a cycle, each a_i also touches b_i
        for i in 0..6 {
            assert_eq!(g.neighbors(i), {
                let mut v = vec![(i + 1) % 6, (i + 5) % 6, 6 + i];
                v.sort();
                v
            });
        }
    }

    #[test]
    fn grid_counts() {
        assert_eq!(grid(1, 2).unwrap().edges(), &[(0, 1)]);
        let g = grid(2, 3).unwrap();
        assert_eq!((g.n_vertices(), g.n_edges()), (6, 7));
        let g = grid(4, 4).unwrap();
        assert_eq!((g.n_vertices(), g.n_edges()), (16, 24));
        assert!(grid(0, 3).is_err());
    }

    #[test]
    fn caterpillar_layout() {
        let g = caterpillar(&CaterpillarSpec::new(vec![2, 3, 0, 2, 4]).unwrap()).unwrap();
        assert_eq!(g.n_vertices(), 16);
        assert_eq!(g.n_edges(), 15);
        assert!(g.is_connected());
        assert_eq!(g.neighbors(0), &[1, 5, 6]);
        let g = caterpillar(&CaterpillarSpec::new(vec![2, 2]).unwrap()).unwrap();
        assert_eq!(g.n_vertices(), 6);
        let g = caterpillar(&CaterpillarSpec::new(vec![0]).unwrap()).unwrap();
        assert_eq!((g.n_vertices(), g.n_edges()), (1, 0));
        assert!(CaterpillarSpec::new(vec![]).is_err());
    }

    #[test]
    fn two_level_layout() {
        let g = two_level_tree(&TwoLevelTreeSpec::new(vec![2, 0, 0]).unwrap()).unwrap();
        assert_eq!(g.n_vertices(), 6);
        assert_eq!(g.neighbors(0), &[1, 2, 3]);
        assert_eq!(g.neighbors(1), &[0, 4, 5]);
        let g = two_level_tree(&TwoLevelTreeSpec::new(vec![1, 1]).unwrap()).unwrap();
        assert_eq!(g.n_vertices(), 5);
        let g = two_level_tree(&TwoLevelTreeSpec::new(vec![2, 2, 0, 0, 0]).unwrap()).unwrap();
        assert_eq!(g.n_vertices(), 10);
        assert!(TwoLevelTreeSpec::new(vec![3]).is_err());
    }

    #[test]
    fn shapes() {
        assert_eq!(full_binary_tree(&Shape::Leaf).unwrap().n_vertices(), 1);
        let g = full_binary_tree(&"(..)".parse().unwrap()).unwrap();
        assert_eq!(g.neighbors(0), &[1, 2]);
        let p3 = Shape::perfect(3);
        assert_eq!((p3.n_vertices(), p3.n_leaves()), (15, 8));
        let g = full_binary_tree(&p3).unwrap();
        assert_eq!(g.n_edges(), 14);
        // BFS layout: vertex i has children 2i+1, 2i+2 in a perfect tree
        assert_eq!(g.neighbors(3), &[1, 7, 8]);

        assert_eq!(Shape::all_with_vertices(7).len(), 5);
        assert_eq!(Shape::all_up_to(15).len(), 1 + 1 + 2 + 5 + 14 + 42 + 132 + 429);
        for bad in ["", "(.", "(...)", "x", ".."] {
            assert!(bad.parse::<Shape>().is_err(), "{bad:?}");
        }
        assert_eq!("( (..) . )".parse::<Shape>().unwrap().to_string(), "((..).)");
    }

    #[test]
    fn deterministic_and_family_roundtrip() {
        for g in [antiprism(7).unwrap(), polytope_r2(5).unwrap(), grid(3, 4).unwrap()] {
            assert_eq!(from_family(g.family().unwrap()).unwrap(), g);
        }
    }
}
