//! Simple undirected graphs, closed neighborhoods, the operator M(G) = A(G) + I,
//! and {-1,0,1} vertex labelings.
//!
//! Graphs are immutable once built. Vertex indices are dense (`0..n`), and
//! every generated family documents its own index layout (see
//! [`crate::generators`]), so labelings and certificates can refer to
//! vertices by index across runs.

use std::collections::HashSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::Shape;

/// Which named family a graph was generated from, with its parameters.
///
/// Serializes as `{"name": ..., "params": {...}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "name", content = "params", rename_all = "kebab-case")]
pub enum Family {
    Antiprism { n: usize },
    PolytopeD { n: usize },
    PolytopeR2 { n: usize },
    Grid { m: usize, n: usize },
    Caterpillar { leaf_counts: Vec<usize> },
    TwoLevel { child_leaf_counts: Vec<usize> },
    FullBinary { shape: Shape },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
    family: Option<Family>,
}

impl Graph {
    /// Builds a graph on `n` vertices. Edges are stored as `(min, max)` in the
    /// order given; self-loops, duplicates and out-of-range endpoints are rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut stored = Vec::new();
        let mut adjacency = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::arg(format!("edge ({u},{v}) out of range for {n} vertices")));
            }
            if u == v {
                return Err(Error::arg(format!("self-loop at vertex {u}")));
            }
            let e = (u.min(v), u.max(v));
            if !seen.insert(e) {
                return Err(Error::arg(format!("duplicate edge ({},{})", e.0, e.1)));
            }
            stored.push(e);
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Graph { n, edges: stored, adjacency, family: None })
    }

    pub fn with_family(mut self, family: Family) -> Self {
        self.family = Some(family);
        self
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Sorted neighbor list of `v`. Panics if `v` is out of range.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn family(&self) -> Option<&Family> {
        self.family.as_ref()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// `N[v]`: `v` together with its neighbors, sorted.
    pub fn closed_neighborhood(&self, v: usize) -> Result<Vec<usize>> {
        if v >= self.n {
            return Err(Error::arg(format!("vertex {v} out of range for {} vertices", self.n)));
        }
        let mut out = self.adjacency[v].clone();
        let pos = out.binary_search(&v).unwrap_err();
        out.insert(pos, v);
        Ok(out)
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        self.bfs_order(0).len() == self.n
    }

    /// Vertices reachable from `root` in breadth-first order (neighbors visited
    /// in increasing index order).
    pub fn bfs_order(&self, root: usize) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        let mut order = Vec::with_capacity(self.n);
        seen[root] = true;
        order.push(root);
        let mut head = 0;
        while head < order.len() {
            let u = order[head];
            head += 1;
            for &w in &self.adjacency[u] {
                if !seen[w] {
                    seen[w] = true;
                    order.push(w);
                }
            }
        }
        order
    }

    pub fn operator_matrix(&self) -> OperatorMatrix {
        operator_matrix(self)
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            n: self.n,
            edges: self.edges.iter().map(|&(u, v)| [u, v]).collect(),
            family: self.family.clone(),
        }
    }

    pub fn from_json(doc: &GraphJson) -> Result<Self> {
        let g = Graph::new(doc.n, doc.edges.iter().map(|e| (e[0], e[1])))?;
        Ok(match &doc.family {
            Some(f) => g.with_family(f.clone()),
            None => g,
        })
    }

    /// Graphviz rendering. Node ids are vertex indices; when a labeling is
    /// given each node gets its value as `label`.
    pub fn to_dot(&self, labels: Option<&Labeling>) -> Result<String> {
        if let Some(lab) = labels {
            check_len(self, lab)?;
        }
        let mut out = String::from("graph G {\n");
        for v in 0..self.n {
            match labels {
                Some(lab) => writeln!(out, "  {v} [label=\"{}\"];", lab.get(v)).unwrap(),
                None => writeln!(out, "  {v};").unwrap(),
            }
        }
        for &(u, v) in &self.edges {
            writeln!(out, "  {u} -- {v};").unwrap();
        }
        out.push_str("}\n");
        Ok(out)
    }
}

/// On-disk graph document: `{"n": .., "edges": [[i,j],..], "family": {..} | null}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default)]
    pub family: Option<Family>,
}

/// M(G) = A(G) + I as sparse rows of unit entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperatorMatrix {
    rows: Vec<Vec<usize>>,
}

impl OperatorMatrix {
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Column indices of the ones in row `i`, sorted.
    pub fn row(&self, i: usize) -> &[usize] {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn entry(&self, i: usize, j: usize) -> u8 {
        u8::from(self.rows[i].binary_search(&j).is_ok())
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(i, row)| row.iter().all(|&j| self.entry(j, i) == 1))
    }

    pub fn mul_vec(&self, x: &[i8]) -> Vec<i64> {
        self.rows
            .iter()
            .map(|row| row.iter().map(|&j| i64::from(x[j])).sum())
            .collect()
    }
}

pub fn operator_matrix(g: &Graph) -> OperatorMatrix {
    let rows = (0..g.n_vertices())
        .map(|v| g.closed_neighborhood(v).expect("index in range"))
        .collect();
    OperatorMatrix { rows }
}

pub fn closed_neighborhood(g: &Graph, v: usize) -> Result<Vec<usize>> {
    g.closed_neighborhood(v)
}

/// A vertex labeling with values in {-1, 0, 1}.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i8>", into = "Vec<i8>")]
pub struct Labeling {
    values: Vec<i8>,
    weight: i64,
}

impl Labeling {
    pub fn new(values: Vec<i8>) -> Result<Self> {
        if let Some(bad) = values.iter().find(|v| !(-1..=1).contains(*v)) {
            return Err(Error::arg(format!("label {bad} not in {{-1,0,1}}")));
        }
        let weight = values.iter().map(|&v| i64::from(v)).sum();
        Ok(Labeling { values, weight })
    }

    pub fn zeros(n: usize) -> Self {
        Labeling { values: vec![0; n], weight: 0 }
    }

    pub fn values(&self) -> &[i8] {
        &self.values
    }

    pub fn get(&self, v: usize) -> i8 {
        self.values[v]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// The sum of all labels.
    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    pub fn negated(&self) -> Self {
        Labeling { values: self.values.iter().map(|v| -v).collect(), weight: -self.weight }
    }
}

impl TryFrom<Vec<i8>> for Labeling {
    type Error = Error;
    fn try_from(values: Vec<i8>) -> Result<Self> {
        Labeling::new(values)
    }
}

impl From<Labeling> for Vec<i8> {
    fn from(lab: Labeling) -> Self {
        lab.values
    }
}

fn check_len(g: &Graph, lab: &Labeling) -> Result<()> {
    if lab.len() != g.n_vertices() {
        return Err(Error::arg(format!(
            "labeling has {} entries but the graph has {} vertices",
            lab.len(),
            g.n_vertices()
        )));
    }
    Ok(())
}

/// Sum of `lab` over `N[v]`.
pub fn closed_sum(g: &Graph, lab: &Labeling, v: usize) -> i64 {
    i64::from(lab.get(v)) + g.neighbors(v).iter().map(|&u| i64::from(lab.get(u))).sum::<i64>()
}

/// True iff every closed neighborhood sums to zero under `lab`.
pub fn is_bdf(g: &Graph, lab: &Labeling) -> Result<bool> {
    check_len(g, lab)?;
    Ok((0..g.n_vertices()).all(|v| closed_sum(g, lab, v) == 0))
}
