//! Layer-sum certificates for d-balancedness.
//!
//! Let the vertices be split into layers `V_1..V_k` such that every vertex of
//! layer `j` has the same number `Q[i][j]` of closed-neighborhood members in
//! layer `i` (an equitable partition of M(G)). Summing the balance equations
//! of the vertices of layer `i` gives `sum_j Q[i][j] * s_j = 0`, where `s_j`
//! is the label sum of layer `j`. If `Q` is nonsingular every layer sum, and
//! therefore the weight, of every BDF is zero, so `G` is d-balanced.
//!
//! The test is sufficient, not necessary: a singular quotient or a
//! non-equitable partition says nothing about `G`.

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_solver::{determinant, rational_string};
use crate::graph::{Family, Graph, Labeling};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerPartition {
    layers: Vec<Vec<usize>>,
}

impl LayerPartition {
    /// Checks that `layers` are non-empty, disjoint and cover `0..n_vertices`.
    pub fn new(layers: Vec<Vec<usize>>, n_vertices: usize) -> Result<Self> {
        let mut owner = vec![usize::MAX; n_vertices];
        for (i, layer) in layers.iter().enumerate() {
            if layer.is_empty() {
                return Err(Error::arg(format!("layer {i} is empty")));
            }
            for &v in layer {
                if v >= n_vertices {
                    return Err(Error::arg(format!("vertex {v} out of range")));
                }
                if owner[v] != usize::MAX {
                    return Err(Error::arg(format!("vertex {v} appears in two layers")));
                }
                owner[v] = i;
            }
        }
        if let Some(v) = owner.iter().position(|&o| o == usize::MAX) {
            return Err(Error::arg(format!("vertex {v} is not covered by any layer")));
        }
        Ok(LayerPartition { layers })
    }

    pub fn layers(&self) -> &[Vec<usize>] {
        &self.layers
    }

    pub fn n_layers(&self) -> usize {
        self.layers.len()
    }

    pub fn n_vertices(&self) -> usize {
        self.layers.iter().map(Vec::len).sum()
    }

    fn owners(&self) -> Vec<usize> {
        let mut owner = vec![0; self.n_vertices()];
        for (i, layer) in self.layers.iter().enumerate() {
            for &v in layer {
                owner[v] = i;
            }
        }
        owner
    }

    /// Label sum of each layer.
    pub fn layer_sums(&self, lab: &Labeling) -> Vec<i64> {
        self.layers
            .iter()
            .map(|layer| layer.iter().map(|&v| i64::from(lab.get(v))).sum())
            .collect()
    }
}

/// `Q[i][j]`: number of closed-neighborhood members in layer `i` of any vertex of layer `j`.
pub type Quotient = Vec<Vec<i64>>;

/// The quotient matrix if the partition is equitable, `None` otherwise.
pub fn check_equitable(g: &Graph, p: &LayerPartition) -> Result<Option<Quotient>> {
    if p.n_vertices() != g.n_vertices() {
        return Err(Error::arg(format!(
            "partition covers {} vertices, graph has {}",
            p.n_vertices(),
            g.n_vertices()
        )));
    }
    let k = p.n_layers();
    let owner = p.owners();
    let mut q: Quotient = vec![vec![0; k]; k];
    for (j, layer) in p.layers().iter().enumerate() {
        for (pos, &v) in layer.iter().enumerate() {
            let mut counts = vec![0i64; k];
            counts[owner[v]] += 1;
            for &u in g.neighbors(v) {
                counts[owner[u]] += 1;
            }
            for (i, &c) in counts.iter().enumerate() {
                if pos == 0 {
                    q[i][j] = c;
                } else if q[i][j] != c {
                    return Ok(None);
                }
            }
        }
    }
    Ok(Some(q))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerCertificate {
    pub partition: LayerPartition,
    pub quotient: Quotient,
    pub determinant: BigRational,
}

impl LayerCertificate {
    pub fn nonsingular(&self) -> bool {
        !self.determinant.is_zero()
    }
}

/// Three-valued outcome of [`certify_d_balanced`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certification {
    Certified(LayerCertificate),
    NotEquitable { partition: LayerPartition },
    SingularQuotient { partition: LayerPartition, quotient: Quotient },
}

impl Certification {
    pub fn certificate(&self) -> Option<&LayerCertificate> {
        match self {
            Certification::Certified(c) => Some(c),
            _ => None,
        }
    }

    pub fn reason(&self) -> &'static str {
        match self {
            Certification::Certified(_) => "certified d-balanced",
            Certification::NotEquitable { .. } => "inconclusive (not equitable)",
            Certification::SingularQuotient { .. } => "inconclusive (singular quotient)",
        }
    }

    pub fn to_json(&self) -> CertificateJson {
        let (partition, quotient, det) = match self {
            Certification::Certified(c) => {
                (&c.partition, Some(c.quotient.clone()), Some(rational_string(&c.determinant)))
            }
            Certification::NotEquitable { partition } => (partition, None, None),
            Certification::SingularQuotient { partition, quotient } => {
                (partition, Some(quotient.clone()), Some("0/1".to_string()))
            }
        };
        CertificateJson {
            layers: partition.layers().to_vec(),
            quotient,
            det,
            certified: matches!(self, Certification::Certified(_)),
            reason: self.reason().to_string(),
        }
    }
}

/// `{"layers", "quotient", "det", "certified", "reason"}`; `quotient` and `det`
/// are null when the partition is not equitable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub layers: Vec<Vec<usize>>,
    pub quotient: Option<Quotient>,
    pub det: Option<String>,
    pub certified: bool,
    pub reason: String,
}

pub fn certify_d_balanced(g: &Graph, p: &LayerPartition) -> Result<Certification> {
    let Some(quotient) = check_equitable(g, p)? else {
        return Ok(Certification::NotEquitable { partition: p.clone() });
    };
    let det = determinant(&quotient);
    if det.is_zero() {
        return Ok(Certification::SingularQuotient { partition: p.clone(), quotient });
    }
    Ok(Certification::Certified(LayerCertificate {
        partition: p.clone(),
        quotient,
        determinant: det,
    }))
}

/// Layer-major partition of the polytope families (3, 4 or 6 layers of size `n`).
pub fn natural_partition(g: &Graph) -> Option<LayerPartition> {
    let (n, k) = match g.family()? {
        Family::Antiprism { n } => (*n, 3),
        Family::PolytopeD { n } => (*n, 4),
        Family::PolytopeR2 { n } => (*n, 6),
        _ => return None,
    };
    let layers = (0..k).map(|l| (l * n..(l + 1) * n).collect()).collect();
    LayerPartition::new(layers, g.n_vertices()).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{antiprism, grid, polytope_d, polytope_r2};

    #[test]
    fn natural_partitions() {
        let p = natural_partition(&antiprism(5).unwrap()).unwrap();
        assert_eq!(p.layers(), &[vec![0, 1, 2, 3, 4], vec![5, 6, 7, 8, 9], vec![10, 11, 12, 13, 14]]);
        let p = natural_partition(&polytope_d(5).unwrap()).unwrap();
        assert_eq!(p.n_layers(), 4);
        assert!(p.layers().iter().all(|l| l.len() == 5));
        assert!(natural_partition(&grid(3, 3).unwrap()).is_none());
    }

    #[test]
    fn quotients_of_the_polytopes() {
        let g = antiprism(7).unwrap();
        let q = check_equitable(&g, &natural_partition(&g).unwrap()).unwrap().unwrap();
        assert_eq!(q, vec![vec![3, 2, 0], vec![2, 3, 2], vec![0, 2, 3]]);

        let g = polytope_d(6).unwrap();
        let q = check_equitable(&g, &natural_partition(&g).unwrap()).unwrap().unwrap();
        assert_eq!(q, vec![vec![3, 1, 0, 0], vec![1, 1, 2, 0], vec![0, 2, 1, 1], vec![0, 0, 1, 3]]);

        let g = polytope_r2(5).unwrap();
        let q = check_equitable(&g, &natural_partition(&g).unwrap()).unwrap().unwrap();
        assert_eq!(
            q,
            vec![
                vec![3, 1, 0, 0, 0, 0],
                vec![1, 1, 2, 0, 0, 0],
                vec![0, 2, 1, 1, 0, 0],
                vec![0, 0, 1, 1, 2, 0],
                vec![0, 0, 0, 2, 1, 1],
                vec![0, 0, 0, 0, 1, 3],
            ]
        );
    }

    #[test]
    fn grid_rows_are_not_equitable() {
        let g = grid(3, 3).unwrap();
        let rows = LayerPartition::new((0..3).map(|i| (3 * i..3 * i + 3).collect()).collect(), 9).unwrap();
        assert_eq!(check_equitable(&g, &rows).unwrap(), None);
        let c = certify_d_balanced(&g, &rows).unwrap();
        assert_eq!(c.reason(), "inconclusive (not equitable)");
        assert!(c.certificate().is_none());
    }

    #[test]
    fn singular_quotient_is_inconclusive() {
        // single edge, one layer: Q = [2], nonsingular; two singleton layers: Q = [[1,1],[1,1]]
        let g = Graph::new(2, [(0, 1)]).unwrap();
        let p = LayerPartition::new(vec![vec![0], vec![1]], 2).unwrap();
        let c = certify_d_balanced(&g, &p).unwrap();
        assert_eq!(c.reason(), "inconclusive (singular quotient)");
        assert_eq!(c.to_json().det.as_deref(), Some("0/1"));
    }

    #[test]
    fn partition_validation() {
        assert!(LayerPartition::new(vec![vec![0, 1], vec![1]], 2).is_err());
        assert!(LayerPartition::new(vec![vec![0], vec![]], 1).is_err());
        assert!(LayerPartition::new(vec![vec![0]], 2).is_err());
        let g = Graph::new(3, [(0, 1)]).unwrap();
        let p = LayerPartition::new(vec![vec![0, 1]], 2).unwrap();
        assert!(check_equitable(&g, &p).is_err());
    }

    #[test]
    fn antiprism_certificate_json() {
        let g = antiprism(5).unwrap();
        let c = certify_d_balanced(&g, &natural_partition(&g).unwrap()).unwrap();
        let json = c.to_json();
        assert!(json.certified);
        assert_eq!(json.det.as_deref(), Some("3/1"));
        assert_eq!(json.reason, "certified d-balanced");
    }
}
