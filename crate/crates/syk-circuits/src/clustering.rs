//! Partitioning Hamiltonian terms into mutually commuting clusters via
//! greedy coloring of the anticommutation graph.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::syk::PauliHamiltonian;

/// Anticommutation adjacency between Hamiltonian terms: an edge joins every
/// pair of terms whose Pauli strings anticommute.
#[derive(Debug, Clone)]
pub struct CommutationGraph {
    m: usize,
    words: usize,
    adj: Vec<u64>,
}

impl CommutationGraph {
    pub fn vertex_count(&self) -> usize {
        self.m
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.adj[i * self.words..(i + 1) * self.words]
    }

    pub fn anticommutes(&self, i: usize, j: usize) -> bool {
        self.row(i)[j / 64] >> (j % 64) & 1 == 1
    }

    pub fn degree(&self, i: usize) -> usize {
        self.row(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.m).map(|i| self.degree(i)).sum::<usize>() / 2
    }

    pub fn max_degree(&self) -> usize {
        (0..self.m).map(|i| self.degree(i)).max().unwrap_or(0)
    }
}

/// Pairwise symplectic tests over all O(m^2) term pairs.
pub fn build_commutation_graph(h: &PauliHamiltonian) -> CommutationGraph {
    let m = h.terms.len();
    let words = m.div_ceil(64).max(1);
    let mut adj = vec![0u64; m * words];
    for i in 0..m {
        for j in i + 1..m {
            let commute = h.terms[i]
                .1
                .commutes(&h.terms[j].1)
                .expect("terms share the qubit count");
            if !commute {
                adj[i * words + j / 64] |= 1 << (j % 64);
                adj[j * words + i / 64] |= 1 << (i % 64);
            }
        }
    }
    CommutationGraph { m, words, adj }
}

/// Vertex orders for the greedy sequential coloring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum ColoringStrategy {
    /// Descending anticommutation degree, index-ascending ties.
    #[default]
    DescendingDegree,
    /// Hamiltonian term order.
    InputOrder,
    /// DSATUR: highest saturation first, then degree, then index.
    SaturationDegree,
}

impl fmt::Display for ColoringStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ColoringStrategy::DescendingDegree => "descending-degree",
            ColoringStrategy::InputOrder => "input-order",
            ColoringStrategy::SaturationDegree => "saturation",
        };
        f.write_str(s)
    }
}

impl FromStr for ColoringStrategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "descending-degree" => Ok(ColoringStrategy::DescendingDegree),
            "input-order" => Ok(ColoringStrategy::InputOrder),
            "saturation" => Ok(ColoringStrategy::SaturationDegree),
            other => Err(format!(
                "unknown coloring strategy `{other}` (expected descending-degree, input-order, or saturation)"
            )),
        }
    }
}

/// A color class of the anticommutation graph: term indices whose strings
/// pairwise commute.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cluster {
    pub term_indices: Vec<usize>,
}

fn lowest_free_color(used: &[bool]) -> usize {
    used.iter().position(|&u| !u).unwrap_or(used.len())
}

fn color_graph(graph: &CommutationGraph, strategy: ColoringStrategy) -> Vec<usize> {
    let m = graph.vertex_count();
    let mut color = vec![usize::MAX; m];
    let mut n_colors = 0usize;
    match strategy {
        ColoringStrategy::InputOrder | ColoringStrategy::DescendingDegree => {
            let mut order: Vec<usize> = (0..m).collect();
            if strategy == ColoringStrategy::DescendingDegree {
                order.sort_by_key(|&v| (std::cmp::Reverse(graph.degree(v)), v));
            }
            for v in order {
                let mut used = vec![false; n_colors];
                for u in 0..m {
                    if graph.anticommutes(v, u) && color[u] != usize::MAX {
                        used[color[u]] = true;
                    }
                }
                let c = lowest_free_color(&used);
                color[v] = c;
                n_colors = n_colors.max(c + 1);
            }
        }
        ColoringStrategy::SaturationDegree => {
            let mut saturation: Vec<std::collections::BTreeSet<usize>> =
                vec![std::collections::BTreeSet::new(); m];
            for _ in 0..m {
                // Max saturation, then max degree, then lowest index.
                let v = (0..m)
                    .filter(|&v| color[v] == usize::MAX)
                    .max_by(|&a, &b| {
                        saturation[a]
                            .len()
                            .cmp(&saturation[b].len())
                            .then(graph.degree(a).cmp(&graph.degree(b)))
                            .then(b.cmp(&a))
                    })
                    .expect("uncolored vertex remains");
                let mut used = vec![false; n_colors];
                for &c in &saturation[v] {
                    used[c] = true;
                }
                let c = lowest_free_color(&used);
                color[v] = c;
                n_colors = n_colors.max(c + 1);
                for u in 0..m {
                    if graph.anticommutes(v, u) {
                        saturation[u].insert(c);
                    }
                }
            }
        }
    }
    color
}

/// Proper coloring of the anticommutation graph; each color class becomes a
/// cluster. Deterministic for a fixed strategy and input.
pub fn partition_commuting(h: &PauliHamiltonian, strategy: ColoringStrategy) -> Vec<Cluster> {
    let graph = build_commutation_graph(h);
    partition_with_graph(&graph, strategy)
}

pub fn partition_with_graph(graph: &CommutationGraph, strategy: ColoringStrategy) -> Vec<Cluster> {
    let color = color_graph(graph, strategy);
    let n_colors = color.iter().map(|&c| c + 1).max().unwrap_or(0);
    let mut clusters = vec![
        Cluster {
            term_indices: Vec::new()
        };
        n_colors
    ];
    for (v, &c) in color.iter().enumerate() {
        clusters[c].term_indices.push(v);
    }
    clusters
}

/// All-pairs commutation audit plus exact-cover check for a partition.
pub fn audit_partition(h: &PauliHamiltonian, clusters: &[Cluster]) -> Result<(), String> {
    let mut seen = vec![false; h.terms.len()];
    for (ci, cluster) in clusters.iter().enumerate() {
        for (pos, &i) in cluster.term_indices.iter().enumerate() {
            if i >= h.terms.len() {
                return Err(format!("cluster {ci} references term {i} out of range"));
            }
            if std::mem::replace(&mut seen[i], true) {
                return Err(format!("term {i} appears in more than one cluster"));
            }
            for &j in &cluster.term_indices[pos + 1..] {
                if !h.terms[i].1.commutes(&h.terms[j].1).map_err(|e| e.to_string())? {
                    return Err(format!("cluster {ci}: terms {i} and {j} anticommute"));
                }
            }
        }
    }
    if let Some(missing) = seen.iter().position(|&s| !s) {
        return Err(format!("term {missing} is not covered by any cluster"));
    }
    Ok(())
}

/// JSON dump of a partition, for debugging and regression fixtures.
pub fn partition_to_json(clusters: &[Cluster]) -> String {
    #[derive(Serialize)]
    struct Dump<'a> {
        clusters: Vec<&'a [usize]>,
    }
    let dump = Dump {
        clusters: clusters.iter().map(|c| c.term_indices.as_slice()).collect(),
    };
    let mut s = serde_json::to_string_pretty(&dump).expect("partition serializes");
    s.push('\n');
    s
}
