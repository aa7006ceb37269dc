//! k-uniform hypergraphs with O(k) expected edge-membership queries.
//!
//! Vertices are contiguous `0..n` integers; edges are k-element subsets
//! stored as strictly sorted vectors. A tuple whose image has fewer than
//! k distinct vertices is never an edge.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::Path;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub type VertexId = u32;

#[derive(Debug, Clone)]
pub struct Hypergraph {
    n: usize,
    k: usize,
    edges: HashSet<Box<[VertexId]>>,
}

impl PartialEq for Hypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.k == other.k && self.edges == other.edges
    }
}
impl Eq for Hypergraph {}

impl Hypergraph {
    /// Builds a hypergraph from an edge list. Duplicate edges are allowed in
    /// the input and deduplicated; a malformed edge (wrong arity, repeated
    /// vertex, out-of-range vertex) is rejected naming the offender.
    pub fn build<I, E>(n: usize, k: usize, edge_list: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[VertexId]>,
    {
        if k == 0 {
            return Err(Error::InvalidArgument("uniformity k must be >= 1".into()));
        }
        let mut edges = HashSet::new();
        for e in edge_list {
            let mut edge: Vec<VertexId> = e.as_ref().to_vec();
            edge.sort_unstable();
            if edge.len() != k {
                return Err(Error::InvalidEdge {
                    edge,
                    reason: format!("expected {k} vertices"),
                });
            }
            if edge.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidEdge {
                    edge,
                    reason: "repeated vertex".into(),
                });
            }
            if let Some(&v) = edge.last() {
                if v as usize >= n {
                    return Err(Error::InvalidEdge {
                        edge,
                        reason: format!("vertex {v} out of range for n={n}"),
                    });
                }
            }
            edges.insert(edge.into_boxed_slice());
        }
        Ok(Hypergraph { n, k, edges })
    }

    /// The complete k-uniform hypergraph on n vertices (all C(n,k) edges).
    pub fn complete(n: usize, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidArgument("uniformity k must be >= 1".into()));
        }
        if k > n {
            return Err(Error::InvalidArgument(format!(
                "complete({n},{k}) requires k <= n"
            )));
        }
        let mut edges = HashSet::new();
        let mut edge: Vec<VertexId> = (0..k as VertexId).collect();
        loop {
            edges.insert(edge.clone().into_boxed_slice());
            // next k-combination in lexicographic order
            let mut i = k;
            loop {
                if i == 0 {
                    return Ok(Hypergraph { n, k, edges });
                }
                i -= 1;
                if (edge[i] as usize) < n - k + i {
                    edge[i] += 1;
                    for j in i + 1..k {
                        edge[j] = edge[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    /// G(n,p) for k-sets: every k-subset is included independently with
    /// probability `p`, driven deterministically by `seed`. The subsets are
    /// visited in lexicographic order, so identical `(n,k,p,seed)` yields an
    /// identical edge set regardless of thread count.
    pub fn random_gnp(n: usize, k: usize, p: f64, seed: u64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidArgument(format!("p={p} outside [0,1]")));
        }
        if k == 0 {
            return Err(Error::InvalidArgument("uniformity k must be >= 1".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut edges = HashSet::new();
        if k <= n {
            let mut edge: Vec<VertexId> = (0..k as VertexId).collect();
            'outer: loop {
                if rng.gen::<f64>() < p {
                    edges.insert(edge.clone().into_boxed_slice());
                }
                let mut i = k;
                loop {
                    if i == 0 {
                        break 'outer;
                    }
                    i -= 1;
                    if (edge[i] as usize) < n - k + i {
                        edge[i] += 1;
                        for j in i + 1..k {
                            edge[j] = edge[j - 1] + 1;
                        }
                        break;
                    }
                }
            }
        }
        Ok(Hypergraph { n, k, edges })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// True iff `vertices` has exactly k distinct in-range members forming an
    /// edge. Wrong arity, duplicates, and out-of-range ids return false.
    pub fn contains_edge(&self, vertices: &[VertexId]) -> bool {
        if vertices.len() != self.k {
            return false;
        }
        let mut sorted: Vec<VertexId> = vertices.to_vec();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return false;
        }
        if sorted.last().is_some_and(|&v| v as usize >= self.n) {
            return false;
        }
        self.edges.contains(sorted.as_slice())
    }

    /// Membership query for an already strictly sorted k-tuple; the hot path
    /// of support enumeration.
    #[inline]
    pub fn contains_sorted(&self, sorted: &[VertexId]) -> bool {
        self.edges.contains(sorted)
    }

    /// Edges in lexicographic order.
    pub fn sorted_edges(&self) -> Vec<&[VertexId]> {
        let mut out: Vec<&[VertexId]> = self.edges.iter().map(|e| e.as_ref()).collect();
        out.sort_unstable();
        out
    }

    pub fn edges(&self) -> impl Iterator<Item = &[VertexId]> {
        self.edges.iter().map(|e| e.as_ref())
    }

    /// Removes an edge, returning whether it was present.
    pub fn remove_edge(&mut self, edge: &[VertexId]) -> bool {
        let mut sorted = edge.to_vec();
        sorted.sort_unstable();
        self.edges.remove(sorted.as_slice())
    }

    /// True iff every edge of `self` is an edge of `other` (same n, k).
    pub fn is_subgraph_of(&self, other: &Hypergraph) -> bool {
        self.n == other.n
            && self.k == other.k
            && self.edges.iter().all(|e| other.edges.contains(e))
    }

    /// Text format: first line `n k m`, then m lines of k strictly increasing
    /// space-separated vertex ids. Lines starting with `#` are comments.
    pub fn to_text(&self) -> String {
        let sorted = self.sorted_edges();
        let mut out = String::new();
        let _ = writeln!(out, "{} {} {}", self.n, self.k, sorted.len());
        for e in sorted {
            let mut first = true;
            for v in e {
                if !first {
                    out.push(' ');
                }
                let _ = write!(out, "{v}");
                first = false;
            }
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty hypergraph file".into()))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(Error::Parse(format!(
                "header must be `n k m`, got {header:?}"
            )));
        }
        let n: usize = fields[0]
            .parse()
            .map_err(|_| Error::Parse(format!("bad n in header {header:?}")))?;
        let k: usize = fields[1]
            .parse()
            .map_err(|_| Error::Parse(format!("bad k in header {header:?}")))?;
        let m: usize = fields[2]
            .parse()
            .map_err(|_| Error::Parse(format!("bad m in header {header:?}")))?;
        let mut edge_list = Vec::with_capacity(m);
        for line in lines {
            let mut edge = Vec::with_capacity(k);
            for tok in line.split_whitespace() {
                let v: VertexId = tok
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad vertex id {tok:?}")))?;
                edge.push(v);
            }
            if edge.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Parse(format!(
                    "edge line {line:?} is not strictly increasing"
                )));
            }
            edge_list.push(edge);
        }
        if edge_list.len() != m {
            return Err(Error::Parse(format!(
                "header declares {m} edges but file has {}",
                edge_list.len()
            )));
        }
        Self::build(n, k, edge_list)
    }

    pub fn write_path(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }

    pub fn read_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_text(&text)
    }
}

/// C(n,k) as u128; saturates are not needed at the sizes we handle.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_path_graph() {
        let h = Hypergraph::build(3, 2, [[0, 1], [1, 2]]).unwrap();
        assert_eq!(h.edge_count(), 2);
        assert!(h.contains_edge(&[0, 1]));
        assert!(h.contains_edge(&[1, 0]));
        assert!(!h.contains_edge(&[0, 2]));
        assert!(!h.contains_edge(&[1, 1]));
        assert!(!h.contains_edge(&[1]));
    }

    #[test]
    fn build_dedupes() {
        let h = Hypergraph::build(3, 2, [[0, 1], [1, 0]]).unwrap();
        assert_eq!(h.edge_count(), 1);
    }

    #[test]
    fn build_three_uniform() {
        let h = Hypergraph::build(4, 3, [[0, 1, 2], [1, 2, 3]]).unwrap();
        assert_eq!(h.edge_count(), 2);
        assert!(h.contains_edge(&[2, 1, 3]));
    }

    #[test]
    fn build_rejects_bad_edges() {
        assert!(matches!(
            Hypergraph::build(3, 2, [[0, 0]]),
            Err(Error::InvalidEdge { .. })
        ));
        assert!(matches!(
            Hypergraph::build(3, 2, [[0, 3]]),
            Err(Error::InvalidEdge { .. })
        ));
        assert!(matches!(
            Hypergraph::build(3, 2, [vec![0, 1, 2]]),
            Err(Error::InvalidEdge { .. })
        ));
    }

    #[test]
    fn complete_counts() {
        assert_eq!(Hypergraph::complete(3, 2).unwrap().edge_count(), 3);
        assert_eq!(Hypergraph::complete(4, 3).unwrap().edge_count(), 4);
        assert_eq!(Hypergraph::complete(5, 2).unwrap().edge_count(), 10);
        for n in 0..=12usize {
            for k in 1..=n {
                let h = Hypergraph::complete(n, k).unwrap();
                assert_eq!(h.edge_count() as u128, binomial(n, k), "n={n} k={k}");
            }
        }
        assert!(Hypergraph::complete(2, 3).is_err());
    }

    #[test]
    fn gnp_extremes() {
        for seed in [0u64, 7, 99] {
            let full = Hypergraph::random_gnp(10, 2, 1.0, seed).unwrap();
            assert_eq!(full, Hypergraph::complete(10, 2).unwrap());
            let empty = Hypergraph::random_gnp(10, 2, 0.0, seed).unwrap();
            assert_eq!(empty.edge_count(), 0);
        }
        assert!(Hypergraph::random_gnp(10, 2, 1.5, 0).is_err());
    }

    #[test]
    fn gnp_deterministic() {
        let a = Hypergraph::random_gnp(30, 2, 0.4, 1234).unwrap();
        let b = Hypergraph::random_gnp(30, 2, 0.4, 1234).unwrap();
        assert_eq!(a, b);
        let c = Hypergraph::random_gnp(30, 2, 0.4, 1235).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn gnp_edge_counts_within_four_sigma() {
        // Binomial oracle: mean p*C(n,2), sd sqrt(C(n,2) p (1-p)).
        let n = 200;
        let p = 0.3;
        let trials = binomial(n, 2) as f64;
        let mean = p * trials;
        let sd = (trials * p * (1.0 - p)).sqrt();
        for seed in 0..50u64 {
            let h = Hypergraph::random_gnp(n, 2, p, seed).unwrap();
            let dev = (h.edge_count() as f64 - mean).abs();
            assert!(dev <= 4.0 * sd, "seed {seed}: dev {dev} > 4 sd {sd}");
        }
    }

    #[test]
    fn text_round_trip() {
        let h = Hypergraph::build(5, 2, [[3, 4], [0, 1], [1, 2]]).unwrap();
        let text = h.to_text();
        let h2 = Hypergraph::from_text(&text).unwrap();
        assert_eq!(h, h2);
        // canonical file -> identical bytes
        assert_eq!(h2.to_text(), text);
    }

    #[test]
    fn text_comments_and_errors() {
        let ok = "# a comment\n3 2 2\n0 1\n# another\n1 2\n";
        let h = Hypergraph::from_text(ok).unwrap();
        assert_eq!(h.edge_count(), 2);
        assert!(Hypergraph::from_text("3 2 1\n1 0\n").is_err());
        assert!(Hypergraph::from_text("3 2 2\n0 1\n").is_err());
    }
}
