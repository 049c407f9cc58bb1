//! Edge ideals and joins of graphs.

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::Instant;

use fiberlab_core::{Error, Field, Monomial, MonomialIdeal, Result, Ring};
use petgraph::algo::kosaraju_scc;
use petgraph::graph::UnGraph;
use serde_json::json;

use crate::engine::Engine;
use crate::report::{Provenance, Report};

/// Simple graph on vertices `0..n`, printed as `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Graph> {
        if n == 0 {
            return Err(Error::InvalidArgument("graph needs a vertex".into()));
        }
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a == b || a >= n || b >= n {
                return Err(Error::InvalidArgument(format!("bad edge {{{}, {}}}", a + 1, b + 1)));
            }
            set.insert((a.min(b), a.max(b)));
        }
        Ok(Graph { n, edges: set })
    }

    /// Parses `n: 1-2, 2-3` with 1-based vertices.
    pub fn parse(text: &str) -> Result<Graph> {
        let bad = || Error::InvalidArgument(format!("cannot parse graph {text:?}"));
        let (n, rest) = text.split_once(':').ok_or_else(bad)?;
        let n: usize = n.trim().parse().map_err(|_| bad())?;
        let mut edges = Vec::new();
        for e in rest.split(',').map(str::trim).filter(|e| !e.is_empty()) {
            let (a, b) = e.split_once('-').ok_or_else(bad)?;
            let a: usize = a.trim().parse().map_err(|_| bad())?;
            let b: usize = b.trim().parse().map_err(|_| bad())?;
            if a == 0 || b == 0 {
                return Err(bad());
            }
            edges.push((a - 1, b - 1));
        }
        Graph::new(n, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    pub fn complement(&self) -> Graph {
        let edges = (0..self.n)
            .flat_map(|a| (a + 1..self.n).map(move |b| (a, b)))
            .filter(|&(a, b)| !self.has_edge(a, b));
        Graph::new(self.n, edges).expect("complement of a valid graph")
    }

    /// Complete bipartite graph with parts `0..p` and `p..p+q`.
    pub fn complete_bipartite(p: usize, q: usize) -> Result<Graph> {
        Graph::new(p + q, (0..p).flat_map(|a| (p..p + q).map(move |b| (a, b))))
    }

    /// Edges as `1-2, 2-3`.
    pub fn format(&self) -> String {
        let edges: Vec<String> = self.edges().map(|(a, b)| format!("{}-{}", a + 1, b + 1)).collect();
        format!("{}: {}", self.n, edges.join(", "))
    }
}

/// `(x_a x_b : {a, b} ∈ E)` in `k[x1..xn]`.
pub fn edge_ideal(g: &Graph, field: Field) -> Result<MonomialIdeal> {
    let ring = Arc::new(Ring::indexed("R", "x", g.n)?.with_field(field));
    let gens = g.edges().map(|(a, b)| Monomial::var(a, g.n).mul(&Monomial::var(b, g.n))).collect();
    MonomialIdeal::new(&ring, gens)
}

/// Partition `(V1, V2)` with every pair across it an edge, if one exists.
/// `V1` is the component of vertex 0 in the complement graph.
pub fn detect_bipartite_join(g: &Graph) -> Option<(Vec<usize>, Vec<usize>)> {
    let c = g.complement();
    let mut pg = UnGraph::<(), ()>::new_undirected();
    let nodes: Vec<_> = (0..g.n).map(|_| pg.add_node(())).collect();
    for (a, b) in c.edges() {
        pg.add_edge(nodes[a], nodes[b], ());
    }
    let comps = kosaraju_scc(&pg);
    if comps.len() < 2 {
        return None;
    }
    let first = comps.iter().find(|comp| comp.iter().any(|v| v.index() == 0)).expect("vertex 0 is covered");
    let mut v1: Vec<usize> = first.iter().map(|v| v.index()).collect();
    v1.sort_unstable();
    let v2 = (0..g.n).filter(|v| !v1.contains(v)).collect();
    Some((v1, v2))
}

/// Every cross pair is an edge and both parts are nonempty.
pub fn is_join(g: &Graph, v1: &[usize], v2: &[usize]) -> bool {
    !v1.is_empty() && !v2.is_empty() && v1.iter().all(|&a| v2.iter().all(|&b| g.has_edge(a, b)))
}

/// Brute-force search over all bipartitions.
pub fn has_join_brute_force(g: &Graph) -> bool {
    (1u64..1 << (g.n - 1)).any(|mask| {
        let (v1, v2): (Vec<usize>, Vec<usize>) = (0..g.n).partition(|&v| v > 0 && mask >> (v - 1) & 1 == 1);
        is_join(g, &v1, &v2)
    })
}

/// `reg I(G)^s < reg I(G)^{s+1}` for `s < s_cap` on a graph with a join.
pub fn check_reg_increasing(g: &Graph, s_cap: u32, engine: &Engine) -> Report {
    let started = Instant::now();
    let claim = "cor-8.2";
    let Some((v1, v2)) = detect_bipartite_join(g) else {
        return Report::error(claim, &Error::InvalidArgument("graph has no bipartite join".into()), started);
    };
    let run = || -> Result<Report> {
        let i = edge_ideal(g, engine.field())?;
        let regs = (1..=s_cap).map(|s| engine.reg(&i.power(s))).collect::<Result<Vec<_>>>()?;
        let mut r = Report::new(claim, Provenance::Literature)
            .param("graph", g.format())
            .param("sCap", s_cap)
            .param("char", engine.field().characteristic());
        r.computed("partition", json!([
            v1.iter().map(|v| v + 1).collect::<Vec<_>>(),
            v2.iter().map(|v| v + 1).collect::<Vec<_>>()
        ]));
        r.computed("regs", json!(regs));
        r.compare("strictlyIncreasing", regs.windows(2).all(|w| w[0] < w[1]), true);
        Ok(r.settle(started))
    };
    run().unwrap_or_else(|e| Report::error(claim, &e, started))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_graphs() {
        let e = Graph::new(2, [(0, 1)]).unwrap();
        assert_eq!(edge_ideal(&e, Field::Rational).unwrap().format_gens(), "x1*x2");
        let k22 = Graph::complete_bipartite(2, 2).unwrap();
        assert_eq!(detect_bipartite_join(&k22), Some((vec![0, 1], vec![2, 3])));
        let path = Graph::parse("3: 1-2, 2-3").unwrap();
        assert_eq!(detect_bipartite_join(&path), Some((vec![0, 2], vec![1])));
        assert!(has_join_brute_force(&path));
        assert_eq!(detect_bipartite_join(&Graph::new(1, []).unwrap()), None);
        let p4 = Graph::parse("4: 1-2, 2-3, 3-4").unwrap();
        assert_eq!(detect_bipartite_join(&p4), None);
        assert!(!has_join_brute_force(&p4));
        assert!(Graph::new(2, [(1, 1)]).is_err());
    }

    #[test]
    fn increasing_regularity() {
        let eng = Engine::new(Field::Rational);
        let r = check_reg_increasing(&Graph::complete_bipartite(2, 2).unwrap(), 3, &eng);
        assert!(r.passed());
        assert_eq!(r.computed["regs"], json!([2, 4, 6]));
    }
}
