//! Cycle codes of graphs and simple-cycle counting.

use std::fmt;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::bounds::graph_cycle_upper;
use crate::codes::{content_lines, count_minimal_words, parse_pair, LinearCode};
use crate::error::{Error, Result};
use crate::gf2::{kernel_basis, BitMatrix};

/// Largest cycle-space dimension for which [`verify_cycle_correspondence`]
/// enumerates the code.
pub const MAX_CYCLE_DIMENSION: usize = 24;

/// An undirected multigraph on vertices `0..p`, edges in file order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    p: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(p: usize, edges: Vec<(usize, usize)>) -> Result<Graph> {
        if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| u >= p || v >= p) {
            return Err(Error::BadParameter(format!(
                "edge ({u},{v}) leaves the vertex range 0..{p}"
            )));
        }
        Ok(Graph { p, edges })
    }

    pub fn complete(p: usize) -> Graph {
        let edges = (0..p).flat_map(|u| (u + 1..p).map(move |v| (u, v))).collect();
        Graph { p, edges }
    }

    /// Outer 5-cycle, inner pentagram, five spokes.
    pub fn petersen() -> Graph {
        let mut edges = Vec::with_capacity(15);
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
            edges.push((i, 5 + i));
        }
        Graph { p: 10, edges }
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Component label for every vertex, labels numbered in order of first
    /// appearance.
    pub fn components(&self) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.p).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &(u, v) in &self.edges {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut label = vec![usize::MAX; self.p];
        let mut next = 0;
        let mut out = Vec::with_capacity(self.p);
        for x in 0..self.p {
            let root = find(&mut parent, x);
            if label[root] == usize::MAX {
                label[root] = next;
                next += 1;
            }
            out.push(label[root]);
        }
        out
    }

    pub fn component_count(&self) -> usize {
        self.components().iter().max().map_or(0, |&m| m + 1)
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// `q - p + c`.
    pub fn cycle_space_dimension(&self) -> usize {
        self.q() + self.component_count() - self.p
    }

    /// Format: first line `p q`, then `q` lines `u v`. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Graph> {
        let mut lines = content_lines(text);
        let (line_no, header) = lines.next().ok_or_else(|| Error::parse(1, "empty graph file"))?;
        let (p, q) = parse_pair(line_no, header)?;
        let mut edges = Vec::with_capacity(q);
        let mut last = line_no;
        for (line_no, line) in lines {
            if edges.len() == q {
                return Err(Error::parse(line_no, format!("more than {q} edges")));
            }
            let (u, v) = parse_pair(line_no, line)?;
            if u >= p || v >= p {
                return Err(Error::parse(line_no, format!("vertex out of range 0..{p}")));
            }
            edges.push((u, v));
            last = line_no;
        }
        if edges.len() != q {
            return Err(Error::parse(last, format!("expected {q} edges, found {}", edges.len())));
        }
        Ok(Graph { p, edges })
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.p, self.q())?;
        for (u, v) in &self.edges {
            writeln!(f, "{u} {v}")?;
        }
        Ok(())
    }
}

/// `p x q` vertex-edge incidence matrix over GF(2).
pub fn incidence_matrix(g: &Graph) -> Result<BitMatrix> {
    if g.q() > 64 {
        return Err(Error::EdgeOverflow { q: g.q() });
    }
    let mut m = BitMatrix::zeros(g.p, g.q());
    for (e, &(u, v)) in g.edges.iter().enumerate() {
        if u == v {
            return Err(Error::SelfLoop { edge: e, vertex: u });
        }
        m.set(u, e, true);
        m.set(v, e, true);
    }
    Ok(m)
}

/// The kernel of the incidence matrix: edge sets with even degree everywhere.
pub fn cycle_code(g: &Graph) -> Result<LinearCode> {
    let basis = kernel_basis(&incidence_matrix(g)?);
    if basis.rows() == 0 {
        return Err(Error::AcyclicGraph);
    }
    LinearCode::new(basis)
}

/// Number of simple cycles, each counted once as an edge set.
///
/// Every cycle is found from its lowest-index edge `e = (u, v)` as a simple
/// path `v -> u` that only uses edges with index above `e`. Anchors are
/// independent, so they run in parallel.
pub fn count_elementary_cycles(g: &Graph) -> u64 {
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); g.p];
    for (e, &(u, v)) in g.edges.iter().enumerate() {
        if u != v {
            adj[u].push((v, e));
            adj[v].push((u, e));
        }
    }
    let loops = g.edges.iter().filter(|(u, v)| u == v).count() as u64;
    let paths: u64 = (0..g.q())
        .into_par_iter()
        .filter(|&e| g.edges[e].0 != g.edges[e].1)
        .map(|e| {
            let (u, v) = g.edges[e];
            let mut visited = vec![false; g.p];
            visited[v] = true;
            paths_to(&adj, e, v, u, &mut visited)
        })
        .sum();
    loops + paths
}

fn paths_to(adj: &[Vec<(usize, usize)>], anchor: usize, at: usize, target: usize, visited: &mut [bool]) -> u64 {
    let mut total = 0;
    for &(next, e) in &adj[at] {
        if e <= anchor {
            continue;
        }
        if next == target {
            total += 1;
        } else if !visited[next] {
            visited[next] = true;
            total += paths_to(adj, anchor, next, target, visited);
            visited[next] = false;
        }
    }
    total
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleReport {
    pub p: usize,
    pub q: usize,
    pub components: usize,
    pub dimension: usize,
    pub cycles_via_code: u64,
    pub cycles_via_backtracking: u64,
    /// `floor(q 2^dim / (q - 2p')^2)` with `p' = q - dim + 1`, when `q > 2p'`.
    pub bound_new: Option<BigUint>,
    /// `floor(15/16 2^dim)`.
    pub bound_old: BigUint,
    pub agree: bool,
}

impl CycleReport {
    pub fn bounds_hold(&self) -> bool {
        let count = BigUint::from(self.cycles_via_code);
        count <= self.bound_old && self.bound_new.as_ref().is_none_or(|b| &count <= b)
    }
}

/// Counts the minimal codewords of the cycle code and the simple cycles of
/// the graph independently and compares them with the cycle-count bounds.
///
/// The bounds are stated for connected graphs. A graph with `c` components
/// has the cycle space of a connected graph on `p - c + 1` vertices with the
/// same edge count, and that is what the bounds are evaluated at.
pub fn verify_cycle_correspondence(g: &Graph) -> Result<CycleReport> {
    let code = cycle_code(g)?;
    if code.k() > MAX_CYCLE_DIMENSION {
        return Err(Error::TooLarge {
            k: code.k(),
            limit: MAX_CYCLE_DIMENSION,
        });
    }
    let components = g.component_count();
    let cycles_via_code = count_minimal_words(code.generator().row_words()) as u64;
    let cycles_via_backtracking = count_elementary_cycles(g);
    let effective_p = g.p + 1 - components;
    let bounds = graph_cycle_upper(effective_p, g.q())?;
    Ok(CycleReport {
        p: g.p,
        q: g.q(),
        components,
        dimension: code.k(),
        cycles_via_code,
        cycles_via_backtracking,
        bound_new: bounds.new,
        bound_old: bounds.old,
        agree: cycles_via_code == cycles_via_backtracking,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::binomial;
    use crate::codes::minimal_codewords;
    use proptest::prelude::*;

    fn graph(p: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::new(p, edges.to_vec()).unwrap()
    }

    /// `sum_k C(p,k) (k-1)!/2` simple cycles in `K_p`.
    fn complete_graph_cycles(p: u64) -> u64 {
        (3..=p)
            .map(|k| binomial(p, k) as u64 * (1..k).product::<u64>() / 2)
            .sum()
    }

    #[test]
    fn incidence_examples() {
        let tri = graph(3, &[(0, 1), (1, 2), (0, 2)]);
        let m = incidence_matrix(&tri).unwrap();
        assert_eq!((m.rows(), m.cols()), (3, 3));
        assert!((0..3).all(|c| m.column_word(c).count_ones() == 2));
        assert_eq!(crate::gf2::rank(&m), 2);
        assert_eq!(kernel_basis(&m).row_words(), &[0b111]);

        let path = graph(3, &[(0, 1), (1, 2)]);
        let m = incidence_matrix(&path).unwrap();
        assert_eq!(crate::gf2::rank(&m), 2);
        assert_eq!(kernel_basis(&m).rows(), 0);
        assert_eq!(cycle_code(&path), Err(Error::AcyclicGraph));

        let parallel = graph(2, &[(0, 1), (0, 1)]);
        let m = incidence_matrix(&parallel).unwrap();
        assert_eq!(m.column_word(0), m.column_word(1));
        assert_eq!(kernel_basis(&m).row_words(), &[0b11]);
        assert_eq!(count_elementary_cycles(&parallel), 1);

        let looped = graph(2, &[(0, 1), (1, 1)]);
        assert_eq!(incidence_matrix(&looped), Err(Error::SelfLoop { edge: 1, vertex: 1 }));
    }

    #[test]
    fn code_dimensions() {
        let k4 = cycle_code(&Graph::complete(4)).unwrap();
        assert_eq!((k4.n(), k4.k()), (6, 3));
        let k6 = cycle_code(&Graph::complete(6)).unwrap();
        assert_eq!((k6.n(), k6.k()), (15, 10));
        let tri = cycle_code(&graph(3, &[(0, 1), (1, 2), (0, 2)])).unwrap();
        assert_eq!((tri.n(), tri.k()), (3, 1));
        assert_eq!(tri.codewords().map(|c| c.bits()).collect::<Vec<_>>(), vec![0, 0b111]);
        assert_eq!(
            incidence_matrix(&Graph::complete(12)),
            Err(Error::EdgeOverflow { q: 66 })
        );
    }

    #[test]
    fn complete_graph_counts() {
        assert_eq!(complete_graph_cycles(4), 7);
        assert_eq!(complete_graph_cycles(6), 20 + 45 + 72 + 60);
        for p in 3..=7 {
            assert_eq!(
                count_elementary_cycles(&Graph::complete(p)),
                complete_graph_cycles(p as u64)
            );
        }
    }

    #[test]
    fn reports() {
        let k4 = verify_cycle_correspondence(&Graph::complete(4)).unwrap();
        assert_eq!((k4.cycles_via_code, k4.cycles_via_backtracking), (7, 7));
        assert!(k4.agree);
        assert_eq!(k4.bound_new, None);

        let k6 = verify_cycle_correspondence(&Graph::complete(6)).unwrap();
        assert_eq!((k6.cycles_via_code, k6.cycles_via_backtracking), (197, 197));
        assert_eq!(k6.bound_new, Some(BigUint::from(1706u32)));
        assert_eq!(k6.bound_old, BigUint::from(960u32));
        assert!(k6.bounds_hold());

        let pet = verify_cycle_correspondence(&Graph::petersen()).unwrap();
        assert_eq!(pet.dimension, 6);
        assert_eq!(pet.cycles_via_backtracking, 57);
        assert!(pet.agree);

        let tree = graph(4, &[(0, 1), (1, 2), (1, 3)]);
        assert_eq!(verify_cycle_correspondence(&tree), Err(Error::AcyclicGraph));
    }

    #[test]
    fn petersen_is_cubic() {
        let g = Graph::petersen();
        let mut deg = [0; 10];
        for &(u, v) in g.edges() {
            deg[u] += 1;
            deg[v] += 1;
        }
        assert!(deg.iter().all(|&d| d == 3));
        assert!(g.is_connected());
    }

    #[test]
    fn disconnected_graph() {
        // a triangle and a K4 side by side
        let mut edges = vec![(0, 1), (1, 2), (0, 2)];
        edges.extend(Graph::complete(4).edges().iter().map(|&(u, v)| (u + 3, v + 3)));
        let g = graph(7, &edges);
        assert_eq!(g.component_count(), 2);
        assert_eq!(g.cycle_space_dimension(), 4);
        let r = verify_cycle_correspondence(&g).unwrap();
        assert_eq!(r.cycles_via_code, 8);
        assert!(r.agree);
        let sum = cycle_code(&graph(3, &[(0, 1), (1, 2), (0, 2)]))
            .unwrap()
            .direct_sum(&cycle_code(&Graph::complete(4)).unwrap())
            .unwrap();
        assert_eq!(sum.generator().span().len(), 16);
        let mut a: Vec<u64> = cycle_code(&g).unwrap().generator().span();
        let mut b = sum.generator().span();
        a.sort_unstable();
        b.sort_unstable();
        assert_eq!(a, b);
    }

    #[test]
    fn parse_roundtrip() {
        let text = "# K3\n3 3\n0 1\n1 2 # middle\n0 2\n";
        let g = Graph::parse(text).unwrap();
        assert_eq!(g, graph(3, &[(0, 1), (1, 2), (0, 2)]));
        assert_eq!(Graph::parse(&g.to_text()).unwrap(), g);
        for bad in ["", "3 2\n0 1\n", "3 1\n0 3\n", "3 1\n0 1\n1 2\n", "3\n"] {
            assert!(matches!(Graph::parse(bad), Err(Error::Parse { .. })), "{bad:?}");
        }
    }

    fn connected_graph() -> impl Strategy<Value = Graph> {
        (2usize..=9).prop_flat_map(|p| {
            let tree = proptest::collection::vec(any::<prop::sample::Index>(), p - 1);
            let extra = proptest::collection::vec((0..p, 0..p), 1..=(18 - (p - 1)));
            (Just(p), tree, extra).prop_map(|(p, tree, extra)| {
                let mut edges: Vec<(usize, usize)> = tree
                    .iter()
                    .enumerate()
                    .map(|(i, ix)| (ix.index(i + 1), i + 1))
                    .collect();
                edges.extend(extra.into_iter().filter(|(u, v)| u != v));
                Graph { p, edges }
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn code_matches_backtracking(g in connected_graph()) {
            prop_assume!(g.cycle_space_dimension() >= 1);
            let r = verify_cycle_correspondence(&g).unwrap();
            prop_assert!(r.agree, "{g}");
            prop_assert!(r.bounds_hold());
        }

        #[test]
        fn codewords_have_even_degree(g in connected_graph()) {
            prop_assume!(g.cycle_space_dimension() >= 1);
            let code = cycle_code(&g).unwrap();
            for w in code.codewords() {
                let mut deg = vec![0u32; g.p()];
                for e in w.support() {
                    let (u, v) = g.edges()[e];
                    deg[u] += 1;
                    deg[v] += 1;
                }
                prop_assert!(deg.iter().all(|d| d % 2 == 0));
            }
            for m in minimal_codewords(&code).members() {
                // a simple cycle: every touched vertex has degree exactly 2
                let mut deg = vec![0u32; g.p()];
                for e in m.support() {
                    let (u, v) = g.edges()[e];
                    deg[u] += 1;
                    deg[v] += 1;
                }
                prop_assert!(deg.iter().all(|&d| d == 0 || d == 2));
            }
        }
    }
}
