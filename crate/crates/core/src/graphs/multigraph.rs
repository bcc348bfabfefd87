use num_bigint::BigInt;
use num_traits::{One, Pow};

use crate::algebra::factorial;
use crate::error::{Error, Result};

/// Finite multigraph on vertices `0..vertex_count`. Edges are stored as
/// `(u, v)` with `u <= v`, so every non-loop edge already carries its
/// reference orientation `u -> v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Multigraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClassKind {
    Single,
    Parallel,
    Loop,
}

impl ClassKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ClassKind::Single => "single",
            ClassKind::Parallel => "parallel",
            ClassKind::Loop => "loop",
        }
    }
}

/// Maximal set of edges with the same endpoints. For a loop class both
/// endpoints are the same vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeClass {
    pub kind: ClassKind,
    pub edges: Vec<usize>,
    pub endpoints: (usize, usize),
}

impl EdgeClass {
    pub fn size(&self) -> usize {
        self.edges.len()
    }
}

impl Multigraph {
    pub fn new(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::InvalidArgument("graph needs at least one vertex".into()));
        }
        let mut normalized = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::InvalidArgument(format!(
                    "edge ({u},{v}) out of range for {vertex_count} vertices"
                )));
            }
            normalized.push((u.min(v), u.max(v)));
        }
        Ok(Multigraph { vertex_count, edges: normalized })
    }

    /// Graph from a symmetric multiplicity matrix; the diagonal counts loops.
    pub(crate) fn from_matrix(mult: &[Vec<u8>]) -> Self {
        let n = mult.len();
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u..n {
                for _ in 0..mult[u][v] {
                    edges.push((u, v));
                }
            }
        }
        Multigraph { vertex_count: n, edges }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn is_loop(&self, e: usize) -> bool {
        let (u, v) = self.edges[e];
        u == v
    }

    /// Degree with loops counted twice.
    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|&(a, b)| usize::from(a == v) + usize::from(b == v))
            .sum()
    }

    pub fn loop_count(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v && b == v).count()
    }

    pub fn multiplicity_matrix(&self) -> Vec<Vec<u8>> {
        let n = self.vertex_count;
        let mut m = vec![vec![0u8; n]; n];
        for &(u, v) in &self.edges {
            m[u][v] += 1;
            if u != v {
                m[v][u] += 1;
            }
        }
        m
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count;
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// First Betti number `e - v + 1` of a connected graph.
    pub fn betti(&self) -> usize {
        (self.edges.len() + 1).saturating_sub(self.vertex_count)
    }

    pub fn min_degree(&self) -> usize {
        (0..self.vertex_count).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// Relabel vertices: vertex `v` becomes `perm[v]`. Edges are re-sorted.
    pub fn relabel(&self, perm: &[usize]) -> Multigraph {
        let mut edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (perm[u], perm[v]);
                (a.min(b), a.max(b))
            })
            .collect();
        edges.sort_unstable();
        Multigraph { vertex_count: self.vertex_count, edges }
    }

    pub fn with_edge(&self, u: usize, v: usize) -> Multigraph {
        let mut g = self.clone();
        g.edges.push((u.min(v), u.max(v)));
        g
    }

    pub fn with_leaf(&self, parent: usize) -> Multigraph {
        let mut g = self.clone();
        g.edges.push((parent, g.vertex_count));
        g.vertex_count += 1;
        g
    }
}

/// Partition of the edge set into single, parallel and loop classes, in
/// order of each class's least edge index.
pub fn edge_classes(g: &Multigraph) -> Vec<EdgeClass> {
    let mut classes: Vec<EdgeClass> = Vec::new();
    for (i, &(u, v)) in g.edges.iter().enumerate() {
        match classes.iter_mut().find(|c| c.endpoints == (u, v)) {
            Some(c) => c.edges.push(i),
            None => classes.push(EdgeClass {
                kind: if u == v { ClassKind::Loop } else { ClassKind::Single },
                edges: vec![i],
                endpoints: (u, v),
            }),
        }
    }
    for c in &mut classes {
        if c.kind == ClassKind::Single && c.edges.len() > 1 {
            c.kind = ClassKind::Parallel;
        }
    }
    classes
}

/// `|Aut^v G|`: automorphisms fixing every vertex.
pub fn vertex_fixing_aut_order(g: &Multigraph) -> BigInt {
    let mut total = BigInt::one();
    for c in edge_classes(g) {
        let s = c.size();
        total *= factorial(s);
        if c.kind == ClassKind::Loop {
            total *= Pow::pow(BigInt::from(2), s);
        }
    }
    total
}

/// `(|Aut G|, |Aut_v G|)` where `Aut_v G` is the image of `Aut G` in the
/// vertex permutations.
pub fn aut_orders(g: &Multigraph) -> (BigInt, BigInt) {
    let aut_v = BigInt::from(super::canon::canonical_form(g).vertex_automorphisms);
    let aut = &aut_v * vertex_fixing_aut_order(g);
    (aut, aut_v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, e: &[(usize, usize)]) -> Multigraph {
        Multigraph::new(n, e).unwrap()
    }

    fn theta() -> Multigraph {
        g(2, &[(0, 1), (0, 1), (0, 1)])
    }

    #[test]
    fn classes() {
        let c = edge_classes(&theta());
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].kind, ClassKind::Parallel);
        assert_eq!(c[0].size(), 3);
        let dumbbell = g(2, &[(0, 0), (0, 1), (1, 1)]);
        let kinds: Vec<_> = edge_classes(&dumbbell).iter().map(|c| (c.kind, c.size())).collect();
        assert_eq!(
            kinds,
            vec![(ClassKind::Loop, 1), (ClassKind::Single, 1), (ClassKind::Loop, 1)]
        );
    }

    #[test]
    fn automorphisms() {
        let b = |x: i64| BigInt::from(x);
        assert_eq!(aut_orders(&theta()), (b(12), b(2)));
        assert_eq!(aut_orders(&g(1, &[(0, 0), (0, 0)])), (b(8), b(1)));
        assert_eq!(aut_orders(&g(2, &[(0, 0), (0, 1), (1, 1)])), (b(8), b(2)));
        assert_eq!(aut_orders(&g(1, &[(0, 0)])), (b(2), b(1)));
        assert_eq!(aut_orders(&g(2, &[(0, 1), (0, 1)])).1, b(2));
        for k in 3..7 {
            let edges: Vec<_> = (0..k).map(|i| (i, (i + 1) % k)).collect();
            assert_eq!(aut_orders(&g(k, &edges)), (b(2 * k as i64), b(2 * k as i64)));
        }
        let k4 = g(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(aut_orders(&k4), (b(24), b(24)));
    }

    #[test]
    fn basic_queries() {
        let d = g(2, &[(0, 0), (1, 0), (1, 1)]);
        assert_eq!(d.edges()[1], (0, 1));
        assert_eq!(d.degree(0), 3);
        assert_eq!(d.betti(), 2);
        assert!(d.is_connected());
        assert!(!g(3, &[(0, 1)]).is_connected());
        assert!(Multigraph::new(2, &[(0, 2)]).is_err());
    }
}
