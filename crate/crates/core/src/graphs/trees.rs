use super::multigraph::{edge_classes, ClassKind, Multigraph};

/// Spanning tree modulo permutations inside parallel classes. Each tree edge
/// is the least-index edge of its class and is oriented toward `root`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningTreeRep {
    pub root: usize,
    /// Sorted edge indices.
    pub edges: Vec<usize>,
    /// For each entry of `edges`, the endpoint farther from the root.
    pub child: Vec<usize>,
}

impl SpanningTreeRep {
    pub fn contains(&self, e: usize) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    /// Whether tree edge `e` points the same way as its reference
    /// orientation `u -> v` (`u < v`), i.e. whether the child is `u`.
    pub fn agrees_with_reference(&self, g: &Multigraph, e: usize) -> Option<bool> {
        let i = self.edges.binary_search(&e).ok()?;
        Some(self.child[i] == g.edges()[e].0)
    }
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

pub fn spanning_tree_reps(g: &Multigraph, root: usize) -> Vec<SpanningTreeRep> {
    let n = g.vertex_count();
    let reps: Vec<(usize, (usize, usize))> = edge_classes(g)
        .into_iter()
        .filter(|c| c.kind != ClassKind::Loop)
        .map(|c| (c.edges[0], c.endpoints))
        .collect();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    let parent: Vec<usize> = (0..n).collect();
    choose(&reps, 0, n - 1, &parent, &mut chosen, &mut |edges| {
        out.push(orient(g, edges, root));
    });
    out
}

fn choose(
    reps: &[(usize, (usize, usize))],
    start: usize,
    need: usize,
    parent: &[usize],
    chosen: &mut Vec<usize>,
    f: &mut impl FnMut(&[usize]),
) {
    if need == 0 {
        f(chosen);
        return;
    }
    for i in start..reps.len() {
        if reps.len() - i < need {
            break;
        }
        let (e, (u, v)) = reps[i];
        let mut p = parent.to_vec();
        let (ru, rv) = (find(&mut p, u), find(&mut p, v));
        if ru == rv {
            continue;
        }
        p[ru] = rv;
        chosen.push(e);
        choose(reps, i + 1, need - 1, &p, chosen, f);
        chosen.pop();
    }
}

fn orient(g: &Multigraph, edges: &[usize], root: usize) -> SpanningTreeRep {
    let n = g.vertex_count();
    let mut edges = edges.to_vec();
    edges.sort_unstable();
    let mut depth = vec![usize::MAX; n];
    depth[root] = 0;
    let mut frontier = vec![root];
    while let Some(u) = frontier.pop() {
        for &e in &edges {
            let (a, b) = g.edges()[e];
            let w = if a == u { b } else if b == u { a } else { continue };
            if depth[w] == usize::MAX {
                depth[w] = depth[u] + 1;
                frontier.push(w);
            }
        }
    }
    let child = edges
        .iter()
        .map(|&e| {
            let (a, b) = g.edges()[e];
            if depth[a] > depth[b] {
                a
            } else {
                b
            }
        })
        .collect();
    SpanningTreeRep { root, edges, child }
}
