use super::multigraph::Multigraph;

/// Canonical labeling found by individualization and refinement.
#[derive(Clone, Debug)]
pub struct CanonicalForm {
    /// Upper triangle (with diagonal) of the relabeled multiplicity matrix,
    /// prefixed by the vertex count. Equal codes mean isomorphic graphs.
    pub code: Vec<u8>,
    /// `perm[v]` is the canonical position of vertex `v`.
    pub perm: Vec<usize>,
    /// Number of vertex permutations preserving all multiplicities.
    pub vertex_automorphisms: u64,
}

impl CanonicalForm {
    pub fn graph(&self, g: &Multigraph) -> Multigraph {
        g.relabel(&self.perm)
    }
}

fn refine(mult: &[Vec<u8>], colors: &mut Vec<usize>) {
    let n = mult.len();
    let mut count = distinct(colors);
    loop {
        let sigs: Vec<(usize, u8, Vec<(usize, u8)>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<(usize, u8)> = (0..n)
                    .filter(|&u| u != v && mult[v][u] > 0)
                    .map(|u| (colors[u], mult[v][u]))
                    .collect();
                nb.sort_unstable();
                (colors[v], mult[v][v], nb)
            })
            .collect();
        let mut sorted = sigs.clone();
        sorted.sort();
        sorted.dedup();
        for v in 0..n {
            colors[v] = sorted.binary_search(&sigs[v]).unwrap();
        }
        let next = sorted.len();
        if next == count {
            return;
        }
        count = next;
    }
}

fn distinct(colors: &[usize]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

fn encode(mult: &[Vec<u8>], order: &[usize]) -> Vec<u8> {
    let n = mult.len();
    let mut code = Vec::with_capacity(1 + n * (n + 1) / 2);
    code.push(n as u8);
    for i in 0..n {
        for j in i..n {
            code.push(mult[order[i]][order[j]]);
        }
    }
    code
}

struct Search<'a> {
    mult: &'a [Vec<u8>],
    best: Option<(Vec<u8>, Vec<usize>)>,
    hits: u64,
}

impl Search<'_> {
    fn visit(&mut self, colors: Vec<usize>) {
        let n = self.mult.len();
        let mut colors = colors;
        refine(self.mult, &mut colors);
        // First smallest non-singleton cell, chosen by color value.
        let mut cell_sizes = vec![0usize; n];
        for &c in &colors {
            cell_sizes[c] += 1;
        }
        let target = (0..n)
            .filter(|&c| cell_sizes[c] > 1)
            .min_by_key(|&c| (cell_sizes[c], c));
        match target {
            None => {
                let mut order = vec![0; n];
                for v in 0..n {
                    order[colors[v]] = v;
                }
                let code = encode(self.mult, &order);
                match &self.best {
                    Some((best, _)) if code > *best => {}
                    Some((best, _)) if code == *best => self.hits += 1,
                    _ => {
                        self.best = Some((code, colors));
                        self.hits = 1;
                    }
                }
            }
            Some(cell) => {
                for v in 0..n {
                    if colors[v] != cell {
                        continue;
                    }
                    let mut next: Vec<usize> = colors.iter().map(|&c| 2 * c + 1).collect();
                    next[v] = 2 * cell;
                    self.visit(next);
                }
            }
        }
    }
}

pub fn canonical_form(g: &Multigraph) -> CanonicalForm {
    let mult = g.multiplicity_matrix();
    let n = mult.len();
    let mut search = Search { mult: &mult, best: None, hits: 0 };
    search.visit(vec![0; n]);
    let (code, perm) = search.best.expect("search reaches a leaf");
    CanonicalForm { code, perm, vertex_automorphisms: search.hits }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in all_perms(n - 1) {
            for i in 0..n {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn invariant_under_relabeling_and_counts_automorphisms() {
        let graphs = [
            Multigraph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 0)]).unwrap(),
            Multigraph::new(5, &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 2)]).unwrap(),
            Multigraph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap(),
        ];
        for g in &graphs {
            let base = canonical_form(g);
            let mult = g.multiplicity_matrix();
            let mut brute = 0;
            for p in all_perms(g.vertex_count()) {
                let h = g.relabel(&p);
                assert_eq!(canonical_form(&h).code, base.code);
                if h.multiplicity_matrix() == mult {
                    brute += 1;
                }
            }
            assert_eq!(base.vertex_automorphisms, brute);
            assert_eq!(base.graph(g).multiplicity_matrix().len(), g.vertex_count());
        }
    }

    #[test]
    fn distinguishes_non_isomorphic() {
        let a = Multigraph::new(3, &[(0, 1), (1, 2), (1, 1)]).unwrap();
        let b = Multigraph::new(3, &[(0, 1), (1, 2), (0, 0)]).unwrap();
        assert_ne!(canonical_form(&a).code, canonical_form(&b).code);
    }
}
