//! k-core decomposition by bucket peeling.

use crate::graph::{EdgeId, Graph};

/// Per-vertex and per-edge core numbers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreDecomposition {
    pub core: Vec<usize>,
    /// `min(core[u], core[v])` for each edge.
    pub edge_core: Vec<usize>,
    pub max_core: usize,
}

impl CoreDecomposition {
    pub fn edge(&self, e: EdgeId) -> usize {
        self.edge_core[e]
    }
}

/// Core numbers via the linear-time bin-sort peeling of Batagelj and Zaversnik.
pub fn kcore_numbers(g: &Graph) -> CoreDecomposition {
    let n = g.n();
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v as u32)).collect();
    let max_deg = degree.iter().copied().max().unwrap_or(0);

    // bin[d] = start of the block of vertices with current degree d in `order`.
    let mut bin = vec![0usize; max_deg + 2];
    for &d in &degree {
        bin[d] += 1;
    }
    let mut start = 0;
    for b in bin.iter_mut() {
        let count = *b;
        *b = start;
        start += count;
    }
    let mut order = vec![0usize; n];
    let mut pos = vec![0usize; n];
    for v in 0..n {
        pos[v] = bin[degree[v]];
        order[pos[v]] = v;
        bin[degree[v]] += 1;
    }
    for d in (1..=max_deg + 1).rev() {
        bin[d] = bin[d - 1];
    }
    bin[0] = 0;

    for i in 0..n {
        let v = order[i];
        for &w in g.neighbors(v as u32) {
            let w = w as usize;
            if degree[w] > degree[v] {
                let dw = degree[w];
                let pw = pos[w];
                let first = bin[dw];
                let u = order[first];
                if u != w {
                    order.swap(first, pw);
                    pos[u] = pw;
                    pos[w] = first;
                }
                bin[dw] += 1;
                degree[w] -= 1;
            }
        }
    }

    let core = degree;
    let edge_core = g
        .edges()
        .iter()
        .map(|&(a, b)| core[a as usize].min(core[b as usize]))
        .collect();
    let max_core = core.iter().copied().max().unwrap_or(0);
    CoreDecomposition {
        core,
        edge_core,
        max_core,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graph() {
        let k4 = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let c = kcore_numbers(&k4);
        assert_eq!(c.core, vec![3, 3, 3, 3]);
        assert_eq!(c.max_core, 3);
    }

    #[test]
    fn path_is_one_core() {
        let p = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(kcore_numbers(&p).core, vec![1, 1, 1, 1]);
    }

    #[test]
    fn triangle_with_pendant() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (0, 2), (0, 3)]).unwrap();
        let c = kcore_numbers(&g);
        assert_eq!(c.core, vec![2, 2, 2, 1]);
        assert_eq!(c.edge(g.edge_id(0, 3).unwrap()), 1);
        assert_eq!(c.edge(g.edge_id(1, 2).unwrap()), 2);
    }

    #[test]
    fn isolated_vertex_has_core_zero() {
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        assert_eq!(kcore_numbers(&g).core, vec![1, 1, 0]);
    }
}
