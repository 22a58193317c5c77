//! Individualization–refinement backtracking shared by the automorphism
//! and isomorphism searches.
//!
//! Partitions are ordered lists of cells. Refinement splits every cell by
//! the signature "number of out-neighbours in each cell, number of
//! in-neighbours in each cell" until the cell count stops growing, placing
//! sub-cells in signature order so the result is label-invariant. The
//! target cell is the first smallest non-singleton cell.

use std::collections::BTreeMap;

use crate::perm::{Permutation, UnionFind};
use crate::reldig::Digraph;

type Cells = Vec<Vec<usize>>;

struct Refiner<'a> {
    graph: &'a Digraph,
    transpose: Digraph,
}

impl<'a> Refiner<'a> {
    fn new(graph: &'a Digraph) -> Self {
        Refiner {
            graph,
            transpose: graph.inverse_relation(),
        }
    }

    /// Cells keyed by (loop, out-degree, in-degree), in key order.
    fn initial(&self) -> (Vec<(bool, usize, usize)>, Cells) {
        let n = self.graph.order();
        let mut groups: BTreeMap<(bool, usize, usize), Vec<usize>> = BTreeMap::new();
        for v in 0..n {
            let key = (
                self.graph.has_arc(v, v),
                self.graph.out_degree(v),
                self.transpose.out_degree(v),
            );
            groups.entry(key).or_default().push(v);
        }
        let keys = groups.keys().copied().collect();
        (keys, self.refine(groups.into_values().collect()))
    }

    fn refine(&self, mut cells: Cells) -> Cells {
        let n = self.graph.order();
        let mut cell_of = vec![0usize; n];
        loop {
            let k = cells.len();
            if k == n {
                return cells;
            }
            for (c, cell) in cells.iter().enumerate() {
                for &v in cell {
                    cell_of[v] = c;
                }
            }
            let mut next = Vec::with_capacity(k);
            for cell in &cells {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut signed: Vec<(Vec<u32>, usize)> = cell
                    .iter()
                    .map(|&v| {
                        let mut sig = vec![0u32; 2 * k];
                        for w in self.graph.neighbours(v) {
                            sig[cell_of[w]] += 1;
                        }
                        for w in self.transpose.neighbours(v) {
                            sig[k + cell_of[w]] += 1;
                        }
                        (sig, v)
                    })
                    .collect();
                signed.sort_unstable();
                let mut start = 0;
                for i in 1..=signed.len() {
                    if i == signed.len() || signed[i].0 != signed[start].0 {
                        next.push(signed[start..i].iter().map(|(_, v)| *v).collect());
                        start = i;
                    }
                }
            }
            if next.len() == k {
                return next;
            }
            cells = next;
        }
    }
}

fn target_cell(cells: &Cells) -> Option<usize> {
    cells
        .iter()
        .enumerate()
        .filter(|(_, c)| c.len() > 1)
        .min_by_key(|(i, c)| (c.len(), *i))
        .map(|(i, _)| i)
}

fn individualize(cells: &Cells, c: usize, v: usize) -> Cells {
    let mut out = Vec::with_capacity(cells.len() + 1);
    out.extend_from_slice(&cells[..c]);
    out.push(vec![v]);
    out.push(cells[c].iter().copied().filter(|&w| w != v).collect());
    out.extend_from_slice(&cells[c + 1..]);
    out
}

fn shape(cells: &Cells) -> Vec<usize> {
    cells.iter().map(Vec::len).collect()
}

/// The leftmost root-to-leaf path of the source graph's search tree.
struct FirstPath {
    nodes: Vec<Cells>,
    shapes: Vec<Vec<usize>>,
    choices: Vec<(usize, usize)>,
    leaf: Vec<usize>,
}

impl FirstPath {
    fn new(refiner: &Refiner<'_>, root: Cells) -> Self {
        let mut nodes = vec![root];
        let mut choices = Vec::new();
        while let Some(c) = target_cell(nodes.last().unwrap()) {
            let node = nodes.last().unwrap();
            let v = node[c][0];
            choices.push((c, v));
            let child = refiner.refine(individualize(node, c, v));
            nodes.push(child);
        }
        let leaf = nodes.last().unwrap().iter().map(|c| c[0]).collect();
        let shapes = nodes.iter().map(shape).collect();
        FirstPath {
            nodes,
            shapes,
            choices,
            leaf,
        }
    }
}

struct Matcher<'a> {
    source: &'a Digraph,
    target: &'a Refiner<'a>,
    path: &'a FirstPath,
}

impl Matcher<'_> {
    /// Depth-first search below `node` (at `depth`) for a leaf whose induced
    /// map is an isomorphism from source to target.
    fn search(&self, node: Cells, depth: usize) -> Option<Permutation> {
        if self.path.shapes.get(depth).is_none_or(|s| *s != shape(&node)) {
            return None;
        }
        match target_cell(&node) {
            None => {
                let mut images = vec![0; node.len()];
                for (i, cell) in node.iter().enumerate() {
                    images[self.path.leaf[i]] = cell[0];
                }
                let map = Permutation::from_images(images).expect("leaf is a bijection");
                is_isomorphism(self.source, self.target.graph, &map).then_some(map)
            }
            Some(c) => node[c].iter().find_map(|&v| {
                self.search(self.target.refine(individualize(&node, c, v)), depth + 1)
            }),
        }
    }
}

fn is_isomorphism(a: &Digraph, b: &Digraph, map: &Permutation) -> bool {
    a.arc_count() == b.arc_count()
        && a.arcs().all(|(u, v)| b.has_arc(map.image(u), map.image(v)))
}

pub(crate) fn find_isomorphism(a: &Digraph, b: &Digraph) -> Option<Permutation> {
    if a.order() != b.order() || a.arc_count() != b.arc_count() {
        return None;
    }
    let ra = Refiner::new(a);
    let rb = Refiner::new(b);
    let (keys_a, root_a) = ra.initial();
    let (keys_b, root_b) = rb.initial();
    if keys_a != keys_b {
        return None;
    }
    let path = FirstPath::new(&ra, root_a);
    let witness = Matcher {
        source: a,
        target: &rb,
        path: &path,
    }
    .search(root_b, 0)?;
    assert!(is_isomorphism(a, b, &witness), "witness failed verification");
    Some(witness)
}

/// Generators of the automorphism group. For each level of the first path,
/// deepest first, every vertex of the target cell not already in the orbit
/// of the first choice (under the generators found so far, all of which fix
/// the earlier choices) is tried once.
pub(crate) fn automorphism_generators(g: &Digraph) -> Vec<Permutation> {
    let refiner = Refiner::new(g);
    let (_, root) = refiner.initial();
    let path = FirstPath::new(&refiner, root);
    let matcher = Matcher {
        source: g,
        target: &refiner,
        path: &path,
    };
    let n = g.order();
    let mut gens: Vec<Permutation> = Vec::new();
    for level in (0..path.choices.len()).rev() {
        let (c, v0) = path.choices[level];
        let node = &path.nodes[level];
        for &w in &node[c] {
            if w == v0 {
                continue;
            }
            let mut uf = UnionFind::new(n);
            for s in &gens {
                for x in 0..n {
                    uf.union(x, s.image(x));
                }
            }
            if uf.find(v0) == uf.find(w) {
                continue;
            }
            let child = refiner.refine(individualize(node, c, w));
            if let Some(s) = matcher.search(child, level + 1) {
                debug_assert_eq!(s.image(v0), w);
                gens.push(s);
            }
        }
    }
    gens
}
