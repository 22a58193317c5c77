//! Transformations of `Ω`, kernels, and synchronisation of the semigroup
//! `⟨G, f⟩` generated by a permutation group and one map.
//!
//! `G` synchronises `f` when `⟨G, f⟩` contains a constant map. The decision
//! procedure is a breadth-first search over image sets starting from
//! `im(f)`: group letters keep the size of a set, every constant word
//! contains `f`, and whatever a word produces after its first `f` is
//! reachable from `im(f)`. [`semigroup_closure`] enumerates the whole
//! semigroup instead and serves as an independent oracle.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::hash::Hash;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};
use crate::reldig::Digraph;
use crate::spectrum::{self, SpectrumReport};
use crate::text;

/// An arbitrary self-map of `{0..n-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transformation {
    images: Vec<usize>,
}

impl Transformation {
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::ZeroDegree);
        }
        if let Some(&v) = images.iter().find(|&&v| v >= n) {
            return Err(Error::PointOutOfRange { point: v, n });
        }
        Ok(Transformation { images })
    }

    pub fn identity(n: usize) -> Self {
        Transformation {
            images: (0..n).collect(),
        }
    }

    pub fn constant(n: usize, value: usize) -> Result<Self> {
        Transformation::from_images(vec![value; n])
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Transformation) -> Result<Transformation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(Transformation {
            images: self.images.iter().map(|&v| other.images[v]).collect(),
        })
    }

    pub fn rank(&self) -> usize {
        let mut seen = vec![false; self.degree()];
        self.images
            .iter()
            .filter(|&&v| !std::mem::replace(&mut seen[v], true))
            .count()
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == self.degree()
    }

    pub fn is_constant(&self) -> bool {
        self.images.iter().all(|&v| v == self.images[0])
    }

    /// Preimages of the points of `im(f)`, ordered by their least element.
    pub fn kernel(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut class_of_value = vec![usize::MAX; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for (x, &v) in self.images.iter().enumerate() {
            if class_of_value[v] == usize::MAX {
                class_of_value[v] = classes.len();
                classes.push(Vec::new());
            }
            classes[class_of_value[v]].push(x);
        }
        classes
    }

    pub fn kernel_type(&self) -> KernelType {
        KernelType::new(self.kernel().iter().map(Vec::len).collect())
    }

    /// Parses `n <N>` followed by one line of `N` images.
    pub fn parse(text: &str) -> Result<Self> {
        let (n, lines) = text::split_framed(text)?;
        let [line] = &lines[..] else {
            return Err(Error::parse(1, "expected exactly one line of images"));
        };
        let images = text::parse_points(line, n)?;
        if images.len() != n {
            return Err(Error::parse(
                line.number,
                format!("expected {n} images, found {}", images.len()),
            ));
        }
        Transformation::from_images(images)
    }

    pub fn to_text(&self) -> String {
        let row: Vec<String> = self.images.iter().map(usize::to_string).collect();
        format!("n {}\n{}\n", self.degree(), row.join(" "))
    }
}

impl From<&Permutation> for Transformation {
    fn from(p: &Permutation) -> Self {
        Transformation {
            images: p.images().to_vec(),
        }
    }
}

/// Part sizes of a kernel, non-increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct KernelType {
    parts: Vec<usize>,
}

impl KernelType {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        KernelType { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `Some(p)` when the shape is `(p, 2, 1, …, 1)` with `p ≥ 2`.
    pub fn p2_shape(&self) -> Option<usize> {
        match self.parts[..] {
            [p, 2, ref rest @ ..] if p >= 2 && rest.iter().all(|&r| r == 1) => Some(p),
            _ => None,
        }
    }
}

impl fmt::Display for KernelType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// One letter of a word over the generators of `G` and `f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Letter {
    /// The generator at this index (0-based) of the group.
    Generator(usize),
    Map,
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Generator(i) => write!(f, "g{}", i + 1),
            Letter::Map => f.write_str("f"),
        }
    }
}

impl Serialize for Letter {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SyncResult {
    pub synchronises: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<Letter>>,
    pub reached_images: usize,
}

/// Applies `word` left to right to `point`.
pub fn apply_word(group: &PermGroup, f: &Transformation, word: &[Letter], point: usize) -> usize {
    word.iter().fold(point, |x, letter| match *letter {
        Letter::Generator(i) => group.generators()[i].image(x),
        Letter::Map => f.image(x),
    })
}

fn check_degrees(group: &PermGroup, f: &Transformation) -> Result<()> {
    if group.degree() != f.degree() {
        return Err(Error::DegreeMismatch(group.degree(), f.degree()));
    }
    Ok(())
}

trait PointSet: Clone + Eq + Hash {
    fn from_points(n: usize, points: impl Iterator<Item = usize>) -> Self;
    fn image(&self, map: &[usize]) -> Self;
    fn is_singleton(&self) -> bool;
    /// Index into a dense visited table, when the universe is small enough.
    fn dense_index(&self, n: usize) -> Option<usize>;
}

const DENSE_LIMIT: usize = 16;

impl PointSet for u64 {
    fn from_points(_: usize, points: impl Iterator<Item = usize>) -> Self {
        points.fold(0, |acc, p| acc | 1 << p)
    }

    #[inline]
    fn image(&self, map: &[usize]) -> Self {
        let mut s = *self;
        let mut out = 0;
        while s != 0 {
            let b = s.trailing_zeros() as usize;
            s &= s - 1;
            out |= 1 << map[b];
        }
        out
    }

    #[inline]
    fn is_singleton(&self) -> bool {
        self.count_ones() == 1
    }

    #[inline]
    fn dense_index(&self, n: usize) -> Option<usize> {
        (n <= DENSE_LIMIT).then_some(*self as usize)
    }
}

impl PointSet for Vec<u64> {
    fn from_points(n: usize, points: impl Iterator<Item = usize>) -> Self {
        let mut out = vec![0; n.div_ceil(64)];
        for p in points {
            out[p / 64] |= 1 << (p % 64);
        }
        out
    }

    fn image(&self, map: &[usize]) -> Self {
        Self::from_points(map.len(), crate::reldig::bits(self).map(|b| map[b]))
    }

    fn is_singleton(&self) -> bool {
        self.iter().map(|w| w.count_ones()).sum::<u32>() == 1
    }

    fn dense_index(&self, _: usize) -> Option<usize> {
        None
    }
}

enum Visited<S> {
    Dense(Vec<u32>),
    Sparse(HashMap<S, u32>),
}

impl<S: PointSet> Visited<S> {
    fn new(n: usize) -> Self {
        if n <= DENSE_LIMIT {
            Visited::Dense(vec![0; 1 << n])
        } else {
            Visited::Sparse(HashMap::new())
        }
    }

    /// Records `set` as node `id`; false if already present.
    #[inline]
    fn insert(&mut self, n: usize, set: &S, id: u32) -> bool {
        match self {
            Visited::Dense(t) => {
                let slot = &mut t[set.dense_index(n).expect("dense universe")];
                if *slot != 0 {
                    return false;
                }
                *slot = id + 1;
                true
            }
            Visited::Sparse(m) => {
                if m.contains_key(set) {
                    return false;
                }
                m.insert(set.clone(), id);
                true
            }
        }
    }
}

/// BFS over image sets; returns the letters leading from `im(f)` to a
/// singleton (if any) and the number of sets reached.
fn image_bfs<S: PointSet>(letters: &[(Letter, &[usize])], n: usize, start: S) -> (Option<Vec<Letter>>, usize) {
    let mut nodes: Vec<(S, u32, Letter)> = vec![(start.clone(), u32::MAX, Letter::Map)];
    let mut visited = Visited::new(n);
    visited.insert(n, &start, 0);
    let mut found = start.is_singleton().then_some(0u32);
    let mut head = 0;
    while found.is_none() && head < nodes.len() {
        let set = nodes[head].0.clone();
        for &(letter, map) in letters {
            let next = set.image(map);
            let id = nodes.len() as u32;
            if visited.insert(n, &next, id) {
                let single = next.is_singleton();
                nodes.push((next, head as u32, letter));
                if single {
                    found = Some(id);
                    break;
                }
            }
        }
        head += 1;
    }
    let reached = nodes.len();
    let path = found.map(|mut id| {
        let mut rev = Vec::new();
        while id != 0 {
            let (_, parent, letter) = &nodes[id as usize];
            rev.push(*letter);
            id = *parent;
        }
        let mut word = vec![Letter::Map];
        word.extend(rev.into_iter().rev());
        word
    });
    (path, reached)
}

/// Decides whether `⟨G, f⟩` contains a constant map. Any witness returned
/// has been checked on every point.
pub fn synchronises(group: &PermGroup, f: &Transformation) -> Result<SyncResult> {
    check_degrees(group, f)?;
    let n = f.degree();
    let mut letters: Vec<(Letter, &[usize])> = group
        .generators()
        .iter()
        .enumerate()
        .map(|(i, g)| (Letter::Generator(i), g.images()))
        .collect();
    letters.push((Letter::Map, f.images()));

    let image = f.images().iter().copied();
    let (witness, reached) = if n <= 64 {
        image_bfs(&letters, n, u64::from_points(n, image))
    } else {
        image_bfs(&letters, n, Vec::<u64>::from_points(n, image))
    };
    if let Some(word) = &witness {
        let target = apply_word(group, f, word, 0);
        assert!(
            (1..n).all(|x| apply_word(group, f, word, x) == target),
            "witness is not constant"
        );
    }
    Ok(SyncResult {
        synchronises: witness.is_some(),
        witness,
        reached_images: reached,
    })
}

fn pair_index(n: usize, a: usize, b: usize) -> usize {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    a * (2 * n - a - 1) / 2 + (b - a - 1)
}

/// The graph of pairs `{v, w}` that no element of `⟨G, f⟩` maps to a
/// common point. Symmetric and loopless.
pub fn non_collapsible_graph(group: &PermGroup, f: &Transformation) -> Result<Digraph> {
    check_degrees(group, f)?;
    let n = f.degree();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    let mut predecessors: Vec<Vec<u32>> = vec![Vec::new(); pairs.len()];
    let mut collapsible = vec![false; pairs.len()];
    let mut queue = VecDeque::new();
    for (idx, &(a, b)) in pairs.iter().enumerate() {
        for g in group.generators() {
            predecessors[pair_index(n, g.image(a), g.image(b))].push(idx as u32);
        }
        let (fa, fb) = (f.image(a), f.image(b));
        if fa == fb {
            collapsible[idx] = true;
            queue.push_back(idx);
        } else {
            predecessors[pair_index(n, fa, fb)].push(idx as u32);
        }
    }
    while let Some(q) = queue.pop_front() {
        for &p in &predecessors[q] {
            let p = p as usize;
            if !std::mem::replace(&mut collapsible[p], true) {
                queue.push_back(p);
            }
        }
    }
    Digraph::from_arcs(
        n,
        pairs
            .iter()
            .zip(&collapsible)
            .filter(|(_, &c)| !c)
            .flat_map(|(&(a, b), _)| [(a, b), (b, a)]),
    )
}

/// Proof objects gathered when a primitive group fails to synchronise a
/// map of kernel type `(p, 2, 1, …, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KernelDiagnostic {
    pub graph_dg: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spectrum: Option<SpectrumReport>,
    /// Kernel class of size 2.
    pub part_a: Vec<usize>,
    /// Kernel class of size `p`.
    pub part_b: Vec<usize>,
    /// Subgraph induced on `A ∪ B`, vertices in sorted order.
    pub bipartite_dg: String,
    /// Degrees in that subgraph, aligned with the sorted vertex list.
    pub degrees: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "UPPERCASE")]
pub enum KernelVerdict {
    Pass { witness: Vec<Letter> },
    Skip { reason: String },
    Fail { diagnostic: Box<KernelDiagnostic> },
}

impl KernelVerdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, KernelVerdict::Pass { .. })
    }
}

/// Collects the non-collapsible graph and the bipartite subgraph on the two
/// distinguished kernel classes of `f`.
pub fn p2_kernel_diagnostic(group: &PermGroup, f: &Transformation) -> Result<KernelDiagnostic> {
    check_degrees(group, f)?;
    let p = f
        .kernel_type()
        .p2_shape()
        .ok_or_else(|| Error::InvalidParameter("kernel type is not (p,2,1,…,1)".into()))?;
    let kernel = f.kernel();
    let part_b = kernel.iter().find(|c| c.len() == p).cloned().expect("shape has a p-class");
    let part_a = kernel
        .iter()
        .find(|c| c.len() == 2 && **c != part_b)
        .cloned()
        .expect("shape has a 2-class");
    let graph = non_collapsible_graph(group, f)?;
    let spectrum = spectrum::spectrum(&graph).ok();
    let mut union: Vec<usize> = part_a.iter().chain(&part_b).copied().collect();
    union.sort_unstable();
    let bipartite = graph.induced_subgraph(&union)?;
    let degrees = (0..bipartite.order()).map(|v| bipartite.out_degree(v)).collect();
    Ok(KernelDiagnostic {
        graph_dg: graph.to_dg(),
        spectrum,
        part_a,
        part_b,
        bipartite_dg: bipartite.to_dg(),
        degrees,
    })
}

/// Primitive `G` and `f` of kernel type `(p, 2, 1, …, 1)`, `p ≥ 2`: `G`
/// must synchronise `f`. Inputs outside that hypothesis are skipped.
pub fn check_p2_kernel(group: &PermGroup, f: &Transformation) -> Result<KernelVerdict> {
    check_degrees(group, f)?;
    if !group.is_primitive() {
        return Ok(KernelVerdict::Skip {
            reason: "group is not primitive".into(),
        });
    }
    let kt = f.kernel_type();
    if kt.p2_shape().is_none() {
        return Ok(KernelVerdict::Skip {
            reason: format!("kernel type {kt} is not of the form (p,2,1,…,1)"),
        });
    }
    let result = synchronises(group, f)?;
    Ok(match result.witness {
        Some(witness) => KernelVerdict::Pass { witness },
        None => KernelVerdict::Fail {
            diagnostic: Box::new(p2_kernel_diagnostic(group, f)?),
        },
    })
}

/// Largest degree accepted by [`semigroup_closure`].
pub const CLOSURE_MAX_DEGREE: usize = 7;

/// Dense enumeration of a transformation semigroup of degree ≤ 7; elements
/// are encoded base `n`. `visit` may stop the walk early by returning false.
fn walk_closure(gens: &[Transformation], mut visit: impl FnMut(&[u8]) -> bool) -> Result<()> {
    let Some(first) = gens.first() else {
        return Ok(());
    };
    let n = first.degree();
    if let Some(g) = gens.iter().find(|g| g.degree() != n) {
        return Err(Error::DegreeMismatch(n, g.degree()));
    }
    if n > CLOSURE_MAX_DEGREE {
        return Err(Error::ClosureTooLarge(n));
    }
    let encode = |t: &[u8]| t.iter().fold(0usize, |acc, &v| acc * n + v as usize);
    let tables: Vec<Vec<u8>> = gens
        .iter()
        .map(|g| g.images().iter().map(|&v| v as u8).collect())
        .collect();
    let mut seen = vec![false; n.pow(n as u32)];
    let mut queue: VecDeque<Vec<u8>> = VecDeque::new();
    for t in &tables {
        if !std::mem::replace(&mut seen[encode(t)], true) {
            if !visit(t) {
                return Ok(());
            }
            queue.push_back(t.clone());
        }
    }
    let mut next = vec![0u8; n];
    while let Some(x) = queue.pop_front() {
        for g in &tables {
            for (slot, &v) in next.iter_mut().zip(&x) {
                *slot = g[v as usize];
            }
            if !std::mem::replace(&mut seen[encode(&next)], true) {
                if !visit(&next) {
                    return Ok(());
                }
                queue.push_back(next.clone());
            }
        }
    }
    Ok(())
}

/// The semigroup generated by `gens` (degree ≤ 7), as a set.
pub fn semigroup_closure(gens: &[Transformation]) -> Result<BTreeSet<Transformation>> {
    let mut out = BTreeSet::new();
    walk_closure(gens, |t| {
        out.insert(Transformation {
            images: t.iter().map(|&v| v as usize).collect(),
        });
        true
    })?;
    Ok(out)
}

/// Whether the semigroup generated by `gens` contains a constant map,
/// decided by enumerating it (stopping at the first constant).
pub fn closure_contains_constant(gens: &[Transformation]) -> Result<bool> {
    let mut found = false;
    walk_closure(gens, |t| {
        found = t.iter().all(|&v| v == t[0]);
        !found
    })?;
    Ok(found)
}

/// Every non-invertible map is synchronised. Exhaustive, so limited to `n ≤ 5`.
pub fn is_synchronising(group: &PermGroup) -> Result<bool> {
    let n = group.degree();
    if n > 5 {
        return Err(Error::InvalidParameter(format!(
            "exhaustive synchronisation test limited to n ≤ 5, got {n}"
        )));
    }
    let mut images = vec![0usize; n];
    loop {
        let f = Transformation::from_images(images.clone())?;
        if !f.is_invertible() && !synchronises(group, &f)?.synchronises {
            return Ok(false);
        }
        let Some(k) = images.iter().rposition(|&v| v + 1 < n) else {
            return Ok(true);
        };
        images[k] += 1;
        images[k + 1..].iter_mut().for_each(|v| *v = 0);
    }
}

/// Set partitions of `{0..n-1}` whose part sizes are exactly `kt`. Each
/// partition lists its parts by least element.
pub fn partitions_with_type(n: usize, kt: &KernelType) -> Vec<Vec<Vec<usize>>> {
    fn rec(
        free: &mut Vec<usize>,
        sizes: &mut Vec<usize>,
        current: &mut Vec<Vec<usize>>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        if free.is_empty() {
            if sizes.is_empty() {
                out.push(current.clone());
            }
            return;
        }
        let lead = free.remove(0);
        let mut distinct = sizes.clone();
        distinct.dedup();
        for s in distinct {
            let pos = sizes.iter().position(|&x| x == s).unwrap();
            sizes.remove(pos);
            for rest in combinations(free, s - 1) {
                let mut part = vec![lead];
                part.extend(&rest);
                free.retain(|x| !rest.contains(x));
                current.push(part);
                rec(free, sizes, current, out);
                current.pop();
                free.extend(&rest);
                free.sort_unstable();
            }
            sizes.insert(pos, s);
        }
        free.insert(0, lead);
    }
    if kt.total() != n {
        return Vec::new();
    }
    let mut out = Vec::new();
    rec(
        &mut (0..n).collect(),
        &mut kt.parts().to_vec(),
        &mut Vec::new(),
        &mut out,
    );
    out
}

fn combinations(pool: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if pool.len() < k {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (i, &x) in pool.iter().enumerate() {
        for mut tail in combinations(&pool[i + 1..], k - 1) {
            tail.insert(0, x);
            out.push(tail);
        }
    }
    out
}

/// Calls `visit` on every transformation of degree `n` whose kernel is
/// `partition` (all injective assignments of image points to parts).
pub fn for_each_with_kernel(n: usize, partition: &[Vec<usize>], mut visit: impl FnMut(&Transformation)) {
    let k = partition.len();
    let mut chosen = vec![0usize; k];
    let mut used = vec![false; n];
    let mut f = Transformation {
        images: vec![0; n],
    };
    fn rec(
        depth: usize,
        partition: &[Vec<usize>],
        chosen: &mut [usize],
        used: &mut [bool],
        f: &mut Transformation,
        visit: &mut dyn FnMut(&Transformation),
    ) {
        if depth == partition.len() {
            for (part, &v) in partition.iter().zip(chosen.iter()) {
                for &x in part {
                    f.images[x] = v;
                }
            }
            visit(f);
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                chosen[depth] = v;
                rec(depth + 1, partition, chosen, used, f, visit);
                used[v] = false;
            }
        }
    }
    rec(0, partition, &mut chosen, &mut used, &mut f, &mut visit);
}

/// Calls `visit` on every transformation of degree `n` with kernel type `kt`.
pub fn for_each_with_kernel_type(n: usize, kt: &KernelType, mut visit: impl FnMut(&Transformation)) {
    for partition in partitions_with_type(n, kt) {
        for_each_with_kernel(n, &partition, &mut visit);
    }
}
