//! Digraphs as binary relations on `{0..n-1}`.
//!
//! Every digraph is stored as `n` adjacency rows packed into `u64` words;
//! row `v` is the out-neighbourhood of `v`. Loops are allowed and arcs carry
//! no multiplicity. Relation algebra (inverse, composition, closure) works
//! directly on the packed rows.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::search;
use crate::text;

/// Largest supported order.
pub const MAX_ORDER: usize = 4096;

pub fn is_prime(p: usize) -> bool {
    p >= 2 && (2..).take_while(|k| k * k <= p).all(|k| !p.is_multiple_of(k))
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

/// Result of [`Digraph::valency_profile`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ValencyProfile {
    pub is_regular: bool,
    /// Common out-valency, present only when regular.
    pub d: Option<usize>,
}

/// Iterator over the set bits of a packed row.
pub struct Bits<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Bits<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let tz = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some((self.index - 1) * 64 + tz);
            }
            if self.index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.index];
            self.index += 1;
        }
    }
}

pub(crate) fn bits(words: &[u64]) -> Bits<'_> {
    Bits {
        words,
        index: 0,
        current: 0,
    }
}

impl Digraph {
    /// The empty relation on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDegree);
        }
        if n > MAX_ORDER {
            return Err(Error::TooLarge(n));
        }
        let words = n.div_ceil(64);
        Ok(Digraph {
            n,
            words,
            bits: vec![0; n * words],
        })
    }

    pub fn from_arcs(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Digraph::empty(n)?;
        for (u, v) in arcs {
            for p in [u, v] {
                if p >= n {
                    return Err(Error::PointOutOfRange { point: p, n });
                }
            }
            g.set(u, v);
        }
        Ok(g)
    }

    pub fn from_fn(n: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        let mut g = Digraph::empty(n)?;
        for u in 0..n {
            for v in 0..n {
                if adjacent(u, v) {
                    g.set(u, v);
                }
            }
        }
        Ok(g)
    }

    /// Builds a digraph on at most 8 vertices from an `n²`-bit code:
    /// bit `u·n + v` is the arc `(u, v)`.
    pub fn from_code(n: usize, code: u64) -> Result<Self> {
        if n > 8 {
            return Err(Error::TooLarge(n));
        }
        Digraph::from_fn(n, |u, v| code >> (u * n + v) & 1 == 1)
    }

    #[inline]
    fn set(&mut self, u: usize, v: usize) {
        self.bits[u * self.words + v / 64] |= 1 << (v % 64);
    }

    fn mask_tail(&mut self) {
        let rem = self.n % 64;
        if rem != 0 {
            let mask = (1u64 << rem) - 1;
            for u in 0..self.n {
                self.bits[u * self.words + self.words - 1] &= mask;
            }
        }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    /// Packed out-neighbourhood of `u`.
    #[inline]
    pub fn row(&self, u: usize) -> &[u64] {
        &self.bits[u * self.words..(u + 1) * self.words]
    }

    pub fn neighbours(&self, u: usize) -> Bits<'_> {
        bits(self.row(u))
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for u in 0..self.n {
            for v in self.neighbours(u) {
                deg[v] += 1;
            }
        }
        deg
    }

    pub fn arc_count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Arcs in lexicographic order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.neighbours(u).map(move |v| (u, v)))
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.arc_count() == self.n * self.n
    }

    pub fn loop_count(&self) -> usize {
        (0..self.n).filter(|&v| self.has_arc(v, v)).count()
    }

    /// `Ω*`, the diagonal relation.
    pub fn diagonal(n: usize) -> Result<Self> {
        Digraph::from_fn(n, |u, v| u == v)
    }

    /// `(Ω×Ω) ∖ Ω*`.
    pub fn complete(n: usize) -> Result<Self> {
        Digraph::from_fn(n, |u, v| u != v)
    }

    /// `Ω×Ω`.
    pub fn full(n: usize) -> Result<Self> {
        Digraph::from_fn(n, |_, _| true)
    }

    pub fn inverse_relation(&self) -> Digraph {
        let mut t = Digraph::empty(self.n).expect("same order");
        for (u, v) in self.arcs() {
            t.set(v, u);
        }
        t
    }

    fn check_order(&self, other: &Digraph) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DegreeMismatch(self.n, other.n));
        }
        Ok(())
    }

    /// `self ∘ other`: `(α, β)` such that `α → γ` in `self` and `γ → β` in `other`.
    pub fn compose_relations(&self, other: &Digraph) -> Result<Digraph> {
        self.check_order(other)?;
        let mut out = Digraph::empty(self.n)?;
        for u in 0..self.n {
            let base = u * self.words;
            for g in self.neighbours(u) {
                for (k, w) in other.row(g).iter().enumerate() {
                    out.bits[base + k] |= w;
                }
            }
        }
        Ok(out)
    }

    /// Smallest transitive relation containing `self`.
    pub fn transitive_closure(&self) -> Digraph {
        let mut c = self.clone();
        let w = self.words;
        for k in 0..self.n {
            let row_k: Vec<u64> = c.row(k).to_vec();
            for i in 0..self.n {
                if c.has_arc(i, k) {
                    for (j, x) in row_k.iter().enumerate() {
                        c.bits[i * w + j] |= x;
                    }
                }
            }
        }
        c
    }

    fn zip_with(&self, other: &Digraph, f: impl Fn(u64, u64) -> u64) -> Result<Digraph> {
        self.check_order(other)?;
        let mut out = self.clone();
        for (a, b) in out.bits.iter_mut().zip(&other.bits) {
            *a = f(*a, *b);
        }
        Ok(out)
    }

    pub fn union(&self, other: &Digraph) -> Result<Digraph> {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Digraph) -> Result<Digraph> {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn complement(&self) -> Digraph {
        let mut out = self.clone();
        out.bits.iter_mut().for_each(|w| *w = !*w);
        out.mask_tail();
        out
    }

    pub fn is_subset_of(&self, other: &Digraph) -> bool {
        self.n == other.n && self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    pub fn is_symmetric(&self) -> bool {
        self.arcs().all(|(u, v)| self.has_arc(v, u))
    }

    pub fn is_transitive_relation(&self) -> bool {
        self.compose_relations(self)
            .map(|sq| sq.is_subset_of(self))
            .unwrap_or(false)
    }

    /// Subgraph induced on `vertices`, relabelled `0..|Ψ|` in sorted order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Digraph> {
        if vertices.is_empty() {
            return Err(Error::EmptyVertexSet);
        }
        let mut vs = vertices.to_vec();
        vs.sort_unstable();
        vs.dedup();
        if let Some(&bad) = vs.iter().find(|&&v| v >= self.n) {
            return Err(Error::PointOutOfRange {
                point: bad,
                n: self.n,
            });
        }
        Digraph::from_fn(vs.len(), |a, b| self.has_arc(vs[a], vs[b]))
    }

    /// `self ∪ Ω*`.
    pub fn with_loops(&self) -> Digraph {
        let mut out = self.clone();
        for v in 0..self.n {
            out.set(v, v);
        }
        out
    }

    pub fn valency_profile(&self) -> ValencyProfile {
        let d0 = self.out_degree(0);
        let is_regular = (1..self.n).all(|u| self.out_degree(u) == d0);
        ValencyProfile {
            is_regular,
            d: is_regular.then_some(d0),
        }
    }

    /// Image of the digraph under the relabelling `v ↦ g(v)`.
    pub fn permuted(&self, g: &Permutation) -> Result<Digraph> {
        if g.degree() != self.n {
            return Err(Error::DegreeMismatch(self.n, g.degree()));
        }
        Digraph::from_arcs(self.n, self.arcs().map(|(u, v)| (g.image(u), g.image(v))))
    }

    /// Whether `(u,v) ∈ Γ ⇔ (g(u),g(v)) ∈ Γ` for all pairs.
    pub fn is_automorphism(&self, g: &Permutation) -> bool {
        g.degree() == self.n && self.arcs().all(|(u, v)| self.has_arc(g.image(u), g.image(v)))
    }

    /// Cayley digraph on `Z_n`: `u → v` iff `v − u (mod n)` lies in `connection`.
    pub fn circulant(n: usize, connection: &[usize]) -> Result<Self> {
        let mut mask = vec![false; n];
        for &s in connection {
            if s >= n {
                return Err(Error::PointOutOfRange { point: s, n });
            }
            mask[s] = true;
        }
        Digraph::from_fn(n, |u, v| mask[(v + n - u) % n])
    }

    /// `Δ_{p,x,d}`: the circulant on `Z_p` with connection set `{x+1, …, x+d}`.
    pub fn delta_circulant(p: usize, x: usize, d: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if x >= p {
            return Err(Error::InvalidParameter(format!("residue {x} not reduced mod {p}")));
        }
        if d > p {
            return Err(Error::InvalidParameter(format!("d = {d} exceeds p = {p}")));
        }
        let connection: Vec<usize> = (1..=d).map(|k| (x + k) % p).collect();
        Digraph::circulant(p, &connection)
    }

    /// Kneser graph: `k`-subsets of `{0..m-1}` in lexicographic order,
    /// adjacent when disjoint.
    pub fn kneser(m: usize, k: usize, loops: bool) -> Result<Self> {
        if k == 0 || 2 * k > m || m > 63 {
            return Err(Error::InvalidParameter(format!(
                "kneser needs 1 ≤ k and 2k ≤ m ≤ 63, got m={m} k={k}"
            )));
        }
        let subsets = k_subsets(m, k);
        if subsets.len() > MAX_ORDER {
            return Err(Error::TooLarge(subsets.len()));
        }
        let g = Digraph::from_fn(subsets.len(), |a, b| subsets[a] & subsets[b] == 0)?;
        Ok(if loops { g.with_loops() } else { g })
    }

    /// The Petersen graph, `kneser(5, 2, false)`.
    pub fn petersen() -> Self {
        Digraph::kneser(5, 2, false).expect("valid parameters")
    }

    /// Clebsch graph, the folded 5-cube: vertices are 4-bit words, adjacent
    /// when they differ in exactly one coordinate or in all four.
    pub fn clebsch(loops: bool) -> Self {
        let g = Digraph::from_fn(16, |u, v| matches!((u ^ v).count_ones(), 1 | 4))
            .expect("order 16");
        if loops {
            g.with_loops()
        } else {
            g
        }
    }

    /// `K4 □ K4`: vertices `(a, b) ↦ 4a + b`, adjacent when they agree in
    /// exactly one coordinate. Loopless.
    pub fn hamming_k4() -> Self {
        Digraph::from_fn(16, |u, v| (u / 4 == v / 4) != (u % 4 == v % 4)).expect("order 16")
    }

    /// Parses the `.dg` format, also returning the number of duplicate arcs seen.
    pub fn parse_dg(text: &str) -> Result<(Digraph, usize)> {
        let (n, lines) = text::split_framed(text)?;
        if n == 0 || n > MAX_ORDER {
            return Err(Error::parse(1, format!("order {n} outside 1..={MAX_ORDER}")));
        }
        let mut g = Digraph::empty(n)?;
        let mut duplicates = 0;
        for line in &lines {
            let pts = text::parse_points(line, n)?;
            let [u, v] = pts[..] else {
                return Err(Error::parse(line.number, "expected `u v`"));
            };
            if g.has_arc(u, v) {
                duplicates += 1;
            }
            g.set(u, v);
        }
        Ok((g, duplicates))
    }

    /// Canonical `.dg` text: header then arcs in lexicographic order.
    pub fn to_dg(&self) -> String {
        let mut out = format!("n {}\n", self.n);
        for (u, v) in self.arcs() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

impl FromStr for Digraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Digraph::parse_dg(s).map(|(g, _)| g)
    }
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Digraph(n={}, arcs={:?})", self.n, self.arcs().collect::<Vec<_>>())
    }
}

fn k_subsets(m: usize, k: usize) -> Vec<u64> {
    fn rec(start: usize, m: usize, k: usize, acc: u64, out: &mut Vec<u64>) {
        if k == 0 {
            out.push(acc);
            return;
        }
        for i in start..=m - k {
            rec(i + 1, m, k - 1, acc | 1 << i, out);
        }
    }
    let mut out = Vec::new();
    rec(0, m, k, 0, &mut out);
    out
}

/// A relabelling carrying `a` onto `b`, if one exists. The witness is
/// checked arc by arc before it is returned.
pub fn are_isomorphic(a: &Digraph, b: &Digraph) -> Option<Permutation> {
    search::find_isomorphism(a, b)
}
