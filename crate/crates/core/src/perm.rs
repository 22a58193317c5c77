//! Permutations and permutation groups on `{0..n-1}`.
//!
//! Permutations act on the right: `p.then(&q)` applies `p` first, so
//! `p.then(&q).image(i) == q.image(p.image(i))`. A [`PermGroup`] keeps the
//! generators it was built from and lazily derives a stabilizer chain with
//! the deterministic Schreier–Sims algorithm; order and membership are read
//! off that chain.

use std::collections::VecDeque;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::text;

/// A bijection of `{0..n-1}` stored as its image table.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::ZeroDegree);
        }
        let mut seen = vec![false; n];
        for &v in &images {
            if v >= n || std::mem::replace(&mut seen[v], true) {
                return Err(Error::NotBijective(n));
            }
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from disjoint cycles; points not mentioned are fixed.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDegree);
        }
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                if a >= n {
                    return Err(Error::PointOutOfRange { point: a, n });
                }
                if std::mem::replace(&mut touched[a], true) {
                    return Err(Error::NotBijective(n));
                }
                images[a] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    /// The map `i ↦ i + shift (mod n)`.
    pub fn rotation(n: usize, shift: usize) -> Self {
        Permutation {
            images: (0..n).map(|i| (i + shift) % n).collect(),
        }
    }

    #[inline]
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

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// Smallest point not fixed, if any.
    pub fn first_moved(&self) -> Option<usize> {
        self.images.iter().enumerate().position(|(i, &v)| i != v)
    }

    /// `self` followed by `other`. Panics on degree mismatch; see [`compose`].
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation {
            images: self.images.iter().map(|&v| other.images[v]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v] = i;
        }
        Permutation { images }
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Cycle notation, `()` for the identity.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (k, v) in c.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{v}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// `p` then `q`: `compose(p, q)[i] = q[p[i]]`.
pub fn compose(p: &Permutation, q: &Permutation) -> Result<Permutation> {
    if p.degree() != q.degree() {
        return Err(Error::DegreeMismatch(p.degree(), q.degree()));
    }
    Ok(p.then(q))
}

/// A partition of `{0..n-1}` into equal-size parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockSystem {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl BlockSystem {
    pub fn new(n: usize, mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        let size = blocks.first().map_or(0, Vec::len);
        if size == 0 || !n.is_multiple_of(size) || blocks.iter().any(|b| b.len() != size) {
            return Err(Error::InvalidParameter(
                "blocks must be nonempty and of equal size dividing n".into(),
            ));
        }
        let mut seen = vec![false; n];
        for &v in blocks.iter().flatten() {
            if v >= n {
                return Err(Error::PointOutOfRange { point: v, n });
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidParameter("blocks overlap".into()));
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::InvalidParameter("blocks do not cover".into()));
        }
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort();
        Ok(BlockSystem { n, blocks })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_size(&self) -> usize {
        self.blocks[0].len()
    }

    pub fn is_trivial(&self) -> bool {
        self.block_size() == 1 || self.block_size() == self.n
    }

    pub fn is_preserved_by(&self, g: &Permutation) -> bool {
        let mut owner = vec![0; self.n];
        for (k, b) in self.blocks.iter().enumerate() {
            for &v in b {
                owner[v] = k;
            }
        }
        self.blocks.iter().all(|b| {
            let target = owner[g.image(b[0])];
            b.iter().all(|&v| owner[g.image(v)] == target)
        })
    }
}

#[derive(Debug, Clone)]
struct Level {
    base: usize,
    gens: Vec<Permutation>,
    orbit: Vec<usize>,
    /// `reps[p] = (u, u⁻¹)` with `u` mapping `base` to `p`.
    reps: Vec<Option<(Permutation, Permutation)>>,
}

impl Level {
    fn new(n: usize, base: usize) -> Self {
        Level {
            base,
            gens: Vec::new(),
            orbit: Vec::new(),
            reps: vec![None; n],
        }
    }

    fn rebuild(&mut self) {
        let n = self.reps.len();
        self.reps.iter_mut().for_each(|r| *r = None);
        let id = Permutation::identity(n);
        self.reps[self.base] = Some((id.clone(), id));
        self.orbit = vec![self.base];
        let mut k = 0;
        while k < self.orbit.len() {
            let p = self.orbit[k];
            k += 1;
            for s in &self.gens {
                let q = s.image(p);
                if self.reps[q].is_none() {
                    let u = self.reps[p].as_ref().unwrap().0.then(s);
                    let inv = u.inverse();
                    self.reps[q] = Some((u, inv));
                    self.orbit.push(q);
                }
            }
        }
    }
}

/// Base, strong generators and transversals of a permutation group.
#[derive(Debug, Clone)]
pub struct StabilizerChain {
    n: usize,
    levels: Vec<Level>,
}

impl StabilizerChain {
    /// Deterministic Schreier–Sims. New base points are the smallest point
    /// moved by the generator that forces the new level.
    fn build(n: usize, generators: &[Permutation]) -> Self {
        let mut chain = StabilizerChain {
            n,
            levels: Vec::new(),
        };
        for g in generators.iter().filter(|g| !g.is_identity()) {
            if chain.fixes_all_bases(g) {
                chain.levels.push(Level::new(n, g.first_moved().unwrap()));
            }
            chain.add_strong_generator(g.clone(), 0, usize::MAX);
        }

        let mut i = chain.levels.len();
        while i > 0 {
            let level = i - 1;
            match chain.failing_schreier_generator(level) {
                None => i -= 1,
                Some((depth, residue)) => {
                    if depth == chain.levels.len() {
                        let b = residue.first_moved().unwrap();
                        chain.levels.push(Level::new(n, b));
                    }
                    chain.add_strong_generator(residue, level + 1, depth);
                    i = depth + 1;
                }
            }
        }
        chain
    }

    fn fixes_all_bases(&self, g: &Permutation) -> bool {
        self.levels.iter().all(|l| g.image(l.base) == l.base)
    }

    /// Adds `g` to every level from `from` down to the first level whose
    /// base it moves (or `to`, whichever comes first).
    fn add_strong_generator(&mut self, g: Permutation, from: usize, to: usize) {
        for k in from..self.levels.len().min(to.saturating_add(1)) {
            self.levels[k].gens.push(g.clone());
            self.levels[k].rebuild();
            if g.image(self.levels[k].base) != self.levels[k].base {
                break;
            }
        }
    }

    fn failing_schreier_generator(&self, i: usize) -> Option<(usize, Permutation)> {
        let level = &self.levels[i];
        for &p in &level.orbit {
            let up = &level.reps[p].as_ref().unwrap().0;
            for s in &level.gens {
                let q = s.image(p);
                let uq_inv = &level.reps[q].as_ref().unwrap().1;
                let schreier = up.then(s).then(uq_inv);
                if schreier.is_identity() {
                    continue;
                }
                let (depth, residue) = self.sift(schreier, i + 1);
                if !residue.is_identity() {
                    return Some((depth, residue));
                }
            }
        }
        None
    }

    /// Strips `h` through the levels starting at `start`; returns the level
    /// where stripping stopped and the residue.
    fn sift(&self, mut h: Permutation, start: usize) -> (usize, Permutation) {
        for (j, level) in self.levels.iter().enumerate().skip(start) {
            let p = h.image(level.base);
            match &level.reps[p] {
                None => return (j, h),
                Some((_, inv)) => h = h.then(inv),
            }
        }
        (self.levels.len(), h)
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::from(1u32), |acc, l| acc * l.orbit.len())
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        debug_assert_eq!(p.degree(), self.n);
        let (depth, residue) = self.sift(p.clone(), 0);
        depth == self.levels.len() && residue.is_identity()
    }
}

/// A permutation group given by generators.
#[derive(Debug, Clone)]
pub struct PermGroup {
    n: usize,
    generators: Vec<Permutation>,
    chain: OnceLock<StabilizerChain>,
    primitive: OnceLock<bool>,
}

impl PermGroup {
    pub fn new(n: usize, generators: Vec<Permutation>) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDegree);
        }
        if generators.is_empty() {
            return Err(Error::NoGenerators);
        }
        if let Some(g) = generators.iter().find(|g| g.degree() != n) {
            return Err(Error::DegreeMismatch(n, g.degree()));
        }
        Ok(PermGroup {
            n,
            generators,
            chain: OnceLock::new(),
            primitive: OnceLock::new(),
        })
    }

    pub fn trivial(n: usize) -> Result<Self> {
        PermGroup::new(n, vec![Permutation::identity(n)])
    }

    /// Symmetric group of degree `n`, generated by an `n`-cycle and a transposition.
    pub fn symmetric(n: usize) -> Result<Self> {
        if n <= 2 {
            let g = if n == 2 {
                Permutation::from_cycles(2, &[&[0, 1]])?
            } else {
                Permutation::identity(n.max(1))
            };
            return PermGroup::new(n, vec![g]);
        }
        PermGroup::new(
            n,
            vec![
                Permutation::rotation(n, 1),
                Permutation::from_cycles(n, &[&[0, 1]])?,
            ],
        )
    }

    /// Alternating group of degree `n ≥ 3`, generated by the 3-cycles `(0 1 k)`.
    pub fn alternating(n: usize) -> Result<Self> {
        if n < 3 {
            return PermGroup::trivial(n);
        }
        let gens = (2..n)
            .map(|k| Permutation::from_cycles(n, &[&[0, 1, k]]))
            .collect::<Result<Vec<_>>>()?;
        PermGroup::new(n, gens)
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        PermGroup::new(n, vec![Permutation::rotation(n, 1)])
    }

    /// Dihedral group of order `2n` acting on the `n`-gon.
    pub fn dihedral(n: usize) -> Result<Self> {
        let reflection = Permutation::from_images((0..n).map(|i| (n - i) % n).collect())?;
        PermGroup::new(n, vec![Permutation::rotation(n, 1), reflection])
    }

    /// `x ↦ a·x + b` over `Z_p` with `a` ranging over the subgroup generated by `mult`.
    pub fn affine(p: usize, mult: usize) -> Result<Self> {
        if !crate::reldig::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if mult.is_multiple_of(p) {
            return Err(Error::InvalidParameter("multiplier must be a unit".into()));
        }
        let scale = Permutation::from_images((0..p).map(|x| (x * mult) % p).collect())?;
        PermGroup::new(p, vec![Permutation::rotation(p, 1), scale])
    }

    /// Parses the `.grp` format: `n <N>` then one image table per line.
    pub fn parse_grp(text: &str) -> Result<Self> {
        let (n, lines) = text::split_framed(text)?;
        if n == 0 {
            return Err(Error::parse(1, "order must be positive"));
        }
        let mut gens = Vec::with_capacity(lines.len());
        for line in &lines {
            let images = text::parse_points(line, n)?;
            if images.len() != n {
                return Err(Error::parse(
                    line.number,
                    format!("expected {n} images, found {}", images.len()),
                ));
            }
            gens.push(
                Permutation::from_images(images)
                    .map_err(|_| Error::parse(line.number, "not a permutation"))?,
            );
        }
        if gens.is_empty() {
            return Err(Error::parse(1, "no generators"));
        }
        PermGroup::new(n, gens)
    }

    pub fn to_grp(&self) -> String {
        let mut out = format!("n {}\n", self.n);
        for g in &self.generators {
            let row: Vec<String> = g.images().iter().map(usize::to_string).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn chain(&self) -> &StabilizerChain {
        self.chain
            .get_or_init(|| StabilizerChain::build(self.n, &self.generators))
    }

    pub fn order(&self) -> BigUint {
        self.chain().order()
    }

    /// Order as `u64`, or `None` if it does not fit.
    pub fn order_u64(&self) -> Option<u64> {
        u64::try_from(self.order()).ok()
    }

    pub fn contains(&self, p: &Permutation) -> Result<bool> {
        if p.degree() != self.n {
            return Err(Error::DegreeMismatch(self.n, p.degree()));
        }
        Ok(self.chain().contains(p))
    }

    pub fn orbit(&self, alpha: usize) -> Result<Vec<usize>> {
        if alpha >= self.n {
            return Err(Error::PointOutOfRange {
                point: alpha,
                n: self.n,
            });
        }
        let mut seen = vec![false; self.n];
        seen[alpha] = true;
        let mut queue = VecDeque::from([alpha]);
        while let Some(x) = queue.pop_front() {
            for g in &self.generators {
                let y = g.image(x);
                if !std::mem::replace(&mut seen[y], true) {
                    queue.push_back(y);
                }
            }
        }
        Ok((0..self.n).filter(|&v| seen[v]).collect())
    }

    /// All orbits, each sorted, listed by smallest element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.n);
        for g in &self.generators {
            for x in 0..self.n {
                uf.union(x, g.image(x));
            }
        }
        uf.classes()
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit(0).map(|o| o.len() == self.n).unwrap_or(false)
    }

    /// Smallest block containing `alpha` and `beta` (Atkinson's union–find).
    pub fn minimal_block(&self, alpha: usize, beta: usize) -> Result<Vec<usize>> {
        let system = self.minimal_block_system(alpha, beta)?;
        Ok(system
            .blocks()
            .iter()
            .find(|b| b.contains(&alpha))
            .cloned()
            .expect("blocks cover every point"))
    }

    /// The finest `G`-invariant partition in which `alpha` and `beta` share a block.
    pub fn minimal_block_system(&self, alpha: usize, beta: usize) -> Result<BlockSystem> {
        for p in [alpha, beta] {
            if p >= self.n {
                return Err(Error::PointOutOfRange { point: p, n: self.n });
            }
        }
        if alpha == beta {
            return Err(Error::EqualPoints);
        }
        if !self.is_transitive() {
            return Err(Error::Intransitive);
        }
        let mut uf = UnionFind::new(self.n);
        uf.union(alpha, beta);
        let mut pending = vec![(alpha, beta)];
        while let Some((x, y)) = pending.pop() {
            for g in &self.generators {
                let (gx, gy) = (uf.find(g.image(x)), uf.find(g.image(y)));
                if gx != gy {
                    uf.union(gx, gy);
                    pending.push((gx, gy));
                }
            }
        }
        BlockSystem::new(self.n, uf.classes())
    }

    /// No invariant partition with parts strictly between 1 and `n`.
    /// Degrees 1 and 2 are always primitive (including the trivial group
    /// on two points); intransitive groups of degree ≥ 3 are not.
    pub fn is_primitive(&self) -> bool {
        *self.primitive.get_or_init(|| self.compute_primitive())
    }

    fn compute_primitive(&self) -> bool {
        if self.n <= 2 {
            return true;
        }
        if !self.is_transitive() {
            return false;
        }
        // Only one β per orbit of the point stabilizer is needed, but the
        // stabilizer is not at hand cheaply; n is small.
        (1..self.n).all(|beta| {
            self.minimal_block(0, beta)
                .map(|b| b.len() == self.n)
                .unwrap_or(false)
        })
    }
}

#[derive(Debug, Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes; the smaller root survives.
    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    pub(crate) fn classes(&mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n];
        for v in 0..n {
            let r = self.find(v);
            by_root[r].push(v);
        }
        by_root.into_iter().filter(|c| !c.is_empty()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::{BTreeSet, HashSet};

    fn cyc(n: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    fn group(n: usize, gens: &[Permutation]) -> PermGroup {
        PermGroup::new(n, gens.to_vec()).unwrap()
    }

    /// Exhaustive closure under right multiplication; independent of the chain.
    fn closure(n: usize, gens: &[Permutation]) -> HashSet<Permutation> {
        let mut seen = HashSet::from([Permutation::identity(n)]);
        let mut frontier = vec![Permutation::identity(n)];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = x.then(g);
                if seen.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        seen
    }

    #[test]
    fn compose_examples() {
        let p = cyc(5, &[&[0, 1, 2, 3, 4]]);
        let id = Permutation::identity(5);
        assert_eq!(compose(&id, &p).unwrap(), p);
        assert_eq!(compose(&p, &p.inverse()).unwrap(), id);
        let sq = compose(&p, &p).unwrap();
        assert_eq!(sq.images(), &[2, 3, 4, 0, 1]);
        assert_eq!(
            compose(&p, &Permutation::identity(4)),
            Err(Error::DegreeMismatch(5, 4))
        );
    }

    #[test]
    fn constructors_reject_bad_input() {
        assert_eq!(
            Permutation::from_images(vec![0, 0, 1]),
            Err(Error::NotBijective(3))
        );
        assert!(Permutation::from_cycles(3, &[&[0, 1], &[1, 2]]).is_err());
        assert!(Permutation::from_cycles(3, &[&[0, 3]]).is_err());
        assert_eq!(
            PermGroup::new(3, vec![]).unwrap_err(),
            Error::NoGenerators
        );
        assert_eq!(
            PermGroup::new(3, vec![Permutation::identity(4)]).unwrap_err(),
            Error::DegreeMismatch(3, 4)
        );
    }

    #[test]
    fn display_uses_cycle_notation() {
        assert_eq!(cyc(5, &[&[0, 2], &[1, 4, 3]]).to_string(), "(0 2)(1 4 3)");
        assert_eq!(Permutation::identity(3).to_string(), "()");
    }

    #[test]
    fn orbit_examples() {
        let c5 = group(5, &[cyc(5, &[&[0, 1, 2, 3, 4]])]);
        assert_eq!(c5.orbit(0).unwrap(), vec![0, 1, 2, 3, 4]);
        let t = group(4, &[cyc(4, &[&[0, 1]])]);
        assert_eq!(t.orbit(2).unwrap(), vec![2]);
        let v4 = group(4, &[cyc(4, &[&[0, 1], &[2, 3]]), cyc(4, &[&[0, 2], &[1, 3]])]);
        assert_eq!(v4.orbit(0).unwrap(), vec![0, 1, 2, 3]);
        assert!(matches!(c5.orbit(5), Err(Error::PointOutOfRange { .. })));
        assert_eq!(t.orbits(), vec![vec![0, 1], vec![2], vec![3]]);
    }

    #[test]
    fn group_order_examples() {
        let c = cyc(5, &[&[0, 1, 2, 3, 4]]);
        assert_eq!(group(5, &[c.clone(), cyc(5, &[&[0, 1]])]).order_u64(), Some(120));
        assert_eq!(group(5, std::slice::from_ref(&c)).order_u64(), Some(5));
        let d = group(5, &[c.clone(), cyc(5, &[&[1, 4], &[2, 3]])]);
        assert_eq!(d.order_u64(), Some(10));
        assert_eq!(closure(5, d.generators()).len(), 10);
    }

    #[test]
    fn named_group_orders() {
        assert_eq!(PermGroup::symmetric(7).unwrap().order_u64(), Some(5040));
        assert_eq!(PermGroup::alternating(7).unwrap().order_u64(), Some(2520));
        assert_eq!(PermGroup::dihedral(7).unwrap().order_u64(), Some(14));
        assert_eq!(PermGroup::affine(7, 3).unwrap().order_u64(), Some(42));
        assert_eq!(PermGroup::affine(7, 2).unwrap().order_u64(), Some(21));
        assert_eq!(PermGroup::symmetric(2).unwrap().order_u64(), Some(2));
        assert_eq!(PermGroup::symmetric(1).unwrap().order_u64(), Some(1));
        let s16 = PermGroup::symmetric(16).unwrap();
        assert_eq!(s16.order_u64(), Some(20_922_789_888_000));
        assert!(PermGroup::affine(6, 5).is_err());
    }

    #[test]
    fn contains_examples() {
        let c = cyc(5, &[&[0, 1, 2, 3, 4]]);
        let c5 = group(5, std::slice::from_ref(&c));
        assert!(c5.contains(&Permutation::identity(5)).unwrap());
        assert!(!c5.contains(&cyc(5, &[&[0, 1]])).unwrap());
        let d5 = group(5, &[c, cyc(5, &[&[1, 4], &[2, 3]])]);
        assert!(d5.contains(&cyc(5, &[&[0, 4], &[1, 3]])).unwrap());
        assert!(d5.contains(&Permutation::identity(4)).is_err());
    }

    #[test]
    fn transitivity_examples() {
        assert!(group(5, &[cyc(5, &[&[0, 1, 2, 3, 4]])]).is_transitive());
        assert!(!group(3, &[cyc(3, &[&[0, 1]])]).is_transitive());
        let v4 = group(4, &[cyc(4, &[&[0, 1], &[2, 3]]), cyc(4, &[&[0, 2], &[1, 3]])]);
        assert!(v4.is_transitive());
    }

    #[test]
    fn minimal_block_examples() {
        let c4 = group(4, &[cyc(4, &[&[0, 1, 2, 3]])]);
        assert_eq!(c4.minimal_block(0, 2).unwrap(), vec![0, 2]);
        let sys = c4.minimal_block_system(0, 2).unwrap();
        assert_eq!(sys.blocks(), &[vec![0, 2], vec![1, 3]]);
        assert!(sys.is_preserved_by(&c4.generators()[0]));
        let s5 = PermGroup::symmetric(5).unwrap();
        for b in 1..5 {
            assert_eq!(s5.minimal_block(0, b).unwrap(), vec![0, 1, 2, 3, 4]);
        }
        let c5 = PermGroup::cyclic(5).unwrap();
        assert_eq!(c5.minimal_block(0, 1).unwrap(), vec![0, 1, 2, 3, 4]);
        assert_eq!(c5.minimal_block(0, 0), Err(Error::EqualPoints));
        let t = group(3, &[cyc(3, &[&[0, 1]])]);
        assert_eq!(t.minimal_block(0, 1), Err(Error::Intransitive));
    }

    #[test]
    fn primitivity_examples() {
        assert!(!PermGroup::cyclic(4).unwrap().is_primitive());
        assert!(PermGroup::cyclic(5).unwrap().is_primitive());
        assert!(PermGroup::trivial(2).unwrap().is_primitive());
        assert!(PermGroup::trivial(1).unwrap().is_primitive());
        assert!(!PermGroup::trivial(3).unwrap().is_primitive());
        assert!(!PermGroup::dihedral(6).unwrap().is_primitive());
        assert!(PermGroup::alternating(6).unwrap().is_primitive());
    }

    #[test]
    fn transitive_prime_degree_groups_are_primitive() {
        for p in [2usize, 3, 5, 7, 11, 13] {
            let groups = [
                PermGroup::cyclic(p).unwrap(),
                PermGroup::dihedral(p).unwrap(),
                PermGroup::symmetric(p).unwrap(),
            ];
            for g in &groups {
                assert!(g.is_transitive());
                assert!(g.is_primitive(), "degree {p}: {:?}", g.generators());
            }
        }
    }

    #[test]
    fn grp_round_trip() {
        let g = PermGroup::dihedral(5).unwrap();
        let text = g.to_grp();
        let back = PermGroup::parse_grp(&format!("# dihedral\n{text}")).unwrap();
        assert_eq!(back.generators(), g.generators());
        assert!(PermGroup::parse_grp("n 3\n0 1").is_err());
        assert!(PermGroup::parse_grp("n 3\n0 0 1").is_err());
        assert!(PermGroup::parse_grp("n 3\n").is_err());
        assert!(PermGroup::parse_grp("m 3\n0 1 2").is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn perm_strategy(n: usize) -> impl Strategy<Value = Permutation> {
            Just((0..n).collect::<Vec<_>>())
                .prop_shuffle()
                .prop_map(|v| Permutation::from_images(v).unwrap())
        }

        fn group_strategy() -> impl Strategy<Value = (usize, Vec<Permutation>)> {
            (2usize..=7).prop_flat_map(|n| (Just(n), prop::collection::vec(perm_strategy(n), 1..=3)))
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn order_and_membership_match_closure((n, gens) in group_strategy(), probe in perm_strategy(7)) {
                let g = PermGroup::new(n, gens.clone()).unwrap();
                let elems = closure(n, &gens);
                prop_assert_eq!(g.order_u64(), Some(elems.len() as u64));
                for e in &elems {
                    prop_assert!(g.contains(e).unwrap());
                }
                if n == 7 {
                    prop_assert_eq!(g.contains(&probe).unwrap(), elems.contains(&probe));
                }
            }

            #[test]
            fn orbit_is_invariant_reachability_class((n, gens) in group_strategy(), a in 0usize..7) {
                let g = PermGroup::new(n, gens.clone()).unwrap();
                let a = a % n;
                let orbit: BTreeSet<usize> = g.orbit(a).unwrap().into_iter().collect();
                for s in &gens {
                    for &x in &orbit {
                        prop_assert!(orbit.contains(&s.image(x)));
                    }
                }
                let via_closure: BTreeSet<usize> = closure(n, &gens).iter().map(|e| e.image(a)).collect();
                prop_assert_eq!(orbit, via_closure);
            }

            #[test]
            fn primitive_implies_transitive((n, gens) in group_strategy()) {
                let g = PermGroup::new(n, gens).unwrap();
                if g.is_primitive() && !(n == 2 && g.order_u64() == Some(1)) {
                    prop_assert!(g.is_transitive());
                }
            }

            #[test]
            fn block_systems_are_preserved((n, gens) in group_strategy(), b in 1usize..7) {
                let g = PermGroup::new(n, gens.clone()).unwrap();
                let b = b % n;
                prop_assume!(b != 0 && g.is_transitive());
                let sys = g.minimal_block_system(0, b).unwrap();
                prop_assert_eq!(n % sys.block_size(), 0);
                for s in &gens {
                    prop_assert!(sys.is_preserved_by(s));
                }
            }
        }
    }
}
