//! The intersection layers `Γ_i`, the parameters `κ` and `ℓ`, the two-branch
//! dichotomy for vertex-primitive digraphs, and the symmetric design that
//! appears in the first branch.
//!
//! For a `d`-regular digraph, `Γ_i` holds the ordered pairs `(u, v)` with
//! `|Γ(u) ∩ Γ(v)| = d − i`; the layers `Γ_0, …, Γ_d` partition `Ω×Ω`.
//! `κ` is the least positive `i` with `Γ_i` nonempty and `ℓ` is the least
//! `i ≥ κ` such that `Γ_{i+1}, …, Γ_{i+κ}` are all empty.
//!
//! For a vertex-primitive `Γ` with `∅ ≠ Γ ≠ Ω×Ω`, at least one of
//!
//! 1. `Γ_0 ∪ Γ_κ = Ω×Ω` and `(n−1)(d−κ) = d(d−1)`;
//! 2. some `Γ_i` with `κ ≤ i ≤ d−1` has valency between 1 and `κ² + κ`;
//!
//! holds. Both are always evaluated and reported independently.

use std::fmt;

use serde::Serialize;

use crate::aut;
use crate::error::{Error, Result};
use crate::perm::PermGroup;
use crate::reldig::Digraph;

/// `|Γ(u) ∩ Γ(v)|` for every ordered pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommonNeighbours {
    n: usize,
    counts: Vec<u32>,
}

impl CommonNeighbours {
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> usize {
        self.counts[u * self.n + v] as usize
    }

    pub fn row(&self, u: usize) -> &[u32] {
        &self.counts[u * self.n..(u + 1) * self.n]
    }
}

pub fn common_neighbour_matrix(g: &Digraph) -> CommonNeighbours {
    let n = g.order();
    let mut counts = vec![0u32; n * n];
    for u in 0..n {
        let ru = g.row(u);
        for v in u..n {
            let c: u32 = ru.iter().zip(g.row(v)).map(|(a, b)| (a & b).count_ones()).sum();
            counts[u * n + v] = c;
            counts[v * n + u] = c;
        }
    }
    CommonNeighbours { n, counts }
}

fn regular_valency(g: &Digraph) -> Result<usize> {
    g.valency_profile().d.ok_or(Error::NotRegular)
}

/// `Γ_i` for a regular digraph.
pub fn gamma_i(g: &Digraph, i: usize) -> Result<Digraph> {
    let d = regular_valency(g)?;
    if i > d {
        return Err(Error::InvalidParameter(format!("layer {i} exceeds valency {d}")));
    }
    let cn = common_neighbour_matrix(g);
    Digraph::from_fn(g.order(), |u, v| cn.get(u, v) == d - i)
}

/// All layers `Γ_0, …, Γ_d` of a regular digraph.
#[derive(Debug, Clone)]
pub struct Layers {
    d: usize,
    layers: Vec<Digraph>,
}

impl Layers {
    pub fn new(g: &Digraph) -> Result<Self> {
        let d = regular_valency(g)?;
        let n = g.order();
        let cn = common_neighbour_matrix(g);
        let mut layers = vec![Digraph::empty(n)?; d + 1];
        for (i, layer) in layers.iter_mut().enumerate() {
            *layer = Digraph::from_fn(n, |u, v| cn.get(u, v) == d - i)?;
        }
        Ok(Layers { d, layers })
    }

    pub fn valency(&self) -> usize {
        self.d
    }

    /// `Γ_i`, or `None` outside `0..=d` (where the layer is empty).
    pub fn get(&self, i: usize) -> Option<&Digraph> {
        self.layers.get(i)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Digraph> {
        self.layers.iter()
    }

    fn is_empty_at(&self, i: usize) -> bool {
        self.get(i).is_none_or(Digraph::is_empty)
    }

    /// Common valency of each layer, `None` where a layer is not regular.
    pub fn valencies(&self) -> Vec<Option<usize>> {
        self.layers.iter().map(|l| l.valency_profile().d).collect()
    }

    pub fn kappa(&self) -> Option<usize> {
        (1..=self.d).find(|&i| !self.is_empty_at(i))
    }

    pub fn ell(&self) -> Option<usize> {
        let kappa = self.kappa()?;
        (kappa..=self.d).find(|&i| (i + 1..=i + kappa).all(|j| self.is_empty_at(j)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Trivial {
    Empty,
    Full,
    NotRegular,
    NotPrimitive,
    None,
}

/// Branch (1): `Γ_0 ∪ Γ_κ = Ω×Ω` together with `lhs = (n−1)(d−κ)` equal to `rhs = d(d−1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Branch1 {
    pub holds: bool,
    pub lhs: u64,
    pub rhs: u64,
}

/// Branch (2): the indices `i ∈ κ..d` with `1 ≤ d_i ≤ κ² + κ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Branch2 {
    pub witnesses: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectrumReport {
    pub n: usize,
    pub d: usize,
    pub valencies: Vec<Option<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ell: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub branch1: Option<Branch1>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub branch2: Option<Branch2>,
    pub trivial: Trivial,
}

impl SpectrumReport {
    /// Whether the dichotomy's disjunction is met.
    pub fn dichotomy_holds(&self) -> bool {
        self.branch1.is_some_and(|b| b.holds)
            || self.branch2.as_ref().is_some_and(|b| !b.witnesses.is_empty())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data")
    }
}

impl fmt::Display for SpectrumReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n: {}", self.n)?;
        writeln!(f, "d: {}", self.d)?;
        let vals: Vec<String> = self
            .valencies
            .iter()
            .map(|v| v.map_or_else(|| "-".to_string(), |x| x.to_string()))
            .collect();
        writeln!(f, "valencies: {}", vals.join(" "))?;
        if let Some(k) = self.kappa {
            writeln!(f, "kappa: {k}")?;
        }
        if let Some(l) = self.ell {
            writeln!(f, "ell: {l}")?;
        }
        if let Some(b) = &self.branch1 {
            writeln!(f, "branch1: holds={} lhs={} rhs={}", b.holds, b.lhs, b.rhs)?;
        }
        if let Some(b) = &self.branch2 {
            let w: Vec<String> = b.witnesses.iter().map(usize::to_string).collect();
            writeln!(f, "branch2: witnesses=[{}]", w.join(" "))?;
        }
        write!(f, "trivial: {:?}", self.trivial)
    }
}

fn trivial_kind(g: &Digraph, aut: &PermGroup) -> Trivial {
    if g.is_empty() {
        Trivial::Empty
    } else if g.is_full() {
        Trivial::Full
    } else if !aut.is_primitive() {
        Trivial::NotPrimitive
    } else {
        Trivial::None
    }
}

/// Report for a regular digraph with a known automorphism group (used to
/// fill the `trivial` field).
pub fn spectrum_with_group(g: &Digraph, aut: &PermGroup) -> Result<SpectrumReport> {
    let layers = Layers::new(g)?;
    Ok(build_report(g, &layers, trivial_kind(g, aut)))
}

fn build_report(g: &Digraph, layers: &Layers, trivial: Trivial) -> SpectrumReport {
    let n = g.order();
    let d = layers.valency();
    let valencies = layers.valencies();
    let kappa = layers.kappa();
    let ell = layers.ell();
    let branch1 = kappa.map(|k| {
        let lhs = (n as u64 - 1) * (d - k) as u64;
        let rhs = d as u64 * (d as u64).saturating_sub(1);
        let covers = (1..=d).all(|i| i == k || layers.is_empty_at(i));
        Branch1 {
            holds: covers && lhs == rhs,
            lhs,
            rhs,
        }
    });
    let branch2 = kappa.map(|k| Branch2 {
        witnesses: (k..d)
            .filter(|&i| valencies[i].is_some_and(|v| v >= 1 && v <= k * k + k))
            .collect(),
    });
    SpectrumReport {
        n,
        d,
        valencies,
        kappa,
        ell,
        branch1,
        branch2,
        trivial,
    }
}

/// Descriptive report of a regular digraph; the automorphism group is
/// computed to decide primitivity.
pub fn spectrum(g: &Digraph) -> Result<SpectrumReport> {
    regular_valency(g)?;
    spectrum_with_group(g, &aut::automorphism_group(g))
}

/// Full classification. For vertex-primitive `∅ ≠ Γ ≠ Ω×Ω` both branches
/// are reported and their disjunction enforced; otherwise only the
/// descriptive fields are kept.
pub fn classify(g: &Digraph) -> Result<SpectrumReport> {
    let mut report = spectrum(g)?;
    if report.trivial != Trivial::None {
        report.branch1 = None;
        report.branch2 = None;
        return Ok(report);
    }
    if !report.dichotomy_holds() {
        return Err(Error::DichotomyViolated {
            n: report.n,
            d: report.d,
            kappa: report.kappa.unwrap_or(0),
        });
    }
    Ok(report)
}

/// A symmetric 2-design read off the neighbourhoods of a branch-(1) digraph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DesignParams {
    pub v: usize,
    pub k: usize,
    pub lambda: usize,
    pub blocks: Vec<Vec<usize>>,
    pub is_projective_plane: bool,
    /// Present when `v = κ² + κ + 1`: the design is (the complement of) a
    /// projective plane of order `κ`, whose prime order follows only from an
    /// external classification-dependent theorem. Not verified here.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prime_order_note: Option<String>,
}

pub fn design_from_branch1(g: &Digraph) -> Result<DesignParams> {
    let report = classify(g)?;
    let kappa = match (report.trivial, report.branch1, report.kappa) {
        (Trivial::None, Some(b), Some(k)) if b.holds => k,
        _ => return Err(Error::Branch1NotSatisfied),
    };
    let (v, k) = (report.n, report.d);
    let lambda = k - kappa;

    let blocks: Vec<Vec<usize>> = (0..v).map(|a| g.neighbours(a).collect()).collect();
    let mut sorted = blocks.clone();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != v {
        return Err(Error::DesignInvariant(format!(
            "{} distinct blocks, expected {v}",
            sorted.len()
        )));
    }
    if let Some(b) = blocks.iter().position(|b| b.len() != k) {
        return Err(Error::DesignInvariant(format!("block {b} has the wrong size")));
    }
    let cn = common_neighbour_matrix(g);
    for a in 0..v {
        for b in a + 1..v {
            if cn.get(a, b) != lambda {
                return Err(Error::DesignInvariant(format!(
                    "blocks {a} and {b} meet in {} points, expected {lambda}",
                    cn.get(a, b)
                )));
            }
        }
    }
    let prime_order_note = (v == kappa * kappa + kappa + 1).then(|| {
        format!(
            "projective plane of order {kappa} (or its complement); primality of v = {v} \
             relies on Kantor's classification-dependent theorem and is not verified"
        )
    });
    Ok(DesignParams {
        v,
        k,
        lambda,
        blocks,
        is_projective_plane: lambda == 1,
        prime_order_note,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FeasiblePair {
    pub d: usize,
    pub n: usize,
    /// `2d ≤ n`, i.e. the pair survives passing to the complement.
    pub reduced: bool,
}

/// Admissible `(d, n)` for branch (1) at a fixed `κ ≥ 2` with `κ < d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FeasibleParameters {
    pub kappa: usize,
    pub pairs: Vec<FeasiblePair>,
    pub n_max: usize,
}

impl FeasibleParameters {
    pub fn d_values(&self) -> Vec<usize> {
        self.pairs.iter().map(|p| p.d).collect()
    }

    pub fn reduced_pairs(&self) -> Vec<(usize, usize)> {
        self.pairs
            .iter()
            .filter(|p| p.reduced)
            .map(|p| (p.d, p.n))
            .collect()
    }

    /// `d ∈ {…}` in set notation.
    pub fn d_set_text(&self) -> String {
        let ds: Vec<String> = self.d_values().iter().map(usize::to_string).collect();
        format!("{{{}}}", ds.join(","))
    }

    /// `(d,n) ∈ {…}` for the reduced pairs, in set notation.
    pub fn reduced_set_text(&self) -> String {
        let ps: Vec<String> = self
            .reduced_pairs()
            .iter()
            .map(|(d, n)| format!("({d},{n})"))
            .collect();
        format!("{{{}}}", ps.join(","))
    }
}

impl fmt::Display for FeasibleParameters {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "kappa: {}", self.kappa)?;
        writeln!(f, "d: {}", self.d_set_text())?;
        for p in &self.pairs {
            writeln!(f, "  d={} n={} reduced={}", p.d, p.n, p.reduced)?;
        }
        writeln!(f, "reduced: {}", self.reduced_set_text())?;
        write!(f, "n_max: {}", self.n_max)
    }
}

pub fn feasible_parameters(kappa: usize) -> Result<FeasibleParameters> {
    if kappa < 2 {
        return Err(Error::InvalidParameter(format!("kappa must be ≥ 2, got {kappa}")));
    }
    let excess = kappa * (kappa - 1);
    let pairs = (kappa + 1..=kappa * kappa)
        .filter(|d| excess.is_multiple_of(d - kappa))
        .map(|d| {
            let n = d + kappa + excess / (d - kappa);
            FeasiblePair {
                d,
                n,
                reduced: 2 * d <= n,
            }
        })
        .collect();
    Ok(FeasibleParameters {
        kappa,
        pairs,
        n_max: kappa * kappa + kappa + 1,
    })
}

/// Checks every structural identity of the layers that applies to `g`,
/// given its automorphism group. Returns one message per violation.
///
/// Always (regular `g`): the layers partition `Ω×Ω`; `Γ_0 ∪ … ∪ Γ_{d−1} =
/// Γ∘Γ⁻¹`; `Γ_i∘Γ_κ ⊆ Γ_{i−κ} ∪ … ∪ Γ_{i+κ}`; each layer is symmetric and
/// preserved by every generator of `aut`.
/// Vertex-transitive `g`: `Γ_0 = Ω×Ω` forces `Γ ∈ {∅, Ω×Ω}`.
/// Vertex-primitive `g`: transitive relations among `Γ` and its layers are
/// inside `Ω*` or equal `Ω×Ω`; and if `∅ ≠ Γ ≠ Ω×Ω` then `Γ_0 = Ω*`, the
/// closure of `Γ_κ` and `Γ_0 ∪ … ∪ Γ_ℓ` are `Ω×Ω`, `n = 1 + d_1 + … + d_ℓ`,
/// and the dichotomy holds.
pub fn identity_violations(g: &Digraph, aut: &PermGroup) -> Vec<String> {
    let mut out = Vec::new();
    let Ok(layers) = Layers::new(g) else {
        if aut.is_transitive() {
            out.push("vertex-transitive digraph is not regular".into());
        }
        return out;
    };
    let n = g.order();
    let d = layers.valency();
    let full = Digraph::full(n).expect("n ≥ 1");
    let diagonal = Digraph::diagonal(n).expect("n ≥ 1");

    let mut cover = Digraph::empty(n).expect("n ≥ 1");
    let mut total = 0;
    for (i, l) in layers.iter().enumerate() {
        total += l.arc_count();
        cover = cover.union(l).expect("same order");
        if !l.is_symmetric() {
            out.push(format!("Γ_{i} is not symmetric"));
        }
        if let Some(s) = aut.generators().iter().find(|s| !l.is_automorphism(s)) {
            out.push(format!("automorphism {s} does not preserve Γ_{i}"));
        }
    }
    if total != n * n || cover != full {
        out.push("layers do not partition Ω×Ω".into());
    }

    let below_top = layers
        .iter()
        .take(d)
        .fold(Digraph::empty(n).expect("n ≥ 1"), |acc, l| acc.union(l).expect("same order"));
    let product = g
        .compose_relations(&g.inverse_relation())
        .expect("same order");
    if below_top != product {
        out.push("Γ_0 ∪ … ∪ Γ_{d−1} differs from Γ∘Γ⁻¹".into());
    }

    let kappa = layers.kappa();
    if let Some(k) = kappa {
        let gk = layers.get(k).expect("κ ≤ d");
        for (i, l) in layers.iter().enumerate() {
            let lhs = l.compose_relations(gk).expect("same order");
            let allowed = (i.saturating_sub(k)..=i + k)
                .filter_map(|j| layers.get(j))
                .fold(Digraph::empty(n).expect("n ≥ 1"), |acc, x| {
                    acc.union(x).expect("same order")
                });
            if !lhs.is_subset_of(&allowed) {
                out.push(format!("Γ_{i}∘Γ_κ escapes Γ_{{i−κ}} ∪ … ∪ Γ_{{i+κ}}"));
            }
        }
    }

    if aut.is_transitive() && layers.get(0) == Some(&full) && !(g.is_empty() || g.is_full()) {
        out.push("Γ_0 = Ω×Ω but Γ is neither empty nor full".into());
    }

    if !aut.is_primitive() {
        return out;
    }
    for (name, rel) in std::iter::once(("Γ".to_string(), g))
        .chain(layers.iter().enumerate().map(|(i, l)| (format!("Γ_{i}"), l)))
    {
        if rel.is_transitive_relation() && !rel.is_subset_of(&diagonal) && *rel != full {
            out.push(format!("{name} is a transitive relation outside Ω* but not Ω×Ω"));
        }
    }
    if g.is_empty() || g.is_full() {
        return out;
    }
    if layers.get(0) != Some(&diagonal) {
        out.push("Γ_0 ≠ Ω* for a nontrivial vertex-primitive digraph".into());
    }
    let (Some(k), Some(ell)) = (kappa, layers.ell()) else {
        out.push("κ undefined for a nontrivial vertex-primitive digraph".into());
        return out;
    };
    if layers.get(k).expect("κ ≤ d").transitive_closure() != full {
        out.push("closure of Γ_κ is not Ω×Ω".into());
    }
    let lower = (0..=ell)
        .filter_map(|i| layers.get(i))
        .fold(Digraph::empty(n).expect("n ≥ 1"), |acc, l| acc.union(l).expect("same order"));
    if lower != full {
        out.push("Γ_0 ∪ … ∪ Γ_ℓ is not Ω×Ω".into());
    }
    let vals = layers.valencies();
    let sum: Option<usize> = (1..=ell).map(|i| vals[i]).sum();
    if sum.map(|s| s + 1) != Some(n) {
        out.push(format!("1 + d_1 + … + d_ℓ = {sum:?} + 1 differs from n = {n}"));
    }
    let report = build_report(g, &layers, Trivial::None);
    if !report.dichotomy_holds() {
        out.push(format!("dichotomy fails: {}", report.to_json()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn common_neighbour_examples() {
        let k4 = common_neighbour_matrix(&Digraph::complete(4).unwrap());
        for u in 0..4 {
            for v in 0..4 {
                assert_eq!(k4.get(u, v), if u == v { 3 } else { 2 });
            }
        }
        let c5 = common_neighbour_matrix(&Digraph::delta_circulant(5, 0, 1).unwrap());
        for u in 0..5 {
            for v in 0..5 {
                assert_eq!(c5.get(u, v), usize::from(u == v));
            }
        }
        let pet = Digraph::petersen();
        let cn = common_neighbour_matrix(&pet);
        for u in 0..10 {
            for v in 0..10 {
                if u != v {
                    assert_eq!(cn.get(u, v), if pet.has_arc(u, v) { 0 } else { 1 });
                }
            }
        }
    }

    #[test]
    fn gamma_i_examples() {
        let k4 = Digraph::complete(4).unwrap();
        assert_eq!(gamma_i(&k4, 0).unwrap(), Digraph::diagonal(4).unwrap());
        assert_eq!(gamma_i(&k4, 1).unwrap(), k4);
        let pet = Digraph::petersen();
        let non_adj = pet.complement().intersection(&Digraph::complete(10).unwrap()).unwrap();
        assert_eq!(gamma_i(&pet, 2).unwrap(), non_adj);
        let c5 = Digraph::delta_circulant(5, 0, 1).unwrap();
        assert_eq!(gamma_i(&c5, 1).unwrap(), Digraph::complete(5).unwrap());
        let irregular = Digraph::from_arcs(3, [(0, 1)]).unwrap();
        assert_eq!(gamma_i(&irregular, 0), Err(Error::NotRegular));
        assert!(gamma_i(&k4, 4).is_err());
    }

    #[test]
    fn petersen_spectrum() {
        let r = spectrum(&Digraph::petersen()).unwrap();
        assert_eq!(r.d, 3);
        assert_eq!(r.valencies, vec![Some(1), Some(0), Some(6), Some(3)]);
        assert_eq!((r.kappa, r.ell), (Some(2), Some(3)));
        assert_eq!(r.trivial, Trivial::None);
        let c = classify(&Digraph::petersen()).unwrap();
        assert!(!c.branch1.unwrap().holds);
        assert_eq!(c.branch2.unwrap().witnesses, vec![2]);
    }

    #[test]
    fn delta_13_2_4_spectrum() {
        let g = Digraph::delta_circulant(13, 2, 4).unwrap();
        let r = spectrum(&g).unwrap();
        assert_eq!(r.valencies, vec![Some(1), Some(2), Some(2), Some(2), Some(6)]);
        assert_eq!((r.kappa, r.ell), (Some(1), Some(4)));
        // (n−1)(d−κ) = 36 but d(d−1) = 12: only the second branch applies
        assert_eq!(r.branch1, Some(Branch1 { holds: false, lhs: 36, rhs: 12 }));
        assert_eq!(r.branch2.unwrap().witnesses, vec![1, 2, 3]);
        let c = classify(&g).unwrap();
        assert!(c.dichotomy_holds());
    }

    #[test]
    fn full_and_empty_are_trivial() {
        for n in 1..=5 {
            let r = spectrum(&Digraph::full(n).unwrap()).unwrap();
            assert_eq!(r.trivial, Trivial::Full);
            assert_eq!(r.kappa, None);
            let e = classify(&Digraph::empty(n).unwrap()).unwrap();
            assert_eq!(e.trivial, Trivial::Empty);
            assert_eq!(e.branch1, None);
        }
        let json = classify(&Digraph::full(3).unwrap()).unwrap().to_json();
        assert!(json.contains(r#""trivial":"Full""#), "{json}");
        assert!(!json.contains("kappa"));
    }

    #[test]
    fn complete_graph_branch_one() {
        for n in 2..=16usize {
            let r = classify(&Digraph::complete(n).unwrap()).unwrap();
            assert_eq!(r.kappa, Some(1));
            let b = r.branch1.unwrap();
            assert!(b.holds);
            assert_eq!((b.lhs, b.rhs), (((n - 1) * (n - 2)) as u64, ((n - 1) * (n - 2)) as u64));
        }
        let json = classify(&Digraph::complete(4).unwrap()).unwrap().to_json();
        assert!(json.starts_with(r#"{"n":4,"d":3,"valencies":[1,3,0,0],"kappa":1,"#), "{json}");
        assert!(json.contains(r#""branch1":{"holds":true,"lhs":6,"rhs":6}"#));
    }

    #[test]
    fn kneser_6_2_with_loops() {
        let r = classify(&Digraph::kneser(6, 2, true).unwrap()).unwrap();
        assert_eq!((r.n, r.d, r.kappa), (15, 7, Some(4)));
        assert_eq!(r.branch1, Some(Branch1 { holds: true, lhs: 42, rhs: 42 }));
    }

    #[test]
    fn non_primitive_reports_are_descriptive() {
        let square = Digraph::circulant(4, &[1, 3]).unwrap();
        let r = classify(&square).unwrap();
        assert_eq!(r.trivial, Trivial::NotPrimitive);
        assert!(r.branch1.is_none() && r.branch2.is_none());
        assert!(spectrum(&square).unwrap().branch1.is_some());
        assert_eq!(
            classify(&Digraph::from_arcs(3, [(0, 1)]).unwrap()),
            Err(Error::NotRegular)
        );
    }

    #[test]
    fn design_examples() {
        for n in 3..=8 {
            let d = design_from_branch1(&Digraph::complete(n).unwrap()).unwrap();
            assert_eq!((d.v, d.k, d.lambda), (n, n - 1, n - 2));
        }
        let k = design_from_branch1(&Digraph::kneser(6, 2, true).unwrap()).unwrap();
        assert_eq!((k.v, k.k, k.lambda), (15, 7, 3));
        assert!(!k.is_projective_plane);
        let c = design_from_branch1(&Digraph::clebsch(true)).unwrap();
        assert_eq!((c.v, c.k, c.lambda), (16, 6, 2));
        assert_eq!(
            design_from_branch1(&Digraph::petersen()),
            Err(Error::Branch1NotSatisfied)
        );
        assert_eq!(
            design_from_branch1(&Digraph::full(4).unwrap()),
            Err(Error::Branch1NotSatisfied)
        );
    }

    #[test]
    fn fano_plane_design() {
        // {1,2,4} is a perfect difference set mod 7: κ = 2, d = 3, n = 7
        let g = Digraph::circulant(7, &[1, 2, 4]).unwrap();
        let r = classify(&g).unwrap();
        assert_eq!(r.kappa, Some(2));
        let des = design_from_branch1(&g).unwrap();
        assert_eq!((des.v, des.k, des.lambda), (7, 3, 1));
        assert!(des.is_projective_plane);
        assert!(des.prime_order_note.is_some());
        let dual = design_from_branch1(&g.complement()).unwrap();
        assert_eq!((dual.v, dual.k, dual.lambda), (7, 4, 2));
        assert!(!dual.is_projective_plane);
        assert!(dual.prime_order_note.is_some());
    }

    #[test]
    fn feasible_examples() {
        let f4 = feasible_parameters(4).unwrap();
        assert_eq!(f4.d_values(), vec![5, 6, 7, 8, 10, 16]);
        assert_eq!(f4.reduced_pairs(), vec![(5, 21), (6, 16), (7, 15)]);
        assert_eq!(f4.n_max, 21);
        let f2 = feasible_parameters(2).unwrap();
        let pairs: Vec<(usize, usize)> = f2.pairs.iter().map(|p| (p.d, p.n)).collect();
        assert_eq!(pairs, vec![(3, 7), (4, 7)]);
        assert_eq!(f2.reduced_pairs(), vec![(3, 7)]);
        assert!(feasible_parameters(1).is_err());
    }

    #[test]
    fn feasible_matches_direct_search() {
        for kappa in 2..=9usize {
            let mut direct = Vec::new();
            for d in kappa + 1..=kappa * kappa {
                for n in d + 1..=kappa * kappa + kappa + 1 {
                    if (n - 1) * (d - kappa) == d * (d - 1) {
                        direct.push((d, n));
                    }
                }
            }
            let f = feasible_parameters(kappa).unwrap();
            let got: Vec<(usize, usize)> = f.pairs.iter().map(|p| (p.d, p.n)).collect();
            assert_eq!(got, direct, "kappa {kappa}");
            assert!(got.iter().all(|&(_, n)| n <= f.n_max));
        }
    }

    #[test]
    fn identities_on_named_graphs() {
        let graphs = [
            Digraph::petersen(),
            Digraph::kneser(6, 2, true).unwrap(),
            Digraph::clebsch(true),
            Digraph::hamming_k4(),
            Digraph::circulant(4, &[1, 3]).unwrap(),
            Digraph::circulant(6, &[1, 2]).unwrap(),
            Digraph::full(5).unwrap(),
            Digraph::empty(5).unwrap(),
            Digraph::delta_circulant(11, 3, 5).unwrap(),
        ];
        for g in &graphs {
            let aut = aut::automorphism_group(g);
            assert_eq!(identity_violations(g, &aut), Vec::<String>::new(), "{g:?}");
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn circulant(max_n: usize) -> impl Strategy<Value = Digraph> {
            (2..=max_n).prop_flat_map(|n| {
                prop::collection::vec(any::<bool>(), n).prop_map(move |bits| {
                    let conn: Vec<usize> = (0..n).filter(|&s| bits[s]).collect();
                    Digraph::circulant(n, &conn).unwrap()
                })
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn layer_identities_hold_on_cayley_digraphs(g in circulant(12)) {
                let aut = aut::automorphism_group(&g);
                let v = identity_violations(&g, &aut);
                prop_assert!(v.is_empty(), "{:?}: {:?}", g, v);
            }

            #[test]
            fn valencies_count_every_pair(g in circulant(12)) {
                let layers = Layers::new(&g).unwrap();
                let n = g.order();
                let total: usize = layers.valencies().iter().map(|v| v.unwrap() * n).sum();
                prop_assert_eq!(total, n * n);
            }
        }
    }
}
