//! Brute-force verification suites. Each returns a [`SuiteReport`] whose
//! violation list is empty when the checked statement holds on every
//! instance examined.

use std::fmt;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::aut::automorphism_group;
use crate::error::{Error, Result};
use crate::fixtures::GroupFixture;
use crate::perm::{PermGroup, Permutation};
use crate::reldig::{are_isomorphic, is_prime, Digraph};
use crate::spectrum::{self, Layers};
use crate::sync::{self, KernelType, KernelVerdict, Transformation};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub instance: String,
    pub diagnostic: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub examined: u64,
    pub in_hypothesis: u64,
    pub violations: Vec<Violation>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub seconds: f64,
}

impl SuiteReport {
    fn new(suite: impl Into<String>) -> Self {
        SuiteReport {
            suite: suite.into(),
            examined: 0,
            in_hypothesis: 0,
            violations: Vec::new(),
            notes: Vec::new(),
            seconds: 0.0,
        }
    }

    fn violation(&mut self, instance: impl Into<String>, diagnostic: impl Into<String>) {
        self.violations.push(Violation {
            instance: instance.into(),
            diagnostic: diagnostic.into(),
        });
    }

    fn finish(mut self, started: Instant) -> Self {
        self.seconds = started.elapsed().as_secs_f64();
        self
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data")
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite: {}", self.suite)?;
        writeln!(f, "examined: {}", self.examined)?;
        writeln!(f, "in_hypothesis: {}", self.in_hypothesis)?;
        writeln!(f, "violations: {}", self.violations.len())?;
        for v in &self.violations {
            writeln!(f, "violation: {}: {}", v.instance, v.diagnostic)?;
        }
        for note in &self.notes {
            writeln!(f, "note: {note}")?;
        }
        write!(f, "seconds: {:.3}", self.seconds)
    }
}

/// Common out-neighbour counts straight from the adjacency rows.
fn has_near_twin(g: &Digraph, d: usize) -> bool {
    let n = g.order();
    (0..n).any(|u| {
        (u + 1..n).any(|v| {
            let shared: u32 = g
                .row(u)
                .iter()
                .zip(g.row(v))
                .map(|(a, b)| (a & b).count_ones())
                .sum();
            shared as usize + 1 == d
        })
    })
}

fn degenerate(g: &Digraph) -> Option<&'static str> {
    let n = g.order();
    if g.is_full() {
        Some("full")
    } else if *g == Digraph::diagonal(n).expect("n ≥ 1") {
        Some("diagonal")
    } else if *g == Digraph::complete(n).expect("n ≥ 1") {
        Some("complete")
    } else {
        None
    }
}

/// `x` with `set = {x+1, …, x+d}` mod `p`, when `set` is such an interval.
fn interval_offset(p: usize, set: &[bool]) -> Option<usize> {
    let d = set.iter().filter(|&&b| b).count();
    (0..p).find(|&x| (1..=d).all(|k| set[(x + k) % p]))
}

/// Every circulant on `Z_p` with `Γ_1 ≠ ∅` is diagonal, complete, full or
/// isomorphic to some `Δ_{p,x,d}`. Multipliers `u ↦ mu` are tried first;
/// general isomorphism search is the fallback.
pub fn circulant_suite(p: usize) -> Result<SuiteReport> {
    if !is_prime(p) || p > 13 {
        return Err(Error::InvalidParameter(format!(
            "circulant suite needs a prime p ≤ 13, got {p}"
        )));
    }
    let started = Instant::now();
    let mut report = SuiteReport::new(format!("circulant({p})"));
    if !PermGroup::cyclic(p)?.is_primitive() {
        report.violation("Z_p", "cyclic group of prime degree is not primitive");
    }
    let mut multiplier_hits = 0;
    let mut fallback_hits = 0;
    for mask in 0u32..1 << p {
        report.examined += 1;
        let conn: Vec<usize> = (0..p).filter(|&s| mask >> s & 1 == 1).collect();
        let d = conn.len();
        let g = Digraph::circulant(p, &conn)?;
        if d == 0 || !has_near_twin(&g, d) {
            continue;
        }
        report.in_hypothesis += 1;
        if degenerate(&g).is_some() {
            continue;
        }
        let by_multiplier = (1..p).find_map(|m| {
            let mut scaled = vec![false; p];
            for &s in &conn {
                scaled[s * m % p] = true;
            }
            let x = interval_offset(p, &scaled)?;
            let map = Permutation::from_images((0..p).map(|u| u * m % p).collect()).ok()?;
            let target = Digraph::delta_circulant(p, x, d).ok()?;
            (g.permuted(&map).ok()? == target).then_some(x)
        });
        if by_multiplier.is_some() {
            multiplier_hits += 1;
            continue;
        }
        let by_search = (0..p).find(|&x| {
            Digraph::delta_circulant(p, x, d)
                .ok()
                .and_then(|t| are_isomorphic(&g, &t))
                .is_some()
        });
        match by_search {
            Some(_) => fallback_hits += 1,
            None => report.violation(
                format!("circulant({p},{conn:?})"),
                "Γ_1 ≠ ∅ but not isomorphic to any Δ_{p,x,d}",
            ),
        }
    }
    report.notes.push(format!(
        "matched by multiplier: {multiplier_hits}; by general search: {fallback_hits}"
    ));
    Ok(report.finish(started))
}

/// Bit-level filters on an `n²`-bit relation code: out-regular, in-regular,
/// and loops on all vertices or none.
fn passes_filters(n: usize, code: u64) -> bool {
    let row_mask = (1u64 << n) - 1;
    let rows: Vec<u64> = (0..n).map(|u| code >> (u * n) & row_mask).collect();
    let d = rows[0].count_ones();
    if rows.iter().any(|r| r.count_ones() != d) {
        return false;
    }
    if (0..n).any(|v| rows.iter().filter(|r| *r >> v & 1 == 1).count() as u32 != d) {
        return false;
    }
    let loops = (0..n).filter(|&u| rows[u] >> u & 1 == 1).count();
    loops == 0 || loops == n
}

fn is_single_cycle(g: &Digraph) -> bool {
    let n = g.order();
    let mut v = 0;
    for step in 1..=n {
        v = g.neighbours(v).next().expect("valency 1");
        if v == 0 {
            return step == n;
        }
    }
    false
}

/// All `2^{n²}` relations on `n` points. Every vertex-primitive one with
/// `Γ_1 ≠ ∅` at composite `n` must be diagonal, complete or full (at prime
/// `n`, a `Δ_{n,x,d}` is also allowed), and every vertex-primitive one of
/// valency 1 must be the diagonal or a directed cycle of prime order.
pub fn exhaustive_small_suite(n: usize, allow_n5: bool) -> Result<SuiteReport> {
    let limit = if allow_n5 { 5 } else { 4 };
    if !(2..=limit).contains(&n) {
        return Err(Error::InvalidParameter(format!(
            "exhaustive suite supports 2 ≤ n ≤ {limit}, got {n}"
        )));
    }
    let started = Instant::now();
    let mut report = SuiteReport::new(format!("exhaustive({n})"));
    let (mut survivors, mut primitive, mut cycles) = (0u64, 0u64, 0u64);
    for code in 0u64..1 << (n * n) {
        report.examined += 1;
        if !passes_filters(n, code) {
            continue;
        }
        survivors += 1;
        let g = Digraph::from_code(n, code)?;
        if !automorphism_group(&g).is_primitive() {
            continue;
        }
        primitive += 1;
        let d = g.out_degree(0);
        let kappa = Layers::new(&g)?.kappa();
        if d != 1 && kappa != Some(1) {
            continue;
        }
        report.in_hypothesis += 1;
        let label = || format!("relation code {code:#x}");
        if d == 1 && degenerate(&g).is_none() {
            if !is_prime(n) {
                report.violation(label(), "valency-1 vertex-primitive digraph at composite order");
            } else if !is_single_cycle(&g) {
                report.violation(label(), "valency-1 vertex-primitive digraph is not a cycle");
            } else {
                cycles += 1;
                let delta = Digraph::delta_circulant(n, 0, 1)?;
                if are_isomorphic(&g, &delta).is_none() {
                    report.violation(label(), "directed cycle not matched to Δ_{n,0,1}");
                }
            }
        }
        if kappa == Some(1) && degenerate(&g).is_none() {
            let matched = is_prime(n)
                && (0..n).any(|x| {
                    Digraph::delta_circulant(n, x, d)
                        .ok()
                        .and_then(|t| are_isomorphic(&g, &t))
                        .is_some()
                });
            if !matched {
                report.violation(label(), format!("Γ_1 ≠ ∅ (d = {d}) outside the allowed list"));
            }
        }
    }
    report.notes.push(format!(
        "regular survivors: {survivors}; vertex-primitive: {primitive}; directed cycles of prime order: {cycles}"
    ));
    Ok(report.finish(started))
}

struct Kappa4Case {
    name: &'static str,
    graph: Digraph,
    d: usize,
    n: usize,
}

/// The three `κ = 4` graphs realising `(7,15)` and `(6,16)`, the feasible
/// list for `κ = 4`, and the looped Hamming variant as an experiment.
pub fn kappa4_fixture_suite() -> SuiteReport {
    let started = Instant::now();
    let mut report = SuiteReport::new("kappa4");
    let cases = [
        Kappa4Case {
            name: "kneser(6,2,loops)",
            graph: Digraph::kneser(6, 2, true).expect("valid parameters"),
            d: 7,
            n: 15,
        },
        Kappa4Case {
            name: "clebsch(loops)",
            graph: Digraph::clebsch(true),
            d: 6,
            n: 16,
        },
        Kappa4Case {
            name: "hamming_k4",
            graph: Digraph::hamming_k4(),
            d: 6,
            n: 16,
        },
    ];
    for case in &cases {
        report.examined += 1;
        report.in_hypothesis += 1;
        let aut = automorphism_group(&case.graph);
        if !aut.is_primitive() {
            report.violation(case.name, "not vertex-primitive");
            continue;
        }
        let r = match spectrum::spectrum_with_group(&case.graph, &aut) {
            Ok(r) => r,
            Err(e) => {
                report.violation(case.name, e.to_string());
                continue;
            }
        };
        if r.kappa != Some(4) {
            report.violation(case.name, format!("κ = {:?}, expected 4", r.kappa));
        }
        if !r.branch1.is_some_and(|b| b.holds) || (r.d, r.n) != (case.d, case.n) {
            report.violation(
                case.name,
                format!("expected branch 1 with (d,n) = ({},{}), got {r}", case.d, case.n),
            );
        }
        match spectrum::design_from_branch1(&case.graph) {
            Ok(design) => report.notes.push(format!(
                "{}: (d,n) = ({},{}), design ({},{},{})",
                case.name, r.d, r.n, design.v, design.k, design.lambda
            )),
            Err(e) => report.violation(case.name, format!("design extraction failed: {e}")),
        }
    }

    report.examined += 1;
    match spectrum::feasible_parameters(4) {
        Ok(f) if f.reduced_set_text() == "{(5,21),(6,16),(7,15)}" => {}
        Ok(f) => report.violation("feasible(4)", format!("reduced list {}", f.reduced_set_text())),
        Err(e) => report.violation("feasible(4)", e.to_string()),
    }
    report.notes.push(
        "(5,21): UNVERIFIED-BY-CONSTRUCTION; no order-21 fixture, excluded because 21 is not prime"
            .into(),
    );

    let looped = Digraph::hamming_k4().with_loops();
    report.examined += 1;
    match spectrum::spectrum(&looped) {
        Ok(r) => report.notes.push(format!(
            "hamming_k4(loops): d = {}, κ = {}, branch1 = {}",
            r.d,
            r.kappa.map_or("-".into(), |k| k.to_string()),
            r.branch1.is_some_and(|b| b.holds)
        )),
        Err(e) => report.notes.push(format!("hamming_k4(loops): {e}")),
    }
    report.finish(started)
}

/// The dichotomy on every vertex-primitive `∅ ≠ Γ ≠ Ω×Ω` among `fixtures`.
pub fn dichotomy_suite(fixtures: &[(String, Digraph)]) -> SuiteReport {
    let started = Instant::now();
    let mut report = SuiteReport::new("dichotomy");
    for (name, g) in fixtures {
        report.examined += 1;
        match spectrum::classify(g) {
            Ok(r) if r.trivial == spectrum::Trivial::None => report.in_hypothesis += 1,
            Ok(_) | Err(Error::NotRegular) => {}
            Err(e) => {
                report.in_hypothesis += 1;
                report.violation(name, e.to_string());
            }
        }
    }
    report.finish(started)
}

/// Every identity checked by [`spectrum::identity_violations`], on each fixture.
pub fn property_suite(fixtures: &[(String, Digraph)]) -> SuiteReport {
    let started = Instant::now();
    let mut report = SuiteReport::new("properties");
    for (name, g) in fixtures {
        report.examined += 1;
        let aut = automorphism_group(g);
        if aut.is_primitive() && !g.is_empty() && !g.is_full() {
            report.in_hypothesis += 1;
        }
        for v in spectrum::identity_violations(g, &aut) {
            report.violation(name, v);
        }
    }
    report.finish(started)
}

/// `check_p2_kernel` on every transformation of each kernel type, for
/// each group. A skip on a primitive group of the right shape counts as a
/// violation, as does any failure.
pub fn p2_kernel_suite(groups: &[GroupFixture], kernel_types: impl Fn(usize) -> Vec<KernelType>) -> Result<SuiteReport> {
    let started = Instant::now();
    let mut report = SuiteReport::new("p2-kernel");
    for fixture in groups {
        let g = &fixture.group;
        if !g.is_primitive() {
            report.violation(&fixture.name, "fixture group is not primitive");
            continue;
        }
        for kt in kernel_types(g.degree()) {
            let mut outcome: Result<()> = Ok(());
            sync::for_each_with_kernel_type(g.degree(), &kt, |f| {
                if outcome.is_err() {
                    return;
                }
                report.examined += 1;
                match sync::check_p2_kernel(g, f) {
                    Ok(KernelVerdict::Pass { .. }) => report.in_hypothesis += 1,
                    Ok(KernelVerdict::Skip { reason }) => {
                        report.violation(format!("{} f={:?}", fixture.name, f.images()), reason)
                    }
                    Ok(KernelVerdict::Fail { diagnostic }) => {
                        report.in_hypothesis += 1;
                        report.violation(
                            format!("{} f={:?}", fixture.name, f.images()),
                            serde_json::to_string(&diagnostic).expect("plain data"),
                        );
                    }
                    Err(e) => outcome = Err(e),
                }
            });
            outcome?;
        }
    }
    Ok(report.finish(started))
}

/// Kernel types `(2,2,1^{n−4})` and `(3,2,1^{n−5})`.
pub fn small_p2_kernel_types(n: usize) -> Vec<KernelType> {
    let mut out = Vec::new();
    for p in [2, 3] {
        if n >= p + 2 {
            let mut parts = vec![p, 2];
            parts.resize(n - p, 1);
            out.push(KernelType::new(parts));
        }
    }
    out
}

/// Deterministic pseudorandom `(G, f)` pairs of degree `2..=max_n`, with
/// one to three random generators.
pub fn random_sync_instances(count: usize, max_n: usize, seed: u64) -> Vec<(PermGroup, Transformation)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(2..=max_n);
            let k = rng.gen_range(1..=3);
            let gens = (0..k)
                .map(|_| {
                    let mut images: Vec<usize> = (0..n).collect();
                    for i in (1..n).rev() {
                        images.swap(i, rng.gen_range(0..=i));
                    }
                    Permutation::from_images(images).expect("shuffle is a bijection")
                })
                .collect();
            let f = (0..n).map(|_| rng.gen_range(0..n)).collect();
            (
                PermGroup::new(n, gens).expect("matching degrees"),
                Transformation::from_images(f).expect("images in range"),
            )
        })
        .collect()
}

/// Compares [`sync::synchronises`] with constant membership in the full
/// semigroup closure.
pub fn sync_oracle_suite<'a>(instances: impl IntoIterator<Item = (&'a PermGroup, Transformation)>) -> Result<SuiteReport> {
    let started = Instant::now();
    let mut report = SuiteReport::new("sync-oracle");
    for (g, f) in instances {
        report.examined += 1;
        report.in_hypothesis += 1;
        let bfs = sync::synchronises(g, &f)?.synchronises;
        let mut gens: Vec<Transformation> = g.generators().iter().map(Transformation::from).collect();
        gens.push(f.clone());
        let closure = sync::closure_contains_constant(&gens)?;
        if bfs != closure {
            report.violation(
                format!("G={:?} f={:?}", g.to_grp(), f.images()),
                format!("BFS says {bfs}, closure says {closure}"),
            );
        }
    }
    Ok(report.finish(started))
}
