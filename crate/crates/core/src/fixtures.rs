//! Named groups and digraphs used by the oracle suites and the tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::perm::PermGroup;
use crate::reldig::Digraph;

const PSL2_5: &str = include_str!("../data/psl2_5.grp");
const PSL2_7: &str = include_str!("../data/psl2_7.grp");

/// A permutation group together with the order it is known to have.
#[derive(Debug, Clone)]
pub struct GroupFixture {
    pub name: String,
    pub group: PermGroup,
    pub expected_order: u64,
}

fn fixture(name: &str, group: PermGroup, expected_order: u64) -> GroupFixture {
    GroupFixture {
        name: name.to_string(),
        group,
        expected_order,
    }
}

fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

/// `PSL(2,5)` acting on the 6 points of the projective line.
pub fn psl2_5() -> PermGroup {
    PermGroup::parse_grp(PSL2_5).expect("bundled generators parse")
}

/// `PSL(2,7)` acting on the 8 points of the projective line.
pub fn psl2_7() -> PermGroup {
    PermGroup::parse_grp(PSL2_7).expect("bundled generators parse")
}

/// Primitive groups of degree `n ∈ 5..=8`.
pub fn primitive_groups(n: usize) -> Vec<GroupFixture> {
    let nn = n as u64;
    let mut out = Vec::new();
    if crate::reldig::is_prime(n) {
        let root = (2..n)
            .find(|&g| (1..n - 1).all(|k| pow_mod(g, k, n) != 1))
            .expect("prime modulus has a primitive root");
        out.push(fixture(&format!("C{n}"), PermGroup::cyclic(n).unwrap(), nn));
        out.push(fixture(&format!("D{n}"), PermGroup::dihedral(n).unwrap(), 2 * nn));
        out.push(fixture(
            &format!("AGL(1,{n})"),
            PermGroup::affine(n, root).unwrap(),
            nn * (nn - 1),
        ));
    }
    match n {
        6 => out.push(fixture("PSL(2,5)", psl2_5(), 60)),
        8 => out.push(fixture("PSL(2,7)", psl2_7(), 168)),
        _ => {}
    }
    out.push(fixture(&format!("A{n}"), PermGroup::alternating(n).unwrap(), factorial(nn) / 2));
    out.push(fixture(&format!("S{n}"), PermGroup::symmetric(n).unwrap(), factorial(nn)));
    out
}

fn pow_mod(base: usize, exp: usize, m: usize) -> usize {
    (0..exp).fold(1, |acc, _| acc * base % m)
}

pub const BATTERY_PRIMES: [usize; 5] = [3, 5, 7, 11, 13];

/// Every `Δ_{p,x,d}` with `p ∈ {3,5,7,11,13}`, `x < p`, `1 ≤ d ≤ p−1`, the
/// Petersen graph, the three `κ = 4` graphs and `complete(n)` for `2 ≤ n ≤ 16`.
pub fn battery() -> Vec<(String, Digraph)> {
    let mut out = Vec::new();
    for p in BATTERY_PRIMES {
        for x in 0..p {
            for d in 1..p {
                out.push((
                    format!("delta({p},{x},{d})"),
                    Digraph::delta_circulant(p, x, d).unwrap(),
                ));
            }
        }
    }
    out.push(("petersen".into(), Digraph::petersen()));
    out.push(("kneser(6,2,loops)".into(), Digraph::kneser(6, 2, true).unwrap()));
    out.push(("clebsch(loops)".into(), Digraph::clebsch(true)));
    out.push(("hamming_k4".into(), Digraph::hamming_k4()));
    for n in 2..=16 {
        out.push((format!("complete({n})"), Digraph::complete(n).unwrap()));
    }
    out
}

/// Cayley digraphs of `Z_n` for `2 ≤ n ≤ 12` with seeded random connection
/// sets. Vertex-transitive, often imprimitive.
pub fn random_cayley(count: usize, seed: u64) -> Vec<(String, Digraph)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(2..=12);
            let conn: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.4)).collect();
            (
                format!("cayley({n},{conn:?})"),
                Digraph::circulant(n, &conn).unwrap(),
            )
        })
        .collect()
}

/// The battery extended by `diagonal`/`full` for `n ≤ 16`, the looped
/// Hamming variant and 64 random Cayley digraphs.
pub fn property_battery() -> Vec<(String, Digraph)> {
    let mut out = battery();
    for n in 1..=16 {
        out.push((format!("diagonal({n})"), Digraph::diagonal(n).unwrap()));
        out.push((format!("full({n})"), Digraph::full(n).unwrap()));
    }
    out.push(("complete(1)".into(), Digraph::complete(1).unwrap()));
    out.push(("hamming_k4(loops)".into(), Digraph::hamming_k4().with_loops()));
    out.extend(random_cayley(64, 0x5eed));
    out
}
