//! Acceptance gate: one PASS/FAIL line per criterion, non-zero exit if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use vprim::aut::automorphism_group;
use vprim::fixtures::{self, GroupFixture};
use vprim::oracle::{self, SuiteReport};
use vprim::spectrum::{self, feasible_parameters};
use vprim::sync::{self, Transformation};
use vprim::{Digraph, Permutation};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn suite_ok(r: &SuiteReport) -> Result<(), String> {
    ensure(r.passed(), || {
        let first: Vec<String> = r
            .violations
            .iter()
            .take(3)
            .map(|v| format!("{}: {}", v.instance, v.diagnostic))
            .collect();
        format!("{} violations in {}: {}", r.violations.len(), r.suite, first.join("; "))
    })
}

fn within(started: Instant, budget: Duration, what: &str) -> Result<(), String> {
    let spent = started.elapsed();
    ensure(spent <= budget, || format!("{what} took {spent:?}, budget {budget:?}"))
}

fn dichotomy_on_battery() -> Outcome {
    let r = oracle::dichotomy_suite(&fixtures::battery());
    suite_ok(&r)?;
    ensure(r.in_hypothesis > 300, || format!("only {} primitive fixtures", r.in_hypothesis))?;
    Ok(format!("{} fixtures, {} in hypothesis", r.examined, r.in_hypothesis))
}

fn branch1_identities() -> Outcome {
    let check = |name: &str, g: &Digraph, d: usize, n: usize| -> Result<(), String> {
        let r = spectrum::classify(g).map_err(|e| format!("{name}: {e}"))?;
        let b = r.branch1.ok_or_else(|| format!("{name}: no branch1"))?;
        let expected = (n as u64 - 1) * (d as u64 - r.kappa.unwrap_or(0) as u64);
        ensure(
            b.holds && (r.d, r.n) == (d, n) && b.lhs == expected && b.lhs == (d * (d - 1)) as u64,
            || format!("{name}: {r}"),
        )
    };
    for n in 3..=16 {
        let g = Digraph::complete(n).unwrap();
        check(&format!("complete({n})"), &g, n - 1, n)?;
        let r = spectrum::spectrum(&g).unwrap();
        let b = r.branch1.unwrap();
        ensure(b.lhs == ((n - 1) * (n - 2)) as u64 && b.rhs == b.lhs, || format!("complete({n})"))?;
    }
    check("kneser(6,2,loops)", &Digraph::kneser(6, 2, true).unwrap(), 7, 15)?;
    check("clebsch(loops)", &Digraph::clebsch(true), 6, 16)?;
    check("hamming_k4", &Digraph::hamming_k4(), 6, 16)?;
    let reduced = feasible_parameters(4).unwrap().reduced_pairs();
    ensure(reduced.contains(&(7, 15)) && reduced.contains(&(6, 16)), || format!("{reduced:?}"))?;
    Ok("42 = 42 for (7,15); 30 = 30 for (6,16) twice; complete(n) for 3 ≤ n ≤ 16".into())
}

fn branch2_tightness() -> Outcome {
    let r = spectrum::classify(&Digraph::petersen()).map_err(|e| e.to_string())?;
    let k = r.kappa.ok_or("no kappa")?;
    let w = r.branch2.as_ref().ok_or("no branch2")?;
    ensure(k == 2, || format!("κ = {k}"))?;
    ensure(w.witnesses.contains(&2), || format!("witnesses {:?}", w.witnesses))?;
    ensure(r.valencies[2] == Some(6) && 6 == k * k + k, || format!("{r}"))?;
    Ok("κ = 2, d_2 = 6 = κ²+κ".into())
}

fn feasible_kappa4() -> Outcome {
    let f = feasible_parameters(4).map_err(|e| e.to_string())?;
    ensure(f.d_set_text() == "{5,6,7,8,10,16}", || f.d_set_text())?;
    ensure(f.reduced_set_text() == "{(5,21),(6,16),(7,15)}", || f.reduced_set_text())?;
    Ok(format!("{} and {}", f.d_set_text(), f.reduced_set_text()))
}

fn circulant_classification() -> Outcome {
    let started = Instant::now();
    let mut examined = 0;
    for p in fixtures::BATTERY_PRIMES {
        let r = oracle::circulant_suite(p).map_err(|e| e.to_string())?;
        suite_ok(&r)?;
        examined += r.examined;
    }
    ensure(examined == 8 + 32 + 128 + 2048 + 8192, || format!("{examined} instances"))?;
    within(started, Duration::from_secs(120), "circulant suites")?;
    Ok(format!("{examined} circulants in {:.1}s", started.elapsed().as_secs_f64()))
}

fn exhaustive_small() -> Outcome {
    let started = Instant::now();
    let r4 = oracle::exhaustive_small_suite(4, false).map_err(|e| e.to_string())?;
    within(started, Duration::from_secs(60), "exhaustive(4)")?;
    suite_ok(&r4)?;
    ensure(r4.examined == 65536, || format!("{} relations", r4.examined))?;
    let mut cycles = Vec::new();
    for n in 2..=4 {
        let r = oracle::exhaustive_small_suite(n, false).map_err(|e| e.to_string())?;
        suite_ok(&r)?;
        let count = r.notes[0].rsplit(' ').next().unwrap().to_string();
        cycles.push(format!("n={n}: {count}"));
    }
    // on two points the 2-cycle is complete(2), counted among the degenerate cases
    ensure(cycles == ["n=2: 0", "n=3: 2", "n=4: 0"], || format!("{cycles:?}"))?;
    Ok(format!("65536 relations, prime-order cycles {}", cycles.join(", ")))
}

fn group_fixtures() -> Result<Vec<GroupFixture>, String> {
    let mut out = Vec::new();
    for n in 5..=8 {
        for f in fixtures::primitive_groups(n) {
            ensure(f.group.order_u64() == Some(f.expected_order), || {
                format!("{} has order {}", f.name, f.group.order())
            })?;
            ensure(f.group.is_primitive(), || format!("{} is not primitive", f.name))?;
            out.push(f);
        }
    }
    Ok(out)
}

fn kernel_type_sync() -> Outcome {
    let groups = group_fixtures()?;
    let r = oracle::p2_kernel_suite(&groups, oracle::small_p2_kernel_types).map_err(|e| e.to_string())?;
    suite_ok(&r)?;
    ensure(r.in_hypothesis == r.examined, || "some instances were skipped".into())?;
    Ok(format!("{} groups, {} maps, all PASS in {:.1}s", groups.len(), r.examined, r.seconds))
}

fn sync_oracle() -> Outcome {
    let random = oracle::random_sync_instances(500, 6, 0xc0ffee);
    let mut instances: Vec<(&vprim::PermGroup, Transformation)> =
        random.iter().map(|(g, f)| (g, f.clone())).collect();
    let groups = group_fixtures()?;
    for fixture in groups.iter().filter(|f| f.group.degree() <= 6) {
        for kt in oracle::small_p2_kernel_types(fixture.group.degree()) {
            sync::for_each_with_kernel_type(fixture.group.degree(), &kt, |f| {
                instances.push((&fixture.group, f.clone()));
            });
        }
    }
    let r = oracle::sync_oracle_suite(instances).map_err(|e| e.to_string())?;
    suite_ok(&r)?;
    Ok(format!("{} instances agree", r.examined))
}

fn prime_degree_sync() -> Outcome {
    let started = Instant::now();
    let g = vprim::PermGroup::cyclic(5).unwrap();
    let mut checked = 0;
    let mut images = [0usize; 5];
    loop {
        let f = Transformation::from_images(images.to_vec()).unwrap();
        if !f.is_invertible() {
            checked += 1;
            let r = sync::synchronises(&g, &f).map_err(|e| e.to_string())?;
            ensure(r.synchronises, || format!("C5 does not synchronise {images:?}"))?;
        }
        let Some(k) = images.iter().rposition(|&v| v < 4) else { break };
        images[k] += 1;
        images[k + 1..].iter_mut().for_each(|v| *v = 0);
    }
    ensure(checked == 3125 - 120, || format!("{checked} maps"))?;
    within(started, Duration::from_secs(30), "prime-degree sync")?;
    Ok(format!("C5 synchronises all {checked} non-invertible maps"))
}

fn brute_force_aut_order(g: &Digraph) -> u64 {
    let n = g.order();
    let mut a: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    let check = |a: &[usize]| g.is_automorphism(&Permutation::from_images(a.to_vec()).unwrap());
    let mut count = u64::from(check(&a));
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            count += u64::from(check(&a));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    count
}

fn automorphism_oracle() -> Outcome {
    let small: Vec<(String, Digraph)> = fixtures::property_battery()
        .into_iter()
        .filter(|(_, g)| g.order() <= 8)
        .collect();
    for (name, g) in &small {
        let refined = automorphism_group(g).order_u64();
        let brute = brute_force_aut_order(g);
        ensure(refined == Some(brute), || format!("{name}: search {refined:?}, brute {brute}"))?;
    }
    let petersen = automorphism_group(&Digraph::petersen()).order_u64();
    ensure(petersen == Some(120), || format!("Petersen order {petersen:?}"))?;
    Ok(format!("{} fixtures match brute force; Petersen 120", small.len()))
}

fn property_suite() -> Outcome {
    let r = oracle::property_suite(&fixtures::property_battery());
    suite_ok(&r)?;
    Ok(format!("{} fixtures, {} vertex-primitive nontrivial", r.examined, r.in_hypothesis))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("dichotomy on the fixture battery", dichotomy_on_battery),
        ("branch-1 identities", branch1_identities),
        ("branch-2 tightness on Petersen", branch2_tightness),
        ("feasible parameters for kappa = 4", feasible_kappa4),
        ("prime-order circulant classification", circulant_classification),
        ("exhaustive relations at n <= 4", exhaustive_small),
        ("kernel type (p,2,1,...,1) synchronisation", kernel_type_sync),
        ("synchronisation BFS vs semigroup closure", sync_oracle),
        ("prime-degree transitive group synchronises", prime_degree_sync),
        ("automorphism search vs brute force", automorphism_oracle),
        ("spectrum identity suite", property_suite),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let outcome = run();
        let secs = started.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name} ({detail}) [{secs:.1}s]", i + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
