use std::fs;
use std::io::{self, IsTerminal, Read};
use std::path::Path;

use anyhow::{bail, Context};
use serde_json::json;

use vprim::aut::automorphism_group;
use vprim::oracle::{self, SuiteReport};
use vprim::spectrum::{self, FeasibleParameters};
use vprim::sync::{self, KernelVerdict, Transformation};
use vprim::{fixtures, Digraph, Error, PermGroup};

use crate::cli::{Command, Construction, GroupAndMap, Input, Suite};
use crate::Failure;

type Outcome = Result<(), Failure>;

pub fn run(command: Command) -> Outcome {
    match command {
        Command::Construct { name, output } => construct(name, output.as_deref()),
        Command::Spectrum { input, json } => spectrum_cmd(&input, json, false),
        Command::Classify { input, json } => spectrum_cmd(&input, json, true),
        Command::Aut { input, json } => aut(&input, json),
        Command::Design { input, json } => design(&input, json),
        Command::Feasible { kappa, json } => feasible(kappa, json),
        Command::Sync { args, witness, json } => sync_cmd(&args, witness, json),
        Command::CollapseGraph { args, output } => collapse(&args, output.as_deref()),
        Command::CheckKernel { args, json } => check_kernel(&args, json),
        Command::Oracle { suite, json } => oracle_cmd(suite, json),
    }
}

fn read_input(path: Option<&Path>) -> anyhow::Result<String> {
    match path {
        None => read_stdin(),
        Some(p) if p == Path::new("-") => read_stdin(),
        Some(p) => fs::read_to_string(p).with_context(|| format!("reading {}", p.display())),
    }
}

fn read_stdin() -> anyhow::Result<String> {
    let mut text = String::new();
    io::stdin().read_to_string(&mut text).context("reading standard input")?;
    Ok(text)
}

fn read_digraph(input: &Input) -> anyhow::Result<Digraph> {
    let text = read_input(input.file.as_deref())?;
    let (g, duplicates) = Digraph::parse_dg(&text).context("parsing digraph")?;
    if duplicates > 0 {
        eprintln!("warning: {duplicates} duplicate arcs ignored");
    }
    Ok(g)
}

fn read_group_and_map(args: &GroupAndMap) -> anyhow::Result<(PermGroup, Transformation)> {
    let group = PermGroup::parse_grp(&read_input(Some(&args.group))?).context("parsing group")?;
    let map = Transformation::parse(&read_input(Some(&args.map))?).context("parsing map")?;
    if group.degree() != map.degree() {
        bail!(
            "group has degree {} but the map has degree {}",
            group.degree(),
            map.degree()
        );
    }
    Ok((group, map))
}

fn write_output(path: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// `PASS`/`FAIL` tags, coloured only on a terminal and when `NO_COLOR` is unset.
fn tag(ok: bool) -> String {
    let word = if ok { "PASS" } else { "FAIL" };
    let colour = io::stdout().is_terminal() && std::env::var_os("NO_COLOR").is_none_or(|v| v.is_empty());
    if colour {
        format!("\x1b[{}m{word}\x1b[0m", if ok { 32 } else { 31 })
    } else {
        word.to_string()
    }
}

fn construct(name: Construction, output: Option<&Path>) -> Outcome {
    let g = match name {
        Construction::Delta { p, x, d } => Digraph::delta_circulant(p, x, d)?,
        Construction::Kneser { m, k, loops } => Digraph::kneser(m, k, loops)?,
        Construction::Clebsch { loops } => Digraph::clebsch(loops),
        Construction::HammingK4 { loops } => {
            let g = Digraph::hamming_k4();
            if loops {
                g.with_loops()
            } else {
                g
            }
        }
        Construction::Petersen => Digraph::petersen(),
        Construction::Complete { n } => Digraph::complete(n)?,
        Construction::Diagonal { n } => Digraph::diagonal(n)?,
        Construction::Full { n } => Digraph::full(n)?,
    };
    write_output(output, &g.to_dg())?;
    Ok(())
}

fn not_regular(n: usize, json: bool) -> Failure {
    if json {
        println!("{}", json!({ "n": n, "trivial": "NotRegular" }));
    } else {
        println!("n: {n}\ntrivial: NotRegular");
    }
    Failure::Input(anyhow::anyhow!("digraph is not regular"))
}

fn spectrum_cmd(input: &Input, json: bool, classify: bool) -> Outcome {
    let g = read_digraph(input)?;
    let result = if classify {
        spectrum::classify(&g)
    } else {
        spectrum::spectrum(&g)
    };
    let report = match result {
        Ok(r) => r,
        Err(Error::NotRegular) => return Err(not_regular(g.order(), json)),
        Err(e @ Error::DichotomyViolated { .. }) => {
            let mut r = spectrum::spectrum(&g)?;
            r.trivial = spectrum::Trivial::None;
            print_report(&r.to_json(), &r.to_string(), json);
            return Err(Failure::Violation(e.to_string()));
        }
        Err(e) => return Err(e.into()),
    };
    print_report(&report.to_json(), &report.to_string(), json);
    Ok(())
}

fn print_report(json_text: &str, human: &str, json: bool) {
    if json {
        println!("{json_text}");
    } else {
        println!("{human}");
    }
}

fn aut(input: &Input, json: bool) -> Outcome {
    let g = read_digraph(input)?;
    let group = automorphism_group(&g);
    let gens: Vec<String> = group.generators().iter().map(ToString::to_string).collect();
    let order = group.order().to_string();
    if json {
        let order_value = match group.order_u64() {
            Some(o) => json!(o),
            None => json!(order),
        };
        let doc = json!({
            "n": g.order(),
            "order": order_value,
            "generators": gens,
            "transitive": group.is_transitive(),
            "primitive": group.is_primitive(),
        });
        println!("{doc}");
    } else {
        println!("n: {}", g.order());
        println!("order: {order}");
        for s in &gens {
            println!("generator: {s}");
        }
        println!("transitive: {}", group.is_transitive());
        println!("primitive: {}", group.is_primitive());
    }
    Ok(())
}

fn design(input: &Input, json: bool) -> Outcome {
    let g = read_digraph(input)?;
    let design = match spectrum::design_from_branch1(&g) {
        Ok(d) => d,
        Err(Error::NotRegular) => return Err(not_regular(g.order(), json)),
        Err(e @ Error::Branch1NotSatisfied) => return Err(Failure::Violation(e.to_string())),
        Err(e) => return Err(e.into()),
    };
    if json {
        println!("{}", serde_json::to_string(&design)?);
    } else {
        println!("v: {}", design.v);
        println!("k: {}", design.k);
        println!("lambda: {}", design.lambda);
        println!("projective_plane: {}", design.is_projective_plane);
        if let Some(note) = &design.prime_order_note {
            println!("note: {note}");
        }
        for block in &design.blocks {
            let pts: Vec<String> = block.iter().map(usize::to_string).collect();
            println!("block: {}", pts.join(" "));
        }
    }
    Ok(())
}

fn feasible(kappa: usize, json: bool) -> Outcome {
    let f: FeasibleParameters = spectrum::feasible_parameters(kappa)?;
    if json {
        let doc = json!({
            "kappa": f.kappa,
            "d": f.d_values(),
            "reduced": f.reduced_pairs(),
            "d_set": f.d_set_text(),
            "reduced_set": f.reduced_set_text(),
        });
        println!("{doc}");
    } else {
        println!("{f}");
    }
    Ok(())
}

fn sync_cmd(args: &GroupAndMap, witness: bool, json: bool) -> Outcome {
    let (group, map) = read_group_and_map(args)?;
    let mut result = sync::synchronises(&group, &map)?;
    if !witness {
        result.witness = None;
    }
    if json {
        println!("{}", serde_json::to_string(&result)?);
    } else {
        println!("synchronises: {}", result.synchronises);
        println!("reached_images: {}", result.reached_images);
        if let Some(word) = &result.witness {
            let letters: Vec<String> = word.iter().map(ToString::to_string).collect();
            println!("witness: {}", letters.join(" "));
        }
    }
    Ok(())
}

fn collapse(args: &GroupAndMap, output: Option<&Path>) -> Outcome {
    let (group, map) = read_group_and_map(args)?;
    let g = sync::non_collapsible_graph(&group, &map)?;
    write_output(output, &g.to_dg())?;
    Ok(())
}

fn check_kernel(args: &GroupAndMap, json: bool) -> Outcome {
    let (group, map) = read_group_and_map(args)?;
    let verdict = sync::check_p2_kernel(&group, &map)?;
    if json {
        println!("{}", serde_json::to_string(&verdict)?);
    } else {
        match &verdict {
            KernelVerdict::Pass { witness } => {
                let letters: Vec<String> = witness.iter().map(ToString::to_string).collect();
                println!("{} witness: {}", tag(true), letters.join(" "));
            }
            KernelVerdict::Skip { reason } => println!("SKIP {reason}"),
            KernelVerdict::Fail { diagnostic } => {
                println!("{} kernel parts A={:?} B={:?}", tag(false), diagnostic.part_a, diagnostic.part_b);
                println!("bipartite degrees: {:?}", diagnostic.degrees);
                print!("non-collapsible graph:\n{}", diagnostic.graph_dg);
            }
        }
    }
    match verdict {
        KernelVerdict::Fail { .. } => Err(Failure::Violation("group does not synchronise the map".into())),
        _ => Ok(()),
    }
}

fn oracle_cmd(suite: Suite, json: bool) -> Outcome {
    let report: SuiteReport = match suite {
        Suite::Circulant { p } => oracle::circulant_suite(p)?,
        Suite::Exhaustive { n, n5 } => oracle::exhaustive_small_suite(n, n5)?,
        Suite::Kappa4 => oracle::kappa4_fixture_suite(),
        Suite::Properties => oracle::property_suite(&fixtures::property_battery()),
        Suite::Dichotomy => oracle::dichotomy_suite(&fixtures::battery()),
        Suite::Kernel { max_degree } => {
            let groups: Vec<_> = (5..=usize::from(max_degree))
                .flat_map(fixtures::primitive_groups)
                .collect();
            oracle::p2_kernel_suite(&groups, oracle::small_p2_kernel_types)?
        }
        Suite::Sync { count, seed } => {
            let instances = oracle::random_sync_instances(count, 6, seed);
            oracle::sync_oracle_suite(instances.iter().map(|(g, f)| (g, f.clone())))?
        }
    };
    if json {
        println!("{}", report.to_json());
    } else {
        println!("{report}");
        println!("result: {}", tag(report.passed()));
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Violation(format!(
            "{} violations in suite {}",
            report.violations.len(),
            report.suite
        )))
    }
}

