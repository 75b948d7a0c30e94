use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use robustnet_core::export::{self, Meta};
use robustnet_core::{
    check_link_constraint, fixture_matrix, is_robust, optimal_links, robust_brute_force,
    robust_by_connectivity, savings_ratio, vertex_connectivity, Error, Factor, GrowthBuilder,
    InsertionStrategy, NodeId, RobustnessPolicy, StaticMethod, StaticSpec, VerificationReport, VerifyOptions,
};
use serde_json::Value;

use crate::{
    Coloring, ExportArgs, GrowArgs, Insert, PolicyName, ReportArgs, StaticArgs, VerifierArgs, VerifyArgs,
    VerifyMethod,
};

pub const VERIFY_FAILED: u8 = 1;
pub const USAGE: u8 = 2;
pub const RESOURCE_LIMIT: u8 = 3;

pub fn exit_code_for(e: &anyhow::Error) -> ExitCode {
    match e.downcast_ref::<Error>() {
        Some(Error::ResourceLimit { .. }) => ExitCode::from(RESOURCE_LIMIT),
        _ => ExitCode::from(USAGE),
    }
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn join_ids(ids: &[NodeId]) -> String {
    ids.iter().map(|u| u.to_string()).collect::<Vec<_>>().join(",")
}

fn fmt_bound(b: Option<f64>) -> String {
    b.map_or_else(|| "none".to_string(), |b| b.to_string())
}

fn options(v: &VerifierArgs) -> VerifyOptions {
    VerifyOptions {
        budget: v.budget,
        jobs: v.jobs.max(1),
    }
}

fn report_line(r: &VerificationReport) -> String {
    let method = serde_json::to_value(r.method).expect("method serializes");
    let mut line = format!(
        "robust={} nf={} method={}",
        r.robust,
        r.nf,
        method.as_str().unwrap_or_default()
    );
    if let Some(k) = r.kappa {
        write!(line, " kappa={k}").unwrap();
    }
    if let Some(c) = r.checked_subsets {
        write!(line, " checked_subsets={c}").unwrap();
    }
    if let Some(w) = &r.witness {
        write!(line, " witness={}", join_ids(w)).unwrap();
    }
    line
}

fn static_classes(method: StaticMethod, n: usize, m: Option<usize>) -> Option<Vec<usize>> {
    match method {
        StaticMethod::Circulant => None,
        StaticMethod::HalvesF1 | StaticMethod::HalvesF => Some(export::half_classes(n)),
        StaticMethod::Msets => {
            let s = n / (2 * m?);
            Some((0..n).map(|i| i / s).collect())
        }
    }
}

pub fn run_static(a: StaticArgs) -> Result<ExitCode> {
    let spec = StaticSpec {
        n: a.n,
        nf: a.nf,
        method: a.method,
        f: a.f,
        m: a.m,
    };
    let nf = spec.resolve_nf()?;
    let g = spec.build()?;
    let kappa = vertex_connectivity(&g);
    if let Some(path) = &a.out {
        let mut meta = Meta::new();
        meta.insert("method".into(), Value::from(a.method.name()));
        meta.insert("nf".into(), Value::from(nf));
        if let Some(f) = a.f {
            meta.insert("f".into(), Value::from(f.to_string()));
        }
        if let Some(m) = a.m {
            meta.insert("m".into(), Value::from(m));
        }
        meta.insert(
            "generator".into(),
            Value::from(concat!("robustnet ", env!("CARGO_PKG_VERSION"))),
        );
        write_file(path, &(export::to_json(&g, &meta) + "\n"))?;
    }
    if let Some(path) = &a.dot {
        let classes = static_classes(a.method, a.n, a.m);
        write_file(path, &export::to_dot(&g, classes.as_deref()))?;
    }
    println!(
        "n={} nf={nf} method={} links={} optimal_links={} kappa={kappa}",
        g.node_count(),
        a.method,
        g.link_count(),
        optimal_links(g.node_count(), nf)
    );
    Ok(ExitCode::SUCCESS)
}

fn policy_from(a: &GrowArgs) -> Result<RobustnessPolicy> {
    let need_f = || -> Result<Vec<_>> {
        if a.f.is_empty() {
            bail!(Error::InvalidArgument(format!(
                "--policy {:?} needs --f",
                a.policy
            )));
        }
        Ok(a.f.clone())
    };
    Ok(match a.policy {
        PolicyName::FixedNf => RobustnessPolicy::FixedNf {
            nf: a
                .nf
                .ok_or_else(|| Error::InvalidArgument("fixed-nf needs --nf".into()))?,
        },
        PolicyName::Fraction2f => RobustnessPolicy::Fraction2f { schedule: need_f()? },
        PolicyName::Fraction2mf => RobustnessPolicy::Fraction2mf {
            m: a.m
                .ok_or_else(|| Error::InvalidArgument("fraction-2mf needs --m".into()))?,
            schedule: if a.f.is_empty() {
                vec![Factor::integer(1)?]
            } else {
                a.f.clone()
            },
        },
        PolicyName::Half => RobustnessPolicy::Half,
        PolicyName::HalfPlusN => RobustnessPolicy::HalfPlusN {
            n: a.plus.unwrap_or(0),
        },
        PolicyName::VariableNf => {
            if a.nf_schedule.is_empty() {
                bail!(Error::InvalidArgument("variable-nf needs --nf-schedule".into()));
            }
            RobustnessPolicy::VariableNf {
                schedule: a.nf_schedule.clone(),
            }
        }
    })
}

pub fn run_grow(a: GrowArgs) -> Result<ExitCode> {
    let policy = policy_from(&a)?;
    let strategy = match a.insert {
        Insert::Latest => InsertionStrategy::Latest,
        Insert::Random => InsertionStrategy::Random(a.seed),
    };
    let seed_n = a.from.unwrap_or_else(|| policy.min_seed());
    let mut b = GrowthBuilder::new(policy, seed_n, strategy)?;
    let size = b.policy().step_size();
    if a.to < seed_n || !(a.to - seed_n).is_multiple_of(size) {
        bail!(Error::InvalidArgument(format!(
            "--to {} is not reachable from {seed_n} nodes in steps of {size}",
            a.to
        )));
    }
    let opts = options(&a.verifier);
    let mut failed = false;
    let mut check = |b: &GrowthBuilder| {
        let ev = b.trace().last().expect("seed event");
        let r = is_robust(b.graph(), ev.nf, &opts);
        if !r.robust {
            failed = true;
            println!("verify_failed step={} n={} {}", ev.step, ev.n, report_line(&r));
        }
    };
    if a.verify_each {
        check(&b);
    }
    while b.graph().node_count() < a.to {
        b.step()?;
        if a.verify_each {
            check(&b);
        }
    }
    let over: Vec<_> = b.trace().events.iter().filter(|e| !e.within_bound()).collect();
    for ev in &over {
        eprintln!(
            "bound_exceeded step={} n={} links={} bound={}",
            ev.step,
            ev.n,
            ev.links,
            fmt_bound(ev.bound)
        );
    }
    if let Some(path) = &a.trace {
        write_file(path, &export::trace_to_jsonl(b.trace()))?;
    }
    if let Some(path) = &a.out {
        let mut meta = Meta::new();
        meta.insert("policy".into(), Value::from(b.policy().name()));
        meta.insert("nf".into(), Value::from(b.current_nf()));
        meta.insert(
            "generator".into(),
            Value::from(concat!("robustnet ", env!("CARGO_PKG_VERSION"))),
        );
        write_file(path, &(export::to_json(b.graph(), &meta) + "\n"))?;
    }
    if let Some(path) = &a.dot {
        let classes = export::ring_classes(b.graph().node_count(), &b.rings());
        write_file(path, &export::to_dot(b.graph(), Some(&classes)))?;
    }
    let last = b.trace().last().expect("seed event");
    println!(
        "policy={} n={} nf={} links={} bound={} savings={:.6} steps={} bound_ok={}",
        b.policy(),
        last.n,
        last.nf,
        last.links,
        fmt_bound(last.bound),
        savings_ratio(b.graph()),
        b.trace().len() - 1,
        over.is_empty()
    );
    Ok(if failed {
        ExitCode::from(VERIFY_FAILED)
    } else {
        ExitCode::SUCCESS
    })
}

pub fn run_verify(a: VerifyArgs) -> Result<ExitCode> {
    let g = export::from_json(&read_file(&a.graph)?)?;
    let opts = options(&a.verifier);
    let report = match a.method {
        VerifyMethod::BruteForce => robust_brute_force(&g, a.nf, &opts)?,
        VerifyMethod::Auto => is_robust(&g, a.nf, &opts),
        VerifyMethod::Kappa => robust_by_connectivity(&g, a.nf),
    };
    let mut ok = report.robust;
    println!(
        "n={} links={} {}",
        g.node_count(),
        g.link_count(),
        report_line(&report)
    );
    if a.check_lg {
        let n = g.node_count();
        let holds = check_link_constraint(&g);
        let limit = (n * n + 4 * n).saturating_sub(8) / 4;
        println!("lg_ok={holds} links={} lg_limit={limit}", g.link_count());
        ok &= holds;
    }
    Ok(if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(VERIFY_FAILED)
    })
}

pub fn run_report(a: ReportArgs) -> Result<ExitCode> {
    let trace = export::trace_from_jsonl(&read_file(&a.trace)?)?;
    let g_full = trace.replay()?;
    let mut csv = String::from("step,n,nf,links,bound,savings\n");
    println!(
        "{:>6} {:>6} {:>6} {:>8} {:>12} {:>9}",
        "step", "n", "nf", "links", "bound", "savings"
    );
    for ev in &trace.events {
        let savings = savings_of(ev.n, ev.links);
        println!(
            "{:>6} {:>6} {:>6} {:>8} {:>12} {:>9.6}",
            ev.step,
            ev.n,
            ev.nf,
            ev.links,
            fmt_bound(ev.bound),
            savings
        );
        writeln!(
            csv,
            "{},{},{},{},{},{savings}",
            ev.step,
            ev.n,
            ev.nf,
            ev.links,
            fmt_bound(ev.bound)
        )
        .unwrap();
    }
    if let Some(path) = &a.csv {
        write_file(path, &csv)?;
    }
    if let Some(ev) = trace.last() {
        println!(
            "final_n={} nf={} links={} bound={} savings={} bound_ok={}",
            ev.n,
            ev.nf,
            ev.links,
            fmt_bound(ev.bound),
            savings_ratio(&g_full),
            trace.events.iter().all(|e| e.within_bound())
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn savings_of(n: usize, links: usize) -> f64 {
    if n < 2 {
        return 0.0;
    }
    1.0 - links as f64 / (n * (n - 1) / 2) as f64
}

pub fn run_export(a: ExportArgs) -> Result<ExitCode> {
    let (g, meta) = if let Some(path) = &a.graph {
        let doc = export::read_document(&read_file(path)?)?;
        (doc.graph, doc.meta)
    } else if let Some(path) = &a.trace {
        (export::replay_jsonl(&read_file(path)?)?, Meta::new())
    } else {
        let n = a.fixture.expect("clap enforces one input");
        let mut meta = Meta::new();
        meta.insert("method".into(), Value::from("fixture"));
        meta.insert("nf".into(), Value::from(n / 2));
        (fixture_matrix(n)?, meta)
    };
    let json = export::to_json(&g, &meta);
    match &a.out {
        Some(path) => write_file(path, &(json + "\n"))?,
        None if a.dot.is_none() => println!("{json}"),
        None => {}
    }
    if let Some(path) = &a.dot {
        let classes = match a.color {
            Coloring::None => None,
            Coloring::Halves => Some(export::half_classes(g.node_count())),
        };
        write_file(path, &export::to_dot(&g, classes.as_deref()))?;
    }
    if a.out.is_some() || a.dot.is_some() {
        println!("n={} links={}", g.node_count(), g.link_count());
    }
    Ok(ExitCode::SUCCESS)
}
