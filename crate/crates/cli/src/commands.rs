use std::io::Write;

use fiberlab_core::grammar::print_monomial;
use fiberlab_core::invariants::rstab_from_regs;
use fiberlab_core::koszul::{tor_dimensions, tor_map};
use fiberlab_core::{betti_table, Caps, Definitions, Error, Field, MonomialIdeal, Result};
use fiberlab_verify::formulas::{
    check_componentwise, check_depth_formula, check_fiber_invariants, check_fiber_splitting, check_filtration,
    check_reg_equigenerated, check_reg_formula, check_reg_increasing_setup,
};
use fiberlab_verify::graphs::check_reg_increasing;
use fiberlab_verify::{run_scenario, verify_tor_vanishing_lemma, Engine, FiberSetup, Graph, Provenance, Report, TorMode};
use serde_json::json;

use crate::output::{render_reports, Sink};
use crate::{Cli, Format, Mode, Verb};

pub const EXIT_FAIL: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_CAP: u8 = 3;

fn io_error(what: &str, e: std::io::Error) -> Error {
    Error::InvalidArgument(format!("{what}: {e}"))
}

pub fn run(cli: Cli) -> u8 {
    let format = if cli.json { Format::Json } else { cli.format };
    let mut sink = Sink::default();
    let code = match execute(&cli, format, &mut sink) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("fiberlab: {e}");
            if e.is_cap() {
                EXIT_CAP
            } else {
                EXIT_USAGE
            }
        }
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, sink.text()),
        None => std::io::stdout().lock().write_all(sink.text().as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("fiberlab: cannot write output: {e}");
        return EXIT_USAGE;
    }
    code
}

fn setup(cli: &Cli) -> Result<Field> {
    let mut caps = Caps::from_env()?;
    if let Some(overrides) = &cli.caps {
        caps = caps.with_overrides(overrides)?;
    }
    Caps::set_global(caps);
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(Error::InvalidArgument("--threads must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    }
    Field::from_characteristic(cli.characteristic.unwrap_or(0))
}

fn load(path: &str) -> Result<Definitions> {
    let text = std::fs::read_to_string(path).map_err(|e| io_error(&format!("cannot read {path}"), e))?;
    Definitions::parse(&text)
}

/// Resolves `FILE:NAME`.
fn named(arg: &str) -> Result<MonomialIdeal> {
    let (file, name) = arg
        .rsplit_once(':')
        .ok_or_else(|| Error::InvalidArgument(format!("expected FILE:NAME, got `{arg}`")))?;
    Ok(load(file)?.ideal(name)?.clone())
}

fn execute(cli: &Cli, format: Format, out: &mut Sink) -> Result<u8> {
    let field = setup(cli)?;
    match &cli.verb {
        Verb::Eval { file, expr } => {
            let a = load(file)?.eval(expr)?;
            match format {
                Format::Text => out.line(a.format_gens()),
                Format::Json => out.json(&json!({
                    "ring": a.ring().name(),
                    "gens": a.gens().iter().map(|g| print_monomial(a.ring(), g)).collect::<Vec<_>>(),
                })),
            }
        }
        Verb::Betti { file, name } => {
            let defs = load(file)?;
            let a = defs.ideal(name)?;
            let t = betti_table(a, field)?;
            crate::output::betti(out, format, &t);
        }
        Verb::Invariants { file, name } => {
            let defs = load(file)?;
            let a = defs.ideal(name)?;
            let e = Engine::new(field);
            let inv = e.invariants(a)?;
            let cl = e.componentwise_linear(a)?;
            crate::output::invariants(out, format, &inv, cl);
        }
        Verb::Tor { file, name, into } => {
            let defs = load(file)?;
            let a = defs.ideal(name)?;
            match into {
                None => crate::output::tor(out, format, field, &tor_dimensions(a, field, None)?),
                Some(b) => crate::output::tor_map(out, format, field, &tor_map(a, defs.ideal(b)?, field, None)?),
            }
        }
        Verb::Torvanish { file, source, target } => {
            let defs = load(file)?;
            let m = tor_map(defs.ideal(source)?, defs.ideal(target)?, field, None)?;
            let witness = m.nonzero_degrees().first().copied();
            match format {
                Format::Json => out.json(&match witness {
                    None => json!({"vanishing": true, "maxNonzero": null}),
                    Some((i, j)) => json!({"vanishing": false, "witness": {"i": i, "j": j}}),
                }),
                Format::Text => out.line(match witness {
                    None => "vanishing".to_string(),
                    Some((i, j)) => format!("not vanishing: nonzero at i={i} j={j}"),
                }),
            }
        }
        Verb::Verify { claim, i, j, s, graph, mode } => {
            let reports = verify(claim, i.as_deref(), j.as_deref(), *s, graph.as_deref(), *mode, field)?;
            return Ok(finish(out, format, cli.timing, &reports));
        }
        Verb::Scenario { name } => {
            let field = cli.characteristic.map(Field::from_characteristic).transpose()?;
            let run = run_scenario(name, field)?;
            let mut reports = run.reports.clone();
            reports.push(run.aggregate());
            return Ok(finish(out, format, cli.timing, &reports));
        }
    }
    Ok(0)
}

fn finish(out: &mut Sink, format: Format, timing: bool, reports: &[Report]) -> u8 {
    render_reports(out, format, timing, reports);
    if reports.iter().any(|r| r.cap_exceeded) {
        EXIT_CAP
    } else if reports.iter().all(Report::passed) {
        0
    } else {
        EXIT_FAIL
    }
}

fn verify(
    claim: &str,
    i: Option<&str>,
    j: Option<&str>,
    s: u32,
    graph: Option<&str>,
    mode: Mode,
    field: Field,
) -> Result<Vec<Report>> {
    let need = |x: Option<&str>, flag: &str| {
        x.ok_or_else(|| Error::InvalidArgument(format!("claim `{claim}` needs {flag}")))
            .and_then(named)
    };
    if s == 0 {
        return Err(Error::InvalidArgument("--s must be positive".into()));
    }
    let engine = Engine::new(field);
    let fiber = || -> Result<FiberSetup> { FiberSetup::new(&need(i, "--I")?, &need(j, "--J")?) };
    Ok(match claim {
        "thm-5.1" => vec![check_reg_formula(&fiber()?, s, &engine)],
        "cor-5.2" => vec![check_reg_equigenerated(&fiber()?, s, &engine)],
        "prop-3.4" => vec![check_fiber_invariants(&fiber()?, &engine)],
        "thm-6.1" => vec![check_depth_formula(&fiber()?, s, &engine)],
        "cor-7.2" => vec![check_componentwise(&fiber()?, s, &engine)],
        "thm-3.6" => vec![check_fiber_splitting(&fiber()?, &engine)],
        "prop-4.2" => vec![check_filtration(&fiber()?, s, &engine)],
        "cor-8.1" => vec![check_reg_increasing_setup(&fiber()?, s, &engine)],
        "lemma-4.1" => {
            let mode = match mode {
                Mode::Certificate => TorMode::Certificate,
                Mode::Exact => TorMode::Exact,
                Mode::Both => TorMode::Both,
            };
            vec![verify_tor_vanishing_lemma(&need(i, "--I")?, s, mode, field)]
        }
        "cor-8.2" => {
            let g = Graph::parse(graph.ok_or_else(|| Error::InvalidArgument("claim `cor-8.2` needs --graph".into()))?)?;
            vec![check_reg_increasing(&g, s, &engine)]
        }
        "rstab" => vec![rstab(&need(i, "--I")?, s, &engine)?],
        other => return Err(Error::InvalidArgument(format!("unknown claim `{other}`"))),
    })
}

/// Candidate stabilization index from `reg I^k`, `k ≤ s`; never certifying.
fn rstab(a: &MonomialIdeal, s: u32, engine: &Engine) -> Result<Report> {
    if s < 2 {
        return Err(Error::InvalidArgument("rstab needs --s >= 2".into()));
    }
    let started = std::time::Instant::now();
    let regs = (1..=s).map(|k| engine.reg(&a.power(k))).collect::<Result<Vec<_>>>()?;
    let c = rstab_from_regs(regs);
    let mut r = Report::new("rstab", Provenance::Oracle)
        .param("I", a.format_gens())
        .param("sCap", s)
        .with_note("candidate from sampled exponents only");
    r.computed("regs", json!(c.regs));
    r.computed("candidate", c.candidate);
    r.computed("slope", c.slope);
    r.computed("intercept", c.intercept);
    r.compare("certified", c.certified, false);
    Ok(r.settle(started))
}

