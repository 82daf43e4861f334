use std::fmt::Write as _;

use anyhow::{anyhow, bail, Result};
use kgraph_twist::algebra::{
    ck_verify, fejer_check, fejer_defect, fejer_mean, grade, grading_check, intocore_check, intocore_samples,
    matrix_units_check, AlgebraElement, AlgebraError, TwistContext,
};
use kgraph_twist::bundle::{fiber_eval, norm_scan, BundleError, Character, PullbackContext, PullbackElement, RepConfig};
use kgraph_twist::cyclo::Cyclo;
use kgraph_twist::expr::{format_element, parse_element};
use kgraph_twist::grp::{
    class_normal_form, ext_inv, CoeffGroup, ext_mul, sample_triples, totally_skew_check, CheckSample, Cocycle, CocycleKind, Group,
    SkewVerdict,
};
use kgraph_twist::kgraph::{aperiodicity_check, cofinality_check, simplicity_verdict, KGraphError, StructureBounds};
use kgraph_twist::phase::{format_rational, Rational};
use kgraph_twist::scalar::{Complex64, Scalar};
use kgraph_twist::workspace::Workspace;

use crate::input::{load_workspace, parse_ext, parse_group_elem, parse_phase, resolve_cocycle};
use crate::{Cli, CocycleCmd, Command, ExtensionCmd, FiberCmd, Mode, Semantic, Suite};

/// Runs one command. `Ok(false)` is a failed verdict (exit 1).
pub fn run(cli: &Cli) -> Result<bool> {
    match cli.mode {
        Mode::Exact => run_in::<Cyclo>(cli),
        Mode::Float => run_in::<Complex64>(cli),
    }
}

fn run_in<S: Scalar>(cli: &Cli) -> Result<bool> {
    match &cli.command {
        Command::Validate => validate(cli),
        Command::Mul { a, b } => {
            let (ws, ctx) = algebra_context(cli)?;
            let (x, y) = (parse::<S>(&ctx, a)?, parse::<S>(&ctx, b)?);
            emit(cli, &format_element(ws.graph(), &ctx.mul(&x, &y)))
        }
        Command::Star { a } => {
            let (ws, ctx) = algebra_context(cli)?;
            let x = parse::<S>(&ctx, a)?;
            emit(cli, &format_element(ws.graph(), &ctx.star(&x)))
        }
        Command::Grade { a } => {
            let (ws, ctx) = algebra_context(cli)?;
            let x = parse::<S>(&ctx, a)?;
            let mut out = String::new();
            for (g, part) in grade(&ctx, &x) {
                writeln!(out, "{g}: {}", format_element(ws.graph(), &part))?;
            }
            if out.is_empty() {
                out.push_str("0\n");
            }
            emit(cli, out.trim_end())
        }
        Command::Fejer { a, n } => {
            let (ws, ctx) = algebra_context(cli)?;
            let x = parse::<S>(&ctx, a)?;
            let k = ws.graph().rank();
            let big_n = match n.len() {
                1 => vec![n[0]; k],
                l if l == k => n.clone(),
                l => bail!("--n needs 1 or {k} values, got {l}"),
            };
            let mean = fejer_mean(&x, &big_n);
            let out = format!("mean: {}\ndefect: {:.12}", format_element(ws.graph(), &mean), fejer_defect(&x, &big_n));
            emit(cli, &out)
        }
        Command::Verify { suite, samples, seed } => verify::<S>(cli, *suite, *samples, *seed),
        Command::Structure => structure(cli),
        Command::Scan { a, den, radius, grid } => scan::<S>(cli, a, *den, *radius, *grid),
        Command::Cocycle(op) => cocycle(cli, op),
        Command::Extension(op) => extension(cli, op),
        Command::Fiber(FiberCmd::Eval { a, theta, z }) => fiber::<S>(cli, a, theta, z),
    }
}

fn emit(cli: &Cli, text: &str) -> Result<bool> {
    match &cli.out {
        Some(path) => std::fs::write(path, format!("{text}\n"))?,
        None => println!("{text}"),
    }
    Ok(true)
}

fn parse<S: Scalar>(ctx: &TwistContext, src: &str) -> Result<AlgebraElement<S>> {
    parse_element(ctx, src).map_err(|e| anyhow!("in '{src}': {e}"))
}

fn selected_cocycle(cli: &Cli, ws: Option<&Workspace>) -> Result<Option<Cocycle>> {
    cli.cocycle.as_deref().map(|name| resolve_cocycle(ws, name)).transpose()
}

/// Workspace and twisted context for the algebra commands. Every failure
/// here is an input error.
fn algebra_context(cli: &Cli) -> Result<(Workspace, TwistContext)> {
    let ws = load_workspace(cli.spec.as_deref())?;
    let sigma = selected_cocycle(cli, Some(&ws))?;
    let ctx = ws.context(Some(&cli.functor), sigma.as_ref())?;
    Ok((ws, ctx))
}

fn bound(cli: &Cli, k: usize, default: u32) -> Vec<u32> {
    vec![cli.bound.unwrap_or(default); k]
}

fn validate(cli: &Cli) -> Result<bool> {
    let ws = load_workspace(cli.spec.as_deref())?;
    let g = ws.graph();
    let mut ok = true;
    let mut out = String::new();
    let report = g.validate();
    ok &= report.passed();
    writeln!(out, "graph: {report}")?;
    for (name, f) in ws.functors() {
        let bad = f.compatibility_violations(g);
        if bad.is_empty() {
            writeln!(out, "functor {name}: compatible")?;
        } else {
            ok = false;
            writeln!(out, "functor {name}: incompatible with squares {}", bad.join(", "))?;
        }
    }
    let mut cocycles: Vec<(String, Cocycle)> = ws.cocycles().iter().map(|(n, c)| (n.clone(), c.clone())).collect();
    if let Some(name) = &cli.cocycle {
        if !ws.cocycles().contains_key(name) {
            cocycles.push((name.clone(), resolve_cocycle(Some(&ws), name)?));
        }
    }
    for (name, c) in &cocycles {
        let report = c.check(&default_sample(c.group()));
        ok &= report.passed();
        writeln!(out, "cocycle {name}: {}", report.to_string().trim_end())?;
    }
    emit(cli, out.trim_end())?;
    Ok(ok)
}

fn default_sample(group: &Group) -> CheckSample {
    match group {
        Group::Finite(g) if g.order() <= 40 => CheckSample::Exhaustive,
        g => sample_triples(g, 200, 4, 0),
    }
}

fn verify<S: Scalar>(cli: &Cli, suite: Suite, samples: usize, seed: u64) -> Result<bool> {
    let ws = load_workspace(cli.spec.as_deref())?;
    let sigma = selected_cocycle(cli, Some(&ws))?;
    let functor = ws.functor(&cli.functor)?.clone();
    let sigma = sigma.unwrap_or_else(|| Cocycle::trivial(functor.target().clone(), CoeffGroup::Circle));
    // grading must run on incompatible functors to be able to report them
    let ctx = if suite == Suite::Grading {
        TwistContext::without_functor_check(ws.graph().clone(), functor, sigma)
    } else {
        TwistContext::new(ws.graph().clone(), functor, sigma)
    }
    .map_err(verdict_error)?;
    let g = ws.graph();
    let k = g.rank();
    let report = match suite {
        Suite::Ck => ck_verify::<S>(&ctx, &bound(cli, k, 2)),
        Suite::MatrixUnits => {
            let n = bound(cli, k, 2);
            let mut r = matrix_units_check::<S>(&ctx, 0, &n);
            for v in 1..g.num_vertices() {
                r.merge(matrix_units_check::<S>(&ctx, v, &n));
            }
            r
        }
        Suite::Grading => grading_check::<S>(&ctx, samples, &bound(cli, k, 2), seed),
        Suite::Fejer => fejer_check::<S>(&ctx, samples, &bound(cli, k, 2), 4, seed),
        Suite::Intocore => intocore_check::<S>(&ctx, &intocore_samples(&ctx, &bound(cli, k, 1))),
    };
    emit(cli, report.to_string().trim_end())?;
    Ok(report.passed())
}

/// Invalid graphs, cocycles and functors are verdicts; the rest is input.
fn verdict_error(e: AlgebraError) -> anyhow::Error {
    match e {
        AlgebraError::InvalidGraph(_)
        | AlgebraError::InvalidCocycle(_)
        | AlgebraError::Graph(KGraphError::IncompatibleFunctor(_)) => Semantic(e.to_string()).into(),
        other => other.into(),
    }
}

fn structure(cli: &Cli) -> Result<bool> {
    let ws = load_workspace(cli.spec.as_deref())?;
    let g = ws.graph();
    let report = g.validate();
    if !report.passed() {
        return Err(Semantic(format!("graph fails validation: {report}")).into());
    }
    let mut bounds = StructureBounds::defaults(g);
    if let Some(b) = cli.bound {
        bounds.degree_bound = vec![b; g.rank()];
    }
    let mut out = String::new();
    let aper = aperiodicity_check(g, &bounds.degree_bound, &bounds.pair_bound);
    let cof = cofinality_check(g, bounds.cofinality_bound);
    writeln!(out, "aperiodicity: {}", aper.describe(g))?;
    writeln!(out, "cofinality: {}", cof.describe(g))?;
    writeln!(out, "simplicity: {}", simplicity_verdict(g, &bounds))?;
    for (name, c) in ws.cocycles() {
        if let Some(a) = rational_matrix(c) {
            writeln!(out, "totally-skew {name}: {}", skew_text(&a))?;
        }
    }
    emit(cli, out.trim_end())
}

fn rational_matrix(c: &Cocycle) -> Option<Vec<Vec<Rational>>> {
    match c.kind() {
        CocycleKind::MatrixCircle(rows) => {
            rows.iter().map(|r| r.iter().map(|p| p.as_exact()).collect::<Option<Vec<_>>>()).collect()
        }
        _ => None,
    }
}

fn skew_text(a: &[Vec<Rational>]) -> String {
    match totally_skew_check(a) {
        SkewVerdict::TotallySkew => "TotallySkew".into(),
        SkewVerdict::NotTotallySkew { witness } => {
            let w: Vec<String> = witness.iter().map(|x| x.to_string()).collect();
            format!("NotTotallySkew, witness ({})", w.join(","))
        }
    }
}

fn scan<S: Scalar>(cli: &Cli, a: &str, den: u32, radius: i64, grid: usize) -> Result<bool> {
    let ws = load_workspace(cli.spec.as_deref())?;
    let ctx = TwistContext::untwisted(ws.graph().clone())?;
    let x = parse::<S>(&ctx, a)?;
    let table = match norm_scan(ws.graph(), &x, den, RepConfig { grid, radius }) {
        Ok(t) => t,
        Err(e @ BundleError::UnsupportedShape(_)) => return Err(Semantic(e.to_string()).into()),
        Err(e) => return Err(e.into()),
    };
    let csv = table.to_csv();
    match &cli.out {
        Some(path) => {
            std::fs::write(path, &csv)?;
            println!("wrote {} rows to {}", table.rows.len(), path.display());
        }
        None => print!("{csv}"),
    }
    Ok(true)
}

fn command_cocycle(cli: &Cli) -> Result<Cocycle> {
    let name = cli.cocycle.as_deref().ok_or_else(|| anyhow!("--cocycle is required"))?;
    let ws = match &cli.spec {
        Some(p) => Some(load_workspace(Some(p))?),
        None => None,
    };
    resolve_cocycle(ws.as_ref(), name)
}

fn cocycle(cli: &Cli, op: &CocycleCmd) -> Result<bool> {
    let c = command_cocycle(cli)?;
    match op {
        CocycleCmd::Eval { g, h } => {
            let (g, h) = (parse_group_elem(c.group(), g)?, parse_group_elem(c.group(), h)?);
            emit(cli, &c.eval(&g, &h)?.to_string())
        }
        CocycleCmd::Check { samples, radius, seed } => {
            let sample = match c.group() {
                Group::Finite(g) if g.order() <= 40 => CheckSample::Exhaustive,
                g => sample_triples(g, *samples, *radius, *seed),
            };
            let report = c.check(&sample);
            emit(cli, report.to_string().trim_end())?;
            Ok(report.passed())
        }
        CocycleCmd::NormalForm => {
            let a = rational_matrix(&c).ok_or_else(|| anyhow!("normal forms need an exact matrix cocycle"))?;
            let rows: Vec<String> = class_normal_form(&a)
                .iter()
                .map(|r| r.iter().map(format_rational).collect::<Vec<_>>().join(" "))
                .collect();
            emit(cli, &rows.join("\n"))
        }
        CocycleCmd::TotallySkew => {
            let a = rational_matrix(&c).ok_or_else(|| anyhow!("total skewness needs an exact matrix cocycle"))?;
            emit(cli, &skew_text(&a))
        }
    }
}

fn extension(cli: &Cli, op: &ExtensionCmd) -> Result<bool> {
    let c = command_cocycle(cli)?;
    let r = match op {
        ExtensionCmd::Mul { x, y } => ext_mul(&c, &parse_ext(&c, x)?, &parse_ext(&c, y)?)?,
        ExtensionCmd::Inv { x } => ext_inv(&c, &parse_ext(&c, x)?)?,
    };
    emit(cli, &r.to_string())
}

fn fiber<S: Scalar>(cli: &Cli, a: &str, theta: &[String], z: &[i64]) -> Result<bool> {
    let ws = load_workspace(cli.spec.as_deref())?;
    let name = cli.cocycle.as_deref().ok_or_else(|| anyhow!("--cocycle (integer-valued) is required"))?;
    let sigma = resolve_cocycle(Some(&ws), name)?;
    let pb = PullbackContext::new(ws.graph().clone(), ws.functor(&cli.functor)?.clone(), sigma)?;
    let d = pb.coeff_rank();
    let z = if z.is_empty() { vec![0; d] } else { z.to_vec() };
    if z.len() != d {
        bail!("--z needs {d} entries, got {}", z.len());
    }
    let gamma = Character::new(theta.iter().map(|t| parse_phase(t)).collect::<Result<_>>()?);
    let base = parse::<S>(pb.base(), a)?;
    let mut lifted = PullbackElement::zero();
    for (t, c) in base.iter() {
        lifted.add_term(pb.lift(z.clone(), t.clone())?, c.clone());
    }
    let image = fiber_eval(&pb, &gamma, &lifted)?;
    emit(cli, &format_element(ws.graph(), &image))
}

