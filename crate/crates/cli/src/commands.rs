use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use serde_json::{json, Value};

use semiinf::format::{fixture, AlgebraDocument, ModuleDocument, Over};
use semiinf::module::Bimodule;
use semiinf::resolution::{Resolution, Strategy};
use semiinf::semiinf::{
    cross_check, les_check, run_oracle, semiinf_ext, stable_hom, tate_applicable, transport_to_sharp, ExtTable,
    Policy, Window, ORACLES,
};
use semiinf::setup::verify_setup;
use semiinf::sharp::{all_pass, build_sharp, entwining_sharp, frobenius_sharp, verify_sdi, Check, Sharp};
use semiinf::{Error, Field, FieldSpec, PrimeField, Rationals};

use crate::{Cli, Command, PairArgs, DISAGREE, OK, VERIFY};

pub const CLI_SCHEMA: &str = "semiinf/cli/v1";

pub struct Report {
    pub text: String,
    pub json: Value,
    pub code: u8,
}

pub fn write_json(path: &Path, v: &Value) -> Result<()> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    std::fs::write(path, s).with_context(|| format!("writing {}", path.display()))
}

/// Reads an algebra document from a file, or a built-in fixture by name.
fn load_algebra(arg: &str) -> Result<AlgebraDocument> {
    let path = Path::new(arg);
    if path.exists() {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {arg}"))?;
        return Ok(AlgebraDocument::from_json(&text)?);
    }
    fixture(arg).map_err(|_| anyhow!(Error::Parse(format!("{arg} is neither a file nor a built-in fixture"))))
}

fn algebra_of(cmd: &Command) -> &str {
    match cmd {
        Command::Verify { algebra } | Command::Sharp { algebra, .. } | Command::Resolve { algebra, .. } => algebra,
        Command::Stablehom { algebra, .. } => algebra,
        Command::Semiinf { pair, .. } | Command::Oracle { pair, .. } => &pair.algebra,
    }
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Verify { .. } => "verify",
        Command::Sharp { .. } => "sharp",
        Command::Resolve { .. } => "resolve",
        Command::Semiinf { .. } => "semiinf",
        Command::Oracle { .. } => "oracle",
        Command::Stablehom { .. } => "stablehom",
    }
}

pub fn run(cli: &Cli) -> Result<Report> {
    let doc = load_algebra(algebra_of(&cli.command))?;
    let spec = FieldSpec::parse(cli.field.as_deref().unwrap_or(&doc.field))?;
    let mut report = match spec {
        FieldSpec::Rationals => run_over(&Rationals, cli, &doc)?,
        FieldSpec::Prime(p) => run_over(&PrimeField::new(p)?, cli, &doc)?,
    };
    report.json = json!({
        "schema": CLI_SCHEMA,
        "command": command_name(&cli.command),
        "algebra": doc.name,
        "field": spec.render(),
        "exit_code": report.code,
        "result": report.json,
    });
    Ok(report)
}

fn parse_range(s: &str, what: &str) -> Result<(i32, i32)> {
    let bad = || anyhow!(Error::Parse(format!("--{what} expects lo:hi, got {s:?}")));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    let (a, b): (i32, i32) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

fn sharp_of<F: Field>(f: &F, doc: &AlgebraDocument) -> Result<Sharp<F>> {
    let setup = doc.setup(f)?;
    let report = verify_setup(&setup);
    if !report.passed() {
        bail!(Error::SetupNotVerified(format!("{} fails the triangular conditions; run verify", doc.name)));
    }
    Ok(build_sharp(&setup)?)
}

fn read_module_doc(path: &str) -> Result<ModuleDocument> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading module {path}"))?;
    Ok(ModuleDocument::from_json(&text)?)
}

/// A left `A`-module from a keyword or document.
fn a_module<F: Field>(sh: &Sharp<F>, spec: &str) -> Result<Bimodule<F>> {
    match spec {
        "k" => Ok(sh.ring_a.semisimple_top(0)?),
        "regular" => Ok(Bimodule::regular(&sh.setup.a).forget_right()),
        path => {
            let d = read_module_doc(path)?;
            if d.over != Over::A {
                bail!(Error::Parse(format!("{path} must be a module over A")));
            }
            Ok(d.module(&sh.setup.a)?)
        }
    }
}

/// The `A^#`-module `X` and, when known, the `A`-module it comes from along
/// a Frobenius isomorphism.
fn x_module<F: Field>(sh: &Sharp<F>, spec: &str) -> Result<(Bimodule<F>, Option<Bimodule<F>>)> {
    match spec {
        "k" => Ok((sh.ring_a_sharp.semisimple_top(0)?, Some(sh.ring_a.semisimple_top(0)?))),
        "regular" => Ok((
            Bimodule::regular(&sh.a_sharp).forget_right(),
            Some(Bimodule::regular(&sh.setup.a).forget_right()),
        )),
        path => {
            let d = read_module_doc(path)?;
            match d.over {
                Over::ASharp => Ok((d.module(&sh.a_sharp)?, None)),
                Over::A => {
                    let xa = d.module(&sh.setup.a)?;
                    let fr = tate_applicable(sh)
                        .map_err(|e| anyhow!(Error::Parse(format!("X over A needs a Frobenius algebra: {e}"))))?;
                    Ok((transport_to_sharp(sh, &fr, &xa)?, Some(xa)))
                }
            }
        }
    }
}

fn run_over<F: Field>(f: &F, cli: &Cli, doc: &AlgebraDocument) -> Result<Report> {
    let policy = |strategy: Strategy| Policy { strategy, cap: cli.depth_cap, ..Policy::default() };
    match &cli.command {
        Command::Verify { .. } => verify(f, doc),
        Command::Sharp { emit, .. } => sharp(f, doc, emit.as_deref()),
        Command::Resolve { module, side, depth, strategy, .. } => {
            let sh = sharp_of(f, doc)?;
            resolve(&sh, module, side, *depth, *strategy, cli.depth_cap)
        }
        Command::Semiinf { pair, strategy, oracle } => {
            let sh = sharp_of(f, doc)?;
            semiinf(&sh, doc, pair, &policy(*strategy), oracle, cli)
        }
        Command::Oracle { pair, name, strategy } => {
            let sh = sharp_of(f, doc)?;
            let w = Window::new(parse_range(&pair.i, "i")?, parse_range(&pair.n, "n")?);
            let (x, xa) = x_module(&sh, &pair.x)?;
            let y = a_module(&sh, &pair.y)?;
            let t = run_oracle(name, &sh, &x, xa.as_ref(), &y, w, &policy(*strategy))?;
            Ok(Report { text: t.render(), json: t.to_json(), code: OK })
        }
        Command::Stablehom { x, y, n, .. } => {
            let sh = sharp_of(f, doc)?;
            stablehom(&sh, x, y, parse_range(n, "n")?, &policy(Strategy::InductionStep))
        }
    }
}

fn verify<F: Field>(f: &F, doc: &AlgebraDocument) -> Result<Report> {
    let setup = match doc.setup(f) {
        Ok(s) => s,
        Err(e @ Error::Parse(_)) => return Err(e.into()),
        Err(e) => {
            let text = format!("{}: setup cannot be formed: {e}\nconditions (1)(2)(3): FAIL\n", doc.name);
            return Ok(Report { text, json: json!({ "pass": false, "error": e.to_string() }), code: VERIFY });
        }
    };
    let r = verify_setup(&setup);
    let mut text = String::new();
    for (k, c) in [("1", &r.condition1), ("2", &r.condition2), ("3", &r.condition3)] {
        let status = if c.pass { "PASS" } else { "FAIL" };
        text.push_str(&format!("condition ({k}): {status}  {}", c.detail));
        if let Some(w) = &c.witness {
            text.push_str(&format!("  [witness: {w}]"));
        }
        text.push('\n');
    }
    let pass = r.passed();
    text.push_str(&format!("conditions (1)(2)(3): {}\n", if pass { "PASS" } else { "FAIL" }));
    let json = json!({ "pass": pass, "report": r });
    Ok(Report { text, json, code: if pass { OK } else { VERIFY } })
}

fn render_checks(title: &str, checks: &[Check]) -> String {
    let mut s = format!("{title}: {}\n", if all_pass(checks) { "PASS" } else { "FAIL" });
    for c in checks {
        s.push_str(&format!("  {:<4} {}  {}\n", if c.pass { "ok" } else { "FAIL" }, c.name, c.detail));
    }
    s
}

fn sharp<F: Field>(f: &F, doc: &AlgebraDocument, emit: Option<&Path>) -> Result<Report> {
    let sh = sharp_of(f, doc)?;
    let sdi = verify_sdi(&sh)?;
    let a_doc = AlgebraDocument::from_algebra(&format!("{}#", doc.name), &sh.a_sharp);
    let mut text = format!("A# of {}: dimension {}, S: dimension {}\n", doc.name, sh.a_sharp.dim(), sh.s.dim());
    text.push_str(&render_checks("identities", &sdi));
    let mut pass = all_pass(&sdi);
    let ent = match entwining_sharp(&sh) {
        Ok(e) => {
            text.push_str(&render_checks("entwining", &e.checks));
            pass &= all_pass(&e.checks);
            json!({ "applicable": true, "checks": e.checks })
        }
        Err(Error::NotApplicable(why)) => json!({ "applicable": false, "detail": why }),
        Err(e) => return Err(e.into()),
    };
    let frob = match frobenius_sharp(&sh) {
        Ok(fr) => {
            text.push_str(&render_checks("Frobenius: A# ≅ A", &fr.checks));
            pass &= all_pass(&fr.checks);
            json!({ "applicable": true, "checks": fr.checks })
        }
        Err(Error::NotApplicable(why)) => {
            text.push_str(&format!("Frobenius: not applicable ({why})\n"));
            json!({ "applicable": false, "detail": why })
        }
        Err(e) => return Err(e.into()),
    };
    if let Some(path) = emit {
        write_json(path, &serde_json::to_value(&a_doc)?)?;
        text.push_str(&format!("wrote {}\n", path.display()));
    }
    let json = json!({
        "pass": pass,
        "a_sharp": a_doc,
        "s_dim": sh.s.dim(),
        "identities": sdi,
        "entwining": ent,
        "frobenius": frob,
    });
    Ok(Report { text, json, code: if pass { OK } else { VERIFY } })
}

fn resolve<F: Field>(
    sh: &Sharp<F>,
    module: &str,
    side: &str,
    depth: usize,
    strategy: Strategy,
    cap: usize,
) -> Result<Report> {
    let over_sharp = match module {
        "k" | "regular" => match side {
            "a" => false,
            "a-sharp" | "a#" => true,
            other => bail!(Error::Parse(format!("unknown side {other}"))),
        },
        path => read_module_doc(path)?.over == Over::ASharp,
    };
    let mut r = if over_sharp {
        Resolution::convex(sh, &x_module(sh, module)?.0, strategy, cap)?
    } else {
        Resolution::concave(sh, &a_module(sh, module)?, strategy, cap)?
    };
    r.extend_to(depth)?;
    let mut text = format!(
        "{} resolution ({}), {}\n",
        if over_sharp { "convex" } else { "concave" },
        strategy.name(),
        match r.length() {
            Some(l) => format!("length {l}"),
            None => format!("not finished after {} terms", r.computed()),
        }
    );
    let mut terms = Vec::new();
    for (j, t) in r.terms().iter().enumerate().take(depth + 1) {
        let dims = t.space().dims_by_degree();
        let parts: Vec<String> = dims.iter().map(|(d, n)| format!("{n}@{d}")).collect();
        text.push_str(&format!("  P_{j}: dim {:>3}  [{}]\n", t.dim(), parts.join(" ")));
        let by_degree: Vec<Value> = dims.iter().map(|(d, n)| json!([d, n])).collect();
        terms.push(json!({ "j": j, "dim": t.dim(), "by_degree": by_degree }));
    }
    let json = json!({
        "side": if over_sharp { "A#" } else { "A" },
        "strategy": strategy,
        "length": r.length(),
        "terms": terms,
    });
    Ok(Report { text, json, code: OK })
}

fn render_table(t: &ExtTable) -> String {
    let mut s = t.render();
    match t.bound {
        Some(b) => s.push_str(&format!("depth bound {b}\n")),
        None => s.push_str("depth bound: none\n"),
    }
    let slowest = t.witnesses.iter().max_by_key(|(_, w)| w.stable_from);
    if let Some(((i, n), w)) = slowest {
        s.push_str(&format!(
            "stabilization: all {} entries witnessed; slowest (i={i}, n={n}) stable from truncation {}\n",
            t.witnesses.len(),
            w.stable_from
        ));
    }
    for c in &t.oracle_checks {
        let status = match c.agreed {
            Some(true) => "agrees",
            Some(false) => "DISAGREES",
            None => "not applicable",
        };
        s.push_str(&format!("oracle {}: {status} ({})\n", c.name, c.detail));
    }
    s
}

fn semiinf<F: Field>(
    sh: &Sharp<F>,
    doc: &AlgebraDocument,
    pair: &PairArgs,
    policy: &Policy,
    oracle: &str,
    cli: &Cli,
) -> Result<Report> {
    let w = Window::new(parse_range(&pair.i, "i")?, parse_range(&pair.n, "n")?);
    let (x, xa) = x_module(sh, &pair.x)?;
    let y = a_module(sh, &pair.y)?;
    let mut t = semiinf_ext(sh, &x, &y, w, policy)?;
    let names: Vec<&str> = match oracle {
        "none" => vec![],
        "auto" => ORACLES.to_vec(),
        one if ORACLES.contains(&one) => vec![one],
        other => bail!(Error::Parse(format!("unknown oracle {other}"))),
    };
    let mut code = OK;
    let mut text = String::new();
    match cross_check(&mut t, &names, sh, &x, xa.as_ref(), &y, policy) {
        Ok(()) => {}
        Err(Error::OracleDisagreement(why)) => {
            let bundle = write_bundle(doc, pair, policy, &t, cli)?;
            text.push_str(&format!("oracle disagreement: {why}\nreproduction bundle: {}\n", bundle.display()));
            code = DISAGREE;
        }
        Err(e) => return Err(e.into()),
    }
    let text = format!("{}{text}", render_table(&t));
    Ok(Report { text, json: t.to_json(), code })
}

fn write_bundle(doc: &AlgebraDocument, pair: &PairArgs, policy: &Policy, t: &ExtTable, cli: &Cli) -> Result<PathBuf> {
    let dir = match &cli.json_out {
        Some(p) => p.parent().map(Path::to_path_buf).unwrap_or_default(),
        None => std::env::temp_dir(),
    };
    let module = |spec: &str| -> Value {
        match std::fs::read_to_string(spec).ok().and_then(|s| serde_json::from_str::<Value>(&s).ok()) {
            Some(v) => v,
            None => json!(spec),
        }
    };
    let bundle = json!({
        "schema": "semiinf/repro/v1",
        "algebra": doc,
        "x": module(&pair.x),
        "y": module(&pair.y),
        "window": { "i": pair.i, "n": pair.n },
        "strategy": policy.strategy,
        "depth_cap": policy.cap,
        "table": t.to_json(),
    });
    let path = dir.join(format!("semiinf-repro-{}.json", doc.name.replace(|c: char| !c.is_alphanumeric(), "_")));
    write_json(&path, &bundle)?;
    Ok(path)
}

fn stablehom<F: Field>(sh: &Sharp<F>, x: &str, y: &str, ns: (i32, i32), policy: &Policy) -> Result<Report> {
    let (xm, ym) = (a_module(sh, x)?, a_module(sh, y)?);
    let entries = stable_hom(&sh.ring_a, &xm, &ym, ns)?;
    let mut text = String::from("      n   hom  stable  through-projectives\n");
    for e in &entries {
        text.push_str(&format!("{:>7} {:>5} {:>7} {:>20}\n", e.n, e.hom, e.stable, e.rank_evaluation));
    }
    let mut code = OK;
    let les = match les_check(sh, &xm, &ym, ns, policy) {
        Ok(r) => {
            text.push_str(&format!("exact sequence check: {}\n", if r.pass { "PASS" } else { "FAIL" }));
            if !r.pass {
                code = VERIFY;
            }
            json!(r)
        }
        Err(Error::NotApplicable(why)) => {
            text.push_str(&format!("exact sequence check: not applicable ({why})\n"));
            json!(null)
        }
        Err(e) => return Err(e.into()),
    };
    Ok(Report { text, json: json!({ "entries": entries, "les": les }), code })
}
