use std::io::{self, Write};
use std::path::Path;
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use cayley_drg::bridge::{
    bridge_construct_dih, bridge_construct_embed, bridge_extract, dihedral_subanalysis, semidirect_guarantee,
    transport_no_involutions, DihedralAnalysis,
};
use cayley_drg::catalog;
use cayley_drg::cayley::{build_cayley, CayleyGraph};
use cayley_drg::designs::development;
use cayley_drg::diffsets::{
    difference_profile, find_forbidden_subgroup, is_difference_set, is_partial_geometric_ds,
    is_partial_mu_geometric_ds, is_relative_difference_set, is_symmetric_rds,
};
use cayley_drg::group::{make_group, GroupSpec, GroupTable};
use cayley_drg::report::Verdict;
use cayley_drg::search::{
    nonexistence_certificate, search, ConnectionTarget, Limits, SearchFamily, SearchTask,
};
use cayley_drg::spectrum::{self, Factor};

use crate::input::{load_group, parse_array, parse_element, parse_set, parse_subgroup, write_dot};
use crate::{
    BridgeCommand, CatalogCommand, CayleyCommand, CliError, Command, DevelopArgs, DiffsetCommand, GraphInput,
    GroupCommand, Kind, Outcome, SearchArgs, SearchKind, SpectrumCommand,
};

const SCHEMA: u32 = 1;

// A closed stdout (e.g. `| head`) is not an error worth reporting.
fn emit(value: &Value) {
    let _ = writeln!(io::stdout().lock(), "{}", serde_json::to_string_pretty(value).expect("JSON values serialize"));
}

fn emit_line(value: &Value) {
    let _ = writeln!(io::stdout().lock(), "{}", serde_json::to_string(value).expect("JSON values serialize"));
}

fn to_value(x: impl Serialize) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

pub fn run(command: Command) -> Result<Outcome, CliError> {
    match command {
        Command::Group(c) => group(c),
        Command::Cayley(CayleyCommand::Check { input, expect }) => cayley_check(&input, expect.as_deref()),
        Command::Diffset(c) => diffset(c),
        Command::Develop(args) => develop(&args),
        Command::Bridge(c) => bridge(c),
        Command::Spectrum(c) => spectrum_command(c),
        Command::Search(args) => search_command(&args),
        Command::Catalog(c) => catalog_command(c),
    }
}

fn group(command: GroupCommand) -> Result<Outcome, CliError> {
    match command {
        GroupCommand::Make { spec, out } => {
            let spec: GroupSpec = spec.parse()?;
            let text = make_group(&spec)?.to_json();
            match out {
                Some(path) => std::fs::write(path, text)?,
                None => {
                    let _ = writeln!(io::stdout().lock(), "{text}");
                }
            }
        }
        GroupCommand::Info { group } => {
            let g = load_group(&group)?;
            let subgroups: Vec<Vec<String>> =
                g.index2_subgroups().iter().map(|h| g.set_labels(h.elements())).collect();
            let orders: Vec<usize> = g.elements().map(|x| g.element_order(x)).collect();
            emit(&json!({
                "schema": SCHEMA,
                "order": g.order(),
                "identity": g.label(g.identity()),
                "abelian": g.is_abelian(),
                "labels": g.labels(),
                "element_orders": orders,
                "involutions": g.set_labels(&g.involutions(None)),
                "index2_subgroups": subgroups,
            }));
        }
    }
    Ok(Outcome::Verified)
}

fn load_cayley(input: &GraphInput) -> Result<CayleyGraph, CliError> {
    let g = load_group(&input.group)?;
    let s = parse_set(&g, &input.set)?;
    Ok(build_cayley(g, &s)?)
}

fn dot_with_labels(path: Option<&Path>, cay: &CayleyGraph) -> Result<(), CliError> {
    write_dot(path, || cay.graph().to_dot(Some(cay.group().labels())))
}

fn graph_summary(cay: &CayleyGraph) -> Result<Value, CliError> {
    let g = cay.group();
    Ok(json!({
        "connection_set": g.set_labels(cay.connection_set()),
        "report": to_value(cay.report()?),
    }))
}

fn is_distance_regular(cay: &CayleyGraph) -> Result<bool, CliError> {
    Ok(cay.is_connected() && cay.intersection_array()?.is_some())
}

fn cayley_check(input: &GraphInput, expect: Option<&str>) -> Result<Outcome, CliError> {
    let expected = expect.map(parse_array).transpose()?;
    let cay = load_cayley(input)?;
    dot_with_labels(input.dot.as_deref(), &cay)?;
    let array = if cay.is_connected() { cay.intersection_array()? } else { None };
    let matches = match (&expected, &array) {
        (Some(e), Some(a)) => e == a,
        (Some(_), None) => false,
        (None, found) => found.is_some(),
    };
    let mut out = graph_summary(&cay)?;
    out["schema"] = json!(SCHEMA);
    if let Some(e) = &expected {
        out["expected_array"] = json!(e.to_string());
    }
    out["verified"] = json!(matches);
    emit(&out);
    Ok(Outcome::from_bool(matches))
}

fn verdict_json<T: Serialize>(family: &str, verdict: &Verdict<T>) -> Value {
    let mut v = json!({ "schema": SCHEMA, "family": family, "holds": verdict.holds() });
    match verdict {
        Verdict::Holds { value } => v["parameters"] = to_value(value),
        Verdict::Fails { reason } => v["counterexample"] = json!(reason),
    }
    v
}

fn diffset(command: DiffsetCommand) -> Result<Outcome, CliError> {
    match command {
        DiffsetCommand::Verify { group, set, kind, forbidden, mu } => {
            let g = load_group(&group)?;
            let d = parse_set(&g, &set)?;
            let forbidden_subgroup = |g: &GroupTable| -> Result<Option<_>, CliError> {
                match &forbidden {
                    Some(text) => Ok(Some(parse_subgroup(g, text)?)),
                    None => Ok(find_forbidden_subgroup(g, &d)?.into_value()),
                }
            };
            let out = match kind {
                Kind::Ds => {
                    let v = is_difference_set(&g, &d)?;
                    let mut out = verdict_json("difference_set", &v);
                    if let Some(p) = v.value() {
                        out["trivial"] = json!(p.trivial);
                        out["parameters"] = json!({ "n": p.n, "k": p.k, "mu": p.mu });
                    }
                    out
                }
                Kind::Pgds => verdict_json("partial_geometric_difference_set", &is_partial_geometric_ds(&g, &d)?),
                Kind::Pmgds => {
                    let mu = mu.ok_or_else(|| CliError::Usage("--kind pmgds needs --mu".into()))?;
                    let mut out =
                        verdict_json("partial_mu_geometric_difference_set", &is_partial_mu_geometric_ds(&g, &d, mu)?);
                    out["mu"] = json!(mu);
                    out
                }
                Kind::Rds | Kind::Srds => {
                    let family = if matches!(kind, Kind::Rds) {
                        "relative_difference_set"
                    } else {
                        "symmetric_relative_difference_set"
                    };
                    match forbidden_subgroup(&g)? {
                        Some(n) => {
                            let mut out = if matches!(kind, Kind::Rds) {
                                verdict_json(family, &is_relative_difference_set(&g, &d, &n)?)
                            } else {
                                let v = is_symmetric_rds(&g, &d, &n)?;
                                let mut out = verdict_json(family, &v);
                                if let Some(dual) = v.value() {
                                    out["parameters"] = json!({ "inverse_forbidden_subgroup": g.set_labels(dual.elements()) });
                                }
                                out
                            };
                            out["forbidden_subgroup"] = json!(g.set_labels(n.elements()));
                            out
                        }
                        None => verdict_json::<()>(
                            family,
                            &Verdict::fail("the non-differences together with e do not form a subgroup"),
                        ),
                    }
                }
            };
            let holds = out["holds"].as_bool().unwrap_or(false);
            emit(&out);
            Ok(Outcome::from_bool(holds))
        }
        DiffsetCommand::Profile { group, set } => {
            let g = load_group(&group)?;
            let d = parse_set(&g, &set)?;
            let p = difference_profile(&g, &d)?;
            emit(&json!({
                "schema": SCHEMA,
                "set": g.set_labels(&p.set),
                "labels": g.labels(),
                "diff": p.diff,
                "reverse": p.reverse,
                "triple": p.triple,
            }));
            Ok(Outcome::Verified)
        }
    }
}

fn develop(args: &DevelopArgs) -> Result<Outcome, CliError> {
    let g = load_group(&args.group)?;
    let d = parse_set(&g, &args.set)?;
    let dev = development(&g, &d)?;
    if let Some(path) = &args.out {
        std::fs::write(path, dev.to_json())?;
    }
    write_dot(args.dot.as_deref(), || dev.incidence_graph().to_dot(None))?;
    let symmetric = dev.is_symmetric_2_design();
    let geometric = dev.is_partial_geometric();
    let transversal = dev.is_symmetric_transversal();
    let any = symmetric.holds() || geometric.holds() || transversal.holds();
    emit(&json!({
        "schema": SCHEMA,
        "points": g.order(),
        "blocks": g.order(),
        "symmetric_design": to_value(&symmetric),
        "partial_geometric": to_value(&geometric),
        "symmetric_transversal": to_value(&transversal),
    }));
    Ok(Outcome::from_bool(any))
}

fn bridge(command: BridgeCommand) -> Result<Outcome, CliError> {
    match command {
        BridgeCommand::Extract(input) => {
            let cay = load_cayley(&input)?;
            dot_with_labels(input.dot.as_deref(), &cay)?;
            let w = bridge_extract(&cay)?;
            let mut out = to_value(&w);
            out["schema"] = json!(SCHEMA);
            emit(&out);
            Ok(Outcome::Verified)
        }
        BridgeCommand::Dih { group, set, dot } => {
            let h = load_group(&group)?;
            let d = parse_set(&h, &set)?;
            let b = bridge_construct_dih(&h, &d)?;
            constructed(&b.cayley, dot.as_deref())
        }
        BridgeCommand::Embed { group, subgroup, set, a, dot } => {
            let g = load_group(&group)?;
            let h = parse_subgroup(&g, &subgroup)?;
            let d = parse_set(&g, &set)?;
            let a = parse_element(&g, &a)?;
            let b = bridge_construct_embed(Arc::clone(&g), &h, &d, a)?;
            constructed(&b.cayley, dot.as_deref())
        }
        BridgeCommand::Guarantee(input) => {
            let cay = load_cayley(&input)?;
            let mut out = to_value(semidirect_guarantee(&cay)?);
            out["schema"] = json!(SCHEMA);
            emit(&out);
            Ok(Outcome::Verified)
        }
        BridgeCommand::Transport { input, a } => {
            let cay = load_cayley(&input)?;
            let a = parse_element(cay.group(), &a)?;
            let t = transport_no_involutions(&cay, a, None)?;
            dot_with_labels(input.dot.as_deref(), &t.cayley)?;
            let target = t.cayley.group();
            let map: Vec<(String, String)> = cay
                .group()
                .elements()
                .map(|x| (cay.group().label(x).to_string(), target.label(t.map[x]).to_string()))
                .collect();
            let mut out = graph_summary(&t.cayley)?;
            out["schema"] = json!(SCHEMA);
            out["group"] = json!(target.to_file());
            out["isomorphism"] = json!(map);
            emit(&out);
            Ok(Outcome::Verified)
        }
        BridgeCommand::Dihedral { input, cyclic } => {
            let cay = load_cayley(&input)?;
            let c = parse_subgroup(cay.group(), &cyclic)?;
            let analysis = dihedral_subanalysis(&cay, &c)?;
            let passed = match &analysis {
                DihedralAnalysis::NotApplicable { .. } => true,
                DihedralAnalysis::Analyzed(r) => r.passed(),
            };
            let mut out = to_value(&analysis);
            out["schema"] = json!(SCHEMA);
            emit(&out);
            Ok(Outcome::from_bool(passed))
        }
    }
}

fn constructed(cay: &CayleyGraph, dot: Option<&Path>) -> Result<Outcome, CliError> {
    dot_with_labels(dot, cay)?;
    let mut out = graph_summary(cay)?;
    out["schema"] = json!(SCHEMA);
    out["group"] = json!(cay.group().to_file());
    emit(&out);
    Ok(Outcome::from_bool(is_distance_regular(cay)?))
}

fn parse_factors(text: &str) -> Result<Vec<Factor>, CliError> {
    text.split(',')
        .map(|f| {
            let f = f.trim();
            let (kind, c) = f.split_at(f.len().min(1));
            let c: i64 = c.parse().map_err(|_| CliError::Usage(format!("bad factor `{f}`")))?;
            match kind {
                "q" => Ok(Factor::Quadratic(c)),
                "l" => Ok(Factor::Linear(c)),
                _ => Err(CliError::Usage(format!("factor `{f}` should start with q or l"))),
            }
        })
        .collect()
}

fn spectrum_command(command: SpectrumCommand) -> Result<Outcome, CliError> {
    match command {
        SpectrumCommand::Check { input, factors } => {
            let factors = factors.as_deref().map(parse_factors).transpose()?;
            let cay = load_cayley(&input)?;
            dot_with_labels(input.dot.as_deref(), &cay)?;
            let g = cay.graph();
            let mut out = json!({ "schema": SCHEMA, "nonsingular": spectrum::is_nonsingular(g) });
            let mut holds = true;
            if let Some(array) = if cay.is_connected() { cay.intersection_array()? } else { None } {
                let ok = spectrum::annihilated_by(g, &spectrum::array_polynomial(&array));
                out["intersection_array"] = json!(array.to_string());
                out["array_polynomial_annihilates"] = json!(ok);
                holds &= ok;
            }
            if let Some(factors) = factors {
                let ok = spectrum::annihilates(g, &factors);
                let text: String = factors.iter().map(Factor::to_string).collect();
                out["product"] = json!(text);
                out["product_annihilates"] = json!(ok);
                holds &= ok;
            }
            emit(&out);
            Ok(Outcome::from_bool(holds))
        }
        SpectrumCommand::Circulant { n, residues } => {
            if n == 0 {
                return Err(CliError::Usage("--n must be positive".into()));
            }
            let residues: Vec<usize> = residues
                .split(',')
                .filter(|x| !x.trim().is_empty())
                .map(|x| x.trim().parse::<usize>().map(|r| r % n))
                .collect::<Result<_, _>>()
                .map_err(|_| CliError::Usage(format!("bad residue list `{residues}`")))?;
            let values = spectrum::circulant_eigenvalues(n, &residues);
            let pairs: Vec<[f64; 2]> = values.iter().map(|z| [z.re, z.im]).collect();
            emit(&json!({
                "schema": SCHEMA,
                "n": n,
                "residues": residues,
                "eigenvalues": pairs,
                "parseval_residual": spectrum::parseval_residual(n, residues.len(), &values),
            }));
            Ok(Outcome::Verified)
        }
    }
}

fn required(value: Option<usize>, flag: &str, kind: &str) -> Result<usize, CliError> {
    value.ok_or_else(|| CliError::Usage(format!("search {kind} needs --{flag}")))
}

fn search_command(args: &SearchArgs) -> Result<Outcome, CliError> {
    let g = load_group(&args.group)?;
    let family = match args.kind {
        SearchKind::Ds => SearchFamily::DifferenceSet { k: required(args.k, "k", "ds")?, mu: required(args.mu, "mu", "ds")? },
        SearchKind::Rds => {
            let text = args.forbidden.as_deref().ok_or_else(|| CliError::Usage("search rds needs --forbidden".into()))?;
            SearchFamily::RelativeDifferenceSet {
                forbidden: parse_subgroup(&g, text)?,
                k: required(args.k, "k", "rds")?,
                mu: required(args.mu, "mu", "rds")?,
            }
        }
        SearchKind::Pgds => SearchFamily::PartialGeometric {
            k: required(args.k, "k", "pgds")?,
            alpha: required(args.alpha, "alpha", "pgds")?,
            beta: required(args.beta, "beta", "pgds")?,
        },
        SearchKind::Connset => SearchFamily::ConnectionSet(match &args.array {
            Some(a) => ConnectionTarget::Array(parse_array(a)?),
            None => ConnectionTarget::NontrivialBipartiteDiameter3,
        }),
    };
    let limits = Limits { max_solutions: args.limit, max_nodes: args.node_budget, time_budget: None };
    let mut task = SearchTask::new(Arc::clone(&g), family).with_limits(limits).with_jobs(args.jobs.max(1));
    if args.no_pruning {
        task = task.without_canonical_pruning();
    }
    if args.certificate {
        let cert = nonexistence_certificate(&task)?;
        let mut out = to_value(&cert);
        out["schema"] = json!(SCHEMA);
        emit_line(&out);
        return Ok(Outcome::Verified);
    }
    let outcome = search(&task)?;
    for s in &outcome.solutions {
        emit_line(&json!({ "schema": SCHEMA, "solution": g.set_labels(s), "indices": s }));
    }
    emit_line(&json!({
        "schema": SCHEMA,
        "summary": { "count": outcome.solutions.len(), "nodes": outcome.nodes, "exhausted": outcome.exhausted },
    }));
    Ok(Outcome::Verified)
}

fn catalog_command(command: CatalogCommand) -> Result<Outcome, CliError> {
    match command {
        CatalogCommand::List => {
            emit(&json!({ "schema": SCHEMA, "entries": catalog::ENTRIES }));
            Ok(Outcome::Verified)
        }
        CatalogCommand::Run { name, param } => {
            let report = catalog::run(&name, param)?;
            emit(&to_value(&report));
            Ok(Outcome::from_bool(report.passed))
        }
    }
}
