use std::fmt::Write as _;
use std::fs;
use std::io::{Read, Write};

use baldom::exact_solver::gamma_bd;
use baldom::generators::{
    antiprism, caterpillar, full_binary_tree, grid, polytope_d, polytope_r2, two_level_tree, CaterpillarSpec,
    Shape, TwoLevelTreeSpec,
};
use baldom::graph::GraphJson;
use baldom::grid_analysis::{all_bdfs_by_propagation, classify, schemes_for, SchemeJson};
use baldom::layer_certificates::{certify_d_balanced, natural_partition, CertificateJson};
use baldom::tree_analysis::{
    caterpillar_mbdf_search, full_binary_internal_zero, full_binary_root_zero, two_level_verdict,
    CaterpillarAnalysis,
};
use baldom::{is_bdf, Family, GammaResult, Graph, Labeling, Limits, Method};
use clap::ValueEnum;
use serde::Serialize;

use crate::args::{Command, FamilyName, Format, GraphArgs, LimitArgs, OutputArgs};
use crate::sweep;
use crate::Failure;

pub fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Gen { graph, output } => gen(&graph, &output),
        Command::Solve { graph, limits, output } => solve(&graph, &limits, &output),
        Command::Certify { graph, output } => certify(&graph, &output),
        Command::GridClassify { m, n, workers, output } => grid_classify(m, n, workers as usize, &output),
        Command::TreeCheck { two_level, full_binary, caterpillar, limits, output } => {
            tree_check(two_level, full_binary, caterpillar, &limits, &output)
        }
        Command::CaterpillarSearch { n, workers, output } => caterpillar_search(n, workers as usize, &output),
        Command::Sweep { suite, max, limits, output } => {
            let report = sweep::run(&suite, max, &limits.to_limits()?)?;
            let body = match output.format {
                Format::Json => json(&report)?,
                Format::Text => report.to_text(),
                Format::Dot => return Err(no_dot("sweep")),
            };
            emit(&output, &body)?;
            match report.rows.iter().find(|r| r.failures > 0) {
                Some(r) => Err(Failure::Violation(format!("suite {} failed", r.suite))),
                None => Ok(()),
            }
        }
    }
}

impl LimitArgs {
    pub fn to_limits(&self) -> Result<Limits, Failure> {
        let size = |v: u64| usize::try_from(v).map_err(|_| Failure::Usage(format!("{v} is too large")));
        Ok(Limits {
            max_free_enumeration: size(self.max_free)?,
            node_budget: self.node_budget,
            workers: size(self.workers)?,
            allow_fallback: self.fallback,
        })
    }
}

fn json<T: Serialize>(value: &T) -> Result<String, Failure> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Failure::Resource(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn no_dot(command: &str) -> Failure {
    Failure::Usage(format!("{command} has no dot output; use json or text"))
}

fn emit(output: &OutputArgs, body: &str) -> Result<(), Failure> {
    let io = |e: std::io::Error| Failure::Resource(format!("writing output: {e}"));
    match &output.out {
        Some(path) => fs::write(path, body).map_err(io),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes()).and_then(|()| out.flush()).map_err(io)
        }
    }
}

fn family_flag(f: FamilyName) -> String {
    f.to_possible_value().expect("no skipped variants").get_name().to_string()
}

fn parse_counts(spec: &str) -> Result<Vec<usize>, Failure> {
    spec.split(',')
        .map(|s| s.trim().parse::<usize>().map_err(|_| Failure::Usage(format!("bad leaf count {s:?} in --spec"))))
        .collect()
}

fn read_graph(path: &std::path::Path) -> Result<Graph, Failure> {
    let mut text = String::new();
    if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text).map_err(|e| Failure::Usage(format!("reading stdin: {e}")))?;
    } else {
        text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("reading {}: {e}", path.display())))?;
    }
    let doc: GraphJson = serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("graph JSON: {e}")))?;
    Ok(Graph::from_json(&doc)?)
}

fn build_graph(a: &GraphArgs) -> Result<Graph, Failure> {
    if let Some(path) = &a.input {
        return read_graph(path);
    }
    let family = a.family.ok_or_else(|| Failure::Usage("either --family or --input is required".into()))?;
    let flag = family_flag(family);
    let n = || a.n.ok_or_else(|| Failure::Usage(format!("--n is required for {flag}")));
    let spec = || a.spec.as_deref().ok_or_else(|| Failure::Usage(format!("--spec is required for {flag}")));
    let g = match family {
        FamilyName::Antiprism => antiprism(n()?)?,
        FamilyName::PolytopeD => polytope_d(n()?)?,
        FamilyName::PolytopeR2 => polytope_r2(n()?)?,
        FamilyName::Grid => {
            let m = a.m.ok_or_else(|| Failure::Usage("--m is required for grid".into()))?;
            grid(m, n()?)?
        }
        FamilyName::Caterpillar => caterpillar(&CaterpillarSpec::new(parse_counts(spec()?)?)?)?,
        FamilyName::TwoLevel => two_level_tree(&TwoLevelTreeSpec::new(parse_counts(spec()?)?)?)?,
        FamilyName::FullBinary => full_binary_tree(&spec()?.parse::<Shape>()?)?,
    };
    Ok(g)
}

fn gen(a: &GraphArgs, output: &OutputArgs) -> Result<(), Failure> {
    let g = build_graph(a)?;
    let body = match output.format {
        Format::Json => json(&g.to_json())?,
        Format::Dot => g.to_dot(None)?,
        Format::Text => {
            let mut s = format!("vertices {}\nedges {}\n", g.n_vertices(), g.n_edges());
            for &(u, v) in g.edges() {
                writeln!(s, "{u} {v}").unwrap();
            }
            s
        }
    };
    emit(output, &body)
}

/// The value the balanced domination number must take on a family, where known.
fn expected_gamma(family: Option<&Family>) -> Result<Option<i64>, Failure> {
    Ok(match family {
        Some(Family::Antiprism { .. })
        | Some(Family::PolytopeD { .. })
        | Some(Family::PolytopeR2 { .. })
        | Some(Family::Grid { .. })
        | Some(Family::FullBinary { .. }) => Some(0),
        Some(Family::TwoLevel { child_leaf_counts }) => {
            Some(two_level_verdict(&TwoLevelTreeSpec::new(child_leaf_counts.clone())?)?.gamma_formula)
        }
        Some(Family::Caterpillar { .. }) | None => None,
    })
}

#[derive(Serialize)]
struct SolveReport<'a> {
    vertices: usize,
    edges: usize,
    family: Option<&'a Family>,
    gamma: i64,
    d_balanced: bool,
    method: Method,
    bdf_count: Option<u64>,
    witness: &'a Labeling,
}

fn labels_text(lab: &Labeling) -> String {
    lab.values().iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn method_name(m: Method) -> String {
    serde_json::to_value(m).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default()
}

fn solve(a: &GraphArgs, limits: &LimitArgs, output: &OutputArgs) -> Result<(), Failure> {
    let g = build_graph(a)?;
    let r: GammaResult = gamma_bd(&g, &limits.to_limits()?)?;
    let body = match output.format {
        Format::Json => json(&SolveReport {
            vertices: g.n_vertices(),
            edges: g.n_edges(),
            family: g.family(),
            gamma: r.gamma,
            d_balanced: r.d_balanced,
            method: r.method,
            bdf_count: r.bdf_count,
            witness: &r.witness,
        })?,
        Format::Dot => g.to_dot(Some(&r.witness))?,
        Format::Text => format!(
            "gamma {}\nd_balanced {}\nmethod {}\nbdf_count {}\nwitness {}\n",
            r.gamma,
            r.d_balanced,
            method_name(r.method),
            r.bdf_count.map_or("unknown".to_string(), |c| c.to_string()),
            labels_text(&r.witness)
        ),
    };
    emit(output, &body)?;
    match expected_gamma(g.family())? {
        Some(e) if e != r.gamma => Err(Failure::Violation(format!("expected gamma {e}, found {}", r.gamma))),
        _ => Ok(()),
    }
}

#[derive(Serialize)]
struct CertifyReport<'a> {
    family: Option<&'a Family>,
    vertices: usize,
    #[serde(flatten)]
    certificate: CertificateJson,
}

fn certify(a: &GraphArgs, output: &OutputArgs) -> Result<(), Failure> {
    let g = build_graph(a)?;
    let p = natural_partition(&g).ok_or_else(|| {
        Failure::Usage("certify needs an antiprism, polytope-d or polytope-r2 graph".into())
    })?;
    let c = certify_d_balanced(&g, &p)?;
    let cert = c.to_json();
    let body = match output.format {
        Format::Json => json(&CertifyReport { family: g.family(), vertices: g.n_vertices(), certificate: cert.clone() })?,
        Format::Text => {
            let mut s = format!("{}\n", cert.reason);
            if let Some(det) = &cert.det {
                writeln!(s, "det {det}").unwrap();
            }
            for row in cert.quotient.iter().flatten() {
                let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
                writeln!(s, "{}", cells.join(" ")).unwrap();
            }
            s
        }
        Format::Dot => return Err(no_dot("certify")),
    };
    emit(output, &body)?;
    if cert.certified {
        Ok(())
    } else {
        Err(Failure::Violation(cert.reason))
    }
}

#[derive(Serialize)]
struct Classified {
    rows: Vec<Vec<i8>>,
    schemes: Vec<SchemeJson>,
}

#[derive(Serialize)]
struct GridReport {
    m: usize,
    n: usize,
    gamma: i64,
    d_balanced: bool,
    bdf_count: usize,
    nonzero_bdfs: usize,
    classifications: Vec<Classified>,
}

fn grid_classify(m: usize, n: usize, workers: usize, output: &OutputArgs) -> Result<(), Failure> {
    let all = all_bdfs_by_propagation(m, n, workers)?;
    let gamma = all.iter().map(|g| g.weight()).max().unwrap_or(0);
    let mut classifications = Vec::new();
    for lab in all.iter().filter(|g| !g.is_zero()) {
        let schemes = classify(lab)?;
        classifications.push(Classified { rows: lab.rows(), schemes: schemes.iter().map(|s| s.to_json()).collect() });
    }
    let report = GridReport {
        m,
        n,
        gamma,
        d_balanced: gamma == 0,
        bdf_count: all.len(),
        nonzero_bdfs: classifications.len(),
        classifications,
    };
    let body = match output.format {
        Format::Json => json(&report)?,
        Format::Text => {
            let mut s = format!("grid {m}x{n}: gamma {gamma}, {} non-zero BDFs\n", report.nonzero_bdfs);
            for (lab, c) in all.iter().filter(|g| !g.is_zero()).zip(&report.classifications) {
                let names: Vec<String> =
                    c.schemes.iter().map(|s| format!("{} [{}]", s.scheme_type, s.layout.join(", "))).collect();
                let label = if names.is_empty() { "unclassified".to_string() } else { names.join("; ") };
                writeln!(s, "\n{label}\n{}", lab.to_text().trim_end()).unwrap();
            }
            s
        }
        Format::Dot => return Err(no_dot("grid-classify")),
    };
    emit(output, &body)?;
    if gamma != 0 {
        return Err(Failure::Violation(format!("grid {m}x{n} has gamma {gamma}")));
    }
    if report.nonzero_bdfs > 0 && schemes_for(m, n).is_empty() {
        return Err(Failure::Violation(format!("grid {m}x{n} has non-zero BDFs but admits no scheme")));
    }
    if report.classifications.iter().any(|c| c.schemes.is_empty()) {
        return Err(Failure::Violation(format!("grid {m}x{n} has an unclassified BDF")));
    }
    Ok(())
}

#[derive(Serialize)]
struct TreeReport {
    kind: &'static str,
    spec: String,
    vertices: usize,
    gamma: i64,
    d_balanced: bool,
    bdf_count: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    predicted_d_balanced: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    predicted_gamma: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    internal_zero: Option<bool>,
}

fn join_counts(v: &[usize]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn tree_check(
    two_level: Option<Vec<usize>>,
    full_binary: Option<String>,
    caterpillar_counts: Option<Vec<usize>>,
    limits: &LimitArgs,
    output: &OutputArgs,
) -> Result<(), Failure> {
    let limits = limits.to_limits()?;
    let mut violation = None;
    let report = if let Some(counts) = two_level {
        let spec = TwoLevelTreeSpec::new(counts.clone())?;
        let verdict = two_level_verdict(&spec)?;
        let r = gamma_bd(&two_level_tree(&spec)?, &limits)?;
        if verdict.d_balanced != r.d_balanced || verdict.gamma_formula != r.gamma {
            violation = Some(format!("predicted gamma {}, found {}", verdict.gamma_formula, r.gamma));
        }
        TreeReport {
            kind: "two-level",
            spec: join_counts(&counts),
            vertices: spec.n_vertices(),
            gamma: r.gamma,
            d_balanced: r.d_balanced,
            bdf_count: r.bdf_count,
            predicted_d_balanced: Some(verdict.d_balanced),
            predicted_gamma: Some(verdict.gamma_formula),
            internal_zero: None,
        }
    } else if let Some(text) = full_binary {
        let shape: Shape = text.parse()?;
        let g = full_binary_tree(&shape)?;
        let bdfs = baldom::exact_solver::enumerate_bdfs(&g, &limits)?;
        let r = gamma_bd(&g, &limits)?;
        let mut internal_zero = true;
        for b in &bdfs {
            internal_zero &= full_binary_root_zero(&g, b)? && full_binary_internal_zero(&g, b)?;
        }
        if bdfs.len() != 1 || !internal_zero {
            violation = Some(format!("{} BDFs on a full binary tree", bdfs.len()));
        }
        TreeReport {
            kind: "full-binary",
            spec: shape.to_string(),
            vertices: g.n_vertices(),
            gamma: r.gamma,
            d_balanced: r.d_balanced,
            bdf_count: r.bdf_count,
            predicted_d_balanced: Some(true),
            predicted_gamma: Some(0),
            internal_zero: Some(internal_zero),
        }
    } else if let Some(counts) = caterpillar_counts {
        let spec = CaterpillarSpec::new(counts.clone())?;
        let r = gamma_bd(&caterpillar(&spec)?, &limits)?;
        TreeReport {
            kind: "caterpillar",
            spec: join_counts(&counts),
            vertices: spec.n_vertices(),
            gamma: r.gamma,
            d_balanced: r.d_balanced,
            bdf_count: r.bdf_count,
            predicted_d_balanced: None,
            predicted_gamma: None,
            internal_zero: None,
        }
    } else {
        return Err(Failure::Usage("one of --two-level, --full-binary or --caterpillar is required".into()));
    };
    let body = match output.format {
        Format::Json => json(&report)?,
        Format::Text => {
            let mut s = format!(
                "{} {}\nvertices {}\ngamma {}\nd_balanced {}\n",
                report.kind, report.spec, report.vertices, report.gamma, report.d_balanced
            );
            if let Some(p) = report.predicted_gamma {
                writeln!(s, "predicted_gamma {p}").unwrap();
            }
            s
        }
        Format::Dot => return Err(no_dot("tree-check")),
    };
    emit(output, &body)?;
    violation.map_or(Ok(()), |v| Err(Failure::Violation(v)))
}

#[derive(Serialize)]
struct MbdfEntry {
    #[serde(flatten)]
    analysis: CaterpillarAnalysis,
    condition_holds: bool,
}

#[derive(Serialize)]
struct CaterpillarReport {
    n: usize,
    count: usize,
    violations: usize,
    mbdfs: Vec<MbdfEntry>,
}

fn caterpillar_search(n: usize, workers: usize, output: &OutputArgs) -> Result<(), Failure> {
    let found = caterpillar_mbdf_search(n, workers)?;
    let mut mbdfs = Vec::with_capacity(found.len());
    for a in found {
        let g = caterpillar(&a.spec())?;
        let holds = a.total_leaves % 4 == (3 * n - 2) % 4 && a.r % 2 == 0 && is_bdf(&g, &a.induced_labeling())?;
        mbdfs.push(MbdfEntry { analysis: a, condition_holds: holds });
    }
    let violations = mbdfs.iter().filter(|e| !e.condition_holds).count();
    let report = CaterpillarReport { n, count: mbdfs.len(), violations, mbdfs };
    let body = match output.format {
        Format::Json => json(&report)?,
        Format::Text => {
            let mut s = format!("spine length {n}: {} MBDFs, {violations} violations\n", report.count);
            for e in &report.mbdfs {
                let a = &e.analysis;
                let spine: Vec<String> = a.spine_labels.iter().map(ToString::to_string).collect();
                writeln!(
                    s,
                    "spine {} leaves {} L={} p={} q={} r={} weight={}",
                    spine.join(","),
                    join_counts(&a.leaf_counts),
                    a.total_leaves,
                    a.p,
                    a.q,
                    a.r,
                    a.weight
                )
                .unwrap();
            }
            s
        }
        Format::Dot => return Err(no_dot("caterpillar-search")),
    };
    emit(output, &body)?;
    if violations > 0 {
        return Err(Failure::Violation(format!("{violations} MBDFs violate the leaf-count condition")));
    }
    Ok(())
}
