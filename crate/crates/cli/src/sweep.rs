use std::fmt::Write as _;

use baldom::exact_solver::{enumerate_bdfs, gamma_bd};
use baldom::generators::{
    antiprism, caterpillar, full_binary_tree, polytope_d, polytope_r2, two_level_tree, Shape, TwoLevelTreeSpec,
};
use baldom::grid_analysis::{all_bdfs_by_propagation, classify, schemes_for, verify_antidiagonal_relations};
use baldom::layer_certificates::{certify_d_balanced, natural_partition};
use baldom::tree_analysis::{caterpillar_mbdf_search, full_binary_internal_zero, two_level_verdict};
use baldom::{is_bdf, Graph, Limits};
use clap::ValueEnum;
use serde::Serialize;

use crate::args::Suite;
use crate::Failure;

#[derive(Debug, Serialize)]
pub struct SweepRow {
    pub suite: String,
    pub range: String,
    pub instances: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct SweepReport {
    pub passed: bool,
    pub rows: Vec<SweepRow>,
}

impl SweepReport {
    pub fn to_text(&self) -> String {
        let mut s = format!("{:<14} {:<24} {:>9} {:>8}  status\n", "suite", "range", "instances", "failures");
        for r in &self.rows {
            let status = if r.failures == 0 { "PASS" } else { "FAIL" };
            writeln!(s, "{:<14} {:<24} {:>9} {:>8}  {status}", r.suite, r.range, r.instances, r.failures).unwrap();
            if let Some(f) = &r.first_failure {
                writeln!(s, "  first failure: {f}").unwrap();
            }
        }
        s
    }
}

/// Collects per-instance outcomes; hard errors (bad input, exhausted limits) abort the sweep.
struct Tally {
    instances: usize,
    failures: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally { instances: 0, failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

fn polytopes(max: Option<usize>, limits: &Limits) -> Result<(String, Tally), Failure> {
    let (a, d, r) = match max {
        Some(k) => (k, k, k),
        None => (10, 8, 7),
    };
    let mut t = Tally::new();
    let graphs = (5..=a)
        .map(antiprism)
        .chain((5..=d).map(polytope_d))
        .chain((5..=r).map(polytope_r2));
    for g in graphs {
        let g = g?;
        let gamma = gamma_bd(&g, limits)?.gamma;
        t.check(gamma == 0, || format!("{:?}: gamma {gamma}", g.family()));
    }
    Ok((format!("A 5..{a}, D 5..{d}, R 5..{r}"), t))
}

fn certificates(max: Option<usize>) -> Result<(String, Tally), Failure> {
    let top = max.unwrap_or(12);
    let mut t = Tally::new();
    for n in 5..=top {
        for g in [antiprism(n)?, polytope_d(n)?, polytope_r2(n)?] {
            let p = natural_partition(&g).expect("polytope family");
            let c = certify_d_balanced(&g, &p)?;
            t.check(c.certificate().is_some(), || format!("{:?}: {}", g.family(), c.reason()));
        }
    }
    Ok((format!("n 5..{top}"), t))
}

fn grids(max: Option<usize>, workers: usize) -> Result<(String, Tally), Failure> {
    let top = max.unwrap_or(8);
    let mut t = Tally::new();
    for m in 1..=top {
        for n in m..=top {
            let all = all_bdfs_by_propagation(m, n, workers)?;
            let gamma = all.iter().map(|g| g.weight()).max().unwrap_or(0);
            let nonzero: Vec<_> = all.iter().filter(|g| !g.is_zero()).collect();
            let mut unclassified = 0;
            for lab in &nonzero {
                if classify(lab)?.is_empty() {
                    unclassified += 1;
                }
            }
            let stray = !nonzero.is_empty() && schemes_for(m, n).is_empty();
            t.check(gamma == 0 && unclassified == 0 && !stray, || {
                format!("{m}x{n}: gamma {gamma}, {unclassified} unclassified, outside classes {stray}")
            });
        }
    }
    Ok((format!("1 <= m <= n <= {top}"), t))
}

fn two_level(max: Option<usize>, limits: &Limits) -> Result<(String, Tally), Failure> {
    let top = max.unwrap_or(5) as u32;
    let mut t = Tally::new();
    for n in 2..=top {
        for idx in 0..5usize.pow(n) {
            let counts: Vec<usize> = (0..n).map(|k| idx / 5usize.pow(k) % 5).collect();
            let spec = TwoLevelTreeSpec::new(counts.clone())?;
            let verdict = two_level_verdict(&spec)?;
            let gamma = gamma_bd(&two_level_tree(&spec)?, limits)?.gamma;
            t.check(verdict.d_balanced == (gamma == 0) && verdict.gamma_formula == gamma, || {
                format!("{counts:?}: predicted {}, found {gamma}", verdict.gamma_formula)
            });
        }
    }
    Ok((format!("n 2..{top}, l_i 0..4"), t))
}

fn full_binary(max: Option<usize>, limits: &Limits) -> Result<(String, Tally), Failure> {
    let top = max.unwrap_or(15);
    let mut t = Tally::new();
    for shape in Shape::all_up_to(top) {
        let g: Graph = full_binary_tree(&shape)?;
        let bdfs = enumerate_bdfs(&g, limits)?;
        let mut zero = true;
        for b in &bdfs {
            zero &= full_binary_internal_zero(&g, b)?;
        }
        t.check(bdfs.len() == 1 && zero, || format!("{shape}: {} BDFs", bdfs.len()));
    }
    Ok((format!("up to {top} vertices"), t))
}

fn caterpillars(max: Option<usize>, workers: usize) -> Result<(String, Tally), Failure> {
    let top = max.unwrap_or(9);
    let mut t = Tally::new();
    for n in 2..=top {
        for a in caterpillar_mbdf_search(n, workers)? {
            let valid = is_bdf(&caterpillar(&a.spec())?, &a.induced_labeling())?;
            let ok = a.total_leaves % 4 == (3 * n - 2) % 4 && a.r % 2 == 0 && valid;
            t.check(ok, || format!("spine {:?}: L {}, r {}", a.spine_labels, a.total_leaves, a.r));
        }
    }
    Ok((format!("spine 2..{top}"), t))
}

fn antidiagonal(max: Option<usize>) -> Result<(String, Tally), Failure> {
    let top = max.unwrap_or(14);
    let mut t = Tally::new();
    for m in 8..=top {
        for n in m..=top {
            for s in schemes_for(m, n) {
                let lab = s.instantiate(n)?;
                let ok = verify_antidiagonal_relations(&lab)?;
                t.check(ok, || format!("{m}x{n} {}", s.scheme_type));
            }
        }
    }
    Ok((format!("8 <= m <= n <= {top}"), t))
}

pub fn run(suites: &[Suite], max: Option<usize>, limits: &Limits) -> Result<SweepReport, Failure> {
    let mut chosen: Vec<Suite> = if suites.is_empty() { Suite::value_variants().to_vec() } else { suites.to_vec() };
    chosen.sort();
    chosen.dedup();
    let mut rows = Vec::new();
    for suite in chosen {
        let (range, tally) = match suite {
            Suite::Polytopes => polytopes(max, limits)?,
            Suite::Certificates => certificates(max)?,
            Suite::Grids => grids(max, limits.workers)?,
            Suite::TwoLevel => two_level(max, limits)?,
            Suite::FullBinary => full_binary(max, limits)?,
            Suite::Caterpillars => caterpillars(max, limits.workers)?,
            Suite::Antidiagonal => antidiagonal(max)?,
        };
        rows.push(SweepRow {
            suite: suite.to_possible_value().expect("named").get_name().to_string(),
            range,
            instances: tally.instances,
            failures: tally.failures.len(),
            first_failure: tally.failures.into_iter().next(),
        });
    }
    Ok(SweepReport { passed: rows.iter().all(|r| r.failures == 0), rows })
}
