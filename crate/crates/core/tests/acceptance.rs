//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

use std::process::ExitCode;
use std::time::Instant;

use baldom::exact_solver::{backtracking_enumerate, backtracking_oracle, enumerate_bdfs, gamma_bd};
use baldom::generators::{
    antiprism, caterpillar, full_binary_tree, grid, polytope_d, polytope_r2, two_level_tree, CaterpillarSpec,
    Shape, TwoLevelTreeSpec,
};
use baldom::grid_analysis::{
    all_bdfs_by_propagation, classify, gamma_bd_grid, schemes_for, verify_antidiagonal_relations, GridLabeling,
    P1, P2, P3,
};
use baldom::layer_certificates::{certify_d_balanced, natural_partition};
use baldom::tree_analysis::{
    caterpillar_mbdf_search, full_binary_internal_zero, full_binary_root_zero, two_level_verdict,
};
use baldom::{is_bdf, Graph, Labeling, Limits};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn limits() -> Limits {
    Limits { workers: 2, ..Limits::default() }
}

fn polytopes_d_balanced() -> Outcome {
    let cases = (5..=10)
        .map(|n| ("A", n, antiprism(n)))
        .chain((5..=8).map(|n| ("D", n, polytope_d(n))))
        .chain((5..=7).map(|n| ("R''", n, polytope_r2(n))));
    let mut count = 0;
    for (name, n, g) in cases {
        let g = g.map_err(|e| e.to_string())?;
        let r = gamma_bd(&g, &limits()).map_err(|e| e.to_string())?;
        if r.gamma != 0 {
            return Err(format!("{name}_{n}: gamma = {}", r.gamma));
        }
        count += 1;
    }
    Ok(format!("{count} instances, gamma = 0"))
}

fn layer_certificates() -> Outcome {
    let expected: [Vec<Vec<i64>>; 3] = [
        vec![vec![3, 2, 0], vec![2, 3, 2], vec![0, 2, 3]],
        vec![vec![3, 1, 0, 0], vec![1, 1, 2, 0], vec![0, 2, 1, 1], vec![0, 0, 1, 3]],
        vec![
            vec![3, 1, 0, 0, 0, 0],
            vec![1, 1, 2, 0, 0, 0],
            vec![0, 2, 1, 1, 0, 0],
            vec![0, 0, 1, 1, 2, 0],
            vec![0, 0, 0, 2, 1, 1],
            vec![0, 0, 0, 0, 1, 3],
        ],
    ];
    let mut slowest = 0u128;
    for n in 5..=12 {
        let graphs = [antiprism(n), polytope_d(n), polytope_r2(n)];
        for (g, q) in graphs.into_iter().zip(&expected) {
            let g = g.map_err(|e| e.to_string())?;
            let start = Instant::now();
            let p = natural_partition(&g).ok_or("no natural partition")?;
            let c = certify_d_balanced(&g, &p).map_err(|e| e.to_string())?;
            slowest = slowest.max(start.elapsed().as_millis());
            let cert = c.certificate().ok_or_else(|| format!("{:?}: {}", g.family(), c.reason()))?;
            if &cert.quotient != q || !cert.nonsingular() {
                return Err(format!("{:?}: quotient {:?}", g.family(), cert.quotient));
            }
            if slowest >= 1000 {
                return Err(format!("{:?} took {slowest} ms", g.family()));
            }
        }
    }
    Ok(format!("24 certificates, slowest {slowest} ms"))
}

fn grids_d_balanced() -> Outcome {
    let mut count = 0;
    for m in 1..=8 {
        for n in m..=8 {
            let r = gamma_bd_grid(m, n, 2).map_err(|e| e.to_string())?;
            if r.gamma != 0 {
                return Err(format!("{m}x{n}: gamma = {}", r.gamma));
            }
            count += 1;
        }
    }
    Ok(format!("{count} grids, gamma = 0"))
}

fn grid_classification() -> Outcome {
    let mut classified = 0;
    for m in 1..=8 {
        for n in m..=8 {
            let found: Vec<_> = all_bdfs_by_propagation(m, n, 2)
                .map_err(|e| e.to_string())?
                .into_iter()
                .filter(|g| !g.is_zero())
                .collect();
            if !found.is_empty() && schemes_for(m, n).is_empty() {
                return Err(format!("{m}x{n}: non-zero BDFs outside the scheme classes"));
            }
            for lab in &found {
                if classify(lab).map_err(|e| e.to_string())?.is_empty() {
                    return Err(format!("{m}x{n}: unclassified BDF\n{}", lab.to_text()));
                }
                classified += 1;
            }
        }
    }
    let found: Vec<_> = all_bdfs_by_propagation(4, 4, 1)
        .map_err(|e| e.to_string())?
        .into_iter()
        .filter(|g| !g.is_zero())
        .collect();
    let mut expected: Vec<GridLabeling> = [P1, P2, P3]
        .iter()
        .map(|p| GridLabeling::from_rows(&p.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap())
        .flat_map(|g| [g.negated(), g])
        .collect();
    expected.sort();
    if found != expected {
        return Err(format!("4x4 yields {} non-zero BDFs, not +-P1, +-P2, +-P3", found.len()));
    }
    Ok(format!("{classified} non-zero BDFs classified, 4x4 = +-P1..P3"))
}

fn agree(g: &Graph, label: &str) -> Result<(), String> {
    let lim = limits();
    let a = gamma_bd(g, &lim).map_err(|e| e.to_string())?;
    let b = backtracking_oracle(g, &lim).map_err(|e| e.to_string())?;
    let mut ka = enumerate_bdfs(g, &lim).map_err(|e| e.to_string())?;
    ka.sort();
    let kb = backtracking_enumerate(g, &lim).map_err(|e| e.to_string())?;
    if a.gamma != b.gamma || a.bdf_count != b.bdf_count || ka != kb {
        return Err(format!("{label}: kernel gamma {} vs search gamma {}", a.gamma, b.gamma));
    }
    Ok(())
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for t in 0..200 {
        let n = rng.gen_range(1..=16);
        let edges: Vec<_> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
        agree(&Graph::new(n, edges).map_err(|e| e.to_string())?, &format!("tree #{t}"))?;
    }
    for m in 1..=4 {
        for n in 1..=4 {
            let g = grid(m, n).map_err(|e| e.to_string())?;
            agree(&g, &format!("grid {m}x{n}"))?;
            let mut prop: Vec<Labeling> = all_bdfs_by_propagation(m, n, 1)
                .map_err(|e| e.to_string())?
                .iter()
                .map(GridLabeling::to_labeling)
                .collect();
            prop.sort();
            let search = backtracking_enumerate(&g, &limits()).map_err(|e| e.to_string())?;
            if prop != search {
                return Err(format!("grid {m}x{n}: propagation disagrees"));
            }
        }
    }
    let mut caterpillars = 0;
    for len in 1..=4u32 {
        for idx in 0..4usize.pow(len) {
            let counts: Vec<usize> = (0..len).map(|k| idx / 4usize.pow(k) % 4).collect();
            let spec = CaterpillarSpec::new(counts.clone()).map_err(|e| e.to_string())?;
            agree(&caterpillar(&spec).map_err(|e| e.to_string())?, &format!("caterpillar {counts:?}"))?;
            caterpillars += 1;
        }
    }
    Ok(format!("200 trees, 16 grids, {caterpillars} caterpillars agree"))
}

fn two_level_characterization() -> Outcome {
    let mut unbalanced = 0;
    let mut total = 0;
    for n in 2..=5u32 {
        for idx in 0..5usize.pow(n) {
            let counts: Vec<usize> = (0..n).map(|k| idx / 5usize.pow(k) % 5).collect();
            let spec = TwoLevelTreeSpec::new(counts.clone()).map_err(|e| e.to_string())?;
            let verdict = two_level_verdict(&spec).map_err(|e| e.to_string())?;
            let g = two_level_tree(&spec).map_err(|e| e.to_string())?;
            let r = gamma_bd(&g, &limits()).map_err(|e| e.to_string())?;
            if verdict.d_balanced != (r.gamma == 0) {
                return Err(format!("{counts:?}: verdict {} but gamma {}", verdict.d_balanced, r.gamma));
            }
            if !verdict.d_balanced {
                if r.gamma != i64::from(n) - 1 {
                    return Err(format!("{counts:?}: gamma {} != n - 1", r.gamma));
                }
                unbalanced += 1;
            }
            total += 1;
        }
    }
    Ok(format!("{total} trees, {unbalanced} not d-balanced"))
}

fn full_binary_trees() -> Outcome {
    let shapes = Shape::all_up_to(15);
    for shape in &shapes {
        let g = full_binary_tree(shape).map_err(|e| e.to_string())?;
        let bdfs = enumerate_bdfs(&g, &limits()).map_err(|e| e.to_string())?;
        if bdfs.len() != 1 {
            return Err(format!("{shape}: {} BDFs", bdfs.len()));
        }
        for b in &bdfs {
            let root = full_binary_root_zero(&g, b).map_err(|e| e.to_string())?;
            let internal = full_binary_internal_zero(&g, b).map_err(|e| e.to_string())?;
            if !root || !internal {
                return Err(format!("{shape}: non-zero internal label"));
            }
        }
    }
    Ok(format!("{} shapes, zero labeling only", shapes.len()))
}

fn caterpillar_condition() -> Outcome {
    let mut total = 0;
    for n in 2..=9 {
        for a in caterpillar_mbdf_search(n, 2).map_err(|e| e.to_string())? {
            if a.total_leaves % 4 != (3 * n - 2) % 4 {
                return Err(format!("{:?}: L = {}", a.spine_labels, a.total_leaves));
            }
            if a.r % 2 != 0 {
                return Err(format!("{:?}: odd r = {}", a.spine_labels, a.r));
            }
            let g = caterpillar(&a.spec()).map_err(|e| e.to_string())?;
            if !is_bdf(&g, &a.induced_labeling()).map_err(|e| e.to_string())? {
                return Err(format!("{:?}: induced labeling is not a BDF", a.spine_labels));
            }
            total += 1;
        }
    }
    Ok(format!("{total} MBDFs, zero violations"))
}

fn antidiagonal_relations() -> Outcome {
    let mut checked = 0;
    for m in 8..=14 {
        for n in m..=14 {
            for s in schemes_for(m, n) {
                let lab = s.instantiate(n).map_err(|e| e.to_string())?;
                if !verify_antidiagonal_relations(&lab).map_err(|e| e.to_string())? {
                    return Err(format!("{m}x{n} {}: relation violated", s.scheme_type));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} scheme BDFs"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("polytopes d-balanced", polytopes_d_balanced),
        ("layer certificates", layer_certificates),
        ("grids d-balanced", grids_d_balanced),
        ("grid classification", grid_classification),
        ("oracle equivalence", oracle_equivalence),
        ("two-level characterization", two_level_characterization),
        ("full binary trees", full_binary_trees),
        ("caterpillar necessary condition", caterpillar_condition),
        ("anti-diagonal relations", antidiagonal_relations),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name} ({detail}; {secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name} ({why}; {secs:.2}s)", i + 1);
            }
        }
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
