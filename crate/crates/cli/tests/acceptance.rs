//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero when any criterion fails.

use std::collections::BTreeMap;
use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use metabench::execute_plan;
use metabench::report::write_trace;
use metabench_core::analysis::RankTable;
use metabench_core::benchmarks::{
    evaluate, evaluate_transformed, make_shift_rotate, FunctionId, Instance, ObjectiveSpec, ShiftRotate,
};
use metabench_core::harness::{run_single, CellSummary, ExperimentPlan, Variant};
use metabench_core::optimizers::{run_random_search, Algorithm};
use metabench_core::{uniform_in_bounds, Draw, EvaluationBudget, Evaluator, RngStream, RunRecord};

type Outcome = Result<String, String>;

const ALGOS: [Algorithm; 5] = Algorithm::ALL;

// ---------------------------------------------------------------------------
// 1. ranking oracles

struct PrintedTable {
    name: &'static str,
    rows: &'static [(&'static str, [&'static str; 5], [usize; 5])],
    rank_sums: [usize; 5],
    lex: [usize; 5],
    /// Rows whose printed ranks do not follow from their printed means.
    excluded: &'static [&'static str],
}

const UNIMODAL: PrintedTable = PrintedTable {
    name: "unimodal",
    rows: &[
        ("Sphere", ["3.07E-02", "1.01E-28", "7.36E-12", "1.31E-90", "8.56E-02"], [4, 2, 3, 1, 5]),
        ("Rosenbrock", ["59.20573856", "35.64582342", "9.947050402", "23.90273766", "50.37957632"], [5, 3, 1, 2, 4]),
        ("Schwefel N1.2", ["956.8894976", "6.48103E-52", "2.72144E-16", "8.7636E-174", "132114.8616"], [4, 2, 3, 1, 5]),
        ("Schwefel N2.21", ["10.60590625", "4.262234194", "27.41483971", "1.17742E-35", "11.89867221"], [3, 2, 5, 1, 4]),
        ("Schwefel N2.22", ["1.005158186", "2.5609E-13", "1.28889E-05", "4.855E-44", "15.58286598"], [4, 2, 3, 1, 5]),
        ("Step", ["10.97022622", "5.88379E-27", "2.53218E-09", "4.4781E-08", "46.80671072"], [4, 1, 2, 3, 5]),
        ("Quartic", ["2.17459E-05", "1.4988E-16", "3.33067E-17", "0.0", "0.000193904"], [4, 3, 2, 1, 5]),
        ("Elliptic", ["1213.614811", "48.79010576", "1.55772E-07", "1.0159E-86", "36265.6778"], [4, 3, 2, 1, 5]),
        ("BentCigar", ["19893.77169", "1.76809E-25", "1.63294E-06", "2.64285E-84", "73399.1959"], [4, 2, 3, 1, 5]),
        ("Discus", ["189.3995226", "28.83584", "4.49287E-08", "9.54749E-89", "28.55259352"], [5, 4, 2, 1, 3]),
    ],
    rank_sums: [41, 24, 26, 13, 46],
    lex: [4, 2, 3, 1, 5],
    excluded: &[],
};

const UNIMODAL_ROTATED: PrintedTable = PrintedTable {
    name: "rotated unimodal",
    rows: &[
        ("Sphere", ["0.030676378", "8.18058E-29", "4.69091E-12", "1.87272E-07", "0.094082404"], [4, 1, 2, 3, 5]),
        ("Rosenbrock", ["61.0987845", "37.57106258", "9.743094335", "24.30563695", "57.2270359"], [5, 3, 1, 2, 4]),
        ("Schwefel N1.2", ["1115.536642", "1.39473E-48", "1.9234E-16", "5.83827E-08", "139783.022"], [4, 1, 2, 3, 5]),
        ("Schwefel N2.21", ["10.34282207", "9.693647047", "30.58646859", "31.27068723", "20.79259838"], [2, 1, 4, 5, 3]),
        ("Schwefel N2.22", ["0.996989369", "4.428137779", "1.30404E-05", "0.01200855", "25.7591043"], [3, 4, 1, 2, 5]),
        ("Step", ["10.72734764", "8.96357E-26", "1.10539E-09", "3.15692E-05", "43.15350058"], [4, 1, 2, 3, 5]),
        ("Quartic", ["7.93032E-06", "0.017107815", "3.33067E-17", "1.1951E-10", "0.000169865"], [3, 5, 1, 2, 4]),
        ("Elliptic", ["1034.359163", "22641.67664", "9.64456E-07", "0.001788973", "43363.00725"], [3, 4, 1, 2, 5]),
        ("BentCigar", ["19088.41517", "6.125539449", "5.40424E-06", "1.056550259", "77836.26624"], [4, 3, 1, 2, 5]),
        ("Discus", ["232.723504", "23.8880058", "8.62859E-08", "8.31763E-06", "34.74057923"], [5, 3, 1, 2, 4]),
    ],
    rank_sums: [37, 26, 16, 26, 45],
    lex: [3, 2, 1, 2, 4],
    excluded: &[],
};

const MULTIMODAL: PrintedTable = PrintedTable {
    name: "multimodal",
    rows: &[
        ("Rastrigin", ["3.999839652", "73.45610078", "6.03437E-05", "14.69520556", "67.98148885"], [2, 5, 1, 3, 4]),
        ("Ackley", ["1.563654234", "1.671420002", "7.4865E-06", "2.88658E-15", "3.693481383"], [3, 4, 2, 1, 5]),
        ("Griewank", ["1.077329269", "0.034526632", "0.001762648", "4.33681E-20", "1.437366487"], [4, 3, 2, 1, 5]),
        ("Schwefel", ["0.00658767", "3.62591E-17", "1.42997E-06", "1.76766E-65", "4.28115E-17"], [5, 3, 5, 1, 4]),
        ("Weierstrass", ["2.837354614", "3.267368397", "3.63708E-08", "1.01568E-07", "19.00749617"], [3, 4, 1, 2, 5]),
        ("NCRastrigin", ["3.053180478", "49.77008472", "0.434927835", "23.66916675", "57.69584403"], [2, 4, 1, 3, 5]),
        ("Penalized", ["0.060566235", "0.249181125", "2.04594E-10", "2.7343E-09", "8.51730668"], [3, 4, 1, 2, 5]),
        ("Penalized2", ["0.616476232", "0.247823977", "1.29719E-09", "0.459544203", "54.34260864"], [4, 2, 1, 3, 5]),
        ("Xin-She Yang F4", ["1.00", "1.00", "1.00", "1.00", "1.00"], [1, 1, 1, 1, 1]),
        ("Inverted Vincent", ["0.000355299", "0.139973929", "1.77965E-05", "0.034148733", "0.195707624"], [2, 4, 1, 3, 5]),
    ],
    rank_sums: [29, 34, 16, 20, 44],
    lex: [3, 4, 1, 2, 5],
    excluded: &["Schwefel"],
};

const MULTIMODAL_ROTATED: PrintedTable = PrintedTable {
    name: "rotated multimodal",
    rows: &[
        ("Rastrigin", ["3.083235545", "77.13585957", "1.36636E-05", "44.88763155", "101.4422262"], [2, 4, 1, 3, 5]),
        ("Ackley", ["1.708941902", "1.296393696", "1.00145E-05", "7.280337076", "3.907358314"], [3, 2, 1, 5, 4]),
        ("Griewank", ["1.096534942", "0.018676134", "0.003816886", "0.064061973", "1.391340595"], [4, 2, 1, 3, 5]),
        ("Schwefel", ["0.005924389", "5.1418E-16", "3.14741E-06", "0.0", "9.52304E-17"], [5, 3, 4, 1, 2]),
        ("Weierstrass", ["2.82237824", "7.668301539", "4.73802E-08", "10.96305038", "24.31145159"], [2, 3, 1, 4, 5]),
        ("NCRastrigin", ["2.405475301", "56.8527291", "0.300091876", "46.99844973", "101.5015375"], [2, 4, 1, 3, 5]),
        ("Penalized", ["0.044705363", "0.405949937", "3.04326E-10", "7.272889865", "20.26999494"], [3, 2, 1, 4, 5]),
        ("Penalized2", ["0.539863696", "1.405913819", "2.72487E-09", "60.47457633", "104.0140477"], [2, 3, 1, 5, 5]),
        ("Xin-She Yang F4", ["1.00", "1.00", "1.00", "1.00", "1.00"], [1, 1, 1, 1, 1]),
        ("Inverted Vincent", ["0.000190822", "0.656290425", "3.0413E-06", "0.108911148", "0.178184464"], [2, 5, 1, 3, 4]),
    ],
    rank_sums: [26, 29, 13, 32, 41],
    lex: [2, 3, 1, 4, 5],
    excluded: &[],
};

fn by_algorithm(values: [usize; 5]) -> BTreeMap<Algorithm, usize> {
    ALGOS.into_iter().zip(values).collect()
}

fn check_table(t: &PrintedTable, problems: &mut Vec<String>) {
    let means = t.rows.iter().flat_map(|(f, m, _)| {
        ALGOS.into_iter().zip(m).map(move |(a, v)| (*f, a, v.parse::<f64>().expect("printed mean")))
    });
    let table = match RankTable::from_means(means) {
        Ok(t) => t,
        Err(e) => return problems.push(format!("{}: {e}", t.name)),
    };
    let mut expected_sums = by_algorithm(t.rank_sums);
    for (f, _, printed) in t.rows {
        let got = &table.per_function_ranks[f];
        if t.excluded.contains(f) {
            // the printed footer includes the excluded row's printed ranks
            for (a, r) in ALGOS.into_iter().zip(printed) {
                *expected_sums.get_mut(&a).unwrap() += got[&a];
                *expected_sums.get_mut(&a).unwrap() -= r;
            }
            continue;
        }
        if *got != by_algorithm(*printed) {
            problems.push(format!("{} {f}: ranks {:?}, printed {printed:?}", t.name, got.values().collect::<Vec<_>>()));
        }
    }
    if table.rank_sums != expected_sums {
        problems.push(format!(
            "{}: rank sums {:?}, expected {:?}",
            t.name,
            table.rank_sums.values().collect::<Vec<_>>(),
            expected_sums.values().collect::<Vec<_>>()
        ));
    }
    if table.lexicographic_ranks != by_algorithm(t.lex) {
        problems.push(format!(
            "{}: lexicographic {:?}, printed {:?}",
            t.name,
            table.lexicographic_ranks.values().collect::<Vec<_>>(),
            t.lex
        ));
    }
}

fn ranking_oracles() -> Outcome {
    let mut problems = Vec::new();
    for t in [&UNIMODAL, &UNIMODAL_ROTATED, &MULTIMODAL, &MULTIMODAL_ROTATED] {
        check_table(t, &mut problems);
    }
    if problems.is_empty() {
        Ok("all printed ranks, rank sums and lexicographic ranks reproduced (multimodal Schwefel row excluded)".into())
    } else {
        Err(problems.join("; "))
    }
}

// ---------------------------------------------------------------------------
// 2, 3, 4, 8. full protocol

struct Protocol {
    plain: Vec<CellSummary>,
    rotated: Vec<CellSummary>,
    max_ffe: usize,
}

fn run_protocol(variant: Variant, jobs: usize) -> Result<(Vec<CellSummary>, usize), String> {
    let algorithms = ALGOS.iter().map(|a| a.default_config()).collect();
    let mut plan = ExperimentPlan::new(FunctionId::ALL.to_vec(), algorithms);
    plan.variant = variant;
    let max_ffe = plan.max_ffe();
    let started = Instant::now();
    let cells = execute_plan(&plan, jobs).map_err(|e| e.to_string())?;
    println!(
        "info: {variant} protocol, {} cells x {} runs, {:.0} s on {jobs} thread(s)",
        cells.len(),
        plan.runs,
        started.elapsed().as_secs_f64()
    );
    Ok((cells, max_ffe))
}

fn cell(cells: &[CellSummary], f: FunctionId, a: Algorithm) -> &CellSummary {
    cells.iter().find(|c| c.function == f && c.algorithm == a).expect("cell present")
}

fn order_of(sums: &BTreeMap<Algorithm, usize>) -> Vec<Algorithm> {
    let mut order: Vec<Algorithm> = ALGOS.to_vec();
    order.sort_by_key(|a| (sums[a], a.index()));
    order
}

fn names(order: &[Algorithm]) -> String {
    order.iter().map(|a| a.name()).collect::<Vec<_>>().join(",")
}

fn rotated_ordering(p: &Protocol) -> Outcome {
    let table = RankTable::from_summaries(&p.rotated).map_err(|e| e.to_string())?;
    let order = order_of(&table.rank_sums);
    let sums: Vec<String> = ALGOS.iter().map(|a| format!("{a}={}", table.rank_sums[a])).collect();
    let detail = format!("order {} (sums {})", names(&order), sums.join(" "));
    let expected = [Algorithm::Abc, Algorithm::Pso, Algorithm::Tlbo, Algorithm::Ga, Algorithm::Coa];
    let middle_ok = {
        let got = &order[1..4];
        let want = &expected[1..4];
        got == want
            || (0..2).any(|i| {
                let mut swapped = want.to_vec();
                swapped.swap(i, i + 1);
                got == swapped.as_slice()
            })
    };
    if order[0] == Algorithm::Abc && order[4] == Algorithm::Coa && middle_ok {
        Ok(detail)
    } else {
        Err(format!("{detail}, expected {}", names(&expected)))
    }
}

fn tlbo_bias(p: &Protocol) -> Outcome {
    let plain = cell(&p.plain, FunctionId::Sphere, Algorithm::Tlbo).mean;
    let rotated = cell(&p.rotated, FunctionId::Sphere, Algorithm::Tlbo).mean;
    let ratio = rotated / plain;
    let detail = format!("plain {plain:e}, shift-rotated {rotated:e}, ratio {ratio:e}");
    if plain <= 1e-60 && rotated >= 1e-10 && ratio >= 1e10 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn headline_cells(p: &Protocol) -> Outcome {
    let checks = [
        (FunctionId::Sphere, Algorithm::Pso, 1e-20),
        (FunctionId::Rastrigin, Algorithm::Abc, 1e-2),
        (FunctionId::SchwefelN1_2, Algorithm::Abc, 1e-10),
        (FunctionId::Sphere, Algorithm::Coa, 1.0),
        (FunctionId::Rastrigin, Algorithm::Ga, 10.0),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (f, a, limit) in checks {
        let mean = cell(&p.plain, f, a).mean;
        ok &= mean <= limit;
        parts.push(format!("{a} {f} {mean:.3e} (<= {limit:e})"));
    }
    let detail = parts.join(", ");
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

const CONVERGENCE_FUNCTIONS: [FunctionId; 8] = [
    FunctionId::Sphere,
    FunctionId::Rosenbrock,
    FunctionId::BentCigar,
    FunctionId::SchwefelN2_22,
    FunctionId::Ackley,
    FunctionId::Schwefel,
    FunctionId::Rastrigin,
    FunctionId::InvertedVincent,
];

fn check_trace_file(path: &Path, record: &RunRecord) -> Result<(), String> {
    let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
    let mut lines = text.lines();
    if lines.next() != Some("ffe,best_so_far") {
        return Err(format!("{}: bad header", path.display()));
    }
    let mut prev: Option<(usize, f64)> = None;
    for line in lines {
        let (ffe, best) = line.split_once(',').ok_or_else(|| format!("{}: bad row", path.display()))?;
        let ffe: usize = ffe.parse().map_err(|_| format!("{}: bad ffe", path.display()))?;
        let best: f64 = best.parse().map_err(|_| format!("{}: bad value", path.display()))?;
        if let Some((pf, pb)) = prev {
            if ffe <= pf || best > pb {
                return Err(format!("{}: not monotone at ffe {ffe}", path.display()));
            }
        }
        prev = Some((ffe, best));
    }
    match prev {
        Some((ffe, best)) if ffe == record.ffe_used && best == record.best_value => Ok(()),
        _ => Err(format!("{}: closing sample does not match the run", path.display())),
    }
}

fn convergence_artifacts(p: &Protocol) -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut problems = Vec::new();
    let mut files = 0;
    let mut early: BTreeMap<Algorithm, usize> = BTreeMap::new();
    for (variant, cells) in [("plain", &p.plain), ("shift_rotated", &p.rotated)] {
        for f in CONVERGENCE_FUNCTIONS {
            for a in ALGOS {
                let c = cell(cells, f, a);
                let path = dir.path().join(format!("{variant}_{f}_{a}_0.csv"));
                write_trace(&path, &c.runs[0]).map_err(|e| e.to_string())?;
                if let Err(e) = check_trace_file(&path, &c.runs[0]) {
                    problems.push(e);
                }
                files += 1;
                for r in &c.runs {
                    if r.terminated_early {
                        *early.entry(a).or_default() += 1;
                    }
                    if matches!(a, Algorithm::Pso | Algorithm::Abc | Algorithm::Tlbo) && r.ffe_used != p.max_ffe {
                        problems.push(format!("{a} {f} {variant}: stopped at {} FFE", r.ffe_used));
                    }
                }
            }
        }
    }
    for a in ALGOS {
        let n = early.get(&a).copied().unwrap_or(0);
        match a {
            Algorithm::Ga | Algorithm::Coa if n == 0 => problems.push(format!("{a} never terminated early")),
            Algorithm::Pso | Algorithm::Abc | Algorithm::Tlbo if n > 0 => {
                problems.push(format!("{a} terminated early {n} times"))
            }
            _ => {}
        }
    }
    let counts: Vec<String> = ALGOS.iter().map(|a| format!("{a}={}", early.get(a).copied().unwrap_or(0))).collect();
    let detail = format!("{files} trace CSVs written; early terminations {}", counts.join(" "));
    if problems.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{detail}; {}", problems.join("; ")))
    }
}

fn unimodal_plain_info(p: &Protocol) {
    let unimodal: Vec<CellSummary> =
        p.plain.iter().filter(|c| c.function.index() < 10).cloned().collect();
    if let Ok(table) = RankTable::from_summaries(&unimodal) {
        println!("info: plain unimodal order {} (published tlbo,pso,abc,ga,coa)", names(&order_of(&table.rank_sums)));
    }
}

// ---------------------------------------------------------------------------
// 5. function suite

const NONNEGATIVE: [FunctionId; 12] = [
    FunctionId::Sphere,
    FunctionId::SchwefelN1_2,
    FunctionId::SchwefelN2_21,
    FunctionId::SchwefelN2_22,
    FunctionId::Step,
    FunctionId::Elliptic,
    FunctionId::BentCigar,
    FunctionId::Discus,
    FunctionId::Rastrigin,
    FunctionId::NCRastrigin,
    FunctionId::Ackley,
    FunctionId::Weierstrass,
];

fn function_suite() -> Outcome {
    let mut problems = Vec::new();
    let mut noise = RngStream::new(0);
    let mut checked = 0;
    for f in FunctionId::ALL {
        if f.is_noisy() || matches!(f, FunctionId::XinSheYangF4 | FunctionId::InvertedVincent) {
            continue;
        }
        for d in [2, 10, 30] {
            let spec = ObjectiveSpec::new(f, d).map_err(|e| e.to_string())?;
            let (Some(x), Some(target)) = (spec.optimum_location(), spec.optimum_value()) else {
                continue;
            };
            let value = evaluate(&spec, x, &mut noise).map_err(|e| e.to_string())?;
            let tol = if f == FunctionId::Schwefel { 1e-2 } else { 1e-9 };
            if (value - target).abs() > tol {
                problems.push(format!("{f} D={d}: F(x*) = {value:e}, listed {target:e}"));
            }
            checked += 1;
        }
    }
    let mut rng = RngStream::new(5);
    for f in NONNEGATIVE {
        let spec = ObjectiveSpec::new(f, 30).map_err(|e| e.to_string())?;
        for _ in 0..10_000 {
            let x = uniform_in_bounds(&mut rng, spec.bounds(), 30).map_err(|e| e.to_string())?;
            let v = evaluate(&spec, &x, &mut noise).map_err(|e| e.to_string())?;
            if !(v >= 0.0) {
                problems.push(format!("{f}: {v:e} at a random point"));
                break;
            }
        }
    }
    if problems.is_empty() {
        Ok(format!("{checked} optima within tolerance, 12 functions nonnegative over 10^4 points"))
    } else {
        Err(problems.join("; "))
    }
}

// ---------------------------------------------------------------------------
// 6. transform suite

fn transform_suite() -> Outcome {
    let d = 30;
    let mut problems = Vec::new();
    let mut worst_orth: f64 = 0.0;
    let mut worst_norm: f64 = 0.0;
    let mut worst_origin: f64 = 0.0;
    let mut noise = RngStream::new(1);
    let sphere = ObjectiveSpec::new(FunctionId::Sphere, d).map_err(|e| e.to_string())?;
    for seed in 0..100 {
        let mut rng = RngStream::new(seed);
        let t = make_shift_rotate(&mut rng, &sphere).map_err(|e| e.to_string())?;
        worst_orth = worst_orth.max(t.orthogonality_error());
        let v: Vec<f64> = (0..d).map(|_| rng.normal()).collect();
        let mut rv = vec![0.0; d];
        t.rotate(&v, &mut rv);
        let norm = |u: &[f64]| u.iter().map(|c| c * c).sum::<f64>().sqrt();
        worst_norm = worst_norm.max((norm(&rv) - norm(&v)).abs());
    }
    let mut rng = RngStream::new(7);
    for f in FunctionId::ALL {
        let spec = ObjectiveSpec::new(f, d).map_err(|e| e.to_string())?;
        let identity = ShiftRotate::identity(d);
        for k in 0..20u64 {
            let x = uniform_in_bounds(&mut rng, spec.bounds(), d).map_err(|e| e.to_string())?;
            let plain = evaluate(&spec, &x, &mut RngStream::new(k)).map_err(|e| e.to_string())?;
            let through = evaluate_transformed(&spec, &identity, &x, &mut RngStream::new(k)).map_err(|e| e.to_string())?;
            if plain.to_bits() != through.to_bits() {
                problems.push(format!("{f}: identity changed {plain:e} to {through:e}"));
                break;
            }
        }
        if f.is_noisy() {
            continue;
        }
        let t = make_shift_rotate(&mut rng, &spec).map_err(|e| e.to_string())?;
        let at_shift = evaluate_transformed(&spec, &t, t.shift(), &mut noise).map_err(|e| e.to_string())?;
        let at_origin = evaluate(&spec, &vec![0.0; d], &mut noise).map_err(|e| e.to_string())?;
        worst_origin = worst_origin.max((at_shift - at_origin).abs());
    }
    if worst_orth > 1e-9 {
        problems.push(format!("orthogonality error {worst_orth:e}"));
    }
    if worst_norm > 1e-9 {
        problems.push(format!("norm error {worst_norm:e}"));
    }
    if worst_origin > 1e-12 {
        problems.push(format!("f(s) differs from f(0) by {worst_origin:e}"));
    }
    let detail = format!("max |R'R - I| {worst_orth:.1e}, norm error {worst_norm:.1e}, |f(s) - f(0)| {worst_origin:.1e}");
    if problems.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{detail}; {}", problems.join("; ")))
    }
}

// ---------------------------------------------------------------------------
// 7. invariants

fn plain_run(alg: Algorithm, f: FunctionId, d: usize, budget: usize, seed: u64) -> Result<RunRecord, String> {
    let inst = Instance::plain(ObjectiveSpec::new(f, d).map_err(|e| e.to_string())?);
    let eval = Evaluator::new(&inst, EvaluationBudget::new(budget), RngStream::new(seed ^ 0x5eed)).with_trace_stride(1);
    alg.default_config().run(eval, &mut RngStream::new(seed)).map_err(|e| e.to_string())
}

fn invariant_suite(p: &Protocol) -> Outcome {
    let mut problems = Vec::new();
    for alg in ALGOS {
        for f in [FunctionId::Sphere, FunctionId::Rastrigin, FunctionId::Rosenbrock] {
            for seed in 0..5 {
                let rec = plain_run(alg, f, 10, 13_330, seed)?;
                if rec.trace.windows(2).any(|w| w[1].best_so_far > w[0].best_so_far) {
                    problems.push(format!("{alg} {f} seed {seed}: trace increases"));
                }
                if rec.ffe_used > 13_330 {
                    problems.push(format!("{alg} {f} seed {seed}: {} FFE", rec.ffe_used));
                }
                let again = plain_run(alg, f, 10, 13_330, seed)?;
                if again != rec {
                    problems.push(format!("{alg} {f} seed {seed}: rerun differs"));
                }
            }
        }
    }
    let over = p.plain.iter().chain(&p.rotated).flat_map(|c| &c.runs).filter(|r| r.ffe_used > p.max_ffe).count();
    if over > 0 {
        problems.push(format!("{over} protocol runs exceeded {} FFE", p.max_ffe));
    }
    // the same cells rerun through the harness reproduce the protocol bitwise
    let mut plan = ExperimentPlan::from_names(&["sphere", "ackley"], &["ga", "coa"]).map_err(|e| e.to_string())?;
    plan.variant = Variant::ShiftRotated;
    for f in &plan.functions {
        for config in &plan.algorithms {
            let rec = run_single(&plan, *f, config, 3).map_err(|e| e.to_string())?;
            if rec != cell(&p.rotated, *f, config.algorithm()).runs[3] {
                problems.push(format!("{} {f}: harness rerun differs from the protocol", config.algorithm()));
            }
        }
    }
    for alg in ALGOS {
        for seed in 0..10 {
            let best = plain_run(alg, FunctionId::Sphere, 10, 13_330, seed)?.best_value;
            let inst = Instance::plain(ObjectiveSpec::new(FunctionId::Sphere, 10).map_err(|e| e.to_string())?);
            let eval = Evaluator::new(&inst, EvaluationBudget::new(13_330), RngStream::new(seed ^ 0x5eed));
            let random = run_random_search(eval, &mut RngStream::new(seed)).map_err(|e| e.to_string())?.best_value;
            if best >= random {
                problems.push(format!("{alg} seed {seed}: {best:e} vs random {random:e}"));
            }
        }
    }
    if problems.is_empty() {
        Ok("monotone traces, FFE ceiling, bitwise reruns, all 50 paired runs beat random search".into())
    } else {
        Err(problems.join("; "))
    }
}

// ---------------------------------------------------------------------------

fn report(n: usize, name: &str, outcome: Outcome, failed: &mut bool) {
    match outcome {
        Ok(detail) => println!("PASS {n} {name}: {detail}"),
        Err(detail) => {
            *failed = true;
            println!("FAIL {n} {name}: {detail}");
        }
    }
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    // cargo passes harness flags such as --list; there is nothing to list
    if args.iter().any(|a| a == "--list") {
        return ExitCode::SUCCESS;
    }
    let jobs = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
    let mut failed = false;

    report(1, "ranking oracles", ranking_oracles(), &mut failed);
    report(5, "function suite", function_suite(), &mut failed);
    report(6, "transform suite", transform_suite(), &mut failed);

    let protocol = run_protocol(Variant::Plain, jobs)
        .and_then(|(plain, max_ffe)| run_protocol(Variant::ShiftRotated, jobs).map(|(rotated, _)| Protocol { plain, rotated, max_ffe }));
    match protocol {
        Ok(p) => {
            unimodal_plain_info(&p);
            report(2, "shift-rotated ordering", rotated_ordering(&p), &mut failed);
            report(3, "TLBO center bias", tlbo_bias(&p), &mut failed);
            report(4, "headline cells", headline_cells(&p), &mut failed);
            report(7, "invariants", invariant_suite(&p), &mut failed);
            report(8, "convergence artifacts", convergence_artifacts(&p), &mut failed);
        }
        Err(e) => {
            for (n, name) in [(2, "shift-rotated ordering"), (3, "TLBO center bias"), (4, "headline cells"), (7, "invariants"), (8, "convergence artifacts")] {
                report(n, name, Err(format!("protocol failed: {e}")), &mut failed);
            }
        }
    }

    if failed {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
