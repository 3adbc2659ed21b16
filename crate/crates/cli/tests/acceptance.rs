use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::time::Instant;

use summa_core::convexdual::{i_generates, is_boundary, Cap, Certainty, DualBody, GeneratingSet};
use summa_core::sampling::SampleRng;
use summa_core::simonslab::{
    check_cor33, check_simons, check_theorem31, pmap_condition_audit, random_constant_sequences,
    random_suite, AuditOutcome, Instance, LabOptions, PMapSpec, SuiteSpec,
};
use summa_core::summability::{
    classify_almost, classify_ordinary, classify_pre_cauchy, classify_pre_cauchy_count,
    classify_statistical, classify_strong, compare_verdicts, fa_term, pre_cauchy_mean_term,
    strong_term, Agreement, Exactness, NumericOptions, ShiftSet, SummabilityMatrix,
};
use summa_core::{IntegerSet, SequenceSpec, VectorSequence};

const SUITE_SEED: u64 = 2024;
const EXACT: f64 = 1e-9;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e(err: impl std::fmt::Display) -> String {
    err.to_string()
}

fn suite() -> Result<Vec<Instance>, String> {
    random_suite(&SuiteSpec::new(100), SUITE_SEED).map_err(e)
}

fn lab() -> LabOptions {
    LabOptions {
        seed: SUITE_SEED,
        ..LabOptions::default()
    }
}

fn quiet() -> NumericOptions {
    NumericOptions {
        diagnostics: false,
        ..NumericOptions::default()
    }
}

fn cesaro() -> SummabilityMatrix {
    SummabilityMatrix::cesaro()
}

fn simons_suite() -> Outcome {
    let start = Instant::now();
    let instances = suite()?;
    let opts = lab();
    let mut worst: f64 = 0.0;
    for inst in &instances {
        let dim = inst.body.dim();
        let nv = inst.body.vertices().map_or(0, <[_]>::len);
        ensure((2..=4).contains(&dim) && (4..=12).contains(&nv), || {
            format!("instance {} has d={dim}, {nv} vertices", inst.id)
        })?;
        let r = check_simons(&inst.body, &inst.generating_set, &inst.xs, &opts).map_err(e)?;
        let gap = (r.lhs.value - r.rhs.value).abs();
        worst = worst.max(gap);
        ensure(gap <= EXACT, || {
            format!("instance {}: gap {gap:e}", inst.id)
        })?;
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 10.0, || format!("took {secs:.2}s"))?;
    Ok(format!(
        "100/100 within 1e-9 (max gap {worst:e}), {secs:.2}s"
    ))
}

fn disk() -> Outcome {
    let k = DualBody::ball(1.0, 2).map_err(e)?;
    let cap = Cap {
        direction: vec![0.49278549976552394, 0.8701508209620001],
        angular_radius: 1e-6,
    };
    let b = GeneratingSet::sphere_sample(10_000, 7, Some(cap));
    let kept = b.points(&k).map_err(e)?.len();
    ensure(kept == 9_999, || {
        format!("cap removed {} points", 10_000 - kept)
    })?;
    let g = i_generates(&b, &k, 1e-2, 7).map_err(e)?;
    ensure(g.generates, || format!("not generating, gap {}", g.max_gap))?;
    let bd = is_boundary(&b, &k, 1000, 7).map_err(e)?;
    let w = bd.witness.clone().ok_or("is_boundary gave no witness")?;
    let h_b = b
        .points(&k)
        .map_err(e)?
        .iter()
        .map(|p| p[0] * w[0] + p[1] * w[1])
        .fold(f64::NEG_INFINITY, f64::max);
    ensure(
        !bd.is_boundary && h_b < k.support_value(&w).map_err(e)?,
        || "boundary check not refuted".into(),
    )?;
    let opts = LabOptions {
        seed: 3,
        ..LabOptions::default()
    };
    let mut rng = SampleRng::new(3);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let coords = (0..2)
            .map(|_| {
                let pre = (0..rng.int_in(0, 3))
                    .map(|_| rng.uniform_in(-1.0, 1.0))
                    .collect();
                let per = (0..rng.int_in(1, 8))
                    .map(|_| rng.uniform_in(-1.0, 1.0))
                    .collect();
                SequenceSpec::periodic(pre, per).map_err(e)
            })
            .collect::<Result<Vec<_>, _>>()?;
        let xs = VectorSequence::new(coords).map_err(e)?;
        let r = check_simons(&k, &b, &xs, &opts).map_err(e)?;
        worst = worst.max((r.lhs.value - r.rhs.value).abs());
    }
    ensure(worst <= 1e-2, || format!("max gap {worst}"))?;
    Ok(format!(
        "generates (probe gap {:.1e}); not a boundary, witness {w:?}; 20 sequences max gap {worst:.1e}",
        g.max_gap
    ))
}

fn negative_control() -> Outcome {
    let k = DualBody::cross_polytope(2).map_err(e)?;
    let b = GeneratingSet::FinitePoints(vec![vec![1.0, 0.0], vec![-1.0, 0.0], vec![0.0, 1.0]]);
    let g = i_generates(&b, &k, 1e-2, 11).map_err(e)?;
    ensure(!g.generates && g.certainty == Certainty::Exact, || {
        format!("i_generates: {g:?}")
    })?;
    let opts = LabOptions {
        seed: 11,
        ..LabOptions::default()
    };
    let mut best: f64 = f64::NEG_INFINITY;
    for xs in random_constant_sequences(2, 100, 11) {
        let r = check_simons(&k, &b, &xs, &opts).map_err(e)?;
        best = best.max(r.lhs.value - r.rhs.value);
    }
    ensure(best >= 0.1, || format!("largest lhs - rhs {best}"))?;
    Ok(format!(
        "i_generates exactly false, witness {:?}; largest lhs - rhs {best:.3}",
        g.witness
    ))
}

fn theorem31_kinds() -> Result<Vec<PMapSpec>, String> {
    let mut kinds = vec![PMapSpec::identity()];
    for p in [1.0, 2.0, 4.0] {
        kinds.push(PMapSpec::strong(cesaro(), p).map_err(e)?);
    }
    for p in [1.0, 2.0] {
        kinds.push(PMapSpec::strong_root(cesaro(), p).map_err(e)?);
    }
    let alternating = SequenceSpec::periodic(vec![], vec![1.0, 2.0]).map_err(e)?;
    kinds.push(PMapSpec::maddox(cesaro(), alternating).map_err(e)?);
    kinds.push(PMapSpec::pre_cauchy_mean());
    kinds.push(PMapSpec::fa_shift_sup(cesaro(), ShiftSet::Exhaustive));
    Ok(kinds)
}

fn theorem31() -> Outcome {
    let instances = suite()?;
    let opts = lab();
    let kinds = theorem31_kinds()?;
    let maddox = &kinds[6];
    ensure(maddox.m() == 2.0, || format!("maddox M = {}", maddox.m()))?;
    let mut rows = 0;
    let mut tightest: f64 = 0.0;
    for pm in &kinds {
        for inst in &instances {
            let r = check_theorem31(pm, &inst.body, &inst.generating_set, &inst.xs, &opts)
                .map_err(e)?;
            ensure(r.lhs.value <= r.m * r.rhs.value + EXACT, || {
                format!(
                    "{pm:?} instance {}: {} > {} * {}",
                    inst.id, r.lhs.value, r.m, r.rhs.value
                )
            })?;
            tightest = tightest.max(r.ratio().unwrap_or(0.0));
            rows += 1;
        }
    }
    Ok(format!(
        "{rows} rows over {} kinds, 0 violations, max lhs/(M rhs) {tightest:.6}",
        kinds.len()
    ))
}

fn cor33() -> Outcome {
    let instances = suite()?;
    let opts = lab();
    let mut worst: f64 = 0.0;
    for p in [1.0, 2.0, 4.0] {
        for inst in &instances {
            let r = check_cor33(
                &inst.body,
                &inst.generating_set,
                &cesaro(),
                p,
                &inst.xs,
                &opts,
            )
            .map_err(e)?;
            let gap = (r.lhs.value - r.rhs.value).abs();
            worst = worst.max(gap);
            ensure(gap <= EXACT, || {
                format!("p={p} instance {}: gap {gap:e}", inst.id)
            })?;
        }
    }
    Ok(format!("300/300 within 1e-9 (max gap {worst:e})"))
}

fn random_bounded(rng: &mut SampleRng) -> Result<SequenceSpec, String> {
    let pre = (0..rng.int_in(0, 3))
        .map(|_| rng.uniform_in(-1.0, 1.0))
        .collect();
    let per = (0..rng.int_in(1, 8))
        .map(|_| rng.uniform_in(-1.0, 1.0))
        .collect();
    let base = SequenceSpec::periodic(pre, per).map_err(e)?;
    Ok(match rng.int_in(0, 2) {
        0 => base,
        i => {
            let set = if i == 1 {
                IntegerSet::Squares
            } else {
                IntegerSet::PowersOfTwo
            };
            let on = rng.uniform_in(-1.0, 1.0);
            SequenceSpec::combo(
                vec![1.0, 1.0],
                vec![base, SequenceSpec::indicator(set, on, 0.0)],
            )
            .map_err(e)?
        }
    })
}

fn squares_desk_check() -> Outcome {
    let squares = SequenceSpec::squares();
    let v = classify_statistical(&cesaro(), &squares, &quiet()).map_err(e)?;
    ensure(
        v.limit() == Some(0.0) && matches!(v.exactness(), Some(Exactness::Exact(_))),
        || format!("statistical verdict {:?}", v.status),
    )?;
    let n = 100_000u64;
    let closed = (n as f64).sqrt().floor() / n as f64;
    for p in [0.5, 1.0, 2.0] {
        let t = strong_term(&cesaro(), &squares, 0.0, p, n).map_err(e)?;
        ensure((t - closed).abs() <= 1e-12 && t <= 0.0032 + 1e-12, || {
            format!("p={p}: term {t}, closed form {closed}")
        })?;
    }
    let ps = [0.5, 1.0, 2.0, 3.0];
    let mut rng = SampleRng::new(SUITE_SEED);
    let mut inconclusive = 0;
    for i in 0..200 {
        let s = random_bounded(&mut rng)?;
        let verdicts = ps
            .iter()
            .map(|&p| classify_strong(&cesaro(), &s, p, &quiet()).map_err(e))
            .collect::<Result<Vec<_>, _>>()?;
        for a in 0..ps.len() {
            for b in a + 1..ps.len() {
                match compare_verdicts(&verdicts[a], &verdicts[b], EXACT) {
                    Agreement::Agree => {}
                    Agreement::Inconclusive => inconclusive += 1,
                    Agreement::Disagree => {
                        return Err(format!(
                            "spec {i} ({}): p={} and p={} disagree",
                            s.describe(),
                            ps[a],
                            ps[b]
                        ))
                    }
                }
            }
        }
    }
    Ok(format!(
        "statistical limit 0 exact; strong term {closed} for p in 0.5,1,2; 200 specs x 6 exponent pairs, 0 disagreements, {inconclusive} inconclusive"
    ))
}

fn almost() -> Outcome {
    let s = SequenceSpec::alternating_ones();
    let v = classify_almost(&s, &quiet()).map_err(e)?;
    ensure(v.limit() == Some(0.5) && v.is_exact(), || {
        format!("almost verdict {:?}", v.status)
    })?;
    for n in 1..=1000u64 {
        let t = fa_term(&cesaro(), &s, 0.5, n, &ShiftSet::Exhaustive).map_err(e)?;
        let oracle = (0..=2 * n)
            .map(|l| ((l + 1..=l + n).map(|k| s.value_at(k)).sum::<f64>() / n as f64 - 0.5).abs())
            .fold(0.0, f64::max);
        ensure(
            (t - oracle).abs() <= 1e-12 && t <= 1.0 / n as f64 + 1e-12,
            || format!("n={n}: fa_term {t}, window oracle {oracle}"),
        )?;
    }
    let ord = classify_ordinary(&s, &quiet()).map_err(e)?;
    let stat = classify_statistical(&cesaro(), &s, &quiet()).map_err(e)?;
    ensure(ord.diverges() && stat.diverges(), || {
        format!("ordinary {:?}, statistical {:?}", ord.status, stat.status)
    })?;
    Ok("almost limit 0.5 exact; fa_term <= 1/n and matches windows for n <= 1000; not convergent, not statistically convergent".into())
}

fn grid_bounded(rng: &mut SampleRng) -> Result<SequenceSpec, String> {
    let grid = |rng: &mut SampleRng, len: usize| -> Vec<f64> {
        (0..len)
            .map(|_| rng.int_in(0, 4) as f64 / 2.0 - 1.0)
            .collect()
    };
    let len = rng.int_in(0, 3);
    let pre = grid(rng, len);
    let len = rng.int_in(1, 8);
    let per = grid(rng, len);
    let base = SequenceSpec::periodic(pre, per).map_err(e)?;
    Ok(match rng.int_in(0, 2) {
        0 => base,
        i => {
            let set = if i == 1 {
                IntegerSet::Squares
            } else {
                IntegerSet::PowersOfTwo
            };
            let on = rng.int_in(0, 4) as f64 / 2.0 - 1.0;
            SequenceSpec::combo(
                vec![1.0, 1.0],
                vec![base, SequenceSpec::indicator(set, on, 0.0)],
            )
            .map_err(e)?
        }
    })
}

fn pre_cauchy() -> Outcome {
    let alt = SequenceSpec::alternating_ones();
    let t = pre_cauchy_mean_term(&alt, 1000);
    ensure((t - 0.5).abs() <= 1e-3, || {
        format!("mean term at 1000: {t}")
    })?;
    for c in [-2.0, 0.0, 0.75, 3.0] {
        let s = SequenceSpec::constant(c);
        for n in 1..=1000 {
            let t = pre_cauchy_mean_term(&s, n);
            ensure(t == 0.0, || format!("constant {c}, n={n}: {t}"))?;
        }
    }
    let mut rng = SampleRng::new(SUITE_SEED);
    let mut converging = 0;
    for i in 0..200 {
        let s = grid_bounded(&mut rng)?;
        let mean = classify_pre_cauchy(&s, &quiet()).map_err(e)?;
        converging += mean.converges() as usize;
        for eps in [0.1, 0.5] {
            let count = classify_pre_cauchy_count(&s, eps, &quiet()).map_err(e)?;
            ensure(mean.converges() == count.converges(), || {
                format!(
                    "spec {i} ({}) eps={eps}: mean {:?}, count {:?}",
                    s.describe(),
                    mean.status,
                    count.status
                )
            })?;
        }
    }
    Ok(format!(
        "mean term at 1000 = {t}; constants give 0; 200 grid specs ({converging} pre-Cauchy) agree at eps 0.1 and 0.5"
    ))
}

fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn summa(sub: &str, config: &Path) -> Result<(i32, String), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_summa"))
        .args([sub, "--config"])
        .arg(config)
        .env_remove("SUMMA_SEED")
        .output()
        .map_err(e)?;
    Ok((
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).map_err(e)?,
    ))
}

fn toeplitz() -> Outcome {
    let (code, csv) = summa("regularity", &configs().join("regularity_builtins.json"))?;
    ensure(code == 0, || format!("builtins exited {code}"))?;
    for line in csv.lines().skip(1) {
        let cells: Vec<&str> = line.split(',').collect();
        ensure(cells[1] == "10000" && cells[6] == "consistent", || {
            format!("builtin row {line}")
        })?;
    }
    let (code, csv) = summa("regularity", &configs().join("regularity_doctored.json"))?;
    ensure(code == 1, || format!("doctored exited {code}"))?;
    let rows: Vec<Vec<&str>> = csv
        .lines()
        .skip(1)
        .map(|l| l.split(',').collect())
        .collect();
    let refuted: Vec<&Vec<&str>> = rows.iter().filter(|r| r[6] == "REFUTED").collect();
    ensure(refuted.len() == 2, || {
        format!("{} rows refuted", refuted.len())
    })?;
    ensure(refuted[0][7].starts_with("row_sums: row 1 value 2"), || {
        refuted[0][7].to_string()
    })?;
    ensure(
        refuted[1][7].starts_with("columns: column 1 value 1"),
        || refuted[1][7].to_string(),
    )?;
    Ok(format!(
        "builtins consistent at depth 1e4; doctored REFUTED ({}; {}), exit 1",
        refuted[0][7], refuted[1][7]
    ))
}

fn audit() -> Outcome {
    let mut kinds = theorem31_kinds()?;
    kinds.push(PMapSpec::zero());
    for pm in &kinds {
        let r = pmap_condition_audit(pm, 200, SUITE_SEED).map_err(e)?;
        for name in [
            "p_zero",
            "midpoint_convexity",
            "quasi_additivity",
            "continuity_at_zero",
        ] {
            ensure(r.check(name).is_some(), || {
                format!("{}: no {name} check", r.pmap)
            })?;
        }
        ensure(r.passed(), || format!("{}: {:?}", r.pmap, r.checks))?;
    }
    let wrong = PMapSpec::strong(cesaro(), 2.0)
        .map_err(e)?
        .with_declared_m(1.0);
    let r = pmap_condition_audit(&wrong, 200, SUITE_SEED).map_err(e)?;
    let qa = r
        .check("quasi_additivity")
        .ok_or("no quasi_additivity check")?;
    match &qa.outcome {
        AuditOutcome::Refuted(w) => Ok(format!(
            "{} kinds pass all four checks; strong(cesaro,2) at M=1 refuted: {w}",
            kinds.len()
        )),
        AuditOutcome::Passed => Err("strong(cesaro,2) with M=1 passed quasi-additivity".into()),
    }
}

fn determinism() -> Outcome {
    let mut names: Vec<String> = std::fs::read_dir(configs())
        .map_err(e)?
        .filter_map(|d| d.ok()?.file_name().into_string().ok())
        .filter(|n| n.ends_with(".json"))
        .collect();
    names.sort();
    for name in &names {
        let sub = if name.starts_with("classify_") {
            "classify"
        } else if name.starts_with("regularity_") {
            "regularity"
        } else {
            "verify"
        };
        let path = configs().join(name);
        let first = summa(sub, &path)?;
        let second = summa(sub, &path)?;
        ensure(first.0 != 2, || format!("{name}: config error"))?;
        ensure(first == second, || format!("{name}: reruns differ"))?;
    }
    Ok(format!(
        "{} bundled configs byte-identical across reruns",
        names.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("simons equality suite", simons_suite),
        ("disk generated without a boundary", disk),
        ("negative control", negative_control),
        ("quasi-additive inequality suite", theorem31),
        ("strong-p equality suite", cor33),
        ("squares desk check", squares_desk_check),
        ("almost convergence", almost),
        ("statistical pre-Cauchy", pre_cauchy),
        ("toeplitz falsifier", toeplitz),
        ("p-map condition audit", audit),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
