//! Acceptance suite. Prints one `PASS`/`FAIL`/`SKIP` line per criterion and
//! exits non-zero when any criterion fails.
//!
//! The reference-matrix check runs only when `RIGSPACE_PUBLISHED_MATRIX`
//! points at a `word,<category>...` CSV of the 5000 × 252 RIG matrix.

#![allow(clippy::needless_range_loop)]

mod common;

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::time::{Duration, Instant};

use common::{
    cells_of, duplicate, joint_mi, random_corpus, random_table, rigspace, write_tokenized,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rigspace::corpus::{CorpusIndex, Document};
use rigspace::infogain::{build_rig_matrix, rank_by_rig, ContingencyTable, RigMatrix};
use rigspace::pca::{
    broken_stick_select, explained_variance, extreme_ends, fit_pca, kaiser_select, loading_groups,
    pca_cn_select, ExtremeEndsOptions, LoadingConvention,
};
use rigspace::synthetic::PlantedTopics;

const TOL: f64 = 1e-12;
const MATRIX_ENV: &str = "RIGSPACE_PUBLISHED_MATRIX";

enum Verdict {
    Pass(String),
    Fail(String),
    Skip(String),
}

type Check = fn() -> Verdict;

fn fail_if(errors: Vec<String>, ok: String) -> Verdict {
    if errors.is_empty() {
        Verdict::Pass(ok)
    } else {
        let shown: Vec<_> = errors.iter().take(3).cloned().collect();
        Verdict::Fail(format!(
            "{} problem(s): {} [{ok}]",
            errors.len(),
            shown.join("; ")
        ))
    }
}

fn within(limit: Duration, elapsed: Duration, errors: &mut Vec<String>) {
    if elapsed >= limit {
        errors.push(format!("took {elapsed:.2?}, limit {limit:?}"));
    }
}

fn tables() -> Vec<(u64, u64, u64, u64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_101);
    (0..1000).map(|_| random_table(&mut rng, 50)).collect()
}

fn mi_oracle() -> Verdict {
    let tables = tables();
    let start = Instant::now();
    let gains: Vec<f64> = tables
        .iter()
        .map(|&(w, dj, dk, m)| {
            ContingencyTable::new(w, dj, dk, m)
                .unwrap()
                .information_gain()
        })
        .collect();
    let elapsed = start.elapsed();
    let mut errors = Vec::new();
    let mut worst = 0.0f64;
    for (&(w, dj, dk, m), ig) in tables.iter().zip(&gains) {
        let diff = (ig - joint_mi(cells_of(w, dj, dk, m))).abs();
        worst = worst.max(diff);
        if diff >= TOL {
            errors.push(format!("({w},{dj},{dk},{m}) off by {diff:e}"));
        }
    }
    within(Duration::from_secs(1), elapsed, &mut errors);
    fail_if(
        errors,
        format!("1000 tables, max |diff| {worst:e}, {elapsed:.2?}"),
    )
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn bounds_and_conventions() -> Verdict {
    let mut errors = Vec::new();
    let mut degenerate = 0;
    let mut independent = 0;
    let mut check = |(w, dj, dk, m): (u64, u64, u64, u64), errors: &mut Vec<String>| {
        let t = ContingencyTable::new(w, dj, dk, m).unwrap();
        let rig = t.relative_information_gain();
        if !(0.0..=1.0).contains(&rig) {
            errors.push(format!("({w},{dj},{dk},{m}) rig {rig}"));
        }
        if dk == 0 || dk == m {
            degenerate += 1;
            if !t.is_degenerate_category() || rig != 0.0 {
                errors.push(format!("({w},{dj},{dk},{m}) degenerate not flagged"));
            }
        }
        if w * m == dj * dk {
            independent += 1;
            if t.information_gain() >= TOL {
                errors.push(format!(
                    "({w},{dj},{dk},{m}) independent ig {}",
                    t.information_gain()
                ));
            }
        }
    };
    for t in tables() {
        check(t, &mut errors);
    }
    // Exact-independence tables: dj a multiple of m / gcd(dk, m).
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for _ in 0..1000 {
        let m = rng.gen_range(1..=50u64);
        let dk = rng.gen_range(0..=m);
        let g = gcd(dk, m);
        let s = rng.gen_range(0..=g);
        check((s * (dk / g), s * (m / g), dk, m), &mut errors);
    }
    // Matrix level: a category covering every document is reported.
    let docs = vec![
        Document::new("a", ["x", "y"], ["All", "Some"]).unwrap(),
        Document::new("b", ["y"], ["All"]).unwrap(),
    ];
    let matrix = build_rig_matrix(&CorpusIndex::from_documents(&docs, 1).unwrap()).unwrap();
    if matrix.degenerate_categories() != [0] || matrix.column(0).any(|v| v != 0.0) {
        errors.push("category covering every document not flagged".into());
    }
    fail_if(
        errors,
        format!("{degenerate} degenerate and {independent} independent tables checked"),
    )
}

fn duplication_invariance() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(3_003);
    let mut errors = Vec::new();
    let mut worst = 0.0f64;
    for i in 0..100 {
        let docs = random_corpus(&mut rng, 30, 15, 5);
        let base = CorpusIndex::from_documents(&docs, 1).and_then(|x| build_rig_matrix(&x));
        let tripled =
            CorpusIndex::from_documents(&duplicate(&docs, 3), 1).and_then(|x| build_rig_matrix(&x));
        match (base, tripled) {
            (Ok(a), Ok(b)) => {
                if a.words() != b.words() || a.categories() != b.categories() {
                    errors.push(format!("corpus {i}: shape changed"));
                    continue;
                }
                for (x, y) in a.values().iter().zip(b.values()) {
                    worst = worst.max((x - y).abs());
                }
            }
            (Err(_), Err(_)) => {}
            _ => errors.push(format!("corpus {i}: only one side built")),
        }
    }
    if worst > TOL {
        errors.push(format!("max change {worst:e}"));
    }
    fail_if(errors, format!("100 corpora tripled, max change {worst:e}"))
}

fn planted_seed_ok(fixture: &PlantedTopics, seed: u64) -> bool {
    let index = CorpusIndex::from_documents(&fixture.generate(seed), 1).unwrap();
    let matrix = build_rig_matrix(&index).unwrap();
    let fillers = fixture.filler_words();
    for c in 0..fixture.categories {
        let planted = fixture.topic_words(c);
        for word in &planted {
            let Ok(j) = matrix.word_position(word) else {
                return false;
            };
            let row = matrix.row(j);
            if (0..row.len()).any(|k| k != c && row[k] >= row[c]) {
                return false;
            }
        }
        let cat = PlantedTopics::category_name(c);
        let ranked = rank_by_rig(&matrix, &cat, matrix.num_words()).unwrap();
        let last_planted = ranked.iter().rposition(|r| planted.contains(&r.word));
        let first_filler = ranked.iter().position(|r| fillers.contains(&r.word));
        match (last_planted, first_filler) {
            (Some(p), Some(f)) if p < f => {}
            (Some(_), None) => {}
            _ => return false,
        }
    }
    true
}

fn planted_topics() -> Verdict {
    let fixture = PlantedTopics::default();
    let start = Instant::now();
    let good = (0..100u64)
        .filter(|&s| planted_seed_ok(&fixture, s))
        .count();
    let elapsed = start.elapsed();
    let mut errors = Vec::new();
    if good < 95 {
        errors.push(format!("only {good}/100 seeds separated"));
    }
    within(Duration::from_secs(10), elapsed, &mut errors);
    fail_if(errors, format!("{good}/100 seeds separated, {elapsed:.2?}"))
}

fn pca_correctness() -> Verdict {
    let mut errors = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(500);
    for trial in 0..10 {
        let (n, k) = (500, 20);
        let values: Vec<f64> = (0..n * k)
            .map(|i| {
                let base: f64 = rng.gen_range(0.0..1.0);
                // Column scales differ so the spectrum is uneven.
                base * (1.0 + (i % k) as f64 / k as f64)
            })
            .collect();
        let matrix = RigMatrix::from_parts(
            (0..n).map(|i| format!("w{i}")).collect(),
            (0..k).map(|i| format!("c{i}")).collect(),
            values,
        )
        .unwrap();
        let model = fit_pca(&matrix).unwrap();
        let vs = model.eigenvectors();
        let ev = model.eigenvalues();
        for a in 0..k {
            for b in 0..k {
                let dot: f64 = vs[a].iter().zip(&vs[b]).map(|(x, y)| x * y).sum();
                let expect = if a == b { 1.0 } else { 0.0 };
                if (dot - expect).abs() >= 1e-10 {
                    errors.push(format!("trial {trial}: v{a}·v{b} = {dot}"));
                }
            }
        }
        let means: Vec<f64> = (0..k)
            .map(|c| matrix.column(c).sum::<f64>() / n as f64)
            .collect();
        let trace: f64 = (0..k)
            .map(|c| {
                matrix
                    .column(c)
                    .map(|x| (x - means[c]).powi(2))
                    .sum::<f64>()
                    / (n - 1) as f64
            })
            .sum();
        if (ev.iter().sum::<f64>() - trace).abs() >= 1e-10 {
            errors.push(format!("trial {trial}: trace mismatch"));
        }
        for a in 0..k {
            for b in a..k {
                let cov: f64 = (0..n)
                    .map(|j| model.scores(j)[a] * model.scores(j)[b])
                    .sum::<f64>()
                    / (n - 1) as f64;
                let expect = if a == b { ev[a] } else { 0.0 };
                if (cov - expect).abs() >= 1e-8 {
                    errors.push(format!("trial {trial}: score cov ({a},{b}) = {cov}"));
                }
            }
        }
    }

    let hand = [
        (
            "kaiser",
            kaiser_select(&[3.0, 1.5, 0.5, 0.4, 0.3, 0.3]).unwrap().k,
            2,
        ),
        (
            "broken_stick",
            broken_stick_select(&[6.0, 2.0, 1.0, 1.0]).unwrap().k,
            1,
        ),
        (
            "pca_cn",
            pca_cn_select(&[9.0, 3.0, 1.0, 0.5], 10.0).unwrap().k,
            3,
        ),
    ];
    for (rule, got, want) in hand {
        if got != want {
            errors.push(format!("{rule}: k = {got}, want {want}"));
        }
    }
    let flat = kaiser_select(&[1.0; 4]).unwrap();
    if (flat.k, flat.flagged) != (1, true) {
        errors.push("flat spectrum not flagged".into());
    }
    let boundary = broken_stick_select(&rigspace::pca::broken_stick_thresholds(4)).unwrap();
    if (boundary.k, boundary.flagged) != (1, true) {
        errors.push("broken-stick boundary not flagged".into());
    }

    let n = 300;
    let dup: Vec<f64> = (0..n)
        .flat_map(|_| {
            let a: f64 = rng.gen_range(0.0..1.0);
            let b: f64 = rng.gen_range(0.0..1.0);
            [a, b, a]
        })
        .collect();
    let dup = RigMatrix::from_parts(
        (0..n).map(|i| format!("w{i}")).collect(),
        vec!["p".into(), "q".into(), "r".into()],
        dup,
    )
    .unwrap();
    let smallest = *fit_pca(&dup).unwrap().eigenvalues().last().unwrap();
    if smallest.abs() >= 1e-10 {
        errors.push(format!(
            "duplicated column: smallest eigenvalue {smallest:e}"
        ));
    }
    fail_if(
        errors,
        format!("10 random 500x20 fits, hand spectra 2/1/3, duplicated column {smallest:e}"),
    )
}

const EXPECTED_KAISER: usize = 61;
const EXPECTED_BROKEN_STICK: usize = 16;
const EXPECTED_PCA_CN: usize = 13;
const EXPECTED_CUMULATIVE_AT_KAISER: f64 = 0.73;
const EXPECTED_PC1_FRACTION: f64 = 0.1258;
/// Positive, zero and negative category counts for components 1 to 5.
const EXPECTED_GROUP_COUNTS: [(usize, usize, usize); 5] = [
    (221, 31, 0),
    (63, 131, 58),
    (60, 131, 61),
    (67, 129, 56),
    (55, 142, 55),
];
const SOCIAL_END: [&str; 3] = ["argu", "polit", "discours"];
const CLINICAL_END: [&str; 3] = ["clinic", "treatment", "therapi"];

fn published_matrix() -> Verdict {
    let Some(path) = std::env::var_os(MATRIX_ENV) else {
        return Verdict::Skip(format!("{MATRIX_ENV} not set"));
    };
    let matrix = match RigMatrix::load_csv(Path::new(&path)) {
        Ok(m) => m,
        Err(e) => return Verdict::Fail(format!("cannot load {path:?}: {e}")),
    };
    let mut errors = Vec::new();
    let start = Instant::now();
    let model = match fit_pca(&matrix) {
        Ok(m) => m,
        Err(e) => return Verdict::Fail(format!("fit failed: {e}")),
    };
    let elapsed = start.elapsed();
    within(Duration::from_secs(60), elapsed, &mut errors);

    let ev = model.eigenvalues();
    let kaiser = kaiser_select(ev).unwrap().k;
    let stick = broken_stick_select(ev).unwrap().k;
    let cn = pca_cn_select(ev, 10.0).unwrap().k;
    for (rule, got, want) in [
        ("kaiser", kaiser, EXPECTED_KAISER),
        ("broken_stick", stick, EXPECTED_BROKEN_STICK),
        ("pca_cn", cn, EXPECTED_PCA_CN),
    ] {
        if got != want {
            errors.push(format!("{rule} k = {got}, want {want}"));
        }
    }
    let profile = explained_variance(&model);
    let cumulative = profile
        .cumulative
        .get(EXPECTED_KAISER - 1)
        .copied()
        .unwrap_or(f64::NAN);
    if cumulative.is_nan() || (cumulative - EXPECTED_CUMULATIVE_AT_KAISER).abs() > 0.01 {
        errors.push(format!("cumulative at {EXPECTED_KAISER} = {cumulative:.4}"));
    }
    let pc1 = profile.fractions[0];
    if (pc1 - EXPECTED_PC1_FRACTION).abs() > 0.0005 {
        errors.push(format!("PC1 fraction = {pc1:.5}"));
    }

    let conventions = [
        LoadingConvention::UnitEigenvector,
        LoadingConvention::ScaledBySqrtEigenvalue,
    ];
    let mut matched = None;
    let mut observed = Vec::new();
    for conv in conventions {
        let counts: Vec<(usize, usize, usize)> = (0..5)
            .map(|pc| {
                let g = loading_groups(&model, pc, conv).unwrap();
                (g.positive.len(), g.zero.len(), g.negative.len())
            })
            .collect();
        if counts == EXPECTED_GROUP_COUNTS && matched.is_none() {
            matched = Some(conv);
        }
        observed.push(format!("{conv:?} {counts:?}"));
    }
    if matched.is_none() {
        errors.push(format!("group counts differ: {}", observed.join(" / ")));
    }

    let options = ExtremeEndsOptions {
        convention: matched.unwrap_or_default(),
        ..Default::default()
    };
    let mut orientation = String::new();
    match extreme_ends(&model, &matrix, 1, &options) {
        Ok(ends) => {
            let has =
                |list: &[String], stems: &[&str]| stems.iter().all(|s| list.iter().any(|w| w == s));
            let (p, n) = (&ends.positive.common, &ends.negative.common);
            if has(p, &SOCIAL_END) && has(n, &CLINICAL_END) {
                orientation = "social end positive".into();
            } else if has(n, &SOCIAL_END) && has(p, &CLINICAL_END) {
                orientation = "social end negative".into();
            } else {
                errors.push(format!(
                    "PC2 common words missing stems; positive {:?}, negative {:?}",
                    &p[..p.len().min(10)],
                    &n[..n.len().min(10)]
                ));
            }
        }
        Err(e) => errors.push(format!("extreme ends: {e}")),
    }
    fail_if(
        errors,
        format!(
            "k = {kaiser}/{stick}/{cn}, cumulative {cumulative:.4}, PC1 {pc1:.5}, groups under {:?}, {orientation}, fit {elapsed:.2?}",
            matched.unwrap_or_default()
        ),
    )
}

fn snapshot(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .map(|p| {
            (
                p.file_name().unwrap().to_string_lossy().into_owned(),
                fs::read(&p).unwrap(),
            )
        })
        .collect()
}

fn cli_determinism() -> Verdict {
    let tmp = tempfile::tempdir().unwrap();
    let docs = PlantedTopics {
        docs_per_category: 60,
        ..Default::default()
    }
    .generate(11);
    let tokenized = tmp.path().join("planted.jsonl");
    write_tokenized(&docs, &tokenized);
    let raw = tmp.path().join("raw.jsonl");
    fs::write(
        &raw,
        concat!(
            "{\"id\":\"1\",\"text\":\"Clinical treatment and therapies.\",\"categories\":[\"Medicine\"]}\n",
            "{\"id\":\"2\",\"text\":\"Political arguments in discourse.\",\"categories\":[\"Politics\"]}\n",
            "{\"id\":\"3\",\"text\":\"Treatment policy arguments.\",\"categories\":[\"Medicine\",\"Politics\"]}\n",
        ),
    )
    .unwrap();
    let tok = tokenized.to_str().unwrap();
    let raw = raw.to_str().unwrap();
    let pipeline: Vec<(&str, Vec<&str>)> = vec![
        (
            "raw",
            vec!["ingest", "--input", raw, "--stop-words", "true"],
        ),
        ("raw", vec!["rig"]),
        (
            "raw",
            vec!["report", "--category", "Medicine", "--top", "5"],
        ),
        (
            "main",
            vec!["ingest", "--input", tok, "--format", "tokenized"],
        ),
        ("main", vec!["rig"]),
        (
            "main",
            vec!["rank", "--category", "cat01", "--by", "rig", "--top", "10"],
        ),
        (
            "main",
            vec!["rank", "--category", "cat01", "--by", "freq", "--top", "10"],
        ),
        ("main", vec!["thesaurus", "--size", "20"]),
        ("main", vec!["pca", "--select", "kaiser"]),
        ("main", vec!["pca", "--select", "broken-stick"]),
        ("main", vec!["pca", "--select", "pca-cn", "--cn", "10"]),
        ("main", vec!["groups", "--pc", "1", "--convention", "unit"]),
        (
            "main",
            vec!["groups", "--pc", "2", "--convention", "scaled"],
        ),
        (
            "main",
            vec![
                "extremes",
                "--pc",
                "1",
                "--n-categories",
                "2",
                "--n-words",
                "10",
                "--min-lists",
                "1",
            ],
        ),
        ("main", vec!["report", "--category", "cat02", "--top", "15"]),
    ];
    let run_all = || -> Result<Vec<Vec<u8>>, String> {
        pipeline
            .iter()
            .map(|(dir, args)| {
                let o = rigspace(&tmp.path().join(dir), args);
                if o.status.success() {
                    Ok(o.stdout)
                } else {
                    Err(format!("{args:?}: {}", String::from_utf8_lossy(&o.stderr)))
                }
            })
            .collect()
    };
    let first = match run_all() {
        Ok(v) => v,
        Err(e) => return Verdict::Fail(e),
    };
    let before = [
        snapshot(&tmp.path().join("raw")),
        snapshot(&tmp.path().join("main")),
    ];
    let second = match run_all() {
        Ok(v) => v,
        Err(e) => return Verdict::Fail(e),
    };
    let after = [
        snapshot(&tmp.path().join("raw")),
        snapshot(&tmp.path().join("main")),
    ];

    let mut errors = Vec::new();
    for (i, (a, b)) in first.iter().zip(&second).enumerate() {
        if a != b {
            errors.push(format!("stdout of {:?} differs", pipeline[i].1));
        }
    }
    let mut files = 0;
    for (a, b) in before.iter().zip(&after) {
        if a.keys().ne(b.keys()) {
            errors.push("file set changed".into());
        }
        for (name, bytes) in a {
            files += 1;
            if b.get(name) != Some(bytes) {
                errors.push(format!("{name} differs"));
            }
        }
    }
    fail_if(
        errors,
        format!(
            "{} commands run twice, {files} files byte-identical",
            pipeline.len()
        ),
    )
}

fn main() {
    let checks: [(&str, Check); 7] = [
        ("mi-oracle", mi_oracle),
        ("bounds-and-conventions", bounds_and_conventions),
        ("duplication-invariance", duplication_invariance),
        ("planted-topic-separation", planted_topics),
        ("pca-correctness", pca_correctness),
        ("published-matrix", published_matrix),
        ("cli-determinism", cli_determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in checks.iter().enumerate() {
        let (tag, detail) = match check() {
            Verdict::Pass(d) => ("PASS", d),
            Verdict::Fail(d) => {
                failed += 1;
                ("FAIL", d)
            }
            Verdict::Skip(d) => ("SKIP", d),
        };
        println!("{tag} {} {name}: {detail}", i + 1);
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
