#![allow(dead_code)]

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;
use rigspace::corpus::Document;

/// Mutual information in bits computed straight from the 2×2 joint
/// distribution: Σ p(x,y) log2(p(x,y) / (p(x) p(y))).
pub fn joint_mi(cells: [u64; 4]) -> f64 {
    let total: u64 = cells.iter().sum();
    let p: Vec<f64> = cells.iter().map(|&c| c as f64 / total as f64).collect();
    // cells: (w, c), (w, ¬c), (¬w, c), (¬w, ¬c)
    let p_w = [p[0] + p[1], p[2] + p[3]];
    let p_c = [p[0] + p[2], p[1] + p[3]];
    let mut mi = 0.0;
    for x in 0..2 {
        for y in 0..2 {
            let pxy = p[2 * x + y];
            if pxy > 0.0 {
                mi += pxy * (pxy / (p_w[x] * p_c[y])).log2();
            }
        }
    }
    mi
}

/// Cells of the table (w_jk, |D^j|, |D_k|, M).
pub fn cells_of(w: u64, dj: u64, dk: u64, m: u64) -> [u64; 4] {
    [w, dj - w, dk - w, m + w - dj - dk]
}

/// Valid (w_jk, |D^j|, |D_k|, M) with M in 1..=max_m.
pub fn table_strategy(max_m: u64) -> impl Strategy<Value = (u64, u64, u64, u64)> {
    (1..=max_m)
        .prop_flat_map(|m| (Just(m), 0..=m, 0..=m))
        .prop_flat_map(|(m, dj, dk)| {
            let lo = (dj + dk).saturating_sub(m);
            let hi = dj.min(dk);
            (lo..=hi, Just(dj), Just(dk), Just(m))
        })
}

pub fn random_table<R: Rng>(rng: &mut R, max_m: u64) -> (u64, u64, u64, u64) {
    let m = rng.gen_range(1..=max_m);
    let dj = rng.gen_range(0..=m);
    let dk = rng.gen_range(0..=m);
    let lo = (dj + dk).saturating_sub(m);
    let hi = dj.min(dk);
    (rng.gen_range(lo..=hi), dj, dk, m)
}

/// Random labeled corpus with at most the given sizes.
pub fn random_corpus<R: Rng>(
    rng: &mut R,
    max_docs: usize,
    vocab: usize,
    cats: usize,
) -> Vec<Document> {
    let m = rng.gen_range(1..=max_docs);
    let n_vocab = rng.gen_range(1..=vocab);
    let n_cats = rng.gen_range(1..=cats);
    (0..m)
        .map(|d| {
            let words: Vec<String> = (0..n_vocab)
                .filter(|_| rng.gen_bool(0.4))
                .map(|w| format!("w{w}"))
                .collect();
            let mut all: Vec<usize> = (0..n_cats).collect();
            all.shuffle(rng);
            let take = rng.gen_range(1..=n_cats);
            let cats: Vec<String> = all[..take].iter().map(|c| format!("c{c}")).collect();
            Document::new(format!("d{d}"), words, cats).unwrap()
        })
        .collect()
}

/// Every document replaced by `copies` identical documents.
pub fn duplicate(docs: &[Document], copies: usize) -> Vec<Document> {
    docs.iter()
        .flat_map(|d| {
            (0..copies).map(move |i| {
                Document::new(
                    format!("{}#{i}", d.id()),
                    d.words().iter().cloned(),
                    d.categories().iter().cloned(),
                )
                .unwrap()
            })
        })
        .collect()
}

/// Writes documents as tokenized JSON lines.
pub fn write_tokenized(docs: &[Document], path: &std::path::Path) {
    let mut out = String::new();
    for d in docs {
        let record = serde_json::json!({
            "id": d.id(),
            "words": d.words(),
            "categories": d.categories(),
        });
        out.push_str(&record.to_string());
        out.push('\n');
    }
    std::fs::write(path, out).unwrap();
}

/// Runs the `rigspace` binary with `--out <out>` appended.
pub fn rigspace(out: &std::path::Path, args: &[&str]) -> std::process::Output {
    std::process::Command::new(env!("CARGO_BIN_EXE_rigspace"))
        .args(args)
        .arg("--out")
        .arg(out)
        .env_remove("RIGSPACE_OUT")
        .output()
        .unwrap()
}
