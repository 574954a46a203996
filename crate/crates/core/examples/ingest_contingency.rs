//! Ingest a few raw JSON-lines abstracts and inspect the 2×2 table behind
//! one word/category pair.

use std::io::Cursor;

use rigspace::corpus::{ingest_corpus, IngestOptions};

const ABSTRACTS: &str = r#"{"id":"m1","text":"Clinical treatment of chronic pain.","categories":["Medicine"]}
{"id":"m2","text":"A randomized clinical trial of therapies.","categories":["Medicine"]}
{"id":"p1","text":"Political arguments and public discourse.","categories":["Politics"]}
{"id":"x1","text":"Health policy: arguments for clinical reform.","categories":["Medicine","Politics"]}
"#;

fn main() -> rigspace::Result<()> {
    let index = ingest_corpus(Cursor::new(ABSTRACTS), &IngestOptions::default())?;
    println!(
        "{} documents, {} stems, {} categories",
        index.num_documents(),
        index.num_words(),
        index.num_categories()
    );
    println!("stems: {}", index.dictionary().words().join(" "));

    let table = index.contingency_by_name("clinic", "Medicine")?;
    let (joint, word_docs, category_docs, total) = table.counts();
    println!(
        "clinic × Medicine: joint={joint} word={word_docs} category={category_docs} total={total}"
    );
    println!("cells [w&c, w&!c, !w&c, !w&!c] = {:?}", table.cells());
    println!(
        "H(c) = {:.4}  H(c|w) = {:.4}  IG = {:.4}  RIG = {:.4}",
        table.category_entropy(),
        table.conditional_entropy(),
        table.information_gain(),
        table.relative_information_gain()
    );
    Ok(())
}
