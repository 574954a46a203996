use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{CorpusBuilder, CorpusIndex, Document, NormalizeOptions, Normalizer};
use crate::error::{Error, Result};

/// Layout of each JSON-lines record.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InputFormat {
    /// `{"id", "text", "categories"}`; text goes through the normalizer.
    #[default]
    Raw,
    /// `{"id", "words", "categories"}`; words are used as given.
    Tokenized,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct IngestOptions {
    pub format: InputFormat,
    pub normalize: NormalizeOptions,
    pub min_doc_frequency: u64,
}

impl Default for IngestOptions {
    fn default() -> Self {
        IngestOptions {
            format: InputFormat::Raw,
            normalize: NormalizeOptions::default(),
            min_doc_frequency: 1,
        }
    }
}

#[derive(Deserialize)]
struct RawRecord {
    id: String,
    text: String,
    categories: Vec<String>,
}

#[derive(Deserialize)]
struct TokenizedRecord {
    id: String,
    words: Vec<String>,
    categories: Vec<String>,
}

struct RecordParser {
    format: InputFormat,
    normalizer: Normalizer,
}

impl RecordParser {
    fn parse(&self, line: &str, line_no: usize) -> Result<Document> {
        let malformed = |e: serde_json::Error| Error::MalformedRecord {
            line: line_no,
            message: e.to_string(),
        };
        let (id, words, categories) = match self.format {
            InputFormat::Raw => {
                let r: RawRecord = serde_json::from_str(line).map_err(malformed)?;
                (r.id, self.normalizer.normalize(&r.text), r.categories)
            }
            InputFormat::Tokenized => {
                let r: TokenizedRecord = serde_json::from_str(line).map_err(malformed)?;
                (r.id, r.words, r.categories)
            }
        };
        Document::new(id, words, categories).map_err(|e| match e {
            Error::EmptyCategories { id, .. } => Error::EmptyCategories { id, line: line_no },
            other => other,
        })
    }
}

fn ingest_into<R: BufRead>(
    reader: R,
    parser: &RecordParser,
    builder: &mut CorpusBuilder,
) -> Result<()> {
    for (i, line) in reader.lines().enumerate() {
        let line_no = i + 1;
        let line = line.map_err(|e| Error::MalformedRecord {
            line: line_no,
            message: e.to_string(),
        })?;
        if line.trim().is_empty() {
            continue;
        }
        let doc = parser.parse(&line, line_no)?;
        builder.add_at(doc, line_no)?;
    }
    Ok(())
}

/// Streams JSON-lines records into an index. Blank lines are skipped.
pub fn ingest_corpus<R: BufRead>(reader: R, options: &IngestOptions) -> Result<CorpusIndex> {
    let parser = RecordParser {
        format: options.format,
        normalizer: Normalizer::new(options.normalize),
    };
    let mut builder = CorpusBuilder::new();
    ingest_into(reader, &parser, &mut builder)?;
    builder.finish(options.min_doc_frequency)
}

/// Like [`ingest_corpus`] over several files; ids must be unique across all of them.
pub fn ingest_paths<P: AsRef<Path>>(paths: &[P], options: &IngestOptions) -> Result<CorpusIndex> {
    let parser = RecordParser {
        format: options.format,
        normalizer: Normalizer::new(options.normalize),
    };
    let mut builder = CorpusBuilder::new();
    for path in paths {
        let path = path.as_ref();
        let file = File::open(path).map_err(|e| Error::io(path, e))?;
        ingest_into(BufReader::new(file), &parser, &mut builder)?;
    }
    builder.finish(options.min_doc_frequency)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOKENIZED: &str = r#"{"id":"d1","words":["a","b","a"],"categories":["X"]}
{"id":"d2","words":["b"],"categories":["X","Y"]}
"#;

    fn tokenized() -> IngestOptions {
        IngestOptions {
            format: InputFormat::Tokenized,
            ..Default::default()
        }
    }

    #[test]
    fn tokenized_records() {
        let index = ingest_corpus(TOKENIZED.as_bytes(), &tokenized()).unwrap();
        assert_eq!(index.num_documents(), 2);
        assert_eq!(index.dictionary().doc_frequency(), [1, 2]);
        assert_eq!(index.joint_count(1, 0), 2);
    }

    #[test]
    fn raw_records_are_normalized() {
        let src = r#"{"id":"1","text":"Therapy and therapies.","categories":["Med"]}"#;
        let index = ingest_corpus(src.as_bytes(), &IngestOptions::default()).unwrap();
        assert_eq!(index.dictionary().words(), ["and", "therapi"]);
        assert_eq!(index.dictionary().doc_frequency(), [1, 1]);
    }

    #[test]
    fn empty_stream() {
        assert!(matches!(
            ingest_corpus("".as_bytes(), &tokenized()),
            Err(Error::EmptyCorpus)
        ));
        assert_eq!(Error::EmptyCorpus.to_string(), "empty corpus");
    }

    #[test]
    fn malformed_line_is_named() {
        let src = format!("{TOKENIZED}{{\"id\": 3}}\n");
        match ingest_corpus(src.as_bytes(), &tokenized()) {
            Err(Error::MalformedRecord { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn wrong_format_is_malformed() {
        assert!(matches!(
            ingest_corpus(TOKENIZED.as_bytes(), &IngestOptions::default()),
            Err(Error::MalformedRecord { line: 1, .. })
        ));
    }

    #[test]
    fn empty_categories_line() {
        let src = r#"{"id":"d1","words":["a"],"categories":[]}"#;
        match ingest_corpus(src.as_bytes(), &tokenized()) {
            Err(Error::EmptyCategories { id, line }) => assert_eq!((id.as_str(), line), ("d1", 1)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn duplicate_id_line() {
        let src = format!("{TOKENIZED}{{\"id\":\"d1\",\"words\":[],\"categories\":[\"Z\"]}}\n");
        assert!(matches!(
            ingest_corpus(src.as_bytes(), &tokenized()),
            Err(Error::DuplicateId { line: 3, .. })
        ));
    }
}
