//! Labeled documents and the presence-based word/category incidence counts.
//!
//! A [`CorpusIndex`] holds everything the information-gain math needs: the
//! corpus size `M`, per-word document frequency `|D^j|`, per-category size
//! `|D_k|` and the sparse joint counts `w_jk`. Words and categories are kept
//! in lexicographic order, so every matrix derived from an index has the
//! same row and column order regardless of input order.

mod ingest;
mod normalize;

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::infogain::ContingencyTable;

pub use ingest::{ingest_corpus, ingest_paths, IngestOptions, InputFormat};
pub use normalize::{is_stop_word, normalize_text, NormalizeOptions, Normalizer};

/// One labeled text reduced to its set of word types.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    id: String,
    words: BTreeSet<String>,
    categories: BTreeSet<String>,
}

impl Document {
    /// Empty word strings are dropped; an empty category set is rejected.
    pub fn new<W, C>(id: impl Into<String>, words: W, categories: C) -> Result<Self>
    where
        W: IntoIterator,
        W::Item: Into<String>,
        C: IntoIterator,
        C::Item: Into<String>,
    {
        let id = id.into();
        let words: BTreeSet<String> = words
            .into_iter()
            .map(Into::into)
            .filter(|w: &String| !w.is_empty())
            .collect();
        let categories: BTreeSet<String> = categories
            .into_iter()
            .map(Into::into)
            .filter(|c: &String| !c.is_empty())
            .collect();
        if categories.is_empty() {
            return Err(Error::EmptyCategories { id, line: 0 });
        }
        Ok(Document {
            id,
            words,
            categories,
        })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn words(&self) -> &BTreeSet<String> {
        &self.words
    }

    pub fn categories(&self) -> &BTreeSet<String> {
        &self.categories
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dictionary {
    words: Vec<String>,
    doc_frequency: Vec<u64>,
    index: HashMap<String, usize>,
}

impl Dictionary {
    fn new(words: Vec<String>, doc_frequency: Vec<u64>) -> Self {
        let index = words
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i))
            .collect();
        Dictionary {
            words,
            doc_frequency,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[String] {
        &self.words
    }

    pub fn word(&self, j: usize) -> Option<&str> {
        self.words.get(j).map(String::as_str)
    }

    pub fn position(&self, word: &str) -> Option<usize> {
        self.index.get(word).copied()
    }

    /// `|D^j|` for every word, in dictionary order.
    pub fn doc_frequency(&self) -> &[u64] {
        &self.doc_frequency
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CategoryRegistry {
    names: Vec<String>,
    doc_count: Vec<u64>,
    index: HashMap<String, usize>,
}

impl CategoryRegistry {
    fn new(names: Vec<String>, doc_count: Vec<u64>) -> Self {
        let index = names
            .iter()
            .enumerate()
            .map(|(i, c)| (c.clone(), i))
            .collect();
        CategoryRegistry {
            names,
            doc_count,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, k: usize) -> Option<&str> {
        self.names.get(k).map(String::as_str)
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// `|D_k|` for every category, in registry order.
    pub fn doc_count(&self) -> &[u64] {
        &self.doc_count
    }
}

/// Immutable incidence counts for a whole corpus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusIndex {
    documents: u64,
    dictionary: Dictionary,
    registry: CategoryRegistry,
    // Per word, (category, w_jk) sorted by category; zero counts are absent.
    joint: Vec<Vec<(u32, u64)>>,
}

impl CorpusIndex {
    /// Builds an index from in-memory documents, counting in parallel.
    pub fn from_documents(docs: &[Document], min_doc_frequency: u64) -> Result<Self> {
        let builder = docs
            .par_chunks(4096)
            .map(|chunk| {
                let mut b = CorpusBuilder::new();
                for doc in chunk {
                    b.add_document(doc.clone())?;
                }
                Ok::<_, Error>(b)
            })
            .try_reduce(CorpusBuilder::new, |mut a, b| {
                a.merge(b)?;
                Ok(a)
            })?;
        builder.finish(min_doc_frequency)
    }

    /// Corpus size `M`.
    pub fn num_documents(&self) -> u64 {
        self.documents
    }

    pub fn num_words(&self) -> usize {
        self.dictionary.len()
    }

    pub fn num_categories(&self) -> usize {
        self.registry.len()
    }

    pub fn dictionary(&self) -> &Dictionary {
        &self.dictionary
    }

    pub fn registry(&self) -> &CategoryRegistry {
        &self.registry
    }

    pub fn word_position(&self, word: &str) -> Result<usize> {
        self.dictionary
            .position(word)
            .ok_or_else(|| Error::UnknownWord(word.to_string()))
    }

    pub fn category_position(&self, name: &str) -> Result<usize> {
        self.registry
            .position(name)
            .ok_or_else(|| Error::UnknownCategory(name.to_string()))
    }

    /// Non-zero joint counts of word `j` as `(category, w_jk)` pairs.
    pub fn joint_row(&self, j: usize) -> &[(u32, u64)] {
        &self.joint[j]
    }

    pub fn joint_count(&self, j: usize, k: usize) -> u64 {
        let row = &self.joint[j];
        match row.binary_search_by_key(&(k as u32), |&(c, _)| c) {
            Ok(pos) => row[pos].1,
            Err(_) => 0,
        }
    }

    /// The word/category table `(w_jk, |D^j|, |D_k|, M)`.
    pub fn contingency(&self, j: usize, k: usize) -> Result<ContingencyTable> {
        if j >= self.num_words() {
            return Err(Error::OutOfRange {
                what: "dictionary",
                index: j,
                len: self.num_words(),
            });
        }
        if k >= self.num_categories() {
            return Err(Error::OutOfRange {
                what: "category registry",
                index: k,
                len: self.num_categories(),
            });
        }
        ContingencyTable::new(
            self.joint_count(j, k),
            self.dictionary.doc_frequency[j],
            self.registry.doc_count[k],
            self.documents,
        )
    }

    pub fn contingency_by_name(&self, word: &str, category: &str) -> Result<ContingencyTable> {
        self.contingency(self.word_position(word)?, self.category_position(category)?)
    }

    pub fn write_snapshot<W: Write>(&self, writer: W) -> Result<()> {
        serde_json::to_writer(writer, &Snapshot::from(self))?;
        Ok(())
    }

    pub fn read_snapshot<R: Read>(reader: R) -> Result<Self> {
        let snap: Snapshot = serde_json::from_reader(reader)?;
        snap.into_index()
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let file = File::create(path).map_err(|e| Error::io(path, e))?;
        let mut w = BufWriter::new(file);
        self.write_snapshot(&mut w)?;
        w.flush().map_err(|e| Error::io(path, e))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let file = File::open(path).map_err(|e| Error::io(path, e))?;
        Self::read_snapshot(BufReader::new(file))
    }
}

const SNAPSHOT_FORMAT: &str = "rigspace-corpus-index";
const SNAPSHOT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct Snapshot {
    format: String,
    version: u32,
    documents: u64,
    words: Vec<String>,
    doc_frequency: Vec<u64>,
    categories: Vec<String>,
    category_docs: Vec<u64>,
    joint: Vec<Vec<(u32, u64)>>,
}

impl From<&CorpusIndex> for Snapshot {
    fn from(index: &CorpusIndex) -> Self {
        Snapshot {
            format: SNAPSHOT_FORMAT.to_string(),
            version: SNAPSHOT_VERSION,
            documents: index.documents,
            words: index.dictionary.words.clone(),
            doc_frequency: index.dictionary.doc_frequency.clone(),
            categories: index.registry.names.clone(),
            category_docs: index.registry.doc_count.clone(),
            joint: index.joint.clone(),
        }
    }
}

impl Snapshot {
    fn into_index(self) -> Result<CorpusIndex> {
        let bad = |msg: String| Err(Error::Snapshot(msg));
        if self.format != SNAPSHOT_FORMAT {
            return bad(format!("unexpected format tag {:?}", self.format));
        }
        if self.version != SNAPSHOT_VERSION {
            return bad(format!("unsupported version {}", self.version));
        }
        if self.documents == 0 {
            return bad("zero documents".into());
        }
        let n = self.words.len();
        let k = self.categories.len();
        if self.doc_frequency.len() != n || self.joint.len() != n || self.category_docs.len() != k {
            return bad("length mismatch between words, frequencies and joint rows".into());
        }
        if !self.words.windows(2).all(|w| w[0] < w[1])
            || !self.categories.windows(2).all(|c| c[0] < c[1])
        {
            return bad("words and categories must be strictly sorted".into());
        }
        for (j, row) in self.joint.iter().enumerate() {
            let df = self.doc_frequency[j];
            if df == 0 || df > self.documents {
                return bad(format!(
                    "word {:?} has document frequency {df}",
                    self.words[j]
                ));
            }
            let mut prev = None;
            for &(c, w) in row {
                let c = c as usize;
                if c >= k || prev.is_some_and(|p| p >= c) {
                    return bad(format!("joint row of {:?} is not sorted", self.words[j]));
                }
                if w == 0 || w > df || w > self.category_docs[c] {
                    return bad(format!(
                        "joint count {w} out of range for ({:?}, {:?})",
                        self.words[j], self.categories[c]
                    ));
                }
                prev = Some(c);
            }
        }
        if self.category_docs.iter().any(|&d| d > self.documents) {
            return bad("category larger than corpus".into());
        }
        Ok(CorpusIndex {
            documents: self.documents,
            dictionary: Dictionary::new(self.words, self.doc_frequency),
            registry: CategoryRegistry::new(self.categories, self.category_docs),
            joint: self.joint,
        })
    }
}

#[derive(Debug, Default)]
struct WordCounts {
    docs: u64,
    per_category: HashMap<u32, u64>,
}

/// Accumulates counts document by document.
///
/// Only the index-sized state is retained, so a stream of documents can be
/// ingested without holding the texts.
#[derive(Debug, Default)]
pub struct CorpusBuilder {
    documents: u64,
    ids: HashSet<String>,
    categories: Vec<(String, u64)>,
    category_ids: HashMap<String, u32>,
    words: HashMap<String, WordCounts>,
}

impl CorpusBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn num_documents(&self) -> u64 {
        self.documents
    }

    pub fn add_document(&mut self, doc: Document) -> Result<()> {
        self.add_at(doc, 0)
    }

    pub(crate) fn add_at(&mut self, doc: Document, line: usize) -> Result<()> {
        if !self.ids.insert(doc.id.clone()) {
            return Err(Error::DuplicateId { id: doc.id, line });
        }
        self.documents += 1;
        let cats: Vec<u32> = doc
            .categories
            .into_iter()
            .map(|c| self.category_id(c, 1))
            .collect();
        for word in doc.words {
            let entry = self.words.entry(word).or_default();
            entry.docs += 1;
            for &c in &cats {
                *entry.per_category.entry(c).or_default() += 1;
            }
        }
        Ok(())
    }

    fn category_id(&mut self, name: String, docs: u64) -> u32 {
        match self.category_ids.get(&name) {
            Some(&id) => {
                self.categories[id as usize].1 += docs;
                id
            }
            None => {
                let id = self.categories.len() as u32;
                self.category_ids.insert(name.clone(), id);
                self.categories.push((name, docs));
                id
            }
        }
    }

    /// Folds another partial count into this one.
    pub fn merge(&mut self, other: CorpusBuilder) -> Result<()> {
        if let Some(dup) = other.ids.iter().find(|id| self.ids.contains(*id)) {
            return Err(Error::DuplicateId {
                id: dup.clone(),
                line: 0,
            });
        }
        self.ids.extend(other.ids);
        self.documents += other.documents;
        let remap: Vec<u32> = other
            .categories
            .into_iter()
            .map(|(name, docs)| self.category_id(name, docs))
            .collect();
        for (word, counts) in other.words {
            let entry = self.words.entry(word).or_default();
            entry.docs += counts.docs;
            for (c, w) in counts.per_category {
                *entry.per_category.entry(remap[c as usize]).or_default() += w;
            }
        }
        Ok(())
    }

    /// Sorts words and categories and drops words below `min_doc_frequency`.
    pub fn finish(self, min_doc_frequency: u64) -> Result<CorpusIndex> {
        if self.documents == 0 {
            return Err(Error::EmptyCorpus);
        }
        let mut order: Vec<usize> = (0..self.categories.len()).collect();
        order.sort_by(|&a, &b| self.categories[a].0.cmp(&self.categories[b].0));
        let mut new_pos = vec![0u32; order.len()];
        for (pos, &old) in order.iter().enumerate() {
            new_pos[old] = pos as u32;
        }
        let mut categories = self.categories;
        let (names, doc_count): (Vec<String>, Vec<u64>) = order
            .iter()
            .map(|&old| std::mem::take(&mut categories[old]))
            .unzip();

        let mut words: Vec<(String, WordCounts)> = self
            .words
            .into_iter()
            .filter(|(_, c)| c.docs >= min_doc_frequency.max(1))
            .collect();
        words.sort_by(|a, b| a.0.cmp(&b.0));

        let mut word_list = Vec::with_capacity(words.len());
        let mut doc_frequency = Vec::with_capacity(words.len());
        let mut joint = Vec::with_capacity(words.len());
        for (word, counts) in words {
            let mut row: Vec<(u32, u64)> = counts
                .per_category
                .into_iter()
                .map(|(c, w)| (new_pos[c as usize], w))
                .collect();
            row.sort_unstable();
            word_list.push(word);
            doc_frequency.push(counts.docs);
            joint.push(row);
        }

        Ok(CorpusIndex {
            documents: self.documents,
            dictionary: Dictionary::new(word_list, doc_frequency),
            registry: CategoryRegistry::new(names, doc_count),
            joint,
        })
    }
}
