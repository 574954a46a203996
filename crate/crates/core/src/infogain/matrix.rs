use std::collections::HashMap;
use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use rayon::prelude::*;

use super::ContingencyTable;
use crate::corpus::CorpusIndex;
use crate::error::{Error, Result};

/// Words × categories matrix of RIG values (the meaning space).
///
/// Rows follow the dictionary order of the source index and columns the
/// category registry order. Matrices read from CSV keep the file order.
#[derive(Debug, Clone, PartialEq)]
pub struct RigMatrix {
    words: Vec<String>,
    categories: Vec<String>,
    values: Vec<f64>,
    degenerate: Vec<usize>,
    word_pos: HashMap<String, usize>,
    category_pos: HashMap<String, usize>,
}

impl RigMatrix {
    /// `values` is row-major, `words.len() × categories.len()`.
    pub fn from_parts(
        words: Vec<String>,
        categories: Vec<String>,
        values: Vec<f64>,
    ) -> Result<Self> {
        Self::with_degenerate(words, categories, values, Vec::new())
    }

    fn with_degenerate(
        words: Vec<String>,
        categories: Vec<String>,
        values: Vec<f64>,
        degenerate: Vec<usize>,
    ) -> Result<Self> {
        if values.len() != words.len() * categories.len() {
            return Err(Error::InvalidArgument(format!(
                "{} values for a {}x{} matrix",
                values.len(),
                words.len(),
                categories.len()
            )));
        }
        if let Some(bad) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "non-finite value at row {}, column {}",
                bad / categories.len(),
                bad % categories.len()
            )));
        }
        let word_pos = position_map(&words, "word")?;
        let category_pos = position_map(&categories, "category")?;
        Ok(RigMatrix {
            words,
            categories,
            values,
            degenerate,
            word_pos,
            category_pos,
        })
    }

    pub fn num_words(&self) -> usize {
        self.words.len()
    }

    pub fn num_categories(&self) -> usize {
        self.categories.len()
    }

    pub fn words(&self) -> &[String] {
        &self.words
    }

    pub fn categories(&self) -> &[String] {
        &self.categories
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, j: usize, k: usize) -> f64 {
        self.values[j * self.categories.len() + k]
    }

    /// The RIG vector of word `j`.
    pub fn row(&self, j: usize) -> &[f64] {
        let k = self.categories.len();
        &self.values[j * k..(j + 1) * k]
    }

    pub fn column(&self, k: usize) -> impl Iterator<Item = f64> + '_ {
        self.values
            .iter()
            .skip(k)
            .step_by(self.categories.len().max(1))
            .copied()
    }

    pub fn word_position(&self, word: &str) -> Result<usize> {
        self.word_pos
            .get(word)
            .copied()
            .ok_or_else(|| Error::UnknownWord(word.to_string()))
    }

    pub fn category_position(&self, name: &str) -> Result<usize> {
        self.category_pos
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownCategory(name.to_string()))
    }

    /// Categories whose entropy was zero when the matrix was built.
    pub fn degenerate_categories(&self) -> &[usize] {
        &self.degenerate
    }

    /// Sub-matrix of the given words, in the given order.
    pub fn select_words<S: AsRef<str>>(&self, words: &[S]) -> Result<RigMatrix> {
        let mut values = Vec::with_capacity(words.len() * self.num_categories());
        let mut names = Vec::with_capacity(words.len());
        for w in words {
            let j = self.word_position(w.as_ref())?;
            values.extend_from_slice(self.row(j));
            names.push(w.as_ref().to_string());
        }
        Self::with_degenerate(
            names,
            self.categories.clone(),
            values,
            self.degenerate.clone(),
        )
    }

    /// CSV with header `word,<cat1>,...`; floats use shortest round-trip form.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        let mut header = Vec::with_capacity(self.num_categories() + 1);
        header.push("word");
        header.extend(self.categories.iter().map(String::as_str));
        w.write_record(&header)?;
        let mut record = Vec::with_capacity(header.len());
        for (j, word) in self.words.iter().enumerate() {
            record.clear();
            record.push(word.clone());
            record.extend(self.row(j).iter().map(|v| v.to_string()));
            w.write_record(&record)?;
        }
        w.flush().map_err(csv::Error::from)?;
        Ok(())
    }

    pub fn read_csv<R: Read>(reader: R) -> Result<RigMatrix> {
        let mut r = csv::ReaderBuilder::new()
            .has_headers(true)
            .from_reader(reader);
        let header = r.headers()?.clone();
        if header.len() < 2 {
            return Err(Error::InvalidArgument(
                "matrix CSV needs a word column and at least one category".into(),
            ));
        }
        let categories: Vec<String> = header.iter().skip(1).map(str::to_string).collect();
        let mut words = Vec::new();
        let mut values = Vec::new();
        for (i, rec) in r.records().enumerate() {
            let rec = rec?;
            words.push(rec[0].to_string());
            for field in rec.iter().skip(1) {
                let v: f64 = field.trim().parse().map_err(|_| Error::MalformedRecord {
                    line: i + 2,
                    message: format!("not a number: {field:?}"),
                })?;
                values.push(v);
            }
        }
        Self::from_parts(words, categories, values)
    }

    pub fn save_csv(&self, path: &Path) -> Result<()> {
        let file = File::create(path).map_err(|e| Error::io(path, e))?;
        self.write_csv(std::io::BufWriter::new(file))
    }

    pub fn load_csv(path: &Path) -> Result<RigMatrix> {
        let file = File::open(path).map_err(|e| Error::io(path, e))?;
        Self::read_csv(std::io::BufReader::new(file))
    }
}

fn position_map(names: &[String], what: &str) -> Result<HashMap<String, usize>> {
    let mut map = HashMap::with_capacity(names.len());
    for (i, n) in names.iter().enumerate() {
        if map.insert(n.clone(), i).is_some() {
            return Err(Error::InvalidArgument(format!("duplicate {what} {n:?}")));
        }
    }
    Ok(map)
}

/// RIG of every (word, category) pair of the index, absent pairs included.
pub fn build_rig_matrix(index: &CorpusIndex) -> Result<RigMatrix> {
    let m = index.num_documents();
    let k = index.num_categories();
    if m == 0 || k == 0 {
        return Err(Error::EmptyCorpus);
    }
    let cat_docs = index.registry().doc_count();
    let word_docs = index.dictionary().doc_frequency();

    let values: Vec<f64> = (0..index.num_words())
        .into_par_iter()
        .flat_map_iter(|j| {
            let dj = word_docs[j];
            let mut joint = vec![0u64; k];
            for &(c, w) in index.joint_row(j) {
                joint[c as usize] = w;
            }
            (0..k).map(move |c| {
                ContingencyTable::new(joint[c], dj, cat_docs[c], m)
                    .map(|t| t.relative_information_gain())
                    .expect("index counts form valid tables")
            })
        })
        .collect();

    let degenerate = cat_docs
        .iter()
        .enumerate()
        .filter(|&(_, &d)| d == 0 || d == m)
        .map(|(c, _)| c)
        .collect();

    RigMatrix::with_degenerate(
        index.dictionary().words().to_vec(),
        index.registry().names().to_vec(),
        values,
        degenerate,
    )
}
