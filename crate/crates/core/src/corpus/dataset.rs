//! Dataset assembly and the line-delimited corpus file format.

use super::grammar::{caption_holds, generate_captions, lexicon};
use super::render::render_scene;
use super::scene::{sample_scene, PairedExample, SceneSpec};
use super::CorpusConfig;
use crate::error::{Error, Result};
use crate::metrics::div_n;
use crate::rng::{derive_seed, rng_from_seed};
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

pub const CORPUS_FORMAT_VERSION: &str = "1";

/// Attempts per example before giving up on finding a usable, unseen scene.
const MAX_SCENE_ATTEMPTS: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Split {
    Train,
    Valid,
    Test,
}

impl Split {
    pub const ALL: [Split; 3] = [Split::Train, Split::Valid, Split::Test];

    pub fn file_name(self) -> &'static str {
        match self {
            Split::Train => "train.jsonl",
            Split::Valid => "valid.jsonl",
            Split::Test => "test.jsonl",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Dataset {
    pub config: CorpusConfig,
    pub seed: u64,
    pub train: Vec<PairedExample>,
    pub valid: Vec<PairedExample>,
    pub test: Vec<PairedExample>,
}

impl Dataset {
    pub fn split(&self, split: Split) -> &[PairedExample] {
        match split {
            Split::Train => &self.train,
            Split::Valid => &self.valid,
            Split::Test => &self.test,
        }
    }
}

/// Sidecar manifest describing a written corpus.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CorpusManifest {
    pub format_version: String,
    pub config: CorpusConfig,
    pub seed: u64,
    pub train_size: usize,
    pub valid_size: usize,
    pub test_size: usize,
    pub lexicon: Vec<String>,
}

fn split_sizes(config: &CorpusConfig) -> (usize, usize, usize) {
    let size = config.size as f64;
    let valid = (size * config.valid_fraction).round() as usize;
    let test = (size * config.test_fraction).round() as usize;
    let train = config.size.saturating_sub(valid + test);
    (train, valid, test)
}

/// Generate one example on a derived per-index seed. Scenes that admit too
/// few true captions, miss the diversity floor, or duplicate an earlier
/// scene are resampled from the same stream.
fn generate_example(
    config: &CorpusConfig,
    seed: u64,
    index: u64,
    seen: &mut HashSet<SceneSpec>,
) -> Result<PairedExample> {
    let mut rng = rng_from_seed(derive_seed(seed, index));
    for _ in 0..MAX_SCENE_ATTEMPTS {
        let scene = sample_scene(&mut rng, config)?;
        if seen.contains(&scene) {
            continue;
        }
        let captions = match generate_captions(&scene, config.captions_per_example, &mut rng) {
            Ok(c) => c,
            Err(Error::Corpus(_)) => continue,
            Err(e) => return Err(e),
        };
        let word_sets: Vec<Vec<String>> = captions.iter().map(|c| c.words.clone()).collect();
        if div_n(&word_sets, 1)? < 0.4 {
            continue;
        }
        for caption in &captions {
            if !caption_holds(&scene, caption)? {
                return Err(Error::Corpus(format!(
                    "generated caption '{}' is false of its scene",
                    caption.text()
                )));
            }
        }
        let image = render_scene(&scene, config.image_size)?;
        seen.insert(scene.clone());
        return Ok(PairedExample { scene, image, captions });
    }
    Err(Error::Corpus(format!("no usable scene found for example {index} after {MAX_SCENE_ATTEMPTS} attempts")))
}

/// Build the full dataset. Scenes are globally distinct, so no scene can
/// appear in two splits.
pub fn build_dataset(config: &CorpusConfig, seed: u64) -> Result<Dataset> {
    config.validate()?;
    let (n_train, n_valid, n_test) = split_sizes(config);
    let mut seen = HashSet::with_capacity(config.size);
    let mut examples = Vec::with_capacity(config.size);
    for index in 0..config.size {
        examples.push(generate_example(config, seed, index as u64, &mut seen)?);
    }
    let mut iter = examples.into_iter();
    let train: Vec<_> = iter.by_ref().take(n_train).collect();
    let valid: Vec<_> = iter.by_ref().take(n_valid).collect();
    let test: Vec<_> = iter.collect();
    debug_assert_eq!(test.len(), n_test);
    Ok(Dataset { config: config.clone(), seed, train, valid, test })
}

/// Write the three split files plus the manifest. Records are one JSON
/// object per line; the manifest is written last.
pub fn write_dataset(dataset: &Dataset, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir)?;
    for split in Split::ALL {
        let path = dir.join(split.file_name());
        let mut file = fs::File::create(&path)?;
        for example in dataset.split(split) {
            let line = serde_json::to_string(example).map_err(|e| Error::Format(e.to_string()))?;
            file.write_all(line.as_bytes())?;
            file.write_all(b"\n")?;
        }
        file.flush()?;
    }
    let manifest = CorpusManifest {
        format_version: CORPUS_FORMAT_VERSION.to_string(),
        config: dataset.config.clone(),
        seed: dataset.seed,
        train_size: dataset.train.len(),
        valid_size: dataset.valid.len(),
        test_size: dataset.test.len(),
        lexicon: lexicon(),
    };
    let manifest_json =
        serde_json::to_string_pretty(&manifest).map_err(|e| Error::Format(e.to_string()))?;
    fs::write(dir.join("corpus.json"), manifest_json)?;
    Ok(())
}

pub fn read_manifest(dir: &Path) -> Result<CorpusManifest> {
    let text = fs::read_to_string(dir.join("corpus.json"))?;
    let manifest: CorpusManifest =
        serde_json::from_str(&text).map_err(|e| Error::Format(format!("corpus manifest: {e}")))?;
    if manifest.format_version != CORPUS_FORMAT_VERSION {
        return Err(Error::Format(format!(
            "unsupported corpus format version {}",
            manifest.format_version
        )));
    }
    Ok(manifest)
}

fn read_split(dir: &Path, split: Split) -> Result<Vec<PairedExample>> {
    let path = dir.join(split.file_name());
    let file = fs::File::open(&path)?;
    let mut out = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let example: PairedExample = serde_json::from_str(&line)
            .map_err(|e| Error::Format(format!("{}:{}: {e}", path.display(), i + 1)))?;
        out.push(example);
    }
    Ok(out)
}

/// Load a corpus directory written by [`write_dataset`].
pub fn load_dataset(dir: &Path) -> Result<Dataset> {
    let manifest = read_manifest(dir)?;
    let dataset = Dataset {
        config: manifest.config,
        seed: manifest.seed,
        train: read_split(dir, Split::Train)?,
        valid: read_split(dir, Split::Valid)?,
        test: read_split(dir, Split::Test)?,
    };
    if dataset.train.len() != manifest.train_size
        || dataset.valid.len() != manifest.valid_size
        || dataset.test.len() != manifest.test_size
    {
        return Err(Error::Format("split sizes disagree with manifest".into()));
    }
    Ok(dataset)
}
