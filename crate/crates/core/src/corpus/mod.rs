//! Synthetic paired corpus: grid scenes of colored shapes, rendered images,
//! and aspect-diverse template captions with a logical faithfulness oracle.

mod dataset;
mod grammar;
mod render;
mod scene;

pub use dataset::{build_dataset, load_dataset, write_dataset, CorpusManifest, Dataset, Split};
pub use grammar::{
    caption_holds, enumerate_true_captions, generate_captions, lexicon, parse_caption, CaptionForm,
};
pub use render::{palette_rgb, render_scene, shape_mask};
pub use scene::{sample_scene, Aspect, Color, ImageGrid, Object, PairedExample, RawCaption, SceneSpec, Shape};

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Corpus generation settings.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CorpusConfig {
    /// Number of paired examples to generate.
    pub size: usize,
    /// Grid side R; scenes are R x R cells.
    pub grid_side: usize,
    /// Square image side in pixels; must be divisible by `grid_side`.
    pub image_size: usize,
    /// Inclusive object-count range.
    pub min_objects: usize,
    pub max_objects: usize,
    /// Captions per example (N).
    pub captions_per_example: usize,
    pub train_fraction: f64,
    pub valid_fraction: f64,
    pub test_fraction: f64,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig {
            size: 1000,
            grid_side: 4,
            image_size: 32,
            min_objects: 2,
            max_objects: 4,
            captions_per_example: 5,
            train_fraction: 0.8,
            valid_fraction: 0.1,
            test_fraction: 0.1,
        }
    }
}

impl CorpusConfig {
    pub fn validate(&self) -> Result<()> {
        if self.size == 0 {
            return Err(Error::Config("corpus size must be >= 1".into()));
        }
        if self.grid_side < 2 {
            return Err(Error::Config("grid side must be >= 2".into()));
        }
        if self.image_size % self.grid_side != 0 {
            return Err(Error::Config(format!(
                "image size {} not divisible by grid side {}",
                self.image_size, self.grid_side
            )));
        }
        if self.image_size / self.grid_side < 4 {
            return Err(Error::Config("cells must be at least 4x4 pixels".into()));
        }
        let max_cells = self.grid_side * self.grid_side;
        if self.min_objects < 1 || self.min_objects > self.max_objects || self.max_objects > max_cells {
            return Err(Error::Config(format!(
                "object-count range [{}, {}] must lie within [1, {}]",
                self.min_objects, self.max_objects, max_cells
            )));
        }
        if self.captions_per_example == 0 {
            return Err(Error::Config("captions per example must be >= 1".into()));
        }
        let sum = self.train_fraction + self.valid_fraction + self.test_fraction;
        if self.train_fraction < 0.0 || self.valid_fraction < 0.0 || self.test_fraction < 0.0 {
            return Err(Error::Config("split fractions must be non-negative".into()));
        }
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::Config(format!("split fractions sum to {sum}, expected 1")));
        }
        Ok(())
    }

    /// Pixels per grid cell.
    pub fn cell_size(&self) -> usize {
        self.image_size / self.grid_side
    }
}
