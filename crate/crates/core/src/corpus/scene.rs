//! Scene descriptions, images, and caption records.

use super::CorpusConfig;
use crate::error::{Error, Result};
use crate::rng::ChaCha8Rng;
use rand::Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Shape {
    Square,
    Circle,
    Triangle,
}

impl Shape {
    pub const ALL: [Shape; 3] = [Shape::Square, Shape::Circle, Shape::Triangle];

    pub fn word(self) -> &'static str {
        match self {
            Shape::Square => "square",
            Shape::Circle => "circle",
            Shape::Triangle => "triangle",
        }
    }

    pub fn from_word(w: &str) -> Option<Shape> {
        Shape::ALL.into_iter().find(|s| s.word() == w)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Color {
    Red,
    Green,
    Blue,
    Yellow,
}

impl Color {
    pub const ALL: [Color; 4] = [Color::Red, Color::Green, Color::Blue, Color::Yellow];

    pub fn word(self) -> &'static str {
        match self {
            Color::Red => "red",
            Color::Green => "green",
            Color::Blue => "blue",
            Color::Yellow => "yellow",
        }
    }

    pub fn from_word(w: &str) -> Option<Color> {
        Color::ALL.into_iter().find(|c| c.word() == w)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Object {
    pub shape: Shape,
    pub color: Color,
}

/// Ground-truth symbolic description of a synthetic image: an R x R grid of
/// optional colored shapes. Row-major cell order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SceneSpec {
    pub side: usize,
    pub cells: Vec<Option<Object>>,
}

impl SceneSpec {
    pub fn empty(side: usize) -> SceneSpec {
        SceneSpec { side, cells: vec![None; side * side] }
    }

    pub fn cell(&self, row: usize, col: usize) -> Option<Object> {
        self.cells[row * self.side + col]
    }

    pub fn set_cell(&mut self, row: usize, col: usize, obj: Option<Object>) {
        let side = self.side;
        self.cells[row * side + col] = obj;
    }

    /// Occupied cells as (row, col, object), in row-major scan order.
    pub fn objects(&self) -> Vec<(usize, usize, Object)> {
        let mut out = Vec::new();
        for row in 0..self.side {
            for col in 0..self.side {
                if let Some(obj) = self.cell(row, col) {
                    out.push((row, col, obj));
                }
            }
        }
        out
    }

    pub fn object_count(&self) -> usize {
        self.cells.iter().filter(|c| c.is_some()).count()
    }

    pub fn validate(&self) -> Result<()> {
        if self.cells.len() != self.side * self.side {
            return Err(Error::Shape(format!(
                "scene has {} cells, expected {}",
                self.cells.len(),
                self.side * self.side
            )));
        }
        let n = self.object_count();
        if n == 0 || n > self.side * self.side {
            return Err(Error::Corpus(format!("scene must hold 1..={} objects, has {n}", self.side * self.side)));
        }
        Ok(())
    }
}

/// An image as H x W x 3 channel values in [0, 1], row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ImageGrid {
    pub height: usize,
    pub width: usize,
    pub pixels: Vec<f64>,
}

impl ImageGrid {
    pub fn filled(height: usize, width: usize, value: f64) -> ImageGrid {
        ImageGrid { height, width, pixels: vec![value; height * width * 3] }
    }

    pub fn get(&self, row: usize, col: usize, channel: usize) -> f64 {
        self.pixels[(row * self.width + col) * 3 + channel]
    }

    pub fn set(&mut self, row: usize, col: usize, channel: usize, value: f64) {
        let w = self.width;
        self.pixels[(row * w + col) * 3 + channel] = value;
    }

    pub fn validate(&self) -> Result<()> {
        if self.pixels.len() != self.height * self.width * 3 {
            return Err(Error::Shape("pixel buffer does not match image dimensions".into()));
        }
        if self.pixels.iter().any(|v| !(0.0..=1.0).contains(v)) {
            return Err(Error::Numeric("pixel value outside [0, 1]".into()));
        }
        Ok(())
    }
}

/// Which property of the scene a caption describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Aspect {
    Count,
    ColorOfShape,
    Location,
    Relation,
    Inventory,
}

impl Aspect {
    pub const ALL: [Aspect; 5] = [
        Aspect::Count,
        Aspect::ColorOfShape,
        Aspect::Location,
        Aspect::Relation,
        Aspect::Inventory,
    ];
}

/// One untokenized caption: lowercase words from the template grammar.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RawCaption {
    pub words: Vec<String>,
    pub aspect: Aspect,
}

impl RawCaption {
    pub fn text(&self) -> String {
        self.words.join(" ")
    }
}

/// One corpus record: scene, rendered image, and N faithful captions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairedExample {
    pub scene: SceneSpec,
    pub image: ImageGrid,
    pub captions: Vec<RawCaption>,
}

/// Draw a scene: object count uniform over the configured range, occupied
/// cells uniform without replacement, shape and color uniform per object.
pub fn sample_scene(rng: &mut ChaCha8Rng, config: &CorpusConfig) -> Result<SceneSpec> {
    config.validate()?;
    let side = config.grid_side;
    let n_cells = side * side;
    let count = rng.gen_range(config.min_objects..=config.max_objects);

    // Partial Fisher-Yates: first `count` entries are a uniform sample.
    let mut indices: Vec<usize> = (0..n_cells).collect();
    for i in 0..count {
        let j = rng.gen_range(i..n_cells);
        indices.swap(i, j);
    }
    let mut chosen: Vec<usize> = indices[..count].to_vec();
    chosen.sort_unstable();

    let mut scene = SceneSpec::empty(side);
    for idx in chosen {
        let shape = Shape::ALL[rng.gen_range(0..Shape::ALL.len())];
        let color = Color::ALL[rng.gen_range(0..Color::ALL.len())];
        scene.cells[idx] = Some(Object { shape, color });
    }
    Ok(scene)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::rng_from_seed;

    fn config_with_range(min: usize, max: usize) -> CorpusConfig {
        CorpusConfig { min_objects: min, max_objects: max, ..CorpusConfig::default() }
    }

    #[test]
    fn same_seed_same_scene() {
        let cfg = CorpusConfig::default();
        let a = sample_scene(&mut rng_from_seed(0), &cfg).unwrap();
        let b = sample_scene(&mut rng_from_seed(0), &cfg).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn forced_full_grid() {
        let cfg = config_with_range(16, 16);
        let scene = sample_scene(&mut rng_from_seed(3), &cfg).unwrap();
        assert_eq!(scene.object_count(), 16);
        assert!(scene.cells.iter().all(|c| c.is_some()));
    }

    #[test]
    fn invalid_range_rejected() {
        let cfg = config_with_range(0, 4);
        assert!(sample_scene(&mut rng_from_seed(0), &cfg).is_err());
        let cfg = config_with_range(2, 17);
        assert!(sample_scene(&mut rng_from_seed(0), &cfg).is_err());
    }

    #[test]
    fn object_counts_uniform_chi_squared() {
        // chi^2 against the uniform oracle on {1..4}; dof 3, p > 0.01
        // corresponds to a statistic below 11.345.
        let cfg = config_with_range(1, 4);
        let mut rng = rng_from_seed(11);
        let mut counts = [0usize; 4];
        let trials = 1000;
        for _ in 0..trials {
            let scene = sample_scene(&mut rng, &cfg).unwrap();
            counts[scene.object_count() - 1] += 1;
        }
        let expected = trials as f64 / 4.0;
        let chi2: f64 = counts.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
        assert!(chi2 < 11.345, "chi2 = {chi2}, counts = {counts:?}");
    }
}
