//! Deterministic scene rendering: filled shape masks on a white background.

use super::scene::{Color, ImageGrid, SceneSpec, Shape};
use crate::error::Result;

/// Fixed palette, chosen for maximal channel separability.
pub fn palette_rgb(color: Color) -> [f64; 3] {
    match color {
        Color::Red => [1.0, 0.0, 0.0],
        Color::Green => [0.0, 1.0, 0.0],
        Color::Blue => [0.0, 0.0, 1.0],
        Color::Yellow => [1.0, 1.0, 0.0],
    }
}

/// Boolean fill mask for a shape inside a `cell_size` x `cell_size` cell,
/// row-major. Shapes keep a 1-pixel margin; the triangle points upward.
pub fn shape_mask(shape: Shape, cell_size: usize) -> Vec<bool> {
    assert!(cell_size >= 4, "cell size must be at least 4");
    let cs = cell_size;
    let mut mask = vec![false; cs * cs];
    let lo = 1;
    let hi = cs - 2;
    let center = (cs as f64 - 1.0) / 2.0;
    match shape {
        Shape::Square => {
            for y in lo..=hi {
                for x in lo..=hi {
                    mask[y * cs + x] = true;
                }
            }
        }
        Shape::Circle => {
            let radius = (cs as f64 - 2.0) / 2.0;
            let r2 = radius * radius;
            for y in lo..=hi {
                for x in lo..=hi {
                    let dy = y as f64 - center;
                    let dx = x as f64 - center;
                    if dy * dy + dx * dx <= r2 {
                        mask[y * cs + x] = true;
                    }
                }
            }
        }
        Shape::Triangle => {
            let max_half = (cs as f64 - 2.0) / 2.0;
            let rows = (hi - lo) as f64;
            for y in lo..=hi {
                let frac = (y - lo) as f64 / rows;
                let half = 0.5 + frac * (max_half - 0.5);
                for x in lo..=hi {
                    if (x as f64 - center).abs() <= half {
                        mask[y * cs + x] = true;
                    }
                }
            }
        }
    }
    mask
}

/// Paint each occupied cell's shape in its color on a white background.
pub fn render_scene(scene: &SceneSpec, image_size: usize) -> Result<ImageGrid> {
    scene.validate()?;
    assert!(image_size % scene.side == 0, "image size must divide evenly into cells");
    let cs = image_size / scene.side;
    let mut image = ImageGrid::filled(image_size, image_size, 1.0);
    for (row, col, obj) in scene.objects() {
        let rgb = palette_rgb(obj.color);
        let mask = shape_mask(obj.shape, cs);
        for y in 0..cs {
            for x in 0..cs {
                if mask[y * cs + x] {
                    for ch in 0..3 {
                        image.set(row * cs + y, col * cs + x, ch, rgb[ch]);
                    }
                }
            }
        }
    }
    Ok(image)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::scene::Object;

    #[test]
    fn single_red_square_cell() {
        let mut scene = SceneSpec::empty(4);
        scene.set_cell(0, 0, Some(Object { shape: Shape::Square, color: Color::Red }));
        let img = render_scene(&scene, 32).unwrap();
        // interior of cell (0,0) is red
        assert_eq!(img.get(4, 4, 0), 1.0);
        assert_eq!(img.get(4, 4, 1), 0.0);
        assert_eq!(img.get(4, 4, 2), 0.0);
        // margin pixel stays white
        assert_eq!(img.get(0, 0, 1), 1.0);
        // every other cell is all white
        for y in 0..32 {
            for x in 8..32 {
                for ch in 0..3 {
                    assert_eq!(img.get(y, x, ch), 1.0);
                }
            }
        }
    }

    #[test]
    fn render_is_deterministic() {
        let mut scene = SceneSpec::empty(4);
        scene.set_cell(1, 2, Some(Object { shape: Shape::Triangle, color: Color::Blue }));
        scene.set_cell(3, 3, Some(Object { shape: Shape::Circle, color: Color::Yellow }));
        let a = render_scene(&scene, 32).unwrap();
        let b = render_scene(&scene, 32).unwrap();
        assert_eq!(a.pixels, b.pixels);
    }

    #[test]
    fn masks_are_distinct_and_marginned() {
        let cs = 8;
        let sq = shape_mask(Shape::Square, cs);
        let ci = shape_mask(Shape::Circle, cs);
        let tr = shape_mask(Shape::Triangle, cs);
        assert_ne!(sq, ci);
        assert_ne!(ci, tr);
        // square fills the 6x6 box
        assert_eq!(sq.iter().filter(|&&b| b).count(), 36);
        // all masks respect the margin
        for mask in [&sq, &ci, &tr] {
            for i in 0..cs {
                assert!(!mask[i]); // top row
                assert!(!mask[(cs - 1) * cs + i]); // bottom row
                assert!(!mask[i * cs]); // left column
                assert!(!mask[i * cs + cs - 1]); // right column
            }
        }
    }
}
