//! Closed template grammar over grid scenes.
//!
//! Five caption aspects (count, color-of-shape, location, relation,
//! inventory) with a parser and a logical evaluator. The evaluator is the
//! faithfulness oracle: a caption is faithful to a scene iff its parsed
//! logical form is satisfied by the scene.

use super::scene::{Aspect, Color, RawCaption, SceneSpec, Shape};
use crate::error::{Error, Result};
use crate::rng::ChaCha8Rng;
use rand::seq::SliceRandom;
use rand::Rng;

const NUMBER_WORDS: [&str; 16] = [
    "one", "two", "three", "four", "five", "six", "seven", "eight", "nine", "ten", "eleven",
    "twelve", "thirteen", "fourteen", "fifteen", "sixteen",
];

fn number_word(n: usize) -> &'static str {
    NUMBER_WORDS[n - 1]
}

fn number_from_word(w: &str) -> Option<usize> {
    NUMBER_WORDS.iter().position(|&x| x == w).map(|i| i + 1)
}

/// Every word the grammar can emit, in fixed order. The vocabulary and the
/// corpus manifest both derive from this list.
pub fn lexicon() -> Vec<String> {
    let mut words: Vec<String> = ["a", "the", "is", "are", "there", "in", "of", "and", "sits", "object", "objects"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    words.extend(Shape::ALL.iter().map(|s| s.word().to_string()));
    words.extend(Color::ALL.iter().map(|c| c.word().to_string()));
    words.extend(NUMBER_WORDS.iter().map(|s| s.to_string()));
    words.extend(["top", "bottom", "left", "right", "above", "below"].iter().map(|s| s.to_string()));
    words
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Vertical {
    Top,
    Bottom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Horizontal {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelationKind {
    LeftOf,
    RightOf,
    Above,
    Below,
}

/// Parsed logical form of a caption.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaptionForm {
    Count(usize),
    ColorOfShape { shape: Shape, color: Color },
    Location { shape: Shape, vertical: Vertical, horizontal: Horizontal },
    Relation { left: Shape, relation: RelationKind, right: Shape },
    InventoryOne { color: Color, shape: Shape },
    InventoryPair { first: (Color, Shape), second: (Color, Shape) },
}

impl CaptionForm {
    pub fn aspect(&self) -> Aspect {
        match self {
            CaptionForm::Count(_) => Aspect::Count,
            CaptionForm::ColorOfShape { .. } => Aspect::ColorOfShape,
            CaptionForm::Location { .. } => Aspect::Location,
            CaptionForm::Relation { .. } => Aspect::Relation,
            CaptionForm::InventoryOne { .. } | CaptionForm::InventoryPair { .. } => Aspect::Inventory,
        }
    }

    pub fn words(&self) -> Vec<String> {
        let w = |s: &str| s.to_string();
        match *self {
            CaptionForm::Count(1) => vec![w("there"), w("is"), w("one"), w("object")],
            CaptionForm::Count(n) => {
                vec![w("there"), w("are"), w(number_word(n)), w("objects")]
            }
            CaptionForm::ColorOfShape { shape, color } => {
                vec![w("the"), w(shape.word()), w("is"), w(color.word())]
            }
            CaptionForm::Location { shape, vertical, horizontal } => {
                let v = match vertical {
                    Vertical::Top => "top",
                    Vertical::Bottom => "bottom",
                };
                let h = match horizontal {
                    Horizontal::Left => "left",
                    Horizontal::Right => "right",
                };
                vec![w("a"), w(shape.word()), w("sits"), w("in"), w("the"), w(v), w(h)]
            }
            CaptionForm::Relation { left, relation, right } => match relation {
                RelationKind::LeftOf => vec![
                    w("the"), w(left.word()), w("is"), w("left"), w("of"), w("the"), w(right.word()),
                ],
                RelationKind::RightOf => vec![
                    w("the"), w(left.word()), w("is"), w("right"), w("of"), w("the"), w(right.word()),
                ],
                RelationKind::Above => {
                    vec![w("the"), w(left.word()), w("is"), w("above"), w("the"), w(right.word())]
                }
                RelationKind::Below => {
                    vec![w("the"), w(left.word()), w("is"), w("below"), w("the"), w(right.word())]
                }
            },
            CaptionForm::InventoryOne { color, shape } => {
                vec![w("a"), w(color.word()), w(shape.word())]
            }
            CaptionForm::InventoryPair { first, second } => vec![
                w("a"), w(first.0.word()), w(first.1.word()),
                w("and"),
                w("a"), w(second.0.word()), w(second.1.word()),
            ],
        }
    }

    pub fn caption(&self) -> RawCaption {
        RawCaption { words: self.words(), aspect: self.aspect() }
    }
}

/// Parse a word sequence into its logical form. Returns an unparseable-caption
/// error for anything outside the grammar.
pub fn parse_caption(words: &[String]) -> Result<CaptionForm> {
    let w: Vec<&str> = words.iter().map(|s| s.as_str()).collect();
    let fail = || Error::Unparseable(words.join(" "));

    match w.as_slice() {
        ["there", "is", "one", "object"] => Ok(CaptionForm::Count(1)),
        ["there", "are", num, "objects"] => {
            let n = number_from_word(num).ok_or_else(fail)?;
            if n == 1 {
                return Err(fail());
            }
            Ok(CaptionForm::Count(n))
        }
        ["the", shape, "is", "left", "of", "the", other] => parse_relation(shape, RelationKind::LeftOf, other, fail),
        ["the", shape, "is", "right", "of", "the", other] => parse_relation(shape, RelationKind::RightOf, other, fail),
        ["the", shape, "is", "above", "the", other] => parse_relation(shape, RelationKind::Above, other, fail),
        ["the", shape, "is", "below", "the", other] => parse_relation(shape, RelationKind::Below, other, fail),
        ["the", shape, "is", color] => {
            let shape = Shape::from_word(shape).ok_or_else(fail)?;
            let color = Color::from_word(color).ok_or_else(fail)?;
            Ok(CaptionForm::ColorOfShape { shape, color })
        }
        ["a", shape, "sits", "in", "the", vert, horiz] => {
            let shape = Shape::from_word(shape).ok_or_else(fail)?;
            let vertical = match *vert {
                "top" => Vertical::Top,
                "bottom" => Vertical::Bottom,
                _ => return Err(fail()),
            };
            let horizontal = match *horiz {
                "left" => Horizontal::Left,
                "right" => Horizontal::Right,
                _ => return Err(fail()),
            };
            Ok(CaptionForm::Location { shape, vertical, horizontal })
        }
        ["a", color, shape] => {
            let color = Color::from_word(color).ok_or_else(fail)?;
            let shape = Shape::from_word(shape).ok_or_else(fail)?;
            Ok(CaptionForm::InventoryOne { color, shape })
        }
        ["a", c1, s1, "and", "a", c2, s2] => {
            let first = (Color::from_word(c1).ok_or_else(fail)?, Shape::from_word(s1).ok_or_else(fail)?);
            let second = (Color::from_word(c2).ok_or_else(fail)?, Shape::from_word(s2).ok_or_else(fail)?);
            Ok(CaptionForm::InventoryPair { first, second })
        }
        _ => Err(fail()),
    }
}

fn parse_relation(
    shape: &str,
    relation: RelationKind,
    other: &str,
    fail: impl Fn() -> Error,
) -> Result<CaptionForm> {
    let left = Shape::from_word(shape).ok_or_else(fail)?;
    let right = Shape::from_word(other).ok_or_else(fail)?;
    Ok(CaptionForm::Relation { left, relation, right })
}

fn in_quadrant(scene: &SceneSpec, row: usize, col: usize, vertical: Vertical, horizontal: Horizontal) -> bool {
    let top = row * 2 < scene.side;
    let left = col * 2 < scene.side;
    (top == (vertical == Vertical::Top)) && (left == (horizontal == Horizontal::Left))
}

fn relation_holds(relation: RelationKind, a: (usize, usize), b: (usize, usize)) -> bool {
    match relation {
        RelationKind::LeftOf => a.1 < b.1,
        RelationKind::RightOf => a.1 > b.1,
        RelationKind::Above => a.0 < b.0,
        RelationKind::Below => a.0 > b.0,
    }
}

/// Evaluate a parsed caption against a scene.
pub fn form_holds(scene: &SceneSpec, form: &CaptionForm) -> bool {
    let objects = scene.objects();
    match *form {
        CaptionForm::Count(n) => objects.len() == n,
        // "the <shape> is <color>": at least one object of the shape exists
        // and all of them carry the color.
        CaptionForm::ColorOfShape { shape, color } => {
            let of_shape: Vec<_> = objects.iter().filter(|(_, _, o)| o.shape == shape).collect();
            !of_shape.is_empty() && of_shape.iter().all(|(_, _, o)| o.color == color)
        }
        // "a <shape> sits in the <quadrant>": existential.
        CaptionForm::Location { shape, vertical, horizontal } => objects
            .iter()
            .any(|&(r, c, o)| o.shape == shape && in_quadrant(scene, r, c, vertical, horizontal)),
        // "the <a> is <rel> the <b>": every a-object stands in the relation
        // to every b-object, over at least one pair of distinct objects.
        CaptionForm::Relation { left, relation, right } => {
            let lhs: Vec<_> = objects.iter().filter(|(_, _, o)| o.shape == left).collect();
            let rhs: Vec<_> = objects.iter().filter(|(_, _, o)| o.shape == right).collect();
            let mut pairs = 0usize;
            for &&(lr, lc, _) in &lhs {
                for &&(rr, rc, _) in &rhs {
                    if (lr, lc) == (rr, rc) {
                        continue;
                    }
                    pairs += 1;
                    if !relation_holds(relation, (lr, lc), (rr, rc)) {
                        return false;
                    }
                }
            }
            pairs > 0
        }
        CaptionForm::InventoryOne { color, shape } => {
            objects.iter().any(|(_, _, o)| o.shape == shape && o.color == color)
        }
        CaptionForm::InventoryPair { first, second } => {
            let count =
                |d: (Color, Shape)| objects.iter().filter(|(_, _, o)| o.color == d.0 && o.shape == d.1).count();
            if first == second {
                count(first) >= 2
            } else {
                count(first) >= 1 && count(second) >= 1
            }
        }
    }
}

/// True iff the caption's logical form is satisfied by the scene.
/// A caption outside the grammar is an error, distinct from `false`.
pub fn caption_holds(scene: &SceneSpec, caption: &RawCaption) -> Result<bool> {
    let form = parse_caption(&caption.words)?;
    Ok(form_holds(scene, &form))
}

/// All generator-eligible true captions, grouped by aspect in aspect order.
///
/// Color-of-shape captions are emitted only when the shape is unique in the
/// scene, and relation captions only when both shapes are unique, so that a
/// definite article never refers ambiguously.
pub fn enumerate_true_captions(scene: &SceneSpec) -> Vec<(Aspect, Vec<CaptionForm>)> {
    let objects = scene.objects();
    let shape_count = |s: Shape| objects.iter().filter(|(_, _, o)| o.shape == s).count();

    let mut groups: Vec<(Aspect, Vec<CaptionForm>)> = Vec::new();

    groups.push((Aspect::Count, vec![CaptionForm::Count(objects.len())]));

    let mut color_forms = Vec::new();
    for shape in Shape::ALL {
        if shape_count(shape) == 1 {
            let color = objects.iter().find(|(_, _, o)| o.shape == shape).unwrap().2.color;
            color_forms.push(CaptionForm::ColorOfShape { shape, color });
        }
    }
    groups.push((Aspect::ColorOfShape, color_forms));

    let mut location_forms = Vec::new();
    for &(row, col, obj) in &objects {
        let vertical = if row * 2 < scene.side { Vertical::Top } else { Vertical::Bottom };
        let horizontal = if col * 2 < scene.side { Horizontal::Left } else { Horizontal::Right };
        let form = CaptionForm::Location { shape: obj.shape, vertical, horizontal };
        if !location_forms.contains(&form) {
            location_forms.push(form);
        }
    }
    groups.push((Aspect::Location, location_forms));

    let mut relation_forms = Vec::new();
    for left in Shape::ALL {
        for right in Shape::ALL {
            if left == right || shape_count(left) != 1 || shape_count(right) != 1 {
                continue;
            }
            for relation in [RelationKind::LeftOf, RelationKind::RightOf, RelationKind::Above, RelationKind::Below] {
                let form = CaptionForm::Relation { left, relation, right };
                if form_holds(scene, &form) {
                    relation_forms.push(form);
                }
            }
        }
    }
    groups.push((Aspect::Relation, relation_forms));

    let mut inventory_forms = Vec::new();
    for &(_, _, obj) in &objects {
        let form = CaptionForm::InventoryOne { color: obj.color, shape: obj.shape };
        if !inventory_forms.contains(&form) {
            inventory_forms.push(form);
        }
    }
    for i in 0..objects.len() {
        for j in (i + 1)..objects.len() {
            let (_, _, a) = objects[i];
            let (_, _, b) = objects[j];
            let form = CaptionForm::InventoryPair {
                first: (a.color, a.shape),
                second: (b.color, b.shape),
            };
            if form_holds(scene, &form) && !inventory_forms.contains(&form) {
                inventory_forms.push(form);
            }
        }
    }
    groups.push((Aspect::Inventory, inventory_forms));

    groups
}

/// Generate `n` captions, each true of the scene: one caption per non-empty
/// aspect in aspect order first, then further rounds with unused bindings.
pub fn generate_captions(scene: &SceneSpec, n: usize, rng: &mut ChaCha8Rng) -> Result<Vec<RawCaption>> {
    if n == 0 {
        return Err(Error::Config("caption count must be >= 1".into()));
    }
    scene.validate()?;
    let mut groups = enumerate_true_captions(scene);
    let available: usize = groups.iter().map(|(_, forms)| forms.len()).sum();
    if available < n {
        return Err(Error::Corpus(format!(
            "scene admits only {available} distinct true captions, {n} requested"
        )));
    }
    // Random binding choice within each aspect; aspect order stays fixed.
    for (_, forms) in groups.iter_mut() {
        forms.shuffle(rng);
    }
    let mut captions = Vec::with_capacity(n);
    let mut round = 0;
    while captions.len() < n {
        let mut took_any = false;
        for (_, forms) in &groups {
            if captions.len() == n {
                break;
            }
            if let Some(form) = forms.get(round) {
                captions.push(form.caption());
                took_any = true;
            }
        }
        if !took_any {
            break;
        }
        round += 1;
    }
    debug_assert_eq!(captions.len(), n);
    Ok(captions)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::scene::Object;
    use crate::rng::rng_from_seed;
    use std::collections::BTreeSet;

    fn one_red_square() -> SceneSpec {
        let mut scene = SceneSpec::empty(4);
        scene.set_cell(1, 1, Some(Object { shape: Shape::Square, color: Color::Red }));
        scene
    }

    fn raw(words: &[&str]) -> RawCaption {
        RawCaption { words: words.iter().map(|s| s.to_string()).collect(), aspect: Aspect::Count }
    }

    #[test]
    fn color_semantics() {
        let scene = one_red_square();
        assert!(caption_holds(&scene, &raw(&["the", "square", "is", "red"])).unwrap());
        assert!(!caption_holds(&scene, &raw(&["the", "square", "is", "blue"])).unwrap());
    }

    #[test]
    fn unparseable_is_an_error_not_false() {
        let scene = one_red_square();
        let err = caption_holds(&scene, &raw(&["purple", "monkey", "dishwasher"]));
        assert!(matches!(err, Err(Error::Unparseable(_))));
    }

    #[test]
    fn relation_via_exhaustive_cell_comparison() {
        // circle at (0,3), triangle at (0,0): triangle is left of circle.
        let mut scene = SceneSpec::empty(4);
        scene.set_cell(0, 3, Some(Object { shape: Shape::Circle, color: Color::Blue }));
        scene.set_cell(0, 0, Some(Object { shape: Shape::Triangle, color: Color::Green }));
        // oracle: compare every triangle cell against every circle cell
        let tri: Vec<(usize, usize)> = scene
            .objects()
            .into_iter()
            .filter(|(_, _, o)| o.shape == Shape::Triangle)
            .map(|(r, c, _)| (r, c))
            .collect();
        let cir: Vec<(usize, usize)> = scene
            .objects()
            .into_iter()
            .filter(|(_, _, o)| o.shape == Shape::Circle)
            .map(|(r, c, _)| (r, c))
            .collect();
        let mut expected = !tri.is_empty() && !cir.is_empty();
        for &t in &tri {
            for &c in &cir {
                if t.1 >= c.1 {
                    expected = false;
                }
            }
        }
        assert!(expected);
        let got = caption_holds(&scene, &raw(&["the", "triangle", "is", "left", "of", "the", "circle"])).unwrap();
        assert_eq!(got, expected);
        assert!(!caption_holds(&scene, &raw(&["the", "triangle", "is", "right", "of", "the", "circle"])).unwrap());
        assert!(!caption_holds(&scene, &raw(&["the", "triangle", "is", "above", "the", "circle"])).unwrap());
    }

    #[test]
    fn one_object_scene_yields_count_then_color() {
        // grammar enumeration oracle: captions for n=2 are the count and
        // color-of-shape forms, in aspect order.
        let scene = one_red_square();
        let captions = generate_captions(&scene, 2, &mut rng_from_seed(0)).unwrap();
        let texts: Vec<String> = captions.iter().map(|c| c.text()).collect();
        assert_eq!(texts[0], "there is one object");
        assert_eq!(texts[1], "the square is red");
    }

    #[test]
    fn generated_captions_always_hold() {
        let mut rng = rng_from_seed(5);
        for seed in 0..50u64 {
            let cfg = crate::corpus::CorpusConfig::default();
            let scene = crate::corpus::sample_scene(&mut crate::rng::rng_from_seed(seed), &cfg).unwrap();
            if let Ok(captions) = generate_captions(&scene, 5, &mut rng) {
                for c in &captions {
                    assert!(caption_holds(&scene, c).unwrap(), "caption {:?} false of {:?}", c.text(), scene);
                }
            }
        }
    }

    #[test]
    fn five_captions_cover_three_aspects() {
        let mut scene = SceneSpec::empty(4);
        scene.set_cell(0, 0, Some(Object { shape: Shape::Square, color: Color::Red }));
        scene.set_cell(2, 1, Some(Object { shape: Shape::Circle, color: Color::Blue }));
        scene.set_cell(3, 3, Some(Object { shape: Shape::Triangle, color: Color::Green }));
        let captions = generate_captions(&scene, 5, &mut rng_from_seed(9)).unwrap();
        assert_eq!(captions.len(), 5);
        let aspects: BTreeSet<Aspect> = captions.iter().map(|c| c.aspect).collect();
        assert!(aspects.len() >= 3, "aspects = {aspects:?}");
    }

    #[test]
    fn too_many_captions_is_a_corpus_error() {
        let scene = one_red_square();
        let err = generate_captions(&scene, 50, &mut rng_from_seed(0));
        assert!(matches!(err, Err(Error::Corpus(_))));
    }

    #[test]
    fn round_trip_parse_over_enumeration() {
        let mut scene = SceneSpec::empty(4);
        scene.set_cell(0, 1, Some(Object { shape: Shape::Square, color: Color::Yellow }));
        scene.set_cell(2, 2, Some(Object { shape: Shape::Circle, color: Color::Red }));
        for (_, forms) in enumerate_true_captions(&scene) {
            for form in forms {
                let parsed = parse_caption(&form.words()).unwrap();
                assert_eq!(parsed, form);
                assert!(form_holds(&scene, &form));
            }
        }
    }

    #[test]
    fn lexicon_covers_all_templates() {
        let lex: BTreeSet<String> = lexicon().into_iter().collect();
        let mut scene = SceneSpec::empty(4);
        scene.set_cell(0, 0, Some(Object { shape: Shape::Triangle, color: Color::Yellow }));
        scene.set_cell(3, 2, Some(Object { shape: Shape::Circle, color: Color::Green }));
        for (_, forms) in enumerate_true_captions(&scene) {
            for form in forms {
                for word in form.words() {
                    assert!(lex.contains(&word), "word {word} missing from lexicon");
                }
            }
        }
    }
}
