//! Seeded input streams and the per-trial random generator.

use lol_core::{ConceptClass, Example, HypothesisClass, Label, Pattern, PatternClassExplicit, Point, VersionSpace};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The generator of trial `trial`, seeded with `seed ⊕ trial`.
pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ trial as u64)
}

/// Classes that can draw a random realizable sequence.
pub trait RealizableSource: ConceptClass {
    /// A realizable sequence of length at most `len`. Hypothesis classes always
    /// reach `len`; an explicit pattern class stops when no extension remains.
    fn sample_realizable(&self, len: usize, rng: &mut ChaCha8Rng) -> Pattern;
}

impl RealizableSource for VersionSpace {
    fn sample_realizable(&self, len: usize, rng: &mut ChaCha8Rng) -> Pattern {
        let active: Vec<usize> = self.active().iter().collect();
        let Some(&h) = active.choose(rng) else { return Pattern::empty() };
        let h = &self.base().hypotheses()[h];
        let n = self.domain_size();
        (0..len)
            .map(|_| {
                let x = Point::new(rng.gen_range(0..n));
                let image = h.image(x).labels();
                Example { x, y: image[rng.gen_range(0..image.len())] }
            })
            .collect()
    }
}

impl RealizableSource for PatternClassExplicit {
    fn sample_realizable(&self, len: usize, rng: &mut ChaCha8Rng) -> Pattern {
        let mut rest = self.clone();
        let mut out = Pattern::empty();
        for _ in 0..len {
            let moves: Vec<(Point, Label)> = (0..self.domain_size())
                .flat_map(|x| (0..self.label_count()).map(move |y| (Point::new(x), Label::new(y))))
                .filter(|&(x, y)| !rest.restrict(x, y).is_empty())
                .collect();
            let Some(&(x, y)) = moves.choose(rng) else { break };
            rest = rest.restrict(x, y);
            out.push(Example { x, y });
        }
        out
    }
}

/// A realizable stream of one random hypothesis where each label is replaced,
/// with probability `noise`, by a uniform label.
pub fn noisy_stream(class: &HypothesisClass, len: usize, noise: f64, rng: &mut ChaCha8Rng) -> Pattern {
    let clean = VersionSpace::from_class(class.clone()).sample_realizable(len, rng);
    let labels = class.label_count();
    clean
        .iter()
        .map(|z| {
            let y = if rng.gen_bool(noise) { Label::new(rng.gen_range(0..labels)) } else { z.y };
            Example { x: z.x, y }
        })
        .collect()
}
