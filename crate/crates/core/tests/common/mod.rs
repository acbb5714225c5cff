#![allow(dead_code)]

use lol_core::{HypothesisClass, Label, Pattern, Point, VersionSpace};
use lol_core::pattern::Example;
use rand::Rng;

/// Random single-labeled class with `1..=max_h` distinct hypotheses.
pub fn random_class<R: Rng>(rng: &mut R, n: usize, labels: usize, max_h: usize) -> HypothesisClass {
    let size = rng.gen_range(1..=max_h);
    let mut rows: Vec<Vec<usize>> = Vec::new();
    for _ in 0..size {
        let row: Vec<usize> = (0..n).map(|_| rng.gen_range(0..labels)).collect();
        if !rows.contains(&row) {
            rows.push(row);
        }
    }
    HypothesisClass::from_table(&rows, n, labels).unwrap()
}

/// Every sequence of length at most `max_len` consistent with `class`.
pub fn realizable_sequences(class: &VersionSpace, max_len: usize) -> Vec<Pattern> {
    let n = class.base().domain_size();
    let labels = class.base().label_count();
    let mut out = vec![Pattern::empty()];
    let mut frontier = vec![Pattern::empty()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for s in &frontier {
            for x in 0..n {
                for y in 0..labels {
                    let mut t = s.clone();
                    t.push(Example { x: Point::new(x), y: Label::new(y) });
                    if class.admits(&t) {
                        next.push(t);
                    }
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Sequences of exactly length `len`.
pub fn realizable_of_length(class: &VersionSpace, len: usize) -> Vec<Pattern> {
    realizable_sequences(class, len).into_iter().filter(|s| s.len() == len).collect()
}
