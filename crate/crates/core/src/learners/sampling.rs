//! Turning a marginal vector into a concrete `k`-subset.
//!
//! Systematic (Madow) sampling lays the marginals end to end on `[0, k)` and
//! picks the labels whose intervals contain `u, u+1, ..., u+k-1` for a single
//! uniform offset `u`. Every interval has length at most one, so each label is
//! hit at most once and with probability exactly its marginal.

use alloc::vec::Vec;
use rand::Rng;

use crate::error::Result;
use crate::label::{Label, LabelList, ListDistribution};

/// Deterministic core of [`madow_sample`] for a given offset in `[0, 1)`.
pub fn madow_select(dist: &ListDistribution, offset: f64) -> Result<LabelList> {
    let k = dist.k();
    let m = dist.marginals();
    let labels = m.len();
    let offset = offset.clamp(0.0, 1.0 - f64::EPSILON);
    let mut chosen = Vec::with_capacity(k);
    let mut lo = 0.0;
    for (y, &p) in m.iter().enumerate() {
        let hi = if y + 1 == labels { k as f64 } else { lo + p.clamp(0.0, 1.0) };
        let point = offset + chosen.len() as f64;
        if chosen.len() < k && point >= lo && point < hi {
            chosen.push(Label::new(y));
        }
        lo = hi;
    }
    if chosen.len() < k {
        // Only reachable through rounding at interval ends.
        let mut rest: Vec<usize> = (0..labels).filter(|&y| !chosen.contains(&Label::new(y))).collect();
        rest.sort_by(|&a, &b| m[b].total_cmp(&m[a]).then(a.cmp(&b)));
        chosen.extend(rest.into_iter().take(k - chosen.len()).map(Label::new));
    }
    LabelList::new(chosen, labels)
}

/// Draws a `k`-subset whose inclusion probabilities equal `dist`'s marginals.
pub fn madow_sample<R: Rng + ?Sized>(dist: &ListDistribution, rng: &mut R) -> Result<LabelList> {
    madow_select(dist, rng.gen::<f64>())
}
