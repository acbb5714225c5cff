//! Linearly separable multiclass data with a certified list margin.
//!
//! The `k`'th margin of a point is the score gap between its label and the
//! label ranked `k+1` when labels are sorted by score with the true label
//! first. So `k = 1` is the usual multiclass margin, and margins grow with `k`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::label::Label;
use crate::TOLERANCE;

/// One labelled feature vector.
pub type VectorExample = (Vec<f64>, Label);

/// Separating vectors `w*_y` with `Σ ||w*_y||² = 1` and a margin they certify.
#[derive(Clone, Debug, PartialEq)]
pub struct SeparatorCertificate {
    pub w: Vec<Vec<f64>>,
    pub gamma: f64,
    pub k: usize,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(u, v)| u * v).sum()
}

/// Score gaps `w*_y·x - w*_{y'}·x` to every other label, ascending.
fn gaps(w: &[Vec<f64>], x: &[f64], y: Label) -> Vec<f64> {
    let own = dot(&w[y.index()], x);
    let mut g: Vec<f64> = w.iter().enumerate().filter(|(z, _)| *z != y.index()).map(|(_, wz)| own - dot(wz, x)).collect();
    g.sort_by(f64::total_cmp);
    g
}

/// The `k`'th margin of one example: its `k`-th smallest gap.
pub fn point_margin(w: &[Vec<f64>], x: &[f64], y: Label, k: usize) -> f64 {
    gaps(w, x, y).get(k - 1).copied().unwrap_or(f64::INFINITY)
}

/// Smallest `k`'th margin over the data; `+∞` when there is no data.
pub fn achieved_margin(data: &[VectorExample], w: &[Vec<f64>], k: usize) -> f64 {
    data.iter().map(|(x, y)| point_margin(w, x, *y, k)).fold(f64::INFINITY, f64::min)
}

fn gaussian_vector<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Vec<f64> {
    (0..dim).map(|_| rng.sample::<f64, _>(StandardNormal)).collect()
}

fn norm(v: &[f64]) -> f64 {
    libm::sqrt(dot(v, v))
}

/// Uniform draw from the radius-`r` ball in `dim` dimensions.
fn ball_point<R: Rng + ?Sized>(dim: usize, r: f64, rng: &mut R) -> Vec<f64> {
    loop {
        let g = gaussian_vector(dim, rng);
        let n = norm(&g);
        if n > 0.0 {
            let scale = r * libm::pow(rng.gen::<f64>(), 1.0 / dim as f64) / n;
            return g.into_iter().map(|v| v * scale).collect();
        }
    }
}

/// Draws `L` random separator directions scaled to unit total energy, then
/// rejection-samples points of norm at most `R` until `T` of them have a
/// `k`'th margin of at least `gamma_target` and a unique top label.
pub fn generate_separable<R: Rng + ?Sized>(
    features: usize,
    labels: usize,
    k: usize,
    horizon: usize,
    gamma_target: f64,
    radius: f64,
    rng: &mut R,
) -> Result<(Vec<VectorExample>, SeparatorCertificate)> {
    if labels < k + 1 || k == 0 {
        return Err(Error::ListSizeOutOfRange { k, labels });
    }
    if features < 2 {
        return Err(Error::InvalidParameter("feature dimension must be at least 2".into()));
    }
    if !(gamma_target > 0.0 && radius > 0.0) {
        return Err(Error::InvalidParameter("margin target and radius must be positive".into()));
    }
    let share = 1.0 / libm::sqrt(labels as f64);
    let w: Vec<Vec<f64>> = (0..labels)
        .map(|_| loop {
            let g = gaussian_vector(features, rng);
            let n = norm(&g);
            if n > 0.0 {
                break g.into_iter().map(|v| v * share / n).collect();
            }
        })
        .collect();

    let budget = 1000 * horizon;
    let mut data = Vec::with_capacity(horizon);
    let mut attempts = 0;
    while data.len() < horizon {
        if attempts == budget {
            return Err(Error::BudgetExceeded(format!(
                "accepted {} of {attempts} points (rate {:.4}) for margin {gamma_target}",
                data.len(),
                data.len() as f64 / attempts as f64
            )));
        }
        attempts += 1;
        let x = ball_point(features, radius, rng);
        let scores: Vec<f64> = w.iter().map(|wy| dot(wy, &x)).collect();
        let y = (0..labels).fold(0, |best, z| if scores[z] > scores[best] { z } else { best });
        let g = gaps(&w, &x, Label::new(y));
        if g[0] > 0.0 && g[k - 1] >= gamma_target {
            data.push((x, Label::new(y)));
        }
    }
    let gamma = if data.is_empty() { gamma_target } else { achieved_margin(&data, &w, k) };
    Ok((data, SeparatorCertificate { w, gamma, k }))
}

/// Checks normalization, strict separation and the certified margin. Returns
/// the verdict and the largest margin the vectors support on this data.
pub fn verify_certificate(data: &[VectorExample], cert: &SeparatorCertificate, k: usize) -> (bool, f64) {
    let labels = cert.w.len();
    let features = cert.w.first().map_or(0, |v| v.len());
    let shapes_ok = k >= 1
        && k < labels
        && cert.w.iter().all(|v| v.len() == features)
        && data.iter().all(|(x, y)| x.len() == features && y.index() < labels);
    if !shapes_ok {
        return (false, 0.0);
    }
    let energy: f64 = cert.w.iter().map(|v| dot(v, v)).sum();
    if (energy - 1.0).abs() > TOLERANCE {
        return (false, 0.0);
    }
    if data.is_empty() {
        return (true, cert.gamma);
    }
    let strict = data.iter().all(|(x, y)| point_margin(&cert.w, x, *y, 1) > 0.0);
    let achieved = achieved_margin(data, &cert.w, k);
    (strict && achieved >= cert.gamma - TOLERANCE, achieved)
}

/// Euclidean norm bound of the data.
pub fn radius_of(data: &[VectorExample]) -> f64 {
    data.iter().map(|(x, _)| norm(x)).fold(0.0, f64::max)
}

/// Zero separator, which can never certify anything.
pub fn zero_certificate(features: usize, labels: usize, k: usize) -> SeparatorCertificate {
    SeparatorCertificate { w: vec![vec![0.0; features]; labels], gamma: 0.0, k }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn hand_computed_gap() {
        let s = 1.0 / libm::sqrt(2.0);
        let cert = SeparatorCertificate { w: vec![vec![s, 0.0], vec![-s, 0.0]], gamma: 1.4, k: 1 };
        let data = vec![(vec![1.0, 0.0], Label(0))];
        let (ok, g) = verify_certificate(&data, &cert, 1);
        assert!(ok);
        assert!((g - 2.0_f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn empty_data_any_certificate() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let (data, cert) = generate_separable(2, 3, 1, 0, 0.1, 1.0, &mut rng).unwrap();
        assert!(data.is_empty());
        assert!(verify_certificate(&data, &cert, 1).0);
    }

    #[test]
    fn generated_round_trip_and_monotone_margins() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let (data, cert) = generate_separable(3, 5, 2, 300, 0.05, 1.0, &mut rng).unwrap();
        let (ok, g) = verify_certificate(&data, &cert, 2);
        assert!(ok && g >= 0.05);
        let margins: Vec<f64> = (1..5).map(|k| achieved_margin(&data, &cert.w, k)).collect();
        assert!(margins.windows(2).all(|m| m[0] <= m[1]));
    }

    #[test]
    fn zeroed_certificate_fails() {
        let data = vec![(vec![1.0, 0.0], Label(0))];
        assert!(!verify_certificate(&data, &zero_certificate(2, 2, 1), 1).0);
    }
}
