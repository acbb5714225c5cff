use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::label::{Label, LabelList};
use crate::learners::ListLearner;

/// Multiclass Perceptron predicting the top `k` labels by `w_y · x`.
///
/// On a mistake the true label's vector moves by `k·x` and each predicted
/// label's vector by `-x`, so `Σ_y ||w_y||²` grows by at most
/// `k(k+1)·||x||²` per mistake.
#[derive(Clone, Debug)]
pub struct ListPerceptron {
    weights: Vec<Vec<f64>>,
    features: usize,
    k: usize,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(u, v)| u * v).sum()
}

impl ListPerceptron {
    pub fn new(features: usize, labels: usize, k: usize) -> Result<Self> {
        if features == 0 {
            return Err(Error::InvalidParameter("feature dimension must be positive".into()));
        }
        if k == 0 || k >= labels {
            return Err(Error::ListSizeOutOfRange { k, labels });
        }
        Ok(ListPerceptron { weights: vec![vec![0.0; features]; labels], features, k })
    }

    pub fn weights(&self) -> &[Vec<f64>] {
        &self.weights
    }

    /// `Σ_y ||w_y||²`.
    pub fn potential(&self) -> f64 {
        self.weights.iter().map(|w| dot(w, w)).sum()
    }

    fn check(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.features {
            return Err(Error::DimensionMismatch { expected: self.features, got: x.len() });
        }
        if x.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("non-finite feature".into()));
        }
        Ok(())
    }

    fn top_k(&self, x: &[f64]) -> LabelList {
        let scores: Vec<f64> = self.weights.iter().map(|w| dot(w, x)).collect();
        let mut order: Vec<usize> = (0..self.weights.len()).collect();
        order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]).then(a.cmp(&b)));
        let mut top: Vec<Label> = order[..self.k].iter().map(|&y| Label::new(y)).collect();
        top.sort_unstable();
        LabelList::from_sorted_unchecked(top)
    }

    /// Predicts, then applies the update if `y` was missed. Returns whether a
    /// mistake occurred.
    pub fn observe(&mut self, x: &[f64], y: Label) -> Result<bool> {
        self.check(x)?;
        if y.index() >= self.weights.len() {
            return Err(Error::LabelOutOfRange { label: y.index(), labels: self.weights.len() });
        }
        let list = self.top_k(x);
        if list.contains(y) {
            return Ok(false);
        }
        let k = self.k as f64;
        for (w, v) in self.weights[y.index()].iter_mut().zip(x) {
            *w += k * v;
        }
        for p in list.iter() {
            for (w, v) in self.weights[p.index()].iter_mut().zip(x) {
                *w -= v;
            }
        }
        Ok(true)
    }
}

impl ListLearner<[f64]> for ListPerceptron {
    fn list_size(&self) -> usize {
        self.k
    }

    fn label_count(&self) -> usize {
        self.weights.len()
    }

    fn predict(&mut self, x: &[f64]) -> Result<LabelList> {
        self.check(x)?;
        Ok(self.top_k(x))
    }

    fn feed(&mut self, x: &[f64], y: Label) -> Result<()> {
        self.observe(x, y).map(|_| ())
    }
}

impl ListLearner<Vec<f64>> for ListPerceptron {
    fn list_size(&self) -> usize {
        self.k
    }

    fn label_count(&self) -> usize {
        self.weights.len()
    }

    fn predict(&mut self, x: &Vec<f64>) -> Result<LabelList> {
        ListLearner::<[f64]>::predict(self, x.as_slice())
    }

    fn feed(&mut self, x: &Vec<f64>, y: Label) -> Result<()> {
        ListLearner::<[f64]>::feed(self, x.as_slice(), y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_weights_predict_first_labels() {
        let mut p = ListPerceptron::new(3, 5, 2).unwrap();
        let l = ListLearner::<[f64]>::predict(&mut p, &[0.3, -1.0, 2.0]).unwrap();
        assert_eq!(l, LabelList::first(2));
    }

    #[test]
    fn binary_update_by_hand() {
        let mut p = ListPerceptron::new(2, 2, 1).unwrap();
        assert!(p.observe(&[1.0, 0.0], Label(1)).unwrap());
        assert_eq!(p.weights()[1], vec![1.0, 0.0]);
        assert_eq!(p.weights()[0], vec![-1.0, 0.0]);
        assert!(!p.observe(&[1.0, 0.0], Label(1)).unwrap());
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let mut p = ListPerceptron::new(2, 3, 1).unwrap();
        assert_eq!(p.observe(&[1.0], Label(0)), Err(Error::DimensionMismatch { expected: 2, got: 1 }));
        assert!(ListPerceptron::new(2, 3, 3).is_err());
    }

    #[test]
    fn potential_growth_bounded_per_mistake() {
        let mut p = ListPerceptron::new(2, 4, 2).unwrap();
        let xs = [[1.0, 0.5], [-0.3, 0.8], [0.9, -0.9], [0.1, 0.1], [-1.0, -0.2]];
        for (t, x) in xs.iter().cycle().take(40).enumerate() {
            let before = p.potential();
            let mistake = p.observe(x, Label::new(t % 4)).unwrap();
            let growth = p.potential() - before;
            let norm2 = x[0] * x[0] + x[1] * x[1];
            if mistake {
                assert!(growth <= 6.0 * norm2 + 1e-9);
            } else {
                assert_eq!(growth, 0.0);
            }
        }
    }
}
