use serde::{Deserialize, Serialize};

/// Rare-class-positive binary metrics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    pub accuracy: f64,
    pub precision: f64,
    pub sensitivity: f64,
    pub f1: f64,
    pub true_positives: usize,
    pub false_positives: usize,
    pub false_negatives: usize,
    pub true_negatives: usize,
    /// Set when nothing was predicted rare; precision is then reported as 0.
    pub no_positive_predictions: bool,
}

impl Metrics {
    /// `truth[i]` / `predicted[i]`: whether instance `i` is (predicted) rare.
    pub fn from_flags(truth: &[bool], predicted: &[bool]) -> Self {
        debug_assert_eq!(truth.len(), predicted.len());
        let (mut tp, mut fp, mut fn_, mut tn) = (0, 0, 0, 0);
        for (&t, &p) in truth.iter().zip(predicted) {
            match (t, p) {
                (true, true) => tp += 1,
                (false, true) => fp += 1,
                (true, false) => fn_ += 1,
                (false, false) => tn += 1,
            }
        }
        Self::from_counts(tp, fp, fn_, tn)
    }

    pub fn from_counts(tp: usize, fp: usize, fn_: usize, tn: usize) -> Self {
        let ratio = |a: usize, b: usize| if b == 0 { 0.0 } else { a as f64 / b as f64 };
        let precision = ratio(tp, tp + fp);
        let sensitivity = ratio(tp, tp + fn_);
        let f1 = if precision + sensitivity > 0.0 {
            2.0 * precision * sensitivity / (precision + sensitivity)
        } else {
            0.0
        };
        Self {
            accuracy: ratio(tp + tn, tp + fp + fn_ + tn),
            precision,
            sensitivity,
            f1,
            true_positives: tp,
            false_positives: fp,
            false_negatives: fn_,
            true_negatives: tn,
            no_positive_predictions: tp + fp == 0,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perfect() {
        let m = Metrics::from_flags(&[true, false, false], &[true, false, false]);
        assert_eq!(
            (m.accuracy, m.precision, m.sensitivity, m.f1),
            (1.0, 1.0, 1.0, 1.0)
        );
    }

    #[test]
    fn nothing_predicted_rare() {
        let m = Metrics::from_flags(&[true, false, true], &[false, false, false]);
        assert_eq!((m.precision, m.sensitivity, m.f1), (0.0, 0.0, 0.0));
        assert!(m.no_positive_predictions);
    }

    #[test]
    fn two_thirds() {
        let m = Metrics::from_counts(2, 1, 1, 6);
        assert!((m.precision - 2.0 / 3.0).abs() < 1e-15);
        assert!((m.sensitivity - 2.0 / 3.0).abs() < 1e-15);
        assert!((m.f1 - 2.0 / 3.0).abs() < 1e-15);
        assert!((m.accuracy - 0.8).abs() < 1e-15);
    }
}
