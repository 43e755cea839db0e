//! One-vs-rest logistic scorer on standardized features, fitted by seeded
//! stochastic gradient descent over a fixed number of epochs.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearModel {
    pub mean: Vec<f64>,
    pub scale: Vec<f64>,
    pub weights: Vec<Vec<f64>>,
    pub bias: Vec<f64>,
}

pub(super) struct Params {
    pub iterations: usize,
    pub learning_rate: f64,
    pub l2: f64,
    pub seed: u64,
}

fn sigmoid(z: f64) -> f64 {
    1.0 / (1.0 + (-z).exp())
}

pub(super) fn fit(
    points: &[Vec<f64>],
    blocks: &[usize],
    n_blocks: usize,
    p: &Params,
) -> LinearModel {
    let dim = points[0].len();
    let n = points.len() as f64;
    let mut mean = vec![0.0; dim];
    for x in points {
        for (m, v) in mean.iter_mut().zip(x) {
            *m += v / n;
        }
    }
    let mut scale = vec![0.0; dim];
    for x in points {
        for ((s, v), m) in scale.iter_mut().zip(x).zip(&mean) {
            *s += (v - m) * (v - m) / n;
        }
    }
    for s in scale.iter_mut() {
        *s = if *s > 0.0 { s.sqrt() } else { 1.0 };
    }
    let standardized: Vec<Vec<f64>> = points
        .iter()
        .map(|x| standardize(x, &mean, &scale))
        .collect();

    let mut weights = vec![vec![0.0; dim]; n_blocks];
    let mut bias = vec![0.0; n_blocks];
    let mut order: Vec<usize> = (0..points.len()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    for _ in 0..p.iterations {
        order.shuffle(&mut rng);
        for &i in &order {
            let x = &standardized[i];
            for b in 0..n_blocks {
                let target = if blocks[i] == b { 1.0 } else { 0.0 };
                let z = dot(&weights[b], x) + bias[b];
                let g = sigmoid(z) - target;
                for (w, xv) in weights[b].iter_mut().zip(x) {
                    *w -= p.learning_rate * (g * xv + p.l2 * *w);
                }
                bias[b] -= p.learning_rate * g;
            }
        }
    }
    LinearModel {
        mean,
        scale,
        weights,
        bias,
    }
}

fn standardize(x: &[f64], mean: &[f64], scale: &[f64]) -> Vec<f64> {
    x.iter()
        .zip(mean)
        .zip(scale)
        .map(|((v, m), s)| (v - m) / s)
        .collect()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl LinearModel {
    pub fn margins(&self, x: &[f64]) -> Vec<f64> {
        let z = standardize(x, &self.mean, &self.scale);
        self.weights
            .iter()
            .zip(&self.bias)
            .map(|(w, b)| dot(w, &z) + b)
            .collect()
    }

    /// Positive margins normalized to sum to one; uniform when none is positive.
    pub fn scores(&self, x: &[f64]) -> Vec<f64> {
        let pos: Vec<f64> = self.margins(x).into_iter().map(|m| m.max(0.0)).collect();
        let total: f64 = pos.iter().sum();
        if total > 0.0 {
            pos.into_iter().map(|p| p / total).collect()
        } else {
            vec![1.0 / pos.len() as f64; pos.len()]
        }
    }
}
