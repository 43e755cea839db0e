use crate::entropy::l2;

/// Mean of each block's training points.
pub(super) fn fit(points: &[Vec<f64>], blocks: &[usize], n_blocks: usize) -> Vec<Vec<f64>> {
    let dim = points[0].len();
    let mut sums = vec![vec![0.0; dim]; n_blocks];
    let mut counts = vec![0usize; n_blocks];
    for (p, &b) in points.iter().zip(blocks) {
        counts[b] += 1;
        for (s, x) in sums[b].iter_mut().zip(p) {
            *s += x;
        }
    }
    for (s, &c) in sums.iter_mut().zip(&counts) {
        for v in s.iter_mut() {
            *v /= c as f64;
        }
    }
    sums
}

pub(super) fn distances(centroids: &[Vec<f64>], x: &[f64]) -> Vec<f64> {
    centroids.iter().map(|c| l2(c, x)).collect()
}

/// Softmin over centroid distances.
pub(super) fn scores(centroids: &[Vec<f64>], x: &[f64]) -> Vec<f64> {
    let d = distances(centroids, x);
    let min = d.iter().copied().fold(f64::INFINITY, f64::min);
    let w: Vec<f64> = d.iter().map(|di| (-(di - min)).exp()).collect();
    let total: f64 = w.iter().sum();
    w.into_iter().map(|wi| wi / total).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn centroids_are_block_means() {
        let pts = vec![vec![0.0, 0.0], vec![0.0, 2.0], vec![10.0, 0.0]];
        let c = fit(&pts, &[0, 0, 1], 2);
        assert_eq!(c, vec![vec![0.0, 1.0], vec![10.0, 0.0]]);
    }

    #[test]
    fn equidistant_softmin_is_even() {
        let c = vec![vec![-1.0], vec![1.0]];
        assert_eq!(scores(&c, &[0.0]), vec![0.5, 0.5]);
    }
}
