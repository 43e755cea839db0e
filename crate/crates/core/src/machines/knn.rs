use crate::entropy::l2;

/// Indices of the `k` nearest training points, ties by training order.
fn nearest(points: &[Vec<f64>], x: &[f64], k: usize) -> Vec<(f64, usize)> {
    let mut d: Vec<(f64, usize)> = points
        .iter()
        .enumerate()
        .map(|(i, p)| (l2(p, x), i))
        .collect();
    d.sort_by(|a, b| a.0.total_cmp(&b.0));
    d.truncate(k);
    d
}

/// Inverse-distance weighted vote share per block.
pub(super) fn scores(
    points: &[Vec<f64>],
    blocks: &[usize],
    n_blocks: usize,
    k: usize,
    floor: f64,
    x: &[f64],
) -> Vec<f64> {
    let mut votes = vec![0.0; n_blocks];
    for (d, i) in nearest(points, x, k) {
        votes[blocks[i]] += 1.0 / d.max(floor);
    }
    let total: f64 = votes.iter().sum();
    votes.into_iter().map(|v| v / total).collect()
}

/// Mean distance to the `k` nearest training members of each block.
pub(super) fn block_mean_distances(
    points: &[Vec<f64>],
    blocks: &[usize],
    n_blocks: usize,
    k: usize,
    x: &[f64],
) -> Vec<f64> {
    let mut per_block: Vec<Vec<f64>> = vec![Vec::new(); n_blocks];
    for (p, &b) in points.iter().zip(blocks) {
        per_block[b].push(l2(p, x));
    }
    per_block
        .into_iter()
        .map(|mut d| {
            d.sort_by(f64::total_cmp);
            d.truncate(k);
            d.iter().sum::<f64>() / d.len() as f64
        })
        .collect()
}
