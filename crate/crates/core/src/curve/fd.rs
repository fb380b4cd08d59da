//! Finite-difference stencils of accuracy order 2.

use std::ops::{Add, Mul};

use crate::error::{Error, Result};

/// Fornberg's recursion: weights of the `order`-th derivative at 0 for the
/// given node offsets.
pub fn stencil_weights(nodes: &[f64], order: usize) -> Vec<f64> {
    let n = nodes.len();
    assert!(n > order, "need more nodes than the derivative order");
    let mut c = vec![vec![0.0; order + 1]; n];
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    let mut c4 = nodes[0];
    for i in 1..n {
        let mn = i.min(order);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = nodes[i];
        for j in 0..i {
            let c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[i][k] = c1 * (k as f64 * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for k in (1..=mn).rev() {
                c[j][k] = (c4 * c[j][k] - k as f64 * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    c.into_iter().map(|row| row[order]).collect()
}

fn central_nodes(order: usize) -> &'static [f64] {
    match order {
        1 | 2 => &[-1.0, 0.0, 1.0],
        _ => &[-2.0, -1.0, 1.0, 2.0],
    }
}

fn forward_nodes(order: usize) -> &'static [f64] {
    match order {
        1 => &[0.0, 1.0, 2.0],
        2 => &[0.0, 1.0, 2.0, 3.0],
        _ => &[0.0, 1.0, 2.0, 3.0, 4.0],
    }
}

/// Second-order accurate derivative of `f` at `t`, keeping every node inside
/// `[lo, hi]`. Centered where it fits, one-sided within reach of either end.
pub fn derivative<V, F>(mut f: F, t: f64, order: usize, h: f64, lo: f64, hi: f64) -> Result<V>
where
    V: Copy + Add<Output = V> + Mul<f64, Output = V>,
    F: FnMut(f64) -> Result<V>,
{
    if !(1..=3).contains(&order) {
        return Err(Error::UnsupportedOrder(order));
    }
    let central = central_nodes(order);
    let reach = central[central.len() - 1];
    let nodes: Vec<f64> = if t - reach * h >= lo && t + reach * h <= hi {
        central.to_vec()
    } else {
        let forward = forward_nodes(order);
        let span = forward[forward.len() - 1] * h;
        let fits_forward = t + span <= hi;
        let fits_backward = t - span >= lo;
        let near_lo = t - lo < hi - t;
        if fits_forward && (near_lo || !fits_backward) {
            forward.to_vec()
        } else if fits_backward {
            forward.iter().map(|x| -x).collect()
        } else {
            return Err(Error::StencilOutOfDomain { t, h });
        }
    };
    let weights = stencil_weights(&nodes, order);
    let scale = h.powi(order as i32);
    let mut acc: Option<V> = None;
    for (&x, &w) in nodes.iter().zip(&weights) {
        if w == 0.0 {
            continue;
        }
        let node = if x == 0.0 { t } else { (t + x * h).clamp(lo, hi) };
        let term = f(node)? * (w / scale);
        acc = Some(match acc {
            Some(a) => a + term,
            None => term,
        });
    }
    Ok(acc.expect("stencil has non-zero weights"))
}
