//! Brute-force oracles over plain matrices. Nothing here calls into the
//! library's numerics, so agreement with it is evidence rather than echo.

#![allow(dead_code)]

pub type Mat = Vec<Vec<f64>>;

/// `inner` applied first: `r[x][y] = Σ_k inner[x][k] · outer[k][y]`.
pub fn compose(outer: &Mat, inner: &Mat) -> Mat {
    inner
        .iter()
        .map(|irow| {
            (0..outer[0].len())
                .map(|y| irow.iter().zip(outer).map(|(a, orow)| a * orow[y]).sum())
                .collect()
        })
        .collect()
}

pub fn tv(a: &[f64], b: &[f64]) -> f64 {
    0.5 * a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum::<f64>()
}

/// Largest row-wise total variation distance.
pub fn row_distance(a: &Mat, b: &Mat) -> f64 {
    a.iter().zip(b).map(|(r, s)| tv(r, s)).fold(0.0, f64::max)
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `max_x <l, W_x>`.
pub fn best_response(l: &[f64], w: &Mat) -> f64 {
    w.iter().map(|row| dot(l, row)).fold(f64::NEG_INFINITY, f64::max)
}

/// Mean over contexts of the best single-input payoff.
pub fn optimal_average(payoff: &Mat, w: &Mat) -> f64 {
    payoff.iter().map(|l| best_response(l, w)).sum::<f64>() / payoff.len() as f64
}

/// All length-`n` tuples over `0..base`, first coordinate slowest.
pub fn tuples(base: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..base).map(move |s| {
                    let mut t = t.clone();
                    t.push(s);
                    t
                })
            })
            .collect();
    }
    out
}

fn likelihood(w: &Mat, x: &[usize], y: &[usize]) -> f64 {
    x.iter().zip(y).map(|(&a, &b)| w[a][b]).product()
}

/// Decoder error probability with the best codeword chosen per message:
/// `1 - (1/M) Σ_m max_x Σ_{y: D(y)=m} W^n(y|x)`.
pub fn pe_decoder(w: &Mat, n: usize, messages: usize, decode: impl Fn(&[usize]) -> usize) -> f64 {
    let ys = tuples(w[0].len(), n);
    let xs = tuples(w.len(), n);
    let decisions: Vec<usize> = ys.iter().map(|y| decode(y)).collect();
    let mut success = 0.0;
    for m in 0..messages {
        let best = xs
            .iter()
            .map(|x| {
                ys.iter()
                    .zip(&decisions)
                    .filter(|(_, &d)| d == m)
                    .map(|(y, _)| likelihood(w, x, y))
                    .sum::<f64>()
            })
            .fold(0.0, f64::max);
        success += best;
    }
    1.0 - success / messages as f64
}

/// `Σ_u p(u) max_x Σ_y W(y|x) D(u|y)`, with `d[y][u]`.
pub fn pc(p: &[f64], w: &Mat, d: &Mat) -> f64 {
    p.iter()
        .enumerate()
        .map(|(u, pu)| {
            pu * w
                .iter()
                .map(|row| row.iter().zip(d).map(|(wy, drow)| wy * drow[u]).sum::<f64>())
                .fold(f64::NEG_INFINITY, f64::max)
        })
        .sum()
}

/// Capacity of the binary symmetric channel in nats.
pub fn bsc_capacity(p: f64) -> f64 {
    let h = |t: f64| if t > 0.0 { -t * t.ln() } else { 0.0 };
    std::f64::consts::LN_2 - h(p) - h(1.0 - p)
}

/// Hausdorff distance between the row hulls of two binary-output channels,
/// which are intervals of the first coordinate.
pub fn interval_hausdorff(a: &Mat, b: &Mat) -> f64 {
    let span = |m: &Mat| {
        let lo = m.iter().map(|r| r[0]).fold(f64::INFINITY, f64::min);
        let hi = m.iter().map(|r| r[0]).fold(f64::NEG_INFINITY, f64::max);
        (lo, hi)
    };
    let (l1, h1) = span(a);
    let (l2, h2) = span(b);
    (l1 - l2).abs().max((h1 - h2).abs())
}

/// Weight vectors on the `k`-simplex whose entries are multiples of
/// `1/steps`.
pub fn weight_grid(k: usize, steps: usize) -> Vec<Vec<f64>> {
    fn go(k: usize, left: usize, steps: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<f64>>) {
        if k == 1 {
            prefix.push(left);
            out.push(prefix.iter().map(|&c| c as f64 / steps as f64).collect());
            prefix.pop();
            return;
        }
        for c in 0..=left {
            prefix.push(c);
            go(k - 1, left - c, steps, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(k, steps, steps, &mut Vec::new(), &mut out);
    out
}

/// Points of the row hull obtained from a weight grid.
pub fn hull_samples(rows: &Mat, steps: usize) -> Mat {
    weight_grid(rows.len(), steps)
        .into_iter()
        .map(|w| {
            (0..rows[0].len())
                .map(|y| w.iter().zip(rows).map(|(a, r)| a * r[y]).sum())
                .collect()
        })
        .collect()
}

/// Hausdorff distance in total variation between two finite point sets.
pub fn sampled_hausdorff(a: &Mat, b: &Mat) -> f64 {
    let directed = |from: &Mat, to: &Mat| {
        from.iter()
            .map(|p| to.iter().map(|q| tv(p, q)).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max)
    };
    directed(a, b).max(directed(b, a))
}

/// `Σ_i weights[i] · gens[i]`.
pub fn combine(weights: &[f64], gens: &Mat) -> Vec<f64> {
    (0..gens[0].len())
        .map(|y| weights.iter().zip(gens).map(|(a, g)| a * g[y]).sum())
        .collect()
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

