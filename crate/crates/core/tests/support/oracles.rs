//! Deliberately naive reference implementations. These must not call into
//! the library's correlation or ordering code.

/// Pearson correlation by a direct double loop, one pair at a time: mean
/// pass, then centered sums. A column whose values are all equal correlates
/// 0 with everything, itself included.
pub fn pearson(rows: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let m = rows.len();
    let n = rows[0].len();
    let col = |j: usize| -> Vec<f64> { rows.iter().map(|r| r[j]).collect() };
    let constant = |c: &[f64]| c.iter().all(|&v| v == c[0]);
    let mut out = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let (x, y) = (col(i), col(j));
            if constant(&x) || constant(&y) {
                continue;
            }
            let mx = x.iter().sum::<f64>() / m as f64;
            let my = y.iter().sum::<f64>() / m as f64;
            let mut sxy = 0.0;
            let mut sxx = 0.0;
            let mut syy = 0.0;
            for k in 0..m {
                sxy += (x[k] - mx) * (y[k] - my);
                sxx += (x[k] - mx) * (x[k] - mx);
                syy += (y[k] - my) * (y[k] - my);
            }
            // Sample (n - 1) moments, as in the library.
            let cov = sxy / (m as f64 - 1.0);
            let sx = (sxx / (m as f64 - 1.0)).sqrt();
            let sy = (syy / (m as f64 - 1.0)).sqrt();
            out[i][j] = cov / (sx * sy);
        }
    }
    out
}

/// Step-by-step replay of the greedy correlation chain with full scans.
pub fn sdic_replay(c: &[Vec<f64>]) -> Vec<usize> {
    let n = c.len();
    let mut used = vec![false; n];
    let mut out = Vec::new();
    loop {
        let unused: Vec<usize> = (0..n).filter(|&k| !used[k]).collect();
        if unused.is_empty() {
            break;
        }
        if unused.len() == 1 {
            out.push(unused[0]);
            break;
        }
        // Largest signed entry over unused pairs; the first one found in
        // (i, j) lexicographic order wins ties.
        let mut best: Option<(usize, usize)> = None;
        for &i in &unused {
            for &j in &unused {
                if j <= i {
                    continue;
                }
                match best {
                    None => best = Some((i, j)),
                    Some((bi, bj)) if c[i][j] > c[bi][bj] => best = Some((i, j)),
                    _ => {}
                }
            }
        }
        let (i, j) = best.unwrap();
        used[i] = true;
        used[j] = true;
        out.push(i);
        out.push(j);
        let mut last = j;
        loop {
            let mut pick: Option<usize> = None;
            for k in 0..n {
                if used[k] {
                    continue;
                }
                if pick.is_none_or(|p| c[last][k] > c[last][p]) {
                    pick = Some(k);
                }
            }
            match pick {
                Some(k) if c[last][k] > 0.0 => {
                    used[k] = true;
                    out.push(k);
                    last = k;
                }
                _ => break,
            }
        }
    }
    out
}

/// Random symmetric matrix with unit diagonal and entries on a coarse grid
/// (so ties occur), drawn from `rng`.
pub fn random_symmetric(n: usize, rng: &mut impl rand::Rng) -> Vec<Vec<f64>> {
    let mut c = vec![vec![0.0; n]; n];
    for i in 0..n {
        c[i][i] = 1.0;
        for j in i + 1..n {
            let v = if rng.random_bool(0.3) {
                f64::from(rng.random_range(-4i32..=4)) / 4.0
            } else {
                rng.random_range(-1.0..=1.0)
            };
            c[i][j] = v;
            c[j][i] = v;
        }
    }
    c
}
