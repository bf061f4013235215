//! Rectangular maximum-weight assignment (Hungarian method, potentials form).

/// Maximum total weight when each of the `rows` rows takes a distinct column,
/// and the (0-based) columns that achieve it. `weights` is row-major
/// `rows x cols` with `rows <= cols`.
pub(crate) fn max_weight_assignment(weights: &[f64], rows: usize, cols: usize) -> (f64, Vec<usize>) {
    debug_assert!(rows <= cols);
    debug_assert_eq!(weights.len(), rows * cols);
    if rows == 0 {
        return (0.0, Vec::new());
    }
    let cost = |i: usize, j: usize| -weights[(i - 1) * cols + (j - 1)];
    // 1-based; column 0 is the virtual start
    let mut u = vec![0.0; rows + 1];
    let mut v = vec![0.0; cols + 1];
    let mut owner = vec![0usize; cols + 1];
    let mut way = vec![0usize; cols + 1];
    let mut minv = vec![0.0; cols + 1];
    let mut used = vec![false; cols + 1];
    for i in 1..=rows {
        owner[0] = i;
        let mut j0 = 0;
        minv.fill(f64::INFINITY);
        used.fill(false);
        loop {
            used[j0] = true;
            let i0 = owner[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0;
            for j in 1..=cols {
                if !used[j] {
                    let cur = cost(i0, j) - u[i0] - v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if minv[j] < delta {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            }
            for j in 0..=cols {
                if used[j] {
                    u[owner[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if owner[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            owner[j0] = owner[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let chosen: Vec<usize> = (1..=cols).filter(|&j| owner[j] != 0).collect();
    let total = chosen.iter().map(|&j| -cost(owner[j], j)).sum();
    (total, chosen.into_iter().map(|j| j - 1).collect())
}
