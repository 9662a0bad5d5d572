//! Exact integer linear algebra: Hermite forms with transforms, integer
//! kernels, and integer linear solves. Matrices are small (≤ 10 columns).

/// Row Hermite form with transform: returns (H, U) with H = U·A, U unimodular.
pub fn hnf_transform(a: &[Vec<i64>]) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    let mut h: Vec<Vec<i64>> = a.to_vec();
    let mut u: Vec<Vec<i64>> = (0..m)
        .map(|i| (0..m).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut pivot_row = 0usize;
    for col in 0..n {
        loop {
            let mut idx: Vec<usize> =
                (pivot_row..m).filter(|&i| h[i][col] != 0).collect();
            if idx.len() <= 1 {
                break;
            }
            idx.sort_by_key(|&i| h[i][col].abs());
            let (p, q) = (idx[0], idx[1]);
            let f = h[q][col] / h[p][col];
            for c in 0..n {
                h[q][c] -= f * h[p][c];
            }
            for c in 0..m {
                u[q][c] -= f * u[p][c];
            }
        }
        if let Some(p) = (pivot_row..m).find(|&i| h[i][col] != 0) {
            h.swap(pivot_row, p);
            u.swap(pivot_row, p);
            if h[pivot_row][col] < 0 {
                for c in 0..n {
                    h[pivot_row][c] = -h[pivot_row][c];
                }
                for c in 0..m {
                    u[pivot_row][c] = -u[pivot_row][c];
                }
            }
            let pv = h[pivot_row][col];
            for i in 0..pivot_row {
                let f = h[i][col].div_euclid(pv);
                if f != 0 {
                    for c in 0..n {
                        h[i][c] -= f * h[pivot_row][c];
                    }
                    for c in 0..m {
                        u[i][c] -= f * u[pivot_row][c];
                    }
                }
            }
            pivot_row += 1;
        }
    }
    (h, u)
}

/// Basis of the integer kernel {v ∈ Z^n : A·v = 0} for A with rows `a`.
pub fn kernel_basis(a: &[Vec<i64>], n: usize) -> Vec<Vec<i64>> {
    // rows of A^T are the columns of A; HNF row-reduces them while the
    // transform tracks the combinations: zero rows of H give kernel vectors.
    let m = a.len();
    let at: Vec<Vec<i64>> = (0..n).map(|c| (0..m).map(|r| a[r][c]).collect()).collect();
    let (h, u) = hnf_transform(&at);
    let mut out = Vec::new();
    for (i, row) in h.iter().enumerate() {
        if row.iter().all(|&x| x == 0) {
            out.push(u[i].clone());
        }
    }
    out
}

/// Any integer solution x of A·x = b, or None.
pub fn solve(a: &[Vec<i64>], b: &[i64]) -> Option<Vec<i64>> {
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    if m == 0 {
        return Some(vec![]);
    }
    // Solve y·A^T = b through the row HNF of A^T: H = U·A^T, then back-solve
    // y'·H = b and set x = U^T·y'.
    let at: Vec<Vec<i64>> = (0..n).map(|c| (0..m).map(|r| a[r][c]).collect()).collect();
    let (h, u) = hnf_transform(&at);
    // back-substitute: find y' with y'·H = b (H staircase by rows)
    let mut y = vec![0i64; h.len()];
    let mut b = b.to_vec();
    for (i, row) in h.iter().enumerate() {
        if let Some(pc) = row.iter().position(|&x| x != 0) {
            if b[pc] % row[pc] != 0 {
                return None;
            }
            let f = b[pc] / row[pc];
            y[i] = f;
            for c in 0..m {
                b[c] -= f * row[c];
            }
        }
    }
    if b.iter().any(|&x| x != 0) {
        return None;
    }
    // x = y·U (as row vector): x_j = Σ_i y_i U[i][j]
    let mut x = vec![0i64; n];
    for (i, yi) in y.iter().enumerate() {
        if *yi != 0 {
            for j in 0..n {
                x[j] += yi * u[i][j];
            }
        }
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_simple_matrix() {
        // A = [[1, 2, 3]]: kernel rank 2
        let a = vec![vec![1, 2, 3]];
        let k = kernel_basis(&a, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert_eq!(v[0] + 2 * v[1] + 3 * v[2], 0);
        }
        // saturation: (1, 1, -1) must be expressible
        let target = [1i64, 1, -1];
        // brute force small combinations
        let mut found = false;
        for x in -6i64..=6 {
            for y in -6i64..=6 {
                let v: Vec<i64> =
                    (0..3).map(|c| x * k[0][c] + y * k[1][c]).collect();
                if v == target {
                    found = true;
                }
            }
        }
        assert!(found, "kernel basis must generate the full integer kernel");
    }

    #[test]
    fn solve_exact() {
        let a = vec![vec![2, 0], vec![0, 3]];
        assert_eq!(solve(&a, &[4, 9]), Some(vec![2, 3]));
        assert_eq!(solve(&a, &[1, 0]), None);
        let a2 = vec![vec![2, 3]];
        let x = solve(&a2, &[1]).unwrap();
        assert_eq!(2 * x[0] + 3 * x[1], 1);
    }
}
