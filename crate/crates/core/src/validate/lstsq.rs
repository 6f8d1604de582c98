//! Small dense least squares through a one-sided Jacobi SVD.

use num_traits::Float;

/// Thin SVD `A = U Σ Vᵀ` of an `m × k` matrix, stored by columns.
#[derive(Debug, Clone)]
pub struct Svd<T> {
    /// Left singular vectors; a column is left unnormalized when its singular value is zero.
    pub u: Vec<Vec<T>>,
    pub singular: Vec<T>,
    pub v: Vec<Vec<T>>,
}

/// Decomposes the row-major matrix `rows` (`m` rows of length `k`).
pub fn jacobi_svd<T: Float>(rows: &[Vec<T>], k: usize) -> Svd<T> {
    let m = rows.len();
    let mut a: Vec<Vec<T>> = (0..k).map(|j| rows.iter().map(|r| r[j]).collect()).collect();
    let mut v: Vec<Vec<T>> = (0..k)
        .map(|j| (0..k).map(|i| if i == j { T::one() } else { T::zero() }).collect())
        .collect();
    let eps = T::epsilon();
    for _sweep in 0..64 {
        let mut rotated = false;
        for i in 0..k {
            for j in i + 1..k {
                let dot = |x: &[T], y: &[T]| x.iter().zip(y).fold(T::zero(), |s, (a, b)| s + *a * *b);
                let alpha = dot(&a[i], &a[i]);
                let beta = dot(&a[j], &a[j]);
                let gamma = dot(&a[i], &a[j]);
                if gamma == T::zero() || gamma.abs() <= eps * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (T::from(2.0).unwrap() * gamma);
                let t = zeta.signum() / (zeta.abs() + (T::one() + zeta * zeta).sqrt());
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = c * t;
                for row in 0..m {
                    let (x, y) = (a[i][row], a[j][row]);
                    a[i][row] = c * x - s * y;
                    a[j][row] = s * x + c * y;
                }
                for row in 0..k {
                    let (x, y) = (v[i][row], v[j][row]);
                    v[i][row] = c * x - s * y;
                    v[j][row] = s * x + c * y;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let singular: Vec<T> = a
        .iter()
        .map(|col| col.iter().fold(T::zero(), |s, x| s + *x * *x).sqrt())
        .collect();
    let u = a
        .into_iter()
        .zip(&singular)
        .map(|(col, &sigma)| {
            if sigma > T::zero() {
                col.into_iter().map(|x| x / sigma).collect()
            } else {
                col
            }
        })
        .collect();
    Svd { u, singular, v }
}

#[derive(Debug, Clone)]
pub struct LeastSquares<T> {
    pub solution: Vec<T>,
    pub rank: usize,
    /// `σ_max / σ_min` over all `k` singular values; infinite when rank-deficient.
    pub condition: T,
    pub residual_norm: T,
}

/// Minimum-norm least-squares solution of `rows · x ≈ rhs`.
///
/// Singular values below `sqrt(ε) · σ_max` count as zero.
pub fn solve<T: Float>(rows: &[Vec<T>], k: usize, rhs: &[T]) -> LeastSquares<T> {
    let svd = jacobi_svd(rows, k);
    let sigma_max = svd.singular.iter().fold(T::zero(), |m, s| m.max(*s));
    let sigma_min = svd.singular.iter().fold(T::infinity(), |m, s| m.min(*s));
    let cutoff = sigma_max * T::epsilon().sqrt();
    let mut x = vec![T::zero(); k];
    let mut rank = 0;
    for j in 0..k {
        let sigma = svd.singular[j];
        if sigma <= cutoff || sigma == T::zero() {
            continue;
        }
        rank += 1;
        let coeff = svd.u[j].iter().zip(rhs).fold(T::zero(), |s, (u, y)| s + *u * *y) / sigma;
        for (xi, vi) in x.iter_mut().zip(&svd.v[j]) {
            *xi = *xi + coeff * *vi;
        }
    }
    let condition = if k == 0 {
        T::one()
    } else if sigma_min <= cutoff {
        T::infinity()
    } else {
        sigma_max / sigma_min
    };
    let residual_norm = rows
        .iter()
        .zip(rhs)
        .map(|(row, y)| row.iter().zip(&x).fold(T::zero(), |s, (a, b)| s + *a * *b) - *y)
        .fold(T::zero(), |s, r| s + r * r)
        .sqrt();
    LeastSquares {
        solution: x,
        rank,
        condition,
        residual_norm,
    }
}
