//! Small dense square matrices over a [`Scalar`] backend. Everything here is
//! desk-scale (|S| x |S|), so the implementations favor exactness and
//! clarity over asymptotics.

use crate::scalar::Scalar;

#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Scalar> std::fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.n)
            .map(|i| (0..self.n).map(|j| self[(i, j)].to_string()).collect())
            .collect();
        write!(f, "{rows:?}")
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.n + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.n + j]
    }
}

impl<T: Scalar> Matrix<T> {
    pub fn zero(n: usize) -> Self {
        Matrix { n, data: vec![T::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "square matrix required");
        Matrix { n, data: rows.into_iter().flatten().collect() }
    }

    /// Convenience for integer-entried golden matrices.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter().map(|r| r.iter().map(|&v| T::from_i64(v)).collect()).collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        (0..self.n).map(|i| (0..self.n).map(|j| self[(i, j)].clone()).collect()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                m[(j, i)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut m = self.clone();
        for (a, b) in m.data.iter_mut().zip(&other.data) {
            *a = a.clone() + b.clone();
        }
        m
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut m = self.clone();
        for (a, b) in m.data.iter_mut().zip(&other.data) {
            *a = a.clone() - b.clone();
        }
        m
    }

    pub fn neg(&self) -> Self {
        let mut m = self.clone();
        for a in m.data.iter_mut() {
            *a = -a.clone();
        }
        m
    }

    pub fn scale(&self, s: &T) -> Self {
        let mut m = self.clone();
        for a in m.data.iter_mut() {
            *a = a.clone() * s.clone();
        }
        m
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut m = Self::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                let mut acc = T::zero();
                for k in 0..self.n {
                    acc = acc + self[(i, k)].clone() * other[(k, j)].clone();
                }
                m[(i, j)] = acc;
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.n, v.len());
        (0..self.n)
            .map(|i| {
                let mut acc = T::zero();
                for k in 0..self.n {
                    acc = acc + self[(i, k)].clone() * v[k].clone();
                }
                acc
            })
            .collect()
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.n).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn set_col(&mut self, j: usize, v: &[T]) {
        assert_eq!(self.n, v.len());
        for i in 0..self.n {
            self[(i, j)] = v[i].clone();
        }
    }

    /// Congruence transform `a^T self a`.
    pub fn congruence(&self, a: &Self) -> Self {
        a.transpose().mul(&self.mul(a))
    }

    pub fn is_symmetric(&self) -> bool {
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if self[(i, j)] != self[(j, i)] {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    /// Largest entry magnitude, as `f64`; used for residual reporting.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|v| v.to_f64().abs()).fold(0.0, f64::max)
    }

    pub fn is_negligible(&self) -> bool {
        self.data.iter().all(|v| v.is_negligible())
    }

    pub fn det(&self) -> T {
        // Fraction-free would be nicer for BigRational, but these are 2x2/3x3.
        let mut a = self.clone();
        let n = self.n;
        let mut det = T::one();
        for c in 0..n {
            let pivot = match (c..n).find(|&r| !a[(r, c)].is_zero()) {
                Some(p) => p,
                None => return T::zero(),
            };
            if pivot != c {
                for j in 0..n {
                    let tmp = a[(pivot, j)].clone();
                    a[(pivot, j)] = a[(c, j)].clone();
                    a[(c, j)] = tmp;
                }
                det = -det;
            }
            det = det * a[(c, c)].clone();
            let inv = T::one() / a[(c, c)].clone();
            for r in (c + 1)..n {
                let factor = a[(r, c)].clone() * inv.clone();
                for j in c..n {
                    a[(r, j)] = a[(r, j)].clone() - factor.clone() * a[(c, j)].clone();
                }
            }
        }
        det
    }

    /// Gauss-Jordan inverse; `None` when singular. Partial pivoting by
    /// magnitude on the float backend, first nonzero pivot on the exact one.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for c in 0..n {
            let pivot = if T::is_exact() {
                (c..n).find(|&r| !a[(r, c)].is_zero())?
            } else {
                let p = (c..n)
                    .max_by(|&x, &y| {
                        a[(x, c)].to_f64().abs().total_cmp(&a[(y, c)].to_f64().abs())
                    })?;
                if a[(p, c)].is_negligible() {
                    return None;
                }
                p
            };
            if pivot != c {
                for j in 0..n {
                    let tmp = a[(pivot, j)].clone();
                    a[(pivot, j)] = a[(c, j)].clone();
                    a[(c, j)] = tmp;
                    let tmp = inv[(pivot, j)].clone();
                    inv[(pivot, j)] = inv[(c, j)].clone();
                    inv[(c, j)] = tmp;
                }
            }
            let scale = T::one() / a[(c, c)].clone();
            for j in 0..n {
                a[(c, j)] = a[(c, j)].clone() * scale.clone();
                inv[(c, j)] = inv[(c, j)].clone() * scale.clone();
            }
            for r in 0..n {
                if r != c && !a[(r, c)].is_zero() {
                    let factor = a[(r, c)].clone();
                    for j in 0..n {
                        a[(r, j)] = a[(r, j)].clone() - factor.clone() * a[(c, j)].clone();
                        inv[(r, j)] = inv[(r, j)].clone() - factor.clone() * inv[(c, j)].clone();
                    }
                }
            }
        }
        Some(inv)
    }

    /// Signature `(n_plus, n_minus)` of a symmetric invertible matrix.
    ///
    /// Exact backend: pivoted LDL^T-style sign counting (with the 2x2
    /// hyperbolic block when the remaining diagonal vanishes). Float
    /// backend: Jacobi eigenvalue iteration, `|lambda| <= FLOAT_TOL`
    /// reported as singular.
    pub fn signature(&self) -> Result<(usize, usize), String> {
        if !self.is_symmetric() {
            return Err("matrix is not symmetric".into());
        }
        if T::is_exact() {
            signature_exact(self)
        } else {
            let eig = jacobi_eigenvalues(self);
            let mut plus = 0;
            let mut minus = 0;
            for l in eig {
                if l.abs() <= crate::scalar::FLOAT_TOL {
                    return Err("matrix is singular".into());
                } else if l > 0.0 {
                    plus += 1;
                } else {
                    minus += 1;
                }
            }
            Ok((plus, minus))
        }
    }
}

fn signature_exact<T: Scalar>(m: &Matrix<T>) -> Result<(usize, usize), String> {
    let n = m.dim();
    let mut a = m.clone();
    let mut live: Vec<usize> = (0..n).collect();
    let mut plus = 0;
    let mut minus = 0;
    while !live.is_empty() {
        if let Some(pos) = live.iter().position(|&i| !a[(i, i)].is_zero()) {
            let p = live[pos];
            let d = a[(p, p)].clone();
            if d.is_positive() {
                plus += 1;
            } else {
                minus += 1;
            }
            live.remove(pos);
            // Schur complement of the 1x1 pivot.
            for &r in &live {
                for &c in &live {
                    let delta = a[(r, p)].clone() * a[(p, c)].clone() / d.clone();
                    a[(r, c)] = a[(r, c)].clone() - delta;
                }
            }
        } else {
            // Whole remaining diagonal vanishes: find an off-diagonal entry.
            let mut found = None;
            'outer: for (ri, &r) in live.iter().enumerate() {
                for (ci, &c) in live.iter().enumerate().skip(ri + 1) {
                    if !a[(r, c)].is_zero() {
                        found = Some((ri, ci));
                        break 'outer;
                    }
                }
            }
            let (ri, ci) = found.ok_or_else(|| "matrix is singular".to_string())?;
            let (r, c) = (live[ri], live[ci]);
            // [[0, b], [b, 0]] block carries signature (+1, -1).
            plus += 1;
            minus += 1;
            let b = a[(r, c)].clone();
            live.remove(ci);
            live.remove(ri);
            // Block Schur complement: A' = A - X B^{-1} X^T with
            // B = [[0, b], [b, 0]], B^{-1} = [[0, 1/b], [1/b, 0]].
            let binv = T::one() / b;
            for &x in &live {
                for &y in &live {
                    let xr = a[(x, r)].clone();
                    let xc = a[(x, c)].clone();
                    let ry = a[(r, y)].clone();
                    let cy = a[(c, y)].clone();
                    let delta = binv.clone() * (xr * cy + xc * ry);
                    a[(x, y)] = a[(x, y)].clone() - delta;
                }
            }
        }
    }
    Ok((plus, minus))
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
fn jacobi_eigenvalues<T: Scalar>(m: &Matrix<T>) -> Vec<f64> {
    jacobi_symmetric(m).0
}

/// Eigenvalues and eigenvectors (as columns of the returned matrix) of a
/// symmetric matrix, computed by cyclic Jacobi rotations. Deterministic.
pub fn jacobi_symmetric<T: Scalar>(m: &Matrix<T>) -> (Vec<f64>, Matrix<f64>) {
    let n = m.dim();
    let mut a = vec![vec![0.0f64; n]; n];
    for i in 0..n {
        for j in 0..n {
            a[i][j] = m[(i, j)].to_f64();
        }
    }
    let mut q = Matrix::<f64>::identity(n);
    for _sweep in 0..100 {
        let mut off = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                off += a[i][j] * a[i][j];
            }
        }
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for r in (p + 1)..n {
                if a[p][r].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[r][r] - a[p][p]) / (2.0 * a[p][r]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akr = a[k][r];
                    a[k][p] = c * akp - s * akr;
                    a[k][r] = s * akp + c * akr;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let ark = a[r][k];
                    a[p][k] = c * apk - s * ark;
                    a[r][k] = s * apk + c * ark;
                }
                for k in 0..n {
                    let qkp = q[(k, p)];
                    let qkr = q[(k, r)];
                    q[(k, p)] = c * qkp - s * qkr;
                    q[(k, r)] = s * qkp + c * qkr;
                }
            }
        }
    }
    ((0..n).map(|i| a[i][i]).collect(), q)
}

/// Exact nullspace basis of an `m x n` rectangular system (rows of
/// coefficients), returned as vectors of length `n`. Used by the solver's
/// linear stages (metric families for a fixed connection).
pub fn nullspace<T: Scalar>(rows: &[Vec<T>], n_cols: usize) -> Vec<Vec<T>> {
    let mut a: Vec<Vec<T>> = rows.to_vec();
    let m = a.len();
    let mut pivot_cols = Vec::new();
    let mut rank = 0;
    for c in 0..n_cols {
        let Some(p) = (rank..m).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let inv = T::one() / a[rank][c].clone();
        for j in 0..n_cols {
            a[rank][j] = a[rank][j].clone() * inv.clone();
        }
        for r in 0..m {
            if r != rank && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                for j in 0..n_cols {
                    a[r][j] = a[r][j].clone() - f.clone() * a[rank][j].clone();
                }
            }
        }
        pivot_cols.push(c);
        rank += 1;
        if rank == m {
            break;
        }
    }
    let free_cols: Vec<usize> = (0..n_cols).filter(|c| !pivot_cols.contains(c)).collect();
    free_cols
        .iter()
        .map(|&fc| {
            let mut v = vec![T::zero(); n_cols];
            v[fc] = T::one();
            for (r, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = -a[r][fc].clone();
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_int, Rat};

    #[test]
    fn inverse_exact_2x2() {
        // [[1,1/2],[1/2,1]]^-1 = 4/3 [[1,-1/2],[-1/2,1]]
        let g: Matrix<Rat> =
            Matrix::from_rows(vec![vec![rat_int(1), rat(1, 2)], vec![rat(1, 2), rat_int(1)]]);
        let inv = g.inverse().unwrap();
        let expect = Matrix::from_rows(vec![
            vec![rat(4, 3), rat(-2, 3)],
            vec![rat(-2, 3), rat(4, 3)],
        ]);
        assert_eq!(inv, expect);
        assert_eq!(g.mul(&inv), Matrix::identity(2));
    }

    #[test]
    fn signature_counts() {
        let g: Matrix<Rat> =
            Matrix::from_rows(vec![vec![rat_int(1), rat(1, 2)], vec![rat(1, 2), rat_int(1)]]);
        assert_eq!(g.signature().unwrap(), (2, 0));
        let lorentz: Matrix<Rat> = Matrix::from_i64(&[&[1, 0], &[0, -1]]);
        assert_eq!(lorentz.signature().unwrap(), (1, 1));
        // Off-diagonal hyperbolic block.
        let hyp: Matrix<Rat> = Matrix::from_i64(&[&[0, 3], &[3, 0]]);
        assert_eq!(hyp.signature().unwrap(), (1, 1));
        let sing: Matrix<Rat> = Matrix::from_i64(&[&[1, 1], &[1, 1]]);
        assert!(sing.signature().is_err());
    }

    #[test]
    fn signature_float_path() {
        let g: Matrix<f64> = Matrix::from_rows(vec![vec![2.0, 0.5], vec![0.5, -3.0]]);
        assert_eq!(g.signature().unwrap(), (1, 1));
    }

    #[test]
    fn sylvester_invariance_under_congruence() {
        let g: Matrix<Rat> = Matrix::from_i64(&[&[2, 1, 0], &[1, -1, 3], &[0, 3, 1]]);
        let sig = g.signature().unwrap();
        let a: Matrix<Rat> = Matrix::from_i64(&[&[1, 2, 0], &[0, 1, 5], &[3, 0, 1]]);
        assert!(!a.det().is_zero());
        assert_eq!(g.congruence(&a).signature().unwrap(), sig);
    }

    #[test]
    fn nullspace_of_rank_one_system() {
        // x + y + z = 0 over rationals: nullspace dim 2.
        let rows = vec![vec![rat_int(1), rat_int(1), rat_int(1)]];
        let basis = nullspace(&rows, 3);
        assert_eq!(basis.len(), 2);
        for v in &basis {
            let s = v[0].clone() + v[1].clone() + v[2].clone();
            assert!(s.is_zero());
        }
    }
}
