//! Dense complex linear algebra: a small matrix type, a self-contained
//! Hermitian eigensolver (cyclic Jacobi with unitary plane rotations), and
//! Gram–Schmidt utilities.
//!
//! The eigensolver is deliberately dependency-free. Jacobi iteration is a
//! good fit here: every matrix this crate diagonalizes is Hermitian, small
//! (a few hundred rows at most) and usually well separated, and Jacobi
//! delivers eigenvalues to high relative accuracy.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Row-major dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMat {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMat {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        for row in rows {
            if row.len() != c {
                return Err(Error::DomainMismatch {
                    expected: c,
                    got: row.len(),
                });
            }
        }
        Ok(CMat {
            rows: r,
            cols: c,
            data: rows.iter().flatten().copied().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn adjoint(&self) -> CMat {
        let mut out = CMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn matmul(&self, other: &CMat) -> CMat {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let mut out = CMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .map(|(a, x)| a * x)
                    .sum::<Complex64>()
            })
            .collect()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest |A_ij - conj(A_ji)| over all entries; zero for Hermitian input.
    pub fn hermitian_deviation(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }
}

impl std::ops::Index<(usize, usize)> for CMat {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi iteration.
///
/// Returns eigenvalues in ascending order together with a unitary matrix
/// whose columns are the corresponding eigenvectors, so that
/// `A = V diag(λ) V^H`. The input is symmetrized as `(A + A^H)/2` before
/// iterating; callers are expected to pass (numerically) Hermitian data.
pub fn eigh(a: &CMat) -> Result<(Vec<f64>, CMat)> {
    assert_eq!(a.rows, a.cols, "eigh needs a square matrix");
    let n = a.rows;
    if n == 0 {
        return Ok((Vec::new(), CMat::zeros(0, 0)));
    }

    // Work on the Hermitian part; roundoff in callers' Gram assembly can
    // leave |A - A^H| at a few ulps.
    let mut m = CMat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = 0.5 * (a[(i, j)] + a[(j, i)].conj());
        }
    }
    let mut v = CMat::identity(n);

    let scale = m.frobenius_norm();
    if scale == 0.0 {
        return Ok((vec![0.0; n], v));
    }
    let tol = 1e-14 * scale;
    let skip = 0.25 * tol / n as f64;
    const MAX_SWEEPS: usize = 50;

    let mut off_norm = off_diagonal_norm(&m);
    let mut sweeps = 0;
    while off_norm > tol {
        if sweeps >= MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps, off_norm });
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = m[(p, q)];
                let mag = apq.norm();
                if mag <= skip {
                    continue;
                }
                // Unitary plane rotation R = [[c, -s], [w̄·s, w̄·c]] with
                // w = apq/|apq|. Conjugating by diag(1, w̄) makes the 2x2
                // block real symmetric; c, s then follow the classical
                // smaller-angle Jacobi choice.
                let w = apq / mag;
                let app = m[(p, p)].re;
                let aqq = m[(q, q)].re;
                let zeta = (aqq - app) / (2.0 * mag);
                // Smaller-magnitude root of t² − 2ζt − 1 = 0, the tangent
                // that annihilates the pivot under this rotation.
                let t = if zeta >= 0.0 {
                    -1.0 / (zeta + (1.0 + zeta * zeta).sqrt())
                } else {
                    1.0 / (-zeta + (1.0 + zeta * zeta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let ws = w.conj() * s;
                let wc = w.conj() * c;

                // Column update: A <- A R (and accumulate V <- V R).
                for k in 0..n {
                    let akp = m[(k, p)];
                    let akq = m[(k, q)];
                    m[(k, p)] = c * akp + ws * akq;
                    m[(k, q)] = -s * akp + wc * akq;
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp + ws * vkq;
                    v[(k, q)] = -s * vkp + wc * vkq;
                }
                // Row update: A <- R^H A.
                let wsc = w * s;
                let wcc = w * c;
                for k in 0..n {
                    let apk = m[(p, k)];
                    let aqk = m[(q, k)];
                    m[(p, k)] = c * apk + wsc * aqk;
                    m[(q, k)] = -s * apk + wcc * aqk;
                }
                // The rotation annihilates the pivot pair; the computed
                // residue there is pure roundoff.
                m[(p, q)] = Complex64::new(0.0, 0.0);
                m[(q, p)] = Complex64::new(0.0, 0.0);
                m[(p, p)] = Complex64::new(m[(p, p)].re, 0.0);
                m[(q, q)] = Complex64::new(m[(q, q)].re, 0.0);
            }
        }
        sweeps += 1;
        off_norm = off_diagonal_norm(&m);
    }

    let mut order: Vec<usize> = (0..n).collect();
    let eigs: Vec<f64> = (0..n).map(|i| m[(i, i)].re).collect();
    order.sort_by(|&i, &j| eigs[i].partial_cmp(&eigs[j]).unwrap());
    let sorted: Vec<f64> = order.iter().map(|&i| eigs[i]).collect();
    let mut vs = CMat::zeros(n, n);
    for (new_col, &old_col) in order.iter().enumerate() {
        for k in 0..n {
            vs[(k, new_col)] = v[(k, old_col)];
        }
    }
    Ok((sorted, vs))
}

/// Eigenvalues only, ascending.
pub fn eigvalsh(a: &CMat) -> Result<Vec<f64>> {
    eigh(a).map(|(vals, _)| vals)
}

fn off_diagonal_norm(m: &CMat) -> f64 {
    let n = m.rows;
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += m[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// `⟨u, v⟩ = Σ u_i conj(v_i)`, linear in the first argument.
pub fn inner(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a * b.conj()).sum()
}

pub fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Gram matrix `G_ij = ⟨v_i, v_j⟩` (Hermitian positive semidefinite).
pub fn gram(vectors: &[Vec<Complex64>]) -> CMat {
    let n = vectors.len();
    let mut g = CMat::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let val = inner(&vectors[i], &vectors[j]);
            g[(i, j)] = val;
            g[(j, i)] = val.conj();
        }
    }
    g
}

/// Frame operator `S = Σ_k v_k v_k^H` acting on the ambient space.
pub fn frame_operator(vectors: &[Vec<Complex64>], dim: usize) -> CMat {
    let mut s = CMat::zeros(dim, dim);
    for v in vectors {
        assert_eq!(v.len(), dim, "vector dimension mismatch");
        for i in 0..dim {
            for j in 0..dim {
                s[(i, j)] += v[i] * v[j].conj();
            }
        }
    }
    s
}

/// Orthonormal basis for the span of `vectors` by modified Gram–Schmidt
/// with one reorthogonalization pass. A candidate is accepted when its
/// residual norm exceeds `rel_tol` times the largest input norm; with all
/// inputs zero (or an empty slice) the basis is empty.
pub fn orthonormalize(vectors: &[Vec<Complex64>], rel_tol: f64) -> Vec<Vec<Complex64>> {
    let scale = vectors.iter().map(|v| norm(v)).fold(0.0f64, f64::max);
    if scale == 0.0 {
        return Vec::new();
    }
    orthonormalize_abs(vectors, rel_tol * scale)
}

/// [`orthonormalize`] against a caller-chosen absolute residual threshold,
/// for when the reference scale lives outside the given batch (e.g. one
/// fiber of a larger system).
pub fn orthonormalize_abs(vectors: &[Vec<Complex64>], threshold: f64) -> Vec<Vec<Complex64>> {
    let mut basis: Vec<Vec<Complex64>> = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        for _ in 0..2 {
            for b in &basis {
                let coeff = inner(&w, b);
                for (wi, bi) in w.iter_mut().zip(b) {
                    *wi -= coeff * bi;
                }
            }
        }
        let r = norm(&w);
        if r > threshold {
            for wi in w.iter_mut() {
                *wi /= r;
            }
            basis.push(w);
        }
    }
    basis
}

/// `v` minus its orthogonal projection onto the span of the orthonormal
/// `basis`.
pub fn project_out(basis: &[Vec<Complex64>], v: &[Complex64]) -> Vec<Complex64> {
    let mut w = v.to_vec();
    for b in basis {
        let coeff = inner(&w, b);
        for (wi, bi) in w.iter_mut().zip(b) {
            *wi -= coeff * bi;
        }
    }
    w
}

/// Extremes `(min, max)` of the eigenvalues exceeding `rel_tol · max(λ)`,
/// or `None` when no eigenvalue clears the threshold. Input must be the
/// ascending spectrum of a positive semidefinite operator.
pub fn nonzero_extremes(eigs: &[f64], rel_tol: f64) -> Option<(f64, f64)> {
    let max = *eigs.last()?;
    if max <= 0.0 {
        return None;
    }
    let threshold = rel_tol * max;
    let min = eigs.iter().copied().find(|&l| l > threshold)?;
    Some((min, max))
}
