//! Dense real-symmetric eigendecomposition and orthogonal-subspace toolkit.
//!
//! Everything here is deliberately simple: matrices at desk scale (a few
//! hundred rows) are stored dense, the eigensolver is cyclic Jacobi, and
//! subspaces are orthonormal bases maintained by modified Gram-Schmidt
//! with re-orthogonalization.  Determinism matters more than speed; for a
//! fixed input the same decomposition comes out every time.

use crate::error::{Error, Result};

/// Maximum number of Jacobi sweeps before giving up.
const MAX_SWEEPS: usize = 100;

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// `y += alpha * x`
pub fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

pub fn scale(alpha: f64, x: &mut [f64]) {
    for xi in x.iter_mut() {
        *xi *= alpha;
    }
}

/// Dense symmetric matrix, row-major, exactly symmetric as stored.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        SymMatrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    /// Builds from `f(i, j)` evaluated on `i <= j` and mirrored, so the
    /// result is symmetric no matter what `f` does.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in i..n {
                let v = f(i, j);
                m.data[i * n + j] = v;
                m.data[j * n + i] = v;
            }
        }
        m
    }

    /// Wraps a flat row-major buffer that should already be symmetric,
    /// averaging the two triangles.  Fails if the asymmetry exceeds `tol`.
    pub fn from_flat_symmetrized(n: usize, flat: Vec<f64>, tol: f64) -> Result<Self> {
        assert_eq!(flat.len(), n * n);
        let mut m = SymMatrix { n, data: flat };
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in (i + 1)..n {
                let a = m.data[i * n + j];
                let b = m.data[j * n + i];
                worst = worst.max((a - b).abs());
                let avg = 0.5 * (a + b);
                m.data[i * n + j] = avg;
                m.data[j * n + i] = avg;
            }
        }
        if worst > tol {
            return Err(Error::Identity(format!(
                "matrix expected symmetric, asymmetry {worst:.3e} exceeds {tol:.3e}"
            )));
        }
        Ok(m)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    /// Sets both `(i, j)` and `(j, i)`.
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
        self.data[j * self.n + i] = v;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n);
        let mut y = vec![0.0; self.n];
        for i in 0..self.n {
            y[i] = dot(self.row(i), x);
        }
        y
    }

    /// General product; the result of multiplying two symmetric matrices
    /// need not be symmetric, so this returns a flat buffer.
    pub fn mul_flat(&self, other: &SymMatrix) -> Vec<f64> {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = vec![0.0; n * n];
        for i in 0..n {
            for l in 0..n {
                let a = self.data[i * n + l];
                if a == 0.0 {
                    continue;
                }
                let row = &other.data[l * n..(l + 1) * n];
                for j in 0..n {
                    out[i * n + j] += a * row[j];
                }
            }
        }
        out
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.data[i * self.n + i]).sum()
    }

    /// Largest absolute entry; the matrix norm used for relative
    /// tolerances throughout.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0f64, |m, &v| m.max(v.abs()))
    }

    pub fn scaled(&self, alpha: f64) -> SymMatrix {
        let mut m = self.clone();
        for v in m.data.iter_mut() {
            *v *= alpha;
        }
        m
    }

    pub fn add(&self, other: &SymMatrix) -> SymMatrix {
        assert_eq!(self.n, other.n);
        let mut m = self.clone();
        for (v, w) in m.data.iter_mut().zip(&other.data) {
            *v += w;
        }
        m
    }

    pub fn sub(&self, other: &SymMatrix) -> SymMatrix {
        assert_eq!(self.n, other.n);
        let mut m = self.clone();
        for (v, w) in m.data.iter_mut().zip(&other.data) {
            *v -= w;
        }
        m
    }
}

/// Result of [`sym_eigen`]: eigenvalues in descending order with matched
/// orthonormal eigenvectors.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    /// `vectors[j]` is the eigenvector for `values[j]`.
    pub vectors: Vec<Vec<f64>>,
    /// Worst `||M v - lambda v||` over all pairs, relative to `||M||`.
    pub residual: f64,
    /// Worst deviation of the eigenvector Gram matrix from the identity.
    pub gram_residual: f64,
}

/// Full eigendecomposition of a symmetric matrix by cyclic Jacobi.
///
/// Deterministic for fixed input.  Fails only if the rotations have not
/// annihilated the off-diagonal part after [`MAX_SWEEPS`] sweeps, or if
/// the verified residuals exceed `tol_eig` relative to the matrix norm.
pub fn sym_eigen(m: &SymMatrix, tol_eig: f64) -> Result<EigenDecomposition> {
    let n = m.n;
    if n == 0 {
        return Ok(EigenDecomposition {
            values: vec![],
            vectors: vec![],
            residual: 0.0,
            gram_residual: 0.0,
        });
    }
    let mut a = m.data.clone();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let mut d: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    let mut b = d.clone();
    let mut z = vec![0.0; n];

    let mut converged = false;
    let mut last_off = 0.0;
    for sweep in 0..MAX_SWEEPS {
        let mut sm = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                sm += a[p * n + q].abs();
            }
        }
        last_off = sm;
        if sm == 0.0 {
            converged = true;
            break;
        }
        let tresh = if sweep < 3 {
            0.2 * sm / (n * n) as f64
        } else {
            0.0
        };
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                let g = 100.0 * apq.abs();
                // after a few sweeps, entries drowned out by the diagonal
                // are flushed to zero
                if sweep > 3 && d[p].abs() + g == d[p].abs() && d[q].abs() + g == d[q].abs() {
                    a[p * n + q] = 0.0;
                    continue;
                }
                if apq.abs() <= tresh {
                    continue;
                }
                let h = d[q] - d[p];
                let t = if h.abs() + g == h.abs() {
                    apq / h
                } else {
                    let theta = 0.5 * h / apq;
                    let mut t = 1.0 / (theta.abs() + (1.0 + theta * theta).sqrt());
                    if theta < 0.0 {
                        t = -t;
                    }
                    t
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);
                let h = t * apq;
                z[p] -= h;
                z[q] += h;
                d[p] -= h;
                d[q] += h;
                a[p * n + q] = 0.0;
                let rotate = |a: &mut [f64], i: usize, j: usize, k: usize, l: usize| {
                    let g = a[i * n + j];
                    let h = a[k * n + l];
                    a[i * n + j] = g - s * (h + g * tau);
                    a[k * n + l] = h + s * (g - h * tau);
                };
                for j in 0..p {
                    rotate(&mut a, j, p, j, q);
                }
                for j in (p + 1)..q {
                    rotate(&mut a, p, j, j, q);
                }
                for j in (q + 1)..n {
                    rotate(&mut a, p, j, q, j);
                }
                for j in 0..n {
                    rotate(&mut v, j, p, j, q);
                }
            }
        }
        for p in 0..n {
            b[p] += z[p];
            d[p] = b[p];
            z[p] = 0.0;
        }
    }
    if !converged {
        return Err(Error::NoConvergence {
            residual: last_off,
            sweeps: MAX_SWEEPS,
        });
    }

    // sort descending, carrying the eigenvectors along
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[j].partial_cmp(&d[i]).unwrap());
    let values: Vec<f64> = order.iter().map(|&i| d[i]).collect();
    let vectors: Vec<Vec<f64>> = order
        .iter()
        .map(|&j| (0..n).map(|i| v[i * n + j]).collect())
        .collect();

    let scale = m.max_abs().max(1.0);
    let mut residual = 0.0f64;
    for (lambda, vec) in values.iter().zip(&vectors) {
        let mut r = m.matvec(vec);
        axpy(-lambda, vec, &mut r);
        residual = residual.max(norm(&r));
    }
    residual /= scale;
    let mut gram_residual = 0.0f64;
    for i in 0..n {
        for j in i..n {
            let g = dot(&vectors[i], &vectors[j]);
            let expect = if i == j { 1.0 } else { 0.0 };
            gram_residual = gram_residual.max((g - expect).abs());
        }
    }
    if residual > tol_eig || gram_residual > tol_eig {
        return Err(Error::Identity(format!(
            "eigendecomposition residual {residual:.3e} / gram {gram_residual:.3e} exceeds {tol_eig:.3e}"
        )));
    }
    Ok(EigenDecomposition {
        values,
        vectors,
        residual,
        gram_residual,
    })
}

/// Groups near-equal values (transitive closure of `|a - b| <= tau`) and
/// returns `(cluster mean, count)` in descending order.
///
/// Rejects spectra where two clusters sit closer than `10 * tau`; at that
/// separation the grouping would be arbitrary.
pub fn cluster_eigenvalues(values: &[f64], tau: f64) -> Result<Vec<(f64, usize)>> {
    assert!(tau > 0.0);
    if values.is_empty() {
        return Ok(vec![]);
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let mut clusters: Vec<(f64, usize)> = Vec::new();
    let mut start = 0;
    for i in 1..=sorted.len() {
        if i == sorted.len() || sorted[i - 1] - sorted[i] > tau {
            let chunk = &sorted[start..i];
            let mean = chunk.iter().sum::<f64>() / chunk.len() as f64;
            clusters.push((mean, chunk.len()));
            start = i;
        }
    }
    for w in clusters.windows(2) {
        let gap = w[0].0 - w[1].0;
        if gap < 10.0 * tau {
            return Err(Error::IllSeparated { gap, tol: tau });
        }
    }
    Ok(clusters)
}

/// A subspace of `R^ambient` held as an orthonormal basis (possibly empty).
#[derive(Debug, Clone)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<f64>>,
}

impl Subspace {
    pub fn empty(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: vec![],
        }
    }

    /// Orthonormalizes the given spanning set by modified Gram-Schmidt
    /// with one re-orthogonalization pass; vectors whose residual drops
    /// below `tau_rank` (relative to their own norm) are dropped.
    pub fn from_vectors(ambient: usize, vectors: &[Vec<f64>], tau_rank: f64) -> Self {
        let mut sub = Self::empty(ambient);
        for v in vectors {
            sub.try_extend(v, tau_rank);
        }
        sub
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<f64>] {
        &self.basis
    }

    /// Orthogonal projection of `v` onto the subspace.
    pub fn project(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.ambient);
        let mut p = vec![0.0; self.ambient];
        for b in &self.basis {
            axpy(dot(v, b), b, &mut p);
        }
        p
    }

    /// `v` minus its projection, with a second sweep for accuracy.
    pub fn residual(&self, v: &[f64]) -> Vec<f64> {
        let mut r = v.to_vec();
        for b in &self.basis {
            let c = dot(&r, b);
            axpy(-c, b, &mut r);
        }
        for b in &self.basis {
            let c = dot(&r, b);
            axpy(-c, b, &mut r);
        }
        r
    }

    /// Adds `v` to the basis if it is independent of the current span.
    /// Returns true when the dimension grew.
    pub fn try_extend(&mut self, v: &[f64], tau_rank: f64) -> bool {
        let vn = norm(v).max(1.0);
        let r = self.residual(v);
        let rn = norm(&r);
        if rn < tau_rank * vn {
            return false;
        }
        let mut unit = r;
        scale(1.0 / rn, &mut unit);
        // polish: one more orthogonalization of the normalized vector
        let mut unit = self.residual(&unit);
        let n2 = norm(&unit);
        scale(1.0 / n2, &mut unit);
        self.basis.push(unit);
        true
    }

    /// The vectors of `self` orthogonal to all of `inner`.
    pub fn complement_within(&self, inner: &Subspace, tau_rank: f64) -> Subspace {
        assert_eq!(self.ambient, inner.ambient);
        let mut out = Subspace::empty(self.ambient);
        for b in &self.basis {
            let r = inner.residual(b);
            out.try_extend(&r, tau_rank);
        }
        out
    }

    /// Worst deviation of the basis Gram matrix from the identity.
    pub fn gram_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.basis.len() {
            for j in i..self.basis.len() {
                let g = dot(&self.basis[i], &self.basis[j]);
                let expect = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((g - expect).abs());
            }
        }
        worst
    }
}

/// The operator `B^t M B` where `B` is the basis matrix of `sub`; the
/// action of `M` compressed to the subspace.  An empty subspace yields a
/// `0 x 0` matrix.
pub fn restrict_operator(m: &SymMatrix, sub: &Subspace) -> SymMatrix {
    assert_eq!(m.order(), sub.ambient());
    let dim = sub.dim();
    let images: Vec<Vec<f64>> = sub.basis().iter().map(|b| m.matvec(b)).collect();
    SymMatrix::from_fn(dim, |i, j| dot(sub.basis()[i].as_slice(), &images[j]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn approx(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn swap_matrix_eigen() {
        let m = SymMatrix::from_fn(2, |i, j| if i != j { 1.0 } else { 0.0 });
        let ed = sym_eigen(&m, 1e-10).unwrap();
        assert!(approx(ed.values[0], 1.0, 1e-14));
        assert!(approx(ed.values[1], -1.0, 1e-14));
    }

    #[test]
    fn identity_eigen_multiplicity() {
        let m = SymMatrix::identity(5);
        let ed = sym_eigen(&m, 1e-10).unwrap();
        for v in &ed.values {
            assert!(approx(*v, 1.0, 1e-15));
        }
        let clusters = cluster_eigenvalues(&ed.values, 1e-7).unwrap();
        assert_eq!(clusters, vec![(1.0, 5)]);
    }

    #[test]
    fn empty_matrix_and_subspace() {
        let ed = sym_eigen(&SymMatrix::zeros(0), 1e-10).unwrap();
        assert!(ed.values.is_empty());
        let sub = Subspace::empty(3);
        let r = restrict_operator(&SymMatrix::identity(3), &sub);
        assert_eq!(r.order(), 0);
        assert_eq!(cluster_eigenvalues(&[], 1e-7).unwrap(), vec![]);
    }

    #[test]
    fn cluster_groups_and_means() {
        let clusters = cluster_eigenvalues(&[2.0000001, 1.9999999, 0.0], 1e-5).unwrap();
        assert_eq!(clusters.len(), 2);
        assert!(approx(clusters[0].0, 2.0, 1e-9));
        assert_eq!(clusters[0].1, 2);
        assert_eq!(clusters[1], (0.0, 1));
    }

    #[test]
    fn cluster_rejects_ill_separated() {
        let err = cluster_eigenvalues(&[0.0, 5e-5], 1e-5).unwrap_err();
        assert!(matches!(err, Error::IllSeparated { .. }));
    }

    #[test]
    fn dependent_pair_gives_one_dimension() {
        let sub = Subspace::from_vectors(2, &[vec![1.0, 0.0], vec![2.0, 0.0]], 1e-8);
        assert_eq!(sub.dim(), 1);
    }

    #[test]
    fn project_onto_full_space_is_identity() {
        let sub = Subspace::from_vectors(
            3,
            &[
                vec![1.0, 0.0, 0.0],
                vec![1.0, 1.0, 0.0],
                vec![1.0, 1.0, 1.0],
            ],
            1e-8,
        );
        assert_eq!(sub.dim(), 3);
        let v = vec![0.3, -1.25, 7.0];
        let p = sub.project(&v);
        for (a, b) in v.iter().zip(&p) {
            assert!(approx(*a, *b, 1e-12));
        }
    }

    #[test]
    fn restrict_identity_is_identity() {
        let sub = Subspace::from_vectors(
            5,
            &[
                vec![1.0, 1.0, 0.0, 0.0, 0.0],
                vec![0.0, 1.0, 1.0, 0.0, 0.0],
                vec![0.0, 0.0, 1.0, 1.0, 0.0],
            ],
            1e-8,
        );
        let r = restrict_operator(&SymMatrix::identity(5), &sub);
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!(approx(r.get(i, j), expect, 1e-12));
            }
        }
    }

    #[test]
    fn complement_dimensions() {
        let full = Subspace::from_vectors(
            4,
            &[
                vec![1.0, 0.0, 0.0, 0.0],
                vec![0.0, 1.0, 0.0, 0.0],
                vec![0.0, 0.0, 1.0, 0.0],
            ],
            1e-8,
        );
        let inner = Subspace::from_vectors(4, &[vec![1.0, 1.0, 0.0, 0.0]], 1e-8);
        let comp = full.complement_within(&inner, 1e-8);
        assert_eq!(comp.dim(), 2);
        for b in comp.basis() {
            assert!(dot(b, &[1.0, 1.0, 0.0, 0.0]).abs() < 1e-10);
        }
    }

    proptest! {
        #[test]
        fn reconstruction_and_gram(seed in 0u64..200) {
            // small deterministic pseudo-random symmetric matrix
            let n = 3 + (seed % 6) as usize;
            let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1);
            let mut next = || {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                ((state >> 33) as f64 / (1u64 << 31) as f64) - 1.0
            };
            let m = SymMatrix::from_fn(n, |_, _| next() * 4.0);
            let ed = sym_eigen(&m, 1e-10).unwrap();
            // reconstruction: M == V diag(lambda) V^t
            let scale = m.max_abs().max(1.0);
            for i in 0..n {
                for j in 0..n {
                    let mut r = 0.0;
                    for (lam, v) in ed.values.iter().zip(&ed.vectors) {
                        r += lam * v[i] * v[j];
                    }
                    prop_assert!((r - m.get(i, j)).abs() <= 1e-10 * scale);
                }
            }
            prop_assert!(ed.gram_residual <= 1e-12);
        }

        #[test]
        fn projector_idempotence(seed in 0u64..100) {
            let n = 5usize;
            let mut state = seed.wrapping_add(7);
            let mut next = || {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                ((state >> 33) as f64 / (1u64 << 31) as f64) - 1.0
            };
            let vecs: Vec<Vec<f64>> = (0..3).map(|_| (0..n).map(|_| next()).collect()).collect();
            let sub = Subspace::from_vectors(n, &vecs, 1e-8);
            let v: Vec<f64> = (0..n).map(|_| next()).collect();
            let p1 = sub.project(&v);
            let p2 = sub.project(&p1);
            for (a, b) in p1.iter().zip(&p2) {
                prop_assert!((a - b).abs() <= 1e-10);
            }
        }
    }
}
