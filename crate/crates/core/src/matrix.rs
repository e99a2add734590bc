//! Dense complex matrices for the small operator spaces used throughout the crate.
//!
//! Every Hamiltonian, constraint, eigenframe and propagator is a square
//! [`Operator`] of dimension 2, 3 or 4. Larger matrices only appear as
//! transient Kronecker products; routines that need a physical operator
//! reject them with [`Error::DimensionTooLarge`].
//!
//! The general exponential path diagonalizes the Hermitian generator with a
//! cyclic complex Jacobi sweep. When the generator squares to a multiple of
//! the identity (`H^2 = E^2 1`, true for every Dirac-type Hamiltonian) the
//! closed form `cos(E t) 1 - i sin(E t) H / E` is used instead.

use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Complex scalar with double-precision components.
pub type ComplexScalar = Complex64;

pub(crate) const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub(crate) const I: Complex64 = Complex64::new(0.0, 1.0);

/// Largest dimension accepted where a physical operator is required.
pub const MAX_DIM: usize = 4;

/// Absolute tolerance on `max |A - A^H|` accepted by [`expm_unitary`].
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Relative tolerance on `H^2 - (Tr H^2 / n) 1` for the involutory fast path.
pub const INVOLUTORY_TOL: f64 = 1e-10;

/// Default absolute tolerance used by [`predicates`].
pub const PREDICATE_TOL: f64 = 1e-12;

const JACOBI_TOL: f64 = 1e-14;
const JACOBI_MAX_SWEEPS: usize = 64;

/// Square complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct Operator {
    dim: usize,
    data: Vec<Complex64>,
}

impl Operator {
    /// Builds an operator from row-major entries, validating shape and finiteness.
    pub fn new(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        if dim == 0 || data.len() != dim * dim {
            return Err(Error::BadShape {
                dim,
                len: data.len(),
            });
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { dim, data })
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| if i == j { ONE } else { ZERO })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    /// Builds an operator from nested rows. Panics on ragged input; intended
    /// for literal constants.
    pub fn from_rows<const N: usize>(rows: [[Complex64; N]; N]) -> Self {
        Self::from_fn(N, |i, j| rows[i][j])
    }

    pub fn from_real_rows<const N: usize>(rows: [[f64; N]; N]) -> Self {
        Self::from_fn(N, |i, j| Complex64::new(rows[i][j], 0.0))
    }

    pub fn diag(entries: &[Complex64]) -> Self {
        Self::from_fn(entries.len(), |i, j| if i == j { entries[i] } else { ZERO })
    }

    /// Assembles a `2n x 2n` operator from four `n x n` blocks.
    pub fn from_blocks(ul: &Operator, ur: &Operator, ll: &Operator, lr: &Operator) -> Result<Self> {
        let n = ul.dim;
        for b in [ur, ll, lr] {
            check_same(n, b.dim)?;
        }
        Ok(Self::from_fn(2 * n, |i, j| {
            let block = match (i < n, j < n) {
                (true, true) => ul,
                (true, false) => ur,
                (false, true) => ll,
                (false, false) => lr,
            };
            block[(i % n, j % n)]
        }))
    }

    /// Extracts the `n x n` block at block position (`bi`, `bj`).
    pub fn block(&self, n: usize, bi: usize, bj: usize) -> Operator {
        Self::from_fn(n, |i, j| self[(bi * n + i, bj * n + j)])
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn conj(&self) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)])
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, k: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * k).collect(),
        }
    }

    pub fn scale_re(&self, k: f64) -> Self {
        self.scale(Complex64::new(k, 0.0))
    }

    /// `self += k * other`, the inner loop of basis reconstruction.
    pub fn axpy(&mut self, k: f64, other: &Operator) {
        debug_assert_eq!(self.dim, other.dim);
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += b * k;
        }
    }

    pub fn try_mul(&self, rhs: &Operator) -> Result<Operator> {
        check_same(self.dim, rhs.dim)?;
        Ok(self.matmul(rhs))
    }

    fn matmul(&self, rhs: &Operator) -> Operator {
        let n = self.dim;
        let mut out = vec![ZERO; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        Operator { dim: n, data: out }
    }

    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        check_same(self.dim, v.len())?;
        Ok((0..self.dim)
            .map(|i| (0..self.dim).map(|j| self[(i, j)] * v[j]).sum())
            .collect())
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Operator) -> f64 {
        assert_eq!(self.dim, other.dim, "max_abs_diff on mismatched dimensions");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// `max |A - A^H|`.
    pub fn hermitian_deviation(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// Fails unless `dim <= 4`.
    pub fn require_physical(&self) -> Result<()> {
        if self.dim > MAX_DIM {
            Err(Error::DimensionTooLarge(self.dim))
        } else {
            Ok(())
        }
    }
}

impl Index<(usize, usize)> for Operator {
    type Output = Complex64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for Operator {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

impl fmt::Debug for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Operator({}x{})", self.dim, self.dim)?;
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim)
                .map(|j| format!("{:+.6}{:+.6}i", self[(i, j)].re, self[(i, j)].im))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

// Operator arithmetic panics on dimension mismatch, like slice indexing.
// Fallible entry points (`try_mul`, `bracket`, `trace_inner`) return errors.

impl Add for &Operator {
    type Output = Operator;
    fn add(self, rhs: &Operator) -> Operator {
        assert_eq!(self.dim, rhs.dim, "operator dimension mismatch in add");
        Operator {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Operator {
    type Output = Operator;
    fn sub(self, rhs: &Operator) -> Operator {
        assert_eq!(self.dim, rhs.dim, "operator dimension mismatch in sub");
        Operator {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &Operator {
    type Output = Operator;
    fn mul(self, rhs: &Operator) -> Operator {
        assert_eq!(self.dim, rhs.dim, "operator dimension mismatch in mul");
        self.matmul(rhs)
    }
}

impl Neg for &Operator {
    type Output = Operator;
    fn neg(self) -> Operator {
        self.scale_re(-1.0)
    }
}

impl AddAssign<&Operator> for Operator {
    fn add_assign(&mut self, rhs: &Operator) {
        assert_eq!(self.dim, rhs.dim, "operator dimension mismatch in add_assign");
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            *a += b;
        }
    }
}

fn check_same(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { left, right })
    }
}

/// Kronecker product `A ⊗ B`; block `(i, j)` of the result is `A[i][j] * B`.
///
/// Results larger than 4x4 are allowed but fail [`Operator::require_physical`].
pub fn kron(a: &Operator, b: &Operator) -> Operator {
    let (n, m) = (a.dim, b.dim);
    Operator::from_fn(n * m, |r, c| a[(r / m, c / m)] * b[(r % m, c % m)])
}

/// Bracket flavour for [`bracket`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BracketKind {
    Commutator,
    Anticommutator,
}

/// `AB - BA` or `AB + BA`.
pub fn bracket(a: &Operator, b: &Operator, kind: BracketKind) -> Result<Operator> {
    check_same(a.dim, b.dim)?;
    let ab = a.matmul(b);
    let ba = b.matmul(a);
    Ok(match kind {
        BracketKind::Commutator => &ab - &ba,
        BracketKind::Anticommutator => &ab + &ba,
    })
}

pub fn commutator(a: &Operator, b: &Operator) -> Result<Operator> {
    bracket(a, b, BracketKind::Commutator)
}

pub fn anticommutator(a: &Operator, b: &Operator) -> Result<Operator> {
    bracket(a, b, BracketKind::Anticommutator)
}

/// Hilbert-Schmidt inner product `Tr(A^H B)`.
pub fn trace_inner(a: &Operator, b: &Operator) -> Result<Complex64> {
    check_same(a.dim, b.dim)?;
    Ok(a.data.iter().zip(&b.data).map(|(x, y)| x.conj() * y).sum())
}

/// Spectrum and eigenvectors of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Eigenvalues in ascending order.
    pub values: Vec<f64>,
    /// Unitary matrix whose columns are the matching eigenvectors.
    pub vectors: Operator,
}

/// Cyclic complex Jacobi diagonalization.
///
/// Each rotation first removes the phase of the pivot `a_pq` and then applies
/// a real Givens rotation, so the accumulated transform stays unitary.
/// Sweeps stop once the off-diagonal Frobenius norm drops below
/// `1e-14 * max(1, |A|_F)`.
pub fn eigh(a: &Operator) -> Result<HermitianEigen> {
    let dev = a.hermitian_deviation();
    if dev > HERMITIAN_TOL {
        return Err(Error::NotHermitian(dev));
    }
    if !a.is_finite() {
        return Err(Error::NonFinite);
    }
    let n = a.dim;
    let mut m = a.clone();
    // symmetrize so rounding in the input cannot bias the rotations
    for i in 0..n {
        m[(i, i)] = Complex64::new(m[(i, i)].re, 0.0);
        for j in i + 1..n {
            let avg = (m[(i, j)] + m[(j, i)].conj()) * 0.5;
            m[(i, j)] = avg;
            m[(j, i)] = avg.conj();
        }
    }
    let mut v = Operator::identity(n);
    let stop = JACOBI_TOL * a.frobenius_norm().max(1.0);

    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&m) < stop {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[(p, q)];
                let mag = apq.norm();
                if mag == 0.0 {
                    continue;
                }
                let phase = apq / mag; // e^{i phi}
                let app = m[(p, p)].re;
                let aqq = m[(q, q)].re;
                let theta = (aqq - app) / (2.0 * mag);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                // V = D R with D_qq = e^{-i phi}; A <- V^H A V
                let ph_conj = phase.conj();
                for k in 0..n {
                    let akp = m[(k, p)];
                    let akq = m[(k, q)];
                    m[(k, p)] = akp * c - akq * ph_conj * s;
                    m[(k, q)] = akp * s + akq * ph_conj * c;
                }
                for k in 0..n {
                    let apk = m[(p, k)];
                    let aqk = m[(q, k)];
                    m[(p, k)] = apk * c - aqk * phase * s;
                    m[(q, k)] = apk * s + aqk * phase * c;
                }
                m[(p, q)] = ZERO;
                m[(q, p)] = ZERO;
                m[(p, p)] = Complex64::new(m[(p, p)].re, 0.0);
                m[(q, q)] = Complex64::new(m[(q, q)].re, 0.0);

                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * c - vkq * ph_conj * s;
                    v[(k, q)] = vkp * s + vkq * ph_conj * c;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| m[(x, x)].re.total_cmp(&m[(y, y)].re));
    let values = order.iter().map(|&k| m[(k, k)].re).collect();
    let vectors = Operator::from_fn(n, |i, j| v[(i, order[j])]);
    Ok(HermitianEigen { values, vectors })
}

fn off_diagonal_norm(m: &Operator) -> f64 {
    let n = m.dim;
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += m[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// If `H^2 = E^2 1` (relative tolerance [`INVOLUTORY_TOL`]), returns `E^2`.
pub fn involutory_energy_sq(h: &Operator) -> Option<f64> {
    let h2 = h.matmul(h);
    let e2 = h2.trace().re / h.dim as f64;
    let dev = h2.max_abs_diff(&Operator::identity(h.dim).scale_re(e2));
    if dev <= INVOLUTORY_TOL * e2 || (e2 == 0.0 && dev == 0.0) {
        Some(e2)
    } else {
        None
    }
}

/// `exp(-i H tau)` for Hermitian `H`.
pub fn expm_unitary(h: &Operator, tau: f64) -> Result<Operator> {
    h.require_physical()?;
    if !h.is_finite() || !tau.is_finite() {
        return Err(Error::NonFinite);
    }
    let dev = h.hermitian_deviation();
    if dev > HERMITIAN_TOL {
        return Err(Error::NotHermitian(dev));
    }
    match involutory_energy_sq(h) {
        Some(e2) => Ok(expm_involutory(h, e2, tau)),
        None => expm_eigen(h, tau),
    }
}

/// Exact exponential of an operator with `H^2 = E^2 1`.
pub fn expm_involutory(h: &Operator, e2: f64, tau: f64) -> Operator {
    let n = h.dim;
    if e2 == 0.0 {
        return Operator::identity(n);
    }
    let e = e2.sqrt();
    let (s, c) = (e * tau).sin_cos();
    let mut out = h.scale(Complex64::new(0.0, -s / e));
    for i in 0..n {
        out[(i, i)] += c;
    }
    out
}

/// Exponential through the Jacobi eigendecomposition, bypassing the fast path.
pub fn expm_eigen(h: &Operator, tau: f64) -> Result<Operator> {
    h.require_physical()?;
    let eig = eigh(h)?;
    let phases: Vec<Complex64> = eig
        .values
        .iter()
        .map(|&l| Complex64::from_polar(1.0, -l * tau))
        .collect();
    let v = &eig.vectors;
    let n = h.dim;
    Ok(Operator::from_fn(n, |i, j| {
        (0..n).map(|k| v[(i, k)] * phases[k] * v[(j, k)].conj()).sum()
    }))
}

/// Outcome of [`predicates`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Predicates {
    pub hermitian: bool,
    pub unitary: bool,
    pub traceless: bool,
    pub hermitian_dev: f64,
    pub unitary_dev: f64,
    pub trace_dev: f64,
    /// Largest of the three deviations.
    pub max_deviation: f64,
}

pub fn predicates(a: &Operator) -> Predicates {
    predicates_with_tol(a, PREDICATE_TOL)
}

pub fn predicates_with_tol(a: &Operator, tol: f64) -> Predicates {
    let hermitian_dev = a.hermitian_deviation();
    let unitary_dev = unitarity_deviation(a);
    let trace_dev = a.trace().norm();
    Predicates {
        hermitian: hermitian_dev <= tol,
        unitary: unitary_dev <= tol,
        traceless: trace_dev <= tol,
        hermitian_dev,
        unitary_dev,
        trace_dev,
        max_deviation: hermitian_dev.max(unitary_dev).max(trace_dev),
    }
}

/// `max |U^H U - 1|`.
pub fn unitarity_deviation(u: &Operator) -> f64 {
    u.adjoint()
        .matmul(u)
        .max_abs_diff(&Operator::identity(u.dim))
}

/// Pauli matrices `[1, σx, σy, σz]`.
pub fn pauli(k: usize) -> Operator {
    match k {
        0 => Operator::identity(2),
        1 => Operator::from_rows([[ZERO, ONE], [ONE, ZERO]]),
        2 => Operator::from_rows([[ZERO, -I], [I, ZERO]]),
        3 => Operator::from_rows([[ONE, ZERO], [ZERO, -ONE]]),
        _ => panic!("pauli index {k} out of range"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_matrix(rng: &mut impl Rng, n: usize) -> Operator {
        Operator::from_fn(n, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
    }

    fn random_hermitian(rng: &mut impl Rng, n: usize) -> Operator {
        let a = random_matrix(rng, n);
        (&a + &a.adjoint()).scale_re(0.5)
    }

    #[test]
    fn kron_examples() {
        let z1 = kron(&pauli(3), &pauli(0));
        assert_eq!(z1, Operator::diag(&[ONE, ONE, -ONE, -ONE]));
        assert_eq!(kron(&pauli(0), &pauli(0)), Operator::identity(4));
        let xx = kron(&pauli(1), &pauli(1));
        let anti = Operator::from_fn(4, |i, j| if i + j == 3 { ONE } else { ZERO });
        assert_eq!(xx, anti);
    }

    #[test]
    fn kron_is_associative_and_bilinear() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let a = random_matrix(&mut rng, 2);
            let b = random_matrix(&mut rng, 2);
            let b2 = random_matrix(&mut rng, 2);
            let d = random_matrix(&mut rng, 2);
            let left = kron(&kron(&a, &b), &d);
            let right = kron(&a, &kron(&b, &d));
            assert!(left.max_abs_diff(&right) < 1e-14);
            let k = c(0.3, -1.1);
            let lin = kron(&a, &(&b.scale(k) + &b2));
            let sum = &kron(&a, &b).scale(k) + &kron(&a, &b2);
            assert!(lin.max_abs_diff(&sum) < 1e-14);
        }
    }

    #[test]
    fn large_kron_is_flagged() {
        let big = kron(&kron(&pauli(1), &pauli(2)), &pauli(3));
        assert_eq!(big.dim(), 8);
        assert_eq!(big.require_physical(), Err(Error::DimensionTooLarge(8)));
        assert!(expm_unitary(&big, 1.0).is_err());
    }

    #[test]
    fn bracket_examples() {
        let comm = commutator(&pauli(1), &pauli(2)).unwrap();
        assert!(comm.max_abs_diff(&pauli(3).scale(c(0.0, 2.0))) == 0.0);
        let err = bracket(&pauli(1), &Operator::identity(3), BracketKind::Commutator);
        assert_eq!(err, Err(Error::DimensionMismatch { left: 2, right: 3 }));
    }

    #[test]
    fn trace_inner_examples() {
        assert_eq!(trace_inner(&pauli(1), &pauli(1)).unwrap(), c(2.0, 0.0));
        let xy = kron(&pauli(1), &pauli(2));
        assert_eq!(trace_inner(&xy, &xy).unwrap(), c(4.0, 0.0));
        assert!(trace_inner(&pauli(1), &Operator::identity(4)).is_err());
    }

    #[test]
    fn trace_inner_self_is_real_nonnegative() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 2..=4 {
            let a = random_matrix(&mut rng, n);
            let t = trace_inner(&a, &a).unwrap();
            assert!(t.re >= 0.0);
            assert_eq!(t.im, 0.0);
        }
    }

    #[test]
    fn expm_examples() {
        let u = expm_unitary(&pauli(3), std::f64::consts::FRAC_PI_2).unwrap();
        assert!(u.max_abs_diff(&Operator::diag(&[-I, I])) < 1e-15);
        let u0 = expm_unitary(&Operator::zeros(3), 2.5).unwrap();
        assert_eq!(u0, Operator::identity(3));
    }

    #[test]
    fn expm_rejects_non_hermitian() {
        let a = Operator::from_rows([[ZERO, ONE], [ZERO, ZERO]]);
        assert!(matches!(expm_unitary(&a, 1.0), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn expm_diagonal_without_involution_uses_eigen_path() {
        let h = Operator::from_real_rows([[1.0, 0.0], [0.0, 2.0]]);
        assert!(involutory_energy_sq(&h).is_none());
        let u = expm_unitary(&h, 0.7).unwrap();
        let expect = Operator::diag(&[
            Complex64::from_polar(1.0, -0.7),
            Complex64::from_polar(1.0, -1.4),
        ]);
        assert!(u.max_abs_diff(&expect) < 1e-15);
    }

    #[test]
    fn jacobi_reconstructs_random_hermitian() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 2..=4 {
            for _ in 0..50 {
                let h = random_hermitian(&mut rng, n);
                let eig = eigh(&h).unwrap();
                let d = Operator::diag(
                    &eig.values.iter().map(|&x| c(x, 0.0)).collect::<Vec<_>>(),
                );
                let back = &(&eig.vectors * &d) * &eig.vectors.adjoint();
                assert!(back.max_abs_diff(&h) < 1e-13);
                assert!(unitarity_deviation(&eig.vectors) < 1e-13);
                assert!(eig.values.windows(2).all(|w| w[0] <= w[1]));
            }
        }
    }

    #[test]
    fn jacobi_handles_degenerate_spectrum() {
        let h = &kron(&pauli(3), &pauli(0)) + &kron(&pauli(1), &pauli(2));
        let eig = eigh(&h).unwrap();
        let s = 2f64.sqrt();
        for (got, want) in eig.values.iter().zip([-s, -s, s, s]) {
            assert!((got - want).abs() < 1e-14);
        }
    }

    #[test]
    fn predicates_examples() {
        let p = predicates(&pauli(1));
        assert!(p.hermitian && p.unitary && p.traceless);
        assert_eq!(p.max_deviation, 0.0);
        let d = predicates(&Operator::from_real_rows([[1.0, 0.0], [0.0, 2.0]]));
        assert!(d.hermitian && !d.traceless && !d.unitary);
        assert_eq!(d.trace_dev, 3.0);
    }

    #[test]
    fn constructor_validates_shape_and_finiteness() {
        assert!(matches!(
            Operator::new(2, vec![ONE; 3]),
            Err(Error::BadShape { .. })
        ));
        assert_eq!(
            Operator::new(1, vec![c(f64::NAN, 0.0)]),
            Err(Error::NonFinite)
        );
    }

    #[test]
    fn blocks_roundtrip() {
        let h = Operator::from_blocks(&pauli(0), &pauli(1), &pauli(2), &pauli(3)).unwrap();
        assert_eq!(h.block(2, 0, 1), pauli(1));
        assert_eq!(h.block(2, 1, 0), pauli(2));
        assert_eq!(h.block(2, 1, 1), pauli(3));
    }
}
