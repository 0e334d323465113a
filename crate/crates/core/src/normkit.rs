//! Dense complex matrix kernel.
//!
//! [`ComplexMatrix`] is a square `k x k` array of `Complex64`. Products skip
//! structurally zero rows of the left factor, which keeps the permutation-like
//! matrices of the explicit families (clock/shift, `BS(2,3)` blocks) cheap at
//! sizes in the thousands while staying bit-for-bit equal to the dense product.
//!
//! Decompositions (hermitian eigen, SVD, QR) go through LAPACK.

use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::str::FromStr;

use ndarray::{Array1, Array2, Axis};
use ndarray_linalg::{Eigh, QR, SVD, UPLO};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Certification tolerance for `|U*U - 1|_op`.
pub const UNITARY_TOL: f64 = 1e-10;

/// Above this dimension the operator norm switches from a full SVD to power
/// iteration on `A*A`.
pub const SVD_MAX_DIM: usize = 512;

const POWER_ITER_RTOL: f64 = 1e-8;
const POWER_ITER_MAX: usize = 5000;

#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    data: Array2<Complex64>,
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ComplexMatrix({}x{}) ", self.dim(), self.dim())?;
        if self.dim() <= 8 {
            write!(f, "{:?}", self.data)?;
        }
        Ok(())
    }
}

impl ComplexMatrix {
    pub fn zeros(k: usize) -> Self {
        Self {
            data: Array2::zeros((k, k)),
        }
    }

    pub fn identity(k: usize) -> Self {
        Self {
            data: Array2::eye(k),
        }
    }

    pub fn from_diag(diag: &[Complex64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, d) in diag.iter().enumerate() {
            m.data[[i, i]] = *d;
        }
        m
    }

    pub fn from_real_diag(diag: &[f64]) -> Self {
        let d: Vec<Complex64> = diag.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::from_diag(&d)
    }

    pub fn from_fn(k: usize, f: impl FnMut((usize, usize)) -> Complex64) -> Self {
        Self {
            data: Array2::from_shape_fn((k, k), f),
        }
    }

    /// Row-major construction; `rows` must be square.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let k = rows.len();
        for r in rows {
            if r.len() != k {
                return Err(Error::DimensionMismatch {
                    expected: k,
                    found: r.len(),
                });
            }
        }
        Ok(Self::from_fn(k, |(i, j)| rows[i][j]))
    }

    pub fn from_array(data: Array2<Complex64>) -> Result<Self> {
        if data.nrows() != data.ncols() {
            return Err(Error::DimensionMismatch {
                expected: data.nrows(),
                found: data.ncols(),
            });
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidArgument(
                "matrix has non-finite entries".into(),
            ));
        }
        Ok(Self { data })
    }

    pub fn dim(&self) -> usize {
        self.data.nrows()
    }

    pub fn as_array(&self) -> &Array2<Complex64> {
        &self.data
    }

    pub fn into_array(self) -> Array2<Complex64> {
        self.data
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[[i, j]]
    }

    pub fn set(&mut self, i: usize, j: usize, z: Complex64) {
        self.data[[i, j]] = z;
    }

    pub fn adjoint(&self) -> Self {
        Self {
            data: self.data.t().mapv(|z| z.conj()),
        }
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            data: self.data.mapv(|z| z * s),
        }
    }

    pub fn scale_complex(&self, s: Complex64) -> Self {
        Self {
            data: self.data.mapv(|z| z * s),
        }
    }

    pub fn trace(&self) -> Complex64 {
        self.data.diag().sum()
    }

    /// `self - 1_k`.
    pub fn minus_identity(&self) -> Self {
        let mut out = self.clone();
        for i in 0..self.dim() {
            out.data[[i, i]] -= Complex64::new(1.0, 0.0);
        }
        out
    }

    pub fn nnz(&self) -> usize {
        self.data
            .iter()
            .filter(|z| z.re != 0.0 || z.im != 0.0)
            .count()
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn norm(&self, kind: NormKind) -> f64 {
        norm(self, kind)
    }

    /// Dense product; rows of `self` are scanned for zeros so that sparse left
    /// factors cost `O(k^2 * nnz/row)`.
    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim(), rhs.dim(), "matmul dimension mismatch");
        let k = self.dim();
        if k > 0 && self.nnz() * 8 <= k * k {
            let mut out = Array2::<Complex64>::zeros((k, k));
            for (i, row) in self.data.axis_iter(Axis(0)).enumerate() {
                let mut orow = out.row_mut(i);
                for (l, a) in row.iter().enumerate() {
                    if a.re != 0.0 || a.im != 0.0 {
                        orow.scaled_add(*a, &rhs.data.row(l));
                    }
                }
            }
            Self { data: out }
        } else {
            Self {
                data: self.data.dot(&rhs.data),
            }
        }
    }

    pub fn matvec(&self, v: &Array1<Complex64>) -> Array1<Complex64> {
        self.data.dot(v)
    }

    /// `(A + A*) / 2`, exactly hermitian.
    pub fn hermitian_part(&self) -> Self {
        let k = self.dim();
        Self::from_fn(k, |(i, j)| {
            (self.data[[i, j]] + self.data[[j, i]].conj()) * 0.5
        })
    }

    /// `(A - A*) / 2`, exactly skew-hermitian.
    pub fn skew_part(&self) -> Self {
        skew_part(self)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.data
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn to_dump(&self) -> MatrixDump {
        MatrixDump {
            dim: self.dim(),
            entries: self.data.iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    pub fn from_dump(dump: &MatrixDump) -> Result<Self> {
        let k = dump.dim;
        if dump.entries.len() != k * k {
            return Err(Error::DimensionMismatch {
                expected: k * k,
                found: dump.entries.len(),
            });
        }
        let data = Array2::from_shape_fn((k, k), |(i, j)| {
            let [re, im] = dump.entries[i * k + j];
            Complex64::new(re, im)
        });
        Self::from_array(data)
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs)
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix {
            data: &self.data + &rhs.data,
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix {
            data: &self.data - &rhs.data,
        }
    }
}

/// Debug dump: dimension header plus row-major `(re, im)` pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixDump {
    pub dim: usize,
    pub entries: Vec<[f64; 2]>,
}

/// A matrix that passed `|U*U - 1|_op <= 1e-10` when it was certified.
///
/// Products of unitaries are not re-checked automatically; `certified`
/// records whether this particular value went through the check.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryMatrix {
    matrix: ComplexMatrix,
    certified: bool,
}

impl UnitaryMatrix {
    pub fn certify(matrix: ComplexMatrix) -> Result<Self> {
        let err = unitarity_error(&matrix);
        if err <= UNITARY_TOL {
            Ok(Self {
                matrix,
                certified: true,
            })
        } else {
            Err(Error::NotUnitary(err))
        }
    }

    /// Wraps a matrix known to be unitary by construction (e.g. a product of
    /// certified factors) without re-checking it.
    pub fn assume_unitary(matrix: ComplexMatrix) -> Self {
        Self {
            matrix,
            certified: false,
        }
    }

    pub fn recertify(self) -> Result<Self> {
        if self.certified {
            Ok(self)
        } else {
            Self::certify(self.matrix)
        }
    }

    pub fn identity(k: usize) -> Self {
        Self {
            matrix: ComplexMatrix::identity(k),
            certified: true,
        }
    }

    pub fn is_certified(&self) -> bool {
        self.certified
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    /// Exact adjoint; the certification flag carries over.
    pub fn adjoint(&self) -> Self {
        Self {
            matrix: self.matrix.adjoint(),
            certified: self.certified,
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self::assume_unitary(self.matrix.matmul(&rhs.matrix))
    }
}

/// `|U*U - 1|_op`, bounded first by the Frobenius norm.
pub fn unitarity_error(m: &ComplexMatrix) -> f64 {
    let gram = m.adjoint().matmul(m).minus_identity();
    let frob = gram.frobenius();
    if frob <= UNITARY_TOL {
        frob
    } else {
        operator_norm(&gram)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NormKind {
    Operator,
    Frobenius,
    NormalizedHS,
}

impl NormKind {
    pub const ALL: [NormKind; 3] = [
        NormKind::Operator,
        NormKind::Frobenius,
        NormKind::NormalizedHS,
    ];

    pub fn cli_name(self) -> &'static str {
        match self {
            NormKind::Operator => "op",
            NormKind::Frobenius => "frob",
            NormKind::NormalizedHS => "hs",
        }
    }
}

impl fmt::Display for NormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.cli_name())
    }
}

impl FromStr for NormKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "op" => Ok(NormKind::Operator),
            "frob" => Ok(NormKind::Frobenius),
            "hs" => Ok(NormKind::NormalizedHS),
            other => Err(Error::Parse(format!(
                "unknown norm `{other}` (expected op, frob or hs)"
            ))),
        }
    }
}

pub fn norm(a: &ComplexMatrix, kind: NormKind) -> f64 {
    match kind {
        NormKind::Operator => operator_norm(a),
        NormKind::Frobenius => a.frobenius(),
        NormKind::NormalizedHS => {
            let k = a.dim();
            if k == 0 {
                0.0
            } else {
                a.frobenius() / (k as f64).sqrt()
            }
        }
    }
}

/// Largest singular value.
pub fn operator_norm(a: &ComplexMatrix) -> f64 {
    let k = a.dim();
    if k == 0 {
        return 0.0;
    }
    if a.nnz() == 0 {
        return 0.0;
    }
    if k <= SVD_MAX_DIM {
        if let Ok(s) = singular_values(a) {
            return s.iter().copied().fold(0.0, f64::max);
        }
    }
    power_iteration_opnorm(a)
}

pub fn singular_values(a: &ComplexMatrix) -> Result<Vec<f64>> {
    let (_, s, _) = a.data.svd(false, false)?;
    Ok(s.to_vec())
}

/// Sparse rows of a matrix (column indices and values).
struct Csr {
    rows: Vec<Vec<(usize, Complex64)>>,
}

impl Csr {
    fn new(m: &Array2<Complex64>) -> Self {
        let rows = m
            .axis_iter(Axis(0))
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(_, z)| z.re != 0.0 || z.im != 0.0)
                    .map(|(j, z)| (j, *z))
                    .collect()
            })
            .collect();
        Self { rows }
    }

    fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        self.rows
            .iter()
            .map(|row| row.iter().map(|(j, z)| z * v[*j]).sum())
            .collect()
    }
}

fn power_iteration_opnorm(a: &ComplexMatrix) -> f64 {
    let k = a.dim();
    let fwd = Csr::new(&a.data);
    let adj = Csr::new(&a.adjoint().data);
    let mut rng = crate::seed::rng(0x5eed_0f0b);
    let mut v: Vec<Complex64> = (0..k)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    let nrm = |x: &[Complex64]| x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let n0 = nrm(&v);
    v.iter_mut().for_each(|z| *z /= n0);
    let mut sigma = 0.0;
    for it in 0..POWER_ITER_MAX {
        let av = fwd.apply(&v);
        let s = nrm(&av);
        if s == 0.0 {
            return 0.0;
        }
        let mut w = adj.apply(&av);
        let wn = nrm(&w);
        w.iter_mut().for_each(|z| *z /= wn);
        v = w;
        if it > 4 && (s - sigma).abs() <= POWER_ITER_RTOL * s {
            return s;
        }
        sigma = s;
    }
    sigma
}

/// Hermitian eigendecomposition `H = V diag(lambda) V*` of the exactly
/// hermitian part of `h`.
pub fn hermitian_eigen(h: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix)> {
    let herm = h.hermitian_part();
    // LAPACK reads a row-major buffer as the transpose, which for a hermitian
    // matrix is its conjugate: hand it conj(H) so the vectors belong to H.
    let k = herm.dim();
    let conj = Array2::from_shape_fn((k, k), |(i, j)| herm.data[[i, j]].conj());
    let (vals, vecs) = conj.eigh(UPLO::Lower)?;
    if vals.iter().any(|x| !x.is_finite()) {
        return Err(Error::LinAlg(
            "hermitian eigensolver returned non-finite values".into(),
        ));
    }
    Ok((vals.to_vec(), ComplexMatrix { data: vecs }))
}

/// `V diag(f(lambda)) V*`.
fn spectral_apply(
    vals: &[f64],
    vecs: &ComplexMatrix,
    f: impl Fn(f64) -> Complex64,
) -> ComplexMatrix {
    let mut scaled = vecs.data.clone();
    for (j, mut col) in scaled.axis_iter_mut(Axis(1)).enumerate() {
        let fj = f(vals[j]);
        col.mapv_inplace(|z| z * fj);
    }
    ComplexMatrix {
        data: scaled.dot(&vecs.data.t().mapv(|z| z.conj())),
    }
}

/// `|A| = (A*A)^{1/2}`.
pub fn absolute_value(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let gram = a.adjoint().matmul(a);
    let (vals, vecs) = hermitian_eigen(&gram)?;
    let out = spectral_apply(&vals, &vecs, |l| Complex64::new(l.max(0.0).sqrt(), 0.0));
    Ok(out.hermitian_part())
}

/// Self-adjoint unitary `B` with `|B - A| <= |1 - A^2|` in every unitarily
/// invariant norm.
///
/// Eigenvalues `a_j` of `A` are sent to `+1` when `Re a_j >= 0` and to `-1`
/// otherwise. Since `A` is normal, this is `sign(H)` for the hermitian part
/// `H = (A + A*)/2`, whose eigenvalues are exactly the `Re a_j`; working with
/// `H` avoids a non-hermitian eigensolver and is insensitive to eigenvalue
/// clusters such as conjugate pairs.
pub fn nearest_involution(a: &UnitaryMatrix) -> Result<UnitaryMatrix> {
    let (vals, vecs) = hermitian_eigen(a.matrix())?;
    let b = spectral_apply(&vals, &vecs, |re| {
        if re >= 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(-1.0, 0.0)
        }
    })
    .hermitian_part();
    UnitaryMatrix::certify(b)
}

/// `exp(X)` for skew-hermitian `X`, via the hermitian matrix `iX`:
/// `iX = V diag(l) V*` gives `exp(X) = V diag(exp(-i l)) V*`.
pub fn exp_skew(x: &ComplexMatrix) -> Result<UnitaryMatrix> {
    let sym = (x + &x.adjoint()).frobenius();
    if sym > UNITARY_TOL {
        let op = operator_norm(&(x + &x.adjoint()));
        if op > UNITARY_TOL {
            return Err(Error::NotSkewHermitian(op));
        }
    }
    let skew = skew_part(x);
    if skew.nnz() == 0 {
        return Ok(UnitaryMatrix::identity(x.dim()));
    }
    let h = skew.scale_complex(Complex64::new(0.0, 1.0));
    let (vals, vecs) = hermitian_eigen(&h)?;
    let u = spectral_apply(&vals, &vecs, |l| Complex64::new(0.0, -l).exp());
    UnitaryMatrix::certify(u)
}

/// `(A - A*) / 2`; the result satisfies `X* = -X` exactly.
pub fn skew_part(a: &ComplexMatrix) -> ComplexMatrix {
    let k = a.dim();
    ComplexMatrix::from_fn(k, |(i, j)| (a.data[[i, j]] - a.data[[j, i]].conj()) * 0.5)
}

pub fn hermitian_part(a: &ComplexMatrix) -> ComplexMatrix {
    a.hermitian_part()
}

/// Complex standard Gaussian matrix (`E|z|^2 = 1`).
pub fn gaussian_matrix<R: Rng + ?Sized>(k: usize, rng: &mut R) -> ComplexMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut data = Array2::zeros((k, k));
    for z in data.iter_mut() {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        *z = Complex64::new(re * s, im * s);
    }
    ComplexMatrix { data }
}

/// Random skew-hermitian matrix with unit Frobenius norm.
pub fn random_skew<R: Rng + ?Sized>(k: usize, rng: &mut R) -> ComplexMatrix {
    let x = skew_part(&gaussian_matrix(k, rng));
    let n = x.frobenius();
    if n == 0.0 {
        // k = 1 with a real draw; fall back to i
        return ComplexMatrix::from_diag(&vec![Complex64::new(0.0, 1.0); k])
            .scale(1.0 / (k as f64).sqrt());
    }
    x.scale(1.0 / n)
}

/// Random positive semi-definite matrix `G G*`.
pub fn random_psd<R: Rng + ?Sized>(k: usize, rng: &mut R) -> ComplexMatrix {
    let g = gaussian_matrix(k, rng);
    g.matmul(&g.adjoint()).hermitian_part()
}

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the phases
/// of `diag(R)` moved into `Q`.
pub fn haar_unitary(k: usize, seed: u64) -> Result<UnitaryMatrix> {
    let mut rng = crate::seed::rng(seed);
    haar_unitary_with(k, &mut rng)
}

pub fn haar_unitary_with<R: Rng + ?Sized>(k: usize, rng: &mut R) -> Result<UnitaryMatrix> {
    if k == 0 {
        return Err(Error::InvalidArgument("dimension must be positive".into()));
    }
    let g = gaussian_matrix(k, rng);
    let (q, r) = g.data.qr()?;
    let mut q = q;
    for (j, mut col) in q.axis_iter_mut(Axis(1)).enumerate() {
        let d = r[[j, j]];
        let phase = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        col.mapv_inplace(|z| z * phase);
    }
    UnitaryMatrix::certify(ComplexMatrix { data: q })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_norms() {
        for k in [1, 3, 7] {
            let i = ComplexMatrix::identity(k);
            assert!((norm(&i, NormKind::Frobenius) - (k as f64).sqrt()).abs() < 1e-15);
            assert!((norm(&i, NormKind::Operator) - 1.0).abs() < 1e-12);
            assert!((norm(&i, NormKind::NormalizedHS) - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn three_four_five() {
        let d = ComplexMatrix::from_real_diag(&[3.0, 4.0]);
        assert_eq!(norm(&d, NormKind::Frobenius), 5.0);
        assert!((norm(&d, NormKind::Operator) - 4.0).abs() < 1e-12);
    }

    #[test]
    fn norm_names_round_trip() {
        for kind in NormKind::ALL {
            assert_eq!(kind.cli_name().parse::<NormKind>().unwrap(), kind);
        }
        assert!("l1".parse::<NormKind>().is_err());
    }

    #[test]
    fn absolute_value_examples() {
        let u = haar_unitary(5, 3).unwrap();
        let abs = absolute_value(u.matrix()).unwrap();
        assert!(abs.max_abs_diff(&ComplexMatrix::identity(5)) < 1e-12);

        let d = ComplexMatrix::from_diag(&[c(-2.0, 0.0), c(0.0, 3.0)]);
        let abs = absolute_value(&d).unwrap();
        assert!(abs.max_abs_diff(&ComplexMatrix::from_real_diag(&[2.0, 3.0])) < 1e-12);
    }

    #[test]
    fn absolute_value_preserves_frobenius_against_singular_values() {
        let mut rng = crate::seed::rng(11);
        for k in [2, 4, 8] {
            let a = gaussian_matrix(k, &mut rng);
            let s = singular_values(&a).unwrap();
            let oracle = s.iter().map(|x| x * x).sum::<f64>().sqrt();
            let abs = absolute_value(&a).unwrap();
            assert!((abs.frobenius() - oracle).abs() < 1e-10);
            assert!((a.frobenius() - oracle).abs() < 1e-10);
        }
    }

    #[test]
    fn involution_fixed_point_and_ties() {
        let one = UnitaryMatrix::identity(3);
        let b = nearest_involution(&one).unwrap();
        assert!(b.matrix().max_abs_diff(&ComplexMatrix::identity(3)) < 1e-14);

        // Re(i) = 0 goes to +1
        let a = UnitaryMatrix::certify(ComplexMatrix::from_diag(&[c(0.0, 1.0)])).unwrap();
        let b = nearest_involution(&a).unwrap();
        assert_eq!(b.matrix().get(0, 0), c(1.0, 0.0));
        let lhs = norm(&(b.matrix() - a.matrix()), NormKind::Operator);
        let rhs = norm(
            &(&ComplexMatrix::identity(1) - &a.matrix().matmul(a.matrix())),
            NormKind::Operator,
        );
        assert!((lhs - 2f64.sqrt()).abs() < 1e-14);
        assert!((rhs - 2.0).abs() < 1e-14);

        let w = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
        let a = UnitaryMatrix::certify(ComplexMatrix::from_diag(&[w])).unwrap();
        let b = nearest_involution(&a).unwrap();
        assert!((b.matrix().get(0, 0) - c(-1.0, 0.0)).norm() < 1e-14);
        assert!(((c(-1.0, 0.0) - w).norm() - 1.0).abs() < 1e-14);
        assert!(((c(1.0, 0.0) - w * w).norm() - 3f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn exp_skew_examples() {
        let z = exp_skew(&ComplexMatrix::zeros(4)).unwrap();
        assert_eq!(z.matrix(), &ComplexMatrix::identity(4));

        let x = ComplexMatrix::from_diag(&[c(0.0, PI)]);
        let e = exp_skew(&x).unwrap();
        assert!((e.matrix().get(0, 0) - c(-1.0, 0.0)).norm() < 1e-14);

        let h = ComplexMatrix::from_real_diag(&[1.0, 2.0]);
        assert!(matches!(exp_skew(&h), Err(Error::NotSkewHermitian(_))));
    }

    #[test]
    fn exp_skew_matches_taylor_series() {
        let mut rng = crate::seed::rng(5);
        let x = random_skew(4, &mut rng).scale(0.7);
        let mut term = ComplexMatrix::identity(4);
        let mut sum = ComplexMatrix::identity(4);
        for n in 1..40 {
            term = term.matmul(&x).scale(1.0 / n as f64);
            sum = &sum + &term;
        }
        let e = exp_skew(&x).unwrap();
        let err = e.matrix().max_abs_diff(&sum);
        assert!(err < 1e-13, "{err}");
    }

    #[test]
    fn skew_and_hermitian_parts_decompose() {
        let mut rng = crate::seed::rng(9);
        let a = gaussian_matrix(5, &mut rng);
        let s = skew_part(&a);
        let h = hermitian_part(&a);
        assert_eq!(s.adjoint(), s.scale(-1.0));
        assert_eq!(skew_part(&h).nnz(), 0);
        assert_eq!(skew_part(&s), s);
        assert!((&s + &h).max_abs_diff(&a) < 1e-15);
    }

    #[test]
    fn haar_is_deterministic_and_unitary() {
        let u = haar_unitary(6, 17).unwrap();
        let v = haar_unitary(6, 17).unwrap();
        assert!(u.is_certified());
        assert_eq!(u, v);
        let w = haar_unitary(1, 4).unwrap();
        assert!((w.matrix().get(0, 0).norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn certification_rejects_non_unitary() {
        let m = ComplexMatrix::from_real_diag(&[1.0, 1.1]);
        assert!(matches!(
            UnitaryMatrix::certify(m),
            Err(Error::NotUnitary(_))
        ));
    }

    #[test]
    fn sparse_and_dense_products_agree() {
        let mut rng = crate::seed::rng(2);
        let a = gaussian_matrix(40, &mut rng);
        let mut p = ComplexMatrix::zeros(40);
        for i in 0..40 {
            p.set(i, (i * 7 + 3) % 40, c(1.0, 0.0));
        }
        let sparse = p.matmul(&a);
        let dense = ComplexMatrix::from_array(p.as_array().dot(a.as_array())).unwrap();
        assert!(sparse.max_abs_diff(&dense) < 1e-15);
    }

    #[test]
    fn power_iteration_agrees_with_svd() {
        let mut rng = crate::seed::rng(21);
        let a = gaussian_matrix(30, &mut rng);
        let svd = singular_values(&a).unwrap().into_iter().fold(0.0, f64::max);
        let pi = power_iteration_opnorm(&a);
        assert!((svd - pi).abs() <= 1e-6 * svd);
    }

    #[test]
    fn hermitian_eigen_residual() {
        let mut rng = crate::seed::rng(5);
        for k in [1, 2, 4, 9] {
            let h = gaussian_matrix(k, &mut rng).hermitian_part();
            let (vals, vecs) = hermitian_eigen(&h).unwrap();
            let lhs = h.matmul(&vecs);
            let rhs = vecs.matmul(&ComplexMatrix::from_real_diag(&vals));
            assert!(lhs.max_abs_diff(&rhs) < 1e-12);
        }
    }

    #[test]
    fn dump_round_trip() {
        let mut rng = crate::seed::rng(1);
        let a = gaussian_matrix(3, &mut rng);
        let json = serde_json::to_string(&a.to_dump()).unwrap();
        let back: MatrixDump = serde_json::from_str(&json).unwrap();
        assert_eq!(ComplexMatrix::from_dump(&back).unwrap(), a);
    }
}
