//! Explicit matrix families: the clock/shift pair in `U(n)`, the `BS(2,3)`
//! pair in `U(6n)`, and seeded perturbations of diagonal representations.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;

use crate::almostrep::AlmostRep;
use crate::groups::{Backend, NormalFormGroup, Presentation};
use crate::normkit::{exp_skew, norm, random_skew, ComplexMatrix, NormKind, UnitaryMatrix};
use crate::seed::rng_for;
use crate::{Error, Result};

fn root_of_unity(n: usize, j: usize) -> Complex64 {
    // reduce first so large exponents keep full accuracy
    Complex64::from_polar(1.0, 2.0 * PI * (j % n) as f64 / n as f64)
}

/// Clock `A = diag(1, w, ..., w^{n-1})` and shift `B e_j = e_{j+1}`,
/// `w = exp(2 pi i / n)`; `A B A* B* = w 1`.
pub fn voiculescu_pair(n: usize) -> Result<(UnitaryMatrix, UnitaryMatrix)> {
    if n < 2 {
        return Err(Error::InvalidArgument("clock/shift needs n >= 2".into()));
    }
    let a = ComplexMatrix::from_diag(&(0..n).map(|j| root_of_unity(n, j)).collect::<Vec<_>>());
    let b = ComplexMatrix::from_fn(n, |(i, j)| {
        if i == (j + 1) % n {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    Ok((UnitaryMatrix::certify(a)?, UnitaryMatrix::certify(b)?))
}

/// The clock/shift pair as an almost-representation of `Z^2`.
pub fn voiculescu_rep(n: usize) -> Result<AlmostRep> {
    let (a, b) = voiculescu_pair(n)?;
    AlmostRep::new(Presentation::free_abelian(2)?, vec![a, b])
}

/// Index data for the `BS(2,3)` construction in dimension `6n`.
#[derive(Debug, Clone, PartialEq)]
pub struct BsBlockData {
    pub n: usize,
    pub omega: Complex64,
    pub s_basis: Vec<[usize; 6]>,
    pub c_basis: Vec<[usize; 6]>,
    pub b_block: [[f64; 6]; 6],
}

/// `(1/sqrt 2) * blockdiag([[1, 1], [1, -1]] x 3)`.
pub fn bs_block() -> [[f64; 6]; 6] {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut b = [[0.0; 6]; 6];
    for t in 0..3 {
        b[2 * t][2 * t] = h;
        b[2 * t][2 * t + 1] = h;
        b[2 * t + 1][2 * t] = h;
        b[2 * t + 1][2 * t + 1] = -h;
    }
    b
}

impl BsBlockData {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument(
                "block count must be at least 1".into(),
            ));
        }
        let s_basis = (0..n)
            .map(|j| {
                [
                    3 * j,
                    3 * j + 1,
                    3 * j + 2,
                    3 * j + 3 * n,
                    3 * j + 3 * n + 1,
                    3 * j + 3 * n + 2,
                ]
            })
            .collect();
        let c_basis = (0..n)
            .map(|j| {
                [
                    2 * j,
                    2 * j + 2 * n,
                    2 * j + 4 * n,
                    2 * j + 1,
                    2 * j + 2 * n + 1,
                    2 * j + 4 * n + 1,
                ]
            })
            .collect();
        Ok(Self {
            n,
            omega: root_of_unity(6 * n, 1),
            s_basis,
            c_basis,
            b_block: bs_block(),
        })
    }

    pub fn dim(&self) -> usize {
        6 * self.n
    }

    /// `A = diag(w^j)`.
    pub fn a(&self) -> ComplexMatrix {
        let d = self.dim();
        ComplexMatrix::from_diag(&(0..d).map(|j| root_of_unity(d, j)).collect::<Vec<_>>())
    }

    /// Column `C[j][r]` of `B` holds `b_block[s][r]` at row `S[j][s]`.
    pub fn b(&self) -> ComplexMatrix {
        let mut b = ComplexMatrix::zeros(self.dim());
        for j in 0..self.n {
            for r in 0..6 {
                for s in 0..6 {
                    let v = self.b_block[s][r];
                    if v != 0.0 {
                        b.set(
                            self.s_basis[j][s],
                            self.c_basis[j][r],
                            Complex64::new(v, 0.0),
                        );
                    }
                }
            }
        }
        b
    }

    /// `sum_j [2(|1-w^2|^2 + |1-w^4|^2) + 3|1-w^3|^2]`, an upper bound for
    /// `|B^-1 A^2 B - A^3|_F^2`.
    pub fn block_bound_sum(&self) -> f64 {
        let d = self.dim();
        let gap = |p: usize| (Complex64::new(1.0, 0.0) - root_of_unity(d, p)).norm_sqr();
        self.n as f64 * (2.0 * (gap(2) + gap(4)) + 3.0 * gap(3))
    }
}

/// `A_n, B_n in U(6n)` with `|B^-1 A^2 B - A^3|_F = O(1/n)` while
/// `|A B^-1 A B - B^-1 A B A|_F = sqrt(6n) - O(1)`.
pub fn bs23_pair(n: usize) -> Result<(UnitaryMatrix, UnitaryMatrix)> {
    let data = BsBlockData::new(n)?;
    Ok((
        UnitaryMatrix::certify(data.a())?,
        UnitaryMatrix::certify(data.b())?,
    ))
}

/// The pair as an almost-representation of `BS(2,3) = <a, b | b^-1 a^2 b a^-3>`.
pub fn bs23_rep(n: usize) -> Result<AlmostRep> {
    let (a, b) = bs23_pair(n)?;
    AlmostRep::new(Presentation::baumslag_solitar(2, 3)?, vec![a, b])
}

/// `|B^-1 A^2 B - A^3|` in the given norm.
pub fn bs23_defect(n: usize, kind: NormKind) -> Result<f64> {
    let (a, b) = bs23_pair(n)?;
    Ok(bs23_relation_gap(&a, &b, kind))
}

pub fn bs23_relation_gap(a: &UnitaryMatrix, b: &UnitaryMatrix, kind: NormKind) -> f64 {
    let (a, b) = (a.matrix(), b.matrix());
    let a2 = a.matmul(a);
    let a3 = a2.matmul(a);
    let lhs = b.adjoint().matmul(&a2).matmul(b);
    norm(&(&lhs - &a3), kind)
}

/// `|A B^-1 A B - B^-1 A B A|_F`.
pub fn bs23_commutator_gap(n: usize) -> Result<f64> {
    let (a, b) = bs23_pair(n)?;
    Ok(commutator_gap(&a, &b))
}

pub fn commutator_gap(a: &UnitaryMatrix, b: &UnitaryMatrix) -> f64 {
    let (a, b) = (a.matrix(), b.matrix());
    let conj = b.adjoint().matmul(a).matmul(b);
    (&a.matmul(&conj) - &conj.matmul(a)).frobenius()
}

/// `|C B^-1 S B - B^-1 S B C|_F^2` for the block `B`,
/// `S = diag(1, 1, 1, -1, -1, -1)`, `C = diag(1, z, z^2, 1, z, z^2)`, `z = e^{2 pi i/3}`.
pub fn block_constant() -> f64 {
    let b = ComplexMatrix::from_fn(6, |(i, j)| Complex64::new(bs_block()[i][j], 0.0));
    let s = ComplexMatrix::from_real_diag(&[1.0, 1.0, 1.0, -1.0, -1.0, -1.0]);
    let z = |p: usize| root_of_unity(3, p);
    let c = ComplexMatrix::from_diag(&[z(0), z(1), z(2), z(0), z(1), z(2)]);
    let conj = b.adjoint().matmul(&s).matmul(&b);
    let diff = &c.matmul(&conj) - &conj.matmul(&c);
    diff.frobenius().powi(2)
}

/// A diagonal genuine representation of `group` in `U(k)`: `m`-th roots of
/// unity for `Z/m`, random phases for `Z^d`.
pub fn diagonal_rep(group: &NormalFormGroup, k: usize, seed: u64) -> Result<AlmostRep> {
    if k == 0 {
        return Err(Error::InvalidArgument("dimension must be positive".into()));
    }
    let mut rng = rng_for(seed, 0);
    let images = (0..group.rank())
        .map(|_| {
            let diag: Vec<Complex64> = match group.backend() {
                Backend::Cyclic { order } => (0..k)
                    .map(|_| root_of_unity(order as usize, rng.random_range(0..order as usize)))
                    .collect(),
                Backend::FreeAbelian { .. } => (0..k)
                    .map(|_| Complex64::from_polar(1.0, rng.random_range(0.0..2.0 * PI)))
                    .collect(),
            };
            UnitaryMatrix::certify(ComplexMatrix::from_diag(&diag))
        })
        .collect::<Result<Vec<_>>>()?;
    AlmostRep::new(group.presentation().clone(), images)
}

/// `s -> exp(eps X_s) pi(s)` with `pi` from [`diagonal_rep`] and random skew
/// `X_s` of unit Frobenius norm. For a fixed seed, `pi` and the `X_s` do not
/// depend on `eps`.
pub fn perturbed_rep(group: &NormalFormGroup, k: usize, eps: f64, seed: u64) -> Result<AlmostRep> {
    if !(eps >= 0.0 && eps.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "perturbation size must be >= 0, got {eps}"
        )));
    }
    let pi = diagonal_rep(group, k, seed)?;
    let images = pi
        .images()
        .iter()
        .enumerate()
        .map(|(s, u)| {
            let x = random_skew(k, &mut rng_for(seed, 1 + s as u64));
            exp_skew(&x.scale(eps))?.mul(u).recertify()
        })
        .collect::<Result<Vec<_>>>()?;
    AlmostRep::new(group.presentation().clone(), images)
}

/// Least-squares line through `(ln x, ln y)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogLogFit {
    pub slope: f64,
    pub intercept: f64,
}

pub fn loglog_fit(xs: &[f64], ys: &[f64]) -> Result<LogLogFit> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return Err(Error::InvalidArgument(
            "a log-log fit needs at least two points".into(),
        ));
    }
    if xs.iter().chain(ys).any(|&v| !(v > 0.0 && v.is_finite())) {
        return Err(Error::InvalidArgument(
            "a log-log fit needs positive finite values".into(),
        ));
    }
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let m = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / m;
    let my = ly.iter().sum::<f64>() / m;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::InvalidArgument(
            "a log-log fit needs distinct x values".into(),
        ));
    }
    let slope = sxy / sxx;
    Ok(LogLogFit {
        slope,
        intercept: my - slope * mx,
    })
}
