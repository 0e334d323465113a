//! Cochains on a window, the Hochschild and group 2-cocycles of a lift, the
//! least-squares coboundary solve and the exponential correction.
//!
//! For a lift `U = phi~` with Frobenius defect `eps`:
//!
//! * `c(g, h) = (U_g U_h - U_gh) / eps`,
//! * `alpha(g, h) = c(g, h) U_gh*`,
//! * `(d beta)(g, h) = U_g beta(h) U_g* - beta(gh) + beta(g)`,
//! * `psi(g) = exp(-eps beta(g)) U_g`.
//!
//! If `d beta` fits `alpha` to `O(eps)`, `psi` is multiplicative to
//! `O(eps^2)`, which is what [`diminish`] iterates.

use std::sync::Arc;

use ndarray::Array2;
use ndarray_linalg::{JobSvd, SVDDC};
use num_complex::Complex64;
use serde::Serialize;

use crate::almostrep::{AlmostRep, Lift};
use crate::groups::{ball, NormalFormGroup, Pair, Window};
use crate::normkit::{exp_skew, skew_part, ComplexMatrix, NormKind, UnitaryMatrix};
use crate::{Error, Result};

/// Relative cutoff for singular values in the dense pseudo-inverse.
pub const SVD_RTOL: f64 = 1e-10;
/// Relative tolerance on the normal-equation residual for CGLS.
pub const CGLS_RTOL: f64 = 1e-10;
/// Largest system (complex unknowns) solved by the dense SVD under [`SolveMethod::Auto`].
pub const DENSE_MAX_UNKNOWNS: usize = 10_000;
/// Defect below which a representation counts as genuine.
pub const DEFECT_FLOOR: f64 = 1e-12;

/// A map from window elements to `k x k` matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct Cochain1 {
    window: Arc<Window>,
    values: Vec<ComplexMatrix>,
}

impl Cochain1 {
    pub fn new(window: Arc<Window>, values: Vec<ComplexMatrix>) -> Result<Self> {
        if values.len() != window.len() {
            return Err(Error::WindowMismatch);
        }
        Ok(Self { window, values })
    }

    pub fn zeros(window: Arc<Window>, k: usize) -> Self {
        let values = vec![ComplexMatrix::zeros(k); window.len()];
        Self { window, values }
    }

    pub fn window(&self) -> &Arc<Window> {
        &self.window
    }

    pub fn value(&self, i: usize) -> &ComplexMatrix {
        &self.values[i]
    }

    pub fn values(&self) -> &[ComplexMatrix] {
        &self.values
    }

    /// `max_g |beta(g)|_F`.
    pub fn max_frobenius(&self) -> f64 {
        self.values
            .iter()
            .map(ComplexMatrix::frobenius)
            .fold(0.0, f64::max)
    }
}

/// A map from admissible pairs of a window to `k x k` matrices. Cocycles of
/// a lift remember the defect they were normalized by.
#[derive(Debug, Clone, PartialEq)]
pub struct Cochain2 {
    window: Arc<Window>,
    scale: Option<f64>,
    values: Vec<Option<ComplexMatrix>>,
}

impl Cochain2 {
    fn from_fn(
        window: Arc<Window>,
        scale: Option<f64>,
        mut f: impl FnMut(Pair) -> ComplexMatrix,
    ) -> Self {
        let mut values = vec![None; window.len() * window.len()];
        for p in window.pairs() {
            values[window.pair_slot(p.g, p.h)] = Some(f(p));
        }
        Self {
            window,
            scale,
            values,
        }
    }

    pub fn window(&self) -> &Arc<Window> {
        &self.window
    }

    /// The defect `c` was divided by, if this is a cocycle of a lift.
    pub fn scale(&self) -> Option<f64> {
        self.scale
    }

    /// Value at `(g, h)`; `None` unless `gh` lies in the window.
    pub fn get(&self, g: usize, h: usize) -> Option<&ComplexMatrix> {
        self.values[self.window.pair_slot(g, h)].as_ref()
    }

    fn at(&self, g: usize, h: usize) -> &ComplexMatrix {
        self.get(g, h).expect("admissible pair")
    }

    pub fn max_frobenius(&self) -> f64 {
        self.values
            .iter()
            .flatten()
            .map(ComplexMatrix::frobenius)
            .fold(0.0, f64::max)
    }

    /// `sqrt(sum |c(g, h)|_F^2)` over admissible pairs.
    pub fn l2_norm(&self) -> f64 {
        self.values
            .iter()
            .flatten()
            .map(|m| m.frobenius().powi(2))
            .sum::<f64>()
            .sqrt()
    }
}

fn same_window(a: &Arc<Window>, b: &Arc<Window>) -> Result<()> {
    if Arc::ptr_eq(a, b) || **a == **b {
        Ok(())
    } else {
        Err(Error::WindowMismatch)
    }
}

/// `c(g, h) = (U_g U_h - U_gh) / eps`, with `c(1, g) = c(g, 1) = c(g, g^-1) = 0`
/// pinned; the zero cochain when `eps = 0`.
pub fn hochschild_cocycle(lift: &Lift, eps: f64) -> Result<Cochain2> {
    if !(eps >= 0.0 && eps.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "defect must be finite and >= 0, got {eps}"
        )));
    }
    let w = lift.window().clone();
    let k = lift.dim();
    let id = w.identity();
    Ok(Cochain2::from_fn(w.clone(), Some(eps), |p| {
        if eps == 0.0 || p.g == id || p.h == id || p.gh == id {
            return ComplexMatrix::zeros(k);
        }
        let prod = lift.value(p.g).matrix().matmul(lift.value(p.h).matrix());
        (&prod - lift.value(p.gh).matrix()).scale(1.0 / eps)
    }))
}

/// `alpha(g, h) = c(g, h) U_gh*`.
pub fn to_group_cocycle(c: &Cochain2, lift: &Lift) -> Result<Cochain2> {
    same_window(c.window(), lift.window())?;
    Ok(Cochain2::from_fn(c.window.clone(), c.scale, |p| {
        c.at(p.g, p.h).matmul(&lift.value(p.gh).matrix().adjoint())
    }))
}

/// `(d beta)(g, h) = U_g beta(h) U_g* - beta(gh) + beta(g)`.
pub fn coboundary1(beta: &Cochain1, lift: &Lift) -> Result<Cochain2> {
    same_window(beta.window(), lift.window())?;
    Ok(Cochain2::from_fn(beta.window.clone(), None, |p| {
        let u = lift.value(p.g).matrix();
        let conj = u.matmul(beta.value(p.h)).matmul(&u.adjoint());
        &(&conj - beta.value(p.gh)) + beta.value(p.g)
    }))
}

/// The coboundary map restricted to `beta(1) = 0` and to pairs without the
/// identity (where both sides vanish), on flattened row-major blocks.
struct CoboundaryOp<'a> {
    lift: &'a Lift,
    pairs: Vec<Pair>,
    k: usize,
}

impl<'a> CoboundaryOp<'a> {
    fn new(lift: &'a Lift) -> Self {
        let w = lift.window();
        let id = w.identity();
        let pairs = w.pairs().filter(|p| p.g != id && p.h != id).collect();
        Self {
            lift,
            pairs,
            k: lift.dim(),
        }
    }

    fn block(&self) -> usize {
        self.k * self.k
    }

    fn unknowns(&self) -> usize {
        (self.lift.window().len() - 1) * self.block()
    }

    fn equations(&self) -> usize {
        self.pairs.len() * self.block()
    }

    /// Column offset of element `i`, `None` for the identity.
    fn col(&self, i: usize) -> Option<usize> {
        (i != self.lift.window().identity()).then(|| (i - 1) * self.block())
    }

    fn mat(&self, v: &[Complex64]) -> ComplexMatrix {
        ComplexMatrix::from_array(
            Array2::from_shape_vec((self.k, self.k), v.to_vec()).expect("block shape"),
        )
        .expect("finite block")
    }

    fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        let b = self.block();
        let mut out = vec![Complex64::new(0.0, 0.0); self.equations()];
        for (t, p) in self.pairs.iter().enumerate() {
            let row = &mut out[t * b..(t + 1) * b];
            if let Some(ch) = self.col(p.h) {
                let u = self.lift.value(p.g).matrix();
                let conj = u.matmul(&self.mat(&x[ch..ch + b])).matmul(&u.adjoint());
                for (r, z) in row.iter_mut().zip(conj.as_array().iter()) {
                    *r += z;
                }
            }
            if let Some(cgh) = self.col(p.gh) {
                for (r, z) in row.iter_mut().zip(&x[cgh..cgh + b]) {
                    *r -= z;
                }
            }
            if let Some(cg) = self.col(p.g) {
                for (r, z) in row.iter_mut().zip(&x[cg..cg + b]) {
                    *r += z;
                }
            }
        }
        out
    }

    fn apply_adjoint(&self, y: &[Complex64]) -> Vec<Complex64> {
        let b = self.block();
        let mut out = vec![Complex64::new(0.0, 0.0); self.unknowns()];
        for (t, p) in self.pairs.iter().enumerate() {
            let yt = &y[t * b..(t + 1) * b];
            if let Some(ch) = self.col(p.h) {
                let u = self.lift.value(p.g).matrix();
                let back = u.adjoint().matmul(&self.mat(yt)).matmul(u);
                for (o, z) in out[ch..ch + b].iter_mut().zip(back.as_array().iter()) {
                    *o += z;
                }
            }
            if let Some(cgh) = self.col(p.gh) {
                for (o, z) in out[cgh..cgh + b].iter_mut().zip(yt) {
                    *o -= z;
                }
            }
            if let Some(cg) = self.col(p.g) {
                for (o, z) in out[cg..cg + b].iter_mut().zip(yt) {
                    *o += z;
                }
            }
        }
        out
    }

    /// Dense matrix: `vec(U T U*)` is `(U kron conj U) vec(T)` row-major.
    fn assemble(&self) -> Array2<Complex64> {
        let (b, k) = (self.block(), self.k);
        let mut a = Array2::<Complex64>::zeros((self.equations(), self.unknowns()));
        for (t, p) in self.pairs.iter().enumerate() {
            let r0 = t * b;
            if let Some(ch) = self.col(p.h) {
                let u = self.lift.value(p.g).matrix().as_array();
                for i in 0..k {
                    for j in 0..k {
                        for pp in 0..k {
                            let uip = u[[i, pp]];
                            if uip == Complex64::new(0.0, 0.0) {
                                continue;
                            }
                            for q in 0..k {
                                a[[r0 + i * k + j, ch + pp * k + q]] += uip * u[[j, q]].conj();
                            }
                        }
                    }
                }
            }
            for d in 0..b {
                if let Some(cgh) = self.col(p.gh) {
                    a[[r0 + d, cgh + d]] -= Complex64::new(1.0, 0.0);
                }
                if let Some(cg) = self.col(p.g) {
                    a[[r0 + d, cg + d]] += Complex64::new(1.0, 0.0);
                }
            }
        }
        a
    }

    fn flatten_rhs(&self, alpha: &Cochain2) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(self.equations());
        for p in &self.pairs {
            out.extend(alpha.at(p.g, p.h).as_array().iter().copied());
        }
        out
    }

    fn unflatten(&self, x: &[Complex64]) -> Vec<ComplexMatrix> {
        let n = self.lift.window().len();
        (0..n)
            .map(|i| match self.col(i) {
                None => ComplexMatrix::zeros(self.k),
                Some(c) => self.mat(&x[c..c + self.block()]),
            })
            .collect()
    }

    fn flatten(&self, values: &[ComplexMatrix]) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(self.unknowns());
        for (i, v) in values.iter().enumerate() {
            if self.col(i).is_some() {
                out.extend(v.as_array().iter().copied());
            }
        }
        out
    }
}

fn l2(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn sq(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}

/// Which least-squares solver to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SolveMethod {
    /// Dense SVD up to [`DENSE_MAX_UNKNOWNS`] complex unknowns, CGLS above.
    Auto,
    /// Minimal-norm solution via the thin SVD pseudo-inverse.
    Dense,
    /// Matrix-free CGLS from zero (converges to the minimal-norm solution).
    Iterative,
}

/// Result of [`solve_coboundary`].
#[derive(Debug, Clone)]
pub struct CoboundarySolution {
    /// Skew-symmetrized solution with `beta(1) = 0`.
    pub beta: Cochain1,
    /// `sqrt(sum |d beta - alpha|_F^2)` after skew-symmetrization.
    pub residual: f64,
    /// The same quantity for the unsymmetrized minimal-norm solution.
    pub raw_residual: f64,
    pub method: SolveMethod,
    pub iterations: usize,
}

fn solve_dense(op: &CoboundaryOp, rhs: &[Complex64]) -> Result<Vec<Complex64>> {
    let a = op.assemble();
    let (u, s, vt) = a.svddc(JobSvd::Some)?;
    let (u, vt) = match (u, vt) {
        (Some(u), Some(vt)) => (u, vt),
        _ => return Err(Error::LinAlg("SVD returned no singular vectors".into())),
    };
    let smax = s.iter().copied().fold(0.0, f64::max);
    let cutoff = SVD_RTOL * smax;
    let b = ndarray::Array1::from(rhs.to_vec());
    // x = V S^+ U* b
    let mut coef = u.t().mapv(|z| z.conj()).dot(&b);
    for (c, &sv) in coef.iter_mut().zip(s.iter()) {
        *c = if sv > cutoff && sv > 0.0 {
            *c / sv
        } else {
            Complex64::new(0.0, 0.0)
        };
    }
    let x = vt.t().mapv(|z| z.conj()).dot(&coef);
    Ok(x.to_vec())
}

fn solve_cgls(op: &CoboundaryOp, rhs: &[Complex64]) -> Result<(Vec<Complex64>, usize)> {
    let n = op.unknowns();
    let max_iter = 10 * 2 * n;
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    let mut r = rhs.to_vec();
    let mut s = op.apply_adjoint(&r);
    let target = CGLS_RTOL * l2(&s);
    if target == 0.0 {
        return Ok((x, 0));
    }
    let mut p = s.clone();
    let mut gamma = sq(&s);
    for it in 1..=max_iter {
        let q = op.apply(&p);
        let qq = sq(&q);
        if qq == 0.0 {
            return Ok((x, it));
        }
        let step = gamma / qq;
        for (xi, pi) in x.iter_mut().zip(&p) {
            *xi += pi * step;
        }
        for (ri, qi) in r.iter_mut().zip(&q) {
            *ri -= qi * step;
        }
        s = op.apply_adjoint(&r);
        let gamma_new = sq(&s);
        if gamma_new.sqrt() <= target {
            return Ok((x, it));
        }
        let beta = gamma_new / gamma;
        for (pi, si) in p.iter_mut().zip(&s) {
            *pi = si + *pi * beta;
        }
        gamma = gamma_new;
    }
    Err(Error::SolverNonConvergence {
        iterations: max_iter,
        residual: l2(&r),
    })
}

/// Minimal-norm least-squares `beta` with `d beta ~ alpha` and `beta(1) = 0`,
/// then `beta <- (beta - beta*) / 2`; the residual is re-measured after the
/// symmetrization.
pub fn solve_coboundary(alpha: &Cochain2, lift: &Lift) -> Result<CoboundarySolution> {
    solve_coboundary_with(alpha, lift, SolveMethod::Auto)
}

pub fn solve_coboundary_with(
    alpha: &Cochain2,
    lift: &Lift,
    method: SolveMethod,
) -> Result<CoboundarySolution> {
    same_window(alpha.window(), lift.window())?;
    let op = CoboundaryOp::new(lift);
    let rhs = op.flatten_rhs(alpha);
    let method = match method {
        SolveMethod::Auto if op.unknowns() <= DENSE_MAX_UNKNOWNS => SolveMethod::Dense,
        SolveMethod::Auto => SolveMethod::Iterative,
        m => m,
    };
    let (x, iterations) = if op.unknowns() == 0 || op.equations() == 0 {
        (vec![Complex64::new(0.0, 0.0); op.unknowns()], 0)
    } else if method == SolveMethod::Dense {
        (solve_dense(&op, &rhs)?, 0)
    } else {
        solve_cgls(&op, &rhs)?
    };
    let misfit = |x: &[Complex64]| {
        let ax = op.apply(x);
        let d: Vec<Complex64> = ax.iter().zip(&rhs).map(|(a, b)| a - b).collect();
        l2(&d)
    };
    let raw_residual = misfit(&x);
    let mut values = op.unflatten(&x);
    for v in values.iter_mut() {
        *v = skew_part(v);
    }
    values[lift.window().identity()] = ComplexMatrix::zeros(lift.dim());
    let residual = misfit(&op.flatten(&values));
    Ok(CoboundarySolution {
        beta: Cochain1::new(lift.window().clone(), values)?,
        residual,
        raw_residual,
        method,
        iterations,
    })
}

/// `psi(s) = exp(-eps beta(s)) phi~(s)` on the generators.
pub fn correct(lift: &Lift, beta: &Cochain1, eps: f64) -> Result<AlmostRep> {
    same_window(beta.window(), lift.window())?;
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "correction needs eps > 0, got {eps}"
        )));
    }
    let w = lift.window();
    let group = w.group();
    let images = (0..group.rank())
        .map(|s| {
            let i = w.index_of(&group.generator(s)).ok_or_else(|| {
                Error::InvalidArgument("window must contain the generators".into())
            })?;
            let step = exp_skew(&beta.value(i).scale(-eps))?;
            step.mul(lift.value(i)).recertify()
        })
        .collect::<Result<Vec<UnitaryMatrix>>>()?;
    AlmostRep::new(group.presentation().clone(), images)
}

/// One run of the defect-diminishing loop, serialized as one JSON object.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CorrectionReport {
    pub defect_before: f64,
    pub defect_after: f64,
    /// Coboundary fit residual of the last step.
    pub residual: f64,
    /// `max_g |beta(g)|_F` of the last step.
    pub beta_norm: f64,
    pub iterations: usize,
    pub stalled: bool,
}

/// One step: lift, cocycle, solve, correct. `eps` is the Frobenius defect
/// of `phi` and must be positive.
pub fn correction_step(
    phi: &AlmostRep,
    window: &Arc<Window>,
    eps: f64,
) -> Result<(AlmostRep, CoboundarySolution)> {
    let lift = Lift::new(phi, window.clone())?;
    let c = hochschild_cocycle(&lift, eps)?;
    let alpha = to_group_cocycle(&c, &lift)?;
    let sol = solve_coboundary(&alpha, &lift)?;
    let psi = correct(&lift, &sol.beta, eps)?;
    Ok((psi, sol))
}

/// Repeats [`correction_step`] on the ball of the given radius while the
/// Frobenius defect shrinks by at least `stall_factor` per step. Stops at
/// `max_iters`, at defect `<= 1e-12`, or on a stall; a stalled step is only
/// kept if it did not increase the defect.
pub fn diminish(
    phi: &AlmostRep,
    group: &NormalFormGroup,
    radius: usize,
    max_iters: usize,
    stall_factor: f64,
) -> Result<(AlmostRep, CorrectionReport)> {
    if radius < 2 {
        return Err(Error::InvalidArgument("radius must be at least 2".into()));
    }
    if !(stall_factor > 0.0 && stall_factor < 1.0) {
        return Err(Error::InvalidArgument(
            "stall factor must lie in (0, 1)".into(),
        ));
    }
    let window = Arc::new(ball(group, radius));
    let defect_before = phi.defect(NormKind::Frobenius)?;
    let mut current = phi.clone();
    let mut defect = defect_before;
    let mut report = CorrectionReport {
        defect_before,
        defect_after: defect_before,
        residual: 0.0,
        beta_norm: 0.0,
        iterations: 0,
        stalled: false,
    };
    while report.iterations < max_iters && defect > DEFECT_FLOOR {
        let (psi, sol) = correction_step(&current, &window, defect)?;
        let next = psi.defect(NormKind::Frobenius)?;
        report.iterations += 1;
        report.residual = sol.residual;
        report.beta_norm = sol.beta.max_frobenius();
        if next > stall_factor * defect {
            report.stalled = true;
            if next <= defect {
                current = psi;
                defect = next;
            }
            break;
        }
        current = psi;
        defect = next;
    }
    report.defect_after = defect;
    Ok((current, report))
}

/// Maxima over the window of the identity defects satisfied by `c`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CocycleResiduals {
    /// `U_g c(h,k) - c(gh,k) + c(g,hk) - c(g,h) U_k` over admissible triples.
    pub hochschild: f64,
    /// `c(g,h)* - c(h^-1, g^-1)` over admissible pairs.
    pub symmetry: f64,
    /// `d alpha(g,h,k) - eps [U_g c(h,k) c(g,hk)* - c(g,h) U_k c(gh,k)*]`.
    pub group_cocycle: f64,
    /// `d alpha(g,h,k)` itself, which is `O(eps)` rather than zero at finite size.
    pub group_cocycle_raw: f64,
    /// `max |c(g,h)|_F`.
    pub scale: f64,
}

/// The Hochschild identity, the adjoint symmetry and the group 2-cocycle
/// identity for `alpha = c U*`. With `alpha` built from `c` and a unitary
/// lift, `d alpha` equals `eps [U_g c(h,k) c(g,hk)* - c(g,h) U_k c(gh,k)*]`
/// exactly; that difference is the reported `group_cocycle` residual.
pub fn cocycle_residuals(c: &Cochain2, lift: &Lift) -> Result<CocycleResiduals> {
    same_window(c.window(), lift.window())?;
    let w = lift.window();
    let alpha = to_group_cocycle(c, lift)?;
    let eps = c.scale.unwrap_or(0.0);
    let u = |i: usize| lift.value(i).matrix();
    let (mut hoch, mut grp, mut raw) = (0.0f64, 0.0f64, 0.0f64);
    for t in w.triples() {
        let h = &(&(&u(t.g).matmul(c.at(t.h, t.k)) - c.at(t.gh, t.k)) + c.at(t.g, t.hk))
            - &c.at(t.g, t.h).matmul(u(t.k));
        hoch = hoch.max(h.frobenius());

        let act = u(t.g).matmul(alpha.at(t.h, t.k)).matmul(&u(t.g).adjoint());
        let da = &(&(&act - alpha.at(t.gh, t.k)) + alpha.at(t.g, t.hk)) - alpha.at(t.g, t.h);
        raw = raw.max(da.frobenius());
        let first = u(t.g)
            .matmul(c.at(t.h, t.k))
            .matmul(&c.at(t.g, t.hk).adjoint());
        let second = c
            .at(t.g, t.h)
            .matmul(u(t.k))
            .matmul(&c.at(t.gh, t.k).adjoint());
        let predicted = (&first - &second).scale(eps);
        grp = grp.max((&da - &predicted).frobenius());
    }
    let mut sym = 0.0f64;
    for p in w.pairs() {
        let other = c.at(w.inverse(p.h), w.inverse(p.g));
        sym = sym.max((&c.at(p.g, p.h).adjoint() - other).frobenius());
    }
    Ok(CocycleResiduals {
        hochschild: hoch,
        symmetry: sym,
        group_cocycle: grp,
        group_cocycle_raw: raw,
        scale: c.max_frobenius(),
    })
}
