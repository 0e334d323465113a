//! Almost-representations `S -> U(k)`: defect and distance functionals, the
//! lift to a window, and the relator bound `|phi(r) - 1| <= K_r * defect`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::groups::{commutator, Presentation, Window};
use crate::normkit::{
    nearest_involution, norm, ComplexMatrix, MatrixDump, NormKind, UnitaryMatrix,
};
use crate::words::{conjugation_product, Conjugate, Letter, Sign, Word};
use crate::{Error, Result};

/// Tolerance for treating a candidate as a genuine homomorphism.
pub const HOM_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct AlmostRep {
    presentation: Presentation,
    images: Vec<UnitaryMatrix>,
}

impl AlmostRep {
    pub fn new(presentation: Presentation, images: Vec<UnitaryMatrix>) -> Result<Self> {
        if images.len() != presentation.rank() {
            return Err(Error::MissingGenerator(
                images.len().min(presentation.rank()),
            ));
        }
        let k = images[0].dim();
        for u in &images {
            if u.dim() != k {
                return Err(Error::DimensionMismatch {
                    expected: k,
                    found: u.dim(),
                });
            }
            if !u.is_certified() {
                return Err(Error::InvalidArgument(
                    "generator images must be certified unitaries".into(),
                ));
            }
        }
        Ok(Self {
            presentation,
            images,
        })
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn dim(&self) -> usize {
        self.images[0].dim()
    }

    pub fn images(&self) -> &[UnitaryMatrix] {
        &self.images
    }

    pub fn image(&self, s: usize) -> &UnitaryMatrix {
        &self.images[s]
    }

    pub fn evaluate(&self, w: &Word) -> Result<UnitaryMatrix> {
        w.evaluate(&self.images)
    }

    /// `max_r |phi(r) - 1|`; zero for a presentation without relators.
    pub fn defect(&self, kind: NormKind) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for r in self.presentation.relators() {
            let m = self.evaluate(r)?.into_matrix().minus_identity();
            worst = worst.max(norm(&m, kind));
        }
        Ok(worst)
    }

    /// Simultaneous conjugation `s -> U phi(s) U*`.
    pub fn conjugate(&self, u: &UnitaryMatrix) -> Result<Self> {
        let images = self
            .images
            .iter()
            .map(|x| {
                UnitaryMatrix::certify(u.matrix().matmul(x.matrix()).matmul(&u.matrix().adjoint()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.presentation.clone(), images)
    }

    pub fn to_dump(&self) -> RepDump {
        RepDump {
            presentation: self.presentation.to_string(),
            dim: self.dim(),
            images: self.images.iter().map(|u| u.matrix().to_dump()).collect(),
        }
    }

    pub fn from_dump(dump: &RepDump) -> Result<Self> {
        let presentation: Presentation = dump.presentation.parse()?;
        let images = dump
            .images
            .iter()
            .map(|d| {
                let m = ComplexMatrix::from_dump(d)?;
                if m.dim() != dump.dim {
                    return Err(Error::DimensionMismatch {
                        expected: dump.dim,
                        found: m.dim(),
                    });
                }
                UnitaryMatrix::certify(m)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(presentation, images)
    }
}

/// Serialized form: presentation text, dimension, one matrix per generator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RepDump {
    pub presentation: String,
    pub dim: usize,
    pub images: Vec<MatrixDump>,
}

fn check_compatible(phi: &AlmostRep, psi: &AlmostRep) -> Result<()> {
    if phi.presentation.relators() != psi.presentation.relators()
        || phi.presentation.rank() != psi.presentation.rank()
    {
        return Err(Error::PresentationMismatch(
            phi.presentation.name().to_string(),
            psi.presentation.name().to_string(),
        ));
    }
    if phi.dim() != psi.dim() {
        return Err(Error::DimensionMismatch {
            expected: phi.dim(),
            found: psi.dim(),
        });
    }
    Ok(())
}

/// `max_s |phi(s) - psi(s)|`.
pub fn dist(phi: &AlmostRep, psi: &AlmostRep, kind: NormKind) -> Result<f64> {
    check_compatible(phi, psi)?;
    Ok(phi
        .images
        .iter()
        .zip(&psi.images)
        .map(|(a, b)| norm(&(a.matrix() - b.matrix()), kind))
        .fold(0.0, f64::max))
}

/// Distance to a supplied homomorphism `pi` (defect of `pi` at most
/// [`HOM_TOL`] in `kind`).
pub fn dist_to_hom(phi: &AlmostRep, pi: &AlmostRep, kind: NormKind) -> Result<f64> {
    check_compatible(phi, pi)?;
    let d = pi.defect(kind)?;
    if d > HOM_TOL {
        return Err(Error::NotHomomorphism(d));
    }
    dist(phi, pi, kind)
}

/// `sqrt(2 - |1 - omega_n|) - 1`, a lower bound for the distance of the
/// clock/shift pair to commuting pairs (operator norm, hence Frobenius).
pub fn homdist_lower_bound_voiculescu(n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidArgument("n must be at least 2".into()));
    }
    let theta = 2.0 * std::f64::consts::PI / n as f64;
    // |1 - e^{i theta}| = 2 sin(theta / 2)
    let gap = 2.0 * (theta / 2.0).sin();
    Ok((2.0 - gap).sqrt() - 1.0)
}

/// A repaired involution: the unrepaired value `phi(sigma(g))`.
#[derive(Debug, Clone, PartialEq)]
pub struct Repair {
    pub element: usize,
    pub raw: ComplexMatrix,
}

/// `phi~` on a window: `phi~(g) = phi(sigma(g))`, with `phi~(1) = 1`,
/// `phi~(g^-1) = phi~(g)*` and self-adjoint involution values.
#[derive(Debug, Clone)]
pub struct Lift {
    window: Arc<Window>,
    values: Vec<UnitaryMatrix>,
    repairs: Vec<Repair>,
}

impl Lift {
    pub fn new(phi: &AlmostRep, window: Arc<Window>) -> Result<Self> {
        let group = window.group();
        if group.presentation().relators() != phi.presentation().relators()
            || group.rank() != phi.presentation().rank()
        {
            return Err(Error::PresentationMismatch(
                phi.presentation().name().to_string(),
                group.name().to_string(),
            ));
        }
        let k = phi.dim();
        let n = window.len();
        let mut values: Vec<Option<UnitaryMatrix>> = vec![None; n];
        let mut repairs = Vec::new();
        values[window.identity()] = Some(UnitaryMatrix::identity(k));
        for i in 0..n {
            if values[i].is_some() {
                continue;
            }
            let g = window.element(i);
            let raw = phi.evaluate(&group.section(g))?;
            let value = if group.is_involution(g) {
                let fixed = nearest_involution(&raw)?;
                repairs.push(Repair {
                    element: i,
                    raw: raw.into_matrix(),
                });
                fixed
            } else {
                raw
            };
            let inv = window.inverse(i);
            if inv != i {
                values[inv] = Some(value.adjoint());
            }
            values[i] = Some(value);
        }
        Ok(Self {
            window,
            values: values
                .into_iter()
                .map(|v| v.expect("every element assigned"))
                .collect(),
            repairs,
        })
    }

    pub fn window(&self) -> &Arc<Window> {
        &self.window
    }

    pub fn dim(&self) -> usize {
        self.values[0].dim()
    }

    pub fn value(&self, i: usize) -> &UnitaryMatrix {
        &self.values[i]
    }

    pub fn values(&self) -> &[UnitaryMatrix] {
        &self.values
    }

    pub fn repairs(&self) -> &[Repair] {
        &self.repairs
    }

    /// `(cost, bound)` per repaired involution:
    /// `|phi~(g) - phi(sigma g)|` against `|1 - phi(sigma g)^2|`.
    pub fn repair_costs(&self, kind: NormKind) -> Vec<(f64, f64)> {
        self.repairs
            .iter()
            .map(|r| {
                let cost = norm(&(self.values[r.element].matrix() - &r.raw), kind);
                let bound = norm(&r.raw.matmul(&r.raw).minus_identity(), kind);
                (cost, bound)
            })
            .collect()
    }

    /// `|phi~(g) phi~(h) - phi~(gh)|` for window indices with `gh` in the window.
    pub fn multiplicative_defect(&self, g: usize, h: usize, kind: NormKind) -> Option<f64> {
        let gh = self.window.product(g, h)?;
        let p = self.values[g].matrix().matmul(self.values[h].matrix());
        Some(norm(&(&p - self.values[gh].matrix()), kind))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RelatorBound {
    pub lhs: f64,
    pub bound: f64,
    pub ok: bool,
}

/// Checks `|phi(r) - 1| <= m * defect(phi)` where `m` is the length of a
/// witness writing `r` as a product of conjugates of relators.
pub fn relator_bound_check(
    phi: &AlmostRep,
    r: &Word,
    witness: &[Conjugate],
    kind: NormKind,
) -> Result<RelatorBound> {
    if conjugation_product(witness) != *r {
        return Err(Error::WitnessMismatch);
    }
    let lhs = norm(&phi.evaluate(r)?.into_matrix().minus_identity(), kind);
    let bound = witness.len() as f64 * phi.defect(kind)?;
    Ok(RelatorBound {
        lhs,
        bound,
        ok: lhs <= bound + 1e-10,
    })
}

/// A witness for a word `w` with zero exponent sums in the free abelian
/// presentation of rank `rank`: bubble-sort `w` by generator, writing each
/// adjacent swap as a conjugate of a commutator relator. The witness length
/// is the number of swaps.
pub fn free_abelian_witness(w: &Word, rank: usize) -> Result<Vec<Conjugate>> {
    if w.max_generator().is_some_and(|g| g >= rank) {
        return Err(Error::MissingGenerator(w.max_generator().unwrap_or(0)));
    }
    if w.exponent_sums(rank).iter().any(|&e| e != 0) {
        return Err(Error::InvalidArgument(
            "word is not in the commutator subgroup".into(),
        ));
    }
    let mut letters: Vec<Letter> = w.letters().to_vec();
    let mut witness = Vec::new();
    while let Some(pos) = (0..letters.len().saturating_sub(1))
        .find(|&p| letters[p].generator > letters[p + 1].generator)
    {
        // p x y s = (p [x, y] p^-1) p y x s
        let (x, y) = (letters[pos], letters[pos + 1]);
        let prefix = Word::reduce(letters[..pos].iter().copied());
        let c = commutator_as_conjugate(x, y);
        witness.push(Conjugate::new(
            prefix.multiply(&c.conjugator),
            c.relator,
            c.sign,
        ));
        letters.swap(pos, pos + 1);
    }
    debug_assert!(Word::reduce(letters).is_empty());
    Ok(witness)
}

/// `x y x^-1 y^-1` as `c R^{+-1} c^-1` with `R = a_j a_i a_j^-1 a_i^-1`,
/// `j < i` the generators of `y` and `x`.
fn commutator_as_conjugate(x: Letter, y: Letter) -> Conjugate {
    let (i, j) = (x.generator.0, y.generator.0);
    let relator = commutator(j, i);
    let target = Word::reduce([x, y, x.inverse(), y.inverse()]);
    let small = [
        Word::empty(),
        Word::letter(x),
        Word::letter(y),
        Word::letter(x.inverse()),
        Word::letter(y.inverse()),
        Word::reduce([x, y]),
        Word::reduce([y, x]),
        Word::reduce([x.inverse(), y.inverse()]),
        Word::reduce([y.inverse(), x.inverse()]),
        Word::reduce([x, y.inverse()]),
        Word::reduce([y.inverse(), x]),
        Word::reduce([x.inverse(), y]),
        Word::reduce([y, x.inverse()]),
    ];
    for c in small {
        for sign in [Sign::Plus, Sign::Minus] {
            let cand = Conjugate::new(c.clone(), relator.clone(), sign);
            if cand.word() == target {
                return cand;
            }
        }
    }
    unreachable!("every commutator of generator letters is a short conjugate of a relator")
}
