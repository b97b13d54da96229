//! Induced representations as monomial matrices, and the positive-type
//! functions they generate.
//!
//! A character `α` of the embedded subgroup `H ≤ G` induces a
//! representation of `G` on `L²(Ω)`: the space of functions `F : G → C`
//! with `F(g·h) = conj(α(h)) F(g)`, identified with their transversal
//! values, acted on by `[π(x)F](g) = F(x⁻¹g)`. In coordinates every
//! `π(x)` is a *monomial* matrix — a permutation with unit-modulus phases
//! — computed here exactly from the coset factorization.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::groups::{conj_character, Character, GroupContext, SemidirectContext};
use crate::linalg::{self, CMat};
use crate::zak::{zak_right, GroupFunction};

/// A matrix with one nonzero per row: `(Mv)[i] = phases[i] · v[perm[i]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct MonomialMatrix {
    perm: Vec<usize>,
    phases: Vec<Complex64>,
}

impl MonomialMatrix {
    pub fn new(perm: Vec<usize>, phases: Vec<Complex64>) -> Result<Self> {
        if perm.len() != phases.len() {
            return Err(Error::DomainMismatch {
                expected: perm.len(),
                got: phases.len(),
            });
        }
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            if p >= perm.len() || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidInput(
                    "monomial row targets must form a permutation".into(),
                ));
            }
        }
        Ok(MonomialMatrix { perm, phases })
    }

    pub fn identity(dim: usize) -> Self {
        MonomialMatrix {
            perm: (0..dim).collect(),
            phases: vec![Complex64::new(1.0, 0.0); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn phases(&self) -> &[Complex64] {
        &self.phases
    }

    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.dim() {
            return Err(Error::DomainMismatch {
                expected: self.dim(),
                got: v.len(),
            });
        }
        Ok((0..self.dim())
            .map(|i| self.phases[i] * v[self.perm[i]])
            .collect())
    }

    /// `self ∘ other` as operators: `(A∘B)v = A(Bv)`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DomainMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        let perm = (0..self.dim()).map(|i| other.perm[self.perm[i]]).collect();
        let phases = (0..self.dim())
            .map(|i| self.phases[i] * other.phases[self.perm[i]])
            .collect();
        Ok(MonomialMatrix { perm, phases })
    }

    /// The adjoint, which inverts `self` when all phases are unimodular.
    pub fn adjoint(&self) -> Self {
        let n = self.dim();
        let mut perm = vec![0usize; n];
        let mut phases = vec![Complex64::new(0.0, 0.0); n];
        for i in 0..n {
            perm[self.perm[i]] = i;
            phases[self.perm[i]] = self.phases[i].conj();
        }
        MonomialMatrix { perm, phases }
    }

    pub fn to_dense(&self) -> CMat {
        let n = self.dim();
        let mut m = CMat::zeros(n, n);
        for i in 0..n {
            m[(i, self.perm[i])] = self.phases[i];
        }
        m
    }

    /// Largest deviation of a phase from unit modulus.
    pub fn unitarity_defect(&self) -> f64 {
        self.phases
            .iter()
            .map(|p| (p.norm() - 1.0).abs())
            .fold(0.0, f64::max)
    }
}

/// The monomial matrix of `π(x)` for the representation induced by `α`:
/// factor `x⁻¹·ω_i = ω_j·h`, then row `i` maps to column `j` with phase
/// `conj(α(h))`.
pub fn induced_rep_matrix(
    ctx: &GroupContext,
    alpha: &Character,
    x: usize,
) -> Result<MonomialMatrix> {
    if x >= ctx.group().order() {
        return Err(Error::IndexOutOfRange {
            index: x,
            limit: ctx.group().order(),
        });
    }
    let a_idx = ctx.abelian().char_index(alpha)?;
    let xinv = ctx.group().inv(x);
    let m = ctx.omega_len();
    let mut perm = vec![0usize; m];
    let mut phases = vec![Complex64::new(0.0, 0.0); m];
    for i in 0..m {
        let target = ctx.group().mul(xinv, ctx.transversal().reps()[i]);
        let (j, h) = ctx.transversal().factor(target);
        perm[i] = j;
        phases[i] = ctx.char_value(a_idx, h).conj();
    }
    MonomialMatrix::new(perm, phases)
}

/// Which translation of the regular representation to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Translates `f : G → C`. `Left` by any `y ∈ G` gives `x ↦ f(y⁻¹x)`;
/// `Right` requires `y` in the image of `H` and gives `x ↦ f(x·y)`,
/// the translations that act fiberwise on the transform.
pub fn regular_action(
    ctx: &GroupContext,
    side: Side,
    y: usize,
    f: &GroupFunction,
) -> Result<GroupFunction> {
    if y >= ctx.group().order() {
        return Err(Error::IndexOutOfRange {
            index: y,
            limit: ctx.group().order(),
        });
    }
    if f.len() != ctx.group().order() {
        return Err(Error::DomainMismatch {
            expected: ctx.group().order(),
            got: f.len(),
        });
    }
    let g = ctx.group();
    match side {
        Side::Left => {
            let yinv = g.inv(y);
            Ok(GroupFunction::new(
                (0..g.order()).map(|x| f.get(g.mul(yinv, x))).collect(),
            ))
        }
        Side::Right => {
            if ctx.h_of(y).is_none() {
                return Err(Error::InvalidInput(
                    "right translation is only defined for subgroup elements".into(),
                ));
            }
            Ok(GroupFunction::new(
                (0..g.order()).map(|x| f.get(g.mul(x, y))).collect(),
            ))
        }
    }
}

/// The diagonal matrix coefficient `g(x) = ⟨f, π(x)f⟩` of an induced
/// representation, as a function on `G`.
#[derive(Debug, Clone)]
pub struct PositiveTypeFunction {
    g: GroupFunction,
    rescaled: bool,
}

impl PositiveTypeFunction {
    pub fn function(&self) -> &GroupFunction {
        &self.g
    }

    pub fn into_function(self) -> GroupFunction {
        self.g
    }

    /// True when the fiducial had to be rescaled to unit norm.
    pub fn rescaled(&self) -> bool {
        self.rescaled
    }
}

/// Builds `g(x) = ⟨f, π(x)f⟩` from a fiducial vector `f ∈ L²(Ω)` (given by
/// transversal values), rescaling `f` to unit norm when needed.
///
/// The result is cross-checked against its transform: with `F̃` the
/// `α`-equivariant extension of `f` to `G`,
///
/// ```text
/// (Zg)(β)(x) = |H| · Σ { F̃(x·y) conj(F̃(y)) : y ∈ Ω, y·α = β },
/// ```
///
/// and any disagreement beyond roundoff is an internal-consistency error.
/// Requires conjugation by transversal elements to preserve `H`.
pub fn positive_type(
    ctx: &GroupContext,
    alpha: &Character,
    fiducial: &[Complex64],
) -> Result<PositiveTypeFunction> {
    let m = ctx.omega_len();
    if fiducial.len() != m {
        return Err(Error::DomainMismatch {
            expected: m,
            got: fiducial.len(),
        });
    }
    let norm = linalg::norm(fiducial);
    if norm < 1e-300 {
        return Err(Error::ZeroVector("fiducial".into()));
    }
    let rescaled = (norm - 1.0).abs() > 1e-12;
    let f: Vec<Complex64> = if rescaled {
        fiducial.iter().map(|v| v / norm).collect()
    } else {
        fiducial.to_vec()
    };

    let n = ctx.group().order();
    let mut g = GroupFunction::zeros(n);
    for x in 0..n {
        let pix = induced_rep_matrix(ctx, alpha, x)?;
        let pf = pix.apply(&f)?;
        g.set(x, linalg::inner(&f, &pf));
    }

    // Transform-side self-check.
    let a_idx = ctx.abelian().char_index(alpha)?;
    let nh = ctx.h_order();
    let extension = |z: usize| -> Complex64 {
        let (q, h) = ctx.transversal().factor(z);
        ctx.char_value(a_idx, h).conj() * f[q]
    };
    // β-index reached by each transversal element's conjugation action.
    let mut beta_of = Vec::with_capacity(m);
    for &rep in ctx.transversal().reps() {
        let beta = conj_character(ctx, rep, alpha)?;
        beta_of.push(ctx.abelian().char_index(&beta)?);
    }
    let zg = zak_right(ctx, &g)?;
    let tol = 1e-12 * (nh as f64).max(1.0);
    for b in 0..nh {
        for j in 0..m {
            let mut rhs = Complex64::new(0.0, 0.0);
            for (p, &bp) in beta_of.iter().enumerate() {
                if bp == b {
                    let xy = ctx
                        .group()
                        .mul(ctx.transversal().reps()[j], ctx.transversal().reps()[p]);
                    rhs += extension(xy) * f[p].conj();
                }
            }
            rhs *= nh as f64;
            let resid = (zg.get(b, j) - rhs).norm();
            if resid > tol {
                return Err(Error::InternalConsistency(format!(
                    "matrix-coefficient transform deviates from its closed form by {resid:.3e}"
                )));
            }
        }
    }
    Ok(PositiveTypeFunction { g, rescaled })
}

/// Whether the orbit `{π(x)f : x ∈ G}` spans `L²(Ω)`, decided by the rank
/// of the orbit's scatter matrix (eigenvalues above `1e-20·λ_max` count).
pub fn is_cyclic(ctx: &GroupContext, alpha: &Character, fiducial: &[Complex64]) -> Result<bool> {
    let m = ctx.omega_len();
    if fiducial.len() != m {
        return Err(Error::DomainMismatch {
            expected: m,
            got: fiducial.len(),
        });
    }
    let mut scatter = CMat::zeros(m, m);
    for x in 0..ctx.group().order() {
        let v = induced_rep_matrix(ctx, alpha, x)?.apply(fiducial)?;
        for i in 0..m {
            for j in 0..m {
                let t = v[i] * v[j].conj();
                scatter[(i, j)] += t;
            }
        }
    }
    let eigs = linalg::eigvalsh(&scatter)?;
    let lam_max = eigs.last().copied().unwrap_or(0.0);
    if lam_max <= 0.0 {
        return Ok(false);
    }
    let rank = eigs.iter().filter(|&&l| l > 1e-20 * lam_max).count();
    Ok(rank == m)
}

/// Sufficient irreducibility test for a representation induced from a
/// semidirect product's abelian part: a trivial stabilizer of `α` inside
/// `K` forces irreducibility.
pub fn is_irreducible_sufficient(ctx: &SemidirectContext, alpha: &Character) -> Result<bool> {
    let fixed = crate::groups::little_group(ctx, alpha)?;
    Ok(fixed == vec![ctx.k().identity()])
}
