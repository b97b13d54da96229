//! Zak-type transforms relative to an embedded abelian subgroup.
//!
//! For `f : G → C`, a character `α` of `H` and a transversal point
//! `x = ω_j`, the right transform is
//!
//! ```text
//! (Zf)(α)(x) = Σ_{h ∈ H} f(x·h) α(h),
//! ```
//!
//! stored as an `|Ĥ| × |Ω|` array. Each fiber `(Zf)(α)(·)` determines `f`
//! on the coset `xH` through the inversion formula, and extends from `Ω`
//! to all of `G` quasi-periodically: `(Zf)(α)(x·h) = conj(α(h))·(Zf)(α)(x)`.
//!
//! The left transform `(Z′f)(α)(x) = Σ_h f(h·x) conj(α(h))` is kept on all
//! of `G` since its fibers are not determined by transversal values alone.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::groups::GroupContext;
use crate::linalg::CMat;

/// A function `G → C`, indexed by group element.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupFunction {
    values: Vec<Complex64>,
}

impl GroupFunction {
    pub fn new(values: Vec<Complex64>) -> Self {
        GroupFunction { values }
    }

    pub fn zeros(n: usize) -> Self {
        GroupFunction {
            values: vec![Complex64::new(0.0, 0.0); n],
        }
    }

    /// The point mass at a group element.
    pub fn delta(at: usize, n: usize) -> Self {
        let mut f = Self::zeros(n);
        f.values[at] = Complex64::new(1.0, 0.0);
        f
    }

    pub fn constant(value: Complex64, n: usize) -> Self {
        GroupFunction {
            values: vec![value; n],
        }
    }

    /// Complex standard-normal values, for randomized checks.
    pub fn random<R: Rng>(n: usize, rng: &mut R) -> Self {
        let values = (0..n)
            .map(|_| {
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = rng.sample(StandardNormal);
                Complex64::new(re, im)
            })
            .collect();
        GroupFunction { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn get(&self, x: usize) -> Complex64 {
        self.values[x]
    }

    pub fn set(&mut self, x: usize, v: Complex64) {
        self.values[x] = v;
    }

    pub fn conj(&self) -> Self {
        GroupFunction {
            values: self.values.iter().map(|v| v.conj()).collect(),
        }
    }

    pub fn pointwise_mul(&self, other: &Self) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::DomainMismatch {
                expected: self.len(),
                got: other.len(),
            });
        }
        Ok(GroupFunction {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a * b)
                .collect(),
        })
    }

    pub fn abs_squared(&self) -> Self {
        GroupFunction {
            values: self
                .values
                .iter()
                .map(|v| Complex64::new(v.norm_sqr(), 0.0))
                .collect(),
        }
    }

    /// `⟨f, g⟩ = Σ_x f(x) conj(g(x))` under counting measure.
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b.conj())
            .sum()
    }

    pub fn norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        GroupFunction {
            values: self.values.iter().map(|v| v * s).collect(),
        }
    }
}

/// The transform of one function: rows are characters of `H` (canonical
/// order), columns are transversal positions.
#[derive(Debug, Clone)]
pub struct ZakArray {
    data: CMat,
}

impl ZakArray {
    pub fn new(ctx: &GroupContext, data: CMat) -> Result<Self> {
        if data.rows() != ctx.h_order() || data.cols() != ctx.omega_len() {
            return Err(Error::DomainMismatch {
                expected: ctx.h_order() * ctx.omega_len(),
                got: data.rows() * data.cols(),
            });
        }
        Ok(ZakArray { data })
    }

    pub fn zeros(ctx: &GroupContext) -> Self {
        ZakArray {
            data: CMat::zeros(ctx.h_order(), ctx.omega_len()),
        }
    }

    pub fn char_count(&self) -> usize {
        self.data.rows()
    }

    pub fn omega_len(&self) -> usize {
        self.data.cols()
    }

    pub fn data(&self) -> &CMat {
        &self.data
    }

    pub fn get(&self, alpha: usize, j: usize) -> Complex64 {
        self.data[(alpha, j)]
    }

    pub fn set(&mut self, alpha: usize, j: usize, v: Complex64) {
        self.data[(alpha, j)] = v;
    }

    /// The fiber over `α`: the row of transversal values, contiguous.
    pub fn fiber(&self, alpha: usize) -> &[Complex64] {
        self.data.row(alpha)
    }

    /// Weighted inner product `(1/|Ĥ|) Σ_α Σ_j a conj(b)`; matches the
    /// counting-measure inner product of the underlying functions.
    pub fn inner(&self, other: &ZakArray) -> Result<Complex64> {
        if self.data.rows() != other.data.rows() || self.data.cols() != other.data.cols() {
            return Err(Error::DomainMismatch {
                expected: self.data.rows() * self.data.cols(),
                got: other.data.rows() * other.data.cols(),
            });
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for a in 0..self.data.rows() {
            for j in 0..self.data.cols() {
                acc += self.data[(a, j)] * other.data[(a, j)].conj();
            }
        }
        Ok(acc / self.data.rows() as f64)
    }

    pub fn norm(&self) -> f64 {
        let mut acc = 0.0;
        for a in 0..self.data.rows() {
            for j in 0..self.data.cols() {
                acc += self.data[(a, j)].norm_sqr();
            }
        }
        (acc / self.data.rows() as f64).sqrt()
    }
}

fn check_len(ctx: &GroupContext, f: &GroupFunction) -> Result<()> {
    if f.len() != ctx.group().order() {
        return Err(Error::DomainMismatch {
            expected: ctx.group().order(),
            got: f.len(),
        });
    }
    Ok(())
}

/// Right transform: `(Zf)(α)(ω_j) = Σ_h f(ω_j·h) α(h)`.
pub fn zak_right(ctx: &GroupContext, f: &GroupFunction) -> Result<ZakArray> {
    check_len(ctx, f)?;
    let nh = ctx.h_order();
    let mut data = CMat::zeros(nh, ctx.omega_len());
    for j in 0..ctx.omega_len() {
        for alpha in 0..nh {
            let mut acc = Complex64::new(0.0, 0.0);
            for h in 0..nh {
                acc += f.get(ctx.xh(j, h)) * ctx.char_value(alpha, h);
            }
            data[(alpha, j)] = acc;
        }
    }
    Ok(ZakArray { data })
}

/// Left transform on all of `G`: row `α`, column `x` holds
/// `Σ_h f(h·x) conj(α(h))`.
pub fn zak_left(ctx: &GroupContext, f: &GroupFunction) -> Result<CMat> {
    check_len(ctx, f)?;
    let nh = ctx.h_order();
    let n = ctx.group().order();
    let mut data = CMat::zeros(nh, n);
    for x in 0..n {
        for alpha in 0..nh {
            let mut acc = Complex64::new(0.0, 0.0);
            for h in 0..nh {
                let hx = ctx.group().mul(ctx.embedding().into_group(h), x);
                acc += f.get(hx) * ctx.char_value(alpha, h).conj();
            }
            data[(alpha, x)] = acc;
        }
    }
    Ok(data)
}

/// Inversion: `f(ω_j·h) = (1/|Ĥ|) Σ_α (Zf)(α)(ω_j) conj(α(h))`.
pub fn zak_inverse(ctx: &GroupContext, arr: &ZakArray) -> Result<GroupFunction> {
    if arr.char_count() != ctx.h_order() || arr.omega_len() != ctx.omega_len() {
        return Err(Error::DomainMismatch {
            expected: ctx.h_order() * ctx.omega_len(),
            got: arr.char_count() * arr.omega_len(),
        });
    }
    let nh = ctx.h_order();
    let mut f = GroupFunction::zeros(ctx.group().order());
    for j in 0..ctx.omega_len() {
        for h in 0..nh {
            let mut acc = Complex64::new(0.0, 0.0);
            for alpha in 0..nh {
                acc += arr.get(alpha, j) * ctx.char_value(alpha, h).conj();
            }
            f.set(ctx.xh(j, h), acc / nh as f64);
        }
    }
    Ok(f)
}

/// Quasi-periodic extension of one fiber to all of `G`:
/// the value at `x = ω_j·h` is `conj(α(h))·(Zf)(α)(ω_j)`.
pub fn extend_fiber(ctx: &GroupContext, arr: &ZakArray, alpha: usize) -> Result<Vec<Complex64>> {
    if alpha >= arr.char_count() {
        return Err(Error::IndexOutOfRange {
            index: alpha,
            limit: arr.char_count(),
        });
    }
    let n = ctx.group().order();
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    for (x, slot) in out.iter_mut().enumerate() {
        let (j, h) = ctx.transversal().factor(x);
        *slot = ctx.char_value(alpha, h).conj() * arr.get(alpha, j);
    }
    Ok(out)
}

/// Largest residual, over all characters and transversal points, among the
/// three multiplicative identities of the transform:
///
/// * `Z(f·g)(α) = (1/|Ĥ|) Σ_β (Zf)(β) (Zg)(β⁻¹α)` pointwise on `Ω`,
/// * `Z(conj f)(α) = conj((Zf)(α⁻¹))`,
/// * the specialization of both to `Z(|f|²)`.
pub fn zak_product_identity(
    ctx: &GroupContext,
    f: &GroupFunction,
    g: &GroupFunction,
) -> Result<f64> {
    let abelian = ctx.abelian();
    let nh = ctx.h_order();
    let zf = zak_right(ctx, f)?;
    let zg = zak_right(ctx, g)?;
    let zfg = zak_right(ctx, &f.pointwise_mul(g)?)?;
    let zfc = zak_right(ctx, &f.conj())?;
    let zfsq = zak_right(ctx, &f.abs_squared())?;

    // Character index arithmetic: inv[a] and diff[a][b] = index of α_a·α_b⁻¹.
    let inv: Vec<usize> = (0..nh)
        .map(|a| {
            abelian
                .char_index(&abelian.char_inverse(&abelian.char_from_index(a)))
                .unwrap()
        })
        .collect();
    let mut max_resid = 0.0f64;
    for alpha in 0..nh {
        let alpha_chi = abelian.char_from_index(alpha);
        // β⁻¹α for each β.
        let shifted: Vec<usize> = (0..nh)
            .map(|beta| {
                let binv = abelian.char_inverse(&abelian.char_from_index(beta));
                abelian
                    .char_index(&abelian.char_product(&binv, &alpha_chi))
                    .unwrap()
            })
            .collect();
        for j in 0..ctx.omega_len() {
            let mut conv_fg = Complex64::new(0.0, 0.0);
            let mut conv_ff = Complex64::new(0.0, 0.0);
            for beta in 0..nh {
                conv_fg += zf.get(beta, j) * zg.get(shifted[beta], j);
                conv_ff += zf.get(beta, j) * zf.get(inv[shifted[beta]], j).conj();
            }
            conv_fg /= nh as f64;
            conv_ff /= nh as f64;
            let r1 = (zfg.get(alpha, j) - conv_fg).norm();
            let r2 = (zfc.get(alpha, j) - zf.get(inv[alpha], j).conj()).norm();
            let r3 = (zfsq.get(alpha, j) - conv_ff).norm();
            max_resid = max_resid.max(r1).max(r2).max(r3);
        }
    }
    Ok(max_resid)
}
