//! Right-shift-invariant subspaces of `L²(G)` through their fibers.
//!
//! A set of generators `A ⊂ L²(G)` spans the smallest subspace `S(A)`
//! closed under right translation by `H`. Under the transform this
//! decomposes fiberwise: `f ∈ S(A)` exactly when each fiber `(Zf)(α)`
//! lies in the *range space* `J(α) = span{(Zφ)(α) : φ ∈ A} ⊆ C^{|Ω|}`,
//! and the translate system `{R_h φ}` is a frame for `S(A)` exactly when
//! the fiber Gram matrices have uniformly bounded nonzero spectra. No
//! measure weights enter: counting measure on both sides makes the fiber
//! criteria exact as stated.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::groups::GroupContext;
use crate::linalg::{self, CMat};
use crate::zak::{zak_right, GroupFunction, ZakArray};

/// Relative acceptance threshold shared by basis construction and
/// membership residuals.
const REL_TOL: f64 = 1e-10;

/// Orthonormal bases of the range spaces `J(α)`, one per character.
#[derive(Debug, Clone)]
pub struct RangeFunction {
    bases: Vec<Vec<Vec<Complex64>>>,
    omega_len: usize,
}

impl RangeFunction {
    /// Dimension of `J(α)` for each character index.
    pub fn dims(&self) -> Vec<usize> {
        self.bases.iter().map(|b| b.len()).collect()
    }

    pub fn basis(&self, alpha: usize) -> &[Vec<Complex64>] {
        &self.bases[alpha]
    }

    pub fn char_count(&self) -> usize {
        self.bases.len()
    }

    pub fn omega_len(&self) -> usize {
        self.omega_len
    }
}

fn transform_all(ctx: &GroupContext, generators: &[GroupFunction]) -> Result<Vec<ZakArray>> {
    if generators.is_empty() {
        return Err(Error::InvalidInput(
            "at least one generator is required".into(),
        ));
    }
    generators.iter().map(|g| zak_right(ctx, g)).collect()
}

/// Orthonormalize the generator fibers at every character into a
/// [`RangeFunction`]. Fiber directions below `1e-10` of the largest fiber
/// norm across the whole system are treated as zero, so characters whose
/// fibers are pure roundoff get an empty basis.
pub fn range_of_generators(
    ctx: &GroupContext,
    generators: &[GroupFunction],
) -> Result<RangeFunction> {
    let arrays = transform_all(ctx, generators)?;
    let scale = arrays
        .iter()
        .flat_map(|z| (0..ctx.h_order()).map(|a| linalg::norm(z.fiber(a))))
        .fold(0.0f64, f64::max);
    let threshold = REL_TOL * scale;
    let mut bases = Vec::with_capacity(ctx.h_order());
    for alpha in 0..ctx.h_order() {
        let fibers: Vec<Vec<Complex64>> = arrays.iter().map(|z| z.fiber(alpha).to_vec()).collect();
        bases.push(linalg::orthonormalize_abs(&fibers, threshold));
    }
    Ok(RangeFunction {
        bases,
        omega_len: ctx.omega_len(),
    })
}

/// Relative distance of `f` from the invariant subspace: the fiberwise
/// projection residuals recombine (with the `1/|Ĥ|` weight the transform
/// carries) into `dist(f, S(A))/‖f‖`. Zero for the zero function.
pub fn membership_residual(
    ctx: &GroupContext,
    range: &RangeFunction,
    f: &GroupFunction,
) -> Result<f64> {
    if range.char_count() != ctx.h_order() || range.omega_len() != ctx.omega_len() {
        return Err(Error::DomainMismatch {
            expected: ctx.h_order(),
            got: range.char_count(),
        });
    }
    let norm = f.norm();
    if norm == 0.0 {
        return Ok(0.0);
    }
    let z = zak_right(ctx, f)?;
    let mut dist_sq = 0.0f64;
    for alpha in 0..ctx.h_order() {
        let resid = linalg::project_out(range.basis(alpha), z.fiber(alpha));
        dist_sq += resid.iter().map(|v| v.norm_sqr()).sum::<f64>();
    }
    dist_sq /= ctx.h_order() as f64;
    Ok(dist_sq.sqrt() / norm)
}

/// Whether `f` lies in the invariant subspace, up to a relative distance
/// of `1e-10`.
pub fn membership(ctx: &GroupContext, range: &RangeFunction, f: &GroupFunction) -> Result<bool> {
    Ok(membership_residual(ctx, range, f)? <= REL_TOL)
}

/// Frame bounds of a generated translate system, fiber by fiber.
#[derive(Debug, Clone)]
pub struct FiberBounds {
    /// Per character: extreme nonzero eigenvalues of the fiber Gram, or
    /// `None` when the whole fiber vanishes.
    pub per_char: Vec<Option<(f64, f64)>>,
    /// Dimension of each range space.
    pub dims: Vec<usize>,
    /// Overall frame bounds of `{R_h φ}` as a frame for `S(A)`: the worst
    /// lower and upper constants across nonvanishing fibers.
    pub global: (f64, f64),
}

/// Eigenvalue extremes of the fiber Gram matrices of the generators.
/// Eigenvalues below `1e-10` of the largest eigenvalue across all fibers
/// count as zero (a fiber with none left is dead); a system whose every
/// fiber vanishes is an error.
pub fn fiber_frame_bounds(ctx: &GroupContext, generators: &[GroupFunction]) -> Result<FiberBounds> {
    let arrays = transform_all(ctx, generators)?;
    let k = arrays.len();
    let mut spectra = Vec::with_capacity(ctx.h_order());
    let mut top = 0.0f64;
    for alpha in 0..ctx.h_order() {
        let fibers: Vec<&[Complex64]> = arrays.iter().map(|z| z.fiber(alpha)).collect();
        let mut gr = CMat::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                gr[(i, j)] = linalg::inner(fibers[i], fibers[j]);
            }
        }
        let eigs = linalg::eigvalsh(&gr)?;
        top = top.max(*eigs.last().expect("k ≥ 1 generators"));
        spectra.push(eigs);
    }
    if top <= 0.0 {
        return Err(Error::ZeroSystem);
    }
    let threshold = REL_TOL * top;
    let mut per_char = Vec::with_capacity(ctx.h_order());
    let mut dims = Vec::with_capacity(ctx.h_order());
    let mut lower = f64::INFINITY;
    let mut upper = 0.0f64;
    for eigs in &spectra {
        let live: Vec<f64> = eigs.iter().copied().filter(|&l| l > threshold).collect();
        dims.push(live.len());
        match (live.first(), live.last()) {
            (Some(&a), Some(&b)) => {
                lower = lower.min(a);
                upper = upper.max(b);
                per_char.push(Some((a, b)));
            }
            _ => per_char.push(None),
        }
    }
    Ok(FiberBounds {
        per_char,
        dims,
        global: (lower, upper),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{build_semidirect, AbelianGroup, FiniteGroup, SemidirectSpec};
    use crate::repn::{regular_action, Side};
    use crate::zak::zak_inverse;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn s3() -> GroupContext {
        let spec = SemidirectSpec {
            h: AbelianGroup::new(vec![3]).unwrap(),
            k: FiniteGroup::cyclic(2),
            action: vec![vec![vec![1]], vec![vec![2]]],
        };
        build_semidirect(&spec).unwrap().base().clone()
    }

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn delta_generator_spans_subgroup_supported_functions() {
        let ctx = s3();
        let delta = GroupFunction::delta(ctx.group().identity(), 6);
        let range = range_of_generators(&ctx, std::slice::from_ref(&delta)).unwrap();
        assert_eq!(range.dims(), vec![1, 1, 1]);
        // Translates of δ_e stay supported on H, so membership is exactly
        // "supported on the subgroup".
        let on_h = GroupFunction::delta(ctx.embedding().into_group(1), 6);
        assert!(membership(&ctx, &range, &on_h).unwrap());
        let off_h = GroupFunction::delta(ctx.transversal().reps()[1], 6);
        assert!(!membership(&ctx, &range, &off_h).unwrap());
        // And the translate system is orthonormal: exact bounds (1, 1).
        let fb = fiber_frame_bounds(&ctx, &[delta]).unwrap();
        assert_eq!(fb.dims, vec![1, 1, 1]);
        for b in &fb.per_char {
            let (lo, hi) = b.unwrap();
            assert!((lo - 1.0).abs() < 1e-12 && (hi - 1.0).abs() < 1e-12);
        }
        assert!((fb.global.0 - 1.0).abs() < 1e-12 && (fb.global.1 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn constant_generator_has_one_live_fiber() {
        let ctx = s3();
        let one = GroupFunction::constant(re(1.0), 6);
        let range = range_of_generators(&ctx, std::slice::from_ref(&one)).unwrap();
        assert_eq!(range.dims(), vec![1, 0, 0]);
        let fb = fiber_frame_bounds(&ctx, std::slice::from_ref(&one)).unwrap();
        // Fiber at the trivial character is (3, 3): energy 18.
        assert_eq!(fb.per_char[1], None);
        assert_eq!(fb.per_char[2], None);
        let (lo, hi) = fb.per_char[0].unwrap();
        assert!((lo - 18.0).abs() < 1e-10 && (hi - 18.0).abs() < 1e-10);
        assert!((fb.global.0 - 18.0).abs() < 1e-10);
        // Constants belong to the space, deltas do not.
        assert!(membership(&ctx, &range, &GroupFunction::constant(re(-2.5), 6)).unwrap());
        assert!(!membership(&ctx, &range, &GroupFunction::delta(0, 6)).unwrap());
    }

    #[test]
    fn scaled_duplicate_generator_changes_bounds_not_dims() {
        let ctx = s3();
        let delta = GroupFunction::delta(ctx.group().identity(), 6);
        let double = delta.scale(re(2.0));
        let fb = fiber_frame_bounds(&ctx, &[delta.clone(), double]).unwrap();
        assert_eq!(fb.dims, vec![1, 1, 1]);
        // Gram per fiber is [[1,2],[2,4]] with nonzero eigenvalue 5.
        for b in &fb.per_char {
            let (lo, hi) = b.unwrap();
            assert!((lo - 5.0).abs() < 1e-10 && (hi - 5.0).abs() < 1e-10);
        }
    }

    #[test]
    fn membership_is_shift_invariant() {
        let ctx = s3();
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        let gen1 = GroupFunction::random(6, &mut rng);
        let gen2 = GroupFunction::random(6, &mut rng);
        let range = range_of_generators(&ctx, &[gen1.clone(), gen2.clone()]).unwrap();
        for h in 0..3 {
            let y = ctx.embedding().into_group(h);
            for g in [&gen1, &gen2] {
                let shifted = regular_action(&ctx, Side::Right, y, g).unwrap();
                assert!(
                    membership(&ctx, &range, &shifted).unwrap(),
                    "right translates of generators must stay in the space"
                );
            }
        }
    }

    #[test]
    fn synthesized_members_pass_and_perturbations_fail() {
        let ctx = s3();
        let mut rng = ChaCha8Rng::seed_from_u64(59);
        let gen = GroupFunction::random(6, &mut rng);
        let range = range_of_generators(&ctx, std::slice::from_ref(&gen)).unwrap();
        // Build a member fiberwise: random multiples of the basis rows.
        use rand::Rng;
        let mut arr = ZakArray::zeros(&ctx);
        for alpha in 0..3 {
            if range.dims()[alpha] == 0 {
                continue;
            }
            let c = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            for (j, &v) in range.basis(alpha)[0].iter().enumerate() {
                arr.set(alpha, j, c * v);
            }
        }
        let member = zak_inverse(&ctx, &arr).unwrap();
        assert!(membership(&ctx, &range, &member).unwrap());
        let resid = membership_residual(&ctx, &range, &member).unwrap();
        assert!(resid < 1e-12, "synthesized member has residual {resid}");
        // A generic perturbation leaves the space.
        let mut off = member.clone();
        off.set(0, off.get(0) + re(0.37));
        assert!(!membership(&ctx, &range, &off).unwrap());
    }

    #[test]
    fn zero_system_is_an_error() {
        let ctx = s3();
        let zero = GroupFunction::zeros(6);
        assert!(matches!(
            fiber_frame_bounds(&ctx, std::slice::from_ref(&zero)),
            Err(Error::ZeroSystem)
        ));
        // The empty generator list is rejected before any transform.
        assert!(matches!(
            range_of_generators(&ctx, &[]),
            Err(Error::InvalidInput(_))
        ));
        // But the zero generator still yields a (trivial) range function.
        let range = range_of_generators(&ctx, &[zero]).unwrap();
        assert_eq!(range.dims(), vec![0, 0, 0]);
        assert!(membership(&ctx, &range, &GroupFunction::zeros(6)).unwrap());
        assert!(!membership(&ctx, &range, &GroupFunction::delta(0, 6)).unwrap());
    }
}
