//! Frame-theoretic reports on finite vector systems, and the projective
//! orbit analysis that turns a matrix coefficient into a line system.
//!
//! `frame_report` measures any finite system: Gram matrix, frame bounds,
//! coherence profile, Welch level, and the tight/equiangular/spanning/ETF
//! flags (all at absolute tolerance 1e-10).
//!
//! For a unit fiducial `f` of an induced representation, the translates
//! `{π(x)f}` pass through each projective line many times. The projective
//! stabilizer `L = {x : |⟨f, π(x)f⟩| = 1}` collects the repetitions; one
//! representative per coset of `G/L` gives the reduced line system. The
//! system is equiangular exactly when `|⟨f, π(x)f⟩|²` is two-valued on
//! `G` — constant off `L` — and the off-value is then pinned by
//! `Σ_x |⟨f, π(x)f⟩|² = |H|` to `C = (|H| − |L|) / (|G| − |L|)`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::groups::{Character, GroupContext};
use crate::linalg::{self, CMat};
use crate::repn::{induced_rep_matrix, is_cyclic, positive_type};
use crate::zak::GroupFunction;

/// Absolute tolerance for all frame flags.
const TOL: f64 = 1e-10;

/// Numerical summary of a finite vector system in `C^d`.
#[derive(Debug, Clone)]
pub struct FrameReport {
    /// Number of vectors.
    pub n: usize,
    /// Ambient dimension.
    pub d: usize,
    /// Gram matrix `⟨v_i, v_j⟩` of the raw (unnormalized) vectors.
    pub gram: CMat,
    /// Extreme eigenvalues of the frame operator `Σ v v^H`.
    pub bounds: (f64, f64),
    /// Min and max of `|⟨v_i, v_j⟩|²` over distinct normalized pairs;
    /// `None` when there are fewer than two vectors.
    pub coherence_sq: Option<(f64, f64)>,
    /// Welch level `(n−d)/(d(n−1))` for `n > d`, else 0.
    pub welch_sq: f64,
    pub tight: bool,
    pub equiangular: bool,
    pub spanning: bool,
    pub etf: bool,
}

/// Gram, bounds, coherence and flags for a system of vectors in `C^dim`.
///
/// Vectors must be nonzero; coherence is computed on normalized pairs, and
/// `equiangular` additionally requires the raw norms to agree. Systems
/// with fewer than two vectors are vacuously equiangular.
pub fn frame_report(vectors: &[Vec<Complex64>], dim: usize) -> Result<FrameReport> {
    let n = vectors.len();
    if n == 0 || dim == 0 {
        return Err(Error::InvalidInput(
            "frame report needs at least one vector in a positive dimension".into(),
        ));
    }
    for (i, v) in vectors.iter().enumerate() {
        if v.len() != dim {
            return Err(Error::DomainMismatch {
                expected: dim,
                got: v.len(),
            });
        }
        if linalg::norm(v) < 1e-300 {
            return Err(Error::ZeroVector(format!("vector {i}")));
        }
    }
    let gram = linalg::gram(vectors);
    let norms: Vec<f64> = (0..n).map(|i| gram[(i, i)].re.sqrt()).collect();
    let equal_norms = {
        let (mn, mx) = norms
            .iter()
            .fold((f64::INFINITY, 0.0f64), |(a, b), &x| (a.min(x), b.max(x)));
        mx - mn <= TOL
    };

    let coherence_sq = if n >= 2 {
        let mut mn = f64::INFINITY;
        let mut mx = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let c = gram[(i, j)].norm_sqr() / (norms[i] * norms[j]).powi(2);
                mn = mn.min(c);
                mx = mx.max(c);
            }
        }
        Some((mn, mx))
    } else {
        None
    };

    let s = linalg::frame_operator(vectors, dim);
    let eigs = linalg::eigvalsh(&s)?;
    let bounds = (eigs[0], eigs[eigs.len() - 1]);
    let tight = bounds.1 > 0.0 && bounds.1 - bounds.0 <= TOL * bounds.1.max(1.0);
    let spanning = bounds.0 > TOL * bounds.1;
    let equiangular = equal_norms
        && match coherence_sq {
            Some((mn, mx)) => mx - mn <= TOL,
            None => true,
        };
    let welch_sq = if n > dim {
        (n - dim) as f64 / (dim as f64 * (n - 1) as f64)
    } else {
        0.0
    };
    let etf = tight && equiangular && spanning;
    Ok(FrameReport {
        n,
        d: dim,
        gram,
        bounds,
        coherence_sq,
        welch_sq,
        tight,
        equiangular,
        spanning,
        etf,
    })
}

/// The set `L = {x : |g(x)|² ≥ 1 − 1e-10}` for a matrix coefficient `g`
/// of a unit vector, verified to be a subgroup.
#[derive(Debug, Clone)]
pub struct Stabilizer {
    pub elements: Vec<usize>,
}

impl Stabilizer {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }
}

/// Collects the elements where `|g|² ≥ 1 − 1e-10` and checks they form a
/// subgroup (identity, inverses, products); any gap is reported as
/// [`Error::StabilizerNotClosed`].
pub fn projective_stabilizer(ctx: &GroupContext, g: &GroupFunction) -> Result<Stabilizer> {
    if g.len() != ctx.group().order() {
        return Err(Error::DomainMismatch {
            expected: ctx.group().order(),
            got: g.len(),
        });
    }
    let member = |x: usize| g.get(x).norm_sqr() >= 1.0 - TOL;
    let elements: Vec<usize> = (0..g.len()).filter(|&x| member(x)).collect();
    if !member(ctx.group().identity()) {
        return Err(Error::StabilizerNotClosed);
    }
    for &x in &elements {
        if !member(ctx.group().inv(x)) {
            return Err(Error::StabilizerNotClosed);
        }
        for &y in &elements {
            if !member(ctx.group().mul(x, y)) {
                return Err(Error::StabilizerNotClosed);
            }
        }
    }
    Ok(Stabilizer { elements })
}

/// One projective representative per coset of `G/L`: the least element of
/// each coset (ascending scan), with its translate `π(rep)f`.
#[derive(Debug, Clone)]
pub struct ProjectiveOrbit {
    /// Coset representatives, ascending; the identity comes first.
    pub reps: Vec<usize>,
    /// `π(rep) f` for each representative.
    pub vectors: Vec<Vec<Complex64>>,
}

impl ProjectiveOrbit {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }
}

/// Reduce the translates of `fiducial` to one vector per projective line,
/// using the stabilizer's left cosets.
pub fn projective_reduction(
    ctx: &GroupContext,
    alpha: &Character,
    fiducial: &[Complex64],
    stab: &Stabilizer,
) -> Result<ProjectiveOrbit> {
    let n = ctx.group().order();
    let mut covered = vec![false; n];
    let mut reps = Vec::new();
    let mut vectors = Vec::new();
    for x in 0..n {
        if covered[x] {
            continue;
        }
        reps.push(x);
        vectors.push(induced_rep_matrix(ctx, alpha, x)?.apply(fiducial)?);
        for &l in &stab.elements {
            covered[ctx.group().mul(x, l)] = true;
        }
    }
    Ok(ProjectiveOrbit { reps, vectors })
}

/// Outcome of the two-valuedness test on `|g|²`.
#[derive(Debug, Clone, PartialEq)]
pub enum EquiangularityVerdict {
    /// `|g|²` is 1 on `L` and constantly `c` off `L`.
    Equiangular {
        c: f64,
    },
    /// The stabilizer is all of `G`: the orbit is a single line and there
    /// is no off-value to test.
    DegenerateSingleLine,
    NotEquiangular,
}

/// Full analysis of the line system generated by a fiducial.
#[derive(Debug, Clone)]
pub struct EtfReport {
    pub stabilizer: Stabilizer,
    pub orbit: ProjectiveOrbit,
    pub verdict: EquiangularityVerdict,
    /// The common off-stabilizer value predicted by the trace identity,
    /// `(|H| − |L|) / (|G| − |L|)`; `None` in the degenerate case.
    pub c_theory: Option<f64>,
    pub cyclic: bool,
    pub frame: FrameReport,
    pub etf: bool,
}

/// Decides whether the translates of `fiducial` form an equiangular tight
/// frame, by the two-valuedness of `|⟨f, π(x)f⟩|²` together with
/// cyclicity; the verdict is cross-checked against a direct frame report
/// of the reduced system.
pub fn etf_criterion(
    ctx: &GroupContext,
    alpha: &Character,
    fiducial: &[Complex64],
) -> Result<EtfReport> {
    let norm = linalg::norm(fiducial);
    if norm < 1e-300 {
        return Err(Error::ZeroVector("fiducial".into()));
    }
    let f: Vec<Complex64> = fiducial.iter().map(|v| v / norm).collect();
    let pt = positive_type(ctx, alpha, &f)?;
    let g = pt.function();
    let stabilizer = projective_stabilizer(ctx, g)?;
    let orbit = projective_reduction(ctx, alpha, &f, &stabilizer)?;
    let cyclic = is_cyclic(ctx, alpha, &f)?;
    let frame = frame_report(&orbit.vectors, ctx.omega_len())?;

    let n = ctx.group().order();
    let nl = stabilizer.len();
    if nl == n {
        // Single projective line; nothing off the stabilizer to compare.
        let etf = frame.etf;
        return Ok(EtfReport {
            stabilizer,
            orbit,
            verdict: EquiangularityVerdict::DegenerateSingleLine,
            c_theory: None,
            cyclic,
            frame,
            etf,
        });
    }

    let mut off_min = f64::INFINITY;
    let mut off_max = 0.0f64;
    for x in 0..n {
        if !stabilizer.contains(x) {
            let v = g.get(x).norm_sqr();
            off_min = off_min.min(v);
            off_max = off_max.max(v);
        }
    }
    let c_theory = (ctx.h_order() as f64 - nl as f64) / (n as f64 - nl as f64);
    let two_valued = off_max - off_min <= TOL;
    let c = 0.5 * (off_min + off_max);
    let verdict = if two_valued {
        EquiangularityVerdict::Equiangular { c }
    } else {
        EquiangularityVerdict::NotEquiangular
    };
    let etf = two_valued && (c - c_theory).abs() <= TOL && cyclic;

    if etf != frame.etf {
        return Err(Error::InternalConsistency(format!(
            "two-valuedness criterion says etf={etf} but the reduced system reports etf={}",
            frame.etf
        )));
    }
    Ok(EtfReport {
        stabilizer,
        orbit,
        verdict,
        c_theory: Some(c_theory),
        cyclic,
        frame,
        etf,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{build_semidirect, AbelianGroup, FiniteGroup, SemidirectSpec};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn heisenberg(d: u64) -> crate::groups::SemidirectContext {
        let action = (0..d).map(|k| vec![vec![1, 0], vec![k % d, 1]]).collect();
        let spec = SemidirectSpec {
            h: AbelianGroup::new(vec![d, d]).unwrap(),
            k: FiniteGroup::cyclic(d as usize),
            action,
        };
        build_semidirect(&spec).unwrap()
    }

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn orthonormal_basis_is_a_trivial_etf() {
        let vs = vec![
            vec![re(1.0), re(0.0), re(0.0)],
            vec![re(0.0), re(1.0), re(0.0)],
            vec![re(0.0), re(0.0), re(1.0)],
        ];
        let r = frame_report(&vs, 3).unwrap();
        assert!((r.bounds.0 - 1.0).abs() < 1e-12 && (r.bounds.1 - 1.0).abs() < 1e-12);
        assert_eq!(r.coherence_sq, Some((0.0, 0.0)));
        assert_eq!(r.welch_sq, 0.0);
        assert!(r.tight && r.equiangular && r.spanning && r.etf);
    }

    #[test]
    fn three_equally_spaced_plane_vectors_are_an_etf() {
        let vs: Vec<Vec<Complex64>> = (0..3)
            .map(|k| {
                let th = std::f64::consts::TAU * k as f64 / 3.0;
                vec![re(th.cos()), re(th.sin())]
            })
            .collect();
        let r = frame_report(&vs, 2).unwrap();
        assert!(
            (r.bounds.0 - 1.5).abs() < 1e-12,
            "tight bound must be n/d = 3/2"
        );
        assert!((r.bounds.1 - 1.5).abs() < 1e-12);
        let (mn, mx) = r.coherence_sq.unwrap();
        assert!((mn - 0.25).abs() < 1e-12 && (mx - 0.25).abs() < 1e-12);
        assert!((r.welch_sq - 0.25).abs() < 1e-15);
        assert!(r.etf);
    }

    #[test]
    fn repeated_basis_vector_breaks_tightness_and_equiangularity() {
        let vs = vec![
            vec![re(1.0), re(0.0)],
            vec![re(0.0), re(1.0)],
            vec![re(1.0), re(0.0)],
        ];
        let r = frame_report(&vs, 2).unwrap();
        assert!((r.bounds.0 - 1.0).abs() < 1e-12 && (r.bounds.1 - 2.0).abs() < 1e-12);
        assert!(!r.tight && !r.equiangular && !r.etf);
        assert!(r.spanning);
        assert_eq!(r.coherence_sq, Some((0.0, 1.0)));
    }

    #[test]
    fn welch_level_is_frozen() {
        // 7 vectors in dimension 3: (7-3)/(3·6) = 2/9.
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        let vs: Vec<Vec<Complex64>> = (0..7)
            .map(|_| GroupFunction::random(3, &mut rng).values().to_vec())
            .collect();
        let r = frame_report(&vs, 3).unwrap();
        assert!((r.welch_sq - 2.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn zero_vectors_are_rejected() {
        let vs = vec![vec![re(0.0), re(0.0)]];
        assert!(matches!(frame_report(&vs, 2), Err(Error::ZeroVector(_))));
    }

    #[test]
    fn stabilizer_of_delta_fiducial_is_the_subgroup() {
        let heis = heisenberg(2);
        let ctx = heis.base();
        let alpha = ctx.abelian().character(vec![0, 1]).unwrap();
        let f = vec![re(1.0), re(0.0)];
        let pt = positive_type(ctx, &alpha, &f).unwrap();
        let stab = projective_stabilizer(ctx, pt.function()).unwrap();
        let mut expect: Vec<usize> = ctx.embedding().image().to_vec();
        expect.sort_unstable();
        assert_eq!(stab.elements, expect, "lines repeat exactly along H");
        let orbit = projective_reduction(ctx, &alpha, &f, &stab).unwrap();
        assert_eq!(orbit.reps, vec![0, 1]);
        assert_eq!(orbit.len(), 2);
    }

    #[test]
    fn non_subgroup_level_set_is_reported() {
        let ctx = GroupContext::new(
            FiniteGroup::cyclic(4),
            AbelianGroup::new(vec![2]).unwrap(),
            vec![0, 2],
        )
        .unwrap();
        // |g| = 1 on {0, 1}, which is not closed under addition mod 4.
        let g = GroupFunction::new(vec![re(1.0), re(1.0), re(0.0), re(0.0)]);
        assert!(matches!(
            projective_stabilizer(&ctx, &g),
            Err(Error::StabilizerNotClosed)
        ));
    }

    #[test]
    fn delta_fiducial_yields_the_trivial_etf() {
        let heis = heisenberg(2);
        let ctx = heis.base();
        let alpha = ctx.abelian().character(vec![0, 1]).unwrap();
        let f = vec![re(1.0), re(0.0)];
        let r = etf_criterion(ctx, &alpha, &f).unwrap();
        assert_eq!(r.stabilizer.len(), 4);
        assert_eq!(r.orbit.len(), 2);
        match r.verdict {
            EquiangularityVerdict::Equiangular { c } => assert!(c.abs() < 1e-12),
            ref v => panic!("expected an equiangular verdict, got {v:?}"),
        }
        assert_eq!(r.c_theory, Some(0.0));
        assert!(r.cyclic && r.etf && r.frame.etf);
    }

    #[test]
    fn generic_fiducial_is_not_equiangular() {
        let heis = heisenberg(3);
        let ctx = heis.base();
        let alpha = ctx.abelian().character(vec![0, 1]).unwrap();
        let f = vec![re(0.9), Complex64::new(0.1, 0.3), re(-0.2)];
        let r = etf_criterion(ctx, &alpha, &f).unwrap();
        assert_eq!(r.verdict, EquiangularityVerdict::NotEquiangular);
        assert!(!r.etf);
    }

    #[test]
    fn full_stabilizer_reports_a_single_line() {
        // H = G: the representation is one-dimensional, every translate
        // is the same projective point.
        let ctx = GroupContext::new(
            FiniteGroup::cyclic(4),
            AbelianGroup::new(vec![4]).unwrap(),
            vec![0, 1, 2, 3],
        )
        .unwrap();
        let alpha = ctx.abelian().character(vec![1]).unwrap();
        let r = etf_criterion(&ctx, &alpha, &[re(1.0)]).unwrap();
        assert_eq!(r.verdict, EquiangularityVerdict::DegenerateSingleLine);
        assert_eq!(r.orbit.len(), 1);
        assert_eq!(r.c_theory, None);
        assert!(r.etf, "a single unit vector in C¹ is a tight frame");
    }
}
