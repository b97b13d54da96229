//! JSON interchange types.
//!
//! The math types stay serde-free; this module owns the wire format.
//! Complex numbers travel as `[re, im]` pairs, group elements as their
//! canonical indices, and characters as exponent tuples. Groups are
//! specified by a tagged `kind`:
//!
//! ```json
//! {"kind": "heisenberg", "d": 3}
//! {"kind": "affine", "q": 7}
//! {"kind": "semidirect", "factors": [3], "k_table": [[0,1],[1,0]], "action": [[[1]],[[2]]]}
//! {"kind": "cayley", "table": [[0,1,2,3],[1,2,3,0],[2,3,0,1],[3,0,1,2]],
//!  "subgroup_factors": [2], "embedding": [0, 2]}
//! ```

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::constructions::{
    build_affine, build_heisenberg, AffineContext, HeisenbergContext, PaleyEtf, SearchOutcome,
    SicVerdict,
};
use crate::error::{Error, Result};
use crate::frames::{EquiangularityVerdict, EtfReport, FrameReport};
use crate::groups::{
    build_semidirect, AbelianGroup, FiniteGroup, GroupContext, SemidirectContext, SemidirectSpec,
};
use crate::linalg::CMat;
use crate::repn::MonomialMatrix;
use crate::sispace::FiberBounds;
use crate::zak::{GroupFunction, ZakArray};

/// A complex number on the wire: `[re, im]`.
pub type ComplexPair = [f64; 2];

pub fn to_pair(z: Complex64) -> ComplexPair {
    [z.re, z.im]
}

pub fn from_pair(p: ComplexPair) -> Complex64 {
    Complex64::new(p[0], p[1])
}

pub fn vec_to_pairs(v: &[Complex64]) -> Vec<ComplexPair> {
    v.iter().copied().map(to_pair).collect()
}

pub fn vec_from_pairs(v: &[ComplexPair]) -> Vec<Complex64> {
    v.iter().copied().map(from_pair).collect()
}

fn mat_to_pairs(m: &CMat) -> Vec<Vec<ComplexPair>> {
    (0..m.rows()).map(|r| vec_to_pairs(m.row(r))).collect()
}

/// Declarative description of a group-with-subgroup setup.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupSpec {
    /// `H ⋊ K` from the abelian factors of `H`, the Cayley table of `K`,
    /// and one action matrix per `K`-element.
    Semidirect {
        factors: Vec<u64>,
        k_table: Vec<Vec<usize>>,
        action: Vec<Vec<Vec<u64>>>,
    },
    /// Any finite group by Cayley table, with an embedded abelian
    /// subgroup and an optional explicit transversal.
    Cayley {
        table: Vec<Vec<usize>>,
        subgroup_factors: Vec<u64>,
        embedding: Vec<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        transversal: Option<Vec<usize>>,
    },
    /// The degree-`d` discrete Heisenberg group.
    Heisenberg { d: usize },
    /// The affine-type group for a prime power `q ≡ 3 (mod 4)`.
    Affine { q: u64 },
}

/// A built group, keeping whichever extra structure the kind carries.
pub enum BuiltGroup {
    Semidirect(SemidirectContext),
    Cayley(GroupContext),
    Heisenberg(HeisenbergContext),
    Affine(AffineContext),
}

impl BuiltGroup {
    pub fn context(&self) -> &GroupContext {
        match self {
            BuiltGroup::Semidirect(s) => s.base(),
            BuiltGroup::Cayley(c) => c,
            BuiltGroup::Heisenberg(h) => h.base(),
            BuiltGroup::Affine(a) => a.base(),
        }
    }
}

/// Materialize a [`GroupSpec`].
pub fn build_group(spec: &GroupSpec) -> Result<BuiltGroup> {
    match spec {
        GroupSpec::Semidirect {
            factors,
            k_table,
            action,
        } => {
            let h = AbelianGroup::new(factors.clone())?;
            let k = FiniteGroup::from_table(k_table)?;
            let sctx = build_semidirect(&SemidirectSpec {
                h,
                k,
                action: action.clone(),
            })?;
            Ok(BuiltGroup::Semidirect(sctx))
        }
        GroupSpec::Cayley {
            table,
            subgroup_factors,
            embedding,
            transversal,
        } => {
            let group = FiniteGroup::from_table(table)?;
            let abelian = AbelianGroup::new(subgroup_factors.clone())?;
            let ctx = match transversal {
                Some(reps) => {
                    GroupContext::with_reps(group, abelian, embedding.clone(), reps.clone())?
                }
                None => GroupContext::new(group, abelian, embedding.clone())?,
            };
            Ok(BuiltGroup::Cayley(ctx))
        }
        GroupSpec::Heisenberg { d } => Ok(BuiltGroup::Heisenberg(build_heisenberg(*d)?)),
        GroupSpec::Affine { q } => Ok(BuiltGroup::Affine(build_affine(*q)?)),
    }
}

// ---------------------------------------------------------------------------
// Payload DTOs
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupFunctionJson {
    pub values: Vec<ComplexPair>,
}

impl GroupFunctionJson {
    pub fn from_function(f: &GroupFunction) -> Self {
        GroupFunctionJson {
            values: vec_to_pairs(f.values()),
        }
    }

    pub fn to_function(&self) -> GroupFunction {
        GroupFunction::new(vec_from_pairs(&self.values))
    }
}

/// Fibers row by row: `rows[α][j]` is the value at character `α` and
/// transversal position `j`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ZakArrayJson {
    pub rows: Vec<Vec<ComplexPair>>,
}

impl ZakArrayJson {
    pub fn from_array(z: &ZakArray) -> Self {
        ZakArrayJson {
            rows: mat_to_pairs(z.data()),
        }
    }

    pub fn to_array(&self, ctx: &GroupContext) -> Result<ZakArray> {
        let rows = self.rows.len();
        if rows != ctx.h_order() {
            return Err(Error::DomainMismatch {
                expected: ctx.h_order(),
                got: rows,
            });
        }
        let cols = ctx.omega_len();
        let mut data = CMat::zeros(rows, cols);
        for (a, row) in self.rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DomainMismatch {
                    expected: cols,
                    got: row.len(),
                });
            }
            for (j, &p) in row.iter().enumerate() {
                data[(a, j)] = from_pair(p);
            }
        }
        ZakArray::new(ctx, data)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MonomialMatrixJson {
    pub dim: usize,
    pub perm: Vec<usize>,
    pub phases: Vec<ComplexPair>,
}

impl MonomialMatrixJson {
    pub fn from_matrix(m: &MonomialMatrix) -> Self {
        MonomialMatrixJson {
            dim: m.dim(),
            perm: m.perm().to_vec(),
            phases: vec_to_pairs(m.phases()),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FrameReportJson {
    pub n: usize,
    pub d: usize,
    pub bounds: [f64; 2],
    pub coherence_sq: Option<[f64; 2]>,
    pub welch_sq: f64,
    pub tight: bool,
    pub equiangular: bool,
    pub spanning: bool,
    pub etf: bool,
    pub gram: Vec<Vec<ComplexPair>>,
}

impl FrameReportJson {
    pub fn from_report(r: &FrameReport) -> Self {
        FrameReportJson {
            n: r.n,
            d: r.d,
            bounds: [r.bounds.0, r.bounds.1],
            coherence_sq: r.coherence_sq.map(|(a, b)| [a, b]),
            welch_sq: r.welch_sq,
            tight: r.tight,
            equiangular: r.equiangular,
            spanning: r.spanning,
            etf: r.etf,
            gram: mat_to_pairs(&r.gram),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum VerdictJson {
    Equiangular { c: f64 },
    DegenerateSingleLine,
    NotEquiangular,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EtfReportJson {
    pub stabilizer: Vec<usize>,
    pub orbit_reps: Vec<usize>,
    pub vectors: Vec<Vec<ComplexPair>>,
    pub verdict: VerdictJson,
    pub c_theory: Option<f64>,
    pub cyclic: bool,
    pub etf: bool,
    pub frame: FrameReportJson,
}

impl EtfReportJson {
    pub fn from_report(r: &EtfReport) -> Self {
        EtfReportJson {
            stabilizer: r.stabilizer.elements.clone(),
            orbit_reps: r.orbit.reps.clone(),
            vectors: r.orbit.vectors.iter().map(|v| vec_to_pairs(v)).collect(),
            verdict: match r.verdict {
                EquiangularityVerdict::Equiangular { c } => VerdictJson::Equiangular { c },
                EquiangularityVerdict::DegenerateSingleLine => VerdictJson::DegenerateSingleLine,
                EquiangularityVerdict::NotEquiangular => VerdictJson::NotEquiangular,
            },
            c_theory: r.c_theory,
            cyclic: r.cyclic,
            etf: r.etf,
            frame: FrameReportJson::from_report(&r.frame),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PaleyEtfJson {
    pub q: u64,
    pub dim: usize,
    pub n_lines: usize,
    pub tight_constant: f64,
    pub coherence_sq: f64,
    pub report: EtfReportJson,
}

impl PaleyEtfJson {
    pub fn from_outcome(p: &PaleyEtf) -> Self {
        PaleyEtfJson {
            q: p.q,
            dim: p.dim,
            n_lines: p.n_lines,
            tight_constant: p.tight_constant,
            coherence_sq: p.coherence_sq,
            report: EtfReportJson::from_report(&p.report),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FiberBoundsJson {
    pub per_char: Vec<Option<[f64; 2]>>,
    pub dims: Vec<usize>,
    pub global: [f64; 2],
}

impl FiberBoundsJson {
    pub fn from_bounds(b: &FiberBounds) -> Self {
        FiberBoundsJson {
            per_char: b.per_char.iter().map(|o| o.map(|(x, y)| [x, y])).collect(),
            dims: b.dims.clone(),
            global: [b.global.0, b.global.1],
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SicVerdictJson {
    pub max_quartic_dev: f64,
    pub quartic_ok: bool,
    pub n_lines: usize,
    pub coherence_dev: f64,
    pub gram_ok: bool,
    pub certified: bool,
}

impl SicVerdictJson {
    pub fn from_verdict(v: &SicVerdict) -> Self {
        SicVerdictJson {
            max_quartic_dev: v.max_quartic_dev,
            quartic_ok: v.quartic_ok,
            n_lines: v.n_lines,
            coherence_dev: v.coherence_dev,
            gram_ok: v.gram_ok,
            certified: v.certified,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SicSearchJson {
    pub d: usize,
    pub seed: u64,
    pub fiducial: Vec<ComplexPair>,
    pub merit: f64,
    pub restarts_used: usize,
    pub iterations: usize,
    pub verdict: SicVerdictJson,
}

impl SicSearchJson {
    pub fn from_outcome(d: usize, seed: u64, o: &SearchOutcome) -> Self {
        SicSearchJson {
            d,
            seed,
            fiducial: vec_to_pairs(&o.fiducial),
            merit: o.merit,
            restarts_used: o.restarts_used,
            iterations: o.iterations,
            verdict: SicVerdictJson::from_verdict(&o.verdict),
        }
    }
}

// ---------------------------------------------------------------------------
// Request envelopes consumed by the command-line tool
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ZakRequest {
    pub group: GroupSpec,
    pub function: Vec<ComplexPair>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InverseZakRequest {
    pub group: GroupSpec,
    pub array: ZakArrayJson,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InducedMatrixRequest {
    pub group: GroupSpec,
    /// Exponent tuple of the inducing character.
    pub character: Vec<u64>,
    /// Group element index.
    pub element: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SiBoundsRequest {
    pub group: GroupSpec,
    pub generators: Vec<Vec<ComplexPair>>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_specs_parse_from_frozen_json() {
        let heis: GroupSpec = serde_json::from_str(r#"{"kind":"heisenberg","d":2}"#).unwrap();
        assert_eq!(build_group(&heis).unwrap().context().group().order(), 8);

        let affine: GroupSpec = serde_json::from_str(r#"{"kind":"affine","q":7}"#).unwrap();
        assert_eq!(build_group(&affine).unwrap().context().group().order(), 21);

        let semi: GroupSpec = serde_json::from_str(
            r#"{"kind":"semidirect","factors":[3],"k_table":[[0,1],[1,0]],"action":[[[1]],[[2]]]}"#,
        )
        .unwrap();
        assert_eq!(build_group(&semi).unwrap().context().group().order(), 6);

        let cayley: GroupSpec = serde_json::from_str(
            r#"{"kind":"cayley","table":[[0,1,2,3],[1,2,3,0],[2,3,0,1],[3,0,1,2]],
                "subgroup_factors":[2],"embedding":[0,2]}"#,
        )
        .unwrap();
        let built = build_group(&cayley).unwrap();
        assert_eq!(built.context().omega_len(), 2);
    }

    #[test]
    fn bad_specs_are_rejected() {
        let bad: GroupSpec = serde_json::from_str(r#"{"kind":"affine","q":5}"#).unwrap();
        assert!(build_group(&bad).is_err());
        assert!(serde_json::from_str::<GroupSpec>(r#"{"kind":"nonsense"}"#).is_err());
    }

    #[test]
    fn function_and_array_round_trip() {
        let spec: GroupSpec = serde_json::from_str(r#"{"kind":"heisenberg","d":2}"#).unwrap();
        let built = build_group(&spec).unwrap();
        let ctx = built.context();
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(83);
        let f = GroupFunction::random(ctx.group().order(), &mut rng);
        let j = GroupFunctionJson::from_function(&f);
        let text = serde_json::to_string(&j).unwrap();
        let back: GroupFunctionJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_function(), f, "JSON floats round-trip exactly");

        let z = crate::zak::zak_right(ctx, &f).unwrap();
        let zj = ZakArrayJson::from_array(&z);
        let ztext = serde_json::to_string(&zj).unwrap();
        let zback: ZakArrayJson = serde_json::from_str(&ztext).unwrap();
        let z2 = zback.to_array(ctx).unwrap();
        for a in 0..ctx.h_order() {
            for j in 0..ctx.omega_len() {
                assert_eq!(z.get(a, j), z2.get(a, j));
            }
        }
    }

    #[test]
    fn array_dimension_mismatch_is_rejected() {
        let spec: GroupSpec = serde_json::from_str(r#"{"kind":"heisenberg","d":2}"#).unwrap();
        let built = build_group(&spec).unwrap();
        let bad = ZakArrayJson {
            rows: vec![vec![[0.0, 0.0]; 2]; 3],
        };
        assert!(bad.to_array(built.context()).is_err());
    }

    #[test]
    fn verdict_json_is_tagged() {
        let v = VerdictJson::Equiangular { c: 0.25 };
        let text = serde_json::to_string(&v).unwrap();
        assert_eq!(text, r#"{"type":"equiangular","c":0.25}"#);
        let d = VerdictJson::DegenerateSingleLine;
        assert_eq!(
            serde_json::to_string(&d).unwrap(),
            r#"{"type":"degenerate_single_line"}"#
        );
    }
}
