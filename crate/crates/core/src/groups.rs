//! Finite groups, abelian subgroups, characters and semidirect products.
//!
//! The central object is [`GroupContext`]: a finite group `G` together with
//! an embedded abelian subgroup `H` and a transversal `Ω` of the left
//! cosets `G/H` (so every `x ∈ G` factors uniquely as `x = ω·h`). All
//! transforms and representations in this crate are built relative to such
//! a triple.
//!
//! Conventions, fixed once and used everywhere:
//!
//! * elements of `H = Z_{d_1} × … × Z_{d_k}` are tuples in row-major
//!   lexicographic order (last coordinate fastest);
//! * characters of `H` are exponent tuples `a`, `α_a(h) = exp(2πi Σ a_i
//!   h_i / d_i)`, enumerated exactly like the elements;
//! * a transversal's first representative is the identity of `G`;
//! * a semidirect product `H ⋊ K` enumerates `(h, k)` with the `H`-tuple
//!   as major key and the `K`-index as minor key, and multiplies by
//!   `(h₁,k₁)(h₂,k₂) = (h₁ + φ_{k₁}(h₂), k₁k₂)` where `φ` is the action;
//! * `G` acts on characters by `(x·α)(h) = α(x⁻¹ h x)`, defined whenever
//!   conjugation by `x` preserves `H`.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::CMat;

/// A finite abelian group in invariant-factor form `Z_{d_1} × … × Z_{d_k}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianGroup {
    factors: Vec<u64>,
    strides: Vec<usize>,
    order: usize,
    /// lcm of the factors; common denominator for character exponents.
    lcm: u64,
    /// `lcm / d_i` per coordinate.
    weights: Vec<u64>,
}

/// A character of an [`AbelianGroup`], stored as its exponent tuple.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Character {
    pub exponents: Vec<u64>,
}

impl AbelianGroup {
    pub fn new(factors: Vec<u64>) -> Result<Self> {
        if factors.is_empty() || factors.contains(&0) {
            return Err(Error::InvalidInput(
                "abelian factors must be nonempty and positive".into(),
            ));
        }
        let mut order = 1usize;
        for &d in &factors {
            order = order
                .checked_mul(d as usize)
                .ok_or_else(|| Error::InvalidInput("group order overflows".into()))?;
        }
        let mut strides = vec![1usize; factors.len()];
        for i in (0..factors.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * factors[i + 1] as usize;
        }
        let lcm = factors.iter().copied().fold(1u64, lcm_u64);
        let weights = factors.iter().map(|&d| lcm / d).collect();
        Ok(AbelianGroup {
            factors,
            strides,
            order,
            lcm,
            weights,
        })
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn index_of(&self, tuple: &[u64]) -> Result<usize> {
        if tuple.len() != self.factors.len() {
            return Err(Error::DomainMismatch {
                expected: self.factors.len(),
                got: tuple.len(),
            });
        }
        let mut idx = 0usize;
        for (i, (&t, &d)) in tuple.iter().zip(&self.factors).enumerate() {
            if t >= d {
                return Err(Error::IndexOutOfRange {
                    index: t as usize,
                    limit: d as usize,
                });
            }
            idx += t as usize * self.strides[i];
        }
        Ok(idx)
    }

    pub fn tuple_of(&self, index: usize) -> Vec<u64> {
        assert!(index < self.order, "element index out of range");
        self.factors
            .iter()
            .zip(&self.strides)
            .map(|(&d, &s)| (index / s % d as usize) as u64)
            .collect()
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(b)
            .zip(&self.factors)
            .map(|((&x, &y), &d)| (x + y) % d)
            .collect()
    }

    pub fn neg(&self, a: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(&self.factors)
            .map(|(&x, &d)| (d - x) % d)
            .collect()
    }

    /// Build (and reduce) a character from an exponent tuple.
    pub fn character(&self, exponents: Vec<u64>) -> Result<Character> {
        if exponents.len() != self.factors.len() {
            return Err(Error::DomainMismatch {
                expected: self.factors.len(),
                got: exponents.len(),
            });
        }
        Ok(Character {
            exponents: exponents
                .iter()
                .zip(&self.factors)
                .map(|(&a, &d)| a % d)
                .collect(),
        })
    }

    /// Characters share the element enumeration: the character with index
    /// `i` has exponent tuple `tuple_of(i)`.
    pub fn char_from_index(&self, index: usize) -> Character {
        Character {
            exponents: self.tuple_of(index),
        }
    }

    pub fn char_index(&self, chi: &Character) -> Result<usize> {
        self.index_of(&chi.exponents)
    }

    pub fn characters(&self) -> impl Iterator<Item = Character> + '_ {
        (0..self.order).map(|i| self.char_from_index(i))
    }

    pub fn char_product(&self, a: &Character, b: &Character) -> Character {
        Character {
            exponents: self.add(&a.exponents, &b.exponents),
        }
    }

    pub fn char_inverse(&self, a: &Character) -> Character {
        Character {
            exponents: self.neg(&a.exponents),
        }
    }

    /// `α(h) = exp(2πi Σ a_i h_i / d_i)`, evaluated as an exact root of
    /// unity: the exponent is reduced to `m / lcm` in integer arithmetic
    /// before a single call to `from_polar`.
    pub fn char_eval(&self, alpha: &Character, h: &[u64]) -> Result<Complex64> {
        if alpha.exponents.len() != self.factors.len() || h.len() != self.factors.len() {
            return Err(Error::DomainMismatch {
                expected: self.factors.len(),
                got: alpha.exponents.len().max(h.len()),
            });
        }
        let mut m: u128 = 0;
        for ((&a, &hi), &w) in alpha.exponents.iter().zip(h).zip(&self.weights) {
            m += a as u128 * hi as u128 * w as u128;
        }
        let m = (m % self.lcm as u128) as u64;
        Ok(root_of_unity(m, self.lcm))
    }
}

/// `exp(2πi m / n)`.
pub(crate) fn root_of_unity(m: u64, n: u64) -> Complex64 {
    Complex64::from_polar(1.0, std::f64::consts::TAU * m as f64 / n as f64)
}

fn lcm_u64(a: u64, b: u64) -> u64 {
    a / gcd_u64(a, b) * b
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// A finite group given by its Cayley table.
///
/// `from_table` checks the axioms: Latin square, two-sided identity,
/// two-sided inverses, and associativity — exhaustively up to order 64,
/// by 10⁴ seeded random triples above that.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    order: usize,
    identity: usize,
    mul_table: Vec<usize>,
    inv_table: Vec<usize>,
}

impl FiniteGroup {
    pub fn from_table(table: &[Vec<usize>]) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::NotAGroup("empty table".into()));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotAGroup(format!(
                    "row {i} has length {}",
                    row.len()
                )));
            }
            if row.iter().any(|&e| e >= n) {
                return Err(Error::NotAGroup(format!("row {i} has an entry ≥ {n}")));
            }
        }
        // Latin square: rows and columns are permutations.
        for i in 0..n {
            let mut row_seen = vec![false; n];
            let mut col_seen = vec![false; n];
            for j in 0..n {
                if std::mem::replace(&mut row_seen[table[i][j]], true) {
                    return Err(Error::NotAGroup(format!("row {i} repeats an entry")));
                }
                if std::mem::replace(&mut col_seen[table[j][i]], true) {
                    return Err(Error::NotAGroup(format!("column {i} repeats an entry")));
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::NotAGroup("no two-sided identity".into()))?;
        let mut inv_table = vec![0usize; n];
        for x in 0..n {
            let y = (0..n)
                .find(|&y| table[x][y] == identity && table[y][x] == identity)
                .ok_or_else(|| Error::NotAGroup(format!("element {x} has no inverse")))?;
            inv_table[x] = y;
        }
        let check = |x: usize, y: usize, z: usize| table[table[x][y]][z] == table[x][table[y][z]];
        if n <= 64 {
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        if !check(x, y, z) {
                            return Err(Error::NotAGroup(format!(
                                "associativity fails at ({x}, {y}, {z})"
                            )));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5EED);
            for _ in 0..10_000 {
                let (x, y, z) = (
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                );
                if !check(x, y, z) {
                    return Err(Error::NotAGroup(format!(
                        "associativity fails at ({x}, {y}, {z})"
                    )));
                }
            }
        }
        Ok(FiniteGroup {
            order: n,
            identity,
            mul_table: table.iter().flatten().copied().collect(),
            inv_table,
        })
    }

    /// The cyclic group `Z_n` with identity 0.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0);
        let table: Vec<Vec<usize>> = (0..n)
            .map(|i| (0..n).map(|j| (i + j) % n).collect())
            .collect();
        FiniteGroup::from_table(&table).expect("cyclic tables are groups")
    }

    /// Cayley table of an abelian group under its tuple enumeration.
    pub fn from_abelian(a: &AbelianGroup) -> Self {
        let n = a.order();
        let tuples: Vec<Vec<u64>> = (0..n).map(|i| a.tuple_of(i)).collect();
        let table: Vec<Vec<usize>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| a.index_of(&a.add(&tuples[i], &tuples[j])).unwrap())
                    .collect()
            })
            .collect();
        FiniteGroup::from_table(&table).expect("abelian tables are groups")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul_table[x * self.order + y]
    }

    pub fn inv(&self, x: usize) -> usize {
        self.inv_table[x]
    }

    pub fn conj(&self, x: usize, h: usize) -> usize {
        // x⁻¹ h x
        self.mul(self.mul(self.inv(x), h), x)
    }
}

/// An injective homomorphism of an [`AbelianGroup`] into a [`FiniteGroup`].
#[derive(Debug, Clone)]
pub struct SubgroupEmbedding {
    abelian: AbelianGroup,
    into: Vec<usize>,
}

impl SubgroupEmbedding {
    pub fn new(group: &FiniteGroup, abelian: AbelianGroup, into: Vec<usize>) -> Result<Self> {
        if into.len() != abelian.order() {
            return Err(Error::DomainMismatch {
                expected: abelian.order(),
                got: into.len(),
            });
        }
        let mut seen = vec![false; group.order()];
        for &g in &into {
            if g >= group.order() {
                return Err(Error::IndexOutOfRange {
                    index: g,
                    limit: group.order(),
                });
            }
            if std::mem::replace(&mut seen[g], true) {
                return Err(Error::NotAHomomorphism("embedding is not injective".into()));
            }
        }
        let n = abelian.order();
        for i in 0..n {
            let ti = abelian.tuple_of(i);
            for j in 0..n {
                let tj = abelian.tuple_of(j);
                let sum = abelian.index_of(&abelian.add(&ti, &tj)).unwrap();
                if group.mul(into[i], into[j]) != into[sum] {
                    return Err(Error::NotAHomomorphism(format!(
                        "embedding breaks at H-indices ({i}, {j})"
                    )));
                }
            }
        }
        if into[0] != group.identity() {
            return Err(Error::NotAHomomorphism(
                "embedding must send 0 to the identity".into(),
            ));
        }
        Ok(SubgroupEmbedding { abelian, into })
    }

    pub fn abelian(&self) -> &AbelianGroup {
        &self.abelian
    }

    pub fn into_group(&self, h_index: usize) -> usize {
        self.into[h_index]
    }

    pub fn image(&self) -> &[usize] {
        &self.into
    }
}

/// A transversal of the left cosets `G/H`: representatives `ω_j` (with
/// `ω_0 = 1_G`) and, for every `x ∈ G`, the unique factorization
/// `x = ω_j · h`.
#[derive(Debug, Clone)]
pub struct Transversal {
    reps: Vec<usize>,
    /// `x → (j, h_index)` with `x = reps[j] · into(h)`.
    coset_of: Vec<(usize, usize)>,
}

impl Transversal {
    /// Deterministic transversal: identity first, then the smallest
    /// yet-uncovered element, in element order.
    pub fn greedy(group: &FiniteGroup, emb: &SubgroupEmbedding) -> Result<Self> {
        let mut reps = Vec::new();
        let mut coset_of = vec![(usize::MAX, usize::MAX); group.order()];
        let mut covered = vec![false; group.order()];
        let mut next = Some(group.identity());
        while let Some(rep) = next {
            let j = reps.len();
            reps.push(rep);
            Self::cover(group, emb, rep, j, &mut covered, &mut coset_of);
            next = (0..group.order()).find(|&x| !covered[x]);
        }
        Ok(Transversal { reps, coset_of })
    }

    /// Build from caller-chosen representatives; validates that they cover
    /// every coset exactly once and start at the identity.
    pub fn from_reps(
        group: &FiniteGroup,
        emb: &SubgroupEmbedding,
        reps: Vec<usize>,
    ) -> Result<Self> {
        if reps.first() != Some(&group.identity()) {
            return Err(Error::InvalidInput(
                "transversal must start at the identity".into(),
            ));
        }
        let mut coset_of = vec![(usize::MAX, usize::MAX); group.order()];
        let mut covered = vec![false; group.order()];
        for (j, &rep) in reps.iter().enumerate() {
            if rep >= group.order() {
                return Err(Error::IndexOutOfRange {
                    index: rep,
                    limit: group.order(),
                });
            }
            for h in 0..emb.abelian().order() {
                let x = group.mul(rep, emb.into_group(h));
                if std::mem::replace(&mut covered[x], true) {
                    return Err(Error::InvalidInput(format!(
                        "representatives overlap at element {x}"
                    )));
                }
                coset_of[x] = (j, h);
            }
        }
        if covered.iter().any(|&c| !c) {
            return Err(Error::InvalidInput(
                "representatives do not cover the group".into(),
            ));
        }
        Ok(Transversal { reps, coset_of })
    }

    fn cover(
        group: &FiniteGroup,
        emb: &SubgroupEmbedding,
        rep: usize,
        j: usize,
        covered: &mut [bool],
        coset_of: &mut [(usize, usize)],
    ) {
        for h in 0..emb.abelian().order() {
            let x = group.mul(rep, emb.into_group(h));
            covered[x] = true;
            coset_of[x] = (j, h);
        }
    }

    pub fn reps(&self) -> &[usize] {
        &self.reps
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Factor `x = reps[j] · h`, returning `(j, h_index)`.
    pub fn factor(&self, x: usize) -> (usize, usize) {
        self.coset_of[x]
    }
}

/// A group `G` with an embedded abelian subgroup and a coset transversal,
/// plus the lookup tables the transforms need.
#[derive(Debug, Clone)]
pub struct GroupContext {
    group: FiniteGroup,
    embedding: SubgroupEmbedding,
    transversal: Transversal,
    /// G-index → H-index for elements in the image of `H`.
    h_of: Vec<Option<usize>>,
    /// `(j, h) → reps[j]·h`, the inverse of `Transversal::factor`.
    xh: Vec<usize>,
    /// `|Ĥ| × |H|` table of character values.
    char_values: CMat,
}

impl GroupContext {
    pub fn new(group: FiniteGroup, abelian: AbelianGroup, into: Vec<usize>) -> Result<Self> {
        let embedding = SubgroupEmbedding::new(&group, abelian, into)?;
        let transversal = Transversal::greedy(&group, &embedding)?;
        Self::assemble(group, embedding, transversal)
    }

    pub fn with_reps(
        group: FiniteGroup,
        abelian: AbelianGroup,
        into: Vec<usize>,
        reps: Vec<usize>,
    ) -> Result<Self> {
        let embedding = SubgroupEmbedding::new(&group, abelian, into)?;
        let transversal = Transversal::from_reps(&group, &embedding, reps)?;
        Self::assemble(group, embedding, transversal)
    }

    fn assemble(
        group: FiniteGroup,
        embedding: SubgroupEmbedding,
        transversal: Transversal,
    ) -> Result<Self> {
        let h_order = embedding.abelian().order();
        let mut h_of = vec![None; group.order()];
        for (h, &g) in embedding.image().iter().enumerate() {
            h_of[g] = Some(h);
        }
        let mut xh = vec![0usize; group.order()];
        for j in 0..transversal.len() {
            for h in 0..h_order {
                xh[j * h_order + h] = group.mul(transversal.reps()[j], embedding.into_group(h));
            }
        }
        let abelian = embedding.abelian();
        let mut char_values = CMat::zeros(h_order, h_order);
        for a in 0..h_order {
            let chi = abelian.char_from_index(a);
            for h in 0..h_order {
                char_values[(a, h)] = abelian.char_eval(&chi, &abelian.tuple_of(h))?;
            }
        }
        Ok(GroupContext {
            group,
            embedding,
            transversal,
            h_of,
            xh,
            char_values,
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn abelian(&self) -> &AbelianGroup {
        self.embedding.abelian()
    }

    pub fn embedding(&self) -> &SubgroupEmbedding {
        &self.embedding
    }

    pub fn transversal(&self) -> &Transversal {
        &self.transversal
    }

    pub fn h_order(&self) -> usize {
        self.embedding.abelian().order()
    }

    pub fn omega_len(&self) -> usize {
        self.transversal.len()
    }

    /// H-index of a group element, if it lies in the image of `H`.
    pub fn h_of(&self, x: usize) -> Option<usize> {
        self.h_of[x]
    }

    /// `reps[j] · h` as a group element.
    pub fn xh(&self, j: usize, h: usize) -> usize {
        self.xh[j * self.h_order() + h]
    }

    /// Value `α_a(h)` from the precomputed table (indices, not tuples).
    pub fn char_value(&self, alpha: usize, h: usize) -> Complex64 {
        self.char_values[(alpha, h)]
    }

    /// True when every conjugation `x⁻¹ H x` stays inside the image of `H`.
    pub fn h_is_normal(&self) -> bool {
        (0..self.group.order()).all(|x| self.conjugation_stays_in_h(x))
    }

    fn conjugation_stays_in_h(&self, x: usize) -> bool {
        let abelian = self.abelian();
        (0..abelian.rank()).all(|i| {
            let gen = self.generator_in_group(i);
            self.h_of[self.group.conj(x, gen)].is_some()
        })
    }

    fn generator_in_group(&self, coord: usize) -> usize {
        let abelian = self.abelian();
        let mut tuple = vec![0u64; abelian.rank()];
        if abelian.factors()[coord] > 1 {
            tuple[coord] = 1;
        }
        self.embedding.into_group(abelian.index_of(&tuple).unwrap())
    }
}

/// The conjugated character `x·α`, with `(x·α)(h) = α(x⁻¹ h x)`.
///
/// Fails with [`Error::NotNormal`] when conjugation by `x` moves `H` out
/// of its own image. The computation is exact integer arithmetic on
/// exponent tuples.
pub fn conj_character(ctx: &GroupContext, x: usize, alpha: &Character) -> Result<Character> {
    let abelian = ctx.abelian();
    if x >= ctx.group().order() {
        return Err(Error::IndexOutOfRange {
            index: x,
            limit: ctx.group().order(),
        });
    }
    if alpha.exponents.len() != abelian.rank() {
        return Err(Error::DomainMismatch {
            expected: abelian.rank(),
            got: alpha.exponents.len(),
        });
    }
    let lcm = abelian.factors().iter().copied().fold(1u64, lcm_u64);
    let weights: Vec<u64> = abelian.factors().iter().map(|&d| lcm / d).collect();
    let mut exponents = Vec::with_capacity(abelian.rank());
    for i in 0..abelian.rank() {
        let d_i = abelian.factors()[i];
        if d_i == 1 {
            exponents.push(0);
            continue;
        }
        let mut tuple = vec![0u64; abelian.rank()];
        tuple[i] = 1;
        let gen = ctx
            .embedding()
            .into_group(abelian.index_of(&tuple).unwrap());
        let conj = ctx.group().conj(x, gen);
        let h_idx = ctx.h_of(conj).ok_or(Error::NotNormal { element: x })?;
        let c = abelian.tuple_of(h_idx);
        // β(e_i) = α(x⁻¹ e_i x) = exp(2πi m / lcm); solve for the exponent
        // b_i with β(e_i) = exp(2πi b_i / d_i). Exactness is guaranteed
        // because conjugation is an automorphism of H.
        let mut m: u128 = 0;
        for ((&a, &cj), &w) in alpha.exponents.iter().zip(&c).zip(&weights) {
            m += a as u128 * cj as u128 * w as u128;
        }
        let m = m % lcm as u128;
        let num = m * d_i as u128;
        if !num.is_multiple_of(lcm as u128) {
            return Err(Error::InternalConsistency(format!(
                "conjugated character exponent {m}/{lcm} is not a d_{i}-th root"
            )));
        }
        exponents.push((num / lcm as u128) as u64 % d_i);
    }
    Ok(Character { exponents })
}

/// Build recipe for a semidirect product `H ⋊ K` with `H = (Z_d)^m` and
/// `K` acting through matrices in `GL_m(Z_d)`.
#[derive(Debug, Clone)]
pub struct SemidirectSpec {
    pub h: AbelianGroup,
    pub k: FiniteGroup,
    /// Per `K`-element, an `m × m` matrix mod `d` acting on column tuples.
    pub action: Vec<Vec<Vec<u64>>>,
}

impl SemidirectSpec {
    pub fn build(&self) -> Result<SemidirectContext> {
        build_semidirect(self)
    }
}

/// A built semidirect product: the [`GroupContext`] with `Ω = K`, plus the
/// `K`-side lookup tables.
#[derive(Debug, Clone)]
pub struct SemidirectContext {
    base: GroupContext,
    k: FiniteGroup,
    action: Vec<Vec<Vec<u64>>>,
    /// transversal position → K-index.
    rep_k: Vec<usize>,
    /// K-index → transversal position.
    pos_of_k: Vec<usize>,
}

impl SemidirectContext {
    pub fn base(&self) -> &GroupContext {
        &self.base
    }

    pub fn k(&self) -> &FiniteGroup {
        &self.k
    }

    pub fn k_order(&self) -> usize {
        self.k.order()
    }

    pub fn action(&self, k: usize) -> &[Vec<u64>] {
        &self.action[k]
    }

    /// G-index of the embedded K-element `(0, k)`.
    pub fn g_of_k(&self, k: usize) -> usize {
        k
    }

    /// K-index of a pure-`K` group element, if it is one.
    pub fn k_of_g(&self, x: usize) -> Option<usize> {
        (x < self.k.order()).then_some(x)
    }

    pub fn rep_k(&self, pos: usize) -> usize {
        self.rep_k[pos]
    }

    pub fn pos_of_k(&self, k: usize) -> usize {
        self.pos_of_k[k]
    }
}

/// Build `H ⋊ K` with the canonical enumeration (`H`-tuple major key,
/// `K`-index minor key) and the transversal `Ω = {(0, k)}`.
pub fn build_semidirect(spec: &SemidirectSpec) -> Result<SemidirectContext> {
    let h = &spec.h;
    let k = &spec.k;
    let m = h.rank();
    let d = h.factors()[0];
    if h.factors().iter().any(|&f| f != d) {
        return Err(Error::InvalidInput(
            "semidirect H must be homocyclic (all factors equal)".into(),
        ));
    }
    if spec.action.len() != k.order() {
        return Err(Error::DomainMismatch {
            expected: k.order(),
            got: spec.action.len(),
        });
    }
    for (ki, mat) in spec.action.iter().enumerate() {
        if mat.len() != m || mat.iter().any(|row| row.len() != m) {
            return Err(Error::InvalidInput(format!(
                "action matrix for K-element {ki} is not {m}×{m}"
            )));
        }
        if mat.iter().flatten().any(|&e| e >= d) {
            return Err(Error::InvalidInput(format!(
                "action matrix for K-element {ki} has entries ≥ {d}"
            )));
        }
    }
    let id_mat = (0..m)
        .map(|i| (0..m).map(|j| u64::from(i == j)).collect::<Vec<_>>())
        .collect::<Vec<_>>();
    if spec.action[k.identity()] != id_mat {
        return Err(Error::NotAHomomorphism(
            "action at the K-identity must be the identity matrix".into(),
        ));
    }
    for k1 in 0..k.order() {
        for k2 in 0..k.order() {
            let prod = mat_mul_mod(&spec.action[k1], &spec.action[k2], d);
            if prod != spec.action[k.mul(k1, k2)] {
                return Err(Error::NotAHomomorphism(format!(
                    "action breaks at K-pair ({k1}, {k2})"
                )));
            }
        }
    }

    let nh = h.order();
    let nk = k.order();
    let n = nh * nk;
    let tuples: Vec<Vec<u64>> = (0..nh).map(|i| h.tuple_of(i)).collect();
    // Cache φ_k applied to every H-tuple: acted[k][h] = index of φ_k(h).
    let mut acted = vec![vec![0usize; nh]; nk];
    for (row, action) in acted.iter_mut().zip(&spec.action) {
        for hi in 0..nh {
            let image = mat_apply_mod(action, &tuples[hi], d);
            row[hi] = h.index_of(&image).unwrap();
        }
    }
    let mut table = vec![vec![0usize; n]; n];
    for h1 in 0..nh {
        for k1 in 0..nk {
            let row = h1 * nk + k1;
            for h2 in 0..nh {
                let hsum = h
                    .index_of(&h.add(&tuples[h1], &tuples[acted[k1][h2]]))
                    .unwrap();
                for k2 in 0..nk {
                    table[row][h2 * nk + k2] = hsum * nk + k.mul(k1, k2);
                }
            }
        }
    }
    let group = FiniteGroup::from_table(&table)?;
    let into: Vec<usize> = (0..nh).map(|hi| hi * nk + k.identity()).collect();

    // Ω = {(0, k)}: the identity's coset representative first, the rest in
    // K order. The G-index of (0, k) is just k.
    let mut rep_k = vec![k.identity()];
    rep_k.extend((0..nk).filter(|&ki| ki != k.identity()));
    let reps: Vec<usize> = rep_k.clone();
    let mut pos_of_k = vec![0usize; nk];
    for (pos, &ki) in rep_k.iter().enumerate() {
        pos_of_k[ki] = pos;
    }

    let base = GroupContext::with_reps(group, h.clone(), into, reps)?;
    Ok(SemidirectContext {
        base,
        k: k.clone(),
        action: spec.action.clone(),
        rep_k,
        pos_of_k,
    })
}

/// All `k ∈ K` (by K-index, ascending) whose conjugation fixes `α`.
pub fn little_group(ctx: &SemidirectContext, alpha: &Character) -> Result<Vec<usize>> {
    let mut fixed = Vec::new();
    for ki in 0..ctx.k_order() {
        let beta = conj_character(ctx.base(), ctx.g_of_k(ki), alpha)?;
        if beta == *alpha {
            fixed.push(ki);
        }
    }
    Ok(fixed)
}

fn mat_mul_mod(a: &[Vec<u64>], b: &[Vec<u64>], d: u64) -> Vec<Vec<u64>> {
    let m = a.len();
    (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    a[i].iter()
                        .enumerate()
                        .fold(0u64, |acc, (t, &x)| (acc + x * b[t][j]) % d)
                })
                .collect()
        })
        .collect()
}

pub(crate) fn mat_apply_mod(mat: &[Vec<u64>], v: &[u64], d: u64) -> Vec<u64> {
    mat.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(0u64, |acc, (&m, &x)| (acc + m * x) % d)
        })
        .collect()
}
