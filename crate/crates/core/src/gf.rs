//! Finite fields GF(p^r) in a polynomial basis.
//!
//! Elements are coefficient vectors of length `r` over `Z_p`, constant
//! term first. Extension fields need a monic irreducible modulus of
//! degree `r`; irreducibility is checked by root scanning for `r ≤ 3`
//! and by the gcd-with-Frobenius (Rabin) test in general. Prime fields
//! (`r = 1`) take a fast scalar path with no modulus.
//!
//! The element *index* is the row-major rank of the coefficient tuple,
//! `Σ c_i p^(r-1-i)`; it matches the enumeration used for tuples in
//! [`crate::groups::AbelianGroup`], so a field element and the
//! translation it labels share one index everywhere in this crate.

use crate::error::{Error, Result};

/// A field element: coefficients over `Z_p`, constant term first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    pub coeffs: Vec<u64>,
}

/// A concrete finite field GF(p^r).
#[derive(Debug, Clone)]
pub struct FieldSpec {
    p: u64,
    r: usize,
    /// Monic modulus of degree `r`, constant term first; empty for `r = 1`.
    modulus: Vec<u64>,
    q: u64,
}

impl FieldSpec {
    pub fn new(p: u64, r: usize, modulus: Option<Vec<u64>>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("p = {p} is not prime")));
        }
        if r == 0 {
            return Err(Error::InvalidField("extension degree r must be ≥ 1".into()));
        }
        let q = (0..r)
            .try_fold(1u64, |acc, _| acc.checked_mul(p))
            .ok_or_else(|| Error::InvalidField(format!("p^r overflows for p = {p}, r = {r}")))?;
        if r == 1 {
            if modulus.is_some() {
                return Err(Error::InvalidField("prime fields take no modulus".into()));
            }
            return Ok(FieldSpec {
                p,
                r,
                modulus: Vec::new(),
                q,
            });
        }
        let mut m = modulus.ok_or_else(|| {
            Error::InvalidField(format!("GF({p}^{r}) needs a degree-{r} modulus"))
        })?;
        if m.len() != r + 1 {
            return Err(Error::InvalidField(format!(
                "modulus must have length r + 1 = {} (constant term first), got {}",
                r + 1,
                m.len()
            )));
        }
        for c in m.iter_mut() {
            *c %= p;
        }
        if m[r] != 1 {
            return Err(Error::InvalidField("modulus must be monic".into()));
        }
        let field = FieldSpec {
            p,
            r,
            modulus: m,
            q,
        };
        if !field.modulus_irreducible() {
            return Err(Error::InvalidField(format!(
                "modulus {:?} is reducible over Z_{p}",
                field.modulus
            )));
        }
        Ok(field)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            coeffs: vec![0; self.r],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_prime(1)
    }

    /// Embedding of the prime field: the constant polynomial `c`.
    pub fn from_prime(&self, c: u64) -> FieldElement {
        let mut coeffs = vec![0; self.r];
        coeffs[0] = c % self.p;
        FieldElement { coeffs }
    }

    pub fn element(&self, coeffs: Vec<u64>) -> Result<FieldElement> {
        if coeffs.len() != self.r {
            return Err(Error::DomainMismatch {
                expected: self.r,
                got: coeffs.len(),
            });
        }
        if coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::InvalidField(format!(
                "coefficients must be reduced mod {}",
                self.p
            )));
        }
        Ok(FieldElement { coeffs })
    }

    /// Row-major rank of the coefficient tuple (see module docs).
    pub fn index(&self, e: &FieldElement) -> usize {
        e.coeffs
            .iter()
            .fold(0usize, |acc, &c| acc * self.p as usize + c as usize)
    }

    pub fn from_index(&self, mut idx: usize) -> FieldElement {
        let mut coeffs = vec![0u64; self.r];
        for i in (0..self.r).rev() {
            coeffs[i] = (idx % self.p as usize) as u64;
            idx /= self.p as usize;
        }
        FieldElement { coeffs }
    }

    /// All q elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q as usize).map(|i| self.from_index(i))
    }

    pub fn is_zero(&self, e: &FieldElement) -> bool {
        e.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(&x, &y)| (x + y) % self.p)
                .collect(),
        }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        FieldElement {
            coeffs: a.coeffs.iter().map(|&x| (self.p - x) % self.p).collect(),
        }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        if self.r == 1 {
            return FieldElement {
                coeffs: vec![a.coeffs[0] * b.coeffs[0] % self.p],
            };
        }
        let prod = poly_mul(&a.coeffs, &b.coeffs, self.p);
        FieldElement {
            coeffs: self.reduce(prod),
        }
    }

    pub fn pow(&self, a: &FieldElement, mut e: u64) -> FieldElement {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        if self.is_zero(a) {
            return Err(Error::ZeroInversion);
        }
        // The multiplicative group has order q - 1.
        Ok(self.pow(a, self.q - 2))
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Field trace `tr(x) = x + x^p + … + x^(p^(r-1))`, an element of `Z_p`.
    ///
    /// The sum is computed in exact integer arithmetic and always lands in
    /// the prime subfield.
    pub fn trace(&self, a: &FieldElement) -> u64 {
        let mut acc = a.clone();
        let mut frob = a.clone();
        for _ in 1..self.r {
            frob = self.pow(&frob, self.p);
            acc = self.add(&acc, &frob);
        }
        debug_assert!(
            acc.coeffs[1..].iter().all(|&c| c == 0),
            "trace left the prime subfield"
        );
        acc.coeffs[0]
    }

    /// Indices of the nonzero squares, sorted ascending. Needs odd q.
    pub fn quadratic_residues(&self) -> Result<Vec<usize>> {
        if self.p == 2 {
            return Err(Error::InvalidField(
                "quadratic residues need odd characteristic".into(),
            ));
        }
        let mut seen = vec![false; self.q as usize];
        for x in self.elements().skip(1) {
            seen[self.index(&self.mul(&x, &x))] = true;
        }
        let residues: Vec<usize> = (0..self.q as usize).filter(|&i| seen[i]).collect();
        debug_assert_eq!(residues.len(), (self.q as usize - 1) / 2);
        Ok(residues)
    }

    /// `#{c ∈ D : c - b ∈ D}` for a set `D` given by element indices.
    pub fn difference_count(&self, d: &[usize], b: &FieldElement) -> usize {
        let mut members = vec![false; self.q as usize];
        for &i in d {
            members[i] = true;
        }
        d.iter()
            .filter(|&&i| members[self.index(&self.sub(&self.from_index(i), b))])
            .count()
    }

    /// Smallest-index generator of the multiplicative group.
    pub fn multiplicative_generator(&self) -> FieldElement {
        let n = self.q - 1;
        let primes = prime_factors(n);
        self.elements()
            .skip(1)
            .find(|g| primes.iter().all(|&l| self.pow(g, n / l) != self.one()))
            .expect("every finite field has a cyclic multiplicative group")
    }

    pub fn multiplicative_order(&self, a: &FieldElement) -> Result<u64> {
        if self.is_zero(a) {
            return Err(Error::ZeroInversion);
        }
        let mut order = 1u64;
        let mut acc = a.clone();
        while acc != self.one() {
            acc = self.mul(&acc, a);
            order += 1;
        }
        Ok(order)
    }

    /// Reduce a raw polynomial mod the modulus (long division by a monic
    /// divisor) and truncate to length r.
    fn reduce(&self, mut poly: Vec<u64>) -> Vec<u64> {
        let r = self.r;
        for i in (r..poly.len()).rev() {
            let lead = poly[i];
            if lead == 0 {
                continue;
            }
            poly[i] = 0;
            // x^i ≡ -Σ_{j<r} m_j x^(i-r+j)  (mod modulus), modulus monic.
            for j in 0..r {
                let sub = lead * self.modulus[j] % self.p;
                let t = &mut poly[i - r + j];
                *t = (*t + self.p - sub) % self.p;
            }
        }
        poly.truncate(r);
        poly.resize(r, 0);
        poly
    }

    fn modulus_irreducible(&self) -> bool {
        if self.r <= 3 {
            // Degree 2 or 3: reducible iff it has a root.
            return self
                .prime_scalars()
                .all(|c| poly_eval(&self.modulus, c, self.p) != 0);
        }
        // Rabin: x^(p^r) ≡ x (mod f), and for each prime l | r the
        // polynomial x^(p^(r/l)) - x must be coprime to f.
        let x = vec![0, 1];
        let frob_pow = |k: u32| -> Vec<u64> {
            let mut acc = x.clone();
            for _ in 0..k {
                acc = poly_modpow(&acc, self.p, &self.modulus, self.p);
            }
            acc
        };
        let top = frob_pow(self.r as u32);
        if poly_sub(&top, &x, self.p).iter().any(|&c| c != 0) {
            return false;
        }
        for l in prime_factors(self.r as u64) {
            let mid = frob_pow((self.r as u64 / l) as u32);
            let diff = poly_sub(&mid, &x, self.p);
            let g = poly_gcd(&diff, &self.modulus, self.p);
            if poly_degree(&g) != 0 {
                return false;
            }
        }
        true
    }

    fn prime_scalars(&self) -> impl Iterator<Item = u64> {
        0..self.p
    }
}

/// Default moduli shipped for the extension orders exercised in tests:
/// x³ + 2x + 1 for GF(27) and x³ + 2 for GF(343).
pub fn default_modulus(q: u64) -> Option<Vec<u64>> {
    match q {
        27 => Some(vec![1, 2, 0, 1]),
        343 => Some(vec![2, 0, 0, 1]),
        _ => None,
    }
}

/// Split q into (p, r) with p prime, or report failure.
pub fn prime_power(q: u64) -> Option<(u64, usize)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    if !is_prime(p) {
        return None;
    }
    let mut rest = q;
    let mut r = 0usize;
    while rest.is_multiple_of(p) {
        rest /= p;
        r += 1;
    }
    (rest == 1).then_some((p, r))
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// --- raw polynomial arithmetic over Z_p (constant term first) ---

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}

fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect()
}

fn poly_degree(a: &[u64]) -> usize {
    a.iter().rposition(|&c| c != 0).unwrap_or(0)
}

fn poly_eval(a: &[u64], x: u64, p: u64) -> u64 {
    a.iter().rev().fold(0u64, |acc, &c| (acc * x + c) % p)
}

/// Remainder of `a` modulo `m` (any nonzero `m`), coefficients mod p.
fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let dm = poly_degree(m);
    let lead_inv = scalar_inv(m[dm], p);
    let mut rem = a.to_vec();
    while poly_degree(&rem) >= dm && rem.iter().any(|&c| c != 0) {
        let dr = poly_degree(&rem);
        if dr < dm {
            break;
        }
        let coef = rem[dr] * lead_inv % p;
        for j in 0..=dm {
            let sub = coef * m[j] % p;
            rem[dr - dm + j] = (rem[dr - dm + j] + p - sub) % p;
        }
    }
    rem.truncate(dm.max(1));
    rem
}

fn poly_modpow(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = poly_rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_rem(&poly_mul(&acc, &b, p), m, p);
        }
        b = poly_rem(&poly_mul(&b, &b, p), m, p);
        e >>= 1;
    }
    acc
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    while y.iter().any(|&c| c != 0) {
        let r = poly_rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

fn scalar_inv(a: u64, p: u64) -> u64 {
    // Fermat; p is prime throughout this module.
    let mut acc = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf(q: u64) -> FieldSpec {
        let (p, r) = prime_power(q).unwrap();
        FieldSpec::new(p, r, default_modulus(q)).unwrap()
    }

    #[test]
    fn prime_field_matches_integer_arithmetic() {
        let f = FieldSpec::new(7, 1, None).unwrap();
        for a in 0..7u64 {
            for b in 0..7u64 {
                let ea = f.from_prime(a);
                let eb = f.from_prime(b);
                assert_eq!(f.add(&ea, &eb).coeffs[0], (a + b) % 7);
                assert_eq!(f.mul(&ea, &eb).coeffs[0], a * b % 7);
            }
        }
        // 3 * 5 = 15 ≡ 1 (mod 7).
        assert_eq!(f.inv(&f.from_prime(3)).unwrap(), f.from_prime(5));
    }

    #[test]
    fn gf27_reduction_example() {
        // Modulus x³ + 2x + 1 over Z_3: x·x² = x³ ≡ -2x - 1 = x + 2.
        let f = gf(27);
        let x = f.element(vec![0, 1, 0]).unwrap();
        let x2 = f.element(vec![0, 0, 1]).unwrap();
        assert_eq!(f.mul(&x, &x2), f.element(vec![2, 1, 0]).unwrap());
    }

    #[test]
    fn gf27_field_axioms_on_random_triples() {
        let f = gf(27);
        let mut rng = ChaCha8Rng::seed_from_u64(27);
        for _ in 0..200 {
            let a = f.from_index(rng.gen_range(0..27));
            let b = f.from_index(rng.gen_range(0..27));
            let c = f.from_index(rng.gen_range(0..27));
            assert_eq!(f.mul(&a, &f.mul(&b, &c)), f.mul(&f.mul(&a, &b), &c));
            assert_eq!(f.add(&a, &f.add(&b, &c)), f.add(&f.add(&a, &b), &c));
            assert_eq!(
                f.mul(&a, &f.add(&b, &c)),
                f.add(&f.mul(&a, &b), &f.mul(&a, &c))
            );
        }
    }

    #[test]
    fn gf27_inverses_round_trip() {
        let f = gf(27);
        for e in f.elements().skip(1) {
            let inv = f.inv(&e).unwrap();
            assert_eq!(f.mul(&e, &inv), f.one());
        }
        assert!(matches!(f.inv(&f.zero()), Err(Error::ZeroInversion)));
    }

    #[test]
    fn frobenius_is_additive_in_characteristic_three() {
        let f = gf(27);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let a = f.from_index(rng.gen_range(0..27));
            let b = f.from_index(rng.gen_range(0..27));
            let lhs = f.pow(&f.add(&a, &b), 3);
            let rhs = f.add(&f.pow(&a, 3), &f.pow(&b, 3));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn index_round_trip() {
        let f = gf(27);
        for i in 0..27 {
            assert_eq!(f.index(&f.from_index(i)), i);
        }
    }

    #[test]
    fn irreducibility_screening() {
        // x² + 1 over Z_7 (7 ≡ 3 mod 4, so -1 is not a square): accepted.
        assert!(FieldSpec::new(7, 2, Some(vec![1, 0, 1])).is_ok());
        // x² - 1 = (x-1)(x+1): rejected by root scan.
        assert!(FieldSpec::new(7, 2, Some(vec![6, 0, 1])).is_err());
        // x⁴ + 2x² + 1 = (x² + 1)² over Z_3 has no roots but is reducible:
        // only the Frobenius-gcd path can reject it.
        assert!(FieldSpec::new(3, 4, Some(vec![1, 0, 2, 0, 1])).is_err());
        // x⁴ + x + 2 is irreducible over Z_3.
        assert!(FieldSpec::new(3, 4, Some(vec![2, 1, 0, 0, 1])).is_ok());
        // GF(343) default: x³ + 2 (cubes mod 7 are {1, 6}, so no roots).
        assert!(FieldSpec::new(7, 3, default_modulus(343)).is_ok());
        // Non-monic and wrong-degree moduli are rejected up front.
        assert!(FieldSpec::new(3, 3, Some(vec![1, 2, 0, 2])).is_err());
        assert!(FieldSpec::new(3, 3, Some(vec![1, 2, 1])).is_err());
        assert!(FieldSpec::new(4, 1, None).is_err());
    }

    #[test]
    fn trace_is_linear_and_onto() {
        let f = gf(27);
        // tr is Z_3-linear…
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let a = f.from_index(rng.gen_range(0..27));
            let b = f.from_index(rng.gen_range(0..27));
            assert_eq!(f.trace(&f.add(&a, &b)), (f.trace(&a) + f.trace(&b)) % 3);
            let s = rng.gen_range(0..3u64);
            assert_eq!(f.trace(&f.mul(&f.from_prime(s), &a)), s * f.trace(&a) % 3);
        }
        // …and onto Z_3.
        let mut hit = [false; 3];
        for e in f.elements() {
            hit[f.trace(&e) as usize] = true;
        }
        assert_eq!(hit, [true, true, true]);
        // In GF(3³) the prime subfield has trace r·c = 3c ≡ 0.
        assert_eq!(f.trace(&f.one()), 0);
        // Prime fields: trace is the identity.
        let f7 = FieldSpec::new(7, 1, None).unwrap();
        assert_eq!(f7.trace(&f7.from_prime(5)), 5);
    }

    #[test]
    fn quadratic_residues_frozen_sets() {
        let f7 = FieldSpec::new(7, 1, None).unwrap();
        assert_eq!(f7.quadratic_residues().unwrap(), vec![1, 2, 4]);
        let f11 = FieldSpec::new(11, 1, None).unwrap();
        assert_eq!(f11.quadratic_residues().unwrap(), vec![1, 3, 4, 5, 9]);
    }

    #[test]
    fn quadratic_residues_structure() {
        for q in [7u64, 11, 19, 23, 27] {
            let f = gf(q);
            let residues = f.quadratic_residues().unwrap();
            assert_eq!(residues.len(), (q as usize - 1) / 2);
            // -1 is a non-residue exactly when q ≡ 3 (mod 4).
            let minus_one = f.index(&f.neg(&f.one()));
            assert!(!residues.contains(&minus_one), "q = {q}");
            // Residues are closed under multiplication.
            let member = |i: usize| residues.binary_search(&i).is_ok();
            for &a in &residues {
                for &b in &residues {
                    let prod = f.mul(&f.from_index(a), &f.from_index(b));
                    assert!(member(f.index(&prod)));
                }
            }
        }
        let f2 = FieldSpec::new(2, 1, None).unwrap();
        assert!(f2.quadratic_residues().is_err());
    }

    #[test]
    fn difference_counts_frozen_values() {
        let f7 = FieldSpec::new(7, 1, None).unwrap();
        let d7 = f7.quadratic_residues().unwrap();
        assert_eq!(f7.difference_count(&d7, &f7.from_prime(0)), 3);
        assert_eq!(f7.difference_count(&d7, &f7.from_prime(1)), 1);
        let f11 = FieldSpec::new(11, 1, None).unwrap();
        let d11 = f11.quadratic_residues().unwrap();
        assert_eq!(f11.difference_count(&d11, &f11.from_prime(2)), 2);
    }

    #[test]
    fn residue_differences_are_flat_off_zero() {
        // For q ≡ 3 (mod 4) the nonzero squares form a difference set:
        // every nonzero b is hit exactly (q-3)/4 times.
        for q in [7u64, 11, 19, 23, 27] {
            let f = gf(q);
            let d = f.quadratic_residues().unwrap();
            assert_eq!(f.difference_count(&d, &f.zero()), (q as usize - 1) / 2);
            for b in f.elements().skip(1) {
                assert_eq!(
                    f.difference_count(&d, &b),
                    (q as usize - 3) / 4,
                    "q = {q}, b = {b:?}"
                );
            }
        }
    }

    #[test]
    fn multiplicative_generators() {
        let f7 = FieldSpec::new(7, 1, None).unwrap();
        assert_eq!(f7.multiplicative_generator(), f7.from_prime(3));
        let f11 = FieldSpec::new(11, 1, None).unwrap();
        assert_eq!(f11.multiplicative_generator(), f11.from_prime(2));
        let f27 = gf(27);
        let g = f27.multiplicative_generator();
        assert_eq!(f27.multiplicative_order(&g).unwrap(), 26);
    }

    #[test]
    fn prime_power_detection() {
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(27), Some((3, 3)));
        assert_eq!(prime_power(343), Some((7, 3)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }
}
