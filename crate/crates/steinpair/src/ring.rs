//! Finite unital rings as structure-constant algebras over Z/n.
//!
//! A ring is a free Z/n-module with a chosen basis, a multiplication table
//! and a distinguished unit, optionally carrying an involution (an additive
//! anti-automorphism of order at most two fixing 1). This one representation
//! covers Z/n, the small Galois fields, matrix rings over any of these, and
//! arbitrary user-supplied tables, e.g. products like F2 x F2.

use serde::{Deserialize, Serialize};
use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::Error;
use crate::Result;

#[derive(Debug)]
struct RingData {
    id: u64,
    name: String,
    /// Coefficient modulus of the free module underlying the ring.
    modulus: u32,
    rank: usize,
    basis_names: Vec<String>,
    /// table[i][j] = coordinates of basis_i * basis_j.
    table: Vec<Vec<Vec<u32>>>,
    unit: Vec<u32>,
    /// Involution as a coordinate matrix (row i = image of basis_i), if any.
    involution: Option<Vec<Vec<u32>>>,
    commutative: bool,
    is_field: bool,
    characteristic: u32,
}

/// Shared handle to a finite ring.
#[derive(Clone)]
pub struct Ring(Arc<RingData>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        self.0.id == other.0.id
    }
}
impl Eq for Ring {}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring({})", self.0.name)
    }
}

/// Element of a [`Ring`], stored as coordinates over Z/n.
#[derive(Clone)]
pub struct RingElement {
    pub ring: Ring,
    pub coords: Vec<u32>,
}

impl PartialEq for RingElement {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.coords == other.coords
    }
}
impl Eq for RingElement {}

impl Hash for RingElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ring.0.id.hash(state);
        self.coords.hash(state);
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ring.display_element(self))
    }
}

/// Serializable description of a structure-constant ring (the `--ring-file`
/// wire format).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RingTableSpec {
    pub name: String,
    pub modulus: u32,
    pub basis: Vec<String>,
    /// table[i][j] = coordinates of basis_i * basis_j
    pub table: Vec<Vec<Vec<u32>>>,
    pub unit: Vec<u32>,
    #[serde(default)]
    pub involution: Option<Vec<Vec<u32>>>,
}

fn content_id(name: &str, modulus: u32, table: &[Vec<Vec<u32>>], unit: &[u32]) -> u64 {
    let mut h = DefaultHasher::new();
    name.hash(&mut h);
    modulus.hash(&mut h);
    table.hash(&mut h);
    unit.hash(&mut h);
    h.finish()
}

/// Cap on |R| for eager field/commutativity detection at construction.
const DETECT_CAP: u64 = 1 << 16;

impl Ring {
    fn build(
        name: String,
        modulus: u32,
        basis_names: Vec<String>,
        table: Vec<Vec<Vec<u32>>>,
        unit: Vec<u32>,
        involution: Option<Vec<Vec<u32>>>,
    ) -> Result<Ring> {
        if modulus < 2 {
            return Err(Error::Ring("modulus must be at least 2".into()));
        }
        let rank = basis_names.len();
        if rank == 0 || table.len() != rank || unit.len() != rank {
            return Err(Error::Ring("table/unit shape does not match basis".into()));
        }
        for row in &table {
            if row.len() != rank || row.iter().any(|c| c.len() != rank) {
                return Err(Error::Ring("table shape does not match basis".into()));
            }
        }
        if let Some(m) = &involution {
            if m.len() != rank || m.iter().any(|r| r.len() != rank) {
                return Err(Error::Ring("involution matrix shape".into()));
            }
        }
        let mut table = table;
        for row in table.iter_mut() {
            for c in row.iter_mut() {
                for x in c.iter_mut() {
                    *x %= modulus;
                }
            }
        }
        let unit: Vec<u32> = unit.iter().map(|x| x % modulus).collect();

        let id = content_id(&name, modulus, &table, &unit);
        let mut data = RingData {
            id,
            name,
            modulus,
            rank,
            basis_names,
            table,
            unit,
            involution,
            commutative: false,
            is_field: false,
            characteristic: modulus,
        };

        // characteristic = additive order of the unit element
        let mut char_n = 1u32;
        for &c in &data.unit {
            if c == 0 {
                continue;
            }
            let g = gcd(c, modulus);
            char_n = lcm(char_n, modulus / g);
        }
        data.characteristic = if char_n == 1 { modulus } else { char_n };

        let size = (modulus as u64).checked_pow(rank as u32);
        if let Some(size) = size.filter(|&s| s <= DETECT_CAP) {
            let ring = Ring(Arc::new(data));
            let elems = ring.elements();
            debug_assert_eq!(elems.len() as u64, size);
            let commutative = elems
                .iter()
                .enumerate()
                .all(|(i, a)| elems[i + 1..].iter().all(|b| &(a * b) == &(b * a)));
            let one = ring.one();
            let zero = ring.zero();
            let is_field = commutative
                && data_is_prime(ring.0.characteristic)
                && elems
                    .iter()
                    .filter(|e| **e != zero)
                    .all(|a| elems.iter().any(|b| &(a * b) == &one));
            // rebuild with flags (Arc content is immutable once shared)
            let mut data2 = RingData {
                id: ring.0.id,
                name: ring.0.name.clone(),
                modulus: ring.0.modulus,
                rank: ring.0.rank,
                basis_names: ring.0.basis_names.clone(),
                table: ring.0.table.clone(),
                unit: ring.0.unit.clone(),
                involution: ring.0.involution.clone(),
                commutative,
                is_field,
                characteristic: ring.0.characteristic,
            };
            // a field of non-prime modulus cannot arise: coords are Z/n
            if is_field && !data_is_prime(data2.modulus) {
                data2.is_field = false;
            }
            Ok(Ring(Arc::new(data2)))
        } else {
            Ok(Ring(Arc::new(data)))
        }
    }

    /// Z/n with its canonical basis {1}.
    pub fn zn(n: u32) -> Result<Ring> {
        Ring::build(
            format!("Z/{n}"),
            n,
            vec!["1".into()],
            vec![vec![vec![1]]],
            vec![1],
            Some(vec![vec![1]]),
        )
    }

    /// Prime field F_p.
    pub fn fp(p: u32) -> Result<Ring> {
        if !data_is_prime(p) {
            return Err(Error::Ring(format!("{p} is not prime")));
        }
        let r = Ring::build(
            format!("F{p}"),
            p,
            vec!["1".into()],
            vec![vec![vec![1]]],
            vec![1],
            Some(vec![vec![1]]),
        )?;
        Ok(r)
    }

    /// Galois field F_{p^k}. Built-in irreducible polynomials cover the
    /// orders used by the verification zoo (4, 8, 9, 25, 27, 49); other
    /// orders need [`Ring::gf_with_poly`].
    pub fn fq(p: u32, k: u32) -> Result<Ring> {
        if k == 1 {
            return Ring::fp(p);
        }
        let poly: &[u32] = match (p, k) {
            (2, 2) => &[1, 1],    // x^2 + x + 1
            (2, 3) => &[1, 1, 0], // x^3 + x + 1
            (3, 2) => &[1, 0],    // x^2 + 1
            (5, 2) => &[1, 1],    // x^2 + x + 1
            (3, 3) => &[1, 2, 0], // x^3 + 2x + 1
            (7, 2) => &[1, 0],    // x^2 + 1
            _ => return Err(Error::UnsupportedField { p, k }),
        };
        Ring::gf_with_poly(p, poly)
    }

    /// F_p[x]/(f) for a monic f given by its low-order coefficients
    /// (f = x^k + poly[k-1] x^(k-1) + ... + poly[0]). The construction
    /// verifies fieldness by brute force, so a reducible f is rejected.
    pub fn gf_with_poly(p: u32, poly: &[u32]) -> Result<Ring> {
        if !data_is_prime(p) {
            return Err(Error::Ring(format!("{p} is not prime")));
        }
        let k = poly.len();
        if k < 2 {
            return Err(Error::Ring("polynomial degree must be at least 2".into()));
        }
        // basis 1, x, ..., x^(k-1); reduce x^k = -poly
        let reduce_xk: Vec<u32> = poly.iter().map(|&c| (p - c % p) % p).collect();
        // powers[m] = coords of x^m for m < 2k-1
        let mut powers: Vec<Vec<u32>> = Vec::new();
        for m in 0..(2 * k - 1) {
            if m < k {
                let mut v = vec![0u32; k];
                v[m] = 1;
                powers.push(v);
            } else {
                // x^m = x * x^(m-1), then reduce the overflow coefficient
                let prev = powers[m - 1].clone();
                let mut v = vec![0u32; k + 1];
                for (i, &c) in prev.iter().enumerate() {
                    v[i + 1] = c;
                }
                let carry = v[k];
                let mut w: Vec<u32> = v[..k].to_vec();
                if carry != 0 {
                    for i in 0..k {
                        w[i] = (w[i] + carry * reduce_xk[i]) % p;
                    }
                }
                powers.push(w);
            }
        }
        let mut table = vec![vec![vec![0u32; k]; k]; k];
        #[allow(clippy::needless_range_loop)]
        for i in 0..k {
            for j in 0..k {
                table[i][j] = powers[i + j].clone();
            }
        }
        let mut unit = vec![0u32; k];
        unit[0] = 1;
        let names: Vec<String> = (0..k)
            .map(|i| match i {
                0 => "1".into(),
                1 => "x".into(),
                _ => format!("x^{i}"),
            })
            .collect();
        let r = Ring::build(format!("F{}", (p as u64).pow(k as u32)), p, names, table, unit, None)?;
        if !r.is_field() {
            return Err(Error::Ring("polynomial is not irreducible".into()));
        }
        Ok(r)
    }

    /// Full matrix ring Mat_m(base). Carries the transpose involution
    /// (composed with the base involution when one is present).
    pub fn matrix_ring(base: &Ring, m: usize) -> Result<Ring> {
        if m == 0 {
            return Err(Error::Ring("matrix size must be positive".into()));
        }
        let br = base.rank();
        let rank = br * m * m;
        // basis index (r, c, e) -> base_e * E_rc
        let idx = |r: usize, c: usize, e: usize| (r * m + c) * br + e;
        let mut table = vec![vec![vec![0u32; rank]; rank]; rank];
        for r in 0..m {
            for c in 0..m {
                for e in 0..br {
                    for r2 in 0..m {
                        for c2 in 0..m {
                            for f in 0..br {
                                if c != r2 {
                                    continue;
                                }
                                let prod = &base.0.table[e][f];
                                let cell = &mut table[idx(r, c, e)][idx(r2, c2, f)];
                                for (g, &coef) in prod.iter().enumerate() {
                                    cell[idx(r, c2, g)] = (cell[idx(r, c2, g)] + coef) % base.0.modulus;
                                }
                            }
                        }
                    }
                }
            }
        }
        let mut unit = vec![0u32; rank];
        for r in 0..m {
            for (e, &c) in base.0.unit.iter().enumerate() {
                unit[idx(r, r, e)] = c;
            }
        }
        // involution: base_e E_rc -> inv(base_e) E_cr
        let base_inv: Vec<Vec<u32>> = match &base.0.involution {
            Some(mat) => mat.clone(),
            None => (0..br)
                .map(|e| {
                    let mut v = vec![0u32; br];
                    v[e] = 1;
                    v
                })
                .collect(),
        };
        let mut inv = vec![vec![0u32; rank]; rank];
        for r in 0..m {
            for c in 0..m {
                for e in 0..br {
                    for (g, &coef) in base_inv[e].iter().enumerate() {
                        inv[idx(r, c, e)][idx(c, r, g)] = coef;
                    }
                }
            }
        }
        let names: Vec<String> = (0..m)
            .flat_map(|r| {
                let base = base.clone();
                (0..m).flat_map(move |c| {
                    let base = base.clone();
                    (0..br).map(move |e| {
                        if base.rank() == 1 {
                            format!("E{}{}", r + 1, c + 1)
                        } else {
                            format!("{}E{}{}", base.0.basis_names[e], r + 1, c + 1)
                        }
                    })
                })
            })
            .collect();
        Ring::build(
            format!("Mat{}({})", m, base.0.name),
            base.0.modulus,
            names,
            table,
            unit,
            Some(inv),
        )
    }

    /// Ring from an explicit structure-constant table.
    pub fn structure_constants(spec: &RingTableSpec) -> Result<Ring> {
        let r = Ring::build(
            spec.name.clone(),
            spec.modulus,
            spec.basis.clone(),
            spec.table.clone(),
            spec.unit.clone(),
            spec.involution.clone(),
        )?;
        // user-supplied tables get a full axiom pass up front
        let report = verify_ring(&r, 200_000);
        if !report.pass() {
            return Err(Error::Ring(format!(
                "table violates ring axioms: {}",
                report.first_failure().unwrap_or_default()
            )));
        }
        Ok(r)
    }

    /// Replace the involution (rows = images of basis vectors). Verified.
    pub fn with_involution(&self, rows: Vec<Vec<u32>>) -> Result<Ring> {
        let mut data = RingData {
            id: self.0.id,
            name: self.0.name.clone(),
            modulus: self.0.modulus,
            rank: self.0.rank,
            basis_names: self.0.basis_names.clone(),
            table: self.0.table.clone(),
            unit: self.0.unit.clone(),
            involution: Some(rows),
            commutative: self.0.commutative,
            is_field: self.0.is_field,
            characteristic: self.0.characteristic,
        };
        let mut h = DefaultHasher::new();
        data.id.hash(&mut h);
        data.involution.hash(&mut h);
        data.id = h.finish();
        let ring = Ring(Arc::new(data));
        let rep = verify_ring(&ring, 200_000);
        if !rep.involution_ok {
            return Err(Error::Ring("supplied map is not a ring involution".into()));
        }
        Ok(ring)
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }
    pub fn rank(&self) -> usize {
        self.0.rank
    }
    pub fn modulus(&self) -> u32 {
        self.0.modulus
    }
    pub fn characteristic(&self) -> u32 {
        self.0.characteristic
    }
    pub fn is_field(&self) -> bool {
        self.0.is_field
    }
    pub fn is_commutative(&self) -> bool {
        self.0.commutative
    }
    pub fn has_involution(&self) -> bool {
        self.0.involution.is_some()
    }

    /// Number of elements.
    pub fn size(&self) -> u64 {
        (self.0.modulus as u64).pow(self.0.rank as u32)
    }

    /// The prime ring Z/char generated by 1 (as a separate Ring value).
    pub fn prime_ring(&self) -> Result<Ring> {
        Ring::zn(self.0.characteristic)
    }

    pub fn zero(&self) -> RingElement {
        RingElement { ring: self.clone(), coords: vec![0; self.0.rank] }
    }

    pub fn one(&self) -> RingElement {
        RingElement { ring: self.clone(), coords: self.0.unit.clone() }
    }

    pub fn elt(&self, coords: Vec<u32>) -> RingElement {
        assert_eq!(coords.len(), self.0.rank, "coordinate length");
        let coords = coords.into_iter().map(|c| c % self.0.modulus).collect();
        RingElement { ring: self.clone(), coords }
    }

    /// Basis element i.
    pub fn basis_elt(&self, i: usize) -> RingElement {
        let mut c = vec![0u32; self.0.rank];
        c[i] = 1;
        RingElement { ring: self.clone(), coords: c }
    }

    /// k * 1 for k in the prime ring.
    pub fn scalar(&self, k: u32) -> RingElement {
        let mut e = self.one();
        for c in e.coords.iter_mut() {
            *c = (*c * k) % self.0.modulus;
        }
        e
    }

    /// All elements, in lexicographic coordinate order.
    pub fn elements(&self) -> Vec<RingElement> {
        let n = self.0.modulus;
        let mut out = Vec::new();
        let mut coords = vec![0u32; self.0.rank];
        loop {
            out.push(RingElement { ring: self.clone(), coords: coords.clone() });
            let mut i = self.0.rank;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if coords[i] + 1 < n {
                    coords[i] += 1;
                    for c in coords.iter_mut().skip(i + 1) {
                        *c = 0;
                    }
                    break;
                }
            }
        }
    }

    pub fn display_element(&self, e: &RingElement) -> String {
        let terms: Vec<String> = e
            .coords
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| {
                let b = &self.0.basis_names[i];
                if c == 1 && b != "1" {
                    b.clone()
                } else if b == "1" {
                    format!("{c}")
                } else {
                    format!("{c}{b}")
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

fn data_is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn is_prime(n: u32) -> bool {
    data_is_prime(n)
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
fn lcm(a: u32, b: u32) -> u32 {
    a / gcd(a, b) * b
}

impl RingElement {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coords == self.ring.0.unit
    }

    /// Image under the ring involution (identity map when none is set and
    /// the ring is commutative; errors otherwise).
    pub fn involute(&self) -> Result<RingElement> {
        match &self.ring.0.involution {
            Some(mat) => {
                let n = self.ring.0.modulus;
                let mut out = vec![0u32; self.ring.0.rank];
                for (i, &c) in self.coords.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    for (j, &m) in mat[i].iter().enumerate() {
                        out[j] = (out[j] + c * m) % n;
                    }
                }
                Ok(RingElement { ring: self.ring.clone(), coords: out })
            }
            None if self.ring.0.commutative => Ok(self.clone()),
            None => Err(Error::Ring(format!(
                "{} has no involution configured",
                self.ring.0.name
            ))),
        }
    }

    /// Two-sided inverse by scanning, when one exists.
    pub fn inverse(&self) -> Option<RingElement> {
        let one = self.ring.one();
        self.ring
            .elements()
            .into_iter()
            .find(|b| &(self * b) == &one && &(b * self) == &one)
    }

    pub fn is_unit(&self) -> bool {
        self.inverse().is_some()
    }

    /// Multiply by an integer scalar.
    pub fn int_mul(&self, k: u32) -> RingElement {
        let n = self.ring.0.modulus;
        RingElement {
            ring: self.ring.clone(),
            coords: self.coords.iter().map(|&c| c * (k % n) % n).collect(),
        }
    }
}

impl Add for &RingElement {
    type Output = RingElement;
    fn add(self, rhs: &RingElement) -> RingElement {
        assert!(self.ring == rhs.ring, "ring mismatch");
        let n = self.ring.0.modulus;
        RingElement {
            ring: self.ring.clone(),
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(&a, &b)| (a + b) % n)
                .collect(),
        }
    }
}

impl Sub for &RingElement {
    type Output = RingElement;
    fn sub(self, rhs: &RingElement) -> RingElement {
        assert!(self.ring == rhs.ring, "ring mismatch");
        let n = self.ring.0.modulus;
        RingElement {
            ring: self.ring.clone(),
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(&a, &b)| (a + n - b) % n)
                .collect(),
        }
    }
}

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        let n = self.ring.0.modulus;
        RingElement {
            ring: self.ring.clone(),
            coords: self.coords.iter().map(|&a| (n - a) % n).collect(),
        }
    }
}

impl Mul for &RingElement {
    type Output = RingElement;
    fn mul(self, rhs: &RingElement) -> RingElement {
        assert!(self.ring == rhs.ring, "ring mismatch");
        let n = self.ring.0.modulus;
        let rank = self.ring.0.rank;
        let mut out = vec![0u32; rank];
        for (i, &a) in self.coords.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coords.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let coef = a * b % n;
                for (g, &t) in self.ring.0.table[i][j].iter().enumerate() {
                    out[g] = (out[g] + coef * t) % n;
                }
            }
        }
        RingElement { ring: self.ring.clone(), coords: out }
    }
}

/// Outcome of the ring axiom suite.
#[derive(Debug, Clone, Serialize)]
pub struct RingReport {
    pub ring: String,
    pub size: u64,
    pub instances: u64,
    pub associativity_failures: Vec<String>,
    pub distributivity_failures: Vec<String>,
    pub unital_ok: bool,
    pub commutative: bool,
    pub is_field: bool,
    pub characteristic: u32,
    pub involution_ok: bool,
    pub exhaustive: bool,
}

impl RingReport {
    pub fn pass(&self) -> bool {
        self.associativity_failures.is_empty()
            && self.distributivity_failures.is_empty()
            && self.unital_ok
            && self.involution_ok
    }
    pub fn first_failure(&self) -> Option<String> {
        self.associativity_failures
            .first()
            .or(self.distributivity_failures.first())
            .cloned()
    }
}

/// Checks associativity, distributivity, the unit laws and the involution
/// axioms, exhaustively while |R|^3 stays within `budget`, otherwise on a
/// deterministic sample.
pub fn verify_ring(ring: &Ring, budget: u64) -> RingReport {
    let elems = ring.elements();
    let size = elems.len() as u64;
    let exhaustive = size.pow(3) <= budget;
    let mut assoc_fail = Vec::new();
    let mut dist_fail = Vec::new();
    let mut instances = 0u64;

    let triples: Vec<(usize, usize, usize)> = if exhaustive {
        let n = elems.len();
        (0..n)
            .flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))))
            .collect()
    } else {
        // deterministic LCG sample; no need for cryptographic quality here
        let n = elems.len() as u64;
        let mut x = 0x9e3779b97f4a7c15u64;
        let mut out = Vec::new();
        for _ in 0..budget.min(100_000) {
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let i = (x >> 33) % n;
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let j = (x >> 33) % n;
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let k = (x >> 33) % n;
            out.push((i as usize, j as usize, k as usize));
        }
        out
    };

    for &(i, j, k) in &triples {
        let (a, b, c) = (&elems[i], &elems[j], &elems[k]);
        instances += 1;
        if &(&(a * b) * c) != &(a * &(b * c)) && assoc_fail.len() < 5 {
            assoc_fail.push(format!("({a:?}*{b:?})*{c:?} != {a:?}*({b:?}*{c:?})"));
        }
        if &(a * &(b + c)) != &(&(a * b) + &(a * c)) && dist_fail.len() < 5 {
            dist_fail.push(format!("{a:?}*({b:?}+{c:?})"));
        }
        if &(&(a + b) * c) != &(&(a * c) + &(b * c)) && dist_fail.len() < 5 {
            dist_fail.push(format!("({a:?}+{b:?})*{c:?}"));
        }
    }

    let one = ring.one();
    let unital_ok = elems.iter().all(|a| &(a * &one) == a && &(&one * a) == a);

    let involution_ok = match &ring.0.involution {
        None => true,
        Some(_) => {
            let mut ok = true;
            for a in &elems {
                let ia = a.involute().unwrap();
                if ia.involute().unwrap() != *a {
                    ok = false;
                    break;
                }
                for b in &elems {
                    let ib = b.involute().unwrap();
                    if (a + b).involute().unwrap() != &ia + &ib
                        || (a * b).involute().unwrap() != &ib * &ia
                    {
                        ok = false;
                        break;
                    }
                }
                if !ok {
                    break;
                }
            }
            ok && one.involute().unwrap() == one
        }
    };

    RingReport {
        ring: ring.name().into(),
        size,
        instances,
        associativity_failures: assoc_fail,
        distributivity_failures: dist_fail,
        unital_ok,
        commutative: ring.is_commutative(),
        is_field: ring.is_field(),
        characteristic: ring.characteristic(),
        involution_ok,
        exhaustive,
    }
}

/// All units, by brute-force inverse scan. Errors when |R| exceeds `cap`.
pub fn enumerate_units(ring: &Ring, cap: u64) -> Result<Vec<RingElement>> {
    if ring.size() > cap {
        return Err(Error::Budget(format!(
            "unit enumeration over {} ({} elements) exceeds cap {cap}",
            ring.name(),
            ring.size()
        )));
    }
    Ok(ring.elements().into_iter().filter(|e| e.is_unit()).collect())
}
