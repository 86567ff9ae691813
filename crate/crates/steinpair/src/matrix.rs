//! Finitely supported matrices over a ring, elementary matrices and the
//! groups they generate.
//!
//! Matrices live over the label universe 0, 1, 2, ... and store only their
//! nonzero entries, together with an optional scalar-diagonal offset s so
//! that elements of Mat_N(A)_ex = k.1_N + Mat_N(A) have a finite
//! representation even when the index set is the tagged infinite segment.
//! Products follow (s.1 + x)(t.1 + y) = st.1 + (sy + tx + xy).

use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::Error;
use crate::group::{FiniteGroup, GroupElement};
use crate::report::SuiteReport;
use crate::ring::{Ring, RingElement};
use crate::Result;

/// An ordered set of row/column labels. `stable` tags the set as a segment
/// of the natural numbers that is understood to extend indefinitely; such
/// sets compare equal to any other stable set (the embedding that pads by
/// identity blocks is the identity on our representation).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexSet {
    pub labels: Vec<u32>,
    pub stable: bool,
}

impl IndexSet {
    pub fn segment(n: u32) -> IndexSet {
        IndexSet { labels: (0..n).collect(), stable: false }
    }
    pub fn stable_segment(n: u32) -> IndexSet {
        IndexSet { labels: (0..n).collect(), stable: true }
    }
    pub fn len(&self) -> usize {
        self.labels.len()
    }
    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

/// Finitely supported matrix with optional scalar-diagonal offset.
#[derive(Clone)]
pub struct FinMatrix {
    pub ring: Ring,
    /// Coefficient of the identity, an element of the prime ring Z/char.
    pub offset: u32,
    /// Nonzero entries only.
    pub entries: BTreeMap<(u32, u32), RingElement>,
}

impl PartialEq for FinMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.offset == other.offset && self.entries == other.entries
    }
}
impl Eq for FinMatrix {}

impl Hash for FinMatrix {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.offset.hash(state);
        for ((i, j), e) in &self.entries {
            i.hash(state);
            j.hash(state);
            e.coords.hash(state);
        }
    }
}

impl fmt::Debug for FinMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.offset != 0 {
            write!(f, "{}·1", self.offset)?;
            if !self.entries.is_empty() {
                write!(f, " + ")?;
            }
        }
        let terms: Vec<String> = self
            .entries
            .iter()
            .map(|((i, j), e)| format!("({e:?})E{}{}", i + 1, j + 1))
            .collect();
        if terms.is_empty() && self.offset == 0 {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl FinMatrix {
    pub fn zero(ring: &Ring) -> FinMatrix {
        FinMatrix { ring: ring.clone(), offset: 0, entries: BTreeMap::new() }
    }

    /// s . 1 (scalar diagonal, s in the prime ring).
    pub fn scalar_identity(ring: &Ring, s: u32) -> FinMatrix {
        FinMatrix { ring: ring.clone(), offset: s % ring.characteristic(), entries: BTreeMap::new() }
    }

    pub fn one(ring: &Ring) -> FinMatrix {
        Self::scalar_identity(ring, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.offset == 0 && self.entries.is_empty()
    }

    pub fn set_entry(&mut self, i: u32, j: u32, v: RingElement) {
        if v.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    /// a . E_ij
    pub fn single(ring: &Ring, i: u32, j: u32, a: RingElement) -> FinMatrix {
        let mut m = Self::zero(ring);
        m.set_entry(i, j, a);
        m
    }

    /// Effective entry, offset included on the diagonal.
    pub fn entry(&self, i: u32, j: u32) -> RingElement {
        let base = self
            .entries
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(|| self.ring.zero());
        if i == j && self.offset != 0 {
            &base + &self.ring.scalar(self.offset)
        } else {
            base
        }
    }

    pub fn add(&self, rhs: &FinMatrix) -> FinMatrix {
        assert!(self.ring == rhs.ring);
        let mut out = self.clone();
        out.offset = (out.offset + rhs.offset) % self.ring.characteristic();
        for ((i, j), e) in &rhs.entries {
            let cur = out
                .entries
                .get(&(*i, *j))
                .cloned()
                .unwrap_or_else(|| self.ring.zero());
            out.set_entry(*i, *j, &cur + e);
        }
        out
    }

    pub fn neg(&self) -> FinMatrix {
        let ch = self.ring.characteristic();
        let mut out = FinMatrix {
            ring: self.ring.clone(),
            offset: (ch - self.offset) % ch,
            entries: BTreeMap::new(),
        };
        for ((i, j), e) in &self.entries {
            out.entries.insert((*i, *j), -e);
        }
        out
    }

    pub fn sub(&self, rhs: &FinMatrix) -> FinMatrix {
        self.add(&rhs.neg())
    }

    /// Product with the extended-matrix composition law.
    pub fn mul(&self, rhs: &FinMatrix) -> FinMatrix {
        assert!(self.ring == rhs.ring);
        let ring = &self.ring;
        let ch = ring.characteristic();
        let mut out = FinMatrix {
            ring: ring.clone(),
            offset: self.offset * rhs.offset % ch,
            entries: BTreeMap::new(),
        };
        // s·y and t·x
        for ((i, j), e) in &rhs.entries {
            if self.offset != 0 {
                let cur = out.entry_raw(*i, *j);
                out.set_entry(*i, *j, &cur + &e.int_mul(self.offset));
            }
        }
        for ((i, j), e) in &self.entries {
            if rhs.offset != 0 {
                let cur = out.entry_raw(*i, *j);
                out.set_entry(*i, *j, &cur + &e.int_mul(rhs.offset));
            }
        }
        // x·y
        for ((i, k), a) in &self.entries {
            for ((k2, j), b) in &rhs.entries {
                if k != k2 {
                    continue;
                }
                let cur = out.entry_raw(*i, *j);
                out.set_entry(*i, *j, &cur + &(a * b));
            }
        }
        out
    }

    fn entry_raw(&self, i: u32, j: u32) -> RingElement {
        self.entries
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(|| self.ring.zero())
    }

    /// Fold the offset into explicit diagonal entries on 0..n (the canonical
    /// form for matrices over a declared finite index set).
    pub fn folded(&self, n: u32) -> FinMatrix {
        if self.offset == 0 {
            return self.clone();
        }
        let mut out = self.clone();
        let s = self.ring.scalar(self.offset);
        for d in 0..n {
            let cur = out.entry_raw(d, d);
            out.set_entry(d, d, &cur + &s);
        }
        out.offset = 0;
        out
    }

    /// Transpose, applying the ring involution entrywise when one exists.
    pub fn conj_transpose(&self) -> Result<FinMatrix> {
        let mut out = FinMatrix {
            ring: self.ring.clone(),
            offset: self.offset,
            entries: BTreeMap::new(),
        };
        for ((i, j), e) in &self.entries {
            out.set_entry(*j, *i, e.involute()?);
        }
        Ok(out)
    }

    /// Gaussian inverse on the square block 0..n (offset must be folded by
    /// the caller or zero). Left-reduces with unit pivots; errors when no
    /// unit pivot is available, which over a field means singular.
    pub fn inverse(&self, n: u32) -> Result<FinMatrix> {
        let ring = &self.ring;
        let mat = self.folded(n);
        if mat.entries.keys().any(|&(i, j)| i >= n || j >= n) {
            return Err(Error::Shape("entries outside the declared square block".into()));
        }
        // dense working copies
        let nn = n as usize;
        let mut a: Vec<Vec<RingElement>> =
            (0..nn).map(|i| (0..nn).map(|j| mat.entry(i as u32, j as u32)).collect()).collect();
        let mut inv: Vec<Vec<RingElement>> = (0..nn)
            .map(|i| {
                (0..nn)
                    .map(|j| if i == j { ring.one() } else { ring.zero() })
                    .collect()
            })
            .collect();
        for col in 0..nn {
            let pivot_row = (col..nn)
                .find(|&r| a[r][col].is_unit())
                .ok_or(Error::NotInvertible)?;
            a.swap(col, pivot_row);
            inv.swap(col, pivot_row);
            let pinv = a[col][col].inverse().unwrap();
            for j in 0..nn {
                a[col][j] = &pinv * &a[col][j];
                inv[col][j] = &pinv * &inv[col][j];
            }
            for r in 0..nn {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for j in 0..nn {
                    a[r][j] = &a[r][j] - &(&f * &a[col][j]);
                    inv[r][j] = &inv[r][j] - &(&f * &inv[col][j]);
                }
            }
        }
        let mut out = FinMatrix::zero(ring);
        for (i, row) in inv.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                out.set_entry(i as u32, j as u32, e.clone());
            }
        }
        // guard against one-sided inverses over exotic rings
        let check = self.mul(&out).folded(n);
        if check != FinMatrix::one(ring).folded(n) {
            return Err(Error::NotInvertible);
        }
        Ok(out)
    }
}

/// Group element wrapper: an invertible matrix over a fixed finite square
/// index set, stored in canonical form (offset folded into the diagonal).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElMat {
    pub n: u32,
    pub m: FinMatrix,
}

impl fmt::Debug for ElMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.m)
    }
}

impl ElMat {
    pub fn new(n: u32, m: FinMatrix) -> ElMat {
        ElMat { n, m: m.folded(n) }
    }
    pub fn identity(ring: &Ring, n: u32) -> ElMat {
        ElMat::new(n, FinMatrix::one(ring))
    }
}

impl GroupElement for ElMat {
    fn gmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n);
        ElMat { n: self.n, m: self.m.mul(&rhs.m) }
    }
    fn ginv(&self) -> Self {
        ElMat { n: self.n, m: self.m.inverse(self.n).expect("group element invertible") }
    }
}

/// Elementary matrix e_ij(a) = 1 + a E_ij, i != j.
pub fn elementary(ring: &Ring, n: u32, i: u32, j: u32, a: &RingElement) -> ElMat {
    assert!(i != j && i < n && j < n, "elementary position");
    let mut m = FinMatrix::one(ring);
    m.set_entry(i, j, a.clone());
    ElMat::new(n, m)
}

/// Group commutator ((g, h)) = g h g^-1 h^-1.
pub fn commutator(g: &ElMat, h: &ElMat) -> ElMat {
    g.gmul(h).gmul(&g.ginv()).gmul(&h.ginv())
}

/// The elementary linear group EL_n(A), closed from all e_ij(a).
pub fn el_group(ring: &Ring, n: u32, max_elements: usize) -> Result<FiniteGroup<ElMat>> {
    let mut gens = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            for a in ring.elements() {
                if a.is_zero() {
                    continue;
                }
                gens.push(elementary(ring, n, i, j, &a));
            }
        }
    }
    FiniteGroup::closure(ElMat::identity(ring, n), gens, max_elements)
}

/// e_+(u) = [[1, u], [0, 1]] for u supported on the I x J block; rows of u
/// are labelled by 0..i and columns by 0..j in the pair's own coordinates.
pub fn e_plus(ring: &Ring, i: u32, j: u32, u: &FinMatrix) -> ElMat {
    let n = i + j;
    let mut m = FinMatrix::one(ring);
    for ((r, c), e) in &u.entries {
        assert!(*r < i && *c < j, "u outside I x J block");
        m.set_entry(*r, c + i, e.clone());
    }
    ElMat::new(n, m)
}

/// e_-(v) = [[1, 0], [-v, 1]] for v supported on the J x I block.
pub fn e_minus(ring: &Ring, i: u32, j: u32, v: &FinMatrix) -> ElMat {
    let n = i + j;
    let mut m = FinMatrix::one(ring);
    for ((r, c), e) in &v.entries {
        assert!(*r < j && *c < i, "v outside J x I block");
        m.set_entry(r + i, *c, -e);
    }
    ElMat::new(n, m)
}

/// All I x J matrices over the ring (coordinates enumerated entrywise).
pub fn all_rect_matrices(ring: &Ring, i: u32, j: u32) -> Vec<FinMatrix> {
    let cells: Vec<(u32, u32)> =
        (0..i).flat_map(|r| (0..j).map(move |c| (r, c))).collect();
    let elems = ring.elements();
    let mut out = vec![FinMatrix::zero(ring)];
    for (r, c) in cells {
        let mut next = Vec::with_capacity(out.len() * elems.len());
        for m in &out {
            for e in &elems {
                let mut m2 = m.clone();
                m2.set_entry(r, c, e.clone());
                next.push(m2);
            }
        }
        out = next;
    }
    out
}

/// Relations (E1)-(E4) of the elementary matrices, checked exhaustively.
pub fn verify_e_suite(ring: &Ring, n: u32) -> SuiteReport {
    let mut suite = SuiteReport::start(format!("E1-E4 over {} n={}", ring.name(), n));
    let elems = ring.elements();
    let positions: Vec<(u32, u32)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();

    // (E1) e_ij(a) e_ij(b) = e_ij(a+b)
    for &(i, j) in &positions {
        for a in &elems {
            for b in &elems {
                let lhs = elementary(ring, n, i, j, a).gmul(&elementary(ring, n, i, j, b));
                let rhs = elementary(ring, n, i, j, &(a + b));
                suite.check(lhs == rhs, || format!("(E1) i={i} j={j} a={a:?} b={b:?}"));
            }
        }
    }
    // (E2) ((e_ij(a), e_kl(b))) = 1 when j != k and i != l
    for &(i, j) in &positions {
        for &(k, l) in &positions {
            if j == k || i == l {
                continue;
            }
            for a in &elems {
                for b in &elems {
                    let c = commutator(
                        &elementary(ring, n, i, j, a),
                        &elementary(ring, n, k, l, b),
                    );
                    suite.check(c == ElMat::identity(ring, n), || {
                        format!("(E2) ({i},{j}),({k},{l}) a={a:?} b={b:?}")
                    });
                }
            }
        }
    }
    // (E3) ((e_ij(a), e_jl(b))) = e_il(ab), i, j, l pairwise distinct
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                if i == j || j == l || i == l {
                    continue;
                }
                for a in &elems {
                    for b in &elems {
                        let c = commutator(
                            &elementary(ring, n, i, j, a),
                            &elementary(ring, n, j, l, b),
                        );
                        let rhs = elementary(ring, n, i, l, &(a * b));
                        suite.check(c == rhs, || {
                            format!("(E3) i={i} j={j} l={l} a={a:?} b={b:?}")
                        });
                    }
                }
            }
        }
    }
    // (E4) ((e_ij(a), e_ki(b))) = e_kj(-ba), i, j, k pairwise distinct
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if i == j || j == k || i == k {
                    continue;
                }
                for a in &elems {
                    for b in &elems {
                        let c = commutator(
                            &elementary(ring, n, i, j, a),
                            &elementary(ring, n, k, i, b),
                        );
                        let rhs = elementary(ring, n, k, j, &(-&(b * a)));
                        suite.check(c == rhs, || {
                            format!("(E4) i={i} j={j} k={k} a={a:?} b={b:?}")
                        });
                    }
                }
            }
        }
    }
    suite.finish()
}

/// The closed commutator formula for ((e_+(u), e_-(v))): identity block
/// perturbed by uv, uvu, vuv, vu. Checked against the direct product.
pub fn verify_block_commutator(ring: &Ring, i: u32, j: u32) -> SuiteReport {
    let mut suite =
        SuiteReport::start(format!("block commutator over {} |I|={} |J|={}", ring.name(), i, j));
    let us = all_rect_matrices(ring, i, j);
    let vs = all_rect_matrices(ring, j, i);
    let n = i + j;
    for u in &us {
        for v in &vs {
            let lhs = commutator(&e_plus(ring, i, j, u), &e_minus(ring, i, j, v));
            // 1_I - uv + uvuv on the I block, uvu on IxJ, vuv on JxI, 1_J + vu
            let uv = u.mul(v);
            let vu = v.mul(u);
            let mut rhs = FinMatrix::one(ring);
            for ((r, c), e) in uv.sub(&uv.mul(&uv)).neg().entries.iter() {
                rhs.set_entry(*r, *c, e.clone());
            }
            for ((r, c), e) in uv.mul(u).entries.iter() {
                rhs.set_entry(*r, c + i, e.clone());
            }
            for ((r, c), e) in v.mul(&uv).entries.iter() {
                rhs.set_entry(r + i, *c, e.clone());
            }
            for ((r, c), e) in vu.entries.iter() {
                rhs.set_entry(r + i, c + i, e.clone());
            }
            let rhs = ElMat::new(n, rhs);
            suite.check(lhs == rhs, || format!("commutator formula at u={u:?} v={v:?}"));
        }
    }
    suite.finish()
}

/// e_+(u+u') = e_+(u) e_+(u') and the minus-side analogue.
pub fn verify_block_additivity(ring: &Ring, i: u32, j: u32) -> SuiteReport {
    let mut suite =
        SuiteReport::start(format!("block additivity over {} |I|={} |J|={}", ring.name(), i, j));
    let us = all_rect_matrices(ring, i, j);
    for u in &us {
        for u2 in &us {
            let lhs = e_plus(ring, i, j, u).gmul(&e_plus(ring, i, j, u2));
            let rhs = e_plus(ring, i, j, &u.add(u2));
            suite.check(lhs == rhs, || format!("plus additivity at u={u:?} u'={u2:?}"));
        }
    }
    let vs = all_rect_matrices(ring, j, i);
    for v in &vs {
        for v2 in &vs {
            let lhs = e_minus(ring, i, j, v).gmul(&e_minus(ring, i, j, v2));
            let rhs = e_minus(ring, i, j, &v.add(v2));
            suite.check(lhs == rhs, || format!("minus additivity at v={v:?} v'={v2:?}"));
        }
    }
    suite.finish()
}

/// EL_N(A) is generated by the two unipotent block families: the closure of
/// { e_+(u), e_-(v) } equals the closure of all e_kl(a).
pub fn verify_generation(ring: &Ring, i: u32, j: u32, max: usize) -> Result<SuiteReport> {
    let mut suite = SuiteReport::start(format!(
        "block generation over {} |I|={} |J|={}",
        ring.name(),
        i,
        j
    ));
    let n = i + j;
    let full = el_group(ring, n, max)?;
    let mut gens = Vec::new();
    for u in all_rect_matrices(ring, i, j) {
        if !u.entries.is_empty() {
            gens.push(e_plus(ring, i, j, &u));
        }
    }
    for v in all_rect_matrices(ring, j, i) {
        if !v.entries.is_empty() {
            gens.push(e_minus(ring, i, j, &v));
        }
    }
    let blocks = FiniteGroup::closure(ElMat::identity(ring, n), gens, max)?;
    suite.counter("el_order", full.order() as i64);
    suite.counter("block_order", blocks.order() as i64);
    suite.check(full.order() == blocks.order(), || {
        format!("orders differ: {} vs {}", full.order(), blocks.order())
    });
    // containment both ways (orders equal and one side contained suffices)
    let contained = blocks.elements.iter().all(|e| full.contains(e));
    suite.check(contained, || "block subgroup escapes EL".into());
    Ok(suite.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Ring {
        Ring::fp(2).unwrap()
    }
    fn f3() -> Ring {
        Ring::fp(3).unwrap()
    }

    #[test]
    fn extended_matrix_composition_law() {
        // (s1+x)(t1+y) with symbolic offsets over F3
        let r = f3();
        let mut x = FinMatrix::zero(&r);
        x.set_entry(0, 1, r.scalar(2));
        let mut y = FinMatrix::zero(&r);
        y.set_entry(1, 0, r.scalar(1));
        let sx = FinMatrix::scalar_identity(&r, 2).add(&x); // 2.1 + x
        let ty = FinMatrix::scalar_identity(&r, 1).add(&y); // 1.1 + y
        let prod = sx.mul(&ty);
        assert_eq!(prod.offset, 2);
        // entries: 2y + x + xy = 2E10 + 2E01 + 2E00
        assert_eq!(prod.entry(1, 0), r.scalar(2));
        assert_eq!(prod.entry(0, 1), r.scalar(2));
        assert_eq!(prod.entry(0, 0), &r.scalar(2) + &r.scalar(2)); // 2 + offset2 folded in entry()
    }

    #[test]
    fn elementary_inverse_is_negated_argument() {
        let r = f3();
        let e = elementary(&r, 3, 0, 2, &r.scalar(2));
        let einv = elementary(&r, 3, 0, 2, &r.scalar(1));
        assert_eq!(e.ginv(), einv);
    }

    #[test]
    fn el2_f2_has_order_six() {
        // oracle: all 2x2 matrices over F2 with determinant 1
        let r = f2();
        let g = el_group(&r, 2, 100).unwrap();
        let mut det_one = 0;
        for a in 0..2u32 {
            for b in 0..2u32 {
                for c in 0..2u32 {
                    for d in 0..2u32 {
                        if (a * d + b * c) % 2 == 1 {
                            det_one += 1;
                        }
                    }
                }
            }
        }
        assert_eq!(det_one, 6);
        assert_eq!(g.order(), 6);
    }

    #[test]
    fn el2_f3_has_order_24() {
        let r = f3();
        let g = el_group(&r, 2, 1000).unwrap();
        // oracle: 2x2 determinant-1 count over F3
        let mut det_one = 0;
        for a in 0..3u32 {
            for b in 0..3u32 {
                for c in 0..3u32 {
                    for d in 0..3u32 {
                        if (a * d + 2 * b * c) % 3 == 1 {
                            det_one += 1;
                        }
                    }
                }
            }
        }
        assert_eq!(det_one, 24);
        assert_eq!(g.order(), 24);
    }

    #[test]
    fn el3_f2_has_order_168() {
        let r = f2();
        let g = el_group(&r, 3, 1000).unwrap();
        // oracle: count invertible 3x3 over F2 (all invertibles have det 1)
        let mut count = 0;
        for bits in 0..512u32 {
            let mut m = FinMatrix::zero(&r);
            for k in 0..9 {
                if bits >> k & 1 == 1 {
                    m.set_entry(k / 3, k % 3, r.one());
                }
            }
            if m.inverse(3).is_ok() {
                count += 1;
            }
        }
        assert_eq!(count, 168);
        assert_eq!(g.order(), 168);
    }

    #[test]
    fn e_suite_passes_f2_n3() {
        let rep = verify_e_suite(&f2(), 3);
        assert!(rep.pass, "{:?}", rep.witnesses);
        assert!(rep.instances > 0);
    }

    #[test]
    fn e_suite_passes_z4_n3() {
        let rep = verify_e_suite(&Ring::zn(4).unwrap(), 3);
        assert!(rep.pass, "{:?}", rep.witnesses);
    }

    #[test]
    fn block_suites_pass_f3_1_2() {
        let rep = verify_block_additivity(&f3(), 1, 2);
        assert!(rep.pass, "{:?}", rep.witnesses);
        let rep = verify_block_commutator(&f3(), 1, 2);
        assert!(rep.pass, "{:?}", rep.witnesses);
        assert_eq!(rep.instances, 81);
    }

    #[test]
    fn block_families_generate_el3_f2() {
        let rep = verify_generation(&f2(), 1, 2, 10_000).unwrap();
        assert!(rep.pass, "{:?}", rep.witnesses);
    }

    #[test]
    fn conj_transpose_uses_base_involution() {
        let m2 = Ring::matrix_ring(&f2(), 2).unwrap();
        let mut m = FinMatrix::zero(&m2);
        m.set_entry(0, 1, m2.basis_elt(1)); // E12 of the base ring at (0,1)
        let t = m.conj_transpose().unwrap();
        assert_eq!(t.entry(1, 0), m2.basis_elt(2)); // base transpose applied
    }

    #[test]
    fn singular_matrix_rejected() {
        let r = f2();
        let mut m = FinMatrix::zero(&r);
        m.set_entry(0, 0, r.one());
        m.set_entry(1, 0, r.one());
        assert!(m.inverse(2).is_err());
    }
}
