//! The Tits-Kantor-Koecher Lie algebra of a Jordan pair.
//!
//! tkk(V) = V+ ⊕ L0 ⊕ V- with L0 = k zeta + span{delta(x,y)}, where zeta
//! acts as the identity on V+ and minus the identity on V-, and
//! delta(x,y) = (D(x,y), -D(y,x)) with D(x,y)z = {x y z}.  The bracket is
//! the alternating extension of
//!
//!   [V^s, V^s] = 0,  [D, z] = D_s(z),  [x, y] = -delta(x,y).
//!
//! Everything is coordinatized over the prime field of the base ring, so
//! the construction refuses scalars like Z/4; those still get a span
//! membership test for L0 through `l0_contains`, which needs no basis.

use std::collections::{HashMap, HashSet};

use crate::error::Error;
use crate::jordan::{scale, JordanPair, PairKind, PairMap, Sign, SIGNS};
use crate::linalg::{nullspace, CoordSolver, DenseMat, SpanSolver};
use crate::matrix::FinMatrix;
use crate::report::SuiteReport;
use crate::ring::Ring;
use crate::Result;

/// A degree-0 element as a pair of matrices acting on the coordinates of
/// V+ and V-.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndoPair {
    pub on_plus: DenseMat,
    pub on_minus: DenseMat,
}

/// The TKK algebra in a fixed ordered basis: V+ coordinates first, then
/// the reduced L0 basis (zeta leading), then V- coordinates.  Elements
/// are coordinate vectors over F_p and the bracket is a structure
/// constant table.
pub struct TkkAlgebra {
    pub pair: JordanPair,
    pub p: u32,
    pub basis_plus: Vec<FinMatrix>,
    pub basis_zero: Vec<EndoPair>,
    pub basis_minus: Vec<FinMatrix>,
    plus_coords: CoordSolver,
    minus_coords: CoordSolver,
    zero_coords: CoordSolver,
    /// table[i][j] = coordinates of [b_i, b_j]
    pub table: Vec<Vec<Vec<u8>>>,
    pub degree: Vec<i8>,
}

fn flatten(pair: &JordanPair, s: Sign, x: &FinMatrix) -> Vec<u8> {
    let (r, c) = pair.shape(s);
    let rank = pair.base().rank();
    let mut out = vec![0u8; (r * c) as usize * rank];
    for (&(i, j), v) in &x.entries {
        for (k, &coord) in v.coords.iter().enumerate() {
            out[((i * c + j) as usize) * rank + k] = coord as u8;
        }
    }
    out
}

fn flatten_endo(e: &EndoPair) -> Vec<u8> {
    let mut out = e.on_plus.a.clone();
    out.extend_from_slice(&e.on_minus.a);
    out
}

impl TkkAlgebra {
    pub fn dim(&self) -> usize {
        self.degree.len()
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        (self.basis_plus.len(), self.basis_zero.len(), self.basis_minus.len())
    }

    fn slot(&self, degree: i8) -> std::ops::Range<usize> {
        let (dp, dz, dm) = self.dims();
        match degree {
            1 => 0..dp,
            0 => dp..dp + dz,
            -1 => dp + dz..dp + dz + dm,
            _ => 0..0,
        }
    }

    /// Coordinates of x in the basis of V^s.
    pub fn pair_coords(&self, s: Sign, x: &FinMatrix) -> Result<Vec<u8>> {
        let solver = match s {
            Sign::Plus => &self.plus_coords,
            Sign::Minus => &self.minus_coords,
        };
        solver
            .coords(&flatten(&self.pair, s, x))
            .ok_or_else(|| Error::Tkk(format!("{x:?} is not a V{} element", s.label())))
    }

    /// Full TKK coordinate vector of an element of V^s.
    pub fn embed(&self, s: Sign, x: &FinMatrix) -> Result<Vec<u8>> {
        let part = self.pair_coords(s, x)?;
        let mut v = vec![0u8; self.dim()];
        let slot = self.slot(if s == Sign::Plus { 1 } else { -1 });
        v[slot].copy_from_slice(&part);
        Ok(v)
    }

    /// Full TKK coordinate vector of a degree-0 action, when it lies in L0.
    pub fn embed_zero(&self, e: &EndoPair) -> Result<Vec<u8>> {
        let part = self
            .zero_coords
            .coords(&flatten_endo(e))
            .ok_or_else(|| Error::Tkk("action outside the computed L0 span".into()))?;
        let mut v = vec![0u8; self.dim()];
        v[self.slot(0)].copy_from_slice(&part);
        Ok(v)
    }

    /// Reconstruct the V^s component of a coordinate vector.
    pub fn part(&self, s: Sign, v: &[u8]) -> FinMatrix {
        let (basis, slot) = match s {
            Sign::Plus => (&self.basis_plus, self.slot(1)),
            Sign::Minus => (&self.basis_minus, self.slot(-1)),
        };
        let ring = self.pair.base();
        let mut acc = self.pair.zero(s);
        for (b, &c) in basis.iter().zip(v[slot].iter()) {
            if c != 0 {
                acc = self.pair.add(s, &acc, &scale(b, &ring.scalar(c as u32)));
            }
        }
        acc
    }

    /// The degree-0 component as an action pair.
    pub fn zero_part(&self, v: &[u8]) -> EndoPair {
        let (dp, _, dm) = self.dims();
        let mut on_plus = DenseMat::zero(self.p, dp, dp);
        let mut on_minus = DenseMat::zero(self.p, dm, dm);
        for (e, &c) in self.basis_zero.iter().zip(v[self.slot(0)].iter()) {
            if c != 0 {
                on_plus = on_plus.add(&e.on_plus.scale(c as u32));
                on_minus = on_minus.add(&e.on_minus.scale(c as u32));
            }
        }
        EndoPair { on_plus, on_minus }
    }

    pub fn zeta(&self) -> EndoPair {
        let (dp, _, dm) = self.dims();
        EndoPair {
            on_plus: DenseMat::identity(self.p, dp),
            on_minus: DenseMat::identity(self.p, dm).neg(),
        }
    }

    /// delta(x, y) as a pair of coordinate actions.
    pub fn delta(&self, x: &FinMatrix, y: &FinMatrix) -> Result<EndoPair> {
        let (dp, dm) = (self.basis_plus.len(), self.basis_minus.len());
        let mut on_plus = DenseMat::zero(self.p, dp, dp);
        for (j, z) in self.basis_plus.iter().enumerate() {
            let img = self.pair.triple(Sign::Plus, x, y, z);
            for (i, &c) in self.pair_coords(Sign::Plus, &img)?.iter().enumerate() {
                on_plus.set(i, j, c as u32);
            }
        }
        let mut on_minus = DenseMat::zero(self.p, dm, dm);
        for (j, w) in self.basis_minus.iter().enumerate() {
            let img = self.pair.triple(Sign::Minus, y, x, w);
            for (i, &c) in self.pair_coords(Sign::Minus, &img)?.iter().enumerate() {
                on_minus.set(i, j, c as u32);
            }
        }
        Ok(EndoPair { on_plus, on_minus: on_minus.neg() })
    }

    /// Structure-constant bracket of two coordinate vectors.
    pub fn bracket(&self, a: &[u8], b: &[u8]) -> Vec<u8> {
        let n = self.dim();
        let mut out = vec![0u32; n];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                if bj == 0 {
                    continue;
                }
                let c = ai as u32 * bj as u32 % self.p;
                for (k, &t) in self.table[i][j].iter().enumerate() {
                    out[k] = (out[k] + c * t as u32) % self.p;
                }
            }
        }
        out.into_iter().map(|x| x as u8).collect()
    }

    /// The exponential automorphism exp_s(w), as a matrix in the TKK
    /// basis.  Built from the unipotent block formula (identity, ad w,
    /// Q_w) and then checked to preserve the bracket table; a failure
    /// there means an upstream bug, so it is a hard error.
    pub fn exp_aut(&self, s: Sign, w: &FinMatrix) -> Result<DenseMat> {
        if !self.pair.contains(s, w) {
            return Err(Error::Tkk(format!("{w:?} is not in V{}", s.label())));
        }
        let n = self.dim();
        let mut m = DenseMat::identity(self.p, n);
        let mut set_col = |col: usize, v: &[u8]| {
            for (r, &c) in v.iter().enumerate() {
                if c != 0 {
                    let old = m.at(r, col) as u32;
                    m.set(r, col, old + c as u32);
                }
            }
        };
        let (dp, dz, dm) = self.dims();
        match s {
            Sign::Plus => {
                // degree-0 columns gain [w, D] = -(D_+ w) in V+
                let wc = self.pair_coords(Sign::Plus, w)?;
                for j in 0..dz {
                    let img = self.basis_zero[j].on_plus.apply(&wc);
                    let mut v = vec![0u8; n];
                    for (r, &c) in img.iter().enumerate() {
                        v[r] = ((self.p - c as u32) % self.p) as u8;
                    }
                    set_col(dp + j, &v);
                }
                // V- columns gain -delta(w, y) in L0 and Q_w y in V+
                for j in 0..dm {
                    let y = &self.basis_minus[j];
                    let d = self.delta(w, y)?;
                    let neg = EndoPair { on_plus: d.on_plus.neg(), on_minus: d.on_minus.neg() };
                    set_col(dp + dz + j, &self.embed_zero(&neg)?);
                    let q = self.pair.q(Sign::Plus, w, y);
                    set_col(dp + dz + j, &self.embed(Sign::Plus, &q)?);
                }
            }
            Sign::Minus => {
                let wc = self.pair_coords(Sign::Minus, w)?;
                for j in 0..dz {
                    let img = self.basis_zero[j].on_minus.apply(&wc);
                    let mut v = vec![0u8; n];
                    for (r, &c) in img.iter().enumerate() {
                        v[dp + dz + r] = ((self.p - c as u32) % self.p) as u8;
                    }
                    set_col(dp + j, &v);
                }
                // V+ columns gain +delta(x, w) in L0 and Q_w x in V-
                for j in 0..dp {
                    let x = &self.basis_plus[j];
                    set_col(j, &self.embed_zero(&self.delta(x, w)?)?);
                    let q = self.pair.q(Sign::Minus, w, x);
                    set_col(j, &self.embed(Sign::Minus, &q)?);
                }
            }
        }
        self.check_automorphism(&m)?;
        Ok(m)
    }

    /// The automorphism tkk(f) for a bijective pair homomorphism f of the
    /// underlying pair onto itself: x ⊕ D ⊕ y goes to
    /// f+(x) ⊕ f∘D∘f^{-1} ⊕ f-(y).
    pub fn pair_aut(&self, f: &PairMap) -> Result<DenseMat> {
        if !f.is_bijective() {
            return Err(Error::NotAutomorphism);
        }
        let (dp, dz, dm) = self.dims();
        let mut f_plus = DenseMat::zero(self.p, dp, dp);
        for (j, b) in self.basis_plus.iter().enumerate() {
            for (i, &c) in self.pair_coords(Sign::Plus, &f.apply(Sign::Plus, b))?.iter().enumerate() {
                f_plus.set(i, j, c as u32);
            }
        }
        let mut f_minus = DenseMat::zero(self.p, dm, dm);
        for (j, b) in self.basis_minus.iter().enumerate() {
            for (i, &c) in self.pair_coords(Sign::Minus, &f.apply(Sign::Minus, b))?.iter().enumerate() {
                f_minus.set(i, j, c as u32);
            }
        }
        let fp_inv = f_plus.inverse().map_err(|_| Error::NotAutomorphism)?;
        let fm_inv = f_minus.inverse().map_err(|_| Error::NotAutomorphism)?;

        let n = self.dim();
        let mut m = DenseMat::zero(self.p, n, n);
        for j in 0..dp {
            for i in 0..dp {
                m.set(i, j, f_plus.at(i, j) as u32);
            }
        }
        for j in 0..dm {
            for i in 0..dm {
                m.set(dp + dz + i, dp + dz + j, f_minus.at(i, j) as u32);
            }
        }
        for (j, e) in self.basis_zero.iter().enumerate() {
            let conj = EndoPair {
                on_plus: f_plus.mul(&e.on_plus).mul(&fp_inv),
                on_minus: f_minus.mul(&e.on_minus).mul(&fm_inv),
            };
            let v = self.embed_zero(&conj)?;
            for (i, &c) in v.iter().enumerate() {
                m.set(i, dp + j, c as u32);
            }
        }
        self.check_automorphism(&m)?;
        Ok(m)
    }

    /// Exact bracket preservation on all basis pairs.
    pub fn check_automorphism(&self, m: &DenseMat) -> Result<()> {
        let n = self.dim();
        if m.rows != n || m.cols != n {
            return Err(Error::NotAutomorphism);
        }
        m.inverse().map_err(|_| Error::NotAutomorphism)?;
        for i in 0..n {
            let mi = column_of(m, i);
            for j in 0..n {
                let mj = column_of(m, j);
                let lhs = m.apply(&self.table[i][j]);
                let rhs = self.bracket(&mi, &mj);
                if lhs != rhs {
                    return Err(Error::NotAutomorphism);
                }
            }
        }
        Ok(())
    }
}

fn column_of(m: &DenseMat, j: usize) -> Vec<u8> {
    (0..m.rows).map(|i| m.at(i, j)).collect()
}

/// Builds tkk(V) over the prime field of the base ring.  Scalars must
/// form a prime field (coordinates and characteristic agree and are
/// prime); quotient pairs are refused because their representative
/// arithmetic is not coordinate-linear.
pub fn tkk_build(pair: &JordanPair) -> Result<TkkAlgebra> {
    let ring = pair.base();
    let p = ring.characteristic();
    if !crate::ring::is_prime(p) || ring.modulus() != p {
        return Err(Error::Tkk(format!(
            "tkk needs prime-field coordinates; {} has characteristic {p} and modulus {}",
            ring.name(),
            ring.modulus()
        )));
    }
    if matches!(pair.kind, PairKind::Quotient(_)) {
        return Err(Error::Tkk(
            "tkk of a quotient pair: coset representatives do not add linearly; \
             transport along an isomorphism instead"
                .into(),
        ));
    }

    // greedy independent subsets of the elements, in enumeration order
    let basis = |s: Sign| -> (Vec<FinMatrix>, Vec<Vec<u8>>) {
        let (r, c) = pair.shape(s);
        let width = (r * c) as usize * ring.rank();
        let mut solver = SpanSolver::new(p, width);
        let mut chosen = Vec::new();
        let mut rows = Vec::new();
        for x in pair.elements(s) {
            let v = flatten(pair, s, &x);
            if solver.insert(&v) {
                chosen.push(x);
                rows.push(v);
            }
        }
        (chosen, rows)
    };
    let (basis_plus, plus_rows) = basis(Sign::Plus);
    let (basis_minus, minus_rows) = basis(Sign::Minus);
    let (dp, dm) = (basis_plus.len(), basis_minus.len());
    let (rp, cp) = pair.shape(Sign::Plus);
    let (rm, cm) = pair.shape(Sign::Minus);
    let plus_coords = CoordSolver::new(p, (rp * cp) as usize * ring.rank(), &plus_rows)?;
    let minus_coords = CoordSolver::new(p, (rm * cm) as usize * ring.rank(), &minus_rows)?;

    // assemble a provisional algebra to reuse delta/zeta machinery
    let mut alg = TkkAlgebra {
        pair: pair.clone(),
        p,
        basis_plus,
        basis_zero: Vec::new(),
        basis_minus,
        plus_coords,
        minus_coords,
        zero_coords: CoordSolver::new(p, 1, &[vec![1u8]])?,
        table: Vec::new(),
        degree: Vec::new(),
    };

    // L0 = k zeta + span of the basis deltas, reduced greedily with zeta
    // first.  A zero pair has no room for actions at all; keep a formal
    // one-dimensional slot for zeta so the degenerate case stays visible.
    let width_zero = dp * dp + dm * dm;
    let mut basis_zero = Vec::new();
    let mut zero_rows = Vec::new();
    if width_zero == 0 {
        basis_zero.push(alg.zeta());
        zero_rows.push(vec![1u8]);
    } else {
        let mut solver = SpanSolver::new(p, width_zero);
        let mut push = |e: EndoPair, basis_zero: &mut Vec<EndoPair>, zero_rows: &mut Vec<Vec<u8>>| {
            let v = flatten_endo(&e);
            if solver.insert(&v) {
                basis_zero.push(e);
                zero_rows.push(v);
            }
        };
        push(alg.zeta(), &mut basis_zero, &mut zero_rows);
        for x in alg.basis_plus.clone() {
            for y in alg.basis_minus.clone() {
                push(alg.delta(&x, &y)?, &mut basis_zero, &mut zero_rows);
            }
        }
    }
    let width_zero = width_zero.max(1);
    alg.zero_coords = CoordSolver::new(p, width_zero, &zero_rows)?;
    alg.basis_zero = basis_zero;

    let (dp, dz, dm) = alg.dims();
    let n = dp + dz + dm;
    alg.degree = std::iter::repeat_n(1i8, dp)
        .chain(std::iter::repeat_n(0i8, dz))
        .chain(std::iter::repeat_n(-1i8, dm))
        .collect();

    // bracket table
    let mut table = vec![vec![vec![0u8; n]; n]; n];
    let neg = |v: &[u8]| -> Vec<u8> { v.iter().map(|&c| ((p - c as u32) % p) as u8).collect() };
    for i in 0..dp {
        for j in 0..dm {
            // [x, y] = -delta(x, y)
            let d = alg.delta(&alg.basis_plus[i], &alg.basis_minus[j])?;
            let v = alg.embed_zero(&d)?;
            table[i][dp + dz + j] = neg(&v);
            table[dp + dz + j][i] = v;
        }
    }
    for j in 0..dz {
        let e = alg.basis_zero[j].clone();
        for i in 0..dp {
            // [D, x] = D_+(x)
            let mut unit = vec![0u8; dp];
            unit[i] = 1;
            let img = e.on_plus.apply(&unit);
            let mut v = vec![0u8; n];
            v[..dp].copy_from_slice(&img);
            table[dp + j][i] = v.clone();
            table[i][dp + j] = neg(&v);
        }
        for i in 0..dm {
            let mut unit = vec![0u8; dm];
            unit[i] = 1;
            let img = e.on_minus.apply(&unit);
            let mut v = vec![0u8; n];
            v[dp + dz..].copy_from_slice(&img);
            table[dp + j][dp + dz + i] = v.clone();
            table[dp + dz + i][dp + j] = neg(&v);
        }
    }
    for i in 0..dz {
        for j in 0..dz {
            if i == j {
                continue;
            }
            let (a, b) = (&alg.basis_zero[i], &alg.basis_zero[j]);
            let comm = EndoPair {
                on_plus: a.on_plus.mul(&b.on_plus).sub(&b.on_plus.mul(&a.on_plus)),
                on_minus: a.on_minus.mul(&b.on_minus).sub(&b.on_minus.mul(&a.on_minus)),
            };
            table[dp + i][dp + j] = alg.embed_zero(&comm)?;
        }
    }
    alg.table = table;
    Ok(alg)
}

/// Jacobi, antisymmetry, grading, centre, and the cross-checks tying the
/// bracket table back to the Jordan triple product.
pub fn verify_tkk_suite(alg: &TkkAlgebra) -> SuiteReport {
    let mut suite = SuiteReport::start(format!("tkk({})", alg.pair.name));
    let n = alg.dim();
    let (dp, dz, dm) = alg.dims();
    suite.counter("dim V+", dp as i64);
    suite.counter("dim L0", dz as i64);
    suite.counter("dim V-", dm as i64);

    for i in 0..n {
        suite.check(alg.table[i][i].iter().all(|&c| c == 0), || {
            format!("[b{i}, b{i}] != 0")
        });
        for j in 0..n {
            let ji = alg.bracket(&unit(n, j), &unit(n, i));
            let ij = alg.table[i][j].clone();
            let sum: Vec<u32> = ij
                .iter()
                .zip(ji.iter())
                .map(|(&a, &b)| (a as u32 + b as u32) % alg.p)
                .collect();
            suite.check(sum.iter().all(|&c| c == 0), || {
                format!("[b{i}, b{j}] is not minus [b{j}, b{i}]")
            });

            // grading additivity
            let want = alg.degree[i] as i32 + alg.degree[j] as i32;
            let ok = alg.table[i][j].iter().enumerate().all(|(k, &c)| {
                c == 0 || (want.abs() <= 1 && alg.degree[k] as i32 == want)
            });
            suite.check(ok, || format!("grading violated by [b{i}, b{j}]"));
        }
    }

    // Jacobi on ordered basis triples
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let mut acc = vec![0u32; n];
                for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                    let inner = &alg.table[b][c];
                    let term = alg.bracket(&unit(n, a), inner);
                    for (t, &v) in acc.iter_mut().zip(term.iter()) {
                        *t = (*t + v as u32) % alg.p;
                    }
                }
                suite.check(acc.iter().all(|&c| c == 0), || {
                    format!("Jacobi fails on basis triple ({i}, {j}, {k})")
                });
            }
        }
    }

    // centre by linear solve: [c, b_j] = 0 for all j
    let mut rows = Vec::new();
    for j in 0..n {
        for k in 0..n {
            rows.push((0..n).map(|i| alg.table[i][j][k]).collect::<Vec<u8>>());
        }
    }
    let centre = nullspace(alg.p, n, &rows);
    suite.counter("centre dim", centre.len() as i64);
    if dp + dm == 0 {
        suite.note("degenerate zero pair: centre is all of L0, as expected");
    } else {
        suite.check(centre.is_empty(), || {
            format!("centre has dimension {}", centre.len())
        });
    }

    // the bracket table reproduces the Jordan triple product
    for (i, x) in alg.basis_plus.iter().enumerate() {
        for (j, y) in alg.basis_minus.iter().enumerate() {
            let d = alg.table[dp + dz + j][i].clone(); // [y, x] = delta(x, y)
            for (k, z) in alg.basis_plus.iter().enumerate() {
                let got = alg.bracket(&d, &unit(n, k));
                let want = alg
                    .embed(Sign::Plus, &alg.pair.triple(Sign::Plus, x, y, z))
                    .expect("triple stays in V+");
                suite.check(got == want, || {
                    format!("[delta(x{i}, y{j}), x{k}] differs from the triple product")
                });
            }
            for (k, w) in alg.basis_minus.iter().enumerate() {
                let got = alg.bracket(&d, &unit(n, dp + dz + k));
                let t = alg.pair.triple(Sign::Minus, y, x, w);
                let want = alg
                    .embed(Sign::Minus, &alg.pair.neg(Sign::Minus, &t))
                    .expect("triple stays in V-");
                suite.check(got == want, || {
                    format!("[delta(x{i}, y{j}), w{k}] differs from -{{y x w}}")
                });
            }
        }
    }

    // the operator identity behind L0 closure:
    // [delta(x,y), delta(u,v)] = delta({x y u}, v) - delta(u, {y x v})
    for x in &alg.basis_plus {
        for y in &alg.basis_minus {
            let dxy = alg.delta(x, y).expect("basis delta");
            for u in &alg.basis_plus {
                for v in &alg.basis_minus {
                    let duv = alg.delta(u, v).expect("basis delta");
                    let comm = EndoPair {
                        on_plus: dxy.on_plus.mul(&duv.on_plus).sub(&duv.on_plus.mul(&dxy.on_plus)),
                        on_minus: dxy
                            .on_minus
                            .mul(&duv.on_minus)
                            .sub(&duv.on_minus.mul(&dxy.on_minus)),
                    };
                    let a = alg
                        .delta(&alg.pair.triple(Sign::Plus, x, y, u), v)
                        .expect("delta of triple");
                    let b = alg
                        .delta(u, &alg.pair.triple(Sign::Minus, y, x, v))
                        .expect("delta of triple");
                    let want = EndoPair {
                        on_plus: a.on_plus.sub(&b.on_plus),
                        on_minus: a.on_minus.sub(&b.on_minus),
                    };
                    suite.check(comm == want, || {
                        "delta commutator identity fails on a basis quadruple".into()
                    });
                }
            }
        }
    }

    suite.finish()
}

fn unit(n: usize, i: usize) -> Vec<u8> {
    let mut v = vec![0u8; n];
    v[i] = 1;
    v
}

/// Membership in L0 without any field structure: the additive closure of
/// zeta and all delta(x, y), with actions stored as plain function
/// tables.  Works over any finite base, e.g. Z/4.
pub fn l0_contains(
    pair: &JordanPair,
    on_plus: &HashMap<FinMatrix, FinMatrix>,
    on_minus: &HashMap<FinMatrix, FinMatrix>,
) -> Result<bool> {
    type Table = Vec<(FinMatrix, FinMatrix)>;
    let table_of = |f: &dyn Fn(Sign, &FinMatrix) -> FinMatrix| -> [Table; 2] {
        SIGNS.map(|s| pair.elements(s).into_iter().map(|x| (x.clone(), f(s, &x))).collect())
    };
    let zeta = table_of(&|s, x| match s {
        Sign::Plus => x.clone(),
        Sign::Minus => pair.neg(Sign::Minus, x),
    });
    let mut gens = vec![zeta];
    for x in pair.elements(Sign::Plus) {
        for y in pair.elements(Sign::Minus) {
            gens.push(table_of(&|s, z| match s {
                Sign::Plus => pair.triple(Sign::Plus, &x, &y, z),
                Sign::Minus => pair.neg(Sign::Minus, &pair.triple(Sign::Minus, &y, &x, z)),
            }));
        }
    }
    let add = |a: &[Table; 2], b: &[Table; 2]| -> [Table; 2] {
        [0, 1].map(|idx| {
            let s = SIGNS[idx];
            a[idx]
                .iter()
                .zip(b[idx].iter())
                .map(|((x, fa), (_, fb))| (x.clone(), pair.add(s, fa, fb)))
                .collect()
        })
    };
    let key = |t: &[Table; 2]| -> Vec<FinMatrix> {
        t[0].iter().chain(t[1].iter()).map(|(_, img)| img.clone()).collect()
    };

    let mut seen: HashSet<Vec<FinMatrix>> = HashSet::new();
    let zero = table_of(&|s, _| pair.zero(s));
    let mut frontier = vec![zero.clone()];
    seen.insert(key(&zero));
    while let Some(t) = frontier.pop() {
        for g in &gens {
            let u = add(&t, g);
            if seen.insert(key(&u)) {
                frontier.push(u);
            }
        }
        if seen.len() > 1 << 16 {
            return Err(Error::Budget("L0 additive closure exceeded 65536 elements".into()));
        }
    }

    let candidate: Vec<FinMatrix> = pair
        .elements(Sign::Plus)
        .iter()
        .map(|x| {
            on_plus
                .get(x)
                .cloned()
                .ok_or_else(|| Error::Tkk(format!("candidate action undefined at {x:?}")))
        })
        .chain(pair.elements(Sign::Minus).iter().map(|y| {
            on_minus
                .get(y)
                .cloned()
                .ok_or_else(|| Error::Tkk(format!("candidate action undefined at {y:?}")))
        }))
        .collect::<Result<_>>()?;
    Ok(seen.contains(&candidate))
}

/// The matrix model for rectangular pairs: e = k e1 + k e2 + sl_N(A)
/// inside N x N matrices over A, N = rows + cols, where sl_N(A) collects
/// the matrices whose trace lies in the span of commutators.  The
/// bracket is the matrix commutator.
pub struct FreAlgebra {
    pub a: Ring,
    pub p: u32,
    pub rows: u32,
    pub cols: u32,
    pub basis: Vec<FinMatrix>,
    coords: CoordSolver,
    width: usize,
}

impl FreAlgebra {
    pub fn n(&self) -> u32 {
        self.rows + self.cols
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn flatten(&self, m: &FinMatrix) -> Vec<u8> {
        let n = self.n();
        let rank = self.a.rank();
        let mut out = vec![0u8; self.width];
        for (&(i, j), v) in &m.entries {
            for (k, &coord) in v.coords.iter().enumerate() {
                out[((i * n + j) as usize) * rank + k] = coord as u8;
            }
        }
        out
    }

    pub fn contains(&self, m: &FinMatrix) -> bool {
        m.offset == 0 && self.coords.coords(&self.flatten(m)).is_some()
    }

    pub fn element_coords(&self, m: &FinMatrix) -> Result<Vec<u8>> {
        self.coords
            .coords(&self.flatten(m))
            .ok_or_else(|| Error::Tkk(format!("{m:?} is outside the matrix model")))
    }

    pub fn bracket(&self, x: &FinMatrix, y: &FinMatrix) -> FinMatrix {
        x.mul(y).sub(&y.mul(x))
    }

    pub fn e1(&self) -> FinMatrix {
        let mut m = FinMatrix::zero(&self.a);
        for i in 0..self.rows {
            m.set_entry(i, i, self.a.one());
        }
        m
    }

    pub fn e2(&self) -> FinMatrix {
        let mut m = FinMatrix::zero(&self.a);
        for j in self.rows..self.n() {
            m.set_entry(j, j, self.a.one());
        }
        m
    }

    /// Centre basis by linear solve of [c, basis] = 0.
    pub fn centre(&self) -> Vec<FinMatrix> {
        let d = self.dim();
        let mut rows = Vec::new();
        for b in &self.basis {
            let cols: Vec<Vec<u8>> = (0..d)
                .map(|i| {
                    self.element_coords(&self.bracket(&self.basis[i], b))
                        .expect("bracket stays inside")
                })
                .collect();
            for k in 0..d {
                rows.push((0..d).map(|i| cols[i][k]).collect());
            }
        }
        nullspace(self.p, d, &rows)
            .into_iter()
            .map(|v| self.from_coords(&v))
            .collect()
    }

    pub fn from_coords(&self, v: &[u8]) -> FinMatrix {
        let mut acc = FinMatrix::zero(&self.a);
        for (b, &c) in self.basis.iter().zip(v.iter()) {
            if c != 0 {
                acc = acc.add(&scale(b, &self.a.scalar(c as u32)));
            }
        }
        acc
    }
}

/// Builds the matrix model for rect(a, rows, cols) scalars.
pub fn fre_build(a: &Ring, rows: u32, cols: u32) -> Result<FreAlgebra> {
    let p = a.characteristic();
    if !crate::ring::is_prime(p) || a.modulus() != p {
        return Err(Error::Tkk(format!(
            "matrix model needs prime-field coordinates, got {}",
            a.name()
        )));
    }
    if rows == 0 || cols == 0 {
        return Err(Error::Tkk("matrix model needs nonempty index sets".into()));
    }
    let n = rows + cols;
    let rank = a.rank();
    let width = (n * n) as usize * rank;

    // spanning set: e1, e2, then sl_N(A) generators (off-diagonal cells,
    // diagonal differences, and commutator values on the first slot)
    let mut spanning: Vec<FinMatrix> = Vec::new();
    let mut e1 = FinMatrix::zero(a);
    for i in 0..rows {
        e1.set_entry(i, i, a.one());
    }
    let mut e2 = FinMatrix::zero(a);
    for j in rows..n {
        e2.set_entry(j, j, a.one());
    }
    spanning.push(e1);
    spanning.push(e2);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                for e in 0..rank {
                    spanning.push(FinMatrix::single(a, i, j, a.basis_elt(e)));
                }
            }
        }
    }
    for k in 0..n.saturating_sub(1) {
        for e in 0..rank {
            let mut m = FinMatrix::zero(a);
            m.set_entry(k, k, a.basis_elt(e));
            m.set_entry(k + 1, k + 1, -&a.basis_elt(e));
            spanning.push(m);
        }
    }
    for e in 0..rank {
        for f in 0..rank {
            let x = a.basis_elt(e);
            let y = a.basis_elt(f);
            let comm = &(&x * &y) - &(&y * &x);
            if !comm.is_zero() {
                spanning.push(FinMatrix::single(a, 0, 0, comm));
            }
        }
    }

    let mut solver = SpanSolver::new(p, width);
    let mut basis = Vec::new();
    let mut rows_flat = Vec::new();
    let fre_stub = FreAlgebra {
        a: a.clone(),
        p,
        rows,
        cols,
        basis: Vec::new(),
        coords: CoordSolver::new(p, 1, &[vec![1u8]])?,
        width,
    };
    for m in spanning {
        let v = fre_stub.flatten(&m);
        if solver.insert(&v) {
            basis.push(m);
            rows_flat.push(v);
        }
    }
    let coords = CoordSolver::new(p, width, &rows_flat)?;
    Ok(FreAlgebra { a: a.clone(), p, rows, cols, basis, coords, width })
}

/// The surjection Psi from the matrix model onto tkk of the rectangular
/// pair: a block matrix (a b / c d) goes to b ⊕ Delta(a, d) ⊕ (-c),
/// where Delta(a, d) acts as x -> ax - xd on V+ and y -> dy - ya on V-.
pub fn psi(fre: &FreAlgebra, alg: &TkkAlgebra, m: &FinMatrix) -> Result<Vec<u8>> {
    let rows = fre.rows;
    let n = fre.n();
    let a = &fre.a;
    let block = |r0: u32, r1: u32, c0: u32, c1: u32| -> FinMatrix {
        let mut out = FinMatrix::zero(a);
        for (&(i, j), v) in &m.entries {
            if i >= r0 && i < r1 && j >= c0 && j < c1 {
                out.set_entry(i - r0, j - c0, v.clone());
            }
        }
        out
    };
    let b = block(0, rows, rows, n);
    let c = block(rows, n, 0, rows);
    let a_blk = block(0, rows, 0, rows);
    let d_blk = block(rows, n, rows, n);

    let dp = alg.basis_plus.len();
    let dm = alg.basis_minus.len();
    let mut on_plus = DenseMat::zero(alg.p, dp, dp);
    for (j, x) in alg.basis_plus.iter().enumerate() {
        let img = a_blk.mul(x).sub(&x.mul(&d_blk));
        for (i, &cc) in alg.pair_coords(Sign::Plus, &img)?.iter().enumerate() {
            on_plus.set(i, j, cc as u32);
        }
    }
    let mut on_minus = DenseMat::zero(alg.p, dm, dm);
    for (j, y) in alg.basis_minus.iter().enumerate() {
        let img = d_blk.mul(y).sub(&y.mul(&a_blk));
        for (i, &cc) in alg.pair_coords(Sign::Minus, &img)?.iter().enumerate() {
            on_minus.set(i, j, cc as u32);
        }
    }

    let mut out = alg.embed(Sign::Plus, &b)?;
    let zero = alg.embed_zero(&EndoPair { on_plus, on_minus })?;
    let minus = alg.embed(Sign::Minus, &c.neg())?;
    for i in 0..out.len() {
        out[i] = ((out[i] as u32 + zero[i] as u32 + minus[i] as u32) % alg.p) as u8;
    }
    Ok(out)
}

/// Checks Psi end to end for rect(a, rows, cols): linearity, bracket
/// preservation, surjectivity, kernel = centre of the model, and the
/// dimension bookkeeping dim e - dim centre = dim tkk.
pub fn verify_psi(a: &Ring, rows: u32, cols: u32) -> Result<SuiteReport> {
    let fre = fre_build(a, rows, cols)?;
    let pair = JordanPair::rect(a, rows, cols);
    let alg = tkk_build(&pair)?;
    let mut suite = SuiteReport::start(format!(
        "Psi: matrix model -> tkk(rect({}, {rows}, {cols}))",
        a.name()
    ));
    let p = fre.p;
    let d = fre.dim();
    let n = alg.dim();
    suite.counter("dim matrix model", d as i64);
    suite.counter("dim tkk", n as i64);

    let images: Vec<Vec<u8>> = fre
        .basis
        .iter()
        .map(|b| psi(&fre, &alg, b))
        .collect::<Result<_>>()?;

    // linearity on basis pairs
    for (i, x) in fre.basis.iter().enumerate() {
        for (j, y) in fre.basis.iter().enumerate() {
            let sum = psi(&fre, &alg, &x.add(y))?;
            let want: Vec<u8> = images[i]
                .iter()
                .zip(images[j].iter())
                .map(|(&u, &v)| ((u as u32 + v as u32) % p) as u8)
                .collect();
            suite.check(sum == want, || format!("Psi not additive on basis pair ({i}, {j})"));
        }
    }

    // bracket preservation
    for (i, x) in fre.basis.iter().enumerate() {
        for (j, y) in fre.basis.iter().enumerate() {
            let lhs = psi(&fre, &alg, &fre.bracket(x, y))?;
            let rhs = alg.bracket(&images[i], &images[j]);
            suite.check(lhs == rhs, || {
                format!("Psi does not carry [b{i}, b{j}] to the tkk bracket")
            });
        }
    }

    // surjectivity
    let mut span = SpanSolver::new(p, n);
    for img in &images {
        span.insert(img);
    }
    suite.counter("rank of Psi", span.rank() as i64);
    suite.check(span.rank() == n, || {
        format!("Psi image has rank {} of {}", span.rank(), n)
    });

    // kernel equals the centre of the model
    let mut rows_mat = Vec::new();
    for k in 0..n {
        rows_mat.push((0..d).map(|i| images[i][k]).collect::<Vec<u8>>());
    }
    let kernel = nullspace(p, d, &rows_mat);
    let centre = fre.centre();
    suite.counter("dim kernel", kernel.len() as i64);
    suite.counter("dim centre", centre.len() as i64);
    let mut kernel_span = SpanSolver::new(p, d);
    for v in &kernel {
        kernel_span.insert(v);
    }
    let centre_inside = centre.iter().all(|z| {
        fre.element_coords(z).map(|v| kernel_span.contains(&v)).unwrap_or(false)
    });
    suite.check(kernel.len() == centre.len() && centre_inside, || {
        "Ker Psi differs from the centre of the matrix model".into()
    });
    suite.check(d - kernel.len() == n, || {
        format!("dimension bookkeeping fails: {d} - {} != {n}", kernel.len())
    });

    // Delta(e1) = zeta = -Delta(e2) as degree-0 actions
    let zeta = alg.embed_zero(&alg.zeta()).expect("zeta spans first");
    let pe1 = psi(&fre, &alg, &fre.e1())?;
    let pe2 = psi(&fre, &alg, &fre.e2())?;
    suite.check(pe1 == zeta, || "Psi(e1) differs from zeta".into());
    let neg_pe2: Vec<u8> = pe2.iter().map(|&c| ((p - c as u32) % p) as u8).collect();
    suite.check(neg_pe2 == zeta, || "Psi(e2) differs from -zeta".into());

    Ok(suite.finish())
}
