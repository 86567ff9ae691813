//! Jordan pairs over finite rings.
//!
//! A pair here is a pair of finite modules (V+, V-) with quadratic maps
//! Q: V^s -> Hom(V^-s, V^s) subject to the three fundamental identities
//! (checked by [`verify_jp`], not assumed). Elements of both sides are
//! carried as plain finitely supported matrices with offset 0, so the
//! matrix kinds (full, rectangular, hermitian, alternating) share one
//! multiplication while quadratic-form pairs interpret columns.

use std::collections::{HashMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::matrix::{all_rect_matrices, FinMatrix};
use crate::report::SuiteReport;
use crate::ring::{Ring, RingElement};
use crate::Result;

/// Side of a pair: V+ or V-.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
    pub fn idx(self) -> usize {
        match self {
            Sign::Plus => 0,
            Sign::Minus => 1,
        }
    }
    pub fn label(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

pub const SIGNS: [Sign; 2] = [Sign::Plus, Sign::Minus];

#[derive(Clone, Debug)]
pub enum PairKind {
    /// V+ = V- = A with Q_x y = xyx.
    Full { a: Ring },
    /// V+ = rows x cols matrices, V- = cols x rows, Q_x y = xyx.
    Rect { a: Ring, rows: u32, cols: u32 },
    /// Fixed points of the conjugate transpose in n x n matrices.
    Hermitian { a: Ring, n: u32 },
    /// Skew matrices with zero diagonal, Q_x y = xyx.
    Alternating { k: Ring, n: u32 },
    /// Column vectors with Q_x y = b(x,y)x - q(x)y for the form
    /// q(x) = sum g_ij x_i x_j.
    QuadForm { k: Ring, gram: Vec<Vec<RingElement>>, slip: bool },
    /// A subset of a parent pair closed under addition and Q.
    Sub(Box<SubPair>),
    /// Parent modulo an ideal, elements carried by canonical coset
    /// representatives.
    Quotient(Box<QuotientPair>),
}

#[derive(Clone, Debug)]
pub struct SubPair {
    pub parent: JordanPair,
    pub members: [Vec<FinMatrix>; 2],
    index: [HashSet<FinMatrix>; 2],
}

#[derive(Clone, Debug)]
pub struct QuotientPair {
    pub parent: JordanPair,
    pub ideal: [Vec<FinMatrix>; 2],
    /// element of the parent -> its coset representative
    rep: [HashMap<FinMatrix, FinMatrix>; 2],
    reps: [Vec<FinMatrix>; 2],
}

#[derive(Clone, Debug)]
pub struct JordanPair {
    pub name: String,
    pub kind: PairKind,
}

impl JordanPair {
    pub fn full(a: &Ring) -> JordanPair {
        JordanPair { name: format!("full({})", a.name()), kind: PairKind::Full { a: a.clone() } }
    }

    pub fn rect(a: &Ring, rows: u32, cols: u32) -> JordanPair {
        JordanPair {
            name: format!("rect({},{rows},{cols})", a.name()),
            kind: PairKind::Rect { a: a.clone(), rows, cols },
        }
    }

    /// Hermitian matrices for the ring involution; a commutative base
    /// without a declared involution gets the identity attached.
    pub fn hermitian(a: &Ring, n: u32) -> Result<JordanPair> {
        let a = if a.has_involution() {
            a.clone()
        } else if a.is_commutative() {
            let rank = a.rank();
            let rows: Vec<Vec<u32>> = (0..rank)
                .map(|i| (0..rank).map(|j| u32::from(i == j)).collect())
                .collect();
            a.with_involution(rows)?
        } else {
            return Err(Error::Jordan(format!(
                "hermitian pair over {} needs an involution",
                a.name()
            )));
        };
        Ok(JordanPair {
            name: format!("her({},{n})", a.name()),
            kind: PairKind::Hermitian { a, n },
        })
    }

    pub fn alternating(k: &Ring, n: u32) -> Result<JordanPair> {
        if !k.is_commutative() {
            return Err(Error::Jordan("alternating pair needs a commutative base".into()));
        }
        Ok(JordanPair {
            name: format!("alt({},{n})", k.name()),
            kind: PairKind::Alternating { k: k.clone(), n },
        })
    }

    /// Quadratic-form pair from a Gram matrix of prime-ring scalars:
    /// q(x) = sum_{i,j} gram[i][j] x_i x_j.
    pub fn quad_form(k: &Ring, gram: &[Vec<u32>]) -> Result<JordanPair> {
        Self::quad_form_inner(k, gram, false)
    }

    /// Same module, but the bilinearization is computed with a sign slipped:
    /// b(x,y) = q(x+y) - q(x) + q(y). Deliberately wrong away from
    /// characteristic 2; used as a negative control on the verifier.
    pub fn quad_form_with_wrong_polarization(k: &Ring, gram: &[Vec<u32>]) -> Result<JordanPair> {
        Self::quad_form_inner(k, gram, true)
    }

    fn quad_form_inner(k: &Ring, gram: &[Vec<u32>], slip: bool) -> Result<JordanPair> {
        if !k.is_commutative() {
            return Err(Error::Jordan("quadratic-form pair needs a commutative base".into()));
        }
        let n = gram.len();
        if gram.iter().any(|row| row.len() != n) {
            return Err(Error::Shape("Gram matrix must be square".into()));
        }
        let gram: Vec<Vec<RingElement>> = gram
            .iter()
            .map(|row| row.iter().map(|&c| k.scalar(c)).collect())
            .collect();
        Ok(JordanPair {
            name: format!("qf({},{n}){}", k.name(), if slip { " slipped" } else { "" }),
            kind: PairKind::QuadForm { k: k.clone(), gram, slip },
        })
    }

    /// The split form q(x) = x0 x1 + x2^2 on k^3.
    pub fn hyperbolic_quad(k: &Ring) -> Result<JordanPair> {
        Self::quad_form(k, &[vec![0, 1, 0], vec![0, 0, 0], vec![0, 0, 1]])
    }

    /// Restriction to subsets closed under addition and both Q maps.
    pub fn sub_pair(
        &self,
        plus: Vec<FinMatrix>,
        minus: Vec<FinMatrix>,
        name: &str,
    ) -> Result<JordanPair> {
        let members = [plus, minus];
        for s in SIGNS {
            let set: HashSet<&FinMatrix> = members[s.idx()].iter().collect();
            if !set.contains(&self.zero(s)) {
                return Err(Error::Jordan(format!("sub-pair misses 0 on V{}", s.label())));
            }
            for x in &members[s.idx()] {
                if !self.contains(s, x) {
                    return Err(Error::Jordan(format!("{x:?} not in parent V{}", s.label())));
                }
                if !set.contains(&self.neg(s, x)) {
                    return Err(Error::Jordan(format!("sub-pair not closed under -: {x:?}")));
                }
                for y in &members[s.idx()] {
                    if !set.contains(&self.add(s, x, y)) {
                        return Err(Error::Jordan(format!(
                            "sub-pair not closed under +: {x:?}, {y:?}"
                        )));
                    }
                }
                for y in &members[s.flip().idx()] {
                    if !set.contains(&self.q(s, x, y)) {
                        return Err(Error::Jordan(format!(
                            "sub-pair not closed under Q: Q({x:?}){y:?}"
                        )));
                    }
                }
            }
        }
        let index = [
            members[0].iter().cloned().collect(),
            members[1].iter().cloned().collect(),
        ];
        Ok(JordanPair {
            name: name.to_string(),
            kind: PairKind::Sub(Box::new(SubPair { parent: self.clone(), members, index })),
        })
    }

    /// Quotient by an ideal, with first-seen coset representatives.
    pub fn quotient(&self, ideal_plus: Vec<FinMatrix>, ideal_minus: Vec<FinMatrix>) -> Result<JordanPair> {
        let ideal = [ideal_plus, ideal_minus];
        let rep_of_ideal = verify_ideal(self, &ideal);
        if !rep_of_ideal.pass {
            return Err(Error::Jordan(format!(
                "not an ideal: {}",
                rep_of_ideal.witnesses.first().cloned().unwrap_or_default()
            )));
        }
        let mut rep: [HashMap<FinMatrix, FinMatrix>; 2] = [HashMap::new(), HashMap::new()];
        let mut reps: [Vec<FinMatrix>; 2] = [Vec::new(), Vec::new()];
        for s in SIGNS {
            for x in self.elements(s) {
                if rep[s.idx()].contains_key(&x) {
                    continue;
                }
                reps[s.idx()].push(x.clone());
                for i in &ideal[s.idx()] {
                    rep[s.idx()].insert(self.add(s, &x, i), x.clone());
                }
            }
        }
        Ok(JordanPair {
            name: format!("{} / ideal", self.name),
            kind: PairKind::Quotient(Box::new(QuotientPair {
                parent: self.clone(),
                ideal,
                rep,
                reps,
            })),
        })
    }

    pub fn base(&self) -> &Ring {
        match &self.kind {
            PairKind::Full { a } => a,
            PairKind::Rect { a, .. } => a,
            PairKind::Hermitian { a, .. } => a,
            PairKind::Alternating { k, .. } => k,
            PairKind::QuadForm { k, .. } => k,
            PairKind::Sub(sp) => sp.parent.base(),
            PairKind::Quotient(qp) => qp.parent.base(),
        }
    }

    /// Matrix shape of V^s elements.
    pub fn shape(&self, s: Sign) -> (u32, u32) {
        match &self.kind {
            PairKind::Full { .. } => (1, 1),
            PairKind::Rect { rows, cols, .. } => match s {
                Sign::Plus => (*rows, *cols),
                Sign::Minus => (*cols, *rows),
            },
            PairKind::Hermitian { n, .. } | PairKind::Alternating { n, .. } => (*n, *n),
            PairKind::QuadForm { gram, .. } => (gram.len() as u32, 1),
            PairKind::Sub(sp) => sp.parent.shape(s),
            PairKind::Quotient(qp) => qp.parent.shape(s),
        }
    }

    pub fn zero(&self, s: Sign) -> FinMatrix {
        self.canon(s, FinMatrix::zero(self.base()))
    }

    pub fn add(&self, s: Sign, x: &FinMatrix, y: &FinMatrix) -> FinMatrix {
        self.canon(s, x.add(y))
    }

    pub fn neg(&self, s: Sign, x: &FinMatrix) -> FinMatrix {
        self.canon(s, x.neg())
    }

    /// Canonical form: coset representative for quotients, identity
    /// otherwise.
    pub fn canon(&self, s: Sign, x: FinMatrix) -> FinMatrix {
        match &self.kind {
            PairKind::Quotient(qp) => qp.rep[s.idx()]
                .get(&x)
                .cloned()
                .unwrap_or_else(|| panic!("{x:?} not in the quotient domain")),
            _ => x,
        }
    }

    /// Membership in V^s.
    pub fn contains(&self, s: Sign, x: &FinMatrix) -> bool {
        if x.offset != 0 || x.ring != *self.base() {
            return false;
        }
        let (r, c) = self.shape(s);
        if x.entries.keys().any(|&(i, j)| i >= r || j >= c) {
            return false;
        }
        match &self.kind {
            PairKind::Full { .. } | PairKind::Rect { .. } | PairKind::QuadForm { .. } => true,
            PairKind::Hermitian { .. } => {
                x.conj_transpose().map(|t| t == *x).unwrap_or(false)
            }
            PairKind::Alternating { n, .. } => {
                (0..*n).all(|i| x.entry(i, i).is_zero())
                    && (0..*n).all(|i| {
                        (0..*n).all(|j| x.entry(i, j) == -&x.entry(j, i) || i == j)
                    })
            }
            PairKind::Sub(sp) => sp.index[s.idx()].contains(x),
            PairKind::Quotient(qp) => {
                qp.rep[s.idx()].get(x).map(|r| r == x).unwrap_or(false)
            }
        }
    }

    /// Q_x y for x in V^s, y in V^-s.
    pub fn q(&self, s: Sign, x: &FinMatrix, y: &FinMatrix) -> FinMatrix {
        match &self.kind {
            PairKind::Full { .. }
            | PairKind::Rect { .. }
            | PairKind::Hermitian { .. }
            | PairKind::Alternating { .. } => x.mul(y).mul(x),
            PairKind::QuadForm { .. } => {
                let bxy = self.bform(x, y);
                let qx = self.qform(x);
                scale(x, &bxy).sub(&scale(y, &qx))
            }
            PairKind::Sub(sp) => sp.parent.q(s, x, y),
            PairKind::Quotient(qp) => {
                let raw = qp.parent.q(s, x, y);
                self.canon(s, raw)
            }
        }
    }

    /// Q_{x,z} y = Q_{x+z} y - Q_x y - Q_z y.
    pub fn q_mix(&self, s: Sign, x: &FinMatrix, z: &FinMatrix, y: &FinMatrix) -> FinMatrix {
        let xz = self.add(s, x, z);
        let a = self.q(s, &xz, y);
        let b = self.q(s, x, y);
        let c = self.q(s, z, y);
        self.add(s, &self.add(s, &a, &self.neg(s, &b)), &self.neg(s, &c))
    }

    /// Triple product {x y z} = Q_{x,z} y (x, z in V^s, y in V^-s).
    pub fn triple(&self, s: Sign, x: &FinMatrix, y: &FinMatrix, z: &FinMatrix) -> FinMatrix {
        self.q_mix(s, x, z, y)
    }

    /// Bergmann operator B(u,v)z = z - {u v z} + Q_u Q_v z
    /// (u, z in V^s, v in V^-s).
    pub fn bergmann(&self, s: Sign, u: &FinMatrix, v: &FinMatrix, z: &FinMatrix) -> FinMatrix {
        let d = self.triple(s, u, v, z);
        let qq = self.q(s, u, &self.q(s.flip(), v, z));
        self.add(s, &self.add(s, z, &self.neg(s, &d)), &qq)
    }

    /// The quadratic form of a QuadForm pair.
    pub(crate) fn qform(&self, x: &FinMatrix) -> RingElement {
        let PairKind::QuadForm { k, gram, .. } = &self.kind else {
            unreachable!("qform on a non-quadratic pair")
        };
        let n = gram.len() as u32;
        let mut acc = k.zero();
        for i in 0..n {
            let xi = x.entry(i, 0);
            if xi.is_zero() {
                continue;
            }
            for j in 0..n {
                let g = &gram[i as usize][j as usize];
                if g.is_zero() {
                    continue;
                }
                acc = &acc + &(&(g * &xi) * &x.entry(j, 0));
            }
        }
        acc
    }

    /// b(x,y) = q(x+y) - q(x) - q(y), or the slipped variant.
    pub(crate) fn bform(&self, x: &FinMatrix, y: &FinMatrix) -> RingElement {
        let PairKind::QuadForm { slip, .. } = &self.kind else {
            unreachable!("bform on a non-quadratic pair")
        };
        let qs = self.qform(&x.add(y));
        let qx = self.qform(x);
        let qy = self.qform(y);
        if *slip {
            &(&qs - &qx) + &qy
        } else {
            &(&qs - &qx) - &qy
        }
    }

    /// All elements of V^s, zero first, in a deterministic order.
    pub fn elements(&self, s: Sign) -> Vec<FinMatrix> {
        match &self.kind {
            PairKind::Full { a } => a
                .elements()
                .into_iter()
                .map(|e| FinMatrix::single(a, 0, 0, e))
                .collect(),
            PairKind::Rect { a, rows, cols } => match s {
                Sign::Plus => all_rect_matrices(a, *rows, *cols),
                Sign::Minus => all_rect_matrices(a, *cols, *rows),
            },
            PairKind::Hermitian { a, n } => {
                // diagonal from the fixed ring, strict upper triangle free,
                // lower triangle forced by the involution
                let fixed: Vec<RingElement> = a
                    .elements()
                    .into_iter()
                    .filter(|e| e.involute().map(|f| f == *e).unwrap_or(false))
                    .collect();
                let all = a.elements();
                let mut out = vec![FinMatrix::zero(a)];
                for i in 0..*n {
                    out = out
                        .into_iter()
                        .flat_map(|m| {
                            fixed.iter().map(move |e| {
                                let mut m2 = m.clone();
                                m2.set_entry(i, i, e.clone());
                                m2
                            })
                        })
                        .collect();
                }
                for i in 0..*n {
                    for j in (i + 1)..*n {
                        out = out
                            .into_iter()
                            .flat_map(|m| {
                                all.iter().map(move |e| {
                                    let mut m2 = m.clone();
                                    m2.set_entry(i, j, e.clone());
                                    m2.set_entry(j, i, e.involute().expect("involution"));
                                    m2
                                })
                            })
                            .collect();
                    }
                }
                out
            }
            PairKind::Alternating { k, n } => {
                let all = k.elements();
                let mut out = vec![FinMatrix::zero(k)];
                for i in 0..*n {
                    for j in (i + 1)..*n {
                        out = out
                            .into_iter()
                            .flat_map(|m| {
                                all.iter().map(move |e| {
                                    let mut m2 = m.clone();
                                    m2.set_entry(i, j, e.clone());
                                    m2.set_entry(j, i, -e);
                                    m2
                                })
                            })
                            .collect();
                    }
                }
                out
            }
            PairKind::QuadForm { k, gram, .. } => all_rect_matrices(k, gram.len() as u32, 1),
            PairKind::Sub(sp) => sp.members[s.idx()].clone(),
            PairKind::Quotient(qp) => qp.reps[s.idx()].clone(),
        }
    }

    pub fn size(&self, s: Sign) -> usize {
        self.elements(s).len()
    }
}

/// Entrywise scalar multiple (commutative base, offset-free matrices).
pub fn scale(m: &FinMatrix, c: &RingElement) -> FinMatrix {
    assert_eq!(m.offset, 0, "scale is for pair elements");
    let mut out = FinMatrix::zero(&m.ring);
    for (&(i, j), e) in &m.entries {
        out.set_entry(i, j, c * e);
    }
    out
}

/// Budget for the identity suites: exhaust when the instance count fits,
/// otherwise draw seeded samples.
#[derive(Debug, Clone, Copy)]
pub struct JpOptions {
    pub max_exhaustive: u64,
    pub samples: u64,
    pub seed: u64,
}

impl Default for JpOptions {
    fn default() -> Self {
        JpOptions { max_exhaustive: 60_000, samples: 4_000, seed: 0 }
    }
}

/// Runs `f` over the full index product when small enough, else over
/// seeded random index tuples. Returns (instances, exhaustive).
fn for_tuples(
    sizes: &[usize],
    opts: &JpOptions,
    rng: &mut ChaCha8Rng,
    mut f: impl FnMut(&[usize]),
) -> (u64, bool) {
    let total: u64 = sizes.iter().map(|&s| s as u64).product();
    if total <= opts.max_exhaustive {
        let mut idx = vec![0usize; sizes.len()];
        loop {
            f(&idx);
            let mut k = sizes.len();
            loop {
                if k == 0 {
                    return (total, true);
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < sizes[k] {
                    break;
                }
                idx[k] = 0;
            }
        }
    }
    let mut idx = vec![0usize; sizes.len()];
    for _ in 0..opts.samples {
        for (k, &s) in sizes.iter().enumerate() {
            idx[k] = rng.gen_range(0..s);
        }
        f(&idx);
    }
    (opts.samples, false)
}

/// The fundamental identities:
///   JP1  {x, y, Q_x v}      = Q_x {y, x, v}
///   JP2  {Q_x y, y, z}      = {x, Q_y x, z}
///   JP3  Q_{Q_x y} v        = Q_x Q_y Q_x v
/// plus the linearization of JP1 in x:
///   {z, y, Q_x v} + {x, y, Q_{x,z} v} = Q_{x,z}{y, x, v} + Q_x {y, z, v}
pub fn verify_jp(pair: &JordanPair, opts: &JpOptions) -> SuiteReport {
    let mut suite = SuiteReport::start(format!("Jordan pair identities {}", pair.name));
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let elems = [pair.elements(Sign::Plus), pair.elements(Sign::Minus)];
    suite.counter("size+", elems[0].len() as i64);
    suite.counter("size-", elems[1].len() as i64);
    for s in SIGNS {
        let vs = &elems[s.idx()];
        let vo = &elems[s.flip().idx()];
        let t = s.flip();

        let (n, exh) = for_tuples(&[vs.len(), vo.len(), vo.len()], opts, &mut rng, |ix| {
            let (x, y, v) = (&vs[ix[0]], &vo[ix[1]], &vo[ix[2]]);
            let left = pair.triple(s, x, y, &pair.q(s, x, v));
            let right = pair.q(s, x, &pair.triple(t, y, x, v));
            suite.check(left == right, || {
                format!("JP1 fails on V{}: x={x:?} y={y:?} v={v:?}", s.label())
            });
        });
        suite.counter(&format!("JP1{} instances", s.label()), n as i64);
        if !exh {
            suite.note(format!("JP1{} sampled", s.label()));
        }

        let (n, exh) = for_tuples(&[vs.len(), vo.len(), vs.len()], opts, &mut rng, |ix| {
            let (x, y, z) = (&vs[ix[0]], &vo[ix[1]], &vs[ix[2]]);
            let left = pair.triple(s, &pair.q(s, x, y), y, z);
            let right = pair.triple(s, x, &pair.q(t, y, x), z);
            suite.check(left == right, || {
                format!("JP2 fails on V{}: x={x:?} y={y:?} z={z:?}", s.label())
            });
        });
        suite.counter(&format!("JP2{} instances", s.label()), n as i64);
        if !exh {
            suite.note(format!("JP2{} sampled", s.label()));
        }

        let (n, exh) = for_tuples(&[vs.len(), vo.len(), vo.len()], opts, &mut rng, |ix| {
            let (x, y, v) = (&vs[ix[0]], &vo[ix[1]], &vo[ix[2]]);
            let left = pair.q(s, &pair.q(s, x, y), v);
            let right = pair.q(s, x, &pair.q(t, y, &pair.q(s, x, v)));
            suite.check(left == right, || {
                format!("JP3 fails on V{}: x={x:?} y={y:?} v={v:?}", s.label())
            });
        });
        suite.counter(&format!("JP3{} instances", s.label()), n as i64);
        if !exh {
            suite.note(format!("JP3{} sampled", s.label()));
        }

        let (n, exh) = for_tuples(
            &[vs.len(), vs.len(), vo.len(), vo.len()],
            opts,
            &mut rng,
            |ix| {
                let (x, z, y, v) = (&vs[ix[0]], &vs[ix[1]], &vo[ix[2]], &vo[ix[3]]);
                let left = pair.add(
                    s,
                    &pair.triple(s, z, y, &pair.q(s, x, v)),
                    &pair.triple(s, x, y, &pair.q_mix(s, x, z, v)),
                );
                let right = pair.add(
                    s,
                    &pair.q_mix(s, x, z, &pair.triple(t, y, x, v)),
                    &pair.q(s, x, &pair.triple(t, y, z, v)),
                );
                suite.check(left == right, || {
                    format!(
                        "JP1 linearization fails on V{}: x={x:?} z={z:?} y={y:?} v={v:?}",
                        s.label()
                    )
                });
            },
        );
        suite.counter(&format!("JP1lin{} instances", s.label()), n as i64);
        if !exh {
            suite.note(format!("JP1lin{} sampled", s.label()));
        }

        // quadratic-map contract: Q_{x,z} y is additive in x (hence in z
        // by symmetry of the polarization)
        let (n, exh) = for_tuples(
            &[vs.len(), vs.len(), vs.len(), vo.len()],
            opts,
            &mut rng,
            |ix| {
                let (x, xp, z, y) = (&vs[ix[0]], &vs[ix[1]], &vs[ix[2]], &vo[ix[3]]);
                let left = pair.q_mix(s, &pair.add(s, x, xp), z, y);
                let right = pair.add(s, &pair.q_mix(s, x, z, y), &pair.q_mix(s, xp, z, y));
                suite.check(left == right, || {
                    format!(
                        "Q_(x,z) not bilinear on V{}: x={x:?} x'={xp:?} z={z:?} y={y:?}",
                        s.label()
                    )
                });
            },
        );
        suite.counter(&format!("Qmix{} instances", s.label()), n as i64);
        if !exh {
            suite.note(format!("Qmix{} sampled", s.label()));
        }
    }
    suite.finish()
}

/// An idempotent: Q(e+)e- = e+ and Q(e-)e+ = e-.
#[derive(Clone, Debug)]
pub struct Idempotent {
    pub plus: FinMatrix,
    pub minus: FinMatrix,
}

impl Idempotent {
    pub fn new(pair: &JordanPair, plus: FinMatrix, minus: FinMatrix) -> Result<Idempotent> {
        let e = Idempotent { plus, minus };
        if is_idempotent(pair, &e) {
            Ok(e)
        } else {
            Err(Error::NotIdempotent)
        }
    }

    pub fn part(&self, s: Sign) -> &FinMatrix {
        match s {
            Sign::Plus => &self.plus,
            Sign::Minus => &self.minus,
        }
    }
}

pub fn is_idempotent(pair: &JordanPair, e: &Idempotent) -> bool {
    pair.contains(Sign::Plus, &e.plus)
        && pair.contains(Sign::Minus, &e.minus)
        && pair.q(Sign::Plus, &e.plus, &e.minus) == e.plus
        && pair.q(Sign::Minus, &e.minus, &e.plus) == e.minus
}

/// Membership of x in the i-th Peirce space of V^s relative to e,
/// by the same operator predicates `peirce_parts` uses.  Any i
/// outside {0, 1, 2} has an empty Peirce space.
pub fn in_peirce(pair: &JordanPair, e: &Idempotent, i: i64, s: Sign, x: &FinMatrix) -> bool {
    let es = e.part(s);
    let eo = e.part(s.flip());
    match i {
        2 => pair.q(s, es, &pair.q(s.flip(), eo, x)) == *x,
        1 => pair.triple(s, es, eo, x) == *x,
        0 => {
            pair.q(s.flip(), eo, x) == pair.zero(s.flip())
                && pair.triple(s, es, eo, x) == pair.zero(s)
        }
        _ => false,
    }
}

/// Peirce parts of V^s relative to an idempotent, by membership predicate:
///   V_2 = { x : Q(e^s) Q(e^-s) x = x }
///   V_1 = { x : {e^s, e^-s, x} = x }
///   V_0 = { x : Q(e^-s) x = 0 and {e^s, e^-s, x} = 0 }
/// The predicates characterize the honest Peirce spaces in every
/// characteristic, including 2, where eigenvalue bookkeeping breaks down.
pub fn peirce_parts(pair: &JordanPair, e: &Idempotent) -> Result<[[Vec<FinMatrix>; 3]; 2]> {
    if !is_idempotent(pair, e) {
        return Err(Error::NotIdempotent);
    }
    let mut parts: [[Vec<FinMatrix>; 3]; 2] = Default::default();
    for s in SIGNS {
        let es = e.part(s);
        let eo = e.part(s.flip());
        for x in pair.elements(s) {
            let qq = pair.q(s, es, &pair.q(s.flip(), eo, &x));
            let d = pair.triple(s, es, eo, &x);
            let qo = pair.q(s.flip(), eo, &x);
            // 0 satisfies all three; a nonzero overlap would break the
            // direct-sum check downstream, so push independently
            if qq == x {
                parts[s.idx()][2].push(x.clone());
            }
            if d == x {
                parts[s.idx()][1].push(x.clone());
            }
            if qo == pair.zero(s.flip()) && d == pair.zero(s) {
                parts[s.idx()][0].push(x);
            }
        }
    }
    Ok(parts)
}

/// Direct-sum and multiplication-rule checks for the Peirce parts:
/// the sum map V_2 x V_1 x V_0 -> V is bijective, Q(V_i)V_j lands in
/// V_{2i-j} and {V_i, V_j, V_k} lands in V_{i-j+k} (zero out of range).
pub fn verify_peirce(pair: &JordanPair, e: &Idempotent) -> Result<SuiteReport> {
    let parts = peirce_parts(pair, e)?;
    let mut suite = SuiteReport::start(format!("Peirce decomposition {}", pair.name));
    for s in SIGNS {
        let p = &parts[s.idx()];
        suite.counter(&format!("size V{}_2", s.label()), p[2].len() as i64);
        suite.counter(&format!("size V{}_1", s.label()), p[1].len() as i64);
        suite.counter(&format!("size V{}_0", s.label()), p[0].len() as i64);

        // direct sum: all triple sums distinct, covering V exactly
        let mut seen = HashSet::new();
        for x2 in &p[2] {
            for x1 in &p[1] {
                for x0 in &p[0] {
                    let sum = pair.add(s, &pair.add(s, x2, x1), x0);
                    suite.check(seen.insert(sum), || {
                        format!("sum collision in V{}: {x2:?}+{x1:?}+{x0:?}", s.label())
                    });
                }
            }
        }
        suite.check(seen.len() == pair.size(s), || {
            format!(
                "V{} is not the direct sum of its Peirce parts ({} of {})",
                s.label(),
                seen.len(),
                pair.size(s)
            )
        });

        // projection operators: E2 = Q(e)Q(e'), E1 = D - 2 E2, E0 = B(e,e');
        // idempotent and pairwise orthogonal in every characteristic
        let es = e.part(s);
        let eo = e.part(s.flip());
        let proj = |i: usize, x: &FinMatrix| -> FinMatrix {
            let qq = pair.q(s, es, &pair.q(s.flip(), eo, x));
            match i {
                2 => qq,
                1 => {
                    let d = pair.triple(s, es, eo, x);
                    pair.add(s, &d, &pair.neg(s, &pair.add(s, &qq, &qq)))
                }
                _ => pair.bergmann(s, es, eo, x),
            }
        };
        for x in pair.elements(s) {
            for i in 0..3 {
                for j in 0..3 {
                    let got = proj(i, &proj(j, &x));
                    let want = if i == j { proj(i, &x) } else { pair.zero(s) };
                    suite.check(got == want, || {
                        format!("E{i} E{j} != {} at {x:?} on V{}",
                            if i == j { "E" } else { "0" }, s.label())
                    });
                }
            }
        }

        // membership tables for the rules
        let member: Vec<HashSet<&FinMatrix>> =
            (0..3).map(|i| p[i].iter().collect()).collect();
        let in_part = |i: i32, v: &FinMatrix| -> bool {
            if (0..3).contains(&i) {
                member[i as usize].contains(v)
            } else {
                *v == pair.zero(s)
            }
        };
        let q = &parts[s.flip().idx()];
        for (i, pi) in p.iter().enumerate() {
            for (j, qj) in q.iter().enumerate() {
                for x in pi {
                    for y in qj {
                        let v = pair.q(s, x, y);
                        let target = 2 * i as i32 - j as i32;
                        suite.check(in_part(target, &v), || {
                            format!(
                                "Q(V{}_{i})V{}_{j} escapes V_{target}: Q({x:?}){y:?} = {v:?}",
                                s.label(),
                                s.flip().label()
                            )
                        });
                    }
                }
            }
        }
        for (i, pi) in p.iter().enumerate() {
            for (j, qj) in q.iter().enumerate() {
                for (k, pk) in p.iter().enumerate() {
                    for x in pi {
                        for y in qj {
                            for z in pk {
                                let v = pair.triple(s, x, y, z);
                                let target = i as i32 - j as i32 + k as i32;
                                suite.check(in_part(target, &v), || {
                                    format!(
                                        "{{V_{i} V_{j} V_{k}}} escapes V_{target} on V{}: \
                                         {{{x:?},{y:?},{z:?}}} = {v:?}",
                                        s.label()
                                    )
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(suite.finish())
}

/// Ideal test: additive subgroups with Q(I)V, Q(V)I and {I, V, V} inside I.
pub fn verify_ideal(pair: &JordanPair, ideal: &[Vec<FinMatrix>; 2]) -> SuiteReport {
    let mut suite = SuiteReport::start(format!("ideal test in {}", pair.name));
    for s in SIGNS {
        let is: HashSet<&FinMatrix> = ideal[s.idx()].iter().collect();
        let io = &ideal[s.flip().idx()];
        let vs = pair.elements(s);
        let vo = pair.elements(s.flip());
        suite.check(is.contains(&pair.zero(s)), || format!("0 missing on I{}", s.label()));
        for x in &ideal[s.idx()] {
            suite.check(pair.contains(s, x), || format!("{x:?} outside V{}", s.label()));
            suite.check(is.contains(&pair.neg(s, x)), || format!("-{x:?} escapes I"));
            for y in &ideal[s.idx()] {
                suite.check(is.contains(&pair.add(s, x, y)), || {
                    format!("{x:?}+{y:?} escapes I")
                });
            }
            // Q(I^s) V^-s
            for v in &vo {
                suite.check(is.contains(&pair.q(s, x, v)), || {
                    format!("Q({x:?}){v:?} escapes I{}", s.label())
                });
            }
            // {I^s, V^-s, V^s}
            for v in &vo {
                for w in &vs {
                    suite.check(is.contains(&pair.triple(s, x, v, w)), || {
                        format!("{{{x:?},{v:?},{w:?}}} escapes I{}", s.label())
                    });
                }
            }
        }
        // Q(V^s) I^-s
        for v in &vs {
            for x in io {
                suite.check(is.contains(&pair.q(s, v, x)), || {
                    format!("Q({v:?}){x:?} escapes I{}", s.label())
                });
            }
        }
    }
    suite.finish()
}

/// Division pair: every nonzero b makes Q_b a bijection.
pub fn is_division_pair(pair: &JordanPair) -> bool {
    for s in SIGNS {
        let vo = pair.elements(s.flip());
        for b in pair.elements(s) {
            if b == pair.zero(s) {
                continue;
            }
            let image: HashSet<FinMatrix> = vo.iter().map(|v| pair.q(s, &b, v)).collect();
            if image.len() != pair.size(s) {
                return false;
            }
        }
    }
    true
}

/// Jordan inverse of b: requires Q_b bijective, then returns the unique
/// v with Q_b v = b (and checks Q_v b = v, which the axioms force).
pub fn jordan_inverse(pair: &JordanPair, s: Sign, b: &FinMatrix) -> Result<FinMatrix> {
    let vo = pair.elements(s.flip());
    let mut image = HashSet::new();
    let mut found = None;
    for v in &vo {
        let qv = pair.q(s, b, v);
        if qv == *b {
            found = Some(v.clone());
        }
        image.insert(qv);
    }
    if image.len() != pair.size(s) {
        return Err(Error::NotInvertible);
    }
    let v = found.ok_or(Error::NotInvertible)?;
    if pair.q(s.flip(), &v, b) != v {
        return Err(Error::NotInvertible);
    }
    Ok(v)
}

/// Lookup-table homomorphism of pairs, verified on construction.
#[derive(Clone, Debug)]
pub struct PairMap {
    pub map: [HashMap<FinMatrix, FinMatrix>; 2],
}

impl PairMap {
    /// Checks additivity and Q-equivariance exhaustively.
    pub fn new(
        dom: &JordanPair,
        cod: &JordanPair,
        map_plus: HashMap<FinMatrix, FinMatrix>,
        map_minus: HashMap<FinMatrix, FinMatrix>,
    ) -> Result<PairMap> {
        let map = [map_plus, map_minus];
        for s in SIGNS {
            let f = &map[s.idx()];
            let g = &map[s.flip().idx()];
            for x in dom.elements(s) {
                let fx = f.get(&x).ok_or_else(|| {
                    Error::Jordan(format!("pair map undefined at {x:?}"))
                })?;
                if !cod.contains(s, fx) {
                    return Err(Error::Jordan(format!("image {fx:?} outside codomain")));
                }
                for y in dom.elements(s) {
                    let lhs = f[&dom.add(s, &x, &y)].clone();
                    let rhs = cod.add(s, fx, &f[&y]);
                    if lhs != rhs {
                        return Err(Error::Jordan(format!("pair map not additive at {x:?}+{y:?}")));
                    }
                }
                for y in dom.elements(s.flip()) {
                    let lhs = f[&dom.q(s, &x, &y)].clone();
                    let rhs = cod.q(s, fx, &g[&y]);
                    if lhs != rhs {
                        return Err(Error::Jordan(format!(
                            "pair map not Q-equivariant at Q({x:?}){y:?}"
                        )));
                    }
                }
            }
        }
        Ok(PairMap { map })
    }

    pub fn apply(&self, s: Sign, x: &FinMatrix) -> FinMatrix {
        self.map[s.idx()][x].clone()
    }

    pub fn is_bijective(&self) -> bool {
        SIGNS.iter().all(|s| {
            let vals: HashSet<&FinMatrix> = self.map[s.idx()].values().collect();
            vals.len() == self.map[s.idx()].len()
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;

    fn exhaustive() -> JpOptions {
        JpOptions { max_exhaustive: 2_000_000, samples: 0, seed: 0 }
    }

    #[test]
    fn jp_identities_hold_across_the_zoo() {
        let f2 = Ring::fp(2).unwrap();
        let f3 = Ring::fp(3).unwrap();
        let z4 = Ring::zn(4).unwrap();
        let m2 = Ring::matrix_ring(&f2, 2).unwrap();
        let pairs = vec![
            JordanPair::full(&f2),
            JordanPair::full(&f3),
            JordanPair::full(&z4),
            JordanPair::full(&m2),
            JordanPair::rect(&f2, 1, 2),
            JordanPair::rect(&f3, 1, 2),
            JordanPair::rect(&f2, 2, 2),
            JordanPair::hermitian(&f2, 2).unwrap(),
            JordanPair::alternating(&f2, 4).unwrap(),
            JordanPair::hyperbolic_quad(&f2).unwrap(),
            JordanPair::hyperbolic_quad(&f3).unwrap(),
        ];
        for p in pairs {
            let opts = JpOptions { max_exhaustive: 40_000, samples: 3_000, seed: 7 };
            let rep = verify_jp(&p, &opts);
            assert!(rep.pass, "{}: {:?}", p.name, rep.witnesses);
        }
    }

    #[test]
    fn slipped_polarization_is_caught_away_from_char_2() {
        let gram = [vec![0, 1, 0], vec![0, 0, 0], vec![0, 0, 1]];
        let opts = JpOptions { max_exhaustive: 25_000, samples: 2_000, seed: 1 };
        let f3 = Ring::fp(3).unwrap();
        let bad = JordanPair::quad_form_with_wrong_polarization(&f3, &gram).unwrap();
        assert!(!verify_jp(&bad, &opts).pass);

        let z4 = Ring::zn(4).unwrap();
        let bad = JordanPair::quad_form_with_wrong_polarization(&z4, &gram).unwrap();
        assert!(!verify_jp(&bad, &opts).pass);

        // over F2 the slip is invisible: -1 = 1
        let f2 = Ring::fp(2).unwrap();
        let bad = JordanPair::quad_form_with_wrong_polarization(&f2, &gram).unwrap();
        assert!(verify_jp(&bad, &exhaustive()).pass);
    }

    #[test]
    fn peirce_of_a_matrix_unit_in_full_mat2() {
        let f2 = Ring::fp(2).unwrap();
        let m2 = Ring::matrix_ring(&f2, 2).unwrap();
        let pair = JordanPair::full(&m2);
        // e11 in Mat2(F2): basis index (0,0) of the matrix ring
        let e11 = m2.basis_elt(0);
        let e = Idempotent::new(
            &pair,
            FinMatrix::single(&m2, 0, 0, e11.clone()),
            FinMatrix::single(&m2, 0, 0, e11),
        )
        .unwrap();
        let parts = peirce_parts(&pair, &e).unwrap();
        for s in SIGNS {
            assert_eq!(parts[s.idx()][2].len(), 2);
            assert_eq!(parts[s.idx()][1].len(), 4);
            assert_eq!(parts[s.idx()][0].len(), 2);
        }
        let rep = verify_peirce(&pair, &e).unwrap();
        assert!(rep.pass, "{:?}", rep.witnesses);
    }

    #[test]
    fn hyperbolic_idempotents() {
        let f2 = Ring::fp(2).unwrap();
        let pair = JordanPair::hyperbolic_quad(&f2).unwrap();
        let h_plus = FinMatrix::single(&f2, 0, 0, f2.one());
        let h_minus = FinMatrix::single(&f2, 1, 0, f2.one());
        let e = Idempotent::new(&pair, h_plus, h_minus).unwrap();
        let rep = verify_peirce(&pair, &e).unwrap();
        assert!(rep.pass, "{:?}", rep.witnesses);
        let parts = peirce_parts(&pair, &e).unwrap();
        assert_eq!(parts[0][2].len(), 2);
        assert_eq!(parts[0][1].len(), 2);
        assert_eq!(parts[0][0].len(), 2);

        // Q_x x = q(x) x, so (x,x) is idempotent exactly when q(x) x = x:
        // true for the unit vector of the square summand, false for the
        // isotropic ones
        for p in [2u32, 3] {
            let k = Ring::fp(p).unwrap();
            let pk = JordanPair::hyperbolic_quad(&k).unwrap();
            let sq = FinMatrix::single(&k, 2, 0, k.one());
            assert!(is_idempotent(&pk, &Idempotent { plus: sq.clone(), minus: sq }));
            let iso = FinMatrix::single(&k, 0, 0, k.one());
            assert!(!is_idempotent(&pk, &Idempotent { plus: iso.clone(), minus: iso }));
        }
    }

    #[test]
    fn alternating_idempotent() {
        let f2 = Ring::fp(2).unwrap();
        let pair = JordanPair::alternating(&f2, 4).unwrap();
        let mut u = FinMatrix::zero(&f2);
        u.set_entry(0, 1, f2.one());
        u.set_entry(1, 0, f2.one());
        let e = Idempotent::new(&pair, u.clone(), u).unwrap();
        let rep = verify_peirce(&pair, &e).unwrap();
        assert!(rep.pass, "{:?}", rep.witnesses);
    }

    #[test]
    fn rect_bergmann_factors() {
        // B(u,v)z = (1 - uv) z (1 - vu) in rectangular pairs
        let f3 = Ring::fp(3).unwrap();
        let pair = JordanPair::rect(&f3, 1, 2);
        let one = |n: u32| FinMatrix::scalar_identity(&f3, 1).folded(n);
        for u in pair.elements(Sign::Plus) {
            for v in pair.elements(Sign::Minus) {
                let left_factor = one(1).sub(&u.mul(&v)).folded(1);
                let right_factor = one(2).sub(&v.mul(&u)).folded(2);
                for z in pair.elements(Sign::Plus) {
                    let direct = pair.bergmann(Sign::Plus, &u, &v, &z);
                    let via = left_factor.mul(&z).mul(&right_factor);
                    assert_eq!(direct, via, "u={u:?} v={v:?} z={z:?}");
                }
            }
        }
    }

    #[test]
    fn quotient_of_z4_by_its_nil_ideal_is_f2() {
        let z4 = Ring::zn(4).unwrap();
        let pair = JordanPair::rect(&z4, 1, 1);
        let two = FinMatrix::single(&z4, 0, 0, z4.scalar(2));
        let ideal: Vec<FinMatrix> = vec![FinMatrix::zero(&z4), two];
        let quot = pair.quotient(ideal.clone(), ideal).unwrap();
        assert_eq!(quot.size(Sign::Plus), 2);
        assert!(verify_jp(&quot, &exhaustive()).pass);

        // explicit isomorphism onto full(F2)
        let f2 = Ring::fp(2).unwrap();
        let target = JordanPair::full(&f2);
        let to_f2 = |x: &FinMatrix| {
            let c = x.entry(0, 0);
            FinMatrix::single(&f2, 0, 0, f2.scalar(c.coords[0] % 2))
        };
        let mut mp = HashMap::new();
        for x in quot.elements(Sign::Plus) {
            mp.insert(x.clone(), to_f2(&x));
        }
        let pm = PairMap::new(&quot, &target, mp.clone(), mp).unwrap();
        assert!(pm.is_bijective());
    }

    #[test]
    fn trivial_ideals_give_zero_pair_and_full_copy() {
        let f3 = Ring::fp(3).unwrap();
        let pair = JordanPair::rect(&f3, 1, 2);
        let by_zero = pair
            .quotient(
                vec![pair.zero(Sign::Plus)],
                vec![pair.zero(Sign::Minus)],
            )
            .unwrap();
        assert_eq!(by_zero.size(Sign::Plus), pair.size(Sign::Plus));
        let by_all = pair
            .quotient(pair.elements(Sign::Plus), pair.elements(Sign::Minus))
            .unwrap();
        assert_eq!(by_all.size(Sign::Plus), 1);
        assert_eq!(by_all.size(Sign::Minus), 1);
    }

    #[test]
    fn identity_idempotent_peirce_is_all_v2() {
        let f3 = Ring::fp(3).unwrap();
        let pair = JordanPair::full(&f3);
        let one = FinMatrix::single(&f3, 0, 0, f3.one());
        let e = Idempotent::new(&pair, one.clone(), one).unwrap();
        let parts = peirce_parts(&pair, &e).unwrap();
        assert_eq!(parts[0][2].len(), 3);
        assert_eq!(parts[0][1].len(), 1);
        assert_eq!(parts[0][0].len(), 1);
        assert!(verify_peirce(&pair, &e).unwrap().pass);
    }

    #[test]
    fn unit_translates_of_an_idempotent() {
        // (uc, c u^-1) is an idempotent for every unit u; its Peirce spaces
        // are the translates (u . cAc, cAc . u^-1) of those of (c, c), so
        // they move with u rather than staying fixed
        let f2 = Ring::fp(2).unwrap();
        let m2 = Ring::matrix_ring(&f2, 2).unwrap();
        let pair = JordanPair::full(&m2);
        let c = m2.basis_elt(0); // E11
        let base = Idempotent::new(
            &pair,
            FinMatrix::single(&m2, 0, 0, c.clone()),
            FinMatrix::single(&m2, 0, 0, c.clone()),
        )
        .unwrap();
        let v2_base: HashSet<RingElement> = peirce_parts(&pair, &base).unwrap()[0][2]
            .iter()
            .map(|x| x.entry(0, 0))
            .collect();

        let mut some_translate_moved = false;
        for u in crate::ring::enumerate_units(&m2, 1 << 16).unwrap() {
            let u_inv = u.inverse().unwrap();
            let moved = Idempotent::new(
                &pair,
                FinMatrix::single(&m2, 0, 0, &u * &c),
                FinMatrix::single(&m2, 0, 0, &c * &u_inv),
            )
            .unwrap();
            assert!(verify_peirce(&pair, &moved).unwrap().pass);
            let v2_moved: HashSet<RingElement> = peirce_parts(&pair, &moved).unwrap()[0][2]
                .iter()
                .map(|x| x.entry(0, 0))
                .collect();
            let translated: HashSet<RingElement> =
                v2_base.iter().map(|x| &u * x).collect();
            assert_eq!(v2_moved, translated, "u = {u:?}");
            if v2_moved != v2_base {
                some_translate_moved = true;
            }
        }
        assert!(some_translate_moved);
    }

    #[test]
    fn bergmann_trivial_cases_and_matrix_triple() {
        let f3 = Ring::fp(3).unwrap();
        let pair = JordanPair::rect(&f3, 1, 2);
        let zero_minus = pair.zero(Sign::Minus);
        for u in pair.elements(Sign::Plus) {
            for z in pair.elements(Sign::Plus) {
                assert_eq!(pair.bergmann(Sign::Plus, &u, &zero_minus, &z), z);
            }
        }
        // triple product of the matrix models is xyz + zyx
        for x in pair.elements(Sign::Plus) {
            for y in pair.elements(Sign::Minus) {
                for z in pair.elements(Sign::Plus) {
                    let direct = pair.triple(Sign::Plus, &x, &y, &z);
                    let assoc = x.mul(&y).mul(&z).add(&z.mul(&y).mul(&x));
                    assert_eq!(direct, assoc);
                }
            }
        }
    }

    #[test]
    fn nil_sub_pair_of_z4_is_not_division() {
        let z4 = Ring::zn(4).unwrap();
        let pair = JordanPair::full(&z4);
        let two = FinMatrix::single(&z4, 0, 0, z4.scalar(2));
        let members = vec![FinMatrix::zero(&z4), two];
        let sub = pair.sub_pair(members.clone(), members, "nil sub-pair of Z/4").unwrap();
        assert!(verify_jp(&sub, &exhaustive()).pass);
        assert!(!is_division_pair(&sub));

        assert!(is_division_pair(&JordanPair::full(&Ring::fp(2).unwrap())));
        assert!(is_division_pair(&JordanPair::full(&Ring::fp(3).unwrap())));
        assert!(!is_division_pair(&JordanPair::rect(&Ring::fp(2).unwrap(), 1, 2)));
        assert!(!is_division_pair(&pair));
    }

    #[test]
    fn jordan_inverse_in_prime_fields() {
        let f3 = Ring::fp(3).unwrap();
        let pair = JordanPair::full(&f3);
        let b = FinMatrix::single(&f3, 0, 0, f3.scalar(2));
        let inv = jordan_inverse(&pair, Sign::Plus, &b).unwrap();
        assert_eq!(inv, FinMatrix::single(&f3, 0, 0, f3.scalar(2)));
        let zero = pair.zero(Sign::Plus);
        assert!(jordan_inverse(&pair, Sign::Plus, &zero).is_err());
    }

    #[test]
    fn non_ideal_is_rejected() {
        let f4 = Ring::fq(2, 2).unwrap();
        let pair = JordanPair::full(&f4);
        // the prime subfield is a sub-pair but not an ideal
        let members: Vec<FinMatrix> = [f4.zero(), f4.one()]
            .into_iter()
            .map(|e| FinMatrix::single(&f4, 0, 0, e))
            .collect();
        let rep = verify_ideal(&pair, &[members.clone(), members.clone()]);
        assert!(!rep.pass);
        assert!(pair.quotient(members.clone(), members).is_err());
    }

    #[test]
    fn hermitian_elements_are_fixed_points() {
        let f2 = Ring::fp(2).unwrap();
        let pair = JordanPair::hermitian(&f2, 2).unwrap();
        assert_eq!(pair.size(Sign::Plus), 8);
        for x in pair.elements(Sign::Plus) {
            assert_eq!(x.conj_transpose().unwrap(), x);
        }
        // with the transpose involution on Mat2(F2), H_1 recovers symmetric
        // 1 x 1 blocks, i.e. the fixed ring
        let m2 = Ring::matrix_ring(&f2, 2).unwrap();
        let pair = JordanPair::hermitian(&m2, 1).unwrap();
        assert_eq!(pair.size(Sign::Plus), 8);
    }
}
