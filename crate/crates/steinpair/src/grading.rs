//! Root gradings of Jordan pairs.
//!
//! A grading assigns to each root of the 1-part of a 3-graded root system
//! a subspace of the pair, so that V is the direct sum of the root spaces
//! and the quadratic and triple products shift weights additively.  The
//! constructors here build the classical examples (rectangular matrices,
//! hermitian matrices, alternating matrices, quadratic forms, and the
//! trivial one-root grading), `verify_grading_suite` checks the axioms
//! exhaustively, and `grading_from_cog` rebuilds a grading from a family
//! of idempotents through joint Peirce spaces.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use crate::error::Error;
use crate::jordan::{
    in_peirce, is_idempotent, scale, Idempotent, JordanPair, PairKind, Sign, SIGNS,
};
use crate::matrix::{all_rect_matrices, FinMatrix};
use crate::report::SuiteReport;
use crate::ring::{Ring, RingElement};
use crate::roots::{
    make_three_grading, pairing, GradingKind, Root, RootRelation, ThreeGrading,
};
use crate::Result;

/// A root grading: generating sets per root of R_1, with the root space
/// recovered as the additive closure.  `idems` records an idempotent
/// family when the constructor knows one; it is advisory and re-checked
/// wherever it is used.
#[derive(Clone, Debug)]
pub struct RootGrading {
    pub pair: JordanPair,
    pub grading: ThreeGrading,
    pub spaces: BTreeMap<Root, [Vec<FinMatrix>; 2]>,
    pub idems: BTreeMap<Root, Idempotent>,
}

impl RootGrading {
    /// Additive closure of the generators at a root; roots without an
    /// entry get the zero space.
    pub fn span(&self, alpha: &Root, s: Sign) -> HashSet<FinMatrix> {
        let mut set = HashSet::new();
        set.insert(self.pair.zero(s));
        let Some(gens) = self.spaces.get(alpha) else {
            return set;
        };
        let mut frontier: Vec<FinMatrix> = vec![self.pair.zero(s)];
        while let Some(x) = frontier.pop() {
            for g in &gens[s.idx()] {
                let y = self.pair.add(s, &x, g);
                if set.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        set
    }

    fn spans(&self) -> BTreeMap<Root, [HashSet<FinMatrix>; 2]> {
        self.grading
            .r1
            .iter()
            .map(|a| (a.clone(), [self.span(a, Sign::Plus), self.span(a, Sign::Minus)]))
            .collect()
    }

    /// Full verification: direct sum, placement of products in the root
    /// space the root arithmetic predicts, orthogonal vanishing, the
    /// vanishing law for Q between root spaces, and
    /// the three-factor vanishing law for Q(V_a)Q(V_b)V_c.
    ///
    /// The last law admits exactly four nonzero configurations: a = b;
    /// a <- b = c; a - b <- c with c orthogonal to a; and a -> b <- c with
    /// a = 2b - c.  The fourth one is easy to miss but really occurs, for
    /// instance in hermitian 2x2 pairs.
    pub fn verify_grading_suite(&self) -> SuiteReport {
        let mut suite = SuiteReport::start(format!("root grading of {}", self.pair.name));
        let r1: Vec<Root> = self.grading.r1.iter().cloned().collect();

        for alpha in self.spaces.keys() {
            suite.check(self.grading.r1.contains(alpha), || {
                format!("generators recorded at {alpha:?}, which is not in R1")
            });
        }
        for (alpha, gens) in &self.spaces {
            for s in SIGNS {
                for g in &gens[s.idx()] {
                    suite.check(self.pair.contains(s, g), || {
                        format!("generator {g:?} at {alpha:?} lies outside V{}", s.label())
                    });
                }
            }
        }
        for (alpha, e) in &self.idems {
            suite.check(is_idempotent(&self.pair, e), || {
                format!("recorded family member at {alpha:?} is not idempotent")
            });
        }

        let spans = self.spans();
        for (alpha, e) in &self.idems {
            let sp = &spans[alpha];
            suite.check(
                sp[0].contains(&e.plus) && sp[1].contains(&e.minus),
                || format!("recorded family member at {alpha:?} is outside its root space"),
            );
        }

        // direct sum of the root spaces, one sign at a time
        for s in SIGNS {
            let mut acc: HashSet<FinMatrix> = HashSet::new();
            acc.insert(self.pair.zero(s));
            for a in &r1 {
                let part = &spans[a][s.idx()];
                let mut next = HashSet::with_capacity(acc.len() * part.len());
                let mut collision = None;
                for x in &acc {
                    for y in part {
                        let z = self.pair.add(s, x, y);
                        if !next.insert(z.clone()) && collision.is_none() {
                            collision = Some(z);
                        }
                    }
                }
                let coll = collision.clone();
                suite.check(collision.is_none(), || {
                    format!(
                        "root-space sums collide on V{} at {a:?}: {:?}",
                        s.label(),
                        coll
                    )
                });
                acc = next;
            }
            suite.counter(&format!("sum count V{}", s.label()), acc.len() as i64);
            suite.check(acc.len() == self.pair.size(s), || {
                format!(
                    "root spaces sum to {} of {} elements of V{}",
                    acc.len(),
                    self.pair.size(s),
                    s.label()
                )
            });
        }

        let rel = |a: &Root, b: &Root| self.grading.classify_pair(a, b);

        // quadratic products: Q(V_a)V_b lands in V_{2a-b}, and is zero
        // unless a = b or a <- b (the only cases with 2a-b in R1)
        let mut q_nonzero = 0i64;
        for a in &r1 {
            for b in &r1 {
                let target = a.scale(2).sub(b);
                let target_in = self.grading.r1.contains(&target);
                let relation = match rel(a, b) {
                    Ok(r) => r,
                    Err(_) => {
                        suite.check(false, || format!("({a:?}, {b:?}) escapes the relation table"));
                        continue;
                    }
                };
                let allowed =
                    relation == RootRelation::Equal || relation == RootRelation::ArrowIn;
                suite.check(target_in == allowed, || {
                    format!("2{a:?}-{b:?} in R1 disagrees with the relation {relation:?}")
                });
                for s in SIGNS {
                    for u in &spans[a][s.idx()] {
                        for v in &spans[b][s.flip().idx()] {
                            let quv = self.pair.q(s, u, v);
                            if !quv.entries.is_empty() {
                                q_nonzero += 1;
                            }
                            if target_in {
                                suite.check(spans[&target][s.idx()].contains(&quv), || {
                                    format!(
                                        "Q({u:?}){v:?} leaves V_{target:?} on sign {}",
                                        s.label()
                                    )
                                });
                            } else {
                                suite.check(quv == self.pair.zero(s), || {
                                    format!(
                                        "Q(V_{a:?})V_{b:?} should vanish, got Q({u:?}){v:?} = {quv:?}"
                                    )
                                });
                            }
                        }
                    }
                }
            }
        }
        suite.counter("nonzero Q products between root spaces", q_nonzero);

        // triple products: {V_a V_b V_c} lands in V_{a-b+c}
        for a in &r1 {
            for b in &r1 {
                for c in &r1 {
                    let target = a.sub(b).add(c);
                    let target_in = self.grading.r1.contains(&target);
                    for s in SIGNS {
                        for u in &spans[a][s.idx()] {
                            for v in &spans[b][s.flip().idx()] {
                                for w in &spans[c][s.idx()] {
                                    let t = self.pair.triple(s, u, v, w);
                                    if target_in {
                                        suite.check(
                                            spans[&target][s.idx()].contains(&t),
                                            || {
                                                format!(
                                                "{{{u:?},{v:?},{w:?}}} leaves V_{target:?}"
                                            )
                                            },
                                        );
                                    } else {
                                        suite.check(t == self.pair.zero(s), || {
                                            format!(
                                                "{{V_{a:?} V_{b:?} V_{c:?}}} should vanish, got {t:?}"
                                            )
                                        });
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }

        // orthogonal roots: {V_a V_b z} = 0 for every z in the pair
        for a in &r1 {
            for b in &r1 {
                if !matches!(rel(a, b), Ok(RootRelation::Orthogonal)) {
                    continue;
                }
                for s in SIGNS {
                    for u in &spans[a][s.idx()] {
                        for v in &spans[b][s.flip().idx()] {
                            suite.check(self.pair.q(s, u, v) == self.pair.zero(s), || {
                                format!("Q({u:?}){v:?} != 0 across orthogonal roots")
                            });
                            for z in self.pair.elements(s) {
                                suite.check(
                                    self.pair.triple(s, u, v, &z) == self.pair.zero(s),
                                    || {
                                        format!(
                                            "{{{u:?},{v:?},{z:?}}} != 0 across orthogonal roots"
                                        )
                                    },
                                );
                            }
                        }
                    }
                }
            }
        }

        // double quadratic products: Q(V_a)Q(V_b)V_c vanishes outside the
        // four configurations listed in the method docs
        let mut config_counts = [0i64; 4];
        for a in &r1 {
            for b in &r1 {
                for c in &r1 {
                    let rab = rel(a, b).ok();
                    let rbc = rel(b, c).ok();
                    let rca = rel(c, a).ok();
                    let config = if a == b {
                        Some(0)
                    } else if rab == Some(RootRelation::ArrowIn) && b == c {
                        Some(1)
                    } else if rab == Some(RootRelation::Edge)
                        && rbc == Some(RootRelation::ArrowIn)
                        && rca == Some(RootRelation::Orthogonal)
                    {
                        Some(2)
                    } else if rab == Some(RootRelation::ArrowOut)
                        && rbc == Some(RootRelation::ArrowIn)
                        && rca == Some(RootRelation::Orthogonal)
                        && *a == b.scale(2).sub(c)
                    {
                        Some(3)
                    } else {
                        None
                    };
                    for s in SIGNS {
                        for u in &spans[a][s.idx()] {
                            for y in &spans[b][s.flip().idx()] {
                                for z in &spans[c][s.idx()] {
                                    let inner = self.pair.q(s.flip(), y, z);
                                    let w = self.pair.q(s, u, &inner);
                                    match config {
                                        Some(k) => {
                                            if !w.entries.is_empty() {
                                                config_counts[k] += 1;
                                            }
                                        }
                                        None => suite.check(w == self.pair.zero(s), || {
                                            format!(
                                                "Q(V_{a:?})Q(V_{b:?})V_{c:?} should vanish, got {w:?}"
                                            )
                                        }),
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        suite.counter("QQ nonzero via a = b", config_counts[0]);
        suite.counter("QQ nonzero via a <- b = c", config_counts[1]);
        suite.counter("QQ nonzero via edge chain", config_counts[2]);
        suite.counter("QQ nonzero via double arrow", config_counts[3]);

        suite.finish()
    }

    /// Searches every root space for an idempotent family that rebuilds
    /// this grading through joint Peirce spaces.  Returns the family if
    /// one exists, None otherwise.  Budget-errors out instead of walking
    /// root spaces or candidate products that are too large.
    pub fn is_fully_idempotent(&self) -> Result<Option<BTreeMap<Root, Idempotent>>> {
        const CAP: usize = 4096;
        let spans = self.spans();
        let mut roots: Vec<Root> = Vec::new();
        let mut candidates: Vec<Vec<Idempotent>> = Vec::new();
        for (alpha, sp) in &spans {
            if sp[0].len() * sp[1].len() > CAP {
                return Err(Error::Budget(format!(
                    "root space at {alpha:?} has {}x{} candidate pairs",
                    sp[0].len(),
                    sp[1].len()
                )));
            }
            let mut list: Vec<Idempotent> = Vec::new();
            if let Some(e) = self.idems.get(alpha) {
                if is_idempotent(&self.pair, e)
                    && sp[0].contains(&e.plus)
                    && sp[1].contains(&e.minus)
                {
                    list.push(e.clone());
                }
            }
            // deterministic candidate order regardless of hash state
            let mut plus: Vec<&FinMatrix> = sp[0].iter().collect();
            let mut minus: Vec<&FinMatrix> = sp[1].iter().collect();
            plus.sort_by_key(|m| format!("{m:?}"));
            minus.sort_by_key(|m| format!("{m:?}"));
            for p in &plus {
                if p.entries.is_empty() {
                    continue;
                }
                for m in &minus {
                    if m.entries.is_empty() {
                        continue;
                    }
                    if list.iter().any(|e| e.plus == **p && e.minus == **m) {
                        continue;
                    }
                    let e = Idempotent { plus: (*p).clone(), minus: (*m).clone() };
                    if is_idempotent(&self.pair, &e) {
                        list.push(e);
                    }
                }
            }
            if list.is_empty() {
                return Ok(None);
            }
            roots.push(alpha.clone());
            candidates.push(list);
        }

        let combos = candidates
            .iter()
            .fold(1usize, |n, list| n.saturating_mul(list.len()));
        if combos > CAP {
            return Err(Error::Budget(format!(
                "{combos} candidate idempotent families exceed the search budget"
            )));
        }

        let mut idx = vec![0usize; candidates.len()];
        loop {
            let family: BTreeMap<Root, Idempotent> = roots
                .iter()
                .enumerate()
                .map(|(k, a)| (a.clone(), candidates[k][idx[k]].clone()))
                .collect();
            let members = cog_members(&self.pair, &self.grading, &family)?;
            let reproduces = self.grading.r1.iter().all(|beta| {
                let got = &members[beta];
                SIGNS.into_iter().all(|s| {
                    let set: HashSet<&FinMatrix> = got[s.idx()].iter().collect();
                    let want: HashSet<&FinMatrix> = spans[beta][s.idx()].iter().collect();
                    set == want
                })
            });
            if reproduces {
                return Ok(Some(family));
            }
            let mut k = 0;
            loop {
                if k == idx.len() {
                    return Ok(None);
                }
                idx[k] += 1;
                if idx[k] < candidates[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    }
}

/// Joint Peirce spaces of the family: for each root b of R_1 the set of
/// x with x in the <b, a^>-th Peirce space of e_a for every a.  Errors
/// when some pairing falls outside {0, 1, 2}.
fn cog_members(
    pair: &JordanPair,
    grading: &ThreeGrading,
    family: &BTreeMap<Root, Idempotent>,
) -> Result<BTreeMap<Root, [Vec<FinMatrix>; 2]>> {
    if family.is_empty() {
        return Err(Error::Grading("empty idempotent family".into()));
    }
    for alpha in family.keys() {
        if !grading.r1.contains(alpha) {
            return Err(Error::Grading(format!("family root {alpha:?} is not in R1")));
        }
    }
    let mut weights: BTreeMap<(Root, Root), i64> = BTreeMap::new();
    for beta in &grading.r1 {
        for alpha in family.keys() {
            let p = pairing(beta, alpha)?;
            if !(0..=2).contains(&p) {
                return Err(Error::Grading(format!(
                    "<{beta:?}, {alpha:?}^> = {p} falls outside a 3-graded pattern"
                )));
            }
            weights.insert((beta.clone(), alpha.clone()), p);
        }
    }
    let mut members = BTreeMap::new();
    for beta in &grading.r1 {
        let mut parts: [Vec<FinMatrix>; 2] = Default::default();
        for s in SIGNS {
            for x in pair.elements(s) {
                let keep = family.iter().all(|(alpha, e)| {
                    let p = weights[&(beta.clone(), alpha.clone())];
                    in_peirce(pair, e, p, s, &x)
                });
                if keep {
                    parts[s.idx()].push(x);
                }
            }
        }
        members.insert(beta.clone(), parts);
    }
    Ok(members)
}

/// Rebuilds a root grading from an idempotent family via joint Peirce
/// spaces, verifies it, and (optionally) checks it matches a reference
/// grading space for space.  Nothing unverified escapes: any axiom
/// failure is an error, not a report.
pub fn grading_from_cog(
    pair: &JordanPair,
    grading: &ThreeGrading,
    family: &BTreeMap<Root, Idempotent>,
    reference: Option<&RootGrading>,
) -> Result<RootGrading> {
    for (alpha, e) in family {
        if !is_idempotent(pair, e) {
            return Err(Error::Grading(format!("family member at {alpha:?} is not idempotent")));
        }
    }
    let members = cog_members(pair, grading, family)?;
    let built = RootGrading {
        pair: pair.clone(),
        grading: grading.clone(),
        spaces: members,
        idems: family.clone(),
    };
    let report = built.verify_grading_suite();
    if !report.pass {
        return Err(Error::Grading(format!(
            "joint Peirce spaces do not grade the pair: {}",
            report.witnesses.first().cloned().unwrap_or_default()
        )));
    }
    if let Some(want) = reference {
        if want.grading.r1 != built.grading.r1 {
            return Err(Error::Grading("reference grading has different roots".into()));
        }
        for beta in &built.grading.r1 {
            for s in SIGNS {
                if built.span(beta, s) != want.span(beta, s) {
                    return Err(Error::Grading(format!(
                        "joint Peirce space at {beta:?} differs from the reference on V{}",
                        s.label()
                    )));
                }
            }
        }
    }
    Ok(built)
}

/// Rectangular grading of rect(A, rows, cols): the root e_i - e_{rows+j}
/// carries the matrices supported on cell (i, j), and transposed on the
/// minus side.  Records the matrix-unit idempotent family.
pub fn grade_rect(a: &Ring, rows: u32, cols: u32) -> Result<RootGrading> {
    let pair = JordanPair::rect(a, rows, cols);
    let i_set: BTreeSet<u32> = (0..rows).collect();
    let grading = make_three_grading(GradingKind::RectangularA { i_set }, rows + cols)?;
    let mut spaces = BTreeMap::new();
    let mut idems = BTreeMap::new();
    for i in 0..rows {
        for j in 0..cols {
            let root = Root::eps(i).sub(&Root::eps(rows + j));
            let plus: Vec<FinMatrix> = (0..a.rank())
                .map(|e| FinMatrix::single(a, i, j, a.basis_elt(e)))
                .collect();
            let minus: Vec<FinMatrix> = (0..a.rank())
                .map(|e| FinMatrix::single(a, j, i, a.basis_elt(e)))
                .collect();
            spaces.insert(root.clone(), [plus, minus]);
            let e = Idempotent::new(
                &pair,
                FinMatrix::single(a, i, j, a.one()),
                FinMatrix::single(a, j, i, a.one()),
            )?;
            idems.insert(root, e);
        }
    }
    Ok(RootGrading { pair, grading, spaces, idems })
}

/// Hermitian grading of her(A, n): the root e_i + e_j carries
/// a E_ij + a^J E_ji for i < j and the J-fixed scalars on the diagonal.
pub fn grade_hermitian(a: &Ring, n: u32) -> Result<RootGrading> {
    let pair = JordanPair::hermitian(a, n)?;
    let base = pair.base().clone();
    let grading = make_three_grading(GradingKind::Hermitian, n)?;
    let h = |i: u32, j: u32, x: &RingElement| -> Result<FinMatrix> {
        let mut m = FinMatrix::zero(&base);
        if i == j {
            m.set_entry(i, i, x.clone());
        } else {
            m.set_entry(i, j, x.clone());
            m.set_entry(j, i, x.involute()?);
        }
        Ok(m)
    };
    let fixed: Vec<RingElement> = base
        .elements()
        .into_iter()
        .filter(|x| !x.is_zero() && x.involute().map(|y| y == *x).unwrap_or(false))
        .collect();
    let mut spaces = BTreeMap::new();
    let mut idems = BTreeMap::new();
    for i in 0..n {
        for j in i..n {
            let root = Root::eps(i).add(&Root::eps(j));
            let gens: Vec<FinMatrix> = if i == j {
                fixed.iter().map(|f| h(i, i, f)).collect::<Result<_>>()?
            } else {
                (0..base.rank())
                    .map(|e| h(i, j, &base.basis_elt(e)))
                    .collect::<Result<_>>()?
            };
            spaces.insert(root.clone(), [gens.clone(), gens]);
            let unit = h(i, j, &base.one())?;
            idems.insert(root, Idempotent::new(&pair, unit.clone(), unit)?);
        }
    }
    Ok(RootGrading { pair, grading, spaces, idems })
}

/// Alternating grading of alt(k, n): the root e_i + e_j carries the
/// multiples of E_ij - E_ji on both sides.
pub fn grade_alternating(k: &Ring, n: u32) -> Result<RootGrading> {
    let pair = JordanPair::alternating(k, n)?;
    let grading = make_three_grading(GradingKind::Alternating, n)?;
    let u = |i: u32, j: u32, c: &RingElement| -> FinMatrix {
        let mut m = FinMatrix::zero(k);
        m.set_entry(i, j, c.clone());
        m.set_entry(j, i, -c);
        m
    };
    let mut spaces = BTreeMap::new();
    let mut idems = BTreeMap::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let root = Root::eps(i).add(&Root::eps(j));
            let gens: Vec<FinMatrix> =
                (0..k.rank()).map(|e| u(i, j, &k.basis_elt(e))).collect();
            spaces.insert(root.clone(), [gens.clone(), gens]);
            let plus = u(i, j, &k.one());
            let minus = plus.neg();
            idems.insert(root, Idempotent::new(&pair, plus, minus)?);
        }
    }
    Ok(RootGrading { pair, grading, spaces, idems })
}

/// Quadratic-form grading from a marked hyperbolic pair: h+ and h- must
/// be isotropic with b(h+, h-) = 1.  They span the root spaces at
/// e_0 +- e_1, and the orthogonal complement of both sits at e_0.
pub fn grade_quad(pair: &JordanPair, h_plus: &FinMatrix, h_minus: &FinMatrix) -> Result<RootGrading> {
    if !matches!(pair.kind, PairKind::QuadForm { .. }) {
        return Err(Error::Grading("grade_quad needs a quadratic-form pair".into()));
    }
    for h in [h_plus, h_minus] {
        if !pair.contains(Sign::Plus, h) {
            return Err(Error::Grading(format!("{h:?} is not a vector of the form space")));
        }
        if !pair.qform(h).is_zero() {
            return Err(Error::Grading(format!("marked vector {h:?} is not isotropic")));
        }
    }
    if !pair.bform(h_plus, h_minus).is_one() {
        return Err(Error::Grading("marked pair needs b(h+, h-) = 1".into()));
    }
    let grading = make_three_grading(GradingKind::OddQuadratic, 2)?;
    let complement: Vec<FinMatrix> = pair
        .elements(Sign::Plus)
        .into_iter()
        .filter(|x| pair.bform(x, h_plus).is_zero() && pair.bform(x, h_minus).is_zero())
        .collect();
    let mut spaces = BTreeMap::new();
    let up = Root::eps(0).add(&Root::eps(1));
    let down = Root::eps(0).sub(&Root::eps(1));
    let mid = Root::eps(0);
    spaces.insert(up.clone(), [vec![h_plus.clone()], vec![h_minus.clone()]]);
    spaces.insert(down.clone(), [vec![h_minus.clone()], vec![h_plus.clone()]]);
    spaces.insert(mid.clone(), [complement.clone(), complement.clone()]);
    let mut idems = BTreeMap::new();
    idems.insert(up, Idempotent::new(pair, h_plus.clone(), h_minus.clone())?);
    idems.insert(down, Idempotent::new(pair, h_minus.clone(), h_plus.clone())?);
    // any complement vector of invertible norm gives the middle idempotent
    for m in &complement {
        let q = pair.qform(m);
        if let Some(inv) = q.inverse() {
            idems.insert(mid.clone(), Idempotent::new(pair, m.clone(), scale(m, &inv))?);
            break;
        }
    }
    Ok(RootGrading { pair: pair.clone(), grading, spaces, idems })
}

/// The one-root grading: all of V sits at the single root.  Unital
/// pairs record (1, 1) as the family.
pub fn grade_trivial(pair: &JordanPair) -> Result<RootGrading> {
    let i_set: BTreeSet<u32> = [0].into();
    let grading = make_three_grading(GradingKind::RectangularA { i_set }, 2)?;
    let root = Root::eps(0).sub(&Root::eps(1));
    let spaces: BTreeMap<Root, [Vec<FinMatrix>; 2]> = [(
        root.clone(),
        [pair.elements(Sign::Plus), pair.elements(Sign::Minus)],
    )]
    .into();
    let mut idems = BTreeMap::new();
    if let PairKind::Full { a } = &pair.kind {
        let one = FinMatrix::single(a, 0, 0, a.one());
        idems.insert(root, Idempotent::new(pair, one.clone(), one)?);
    }
    Ok(RootGrading { pair: pair.clone(), grading, spaces, idems })
}

/// Rectangular grading inherited by a sub-pair cut out cell by cell:
/// `cells[(i, j)]` lists additive generators for the entries allowed at
/// cell (i, j); missing cells are pinned to zero.
pub fn grade_rect_sub(
    a: &Ring,
    rows: u32,
    cols: u32,
    cells: &BTreeMap<(u32, u32), Vec<RingElement>>,
    name: &str,
) -> Result<RootGrading> {
    let parent = JordanPair::rect(a, rows, cols);
    let mut closures: BTreeMap<(u32, u32), HashSet<RingElement>> = BTreeMap::new();
    for (&cell, gens) in cells {
        let mut set = HashSet::new();
        set.insert(a.zero());
        let mut frontier = vec![a.zero()];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = &x + g;
                if set.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        closures.insert(cell, set);
    }
    let allowed = |m: &FinMatrix, transposed: bool| -> bool {
        m.entries.iter().all(|(&(r, c), v)| {
            let cell = if transposed { (c, r) } else { (r, c) };
            closures.get(&cell).map(|set| set.contains(v)).unwrap_or(false)
        })
    };
    let plus: Vec<FinMatrix> = all_rect_matrices(a, rows, cols)
        .into_iter()
        .filter(|m| allowed(m, false))
        .collect();
    let minus: Vec<FinMatrix> = all_rect_matrices(a, cols, rows)
        .into_iter()
        .filter(|m| allowed(m, true))
        .collect();
    let pair = parent.sub_pair(plus, minus, name)?;
    let i_set: BTreeSet<u32> = (0..rows).collect();
    let grading = make_three_grading(GradingKind::RectangularA { i_set }, rows + cols)?;
    let mut spaces = BTreeMap::new();
    for (&(i, j), gens) in cells {
        let root = Root::eps(i).sub(&Root::eps(rows + j));
        let p: Vec<FinMatrix> = gens.iter().map(|g| FinMatrix::single(a, i, j, g.clone())).collect();
        let m: Vec<FinMatrix> = gens.iter().map(|g| FinMatrix::single(a, j, i, g.clone())).collect();
        spaces.insert(root, [p, m]);
    }
    Ok(RootGrading { pair, grading, spaces, idems: BTreeMap::new() })
}
