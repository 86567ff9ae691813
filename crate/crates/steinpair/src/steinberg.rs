//! Steinberg presentations and their evaluation homomorphisms.
//!
//! Four presentation kinds share one machinery.  Generators are indexed by
//! nonzero elements (or by matrix positions for the linear kind), relators
//! are freely reduced words, and every relation schema is instantiated
//! exhaustively over the finite data.  Instances whose relator reduces to
//! the empty word still show up in the schema counts, so the counts match
//! the combinatorial predictions, but only distinct nonempty words are
//! stored.
//!
//! A word is a `Vec<i32>` of 1-based signed letters: letter `k > 0` is
//! generator `k-1`, letter `-k` is its formal inverse.  The zero element
//! has no generator; `x(0)` is the empty word wherever it appears.

use std::collections::{HashMap, HashSet};

use crate::error::Error;
use crate::grading::{grade_rect, RootGrading};
use crate::group::{FiniteGroup, GroupElement};
use crate::jordan::{is_division_pair, jordan_inverse, JordanPair, PairMap, Sign, SIGNS};
use crate::matrix::{commutator, e_minus, e_plus, elementary, ElMat, FinMatrix};
use crate::pegroup::PeMat;
use crate::report::SuiteReport;
use crate::ring::{Ring, RingElement};
use crate::roots::{Root, RootRelation};
use crate::tkk::TkkAlgebra;
use crate::Result;

/// What a presentation generator stands for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GenLabel {
    /// x_ij(a) of a linear presentation, off-diagonal position (i, j).
    Linear { i: u32, j: u32, a: RingElement },
    /// x_sigma(u) for a nonzero pair element u.
    Pair { sign: Sign, elt: FinMatrix },
    /// A bare named generator of a presentation supplied directly.
    Abstract(String),
}

/// One stored relator together with the schema that produced it.
#[derive(Clone, Debug)]
pub struct Relator {
    pub word: Vec<i32>,
    pub schema: String,
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum GenKey {
    Lin(u32, u32, RingElement),
    Pr(u8, FinMatrix),
}

/// A finite presentation: generators, freely reduced relators, and the
/// instance count of every relation schema that was enumerated.
#[derive(Clone)]
pub struct Presentation {
    pub name: String,
    pub labels: Vec<GenLabel>,
    pub gen_names: Vec<String>,
    pub relators: Vec<Relator>,
    pub schema_counts: Vec<(String, i64)>,
    index: HashMap<GenKey, usize>,
}

/// Cancel adjacent inverse pairs.
pub fn free_reduce(word: Vec<i32>) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::with_capacity(word.len());
    for x in word {
        if x == 0 {
            continue;
        }
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

/// Formal inverse of a word.
pub fn invert_word(word: &[i32]) -> Vec<i32> {
    word.iter().rev().map(|&x| -x).collect()
}

/// The commutator word g h g^-1 h^-1, not reduced.
pub fn comm_word(g: &[i32], h: &[i32]) -> Vec<i32> {
    let mut w = Vec::with_capacity(2 * (g.len() + h.len()));
    w.extend_from_slice(g);
    w.extend_from_slice(h);
    w.extend(invert_word(g));
    w.extend(invert_word(h));
    w
}

impl Presentation {
    pub fn n_gens(&self) -> usize {
        self.labels.len()
    }

    /// Word of x_sigma(x): empty for zero, one letter otherwise.
    pub fn pair_word(&self, pair: &JordanPair, s: Sign, x: &FinMatrix) -> Result<Vec<i32>> {
        let x = pair.canon(s, x.clone());
        if x.is_zero() {
            return Ok(Vec::new());
        }
        let key = GenKey::Pr(s.idx() as u8, x.clone());
        match self.index.get(&key) {
            Some(&i) => Ok(vec![i as i32 + 1]),
            None => Err(Error::Presentation(format!(
                "no generator for {} at {x:?} in {}",
                s.label(),
                self.name
            ))),
        }
    }

    /// Word of x_ij(a): empty for a = 0, one letter otherwise.
    pub fn linear_word(&self, i: u32, j: u32, a: &RingElement) -> Result<Vec<i32>> {
        if a.is_zero() {
            return Ok(Vec::new());
        }
        let key = GenKey::Lin(i, j, a.clone());
        match self.index.get(&key) {
            Some(&k) => Ok(vec![k as i32 + 1]),
            None => Err(Error::Presentation(format!(
                "no generator x_{i}{j}({a:?}) in {}",
                self.name
            ))),
        }
    }

    /// Human-readable form of a word over this presentation's generators.
    pub fn word_string(&self, word: &[i32]) -> String {
        if word.is_empty() {
            return "1".to_string();
        }
        word.iter()
            .map(|&l| {
                let name = &self.gen_names[(l.unsigned_abs() - 1) as usize];
                if l > 0 {
                    name.clone()
                } else {
                    format!("{name}^-1")
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// A presentation given directly by its generator names and relator
    /// words, bypassing the schema machinery.
    pub fn from_relators(
        name: &str,
        gen_names: Vec<String>,
        relators: Vec<Vec<i32>>,
    ) -> Result<Presentation> {
        let n = gen_names.len();
        let mut seen = HashSet::new();
        let mut stored = Vec::new();
        let mut count = 0i64;
        for word in relators {
            for &l in &word {
                if l == 0 || l.unsigned_abs() as usize > n {
                    return Err(Error::Presentation(format!(
                        "letter {l} is outside the {n}-generator alphabet"
                    )));
                }
            }
            count += 1;
            let w = free_reduce(word);
            if !w.is_empty() && seen.insert(w.clone()) {
                stored.push(Relator { word: w, schema: "given".to_string() });
            }
        }
        Ok(Presentation {
            name: name.to_string(),
            labels: gen_names.iter().map(|g| GenLabel::Abstract(g.clone())).collect(),
            gen_names,
            relators: stored,
            schema_counts: vec![("given".to_string(), count)],
            index: HashMap::new(),
        })
    }

    /// Plain-text export: one header line with the generator names, then
    /// one relator word per line.
    pub fn export_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.gen_names.join(" "));
        out.push('\n');
        for r in &self.relators {
            out.push_str(&self.word_string(&r.word));
            out.push('\n');
        }
        out
    }
}

struct PresBuilder {
    name: String,
    labels: Vec<GenLabel>,
    gen_names: Vec<String>,
    index: HashMap<GenKey, usize>,
    relators: Vec<Relator>,
    seen: HashSet<Vec<i32>>,
    counts: Vec<(String, i64)>,
}

impl PresBuilder {
    fn new(name: String) -> PresBuilder {
        PresBuilder {
            name,
            labels: Vec::new(),
            gen_names: Vec::new(),
            index: HashMap::new(),
            relators: Vec::new(),
            seen: HashSet::new(),
            counts: Vec::new(),
        }
    }

    fn add_pair_gen(&mut self, s: Sign, x: FinMatrix) {
        let idx = self.labels.len();
        let prefix = match s {
            Sign::Plus => "xp",
            Sign::Minus => "xm",
        };
        self.gen_names.push(format!("{}_{}", prefix, idx + 1));
        self.index.insert(GenKey::Pr(s.idx() as u8, x.clone()), idx);
        self.labels.push(GenLabel::Pair { sign: s, elt: x });
    }

    fn add_linear_gen(&mut self, i: u32, j: u32, a: RingElement) {
        let idx = self.labels.len();
        let prefix = if i < j { "xp" } else { "xm" };
        self.gen_names.push(format!("{}_{}", prefix, idx + 1));
        self.index.insert(GenKey::Lin(i, j, a.clone()), idx);
        self.labels.push(GenLabel::Linear { i, j, a });
    }

    fn pword(&self, pair: &JordanPair, s: Sign, x: &FinMatrix) -> Vec<i32> {
        let x = pair.canon(s, x.clone());
        if x.is_zero() {
            return Vec::new();
        }
        let key = GenKey::Pr(s.idx() as u8, x);
        vec![self.index[&key] as i32 + 1]
    }

    fn lword(&self, i: u32, j: u32, a: &RingElement) -> Vec<i32> {
        if a.is_zero() {
            return Vec::new();
        }
        vec![self.index[&GenKey::Lin(i, j, a.clone())] as i32 + 1]
    }

    /// Record one instance of `schema` whose relator is lhs rhs^-1.
    fn relation(&mut self, schema: &str, lhs: Vec<i32>, mut rhs: Vec<i32>) {
        let mut w = lhs;
        rhs = invert_word(&rhs);
        w.extend(rhs);
        self.relator(schema, w);
    }

    fn relator(&mut self, schema: &str, word: Vec<i32>) {
        match self.counts.iter_mut().find(|(k, _)| k == schema) {
            Some(c) => c.1 += 1,
            None => self.counts.push((schema.to_string(), 1)),
        }
        let w = free_reduce(word);
        if !w.is_empty() && self.seen.insert(w.clone()) {
            self.relators.push(Relator { word: w, schema: schema.to_string() });
        }
    }

    fn finish(self) -> Presentation {
        Presentation {
            name: self.name,
            labels: self.labels,
            gen_names: self.gen_names,
            relators: self.relators,
            schema_counts: self.counts,
            index: self.index,
        }
    }
}

/// Root spaces come back as hash sets; order them for reproducible
/// presentations and coset tables.
fn sorted_span(grading: &RootGrading, alpha: &Root, s: Sign) -> Vec<FinMatrix> {
    let mut v: Vec<FinMatrix> = grading.span(alpha, s).into_iter().collect();
    v.sort_by_key(|m| format!("{m:?}"));
    v
}

/// The word for b(u, v) given the relation of the roots of u and v.  The
/// case split: orthogonal roots give the empty word, collinear roots the
/// bare commutator, and the two arrow directions append the quadratic
/// correction on the side whose Q product can survive.
fn assemble_b_word(
    rel: &RootRelation,
    m_neg_v: Vec<i32>,
    p_u: Vec<i32>,
    m_neg_qvu: Vec<i32>,
    p_neg_quv: Vec<i32>,
) -> Vec<i32> {
    let core = comm_word(&m_neg_v, &p_u);
    match rel {
        RootRelation::Orthogonal => Vec::new(),
        RootRelation::Edge => core,
        RootRelation::ArrowOut => {
            let mut w = m_neg_qvu;
            w.extend(core);
            w
        }
        RootRelation::ArrowIn => {
            let mut w = core;
            w.extend(p_neg_quv);
            w
        }
        RootRelation::Equal => unreachable!("callers exclude equal roots"),
    }
}

fn b_word_parts(
    pair: &JordanPair,
    u: &FinMatrix,
    v: &FinMatrix,
) -> (FinMatrix, FinMatrix, FinMatrix, FinMatrix) {
    let neg_v = pair.neg(Sign::Minus, v);
    let neg_qvu = pair.neg(Sign::Minus, &pair.q(Sign::Minus, v, u));
    let neg_quv = pair.neg(Sign::Plus, &pair.q(Sign::Plus, u, v));
    (neg_v, u.clone(), neg_qvu, neg_quv)
}

/// The unique root whose space contains the nonzero element `x`.
pub fn root_of(grading: &RootGrading, s: Sign, x: &FinMatrix) -> Result<Root> {
    let mut hit = None;
    for alpha in &grading.grading.r1 {
        if grading.span(alpha, s).contains(x) {
            if hit.is_some() {
                return Err(Error::Grading(format!(
                    "{x:?} lies in more than one root space"
                )));
            }
            hit = Some(alpha.clone());
        }
    }
    hit.ok_or_else(|| Error::Grading(format!("{x:?} lies in no single root space")))
}

/// The defining word of b(u, v) for homogeneous u, v across distinct
/// roots, over the generators of `pres`.
pub fn b_word(
    pres: &Presentation,
    grading: &RootGrading,
    u: &FinMatrix,
    v: &FinMatrix,
) -> Result<Vec<i32>> {
    let pair = &grading.pair;
    let u = pair.canon(Sign::Plus, u.clone());
    let v = pair.canon(Sign::Minus, v.clone());
    if u.is_zero() || v.is_zero() {
        return Ok(Vec::new());
    }
    let alpha = root_of(grading, Sign::Plus, &u)?;
    let beta = root_of(grading, Sign::Minus, &v)?;
    let rel = grading.grading.classify_pair(&alpha, &beta)?;
    if matches!(rel, RootRelation::Equal) {
        return Err(Error::Presentation(
            "b(u, v) is only defined for elements across distinct roots".into(),
        ));
    }
    let (neg_v, u, neg_qvu, neg_quv) = b_word_parts(pair, &u, &v);
    Ok(free_reduce(assemble_b_word(
        &rel,
        pres.pair_word(pair, Sign::Minus, &neg_v)?,
        pres.pair_word(pair, Sign::Plus, &u)?,
        pres.pair_word(pair, Sign::Minus, &neg_qvu)?,
        pres.pair_word(pair, Sign::Plus, &neg_quv)?,
    )))
}

/// The linear Steinberg presentation on n >= 3 letters: generators
/// x_ij(a) for i != j and nonzero a, with additivity in a, commuting
/// non-overlapping positions, and the chain rule
/// ((x_ij(a), x_jl(b))) = x_il(ab).
pub fn linear_presentation(ring: &Ring, n: u32) -> Result<Presentation> {
    if n < 3 {
        return Err(Error::Presentation(
            "linear presentations need n >= 3; in rank two the commutator \
             schemas are empty and extra Weyl relations take over"
                .into(),
        ));
    }
    let mut b = PresBuilder::new(format!("linear-{n} over {}", ring.name()));
    let elts = ring.elements();
    let positions: Vec<(u32, u32)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    for &(i, j) in &positions {
        for a in &elts {
            if !a.is_zero() {
                b.add_linear_gen(i, j, a.clone());
            }
        }
    }
    for &(i, j) in &positions {
        for a in &elts {
            for a2 in &elts {
                let mut lhs = b.lword(i, j, a);
                lhs.extend(b.lword(i, j, a2));
                let rhs = b.lword(i, j, &(a + a2));
                b.relation("E1", lhs, rhs);
            }
        }
    }
    for &(i, j) in &positions {
        for &(k, l) in &positions {
            if j == k || l == i {
                continue;
            }
            for a in &elts {
                for a2 in &elts {
                    let w = comm_word(&b.lword(i, j, a), &b.lword(k, l, a2));
                    b.relator("E2", w);
                }
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                if i == j || j == l || i == l {
                    continue;
                }
                for a in &elts {
                    for a2 in &elts {
                        let lhs = comm_word(&b.lword(i, j, a), &b.lword(j, l, a2));
                        let rhs = b.lword(i, l, &(a * a2));
                        b.relation("E3", lhs, rhs);
                    }
                }
            }
        }
    }
    Ok(b.finish())
}

/// The root-graded presentation of a rectangular matrix pair: additivity
/// on each full side, commuting orthogonal root spaces, and the triple
/// shift ((((x_s(u), x_-s(v))), x_s(z))) = x_s(-{u v z}) across collinear
/// roots.
pub fn rect_ej_presentation(ring: &Ring, rows: u32, cols: u32) -> Result<Presentation> {
    let grading = grade_rect(ring, rows, cols)?;
    let pair = &grading.pair;
    let mut b = PresBuilder::new(format!(
        "rect-EJ {rows}x{cols} over {}",
        ring.name()
    ));
    for s in SIGNS {
        for x in pair.elements(s) {
            if !x.is_zero() {
                b.add_pair_gen(s, x);
            }
        }
    }
    for s in SIGNS {
        for u in pair.elements(s) {
            for u2 in pair.elements(s) {
                let mut lhs = b.pword(pair, s, &u);
                lhs.extend(b.pword(pair, s, &u2));
                let rhs = b.pword(pair, s, &pair.add(s, &u, &u2));
                b.relation("EJ1", lhs, rhs);
            }
        }
    }
    let roots: Vec<Root> = grading.grading.r1.iter().cloned().collect();
    for alpha in &roots {
        for beta in &roots {
            let rel = grading.grading.classify_pair(alpha, beta)?;
            match rel {
                RootRelation::Orthogonal => {
                    for u in sorted_span(&grading, alpha, Sign::Plus) {
                        for v in sorted_span(&grading, beta, Sign::Minus) {
                            let w = comm_word(
                                &b.pword(pair, Sign::Plus, &u),
                                &b.pword(pair, Sign::Minus, &v),
                            );
                            b.relator("EJ2", w);
                        }
                    }
                }
                RootRelation::Edge => {
                    for s in SIGNS {
                        for u in sorted_span(&grading, alpha, s) {
                            for v in sorted_span(&grading, beta, s.flip()) {
                                let inner =
                                    comm_word(&b.pword(pair, s, &u), &b.pword(pair, s.flip(), &v));
                                for z in pair.elements(s) {
                                    let lhs = comm_word(&inner, &b.pword(pair, s, &z));
                                    let t = pair.neg(s, &pair.triple(s, &u, &v, &z));
                                    let rhs = b.pword(pair, s, &t);
                                    b.relation("EJ3", lhs, rhs);
                                }
                            }
                        }
                    }
                }
                _ => {}
            }
        }
    }
    Ok(b.finish())
}

/// The Steinberg presentation of a root-graded Jordan pair: additivity on
/// each full side, commuting orthogonal root spaces, and the relations
/// conjugating x_s(z) by the word b(u, v) into the Bergmann image, for
/// homogeneous (u, v) across distinct roots and z running over the whole
/// side.  The grading is verified before anything is built.
pub fn jordan_st_presentation(grading: &RootGrading) -> Result<Presentation> {
    jordan_st(grading, true)
}

/// Same presentation with the orthogonal-root instances of the Bergmann
/// schema dropped; they are consequences of the commuting schema, and the
/// coset tables of the two presentations can be compared to confirm it.
pub fn jordan_st_reduced(grading: &RootGrading) -> Result<Presentation> {
    jordan_st(grading, false)
}

fn jordan_st(grading: &RootGrading, orthogonal_st3: bool) -> Result<Presentation> {
    let check = grading.verify_grading_suite();
    if !check.pass {
        return Err(Error::Grading(format!(
            "grading of {} failed verification: {}",
            grading.pair.name,
            check.witnesses.first().cloned().unwrap_or_default()
        )));
    }
    let pair = &grading.pair;
    let mut b = PresBuilder::new(format!(
        "jordan-St of {}{}",
        pair.name,
        if orthogonal_st3 { "" } else { " (reduced)" }
    ));
    for s in SIGNS {
        for x in pair.elements(s) {
            if !x.is_zero() {
                b.add_pair_gen(s, x);
            }
        }
    }
    for s in SIGNS {
        for u in pair.elements(s) {
            for u2 in pair.elements(s) {
                let mut lhs = b.pword(pair, s, &u);
                lhs.extend(b.pword(pair, s, &u2));
                let rhs = b.pword(pair, s, &pair.add(s, &u, &u2));
                b.relation("St1", lhs, rhs);
            }
        }
    }
    let roots: Vec<Root> = grading.grading.r1.iter().cloned().collect();
    for alpha in &roots {
        for beta in &roots {
            if matches!(
                grading.grading.classify_pair(alpha, beta)?,
                RootRelation::Orthogonal
            ) {
                for u in sorted_span(&grading, alpha, Sign::Plus) {
                    for v in sorted_span(&grading, beta, Sign::Minus) {
                        let w = comm_word(
                            &b.pword(pair, Sign::Plus, &u),
                            &b.pword(pair, Sign::Minus, &v),
                        );
                        b.relator("St2", w);
                    }
                }
            }
        }
    }
    for alpha in &roots {
        for beta in &roots {
            let rel = grading.grading.classify_pair(alpha, beta)?;
            if matches!(rel, RootRelation::Equal) {
                continue;
            }
            if !orthogonal_st3 && matches!(rel, RootRelation::Orthogonal) {
                continue;
            }
            for u in sorted_span(&grading, alpha, Sign::Plus) {
                for v in sorted_span(&grading, beta, Sign::Minus) {
                    let (neg_v, u_c, neg_qvu, neg_quv) = b_word_parts(pair, &u, &v);
                    let bw = assemble_b_word(
                        &rel,
                        b.pword(pair, Sign::Minus, &neg_v),
                        b.pword(pair, Sign::Plus, &u_c),
                        b.pword(pair, Sign::Minus, &neg_qvu),
                        b.pword(pair, Sign::Plus, &neg_quv),
                    );
                    let bw_inv = invert_word(&bw);
                    for z in pair.elements(Sign::Plus) {
                        let lhs = comm_word(&bw, &b.pword(pair, Sign::Plus, &z));
                        let t = pair.add(
                            Sign::Plus,
                            &pair.bergmann(Sign::Plus, &u, &v, &z),
                            &pair.neg(Sign::Plus, &z),
                        );
                        let rhs = b.pword(pair, Sign::Plus, &t);
                        b.relation("St3", lhs, rhs);
                    }
                    for y in pair.elements(Sign::Minus) {
                        let lhs = comm_word(&bw_inv, &b.pword(pair, Sign::Minus, &y));
                        let t = pair.add(
                            Sign::Minus,
                            &pair.bergmann(Sign::Minus, &v, &u, &y),
                            &pair.neg(Sign::Minus, &y),
                        );
                        let rhs = b.pword(pair, Sign::Minus, &t);
                        b.relation("St3", lhs, rhs);
                    }
                }
            }
        }
    }
    Ok(b.finish())
}

/// The Weyl-relator presentation of a division pair: generators x_s(a)
/// for all nonzero a on both sides, additivity, and
/// w_b x_-(a) w_b^-1 = x_+(Q_b a) where w_b = x_-(b^-1) x_+(b) x_-(b^-1).
pub fn stj_presentation(pair: &JordanPair) -> Result<Presentation> {
    if !is_division_pair(pair) {
        return Err(Error::Presentation(format!(
            "{} is not a division pair, so the Weyl elements w_b are not defined for every nonzero b",
            pair.name
        )));
    }
    let mut b = PresBuilder::new(format!("stJ of {}", pair.name));
    for s in SIGNS {
        for x in pair.elements(s) {
            if !x.is_zero() {
                b.add_pair_gen(s, x);
            }
        }
    }
    for s in SIGNS {
        for u in pair.elements(s) {
            for u2 in pair.elements(s) {
                let mut lhs = b.pword(pair, s, &u);
                lhs.extend(b.pword(pair, s, &u2));
                let rhs = b.pword(pair, s, &pair.add(s, &u, &u2));
                b.relation("W1", lhs, rhs);
            }
        }
    }
    for bb in pair.elements(Sign::Plus) {
        if bb.is_zero() {
            continue;
        }
        let binv = jordan_inverse(pair, Sign::Plus, &bb)?;
        let mut wb = b.pword(pair, Sign::Minus, &binv);
        wb.extend(b.pword(pair, Sign::Plus, &bb));
        wb.extend(b.pword(pair, Sign::Minus, &binv));
        for a in pair.elements(Sign::Minus) {
            let mut lhs = wb.clone();
            lhs.extend(b.pword(pair, Sign::Minus, &a));
            lhs.extend(invert_word(&wb));
            let rhs = b.pword(pair, Sign::Plus, &pair.q(Sign::Plus, &bb, &a));
            b.relation("W2", lhs, rhs);
        }
    }
    Ok(b.finish())
}

/// A generator assignment into some group, evaluated letter by letter.
pub struct Hom<E: GroupElement> {
    pub identity: E,
    pub images: Vec<E>,
}

impl<E: GroupElement> Hom<E> {
    pub fn new(pres: &Presentation, identity: E, images: Vec<E>) -> Result<Hom<E>> {
        if images.len() != pres.labels.len() {
            return Err(Error::Presentation(format!(
                "assignment covers {} of {} generators",
                images.len(),
                pres.labels.len()
            )));
        }
        Ok(Hom { identity, images })
    }

    pub fn eval(&self, word: &[i32]) -> E {
        let mut g = self.identity.clone();
        for &l in word {
            let im = &self.images[(l.unsigned_abs() - 1) as usize];
            g = if l > 0 { g.gmul(im) } else { g.gmul(&im.ginv()) };
        }
        g
    }
}

/// Check every stored relator against an assignment, without assuming the
/// target is enumerable.  Failures carry the offending word and schema.
pub fn verify_relators<E: GroupElement>(pres: &Presentation, hom: &Hom<E>) -> SuiteReport {
    let mut b = SuiteReport::start(format!("{}: relators", pres.name));
    b.counter("generators", pres.labels.len() as i64);
    b.counter("stored relators", pres.relators.len() as i64);
    for (schema, count) in &pres.schema_counts {
        b.counter(format!("{schema} instances"), *count);
    }
    for r in &pres.relators {
        let ok = hom.eval(&r.word) == hom.identity;
        b.check(ok, || {
            format!(
                "{} relator {} does not map to the identity",
                r.schema,
                pres.word_string(&r.word)
            )
        });
    }
    b.finish()
}

/// Verified surjection onto an enumerated target: every relator must map
/// to the identity and the images must generate the whole group.  The
/// closure budget caps the image enumeration.
pub fn evaluate_hom<E: GroupElement>(
    pres: &Presentation,
    target: &FiniteGroup<E>,
    images: Vec<E>,
    closure_budget: usize,
) -> Result<Hom<E>> {
    let hom = Hom::new(pres, target.identity.clone(), images)?;
    for r in &pres.relators {
        let g = hom.eval(&r.word);
        if g != hom.identity {
            return Err(Error::Presentation(format!(
                "{} relator {} maps to a nonidentity element of the target",
                r.schema,
                pres.word_string(&r.word)
            )));
        }
    }
    let image = FiniteGroup::closure(hom.identity.clone(), hom.images.clone(), closure_budget)?;
    if image.order() != target.order() {
        return Err(Error::Presentation(format!(
            "assignment generates a subgroup of order {} inside a target of order {}",
            image.order(),
            target.order()
        )));
    }
    Ok(hom)
}

/// x_ij(a) to the elementary matrix e_ij(a).
pub fn linear_el_images(ring: &Ring, n: u32, pres: &Presentation) -> Result<Vec<ElMat>> {
    pres.labels
        .iter()
        .map(|l| match l {
            GenLabel::Linear { i, j, a } => Ok(elementary(ring, n, *i, *j, a)),
            _ => Err(Error::Presentation(
                "elementary images need position-labelled generators".into(),
            )),
        })
        .collect()
}

/// x_+(u), x_-(v) to the block unipotents of the (rows + cols)-square
/// matrix group; the minus side carries the sign baked into e_-.
pub fn rect_el_images(
    ring: &Ring,
    rows: u32,
    cols: u32,
    pres: &Presentation,
) -> Result<Vec<ElMat>> {
    pres.labels
        .iter()
        .map(|l| match l {
            GenLabel::Pair { sign: Sign::Plus, elt } => Ok(e_plus(ring, rows, cols, elt)),
            GenLabel::Pair { sign: Sign::Minus, elt } => Ok(e_minus(ring, rows, cols, elt)),
            _ => Err(Error::Presentation(
                "block images need pair-labelled generators".into(),
            )),
        })
        .collect()
}

/// x_s(u) to the exponential automorphism of the pair's TKK algebra.
pub fn exp_images(alg: &TkkAlgebra, pres: &Presentation) -> Result<Vec<PeMat>> {
    pres.labels
        .iter()
        .map(|l| match l {
            GenLabel::Pair { sign, elt } => Ok(PeMat(alg.exp_aut(*sign, elt)?)),
            _ => Err(Error::Presentation(
                "exponential images need pair-labelled generators".into(),
            )),
        })
        .collect()
}

/// Generator elimination in the elementary group of an (I, J) block
/// split: positions inside the row block rewrite through any column
/// index, positions inside the column block rewrite with a sign through
/// any row index.  Confirms that eliminating the 0-part generators of the
/// square presentation lands on the same matrices either way.
pub fn verify_phi_triangle(ring: &Ring, rows: u32, cols: u32) -> SuiteReport {
    let n = rows + cols;
    let mut b = SuiteReport::start(format!(
        "generator elimination in EL_{n}({}) split {rows}+{cols}",
        ring.name()
    ));
    let one = ring.one();
    let mut row_block = 0i64;
    let mut col_block = 0i64;
    for k in 0..rows {
        for l in 0..rows {
            if k == l {
                continue;
            }
            for j in rows..n {
                for a in ring.elements() {
                    row_block += 1;
                    let lhs = elementary(ring, n, k, l, &a);
                    let rhs = commutator(
                        &elementary(ring, n, k, j, &a),
                        &elementary(ring, n, j, l, &one),
                    );
                    b.check(lhs == rhs, || {
                        format!("row-block rewriting fails at x_{k}{l}({a:?}) through {j}")
                    });
                }
            }
        }
    }
    for k in rows..n {
        for l in rows..n {
            if k == l {
                continue;
            }
            for i in 0..rows {
                for a in ring.elements() {
                    col_block += 1;
                    let lhs = elementary(ring, n, k, l, &a);
                    let rhs = commutator(
                        &elementary(ring, n, i, l, &(-&a)),
                        &elementary(ring, n, k, i, &one),
                    );
                    b.check(lhs == rhs, || {
                        format!("column-block rewriting fails at x_{k}{l}({a:?}) through {i}")
                    });
                }
            }
        }
    }
    b.counter("row-block instances", row_block);
    b.counter("column-block instances", col_block);
    if row_block == 0 {
        b.note("row block is a single index; nothing to rewrite there");
    }
    if col_block == 0 {
        b.note("column block is a single index; nothing to rewrite there");
    }
    b.finish()
}

/// In any target where the relators hold, x_+(u) x_-(v) factors as
/// x_-(v + Q_v u) b(u, v) x_+(u + Q_u v) for homogeneous u, v across
/// distinct roots.  Checked by evaluating both sides under `hom`.
pub fn verify_b_factorization<E: GroupElement>(
    grading: &RootGrading,
    pres: &Presentation,
    hom: &Hom<E>,
) -> Result<SuiteReport> {
    let pair = &grading.pair;
    let mut b = SuiteReport::start(format!("{}: splitting x+(u) x-(v)", pres.name));
    let roots: Vec<Root> = grading.grading.r1.iter().cloned().collect();
    for alpha in &roots {
        for beta in &roots {
            if alpha == beta {
                continue;
            }
            let rel = grading.grading.classify_pair(alpha, beta)?;
            for u in sorted_span(grading, alpha, Sign::Plus) {
                for v in sorted_span(grading, beta, Sign::Minus) {
                    let (neg_v, u_c, neg_qvu, neg_quv) = b_word_parts(pair, &u, &v);
                    let bw = assemble_b_word(
                        &rel,
                        pres.pair_word(pair, Sign::Minus, &neg_v)?,
                        pres.pair_word(pair, Sign::Plus, &u_c)?,
                        pres.pair_word(pair, Sign::Minus, &neg_qvu)?,
                        pres.pair_word(pair, Sign::Plus, &neg_quv)?,
                    );
                    let mut lhs = pres.pair_word(pair, Sign::Plus, &u)?;
                    lhs.extend(pres.pair_word(pair, Sign::Minus, &v)?);
                    let vq = pair.add(Sign::Minus, &v, &pair.q(Sign::Minus, &v, &u));
                    let uq = pair.add(Sign::Plus, &u, &pair.q(Sign::Plus, &u, &v));
                    let mut rhs = pres.pair_word(pair, Sign::Minus, &vq)?;
                    rhs.extend(bw);
                    rhs.extend(pres.pair_word(pair, Sign::Plus, &uq)?);
                    b.check(hom.eval(&lhs) == hom.eval(&rhs), || {
                        format!("factorization fails at u = {u:?}, v = {v:?}")
                    });
                }
            }
        }
    }
    Ok(b.finish())
}

/// Under the exponential assignment, the word b(u, v) must act on the TKK
/// algebra as the inner automorphism (B(u, v), B(v, u)^-1), whenever that
/// Bergmann pair is invertible.
pub fn verify_b_projection(
    alg: &TkkAlgebra,
    grading: &RootGrading,
    pres: &Presentation,
) -> Result<SuiteReport> {
    let pair = &grading.pair;
    let images = exp_images(alg, pres)?;
    let identity = PeMat(crate::linalg::DenseMat::identity(alg.p, alg.dim()));
    let hom = Hom::new(pres, identity, images)?;
    let mut b = SuiteReport::start(format!("{}: b(u, v) acts as the Bergmann pair", pres.name));
    let mut skipped = 0i64;
    let mut checked = 0i64;
    let roots: Vec<Root> = grading.grading.r1.iter().cloned().collect();
    for alpha in &roots {
        for beta in &roots {
            if alpha == beta {
                continue;
            }
            let rel = grading.grading.classify_pair(alpha, beta)?;
            for u in sorted_span(grading, alpha, Sign::Plus) {
                for v in sorted_span(grading, beta, Sign::Minus) {
                    let mut plus_map = HashMap::new();
                    for z in pair.elements(Sign::Plus) {
                        let bz = pair.bergmann(Sign::Plus, &u, &v, &z);
                        plus_map.insert(z, bz);
                    }
                    let mut minus_fwd = HashMap::new();
                    for y in pair.elements(Sign::Minus) {
                        let by = pair.bergmann(Sign::Minus, &v, &u, &y);
                        minus_fwd.insert(y, by);
                    }
                    let plus_vals: HashSet<&FinMatrix> = plus_map.values().collect();
                    let minus_vals: HashSet<&FinMatrix> = minus_fwd.values().collect();
                    if plus_vals.len() != plus_map.len() || minus_vals.len() != minus_fwd.len() {
                        skipped += 1;
                        continue;
                    }
                    let minus_inv: HashMap<FinMatrix, FinMatrix> =
                        minus_fwd.into_iter().map(|(k, w)| (w, k)).collect();
                    checked += 1;
                    let pm = match PairMap::new(pair, pair, plus_map, minus_inv) {
                        Ok(pm) => pm,
                        Err(e) => {
                            b.check(false, || {
                                format!("(B(u, v), B(v, u)^-1) at u = {u:?}, v = {v:?} is not an automorphism: {e:?}")
                            });
                            continue;
                        }
                    };
                    let mat = alg.pair_aut(&pm)?;
                    let (neg_v, u_c, neg_qvu, neg_quv) = b_word_parts(pair, &u, &v);
                    let bw = assemble_b_word(
                        &rel,
                        pres.pair_word(pair, Sign::Minus, &neg_v)?,
                        pres.pair_word(pair, Sign::Plus, &u_c)?,
                        pres.pair_word(pair, Sign::Minus, &neg_qvu)?,
                        pres.pair_word(pair, Sign::Plus, &neg_quv)?,
                    );
                    b.check(hom.eval(&bw) == PeMat(mat), || {
                        format!("b-word image differs from the Bergmann action at u = {u:?}, v = {v:?}")
                    });
                }
            }
        }
    }
    b.counter("pairs checked", checked);
    b.counter("skipped, Bergmann operator not invertible", skipped);
    Ok(b.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grading::{grade_hermitian, grade_rect};
    use crate::jordan::JordanPair;
    use crate::matrix::el_group;
    use crate::pegroup::pe_group;
    use crate::ring::Ring;
    use crate::tkk::tkk_build;

    fn fp(p: u32) -> Ring {
        Ring::fp(p).unwrap()
    }

    #[test]
    fn word_helpers_reduce_and_invert() {
        assert_eq!(free_reduce(vec![1, 2, -2, -1]), Vec::<i32>::new());
        assert_eq!(free_reduce(vec![1, -2, 2, 3]), vec![1, 3]);
        assert_eq!(invert_word(&[1, -2, 3]), vec![-3, 2, -1]);
        let c = comm_word(&[1], &[2]);
        assert_eq!(c, vec![1, 2, -1, -2]);
    }

    #[test]
    fn linear_presentation_has_the_expected_shape() {
        let pres = linear_presentation(&fp(2), 3).unwrap();
        assert_eq!(pres.n_gens(), 6);
        let count = |s: &str| {
            pres.schema_counts
                .iter()
                .find(|(k, _)| k == s)
                .map(|(_, v)| *v)
                .unwrap_or(0)
        };
        // 6 positions x |A|^2 additivity instances; 6 x 3 compatible
        // position pairs x |A|^2 for the commuting schema; 6 ordered index
        // triples x |A|^2 for the chain rule.
        assert_eq!(count("E1"), 24);
        assert_eq!(count("E2"), 72);
        assert_eq!(count("E3"), 24);
        assert!(matches!(
            linear_presentation(&fp(2), 2),
            Err(Error::Presentation(_))
        ));
    }

    #[test]
    fn linear_relators_hold_in_the_elementary_group() {
        let ring = fp(2);
        let pres = linear_presentation(&ring, 3).unwrap();
        let el = el_group(&ring, 3, 200).unwrap();
        let images = linear_el_images(&ring, 3, &pres).unwrap();
        let hom = evaluate_hom(&pres, &el, images, 200).unwrap();
        assert_eq!(hom.images.len(), 6);
    }

    #[test]
    fn rect_block_images_satisfy_the_graded_relators() {
        let ring = fp(2);
        let pres = rect_ej_presentation(&ring, 1, 2).unwrap();
        assert_eq!(pres.n_gens(), 6);
        let el = el_group(&ring, 3, 200).unwrap();
        let images = rect_el_images(&ring, 1, 2, &pres).unwrap();
        evaluate_hom(&pres, &el, images, 200).unwrap();
    }

    #[test]
    fn jordan_st_relators_hold_under_the_exponential_assignment() {
        let grading = grade_hermitian(&fp(2), 2).unwrap();
        let pres = jordan_st_presentation(&grading).unwrap();
        let count = |s: &str| {
            pres.schema_counts
                .iter()
                .find(|(k, _)| k == s)
                .map(|(_, v)| *v)
                .unwrap_or(0)
        };
        // |V+|^2 + |V-|^2 additivity instances; 2 orthogonal ordered root
        // pairs with 2 x 2 homogeneous elements each; the Bergmann schema
        // runs over 6 ordered root pairs x 4 homogeneous (u, v) x 16 pair
        // elements.
        assert_eq!(count("St1"), 128);
        assert_eq!(count("St2"), 8);
        assert_eq!(count("St3"), 384);
        let alg = tkk_build(&grading.pair).unwrap();
        let images = exp_images(&alg, &pres).unwrap();
        let identity = PeMat(crate::linalg::DenseMat::identity(alg.p, alg.dim()));
        let hom = Hom::new(&pres, identity, images).unwrap();
        let rep = verify_relators(&pres, &hom);
        assert!(rep.pass, "{:?}", rep.witnesses);
        // The reduced variant drops exactly the orthogonal Bergmann
        // instances: two root pairs x 4 elements x 16 targets.
        let reduced = jordan_st_reduced(&grading).unwrap();
        let rcount = |s: &str| {
            reduced
                .schema_counts
                .iter()
                .find(|(k, _)| k == s)
                .map(|(_, v)| *v)
                .unwrap_or(0)
        };
        assert_eq!(rcount("St3"), 384 - 128);
    }

    #[test]
    fn stj_needs_a_division_pair_and_maps_onto_pe() {
        let rect = JordanPair::rect(&fp(2), 1, 2);
        assert!(matches!(stj_presentation(&rect), Err(Error::Presentation(_))));

        for (p, order) in [(2u32, 6usize), (3, 12)] {
            let pair = JordanPair::full(&fp(p));
            let pres = stj_presentation(&pair).unwrap();
            let alg = tkk_build(&pair).unwrap();
            let pe = pe_group(&alg, 64).unwrap();
            assert_eq!(pe.order(), order);
            let images = exp_images(&alg, &pres).unwrap();
            evaluate_hom(&pres, &pe, images, 64).unwrap();
        }
    }

    #[test]
    fn b_words_follow_the_root_relation_case_split() {
        // Hermitian 2x2 over F_2: both arrow directions appear.
        let grading = grade_hermitian(&fp(2), 2).unwrap();
        let pair = grading.pair.clone();
        let pres = jordan_st_presentation(&grading).unwrap();
        let ring = fp(2);
        let one = ring.one();
        let e11 = FinMatrix::single(&ring, 0, 0, one.clone());
        let e22 = FinMatrix::single(&ring, 1, 1, one.clone());
        let mut off = FinMatrix::single(&ring, 0, 1, one.clone());
        off.set_entry(1, 0, one.clone());

        // Long root against short root: leading minus-side correction.
        let w_out = b_word(&pres, &grading, &e11, &off).unwrap();
        assert_eq!(w_out.len(), 5);
        assert!(w_out[0] < 0 || w_out[0] > 0);
        let first = &pres.labels[(w_out[0].unsigned_abs() - 1) as usize];
        match first {
            GenLabel::Pair { sign, elt } => {
                assert_eq!(*sign, Sign::Minus);
                assert_eq!(*elt, pair.canon(Sign::Minus, e22.clone()));
            }
            _ => panic!("expected a pair generator"),
        }

        // Short against long: trailing plus-side correction.
        let w_in = b_word(&pres, &grading, &off, &e11).unwrap();
        assert_eq!(w_in.len(), 5);
        let last = &pres.labels[(w_in[4].unsigned_abs() - 1) as usize];
        match last {
            GenLabel::Pair { sign, elt } => {
                assert_eq!(*sign, Sign::Plus);
                assert_eq!(*elt, pair.canon(Sign::Plus, e22.clone()));
            }
            _ => panic!("expected a pair generator"),
        }

        // Orthogonal roots commute outright.
        assert!(b_word(&pres, &grading, &e11, &e22).unwrap().is_empty());
        // Equal roots are excluded.
        assert!(b_word(&pres, &grading, &e11, &e11).is_err());
        // Zero on either side gives the empty word.
        assert!(b_word(&pres, &grading, &pair.zero(Sign::Plus), &off)
            .unwrap()
            .is_empty());

        // Collinear roots in the rectangular 1x2 pair: the bare commutator.
        let rg = grade_rect(&ring, 1, 2).unwrap();
        let rpres = jordan_st_presentation(&rg).unwrap();
        let u = FinMatrix::single(&ring, 0, 0, one.clone());
        let v = FinMatrix::single(&ring, 1, 0, one.clone());
        let w_edge = b_word(&rpres, &rg, &u, &v).unwrap();
        assert_eq!(w_edge.len(), 4);
    }

    #[test]
    fn generator_elimination_matches_direct_elementaries() {
        for (p, rows, cols) in [(2u32, 1u32, 2u32), (3, 1, 2), (2, 2, 1), (2, 2, 2)] {
            let rep = verify_phi_triangle(&fp(p), rows, cols);
            assert!(rep.pass, "{:?}", rep.witnesses);
        }
        let rep = verify_phi_triangle(&fp(3), 1, 2);
        assert!(rep.notes.iter().any(|n| n.contains("single index")));
    }

    #[test]
    fn the_unipotent_product_splits_through_the_b_word() {
        // In the block matrix group.
        let ring = fp(2);
        let grading = grade_rect(&ring, 1, 2).unwrap();
        let pres = jordan_st_presentation(&grading).unwrap();
        let images = rect_el_images(&ring, 1, 2, &pres).unwrap();
        let hom = Hom::new(&pres, ElMat::identity(&ring, 3), images).unwrap();
        let rep = verify_b_factorization(&grading, &pres, &hom).unwrap();
        assert!(rep.pass, "{:?}", rep.witnesses);

        // In the projective elementary group, including arrow cases.
        let grading = grade_hermitian(&fp(2), 2).unwrap();
        let pres = jordan_st_presentation(&grading).unwrap();
        let alg = tkk_build(&grading.pair).unwrap();
        let images = exp_images(&alg, &pres).unwrap();
        let identity = PeMat(crate::linalg::DenseMat::identity(alg.p, alg.dim()));
        let hom = Hom::new(&pres, identity, images).unwrap();
        let rep = verify_b_factorization(&grading, &pres, &hom).unwrap();
        assert!(rep.pass, "{:?}", rep.witnesses);
    }

    #[test]
    fn b_words_act_as_bergmann_pairs_on_the_tkk_algebra() {
        for grading in [
            grade_rect(&fp(2), 1, 2).unwrap(),
            grade_rect(&fp(3), 1, 2).unwrap(),
            grade_hermitian(&fp(2), 2).unwrap(),
        ] {
            let pres = jordan_st_presentation(&grading).unwrap();
            let alg = tkk_build(&grading.pair).unwrap();
            let rep = verify_b_projection(&alg, &grading, &pres).unwrap();
            assert!(rep.pass, "{}: {:?}", grading.pair.name, rep.witnesses);
            let skipped = rep
                .counters
                .iter()
                .find(|(k, _)| k.starts_with("skipped"))
                .map(|(_, v)| *v)
                .unwrap();
            assert_eq!(skipped, 0, "every cross-root Bergmann pair is invertible");
        }
    }

    #[test]
    fn bad_assignments_are_rejected_with_witnesses() {
        let ring = fp(2);
        let pres = linear_presentation(&ring, 3).unwrap();
        let el = el_group(&ring, 3, 200).unwrap();

        // Constant assignment: relators hold, image is trivial.
        let ids = vec![el.identity.clone(); pres.n_gens()];
        match evaluate_hom(&pres, &el, ids, 200) {
            Err(Error::Presentation(msg)) => assert!(msg.contains("subgroup of order 1")),
            other => panic!("expected a surjectivity failure, got {:?}", other.is_ok()),
        }

        // Scrambled assignment: some relator must break.
        let mut images = linear_el_images(&ring, 3, &pres).unwrap();
        images.swap(0, 1);
        match evaluate_hom(&pres, &el, images, 200) {
            Err(Error::Presentation(msg)) => {
                assert!(msg.contains("nonidentity"), "{msg}");
            }
            other => panic!("expected a relator failure, got {:?}", other.is_ok()),
        }
    }

    #[test]
    fn export_lists_generators_then_relators() {
        let pres = stj_presentation(&JordanPair::full(&fp(2))).unwrap();
        let text = pres.export_text();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "xp_1 xm_2");
        assert_eq!(text.lines().count(), pres.relators.len() + 1);
    }
}
