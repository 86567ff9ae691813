//! Classical locally finite root systems with 0, and their 3-gradings.
//!
//! Roots are integer vectors in the free lattice on basis symbols e_i,
//! stored sparsely. The classical families A, B, C, D, BC are enumerated
//! directly from their e_i descriptions; a 3-grading splits R into
//! R = R_1 u R_0 u R_-1 with R_-1 = -R_1.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::Error;
use crate::report::SuiteReport;
use crate::Result;

/// Sparse integer vector in the root lattice: sorted (label, coeff) pairs,
/// zero coefficients removed.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Root(Vec<(u32, i64)>);

impl Root {
    pub fn zero() -> Root {
        Root(Vec::new())
    }

    /// e_i
    pub fn eps(i: u32) -> Root {
        Root(vec![(i, 1)])
    }

    pub fn from_pairs(pairs: &[(u32, i64)]) -> Root {
        let mut v: Vec<(u32, i64)> = pairs.iter().copied().filter(|&(_, c)| c != 0).collect();
        v.sort_by_key(|&(l, _)| l);
        Root(v)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, label: u32) -> i64 {
        self.0
            .iter()
            .find(|&&(l, _)| l == label)
            .map(|&(_, c)| c)
            .unwrap_or(0)
    }

    pub fn add(&self, rhs: &Root) -> Root {
        let mut pairs: Vec<(u32, i64)> = self.0.clone();
        for &(l, c) in &rhs.0 {
            match pairs.iter_mut().find(|(pl, _)| *pl == l) {
                Some((_, pc)) => *pc += c,
                None => pairs.push((l, c)),
            }
        }
        Root::from_pairs(&pairs)
    }

    pub fn neg(&self) -> Root {
        Root(self.0.iter().map(|&(l, c)| (l, -c)).collect())
    }

    pub fn sub(&self, rhs: &Root) -> Root {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, k: i64) -> Root {
        if k == 0 {
            return Root::zero();
        }
        Root(self.0.iter().map(|&(l, c)| (l, k * c)).collect())
    }

    /// Standard inner product (e_i | e_j) = delta_ij.
    pub fn dot(&self, rhs: &Root) -> i64 {
        let mut s = 0;
        for &(l, c) in &self.0 {
            s += c * rhs.coeff(l);
        }
        s
    }
}

impl fmt::Debug for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for &(l, c) in &self.0 {
            let sign = if c < 0 {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let mag = c.abs();
            if mag == 1 {
                write!(f, "{sign}e{l}")?;
            } else {
                write!(f, "{sign}{mag}e{l}")?;
            }
            first = false;
        }
        Ok(())
    }
}

/// The classical families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    BC,
}

/// A finite chunk of a classical root system, 0 included.
#[derive(Debug, Clone)]
pub struct RootSystem {
    pub family: Family,
    pub rank: u32,
    pub roots: BTreeSet<Root>,
}

/// Enumerates the root system of the family on labels 0..rank.
pub fn make_root_system(family: Family, rank: u32) -> Result<RootSystem> {
    let need = match family {
        Family::A => 2,
        _ => 1,
    };
    if rank < need {
        return Err(Error::Roots(format!("family {family:?} needs rank >= {need}")));
    }
    let mut roots = BTreeSet::new();
    roots.insert(Root::zero());
    let labels: Vec<u32> = (0..rank).collect();
    let add_a = |roots: &mut BTreeSet<Root>| {
        for &i in &labels {
            for &j in &labels {
                if i != j {
                    roots.insert(Root::eps(i).sub(&Root::eps(j)));
                }
            }
        }
    };
    let add_d = |roots: &mut BTreeSet<Root>, labels: &[u32]| {
        for (a, &i) in labels.iter().enumerate() {
            for &j in labels.iter().skip(a + 1) {
                let r = Root::eps(i).add(&Root::eps(j));
                roots.insert(r.neg());
                roots.insert(r);
            }
        }
    };
    let add_short = |roots: &mut BTreeSet<Root>, labels: &[u32]| {
        for &i in labels {
            roots.insert(Root::eps(i));
            roots.insert(Root::eps(i).neg());
        }
    };
    let add_long = |roots: &mut BTreeSet<Root>, labels: &[u32]| {
        for &i in labels {
            roots.insert(Root::eps(i).scale(2));
            roots.insert(Root::eps(i).scale(-2));
        }
    };
    match family {
        Family::A => add_a(&mut roots),
        Family::D => {
            add_a(&mut roots);
            add_d(&mut roots, &labels);
        }
        Family::B => {
            add_a(&mut roots);
            add_d(&mut roots, &labels);
            add_short(&mut roots, &labels);
        }
        Family::C => {
            add_a(&mut roots);
            add_d(&mut roots, &labels);
            add_long(&mut roots, &labels);
        }
        Family::BC => {
            add_a(&mut roots);
            add_d(&mut roots, &labels);
            add_short(&mut roots, &labels);
            add_long(&mut roots, &labels);
        }
    }
    Ok(RootSystem { family, rank, roots })
}

impl RootSystem {
    pub fn contains(&self, r: &Root) -> bool {
        self.roots.contains(r)
    }
    pub fn nonzero(&self) -> impl Iterator<Item = &Root> {
        self.roots.iter().filter(|r| !r.is_zero())
    }
}

/// Cartan pairing <x, a^> = 2(x|a)/(a|a); errors when not an integer.
pub fn pairing(x: &Root, alpha: &Root) -> Result<i64> {
    let den = alpha.dot(alpha);
    if den == 0 {
        return Err(Error::Roots("pairing against the zero root".into()));
    }
    let num = 2 * x.dot(alpha);
    if num % den != 0 {
        return Err(Error::NonIntegralPairing);
    }
    Ok(num / den)
}

/// Reflection s_a(x) = x - <x, a^> a.
pub fn reflect(x: &Root, alpha: &Root) -> Result<Root> {
    let k = pairing(x, alpha)?;
    Ok(x.sub(&alpha.scale(k)))
}

/// Mutual position of two roots of R_1 in a 3-graded system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RootRelation {
    Equal,
    /// <a, b^> = 0
    Orthogonal,
    /// <a, b^> = 1 = <b, a^>
    Edge,
    /// <a, b^> = 2, <b, a^> = 1
    ArrowOut,
    /// <a, b^> = 1, <b, a^> = 2
    ArrowIn,
}

/// The five 3-grading kinds of the classical families.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum GradingKind {
    /// R_1 = { e_i - e_j : i in I, j outside I } on family A.
    RectangularA { i_set: BTreeSet<u32> },
    /// R_1 = { e_0 } u { e_0 +- e_i : i != 0 } on family B.
    OddQuadratic,
    /// R_1 = { e_i + e_j : i <= j } on family C.
    Hermitian,
    /// R_1 = { e_0 +- e_i : i != 0 } on family D.
    EvenQuadratic,
    /// R_1 = { e_i + e_j : i < j } on family D.
    Alternating,
}

/// A 3-grading R = R_1 u R_0 u R_-1.
#[derive(Debug, Clone)]
pub struct ThreeGrading {
    pub system: RootSystem,
    pub kind: GradingKind,
    pub r1: BTreeSet<Root>,
}

/// Builds the named grading on the matching family/rank.
pub fn make_three_grading(kind: GradingKind, rank: u32) -> Result<ThreeGrading> {
    let (family, r1): (Family, BTreeSet<Root>) = match &kind {
        GradingKind::RectangularA { i_set } => {
            if i_set.is_empty() || i_set.iter().any(|&i| i >= rank) || i_set.len() as u32 == rank {
                return Err(Error::Roots("I must be a proper nonempty subset of 0..rank".into()));
            }
            let mut r1 = BTreeSet::new();
            for &i in i_set {
                for j in 0..rank {
                    if !i_set.contains(&j) {
                        r1.insert(Root::eps(i).sub(&Root::eps(j)));
                    }
                }
            }
            (Family::A, r1)
        }
        GradingKind::OddQuadratic => {
            if rank < 2 {
                return Err(Error::Roots("odd quadratic grading needs rank >= 2".into()));
            }
            let mut r1 = BTreeSet::new();
            r1.insert(Root::eps(0));
            for i in 1..rank {
                r1.insert(Root::eps(0).add(&Root::eps(i)));
                r1.insert(Root::eps(0).sub(&Root::eps(i)));
            }
            (Family::B, r1)
        }
        GradingKind::Hermitian => {
            let mut r1 = BTreeSet::new();
            for i in 0..rank {
                for j in i..rank {
                    r1.insert(Root::eps(i).add(&Root::eps(j)));
                }
            }
            (Family::C, r1)
        }
        GradingKind::EvenQuadratic => {
            if rank < 2 {
                return Err(Error::Roots("even quadratic grading needs rank >= 2".into()));
            }
            let mut r1 = BTreeSet::new();
            for i in 1..rank {
                r1.insert(Root::eps(0).add(&Root::eps(i)));
                r1.insert(Root::eps(0).sub(&Root::eps(i)));
            }
            (Family::D, r1)
        }
        GradingKind::Alternating => {
            if rank < 2 {
                return Err(Error::Roots("alternating grading needs rank >= 2".into()));
            }
            let mut r1 = BTreeSet::new();
            for i in 0..rank {
                for j in (i + 1)..rank {
                    r1.insert(Root::eps(i).add(&Root::eps(j)));
                }
            }
            (Family::D, r1)
        }
    };
    let system = make_root_system(family, rank)?;
    for r in &r1 {
        if !system.contains(r) {
            return Err(Error::Roots(format!("{r:?} escaped the ambient system")));
        }
    }
    Ok(ThreeGrading { system, kind, r1 })
}

impl ThreeGrading {
    /// Grading component of a root: 1, 0 or -1; None for non-roots.
    pub fn part(&self, r: &Root) -> Option<i8> {
        if self.r1.contains(r) {
            Some(1)
        } else if self.r1.contains(&r.neg()) {
            Some(-1)
        } else if self.system.contains(r) {
            Some(0)
        } else {
            None
        }
    }

    pub fn r0(&self) -> BTreeSet<Root> {
        self.system
            .roots
            .iter()
            .filter(|r| self.part(r) == Some(0))
            .cloned()
            .collect()
    }

    /// Classifies an ordered pair of roots of R_1.
    pub fn classify_pair(&self, a: &Root, b: &Root) -> Result<RootRelation> {
        if !self.r1.contains(a) || !self.r1.contains(b) {
            return Err(Error::Roots("classify_pair arguments must lie in R1".into()));
        }
        if a == b {
            return Ok(RootRelation::Equal);
        }
        let ab = pairing(a, b)?;
        let ba = pairing(b, a)?;
        match (ab, ba) {
            (0, 0) => Ok(RootRelation::Orthogonal),
            (1, 1) => Ok(RootRelation::Edge),
            (2, 1) => Ok(RootRelation::ArrowOut),
            (1, 2) => Ok(RootRelation::ArrowIn),
            _ => Err(Error::Roots(format!(
                "pair ({a:?}, {b:?}) has pairing pattern ({ab}, {ba}) outside a 3-grading"
            ))),
        }
    }

    /// Writes mu in R_0 as a - b with a, b in R_1 joined by an edge,
    /// choosing the smallest such a in root order.
    pub fn decompose_r0(&self, mu: &Root) -> Result<(Root, Root)> {
        if self.part(mu) != Some(0) {
            return Err(Error::Roots(format!("{mu:?} is not in R0")));
        }
        for a in &self.r1 {
            let b = a.sub(mu);
            if self.r1.contains(&b) && self.classify_pair(a, &b)? == RootRelation::Edge {
                return Ok((a.clone(), b));
            }
        }
        Err(Error::NoDecomposition)
    }
}

/// Root system axioms: 0 present, integral pairings, reflection invariance.
pub fn verify_root_axioms(sys: &RootSystem) -> SuiteReport {
    let mut suite = SuiteReport::start(format!("root axioms {:?} rank {}", sys.family, sys.rank));
    suite.check(sys.roots.contains(&Root::zero()), || "0 missing from R".into());
    let roots: Vec<&Root> = sys.roots.iter().collect();
    for a in sys.nonzero() {
        suite.check(matches!(pairing(a, a), Ok(2)), || format!("<a,a^> != 2 for {a:?}"));
        for x in &roots {
            match reflect(x, a) {
                Ok(img) => suite.check(sys.contains(&img), || {
                    format!("s_{a:?}({x:?}) = {img:?} not in R")
                }),
                Err(_) => suite.check(false, || format!("pairing <{x:?},{a:?}^> non-integral")),
            }
        }
        // s_a is an involution and preserves the form
        for x in &roots {
            let sx = reflect(x, a).unwrap();
            suite.check(
                reflect(&sx, a).map(|y| y == **x).unwrap_or(false),
                || format!("s_{a:?} not involutive at {x:?}"),
            );
            for y in &roots {
                let sy = reflect(y, a).unwrap();
                suite.check(sx.dot(&sy) == x.dot(y), || {
                    format!("s_{a:?} does not preserve (.|.) at ({x:?},{y:?})")
                });
            }
        }
    }
    suite.finish()
}

/// 3-grading axioms: R_-1 = -R_1, additivity of parts, R_0 = R_1 - R_1,
/// plus the pair trichotomy and the 2a-b membership law.
pub fn verify_grading_axioms(g: &ThreeGrading) -> SuiteReport {
    let mut suite = SuiteReport::start(format!("3-grading axioms {:?}", g.kind));
    // parts partition R
    for r in &g.system.roots {
        suite.check(g.part(r).is_some(), || format!("{r:?} has no part"));
    }
    let r1: Vec<&Root> = g.r1.iter().collect();
    // R1 and -R1 are disjoint (0 not in R1 in particular)
    for a in &r1 {
        suite.check(!g.r1.contains(&a.neg()), || format!("R1 meets -R1 at {a:?}"));
    }
    // additivity: parts add whenever the sum is a root
    let parts: Vec<(Root, i8)> = g
        .system
        .roots
        .iter()
        .map(|r| (r.clone(), g.part(r).unwrap()))
        .collect();
    for (x, px) in &parts {
        for (y, py) in &parts {
            let s = x.add(y);
            if g.system.contains(&s) {
                let ps = g.part(&s).unwrap() as i16;
                let want = *px as i16 + *py as i16;
                // a sum of parts outside {-1,0,1} means the sum may not be a root at all
                suite.check(want.abs() <= 1 && ps == want, || {
                    format!("part({x:?}+{y:?}) = {ps}, parts sum to {want}")
                });
            }
        }
    }
    // R0 = R1 - R1
    for mu in g.r0() {
        if mu.is_zero() {
            continue;
        }
        let ok = r1.iter().any(|a| g.r1.contains(&a.sub(&mu)));
        suite.check(ok, || format!("{mu:?} in R0 is not a difference of R1 roots"));
    }
    // trichotomy: every ordered R1 pair falls in exactly one relation class
    for a in &r1 {
        for b in &r1 {
            suite.check(g.classify_pair(a, b).is_ok(), || {
                format!("({a:?},{b:?}) not classifiable")
            });
        }
    }
    // 2a - b law: 2a-b in R iff 2a-b in R1 iff (a = b or a <- b)
    for a in &r1 {
        for b in &r1 {
            let t = a.scale(2).sub(b);
            let in_r = g.system.contains(&t);
            let in_r1 = g.r1.contains(&t);
            let rel = g.classify_pair(a, b).unwrap();
            let expect = *a == *b || rel == RootRelation::ArrowIn;
            suite.check(in_r == in_r1 && in_r1 == expect, || {
                format!("2a-b law fails at a={a:?} b={b:?} (in R: {in_r}, in R1: {in_r1}, rel {rel:?})")
            });
        }
    }
    suite.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eps(i: u32) -> Root {
        Root::eps(i)
    }

    #[test]
    fn family_sizes() {
        // nonzero root counts for small ranks
        assert_eq!(make_root_system(Family::A, 3).unwrap().nonzero().count(), 6);
        assert_eq!(make_root_system(Family::C, 2).unwrap().nonzero().count(), 8);
        assert_eq!(make_root_system(Family::BC, 2).unwrap().nonzero().count(), 12);
        assert_eq!(make_root_system(Family::D, 4).unwrap().nonzero().count(), 24);
        assert_eq!(make_root_system(Family::B, 3).unwrap().nonzero().count(), 18);
    }

    #[test]
    fn pairing_examples() {
        let a = eps(0).sub(&eps(1));
        let b = eps(0).sub(&eps(2));
        assert_eq!(pairing(&a, &b).unwrap(), 1);
        let long = eps(0).scale(2);
        let mixed = eps(0).add(&eps(1));
        assert_eq!(pairing(&long, &mixed).unwrap(), 2);
        assert_eq!(pairing(&mixed, &long).unwrap(), 1);
        // non-integral pairing rejected
        assert!(pairing(&eps(0), &eps(0).add(&eps(1)).add(&eps(2))).is_err());
    }

    #[test]
    fn reflection_swaps_coordinates() {
        let a = eps(0).sub(&eps(1));
        let x = eps(0).add(&eps(2));
        let sx = reflect(&x, &a).unwrap();
        assert_eq!(sx, eps(1).add(&eps(2)));
    }

    #[test]
    fn root_axioms_hold_for_all_families() {
        for (fam, rank) in [
            (Family::A, 4),
            (Family::B, 3),
            (Family::C, 3),
            (Family::D, 4),
            (Family::BC, 2),
        ] {
            let sys = make_root_system(fam, rank).unwrap();
            let rep = verify_root_axioms(&sys);
            assert!(rep.pass, "{fam:?}: {:?}", rep.witnesses);
        }
    }

    #[test]
    fn rectangular_grading_counts() {
        let g = make_three_grading(
            GradingKind::RectangularA { i_set: [0].into_iter().collect() },
            4,
        )
        .unwrap();
        assert_eq!(g.r1.len(), 3);
        let g = make_three_grading(
            GradingKind::RectangularA { i_set: [0, 1].into_iter().collect() },
            4,
        )
        .unwrap();
        assert_eq!(g.r1.len(), 4);
        assert!(verify_grading_axioms(&g).pass);
    }

    #[test]
    fn hermitian_grading_c3() {
        let g = make_three_grading(GradingKind::Hermitian, 3).unwrap();
        assert_eq!(g.r1.len(), 6);
        let rep = verify_grading_axioms(&g);
        assert!(rep.pass, "{:?}", rep.witnesses);
        // witness for the 2a-b law: 2(e0+e1) - 2e0 = 2e1 in R1
        let a = eps(0).add(&eps(1));
        let b = eps(0).scale(2);
        assert_eq!(g.classify_pair(&a, &b).unwrap(), RootRelation::ArrowIn);
        assert!(g.r1.contains(&a.scale(2).sub(&b)));
    }

    #[test]
    fn alternating_and_quadratic_gradings() {
        let g = make_three_grading(GradingKind::Alternating, 4).unwrap();
        assert_eq!(g.r1.len(), 6);
        assert!(verify_grading_axioms(&g).pass);

        let g = make_three_grading(GradingKind::OddQuadratic, 3).unwrap();
        assert_eq!(g.r1.len(), 5);
        let rep = verify_grading_axioms(&g);
        assert!(rep.pass, "{:?}", rep.witnesses);

        let g = make_three_grading(GradingKind::EvenQuadratic, 3).unwrap();
        assert_eq!(g.r1.len(), 4);
        assert!(verify_grading_axioms(&g).pass);
    }

    #[test]
    fn classification_examples() {
        let g = make_three_grading(GradingKind::Hermitian, 2).unwrap();
        let two_e0 = eps(0).scale(2);
        let mixed = eps(0).add(&eps(1));
        assert_eq!(g.classify_pair(&two_e0, &mixed).unwrap(), RootRelation::ArrowOut);
        assert_eq!(g.classify_pair(&mixed, &two_e0).unwrap(), RootRelation::ArrowIn);

        let g = make_three_grading(
            GradingKind::RectangularA { i_set: [0, 1].into_iter().collect() },
            4,
        )
        .unwrap();
        let a = eps(0).sub(&eps(2));
        let b = eps(1).sub(&eps(2));
        assert_eq!(g.classify_pair(&a, &b).unwrap(), RootRelation::Edge);
        let c = eps(1).sub(&eps(3));
        assert_eq!(g.classify_pair(&a, &c).unwrap(), RootRelation::Orthogonal);
    }

    #[test]
    fn decompose_r0_picks_smallest_edge_partner() {
        // I = {0}, J = {1, 2}: mu = e1 - e2 decomposes via a = e0 - e2
        let g = make_three_grading(
            GradingKind::RectangularA { i_set: [0].into_iter().collect() },
            3,
        )
        .unwrap();
        let mu = eps(1).sub(&eps(2));
        let (a, b) = g.decompose_r0(&mu).unwrap();
        assert_eq!(a, eps(0).sub(&eps(2)));
        assert_eq!(b, eps(0).sub(&eps(1)));
        assert_eq!(g.classify_pair(&a, &b).unwrap(), RootRelation::Edge);
        assert_eq!(a.sub(&b), mu);

        // hermitian rank 3: mu = e0 - e1 via (e0 + e2, e1 + e2)
        let g = make_three_grading(GradingKind::Hermitian, 3).unwrap();
        let mu = eps(0).sub(&eps(1));
        let (a, b) = g.decompose_r0(&mu).unwrap();
        assert_eq!(a.sub(&b), mu);
        assert_eq!(g.classify_pair(&a, &b).unwrap(), RootRelation::Edge);

        // hermitian rank 2 has no edge decomposition of e0 - e1
        let g2 = make_three_grading(GradingKind::Hermitian, 2).unwrap();
        assert!(matches!(
            g2.decompose_r0(&eps(0).sub(&eps(1))),
            Err(Error::NoDecomposition)
        ));
    }

    #[test]
    fn part_function() {
        let g = make_three_grading(
            GradingKind::RectangularA { i_set: [0].into_iter().collect() },
            3,
        )
        .unwrap();
        assert_eq!(g.part(&eps(0).sub(&eps(1))), Some(1));
        assert_eq!(g.part(&eps(1).sub(&eps(0))), Some(-1));
        assert_eq!(g.part(&eps(1).sub(&eps(2))), Some(0));
        assert_eq!(g.part(&Root::zero()), Some(0));
        assert_eq!(g.part(&eps(0).scale(2)), None);
    }
}
