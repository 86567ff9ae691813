//! Finite groups as closures of generator sets, with canonical-form element
//! storage and structural fingerprints (order, centre, derived subgroup,
//! abelianization, element-order histogram).

use serde::Serialize;
use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;

use crate::error::Error;
use crate::Result;

/// Element of a concrete group: a hashable canonical form with composition.
pub trait GroupElement: Clone + Eq + Hash {
    fn gmul(&self, rhs: &Self) -> Self;
    fn ginv(&self) -> Self;
}

/// A finite group enumerated by breadth-first closure from generators.
///
/// Each element remembers how it was reached (parent element and generator
/// index), so a generator word can be reconstructed for any element. Word
/// reconstruction is what lets homomorphisms defined on generators be
/// evaluated on arbitrary elements.
pub struct FiniteGroup<E: GroupElement> {
    pub identity: E,
    pub gens: Vec<E>,
    pub elements: Vec<E>,
    pub index: HashMap<E, usize>,
    /// (parent index, generator index) for each non-identity element
    parents: Vec<Option<(usize, usize)>>,
}

impl<E: GroupElement> FiniteGroup<E> {
    /// BFS closure; errors when the group exceeds `max_elements`.
    pub fn closure(identity: E, gens: Vec<E>, max_elements: usize) -> Result<Self> {
        let mut elements = vec![identity.clone()];
        let mut index = HashMap::new();
        index.insert(identity.clone(), 0usize);
        let mut parents = vec![None];
        let mut frontier = 0usize;
        while frontier < elements.len() {
            let cur = elements[frontier].clone();
            for (gi, g) in gens.iter().enumerate() {
                let nxt = cur.gmul(g);
                if !index.contains_key(&nxt) {
                    if elements.len() >= max_elements {
                        return Err(Error::Budget(format!(
                            "group closure exceeded {max_elements} elements"
                        )));
                    }
                    index.insert(nxt.clone(), elements.len());
                    elements.push(nxt);
                    parents.push(Some((frontier, gi)));
                }
            }
            frontier += 1;
        }
        Ok(FiniteGroup { identity, gens, elements, index, parents })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, e: &E) -> bool {
        self.index.contains_key(e)
    }

    /// Generator word (list of generator indices) whose product is element i.
    pub fn word_of(&self, mut i: usize) -> Vec<usize> {
        let mut rev = Vec::new();
        while let Some((parent, gi)) = self.parents[i] {
            rev.push(gi);
            i = parent;
        }
        rev.reverse();
        rev
    }

    /// Evaluate the stored word of element i under `images` of the
    /// generators (a candidate homomorphism given on generators).
    pub fn map_element<F: GroupElement>(&self, i: usize, id: &F, images: &[F]) -> F {
        let mut acc = id.clone();
        for gi in self.word_of(i) {
            acc = acc.gmul(&images[gi]);
        }
        acc
    }

    /// Elements commuting with every generator (= the centre).
    pub fn centre(&self) -> Vec<usize> {
        (0..self.elements.len())
            .filter(|&i| {
                let e = &self.elements[i];
                self.gens.iter().all(|g| e.gmul(g) == g.gmul(e))
            })
            .collect()
    }

    /// Derived subgroup, as the normal closure of the generator commutators.
    ///
    /// The subgroup generated by the commutators of the generators is closed
    /// by BFS; conjugates under the group generators that escape it are added
    /// as new subgroup generators and the closure repeats until stable. The
    /// generators commute modulo the result, so the quotient is abelian and
    /// the result is exactly [G, G].
    pub fn derived_subgroup(&self, max_elements: usize) -> Result<Vec<usize>> {
        let mut sub_gens: Vec<E> = Vec::new();
        for a in &self.gens {
            for b in &self.gens {
                let c = a.gmul(b).gmul(&a.ginv()).gmul(&b.ginv());
                if c != self.identity && !sub_gens.contains(&c) {
                    sub_gens.push(c);
                }
            }
        }
        let mut elems: Vec<E> = vec![self.identity.clone()];
        let mut seen: HashMap<E, ()> = HashMap::new();
        seen.insert(self.identity.clone(), ());
        loop {
            // close the subgroup generated by sub_gens
            let mut frontier = 0;
            while frontier < elems.len() {
                let cur = elems[frontier].clone();
                for s in &sub_gens {
                    let nxt = cur.gmul(s);
                    if !seen.contains_key(&nxt) {
                        if elems.len() >= max_elements {
                            return Err(Error::Budget("derived subgroup closure".into()));
                        }
                        seen.insert(nxt.clone(), ());
                        elems.push(nxt);
                    }
                }
                frontier += 1;
            }
            // find conjugates that escape; they witness non-normality
            let mut escaped: Vec<E> = Vec::new();
            'scan: for h in &elems {
                for g in &self.gens {
                    let c = g.gmul(h).gmul(&g.ginv());
                    if !seen.contains_key(&c) {
                        escaped.push(c);
                        break 'scan;
                    }
                }
            }
            if escaped.is_empty() {
                break;
            }
            sub_gens.extend(escaped);
        }
        let mut out: Vec<usize> = elems.iter().map(|e| self.index[e]).collect();
        out.sort_unstable();
        Ok(out)
    }

    /// Order of each element, as a histogram order -> count.
    pub fn order_histogram(&self) -> BTreeMap<u64, u64> {
        let mut hist = BTreeMap::new();
        for e in &self.elements {
            let mut acc = e.clone();
            let mut k = 1u64;
            while acc != self.identity {
                acc = acc.gmul(e);
                k += 1;
            }
            *hist.entry(k).or_insert(0) += 1;
        }
        hist
    }
}

/// Structural fingerprint of a finite group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupReport {
    pub order: u64,
    pub centre_order: u64,
    pub derived_order: u64,
    pub abelianization_order: u64,
    pub perfect: bool,
    /// element order -> number of elements of that order
    pub order_histogram: BTreeMap<u64, u64>,
}

/// Computes the full fingerprint. The histogram is skipped above
/// `histogram_cap` elements (set it to 0 to always skip).
pub fn group_analyze<E: GroupElement>(
    g: &FiniteGroup<E>,
    histogram_cap: usize,
) -> Result<GroupReport> {
    let order = g.order() as u64;
    let centre_order = g.centre().len() as u64;
    let derived = g.derived_subgroup(g.order())?;
    let derived_order = derived.len() as u64;
    let histogram = if g.order() <= histogram_cap {
        g.order_histogram()
    } else {
        BTreeMap::new()
    };
    Ok(GroupReport {
        order,
        centre_order,
        derived_order,
        abelianization_order: order / derived_order,
        perfect: derived_order == order,
        order_histogram: histogram,
    })
}

/// Permutation on 0..n, the canonical small-group element.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Perm(pub Vec<u16>);

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm((0..n as u16).collect())
    }
    pub fn transposition(n: usize, i: usize, j: usize) -> Perm {
        let mut v: Vec<u16> = (0..n as u16).collect();
        v.swap(i, j);
        Perm(v)
    }
    pub fn cycle3(n: usize, i: usize, j: usize, k: usize) -> Perm {
        let mut v: Vec<u16> = (0..n as u16).collect();
        v[i] = j as u16;
        v[j] = k as u16;
        v[k] = i as u16;
        Perm(v)
    }
}

impl GroupElement for Perm {
    fn gmul(&self, rhs: &Self) -> Self {
        // (self * rhs)(x) = self(rhs(x))
        Perm(rhs.0.iter().map(|&x| self.0[x as usize]).collect())
    }
    fn ginv(&self) -> Self {
        let mut v = vec![0u16; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            v[x as usize] = i as u16;
        }
        Perm(v)
    }
}

/// Symmetric group S_n from adjacent transpositions.
pub fn symmetric_group(n: usize) -> Result<FiniteGroup<Perm>> {
    let gens = (0..n.saturating_sub(1))
        .map(|i| Perm::transposition(n, i, i + 1))
        .collect();
    FiniteGroup::closure(Perm::identity(n), gens, 1_000_000)
}

/// Alternating group A_n from 3-cycles.
pub fn alternating_group(n: usize) -> Result<FiniteGroup<Perm>> {
    if n < 3 {
        return FiniteGroup::closure(Perm::identity(n), vec![], 10);
    }
    let gens = (2..n).map(|k| Perm::cycle3(n, 0, 1, k)).collect();
    FiniteGroup::closure(Perm::identity(n), gens, 1_000_000)
}
