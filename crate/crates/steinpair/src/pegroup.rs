//! The projective elementary group PE(V), the projection from EL onto it,
//! relative kernels, and Weyl elements.
//!
//! PE(V) is by definition the subgroup of Aut(tkk(V)) generated by all
//! exp+(x) and exp-(y), so its elements here are plain matrices in the
//! TKK basis and equality is exact matrix equality.

use std::collections::HashSet;

use crate::error::Error;
use crate::group::{FiniteGroup, GroupElement};
use crate::jordan::{is_division_pair, jordan_inverse, scale, JordanPair, PairMap, Sign, SIGNS};
use crate::linalg::{CoordSolver, DenseMat, SpanSolver};
use crate::matrix::{e_minus, e_plus, el_group, ElMat};
use crate::matrix::FinMatrix;
use crate::report::SuiteReport;
use crate::ring::Ring;
use crate::tkk::{fre_build, psi, tkk_build, FreAlgebra, TkkAlgebra};
use crate::Result;

/// A TKK automorphism as a group element.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PeMat(pub DenseMat);

impl GroupElement for PeMat {
    fn gmul(&self, rhs: &Self) -> Self {
        PeMat(self.0.mul(&rhs.0))
    }
    fn ginv(&self) -> Self {
        PeMat(self.0.inverse().expect("group element invertible"))
    }
}

/// The (sign, element) labels behind the PE generator list, in the order
/// pe_group emits them. Shared so homomorphisms defined on exponential
/// generators can line their images up with the closure's generators.
pub fn pe_generator_labels(pair: &JordanPair) -> Vec<(Sign, FinMatrix)> {
    let mut out = Vec::new();
    for s in SIGNS {
        let zero = pair.zero(s);
        for x in pair.elements(s) {
            if x != zero {
                out.push((s, x));
            }
        }
    }
    out
}

/// PE(V): breadth-first closure of the exponentials of all nonzero pair
/// elements.
pub fn pe_group(alg: &TkkAlgebra, max_elements: usize) -> Result<FiniteGroup<PeMat>> {
    let mut gens = Vec::new();
    for (s, x) in pe_generator_labels(&alg.pair) {
        gens.push(PeMat(alg.exp_aut(s, &x)?));
    }
    FiniteGroup::closure(PeMat(DenseMat::identity(alg.p, alg.dim())), gens, max_elements)
}

/// The projection EL_N(A) -> PE(rect(A, rows, cols)) by conjugation.
///
/// Ad g stabilizes the matrix model e inside Mat_N(A); since the kernel
/// of the model's surjection onto tkk is the centre, which conjugation
/// fixes elementwise, the induced map on tkk is well defined whatever
/// preimages are chosen. The projector picks one preimage per TKK basis
/// vector once and reuses it.
pub struct UadProjector {
    pub fre: FreAlgebra,
    pub alg: TkkAlgebra,
    preimages: Vec<FinMatrix>,
    n_block: u32,
}

impl UadProjector {
    pub fn new(a: &Ring, rows: u32, cols: u32) -> Result<UadProjector> {
        let fre = fre_build(a, rows, cols)?;
        let pair = JordanPair::rect(a, rows, cols);
        let alg = tkk_build(&pair)?;
        let n = alg.dim();
        let mut span = SpanSolver::new(alg.p, n);
        let mut sel: Vec<(Vec<u8>, FinMatrix)> = Vec::new();
        for b in &fre.basis {
            let img = psi(&fre, &alg, b)?;
            if span.insert(&img) {
                sel.push((img, b.clone()));
            }
        }
        if sel.len() != n {
            return Err(Error::Tkk("model does not surject onto tkk".into()));
        }
        let img_rows: Vec<Vec<u8>> = sel.iter().map(|(v, _)| v.clone()).collect();
        let coord = CoordSolver::new(alg.p, n, &img_rows)?;
        let mut preimages = Vec::with_capacity(n);
        for k in 0..n {
            let mut unit = vec![0u8; n];
            unit[k] = 1;
            let cs = coord.coords(&unit).expect("selected images span");
            let mut acc = FinMatrix::zero(a);
            for ((_, m), &c) in sel.iter().zip(cs.iter()) {
                if c != 0 {
                    acc = acc.add(&scale(m, &a.scalar(c as u32)));
                }
            }
            preimages.push(acc);
        }
        Ok(UadProjector { fre, alg, preimages, n_block: rows + cols })
    }

    /// The automorphism of tkk induced by conjugation with g.
    pub fn uad(&self, g: &ElMat) -> Result<DenseMat> {
        let gi = g.m.inverse(self.n_block)?;
        let n = self.alg.dim();
        let mut out = DenseMat::zero(self.alg.p, n, n);
        for (k, m) in self.preimages.iter().enumerate() {
            let conj = g.m.mul(m).mul(&gi);
            if !self.fre.contains(&conj) {
                return Err(Error::Tkk(format!(
                    "conjugation by {:?} does not stabilize the matrix model",
                    g.m
                )));
            }
            for (i, &c) in psi(&self.fre, &self.alg, &conj)?.iter().enumerate() {
                out.set(i, k, c as u32);
            }
        }
        self.alg.check_automorphism(&out)?;
        Ok(out)
    }
}

/// Everything around the exact sequence Z(EL) -> EL -> PE for the
/// rectangular pair: the projection is total on EL, a homomorphism,
/// matches the exponentials on the block generators, has kernel exactly
/// the centre, and hits all of PE.
pub fn verify_pe_quotient(a: &Ring, rows: u32, cols: u32, max_elements: usize) -> Result<SuiteReport> {
    let n_block = rows + cols;
    let proj = UadProjector::new(a, rows, cols)?;
    let el = el_group(a, n_block, max_elements)?;
    let pe = pe_group(&proj.alg, max_elements)?;
    let mut suite =
        SuiteReport::start(format!("EL_{}({}) -> PE(rect({}, {rows}, {cols}))", n_block, a.name(), a.name()));
    suite.counter("|EL|", el.order() as i64);
    suite.counter("|PE|", pe.order() as i64);

    let mut images = Vec::with_capacity(el.order());
    for g in &el.elements {
        images.push(proj.uad(g)?);
    }

    // homomorphism against the generators
    let gen_imgs: Vec<DenseMat> =
        el.gens.iter().map(|g| images[el.index[g]].clone()).collect();
    for (i, g) in el.elements.iter().enumerate() {
        for (gi, h) in el.gens.iter().enumerate() {
            let j = el.index[&g.gmul(h)];
            suite.check(images[j] == images[i].mul(&gen_imgs[gi]), || {
                format!("uad(g h) != uad(g) uad(h) at element {i}, generator {gi}")
            });
        }
    }

    // block generators project to the exponentials
    let pair = &proj.alg.pair;
    for u in pair.elements(Sign::Plus) {
        let got = proj.uad(&e_plus(a, rows, cols, &u))?;
        suite.check(got == proj.alg.exp_aut(Sign::Plus, &u)?, || {
            format!("uad(e_+({u:?})) differs from exp_+")
        });
    }
    for v in pair.elements(Sign::Minus) {
        let got = proj.uad(&e_minus(a, rows, cols, &v))?;
        suite.check(got == proj.alg.exp_aut(Sign::Minus, &v)?, || {
            format!("uad(e_-({v:?})) differs from exp_-")
        });
    }

    // kernel = centre, and the first isomorphism count
    let kernel: Vec<usize> =
        (0..el.order()).filter(|&i| images[i].is_identity()).collect();
    let centre = el.centre();
    suite.counter("|Ker uad|", kernel.len() as i64);
    suite.counter("|Z(EL)|", centre.len() as i64);
    suite.check(kernel == centre, || "Ker(uad) differs from Z(EL)".into());
    suite.check(el.order() == kernel.len() * pe.order(), || {
        format!("|EL| = {} but |Ker| |PE| = {}", el.order(), kernel.len() * pe.order())
    });
    for img in &images {
        suite.check(pe.contains(&PeMat(img.clone())), || {
            "uad image escapes PE".into()
        });
    }

    Ok(suite.finish())
}

/// w_b = exp-(b^-1) exp+(b) exp-(b^-1) for b invertible.
pub fn weyl_element(alg: &TkkAlgebra, b: &FinMatrix) -> Result<DenseMat> {
    if *b == alg.pair.zero(Sign::Plus) {
        return Err(Error::Jordan("no Weyl element at b = 0".into()));
    }
    let binv = jordan_inverse(&alg.pair, Sign::Plus, b)?;
    let em = alg.exp_aut(Sign::Minus, &binv)?;
    Ok(em.mul(&alg.exp_aut(Sign::Plus, b)?).mul(&em))
}

/// The Weyl conjugation law w_b exp-(a) w_b^-1 = exp+(Q_b a), checked for
/// every nonzero b and every a. Division pairs only, so that b^-1 exists.
pub fn verify_weyl_suite(pair: &JordanPair) -> Result<SuiteReport> {
    if !is_division_pair(pair) {
        return Err(Error::Jordan(format!("{} is not a division pair", pair.name)));
    }
    let alg = tkk_build(pair)?;
    let mut suite = SuiteReport::start(format!("Weyl conjugation for {}", pair.name));
    let zero = pair.zero(Sign::Plus);
    let mut checked = 0i64;
    for b in pair.elements(Sign::Plus) {
        if b == zero {
            continue;
        }
        let w = weyl_element(&alg, &b)?;
        let winv = w.inverse()?;
        let mut order = 1u32;
        let mut acc = w.clone();
        while !acc.is_identity() {
            acc = acc.mul(&w);
            order += 1;
        }
        suite.counter(format!("order of w at b={b:?}"), order as i64);
        for a in pair.elements(Sign::Minus) {
            let lhs = w.mul(&alg.exp_aut(Sign::Minus, &a)?).mul(&winv);
            let rhs = alg.exp_aut(Sign::Plus, &pair.q(Sign::Plus, &b, &a))?;
            suite.check(lhs == rhs, || {
                format!("w exp-(a) w^-1 != exp+(Q_b a) at b={b:?}, a={a:?}")
            });
            checked += 1;
        }
    }
    suite.counter("conjugations checked", checked);
    Ok(suite.finish())
}

/// The kernel PE(V, I) of the map PE(V) -> PE(W) induced by a surjective
/// pair homomorphism with kernel I. Returns the kernel's element indices
/// in PE(V) along with the verification report (the induced assignment is
/// a homomorphism on all of PE(V), surjective, and the kernel is normal).
pub fn pe_relative_kernel(
    pair: &JordanPair,
    target: &JordanPair,
    can: &PairMap,
    max_elements: usize,
) -> Result<(Vec<usize>, SuiteReport)> {
    let alg_v = tkk_build(pair)?;
    let alg_w = tkk_build(target)?;
    let pe_v = pe_group(&alg_v, max_elements)?;
    let pe_w = pe_group(&alg_w, max_elements)?;
    let mut suite =
        SuiteReport::start(format!("PE({}) -> PE({})", pair.name, target.name));
    suite.counter("|PE(V)|", pe_v.order() as i64);
    suite.counter("|PE(W)|", pe_w.order() as i64);

    let images: Vec<PeMat> = pe_generator_labels(pair)
        .into_iter()
        .map(|(s, x)| Ok(PeMat(alg_w.exp_aut(s, &can.apply(s, &x))?)))
        .collect::<Result<_>>()?;
    let id_w = PeMat(DenseMat::identity(alg_w.p, alg_w.dim()));
    let mapped: Vec<PeMat> = (0..pe_v.order())
        .map(|i| pe_v.map_element(i, &id_w, &images))
        .collect();

    // the generator assignment extends to a homomorphism
    for (i, g) in pe_v.elements.iter().enumerate() {
        for (gi, h) in pe_v.gens.iter().enumerate() {
            let j = pe_v.index[&g.gmul(h)];
            suite.check(mapped[j] == mapped[i].gmul(&images[gi]), || {
                format!("induced map breaks at element {i}, generator {gi}")
            });
        }
    }

    // surjectivity
    let distinct: HashSet<&PeMat> = mapped.iter().collect();
    suite.check(
        distinct.len() == pe_w.order() && mapped.iter().all(|m| pe_w.contains(m)),
        || format!("image has {} of {} elements", distinct.len(), pe_w.order()),
    );

    // kernel and its normality
    let kernel: Vec<usize> = (0..pe_v.order()).filter(|&i| mapped[i] == id_w).collect();
    suite.counter("|kernel|", kernel.len() as i64);
    suite.check(pe_v.order() == kernel.len() * pe_w.order(), || {
        "kernel size does not match the index count".into()
    });
    let kernel_set: HashSet<usize> = kernel.iter().copied().collect();
    for &k in &kernel {
        for g in &pe_v.gens {
            let conj = g.gmul(&pe_v.elements[k]).gmul(&g.ginv());
            suite.check(kernel_set.contains(&pe_v.index[&conj]), || {
                format!("kernel is not normal: conjugate of element {k} escapes")
            });
        }
    }

    Ok((kernel, suite.finish()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{alternating_group, group_analyze, symmetric_group};
    use crate::ring::RingTableSpec;
    use std::collections::HashMap;

    fn fp(p: u32) -> Ring {
        Ring::fp(p).unwrap()
    }

    fn f2xf2() -> Ring {
        Ring::structure_constants(&RingTableSpec {
            name: "F2xF2".into(),
            modulus: 2,
            basis: vec!["u".into(), "w".into()],
            table: vec![
                vec![vec![1, 0], vec![0, 0]],
                vec![vec![0, 0], vec![0, 1]],
            ],
            unit: vec![1, 1],
            involution: None,
        })
        .unwrap()
    }

    #[test]
    fn pe_of_the_smallest_full_pairs_match_s3_and_a4() {
        let alg2 = tkk_build(&JordanPair::full(&fp(2))).unwrap();
        let pe2 = pe_group(&alg2, 100).unwrap();
        let s3 = symmetric_group(3).unwrap();
        assert_eq!(
            group_analyze(&pe2, 1000).unwrap(),
            group_analyze(&s3, 1000).unwrap()
        );

        let alg3 = tkk_build(&JordanPair::full(&fp(3))).unwrap();
        let pe3 = pe_group(&alg3, 100).unwrap();
        let a4 = alternating_group(4).unwrap();
        let rep = group_analyze(&pe3, 1000).unwrap();
        assert_eq!(rep, group_analyze(&a4, 1000).unwrap());
        assert_eq!(rep.order, 12);
        assert_eq!(rep.derived_order, 4);
        assert_eq!(rep.order_histogram.get(&6), None);
    }

    #[test]
    fn pe_of_hermitian_two_by_two_is_s6() {
        let pair = JordanPair::hermitian(&fp(2), 2).unwrap();
        let alg = tkk_build(&pair).unwrap();
        let pe = pe_group(&alg, 2000).unwrap();
        assert_eq!(pe.order(), 720);
        let s6 = symmetric_group(6).unwrap();
        assert_eq!(
            group_analyze(&pe, 1000).unwrap(),
            group_analyze(&s6, 1000).unwrap()
        );
    }

    #[test]
    fn pe_of_the_one_by_two_pair_is_perfect() {
        let alg = tkk_build(&JordanPair::rect(&fp(2), 1, 2)).unwrap();
        let pe = pe_group(&alg, 1000).unwrap();
        let rep = group_analyze(&pe, 0).unwrap();
        assert_eq!(rep.order, 168);
        assert!(rep.perfect);
        assert_eq!(rep.centre_order, 1);
    }

    #[test]
    fn el_projects_onto_pe_with_central_kernel() {
        for (p, rows, cols, el_order, z_order, pe_order) in
            [(2, 1, 1, 6, 1, 6), (3, 1, 1, 24, 2, 12), (2, 1, 2, 168, 1, 168)]
        {
            let report = verify_pe_quotient(&fp(p), rows, cols, 10_000).unwrap();
            assert!(report.pass, "F{p} {rows}x{cols}: {:?}", report.witnesses);
            let get = |k: &str| report.counters.iter().find(|(n, _)| n == k).unwrap().1;
            assert_eq!(get("|EL|"), el_order, "F{p} {rows}x{cols}");
            assert_eq!(get("|Z(EL)|"), z_order);
            assert_eq!(get("|PE|"), pe_order);
        }
    }

    #[test]
    fn uad_of_the_identity_is_the_identity() {
        let proj = UadProjector::new(&fp(3), 1, 1).unwrap();
        let id = ElMat::identity(&fp(3), 2);
        assert!(proj.uad(&id).unwrap().is_identity());
    }

    #[test]
    fn weyl_conjugation_holds_in_the_full_division_pairs() {
        for p in [2u32, 3, 5] {
            let report = verify_weyl_suite(&JordanPair::full(&fp(p))).unwrap();
            assert!(report.pass, "F{p}: {:?}", report.witnesses);
        }
        // a pair with non-invertible elements is refused
        assert!(verify_weyl_suite(&JordanPair::rect(&fp(2), 1, 2)).is_err());
    }

    #[test]
    fn relative_kernel_of_a_factor_projection() {
        let pair = JordanPair::full(&f2xf2());
        let target = JordanPair::full(&fp(2));
        let project = |x: &FinMatrix| -> FinMatrix {
            let c = x.entry(0, 0).coords[0];
            FinMatrix::single(&fp(2), 0, 0, fp(2).scalar(c))
        };
        let maps = SIGNS.map(|s| {
            pair.elements(s)
                .into_iter()
                .map(|x| {
                    let img = project(&x);
                    (x, img)
                })
                .collect::<HashMap<_, _>>()
        });
        let [mp, mm] = maps;
        let can = PairMap::new(&pair, &target, mp, mm).unwrap();
        let (kernel, report) = pe_relative_kernel(&pair, &target, &can, 10_000).unwrap();
        assert!(report.pass, "{:?}", report.witnesses);
        let get = |k: &str| report.counters.iter().find(|(n, _)| n == k).unwrap().1;
        assert_eq!(get("|PE(V)|"), 36);
        assert_eq!(get("|PE(W)|"), 6);
        assert_eq!(kernel.len(), 6);
    }

    #[test]
    fn relative_kernel_edge_cases() {
        let pair = JordanPair::full(&fp(2));
        // identity map: trivial kernel
        let id_maps = SIGNS.map(|s| {
            pair.elements(s).into_iter().map(|x| (x.clone(), x)).collect::<HashMap<_, _>>()
        });
        let [ip, im] = id_maps;
        let ident = PairMap::new(&pair, &pair, ip, im).unwrap();
        let (kernel, report) = pe_relative_kernel(&pair, &pair, &ident, 100).unwrap();
        assert!(report.pass);
        assert_eq!(kernel, vec![0]);

        // collapse everything: the kernel is the whole group
        let z = pair.zero(Sign::Plus);
        let zero_pair = pair.sub_pair(vec![z.clone()], vec![z.clone()], "zero pair").unwrap();
        let zero_maps = SIGNS.map(|s| {
            let zz = pair.zero(s);
            pair.elements(s)
                .into_iter()
                .map(|x| (x, zz.clone()))
                .collect::<HashMap<_, _>>()
        });
        let [zp, zm] = zero_maps;
        let collapse = PairMap::new(&pair, &zero_pair, zp, zm).unwrap();
        let (kernel, report) = pe_relative_kernel(&pair, &zero_pair, &collapse, 100).unwrap();
        assert!(report.pass, "{:?}", report.witnesses);
        assert_eq!(kernel.len(), 6);
    }
}
