//! Named registry of the example pairs and gradings.
//!
//! Everything the verification suites and the command line address by
//! name lives here, so a scenario config like `--pair rect --ring F3`
//! and the fixed acceptance lists resolve through one place.

use crate::error::Error;
use crate::grading::{
    grade_alternating, grade_hermitian, grade_quad, grade_rect, RootGrading,
};
use crate::jordan::JordanPair;
use crate::matrix::FinMatrix;
use crate::ring::{Ring, RingTableSpec};
use crate::Result;

/// The product ring F2 x F2, the smallest commutative ring with an
/// idempotent besides 0 and 1.
pub fn f2xf2() -> Ring {
    Ring::structure_constants(&RingTableSpec {
        name: "F2xF2".into(),
        modulus: 2,
        basis: vec!["u".into(), "w".into()],
        table: vec![vec![vec![1, 0], vec![0, 0]], vec![vec![0, 0], vec![0, 1]]],
        unit: vec![1, 1],
        involution: None,
    })
    .expect("fixed product ring table")
}

fn prime_power(q: u32) -> Option<(u32, u32)> {
    for p in 2..=q {
        if q % p == 0 {
            let mut k = 0;
            let mut m = q;
            while m % p == 0 {
                m /= p;
                k += 1;
            }
            return if m == 1 { Some((p, k)) } else { None };
        }
    }
    None
}

/// Ring selector for scenario configs: `F<q>` for finite fields,
/// `Z<n>` for integers mod n, plus the named rings `MAT2F2` and
/// `F2XF2`.
pub fn ring_by_name(name: &str) -> Result<Ring> {
    let up = name.to_uppercase();
    match up.as_str() {
        "MAT2F2" => Ring::matrix_ring(&Ring::fp(2)?, 2),
        "F2XF2" => Ok(f2xf2()),
        _ => {
            if let Some(q) = up.strip_prefix('F').and_then(|t| t.parse::<u32>().ok()) {
                let (p, k) = prime_power(q)
                    .ok_or_else(|| Error::Selector(format!("{q} is not a prime power")))?;
                return if k == 1 { Ring::fp(p) } else { Ring::fq(p, k) };
            }
            if let Some(n) = up.strip_prefix('Z').and_then(|t| t.parse::<u32>().ok()) {
                return Ring::zn(n);
            }
            Err(Error::Selector(format!("unknown ring {name}")))
        }
    }
}

/// A pair from a family name and its parameters.  `rows`/`cols` are the
/// rectangular block sizes; hermitian and alternating pairs read their
/// matrix size from `rows`; the quadratic-form family is the split
/// hyperbolic space and ignores both.
pub fn make_pair(family: &str, ring: &Ring, rows: u32, cols: u32) -> Result<JordanPair> {
    match family {
        "full" => Ok(JordanPair::full(ring)),
        "rect" => Ok(JordanPair::rect(ring, rows, cols)),
        "herm" => JordanPair::hermitian(ring, rows),
        "alt" => JordanPair::alternating(ring, rows),
        "quad" => JordanPair::hyperbolic_quad(ring),
        other => Err(Error::Selector(format!("unknown pair family {other}"))),
    }
}

/// The root grading each family carries: the rectangular grading by
/// matrix positions, the hermitian and alternating gradings by index
/// pairs, and the odd quadratic grading marked at the standard
/// hyperbolic vectors.
pub fn make_grading(family: &str, ring: &Ring, rows: u32, cols: u32) -> Result<RootGrading> {
    match family {
        "rect" => grade_rect(ring, rows, cols),
        "herm" => grade_hermitian(ring, rows),
        "alt" => grade_alternating(ring, rows),
        "quad" => {
            let pair = JordanPair::hyperbolic_quad(ring)?;
            let e = |i: u32| FinMatrix::single(ring, i, 0, ring.one());
            grade_quad(&pair, &e(0), &e(1))
        }
        other => Err(Error::Selector(format!("no graded family named {other}"))),
    }
}

/// The fixed pair zoo: every example the acceptance suites quantify
/// over, in a stable order.
pub fn pair_zoo() -> Vec<(String, JordanPair)> {
    let f2 = Ring::fp(2).expect("F2");
    let f3 = Ring::fp(3).expect("F3");
    let f5 = Ring::fp(5).expect("F5");
    let z4 = Ring::zn(4).expect("Z4");
    let mat2 = Ring::matrix_ring(&f2, 2).expect("Mat2(F2)");
    let specs: Vec<(&str, Result<JordanPair>)> = vec![
        ("full-f2", Ok(JordanPair::full(&f2))),
        ("full-f3", Ok(JordanPair::full(&f3))),
        ("full-f5", Ok(JordanPair::full(&f5))),
        ("full-z4", Ok(JordanPair::full(&z4))),
        ("full-mat2f2", Ok(JordanPair::full(&mat2))),
        ("full-f2xf2", Ok(JordanPair::full(&f2xf2()))),
        ("rect-f2-1x2", Ok(JordanPair::rect(&f2, 1, 2))),
        ("rect-f3-1x2", Ok(JordanPair::rect(&f3, 1, 2))),
        ("rect-f2-2x2", Ok(JordanPair::rect(&f2, 2, 2))),
        ("herm-f2-2", JordanPair::hermitian(&f2, 2)),
        ("alt-f2-4", JordanPair::alternating(&f2, 4)),
        ("quad-f2", JordanPair::hyperbolic_quad(&f2)),
        ("quad-f3", JordanPair::hyperbolic_quad(&f3)),
    ];
    specs
        .into_iter()
        .map(|(n, p)| (n.to_string(), p.expect("zoo entry must build")))
        .collect()
}

/// The fixed grading zoo, one representative per graded family.
pub fn grading_zoo() -> Vec<(String, RootGrading)> {
    let f2 = Ring::fp(2).expect("F2");
    let f3 = Ring::fp(3).expect("F3");
    vec![
        ("rect-f2-1x2".to_string(), make_grading("rect", &f2, 1, 2)),
        ("rect-f3-1x2".to_string(), make_grading("rect", &f3, 1, 2)),
        ("herm-f2-2".to_string(), make_grading("herm", &f2, 2, 2)),
        ("alt-f2-4".to_string(), make_grading("alt", &f2, 4, 4)),
        ("quad-f2".to_string(), make_grading("quad", &f2, 0, 0)),
    ]
    .into_iter()
    .map(|(n, g)| (n, g.expect("zoo grading must build")))
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jordan::{verify_jp, JpOptions};

    #[test]
    fn ring_names_resolve() {
        assert_eq!(ring_by_name("F2").unwrap().size(), 2);
        assert_eq!(ring_by_name("f5").unwrap().size(), 5);
        assert_eq!(ring_by_name("F4").unwrap().size(), 4);
        assert!(ring_by_name("F4").unwrap().is_field());
        assert_eq!(ring_by_name("Z4").unwrap().size(), 4);
        assert!(!ring_by_name("Z4").unwrap().is_field());
        assert_eq!(ring_by_name("MAT2F2").unwrap().size(), 16);
        assert_eq!(ring_by_name("F2XF2").unwrap().size(), 4);
        assert!(ring_by_name("F6").is_err());
        assert!(ring_by_name("E8").is_err());
    }

    #[test]
    fn every_zoo_pair_satisfies_the_identities_on_a_sample() {
        let opts = JpOptions { max_exhaustive: 2_000, samples: 150, seed: 7 };
        for (name, pair) in pair_zoo() {
            let rep = verify_jp(&pair, &opts);
            assert!(rep.pass, "{name}: {:?}", rep.witnesses);
        }
    }

    #[test]
    fn every_zoo_grading_builds_and_verifies() {
        for (name, grading) in grading_zoo() {
            let rep = grading.verify_grading_suite();
            assert!(rep.pass, "{name}: {:?}", rep.witnesses);
        }
    }

    #[test]
    fn selectors_reject_unknown_families() {
        let f2 = Ring::fp(2).unwrap();
        assert!(make_pair("octonion", &f2, 1, 1).is_err());
        assert!(make_grading("full", &f2, 1, 1).is_err());
        assert!(make_pair("herm", &f2, 2, 2).is_ok());
        assert!(make_grading("quad", &f2, 0, 0).is_ok());
    }
}
