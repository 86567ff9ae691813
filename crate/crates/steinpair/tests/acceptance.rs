//! Acceptance gate: thirteen criteria, one test and one printed verdict
//! line each.  Every numeric expectation and time budget is pinned here;
//! the suites themselves never assert, they report, and this file decides.

use std::time::{Duration, Instant};

use steinpair::grading::grade_rect;
use steinpair::group::{alternating_group, group_analyze, symmetric_group, FiniteGroup, Perm};
use steinpair::jordan::{verify_jp, verify_peirce, Idempotent, JordanPair, JpOptions, Sign};
use steinpair::linalg::DenseMat;
use steinpair::matrix::{el_group, verify_block_commutator, verify_e_suite, FinMatrix};
use steinpair::pegroup::{pe_group, verify_pe_quotient, verify_weyl_suite, PeMat};
use steinpair::report::SuiteReport;
use steinpair::ring::Ring;
use steinpair::steinberg::{
    evaluate_hom, exp_images, jordan_st_presentation, linear_el_images, linear_presentation,
    rect_ej_presentation, rect_el_images, stj_presentation, verify_b_factorization,
    verify_b_projection, verify_relators, Hom,
};
use steinpair::tkk::{l0_contains, tkk_build, verify_psi, verify_tkk_suite};
use steinpair::toddcox::{kernel_centrality_report, todd_coxeter};
use steinpair::zoo::{grading_zoo, pair_zoo};

struct Criterion {
    number: u32,
    label: &'static str,
    t0: Instant,
    limit: Duration,
    problems: Vec<String>,
}

impl Criterion {
    fn new(number: u32, label: &'static str, limit_secs: u64) -> Criterion {
        Criterion {
            number,
            label,
            t0: Instant::now(),
            limit: Duration::from_secs(limit_secs),
            problems: Vec::new(),
        }
    }

    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.problems.push(what());
        }
    }

    fn suite(&mut self, rep: &SuiteReport) {
        self.expect(rep.pass, || {
            format!("{}: {} failures, first: {:?}", rep.name, rep.failures, rep.witnesses.first())
        });
    }

    fn counter(&self, rep: &SuiteReport, key: &str) -> i64 {
        rep.counters
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| *v)
            .unwrap_or_else(|| panic!("suite {} lacks counter {key}", rep.name))
    }

    fn conclude(mut self) {
        let spent = self.t0.elapsed();
        if spent > self.limit {
            self.problems.push(format!(
                "runtime {:.1?} exceeds the pinned budget {:?}",
                spent, self.limit
            ));
        }
        if self.problems.is_empty() {
            println!("acceptance {:02} ({}): PASS [{:.1?}]", self.number, self.label, spent);
        } else {
            println!("acceptance {:02} ({}): FAIL", self.number, self.label);
            panic!(
                "criterion {} failed:\n  {}",
                self.number,
                self.problems.join("\n  ")
            );
        }
    }
}

fn fp(p: u32) -> Ring {
    Ring::fp(p).unwrap()
}

fn pe_identity(alg: &steinpair::tkk::TkkAlgebra) -> PeMat {
    PeMat(DenseMat::identity(alg.p, alg.dim()))
}

#[test]
fn criterion_01_elementary_relations() {
    let mut c = Criterion::new(1, "elementary relations", 6 * 30);
    for q in [2u32, 3] {
        for n in [3u32, 4, 5] {
            let t = Instant::now();
            let rep = verify_e_suite(&fp(q), n);
            c.suite(&rep);
            c.expect(rep.instances > 0, || format!("empty sweep for n={n} q={q}"));
            c.expect(t.elapsed() < Duration::from_secs(30), || {
                format!("n={n} q={q} took {:.1?}, pinned 30s", t.elapsed())
            });
        }
    }
    c.conclude();
}

#[test]
fn criterion_02_block_commutator_formula() {
    let mut c = Criterion::new(2, "block commutator formula", 5);
    let rep = verify_block_commutator(&fp(3), 1, 2);
    c.suite(&rep);
    // every (u, v) in M_{1x2}(F3) x M_{2x1}(F3): 9 * 9 exact instances
    c.expect(rep.instances == 81, || {
        format!("expected the full 81-pair sweep, got {}", rep.instances)
    });
    c.conclude();
}

#[test]
fn criterion_03_jordan_identities() {
    let mut c = Criterion::new(3, "Jordan pair identities", 60);
    let exhaustive = ["full-f2", "full-f3", "full-z4", "rect-f2-1x2"];
    let sampled = ["rect-f2-2x2", "herm-f2-2", "alt-f2-4", "quad-f3"];
    let opts = JpOptions { max_exhaustive: 60_000, samples: 10_000, seed: 1 };
    let zoo = pair_zoo();
    let by_name = |n: &str| {
        zoo.iter()
            .find(|(name, _)| name == n)
            .map(|(_, p)| p)
            .unwrap_or_else(|| panic!("zoo lacks {n}"))
    };
    for name in exhaustive {
        let rep = verify_jp(by_name(name), &opts);
        c.suite(&rep);
        c.expect(rep.notes.is_empty(), || {
            format!("{name} was expected to sweep exhaustively, notes: {:?}", rep.notes)
        });
    }
    for name in sampled {
        let rep = verify_jp(by_name(name), &opts);
        c.suite(&rep);
        // either a full sweep (small carrier) or >= 10^4 samples per identity
        c.expect(rep.instances >= 10_000, || {
            format!("{name} ran only {} instances", rep.instances)
        });
    }
    c.conclude();
}

#[test]
fn criterion_04_peirce_decomposition() {
    let mut c = Criterion::new(4, "Peirce decomposition", 5);
    let mat2 = Ring::matrix_ring(&fp(2), 2).unwrap();
    let pair = JordanPair::full(&mat2);
    // the matrix unit E11 inside Mat2(F2), as a 1x1 pair element
    let e11 = FinMatrix::single(&mat2, 0, 0, mat2.basis_elt(0));
    let e = Idempotent::new(&pair, e11.clone(), e11).expect("E11 is idempotent");
    let rep = verify_peirce(&pair, &e).expect("peirce split");
    c.suite(&rep);
    // ranks (1, 2, 1) over F2 mean part sizes (2, 4, 2) on both sides
    for s in ["V+", "V-"] {
        for (part, want) in [("2", 2i64), ("1", 4), ("0", 2)] {
            let key = format!("size {s}_{part}");
            let got = c.counter(&rep, &key);
            c.expect(got == want, || format!("{key} = {got}, want {want}"));
        }
    }
    c.conclude();
}

#[test]
fn criterion_05_grading_suite() {
    let mut c = Criterion::new(5, "root grading suite", 60);
    let expected = ["rect-f2-1x2", "rect-f3-1x2", "herm-f2-2", "alt-f2-4", "quad-f2"];
    let zoo = grading_zoo();
    c.expect(zoo.len() == expected.len(), || {
        format!("grading zoo has {} entries, want {}", zoo.len(), expected.len())
    });
    for (name, grading) in &zoo {
        c.expect(expected.contains(&name.as_str()), || format!("unexpected entry {name}"));
        let rep = grading.verify_grading_suite();
        c.suite(&rep);
    }
    c.conclude();
}

#[test]
fn criterion_06_tkk_suite() {
    let mut c = Criterion::new(6, "TKK construction", 60);
    for (name, pair) in pair_zoo() {
        if name == "full-z4" {
            // No prime-field basis exists mod 4, so the builder refuses;
            // the basis-free membership oracle still decides span
            // questions about L0, which is what the suite can check here.
            c.expect(tkk_build(&pair).is_err(), || "Z/4 build should refuse".into());
            let tables = |f: &dyn Fn(Sign, &FinMatrix) -> FinMatrix| {
                [Sign::Plus, Sign::Minus].map(|s| {
                    pair.elements(s)
                        .into_iter()
                        .map(|x| {
                            let y = f(s, &x);
                            (x, y)
                        })
                        .collect::<std::collections::HashMap<_, _>>()
                })
            };
            let [dp, dm] = tables(&|s, x| {
                let two = pair.add(s, x, x);
                match s {
                    Sign::Plus => two,
                    Sign::Minus => pair.neg(s, &two),
                }
            });
            c.expect(
                l0_contains(&pair, &dp, &dm).unwrap_or(false),
                || "doubling action should lie in L0 over Z/4".into(),
            );
            let [ip, im] = tables(&|_, x| x.clone());
            c.expect(
                !l0_contains(&pair, &ip, &im).unwrap_or(true),
                || "identity-on-both-sides is not an L0 action over Z/4".into(),
            );
            continue;
        }
        let alg = match tkk_build(&pair) {
            Ok(a) => a,
            Err(e) => {
                c.expect(false, || format!("tkk({name}) failed to build: {e}"));
                continue;
            }
        };
        let rep = verify_tkk_suite(&alg);
        c.suite(&rep);
        let centre = c.counter(&rep, "centre dim");
        c.expect(centre == 0, || format!("tkk({name}) has centre of dimension {centre}"));
    }
    c.conclude();
}

#[test]
fn criterion_07_psi_isomorphism() {
    let mut c = Criterion::new(7, "matrix model isomorphism", 30);
    for (q, rows, cols) in [(2, 1, 1), (2, 1, 2), (3, 1, 1)] {
        let rep = verify_psi(&fp(q), rows, cols).expect("psi suite");
        c.suite(&rep);
        c.expect(c.counter(&rep, "dim kernel") == c.counter(&rep, "dim centre"), || {
            format!("kernel/centre dims differ for q={q} {rows}x{cols}")
        });
        c.expect(
            c.counter(&rep, "rank of Psi") + c.counter(&rep, "dim kernel")
                == c.counter(&rep, "dim matrix model"),
            || format!("rank bookkeeping off for q={q} {rows}x{cols}"),
        );
    }
    c.conclude();
}

#[test]
fn criterion_08_projective_elementary_orders() {
    let mut c = Criterion::new(8, "finite PE groups", 120);

    let pe_of = |pair: &JordanPair, budget: usize| {
        let alg = tkk_build(pair).expect("tkk");
        pe_group(&alg, budget).expect("pe closure")
    };
    let fingerprint = |g: &FiniteGroup<PeMat>| group_analyze(g, 1000).expect("fingerprint");
    let model = |g: &FiniteGroup<Perm>| group_analyze(g, 1000).expect("fingerprint");

    let pe2 = pe_of(&JordanPair::full(&fp(2)), 100);
    c.expect(pe2.order() == 6, || format!("|PE(full F2)| = {}", pe2.order()));
    c.expect(
        fingerprint(&pe2) == model(&symmetric_group(3).unwrap()),
        || "PE(full F2) does not match the S3 fingerprint".into(),
    );

    let pe3 = pe_of(&JordanPair::full(&fp(3)), 100);
    let f3 = fingerprint(&pe3);
    c.expect(pe3.order() == 12, || format!("|PE(full F3)| = {}", pe3.order()));
    c.expect(f3.derived_order == 4, || format!("derived order {}", f3.derived_order));
    c.expect(f3.order_histogram.get(&6).is_none(), || {
        "PE(full F3) has an element of order 6".into()
    });
    c.expect(
        f3 == model(&alternating_group(4).unwrap()),
        || "PE(full F3) does not match the A4 fingerprint".into(),
    );

    let pe_h = pe_of(&JordanPair::hermitian(&fp(2), 2).unwrap(), 2000);
    c.expect(pe_h.order() == 720, || format!("|PE(H2(F2))| = {}", pe_h.order()));
    c.expect(
        fingerprint(&pe_h) == model(&symmetric_group(6).unwrap()),
        || "PE(H2(F2)) does not match the S6 fingerprint".into(),
    );

    c.conclude();
}

#[test]
fn criterion_09_pe_quotient() {
    let mut c = Criterion::new(9, "EL to PE quotient", 120);
    for (q, rows, cols, el, z, pe) in
        [(2, 1, 1, 6, 1, 6), (3, 1, 1, 24, 2, 12), (2, 1, 2, 168, 1, 168)]
    {
        let rep = verify_pe_quotient(&fp(q), rows, cols, 100_000).expect("quotient suite");
        c.suite(&rep);
        for (key, want) in [("|EL|", el), ("|Z(EL)|", z), ("|PE|", pe), ("|Ker uad|", z)] {
            let got = c.counter(&rep, key);
            c.expect(got == want, || {
                format!("rect({q},{rows},{cols}): {key} = {got}, want {want}")
            });
        }
    }
    c.conclude();
}

#[test]
fn criterion_10_homomorphism_instances() {
    let mut c = Criterion::new(10, "presented-to-concrete maps", 120);

    // the linear Steinberg presentation onto EL_3(F2)
    let f2 = fp(2);
    let lin = linear_presentation(&f2, 3).expect("linear presentation");
    let el3 = el_group(&f2, 3, 1000).expect("EL_3(F2)");
    let images = linear_el_images(&f2, 3, &lin).expect("images");
    c.expect(evaluate_hom(&lin, &el3, images, 1000).is_ok(), || {
        "linear(F2,3) -> EL_3(F2) failed".into()
    });

    // the graded rectangular presentation onto the same group
    let ej = rect_ej_presentation(&f2, 1, 2).expect("rect presentation");
    let images = rect_el_images(&f2, 1, 2, &ej).expect("images");
    c.expect(evaluate_hom(&ej, &el3, images, 1000).is_ok(), || {
        "rect-EJ(F2,1,2) -> EL_3(F2) failed".into()
    });

    // the exponential assignment out of every graded presentation
    for (name, grading) in grading_zoo() {
        let pres = jordan_st_presentation(&grading).expect("graded presentation");
        let alg = tkk_build(&grading.pair).expect("tkk");
        let images = exp_images(&alg, &pres).expect("exp images");
        if name == "alt-f2-4" {
            // PE here is far beyond enumeration range, so surjectivity
            // onto the generated subgroup is witnessed by construction
            // and only the relators are checked.
            let hom = Hom::new(&pres, pe_identity(&alg), images).expect("hom");
            let rep = verify_relators(&pres, &hom);
            c.suite(&rep);
            continue;
        }
        let pe = pe_group(&alg, 100_000).expect("pe closure");
        match evaluate_hom(&pres, &pe, images, 100_000) {
            Ok(_) => {}
            Err(e) => c.expect(false, || format!("jordan-St({name}) -> PE failed: {e}")),
        }
    }
    c.conclude();
}

#[test]
fn criterion_11_unipotent_factorization() {
    let mut c = Criterion::new(11, "b-word factorization and projection", 60);

    // in the elementary groups, through the block embedding
    for (q, rows, cols) in [(2u32, 1, 2), (3u32, 1, 2)] {
        let ring = fp(q);
        let grading = grade_rect(&ring, rows, cols).expect("grading");
        let pres = rect_ej_presentation(&ring, rows, cols).expect("presentation");
        let images = rect_el_images(&ring, rows, cols, &pres).expect("images");
        let hom = Hom::new(&pres, steinpair::matrix::ElMat::identity(&ring, rows + cols), images)
            .expect("hom");
        let rep = verify_b_factorization(&grading, &pres, &hom).expect("factorization");
        c.suite(&rep);
    }

    // in the projective elementary groups, through the exponentials,
    // plus the Bergmann-pair projection wherever it is invertible
    for (name, grading) in grading_zoo() {
        let alg = tkk_build(&grading.pair).expect("tkk");
        let pres = jordan_st_presentation(&grading).expect("presentation");
        let images = exp_images(&alg, &pres).expect("images");
        let hom = Hom::new(&pres, pe_identity(&alg), images).expect("hom");
        let rep = verify_b_factorization(&grading, &pres, &hom).expect("factorization");
        c.suite(&rep);
        let rep = verify_b_projection(&alg, &grading, &pres).expect("projection");
        c.suite(&rep);
        c.expect(rep.instances > 0, || format!("{name}: projection sweep was empty"));
    }
    c.conclude();
}

#[test]
fn criterion_12_coset_enumeration() {
    let mut c = Criterion::new(12, "coset enumeration", 300);
    let f2 = fp(2);

    // the linear presentation closes and its kernel over EL_3(F2) is
    // central; the kernel order is reported by the suite, not pinned
    let lin = linear_presentation(&f2, 3).expect("linear presentation");
    let table = todd_coxeter(&lin, &[], 100_000);
    c.expect(table.complete, || "linear(F2,3) did not close within 1e5 cosets".into());
    if table.complete {
        c.expect(table.cosets % 168 == 0, || {
            format!("{} cosets cannot surject onto EL_3(F2)", table.cosets)
        });
        let el3 = el_group(&f2, 3, 1000).expect("EL_3(F2)");
        let images = linear_el_images(&f2, 3, &lin).expect("images");
        let hom = evaluate_hom(&lin, &el3, images, 1000).expect("surjection onto EL");
        let rep = kernel_centrality_report(&lin, &table, &hom).expect("kernel report");
        c.suite(&rep);
        c.expect(rep.notes.iter().any(|n| n == "kernel is central"), || {
            "linear kernel not reported central".into()
        });
        println!(
            "  linear(F2,3): {} cosets, kernel order {} (reported)",
            table.cosets,
            c.counter(&rep, "kernel order")
        );
    }

    // the 1x1 graded presentation: a single root carries no cross-root
    // relators, so the presented group is the free product of two
    // order-2 groups, which is infinite dihedral and cannot close.
    // The enumeration is still required to complete here, so this
    // criterion fails; the relative enumeration below documents how the
    // finite quotient is reached instead.
    let ej = rect_ej_presentation(&f2, 1, 1).expect("1x1 presentation");
    let open = todd_coxeter(&ej, &[], 100_000);
    let relative = todd_coxeter(&ej, &[vec![1, 2, 1, 2, 1, 2]], 100);
    if relative.complete {
        let perms = relative.perm_images().expect("closed table");
        if let Ok(g) = FiniteGroup::closure(Perm::identity(relative.cosets), perms, 100) {
            println!(
                "  rect-EJ(F2,1,1): open at 1e5 cosets; relative to <(x+ x-)^3> it closes \
                 at {} cosets with coset group of order {}",
                relative.cosets,
                g.order()
            );
        }
    }
    c.expect(open.complete, || {
        format!(
            "rect-EJ(F2,1,1) cannot close: the table grew to its {}-coset budget because the \
             presented group is Z/2 * Z/2, which is infinite",
            open.defined
        )
    });

    c.conclude();
}

#[test]
fn criterion_13_weyl_relation() {
    let mut c = Criterion::new(13, "Weyl conjugation", 10);
    for (q, want) in [(2u32, 2u64), (3, 6), (5, 20)] {
        let rep = verify_weyl_suite(&JordanPair::full(&fp(q))).expect("weyl suite");
        c.suite(&rep);
        c.expect(rep.instances == want, || {
            format!("F{q}: {} instances, want the full {want}-sweep", rep.instances)
        });
    }
    c.conclude();
}

#[test]
fn division_weyl_presentations_close_onto_pe() {
    // Companion to the coset criterion: the Weyl-style presentations of
    // the two smallest division pairs close quickly. Over F2 the group
    // is PE itself; over F3 the enumeration finds the central double
    // cover, consistent with a central kernel of order 2 over PE = A4.
    for (q, order, kernel) in [(2u32, 6usize, 1i64), (3, 24, 2)] {
        let pair = JordanPair::full(&fp(q));
        let pres = stj_presentation(&pair).expect("presentation");
        let table = todd_coxeter(&pres, &[], 10_000);
        assert!(table.complete, "stJ(full F{q}) did not close");
        assert_eq!(table.cosets, order);
        let alg = tkk_build(&pair).expect("tkk");
        let pe = pe_group(&alg, 100).expect("pe");
        let images = exp_images(&alg, &pres).expect("images");
        let hom = evaluate_hom(&pres, &pe, images, 100).expect("onto PE");
        let rep = kernel_centrality_report(&pres, &table, &hom).expect("kernel report");
        assert!(rep.pass, "{:?}", rep.witnesses);
        let find = |k: &str| rep.counters.iter().find(|(n, _)| n == k).unwrap().1;
        assert_eq!(find("kernel order"), kernel);
        assert_eq!(find("image order"), pe.order() as i64);
    }
}
