//! Batch command line: suite runner, group enumeration, coset
//! enumeration and the pair zoo, all reporting JSON.
//!
//! Exit codes: 0 all checks passed, 1 a verification failed, 2 a budget
//! ran out (closure or coset limit), 3 a selector did not resolve,
//! 4 anything else.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use steinpair::grading::RootGrading;
use steinpair::group::{group_analyze, FiniteGroup, GroupElement};
use steinpair::jordan::{verify_jp, verify_peirce, Idempotent, JordanPair, JpOptions};
use steinpair::linalg::DenseMat;
use steinpair::matrix::{
    el_group, verify_block_additivity, verify_block_commutator, verify_e_suite, verify_generation, FinMatrix,
};
use steinpair::pegroup::{pe_group, verify_pe_quotient, verify_weyl_suite, PeMat};
use steinpair::report::{Report, SuiteReport};
use steinpair::ring::{Ring, RingTableSpec};
use steinpair::steinberg::{
    evaluate_hom, exp_images, jordan_st_presentation, linear_el_images, linear_presentation,
    rect_ej_presentation, rect_el_images, stj_presentation, verify_b_factorization,
    verify_b_projection, verify_phi_triangle, verify_relators, Hom, Presentation,
};
use steinpair::tkk::{tkk_build, verify_psi, verify_tkk_suite};
use steinpair::toddcox::{kernel_centrality_report, todd_coxeter};
use steinpair::zoo::{grading_zoo, make_grading, make_pair, pair_zoo, ring_by_name};
use steinpair::{Error, Result};

#[derive(Parser)]
#[command(name = "steinpair", version, about = "Jordan pair and Steinberg group verifier")]
struct Cli {
    /// Ring selector: F2, F3, F4, F5, Z4, MAT2F2, F2XF2, ...
    #[arg(long, global = true, default_value = "F2")]
    ring: String,

    /// Structure-constant ring JSON, overrides --ring
    #[arg(long, global = true, value_name = "PATH")]
    ring_file: Option<PathBuf>,

    /// Pair family: full, rect, herm, alt, quad
    #[arg(long, global = true, default_value = "full")]
    pair: String,

    /// Row count of a rectangular block; matrix size for herm and alt
    #[arg(long = "I", visible_alias = "rows", global = true, default_value_t = 1)]
    rows: u32,

    /// Column count of a rectangular block
    #[arg(long = "J", visible_alias = "cols", global = true, default_value_t = 1)]
    cols: u32,

    /// Element budget for group closures
    #[arg(long, global = true, default_value_t = 100_000)]
    budget: usize,

    /// Sample count for identity checks too large to sweep exhaustively
    #[arg(long, global = true, default_value_t = 4_000)]
    samples: u64,

    /// Seed for the sampled checks
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Write the JSON report here instead of stdout
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a verification suite against the selected pair or grading
    Verify {
        /// One of: jp, peirce, e, blocks, generation, grading, tkk, psi,
        /// pe-quotient, weyl, elimination, relators, bfact, bproj
        #[arg(long)]
        suite: String,
    },
    /// Enumerate a finite group and print its fingerprint
    Enumerate {
        /// el for the elementary matrix group, pe for the projective
        /// elementary group of the selected pair
        #[arg(long)]
        group: String,
    },
    /// Enumerate subgroup cosets of a presented group
    Coset {
        /// One of: linear, rect-EJ, jordan-St, stJ
        #[arg(long)]
        presentation: String,

        /// Subgroup generator word, signed 1-based letters like 1,-2,1;
        /// repeat the flag for more generators
        #[arg(long)]
        subgroup: Vec<String>,

        #[arg(long, default_value_t = 100_000)]
        max_cosets: usize,

        /// Write the generator names and relator words to this path
        #[arg(long, value_name = "PATH")]
        export: Option<PathBuf>,
    },
    /// List the built-in pairs and gradings
    Zoo,
}

fn resolve_ring(cli: &Cli) -> Result<Ring> {
    if let Some(path) = &cli.ring_file {
        let text = std::fs::read_to_string(path)?;
        let spec: RingTableSpec = serde_json::from_str(&text)?;
        return Ring::structure_constants(&spec);
    }
    ring_by_name(&cli.ring)
}

fn grading_for(cli: &Cli, ring: &Ring) -> Result<RootGrading> {
    make_grading(&cli.pair, ring, cli.rows, cli.cols)
}

fn unit_idempotent(pair: &JordanPair) -> Result<Idempotent> {
    let ring = pair.base();
    let e = FinMatrix::single(ring, 0, 0, ring.one());
    Idempotent::new(pair, e.clone(), e)
}

fn fingerprint_suite<E: GroupElement>(
    name: String,
    group: &FiniteGroup<E>,
) -> Result<SuiteReport> {
    let fp = group_analyze(group, 20_000)?;
    let mut b = SuiteReport::start(name);
    b.counter("order", fp.order as i64);
    b.counter("centre order", fp.centre_order as i64);
    b.counter("derived order", fp.derived_order as i64);
    b.counter("abelianization order", fp.abelianization_order as i64);
    b.note(if fp.perfect { "perfect" } else { "not perfect" });
    if !fp.order_histogram.is_empty() {
        let hist: Vec<String> =
            fp.order_histogram.iter().map(|(o, c)| format!("{o}:{c}")).collect();
        b.note(format!("element orders {}", hist.join(" ")));
    }
    Ok(b.finish())
}

/// The homomorphism every presentation kind carries: elementary matrices
/// for the linear and rectangular kinds, exponentials for the graded and
/// division kinds.
fn canonical_images(cli: &Cli, ring: &Ring, pres: &Presentation) -> Result<Vec<PeMat>> {
    let pair = match pres.name.split('(').next().unwrap_or("") {
        "linear" | "rect-EJ" => None,
        _ => Some(make_pair(&cli.pair, ring, cli.rows, cli.cols)?),
    };
    match pair {
        None => Err(Error::Selector("matrix-valued images handled separately".into())),
        Some(p) => {
            let alg = tkk_build(&p)?;
            exp_images(&alg, pres)
        }
    }
}

fn run_verify(cli: &Cli, ring: &Ring, suite: &str) -> Result<Vec<SuiteReport>> {
    let opts = JpOptions { max_exhaustive: 60_000, samples: cli.samples, seed: cli.seed };
    match suite {
        "jp" => {
            let pair = make_pair(&cli.pair, ring, cli.rows, cli.cols)?;
            Ok(vec![verify_jp(&pair, &opts)])
        }
        "peirce" => {
            let pair = make_pair(&cli.pair, ring, cli.rows, cli.cols)?;
            let e = unit_idempotent(&pair)?;
            Ok(vec![verify_peirce(&pair, &e)?])
        }
        "e" => Ok(vec![verify_e_suite(ring, cli.rows)]),
        "blocks" => Ok(vec![
            verify_block_additivity(ring, cli.rows, cli.cols),
            verify_block_commutator(ring, cli.rows, cli.cols),
        ]),
        "generation" => Ok(vec![verify_generation(ring, cli.rows, cli.cols, cli.budget)?]),
        "grading" => Ok(vec![grading_for(cli, ring)?.verify_grading_suite()]),
        "tkk" => {
            let pair = make_pair(&cli.pair, ring, cli.rows, cli.cols)?;
            let alg = tkk_build(&pair)?;
            Ok(vec![verify_tkk_suite(&alg)])
        }
        "psi" => Ok(vec![verify_psi(ring, cli.rows, cli.cols)?]),
        "pe-quotient" => Ok(vec![verify_pe_quotient(ring, cli.rows, cli.cols, cli.budget)?]),
        "weyl" => {
            let pair = make_pair(&cli.pair, ring, cli.rows, cli.cols)?;
            Ok(vec![verify_weyl_suite(&pair)?])
        }
        "elimination" => Ok(vec![verify_phi_triangle(ring, cli.rows, cli.cols)]),
        "relators" => {
            // Graded families get the graded presentation under the
            // exponential assignment; full division pairs the Weyl one.
            if cli.pair == "full" {
                let pair = make_pair("full", ring, 1, 1)?;
                let pres = stj_presentation(&pair)?;
                let alg = tkk_build(&pair)?;
                let images = exp_images(&alg, &pres)?;
                let id = PeMat(DenseMat::identity(alg.p, alg.dim()));
                let hom = Hom::new(&pres, id, images)?;
                Ok(vec![verify_relators(&pres, &hom)])
            } else {
                let grading = grading_for(cli, ring)?;
                let pres = jordan_st_presentation(&grading)?;
                let alg = tkk_build(&grading.pair)?;
                let images = exp_images(&alg, &pres)?;
                let id = PeMat(DenseMat::identity(alg.p, alg.dim()));
                let hom = Hom::new(&pres, id, images)?;
                Ok(vec![verify_relators(&pres, &hom)])
            }
        }
        "bfact" => {
            let grading = grading_for(cli, ring)?;
            let pres = jordan_st_presentation(&grading)?;
            let alg = tkk_build(&grading.pair)?;
            let images = exp_images(&alg, &pres)?;
            let id = PeMat(DenseMat::identity(alg.p, alg.dim()));
            let hom = Hom::new(&pres, id, images)?;
            Ok(vec![verify_b_factorization(&grading, &pres, &hom)?])
        }
        "bproj" => {
            let grading = grading_for(cli, ring)?;
            let pres = jordan_st_presentation(&grading)?;
            let alg = tkk_build(&grading.pair)?;
            Ok(vec![verify_b_projection(&alg, &grading, &pres)?])
        }
        other => Err(Error::Selector(format!("unknown suite {other}"))),
    }
}

fn run_enumerate(cli: &Cli, ring: &Ring, which: &str) -> Result<Vec<SuiteReport>> {
    match which {
        "el" => {
            let n = cli.rows + cli.cols;
            let g = el_group(ring, n, cli.budget)?;
            Ok(vec![fingerprint_suite(format!("EL_{n}({})", ring.name()), &g)?])
        }
        "pe" => {
            let pair = make_pair(&cli.pair, ring, cli.rows, cli.cols)?;
            let alg = tkk_build(&pair)?;
            let g = pe_group(&alg, cli.budget)?;
            Ok(vec![fingerprint_suite(format!("PE({})", pair.name), &g)?])
        }
        other => Err(Error::Selector(format!("unknown group kind {other}"))),
    }
}

fn parse_word(text: &str) -> Result<Vec<i32>> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<i32>()
                .map_err(|_| Error::Selector(format!("bad word letter {t:?}")))
        })
        .collect()
}

fn run_coset(
    cli: &Cli,
    ring: &Ring,
    which: &str,
    subgroup: &[String],
    max_cosets: usize,
    export: &Option<PathBuf>,
) -> Result<(Vec<SuiteReport>, bool)> {
    let pres = match which {
        "linear" => linear_presentation(ring, cli.rows)?,
        "rect-EJ" | "rect-ej" => rect_ej_presentation(ring, cli.rows, cli.cols)?,
        "jordan-St" | "jordan-st" => jordan_st_presentation(&grading_for(cli, ring)?)?,
        "stJ" | "stj" => {
            stj_presentation(&make_pair(&cli.pair, ring, cli.rows, cli.cols)?)?
        }
        other => return Err(Error::Selector(format!("unknown presentation {other}"))),
    };
    if let Some(path) = export {
        std::fs::write(path, pres.export_text())?;
    }
    let words: Vec<Vec<i32>> = subgroup.iter().map(|t| parse_word(t)).collect::<Result<_>>()?;
    let table = todd_coxeter(&pres, &words, max_cosets);
    let mut b = SuiteReport::start(format!("{}: coset enumeration", pres.name));
    b.counter("cosets", table.cosets as i64);
    b.counter("defined", table.defined as i64);
    b.note(if table.complete { "table closed" } else { "budget exhausted, table open" });
    let head = b.finish();
    if !table.complete {
        return Ok((vec![head], true));
    }
    let mut suites = vec![head];
    if words.is_empty() {
        // With the trivial subgroup the closed table gives the whole
        // group, so compare it against the canonical image.
        let kc = match which {
            "linear" => {
                let el = el_group(ring, cli.rows, cli.budget)?;
                let images = linear_el_images(ring, cli.rows, &pres)?;
                let hom = evaluate_hom(&pres, &el, images, cli.budget)?;
                kernel_centrality_report(&pres, &table, &hom)?
            }
            "rect-EJ" | "rect-ej" => {
                let el = el_group(ring, cli.rows + cli.cols, cli.budget)?;
                let images = rect_el_images(ring, cli.rows, cli.cols, &pres)?;
                let hom = evaluate_hom(&pres, &el, images, cli.budget)?;
                kernel_centrality_report(&pres, &table, &hom)?
            }
            _ => {
                let images = canonical_images(cli, ring, &pres)?;
                let id = images
                    .first()
                    .map(|m| PeMat(DenseMat::identity(m.0.p, m.0.rows)))
                    .ok_or_else(|| Error::Presentation("no generators to map".into()))?;
                let hom = Hom::new(&pres, id, images)?;
                kernel_centrality_report(&pres, &table, &hom)?
            }
        };
        suites.push(kc);
    }
    Ok((suites, false))
}

fn run_zoo() -> Vec<SuiteReport> {
    let mut b = SuiteReport::start("zoo");
    for (name, pair) in pair_zoo() {
        let (rp, cp) = pair.shape(steinpair::jordan::Sign::Plus);
        b.note(format!("pair {name}: {} [{rp}x{cp}] size {}", pair.name, pair.size(steinpair::jordan::Sign::Plus)));
    }
    for (name, grading) in grading_zoo() {
        b.note(format!(
            "grading {name}: {} roots, pair {}",
            grading.grading.r1.len(),
            grading.pair.name
        ));
    }
    vec![b.finish()]
}

fn run(cli: &Cli) -> Result<(Report, bool)> {
    let ring = resolve_ring(cli)?;
    let config = json!({
        "ring": ring.name(),
        "pair": cli.pair,
        "rows": cli.rows,
        "cols": cli.cols,
        "budget": cli.budget,
        "samples": cli.samples,
        "seed": cli.seed,
        "command": match &cli.cmd {
            Cmd::Verify { suite } => json!({"verify": suite}),
            Cmd::Enumerate { group } => json!({"enumerate": group}),
            Cmd::Coset { presentation, subgroup, max_cosets, export } => json!({
                "coset": presentation,
                "subgroup": subgroup,
                "max_cosets": max_cosets,
                "export": export.as_ref().map(|p| p.display().to_string()),
            }),
            Cmd::Zoo => json!("zoo"),
        },
    });
    let (suites, exhausted) = match &cli.cmd {
        Cmd::Verify { suite } => (run_verify(cli, &ring, suite)?, false),
        Cmd::Enumerate { group } => (run_enumerate(cli, &ring, group)?, false),
        Cmd::Coset { presentation, subgroup, max_cosets, export } => {
            run_coset(cli, &ring, presentation, subgroup, *max_cosets, export)?
        }
        Cmd::Zoo => (run_zoo(), false),
    };
    let mut report = Report::new(config, suites);
    report.budget_exhausted = exhausted;
    Ok((report, exhausted))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((report, exhausted)) => {
            let text = serde_json::to_string_pretty(&report)
                .unwrap_or_else(|e| format!("{{\"serialization error\": \"{e}\"}}"));
            match &cli.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, &text) {
                        eprintln!("cannot write report: {e}");
                        return ExitCode::from(4);
                    }
                }
                None => {
                    use std::io::Write;
                    let mut stdout = std::io::stdout().lock();
                    // a closed pipe downstream is not our failure
                    let _ = writeln!(stdout, "{text}");
                }
            }
            if exhausted {
                ExitCode::from(2)
            } else if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Selector(_) => ExitCode::from(3),
                Error::Budget(_) => ExitCode::from(2),
                _ => ExitCode::from(4),
            }
        }
    }
}
