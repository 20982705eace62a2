//! `matdepth`: every library operation behind one executable.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 usage or input
//! errors (including parse failures, which carry line numbers).

mod report;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};
use matdepth_core::connectivity::{lambda1, lambda2_labels, lambda_star, PartitionFamily};
use matdepth_core::decomposition::{
    root_decomposition, search_rooted, validate_rooted, validate_unrooted, DecompositionTree,
};
use matdepth_core::depth::{cd, cdd, dd, verify_certificate, DepthCertificate, DepthMode};
use matdepth_core::embedding::{
    bound_value, embed_with_assertions, nullspaces_match, sampled_rank_equal,
};
use matdepth_core::generators::{self, MultiGraph};
use matdepth_core::selftest;
use matdepth_core::{Error, FieldSpec, MinorSchedule, RepresentedMatroid, Subspace};
use report::RunReport;
use std::fs;
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(name = "matdepth", version, about = "Matroid depth parameters, decompositions and depth-bounded embeddings over GF(p)")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Rank of the matroid, or of a subset of its elements
    Rank {
        matroid: PathBuf,
        /// comma-separated element labels
        #[arg(long)]
        elements: Option<String>,
    },
    /// Connectivity lambda of a bipartition (or of a disjoint pair)
    Lambda {
        matroid: PathBuf,
        /// comma-separated labels on the left side
        #[arg(long)]
        left: String,
        /// optional right side; defaults to the complement
        #[arg(long)]
        right: Option<String>,
    },
    /// lambda* of a partition family, maximising lambda over block unions
    Lambdastar {
        matroid: PathBuf,
        /// blocks as comma-separated labels, separated by semicolons
        #[arg(long)]
        blocks: String,
    },
    /// Connected components, one per line
    Components { matroid: PathBuf },
    /// Apply a contraction/deletion schedule and print the resulting minor
    Minor {
        matroid: PathBuf,
        schedule: PathBuf,
        /// write the minor here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Validate a (d, r)-decomposition tree, unrooted by default
    ValidateDecomp {
        matroid: PathBuf,
        tree: PathBuf,
        #[arg(short, long)]
        depth: usize,
        #[arg(short = 'r', long)]
        width: usize,
        /// check the rooted conditions instead of the unrooted ones
        #[arg(long)]
        rooted: bool,
    },
    /// Root a valid unrooted decomposition at a center vertex
    RootDecomp {
        matroid: PathBuf,
        tree: PathBuf,
        #[arg(short, long)]
        depth: usize,
        #[arg(short = 'r', long)]
        width: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustively search for a rooted (d, r)-decomposition
    SearchDecomp {
        matroid: PathBuf,
        #[arg(short, long)]
        depth: usize,
        #[arg(short = 'r', long)]
        width: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact contraction-deletion-depth with certificate
    Cdd { matroid: PathBuf },
    /// Exact contraction-depth with certificate
    Cd { matroid: PathBuf },
    /// Exact deletion-depth with certificate
    Dd { matroid: PathBuf },
    /// Replay a depth certificate and print its value
    VerifyCert {
        matroid: PathBuf,
        certificate: PathBuf,
        /// which step kinds the certificate may use
        #[arg(long, default_value = "cdd")]
        mode: String,
    },
    /// The common flat subspace of a family of spaces, with its trace
    SharedSubspace {
        /// pfm files whose rows span each subspace
        spaces: Vec<PathBuf>,
    },
    /// Embed a decomposed matroid into a host of small depth
    Embed {
        matroid: PathBuf,
        tree: PathBuf,
        #[arg(short, long)]
        depth: usize,
        #[arg(short = 'r', long)]
        width: usize,
        /// writes P.N.pfm, P.schedule.txt, P.cert.sexp and P.report.txt
        #[arg(long)]
        out_prefix: String,
        /// replay the per-frame inequalities while constructing
        #[arg(long = "assert")]
        assertions: bool,
    },
    /// Re-verify an embedding: recovery, certificate bound, nullspace test
    VerifyEmbedding {
        host: PathBuf,
        schedule: PathBuf,
        certificate: PathBuf,
        matroid: PathBuf,
        #[arg(short, long)]
        depth: usize,
        #[arg(short = 'r', long)]
        width: usize,
        /// largest element count checked by basis enumeration; larger
        /// recoveries fall back to sampled subset ranks
        #[arg(long, default_value_t = 20)]
        max_enum: usize,
    },
    /// Instance generators
    Gen {
        #[command(subcommand)]
        what: GenCmd,
    },
    /// Run the acceptance criteria (the CI entry point)
    Selftest {
        /// run a single criterion by number
        #[arg(long)]
        only: Option<usize>,
        /// also print the seed manifest
        #[arg(long)]
        manifest: bool,
    },
}

#[derive(Subcommand)]
enum GenCmd {
    /// Cycle of length n with each edge in n parallel copies
    Fatcycle {
        n: usize,
        #[arg(long, default_value_t = 2)]
        field: u64,
        /// writes P.pfm and P.tree.sexp instead of stdout/stderr
        #[arg(long)]
        out_prefix: Option<String>,
    },
    /// Uniform matroid U_{r,n}
    Uniform {
        r: usize,
        n: usize,
        p: u64,
        #[arg(long)]
        out_prefix: Option<String>,
    },
    /// Graphic matroid of a multigraph edge list
    Graphic {
        edges: PathBuf,
        #[arg(long, default_value_t = 2)]
        field: u64,
        #[arg(long)]
        out_prefix: Option<String>,
    },
    /// Seeded random matrix
    Random {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        #[arg(long, default_value_t = 2)]
        field: u64,
        #[arg(long)]
        out_prefix: Option<String>,
    },
}

fn main() {
    let cli = Cli::parse();
    match dispatch(cli.cmd) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(exit_code_for(&e));
        }
    }
}

/// Verification mismatches exit 1; everything else (usage, parse, guards)
/// exits 2.
fn exit_code_for(e: &anyhow::Error) -> i32 {
    match e.downcast_ref::<Error>() {
        Some(Error::Certificate { .. }) | Some(Error::Invariant { .. }) => 1,
        _ => 2,
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_matroid(path: &Path) -> anyhow::Result<(RepresentedMatroid, String)> {
    let text = read(path)?;
    let m = RepresentedMatroid::from_pfm(&text)
        .with_context(|| format!("parsing {}", path.display()))?;
    Ok((m, text))
}

fn read_tree(path: &Path) -> anyhow::Result<(DecompositionTree, String)> {
    let text = read(path)?;
    let t =
        DecompositionTree::parse(&text).with_context(|| format!("parsing {}", path.display()))?;
    Ok((t, text))
}

fn labels_of(arg: &str) -> anyhow::Result<Vec<String>> {
    let out: Vec<String> = arg
        .split(',')
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect();
    if out.is_empty() {
        bail!("empty label list {arg:?}");
    }
    Ok(out)
}

fn write_out(path: &str, content: &str) -> anyhow::Result<()> {
    fs::write(path, content).with_context(|| format!("writing {path}"))
}

fn dispatch(cmd: Cmd) -> anyhow::Result<i32> {
    match cmd {
        Cmd::Rank { matroid, elements } => {
            let (m, _) = read_matroid(&matroid)?;
            let value = match elements {
                Some(list) => m.rank_of(&labels_of(&list)?)?,
                None => m.rank(),
            };
            println!("{value}");
            Ok(0)
        }
        Cmd::Lambda {
            matroid,
            left,
            right,
        } => {
            let (m, _) = read_matroid(&matroid)?;
            let left = labels_of(&left)?;
            let value = match right {
                Some(r) => lambda2_labels(&m, &left, &labels_of(&r)?)?,
                None => lambda1(&m, &m.indices_of(&left)?)?,
            };
            println!("{value}");
            Ok(0)
        }
        Cmd::Lambdastar { matroid, blocks } => {
            let (m, _) = read_matroid(&matroid)?;
            let parsed: Vec<Vec<String>> = blocks
                .split(';')
                .map(labels_of)
                .collect::<anyhow::Result<_>>()?;
            let family = PartitionFamily::from_labels(&m, &parsed)?;
            println!("{}", lambda_star(&m, &family)?);
            Ok(0)
        }
        Cmd::Components { matroid } => {
            let (m, _) = read_matroid(&matroid)?;
            for comp in m.components() {
                println!("{}", comp.join(" "));
            }
            Ok(0)
        }
        Cmd::Minor {
            matroid,
            schedule,
            out,
        } => {
            let (m, _) = read_matroid(&matroid)?;
            let sched = MinorSchedule::parse(&read(&schedule)?)
                .with_context(|| format!("parsing {}", schedule.display()))?;
            let minor = m.apply_schedule(&sched)?;
            match out {
                Some(path) => write_out(&path.to_string_lossy(), &minor.to_pfm())?,
                None => print!("{}", minor.to_pfm()),
            }
            Ok(0)
        }
        Cmd::ValidateDecomp {
            matroid,
            tree,
            depth,
            width,
            rooted,
        } => {
            let (m, m_text) = read_matroid(&matroid)?;
            let (t, t_text) = read_tree(&tree)?;
            let decomp_report = if rooted {
                validate_rooted(&m, &t, depth, width)?
            } else {
                validate_unrooted(&m, &t, depth, width)?
            };
            let mut rep = RunReport::new(if rooted {
                "validate-decomp --rooted"
            } else {
                "validate-decomp"
            });
            rep.input(&matroid.to_string_lossy(), &m_text);
            rep.input(&tree.to_string_lossy(), &t_text);
            rep.value("budgets", format!("depth {depth}, width {width}"));
            rep.check("decomposition valid", decomp_report.is_valid(), &decomp_report);
            print!("{}", rep.render());
            Ok(if decomp_report.is_valid() { 0 } else { 1 })
        }
        Cmd::RootDecomp {
            matroid,
            tree,
            depth,
            width,
            out,
        } => {
            let (m, _) = read_matroid(&matroid)?;
            let (t, _) = read_tree(&tree)?;
            let rooted = root_decomposition(&m, &t, depth, width)?;
            match out {
                Some(path) => write_out(&path.to_string_lossy(), &(rooted.render() + "\n"))?,
                None => println!("{}", rooted.render()),
            }
            Ok(0)
        }
        Cmd::SearchDecomp {
            matroid,
            depth,
            width,
            out,
        } => {
            let (m, _) = read_matroid(&matroid)?;
            match search_rooted(&m, depth, width)? {
                Some(t) => {
                    match out {
                        Some(path) => write_out(&path.to_string_lossy(), &(t.render() + "\n"))?,
                        None => println!("{}", t.render()),
                    }
                    Ok(0)
                }
                None => {
                    println!("none");
                    Ok(0)
                }
            }
        }
        Cmd::Cdd { matroid } => depth_command(&matroid, DepthMode::Cdd),
        Cmd::Cd { matroid } => depth_command(&matroid, DepthMode::Cd),
        Cmd::Dd { matroid } => depth_command(&matroid, DepthMode::Dd),
        Cmd::VerifyCert {
            matroid,
            certificate,
            mode,
        } => {
            let (m, _) = read_matroid(&matroid)?;
            let cert = DepthCertificate::parse(&read(&certificate)?)
                .with_context(|| format!("parsing {}", certificate.display()))?;
            let mode = parse_mode(&mode)?;
            let value = verify_certificate(&m, &cert, mode)?;
            println!("{value}");
            Ok(0)
        }
        Cmd::SharedSubspace { spaces } => {
            if spaces.len() < 2 {
                bail!("need at least two subspace files");
            }
            let parsed: Vec<Subspace> = spaces
                .iter()
                .map(|p| {
                    Subspace::from_pfm(&read(p)?)
                        .with_context(|| format!("parsing {}", p.display()))
                })
                .collect::<anyhow::Result<_>>()?;
            let (a, trace) = matdepth_core::shared_subspace::shared_subspace(&parsed)?;
            print!("{}", a.to_pfm());
            eprint!("{}", trace.render());
            Ok(0)
        }
        Cmd::Embed {
            matroid,
            tree,
            depth,
            width,
            out_prefix,
            assertions,
        } => {
            let (m, m_text) = read_matroid(&matroid)?;
            let (t, t_text) = read_tree(&tree)?;
            let res = embed_with_assertions(&m, &t, depth, width, assertions)?;
            let value = res.certificate.value();
            let mut rep = RunReport::new("embed");
            rep.input(&matroid.to_string_lossy(), &m_text);
            rep.input(&tree.to_string_lossy(), &t_text);
            rep.value("budgets", format!("depth {depth}, width {width}"));
            rep.value("host elements", res.n.len());
            rep.value("schedule steps", res.schedule.len());
            rep.value("certificate value", value);
            rep.value("bound", res.bound);
            // both were replayed during construction; failure would have
            // aborted with an invariant error
            rep.check("minor recovery (matrix equality)", true, "");
            rep.check("certificate value within bound", value <= res.bound, "");
            if assertions {
                rep.note("per-frame inequality assertions were enabled");
            }
            write_out(&format!("{out_prefix}.N.pfm"), &res.n.to_pfm())?;
            write_out(&format!("{out_prefix}.schedule.txt"), &res.schedule.render())?;
            write_out(
                &format!("{out_prefix}.cert.sexp"),
                &(res.certificate.render() + "\n"),
            )?;
            write_out(&format!("{out_prefix}.report.txt"), &rep.render())?;
            print!("{}", rep.render());
            Ok(0)
        }
        Cmd::VerifyEmbedding {
            host,
            schedule,
            certificate,
            matroid,
            depth,
            width,
            max_enum,
        } => {
            let (n, n_text) = read_matroid(&host)?;
            let (m, m_text) = read_matroid(&matroid)?;
            let sched_text = read(&schedule)?;
            let sched = MinorSchedule::parse(&sched_text)
                .with_context(|| format!("parsing {}", schedule.display()))?;
            let cert_text = read(&certificate)?;
            let cert = DepthCertificate::parse(&cert_text)
                .with_context(|| format!("parsing {}", certificate.display()))?;

            let mut rep = RunReport::new("verify-embedding");
            rep.input(&host.to_string_lossy(), &n_text);
            rep.input(&schedule.to_string_lossy(), &sched_text);
            rep.input(&certificate.to_string_lossy(), &cert_text);
            rep.input(&matroid.to_string_lossy(), &m_text);
            rep.value("budgets", format!("depth {depth}, width {width}"));

            match n.apply_schedule(&sched) {
                Ok(recovered) => {
                    let mut left: Vec<&String> = recovered.labels().iter().collect();
                    let mut right: Vec<&String> = m.labels().iter().collect();
                    left.sort();
                    right.sort();
                    let labels_equal = left == right;
                    if !labels_equal {
                        rep.check("schedule recovery", false, "recovered element set differs");
                    } else if recovered.len() <= max_enum {
                        let eq = recovered.equal_by_bases(&m)?;
                        rep.check(
                            "schedule recovery (basis sets)",
                            eq,
                            if eq { String::new() } else { "basis sets differ".into() },
                        );
                    } else {
                        let miss = sampled_rank_equal(&recovered, &m, 5000, 0x7263_7673)?;
                        rep.note("recovery checked probabilistically: 5000 sampled subset ranks");
                        match miss {
                            None => rep.check("schedule recovery (sampled ranks)", true, ""),
                            Some((subset, ra, rb)) => rep.check(
                                "schedule recovery (sampled ranks)",
                                false,
                                format!("subset {subset:?} has rank {ra} vs {rb}"),
                            ),
                        }
                    }
                    if labels_equal {
                        match nullspaces_match(&recovered, &m) {
                            Ok(ok) => rep.check(
                                "representation compatibility (nullspace)",
                                ok,
                                if ok { String::new() } else { "nullspaces differ".into() },
                            ),
                            Err(e) => {
                                rep.check("representation compatibility (nullspace)", false, e)
                            }
                        }
                    } else {
                        rep.check(
                            "representation compatibility (nullspace)",
                            false,
                            "element sets differ",
                        );
                    }
                }
                Err(e) => rep.check("schedule recovery", false, e),
            }
            let bound = bound_value(depth, width)?;
            match verify_certificate(&n, &cert, DepthMode::Cdd) {
                Ok(value) => {
                    rep.value("certificate value", value);
                    rep.value("bound", bound);
                    rep.check(
                        "certificate value within bound",
                        value <= bound,
                        if value <= bound {
                            String::new()
                        } else {
                            format!("{value} > {bound}")
                        },
                    );
                }
                Err(e) => rep.check("certificate replay", false, e),
            }
            print!("{}", rep.render());
            Ok(if rep.all_passed() { 0 } else { 1 })
        }
        Cmd::Gen { what } => gen_command(what),
        Cmd::Selftest { only, manifest } => {
            let outcomes = match only {
                Some(id) => match selftest::run_one(id) {
                    Some(o) => vec![o],
                    None => bail!("no criterion {id}; valid ids are 1..=9"),
                },
                None => selftest::run_all(),
            };
            let mut ok = true;
            for o in &outcomes {
                println!("{o}");
                ok &= o.passed;
            }
            if manifest {
                print!("{}", selftest::seed_manifest());
            }
            Ok(if ok { 0 } else { 1 })
        }
    }
}

fn parse_mode(word: &str) -> anyhow::Result<DepthMode> {
    match word {
        "cdd" => Ok(DepthMode::Cdd),
        "cd" => Ok(DepthMode::Cd),
        "dd" => Ok(DepthMode::Dd),
        other => bail!("unknown mode {other:?}, expected cdd, cd or dd"),
    }
}

fn depth_command(path: &Path, mode: DepthMode) -> anyhow::Result<i32> {
    let (m, _) = read_matroid(path)?;
    let (value, cert) = match mode {
        DepthMode::Cdd => cdd(&m)?,
        DepthMode::Cd => cd(&m)?,
        DepthMode::Dd => dd(&m)?,
    };
    println!("{value}");
    println!("{}", cert.render());
    Ok(0)
}

fn gen_command(what: GenCmd) -> anyhow::Result<i32> {
    match what {
        GenCmd::Fatcycle {
            n,
            field,
            out_prefix,
        } => {
            let (m, t) = generators::fat_cycle(n, FieldSpec::new(field)?)?;
            match out_prefix {
                Some(p) => {
                    write_out(&format!("{p}.pfm"), &m.to_pfm())?;
                    write_out(&format!("{p}.tree.sexp"), &(t.render() + "\n"))?;
                }
                None => {
                    print!("{}", m.to_pfm());
                    eprintln!("{}", t.render());
                }
            }
            Ok(0)
        }
        GenCmd::Uniform { r, n, p, out_prefix } => {
            let m = generators::uniform(r, n, FieldSpec::new(p)?)?;
            emit_matroid(&m, out_prefix)
        }
        GenCmd::Graphic {
            edges,
            field,
            out_prefix,
        } => {
            let g = MultiGraph::parse_edge_list(&read(&edges)?)
                .with_context(|| format!("parsing {}", edges.display()))?;
            let m = generators::graphic(&g, FieldSpec::new(field)?)?;
            emit_matroid(&m, out_prefix)
        }
        GenCmd::Random {
            seed,
            rows,
            cols,
            field,
            out_prefix,
        } => {
            let m = generators::random_instance(seed, rows, cols, FieldSpec::new(field)?)?;
            emit_matroid(&m, out_prefix)
        }
    }
}

fn emit_matroid(m: &RepresentedMatroid, out_prefix: Option<String>) -> anyhow::Result<i32> {
    match out_prefix {
        Some(p) => write_out(&format!("{p}.pfm"), &m.to_pfm())?,
        None => print!("{}", m.to_pfm()),
    }
    Ok(0)
}
