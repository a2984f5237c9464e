//! Command-line front end. `run` does all the work so it can be driven
//! from tests with in-memory sinks.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::classify::{self, Decomposition, MAX_DIM};
use crate::error::{Error, Result};
use crate::format;
use crate::polytope::LatticePolytope;
use crate::wirth;

#[derive(Parser, Debug)]
#[command(
    name = "pseudosym",
    version,
    about = "Classify pseudo-symmetric simplicial reflexive polytopes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

fn parse_dim(s: &str) -> std::result::Result<usize, String> {
    let d: usize = s.parse().map_err(|_| format!("`{s}` is not a dimension"))?;
    if (1..=MAX_DIM).contains(&d) {
        Ok(d)
    } else {
        Err(format!("dimension must be between 1 and {MAX_DIM}"))
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List every isomorphism class in a dimension.
    Classify {
        #[arg(long, value_parser = parse_dim)]
        dim: usize,
        /// Write one vertex file per class into this directory.
        #[arg(long, value_name = "DIR")]
        emit_vertices: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Report the properties and decomposition of a polytope file.
    Inspect {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Check the vertex, facet, lattice-point and embedding bounds.
    Verify {
        #[arg(long, value_parser = parse_dim, required_unless_present = "path", conflicts_with = "path")]
        dim: Option<usize>,
        #[arg(long)]
        path: Option<PathBuf>,
    },
    /// Find a unimodular map taking a polytope into the cube [-1,1]^d.
    Embed { path: PathBuf },
    /// List Wirth matrices up to equivalence.
    WirthList {
        #[arg(long, value_parser = parse_dim)]
        dim: usize,
        /// Only matrices without unit rows.
        #[arg(long)]
        one_minimal: bool,
    },
}

/// Exit status of a failed run.
enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

fn check_dim(d: usize) -> std::result::Result<(), Failure> {
    parse_dim(&d.to_string())
        .map(|_| ())
        .map_err(Failure::Usage)
}

/// Runs one command. Returns the process exit status: 0 on success, 1 on
/// domain errors, 2 on usage errors.
pub fn run(command: &Command, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let mut buf = String::new();
    let result = match command {
        Command::Classify {
            dim,
            emit_vertices,
            format,
        } => check_dim(*dim)
            .and_then(|_| cmd_classify(*dim, emit_vertices.as_deref(), *format, &mut buf)),
        Command::Inspect { path, format } => cmd_inspect(path, *format, &mut buf),
        Command::Verify { dim, path } => match (dim, path) {
            (Some(d), None) => check_dim(*d).and_then(|_| cmd_verify_dim(*d, &mut buf)),
            (None, Some(p)) => cmd_verify_path(p, &mut buf),
            _ => Err(Failure::Usage(
                "verify needs exactly one of --dim and --path".into(),
            )),
        },
        Command::Embed { path } => cmd_embed(path, &mut buf),
        Command::WirthList { dim, one_minimal } => {
            check_dim(*dim).and_then(|_| cmd_wirth_list(*dim, *one_minimal, &mut buf))
        }
    };
    let status = match &result {
        Ok(code) => *code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "usage error: {msg}");
            2
        }
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    };
    if out
        .write_all(buf.as_bytes())
        .and_then(|_| out.flush())
        .is_err()
    {
        return 1;
    }
    status
}

type CmdResult = std::result::Result<i32, Failure>;

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(value)
        .map_err(|e| Error::Internal(format!("JSON encoding failed: {e}")))
}

fn cmd_classify(d: usize, emit: Option<&Path>, fmt: OutputFormat, buf: &mut String) -> CmdResult {
    let classes = classify::classify(d)?;
    let polytopes: Vec<LatticePolytope> = classes
        .par_iter()
        .map(classify::compose)
        .collect::<Result<_>>()?;
    if let Some(dir) = emit {
        std::fs::create_dir_all(dir).map_err(Error::from)?;
        let hashes: Vec<String> = polytopes
            .par_iter()
            .map(|p| classify::canonical_form(p).map(|c| c.hash))
            .collect::<Result<_>>()?;
        for (i, ((dec, p), hash)) in classes.iter().zip(&polytopes).zip(&hashes).enumerate() {
            let text = format::write_polytope(p, Some(&dec.to_string()));
            std::fs::write(dir.join(format!("{:03}-{hash}.txt", i + 1)), text)
                .map_err(Error::from)?;
        }
    }
    match fmt {
        OutputFormat::Json => {
            let _ = writeln!(buf, "{}", to_json(&classes)?);
        }
        OutputFormat::Text => {
            let _ = writeln!(buf, "# dimension {d}: {} classes", classes.len());
            for (i, (dec, p)) in classes.iter().zip(&polytopes).enumerate() {
                let _ = writeln!(
                    buf,
                    "{:>3}  {:<40} vertices {:>3}  facets {:>4}",
                    i + 1,
                    dec.to_string(),
                    p.num_vertices(),
                    p.facets().len()
                );
            }
        }
    }
    Ok(0)
}

#[derive(Serialize)]
struct InspectReport {
    dim: usize,
    vertices: usize,
    facets: usize,
    f_vector: Vec<usize>,
    reflexive: bool,
    simplicial: bool,
    centrally_symmetric: bool,
    pseudo_symmetric: bool,
    smooth: bool,
    decomposition: Option<Decomposition>,
    #[serde(skip)]
    why_no_decomposition: Option<String>,
}

fn inspect(p: &LatticePolytope) -> Result<InspectReport> {
    let (decomposition, why) = match classify::decompose(p) {
        Ok(d) => (Some(d), None),
        Err(e @ (Error::NotSimplicial | Error::NotReflexive | Error::NotPseudoSymmetric)) => {
            (None, Some(e.to_string()))
        }
        Err(e) => return Err(e),
    };
    Ok(InspectReport {
        dim: p.dim(),
        vertices: p.num_vertices(),
        facets: p.facets().len(),
        f_vector: p.f_vector()?,
        reflexive: p.is_reflexive(),
        simplicial: p.is_simplicial(),
        centrally_symmetric: p.is_centrally_symmetric(),
        pseudo_symmetric: p.is_pseudo_symmetric(),
        smooth: p.is_smooth_fano(),
        decomposition,
        why_no_decomposition: why,
    })
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn cmd_inspect(path: &Path, fmt: OutputFormat, buf: &mut String) -> CmdResult {
    let p = format::read_polytope_file(path)?;
    let r = inspect(&p)?;
    match fmt {
        OutputFormat::Json => {
            let _ = writeln!(buf, "{}", to_json(&r)?);
        }
        OutputFormat::Text => {
            let fv: Vec<String> = r.f_vector.iter().map(ToString::to_string).collect();
            let _ = writeln!(buf, "dimension: {}", r.dim);
            let _ = writeln!(buf, "vertices: {}", r.vertices);
            let _ = writeln!(buf, "facets: {}", r.facets);
            let _ = writeln!(buf, "f-vector: {}", fv.join(" "));
            let _ = writeln!(buf, "reflexive: {}", yes(r.reflexive));
            let _ = writeln!(buf, "simplicial: {}", yes(r.simplicial));
            let _ = writeln!(buf, "centrally symmetric: {}", yes(r.centrally_symmetric));
            let _ = writeln!(buf, "pseudo-symmetric: {}", yes(r.pseudo_symmetric));
            let _ = writeln!(buf, "smooth: {}", yes(r.smooth));
            match (&r.decomposition, &r.why_no_decomposition) {
                (Some(d), _) => {
                    let _ = writeln!(buf, "decomposition: {d}");
                }
                (None, why) => {
                    let _ = writeln!(
                        buf,
                        "decomposition: none ({})",
                        why.as_deref().unwrap_or("unknown")
                    );
                }
            }
        }
    }
    Ok(0)
}

/// One verification line; `true` when every check passes.
fn verify_line(p: &LatticePolytope, buf: &mut String, label: &str) -> Result<bool> {
    let r = classify::verify_theorems(p)?;
    let u = classify::embed_in_cube(p)?;
    let in_cube = p
        .transform(&u)?
        .vertices()
        .iter()
        .flatten()
        .all(|x| x.abs() <= 1);
    let dual = classify::dual_embedding_bound(p)?;
    let ok = r.passes() && in_cube && dual.passes;
    let _ = writeln!(
        buf,
        "{label:<44} vertices {}/{}  facets {}/{}  points {}/{}  facet-points {}/{}  cube {}  dual {}/{}  {}",
        r.vertices.value,
        r.vertices.limit,
        r.facets.value,
        r.facets.limit,
        r.lattice_points.value,
        r.lattice_points.limit,
        r.facet_lattice_points.value,
        r.facet_lattice_points.limit,
        yes(in_cube),
        dual.max_abs_coordinate,
        dual.bound,
        if ok { "PASS" } else { "FAIL" }
    );
    Ok(ok)
}

fn cmd_verify_dim(d: usize, buf: &mut String) -> CmdResult {
    let classes = classify::classify(d)?;
    let mut passed = 0;
    for (i, dec) in classes.iter().enumerate() {
        let p = classify::compose(dec)?;
        if verify_line(&p, buf, &format!("{:>3}  {dec}", i + 1))? {
            passed += 1;
        }
    }
    let _ = writeln!(buf, "{passed}/{} classes verified", classes.len());
    Ok(if passed == classes.len() { 0 } else { 1 })
}

fn cmd_verify_path(path: &Path, buf: &mut String) -> CmdResult {
    let p = format::read_polytope_file(path)?;
    let dec = classify::decompose(&p)?;
    let ok = verify_line(&p, buf, &dec.to_string())?;
    let _ = writeln!(buf, "{}/1 classes verified", usize::from(ok));
    Ok(if ok { 0 } else { 1 })
}

fn cmd_embed(path: &Path, buf: &mut String) -> CmdResult {
    let p = format::read_polytope_file(path)?;
    let u = classify::embed_in_cube(&p)?;
    let image = p.transform(&u)?;
    buf.push_str(&format::write_polytope(&image, Some(&format!("u = {u}"))));
    Ok(0)
}

fn cmd_wirth_list(d: usize, one_minimal: bool, buf: &mut String) -> CmdResult {
    let list = if one_minimal {
        wirth::enumerate_one_minimal(d)
    } else {
        wirth::enumerate_all(d)
    };
    let _ = writeln!(buf, "# dimension {d}: {} matrices", list.len());
    for (i, w) in list.iter().enumerate() {
        let _ = writeln!(buf, "{:>3}  f={}  {w}", i + 1, w.f());
    }
    Ok(0)
}
