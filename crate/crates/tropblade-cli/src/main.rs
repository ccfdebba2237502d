//! Command-line front end.
//!
//! Every subcommand parses its input, calls one library operation, and
//! prints the result; no domain logic lives here. Exit codes: 0 for a true
//! verdict or plain success, 1 for a false verdict, 2 for input errors.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tropblade::arrangement::{self, LVector};
use tropblade::cone::{self, ConeVerdict};
use tropblade::cyclic::{
    mask_from_string, mask_labels, mask_to_string, CyclicGround, KSubset, Label,
};
use tropblade::json::{
    plabic_dot, renumber_document, renumber_map, CollectionDto, ConeReportDto, FlipDto,
    OctahedronDto, PlabicDto, PluckerDto, SeedDto, WeightsDto,
};
use tropblade::plabic;
use tropblade::tropical::{self, OctahedronVerdict};
use tropblade::wsep::{self, WCollection};
use tropblade::{rat_to_string, Error};

#[derive(Parser)]
#[command(
    name = "tropblade",
    version,
    about = "Weakly separated collections, weighted blade arrangements, and \
             positive tropical Plücker vectors"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check pairwise weak separation of the given sets
    CheckWs {
        #[command(flatten)]
        input: CollectionInput,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Complete a collection to a maximal weakly separated one
    Complete {
        #[command(flatten)]
        input: CollectionInput,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Print the base collection of cyclic intervals
    W0 {
        #[arg(long)]
        n: Label,
        #[arg(long)]
        k: u32,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// List the mutations applicable to a collection
    Flips {
        #[command(flatten)]
        input: CollectionInput,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Random mutation walk from the base collection
    Walk {
        #[arg(long)]
        n: Label,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        steps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Boundary of a collection at one ground label
    Boundary {
        #[arg(long)]
        j: Label,
        #[command(flatten)]
        input: CollectionInput,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Expand planar coordinates into a weighted blade arrangement
    BladeExpand {
        /// Single subset J: expand the J-th planar generator
        #[arg(long, conflicts_with = "input")]
        set: Option<String>,
        /// Ground size for --set
        #[arg(long, requires = "set")]
        n: Option<Label>,
        /// Planar-coordinate JSON file to expand instead
        #[arg(long = "in", value_name = "FILE")]
        input: Option<PathBuf>,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Change of basis from blade weights to planar coordinates
    LTransform {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Second differences of planar coordinates at one level
    Pi {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        /// Level subset of k-2 labels; omit when k = 2
        #[arg(long)]
        level: Option<String>,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Test the positive tropical Plücker relations
    PluckerCheck {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Classify every octahedron of a Plücker vector
    Octahedra {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        /// Restrict to one level
        #[arg(long)]
        level: Option<String>,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Test whether a positive vector induces the finest subdivision
    Finest {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Essentiality verdict for a collection's nonfrozen members
    ConeTest {
        #[command(flatten)]
        input: CollectionInput,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Tiling of a maximal collection, optionally after a boundary step
    PlabicBoundary {
        #[command(flatten)]
        input: CollectionInput,
        /// Ground label to take the boundary at; omit to print the tiling
        #[arg(long)]
        j: Option<Label>,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Extend prescribed weights on a collection to a full Plücker vector
    Extend {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[command(flatten)]
        out: OutputOpts,
    },
}

#[derive(Args)]
struct CollectionInput {
    /// Ground size (with --sets)
    #[arg(long, conflicts_with = "input")]
    n: Option<Label>,
    /// Subset size (with --sets)
    #[arg(long, conflicts_with = "input")]
    k: Option<u32>,
    /// Comma-separated digit-string sets, e.g. 124,125,134,145
    #[arg(long, conflicts_with = "input")]
    sets: Option<String>,
    /// JSON collection file
    #[arg(long = "in", value_name = "FILE")]
    input: Option<PathBuf>,
}

impl CollectionInput {
    fn load_raw(&self) -> Result<(CyclicGround, u32, Vec<u64>), CliError> {
        if let Some(path) = &self.input {
            let dto: CollectionDto = serde_json::from_str(&read(path)?)?;
            let ground = CyclicGround::new(dto.n, &dto.removed)?;
            let w = dto.to_collection()?;
            return Ok((ground, dto.k, w.members().to_vec()));
        }
        let (n, k, sets) = match (self.n, self.k, &self.sets) {
            (Some(n), Some(k), Some(sets)) => (n, k, sets),
            _ => {
                return Err(CliError::Input(
                    "provide --in FILE, or all of --n, --k, --sets".into(),
                ))
            }
        };
        let masks: Vec<u64> = sets
            .split(',')
            .map(mask_from_string)
            .collect::<Result<_, _>>()?;
        Ok((CyclicGround::full(n)?, k, masks))
    }

    fn load(&self) -> Result<WCollection, CliError> {
        let (ground, k, masks) = self.load_raw()?;
        Ok(WCollection::new(ground, k, &masks)?)
    }
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Args)]
struct OutputOpts {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write to a file instead of stdout
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Renumber a reduced ground onto 1..=m in the output
    #[arg(long)]
    renumber: bool,
}

enum CliError {
    Input(String),
    Domain(Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(msg) => write!(f, "{msg}"),
            CliError::Domain(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Input(format!("malformed JSON: {e}"))
    }
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Optional order-preserving relabeling applied to displayed output.
struct Renamer {
    map: Option<BTreeMap<Label, Label>>,
}

impl Renamer {
    fn new(opts: &OutputOpts, ground: CyclicGround) -> Renamer {
        let map = (opts.renumber && !ground.is_full()).then(|| renumber_map(ground));
        Renamer { map }
    }

    fn mask(&self, mask: u64) -> String {
        match &self.map {
            None => mask_to_string(mask),
            Some(map) => mask_to_string(
                mask_labels(mask)
                    .iter()
                    .fold(0u64, |m, x| m | 1u64 << (map[x] - 1)),
            ),
        }
    }
}

/// One result ready for emission; `verdict` drives the exit code.
struct Report {
    verdict: bool,
    ground: CyclicGround,
    text: String,
    json: serde_json::Value,
    dot: Option<String>,
}

impl Report {
    fn plain(ground: CyclicGround, text: String, json: serde_json::Value) -> Report {
        Report {
            verdict: true,
            ground,
            text,
            json,
            dot: None,
        }
    }
}

fn emit(report: Report, opts: &OutputOpts) -> Result<bool, CliError> {
    let body = match opts.format {
        Format::Text => {
            let mut t = report.text;
            if !t.ends_with('\n') {
                t.push('\n');
            }
            t
        }
        Format::Json => {
            let mut value = report.json;
            if opts.renumber {
                renumber_document(&mut value, report.ground);
            }
            let mut t = serde_json::to_string_pretty(&value)?;
            t.push('\n');
            t
        }
        Format::Dot => report.dot.ok_or_else(|| {
            CliError::Input("dot output is only available for plabic structures".into())
        })?,
    };
    match &opts.out {
        None => print!("{body}"),
        Some(path) => fs::write(path, body)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?,
    }
    Ok(report.verdict)
}

fn collection_report(w: &WCollection, opts: &OutputOpts) -> Report {
    let names = Renamer::new(opts, w.ground());
    let text = w
        .members()
        .iter()
        .map(|&m| names.mask(m))
        .collect::<Vec<_>>()
        .join("\n");
    Report::plain(
        w.ground(),
        text,
        serde_json::to_value(CollectionDto::from_collection(w)).unwrap(),
    )
}

fn parse_level(level: &Option<String>) -> Result<u64, CliError> {
    Ok(match level {
        None => 0,
        Some(s) => mask_from_string(s)?,
    })
}

fn load_plucker(path: &PathBuf) -> Result<tropical::PluckerVector, CliError> {
    let dto: PluckerDto = serde_json::from_str(&read(path)?)?;
    Ok(dto.to_plucker()?)
}

/// Planar coordinates from a weights file in either basis.
fn load_l_vector(path: &PathBuf) -> Result<LVector, CliError> {
    let dto: WeightsDto = serde_json::from_str(&read(path)?)?;
    match dto.basis.as_str() {
        "L" => Ok(dto.to_l_vector()?),
        "beta" => {
            let (coords, _) = arrangement::beta_to_l(&dto.to_arrangement()?)?;
            Ok(coords)
        }
        other => Err(CliError::Input(format!("unknown basis `{other}`"))),
    }
}

fn weights_lines<'a>(entries: impl Iterator<Item = (u64, &'a tropblade::Rat)>) -> String {
    entries
        .map(|(m, v)| format!("{}: {}", mask_to_string(m), rat_to_string(v)))
        .collect::<Vec<_>>()
        .join("\n")
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.cmd {
        Cmd::CheckWs { input, out } => {
            let (ground, k, masks) = input.load_raw()?;
            let subsets: Vec<KSubset> = masks
                .iter()
                .map(|&m| KSubset::new(ground, m))
                .collect::<Result<_, _>>()?;
            for s in &subsets {
                if s.size() != k {
                    return Err(Error::SizeMismatch(format!(
                        "set {} does not have {k} elements",
                        s.to_string_short()
                    ))
                    .into());
                }
            }
            let mut conflict = None;
            'outer: for (i, a) in subsets.iter().enumerate() {
                for b in &subsets[i + 1..] {
                    if !wsep::weakly_separated(a, b)? {
                        conflict = Some((a.mask(), b.mask()));
                        break 'outer;
                    }
                }
            }
            let names = Renamer::new(&out, ground);
            let (text, json) = match conflict {
                None => (
                    "weakly separated".to_string(),
                    serde_json::json!({ "separated": true }),
                ),
                Some((a, b)) => (
                    format!("conflict: {} {}", names.mask(a), names.mask(b)),
                    serde_json::json!({
                        "separated": false,
                        "conflict": [mask_labels(a), mask_labels(b)],
                    }),
                ),
            };
            emit(
                Report {
                    verdict: conflict.is_none(),
                    ground,
                    text,
                    json,
                    dot: None,
                },
                &out,
            )
        }
        Cmd::Complete { input, out } => {
            let w = input.load()?.complete();
            emit(collection_report(&w, &out), &out)
        }
        Cmd::W0 { n, k, out } => {
            let w = wsep::w0(n, k)?;
            emit(collection_report(&w, &out), &out)
        }
        Cmd::Flips { input, out } => {
            let w = input.load()?;
            let flips = w.find_flips();
            let names = Renamer::new(&out, w.ground());
            let text = flips
                .iter()
                .map(|f| {
                    format!(
                        "level={} quad={} removed={} added={}",
                        if f.level == 0 {
                            "-".to_string()
                        } else {
                            names.mask(f.level)
                        },
                        f.quad.map(|x| x.to_string()).join(","),
                        names.mask(f.removed),
                        names.mask(f.added),
                    )
                })
                .collect::<Vec<_>>()
                .join("\n");
            let json = serde_json::to_value(
                flips.iter().map(FlipDto::from_flip).collect::<Vec<_>>(),
            )?;
            emit(Report::plain(w.ground(), text, json), &out)
        }
        Cmd::Walk {
            n,
            k,
            steps,
            seed,
            out,
        } => {
            let (w, flips) = wsep::w0(n, k)?.flip_walk(steps, seed)?;
            let mut report = collection_report(&w, &out);
            report.json = serde_json::json!({
                "collection": report.json,
                "flips": flips.iter().map(FlipDto::from_flip).collect::<Vec<_>>(),
            });
            emit(report, &out)
        }
        Cmd::Boundary { j, input, out } => {
            let w = input.load()?.boundary(j)?;
            emit(collection_report(&w, &out), &out)
        }
        Cmd::BladeExpand {
            set,
            n,
            input,
            out,
        } => {
            let arr = match (set, input) {
                (Some(set), None) => {
                    let n = n.ok_or_else(|| {
                        CliError::Input("--set needs --n for the ground size".into())
                    })?;
                    let j = KSubset::new(CyclicGround::full(n)?, mask_from_string(&set)?)?;
                    arrangement::expand_l_basis(&j)
                }
                (None, Some(path)) => {
                    let dto: WeightsDto = serde_json::from_str(&read(&path)?)?;
                    arrangement::l_to_beta(&dto.to_l_vector()?)
                }
                _ => {
                    return Err(CliError::Input(
                        "provide exactly one of --set or --in".into(),
                    ))
                }
            };
            let text = weights_lines(arr.iter().map(|(m, v)| (m, v)));
            let json = serde_json::to_value(WeightsDto::from_arrangement(&arr))?;
            emit(Report::plain(arr.ground(), text, json), &out)
        }
        Cmd::LTransform { input, out } => {
            let dto: WeightsDto = serde_json::from_str(&read(&input)?)?;
            let arr = dto.to_arrangement()?;
            let (coords, correction) = arrangement::beta_to_l(&arr)?;
            let mut text = weights_lines(coords.iter().map(|(m, v)| (m, v)));
            text.push_str("\ncorrection:\n");
            text.push_str(&weights_lines(correction.iter().map(|(m, v)| (m, v))));
            let json = serde_json::json!({
                "coords": WeightsDto::from_l_vector(&coords),
                "correction": WeightsDto::from_arrangement(&correction),
            });
            emit(Report::plain(arr.ground(), text, json), &out)
        }
        Cmd::Pi { input, level, out } => {
            let c = load_l_vector(&input)?;
            let level = parse_level(&level)?;
            let pi = arrangement::pi_closed(&c, level)?;
            let text = weights_lines(pi.iter().map(|(&m, v)| (m, v)));
            let json: serde_json::Value = pi
                .iter()
                .map(|(&m, v)| {
                    (
                        mask_labels(m)
                            .iter()
                            .map(|x| x.to_string())
                            .collect::<Vec<_>>()
                            .join(","),
                        serde_json::Value::from(rat_to_string(v)),
                    )
                })
                .collect::<serde_json::Map<_, _>>()
                .into();
            emit(Report::plain(c.ground(), text, json), &out)
        }
        Cmd::PluckerCheck { input, out } => {
            let p = load_plucker(&input)?;
            let check = tropical::is_positive_plucker(&p)?;
            let (text, json) = match check.witness {
                None => (
                    "positive".to_string(),
                    serde_json::json!({ "positive": true }),
                ),
                Some((level, quad)) => (
                    format!(
                        "not positive at level={} quad={}",
                        if level == 0 {
                            "-".to_string()
                        } else {
                            mask_to_string(level)
                        },
                        quad.map(|x| x.to_string()).join(","),
                    ),
                    serde_json::json!({
                        "positive": false,
                        "witness": { "level": mask_labels(level), "quad": quad },
                    }),
                ),
            };
            emit(
                Report {
                    verdict: check.positive,
                    ground: p.ground(),
                    text,
                    json,
                    dot: None,
                },
                &out,
            )
        }
        Cmd::Octahedra { input, level, out } => {
            let p = load_plucker(&input)?;
            let mut cells = tropical::octahedra(p.ground(), p.k());
            if let Some(s) = &level {
                let wanted = mask_from_string(s)?;
                cells.retain(|(l, _)| *l == wanted);
            }
            let mut dtos = Vec::new();
            let mut lines = Vec::new();
            for (l, quad) in cells {
                let verdict = tropical::classify_octahedron(&p, l, quad)?;
                let name = match &verdict {
                    OctahedronVerdict::Unsplit => "unsplit".to_string(),
                    OctahedronVerdict::Split { apexes } => format!(
                        "split apexes={},{}",
                        mask_to_string(apexes.0),
                        mask_to_string(apexes.1)
                    ),
                    OctahedronVerdict::NotPositive => "not-positive".to_string(),
                };
                lines.push(format!(
                    "level={} quad={} {}",
                    if l == 0 {
                        "-".to_string()
                    } else {
                        mask_to_string(l)
                    },
                    quad.map(|x| x.to_string()).join(","),
                    name,
                ));
                dtos.push(OctahedronDto::new(l, quad, &verdict));
            }
            emit(
                Report::plain(p.ground(), lines.join("\n"), serde_json::to_value(dtos)?),
                &out,
            )
        }
        Cmd::Finest { input, out } => {
            let p = load_plucker(&input)?;
            let finest = tropical::is_finest(&p)?;
            emit(
                Report {
                    verdict: finest,
                    ground: p.ground(),
                    text: if finest { "finest" } else { "not finest" }.to_string(),
                    json: serde_json::json!({ "finest": finest }),
                    dot: None,
                },
                &out,
            )
        }
        Cmd::ConeTest { input, out } => {
            let w = input.load()?;
            let report = cone::is_minimal_in_s(&w)?;
            let names = Renamer::new(&out, w.ground());
            let (verdict, text) = match &report.verdict {
                ConeVerdict::MaximalSimplicial => (true, "MaximalSimplicial".to_string()),
                ConeVerdict::NotMinimal { inessential } => {
                    let witnesses = inessential
                        .iter()
                        .map(|&m| names.mask(m))
                        .collect::<Vec<_>>()
                        .join(", ");
                    let noun = if inessential.len() == 1 {
                        "witness"
                    } else {
                        "witnesses"
                    };
                    (false, format!("NotMinimal ({noun} {witnesses})"))
                }
            };
            emit(
                Report {
                    verdict,
                    ground: w.ground(),
                    text,
                    json: serde_json::to_value(ConeReportDto::from_report(&report))?,
                    dot: None,
                },
                &out,
            )
        }
        Cmd::PlabicBoundary { input, j, out } => {
            let w = input.load()?;
            let tiling = plabic::build_tiling(&w)?;
            let p = match j {
                Some(j) => plabic::plabic_boundary(&tiling, j)?,
                None => tiling,
            };
            let names = Renamer::new(&out, p.ground());
            let show = |m: u64| {
                if m == 0 {
                    "{}".to_string()
                } else {
                    names.mask(m)
                }
            };
            let join = |masks: &[u64]| {
                masks.iter().map(|&m| show(m)).collect::<Vec<_>>().join(" ")
            };
            let text = format!(
                "faces: {}\nblacks: {}\nwhites: {}\nedges: {}\nmarks: {}",
                join(p.faces()),
                join(p.blacks()),
                join(p.whites()),
                p.edges()
                    .iter()
                    .map(|&(b, w)| format!("{}~{}", show(b), show(w)))
                    .collect::<Vec<_>>()
                    .join(" "),
                p.boundary_marks()
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(","),
            );
            emit(
                Report {
                    verdict: true,
                    ground: p.ground(),
                    text,
                    json: serde_json::to_value(PlabicDto::from_structure(&p))?,
                    dot: Some(plabic_dot(&p)),
                },
                &out,
            )
        }
        Cmd::Extend { input, out } => {
            let dto: SeedDto = serde_json::from_str(&read(&input)?)?;
            let (w, seed) = dto.to_parts()?;
            let p = tropical::extend_from_seed(&w, &seed)?;
            let text = weights_lines(
                p.subsets()
                    .iter()
                    .map(|&m| (m, p.get(m).unwrap()))
                    .collect::<Vec<_>>()
                    .iter()
                    .map(|(m, v)| (*m, v)),
            );
            let json = serde_json::to_value(PluckerDto::from_plucker(&p))?;
            emit(Report::plain(p.ground(), text, json), &out)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
