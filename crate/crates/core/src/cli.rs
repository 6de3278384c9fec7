//! Command-line front end.
//!
//! [`run`] never touches the process: it returns the exit code and both
//! output streams, so the binary is a three-line wrapper and tests drive the
//! parser directly. Exit codes: 0 success, 1 computation error, 2 usage
//! error. Every JSON document carries `"schema": 1` at top level.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::classify::{
    certify_krull_dimension, classify, cox_descriptor, mds_bidegree_region, ClassificationReport, ClassifyError,
    GeneralityLevel, MdsStatus,
};
use crate::cohomology::{h0_x, koszul_hilbert, CohomologyError, CoxPresentation};
use crate::cones::{ConeError, DivisorClass, RationalCone};
use crate::git::{git_quotients, monomial_ideal_intersection, support_names, GitError, WeightSystem};
use crate::hypersurface::{
    ambient_context, flip_backward, flip_forward, intersection_number, on_flipped_side, sample_point, AmbientProduct,
    HyperError, Hypersurface, ProjectivePoint,
};
use crate::polyalg::{parse_poly_mod, Budget, Modulus, PolyError, DEFAULT_PRIME};

pub const SCHEMA: u32 = 1;

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(
    name = "coxcones",
    version,
    about = "Cones, Cox rings and flips of hypersurfaces in products of projective spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Tsv,
}

#[derive(Args, Debug, Clone)]
struct Output {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Shorthand for `--format json`.
    #[arg(long)]
    json: bool,
}

impl Output {
    fn format(&self) -> Format {
        if self.json {
            Format::Json
        } else {
            self.format
        }
    }
}

#[derive(Args, Debug, Clone)]
struct Sampling {
    /// Seed for all randomness.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Prime field characteristic.
    #[arg(long = "mod", default_value_t = DEFAULT_PRIME as u64, value_parser = parse_modulus)]
    modulus: u64,
}

#[derive(Args, Debug, Clone)]
struct Family {
    /// Degree in the P^1 variables.
    #[arg(long)]
    d: usize,
    /// Degree in the P^n variables.
    #[arg(long)]
    e: usize,
    /// Dimension of the second factor.
    #[arg(long)]
    n: usize,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum HilbertSource {
    Koszul,
    H0,
    Both,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify a hypersurface by ambient and multidegree.
    Classify {
        /// Factor dimensions, e.g. `1,3`.
        #[arg(long, value_parser = parse_usize_list)]
        factors: Dims,
        /// Multidegree, e.g. `2,2`.
        #[arg(long, value_parser = parse_i64_list)]
        degree: Ints,
        #[arg(long, value_enum, default_value_t = Level::General)]
        level: Level,
        #[command(flatten)]
        out: Output,
    },
    /// Mori-dream-space status over a grid of bidegrees in P^1 x P^n.
    ClassifyGrid {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 6)]
        dmax: usize,
        #[arg(long, default_value_t = 6)]
        emax: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Hilbert function of the Cox ring against h^0 of line bundles.
    Hilbert {
        #[command(flatten)]
        family: Family,
        #[arg(long, default_value_t = -1, allow_hyphen_values = true)]
        amin: i64,
        #[arg(long, default_value_t = 5, allow_hyphen_values = true)]
        amax: i64,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        bmin: i64,
        #[arg(long, default_value_t = 6, allow_hyphen_values = true)]
        bmax: i64,
        #[arg(long, value_enum, default_value_t = HilbertSource::Both)]
        source: HilbertSource,
        #[command(flatten)]
        out: Output,
    },
    /// Evaluate the flip X -> X+ on points over a prime field.
    FlipEval {
        #[command(flatten)]
        family: Family,
        /// Defining form in x0,x1,y0..yn, or `fixture`.
        #[arg(long, default_value = "fixture")]
        f: String,
        /// Point `x0,x1;y0,..,yn` (or `z1,..,zd;y0,..,yn` with --inverse).
        #[arg(long)]
        point: Option<String>,
        /// Map a point of X+ back to X.
        #[arg(long)]
        inverse: bool,
        /// Round-trip this many sampled points.
        #[arg(long, conflicts_with = "point")]
        samples: Option<usize>,
        #[command(flatten)]
        sampling: Sampling,
        #[command(flatten)]
        out: Output,
    },
    /// GIT chambers, walls and irrelevant ideals of the Cox grading.
    GitChambers {
        #[command(flatten)]
        family: Family,
        /// Monomial enumeration bound; defaults per character.
        #[arg(long)]
        bound: Option<i64>,
        #[command(flatten)]
        out: Output,
    },
    /// Top intersection number of divisor classes on X.
    Intersect {
        #[arg(long, value_parser = parse_usize_list)]
        factors: Dims,
        #[arg(long, value_parser = parse_i64_list)]
        degree: Ints,
        /// Classes separated by `;`, e.g. `1,0;0,1;0,1`.
        #[arg(long, value_parser = parse_classes, allow_hyphen_values = true)]
        classes: Classes,
        #[command(flatten)]
        out: Output,
    },
    /// Cox ring presentation, optionally certified by a Groebner basis.
    Cox {
        #[arg(long, value_parser = parse_usize_list)]
        factors: Dims,
        #[arg(long, value_parser = parse_i64_list)]
        degree: Ints,
        #[arg(long, value_enum, default_value_t = Level::General)]
        level: Level,
        /// Check the complete-intersection property on the fixture form.
        #[arg(long)]
        certify: bool,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Level {
    Arbitrary,
    General,
    #[value(name = "very_general", alias = "very-general")]
    VeryGeneral,
}

impl From<Level> for GeneralityLevel {
    fn from(l: Level) -> Self {
        match l {
            Level::Arbitrary => GeneralityLevel::Arbitrary,
            Level::General => GeneralityLevel::General,
            Level::VeryGeneral => GeneralityLevel::VeryGeneral,
        }
    }
}

#[derive(Clone, Debug)]
struct Classes(Vec<DivisorClass>);

#[derive(Clone, Debug)]
struct Ints(Vec<i64>);

#[derive(Clone, Debug)]
struct Dims(Vec<usize>);

fn ints(s: &str) -> Result<Vec<i64>, String> {
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|e| format!("{t:?}: {e}")))
        .collect()
}

fn parse_i64_list(s: &str) -> Result<Ints, String> {
    ints(s).map(Ints)
}

fn parse_usize_list(s: &str) -> Result<Dims, String> {
    s.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}")))
        .collect::<Result<_, _>>()
        .map(Dims)
}

fn parse_classes(s: &str) -> Result<Classes, String> {
    s.split(';')
        .map(|c| ints(c).map(DivisorClass::new))
        .collect::<Result<_, _>>()
        .map(Classes)
}

fn parse_modulus(s: &str) -> Result<u64, String> {
    let p: u64 = s.parse().map_err(|e| format!("{e}"))?;
    Modulus::new(p).map_err(|e| e.to_string())?;
    Ok(p)
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    Hyper(#[from] HyperError),
    #[error(transparent)]
    Git(#[from] GitError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn kind(&self) -> &'static str {
        let poly_kind = |p: &PolyError| match p {
            PolyError::BudgetExceeded(_) => "budget_exceeded",
            _ => "computation",
        };
        let hyper_kind = |h: &HyperError| match h {
            HyperError::Poly(p) => poly_kind(p),
            HyperError::Indeterminate(_) | HyperError::Nullity(_) => "indeterminate",
            HyperError::NotOnX => "not_on_x",
            // malformed input rather than a failed computation
            HyperError::InvalidAmbient(_)
            | HyperError::InvalidMultidegree(_)
            | HyperError::ClassCount { .. }
            | HyperError::NotP1Family
            | HyperError::Cone(ConeError::RankMismatch { .. }) => "usage",
            _ => "computation",
        };
        match self {
            CliError::Usage(_) => "usage",
            CliError::Poly(p) => poly_kind(p),
            CliError::Classify(ClassifyError::Poly(p)) => poly_kind(p),
            CliError::Classify(ClassifyError::Hyper(h)) | CliError::Hyper(h) => hyper_kind(h),
            CliError::Classify(ClassifyError::BadLevel(_) | ClassifyError::GridNeedsThreefold(_)) => "usage",
            CliError::Git(GitError::NotStable { .. }) => "not_stable",
            CliError::Classify(ClassifyError::NotMds(_)) => "not_mds",
            _ => "computation",
        }
    }

    fn code(&self) -> i32 {
        if self.kind() == "usage" {
            2
        } else {
            1
        }
    }
}

fn wants_json(args: &[String]) -> bool {
    args.iter().any(|a| a == "--json")
        || args.windows(2).any(|w| w[0] == "--format" && w[1] == "json")
        || args.iter().any(|a| a == "--format=json")
}

fn error_doc(kind: &str, message: &str) -> String {
    let v = json!({"schema": SCHEMA, "error": {"kind": kind, "message": message}});
    format!("{}\n", serde_json::to_string_pretty(&v).expect("json value"))
}

/// Parses `args` (without the program name) and executes the subcommand.
pub fn run<I, S>(args: I) -> CliOutput
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let json_mode = wants_json(&args);
    let cli = match Cli::try_parse_from(std::iter::once("coxcones".to_string()).chain(args.iter().cloned())) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return CliOutput {
                    code: 0,
                    stdout: rendered,
                    stderr: String::new(),
                };
            }
            return CliOutput {
                code: 2,
                stdout: if json_mode {
                    error_doc("usage", e.kind().to_string().as_str())
                } else {
                    String::new()
                },
                stderr: rendered,
            };
        }
    };
    match execute(cli.command) {
        Ok(stdout) => CliOutput {
            code: 0,
            stdout,
            stderr: String::new(),
        },
        Err(e) => CliOutput {
            code: e.code(),
            stdout: if json_mode {
                error_doc(e.kind(), &e.to_string())
            } else {
                String::new()
            },
            stderr: format!("error: {e}\n"),
        },
    }
}

fn with_schema(mut v: Value) -> Value {
    if let Value::Object(m) = &mut v {
        m.insert("schema".into(), json!(SCHEMA));
    }
    v
}

fn to_json<T: Serialize>(command: &str, body: &T) -> String {
    let mut v = with_schema(serde_json::to_value(body).expect("serializable"));
    if let Value::Object(m) = &mut v {
        m.insert("command".into(), json!(command));
    }
    format!("{}\n", serde_json::to_string_pretty(&v).expect("json value"))
}

fn ambient_and_degree(factors: Dims, degree: Ints) -> Result<(AmbientProduct, DivisorClass), CliError> {
    Ok((AmbientProduct::new(factors.0)?, DivisorClass::new(degree.0)))
}

fn execute(cmd: Command) -> Result<String, CliError> {
    match cmd {
        Command::Classify {
            factors,
            degree,
            level,
            out,
        } => {
            let (amb, md) = ambient_and_degree(factors, degree)?;
            let r = classify(&amb, &md, level.into())?;
            Ok(emit_report(&r, out.format()))
        }
        Command::ClassifyGrid { n, dmax, emax, out } => grid(n, dmax, emax, out.format()),
        Command::Hilbert {
            family,
            amin,
            amax,
            bmin,
            bmax,
            source,
            out,
        } => hilbert(&family, (amin, amax), (bmin, bmax), source, out.format()),
        Command::FlipEval {
            family,
            f,
            point,
            inverse,
            samples,
            sampling,
            out,
        } => flip_eval(&family, &f, point.as_deref(), inverse, samples, &sampling, out.format()),
        Command::GitChambers { family, bound, out } => git_chambers(&family, bound, out.format()),
        Command::Intersect {
            factors,
            degree,
            classes,
            out,
        } => {
            let (amb, md) = ambient_and_degree(factors, degree)?;
            let x = Hypersurface::new(amb, md)?;
            let v = intersection_number(&x, &classes.0)?;
            Ok(match out.format() {
                Format::Json => to_json(
                    "intersect",
                    &json!({"ambient": x.ambient(), "multidegree": x.multidegree(), "classes": classes.0, "value": v}),
                ),
                Format::Tsv => format!("value\t{v}\n"),
                Format::Text => {
                    let cs: Vec<String> = classes.0.iter().map(ToString::to_string).collect();
                    format!("{} on X{} in {}: {v}\n", cs.join(" . "), x.multidegree(), x.ambient())
                }
            })
        }
        Command::Cox {
            factors,
            degree,
            level,
            certify,
            out,
        } => cox(factors, degree, level.into(), certify, out.format()),
    }
}

fn cone_text(c: &Option<RationalCone>) -> String {
    c.as_ref().map_or_else(|| "-".to_string(), ToString::to_string)
}

fn cox_summary(p: &CoxPresentation) -> String {
    let rel: Vec<String> = p.relation_degrees.iter().map(ToString::to_string).collect();
    format!(
        "{} generators, relations of degree {}",
        p.generator_count(),
        rel.join(" ")
    )
}

/// Serializes a report. JSON adds `schema`, `command` and the short key `mds`, and
/// parses back into the same report.
pub fn emit_report(r: &ClassificationReport, fmt: Format) -> String {
    match fmt {
        Format::Json => {
            let mut v = with_schema(serde_json::to_value(r).expect("serializable"));
            if let Value::Object(m) = &mut v {
                m.insert("mds".into(), json!(r.mds_status));
                m.insert("command".into(), json!("classify"));
            }
            format!("{}\n", serde_json::to_string_pretty(&v).expect("json value"))
        }
        Format::Text | Format::Tsv => {
            let mut rows: Vec<(String, String)> = vec![
                ("ambient".into(), r.ambient.to_string()),
                ("multidegree".into(), r.multidegree.to_string()),
                ("level".into(), r.level.to_string()),
                ("mds".into(), r.mds_status.to_string()),
                ("case".into(), r.case_tag.to_string()),
                ("required level".into(), r.required_level.to_string()),
                (
                    "picard rank".into(),
                    r.picard_rank.as_ref().map_or("-".into(), ToString::to_string),
                ),
                ("Eff".into(), cone_text(&r.eff)),
                ("Mov".into(), cone_text(&r.mov)),
                ("Nef".into(), cone_text(&r.nef)),
            ];
            for ch in &r.mov_chambers {
                rows.push(("chamber".into(), format!("{} {}", ch.label, ch.cone)));
            }
            rows.push(("cox".into(), r.cox.as_ref().map_or("-".into(), cox_summary)));
            rows.push(("canonical".into(), r.canonical.to_string()));
            rows.push(("calabi-yau".into(), r.calabi_yau.to_string()));
            if let Some(lb) = &r.eff_lower_bound {
                rows.push(("eff lower bound".into(), lb.to_string()));
            }
            if !r.orbit_growth.is_empty() {
                let g: Vec<String> = r.orbit_growth.iter().map(ToString::to_string).collect();
                rows.push(("orbit growth".into(), g.join(" ")));
            }
            for n in &r.notes {
                rows.push(("note".into(), n.clone()));
            }
            render_rows(&rows, fmt)
        }
    }
}

fn render_rows(rows: &[(String, String)], fmt: Format) -> String {
    let mut s = String::new();
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    for (k, v) in rows {
        match fmt {
            Format::Tsv => writeln!(s, "{k}\t{v}"),
            _ => writeln!(s, "{k:width$}  {v}"),
        }
        .expect("write to string");
    }
    s
}

fn status_symbol(s: MdsStatus) -> &'static str {
    match s {
        MdsStatus::Yes => "Y",
        MdsStatus::No => "N",
        MdsStatus::Conditional => "?",
        MdsStatus::OutOfClassification => "-",
    }
}

fn grid(n: usize, dmax: usize, emax: usize, fmt: Format) -> Result<String, CliError> {
    let g = mds_bidegree_region(n, dmax, emax)?;
    Ok(match fmt {
        Format::Json => to_json("classify-grid", &json!({"n": n, "level": "very_general", "grid": g})),
        Format::Tsv => {
            let mut s = "d\te\tmds\n".to_string();
            for (i, row) in g.iter().enumerate() {
                for (j, st) in row.iter().enumerate() {
                    writeln!(s, "{}\t{}\t{st}", i + 1, j + 1).expect("write to string");
                }
            }
            s
        }
        Format::Text => {
            let mut s = format!("very general hypersurfaces in P^1 x P^{n} (Y = Mori dream space, N = not)\n d\\e");
            for e in 1..=emax {
                write!(s, " {e:>2}").expect("write to string");
            }
            s.push('\n');
            for (i, row) in g.iter().enumerate() {
                write!(s, "{:>4}", i + 1).expect("write to string");
                for st in row {
                    write!(s, " {:>2}", status_symbol(*st)).expect("write to string");
                }
                s.push('\n');
            }
            s
        }
    })
}

#[derive(Serialize)]
struct HilbertRow {
    a: i64,
    b: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    koszul: Option<i128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    h0: Option<String>,
}

fn hilbert(f: &Family, a: (i64, i64), b: (i64, i64), source: HilbertSource, fmt: Format) -> Result<String, CliError> {
    let x = Hypersurface::new(
        AmbientProduct::p1_pn(f.n),
        DivisorClass::new(vec![f.d as i64, f.e as i64]),
    )?;
    let p = CoxPresentation::p1_family(f.n, f.d, f.e);
    let mut rows = Vec::new();
    for ai in a.0..=a.1 {
        for bi in b.0..=b.1 {
            let c = DivisorClass::new(vec![ai, bi]);
            let koszul = match source {
                HilbertSource::H0 => None,
                _ => Some(koszul_hilbert(&p, &c)?),
            };
            let h0 = match source {
                HilbertSource::Koszul => None,
                _ => Some(h0_x(&x, &c)?.to_string()),
            };
            rows.push(HilbertRow {
                a: ai,
                b: bi,
                koszul,
                h0,
            });
        }
    }
    Ok(match fmt {
        Format::Json => to_json("hilbert", &json!({"n": f.n, "d": f.d, "e": f.e, "rows": rows})),
        _ => {
            let sep = if fmt == Format::Tsv { "\t" } else { "  " };
            let mut s = ["a", "b", "koszul", "h0"].join(sep) + "\n";
            for r in &rows {
                let k = r.koszul.map_or("-".into(), |v| v.to_string());
                let h = r.h0.clone().unwrap_or_else(|| "-".into());
                s += &[r.a.to_string(), r.b.to_string(), k, h].join(sep);
                s.push('\n');
            }
            s
        }
    })
}

fn flip_eval(
    f: &Family,
    form: &str,
    point: Option<&str>,
    inverse: bool,
    samples: Option<usize>,
    sampling: &Sampling,
    fmt: Format,
) -> Result<String, CliError> {
    let m = Modulus::new(sampling.modulus)?;
    let amb = AmbientProduct::p1_pn(f.n);
    let md = DivisorClass::new(vec![f.d as i64, f.e as i64]);
    let x = if form == "fixture" {
        Hypersurface::fixture(f.d, f.e, f.n)?
    } else {
        let p = parse_poly_mod(&ambient_context(&amb), form, m)?;
        Hypersurface::with_form(amb, md, p)?
    };
    if let Some(pt) = point {
        let pt = ProjectivePoint::parse(pt, Some(m)).map_err(|e| CliError::Usage(e.to_string()))?;
        let image = if inverse {
            flip_backward(&x, &pt)?
        } else {
            flip_forward(&x, &pt)?
        };
        return Ok(match fmt {
            Format::Json => to_json(
                "flip-eval",
                &json!({"direction": if inverse { "backward" } else { "forward" }, "modulus": m.get(),
                        "point": pt.to_string(), "image": image.to_string()}),
            ),
            Format::Tsv => format!("{pt}\t{image}\n"),
            Format::Text => format!("{pt} -> {image}\n"),
        });
    }
    let count = samples.unwrap_or(100);
    let mut rng = ChaCha8Rng::seed_from_u64(sampling.seed);
    let (mut round_trips, mut minors) = (0usize, 0usize);
    let mut first = None;
    for _ in 0..count {
        let p = sample_point(&x, &mut rng, m, 1000)?;
        let q = flip_forward(&x, &p)?;
        minors += usize::from(on_flipped_side(&x, &q)?);
        round_trips += usize::from(flip_backward(&x, &q)? == p);
        first.get_or_insert((p, q));
    }
    let example = first.map(|(p, q)| format!("{p} -> {q}"));
    Ok(match fmt {
        Format::Json => to_json(
            "flip-eval",
            &json!({"modulus": m.get(), "seed": sampling.seed, "samples": count,
                    "round_trips": round_trips, "minors_vanish": minors, "example": example}),
        ),
        _ => render_rows(
            &[
                ("samples".into(), count.to_string()),
                ("round trips".into(), round_trips.to_string()),
                ("minors vanish".into(), minors.to_string()),
                ("example".into(), example.unwrap_or_else(|| "-".into())),
            ],
            fmt,
        ),
    })
}

fn git_chambers(f: &Family, bound: Option<i64>, fmt: Format) -> Result<String, CliError> {
    let w = WeightSystem::standard(f.n, f.e, f.d);
    let r = git_quotients(&w, bound)?;
    let meets: Vec<Vec<String>> = (0..r.walls.len())
        .map(|i| {
            support_names(
                &w,
                &monomial_ideal_intersection(&r.chambers[i].supports, &r.chambers[i + 1].supports),
            )
        })
        .collect();
    Ok(match fmt {
        Format::Json => {
            let walls: Vec<Value> = r
                .walls
                .iter()
                .zip(&meets)
                .map(|(wall, m)| {
                    let mut v = serde_json::to_value(wall).expect("serializable");
                    v["adjacent_intersection"] = json!(m);
                    v
                })
                .collect();
            to_json(
                "git-chambers",
                &json!({"weights": r.weights, "chambers": r.chambers, "walls": walls}),
            )
        }
        _ => {
            let mut rows: Vec<(String, String)> = Vec::new();
            let cols: Vec<String> = w.columns().iter().map(ToString::to_string).collect();
            rows.push(("weights".into(), cols.join(" ")));
            for c in &r.chambers {
                rows.push((format!("chamber {}", c.label), c.cone.to_string()));
                rows.push((format!("B[{}]", c.label), c.irrelevant.join(", ")));
            }
            for (wall, m) in r.walls.iter().zip(&meets) {
                rows.push((format!("wall {}", wall.label), wall.cone.to_string()));
                rows.push((format!("B[{}]", wall.label), wall.irrelevant.join(", ")));
                rows.push(("adjacent meet".into(), m.join(", ")));
            }
            render_rows(&rows, fmt)
        }
    })
}

fn cox(factors: Dims, degree: Ints, level: GeneralityLevel, certify: bool, fmt: Format) -> Result<String, CliError> {
    let (amb, md) = ambient_and_degree(factors, degree)?;
    let report = classify(&amb, &md, level)?;
    let p = cox_descriptor(&report)?;
    let cert = match (&p, certify) {
        (Some(_), true) => {
            let (n, d, e) = Hypersurface::new(amb.clone(), md.clone())?
                .p1_family()
                .ok_or_else(|| CliError::Usage("--certify needs the P^1 x P^n family".into()))?;
            Some(certify_krull_dimension(n, d, e, &Budget::from_env()?)?)
        }
        _ => None,
    };
    Ok(match fmt {
        Format::Json => to_json(
            "cox",
            &json!({"case_tag": report.case_tag, "mds": report.mds_status, "presentation": p,
                    "generators": p.as_ref().map(|p| p.generator_names()), "certificate": cert}),
        ),
        _ => {
            let mut rows: Vec<(String, String)> = vec![
                ("case".into(), report.case_tag.to_string()),
                ("mds".into(), report.mds_status.to_string()),
            ];
            match &p {
                None => rows.push(("presentation".into(), "none known".into())),
                Some(p) => {
                    for b in &p.blocks {
                        let names: Vec<String> = (b.start..b.start + b.count)
                            .map(|i| format!("{}{i}", b.prefix))
                            .collect();
                        rows.push((format!("degree {}", b.degree), names.join(" ")));
                    }
                    let rel: Vec<String> = p.relation_degrees.iter().map(ToString::to_string).collect();
                    rows.push(("relations".into(), rel.join(" ")));
                    rows.push(("expected dim".into(), p.expected_krull_dimension().to_string()));
                }
            }
            if let Some(c) = &cert {
                rows.push(("codim".into(), c.codim.to_string()));
                rows.push(("krull dim".into(), c.krull_dimension.to_string()));
                rows.push(("certified".into(), c.matches().to_string()));
            }
            render_rows(&rows, fmt)
        }
    })
}
