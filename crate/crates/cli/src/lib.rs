//! Command-line front end. [`run`] takes the full argument vector and returns
//! the exit code together with everything that would be written to stdout
//! and stderr, so the binary is a thin shell around it.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use polwall_core::criteria::{self, FreeRank, PicardDescription};
use polwall_core::fixtures::{self, FixtureReport};
use polwall_core::rational::{fmt_q, parse_q, Bound, Rational};
use polwall_core::strata::{self, PositivityReport};
use polwall_core::wallcross::{self, ChamberTable, Orientation, WallCrossing};
use polwall_core::walls::{self, Chamber, HNType, Side, Wall};
use polwall_core::{ChernData, Error, Poly, SurfaceData, Var};
use serde::Serialize;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "polwall", version, about = "Walls, chambers and wall-crossing for sheaves on ruled surfaces")]
struct Cli {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SideArg {
    Below,
    Above,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Below => Side::Below,
            SideArg::Above => Side::Above,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OrientationArg {
    Upward,
    Downward,
}

impl From<OrientationArg> for Orientation {
    fn from(o: OrientationArg) -> Orientation {
        match o {
            OrientationArg::Upward => Orientation::Upward,
            OrientationArg::Downward => Orientation::Downward,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VarArg {
    Z,
    Q,
}

impl From<VarArg> for Var {
    fn from(v: VarArg) -> Var {
        match v {
            VarArg::Z => Var::Z,
            VarArg::Q => Var::Q,
        }
    }
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct SurfaceSource {
    /// Surface as JSON, e.g. '{"kind":"ruled","g":2,"e":3}'
    #[arg(long)]
    surface: Option<String>,

    /// Read the surface JSON from a file
    #[arg(long)]
    surface_file: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct Datum {
    #[command(flatten)]
    surface: SurfaceSource,

    /// Chern datum as JSON, e.g. '{"r":2,"c1":[1,0],"c2":1}'
    #[arg(long)]
    chern: String,
}

#[derive(Args, Debug)]
struct AtWall {
    #[command(flatten)]
    datum: Datum,

    /// Wall position p/q
    #[arg(long, alias = "x")]
    wall: String,
}

#[derive(Args, Debug)]
struct TableArgs {
    /// Chamber table JSON file
    #[arg(long)]
    table: PathBuf,

    /// Truncate all polynomials above this degree
    #[arg(long)]
    cap: Option<u32>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Intersection data of a surface
    Surface {
        #[command(flatten)]
        surface: SurfaceSource,
    },
    /// Wall positions in (lo, hi]
    Walls {
        #[command(flatten)]
        datum: Datum,
        /// lo:hi, defaults to e and the existence bound (or the wall horizon)
        #[arg(long)]
        range: Option<String>,
        /// Print the destabilizing splits as well
        #[arg(long)]
        witnesses: bool,
    },
    /// Chambers between consecutive walls
    Chambers {
        #[command(flatten)]
        datum: Datum,
        #[arg(long)]
        range: Option<String>,
    },
    /// Harder–Narasimhan types on one side of a wall
    Hn {
        #[command(flatten)]
        at: AtWall,
        #[arg(long, value_enum, default_value_t = SideArg::Below)]
        side: SideArg,
    },
    /// Codimension of an HN type, or the smallest one on a side of a wall
    Codim {
        #[command(flatten)]
        surface: SurfaceSource,
        /// HN type as a JSON array of Chern data
        #[arg(long, conflicts_with_all = ["chern", "wall"])]
        hn: Option<String>,
        #[arg(long, requires = "wall")]
        chern: Option<String>,
        #[arg(long, requires = "chern")]
        wall: Option<String>,
        #[arg(long, value_enum, default_value_t = SideArg::Below)]
        side: SideArg,
    },
    /// Positivity report for the minus-side types of a wall
    Check {
        #[command(flatten)]
        at: AtWall,
    },
    /// Value in the adjacent chamber; `--var q` uses the mass formula
    Cross {
        #[command(flatten)]
        at: AtWall,
        #[command(flatten)]
        table: TableArgs,
        #[arg(long, value_enum, default_value_t = VarArg::Z)]
        var: VarArg,
        #[arg(long, value_enum, default_value_t = OrientationArg::Upward)]
        orientation: OrientationArg,
    },
    /// Value on the wall from one side's chamber values
    Glue {
        #[command(flatten)]
        at: AtWall,
        #[command(flatten)]
        table: TableArgs,
        #[arg(long, value_enum, default_value_t = SideArg::Below)]
        side: SideArg,
        #[arg(long, value_enum, default_value_t = VarArg::Z)]
        var: VarArg,
    },
    /// Finite-field mass in the adjacent chamber
    Mass {
        #[command(flatten)]
        at: AtWall,
        #[command(flatten)]
        table: TableArgs,
        #[arg(long, value_enum, default_value_t = VarArg::Q)]
        var: VarArg,
        #[arg(long, value_enum, default_value_t = OrientationArg::Upward)]
        orientation: OrientationArg,
    },
    /// Whether semistable sheaves exist on H_x
    Exists {
        #[command(flatten)]
        datum: Datum,
        #[arg(long)]
        x: String,
    },
    /// Expected dimension of the moduli space
    Dim {
        #[command(flatten)]
        datum: Datum,
    },
    /// Picard group description at an off-wall point
    Picard {
        #[command(flatten)]
        datum: Datum,
        #[arg(long)]
        x: String,
    },
    /// Check the bundled rank-3 Poincaré polynomials
    Verify,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(msg) => Failure::Usage(msg),
            other => Failure::Domain(other),
        }
    }
}

type Outcome = Result<Rendered, Failure>;

/// A successful result: the text to print and whether it counts as success.
struct Rendered {
    text: String,
    code: i32,
}

impl Rendered {
    fn ok(text: String) -> Outcome {
        Ok(Rendered { text, code: EXIT_OK })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Run one invocation. `args[0]` is the program name.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output { code: EXIT_USAGE, stdout: String::new(), stderr: text }
            } else {
                Output { code: EXIT_OK, stdout: text, stderr: String::new() }
            };
        }
    };
    match execute(cli.command, cli.format) {
        Ok(Rendered { text, code }) => Output { code, stdout: text, stderr: String::new() },
        Err(Failure::Usage(msg)) => Output { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {msg}\n") },
        Err(Failure::Domain(e)) => Output { code: EXIT_DOMAIN, stdout: String::new(), stderr: format!("{e}\n") },
    }
}

fn load_surface(src: &SurfaceSource) -> Result<SurfaceData, Failure> {
    let text = match (&src.surface, &src.surface_file) {
        (Some(s), _) => s.clone(),
        (None, Some(path)) => std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?,
        (None, None) => return Err(Failure::Usage("a surface is required".into())),
    };
    Ok(SurfaceData::from_json_str(&text)?)
}

fn load_datum(d: &Datum) -> Result<(SurfaceData, ChernData), Failure> {
    Ok((load_surface(&d.surface)?, ChernData::from_json_str(&d.chern)?))
}

fn rational(text: &str) -> Result<Rational, Failure> {
    Ok(parse_q(text)?)
}

fn load_wall(s: &SurfaceData, c: &ChernData, text: &str) -> Result<Wall, Failure> {
    let x = rational(text)?;
    walls::wall_at(s, c, &x)?.ok_or_else(|| Failure::Domain(Error::WallMismatch(fmt_q(&x))))
}

fn load_table(t: &TableArgs, var: Var) -> Result<ChamberTable, Failure> {
    let text = std::fs::read_to_string(&t.table)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", t.table.display())))?;
    Ok(ChamberTable::from_json_str(&text, var, t.cap)?)
}

fn range(s: &SurfaceData, c: &ChernData, arg: &Option<String>) -> Result<(Rational, Rational), Failure> {
    match arg {
        Some(text) => {
            let (lo, hi) = text
                .split_once(':')
                .ok_or_else(|| Failure::Usage(format!("range must look like lo:hi, got {text:?}")))?;
            Ok((rational(lo)?, rational(hi)?))
        }
        None => {
            let (_, e) = s.require_ruled_params()?;
            Ok((Rational::from_integer(e.into()), criteria::default_upper_bound(s, c)?))
        }
    }
}

fn json<T: Serialize + ?Sized>(v: &T) -> String {
    let mut s = serde_json::to_string(v).expect("outputs serialize");
    s.push('\n');
    s
}

fn execute(cmd: Command, format: Format) -> Outcome {
    let table = format == Format::Table;
    match cmd {
        Command::Surface { surface } => {
            let s = load_surface(&surface)?;
            let summary = s.summary();
            Rendered::ok(if table { surface_table(&s) } else { json(&summary) })
        }
        Command::Walls { datum, range: r, witnesses } => {
            let (s, c) = load_datum(&datum)?;
            let (lo, hi) = range(&s, &c, &r)?;
            let ws = walls::enumerate_walls(&s, &c, &lo, &hi)?;
            Rendered::ok(match (table, witnesses) {
                (false, false) => json(&ws.iter().map(|w| fmt_q(&w.position)).collect::<Vec<_>>()),
                (false, true) => json(&ws),
                (true, _) => walls_table(&ws, witnesses),
            })
        }
        Command::Chambers { datum, range: r } => {
            let (s, c) = load_datum(&datum)?;
            let (lo, hi) = range(&s, &c, &r)?;
            let ch = walls::chambers(&s, &c, &lo, &hi)?;
            Rendered::ok(if table { lines(ch.iter().map(Chamber::to_string)) } else { json(&ch) })
        }
        Command::Hn { at, side } => {
            let (s, c) = load_datum(&at.datum)?;
            let w = load_wall(&s, &c, &at.wall)?;
            let types = walls::hn_types_at(&s, &c, &w, side.into())?;
            Rendered::ok(if table { lines(types.iter().map(type_string)) } else { json(&types) })
        }
        Command::Codim { surface, hn, chern, wall, side } => {
            let s = load_surface(&surface)?;
            let value = match (hn, chern, wall) {
                (Some(text), _, _) => Bound::Finite(strata::codim(&s, &HNType::from_json_str(&text)?)?),
                (None, Some(chern), Some(wall)) => {
                    let c = ChernData::from_json_str(&chern)?;
                    let w = load_wall(&s, &c, &wall)?;
                    strata::min_codim_at(&s, &c, &w, side.into())?
                }
                _ => return Err(Failure::Usage("codim needs --hn, or --chern with --wall".into())),
            };
            Rendered::ok(if table { format!("{value}\n") } else { json(&value) })
        }
        Command::Check { at } => {
            let (s, c) = load_datum(&at.datum)?;
            let w = load_wall(&s, &c, &at.wall)?;
            let report = strata::check_positivity(&s, &c, &w)?;
            Rendered::ok(if table { check_table(&report) } else { json(&report) })
        }
        Command::Cross { at, table: t, var, orientation } => {
            let (s, c) = load_datum(&at.datum)?;
            let w = load_wall(&s, &c, &at.wall)?;
            let tab = load_table(&t, var.into())?;
            let wc = WallCrossing::at_wall(&s, &c, &w, orientation.into())?;
            poly_out(&wallcross::cross(&s, &wc, &tab)?, table)
        }
        Command::Glue { at, table: t, side, var } => {
            let (s, c) = load_datum(&at.datum)?;
            let w = load_wall(&s, &c, &at.wall)?;
            let tab = load_table(&t, var.into())?;
            poly_out(&wallcross::poincare_glue(&s, &c, &w, side.into(), &tab)?, table)
        }
        Command::Mass { at, table: t, var, orientation } => {
            let (s, c) = load_datum(&at.datum)?;
            let w = load_wall(&s, &c, &at.wall)?;
            let tab = load_table(&t, var.into())?;
            poly_out(&wallcross::mass_cross_oriented(&s, &c, &w, &tab, orientation.into())?, table)
        }
        Command::Exists { datum, x } => {
            let (s, c) = load_datum(&datum)?;
            let yes = criteria::exists_semistable(&s, &c, &rational(&x)?)?;
            Rendered::ok(if table { format!("{yes}\n") } else { json(&yes) })
        }
        Command::Dim { datum } => {
            let (s, c) = load_datum(&datum)?;
            let d = fmt_q(&criteria::moduli_dim(&s, &c)?);
            Rendered::ok(if table { format!("{d}\n") } else { json(&d) })
        }
        Command::Picard { datum, x } => {
            let (s, c) = load_datum(&datum)?;
            let p = criteria::picard_structure(&s, &c, &rational(&x)?)?;
            Rendered::ok(if table { picard_table(&p) } else { json(&p) })
        }
        Command::Verify => {
            let report = fixtures::verify_fixtures();
            let text = if table { verify_table(&report) } else { json(&report) };
            Ok(Rendered { text, code: if report.pass { EXIT_OK } else { EXIT_DOMAIN } })
        }
    }
}

trait RuledParams {
    fn require_ruled_params(&self) -> Result<(u32, u32), Failure>;
}

impl RuledParams for SurfaceData {
    fn require_ruled_params(&self) -> Result<(u32, u32), Failure> {
        self.ruled_params()
            .ok_or(Failure::Domain(Error::AbstractUnsupported("walls are only defined on the ruled slice")))
    }
}

fn poly_out(p: &Poly, table: bool) -> Outcome {
    Rendered::ok(if table { format!("{p}\n") } else { json(p) })
}

fn lines(items: impl Iterator<Item = String>) -> String {
    items.fold(String::new(), |mut out, l| {
        out.push_str(&l);
        out.push('\n');
        out
    })
}

fn type_string(t: &HNType) -> String {
    t.parts.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

/// Left-aligned columns separated by two spaces.
fn aligned(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> =
        (0..cols).map(|i| rows.iter().filter_map(|r| r.get(i)).map(|c| c.chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for row in rows {
        let line: Vec<String> =
            row.iter().enumerate().map(|(i, c)| format!("{c:<w$}", w = widths[i])).collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn surface_table(s: &SurfaceData) -> String {
    let m = s.summary();
    let mut rows = vec![vec!["kind".to_string(), m.kind.to_string()]];
    if let (Some(g), Some(e)) = (m.g, m.e) {
        rows.push(vec!["g".into(), g.to_string()]);
        rows.push(vec!["e".into(), e.to_string()]);
    }
    rows.push(vec!["gram".into(), format!("[[{}, {}], [{}, {}]]", m.gram[0][0], m.gram[0][1], m.gram[1][0], m.gram[1][1])]);
    rows.push(vec!["K".into(), format!("({}, {})", fmt_q(&m.k.a), fmt_q(&m.k.b))]);
    rows.push(vec!["chiO".into(), m.chi.to_string()]);
    rows.push(vec!["nonrational".into(), m.nonrational.to_string()]);
    aligned(&rows)
}

fn walls_table(ws: &[Wall], witnesses: bool) -> String {
    if !witnesses {
        return lines(ws.iter().map(|w| fmt_q(&w.position)));
    }
    let mut rows = vec![vec!["x".to_string(), "ranks".into(), "sub c1".into(), "xi".into(), "budget".into()]];
    for w in ws {
        for wit in &w.witnesses {
            rows.push(vec![
                fmt_q(&w.position),
                format!("{}+{}", wit.ranks.0, wit.ranks.1),
                format!("({},{})", wit.sub_c1.a, wit.sub_c1.b),
                format!("({}, {})", fmt_q(&wit.xi.a), fmt_q(&wit.xi.b)),
                fmt_q(&wit.delta_budget),
            ]);
        }
    }
    aligned(&rows)
}

fn yes(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}

fn check_table(r: &PositivityReport) -> String {
    let mut rows = vec![vec![
        "type".to_string(),
        "d".into(),
        "d>=2".into(),
        "d>=3".into(),
        "strict".into(),
        "integral".into(),
    ]];
    for t in &r.types {
        rows.push(vec![
            type_string(&t.hn_type),
            fmt_q(&t.d),
            yes(t.at_least_two),
            yes(t.at_least_three),
            yes(t.parts_semistable_at_wall),
            yes(t.integral),
        ]);
    }
    let mut out = format!("wall {}\n", fmt_q(&r.position));
    out.push_str(&aligned(&rows));
    for w in &r.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    out
}

fn picard_table(p: &PicardDescription) -> String {
    let free = match p.free_rank {
        FreeRank::Exact(n) => n.to_string(),
        FreeRank::Range(lo, hi) => format!("{lo}..{hi}"),
    };
    let steps = if p.normalization.is_empty() {
        "none".to_string()
    } else {
        serde_json::to_string(&p.normalization).expect("steps serialize")
    };
    let rows = vec![
        vec!["base".to_string(), format!("Pic(J^{} x J^{})", p.d1, p.d2)],
        vec!["free_rank".into(), free],
        vec!["kappa_generated".into(), p.kappa_generated.to_string()],
        vec!["off_wall_stable_exists".into(), p.flags.off_wall_stable_exists.to_string()],
        vec!["locally_factorial".into(), p.flags.locally_factorial.to_string()],
        vec!["normalized".into(), p.normalized.to_string()],
        vec!["normalization".into(), steps],
        vec!["r1, r2".into(), format!("{}, {}", p.r1, p.r2)],
        vec!["d, d1, d2".into(), format!("{}, {}, {}", p.d, p.d1, p.d2)],
        vec!["x0".into(), fmt_q(&p.x0)],
        vec!["x1".into(), fmt_q(&p.x1)],
    ];
    aligned(&rows)
}

fn verify_table(r: &FixtureReport) -> String {
    let mut rows = vec![vec![
        "fixture".to_string(),
        "degree".into(),
        "expdim".into(),
        "euler".into(),
        "palindromic".into(),
        "positive".into(),
        "result".into(),
    ]];
    for c in &r.checks {
        rows.push(vec![
            c.label.to_string(),
            c.degree.to_string(),
            c.expdim.to_string(),
            fmt_q(&c.euler),
            yes(c.palindromic),
            yes(c.positive),
            if c.pass { "PASS" } else { "FAIL" }.to_string(),
        ]);
    }
    aligned(&rows)
}
