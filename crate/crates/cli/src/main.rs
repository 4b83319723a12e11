mod output;
mod svg;

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hausmorph::experiment::{
    emit_records_csv, emit_summary_csv, generate_comb_pair, generate_random_pair, generate_squares_pair, parse_manifest,
    run_batch, BatchConfig, GridConfig,
};
use hausmorph::hausdorff::{directed_hausdorff_with, HausdorffOptions};
use hausmorph::{emit_wkt, measure, parse_wkt, Align, Error, Execution, Method, MorphParams, Morpher, Scale, Shape};

use crate::output::write_atomic;
use crate::svg::{fill_color, render_frame, shared_view, RenderOptions};

#[derive(Parser)]
#[command(name = "hausmorph", version, about = "Hausdorff morphs between polygonal shapes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute one morph at one or more values of alpha.
    Morph(MorphArgs),
    /// Hausdorff distance between two shapes.
    Hausdorff(HausdorffArgs),
    /// Render morph frames as SVG.
    Render(RenderArgs),
    /// Run the measurement grid over a manifest of shape pairs.
    Batch(BatchArgs),
    /// Write a synthetic shape pair and its one-line manifest.
    Gen(GenArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Dilation,
    Voronoi,
    Mixed,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Dilation => Method::Dilation,
            MethodArg::Voronoi => Method::Voronoi,
            MethodArg::Mixed => Method::Mixed,
        }
    }
}

impl fmt::Display for MethodArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(Method::from(*self).name())
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum AlignArg {
    Centroid,
    None,
}

impl fmt::Display for AlignArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AlignArg::Centroid => "centroid",
            AlignArg::None => "none",
        })
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ScaleArg {
    /// Both shapes scaled to the geometric mean of their areas.
    EqualArea,
    /// Both shapes scaled to area 1.
    UnitArea,
    None,
}

impl fmt::Display for ScaleArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScaleArg::EqualArea => "equal-area",
            ScaleArg::UnitArea => "unit-area",
            ScaleArg::None => "none",
        })
    }
}

/// Morph parameters shared by `morph` and `render`.
#[derive(Args)]
struct MorphOpts {
    /// Closing radius of the mixed morph.
    #[arg(long, default_value_t = 0.02)]
    phi: f64,
    #[arg(long, default_value_t = AlignArg::None)]
    align: AlignArg,
    #[arg(long, default_value_t = ScaleArg::None)]
    scale: ScaleArg,
    /// Sides of the polygon approximating a disk.
    #[arg(long, default_value_t = 64)]
    segments: usize,
    /// Chord deviation allowed on parabolic Voronoi boundaries.
    #[arg(long = "arc-tol", default_value_t = 1e-4)]
    arc_tol: f64,
}

impl MorphOpts {
    fn params(&self) -> MorphParams {
        MorphParams { phi: self.phi, disk_segments: self.segments, arc_tolerance: self.arc_tol, ..MorphParams::default() }
    }

    fn check(&self) -> Result<(), CliError> {
        if !(self.phi >= 0.0 && self.phi.is_finite()) {
            return Err(CliError::Input(format!("--phi: must be a non-negative number, got {}", self.phi)));
        }
        if !(self.arc_tol > 0.0 && self.arc_tol.is_finite()) {
            return Err(CliError::Input(format!("--arc-tol: must be positive, got {}", self.arc_tol)));
        }
        if self.segments < 3 {
            return Err(CliError::Input(format!("--segments: need at least 3, got {}", self.segments)));
        }
        Ok(())
    }

    fn morpher(&self, a: &Path, b: &Path) -> Result<Morpher, CliError> {
        self.check()?;
        let (sa, sb) = (read_shape(a)?, read_shape(b)?);
        Morpher::new(&sa, &sb, align(self.align), scale(self.scale), self.params(), Execution::Sequential).map_err(CliError::from)
    }
}

#[derive(Args)]
struct MorphArgs {
    #[arg(long, default_value_t = MethodArg::Voronoi)]
    method: MethodArg,
    /// Comma-separated values of alpha in [0, 1].
    #[arg(long, value_delimiter = ',', default_value = "0.5")]
    alpha: Vec<f64>,
    #[command(flatten)]
    opts: MorphOpts,
    /// Area below which components and holes are ignored in the printed measurements.
    #[arg(long, default_value_t = 1e-6)]
    filter: f64,
    /// Output directory.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    a: PathBuf,
    b: PathBuf,
}

#[derive(Args)]
struct HausdorffArgs {
    /// Chord deviation allowed on parabolic Voronoi boundaries.
    #[arg(long = "arc-tol", default_value_t = 1e-4)]
    arc_tol: f64,
    a: PathBuf,
    b: PathBuf,
}

#[derive(Args)]
struct RenderArgs {
    /// Comma-separated values of alpha, strictly increasing.
    #[arg(long, value_delimiter = ',', default_value = "0,0.25,0.5,0.75,1")]
    frames: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_value = "dilation,voronoi,mixed")]
    methods: Vec<MethodArg>,
    /// Canvas size in SVG user units, as WIDTHxHEIGHT.
    #[arg(long, default_value = "800x800")]
    canvas: String,
    /// Padding around the frames, as a fraction of their extent.
    #[arg(long, default_value_t = 0.05)]
    margin: f64,
    #[command(flatten)]
    opts: MorphOpts,
    /// Output directory.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    a: PathBuf,
    b: PathBuf,
}

#[derive(Args)]
struct BatchArgs {
    /// Lines of `pair_id, path_a, path_b, category`; relative paths are resolved
    /// against the manifest's directory.
    #[arg(long)]
    manifest: PathBuf,
    /// Spacing of the alpha grid; must divide 1.
    #[arg(long, default_value_t = 0.125)]
    step: f64,
    /// Closing radius of the mixed morph.
    #[arg(long, default_value_t = 0.02)]
    phi: f64,
    /// Area below which components and holes are ignored.
    #[arg(long, default_value_t = 1e-6)]
    filter: f64,
    #[arg(long, value_delimiter = ',', default_value = "dilation,voronoi,mixed")]
    methods: Vec<MethodArg>,
    #[arg(long, default_value_t = AlignArg::Centroid)]
    align: AlignArg,
    #[arg(long, default_value_t = ScaleArg::UnitArea)]
    scale: ScaleArg,
    /// Sides of the polygon approximating a disk.
    #[arg(long, default_value_t = 64)]
    segments: usize,
    /// Chord deviation allowed on parabolic Voronoi boundaries.
    #[arg(long = "arc-tol", default_value_t = 1e-4)]
    arc_tol: f64,
    /// Output directory for records.csv and summary.csv.
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Args)]
struct GenArgs {
    #[command(subcommand)]
    kind: GenKind,
}

#[derive(Subcommand)]
enum GenKind {
    /// Two interlocking combs.
    Comb {
        #[arg(long, default_value_t = 4)]
        prongs: usize,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Two seeded star-shaped polygons.
    Random {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 16)]
        vertices: usize,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// The unit square and a unit square `gap` to its right.
    Squares {
        #[arg(long, default_value_t = 1.0)]
        gap: f64,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

#[derive(Debug)]
enum CliError {
    /// Bad flags, unreadable or malformed input: exit 1.
    Input(String),
    /// The geometry itself could not be processed: exit 2.
    Geometry(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        if e.is_input_error() {
            CliError::Input(e.to_string())
        } else {
            CliError::Geometry(e.to_string())
        }
    }
}

fn align(a: AlignArg) -> Align {
    match a {
        AlignArg::Centroid => Align::Centroid,
        AlignArg::None => Align::None,
    }
}

fn scale(s: ScaleArg) -> Scale {
    match s {
        ScaleArg::EqualArea => Scale::EqualArea,
        ScaleArg::UnitArea => Scale::UnitArea,
        ScaleArg::None => Scale::None,
    }
}

fn read_shape(path: &Path) -> Result<Shape, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    parse_wkt(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, contents: &str) -> Result<(), CliError> {
    write_atomic(path, contents.as_bytes()).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn check_alphas(flag: &str, alphas: &[f64]) -> Result<(), CliError> {
    match alphas.iter().find(|a| !(0.0..=1.0).contains(*a)) {
        Some(a) => Err(CliError::Input(format!("{flag}: {a} is outside [0, 1]"))),
        None => Ok(()),
    }
}

fn cmd_morph(args: &MorphArgs) -> Result<(), CliError> {
    check_alphas("--alpha", &args.alpha)?;
    let morpher = args.opts.morpher(&args.a, &args.b)?;
    let method = Method::from(args.method);
    let pair = morpher.pair();
    let dist = HausdorffOptions { arc_tolerance: args.opts.arc_tol, execution: Execution::Sequential, ..Default::default() };
    println!("h={:.9} tau={:.9}", morpher.h(), morpher.tolerance());
    for &alpha in &args.alpha {
        let r = morpher.morph(method, alpha, args.opts.phi)?;
        let m = measure(&r.shape, args.filter);
        let (da, db) = if r.shape.is_empty() {
            ("NA".to_string(), "NA".to_string())
        } else {
            let da = hausmorph::hausdorff::hausdorff_with(&pair.a, &r.shape, &dist)?.distance;
            let db = hausmorph::hausdorff::hausdorff_with(&pair.b, &r.shape, &dist)?.distance;
            (format!("{da:.9}"), format!("{db:.9}"))
        };
        println!(
            "alpha={alpha} area={:.6} perimeter={:.6} components={} holes={} d_a={da} d_b={db}",
            m.area, m.perimeter, m.components, m.holes
        );
        write(&args.out.join(format!("{}-{alpha}.wkt", method.name())), &(emit_wkt(&r.shape) + "\n"))?;
    }
    Ok(())
}

fn cmd_hausdorff(args: &HausdorffArgs) -> Result<(), CliError> {
    if !(args.arc_tol > 0.0 && args.arc_tol.is_finite()) {
        return Err(CliError::Input(format!("--arc-tol: must be positive, got {}", args.arc_tol)));
    }
    let (a, b) = (read_shape(&args.a)?, read_shape(&args.b)?);
    let opts = HausdorffOptions { arc_tolerance: args.arc_tol, execution: Execution::Sequential, ..Default::default() };
    let ab = directed_hausdorff_with(&a, &b, &opts)?;
    let ba = directed_hausdorff_with(&b, &a, &opts)?;
    let w = if ab.distance >= ba.distance { ab } else { ba };
    println!(
        "{:.9} {:.9} {:.9} {:.9} {:.9} {:.9} {:.9}",
        w.distance, ab.distance, ba.distance, w.witness_source.x, w.witness_source.y, w.witness_target.x, w.witness_target.y
    );
    Ok(())
}

fn parse_canvas(s: &str) -> Result<(f64, f64), CliError> {
    let bad = || CliError::Input(format!("--canvas: expected WIDTHxHEIGHT, got '{s}'"));
    let (w, h) = s.split_once(['x', 'X']).ok_or_else(bad)?;
    Ok((w.trim().parse().map_err(|_| bad())?, h.trim().parse().map_err(|_| bad())?))
}

fn cmd_render(args: &RenderArgs) -> Result<(), CliError> {
    let (width, height) = parse_canvas(&args.canvas)?;
    let opts = RenderOptions { width, height, margin: args.margin, frames: args.frames.clone() };
    opts.validate().map_err(CliError::Input)?;
    let morpher = args.opts.morpher(&args.a, &args.b)?;
    let mut frames = Vec::new();
    for &m in &args.methods {
        let method = Method::from(m);
        for &alpha in &opts.frames {
            frames.push((method, alpha, morpher.morph(method, alpha, args.opts.phi)?.shape));
        }
    }
    let view = shared_view(&frames.iter().map(|f| &f.2).collect::<Vec<_>>(), opts.margin);
    for (method, alpha, shape) in &frames {
        let svg = render_frame(shape, &view, fill_color(*method), &opts);
        write(&args.out.join(format!("{}-{alpha}.svg", method.name())), &svg)?;
    }
    println!("wrote {} frames to {}", frames.len(), args.out.display());
    Ok(())
}

fn thread_cap() -> Result<usize, CliError> {
    match std::env::var("HAUSMORPH_THREADS") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Input(format!("HAUSMORPH_THREADS: expected a thread count, got '{v}'"))),
        Err(_) => Ok(0),
    }
}

#[cfg(feature = "parallel")]
fn with_threads<R: Send>(n: usize, f: impl FnOnce() -> R + Send) -> Result<R, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build()
        .map_err(|e| CliError::Input(format!("HAUSMORPH_THREADS: {e}")))?;
    Ok(pool.install(f))
}

#[cfg(not(feature = "parallel"))]
fn with_threads<R: Send>(_n: usize, f: impl FnOnce() -> R + Send) -> Result<R, CliError> {
    Ok(f())
}

fn cmd_batch(args: &BatchArgs) -> Result<(), CliError> {
    if !(args.phi >= 0.0 && args.phi.is_finite()) {
        return Err(CliError::Input(format!("--phi: must be a non-negative number, got {}", args.phi)));
    }
    if !(args.filter >= 0.0 && args.filter.is_finite()) {
        return Err(CliError::Input(format!("--filter: must be a non-negative number, got {}", args.filter)));
    }
    if args.methods.is_empty() {
        return Err(CliError::Input("--methods: at least one method is required".into()));
    }
    hausmorph::experiment::alpha_grid(args.step).map_err(|_| CliError::Input(format!("--step: {} does not divide 1", args.step)))?;
    let threads = thread_cap()?;
    let text = fs::read_to_string(&args.manifest).map_err(|e| CliError::Input(format!("{}: {e}", args.manifest.display())))?;
    let base = args.manifest.parent().unwrap_or(Path::new("."));
    let entries = parse_manifest(&text, base).map_err(|e| CliError::Input(format!("{}: {e}", args.manifest.display())))?;
    if entries.is_empty() {
        return Err(CliError::Input(format!("{}: no pairs listed", args.manifest.display())));
    }
    let cfg = BatchConfig {
        grid: GridConfig {
            methods: args.methods.iter().map(|&m| m.into()).collect(),
            alpha_step: args.step,
            phi: args.phi,
            filter: args.filter,
        },
        params: MorphParams { phi: args.phi, disk_segments: args.segments, arc_tolerance: args.arc_tol, ..MorphParams::default() },
        align: align(args.align),
        scale: scale(args.scale),
    };
    println!("step={} phi={} filter={} pairs={}", args.step, args.phi, args.filter, entries.len());
    let out = with_threads(threads, || run_batch(&entries, &cfg, Execution::Parallel))?;
    for (pair, err) in &out.failures {
        eprintln!("pair {pair} skipped: {err}");
    }
    if out.failures.len() == entries.len() {
        let all_input = out.failures.iter().all(|(_, e)| e.is_input_error());
        let msg = "every pair failed".to_string();
        return Err(if all_input { CliError::Input(msg) } else { CliError::Geometry(msg) });
    }
    write(&args.out.join("records.csv"), &emit_records_csv(&out.records)?)?;
    write(&args.out.join("summary.csv"), &emit_summary_csv(&out.summary)?)?;
    println!("records={} failed={}", out.records.len(), out.failures.len());
    Ok(())
}

fn cmd_gen(kind: &GenKind) -> Result<(), CliError> {
    let (pair, out, id, category) = match kind {
        GenKind::Comb { prongs, out } => (generate_comb_pair(*prongs)?, out, format!("comb-{prongs}"), "comb"),
        GenKind::Random { seed, vertices, out } => {
            (generate_random_pair(*seed, *vertices)?, out, format!("random-{seed}-{vertices}"), "random")
        }
        GenKind::Squares { gap, out } => (generate_squares_pair(*gap)?, out, format!("squares-{gap}"), "squares"),
    };
    write(&out.join("a.wkt"), &(emit_wkt(&pair.0) + "\n"))?;
    write(&out.join("b.wkt"), &(emit_wkt(&pair.1) + "\n"))?;
    write(&out.join("manifest.txt"), &format!("{id}, a.wkt, b.wkt, {category}\n"))?;
    println!("wrote {id} to {}", out.display());
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Morph(a) => cmd_morph(a),
        Command::Hausdorff(a) => cmd_hausdorff(a),
        Command::Render(a) => cmd_render(a),
        Command::Batch(a) => cmd_batch(a),
        Command::Gen(a) => cmd_gen(&a.kind),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Geometry(msg)) => {
            eprintln!("geometry error: {msg}");
            ExitCode::from(2)
        }
    }
}
