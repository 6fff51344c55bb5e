use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use juliadiff_core::bounds::{
    bound_table, decay_params, diam_i0_bound, radius_sequences, theorem_condition, BoundRow,
    DecayParams, DiamMode,
};
use juliadiff_core::cover::{
    difference_cover_with, generate_levels_with, generate_pieces_with, piece_disks, sum_area,
    union_area_grid_with, PieceCover,
};
use juliadiff_core::io::{bounds_csv, difference_cover_csv, mask_pgm, pieces_csv, MaskSidecar};
use juliadiff_core::limits::Limits;
use juliadiff_core::numeric::fmt17;
use juliadiff_core::oracle::{grid_minkowski_diff_using, mask_area, rasterize_preimage_with, DiffMethod, MaskMode};
use juliadiff_core::render::{render_cover, render_difference};
use juliadiff_core::verify::{self, SandwichRow, VerifyConfig};
use juliadiff_core::{ComplexPoint, Disk, Error, Parameter};

const MAX_DEPTH: usize = 39;
const MAX_BOUNDS_DEPTH: usize = 100_000;

#[derive(Parser)]
#[command(name = "juliadiff", version, about = "Bounds on the measure of J_c - J_c for Cantor quadratic Julia sets")]
struct Cli {
    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Table of n, R_n, r_n, K_n, bound, ratio_step and the decay parameters.
    Bounds(Run),
    /// Piece covers at depth n.
    Cover(Run),
    /// Difference-disk cover at depth n with sum and union areas.
    Diff(Run),
    /// Raster masks, areas and the raster <= union <= sum comparison.
    Oracle(Run),
    /// The full invariant suite; exit 0 iff every check passes.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Pgm,
    Ppm,
    Text,
}

#[derive(Args)]
struct Run {
    #[arg(long, allow_negative_numbers = true)]
    c_re: f64,
    #[arg(long, allow_negative_numbers = true)]
    c_im: f64,
    #[arg(long, short = 'n', default_value_t = 5)]
    depth: usize,
    /// Boundary samples per piece.
    #[arg(long, short = 'm', default_value_t = 512)]
    samples: usize,
    /// Raster cell size.
    #[arg(long, default_value_t = 0.01)]
    cell: f64,
    /// Theorem epsilon, a number or `auto`.
    #[arg(long, default_value = "auto", value_parser = parse_epsilon)]
    epsilon: Epsilon,
    /// Output path (stdout when omitted). For `oracle --format pgm` a directory.
    #[arg(long, short = 'o')]
    out: Option<PathBuf>,
    #[arg(long, short = 'f', value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Also write a PPM render here (`cover`, `diff`).
    #[arg(long)]
    render: Option<PathBuf>,
    #[arg(long, default_value_t = 800)]
    render_size: usize,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    run: Run,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Random disk pairs for the disk-difference sampling check.
    #[arg(long, default_value_t = 16)]
    disk_pairs: usize,
    #[arg(long, default_value_t = 100_000)]
    pair_samples: usize,
}

#[derive(Clone, Copy)]
struct Epsilon(Option<f64>);

fn parse_epsilon(s: &str) -> Result<Epsilon, String> {
    if s == "auto" {
        return Ok(Epsilon(None));
    }
    match s.parse::<f64>() {
        Ok(e) if e.is_finite() && e > 0.0 => Ok(Epsilon(Some(e))),
        _ => Err(format!("expected `auto` or a positive number, got `{s}`")),
    }
}

/// Failure classes mapped to exit codes.
enum Failure {
    Usage(String),
    Runtime(String),
    Verify,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ContainmentViolation { .. } | Error::Numerical(_) => Failure::Runtime(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if t == 0 {
            return report(Failure::Usage("--threads must be at least 1".into()));
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            return report(Failure::Runtime(e.to_string()));
        }
    }
    let result = match &cli.command {
        Command::Bounds(run) => bounds(run),
        Command::Cover(run) => cover(run),
        Command::Diff(run) => diff(run),
        Command::Oracle(run) => oracle(run),
        Command::Verify(args) => verify_cmd(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => report(f),
    }
}

fn report(f: Failure) -> ExitCode {
    match f {
        Failure::Usage(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Failure::Runtime(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Failure::Verify => {
            eprintln!("error: verification failed");
            ExitCode::from(1)
        }
    }
}

impl Run {
    fn parameter(&self) -> Result<Parameter, Failure> {
        Ok(Parameter::new(ComplexPoint::new(self.c_re, self.c_im))?)
    }

    fn check_depth(&self, max: usize) -> Outcome {
        if self.depth > max {
            return Err(Failure::Usage(format!("depth {} exceeds the cap {max}", self.depth)));
        }
        Ok(())
    }

    fn check_cell(&self) -> Outcome {
        if !(self.cell.is_finite() && self.cell > 0.0) {
            return Err(Failure::Usage(format!("cell must be positive, got {}", self.cell)));
        }
        Ok(())
    }

    fn require_format(&self, allowed: &[Format]) -> Outcome {
        if !allowed.contains(&self.format) {
            let names: Vec<_> = allowed
                .iter()
                .map(|f| f.to_possible_value().expect("named").get_name().to_owned())
                .collect();
            return Err(Failure::Usage(format!("this subcommand writes {}", names.join(" or "))));
        }
        Ok(())
    }

    fn emit(&self, bytes: &[u8]) -> Outcome {
        match &self.out {
            Some(path) => fs::write(path, bytes)?,
            None => io::stdout().lock().write_all(bytes)?,
        }
        Ok(())
    }
}

fn limits() -> Result<Limits, Failure> {
    Ok(Limits::from_env()?)
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable") + "\n"
}

#[derive(Serialize)]
struct BoundsReport<'a> {
    schema: &'static str,
    c: ComplexPoint,
    abs_c: f64,
    diam_i0: f64,
    theorem_condition: bool,
    status: &'static str,
    decay: Option<DecayParams>,
    rows: &'a [BoundRow],
}

fn decay_status(cond: bool) -> &'static str {
    if cond {
        "decay guaranteed"
    } else {
        "decay not guaranteed"
    }
}

fn bounds(run: &Run) -> Outcome {
    let p = run.parameter()?;
    run.check_depth(MAX_BOUNDS_DEPTH)?;
    run.require_format(&[Format::Csv, Format::Json])?;
    let n = run.depth.max(1);
    let diam = diam_i0_bound(&p, DiamMode::Certified)?;
    let rows = bound_table(&p, n, diam)?;
    let radii = radius_sequences(&p, n + 2)?;
    let cond = theorem_condition(&p);
    let decay = if cond { Some(decay_params(&p, run.epsilon.0)?) } else { None };
    if !cond {
        eprintln!("warning: {}: |c| <= 3+sqrt(3)", decay_status(cond));
    }
    let text = match run.format {
        Format::Json => to_json(&BoundsReport {
            schema: "juliadiff.bounds/1",
            c: p.c(),
            abs_c: p.abs_c(),
            diam_i0: diam,
            theorem_condition: cond,
            status: decay_status(cond),
            decay,
            rows: &rows,
        }),
        _ => {
            let mut out = format!(
                "# c={} abs_c={} diam_i0={}\n# theorem_condition={} {}\n",
                p.c(),
                fmt17(p.abs_c()),
                fmt17(diam),
                cond,
                decay_status(cond)
            );
            if let Some(d) = decay {
                out += &format!(
                    "# epsilon={} delta={} onset={} ratio={} k_const={}\n",
                    fmt17(d.epsilon),
                    fmt17(d.delta),
                    d.onset,
                    fmt17(d.ratio),
                    fmt17(d.k_const)
                );
            }
            out + &bounds_csv(&rows, &radii)
        }
    };
    run.emit(text.as_bytes())
}

#[derive(Serialize)]
struct CoverReport<'a> {
    schema: &'static str,
    c: ComplexPoint,
    depth: usize,
    samples: usize,
    pieces: Vec<PieceRow<'a>>,
}

#[derive(Serialize)]
struct PieceRow<'a> {
    seq: String,
    disk: &'a Disk,
    sampled_diam: f64,
}

fn pieces(run: &Run, p: &Parameter, limits: &Limits) -> Result<Vec<PieceCover>, Failure> {
    run.check_depth(MAX_DEPTH)?;
    Ok(generate_pieces_with(p, run.depth, run.samples, limits)?)
}

fn write_render(path: &Path, bytes: &[u8]) -> Outcome {
    fs::write(path, bytes)?;
    Ok(())
}

fn cover(run: &Run) -> Outcome {
    let p = run.parameter()?;
    run.require_format(&[Format::Csv, Format::Json, Format::Ppm])?;
    let limits = limits()?;
    let pcs = pieces(run, &p, &limits)?;
    if let Some(path) = &run.render {
        write_render(path, &render_cover(&pcs, &p.domain(), run.render_size))?;
    }
    match run.format {
        Format::Ppm => run.emit(&render_cover(&pcs, &p.domain(), run.render_size)),
        Format::Json => run.emit(
            to_json(&CoverReport {
                schema: "juliadiff.cover/1",
                c: p.c(),
                depth: run.depth,
                samples: run.samples,
                pieces: pcs
                    .iter()
                    .map(|pc| PieceRow {
                        seq: pc.seq.to_string(),
                        disk: &pc.disk,
                        sampled_diam: pc.sampled_diam,
                    })
                    .collect(),
            })
            .as_bytes(),
        ),
        _ => run.emit(pieces_csv(&pcs).as_bytes()),
    }
}

#[derive(Serialize)]
struct DiffReport<'a> {
    schema: &'static str,
    c: ComplexPoint,
    depth: usize,
    samples: usize,
    cell: f64,
    pieces: usize,
    sum_area: f64,
    union_area: f64,
    union_cells: u64,
    dilation_margin: f64,
    disks: &'a [Disk],
}

fn diff(run: &Run) -> Outcome {
    let p = run.parameter()?;
    run.check_cell()?;
    run.require_format(&[Format::Csv, Format::Json, Format::Ppm])?;
    let limits = limits()?;
    let pcs = pieces(run, &p, &limits)?;
    let cover = difference_cover_with(&piece_disks(&pcs), &limits)?;
    if let Some(path) = &run.render {
        write_render(path, &render_difference(&cover, run.render_size))?;
    }
    if run.format == Format::Ppm {
        return run.emit(&render_difference(&cover, run.render_size));
    }
    let union = union_area_grid_with(&cover, run.cell, &limits)?;
    let sum = sum_area(&cover);
    let text = match run.format {
        Format::Json => to_json(&DiffReport {
            schema: "juliadiff.diff/1",
            c: p.c(),
            depth: run.depth,
            samples: run.samples,
            cell: run.cell,
            pieces: pcs.len(),
            sum_area: sum,
            union_area: union.area,
            union_cells: union.cells,
            dilation_margin: union.dilation_margin,
            disks: &cover,
        }),
        _ => {
            format!(
                "# c={} depth={} pieces={} cell={}\n# sum_area={} union_area={} dilation_margin={}\n",
                p.c(),
                run.depth,
                pcs.len(),
                run.cell,
                fmt17(sum),
                fmt17(union.area),
                fmt17(union.dilation_margin)
            ) + &difference_cover_csv(&cover, pcs.len())
        }
    };
    run.emit(text.as_bytes())
}

#[derive(Serialize)]
struct OracleReport {
    schema: &'static str,
    c: ComplexPoint,
    depth: usize,
    samples: usize,
    cell: f64,
    inner_area: f64,
    outer_area: f64,
    diff_area: f64,
    sandwich: Vec<SandwichRow>,
    holds: bool,
}

fn oracle(run: &Run) -> Outcome {
    let p = run.parameter()?;
    run.check_cell()?;
    run.check_depth(MAX_DEPTH)?;
    run.require_format(&[Format::Csv, Format::Json, Format::Pgm])?;
    let limits = limits()?;
    let inner = rasterize_preimage_with(&p, run.depth, run.cell, MaskMode::Inner, &limits)?;
    let outer = rasterize_preimage_with(&p, run.depth, run.cell, MaskMode::Outer, &limits)?;
    let diff = grid_minkowski_diff_using(&inner, &inner, DiffMethod::Auto, &limits)?;

    if run.format == Format::Pgm {
        let dir = run
            .out
            .as_ref()
            .ok_or_else(|| Failure::Usage("--format pgm needs --out <directory>".into()))?;
        fs::create_dir_all(dir)?;
        for (name, mask) in [("inner", &inner), ("outer", &outer), ("difference", &diff)] {
            let stem = format!("{name}_n{}", run.depth);
            fs::write(dir.join(format!("{stem}.pgm")), mask_pgm(mask))?;
            fs::write(
                dir.join(format!("{stem}.json")),
                MaskSidecar::new(mask, run.depth, p.c()).to_json(),
            )?;
        }
        return Ok(());
    }

    let levels = generate_levels_with(&p, run.depth.max(1), run.samples, &limits)?;
    let (rows, _) = verify::sandwich_rows(&p, &levels, run.cell)?;
    let holds = rows.iter().all(|r| r.holds);
    let text = match run.format {
        Format::Json => to_json(&OracleReport {
            schema: "juliadiff.oracle/1",
            c: p.c(),
            depth: run.depth,
            samples: run.samples,
            cell: run.cell,
            inner_area: mask_area(&inner),
            outer_area: mask_area(&outer),
            diff_area: mask_area(&diff),
            sandwich: rows,
            holds,
        }),
        _ => {
            let mut out = format!(
                "# c={} depth={} cell={}\n# inner_area={} outer_area={} diff_area={}\n",
                p.c(),
                run.depth,
                run.cell,
                fmt17(mask_area(&inner)),
                fmt17(mask_area(&outer)),
                fmt17(mask_area(&diff))
            );
            out += "n,raster_area,raster_area_shallow,union_area,dilation_margin,sum_area,worst_case,holds\n";
            for r in &rows {
                out += &format!(
                    "{},{},{},{},{},{},{},{}\n",
                    r.n,
                    fmt17(r.raster_area),
                    fmt17(r.raster_area_shallow),
                    fmt17(r.union_area),
                    fmt17(r.dilation_margin),
                    fmt17(r.sum_area),
                    fmt17(r.worst_case),
                    r.holds
                );
            }
            out
        }
    };
    run.emit(text.as_bytes())?;
    if holds {
        Ok(())
    } else {
        Err(Failure::Verify)
    }
}

fn verify_cmd(args: &VerifyArgs) -> Outcome {
    let run = &args.run;
    run.parameter()?;
    run.check_cell()?;
    run.check_depth(MAX_DEPTH)?;
    run.require_format(&[Format::Text, Format::Csv, Format::Json])?;
    if args.pair_samples < 1000 {
        return Err(Failure::Usage("--pair-samples must be at least 1000".into()));
    }
    let report = verify::run(&VerifyConfig {
        c: ComplexPoint::new(run.c_re, run.c_im),
        depth: run.depth,
        samples: run.samples,
        cell: run.cell,
        epsilon: run.epsilon.0,
        disk_pairs: args.disk_pairs,
        pair_samples: args.pair_samples,
        seed: args.seed,
    })?;
    let text = match run.format {
        Format::Json => report.to_json(),
        _ => report.to_text(),
    };
    run.emit(text.as_bytes())?;
    if report.passed {
        Ok(())
    } else {
        Err(Failure::Verify)
    }
}
