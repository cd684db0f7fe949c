//! `tabimage`: ingest, split, invert, fit, transform and preview from the
//! command line. Exit codes: 0 success, 1 operational error, 2 usage error.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "tabimage", version, about = "Turn sparse tabular datasets into structured imagesets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Load an IDX image/label pair or a categorical CSV into a dataset directory.
    Ingest(IngestArgs),
    /// Draw disjoint train/validation/test subsets.
    Split(SplitArgs),
    /// Flip `x -> 1 - x` in a seeded choice of binary features.
    Invert(InvertArgs),
    /// Fit a transformer on a training dataset and write the model file.
    Fit(FitArgs),
    /// Apply a fitted model to a dataset and write an (M, P, P) NPY imageset.
    Transform(TransformArgs),
    /// Render selected images of an NPY imageset into a PNG grid.
    Preview(PreviewArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Idx,
    Csv,
}

#[derive(Args)]
struct IngestArgs {
    #[arg(long, value_enum)]
    format: Format,
    /// IDX image file (--format idx).
    #[arg(long, required_if_eq("format", "idx"))]
    images: Option<PathBuf>,
    /// IDX label file (--format idx).
    #[arg(long, required_if_eq("format", "idx"))]
    labels: Option<PathBuf>,
    /// Categorical CSV, target in the first column, no header (--format csv).
    #[arg(long, required_if_eq("format", "csv"))]
    input: Option<PathBuf>,
    /// Output dataset directory.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct SplitArgs {
    /// Input dataset directory.
    #[arg(long)]
    data: PathBuf,
    #[arg(long)]
    train: usize,
    #[arg(long)]
    val: usize,
    #[arg(long)]
    test: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output directory; receives train/, val/ and test/ dataset directories.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct InvertArgs {
    /// Input dataset directory.
    #[arg(long)]
    data: PathBuf,
    /// Number of features to invert.
    #[arg(long)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output dataset directory.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum SchemeArg {
    Asis,
    Rand,
    Sdic,
    #[value(name = "sdic-c")]
    SdicC,
}

#[derive(Clone, Copy, ValueEnum)]
enum FillArg {
    Linear,
    Circular,
    Raster,
}

#[derive(Args)]
struct FitArgs {
    #[arg(long, value_enum)]
    scheme: SchemeArg,
    /// Override the scheme's default fill order (sdic-c: circular, others: linear).
    #[arg(long, value_enum)]
    fill: Option<FillArg>,
    /// Seed for the rand scheme.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Training dataset directory.
    #[arg(long)]
    train: PathBuf,
    /// Output model file (JSON).
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum PrecisionArg {
    #[value(name = "64")]
    F64,
    #[value(name = "32")]
    F32,
}

#[derive(Args)]
struct TransformArgs {
    /// Model file written by `fit`.
    #[arg(long)]
    model: PathBuf,
    /// Dataset directory to transform.
    #[arg(long)]
    data: PathBuf,
    /// Output NPY file.
    #[arg(long)]
    out: PathBuf,
    /// Bits per stored value.
    #[arg(long, value_enum, default_value = "64")]
    precision: PrecisionArg,
}

#[derive(Args)]
struct PreviewArgs {
    /// NPY imageset written by `transform`.
    #[arg(long)]
    images: PathBuf,
    /// Samples to show: `A..B` (inclusive), `A..=B`, or a comma list.
    #[arg(long, default_value = "0..15")]
    samples: String,
    /// Tiles per row.
    #[arg(long, default_value_t = 4)]
    cols: usize,
    /// Output PNG file.
    #[arg(long)]
    out: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            if err.downcast_ref::<commands::UsageError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
