use std::fmt;
use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use tabimage::ingest::{bootstrap_split, invert_features, one_hot_encode, read_categorical_csv, read_idx, SplitSpec};
use tabimage::io::{describe_input_file, read_array, read_dataset_dir, render_preview, write_array, write_dataset_dir};
use tabimage::io::{DatasetMeta, Precision};
use tabimage::{apply_transformer, fit_transformer, FillVariant, Scheme, Transformer};

use crate::{
    Command, FillArg, FitArgs, Format, IngestArgs, InvertArgs, PrecisionArg, PreviewArgs, SchemeArg, SplitArgs,
    TransformArgs,
};

/// Bad invocation: reported with exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn require_exists(path: &Path, what: &str) -> Result<()> {
    if !path.exists() {
        return Err(UsageError(format!("{what} {} does not exist", path.display())).into());
    }
    Ok(())
}

pub fn run(command: Command) -> Result<()> {
    match command {
        Command::Ingest(a) => ingest(a),
        Command::Split(a) => split(a),
        Command::Invert(a) => invert(a),
        Command::Fit(a) => fit(a),
        Command::Transform(a) => transform(a),
        Command::Preview(a) => preview(a),
    }
}

fn ingest(args: IngestArgs) -> Result<()> {
    let (dataset, meta) = match args.format {
        Format::Idx => {
            let images = args.images.expect("clap enforces --images");
            let labels = args.labels.expect("clap enforces --labels");
            require_exists(&images, "image file")?;
            require_exists(&labels, "label file")?;
            let dataset = read_idx(&images, &labels)?;
            let provenance = vec![format!(
                "ingest idx images={} labels={}",
                describe_input_file(&images)?,
                describe_input_file(&labels)?
            )];
            let meta = DatasetMeta::describe(&dataset, provenance);
            (dataset, meta)
        }
        Format::Csv => {
            let input = args.input.expect("clap enforces --input");
            require_exists(&input, "input file")?;
            let table = read_categorical_csv(&input)?;
            let (encoder, dataset) = one_hot_encode(&table)?;
            let provenance = vec![format!("ingest csv {}", describe_input_file(&input)?)];
            let mut meta = DatasetMeta::describe(&dataset, provenance);
            meta.encoder = Some(encoder);
            (dataset, meta)
        }
    };
    write_dataset_dir(&args.out, &dataset, &meta)?;
    println!(
        "M={} N={} n_classes={}",
        dataset.n_samples(),
        dataset.n_features(),
        dataset.n_classes()
    );
    Ok(())
}

fn split(args: SplitArgs) -> Result<()> {
    require_exists(&args.data, "dataset directory")?;
    let (dataset, meta) = read_dataset_dir(&args.data)?;
    let spec = SplitSpec {
        n_train: args.train,
        n_val: args.val,
        n_test: args.test,
        seed: args.seed,
    };
    let parts = bootstrap_split(&dataset, spec)?;
    for (name, subset, indices) in [
        ("train", &parts.train, &parts.train_indices),
        ("val", &parts.val, &parts.val_indices),
        ("test", &parts.test, &parts.test_indices),
    ] {
        let mut provenance = meta.provenance.clone();
        provenance.push(format!(
            "split {name} {}:{}:{} seed={}",
            spec.n_train, spec.n_val, spec.n_test, spec.seed
        ));
        let mut sub_meta = DatasetMeta::describe(subset, provenance);
        sub_meta.source_indices = Some(indices.clone());
        sub_meta.encoder = meta.encoder.clone();
        write_dataset_dir(&args.out.join(name), subset, &sub_meta)?;
        println!("{name}: {} samples", subset.n_samples());
    }
    Ok(())
}

fn invert(args: InvertArgs) -> Result<()> {
    require_exists(&args.data, "dataset directory")?;
    let (dataset, meta) = read_dataset_dir(&args.data)?;
    let (inverted, cols) = invert_features(&dataset, args.count, args.seed)?;
    let mut provenance = meta.provenance.clone();
    provenance.push(format!("invert count={} seed={}", args.count, args.seed));
    let out_meta = DatasetMeta {
        provenance,
        inverted_features: Some(cols.clone()),
        ..meta
    };
    write_dataset_dir(&args.out, &inverted, &out_meta)?;
    println!(
        "inverted features: {}",
        cols.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
    );
    Ok(())
}

fn fit(args: FitArgs) -> Result<()> {
    require_exists(&args.train, "training dataset directory")?;
    let (train, _) = read_dataset_dir(&args.train)?;
    let scheme = match args.scheme {
        SchemeArg::Asis => Scheme::Asis,
        SchemeArg::Rand => Scheme::Rand,
        SchemeArg::Sdic => Scheme::Sdic,
        SchemeArg::SdicC => Scheme::SdicC,
    };
    let fill = args.fill.map(|f| match f {
        FillArg::Linear => FillVariant::Linear,
        FillArg::Circular => FillVariant::Circular,
        FillArg::Raster => FillVariant::Raster,
    });
    let model = fit_transformer(&train, scheme, fill, Some(args.seed))?;
    fs::write(&args.out, model.to_bytes()).with_context(|| format!("writing {}", args.out.display()))?;
    println!(
        "scheme={} fill={} P={} N={}",
        model.scheme(),
        model.fill_variant(),
        model.side(),
        model.n_features()
    );
    Ok(())
}

fn transform(args: TransformArgs) -> Result<()> {
    require_exists(&args.model, "model file")?;
    require_exists(&args.data, "dataset directory")?;
    let bytes = fs::read(&args.model).with_context(|| format!("reading {}", args.model.display()))?;
    let model = Transformer::from_bytes(&bytes).with_context(|| format!("parsing {}", args.model.display()))?;
    let (data, _) = read_dataset_dir(&args.data)?;
    let images = apply_transformer(&model, &data)?;
    let precision = match args.precision {
        PrecisionArg::F64 => Precision::F64,
        PrecisionArg::F32 => Precision::F32,
    };
    write_array(&images, &args.out, precision)?;
    println!(
        "shape=({}, {}, {}) model={}",
        images.count(),
        images.side(),
        images.side(),
        images.provenance().unwrap_or("-")
    );
    Ok(())
}

/// Parses `A..B` (inclusive), `A..=B`, or `A,B,C`.
fn parse_samples(spec: &str) -> Result<Vec<usize>> {
    let spec = spec.trim();
    let bad = || UsageError(format!("cannot parse sample selection '{spec}'"));
    if let Some((a, b)) = spec.split_once("..") {
        let b = b.strip_prefix('=').unwrap_or(b);
        let a: usize = a.trim().parse().map_err(|_| bad())?;
        let b: usize = b.trim().parse().map_err(|_| bad())?;
        if b < a {
            bail!(bad());
        }
        return Ok((a..=b).collect());
    }
    spec.split(',')
        .map(|s| s.trim().parse().map_err(|_| bad().into()))
        .collect()
}

fn preview(args: PreviewArgs) -> Result<()> {
    require_exists(&args.images, "imageset file")?;
    let samples = parse_samples(&args.samples)?;
    let images = read_array(&args.images)?;
    render_preview(&images, &samples, args.cols, &args.out)?;
    println!("wrote {} tiles to {}", samples.len(), args.out.display());
    Ok(())
}
