use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use confluent_core::{
    confluent_layout, emit_dot, emit_svg, parse_input, ColoringAlgorithm, Error, LayoutOptions, Placement,
};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Svg,
    Dot,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PlacementArg {
    Barycenter,
    Crossings,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ColoringArg {
    Rlf,
    Dsatur,
    Greedy,
}

/// Draw a layered graph with confluent biclique tracks.
#[derive(Debug, Parser)]
#[command(name = "confluent", version)]
struct Cli {
    /// Input file (line format or JSON); stdin when omitted.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Output file; stdout when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "svg")]
    format: Format,
    /// Cover depth (1 or 2).
    #[arg(long, default_value_t = 1)]
    depth: usize,
    #[arg(long, value_enum, default_value = "barycenter")]
    placement: PlacementArg,
    #[arg(long, value_enum, default_value = "rlf")]
    coloring: ColoringArg,
    /// Favor bicliques with two or more nodes on both sides (greedy/dsatur).
    #[arg(long)]
    priority_pq: bool,
    /// Draw single-edge bicliques as one curve.
    #[arg(long)]
    smooth_single_edges: bool,
    /// Minimum separation between tree centers.
    #[arg(long)]
    delta: Option<f64>,
    /// Curve-shape parameter.
    #[arg(long)]
    delta_y: Option<f64>,
    /// Print per-pair statistics to stderr.
    #[arg(long)]
    stats: bool,
}

fn run(cli: &Cli) -> Result<(), Error> {
    let text = match &cli.input {
        Some(path) => fs::read_to_string(path).map_err(|e| Error::Parse {
            line: 0,
            column: 0,
            message: format!("cannot read {}: {e}", path.display()),
        })?,
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).map_err(|e| Error::Parse {
                line: 0,
                column: 0,
                message: format!("cannot read stdin: {e}"),
            })?;
            s
        }
    };
    let (graph, mut config) = parse_input(&text)?;
    if let Some(d) = cli.delta {
        config.min_separation = d;
    }
    if let Some(dy) = cli.delta_y {
        config.delta_y = Some(dy);
    }
    let opts = LayoutOptions {
        depth: cli.depth,
        placement: match cli.placement {
            PlacementArg::Barycenter => Placement::Barycenter,
            PlacementArg::Crossings => Placement::CrossingReduction,
        },
        smoothing: cli.smooth_single_edges,
        algorithm: match cli.coloring {
            ColoringArg::Rlf => ColoringAlgorithm::Rlf,
            ColoringArg::Dsatur => ColoringAlgorithm::Dsatur,
            ColoringArg::Greedy => ColoringAlgorithm::Greedy,
        },
        priority_pq: cli.priority_pq,
        config,
        ..LayoutOptions::default()
    };
    let drawing = confluent_layout(&graph, &opts)?;
    if let Err(msg) = drawing.check_paths() {
        panic!("drawing failed its path check: {msg}");
    }

    if cli.stats {
        let crossings = drawing.curve_crossings_per_pair();
        let mut err = io::stderr().lock();
        for (report, c) in drawing.slices.iter().zip(&crossings) {
            let sizes: Vec<String> = report
                .laid_out_cover_sizes
                .iter()
                .map(|s| s.to_string())
                .collect();
            let _ = writeln!(
                err,
                "pair {}: cover size {}, crossings {}, range violations {}",
                report.pair_index,
                sizes.join("+"),
                c,
                report.range_violations
            );
        }
        let _ = writeln!(
            err,
            "total: covers computed {}, covers laid out {}, crossings {}, non-monotone segments {}",
            drawing.covers_computed,
            drawing.covers_laid_out,
            crossings.iter().sum::<usize>(),
            drawing.non_monotone_segments()
        );
    }

    let out = match cli.format {
        Format::Svg => emit_svg(&drawing),
        Format::Dot => emit_dot(&drawing),
    };
    match &cli.output {
        Some(path) => fs::write(path, out).map_err(|e| Error::Parse {
            line: 0,
            column: 0,
            message: format!("cannot write {}: {e}", path.display()),
        }),
        None => {
            let _ = io::stdout().write_all(out.as_bytes());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match std::panic::catch_unwind(|| run(&cli)) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_internal() { 2 } else { 1 })
        }
        Err(_) => ExitCode::from(2),
    }
}
