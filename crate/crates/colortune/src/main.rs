use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use colortune::color::FilterThresholds;
use colortune::harmony::TriadConvention;
use colortune::ingest::decode_image;
use colortune::midi::serialize_score;
use colortune::pipeline::{run, Options};
use colortune::report::emit_report;
use colortune::scriabin::MappingTable;
use colortune::sequencer::VelocitySource;

const EXIT_INPUT: u8 = 1;
const EXIT_CONFIG: u8 = 2;
const EXIT_OUTPUT: u8 = 3;

/// Convert a painting or photo into a MIDI melody via a color-to-note
/// synaesthesia mapping.
#[derive(Parser, Debug)]
#[command(name = "colortune", version)]
struct Cli {
    /// Input image (PNG or JPEG)
    input: PathBuf,

    /// Output Standard MIDI File
    output: PathBuf,

    /// Longest side of the downsized working image
    #[arg(long, default_value_t = 256)]
    max_dim: u32,

    /// Number of left-to-right vertical segments
    #[arg(long, default_value_t = 8)]
    segments: u32,

    /// Minimum pixel share (exclusive) for a hue sector to sound
    #[arg(long, default_value_t = 0.05)]
    threshold: f64,

    /// Pixels darker than this luminosity are ignored
    #[arg(long, default_value_t = 0.08)]
    dark_cutoff: f64,

    /// Pixels brighter than this luminosity are ignored
    #[arg(long, default_value_t = 0.92)]
    bright_cutoff: f64,

    /// Pixels less saturated than this are ignored
    #[arg(long, default_value_t = 0.05)]
    gray_cutoff: f64,

    /// Which sector statistic drives note velocity
    #[arg(long, value_enum, default_value_t = VelocityArg::Saturation)]
    velocity_source: VelocityArg,

    /// Triad spacing on the 12-sector circle
    #[arg(long, value_enum, default_value_t = TriadArg::Paper60)]
    triad: TriadArg,

    /// Custom sector-to-pitch-class table (12 lines: "sector note")
    #[arg(long)]
    mapping_table: Option<PathBuf>,

    /// Also write the structured analysis report here
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum VelocityArg {
    Saturation,
    Luminosity,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TriadArg {
    /// consecutive 60-degree gaps (sectors a, a+2, a+4)
    Paper60,
    /// conventional 120-degree spacing (sectors a, a+4, a+8)
    Standard120,
}

fn fail(code: u8, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("colortune: {msg}");
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();

    let table = match &cli.mapping_table {
        None => MappingTable::default(),
        Some(path) => {
            let text = match fs::read_to_string(path) {
                Ok(t) => t,
                Err(e) => return fail(EXIT_CONFIG, format!("cannot read mapping table {}: {e}", path.display())),
            };
            match MappingTable::parse(&text) {
                Ok(t) => t,
                Err(e) => return fail(EXIT_CONFIG, e),
            }
        }
    };

    let opts = Options {
        max_dim: cli.max_dim,
        n_segments: cli.segments,
        threshold: cli.threshold,
        filter: FilterThresholds {
            dark_cutoff: cli.dark_cutoff,
            bright_cutoff: cli.bright_cutoff,
            gray_cutoff: cli.gray_cutoff,
        },
        velocity_source: match cli.velocity_source {
            VelocityArg::Saturation => VelocitySource::Saturation,
            VelocityArg::Luminosity => VelocitySource::Luminosity,
        },
        triad: match cli.triad {
            TriadArg::Paper60 => TriadConvention::SixtyDegrees,
            TriadArg::Standard120 => TriadConvention::HundredTwentyDegrees,
        },
        table,
    };
    if let Err(e) = opts.validate() {
        return fail(EXIT_CONFIG, e);
    }

    let bytes = match fs::read(&cli.input) {
        Ok(b) => b,
        Err(e) => return fail(EXIT_INPUT, format!("cannot read {}: {e}", cli.input.display())),
    };
    let grid = match decode_image(&bytes) {
        Ok(g) => g,
        Err(e) => return fail(EXIT_INPUT, e),
    };

    let (analysis, score) = match run(&grid, &opts) {
        Ok(r) => r,
        Err(e) => {
            use colortune::pipeline::PipelineError;
            let code = match &e {
                PipelineError::Ingest(_) | PipelineError::InvalidConfig(_) => EXIT_CONFIG,
                PipelineError::Sequence(_) => EXIT_INPUT,
            };
            return fail(code, e);
        }
    };

    let midi = match serialize_score(&score) {
        Ok(m) => m,
        Err(e) => return fail(EXIT_OUTPUT, e),
    };
    if let Err(e) = fs::write(&cli.output, &midi) {
        return fail(EXIT_OUTPUT, format!("cannot write {}: {e}", cli.output.display()));
    }
    if let Some(path) = &cli.report {
        if let Err(e) = fs::write(path, emit_report(&analysis)) {
            return fail(EXIT_OUTPUT, format!("cannot write {}: {e}", path.display()));
        }
    }
    ExitCode::SUCCESS
}
