//! End-to-end orchestration: decoded image in, per-segment analyses and a
//! score out.

use crate::color::{
    build_histogram, qualifying_sectors, rgb_to_cone, ColorError, FilterThresholds,
};
use crate::harmony::{detect_harmonies, TriadConvention};
use crate::ingest::{downsize, split_segments, IngestError, PixelGrid};
use crate::scriabin::MappingTable;
use crate::sequencer::{
    compose_segment, compose_sequence, Score, SegmentAnalysis, SegmentInput, SequenceError,
    VelocitySource,
};
use thiserror::Error;

/// Tunable pipeline parameters. Defaults follow the library's calibrated
/// constants; every field is exposed as a CLI flag.
#[derive(Debug, Clone)]
pub struct Options {
    pub max_dim: u32,
    pub n_segments: u32,
    pub threshold: f64,
    pub filter: FilterThresholds,
    pub velocity_source: VelocitySource,
    pub triad: TriadConvention,
    pub table: MappingTable,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            max_dim: 256,
            n_segments: 8,
            threshold: 0.05,
            filter: FilterThresholds::default(),
            velocity_source: VelocitySource::default(),
            triad: TriadConvention::default(),
            table: MappingTable::default(),
        }
    }
}

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Ingest(#[from] IngestError),
    #[error(transparent)]
    Sequence(#[from] SequenceError),
}

impl Options {
    pub fn validate(&self) -> Result<(), PipelineError> {
        if self.max_dim < 1 {
            return Err(PipelineError::InvalidConfig("max-dim must be at least 1".into()));
        }
        if self.n_segments < 1 {
            return Err(PipelineError::InvalidConfig("segments must be at least 1".into()));
        }
        if !(0.0..1.0).contains(&self.threshold) {
            return Err(PipelineError::InvalidConfig(
                "threshold must be in [0, 1)".into(),
            ));
        }
        self.filter
            .validate()
            .map_err(|e| PipelineError::InvalidConfig(e.to_string()))?;
        Ok(())
    }
}

/// Everything derived from one image.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub original_width: u32,
    pub original_height: u32,
    pub width: u32,
    pub height: u32,
    pub image_mean_luminosity: f64,
    pub segments: Vec<SegmentAnalysis>,
}

/// Runs the full analysis: downsize, segment, histogram, qualification,
/// harmony detection and per-segment composition.
pub fn analyze(grid: &PixelGrid, opts: &Options) -> Result<Analysis, PipelineError> {
    opts.validate()?;
    let small = downsize(grid, opts.max_dim);
    let image_mean_luminosity = small
        .pixels()
        .iter()
        .map(|&p| rgb_to_cone(p).luminosity)
        .sum::<f64>()
        / small.pixels().len() as f64;

    let strips = split_segments(&small, opts.n_segments)?;
    let mut segments = Vec::with_capacity(strips.len());
    for (index, strip) in strips.iter().enumerate() {
        let histogram = build_histogram(strip, &opts.filter);
        let qualifying = match qualifying_sectors(&histogram, opts.threshold) {
            Ok(q) => q,
            // a fully filtered segment plays as silence
            Err(ColorError::EmptySegment) => Vec::new(),
            Err(e) => {
                return Err(PipelineError::InvalidConfig(e.to_string()));
            }
        };
        let ranked: Vec<_> = qualifying.iter().map(|(s, _)| *s).collect();
        let harmonies = detect_harmonies(&ranked, opts.triad);
        segments.push(compose_segment(
            SegmentInput {
                index,
                histogram,
                qualifying,
                harmonies,
            },
            &opts.table,
            image_mean_luminosity,
            opts.velocity_source,
        )?);
    }
    Ok(Analysis {
        original_width: grid.width(),
        original_height: grid.height(),
        width: small.width(),
        height: small.height(),
        image_mean_luminosity,
        segments,
    })
}

/// Convenience wrapper: analysis plus the concatenated score.
pub fn run(grid: &PixelGrid, opts: &Options) -> Result<(Analysis, Score), PipelineError> {
    let analysis = analyze(grid, opts)?;
    let score = compose_sequence(&analysis.segments);
    Ok((analysis, score))
}
