//! Composition: per-segment tempo, velocities and note values, and the
//! concatenation of segments into a timed score.

use crate::color::{HueHistogram, SectorIndex};
use crate::harmony::Harmony;
use crate::scriabin::{
    apply_quality, chord_from_harmony, sector_to_pitch_class, Chord, MappingTable, PitchClass,
};
use thiserror::Error;

pub const TICKS_PER_QUARTER: u32 = 480;

/// Melody notes sound in the middle-C octave; the chord is voiced below it.
pub const MELODY_OCTAVE: i8 = 4;
pub const CHORD_OCTAVE: i8 = 3;

/// Which per-sector statistic drives note velocity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum VelocitySource {
    #[default]
    Saturation,
    Luminosity,
}

/// A note duration category, in quarter-note units.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NoteValue {
    Half,
    Quarter,
    Eighth,
    Sixteenth,
}

impl NoteValue {
    pub const fn ticks(self) -> u32 {
        match self {
            NoteValue::Half => 2 * TICKS_PER_QUARTER,
            NoteValue::Quarter => TICKS_PER_QUARTER,
            NoteValue::Eighth => TICKS_PER_QUARTER / 2,
            NoteValue::Sixteenth => TICKS_PER_QUARTER / 4,
        }
    }
}

/// A pitched note with timing in ticks. `start` is relative to the start
/// of the segment that produced the note.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NoteEvent {
    pub pitch_class: PitchClass,
    pub octave: i8,
    pub velocity: u8,
    pub start: u32,
    pub duration: u32,
}

/// Everything derived for one vertical segment.
#[derive(Debug, Clone)]
pub struct SegmentAnalysis {
    pub index: usize,
    pub histogram: HueHistogram,
    pub qualifying: Vec<(SectorIndex, f64)>,
    pub harmonies: Vec<Harmony>,
    pub tempo_bpm: u16,
    pub chord: Option<Chord>,
    /// Sequential monophonic line, one note per qualifying sector.
    pub melody: Vec<NoteEvent>,
    /// Chord voicing sounding under the melody for the whole segment.
    pub chord_notes: Vec<NoteEvent>,
    /// Total segment length; a silent segment spans one half note.
    pub span_ticks: u32,
}

/// A timed event in the final score.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScoreEvent {
    Tempo { start: u32, bpm: u16 },
    Note(NoteEvent),
}

impl ScoreEvent {
    pub fn start(&self) -> u32 {
        match self {
            ScoreEvent::Tempo { start, .. } => *start,
            ScoreEvent::Note(n) => n.start,
        }
    }
}

/// The abstract input to the MIDI serializer: time-ordered tempo changes
/// and notes. Note starts here are absolute ticks.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Score {
    pub events: Vec<ScoreEvent>,
    pub ticks_per_quarter: u32,
}

#[derive(Debug, Error)]
pub enum SequenceError {
    #[error("sector {0} has no pixels, no velocity can be derived")]
    EmptyBin(usize),
}

/// Linear tempo between the 75 bpm (desaturated) and 160 bpm (fully
/// saturated) anchors.
pub fn tempo_for_segment(mean_sat: f64) -> u16 {
    debug_assert!((0.0..=1.0).contains(&mean_sat));
    let bpm = round_half_up(75.0 + 85.0 * mean_sat);
    bpm.clamp(75, 160) as u16
}

fn round_half_up(x: f64) -> i64 {
    (x + 0.5).floor() as i64
}

/// Velocity from a sector's mean saturation or luminosity, mapped onto
/// [32, 127] so every included note stays audible.
pub fn velocity_for_sector(
    h: &HueHistogram,
    s: SectorIndex,
    source: VelocitySource,
) -> Result<u8, SequenceError> {
    let count = h.bin_count[s.index()];
    if count == 0 {
        return Err(SequenceError::EmptyBin(s.index()));
    }
    let sum = match source {
        VelocitySource::Saturation => h.bin_sat_sum[s.index()],
        VelocitySource::Luminosity => h.bin_lum_sum[s.index()],
    };
    let mean = sum / count as f64;
    Ok(round_half_up(32.0 + 95.0 * mean).clamp(1, 127) as u8)
}

/// The richer the segment's palette, the shorter its notes.
pub fn duration_for_segment(k: usize) -> NoteValue {
    match k {
        0..=2 => NoteValue::Half,
        3..=4 => NoteValue::Quarter,
        5..=6 => NoteValue::Eighth,
        _ => NoteValue::Sixteenth,
    }
}

/// Inputs to [`compose_segment`]: the analysis stages that run before any
/// musical decision.
pub struct SegmentInput {
    pub index: usize,
    pub histogram: HueHistogram,
    pub qualifying: Vec<(SectorIndex, f64)>,
    pub harmonies: Vec<Harmony>,
}

/// Turns one analyzed segment into its melody, chord and tempo.
pub fn compose_segment(
    input: SegmentInput,
    table: &MappingTable,
    image_mean_lum: f64,
    velocity_source: VelocitySource,
) -> Result<SegmentAnalysis, SequenceError> {
    let SegmentInput {
        index,
        histogram,
        qualifying,
        harmonies,
    } = input;
    let tempo_bpm = tempo_for_segment(histogram.segment_mean_saturation);
    let note_value = duration_for_segment(qualifying.len());
    let ranked: Vec<SectorIndex> = qualifying.iter().map(|(s, _)| *s).collect();

    let mut melody = Vec::with_capacity(ranked.len());
    let mut cursor = 0u32;
    for &s in &ranked {
        melody.push(NoteEvent {
            pitch_class: sector_to_pitch_class(s, table),
            octave: MELODY_OCTAVE,
            velocity: velocity_for_sector(&histogram, s, velocity_source)?,
            start: cursor,
            duration: note_value.ticks(),
        });
        cursor += note_value.ticks();
    }
    // an empty segment still takes up time: one half-note rest
    let span_ticks = if melody.is_empty() {
        NoteValue::Half.ticks()
    } else {
        cursor
    };

    let mut chord = None;
    let mut chord_notes = Vec::new();
    if let Some(first) = harmonies.first() {
        let c = apply_quality(
            chord_from_harmony(first, &ranked, table),
            histogram.segment_mean_luminosity,
            image_mean_lum,
        );
        let root_sector = ranked
            .iter()
            .copied()
            .find(|s| first.members.contains(s))
            .expect("harmony members come from ranked sectors");
        let velocity = velocity_for_sector(&histogram, root_sector, velocity_source)?;
        chord_notes = voice_chord(&c, velocity, span_ticks);
        chord = Some(c);
    }

    Ok(SegmentAnalysis {
        index,
        histogram,
        qualifying,
        harmonies,
        tempo_bpm,
        chord,
        melody,
        chord_notes,
        span_ticks,
    })
}

// Ascending voicing from the root in the chord octave; later members are
// lifted by octaves until they sit above the previous note.
fn voice_chord(c: &Chord, velocity: u8, span_ticks: u32) -> Vec<NoteEvent> {
    let mut notes = Vec::with_capacity(c.members.len());
    let mut prev: Option<i32> = None;
    for &pc in &c.members {
        let mut midi = 12 * (CHORD_OCTAVE as i32 + 1) + pc.semitone() as i32;
        if let Some(p) = prev {
            while midi <= p {
                midi += 12;
            }
        }
        prev = Some(midi);
        notes.push(NoteEvent {
            pitch_class: pc,
            octave: (midi / 12 - 1) as i8,
            velocity,
            start: 0,
            duration: span_ticks,
        });
    }
    notes
}

/// Concatenates segments left to right into one score. Each segment opens
/// with its tempo event; chord notes overlap the segment's melody.
pub fn compose_sequence(segments: &[SegmentAnalysis]) -> Score {
    let mut events = Vec::new();
    let mut offset = 0u32;
    for seg in segments {
        events.push(ScoreEvent::Tempo {
            start: offset,
            bpm: seg.tempo_bpm,
        });
        for n in seg.chord_notes.iter().chain(seg.melody.iter()) {
            let mut n = *n;
            n.start += offset;
            events.push(ScoreEvent::Note(n));
        }
        offset += seg.span_ticks;
    }
    events.sort_by_key(|e| e.start());
    Score {
        events,
        ticks_per_quarter: TICKS_PER_QUARTER,
    }
}
