//! Standard MIDI File (format 0) serialization of a [`Score`].

use crate::sequencer::{NoteEvent, Score, ScoreEvent};
use thiserror::Error;

const CHANNEL: u8 = 0;
const PROGRAM: u8 = 0; // acoustic grand

#[derive(Debug, Error)]
pub enum MidiError {
    #[error("delta time {0} exceeds the 28-bit VLQ range")]
    ValueTooLarge(u64),
    #[error("note {pitch_class} octave {octave} maps to MIDI pitch {byte}, outside 0..=127")]
    NoteOutOfRange {
        pitch_class: &'static str,
        octave: i8,
        byte: i32,
    },
}

/// Encodes a value as a variable-length quantity: 7 bits per byte, most
/// significant first, continuation bit on all but the last byte.
pub fn encode_vlq(value: u32) -> Result<Vec<u8>, MidiError> {
    if value >= 1 << 28 {
        return Err(MidiError::ValueTooLarge(value as u64));
    }
    let mut out = Vec::with_capacity(4);
    for shift in [21u32, 14, 7] {
        if value >> shift != 0 || !out.is_empty() {
            out.push(((value >> shift) & 0x7f) as u8 | 0x80);
        }
    }
    out.push((value & 0x7f) as u8);
    Ok(out)
}

/// Tempo meta event payload: FF 51 03 plus microseconds-per-quarter as a
/// big-endian 24-bit integer.
pub fn tempo_meta_bytes(bpm: u16) -> Vec<u8> {
    debug_assert!(bpm > 0);
    let uspq = (60_000_000.0 / bpm as f64 + 0.5).floor() as u32;
    let mut out = vec![0xff, 0x51, 0x03];
    out.extend_from_slice(&uspq.to_be_bytes()[1..]);
    out
}

pub fn midi_pitch(n: &NoteEvent) -> Result<u8, MidiError> {
    let byte = 12 * (n.octave as i32 + 1) + n.pitch_class.semitone() as i32;
    u8::try_from(byte)
        .ok()
        .filter(|&b| b <= 127)
        .ok_or(MidiError::NoteOutOfRange {
            pitch_class: n.pitch_class.name(),
            octave: n.octave,
            byte,
        })
}

// Event ordering at a shared tick: tempo, program change, note-offs (by
// pitch), note-ons (by pitch). Keeps output byte-identical across runs.
#[derive(PartialEq, Eq, PartialOrd, Ord)]
struct TrackEvent {
    tick: u32,
    order: u8,
    pitch: u8,
    bytes: Vec<u8>,
}

/// Serializes a score into a format 0 Standard MIDI File. Note-offs are
/// always emitted explicitly with velocity 0.
pub fn serialize_score(score: &Score) -> Result<Vec<u8>, MidiError> {
    let mut events = vec![TrackEvent {
        tick: 0,
        order: 1,
        pitch: 0,
        bytes: vec![0xc0 | CHANNEL, PROGRAM],
    }];
    for ev in &score.events {
        match ev {
            ScoreEvent::Tempo { start, bpm } => events.push(TrackEvent {
                tick: *start,
                order: 0,
                pitch: 0,
                bytes: tempo_meta_bytes(*bpm),
            }),
            ScoreEvent::Note(n) => {
                let pitch = midi_pitch(n)?;
                let velocity = n.velocity.clamp(1, 127);
                events.push(TrackEvent {
                    tick: n.start,
                    order: 3,
                    pitch,
                    bytes: vec![0x90 | CHANNEL, pitch, velocity],
                });
                events.push(TrackEvent {
                    tick: n.start + n.duration,
                    order: 2,
                    pitch,
                    bytes: vec![0x80 | CHANNEL, pitch, 0],
                });
            }
        }
    }
    events.sort();

    let mut track = Vec::new();
    let mut last_tick = 0u32;
    for ev in &events {
        track.extend(encode_vlq(ev.tick - last_tick)?);
        track.extend_from_slice(&ev.bytes);
        last_tick = ev.tick;
    }
    track.extend(encode_vlq(0)?);
    track.extend_from_slice(&[0xff, 0x2f, 0x00]); // end of track

    let mut out = Vec::with_capacity(track.len() + 22);
    out.extend_from_slice(b"MThd");
    out.extend_from_slice(&6u32.to_be_bytes());
    out.extend_from_slice(&0u16.to_be_bytes()); // format 0
    out.extend_from_slice(&1u16.to_be_bytes()); // one track
    out.extend_from_slice(&(score.ticks_per_quarter as u16).to_be_bytes());
    out.extend_from_slice(b"MTrk");
    out.extend_from_slice(&(track.len() as u32).to_be_bytes());
    out.extend(track);
    Ok(out)
}
