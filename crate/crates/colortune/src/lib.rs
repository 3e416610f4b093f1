//! colortune turns a raster image into a MIDI melody by simulating
//! color-to-note synaesthesia: hues are quantized onto a 12-sector color
//! circle and mapped to pitch classes via Scriabin's index, color
//! harmonies become chords, and saturation/luminosity drive tempo, volume
//! and note length.
//!
//! The pipeline runs left to right over vertical image segments:
//! decode, downsize, segment ([`ingest`]), histogram and sector
//! qualification ([`color`]), harmony detection ([`harmony`]), note and
//! chord mapping ([`scriabin`]), timing ([`sequencer`]) and Standard MIDI
//! File output ([`midi`]).

pub mod color;
pub mod harmony;
pub mod ingest;
pub mod midi;
pub mod pipeline;
pub mod report;
pub mod scriabin;
pub mod sequencer;
