//! Reference Standard MIDI File parser used to verify serializer output.
//! Written directly against the SMF spec and kept independent of the
//! library's encoding path.

#![allow(dead_code)]

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParsedNote {
    pub tick: u32,
    pub pitch: u8,
    pub velocity: u8,
    pub duration: u32,
    pub channel: u8,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedMidi {
    pub format: u16,
    pub ticks_per_quarter: u16,
    /// (tick, microseconds per quarter note)
    pub tempos: Vec<(u32, u32)>,
    pub notes: Vec<ParsedNote>,
    pub program_changes: Vec<(u32, u8, u8)>,
    pub end_tick: u32,
}

pub fn decode_vlq(bytes: &[u8]) -> Option<(u32, usize)> {
    let mut value: u32 = 0;
    for (i, &b) in bytes.iter().enumerate() {
        if i >= 4 {
            return None;
        }
        value = (value << 7) | (b & 0x7f) as u32;
        if b & 0x80 == 0 {
            return Some((value, i + 1));
        }
    }
    None
}

pub fn parse_smf(data: &[u8]) -> Result<ParsedMidi, String> {
    if data.len() < 14 || &data[0..4] != b"MThd" {
        return Err("missing MThd".into());
    }
    let header_len = u32::from_be_bytes(data[4..8].try_into().unwrap());
    if header_len != 6 {
        return Err(format!("unexpected header length {header_len}"));
    }
    let format = u16::from_be_bytes(data[8..10].try_into().unwrap());
    let n_tracks = u16::from_be_bytes(data[10..12].try_into().unwrap());
    let division = u16::from_be_bytes(data[12..14].try_into().unwrap());
    if division & 0x8000 != 0 {
        return Err("SMPTE division not supported".into());
    }
    if n_tracks != 1 {
        return Err(format!("expected one track, got {n_tracks}"));
    }

    let mut pos = 14;
    if data.len() < pos + 8 || &data[pos..pos + 4] != b"MTrk" {
        return Err("missing MTrk".into());
    }
    let track_len = u32::from_be_bytes(data[pos + 4..pos + 8].try_into().unwrap()) as usize;
    pos += 8;
    if data.len() < pos + track_len {
        return Err("track shorter than declared".into());
    }
    let track = &data[pos..pos + track_len];

    let mut tick: u32 = 0;
    let mut i = 0;
    let mut running_status: Option<u8> = None;
    let mut tempos = Vec::new();
    let mut program_changes = Vec::new();
    let mut notes = Vec::new();
    // open note-ons per (channel, pitch), FIFO
    let mut open: Vec<(u8, u8, u32, u8)> = Vec::new();
    let mut end_tick = 0;
    let mut saw_eot = false;

    while i < track.len() {
        if saw_eot {
            return Err("events after end of track".into());
        }
        let (delta, used) = decode_vlq(&track[i..]).ok_or("bad delta time")?;
        i += used;
        tick += delta;

        let mut status = track[i];
        if status & 0x80 == 0 {
            status = running_status.ok_or("data byte without running status")?;
        } else {
            i += 1;
        }

        match status {
            0xff => {
                let meta_type = *track.get(i).ok_or("truncated meta event")?;
                i += 1;
                let (len, used) = decode_vlq(&track[i..]).ok_or("bad meta length")?;
                i += used;
                let payload = track
                    .get(i..i + len as usize)
                    .ok_or("truncated meta payload")?;
                i += len as usize;
                match meta_type {
                    0x51 => {
                        if payload.len() != 3 {
                            return Err("tempo payload must be 3 bytes".into());
                        }
                        let uspq = ((payload[0] as u32) << 16)
                            | ((payload[1] as u32) << 8)
                            | payload[2] as u32;
                        tempos.push((tick, uspq));
                    }
                    0x2f => {
                        saw_eot = true;
                        end_tick = tick;
                    }
                    _ => {}
                }
                running_status = None;
            }
            0xf0 | 0xf7 => {
                let (len, used) = decode_vlq(&track[i..]).ok_or("bad sysex length")?;
                i += used + len as usize;
                running_status = None;
            }
            _ => {
                let channel = status & 0x0f;
                match status & 0xf0 {
                    0x90 => {
                        let pitch = track[i];
                        let velocity = track[i + 1];
                        i += 2;
                        if velocity == 0 {
                            close_note(&mut open, &mut notes, channel, pitch, tick)?;
                        } else {
                            open.push((channel, pitch, tick, velocity));
                        }
                    }
                    0x80 => {
                        let pitch = track[i];
                        i += 2;
                        close_note(&mut open, &mut notes, channel, pitch, tick)?;
                    }
                    0xc0 => {
                        program_changes.push((tick, channel, track[i]));
                        i += 1;
                    }
                    0xa0 | 0xb0 | 0xe0 => {
                        i += 2;
                    }
                    0xd0 => {
                        i += 1;
                    }
                    _ => return Err(format!("unexpected status byte {status:#04x}")),
                }
                running_status = Some(status);
            }
        }
    }
    if !saw_eot {
        return Err("missing end of track".into());
    }
    if !open.is_empty() {
        return Err(format!("{} unterminated notes", open.len()));
    }
    notes.sort_by_key(|n: &ParsedNote| (n.tick, n.pitch, n.channel));
    Ok(ParsedMidi {
        format,
        ticks_per_quarter: division,
        tempos,
        notes,
        program_changes,
        end_tick,
    })
}

fn close_note(
    open: &mut Vec<(u8, u8, u32, u8)>,
    notes: &mut Vec<ParsedNote>,
    channel: u8,
    pitch: u8,
    tick: u32,
) -> Result<(), String> {
    let idx = open
        .iter()
        .position(|&(c, p, _, _)| c == channel && p == pitch)
        .ok_or_else(|| format!("note off without matching on: ch {channel} pitch {pitch}"))?;
    let (_, _, start, velocity) = open.remove(idx);
    notes.push(ParsedNote {
        tick: start,
        pitch,
        velocity,
        duration: tick - start,
        channel,
    });
    Ok(())
}

/// bpm as reconstructed from a tempo event's microseconds-per-quarter.
pub fn bpm_of(uspq: u32) -> f64 {
    60_000_000.0 / uspq as f64
}

use colortune::ingest::{PixelGrid, RgbPixel};

pub fn solid(w: u32, h: u32, p: RgbPixel) -> PixelGrid {
    PixelGrid::new(w, h, vec![p; (w * h) as usize])
}

pub fn encode_png(grid: &PixelGrid) -> Vec<u8> {
    let mut img = image::RgbImage::new(grid.width(), grid.height());
    for y in 0..grid.height() {
        for x in 0..grid.width() {
            let p = grid.get(x, y);
            img.put_pixel(x, y, image::Rgb([p.r, p.g, p.b]));
        }
    }
    let mut out = std::io::Cursor::new(Vec::new());
    img.write_to(&mut out, image::ImageFormat::Png).unwrap();
    out.into_inner()
}
