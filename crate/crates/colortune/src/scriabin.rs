//! Scriabin's color-to-note index: hue sectors to pitch classes, chords
//! from harmonies, major/minor quality from luminosity.

use crate::color::{SectorIndex, SECTOR_COUNT};
use crate::harmony::Harmony;
use thiserror::Error;

/// A note name modulo octave, 0 = C.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PitchClass(u8);

const PITCH_NAMES: [&str; 12] = [
    "C", "C#", "D", "D#", "E", "F", "F#", "G", "G#", "A", "A#", "B",
];

impl PitchClass {
    pub fn new(semitone: u8) -> Option<Self> {
        (semitone < 12).then_some(PitchClass(semitone))
    }

    pub const fn semitone(self) -> u8 {
        self.0
    }

    pub fn name(self) -> &'static str {
        PITCH_NAMES[self.0 as usize]
    }

    pub fn transpose(self, semitones: u8) -> PitchClass {
        PitchClass((self.0 + semitones) % 12)
    }

    /// Parses a note name such as `C`, `F#`, `Bb` or `E♭`.
    pub fn parse(name: &str) -> Option<Self> {
        let mut chars = name.chars();
        let letter = chars.next()?.to_ascii_uppercase();
        let base = match letter {
            'C' => 0i8,
            'D' => 2,
            'E' => 4,
            'F' => 5,
            'G' => 7,
            'A' => 9,
            'B' => 11,
            _ => return None,
        };
        let accidental = match chars.next() {
            None => 0,
            Some('#') | Some('♯') => 1,
            Some('b') | Some('♭') => -1,
            Some(_) => return None,
        };
        if chars.next().is_some() {
            return None;
        }
        Some(PitchClass((base + accidental).rem_euclid(12) as u8))
    }
}

/// The sector-to-pitch-class index, one entry per hue sector. Always a
/// bijection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MappingTable {
    entries: [PitchClass; SECTOR_COUNT],
}

#[derive(Debug, Error)]
pub enum MappingError {
    #[error("mapping table line {0}: {1}")]
    BadLine(usize, String),
    #[error("mapping table must assign every sector exactly once")]
    MissingSectors,
    #[error("mapping table must be a bijection; pitch class {0} appears twice")]
    DuplicatePitch(&'static str),
}

impl MappingTable {
    pub fn new(entries: [PitchClass; SECTOR_COUNT]) -> Result<Self, MappingError> {
        let mut seen = [false; 12];
        for e in &entries {
            if seen[e.semitone() as usize] {
                return Err(MappingError::DuplicatePitch(e.name()));
            }
            seen[e.semitone() as usize] = true;
        }
        Ok(MappingTable { entries })
    }

    pub fn lookup(&self, s: SectorIndex) -> PitchClass {
        self.entries[s.index()]
    }

    /// Parses the 12-line `sector_index pitch_class_name` text format.
    /// Blank lines and `#`-prefixed comment lines are ignored.
    pub fn parse(text: &str) -> Result<Self, MappingError> {
        let mut entries = [None; SECTOR_COUNT];
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.split_whitespace();
            let sector = parts
                .next()
                .and_then(|t| t.parse::<u8>().ok())
                .and_then(SectorIndex::new)
                .ok_or_else(|| {
                    MappingError::BadLine(lineno + 1, format!("bad sector index in {line:?}"))
                })?;
            let pitch = parts
                .next()
                .and_then(PitchClass::parse)
                .ok_or_else(|| {
                    MappingError::BadLine(lineno + 1, format!("bad pitch class in {line:?}"))
                })?;
            if parts.next().is_some() {
                return Err(MappingError::BadLine(
                    lineno + 1,
                    format!("trailing tokens in {line:?}"),
                ));
            }
            if entries[sector.index()].is_some() {
                return Err(MappingError::BadLine(
                    lineno + 1,
                    format!("sector {} assigned twice", sector.index()),
                ));
            }
            entries[sector.index()] = Some(pitch);
        }
        if entries.iter().any(|e| e.is_none()) {
            return Err(MappingError::MissingSectors);
        }
        MappingTable::new(entries.map(|e| e.unwrap()))
    }
}

impl Default for MappingTable {
    /// Scriabin's index laid over the 12 hue sectors: red C, orange G,
    /// yellow D, green A, the blues E/B/F#, the violets Db/Ab, the steel
    /// tones Eb/Bb, dark red F.
    fn default() -> Self {
        let semis = [0u8, 7, 2, 3, 9, 10, 4, 11, 6, 1, 8, 5];
        MappingTable::new(semis.map(|s| PitchClass::new(s).unwrap())).unwrap()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChordQuality {
    Major,
    Minor,
    Unset,
}

/// A chord rooted on the dominant sector's pitch class, root first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chord {
    pub root: PitchClass,
    pub members: Vec<PitchClass>,
    pub quality: ChordQuality,
}

/// Maps a sector through the table. Total.
pub fn sector_to_pitch_class(s: SectorIndex, table: &MappingTable) -> PitchClass {
    table.lookup(s)
}

/// Builds the chord for a detected harmony: root from the highest-ranked
/// member, all member pitch classes deduplicated, quality left unset.
pub fn chord_from_harmony(
    h: &Harmony,
    ranked: &[SectorIndex],
    table: &MappingTable,
) -> Chord {
    let root_sector = ranked
        .iter()
        .find(|s| h.members.contains(s))
        .copied()
        .expect("harmony members must come from the ranked sectors");
    let root = table.lookup(root_sector);
    let mut members = vec![root];
    for s in ranked.iter().filter(|s| h.members.contains(s)) {
        let pc = table.lookup(*s);
        if !members.contains(&pc) {
            members.push(pc);
        }
    }
    Chord {
        root,
        members,
        quality: ChordQuality::Unset,
    }
}

/// Applies the luminosity rule: segments darker than the image mean get a
/// minor chord, others major; the matching third is added above the root.
pub fn apply_quality(mut c: Chord, segment_mean_lum: f64, image_mean_lum: f64) -> Chord {
    debug_assert_eq!(c.quality, ChordQuality::Unset);
    let (quality, third) = if segment_mean_lum < image_mean_lum {
        (ChordQuality::Minor, 3)
    } else {
        (ChordQuality::Major, 4)
    };
    let third = c.root.transpose(third);
    if !c.members.contains(&third) {
        c.members.push(third);
    }
    c.quality = quality;
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harmony::HarmonyClass;

    fn sec(i: u8) -> SectorIndex {
        SectorIndex::new(i).unwrap()
    }

    #[test]
    fn default_table_anchors() {
        let t = MappingTable::default();
        assert_eq!(t.lookup(sec(0)).name(), "C"); // red
        assert_eq!(t.lookup(sec(2)).name(), "D"); // yellow
        assert_eq!(t.lookup(sec(4)).name(), "A"); // green
    }

    #[test]
    fn default_table_is_a_bijection() {
        let t = MappingTable::default();
        let mut seen = [false; 12];
        for s in SectorIndex::all() {
            seen[t.lookup(s).semitone() as usize] = true;
        }
        assert!(seen.iter().all(|&b| b));
    }

    #[test]
    fn parse_pitch_names() {
        assert_eq!(PitchClass::parse("C").unwrap().semitone(), 0);
        assert_eq!(PitchClass::parse("F#").unwrap().semitone(), 6);
        assert_eq!(PitchClass::parse("Bb").unwrap().semitone(), 10);
        assert_eq!(PitchClass::parse("Cb").unwrap().semitone(), 11);
        assert_eq!(PitchClass::parse("E♭").unwrap().semitone(), 3);
        assert!(PitchClass::parse("H").is_none());
        assert!(PitchClass::parse("C##").is_none());
    }

    #[test]
    fn parse_table_roundtrip() {
        let text = "# custom table\n0 C\n1 G\n2 D\n3 D#\n4 A\n5 A#\n6 E\n7 B\n8 F#\n9 C#\n10 G#\n11 F\n";
        let t = MappingTable::parse(text).unwrap();
        assert_eq!(t, MappingTable::default());
    }

    #[test]
    fn parse_table_rejects_duplicates() {
        let text = "0 C\n1 C\n2 D\n3 D#\n4 A\n5 A#\n6 E\n7 B\n8 F#\n9 C#\n10 G#\n11 F\n";
        assert!(matches!(
            MappingTable::parse(text),
            Err(MappingError::DuplicatePitch(_))
        ));
    }

    #[test]
    fn parse_table_rejects_missing_sector() {
        assert!(matches!(
            MappingTable::parse("0 C\n"),
            Err(MappingError::MissingSectors)
        ));
    }

    #[test]
    fn chord_root_is_highest_ranked_member() {
        let t = MappingTable::default();
        let h = Harmony {
            class: HarmonyClass::Complementary,
            members: vec![sec(0), sec(6)],
        };
        let c = chord_from_harmony(&h, &[sec(0), sec(6)], &t);
        assert_eq!(c.root.name(), "C");
        assert_eq!(c.members, vec![t.lookup(sec(0)), t.lookup(sec(6))]);
        assert_eq!(c.quality, ChordQuality::Unset);

        let sq = Harmony {
            class: HarmonyClass::Square,
            members: vec![sec(0), sec(3), sec(6), sec(9)],
        };
        let c = chord_from_harmony(&sq, &[sec(3), sec(0), sec(6), sec(9)], &t);
        assert_eq!(c.root, t.lookup(sec(3)));
    }

    #[test]
    fn quality_from_luminosity() {
        let t = MappingTable::default();
        let base = || Chord {
            root: PitchClass::new(0).unwrap(),
            members: vec![PitchClass::new(0).unwrap(), t.lookup(sec(6))],
            quality: ChordQuality::Unset,
        };

        let minor = apply_quality(base(), 0.3, 0.5);
        assert_eq!(minor.quality, ChordQuality::Minor);
        assert!(minor.members.contains(&PitchClass::new(3).unwrap()));

        let major = apply_quality(base(), 0.7, 0.5);
        assert_eq!(major.quality, ChordQuality::Major);
        assert!(major.members.contains(&PitchClass::new(4).unwrap()));

        // equal luminosities resolve to major
        let tie = apply_quality(base(), 0.5, 0.5);
        assert_eq!(tie.quality, ChordQuality::Major);
    }

    #[test]
    fn quality_depends_only_on_sign() {
        let mk = || Chord {
            root: PitchClass::new(5).unwrap(),
            members: vec![PitchClass::new(5).unwrap()],
            quality: ChordQuality::Unset,
        };
        let a = apply_quality(mk(), 0.10, 0.11);
        let b = apply_quality(mk(), 0.0, 0.99);
        assert_eq!(a, b);
    }

    #[test]
    fn quality_never_removes_members() {
        let mk = Chord {
            root: PitchClass::new(0).unwrap(),
            members: vec![PitchClass::new(0).unwrap(), PitchClass::new(4).unwrap()],
            quality: ChordQuality::Unset,
        };
        let out = apply_quality(mk.clone(), 0.9, 0.5);
        assert_eq!(out.members.len(), 2); // major third already present
        for m in &mk.members {
            assert!(out.members.contains(m));
        }
    }
}
