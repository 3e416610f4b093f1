//! Detection of the six color-harmony classes on the 12-sector hue circle.

use crate::color::SectorIndex;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HarmonyClass {
    Complementary,
    Analogous,
    SplitComplementary,
    Triad,
    Tetradic,
    Square,
}

impl HarmonyClass {
    pub const fn arity(self) -> usize {
        match self {
            HarmonyClass::Complementary | HarmonyClass::Analogous => 2,
            HarmonyClass::SplitComplementary | HarmonyClass::Triad => 3,
            HarmonyClass::Tetradic | HarmonyClass::Square => 4,
        }
    }

    pub const fn name(self) -> &'static str {
        match self {
            HarmonyClass::Complementary => "Complementary",
            HarmonyClass::Analogous => "Analogous",
            HarmonyClass::SplitComplementary => "SplitComplementary",
            HarmonyClass::Triad => "Triad",
            HarmonyClass::Tetradic => "Tetradic",
            HarmonyClass::Square => "Square",
        }
    }
}

/// Precedence used when overlapping candidates compete: most specific
/// structure first.
pub const PRECEDENCE: [HarmonyClass; 6] = [
    HarmonyClass::Square,
    HarmonyClass::Tetradic,
    HarmonyClass::Triad,
    HarmonyClass::SplitComplementary,
    HarmonyClass::Complementary,
    HarmonyClass::Analogous,
];

/// Whether a triad spans consecutive 60-degree gaps (sectors a, a+2, a+4)
/// or the conventional 120-degree spacing (a, a+4, a+8).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TriadConvention {
    #[default]
    SixtyDegrees,
    HundredTwentyDegrees,
}

/// A detected harmony: the class plus its member sectors in ascending order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Harmony {
    pub class: HarmonyClass,
    pub members: Vec<SectorIndex>,
}

#[derive(Debug, Error)]
pub enum HarmonyError {
    #[error("harmony classification needs 2 to 4 sectors, got {0}")]
    ArityError(usize),
}

/// Circular distance between two sectors, in sectors (0..=6).
pub fn sector_distance(a: SectorIndex, b: SectorIndex) -> u8 {
    let d = (a.index() as i16 - b.index() as i16).rem_euclid(12) as u8;
    d.min(12 - d)
}

/// Classifies a sector set against the harmony definitions. Returns `None`
/// when the set matches no class.
pub fn classify(
    members: &[SectorIndex],
    triad: TriadConvention,
) -> Result<Option<HarmonyClass>, HarmonyError> {
    let mut s: Vec<usize> = members.iter().map(|m| m.index()).collect();
    s.sort_unstable();
    s.dedup();
    if !(2..=4).contains(&s.len()) {
        return Err(HarmonyError::ArityError(s.len()));
    }
    Ok(match s.len() {
        2 => {
            let d = circ_dist(s[0], s[1]);
            match d {
                6 => Some(HarmonyClass::Complementary),
                1 => Some(HarmonyClass::Analogous),
                _ => None,
            }
        }
        3 => {
            if is_rotation_of(&s, &triad_pattern(triad)) {
                Some(HarmonyClass::Triad)
            } else if is_rotation_of(&s, &[0, 1, 6]) || is_rotation_of(&s, &[0, 1, 7]) {
                Some(HarmonyClass::SplitComplementary)
            } else {
                None
            }
        }
        4 => {
            if is_rotation_of(&s, &[0, 3, 6, 9]) {
                Some(HarmonyClass::Square)
            } else if s.iter().all(|&m| s.contains(&((m + 6) % 12))) {
                Some(HarmonyClass::Tetradic)
            } else {
                None
            }
        }
        _ => unreachable!(),
    })
}

fn triad_pattern(c: TriadConvention) -> [usize; 3] {
    match c {
        TriadConvention::SixtyDegrees => [0, 2, 4],
        TriadConvention::HundredTwentyDegrees => [0, 4, 8],
    }
}

fn circ_dist(a: usize, b: usize) -> usize {
    let d = (a as i16 - b as i16).rem_euclid(12) as usize;
    d.min(12 - d)
}

fn is_rotation_of(sorted: &[usize], pattern: &[usize]) -> bool {
    if sorted.len() != pattern.len() {
        return false;
    }
    (0..12).any(|k| {
        let mut rotated: Vec<usize> = pattern.iter().map(|&p| (p + k) % 12).collect();
        rotated.sort_unstable();
        rotated == sorted
    })
}

/// Greedily extracts disjoint harmonies from the ranked qualifying sectors.
///
/// Classes are scanned most specific first ([`PRECEDENCE`]); within a class
/// candidates are ordered by the rank of their best-ranked member (then by
/// their full rank tuple), and each sector joins at most one harmony.
pub fn detect_harmonies(ranked: &[SectorIndex], triad: TriadConvention) -> Vec<Harmony> {
    let mut available: Vec<SectorIndex> = ranked.to_vec();
    let mut found = Vec::new();
    for class in PRECEDENCE {
        loop {
            let candidates = class_candidates(&available, class, triad);
            match candidates.into_iter().next() {
                Some(best) => {
                    available.retain(|s| !best.contains(s));
                    let mut members = best;
                    members.sort_unstable();
                    found.push(Harmony { class, members });
                }
                None => break,
            }
        }
    }
    found
}

// Candidate subsets of `available` (kept in rank order) that classify as
// `class`, ordered by their members' rank positions.
fn class_candidates(
    available: &[SectorIndex],
    class: HarmonyClass,
    triad: TriadConvention,
) -> Vec<Vec<SectorIndex>> {
    let arity = class.arity();
    if available.len() < arity {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut indices: Vec<usize> = (0..arity).collect();
    loop {
        let subset: Vec<SectorIndex> = indices.iter().map(|&i| available[i]).collect();
        if matches!(classify(&subset, triad), Ok(Some(c)) if c == class) {
            out.push(subset);
        }
        if !next_combination(&mut indices, available.len()) {
            break;
        }
    }
    // `available` is in rank order, so lexicographic index order already
    // sorts candidates by best rank first, then by the full rank tuple.
    out
}

fn next_combination(indices: &mut [usize], n: usize) -> bool {
    let k = indices.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if indices[i] < n - (k - i) {
            indices[i] += 1;
            for j in i + 1..k {
                indices[j] = indices[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
