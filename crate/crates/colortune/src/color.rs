//! The color cone representation: RGB conversion, pixel filtering, 12-sector
//! hue quantization and per-segment histograms.

use crate::ingest::{PixelGrid, RgbPixel};
use thiserror::Error;

pub const SECTOR_COUNT: usize = 12;

/// A pixel in the perceptual color cone: hue angle on the base, saturation
/// towards the rim, luminosity along the axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConeColor {
    /// Degrees in `[0, 360)`. Canonically 0 for achromatic pixels.
    pub hue: f64,
    /// `[0, 1]`.
    pub saturation: f64,
    /// `[0, 1]`.
    pub luminosity: f64,
}

/// One of the 12 hue sectors, each spanning 30 degrees. Sector 0 is
/// centered on pure red (hue 0).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SectorIndex(u8);

impl SectorIndex {
    pub fn new(index: u8) -> Option<Self> {
        (index < SECTOR_COUNT as u8).then_some(SectorIndex(index))
    }

    pub const fn index(self) -> usize {
        self.0 as usize
    }

    pub fn all() -> impl Iterator<Item = SectorIndex> {
        (0..SECTOR_COUNT as u8).map(SectorIndex)
    }
}

/// Luminosity/saturation cutoffs for discarding pixels that carry little
/// color information.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FilterThresholds {
    pub dark_cutoff: f64,
    pub bright_cutoff: f64,
    pub gray_cutoff: f64,
}

impl FilterThresholds {
    pub fn validate(&self) -> Result<(), ColorError> {
        let ok = 0.0 <= self.dark_cutoff
            && self.dark_cutoff < self.bright_cutoff
            && self.bright_cutoff <= 1.0
            && (0.0..1.0).contains(&self.gray_cutoff);
        if ok {
            Ok(())
        } else {
            Err(ColorError::InvalidThresholds)
        }
    }
}

impl Default for FilterThresholds {
    fn default() -> Self {
        FilterThresholds {
            dark_cutoff: 0.08,
            bright_cutoff: 0.92,
            gray_cutoff: 0.05,
        }
    }
}

/// Sector statistics for one image segment.
#[derive(Debug, Clone, PartialEq)]
pub struct HueHistogram {
    pub bin_count: [u64; SECTOR_COUNT],
    pub bin_sat_sum: [f64; SECTOR_COUNT],
    pub bin_lum_sum: [f64; SECTOR_COUNT],
    /// Pixels that survived the filter.
    pub total_counted: u64,
    /// Mean luminosity over ALL segment pixels, before filtering.
    pub segment_mean_luminosity: f64,
    /// Mean saturation over pixels that survived the filter; 0 if none did.
    pub segment_mean_saturation: f64,
}

#[derive(Debug, Error)]
pub enum ColorError {
    #[error("filter thresholds must satisfy 0 <= dark < bright <= 1 and 0 <= gray < 1")]
    InvalidThresholds,
    #[error("segment has no pixels left after filtering")]
    EmptySegment,
}

/// Standard hexcone RGB -> hue/saturation/lightness conversion. Achromatic
/// pixels get hue 0, saturation 0.
pub fn rgb_to_cone(p: RgbPixel) -> ConeColor {
    let r = p.r as f64 / 255.0;
    let g = p.g as f64 / 255.0;
    let b = p.b as f64 / 255.0;
    let max = r.max(g).max(b);
    let min = r.min(g).min(b);
    let lum = (max + min) / 2.0;
    if max == min {
        return ConeColor {
            hue: 0.0,
            saturation: 0.0,
            luminosity: lum,
        };
    }
    let delta = max - min;
    let sat = if lum <= 0.5 {
        delta / (max + min)
    } else {
        delta / (2.0 - max - min)
    };
    let hue = if max == r {
        60.0 * ((g - b) / delta)
    } else if max == g {
        60.0 * ((b - r) / delta) + 120.0
    } else {
        60.0 * ((r - g) / delta) + 240.0
    };
    let hue = if hue < 0.0 { hue + 360.0 } else { hue };
    ConeColor {
        hue: if hue >= 360.0 { hue - 360.0 } else { hue },
        saturation: sat,
        luminosity: lum,
    }
}

/// Inverse of [`rgb_to_cone`], with round-half-up channel quantization.
pub fn cone_to_rgb(c: ConeColor) -> RgbPixel {
    let (h, s, l) = (c.hue, c.saturation, c.luminosity);
    let channel = |v: f64| -> u8 { (v * 255.0 + 0.5).floor().clamp(0.0, 255.0) as u8 };
    if s == 0.0 {
        let v = channel(l);
        return RgbPixel::new(v, v, v);
    }
    let q = if l <= 0.5 { l * (1.0 + s) } else { l + s - l * s };
    let p = 2.0 * l - q;
    let hue_to_channel = |mut t: f64| -> f64 {
        if t < 0.0 {
            t += 360.0;
        }
        if t >= 360.0 {
            t -= 360.0;
        }
        if t < 60.0 {
            p + (q - p) * t / 60.0
        } else if t < 180.0 {
            q
        } else if t < 240.0 {
            p + (q - p) * (240.0 - t) / 60.0
        } else {
            p
        }
    };
    RgbPixel::new(
        channel(hue_to_channel(h + 120.0)),
        channel(hue_to_channel(h)),
        channel(hue_to_channel(h - 120.0)),
    )
}

/// A pixel contributes to the mapping only if it is neither too dark, too
/// bright, nor too gray.
pub fn passes_filter(c: ConeColor, t: &FilterThresholds) -> bool {
    t.dark_cutoff <= c.luminosity && c.luminosity <= t.bright_cutoff && c.saturation >= t.gray_cutoff
}

/// Quantizes a hue angle into its 30-degree sector. Sector 0 spans
/// `[345, 15)` so pure primaries fall mid-sector.
pub fn hue_sector(hue: f64) -> SectorIndex {
    debug_assert!((0.0..360.0).contains(&hue));
    let shifted = (hue + 15.0) % 360.0;
    SectorIndex((shifted / 30.0).floor() as u8 % SECTOR_COUNT as u8)
}

/// Accumulates sector statistics for one segment. The segment mean
/// luminosity covers every pixel; the bins and mean saturation cover only
/// pixels passing the filter.
pub fn build_histogram(segment: &PixelGrid, t: &FilterThresholds) -> HueHistogram {
    let mut h = HueHistogram {
        bin_count: [0; SECTOR_COUNT],
        bin_sat_sum: [0.0; SECTOR_COUNT],
        bin_lum_sum: [0.0; SECTOR_COUNT],
        total_counted: 0,
        segment_mean_luminosity: 0.0,
        segment_mean_saturation: 0.0,
    };
    let mut lum_sum = 0.0;
    let mut sat_sum = 0.0;
    for &p in segment.pixels() {
        let c = rgb_to_cone(p);
        lum_sum += c.luminosity;
        if passes_filter(c, t) {
            let s = hue_sector(c.hue).index();
            h.bin_count[s] += 1;
            h.bin_sat_sum[s] += c.saturation;
            h.bin_lum_sum[s] += c.luminosity;
            h.total_counted += 1;
            sat_sum += c.saturation;
        }
    }
    h.segment_mean_luminosity = lum_sum / segment.pixels().len() as f64;
    if h.total_counted > 0 {
        h.segment_mean_saturation = sat_sum / h.total_counted as f64;
    }
    h
}

/// Sectors holding strictly more than `threshold` of the counted pixels,
/// sorted by descending count with ties broken by ascending sector index.
pub fn qualifying_sectors(
    h: &HueHistogram,
    threshold: f64,
) -> Result<Vec<(SectorIndex, f64)>, ColorError> {
    if h.total_counted == 0 {
        return Err(ColorError::EmptySegment);
    }
    let total = h.total_counted as f64;
    let mut out: Vec<(SectorIndex, f64)> = SectorIndex::all()
        .filter_map(|s| {
            let share = h.bin_count[s.index()] as f64 / total;
            (share > threshold).then_some((s, share))
        })
        .collect();
    out.sort_by(|a, b| {
        h.bin_count[b.0.index()]
            .cmp(&h.bin_count[a.0.index()])
            .then(a.0.cmp(&b.0))
    });
    Ok(out)
}
