//! Image decoding, box-filter downsizing and left-to-right segmentation.

use image::{DynamicImage, ImageFormat};
use thiserror::Error;

/// An 8-bit RGB pixel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RgbPixel {
    pub r: u8,
    pub g: u8,
    pub b: u8,
}

impl RgbPixel {
    pub const fn new(r: u8, g: u8, b: u8) -> Self {
        RgbPixel { r, g, b }
    }
}

/// A row-major grid of RGB pixels. Always at least 1x1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PixelGrid {
    width: u32,
    height: u32,
    pixels: Vec<RgbPixel>,
}

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("image bytes could not be decoded: {0}")]
    MalformedImage(String),
    #[error("unsupported image format: {0} (only PNG and JPEG are accepted)")]
    UnsupportedFormat(String),
    #[error("cannot split a {width}-pixel-wide image into {requested} segments")]
    TooManySegments { width: u32, requested: u32 },
}

impl PixelGrid {
    /// Builds a grid from row-major pixels. Panics if the pixel count does
    /// not match `width * height` or either dimension is zero.
    pub fn new(width: u32, height: u32, pixels: Vec<RgbPixel>) -> Self {
        assert!(width >= 1 && height >= 1, "grid must be at least 1x1");
        assert_eq!(
            pixels.len(),
            width as usize * height as usize,
            "pixel count must equal width * height"
        );
        PixelGrid {
            width,
            height,
            pixels,
        }
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn get(&self, x: u32, y: u32) -> RgbPixel {
        self.pixels[y as usize * self.width as usize + x as usize]
    }

    pub fn pixels(&self) -> &[RgbPixel] {
        &self.pixels
    }
}

/// Decodes a PNG or JPEG byte stream. Alpha, if present, is composited
/// over white.
pub fn decode_image(bytes: &[u8]) -> Result<PixelGrid, IngestError> {
    let format = image::guess_format(bytes)
        .map_err(|e| IngestError::MalformedImage(e.to_string()))?;
    match format {
        ImageFormat::Png | ImageFormat::Jpeg => {}
        other => {
            return Err(IngestError::UnsupportedFormat(format!("{other:?}")));
        }
    }
    let img = image::load_from_memory_with_format(bytes, format)
        .map_err(|e| IngestError::MalformedImage(e.to_string()))?;
    Ok(composite_over_white(img))
}

fn composite_over_white(img: DynamicImage) -> PixelGrid {
    let rgba = img.to_rgba8();
    let (w, h) = rgba.dimensions();
    let pixels = rgba
        .pixels()
        .map(|p| {
            let [r, g, b, a] = p.0;
            let a = a as u32;
            let over = |c: u8| -> u8 {
                // round-half-up alpha blend against a white background
                ((c as u32 * a + 255 * (255 - a) + 127) / 255) as u8
            };
            RgbPixel::new(over(r), over(g), over(b))
        })
        .collect();
    PixelGrid::new(w, h, pixels)
}

/// Shrinks `grid` so its longest side is at most `max_dim`, preserving
/// aspect ratio. Uses box-filter averaging with round-half-up channels.
/// Grids already within bounds are returned unchanged.
pub fn downsize(grid: &PixelGrid, max_dim: u32) -> PixelGrid {
    assert!(max_dim >= 1, "max_dim must be at least 1");
    let (w, h) = (grid.width(), grid.height());
    if w <= max_dim && h <= max_dim {
        return grid.clone();
    }
    let longest = w.max(h) as u64;
    let scale = |side: u32| -> u32 {
        // round-half-up rescale, clamped to at least one pixel
        let scaled = (side as u64 * max_dim as u64 + longest / 2) / longest;
        (scaled as u32).clamp(1, max_dim)
    };
    let (new_w, new_h) = if w >= h {
        (max_dim, scale(h))
    } else {
        (scale(w), max_dim)
    };
    box_resample(grid, new_w, new_h)
}

fn box_resample(grid: &PixelGrid, new_w: u32, new_h: u32) -> PixelGrid {
    let (w, h) = (grid.width() as u64, grid.height() as u64);
    let bounds = |i: u32, out: u32, full: u64| -> (u64, u64) {
        let lo = i as u64 * full / out as u64;
        let hi = ((i as u64 + 1) * full / out as u64).max(lo + 1);
        (lo, hi)
    };
    let mut pixels = Vec::with_capacity(new_w as usize * new_h as usize);
    for oy in 0..new_h {
        let (y0, y1) = bounds(oy, new_h, h);
        for ox in 0..new_w {
            let (x0, x1) = bounds(ox, new_w, w);
            let (mut sr, mut sg, mut sb) = (0u64, 0u64, 0u64);
            for y in y0..y1 {
                for x in x0..x1 {
                    let p = grid.get(x as u32, y as u32);
                    sr += p.r as u64;
                    sg += p.g as u64;
                    sb += p.b as u64;
                }
            }
            let n = (y1 - y0) * (x1 - x0);
            let avg = |s: u64| ((2 * s + n) / (2 * n)) as u8;
            pixels.push(RgbPixel::new(avg(sr), avg(sg), avg(sb)));
        }
    }
    PixelGrid::new(new_w, new_h, pixels)
}

/// Splits `grid` into `n_segments` vertical strips, left to right. Strip
/// widths are `floor(width / n)` with the leftmost `width % n` strips one
/// pixel wider, so concatenation reconstructs the input.
pub fn split_segments(grid: &PixelGrid, n_segments: u32) -> Result<Vec<PixelGrid>, IngestError> {
    assert!(n_segments >= 1, "n_segments must be at least 1");
    let w = grid.width();
    if n_segments > w {
        return Err(IngestError::TooManySegments {
            width: w,
            requested: n_segments,
        });
    }
    let base = w / n_segments;
    let extra = w % n_segments;
    let mut strips = Vec::with_capacity(n_segments as usize);
    let mut x_start = 0u32;
    for i in 0..n_segments {
        let strip_w = base + u32::from(i < extra);
        let mut pixels = Vec::with_capacity(strip_w as usize * grid.height() as usize);
        for y in 0..grid.height() {
            for x in x_start..x_start + strip_w {
                pixels.push(grid.get(x, y));
            }
        }
        strips.push(PixelGrid::new(strip_w, grid.height(), pixels));
        x_start += strip_w;
    }
    Ok(strips)
}
