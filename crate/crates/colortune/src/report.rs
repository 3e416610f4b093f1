//! The structured analysis report: deterministic JSON text with fixed key
//! order and 4-decimal fixed-point numbers, suitable for golden-file diffs.

use crate::pipeline::Analysis;
use crate::scriabin::ChordQuality;
use std::fmt::Write;

/// Renders the full analysis as JSON text. Key order and number formatting
/// are stable, so identical analyses produce byte-identical reports.
pub fn emit_report(analysis: &Analysis) -> String {
    let mut out = String::new();
    out.push_str("{\n");
    writeln!(
        out,
        "  \"image\": {{\n    \"original_width\": {},\n    \"original_height\": {},\n    \"width\": {},\n    \"height\": {},\n    \"mean_luminosity\": {:.4}\n  }},",
        analysis.original_width,
        analysis.original_height,
        analysis.width,
        analysis.height,
        analysis.image_mean_luminosity
    )
    .unwrap();
    out.push_str("  \"segments\": [");
    for (i, seg) in analysis.segments.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str("\n    {\n");
        writeln!(out, "      \"index\": {},", seg.index).unwrap();
        writeln!(out, "      \"silence\": {},", seg.melody.is_empty()).unwrap();
        writeln!(out, "      \"tempo_bpm\": {},", seg.tempo_bpm).unwrap();
        writeln!(
            out,
            "      \"mean_luminosity\": {:.4},",
            seg.histogram.segment_mean_luminosity
        )
        .unwrap();
        writeln!(
            out,
            "      \"mean_saturation\": {:.4},",
            seg.histogram.segment_mean_saturation
        )
        .unwrap();

        let qualifying = seg
            .qualifying
            .iter()
            .map(|(s, share)| format!("[{}, {:.4}]", s.index(), share))
            .collect::<Vec<_>>()
            .join(", ");
        writeln!(out, "      \"qualifying\": [{qualifying}],").unwrap();

        let harmonies = seg
            .harmonies
            .iter()
            .map(|h| {
                let members = h
                    .members
                    .iter()
                    .map(|m| m.index().to_string())
                    .collect::<Vec<_>>()
                    .join(", ");
                format!(
                    "{{\"class\": \"{}\", \"members\": [{}]}}",
                    h.class.name(),
                    members
                )
            })
            .collect::<Vec<_>>()
            .join(", ");
        writeln!(out, "      \"harmonies\": [{harmonies}],").unwrap();

        match &seg.chord {
            Some(c) => {
                let quality = match c.quality {
                    ChordQuality::Major => "Major",
                    ChordQuality::Minor => "Minor",
                    ChordQuality::Unset => "Unset",
                };
                let members = c
                    .members
                    .iter()
                    .map(|m| format!("\"{}\"", m.name()))
                    .collect::<Vec<_>>()
                    .join(", ");
                writeln!(
                    out,
                    "      \"chord\": {{\"root\": \"{}\", \"quality\": \"{}\", \"members\": [{}]}},",
                    c.root.name(),
                    quality,
                    members
                )
                .unwrap();
            }
            None => {
                out.push_str("      \"chord\": null,\n");
            }
        }

        let melody = seg
            .melody
            .iter()
            .map(|n| {
                format!(
                    "{{\"pitch\": \"{}{}\", \"velocity\": {}, \"start\": {}, \"duration\": {}}}",
                    n.pitch_class.name(),
                    n.octave,
                    n.velocity,
                    n.start,
                    n.duration
                )
            })
            .collect::<Vec<_>>()
            .join(", ");
        writeln!(out, "      \"melody\": [{melody}]").unwrap();
        out.push_str("    }");
    }
    if analysis.segments.is_empty() {
        out.push_str("]\n}\n");
    } else {
        out.push_str("\n  ]\n}\n");
    }
    out
}
