#pragma once

#include <string>

namespace splink::harness {

enum class PlotAxis { GammaDb, FreqHz };

/// Render the rows of a sweep CSV as a log-y PER chart, one series per
/// (interleaver, scheme) pair. Zero-PER cells are drawn at the floor
/// 0.5/packets (half the smallest resolvable rate); failed cells are skipped.
/// Rejects text that does not start with the sweep CSV header.
std::string render_plot_svg(const std::string& csv_text, PlotAxis axis);

/// render_plot_svg from a CSV file to an SVG file.
void write_plot(const std::string& csv_path, const std::string& svg_path, PlotAxis axis);

}  // namespace splink::harness
