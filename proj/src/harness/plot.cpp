#include "splink/harness/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "splink/harness/runner.hpp"

namespace splink::harness {

namespace {

struct Point {
    double x;
    double y;
};

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(f);
    return fields;
}

std::string series_label(const std::vector<std::string>& fields) {
    const std::string& interleaver = fields[1];
    const std::string& scheme = fields[2];
    const std::string& cc_rate = fields[3];
    const std::string& rs_k = fields[4];
    std::string code;
    if (scheme == "CC") {
        code = "CC(" + cc_rate + ")";
    } else if (scheme == "RS") {
        code = "RS(31," + rs_k + ")";
    } else {
        code = "RS(31," + rs_k + ")+CC(" + cc_rate + ")";
    }
    return interleaver + " " + code;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

constexpr double kWidth = 720.0;
constexpr double kHeight = 440.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 540.0;   // legend to the right of this
constexpr double kTop = 30.0;
constexpr double kBottom = 390.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#e377c2", "#7f7f7f"};

}  // namespace

std::string render_plot_svg(const std::string& csv_text, PlotAxis axis) {
    std::stringstream lines(csv_text);
    std::string line;
    if (!std::getline(lines, line)) throw std::invalid_argument("empty CSV");
    if (line.size() && line.back() == '\r') line.pop_back();
    if (line != kCsvHeader) throw std::invalid_argument("unrecognized CSV header");

    std::map<std::string, std::vector<Point>> series;
    while (std::getline(lines, line)) {
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 14) throw std::invalid_argument("malformed CSV row: " + line);
        const double x = std::stod(fields[axis == PlotAxis::GammaDb ? 5 : 6]);
        const long packets = std::stol(fields[8]);
        double per = std::stod(fields[10]);
        if (packets <= 0 || std::isnan(per)) continue;  // failed cell
        if (per <= 0.0) per = 0.5 / static_cast<double>(packets);
        series[series_label(fields)].push_back({x, per});
    }
    for (auto& [label, pts] : series) {
        std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) { return a.x < b.x; });
    }

    double xmin = 0.0, xmax = 1.0, ymin = 0.1, ymax = 1.0;
    bool have = false;
    for (const auto& [label, pts] : series) {
        for (const auto& p : pts) {
            if (!have) {
                xmin = xmax = p.x;
                ymin = ymax = p.y;
                have = true;
            } else {
                xmin = std::min(xmin, p.x);
                xmax = std::max(xmax, p.x);
                ymin = std::min(ymin, p.y);
                ymax = std::max(ymax, p.y);
            }
        }
    }
    if (xmin == xmax) {
        xmin -= 1.0;
        xmax += 1.0;
    }
    const double ylo = std::floor(std::log10(ymin));
    const double yhi = std::max(0.0, std::ceil(std::log10(ymax)));

    const auto sx = [&](double x) {
        return kLeft + (x - xmin) / (xmax - xmin) * (kRight - kLeft);
    };
    const auto sy = [&](double y) {
        const double t = (std::log10(y) - ylo) / std::max(1.0, yhi - ylo);
        return kBottom - t * (kBottom - kTop);
    };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<g font-family=\"sans-serif\" font-size=\"12\">\n";

    // Axes and decade gridlines.
    svg << "<line x1=\"" << kLeft << "\" y1=\"" << kBottom << "\" x2=\"" << kRight << "\" y2=\""
        << kBottom << "\" stroke=\"black\"/>\n"
        << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
        << kBottom << "\" stroke=\"black\"/>\n";
    for (double d = ylo; d <= yhi + 0.5; d += 1.0) {
        const double y = sy(std::pow(10.0, d));
        svg << "<line x1=\"" << kLeft << "\" y1=\"" << y << "\" x2=\"" << kRight << "\" y2=\"" << y
            << "\" stroke=\"#dddddd\"/>\n"
            << "<text x=\"" << kLeft - 8 << "\" y=\"" << y + 4
            << "\" text-anchor=\"end\">1e" << static_cast<int>(d) << "</text>\n";
    }
    std::vector<double> xticks;
    for (const auto& [label, pts] : series) {
        for (const auto& p : pts) {
            if (std::find(xticks.begin(), xticks.end(), p.x) == xticks.end())
                xticks.push_back(p.x);
        }
    }
    std::sort(xticks.begin(), xticks.end());
    if (xticks.empty()) xticks = {xmin, xmax};
    for (const double x : xticks) {
        svg << "<line x1=\"" << sx(x) << "\" y1=\"" << kBottom << "\" x2=\"" << sx(x)
            << "\" y2=\"" << kBottom + 5 << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << sx(x) << "\" y=\"" << kBottom + 20
            << "\" text-anchor=\"middle\">" << fmt(x) << "</text>\n";
    }

    // Series.
    int color = 0;
    double legend_y = kTop + 10;
    for (const auto& [label, pts] : series) {
        const char* c = kPalette[color % (sizeof kPalette / sizeof *kPalette)];
        ++color;
        if (pts.size() > 1) {
            svg << "<polyline fill=\"none\" stroke=\"" << c << "\" stroke-width=\"1.5\" points=\"";
            for (const auto& p : pts) svg << sx(p.x) << ',' << sy(p.y) << ' ';
            svg << "\"/>\n";
        }
        for (const auto& p : pts) {
            svg << "<circle cx=\"" << sx(p.x) << "\" cy=\"" << sy(p.y) << "\" r=\"3\" fill=\"" << c
                << "\"/>\n";
        }
        svg << "<rect x=\"" << kRight + 12 << "\" y=\"" << legend_y - 8
            << "\" width=\"12\" height=\"12\" fill=\"" << c << "\"/>\n"
            << "<text x=\"" << kRight + 30 << "\" y=\"" << legend_y + 2 << "\">" << label
            << "</text>\n";
        legend_y += 18;
    }

    const char* xlabel = axis == PlotAxis::GammaDb ? "Gamma (dB)" : "Impulse frequency (Hz)";
    svg << "<text x=\"" << (kLeft + kRight) / 2 << "\" y=\"" << kBottom + 40
        << "\" text-anchor=\"middle\">" << xlabel << "</text>\n"
        << "<text x=\"16\" y=\"" << (kTop + kBottom) / 2
        << "\" transform=\"rotate(-90 16 " << (kTop + kBottom) / 2 << ")\" "
        << "text-anchor=\"middle\">PER</text>\n"
        << "<text x=\"" << kLeft << "\" y=\"" << kHeight - 8 << "\" fill=\"#666666\">"
        << "PER = 0 cells are drawn at the floor 0.5/packets.</text>\n"
        << "</g>\n</svg>\n";
    return svg.str();
}

void write_plot(const std::string& csv_path, const std::string& svg_path, PlotAxis axis) {
    std::ifstream in(csv_path);
    if (!in) throw std::invalid_argument("cannot open CSV: " + csv_path);
    std::stringstream buf;
    buf << in.rdbuf();
    std::ofstream out(svg_path);
    if (!out) throw std::runtime_error("cannot open " + svg_path + " for writing");
    out << render_plot_svg(buf.str(), axis);
}

}  // namespace splink::harness
