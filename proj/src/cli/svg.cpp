#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace gts::cli {
namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 440.0;
constexpr double kLeft = 60.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string r;
    for (char c : s) {
        switch (c) {
            case '<': r += "&lt;"; break;
            case '>': r += "&gt;"; break;
            case '&': r += "&amp;"; break;
            case '"': r += "&quot;"; break;
            default: r += c;
        }
    }
    return r;
}

}  // namespace

void write_density_svg(std::ostream& out, const std::vector<DensityRow>& rows, double bin_width,
                       const std::string& title) {
    double x_lo = 0.0;
    double x_hi = 1.0;
    double y_hi = 1.0;
    if (!rows.empty()) {
        x_lo = rows.front().center - 0.5 * bin_width;
        x_hi = rows.back().center + 0.5 * bin_width;
        y_hi = 0.0;
        for (const auto& r : rows) y_hi = std::max({y_hi, r.empirical, r.gts, r.gbm});
        if (!(y_hi > 0.0)) y_hi = 1.0;
        y_hi *= 1.05;
    }
    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    auto sx = [&](double x) { return kLeft + (x - x_lo) / (x_hi - x_lo) * pw; };
    auto sy = [&](double y) { return kTop + ph - y / y_hi * ph; };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        << "font-size=\"15\">" << escape(title) << "</text>\n";

    out << "<g fill=\"#b8c7dc\" stroke=\"#6d87a8\" stroke-width=\"0.5\">\n";
    for (const auto& r : rows) {
        const double x0 = sx(r.center - 0.5 * bin_width);
        const double y0 = sy(r.empirical);
        out << "<rect x=\"" << fmt(x0) << "\" y=\"" << fmt(y0) << "\" width=\"" << fmt(sx(r.center + 0.5 * bin_width) - x0)
            << "\" height=\"" << fmt(kTop + ph - y0) << "\"/>\n";
    }
    out << "</g>\n";

    auto polyline = [&](auto get, const char* colour, const char* dash) {
        out << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"2\"";
        if (*dash) out << " stroke-dasharray=\"" << dash << '"';
        out << " points=\"";
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i) out << ' ';
            out << fmt(sx(rows[i].center)) << ',' << fmt(sy(get(rows[i])));
        }
        out << "\"/>\n";
    };
    polyline([](const DensityRow& r) { return r.gts; }, "#c0392b", "");
    polyline([](const DensityRow& r) { return r.gbm; }, "#27ae60", "6 4");

    // axes
    out << "<g stroke=\"black\" stroke-width=\"1\">\n";
    out << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + ph << "\" x2=\"" << kLeft + pw << "\" y2=\"" << kTop + ph
        << "\"/>\n";
    out << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\"" << kTop + ph << "\"/>\n";
    out << "</g>\n";
    out << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
    for (int i = 0; i <= 4; ++i) {
        const double xv = x_lo + (x_hi - x_lo) * i / 4.0;
        const double yv = y_hi * i / 4.0;
        out << "<text x=\"" << fmt(sx(xv)) << "\" y=\"" << fmt(kTop + ph + 16) << "\" text-anchor=\"middle\">"
            << tick_label(xv) << "</text>\n";
        out << "<text x=\"" << fmt(kLeft - 6) << "\" y=\"" << fmt(sy(yv) + 4) << "\" text-anchor=\"end\">"
            << tick_label(yv) << "</text>\n";
    }
    out << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 10 << "\" text-anchor=\"middle\">Daily return (%)"
        << "</text>\n";
    const double lx = kLeft + pw - 150;
    out << "<line x1=\"" << lx << "\" y1=\"" << kTop + 10 << "\" x2=\"" << lx + 24 << "\" y2=\"" << kTop + 10
        << "\" stroke=\"#c0392b\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << lx + 30 << "\" y=\"" << kTop + 14 << "\">GTS density</text>\n";
    out << "<line x1=\"" << lx << "\" y1=\"" << kTop + 28 << "\" x2=\"" << lx + 24 << "\" y2=\"" << kTop + 28
        << "\" stroke=\"#27ae60\" stroke-width=\"2\" stroke-dasharray=\"6 4\"/>\n";
    out << "<text x=\"" << lx + 30 << "\" y=\"" << kTop + 32 << "\">GBM density</text>\n";
    out << "</g>\n</svg>\n";
}

}  // namespace gts::cli
