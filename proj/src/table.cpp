#include "jumplab/table.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

#ifndef JUMPLAB_VERSION
#define JUMPLAB_VERSION "0.1.0"
#endif

namespace jumplab {

std::string format_g17(double v) {
    // shortest representation that still round-trips
    char buf[64];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

void Table::add_row(std::vector<std::string> cells) {
    if (cells.size() != header.size())
        throw std::logic_error("table row width does not match the header");
    rows.push_back(std::move(cells));
}

void Table::stamp_metadata(std::uint64_t seed, double epsilon, long n,
                           const std::string& version) {
    header.insert(header.end(), {"seed", "epsilon", "n", "version"});
    for (auto& row : rows) {
        row.push_back(std::to_string(seed));
        row.push_back(format_g17(epsilon));
        row.push_back(std::to_string(n));
        row.push_back(version);
    }
}

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

void write_csv(const std::string& path, const Table& table) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    for (std::size_t i = 0; i < table.header.size(); ++i)
        out << (i ? "," : "") << csv_escape(table.header[i]);
    out << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << csv_escape(row[i]);
        out << "\n";
    }
}

void write_summary(const std::string& path,
                   const std::vector<std::pair<std::string, std::string>>& items,
                   bool with_timestamp) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    if (with_timestamp) {
        std::time_t now = std::time(nullptr);
        char buf[64];
        std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
        out << "# generated " << buf << "\n";
    }
    for (const auto& [k, v] : items) out << k << " = " << v << "\n";
}

// ---------------------------------------------------------------------------
// svg plots
// ---------------------------------------------------------------------------

namespace {

constexpr double kW = 640.0, kH = 480.0;
constexpr double kMargL = 70.0, kMargR = 20.0, kMargT = 20.0, kMargB = 50.0;

struct AxisMap {
    double lo, hi;
    bool log;
    double t(double v) const {
        double a = log ? std::log10(v) : v;
        double l = log ? std::log10(lo) : lo;
        double h = log ? std::log10(hi) : hi;
        if (h <= l) return 0.5;
        return (a - l) / (h - l);
    }
};

std::string fmt_tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

std::vector<double> ticks(const AxisMap& m) {
    std::vector<double> out;
    if (m.log) {
        int lo = static_cast<int>(std::floor(std::log10(m.lo)));
        int hi = static_cast<int>(std::ceil(std::log10(m.hi)));
        for (int e = lo; e <= hi; ++e) {
            double v = std::pow(10.0, e);
            if (v >= m.lo * 0.999 && v <= m.hi * 1.001) out.push_back(v);
        }
        if (out.size() < 2) out = {m.lo, m.hi};
    } else {
        for (int i = 0; i <= 4; ++i) out.push_back(m.lo + (m.hi - m.lo) * i / 4.0);
    }
    return out;
}

}  // namespace

void write_svg_plot(const std::string& path, const std::vector<PlotSeries>& series,
                    const std::string& x_label, const std::string& y_label,
                    bool log_log) {
    double xlo = 0.0, xhi = 1.0, ylo = 0.0, yhi = 1.0;
    bool first = true;
    for (const auto& s : series) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (log_log && (s.x[i] <= 0.0 || s.y[i] <= 0.0)) continue;
            if (first) {
                xlo = xhi = s.x[i];
                ylo = yhi = s.y[i];
                first = false;
            }
            xlo = std::min(xlo, s.x[i]);
            xhi = std::max(xhi, s.x[i]);
            ylo = std::min(ylo, s.y[i]);
            yhi = std::max(yhi, s.y[i]);
        }
    }
    if (first) {
        xlo = ylo = log_log ? 0.1 : 0.0;
        xhi = yhi = 1.0;
    }
    if (xhi == xlo) xhi = log_log ? xlo * 10.0 : xlo + 1.0;
    if (yhi == ylo) yhi = log_log ? ylo * 10.0 : ylo + 1.0;
    AxisMap xm{xlo, xhi, log_log}, ym{ylo, yhi, log_log};
    auto px = [&](double v) { return kMargL + xm.t(v) * (kW - kMargL - kMargR); };
    auto py = [&](double v) { return kH - kMargB - ym.t(v) * (kH - kMargT - kMargB); };

    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                   "#ff7f0e", "#8c564b"};

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW
        << "\" height=\"" << kH << "\" viewBox=\"0 0 " << kW << " " << kH << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<g stroke=\"black\" fill=\"none\">\n"
        << "<path d=\"M" << kMargL << " " << kMargT << " V" << kH - kMargB << " H"
        << kW - kMargR << "\"/>\n</g>\n";

    for (double t : ticks(xm)) {
        double x = px(t);
        svg << "<line x1=\"" << x << "\" y1=\"" << kH - kMargB << "\" x2=\"" << x
            << "\" y2=\"" << kH - kMargB + 5 << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << x << "\" y=\"" << kH - kMargB + 18
            << "\" font-size=\"11\" text-anchor=\"middle\">" << fmt_tick(t)
            << "</text>\n";
    }
    for (double t : ticks(ym)) {
        double y = py(t);
        svg << "<line x1=\"" << kMargL - 5 << "\" y1=\"" << y << "\" x2=\"" << kMargL
            << "\" y2=\"" << y << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << kMargL - 8 << "\" y=\"" << y + 4
            << "\" font-size=\"11\" text-anchor=\"end\">" << fmt_tick(t)
            << "</text>\n";
    }
    svg << "<text x=\"" << (kMargL + kW - kMargR) / 2 << "\" y=\"" << kH - 12
        << "\" font-size=\"13\" text-anchor=\"middle\">" << x_label << "</text>\n"
        << "<text x=\"16\" y=\"" << (kMargT + kH - kMargB) / 2
        << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
        << (kMargT + kH - kMargB) / 2 << ")\">" << y_label << "</text>\n";

    int ci = 0;
    for (const auto& s : series) {
        const char* color = colors[ci % 6];
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (log_log && (s.x[i] <= 0.0 || s.y[i] <= 0.0)) continue;
            svg << px(s.x[i]) << "," << py(s.y[i]) << " ";
        }
        svg << "\"/>\n";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (log_log && (s.x[i] <= 0.0 || s.y[i] <= 0.0)) continue;
            svg << "<circle cx=\"" << px(s.x[i]) << "\" cy=\"" << py(s.y[i])
                << "\" r=\"3\" fill=\"" << color << "\"/>\n";
        }
        if (!s.label.empty())
            svg << "<text x=\"" << kW - kMargR - 8 << "\" y=\""
                << kMargT + 16 + 16 * ci << "\" font-size=\"12\" text-anchor=\"end\" "
                << "fill=\"" << color << "\">" << s.label << "</text>\n";
        ++ci;
    }
    svg << "</svg>\n";

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << svg.str();
}

std::string version_string() { return JUMPLAB_VERSION; }

}  // namespace jumplab
