#ifndef JUMPLAB_TABLE_HPP
#define JUMPLAB_TABLE_HPP

#include <string>
#include <utility>
#include <vector>

namespace jumplab {

// shortest decimal form with up to 17 significant digits (round-trips doubles)
std::string format_g17(double v);

// CSV table: first row is the header, cells are preformatted strings
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> cells);
    // appends the run metadata as four trailing columns on every row
    void stamp_metadata(std::uint64_t seed, double epsilon, long n,
                        const std::string& version);
};

void write_csv(const std::string& path, const Table& table);

// key = value lines; when with_timestamp, the first line is
// "# generated <iso8601>" and is the only line excluded from reproducibility
void write_summary(const std::string& path,
                   const std::vector<std::pair<std::string, std::string>>& items,
                   bool with_timestamp = true);

struct PlotSeries {
    std::string label;
    std::vector<double> x, y;
};

// static scatter+line plot; log_log transforms both axes (positive data only)
void write_svg_plot(const std::string& path, const std::vector<PlotSeries>& series,
                    const std::string& x_label, const std::string& y_label,
                    bool log_log);

// build identifier stamped into every table
std::string version_string();

}  // namespace jumplab

#endif
