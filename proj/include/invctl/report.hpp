#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace invctl::report {

/// Fixed-format number for CSV output; identical inputs give identical bytes.
std::string num(double v);

struct LineSeries {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
};

/// Minimal standalone SVG line chart with axes, ticks and a legend.
std::string line_chart_svg(const std::string& title, const std::string& x_label,
                           const std::string& y_label, std::span<const LineSeries> series);

/// Writes `content` to `path`, creating parent directories. Throws on I/O failure.
void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace invctl::report
