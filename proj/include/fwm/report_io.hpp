#pragma once

// Deterministic text emission: fixed 12-significant-digit numbers, '\n' line
// endings, no locale. Files are written through a temp file and a rename.

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fwm {

inline constexpr int kReportDigits = 12;

/// Shortest of fixed/scientific with 12 significant digits; "nan", "inf", "-inf" for non-finite.
std::string format_number(double value);

class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header);

    CsvTable& row(std::vector<std::string> cells);
    std::string render() const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

/// Quotes a cell when it holds a comma, quote or newline.
std::string csv_cell(std::string_view text);

struct PlotSeries {
    std::span<const double> x;
    std::span<const double> y;
};

struct PlotLabels {
    std::string title;
    std::string x_label;
    std::string y_label;
};

/// Single-polyline SVG with axes, tick values and labels.
std::string render_svg_plot(const PlotSeries& series, const PlotLabels& labels);

/// Left-aligned "key  value" lines.
std::string render_key_values(std::span<const std::pair<std::string, std::string>> rows);

void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace fwm
