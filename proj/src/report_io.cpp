#include "fwm/report_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <system_error>

#include "fwm/error.hpp"

namespace fwm {

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    if (value == 0.0) return "0";  // folds -0 too
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, kReportDigits);
    return std::string(buf, res.ptr);
}

std::string csv_cell(std::string_view text) {
    if (text.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(text);
    std::string out = "\"";
    for (const char c : text) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

CsvTable& CsvTable::row(std::vector<std::string> cells) {
    if (cells.size() != header_.size()) throw Error("CSV row width does not match header");
    rows_.push_back(std::move(cells));
    return *this;
}

std::string CsvTable::render() const {
    std::string out;
    const auto emit = [&out](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out += ',';
            out += csv_cell(cells[i]);
        }
        out += '\n';
    };
    emit(header_);
    for (const auto& r : rows_) emit(r);
    return out;
}

namespace {

std::string xml_escape(std::string_view text) {
    std::string out;
    for (const char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string coord(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 2);
    return std::string(buf, res.ptr);
}

}  // namespace

std::string render_svg_plot(const PlotSeries& series, const PlotLabels& labels) {
    if (series.x.size() != series.y.size() || series.x.empty()) throw Error("plot needs equal, non-empty x and y");

    constexpr double width = 800, height = 500, left = 80, right = 20, top = 40, bottom = 60;
    const auto [xmin_it, xmax_it] = std::ranges::minmax_element(series.x);
    double ymin = INFINITY, ymax = -INFINITY;
    for (const double y : series.y) {
        if (!std::isfinite(y)) continue;
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
    }
    double xmin = *xmin_it, xmax = *xmax_it;
    if (!(ymax > ymin)) {
        ymin = std::isfinite(ymin) ? ymin - 1.0 : -1.0;
        ymax = ymin + 2.0;
    }
    if (!(xmax > xmin)) xmax = xmin + 1.0;

    const double pw = width - left - right, ph = height - top - bottom;
    const auto px = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
    const auto py = [&](double y) { return top + (ymax - y) / (ymax - ymin) * ph; };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"500\" viewBox=\"0 0 800 500\">\n";
    svg += "<rect width=\"800\" height=\"500\" fill=\"white\"/>\n";
    svg += "<text x=\"400\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" + xml_escape(labels.title) + "</text>\n";
    svg += "<line x1=\"" + coord(left) + "\" y1=\"" + coord(top + ph) + "\" x2=\"" + coord(left + pw) + "\" y2=\"" +
           coord(top + ph) + "\" stroke=\"black\"/>\n";
    svg += "<line x1=\"" + coord(left) + "\" y1=\"" + coord(top) + "\" x2=\"" + coord(left) + "\" y2=\"" +
           coord(top + ph) + "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double xv = xmin + (xmax - xmin) * i / 4.0;
        const double yv = ymin + (ymax - ymin) * i / 4.0;
        svg += "<text x=\"" + coord(px(xv)) + "\" y=\"" + coord(top + ph + 18) +
               "\" text-anchor=\"middle\" font-size=\"11\">" + format_number(xv) + "</text>\n";
        svg += "<text x=\"" + coord(left - 6) + "\" y=\"" + coord(py(yv) + 4) +
               "\" text-anchor=\"end\" font-size=\"11\">" + format_number(yv) + "</text>\n";
    }
    svg += "<text x=\"" + coord(left + pw / 2) + "\" y=\"" + coord(height - 14) +
           "\" text-anchor=\"middle\" font-size=\"13\">" + xml_escape(labels.x_label) + "</text>\n";
    svg += "<text x=\"18\" y=\"" + coord(top + ph / 2) + "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 " +
           coord(top + ph / 2) + ")\">" + xml_escape(labels.y_label) + "</text>\n";

    svg += "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (std::size_t i = 0; i < series.x.size(); ++i) {
        if (!std::isfinite(series.y[i])) continue;
        if (!first) svg += ' ';
        first = false;
        svg += coord(px(series.x[i])) + "," + coord(py(series.y[i]));
    }
    svg += "\"/>\n</svg>\n";
    return svg;
}

std::string render_key_values(std::span<const std::pair<std::string, std::string>> rows) {
    std::size_t key_width = 0;
    for (const auto& [k, v] : rows) key_width = std::max(key_width, k.size());
    std::string out;
    for (const auto& [k, v] : rows) {
        out += k;
        out.append(key_width - k.size() + 2, ' ');
        out += v;
        out += '\n';
    }
    return out;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open " + tmp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) throw Error("write failed for " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw Error("cannot move output into place: " + path.string());
    }
}

}  // namespace fwm
