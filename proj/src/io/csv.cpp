#include "wristml/csv.hpp"

#include "wristml/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace wristml::csv {
namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        cells.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return cells;
}

double parse_cell(std::string_view cell, std::size_t line) {
    double v = 0.0;
    const char* first = cell.data();
    const char* last = first + cell.size();
    if (!cell.empty() && *first == '+')
        ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (cell.empty() || ec != std::errc{} || ptr != last || !std::isfinite(v))
        throw ParseError("invalid number '" + std::string(cell) + "'", line);
    return v;
}

std::string join(const std::vector<std::string_view>& names) {
    std::string s;
    for (std::size_t i = 0; i < names.size(); ++i)
        s += (i ? "," : "") + std::string(names[i]);
    return s;
}

struct Column2 {
    std::vector<double> t;
    std::vector<double> v;
    double rate = 0.0;
};

Column2 read_timed(std::string_view text, std::string_view value_name) {
    const Table tab = parse(text, {"time_s", value_name});
    Column2 c;
    for (std::size_t r = 0; r < tab.rows.size(); ++r) {
        if (r > 0 && !(tab.rows[r][0] > tab.rows[r - 1][0]))
            throw ParseError("time_s must be strictly increasing", tab.row_lines[r]);
        c.t.push_back(tab.rows[r][0]);
        c.v.push_back(tab.rows[r][1]);
    }
    if (c.t.size() < 2)
        throw InsufficientDataError("signal needs at least 2 samples");
    std::vector<double> dt(c.t.size() - 1);
    for (std::size_t i = 0; i + 1 < c.t.size(); ++i)
        dt[i] = c.t[i + 1] - c.t[i];
    std::nth_element(dt.begin(), dt.begin() + static_cast<std::ptrdiff_t>(dt.size() / 2), dt.end());
    c.rate = 1.0 / dt[dt.size() / 2];
    return c;
}

std::string write_timed(std::string_view value_name, const std::vector<double>& t, const std::vector<double>& v) {
    std::string out = "time_s," + std::string(value_name) + "\n";
    for (std::size_t i = 0; i < t.size(); ++i)
        out += format_number(t[i]) + "," + format_number(v[i]) + "\n";
    return out;
}

}  // namespace

Table parse(std::string_view text, const std::vector<std::string_view>& expected) {
    Table tab;
    std::size_t line_no = 0;
    std::size_t start = 0;
    bool have_header = false;
    while (start < text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos)
            end = text.size();
        const auto line = trim(text.substr(start, end - start));
        start = end + 1;
        ++line_no;
        if (line.empty())
            continue;
        const auto cells = split(line);
        if (!have_header) {
            for (const auto c : cells)
                tab.header.emplace_back(c);
            if (!expected.empty() && cells != expected)
                throw ParseError("expected header '" + join(expected) + "', got '" + std::string(line) + "'", line_no);
            have_header = true;
            continue;
        }
        if (cells.size() != tab.header.size())
            throw ParseError("expected " + std::to_string(tab.header.size()) + " columns, got " +
                                 std::to_string(cells.size()),
                             line_no);
        std::vector<double> row;
        row.reserve(cells.size());
        for (const auto c : cells)
            row.push_back(parse_cell(c, line_no));
        tab.rows.push_back(std::move(row));
        tab.row_lines.push_back(line_no);
    }
    if (!have_header)
        throw ParseError("missing header line", std::max<std::size_t>(line_no, 1));
    return tab;
}

std::string format_number(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

SampledSignal read_ecg(std::string_view text) {
    auto c = read_timed(text, "ecg");
    return {std::move(c.t), std::move(c.v), c.rate};
}

std::string write_ecg(const SampledSignal& ecg) { return write_timed("ecg", ecg.time_s, ecg.values); }

GsrTrace read_gsr(std::string_view text) {
    auto c = read_timed(text, "gsr_uS");
    return {std::move(c.t), std::move(c.v), c.rate};
}

std::string write_gsr(const GsrTrace& gsr) { return write_timed("gsr_uS", gsr.time_s, gsr.conductance_us); }

std::string write_features(const std::vector<FeatureVector>& rows) {
    std::string out = "rmssd_ms,sdsd_ms,nn50,gsrh_uS,gsrl_s\n";
    for (const auto& f : rows)
        out += format_number(f.rmssd_ms) + "," + format_number(f.sdsd_ms) + "," + std::to_string(f.nn50) + "," +
               format_number(f.gsrh_us) + "," + format_number(f.gsrl_s) + "\n";
    return out;
}

LabeledFeatures read_features(std::string_view text) {
    const Table tab = parse(text);
    std::vector<std::string_view> base(kFeatureNames.begin(), kFeatureNames.end());
    std::vector<std::string_view> labeled = base;
    labeled.push_back("label");
    const std::vector<std::string_view> header(tab.header.begin(), tab.header.end());
    const bool has_label = header == labeled;
    if (header != base && !has_label)
        throw ParseError("expected header '" + join(base) + "' (optionally followed by ',label')", 1);

    LabeledFeatures out;
    for (std::size_t r = 0; r < tab.rows.size(); ++r) {
        const auto& row = tab.rows[r];
        const auto count = [&](double v, const char* what) {
            if (v < 0.0 || v != std::floor(v))
                throw ParseError(std::string(what) + " must be a non-negative integer", tab.row_lines[r]);
            return static_cast<std::size_t>(v);
        };
        FeatureVector f;
        f.rmssd_ms = row[0];
        f.sdsd_ms = row[1];
        f.nn50 = count(row[2], "nn50");
        f.gsrh_us = row[3];
        f.gsrl_s = row[4];
        out.features.push_back(f);
        if (has_label)
            out.labels.push_back(count(row[5], "label"));
    }
    return out;
}

}  // namespace wristml::csv
