#include "relcpd/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string_view>

#include "relcpd/error.hpp"

namespace relcpd {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

bool parse_double(std::string_view cell, double& out) {
    cell = trim(cell);
    if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
    if (cell.empty()) return false;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), out);
    return ec == std::errc() && ptr == cell.data() + cell.size();
}

bool parse_index(std::string_view cell, Index& out) {
    cell = trim(cell);
    if (cell.empty()) return false;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), out);
    return ec == std::errc() && ptr == cell.data() + cell.size();
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        cells.push_back(line.substr(start, comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return cells;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::io, "cannot open '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::vector<std::string> nonblank_lines(const std::string& text, std::vector<std::size_t>& line_numbers) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (trim(line).empty()) continue;
        lines.push_back(line);
        line_numbers.push_back(number);
    }
    return lines;
}

// Numeric table with an optional header row.
std::vector<std::vector<double>> parse_table(const std::filesystem::path& path,
                                             std::vector<std::string>* header) {
    std::vector<std::size_t> numbers;
    const auto lines = nonblank_lines(read_file(path), numbers);
    if (lines.empty()) throw Error(ErrorKind::empty_input, "'" + path.string() + "' is empty");

    std::size_t first = 0;
    {
        const auto cells = split(lines[0]);
        bool numeric = true;
        double scratch = 0;
        for (const auto cell : cells) numeric = numeric && parse_double(cell, scratch);
        if (!numeric) {
            first = 1;
            if (header) {
                for (const auto cell : cells) header->emplace_back(trim(cell));
            }
        }
    }
    if (first == lines.size()) {
        throw Error(ErrorKind::empty_input, "'" + path.string() + "' has a header but no data");
    }

    std::vector<std::vector<double>> rows;
    std::size_t width = 0;
    for (std::size_t r = first; r < lines.size(); ++r) {
        const auto cells = split(lines[r]);
        if (r == first) width = cells.size();
        if (cells.size() != width) {
            throw Error(ErrorKind::parse, path.string() + ": ragged row " + std::to_string(numbers[r]) +
                                              " has " + std::to_string(cells.size()) +
                                              " columns, expected " + std::to_string(width));
        }
        std::vector<double> row(width);
        for (std::size_t c = 0; c < width; ++c) {
            if (!parse_double(cells[c], row[c])) {
                throw Error(ErrorKind::parse, path.string() + ": non-numeric cell at row " +
                                                  std::to_string(numbers[r]) + ", column " +
                                                  std::to_string(c + 1));
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

std::string format_number(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

std::filesystem::path truth_sidecar(const std::filesystem::path& data_path) {
    auto p = data_path;
    p.replace_extension(".truth");
    return p;
}

TimeSeries ingest_csv(const std::filesystem::path& path) {
    const auto rows = parse_table(path, nullptr);
    TimeSeries series;
    series.name = path.stem().string();
    const auto T = static_cast<Index>(rows.size());
    const auto d = static_cast<Index>(rows.front().size());
    series.values.resize(d, T);
    for (Index t = 0; t < T; ++t) {
        for (Index c = 0; c < d; ++c) series.values(c, t) = rows[static_cast<std::size_t>(t)][static_cast<std::size_t>(c)];
    }
    const auto sidecar = truth_sidecar(path);
    if (sidecar != path && std::filesystem::exists(sidecar)) series.change_points = read_truth(sidecar);
    series.validate();
    return series;
}

std::vector<Index> read_truth(const std::filesystem::path& path) {
    std::vector<std::size_t> numbers;
    const auto lines = nonblank_lines(read_file(path), numbers);
    std::vector<Index> out;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        Index v = 0;
        if (!parse_index(lines[i], v)) {
            throw Error(ErrorKind::parse, path.string() + ": line " + std::to_string(numbers[i]) +
                                              " is not an integer");
        }
        out.push_back(v);
    }
    return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::io, "cannot write '" + path.string() + "'");
    out << text;
    if (!out) throw Error(ErrorKind::io, "write failed for '" + path.string() + "'");
}

void write_series_csv(const std::filesystem::path& path, const TimeSeries& series) {
    std::string text;
    for (Index t = 0; t < series.length(); ++t) {
        for (Index c = 0; c < series.dim(); ++c) {
            if (c > 0) text += ',';
            text += format_number(series.values(c, t));
        }
        text += '\n';
    }
    write_text(path, text);
}

void write_truth(const std::filesystem::path& path, const std::vector<Index>& change_points) {
    std::string text;
    for (const Index cp : change_points) text += std::to_string(cp) + '\n';
    write_text(path, text);
}

void write_scores_csv(const std::filesystem::path& path, const ScoreSeries& scores) {
    std::string text = "boundary,score\n";
    for (std::size_t i = 0; i < scores.scores.size(); ++i) {
        text += std::to_string(scores.boundaries[i]) + ',' + format_number(scores.scores[i]) + '\n';
    }
    write_text(path, text);
}

ScoreSeries read_scores_csv(const std::filesystem::path& path) {
    const auto rows = parse_table(path, nullptr);
    if (rows.front().size() != 2) {
        throw Error(ErrorKind::parse, path.string() + ": expected two columns (boundary, score)");
    }
    ScoreSeries out;
    for (const auto& row : rows) {
        const double b = row[0];
        if (b != std::floor(b)) {
            throw Error(ErrorKind::parse, path.string() + ": boundary " + format_number(b) +
                                              " is not an integer");
        }
        out.boundaries.push_back(static_cast<Index>(b));
        out.scores.push_back(row[1]);
    }
    return out;
}

void write_alarms_csv(const std::filesystem::path& path, const AlarmList& alarms) {
    std::string text = "time,score\n";
    for (std::size_t i = 0; i < alarms.size(); ++i) {
        text += std::to_string(alarms.times[i]) + ',' + format_number(alarms.scores[i]) + '\n';
    }
    write_text(path, text);
}

void write_roc_csv(const std::filesystem::path& path, const RocCurve& curve) {
    std::string text = "threshold,fpr,tpr\n";
    for (std::size_t i = 0; i < curve.points.size(); ++i) {
        text += format_number(curve.thresholds[i]) + ',' + format_number(curve.points[i].fpr) + ',' +
                format_number(curve.points[i].tpr) + '\n';
    }
    write_text(path, text);
}

}  // namespace relcpd
