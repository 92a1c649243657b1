#include "hawkes/io/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "hawkes/core/error.hpp"

namespace hawkes::io {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        out.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

double parse_real(std::string_view field, std::size_t line, std::string_view what) {
    double v = 0.0;
    const auto* end = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(field.data(), end, v);
    if (field.empty() || ec != std::errc() || ptr != end) {
        throw DataError(fmt::format("{} '{}' is not a number", what, field), line);
    }
    if (!std::isfinite(v)) throw DataError(fmt::format("{} '{}' is not finite", what, field), line);
    return v;
}

long long parse_integer(std::string_view field, std::size_t line, std::string_view what) {
    long long v = 0;
    const auto* end = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(field.data(), end, v);
    if (field.empty() || ec != std::errc() || ptr != end) {
        throw DataError(fmt::format("{} '{}' is not an integer", what, field), line);
    }
    return v;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError(fmt::format("cannot open {}", path.string()));
    return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError(fmt::format("cannot write {}", path.string()));
    return out;
}

}  // namespace

EventSequence read_events(std::istream& in, std::optional<double> horizon) {
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(in, line)) throw DataError("empty file: expected a header `time[,mark][,dim]`", 1);
    ++lineno;
    std::string_view header = line;
    if (header.size() >= 3 && header.substr(0, 3) == "\xEF\xBB\xBF") header.remove_prefix(3);
    const auto columns = split(header);
    int time_col = -1;
    int mark_col = -1;
    int dim_col = -1;
    for (std::size_t c = 0; c < columns.size(); ++c) {
        const auto name = columns[c];
        int* slot = name == "time" ? &time_col : name == "mark" ? &mark_col : name == "dim" ? &dim_col : nullptr;
        if (!slot) throw DataError(fmt::format("unknown column '{}' (expected time[,mark][,dim])", name), lineno);
        if (*slot >= 0) throw DataError(fmt::format("column '{}' appears twice", name), lineno);
        *slot = static_cast<int>(c);
    }
    if (time_col != 0) throw DataError("the first column must be 'time'", lineno);

    std::vector<double> times;
    std::vector<double> marks;
    std::vector<int> dims;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        const auto fields = split(line);
        if (fields.size() != columns.size()) {
            throw DataError(fmt::format("expected {} fields, found {}", columns.size(), fields.size()), lineno);
        }
        const double t = parse_real(fields[0], lineno, "time");
        if (t < 0.0) throw DataError(fmt::format("negative time {}", t), lineno);
        if (!times.empty() && t == times.back()) throw DataError(fmt::format("duplicate event time {}", t), lineno);
        if (!times.empty() && t < times.back()) {
            throw DataError(fmt::format("time {} is earlier than the previous time {}", t, times.back()), lineno);
        }
        if (horizon && t > *horizon) {
            throw DataError(fmt::format("time {} is beyond the horizon {}", t, *horizon), lineno);
        }
        times.push_back(t);
        if (mark_col >= 0) marks.push_back(parse_real(fields[static_cast<std::size_t>(mark_col)], lineno, "mark"));
        if (dim_col >= 0) {
            const long long d = parse_integer(fields[static_cast<std::size_t>(dim_col)], lineno, "dim");
            if (d < 1) throw DataError(fmt::format("dim {} must be >= 1", d), lineno);
            dims.push_back(static_cast<int>(d - 1));
        }
    }
    const double h = horizon.value_or(times.empty() ? 0.0 : times.back());
    std::optional<std::vector<double>> m;
    std::optional<std::vector<int>> d;
    if (mark_col >= 0) m = std::move(marks);
    if (dim_col >= 0) d = std::move(dims);
    return EventSequence(std::move(times), h, std::move(m), std::move(d));
}

EventSequence read_events(const std::filesystem::path& path, std::optional<double> horizon) {
    auto in = open_in(path);
    return read_events(in, horizon);
}

void write_events(std::ostream& out, const EventSequence& events) {
    fmt::print(out, "time{}{}\n", events.has_marks() ? ",mark" : "", events.has_dims() ? ",dim" : "");
    for (std::size_t i = 0; i < events.size(); ++i) {
        fmt::print(out, "{}", events[i]);
        if (events.has_marks()) fmt::print(out, ",{}", events.marks()[i]);
        if (events.has_dims()) fmt::print(out, ",{}", events.dims()[i] + 1);
        out << '\n';
    }
}

void write_events(const std::filesystem::path& path, const EventSequence& events) {
    auto out = open_out(path);
    write_events(out, events);
}

bool is_count_file(const std::filesystem::path& path) {
    auto in = open_in(path);
    std::string line;
    if (!std::getline(in, line)) return false;
    return trim(line) == "count";
}

std::vector<std::uint64_t> read_counts(std::istream& in) {
    std::string line;
    std::size_t lineno = 1;
    if (!std::getline(in, line) || trim(line) != "count") throw DataError("expected the header `count`", 1);
    std::vector<std::uint64_t> counts;
    while (std::getline(in, line)) {
        ++lineno;
        const auto field = trim(line);
        if (field.empty()) continue;
        const long long v = parse_integer(field, lineno, "count");
        if (v < 0) throw DataError(fmt::format("negative count {}", v), lineno);
        counts.push_back(static_cast<std::uint64_t>(v));
    }
    return counts;
}

std::vector<std::uint64_t> read_counts(const std::filesystem::path& path) {
    auto in = open_in(path);
    return read_counts(in);
}

void write_counts(const std::filesystem::path& path, const std::vector<std::uint64_t>& counts) {
    auto out = open_out(path);
    out << "count\n";
    for (auto c : counts) fmt::print(out, "{}\n", c);
}

void write_shocks(const std::filesystem::path& path, const std::vector<double>& times, const std::vector<double>& sizes) {
    auto out = open_out(path);
    out << "time,jump\n";
    for (std::size_t i = 0; i < times.size(); ++i) fmt::print(out, "{},{}\n", times[i], sizes[i]);
}

void write_grid(const std::filesystem::path& path, const VolterraGrid& K, const VolterraGrid& M) {
    auto out = open_out(path);
    out << "t,K,M\n";
    for (std::size_t i = 0; i < K.size(); ++i) fmt::print(out, "{},{},{}\n", K.time(i), K.values[i], M.values[i]);
}

}  // namespace hawkes::io
