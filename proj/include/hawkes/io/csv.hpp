#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "hawkes/core/events.hpp"
#include "hawkes/renewal/renewal.hpp"

namespace hawkes::io {

/// Reads `time[,mark][,dim]` (header required, dims 1-based in the file).
/// The horizon defaults to the last arrival time. Every problem is reported
/// as a DataError carrying the 1-based file line.
[[nodiscard]] EventSequence read_events(std::istream& in, std::optional<double> horizon = std::nullopt);
[[nodiscard]] EventSequence read_events(const std::filesystem::path& path, std::optional<double> horizon = std::nullopt);

void write_events(std::ostream& out, const EventSequence& events);
void write_events(const std::filesystem::path& path, const EventSequence& events);

/// True if the first line of the file is the pre-binned header `count`.
[[nodiscard]] bool is_count_file(const std::filesystem::path& path);
[[nodiscard]] std::vector<std::uint64_t> read_counts(std::istream& in);
[[nodiscard]] std::vector<std::uint64_t> read_counts(const std::filesystem::path& path);
void write_counts(const std::filesystem::path& path, const std::vector<std::uint64_t>& counts);

void write_shocks(const std::filesystem::path& path, const std::vector<double>& times, const std::vector<double>& sizes);
void write_grid(const std::filesystem::path& path, const VolterraGrid& K, const VolterraGrid& M);

}  // namespace hawkes::io
