#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace hawkes {

/// Arrival times of a simple point process observed on [0, horizon].
///
/// Times are strictly increasing (simultaneous arrivals are rejected, never
/// merged) and lie in [0, horizon]. Marks and dimension labels are optional
/// and, when present, have one entry per arrival. Dimension labels are
/// 0-based here; the CSV format stores them 1-based.
class EventSequence {
public:
    EventSequence() = default;
    explicit EventSequence(std::vector<double> times, double horizon,
                           std::optional<std::vector<double>> marks = std::nullopt,
                           std::optional<std::vector<int>> dims = std::nullopt);

    /// An empty record observed on [0, horizon].
    static EventSequence empty(double horizon);

    [[nodiscard]] std::span<const double> times() const noexcept { return times_; }
    [[nodiscard]] double horizon() const noexcept { return horizon_; }
    [[nodiscard]] std::size_t size() const noexcept { return times_.size(); }
    [[nodiscard]] bool empty() const noexcept { return times_.empty(); }
    [[nodiscard]] double operator[](std::size_t i) const { return times_[i]; }

    [[nodiscard]] bool has_marks() const noexcept { return marks_.has_value(); }
    [[nodiscard]] std::span<const double> marks() const;
    [[nodiscard]] bool has_dims() const noexcept { return dims_.has_value(); }
    [[nodiscard]] std::span<const int> dims() const;

    /// Number of arrivals strictly before t (the history entering a left limit at t).
    [[nodiscard]] std::size_t count_before(double t) const noexcept;
    /// Number of arrivals at or before t, i.e. N(t).
    [[nodiscard]] std::size_t count_through(double t) const noexcept;

    /// Throws DataError naming m0 if any mark is below it (or marks are absent).
    void require_marks_at_least(double m0) const;
    /// Throws DataError unless dims are present and all lie in [0, d).
    void require_dims_below(int d) const;

    /// Same arrivals on a longer (or equal) window.
    [[nodiscard]] EventSequence with_horizon(double horizon) const;

private:
    std::vector<double> times_;
    double horizon_ = 0.0;
    std::optional<std::vector<double>> marks_;
    std::optional<std::vector<int>> dims_;
};

}  // namespace hawkes
