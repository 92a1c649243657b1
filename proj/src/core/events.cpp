#include "hawkes/core/events.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hawkes/core/error.hpp"

namespace hawkes {

EventSequence::EventSequence(std::vector<double> times, double horizon,
                             std::optional<std::vector<double>> marks,
                             std::optional<std::vector<int>> dims)
    : times_(std::move(times)), horizon_(horizon), marks_(std::move(marks)), dims_(std::move(dims)) {
    if (!std::isfinite(horizon_) || horizon_ < 0.0) {
        throw DataError("horizon must be finite and non-negative");
    }
    for (std::size_t i = 0; i < times_.size(); ++i) {
        const double t = times_[i];
        if (!std::isfinite(t)) {
            throw DataError("event " + std::to_string(i) + " has a non-finite time");
        }
        if (t < 0.0 || t > horizon_) {
            throw DataError("event " + std::to_string(i) + " at time " + std::to_string(t) +
                            " lies outside the observation window [0, " + std::to_string(horizon_) + "]");
        }
        if (i > 0 && t <= times_[i - 1]) {
            throw DataError(t == times_[i - 1]
                                ? "duplicate event time " + std::to_string(t) + " at event " + std::to_string(i)
                                : "event times not increasing at event " + std::to_string(i));
        }
    }
    if (marks_ && marks_->size() != times_.size()) {
        throw DataError("marks length differs from times length");
    }
    if (marks_) {
        for (double m : *marks_) {
            if (!std::isfinite(m)) throw DataError("non-finite mark");
        }
    }
    if (dims_ && dims_->size() != times_.size()) {
        throw DataError("dims length differs from times length");
    }
    if (dims_) {
        for (int k : *dims_) {
            if (k < 0) throw DataError("negative dimension label");
        }
    }
}

EventSequence EventSequence::empty(double horizon) { return EventSequence({}, horizon); }

std::span<const double> EventSequence::marks() const {
    if (!marks_) throw DataError("event sequence carries no marks");
    return *marks_;
}

std::span<const int> EventSequence::dims() const {
    if (!dims_) throw DataError("event sequence carries no dimension labels");
    return *dims_;
}

std::size_t EventSequence::count_before(double t) const noexcept {
    return static_cast<std::size_t>(std::lower_bound(times_.begin(), times_.end(), t) - times_.begin());
}

std::size_t EventSequence::count_through(double t) const noexcept {
    return static_cast<std::size_t>(std::upper_bound(times_.begin(), times_.end(), t) - times_.begin());
}

void EventSequence::require_marks_at_least(double m0) const {
    if (!marks_) throw DataError("marks required (minimum magnitude m0 = " + std::to_string(m0) + ")");
    for (std::size_t i = 0; i < marks_->size(); ++i) {
        if ((*marks_)[i] < m0) {
            throw DataError("mark " + std::to_string((*marks_)[i]) + " at event " + std::to_string(i) +
                            " is below the minimum magnitude m0 = " + std::to_string(m0));
        }
    }
}

void EventSequence::require_dims_below(int d) const {
    if (!dims_) throw DataError("dimension labels required");
    for (std::size_t i = 0; i < dims_->size(); ++i) {
        if ((*dims_)[i] >= d) {
            throw DataError("event " + std::to_string(i) + " has dimension " + std::to_string((*dims_)[i] + 1) +
                            " but the model has d = " + std::to_string(d));
        }
    }
}

EventSequence EventSequence::with_horizon(double horizon) const {
    return EventSequence(times_, horizon, marks_, dims_);
}

}  // namespace hawkes
