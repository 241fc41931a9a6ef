#include "shiftbeat/beat_sequence.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "shiftbeat/errors.hpp"

namespace shiftbeat {

BeatSequence::BeatSequence(std::vector<double> times) : times_(std::move(times)) {
  for (std::size_t i = 0; i < times_.size(); ++i) {
    const double t = times_[i];
    if (!std::isfinite(t)) {
      throw InvalidInputError("event " + std::to_string(i) + " is not finite");
    }
    if (t < 0.0) {
      throw InvalidInputError("event " + std::to_string(i) + " is negative");
    }
    if (i > 0 && t < times_[i - 1]) {
      throw InvalidInputError("event " + std::to_string(i) +
                              " is earlier than its predecessor");
    }
  }
}

BeatSequence::BeatSequence(std::initializer_list<double> times)
    : BeatSequence(std::vector<double>(times)) {}

BeatSequence BeatSequence::from_unsorted(std::vector<double> times) {
  // NaN breaks the sort's ordering; reject it before sorting.
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (std::isnan(times[i])) {
      throw InvalidInputError("event " + std::to_string(i) + " is not finite");
    }
  }
  std::sort(times.begin(), times.end());
  return BeatSequence(std::move(times));
}

}  // namespace shiftbeat
