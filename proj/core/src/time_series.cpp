// Copyright qspec contributors
// SPDX-License-Identifier: Apache-2.0
#include "qspec/time_series.hpp"

#include <cmath>

#include "qspec/error.hpp"

namespace qspec {

TimeSeries::TimeSeries(std::vector<double> observations) : obs_(std::move(observations)) {
  if (obs_.size() < 2) {
    throw Error(ErrorCode::invalid_argument, "a time series needs at least two observations");
  }
  for (double x : obs_) {
    if (!std::isfinite(x)) throw Error(ErrorCode::invalid_argument, "observations must be finite");
  }
}

TimeSeries TimeSeries::resample(std::span<const std::size_t> positions) const {
  std::vector<double> out;
  out.reserve(positions.size());
  for (std::size_t p : positions) {
    if (p >= obs_.size()) throw Error(ErrorCode::invalid_argument, "resample position out of range");
    out.push_back(obs_[p]);
  }
  return TimeSeries(std::move(out));
}

}  // namespace qspec
