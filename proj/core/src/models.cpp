// Copyright qspec contributors
// SPDX-License-Identifier: Apache-2.0
#include "qspec/models.hpp"

#include "qspec/error.hpp"
#include "qspec/normal.hpp"

namespace qspec {

TimeSeries qar1_generate(std::size_t N, RandomStream& stream, double scale) {
  if (N < 2) throw Error(ErrorCode::invalid_argument, "series length must be at least 2");
  std::vector<double> x(N);
  double prev = 0.0;
  for (std::size_t t = 0; t < qar1_burn_in + N; ++t) {
    const double u = stream.uniform();
    prev = scale * (u - 0.5) * prev + normal_quantile(u);
    if (t >= qar1_burn_in) x[t - qar1_burn_in] = prev;
  }
  return TimeSeries(std::move(x));
}

ModelSpec qar1_model(double scale) {
  return {"qar1", {scale}, [scale](std::size_t N, RandomStream& s) { return qar1_generate(N, s, scale); }};
}

ModelSpec iid_gaussian_model() {
  return {"iid-gaussian", {}, [](std::size_t N, RandomStream& s) {
            std::vector<double> x(N);
            for (auto& v : x) v = normal_quantile(s.uniform());
            return TimeSeries(std::move(x));
          }};
}

ModelSpec iid_uniform_model() {
  return {"iid-uniform", {}, [](std::size_t N, RandomStream& s) {
            std::vector<double> x(N);
            for (auto& v : x) v = s.uniform();
            return TimeSeries(std::move(x));
          }};
}

ModelSpec make_model(std::string_view name, const std::vector<double>& params) {
  if (name == "qar1") {
    if (params.size() > 1) throw Error(ErrorCode::invalid_argument, "qar1 takes at most one parameter");
    return qar1_model(params.empty() ? 1.9 : params[0]);
  }
  if (!params.empty()) {
    throw Error(ErrorCode::invalid_argument, "model '" + std::string(name) + "' takes no parameters");
  }
  if (name == "iid-gaussian") return iid_gaussian_model();
  if (name == "iid-uniform") return iid_uniform_model();
  throw Error(ErrorCode::invalid_argument, "unknown model '" + std::string(name) + "'");
}

}  // namespace qspec
