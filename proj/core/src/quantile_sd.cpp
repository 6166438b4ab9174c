// Copyright qspec contributors
// SPDX-License-Identifier: Apache-2.0
#include "qspec/quantile_sd.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

#include "json.hpp"

#include "qspec/error.hpp"
#include "qspec/freq_rep.hpp"
#include "qspec/grid.hpp"
#include "qspec/parallel.hpp"
#include "qspec/quantile_pg.hpp"

namespace qspec {
namespace {

constexpr char kMagic[8] = {'Q', 'S', 'P', 'E', 'C', 'S', 'D', '\0'};
constexpr std::uint32_t kFormatVersion = 1;
constexpr std::size_t kBatch = 64;

void validate_sd_levels(const std::vector<double>& levels, SdType type) {
  validate_levels(levels, type == SdType::copula ? LevelDomain::open_unit : LevelDomain::real_line);
}

ComplexLattice3 copy_periodogram(const ModelSpec& model, const QuantileSDState& st, std::size_t copy) {
  RandomStream stream = RandomStream(st.seed).split(copy);
  const TimeSeries y = model.generate(st.N, stream);
  const auto pg = quantile_pg(clipped_ft(y, st.levels, st.type == SdType::copula));
  const auto& v = pg.values();
  const std::size_t J = v.extent(0);
  const std::size_t K = v.extent(1);
  ComplexLattice3 out({J, K, K});
  for (std::size_t j = 0; j < J; ++j) {
    for (std::size_t k1 = 0; k1 < K; ++k1) {
      for (std::size_t k2 = 0; k2 < K; ++k2) out(j, k1, k2) = v(j, k1, k2, 0);
    }
  }
  return out;
}

void welford_update(QuantileSDState& st, const ComplexLattice3& x) {
  st.R += 1;
  const double count = static_cast<double>(st.R);
  auto mean = st.mean.flat();
  auto m2 = st.m2.flat();
  const auto in = x.flat();
  for (std::size_t i = 0; i < in.size(); ++i) {
    const double dre = in[i].real() - mean[i].real();
    const double dim = in[i].imag() - mean[i].imag();
    const double mre = mean[i].real() + dre / count;
    const double mim = mean[i].imag() + dim / count;
    m2[i] = Complex(m2[i].real() + dre * (in[i].real() - mre), m2[i].imag() + dim * (in[i].imag() - mim));
    mean[i] = Complex(mre, mim);
  }
}

// Copies are simulated concurrently in batches and merged in ascending order.
void accumulate(QuantileSDState& st, const ModelSpec& model, std::size_t delta_R) {
  std::size_t done = 0;
  while (done < delta_R) {
    const std::size_t batch = std::min(kBatch, delta_R - done);
    const std::size_t first = st.next_copy();
    std::vector<ComplexLattice3> pgs(batch);
    parallel_for(batch, [&](std::size_t i) { pgs[i] = copy_periodogram(model, st, first + i); });
    for (const auto& pg : pgs) welford_update(st, pg);
    done += batch;
  }
  st.values = smooth_mean_lattice(st.mean, st.N);
}

void check_compatible(const QuantileSDState& a, const QuantileSDState& b) {
  if (a.N != b.N || a.levels != b.levels || a.type != b.type || a.seed != b.seed ||
      a.model_name != b.model_name || a.model_params != b.model_params) {
    throw Error(ErrorCode::grid_mismatch, "states describe different simulations");
  }
}

// Little-endian byte sink/source.
void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xffU));
}
void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xffU));
}
void put_lattice(std::string& out, const ComplexLattice3& lattice) {
  for (const Complex& c : lattice.flat()) {
    put_u64(out, std::bit_cast<std::uint64_t>(c.real()));
    put_u64(out, std::bit_cast<std::uint64_t>(c.imag()));
  }
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

class Reader {
 public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}

  std::uint64_t u(int width) {
    need(static_cast<std::size_t>(width));
    std::uint64_t v = 0;
    for (int i = 0; i < width; ++i) {
      v |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes_[pos_ + static_cast<std::size_t>(i)]))
           << (8 * i);
    }
    pos_ += static_cast<std::size_t>(width);
    return v;
  }
  std::string_view take(std::size_t count) {
    need(count);
    const auto s = bytes_.substr(pos_, count);
    pos_ += count;
    return s;
  }
  ComplexLattice3 lattice(const std::array<std::size_t, 3>& dims) {
    ComplexLattice3 out(dims);
    for (Complex& c : out.flat()) {
      const double re = std::bit_cast<double>(u(8));
      const double im = std::bit_cast<double>(u(8));
      c = Complex(re, im);
    }
    return out;
  }
  [[nodiscard]] std::size_t position() const noexcept { return pos_; }

 private:
  void need(std::size_t count) const {
    if (bytes_.size() - pos_ < count) throw Error(ErrorCode::corrupt_state, "state file is truncated");
  }
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string_view to_string(SdType type) noexcept { return type == SdType::copula ? "copula" : "laplace"; }

SdType parse_sd_type(std::string_view name) {
  if (name == "copula") return SdType::copula;
  if (name == "laplace") return SdType::laplace;
  throw Error(ErrorCode::invalid_argument, "unknown spectrum type '" + std::string(name) + "'");
}

std::optional<ComplexLattice3> QuantileSDState::std_error() const {
  if (R < 2) return std::nullopt;
  ComplexLattice3 out(m2.extents());
  const double denom = static_cast<double>(R) * static_cast<double>(R - 1);
  const auto in = m2.flat();
  auto dst = out.flat();
  for (std::size_t i = 0; i < in.size(); ++i) {
    dst[i] = Complex(std::sqrt(in[i].real() / denom), std::sqrt(in[i].imag() / denom));
  }
  return out;
}

namespace {
QSpecQuantity as_quantity(const QuantileSDState& st, const ComplexLattice3& lattice) {
  const auto& e = lattice.extents();
  ComplexLattice4 values({e[0], e[1], e[2], 1});
  std::copy(lattice.flat().begin(), lattice.flat().end(), values.flat().begin());
  return QSpecQuantity::hermitian(st.N, st.levels, st.levels, std::move(values));
}
}  // namespace

QSpecQuantity QuantileSDState::quantity() const { return as_quantity(*this, values); }
QSpecQuantity QuantileSDState::mean_quantity() const { return as_quantity(*this, mean); }

std::size_t sd_smoothing_halfwidth(std::size_t N) noexcept {
  const auto m = static_cast<std::size_t>(std::llround(std::pow(static_cast<double>(N), 0.3)));
  return std::max<std::size_t>(1, m);
}

ComplexLattice3 smooth_mean_lattice(const ComplexLattice3& mean, std::size_t N) {
  const auto& e = mean.extents();
  const std::size_t slab = mean.slab_size();
  const auto m = static_cast<std::int64_t>(sd_smoothing_halfwidth(N));
  const auto nn = static_cast<std::int64_t>(N);
  ComplexLattice3 out(e);
  std::vector<Complex> acc(slab);
  for (std::size_t j = 0; j < e[0]; ++j) {
    std::fill(acc.begin(), acc.end(), Complex{});
    std::size_t count = 0;
    for (std::int64_t s = static_cast<std::int64_t>(j) - m; s <= static_cast<std::int64_t>(j) + m; ++s) {
      std::int64_t r = s % nn;
      if (r < 0) r += nn;
      if (r == 0) continue;
      const bool conj = 2 * r > nn;
      const auto idx = static_cast<std::size_t>(conj ? nn - r : r);
      const Complex* src = mean.flat().data() + idx * slab;
      for (std::size_t i = 0; i < slab; ++i) acc[i] += conj ? std::conj(src[i]) : src[i];
      ++count;
    }
    Complex* dst = out.flat().data() + j * slab;
    for (std::size_t i = 0; i < slab; ++i) dst[i] = acc[i] / static_cast<double>(count);
  }
  return out;
}

QuantileSDState quantile_sd(const ModelSpec& model, std::size_t N, std::vector<double> levels, std::size_t R,
                            std::uint64_t seed, SdType type, std::size_t first_copy) {
  if (N < 8) throw Error(ErrorCode::invalid_argument, "series length must be at least 8");
  if (R < 1) throw Error(ErrorCode::invalid_argument, "at least one copy is required");
  validate_sd_levels(levels, type);
  QuantileSDState st;
  st.N = N;
  st.levels = std::move(levels);
  st.type = type;
  st.model_name = model.name;
  st.model_params = model.params;
  st.seed = seed;
  st.first_copy = first_copy;
  const std::size_t K = st.levels.size();
  st.mean = ComplexLattice3({N / 2 + 1, K, K});
  st.m2 = ComplexLattice3({N / 2 + 1, K, K});
  accumulate(st, model, R);
  return st;
}

QuantileSDState increase_precision(QuantileSDState state, std::size_t delta_R) {
  const ModelSpec model = make_model(state.model_name, state.model_params);
  return increase_precision(std::move(state), model, delta_R);
}

QuantileSDState increase_precision(QuantileSDState state, const ModelSpec& model, std::size_t delta_R) {
  if (model.name != state.model_name || model.params != state.model_params) {
    throw Error(ErrorCode::grid_mismatch, "model differs from the one recorded in the state");
  }
  if (delta_R > 0) accumulate(state, model, delta_R);
  return state;
}

QuantileSDState merge(const QuantileSDState& a, const QuantileSDState& b) {
  check_compatible(a, b);
  if (a.R == 0) return b;
  if (b.R == 0) return a;
  if (b.first_copy != a.next_copy()) {
    throw Error(ErrorCode::invalid_argument, "states must cover adjacent copy ranges");
  }
  QuantileSDState out = a;
  out.R = a.R + b.R;
  const double na = static_cast<double>(a.R);
  const double nb = static_cast<double>(b.R);
  const double n = na + nb;
  for (std::size_t i = 0; i < out.mean.size(); ++i) {
    const Complex ma = a.mean.flat()[i];
    const Complex mb = b.mean.flat()[i];
    const double dre = mb.real() - ma.real();
    const double dim = mb.imag() - ma.imag();
    out.mean.flat()[i] = Complex(ma.real() + dre * nb / n, ma.imag() + dim * nb / n);
    const Complex m2a = a.m2.flat()[i];
    const Complex m2b = b.m2.flat()[i];
    out.m2.flat()[i] = Complex(m2a.real() + m2b.real() + dre * dre * na * nb / n,
                               m2a.imag() + m2b.imag() + dim * dim * na * nb / n);
  }
  out.values = smooth_mean_lattice(out.mean, out.N);
  return out;
}

QSpecQuantity integr_quantile_sd(const QuantileSDState& state) {
  const std::size_t N = state.N;
  const std::size_t slab = state.values.slab_size();
  const std::size_t K = state.levels.size();
  const double step = two_pi / static_cast<double>(N);
  ComplexLattice4 out({N + 1, K, K, 1});
  std::vector<Complex> acc(slab);
  for (std::size_t j = 1; j <= N; ++j) {
    const std::size_t r = j % N;
    const bool conj = 2 * r > N;
    const Complex* src = state.values.flat().data() + (conj ? N - r : r) * slab;
    Complex* dst = out.flat().data() + j * slab;
    for (std::size_t i = 0; i < slab; ++i) {
      acc[i] += conj ? std::conj(src[i]) : src[i];
      dst[i] = step * acc[i];
    }
  }
  std::vector<std::size_t> indices(N + 1);
  for (std::size_t j = 0; j <= N; ++j) indices[j] = j;
  return QSpecQuantity(N, FrequencyLayout::explicit_grid, std::move(indices), state.levels, state.levels,
                       std::move(out));
}

std::string serialize_state(const QuantileSDState& st) {
  const std::size_t J = st.mean.extent(0);
  const std::size_t K = st.levels.size();
  const nlohmann::json header = {
      {"N", st.N},
      {"R", st.R},
      {"first_copy", st.first_copy},
      {"next_copy", st.next_copy()},
      {"levels", st.levels},
      {"seed", st.seed},
      {"type", std::string(to_string(st.type))},
      {"model", {{"name", st.model_name}, {"params", st.model_params}}},
      {"dims", {J, K, K}},
  };
  const std::string text = header.dump();
  std::string out(kMagic, sizeof kMagic);
  put_u32(out, kFormatVersion);
  put_u32(out, static_cast<std::uint32_t>(text.size()));
  out += text;
  put_lattice(out, st.mean);
  put_lattice(out, st.m2);
  put_lattice(out, st.values);
  put_u64(out, fnv1a(out));
  return out;
}

QuantileSDState deserialize_state(std::string_view bytes) {
  if (bytes.size() < sizeof kMagic + 16 || std::memcmp(bytes.data(), kMagic, sizeof kMagic) != 0) {
    throw Error(ErrorCode::corrupt_state, "not a quantile spectral density state file");
  }
  Reader body(bytes.substr(0, bytes.size() - 8));
  Reader tail(bytes.substr(bytes.size() - 8));
  if (tail.u(8) != fnv1a(bytes.substr(0, bytes.size() - 8))) {
    throw Error(ErrorCode::corrupt_state, "state file checksum mismatch");
  }
  body.take(sizeof kMagic);
  if (const auto version = body.u(4); version != kFormatVersion) {
    throw Error(ErrorCode::corrupt_state, "unsupported state file version " + std::to_string(version));
  }
  const auto header_len = static_cast<std::size_t>(body.u(4));
  QuantileSDState st;
  std::array<std::size_t, 3> dims{};
  try {
    const auto h = nlohmann::json::parse(body.take(header_len));
    st.N = h.at("N").get<std::size_t>();
    st.R = h.at("R").get<std::size_t>();
    st.first_copy = h.at("first_copy").get<std::size_t>();
    st.levels = h.at("levels").get<std::vector<double>>();
    st.seed = h.at("seed").get<std::uint64_t>();
    st.type = parse_sd_type(h.at("type").get<std::string>());
    st.model_name = h.at("model").at("name").get<std::string>();
    st.model_params = h.at("model").at("params").get<std::vector<double>>();
    dims = h.at("dims").get<std::array<std::size_t, 3>>();
    if (h.at("next_copy").get<std::size_t>() != st.next_copy()) {
      throw Error(ErrorCode::corrupt_state, "inconsistent copy counters");
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::corrupt_state, std::string("malformed state header: ") + e.what());
  } catch (const Error& e) {
    throw Error(ErrorCode::corrupt_state, e.what());
  }
  const std::size_t K = st.levels.size();
  if (st.N < 2 || dims[0] != st.N / 2 + 1 || dims[1] != K || dims[2] != K) {
    throw Error(ErrorCode::corrupt_state, "lattice dimensions do not match the header");
  }
  st.mean = body.lattice(dims);
  st.m2 = body.lattice(dims);
  st.values = body.lattice(dims);
  if (body.position() != bytes.size() - 8) throw Error(ErrorCode::corrupt_state, "trailing bytes in state file");
  return st;
}

void save_state(const QuantileSDState& state, const std::filesystem::path& path) {
  const std::string bytes = serialize_state(state);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::invalid_argument, "cannot open '" + path.string() + "' for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::invalid_argument, "failed writing '" + path.string() + "'");
}

QuantileSDState load_state(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::invalid_argument, "cannot open '" + path.string() + "'");
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return deserialize_state(bytes);
}

}  // namespace qspec
