#include "altdec/bitcodec.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <limits>
#include <string>

#include "altdec/errors.hpp"

namespace altdec {

namespace {

constexpr std::int64_t kExactLimit = std::int64_t{1} << 53;
constexpr char kMagic[4] = {'D', 'C', 'M', '8'};

// 2 rho^r
double lattice_scale(const DecimationPlan& plan) {
  double p = 1.0;
  for (int i = 0; i < plan.r; ++i) p *= plan.rho;
  return 2.0 * p;
}

class BitWriter {
 public:
  void put(std::uint64_t value, int width) {
    for (int b = width - 1; b >= 0; --b) {
      if (used_ % 8 == 0) bytes_.push_back(0);
      if ((value >> b) & 1U) bytes_.back() |= static_cast<std::uint8_t>(0x80U >> (used_ % 8));
      ++used_;
    }
  }
  std::vector<std::uint8_t> take() { return std::move(bytes_); }

 private:
  std::vector<std::uint8_t> bytes_;
  std::size_t used_ = 0;
};

class BitReader {
 public:
  explicit BitReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}
  std::uint64_t get(int width) {
    std::uint64_t v = 0;
    for (int b = 0; b < width; ++b, ++pos_) {
      v = (v << 1) | ((bytes_[pos_ / 8] >> (7 - pos_ % 8)) & 1U);
    }
    return v;
  }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

template <class T>
void put_le(std::vector<std::uint8_t>& out, T value) {
  std::uint64_t bits;
  if constexpr (std::is_same_v<T, double>) {
    bits = std::bit_cast<std::uint64_t>(value);
  } else {
    bits = static_cast<std::uint64_t>(value);
  }
  for (std::size_t i = 0; i < sizeof(T); ++i) out.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
}

std::uint64_t get_le(std::span<const std::uint8_t> in, std::size_t at, std::size_t n) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < n; ++i) v |= static_cast<std::uint64_t>(in[at + i]) << (8 * i);
  return v;
}

std::uint64_t to_offset(std::int64_t n, const DecimationPlan& plan, const Alphabet& a, const CodecLayout& lay) {
  if (plan.r == 1) return static_cast<std::uint64_t>((n + (2LL * a.L - 1) * plan.rho) / 2);
  return static_cast<std::uint64_t>(n + lay.n_max);
}

std::int64_t from_offset(std::uint64_t off, const DecimationPlan& plan, const Alphabet& a, const CodecLayout& lay) {
  if (plan.r == 1) return 2 * static_cast<std::int64_t>(off) - (2LL * a.L - 1) * plan.rho;
  return static_cast<std::int64_t>(off) - lay.n_max;
}

double lattice_value(std::int64_t n, const DecimationPlan& plan, const Alphabet& a) {
  return static_cast<double>(n) * a.delta / lattice_scale(plan);
}

}  // namespace

CodecLayout codec_layout(const DecimationPlan& plan, const Alphabet& a) {
  validate(a);
  __extension__ using U = unsigned __int128;
  constexpr U kCap = static_cast<U>(1) << 120;
  U n = static_cast<U>(2 * static_cast<std::uint64_t>(a.L) - 1) * static_cast<U>(plan.rho);
  U top = n;  // count - 1
  if (plan.r >= 2) {
    const U reach = static_cast<U>(std::max(plan.rho, plan.m - plan.rho));
    for (int i = 1; i < plan.r && n < kCap; ++i) n = std::min(kCap, n * reach);
    top = 2 * n;
  }
  CodecLayout lay;
  lay.exact = n < static_cast<U>(kExactLimit / 2);
  lay.n_max = lay.exact ? static_cast<std::int64_t>(n) : std::numeric_limits<std::int64_t>::max();
  lay.count = lay.exact ? static_cast<std::int64_t>(top) + 1 : std::numeric_limits<std::int64_t>::max();
  int width = 0;
  while (width < 127 && (static_cast<U>(1) << width) <= top) ++width;
  lay.width = width;
  return lay;
}

namespace {

CodecLayout exact_layout(const DecimationPlan& plan, const Alphabet& a) {
  auto lay = codec_layout(plan, a);
  if (!lay.exact || lay.width > 63) {
    throw Error(ErrorCode::range_overflow, "lattice range exceeds exact double integers");
  }
  return lay;
}

}  // namespace

std::int64_t payload_bits(const DecimationPlan& plan, const Alphabet& a) {
  return static_cast<std::int64_t>(plan.eta) * (a.complex_mode ? 2 : 1) * codec_layout(plan, a).width;
}

std::int64_t lattice_index(double component, const DecimationPlan& plan, const Alphabet& a) {
  const auto lay = exact_layout(plan, a);
  const double scaled = component / a.delta * lattice_scale(plan);
  if (!std::isfinite(scaled)) throw Error(ErrorCode::off_lattice, "non-finite component");
  const double nearest = std::nearbyint(scaled);
  if (std::abs(scaled - nearest) > 1e-9 * std::max(1.0, std::abs(nearest))) {
    throw Error(ErrorCode::off_lattice, "component " + std::to_string(component) + " is off the lattice");
  }
  if (std::abs(nearest) > static_cast<double>(lay.n_max)) {
    throw Error(ErrorCode::range_overflow, "lattice index " + std::to_string(nearest) + " exceeds the layout range");
  }
  const auto n = static_cast<std::int64_t>(nearest);
  if (plan.r == 1 && ((n - plan.rho) % 2 != 0)) {
    throw Error(ErrorCode::off_lattice, "first-order index has the wrong parity");
  }
  return n;
}

ComplexVector snap_to_lattice(std::span<const Complex> v, const DecimationPlan& plan, const Alphabet& a) {
  ComplexVector out;
  out.reserve(v.size());
  for (const auto& z : v) {
    const double re = lattice_value(lattice_index(z.real(), plan, a), plan, a);
    const double im = a.complex_mode ? lattice_value(lattice_index(z.imag(), plan, a), plan, a) : 0.0;
    out.emplace_back(re, im);
  }
  return out;
}

std::vector<std::uint8_t> encode(std::span<const Complex> v, const DecimationPlan& plan, const Alphabet& a) {
  if (v.size() != static_cast<std::size_t>(plan.eta)) {
    throw Error(ErrorCode::dimension_mismatch,
                "encode expects " + std::to_string(plan.eta) + " entries, got " + std::to_string(v.size()));
  }
  const auto lay = exact_layout(plan, a);

  BitWriter bits;
  for (const auto& z : v) {
    bits.put(to_offset(lattice_index(z.real(), plan, a), plan, a, lay), lay.width);
    if (a.complex_mode) {
      bits.put(to_offset(lattice_index(z.imag(), plan, a), plan, a, lay), lay.width);
    } else if (z.imag() != 0.0) {
      throw Error(ErrorCode::invalid_argument, "real layout given a complex entry");
    }
  }

  std::vector<std::uint8_t> out(kMagic, kMagic + 4);
  out.push_back(kCodecVersion);
  for (int field : {plan.m, plan.rho, plan.r, plan.eta, a.L}) put_le(out, static_cast<std::uint32_t>(field));
  put_le(out, a.delta);
  out.push_back(a.complex_mode ? 1 : 0);
  const auto payload = bits.take();
  out.insert(out.end(), payload.begin(), payload.end());
  return out;
}

DecodedBlock decode(std::span<const std::uint8_t> stream) {
  if (stream.size() < kHeaderBytes) throw Error(ErrorCode::malformed_header, "stream shorter than the header");
  if (std::memcmp(stream.data(), kMagic, 4) != 0) throw Error(ErrorCode::malformed_header, "bad magic");
  if (stream[4] != kCodecVersion) throw Error(ErrorCode::malformed_header, "unsupported version " + std::to_string(stream[4]));

  std::uint32_t f[5];
  for (int i = 0; i < 5; ++i) f[i] = static_cast<std::uint32_t>(get_le(stream, 5 + 4 * i, 4));
  const double delta = std::bit_cast<double>(get_le(stream, 25, 8));
  const std::uint8_t flags = stream[33];
  const auto m = f[0], rho = f[1], r = f[2], eta = f[3], L = f[4];
  constexpr std::uint32_t kMax = 1U << 30;
  if (m == 0 || rho == 0 || r == 0 || L == 0 || rho > m || m > kMax || L > kMax || r > 64 || eta != m / rho) {
    throw Error(ErrorCode::malformed_header, "inconsistent plan fields");
  }
  if (!(delta > 0.0) || !std::isfinite(delta)) throw Error(ErrorCode::malformed_header, "delta must be positive");
  if (flags > 1) throw Error(ErrorCode::malformed_header, "unknown flag bits");

  DecodedBlock block;
  block.plan = make_plan(static_cast<int>(m), static_cast<int>(rho), static_cast<int>(r));
  block.alphabet = Alphabet{static_cast<int>(L), delta, flags == 1};
  CodecLayout lay;
  try {
    lay = exact_layout(block.plan, block.alphabet);
  } catch (const Error& e) {
    throw Error(ErrorCode::malformed_header, e.what());
  }

  const std::size_t comps = static_cast<std::size_t>(eta) * (block.alphabet.complex_mode ? 2 : 1);
  const std::size_t need = (comps * static_cast<std::size_t>(lay.width) + 7) / 8;
  const auto payload = stream.subspan(kHeaderBytes);
  if (payload.size() < need) {
    throw Error(ErrorCode::truncated_payload,
                "payload has " + std::to_string(payload.size()) + " bytes, needs " + std::to_string(need));
  }
  if (payload.size() > need) throw Error(ErrorCode::malformed_header, "trailing bytes after payload");

  BitReader reader(payload);
  auto next = [&] {
    const auto off = reader.get(lay.width);
    if (static_cast<std::int64_t>(off) >= lay.count) throw Error(ErrorCode::range_overflow, "offset outside layout");
    return lattice_value(from_offset(off, block.plan, block.alphabet, lay), block.plan, block.alphabet);
  };
  block.values.reserve(eta);
  for (std::uint32_t i = 0; i < eta; ++i) {
    const double re = next();
    const double im = block.alphabet.complex_mode ? next() : 0.0;
    block.values.emplace_back(re, im);
  }
  return block;
}

}  // namespace altdec
