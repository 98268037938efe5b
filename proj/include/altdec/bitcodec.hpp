#pragma once

// Fixed-width lossless codec for decimated quantized samples D S^r q.
//
// Every decimated component is an integer N times delta / (2 rho^r). For
// r = 1, N has the parity of rho and |N| <= (2L-1) rho, so it is stored as
// (N + (2L-1) rho) / 2 in ceil(log2((2L-1) rho + 1)) bits. For r >= 2,
// |N| <= N_max = (2L-1) rho max(rho, m-rho)^(r-1) and N + N_max is stored in
// ceil(log2(2 N_max + 1)) bits.
//
// Stream layout (header little-endian, 34 bytes):
//   "DCM8" | version u8 = 1 | m, rho, r, eta, L as u32 | delta as f64 | flags u8
// flags bit 0 marks complex samples. The payload follows: one offset per real
// component (real part, then imaginary part in complex mode), each written
// MSB-first into a contiguous big-endian bit string, zero-padded to a byte.

#include <cstdint>
#include <span>
#include <vector>

#include "altdec/decimation.hpp"
#include "altdec/sigma_delta.hpp"

namespace altdec {

inline constexpr std::size_t kHeaderBytes = 34;
inline constexpr std::uint8_t kCodecVersion = 1;

struct CodecLayout {
  int width = 0;             // bits per real component
  std::int64_t n_max = 0;    // |N| bound
  std::int64_t count = 0;    // number of representable offsets
  bool exact = true;         // false when indices exceed 53-bit integers
};

/// Width and range; encode, decode and lattice_index throw RangeOverflow
/// when the layout is not exact.
CodecLayout codec_layout(const DecimationPlan& plan, const Alphabet& a);

/// eta * c * width.
std::int64_t payload_bits(const DecimationPlan& plan, const Alphabet& a);

/// Lattice integer of one component; throws OffLattice / RangeOverflow.
std::int64_t lattice_index(double component, const DecimationPlan& plan, const Alphabet& a);

/// The exact lattice values nearest to v (what decode(encode(v)) returns).
ComplexVector snap_to_lattice(std::span<const Complex> v, const DecimationPlan& plan, const Alphabet& a);

/// a.complex_mode selects the complex layout; in real mode every imaginary
/// part must be zero.
std::vector<std::uint8_t> encode(std::span<const Complex> v, const DecimationPlan& plan, const Alphabet& a);

struct DecodedBlock {
  DecimationPlan plan;
  Alphabet alphabet;
  ComplexVector values;
};

/// Throws MalformedHeader or TruncatedPayload.
DecodedBlock decode(std::span<const std::uint8_t> stream);

}  // namespace altdec
