#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "balcut/fast.hpp"
#include "balcut/foreach.hpp"

namespace balcut {

// Bit-packed binary layout. Vertex ids use ceil(log2 n) bits, counts and
// degrees use per-section widths, weights and parameters are raw f64.
//
//   header   magic "BCSK", version, format tag, mode, certified, n, beta,
//            eps, alpha, lambda (phi* for the fast format), seed,
//            samples per vertex, class count
//   class    index, stored edge count, stored edges (tail, head, weight)
//            foreach: one part section
//            fast:    level count, then per level phi*, rounds, |E_ij|,
//                     retained count and a part section
//   parts    part count, vertex -> part map (0 = none), degree width,
//            (d_out, d_in) per member, then per member the outgoing and
//            incoming sample records (other endpoint, weight)

inline constexpr std::uint32_t kSketchMagic = 0x4B534342;  // "BCSK" little-endian
inline constexpr std::uint16_t kSketchVersion = 1;
enum class SketchFormat : std::uint8_t { kForEach = 0, kFast = 1 };

struct SketchSize {
  std::uint64_t total_bits = 0;
  std::uint64_t header_bits = 0;
  std::uint64_t stored_edge_bits = 0;
  std::uint64_t partition_bits = 0;  // part maps and level metadata
  std::uint64_t degree_bits = 0;
  std::uint64_t sample_bits = 0;
};

std::vector<std::uint8_t> serialize(const ForEachSketch& sk, SketchSize* size = nullptr);
std::vector<std::uint8_t> serialize(const FastSketch& sk, SketchSize* size = nullptr);

SketchSize sketch_size(const ForEachSketch& sk);
SketchSize sketch_size(const FastSketch& sk);
std::uint64_t sketch_size_bits(const ForEachSketch& sk);
std::uint64_t sketch_size_bits(const FastSketch& sk);

using AnySketch = std::variant<ForEachSketch, FastSketch>;
/// Throws ParseError (line 0) on malformed input.
AnySketch deserialize(const std::vector<std::uint8_t>& bytes);

/// JSON mirror of the binary content, plus the section sizes.
std::string sketch_json(const ForEachSketch& sk, int indent = 2);
std::string sketch_json(const FastSketch& sk, int indent = 2);

CutEstimate query_any(const AnySketch& sk, const CutSet& s);
std::size_t sketch_vertices(const AnySketch& sk);

}  // namespace balcut
