#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>

#include "pmedian/core.hpp"

namespace pmedian {

// State of the multiplicative generator r' = 12219 r mod 100000.
class LcgState {
 public:
  static constexpr std::uint32_t kMultiplier = 12219;
  static constexpr std::uint32_t kModulus = 100000;

  explicit LcgState(std::uint32_t r);
  std::uint32_t value() const { return r_; }

  friend bool operator==(LcgState, LcgState) = default;

 private:
  std::uint32_t r_;
};

LcgState lcg_next(LcgState state);

inline constexpr std::size_t kMaxGeneratedPoints = 1000;
inline constexpr std::uint32_t kSeedX = 97;
inline constexpr std::uint32_t kSeedY = 367;

// The standard benchmark configuration: the first n of 1000 points in (0, 10)^2,
// unit weights.
Instance generate_instance(std::size_t n);

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// TSPLIB-style coordinate lists: "KEY : value" header lines, DIMENSION
// required, then NODE_COORD_SECTION with "index x y [weight]" records and an
// optional EOF line.
Instance parse_tsplib(std::istream& in, std::string id = {});
Instance load_tsplib(const std::filesystem::path& path);

void write_tsplib(std::ostream& out, const Instance& instance);

struct BestKnownEntry {
  std::size_t n;
  std::size_t p;
  double objective;
};

// Reference objectives: 50 generated-instance pairs (n = 100..1000,
// p = 5..25) and 10 pairs of the n = 3038 set (p = 50..500).
std::span<const BestKnownEntry> best_known_table();
std::optional<double> best_known(std::size_t n, std::size_t p);

}  // namespace pmedian
