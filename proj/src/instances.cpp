#include "pmedian/instances.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace pmedian {

LcgState::LcgState(std::uint32_t r) : r_(r) {
  if (r == 0 || r >= kModulus) throw std::invalid_argument("lcg state must lie in (0, 100000)");
}

LcgState lcg_next(LcgState state) {
  const std::uint64_t theta = std::uint64_t{LcgState::kMultiplier} * state.value();
  return LcgState(static_cast<std::uint32_t>(theta % LcgState::kModulus));
}

Instance generate_instance(std::size_t n) {
  if (n == 0 || n > kMaxGeneratedPoints)
    throw std::invalid_argument("generated instances hold 1 to 1000 points");
  std::vector<Point> points;
  points.reserve(n);
  LcgState rx(kSeedX), ry(kSeedY);
  for (std::size_t k = 0; k < n; ++k) {
    points.push_back({rx.value() / 10000.0, ry.value() / 10000.0});
    rx = lcg_next(rx);
    ry = lcg_next(ry);
  }
  return Instance(std::move(points), "gen" + std::to_string(n));
}

ParseError::ParseError(std::size_t line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

double parse_number(const std::string& token, std::size_t line) {
  double value = 0.0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  if (!token.empty() && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) throw ParseError(line, "not a number: '" + token + "'");
  return value;
}

}  // namespace

Instance parse_tsplib(std::istream& in, std::string id) {
  std::optional<std::size_t> dimension;
  std::string line;
  std::size_t line_no = 0;
  bool in_coords = false;
  std::vector<Point> points;
  std::vector<double> weights;
  std::vector<char> seen;

  while (std::getline(in, line)) {
    ++line_no;
    const std::string text = trim(line);
    if (text.empty()) continue;
    if (text == "EOF") break;

    if (!in_coords) {
      if (text == "NODE_COORD_SECTION") {
        if (!dimension) throw ParseError(line_no, "NODE_COORD_SECTION before DIMENSION");
        in_coords = true;
        points.assign(*dimension, Point{});
        weights.assign(*dimension, 1.0);
        seen.assign(*dimension, 0);
        continue;
      }
      const auto colon = text.find(':');
      if (colon == std::string::npos) throw ParseError(line_no, "expected 'KEY : value' header");
      const std::string key = trim(std::string_view(text).substr(0, colon));
      const std::string value = trim(std::string_view(text).substr(colon + 1));
      if (key == "NAME" && id.empty()) {
        id = value;
      } else if (key == "DIMENSION") {
        const double d = parse_number(value, line_no);
        if (!(d >= 1.0) || d != static_cast<double>(static_cast<std::size_t>(d)))
          throw ParseError(line_no, "DIMENSION must be a positive integer");
        dimension = static_cast<std::size_t>(d);
      } else if (key == "EDGE_WEIGHT_TYPE" && value != "EUC_2D" && value != "CEIL_2D" &&
                 value != "ATT" && value != "GEO") {
        throw ParseError(line_no, "unsupported EDGE_WEIGHT_TYPE " + value);
      }
      continue;
    }

    std::istringstream fields(text);
    std::vector<std::string> tokens;
    for (std::string token; fields >> token;) tokens.push_back(token);
    if (tokens.size() < 3 || tokens.size() > 4)
      throw ParseError(line_no, "expected 'index x y [weight]'");
    const double index = parse_number(tokens[0], line_no);
    if (!(index >= 1.0) || index != static_cast<double>(static_cast<std::size_t>(index)) ||
        static_cast<std::size_t>(index) > *dimension)
      throw ParseError(line_no, "node index out of range");
    const auto k = static_cast<std::size_t>(index) - 1;
    if (seen[k]) throw ParseError(line_no, "duplicate node index");
    seen[k] = 1;
    points[k] = {parse_number(tokens[1], line_no), parse_number(tokens[2], line_no)};
    if (tokens.size() == 4) {
      weights[k] = parse_number(tokens[3], line_no);
      if (!(weights[k] > 0.0)) throw ParseError(line_no, "weight must be positive");
    }
  }

  if (!in_coords) throw ParseError(line_no, "missing NODE_COORD_SECTION");
  std::size_t count = 0;
  for (char s : seen) count += s;
  if (count != *dimension) {
    throw ParseError(line_no, "DIMENSION " + std::to_string(*dimension) + " but " +
                                  std::to_string(count) + " coordinate records");
  }
  return Instance(std::move(points), std::move(weights), std::move(id));
}

Instance load_tsplib(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return parse_tsplib(in, path.stem().string());
}

void write_tsplib(std::ostream& out, const Instance& instance) {
  bool unit = true;
  for (double w : instance.weights()) unit = unit && w == 1.0;
  out << "NAME : " << (instance.id().empty() ? "instance" : instance.id()) << '\n'
      << "TYPE : TSP\n"
      << "DIMENSION : " << instance.size() << '\n'
      << "EDGE_WEIGHT_TYPE : EUC_2D\n"
      << "NODE_COORD_SECTION\n";
  const auto old_precision = out.precision(17);
  for (std::size_t j = 0; j < instance.size(); ++j) {
    out << (j + 1) << ' ' << instance.point(j).x << ' ' << instance.point(j).y;
    if (!unit) out << ' ' << instance.weight(j);
    out << '\n';
  }
  out.precision(old_precision);
  out << "EOF\n";
}

namespace {

constexpr std::array<BestKnownEntry, 60> kBestKnown{{
    {100, 5, 164.6011},     {100, 10, 100.7650},    {100, 15, 74.4746},
    {100, 20, 59.4779},     {100, 25, 49.1846},     {200, 5, 329.0968},
    {200, 10, 213.1025},    {200, 15, 167.1654},    {200, 20, 140.0728},
    {200, 25, 120.5562},    {300, 5, 505.9990},     {300, 10, 331.5499},
    {300, 15, 259.6754},    {300, 20, 216.8050},    {300, 25, 191.5259},
    {400, 5, 685.1978},     {400, 10, 458.8549},    {400, 15, 362.7120},
    {400, 20, 304.1061},    {400, 25, 266.3945},    {500, 5, 856.1153},
    {500, 10, 575.6737},    {500, 15, 449.8948},    {500, 20, 382.6915},
    {500, 25, 337.3002},    {600, 5, 1030.9282},    {600, 10, 694.2726},
    {600, 15, 547.8102},    {600, 20, 460.6433},    {600, 25, 408.3926},
    {700, 5, 1198.9113},    {700, 10, 807.4504},    {700, 15, 647.6007},
    {700, 20, 548.0676},    {700, 25, 482.5661},    {800, 5, 1372.8710},
    {800, 10, 928.7004},    {800, 15, 743.1017},    {800, 20, 633.9782},
    {800, 25, 557.1867},    {900, 5, 1545.5993},    {900, 10, 1053.7279},
    {900, 15, 844.0657},    {900, 20, 718.9711},    {900, 25, 634.8785},
    {1000, 5, 1731.6308},   {1000, 10, 1177.9664},  {1000, 15, 942.4672},
    {1000, 20, 798.5461},   {1000, 25, 705.8626},   {3038, 50, 505875.76},
    {3038, 100, 351171.15}, {3038, 150, 279724.73}, {3038, 200, 236209.47},
    {3038, 250, 206454.64}, {3038, 300, 184799.90}, {3038, 350, 168246.96},
    {3038, 400, 154554.55}, {3038, 450, 143267.54}, {3038, 500, 133547.50},
}};

}  // namespace

std::span<const BestKnownEntry> best_known_table() { return kBestKnown; }

std::optional<double> best_known(std::size_t n, std::size_t p) {
  for (const BestKnownEntry& e : kBestKnown)
    if (e.n == n && e.p == p) return e.objective;
  return std::nullopt;
}

}  // namespace pmedian
