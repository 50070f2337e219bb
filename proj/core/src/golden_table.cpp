#include <utility>

#include "coulomb/oracle.hpp"

namespace coulomb {

namespace {

using Terms = std::initializer_list<std::pair<int, const char*>>;

RatPoly from_terms(Terms terms) {
  RatPoly out;
  for (const auto& [power, coeff] : terms) out += RatPoly::monomial(parse_rational(coeff), power);
  return out;
}

GoldenEntry entry(int n, int l, Terms plus, Terms ei) {
  return {n, l, from_terms(plus), from_terms(ei), make_rational(-2, n)};
}

}  // namespace

// Transcribed term by term from the published R2(n, l, r), r in reduced Bohr
// radii over Z. Powers of r, coefficients as printed (22/24 left unreduced).
std::vector<GoldenEntry> golden_table() {
  return {
      entry(1, 0, {{-1, "1/2"}}, {{0, "1"}}),
      entry(2, 0, {{-1, "1"}, {0, "-1"}}, {{0, "2"}, {1, "-1"}}),
      entry(2, 1, {{-2, "2"}, {-1, "1"}, {0, "1"}}, {{1, "1"}}),
      entry(3, 0, {{-1, "3/2"}, {0, "-5/2"}, {1, "1/3"}}, {{0, "3"}, {1, "-2"}, {2, "2/9"}}),
      entry(3, 1, {{-2, "9/2"}, {-1, "3"}, {0, "3"}, {1, "-2/3"}}, {{1, "8/3"}, {2, "-4/9"}}),
      entry(3, 2, {{-3, "81"}, {-2, "27/2"}, {-1, "3"}, {0, "1"}, {1, "2/3"}}, {{2, "4/9"}}),
      entry(4, 0, {{-1, "2"}, {0, "-13/3"}, {1, "22/24"}, {2, "-1/24"}}, {{0, "4"}, {1, "-3"}, {2, "1/2"}, {3, "-1/48"}}),
      entry(4, 1, {{-2, "8"}, {-1, "6"}, {0, "6"}, {1, "-9/4"}, {2, "1/8"}}, {{1, "5"}, {2, "-5/4"}, {3, "1/16"}}),
      entry(4, 2, {{-3, "192"}, {-2, "48"}, {-1, "12"}, {0, "4"}, {1, "5/2"}, {2, "-1/4"}}, {{2, "3/2"}, {3, "-1/8"}}),
      entry(4, 3, {{-4, "11520"}, {-3, "960"}, {-2, "96"}, {-1, "12"}, {0, "2"}, {1, "1/2"}, {2, "1/4"}}, {{3, "1/8"}}),
  };
}

}  // namespace coulomb
