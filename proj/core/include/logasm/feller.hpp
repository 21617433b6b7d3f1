#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "logasm/additive.hpp"
#include "logasm/model.hpp"

namespace logasm {

// gamma_s(eps) evaluated at B, with
//   s = 2:  gamma^2 = 2 (1 + eps) L_2 B
//   s = 3:  gamma^2 / 2 = L_2 B + (3/2)(1 + eps) L_3 B
//   s >= 4: gamma^2 / 2 = L_2 B + (3/2) L_3 B + L_4 B + ... + (1 + eps) L_s B
// Returns NaN when gamma^2 < 0 or a strict iterated log is undefined.
double gamma_ladder(unsigned s, double eps, double B,
                    IteratedLog convention = IteratedLog::clamped);

// phi_j either from the ladder phi_j = gamma_s(x) at B(j), or tabulated.
struct PhiSpec {
  enum class Kind { ladder, table };
  Kind kind = Kind::ladder;
  unsigned s = 2;
  double x = 0.0;
  std::vector<double> values;  // phi_1..phi_J when kind == table

  static PhiSpec ladder(unsigned s, double x) { return {Kind::ladder, s, x, {}}; }
  static PhiSpec table(std::vector<double> values) { return {Kind::table, 0, 0.0, std::move(values)}; }
};

enum class SeriesVerdict { converges, diverges, inconclusive, refused };
std::string to_string(SeriesVerdict verdict);

struct FellerReport {
  std::vector<double> phi;           // phi_1..phi_J
  std::vector<double> terms;         // a_j^2 phi_j e^{-phi_j^2/2} / (j B^2(j))
  std::vector<double> partial_sums;
  double condition9 = 0.0;           // max_j |a_j| phi_j^3 / B(j)
  SeriesVerdict verdict = SeriesVerdict::inconclusive;
  std::string reason;
};

// First J terms of the Feller series and a classification. Ladder families
// are classified by integral comparison in the variable log B^2: the terms
// behave like dL_1B / (L_1B L_2B ... L_{s-1}B^{1+x}), which converges iff
// x > 0 when B grows without bound. Tabulated phi is inconclusive.
FellerReport feller_terms(const AdditiveFunction& h, const RateSequence& rates,
                          const PhiSpec& phi, std::size_t J,
                          IteratedLog convention = IteratedLog::clamped);

}  // namespace logasm
