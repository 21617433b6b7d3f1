#include "logasm/feller.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "logasm/errors.hpp"

namespace logasm {

double gamma_ladder(unsigned s, double eps, double B, IteratedLog convention) {
  if (s < 2) throw ArgumentError("ladder order s must be at least 2");
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  const auto L = [&](unsigned k) { return iterated_log(B, k, convention); };
  double half_square = 0.0;  // gamma^2 / 2
  if (s == 2) {
    const auto l2 = L(2);
    if (!l2) return nan;
    half_square = (1.0 + eps) * *l2;
  } else {
    for (unsigned k = 2; k <= s; ++k) {
      const auto lk = L(k);
      if (!lk) return nan;
      double weight = (k == 3) ? 1.5 : 1.0;
      if (k == s) weight *= 1.0 + eps;
      half_square += weight * *lk;
    }
  }
  if (half_square < 0.0) return nan;
  return std::sqrt(2.0 * half_square);
}

std::string to_string(SeriesVerdict verdict) {
  switch (verdict) {
    case SeriesVerdict::converges: return "converges";
    case SeriesVerdict::diverges: return "diverges";
    case SeriesVerdict::inconclusive: return "inconclusive";
    case SeriesVerdict::refused: return "refused";
  }
  return "unknown";
}

FellerReport feller_terms(const AdditiveFunction& h, const RateSequence& rates,
                          const PhiSpec& phi, std::size_t J, IteratedLog convention) {
  if (J < 10) throw ArgumentError("J must be at least 10");
  if (phi.kind == PhiSpec::Kind::table && phi.values.size() < J) {
    throw BoundsError("phi table has fewer than J entries");
  }
  const CenteringProfile profile = centering_profile(h, rates, J);

  FellerReport report;
  report.phi.resize(J);
  report.terms.resize(J);
  report.partial_sums.resize(J);
  bool all_zero = true;
  bool phi_valid = true;
  bool monotone = true;
  double sum = 0.0;
  for (std::size_t j = 1; j <= J; ++j) {
    const double B2 = profile.B2[j];
    const double B = std::sqrt(B2);
    const double p = phi.kind == PhiSpec::Kind::ladder
                         ? gamma_ladder(phi.s, phi.x, B, convention)
                         : phi.values[j - 1];
    report.phi[j - 1] = p;
    if (!(p > 0.0) || !std::isfinite(p)) phi_valid = false;
    if (j > 1 && p < report.phi[j - 2]) monotone = false;

    const double a = h.a(j);
    if (a != 0.0) all_zero = false;
    double term = 0.0;
    if (a != 0.0 && B2 > 0.0 && std::isfinite(p)) {
      term = a * a * p * std::exp(-0.5 * p * p) / (static_cast<double>(j) * B2);
      report.condition9 = std::max(report.condition9, std::abs(a) * p * p * p / B);
    }
    report.terms[j - 1] = term;
    sum += term;
    report.partial_sums[j - 1] = sum;
  }

  if (!phi_valid) {
    report.verdict = SeriesVerdict::refused;
    report.reason = "phi is not positive and finite";
  } else if (!monotone) {
    report.verdict = SeriesVerdict::refused;
    report.reason = "phi is not nondecreasing";
  } else if (all_zero) {
    report.verdict = SeriesVerdict::converges;
    report.reason = "all terms vanish";
  } else if (phi.kind == PhiSpec::Kind::ladder) {
    report.verdict = phi.x > 0.0 ? SeriesVerdict::converges : SeriesVerdict::diverges;
    report.reason = "integral comparison on the iterated-log ladder (assumes B unbounded)";
  } else {
    report.verdict = SeriesVerdict::inconclusive;
    report.reason = "tabulated phi has no closed-form tail";
  }
  return report;
}

}  // namespace logasm
