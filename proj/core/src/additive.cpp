#include "logasm/additive.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

#include "logasm/errors.hpp"

namespace logasm {

std::optional<double> iterated_log(double x, unsigned k, IteratedLog convention) {
  if (k == 0) throw ArgumentError("iterated log order must be at least 1");
  if (convention == IteratedLog::strict && !(x > 0.0)) return std::nullopt;
  double v = x;
  for (unsigned i = 0; i < k; ++i) {
    if (convention == IteratedLog::clamped) {
      v = std::log(std::max(v, std::numbers::e));
    } else {
      if (!(v > 0.0)) return std::nullopt;
      v = std::log(v);
    }
  }
  return v;
}

AdditiveFunction AdditiveFunction::completely_additive(std::function<double(std::size_t)> a,
                                                       std::size_t n_max, std::string name) {
  AdditiveFunction f;
  f.name_ = std::move(name);
  f.n_max_ = n_max;
  f.completely_additive_ = true;
  for (std::size_t j = 1; j <= n_max; ++j) {
    if (!std::isfinite(a(j))) throw ArgumentError("a_" + std::to_string(j) + " is not finite");
  }
  f.a_ = a;
  f.h_ = [a](std::size_t j, std::uint32_t s) { return s ? a(j) * s : 0.0; };
  return f;
}

AdditiveFunction AdditiveFunction::constant(double a, std::size_t n_max) {
  return completely_additive([a](std::size_t) { return a; }, n_max,
                             "a=" + std::to_string(a));
}

AdditiveFunction AdditiveFunction::general(std::function<double(std::size_t, std::uint32_t)> h,
                                           std::size_t n_max, std::string name) {
  AdditiveFunction f;
  f.name_ = std::move(name);
  f.n_max_ = n_max;
  for (std::size_t j = 1; j <= n_max; ++j) {
    if (h(j, 0) != 0.0) throw ArgumentError("h_" + std::to_string(j) + "(0) must be 0");
    if (!std::isfinite(h(j, 1))) throw ArgumentError("a_" + std::to_string(j) + " is not finite");
  }
  f.h_ = h;
  f.a_ = [h](std::size_t j) { return h(j, 1); };
  return f;
}

AdditiveFunction AdditiveFunction::from_table(Table table, std::string name) {
  for (std::size_t j = 0; j < table.size(); ++j) {
    if (table[j].size() < 2) {
      throw ArgumentError("row " + std::to_string(j + 1) + " needs h_j(0) and h_j(1)");
    }
    if (table[j][0] != 0.0) throw ArgumentError("h_" + std::to_string(j + 1) + "(0) must be 0");
  }
  const std::size_t n_max = table.size();
  auto shared = std::make_shared<const Table>(std::move(table));
  return general(
      [shared](std::size_t j, std::uint32_t s) {
        const auto& row = (*shared)[j - 1];
        if (s >= row.size()) {
          throw BoundsError("h_" + std::to_string(j) + "(" + std::to_string(s) +
                            ") is beyond the table");
        }
        return row[s];
      },
      n_max, std::move(name));
}

void AdditiveFunction::check_index(std::size_t j) const {
  if (j == 0 || j > n_max_) {
    throw BoundsError("index " + std::to_string(j) + " outside 1.." + std::to_string(n_max_));
  }
}

double AdditiveFunction::h(std::size_t j, std::uint32_t s) const {
  check_index(j);
  return s ? h_(j, s) : 0.0;
}

double AdditiveFunction::a(std::size_t j) const {
  check_index(j);
  return a_(j);
}

namespace {

void check_prefix(const ComponentVector& s, std::size_t m) {
  if (m > s.dimension()) {
    throw BoundsError("m = " + std::to_string(m) + " exceeds dimension " +
                      std::to_string(s.dimension()));
  }
}

}  // namespace

double partial_value(const AdditiveFunction& h, const ComponentVector& s, std::size_t m) {
  check_prefix(s, m);
  double total = 0.0;
  for (std::size_t j = 1; j <= m; ++j) {
    if (const auto c = s.count(j)) total += h.h(j, c);
  }
  return total;
}

double partial_indicator_value(const AdditiveFunction& h, const ComponentVector& s,
                               std::size_t m) {
  check_prefix(s, m);
  double total = 0.0;
  for (std::size_t j = 1; j <= m; ++j) {
    if (s.count(j)) total += h.a(j);
  }
  return total;
}

std::optional<double> lil_scale(double B2, IteratedLog convention) {
  if (!(B2 > 0.0)) return std::nullopt;
  const double B = std::sqrt(B2);
  const auto ll = iterated_log(B, 2, convention);
  if (!ll || !(*ll > 0.0)) return std::nullopt;
  return B * std::sqrt(2.0 * *ll);
}

CenteringProfile centering_profile(const AdditiveFunction& h, const RateSequence& rates,
                                   std::size_t m_max) {
  if (m_max > rates.size()) {
    throw BoundsError("m = " + std::to_string(m_max) + " exceeds the " +
                      std::to_string(rates.size()) + " available rates");
  }
  CenteringProfile p;
  p.A.assign(m_max + 1, 0.0);
  p.B2.assign(m_max + 1, 0.0);
  for (std::size_t j = 1; j <= m_max; ++j) {
    const double a = h.a(j);
    const double hit = -std::expm1(-rates.rate(j));  // 1 - e^{-lambda}
    p.A[j] = p.A[j - 1] + a * hit;
    p.B2[j] = p.B2[j - 1] + a * a * (1.0 - hit) * hit;
  }
  return p;
}

CenteringScaling centering_scaling(const AdditiveFunction& h, const RateSequence& rates,
                                   std::size_t m, IteratedLog convention) {
  const CenteringProfile p = centering_profile(h, rates, m);
  return {p.A[m], p.B2[m], lil_scale(p.B2[m], convention)};
}

PolygonalPath build_process(const AdditiveFunction& h, const RateSequence& rates,
                            const ComponentVector& s, std::size_t m,
                            const ProcessOptions& options) {
  check_prefix(s, m);
  if (m == 0) throw ArgumentError("m must be positive");
  const CenteringProfile p = centering_profile(h, rates, m);
  const auto beta = lil_scale(p.B2[m], options.convention);
  if (!beta) throw ArgumentError("beta(m) is undefined; the process cannot be normalized");

  std::vector<double> t{0.0};
  std::vector<double> y{0.0};
  double value = 0.0;
  for (std::size_t i = 1; i <= m; ++i) {
    if (const auto c = s.count(i)) value += options.indicator_form ? h.a(i) : h.h(i, c);
    const double ti = p.B2[i] / p.B2[m];
    const double yi = (value - p.A[i]) / *beta;
    if (ti > t.back()) {
      t.push_back(ti);
      y.push_back(yi);
    } else if (t.size() > 1) {
      y.back() = yi;
    }
  }
  // Rounding in the running sum can leave the last abscissa a hair below 1.
  t.back() = 1.0;
  return PolygonalPath(std::move(t), std::move(y));
}

}  // namespace logasm
