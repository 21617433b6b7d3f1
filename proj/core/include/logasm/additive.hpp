#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "logasm/component_vector.hpp"
#include "logasm/model.hpp"
#include "logasm/path.hpp"

namespace logasm {

// strict: L_k x = log applied k times, undefined once an argument is <= 0.
// clamped: L x = log max(x, e), so every L_k x >= 1 is defined.
enum class IteratedLog { strict, clamped };

// L_k x for k >= 1; nullopt when undefined under the strict convention.
std::optional<double> iterated_log(double x, unsigned k, IteratedLog convention);

// h(sigma, m) = sum_{j<=m} h_j(s_j) with h_j(0) = 0.
class AdditiveFunction {
 public:
  using Table = std::vector<std::vector<double>>;

  // h_j(s) = a_j s. a is checked finite for j <= n_max.
  static AdditiveFunction completely_additive(std::function<double(std::size_t)> a,
                                              std::size_t n_max, std::string name = "custom");
  static AdditiveFunction constant(double a, std::size_t n_max);
  // h_j(0) = 0 and finiteness of a_j are checked for j <= n_max.
  static AdditiveFunction general(std::function<double(std::size_t, std::uint32_t)> h,
                                  std::size_t n_max, std::string name = "custom");
  // table[j-1][s] = h_j(s); each row starts with 0 and has at least two
  // entries. Counts beyond a row's length raise BoundsError.
  static AdditiveFunction from_table(Table table, std::string name = "table");

  const std::string& name() const noexcept { return name_; }
  std::size_t n_max() const noexcept { return n_max_; }
  bool is_completely_additive() const noexcept { return completely_additive_; }

  double h(std::size_t j, std::uint32_t s) const;
  double a(std::size_t j) const;
  // a_j * 1{s >= 1}.
  double indicator(std::size_t j, std::uint32_t s) const { return s ? a(j) : 0.0; }

 private:
  AdditiveFunction() = default;
  void check_index(std::size_t j) const;

  std::string name_;
  std::size_t n_max_ = 0;
  bool completely_additive_ = false;
  std::function<double(std::size_t)> a_;
  std::function<double(std::size_t, std::uint32_t)> h_;
};

double partial_value(const AdditiveFunction& h, const ComponentVector& s, std::size_t m);
// sum_{j<=m} a_j 1{s_j >= 1}.
double partial_indicator_value(const AdditiveFunction& h, const ComponentVector& s,
                               std::size_t m);

struct CenteringScaling {
  double A = 0.0;
  double B2 = 0.0;
  std::optional<double> beta;  // B sqrt(2 L_2 B)
};

// beta for a given B^2: absent when B = 0, or under the strict convention
// when L_2 B <= 0 or undefined.
std::optional<double> lil_scale(double B2, IteratedLog convention);

CenteringScaling centering_scaling(const AdditiveFunction& h, const RateSequence& rates,
                                   std::size_t m,
                                   IteratedLog convention = IteratedLog::strict);

// A(i) and B^2(i) for i = 0..m_max, index 0 holding zeros.
struct CenteringProfile {
  std::vector<double> A;
  std::vector<double> B2;
};
CenteringProfile centering_profile(const AdditiveFunction& h, const RateSequence& rates,
                                   std::size_t m_max);

struct ProcessOptions {
  IteratedLog convention = IteratedLog::strict;
  // Build from sum a_j 1{s_j >= 1} rather than sum h_j(s_j).
  bool indicator_form = true;
};

// U_m: the polyline through (B^2(i)/B^2(m), (h(sigma,i) - A(i))/beta(m)),
// i = 0..m. Points sharing an abscissa (a_i = 0) collapse to the last one,
// except that t = 0 stays pinned at 0.
PolygonalPath build_process(const AdditiveFunction& h, const RateSequence& rates,
                            const ComponentVector& s, std::size_t m,
                            const ProcessOptions& options = {});

}  // namespace logasm
