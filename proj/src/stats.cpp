#include "cubic/stats.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>
#include <numbers>

namespace cubic {

double ks_uniform(std::vector<double> samples) {
  if (samples.empty()) throw Empty("KS statistic of an empty sample");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double x = samples[i];
    d = std::max(d, std::max((i + 1) / n - x, x - i / n));
  }
  return d;
}

ChiSquare chi_square_bins(const std::vector<std::vector<double>>& points,
                          int bins_per_axis) {
  if (points.empty()) throw TooFewSamples("no points");
  const std::size_t dim = points.front().size();
  std::size_t cells = 1;
  for (std::size_t k = 0; k < dim; ++k) cells *= static_cast<std::size_t>(bins_per_axis);
  if (points.size() < 5 * cells) {
    throw TooFewSamples(fmt::format("{} points for {} cells; need {}",
                                    points.size(), cells, 5 * cells));
  }
  std::vector<long> counts(cells, 0);
  for (const auto& p : points) {
    std::size_t index = 0;
    for (double x : p) {
      int b = static_cast<int>(std::floor(x * bins_per_axis));
      b = std::clamp(b, 0, bins_per_axis - 1);
      index = index * static_cast<std::size_t>(bins_per_axis) + static_cast<std::size_t>(b);
    }
    ++counts[index];
  }
  const double expected = static_cast<double>(points.size()) / static_cast<double>(cells);
  ChiSquare out;
  for (long c : counts) {
    const double diff = static_cast<double>(c) - expected;
    out.stat += diff * diff / expected;
  }
  out.dof = static_cast<long>(cells) - 1;
  return out;
}

CuspFraction cusp_fraction(const std::vector<std::array<double, 2>>& points,
                           double y) {
  if (y < 1.0) throw PreconditionFailed("cusp height must be at least 1");
  CuspFraction out;
  out.y = y;
  out.expected = 3.0 / (std::numbers::pi * y);
  if (points.empty()) return out;
  const auto above = std::count_if(points.begin(), points.end(),
                                   [y](const auto& p) { return p[1] >= y; });
  out.observed = static_cast<double>(above) / static_cast<double>(points.size());
  return out;
}

double badlu_entry(const BasisMatrix& gl, const BasisMatrix& g0_inverse,
                   const UnitSystem& u, double s1, double s2) {
  double value = 0.0;
  for (int k = 0; k < 3; ++k) {
    const double d = std::exp(s1 * u.logs[0][k] + s2 * u.logs[1][k]);
    value += gl.m[0][k] * d * g0_inverse.m[k][0];
  }
  return value;
}

std::vector<BadLuEntry> badlu_scan(const BasisMatrix& gl, const BasisMatrix& g0,
                                   const UnitSystem& u, int grid_n,
                                   const std::vector<double>& eps_list) {
  if (grid_n < 1) throw PreconditionFailed("grid size must be positive");
  const BasisMatrix inv = g0.inverse();
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(grid_n) * grid_n);
  for (int i = 0; i < grid_n; ++i) {
    for (int j = 0; j < grid_n; ++j) {
      const double s1 = (i + 0.5) / grid_n, s2 = (j + 0.5) / grid_n;
      values.push_back(std::abs(badlu_entry(gl, inv, u, s1, s2)));
    }
  }
  std::vector<BadLuEntry> out;
  for (double eps : eps_list) {
    const auto hits = std::count_if(values.begin(), values.end(),
                                    [eps](double v) { return v <= eps; });
    out.push_back({eps, static_cast<double>(hits) / static_cast<double>(values.size())});
  }
  return out;
}

double star_discrepancy_2d(const std::vector<std::array<double, 2>>& points,
                           int grid) {
  if (points.empty()) throw Empty("discrepancy of an empty sample");
  // counts[i][j]: points with x < (i+1)/grid and y < (j+1)/grid.
  std::vector<std::vector<long>> counts(grid, std::vector<long>(grid, 0));
  for (const auto& p : points) {
    const int i = std::clamp(static_cast<int>(std::floor(p[0] * grid)), 0, grid - 1);
    const int j = std::clamp(static_cast<int>(std::floor(p[1] * grid)), 0, grid - 1);
    ++counts[i][j];
  }
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j) {
      if (i > 0) counts[i][j] += counts[i - 1][j];
      if (j > 0) counts[i][j] += counts[i][j - 1];
      if (i > 0 && j > 0) counts[i][j] -= counts[i - 1][j - 1];
    }
  }
  const double n = static_cast<double>(points.size());
  double worst = 0.0;
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j) {
      const double area = (i + 1.0) * (j + 1.0) / (static_cast<double>(grid) * grid);
      worst = std::max(worst, std::abs(counts[i][j] / n - area));
    }
  }
  return worst;
}

std::string StatsReport::to_json() const {
  nlohmann::ordered_json j;
  j["n"] = n;
  j["ks"] = {{"s1", ks_s1}, {"s2", ks_s2}, {"c1", ks_c1}, {"c2", ks_c2}};
  nlohmann::ordered_json chi;
  if (chi2_torus_valid) {
    chi["torus"] = {{"stat", chi2_torus.stat}, {"dof", chi2_torus.dof}};
  } else {
    chi["torus"] = nullptr;
  }
  if (chi2_joint_valid) {
    chi["joint"] = {{"stat", chi2_joint.stat}, {"dof", chi2_joint.dof}};
  } else {
    chi["joint"] = nullptr;
  }
  j["chi2"] = chi;
  j["cusp"] = nlohmann::ordered_json::array();
  for (const auto& c : cusp) {
    j["cusp"].push_back({{"Y", c.y}, {"obs", c.observed}, {"exp", c.expected}});
  }
  j["discrepancy_2d"] = discrepancy_2d;
  j["badlu"] = nlohmann::ordered_json::array();
  for (const auto& b : badlu) {
    j["badlu"].push_back({{"eps", b.eps}, {"fraction", b.fraction}});
  }
  return j.dump(2) + "\n";
}

StatsReport make_report(const std::vector<IntersectionPoint>& points, int bins,
                        const std::vector<double>& cusp_heights) {
  StatsReport r;
  r.n = points.size();
  if (points.empty()) return r;
  std::vector<double> s1, s2, c1, c2;
  std::vector<std::vector<double>> torus, joint;
  std::vector<std::array<double, 2>> hyperbolic, torus2;
  for (const auto& p : points) {
    s1.push_back(p.s1);
    s2.push_back(p.s2);
    c1.push_back(p.c1);
    c2.push_back(p.c2);
    torus.push_back({p.s1, p.s2});
    joint.push_back({p.s1, p.s2, p.c1, p.c2});
    hyperbolic.push_back({p.zx, p.zy});
    torus2.push_back({p.s1, p.s2});
  }
  r.ks_s1 = ks_uniform(s1);
  r.ks_s2 = ks_uniform(s2);
  r.ks_c1 = ks_uniform(c1);
  r.ks_c2 = ks_uniform(c2);
  try {
    r.chi2_torus = chi_square_bins(torus, bins);
    r.chi2_torus_valid = true;
  } catch (const TooFewSamples&) {
  }
  try {
    r.chi2_joint = chi_square_bins(joint, 4);
    r.chi2_joint_valid = true;
  } catch (const TooFewSamples&) {
  }
  for (double y : cusp_heights) r.cusp.push_back(cusp_fraction(hyperbolic, y));
  r.discrepancy_2d = star_discrepancy_2d(torus2);
  return r;
}

}  // namespace cubic
