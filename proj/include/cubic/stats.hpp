#pragma once

// Uniformity statistics for the torus, hyperbolic and fiber coordinates.

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "cubic/intersection.hpp"
#include "cubic/units.hpp"

namespace cubic {

/// sup |F_n(x) - x| over [0,1]. Throws Empty.
double ks_uniform(std::vector<double> samples);

struct ChiSquare {
  double stat = 0.0;
  long dof = 0;
};

/// Pearson statistic of points in [0,1)^d against bins_per_axis^d equal
/// cells. Throws TooFewSamples when n < 5 bins^d.
ChiSquare chi_square_bins(const std::vector<std::vector<double>>& points,
                          int bins_per_axis);

struct CuspFraction {
  double y = 0.0;
  double observed = 0.0;
  double expected = 0.0;
};

/// Share of points with zy >= y against 3/(pi y). Requires y >= 1.
CuspFraction cusp_fraction(const std::vector<std::array<double, 2>>& points,
                           double y);

struct BadLuEntry {
  double eps = 0.0;
  double fraction = 0.0;
};

/// (1,1) entry of g_l diag(exp(s1 l1 + s2 l2)) g0^-1.
double badlu_entry(const BasisMatrix& gl, const BasisMatrix& g0_inverse,
                   const UnitSystem& u, double s1, double s2);

/// Fraction of grid_n x grid_n cell midpoints with |entry| <= eps.
std::vector<BadLuEntry> badlu_scan(const BasisMatrix& gl, const BasisMatrix& g0,
                                   const UnitSystem& u, int grid_n,
                                   const std::vector<double>& eps_list);

/// Star discrepancy of points in [0,1)^2 evaluated at the corners of a
/// grid x grid lattice of anchored boxes.
double star_discrepancy_2d(const std::vector<std::array<double, 2>>& points,
                           int grid = 64);

struct StatsReport {
  std::size_t n = 0;
  double ks_s1 = 0.0, ks_s2 = 0.0, ks_c1 = 0.0, ks_c2 = 0.0;
  ChiSquare chi2_torus, chi2_joint;
  bool chi2_torus_valid = false, chi2_joint_valid = false;
  std::vector<CuspFraction> cusp;
  double discrepancy_2d = 0.0;
  std::vector<BadLuEntry> badlu;

  std::string to_json() const;
};

StatsReport make_report(const std::vector<IntersectionPoint>& points, int bins,
                        const std::vector<double>& cusp_heights);

}  // namespace cubic
