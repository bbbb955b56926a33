#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cubic/ideal_hnf.hpp"
#include "cubic/intersection.hpp"

namespace cubic {

/// Positional notation with 15 significant digits, e.g. 0.123456789012345.
std::string format_real(double x);

inline constexpr const char* kPointsHeader = "N,m1,mu1,m2,mu2,lambda,s1,s2,zx,zy,c1,c2,t";
inline constexpr const char* kIdealsHeader = "a,m1,mu1,m2,mu2,lambda,norm";

void write_points_csv(std::ostream& out, const std::vector<IntersectionPoint>& points);
void write_ideals_csv(std::ostream& out, const std::vector<IdealHNF>& ideals);

/// Reads a file written by write_points_csv. Throws ParseError.
std::vector<IntersectionPoint> read_points_csv(std::istream& in);

}  // namespace cubic
