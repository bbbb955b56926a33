#include "cubic/io.hpp"

#include <fmt/format.h>

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>

#include "cubic/parse.hpp"

namespace cubic {

std::string format_real(double x) {
  if (x == 0.0 || !std::isfinite(x)) return x == 0.0 ? "0" : fmt::format("{}", x);
  const int exponent = static_cast<int>(std::floor(std::log10(std::abs(x))));
  const int decimals = std::max(0, 14 - exponent);
  return fmt::format("{:.{}f}", x, decimals);
}

void write_points_csv(std::ostream& out, const std::vector<IntersectionPoint>& points) {
  out << kPointsHeader << '\n';
  for (const auto& p : points) {
    out << fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{}\n", p.norm.get_str(),
                       p.m1.get_str(), p.mu1.get_str(), p.m2.get_str(),
                       p.mu2.get_str(), p.lambda.get_str(), format_real(p.s1),
                       format_real(p.s2), format_real(p.zx), format_real(p.zy),
                       format_real(p.c1), format_real(p.c2), format_real(p.t));
  }
}

void write_ideals_csv(std::ostream& out, const std::vector<IdealHNF>& ideals) {
  out << kIdealsHeader << '\n';
  for (const auto& i : ideals) {
    out << fmt::format("{},{},{},{},{},{},{}\n", i.a.get_str(), i.m1.get_str(),
                       i.mu1.get_str(), i.m2.get_str(), i.mu2.get_str(),
                       i.lambda.get_str(), i.norm().get_str());
  }
}

namespace {

double parse_real(const std::string& token) {
  double v = 0.0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw ParseError(fmt::format("not a number: '{}'", token));
  }
  return v;
}

}  // namespace

std::vector<IntersectionPoint> read_points_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kPointsHeader) {
    throw ParseError(fmt::format("unexpected CSV header '{}'", line));
  }
  std::vector<IntersectionPoint> out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto f = split(line, ',');
    if (f.size() != 13) {
      throw ParseError(fmt::format("line {}: expected 13 fields, got {}", line_no, f.size()));
    }
    IntersectionPoint p;
    p.norm = parse_integer(f[0]);
    p.m1 = parse_integer(f[1]);
    p.mu1 = parse_integer(f[2]);
    p.m2 = parse_integer(f[3]);
    p.mu2 = parse_integer(f[4]);
    p.lambda = parse_integer(f[5]);
    p.s1 = parse_real(f[6]);
    p.s2 = parse_real(f[7]);
    p.zx = parse_real(f[8]);
    p.zy = parse_real(f[9]);
    p.c1 = parse_real(f[10]);
    p.c2 = parse_real(f[11]);
    p.t = parse_real(f[12]);
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace cubic
