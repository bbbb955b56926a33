#include "cubic/cli.hpp"

#include <fmt/format.h>

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <tuple>

#include "cubic/congruence.hpp"
#include "cubic/io.hpp"
#include "cubic/parse.hpp"
#include "cubic/stats.hpp"

namespace cubic {

namespace {

constexpr const char* kPrincipalBasis = "0,0,1;0,1,0;1,0,0";

struct Field {
  CubicPoly f;
  EmbeddingTriple roots;
};

// Checks the assumptions of the dynamics pipeline; throws PreconditionFailed
// with a readable reason.
Field totally_real_maximal(const std::string& poly) {
  const CubicPoly f = CubicPoly::parse(poly);
  if (!is_irreducible(f)) {
    throw PreconditionFailed(fmt::format("{} is reducible", f.to_string()));
  }
  if (f.disc() <= 0) {
    throw PreconditionFailed(fmt::format(
        "not totally real: disc = {}", f.disc().get_str()));
  }
  if (const auto bad = maximality_check(f); !bad.empty()) {
    throw PreconditionFailed(fmt::format("not maximal: Z[alpha] fails at p = {}",
                                         bad.front().get_str()));
  }
  return {f, real_roots(f)};
}

UnitSystem units_for(const RunConfig& c, const CubicPoly& f) {
  if (c.eps1 || c.eps2) {
    if (!c.eps1 || !c.eps2) throw ParseError("--eps1 and --eps2 go together");
    return verify_generators(f, OrderElement::parse(*c.eps1),
                             OrderElement::parse(*c.eps2));
  }
  return find_totally_positive_generators(f, c.height_bound);
}

std::vector<ClassBasis> classes_for(const RunConfig& c) {
  std::vector<ClassBasis> out;
  if (c.class_bases.empty()) {
    out.push_back(parse_class_basis(kPrincipalBasis));
  }
  for (const auto& text : c.class_bases) out.push_back(parse_class_basis(text));
  return out;
}

using Tuple = std::tuple<Integer, Integer, Integer, Integer, Integer>;

Tuple key_of(const IntersectionPoint& p) {
  return {p.m1, p.mu1, p.m2, p.mu2, p.lambda};
}

Tuple key_of(const IdealHNF& h) { return {h.m1, h.mu1, h.m2, h.mu2, h.lambda}; }

// Exactness chain for one emitted point; empty string when it holds.
std::string check_point(const IntersectionPoint& p, const CubicPoly& f) {
  if (gcd(gcd(p.m1, p.m2), p.mu1 - p.mu2) != 1) {
    return fmt::format("gcd(m1, m2, mu1 - mu2) != 1 at ({},{},{},{})",
                       p.m1.get_str(), p.mu1.get_str(), p.m2.get_str(),
                       p.mu2.get_str());
  }
  if (!divides(p.m1, f(p.mu1)) || !divides(p.m2, f(p.mu2))) {
    return "congruence root check failed";
  }
  if (p.norm != p.m1 * p.m1 * p.m2) return "norm differs from m1^2 m2";
  const Integer expected = lambda_from_roots(p.mu1, p.m1, p.mu2, p.m2, f);
  if (expected != p.lambda) {
    return fmt::format("lambda {} differs from the congruence value {}",
                       p.lambda.get_str(), expected.get_str());
  }
  if (!(std::abs(p.zx) <= 0.5 + 1e-12 && p.zx * p.zx + p.zy * p.zy >= 1 - 1e-12)) {
    return "hyperbolic point is not reduced";
  }
  return {};
}

void write_to(const std::string& path, std::ostream& fallback,
              const std::function<void(std::ostream&)>& body) {
  if (path.empty() || path == "-") {
    body(fallback);
    return;
  }
  std::ofstream file(path);
  if (!file) throw PreconditionFailed(fmt::format("cannot open {}", path));
  body(file);
}

}  // namespace

ClassBasis parse_class_basis(const std::string& text) {
  const auto parts = split(text, ';');
  if (parts.size() != 3) {
    throw ParseError(fmt::format("class basis needs three elements: '{}'", text));
  }
  ClassBasis out;
  for (int i = 0; i < 3; ++i) {
    out.basis[i] = OrderElement::parse(parts[i]);
    if (!out.basis[i].is_integral()) {
      throw ParseError("class basis elements must lie in Z[alpha]");
    }
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(fmt::format("cannot read config file {}", path));
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    const auto parts = split(line, '=');
    if (parts.size() == 1 && parts[0].empty()) continue;
    if (parts.size() != 2 || parts[0].empty()) {
      throw ParseError(fmt::format("{}:{}: expected key=value", path, line_no));
    }
    out.emplace_back(parts[0], parts[1]);
  }
  return out;
}

int cmd_roots(const RunConfig& c, std::ostream& out, std::ostream&) {
  const CubicPoly f = CubicPoly::parse(c.poly);
  if (c.modulus < 1) throw ParseError("--mod must be positive");
  for (auto r : roots_mod_m(f, c.modulus).roots) out << r << '\n';
  return kOk;
}

int cmd_ideals(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const CubicPoly f = CubicPoly::parse(c.poly);
  const auto ideals = enumerate_ideal_tuples(f, c.max_norm);
  write_to(c.out, out, [&](std::ostream& o) { write_ideals_csv(o, ideals); });
  err << fmt::format("{} ideals with norm <= {}\n", ideals.size(), c.max_norm);
  return kOk;
}

int cmd_units(const RunConfig& c, std::ostream& out, std::ostream&) {
  const auto field = totally_real_maximal(c.poly);
  const UnitSystem u = units_for(c, field.f);
  out << "eps1 " << u.eps1.to_string() << '\n';
  out << "eps2 " << u.eps2.to_string() << '\n';
  out << "regulator " << format_real(u.regulator) << '\n';
  out << "C_D " << format_real(u.bounds[0]) << ',' << format_real(u.bounds[1])
      << ',' << format_real(u.bounds[2]) << '\n';
  return kOk;
}

int cmd_run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  Field field{CubicPoly(0L, 0L, 0L), {}};
  UnitSystem u;
  std::vector<ClassBasis> classes;
  try {
    if (c.max_norm < 1) throw ParseError("--max-norm must be at least 1");
    field = totally_real_maximal(c.poly);
    u = units_for(c, field.f);
    classes = classes_for(c);
  } catch (const InternalError&) {
    throw;
  } catch (const Error& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  }
  std::vector<IntersectionPoint> points;
  try {
    points = run_pipeline(field.f, u, classes, c.max_norm);
    for (const auto& p : points) {
      if (const auto msg = check_point(p, field.f); !msg.empty()) {
        err << "internal assertion: " << msg << '\n';
        return kInternalError;
      }
    }
  } catch (const Error& e) {
    err << "internal assertion: " << e.what() << '\n';
    return kInternalError;
  }
  write_to(c.out, out, [&](std::ostream& o) { write_points_csv(o, points); });
  if (!c.report.empty()) {
    StatsReport r = make_report(points, c.bins, c.cusp_heights);
    const BasisMatrix g0 = basis_matrix_from_roots(field.roots, field.f);
    const BasisMatrix gl = basis_matrix_of(classes.front().basis, field.roots);
    r.badlu = badlu_scan(gl, g0, u, 100, {0.0, 0.025, 0.05, 0.1, 0.2});
    write_to(c.report, out, [&](std::ostream& o) { o << r.to_json(); });
  }
  err << fmt::format("{} points with norm <= {}\n", points.size(), c.max_norm);
  return kOk;
}

int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err) {
  struct Failure {
    std::string what;
  };
  auto pass = [&](const std::string& name) { out << "PASS " << name << '\n'; };
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw Failure{what};
  };
  try {
    const CubicPoly f = CubicPoly::parse(c.poly);
    require(is_irreducible(f), "F is reducible");

    // Random ring arithmetic.
    std::mt19937_64 rng(c.seed);
    std::uniform_int_distribution<long> coeff(-50, 50);
    auto random_element = [&] {
      return OrderElement::from_int(coeff(rng), coeff(rng), coeff(rng));
    };
    for (int i = 0; i < 100; ++i) {
      const auto x = random_element(), y = random_element(), z = random_element();
      require(mul(x, y, f) == mul(y, x, f), "mul is not commutative");
      require(mul(mul(x, y, f), z, f) == mul(x, mul(y, z, f), f),
              "mul is not associative");
      require(norm(mul(x, y, f), f) == norm(x, f) * norm(y, f),
              "norm is not multiplicative");
    }
    pass("ring arithmetic");

    const auto bad = maximality_check(f);
    if (!bad.empty()) {
      std::string primes;
      for (const auto& p : bad) primes += (primes.empty() ? "" : ",") + p.get_str();
      out << "INFO Z[alpha] is not maximal at p = " << primes << '\n';
      int instances = 0;
      for (const auto& p : bad) {
        const Integer p2 = p * p;
        for (Integer mu = 0; mu < p2 && mu < 100000; ++mu) {
          if (!divides(p2, f(mu)) || !divides(p, f.derivative(mu))) continue;
          require(verify_obstruction(f, p, mu),
                  fmt::format("I1 I2 != p I1 at p = {}, mu = {}", p.get_str(),
                              mu.get_str()));
          ++instances;
        }
      }
      require(instances > 0, "no obstruction instance at the failing primes");
      pass(fmt::format("obstruction ({} instances)", instances));
      out << "INFO ring-only mode: ideal suites need a maximal order\n";
      return kOk;
    }

    require(verify_obstruction(CubicPoly(-1L, -2L, -8L), Integer(2), Integer(0)),
            "I1 I2 != 2 I1 for X^3 - X^2 - 2X - 8");
    for (long p = 2; p <= 100; ++p) {
      if (!is_prime(p)) continue;
      for (long mu = 0; mu < p * p; ++mu) {
        const Integer m(mu);
        require(!(divides(Integer(p * p), f(m)) && divides(Integer(p), f.derivative(m))),
                fmt::format("maximal F admits an obstruction at p = {}, mu = {}", p, mu));
      }
    }
    pass("obstruction");

    const std::int64_t bound = std::min<std::int64_t>(c.max_norm, 10000);
    auto tuples = enumerate_ideal_tuples(f, bound);
    if (c.inject_wrong_lambda && tuples.size() > 1) {
      tuples[1].lambda = floor_mod(tuples[1].lambda + 1, tuples[1].m1 * tuples[1].m2);
    }
    for (const auto& t : tuples) {
      const auto rows = t.rows(f);
      const IntMatrix m(rows.begin(), rows.end());
      const std::string id = fmt::format("({},{},{},{},{})", t.m1.get_str(),
                                         t.mu1.get_str(), t.m2.get_str(),
                                         t.mu2.get_str(), t.lambda.get_str());
      require(lambda_from_roots(t.mu1, t.m1, t.mu2, t.m2, f) == t.lambda,
              "lambda formula disagrees at " + id);
      require(is_closed_under_alpha(m, f), "not closed under alpha at " + id);
      require(hnf_reduce(m, f) == t, "HNF round trip fails at " + id);
      require(is_ideal(t, f), "gcd criterion rejects " + id);
    }
    pass(fmt::format("lambda formula and closure ({} ideals)", tuples.size()));

    if (f.disc() > 0) {
      const UnitSystem u = units_for(c, f);
      const auto points = run_pipeline(f, u, classes_for(c), bound);
      std::vector<Tuple> from_xi, from_roots;
      for (const auto& p : points) {
        const auto msg = check_point(p, f);
        require(msg.empty(), msg);
        from_xi.push_back(key_of(p));
      }
      for (const auto& t : tuples) from_roots.push_back(key_of(t));
      std::sort(from_xi.begin(), from_xi.end());
      std::sort(from_roots.begin(), from_roots.end());
      require(from_xi == from_roots,
              fmt::format("xi enumeration gives {} tuples, roots give {}",
                          from_xi.size(), from_roots.size()));
      pass(fmt::format("cross enumeration ({} tuples)", from_xi.size()));
    }
  } catch (const Failure& e) {
    out << "FAIL " << e.what << '\n';
    err << "verify failed: " << e.what << '\n';
    return kVerifyFailed;
  } catch (const Error& e) {
    out << "FAIL " << e.what() << '\n';
    err << "verify failed: " << e.what() << '\n';
    return kVerifyFailed;
  }
  return kOk;
}

int cmd_stats(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (c.input.empty()) throw ParseError("stats needs --in <points.csv>");
  std::ifstream in(c.input);
  if (!in) throw ParseError(fmt::format("cannot read {}", c.input));
  const auto points = read_points_csv(in);
  const StatsReport r = make_report(points, c.bins, c.cusp_heights);
  write_to(c.report, out, [&](std::ostream& o) { o << r.to_json(); });
  err << fmt::format("{} points read\n", points.size());
  return kOk;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  // Config file values are inserted ahead of the command line for keys the
  // command line does not set, so flags win.
  std::vector<std::string> args(argv + 1, argv + argc);
  for (std::size_t i = 0; i + 1 < args.size(); ++i) {
    if (args[i] != "--config") continue;
    std::vector<std::string> extra;
    try {
      for (const auto& [key, value] : read_config_file(args[i + 1])) {
        const std::string flag = "--" + key;
        if (std::find(args.begin(), args.end(), flag) != args.end()) continue;
        if (value == "true" && key == "inject-wrong-lambda") {
          extra.push_back(flag);
          continue;
        }
        extra.push_back(flag);
        extra.push_back(value);
      }
    } catch (const Error& e) {
      err << "config error: " << e.what() << '\n';
      return kConfigError;
    }
    args.erase(args.begin() + static_cast<std::ptrdiff_t>(i),
               args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
    if (!args.empty()) args.insert(args.begin() + 1, extra.begin(), extra.end());
    break;
  }

  RunConfig c;
  CLI::App app{"Ideals of totally real cubic orders and their congruence roots"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  std::vector<double> heights;
  std::string eps1, eps2;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--poly", c.poly, "a1,a2,a3 of F = X^3 + a1 X^2 + a2 X + a3");
    sub->add_option("--max-norm", c.max_norm, "norm bound X");
    sub->add_option("--height-bound", c.height_bound, "unit search height");
    sub->add_option("--eps1", eps1, "first totally positive unit c0,c1,c2");
    sub->add_option("--eps2", eps2, "second totally positive unit c0,c1,c2");
    sub->add_option("--class-basis", c.class_bases, "basis of a class representative")
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    sub->add_option("--bins", c.bins, "chi-square bins per axis");
    sub->add_option("--cusp-Y", heights, "cusp height")
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    sub->add_option("--out", c.out, "CSV output path");
    sub->add_option("--report", c.report, "JSON report path");
    sub->add_option("--seed", c.seed, "seed for randomized checks");
  };
  auto* roots = app.add_subcommand("roots", "roots of F mod m");
  common(roots);
  roots->add_option("--mod", c.modulus, "modulus m")->required();
  auto* ideals = app.add_subcommand("ideals", "ideal tuples up to a norm bound");
  common(ideals);
  auto* units = app.add_subcommand("units", "totally positive unit generators");
  common(units);
  auto* run = app.add_subcommand("run", "enumerate points and write CSV and report");
  common(run);
  auto* verify = app.add_subcommand("verify", "exact verification suites");
  common(verify);
  verify->add_flag("--inject-wrong-lambda", c.inject_wrong_lambda,
                   "corrupt one lambda to exercise the failure path");
  auto* stats = app.add_subcommand("stats", "statistics of a points CSV");
  common(stats);
  stats->add_option("--in", c.input, "points CSV")->required();

  std::vector<const char*> raw{argv[0]};
  for (const auto& a : args) raw.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(raw.size()), raw.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kConfigError;
  }
  if (!eps1.empty()) c.eps1 = eps1;
  if (!eps2.empty()) c.eps2 = eps2;
  if (!heights.empty()) c.cusp_heights = heights;

  try {
    if (*roots) return cmd_roots(c, out, err);
    if (*ideals) return cmd_ideals(c, out, err);
    if (*units) return cmd_units(c, out, err);
    if (*run) return cmd_run(c, out, err);
    if (*verify) return cmd_verify(c, out, err);
    if (*stats) return cmd_stats(c, out, err);
  } catch (const InternalError& e) {
    err << "internal assertion: " << e.what() << '\n';
    return kInternalError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }
  return kConfigError;
}

}  // namespace cubic
