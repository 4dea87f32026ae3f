#include "extinction_lab/fitness_model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

namespace extinction_lab {
namespace {

constexpr double kSupportTolerance = 1e-12;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::optional<double> to_double(std::string_view s) {
  s = trim(s);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

double require_double(std::string_view s, std::string_view what) {
  auto value = to_double(s);
  if (!value) {
    throw std::invalid_argument(fmt::format("cannot parse {} from '{}'", what, s));
  }
  return *value;
}

std::pair<std::string_view, std::string_view> split_once(std::string_view s, char sep) {
  const auto pos = s.find(sep);
  if (pos == std::string_view::npos) return {s, {}};
  return {s.substr(0, pos), s.substr(pos + 1)};
}

}  // namespace

FitnessDistribution FitnessDistribution::uniform(double lo, double hi) {
  if (!(std::isfinite(lo) && std::isfinite(hi) && lo < hi)) {
    throw std::invalid_argument("uniform law needs finite lo < hi");
  }
  return FitnessDistribution(Uniform{lo, hi});
}

FitnessDistribution FitnessDistribution::exponential(double rate) {
  if (!(rate > 0.0 && std::isfinite(rate))) {
    throw std::invalid_argument("exponential law needs a positive finite rate");
  }
  return FitnessDistribution(Exponential{rate});
}

FitnessDistribution FitnessDistribution::table(std::vector<double> x,
                                               std::vector<double> cdf) {
  if (x.size() != cdf.size() || x.size() < 2) {
    throw std::invalid_argument("CDF table needs at least two (x, F) rows");
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i]) || !std::isfinite(cdf[i])) {
      throw std::invalid_argument("CDF table contains non-finite values");
    }
    if (i > 0 && !(x[i] > x[i - 1] && cdf[i] > cdf[i - 1])) {
      throw std::invalid_argument(
          fmt::format("CDF table columns must be strictly increasing (row {})", i));
    }
  }
  if (cdf.front() != 0.0 || cdf.back() != 1.0) {
    throw std::invalid_argument("CDF table must start at F = 0 and end at F = 1");
  }
  return FitnessDistribution(Table{std::move(x), std::move(cdf), {}});
}

FitnessDistribution FitnessDistribution::table_from_csv(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument(fmt::format("cannot open CDF table '{}'", path.string()));
  }
  std::vector<double> xs, fs;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto [lhs, rhs] = split_once(body, ',');
    auto x = to_double(lhs);
    auto f = to_double(rhs);
    if (!x || !f) {
      if (first) {
        first = false;
        continue;
      }
      throw std::invalid_argument(fmt::format("malformed CDF table row '{}'", body));
    }
    first = false;
    xs.push_back(*x);
    fs.push_back(*f);
  }
  auto dist = table(std::move(xs), std::move(fs));
  std::get<Table>(dist.law_).source = path.string();
  return dist;
}

FitnessDistribution FitnessDistribution::parse(std::string_view spec) {
  const auto [kind, args] = split_once(trim(spec), ':');
  if (kind == "uniform") {
    const auto [a, b] = split_once(args, ',');
    return uniform(require_double(a, "uniform lower bound"),
                   require_double(b, "uniform upper bound"));
  }
  if (kind == "exp") {
    return exponential(require_double(args, "exponential rate"));
  }
  if (kind == "table") {
    if (args.empty()) throw std::invalid_argument("table: needs a path");
    return table_from_csv(std::filesystem::path(std::string(args)));
  }
  throw std::invalid_argument(fmt::format(
      "unknown distribution '{}' (expected uniform:a,b, exp:rate or table:<path>)", spec));
}

double FitnessDistribution::cdf(double x) const {
  return std::visit(
      Overloaded{
          [x](const Uniform& u) {
            if (x <= u.lo) return 0.0;
            if (x >= u.hi) return 1.0;
            return (x - u.lo) / (u.hi - u.lo);
          },
          [x](const Exponential& e) { return x <= 0.0 ? 0.0 : -std::expm1(-e.rate * x); },
          [x](const Table& t) {
            if (x <= t.x.front()) return 0.0;
            if (x >= t.x.back()) return 1.0;
            const auto it = std::upper_bound(t.x.begin(), t.x.end(), x);
            const auto i = static_cast<std::size_t>(it - t.x.begin());
            const double w = (x - t.x[i - 1]) / (t.x[i] - t.x[i - 1]);
            return t.cdf[i - 1] + w * (t.cdf[i] - t.cdf[i - 1]);
          },
      },
      law_);
}

double FitnessDistribution::quantile(double p) const {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("quantile level must lie in [0, 1]");
  }
  return std::visit(
      Overloaded{
          [p](const Uniform& u) {
            if (p == 1.0) return u.hi;
            return u.lo + p * (u.hi - u.lo);
          },
          [p](const Exponential& e) {
            if (p == 1.0) return std::numeric_limits<double>::infinity();
            return -std::log1p(-p) / e.rate;
          },
          [p](const Table& t) {
            if (p <= 0.0) return t.x.front();
            if (p >= 1.0) return t.x.back();
            const auto it = std::upper_bound(t.cdf.begin(), t.cdf.end(), p);
            const auto i = static_cast<std::size_t>(it - t.cdf.begin());
            const double w = (p - t.cdf[i - 1]) / (t.cdf[i] - t.cdf[i - 1]);
            return t.x[i - 1] + w * (t.x[i] - t.x[i - 1]);
          },
      },
      law_);
}

Interval FitnessDistribution::support() const {
  return std::visit(
      Overloaded{
          [](const Uniform& u) { return Interval{u.lo, u.hi}; },
          [](const Exponential&) {
            return Interval{0.0, std::numeric_limits<double>::infinity()};
          },
          [](const Table& t) { return Interval{t.x.front(), t.x.back()}; },
      },
      law_);
}

std::string FitnessDistribution::describe() const {
  return std::visit(
      Overloaded{
          [](const Uniform& u) { return fmt::format("uniform:{},{}", u.lo, u.hi); },
          [](const Exponential& e) { return fmt::format("exp:{}", e.rate); },
          [](const Table& t) {
            return t.source.empty() ? fmt::format("table:<{} rows>", t.x.size())
                                    : "table:" + t.source;
          },
      },
      law_);
}

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::kSubcritical:
      return "subcritical";
    case Regime::kCritical:
      return "critical";
    case Regime::kSupercritical:
      return "supercritical";
  }
  return "unknown";
}

ModelParams ModelParams::create(double lambda, double mu, FitnessDistribution dist,
                                int k, double f) {
  if (!(lambda > 0.0 && std::isfinite(lambda))) {
    throw std::invalid_argument("birth rate lambda must be positive");
  }
  if (!(mu > 0.0 && std::isfinite(mu))) {
    throw std::invalid_argument("death rate mu must be positive");
  }
  if (k < 1) throw std::invalid_argument("initial species count k must be >= 1");
  ModelParams params{lambda, mu, std::move(dist), k, f};
  effective_birth_rate(params);
  return params;
}

double ModelParams::lambda_f() const { return effective_birth_rate(*this); }

double effective_birth_rate(const ModelParams& params) {
  const double level = params.dist.cdf(params.f);
  if (!(level > kSupportTolerance && level < 1.0 - kSupportTolerance)) {
    throw std::invalid_argument(fmt::format(
        "tagged fitness {} is outside the support of {} (F(f) = {})", params.f,
        params.dist.describe(), level));
  }
  return params.lambda * level;
}

std::optional<double> critical_fitness(double lambda, double mu,
                                       const FitnessDistribution& dist) {
  if (!(lambda > mu)) return std::nullopt;
  return dist.quantile(mu / lambda);
}

Regime classify_regime(double lambda_f, double mu) {
  const double eps = kCriticalTolerance * std::max(lambda_f, mu);
  if (std::abs(lambda_f - mu) <= eps) return Regime::kCritical;
  return lambda_f < mu ? Regime::kSubcritical : Regime::kSupercritical;
}

Regime classify_regime(const ModelParams& params) {
  return classify_regime(params.lambda_f(), params.mu);
}

}  // namespace extinction_lab
