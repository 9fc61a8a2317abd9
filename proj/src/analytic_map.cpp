#include "plb/analytic_map.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "plb/errors.hpp"

namespace plb {

namespace {

constexpr double kBoundaryOffset = 1e-9;  // boundary traces run at scale 1 - eps

std::complex<double> int_pow(std::complex<double> z, int k) {
  std::complex<double> acc{1.0, 0.0};
  while (k > 0) {
    acc *= z;
    --k;
  }
  return acc;
}

std::complex<double> horner(const std::vector<std::complex<double>>& c,
                            std::complex<double> z) {
  std::complex<double> acc{0.0, 0.0};
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

std::complex<double> horner_derivative(const std::vector<std::complex<double>>& c,
                                       std::complex<double> z) {
  std::complex<double> acc{0.0, 0.0};
  for (std::size_t k = c.size(); k-- > 1;)
    acc = acc * z + static_cast<double>(k) * c[k];
  return acc;
}

void require_inside(const AnalyticMap& map, std::complex<double> z) {
  if (!map.base().contains(z)) {
    std::ostringstream os;
    os << "point (" << z.real() << ", " << z.imag()
       << ") lies outside the open base domain";
    throw DomainError(os.str());
  }
  if (map.kind() == MapKind::PowerSeries &&
      std::abs(z) >= 0.999 * map.series_radius()) {
    std::ostringstream os;
    os << "power series evaluation at |z| = " << std::abs(z)
       << " exceeds 0.999 of the validity radius " << map.series_radius();
    throw DomainError(os.str());
  }
}

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string format_complex(std::complex<double> c) {
  if (c.imag() == 0.0) return format_real(c.real());
  std::string s = format_real(c.real());
  if (c.imag() >= 0.0) s += "+";
  s += format_real(c.imag()) + "i";
  return s;
}

}  // namespace

AnalyticMap AnalyticMap::identity() {
  AnalyticMap m;
  m.kind_ = MapKind::Identity;
  m.base_ = BaseDomain::unit_disc();
  return m;
}

AnalyticMap AnalyticMap::epicycloid(int n) {
  if (n < 2) throw ValidationError("epicycloid order must satisfy n >= 2");
  AnalyticMap m;
  m.kind_ = MapKind::Epicycloid;
  m.base_ = BaseDomain::unit_disc();
  m.n_ = n;
  return m;
}

AnalyticMap AnalyticMap::sine(double d) {
  if (!(d > 0.0)) throw ValidationError("sine map half-height d must be positive");
  AnalyticMap m;
  m.kind_ = MapKind::Sine;
  m.base_ = BaseDomain::rectangle(std::numbers::pi / 2.0, d);
  return m;
}

AnalyticMap AnalyticMap::polynomial(std::vector<std::complex<double>> coeffs) {
  if (coeffs.empty()) throw ValidationError("polynomial needs at least one coefficient");
  AnalyticMap m;
  m.kind_ = MapKind::Polynomial;
  m.base_ = BaseDomain::unit_disc();
  m.coeffs_ = std::move(coeffs);
  return m;
}

AnalyticMap AnalyticMap::power_series(std::vector<std::complex<double>> coeffs,
                                      double radius) {
  if (coeffs.empty()) throw ValidationError("power series needs at least one coefficient");
  if (!(radius > 0.0)) throw ValidationError("power series needs a positive validity radius");
  AnalyticMap m;
  m.kind_ = MapKind::PowerSeries;
  m.base_ = BaseDomain::unit_disc();
  m.coeffs_ = std::move(coeffs);
  m.radius_ = radius;
  return m;
}

std::string AnalyticMap::spec_string() const {
  switch (kind_) {
    case MapKind::Identity:
      return "identity";
    case MapKind::Epicycloid:
      return "epicycloid n=" + std::to_string(n_);
    case MapKind::Sine:
      return "sine d=" + format_real(base_.half_height);
    case MapKind::Polynomial:
    case MapKind::PowerSeries: {
      std::string s = "poly coeffs=";
      for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        if (k) s += ",";
        s += format_complex(coeffs_[k]);
      }
      return s;
    }
  }
  return {};
}

std::complex<double> eval_map(const AnalyticMap& map, std::complex<double> z) {
  require_inside(map, z);
  switch (map.kind()) {
    case MapKind::Identity:
      return z;
    case MapKind::Epicycloid:
      return z + int_pow(z, map.epicycloid_order()) / double(map.epicycloid_order());
    case MapKind::Sine:
      return std::sin(z);
    case MapKind::Polynomial:
    case MapKind::PowerSeries:
      return horner(map.coefficients(), z);
  }
  throw DomainError("unknown map kind");
}

std::complex<double> eval_derivative(const AnalyticMap& map, std::complex<double> z) {
  require_inside(map, z);
  std::complex<double> d;
  switch (map.kind()) {
    case MapKind::Identity:
      d = {1.0, 0.0};
      break;
    case MapKind::Epicycloid:
      d = 1.0 + int_pow(z, map.epicycloid_order() - 1);
      break;
    case MapKind::Sine:
      d = std::cos(z);
      break;
    case MapKind::Polynomial:
    case MapKind::PowerSeries:
      d = horner_derivative(map.coefficients(), z);
      break;
    default:
      throw DomainError("unknown map kind");
  }
  if (d == std::complex<double>{0.0, 0.0}) {
    std::ostringstream os;
    os << "derivative vanishes at interior point (" << z.real() << ", " << z.imag()
       << "); map is not conformal there";
    throw DomainError(os.str());
  }
  return d;
}

double jacobian(const AnalyticMap& map, std::complex<double> z) {
  return std::norm(eval_derivative(map, z));
}

double disc_conformal_radius(std::complex<double> w) {
  const double n = std::norm(w);
  if (!(n < 1.0)) throw DomainError("conformal radius requires |w| < 1");
  return 1.0 - n;
}

Eigen::ArrayX2d boundary_polyline(const AnalyticMap& map, int n_samples) {
  if (n_samples < 3) throw ValidationError("boundary polyline needs at least 3 samples");
  const double scale = 1.0 - kBoundaryOffset;
  Eigen::ArrayX2d pts(n_samples, 2);
  const BaseDomain& base = map.base();
  if (base.kind == BaseDomain::Kind::UnitDisc) {
    for (int k = 0; k < n_samples; ++k) {
      const double t = 2.0 * std::numbers::pi * k / n_samples;
      const std::complex<double> z = scale * std::polar(1.0, t);
      const std::complex<double> w = eval_map(map, z);
      pts(k, 0) = w.real();
      pts(k, 1) = w.imag();
    }
    return pts;
  }
  // Rectangle: walk the scaled perimeter counterclockwise by arclength,
  // starting at the lower-left corner.
  const double a = scale * base.half_width;
  const double b = scale * base.half_height;
  const double per = 4.0 * (a + b);
  for (int k = 0; k < n_samples; ++k) {
    double t = per * k / n_samples;
    std::complex<double> z;
    if (t < 2.0 * a) {
      z = {-a + t, -b};
    } else if (t < 2.0 * a + 2.0 * b) {
      z = {a, -b + (t - 2.0 * a)};
    } else if (t < 4.0 * a + 2.0 * b) {
      z = {a - (t - 2.0 * a - 2.0 * b), b};
    } else {
      z = {-a, b - (t - 4.0 * a - 2.0 * b)};
    }
    const std::complex<double> w = eval_map(map, z);
    pts(k, 0) = w.real();
    pts(k, 1) = w.imag();
  }
  return pts;
}

namespace {

std::complex<double> parse_complex_literal(const std::string& tok) {
  const auto bad = [&]() -> std::complex<double> {
    throw ValidationError("unparseable complex literal '" + tok + "'");
  };
  if (tok.empty()) return bad();

  auto parse_real = [&](const std::string& s) -> double {
    if (s.empty()) return bad().real();
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      bad();
    }
    if (used != s.size()) bad();
    return v;
  };

  if (tok.back() != 'i') return {parse_real(tok), 0.0};

  std::string body = tok.substr(0, tok.size() - 1);
  // Split at the sign separating real and imaginary parts; signs directly
  // after an exponent marker or at the front belong to a single number.
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    const char c = body[k];
    if ((c == '+' || c == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string::npos) {
    if (body.empty() || body == "+") return {0.0, 1.0};
    if (body == "-") return {0.0, -1.0};
    return {0.0, parse_real(body)};
  }
  const std::string re = body.substr(0, split);
  std::string im = body.substr(split);
  if (im == "+") im = "1";
  if (im == "-") im = "-1";
  return {parse_real(re), parse_real(im)};
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

AnalyticMap parse_map_spec(const std::string& text) {
  std::istringstream is(text);
  std::vector<std::string> tokens;
  for (std::string t; is >> t;) tokens.push_back(t);
  if (!tokens.empty() && tokens[0].rfind("map=", 0) == 0)
    tokens[0] = tokens[0].substr(4);
  if (tokens.empty() || tokens[0].empty())
    throw ValidationError("empty map specification");

  const std::string& kind = tokens[0];
  auto value_of = [&](const std::string& key) -> std::string {
    for (std::size_t k = 1; k < tokens.size(); ++k) {
      if (tokens[k].rfind(key + "=", 0) == 0)
        return tokens[k].substr(key.size() + 1);
    }
    throw ValidationError("map spec '" + text + "' is missing '" + key + "='");
  };

  if (kind == "identity") {
    if (tokens.size() != 1)
      throw ValidationError("unexpected token '" + tokens[1] + "' after 'identity'");
    return AnalyticMap::identity();
  }
  if (kind == "epicycloid") {
    const std::string v = value_of("n");
    std::size_t used = 0;
    int n = 0;
    try {
      n = std::stoi(v, &used);
    } catch (const std::exception&) {
      throw ValidationError("unparseable integer '" + v + "' in map spec");
    }
    if (used != v.size())
      throw ValidationError("unparseable integer '" + v + "' in map spec");
    return AnalyticMap::epicycloid(n);
  }
  if (kind == "sine") {
    const std::string v = value_of("d");
    std::size_t used = 0;
    double d = 0;
    try {
      d = std::stod(v, &used);
    } catch (const std::exception&) {
      throw ValidationError("unparseable real '" + v + "' in map spec");
    }
    if (used != v.size())
      throw ValidationError("unparseable real '" + v + "' in map spec");
    return AnalyticMap::sine(d);
  }
  if (kind == "poly") {
    std::vector<std::complex<double>> coeffs;
    for (const std::string& c : split(value_of("coeffs"), ','))
      coeffs.push_back(parse_complex_literal(c));
    return AnalyticMap::polynomial(std::move(coeffs));
  }
  throw ValidationError("unknown map kind '" + kind + "'");
}

}  // namespace plb
