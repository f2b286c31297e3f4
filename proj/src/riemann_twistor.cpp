#include "twistkit/riemann_twistor.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <utility>

#include "json.hpp"

namespace twistkit {

namespace {

const Complex kI(0.0, 1.0);

// real slope d/dt of t^k / (1 + t^(2k)), written through cosh to survive
// large |z| without overflow
double fs_section_value(double k, double t) {
  if (t <= 0.0) return 0.0;
  return 0.5 / std::cosh(k * std::log(t));
}

double fs_section_slope(double k, double t) {
  const double kl = k * std::log(t);
  return -(k / t) * std::tanh(kl) * 0.5 / std::cosh(kl);
}

void check_step(double step, const char* who) {
  if (!(step > 0.0)) throw std::invalid_argument(std::string(who) + ": step must be positive");
}

}  // namespace

Complex wirtinger_z(const ChartFn& f, Complex z, double step) {
  check_step(step, "wirtinger_z");
  const Complex fx = (f(z + step) - f(z - step)) / (2.0 * step);
  const Complex fy = (f(z + kI * step) - f(z - kI * step)) / (2.0 * step);
  return 0.5 * (fx - kI * fy);
}

Complex wirtinger_zbar(const ChartFn& f, Complex z, double step) {
  check_step(step, "wirtinger_zbar");
  const Complex fx = (f(z + step) - f(z - step)) / (2.0 * step);
  const Complex fy = (f(z + kI * step) - f(z - kI * step)) / (2.0 * step);
  return 0.5 * (fx + kI * fy);
}

Complex wirtinger_z_refined(const ChartFn& f, Complex z, double step) {
  return (4.0 * wirtinger_z(f, z, 0.5 * step) - wirtinger_z(f, z, step)) / 3.0;
}

Complex wirtinger_zbar_refined(const ChartFn& f, Complex z, double step) {
  return (4.0 * wirtinger_zbar(f, z, 0.5 * step) - wirtinger_zbar(f, z, step)) / 3.0;
}

Complex ScalarField::value(Complex z) const { return evaluate(z); }

Complex ScalarField::d_z(Complex z) const {
  return dz ? dz(z) : wirtinger_z(evaluate, z, fd_step);
}

Complex ScalarField::d_zbar(Complex z) const {
  return dzbar ? dzbar(z) : wirtinger_zbar(evaluate, z, fd_step);
}

ScalarField analytic_field(ChartFn value, ChartFn dz, ChartFn dzbar) {
  ScalarField f;
  f.evaluate = std::move(value);
  f.dz = std::move(dz);
  f.dzbar = std::move(dzbar);
  return f;
}

ScalarField fd_field(ChartFn value, double step) {
  check_step(step, "fd_field");
  ScalarField f;
  f.evaluate = std::move(value);
  f.fd_step = step;
  f.kind = "finite-difference";
  return f;
}

double MetricDensity::value(Complex z) const {
  const Complex v = h.value(z);
  if (std::abs(v.imag()) > kIdentityTol * std::max(1.0, std::abs(v)))
    throw std::invalid_argument("metric density must be real valued");
  if (!(v.real() > 0.0))
    throw std::invalid_argument("metric density must be positive at the evaluated point");
  return v.real();
}

MetricDensity metric_by_name(const std::string& name) {
  if (name == "flat") {
    MetricDensity m;
    m.h = analytic_field([](Complex) { return Complex(1.0, 0.0); },
                         [](Complex) { return Complex(0.0, 0.0); },
                         [](Complex) { return Complex(0.0, 0.0); });
    m.name = "flat";
    return m;
  }
  if (name == "fubini-study") {
    MetricDensity m;
    auto hval = [](Complex z) { return Complex(1.0 / (1.0 + std::norm(z)), 0.0); };
    m.h = analytic_field(
        hval,
        [hval](Complex z) { return -std::conj(z) * hval(z) * hval(z); },
        [hval](Complex z) { return -z * hval(z) * hval(z); });
    m.name = "fubini-study";
    return m;
  }
  throw std::invalid_argument("unknown metric density \"" + name +
                              "\" (available: flat, fubini-study)");
}

std::vector<std::string> metric_catalog() { return {"flat", "fubini-study"}; }

namespace {

struct GridAxis {
  double lo = 0.0;
  double hi = 0.0;
  int n = 0;
};

GridAxis parse_axis(const nlohmann::json& j, const char* name) {
  if (!j.is_array() || j.size() != 3)
    throw std::invalid_argument(std::string("grid field: axis \"") + name +
                                "\" must be [lo, hi, count]");
  GridAxis a;
  a.lo = j[0].get<double>();
  a.hi = j[1].get<double>();
  a.n = j[2].get<int>();
  if (!(a.hi > a.lo) || a.n < 2)
    throw std::invalid_argument(std::string("grid field: axis \"") + name +
                                "\" needs hi > lo and at least two nodes");
  return a;
}

Complex parse_grid_value(const nlohmann::json& j) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2)
    return Complex(j[0].get<double>(), j[1].get<double>());
  throw std::invalid_argument("grid field: values must be numbers or [re, im] pairs");
}

struct GridData {
  GridAxis re, im;
  std::vector<std::vector<Complex>> vals;  // vals[i][j] at (re_i, im_j)
};

// node index and fractional offset along one axis, rejecting extrapolation
std::pair<int, double> locate(const GridAxis& a, double x) {
  const double dx = (a.hi - a.lo) / (a.n - 1);
  const double slack = 1e-9 * (a.hi - a.lo);
  if (x < a.lo - slack || x > a.hi + slack)
    throw std::invalid_argument("grid field: point outside the tabulated grid");
  const double u = (x - a.lo) / dx;
  const int i = std::clamp(static_cast<int>(std::floor(u)), 0, a.n - 2);
  return {i, u - i};
}

}  // namespace

ScalarField load_grid_field(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("grid field: ") + e.what());
  }
  if (!doc.contains("grid") || !doc.contains("values"))
    throw std::invalid_argument("grid field: expected top-level \"grid\" and \"values\"");

  auto data = std::make_shared<GridData>();
  data->re = parse_axis(doc["grid"].at("re"), "re");
  data->im = parse_axis(doc["grid"].at("im"), "im");

  const nlohmann::json& rows = doc["values"];
  if (!rows.is_array() || static_cast<int>(rows.size()) != data->re.n)
    throw std::invalid_argument("grid field: values must have one row per re node");
  data->vals.reserve(rows.size());
  for (const auto& row : rows) {
    if (!row.is_array() || static_cast<int>(row.size()) != data->im.n)
      throw std::invalid_argument("grid field: each row must have one entry per im node");
    std::vector<Complex> out;
    out.reserve(row.size());
    for (const auto& cell : row) out.push_back(parse_grid_value(cell));
    data->vals.push_back(std::move(out));
  }

  ScalarField f;
  f.evaluate = [data](Complex z) {
    const auto [i, a] = locate(data->re, z.real());
    const auto [j, b] = locate(data->im, z.imag());
    const auto& v = data->vals;
    return (1.0 - a) * (1.0 - b) * v[i][j] + a * (1.0 - b) * v[i + 1][j] +
           (1.0 - a) * b * v[i][j + 1] + a * b * v[i + 1][j + 1];
  };
  f.kind = "grid";
  f.lower_accuracy = true;
  return f;
}

TwistorChartPoint::TwistorChartPoint(Complex z_, Complex w_) : z(z_), w(w_) {
  if (std::abs(w) >= 1.0 - kFiberGuard)
    throw std::invalid_argument("fiber coordinate must lie inside the unit disk");
}

Complex SectionField::value(Complex z) const {
  const Complex v = w.value(z);
  if (std::abs(v) >= 1.0 - kFiberGuard)
    throw std::invalid_argument("section value must lie inside the unit disk");
  return v;
}

SectionField constant_section(Complex c) {
  if (std::abs(c) >= 1.0 - kFiberGuard)
    throw std::invalid_argument("constant_section: value must lie inside the unit disk");
  SectionField s;
  s.w = analytic_field([c](Complex) { return c; }, [](Complex) { return Complex(0.0, 0.0); },
                       [](Complex) { return Complex(0.0, 0.0); });
  return s;
}

Complex fubini_study_section(double k, Complex z) {
  if (!(k > 0.0)) throw std::invalid_argument("fubini_study_section: k must be positive");
  return Complex(fs_section_value(k, std::abs(z)), 0.0);
}

SectionField fubini_study_section_field(double k) {
  if (!(k > 0.0)) throw std::invalid_argument("fubini_study_section_field: k must be positive");
  // d|z|/dz = conj(z)/(2|z|), not defined at the origin unless the radial
  // slope vanishes there
  auto radial = [k](Complex z, bool toward_z) -> Complex {
    const double t = std::abs(z);
    if (t == 0.0) {
      if (k > 1.0) return Complex(0.0, 0.0);
      throw NumericalError("fubini_study_section_field: derivative undefined at the origin");
    }
    const Complex dir = (toward_z ? std::conj(z) : z) / (2.0 * t);
    return fs_section_slope(k, t) * dir;
  };
  SectionField s;
  s.w = analytic_field([k](Complex z) { return fubini_study_section(k, z); },
                       [radial](Complex z) { return radial(z, true); },
                       [radial](Complex z) { return radial(z, false); });
  return s;
}

Complex TwistorFunction::value(Complex z, Complex w) const { return evaluate(z, w); }

Complex TwistorFunction::d_z(Complex z, Complex w) const {
  if (dz) return dz(z, w);
  return wirtinger_z([this, w](Complex zz) { return evaluate(zz, w); }, z, fd_step);
}

Complex TwistorFunction::d_zbar(Complex z, Complex w) const {
  if (dzbar) return dzbar(z, w);
  return wirtinger_zbar([this, w](Complex zz) { return evaluate(zz, w); }, z, fd_step);
}

Complex TwistorFunction::d_w(Complex z, Complex w) const {
  if (dw) return dw(z, w);
  return wirtinger_z([this, z](Complex ww) { return evaluate(z, ww); }, w, fd_step);
}

Complex TwistorFunction::d_wbar(Complex z, Complex w) const {
  if (dwbar) return dwbar(z, w);
  return wirtinger_zbar([this, z](Complex ww) { return evaluate(z, ww); }, w, fd_step);
}

bool TwistorFunction::has_analytic() const {
  return static_cast<bool>(dz) && static_cast<bool>(dzbar) && static_cast<bool>(dw) &&
         static_cast<bool>(dwbar);
}

TwistorFunction fd_twistor_function(TwistorFunction::Fn value, double step) {
  check_step(step, "fd_twistor_function");
  TwistorFunction f;
  f.evaluate = std::move(value);
  f.fd_step = step;
  f.kind = "finite-difference";
  return f;
}

LiftCoeffs lift_coeffs(const MetricDensity& h, const TwistorChartPoint& pt) {
  const double hv = h.value(pt.z);
  const Complex hz = h.d_z(pt.z);
  const Complex hzb = h.d_zbar(pt.z);
  const Complex wb = std::conj(pt.w);
  return {pt.w * (wb * hzb - hz) / hv, wb * (hz - wb * hzb) / hv};
}

HoloResidual holo_residual(const TwistorFunction& f, const MetricDensity& h,
                           const TwistorChartPoint& pt) {
  const Complex z = pt.z;
  const Complex w = pt.w;
  const double hv = h.value(z);
  HoloResidual r;
  r.r1 = f.d_wbar(z, w);
  r.r2 = hv * f.d_zbar(z, w) + hv * w * f.d_z(z, w) +
         w * (h.d_zbar(z) - w * h.d_z(z)) * f.d_w(z, w);
  return r;
}

Complex selfholo_residual(const SectionField& section, const MetricDensity& h, Complex z) {
  const Complex w = section.value(z);
  const double hv = h.value(z);
  return w * (w * h.d_z(z) - h.d_zbar(z)) + hv * section.d_zbar(z) + hv * w * section.d_z(z);
}

Complex beltrami_variant_residual(const ScalarField& f, const SectionField& section,
                                  Complex z) {
  const Complex fzb = f.d_zbar(z);
  Complex prod_z;
  if (f.has_analytic() && section.w.has_analytic()) {
    prod_z = f.dz(z) * section.value(z) + f.value(z) * section.d_z(z);
  } else {
    const double step = std::min(f.fd_step, section.w.fd_step);
    prod_z = wirtinger_z([&](Complex zz) { return f.value(zz) * section.value(zz); }, z, step);
  }
  return fzb + prod_z;
}

SectionMetric section_metric(const MetricDensity& h, const TwistorChartPoint& pt) {
  const double hv = h.value(pt.z);
  const double ww = std::norm(pt.w);
  const double den = 1.0 - ww;
  SectionMetric sm;
  sm.l = Complex((1.0 + ww) / den, 0.0);
  sm.m = -2.0 * std::conj(pt.w) / den;
  sm.g11bar = hv * sm.l;
  sm.g11 = hv * sm.m;
  return sm;
}

Eigen::Matrix2cd j_matrix(Complex w) {
  if (std::abs(w) >= 1.0 - kFiberGuard)
    throw std::invalid_argument("j_matrix: fiber coordinate must lie inside the unit disk");
  const double ww = std::norm(w);
  const double den = 1.0 - ww;
  const double l = (1.0 + ww) / den;
  Eigen::Matrix2cd m;
  m << kI * l, -2.0 * kI * w / den, 2.0 * kI * std::conj(w) / den, -kI * l;
  return m;
}

Complex chart_change_section(Complex w, Complex dchart) {
  if (dchart == Complex(0.0, 0.0))
    throw std::invalid_argument("chart_change_section: chart derivative must be nonzero");
  return w * dchart / std::conj(dchart);
}

double bracket_check(const MetricDensity& h, const TwistorChartPoint& pt, double step) {
  check_step(step, "bracket_check");
  if (step > 1e-3)
    throw std::invalid_argument("bracket_check: step must not exceed 1e-3");
  if (std::abs(pt.w) + step >= 1.0 - kFiberGuard)
    throw NumericalError("bracket_check: step pushes the fiber point outside the disk");

  // rebuild the lift coefficients with h treated as a black box, so every
  // derivative in the pipeline is a central difference at the same step
  const double hv = h.value(pt.z);
  const ChartFn heval = h.h.evaluate;
  const Complex hz = wirtinger_z(heval, pt.z, step);
  const Complex hzb = wirtinger_zbar(heval, pt.z, step);
  auto pfun = [&](Complex w) { return w * (std::conj(w) * hzb - hz) / hv; };
  auto qfun = [&](Complex w) { return std::conj(w) * (hz - std::conj(w) * hzb) / hv; };
  auto base_zbar = [](Complex w) { return std::conj(w); };

  // fiber derivative of every nonconstant coefficient of u; the d/dz
  // coefficient is the constant 1 and drops out of the bracket
  const Complex bw = wirtinger_z(pfun, pt.w, step);
  const Complex bwbar = wirtinger_z(qfun, pt.w, step);
  const Complex bzbar = wirtinger_z(base_zbar, pt.w, step);

  const Complex target = (std::conj(pt.w) * h.d_zbar(pt.z) - h.d_z(pt.z)) / hv;
  return std::max({std::abs(bw - target), std::abs(bwbar), std::abs(bzbar)});
}

}  // namespace twistkit
