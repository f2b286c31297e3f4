#pragma once

// Twistor geometry of a Riemann surface in a conformal chart (z, w).
// The base coordinate z ranges over a chart of the surface, the fiber
// coordinate w over the open unit disk; the pair encodes a linear complex
// structure on the tangent plane through its generator d/dz + conj(w) d/dzbar.
// A conformal metric density h > 0 induces horizontal lift coefficients,
// holomorphy residuals for functions and sections, and a fiberwise metric.

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "twistkit/types.hpp"

namespace twistkit {

using ChartFn = std::function<Complex(Complex)>;

// central Wirtinger differences, d/dz = (d/dx - i d/dy)/2
Complex wirtinger_z(const ChartFn& f, Complex z, double step = kFdStep);
Complex wirtinger_zbar(const ChartFn& f, Complex z, double step = kFdStep);
// one Richardson extrapolation step on the central differences, error O(step^4)
Complex wirtinger_z_refined(const ChartFn& f, Complex z, double step = kFdStep);
Complex wirtinger_zbar_refined(const ChartFn& f, Complex z, double step = kFdStep);

// Complex scalar field on a chart. Derivatives come from analytic closures
// when given, otherwise from central Wirtinger differences with fd_step.
struct ScalarField {
  ChartFn evaluate;
  ChartFn dz;     // optional analytic closures
  ChartFn dzbar;
  double fd_step = kFdStep;
  std::string kind = "analytic";  // "analytic" | "finite-difference" | "grid"
  bool lower_accuracy = false;

  Complex value(Complex z) const;
  Complex d_z(Complex z) const;
  Complex d_zbar(Complex z) const;
  bool has_analytic() const { return static_cast<bool>(dz) && static_cast<bool>(dzbar); }
};

ScalarField analytic_field(ChartFn value, ChartFn dz, ChartFn dzbar);
ScalarField fd_field(ChartFn value, double step = kFdStep);

// Conformal metric density h, real and positive wherever it is evaluated.
struct MetricDensity {
  ScalarField h;
  std::string name = "custom";

  double value(Complex z) const;  // rejects nonreal or nonpositive values
  Complex d_z(Complex z) const { return h.d_z(z); }
  Complex d_zbar(Complex z) const { return h.d_zbar(z); }
};

// catalog of named metric densities: "flat", "fubini-study"
MetricDensity metric_by_name(const std::string& name);
std::vector<std::string> metric_catalog();

// Tabulated field loaded from JSON {"grid": {"re": [lo, hi, n], "im": [lo, hi, n]},
// "values": [[...], ...]} with bilinear interpolation between grid nodes.
// Values may be numbers or [re, im] pairs; values[i][j] sits at (re_i, im_j).
ScalarField load_grid_field(const std::string& json_text);

// Point of the disk bundle: base coordinate z, fiber coordinate w, |w| < 1.
struct TwistorChartPoint {
  Complex z;
  Complex w;
  TwistorChartPoint(Complex z_, Complex w_);
};

// Section of the disk bundle, z -> w(z) with |w(z)| < 1.
struct SectionField {
  ScalarField w;

  Complex value(Complex z) const;  // rejects values on or outside the unit circle
  Complex d_z(Complex z) const { return w.d_z(z); }
  Complex d_zbar(Complex z) const { return w.d_zbar(z); }
};

SectionField constant_section(Complex c);
// the rotation-invariant section w(z) = |z|^k / (1 + |z|^(2k)), real valued in [0, 1/2]
Complex fubini_study_section(double k, Complex z);
SectionField fubini_study_section_field(double k);

// Function on the disk bundle, f(z, w), with four Wirtinger partials.
struct TwistorFunction {
  using Fn = std::function<Complex(Complex, Complex)>;
  Fn evaluate;
  Fn dz, dzbar, dw, dwbar;  // optional analytic closures
  double fd_step = kFdStep;
  std::string kind = "analytic";

  Complex value(Complex z, Complex w) const;
  Complex d_z(Complex z, Complex w) const;
  Complex d_zbar(Complex z, Complex w) const;
  Complex d_w(Complex z, Complex w) const;
  Complex d_wbar(Complex z, Complex w) const;
  bool has_analytic() const;
};

TwistorFunction fd_twistor_function(TwistorFunction::Fn value, double step = kFdStep);

// Fiber components (p, q) of the unique horizontal (1,0) field
// u = d/dz + conj(w) d/dzbar + p d/dw + q d/dwbar over the metric density h.
struct LiftCoeffs {
  Complex p;
  Complex q;
};
LiftCoeffs lift_coeffs(const MetricDensity& h, const TwistorChartPoint& pt);

// Holomorphy residuals of f at pt: both vanish exactly when f is holomorphic
// for the twistor structure induced by h.
//   r1 = df/dwbar
//   r2 = h df/dzbar + h w df/dz + w (dh/dzbar - w dh/dz) df/dw
struct HoloResidual {
  Complex r1;
  Complex r2;
};
HoloResidual holo_residual(const TwistorFunction& f, const MetricDensity& h,
                           const TwistorChartPoint& pt);

// Self-holomorphy residual of a section at z:
//   w (w dh/dz - dh/dzbar) + h dw/dzbar + h w dw/dz
Complex selfholo_residual(const SectionField& section, const MetricDensity& h, Complex z);

// Equivalent first-order form dF/dzbar + d(F w)/dz, the product differentiated
// as a whole.
Complex beltrami_variant_residual(const ScalarField& f, const SectionField& section,
                                  Complex z);

// Fiberwise metric data at pt: g11bar = h l, g11 = h m with
// l = (1 + |w|^2)/(1 - |w|^2), m = -2 conj(w)/(1 - |w|^2), and l + w m = 1.
struct SectionMetric {
  Complex g11bar;
  Complex g11;
  Complex l;
  Complex m;
};
SectionMetric section_metric(const MetricDensity& h, const TwistorChartPoint& pt);

// Matrix of the complex structure at fiber point w in the (d/dz, d/dzbar)
// frame; squares to -I and fixes the generator (1, conj(w)) up to a factor i.
Eigen::Matrix2cd j_matrix(Complex w);

// Fiber coordinate in a new chart. dchart is the derivative of the target
// chart coordinate with respect to the source chart coordinate at the point;
// the modulus of w is preserved.
Complex chart_change_section(Complex w, Complex dchart);

// Consistency of the horizontal lift with the fiber direction: max over
// components of the deviation of the bracket [u, d/dw], evaluated by finite
// differences at the given step with h treated as a black box, from its
// closed-form value (dp/dw) d/dw. Includes |dq/dw|, which must vanish.
double bracket_check(const MetricDensity& h, const TwistorChartPoint& pt,
                     double step = kFdStep);

}  // namespace twistkit
