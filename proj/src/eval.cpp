#include "tkernel/eval.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "tkernel/error.hpp"

namespace tkernel {

SlopeFit fit_slope(const RiskCurve& curve, std::int64_t n_min, std::int64_t n_max) {
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& c : curve.points) {
    if (c.n < n_min || c.n > n_max) continue;
    if (!(c.error > 0.0)) throw std::domain_error("slope fit needs positive errors");
    xs.push_back(std::log10(static_cast<double>(c.n)));
    ys.push_back(std::log10(c.error));
  }
  if (xs.size() < 2) throw std::invalid_argument("slope fit needs at least two checkpoints in range");
  const double m = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= m;
  my /= m;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  SlopeFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double rss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
    rss += r * r;
  }
  fit.residual = std::sqrt(rss / m);
  fit.n_min = n_min;
  fit.n_max = n_max;
  fit.count = xs.size();
  return fit;
}

SlopeFit fit_slope(const RiskCurve& curve) {
  if (curve.points.empty()) throw std::invalid_argument("slope fit on an empty curve");
  const std::int64_t top = curve.points.back().n;
  return fit_slope(curve, std::max<std::int64_t>(1, top / 100), top);
}

std::vector<std::int64_t> checkpoint_grid(std::int64_t n_max, int per_decade) {
  if (per_decade < 1) throw std::invalid_argument("checkpoints per decade must be >= 1");
  std::vector<std::int64_t> grid;
  for (int j = 0;; ++j) {
    const auto n = static_cast<std::int64_t>(std::ceil(std::pow(10.0, static_cast<double>(j) / per_decade) - 1e-9));
    if (n > n_max) break;
    if (grid.empty() || grid.back() != n) grid.push_back(n);
  }
  return grid;
}

TestSet draw_test_set(const TargetFunction& target, const RngSpec& spec, std::size_t size) {
  RngStream rng(spec);
  TestSet set;
  set.d = target.dim();
  set.points.reserve(size * static_cast<std::size_t>(set.d));
  set.target.reserve(size);
  for (std::size_t i = 0; i < size; ++i) {
    const auto x = sample_uniform_sphere(rng, set.d);
    set.points.insert(set.points.end(), x.begin(), x.end());
    set.target.push_back(eval_target(target, x));
  }
  return set;
}

FourierSeries fourier_of_function(const std::function<double(double)>& f, int L) {
  if (L < 0) throw std::invalid_argument("trigonometric degree must be >= 0");
  const int N = 2 * L + 2;
  std::vector<double> vals(static_cast<std::size_t>(N));
  for (int j = 0; j < N; ++j) vals[static_cast<std::size_t>(j)] = f(2.0 * std::numbers::pi * j / N);
  FourierSeries fs;
  for (double v : vals) fs.a0 += v;
  fs.a0 /= N;
  fs.cos.assign(static_cast<std::size_t>(L), 0.0);
  fs.sin.assign(static_cast<std::size_t>(L), 0.0);
  for (int k = 1; k <= L; ++k) {
    double c = 0.0;
    double s = 0.0;
    for (int j = 0; j < N; ++j) {
      const double a = 2.0 * std::numbers::pi * static_cast<double>(k) * j / N;
      c += vals[static_cast<std::size_t>(j)] * std::cos(a);
      s += vals[static_cast<std::size_t>(j)] * std::sin(a);
    }
    fs.cos[static_cast<std::size_t>(k - 1)] = 2.0 * c / N;
    fs.sin[static_cast<std::size_t>(k - 1)] = 2.0 * s / N;
  }
  return fs;
}

FourierSeries fourier_of_poly(const PolyCoeffs& p) {
  if (p.dim() != 2) throw DimensionMismatch("Fourier conversion needs a circle polynomial (d = 2)");
  std::vector<double> mono(p.size());
  return fourier_of_function(
      [&](double a) {
        const double x[2] = {std::cos(a), std::sin(a)};
        p.basis().monomials(x, mono);
        double sum = 0.0;
        for (std::size_t i = 0; i < mono.size(); ++i) sum += p[i] * mono[i];
        return sum;
      },
      p.degree());
}

FourierSeries fourier_of_ksgd(const KernelSgd& est, Estimate which, int M, ExecPolicy policy) {
  const auto angles = est.angles();
  const std::vector<double> w = which == Estimate::Last
                                    ? std::vector<double>(est.coefficients().begin(), est.coefficients().end())
                                    : est.averaged_coefficients();
  const auto sums = trig_sums(angles, w, M, policy);
  FourierSeries fs;
  fs.a0 = sums.cos[0];
  fs.cos.resize(static_cast<std::size_t>(M));
  fs.sin.resize(static_cast<std::size_t>(M));
  for (int k = 1; k <= M; ++k) {
    const double wk = std::pow(2.0 * k, -2.0 * est.s());
    fs.cos[static_cast<std::size_t>(k - 1)] = wk * sums.cos[static_cast<std::size_t>(k)];
    fs.sin[static_cast<std::size_t>(k - 1)] = wk * sums.sin[static_cast<std::size_t>(k)];
  }
  return fs;
}

double excess_risk_exact_circle(const FourierSeries& pred, const TargetFunction& target, int M, double tail_tol) {
  if (target.bernoulli_order() == 0) throw std::invalid_argument("exact circle risk needs a Bernoulli target");
  if (pred.cutoff() > M)
    throw std::invalid_argument("predictor has harmonics beyond the cutoff M = " + std::to_string(M));
  const double tail = target.fourier_tail(M);
  if (tail > tail_tol)
    throw TailToleranceError("target Fourier tail " + std::to_string(tail) + " beyond M = " + std::to_string(M) +
                             " exceeds tolerance " + std::to_string(tail_tol));
  // Bernoulli targets have zero mean and no sine part.
  double risk = pred.a0 * pred.a0;
  for (int k = 1; k <= M; ++k) {
    const bool inside = k <= pred.cutoff();
    const double c = (inside ? pred.cos[static_cast<std::size_t>(k - 1)] : 0.0) - target.fourier_cos(k);
    const double s = inside ? pred.sin[static_cast<std::size_t>(k - 1)] : 0.0;
    risk += 0.5 * (c * c + s * s);
  }
  return risk + tail;
}

double excess_risk_exact_poly(const PolyCoeffs& p, const PolyCoeffs& q, ExecPolicy policy) {
  if (p.dim() != q.dim()) throw DimensionMismatch("risk between polynomials of different dimension");
  PolyCoeffs diff = p;
  diff.axpy(-1.0, q);
  return gram_quadratic_form(diff.basis(), diff.coeffs(), policy);
}

}  // namespace tkernel
