#pragma once

// Truncated-kernel SGD.
//
// Both engines run the same recursion
//   f_n = f_{n-1} + gamma_n (Y_n - f_{n-1}(X_n)) K^T_{L_n}(X_n, .)
//   fbar_n = fbar_{n-1} + (f_n - fbar_{n-1}) / (n + 1)
// with L_n the smallest degree whose sphere-polynomial dimension reaches
// n^theta. TKernelSgd stores f_n as monomial coefficients (O(dim Pi_L(R^d))
// per step). TKernelSgdReference stores the samples and is quadratic in n;
// it exists to check the coefficient engine.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tkernel/kernels.hpp"
#include "tkernel/poly.hpp"

namespace tkernel {

enum class Estimate { Last, Averaged };

struct TruncationSchedule {
  double theta;

  explicit TruncationSchedule(double theta);
  // theta = 1/(4 s r + 1) when the source exponent r is known.
  static TruncationSchedule optimal(double s, double r) { return TruncationSchedule(1.0 / (4.0 * s * r + 1.0)); }
  // Lower admissible value theta = 1/(2s + 1).
  static TruncationSchedule minimal(double s) { return TruncationSchedule(1.0 / (2.0 * s + 1.0)); }
};

// gamma_n = gamma0 * n^{-t}
struct StepSchedule {
  double gamma0;
  double t;

  StepSchedule(double gamma0, double t);
  double at(std::int64_t n) const;
};

int truncation_level(double theta, std::int64_t n, int d);
double step_size(const StepSchedule& sched, std::int64_t n);

struct Sample {
  std::vector<double> x;
  double y = 0.0;
};

struct WorkCounters {
  std::uint64_t updates = 0;  // coefficient touches (Alg 2) or kernel evaluations (Alg 1)
  std::uint64_t storage = 0;  // live coefficients (Alg 2) or stored samples (Alg 1)
};

class TKernelSgd {
 public:
  TKernelSgd(KernelFamily fam, TruncationSchedule trunc, StepSchedule step,
             int max_degree = kDefaultMaxDegree);

  void step(const Sample& sample);
  double predict(std::span<const double> x, Estimate which = Estimate::Averaged) const;

  std::int64_t iterations() const { return n_; }
  int level() const { return table_.level(); }
  const PolyCoeffs& fhat() const { return fhat_; }
  const PolyCoeffs& fbar() const { return fbar_; }
  const PolyCoeffs& estimate(Estimate which) const { return which == Estimate::Last ? fhat_ : fbar_; }
  const KernelCoeffTable& table() const { return table_; }
  const KernelFamily& family() const { return table_.family(); }
  const TruncationSchedule& truncation() const { return trunc_; }
  const StepSchedule& step_schedule() const { return step_; }
  const WorkCounters& counters() const { return counters_; }

  // Reassembles a state from its serialised parts. The table is rebuilt by
  // the same increment sequence the live engine performs.
  static TKernelSgd restore(KernelFamily fam, TruncationSchedule trunc, StepSchedule step, std::int64_t n,
                            int level, std::vector<double> fhat, std::vector<double> fbar,
                            WorkCounters counters, int max_degree = kDefaultMaxDegree);

 private:
  void raise_level(int L);

  TruncationSchedule trunc_;
  StepSchedule step_;
  std::int64_t n_ = 0;
  KernelCoeffTable table_;
  PolyCoeffs fhat_;
  PolyCoeffs fbar_;
  WorkCounters counters_;
  std::vector<double> scratch_;
};

class TKernelSgdReference {
 public:
  static constexpr std::size_t kDefaultBudget = 100000;
  static constexpr std::size_t kQuadraticWarning = 10000;

  TKernelSgdReference(KernelFamily fam, TruncationSchedule trunc, StepSchedule step,
                      std::size_t budget = kDefaultBudget, int max_degree = kDefaultMaxDegree);

  void step(const Sample& sample);
  double predict(std::span<const double> x, Estimate which = Estimate::Averaged) const;

  std::int64_t iterations() const { return static_cast<std::int64_t>(points_.size()); }
  int level() const { return levels_.empty() ? 0 : levels_.back(); }
  const WorkCounters& counters() const { return counters_; }
  std::span<const double> coefficients() const { return coef_; }
  std::span<const double> averaged_coefficients() const { return coef_bar_; }
  std::span<const int> levels() const { return levels_; }

 private:
  KernelFamily fam_;
  TruncationSchedule trunc_;
  StepSchedule step_;
  std::size_t budget_;
  int max_degree_;
  std::vector<std::vector<double>> points_;
  std::vector<int> levels_;
  std::vector<double> coef_;
  std::vector<double> coef_bar_;
  WorkCounters counters_;
  bool warned_ = false;
};

}  // namespace tkernel
