#pragma once

#include <array>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace msbem {

inline constexpr double gravity = 9.81;

// k > 0 with omega^2 = g k tanh(k h).
double solve_dispersion(double omega, double h);

struct PhaseGroup {
  double c;
  double cg;
};
PhaseGroup group_velocity(double k, double h, double omega);

// Depth h(x): constant h1 for x <= a, h3 for x >= b, and a cubic polynomial
// or a monotone-cubic interpolated table in between.
class BathymetryProfile {
 public:
  static BathymetryProfile constant(double h);
  static BathymetryProfile cubic(double a, double b, std::array<double, 4> coef);
  static BathymetryProfile table(std::vector<std::pair<double, double>> samples);

  double depth(double x) const;
  double a() const { return a_; }
  double b() const { return b_; }
  double h1() const { return h1_; }
  double h3() const { return h3_; }
  bool is_constant() const { return kind_ == Kind::Constant; }
  // Sampling check of the transition; true if non-increasing or non-decreasing.
  bool is_monotone(int n = 2000) const;
  // Stable textual fingerprint used to tag kernel caches.
  std::string fingerprint() const;

 private:
  enum class Kind { Constant, Cubic, Table };
  BathymetryProfile() = default;
  void check() const;
  double transition(double x) const;

  Kind kind_ = Kind::Constant;
  double a_ = 0.0, b_ = 0.0, h1_ = 0.0, h3_ = 0.0;
  std::array<double, 4> coef_{};
  std::vector<std::pair<double, double>> table_;
  struct TableInterp;
  std::shared_ptr<const TableInterp> interp_;
};

// Sampled k, c, cg and modified wavenumber khat^2 = k^2 - s''/s, s = sqrt(c cg).
struct WavenumberField {
  BathymetryProfile bathy = BathymetryProfile::constant(1.0);
  double omega = 0.0;
  std::vector<double> xs, h, k, c, cg, khat2;
  double khat1 = 0.0, khat3 = 0.0, khat_star = 0.0;
  double dx = 0.0;

  double a() const { return bathy.a(); }
  double b() const { return bathy.b(); }
  // Linear interpolation of the samples; flank values outside [a, b].
  double khat2_at(double x) const;
  double khat_at(double x) const;
  // Pointwise quantities from the depth profile itself.
  double k_at(double x) const;
  double cg_at(double x) const;
  double s_at(double x) const;
  double ds_at(double x) const;
};

WavenumberField modified_wavenumber_profile(const BathymetryProfile& bathy, double omega,
                                            int n_samples = 2000);

}  // namespace msbem
