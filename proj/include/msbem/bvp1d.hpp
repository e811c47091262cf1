#pragma once

#include <complex>
#include <vector>

#include "msbem/environment.hpp"

namespace msbem {

using cplx = std::complex<double>;

inline constexpr int default_elems_per_wavelength = 120;

// sqrt(z) on the outgoing/decaying branch: Im >= 0, and Re >= 0 when Im == 0.
cplx outgoing_sqrt(cplx z);

struct RadiationParams {
  cplx alpha;
  cplx beta;
};
RadiationParams radiation_params(cplx xi, double khat1, double khat3);

// Nodal solution of  Psi'' + (khat^2 - xi^2) Psi = -delta(x - x0)  on [lo, hi]
// with outgoing conditions Psi'(lo) = -i alpha Psi(lo), Psi'(hi) = i beta Psi(hi).
struct TransformedSolution {
  std::vector<double> xs;
  int source_index = 0;
  cplx xi, alpha, beta;
  std::vector<cplx> psi;
  // Psi_x at nodes: weighted mean of the two adjacent element gradients,
  // boundary-condition value at the interval ends.
  std::vector<cplx> dpsi;
  // Left and right limits of Psi_x at the source node (jump of -1).
  cplx dpsi_src_left, dpsi_src_right;
};

enum class GradientMode {
  ElementConstant,  // gradient of the linear shape functions
  Recovered,        // linear interpolation of the nodal (recovered) gradients
};

struct PsiPair {
  cplx psi;
  cplx dpsi;
};

// Linear-element Galerkin system for one source abscissa, reusable across xi.
class FemSystem {
 public:
  // The interval is widened to contain [a, b] of the profile and x0.
  FemSystem(const WavenumberField& field, double lo, double hi, double x0,
            int elems_per_wavelength = default_elems_per_wavelength);

  const std::vector<double>& xs() const { return xs_; }
  int source_index() const { return src_; }
  double x0() const { return xs_[src_]; }
  double lo() const { return xs_.front(); }
  double hi() const { return xs_.back(); }
  int size() const { return int(xs_.size()); }
  double khat1() const { return khat1_; }
  double khat3() const { return khat3_; }

  // Tridiagonal matrix for this xi (symmetric: sub == super), corners included.
  void assemble(cplx xi, std::vector<cplx>& off, std::vector<cplx>& diag) const;
  // Nodal Psi into out[0..size).  Thomas sweep; dense LU if a pivot vanishes.
  void solve_nodal(cplx xi, cplx* out) const;
  // Same system solved with a dense LU (test oracle).
  std::vector<cplx> solve_dense(cplx xi) const;

  TransformedSolution solve(cplx xi) const;
  // Recovered gradients from nodal values.
  void recover_gradient(const cplx* psi, cplx alpha, cplx beta, cplx* dpsi, cplx& src_left,
                        cplx& src_right) const;

 private:
  std::vector<double> xs_;
  int src_ = 0;
  double khat1_ = 0.0, khat3_ = 0.0;
  // element-assembled pieces: stiffness - khat^2 mass, and consistent mass
  std::vector<double> kd_, ko_, md_, mo_;
};

TransformedSolution solve_transformed(const WavenumberField& field, cplx xi, double x0,
                                      int elems_per_wavelength = default_elems_per_wavelength);

// Psi and Psi_x at any x; exponential flank law outside the node range.
PsiPair evaluate_transformed(const TransformedSolution& sol, double x,
                             GradientMode mode = GradientMode::ElementConstant);

}  // namespace msbem
