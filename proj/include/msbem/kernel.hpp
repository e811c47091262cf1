#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "msbem/bvp1d.hpp"
#include "msbem/environment.hpp"

namespace msbem {

// Inversion contour: xi_l = l*dxi - i*tau, l = 0..N, on [0, Xi].
struct ContourParams {
  double Xi = 0.0;
  double tau = 0.0;
  int M = 4096;

  int N() const { return M / 2; }
  double dxi() const { return Xi / N(); }
  double dy() const { return M_PI / Xi; }
  double Y() const { return N() * dy(); }

  static ContourParams make(double khat_star, double xi_factor = 6.0, double tau_factor = 1.0,
                            int M = 4096);
  // M a power of two, Xi >= 4 khat*, tau > 0.
  void check(double khat_star) const;
};

enum class InversionScheme {
  // psi = C1 + (e^{tau y} P(y) + e^{-tau y} P(-y)) / 2pi + exact tail; P the one-sided
  // transform along the depressed line with endpoint jumps integrated in closed form.
  ExactPath,
  // Symmetric-extension cosine series with e^{tau y} weight and cosh(tau y) tail;
  // the short vertical segment and the sinh(tau y) remainder are dropped.
  Printed,
};

struct KernelValue {
  cplx psi;
  cplx psi_x;
  cplx psi_y;
};

inline constexpr int contour_gauss_points = 4;

// Transform samples for one field abscissa.
struct FieldSpectrum {
  double x = 0.0;
  double x0 = 0.0;
  std::vector<cplx> psi;    // Psi(x; xi_l), l = 0..N
  std::vector<cplx> psi_x;  // Psi_x(x; xi_l)
  std::array<cplx, contour_gauss_points> c1{}, c1x{};  // Psi, Psi_x at xi = i tau s_g
};

// All contour solves for one source abscissa.  Nodal Psi is stored node-major so
// that spectra at any field abscissa are cheap to form.
class SourceSweep {
 public:
  SourceSweep(const WavenumberField& field, double lo, double hi, double x0,
              const ContourParams& params, int elems_per_wavelength = default_elems_per_wavelength);
  // Rebuild from stored nodal values (kernel cache).
  SourceSweep(const WavenumberField& field, double lo, double hi, double x0,
              const ContourParams& params, int elems_per_wavelength, std::vector<cplx> nodal);

  double x0() const { return fem_.x0(); }
  const ContourParams& params() const { return params_; }
  const FemSystem& fem() const { return fem_; }
  int n_xi() const { return n_xi_; }
  const std::vector<cplx>& nodal() const { return nodal_; }
  cplx xi(int l) const;

  FieldSpectrum spectrum_at(double x) const;

 private:
  void prepare();
  ContourParams params_;
  FemSystem fem_;
  int n_xi_ = 0;
  std::vector<cplx> xis_, alpha_, beta_;
  std::vector<cplx> nodal_;  // [node][l]
};

// Direct (non-FFT) inversion at arbitrary y for one field abscissa.
class SpectralEvaluator {
 public:
  SpectralEvaluator(const FieldSpectrum& spec, const ContourParams& params);
  KernelValue operator()(double y_rel) const;
  double x() const { return x_; }

 private:
  ContourParams p_;
  double x_ = 0.0, dx_ = 0.0;
  int n_ = 0;
  std::vector<double> re_[3], im_[3];
  cplx j0_[3], jx_[3];
  std::array<cplx, contour_gauss_points> c1_{}, c1x_{};
};

// Closed-form remainder of the xi-integral beyond Xi (asymptotic Psi).
KernelValue kernel_tail(double dx, double y, const ContourParams& p);

// ---- table form: sampled transform, FFT inversion, interpolation in y ----

struct SampledTransform {
  double source_x = 0.0;
  ContourParams params;
  std::vector<double> field_xs;
  std::vector<cplx> xi_nodes;           // xi_l, l = 0..N
  std::vector<FieldSpectrum> spectra;   // one per field abscissa
  // Symmetric extension index: samples l = N+1..M-1 mirror l' = M - l.
  cplx extended_psi(int field, int l) const;
};

SampledTransform sweep_contour(const WavenumberField& field, double x0,
                               const std::vector<double>& field_xs, const ContourParams& params,
                               int elems_per_wavelength = default_elems_per_wavelength);

struct KernelTable {
  double source_x = 0.0;
  ContourParams params;
  std::vector<double> field_xs;
  std::vector<double> ygrid;  // y_j = j dy, j = 0..N
  // [field][j]
  std::vector<std::vector<cplx>> psi, psi_x, psi_y;
};

std::vector<std::vector<cplx>> invert_psi(const SampledTransform& st,
                                          InversionScheme s = InversionScheme::ExactPath);
std::vector<std::vector<cplx>> invert_psi_x(const SampledTransform& st,
                                            InversionScheme s = InversionScheme::ExactPath);
std::vector<std::vector<cplx>> invert_psi_y(const SampledTransform& st,
                                            InversionScheme s = InversionScheme::ExactPath);
KernelTable build_table(const SampledTransform& st,
                        InversionScheme s = InversionScheme::ExactPath);

// Cubic interpolation in y on the table grid; |y_rel| <= 0.8 Y.
KernelValue evaluate(const KernelTable& table, double x, double y_rel);
// Exact band-limited evaluation (no interpolation) at a table abscissa.
KernelValue evaluate_direct(const SampledTransform& st, double x, double y_rel);

}  // namespace msbem
