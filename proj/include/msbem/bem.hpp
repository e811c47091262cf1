#pragma once

#include <Eigen/Dense>
#include <atomic>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "msbem/kernel.hpp"
#include "msbem/kernel_io.hpp"
#include "msbem/mesh.hpp"

namespace msbem {

// Kernel evaluation service: one contour sweep per source abscissa, shared by
// every collocation point on that abscissa.
class GreenFunction {
 public:
  GreenFunction(const WavenumberField& field, const ContourParams& params,
                int elems_per_wavelength = default_elems_per_wavelength);

  const WavenumberField& field() const { return field_; }
  const ContourParams& params() const { return params_; }
  int elems_per_wavelength() const { return epw_; }
  KernelCacheHeader cache_header() const;

  // Record every evaluated block into c (for --dump-kernel).
  void record_into(KernelCache* c) { record_ = c; }
  // Serve evaluations from c only; a miss is an error (for --load-kernel).
  void replay_from(const KernelCache* c);

  std::shared_ptr<const SourceSweep> sweep(double x0) const;
  // psi, psi_x, psi_y at (x[k], y0 + y_rel[k]) for a unit source at (x0, y0).
  std::vector<KernelValue> evaluate(double x0, const std::vector<double>& x,
                                    const std::vector<double>& y_rel) const;

  long sweeps() const { return stats_->sweeps; }
  long evaluations() const { return stats_->evals; }

 private:
  WavenumberField field_;
  ContourParams params_;
  int epw_;
  KernelCache* record_ = nullptr;
  const KernelCache* replay_ = nullptr;
  struct Stats {
    std::atomic<long> sweeps{0}, evals{0};
  };
  std::shared_ptr<Stats> stats_ = std::make_shared<Stats>();
};

struct QuadratureOptions {
  int gauss_far = 4;      // elements farther than far_factor lengths
  int gauss_near = 8;     // near-singular sub-elements and self elements
  int log_gauss = 8;      // logarithmic rule on self elements
  int self_levels = 8;    // geometric grading toward the collocation node
  int max_depth = 14;     // recursive subdivision cap
  double far_factor = 3.0;
};

// Collocation matrices.  Flux columns are per element end: column 2e is the
// start node of element e, 2e + 1 its end node.
struct BemSystem {
  Eigen::MatrixXcd H;
  Eigen::MatrixXcd G;
  std::vector<double> s, dsdx, khat;  // change-of-variable data at the nodes
};

BemSystem assemble(const BoundaryMesh& mesh, const GreenFunction& green,
                   const QuadratureOptions& opt = {}, int threads = 1);

// int psi N_self and int psi N_other over an element that contains the node.
struct SelfIntegral {
  cplx g_self, g_other;
};
SelfIntegral self_element_integral(const BoundaryMesh& mesh, int node, int elem,
                                   const GreenFunction& green, const QuadratureOptions& opt = {});

// Physical incident potential; empty function means zero.
using IncidentFn = std::function<cplx(double x, double y)>;

// A z = f with one unknown per node: phi_hat where the potential is free,
// otherwise the (shared) Dirichlet-side flux.
struct LinearSystem {
  Eigen::MatrixXcd A;
  Eigen::VectorXcd f;
  std::vector<cplx> phi_c, phi_z;  // phi_hat_i = phi_c + phi_z z_i
  std::vector<cplx> q_c, q_z;      // q_hat_col = q_c + q_z z_node(col)
  std::vector<int> q_node;
};

LinearSystem apply_bcs(const BemSystem& sys, const BoundaryMesh& mesh, const IncidentFn& incident);

struct BemSolution {
  std::vector<cplx> phi_hat, phi;  // per node
  std::vector<cplx> q_hat, q;      // per flux column
  std::vector<cplx> q_node;        // mean of the two sides, physical
  double residual = 0.0;
  double rcond = 0.0;
  std::vector<double> residual_history;
};

BemSolution solve(const LinearSystem& ls, const BemSystem& sys, const BoundaryMesh& mesh);

struct InteriorResult {
  std::vector<cplx> phi;    // NaN outside the fluid
  std::vector<char> valid;  // point lies in the fluid
  int near_boundary = 0;    // points closer than 0.1 element length
};

InteriorResult interior_field(const BemSolution& sol, const BoundaryMesh& mesh,
                              const GreenFunction& green, const std::vector<Vec2>& pts,
                              const IncidentFn& incident, const QuadratureOptions& opt = {},
                              int threads = 1);

std::vector<double> waf(const std::vector<cplx>& phi, double phi0);

// H * 1 (row sums of H).
Eigen::VectorXcd equipotential(const BemSystem& sys);

}  // namespace msbem
