#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace msbem {

using cplx = std::complex<double>;

struct Vec2 {
  double x = 0.0, y = 0.0;
};

enum class BcKind {
  Dirichlet,  // phi given
  Neumann,    // dphi/dn given
  Absorbing,  // dphi_hat/dn = i khat phi_hat
  Rigid,      // dphi/dn = 0
};

struct BoundaryCondition {
  BcKind kind = BcKind::Rigid;
  bool incident = false;  // Dirichlet value taken from the incident wave
  cplx value = 0.0;
};

std::string to_string(BcKind k);

// Closed polyline; bc[i] applies to the segment vertices[i] -> vertices[i+1].
struct Loop {
  std::vector<Vec2> vertices;
  std::vector<BoundaryCondition> bc;
  double element_size = 0.0;  // 0: from the wavelength rule
};

enum class DomainKind {
  Interior,  // fluid inside the first loop (further loops are islands)
  Exterior,  // fluid outside every loop (obstacles)
};

struct Element {
  int n0 = 0, n1 = 0;
  Vec2 normal;  // unit, pointing out of the fluid
  double length = 0.0;
  BoundaryCondition bc;
};

struct BoundaryMesh {
  DomainKind domain = DomainKind::Exterior;
  std::vector<Vec2> nodes;
  std::vector<Element> elements;
  std::vector<double> C;                // theta_fluid / 2 pi per node
  std::vector<int> elem_in, elem_out;   // element ending / starting at each node
  std::vector<std::vector<int>> loops;  // node indices per loop, in order

  int num_nodes() const { return int(nodes.size()); }
  int num_elements() const { return int(elements.size()); }
  // Largest element length relative to the local wavelength.
  double max_length_ratio(const std::function<double(double)>& wavelength) const;
  // Point-in-fluid test (ray casting against the loops).
  bool in_fluid(Vec2 p) const;
  // Distance from p to the nearest element.
  double distance(Vec2 p) const;
};

// Each segment is cut into equal elements no longer than element_size, or, when that
// is zero, than min(wavelength)/elements_per_wavelength sampled along the segment.
BoundaryMesh build_mesh(const std::vector<Loop>& loops, DomainKind domain,
                        const std::function<double(double)>& wavelength,
                        double elements_per_wavelength = 20.0);

// Regular n-gon inscribed in a circle, counter-clockwise from angle 0; nodes are
// placed so that mirror images about y = yc have bit-identical x.
Loop circle_loop(Vec2 centre, double R, int n, const BoundaryCondition& bc);
BoundaryMesh circle_mesh(Vec2 centre, double R, int n, const BoundaryCondition& bc,
                         DomainKind domain);

}  // namespace msbem
