#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "msbem/kernel.hpp"

namespace msbem {

// Identifies the kernel a cache was produced for.
struct KernelCacheHeader {
  ContourParams params;
  std::string profile;  // BathymetryProfile::fingerprint()
  double omega = 0.0;
  int elems_per_wavelength = 0;

  bool matches(const KernelCacheHeader& o) const;
  std::string describe() const;
};

// Kernel values for one source abscissa at a list of field points (x, y - y0).
struct KernelBlock {
  double x0 = 0.0;
  std::vector<double> x, y;
  std::vector<KernelValue> values;
};

// Evaluated kernel values recorded during a run and replayed by a later one.
class KernelCache {
 public:
  KernelCache() = default;
  explicit KernelCache(KernelCacheHeader h) : header_(std::move(h)) {}

  const KernelCacheHeader& header() const { return header_; }
  void add(KernelBlock b);
  // Block with exactly these points, or nullptr.
  const KernelBlock* find(double x0, const std::vector<double>& x, const std::vector<double>& y) const;
  size_t size() const { return blocks_.size(); }

  void save(const std::string& path) const;
  static KernelCache load(const std::string& path);

 private:
  KernelCacheHeader header_;
  std::vector<KernelBlock> blocks_;
  std::shared_ptr<std::mutex> mu_ = std::make_shared<std::mutex>();
};

}  // namespace msbem
