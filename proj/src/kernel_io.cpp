#include "msbem/kernel_io.hpp"

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <json.hpp>

#include "msbem/errors.hpp"

namespace msbem {

namespace {
const char* magic = "MSBEM-KERNEL-CACHE 1";

void put(std::ostream& os, const void* p, size_t n) { os.write(static_cast<const char*>(p), n); }
void get(std::istream& is, void* p, size_t n) {
  is.read(static_cast<char*>(p), n);
  if (!is) throw ConfigError("kernel cache: truncated file");
}
}  // namespace

bool KernelCacheHeader::matches(const KernelCacheHeader& o) const {
  return params.M == o.params.M && params.Xi == o.params.Xi && params.tau == o.params.tau &&
         profile == o.profile && omega == o.omega && elems_per_wavelength == o.elems_per_wavelength;
}

std::string KernelCacheHeader::describe() const {
  nlohmann::json j = {{"M", params.M},     {"Xi", params.Xi},       {"tau", params.tau},
                      {"profile", profile}, {"omega", omega}, {"elems_per_wavelength", elems_per_wavelength}};
  return j.dump();
}

void KernelCache::add(KernelBlock b) {
  std::lock_guard<std::mutex> lk(*mu_);
  blocks_.push_back(std::move(b));
}

const KernelBlock* KernelCache::find(double x0, const std::vector<double>& x,
                                     const std::vector<double>& y) const {
  std::lock_guard<std::mutex> lk(*mu_);
  for (const KernelBlock& b : blocks_) {
    if (b.x0 != x0 || b.x.size() != x.size()) continue;
    if (std::memcmp(b.x.data(), x.data(), x.size() * sizeof(double)) != 0) continue;
    if (std::memcmp(b.y.data(), y.data(), y.size() * sizeof(double)) != 0) continue;
    return &b;
  }
  return nullptr;
}

void KernelCache::save(const std::string& path) const {
  std::vector<const KernelBlock*> order;
  {
    std::lock_guard<std::mutex> lk(*mu_);
    for (const auto& b : blocks_) order.push_back(&b);
  }
  // thread completion order must not leak into the file
  std::stable_sort(order.begin(), order.end(), [](const KernelBlock* a, const KernelBlock* b) {
    if (a->x0 != b->x0) return a->x0 < b->x0;
    if (a->x.size() != b->x.size()) return a->x.size() < b->x.size();
    return std::lexicographical_compare(a->y.begin(), a->y.end(), b->y.begin(), b->y.end());
  });
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ConfigError("kernel cache: cannot write " + path);
  os << magic << "\n" << header_.describe() << "\n";
  uint64_t nb = order.size();
  put(os, &nb, sizeof nb);
  for (const KernelBlock* b : order) {
    uint64_t n = b->x.size();
    put(os, &b->x0, sizeof(double));
    put(os, &n, sizeof n);
    put(os, b->x.data(), n * sizeof(double));
    put(os, b->y.data(), n * sizeof(double));
    for (const KernelValue& v : b->values) {
      double d[6] = {v.psi.real(), v.psi.imag(), v.psi_x.real(), v.psi_x.imag(), v.psi_y.real(), v.psi_y.imag()};
      put(os, d, sizeof d);
    }
  }
  if (!os) throw ConfigError("kernel cache: write failed for " + path);
}

KernelCache KernelCache::load(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ConfigError("kernel cache: cannot open " + path);
  std::string line;
  std::getline(is, line);
  if (line != magic) throw ConfigError("kernel cache: not a kernel cache file: " + path);
  std::getline(is, line);
  KernelCacheHeader h;
  try {
    auto j = nlohmann::json::parse(line);
    h.params.M = j.at("M").get<int>();
    h.params.Xi = j.at("Xi").get<double>();
    h.params.tau = j.at("tau").get<double>();
    h.profile = j.at("profile").get<std::string>();
    h.omega = j.at("omega").get<double>();
    h.elems_per_wavelength = j.at("elems_per_wavelength").get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("kernel cache: bad header: ") + e.what());
  }
  KernelCache c(h);
  uint64_t nb = 0;
  get(is, &nb, sizeof nb);
  for (uint64_t i = 0; i < nb; ++i) {
    KernelBlock b;
    uint64_t n = 0;
    get(is, &b.x0, sizeof(double));
    get(is, &n, sizeof n);
    if (n > (uint64_t(1) << 32)) throw ConfigError("kernel cache: corrupt block size");
    b.x.resize(n);
    b.y.resize(n);
    b.values.resize(n);
    get(is, b.x.data(), n * sizeof(double));
    get(is, b.y.data(), n * sizeof(double));
    for (uint64_t k = 0; k < n; ++k) {
      double d[6];
      get(is, d, sizeof d);
      b.values[k] = {cplx(d[0], d[1]), cplx(d[2], d[3]), cplx(d[4], d[5])};
    }
    c.blocks_.push_back(std::move(b));
  }
  return c;
}

}  // namespace msbem
