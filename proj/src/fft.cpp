#include "ergodamp/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

namespace ergodamp::fft {

namespace {

// FFTW planning is not thread-safe; execution of an existing plan on new
// arrays (fftw_execute_dft) is.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(const Grid& grid, int sign) {
    const auto key = std::make_tuple(grid.dim(), grid.n(), sign);
    std::lock_guard lock(mutex_);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    std::vector<int> dims(grid.dim(), grid.n());
    auto* buf = fftw_alloc_complex(grid.size());
    fftw_plan plan = fftw_plan_dft(grid.dim(), dims.data(), buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buf);
    plans_.emplace(key, plan);
    return plan;
  }

  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

void execute(const Grid& grid, std::span<std::complex<double>> data, int sign) {
  if (data.size() != grid.size()) throw InvalidInput("transform buffer does not match grid size");
  auto plan = PlanCache::instance().get(grid, sign);
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, p, p);
}

}  // namespace

void forward(const Grid& grid, std::span<std::complex<double>> data) {
  execute(grid, data, FFTW_FORWARD);
  const double scale = 1.0 / static_cast<double>(grid.size());
  for (auto& c : data) c *= scale;
}

void inverse(const Grid& grid, std::span<std::complex<double>> data) { execute(grid, data, FFTW_BACKWARD); }

}  // namespace ergodamp::fft
