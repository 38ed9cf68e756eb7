#include "tff/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

namespace tff::fft {

namespace {

struct PlanKey {
  std::size_t n0, n1;
  int sign;
  bool operator<(const PlanKey& o) const {
    return std::tie(n0, n1, sign) < std::tie(o.n0, o.n1, o.sign);
  }
};

class PlanStore {
 public:
  ~PlanStore() {
    for (auto& [k, p] : plans_) fftw_destroy_plan(p);
  }

  fftw_plan get(std::size_t n0, std::size_t n1, int sign) {
    std::lock_guard<std::mutex> lock(mu_);
    PlanKey key{n0, n1, sign};
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    // Scratch arrays only shape the plan; FFTW_ESTIMATE leaves them untouched.
    std::vector<fftw_complex> in(n0 * n1), out(n0 * n1);
    unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    int fsign = sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD;
    fftw_plan p = n1 == 0
                      ? fftw_plan_dft_1d(static_cast<int>(n0), in.data(), in.data(), fsign, flags)
                      : fftw_plan_dft_2d(static_cast<int>(n0), static_cast<int>(n1), in.data(),
                                         in.data(), fsign, flags);
    plans_.emplace(key, p);
    return p;
  }

 private:
  std::mutex mu_;
  std::map<PlanKey, fftw_plan> plans_;
};

PlanStore& store() {
  static PlanStore s;
  return s;
}

}  // namespace

void dft_1d(cplx* data, std::size_t n, int sign) {
  if (n == 0) return;
  fftw_plan p = store().get(n, 0, sign);
  auto* d = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(p, d, d);
}

void dft_2d(cplx* data, std::size_t n0, std::size_t n1, int sign) {
  if (n0 == 0 || n1 == 0) return;
  fftw_plan p = store().get(n0, n1, sign);
  auto* d = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(p, d, d);
}

}  // namespace tff::fft
