#include "sphscat/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <unordered_map>
#include <vector>

namespace sphscat::fft {

namespace {

// FFTW planning is not thread-safe; executing distinct plans is. Plans are
// created once per (size, direction) with FFTW_UNALIGNED so they can run on
// any buffer via the new-array interface.
class PlanCache {
 public:
  fftw_plan get(std::size_t n, int sign) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto key = (static_cast<std::uint64_t>(n) << 1) | (sign == FFTW_FORWARD ? 0u : 1u);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    std::vector<cdouble> dummy_in(n), dummy_out(n);
    fftw_plan plan = fftw_plan_dft_1d(
        static_cast<int>(n), reinterpret_cast<fftw_complex*>(dummy_in.data()),
        reinterpret_cast<fftw_complex*>(dummy_out.data()), sign,
        FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::unordered_map<std::uint64_t, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

void execute(std::span<const cdouble> in, std::span<cdouble> out, int sign) {
  const std::size_t n = in.size();
  if (out.size() != n) throw DimensionError("fft: size mismatch");
  if (n == 0) return;
  if (n == 1) {
    out[0] = in[0];
    return;
  }
  fftw_plan plan = cache().get(n, sign);
  if (in.data() == out.data()) {
    std::vector<cdouble> tmp(in.begin(), in.end());
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(tmp.data()),
                     reinterpret_cast<fftw_complex*>(out.data()));
  } else {
    fftw_execute_dft(plan,
                     reinterpret_cast<fftw_complex*>(const_cast<cdouble*>(in.data())),
                     reinterpret_cast<fftw_complex*>(out.data()));
  }
}

}  // namespace

void forward(std::span<const cdouble> in, std::span<cdouble> out) {
  execute(in, out, FFTW_FORWARD);
}

void backward(std::span<const cdouble> in, std::span<cdouble> out) {
  execute(in, out, FFTW_BACKWARD);
}

}  // namespace sphscat::fft
