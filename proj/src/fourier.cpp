#include "jt/fourier.hpp"

#include <fftw3.h>
#include <omp.h>

#include <cstdint>

#include <cstdlib>
#include <filesystem>
#include <map>
#include <mutex>

#include "jt/aligned.hpp"
#include "jt/errors.hpp"

namespace jt {

namespace {

// The FFTW planner is not reentrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

void init_threads_once() {
  static const bool ok = fftw_init_threads() != 0;
  (void)ok;
}

fftw_complex* as_fftw(std::complex<double>* p) { return reinterpret_cast<fftw_complex*>(p); }

// Measured plans can differ between processes, and with them the rounding
// of every transform. Plans are therefore kept in a wisdom file: the first
// process measures and saves, later ones replay the same plan.
std::filesystem::path wisdom_path() {
  if (const char* env = std::getenv("JT_FFTW_WISDOM")) return env;
  if (const char* home = std::getenv("HOME")) {
    return std::filesystem::path(home) / ".cache" / "jtdyn" / "fftw-wisdom";
  }
  return {};
}

void import_wisdom_once() {
  static const bool done = [] {
    const auto path = wisdom_path();
    if (!path.empty()) fftw_import_wisdom_from_filename(path.c_str());
    return true;
  }();
  (void)done;
}

void export_wisdom() {
  const auto path = wisdom_path();
  if (path.empty()) return;
  std::error_code ec;
  std::filesystem::create_directories(path.parent_path(), ec);
  auto tmp = path;
  tmp += ".tmp" + std::to_string(reinterpret_cast<std::uintptr_t>(&ec));
  if (fftw_export_wisdom_to_filename(tmp.c_str())) {
    std::filesystem::rename(tmp, path, ec);
  }
  if (ec) std::filesystem::remove(tmp, ec);
}

}  // namespace

struct FourierTransform::Plans {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

FourierTransform::FourierTransform(std::size_t n) : n_(n), plans_(std::make_unique<Plans>()) {
  if (n < 2) throw PreconditionError("Fourier transform size must be >= 2");
  std::lock_guard lock(planner_mutex());
  init_threads_once();
  import_wisdom_once();
  fftw_plan_with_nthreads(omp_get_max_threads());
  aligned_vector<std::complex<double>> scratch(n * n);
  const int ni = static_cast<int>(n);
  auto* data = as_fftw(scratch.data());
  const unsigned known = FFTW_MEASURE | FFTW_WISDOM_ONLY;
  plans_->forward = fftw_plan_dft_2d(ni, ni, data, data, FFTW_FORWARD, known);
  plans_->backward = fftw_plan_dft_2d(ni, ni, data, data, FFTW_BACKWARD, known);
  if (!plans_->forward || !plans_->backward) {
    if (plans_->forward) fftw_destroy_plan(plans_->forward);
    if (plans_->backward) fftw_destroy_plan(plans_->backward);
    plans_->forward = fftw_plan_dft_2d(ni, ni, data, data, FFTW_FORWARD, FFTW_MEASURE);
    plans_->backward = fftw_plan_dft_2d(ni, ni, data, data, FFTW_BACKWARD, FFTW_MEASURE);
    export_wisdom();
  }
  if (!plans_->forward || !plans_->backward) throw std::runtime_error("FFTW planning failed");
}

FourierTransform::~FourierTransform() {
  if (!plans_) return;
  std::lock_guard lock(planner_mutex());
  if (plans_->forward) fftw_destroy_plan(plans_->forward);
  if (plans_->backward) fftw_destroy_plan(plans_->backward);
}

FourierTransform::FourierTransform(FourierTransform&&) noexcept = default;
FourierTransform& FourierTransform::operator=(FourierTransform&&) noexcept = default;

void FourierTransform::forward(std::span<std::complex<double>> data) const {
  if (data.size() != n_ * n_) throw PreconditionError("Fourier transform size mismatch");
  fftw_execute_dft(plans_->forward, as_fftw(data.data()), as_fftw(data.data()));
}

void FourierTransform::inverse_unnormalized(std::span<std::complex<double>> data) const {
  if (data.size() != n_ * n_) throw PreconditionError("Fourier transform size mismatch");
  fftw_execute_dft(plans_->backward, as_fftw(data.data()), as_fftw(data.data()));
}

void FourierTransform::inverse(std::span<std::complex<double>> data) const {
  inverse_unnormalized(data);
  const double scale = 1.0 / static_cast<double>(n_ * n_);
  for (auto& v : data) v *= scale;
}

const FourierTransform& fourier(std::size_t n) {
  static std::mutex cache_mutex;
  // never destroyed: plans must outlive every static user at exit
  static auto* cache = new std::map<std::size_t, std::unique_ptr<FourierTransform>>();
  std::lock_guard lock(cache_mutex);
  auto& slot = (*cache)[n];
  if (!slot) slot = std::make_unique<FourierTransform>(n);
  return *slot;
}

}  // namespace jt
