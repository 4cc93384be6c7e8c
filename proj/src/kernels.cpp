#include "mln/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mln::kern {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

// ---------------------------------------------------------------------------
// scalar reference implementations

namespace scalar {

double max_reduce(const double* x, std::size_t n) {
  double m = kNegInf;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, x[i]);
  return m;
}

double sum(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i];
  return s;
}

void exp_shift(const double* x, std::size_t n, double shift, double* out) {
  for (std::size_t i = 0; i < n; ++i) out[i] = std::exp(x[i] - shift);
}

double sum_exp(const double* x, std::size_t n, double shift) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::exp(x[i] - shift);
  return s;
}

double strided_sum(const double* x, std::size_t offset, std::size_t run,
                   std::size_t period, std::size_t count) {
  double s = 0.0;
  for (std::size_t k = 0; k < count; ++k) {
    const double* p = x + offset + k * period;
    for (std::size_t i = 0; i < run; ++i) s += p[i];
  }
  return s;
}

}  // namespace scalar

#ifdef MLN_HAVE_AVX2
namespace avx2 {
double max_reduce(const double* x, std::size_t n);
double sum(const double* x, std::size_t n);
void exp_shift(const double* x, std::size_t n, double shift, double* out);
double sum_exp(const double* x, std::size_t n, double shift);
double strided_sum(const double* x, std::size_t offset, std::size_t run,
                   std::size_t period, std::size_t count);
}  // namespace avx2
#endif

// ---------------------------------------------------------------------------
// dispatch

namespace {

struct Table {
  double (*max_reduce)(const double*, std::size_t);
  double (*sum)(const double*, std::size_t);
  void (*exp_shift)(const double*, std::size_t, double, double*);
  double (*sum_exp)(const double*, std::size_t, double);
  double (*strided_sum)(const double*, std::size_t, std::size_t, std::size_t,
                        std::size_t);
};

constexpr Table kScalar{scalar::max_reduce, scalar::sum, scalar::exp_shift,
                        scalar::sum_exp, scalar::strided_sum};
#ifdef MLN_HAVE_AVX2
constexpr Table kAvx2{avx2::max_reduce, avx2::sum, avx2::exp_shift,
                      avx2::sum_exp, avx2::strided_sum};
#endif

Isa pick_default() {
#ifdef MLN_HAVE_AVX2
  if (cpu_has_avx2()) return Isa::avx2;
#endif
  return Isa::scalar;
}

Isa g_isa = pick_default();

const Table& table() {
#ifdef MLN_HAVE_AVX2
  if (g_isa == Isa::avx2) return kAvx2;
#endif
  return kScalar;
}

}  // namespace

bool cpu_has_avx2() {
#ifdef MLN_HAVE_AVX2
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa active_isa() { return g_isa; }

Isa force_isa(Isa isa) {
  if (isa == Isa::avx2 && !cpu_has_avx2()) isa = Isa::scalar;
  g_isa = isa;
  return g_isa;
}

double max_reduce(const double* x, std::size_t n) {
  return table().max_reduce(x, n);
}

double sum(const double* x, std::size_t n) { return table().sum(x, n); }

void exp_shift(const double* x, std::size_t n, double shift, double* out) {
  table().exp_shift(x, n, shift, out);
}

double sum_exp(const double* x, std::size_t n, double shift) {
  return table().sum_exp(x, n, shift);
}

double strided_sum(const double* x, std::size_t offset, std::size_t run,
                   std::size_t period, std::size_t count) {
  return table().strided_sum(x, offset, run, period, count);
}

double log_sum_exp(const double* x, std::size_t n) {
  const double m = table().max_reduce(x, n);
  if (m == kNegInf) return kNegInf;
  return m + std::log(table().sum_exp(x, n, m));
}

double log_add(double a, double b) {
  if (a < b) std::swap(a, b);
  if (b == kNegInf) return a;
  return a + std::log1p(std::exp(b - a));
}

void LogAccumulator::add(double log_value) {
  if (log_value == kNegInf) return;
  add_scaled(log_value, 1.0);
}

void LogAccumulator::add_scaled(double shift, double sum_exp) {
  if (sum_exp <= 0.0) return;
  if (shift > shift_) {
    sum_ = sum_ * std::exp(shift_ - shift) + sum_exp;
    shift_ = shift;
  } else {
    sum_ += sum_exp * std::exp(shift - shift_);
  }
}

double LogAccumulator::value() const {
  if (sum_ <= 0.0) return kNegInf;
  return shift_ + std::log(sum_);
}

}  // namespace mln::kern
