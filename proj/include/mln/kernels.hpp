#ifndef MLN_KERNELS_HPP
#define MLN_KERNELS_HPP

#include <cstddef>

// Reduction kernels used by the inference hot loops. Every kernel has a
// scalar reference implementation and an AVX2 variant; the active variant is
// picked once at startup from CPUID and can be overridden for testing.
// All kernels operate on doubles in the log domain and treat -inf as an
// exact zero under exponentiation.

namespace mln::kern {

enum class Isa { scalar, avx2 };

// Variant currently in use.
Isa active_isa();

// Force a variant (testing hook). Returns the variant actually selected;
// requesting an unsupported one falls back to scalar.
Isa force_isa(Isa isa);

bool cpu_has_avx2();

// max over x[0..n); -inf for n == 0.
double max_reduce(const double* x, std::size_t n);

// sum over x[0..n).
double sum(const double* x, std::size_t n);

// out[i] = exp(x[i] - shift). shift must be finite; x[i] may be -inf, which
// yields exactly 0.
void exp_shift(const double* x, std::size_t n, double shift, double* out);

// sum_i exp(x[i] - shift), same conventions as exp_shift.
double sum_exp(const double* x, std::size_t n, double shift);

// sum of `count` runs of length `run` starting at x + offset, consecutive
// runs `period` apart.
double strided_sum(const double* x, std::size_t offset, std::size_t run,
                   std::size_t period, std::size_t count);

// log(sum_i exp(x[i])), computed as max + log(sum exp(x - max)).
// Returns -inf for an empty or all--inf input.
double log_sum_exp(const double* x, std::size_t n);

// log(exp(a) + exp(b)) without overflow; handles -inf on either side.
double log_add(double a, double b);

// Streaming log-sum-exp accumulator: merges chunk partial sums
// (shift, sum-of-exp) pairs produced by the kernels above.
class LogAccumulator {
 public:
  void add(double log_value);
  // merge a pre-reduced chunk: sum_exp = sum exp(x_i - shift) over the chunk
  void add_scaled(double shift, double sum_exp);
  double value() const;  // log of the accumulated sum; -inf when empty
  bool empty() const { return sum_ == 0.0; }

 private:
  double shift_ = -1e308;
  double sum_ = 0.0;
};

}  // namespace mln::kern

#endif
