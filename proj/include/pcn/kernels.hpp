#pragma once

// Batched double-precision orbit stepping. One lane = one starting point with
// its own breakpoint shift (the map's breakpoints all move by shift[lane]).
// A scalar reference kernel defines the semantics; the vector kernels must
// produce bit-identical results, which is why every implementation sticks to
// plain multiply-then-add (no fused contractions) and the same compare.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace pcn {
class PiecewiseContraction;
}

namespace pcn::kernels {

struct BranchTable {
  std::vector<double> slope;      // size k
  std::vector<double> intercept;  // size k
  std::vector<double> brk;        // size k-1, ascending
  int k = 0;
};

BranchTable to_table(const PiecewiseContraction& f);

// One step of one lane; the reference semantics for everything below.
double step_one(const BranchTable& t, double shift, double x);
// Branch owning x (1-based) under shifted breakpoints.
int branch_one(const BranchTable& t, double shift, double x);

enum class Impl { scalar, avx2, neon };
const char* impl_name(Impl i);

// Implementation picked at startup (CPU probe, overridable by the
// PCN_KERNEL environment variable: scalar | avx2 | neon).
Impl active_impl();
// Force an implementation; throws if it is not compiled in or the CPU
// lacks it. Intended for tests and benchmarking.
void force_impl(Impl i);
std::vector<Impl> available_impls();

// Advance every lane `steps` times in place. shift and x have equal size.
void step_batch(const BranchTable& t, std::span<const double> shift,
                std::span<double> x, int steps);

// Internal entry points, one per compiled implementation.
void step_batch_ref(const BranchTable& t, const double* shift, double* x,
                    std::size_t n, int steps);
#if defined(__x86_64__) || defined(_M_X64)
void step_batch_avx2(const BranchTable& t, const double* shift, double* x,
                     std::size_t n, int steps);
#endif
#if defined(__aarch64__)
void step_batch_neon(const BranchTable& t, const double* shift, double* x,
                     std::size_t n, int steps);
#endif

}  // namespace pcn::kernels
