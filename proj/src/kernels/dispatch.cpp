#include "pcn/kernels.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string_view>

namespace pcn::kernels {

namespace {

bool impl_compiled(Impl i) {
  switch (i) {
    case Impl::scalar:
      return true;
    case Impl::avx2:
#if defined(__x86_64__) || defined(_M_X64)
      return true;
#else
      return false;
#endif
    case Impl::neon:
#if defined(__aarch64__)
      return true;
#else
      return false;
#endif
  }
  return false;
}

bool impl_usable(Impl i) {
  if (!impl_compiled(i)) return false;
#if defined(__x86_64__) || defined(_M_X64)
  if (i == Impl::avx2) return __builtin_cpu_supports("avx2") != 0;
#endif
  return true;
}

Impl detect() {
  if (const char* env = std::getenv("PCN_KERNEL")) {
    std::string_view want(env);
    Impl forced = Impl::scalar;
    bool known = true;
    if (want == "scalar")
      forced = Impl::scalar;
    else if (want == "avx2")
      forced = Impl::avx2;
    else if (want == "neon")
      forced = Impl::neon;
    else
      known = false;
    if (known && impl_usable(forced)) return forced;
    // Unknown or unusable request: fall through to the probe.
  }
  if (impl_usable(Impl::avx2)) return Impl::avx2;
  if (impl_usable(Impl::neon)) return Impl::neon;
  return Impl::scalar;
}

Impl& current() {
  static Impl impl = detect();
  return impl;
}

}  // namespace

const char* impl_name(Impl i) {
  switch (i) {
    case Impl::scalar: return "scalar";
    case Impl::avx2: return "avx2";
    case Impl::neon: return "neon";
  }
  return "?";
}

Impl active_impl() { return current(); }

void force_impl(Impl i) {
  if (!impl_usable(i))
    throw std::runtime_error(std::string("kernel not available: ") + impl_name(i));
  current() = i;
}

std::vector<Impl> available_impls() {
  std::vector<Impl> out;
  for (Impl i : {Impl::scalar, Impl::avx2, Impl::neon})
    if (impl_usable(i)) out.push_back(i);
  return out;
}

void step_batch(const BranchTable& t, std::span<const double> shift,
                std::span<double> x, int steps) {
  if (shift.size() != x.size())
    throw std::logic_error("shift/x size mismatch");
  if (t.k < 1 || t.slope.size() != static_cast<std::size_t>(t.k) ||
      t.intercept.size() != static_cast<std::size_t>(t.k) ||
      t.brk.size() + 1 != static_cast<std::size_t>(t.k))
    throw std::logic_error("malformed branch table");
  switch (current()) {
#if defined(__x86_64__) || defined(_M_X64)
    case Impl::avx2:
      step_batch_avx2(t, shift.data(), x.data(), x.size(), steps);
      return;
#endif
#if defined(__aarch64__)
    case Impl::neon:
      step_batch_neon(t, shift.data(), x.data(), x.size(), steps);
      return;
#endif
    default:
      step_batch_ref(t, shift.data(), x.data(), x.size(), steps);
      return;
  }
}

}  // namespace pcn::kernels
