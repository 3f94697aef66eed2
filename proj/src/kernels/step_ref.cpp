#include "pcn/kernels.hpp"

#include "pcn/piecewise.hpp"

namespace pcn::kernels {

BranchTable to_table(const PiecewiseContraction& f) {
  BranchTable t;
  t.k = f.branches();
  t.slope.reserve(t.k);
  t.intercept.reserve(t.k);
  t.brk.reserve(t.k - 1);
  for (int i = 1; i <= t.k; ++i) {
    t.slope.push_back(f.ifs().branch(i).slope().to_double());
    t.intercept.push_back(f.ifs().branch(i).intercept().to_double());
  }
  for (int j = 0; j < f.breaks().size(); ++j)
    t.brk.push_back(f.breaks().at(j).to_double());
  return t;
}

int branch_one(const BranchTable& t, double shift, double x) {
  int idx = 1;
  for (int j = 0; j + 1 < t.k; ++j)
    if (x >= t.brk[static_cast<std::size_t>(j)] + shift) idx = j + 2;
  return idx;
}

double step_one(const BranchTable& t, double shift, double x) {
  double s = t.slope[0];
  double b = t.intercept[0];
  for (int j = 0; j + 1 < t.k; ++j) {
    if (x >= t.brk[static_cast<std::size_t>(j)] + shift) {
      s = t.slope[static_cast<std::size_t>(j + 1)];
      b = t.intercept[static_cast<std::size_t>(j + 1)];
    }
  }
  return s * x + b;
}

void step_batch_ref(const BranchTable& t, const double* shift, double* x,
                    std::size_t n, int steps) {
  for (std::size_t i = 0; i < n; ++i) {
    double xi = x[i];
    double sh = shift[i];
    for (int s = 0; s < steps; ++s) xi = step_one(t, sh, xi);
    x[i] = xi;
  }
}

}  // namespace pcn::kernels
