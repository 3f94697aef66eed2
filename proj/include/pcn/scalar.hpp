#pragma once

// Dual-backend number type. Exact arithmetic is GMP rationals, floating is
// IEEE double with a process-global comparison tolerance. Mixing backends in
// one expression is a programming error and throws.

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace pcn {

enum class Backend { exact, floating };

const char* backend_name(Backend b);
Backend parse_backend(std::string_view s);

// Tolerance used by eq() in the floating backend (and by tolerance-aware
// helpers elsewhere). Global on purpose: a run works at one precision.
double tolerance();
void set_tolerance(double tol);

class Scalar {
 public:
  Scalar() : v_(mpq_class(0)) {}

  static Scalar exact(mpq_class q);
  static Scalar exact(long num, long den = 1);
  static Scalar real(double d);
  static Scalar zero(Backend b);
  static Scalar one(Backend b);
  static Scalar from_long(long n, Backend b);
  // Accepts "p/q", integers, and decimal/scientific literals. In the exact
  // backend decimals are converted to the rational they denote.
  static Scalar parse(std::string_view text, Backend b);

  Backend backend() const {
    return std::holds_alternative<mpq_class>(v_) ? Backend::exact
                                                 : Backend::floating;
  }
  bool is_exact() const { return backend() == Backend::exact; }

  double to_double() const;
  const mpq_class& rat() const;  // throws on floating backend
  std::string str() const;       // exact: "p/q" or "n"; floating: shortest round-trip

  int sgn() const;
  Scalar abs() const;
  Scalar pow_int(long e) const;  // integer power, e >= 0

  // Backend-aware equality: exact compares values, floating uses tolerance().
  bool eq(const Scalar& o) const;
  bool near(const Scalar& o, double tol) const;  // |a-b| <= tol on doubles

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

  // Strict order on representations (no tolerance). Used for sorting and
  // branch selection; tolerance only enters through eq().
  friend bool operator<(const Scalar& a, const Scalar& b);
  friend bool operator>(const Scalar& a, const Scalar& b) { return b < a; }
  friend bool operator<=(const Scalar& a, const Scalar& b) { return !(b < a); }
  friend bool operator>=(const Scalar& a, const Scalar& b) { return !(a < b); }
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

 private:
  explicit Scalar(mpq_class q) : v_(std::move(q)) {}
  explicit Scalar(double d) : v_(d) {}
  std::variant<mpq_class, double> v_;
};

// Thrown on malformed input (bad literals, mixed backends, domain errors
// that indicate caller bugs get std::logic_error instead).
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace pcn
