#include "pcn/scalar.hpp"

#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace pcn {

namespace {

std::atomic<double> g_tolerance{1e-12};

[[noreturn]] void bad(const std::string& msg) { throw ValidationError(msg); }

void require_same_backend(const Scalar& a, const Scalar& b) {
  if (a.backend() != b.backend())
    throw std::logic_error("mixed exact/floating operands");
}

bool looks_rational(std::string_view s) {
  return s.find('/') != std::string_view::npos;
}

mpq_class rat_from_fraction(std::string_view s) {
  mpq_class q;
  if (q.set_str(std::string(s), 10) != 0) bad("bad rational literal: " + std::string(s));
  if (q.get_den() == 0) bad("zero denominator: " + std::string(s));
  q.canonicalize();
  return q;
}

// Decimal or scientific literal -> exact rational. "1.25e-2" = 125/10000.
mpq_class rat_from_decimal(std::string_view s) {
  std::size_t i = 0;
  bool neg = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
  std::string digits;
  long frac_digits = 0;
  bool any = false;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
    digits += s[i++];
    any = true;
  }
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      digits += s[i++];
      ++frac_digits;
      any = true;
    }
  }
  long exp10 = 0;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    bool eneg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) eneg = s[i++] == '-';
    if (i == s.size()) bad("bad exponent: " + std::string(s));
    long e = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      e = e * 10 + (s[i++] - '0');
      if (e > 1000000) bad("exponent out of range: " + std::string(s));
    }
    exp10 = eneg ? -e : e;
  }
  if (!any || i != s.size()) bad("bad numeric literal: " + std::string(s));
  if (digits.empty()) digits = "0";
  mpz_class mant(digits, 10);
  mpq_class q(mant);
  long p = exp10 - frac_digits;
  mpz_class pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(p < 0 ? -p : p));
  if (p >= 0)
    q *= mpq_class(pow10);
  else
    q /= mpq_class(pow10);
  if (neg) q = -q;
  q.canonicalize();
  return q;
}

}  // namespace

const char* backend_name(Backend b) {
  return b == Backend::exact ? "exact" : "float";
}

Backend parse_backend(std::string_view s) {
  if (s == "exact") return Backend::exact;
  if (s == "float" || s == "floating") return Backend::floating;
  bad("unknown backend: " + std::string(s));
}

double tolerance() { return g_tolerance.load(std::memory_order_relaxed); }

void set_tolerance(double tol) {
  if (!(tol >= 0) || !std::isfinite(tol)) bad("tolerance must be finite and >= 0");
  g_tolerance.store(tol, std::memory_order_relaxed);
}

Scalar Scalar::exact(mpq_class q) {
  q.canonicalize();
  return Scalar(std::move(q));
}

Scalar Scalar::exact(long num, long den) {
  if (den == 0) bad("zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  return Scalar(std::move(q));
}

Scalar Scalar::real(double d) {
  if (!std::isfinite(d)) bad("non-finite floating value");
  return Scalar(d);
}

Scalar Scalar::zero(Backend b) {
  return b == Backend::exact ? exact(0) : real(0.0);
}

Scalar Scalar::one(Backend b) {
  return b == Backend::exact ? exact(1) : real(1.0);
}

Scalar Scalar::from_long(long n, Backend b) {
  return b == Backend::exact ? exact(n) : real(static_cast<double>(n));
}

Scalar Scalar::parse(std::string_view text, Backend b) {
  if (text.empty()) bad("empty numeric literal");
  if (b == Backend::exact) {
    if (looks_rational(text)) return exact(rat_from_fraction(text));
    return exact(rat_from_decimal(text));
  }
  if (looks_rational(text)) {
    // Allow "p/q" in the floating backend too; evaluate in doubles.
    mpq_class q = rat_from_fraction(text);
    return real(q.get_d());
  }
  std::string buf(text);
  char* end = nullptr;
  double d = std::strtod(buf.c_str(), &end);
  if (end != buf.c_str() + buf.size()) bad("bad numeric literal: " + buf);
  return real(d);
}

double Scalar::to_double() const {
  if (is_exact()) return std::get<mpq_class>(v_).get_d();
  return std::get<double>(v_);
}

const mpq_class& Scalar::rat() const {
  if (!is_exact()) throw std::logic_error("rat() on floating scalar");
  return std::get<mpq_class>(v_);
}

std::string Scalar::str() const {
  if (is_exact()) return std::get<mpq_class>(v_).get_str();
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", std::get<double>(v_));
  return buf;
}

int Scalar::sgn() const {
  if (is_exact()) return ::sgn(std::get<mpq_class>(v_));
  double d = std::get<double>(v_);
  return d > 0 ? 1 : d < 0 ? -1 : 0;
}

Scalar Scalar::abs() const { return sgn() < 0 ? -*this : *this; }

Scalar Scalar::pow_int(long e) const {
  if (e < 0) throw std::logic_error("pow_int: negative exponent");
  Scalar acc = one(backend());
  Scalar base = *this;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

bool Scalar::eq(const Scalar& o) const {
  require_same_backend(*this, o);
  if (is_exact()) return std::get<mpq_class>(v_) == std::get<mpq_class>(o.v_);
  return std::fabs(std::get<double>(v_) - std::get<double>(o.v_)) <= tolerance();
}

bool Scalar::near(const Scalar& o, double tol) const {
  return std::fabs(to_double() - o.to_double()) <= tol;
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  require_same_backend(a, b);
  if (a.is_exact())
    return Scalar(mpq_class(std::get<mpq_class>(a.v_) + std::get<mpq_class>(b.v_)));
  return Scalar(std::get<double>(a.v_) + std::get<double>(b.v_));
}

Scalar operator-(const Scalar& a, const Scalar& b) {
  require_same_backend(a, b);
  if (a.is_exact())
    return Scalar(mpq_class(std::get<mpq_class>(a.v_) - std::get<mpq_class>(b.v_)));
  return Scalar(std::get<double>(a.v_) - std::get<double>(b.v_));
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  require_same_backend(a, b);
  if (a.is_exact())
    return Scalar(mpq_class(std::get<mpq_class>(a.v_) * std::get<mpq_class>(b.v_)));
  return Scalar(std::get<double>(a.v_) * std::get<double>(b.v_));
}

Scalar operator/(const Scalar& a, const Scalar& b) {
  require_same_backend(a, b);
  if (b.sgn() == 0) bad("division by zero");
  if (a.is_exact())
    return Scalar(mpq_class(std::get<mpq_class>(a.v_) / std::get<mpq_class>(b.v_)));
  return Scalar(std::get<double>(a.v_) / std::get<double>(b.v_));
}

Scalar Scalar::operator-() const {
  if (is_exact()) return Scalar(mpq_class(-std::get<mpq_class>(v_)));
  return Scalar(-std::get<double>(v_));
}

bool operator<(const Scalar& a, const Scalar& b) {
  require_same_backend(a, b);
  if (a.is_exact()) return std::get<mpq_class>(a.v_) < std::get<mpq_class>(b.v_);
  return std::get<double>(a.v_) < std::get<double>(b.v_);
}

bool operator==(const Scalar& a, const Scalar& b) {
  require_same_backend(a, b);
  if (a.is_exact()) return std::get<mpq_class>(a.v_) == std::get<mpq_class>(b.v_);
  return std::get<double>(a.v_) == std::get<double>(b.v_);
}

}  // namespace pcn
