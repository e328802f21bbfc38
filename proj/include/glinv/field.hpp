#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace glinv {

using Integer = mpz_class;
using Rational = mpq_class;

struct BadPrime : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ExtensionUnsupported : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rational parse_rational(const std::string& s) {
  Rational q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  q.canonicalize();
  return q;
}

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

// Prime field with a thread-local modulus, set through Zp::Scope.
class Zp {
 public:
  Zp() = default;
  Zp(long v) {
    long m = static_cast<long>(modulus());
    long r = v % m;
    v_ = static_cast<std::uint64_t>(r < 0 ? r + m : r);
  }
  static Zp raw(std::uint64_t v) {
    Zp z;
    z.v_ = v;
    return z;
  }
  static Zp from_rational(const Rational& q) {
    std::uint64_t p = modulus();
    std::uint64_t n = mpz_fdiv_ui(q.get_num_mpz_t(), p);
    std::uint64_t d = mpz_fdiv_ui(q.get_den_mpz_t(), p);
    if (d == 0) throw BadPrime("denominator vanishes mod " + std::to_string(p));
    return raw(n) / raw(d);
  }

  std::uint64_t value() const { return v_; }

  static std::uint64_t& modulus() {
    thread_local std::uint64_t p = 2147483647ULL;
    return p;
  }

  class Scope {
   public:
    explicit Scope(std::uint64_t p) : saved_(modulus()) { modulus() = p; }
    ~Scope() { modulus() = saved_; }
    Scope(const Scope&) = delete;
    Scope& operator=(const Scope&) = delete;

   private:
    std::uint64_t saved_;
  };

  friend Zp operator+(Zp a, Zp b) {
    std::uint64_t s = a.v_ + b.v_;
    if (s >= modulus()) s -= modulus();
    return raw(s);
  }
  friend Zp operator-(Zp a, Zp b) { return raw(a.v_ >= b.v_ ? a.v_ - b.v_ : a.v_ + modulus() - b.v_); }
  friend Zp operator*(Zp a, Zp b) {
    return raw(static_cast<std::uint64_t>((static_cast<unsigned __int128>(a.v_) * b.v_) % modulus()));
  }
  friend Zp operator/(Zp a, Zp b) { return a * b.inverse(); }
  Zp operator-() const { return raw(v_ == 0 ? 0 : modulus() - v_); }
  Zp& operator+=(Zp b) { return *this = *this + b; }
  Zp& operator-=(Zp b) { return *this = *this - b; }
  Zp& operator*=(Zp b) { return *this = *this * b; }
  Zp& operator/=(Zp b) { return *this = *this / b; }
  friend bool operator==(Zp a, Zp b) { return a.v_ == b.v_; }

  Zp pow(std::uint64_t e) const {
    Zp r = raw(1), b = *this;
    while (e) {
      if (e & 1) r *= b;
      b *= b;
      e >>= 1;
    }
    return r;
  }
  Zp inverse() const {
    if (v_ == 0) throw std::domain_error("inverse of zero mod p");
    return pow(modulus() - 2);
  }

 private:
  std::uint64_t v_ = 0;
};

inline bool is_zero(const Zp& z) { return z.value() == 0; }
inline std::string to_string(const Zp& z) { return std::to_string(z.value()); }

// a + b*z with z a primitive cube root of unity, z^2 = -1 - z.
class Cyclo3 {
 public:
  Cyclo3() = default;
  Cyclo3(long v) : a_(v), b_(0) {}
  Cyclo3(Rational a) : a_(std::move(a)), b_(0) {}
  Cyclo3(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {}
  static Cyclo3 zeta() { return Cyclo3(0, 1); }

  const Rational& re() const { return a_; }
  const Rational& im() const { return b_; }

  friend Cyclo3 operator+(const Cyclo3& x, const Cyclo3& y) { return {x.a_ + y.a_, x.b_ + y.b_}; }
  friend Cyclo3 operator-(const Cyclo3& x, const Cyclo3& y) { return {x.a_ - y.a_, x.b_ - y.b_}; }
  friend Cyclo3 operator*(const Cyclo3& x, const Cyclo3& y) {
    Rational bd = x.b_ * y.b_;
    return {x.a_ * y.a_ - bd, x.a_ * y.b_ + x.b_ * y.a_ - bd};
  }
  friend Cyclo3 operator/(const Cyclo3& x, const Cyclo3& y) { return x * y.inverse(); }
  Cyclo3 operator-() const { return {-a_, -b_}; }
  Cyclo3& operator+=(const Cyclo3& y) { return *this = *this + y; }
  Cyclo3& operator-=(const Cyclo3& y) { return *this = *this - y; }
  Cyclo3& operator*=(const Cyclo3& y) { return *this = *this * y; }
  Cyclo3& operator/=(const Cyclo3& y) { return *this = *this / y; }
  friend bool operator==(const Cyclo3& x, const Cyclo3& y) { return x.a_ == y.a_ && x.b_ == y.b_; }

  Cyclo3 conj() const { return {a_ - b_, -b_}; }
  Rational norm() const { return a_ * a_ - a_ * b_ + b_ * b_; }
  Cyclo3 inverse() const {
    Rational n = norm();
    if (sgn(n) == 0) throw std::domain_error("inverse of zero in Q(z)");
    Cyclo3 c = conj();
    return {c.a_ / n, c.b_ / n};
  }

 private:
  Rational a_, b_;
};

inline bool is_zero(const Cyclo3& x) { return sgn(x.re()) == 0 && sgn(x.im()) == 0; }

inline std::string to_string(const Cyclo3& x) {
  if (is_zero(x.im())) return to_string(x.re());
  std::string s = to_string(x.re()) + (sgn(x.im()) < 0 ? "-" : "+");
  Rational ab = abs(x.im());
  return s + to_string(ab) + "*z";
}

inline Cyclo3 parse_cyclo3(const std::string& s) {
  auto star = s.find("*z");
  if (star == std::string::npos) return Cyclo3(parse_rational(s));
  std::size_t split = std::string::npos;
  for (std::size_t i = star; i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != '/') {
      split = i;
      break;
    }
  }
  if (split == std::string::npos) return Cyclo3(0, parse_rational(s.substr(0, star)));
  Rational b = parse_rational(s.substr(split + 1, star - split - 1));
  if (s[split] == '-') b = -b;
  return Cyclo3(parse_rational(s.substr(0, split)), b);
}

template <class F>
F from_rational(const Rational& q) {
  if constexpr (std::is_same_v<F, Zp>) {
    return Zp::from_rational(q);
  } else {
    return F(q);
  }
}

}  // namespace glinv
