#pragma once

#include <gmpxx.h>

#include <cctype>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qha {

using Scalar = mpq_class;

enum class FieldKind { rationals, prime_field };

/// Ground field of every linear computation: the rationals or F_p.
///
/// Scalars are stored as GMP rationals in both cases. Over F_p every scalar is
/// an integer residue in [0, p), so structural equality is field equality.
class FieldSpec {
 public:
  FieldSpec() = default;

  static FieldSpec rationals() { return FieldSpec{}; }

  static FieldSpec prime_field(std::uint64_t p) {
    if (!is_prime(p))
      throw std::invalid_argument("field: " + std::to_string(p) + " is not prime");
    if (p >= (std::uint64_t{1} << 31))
      throw std::invalid_argument("field: prime must be below 2^31");
    FieldSpec f;
    f.kind_ = FieldKind::prime_field;
    f.p_ = p;
    return f;
  }

  FieldKind kind() const { return kind_; }
  bool is_prime_field() const { return kind_ == FieldKind::prime_field; }
  std::uint64_t characteristic() const { return p_; }

  bool operator==(const FieldSpec&) const = default;

  std::string to_string() const {
    return is_prime_field() ? "Fp " + std::to_string(p_) : std::string("Q");
  }

  Scalar reduce(Scalar x) const {
    if (!is_prime_field())
      return x;
    mpz_class num = x.get_num();
    mpz_class den = x.get_den();
    mpz_class pz(static_cast<unsigned long>(p_));
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), num.get_mpz_t(), pz.get_mpz_t());
    if (den != 1) {
      mpz_class dr;
      mpz_fdiv_r(dr.get_mpz_t(), den.get_mpz_t(), pz.get_mpz_t());
      if (dr == 0)
        throw std::domain_error("field: denominator divisible by p");
      mpz_class inv;
      mpz_invert(inv.get_mpz_t(), dr.get_mpz_t(), pz.get_mpz_t());
      r = r * inv;
      mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), pz.get_mpz_t());
    }
    return Scalar(r);
  }

  Scalar from_int(long v) const { return reduce(Scalar(v)); }
  Scalar add(const Scalar& a, const Scalar& b) const { return reduce(a + b); }
  Scalar sub(const Scalar& a, const Scalar& b) const { return reduce(a - b); }
  Scalar mul(const Scalar& a, const Scalar& b) const { return reduce(a * b); }
  Scalar neg(const Scalar& a) const { return reduce(-a); }

  Scalar inv(const Scalar& a) const {
    if (a == 0)
      throw std::domain_error("field: inverse of zero");
    if (!is_prime_field())
      return 1 / a;
    mpz_class r;
    mpz_class pz(static_cast<unsigned long>(p_));
    mpz_class az = a.get_num();
    mpz_invert(r.get_mpz_t(), az.get_mpz_t(), pz.get_mpz_t());
    return Scalar(r);
  }

  /// Accepts `a`, `-a`, `a/b` over Q; decimal residues (any integer) over F_p.
  Scalar parse(std::string_view text) const {
    std::string s(trim(text));
    if (s.empty())
      throw std::invalid_argument("scalar: empty token");
    auto slash = s.find('/');
    auto valid_int = [](const std::string& t) {
      std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
      if (i >= t.size())
        return false;
      for (; i < t.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(t[i])))
          return false;
      return true;
    };
    auto to_mpz = [](std::string t) {
      if (!t.empty() && t[0] == '+')
        t.erase(0, 1);
      return mpz_class(t, 10);
    };
    if (slash == std::string::npos) {
      if (!valid_int(s))
        throw std::invalid_argument("scalar: malformed token '" + s + "'");
      return reduce(Scalar(to_mpz(s)));
    }
    if (is_prime_field())
      throw std::invalid_argument("scalar: fractions not accepted over " + to_string());
    std::string n = s.substr(0, slash), d = s.substr(slash + 1);
    if (!valid_int(n) || !valid_int(d) || d[0] == '-' || d[0] == '+')
      throw std::invalid_argument("scalar: malformed fraction '" + s + "'");
    mpz_class dz = to_mpz(d);
    if (dz == 0)
      throw std::invalid_argument("scalar: zero denominator in '" + s + "'");
    Scalar q(to_mpz(n), dz);
    q.canonicalize();
    return q;
  }

  std::string format(const Scalar& x) const { return x.get_str(10); }

  static bool is_prime(std::uint64_t n) {
    if (n < 2)
      return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
      if (n % d == 0)
        return false;
    return true;
  }

 private:
  static std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
      s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
      s.remove_suffix(1);
    return s;
  }

  FieldKind kind_ = FieldKind::rationals;
  std::uint64_t p_ = 0;
};

}  // namespace qha
