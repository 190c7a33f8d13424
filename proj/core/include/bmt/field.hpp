#ifndef BMT_FIELD_HPP
#define BMT_FIELD_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace bmt {

/// Prime field F_p for a word-sized prime. Elements are reduced
/// representatives in [0, p); arithmetic goes through 128-bit products.
struct Fp64 {
  using Elem = std::uint64_t;

  std::uint64_t p;

  explicit Fp64(std::uint64_t prime) : p(prime) {
    if (p < 2) throw std::invalid_argument("modulus must be at least 2");
  }

  Elem zero() const { return 0; }
  Elem one() const { return 1 % p; }
  bool is_zero(Elem a) const { return a == 0; }
  bool is_one(Elem a) const { return a == one(); }
  bool eq(Elem a, Elem b) const { return a == b; }

  Elem from_int(long long x) const {
    long long r = x % static_cast<long long>(p);
    if (r < 0) r += static_cast<long long>(p);
    return static_cast<Elem>(r);
  }
  Elem from_mpz(const mpz_class& x) const {
    mpz_class r = x % static_cast<unsigned long>(p);
    if (r < 0) r += static_cast<unsigned long>(p);
    return r.get_ui();
  }

  Elem add(Elem a, Elem b) const {
    Elem s = a + b;
    if (s >= p || s < a) s -= p;
    return s;
  }
  Elem neg(Elem a) const { return a == 0 ? 0 : p - a; }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const {
    return static_cast<Elem>((static_cast<unsigned __int128>(a) * b) % p);
  }
  Elem inv(Elem a) const {
    if (a == 0) throw std::domain_error("inverse of zero");
    // extended Euclid on (a, p)
    std::int64_t t = 0, nt = 1;
    std::uint64_t r = p, nr = a;
    while (nr != 0) {
      std::uint64_t q = r / nr;
      std::int64_t tmp_t = t - static_cast<std::int64_t>(q) * nt;
      t = nt;
      nt = tmp_t;
      std::uint64_t tmp_r = r - q * nr;
      r = nr;
      nr = tmp_r;
    }
    if (r != 1) throw std::domain_error("element not invertible (composite modulus?)");
    return t < 0 ? static_cast<Elem>(t + static_cast<std::int64_t>(p)) : static_cast<Elem>(t);
  }
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  std::string str(Elem a) const { return std::to_string(a); }
};

/// Arbitrary-precision rationals, kept canonical (lowest terms, positive
/// denominator) by GMP.
struct RationalField {
  using Elem = mpq_class;

  Elem zero() const { return Elem(0); }
  Elem one() const { return Elem(1); }
  bool is_zero(const Elem& a) const { return sgn(a) == 0; }
  bool is_one(const Elem& a) const { return a == 1; }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }

  Elem from_int(long long x) const { return Elem(static_cast<long>(x)); }
  Elem from_mpz(const mpz_class& x) const { return Elem(x); }

  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem inv(const Elem& a) const {
    if (sgn(a) == 0) throw std::domain_error("inverse of zero");
    return 1 / a;
  }
  Elem div(const Elem& a, const Elem& b) const {
    if (sgn(b) == 0) throw std::domain_error("division by zero");
    return a / b;
  }

  std::string str(const Elem& a) const { return a.get_str(); }
};

// Default certification primes; Buchberger runs repeat over both.
inline constexpr std::uint64_t kPrimeA = 2147483647ULL;
inline constexpr std::uint64_t kPrimeB = 2147483629ULL;

}  // namespace bmt

#endif
