#ifndef BMT_MONOMIAL_HPP
#define BMT_MONOMIAL_HPP

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace bmt {

/// Exponent vector over a fixed variable table, with cached total degree.
/// The only order in use is graded reverse lexicographic.
struct Monomial {
  std::vector<std::uint32_t> e;
  std::uint32_t deg = 0;

  Monomial() = default;
  explicit Monomial(int nvars) : e(nvars, 0) {}

  static Monomial var(int nvars, int i, std::uint32_t k = 1) {
    Monomial m(nvars);
    m.e[i] = k;
    m.deg = k;
    return m;
  }

  int nvars() const { return static_cast<int>(e.size()); }
  bool is_one() const { return deg == 0; }

  void recompute_deg() { deg = std::accumulate(e.begin(), e.end(), 0u); }

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.e == b.e; }
};

/// a < b in grevlex: smaller degree, or equal degree and the rightmost
/// differing exponent larger.
inline bool grevlex_less(const Monomial& a, const Monomial& b) {
  if (a.deg != b.deg) return a.deg < b.deg;
  for (int i = a.nvars() - 1; i >= 0; --i)
    if (a.e[i] != b.e[i]) return a.e[i] > b.e[i];
  return false;
}

inline bool divides(const Monomial& a, const Monomial& b) {
  if (a.deg > b.deg) return false;
  for (int i = 0; i < a.nvars(); ++i)
    if (a.e[i] > b.e[i]) return false;
  return true;
}

inline bool coprime(const Monomial& a, const Monomial& b) {
  for (int i = 0; i < a.nvars(); ++i)
    if (a.e[i] && b.e[i]) return false;
  return true;
}

inline Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial m = a;
  for (int i = 0; i < m.nvars(); ++i) m.e[i] += b.e[i];
  m.deg = a.deg + b.deg;
  return m;
}

inline Monomial mono_div(const Monomial& a, const Monomial& b) {
  Monomial m = a;
  for (int i = 0; i < m.nvars(); ++i) {
    if (m.e[i] < b.e[i]) throw std::domain_error("monomial division undefined");
    m.e[i] -= b.e[i];
  }
  m.deg = a.deg - b.deg;
  return m;
}

inline Monomial mono_lcm(const Monomial& a, const Monomial& b) {
  Monomial m = a;
  for (int i = 0; i < m.nvars(); ++i)
    if (b.e[i] > m.e[i]) m.e[i] = b.e[i];
  m.recompute_deg();
  return m;
}

/// Variable names for printing and parsing; pair rings use p01, p02, ...
/// with an optional trailing p_star.
struct VarTable {
  std::vector<std::string> names;

  int size() const { return static_cast<int>(names.size()); }
  int find(const std::string& name) const {
    for (int i = 0; i < size(); ++i)
      if (names[i] == name) return i;
    return -1;
  }
};

}  // namespace bmt

#endif
