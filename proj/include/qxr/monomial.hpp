#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace qxr {

// Power product in the variables (m1, m2, m3, t), exponentwise.
// m1, m2, m3 are the three principal-curvature symbols, t the squared
// angle-function variable.
struct Monomial {
  std::array<std::uint32_t, 4> e{0, 0, 0, 0};

  static constexpr int kVars = 4;
  static constexpr int kT = 3;  // index of the t variable

  std::uint64_t total_degree() const {
    return std::uint64_t(e[0]) + e[1] + e[2] + e[3];
  }

  bool is_one() const { return e[0] == 0 && e[1] == 0 && e[2] == 0 && e[3] == 0; }

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.e == b.e; }
  friend bool operator!=(const Monomial& a, const Monomial& b) { return a.e != b.e; }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (int i = 0; i < kVars; ++i) r.e[i] = a.e[i] + b.e[i];
    return r;
  }

  bool divides(const Monomial& m) const {
    for (int i = 0; i < kVars; ++i)
      if (e[i] > m.e[i]) return false;
    return true;
  }

  // Quotient; caller guarantees divisibility.
  friend Monomial operator/(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (int i = 0; i < kVars; ++i) r.e[i] = a.e[i] - b.e[i];
    return r;
  }
};

inline const char* variable_name(int i) {
  static const char* names[4] = {"m1", "m2", "m3", "t"};
  return names[i];
}

// Graded lexicographic order with m1 > m2 > m3 > t.
inline int grlex_cmp(const Monomial& a, const Monomial& b) {
  const auto da = a.total_degree(), db = b.total_degree();
  if (da != db) return da < db ? -1 : 1;
  for (int i = 0; i < Monomial::kVars; ++i)
    if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? -1 : 1;
  return 0;
}

inline bool grlex_less(const Monomial& a, const Monomial& b) { return grlex_cmp(a, b) < 0; }

// Descending comparator: maps iterate leading term first, which is also the
// canonical serialization order.
struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const { return grlex_cmp(a, b) > 0; }
};

}  // namespace qxr
