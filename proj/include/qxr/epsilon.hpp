#pragma once

#include <stdexcept>

namespace qxr {

// Curvature sign of the spherical/hyperbolic factor: +1 picks S^3, -1 picks H^3.
class Epsilon {
 public:
  static Epsilon plus() { return Epsilon(+1); }
  static Epsilon minus() { return Epsilon(-1); }
  static Epsilon from_int(int v) {
    if (v != 1 && v != -1) throw std::invalid_argument("Epsilon: value must be +1 or -1");
    return Epsilon(v);
  }

  int value() const { return v_; }
  friend bool operator==(Epsilon a, Epsilon b) { return a.v_ == b.v_; }

 private:
  explicit Epsilon(int v) : v_(v) {}
  int v_;
};

}  // namespace qxr
