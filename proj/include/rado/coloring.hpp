#pragma once

#include <vector>

#include "rado/core.hpp"

namespace rado {

/// A total 2-coloring of [1,n]; bit i-1 holds the color of i.
class Coloring {
 public:
  explicit Coloring(Int n, int fill = 0) : n_(n), bits_(check_n(n), fill != 0) {}

  Coloring(Int n, std::vector<bool> bits) : n_(n), bits_(std::move(bits)) {
    if (static_cast<Int>(bits_.size()) != n || n < 1)
      throw ValidationError("coloring bit-vector does not match domain size");
  }

  Int n() const { return n_; }

  int color(Int i) const { return bits_[static_cast<std::size_t>(i - 1)] ? 1 : 0; }

  void set(Int i, int c) { bits_[static_cast<std::size_t>(i - 1)] = (c != 0); }

  Coloring flipped() const {
    Coloring out(*this);
    out.bits_.flip();
    return out;
  }

  const std::vector<bool>& bits() const { return bits_; }

  bool operator==(const Coloring&) const = default;

 private:
  static std::size_t check_n(Int n) {
    if (n < 1) throw ValidationError("coloring domain must be [1,n] with n >= 1");
    return static_cast<std::size_t>(n);
  }

  Int n_;
  std::vector<bool> bits_;
};

}  // namespace rado
