#pragma once
#include <gmpxx.h>

#include <cstddef>
#include <string>

#include "cychom/common.hpp"

namespace cychom {

// Exact element of Q(i): re + im*i with arbitrary-precision rational parts.
// gmp keeps both fractions reduced with positive denominators, so equality
// is plain componentwise comparison.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long n) : re_(n) {}  // NOLINT: implicit by design, mirrors field literals
  Scalar(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }
  explicit Scalar(mpq_class re) : re_(std::move(re)) { re_.canonicalize(); }

  static Scalar i() { return Scalar(mpq_class(0), mpq_class(1)); }

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  bool operator==(const Scalar& o) const { return re_ == o.re_ && im_ == o.im_; }
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  Scalar operator-() const { return Scalar(-re_, -im_); }
  Scalar operator+(const Scalar& o) const { return Scalar(re_ + o.re_, im_ + o.im_); }
  Scalar operator-(const Scalar& o) const { return Scalar(re_ - o.re_, im_ - o.im_); }
  Scalar operator*(const Scalar& o) const {
    return Scalar(re_ * o.re_ - im_ * o.im_, re_ * o.im_ + im_ * o.re_);
  }
  Scalar conj() const { return Scalar(re_, -im_); }
  Scalar inverse() const;
  Scalar operator/(const Scalar& o) const { return *this * o.inverse(); }

  Scalar& operator+=(const Scalar& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  Scalar& operator-=(const Scalar& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  // Total bits across numerators and denominators; the elimination pivot metric.
  std::size_t bit_size() const;

  double re_double() const { return re_.get_d(); }
  double im_double() const { return im_.get_d(); }

  // Literal grammar "<int>[/<uint>][(+|-)<int>[/<uint>]i]" plus pure-imaginary
  // shorthands ("i", "-i", "2i", "1/2i").  Whitespace-free.
  static Scalar parse(const std::string& text);
  // Canonical printing: real part always present, imaginary part signed with
  // explicit numerator ("0", "3/2-1/3i", "0+1i").
  std::string str() const;

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

enum class FieldOp { add, sub, mul, div, conj };

// Scalar field dispatcher (op=conj ignores b).
Scalar field_arithmetic(const Scalar& a, const Scalar& b, FieldOp op);

}  // namespace cychom
