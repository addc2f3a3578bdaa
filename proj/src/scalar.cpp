#include "cychom/scalar.hpp"

#include <cctype>

namespace cychom {
namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

// "<int>[/<uint>]", sign already stripped by caller when part of a split.
mpq_class parse_rational(const std::string& s, const std::string& full) {
  std::string body = s;
  bool neg = false;
  if (!body.empty() && (body[0] == '+' || body[0] == '-')) {
    neg = body[0] == '-';
    body = body.substr(1);
  }
  std::string num = body, den = "1";
  auto slash = body.find('/');
  if (slash != std::string::npos) {
    num = body.substr(0, slash);
    den = body.substr(slash + 1);
  }
  if (!all_digits(num) || !all_digits(den))
    throw ScalarParseError("bad scalar literal '" + full + "'");
  mpz_class n(num, 10), d(den, 10);
  if (d == 0) throw ScalarParseError("zero denominator in scalar literal '" + full + "'");
  if (neg) n = -n;
  mpq_class q(n, d);
  q.canonicalize();
  return q;
}

}  // namespace

Scalar Scalar::inverse() const {
  if (is_zero()) throw DivisionByZero();
  mpq_class n2 = re_ * re_ + im_ * im_;
  return Scalar(re_ / n2, -im_ / n2);
}

std::size_t Scalar::bit_size() const {
  auto part = [](const mpq_class& q) {
    return mpz_sizeinbase(q.get_num_mpz_t(), 2) + mpz_sizeinbase(q.get_den_mpz_t(), 2);
  };
  return part(re_) + part(im_);
}

Scalar Scalar::parse(const std::string& text) {
  if (text.empty()) throw ScalarParseError("empty scalar literal");
  for (char c : text)
    if (std::isspace(static_cast<unsigned char>(c)))
      throw ScalarParseError("whitespace in scalar literal '" + text + "'");

  if (text.back() != 'i') {
    return Scalar(parse_rational(text, text));
  }
  std::string body = text.substr(0, text.size() - 1);
  // Split at the last top-level sign (position >= 1): "3/2-1/3i" -> "3/2", "-1/3".
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if (body[k] == '+' || body[k] == '-') {
      split = k;
      break;
    }
  }
  std::string re_part, im_part;
  if (split == std::string::npos) {
    re_part = "0";  // pure imaginary: "i", "-i", "2i", "1/2i"
    im_part = body;
  } else {
    re_part = body.substr(0, split);
    im_part = body.substr(split);
  }
  // Bare sign or empty imaginary body means numerator 1.
  if (im_part.empty() || im_part == "+" || im_part == "-") im_part += "1";
  return Scalar(parse_rational(re_part, text), parse_rational(im_part, text));
}

std::string Scalar::str() const {
  std::string out = re_.get_str();
  if (sgn(im_) != 0) {
    mpq_class a = abs(im_);
    out += (sgn(im_) > 0 ? "+" : "-");
    out += a.get_str();
    out += "i";
  }
  return out;
}

Scalar field_arithmetic(const Scalar& a, const Scalar& b, FieldOp op) {
  switch (op) {
    case FieldOp::add:
      return a + b;
    case FieldOp::sub:
      return a - b;
    case FieldOp::mul:
      return a * b;
    case FieldOp::div:
      return a / b;
    case FieldOp::conj:
      return a.conj();
  }
  throw Error("unknown field operation");
}

}  // namespace cychom
