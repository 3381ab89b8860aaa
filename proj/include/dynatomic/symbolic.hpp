#pragma once

// Exact symbolic dynamics of the angle map t -> d*t (mod 1): rational angles,
// d-ary words, primitive roots and kneading sequences.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dynatomic/error.hpp"

namespace dynatomic {

using BigInt = boost::multiprecision::cpp_int;

/// A rational point of the circle R/Z, stored as a reduced fraction in [0,1)
/// together with the degree d of the angle map it is iterated under.
class Angle {
 public:
  Angle(BigInt numerator, BigInt denominator, int degree);
  Angle(std::int64_t numerator, std::int64_t denominator, int degree)
      : Angle(BigInt(numerator), BigInt(denominator), degree) {}

  /// Parses "p/q" (or "0").
  static Angle parse(std::string_view text, int degree);

  const BigInt& numerator() const { return num_; }
  const BigInt& denominator() const { return den_; }
  int degree() const { return degree_; }

  bool is_zero() const { return num_ == 0; }
  bool is_periodic() const;
  /// Exact period under the angle map; throws NotPeriodic for preperiodic angles.
  int period() const;

  double to_double() const;
  std::string to_string() const;

  friend bool operator==(const Angle& a, const Angle& b) {
    return a.degree_ == b.degree_ && a.num_ == b.num_ && a.den_ == b.den_;
  }
  /// Compares representatives in [0,1).
  friend std::strong_ordering operator<=>(const Angle& a, const Angle& b);

 private:
  BigInt num_;
  BigInt den_;
  int degree_;
};

/// Finite word over the alphabet {0,...,d-1}.
class Word {
 public:
  Word(std::vector<int> digits, int degree);
  static Word parse(std::string_view text, int degree);

  int degree() const { return degree_; }
  std::size_t size() const { return digits_.size(); }
  int operator[](std::size_t i) const { return digits_[i]; }
  int back() const { return digits_.back(); }
  const std::vector<int>& digits() const { return digits_; }

  int digit_sum() const;
  /// Cyclic shift by k places: rotate(1) of abc is bca (the shift map on itineraries).
  Word rotate(std::size_t k) const;
  Word max_rotation() const;
  /// Canonical representative of the cyclic class.
  Word min_rotation() const;
  bool is_primitive() const;
  Word with_last(int digit) const;
  Word prefix(std::size_t len) const;
  Word concat(const Word& other) const;
  Word repeat(std::size_t times) const;

  std::string to_string() const;

  friend bool operator==(const Word& a, const Word& b) = default;
  friend std::strong_ordering operator<=>(const Word& a, const Word& b);

 private:
  std::vector<int> digits_;
  int degree_;
};

/// nu_1 ... nu_{n-1} followed by the terminal star; repeats with period n.
struct KneadingSequence {
  std::vector<int> body;
  int degree = 2;

  int period() const { return static_cast<int>(body.size()) + 1; }
  std::string to_string() const;
  static KneadingSequence parse(std::string_view text, int degree);

  friend bool operator==(const KneadingSequence&, const KneadingSequence&) = default;
};

/// nu = (w^{s-1} w_*) repeated, with w primitive of length t and n = t*s.
struct CyclicExpression {
  Word w;
  int t = 0;
  int s = 0;
  int n() const { return t * s; }
};

struct OrbitMaximum {
  bool is_max = false;
  Angle max_angle;
};

struct PrimitiveRoot {
  Word root;
  int power = 1;
};

Angle tau_iterate(const Angle& theta, std::uint64_t k);
/// One exact period of the d-adic expansion.
Word d_expansion(const Angle& theta);
Angle angle_from_word(const Word& w);
OrbitMaximum maximal_in_orbit(const Angle& theta);
KneadingSequence kneading_sequence(const Angle& theta);
PrimitiveRoot primitive_root(const Word& w);
std::optional<CyclicExpression> cyclic_expression(const KneadingSequence& nu);

/// Label of x in the partition of the circle cut at (theta+j)/d, j = 0..d-1:
/// the arc containing 0 is 0, the others are numbered counterclockwise.
/// Empty when x is one of the cut points.
std::optional<int> partition_label(const Angle& x, const Angle& theta);

/// Exact-period-n words of degree d (primitive words of length n), in
/// lexicographic order.
std::vector<Word> primitive_words(int degree, int n);

/// The word (d-1)...(d-1)(d-2) of length n.
Word special_word(int degree, int n);

}  // namespace dynatomic
