#include <cstdint>
#include <numeric>
#include <random>
#include <set>

#include "doctest.h"
#include "dynatomic/symbolic.hpp"

using namespace dynatomic;

namespace {

// Independent oracle: kneading digits by 64-bit integer arithmetic on the
// numerators p_k of tau^k(theta) = p_k/q.
std::string kneading_oracle(std::int64_t p, std::int64_t q, int d) {
  std::string out;
  std::int64_t x = p;  // nu_k reads tau^{k-1}(theta)
  for (int guard = 0; guard < 1024; ++guard) {
    // Compare x/q against (p + j q)/(d q): multiply through by d q.
    std::int64_t lhs = d * x;
    int digit = 0;
    bool star = false;
    for (int j = 0; j < d; ++j) {
      std::int64_t cut = p + j * q;
      if (lhs == cut) star = true;
    }
    if (star) {
      out.push_back('*');
      return out;
    }
    if (lhs > p && lhs < p + (d - 1) * q) digit = static_cast<int>((lhs - p) / q) + 1;
    out.push_back(static_cast<char>('0' + digit));
    x = (d * x) % q;
  }
  return out;
}

std::vector<int> random_digits(std::mt19937& rng, int d, std::size_t len) {
  std::uniform_int_distribution<int> dist(0, d - 1);
  std::vector<int> v(len);
  for (int& e : v) e = dist(rng);
  return v;
}

// Smallest t dividing n with w = (w[0..t))^(n/t), by a direct scan.
std::size_t root_length_oracle(const std::vector<int>& w) {
  const std::size_t n = w.size();
  for (std::size_t t = 1; t <= n; ++t) {
    if (n % t) continue;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) ok = w[i] == w[i % t];
    if (ok) return t;
  }
  return n;
}

}  // namespace

TEST_CASE("angle normal form and tau") {
  CHECK(Angle(2, 4, 2).to_string() == "1/2");
  CHECK(Angle(5, 5, 2).to_string() == "0/1");
  CHECK(Angle(7, 3, 2).to_string() == "1/3");
  CHECK(tau_iterate(Angle(1, 7, 3), 1) == Angle(3, 7, 3));
  CHECK(tau_iterate(Angle(0, 1, 2), 5) == Angle(0, 1, 2));
  CHECK(tau_iterate(Angle(19, 80, 3), 2) == Angle(11, 80, 3));
  CHECK(Angle::parse("19/80", 3) == Angle(19, 80, 3));
  CHECK_THROWS_AS(Angle::parse("1/0", 2), Error);
  CHECK_THROWS_AS(Angle::parse("a/3", 2), Error);
  CHECK(Angle(1, 7, 2).period() == 3);
  CHECK(Angle(1, 80, 3).period() == 4);
  CHECK_FALSE(Angle(1, 4, 2).is_periodic());
  CHECK_THROWS_AS(Angle(1, 4, 2).period(), Error);
}

TEST_CASE("d-expansion and its inverse") {
  CHECK(d_expansion(Angle(20, 31, 4)).to_string() == "22110");
  CHECK(d_expansion(Angle(13, 14, 3)).to_string() == "221001");
  CHECK(d_expansion(Angle(0, 1, 2)).to_string() == "0");
  CHECK(angle_from_word(Word::parse("221001", 3)) == Angle(13, 14, 3));
  CHECK(angle_from_word(Word::parse("10", 2)) == Angle(2, 3, 2));
  CHECK(angle_from_word(Word::parse("2221", 3)) == Angle(79, 80, 3));
  CHECK_THROWS_AS(d_expansion(Angle(1, 6, 3)), Error);

  for (int d = 2; d <= 5; ++d)
    for (int q = 1; q <= 200; ++q) {
      if (std::gcd(q, d) != 1) continue;
      for (int p = 0; p < q; ++p) {
        Angle a(p, q, d);
        CHECK(angle_from_word(d_expansion(a)) == a);
      }
    }
}

TEST_CASE("orbit maximum") {
  auto m = maximal_in_orbit(Angle(5, 31, 4));
  CHECK_FALSE(m.is_max);
  CHECK(m.max_angle == Angle(20, 31, 4));
  CHECK(maximal_in_orbit(Angle(2, 3, 2)).is_max);
  m = maximal_in_orbit(Angle(19, 80, 3));
  CHECK_FALSE(m.is_max);
  CHECK(m.max_angle == Angle(57, 80, 3));
}

TEST_CASE("kneading sequences") {
  CHECK(kneading_sequence(Angle(1, 7, 3)).to_string() == "12102*");
  CHECK(kneading_sequence(Angle(27, 28, 3)).to_string() == "22200*");
  CHECK(kneading_sequence(Angle(28, 31, 4)).to_string() == "3213*");
  CHECK(kneading_sequence(Angle(13, 14, 3)).to_string() == "22100*");
  CHECK_THROWS_AS(kneading_sequence(Angle(0, 1, 3)), Error);
  CHECK_THROWS_AS(kneading_sequence(Angle(1, 3, 3)), Error);
  CHECK(KneadingSequence::parse("12102*", 3).body == std::vector<int>{1, 2, 1, 0, 2});

  for (int d = 2; d <= 4; ++d)
    for (int q = 2; q <= 120; ++q) {
      if (std::gcd(q, d) != 1) continue;
      for (int p = 1; p < q; ++p) {
        if (std::gcd(p, q) != 1) continue;
        CHECK(kneading_sequence(Angle(p, q, d)).to_string() == kneading_oracle(p, q, d));
      }
    }
}

TEST_CASE("realization of kneading sequences (d <= 5, n <= 6)") {
  // The acceptance binary covers n <= 8; this is the quick variant.
  for (int d = 2; d <= 5; ++d)
    for (int n = 1; n <= 6; ++n)
      for (const Word& w : primitive_words(d, n)) {
        if (w.max_rotation() != w) continue;
        Angle theta = angle_from_word(w);
        if (theta.is_zero()) continue;
        KneadingSequence nu = kneading_sequence(theta);
        std::vector<int> prefix(w.digits().begin(), w.digits().end() - 1);
        CHECK(nu.body == prefix);
        CHECK(w.back() <= d - 2);
      }
}

TEST_CASE("primitive roots") {
  auto r = primitive_root(Word::parse("121212", 3));
  CHECK(r.root.to_string() == "12");
  CHECK(r.power == 3);
  r = primitive_root(Word::parse("1234", 5));
  CHECK(r.root.to_string() == "1234");
  CHECK(r.power == 1);
  r = primitive_root(Word::parse("11", 2));
  CHECK(r.root.to_string() == "1");
  CHECK(r.power == 2);

  std::mt19937 rng(0);
  for (int trial = 0; trial < 2000; ++trial) {
    int d = 2 + trial % 3;
    std::size_t base = 1 + rng() % 5;
    std::vector<int> digits = random_digits(rng, d, base);
    std::size_t reps = 1 + rng() % 4;
    std::vector<int> w;
    for (std::size_t k = 0; k < reps; ++k) w.insert(w.end(), digits.begin(), digits.end());
    auto pr = primitive_root(Word(w, d));
    CHECK(pr.root.size() == root_length_oracle(w));
    CHECK(pr.root.repeat(static_cast<std::size_t>(pr.power)).digits() == w);
  }
}

TEST_CASE("last-digit changes of a non-primitive word are primitive") {
  for (int d = 2; d <= 3; ++d)
    for (std::size_t len = 2; len <= 10; ++len)
      for (std::size_t t = 1; t < len; ++t) {
        if (len % t) continue;
        // Enumerate all roots of length t.
        std::size_t count = 1;
        for (std::size_t i = 0; i < t; ++i) count *= static_cast<std::size_t>(d);
        for (std::size_t code = 0; code < count; ++code) {
          std::vector<int> root(t);
          std::size_t c = code;
          for (std::size_t i = 0; i < t; ++i) {
            root[t - 1 - i] = static_cast<int>(c % static_cast<std::size_t>(d));
            c /= static_cast<std::size_t>(d);
          }
          Word w = Word(root, d).repeat(len / t);
          for (int e = 0; e < d; ++e)
            if (e != w.back()) CHECK(w.with_last(e).is_primitive());
        }
      }
}

TEST_CASE("cyclic expressions") {
  auto ce = cyclic_expression(KneadingSequence::parse("11*", 2));
  REQUIRE(ce);
  CHECK(ce->w.to_string() == "1");
  CHECK(ce->s == 3);
  CHECK_FALSE(cyclic_expression(KneadingSequence::parse("10*", 2)));
  ce = cyclic_expression(KneadingSequence::parse("212*", 3));
  REQUIRE(ce);
  CHECK(ce->w.to_string() == "21");
  CHECK(ce->t == 2);
  CHECK(ce->s == 2);
}

TEST_CASE("word basics") {
  Word w = Word::parse("100", 2);
  CHECK(w.rotate(1).to_string() == "001");
  CHECK(w.max_rotation().to_string() == "100");
  CHECK(w.min_rotation().to_string() == "001");
  CHECK(w.digit_sum() == 1);
  CHECK_THROWS_AS(Word::parse("102", 2), Error);
  CHECK_THROWS_AS((void)(Word::parse("10", 2) < Word::parse("10", 3)), Error);
  CHECK(primitive_words(2, 3).size() == 6);
  CHECK(primitive_words(2, 4).size() == 12);
  CHECK(primitive_words(3, 2).size() == 6);
  CHECK(special_word(3, 4).to_string() == "2221");
}

TEST_CASE("partition labels") {
  const Angle theta(6, 7, 2);  // cuts at 3/7 and 13/14
  CHECK(partition_label(Angle(0, 1, 2), theta) == 0);
  CHECK(partition_label(Angle(1, 2, 2), theta) == 1);
  CHECK(partition_label(Angle(13, 14, 2), theta) == std::nullopt);
  CHECK(partition_label(Angle(3, 7, 2), theta) == std::nullopt);
  CHECK(partition_label(Angle(1, 3, 2), theta) == 0);
}
