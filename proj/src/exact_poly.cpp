#include "dynatomic/exact_poly.hpp"

#include <boost/multiprecision/cpp_complex.hpp>
#include <boost/multiprecision/miller_rabin.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace dynatomic {

namespace {

void trim(IntPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// target += sign * a * b
void add_product(IntPoly& target, const IntPoly& a, const IntPoly& b, int sign) {
  if (a.empty() || b.empty()) return;
  if (target.size() < a.size() + b.size() - 1) target.resize(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j] == 0) continue;
      if (sign > 0)
        target[i + j] += a[i] * b[j];
      else
        target[i + j] -= a[i] * b[j];
    }
  }
}

std::uint64_t mod_of(const BigInt& a, std::uint64_t p) {
  BigInt r = a % p;
  if (r < 0) r += p;
  return static_cast<std::uint64_t>(r);
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t p) { return powmod(a, p - 2, p); }

std::uint64_t submod(std::uint64_t a, std::uint64_t b, std::uint64_t p) { return a >= b ? a - b : a + p - b; }

using ModPoly = std::vector<std::uint64_t>;

void trim(ModPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// a mod b over F_p; b has a nonzero leading coefficient.
ModPoly mod_rem(ModPoly a, const ModPoly& b, std::uint64_t p) {
  const std::size_t db = b.size() - 1;
  const std::uint64_t inv = invmod(b.back(), p);
  trim(a);
  while (a.size() >= b.size()) {
    const std::uint64_t q = mulmod(a.back(), inv, p);
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) a[shift + i] = submod(a[shift + i], mulmod(q, b[i], p), p);
    trim(a);
  }
  return a;
}

// Res(a, b) over F_p by the Euclidean algorithm.
std::uint64_t mod_resultant(ModPoly a, ModPoly b, std::uint64_t p) {
  trim(a);
  trim(b);
  if (a.empty() || b.empty()) return 0;
  std::uint64_t res = 1;
  while (b.size() > 1) {
    const std::size_t da = a.size() - 1, db = b.size() - 1;
    ModPoly r = mod_rem(a, b, p);
    if (r.empty()) return 0;
    const std::size_t dr = r.size() - 1;
    if ((da * db) % 2 == 1) res = submod(0, res, p);
    res = mulmod(res, powmod(b.back(), da - dr, p), p);
    a = std::move(b);
    b = std::move(r);
  }
  return mulmod(res, powmod(b[0], a.size() - 1, p), p);
}

// Monomial coefficients of the polynomial through (i, values[i]), i = 0..D.
ModPoly interpolate_mod(const std::vector<std::uint64_t>& values, std::uint64_t p) {
  const std::size_t count = values.size();
  std::vector<std::uint64_t> dd = values;
  for (std::size_t k = 1; k < count; ++k)
    for (std::size_t i = count - 1; i >= k; --i) {
      dd[i] = mulmod(submod(dd[i], dd[i - 1], p), invmod(k, p), p);
      if (i == k) break;
    }
  // Horner on the Newton form: sum dd[k] prod_{j<k} (x - j).
  ModPoly poly{dd[count - 1]};
  for (std::size_t k = count - 1; k-- > 0;) {
    ModPoly next(poly.size() + 1, 0);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] = (next[i + 1] + poly[i]) % p;
      next[i] = submod(next[i], mulmod(poly[i], k % p, p), p);
    }
    next[0] = (next[0] + dd[k]) % p;
    poly = std::move(next);
  }
  trim(poly);
  return poly;
}

std::uint64_t eval_mod(const ModPoly& poly, std::uint64_t x, std::uint64_t p) {
  std::uint64_t r = 0;
  for (std::size_t i = poly.size(); i-- > 0;) r = (mulmod(r, x, p) + poly[i]) % p;
  return r;
}

class PrimeStream {
 public:
  std::uint64_t next() {
    do {
      candidate_ -= 2;
    } while (!boost::multiprecision::miller_rabin_test(BigInt(candidate_), 25));
    return candidate_;
  }

 private:
  std::uint64_t candidate_ = (std::uint64_t{1} << 62) + 1;
};

BigInt content(const IntPoly& a) {
  BigInt g = 0;
  for (const auto& x : a) {
    g = gcd(g, x);
    if (g == 1) break;
  }
  return g;
}

// Primitive part with a positive leading coefficient.
IntPoly primitive(IntPoly a) {
  trim(a);
  if (a.empty()) return a;
  BigInt g = content(a);
  if (a.back() < 0) g = -g;
  for (auto& x : a) x /= g;
  return a;
}

IntPoly derivative(const IntPoly& a) {
  IntPoly out;
  for (std::size_t i = 1; i < a.size(); ++i) out.push_back(a[i] * static_cast<long>(i));
  trim(out);
  return out;
}

// lc(b)^k a = q b + r with deg r < deg b.
IntPoly pseudo_remainder(IntPoly a, const IntPoly& b) {
  const BigInt& lead = b.back();
  while (a.size() >= b.size()) {
    const BigInt top = a.back();
    const std::size_t shift = a.size() - b.size();
    for (auto& x : a) x *= lead;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= top * b[i];
    trim(a);
  }
  return a;
}

IntPoly poly_gcd(IntPoly a, IntPoly b) {
  a = primitive(std::move(a));
  b = primitive(std::move(b));
  while (!b.empty()) {
    IntPoly r = primitive(pseudo_remainder(a, b));
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// a / b for b dividing a over the integers.
IntPoly exact_quotient(IntPoly a, const IntPoly& b) {
  if (a.size() < b.size()) {
    trim(a);
    if (!a.empty()) throw Error(ErrorKind::Internal, "inexact polynomial division");
    return a;
  }
  IntPoly q(a.size() - b.size() + 1);
  for (std::size_t k = q.size(); k-- > 0;) {
    const BigInt& top = a[k + b.size() - 1];
    if (top % b.back() != 0) throw Error(ErrorKind::Internal, "inexact polynomial division");
    q[k] = top / b.back();
    for (std::size_t i = 0; i < b.size(); ++i) a[k + i] -= q[k] * b[i];
  }
  trim(a);
  if (!a.empty()) throw Error(ErrorKind::Internal, "inexact polynomial division");
  return q;
}

IntPoly difference(IntPoly a, const IntPoly& b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

}  // namespace

std::vector<SquarefreeFactor> squarefree_decomposition(const IntPoly& input) {
  std::vector<SquarefreeFactor> out;
  IntPoly a = primitive(input);
  if (a.size() < 2) return out;
  // Yun's algorithm; every quotient is exact by Gauss's lemma.
  const IntPoly da = derivative(a);
  const IntPoly g = poly_gcd(a, da);
  IntPoly w = exact_quotient(a, g);
  IntPoly y = exact_quotient(da, g);
  IntPoly z = difference(y, derivative(w));
  for (int m = 1; w.size() > 1; ++m) {
    IntPoly h = poly_gcd(w, z);
    if (h.size() > 1) out.push_back({h, m});
    w = exact_quotient(w, h);
    y = exact_quotient(z, h);
    z = difference(y, derivative(w));
  }
  return out;
}

namespace {

std::uint64_t pow_count(int degree, int k) {
  std::uint64_t r = 1;
  for (int i = 0; i < k; ++i) r *= static_cast<std::uint64_t>(degree);
  return r;
}

}  // namespace

ExactPoly2 ExactPoly2::constant(const BigInt& a) {
  ExactPoly2 p;
  p.add_term(0, 0, a);
  return p;
}

ExactPoly2 ExactPoly2::z() {
  ExactPoly2 p;
  p.add_term(1, 0, 1);
  return p;
}

ExactPoly2 ExactPoly2::c() {
  ExactPoly2 p;
  p.add_term(0, 1, 1);
  return p;
}

int ExactPoly2::c_degree() const {
  int deg = -1;
  for (const auto& r : rows_) deg = std::max(deg, static_cast<int>(r.size()) - 1);
  return deg;
}

BigInt ExactPoly2::coeff(int i, int j) const {
  if (i < 0 || j < 0 || i >= static_cast<int>(rows_.size())) return 0;
  const IntPoly& r = rows_[static_cast<std::size_t>(i)];
  return j < static_cast<int>(r.size()) ? r[static_cast<std::size_t>(j)] : BigInt(0);
}

const IntPoly& ExactPoly2::row(int i) const {
  static const IntPoly empty;
  if (i < 0 || i >= static_cast<int>(rows_.size())) return empty;
  return rows_[static_cast<std::size_t>(i)];
}

std::size_t ExactPoly2::term_count() const {
  std::size_t n = 0;
  for (const auto& r : rows_)
    for (const auto& a : r) n += a != 0;
  return n;
}

void ExactPoly2::add_term(int i, int j, const BigInt& a) {
  if (i < 0 || j < 0) fail(ErrorKind::InvalidArgument, "negative exponent");
  if (rows_.size() <= static_cast<std::size_t>(i)) rows_.resize(static_cast<std::size_t>(i) + 1);
  IntPoly& r = rows_[static_cast<std::size_t>(i)];
  if (r.size() <= static_cast<std::size_t>(j)) r.resize(static_cast<std::size_t>(j) + 1);
  r[static_cast<std::size_t>(j)] += a;
  normalize();
}

void ExactPoly2::normalize() {
  for (auto& r : rows_) trim(r);
  while (!rows_.empty() && rows_.back().empty()) rows_.pop_back();
}

ExactPoly2 ExactPoly2::operator+(const ExactPoly2& o) const {
  ExactPoly2 out = *this;
  if (out.rows_.size() < o.rows_.size()) out.rows_.resize(o.rows_.size());
  for (std::size_t i = 0; i < o.rows_.size(); ++i) {
    IntPoly& r = out.rows_[i];
    if (r.size() < o.rows_[i].size()) r.resize(o.rows_[i].size());
    for (std::size_t j = 0; j < o.rows_[i].size(); ++j) r[j] += o.rows_[i][j];
  }
  out.normalize();
  return out;
}

ExactPoly2 ExactPoly2::operator-(const ExactPoly2& o) const {
  ExactPoly2 out = *this;
  if (out.rows_.size() < o.rows_.size()) out.rows_.resize(o.rows_.size());
  for (std::size_t i = 0; i < o.rows_.size(); ++i) {
    IntPoly& r = out.rows_[i];
    if (r.size() < o.rows_[i].size()) r.resize(o.rows_[i].size());
    for (std::size_t j = 0; j < o.rows_[i].size(); ++j) r[j] -= o.rows_[i][j];
  }
  out.normalize();
  return out;
}

ExactPoly2 ExactPoly2::operator*(const ExactPoly2& o) const {
  ExactPoly2 out;
  if (is_zero() || o.is_zero()) return out;
  out.rows_.resize(rows_.size() + o.rows_.size() - 1);
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i].empty()) continue;
    for (std::size_t j = 0; j < o.rows_.size(); ++j) add_product(out.rows_[i + j], rows_[i], o.rows_[j], 1);
  }
  out.normalize();
  return out;
}

ExactPoly2 ExactPoly2::dz() const {
  ExactPoly2 out;
  if (rows_.size() <= 1) return out;
  out.rows_.resize(rows_.size() - 1);
  for (std::size_t i = 1; i < rows_.size(); ++i) {
    out.rows_[i - 1] = rows_[i];
    for (auto& a : out.rows_[i - 1]) a *= static_cast<long>(i);
  }
  out.normalize();
  return out;
}

IntPoly ExactPoly2::at_c(const BigInt& c) const {
  IntPoly out(rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    BigInt v = 0;
    for (std::size_t j = rows_[i].size(); j-- > 0;) v = v * c + rows_[i][j];
    out[i] = v;
  }
  trim(out);
  return out;
}

std::vector<std::uint64_t> ExactPoly2::at_c_mod(std::uint64_t c0, std::uint64_t p) const {
  std::vector<std::uint64_t> out(rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    std::uint64_t v = 0;
    for (std::size_t j = rows_[i].size(); j-- > 0;) v = (mulmod(v, c0 % p, p) + mod_of(rows_[i][j], p)) % p;
    out[i] = v;
  }
  return out;
}

cplx ExactPoly2::evaluate(cplx c, cplx zv) const {
  cplx out = 0;
  for (std::size_t i = rows_.size(); i-- > 0;) {
    cplx v = 0;
    for (std::size_t j = rows_[i].size(); j-- > 0;) v = v * c + static_cast<double>(rows_[i][j]);
    out = out * zv + v;
  }
  return out;
}

ExactPoly2 iterate_poly(int degree, int k, const Budgets& budget) {
  if (degree < 2 || k < 0) fail(ErrorKind::InvalidArgument, "iterate_poly needs d >= 2, k >= 0");
  if (static_cast<double>(pow_count(degree, std::min(k, 40))) > static_cast<double>(budget.exact_degree) || k > 40)
    fail(ErrorKind::BudgetExceeded, "exact iterate of degree " + std::to_string(degree) + "^" + std::to_string(k) +
                                        " exceeds the exact budget " + std::to_string(budget.exact_degree));
  ExactPoly2 f = ExactPoly2::z();
  for (int i = 0; i < k; ++i) {
    ExactPoly2 power = f;
    for (int e = 1; e < degree; ++e) power = power * f;
    f = power + ExactPoly2::c();
  }
  return f;
}

Division divide_monic_z(const ExactPoly2& numerator, const ExactPoly2& divisor) {
  const int dm = divisor.z_degree();
  if (dm < 0 || divisor.row(dm) != IntPoly{1}) fail(ErrorKind::InvalidArgument, "divisor is not monic in z");
  const int dn = numerator.z_degree();
  std::vector<IntPoly> rem(static_cast<std::size_t>(std::max(dn + 1, 0)));
  for (int i = 0; i <= dn; ++i) rem[static_cast<std::size_t>(i)] = numerator.row(i);
  std::vector<IntPoly> quot(static_cast<std::size_t>(std::max(dn - dm + 1, 0)));
  for (int i = dn; i >= dm; --i) {
    IntPoly lead = rem[static_cast<std::size_t>(i)];
    trim(lead);
    if (lead.empty()) continue;
    const int shift = i - dm;
    quot[static_cast<std::size_t>(shift)] = lead;
    for (int k = 0; k <= dm; ++k) add_product(rem[static_cast<std::size_t>(shift + k)], lead, divisor.row(k), -1);
  }
  Division out;
  for (std::size_t i = 0; i < quot.size(); ++i)
    for (std::size_t j = 0; j < quot[i].size(); ++j)
      if (quot[i][j] != 0) out.quotient.add_term(static_cast<int>(i), static_cast<int>(j), quot[i][j]);
  for (std::size_t i = 0; i < rem.size(); ++i)
    for (std::size_t j = 0; j < rem[i].size(); ++j)
      if (rem[i][j] != 0) out.remainder.add_term(static_cast<int>(i), static_cast<int>(j), rem[i][j]);
  return out;
}

ExactPoly2 dynatomic_factor(int degree, int m, int s, const Budgets& budget) {
  if (m < 1 || s < 1) fail(ErrorKind::InvalidArgument, "m and s must be >= 1");
  const ExactPoly2 big = iterate_poly(degree, m * s, budget) - ExactPoly2::z();
  const ExactPoly2 small = iterate_poly(degree, m, budget) - ExactPoly2::z();
  Division div = divide_monic_z(big, small);
  if (!div.remainder.is_zero())
    fail(ErrorKind::Internal, "f^" + std::to_string(m * s) + " - z is not divisible by f^" + std::to_string(m) + " - z");
  return div.quotient;
}

BigInt resultant_bareiss(const IntPoly& a_in, const IntPoly& b_in) {
  IntPoly a = a_in, b = b_in;
  trim(a);
  trim(b);
  if (a.empty() || b.empty()) return 0;
  const std::size_t m = a.size() - 1, n = b.size() - 1;
  const std::size_t size = m + n;
  if (size == 0) return 1;
  std::vector<std::vector<BigInt>> mat(size, std::vector<BigInt>(size, 0));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k <= m; ++k) mat[r][r + k] = a[m - k];
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t k = 0; k <= n; ++k) mat[n + r][r + k] = b[n - k];

  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < size; ++k) {
    if (mat[k][k] == 0) {
      std::size_t swap = k + 1;
      while (swap < size && mat[swap][k] == 0) ++swap;
      if (swap == size) return 0;
      std::swap(mat[k], mat[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < size; ++i) {
      for (std::size_t j = k + 1; j < size; ++j) mat[i][j] = (mat[i][j] * mat[k][k] - mat[i][k] * mat[k][j]) / prev;
      mat[i][k] = 0;
    }
    prev = mat[k][k];
  }
  return sign * mat[size - 1][size - 1];
}

IntPoly parabolic_resultant(int degree, int n, const Budgets& budget) {
  if (n < 1) fail(ErrorKind::InvalidArgument, "period must be >= 1");
  const std::uint64_t big_n = pow_count(degree, n);
  if (big_n > budget.resultant_degree)
    fail(ErrorKind::BudgetExceeded, std::to_string(degree) + "^" + std::to_string(n) + " exceeds the exact resultant budget " +
                                        std::to_string(budget.resultant_degree));
  const ExactPoly2 p = iterate_poly(degree, n, budget) - ExactPoly2::z();
  const ExactPoly2 dp = p.dz();
  // deg X = N n (d-1) / d: each of the N roots contributes (f^n)' ~ c^{n(d-1)/d}.
  const std::uint64_t bound = static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(degree - 1) * (big_n / static_cast<std::uint64_t>(degree));

  PrimeStream primes;
  BigInt modulus = 1;
  std::vector<BigInt> acc(bound + 1, 0);
  std::vector<BigInt> previous;
  int stable = 0;
  while (stable < 2) {
    const std::uint64_t prime = primes.next();
    std::vector<std::uint64_t> values(bound + 1);
    for (std::uint64_t c0 = 0; c0 <= bound; ++c0) values[c0] = mod_resultant(p.at_c_mod(c0, prime), dp.at_c_mod(c0, prime), prime);
    ModPoly interp = interpolate_mod(values, prime);
    // One extra sample validates the degree bound.
    const std::uint64_t check = bound + 1;
    if (eval_mod(interp, check, prime) != mod_resultant(p.at_c_mod(check, prime), dp.at_c_mod(check, prime), prime))
      fail(ErrorKind::Internal, "resultant degree exceeds the bound " + std::to_string(bound));
    interp.resize(bound + 1, 0);

    // Chinese remaindering into symmetric residues.
    const std::uint64_t minv = invmod(mod_of(modulus, prime), prime);
    for (std::size_t i = 0; i <= bound; ++i) {
      const std::uint64_t have = mod_of(acc[i], prime);
      const std::uint64_t t = mulmod(submod(interp[i], have, prime), minv, prime);
      acc[i] += modulus * t;
    }
    modulus *= prime;
    const BigInt half = modulus / 2;
    std::vector<BigInt> symmetric(acc.size());
    for (std::size_t i = 0; i < acc.size(); ++i) {
      acc[i] %= modulus;
      if (acc[i] < 0) acc[i] += modulus;
      symmetric[i] = acc[i] > half ? acc[i] - modulus : acc[i];
    }
    stable = symmetric == previous ? stable + 1 : 0;
    previous = std::move(symmetric);
  }
  trim(previous);
  return previous;
}

std::vector<cplx> integer_poly_roots(const IntPoly& input) {
  using boost::multiprecision::cpp_bin_float_50;
  using boost::multiprecision::cpp_complex_50;
  IntPoly poly = input;
  trim(poly);
  if (poly.size() <= 1) return {};
  std::vector<cplx> out;
  std::size_t zeros = 0;
  while (poly[zeros] == 0) ++zeros;
  out.assign(zeros, cplx(0.0));
  poly.erase(poly.begin(), poly.begin() + static_cast<std::ptrdiff_t>(zeros));
  const std::size_t deg = poly.size() - 1;
  if (deg == 0) return out;

  std::vector<cpp_bin_float_50> a(poly.size());
  for (std::size_t i = 0; i < poly.size(); ++i) a[i] = cpp_bin_float_50(poly[i]);
  // Fujiwara bound on the root moduli.
  cpp_bin_float_50 radius = 0;
  for (std::size_t k = 1; k <= deg; ++k) {
    cpp_bin_float_50 q = abs(a[deg - k] / a[deg]);
    if (k == deg) q /= 2;
    radius = std::max(radius, cpp_bin_float_50(pow(q, cpp_bin_float_50(1) / k)));
  }
  radius *= 2;

  std::vector<cpp_complex_50> z(deg);
  const double two_pi = 2 * std::numbers::pi;
  for (std::size_t k = 0; k < deg; ++k) {
    const double phi = two_pi * static_cast<double>(k) / static_cast<double>(deg) + 0.4;
    z[k] = cpp_complex_50(radius * std::cos(phi), radius * std::sin(phi));
  }
  // A root is frozen once |p| is within the rounding noise of Horner's
  // rule, which also stops the members of a multiple-root cluster.
  const cpp_bin_float_50 noise = 64 * std::numeric_limits<cpp_bin_float_50>::epsilon();
  std::vector<bool> frozen(deg, false);
  std::size_t active = deg;
  for (int sweep = 0; sweep < 3000 && active > 0; ++sweep) {
    for (std::size_t k = 0; k < deg; ++k) {
      if (frozen[k]) continue;
      cpp_complex_50 p = cpp_complex_50(a[deg]), dp = 0;
      cpp_bin_float_50 bound = abs(a[deg]);
      const cpp_bin_float_50 r = abs(z[k]);
      for (std::size_t i = deg; i-- > 0;) {
        dp = dp * z[k] + p;
        p = p * z[k] + cpp_complex_50(a[i]);
        bound = bound * r + abs(a[i]);
      }
      if (abs(p) <= noise * bound) {
        frozen[k] = true;
        --active;
        continue;
      }
      cpp_complex_50 sum = 0;
      for (std::size_t m = 0; m < deg; ++m)
        if (m != k) sum += cpp_complex_50(1) / (z[k] - z[m]);
      const cpp_complex_50 ratio = p / dp;
      z[k] -= ratio / (cpp_complex_50(1) - ratio * sum);
    }
  }
  for (const auto& zk : z) out.emplace_back(static_cast<double>(zk.real()), static_cast<double>(zk.imag()));
  return out;
}

ParabolicSet parabolic_parameters(int degree, int n, const Config& cfg) {
  ParabolicSet set;
  set.degree = degree;
  set.n = n;
  set.resultant = parabolic_resultant(degree, n, cfg.budgets);
  for (const auto& part : squarefree_decomposition(set.resultant))
    for (cplx root : integer_poly_roots(part.factor)) {
      const ParabolicPoint located = locate_parabolic(degree, root, n, cfg);
      ParabolicParameter pp;
      pp.c = located.c;
      pp.z = located.z;
      pp.period = located.period;
      pp.multiplier = located.multiplier;
      pp.multiplicity = part.multiplicity;
      const cplxl c(pp.c.real(), pp.c.imag()), z(pp.z.real(), pp.z.imag());
      const IterateJet j = iterate_with_derivatives(degree, c, z, n);
      pp.residual_value = static_cast<double>(std::abs(j.value - z));
      pp.residual_derivative = static_cast<double>(std::abs(j.dz - 1.0L));
      set.parameters.push_back(pp);
    }
  std::sort(set.parameters.begin(), set.parameters.end(), [](const ParabolicParameter& a, const ParabolicParameter& b) {
    if (a.c.real() != b.c.real()) return a.c.real() < b.c.real();
    return a.c.imag() < b.c.imag();
  });
  return set;
}

}  // namespace dynatomic
