#include "dynatomic/symbolic.hpp"

#include <algorithm>
#include <numeric>

namespace dynatomic {

namespace {

constexpr std::uint64_t kMaxOrderSearch = 10'000'000;

void check_degree(int degree) {
  if (degree < 2) fail(ErrorKind::InvalidArgument, "degree must be >= 2, got " + std::to_string(degree));
}

BigInt parse_bigint(std::string_view text) {
  if (text.empty() || !std::all_of(text.begin(), text.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
    fail(ErrorKind::InvalidArgument, "expected a non-negative integer, got '" + std::string(text) + "'");
  return BigInt(std::string(text));
}

}  // namespace

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::NotPeriodic: return "NotPeriodic";
    case ErrorKind::ZeroAngle: return "ZeroAngle";
    case ErrorKind::NotMaximal: return "NotMaximal";
    case ErrorKind::PeriodOne: return "PeriodOne";
    case ErrorKind::BoundaryHit: return "BoundaryHit";
    case ErrorKind::SpecialAngle: return "SpecialAngle";
    case ErrorKind::NotCandidate: return "NotCandidate";
    case ErrorKind::PeriodDrop: return "PeriodDrop";
    case ErrorKind::NotPrimitive: return "NotPrimitive";
    case ErrorKind::NotExactPeriod: return "NotExactPeriod";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::MultiplierMismatch: return "MultiplierMismatch";
    case ErrorKind::ClusterAmbiguous: return "ClusterAmbiguous";
    case ErrorKind::Bifurcation: return "Bifurcation";
    case ErrorKind::NewtonDivergence: return "NewtonDivergence";
    case ErrorKind::DoublePoleAtZero: return "DoublePoleAtZero";
    case ErrorKind::NearCriticalValue: return "NearCriticalValue";
    case ErrorKind::DoublePoleInRegion: return "DoublePoleInRegion";
    case ErrorKind::RegionNotCompactlyContained: return "RegionNotCompactlyContained";
    case ErrorKind::NotParabolic: return "NotParabolic";
    case ErrorKind::MultiplierOne: return "MultiplierOne";
    case ErrorKind::PoleCollision: return "PoleCollision";
    case ErrorKind::UnmatchedRoot: return "UnmatchedRoot";
    case ErrorKind::LabelConflict: return "LabelConflict";
    case ErrorKind::TrackingAmbiguity: return "TrackingAmbiguity";
    case ErrorKind::StepUnderflow: return "StepUnderflow";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

// ---------------------------------------------------------------- Angle

Angle::Angle(BigInt numerator, BigInt denominator, int degree)
    : num_(std::move(numerator)), den_(std::move(denominator)), degree_(degree) {
  check_degree(degree);
  if (den_ <= 0) fail(ErrorKind::InvalidArgument, "angle denominator must be positive");
  num_ %= den_;
  if (num_ < 0) num_ += den_;
  if (num_ == 0) {
    den_ = 1;
    return;
  }
  BigInt g = gcd(num_, den_);
  num_ /= g;
  den_ /= g;
}

Angle Angle::parse(std::string_view text, int degree) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Angle(parse_bigint(text), BigInt(1), degree);
  BigInt den = parse_bigint(text.substr(slash + 1));
  if (den == 0) fail(ErrorKind::InvalidArgument, "zero denominator in '" + std::string(text) + "'");
  return Angle(parse_bigint(text.substr(0, slash)), den, degree);
}

bool Angle::is_periodic() const { return gcd(den_, BigInt(degree_)) == 1; }

int Angle::period() const {
  if (!is_periodic()) fail(ErrorKind::NotPeriodic, to_string() + " is not periodic for degree " + std::to_string(degree_));
  if (den_ == 1) return 1;
  BigInt x = BigInt(degree_) % den_;
  std::uint64_t k = 1;
  while (x != 1) {
    x = (x * degree_) % den_;
    if (++k > kMaxOrderSearch) fail(ErrorKind::BudgetExceeded, "period of " + to_string() + " exceeds search budget");
  }
  return static_cast<int>(k);
}

double Angle::to_double() const {
  return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Angle::to_string() const { return num_.str() + "/" + den_.str(); }

std::strong_ordering operator<=>(const Angle& a, const Angle& b) {
  BigInt lhs = a.num_ * b.den_;
  BigInt rhs = b.num_ * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

// ---------------------------------------------------------------- Word

Word::Word(std::vector<int> digits, int degree) : digits_(std::move(digits)), degree_(degree) {
  check_degree(degree);
  if (digits_.empty()) fail(ErrorKind::InvalidArgument, "words must be nonempty");
  for (int e : digits_)
    if (e < 0 || e >= degree)
      fail(ErrorKind::InvalidArgument, "digit " + std::to_string(e) + " out of range for degree " + std::to_string(degree));
}

Word Word::parse(std::string_view text, int degree) {
  std::vector<int> digits;
  digits.reserve(text.size());
  for (char ch : text) {
    if (ch < '0' || ch > '9') fail(ErrorKind::InvalidArgument, "bad digit '" + std::string(1, ch) + "' in word");
    digits.push_back(ch - '0');
  }
  return Word(std::move(digits), degree);
}

int Word::digit_sum() const { return std::accumulate(digits_.begin(), digits_.end(), 0); }

Word Word::rotate(std::size_t k) const {
  std::vector<int> out(digits_.size());
  const std::size_t n = digits_.size();
  for (std::size_t i = 0; i < n; ++i) out[i] = digits_[(i + k) % n];
  return Word(std::move(out), degree_);
}

Word Word::max_rotation() const {
  Word best = *this;
  for (std::size_t k = 1; k < size(); ++k) best = std::max(best, rotate(k));
  return best;
}

Word Word::min_rotation() const {
  Word best = *this;
  for (std::size_t k = 1; k < size(); ++k) best = std::min(best, rotate(k));
  return best;
}

bool Word::is_primitive() const { return primitive_root(*this).power == 1; }

Word Word::with_last(int digit) const {
  std::vector<int> out = digits_;
  out.back() = digit;
  return Word(std::move(out), degree_);
}

Word Word::prefix(std::size_t len) const {
  return Word(std::vector<int>(digits_.begin(), digits_.begin() + static_cast<std::ptrdiff_t>(len)), degree_);
}

Word Word::concat(const Word& other) const {
  if (other.degree_ != degree_) fail(ErrorKind::DegreeMismatch, "concatenating words of different degree");
  std::vector<int> out = digits_;
  out.insert(out.end(), other.digits_.begin(), other.digits_.end());
  return Word(std::move(out), degree_);
}

Word Word::repeat(std::size_t times) const {
  std::vector<int> out;
  out.reserve(digits_.size() * times);
  for (std::size_t i = 0; i < times; ++i) out.insert(out.end(), digits_.begin(), digits_.end());
  return Word(std::move(out), degree_);
}

std::string Word::to_string() const {
  std::string out;
  out.reserve(digits_.size());
  for (int e : digits_) out.push_back(static_cast<char>('0' + e));
  return out;
}

std::strong_ordering operator<=>(const Word& a, const Word& b) {
  if (a.degree_ != b.degree_) fail(ErrorKind::DegreeMismatch, "comparing words of different degree");
  return std::lexicographical_compare_three_way(a.digits_.begin(), a.digits_.end(), b.digits_.begin(),
                                                b.digits_.end());
}

// ---------------------------------------------------------------- Kneading

std::string KneadingSequence::to_string() const {
  std::string out;
  for (int e : body) out.push_back(static_cast<char>('0' + e));
  out.push_back('*');
  return out;
}

KneadingSequence KneadingSequence::parse(std::string_view text, int degree) {
  check_degree(degree);
  if (text.empty() || text.back() != '*')
    fail(ErrorKind::InvalidArgument, "kneading sequence must end with '*': '" + std::string(text) + "'");
  KneadingSequence nu;
  nu.degree = degree;
  for (char ch : text.substr(0, text.size() - 1)) {
    int e = ch - '0';
    if (e < 0 || e >= degree) fail(ErrorKind::InvalidArgument, "bad kneading digit in '" + std::string(text) + "'");
    nu.body.push_back(e);
  }
  return nu;
}

// ---------------------------------------------------------------- operations

Angle tau_iterate(const Angle& theta, std::uint64_t k) {
  BigInt factor = boost::multiprecision::powm(BigInt(theta.degree()), BigInt(k), theta.denominator());
  return Angle(theta.numerator() * factor, theta.denominator(), theta.degree());
}

Word d_expansion(const Angle& theta) {
  const int n = theta.period();
  const BigInt& q = theta.denominator();
  BigInt a = theta.numerator();
  std::vector<int> digits;
  digits.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    BigInt da = a * theta.degree();
    digits.push_back(static_cast<int>(da / q));
    a = da % q;
  }
  return Word(std::move(digits), theta.degree());
}

Angle angle_from_word(const Word& w) {
  BigInt value = 0;
  BigInt base = 1;
  for (int e : w.digits()) {
    value = value * w.degree() + e;
    base *= w.degree();
  }
  return Angle(value, base - 1, w.degree());
}

OrbitMaximum maximal_in_orbit(const Angle& theta) {
  const int n = theta.period();
  Angle best = theta;
  Angle x = theta;
  for (int j = 1; j < n; ++j) {
    x = tau_iterate(x, 1);
    if (x > best) best = x;
  }
  return OrbitMaximum{best == theta, best};
}

std::optional<int> partition_label(const Angle& x, const Angle& theta) {
  if (x.degree() != theta.degree()) fail(ErrorKind::DegreeMismatch, "angles of different degree");
  const int d = theta.degree();
  // s = d*x - theta, compared against the integers 0..d-1.
  BigInt num = BigInt(d) * x.numerator() * theta.denominator() - theta.numerator() * x.denominator();
  BigInt den = x.denominator() * theta.denominator();
  if (num % den == 0) {
    BigInt j = num / den;
    if (j >= 0 && j <= d - 1) return std::nullopt;
  }
  if (num > 0 && num < den * (d - 1)) return static_cast<int>(num / den) + 1;
  return 0;
}

KneadingSequence kneading_sequence(const Angle& theta) {
  if (theta.is_zero()) fail(ErrorKind::ZeroAngle, "the kneading sequence of 0 is not defined");
  const int n = theta.period();
  KneadingSequence nu;
  nu.degree = theta.degree();
  Angle x = theta;
  for (int k = 1; k < n; ++k) {
    auto label = partition_label(x, theta);
    if (!label)
      fail(ErrorKind::Internal, "cut point hit at position " + std::to_string(k) + " for " + theta.to_string());
    nu.body.push_back(*label);
    x = tau_iterate(x, 1);
  }
  if (partition_label(x, theta))
    fail(ErrorKind::Internal, "no cut point at position n for " + theta.to_string());
  return nu;
}

PrimitiveRoot primitive_root(const Word& w) {
  // Smallest period of w via the prefix function; w is a proper power iff
  // that period divides |w|.
  const auto& s = w.digits();
  const std::size_t n = s.size();
  std::vector<std::size_t> pi(n, 0);
  for (std::size_t i = 1; i < n; ++i) {
    std::size_t k = pi[i - 1];
    while (k > 0 && s[i] != s[k]) k = pi[k - 1];
    if (s[i] == s[k]) ++k;
    pi[i] = k;
  }
  std::size_t period = n - pi[n - 1];
  if (n % period != 0) period = n;
  return PrimitiveRoot{w.prefix(period), static_cast<int>(n / period)};
}

std::optional<CyclicExpression> cyclic_expression(const KneadingSequence& nu) {
  const int n = nu.period();
  std::optional<CyclicExpression> found;
  for (int t = 1; t < n; ++t) {
    if (n % t != 0) continue;
    bool matches = true;
    for (int i = t; i < n - 1 && matches; ++i) matches = nu.body[static_cast<std::size_t>(i)] == nu.body[static_cast<std::size_t>(i % t)];
    if (!matches) continue;
    Word w(std::vector<int>(nu.body.begin(), nu.body.begin() + t), nu.degree);
    if (!w.is_primitive()) continue;
    if (found) fail(ErrorKind::Internal, "two cyclic expressions for " + nu.to_string());
    found = CyclicExpression{w, t, n / t};
  }
  return found;
}

std::vector<Word> primitive_words(int degree, int n) {
  check_degree(degree);
  if (n < 1) fail(ErrorKind::InvalidArgument, "word length must be positive");
  std::vector<Word> out;
  std::vector<int> digits(static_cast<std::size_t>(n), 0);
  while (true) {
    Word w(digits, degree);
    if (w.is_primitive()) out.push_back(std::move(w));
    int i = n - 1;
    while (i >= 0 && digits[static_cast<std::size_t>(i)] == degree - 1) digits[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) break;
    ++digits[static_cast<std::size_t>(i)];
  }
  return out;
}

Word special_word(int degree, int n) {
  check_degree(degree);
  if (n < 2) fail(ErrorKind::InvalidArgument, "special word needs n >= 2");
  std::vector<int> digits(static_cast<std::size_t>(n), degree - 1);
  digits.back() = degree - 2;
  return Word(std::move(digits), degree);
}

}  // namespace dynatomic
