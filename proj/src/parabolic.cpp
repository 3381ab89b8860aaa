#include "dynatomic/parabolic.hpp"

namespace dynatomic {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::PrimitiveCertified: return "PrimitiveCertified";
    case Verdict::SatelliteCandidate: return "SatelliteCandidate";
    case Verdict::SpecialSatellite: return "SpecialSatellite";
  }
  return "Unknown";
}

Word itinerary_of_angle(const Angle& t, const Angle& theta, std::size_t length) {
  if (theta.is_zero()) fail(ErrorKind::ZeroAngle, "the partition for theta = 0 degenerates");
  if (length == 0) fail(ErrorKind::InvalidArgument, "itinerary length must be positive");
  std::vector<int> digits;
  digits.reserve(length);
  Angle x = t;
  for (std::size_t j = 0; j < length; ++j) {
    auto label = partition_label(x, theta);
    if (!label)
      fail(ErrorKind::BoundaryHit,
           "iterate " + std::to_string(j) + " of " + t.to_string() + " is a cut point for " + theta.to_string());
    digits.push_back(*label);
    x = tau_iterate(x, 1);
  }
  return Word(std::move(digits), theta.degree());
}

bool is_special_angle(const Angle& theta) {
  if (!theta.is_periodic()) return false;
  const int n = theta.period();
  return n >= 2 && d_expansion(theta) == special_word(theta.degree(), n);
}

SpecialData special_data(int degree, int n) {
  Angle theta = angle_from_word(special_word(degree, n));
  return SpecialData{theta, tau_iterate(theta, 1)};
}

namespace {

struct CriterionData {
  KneadingSequence nu;
  std::optional<CyclicExpression> expr;
  int last_digit = 0;
};

CriterionData criterion_data(const Angle& theta) {
  CriterionData data{kneading_sequence(theta), std::nullopt, d_expansion(theta).back()};
  data.expr = cyclic_expression(data.nu);
  return data;
}

}  // namespace

bool satisfies_satellite_criterion(const Angle& theta) {
  if (theta.period() < 2) fail(ErrorKind::PeriodOne, theta.to_string() + " has period 1");
  CriterionData data = criterion_data(theta);
  if (!data.expr) return false;
  const int nu_t = data.expr->w.back();
  const bool digit_ok = data.last_digit == nu_t || data.last_digit == nu_t - 1;
  if (!digit_ok) return false;
  if (maximal_in_orbit(theta).is_max)
    return data.last_digit == nu_t - 1 && nu_t - 1 >= 0 && nu_t - 1 <= theta.degree() - 2;
  return true;
}

ParabolicClass classify_angle(const Angle& theta) {
  if (theta.is_zero()) fail(ErrorKind::ZeroAngle, "classification of angle 0");
  const int n = theta.period();
  if (n < 2) fail(ErrorKind::PeriodOne, theta.to_string() + " has period 1");
  OrbitMaximum om = maximal_in_orbit(theta);
  if (!om.is_max)
    fail(ErrorKind::NotMaximal, theta.to_string() + " is not maximal in its orbit; maximum is " + om.max_angle.to_string());

  CriterionData data = criterion_data(theta);
  ParabolicClass out{Verdict::PrimitiveCertified, theta, data.nu, data.expr, std::nullopt};
  if (is_special_angle(theta)) {
    out.verdict = Verdict::SpecialSatellite;
    // eta = d*theta - d + 1, which is tau(theta) on the circle.
    out.eta = tau_iterate(theta, 1);
    return out;
  }
  if (!data.expr) return out;
  const int nu_t = data.expr->w.back();
  const int d = theta.degree();
  if (nu_t - 1 < 0 || nu_t - 1 > d - 2 || data.last_digit != nu_t - 1) return out;
  out.verdict = Verdict::SatelliteCandidate;
  return out;
}

BetaFamily beta_family(const Angle& theta) {
  ParabolicClass cls = classify_angle(theta);
  if (cls.verdict == Verdict::SpecialSatellite)
    fail(ErrorKind::SpecialAngle, theta.to_string() + " is the special angle; it has no beta family");
  if (cls.verdict != Verdict::SatelliteCandidate)
    fail(ErrorKind::NotCandidate, theta.to_string() + " is primitive-certified; beta family undefined");

  const int d = theta.degree();
  const int n = theta.period();
  const CyclicExpression& ce = *cls.witness;
  const Word expansion = d_expansion(theta);
  const int nu_t = ce.w.back();

  BetaFamily family{theta, ce, {}};
  auto check_period = [&](const Angle& beta, int index) {
    if (beta.period() != n)
      fail(ErrorKind::PeriodDrop, "beta_" + std::to_string(index) + " = " + beta.to_string() + " has period " +
                                      std::to_string(beta.period()) + ", expected " + std::to_string(n));
  };

  for (int i = 2; i <= nu_t; ++i) {
    const int j = nu_t - i;
    Angle beta = angle_from_word(expansion.with_last(j));
    check_period(beta, j);
    if (classify_angle(beta).verdict != Verdict::PrimitiveCertified)
      fail(ErrorKind::Internal, "beta_" + std::to_string(j) + " = " + beta.to_string() + " is not primitive-certified");
    family.betas.push_back(BetaAngle{j, beta, j, j + 1});
  }

  // beta_{-1}: w^{s-1} nu_1 ... (nu_{t-1} - 1)(d-1) for t >= 2 and
  // k...k(k-1)(d-1) for t = 1 (k = nu_1). Both are the word of theta with
  // last digit "-1" after a base-d borrow; the borrow form also covers
  // nu_{t-1} = 0, where the two-case expression has no meaning.
  std::vector<int> digits = expansion.digits();
  const int penultimate = digits[static_cast<std::size_t>(n - 2)];
  if (penultimate >= 1) {
    digits[static_cast<std::size_t>(n - 2)] = penultimate - 1;
    digits.back() = d - 1;
  } else {
    // Subtract 1 from the prefix nu_1..nu_{n-1} read in base d.
    int pos = n - 2;
    while (pos >= 0 && digits[static_cast<std::size_t>(pos)] == 0) digits[static_cast<std::size_t>(pos--)] = d - 1;
    if (pos < 0) fail(ErrorKind::Internal, "beta_{-1} borrow underflow for " + theta.to_string());
    --digits[static_cast<std::size_t>(pos)];
    digits.back() = d - 1;
  }
  Angle beta_minus = angle_from_word(Word(std::move(digits), d));
  check_period(beta_minus, -1);
  if (kneading_sequence(beta_minus).body != cls.kneading.body)
    fail(ErrorKind::Internal, "beta_{-1} = " + beta_minus.to_string() + " does not share the kneading sequence of " +
                                  theta.to_string());
  if (satisfies_satellite_criterion(beta_minus))
    fail(ErrorKind::Internal, "beta_{-1} = " + beta_minus.to_string() + " is not primitive-certified");
  family.betas.push_back(BetaAngle{-1, beta_minus, d - 1, 0});
  return family;
}

}  // namespace dynatomic
