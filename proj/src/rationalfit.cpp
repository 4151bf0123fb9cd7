#include "hypercount/rationalfit.hpp"

#include <set>
#include <sstream>

#include <json.hpp>

#include "hypercount/errors.hpp"

namespace hypercount {

namespace {

std::string rational_string(const BigRational& r) {
  if (boost::multiprecision::denominator(r) == 1)
    return boost::multiprecision::numerator(r).str();
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

}  // namespace

ExactPolynomial::ExactPolynomial(std::vector<BigRational> coeffs)
    : coeff_(std::move(coeffs)) {
  trim();
}

void ExactPolynomial::trim() {
  while (!coeff_.empty() && coeff_.back() == 0) coeff_.pop_back();
}

BigRational ExactPolynomial::coefficient(int power) const {
  if (power < 0 || power >= static_cast<int>(coeff_.size())) return 0;
  return coeff_[power];
}

BigRational ExactPolynomial::evaluate(const BigRational& x) const {
  BigRational acc = 0;
  for (std::size_t i = coeff_.size(); i-- > 0;) acc = acc * x + coeff_[i];
  return acc;
}

ExactPolynomial& ExactPolynomial::operator+=(const ExactPolynomial& o) {
  if (o.coeff_.size() > coeff_.size()) coeff_.resize(o.coeff_.size(), BigRational(0));
  for (std::size_t i = 0; i < o.coeff_.size(); ++i) coeff_[i] += o.coeff_[i];
  trim();
  return *this;
}

ExactPolynomial& ExactPolynomial::scale(const BigRational& c) {
  if (c == 0) {
    coeff_.clear();
    return *this;
  }
  for (auto& a : coeff_) a *= c;
  return *this;
}

ExactPolynomial& ExactPolynomial::shift_root(const BigInt& root) {
  coeff_.insert(coeff_.begin(), BigRational(0));
  for (std::size_t i = 0; i + 1 < coeff_.size(); ++i)
    coeff_[i] -= BigRational(root) * coeff_[i + 1];
  trim();
  return *this;
}

std::vector<std::string> ExactPolynomial::coefficient_strings() const {
  std::vector<std::string> out;
  out.reserve(coeff_.size());
  for (const auto& c : coeff_) out.push_back(rational_string(c));
  return out;
}

ExactPolynomial lagrange_fit(std::span<const std::pair<BigInt, BigInt>> points) {
  if (points.empty()) throw Error("interpolation needs at least one point");
  std::set<BigInt> xs;
  for (const auto& [x, y] : points)
    if (!xs.insert(x).second)
      throw DuplicateAbscissa("repeated x value " + x.str());
  ExactPolynomial result;
  for (std::size_t i = 0; i < points.size(); ++i) {
    // Basis polynomial prod_{j != i} (x - x_j) / (x_i - x_j), scaled by y_i.
    ExactPolynomial basis(std::vector<BigRational>{BigRational(1)});
    BigInt denom = 1;
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (j == i) continue;
      basis.shift_root(points[j].first);
      denom *= points[i].first - points[j].first;
    }
    basis.scale(BigRational(points[i].second, denom));
    result += basis;
  }
  return result;
}

FitReport reduced_fit(std::span<const CountRecord> records) {
  if (records.size() < 12)
    throw TooFewPoints("need at least 12 records (11 to fit, 1 held out), got " +
                       std::to_string(records.size()));
  std::set<std::uint32_t> qs;
  for (const auto& r : records) {
    if (!qs.insert(r.q).second)
      throw DuplicateAbscissa("repeated q value " + std::to_string(r.q));
    BigInt q2 = BigInt(r.q) * r.q;
    if (r.count % q2 != 0)
      throw DivisibilityViolation("count at q = " + std::to_string(r.q) +
                                  " is not divisible by q^2");
  }
  // Reduced values F~(q) = (count - q^13) / q^2.
  auto reduced = [](const CountRecord& r) {
    BigInt q13 = 1;
    for (int i = 0; i < 13; ++i) q13 *= r.q;
    return (r.count - q13) / (BigInt(r.q) * r.q);
  };
  std::vector<std::pair<BigInt, BigInt>> fit_points;
  FitReport report;
  for (std::size_t i = 0; i < 11; ++i) {
    fit_points.emplace_back(BigInt(records[i].q), reduced(records[i]));
    report.samples.emplace_back(records[i].q, records[i].count);
  }
  report.f_tilde = lagrange_fit(fit_points);
  for (std::size_t i = 11; i < records.size(); ++i) {
    const auto& r = records[i];
    HeldOutCheck check;
    check.q = r.q;
    check.observed = r.count;
    BigInt q13 = 1;
    for (int j = 0; j < 13; ++j) q13 *= r.q;
    check.predicted = BigRational(q13) + BigRational(BigInt(r.q) * r.q) *
                                             report.f_tilde.evaluate(
                                                 BigRational(BigInt(r.q)));
    check.match = check.predicted == BigRational(check.observed);
    if (!check.match) report.non_polynomial_witness = true;
    report.held_out.push_back(std::move(check));
  }
  return report;
}

std::vector<AuditEntry> divisibility_audit(std::span<const CountRecord> records) {
  std::vector<AuditEntry> out;
  out.reserve(records.size());
  for (const auto& r : records) {
    BigInt q2 = BigInt(r.q) * r.q;
    out.push_back({r.q, r.count, r.count % q2 == 0});
  }
  return out;
}

std::string fit_report_to_json(const FitReport& report, int indent) {
  nlohmann::ordered_json j;
  j["samples"] = nlohmann::ordered_json::array();
  for (const auto& [q, count] : report.samples)
    j["samples"].push_back({{"q", q}, {"count", count.str()}});
  j["f_tilde"] = report.f_tilde.coefficient_strings();
  j["held_out"] = nlohmann::ordered_json::array();
  for (const auto& h : report.held_out)
    j["held_out"].push_back({{"q", h.q},
                             {"predicted", rational_string(h.predicted)},
                             {"observed", h.observed.str()},
                             {"match", h.match}});
  j["verdict"] = report.verdict();
  return j.dump(indent);
}

}  // namespace hypercount
