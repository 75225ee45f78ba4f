#include "ccg/rational.hpp"

#include <cctype>

#include "ccg/errors.hpp"

namespace ccg {

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const auto num = text.substr(0, slash);
  const auto den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den[0] == '-' || den[0] == '+') {
    throw Error(ErrorCode::ParseError, "not a rational: '" + std::string(text) + "'");
  }
  mpz_class n(std::string(num[0] == '+' ? num.substr(1) : num));
  mpz_class d{std::string(den)};
  if (d == 0) throw Error(ErrorCode::ParseError, "zero denominator: '" + std::string(text) + "'");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& value) {
  Rational v = value;
  v.canonicalize();
  return v.get_str();
}

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NegativeCost: return "NegativeCost";
    case ErrorCode::DecreasingCost: return "DecreasingCost";
    case ErrorCode::EmptyStrategySet: return "EmptyStrategySet";
    case ErrorCode::UnknownResource: return "UnknownResource";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::InvalidPartition: return "InvalidPartition";
    case ErrorCode::InvalidProfile: return "InvalidProfile";
    case ErrorCode::InvalidBlock: return "InvalidBlock";
    case ErrorCode::MismatchedResources: return "MismatchedResources";
    case ErrorCode::UnequalTotals: return "UnequalTotals";
    case ErrorCode::SizeLimitExceeded: return "SizeLimitExceeded";
    case ErrorCode::InvalidVector: return "InvalidVector";
    case ErrorCode::BlockLargerThanResourceSet: return "BlockLargerThanResourceSet";
    case ErrorCode::Proposition1Violated: return "Proposition1Violated";
    case ErrorCode::Lemma1Violated: return "Lemma1Violated";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::RearrangementInfeasible: return "RearrangementInfeasible";
    case ErrorCode::LoopBoundExceeded: return "LoopBoundExceeded";
    case ErrorCode::NotNashAtExit: return "NotNashAtExit";
    case ErrorCode::InvalidIndices: return "InvalidIndices";
    case ErrorCode::Theorem2Violated: return "Theorem2Violated";
    case ErrorCode::CoverageMismatch: return "CoverageMismatch";
    case ErrorCode::InvalidCosts: return "InvalidCosts";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NotTwoBlocks: return "NotTwoBlocks";
    case ErrorCode::FixtureFailure: return "FixtureFailure";
  }
  return "Unknown";
}

}  // namespace ccg
