#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ccg {

enum class ErrorCode {
  NegativeCost,
  DecreasingCost,
  EmptyStrategySet,
  UnknownResource,
  LengthMismatch,
  InvalidPartition,
  InvalidProfile,
  InvalidBlock,
  MismatchedResources,
  UnequalTotals,
  SizeLimitExceeded,
  InvalidVector,
  BlockLargerThanResourceSet,
  Proposition1Violated,
  Lemma1Violated,
  PreconditionViolated,
  RearrangementInfeasible,
  LoopBoundExceeded,
  NotNashAtExit,
  InvalidIndices,
  Theorem2Violated,
  CoverageMismatch,
  InvalidCosts,
  InvalidParams,
  ParseError,
  NotTwoBlocks,
  FixtureFailure,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ccg
