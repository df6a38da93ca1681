#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spelect/io.hpp"
#include "spelect/oracles.hpp"

namespace spelect {

struct VerifyOptions {
  Score budget = 2;
  std::optional<WinnerModel> model;  // both models when unset
  std::optional<std::string> rule;   // overrides the RULE section
};

struct CheckResult {
  std::string problem;
  std::string model;
  std::string solver;  // yes | no | axis text
  std::string oracle;
  bool agree = false;
};

// Runs every solver that applies to the document against its oracle.
std::vector<CheckResult> verify_document(const ElectionDocument& doc, const VerifyOptions& options);

// Seeded instance mix used by `verify --batch`.
struct BatchItem {
  ElectionDocument doc;
  VerifyOptions options;
};
BatchItem batch_instance(std::uint64_t seed);

}  // namespace spelect
