#pragma once

// Verification suite: one record per claim, never aborting on a failure.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lsopkit/io.hpp"
#include "lsopkit/model.hpp"

namespace lsopkit {

class Tolerances {
 public:
  Tolerances();
  double get(const std::string& name) const;
  void set(const std::string& name, double value);
  /// "name=value"
  void apply(const std::string& assignment);
  const std::map<std::string, double>& all() const { return values_; }

 private:
  std::map<std::string, double> values_;
};

struct ClaimRecord {
  std::string id;
  std::string statement;
  std::string convention;
  Json residual;           ///< number, or exact text such as "0"
  Json tolerance;          ///< number, or "exact"
  bool pass = false;
  std::string detail;
};

struct VerifyConfig {
  std::uint64_t seed = 1;
  Mode mode = Mode::Double;
  Tolerances tol;
  int gauges = 20;
  std::vector<std::string> only;  ///< claim ids to run; empty runs all
};

struct VerificationReport {
  Json environment;
  std::vector<ClaimRecord> claims;

  bool all_pass() const;
  const ClaimRecord* find(const std::string& id) const;
  Json to_json() const;
};

/// Claim ids in report order.
const std::vector<std::string>& claim_ids();

VerificationReport run_verification(const DiscreteMeasure<Rational>& measure,
                                    const VerifyConfig& cfg);

}  // namespace lsopkit
