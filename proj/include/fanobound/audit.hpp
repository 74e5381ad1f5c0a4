#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace fanobound {

enum class ClaimStatus { confirmed, stronger, discrepancy };

const char* to_string(ClaimStatus s);

/// One published claim checked against the engine.
struct AuditEntry {
  std::string location;
  std::string paper_claim;
  std::string engine_result;
  ClaimStatus status = ClaimStatus::confirmed;
};

using AuditReport = std::vector<AuditEntry>;

nlohmann::json to_json(const AuditReport& report);

/// Every claim of the replay table, in document order.
AuditReport run_audit();

/// Human-readable one-line-per-entry summary.
std::string summarize(const AuditReport& report);

}  // namespace fanobound
