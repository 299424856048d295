#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "mokkt/calculus.hpp"
#include "mokkt/catalog.hpp"
#include "mokkt/cq.hpp"
#include "mokkt/gconvex.hpp"
#include "mokkt/kkt.hpp"
#include "mokkt/pareto.hpp"
#include "mokkt/tolerances.hpp"

namespace mokkt {

inline constexpr const char* kToolName = "mokkt";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kReportSchema = "mokkt-report/1";

// Extended reals in reports: finite doubles stay numbers, +/-inf and NaN
// become the strings "+inf", "-inf", "nan" (JSON has no nonfinite numbers).
nlohmann::json json_extended(double v);

nlohmann::json to_json(const Tolerances& t);
nlohmann::json to_json(const SecondDeriv& d);
nlohmann::json to_json(const MfcqResult& r);
nlohmann::json to_json(const SocqDirectionResult& r);
nlohmann::json to_json(const CqReport& r);
nlohmann::json to_json(const MultiplierCertificate& c);
nlohmann::json to_json(const DirectionOutcome& o);
nlohmann::json to_json(const PointCertification& c);
nlohmann::json to_json(const OracleVerdict& v);
nlohmann::json to_json(const RestrictionCheck& r);
nlohmann::json to_json(const LucSchaibleCheck& r);
nlohmann::json to_json(const ProbeWitness& w);
nlohmann::json to_json(const ProbeResult& r);
nlohmann::json to_json(const Theorem3Verdict& v);

// Top-level report envelope. Reports are fully deterministic for a fixed
// seed: object keys serialize sorted and no timestamp is embedded.
nlohmann::json make_report(const std::string& command, std::uint64_t seed,
                           const Tolerances& tol, const Problem& problem,
                           nlohmann::json result, int exit_code);

// Exit codes are a pure function of the result payload; the CLI uses this
// and test harnesses can re-derive codes from --json output.
int derive_exit_code(const std::string& command, const nlohmann::json& result);

} // namespace mokkt
