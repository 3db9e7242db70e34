#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dirac/algebra.hpp"
#include "dirac/constraint_analysis.hpp"
#include "dirac/phase_space.hpp"

namespace dirac::cli
{
enum class Format
{
	text,
	json
};

struct Report
{
	std::string version;
	std::string input_digest;
	PhaseSpace ps{1};
	std::size_t m = 0;
	std::optional<Classification> classification;
	std::optional<TraceIdentity> trace_identity;
	std::optional<AlgebraReport> closure;
	/// Obstruction read off the closure report; present only when it closed.
	std::optional<Verdict> closure_verdict;
	std::optional<Verdict> verdict;
	/// Stage name -> milliseconds. Left empty unless timings were requested.
	std::vector<std::pair<std::string, double>> timings_ms;
};

/// Keys in the published order: version, input_digest, system, classification,
/// trace_identity, closure, verdict, timings_ms. Absent sections are omitted.
nlohmann::ordered_json to_json(Report const & report);
nlohmann::ordered_json to_json(Verdict const & verdict, PhaseSpace const & ps);

std::string emit_report(Report const & report, Format format);

}  // namespace dirac::cli
