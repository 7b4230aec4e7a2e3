#pragma once

// Run reports and the verification suites behind the command-line tool:
// graph checks against shipped expectations, negative controls, derivation
// and automorphism specs, fibration tables, and the whole-corpus run.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "enriques/autlab.hpp"
#include "enriques/derivation.hpp"
#include "enriques/fibration.hpp"
#include "enriques/vinberg.hpp"

namespace enriques {

struct RunReport {
  std::string command;
  std::vector<std::string> inputs;
  std::vector<CheckResult> checks;
  std::vector<std::string> notes;  // informational output in display order
  int exit_code() const;           // 0 when every check passes, 1 otherwise
  std::string text() const;
  std::string structured() const;  // JSON
};

struct GraphExpectation {
  std::string file;  // relative to the data directory
  std::string type;
  std::map<std::string, int> census;       // exact census when nonempty
  std::vector<std::string> census_types;   // exact set of types when nonempty
  std::vector<std::string> census_contains;
  std::optional<std::uint64_t> symmetry_order;
  bool symmetry_frozen = false;  // regression value rather than a stated one
};

struct BrokenExpectation {
  std::string file;
  std::string mutation;
};

struct Expectations {
  std::vector<GraphExpectation> graphs;
  std::vector<BrokenExpectation> broken;
};

Expectations load_expectations(const std::string& path);

// Census lines with the Kodaira fiber types of each component.
std::vector<std::string> census_lines(const CurveGraph& g, int target_rank);
std::string witness_text(const CurveGraph& g, const VinbergReport& r);

std::vector<CheckResult> graph_checks(const CurveGraph& g, const GraphExpectation& e, int ambient_rank = 10);
// A negative control passes when the graph fails the criterion with a reason.
CheckResult negative_control(const CurveGraph& g, const std::string& mutation, int ambient_rank = 10);

std::vector<CheckResult> aut_checks(const AutSpec& spec, std::uint64_t seed, int trials);
std::vector<CheckResult> extremality_checks(const std::vector<TypeFibrations>& types);
std::vector<CheckResult> conductrix_checks(const std::vector<ConductrixTable>& tables);

struct SuiteOptions {
  std::string data_dir;
  std::uint64_t seed = 1;
  int trials = 3;
  int ambient_rank = 10;
};

RunReport verify_all(const SuiteOptions& opt);

}  // namespace enriques
