#pragma once

// The batch experiment suites behind `experiment NAME`. Each run is fully
// determined by its config (the seed fixes all sampling) and returns a JSON
// report embedding the config, tool version, and coding-table version.

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "pts/hilbert.hpp"

namespace pts {

inline constexpr const char* kToolVersion = "1.0.0";

struct ExperimentConfig {
  std::uint64_t seed = 20240901;
  int atoms = 2;
  int reserve = 2;
  int depth = 3;
  int samples = 500;
  std::uint64_t budget = 50'000'000;
  std::string theory = "q";
};

// name in {classical-agreement, maxiconsistent, local-soundness,
// prf-crosscheck, numeral-decision}; throws std::invalid_argument otherwise.
// The report always carries a boolean "pass".
nlohmann::ordered_json run_experiment(const std::string& name, const ExperimentConfig& cfg);

// Fixed corpus of checker-accepted Q-proofs (lengths 1-8, covering theory
// axioms, logical axioms, MP, and Gen), shared by the prf-crosscheck
// experiment and the test suite.
std::vector<Proof> q_proof_corpus();

}  // namespace pts
