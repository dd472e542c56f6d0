#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "w11/differential.hpp"
#include "w11/homology.hpp"

namespace w11 {

struct ComputeOptions {
  BasisMode mode = BasisMode::Complete;
  bool keep_k = false;  // compute on B instead of B/K
  int threads = 0;      // 0: W11_THREADS or 1
  EquivariantMethod method = EquivariantMethod::Invariants;
};

/// Complex the cohomology is computed on; throws if d∘d ≠ 0.
GradedComplex prepare_complex(int g, int n, const ComputeOptions& options);
CohomologyResult compute_cohomology(int g, int n, const ComputeOptions& options);

/// (g, n) with E(g, n) = 4 and n >= 1.
const std::vector<std::pair<int, int>>& excess_four_cases();

struct SuiteResult {
  std::string name;
  bool passed = true;
  std::vector<std::string> details;

  void check(bool ok, std::string line);
};

const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);

struct SuiteOptions {
  /// Cases to run on; empty means the suite's default set.
  std::vector<std::pair<int, int>> cases;
  ComputeOptions compute;
  std::uint64_t seed = 20240611;
  int trials = 200;
};

/// Runs one named suite: d2, example33, distributivity, vanishing, kquotient,
/// euler, oracle, or properties.
SuiteResult run_suite(const std::string& name, const SuiteOptions& options);

// Individual checks, also used by the acceptance binary.
SuiteResult suite_d2(const std::vector<std::pair<int, int>>& cases, BasisMode mode, int threads);
SuiteResult suite_example33();
SuiteResult suite_distributivity(std::uint64_t seed, int trials);
SuiteResult suite_vanishing();
SuiteResult suite_kquotient(const std::vector<std::pair<int, int>>& cases, int threads);
SuiteResult suite_euler(const std::vector<std::pair<int, int>>& cases, int threads);
SuiteResult suite_oracle(const std::vector<std::pair<int, int>>& cases, BasisMode mode);
SuiteResult suite_canonical_idempotence(std::uint64_t seed, int trials);
SuiteResult suite_equivariance(std::uint64_t seed, int trials);
SuiteResult suite_excess_additivity(std::uint64_t seed, int trials);
SuiteResult suite_rank_agreement(std::uint64_t seed, int trials);

/// Random generator assembled from catalog components with distinct leg
/// labels; legs not used by a component become ω-legs.
Generator random_catalog_generator(std::mt19937_64& rng, int n);

}  // namespace w11
