#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "afr/isomorphism.hpp"

namespace afr {

/// Everything a verification step needs about one (algebra, level).
struct ContextBundle {
  std::unique_ptr<LevelContext> ctx;
  SMatrix S;
  FusionTable table;
  std::vector<SimpleCurrent> currents;
};

/// Lazily built, optionally disk-cached bundles shared by the whole suite.
class SuiteCache {
 public:
  explicit SuiteCache(std::string cache_dir = "", double s_tol = 1e-9)
      : cache_dir_(std::move(cache_dir)), s_tol_(s_tol) {}

  ContextBundle& get(AlgebraId id, int level);
  /// Build several bundles concurrently (worker pool of `jobs` threads).
  void prebuild(const std::vector<std::pair<AlgebraId, int>>& list, int jobs);

  const std::string& cache_dir() const { return cache_dir_; }

 private:
  ContextBundle& get_locked(AlgebraId id, int level);
  std::string cache_dir_;
  double s_tol_ = 1e-9;
  std::map<std::pair<AlgebraId, int>, std::unique_ptr<ContextBundle>> map_;
  std::recursive_mutex mu_;
};

/// The desk suite: every context the acceptance checks quantify over.
std::vector<std::pair<AlgebraId, int>> desk_suite();

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

struct VerifyOptions {
  int jobs = 1;
  int search_bound = 400;
};

/// Runs the full acceptance suite; one result per criterion.
std::vector<CheckResult> run_acceptance(SuiteCache& cache, const VerifyOptions& opts = {});

/// Cross-ring form of the fusion-symmetry check.
bool is_fusion_isomorphism(const FusionTable& ta, const FusionTable& tb,
                           const std::vector<int>& map);

}  // namespace afr
