// Acceptance suite runner: one pass/fail line per criterion, nonzero exit on
// any failure.

#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "afr/verify.hpp"

int main(int argc, char** argv) {
  afr::VerifyOptions opts;
  if (const char* env = std::getenv("AFR_JOBS")) opts.jobs = std::atoi(env);
  for (int i = 1; i < argc; ++i)
    if (std::strncmp(argv[i], "--jobs=", 7) == 0) opts.jobs = std::atoi(argv[i] + 7);

  const char* cache_env = std::getenv("AFR_CACHE_DIR");
  afr::SuiteCache cache(cache_env ? cache_env : "");

  const auto results = afr::run_acceptance(cache, opts);
  bool all = true;
  for (const auto& r : results) {
    std::printf("[%s] criterion %s (%.1f s): %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                r.seconds, r.detail.c_str());
    all = all && r.pass;
  }
  std::printf("%s\n", all ? "acceptance: all criteria passed"
                          : "acceptance: at least one criterion failed");
  return all ? 0 : 1;
}
