#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "takiff/serialize.hpp"

namespace takiff {

struct Report {
  std::string suite;
  std::string operation;
  bool pass = true;
  Json witness;  // null on success; machine-readable evidence on failure
  double millis = 0;
};

std::vector<std::string> suite_names();  // excludes "all"

/// Runs one named suite, or every suite for "all". Reports are ordered by
/// suite name, then by operation order within the suite. Throws
/// ValidationError for an unknown name.
std::vector<Report> run_suite(const std::string& name, std::uint64_t seed);

// Timing is left out so that equal inputs give byte-identical JSON.
Json reports_to_json(const std::vector<Report>& reports);
std::string reports_to_human(const std::vector<Report>& reports);

}  // namespace takiff
