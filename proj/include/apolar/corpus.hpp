#pragma once

// The shipped instance catalog and a runner that checks each case's report
// against its expected values.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace apolar {

struct CorpusCase {
  std::string name;
  std::string command;  // bounds | search | verify
  std::string tensor;   // file names relative to the corpus directory
  std::string ideal;
  long r = 0;
  int horizon = 0;
  bool slow = false;
  std::string source;
  nlohmann::json expect;  // JSON pointer -> expected value in the report
};

std::vector<CorpusCase> load_catalog(const std::filesystem::path& dir);

/// Reads a JSON document, raising ParseError on I/O or syntax errors.
nlohmann::json read_json_file(const std::filesystem::path& path);

/// The report a case's command produces.
nlohmann::json run_case_report(const CorpusCase& c, const std::filesystem::path& dir, int threads);

struct CaseResult {
  std::string name;
  bool passed = false;
  std::vector<std::string> mismatches;
  double seconds = 0;
  nlohmann::json report;
};

CaseResult run_case(const CorpusCase& c, const std::filesystem::path& dir, int threads);

/// Directory of the corpus in the source tree.
std::filesystem::path default_corpus_dir();

}  // namespace apolar
