#include "apolar/corpus.hpp"

#include <chrono>
#include <fstream>

#include "apolar/apolarity.hpp"
#include "apolar/bounds.hpp"
#include "apolar/error.hpp"
#include "apolar/ideals.hpp"
#include "apolar/movefit.hpp"

#ifndef APOLAR_CORPUS_DIR
#define APOLAR_CORPUS_DIR "corpus"
#endif

namespace apolar {

std::filesystem::path default_corpus_dir() { return APOLAR_CORPUS_DIR; }

nlohmann::json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::vector<CorpusCase> load_catalog(const std::filesystem::path& dir) {
  const nlohmann::json j = read_json_file(dir / "catalog.json");
  if (!j.is_object() || !j.contains("cases") || !j.at("cases").is_array()) throw ParseError("catalog needs a 'cases' array");
  std::vector<CorpusCase> out;
  for (const auto& c : j.at("cases")) {
    for (const auto& [key, value] : c.items()) {
      if (key != "name" && key != "command" && key != "tensor" && key != "ideal" && key != "r" && key != "horizon" &&
          key != "size" && key != "source" && key != "expect")
        throw ParseError("unknown catalog field '" + key + "'");
    }
    CorpusCase k;
    try {
      k.name = c.at("name").get<std::string>();
      k.command = c.at("command").get<std::string>();
      k.tensor = c.at("tensor").get<std::string>();
      k.ideal = c.value("ideal", "");
      k.r = c.value("r", 0L);
      k.horizon = c.value("horizon", 0);
      k.slow = c.value("size", "fast") == "slow";
      k.source = c.value("source", "");
      k.expect = c.at("expect");
    } catch (const nlohmann::json::exception& e) {
      throw ParseError("catalog entry: " + std::string(e.what()));
    }
    if (k.command != "bounds" && k.command != "search" && k.command != "verify")
      throw ParseError("catalog case '" + k.name + "' has unknown command '" + k.command + "'");
    for (const auto& other : out)
      if (other.name == k.name) throw ParseError("duplicate catalog case '" + k.name + "'");
    out.push_back(std::move(k));
  }
  return out;
}

nlohmann::json run_case_report(const CorpusCase& c, const std::filesystem::path& dir, int threads) {
  const Tensor f = tensor_from_json(read_json_file(dir / c.tensor));
  if (c.command == "bounds") return bound_report(f, threads);
  if (c.command == "search") {
    SearchConfig config;
    config.r = c.r;
    config.horizon = c.horizon;
    config.parallel_width = threads;
    return outcome_to_json(search(f, config), f.shape());
  }
  const AnyIdeal ideal = ideal_from_json(read_json_file(dir / c.ideal));
  const int horizon = c.horizon == 0 ? f.degree().total() : c.horizon;
  return verify_to_json(verify_candidate(ideal, f, Integer(c.r), horizon, threads));
}

CaseResult run_case(const CorpusCase& c, const std::filesystem::path& dir, int threads) {
  const auto start = std::chrono::steady_clock::now();
  CaseResult result{c.name, true, {}, 0, run_case_report(c, dir, threads)};
  for (const auto& [pointer, expected] : c.expect.items()) {
    const nlohmann::json::json_pointer ptr(pointer);
    if (!result.report.contains(ptr)) {
      result.mismatches.push_back(pointer + ": missing");
    } else if (result.report.at(ptr) != expected) {
      result.mismatches.push_back(pointer + ": expected " + expected.dump() + ", got " + result.report.at(ptr).dump());
    }
  }
  result.passed = result.mismatches.empty();
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace apolar
