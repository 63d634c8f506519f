// Command-line front end: one JSON document per invocation on stdout (or -o),
// errors as JSON on stderr.
//
// Exit codes: 0 success, 1 internal error, 2 parse error, 3 precondition
// failure, 4 search budget exhausted, 5 corpus case failed.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "apolar/bounds.hpp"
#include "apolar/corpus.hpp"
#include "apolar/error.hpp"
#include "apolar/ideals.hpp"
#include "apolar/macaulay.hpp"
#include "apolar/movefit.hpp"

namespace {

using nlohmann::json;
using namespace apolar;

enum Exit { Ok = 0, Internal = 1, Parse = 2, Precondition = 3, Budget = 4, CaseFailed = 5 };

int error_exit(int code, const std::string& kind, const std::string& message) {
  std::cerr << json{{"error", {{"kind", kind}, {"message", message}, {"exit_code", code}}}}.dump() << "\n";
  return code;
}

int default_jobs() {
  if (const char* env = std::getenv("APOLAR_JOBS")) {
    try {
      return std::stoi(env);
    } catch (const std::exception&) {
      throw ParseError("APOLAR_JOBS must be an integer");
    }
  }
  return 0;
}

void emit(const json& doc, const std::string& output) {
  if (output.empty()) {
    std::cout << doc.dump(2) << "\n";
    return;
  }
  std::ofstream out(output);
  if (!out) throw ParseError("cannot write " + output);
  out << doc.dump(2) << "\n";
}

std::vector<int> parse_degree_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ParseError("bad degree list '" + text + "'");
    }
  }
  return out;
}

json macaulay_json(const MacaulayDecomposition& dec) {
  json coeffs = json::array();
  for (long a : dec.coefficients) coeffs.push_back(a);
  return {{"r", integer_to_json(dec.r)},
          {"d", dec.d},
          {"coefficients", coeffs},
          {"exponent", integer_to_json(macaulay_exponent(dec.r, dec.d))}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Border-rank bounds and certificates via border apolarity"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string output;
  int jobs = -1;
  app.add_option("-o,--output", output, "Write the JSON report to this file");
  app.add_option("-j,--jobs", jobs, "Worker threads (default: APOLAR_JOBS or all cores)");

  auto* bounds = app.add_subcommand("bounds", "Lower and upper border-rank bounds of a tensor");
  std::string bounds_tensor;
  bounds->add_option("tensor", bounds_tensor, "Tensor JSON file")->required();

  auto* search_cmd = app.add_subcommand("search", "Move-fit search for a monomial tensor");
  std::string search_tensor;
  long search_r = 0;
  int search_horizon = 0;
  bool no_symmetry = false;
  bool growth_prune = false;
  std::uint64_t budget = 0;
  search_cmd->add_option("tensor", search_tensor, "Monomial tensor JSON file")->required();
  search_cmd->add_option("--r", search_r, "Candidate border rank")->required();
  search_cmd->add_option("--horizon", search_horizon, "Largest total degree checked (default |L|)");
  search_cmd->add_flag("--no-symmetry", no_symmetry, "Disable symmetry pruning");
  search_cmd->add_flag("--growth-prune", growth_prune, "Enable Lex-bar growth pruning");
  search_cmd->add_option("--budget", budget, "Maximum number of search nodes (0: unlimited)");

  auto* verify = app.add_subcommand("verify", "Check an ideal against the move-fit conditions");
  std::string verify_ideal;
  std::string verify_tensor;
  long verify_r = 0;
  int verify_horizon = 0;
  verify->add_option("ideal", verify_ideal, "Ideal JSON file")->required();
  verify->add_option("tensor", verify_tensor, "Tensor JSON file")->required();
  verify->add_option("--r", verify_r, "Target rank")->required();
  verify->add_option("--horizon", verify_horizon, "Largest total degree checked (default |L|)");

  auto* macaulay = app.add_subcommand("macaulay", "Macaulay decompositions, lex-segments and Lex-bar growth");
  macaulay->require_subcommand(1);
  auto* mac_exp = macaulay->add_subcommand("exponent", "Macaulay coefficients and exponent r^<d>");
  std::string mac_r;
  int mac_d = 1;
  mac_exp->add_option("--r", mac_r, "Codimension")->required();
  mac_exp->add_option("--d", mac_d, "Degree")->required();
  auto* mac_seg = macaulay->add_subcommand("segment", "Lex-segment of codimension r in S_d");
  int seg_n = 1;
  int seg_d = 0;
  std::string seg_r;
  mac_seg->add_option("--n", seg_n, "Number of variables minus one")->required();
  mac_seg->add_option("--d", seg_d, "Degree")->required();
  mac_seg->add_option("--r", seg_r, "Codimension")->required();
  auto* mac_bar = macaulay->add_subcommand("lexbar", "Lex-bar profile and growth");
  std::string bar_degrees;
  int bar_n = 1;
  std::string bar_r;
  mac_bar->add_option("--degrees", bar_degrees, "Comma-separated ascending degrees")->required();
  mac_bar->add_option("--n", bar_n, "Number of variables minus one")->required();
  mac_bar->add_option("--r", bar_r, "Total codimension")->required();

  auto* corpus = app.add_subcommand("corpus", "Shipped instances");
  corpus->require_subcommand(1);
  std::string corpus_dir = default_corpus_dir().string();
  bool include_slow = false;
  corpus->add_option("--dir", corpus_dir, "Corpus directory");
  corpus->add_flag("--slow", include_slow, "Include slow cases");
  auto* corpus_list = corpus->add_subcommand("list", "List cases");
  std::string list_filter;
  corpus_list->add_option("filter", list_filter, "Substring of case names");
  auto* corpus_run = corpus->add_subcommand("run", "Run cases and compare with expectations");
  std::vector<std::string> run_names;
  corpus_run->add_option("names", run_names, "Case names, or 'all'");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return error_exit(Parse, "parse", e.what());
  }

  try {
    const int threads = jobs >= 0 ? jobs : default_jobs();
    if (*bounds) {
      const Tensor f = tensor_from_json(read_json_file(bounds_tensor));
      emit(bound_report(f, threads), output);
      return Ok;
    }
    if (*search_cmd) {
      const Tensor f = tensor_from_json(read_json_file(search_tensor));
      SearchConfig config;
      config.r = search_r;
      config.horizon = search_horizon;
      config.symmetry_pruning = !no_symmetry;
      config.growth_pruning = growth_prune;
      config.parallel_width = threads;
      if (budget > 0) config.node_budget = budget;
      const SearchOutcome outcome = search(f, config);
      emit(outcome_to_json(outcome, f.shape()), output);
      if (outcome.status == SearchStatus::BudgetExceeded)
        return error_exit(Budget, "budget", "node budget exhausted after " + std::to_string(outcome.stats.nodes) + " nodes");
      return Ok;
    }
    if (*verify) {
      const AnyIdeal ideal = ideal_from_json(read_json_file(verify_ideal));
      const Tensor f = tensor_from_json(read_json_file(verify_tensor));
      const int horizon = verify_horizon == 0 ? f.degree().total() : verify_horizon;
      emit(verify_to_json(verify_candidate(ideal, f, Integer(verify_r), horizon, threads)), output);
      return Ok;
    }
    if (*macaulay) {
      auto big = [](const std::string& s) {
        Integer n;
        if (n.set_str(s, 10) != 0) throw ParseError("not an integer: '" + s + "'");
        return n;
      };
      if (*mac_exp) {
        emit(macaulay_json(macaulay_coefficients(big(mac_r), mac_d)), output);
      } else if (*mac_seg) {
        const FactorShape shape = FactorShape::with_points({seg_n});
        json list = json::array();
        for (const auto& m : lex_segment(seg_n, seg_d, big(seg_r))) list.push_back(format_monomial(shape, m));
        emit({{"n", seg_n}, {"d", seg_d}, {"r", integer_to_json(big(seg_r))}, {"monomials", list}}, output);
      } else {
        const LexBarProfile p = lexbar_profile(parse_degree_list(bar_degrees), bar_n, big(bar_r));
        json codims = json::array();
        for (const auto& c : p.codims) codims.push_back(integer_to_json(c));
        emit({{"degrees", p.degrees}, {"n", p.n}, {"r", integer_to_json(big(bar_r))}, {"codims", codims},
              {"growth", integer_to_json(p.growth)}},
             output);
      }
      return Ok;
    }
    if (*corpus) {
      const auto cases = load_catalog(corpus_dir);
      if (*corpus_list) {
        json list = json::array();
        for (const auto& c : cases) {
          if (!list_filter.empty() && c.name.find(list_filter) == std::string::npos) continue;
          list.push_back({{"name", c.name},
                          {"command", c.command},
                          {"tensor", c.tensor},
                          {"ideal", c.ideal.empty() ? json(nullptr) : json(c.ideal)},
                          {"r", c.r},
                          {"size", c.slow ? "slow" : "fast"},
                          {"source", c.source},
                          {"expect", c.expect}});
        }
        emit({{"cases", list}}, output);
        return Ok;
      }
      const bool all = run_names.empty() || (run_names.size() == 1 && run_names[0] == "all");
      json results = json::array();
      bool every = true;
      std::size_t matched = 0;
      for (const auto& c : cases) {
        const bool named = std::find(run_names.begin(), run_names.end(), c.name) != run_names.end();
        if (!(all ? (include_slow || !c.slow) : named)) continue;
        ++matched;
        const CaseResult r = run_case(c, corpus_dir, threads);
        every = every && r.passed;
        results.push_back({{"name", r.name}, {"passed", r.passed}, {"mismatches", r.mismatches}, {"seconds", r.seconds}});
      }
      if (!all && matched != run_names.size()) throw PreconditionError("unknown corpus case name");
      emit({{"passed", every}, {"results", results}}, output);
      if (!every) return error_exit(CaseFailed, "corpus-case-failed", "at least one corpus case did not match its expectation");
      return Ok;
    }
  } catch (const ParseError& e) {
    return error_exit(Parse, "parse", e.what());
  } catch (const DimensionMismatch& e) {
    return error_exit(Precondition, "dimension-mismatch", e.what());
  } catch (const UnsupportedShape& e) {
    return error_exit(Precondition, "unsupported-shape", e.what());
  } catch (const PreconditionError& e) {
    return error_exit(Precondition, "precondition", e.what());
  } catch (const std::exception& e) {
    return error_exit(Internal, "internal", e.what());
  }
  return Internal;
}
