#include <doctest.h>

#include <fstream>
#include <set>

#include "apolar/apolarity.hpp"
#include "apolar/corpus.hpp"
#include "apolar/error.hpp"
#include "apolar/ideals.hpp"

using namespace apolar;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const char* name) {
  const fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write_catalog(const fs::path& dir, const nlohmann::json& cases) {
  nlohmann::json j;
  j["cases"] = cases;
  std::ofstream(dir / "catalog.json") << j.dump();
}

}  // namespace

TEST_CASE("every corpus file round-trips") {
  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(default_corpus_dir())) {
    const std::string name = entry.path().filename().string();
    if (name == "catalog.json") continue;
    CAPTURE(name);
    const nlohmann::json j = read_json_file(entry.path());
    if (j.contains("degree")) {
      const Tensor f = tensor_from_json(j);
      const nlohmann::json printed = tensor_to_json(f);
      const Tensor again = tensor_from_json(nlohmann::json::parse(printed.dump()));
      CHECK(again == f);
      CHECK(tensor_to_json(again) == printed);
    } else {
      const AnyIdeal ideal = ideal_from_json(j);
      const nlohmann::json printed = ideal_to_json(ideal);
      const AnyIdeal again = ideal_from_json(nlohmann::json::parse(printed.dump()));
      CHECK(ideal_to_json(again) == printed);
    }
    ++files;
  }
  CHECK(files >= 30);
}

TEST_CASE("catalog contents") {
  const auto cases = load_catalog(default_corpus_dir());
  std::set<std::string> names;
  for (const auto& c : cases) {
    CAPTURE(c.name);
    CHECK(names.insert(c.name).second);
    CHECK(fs::exists(default_corpus_dir() / c.tensor));
    if (c.command == "verify") CHECK(fs::exists(default_corpus_dir() / c.ideal));
    CHECK(c.expect.is_object());
    CHECK_FALSE(c.expect.empty());
  }

  auto find = [&](const std::string& name) -> const CorpusCase& {
    for (const auto& c : cases)
      if (c.name == name) return c;
    FAIL("missing case " << name);
    throw std::logic_error("unreachable");
  };
  const CorpusCase& big = find("search-33111-r31");
  CHECK(big.slow);
  CHECK(tensor_from_json(read_json_file(default_corpus_dir() / big.tensor)).support_monomial().exponents() ==
        std::vector<int>{3, 3, 1, 1, 1});
  const CorpusCase& br3 = find("verify-border-rank-3");
  CHECK_FALSE(br3.slow);
  CHECK(br3.expect.at("/passed") == true);
  CHECK(br3.expect.at("/minimal_generator_total") == 28);
  CHECK(find("search-11111-r15").expect.at("/status") == "Exhausted");
  CHECK(find("search-22111-r23").expect.at("/status") == "Exhausted");
}

TEST_CASE("catalog errors") {
  const fs::path dir = scratch_dir("apolar-catalog-test");
  const nlohmann::json good{{"name", "x"}, {"command", "bounds"}, {"tensor", "t.json"}, {"expect", {{"/exact", 2}}}};
  write_catalog(dir, nlohmann::json::array({good}));
  CHECK(load_catalog(dir).size() == 1);

  write_catalog(dir, nlohmann::json::array({good, good}));
  CHECK_THROWS_AS(load_catalog(dir), ParseError);

  nlohmann::json extra = good;
  extra["colour"] = "red";
  write_catalog(dir, nlohmann::json::array({extra}));
  CHECK_THROWS_AS(load_catalog(dir), ParseError);

  nlohmann::json bad_command = good;
  bad_command["command"] = "plot";
  write_catalog(dir, nlohmann::json::array({bad_command}));
  CHECK_THROWS_AS(load_catalog(dir), ParseError);

  std::ofstream(dir / "catalog.json") << "{\"cases\": [";
  CHECK_THROWS_AS(load_catalog(dir), ParseError);
  CHECK_THROWS_AS(read_json_file(dir / "absent.json"), ParseError);
  fs::remove_all(dir);
}

TEST_CASE("a fast case runs and a wrong expectation is reported") {
  const auto cases = load_catalog(default_corpus_dir());
  for (const auto& c : cases) {
    if (c.name != "bounds-222") continue;
    const CaseResult ok = run_case(c, default_corpus_dir(), 1);
    CHECK(ok.passed);
    CHECK(ok.mismatches.empty());
    CorpusCase wrong = c;
    wrong.expect = {{"/exact", 10}};
    const CaseResult bad = run_case(wrong, default_corpus_dir(), 1);
    CHECK_FALSE(bad.passed);
    CHECK(bad.mismatches.size() == 1);
  }
}
