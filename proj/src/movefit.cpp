#include "apolar/movefit.hpp"

#include <algorithm>
#include <atomic>
#include <climits>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "apolar/bounds.hpp"
#include "apolar/error.hpp"
#include "apolar/parallel.hpp"

namespace apolar {

Integer generic_hilbert(const FactorShape& shape, const Integer& r, const MultiDegree& d) {
  if (!d.effective()) throw PreconditionError("generic_hilbert needs an effective degree");
  if (r < 0) throw PreconditionError("generic_hilbert needs r >= 0");
  return std::min(r, piece_dimension(shape, d));
}

std::string to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::Exhausted: return "Exhausted";
    case SearchStatus::Found: return "Found";
    case SearchStatus::BudgetExceeded: return "BudgetExceeded";
  }
  return "?";
}

SearchStats& SearchStats::operator+=(const SearchStats& o) {
  nodes += o.nodes;
  pruned_overflow += o.pruned_overflow;
  pruned_shortage += o.pruned_shortage;
  pruned_lookahead += o.pruned_lookahead;
  pruned_symmetry += o.pruned_symmetry;
  pruned_growth += o.pruned_growth;
  return *this;
}

namespace {

struct Level {
  MultiDegree degree;
  std::vector<Monomial> monomials;  // descending grevlex
  std::vector<char> apolar;
  std::size_t required = 0;         // dim I_D
  std::vector<int> successor;       // level of D + e_j per factor, or -1
  std::vector<std::vector<int>> times;  // times[idx][v]: index of m * x_v in its successor level, or -1
  std::vector<std::vector<int>> sym;    // sym[g][idx]: index of the image under symmetry g
  bool growth_blocked = false;
};

// All data of one search that does not change between nodes.
struct Problem {
  FactorShape shape;
  std::vector<Level> levels;
  std::size_t symmetry_count = 0;
  SearchConfig config;
  int horizon = 0;
};

// Permutations of variables within a factor that fix the exponents of F,
// identity excluded, as images of each flat variable index.
std::vector<std::vector<std::size_t>> monomial_symmetries(const FactorShape& shape, const Monomial& m) {
  std::vector<std::vector<std::size_t>> classes;
  for (std::size_t j = 0; j < shape.factor_count(); ++j) {
    std::map<int, std::vector<std::size_t>> by_exponent;
    for (std::size_t v = shape.offset(j); v < shape.offset(j + 1); ++v) by_exponent[m.exponent(v)].push_back(v);
    for (auto& [e, vars] : by_exponent)
      if (vars.size() > 1) classes.push_back(vars);
  }
  std::vector<std::vector<std::size_t>> perms;
  std::vector<std::size_t> base(shape.variable_count());
  std::iota(base.begin(), base.end(), 0);
  perms.push_back(base);
  for (const auto& cls : classes) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& p : perms) {
      std::vector<std::size_t> images = cls;
      do {
        std::vector<std::size_t> q = p;
        for (std::size_t k = 0; k < cls.size(); ++k) q[cls[k]] = images[k];
        next.push_back(std::move(q));
      } while (std::next_permutation(images.begin(), images.end()));
    }
    perms = std::move(next);
  }
  perms.erase(perms.begin());  // the identity is generated first
  return perms;
}

Problem build_problem(const Tensor& f, const SearchConfig& config) {
  if (!f.is_monomial()) throw PreconditionError("search needs a monomial tensor");
  if (config.r < 1) throw PreconditionError("search needs r >= 1");
  const FactorShape& shape = f.shape();
  const Monomial& a = f.support_monomial();
  if (Integer(config.r) > piece_dimension(shape, f.degree()))
    throw PreconditionError("r exceeds dim S_L; the search would be vacuous");
  const int horizon = config.horizon == 0 ? f.degree().total() : config.horizon;
  if (horizon < 1) throw PreconditionError("search horizon must be >= 1");

  Problem p{shape, {}, 0, config, horizon};
  const auto degrees = degrees_up_to(shape.factor_count(), horizon);
  std::map<MultiDegree, int> level_of;
  for (std::size_t k = 0; k < degrees.size(); ++k) level_of[degrees[k]] = static_cast<int>(k);

  std::vector<std::unordered_map<Monomial, int, MonomialHash>> index(degrees.size());
  for (std::size_t k = 0; k < degrees.size(); ++k) {
    Level level;
    level.degree = degrees[k];
    level.monomials = enumerate_monomials(shape, degrees[k]);
    for (std::size_t i = 0; i < level.monomials.size(); ++i) {
      const Monomial& m = level.monomials[i];
      index[k][m] = static_cast<int>(i);
      bool kills = false;
      for (std::size_t v = 0; v < m.variable_count(); ++v) kills = kills || m.exponent(v) > a.exponent(v);
      level.apolar.push_back(kills ? 1 : 0);
    }
    const std::size_t dim = level.monomials.size();
    level.required = dim - std::min<std::size_t>(static_cast<std::size_t>(config.r), dim);
    for (std::size_t j = 0; j < shape.factor_count(); ++j) {
      auto it = level_of.find(degrees[k] + MultiDegree::unit(shape.factor_count(), j));
      level.successor.push_back(it == level_of.end() ? -1 : it->second);
    }
    p.levels.push_back(std::move(level));
  }

  for (std::size_t k = 0; k < p.levels.size(); ++k) {
    Level& level = p.levels[k];
    level.times.assign(level.monomials.size(), std::vector<int>(shape.variable_count(), -1));
    for (std::size_t i = 0; i < level.monomials.size(); ++i) {
      for (std::size_t v = 0; v < shape.variable_count(); ++v) {
        const int s = level.successor[shape.factor_of(v)];
        if (s < 0) continue;
        level.times[i][v] = index[static_cast<std::size_t>(s)].at(level.monomials[i] * Monomial::variable(shape, v));
      }
    }
  }

  if (config.symmetry_pruning) {
    const auto perms = monomial_symmetries(shape, a);
    p.symmetry_count = perms.size();
    for (std::size_t k = 0; k < p.levels.size(); ++k) {
      Level& level = p.levels[k];
      for (const auto& perm : perms) {
        std::vector<int> image(level.monomials.size());
        for (std::size_t i = 0; i < level.monomials.size(); ++i) {
          std::vector<int> e(shape.variable_count(), 0);
          for (std::size_t v = 0; v < e.size(); ++v) e[perm[v]] = level.monomials[i].exponent(v);
          image[i] = index[k].at(Monomial(shape, std::move(e)));
        }
        level.sym.push_back(std::move(image));
      }
    }
  }

  if (config.growth_pruning) {
    // Degrees where no monomial I_D can grow from any admissible I at the
    // previous degree, by the Lex-bar bound; independent of the node.
    try {
      for (std::size_t base = 0; base < shape.factor_count(); ++base) {
        bool ok = true;
        for (std::size_t j = 0; j < shape.factor_count(); ++j) ok = ok && (j == base || shape.factor_dim(j) == 1);
        if (!ok) continue;
        for (int d = 0; d < horizon; ++d) {
          DisjointModuleWitness w;
          const auto verdict = disjoint_module_rules_out(f, base, d, Integer(config.r), &w);
          if (!verdict || !*verdict) continue;
          auto it = level_of.find(w.next_degree);
          if (it != level_of.end()) p.levels[static_cast<std::size_t>(it->second)].growth_blocked = true;
        }
      }
    } catch (const UnsupportedShape&) {
    }
  }
  return p;
}

using Path = std::vector<std::vector<int>>;  // chosen piece per processed level

struct State {
  std::size_t level = 0;
  std::vector<std::vector<int>> cov;  // per level: number of (chosen monomial, variable) pairs hitting each monomial
  std::vector<std::size_t> covered;   // per level: monomials with cov > 0
  Path chosen;
  std::vector<int> active;            // symmetries fixing every chosen piece so far
};

State root_state(const Problem& p) {
  State s;
  for (const auto& level : p.levels) s.cov.emplace_back(level.monomials.size(), 0);
  s.covered.assign(p.levels.size(), 0);
  s.active.resize(p.symmetry_count);
  std::iota(s.active.begin(), s.active.end(), 0);
  return s;
}

struct Found {
  Path path;
};

class Searcher {
 public:
  Searcher(const Problem& p, std::atomic<std::uint64_t>& nodes, std::atomic<bool>& budget_hit)
      : p_(p), nodes_(nodes), budget_hit_(budget_hit) {}

  SearchStats stats;
  std::optional<Found> found;
  std::function<bool()> abort = [] { return false; };

  // Calls on_child(state) for every admissible child of s in branch order;
  // on_child returns false to stop. Returns false when stopped.
  template <typename OnChild>
  bool expand(State& s, OnChild&& on_child) {
    const std::size_t k = s.level;
    const Level& level = p_.levels[k];
    if (level.growth_blocked) {
      ++stats.pruned_growth;
      return true;
    }
    std::vector<int> mandatory;
    std::vector<int> candidates;
    for (std::size_t i = 0; i < level.monomials.size(); ++i) {
      if (s.cov[k][i] > 0) {
        if (!level.apolar[i]) throw std::logic_error("a multiple of an apolar monomial left F-perp");
        mandatory.push_back(static_cast<int>(i));
      } else if (level.apolar[i]) {
        candidates.push_back(static_cast<int>(i));
      }
    }
    if (mandatory.size() > level.required) {
      ++stats.pruned_overflow;
      return true;
    }
    const std::size_t needed = level.required - mandatory.size();
    if (candidates.size() < needed) {
      ++stats.pruned_shortage;
      return true;
    }

    std::vector<std::size_t> pick(needed);
    std::iota(pick.begin(), pick.end(), 0);
    std::vector<int> piece;
    while (true) {
      if (abort()) return false;
      ++stats.nodes;
      const std::uint64_t total = ++nodes_;
      if (p_.config.node_budget && total > *p_.config.node_budget) {
        budget_hit_ = true;
        return false;
      }
      if (budget_hit_) return false;

      piece = mandatory;
      for (std::size_t t : pick) piece.push_back(candidates[t]);
      std::sort(piece.begin(), piece.end());

      bool keep_going = true;
      if (!apply(s, k, piece)) {
        ++stats.pruned_lookahead;
      } else {
        std::vector<int> still;
        if (symmetric_image_smaller(s, k, piece, still)) {
          ++stats.pruned_symmetry;
        } else {
          std::swap(s.active, still);
          s.chosen.push_back(piece);
          ++s.level;
          keep_going = on_child(s);
          --s.level;
          s.chosen.pop_back();
          std::swap(s.active, still);
        }
      }
      undo(s, k, piece);
      if (!keep_going) return false;

      // Next combination in lexicographic order.
      std::size_t t = needed;
      while (t > 0 && pick[t - 1] == candidates.size() - needed + (t - 1)) --t;
      if (t == 0) return true;
      ++pick[t - 1];
      for (std::size_t u = t; u < needed; ++u) pick[u] = pick[u - 1] + 1;
    }
  }

  bool dfs(State& s) {
    if (s.level == p_.levels.size()) {
      found = Found{s.chosen};
      return false;
    }
    return expand(s, [this](State& child) { return dfs(child); });
  }

  // Rebuilds the state reached by a path of admissible pieces.
  State replay(const Path& path) const {
    State s = root_state(p_);
    for (const auto& piece : path) {
      const std::size_t k = s.level;
      if (!apply(s, k, piece)) throw std::logic_error("replayed piece violates the lookahead");
      std::vector<int> still;
      if (symmetric_image_smaller(s, k, piece, still)) throw std::logic_error("replayed piece is not canonical");
      s.active = std::move(still);
      s.chosen.push_back(piece);
      ++s.level;
    }
    return s;
  }

 private:
  bool apply(State& s, std::size_t k, const std::vector<int>& piece) const {
    const Level& level = p_.levels[k];
    for (int i : piece) {
      for (std::size_t v = 0; v < p_.shape.variable_count(); ++v) {
        const int t = level.times[static_cast<std::size_t>(i)][v];
        if (t < 0) continue;
        const auto succ = static_cast<std::size_t>(level.successor[p_.shape.factor_of(v)]);
        if (s.cov[succ][static_cast<std::size_t>(t)]++ == 0) ++s.covered[succ];
      }
    }
    for (int succ : level.successor) {
      if (succ >= 0 && s.covered[static_cast<std::size_t>(succ)] > p_.levels[static_cast<std::size_t>(succ)].required)
        return false;
    }
    return true;
  }

  void undo(State& s, std::size_t k, const std::vector<int>& piece) const {
    const Level& level = p_.levels[k];
    for (int i : piece) {
      for (std::size_t v = 0; v < p_.shape.variable_count(); ++v) {
        const int t = level.times[static_cast<std::size_t>(i)][v];
        if (t < 0) continue;
        const auto succ = static_cast<std::size_t>(level.successor[p_.shape.factor_of(v)]);
        if (--s.cov[succ][static_cast<std::size_t>(t)] == 0) --s.covered[succ];
      }
    }
  }

  // True when some symmetry maps the chosen pieces to a lexicographically
  // smaller sequence. Symmetries fixing every piece so far go to `still`.
  bool symmetric_image_smaller(const State& s, std::size_t k, const std::vector<int>& piece, std::vector<int>& still) const {
    const Level& level = p_.levels[k];
    std::vector<int> image(piece.size());
    for (int g : s.active) {
      const auto& map = level.sym[static_cast<std::size_t>(g)];
      for (std::size_t t = 0; t < piece.size(); ++t) image[t] = map[static_cast<std::size_t>(piece[t])];
      std::sort(image.begin(), image.end());
      if (image < piece) return true;
      if (image == piece) still.push_back(g);
    }
    return false;
  }

  const Problem& p_;
  std::atomic<std::uint64_t>& nodes_;
  std::atomic<bool>& budget_hit_;
};

void fill_found(const Problem& p, const Path& path, SearchOutcome& out) {
  std::vector<Monomial> gens;
  for (std::size_t k = 0; k < path.size(); ++k) {
    std::vector<Monomial> piece;
    for (int i : path[k]) piece.push_back(p.levels[k].monomials[static_cast<std::size_t>(i)]);
    gens.insert(gens.end(), piece.begin(), piece.end());
    out.pieces[p.levels[k].degree] = std::move(piece);
  }
  out.status = SearchStatus::Found;
  out.candidate = MonomialIdeal(p.shape, std::move(gens));
}

void check_found(const Tensor& f, SearchOutcome& out) {
  if (out.status != SearchStatus::Found) return;
  const AnyIdeal ideal = *out.candidate;
  bool ok = contained_in_apolar(ideal, f);
  for (const auto& [d, value] : hilbert_record_serial(ideal, out.horizon))
    ok = ok && Integer(static_cast<unsigned long>(value.quotient_dim)) == generic_hilbert(f.shape(), Integer(out.r), d);
  if (!ok) throw std::logic_error("search produced a candidate that fails verification");
}

}  // namespace

SearchOutcome search_serial(const Tensor& f, const SearchConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  const Problem p = build_problem(f, config);
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> budget_hit{false};
  Searcher searcher(p, nodes, budget_hit);
  State root = root_state(p);
  searcher.dfs(root);

  SearchOutcome out;
  out.horizon = p.horizon;
  out.r = config.r;
  out.stats = searcher.stats;
  if (searcher.found) fill_found(p, searcher.found->path, out);
  else if (budget_hit) out.status = SearchStatus::BudgetExceeded;
  else out.status = SearchStatus::Exhausted;
  check_found(f, out);
  out.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

SearchOutcome search(const Tensor& f, const SearchConfig& config) {
  const int width = resolve_threads(config.parallel_width);
  if (width <= 1) return search_serial(f, config);
  const auto start = std::chrono::steady_clock::now();
  const Problem p = build_problem(f, config);
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> budget_hit{false};

  // Split the forest into subtrees in depth-first order.
  SearchStats expansion_stats;
  std::vector<Path> frontier{Path{}};
  const std::size_t target = 4 * static_cast<std::size_t>(width);
  bool stopped = false;
  while (frontier.size() < target && !stopped) {
    std::vector<Path> next;
    bool expanded = false;
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      if (stopped || next.size() + (frontier.size() - i) >= target || frontier[i].size() == p.levels.size()) {
        next.push_back(std::move(frontier[i]));
        continue;
      }
      Searcher splitter(p, nodes, budget_hit);
      State s = splitter.replay(frontier[i]);
      const bool finished = splitter.expand(s, [&](State& child) {
        next.push_back(child.chosen);
        return true;
      });
      expansion_stats += splitter.stats;
      expanded = true;
      if (!finished) stopped = true;  // budget
    }
    frontier = std::move(next);
    if (!expanded) break;
  }

  const long count = static_cast<long>(frontier.size());
  std::atomic<long> best{LONG_MAX};
  std::vector<std::optional<Path>> results(frontier.size());
  std::vector<char> completed(frontier.size(), 0);
  std::vector<SearchStats> stats(frontier.size());
  if (!stopped) {
#pragma omp parallel for schedule(dynamic, 1) num_threads(width)
    for (long i = 0; i < count; ++i) {
      if (best.load() < i || budget_hit.load()) continue;
      Searcher worker(p, nodes, budget_hit);
      worker.abort = [&best, i] { return best.load() < i; };
      State s = worker.replay(frontier[static_cast<std::size_t>(i)]);
      worker.dfs(s);
      stats[static_cast<std::size_t>(i)] = worker.stats;
      if (worker.found) {
        results[static_cast<std::size_t>(i)] = worker.found->path;
        long seen = best.load();
        while (i < seen && !best.compare_exchange_weak(seen, i)) {
        }
      }
      if (worker.found || (!budget_hit.load() && !(best.load() < i))) completed[static_cast<std::size_t>(i)] = 1;
    }
  }

  SearchOutcome out;
  out.horizon = p.horizon;
  out.r = config.r;
  out.stats = expansion_stats;
  for (const auto& s : stats) out.stats += s;
  const long first = best.load();
  const bool prefix_done = first != LONG_MAX && std::all_of(completed.begin(), completed.begin() + first, [](char c) { return c; });
  if (first != LONG_MAX && prefix_done) {
    fill_found(p, *results[static_cast<std::size_t>(first)], out);
  } else if (budget_hit.load() || stopped) {
    out.status = SearchStatus::BudgetExceeded;
  } else {
    out.status = SearchStatus::Exhausted;
  }
  check_found(f, out);
  out.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

nlohmann::json outcome_to_json(const SearchOutcome& outcome, const FactorShape& shape) {
  using nlohmann::json;
  json j{{"status", to_string(outcome.status)}, {"r", outcome.r}, {"horizon", outcome.horizon}};
  switch (outcome.status) {
    case SearchStatus::Exhausted:
      j["conclusion"] = "border rank > " + std::to_string(outcome.r);
      break;
    case SearchStatus::Found:
      j["conclusion"] = "candidate up to degree " + std::to_string(outcome.horizon) +
                        "; not checked to be a limit of saturated ideals of points";
      break;
    case SearchStatus::BudgetExceeded:
      j["conclusion"] = "inconclusive: node budget exceeded";
      break;
  }
  if (outcome.candidate) {
    j["candidate"] = ideal_to_json(*outcome.candidate);
    json pieces = json::array();
    for (const auto& [d, ms] : outcome.pieces) {
      json list = json::array();
      for (const auto& m : ms) list.push_back(format_monomial(shape, m));
      pieces.push_back({{"degree", degree_to_json(d)}, {"monomials", list}});
    }
    j["pieces"] = pieces;
  } else {
    j["candidate"] = nullptr;
  }
  const auto& s = outcome.stats;
  j["stats"] = {{"nodes", s.nodes},
                {"pruned", {{"overflow", s.pruned_overflow},
                            {"shortage", s.pruned_shortage},
                            {"lookahead", s.pruned_lookahead},
                            {"symmetry", s.pruned_symmetry},
                            {"growth", s.pruned_growth}}},
                {"seconds", s.seconds}};
  return j;
}

VerifyReport verify_candidate(const AnyIdeal& ideal, const Tensor& f, const Integer& r, int horizon, int threads) {
  const FactorShape& shape = shape_of(ideal);
  if (!(shape == f.shape())) throw DimensionMismatch("ideal and tensor live over different shapes");
  if (horizon < 0) throw PreconditionError("verify horizon must be >= 0");
  VerifyReport report;
  const HilbertRecord record = hilbert_record(ideal, horizon, threads);
  report.hilbert_ok = true;
  for (const auto& [d, value] : record) {
    const Integer dim = piece_dimension(shape, d);
    VerifyRow row{d, dim, std::min(r, dim), Integer(static_cast<unsigned long>(value.quotient_dim)), false};
    row.ok = row.required_quotient == row.actual_quotient;
    report.hilbert_ok = report.hilbert_ok && row.ok;
    report.rows.push_back(std::move(row));
  }
  report.contained = contained_in_apolar(ideal, f);

  for (const auto& [d, value] : record) {
    std::size_t count = 0;
    if (const auto* mono = std::get_if<MonomialIdeal>(&ideal)) count = minimal_generator_count(*mono, d);
    else count = minimal_generator_count(std::get<GradedIdeal>(ideal), d);
    if (count > 0) report.generator_counts[d] = count;
  }

  if (const auto* mono = std::get_if<MonomialIdeal>(&ideal)) {
    MonomialIdeal sat = saturate(*mono);
    report.saturated = sat == *mono;
    report.saturation_hilbert = hilbert_record(AnyIdeal(sat), horizon, threads);
    report.saturation = std::move(sat);
  } else {
    const auto& graded = std::get<GradedIdeal>(ideal);
    for (const auto& [d, value] : record) {
      if (irrelevant_colon_dimension(graded, d) > value.ideal_dim) {
        report.saturated = false;
        report.non_saturation_degree = d;
        break;
      }
    }
  }
  return report;
}

nlohmann::json verify_to_json(const VerifyReport& report) {
  using nlohmann::json;
  json rows = json::array();
  for (const auto& row : report.rows) {
    rows.push_back({{"degree", degree_to_json(row.degree)},
                    {"piece_dim", integer_to_json(row.piece_dim)},
                    {"required_quotient", integer_to_json(row.required_quotient)},
                    {"actual_quotient", integer_to_json(row.actual_quotient)},
                    {"ok", row.ok}});
  }
  json gens = json::array();
  std::size_t total = 0;
  for (const auto& [d, c] : report.generator_counts) {
    gens.push_back({{"degree", degree_to_json(d)}, {"count", c}});
    total += c;
  }
  json j{{"passed", report.passed()},
         {"hilbert_ok", report.hilbert_ok},
         {"contained_in_apolar", report.contained},
         {"hilbert", rows},
         {"minimal_generators", gens},
         {"minimal_generator_total", total}};
  j["saturated"] = report.saturated ? json(*report.saturated) : json(nullptr);
  j["non_saturation_degree"] = report.non_saturation_degree ? degree_to_json(*report.non_saturation_degree) : json(nullptr);
  if (report.saturation) {
    j["saturation"] = ideal_to_json(*report.saturation);
    json sat_rows = json::array();
    for (const auto& [d, v] : report.saturation_hilbert)
      sat_rows.push_back({{"degree", degree_to_json(d)}, {"quotient_dim", v.quotient_dim}});
    j["saturation_hilbert"] = sat_rows;
  }
  return j;
}

}  // namespace apolar
