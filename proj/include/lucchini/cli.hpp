#pragma once

// Command-line front end. `run` takes the arguments after the program name
// and writes to the given streams, so tests can drive it in-process.
// Needs CLI11.hpp on the include path.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "lucchini/config.hpp"
#include "lucchini/errors.hpp"
#include "lucchini/tower.hpp"
#include "lucchini/verify.hpp"

namespace lucchini::cli {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kUsage = 2, kBound = 3 };

struct CliConfig {
  std::string spec;
  std::size_t bound = kDefaultEnumerationCap;
  std::size_t samples = 10000;
  std::uint64_t seed = 1;
  std::string format = "text";
  std::size_t cost_bound = kDefaultCostBound;
  bool timing = false;

  bool json() const { return format == "json"; }

  VerifyOptions verify_options() const { return {bound, samples, seed}; }
};

namespace detail {

/// Splits on commas outside brackets, so JSON tables survive in a list.
inline std::vector<std::string> split_top_level(std::string_view s) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '[' || c == '(' || c == '{') ++depth;
    if (c == ']' || c == ')' || c == '}') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(std::string(lucchini::detail::trim(cur)));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!lucchini::detail::trim(cur).empty() || !out.empty()) out.push_back(std::string(lucchini::detail::trim(cur)));
  return out;
}

inline std::vector<std::size_t> parse_index_list(std::string_view s, const char* what) {
  std::vector<std::size_t> out;
  for (const auto& part : split_top_level(s)) {
    try {
      std::size_t pos = 0;
      unsigned long long v = std::stoull(part, &pos);
      if (pos != part.size()) throw std::invalid_argument(part);
      out.push_back(static_cast<std::size_t>(v));
    } catch (const std::logic_error&) {
      throw ParseError(std::string("bad ") + what + " entry '" + part + "'");
    }
  }
  if (out.empty()) throw ParseError(std::string("empty ") + what + " list");
  return out;
}

/// A group name (`c3`, `sym3`, ...) or a JSON multiplication table.
inline MulTable table_argument(const std::string& s) {
  if (s.starts_with("[")) {
    try {
      return MulTable(nlohmann::json::parse(s).get<std::vector<std::vector<std::size_t>>>());
    } catch (const nlohmann::json::exception& e) {
      throw ParseError("bad table '" + s + "': " + e.what());
    }
  }
  return table_from_name(s);
}

/// Exact value under the cost bound; otherwise the expression with digit
/// bounds. With `max_shown`, long exact values are also abbreviated.
inline std::string order_text(const OrderExpr& e, std::size_t cost_bound, std::size_t max_shown = 0) {
  if (auto v = e.evaluate(cost_bound)) {
    std::string s = v->str();
    if (!max_shown || s.size() <= max_shown) return s;
    return e.text() + " digits=" + std::to_string(s.size());
  }
  std::string out = e.text();
  if (auto d = e.digit_bounds()) {
    out += " digits=" + approx_text(d->lo, false) + ".." + approx_text(d->hi, true);
  } else {
    out += " digits=unknown";
  }
  return out;
}

}  // namespace detail

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(std::vector<std::string> args) {
    CLI::App app{"Exact computation in iterated wreath product towers", "lucchini"};
    app.require_subcommand(1);
    app.fallthrough();
    add_global_options(app);

    auto* tower = app.add_subcommand("tower", "Inspect a tower spec")->require_subcommand(1);
    auto* show = tower->add_subcommand("show", "Levels, degrees, copies and compliance");
    auto* order = tower->add_subcommand("order", "Order of G_i");
    for (auto* s : {show, order}) s->add_option("spec", cfg_.spec, "Spec file or inline JSON")->required();
    order->add_option("--level", level_, "Level i")->required()->check(CLI::PositiveNumber);

    auto* elt = app.add_subcommand("elt", "Element arithmetic")->require_subcommand(1);
    std::vector<std::pair<std::string, CLI::App*>> elt_cmds;
    for (const char* name : {"mul", "inv", "project", "lift"}) {
      auto* c = elt->add_subcommand(name, std::string(name) + " of tower elements");
      c->add_option("spec", cfg_.spec, "Spec file or inline JSON")->required();
      c->add_option("elements", elements_, "Elements in text form")->required();
      c->add_option("--level", level_, "Target level j")->check(CLI::PositiveNumber);
      elt_cmds.emplace_back(name, c);
    }

    auto* embed = app.add_subcommand("embed", "Embeddings into the tower")->require_subcommand(1);
    auto* diag = embed->add_subcommand("diag", "Diagonal copy of A_i");
    diag->add_option("spec", cfg_.spec, "Spec file or inline JSON")->required();
    diag->add_option("--level", level_, "Level i")->required()->check(CLI::PositiveNumber);
    diag->add_option("--perm", perm_, "Element of A_i in cycle notation")->required();
    auto* product = embed->add_subcommand("product", "Embed a product of finite groups");
    product->add_option("spec", cfg_.spec, "Spec file or inline JSON")->required();
    product->add_option("--groups", groups_, "Comma list of group names or JSON tables")->required();
    product->add_option("--levels", levels_, "Comma list of strictly increasing levels")->required();

    auto* verify = app.add_subcommand("verify", "Run verification checks")->require_subcommand(1);
    std::vector<std::pair<std::string, CLI::App*>> checks;
    for (const char* name : {"all", "free", "hji", "hered", "subdirect", "diag", "embedding"}) {
      auto* c = verify->add_subcommand(name, std::string("Run the ") + name + " check");
      c->add_option("spec", cfg_.spec, "Spec file or inline JSON");
      checks.emplace_back(name, c);
    }
    add_instance_flags(checks);

    try {
      std::reverse(args.begin(), args.end());
      app.parse(args);
    } catch (const CLI::CallForHelp&) {
      out_ << help_for(app);
      return kOk;
    } catch (const CLI::CallForAllHelp&) {
      out_ << app.help("", CLI::AppFormatMode::All);
      return kOk;
    } catch (const CLI::ParseError& e) {
      err_ << "error: " << e.what() << "\n";
      return kUsage;
    }
    if (cfg_.format != "text" && cfg_.format != "json") {
      err_ << "error: --format must be text or json\n";
      return kUsage;
    }

    try {
      if (show->parsed()) return tower_show();
      if (order->parsed()) return tower_order();
      for (const auto& [name, c] : elt_cmds) {
        if (c->parsed()) return elt_op(name);
      }
      if (diag->parsed()) return embed_diag();
      if (product->parsed()) return embed_product();
      for (const auto& [name, c] : checks) {
        if (c->parsed()) return run_verify(name);
      }
    } catch (const BoundExceeded& e) {
      err_ << "bound exceeded: " << e.what() << "\n";
      return kBound;
    } catch (const HypothesisError& e) {
      err_ << "error: " << e.what() << "\n";
      return kUsage;
    } catch (const Error& e) {
      err_ << "error: " << e.what() << "\n";
      return kUsage;
    }
    err_ << "error: no command\n";
    return kUsage;
  }

 private:
  void add_global_options(CLI::App& app) {
    app.add_option("--bound", cfg_.bound, "Largest group that is enumerated")
        ->envname("LUCCHINI_BOUND")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--samples", cfg_.samples, "Sampled pairs per check")
        ->envname("LUCCHINI_SAMPLES")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--seed", cfg_.seed, "Seed for sampled checks")->envname("LUCCHINI_SEED")->capture_default_str();
    app.add_option("--format", cfg_.format, "Output format: text or json")
        ->envname("LUCCHINI_FORMAT")
        ->capture_default_str();
    app.add_option("--cost-bound", cfg_.cost_bound, "Largest order (in digits) that is evaluated exactly")
        ->envname("LUCCHINI_COST_BOUND")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_flag("--timing", cfg_.timing, "Report wall-clock times instead of '-'");
  }

  void add_instance_flags(const std::vector<std::pair<std::string, CLI::App*>>& checks) {
    for (const auto& [name, c] : checks) {
      if (name == "free") c->add_option("--level", level_, "Level i (default: all)")->check(CLI::PositiveNumber);
      if (name == "hji" || name == "subdirect") {
        c->add_option("--A", a_name_, "A: nonabelian simple group name");
        c->add_option("--t", t_, "Copies t")->check(CLI::PositiveNumber);
      }
      if (name == "hji") {
        c->add_option("--G1", g_name_, "Top group G1");
        c->add_flag("--skip-hypothesis", skip_hypothesis_, "Run even when A is not nonabelian simple");
      }
      if (name == "subdirect") c->add_option("--X1", g_name_, "Transitive group X1 (regular action)");
      if (name == "hered") {
        c->add_option("--j", j_, "Kernel index j (default: 1 and 2)")->check(CLI::PositiveNumber);
        c->add_option("--L", big_l_, "Truncation depth L (default: min(depth,4))")->check(CLI::PositiveNumber);
      }
      if (name == "diag") {
        c->add_option("--i", i_, "First level")->check(CLI::PositiveNumber);
        c->add_option("--j", j_, "Second level")->check(CLI::PositiveNumber);
      }
      if (name == "embedding") {
        c->add_option("--groups", groups_, "Comma list of group names or JSON tables (default c2,c3)");
        c->add_option("--levels", levels_, "Comma list of levels (default 1,2)");
      }
      if (name == "free" || name == "subdirect") {
        c->add_option("--mode", mode_, "auto, exhaustive or sampled")
            ->check(CLI::IsMember({"auto", "exhaustive", "sampled"}));
      }
    }
  }

  static std::string help_for(CLI::App& app) {
    CLI::App* cur = &app;
    while (true) {
      auto subs = cur->get_subcommands();
      if (subs.empty()) break;
      cur = subs.front();
    }
    return cur->help();
  }

  Tower load() const {
    if (cfg_.spec.empty()) throw Error("a spec file is required");
    return Tower(load_spec(cfg_.spec, cfg_.cost_bound), cfg_.cost_bound);
  }

  ModeRequest mode() const {
    if (mode_ == "exhaustive") return ModeRequest::exhaustive;
    if (mode_ == "sampled") return ModeRequest::sampled;
    return ModeRequest::automatic;
  }

  int tower_show() {
    Tower t = load();
    const TowerSpec& s = t.spec();
    if (cfg_.json()) {
      nlohmann::json j;
      j["summary"] = s.summary();
      j["depth"] = s.depth();
      j["paper_compliant"] = s.paper_compliant;
      j["g1"] = {{"group", s.g1.name()}, {"order", t.g1().order()}};
      j["levels"] = nlohmann::json::array();
      for (std::size_t i = 1; i < s.depth(); ++i) {
        const LevelSpec& lv = s.levels[i - 1];
        j["levels"].push_back({{"i", i},
                               {"A", lv.name()},
                               {"degree", lv.degree.text()},
                               {"copies", lv.copies},
                               {"compliant", level_is_compliant(lv)},
                               {"order", detail::order_text(t.order(i + 1), cfg_.cost_bound, 40)}});
      }
      out_ << j.dump() << "\n";
      return kOk;
    }
    out_ << "tower " << s.summary() << "\n";
    out_ << "depth=" << s.depth() << " paper_compliant=" << (s.paper_compliant ? "true" : "false") << "\n";
    out_ << "G1=" << s.g1.name() << " order=" << t.g1().order() << "\n";
    for (std::size_t i = 1; i < s.depth(); ++i) {
      const LevelSpec& lv = s.levels[i - 1];
      out_ << "level " << i << ": A=" << lv.name() << " degree=" << lv.degree.text() << " copies=" << lv.copies
           << " compliant=" << (level_is_compliant(lv) ? "true" : "false")
           << " |G" << i + 1 << "|=" << detail::order_text(t.order(i + 1), cfg_.cost_bound, 40) << "\n";
    }
    return kOk;
  }

  int tower_order() {
    Tower t = load();
    const OrderExpr& e = t.order(level_);
    if (cfg_.json()) {
      nlohmann::json j{{"level", level_}, {"expr", e.text()}};
      if (auto v = e.evaluate(cfg_.cost_bound)) j["value"] = v->str();
      if (auto d = e.digit_bounds()) j["digits"] = {d->lo.str(), d->hi.str()};
      out_ << j.dump() << "\n";
    } else {
      out_ << detail::order_text(e, cfg_.cost_bound) << "\n";
    }
    return kOk;
  }

  void print_element(const TowerElement& x) {
    if (cfg_.json()) {
      out_ << nlohmann::json{{"level", x.level()}, {"element", to_text(x)}}.dump() << "\n";
    } else {
      out_ << to_text(x) << "\n";
    }
  }

  int elt_op(const std::string& op) {
    Tower t = load();
    std::size_t want = op == "mul" ? 2 : 1;
    if (elements_.size() != want) {
      err_ << "error: elt " << op << " takes " << want << " element(s), got " << elements_.size() << "\n";
      return kUsage;
    }
    std::vector<TowerElement> xs;
    for (const auto& e : elements_) xs.push_back(t.parse(e));
    if (op == "project" || op == "lift") {
      if (level_ == 0) {
        err_ << "error: elt " << op << " needs --level\n";
        return kUsage;
      }
      print_element(op == "project" ? t.project(xs[0], level_) : t.lift(xs[0], level_));
      return kOk;
    }
    TowerElement r;
    if (op == "mul") {
      std::size_t m = std::max({xs[0].level(), xs[1].level(), level_});
      r = t.mul(t.lift(xs[0], m), t.lift(xs[1], m));
    } else {
      r = t.inv(xs[0]);
      if (level_) r = t.lift(r, level_);
    }
    print_element(r);
    return kOk;
  }

  int embed_diag() {
    Tower t = load();
    SparsePerm a = parse_sparse_perm(perm_);
    ProfiniteElement p = t.diag_embed(a, level_);
    print_element(t.lift(p.rep, level_ + 1));
    return kOk;
  }

  EmbeddingMap build_map(const Tower& t) const {
    std::vector<MulTable> tables;
    for (const auto& g : detail::split_top_level(groups_.empty() ? "c2,c3" : groups_)) {
      tables.push_back(detail::table_argument(g));
    }
    return t.embed_product(tables, detail::parse_index_list(levels_.empty() ? "1,2" : levels_, "levels"));
  }

  int embed_product() {
    Tower t = load();
    auto map = build_map(t);
    auto opt = cfg_.verify_options();
    return emit({check_embedding(t, map, opt)});
  }

  void print_header() {
    if (cfg_.json()) {
      out_ << nlohmann::json{{"seed", cfg_.seed}, {"bound", cfg_.bound}, {"samples", cfg_.samples}}.dump() << "\n";
    } else {
      out_ << "# seed=" << cfg_.seed << " bound=" << cfg_.bound << " samples=" << cfg_.samples << "\n";
    }
  }

  int emit(const std::vector<VerificationReport>& reports) {
    print_header();
    bool ok = true;
    for (const auto& r : reports) {
      ok = ok && r.pass;
      if (cfg_.json()) {
        out_ << r.to_json(cfg_.timing).dump() << "\n";
      } else {
        out_ << r.text_line(cfg_.timing) << "\n";
      }
    }
    return ok ? kOk : kVerifyFailed;
  }

  int run_verify(const std::string& name) {
    auto opt = cfg_.verify_options();
    std::vector<VerificationReport> reports;
    if (name == "hji") {
      GroupDescriptor a = GroupDescriptor::alternating(5), g = GroupDescriptor::cyclic(2);
      std::size_t t = t_.value_or(1);
      if (!cfg_.spec.empty() && (a_name_.empty() || g_name_.empty() || !t_)) {
        TowerSpec s = load_spec(cfg_.spec, cfg_.cost_bound);
        if (s.levels.empty() || s.levels[0].symbolic()) throw Error("spec has no enumerable first level");
        a = s.levels[0].group;
        g = s.g1;
        if (!t_) t = s.levels[0].copies;
      }
      if (!a_name_.empty()) a = parse_group_name(a_name_);
      if (!g_name_.empty()) g = parse_group_name(g_name_);
      reports.push_back(check_hji_step(a, g, t, opt, !skip_hypothesis_));
      return emit(reports);
    }
    if (name == "subdirect") {
      if (a_name_.empty() && g_name_.empty() && !t_) {
        return emit(default_subdirect_reports(opt));
      }
      GroupDescriptor a = a_name_.empty() ? GroupDescriptor::alternating(5) : parse_group_name(a_name_);
      GroupDescriptor x = g_name_.empty() ? GroupDescriptor::cyclic(2) : parse_group_name(g_name_);
      reports.push_back(check_subdirect_equivalence(a, x, t_.value_or(1), mode(), opt));
      return emit(reports);
    }

    Tower t = load();
    if (name == "all") return emit(run_suite(t, opt));
    if (name == "free") {
      if (level_) {
        reports.push_back(check_free_action(t, level_, mode(), opt));
      } else {
        for (std::size_t i = 1; i < t.depth(); ++i) reports.push_back(check_free_action(t, i, mode(), opt));
      }
    } else if (name == "hered") {
      std::size_t L = big_l_ ? big_l_ : std::min<std::size_t>(t.depth(), 4);
      if (j_) {
        reports.push_back(check_hered_generators(t, j_, L, opt));
      } else {
        for (std::size_t j = 1; j <= 2 && j < L; ++j) reports.push_back(check_hered_generators(t, j, L, opt));
      }
    } else if (name == "diag") {
      if (i_ || j_) {
        if (!i_ || !j_) throw Error("verify diag needs both --i and --j");
        reports.push_back(check_diag_commute(t, i_, j_));
      } else {
        SuiteSelection only{false, false, false, false, true, false};
        reports = run_suite(t, opt, only);
      }
    } else if (name == "embedding") {
      reports.push_back(check_embedding(t, build_map(t), opt));
    }
    return emit(reports);
  }

  std::ostream& out_;
  std::ostream& err_;
  CliConfig cfg_;
  std::size_t level_ = 0;
  std::vector<std::string> elements_;
  std::string perm_, groups_, levels_, a_name_, g_name_, mode_ = "auto";
  std::optional<std::size_t> t_;
  std::size_t i_ = 0, j_ = 0, big_l_ = 0;
  bool skip_hypothesis_ = false;
};

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  return Runner(out, err).run(std::move(args));
}

}  // namespace lucchini::cli
