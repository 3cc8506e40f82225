#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hypcells/cells.hpp"
#include "hypcells/error.hpp"
#include "hypcells/render.hpp"
#include "hypcells/verify.hpp"
#include "hypcells/workspace.hpp"

using namespace hypcells;
using Json = nlohmann::ordered_json;

namespace {

constexpr int kOk = 0;
constexpr int kDisagreement = 1;
constexpr int kUsage = 2;

struct Options {
  std::string group;
  std::size_t radius = 8;
  std::size_t trust_margin = 4;
  std::string k = "auto";
  std::string out;
  std::size_t cap = ElementBall::kDefaultCap;
  std::string workspace = "workspace";
  std::size_t level = 0;
  std::string coloring = "twosided";
  unsigned size_px = 800;
  std::vector<std::string> palette;
  std::vector<std::string> files;
};

struct Artifact {
  std::string rel;
  std::string bytes;
};

struct Result {
  Json report;
  std::vector<Artifact> extra;
};

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--group", o.group, "group config (JSON)")->required()->check(CLI::ExistingFile);
  sub->add_option("--radius", o.radius, "ball radius")->capture_default_str();
  sub->add_option("--trust-margin", o.trust_margin, "untrusted shell width")->capture_default_str();
  sub->add_option("--k", o.k, "fellow-traveller constant or auto")->capture_default_str();
  sub->add_option("--out", o.out, "also write the main artifact here");
  sub->add_option("--cap", o.cap, "element and closure cap")->capture_default_str();
  sub->add_option("--workspace", o.workspace, "cache root")->capture_default_str();
}

std::optional<std::size_t> parse_k(const std::string& text) {
  if (text == "auto") return std::nullopt;
  try {
    std::size_t pos = 0;
    const unsigned long v = std::stoul(text, &pos);
    if (pos == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::BadConfig, "--k expects an integer or auto, got '" + text + "'");
}

Json words_json(const Presentation& p, const std::vector<Element>& xs) {
  Json a = Json::array();
  for (const auto& e : xs) a.push_back(p.format_word(e.word));
  return a;
}

std::string fsa_text(const Fsa& f) {
  std::ostringstream out;
  f.write(out);
  return out.str();
}

class Session {
 public:
  explicit Session(const Options& o)
      : opt_(o), group_(Presentation::load(o.group)), ws_(o.workspace, group_.presentation()) {}

  const CoxeterGroup& group() const { return group_; }
  const Presentation& presentation() const { return group_.presentation(); }
  Workspace& ws() { return ws_; }

  const ValidatedK& k() {
    if (!k_) k_ = workspace_k(ws_, group_, parse_k(opt_.k));
    return *k_;
  }
  const ConjecturalPartition& partition() {
    if (!part_) part_.emplace(workspace_partition(ws_, group_, k()));
    return *part_;
  }
  const ElementBall& ball(std::size_t radius) {
    auto it = balls_.find(radius);
    if (it == balls_.end()) it = balls_.emplace(radius, std::make_unique<ElementBall>(group_, radius, opt_.cap)).first;
    return *it->second;
  }

  // Report from cache when it and every listed extra are fresh; otherwise
  // computed, extras committed, then the report.
  Json cached(const std::string& rel, const Stamp& stamp, const std::vector<std::string>& extras,
              const std::function<Result()>& compute) {
    bool warm = ws_.fresh(rel, stamp);
    for (const auto& e : extras) warm = ws_.fresh(e, stamp) && warm;
    if (warm) {
      try {
        return Json::parse(ws_.read(rel));
      } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::CorruptCache, ws_.path(rel).string() + ": " + e.what());
      }
    }
    Result r = compute();
    for (const auto& a : r.extra) ws_.commit(a.rel, a.bytes, stamp);
    ws_.commit(rel, r.report.dump(2) + "\n", stamp);
    return r.report;
  }

  void finish(const Json& report, const std::string& main_rel = {}) {
    for (const auto& line : ws_.log()) std::cerr << line << "\n";
    if (!opt_.out.empty()) write_atomic(opt_.out, main_rel.empty() ? report.dump(2) + "\n" : ws_.read(main_rel));
    std::cout << report.dump(2) << "\n";
  }

 private:
  const Options& opt_;
  CoxeterGroup group_;
  Workspace ws_;
  std::optional<ValidatedK> k_;
  std::optional<ConjecturalPartition> part_;
  std::map<std::size_t, std::unique_ptr<ElementBall>> balls_;
};

std::string rtag(std::size_t radius) { return ".r" + std::to_string(radius); }

int cmd_group_info(const Options& o) {
  Session s(o);
  const Presentation& p = s.presentation();
  Json j;
  j["presentation"] = p.to_json();
  j["hash"] = p.hash();
  j["rank"] = p.rank();
  Json matrix = Json::array();
  for (Generator a = 0; a < p.rank(); ++a) {
    Json row = Json::array();
    for (Generator b = 0; b < p.rank(); ++b) row.push_back(to_string(p.order(a, b)));
    matrix.push_back(row);
  }
  j["coxeter_matrix"] = matrix;
  j["small_roots"] = s.group().small_roots().size();
  j["canonical_states"] = s.group().canonical().state_count();
  Json dihedral = Json::array();
  const DihedralData d = dihedral_data(p);
  for (const auto& e : d.entries) {
    dihedral.push_back({{"pair", p.format_set(e.pair)}, {"order", e.order}, {"longest", p.format_word(e.longest)},
                        {"level", e.level}});
  }
  j["dihedral"] = dihedral;
  j["exponents"] = d.exponents;
  s.finish(j);
  return kOk;
}

int cmd_ball(const Options& o) {
  Session s(o);
  const std::string tsv = "ball" + rtag(o.radius) + ".tsv";
  const Json j = s.cached("reports/ball" + rtag(o.radius) + ".json", s.ws().stamp(o.radius, 0), {tsv}, [&] {
    const ElementBall& b = s.ball(o.radius);
    std::ostringstream out;
    b.write_tsv(out);
    Json r;
    r["group"] = s.presentation().name();
    r["radius"] = o.radius;
    r["size"] = b.size();
    r["counts_by_length"] = b.counts_by_length();
    r["file"] = tsv;
    return Result{r, {{tsv, out.str()}}};
  });
  s.finish(j);
  return kOk;
}

int cmd_kl(const Options& o) {
  Session s(o);
  const std::string tsv = "kl" + rtag(o.radius) + ".tsv";
  const Json j = s.cached("reports/kl" + rtag(o.radius) + ".json", s.ws().stamp(o.radius, 0), {tsv}, [&] {
    const KLTable table(s.ball(o.radius));
    std::ostringstream out;
    table.write_tsv(out);
    std::size_t pairs = 0, nonzero_mu = 0;
    long long max_mu = 0;
    for (ElementBall::Index w = 0; w < table.size(); ++w) {
      for (ElementBall::Index v = 0; v < table.size(); ++v) {
        if (!table.bruhat_leq(v, w)) continue;
        ++pairs;
        const long long m = table.mu(v, w);
        if (m != 0) ++nonzero_mu;
        max_mu = std::max(max_mu, m);
      }
    }
    Json r;
    r["group"] = s.presentation().name();
    r["radius"] = o.radius;
    r["elements"] = table.size();
    r["bruhat_pairs"] = pairs;
    r["nonzero_mu"] = nonzero_mu;
    r["max_mu"] = max_mu;
    r["identity_failures"] = table.check_inversion_identity();
    r["file"] = tsv;
    return Result{r, {{tsv, out.str()}}};
  });
  s.finish(j);
  return j["identity_failures"].get<std::size_t>() == 0 ? kOk : kDisagreement;
}

int cmd_cells_empirical(const Options& o) {
  Session s(o);
  const Json j = s.cached("reports/empirical" + rtag(o.radius) + ".json", s.ws().stamp(o.radius, 0), {}, [&] {
    const ElementBall& b = s.ball(o.radius);
    const KLTable table(b);
    const EmpiricalCells cells = empirical_cells(table);
    const Presentation& p = s.presentation();
    Json r;
    r["group"] = p.name();
    r["radius"] = o.radius;
    r["left_cells"] = cells.left.block_count();
    r["right_cells"] = cells.right.block_count();
    r["two_sided_cells"] = cells.two_sided.block_count();
    Json blocks = Json::array();
    for (const auto& block : cells.two_sided.blocks()) {
      Json words = Json::array();
      for (auto i : block) words.push_back(p.format_word(b[i].word));
      blocks.push_back(words);
    }
    r["two_sided"] = blocks;
    return Result{r, {}};
  });
  s.finish(j);
  return kOk;
}

int cmd_cells_conjectural(const Options& o) {
  Session s(o);
  const ValidatedK& k = s.k();
  const Json j = s.cached("reports/conjectural" + rtag(o.radius) + ".json", s.ws().stamp(o.radius, k.k()), {}, [&] {
    return Result{partition_report(s.partition(), s.ball(o.radius), o.trust_margin), {}};
  });
  s.partition();  // automata land in fsa/ even on a warm report
  s.finish(j);
  return kOk;
}

int cmd_cells_compare(const Options& o) {
  Session s(o);
  const ValidatedK& k = s.k();
  const std::string rel = "reports/compare" + rtag(o.radius) + ".m" + std::to_string(o.trust_margin) + ".json";
  const Json j = s.cached(rel, s.ws().stamp(o.radius, k.k()), {}, [&] {
    const KLTable table(s.ball(o.radius));
    const auto& part = s.partition();
    const std::size_t top = part.data().levels();
    const auto specs = one_sided_cells(part, top, s.ball(std::min<std::size_t>(o.radius, 10)));
    const ComparisonReport rep = empirical_vs_conjectural(table, empirical_cells(table), part, o.trust_margin, specs);
    return Result{rep.to_json(s.presentation()), {}};
  });
  s.finish(j);
  return j["disagreements"].empty() ? kOk : kDisagreement;
}

int cmd_fsa_build(const Options& o) {
  Session s(o);
  const ValidatedK& k = s.k();
  const Json j = s.cached("reports/fsa.json", s.ws().stamp(0, k.k()), {"fsa/Red_W.fsa", "fsa/ShortLex.fsa"}, [&] {
    const auto& part = s.partition();
    const Fsa red = canonical_fsa(s.group());
    const Fsa sl = shortlex_fsa(s.group(), k);
    Json r;
    r["group"] = s.presentation().name();
    r["k"] = k.k();
    Json files;
    const auto check = part.check();
    for (const CellLabel& l : all_labels(part.data())) files[l.name()] = part.cell(l).state_count();
    files["Red_W"] = red.state_count();
    files["ShortLex"] = sl.state_count();
    r["states"] = files;
    r["pairwise_disjoint"] = check.pairwise_disjoint;
    r["covers"] = check.covers;
    return Result{r, {{"fsa/Red_W.fsa", fsa_text(red)}, {"fsa/ShortLex.fsa", fsa_text(sl)}}};
  });
  s.finish(j);
  return j["pairwise_disjoint"].get<bool>() && j["covers"].get<bool>() ? kOk : kDisagreement;
}

int cmd_fsa_stats(const Options& o) {
  if (o.files.size() != 1) throw Error(ErrorCode::BadConfig, "fsa stats takes one file");
  const Fsa f = Fsa::load(o.files[0]);
  const Analysis a = analyze(f, o.radius);
  Json j;
  j["file"] = o.files[0];
  j["states"] = f.state_count();
  j["edges"] = f.edge_count();
  j["deterministic"] = f.is_deterministic();
  j["empty"] = is_empty(f);
  Json counts = Json::array();
  for (const auto& c : a.counts) counts.push_back(c.get_str());
  j["counts_by_length"] = counts;
  std::cout << j.dump(2) << "\n";
  return kOk;
}

int cmd_fsa_equiv(const Options& o) {
  if (o.files.size() != 2) throw Error(ErrorCode::BadConfig, "fsa equiv takes two files");
  const bool same = are_equivalent(Fsa::load(o.files[0]), Fsa::load(o.files[1]));
  std::cout << Json{{"equivalent", same}}.dump(2) << "\n";
  return same ? kOk : kDisagreement;
}

int cmd_onesided(const Options& o) {
  Session s(o);
  const ValidatedK& k = s.k();
  const std::size_t level = o.level == 0 ? dihedral_data(s.presentation()).levels() : o.level;
  const std::string rel = "reports/onesided.L" + std::to_string(level) + rtag(o.radius) + ".json";
  const Json j = s.cached(rel, s.ws().stamp(o.radius, k.k()), {}, [&] {
    const auto& part = s.partition();
    const Presentation& p = s.presentation();
    const ElementBall& b = s.ball(o.radius);
    const MinimalTranslators mt = omega_minimal(part, level, b);
    const auto specs = one_sided_cells(part, level, b);
    Result r;
    r.report["group"] = p.name();
    r.report["level"] = level;
    r.report["radius"] = o.radius;
    r.report["candidates"] = mt.candidates;
    Json list = Json::array();
    for (const auto& spec : specs) {
      const std::string w = p.format_word(spec.translator.word);
      const std::string stem = "fsa/onesided/L" + std::to_string(level) + "_" + p.format_set(spec.pair) + "_" +
                               (w.empty() ? "1" : w);
      r.extra.push_back({stem + ".right.fsa", fsa_text(spec.right_cell)});
      r.extra.push_back({stem + ".left.fsa", fsa_text(spec.left_cell)});
      list.push_back({{"pair", p.format_set(spec.pair)},
                      {"translator", w},
                      {"right_states", spec.right_cell.state_count()},
                      {"right_fsa", stem + ".right.fsa"},
                      {"left_fsa", stem + ".left.fsa"}});
    }
    r.report["specs"] = list;
    r.report["cross_pair_log"] = mt.cross_pair_log;
    const CoverageCheck cov = coverage_check(part, level, specs, o.radius);
    r.report["coverage"] = {{"inside", cov.inside},
                            {"exact", cov.exact},
                            {"bounded_radius", cov.radius},
                            {"bounded", cov.bounded},
                            {"first_gap", cov.first_gap}};
    return r;
  });
  s.finish(j);
  return kOk;
}

Json oracle_suite(Session& s, std::size_t radius, bool& passed) {
  const auto& part = s.partition();
  const OracleCheck oc = oracle_equivalence(part, s.ball(radius));
  const auto check = part.check();
  const Census c0 = unique_reduced_census(s.ball(radius));
  const Census c1 = unique_reduced_census(s.ball(radius + 2));
  passed = passed && oc.passed() && check.pairwise_disjoint && check.covers;
  Json j;
  j["elements"] = oc.elements;
  j["reduced_words"] = oc.words;
  j["disagreements"] = words_json(s.presentation(), oc.disagreeing);
  j["fsa_mismatches"] = oc.fsa_mismatches;
  j["inconclusive"] = oc.inconclusive;
  j["pairwise_disjoint"] = check.pairwise_disjoint;
  j["covers"] = check.covers;
  j["census"] = {{"radius", radius}, {"count", c0.count()}, {"stable_at_plus_2", c0.count() == c1.count()}};
  return j;
}

Json kl_suite(Session& s, std::size_t radius, bool& passed) {
  const KLTable table(s.ball(radius));
  const std::size_t identity = table.check_inversion_identity();
  const ClassicalKL oracle(s.group(), std::min<std::size_t>(radius, 8));
  const auto cc = kl_cross_check_all(oracle, table);
  passed = passed && identity == 0 && cc.disagreements == 0;
  return {{"identity_failures", identity},
          {"classical_max_length", oracle.max_length()},
          {"classical_pairs", cc.pairs},
          {"classical_disagreements", cc.disagreements}};
}

int cmd_verify(const Options& o, const std::string& mode) {
  Session s(o);
  const std::size_t k = mode == "kl" ? 0 : s.k().k();
  const std::string rel = "reports/verify." + mode + rtag(o.radius) + ".json";
  const Json j = s.cached(rel, s.ws().stamp(o.radius, k), {}, [&] {
    bool passed = true;
    Json r;
    r["group"] = s.presentation().name();
    r["radius"] = o.radius;
    if (mode != "kl") r["oracles"] = oracle_suite(s, o.radius, passed);
    if (mode != "oracles") r["kl"] = kl_suite(s, o.radius, passed);
    if (mode == "all") {
      const auto& part = s.partition();
      const KLTable table(s.ball(o.radius));
      const std::size_t top = part.data().levels();
      const auto specs = one_sided_cells(part, top, s.ball(o.radius));
      const ComparisonReport rep = empirical_vs_conjectural(table, empirical_cells(table), part, o.trust_margin, specs);
      r["comparison"] = rep.to_json(s.presentation());
      passed = passed && rep.disagreements.empty();
      std::size_t words = 0, mismatches = 0;
      for (const auto& spec : specs) {
        const TranslationCheck tc = translation_check(spec, part.data(), s.ball(o.radius));
        words += tc.words;
        mismatches += tc.mismatches;
      }
      const CoverageCheck cov = coverage_check(part, top, specs, o.radius);
      r["translation"] = {{"specs", specs.size()}, {"words", words}, {"mismatches", mismatches}};
      r["coverage"] = {{"inside", cov.inside}, {"exact", cov.exact}, {"bounded", cov.bounded}};
      passed = passed && mismatches == 0 && cov.inside;
    }
    r["passed"] = passed;
    return Result{r, {}};
  });
  s.finish(j);
  return j["passed"].get<bool>() ? kOk : kDisagreement;
}

int cmd_render(const Options& o) {
  Session s(o);
  RenderConfig cfg;
  cfg.size_px = o.size_px;
  cfg.coloring = o.coloring;
  for (const auto& entry : o.palette) {
    const auto eq = entry.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::BadConfig, "--palette expects key=#rrggbb");
    cfg.palette[entry.substr(0, eq)] = entry.substr(eq + 1);
  }
  std::string tag = o.coloring;
  std::replace(tag.begin(), tag.end(), ':', '_');
  const std::string rel = "render/" + tag + rtag(o.radius) + ".s" + std::to_string(o.size_px) + ".svg";
  const Stamp stamp = s.ws().stamp(o.radius, s.k().k());
  if (!cfg.palette.empty() || !s.ws().fresh(rel, stamp)) {
    const auto& part = s.partition();
    const ElementBall& b = s.ball(o.radius);
    const PolygonRealization poly = realize_polygon(s.presentation());
    std::vector<std::string> keys;
    if (o.coloring == "twosided") {
      keys = twosided_keys(part, b);
    } else if (o.coloring.rfind("onesided:", 0) == 0) {
      const std::size_t level = std::stoul(o.coloring.substr(9));
      if (level == 0 || level > part.data().levels()) throw Error(ErrorCode::BadConfig, "no such level");
      keys = onesided_keys(part, one_sided_cells(part, level, s.ball(std::max<std::size_t>(o.radius, 10))), level, b);
    } else {
      throw Error(ErrorCode::BadConfig, "--coloring expects twosided or onesided:<level>");
    }
    const std::string svg = render_svg(make_scene(b, poly, tile(b, poly), keys, cfg));
    if (cfg.palette.empty()) {
      s.ws().commit(rel, svg, stamp);
    } else {
      for (const auto& line : s.ws().log()) std::cerr << line << "\n";
      if (!o.out.empty()) write_atomic(o.out, svg);
      std::cout << Json{{"svg_bytes", svg.size()}}.dump(2) << "\n";
      return kOk;
    }
  }
  const std::string svg = s.ws().read(rel);
  s.finish(Json{{"file", rel}, {"svg_bytes", svg.size()}}, rel);
  return kOk;
}

void error_json(const std::string& code, const std::string& message) {
  std::cerr << Json{{"error", code}, {"message", message}}.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kazhdan-Lusztig cells of hyperbolic polygon groups"};
  app.require_subcommand(1);
  Options o;
  std::function<int()> action;

  auto leaf = [&](CLI::App* parent, const char* name, const char* help, std::function<int()> fn) {
    CLI::App* sub = parent->add_subcommand(name, help);
    sub->callback([&action, fn] { action = fn; });
    return sub;
  };

  CLI::App* group = app.add_subcommand("group", "presentation data");
  group->require_subcommand(1);
  add_common(leaf(group, "info", "Coxeter matrix, dihedral data, automaton sizes", [&] { return cmd_group_info(o); }), o);
  add_common(leaf(&app, "ball", "elements up to a length", [&] { return cmd_ball(o); }), o);
  add_common(leaf(&app, "kl", "Kazhdan-Lusztig table", [&] { return cmd_kl(o); }), o);

  CLI::App* cells = app.add_subcommand("cells", "cell partitions");
  cells->require_subcommand(1);
  add_common(leaf(cells, "empirical", "W-graph cells", [&] { return cmd_cells_empirical(o); }), o);
  add_common(leaf(cells, "conjectural", "partition automata and report", [&] { return cmd_cells_conjectural(o); }), o);
  add_common(leaf(cells, "compare", "empirical versus conjectural", [&] { return cmd_cells_compare(o); }), o);

  CLI::App* fsa = app.add_subcommand("fsa", "automata");
  fsa->require_subcommand(1);
  add_common(leaf(fsa, "build", "all partition automata", [&] { return cmd_fsa_build(o); }), o);
  CLI::App* stats = leaf(fsa, "stats", "size and path counts of a stored automaton", [&] { return cmd_fsa_stats(o); });
  stats->add_option("file", o.files)->required()->expected(1);
  stats->add_option("--radius", o.radius, "count words up to this length")->capture_default_str();
  stats->add_option("--workspace", o.workspace, "unused");
  CLI::App* equiv = leaf(fsa, "equiv", "language equality of two stored automata", [&] { return cmd_fsa_equiv(o); });
  equiv->add_option("files", o.files)->required()->expected(2);
  equiv->add_option("--workspace", o.workspace, "unused");

  CLI::App* onesided = leaf(&app, "onesided", "minimal translators and one-sided cells", [&] { return cmd_onesided(o); });
  add_common(onesided, o);
  onesided->add_option("--level", o.level, "level (default: top)");

  CLI::App* verify = app.add_subcommand("verify", "oracle suites");
  verify->require_subcommand(1);
  const std::pair<const char*, const char*> modes[] = {
      {"all", "every suite"}, {"oracles", "automata against braid closure"}, {"kl", "KL identities and recursion"}};
  for (const auto& [mode, help] : modes) {
    const std::string m = mode;
    add_common(leaf(verify, mode, help, [&o, m] { return cmd_verify(o, m); }), o);
  }

  CLI::App* render = leaf(&app, "render", "Poincare disk SVG", [&] { return cmd_render(o); });
  add_common(render, o);
  render->add_option("--coloring", o.coloring, "twosided or onesided:<level>")->capture_default_str();
  render->add_option("--size", o.size_px, "pixel size")->capture_default_str();
  render->add_option("--palette", o.palette, "color override key=#rrggbb");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    error_json("Usage", e.what());
    return kUsage;
  }
  try {
    return action ? action() : kUsage;
  } catch (const Error& e) {
    error_json(std::string(to_string(e.code())), e.what());
    return kUsage;
  } catch (const std::exception& e) {
    error_json("Internal", e.what());
    return kUsage;
  }
}
