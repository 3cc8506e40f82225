#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "hypcells/error.hpp"
#include "hypcells/kl.hpp"
#include "hypcells/workspace.hpp"

using namespace hypcells;
namespace fs = std::filesystem;

namespace {

fs::path fresh_root(const char* name) {
  const fs::path root = fs::temp_directory_path() / (std::string("hypcells_ws_") + name);
  fs::remove_all(root);
  return root;
}

bool log_has(const Workspace& ws, const std::string& prefix) {
  for (const auto& line : ws.log()) {
    if (line.rfind(prefix, 0) == 0) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("artifact round trip and stamps") {
  const fs::path root = fresh_root("stamps");
  const Presentation& p = testing::w237().presentation();
  {
    Workspace ws(root, p);
    CHECK_FALSE(ws.fresh("x.txt", ws.stamp(4, 6)));
    ws.commit("x.txt", "payload\n", ws.stamp(4, 6));
    CHECK(ws.read("x.txt") == "payload\n");
  }
  Workspace ws(root, p);
  CHECK(ws.fresh("x.txt", ws.stamp(4, 6)));
  CHECK(log_has(ws, "cached x.txt"));
  CHECK_FALSE(ws.fresh("x.txt", ws.stamp(5, 6)));
  CHECK(log_has(ws, "recompute x.txt: stale stamp"));
  Stamp old = ws.stamp(4, 6);
  old.tool_version = "0.0.0";
  CHECK_FALSE(ws.fresh("x.txt", old));
  CHECK(fs::exists(root / "w237" / "meta.json"));
  CHECK_FALSE(fs::exists(root / "w237" / "x.txt.tmp"));

  // Another group in the same directory name invalidates everything.
  const Presentation other("w237", {'r', 's', 't'}, {2, 0, 1},
                           {CoxeterOrder(2), CoxeterOrder(3), CoxeterOrder(8)});
  Workspace changed(root, other);
  CHECK(log_has(changed, "recompute all"));
  CHECK_FALSE(changed.fresh("x.txt", changed.stamp(4, 6)));
}

TEST_CASE("corrupt cache files") {
  const fs::path root = fresh_root("corrupt");
  const Presentation& p = testing::w237().presentation();
  { Workspace ws(root, p); ws.commit("a.txt", "x", ws.stamp(1, 1)); }
  { std::ofstream(root / "w237" / "meta.json") << "{ not json"; }
  try {
    Workspace ws(root, p);
    FAIL("expected CorruptCache");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CorruptCache);
    CHECK(std::string(e.what()).find("meta.json") != std::string::npos);
  }
  fs::remove(root / "w237" / "meta.json");
  Workspace ws(root, p);
  CHECK_THROWS_AS(ws.read("missing.txt"), Error);
}

TEST_CASE("validated k and partition automata are cached") {
  const fs::path root = fresh_root("partition");
  const CoxeterGroup& g = testing::w237();
  std::vector<Fsa> first;
  {
    Workspace ws(root, g.presentation());
    const ValidatedK k = workspace_k(ws, g, 6);
    CHECK(k.k() == 6);
    const ConjecturalPartition part = workspace_partition(ws, g, k);
    first = part.all_cells();
    CHECK(log_has(ws, "computed fsa/C_3.fsa"));
  }
  Workspace ws(root, g.presentation());
  const ValidatedK k = workspace_k(ws, g, std::nullopt);
  CHECK(k.k() == 6);
  CHECK(log_has(ws, "cached validated k"));
  const ConjecturalPartition part = workspace_partition(ws, g, k);
  CHECK(log_has(ws, "cached fsa/C_3.fsa"));
  REQUIRE(part.all_cells().size() == first.size());
  for (std::size_t i = 0; i < first.size(); ++i) CHECK(part.all_cells()[i] == first[i]);
  const auto check = part.check();
  CHECK(check.pairwise_disjoint);
  CHECK(check.covers);

  { std::ofstream(root / "w237" / "fsa" / "C_1.fsa") << "states 2\ngarbage\n"; }
  Workspace broken(root, g.presentation());
  try {
    (void)workspace_partition(broken, g, k);
    FAIL("expected CorruptCache");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CorruptCache);
    CHECK(std::string(e.what()).find("C_1.fsa") != std::string::npos);
  }
  CHECK_THROWS_AS(workspace_k(broken, g, 1), Error);
}

TEST_CASE("KL records round trip") {
  const ElementBall ball(testing::w237(), 6);
  const KLTable table(ball);
  std::ostringstream out;
  table.write_tsv(out);
  std::istringstream in(out.str());
  const auto records = KLTable::read_tsv(in, testing::w237().presentation());
  std::size_t pairs = 0;
  for (ElementBall::Index w = 0; w < table.size(); ++w) {
    for (ElementBall::Index v = 0; v < table.size(); ++v) pairs += table.bruhat_leq(v, w);
  }
  REQUIRE(records.size() == pairs);
  for (const auto& r : records) {
    const auto v = ball.index_of(testing::w237().normal_form(r.v));
    const auto w = ball.index_of(testing::w237().normal_form(r.w));
    CHECK(r.p == table.kl_poly(v, w));
    CHECK(r.r == table.r_poly(v, w));
    CHECK(r.mu == table.mu(v, w));
  }
}
