#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "sqdeg/io.hpp"

using namespace sqdeg;

namespace {

struct RunResult {
  int exit_code = -1;
  json output;
};

RunResult run_cli(const std::string& args) {
  std::string out_path = "cli_out.json";
  std::string cmd = std::string(SQDEG_BIN_PATH) + " " + args + " > " + out_path + " 2>/dev/null";
  int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out_path);
  if (in.peek() != std::ifstream::traits_type::eof()) {
    try {
      in >> r.output;
    } catch (...) {
    }
  }
  std::remove(out_path.c_str());
  return r;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
}

}  // namespace

TEST_CASE("degsq subcommand on a diagonal family") {
  json fam;
  fam["depth"] = 2;
  fam["trees"] = json::array();
  json tree = json::array();
  tree.push_back(json::array({"", ""}));
  tree.push_back(json::array({"0", "0"}));
  tree.push_back(json::array({"1", "1"}));
  tree.push_back(json::array({"00", "00"}));
  fam["trees"].push_back(tree);
  write_json_file("cli_diag.json", fam);

  RunResult r = run_cli("degsq --family cli_diag.json");
  CHECK(r.exit_code == 0);
  CHECK(r.output["result"]["degree"] == json(0));
  std::remove("cli_diag.json");
}

TEST_CASE("malformed input exits 2") {
  write_file("cli_bad.json", "{ not json");
  RunResult r = run_cli("degsq --family cli_bad.json");
  CHECK(r.exit_code == 2);
  CHECK(r.output["result"].contains("error"));
  std::remove("cli_bad.json");
}

TEST_CASE("unknown flags exit 2") {
  RunResult r = run_cli("degsq --no-such-flag");
  CHECK(r.exit_code == 2);
}

TEST_CASE("domain failures exit 1") {
  RunResult r = run_cli("build --alpha 2 --budget 2");
  CHECK(r.exit_code == 1);

  write_file("cli_fns.json", R"([{"arity":1,"table":[2,2,2,2,2]}])");
  RunResult f = run_cli("free-set --universe 5 --functions cli_fns.json --target 5");
  CHECK(f.exit_code == 1);
  RunResult g = run_cli("free-set --universe 5 --functions cli_fns.json --target 4");
  CHECK(g.exit_code == 0);
  CHECK(g.output["result"]["set"] == json::array({0, 1, 3, 4}));
  std::remove("cli_fns.json");
}

TEST_CASE("emitted artifacts round-trip through their loaders") {
  RunResult b = run_cli("build --alpha 1 -o cli_fam.json --no-measure");
  REQUIRE(b.exit_code == 0);
  TreeFamily fam = family_from_json(read_json_file("cli_fam.json"));
  CHECK(fam.depth == b.output["result"]["depth"].get<int>());

  RunResult fs = run_cli("find-square --family cli_fam.json -o cli_wit.json");
  REQUIRE(fs.exit_code == 0);
  SquareWitness w = square_witness_from_json(read_json_file("cli_wit.json"));
  CHECK(static_cast<int>(w.points.size()) == fs.output["result"]["size"].get<int>());

  RunResult enc = run_cli("encode square --family cli_fam.json --witness cli_wit.json -o cli_model.json");
  REQUIRE(enc.exit_code == 0);
  CHECK_NOTHROW(model_from_json(read_json_file("cli_model.json"), 16));

  RunResult rk = run_cli("rank --model cli_model.json --max-arity 16");
  CHECK(rk.exit_code == 0);
  CHECK(rk.output["result"].contains("model_rank"));

  std::remove("cli_fam.json");
  std::remove("cli_wit.json");
  std::remove("cli_model.json");
}

TEST_CASE("extraction failures exit 1 with a diagnostic") {
  json fam;
  fam["depth"] = 1;
  fam["trees"] = json::array();
  json tree = json::array();
  tree.push_back(json::array({"", ""}));
  tree.push_back(json::array({"0", "0"}));
  tree.push_back(json::array({"1", "1"}));
  fam["trees"].push_back(tree);
  write_json_file("cli_diag1.json", fam);
  json wit;
  wit["points"] = json::array({"0"});
  wit["pairing"] = json::array({json::array({0})});
  write_json_file("cli_wit1.json", wit);

  RunResult r = run_cli("extract-square --family cli_diag1.json --witness cli_wit1.json --depth 1");
  CHECK(r.exit_code == 1);
  CHECK(r.output["result"]["blocking_node"] == json("<root>"));
  std::remove("cli_diag1.json");
  std::remove("cli_wit1.json");
}

TEST_CASE("reports are deterministic apart from timing") {
  json fam;
  fam["depth"] = 1;
  fam["trees"] = json::array();
  json tree = json::array();
  tree.push_back(json::array({"", ""}));
  tree.push_back(json::array({"0", "0"}));
  fam["trees"].push_back(tree);
  write_json_file("cli_det.json", fam);
  RunResult a = run_cli("degsq --family cli_det.json");
  RunResult b = run_cli("degsq --family cli_det.json");
  REQUIRE(a.exit_code == 0);
  CHECK(a.output["schema"] == json("sqdeg-report/1"));
  a.output.erase("timing_ms");
  b.output.erase("timing_ms");
  CHECK(a.output == b.output);
  std::remove("cli_det.json");
}

TEST_CASE("souslin degrees through the command line") {
  json fam;
  fam["depth"] = 2;
  fam["kappa"] = 1;
  json tree = json::array();
  tree.push_back(json::array({"", "", ""}));
  for (const char* s : {"0", "1"})
    for (const char* t : {"0", "1"}) tree.push_back(json::array({s, t, "0"}));
  for (const char* s : {"00", "01", "10", "11"})
    for (const char* t : {"00", "01", "10", "11"}) tree.push_back(json::array({s, t, "00"}));
  fam["tree"] = tree;
  write_json_file("cli_sous.json", fam);

  RunResult whole = run_cli("degsq --family cli_sous.json --souslin");
  CHECK(whole.exit_code == 0);
  CHECK(whole.output["result"]["degree"] == json(1));

  json entry;
  entry["u"] = json::array({"0"});
  entry["f"] = json::array({json::array({"0"})});
  write_json_file("cli_sous_entry.json", entry);
  RunResult at = run_cli("degsq --family cli_sous.json --souslin --entry cli_sous_entry.json");
  CHECK(at.exit_code == 0);
  CHECK(at.output["result"]["degree"] == json(0));

  std::remove("cli_sous.json");
  std::remove("cli_sous_entry.json");
}

TEST_CASE("two-sorted ranks through the command line") {
  json m;
  m["universe"] = 4;
  m["relations"] = json::array();
  m["sort1"] = json::array({0, 1});
  m["sort2"] = json::array({2, 3});
  m["colors"] = json::array({json::array({0, 0}), json::array({0, 0})});
  write_json_file("cli_two.json", m);
  RunResult pair = run_cli("rkrc --model cli_two.json --w1 0 --w2 2");
  CHECK(pair.exit_code == 0);
  CHECK(pair.output["result"].contains("pair_value"));
  RunResult agg = run_cli("rkrc --model cli_two.json");
  CHECK(agg.exit_code == 0);
  CHECK(agg.output["result"]["model_at_color"].contains("0"));
  std::remove("cli_two.json");
}

TEST_CASE("job counts never change the payload") {
  json m;
  m["universe"] = 5;
  m["relations"] = json::array();
  m["relations"].push_back(
      json{{"name", "e"}, {"arity", 2}, {"tuples", json::array({json::array({0, 1}), json::array({2, 3})})}});
  write_json_file("cli_jobs.json", m);
  RunResult one = run_cli("rank --model cli_jobs.json --jobs 1");
  RunResult three = run_cli("rank --model cli_jobs.json --jobs 3");
  REQUIRE(one.exit_code == 0);
  REQUIRE(three.exit_code == 0);
  CHECK(one.output["result"] == three.output["result"]);
  std::remove("cli_jobs.json");
}

TEST_CASE("selftest passes") {
  RunResult r = run_cli("selftest");
  CHECK(r.exit_code == 0);
  CHECK(r.output["result"]["failures"] == json(0));
}
