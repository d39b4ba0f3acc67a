#include "sqdeg/io.hpp"

#include <fstream>
#include <sstream>

namespace sqdeg {

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw input_error("malformed JSON in " + path + ": " + e.what());
  }
  return j;
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw input_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  std::string bytes = ss.str();
  return hex64(fnv1a64(bytes.data(), bytes.size()));
}

namespace {

void expect_object(const json& j, const char* what) {
  if (!j.is_object()) throw input_error(std::string(what) + " must be a JSON object");
}

int get_int(const json& j, const char* key, const char* what) {
  if (!j.contains(key) || !j[key].is_number_integer())
    throw input_error(std::string(what) + " needs integer field \"" + key + "\"");
  return j[key].get<int>();
}

std::string get_string_item(const json& j, const char* what) {
  if (!j.is_string()) throw input_error(std::string(what) + " must be a string");
  return j.get<std::string>();
}

}  // namespace

FiniteModel model_from_json(const json& j, int max_arity) {
  expect_object(j, "model");
  FiniteModel m;
  m.universe = get_int(j, "universe", "model");
  m.max_arity = max_arity;
  if (j.contains("relations")) {
    if (!j["relations"].is_array()) throw input_error("model relations must be an array");
    for (const json& rj : j["relations"]) {
      expect_object(rj, "relation");
      Relation r;
      if (!rj.contains("name") || !rj["name"].is_string())
        throw input_error("relation needs a string name");
      r.name = rj["name"].get<std::string>();
      r.arity = get_int(rj, "arity", "relation");
      if (!rj.contains("tuples") || !rj["tuples"].is_array())
        throw input_error("relation " + r.name + " needs a tuples array");
      for (const json& tj : rj["tuples"]) {
        if (!tj.is_array()) throw input_error("tuple must be an array");
        std::vector<int> t;
        for (const json& v : tj) {
          if (!v.is_number_integer()) throw input_error("tuple entries must be integers");
          t.push_back(v.get<int>());
        }
        if (!r.tuples.insert(t).second)
          throw input_error("relation " + r.name + " lists a duplicate tuple");
      }
      m.relations.push_back(std::move(r));
    }
  }
  validate_model(m);
  return m;
}

json model_to_json(const FiniteModel& m) {
  json j;
  j["universe"] = m.universe;
  j["relations"] = json::array();
  for (const Relation& r : m.relations) {
    json rj;
    rj["name"] = r.name;
    rj["arity"] = r.arity;
    rj["tuples"] = json::array();
    for (const auto& t : r.tuples) rj["tuples"].push_back(t);
    j["relations"].push_back(std::move(rj));
  }
  return j;
}

TwoSortedModel two_sorted_from_json(const json& j, int max_arity) {
  expect_object(j, "two-sorted model");
  TwoSortedModel m;
  m.base = model_from_json(j, max_arity);
  for (const char* key : {"sort1", "sort2"}) {
    if (!j.contains(key) || !j[key].is_array())
      throw input_error(std::string("two-sorted model needs array \"") + key + "\"");
  }
  for (const json& v : j["sort1"]) m.sort1.push_back(v.get<int>());
  for (const json& v : j["sort2"]) m.sort2.push_back(v.get<int>());
  if (!j.contains("colors") || !j["colors"].is_array())
    throw input_error("two-sorted model needs a colors matrix");
  for (const json& row : j["colors"]) {
    std::vector<int> r;
    for (const json& v : row) r.push_back(v.get<int>());
    m.colors.push_back(std::move(r));
  }
  if (j.contains("aux_pred"))
    for (const json& v : j["aux_pred"]) m.aux_pred.push_back(v.get<int>());
  validate_two_sorted(m);
  return m;
}

json two_sorted_to_json(const TwoSortedModel& m) {
  json j = model_to_json(m.base);
  j["sort1"] = m.sort1;
  j["sort2"] = m.sort2;
  j["colors"] = m.colors;
  if (!m.aux_pred.empty()) j["aux_pred"] = m.aux_pred;
  return j;
}

TreeFamily family_from_json(const json& j) {
  expect_object(j, "family");
  TreeFamily f;
  f.depth = get_int(j, "depth", "family");
  if (!j.contains("trees") || !j["trees"].is_array())
    throw input_error("family needs a trees array");
  for (const json& tj : j["trees"]) {
    if (!tj.is_array()) throw input_error("each tree must be an array of pairs");
    std::set<std::pair<std::string, std::string>> tree;
    for (const json& pj : tj) {
      if (!pj.is_array() || pj.size() != 2)
        throw input_error("tree pairs must be two-element arrays");
      tree.insert({get_string_item(pj[0], "tree pair"), get_string_item(pj[1], "tree pair")});
    }
    f.trees.push_back(std::move(tree));
  }
  validate_family(f);
  return f;
}

json family_to_json(const TreeFamily& f) {
  json j;
  j["depth"] = f.depth;
  j["trees"] = json::array();
  for (const auto& tree : f.trees) {
    json tj = json::array();
    for (const auto& [a, b] : tree) tj.push_back(json::array({a, b}));
    j["trees"].push_back(std::move(tj));
  }
  return j;
}

SouslinFamily souslin_from_json(const json& j) {
  expect_object(j, "souslin family");
  SouslinFamily f;
  f.depth = get_int(j, "depth", "souslin family");
  f.kappa = get_int(j, "kappa", "souslin family");
  // canonical key is "tree"; a single-tree "trees" wrapper is also accepted
  json triples;
  if (j.contains("tree") && j["tree"].is_array()) {
    triples = j["tree"];
  } else if (j.contains("trees") && j["trees"].is_array() && j["trees"].size() == 1 &&
             j["trees"][0].is_array()) {
    triples = j["trees"][0];
  } else {
    throw input_error("souslin family needs a tree array of triples");
  }
  for (const json& tj : triples) {
    if (!tj.is_array() || tj.size() != 3)
      throw input_error("souslin entries must be three-element arrays");
    f.tree.insert({get_string_item(tj[0], "souslin triple"),
                   get_string_item(tj[1], "souslin triple"),
                   get_string_item(tj[2], "souslin triple")});
  }
  validate_souslin(f);
  return f;
}

json souslin_to_json(const SouslinFamily& f) {
  json j;
  j["depth"] = f.depth;
  j["kappa"] = f.kappa;
  j["tree"] = json::array();
  for (const auto& t : f.tree) j["tree"].push_back(json::array({t[0], t[1], t[2]}));
  return j;
}

RectTree rect_tree_from_json(const json& j) {
  expect_object(j, "tree");
  RectTree t;
  t.depth = get_int(j, "depth", "tree");
  t.branching = get_int(j, "branching", "tree");
  json pairs;
  if (j.contains("pairs") && j["pairs"].is_array()) {
    pairs = j["pairs"];
  } else if (j.contains("trees") && j["trees"].is_array() && j["trees"].size() == 1 &&
             j["trees"][0].is_array()) {
    pairs = j["trees"][0];
  } else {
    throw input_error("tree needs a pairs array");
  }
  for (const json& pj : pairs) {
    if (!pj.is_array() || pj.size() != 2)
      throw input_error("tree pairs must be two-element arrays");
    t.pairs.insert({get_string_item(pj[0], "tree pair"), get_string_item(pj[1], "tree pair")});
  }
  validate_rect_tree(t);
  return t;
}

json rect_tree_to_json(const RectTree& t) {
  json j;
  j["depth"] = t.depth;
  j["branching"] = t.branching;
  j["pairs"] = json::array();
  for (const auto& [a, b] : t.pairs) j["pairs"].push_back(json::array({a, b}));
  return j;
}

PairColoring coloring_from_json(const json& j) {
  expect_object(j, "coloring");
  PairColoring c;
  c.size = get_int(j, "size", "coloring");
  if (!j.contains("colors") || !j["colors"].is_array())
    throw input_error("coloring needs a colors array (upper triangle)");
  for (const json& v : j["colors"]) {
    if (!v.is_number_integer()) throw input_error("colors must be integers");
    c.colors.push_back(v.get<int>());
  }
  validate_coloring(c);
  return c;
}

json coloring_to_json(const PairColoring& c) {
  json j;
  j["size"] = c.size;
  j["colors"] = c.colors;
  return j;
}

PfapEntry entry_from_json(const json& j) {
  expect_object(j, "entry");
  PfapEntry e;
  if (!j.contains("u") || !j["u"].is_array()) throw input_error("entry needs a u array");
  for (const json& v : j["u"]) e.u.push_back(get_string_item(v, "entry node"));
  if (!j.contains("g") || !j["g"].is_array()) throw input_error("entry needs a g matrix");
  for (const json& row : j["g"]) {
    std::vector<int> r;
    for (const json& v : row) r.push_back(v.get<int>());
    e.g.push_back(std::move(r));
  }
  return e;
}

json entry_to_json(const PfapEntry& e) {
  json j;
  j["u"] = e.u;
  j["g"] = e.g;
  return j;
}

SouslinEntry souslin_entry_from_json(const json& j) {
  expect_object(j, "souslin entry");
  SouslinEntry e;
  if (!j.contains("u") || !j["u"].is_array()) throw input_error("entry needs a u array");
  for (const json& v : j["u"]) e.u.push_back(get_string_item(v, "entry node"));
  if (!j.contains("f") || !j["f"].is_array()) throw input_error("entry needs an f matrix");
  for (const json& row : j["f"]) {
    std::vector<std::string> r;
    for (const json& v : row) r.push_back(get_string_item(v, "entry label"));
    e.f.push_back(std::move(r));
  }
  return e;
}

SquareWitness square_witness_from_json(const json& j) {
  expect_object(j, "witness");
  SquareWitness w;
  if (!j.contains("points") || !j["points"].is_array())
    throw input_error("witness needs a points array");
  for (const json& v : j["points"]) w.points.push_back(get_string_item(v, "witness point"));
  if (!j.contains("pairing") || !j["pairing"].is_array())
    throw input_error("witness needs a pairing matrix");
  for (const json& row : j["pairing"]) {
    std::vector<int> r;
    for (const json& v : row) r.push_back(v.get<int>());
    w.pairing.push_back(std::move(r));
  }
  return w;
}

json square_witness_to_json(const SquareWitness& w) {
  json j;
  j["points"] = w.points;
  j["pairing"] = w.pairing;
  return j;
}

SouslinWitness souslin_witness_from_json(const json& j) {
  expect_object(j, "souslin witness");
  SouslinWitness w;
  if (!j.contains("points") || !j["points"].is_array())
    throw input_error("witness needs a points array");
  for (const json& v : j["points"]) w.points.push_back(get_string_item(v, "witness point"));
  if (!j.contains("labels") || !j["labels"].is_array())
    throw input_error("souslin witness needs a labels matrix");
  for (const json& row : j["labels"]) {
    std::vector<std::string> r;
    for (const json& v : row) r.push_back(get_string_item(v, "witness label"));
    w.labels.push_back(std::move(r));
  }
  return w;
}

RectWitness rect_witness_from_json(const json& j) {
  expect_object(j, "rectangle witness");
  RectWitness w;
  for (const char* key : {"left", "right"})
    if (!j.contains(key) || !j[key].is_array())
      throw input_error(std::string("rectangle witness needs array \"") + key + "\"");
  for (const json& v : j["left"]) w.left.push_back(get_string_item(v, "witness point"));
  for (const json& v : j["right"]) w.right.push_back(get_string_item(v, "witness point"));
  return w;
}

json rect_witness_to_json(const RectWitness& w) {
  json j;
  j["left"] = w.left;
  j["right"] = w.right;
  return j;
}

std::vector<FreeFunction> functions_from_json(const json& j) {
  if (!j.is_array()) throw input_error("functions file must be a JSON array");
  std::vector<FreeFunction> out;
  for (const json& fj : j) {
    expect_object(fj, "function");
    FreeFunction f;
    f.arity = get_int(fj, "arity", "function");
    if (!fj.contains("table") || !fj["table"].is_array())
      throw input_error("function needs a table array");
    for (const json& v : fj["table"]) f.table.push_back(v.get<int>());
    out.push_back(std::move(f));
  }
  return out;
}

json deg_to_json(const DegValue& v) {
  if (v.is_bottom) return json("bottom");
  return json(v.fin);
}

json chain_to_json(const ApproxChain& c) {
  json j = json::array();
  for (const ChainEntry& e : c.entries) {
    json ej;
    ej["level"] = e.level;
    ej["u"] = e.u;
    ej["h"] = e.h;
    j.push_back(std::move(ej));
  }
  return j;
}

json pattern_to_json(const SquarePattern& p) {
  json j;
  j["depth"] = p.depth;
  j["leaves"] = p.leaves;
  j["pairing"] = p.pairing;
  j["split_levels"] = p.split_levels;
  return j;
}

json Report::to_json() const {
  json j;
  j["schema"] = "sqdeg-report/1";
  j["command"] = command;
  j["inputs"] = json::array();
  for (const auto& [path, digest] : inputs)
    j["inputs"].push_back(json{{"path", path}, {"digest", digest}});
  j["result"] = result;
  if (!certificate.is_null()) j["certificate"] = certificate;
  j["timing_ms"] = timing_ms;
  return j;
}

std::string Report::to_text() const {
  std::ostringstream out;
  out << "# " << command << "\n";
  for (const auto& [path, digest] : inputs)
    out << "input " << path << " digest " << digest << "\n";
  out << "result " << result.dump() << "\n";
  if (!certificate.is_null()) out << "certificate " << certificate.dump() << "\n";
  out << "timing_ms " << timing_ms << "\n";
  return out.str();
}

}  // namespace sqdeg
