#pragma once

#include <string>

#include <json.hpp>

#include "sqdeg/builder.hpp"
#include "sqdeg/coloring.hpp"
#include "sqdeg/encode.hpp"
#include "sqdeg/model.hpp"
#include "sqdeg/rectrank.hpp"
#include "sqdeg/search.hpp"
#include "sqdeg/treedeg.hpp"
#include "sqdeg/trees.hpp"

namespace sqdeg {

using json = nlohmann::json;

json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

// strict loaders: unknown shapes, duplicate tuples and range violations all
// throw input_error
FiniteModel model_from_json(const json& j, int max_arity = default_max_arity);
json model_to_json(const FiniteModel& m);

TwoSortedModel two_sorted_from_json(const json& j, int max_arity = default_max_arity);
json two_sorted_to_json(const TwoSortedModel& m);

TreeFamily family_from_json(const json& j);
json family_to_json(const TreeFamily& f);

SouslinFamily souslin_from_json(const json& j);
json souslin_to_json(const SouslinFamily& f);

RectTree rect_tree_from_json(const json& j);
json rect_tree_to_json(const RectTree& t);

PairColoring coloring_from_json(const json& j);
json coloring_to_json(const PairColoring& c);

PfapEntry entry_from_json(const json& j);
json entry_to_json(const PfapEntry& e);
SouslinEntry souslin_entry_from_json(const json& j);

SquareWitness square_witness_from_json(const json& j);
json square_witness_to_json(const SquareWitness& w);
SouslinWitness souslin_witness_from_json(const json& j);
RectWitness rect_witness_from_json(const json& j);
json rect_witness_to_json(const RectWitness& w);

std::vector<FreeFunction> functions_from_json(const json& j);

json deg_to_json(const DegValue& v);
json chain_to_json(const ApproxChain& c);
json pattern_to_json(const SquarePattern& p);

// uniform machine-readable report envelope
struct Report {
  std::string command;
  std::vector<std::pair<std::string, std::string>> inputs;  // path, digest
  json result;
  json certificate;
  double timing_ms = 0.0;

  json to_json() const;
  std::string to_text() const;
};

std::string file_digest(const std::string& path);

}  // namespace sqdeg
