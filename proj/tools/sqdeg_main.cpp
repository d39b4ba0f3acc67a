#include <chrono>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "sqdeg/io.hpp"
#include "sqdeg/rank.hpp"
#include "sqdeg/verify.hpp"

using namespace sqdeg;

namespace {

struct Ctx {
  std::string format = "json";
  std::uint64_t seed = 20290101;
  int jobs = 1;
  int max_arity = default_max_arity;
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  Report report;

  void input(const std::string& path) { report.inputs.emplace_back(path, file_digest(path)); }

  int done(int code) {
    report.timing_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    if (format == "text")
      std::cout << report.to_text();
    else
      std::cout << report.to_json().dump(2) << "\n";
    return code;
  }
};

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stoi(item));
  }
  return out;
}

std::vector<std::string> parse_str_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  bool any = false;
  while (std::getline(ss, item, ',')) {
    out.push_back(item == "-" ? "" : item);
    any = true;
  }
  if (!any) out.push_back("");
  return out;
}

// ---------------------------------------------------------------------------

int cmd_rank(Ctx& ctx, const std::string& model_path, const std::string& variant,
             int closure, int witnesses, int classes, const std::string& set_arg) {
  ctx.input(model_path);
  FiniteModel m = model_from_json(read_json_file(model_path), ctx.max_arity);
  RankParams p;
  p.variant = parse_variant(variant);
  p.closure = closure;
  p.witnesses = witnesses;
  p.classes = classes;
  p.jobs = ctx.jobs;
  RankTable t = rank_table(m, p);
  json sets = json::array();
  if (!set_arg.empty()) {
    std::vector<int> w = parse_int_list(set_arg);
    sets.push_back(json{{"set", w}, {"value", t.value_of(w)}});
  } else if (m.universe <= 10) {
    for (std::uint32_t mask = 1; mask < (1u << m.universe); ++mask)
      sets.push_back(json{{"set", mask_elems(mask)}, {"value", t.value[mask]}});
  }
  ctx.report.result = json{{"model_rank", t.model_rank},
                           {"variant", variant_name(p.variant)},
                           {"closure", p.closure},
                           {"sets", sets}};
  return ctx.done(0);
}

int cmd_rkrc(Ctx& ctx, const std::string& model_path, const std::string& variant,
             int closure, int color, int alpha, const std::string& w1,
             const std::string& w2) {
  ctx.input(model_path);
  TwoSortedModel m = two_sorted_from_json(read_json_file(model_path), ctx.max_arity);
  rank_variant v = parse_variant(variant);
  json res;
  if (!w1.empty() || !w2.empty()) {
    RectPair pair{parse_int_list(w1), parse_int_list(w2)};
    res["pair_value"] = rkrc_of_pair(m, pair, v, closure);
  }
  if (color >= 0) res["model_at_color"] = rkrc_model_at(m, color, v, closure);
  if (alpha >= 0) res["prrd"] = prrd_check(m, alpha, v, closure);
  if (res.is_null()) {
    json per = json::object();
    for (int c : used_colors(m))
      per[std::to_string(c)] = rkrc_model_at(m, c, v, closure);
    res["model_at_color"] = per;
  }
  ctx.report.result = std::move(res);
  return ctx.done(0);
}

int cmd_degsq(Ctx& ctx, const std::string& family_path, const std::string& entry_path,
              bool souslin, int growth) {
  ctx.input(family_path);
  json res;
  if (souslin) {
    SouslinFamily f = souslin_from_json(read_json_file(family_path));
    DegValue v;
    if (!entry_path.empty()) {
      ctx.input(entry_path);
      v = degsq_souslin(f, souslin_entry_from_json(read_json_file(entry_path)));
    } else {
      v = degsq_souslin_family(f);
    }
    res["degree"] = deg_to_json(v);
  } else {
    TreeFamily f = family_from_json(read_json_file(family_path));
    if (!entry_path.empty()) {
      ctx.input(entry_path);
      res["degree"] = deg_to_json(degsq_pair(f, entry_from_json(read_json_file(entry_path))));
    } else {
      res["degree"] = deg_to_json(degsq_family(f));
    }
    if (growth >= 0) {
      GrowthReport g = classify_growth(f, growth);
      json by = json::array();
      for (const DegValue& d : g.by_depth) by.push_back(deg_to_json(d));
      res["growth"] = json{{"by_depth", by}, {"flagged", g.flagged}};
    }
  }
  ctx.report.result = std::move(res);
  return ctx.done(0);
}

int cmd_degrc(Ctx& ctx, const std::string& tree_path, const std::string& u1,
              const std::string& u2, bool permissive) {
  ctx.input(tree_path);
  RectTree t = rect_tree_from_json(read_json_file(tree_path));
  DegrcOptions opt;
  opt.permissive = permissive;
  DegValue v = degrc(t, parse_str_list(u1), parse_str_list(u2), opt);
  ctx.report.result = json{{"degree", deg_to_json(v)}, {"permissive", permissive}};
  return ctx.done(0);
}

int cmd_build(Ctx& ctx, int alpha, int budget, const std::string& out_path, bool measure) {
  try {
    BuildResult r = build_family(alpha, budget);
    json res{{"alpha", alpha},
             {"stages", r.stages_used},
             {"depth", r.produced_depth},
             {"trees", r.tree_count}};
    if (measure) res["measured_degree"] = deg_to_json(degsq_family(r.family));
    if (!out_path.empty()) write_json_file(out_path, family_to_json(r.family));
    ctx.report.result = std::move(res);
    return ctx.done(0);
  } catch (const budget_error& e) {
    ctx.report.result = json{{"error", e.what()}, {"residual_queue", e.residual}};
    return ctx.done(1);
  }
}

int cmd_encode(Ctx& ctx, const std::string& kind, const std::string& family_path,
               const std::string& witness_path, const std::vector<std::string>& tree_paths,
               const std::string& coloring_path, const std::string& out_path) {
  json out;
  if (kind == "square") {
    ctx.input(family_path);
    ctx.input(witness_path);
    TreeFamily f = family_from_json(read_json_file(family_path));
    SquareWitness w = square_witness_from_json(read_json_file(witness_path));
    out = model_to_json(induced_model_from_square(f, w));
  } else if (kind == "souslin") {
    ctx.input(family_path);
    ctx.input(witness_path);
    SouslinFamily f = souslin_from_json(read_json_file(family_path));
    SouslinWitness w = souslin_witness_from_json(read_json_file(witness_path));
    out = model_to_json(induced_model_souslin(f, w));
  } else if (kind == "rectangle") {
    std::vector<RectTree> trees;
    for (const std::string& tp : tree_paths) {
      ctx.input(tp);
      trees.push_back(rect_tree_from_json(read_json_file(tp)));
    }
    ctx.input(witness_path);
    RectWitness w = rect_witness_from_json(read_json_file(witness_path));
    out = two_sorted_to_json(induced_twosorted_from_rectangle(trees, w));
  } else if (kind == "coloring") {
    ctx.input(coloring_path);
    PairColoring c = coloring_from_json(read_json_file(coloring_path));
    out = model_to_json(coloring_to_model(c));
  } else {
    throw input_error("unknown encode kind: " + kind);
  }
  if (!out_path.empty()) write_json_file(out_path, out);
  ctx.report.result = json{{"kind", kind}, {"model", out}};
  return ctx.done(0);
}

int cmd_find_square(Ctx& ctx, const std::string& family_path, int cap,
                    const std::string& out_path) {
  ctx.input(family_path);
  TreeFamily f = family_from_json(read_json_file(family_path));
  SquareSearchResult r = find_max_square(f, cap);
  if (!out_path.empty()) write_json_file(out_path, square_witness_to_json(r.witness));
  ctx.report.result =
      json{{"size", r.size}, {"partial", r.partial}, {"points", r.witness.points}};
  ctx.report.certificate = json{{"pairing", r.witness.pairing}};
  return ctx.done(0);
}

int cmd_find_rectangle(Ctx& ctx, const std::vector<std::string>& tree_paths, int left_cap,
                       int right_cap, const std::string& out_path) {
  std::vector<RectTree> trees;
  for (const std::string& tp : tree_paths) {
    ctx.input(tp);
    trees.push_back(rect_tree_from_json(read_json_file(tp)));
  }
  RectangleSearchResult r = find_max_rectangle(trees, left_cap, right_cap);
  if (!out_path.empty()) write_json_file(out_path, rect_witness_to_json(r.witness));
  ctx.report.result = json{{"left_size", r.left_size},
                           {"right_size", r.right_size},
                           {"partial", r.partial},
                           {"left", r.witness.left},
                           {"right", r.witness.right}};
  ctx.report.certificate = json{{"pairing", r.pairing}};
  return ctx.done(0);
}

int cmd_extract(Ctx& ctx, const std::string& family_path, const std::string& witness_path,
                int depth, int quota, const std::string& mode, const std::string& out_path) {
  ctx.input(family_path);
  ctx.input(witness_path);
  TreeFamily f = family_from_json(read_json_file(family_path));
  SquareWitness w = square_witness_from_json(read_json_file(witness_path));
  extract_mode em;
  if (mode == "witness")
    em = extract_mode::witness;
  else if (mode == "rank")
    em = extract_mode::rank;
  else
    throw input_error("mode must be witness or rank");
  ExtractResult r = extract_square_chain(f, w, depth, quota, em);
  if (!r.ok) {
    ctx.report.result = json{{"ok", false},
                             {"blocking_node", r.blocking_node},
                             {"blocked_depth", r.blocked_depth}};
    return ctx.done(1);
  }
  VerifyOutcome vo = verify_chain(f, r.chain);
  if (!out_path.empty()) write_json_file(out_path, chain_to_json(r.chain));
  ctx.report.result = json{{"ok", true}, {"entries", r.chain.entries.size()}};
  ctx.report.certificate = json{{"chain", chain_to_json(r.chain)}, {"verified", vo.ok}};
  if (!vo.ok) {
    ctx.report.result["verifier_reason"] = vo.reason;
    return ctx.done(1);
  }
  return ctx.done(0);
}

int cmd_boost(Ctx& ctx, const std::string& tree_path, const std::string& points_path,
              int rounds, int threshold, const std::string& out_path) {
  ctx.input(tree_path);
  ctx.input(points_path);
  RectTree t = rect_tree_from_json(read_json_file(tree_path));
  json pj = read_json_file(points_path);
  if (!pj.contains("points") || !pj["points"].is_array())
    throw input_error("points file needs a points array");
  std::vector<std::string> points;
  for (const json& v : pj["points"]) points.push_back(v.get<std::string>());
  BoostResult r = closed_set_boost(t, points, rounds, threshold);
  if (!r.ok) {
    ctx.report.result = json{{"ok", false},
                             {"blocking_node", r.blocking_node},
                             {"blocked_round", r.blocked_round}};
    return ctx.done(1);
  }
  VerifyOutcome vo = verify_pattern(t, r.pattern);
  if (!out_path.empty()) write_json_file(out_path, pattern_to_json(r.pattern));
  ctx.report.result = json{{"ok", true}, {"depth", r.pattern.depth}};
  ctx.report.certificate = json{{"pattern", pattern_to_json(r.pattern)}, {"verified", vo.ok}};
  return ctx.done(vo.ok ? 0 : 1);
}

int cmd_free_set(Ctx& ctx, int universe, const std::string& functions_path, int target) {
  ctx.input(functions_path);
  std::vector<FreeFunction> fns = functions_from_json(read_json_file(functions_path));
  FreeSetResult r = find_free_set(universe, fns, target);
  if (!r.ok) {
    ctx.report.result = json{{"ok", false}, {"universe", universe}, {"target", target}};
    return ctx.done(1);
  }
  VerifyOutcome vo = verify_free_set(universe, fns, r.set);
  ctx.report.result = json{{"ok", true}, {"set", r.set}};
  ctx.report.certificate = json{{"verified", vo.ok}};
  return ctx.done(vo.ok ? 0 : 1);
}

int cmd_embed(Ctx& ctx, const std::string& target_path, const std::string& source_path,
              int max_pattern) {
  ctx.input(target_path);
  ctx.input(source_path);
  PairColoring target = coloring_from_json(read_json_file(target_path));
  PairColoring source = coloring_from_json(read_json_file(source_path));
  EmbedResult r = embeds_patterns(target, source, max_pattern);
  json res{{"embeds", r.embeds}};
  if (r.embeds) {
    res["per_size_counts"] = r.per_size_counts;
  } else {
    res["failing_tuple"] = r.failing_tuple;
    res["failing_pattern"] = r.failing_pattern;
  }
  ctx.report.result = std::move(res);
  return ctx.done(0);
}

// small built-in invariant suite; each line is one checked law
int cmd_selftest(Ctx& ctx) {
  rng64 rng(ctx.seed);
  int failures = 0;
  json lines = json::array();
  auto check = [&](const std::string& name, bool ok) {
    lines.push_back(json{{"check", name}, {"ok", ok}});
    if (!ok) ++failures;
  };

  {
    bool ok = true;
    for (int n = 1; n <= 6 && ok; ++n) {
      RankTable t = rank_table(all_constants_model(n), RankParams{});
      if (t.model_rank != 0) ok = false;
      for (std::uint32_t mask = 1; mask < (1u << n); ++mask)
        if (t.value[mask] != -1) ok = false;
    }
    check("all-constants models have rank 0", ok);
  }
  {
    bool ok = true;
    for (int n = 2; n <= 6 && ok; ++n)
      if (rank_table(empty_vocabulary_model(n), RankParams{}).model_rank != n - 1) ok = false;
    check("pure equality models have rank N-1", ok);
  }
  {
    bool ok = true;
    for (int trial = 0; trial < 10 && ok; ++trial) {
      FiniteModel m = empty_vocabulary_model(4);
      Relation r{"p", 1, {}};
      for (int x = 0; x < 4; ++x)
        if (rng.chance(0.5)) r.tuples.insert({x});
      m.relations.push_back(r);
      RankTable t = rank_table(m, RankParams{});
      for (std::uint32_t a = 1; a < 16; ++a)
        for (std::uint32_t b = 1; b < 16; ++b)
          if ((a & b) == a && t.value[a] < t.value[b]) ok = false;
    }
    check("subset anti-monotonicity", ok);
  }
  {
    TreeFamily diag = canned_diagonal(3);
    TreeFamily full = canned_full(3);
    check("diagonal family degree 0", degsq_family(diag) == DegValue::of(0));
    check("full family degree equals depth", degsq_family(full) == DegValue::of(3));
  }
  {
    bool ok = true;
    for (int a = 0; a <= 2 && ok; ++a) {
      BuildResult r = build_family(a, 1000);
      if (degsq_family(r.family) != DegValue::of(a)) ok = false;
    }
    check("builder hits the requested degree", ok);
  }
  {
    TreeFamily full = canned_full(3);
    SquareSearchResult sq = find_max_square(full);
    ExtractResult ex = extract_square_chain(full, sq.witness, 2);
    check("extraction succeeds on the full family",
          ex.ok && verify_chain(full, ex.chain).ok);
    check("max square on the full family is everything", sq.size == 8);
  }
  {
    std::vector<FreeFunction> fns{FreeFunction{1, {0, 1, 2, 3, 4}}};
    FreeSetResult r = find_free_set(5, fns, 5);
    check("identity function frees the whole universe",
          r.ok && verify_free_set(5, fns, r.set).ok);
  }
  {
    PairColoring c{4, {0, 1, 0, 1, 0, 1}};
    check("colorings embed into themselves", embeds_patterns(c, c, 4).embeds);
  }

  ctx.report.result = json{{"failures", failures}, {"checks", lines}};
  return ctx.done(failures == 0 ? 0 : 1);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"desk-scale rank and degree calculus for squares in planar sets"};
  app.require_subcommand(1);
  app.fallthrough();
  Ctx ctx;
  {
    std::ostringstream cmd;
    for (int i = 0; i < argc; ++i) cmd << (i ? " " : "") << argv[i];
    ctx.report.command = cmd.str();
  }
  app.add_option("--format", ctx.format, "json or text")
      ->check(CLI::IsMember({"json", "text"}));
  app.add_option("--seed", ctx.seed, "seed for sampled suites");
  app.add_option("--jobs", ctx.jobs, "worker threads (results are identical)");
  app.add_option("--max-arity", ctx.max_arity, "relation arity bound for loaded models");

  std::string model_path, variant = "0", set_arg;
  int closure = 2, witnesses = 2, classes = 2;
  auto* rank_cmd = app.add_subcommand("rank", "rank table of a model");
  rank_cmd->add_option("--model", model_path)->required();
  rank_cmd->add_option("--variant", variant, "0|1|2|3|part");
  rank_cmd->add_option("--closure", closure);
  rank_cmd->add_option("--witnesses", witnesses);
  rank_cmd->add_option("--classes", classes);
  rank_cmd->add_option("--set", set_arg, "comma-separated elements");

  std::string rk_model, rk_variant = "0", rk_w1, rk_w2;
  int rk_closure = 2, rk_color = -1, rk_alpha = -1;
  auto* rkrc_cmd = app.add_subcommand("rkrc", "rectangle rank of a two-sorted model");
  rkrc_cmd->add_option("--model", rk_model)->required();
  rkrc_cmd->add_option("--variant", rk_variant, "0|1");
  rkrc_cmd->add_option("--closure", rk_closure);
  rkrc_cmd->add_option("--color", rk_color);
  rkrc_cmd->add_option("--alpha", rk_alpha);
  rkrc_cmd->add_option("--w1", rk_w1, "comma-separated sort1 elements");
  rkrc_cmd->add_option("--w2", rk_w2, "comma-separated sort2 elements");

  std::string ds_family, ds_entry;
  bool ds_souslin = false;
  int ds_growth = -1;
  auto* degsq_cmd = app.add_subcommand("degsq", "square degree of a family");
  degsq_cmd->add_option("--family", ds_family)->required();
  degsq_cmd->add_option("--entry", ds_entry);
  degsq_cmd->add_flag("--souslin", ds_souslin);
  degsq_cmd->add_option("--growth", ds_growth, "report degrees at every depth up to this");

  std::string dr_tree, dr_u1, dr_u2;
  bool dr_perm = false;
  auto* degrc_cmd = app.add_subcommand("degrc", "rectangle degree of a pair tree");
  degrc_cmd->add_option("--tree", dr_tree)->required();
  degrc_cmd->add_option("--u1", dr_u1)->required();
  degrc_cmd->add_option("--u2", dr_u2)->required();
  degrc_cmd->add_flag("--permissive", dr_perm);

  int b_alpha = 0, b_budget = 1000;
  std::string b_out;
  bool b_measure = true;
  auto* build_cmd = app.add_subcommand("build", "construct a family of prescribed degree");
  build_cmd->add_option("--alpha", b_alpha)->required();
  build_cmd->add_option("--budget", b_budget);
  build_cmd->add_option("-o,--out", b_out);
  build_cmd->add_flag("!--no-measure", b_measure, "skip measuring the produced degree");

  std::string e_kind, e_family, e_witness, e_coloring, e_out;
  std::vector<std::string> e_trees;
  auto* encode_cmd = app.add_subcommand("encode", "witness-to-structure encodings");
  encode_cmd->add_option("kind", e_kind, "square|souslin|rectangle|coloring")->required();
  encode_cmd->add_option("--family", e_family);
  encode_cmd->add_option("--witness", e_witness);
  encode_cmd->add_option("--tree", e_trees);
  encode_cmd->add_option("--coloring", e_coloring);
  encode_cmd->add_option("-o,--out", e_out);

  std::string fs_family, fs_out;
  int fs_cap = 0;
  auto* fsq_cmd = app.add_subcommand("find-square", "maximum square inside a family");
  fsq_cmd->add_option("--family", fs_family)->required();
  fsq_cmd->add_option("--cap", fs_cap);
  fsq_cmd->add_option("-o,--out", fs_out);

  std::vector<std::string> fr_trees;
  int fr_lcap = 0, fr_rcap = 0;
  std::string fr_out;
  auto* frc_cmd = app.add_subcommand("find-rectangle", "maximum rectangle inside trees");
  frc_cmd->add_option("--tree", fr_trees)->required();
  frc_cmd->add_option("--left-cap", fr_lcap);
  frc_cmd->add_option("--right-cap", fr_rcap);
  frc_cmd->add_option("-o,--out", fr_out);

  std::string ex_family, ex_witness, ex_mode = "witness", ex_out;
  int ex_depth = 1, ex_quota = 2;
  auto* ex_cmd = app.add_subcommand("extract-square", "refinement chain from a witness");
  ex_cmd->add_option("--family", ex_family)->required();
  ex_cmd->add_option("--witness", ex_witness)->required();
  ex_cmd->add_option("--depth", ex_depth)->required();
  ex_cmd->add_option("--quota", ex_quota);
  ex_cmd->add_option("--mode", ex_mode, "witness|rank");
  ex_cmd->add_option("-o,--out", ex_out);

  std::string bo_tree, bo_points, bo_out;
  int bo_rounds = 1, bo_threshold = 2;
  auto* bo_cmd = app.add_subcommand("boost", "binary square pattern inside a closed set");
  bo_cmd->add_option("--tree", bo_tree)->required();
  bo_cmd->add_option("--points", bo_points)->required();
  bo_cmd->add_option("--rounds", bo_rounds)->required();
  bo_cmd->add_option("--threshold", bo_threshold);
  bo_cmd->add_option("-o,--out", bo_out);

  int fre_universe = 1, fre_target = 1;
  std::string fre_functions;
  auto* fre_cmd = app.add_subcommand("free-set", "set free for the given functions");
  fre_cmd->add_option("--universe", fre_universe)->required();
  fre_cmd->add_option("--functions", fre_functions)->required();
  fre_cmd->add_option("--target", fre_target)->required();

  std::string em_target, em_source;
  int em_max = 1;
  auto* em_cmd = app.add_subcommand("embed-check", "pattern embedding between colorings");
  em_cmd->add_option("--target", em_target)->required();
  em_cmd->add_option("--source", em_source)->required();
  em_cmd->add_option("--max", em_max)->required();

  auto* st_cmd = app.add_subcommand("selftest", "run the bundled invariant suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (rank_cmd->parsed())
      return cmd_rank(ctx, model_path, variant, closure, witnesses, classes, set_arg);
    if (rkrc_cmd->parsed())
      return cmd_rkrc(ctx, rk_model, rk_variant, rk_closure, rk_color, rk_alpha, rk_w1, rk_w2);
    if (degsq_cmd->parsed()) return cmd_degsq(ctx, ds_family, ds_entry, ds_souslin, ds_growth);
    if (degrc_cmd->parsed()) return cmd_degrc(ctx, dr_tree, dr_u1, dr_u2, dr_perm);
    if (build_cmd->parsed()) return cmd_build(ctx, b_alpha, b_budget, b_out, b_measure);
    if (encode_cmd->parsed())
      return cmd_encode(ctx, e_kind, e_family, e_witness, e_trees, e_coloring, e_out);
    if (fsq_cmd->parsed()) return cmd_find_square(ctx, fs_family, fs_cap, fs_out);
    if (frc_cmd->parsed()) return cmd_find_rectangle(ctx, fr_trees, fr_lcap, fr_rcap, fr_out);
    if (ex_cmd->parsed())
      return cmd_extract(ctx, ex_family, ex_witness, ex_depth, ex_quota, ex_mode, ex_out);
    if (bo_cmd->parsed()) return cmd_boost(ctx, bo_tree, bo_points, bo_rounds, bo_threshold, bo_out);
    if (fre_cmd->parsed()) return cmd_free_set(ctx, fre_universe, fre_functions, fre_target);
    if (em_cmd->parsed()) return cmd_embed(ctx, em_target, em_source, em_max);
    if (st_cmd->parsed()) return cmd_selftest(ctx);
  } catch (const budget_error& e) {
    ctx.report.result = json{{"error", e.what()}};
    return ctx.done(1);
  } catch (const input_error& e) {
    ctx.report.result = json{{"error", e.what()}};
    return ctx.done(2);
  } catch (const std::exception& e) {
    ctx.report.result = json{{"error", e.what()}};
    return ctx.done(2);
  }
  return 2;
}
