#include "spelect/cli.hpp"

#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "spelect/errors.hpp"
#include "spelect/io.hpp"
#include "spelect/oracles.hpp"
#include "verify.hpp"

namespace spelect {

namespace {

using nlohmann::json;

ElectionDocument load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return parse_election(text.str());
  } catch (const ParseError& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

json axis_ids(const ElectionDocument& doc, const std::optional<Axis>& axis) {
  if (!axis) return nullptr;
  json out = json::array();
  for (int c : axis->order) out.push_back(doc.candidates[c]);
  return out;
}

std::vector<Score> parse_items(const std::string& text) {
  std::vector<Score> items;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      items.push_back(std::stoll(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw InvalidInput("non-integer item '" + tok + "'");
    }
  }
  return items;
}

json checks_json(const std::vector<CheckResult>& checks, int& mismatches) {
  json arr = json::array();
  for (const auto& c : checks) {
    if (!c.agree) ++mismatches;
    arr.push_back({{"agree", c.agree}, {"model", c.model}, {"oracle", c.oracle}, {"problem", c.problem},
                   {"solver", c.solver}});
  }
  return arr;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Control and manipulation solvers for single-peaked elections", "spelect"};
  app.require_subcommand(1);

  std::string file, model_text = "unique", rule_text, action, gen_kind;
  Score budget = 0;
  std::size_t max_states = ExactLimits{}.max_states;

  auto* check_axis = app.add_subcommand("check-axis", "Check the AXIS section against the ballots");
  check_axis->add_option("FILE", file)->required();

  auto* find_axis = app.add_subcommand("find-axis", "Find an axis the ballots are single-peaked for");
  find_axis->add_option("FILE", file)->required();

  auto* winners_cmd = app.add_subcommand("winners", "Scores and winners under a rule");
  winners_cmd->add_option("FILE", file)->required();
  winners_cmd->add_option("--rule", rule_text, "approval|plurality|veto|borda|score:a1,a2,...");
  winners_cmd->add_option("--model", model_text, "unique|nonunique");

  auto* control = app.add_subcommand("control", "Solve a control problem");
  control->add_option("ACTION", action, "ccav|ccdv|ccac|ccuac|dcac|dcuac|ccdc|dcdc")->required();
  control->add_option("FILE", file)->required();
  control->add_option("-k", budget, "Budget");
  control->add_option("--model", model_text, "unique|nonunique");

  auto* manip = app.add_subcommand("manip", "Coalitional weighted manipulation");
  manip->add_option("FILE", file)->required();
  manip->add_option("--rule", rule_text, "Overrides the RULE section");
  manip->add_option("--model", model_text, "unique|nonunique");
  manip->add_option("--max-states", max_states, "State cap for the exact solver");

  auto* gen = app.add_subcommand("gen", "Generate an instance file");
  GenOptions g;
  std::string gen_type = "linear", items_text;
  gen->add_option("KIND", gen_kind, "random|partition-3veto5|partition-310|partition-borda4|partition-dichotomy:a1,a2")
      ->required();
  gen->add_option("--seed", g.seed);
  gen->add_option("-m", g.candidates, "Candidates");
  gen->add_option("-n", g.voters, "Voters");
  gen->add_option("--ballots", gen_type, "linear|approval");
  gen->add_option("--weight-cap", g.weight_cap);
  gen->add_option("--pool", g.pool);
  gen->add_option("--spoilers", g.spoilers);
  gen->add_option("--manipulators", g.manipulators);
  gen->add_option("--items", items_text, "PARTITION items, comma separated");
  gen->add_option("--model", model_text, "unique|nonunique");

  auto* verify = app.add_subcommand("verify", "Compare solvers against exhaustive oracles");
  bool against_oracle = false;
  int batch = 0;
  std::uint64_t seed = 0;
  verify->add_option("FILE", file);
  verify->add_flag("--against-oracle", against_oracle);
  verify->add_option("-k", budget, "Budget for control problems");
  verify->add_option("--model", model_text, "unique|nonunique (both when omitted)");
  verify->add_option("--rule", rule_text);
  verify->add_option("--batch", batch, "Number of seeded instances instead of FILE");
  verify->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 1;
  }

  try {
    json result;
    if (check_axis->parsed()) {
      auto doc = load(file);
      if (!doc.axis) throw InvalidInput("no AXIS section");
      Axis axis{*doc.axis};
      bool ok;
      if (doc.kind == BallotKind::kLinear) {
        ok = linear_consistent(linear_election(doc), axis);
      } else {
        auto e = approval_election(doc);
        e.ballots.insert(e.ballots.end(), doc.pool.begin(), doc.pool.end());
        ok = approval_consistent(e, axis);
      }
      result = {{"axis", axis_ids(doc, axis)}, {"consistent", ok}};
      if (!ok) result["message"] = kInvalidAxisMessage;
    } else if (find_axis->parsed()) {
      auto doc = load(file);
      std::optional<Axis> axis;
      if (doc.kind == BallotKind::kLinear) {
        axis = find_axis_linear(linear_election(doc));
      } else {
        auto e = approval_election(doc);
        e.ballots.insert(e.ballots.end(), doc.pool.begin(), doc.pool.end());
        axis = find_axis_approval(e);
      }
      result = {{"axis", axis_ids(doc, axis)}, {"single_peaked", axis.has_value()}};
    } else if (winners_cmd->parsed()) {
      auto doc = load(file);
      const WinnerModel model = parse_model(model_text);
      if (rule_text.empty()) rule_text = doc.rule.value_or(doc.kind == BallotKind::kLinear ? "plurality" : "approval");
      ScoreTable scores;
      if (rule_text == "approval") {
        scores = approval_scores(approval_election(doc));
      } else {
        scores = scoring_scores(linear_election(doc), parse_rule(rule_text, static_cast<int>(doc.candidates.size())));
      }
      json s = json::object();
      for (int c = 0; c < scores.size(); ++c) s[doc.candidates[c]] = scores[c];
      json w = json::array();
      for (int c : winners(scores, model)) w.push_back(doc.candidates[c]);
      result = {{"model", model_name(model)}, {"rule", rule_text}, {"scores", s}, {"winners", w}};
    } else if (control->parsed()) {
      auto doc = load(file);
      const WinnerModel model = parse_model(model_text);
      if (is_voter_action(action)) {
        auto inst = voter_control_instance(doc, action, budget, model);
        out << voter_control_result(doc, inst, action, solve_voter_control(inst));
      } else if (is_candidate_action(action)) {
        auto inst = candidate_control_instance(doc, action, budget, model);
        out << candidate_control_result(doc, inst, action, solve_candidate_control(inst));
      } else {
        throw InvalidInput("unknown control action '" + action + "'");
      }
      return 0;
    } else if (manip->parsed()) {
      auto doc = load(file);
      auto inst = manipulation_instance(doc, rule_text.empty() ? std::nullopt : std::optional(rule_text),
                                        parse_model(model_text));
      out << manipulation_result(doc, inst, solve_manipulation(inst, ExactLimits{max_states}));
      return 0;
    } else if (gen->parsed()) {
      const WinnerModel model = parse_model(model_text);
      ElectionDocument doc;
      if (gen_kind == "random") {
        if (gen_type == "linear") g.kind = GeneratedKind::kLinear;
        else if (gen_type == "approval") g.kind = GeneratedKind::kApproval;
        else throw InvalidInput("--ballots is linear or approval");
        doc = gen_random_sp(g);
      } else if (gen_kind.starts_with("partition-")) {
        PartitionInstance p{parse_items(items_text)};
        validate(p);
        if (gen_kind == "partition-3veto5") {
          doc = manipulation_document(reduce_partition_to_3veto5(p, model));
        } else if (gen_kind == "partition-310") {
          doc = manipulation_document(reduce_partition_to_310(p, model));
        } else if (gen_kind == "partition-borda4") {
          doc = manipulation_document(reduce_partition_to_borda4(p, model));
        } else if (gen_kind.starts_with("partition-dichotomy:")) {
          auto alpha = parse_items(gen_kind.substr(20));
          if (alpha.size() != 2) throw InvalidInput("partition-dichotomy takes a1,a2");
          doc = manipulation_document(reduce_partition_to_dichotomy(p, alpha[0], alpha[1], model));
        } else {
          throw InvalidInput("unknown generator '" + gen_kind + "'");
        }
      } else {
        throw InvalidInput("unknown generator '" + gen_kind + "'");
      }
      out << serialize(doc);
      return 0;
    } else if (verify->parsed()) {
      int mismatches = 0;
      if (batch > 0) {
        if (!file.empty()) throw InvalidInput("--batch replaces FILE");
        int checks = 0;
        json failures = json::array();
        for (int i = 0; i < batch; ++i) {
          auto item = batch_instance(seed + static_cast<std::uint64_t>(i));
          auto res = verify_document(item.doc, item.options);
          checks += static_cast<int>(res.size());
          for (const auto& c : res) {
            if (c.agree) continue;
            ++mismatches;
            failures.push_back({{"instance", i}, {"model", c.model}, {"problem", c.problem}});
          }
        }
        result = {{"checks", checks}, {"failures", failures}, {"instances", batch}, {"mismatches", mismatches}};
      } else {
        if (file.empty()) throw InvalidInput("verify needs FILE or --batch");
        if (!against_oracle) throw InvalidInput("verify FILE needs --against-oracle");
        auto doc = load(file);
        VerifyOptions o;
        o.budget = budget;
        if (verify->count("--model")) o.model = parse_model(model_text);
        if (!rule_text.empty()) o.rule = rule_text;
        auto res = verify_document(doc, o);
        json checks = checks_json(res, mismatches);
        result = {{"checks", checks}, {"mismatches", mismatches}};
      }
    }
    out << result.dump(2) << "\n";
    return 0;
  } catch (const ResourceLimit& e) {
    err << "resource limit: " << e.what() << "\n";
    return 2;
  } catch (const InvalidInput& e) {
    err << "invalid input: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace spelect
