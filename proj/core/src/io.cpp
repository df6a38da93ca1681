#include "spelect/io.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "json.hpp"
#include "spelect/errors.hpp"

namespace spelect {

namespace {

using nlohmann::json;

constexpr std::array<std::string_view, 9> kSections = {"CANDIDATES", "AXIS",    "TARGET",   "MODE",    "RULE",
                                                       "MANIPULATORS", "BALLOTS", "POOL", "SPOILERS"};

bool id_char(char ch) {
  return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '-' || ch == '.';
}

// A view into one source line that remembers where it started.
struct Cursor {
  std::string_view text;
  int line = 0;
  std::size_t at = 0;
  int base_column = 1;  // column of text[0]

  int column() const { return base_column + static_cast<int>(at); }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line, column(), msg); }
  void skip_ws() {
    while (at < text.size() && (text[at] == ' ' || text[at] == '\t')) ++at;
  }
  bool done() {
    skip_ws();
    return at >= text.size();
  }
  bool eat(char ch) {
    skip_ws();
    if (at < text.size() && text[at] == ch) {
      ++at;
      return true;
    }
    return false;
  }
  void expect(char ch) {
    if (!eat(ch)) fail(std::string("expected '") + ch + "'");
  }
  std::string_view ident() {
    skip_ws();
    std::size_t start = at;
    while (at < text.size() && id_char(text[at])) ++at;
    if (start == at) fail("expected a candidate id");
    return text.substr(start, at - start);
  }
  Score integer(const char* what) {
    skip_ws();
    std::size_t start = at;
    while (at < text.size() && !std::isspace(static_cast<unsigned char>(text[at])) && text[at] != ',') ++at;
    auto token = text.substr(start, at - start);
    Score v = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
      at = start;
      fail(std::string("non-integer ") + what);
    }
    return v;
  }
};

struct RawSection {
  Cursor head;                // inline value after "NAME:"
  std::vector<Cursor> lines;  // following lines (block sections)
};

class Parser {
 public:
  explicit Parser(std::string_view text) { split(text); }

  ElectionDocument run() {
    auto cand = sections_.find("CANDIDATES");
    if (cand == sections_.end()) throw ParseError(1, 1, "missing CANDIDATES section");
    parse_candidates(cand->second.head);
    for (auto& [name, sec] : sections_) {
      if (name == "CANDIDATES") continue;
      if (name != "BALLOTS" && name != "POOL" && !sec.lines.empty()) {
        sec.lines.front().fail("unexpected line in " + name + " section");
      }
      if ((name == "BALLOTS" || name == "POOL") && !sec.head.done()) {
        sec.head.fail(name + " entries go on the following lines");
      }
    }
    if (auto it = sections_.find("AXIS"); it != sections_.end()) parse_axis(it->second.head);
    if (auto it = sections_.find("TARGET"); it != sections_.end()) {
      auto& c = it->second.head;
      doc_.target = lookup(c, c.ident());
      if (!c.done()) c.fail("TARGET takes a single candidate id");
    }
    std::optional<InputMode> mode;
    if (auto it = sections_.find("MODE"); it != sections_.end()) {
      auto& c = it->second.head;
      auto word = c.ident();
      if (word == "standard") mode = InputMode::kStandard;
      else if (word == "succinct") mode = InputMode::kSuccinct;
      else c.fail("MODE is standard or succinct");
      if (!c.done()) c.fail("unexpected text after MODE");
    }
    if (auto it = sections_.find("RULE"); it != sections_.end()) {
      auto& c = it->second.head;
      c.skip_ws();
      std::string value(c.text.substr(c.at));
      while (!value.empty() && std::isspace(static_cast<unsigned char>(value.back()))) value.pop_back();
      if (value != "approval") {
        try {
          parse_rule(value, static_cast<int>(doc_.candidates.size()));
        } catch (const InvalidInput& e) {
          c.fail(e.what());
        }
      }
      doc_.rule = value;
    }
    if (auto it = sections_.find("MANIPULATORS"); it != sections_.end()) {
      auto& c = it->second.head;
      if (!c.done()) {
        do {
          Score w = c.integer("weight");
          if (w < 0) c.fail("manipulator weights must be non-negative");
          doc_.manipulators.push_back(w);
        } while (c.eat(','));
      }
      if (!c.done()) c.fail("expected ','");
    }
    if (auto it = sections_.find("SPOILERS"); it != sections_.end()) {
      auto& c = it->second.head;
      std::set<int> seen;
      if (!c.done()) {
        do {
          int s = lookup(c, c.ident());
          if (!seen.insert(s).second) c.fail("duplicate spoiler");
        } while (c.eat(','));
      }
      if (!c.done()) c.fail("expected ','");
      doc_.spoilers.assign(seen.begin(), seen.end());
    }
    bool multiple = false;
    std::optional<Cursor> first_multiple;
    auto parse_block = [&](const char* name, bool pool) {
      auto it = sections_.find(name);
      if (it == sections_.end()) return;
      for (auto& c : it->second.lines) {
        Cursor start = c;
        Score mult = parse_ballot(c, pool);
        if (mult != 1 && !first_multiple) first_multiple = start;
        multiple = multiple || mult != 1;
      }
    };
    parse_block("BALLOTS", false);
    parse_block("POOL", true);
    doc_.mode = mode.value_or(multiple ? InputMode::kSuccinct : InputMode::kStandard);
    if (doc_.mode == InputMode::kStandard && multiple) {
      first_multiple->fail("multiplicities other than 1 need MODE: succinct");
    }
    return doc_;
  }

 private:
  void split(std::string_view text) {
    RawSection* current = nullptr;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      std::string_view line = text.substr(pos, end - pos);
      ++line_no;
      pos = end + 1;
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
      Cursor c{line, line_no, 0, 1};
      if (c.done()) {
        if (end == text.size()) break;
        continue;
      }
      std::size_t word_start = c.at;
      std::size_t word_end = word_start;
      while (word_end < line.size() && std::isupper(static_cast<unsigned char>(line[word_end]))) ++word_end;
      std::string_view word = line.substr(word_start, word_end - word_start);
      std::size_t after = word_end;
      while (after < line.size() && (line[after] == ' ' || line[after] == '\t')) ++after;
      bool header = !word.empty() && after < line.size() && line[after] == ':' &&
                    std::find(kSections.begin(), kSections.end(), word) != kSections.end();
      if (header) {
        std::string name(word);
        if (sections_.count(name)) throw ParseError(line_no, static_cast<int>(word_start) + 1, "duplicate section " + name);
        Cursor head{line.substr(after + 1), line_no, 0, static_cast<int>(after) + 2};
        current = &sections_.emplace(name, RawSection{head, {}}).first->second;
      } else {
        if (!word.empty() && after < line.size() && line[after] == ':') {
          throw ParseError(line_no, static_cast<int>(word_start) + 1, "unknown section " + std::string(word));
        }
        if (current == nullptr) {
          throw ParseError(line_no, static_cast<int>(c.at) + 1, "text before the first section header");
        }
        current->lines.push_back(c);
      }
      if (end == text.size()) break;
    }
  }

  void parse_candidates(Cursor& c) {
    if (c.done()) c.fail("CANDIDATES must list at least one id");
    do {
      std::size_t at = c.at;
      std::string id(c.ident());
      if (index_.count(id)) {
        c.at = at;
        c.skip_ws();
        c.fail("duplicate candidate '" + id + "'");
      }
      index_[id] = static_cast<int>(doc_.candidates.size());
      doc_.candidates.push_back(id);
    } while (c.eat(','));
    if (!c.done()) c.fail("expected ','");
  }

  void parse_axis(Cursor& c) {
    std::vector<int> order;
    std::vector<char> seen(doc_.candidates.size(), 0);
    if (!c.done()) {
      do {
        int idx = lookup(c, c.ident());
        if (seen[idx]) c.fail("candidate repeated in AXIS");
        seen[idx] = 1;
        order.push_back(idx);
      } while (c.eat(','));
    }
    if (!c.done()) c.fail("expected ','");
    if (order.size() != doc_.candidates.size()) c.fail("AXIS must list every candidate exactly once");
    doc_.axis = std::move(order);
  }

  int lookup(Cursor& c, std::string_view id) {
    auto it = index_.find(std::string(id));
    if (it == index_.end()) {
      c.at -= id.size();
      c.fail("unknown candidate '" + std::string(id) + "'");
    }
    return it->second;
  }

  Score parse_ballot(Cursor& c, bool pool) {
    Score mult = 1, weight = 1;
    c.skip_ws();
    // "<int> x " prefix
    std::size_t i = c.at;
    while (i < c.text.size() && std::isdigit(static_cast<unsigned char>(c.text[i]))) ++i;
    if (i > c.at) {
      std::size_t j = i;
      while (j < c.text.size() && (c.text[j] == ' ' || c.text[j] == '\t')) ++j;
      if (j < c.text.size() && c.text[j] == 'x' && j + 1 < c.text.size() && (c.text[j + 1] == ' ' || c.text[j + 1] == '\t')) {
        std::size_t start = c.at;
        mult = c.integer("multiplicity");
        if (mult < 1) {
          c.at = start;
          c.fail("multiplicity must be positive");
        }
        c.at = j + 1;
      }
    }
    c.skip_ws();
    if (c.text.substr(c.at).starts_with("w=")) {
      c.at += 2;
      std::size_t start = c.at;
      weight = c.integer("weight");
      if (weight < 0) {
        c.at = start;
        c.fail("weight must be non-negative");
      }
    }
    c.skip_ws();
    const bool approve = c.text.substr(c.at).starts_with("approve{");
    const BallotKind kind = approve ? BallotKind::kApproval : BallotKind::kLinear;
    if (pool && !approve) c.fail("POOL holds approval ballots");
    if (!pool) {
      if (doc_.kind != BallotKind::kNone && doc_.kind != kind) c.fail("ballot kinds cannot be mixed");
      doc_.kind = kind;
    }
    if (approve) {
      c.at += 8;
      ApprovalBallot b;
      b.weight = weight;
      b.multiplicity = mult;
      if (!c.eat('}')) {
        do {
          int idx = lookup(c, c.ident());
          if (std::find(b.approved.begin(), b.approved.end(), idx) != b.approved.end()) {
            c.fail("candidate approved twice");
          }
          b.approved.push_back(idx);
        } while (c.eat(','));
        c.expect('}');
      }
      std::sort(b.approved.begin(), b.approved.end());
      if (!c.done()) c.fail("unexpected text after ballot");
      (pool ? doc_.pool : doc_.approval).push_back(std::move(b));
    } else {
      LinearBallot b;
      b.weight = weight;
      b.multiplicity = mult;
      std::vector<char> seen(doc_.candidates.size(), 0);
      do {
        int idx = lookup(c, c.ident());
        if (seen[idx]) {
          c.at -= doc_.candidates[idx].size();
          c.fail("duplicate in ranking");
        }
        seen[idx] = 1;
        b.ranking.push_back(idx);
      } while (c.eat('>'));
      if (!c.done()) c.fail("expected '>'");
      if (b.ranking.size() != doc_.candidates.size()) c.fail("ranking must list every candidate");
      doc_.linear.push_back(std::move(b));
    }
    return mult;
  }

  std::map<std::string, RawSection> sections_;
  std::map<std::string, int> index_;
  ElectionDocument doc_;
};

std::string join_ids(const ElectionDocument& doc, const std::vector<int>& idx, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i) out += sep;
    out += doc.candidates[idx[i]];
  }
  return out;
}

template <typename Ballot>
std::string prefix(const ElectionDocument& doc, const Ballot& b) {
  std::string out;
  if (doc.mode == InputMode::kSuccinct) out += std::to_string(b.multiplicity) + " x ";
  if (b.weight != 1) out += "w=" + std::to_string(b.weight) + " ";
  return out;
}

// Portable draws: the standard distributions are implementation-defined.
std::uint64_t uniform(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
  const std::uint64_t range = hi - lo + 1;
  if (range == 0) return rng();
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return lo + x % range;
}

template <typename T>
void shuffle(std::mt19937_64& rng, std::vector<T>& v) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[uniform(rng, 0, i - 1)]);
  }
}

std::vector<int> random_sp_ranking(std::mt19937_64& rng, const std::vector<int>& axis) {
  const int m = static_cast<int>(axis.size());
  int l = static_cast<int>(uniform(rng, 0, m - 1));
  int r = l + 1;
  std::vector<int> out{axis[l]};
  --l;
  while (l >= 0 || r < m) {
    bool left = r >= m || (l >= 0 && uniform(rng, 0, 1) == 0);
    out.push_back(left ? axis[l--] : axis[r++]);
  }
  return out;
}

ApprovalBallot random_interval(std::mt19937_64& rng, const std::vector<int>& axis) {
  const int m = static_cast<int>(axis.size());
  ApprovalBallot b;
  if (uniform(rng, 0, 7) == 0) return b;
  auto a = static_cast<int>(uniform(rng, 0, m - 1));
  auto z = static_cast<int>(uniform(rng, 0, m - 1));
  if (a > z) std::swap(a, z);
  for (int i = a; i <= z; ++i) b.approved.push_back(axis[i]);
  std::sort(b.approved.begin(), b.approved.end());
  return b;
}

json score_object(const ElectionDocument& doc, const std::vector<Score>& scores, const std::vector<char>* present) {
  json out = json::object();
  for (std::size_t c = 0; c < scores.size(); ++c) {
    if (present && !(*present)[c]) continue;
    out[doc.candidates[c]] = scores[c];
  }
  return out;
}

json axis_json(const ElectionDocument& doc, const std::optional<Axis>& axis) {
  if (!axis) return nullptr;
  json out = json::array();
  for (int c : axis->order) out.push_back(doc.candidates[c]);
  return out;
}

std::string finish(const json& j) { return j.dump(2) + "\n"; }

int id_index(const ElectionDocument& doc, const std::string& id) {
  auto it = std::find(doc.candidates.begin(), doc.candidates.end(), id);
  if (it == doc.candidates.end()) throw InvalidInput("result names unknown candidate '" + id + "'");
  return static_cast<int>(it - doc.candidates.begin());
}

std::vector<int> parse_ranking(const ElectionDocument& doc, const std::string& text) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (true) {
    std::size_t end = text.find('>', pos);
    out.push_back(id_index(doc, text.substr(pos, end == std::string::npos ? std::string::npos : end - pos)));
    if (end == std::string::npos) break;
    pos = end + 1;
  }
  return out;
}

}  // namespace

ElectionDocument parse_election(std::string_view text) { return Parser(text).run(); }

std::string format_ballot(const ElectionDocument& doc, const LinearBallot& b) {
  return join_ids(doc, b.ranking, ">");
}

std::string format_ballot(const ElectionDocument& doc, const ApprovalBallot& b) {
  return "approve{" + join_ids(doc, b.approved, ",") + "}";
}

std::string serialize(const ElectionDocument& doc) {
  std::ostringstream out;
  std::vector<int> all(doc.candidates.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  out << "CANDIDATES: " << join_ids(doc, all, ",") << "\n";
  if (doc.axis) out << "AXIS: " << join_ids(doc, *doc.axis, ",") << "\n";
  if (doc.target) out << "TARGET: " << doc.candidates[*doc.target] << "\n";
  if (doc.mode == InputMode::kSuccinct) out << "MODE: succinct\n";
  if (doc.rule) out << "RULE: " << *doc.rule << "\n";
  if (!doc.manipulators.empty()) {
    out << "MANIPULATORS: ";
    for (std::size_t i = 0; i < doc.manipulators.size(); ++i) out << (i ? "," : "") << doc.manipulators[i];
    out << "\n";
  }
  if (!doc.spoilers.empty()) out << "SPOILERS: " << join_ids(doc, doc.spoilers, ",") << "\n";
  out << "BALLOTS:\n";
  for (const auto& b : doc.linear) out << prefix(doc, b) << format_ballot(doc, b) << "\n";
  for (const auto& b : doc.approval) out << prefix(doc, b) << format_ballot(doc, b) << "\n";
  if (!doc.pool.empty()) {
    out << "POOL:\n";
    for (const auto& b : doc.pool) out << prefix(doc, b) << format_ballot(doc, b) << "\n";
  }
  return out.str();
}

WinnerModel parse_model(std::string_view text) {
  if (text == "unique") return WinnerModel::kUnique;
  if (text == "nonunique") return WinnerModel::kNonUnique;
  throw InvalidInput("model must be unique or nonunique");
}

std::string model_name(WinnerModel model) { return model == WinnerModel::kUnique ? "unique" : "nonunique"; }

ScoringVector parse_rule(std::string_view text, int m) {
  if (text == "plurality") return ScoringVector::plurality(m);
  if (text == "veto") return ScoringVector::veto(m);
  if (text == "borda") return ScoringVector::borda(m);
  if (text.starts_with("score:")) {
    std::vector<Score> alpha;
    std::string_view rest = text.substr(6);
    while (true) {
      auto comma = rest.find(',');
      auto token = rest.substr(0, comma);
      Score v = 0;
      auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
      if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
        throw InvalidInput("non-integer entry in scoring vector");
      }
      alpha.push_back(v);
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    if (static_cast<int>(alpha.size()) != m) throw InvalidInput("scoring vector length differs from candidate count");
    return ScoringVector(std::move(alpha));
  }
  throw InvalidInput("unknown rule '" + std::string(text) + "'");
}

LinearElection linear_election(const ElectionDocument& doc) {
  if (doc.kind == BallotKind::kApproval) throw InvalidInput("expected ranked ballots");
  LinearElection e{doc.candidates, doc.linear, doc.mode};
  validate(e);
  return e;
}

ApprovalElection approval_election(const ElectionDocument& doc) {
  if (doc.kind == BallotKind::kLinear) throw InvalidInput("expected approval ballots");
  ApprovalElection e{doc.candidates, doc.approval, doc.mode};
  validate(e);
  return e;
}

std::optional<Axis> document_axis(const ElectionDocument& doc) {
  if (!doc.axis) return std::nullopt;
  return Axis{*doc.axis};
}

namespace {

int require_target(const ElectionDocument& doc) {
  if (!doc.target) throw InvalidInput("missing TARGET section");
  return *doc.target;
}

}  // namespace

bool is_voter_action(std::string_view action) { return action == "ccav" || action == "ccdv"; }

bool is_candidate_action(std::string_view action) {
  return action == "ccac" || action == "ccuac" || action == "dcac" || action == "dcuac" || action == "ccdc" ||
         action == "dcdc";
}

VoterControlInstance voter_control_instance(const ElectionDocument& doc, std::string_view action, Score budget,
                                            WinnerModel model) {
  if (!is_voter_action(action)) throw InvalidInput("unknown voter control action");
  VoterControlInstance inst;
  inst.election = approval_election(doc);
  inst.action = action == "ccav" ? VoterAction::kAddVoters : VoterAction::kDeleteVoters;
  if (inst.action == VoterAction::kAddVoters) inst.pool = doc.pool;
  inst.distinguished = require_target(doc);
  inst.budget = budget;
  inst.axis = document_axis(doc);
  inst.model = model;
  validate(inst);
  return inst;
}

CandidateControlInstance candidate_control_instance(const ElectionDocument& doc, std::string_view action, Score budget,
                                                    WinnerModel model) {
  if (!is_candidate_action(action)) throw InvalidInput("unknown candidate control action");
  CandidateControlInstance inst;
  inst.election = linear_election(doc);
  inst.spoiler.assign(doc.candidates.size(), false);
  for (int s : doc.spoilers) inst.spoiler[s] = true;
  inst.distinguished = require_target(doc);
  inst.budget = budget;
  inst.axis = document_axis(doc);
  inst.model = model;
  inst.goal = action[0] == 'c' ? ControlGoal::kConstructive : ControlGoal::kDestructive;
  if (action.ends_with("dc")) inst.action = CandidateAction::kDeleteCandidates;
  else if (action.ends_with("uac")) inst.action = CandidateAction::kUnlimitedAddCandidates;
  else inst.action = CandidateAction::kAddCandidates;
  validate(inst);
  return inst;
}

ManipulationInstance manipulation_instance(const ElectionDocument& doc, std::optional<std::string> rule_text,
                                           WinnerModel model) {
  ManipulationInstance inst;
  inst.nonmanipulators = linear_election(doc);
  const std::optional<std::string> rule = rule_text ? rule_text : doc.rule;
  if (!rule) throw InvalidInput("manipulation needs a scoring rule");
  inst.rule = parse_rule(*rule, static_cast<int>(doc.candidates.size()));
  inst.manipulator_weights = doc.manipulators;
  inst.distinguished = require_target(doc);
  inst.axis = document_axis(doc);
  inst.model = model;
  validate(inst);
  return inst;
}

std::string voter_control_result(const ElectionDocument& doc, const VoterControlInstance& inst,
                                 std::string_view action, const std::optional<VoterCertificate>& cert) {
  json j;
  j["action"] = action;
  j["axis_used"] = axis_json(doc, resolve_axis(inst));
  j["budget"] = inst.budget;
  j["decision"] = cert ? "yes" : "no";
  j["model"] = model_name(inst.model);
  j["scores_before"] = score_object(doc, approval_scores(inst.election).scores, nullptr);
  json c = json::array();
  if (cert) {
    const auto& source = inst.action == VoterAction::kAddVoters ? inst.pool : inst.election.ballots;
    for (const auto& s : cert->selected) {
      c.push_back({{"ballot", format_ballot(doc, source[s.ballot])}, {"count", s.count}, {"index", s.ballot}});
    }
    j["scores_after"] = score_object(doc, approval_scores(apply_certificate(inst, *cert)).scores, nullptr);
  } else {
    j["scores_after"] = nullptr;
  }
  j["certificate"] = c;
  return finish(j);
}

std::string candidate_control_result(const ElectionDocument& doc, const CandidateControlInstance& inst,
                                     std::string_view action, const std::optional<CandidateCertificate>& cert) {
  json j;
  j["action"] = action;
  j["axis_used"] = axis_json(doc, resolve_axis(inst));
  j["budget"] = inst.action == CandidateAction::kUnlimitedAddCandidates ? json(nullptr) : json(inst.budget);
  j["decision"] = cert ? "yes" : "no";
  j["model"] = model_name(inst.model);
  const auto before = participants_after(inst, CandidateCertificate{});
  j["scores_before"] = score_object(doc, plurality_scores_among(inst.election, before), &before);
  json c = json::array();
  if (cert) {
    for (int x : cert->candidates) c.push_back(doc.candidates[x]);
    const auto after = participants_after(inst, *cert);
    j["scores_after"] = score_object(doc, plurality_scores_among(inst.election, after), &after);
  } else {
    j["scores_after"] = nullptr;
  }
  j["certificate"] = c;
  return finish(j);
}

std::string manipulation_result(const ElectionDocument& doc, const ManipulationInstance& inst,
                                const ManipulationOutcome& outcome) {
  json j;
  j["action"] = "manip";
  j["axis_used"] = axis_json(doc, outcome.axis_used);
  j["decision"] = outcome.certificate ? "yes" : "no";
  j["method"] = outcome.method;
  j["model"] = model_name(inst.model);
  j["rule"] = inst.rule.values();
  j["scores_before"] = score_object(doc, scoring_scores(inst.nonmanipulators, inst.rule).scores, nullptr);
  json c = json::array();
  if (outcome.certificate) {
    for (std::size_t i = 0; i < outcome.certificate->ballots.size(); ++i) {
      c.push_back({{"ballot", join_ids(doc, outcome.certificate->ballots[i], ">")},
                   {"weight", inst.manipulator_weights[i]}});
    }
    j["scores_after"] =
        score_object(doc, scoring_scores(apply_certificate(inst, *outcome.certificate), inst.rule).scores, nullptr);
  } else {
    j["scores_after"] = nullptr;
  }
  j["certificate"] = c;
  return finish(j);
}

bool replay_result(const ElectionDocument& doc, std::string_view result_json) {
  json j;
  try {
    j = json::parse(result_json);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed result document: ") + e.what());
  }
  try {
    if (j.at("decision") == "no") return j.at("scores_after").is_null() && j.at("certificate").empty();
    const std::string action = j.at("action");
    const WinnerModel model = parse_model(j.at("model").get<std::string>());
    const json& cert = j.at("certificate");
    std::vector<Score> scores;
    std::vector<char> present(doc.candidates.size(), 1);
    if (is_voter_action(action)) {
      auto inst = voter_control_instance(doc, action, j.at("budget").get<Score>(), model);
      const auto& source = inst.action == VoterAction::kAddVoters ? inst.pool : inst.election.ballots;
      VoterCertificate vc;
      for (const auto& s : cert) {
        int idx = s.at("index");
        if (idx < 0 || idx >= static_cast<int>(source.size()) ||
            format_ballot(doc, source[idx]) != s.at("ballot").get<std::string>()) {
          return false;
        }
        vc.selected.push_back({idx, s.at("count").get<Score>()});
      }
      scores = approval_scores(apply_certificate(inst, vc)).scores;
    } else if (is_candidate_action(action)) {
      const Score budget = j.at("budget").is_null() ? 0 : j.at("budget").get<Score>();
      auto inst = candidate_control_instance(doc, action, budget, model);
      CandidateCertificate cc;
      for (const auto& id : cert) cc.candidates.push_back(id_index(doc, id.get<std::string>()));
      present = participants_after(inst, cc);
      scores = plurality_scores_among(inst.election, present);
    } else if (action == "manip") {
      std::string rule = "score:";
      const auto alpha = j.at("rule").get<std::vector<Score>>();
      for (std::size_t i = 0; i < alpha.size(); ++i) rule += (i ? "," : "") + std::to_string(alpha[i]);
      auto inst = manipulation_instance(doc, rule, model);
      ManipulationCertificate mc;
      for (const auto& b : cert) mc.ballots.push_back(parse_ranking(doc, b.at("ballot").get<std::string>()));
      scores = scoring_scores(apply_certificate(inst, mc), inst.rule).scores;
    } else {
      throw InvalidInput("unknown action '" + action + "' in result document");
    }
    return score_object(doc, scores, &present) == j.at("scores_after");
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed result document: ") + e.what());
  }
}

ElectionDocument gen_random_sp(const GenOptions& o) {
  if (o.candidates < 1) throw InvalidInput("need at least one candidate");
  if (o.voters < 0 || o.pool < 0 || o.spoilers < 0 || o.manipulators < 0 || o.weight_cap < 1) {
    throw InvalidInput("generator counts must be non-negative and the weight cap positive");
  }
  std::mt19937_64 rng(o.seed);
  ElectionDocument doc;
  const int m = o.candidates;
  for (int i = 1; i <= m; ++i) doc.candidates.push_back("c" + std::to_string(i));
  std::vector<int> axis(m);
  for (int i = 0; i < m; ++i) axis[i] = i;
  shuffle(rng, axis);
  doc.axis = axis;
  doc.target = static_cast<int>(uniform(rng, 0, m - 1));
  auto weight = [&] { return static_cast<Score>(uniform(rng, 1, static_cast<std::uint64_t>(o.weight_cap))); };
  if (o.kind == GeneratedKind::kLinear) {
    if (o.voters > 0) doc.kind = BallotKind::kLinear;
    for (int v = 0; v < o.voters; ++v) doc.linear.push_back(LinearBallot{random_sp_ranking(rng, axis), weight(), 1});
    std::vector<int> others;
    for (int c = 0; c < m; ++c) {
      if (c != *doc.target) others.push_back(c);
    }
    shuffle(rng, others);
    others.resize(std::min<std::size_t>(others.size(), static_cast<std::size_t>(o.spoilers)));
    std::sort(others.begin(), others.end());
    doc.spoilers = others;
    for (int i = 0; i < o.manipulators; ++i) doc.manipulators.push_back(weight());
  } else {
    if (o.voters > 0) doc.kind = BallotKind::kApproval;
    for (int v = 0; v < o.voters; ++v) {
      auto b = random_interval(rng, axis);
      b.weight = weight();
      doc.approval.push_back(std::move(b));
    }
    for (int v = 0; v < o.pool; ++v) {
      auto b = random_interval(rng, axis);
      b.weight = weight();
      doc.pool.push_back(std::move(b));
    }
  }
  return doc;
}

ElectionDocument manipulation_document(const ManipulationInstance& inst) {
  ElectionDocument doc;
  doc.candidates = inst.nonmanipulators.candidates;
  if (inst.axis) doc.axis = inst.axis->order;
  doc.target = inst.distinguished;
  std::string rule = "score:";
  for (int i = 0; i < inst.rule.size(); ++i) rule += (i ? "," : "") + std::to_string(inst.rule[i]);
  doc.rule = rule;
  doc.manipulators = inst.manipulator_weights;
  doc.mode = inst.nonmanipulators.mode;
  // kind reflects ballots present, as in parsed documents
  if (!inst.nonmanipulators.ballots.empty()) doc.kind = BallotKind::kLinear;
  doc.linear = inst.nonmanipulators.ballots;
  return doc;
}

}  // namespace spelect
