#include "tginfer/io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "tginfer/oracle.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace tginfer::io {

namespace {

// ---------------------------------------------------------------- helpers

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_file_atomic(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << content;
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::vector<std::string> read_lines(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(field);
      field.clear();
    } else {
      field.push_back(c);
    }
  }
  fields.push_back(field);
  return fields;
}

// First line must be "# format: <name>"; second the given header.
// Returns the index of the first data line.
size_t expect_format(const std::vector<std::string>& lines, const std::string& format_name,
                     const std::string& header, const fs::path& path) {
  const std::string format_line = "# format: " + format_name;
  if (lines.empty() || lines[0] != format_line)
    throw std::runtime_error(path.string() + ": expected first line '" + format_line + "'");
  if (lines.size() < 2 || lines[1] != header)
    throw std::runtime_error(path.string() + ": expected header '" + header + "'");
  return 2;
}

double parse_double(const std::string& s, const std::string& what) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || s.empty() || errno == ERANGE)
    throw std::runtime_error("cannot parse " + what + " from '" + s + "'");
  return v;
}

std::int64_t parse_int64(const std::string& s, const std::string& what) {
  errno = 0;
  char* end = nullptr;
  const long long v = std::strtoll(s.c_str(), &end, 10);
  if (end != s.c_str() + s.size() || s.empty() || errno == ERANGE)
    throw std::runtime_error("cannot parse " + what + " from '" + s + "'");
  return v;
}

int parse_state(const std::string& s, const std::string& what) {
  const std::int64_t v = parse_int64(s, what);
  if (v < -1 || v > 1) throw std::runtime_error(what + " must be -1, 0 or 1, got '" + s + "'");
  return static_cast<int>(v);
}

// Labels and informant ids end up as CSV cells; keep them unambiguous.
void validate_token(const std::string& token, const std::string& what) {
  if (token.empty()) throw std::runtime_error(what + " must be nonempty");
  if (token.find_first_of(",\r\n") != std::string::npos)
    throw std::runtime_error(what + " '" + token + "' may not contain commas or line breaks");
  if (token.front() == '#') throw std::runtime_error(what + " '" + token + "' may not start with '#'");
}

int vertex_count_from_dyads(int n_dyads, const std::string& where) {
  for (int n = 2; n * (n - 1) / 2 <= n_dyads; ++n)
    if (n * (n - 1) / 2 == n_dyads) return n;
  throw std::runtime_error(where + ": " + std::to_string(n_dyads) + " is not a triangular dyad count");
}

// ------------------------------------------------------------ json helpers

json parse_json_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
  if (!j.is_object()) throw std::runtime_error(path.string() + ": top level must be an object");
  return j;
}

void check_keys(const json& obj, const std::string& where, const std::set<std::string>& allowed) {
  for (const auto& [key, value] : obj.items())
    if (!allowed.count(key)) throw std::runtime_error("unknown key '" + key + "' in " + where);
}

const json& need(const json& obj, const std::string& where, const std::string& key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw std::runtime_error("missing key '" + key + "' in " + where);
  return *it;
}

double get_double(const json& obj, const std::string& where, const std::string& key) {
  const json& v = need(obj, where, key);
  if (!v.is_number()) throw std::runtime_error("'" + key + "' in " + where + " must be a number");
  return v.get<double>();
}

std::int64_t get_int(const json& obj, const std::string& where, const std::string& key,
                     std::optional<std::int64_t> fallback = std::nullopt) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    if (fallback) return *fallback;
    throw std::runtime_error("missing key '" + key + "' in " + where);
  }
  if (!it->is_number_integer()) throw std::runtime_error("'" + key + "' in " + where + " must be an integer");
  return it->get<std::int64_t>();
}

std::uint64_t get_seed(const json& obj, const std::string& where) {
  const json& v = need(obj, where, "seed");
  if (!v.is_number_unsigned())
    throw std::runtime_error("'seed' in " + where + " must be a nonnegative integer");
  return v.get<std::uint64_t>();
}

void check_format_version(const json& obj, const std::string& where) {
  if (get_int(obj, where, "format_version") != 1)
    throw std::runtime_error(where + ": unsupported format_version (expected 1)");
}

ErrorRates rates_from_json(const json& obj, const std::string& where) {
  if (!obj.is_object()) throw std::runtime_error(where + " must be an object");
  check_keys(obj, where, {"reversal", "false_tie", "false_decisive"});
  ErrorRates r;
  r.reversal = get_double(obj, where, "reversal");
  r.false_tie = get_double(obj, where, "false_tie");
  r.false_decisive = get_double(obj, where, "false_decisive");
  validate(r);
  return r;
}

ErrorPriors priors_from_json(const json& obj, const std::string& where) {
  if (!obj.is_object()) throw std::runtime_error(where + " must be an object");
  check_keys(obj, where, {"reversal", "false_tie", "correct_decisive", "false_decisive", "correct_tie"});
  ErrorPriors p;
  p.reversal = get_double(obj, where, "reversal");
  p.false_tie = get_double(obj, where, "false_tie");
  p.correct_decisive = get_double(obj, where, "correct_decisive");
  p.false_decisive = get_double(obj, where, "false_decisive");
  p.correct_tie = get_double(obj, where, "correct_tie");
  validate(p);
  return p;
}

std::vector<std::string> roster_labels_from_json(const json& arr, const std::string& where) {
  if (!arr.is_array()) throw std::runtime_error("'roster' in " + where + " must be an array of labels");
  std::vector<std::string> labels;
  for (const json& v : arr) {
    if (!v.is_string()) throw std::runtime_error("roster labels in " + where + " must be strings");
    labels.push_back(v.get<std::string>());
    validate_token(labels.back(), "roster label");
  }
  return labels;
}

}  // namespace

// ------------------------------------------------------------------ roster

void save_roster(const fs::path& path, const Roster& roster) {
  std::ostringstream out;
  out << "# format: tginfer.roster/1\nlabel\n";
  for (const std::string& l : roster.labels()) {
    validate_token(l, "roster label");
    out << l << "\n";
  }
  write_file_atomic(path, out.str());
}

Roster load_roster(const fs::path& path) {
  const auto lines = read_lines(path);
  const size_t first = expect_format(lines, "tginfer.roster/1", "label", path);
  std::vector<std::string> labels;
  for (size_t i = first; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    validate_token(lines[i], "roster label");
    labels.push_back(lines[i]);
  }
  return Roster(labels);
}

// -------------------------------------------------------------- informants

void save_informants(const fs::path& path, const std::vector<std::string>& ids) {
  std::ostringstream out;
  out << "# format: tginfer.informants/1\ninformant\n";
  for (const std::string& id : ids) {
    validate_token(id, "informant id");
    out << id << "\n";
  }
  write_file_atomic(path, out.str());
}

std::vector<std::string> load_informants(const fs::path& path) {
  const auto lines = read_lines(path);
  const size_t first = expect_format(lines, "tginfer.informants/1", "informant", path);
  std::vector<std::string> ids;
  std::set<std::string> seen;
  for (size_t i = first; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    validate_token(lines[i], "informant id");
    if (!seen.insert(lines[i]).second)
      throw std::runtime_error(path.string() + ": duplicate informant id '" + lines[i] + "'");
    ids.push_back(lines[i]);
  }
  return ids;
}

// ----------------------------------------------------------------- reports

ReportsData load_reports(const fs::path& path, const Roster& roster) {
  const auto lines = read_lines(path);
  const std::string header = "informant,ego,alter,outcome";
  if (lines.empty() || lines[0] != header)
    throw std::runtime_error(path.string() + ": expected header '" + header + "'");

  const DyadLayout layout(roster.size());
  struct Cell {
    DyadState state = DyadState::tied;
    bool observed = false;
  };
  std::vector<std::string> ids;
  std::map<std::string, int> id_index;
  std::vector<std::vector<std::optional<Cell>>> cells;  // [informant][dyad]

  for (size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const std::string where = path.string() + " line " + std::to_string(i + 1);
    const auto fields = split_csv(lines[i]);
    if (fields.size() != 4)
      throw std::runtime_error(where + ": expected 4 fields, got " + std::to_string(fields.size()));
    const std::string& informant = fields[0];
    const std::string& ego = fields[1];
    const std::string& alter = fields[2];
    const std::string& outcome = fields[3];
    validate_token(informant, where + ": informant id");

    const auto ego_idx = roster.index_of(ego);
    if (!ego_idx) throw std::runtime_error(where + ": unknown vertex label '" + ego + "'");
    const auto alter_idx = roster.index_of(alter);
    if (!alter_idx) throw std::runtime_error(where + ": unknown vertex label '" + alter + "'");
    if (*ego_idx == *alter_idx)
      throw std::runtime_error(where + ": self-dyad for vertex '" + ego + "' is not allowed");

    const int lo = std::min(*ego_idx, *alter_idx);
    const int hi = std::max(*ego_idx, *alter_idx);
    const int dyad = layout.flat(lo, hi);

    Cell cell;
    if (outcome == "ego") {
      cell.state = (*ego_idx == lo) ? DyadState::first_wins : DyadState::second_wins;
      cell.observed = true;
    } else if (outcome == "alter") {
      cell.state = (*alter_idx == lo) ? DyadState::first_wins : DyadState::second_wins;
      cell.observed = true;
    } else if (outcome == "tie") {
      cell.state = DyadState::tied;
      cell.observed = true;
    } else if (outcome == "missing") {
      cell.state = DyadState::tied;  // placeholder, never read
      cell.observed = false;
    } else {
      throw std::runtime_error(where + ": outcome must be one of ego/alter/tie/missing, got '" + outcome + "'");
    }

    auto [it, inserted] = id_index.try_emplace(informant, static_cast<int>(ids.size()));
    if (inserted) {
      ids.push_back(informant);
      cells.emplace_back(layout.dyad_count());
    }
    auto& slot = cells[it->second][dyad];
    if (slot.has_value())
      throw std::runtime_error(where + ": duplicate report by '" + informant + "' on dyad {" + ego + ", " +
                               alter + "}");
    slot = cell;
  }

  ReportsData data;
  data.informant_ids = std::move(ids);
  const int m = static_cast<int>(data.informant_ids.size());
  data.reports = ReportMatrix(m, layout.dyad_count(), DyadState::tied);
  data.observed = InclusionMask(m, layout.dyad_count(), 0);
  for (int k = 0; k < m; ++k)
    for (int d = 0; d < layout.dyad_count(); ++d)
      if (cells[k][d]) {
        data.reports(k, d) = cells[k][d]->state;
        data.observed(k, d) = cells[k][d]->observed ? 1 : 0;
      }
  return data;
}

void save_reports(const fs::path& path, const Roster& roster, const std::vector<std::string>& informant_ids,
                  const ReportMatrix& reports, const InclusionMask& observed) {
  const DyadLayout layout(roster.size());
  if (reports.rows() != static_cast<int>(informant_ids.size()) || reports.cols() != layout.dyad_count() ||
      observed.rows() != reports.rows() || observed.cols() != reports.cols())
    throw std::invalid_argument("save_reports: dimensions disagree");

  std::ostringstream out;
  out << "informant,ego,alter,outcome\n";
  for (int k = 0; k < reports.rows(); ++k) {
    validate_token(informant_ids[k], "informant id");
    for (int d = 0; d < layout.dyad_count(); ++d) {
      const auto [i, j] = layout.pair(d);
      const char* outcome = "missing";
      if (observed(k, d)) {
        switch (reports(k, d)) {
          case DyadState::first_wins: outcome = "ego"; break;
          case DyadState::second_wins: outcome = "alter"; break;
          case DyadState::tied: outcome = "tie"; break;
        }
      }
      out << informant_ids[k] << ',' << roster.label(i) << ',' << roster.label(j) << ',' << outcome << "\n";
    }
  }
  write_file_atomic(path, out.str());
}

// ------------------------------------------------------------- graph files

void save_graph(const fs::path& path, const Roster& roster, const DyadStateVector& states) {
  const DyadLayout layout(roster.size());
  if (static_cast<int>(states.size()) != layout.dyad_count())
    throw std::invalid_argument("save_graph: dyad state vector length disagrees with roster");
  std::ostringstream out;
  out << "# format: tginfer.graph/1\nego,alter,state\n";
  for (int d = 0; d < layout.dyad_count(); ++d) {
    const auto [i, j] = layout.pair(d);
    out << roster.label(i) << ',' << roster.label(j) << ',' << to_int(states[d]) << "\n";
  }
  write_file_atomic(path, out.str());
}

DyadStateVector load_graph(const fs::path& path, const Roster& roster) {
  const auto lines = read_lines(path);
  const size_t first = expect_format(lines, "tginfer.graph/1", "ego,alter,state", path);
  const DyadLayout layout(roster.size());
  DyadStateVector states(layout.dyad_count(), DyadState::tied);
  std::vector<bool> seen(layout.dyad_count(), false);
  for (size_t i = first; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const std::string where = path.string() + " line " + std::to_string(i + 1);
    const auto fields = split_csv(lines[i]);
    if (fields.size() != 3) throw std::runtime_error(where + ": expected 3 fields");
    const auto ego_idx = roster.index_of(fields[0]);
    const auto alter_idx = roster.index_of(fields[1]);
    if (!ego_idx || !alter_idx) throw std::runtime_error(where + ": unknown vertex label");
    if (*ego_idx == *alter_idx) throw std::runtime_error(where + ": self-dyad");
    const int lo = std::min(*ego_idx, *alter_idx);
    const int hi = std::max(*ego_idx, *alter_idx);
    const int dyad = layout.flat(lo, hi);
    if (seen[dyad]) throw std::runtime_error(where + ": duplicate dyad");
    seen[dyad] = true;
    int value = parse_state(fields[2], where + ": state");
    if (*ego_idx != lo) value = -value;  // stated relative to the ego column
    states[dyad] = state_from_int(value);
  }
  for (int d = 0; d < layout.dyad_count(); ++d)
    if (!seen[d]) {
      const auto [i, j] = layout.pair(d);
      throw std::runtime_error(path.string() + ": missing dyad {" + roster.label(i) + ", " + roster.label(j) +
                               "}");
    }
  return states;
}

// ------------------------------------------------------------------- rates

void save_rates(const fs::path& path, const std::vector<std::string>& informant_ids,
                std::span<const ErrorRates> rates) {
  if (informant_ids.size() != rates.size()) throw std::invalid_argument("save_rates: dimensions disagree");
  std::ostringstream out;
  out << "# format: tginfer.rates/1\ninformant,reversal,false_tie,false_decisive\n";
  for (size_t k = 0; k < rates.size(); ++k) {
    validate_token(informant_ids[k], "informant id");
    out << informant_ids[k] << ',' << fmt(rates[k].reversal) << ',' << fmt(rates[k].false_tie) << ','
        << fmt(rates[k].false_decisive) << "\n";
  }
  write_file_atomic(path, out.str());
}

RatesData load_rates(const fs::path& path) {
  const auto lines = read_lines(path);
  const size_t first =
      expect_format(lines, "tginfer.rates/1", "informant,reversal,false_tie,false_decisive", path);
  RatesData data;
  std::set<std::string> seen;
  for (size_t i = first; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const std::string where = path.string() + " line " + std::to_string(i + 1);
    const auto fields = split_csv(lines[i]);
    if (fields.size() != 4) throw std::runtime_error(where + ": expected 4 fields");
    validate_token(fields[0], where + ": informant id");
    if (!seen.insert(fields[0]).second)
      throw std::runtime_error(where + ": duplicate informant id '" + fields[0] + "'");
    ErrorRates r;
    r.reversal = parse_double(fields[1], where + ": reversal");
    r.false_tie = parse_double(fields[2], where + ": false_tie");
    r.false_decisive = parse_double(fields[3], where + ": false_decisive");
    validate(r);
    data.informant_ids.push_back(fields[0]);
    data.rates.push_back(r);
  }
  return data;
}

// ------------------------------------------------------------------- draws

namespace {

std::string draws_header(int n_vertices, int m_informants) {
  const DyadLayout layout(n_vertices);
  std::ostringstream out;
  out << "chain,iteration";
  for (int d = 0; d < layout.dyad_count(); ++d) {
    const auto [i, j] = layout.pair(d);
    out << ",state_" << i << '_' << j;
  }
  for (int k = 0; k < m_informants; ++k)
    out << ",reversal_" << k << ",false_tie_" << k << ",false_decisive_" << k;
  return out.str();
}

}  // namespace

void save_draws(const fs::path& path, const std::vector<Chain>& chains) {
  const ChainState* first_state = nullptr;
  for (const Chain& c : chains)
    if (!c.empty()) {
      first_state = &c.front();
      break;
    }
  if (!first_state) throw std::invalid_argument("save_draws: no retained states");
  const int n_dyads = static_cast<int>(first_state->states.size());
  const int m = static_cast<int>(first_state->rates.size());
  const int n = vertex_count_from_dyads(n_dyads, "save_draws");

  std::ostringstream out;
  out << "# format: tginfer.draws/1\n" << draws_header(n, m) << "\n";
  for (size_t c = 0; c < chains.size(); ++c)
    for (const ChainState& state : chains[c]) {
      if (static_cast<int>(state.states.size()) != n_dyads || static_cast<int>(state.rates.size()) != m)
        throw std::invalid_argument("save_draws: retained states disagree on dimensions");
      out << c << ',' << state.iteration;
      for (DyadState s : state.states) out << ',' << to_int(s);
      for (const ErrorRates& r : state.rates)
        out << ',' << fmt(r.reversal) << ',' << fmt(r.false_tie) << ',' << fmt(r.false_decisive);
      out << "\n";
    }
  write_file_atomic(path, out.str());
}

std::vector<Chain> load_draws(const fs::path& path) {
  const auto lines = read_lines(path);
  if (lines.empty() || lines[0] != "# format: tginfer.draws/1")
    throw std::runtime_error(path.string() + ": expected first line '# format: tginfer.draws/1'");
  if (lines.size() < 2) throw std::runtime_error(path.string() + ": missing header");

  const auto header = split_csv(lines[1]);
  int n_dyads = 0, m = 0;
  for (const std::string& col : header) {
    if (col.rfind("state_", 0) == 0) ++n_dyads;
    if (col.rfind("reversal_", 0) == 0) ++m;
  }
  const int n = vertex_count_from_dyads(n_dyads, path.string());
  if (lines[1] != draws_header(n, m))
    throw std::runtime_error(path.string() + ": draws header does not match the documented layout");

  std::vector<Chain> chains;
  std::map<std::int64_t, size_t> chain_index;
  for (size_t i = 2; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const std::string where = path.string() + " line " + std::to_string(i + 1);
    const auto fields = split_csv(lines[i]);
    if (fields.size() != static_cast<size_t>(2 + n_dyads + 3 * m))
      throw std::runtime_error(where + ": wrong field count");
    const std::int64_t chain_id = parse_int64(fields[0], where + ": chain");
    ChainState state;
    state.iteration = parse_int64(fields[1], where + ": iteration");
    state.states.resize(n_dyads);
    for (int d = 0; d < n_dyads; ++d)
      state.states[d] = state_from_int(parse_state(fields[2 + d], where + ": state"));
    state.rates.resize(m);
    for (int k = 0; k < m; ++k) {
      state.rates[k].reversal = parse_double(fields[2 + n_dyads + 3 * k], where + ": reversal");
      state.rates[k].false_tie = parse_double(fields[2 + n_dyads + 3 * k + 1], where + ": false_tie");
      state.rates[k].false_decisive = parse_double(fields[2 + n_dyads + 3 * k + 2], where + ": false_decisive");
    }
    auto [it, inserted] = chain_index.try_emplace(chain_id, chains.size());
    if (inserted) chains.emplace_back();
    chains[it->second].push_back(std::move(state));
  }
  if (chains.empty()) throw std::runtime_error(path.string() + ": no retained states");
  return chains;
}

// --------------------------------------------------------- summary outputs

void save_marginals(const fs::path& path, const Roster& roster, const std::vector<StateProbs>& marginals) {
  const DyadLayout layout(roster.size());
  if (static_cast<int>(marginals.size()) != layout.dyad_count())
    throw std::invalid_argument("save_marginals: dimensions disagree");
  std::ostringstream out;
  out << "# format: tginfer.marginals/1\nego,alter,p_ego_wins,p_alter_wins,p_tie\n";
  for (int d = 0; d < layout.dyad_count(); ++d) {
    const auto [i, j] = layout.pair(d);
    out << roster.label(i) << ',' << roster.label(j) << ',' << fmt(marginals[d].first_wins) << ','
        << fmt(marginals[d].second_wins) << ',' << fmt(marginals[d].tied) << "\n";
  }
  write_file_atomic(path, out.str());
}

namespace {

void append_rate_rows(std::ostringstream& out, const std::string& id, const InformantSummary& s, bool rhat_only) {
  const std::pair<const char*, const ScalarSummary*> rows[] = {
      {"reversal", &s.reversal}, {"false_tie", &s.false_tie}, {"false_decisive", &s.false_decisive}};
  for (const auto& [name, sum] : rows) {
    if (rhat_only)
      out << id << ',' << name << ',' << fmt(sum->rhat) << "\n";
    else
      out << id << ',' << name << ',' << fmt(sum->mean) << ',' << fmt(sum->q025) << ',' << fmt(sum->median)
          << ',' << fmt(sum->q975) << "\n";
  }
}

}  // namespace

void save_rate_summaries(const fs::path& path, const std::vector<std::string>& informant_ids,
                         const std::vector<InformantSummary>& informants) {
  if (informant_ids.size() != informants.size())
    throw std::invalid_argument("save_rate_summaries: dimensions disagree");
  std::ostringstream out;
  out << "# format: tginfer.rate_summary/1\ninformant,rate,mean,q025,median,q975\n";
  for (size_t k = 0; k < informants.size(); ++k) append_rate_rows(out, informant_ids[k], informants[k], false);
  write_file_atomic(path, out.str());
}

void save_rhat(const fs::path& path, const std::vector<std::string>& informant_ids,
               const std::vector<InformantSummary>& informants) {
  if (informant_ids.size() != informants.size()) throw std::invalid_argument("save_rhat: dimensions disagree");
  std::ostringstream out;
  out << "# format: tginfer.rhat/1\ninformant,rate,rhat\n";
  for (size_t k = 0; k < informants.size(); ++k) append_rate_rows(out, informant_ids[k], informants[k], true);
  write_file_atomic(path, out.str());
}

// ------------------------------------------------------------- run config

std::vector<ErrorPriors> RunConfig::priors_for(int m_informants) const {
  if (informant_priors) {
    if (static_cast<int>(informant_priors->size()) != m_informants)
      throw std::runtime_error("config lists " + std::to_string(informant_priors->size()) +
                               " informant priors but the reports file has " + std::to_string(m_informants) +
                               " informants");
    return *informant_priors;
  }
  if (m_informants == 0) return {};
  return build_error_priors(rate_prior->first, rate_prior->second, m_informants);
}

RunConfig load_run_config(const fs::path& path) {
  const json j = parse_json_file(path);
  const std::string where = path.string();
  check_keys(j, where, {"format_version", "roster", "lambda", "rho", "gamma", "informant_priors", "sampler"});
  check_format_version(j, where);

  RunConfig cfg;
  cfg.roster_labels = roster_labels_from_json(need(j, where, "roster"), where);
  Roster roster(cfg.roster_labels);  // validates early
  cfg.prior.tie_prob = get_double(j, where, "lambda");
  validate(cfg.prior);

  const bool has_shared = j.contains("rho") || j.contains("gamma");
  const bool has_explicit = j.contains("informant_priors");
  if (has_shared == has_explicit)
    throw std::runtime_error(where + ": give either rho and gamma, or informant_priors, not both");
  if (has_shared) {
    if (!j.contains("rho") || !j.contains("gamma"))
      throw std::runtime_error(where + ": rho and gamma must be given together");
    cfg.rate_prior = {get_double(j, where, "rho"), get_double(j, where, "gamma")};
    build_error_priors(cfg.rate_prior->first, cfg.rate_prior->second, 1);  // range check
  } else {
    std::vector<ErrorPriors> priors;
    const json& arr = need(j, where, "informant_priors");
    if (!arr.is_array()) throw std::runtime_error(where + ": informant_priors must be an array");
    for (size_t i = 0; i < arr.size(); ++i)
      priors.push_back(priors_from_json(arr[i], where + ": informant_priors[" + std::to_string(i) + "]"));
    if (priors.empty()) throw std::runtime_error(where + ": informant_priors may not be empty");
    cfg.informant_priors = std::move(priors);
  }

  const json& s = need(j, where, "sampler");
  if (!s.is_object()) throw std::runtime_error(where + ": sampler must be an object");
  const std::string swhere = where + ": sampler";
  check_keys(s, swhere, {"iterations", "burn_in", "thin", "chains", "seed"});
  cfg.sampler.n_iterations = get_int(s, swhere, "iterations");
  cfg.sampler.burn_in = get_int(s, swhere, "burn_in", 0);
  cfg.sampler.thin = get_int(s, swhere, "thin", 1);
  cfg.sampler.n_chains = static_cast<int>(get_int(s, swhere, "chains", 1));
  cfg.sampler.seed = get_seed(s, swhere);
  validate(cfg.sampler);
  return cfg;
}

// --------------------------------------------------------- simulation spec

SimulationFile load_simulation_file(const fs::path& path) {
  const json j = parse_json_file(path);
  const std::string where = path.string();
  check_keys(j, where, {"format_version", "n_vertices", "roster", "n_informants", "lambda", "missing_rate",
                        "seed", "rates", "rho", "gamma"});
  check_format_version(j, where);

  SimulationFile file;
  SimulationSpec& spec = file.spec;

  const bool has_n = j.contains("n_vertices");
  const bool has_roster = j.contains("roster");
  if (has_n == has_roster)
    throw std::runtime_error(where + ": give either n_vertices or an explicit roster, not both");
  if (has_roster) {
    file.roster_labels = roster_labels_from_json(j.at("roster"), where);
  } else {
    const std::int64_t n = get_int(j, where, "n_vertices");
    if (n < 2 || n > 10000) throw std::runtime_error(where + ": n_vertices out of range");
    for (std::int64_t v = 1; v <= n; ++v) file.roster_labels.push_back("v" + std::to_string(v));
  }
  spec.n_vertices = static_cast<int>(file.roster_labels.size());

  const std::int64_t m = get_int(j, where, "n_informants");
  if (m < 1 || m > 1000000) throw std::runtime_error(where + ": n_informants out of range");
  spec.n_informants = static_cast<int>(m);
  for (std::int64_t k = 1; k <= m; ++k) file.informant_ids.push_back("k" + std::to_string(k));

  spec.tie_prob = get_double(j, where, "lambda");
  if (j.contains("missing_rate")) spec.missing_rate = get_double(j, where, "missing_rate");
  spec.seed = get_seed(j, where);

  const bool has_rates = j.contains("rates");
  const bool has_shared = j.contains("rho") || j.contains("gamma");
  if (has_rates == has_shared)
    throw std::runtime_error(where + ": give either rates, or rho and gamma, not both");
  if (has_rates) {
    const json& r = j.at("rates");
    std::vector<ErrorRates> rates;
    if (r.is_array()) {
      for (size_t i = 0; i < r.size(); ++i)
        rates.push_back(rates_from_json(r[i], where + ": rates[" + std::to_string(i) + "]"));
    } else {
      rates.assign(spec.n_informants, rates_from_json(r, where + ": rates"));
    }
    spec.rates = std::move(rates);
  } else {
    if (!j.contains("rho") || !j.contains("gamma"))
      throw std::runtime_error(where + ": rho and gamma must be given together");
    spec.rate_prior = {get_double(j, where, "rho"), get_double(j, where, "gamma")};
  }

  validate(spec);
  return file;
}

// ----------------------------------------------------------- orchestration

void run_simulate(const fs::path& spec_file, const fs::path& out_dir) {
  const SimulationFile file = load_simulation_file(spec_file);
  const SimulatedDataset data = simulate(file.spec);
  const Roster roster(file.roster_labels);

  fs::create_directories(out_dir);
  save_roster(out_dir / "roster.csv", roster);
  save_reports(out_dir / "reports.csv", roster, file.informant_ids, data.reports, data.mask);
  save_graph(out_dir / "truth_graph.csv", roster, data.truth);
  save_rates(out_dir / "truth_rates.csv", file.informant_ids, data.rates);
}

namespace {

void write_summary_files(const fs::path& out_dir, const Roster& roster,
                         const std::vector<std::string>& informant_ids, const PosteriorSummary& summary) {
  save_marginals(out_dir / "marginals.csv", roster, summary.dyad_marginals);
  save_graph(out_dir / "map.csv", roster, summary.map_graph);
  save_rate_summaries(out_dir / "rates.csv", informant_ids, summary.informants);
  save_rhat(out_dir / "rhat.csv", informant_ids, summary.informants);
}

}  // namespace

void run_infer(const fs::path& config_file, const fs::path& reports_file, const fs::path& out_dir) {
  const RunConfig cfg = load_run_config(config_file);
  const Roster roster = cfg.roster();
  const ReportsData data = load_reports(reports_file, roster);
  const std::vector<ErrorPriors> priors = cfg.priors_for(static_cast<int>(data.informant_ids.size()));

  const std::vector<Chain> chains = gibbs_run(data.reports, data.observed, cfg.prior, priors, cfg.sampler);
  const PosteriorSummary summary = summarize(chains);

  fs::create_directories(out_dir);
  save_draws(out_dir / "draws.csv", chains);
  save_roster(out_dir / "roster.csv", roster);
  save_informants(out_dir / "informants.csv", data.informant_ids);
  write_summary_files(out_dir, roster, data.informant_ids, summary);
}

void run_summarize(const fs::path& draws_file, const fs::path& roster_file,
                   const std::optional<fs::path>& informants_file, const fs::path& out_dir) {
  const std::vector<Chain> chains = load_draws(draws_file);
  const Roster roster = load_roster(roster_file);
  const PosteriorSummary summary = summarize(chains);

  if (static_cast<int>(summary.dyad_marginals.size()) != roster.dyad_count())
    throw std::runtime_error("draws file dyad count does not match the roster");

  std::vector<std::string> ids;
  if (informants_file) {
    ids = load_informants(*informants_file);
    if (ids.size() != summary.informants.size())
      throw std::runtime_error("informants file does not match the draws file informant count");
  } else {
    for (size_t k = 1; k <= summary.informants.size(); ++k) ids.push_back("k" + std::to_string(k));
  }

  fs::create_directories(out_dir);
  write_summary_files(out_dir, roster, ids, summary);
}

OracleCheckResult run_oracle_check(const fs::path& config_file, const fs::path& reports_file,
                                   const OracleCheckOptions& options, std::ostream& out) {
  const RunConfig cfg = load_run_config(config_file);
  const Roster roster = cfg.roster();
  const ReportsData data = load_reports(reports_file, roster);
  const int m = static_cast<int>(data.informant_ids.size());

  SamplerConfig sampler_cfg = cfg.sampler;
  std::vector<ErrorPriors> priors;
  ExactPosterior oracle;
  OracleCheckResult result;
  result.tolerance = options.tolerance;
  result.fixed_mode = options.clamp_rates_file.has_value();

  if (result.fixed_mode) {
    const RatesData rates_data = load_rates(*options.clamp_rates_file);
    std::vector<ErrorRates> clamp(m);
    for (int k = 0; k < m; ++k) {
      bool found = false;
      for (size_t r = 0; r < rates_data.informant_ids.size(); ++r)
        if (rates_data.informant_ids[r] == data.informant_ids[k]) {
          clamp[k] = rates_data.rates[r];
          found = true;
          break;
        }
      if (!found)
        throw std::runtime_error("clamp rates file has no entry for informant '" + data.informant_ids[k] + "'");
    }
    sampler_cfg.clamp_rates = clamp;
    oracle = exact_fixed_error_posterior(data.reports, data.observed, clamp, cfg.prior);
  } else {
    priors = cfg.priors_for(m);
    oracle = collapsed_exact_posterior(data.reports, data.observed, cfg.prior, priors, options.max_dyads);
  }

  const std::vector<Chain> chains = gibbs_run(data.reports, data.observed, cfg.prior, priors, sampler_cfg);
  const PosteriorSummary summary = summarize(chains);

  const DyadLayout layout(roster.size());
  result.per_dyad_diff.resize(layout.dyad_count());
  out << "mode," << (result.fixed_mode ? "fixed-error" : "collapsed") << "\n";
  out << "ego,alter,max_abs_diff\n";
  for (int d = 0; d < layout.dyad_count(); ++d) {
    const StateProbs& a = summary.dyad_marginals[d];
    const StateProbs& b = oracle.marginals[d];
    const double diff = std::max({std::abs(a.first_wins - b.first_wins),
                                  std::abs(a.second_wins - b.second_wins), std::abs(a.tied - b.tied)});
    result.per_dyad_diff[d] = diff;
    result.max_diff = std::max(result.max_diff, diff);
    const auto [i, j] = layout.pair(d);
    out << roster.label(i) << ',' << roster.label(j) << ',' << fmt(diff) << "\n";
  }
  result.passed = result.max_diff <= options.tolerance;
  out << "overall," << fmt(result.max_diff) << "\n";
  out << "tolerance," << fmt(options.tolerance) << "\n";
  out << "result," << (result.passed ? "pass" : "fail") << "\n";
  return result;
}

}  // namespace tginfer::io
