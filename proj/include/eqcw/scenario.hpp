#pragma once

// Scenario files: line-oriented `key = value` pairs followed by optional
// sections. Comments start with '#'. Keys:
//   symmetry      algebra reference (required)
//   structure     algebra reference (required)
//   truncation    integer >= 0 (required)
//   series        <ch|a_hat> <degree>
//   normalization <2pi|4pi>
//   suites        space-separated list of verify-core universal-check series anomaly
// Sections:
//   [monopole]     charge = <int...>, grid = <N>x<M>, gauge = <rational...>
//   [table NAME]   dim = <n>, then lines `f c a b = <rational>` (1-based) for
//                  f^c_{ab}; the antisymmetric partner is filled in.
// Algebra references are u1, u2, su2, so3, trivial, abelian(n) or table:NAME.
// Text outside BEGIN SCENARIO / END SCENARIO is ignored when those markers
// are present, so a report can be fed back in.

#include <algorithm>
#include <array>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "eqcw/char_series.hpp"
#include "eqcw/errors.hpp"
#include "eqcw/lie.hpp"

namespace eqcw {

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"verify-core", "universal-check", "series", "anomaly"};
  return names;
}

struct SchemaError {
  int line = 0;  // 0 when the error is not tied to a line
  std::string message;
  std::string to_string() const { return (line > 0 ? "line " + std::to_string(line) + ": " : "") + message; }
};

class ScenarioError : public Error {
 public:
  explicit ScenarioError(std::vector<SchemaError> errors) : Error(join(errors)), errors_(std::move(errors)) {}
  const std::vector<SchemaError>& errors() const { return errors_; }

 private:
  static std::string join(const std::vector<SchemaError>& errors) {
    std::string out = "scenario rejected";
    for (const auto& e : errors) out += "\n  " + e.to_string();
    return out;
  }
  std::vector<SchemaError> errors_;
};

struct TableDecl {
  std::string name;
  int dim = 0;
  std::map<std::array<int, 3>, Rational> entries;  // (c, a, b) 0-based, a < b
};

struct MonopoleSpec {
  std::vector<int> charges;
  int n_theta = 0, n_phi = 0;
  std::vector<Rational> gauge;
};

struct SeriesSpec {
  std::string name;
  int degree = 0;
};

struct Scenario {
  std::string symmetry, structure;
  int truncation = 0;
  std::optional<SeriesSpec> series;
  Normalization normalization = Normalization::two_pi;
  std::vector<std::string> suites;
  std::optional<MonopoleSpec> monopole;
  std::map<std::string, TableDecl> tables;

  LieAlgebraData symmetry_algebra() const { return algebra(symmetry); }
  LieAlgebraData structure_algebra() const { return algebra(structure); }

  LieAlgebraData algebra(const std::string& ref) const {
    if (ref.rfind("table:", 0) == 0) {
      const auto& t = tables.at(ref.substr(6));
      LieAlgebraData g(t.name, t.dim);
      for (const auto& [cab, value] : t.entries) g.set_bracket(cab[1], cab[2], cab[0], Scalar(value));
      return g;
    }
    return *builtin_algebra(ref);
  }

  /// Canonical text with every default filled in; parsing it gives back an
  /// equal scenario.
  std::string resolved() const {
    std::ostringstream os;
    os << "symmetry = " << symmetry << "\n"
       << "structure = " << structure << "\n"
       << "truncation = " << truncation << "\n";
    if (series) os << "series = " << series->name << " " << series->degree << "\n";
    os << "normalization = " << to_string(normalization) << "\n";
    os << "suites =";
    for (const auto& s : suites) os << " " << s;
    os << "\n";
    if (monopole) {
      os << "\n[monopole]\ncharge =";
      for (int k : monopole->charges) os << " " << k;
      os << "\ngrid = " << monopole->n_theta << "x" << monopole->n_phi << "\ngauge =";
      for (const auto& l : monopole->gauge) os << " " << l.get_str();
      os << "\n";
    }
    for (const auto& [name, t] : tables) {
      os << "\n[table " << name << "]\ndim = " << t.dim << "\n";
      for (const auto& [cab, value] : t.entries)
        os << "f " << cab[0] + 1 << " " << cab[1] + 1 << " " << cab[2] + 1 << " = " << value.get_str() << "\n";
    }
    return os.str();
  }
};

namespace scenario_detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

inline std::vector<std::string> words(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  for (std::string w; is >> w;) out.push_back(w);
  return out;
}

inline std::optional<long> parse_int(const std::string& s) {
  if (s.empty()) return std::nullopt;
  std::size_t used = 0;
  try {
    const long v = std::stol(s, &used);
    if (used != s.size()) return std::nullopt;
    return v;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

inline std::optional<Rational> parse_rational(const std::string& s) {
  if (s.empty() || s.find_first_not_of("+-0123456789/") != std::string::npos) return std::nullopt;
  const std::string body = s[0] == '+' ? s.substr(1) : s;
  Rational r;
  if (r.set_str(body, 10) != 0) return std::nullopt;
  if (r.get_den() == 0) return std::nullopt;
  r.canonicalize();
  return r;
}

struct Parser {
  Scenario sc;
  std::vector<SchemaError> errors;
  std::map<std::string, int> seen;  // "section/key" -> line
  bool have_grid = false, have_dim = false;
  std::string section = "";  // "", "monopole" or "table NAME"
  TableDecl* table = nullptr;

  void error(int line, std::string message) { errors.push_back({line, std::move(message)}); }

  bool first_time(int line, const std::string& key) {
    auto [it, inserted] = seen.emplace(section + "/" + key, line);
    if (!inserted) error(line, "duplicate key '" + key + "' (first set on line " + std::to_string(it->second) + ")");
    return inserted;
  }

  void top_level(int line, const std::string& key, const std::string& value) {
    const auto w = words(value);
    if (key == "symmetry" || key == "structure") {
      if (w.size() != 1) return error(line, "'" + key + "' takes one algebra reference");
      (key == "symmetry" ? sc.symmetry : sc.structure) = w[0];
    } else if (key == "truncation") {
      auto v = w.size() == 1 ? parse_int(w[0]) : std::nullopt;
      if (!v || *v < 0 || *v > 64) return error(line, "'truncation' must be an integer in [0, 64]");
      sc.truncation = static_cast<int>(*v);
    } else if (key == "series") {
      auto deg = w.size() == 2 ? parse_int(w[1]) : std::nullopt;
      if (!deg || *deg < 0 || *deg > 64) return error(line, "'series' expects '<name> <degree>' with degree in [0, 64]");
      if (w[0] != "ch" && w[0] != "a_hat") return error(line, "unknown series '" + w[0] + "' (expected ch or a_hat)");
      sc.series = SeriesSpec{w[0], static_cast<int>(*deg)};
    } else if (key == "normalization") {
      auto n = w.size() == 1 ? parse_normalization(w[0]) : std::nullopt;
      if (!n) return error(line, "'normalization' must be 2pi or 4pi");
      sc.normalization = *n;
    } else if (key == "suites") {
      sc.suites.clear();
      for (const auto& s : w) {
        if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end())
          error(line, "unknown suite '" + s + "'");
        else if (std::find(sc.suites.begin(), sc.suites.end(), s) == sc.suites.end())
          sc.suites.push_back(s);
      }
    } else {
      error(line, "unknown key '" + key + "'");
    }
  }

  void monopole_key(int line, const std::string& key, const std::string& value) {
    auto& m = *sc.monopole;
    const auto w = words(value);
    if (key == "charge") {
      if (w.empty()) return error(line, "'charge' needs at least one integer");
      for (const auto& s : w) {
        auto k = parse_int(s);
        if (!k || *k < -1000 || *k > 1000) return error(line, "bad charge '" + s + "'");
        m.charges.push_back(static_cast<int>(*k));
      }
    } else if (key == "grid") {
      const auto x = value.find('x');
      auto nt = x == std::string::npos ? std::nullopt : parse_int(trim(value.substr(0, x)));
      auto np = x == std::string::npos ? std::nullopt : parse_int(trim(value.substr(x + 1)));
      if (!nt || !np || *nt < 6 || *np < 9 || *nt > 4096 || *np > 8192)
        return error(line, "'grid' must be <n_theta>x<n_phi> with n_theta >= 6 and n_phi >= 9");
      m.n_theta = static_cast<int>(*nt);
      m.n_phi = static_cast<int>(*np);
      have_grid = true;
    } else if (key == "gauge") {
      if (w.empty()) return error(line, "'gauge' needs at least one rational");
      for (const auto& s : w) {
        auto r = parse_rational(s);
        if (!r) return error(line, "bad gauge value '" + s + "'");
        m.gauge.push_back(*r);
      }
    } else {
      error(line, "unknown key '" + key + "' in [monopole]");
    }
  }

  void table_line(int line, const std::string& raw) {
    const auto eq = raw.find('=');
    const std::string lhs = trim(raw.substr(0, eq)), rhs = eq == std::string::npos ? "" : trim(raw.substr(eq + 1));
    const auto w = words(lhs);
    if (w.size() == 1 && w[0] == "dim") {
      if (!first_time(line, "dim")) return;
      auto d = parse_int(rhs);
      if (!d || *d < 1 || *d > 64) return error(line, "'dim' must be an integer in [1, 64]");
      table->dim = static_cast<int>(*d);
      have_dim = true;
      return;
    }
    if (w.size() == 4 && w[0] == "f") {
      if (!have_dim) return error(line, "'dim' must precede structure constants");
      std::array<int, 3> cab{};
      for (int k = 0; k < 3; ++k) {
        auto v = parse_int(w[static_cast<std::size_t>(k + 1)]);
        if (!v || *v < 1 || *v > table->dim) return error(line, "index '" + w[static_cast<std::size_t>(k + 1)] + "' out of range 1.." + std::to_string(table->dim));
        cab[static_cast<std::size_t>(k)] = static_cast<int>(*v) - 1;
      }
      auto value = parse_rational(rhs);
      if (!value) return error(line, "bad structure constant '" + rhs + "'");
      if (cab[1] == cab[2]) {
        if (sgn(*value) != 0) error(line, "f^c_{aa} must vanish");
        return;
      }
      Rational v = *value;
      if (cab[1] > cab[2]) {
        std::swap(cab[1], cab[2]);
        v = -v;
      }
      auto [it, inserted] = table->entries.emplace(cab, v);
      if (!inserted && it->second != v) return error(line, "conflicting value for f " + w[1] + " " + w[2] + " " + w[3]);
      if (sgn(it->second) == 0) table->entries.erase(it);
      return;
    }
    error(line, "unknown key '" + (w.empty() ? raw : w[0]) + "' in [table " + table->name + "]");
  }

  void finish_section(int line) {
    if (section == "monopole") {
      if (!have_grid) error(line, "[monopole] needs 'grid'");
      if (sc.monopole->charges.empty()) error(line, "[monopole] needs 'charge'");
      if (sc.monopole->gauge.empty()) sc.monopole->gauge = {Rational(1)};
    } else if (table && !have_dim) {
      error(line, "[table " + table->name + "] needs 'dim'");
    }
  }

  void open_section(int line, const std::string& header) {
    const auto w = words(header);
    table = nullptr;
    have_grid = have_dim = false;
    if (w.size() == 1 && w[0] == "monopole") {
      if (sc.monopole) error(line, "duplicate [monopole] section");
      sc.monopole.emplace();
      section = "monopole";
    } else if (w.size() == 2 && w[0] == "table") {
      if (w[1].find_first_not_of("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_") != std::string::npos)
        error(line, "table name '" + w[1] + "' must be alphanumeric");
      section = "table " + w[1];
      auto [it, inserted] = sc.tables.emplace(w[1], TableDecl{w[1], 0, {}});
      if (!inserted) error(line, "duplicate [table " + w[1] + "]");
      table = &it->second;
    } else {
      error(line, "unknown section [" + header + "]");
      section = "invalid";
    }
  }

  void check_algebra(const std::string& key, const std::string& ref) {
    if (ref.empty()) return error(0, "missing required key '" + key + "'");
    if (ref.rfind("table:", 0) == 0) {
      if (!sc.tables.count(ref.substr(6))) error(0, "'" + key + "' refers to undeclared table '" + ref.substr(6) + "'");
      return;
    }
    if (!builtin_algebra(ref)) error(0, "'" + key + "' names unknown algebra '" + ref + "'");
  }
};

}  // namespace scenario_detail

inline Scenario parse_scenario_text(const std::string& text) {
  std::vector<std::string> lines;
  {
    std::istringstream is(text);
    for (std::string l; std::getline(is, l);) lines.push_back(l);
  }
  // A report embeds the scenario between markers; keep line numbers absolute.
  std::size_t begin = 0, end = lines.size();
  for (std::size_t k = 0; k < lines.size(); ++k)
    if (scenario_detail::trim(lines[k]) == "BEGIN SCENARIO") {
      begin = k + 1;
      for (end = begin; end < lines.size() && scenario_detail::trim(lines[end]) != "END SCENARIO";) ++end;
      break;
    }

  scenario_detail::Parser p;
  bool have_truncation = false, have_suites = false;
  for (std::size_t k = begin; k < end; ++k) {
    const int line = static_cast<int>(k) + 1;
    std::string raw = lines[k];
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    raw = scenario_detail::trim(raw);
    if (raw.empty()) continue;
    if (raw.front() == '[') {
      if (raw.back() != ']') {
        p.error(line, "unterminated section header");
        continue;
      }
      p.finish_section(line);
      p.open_section(line, raw.substr(1, raw.size() - 2));
      continue;
    }
    if (p.section == "invalid") continue;
    if (p.table) {
      p.table_line(line, raw);
      continue;
    }
    const auto eq = raw.find('=');
    if (eq == std::string::npos) {
      p.error(line, "expected 'key = value'");
      continue;
    }
    const std::string key = scenario_detail::trim(raw.substr(0, eq)), value = scenario_detail::trim(raw.substr(eq + 1));
    if (!p.first_time(line, key)) continue;
    if (p.section == "monopole") {
      p.monopole_key(line, key, value);
    } else {
      if (key == "truncation") have_truncation = true;
      if (key == "suites") have_suites = true;
      p.top_level(line, key, value);
    }
  }
  p.finish_section(static_cast<int>(end));

  auto& sc = p.sc;
  p.check_algebra("symmetry", sc.symmetry);
  p.check_algebra("structure", sc.structure);
  if (!have_truncation) p.error(0, "missing required key 'truncation'");
  if (!have_suites) {
    sc.suites = {"verify-core", "universal-check"};
    if (sc.series) sc.suites.push_back("series");
    if (sc.monopole) sc.suites.push_back("anomaly");
  }
  auto wants = [&](const char* s) { return std::find(sc.suites.begin(), sc.suites.end(), s) != sc.suites.end(); };
  if (wants("series") && !sc.series) p.error(0, "suite 'series' needs the 'series' key");
  if (wants("anomaly") && !sc.monopole) p.error(0, "suite 'anomaly' needs a [monopole] section");
  if ((wants("series") || wants("anomaly")) && have_truncation && sc.truncation < 4)
    p.error(0, "truncation must be at least 4 when series or anomaly checks are requested");
  if (!p.errors.empty()) throw ScenarioError(std::move(p.errors));
  return sc;
}

inline Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError({{0, "cannot read scenario file '" + path + "'"}});
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario_text(buf.str());
}

}  // namespace eqcw
