#include "ecoepi/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "ecoepi/output.hpp"

namespace ecoepi {

namespace {

struct Entry {
  std::string value;
  int line = 0;
  bool used = false;
};

using Section = std::map<std::string, Entry>;

std::string trim(std::string_view s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return std::string(s.substr(begin, end - begin + 1));
}

[[noreturn]] void fail(const std::string& file, int line, const std::string& what) {
  std::ostringstream os;
  os << file << ":" << line << ": " << what;
  throw ConfigError(os.str());
}

double parse_number(const std::string& file, const Entry& e, const std::string& key) {
  const std::string& v = e.value;
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size())
    fail(file, e.line, "key '" + key + "': expected a number, got '" + v + "'");
  if (!std::isfinite(out)) fail(file, e.line, "key '" + key + "': value must be finite");
  return out;
}

class Sections {
 public:
  Sections(std::string file) : file_(std::move(file)) {}

  Section& operator[](const std::string& name) { return sections_[name]; }
  bool has(const std::string& name) const { return sections_.count(name) != 0; }
  const std::string& file() const { return file_; }

  Entry* find(const std::string& section, const std::string& key) {
    auto sit = sections_.find(section);
    if (sit == sections_.end()) return nullptr;
    auto kit = sit->second.find(key);
    if (kit == sit->second.end()) return nullptr;
    kit->second.used = true;
    return &kit->second;
  }

  double require_number(const std::string& section, const std::string& key) {
    Entry* e = find(section, key);
    if (!e) fail(file_, 0, "missing required key '" + key + "' in section [" + section + "]");
    return parse_number(file_, *e, key);
  }

  std::string require_string(const std::string& section, const std::string& key) {
    Entry* e = find(section, key);
    if (!e) fail(file_, 0, "missing required key '" + key + "' in section [" + section + "]");
    return e->value;
  }

  void reject_unused() const {
    for (const auto& [sname, sec] : sections_)
      for (const auto& [key, e] : sec)
        if (!e.used) fail(file_, e.line, "unknown key '" + key + "' in section [" + sname + "]");
  }

 private:
  std::string file_;
  std::map<std::string, Section> sections_;
};

Sections tokenize(std::string_view text, const std::string& filename) {
  static const std::set<std::string> known_sections = {"model", "params", "initial", "integrate",
                                                       "output"};
  Sections out(filename);
  std::string current;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const std::string line =
        trim(text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos));
    ++line_no;
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;

    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(filename, line_no, "malformed section header '" + line + "'");
      current = trim(std::string_view(line).substr(1, line.size() - 2));
      if (!known_sections.count(current))
        fail(filename, line_no, "unknown section [" + current + "]");
      out[current];  // materialize even if empty
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      fail(filename, line_no, "expected 'key = value', got '" + line + "'");
    if (current.empty()) fail(filename, line_no, "key outside of any [section]");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key.empty()) fail(filename, line_no, "empty key");
    auto& section = out[current];
    if (section.count(key)) fail(filename, line_no, "duplicate key '" + key + "'");
    section[key] = Entry{value, line_no, false};
  }
  return out;
}

}  // namespace

ScenarioConfig parse_scenario_text(std::string_view text, const std::string& filename,
                                   RequiredSections required) {
  Sections sec = tokenize(text, filename);
  ScenarioConfig cfg;

  if (!sec.has("model")) fail(filename, 0, "missing required section [model]");
  if (!sec.has("params")) fail(filename, 0, "missing required section [params]");

  const std::string vname = sec.require_string("model", "variant");
  try {
    cfg.params.variant = variant_from_name(vname);
  } catch (const std::invalid_argument& e) {
    fail(filename, sec.find("model", "variant")->line, e.what());
  }

  cfg.params.m = sec.require_number("params", "m");
  cfg.params.a = sec.require_number("params", "a");
  cfg.params.r = sec.require_number("params", "r");
  cfg.params.K = sec.require_number("params", "K");
  if (cfg.params.variant == Variant::Classical) {
    cfg.params.b = 0.0;
    cfg.params.beta = 0.0;
    cfg.params.mu = 0.0;
  } else {
    cfg.params.b = sec.require_number("params", "b");
    cfg.params.beta = sec.require_number("params", "beta");
    cfg.params.mu = sec.require_number("params", "mu");
  }
  try {
    cfg.params.validate();
  } catch (const std::invalid_argument& e) {
    fail(filename, 0, std::string("invalid [params]: ") + e.what());
  }

  if (required.initial && !sec.has("initial"))
    fail(filename, 0, "missing required section [initial]");
  if (sec.has("initial")) {
    State x0;
    x0.P = sec.require_number("initial", "P");
    if (cfg.params.variant == Variant::Classical) {
      x0.S = sec.require_number("initial", "Q");
      x0.U = 0.0;
    } else {
      x0.S = sec.require_number("initial", "S");
      x0.U = sec.require_number("initial", "U");
    }
    if (x0.P < 0.0 || x0.S < 0.0 || x0.U < 0.0)
      fail(filename, 0, "[initial] components must be nonnegative");
    cfg.initial = x0;
  }

  if (required.integrate && !sec.has("integrate"))
    fail(filename, 0, "missing required section [integrate]");
  if (sec.has("integrate")) {
    IntegrationSettings is;
    is.t_end = sec.require_number("integrate", "t_end");
    is.rtol = sec.require_number("integrate", "rtol");
    is.atol = sec.require_number("integrate", "atol");
    is.dt_max = sec.require_number("integrate", "dt_max");
    is.record_every = sec.require_number("integrate", "record_every");
    try {
      is.validate();
    } catch (const std::invalid_argument& e) {
      fail(filename, 0, std::string("invalid [integrate]: ") + e.what());
    }
    cfg.integrate = is;
  }

  if (sec.has("output")) {
    if (Entry* e = sec.find("output", "csv")) cfg.output.csv = e->value;
    if (Entry* e = sec.find("output", "svg")) cfg.output.svg = e->value;
    if (Entry* e = sec.find("output", "report")) cfg.output.report = e->value;
  }

  sec.reject_unused();
  return cfg;
}

ScenarioConfig parse_scenario_file(const std::string& path, RequiredSections required) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path + ": cannot open config file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario_text(buf.str(), path, required);
}

std::string dump_scenario(const ScenarioConfig& cfg) {
  std::ostringstream os;
  os << "[model]\n";
  os << "variant = " << variant_name(cfg.params.variant) << "\n\n";
  os << "[params]\n";
  os << "m = " << format_double(cfg.params.m) << "\n";
  os << "a = " << format_double(cfg.params.a) << "\n";
  if (cfg.params.variant != Variant::Classical)
    os << "b = " << format_double(cfg.params.b) << "\n";
  os << "r = " << format_double(cfg.params.r) << "\n";
  os << "K = " << format_double(cfg.params.K) << "\n";
  if (cfg.params.variant != Variant::Classical) {
    os << "beta = " << format_double(cfg.params.beta) << "\n";
    os << "mu = " << format_double(cfg.params.mu) << "\n";
  }
  if (cfg.initial) {
    os << "\n[initial]\n";
    os << "P = " << format_double(cfg.initial->P) << "\n";
    if (cfg.params.variant == Variant::Classical) {
      os << "Q = " << format_double(cfg.initial->S) << "\n";
    } else {
      os << "S = " << format_double(cfg.initial->S) << "\n";
      os << "U = " << format_double(cfg.initial->U) << "\n";
    }
  }
  if (cfg.integrate) {
    os << "\n[integrate]\n";
    os << "t_end = " << format_double(cfg.integrate->t_end) << "\n";
    os << "rtol = " << format_double(cfg.integrate->rtol) << "\n";
    os << "atol = " << format_double(cfg.integrate->atol) << "\n";
    os << "dt_max = " << format_double(cfg.integrate->dt_max) << "\n";
    os << "record_every = " << format_double(cfg.integrate->record_every) << "\n";
  }
  if (cfg.output.any()) {
    os << "\n[output]\n";
    if (!cfg.output.csv.empty()) os << "csv = " << cfg.output.csv << "\n";
    if (!cfg.output.svg.empty()) os << "svg = " << cfg.output.svg << "\n";
    if (!cfg.output.report.empty()) os << "report = " << cfg.output.report << "\n";
  }
  return os.str();
}

}  // namespace ecoepi
