#include "nlcn/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <type_traits>

#include "nlcn/error.hpp"

namespace nlcn {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view key, std::string_view text) {
  const std::string s(trim(text));
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (s.empty() || used != s.size() || !std::isfinite(v))
    throw Error(ErrorKind::InvalidConfig, "'" + std::string(key) + "' expects a number, got '" + s + "'");
  return v;
}

int parse_int(std::string_view key, std::string_view text) {
  const std::string_view s = trim(text);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
    throw Error(ErrorKind::InvalidConfig, "'" + std::string(key) + "' expects an integer, got '" + std::string(s) + "'");
  return v;
}

template <class T, class Parse>
std::vector<T> parse_list(std::string_view text, Parse parse) {
  std::vector<T> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto item = trim(text.substr(start, comma == std::string_view::npos ? text.size() - start : comma - start));
    if (!item.empty()) out.push_back(parse(item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string format_number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

std::vector<double> parse_double_list(std::string_view text) {
  return parse_list<double>(text, [](std::string_view s) { return parse_double("list", s); });
}

std::vector<int> parse_int_list(std::string_view text) {
  return parse_list<int>(text, [](std::string_view s) { return parse_int("list", s); });
}

int RunConfig::resolved_dim() const { return case_dimension(case_id); }

double RunConfig::resolved_t_end() const {
  if (t_end > 0.0) return t_end;
  switch (case_id) {
    case CaseId::Example1: return 10.0;
    case CaseId::Example2: return 2.0;
    case CaseId::Example3: return 1.0;
  }
  return 1.0;
}

std::vector<int> RunConfig::resolved_n_list() const {
  return n_list.empty() ? default_space_ladder(case_id, k) : n_list;
}

std::vector<int> default_space_ladder(CaseId id, int k) {
  if (id == CaseId::Example3) return {2, 4, 8};
  // Finest errors stay a few decades above round-off for each degree.
  switch (k) {
    case 1: return {8, 16, 32, 64};
    case 2: return {4, 8, 16, 32};
    default: return {2, 4, 8, 16};
  }
}

void RunConfig::validate() const {
  const auto fail = [](const std::string& msg) { throw Error(ErrorKind::InvalidConfig, msg); };
  if (dim != 0 && dim != resolved_dim())
    fail("dim=" + std::to_string(dim) + " does not match case " + std::string(to_string(case_id)));
  if (k < 1 || k > 3) fail("k must be 1, 2 or 3");
  if (n < 1) fail("n must be positive");
  if (!(delta > 0.0)) fail("delta must be positive");
  if (t_end < 0.0) fail("t_end must be positive");
  if (!(solver_tol > 0.0)) fail("solver_tol must be positive");
  if (!(guard_floor > 0.0)) fail("guard_floor must be positive");
  if (!(guard_ceiling > guard_floor)) fail("guard_ceiling must exceed guard_floor");
  if (solver_method == SolverMethod::DirectBanded && resolved_dim() != 1)
    fail("solver=banded is only available for 1D cases");
  for (int v : n_list)
    if (v < 1) fail("n_list entries must be positive");
  for (double v : delta_list)
    if (!(v > 0.0)) fail("delta_list entries must be positive");
  for (double v : snapshots)
    if (v < 0.0) fail("snapshot times must be nonnegative");
  // Grid compatibility of t_end and delta.
  TimeGrid::from_step(resolved_t_end(), delta);
}

RunConfig preset_config(CaseId id) {
  RunConfig c;
  c.case_id = id;
  switch (id) {
    case CaseId::Example1:
      c.k = 2;
      c.n = 100;
      c.delta = 1e-3;
      c.t_end = 10.0;
      c.snapshots = {0.0, 1.0, 2.0, 5.0, 10.0};
      c.delta_list = {0.1, 0.05, 0.025, 0.0125, 0.00625};
      break;
    case CaseId::Example2:
      c.k = 2;
      c.n = 100;
      c.delta = 1e-3;
      c.t_end = 2.0;
      // With gamma < 0 the coefficient grows like ||u||^{2 gamma}; a ceiling
      // of 1e3 is crossed within a few steps of the extinction time.
      c.guard_ceiling = 1e3;
      c.snapshots = {0.0, 0.5, 0.9, 1.0, 1.5, 2.0};
      c.delta_list = {0.1, 0.05, 0.025, 0.0125};
      break;
    case CaseId::Example3:
      c.k = 3;
      c.n = 16;
      c.delta = 1e-2;
      c.t_end = 1.0;
      c.snapshots = {0.0, 0.5, 1.0};
      c.delta_list = {0.1, 0.05, 0.025, 0.0125};
      break;
  }
  return c;
}

void apply_setting(RunConfig& c, std::string_view raw_key, std::string_view raw_value) {
  const std::string_view key = trim(raw_key);
  const std::string_view value = trim(raw_value);
  if (key == "case") c.case_id = case_id_from_string(value);
  else if (key == "dim") c.dim = parse_int(key, value);
  else if (key == "k") c.k = parse_int(key, value);
  else if (key == "n") c.n = parse_int(key, value);
  else if (key == "h") {
    const double h = parse_double(key, value);
    if (!(h > 0.0)) throw Error(ErrorKind::InvalidConfig, "h must be positive");
    c.n = static_cast<int>(std::lround(1.0 / h));
  } else if (key == "delta") c.delta = parse_double(key, value);
  else if (key == "t_end") c.t_end = parse_double(key, value);
  else if (key == "solver_tol") c.solver_tol = parse_double(key, value);
  else if (key == "solver") c.solver_method = solver_method_from_string(value);
  else if (key == "guard_floor") c.guard_floor = parse_double(key, value);
  else if (key == "guard_ceiling") c.guard_ceiling = parse_double(key, value);
  else if (key == "guard_policy") c.guard_policy = guard_policy_from_string(value);
  else if (key == "out_dir") c.out_dir = std::string(value);
  else if (key == "snapshots") c.snapshots = parse_double_list(value);
  else if (key == "n_list") c.n_list = parse_int_list(value);
  else if (key == "delta_list") c.delta_list = parse_double_list(value);
  else throw Error(ErrorKind::InvalidConfig, "unknown config key '" + std::string(key) + "'");
}

RunConfig parse_config_text(std::string_view text, RunConfig base) {
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw Error(ErrorKind::InvalidConfig, "line " + std::to_string(line_no) + ": expected key = value");
    apply_setting(base, line.substr(0, eq), line.substr(eq + 1));
  }
  return base;
}

RunConfig load_config_file(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoFailure, "cannot read config file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str(), std::move(base));
}

std::string render_config(const RunConfig& c) {
  const auto join = [](const auto& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) out += ",";
      if constexpr (std::is_same_v<std::decay_t<decltype(values[i])>, int>)
        out += std::to_string(values[i]);
      else
        out += format_number(values[i]);
    }
    return out;
  };
  std::ostringstream os;
  os << "case = " << to_string(c.case_id) << "\n"
     << "dim = " << c.resolved_dim() << "\n"
     << "k = " << c.k << "\n"
     << "n = " << c.n << "\n"
     << "delta = " << format_number(c.delta) << "\n"
     << "t_end = " << format_number(c.resolved_t_end()) << "\n"
     << "solver_tol = " << format_number(c.solver_tol) << "\n"
     << "solver = " << to_string(c.solver_method) << "\n"
     << "guard_floor = " << format_number(c.guard_floor) << "\n"
     << "guard_ceiling = " << format_number(c.guard_ceiling) << "\n"
     << "guard_policy = " << to_string(c.guard_policy) << "\n"
     << "out_dir = " << c.out_dir << "\n"
     << "snapshots = " << join(c.snapshots) << "\n"
     << "n_list = " << join(c.resolved_n_list()) << "\n"
     << "delta_list = " << join(c.delta_list) << "\n";
  return os.str();
}

}  // namespace nlcn
