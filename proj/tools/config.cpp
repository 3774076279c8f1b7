#include "config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

#include "json.hpp"

namespace dpwlab {

using dpw::Error;
using dpw::ErrorKind;
using json = nlohmann::json;

namespace {

double parse_real(std::string_view s, std::string_view whole) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || end != s.data() + s.size()) {
    throw Error(ErrorKind::kParse, "not a complex number: '" + std::string(whole) + "'");
  }
  return v;
}

double parse_imag(std::string_view s, std::string_view whole) {
  if (s.empty() || s == "+") return 1.0;
  if (s == "-") return -1.0;
  return parse_real(s, whole);
}

[[noreturn]] void bad_type(const std::string& key, const char* expected) {
  throw Error(ErrorKind::kParse, "config key '" + key + "' must be " + expected);
}

double get_double(const std::string& key, const json& v) {
  if (!v.is_number()) bad_type(key, "a number");
  return v.get<double>();
}

long long get_integer(const std::string& key, const json& v) {
  if (!v.is_number_integer()) bad_type(key, "an integer");
  return v.get<long long>();
}

int get_int(const std::string& key, const json& v) {
  const long long n = get_integer(key, v);
  if (n < std::numeric_limits<int>::min() || n > std::numeric_limits<int>::max()) bad_type(key, "a 32-bit integer");
  return static_cast<int>(n);
}

std::size_t get_count(const std::string& key, const json& v) {
  const long long n = get_integer(key, v);
  if (n < 0) bad_type(key, "a non-negative integer");
  return static_cast<std::size_t>(n);
}

std::string get_string(const std::string& key, const json& v) {
  if (!v.is_string()) bad_type(key, "a string");
  return v.get<std::string>();
}

cplx get_cplx(const std::string& key, const json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return parse_complex(v.get<std::string>());
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  bad_type(key, "a number, [re, im] or a string like \"2-i\"");
}

using Setter = std::function<void(RunConfig&, const std::string&, const json&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table{
      {"k", [](RunConfig& c, const std::string& k, const json& v) { c.k = get_int(k, v); c.k_given = true; }},
      {"c", [](RunConfig& c, const std::string& k, const json& v) { c.c = get_cplx(k, v); }},
      {"vacuum",
       [](RunConfig& c, const std::string& k, const json& v) {
         if (!v.is_boolean()) bad_type(k, "true or false");
         c.vacuum = v.get<bool>();
       }},
      {"real_form", [](RunConfig& c, const std::string& k, const json& v) { c.real_form = get_string(k, v); }},
      {"grid", [](RunConfig& c, const std::string& k, const json& v) { c.grid = get_string(k, v); }},
      {"r0", [](RunConfig& c, const std::string& k, const json& v) { c.r0 = get_double(k, v); }},
      {"r1", [](RunConfig& c, const std::string& k, const json& v) { c.r1 = get_double(k, v); }},
      {"n_r", [](RunConfig& c, const std::string& k, const json& v) { c.n_r = get_int(k, v); }},
      {"n_theta", [](RunConfig& c, const std::string& k, const json& v) { c.n_theta = get_int(k, v); }},
      {"theta_span", [](RunConfig& c, const std::string& k, const json& v) { c.theta_span = get_double(k, v); }},
      {"x0", [](RunConfig& c, const std::string& k, const json& v) { c.x0 = get_double(k, v); }},
      {"x1", [](RunConfig& c, const std::string& k, const json& v) { c.x1 = get_double(k, v); }},
      {"y0", [](RunConfig& c, const std::string& k, const json& v) { c.y0 = get_double(k, v); }},
      {"y1", [](RunConfig& c, const std::string& k, const json& v) { c.y1 = get_double(k, v); }},
      {"n_x", [](RunConfig& c, const std::string& k, const json& v) { c.n_x = get_int(k, v); }},
      {"n_y", [](RunConfig& c, const std::string& k, const json& v) { c.n_y = get_int(k, v); }},
      {"lambda_grid", [](RunConfig& c, const std::string& k, const json& v) { c.lambda_grid = get_count(k, v); }},
      {"h", [](RunConfig& c, const std::string& k, const json& v) { c.h = get_double(k, v); }},
      {"lambda0", [](RunConfig& c, const std::string& k, const json& v) { c.lambda0 = get_cplx(k, v); }},
      {"lambda0_count", [](RunConfig& c, const std::string& k, const json& v) { c.lambda0_count = get_int(k, v); }},
      {"base_radius", [](RunConfig& c, const std::string& k, const json& v) { c.base_radius = get_double(k, v); }},
      {"nz", [](RunConfig& c, const std::string& k, const json& v) { c.nz = get_int(k, v); }},
      {"nl", [](RunConfig& c, const std::string& k, const json& v) { c.nl = get_int(k, v); }},
      {"seed",
       [](RunConfig& c, const std::string& k, const json& v) {
         c.seed = static_cast<std::uint64_t>(get_count(k, v));
       }},
      {"samples", [](RunConfig& c, const std::string& k, const json& v) { c.samples = get_count(k, v); }},
      {"trials", [](RunConfig& c, const std::string& k, const json& v) { c.trials = get_int(k, v); }},
      {"chain_c", [](RunConfig& c, const std::string& k, const json& v) { c.chain_c = get_double(k, v); }},
      {"integrator_tol", [](RunConfig& c, const std::string& k, const json& v) { c.integrator_tol = get_double(k, v); }},
      {"path_clearance", [](RunConfig& c, const std::string& k, const json& v) { c.path_clearance = get_double(k, v); }},
      {"positivity_tol", [](RunConfig& c, const std::string& k, const json& v) { c.positivity_tol = get_double(k, v); }},
      {"margin", [](RunConfig& c, const std::string& k, const json& v) { c.margin = get_double(k, v); }},
      {"input", [](RunConfig& c, const std::string& k, const json& v) { c.input = get_string(k, v); }},
      {"output", [](RunConfig& c, const std::string& k, const json& v) { c.output = get_string(k, v); }},
  };
  return table;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::kInvalidArgument, what);
}

}  // namespace

cplx parse_complex(std::string_view text) {
  std::string s;
  for (const char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  }
  const std::string_view v(s);
  if (const auto comma = v.find(','); comma != std::string_view::npos) {
    return {parse_real(v.substr(0, comma), text), parse_real(v.substr(comma + 1), text)};
  }
  if (v.empty() || (v.back() != 'i' && v.back() != 'j')) return parse_real(v, text);
  const std::string_view body = v.substr(0, v.size() - 1);
  std::size_t split = std::string_view::npos;
  for (std::size_t p = body.size(); p-- > 1;) {
    const char prev = body[p - 1];
    if ((body[p] == '+' || body[p] == '-') && prev != 'e' && prev != 'E') {
      split = p;
      break;
    }
  }
  if (split == std::string_view::npos) return {0.0, parse_imag(body, text)};
  return {parse_real(body.substr(0, split), text), parse_imag(body.substr(split), text)};
}

void apply_json(RunConfig& config, std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kParse, std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorKind::kParse, "config must be a JSON object");
  const auto& table = setters();
  for (const auto& [key, value] : doc.items()) {
    const auto it = table.find(key);
    if (it == table.end()) throw Error(ErrorKind::kParse, "unknown config key '" + key + "'");
    it->second(config, key, value);
  }
}

void load_config_file(RunConfig& config, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot read config file " + path);
  std::ostringstream text;
  text << in.rdbuf();
  apply_json(config, text.str());
}

void validate(const RunConfig& c) {
  require(c.real_form == "su2", "real_form must be \"su2\" (the only form the surface pipeline builds)");
  require(c.grid.empty() || c.grid == "annulus" || c.grid == "disk" || c.grid == "rectangle",
          "grid must be annulus, disk or rectangle");
  require(c.r0 > 0.0 && c.r1 > c.r0, "need 0 < r0 < r1");
  require(c.n_r >= 2 && c.n_theta >= 2 && c.n_x >= 2 && c.n_y >= 2, "grid sizes must be at least 2");
  require(c.theta_span > 0.0, "theta_span must be positive");
  require(c.x1 > c.x0 && c.y1 > c.y0, "need x0 < x1 and y0 < y1");
  require(c.lambda_grid >= 8, "lambda_grid must be at least 8");
  require(c.h != 0.0, "h must be nonzero");
  require(c.lambda0 != 0.0, "lambda0 must be nonzero");
  require(c.lambda0_count >= 1, "lambda0_count must be positive");
  require(c.base_radius > 0.0, "base_radius must be positive");
  require(c.nz >= 1 && c.nl >= 1, "nz and nl must be positive");
  require(c.samples >= 1 && c.trials >= 1, "samples and trials must be positive");
  require(c.chain_c > 0.0, "chain_c must be positive");
  require(c.integrator_tol > 0.0 && c.path_clearance > 0.0 && c.positivity_tol > 0.0 && c.margin > 0.0,
          "tolerances must be positive");
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kZeroC:
    case ErrorKind::kParse:
    case ErrorKind::kInvalidArgument:
      return kConfig;
    case ErrorKind::kIo:
      return kIo;
    case ErrorKind::kSingularOnCircle:
    case ErrorKind::kSingularGauge:
    case ErrorKind::kBranchPointHit:
    case ErrorKind::kStepUnderflow:
    case ErrorKind::kPathTooClose:
    case ErrorKind::kOverflowOfLogPower:
    case ErrorKind::kNotPositive:
    case ErrorKind::kCellBoundary:
    case ErrorKind::kNotInBigCell:
    case ErrorKind::kNotUnitary:
    case ErrorKind::kSingular:
    case ErrorKind::kDegenerateMetric:
      return kNumerical;
  }
  return kNumerical;
}

}  // namespace dpwlab
