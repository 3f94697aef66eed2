#include "pcn/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace pcn {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : v) {
    if (ch == ',') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(trim(cur));
  return out;
}

[[noreturn]] void missing(const std::string& key) {
  throw ValidationError("config key \"" + key + "\" is missing");
}

[[noreturn]] void malformed(const std::string& key, const std::string& value) {
  throw ValidationError("config key \"" + key + "\" has a malformed value: " + value);
}

}  // namespace

Config Config::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_text(buf.str());
}

Config Config::from_text(std::string_view text) {
  Config cfg;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++lineno;

    std::string line(raw);
    if (std::size_t hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;

    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ValidationError("config line " + std::to_string(lineno) +
                            ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ValidationError("config line " + std::to_string(lineno) +
                            ": empty key");
    cfg.kv_[key] = value;  // later assignments win
  }
  return cfg;
}

bool Config::has(const std::string& key) const { return kv_.count(key) != 0; }

std::string Config::str(const std::string& key) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) missing(key);
  return it->second;
}

std::string Config::str_or(const std::string& key, std::string def) const {
  auto it = kv_.find(key);
  return it == kv_.end() ? std::move(def) : it->second;
}

long Config::integer(const std::string& key) const {
  const std::string v = str(key);
  char* end = nullptr;
  long out = std::strtol(v.c_str(), &end, 10);
  if (end == v.c_str() || *end != '\0') malformed(key, v);
  return out;
}

long Config::integer_or(const std::string& key, long def) const {
  return has(key) ? integer(key) : def;
}

double Config::number(const std::string& key) const {
  const std::string v = str(key);
  char* end = nullptr;
  double out = std::strtod(v.c_str(), &end);
  if (end == v.c_str() || *end != '\0') malformed(key, v);
  return out;
}

double Config::number_or(const std::string& key, double def) const {
  return has(key) ? number(key) : def;
}

Scalar Config::scalar(const std::string& key, Backend bk) const {
  const std::string v = str(key);
  try {
    return Scalar::parse(v, bk);
  } catch (const ValidationError&) {
    malformed(key, v);
  }
}

Scalar Config::scalar_or(const std::string& key, const Scalar& def) const {
  return has(key) ? scalar(key, def.backend()) : def;
}

std::vector<Scalar> Config::scalar_list(const std::string& key, Backend bk) const {
  const std::string v = str(key);
  std::vector<Scalar> out;
  for (const auto& item : split_list(v)) {
    if (item.empty()) malformed(key, v);
    try {
      out.push_back(Scalar::parse(item, bk));
    } catch (const ValidationError&) {
      malformed(key, v);
    }
  }
  return out;
}

std::vector<double> Config::number_list_or(const std::string& key,
                                           std::vector<double> def) const {
  if (!has(key)) return def;
  const std::string v = str(key);
  std::vector<double> out;
  for (const auto& item : split_list(v)) {
    char* end = nullptr;
    double d = std::strtod(item.c_str(), &end);
    if (end == item.c_str() || *end != '\0') malformed(key, v);
    out.push_back(d);
  }
  return out;
}

LoadedMap load_map(const Config& cfg, Backend bk) {
  std::string kind = cfg.str_or("map.kind", cfg.has("map.lambda") ? "circle" : "line");

  LoadedMap out;
  if (kind == "circle") {
    Scalar lambda = cfg.scalar("map.lambda", bk);
    std::vector<Scalar> intercepts = cfg.scalar_list("map.intercepts", bk);
    std::vector<Scalar> cuts;
    if (intercepts.size() > 1 || cfg.has("map.breakpoints"))
      cuts = cfg.scalar_list("map.breakpoints", bk);
    out.circle.emplace(std::move(lambda), std::move(cuts), std::move(intercepts));
    return out;
  }
  if (kind != "line")
    throw ValidationError("config key \"map.kind\" must be line or circle, got: " + kind);

  std::vector<Scalar> slopes = cfg.scalar_list("map.slopes", bk);
  std::vector<Scalar> intercepts = cfg.scalar_list("map.intercepts", bk);
  if (slopes.size() != intercepts.size())
    throw ValidationError("config: map.slopes and map.intercepts must have equal length");
  std::vector<AffineContraction> branches;
  branches.reserve(slopes.size());
  for (std::size_t i = 0; i < slopes.size(); ++i)
    branches.emplace_back(slopes[i], intercepts[i]);
  std::vector<Scalar> breaks = cfg.scalar_list("map.breakpoints", bk);
  out.line.emplace(Ifs(std::move(branches)), Breakpoints(std::move(breaks)));
  return out;
}

}  // namespace pcn
