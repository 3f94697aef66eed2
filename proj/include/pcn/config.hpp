#pragma once

// Flat "key = value" run configuration. '#' starts a comment, blank lines are
// skipped, later assignments win. Typed getters throw ValidationError messages
// that name the offending key.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pcn/circle.hpp"
#include "pcn/piecewise.hpp"

namespace pcn {

class Config {
 public:
  Config() = default;
  static Config from_file(const std::string& path);
  static Config from_text(std::string_view text);

  bool has(const std::string& key) const;

  std::string str(const std::string& key) const;
  std::string str_or(const std::string& key, std::string def) const;
  long integer(const std::string& key) const;
  long integer_or(const std::string& key, long def) const;
  double number(const std::string& key) const;
  double number_or(const std::string& key, double def) const;
  Scalar scalar(const std::string& key, Backend bk) const;
  Scalar scalar_or(const std::string& key, const Scalar& def) const;
  std::vector<Scalar> scalar_list(const std::string& key, Backend bk) const;
  std::vector<double> number_list_or(const std::string& key,
                                     std::vector<double> def) const;

  const std::map<std::string, std::string>& entries() const { return kv_; }

 private:
  std::map<std::string, std::string> kv_;
};

struct LoadedMap {
  std::optional<PiecewiseContraction> line;
  std::optional<CircleAffineMap> circle;

  bool is_circle() const { return circle.has_value(); }
};

// Builds the map described by the map.* keys. map.kind (line | circle) may be
// omitted when it is inferable: map.lambda means circle, map.slopes means line.
LoadedMap load_map(const Config& cfg, Backend bk);

}  // namespace pcn
