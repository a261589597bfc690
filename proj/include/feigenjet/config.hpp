#pragma once

#include <map>
#include <string>

namespace feigenjet {

// Line-oriented "key = value" configuration. Unknown keys are kept so a
// round-trip rewrite preserves what it does not understand.
class Config {
 public:
  static Config load(const std::string& path);  // missing file -> defaults
  void save(const std::string& path) const;

  bool has(const std::string& key) const { return kv_.count(key) != 0; }
  double get(const std::string& key, double fallback) const;
  long get_long(const std::string& key, long fallback) const;
  std::string get_str(const std::string& key, const std::string& fallback) const;
  void set(const std::string& key, double value);
  void set_long(const std::string& key, long value);
  void set_str(const std::string& key, const std::string& value);

 private:
  std::map<std::string, std::string> kv_;
};

}  // namespace feigenjet
