#include "feigenjet/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace feigenjet {

namespace {
std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}
}  // namespace

Config Config::load(const std::string& path) {
  Config c;
  std::ifstream in(path);
  if (!in) return c;
  std::string line;
  while (std::getline(in, line)) {
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto eq = t.find('=');
    if (eq == std::string::npos) continue;
    c.kv_[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
  }
  return c;
}

void Config::save(const std::string& path) const {
  std::ofstream out(path);
  for (const auto& [k, v] : kv_) out << k << " = " << v << "\n";
}

double Config::get(const std::string& key, double fallback) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  try {
    return std::stod(it->second);
  } catch (...) {
    return fallback;
  }
}

long Config::get_long(const std::string& key, long fallback) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  try {
    return std::stol(it->second);
  } catch (...) {
    return fallback;
  }
}

std::string Config::get_str(const std::string& key, const std::string& fallback) const {
  auto it = kv_.find(key);
  return it == kv_.end() ? fallback : it->second;
}

void Config::set(const std::string& key, double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  kv_[key] = buf;
}

void Config::set_long(const std::string& key, long value) { kv_[key] = std::to_string(value); }

void Config::set_str(const std::string& key, const std::string& value) { kv_[key] = value; }

}  // namespace feigenjet
