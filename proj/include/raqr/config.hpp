#pragma once

#include <map>
#include <ostream>
#include <string>

namespace raqr {

// Flat key-value store with dotted hierarchical keys ("cell.length_m").
// The same text format serves run configuration and the species data files:
// one "key = value" pair per line, '#' starts a comment. Keys carry their
// unit as a suffix so a mismatched unit shows up as an unknown key.
//
// Precedence is defaults < file < explicit set() calls; merging anything
// that names a key absent from the defaults registry is a ConfigError.
class Config {
public:
  // full registry of run-configuration keys with repo default values
  static Config defaults();

  // empty container (used for species files, which have their own schema)
  Config() = default;

  void declare(const std::string& key, const std::string& value);

  // parse text and overlay onto existing keys; origin names the source
  // (file path or "--set") for error messages
  void merge_text(const std::string& text, const std::string& origin,
                  bool allow_new_keys = false);
  void merge_file(const std::string& path, bool allow_new_keys = false);
  void set(const std::string& key, const std::string& value);

  bool has(const std::string& key) const;
  double num(const std::string& key) const;
  long integer(const std::string& key) const;
  bool flag(const std::string& key) const; // on/off, true/false, 1/0
  const std::string& str(const std::string& key) const;

  void dump(std::ostream& os) const;
  const std::map<std::string, std::string>& entries() const { return kv_; }

private:
  const std::string& fetch(const std::string& key) const;
  std::map<std::string, std::string> kv_;
};

// Low-level "key = value" line parser shared by Config and species files.
std::map<std::string, std::string> parse_kv_text(const std::string& text,
                                                 const std::string& origin);

} // namespace raqr
