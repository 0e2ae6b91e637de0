#pragma once

#include <cstdio>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace raqr {

// Formats a double with enough digits to round-trip. snprintf keeps the
// byte representation identical across runs, which file-level determinism
// checks rely on.
inline std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

class CsvWriter {
public:
  explicit CsvWriter(std::ostream& os) : os_(os) {}

  void header(const std::vector<std::string>& names) {
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (i) os_ << ',';
      os_ << names[i];
    }
    os_ << '\n';
  }

  void row(std::span<const double> values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) os_ << ',';
      os_ << format_number(values[i]);
    }
    os_ << '\n';
  }

private:
  std::ostream& os_;
};

} // namespace raqr
