#pragma once

// Plain-text artifacts: CSV tables and key = value run summaries.

#include <pdsc/errors.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace pdsc::io {

/// Shortest round-trip formatting of a double.
inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Column-oriented table written as CSV with a header row.
class CsvTable {
public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  const std::vector<std::string>& header() const { return header_; }
  std::size_t rows() const { return rows_.size(); }
  const std::vector<std::string>& row(std::size_t r) const { return rows_[r]; }

  template <class... Ts>
  void add(const Ts&... cells) {
    std::vector<std::string> r;
    r.reserve(sizeof...(Ts));
    (r.push_back(cell(cells)), ...);
    if (r.size() != header_.size())
      throw ConfigError("csv row width does not match the header");
    rows_.push_back(std::move(r));
  }

  std::size_t column(const std::string& name) const {
    for (std::size_t c = 0; c < header_.size(); ++c)
      if (header_[c] == name)
        return c;
    throw ConfigError("csv has no column '" + name + "'");
  }

  std::vector<double> numeric_column(const std::string& name) const {
    const std::size_t c = column(name);
    std::vector<double> out;
    out.reserve(rows_.size());
    for (const auto& r : rows_)
      out.push_back(std::stod(r[c]));
    return out;
  }

  void write(const std::filesystem::path& path) const {
    std::ofstream os(path);
    if (!os)
      throw ConfigError("cannot write " + path.string());
    write_row(os, header_);
    for (const auto& r : rows_)
      write_row(os, r);
  }

  static CsvTable read(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is)
      throw ConfigError("cannot read " + path.string());
    std::string line;
    if (!std::getline(is, line))
      throw ConfigError(path.string() + " is empty");
    CsvTable t(split(line));
    while (std::getline(is, line)) {
      if (line.empty())
        continue;
      auto r = split(line);
      if (r.size() != t.header_.size())
        throw ConfigError(path.string() + ": ragged row");
      t.rows_.push_back(std::move(r));
    }
    return t;
  }

private:
  static std::string cell(double v) { return format_double(v); }
  static std::string cell(const std::string& s) { return s; }
  static std::string cell(const char* s) { return s; }
  static std::string cell(bool b) { return b ? "1" : "0"; }
  template <class T>
    requires std::is_integral_v<T>
  static std::string cell(T v) {
    return std::to_string(v);
  }

  static void write_row(std::ostream& os, const std::vector<std::string>& r) {
    for (std::size_t c = 0; c < r.size(); ++c)
      os << (c ? "," : "") << r[c];
    os << '\n';
  }

  static std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ','))
      out.push_back(item);
    return out;
  }

  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// Ordered key = value record of a run.
class Summary {
public:
  void set(const std::string& key, const std::string& value) {
    for (auto& [k, v] : entries_)
      if (k == key) {
        v = value;
        return;
      }
    entries_.emplace_back(key, value);
  }
  void set(const std::string& key, const char* value) { set(key, std::string(value)); }
  void set(const std::string& key, double value) { set(key, format_double(value)); }
  void set(const std::string& key, bool value) { set(key, std::string(value ? "true" : "false")); }
  void set(const std::string& key, int value) { set(key, std::to_string(value)); }
  void set(const std::string& key, std::size_t value) { set(key, std::to_string(value)); }

  bool has(const std::string& key) const {
    for (const auto& [k, v] : entries_)
      if (k == key)
        return true;
    return false;
  }

  const std::string& get(const std::string& key) const {
    for (const auto& [k, v] : entries_)
      if (k == key)
        return v;
    throw ConfigError("summary has no key '" + key + "'");
  }

  double number(const std::string& key) const { return std::stod(get(key)); }

  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

  void write(const std::filesystem::path& path) const {
    std::ofstream os(path);
    if (!os)
      throw ConfigError("cannot write " + path.string());
    for (const auto& [k, v] : entries_)
      os << k << " = " << v << '\n';
  }

  static Summary read(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is)
      throw ConfigError("cannot read " + path.string());
    Summary s;
    std::string line;
    while (std::getline(is, line)) {
      const auto eq = line.find(" = ");
      if (eq == std::string::npos)
        continue;
      s.entries_.emplace_back(line.substr(0, eq), line.substr(eq + 3));
    }
    return s;
  }

private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

} // namespace pdsc::io
