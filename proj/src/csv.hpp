#pragma once

// Minimal RFC 4180 style reader shared by the ingestion routines.

#include <istream>
#include <string>
#include <vector>

#include "cluster_forge/errors.hpp"

namespace cluster_forge::detail {

struct CsvRow {
  std::size_t line = 0;  // 1-based, header is line 1
  std::vector<std::string> fields;
};

class CsvReader {
 public:
  CsvReader(std::istream& in, std::string source) : in_(in), source_(std::move(source)) {}

  /// Reads the header and checks it against `expected`.
  void expect_header(const std::vector<std::string>& expected) {
    CsvRow header;
    if (!next(header)) throw InputError(source_ + ": empty input, expected header");
    if (!header.fields.empty() && header.fields[0].rfind("\xEF\xBB\xBF", 0) == 0)
      header.fields[0].erase(0, 3);
    for (auto& f : header.fields) f = trim(f);
    if (header.fields != expected) {
      std::string want;
      for (const auto& e : expected) want += (want.empty() ? "" : ",") + e;
      throw InputError(source_ + " line 1: expected header '" + want + "'");
    }
    columns_ = expected.size();
  }

  /// Next non-blank data row. Throws on a wrong column count.
  bool next(CsvRow& row) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (trim(line).empty()) continue;
      row.line = line_;
      row.fields = split(line);
      if (columns_ != 0 && row.fields.size() != columns_)
        throw error(row.line, "expected " + std::to_string(columns_) + " columns, found " +
                                  std::to_string(row.fields.size()));
      return true;
    }
    return false;
  }

  [[nodiscard]] InputError error(std::size_t line, const std::string& what) const {
    return InputError(source_ + " line " + std::to_string(line) + ": " + what);
  }

  static std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
  }

 private:
  std::vector<std::string> split(const std::string& line) const {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    bool was_quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      const char c = line[i];
      if (quoted) {
        if (c == '"') {
          if (i + 1 < line.size() && line[i + 1] == '"') {
            cur += '"';
            ++i;
          } else {
            quoted = false;
          }
        } else {
          cur += c;
        }
      } else if (c == '"') {
        quoted = true;
        was_quoted = true;
      } else if (c == ',') {
        out.push_back(was_quoted ? cur : trim(cur));
        cur.clear();
        was_quoted = false;
      } else {
        cur += c;
      }
    }
    if (quoted) throw error(line_, "unterminated quoted field");
    out.push_back(was_quoted ? cur : trim(cur));
    return out;
  }

  std::istream& in_;
  std::string source_;
  std::size_t line_ = 0;
  std::size_t columns_ = 0;
};

}  // namespace cluster_forge::detail
