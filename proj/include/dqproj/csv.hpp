#pragma once

// DQ CSV: header "qs0,qs1,qs2,qs3,qd0,qd1,qd2,qd3", one input per row, optional
// extra columns after the first eight, '#' lines for metadata.

#include <array>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dqproj/error.hpp"
#include "dqproj/text.hpp"
#include "dqproj/trajectory_io.hpp"

namespace dqproj {

inline constexpr std::array<std::string_view, 8> kDqColumns = {"qs0", "qs1", "qs2", "qs3",
                                                                "qd0", "qd1", "qd2", "qd3"};

inline std::string dq_header() {
  std::string h;
  for (std::size_t i = 0; i < kDqColumns.size(); ++i) {
    if (i > 0) h += ',';
    h += kDqColumns[i];
  }
  return h;
}

/// Reads the first eight columns of every data row. Non-finite values are
/// passed through; callers decide how to treat them.
inline std::vector<InputPair> read_dq_csv(std::istream& in) {
  std::vector<InputPair> rows;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line) || line[line.find_first_not_of(" \t")] == '#') continue;
    const auto fields = split_on(line, ',');
    if (!have_header) {
      bool ok = fields.size() >= kDqColumns.size();
      for (std::size_t i = 0; ok && i < kDqColumns.size(); ++i) {
        std::string_view f = fields[i];
        while (!f.empty() && (f.front() == ' ' || f.front() == '\t')) f.remove_prefix(1);
        while (!f.empty() && (f.back() == ' ' || f.back() == '\t' || f.back() == '\r')) f.remove_suffix(1);
        ok = f == kDqColumns[i];
      }
      if (!ok) {
        throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": expected header " + dq_header());
      }
      have_header = true;
      continue;
    }
    if (fields.size() < 8) {
      throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": expected at least 8 columns, got " +
                                        std::to_string(fields.size()));
    }
    InputPair p;
    for (int i = 0; i < 8; ++i) {
      const auto v = parse_double(fields[static_cast<std::size_t>(i)]);
      if (!v) {
        throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ", column " + std::to_string(i + 1) +
                                          ": not a number: '" + std::string(fields[static_cast<std::size_t>(i)]) +
                                          "'");
      }
      (i < 4 ? p.as[i] : p.ad[i - 4]) = *v;
    }
    rows.push_back(p);
  }
  if (rows.empty()) throw Error(ErrorKind::EmptyFile, "no data rows");
  return rows;
}

/// Writes "# key=value" lines; keys and values must not contain newlines.
inline void write_metadata(std::ostream& out, const std::vector<std::pair<std::string, std::string>>& meta) {
  for (const auto& [k, v] : meta) out << "# " << k << '=' << v << '\n';
}

inline void write_dq_fields(std::ostream& out, const Vec4& qs, const Vec4& qd) {
  for (int i = 0; i < 4; ++i) out << (i > 0 ? "," : "") << format_double(qs[i]);
  for (int i = 0; i < 4; ++i) out << ',' << format_double(qd[i]);
}

inline void write_dq_csv(std::ostream& out, const std::vector<InputPair>& rows,
                         const std::vector<std::pair<std::string, std::string>>& meta = {}) {
  write_metadata(out, meta);
  out << dq_header() << '\n';
  for (const InputPair& p : rows) {
    write_dq_fields(out, p.as, p.ad);
    out << '\n';
  }
}

}  // namespace dqproj
