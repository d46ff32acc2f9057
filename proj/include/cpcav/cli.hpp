#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace cpcav::cli {

using Cell = std::variant<double, long long, std::string>;

/// Column-named result table plus scalar annotations (JSON only).
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::map<std::string, Cell> meta;
};

/// Header row, 17 significant digits, ',' separator, LF line endings.
void write_csv(std::ostream& out, const Table& table);
/// {"columns": [...], "rows": [{...}, ...], "meta": {...}}
void write_json(std::ostream& out, const Table& table);

enum ExitCode : int { ok = 0, usage_error = 2, numerical_failure = 3 };

/// Entry point of the cpcav tool. Output goes to `out` unless --out is
/// given; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cpcav::cli
