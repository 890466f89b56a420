#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "coloc/types.hpp"

namespace coloc {

/// Column remapping for session CSVs. Values name the header columns that
/// hold each field; unlisted columns are ignored.
struct CsvFormat {
  std::string node = "node";
  std::string start = "start";
  std::string end = "end";
  std::string location = "location";
  std::string site = "site";
};

struct RejectedRow {
  std::size_t line = 0; // 1-based physical line number
  std::string reason;

  friend bool operator==(const RejectedRow&, const RejectedRow&) = default;
};

struct ParseResult {
  SessionTable table;
  std::vector<RejectedRow> rejects;
};

/// Parse a session CSV. A missing or incomplete header is fatal
/// (ParseError); malformed rows are collected into `rejects` and parsing
/// continues. `# model=` / `# seed=` comment lines restore provenance.
/// No cleaning is applied.
ParseResult parse_sessions(std::istream& in, const CsvFormat& format = {});
ParseResult parse_sessions_file(const std::string& path, const CsvFormat& format = {});

/// Drop sessions with no end time, non-positive duration (end <= start),
/// or an empty location, in that rule order. Idempotent.
std::pair<SessionTable, CleanReport> clean_sessions(const SessionTable& table);

/// Keep records whose site equals `site`, order preserved. An unknown site
/// yields an empty table.
SessionTable filter_site(const SessionTable& table, std::string_view site);

/// Emit `node,start,end,location,site` rows preceded by `# model=` /
/// `# seed=` comments when set. parse_sessions inverts this exactly.
void write_sessions_csv(const SessionTable& table, std::ostream& out);
void write_sessions_csv_file(const SessionTable& table, const std::string& path);

/// Rejects report: `line,reason` rows.
void write_rejects_csv(const std::vector<RejectedRow>& rejects, std::ostream& out);

} // namespace coloc
