#include "coloc/trace_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "coloc/csv.hpp"

namespace coloc {

namespace {

constexpr std::string_view kModelComment = "# model=";
constexpr std::string_view kSeedComment = "# seed=";

bool starts_with(const std::string& s, std::string_view prefix) {
  return s.size() >= prefix.size() && std::string_view(s).substr(0, prefix.size()) == prefix;
}

} // namespace

ParseResult parse_sessions(std::istream& in, const CsvFormat& format) {
  ParseResult result;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  std::size_t header_width = 0;
  // column index of each session field within the header
  std::size_t col_node = 0, col_start = 0, col_end = 0, col_location = 0, col_site = 0;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (line.empty())
      continue;
    if (line[0] == '#') {
      if (starts_with(line, kModelComment))
        result.table.provenance = line.substr(kModelComment.size());
      else if (starts_with(line, kSeedComment)) {
        std::uint64_t seed = 0;
        if (parse_u64(std::string_view(line).substr(kSeedComment.size()), seed))
          result.table.rng_seed = seed;
      }
      continue;
    }

    const auto fields = split_csv(line);
    if (!header_seen) {
      auto locate = [&](const std::string& name) {
        for (std::size_t i = 0; i < fields.size(); ++i)
          if (fields[i] == name)
            return i;
        throw ParseError("header is missing column '" + name + "' (line " +
                         std::to_string(line_no) + ")");
      };
      col_node = locate(format.node);
      col_start = locate(format.start);
      col_end = locate(format.end);
      col_location = locate(format.location);
      col_site = locate(format.site);
      header_width = fields.size();
      header_seen = true;
      continue;
    }

    if (fields.size() != header_width) {
      result.rejects.push_back({line_no, "expected " + std::to_string(header_width) +
                                             " fields, got " + std::to_string(fields.size())});
      continue;
    }
    SessionRecord rec;
    rec.node = fields[col_node];
    if (rec.node.empty()) {
      result.rejects.push_back({line_no, "empty node id"});
      continue;
    }
    if (!parse_i64(fields[col_start], rec.start)) {
      result.rejects.push_back({line_no, "bad start time '" + fields[col_start] + "'"});
      continue;
    }
    if (fields[col_end].empty()) {
      rec.end = std::nullopt; // open session; cleaning drops it
    } else {
      std::int64_t end = 0;
      if (!parse_i64(fields[col_end], end)) {
        result.rejects.push_back({line_no, "bad end time '" + fields[col_end] + "'"});
        continue;
      }
      rec.end = end;
    }
    rec.location = fields[col_location];
    rec.site = fields[col_site];
    result.table.records.push_back(std::move(rec));
  }

  if (!header_seen)
    throw ParseError("no header row found");
  result.table.canonicalize();
  return result;
}

ParseResult parse_sessions_file(const std::string& path, const CsvFormat& format) {
  std::ifstream in(path);
  if (!in)
    throw ParseError("cannot open session file: " + path);
  return parse_sessions(in, format);
}

std::pair<SessionTable, CleanReport> clean_sessions(const SessionTable& table) {
  SessionTable out;
  out.provenance = table.provenance;
  out.rng_seed = table.rng_seed;
  out.records.reserve(table.records.size());
  CleanReport report;
  for (const auto& rec : table.records) {
    if (!rec.end) {
      ++report.dropped_no_end;
    } else if (*rec.end <= rec.start) { // negative durations fall in here too
      ++report.dropped_zero_duration;
    } else if (rec.location.empty()) {
      ++report.dropped_no_location;
    } else {
      out.records.push_back(rec);
      ++report.retained;
    }
  }
  out.canonicalize();
  return {std::move(out), report};
}

SessionTable filter_site(const SessionTable& table, std::string_view site) {
  SessionTable out;
  out.provenance = table.provenance;
  out.rng_seed = table.rng_seed;
  for (const auto& rec : table.records)
    if (rec.site == site)
      out.records.push_back(rec);
  return out;
}

void write_sessions_csv(const SessionTable& table, std::ostream& out) {
  if (table.provenance != "original")
    out << kModelComment << table.provenance << '\n';
  if (table.rng_seed)
    out << kSeedComment << *table.rng_seed << '\n';
  out << "node,start,end,location,site\n";
  for (const auto& rec : table.records) {
    out << rec.node << ',' << rec.start << ',';
    if (rec.end)
      out << *rec.end;
    out << ',' << rec.location << ',' << rec.site << '\n';
  }
}

void write_sessions_csv_file(const SessionTable& table, const std::string& path) {
  std::ostringstream buf;
  write_sessions_csv(table, buf);
  write_file_bytes(path, buf.str());
}

void write_rejects_csv(const std::vector<RejectedRow>& rejects, std::ostream& out) {
  out << "line,reason\n";
  for (const auto& r : rejects)
    out << r.line << ',' << r.reason << '\n';
}

} // namespace coloc
