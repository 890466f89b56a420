#include "coloc/contact_inference.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "coloc/csv.hpp"

namespace coloc {

namespace {

struct Endpoint {
  std::int64_t t;
  int kind; // 0 = session end, 1 = session start; ends first so touching
            // intervals never count as overlap
  std::uint32_t idx;
};

} // namespace

ContactSequence infer_contacts(const SessionTable& table) {
  ContactSequence seq;
  seq.source_model = table.provenance;

  // per-location session buckets, visited in sorted location order
  std::map<std::string_view, std::vector<std::uint32_t>> by_location;
  for (std::uint32_t i = 0; i < table.records.size(); ++i) {
    if (!table.records[i].end)
      throw std::invalid_argument("infer_contacts requires a cleaned table (open session found)");
    by_location[table.records[i].location].push_back(i);
  }

  std::vector<Endpoint> endpoints;
  std::vector<std::uint32_t> active;
  for (const auto& [location, sessions] : by_location) {
    endpoints.clear();
    endpoints.reserve(sessions.size() * 2);
    for (auto i : sessions) {
      endpoints.push_back({table.records[i].start, 1, i});
      endpoints.push_back({*table.records[i].end, 0, i});
    }
    std::sort(endpoints.begin(), endpoints.end(), [](const Endpoint& a, const Endpoint& b) {
      return std::tie(a.t, a.kind, a.idx) < std::tie(b.t, b.kind, b.idx);
    });

    active.clear();
    for (const auto& ep : endpoints) {
      const auto& rec = table.records[ep.idx];
      if (ep.kind == 0) {
        active.erase(std::find(active.begin(), active.end(), ep.idx));
        continue;
      }
      // new session overlaps every currently active one at this location;
      // overlap onset is the later start, i.e. this session's
      for (auto j : active) {
        const auto& other = table.records[j];
        if (other.node == rec.node) {
          ++seq.imaginary_discarded;
          continue;
        }
        auto [a, b] = canonical_pair(rec.node, other.node);
        seq.events.push_back({std::move(a), std::move(b), rec.start, rec.location});
      }
      active.push_back(ep.idx);
    }
  }

  seq.sort_events();
  return seq;
}

std::pair<std::uint64_t, std::uint64_t> count_total_and_unique(const ContactSequence& seq,
                                                               std::int64_t t) {
  const auto end = std::upper_bound(
      seq.events.begin(), seq.events.end(), t,
      [](std::int64_t value, const ContactEvent& e) { return value < e.t_start; });
  std::uint64_t total = static_cast<std::uint64_t>(end - seq.events.begin());
  std::unordered_set<std::string> pairs;
  pairs.reserve(static_cast<std::size_t>(total));
  for (auto it = seq.events.begin(); it != end; ++it)
    pairs.insert(it->node_a + '\t' + it->node_b);
  return {total, pairs.size()};
}

RepeatHistogram repeat_contact_histogram(const ContactSequence& seq) {
  std::map<std::pair<std::string_view, std::string_view>, std::uint64_t> counts;
  for (const auto& e : seq.events)
    ++counts[{e.node_a, e.node_b}];
  RepeatHistogram out;
  for (const auto& [pair, n] : counts) {
    if (n == 1)
      ++out.once;
    else if (n == 2)
      ++out.twice;
    else
      ++out.more;
  }
  return out;
}

void write_contacts_csv(const ContactSequence& seq, std::ostream& out) {
  out << "# model=" << seq.source_model << '\n';
  out << "# imaginary_discarded=" << seq.imaginary_discarded << '\n';
  out << "node_a,node_b,t_start,location\n";
  for (const auto& e : seq.events)
    out << e.node_a << ',' << e.node_b << ',' << e.t_start << ',' << e.location << '\n';
}

void write_contacts_csv_file(const ContactSequence& seq, const std::string& path) {
  std::ostringstream buf;
  write_contacts_csv(seq, buf);
  write_file_bytes(path, buf.str());
}

ContactSequence read_contacts_csv(std::istream& in) {
  ContactSequence seq;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (line.empty())
      continue;
    if (line[0] == '#') {
      const std::string_view view(line);
      if (view.starts_with("# model="))
        seq.source_model = line.substr(8);
      else if (view.starts_with("# imaginary_discarded="))
        parse_u64(view.substr(22), seq.imaginary_discarded);
      continue;
    }
    const auto fields = split_csv(line);
    if (!header_seen) {
      if (fields != std::vector<std::string>{"node_a", "node_b", "t_start", "location"})
        throw ParseError("unexpected contact CSV header (line " + std::to_string(line_no) + ")");
      header_seen = true;
      continue;
    }
    if (fields.size() != 4)
      throw ParseError("malformed contact row at line " + std::to_string(line_no));
    ContactEvent e;
    std::tie(e.node_a, e.node_b) = canonical_pair(fields[0], fields[1]);
    if (!parse_i64(fields[2], e.t_start))
      throw ParseError("bad t_start at line " + std::to_string(line_no));
    e.location = fields[3];
    seq.events.push_back(std::move(e));
  }
  if (!header_seen)
    throw ParseError("no contact CSV header found");
  seq.sort_events();
  return seq;
}

ContactSequence read_contacts_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw ParseError("cannot open contact file: " + path);
  return read_contacts_csv(in);
}

} // namespace coloc
