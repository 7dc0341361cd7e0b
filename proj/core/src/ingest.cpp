#include "hypertest/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string_view>

#include "hypertest/error.hpp"

namespace hypertest {
namespace {

[[noreturn]] void parse_error(std::size_t line, const std::string& what) {
  throw Error(Errc::ParseError, "line " + std::to_string(line) + ": " + what);
}

std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

std::optional<ExternalId> parse_id(std::string_view s) {
  ExternalId v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

bool skippable(std::string_view line) {
  const auto pos = line.find_first_not_of(" \t\r");
  return pos == std::string_view::npos || line[pos] == '#';
}

}  // namespace

std::optional<Vertex> LabeledDataset::internal_id(ExternalId id) const {
  const auto it = std::lower_bound(external_ids.begin(), external_ids.end(), id);
  if (it == external_ids.end() || *it != id) return std::nullopt;
  return static_cast<Vertex>(it - external_ids.begin());
}

std::vector<std::string> LabeledDataset::label_set() const {
  if (!labels) return {};
  std::set<std::string> s(labels->begin(), labels->end());
  return {s.begin(), s.end()};
}

LabeledDataset read_hyperedges(std::istream& in, std::size_t max_edge_size) {
  std::vector<std::vector<ExternalId>> raw;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (skippable(line)) continue;
    std::vector<ExternalId> edge;
    for (std::string_view tok : tokens(line)) {
      const auto id = parse_id(tok);
      if (!id) parse_error(lineno, "not a non-negative integer id: '" + std::string(tok) + "'");
      edge.push_back(*id);
    }
    std::sort(edge.begin(), edge.end());
    if (edge.size() < 2) parse_error(lineno, "a hyperedge needs at least two vertices");
    if (std::adjacent_find(edge.begin(), edge.end()) != edge.end()) {
      parse_error(lineno, "repeated vertex in hyperedge");
    }
    if (edge.size() > max_edge_size) {
      parse_error(lineno, "hyperedge of size " + std::to_string(edge.size()) +
                              " exceeds the maximum " + std::to_string(max_edge_size));
    }
    raw.push_back(std::move(edge));
  }
  if (raw.empty()) throw Error(Errc::EmptyFile, "no hyperedges found");

  LabeledDataset ds;
  for (const auto& e : raw) ds.external_ids.insert(ds.external_ids.end(), e.begin(), e.end());
  std::sort(ds.external_ids.begin(), ds.external_ids.end());
  ds.external_ids.erase(std::unique(ds.external_ids.begin(), ds.external_ids.end()),
                        ds.external_ids.end());
  const std::size_t n = ds.external_ids.size();

  std::map<std::size_t, std::vector<Hyperedge>> by_size;
  for (const auto& e : raw) {
    Hyperedge h;
    h.reserve(e.size());
    for (ExternalId id : e) h.push_back(*ds.internal_id(id));
    by_size[h.size()].push_back(std::move(h));
  }
  ds.hypergraph = NonuniformHypergraph(n);
  for (auto& [m, edges] : by_size) {
    ds.hypergraph.set_layer(m, Hypergraph::from_edges_dedup(n, std::move(edges)));
  }
  return ds;
}

LabeledDataset read_hyperedge_file(const std::string& path, std::size_t max_edge_size) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot open " + path);
  return read_hyperedges(in, max_edge_size);
}

void read_labels(LabeledDataset& ds, std::istream& in) {
  std::vector<std::optional<std::string>> found(ds.num_vertices());
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (skippable(line)) continue;
    const auto tok = tokens(line);
    if (tok.size() != 2) parse_error(lineno, "expected 'external_id label'");
    const auto id = parse_id(tok[0]);
    if (!id) parse_error(lineno, "not a non-negative integer id: '" + std::string(tok[0]) + "'");
    const auto v = ds.internal_id(*id);
    if (!v) continue;
    const std::string label(tok[1]);
    if (found[*v] && *found[*v] != label) {
      parse_error(lineno, "conflicting labels for id " + std::to_string(*id));
    }
    found[*v] = label;
  }
  std::vector<std::string> labels;
  labels.reserve(found.size());
  for (std::size_t v = 0; v < found.size(); ++v) {
    if (!found[v]) {
      throw Error(Errc::MissingLabels,
                  "no label for vertex id " + std::to_string(ds.external_ids[v]));
    }
    labels.push_back(std::move(*found[v]));
  }
  ds.labels = std::move(labels);
}

void read_label_file(LabeledDataset& ds, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot open " + path);
  read_labels(ds, in);
}

void write_hyperedges(const LabeledDataset& ds, std::ostream& out,
                      const std::string& header_comment) {
  if (!header_comment.empty()) {
    std::istringstream lines(header_comment);
    std::string l;
    while (std::getline(lines, l)) out << "# " << l << '\n';
  }
  for (const auto& [m, g] : ds.hypergraph.layers()) {
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      const auto verts = g.edge(e);
      for (std::size_t i = 0; i < verts.size(); ++i) {
        if (i) out << ' ';
        out << ds.external_ids[verts[i]];
      }
      out << '\n';
    }
  }
}

void write_labels(const LabeledDataset& ds, std::ostream& out) {
  if (!ds.labels) throw Error(Errc::MissingLabels, "dataset has no labels");
  for (std::size_t v = 0; v < ds.num_vertices(); ++v) {
    out << ds.external_ids[v] << ' ' << (*ds.labels)[v] << '\n';
  }
}

LabeledDataset restrict_vertices(const LabeledDataset& ds, const std::vector<bool>& keep) {
  const std::size_t n = ds.num_vertices();
  std::vector<Vertex> remap(n, 0);
  LabeledDataset out;
  if (ds.labels) out.labels.emplace();
  Vertex next = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (!keep[v]) continue;
    remap[v] = next++;
    out.external_ids.push_back(ds.external_ids[v]);
    if (ds.labels) out.labels->push_back((*ds.labels)[v]);
  }
  out.hypergraph = NonuniformHypergraph(next);
  for (const auto& [m, g] : ds.hypergraph.layers()) {
    std::vector<Hyperedge> edges;
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      const auto verts = g.edge(e);
      if (!std::all_of(verts.begin(), verts.end(), [&](Vertex v) { return keep[v]; })) continue;
      Hyperedge h;
      for (Vertex v : verts) h.push_back(remap[v]);
      edges.push_back(std::move(h));
    }
    out.hypergraph.set_layer(m, Hypergraph(next, std::move(edges)).with_uniform_size(m));
  }
  return out;
}

LabeledDataset degree_filter(const LabeledDataset& ds, std::size_t min_deg, std::size_t max_deg,
                             bool iterate) {
  if (min_deg > max_deg) throw Error(Errc::InvalidArgument, "min degree exceeds max degree");
  LabeledDataset cur = ds;
  while (true) {
    const std::size_t n = cur.num_vertices();
    std::vector<bool> keep(n);
    bool changed = false;
    for (std::size_t v = 0; v < n; ++v) {
      const std::size_t d = cur.hypergraph.total_degree(static_cast<Vertex>(v));
      keep[v] = d >= min_deg && d <= max_deg;
      changed = changed || !keep[v];
    }
    if (!changed) return cur;
    cur = restrict_vertices(cur, keep);
    if (!iterate) return cur;
  }
}

LabeledDataset induce_subnetwork(const LabeledDataset& ds, const std::string& label) {
  if (!ds.labels) throw Error(Errc::MissingLabels, "dataset has no labels");
  std::vector<bool> keep(ds.num_vertices());
  bool any = false;
  for (std::size_t v = 0; v < keep.size(); ++v) {
    keep[v] = (*ds.labels)[v] == label;
    any = any || keep[v];
  }
  if (!any) throw Error(Errc::UnknownLabel, "no vertex carries label '" + label + "'");
  return restrict_vertices(ds, keep);
}

}  // namespace hypertest
