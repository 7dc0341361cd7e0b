#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hypertest/hypergraph.hpp"

namespace hypertest {

using ExternalId = std::uint64_t;

/// A layered hypergraph read from disk together with the external vertex ids
/// and, optionally, one community label per vertex.
struct LabeledDataset {
  NonuniformHypergraph hypergraph;
  /// internal vertex -> external id, strictly increasing
  std::vector<ExternalId> external_ids;
  std::optional<std::vector<std::string>> labels;

  std::size_t num_vertices() const noexcept { return external_ids.size(); }
  std::optional<Vertex> internal_id(ExternalId id) const;
  /// Distinct labels in sorted order; empty without labels.
  std::vector<std::string> label_set() const;

  friend bool operator==(const LabeledDataset&, const LabeledDataset&) = default;
};

inline constexpr std::size_t kDefaultMaxEdgeSize = 8;

/// Parses the hyperedge format: one hyperedge per line of whitespace
/// separated non-negative integer ids, '#' comments, blank lines ignored.
/// Ids are remapped densely in increasing order, duplicates collapsed and
/// sizes split into layers. Throws ParseError (with line number) or
/// EmptyFile when no hyperedge is found.
LabeledDataset read_hyperedges(std::istream& in, std::size_t max_edge_size = kDefaultMaxEdgeSize);
/// Throws IoError when the file cannot be opened.
LabeledDataset read_hyperedge_file(const std::string& path,
                                   std::size_t max_edge_size = kDefaultMaxEdgeSize);

/// Reads "external_id label" lines and attaches a label to every vertex of
/// `ds`. Ids not in the dataset are ignored. Throws ParseError on malformed
/// or conflicting lines, MissingLabels when some vertex has no label.
void read_labels(LabeledDataset& ds, std::istream& in);
void read_label_file(LabeledDataset& ds, const std::string& path);

/// Writes hyperedges with external ids, layers in increasing size.
void write_hyperedges(const LabeledDataset& ds, std::ostream& out,
                      const std::string& header_comment = {});
/// Throws MissingLabels when `ds` has none.
void write_labels(const LabeledDataset& ds, std::ostream& out);

/// Keeps vertices whose total degree over all layers lies in [min_deg, max_deg]
/// and the hyperedges entirely among them, then remaps ids densely. Degrees
/// are taken once from the input; with `iterate` the filter is repeated until
/// no vertex changes. Throws InvalidArgument when min_deg > max_deg.
LabeledDataset degree_filter(const LabeledDataset& ds, std::size_t min_deg, std::size_t max_deg,
                             bool iterate = false);

/// Vertices carrying `label` and the hyperedges entirely inside them.
/// Throws MissingLabels or UnknownLabel.
LabeledDataset induce_subnetwork(const LabeledDataset& ds, const std::string& label);

/// Keeps the vertices with keep[v] set; shared by the filters above.
LabeledDataset restrict_vertices(const LabeledDataset& ds, const std::vector<bool>& keep);

}  // namespace hypertest
