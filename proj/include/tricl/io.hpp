#pragma once

#include "tricl/multigraph.hpp"
#include "tricl/optim.hpp"
#include "tricl/statistics.hpp"
#include "tricl/synth.hpp"
#include "tricl/types.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace tricl {

/// Edge-list CSV with header `source,target[,count]`.
std::vector<EdgeListRow> read_edge_list_csv(std::istream& in);
std::vector<EdgeListRow> read_edge_list_csv_file(const std::string& path);

/// Node declarations: one label per line, or a CSV with a `node` header.
std::vector<std::string> read_node_list_file(const std::string& path);

/// Node-attribute CSV with header `node,<attr1>[,<attr2>...]`, one row per
/// node. Every node of the network must appear exactly once and no foreign
/// nodes are allowed. Returns a copy of the network with attributes attached.
MultiEdgeNetwork read_attributes_csv(std::istream& in, const MultiEdgeNetwork& net);
MultiEdgeNetwork read_attributes_csv_file(const std::string& path, const MultiEdgeNetwork& net);

/// Contact records `t i j [...]`, whitespace-separated, one interaction per
/// row; dyad counts are the number of records per unordered pair.
std::vector<EdgeListRow> read_contact_records(std::istream& in);
std::vector<EdgeListRow> read_contact_records_file(const std::string& path);

/// Contact metadata `node class [gender ...]`, whitespace-separated, no
/// header. Returns declared node labels plus per-attribute value columns
/// named class, gender.
struct ContactMetadata {
    std::vector<std::string> nodes;
    std::vector<std::pair<std::string, std::vector<std::string>>> attributes;
};
ContactMetadata read_contact_metadata_file(const std::string& path);

void write_edge_list_csv(std::ostream& out, const MultiEdgeNetwork& net);

/// Dense labelled matrix, first column and header row carry node labels.
void write_matrix_csv(std::ostream& out, const std::vector<std::string>& labels,
                      const Matrix& values);
/// Long format: `node_i<TAB>node_j<TAB>value`, upper triangle once per dyad.
void write_matrix_long_tsv(std::ostream& out, const std::vector<std::string>& labels,
                           const Matrix& values);

nlohmann::json fit_result_to_json(const FitResult& result);
nlohmann::json replication_summary_to_json(const ReplicationSummary& summary);
void write_replication_tsv(std::ostream& out, const ReplicationSummary& summary);

/// Human-readable coefficient table with significance codes.
std::string format_fit_result(const FitResult& result);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace tricl
