#include "tricl/io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

namespace tricl {

namespace {

std::string trim(const std::string& s) {
    std::size_t begin = 0, end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin])))
        ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1])))
        --end;
    return s.substr(begin, end - begin);
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                field += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(field);
            field.clear();
        } else if (c != '\r') {
            field += c;
        }
    }
    fields.push_back(field);
    return fields;
}

std::int64_t parse_count(const std::string& text, std::size_t line_no) {
    const std::string t = trim(text);
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc() || ptr != t.data() + t.size())
        throw InputError("line " + std::to_string(line_no) + ": '" + text +
                         "' is not an integer count");
    return value;
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open '" + path + "'");
    return in;
}

std::string format_value(double v) {
    // Shortest representation that round-trips; integers print bare.
    if (std::isfinite(v) && v == std::floor(v) && std::abs(v) < 1e15) {
        std::ostringstream os;
        os << static_cast<std::int64_t>(v);
        return os.str();
    }
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

nlohmann::json json_number(double v) {
    if (std::isfinite(v))
        return v;
    return nullptr;
}

}  // namespace

std::vector<EdgeListRow> read_edge_list_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line))
        throw InputError("edge list is empty (missing header)");
    const auto header = split_csv(line);
    if (header.size() < 2 || header.size() > 3 || trim(header[0]) != "source" ||
        trim(header[1]) != "target" || (header.size() == 3 && trim(header[2]) != "count"))
        throw InputError("edge list must start with header 'source,target[,count]'");
    const bool has_count = header.size() == 3;

    std::vector<EdgeListRow> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty())
            continue;
        const auto fields = split_csv(line);
        if (fields.size() != header.size())
            throw InputError("line " + std::to_string(line_no) + ": expected " +
                             std::to_string(header.size()) + " fields, got " +
                             std::to_string(fields.size()));
        EdgeListRow row;
        row.source = trim(fields[0]);
        row.target = trim(fields[1]);
        if (has_count)
            row.count = parse_count(fields[2], line_no);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<EdgeListRow> read_edge_list_csv_file(const std::string& path) {
    auto in = open_input(path);
    return read_edge_list_csv(in);
}

std::vector<std::string> read_node_list_file(const std::string& path) {
    auto in = open_input(path);
    std::vector<std::string> nodes;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        const std::string label = trim(split_csv(line)[0]);
        if (first && label == "node") {
            first = false;
            continue;
        }
        first = false;
        if (!label.empty())
            nodes.push_back(label);
    }
    return nodes;
}

MultiEdgeNetwork read_attributes_csv(std::istream& in, const MultiEdgeNetwork& net) {
    std::string line;
    if (!std::getline(in, line))
        throw InputError("attribute file is empty (missing header)");
    const auto header = split_csv(line);
    if (header.size() < 2 || trim(header[0]) != "node")
        throw InputError("attribute file must start with header 'node,<attr>[,...]'");

    const std::size_t n = static_cast<std::size_t>(net.node_count());
    std::vector<std::vector<std::string>> columns(header.size() - 1,
                                                  std::vector<std::string>(n));
    std::vector<bool> seen(n, false);
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty())
            continue;
        const auto fields = split_csv(line);
        if (fields.size() != header.size())
            throw InputError("attribute line " + std::to_string(line_no) + ": expected " +
                             std::to_string(header.size()) + " fields, got " +
                             std::to_string(fields.size()));
        const std::string label = trim(fields[0]);
        const auto idx = net.find(label);
        if (!idx)
            throw InputError("attribute line " + std::to_string(line_no) + ": unknown node '" +
                             label + "'");
        const auto i = static_cast<std::size_t>(*idx);
        if (seen[i])
            throw InputError("attribute line " + std::to_string(line_no) + ": duplicate node '" +
                             label + "'");
        seen[i] = true;
        for (std::size_t c = 1; c < fields.size(); ++c)
            columns[c - 1][i] = trim(fields[c]);
    }
    for (std::size_t i = 0; i < n; ++i)
        if (!seen[i])
            throw InputError("attribute file is missing node '" +
                             net.labels()[i] + "'");

    MultiEdgeNetwork out = net;
    for (std::size_t c = 1; c < header.size(); ++c)
        out = out.with_attribute(trim(header[c]), columns[c - 1]);
    return out;
}

MultiEdgeNetwork read_attributes_csv_file(const std::string& path, const MultiEdgeNetwork& net) {
    auto in = open_input(path);
    return read_attributes_csv(in, net);
}

std::vector<EdgeListRow> read_contact_records(std::istream& in) {
    std::vector<EdgeListRow> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty())
            continue;
        std::istringstream fields(line);
        std::string t, i, j;
        if (!(fields >> t >> i >> j))
            throw InputError("contact line " + std::to_string(line_no) +
                             ": expected 't i j [...]'");
        if (i == j)
            throw InputError("contact line " + std::to_string(line_no) + ": self-contact '" + i +
                             "'");
        rows.push_back({i, j, std::nullopt});
    }
    return rows;
}

std::vector<EdgeListRow> read_contact_records_file(const std::string& path) {
    auto in = open_input(path);
    return read_contact_records(in);
}

ContactMetadata read_contact_metadata_file(const std::string& path) {
    auto in = open_input(path);
    ContactMetadata meta;
    std::vector<std::vector<std::string>> columns;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty())
            continue;
        std::istringstream fields(line);
        std::vector<std::string> values;
        std::string value;
        while (fields >> value)
            values.push_back(value);
        if (values.size() < 2)
            throw InputError("metadata line " + std::to_string(line_no) +
                             ": expected 'node <class> [...]'");
        meta.nodes.push_back(values[0]);
        if (columns.empty())
            columns.resize(values.size() - 1);
        if (values.size() - 1 != columns.size())
            throw InputError("metadata line " + std::to_string(line_no) +
                             ": inconsistent column count");
        for (std::size_t c = 1; c < values.size(); ++c)
            columns[c - 1].push_back(values[c]);
    }
    static const char* kNames[] = {"class", "gender"};
    for (std::size_t c = 0; c < columns.size(); ++c) {
        const std::string name = c < 2 ? kNames[c] : "attr" + std::to_string(c + 1);
        meta.attributes.emplace_back(name, std::move(columns[c]));
    }
    return meta;
}

void write_edge_list_csv(std::ostream& out, const MultiEdgeNetwork& net) {
    out << "source,target,count\n";
    const Index n = net.node_count();
    for (Index i = 0; i < n; ++i)
        for (Index j = i + 1; j < n; ++j)
            if (net.count(i, j) > 0)
                out << net.labels()[static_cast<std::size_t>(i)] << ','
                    << net.labels()[static_cast<std::size_t>(j)] << ',' << net.count(i, j)
                    << '\n';
}

void write_matrix_csv(std::ostream& out, const std::vector<std::string>& labels,
                      const Matrix& values) {
    out << "node";
    for (const auto& label : labels)
        out << ',' << label;
    out << '\n';
    for (Index i = 0; i < values.rows(); ++i) {
        out << labels[static_cast<std::size_t>(i)];
        for (Index j = 0; j < values.cols(); ++j)
            out << ',' << format_value(values(i, j));
        out << '\n';
    }
}

void write_matrix_long_tsv(std::ostream& out, const std::vector<std::string>& labels,
                           const Matrix& values) {
    out << "node_i\tnode_j\tvalue\n";
    for (Index i = 0; i < values.rows(); ++i)
        for (Index j = i + 1; j < values.cols(); ++j)
            out << labels[static_cast<std::size_t>(i)] << '\t'
                << labels[static_cast<std::size_t>(j)] << '\t' << format_value(values(i, j))
                << '\n';
}

nlohmann::json fit_result_to_json(const FitResult& result) {
    nlohmann::json coefficients = nlohmann::json::array();
    for (const auto& c : result.coefficients) {
        coefficients.push_back({{"name", c.name},
                                {"estimate", json_number(c.estimate)},
                                {"std_err", json_number(c.std_err)},
                                {"p_value", json_number(c.p_value)},
                                {"stars", significance_stars(c.p_value)},
                                {"unidentified", c.unidentified}});
    }
    return {{"model", result.model},
            {"likelihood_mode", result.likelihood_mode},
            {"coefficients", coefficients},
            {"log_lik", json_number(result.log_lik)},
            {"aic", json_number(result.aic)},
            {"null_aic", json_number(result.null_aic)},
            {"converged", result.converged},
            {"iterations", result.iterations}};
}

nlohmann::json replication_summary_to_json(const ReplicationSummary& summary) {
    nlohmann::json reps = nlohmann::json::array();
    for (std::size_t i = 0; i < summary.coefficients.size(); ++i)
        reps.push_back({{"replication", summary.replication[i]},
                        {"coefficient", json_number(summary.coefficients[i])},
                        {"p_value", json_number(summary.p_values[i])}});
    return {{"replications", reps},
            {"failed", summary.failed},
            {"mean", json_number(summary.mean)},
            {"min", json_number(summary.min)},
            {"max", json_number(summary.max)},
            {"sd", json_number(summary.sd)},
            {"significant_fraction", json_number(summary.significant_fraction)}};
}

void write_replication_tsv(std::ostream& out, const ReplicationSummary& summary) {
    out << "replication\tcoefficient\tp_value\n";
    for (std::size_t i = 0; i < summary.coefficients.size(); ++i)
        out << summary.replication[i] << '\t' << format_value(summary.coefficients[i]) << '\t'
            << format_value(summary.p_values[i]) << '\n';
}

std::string format_fit_result(const FitResult& result) {
    std::ostringstream os;
    os << "model: " << result.model << " (" << result.likelihood_mode << ")\n";
    os << std::left << std::setw(20) << "coefficient" << std::right << std::setw(12) << "estimate"
       << std::setw(12) << "std.err" << std::setw(12) << "p.value"
       << "  \n";
    for (const auto& c : result.coefficients) {
        os << std::left << std::setw(20) << c.name << std::right << std::fixed
           << std::setprecision(4) << std::setw(12) << c.estimate;
        if (c.unidentified) {
            os << std::setw(12) << "--" << std::setw(12) << "--"
               << "  (unidentified)";
        } else {
            os << std::setw(12) << c.std_err;
            if (c.p_value < 1e-4)
                os << std::setw(12) << std::scientific << std::setprecision(1) << c.p_value
                   << std::fixed << std::setprecision(4);
            else
                os << std::setw(12) << c.p_value;
            os << "  " << significance_stars(c.p_value);
        }
        os << '\n';
    }
    os << std::setprecision(2) << "log-likelihood: " << result.log_lik << "  AIC: " << result.aic
       << "  null AIC: " << result.null_aic << "  iterations: " << result.iterations
       << (result.converged ? "" : "  (not converged)") << '\n';
    return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw InputError("cannot write '" + path + "'");
    out << content;
}

}  // namespace tricl
