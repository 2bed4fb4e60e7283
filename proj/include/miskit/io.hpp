#pragma once

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "miskit/graph.hpp"

namespace miskit {

// DIMACS edge format: optional "c" comment lines, one "p edge <n> <m>"
// header, then "e <u> <v>" lines with 1-indexed endpoints. An edge count
// that disagrees with the header is reported as a warning, not an error.
inline Graph parse_dimacs(const std::string& text, std::vector<std::string>* warnings = nullptr) {
    std::istringstream in(text);
    std::string line;
    int n = -1;
    long long declared_edges = -1;
    std::vector<Edge> edges;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;  // blank line
        if (tag == "c") continue;
        if (tag == "p") {
            if (n >= 0)
                throw std::runtime_error("dimacs: duplicate problem line at line " +
                                         std::to_string(line_no));
            std::string fmt;
            long long nn, mm;
            if (!(ls >> fmt >> nn >> mm) || fmt != "edge" || nn < 0 || mm < 0)
                throw std::runtime_error("dimacs: malformed header at line " +
                                         std::to_string(line_no) + " (expected 'p edge n m')");
            n = static_cast<int>(nn);
            declared_edges = mm;
            continue;
        }
        if (tag == "e") {
            if (n < 0)
                throw std::runtime_error("dimacs: edge before problem line at line " +
                                         std::to_string(line_no));
            long long u, v;
            if (!(ls >> u >> v))
                throw std::runtime_error("dimacs: malformed edge at line " + std::to_string(line_no));
            if (u < 1 || v < 1 || u > n || v > n)
                throw std::runtime_error("dimacs: edge endpoint out of range at line " +
                                         std::to_string(line_no));
            if (u == v)
                throw std::runtime_error("dimacs: self-loop at line " + std::to_string(line_no));
            edges.emplace_back(static_cast<int>(u - 1), static_cast<int>(v - 1));
            continue;
        }
        throw std::runtime_error("dimacs: unrecognized line type '" + tag + "' at line " +
                                 std::to_string(line_no));
    }
    if (n < 0) throw std::runtime_error("dimacs: missing problem line");
    Graph g(n, edges);
    if (warnings && declared_edges != static_cast<long long>(g.num_edges())) {
        warnings->push_back("dimacs: header declares " + std::to_string(declared_edges) +
                            " edges, found " + std::to_string(g.num_edges()));
    }
    return g;
}

inline std::string write_dimacs(const Graph& g) {
    std::ostringstream out;
    out << "p edge " << g.num_vertices() << ' ' << g.num_edges() << '\n';
    for (const auto& [u, v] : g.edges()) out << "e " << (u + 1) << ' ' << (v + 1) << '\n';
    return out.str();
}

// Plain edge-list format: "u v" per line, 0-indexed, '#' or 'c' comments.
// The vertex count is the largest endpoint + 1.
inline Graph parse_edge_list(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<Edge> edges;
    int max_vertex = -1;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        if (first[0] == '#' || first == "c") continue;
        long long u, v;
        std::istringstream reparse(line);
        if (!(reparse >> u >> v) || u < 0 || v < 0)
            throw std::runtime_error("edge list: malformed line " + std::to_string(line_no));
        edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
        max_vertex = std::max(max_vertex, static_cast<int>(std::max(u, v)));
    }
    return Graph(max_vertex + 1, edges);
}

struct CnfReduction {
    Graph graph;
    int clause_count = 0;
    // vertex i corresponds to literal occurrence (clause_of[i], literal_of[i])
    std::vector<int> clause_of;
    std::vector<int> literal_of;
};

// Standard SAT → MIS reduction over DIMACS CNF input: one vertex per
// literal occurrence, a clique inside each clause, and an edge between
// every complementary pair of occurrences. The formula is satisfiable
// iff alpha equals the clause count.
inline CnfReduction cnf_to_mis_graph(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    long long num_vars = -1, num_clauses = -1;
    std::vector<std::vector<int>> clauses;
    std::vector<int> current;
    bool done = false;
    int line_no = 0;
    while (std::getline(in, line) && !done) {
        ++line_no;
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        if (first == "c" || first[0] == '%') continue;
        if (first == "p") {
            std::string fmt;
            if (!(ls >> fmt >> num_vars >> num_clauses) || fmt != "cnf" || num_vars < 0 ||
                num_clauses < 0)
                throw std::runtime_error("cnf: malformed header at line " + std::to_string(line_no));
            continue;
        }
        if (num_clauses < 0)
            throw std::runtime_error("cnf: clause data before header at line " +
                                     std::to_string(line_no));
        std::istringstream reparse(line);
        long long lit;
        while (reparse >> lit) {
            if (lit == 0) {
                if (current.empty())
                    throw std::runtime_error("cnf: empty clause at line " + std::to_string(line_no));
                clauses.push_back(current);
                current.clear();
                if (static_cast<long long>(clauses.size()) == num_clauses) {
                    done = true;
                    break;
                }
            } else {
                if (lit > num_vars || lit < -num_vars)
                    throw std::runtime_error("cnf: literal out of range at line " +
                                             std::to_string(line_no));
                current.push_back(static_cast<int>(lit));
            }
        }
    }
    if (num_clauses < 0) throw std::runtime_error("cnf: missing header");
    if (!current.empty()) throw std::runtime_error("cnf: unterminated final clause");
    if (static_cast<long long>(clauses.size()) != num_clauses)
        throw std::runtime_error("cnf: header declares " + std::to_string(num_clauses) +
                                 " clauses, found " + std::to_string(clauses.size()));

    CnfReduction out;
    out.clause_count = static_cast<int>(clauses.size());
    std::vector<std::vector<int>> pos_occ(static_cast<std::size_t>(num_vars) + 1);
    std::vector<std::vector<int>> neg_occ(static_cast<std::size_t>(num_vars) + 1);
    std::vector<Edge> edges;
    int next_vertex = 0;
    for (std::size_t ci = 0; ci < clauses.size(); ++ci) {
        const int first_vertex = next_vertex;
        for (int lit : clauses[ci]) {
            out.clause_of.push_back(static_cast<int>(ci));
            out.literal_of.push_back(lit);
            const std::size_t var = static_cast<std::size_t>(std::abs(lit));
            (lit > 0 ? pos_occ : neg_occ)[var].push_back(next_vertex);
            ++next_vertex;
        }
        for (int a = first_vertex; a < next_vertex; ++a)
            for (int b = a + 1; b < next_vertex; ++b) edges.emplace_back(a, b);
    }
    for (long long var = 1; var <= num_vars; ++var) {
        for (int a : pos_occ[static_cast<std::size_t>(var)])
            for (int b : neg_occ[static_cast<std::size_t>(var)])
                if (a != b) edges.emplace_back(a, b);
    }
    out.graph = Graph(next_vertex, edges);
    return out;
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << content;
}

// Graph file loader accepting DIMACS edge format or a plain 0-indexed
// edge list; DIMACS is detected by its problem line.
inline Graph load_graph_text(const std::string& text, std::vector<std::string>* warnings = nullptr) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;
        if (tag == "c" || tag[0] == '#') continue;
        if (tag == "p") return parse_dimacs(text, warnings);
        break;
    }
    return parse_edge_list(text);
}

inline Graph load_graph_file(const std::string& path, std::vector<std::string>* warnings = nullptr) {
    return load_graph_text(read_text_file(path), warnings);
}

}  // namespace miskit
