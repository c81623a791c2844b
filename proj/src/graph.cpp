#include "mleap/graph.hpp"

#include <omp.h>

#include <algorithm>
#include <bit>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

#include "mleap/errors.hpp"

namespace mleap {

Graph::Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    if (n_ < 2) throw ParameterError("graph needs at least 2 vertices, got " + std::to_string(n_));
    for (auto& [u, v] : edges_) {
        if (u < 0 || v < 0 || u >= n_ || v >= n_)
            throw ParameterError("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                                 ") has an endpoint outside [0, " + std::to_string(n_) + ")");
        if (u == v) throw ParameterError("self-loop at vertex " + std::to_string(u));
        if (u > v) std::swap(u, v);
    }
    std::sort(edges_.begin(), edges_.end());
    const auto dup = std::adjacent_find(edges_.begin(), edges_.end());
    if (dup != edges_.end())
        throw ParameterError("duplicate edge (" + std::to_string(dup->first) + ", " +
                             std::to_string(dup->second) + ")");
}

std::vector<int> Graph::degrees() const {
    std::vector<int> deg(n_, 0);
    for (const auto& [u, v] : edges_) {
        ++deg[u];
        ++deg[v];
    }
    return deg;
}

Graph generate_regular(int n, int degree, Rng& rng, RegularGraphOptions opts) {
    if (degree < 1 || degree >= n || (static_cast<long long>(n) * degree) % 2 != 0)
        throw ParameterError("no simple " + std::to_string(degree) + "-regular graph on " +
                             std::to_string(n) + " vertices");
    if (opts.max_attempts < 1) throw ParameterError("max_attempts must be positive");

    std::vector<int> points;
    points.reserve(static_cast<std::size_t>(n) * degree);
    std::vector<Edge> edges;
    for (int attempt = 0; attempt < opts.max_attempts; ++attempt) {
        points.clear();
        for (int v = 0; v < n; ++v) points.insert(points.end(), degree, v);
        for (std::size_t i = points.size() - 1; i > 0; --i)
            std::swap(points[i], points[rng.below(i + 1)]);

        edges.clear();
        bool simple = true;
        for (std::size_t i = 0; i < points.size() && simple; i += 2) {
            auto u = points[i], v = points[i + 1];
            if (u == v) simple = false;
            edges.emplace_back(std::min(u, v), std::max(u, v));
        }
        if (!simple) continue;
        std::sort(edges.begin(), edges.end());
        if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) continue;
        return Graph(n, edges);
    }
    throw RetryExhaustedError("pairing model rejected " + std::to_string(opts.max_attempts) +
                              " attempts for n=" + std::to_string(n) +
                              ", degree=" + std::to_string(degree));
}

int cut_value(const Graph& g, const CutAssignment& bits) {
    if (bits.size() != static_cast<std::size_t>(g.n()))
        throw ParameterError("assignment has " + std::to_string(bits.size()) + " bits, graph has " +
                             std::to_string(g.n()) + " vertices");
    int cut = 0;
    for (const auto& [u, v] : g.edges()) cut += (bits[u] != 0) != (bits[v] != 0);
    return cut;
}

int cut_value(const Graph& g, std::uint64_t bits) noexcept {
    int cut = 0;
    for (const auto& [u, v] : g.edges()) cut += static_cast<int>(((bits >> u) ^ (bits >> v)) & 1U);
    return cut;
}

MaxCut max_cut_brute_force(const Graph& g, BruteForceOptions opts) {
    if (g.n() > opts.max_vertices)
        throw CapacityError("brute-force MaxCut limited to " + std::to_string(opts.max_vertices) +
                            " vertices, graph has " + std::to_string(g.n()));

    // Edge masks let each assignment be scored with popcounts: an edge is cut
    // iff exactly one endpoint bit is set.
    std::vector<std::uint64_t> masks;
    masks.reserve(g.edge_count());
    for (const auto& [u, v] : g.edges()) masks.push_back((1ULL << u) | (1ULL << v));

    // Vertex 0 stays in T; complements give the other half.
    const std::uint64_t half = 1ULL << (g.n() - 1);
    int best = -1;
    std::uint64_t best_x = 0;
#pragma omp parallel
    {
        int local_best = -1;
        std::uint64_t local_x = 0;
#pragma omp for schedule(static) nowait
        for (std::uint64_t k = 0; k < half; ++k) {
            const std::uint64_t x = k << 1;
            int cut = 0;
            for (auto m : masks) cut += std::popcount(x & m) == 1;
            if (cut > local_best) {
                local_best = cut;
                local_x = x;
            }
        }
#pragma omp critical
        if (local_best > best || (local_best == best && local_x < best_x)) {
            best = local_best;
            best_x = local_x;
        }
    }

    MaxCut out;
    out.f_max = best;
    out.witness.resize(g.n());
    for (int u = 0; u < g.n(); ++u) out.witness[u] = static_cast<std::uint8_t>((best_x >> u) & 1U);
    return out;
}

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

// Whitespace-separated integers of one line.
std::vector<long long> parse_ints(std::string_view line, std::size_t line_no) {
    std::vector<long long> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        if (i == line.size()) break;
        long long value = 0;
        const auto* begin = line.data() + i;
        const auto* end = line.data() + line.size();
        const auto [ptr, ec] = std::from_chars(begin, end, value);
        if (ec != std::errc() || (ptr != end && *ptr != ' ' && *ptr != '\t'))
            throw ParseError(line_no, "expected an integer in \"" + std::string(line) + "\"");
        out.push_back(value);
        i += static_cast<std::size_t>(ptr - begin);
    }
    return out;
}

}  // namespace

Graph read_edge_list(std::string_view text) {
    std::optional<int> n;
    std::vector<Edge> edges;
    std::vector<std::size_t> edge_lines;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const auto nl = text.find('\n', pos);
        const auto raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        const auto line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        const auto ints = parse_ints(line, line_no);
        if (!n) {
            if (ints.size() != 1) throw ParseError(line_no, "expected the vertex count alone");
            if (ints[0] < 2 || ints[0] > 64) throw ParseError(line_no, "vertex count must be in [2, 64]");
            n = static_cast<int>(ints[0]);
            continue;
        }
        if (ints.size() != 2) throw ParseError(line_no, "expected \"u v\"");
        const auto u = ints[0], v = ints[1];
        if (u < 0 || v < 0 || u >= *n || v >= *n)
            throw ParseError(line_no, "vertex out of range [0, " + std::to_string(*n) + ")");
        if (u == v) throw ParseError(line_no, "self-loop at vertex " + std::to_string(u));
        edges.emplace_back(static_cast<int>(std::min(u, v)), static_cast<int>(std::max(u, v)));
        edge_lines.push_back(line_no);
    }
    if (!n) throw ParseError(std::max<std::size_t>(line_no, 1), "missing vertex count");

    // Report duplicates at the line of the second occurrence.
    std::vector<std::size_t> order(edges.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return edges[a] < edges[b]; });
    for (std::size_t i = 1; i < order.size(); ++i)
        if (edges[order[i]] == edges[order[i - 1]])
            throw ParseError(edge_lines[order[i]], "duplicate edge " + std::to_string(edges[order[i]].first) +
                                                       " " + std::to_string(edges[order[i]].second));

    return Graph(*n, std::move(edges));
}

std::string write_edge_list(const Graph& g) {
    std::string out = std::to_string(g.n()) + "\n";
    for (const auto& [u, v] : g.edges()) out += std::to_string(u) + " " + std::to_string(v) + "\n";
    return out;
}

Graph load_graph(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open graph file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return read_edge_list(ss.str());
}

void save_graph(const Graph& g, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write graph file " + path);
    out << write_edge_list(g);
    if (!out) throw IoError("write failed: " + path);
}

std::string fingerprint(const Graph& g) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : write_edge_list(g)) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    static constexpr char digits[] = "0123456789abcdef";
    std::string hex(16, '0');
    for (int i = 15; i >= 0; --i, h >>= 4) hex[i] = digits[h & 0xF];
    return hex;
}

}  // namespace mleap
