#include "avn/graphstate.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <deque>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace avn {

Graph::Graph(uint32_t n) : n_(n), adj_(n, 0) {
    if (n == 0 || n > kMaxQubits) {
        throw std::invalid_argument("graph order must be in [1, 64]");
    }
}

uint32_t Graph::degree(uint32_t v) const {
    return uint32_t(std::popcount(adj_.at(v)));
}

uint32_t Graph::max_degree() const {
    uint32_t best = 0;
    for (uint32_t v = 0; v < n_; ++v) {
        best = std::max(best, degree(v));
    }
    return best;
}

bool Graph::has_edge(uint32_t u, uint32_t v) const {
    return u < n_ && v < n_ && ((adj_[u] >> v) & 1u) != 0;
}

void Graph::add_edge(uint32_t u, uint32_t v) {
    if (u >= n_ || v >= n_) {
        throw std::invalid_argument("edge endpoint out of range");
    }
    if (u == v) {
        throw std::invalid_argument("loops are not allowed");
    }
    adj_[u] |= uint64_t(1) << v;
    adj_[v] |= uint64_t(1) << u;
}

std::vector<std::pair<uint32_t, uint32_t>> Graph::edges() const {
    std::vector<std::pair<uint32_t, uint32_t>> out;
    for (uint32_t u = 0; u < n_; ++u) {
        uint64_t higher = adj_[u] >> (u + 1) << (u + 1);
        while (higher) {
            const uint32_t v = uint32_t(std::countr_zero(higher));
            higher &= higher - 1;
            out.emplace_back(u, v);
        }
    }
    return out;
}

std::string Graph::str() const {
    std::string out = "n=" + std::to_string(n_) + "\nedges=";
    bool first = true;
    for (auto [u, v] : edges()) {
        if (!first) {
            out += ",";
        }
        first = false;
        out += std::to_string(u) + "-" + std::to_string(v);
    }
    out += "\n";
    return out;
}

Graph Graph::complete(uint32_t n) {
    Graph g(n);
    for (uint32_t u = 0; u < n; ++u) {
        for (uint32_t v = u + 1; v < n; ++v) {
            g.add_edge(u, v);
        }
    }
    return g;
}

Graph Graph::star(uint32_t n, uint32_t center) {
    Graph g(n);
    for (uint32_t v = 0; v < n; ++v) {
        if (v != center) {
            g.add_edge(center, v);
        }
    }
    return g;
}

Graph Graph::cycle(uint32_t n) {
    Graph g(n);
    for (uint32_t v = 0; v < n; ++v) {
        g.add_edge(v, (v + 1) % n);
    }
    return g;
}

Graph Graph::parse(std::string_view text) {
    std::vector<std::string> lines;
    {
        std::string current;
        for (char c : text) {
            if (c == '\n') {
                lines.push_back(current);
                current.clear();
            } else if (c != '\r') {
                current.push_back(c);
            }
        }
        if (!current.empty()) {
            lines.push_back(current);
        }
    }
    const auto strip = [](std::string s) {
        const auto issp = [](char c) { return std::isspace(static_cast<unsigned char>(c)); };
        while (!s.empty() && issp(s.front())) {
            s.erase(s.begin());
        }
        while (!s.empty() && issp(s.back())) {
            s.pop_back();
        }
        return s;
    };
    std::vector<std::string> body;
    for (auto& line : lines) {
        std::string s = strip(line);
        if (!s.empty() && s[0] != '#') {
            body.push_back(s);
        }
    }
    if (body.empty()) {
        throw std::invalid_argument("empty graph description");
    }

    if (body[0].rfind("n=", 0) == 0) {
        const uint32_t n = uint32_t(std::stoul(body[0].substr(2)));
        Graph g(n);
        if (body.size() > 1) {
            std::string spec = body[1];
            if (spec.rfind("edges=", 0) != 0) {
                throw std::invalid_argument("expected an edges= line");
            }
            spec = spec.substr(6);
            std::stringstream ss(spec);
            std::string item;
            while (std::getline(ss, item, ',')) {
                item = strip(item);
                if (item.empty()) {
                    continue;
                }
                const size_t dash = item.find('-');
                if (dash == std::string::npos) {
                    throw std::invalid_argument("bad edge \"" + item + "\"");
                }
                const uint32_t u = uint32_t(std::stoul(item.substr(0, dash)));
                const uint32_t v = uint32_t(std::stoul(item.substr(dash + 1)));
                g.add_edge(u, v);
            }
        }
        return g;
    }

    // Adjacency-matrix block of 0/1 rows.
    const uint32_t n = uint32_t(body.size());
    Graph g(n);
    for (uint32_t r = 0; r < n; ++r) {
        std::string row;
        for (char c : body[r]) {
            if (c == '0' || c == '1') {
                row.push_back(c);
            } else if (!std::isspace(static_cast<unsigned char>(c))) {
                throw std::invalid_argument("bad adjacency row \"" + body[r] + "\"");
            }
        }
        if (row.size() != n) {
            throw std::invalid_argument("adjacency matrix is not square");
        }
        for (uint32_t c = 0; c < n; ++c) {
            if (row[c] == '1') {
                if (r == c) {
                    throw std::invalid_argument("adjacency matrix has a loop");
                }
                if (r < c) {
                    g.add_edge(r, c);
                }
                if (r > c && !g.has_edge(c, r)) {
                    throw std::invalid_argument("adjacency matrix is not symmetric");
                }
            } else if (r > c && g.has_edge(c, r)) {
                throw std::invalid_argument("adjacency matrix is not symmetric");
            }
        }
    }
    return g;
}

Graph Graph::local_complement(uint32_t v) const {
    if (v >= n_) {
        throw std::invalid_argument("vertex out of range");
    }
    Graph out = *this;
    const uint64_t nb = adj_[v];
    uint64_t rest = nb;
    while (rest) {
        const uint32_t u = uint32_t(std::countr_zero(rest));
        rest &= rest - 1;
        out.adj_[u] ^= nb & ~(uint64_t(1) << u);
    }
    return out;
}

std::vector<Graph> lc_orbit(const Graph& g, uint32_t cap) {
    if (g.n() > cap) {
        throw SizeCapExceeded("orbit cap is " + std::to_string(cap) + " vertices");
    }
    const auto key = [](const Graph& h) {
        std::string k;
        for (uint32_t v = 0; v < h.n(); ++v) {
            const uint64_t row = h.neighbors(v);
            k.append(reinterpret_cast<const char*>(&row), sizeof(row));
        }
        return k;
    };
    std::vector<Graph> orbit;
    std::unordered_set<std::string> seen;
    std::deque<Graph> frontier{g};
    seen.insert(key(g));
    while (!frontier.empty()) {
        Graph current = std::move(frontier.front());
        frontier.pop_front();
        orbit.push_back(current);
        for (uint32_t v = 0; v < current.n(); ++v) {
            Graph next = current.local_complement(v);
            if (seen.insert(key(next)).second) {
                frontier.push_back(std::move(next));
            }
        }
    }
    return orbit;
}

std::vector<PauliElement> graph_generators(const Graph& g) {
    std::vector<PauliElement> out;
    out.reserve(g.n());
    for (uint32_t u = 0; u < g.n(); ++u) {
        const uint64_t x = uint64_t(1) << u;
        const uint64_t z = g.neighbors(u);
        out.push_back(PauliElement::from_check_vector(CheckVector{g.n(), x, z}, 0));
    }
    return out;
}

StabiliserGroup graph_group(const Graph& g) {
    return StabiliserGroup(g.n(), graph_generators(g));
}

bool has_avn(const Graph& g) {
    return g.max_degree() >= 2;
}

namespace {

ExtractedTriple extract_at(const Graph& g, const std::vector<PauliElement>& gens,
                           uint32_t u, uint32_t v, uint32_t w) {
    if (g.has_edge(v, w)) {
        return ExtractedTriple{u, v, w, 1, AvnTriple{gens[u], gens[v], gens[w]}};
    }
    return ExtractedTriple{u, v, w, 2,
                           AvnTriple{gens[u], gens[u] * gens[v], gens[u] * gens[w]}};
}

}  // namespace

std::optional<ExtractedTriple> extract_avn_triple(const Graph& g) {
    const auto gens = graph_generators(g);
    for (uint32_t u = 0; u < g.n(); ++u) {
        if (g.degree(u) < 2) {
            continue;
        }
        const uint64_t nb = g.neighbors(u);
        const uint32_t v = uint32_t(std::countr_zero(nb));
        const uint32_t w = uint32_t(std::countr_zero(nb & (nb - 1)));
        return extract_at(g, gens, u, v, w);
    }
    return std::nullopt;
}

std::vector<ExtractedTriple> extract_all_avn_triples(const Graph& g) {
    const auto gens = graph_generators(g);
    std::vector<ExtractedTriple> out;
    for (uint32_t u = 0; u < g.n(); ++u) {
        if (g.degree(u) < 2) {
            continue;
        }
        for (uint32_t v = 0; v < g.n(); ++v) {
            if (!g.has_edge(u, v)) {
                continue;
            }
            for (uint32_t w = v + 1; w < g.n(); ++w) {
                if (g.has_edge(u, w)) {
                    out.push_back(extract_at(g, gens, u, v, w));
                }
            }
        }
    }
    return out;
}

LocalCliffordFrame::LocalCliffordFrame(std::vector<Site> sites) : sites_(std::move(sites)) {
    if (sites_.empty() || sites_.size() > kMaxQubits) {
        throw std::invalid_argument("frame length must be in [1, 64]");
    }
    for (const Site& s : sites_) {
        if (s.x_image.letter == PauliLetter::I || s.z_image.letter == PauliLetter::I ||
            s.x_image.letter == s.z_image.letter) {
            throw std::invalid_argument(
                "frame site images must be distinct non-identity letters");
        }
    }
}

LocalCliffordFrame LocalCliffordFrame::identity(uint32_t n) {
    return LocalCliffordFrame(std::vector<Site>(
        n, Site{{PauliLetter::X, false}, {PauliLetter::Z, false}}));
}

LocalCliffordFrame::Site LocalCliffordFrame::hadamard_site() {
    return Site{{PauliLetter::Z, false}, {PauliLetter::X, false}};
}

LocalCliffordFrame::Site LocalCliffordFrame::phase_site() {
    return Site{{PauliLetter::Y, false}, {PauliLetter::Z, false}};
}

std::vector<LocalCliffordFrame::Site> LocalCliffordFrame::all_sites() {
    std::vector<Site> out;
    for (PauliLetter lx : {PauliLetter::X, PauliLetter::Y, PauliLetter::Z}) {
        for (PauliLetter lz : {PauliLetter::X, PauliLetter::Y, PauliLetter::Z}) {
            if (lx == lz) {
                continue;
            }
            for (int sx = 0; sx < 2; ++sx) {
                for (int sz = 0; sz < 2; ++sz) {
                    out.push_back(Site{{lx, sx != 0}, {lz, sz != 0}});
                }
            }
        }
    }
    return out;
}

PauliElement conjugate(const LocalCliffordFrame& frame, const PauliElement& p) {
    if (frame.n() != p.n()) {
        throw std::invalid_argument("frame and element lengths differ");
    }
    PauliElement out = PauliElement::identity(p.n()).with_phase(p.phase_exp());
    for (uint32_t q = 0; q < p.n(); ++q) {
        const PauliLetter letter = p.letter(q);
        if (letter == PauliLetter::I) {
            continue;
        }
        const auto& site = frame.site(q);
        PauliElement image = PauliElement::single(1, 0, site.x_image.letter,
                                                  site.x_image.negative ? 2 : 0);
        const PauliElement zimg = PauliElement::single(1, 0, site.z_image.letter,
                                                       site.z_image.negative ? 2 : 0);
        if (letter == PauliLetter::Z) {
            image = zimg;
        } else if (letter == PauliLetter::Y) {
            const PauliElement prod = image * zimg;  // Y = iXZ
            image = prod.with_phase(uint8_t(prod.phase_exp() + 1));
        }
        out = out * PauliElement::single(p.n(), q, image.letter(0), image.phase_exp());
    }
    return out;
}

}  // namespace avn
