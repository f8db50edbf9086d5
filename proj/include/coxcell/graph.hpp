#ifndef COXCELL_GRAPH_HPP
#define COXCELL_GRAPH_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "coxcell/errors.hpp"
#include "coxcell/linalg.hpp"
#include "coxcell/scalar.hpp"

namespace coxcell {

// A Coxeter graph: generator names plus the symmetric label matrix. The label
// kInfiniteLabel stands for m = infinity.
class CoxeterGraph {
  public:
    CoxeterGraph() = default;
    CoxeterGraph(std::vector<std::string> generators, std::vector<std::vector<int>> m)
        : generators_(std::move(generators)), m_(std::move(m)) {
        validate();
    }

    static CoxeterGraph from_json(const nlohmann::json& j) {
        if (!j.is_object() || !j.contains("generators") || !j.contains("m"))
            throw SchemaError("expected an object with 'generators' and 'm'");
        if (!j["generators"].is_array() || !j["m"].is_array())
            throw SchemaError("'generators' and 'm' must be arrays");
        std::vector<std::string> gens;
        for (const auto& g : j["generators"]) {
            if (!g.is_string()) throw SchemaError("generator names must be strings");
            gens.push_back(g.get<std::string>());
        }
        std::vector<std::vector<int>> m;
        for (const auto& row : j["m"]) {
            if (!row.is_array() || row.size() != gens.size())
                throw SchemaError("'m' must be a square matrix matching 'generators'");
            std::vector<int> r;
            for (const auto& e : row) {
                if (e.is_string()) {
                    if (e.get<std::string>() != "inf")
                        throw SchemaError("matrix entries must be integers or \"inf\"");
                    r.push_back(kInfiniteLabel);
                } else if (e.is_number_integer()) {
                    r.push_back(e.get<int>());
                } else {
                    throw SchemaError("matrix entries must be integers or \"inf\"");
                }
            }
            m.push_back(std::move(r));
        }
        if (m.size() != gens.size()) throw SchemaError("'m' must have one row per generator");
        return CoxeterGraph(std::move(gens), std::move(m));
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["generators"] = generators_;
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& row : m_) {
            nlohmann::json r = nlohmann::json::array();
            for (int v : row) {
                if (v == kInfiniteLabel)
                    r.push_back("inf");
                else
                    r.push_back(v);
            }
            rows.push_back(r);
        }
        j["m"] = rows;
        return j;
    }

    size_t rank() const { return generators_.size(); }
    const std::vector<std::string>& generators() const { return generators_; }
    int label(size_t s, size_t t) const { return m_[s][t]; }
    bool labels_exactly_representable() const {
        for (size_t s = 0; s < rank(); ++s)
            for (size_t t = s + 1; t < rank(); ++t)
                if (!ExactScalar::supports_label(m_[s][t])) return false;
        return true;
    }

    CoxeterGraph full_subgraph(const std::vector<size_t>& vertices) const {
        std::vector<std::string> gens;
        std::vector<std::vector<int>> m(vertices.size(), std::vector<int>(vertices.size()));
        for (size_t i = 0; i < vertices.size(); ++i) {
            gens.push_back(generators_[vertices[i]]);
            for (size_t j = 0; j < vertices.size(); ++j) m[i][j] = m_[vertices[i]][vertices[j]];
        }
        return CoxeterGraph(std::move(gens), std::move(m));
    }

    std::vector<std::vector<size_t>> connected_components() const {
        std::vector<int> comp(rank(), -1);
        std::vector<std::vector<size_t>> out;
        for (size_t s = 0; s < rank(); ++s) {
            if (comp[s] >= 0) continue;
            std::vector<size_t> stack{s}, verts;
            comp[s] = int(out.size());
            while (!stack.empty()) {
                size_t v = stack.back();
                stack.pop_back();
                verts.push_back(v);
                for (size_t t = 0; t < rank(); ++t)
                    if (comp[t] < 0 && (m_[v][t] >= 3 || m_[v][t] == kInfiniteLabel)) {
                        comp[t] = int(out.size());
                        stack.push_back(t);
                    }
            }
            std::sort(verts.begin(), verts.end());
            out.push_back(std::move(verts));
        }
        return out;
    }

    friend bool operator==(const CoxeterGraph& a, const CoxeterGraph& b) {
        return a.generators_ == b.generators_ && a.m_ == b.m_;
    }

  private:
    std::vector<std::string> generators_;
    std::vector<std::vector<int>> m_;

    void validate() const {
        for (size_t i = 0; i < rank(); ++i)
            for (size_t j = i + 1; j < rank(); ++j)
                if (generators_[i] == generators_[j])
                    throw SchemaError("duplicate generator name '" + generators_[i] + "'");
        for (size_t s = 0; s < rank(); ++s) {
            if (m_[s].size() != rank()) throw SchemaError("'m' is not square");
            if (m_[s][s] != 1) throw LabelError("m[s][s] must be 1");
            for (size_t t = 0; t < rank(); ++t) {
                if (m_[s][t] != m_[t][s]) throw LabelError("'m' must be symmetric");
                if (s != t && m_[s][t] != kInfiniteLabel && m_[s][t] < 2)
                    throw LabelError("off-diagonal labels must be >= 2 or \"inf\"");
            }
        }
    }
};

// Canonical bilinear form B[s][t] = -cos(pi / m[s][t]); diagonal 1.
template <class S>
Mat<S> gram_form(const CoxeterGraph& g) {
    size_t n = g.rank();
    Mat<S> b(n, n);
    for (size_t s = 0; s < n; ++s)
        for (size_t t = 0; t < n; ++t)
            b(s, t) = (s == t) ? S(1) : -S::cos_pi_over(g.label(s, t));
    return b;
}

enum class TypeKind { Spherical, Affine, Other };

inline std::string type_kind_name(TypeKind k) {
    switch (k) {
        case TypeKind::Spherical: return "spherical";
        case TypeKind::Affine: return "affine";
        default: return "other";
    }
}

struct Component {
    std::vector<size_t> vertices;
    std::string label;
    TypeKind kind;
};

struct TypeClass {
    TypeKind kind;
    std::vector<Component> components;
};

namespace detail {

inline bool vec_lex_path_less(const std::vector<int>& a, const std::vector<int>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// Name an irreducible diagram. Labels are cosmetic; the authoritative
// spherical/affine decision is the definiteness of the form.
inline std::string component_label(const CoxeterGraph& g, const std::vector<size_t>& verts) {
    size_t n = verts.size();
    auto m = [&](size_t i, size_t j) { return g.label(verts[i], verts[j]); };
    auto connected = [&](size_t i, size_t j) {
        return m(i, j) >= 3 || m(i, j) == kInfiniteLabel;
    };
    if (n == 1) return "A1";
    if (n == 2) {
        int lab = m(0, 1);
        if (lab == 3) return "A2";
        if (lab == 4) return "B2";
        if (lab == 6) return "G2";
        if (lab == kInfiniteLabel) return "A1~";
        return "I2(" + std::to_string(lab) + ")";
    }
    std::vector<std::vector<size_t>> adj(n);
    size_t edges = 0;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (connected(i, j)) {
                adj[i].push_back(j);
                adj[j].push_back(i);
                ++edges;
            }
    for (size_t i = 0; i < n; ++i)
        for (size_t j : adj[i])
            if (m(i, j) == kInfiniteLabel) return "unknown";

    auto degree = [&](size_t i) { return adj[i].size(); };
    size_t maxdeg = 0, branch = n;
    size_t nbranch = 0;
    for (size_t i = 0; i < n; ++i) {
        maxdeg = std::max(maxdeg, degree(i));
        if (degree(i) >= 3) {
            ++nbranch;
            branch = i;
        }
    }

    if (edges == n && maxdeg == 2) {
        for (size_t i = 0; i < n; ++i)
            for (size_t j : adj[i])
                if (m(i, j) != 3) return "unknown";
        return "A" + std::to_string(n - 1) + "~";
    }
    if (edges != n - 1) return "unknown"; // not a tree

    if (maxdeg == 2) {
        // A path: read edge labels end to end.
        size_t start = n;
        for (size_t i = 0; i < n; ++i)
            if (degree(i) == 1) { start = i; break; }
        std::vector<int> labels;
        size_t prev = n, cur = start;
        while (true) {
            size_t next = n;
            for (size_t j : adj[cur])
                if (j != prev) next = j;
            if (next == n) break;
            labels.push_back(m(cur, next));
            prev = cur;
            cur = next;
        }
        std::vector<int> rev(labels.rbegin(), labels.rend());
        if (vec_lex_path_less(rev, labels)) labels = rev;
        auto count_not3 = std::count_if(labels.begin(), labels.end(), [](int x) { return x != 3; });
        if (count_not3 == 0) return "A" + std::to_string(n);
        if (count_not3 == 1) {
            size_t pos = 0;
            while (labels[pos] == 3) ++pos;
            int lab = labels[pos];
            bool at_end = pos == 0 || pos == labels.size() - 1;
            if (lab == 4 && at_end) return "B" + std::to_string(n);
            if (lab == 4 && n == 4 && pos == 1) return "F4";
            if (lab == 4 && n == 5 && (pos == 1 || pos == 2)) return "F4~";
            if (lab == 5 && at_end && n == 3) return "H3";
            if (lab == 5 && at_end && n == 4) return "H4";
            if (lab == 6 && at_end && n == 3) return "G2~";
            return "unknown";
        }
        if (count_not3 == 2 && labels.front() == 4 && labels.back() == 4)
            return "C" + std::to_string(n - 1) + "~";
        return "unknown";
    }

    if (maxdeg == 4 && n == 5 && nbranch == 1) {
        for (size_t i = 0; i < n; ++i)
            for (size_t j : adj[i])
                if (m(i, j) != 3) return "unknown";
        return "D4~";
    }
    if (maxdeg > 3) return "unknown";

    if (nbranch == 1) {
        // One fork: measure the three leg lengths and find the lone non-3 label.
        std::vector<size_t> legs;
        int odd_label = 3;
        bool odd_at_far_end = false;
        for (size_t j0 : adj[branch]) {
            size_t len = 1, prev = branch, cur = j0;
            int lab = m(branch, j0) != 3 ? m(branch, j0) : 3;
            bool lab_at_end = false;
            while (degree(cur) == 2) {
                size_t next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
                if (m(cur, next) != 3) {
                    lab = m(cur, next);
                    lab_at_end = degree(next) == 1;
                }
                prev = cur;
                cur = next;
                ++len;
            }
            legs.push_back(len);
            if (lab != 3) {
                odd_label = lab;
                odd_at_far_end = lab_at_end;
            }
        }
        std::sort(legs.begin(), legs.end());
        if (odd_label == 3) {
            if (legs[0] == 1 && legs[1] == 1) return "D" + std::to_string(n);
            if (legs == std::vector<size_t>{1, 2, 2}) return "E6";
            if (legs == std::vector<size_t>{1, 2, 3}) return "E7";
            if (legs == std::vector<size_t>{1, 2, 4}) return "E8";
            if (legs == std::vector<size_t>{2, 2, 2}) return "E6~";
            if (legs == std::vector<size_t>{1, 3, 3}) return "E7~";
            if (legs == std::vector<size_t>{1, 2, 5}) return "E8~";
            return "unknown";
        }
        if (odd_label == 4 && legs[0] == 1 && legs[1] == 1 && odd_at_far_end)
            return "B" + std::to_string(n - 1) + "~";
        return "unknown";
    }
    if (nbranch == 2) {
        for (size_t i = 0; i < n; ++i)
            for (size_t j : adj[i])
                if (m(i, j) != 3) return "unknown";
        // Both forks must sit at the two ends of the spine.
        for (size_t i = 0; i < n; ++i)
            if (degree(i) == 3) {
                size_t leaves = 0;
                for (size_t j : adj[i])
                    if (degree(j) == 1) ++leaves;
                if (leaves < 2) return "unknown";
            }
        return "D" + std::to_string(n - 1) + "~";
    }
    return "unknown";
}

} // namespace detail

template <class S>
TypeKind definiteness_kind(const Mat<S>& gram) {
    switch (definiteness(gram)) {
        case Definiteness::PositiveDefinite: return TypeKind::Spherical;
        case Definiteness::PositiveSemidefinite: return TypeKind::Affine;
        default: return TypeKind::Other;
    }
}

// Spherical iff the form is positive definite, affine iff positive
// semidefinite and not definite. In exact mode the spherical branch is also
// cross-checked against the leading-principal-minor criterion.
template <class S>
TypeClass classify(const CoxeterGraph& g) {
    if constexpr (std::is_same_v<S, ExactScalar>) {
        if (!g.labels_exactly_representable())
            throw ArithmeticModeUnavailable("graph has a finite label outside {2,3,4,5,6}");
    }
    TypeClass tc;
    Mat<S> b = gram_form<S>(g);
    tc.kind = definiteness_kind(b);
    if constexpr (std::is_same_v<S, ExactScalar>) {
        bool all_pos = true;
        for (const auto& d : leading_principal_minors(b))
            if (!d.is_positive()) all_pos = false;
        if (all_pos != (tc.kind == TypeKind::Spherical))
            throw InternalInvariantViolation("minor test disagrees with pivot test");
    }
    for (const auto& verts : g.connected_components()) {
        CoxeterGraph sub = g.full_subgraph(verts);
        Component c;
        c.vertices = verts;
        c.kind = definiteness_kind(gram_form<S>(sub));
        c.label = detail::component_label(g, verts);
        tc.components.push_back(std::move(c));
    }
    return tc;
}

} // namespace coxcell

#endif
