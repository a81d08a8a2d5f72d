#include "dcx/complex.hpp"

#include <algorithm>
#include <stdexcept>

namespace dcx {

std::vector<std::string> validate_complex(const DataComplexGen& complex) {
    std::vector<std::string> out;
    if (complex.generators.empty()) out.push_back("generator set is empty");
    for (size_t i = 0; i < complex.generators.size(); ++i)
        for (const auto& msg : validate_table(complex.schema, complex.generators[i]))
            out.push_back("generator " + std::to_string(i) + ": " + msg);
    return out;
}

namespace {

std::vector<std::vector<size_t>> all_position_permutations(size_t n) {
    std::vector<size_t> sigma(n);
    for (size_t i = 0; i < n; ++i) sigma[i] = i;
    std::vector<std::vector<size_t>> out;
    do {
        out.push_back(sigma);
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return out;
}

void close_under_permutation(std::set<DataTable>& tables) {
    std::set<DataTable> extra;
    for (const auto& t : tables)
        if (t.list.size() > 8)
            throw std::invalid_argument("permutation closure over a list of length " +
                                        std::to_string(t.list.size()) + " is too large");
    for (const auto& t : tables)
        for (const auto& sigma : all_position_permutations(t.list.size())) {
            DataTable p = permute(t, sigma);
            if (!tables.count(p)) extra.insert(std::move(p));
        }
    tables.insert(extra.begin(), extra.end());
}

}  // namespace

std::set<DataTable> closure_up_to(const DataComplexGen& complex, int max_len) {
    if (max_len < 0) throw std::invalid_argument("closure_up_to requires max_len >= 0");

    // Every composite of faces and degeneracies normalizes to
    // degeneracies-after-faces, so reductions first, then degeneracies,
    // then permutations, misses nothing.
    std::set<DataTable> seeds(complex.generators.begin(), complex.generators.end());
    if (complex.closed_under_permutation) close_under_permutation(seeds);

    std::set<DataTable> reduced;
    for (const auto& g : seeds)
        for (const auto& inc : enumerate_subinclusions(g.list)) reduced.insert(reduce(g, inc));

    std::set<DataTable> out;
    std::vector<DataTable> frontier;
    for (const auto& t : reduced)
        if (static_cast<int>(t.list.size()) <= max_len) {
            out.insert(t);
            frontier.push_back(t);
        }
    while (!frontier.empty()) {
        DataTable t = std::move(frontier.back());
        frontier.pop_back();
        if (static_cast<int>(t.list.size()) + 1 > max_len) continue;
        for (size_t i = 0; i < t.list.size(); ++i) {
            DataTable d = diagonal(t, i);
            if (out.insert(d).second) frontier.push_back(std::move(d));
        }
    }
    if (complex.closed_under_permutation) close_under_permutation(out);
    return out;
}

std::string AlignmentFailure::describe() const {
    return "reductions disagree over " + list_to_string(left_inclusion.source) + ": " +
           list_to_string(left.list) + " vs " + list_to_string(right.list);
}

std::optional<AlignmentFailure> is_well_aligned(const DataComplexGen& complex, int max_len) {
    std::vector<DataTable> tables;
    for (auto& t : closure_up_to(complex, max_len)) tables.push_back(t);
    for (size_t i = 0; i < tables.size(); ++i) {
        auto subs = enumerate_subinclusions(tables[i].list);
        for (size_t j = i; j < tables.size(); ++j) {
            for (const auto& inc1 : subs) {
                DataTable r1 = reduce(tables[i], inc1);
                for (const auto& inc2 : enumerate_inclusions(inc1.source, tables[j].list)) {
                    if (i == j && inc1.index_map == inc2.index_map) continue;
                    DataTable r2 = reduce(tables[j], inc2);
                    if (r1 != r2) return AlignmentFailure{tables[i], tables[j], inc1, inc2};
                }
            }
        }
    }
    return std::nullopt;
}

ConnectivityReport is_path_connected(const DataComplexGen& complex) {
    ConnectivityReport report;
    size_t n = complex.generators.size();
    if (n == 0) {
        report.connected = false;
        return report;
    }

    // Single-attribute overlaps decide adjacency: a matching reduction over a
    // longer list restricts to a matching one over each of its entries.
    auto linked = [&](const DataTable& a, const DataTable& b) {
        for (size_t p = 0; p < a.list.size(); ++p)
            for (size_t q = 0; q < b.list.size(); ++q) {
                if (a.list[p] != b.list[q]) continue;
                AttributeInclusion ia{{a.list[p]}, a.list, {p}};
                AttributeInclusion ib{{b.list[q]}, b.list, {q}};
                if (reduce(a, ia) == reduce(b, ib)) return true;
            }
        return false;
    };

    std::vector<size_t> comp(n, n);
    size_t ncomp = 0;
    for (size_t i = 0; i < n; ++i) {
        if (comp[i] != n) continue;
        std::vector<size_t> stack{i};
        comp[i] = ncomp;
        while (!stack.empty()) {
            size_t u = stack.back();
            stack.pop_back();
            for (size_t v = 0; v < n; ++v)
                if (comp[v] == n && linked(complex.generators[u], complex.generators[v])) {
                    comp[v] = ncomp;
                    stack.push_back(v);
                }
        }
        ++ncomp;
    }
    report.components.resize(ncomp);
    for (size_t i = 0; i < n; ++i) report.components[comp[i]].push_back(i);
    report.connected = (ncomp == 1);
    return report;
}

}  // namespace dcx
