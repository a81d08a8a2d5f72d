#include "dcx/attr_list.hpp"

#include <algorithm>
#include <stdexcept>

namespace dcx {

AttributeInclusion AttributeInclusion::identity(const AttributeList& list) {
    AttributeInclusion inc;
    inc.source = list;
    inc.target = list;
    inc.index_map.resize(list.size());
    for (size_t i = 0; i < list.size(); ++i) inc.index_map[i] = i;
    return inc;
}

bool validate_inclusion(const AttributeInclusion& inc) {
    if (inc.index_map.size() != inc.source.size()) return false;
    for (size_t i = 0; i < inc.index_map.size(); ++i) {
        if (inc.index_map[i] >= inc.target.size()) return false;
        if (i > 0 && inc.index_map[i] <= inc.index_map[i - 1]) return false;  // order-preserving, one-to-one
        if (inc.source[i] != inc.target[inc.index_map[i]]) return false;      // compatible
    }
    return true;
}

void require_valid_inclusion(const AttributeInclusion& inc, const char* what) {
    if (!validate_inclusion(inc))
        throw std::invalid_argument(std::string("invalid attribute inclusion: ") + what);
}

AttributeList face_list(const AttributeList& list, size_t i) {
    if (list.empty()) throw std::out_of_range("face of the empty attribute list");
    if (i >= list.size()) throw std::out_of_range("face index out of range");
    AttributeList out = list;
    out.erase(out.begin() + static_cast<std::ptrdiff_t>(i));
    return out;
}

AttributeList degeneracy_list(const AttributeList& list, size_t i) {
    if (i >= list.size()) throw std::out_of_range("degeneracy index out of range");
    AttributeList out = list;
    out.insert(out.begin() + static_cast<std::ptrdiff_t>(i), list[i]);
    return out;
}

QuotientResult quotient(const AttributeInclusion& inc) {
    require_valid_inclusion(inc, "quotient");
    QuotientResult out;
    out.complement.target = inc.target;
    size_t next = 0;
    for (size_t i = 0; i < inc.target.size(); ++i) {
        if (next < inc.index_map.size() && inc.index_map[next] == i) {
            ++next;
            continue;
        }
        out.quotient.push_back(inc.target[i]);
        out.complement.index_map.push_back(i);
    }
    out.complement.source = out.quotient;
    return out;
}

SumResult concat_sum(const AttributeList& t1, const AttributeList& t2) {
    SumResult out;
    out.sum = t1;
    out.sum.insert(out.sum.end(), t2.begin(), t2.end());
    out.left.source = t1;
    out.left.target = out.sum;
    out.right.source = t2;
    out.right.target = out.sum;
    for (size_t i = 0; i < t1.size(); ++i) out.left.index_map.push_back(i);
    for (size_t i = 0; i < t2.size(); ++i) out.right.index_map.push_back(t1.size() + i);
    return out;
}

MergeResult merge_lists(const AttributeInclusion& iota01, const AttributeInclusion& iota02) {
    require_valid_inclusion(iota01, "merge iota01");
    require_valid_inclusion(iota02, "merge iota02");
    if (iota01.source != iota02.source)
        throw std::invalid_argument("merge requires a common overlap list");

    const AttributeList& t01 = iota01.target;
    const AttributeList& t02 = iota02.target;
    const size_t overlap = iota01.source.size();

    MergeResult out;
    out.mu01.source = t01;
    out.mu02.source = t02;
    out.iota0.source = iota01.source;
    out.mu01.index_map.resize(t01.size());
    out.mu02.index_map.resize(t02.size());
    out.iota0.index_map.resize(overlap);

    // Splice: for each gap (before, between, after anchors) emit the T01
    // segment, then the T02 segment, then the anchor itself.
    size_t p01 = 0, p02 = 0;
    for (size_t g = 0; g <= overlap; ++g) {
        size_t stop01 = (g < overlap) ? iota01.index_map[g] : t01.size();
        size_t stop02 = (g < overlap) ? iota02.index_map[g] : t02.size();
        for (; p01 < stop01; ++p01) {
            out.mu01.index_map[p01] = out.merged.size();
            out.merged.push_back(t01[p01]);
        }
        for (; p02 < stop02; ++p02) {
            out.mu02.index_map[p02] = out.merged.size();
            out.merged.push_back(t02[p02]);
        }
        if (g < overlap) {
            size_t pos = out.merged.size();
            out.mu01.index_map[p01++] = pos;
            out.mu02.index_map[p02++] = pos;
            out.iota0.index_map[g] = pos;
            out.merged.push_back(iota01.source[g]);
        }
    }
    out.mu01.target = out.merged;
    out.mu02.target = out.merged;
    out.iota0.target = out.merged;

    // iota1 and iota2 are the complements carried into the merged list.
    QuotientResult q1 = quotient(iota01);
    QuotientResult q2 = quotient(iota02);
    out.iota1.source = q1.quotient;
    out.iota1.target = out.merged;
    for (size_t i : q1.complement.index_map) out.iota1.index_map.push_back(out.mu01.index_map[i]);
    out.iota2.source = q2.quotient;
    out.iota2.target = out.merged;
    for (size_t i : q2.complement.index_map) out.iota2.index_map.push_back(out.mu02.index_map[i]);
    return out;
}

std::vector<size_t> inclusion_to_faces(const AttributeInclusion& inc) {
    // Ascending complement indices; apply them last-index-first.
    return quotient(inc).complement.index_map;
}

namespace {

void enumerate_rec(const AttributeList& source, const AttributeList& target, size_t si,
                   size_t from, std::vector<size_t>& acc,
                   std::vector<AttributeInclusion>& out) {
    if (si == source.size()) {
        AttributeInclusion inc;
        inc.source = source;
        inc.target = target;
        inc.index_map = acc;
        out.push_back(std::move(inc));
        return;
    }
    // Prune positions that leave too little room for the rest of the source.
    for (size_t t = from; t + (source.size() - si) <= target.size(); ++t) {
        if (target[t] != source[si]) continue;
        acc.push_back(t);
        enumerate_rec(source, target, si + 1, t + 1, acc, out);
        acc.pop_back();
    }
}

}  // namespace

std::vector<AttributeInclusion> enumerate_inclusions(const AttributeList& source,
                                                     const AttributeList& target) {
    std::vector<AttributeInclusion> out;
    if (source.size() > target.size()) return out;
    std::vector<size_t> acc;
    enumerate_rec(source, target, 0, 0, acc, out);
    return out;
}

std::vector<AttributeInclusion> enumerate_subinclusions(const AttributeList& list) {
    std::vector<AttributeInclusion> out;
    size_t n = list.size();
    if (n > 20) throw std::invalid_argument("attribute list too long to enumerate sublists");
    for (size_t mask = 0; mask < (size_t{1} << n); ++mask) {
        AttributeInclusion inc;
        inc.target = list;
        for (size_t i = 0; i < n; ++i)
            if (mask & (size_t{1} << i)) {
                inc.source.push_back(list[i]);
                inc.index_map.push_back(i);
            }
        out.push_back(std::move(inc));
    }
    return out;
}

bool is_permutation_of_positions(const std::vector<size_t>& sigma, size_t n) {
    if (sigma.size() != n) return false;
    std::vector<bool> seen(n, false);
    for (size_t v : sigma) {
        if (v >= n || seen[v]) return false;
        seen[v] = true;
    }
    return true;
}

AttributeList permute_list(const AttributeList& list, const std::vector<size_t>& sigma) {
    if (!is_permutation_of_positions(sigma, list.size()))
        throw std::invalid_argument("not a permutation of positions");
    AttributeList out(list.size());
    for (size_t i = 0; i < list.size(); ++i) out[i] = list[sigma[i]];
    return out;
}

bool is_nondegenerate(const AttributeList& list) {
    for (size_t i = 0; i < list.size(); ++i)
        for (size_t j = i + 1; j < list.size(); ++j)
            if (list[i] == list[j]) return false;
    return true;
}

bool is_degenerate_cell(const AttributeList& list) {
    for (size_t i = 0; i + 1 < list.size(); ++i)
        if (list[i] == list[i + 1]) return true;
    return false;
}

std::string list_to_string(const AttributeList& list) {
    std::string s = "[";
    for (size_t i = 0; i < list.size(); ++i) {
        if (i) s += ",";
        s += list[i];
    }
    s += "]";
    return s;
}

}  // namespace dcx
