#include "dcx/chains.hpp"

#include <map>
#include <stdexcept>

namespace dcx {

size_t Chain2::level_length() const {
    if (cells.empty()) throw std::logic_error("level of an empty chain is undefined");
    size_t len = cells.begin()->size();
    for (const auto& c : cells)
        if (c.size() != len) throw std::logic_error("chain mixes grading levels");
    return len;
}

void Chain2::toggle(const AttributeList& cell) {
    auto it = cells.find(cell);
    if (it == cells.end())
        cells.insert(cell);
    else
        cells.erase(it);
}

Chain2 boundary_chain(const Chain2& chain) {
    Chain2 out;
    if (chain.empty()) return out;
    if (chain.level_length() == 0)
        throw std::invalid_argument("boundary of a level -1 chain is undefined");
    for (const auto& cell : chain.cells)
        for (size_t i = 0; i < cell.size(); ++i) out.toggle(face_list(cell, i));
    return out;
}

namespace {

// Rank of a GF(2) matrix given as bitset rows.
size_t gf2_rank(std::vector<std::vector<bool>> rows) {
    size_t rank = 0;
    size_t cols = rows.empty() ? 0 : rows[0].size();
    for (size_t c = 0; c < cols && rank < rows.size(); ++c) {
        size_t pivot = rank;
        while (pivot < rows.size() && !rows[pivot][c]) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[rank], rows[pivot]);
        for (size_t r = 0; r < rows.size(); ++r)
            if (r != rank && rows[r][c])
                for (size_t cc = c; cc < cols; ++cc)
                    rows[r][cc] = rows[r][cc] != rows[rank][cc];
        ++rank;
    }
    return rank;
}

// Matrix of the normalized boundary from level k to level k-1 (rows = k-cells).
std::vector<std::vector<bool>> boundary_matrix(const std::vector<AttributeList>& from_cells,
                                               const std::map<AttributeList, size_t>& to_index) {
    std::vector<std::vector<bool>> rows;
    rows.reserve(from_cells.size());
    for (const auto& cell : from_cells) {
        std::vector<bool> row(to_index.size(), false);
        for (size_t i = 0; i < cell.size(); ++i) {
            AttributeList f = face_list(cell, i);
            if (is_degenerate_cell(f)) continue;  // normalized complex: degenerate faces vanish
            auto it = to_index.find(f);
            if (it != to_index.end()) row[it->second] = !row[it->second];
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

size_t homology_rank(const std::set<AttributeList>& complex_cells, size_t k) {
    // Face closure check (faces of 0-cells land at level -1 and are exempt).
    for (const auto& cell : complex_cells)
        for (size_t i = 0; cell.size() >= 2 && i < cell.size(); ++i)
            if (!complex_cells.count(face_list(cell, i)))
                throw std::invalid_argument("complex is not closed under faces (missing " +
                                            list_to_string(face_list(cell, i)) + ")");

    std::vector<AttributeList> cells_k, cells_k1;
    std::map<AttributeList, size_t> index_km1, index_k;
    for (const auto& cell : complex_cells) {
        if (is_degenerate_cell(cell)) continue;
        if (cell.size() == k + 1) {
            index_k[cell] = 0;
            cells_k.push_back(cell);
        } else if (cell.size() == k + 2) {
            cells_k1.push_back(cell);
        } else if (k >= 1 && cell.size() == k) {
            index_km1[cell] = 0;
        }
    }
    size_t j = 0;
    for (auto& [cell, idx] : index_km1) idx = j++;
    j = 0;
    for (auto& [cell, idx] : index_k) idx = j++;

    size_t dim_k = cells_k.size();
    if (dim_k == 0) return 0;

    // ker dim of d_k (d_0 on 0-cells is zero in the non-augmented complex).
    size_t rank_dk = 0;
    if (k >= 1) rank_dk = gf2_rank(boundary_matrix(cells_k, index_km1));
    size_t kernel = dim_k - rank_dk;

    size_t rank_dk1 = gf2_rank(boundary_matrix(cells_k1, index_k));
    return kernel - rank_dk1;
}

}  // namespace dcx
