#include "dcx/table.hpp"

#include <stdexcept>

namespace dcx {

void DataTable::add_mass(const Tuple& tuple, const Rational& mass) {
    if (tuple.size() != list.size())
        throw std::invalid_argument("atom arity does not match attribute list");
    auto it = atoms.find(tuple);
    if (it == atoms.end()) {
        if (mass < 0) throw std::invalid_argument("negative mass in data table");
        if (mass > 0) atoms.emplace(tuple, mass);
        return;
    }
    it->second += mass;
    if (it->second == 0)
        atoms.erase(it);
    else if (it->second < 0)
        throw std::invalid_argument("negative mass in data table");
}

Rational DataTable::mass_at(const Tuple& tuple) const {
    auto it = atoms.find(tuple);
    return it == atoms.end() ? Rational(0) : it->second;
}

bool DataTable::operator<(const DataTable& other) const {
    if (list != other.list) return list < other.list;
    return atoms < other.atoms;
}

void SignedTable::add_mass(const Tuple& tuple, const Rational& mass) {
    if (tuple.size() != list.size())
        throw std::invalid_argument("atom arity does not match attribute list");
    auto it = atoms.find(tuple);
    if (it == atoms.end()) {
        if (mass != 0) atoms.emplace(tuple, mass);
        return;
    }
    it->second += mass;
    if (it->second == 0) atoms.erase(it);
}

Rational SignedTable::mass_at(const Tuple& tuple) const {
    auto it = atoms.find(tuple);
    return it == atoms.end() ? Rational(0) : it->second;
}

Rational total_mass(const DataTable& table) {
    Rational sum = 0;
    for (const auto& [tuple, mass] : table.atoms) sum += mass;
    return sum;
}

Rational total_mass(const SignedTable& table) {
    Rational sum = 0;
    for (const auto& [tuple, mass] : table.atoms) sum += mass;
    return sum;
}

namespace {

Tuple drop_position(const Tuple& tuple, size_t i) {
    Tuple out = tuple;
    out.erase(out.begin() + static_cast<std::ptrdiff_t>(i));
    return out;
}

}  // namespace

DataTable marginalize(const DataTable& table, size_t i) {
    if (i >= table.list.size()) throw std::out_of_range("face index out of range");
    DataTable out;
    out.list = face_list(table.list, i);
    for (const auto& [tuple, mass] : table.atoms) out.add_mass(drop_position(tuple, i), mass);
    return out;
}

SignedTable marginalize(const SignedTable& table, size_t i) {
    if (i >= table.list.size()) throw std::out_of_range("face index out of range");
    SignedTable out;
    out.list = face_list(table.list, i);
    for (const auto& [tuple, mass] : table.atoms) out.add_mass(drop_position(tuple, i), mass);
    return out;
}

DataTable diagonal(const DataTable& table, size_t i) {
    if (i >= table.list.size()) throw std::out_of_range("degeneracy index out of range");
    DataTable out;
    out.list = degeneracy_list(table.list, i);
    for (const auto& [tuple, mass] : table.atoms) {
        Tuple t = tuple;
        t.insert(t.begin() + static_cast<std::ptrdiff_t>(i), tuple[i]);
        out.add_mass(t, mass);
    }
    return out;
}

DataTable reduce(const DataTable& table, const AttributeInclusion& inc) {
    require_valid_inclusion(inc, "reduce");
    if (inc.target != table.list)
        throw std::invalid_argument("reduction inclusion does not target the table's list");
    DataTable out;
    out.list = inc.source;
    for (const auto& [tuple, mass] : table.atoms) {
        Tuple proj(inc.index_map.size());
        for (size_t i = 0; i < inc.index_map.size(); ++i) proj[i] = tuple[inc.index_map[i]];
        out.add_mass(proj, mass);
    }
    return out;
}

DataTable permute(const DataTable& table, const std::vector<size_t>& sigma) {
    DataTable out;
    out.list = permute_list(table.list, sigma);
    for (const auto& [tuple, mass] : table.atoms) {
        Tuple t(tuple.size());
        for (size_t i = 0; i < tuple.size(); ++i) t[i] = tuple[sigma[i]];
        out.add_mass(t, mass);
    }
    return out;
}

DataTable independent_product(const DataTable& t1, const DataTable& t2) {
    Rational m1 = total_mass(t1), m2 = total_mass(t2);
    if (m1 != m2) throw std::invalid_argument("independent product requires equal total masses");
    if (m1 == 0) throw std::invalid_argument("independent product of zero-mass tables");
    DataTable out;
    out.list = concat_sum(t1.list, t2.list).sum;
    for (const auto& [u, mu] : t1.atoms)
        for (const auto& [v, mv] : t2.atoms) {
            Tuple t = u;
            t.insert(t.end(), v.begin(), v.end());
            out.add_mass(t, mu * mv / m1);
        }
    return out;
}

std::vector<std::string> validate_table(const Schema& schema, const DataTable& table) {
    std::vector<std::string> out;
    for (const auto& name : table.list)
        if (!schema.find_attribute(name)) out.push_back("unknown attribute '" + name + "'");
    if (!out.empty()) return out;
    for (const auto& [tuple, mass] : table.atoms) {
        if (tuple.size() != table.list.size()) {
            out.push_back("atom arity mismatch");
            continue;
        }
        for (size_t i = 0; i < tuple.size(); ++i) {
            const ValueSpace& vs = schema.space_of(table.list[i]);
            if (vs.index_of(tuple[i]) < 0)
                out.push_back("label '" + tuple[i] + "' not in space '" + vs.id + "' (position " +
                              std::to_string(i) + ")");
        }
        if (mass <= 0) out.push_back("non-positive atom mass");
    }
    return out;
}

void TableChain2::toggle(const DataTable& cell) {
    auto it = cells.find(cell);
    if (it == cells.end())
        cells.insert(cell);
    else
        cells.erase(it);
}

TableChain2 boundary_table_chain(const TableChain2& chain) {
    TableChain2 out;
    if (chain.empty()) return out;
    for (const auto& cell : chain.cells) {
        if (cell.list.empty())
            throw std::invalid_argument("boundary of a level -1 table chain is undefined");
        for (size_t i = 0; i < cell.list.size(); ++i) out.toggle(marginalize(cell, i));
    }
    return out;
}

Chain2 project_chain(const TableChain2& chain) {
    Chain2 out;
    for (const auto& cell : chain.cells) out.toggle(cell.list);
    return out;
}

std::vector<Tuple> enumerate_value_tuples(const Schema& schema, const AttributeList& list,
                                          size_t limit) {
    std::vector<const ValueSpace*> spaces;
    size_t count = 1;
    for (const auto& name : list) {
        spaces.push_back(&schema.space_of(name));
        count *= spaces.back()->size();
        if (count > limit)
            throw std::runtime_error("product value space exceeds " + std::to_string(limit) +
                                     " tuples");
    }
    std::vector<Tuple> out;
    out.reserve(count);
    Tuple current(list.size());
    // Odometer over point indices.
    std::vector<size_t> idx(list.size(), 0);
    for (size_t k = 0; k < count; ++k) {
        for (size_t i = 0; i < list.size(); ++i) current[i] = spaces[i]->points[idx[i]];
        out.push_back(current);
        for (size_t i = list.size(); i-- > 0;) {
            if (++idx[i] < spaces[i]->size()) break;
            idx[i] = 0;
        }
    }
    return out;
}

}  // namespace dcx
