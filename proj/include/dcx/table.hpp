#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "dcx/attr_list.hpp"
#include "dcx/chains.hpp"
#include "dcx/schema.hpp"

namespace dcx {

using Tuple = std::vector<std::string>;

// A data table: an attribute list plus a sparse finite measure on the
// product of its value spaces. Atoms are kept in canonical sorted order and
// zero atoms are dropped, so equality of tables is structural equality.
struct DataTable {
    AttributeList list;
    std::map<Tuple, Rational> atoms;  // masses strictly positive

    // Adds mass at a tuple, erasing the atom when the sum reaches zero.
    // Throws when the accumulated mass would become negative.
    void add_mass(const Tuple& tuple, const Rational& mass);
    Rational mass_at(const Tuple& tuple) const;
    bool operator==(const DataTable& other) const = default;
    bool operator<(const DataTable& other) const;
};

// Same shape with arbitrary-sign masses; transient use inside fillers.
struct SignedTable {
    AttributeList list;
    std::map<Tuple, Rational> atoms;  // nonzero masses, any sign

    void add_mass(const Tuple& tuple, const Rational& mass);
    Rational mass_at(const Tuple& tuple) const;
};

Rational total_mass(const DataTable& table);
Rational total_mass(const SignedTable& table);

// Face map d_i: marginalize out position i. Total mass is preserved.
DataTable marginalize(const DataTable& table, size_t i);
SignedTable marginalize(const SignedTable& table, size_t i);

// Degeneracy map s_i: duplicate position i on the diagonal.
DataTable diagonal(const DataTable& table, size_t i);

// Reduction along an inclusion into table.list: marginalize away everything
// outside the image. Equals the composite of face maps over the complement.
DataTable reduce(const DataTable& table, const AttributeInclusion& inc);

// Reindex positions by sigma: entry i of the result is entry sigma[i] of the input.
DataTable permute(const DataTable& table, const std::vector<size_t>& sigma);

// (T1 (+) T2, tau1 tau2 / M) for equal total masses M > 0.
DataTable independent_product(const DataTable& t1, const DataTable& t2);

// Checks tuples against the schema; returns problems, empty when valid.
std::vector<std::string> validate_table(const Schema& schema, const DataTable& table);

// A Z/2 chain of data tables of one grading level (set semantics).
struct TableChain2 {
    std::set<DataTable> cells;

    bool empty() const { return cells.empty(); }
    void toggle(const DataTable& cell);
};

// Boundary: all faces of all cells, cancelling mod 2.
TableChain2 boundary_table_chain(const TableChain2& chain);

// Projection p to attribute lists, extended Z/2-linearly (so two tables over
// the same list cancel).
Chain2 project_chain(const TableChain2& chain);

// Enumerates every tuple of the product value space of `list` in
// lexicographic point order. Sizes multiply; guarded by `limit`.
std::vector<Tuple> enumerate_value_tuples(const Schema& schema, const AttributeList& list,
                                          size_t limit);

}  // namespace dcx
