#pragma once

#include <map>
#include <string>
#include <vector>

#include "dcx/rational.hpp"

namespace dcx {

// A finite labeled point set with an explicit metric matrix.
struct ValueSpace {
    std::string id;
    std::vector<std::string> points;           // pairwise distinct labels
    std::vector<std::vector<Rational>> metric; // square, symmetric, zero diagonal

    // Index of a label within `points`, or -1 when absent.
    int index_of(const std::string& label) const;
    size_t size() const { return points.size(); }
};

struct Attribute {
    std::string name;
    std::string space;  // id of a declared ValueSpace
};

struct Schema {
    std::vector<ValueSpace> spaces;
    std::vector<Attribute> attributes;

    const ValueSpace* find_space(const std::string& id) const;
    const Attribute* find_attribute(const std::string& name) const;
    // Value space of a named attribute; throws when unresolved.
    const ValueSpace& space_of(const std::string& attribute_name) const;
};

// One problem found by validation. `severity` is "error" or "warning";
// triangle-inequality failures are warnings (nothing downstream needs them).
struct SchemaViolation {
    std::string severity;
    std::string field;    // offending field, e.g. "spaces[0].metric[0][1]"
    std::string message;
};

std::vector<SchemaViolation> validate_schema(const Schema& schema);

// An attribute list: ordered, repeats allowed, empty allowed (grading level -1).
using AttributeList = std::vector<std::string>;

// L-infinity product distance between two tuples of labels over `list`.
// Empty list gives 0. Throws on unknown labels or arity mismatch.
Rational product_distance(const Schema& schema, const AttributeList& list,
                          const std::vector<std::string>& x,
                          const std::vector<std::string>& y);

}  // namespace dcx
