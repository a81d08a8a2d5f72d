#include "dcx/schema.hpp"

#include <set>
#include <stdexcept>

namespace dcx {

int ValueSpace::index_of(const std::string& label) const {
    for (size_t i = 0; i < points.size(); ++i)
        if (points[i] == label) return static_cast<int>(i);
    return -1;
}

const ValueSpace* Schema::find_space(const std::string& id) const {
    for (const auto& s : spaces)
        if (s.id == id) return &s;
    return nullptr;
}

const Attribute* Schema::find_attribute(const std::string& name) const {
    for (const auto& a : attributes)
        if (a.name == name) return &a;
    return nullptr;
}

const ValueSpace& Schema::space_of(const std::string& attribute_name) const {
    const Attribute* a = find_attribute(attribute_name);
    if (!a) throw std::invalid_argument("unknown attribute '" + attribute_name + "'");
    const ValueSpace* s = find_space(a->space);
    if (!s) throw std::invalid_argument("attribute '" + attribute_name +
                                        "' refers to undeclared space '" + a->space + "'");
    return *s;
}

std::vector<SchemaViolation> validate_schema(const Schema& schema) {
    std::vector<SchemaViolation> out;
    auto err = [&](std::string field, std::string msg) {
        out.push_back({"error", std::move(field), std::move(msg)});
    };
    auto warn = [&](std::string field, std::string msg) {
        out.push_back({"warning", std::move(field), std::move(msg)});
    };

    std::set<std::string> space_ids;
    for (size_t si = 0; si < schema.spaces.size(); ++si) {
        const ValueSpace& vs = schema.spaces[si];
        std::string base = "spaces[" + std::to_string(si) + "]";
        if (vs.id.empty()) err(base + ".id", "empty space id");
        if (!space_ids.insert(vs.id).second) err(base + ".id", "duplicate space id '" + vs.id + "'");

        size_t n = vs.points.size();
        if (n < 1) err(base + ".points", "value space must have at least one point");
        std::set<std::string> seen;
        for (size_t i = 0; i < n; ++i)
            if (!seen.insert(vs.points[i]).second)
                err(base + ".points[" + std::to_string(i) + "]",
                    "duplicate point label '" + vs.points[i] + "'");

        if (vs.metric.size() != n) {
            err(base + ".metric", "metric must be " + std::to_string(n) + "x" + std::to_string(n));
            continue;
        }
        bool shape_ok = true;
        for (size_t i = 0; i < n; ++i)
            if (vs.metric[i].size() != n) {
                err(base + ".metric[" + std::to_string(i) + "]", "metric row has wrong length");
                shape_ok = false;
            }
        if (!shape_ok) continue;

        for (size_t i = 0; i < n; ++i) {
            if (vs.metric[i][i] != 0)
                err(base + ".metric[" + std::to_string(i) + "][" + std::to_string(i) + "]",
                    "nonzero distance on the diagonal");
            for (size_t j = 0; j < n; ++j) {
                if (vs.metric[i][j] < 0)
                    err(base + ".metric[" + std::to_string(i) + "][" + std::to_string(j) + "]",
                        "negative distance");
                if (i != j && vs.metric[i][j] == 0)
                    err(base + ".metric[" + std::to_string(i) + "][" + std::to_string(j) + "]",
                        "zero distance between distinct points");
                if (j > i && vs.metric[i][j] != vs.metric[j][i])
                    err(base + ".metric[" + std::to_string(i) + "][" + std::to_string(j) + "]",
                        "metric not symmetric");
            }
        }
        // Triangle inequality is reported but not enforced.
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j)
                for (size_t k = 0; k < n; ++k)
                    if (vs.metric[i][j] > vs.metric[i][k] + vs.metric[k][j]) {
                        warn(base + ".metric", "triangle inequality fails at (" +
                                                   vs.points[i] + "," + vs.points[j] + "," +
                                                   vs.points[k] + ")");
                        i = j = n;  // one warning per space is enough
                        break;
                    }
    }

    if (schema.attributes.empty())
        out.push_back({"error", "attributes", "attribute set must be nonempty"});
    std::set<std::string> attr_names;
    for (size_t ai = 0; ai < schema.attributes.size(); ++ai) {
        const Attribute& a = schema.attributes[ai];
        std::string base = "attributes[" + std::to_string(ai) + "]";
        if (!attr_names.insert(a.name).second)
            out.push_back({"error", base + ".name", "duplicate attribute name '" + a.name + "'"});
        if (!space_ids.count(a.space))
            out.push_back({"error", base + ".space",
                           "attribute '" + a.name + "' refers to undeclared space '" + a.space + "'"});
    }
    return out;
}

Rational product_distance(const Schema& schema, const AttributeList& list,
                          const std::vector<std::string>& x,
                          const std::vector<std::string>& y) {
    if (x.size() != list.size() || y.size() != list.size())
        throw std::invalid_argument("tuple arity does not match attribute list");
    Rational best = 0;
    for (size_t i = 0; i < list.size(); ++i) {
        const ValueSpace& vs = schema.space_of(list[i]);
        int xi = vs.index_of(x[i]);
        int yi = vs.index_of(y[i]);
        if (xi < 0) throw std::invalid_argument("label '" + x[i] + "' not in space '" + vs.id + "'");
        if (yi < 0) throw std::invalid_argument("label '" + y[i] + "' not in space '" + vs.id + "'");
        const Rational& d = vs.metric[xi][yi];
        if (d > best) best = d;
    }
    return best;
}

}  // namespace dcx
