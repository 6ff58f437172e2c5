#pragma once

// Finite interpretations and the model-theoretic ground truth.  The domain is
// always the initial segment {0..m-1} of the naturals, which keeps structures
// canonical and enumerable.  Concept and role names missing from a valuation
// default to the empty set; a missing nominal is an error because no default
// singleton would be canonical.

#include <cstddef>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>

#include "cardinal/syntax.hpp"

namespace cardinal {

using Element = std::size_t;

struct Interpretation {
    std::size_t domain_size = 1;
    std::map<std::string, std::set<Element>> concepts;
    std::map<std::string, std::set<std::pair<Element, Element>>> roles;
    std::map<std::string, Element> nominals;

    /// Throws unless the domain is nonempty and every valuation stays in range.
    void validate() const {
        if (domain_size < 1) throw Error("interpretation domain must be nonempty");
        for (const auto& [name, ext] : concepts)
            for (Element e : ext)
                if (e >= domain_size)
                    throw Error("concept '" + name + "' contains out-of-range element");
        for (const auto& [name, pairs] : roles)
            for (const auto& [a, b] : pairs)
                if (a >= domain_size || b >= domain_size)
                    throw Error("role '" + name + "' contains out-of-range pair");
        for (const auto& [name, e] : nominals)
            if (e >= domain_size)
                throw Error("nominal '" + name + "' maps to out-of-range element");
    }

    friend bool operator==(const Interpretation&, const Interpretation&) = default;
};

/// The extension of a core concept: the inductive semantics clauses, with the
/// inverse-role case counting predecessors.
inline std::set<Element> extension(const Interpretation& i, const Concept& c) {
    return std::visit(
        overloaded{
            [&](const AtomicConcept& a) -> std::set<Element> {
                auto it = i.concepts.find(a.name);
                return it == i.concepts.end() ? std::set<Element>{} : it->second;
            },
            [&](const NominalConcept& n) -> std::set<Element> {
                auto it = i.nominals.find(n.name);
                if (it == i.nominals.end())
                    throw Error("uninterpreted nominal '" + n.name + "'");
                return {it->second};
            },
            [&](const TopConcept&) -> std::set<Element> {
                std::set<Element> all;
                for (Element e = 0; e < i.domain_size; ++e) all.insert(e);
                return all;
            },
            [&](const NotConcept& n) -> std::set<Element> {
                std::set<Element> inner = extension(i, n.arg);
                std::set<Element> out;
                for (Element e = 0; e < i.domain_size; ++e)
                    if (!inner.count(e)) out.insert(e);
                return out;
            },
            [&](const AndConcept& a) -> std::set<Element> {
                std::set<Element> l = extension(i, a.lhs);
                std::set<Element> r = extension(i, a.rhs);
                std::set<Element> out;
                for (Element e : l)
                    if (r.count(e)) out.insert(e);
                return out;
            },
            [&](const AtLeastConcept& a) -> std::set<Element> {
                std::set<Element> qual = extension(i, a.qualifier);
                static const std::set<std::pair<Element, Element>> kEmpty;
                auto it = i.roles.find(a.role.name);
                const auto& pairs = it == i.roles.end() ? kEmpty : it->second;
                std::set<Element> out;
                for (Element e = 0; e < i.domain_size; ++e) {
                    std::size_t count = 0;
                    for (const auto& [x, y] : pairs) {
                        Element source = a.role.inverted ? y : x;
                        Element target = a.role.inverted ? x : y;
                        if (source == e && qual.count(target)) ++count;
                    }
                    if (Nat(count) >= a.bound) out.insert(e);
                }
                return out;
            },
        },
        c.node());
}

inline bool satisfies(const Interpretation& i, const CardRestriction& r) {
    Nat size(extension(i, r.subject).size());
    return r.kind == CardRestriction::Kind::AtLeast ? size >= r.bound : size <= r.bound;
}

inline bool satisfies(const Interpretation& i, const Gci& g) {
    std::set<Element> lhs = extension(i, g.lhs);
    std::set<Element> rhs = extension(i, g.rhs);
    return std::includes(rhs.begin(), rhs.end(), lhs.begin(), lhs.end());
}

inline bool is_model(const Interpretation& i, const TcBox& t) {
    for (const auto& r : t)
        if (!satisfies(i, r)) return false;
    return true;
}

inline bool is_model(const Interpretation& i, const TiBox& t) {
    for (const auto& g : t)
        if (!satisfies(i, g)) return false;
    return true;
}

/// Line-oriented text format:
///   domain N
///   concept A = {0,1}
///   role R = {(0,1),(1,0)}
///   nominal o = 0
/// Empty valuations are emitted explicitly so that readers can distinguish
/// "interpreted as empty" from "not interpreted at all".
inline std::string render(const Interpretation& i) {
    std::ostringstream out;
    out << "domain " << i.domain_size << '\n';
    for (const auto& [name, ext] : i.concepts) {
        out << "concept " << name << " = {";
        bool first = true;
        for (Element e : ext) {
            if (!first) out << ',';
            out << e;
            first = false;
        }
        out << "}\n";
    }
    for (const auto& [name, pairs] : i.roles) {
        out << "role " << name << " = {";
        bool first = true;
        for (const auto& [a, b] : pairs) {
            if (!first) out << ',';
            out << '(' << a << ',' << b << ')';
            first = false;
        }
        out << "}\n";
    }
    for (const auto& [name, e] : i.nominals) out << "nominal " << name << " = " << e << '\n';
    return out.str();
}

}  // namespace cardinal
