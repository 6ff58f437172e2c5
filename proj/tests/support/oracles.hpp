#pragma once

// Independent oracles the tests check the library against.  Nothing here
// shares code with the implementation paths under test: the surface evaluator
// interprets sugared constructors directly from their set-theoretic meaning,
// the interpretation enumerator walks the full assignment space, and the
// concept enumerator builds every core term up to a depth bound.

#include <functional>
#include <set>
#include <string>
#include <vector>

#include "cardinal/interpretation.hpp"
#include "cardinal/surface.hpp"
#include "cardinal/syntax.hpp"

namespace testsupport {

using namespace cardinal;

// ---------------------------------------------------------------------------
// Literal surface semantics (independent of expand_abbreviations)
// ---------------------------------------------------------------------------

inline std::size_t successor_count(const Interpretation& i, Element a, const RoleExpr& r,
                                   const std::set<Element>& qualifier) {
    auto it = i.roles.find(r.name);
    if (it == i.roles.end()) return 0;
    std::size_t count = 0;
    for (const auto& [x, y] : it->second) {
        Element source = r.inverted ? y : x;
        Element target = r.inverted ? x : y;
        if (source == a && qualifier.count(target)) ++count;
    }
    return count;
}

/// Evaluates a surface concept by the direct set-theoretic reading of each
/// constructor: union for |, complement-union for ->, successor counting for
/// the quantified forms.
inline std::set<Element> surface_extension(const Interpretation& i, const SurfaceConcept& s) {
    auto domain = [&] {
        std::set<Element> all;
        for (Element e = 0; e < i.domain_size; ++e) all.insert(e);
        return all;
    };
    auto complement = [&](const std::set<Element>& in) {
        std::set<Element> out;
        for (Element e = 0; e < i.domain_size; ++e)
            if (!in.count(e)) out.insert(e);
        return out;
    };
    return std::visit(
        overloaded{
            [&](const SAtomic& a) -> std::set<Element> {
                auto it = i.concepts.find(a.name);
                return it == i.concepts.end() ? std::set<Element>{} : it->second;
            },
            [&](const SNominal& n) -> std::set<Element> { return {i.nominals.at(n.name)}; },
            [&](const STop&) { return domain(); },
            [&](const SBot&) { return std::set<Element>{}; },
            [&](const SNot& n) { return complement(surface_extension(i, n.arg)); },
            [&](const SAnd& a) {
                std::set<Element> l = surface_extension(i, a.lhs);
                std::set<Element> r = surface_extension(i, a.rhs);
                std::set<Element> out;
                for (Element e : l)
                    if (r.count(e)) out.insert(e);
                return out;
            },
            [&](const SOr& o) {
                std::set<Element> out = surface_extension(i, o.lhs);
                std::set<Element> r = surface_extension(i, o.rhs);
                out.insert(r.begin(), r.end());
                return out;
            },
            [&](const SImplies& imp) {
                std::set<Element> out = complement(surface_extension(i, imp.lhs));
                std::set<Element> r = surface_extension(i, imp.rhs);
                out.insert(r.begin(), r.end());
                return out;
            },
            [&](const SAtLeast& a) {
                std::set<Element> qual = surface_extension(i, a.qualifier);
                std::set<Element> out;
                for (Element e = 0; e < i.domain_size; ++e)
                    if (Nat(successor_count(i, e, a.role, qual)) >= a.bound) out.insert(e);
                return out;
            },
            [&](const SAtMost& a) {
                std::set<Element> qual = surface_extension(i, a.qualifier);
                std::set<Element> out;
                for (Element e = 0; e < i.domain_size; ++e)
                    if (Nat(successor_count(i, e, a.role, qual)) <= a.bound) out.insert(e);
                return out;
            },
            [&](const SExactly& x) {
                std::set<Element> qual = surface_extension(i, x.qualifier);
                std::set<Element> out;
                for (Element e = 0; e < i.domain_size; ++e)
                    if (Nat(successor_count(i, e, x.role, qual)) == x.bound) out.insert(e);
                return out;
            },
            [&](const SExists& x) {
                std::set<Element> qual = surface_extension(i, x.qualifier);
                std::set<Element> out;
                for (Element e = 0; e < i.domain_size; ++e)
                    if (successor_count(i, e, x.role, qual) >= 1) out.insert(e);
                return out;
            },
            [&](const SForall& f) {
                std::set<Element> qual = surface_extension(i, f.qualifier);
                std::set<Element> out;
                for (Element e = 0; e < i.domain_size; ++e) {
                    // all successors inside the qualifier
                    auto it = i.roles.find(f.role.name);
                    bool ok = true;
                    if (it != i.roles.end()) {
                        for (const auto& [x, y] : it->second) {
                            Element source = f.role.inverted ? y : x;
                            Element target = f.role.inverted ? x : y;
                            if (source == e && !qual.count(target)) ok = false;
                        }
                    }
                    if (ok) out.insert(e);
                }
                return out;
            },
        },
        s.node());
}

// ---------------------------------------------------------------------------
// Exhaustive interpretation enumeration
// ---------------------------------------------------------------------------

/// Calls fn with every interpretation of the given names over {0..m-1}:
/// all concept subsets, all role relations, all nominal placements.
inline void for_each_interpretation(const std::vector<std::string>& concepts,
                                    const std::vector<std::string>& roles,
                                    const std::vector<std::string>& nominals, std::size_t m,
                                    const std::function<void(const Interpretation&)>& fn) {
    const std::uint64_t concept_space = std::uint64_t{1} << m;
    const std::uint64_t role_space = std::uint64_t{1} << (m * m);

    std::vector<std::uint64_t> concept_mask(concepts.size(), 0);
    std::vector<std::uint64_t> role_mask(roles.size(), 0);
    std::vector<std::size_t> nominal_at(nominals.size(), 0);

    auto emit = [&] {
        Interpretation i;
        i.domain_size = m;
        for (std::size_t c = 0; c < concepts.size(); ++c) {
            auto& ext = i.concepts[concepts[c]];
            for (std::size_t e = 0; e < m; ++e)
                if (concept_mask[c] & (std::uint64_t{1} << e)) ext.insert(e);
        }
        for (std::size_t r = 0; r < roles.size(); ++r) {
            auto& pairs = i.roles[roles[r]];
            for (std::size_t a = 0; a < m; ++a)
                for (std::size_t b = 0; b < m; ++b)
                    if (role_mask[r] & (std::uint64_t{1} << (a * m + b))) pairs.emplace(a, b);
        }
        for (std::size_t n = 0; n < nominals.size(); ++n) i.nominals[nominals[n]] = nominal_at[n];
        fn(i);
    };

    // Odometer over all assignment components.
    auto spin = [&](const auto& self, std::size_t level) -> void {
        if (level < concepts.size()) {
            for (std::uint64_t v = 0; v < concept_space; ++v) {
                concept_mask[level] = v;
                self(self, level + 1);
            }
            return;
        }
        std::size_t r = level - concepts.size();
        if (r < roles.size()) {
            for (std::uint64_t v = 0; v < role_space; ++v) {
                role_mask[r] = v;
                self(self, level + 1);
            }
            return;
        }
        std::size_t n = r - roles.size();
        if (n < nominals.size()) {
            for (std::size_t e = 0; e < m; ++e) {
                nominal_at[n] = e;
                self(self, level + 1);
            }
            return;
        }
        emit();
    };
    spin(spin, 0);
}

/// Brute-force bounded consistency: enumerates every interpretation of the
/// box's signature with 1..k elements and model-checks each one.
template <typename Box>
bool brute_force_consistent(const Box& box, std::size_t k) {
    Signature sig = signature_of(box);
    std::vector<std::string> concepts(sig.concepts.begin(), sig.concepts.end());
    std::vector<std::string> roles(sig.roles.begin(), sig.roles.end());
    std::vector<std::string> nominals(sig.individuals.begin(), sig.individuals.end());
    bool found = false;
    for (std::size_t m = 1; m <= k && !found; ++m) {
        for_each_interpretation(concepts, roles, nominals, m, [&](const Interpretation& i) {
            if (!found && is_model(i, box)) found = true;
        });
    }
    return found;
}

// ---------------------------------------------------------------------------
// Exhaustive core-concept enumeration
// ---------------------------------------------------------------------------

/// Every core concept of depth <= max_depth (leaves have depth 1) over one
/// atomic concept and one role (both orientations), with bounds 0..max_bound.
/// Duplicates are removed via the canonical rendering.
inline std::vector<Concept> enumerate_core_concepts(unsigned max_depth,
                                                    const std::string& concept_name,
                                                    const std::string& role_name,
                                                    unsigned max_bound) {
    std::vector<Concept> current = {Concept::atomic(concept_name), Concept::top()};
    std::set<std::string> seen;
    for (const auto& c : current) seen.insert(render(c));

    for (unsigned depth = 2; depth <= max_depth; ++depth) {
        std::vector<Concept> next = current;
        auto add = [&](Concept c) {
            if (seen.insert(render(c)).second) next.push_back(std::move(c));
        };
        for (const auto& c : current) add(Concept::negation(c));
        for (const auto& a : current)
            for (const auto& b : current) add(Concept::conjunction(a, b));
        for (unsigned n = 0; n <= max_bound; ++n) {
            for (const auto& c : current) {
                add(Concept::at_least(n, role(role_name), c));
                add(Concept::at_least(n, inverse_role(role_name), c));
            }
        }
        current = std::move(next);
    }
    return current;
}

}  // namespace testsupport
