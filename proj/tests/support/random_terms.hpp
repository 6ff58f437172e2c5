#pragma once

// Seeded random generators for concepts, TBoxes and interpretations.  All
// sampling goes through the raw engine (no distribution objects), so a seed
// pins the corpus exactly.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cardinal/interpretation.hpp"
#include "cardinal/surface.hpp"
#include "cardinal/syntax.hpp"

namespace testsupport {

using namespace cardinal;

struct TermGen {
    std::mt19937_64 rng;
    std::vector<std::string> concept_names = {"A", "B"};
    std::vector<std::string> role_names = {"R"};
    std::vector<std::string> nominal_names = {};  // empty: nominal-free terms
    bool allow_inverse = true;
    bool allow_top = true;
    unsigned max_bound = 2;

    explicit TermGen(std::uint64_t seed) : rng(seed) {}

    std::size_t pick(std::size_t n) { return static_cast<std::size_t>(rng() % n); }

    RoleExpr some_role() {
        RoleExpr r = role(role_names[pick(role_names.size())]);
        if (allow_inverse && pick(2) == 1) r.inverted = true;
        return r;
    }

    Nat some_bound() { return Nat(pick(max_bound + 1)); }

    Concept leaf() {
        std::size_t choices = concept_names.size() + (allow_top ? 1 : 0) + nominal_names.size();
        std::size_t k = pick(choices);
        if (k < concept_names.size()) return Concept::atomic(concept_names[k]);
        k -= concept_names.size();
        if (allow_top && k == 0) return Concept::top();
        if (allow_top) k -= 1;
        return Concept::nominal(nominal_names[k]);
    }

    /// A random core concept of depth at most `depth` (a leaf has depth 1).
    Concept core_concept(unsigned depth) {
        if (depth <= 1) return leaf();
        switch (pick(4)) {
            case 0: return leaf();
            case 1: return Concept::negation(core_concept(depth - 1));
            case 2:
                return Concept::conjunction(core_concept(depth - 1), core_concept(depth - 1));
            default:
                return Concept::at_least(some_bound(), some_role(), core_concept(depth - 1));
        }
    }

    /// A random surface concept exercising every sugared constructor.
    SurfaceConcept surface_concept(unsigned depth) {
        if (depth <= 1) {
            switch (pick(4)) {
                case 0: return SurfaceConcept::top();
                case 1: return SurfaceConcept::bot();
                default: return SurfaceConcept::atomic(concept_names[pick(concept_names.size())]);
            }
        }
        switch (pick(10)) {
            case 0: return SurfaceConcept::negation(surface_concept(depth - 1));
            case 1:
                return SurfaceConcept::conjunction(surface_concept(depth - 1),
                                                   surface_concept(depth - 1));
            case 2:
                return SurfaceConcept::disjunction(surface_concept(depth - 1),
                                                   surface_concept(depth - 1));
            case 3:
                return SurfaceConcept::implication(surface_concept(depth - 1),
                                                   surface_concept(depth - 1));
            case 4:
                return SurfaceConcept::at_least(some_bound(), some_role(),
                                                surface_concept(depth - 1));
            case 5:
                return SurfaceConcept::at_most(some_bound(), some_role(),
                                               surface_concept(depth - 1));
            case 6:
                return SurfaceConcept::exactly(some_bound(), some_role(),
                                               surface_concept(depth - 1));
            case 7: return SurfaceConcept::exists(some_role(), surface_concept(depth - 1));
            case 8: return SurfaceConcept::forall(some_role(), surface_concept(depth - 1));
            default: return surface_concept(1);
        }
    }

    TcBox tcbox(unsigned max_restrictions, unsigned depth) {
        std::vector<CardRestriction> rs;
        std::size_t count = 1 + pick(max_restrictions);
        for (std::size_t i = 0; i < count; ++i)
            rs.push_back(CardRestriction{pick(2) == 0 ? CardRestriction::Kind::AtLeast
                                                      : CardRestriction::Kind::AtMost,
                                         some_bound(), core_concept(depth)});
        return TcBox(std::move(rs));
    }

    TiBox tibox(unsigned max_axioms, unsigned depth) {
        std::vector<Gci> axioms;
        std::size_t count = 1 + pick(max_axioms);
        for (std::size_t i = 0; i < count; ++i)
            axioms.push_back(Gci{core_concept(depth), core_concept(depth)});
        return TiBox(std::move(axioms));
    }

    /// A random interpretation interpreting the generator's name pools.
    Interpretation interpretation(std::size_t domain_size) {
        Interpretation out;
        out.domain_size = domain_size;
        for (const auto& name : concept_names) {
            auto& ext = out.concepts[name];
            for (Element e = 0; e < domain_size; ++e)
                if (pick(2)) ext.insert(e);
        }
        for (const auto& name : role_names) {
            auto& pairs = out.roles[name];
            for (Element a = 0; a < domain_size; ++a)
                for (Element b = 0; b < domain_size; ++b)
                    if (pick(2)) pairs.emplace(a, b);
        }
        for (const auto& name : nominal_names) out.nominals[name] = pick(domain_size);
        return out;
    }
};

}  // namespace testsupport
