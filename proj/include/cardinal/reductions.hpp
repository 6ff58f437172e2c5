#pragma once

// The three inter-formalism reductions.
//
// cardinalities_to_nominals: replaces every cardinality restriction by
// inclusion axioms over fresh nominals.  An at-least-0 restriction is dropped
// (it holds in every interpretation); an at-most-n restriction becomes
// C ⊑ o1 | ... | on (the empty disjunction being "not top" for n = 0); an
// at-least-n restriction with n >= 1 pins n pairwise-distinct nominals inside
// C.  The fresh nominals are "_phi_<i>_<j>" where i is the restriction's
// position in the box's canonical order and j the 0-based position in the
// restriction's nominal list; the ledger records the lists.
//
// nominals_to_cardinalities: the reverse direction.  Every nominal o is
// replaced by a fresh atomic concept "A_<o>" forced to be a singleton by the
// pair { atmost 1, atleast 1 }, and every axiom C ⊑ D becomes the restriction
// (atmost 0 : C & not D).
//
// spy_rewrite / internalise: compiles an inclusion TBox into one concept
// whose satisfiability matches the TBox's consistency.  Every qualified
// restriction is relativised to elements reachable from the spy point (the
// fresh nominal "_i") via the fresh role "_spy"; the internalisation then
// asserts the rewritten axioms at the spy point and at all its successors.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cardinal/surface.hpp"
#include "cardinal/syntax.hpp"

namespace cardinal {

class FreshnessError : public Error {
public:
    using Error::Error;
};

/// Records, per source restriction index (canonical box order), the ordered
/// list of fresh nominals introduced for it.
struct NominalLedger {
    std::map<std::size_t, std::vector<std::string>> entries;
};

namespace detail {

inline void require_fresh_concept(const Signature& sig, const std::string& name) {
    if (sig.concepts.count(name) || sig.roles.count(name) || sig.individuals.count(name))
        throw FreshnessError("fresh concept name '" + name + "' already occurs in the input");
}

inline void require_fresh_role(const Signature& sig, const std::string& name) {
    if (sig.concepts.count(name) || sig.roles.count(name) || sig.individuals.count(name))
        throw FreshnessError("fresh role name '" + name + "' already occurs in the input");
}

inline void require_fresh_individual(const Signature& sig, const std::string& name) {
    if (sig.concepts.count(name) || sig.roles.count(name) || sig.individuals.count(name))
        throw FreshnessError("fresh individual name '" + name + "' already occurs in the input");
}

}  // namespace detail

/// Rewrites a cardinality TBox into an equiconsistent inclusion TBox over
/// fresh nominals.  Output size is linear in the box's unary size.
inline std::pair<TiBox, NominalLedger> cardinalities_to_nominals(const TcBox& t) {
    Signature sig = signature_of(t);
    std::vector<Gci> axioms;
    NominalLedger ledger;

    const auto& restrictions = t.restrictions();
    for (std::size_t i = 0; i < restrictions.size(); ++i) {
        const CardRestriction& r = restrictions[i];
        std::vector<std::string>& fresh = ledger.entries[i];

        if (r.kind == CardRestriction::Kind::AtLeast && r.bound == 0) continue;

        if (r.bound > 4096)
            throw Error("cardinality bound " + r.bound.str() +
                        " is too large for the nominal translation");
        std::size_t n = static_cast<std::size_t>(r.bound);
        for (std::size_t j = 0; j < n; ++j) {
            std::string name = "_phi_" + std::to_string(i) + "_" + std::to_string(j);
            detail::require_fresh_individual(sig, name);
            fresh.push_back(name);
        }

        if (r.kind == CardRestriction::Kind::AtMost) {
            std::vector<SurfaceConcept> options;
            options.reserve(n);
            for (const auto& name : fresh) options.push_back(SurfaceConcept::nominal(name));
            axioms.push_back(Gci{r.subject, expand_abbreviations(disjunction_of(options))});
        } else {
            for (const auto& name : fresh) axioms.push_back(Gci{Concept::nominal(name), r.subject});
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t l = j + 1; l < n; ++l)
                    axioms.push_back(Gci{Concept::nominal(fresh[j]),
                                         Concept::negation(Concept::nominal(fresh[l]))});
        }
    }

    return {TiBox(std::move(axioms)), std::move(ledger)};
}

namespace detail {

inline Concept replace_nominals(const Concept& c,
                                const std::map<std::string, std::string>& to_concept) {
    return std::visit(
        overloaded{
            [&](const AtomicConcept& a) { return Concept::atomic(a.name); },
            [&](const NominalConcept& n) { return Concept::atomic(to_concept.at(n.name)); },
            [&](const TopConcept&) { return Concept::top(); },
            [&](const NotConcept& n) {
                return Concept::negation(replace_nominals(n.arg, to_concept));
            },
            [&](const AndConcept& a) {
                return Concept::conjunction(replace_nominals(a.lhs, to_concept),
                                            replace_nominals(a.rhs, to_concept));
            },
            [&](const AtLeastConcept& a) {
                return Concept::at_least(a.bound, a.role,
                                         replace_nominals(a.qualifier, to_concept));
            },
        },
        c.node());
}

}  // namespace detail

/// Rewrites an inclusion TBox into an equiconsistent nominal-free cardinality
/// TBox: nominals become singleton-forced fresh concepts, axioms become
/// at-most-0 restrictions.
inline TcBox nominals_to_cardinalities(const TiBox& t) {
    Signature sig = signature_of(t);
    std::map<std::string, std::string> to_concept;
    for (const auto& o : sig.individuals) {
        std::string name = "A_" + o;
        detail::require_fresh_concept(sig, name);
        to_concept[o] = name;
    }

    std::vector<CardRestriction> out;
    for (const auto& g : t) {
        Concept body = Concept::conjunction(detail::replace_nominals(g.lhs, to_concept),
                                            Concept::negation(detail::replace_nominals(g.rhs, to_concept)));
        out.push_back(CardRestriction{CardRestriction::Kind::AtMost, 0, std::move(body)});
    }
    for (const auto& [o, name] : to_concept) {
        out.push_back(CardRestriction{CardRestriction::Kind::AtMost, 1, Concept::atomic(name)});
        out.push_back(CardRestriction{CardRestriction::Kind::AtLeast, 1, Concept::atomic(name)});
    }
    return TcBox(std::move(out));
}

/// Relativises every qualified restriction in c to spy-reachable elements:
/// atoms, nominals and top are fixed, negation and conjunction map
/// homomorphically, and (atleast n S . D) becomes
/// (atleast n S . (exists inv(spy) . {i} & D')).  The same clause is applied
/// whether S is a role name or an inverse role.
inline Concept spy_rewrite(const Concept& c, const std::string& spy_role,
                           const std::string& spy_nominal) {
    Signature sig = signature_of(c);
    detail::require_fresh_role(sig, spy_role);
    detail::require_fresh_individual(sig, spy_nominal);

    // Freshness holds for all subterms once checked at the top.
    auto rewrite = [&](const auto& self, const Concept& term) -> Concept {
        return std::visit(
            overloaded{
                [&](const AtomicConcept& a) { return Concept::atomic(a.name); },
                [&](const NominalConcept& n) { return Concept::nominal(n.name); },
                [&](const TopConcept&) { return Concept::top(); },
                [&](const NotConcept& n) { return Concept::negation(self(self, n.arg)); },
                [&](const AndConcept& a) {
                    return Concept::conjunction(self(self, a.lhs), self(self, a.rhs));
                },
                [&](const AtLeastConcept& a) {
                    Concept guard = Concept::at_least(1, inverse_role(spy_role),
                                                      Concept::nominal(spy_nominal));
                    return Concept::at_least(
                        a.bound, a.role,
                        Concept::conjunction(std::move(guard), self(self, a.qualifier)));
                },
            },
            term.node());
    };
    return rewrite(rewrite, c);
}

/// The fresh names used by internalise.
inline const std::string kSpyRole = "_spy";
inline const std::string kSpyNominal = "_i";

/// Compiles an inclusion TBox into a single concept that is satisfiable iff
/// the TBox is consistent.  Axioms are first normalised to "top ⊑ C" form
/// (C ⊑ D becomes top ⊑ not C | D; axioms whose left side is already top are
/// kept as they are), then each normalised right side is spy-rewritten, and
/// the result is the conjunction of the spy nominal, the rewritten sides and
/// their universal spy-successor forms, in canonical order.
inline Concept internalise(const TiBox& t) {
    Signature sig = signature_of(t);
    detail::require_fresh_role(sig, kSpyRole);
    detail::require_fresh_individual(sig, kSpyNominal);

    std::vector<Gci> normalised;
    normalised.reserve(t.size());
    for (const auto& g : t) {
        if (g.lhs.is_top()) {
            normalised.push_back(g);
        } else {
            Concept body = Concept::negation(
                Concept::conjunction(Concept::negation(Concept::negation(g.lhs)),
                                     Concept::negation(g.rhs)));
            normalised.push_back(Gci{Concept::top(), std::move(body)});
        }
    }
    TiBox normal_form(std::move(normalised));

    std::vector<Concept> parts;
    parts.push_back(Concept::nominal(kSpyNominal));
    for (const auto& g : normal_form) parts.push_back(spy_rewrite(g.rhs, kSpyRole, kSpyNominal));
    for (const auto& g : normal_form) {
        Concept rewritten = spy_rewrite(g.rhs, kSpyRole, kSpyNominal);
        // forall spy . C is not (atleast 1 spy . not C)
        parts.push_back(Concept::negation(
            Concept::at_least(1, role(kSpyRole), Concept::negation(std::move(rewritten)))));
    }
    return conjunction_of(parts);
}

}  // namespace cardinal
