#pragma once

// Surface concept syntax: the full set of written constructors (disjunction,
// implication, exists/forall, at-most and exactly restrictions, bottom).
// expand_abbreviations rewrites every sugared constructor into the core
// language of syntax.hpp:
//
//   C | D        ->  not (not C & not D)
//   C -> D       ->  not C | D
//   exists S.C   ->  atleast 1 S . C
//   forall S.C   ->  not atleast 1 S . not C        (at most 0 S-successors outside C)
//   atmost n S.C ->  not atleast n+1 S . C
//   exactly n    ->  atmost n & atleast n
//   bot          ->  not top

#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cardinal/syntax.hpp"

namespace cardinal {

class SurfaceConcept;

struct SAtomic {
    std::string name;
};
struct SNominal {
    std::string name;
};
struct STop {};
struct SBot {};
struct SNot;
struct SAnd;
struct SOr;
struct SImplies;
struct SAtLeast;
struct SAtMost;
struct SExactly;
struct SExists;
struct SForall;

class SurfaceConcept {
public:
    using Node = std::variant<SAtomic, SNominal, STop, SBot, SNot, SAnd, SOr, SImplies, SAtLeast,
                              SAtMost, SExactly, SExists, SForall>;

    static SurfaceConcept atomic(std::string name);
    static SurfaceConcept nominal(std::string name);
    static SurfaceConcept top();
    static SurfaceConcept bot();
    static SurfaceConcept negation(SurfaceConcept arg);
    static SurfaceConcept conjunction(SurfaceConcept lhs, SurfaceConcept rhs);
    static SurfaceConcept disjunction(SurfaceConcept lhs, SurfaceConcept rhs);
    static SurfaceConcept implication(SurfaceConcept lhs, SurfaceConcept rhs);
    static SurfaceConcept at_least(Nat bound, RoleExpr role, SurfaceConcept qualifier);
    static SurfaceConcept at_most(Nat bound, RoleExpr role, SurfaceConcept qualifier);
    static SurfaceConcept exactly(Nat bound, RoleExpr role, SurfaceConcept qualifier);
    static SurfaceConcept exists(RoleExpr role, SurfaceConcept qualifier);
    static SurfaceConcept forall(RoleExpr role, SurfaceConcept qualifier);

    const Node& node() const;

private:
    explicit SurfaceConcept(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

struct SNot {
    SurfaceConcept arg;
};
struct SAnd {
    SurfaceConcept lhs;
    SurfaceConcept rhs;
};
struct SOr {
    SurfaceConcept lhs;
    SurfaceConcept rhs;
};
struct SImplies {
    SurfaceConcept lhs;
    SurfaceConcept rhs;
};
struct SAtLeast {
    Nat bound;
    RoleExpr role;
    SurfaceConcept qualifier;
};
struct SAtMost {
    Nat bound;
    RoleExpr role;
    SurfaceConcept qualifier;
};
struct SExactly {
    Nat bound;
    RoleExpr role;
    SurfaceConcept qualifier;
};
struct SExists {
    RoleExpr role;
    SurfaceConcept qualifier;
};
struct SForall {
    RoleExpr role;
    SurfaceConcept qualifier;
};

inline SurfaceConcept SurfaceConcept::atomic(std::string name) {
    return SurfaceConcept(std::make_shared<const Node>(SAtomic{std::move(name)}));
}
inline SurfaceConcept SurfaceConcept::nominal(std::string name) {
    return SurfaceConcept(std::make_shared<const Node>(SNominal{std::move(name)}));
}
inline SurfaceConcept SurfaceConcept::top() {
    return SurfaceConcept(std::make_shared<const Node>(STop{}));
}
inline SurfaceConcept SurfaceConcept::bot() {
    return SurfaceConcept(std::make_shared<const Node>(SBot{}));
}
inline SurfaceConcept SurfaceConcept::negation(SurfaceConcept arg) {
    return SurfaceConcept(std::make_shared<const Node>(SNot{std::move(arg)}));
}
inline SurfaceConcept SurfaceConcept::conjunction(SurfaceConcept lhs, SurfaceConcept rhs) {
    return SurfaceConcept(std::make_shared<const Node>(SAnd{std::move(lhs), std::move(rhs)}));
}
inline SurfaceConcept SurfaceConcept::disjunction(SurfaceConcept lhs, SurfaceConcept rhs) {
    return SurfaceConcept(std::make_shared<const Node>(SOr{std::move(lhs), std::move(rhs)}));
}
inline SurfaceConcept SurfaceConcept::implication(SurfaceConcept lhs, SurfaceConcept rhs) {
    return SurfaceConcept(std::make_shared<const Node>(SImplies{std::move(lhs), std::move(rhs)}));
}
inline SurfaceConcept SurfaceConcept::at_least(Nat bound, RoleExpr role, SurfaceConcept qualifier) {
    return SurfaceConcept(std::make_shared<const Node>(
        SAtLeast{std::move(bound), std::move(role), std::move(qualifier)}));
}
inline SurfaceConcept SurfaceConcept::at_most(Nat bound, RoleExpr role, SurfaceConcept qualifier) {
    return SurfaceConcept(std::make_shared<const Node>(
        SAtMost{std::move(bound), std::move(role), std::move(qualifier)}));
}
inline SurfaceConcept SurfaceConcept::exactly(Nat bound, RoleExpr role, SurfaceConcept qualifier) {
    return SurfaceConcept(std::make_shared<const Node>(
        SExactly{std::move(bound), std::move(role), std::move(qualifier)}));
}
inline SurfaceConcept SurfaceConcept::exists(RoleExpr role, SurfaceConcept qualifier) {
    return SurfaceConcept(
        std::make_shared<const Node>(SExists{std::move(role), std::move(qualifier)}));
}
inline SurfaceConcept SurfaceConcept::forall(RoleExpr role, SurfaceConcept qualifier) {
    return SurfaceConcept(
        std::make_shared<const Node>(SForall{std::move(role), std::move(qualifier)}));
}

inline const SurfaceConcept::Node& SurfaceConcept::node() const { return *node_; }

/// Right-fold conjunction over surface terms; empty input yields top.
inline SurfaceConcept conjunction_of(const std::vector<SurfaceConcept>& parts) {
    if (parts.empty()) return SurfaceConcept::top();
    SurfaceConcept acc = parts.back();
    for (std::size_t i = parts.size() - 1; i-- > 0;)
        acc = SurfaceConcept::conjunction(parts[i], std::move(acc));
    return acc;
}

/// Right-fold disjunction over surface terms; empty input yields bot.
inline SurfaceConcept disjunction_of(const std::vector<SurfaceConcept>& parts) {
    if (parts.empty()) return SurfaceConcept::bot();
    SurfaceConcept acc = parts.back();
    for (std::size_t i = parts.size() - 1; i-- > 0;)
        acc = SurfaceConcept::disjunction(parts[i], std::move(acc));
    return acc;
}

/// Rewrites every sugared constructor into the core language.  Total on
/// well-formed surface terms and idempotent on (embedded) core output.
inline Concept expand_abbreviations(const SurfaceConcept& s) {
    return std::visit(
        overloaded{
            [&](const SAtomic& a) { return Concept::atomic(a.name); },
            [&](const SNominal& n) { return Concept::nominal(n.name); },
            [&](const STop&) { return Concept::top(); },
            [&](const SBot&) { return Concept::negation(Concept::top()); },
            [&](const SNot& n) { return Concept::negation(expand_abbreviations(n.arg)); },
            [&](const SAnd& a) {
                return Concept::conjunction(expand_abbreviations(a.lhs),
                                            expand_abbreviations(a.rhs));
            },
            [&](const SOr& o) {
                return Concept::negation(
                    Concept::conjunction(Concept::negation(expand_abbreviations(o.lhs)),
                                         Concept::negation(expand_abbreviations(o.rhs))));
            },
            [&](const SImplies& i) {
                // lhs -> rhs is not lhs | rhs, expanded
                return Concept::negation(Concept::conjunction(
                    Concept::negation(Concept::negation(expand_abbreviations(i.lhs))),
                    Concept::negation(expand_abbreviations(i.rhs))));
            },
            [&](const SAtLeast& a) {
                return Concept::at_least(a.bound, a.role, expand_abbreviations(a.qualifier));
            },
            [&](const SAtMost& a) {
                return Concept::negation(
                    Concept::at_least(a.bound + 1, a.role, expand_abbreviations(a.qualifier)));
            },
            [&](const SExactly& e) {
                Concept q = expand_abbreviations(e.qualifier);
                return Concept::conjunction(
                    Concept::negation(Concept::at_least(e.bound + 1, e.role, q)),
                    Concept::at_least(e.bound, e.role, q));
            },
            [&](const SExists& e) {
                return Concept::at_least(1, e.role, expand_abbreviations(e.qualifier));
            },
            [&](const SForall& f) {
                return Concept::negation(Concept::at_least(
                    1, f.role, Concept::negation(expand_abbreviations(f.qualifier))));
            },
        },
        s.node());
}

/// Embeds a core concept back into the surface language (core constructors
/// are a subset of the surface ones).
inline SurfaceConcept as_surface(const Concept& c) {
    return std::visit(
        overloaded{
            [&](const AtomicConcept& a) { return SurfaceConcept::atomic(a.name); },
            [&](const NominalConcept& n) { return SurfaceConcept::nominal(n.name); },
            [&](const TopConcept&) { return SurfaceConcept::top(); },
            [&](const NotConcept& n) { return SurfaceConcept::negation(as_surface(n.arg)); },
            [&](const AndConcept& a) {
                return SurfaceConcept::conjunction(as_surface(a.lhs), as_surface(a.rhs));
            },
            [&](const AtLeastConcept& a) {
                return SurfaceConcept::at_least(a.bound, a.role, as_surface(a.qualifier));
            },
        },
        c.node());
}

}  // namespace cardinal
