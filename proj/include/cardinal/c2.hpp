#pragma once

// The two-variable counting fragment: formula terms over exactly two
// variables x and y, the structural translation from core concepts and
// cardinality TBoxes, and a brute-force evaluator over finite first-order
// structures.  The evaluator is an oracle, not a solver; its cost is
// exponential in quantifier depth by design.
//
// Top has no translation rule of its own in the concept language's usual
// presentation, so it becomes the quantifier-free tautology
// ~(_top(v) & ~_top(v)) over a reserved predicate; the choice of predicate is
// immaterial because the formula is true under every valuation.

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <variant>

#include "cardinal/interpretation.hpp"
#include "cardinal/syntax.hpp"

namespace cardinal {

enum class C2Var { X, Y };

inline C2Var other(C2Var v) { return v == C2Var::X ? C2Var::Y : C2Var::X; }

inline const char* name_of(C2Var v) { return v == C2Var::X ? "x" : "y"; }

class C2Formula;

struct C2Unary {
    std::string predicate;
    C2Var var;
};
struct C2Binary {
    std::string predicate;
    C2Var first;
    C2Var second;
};
struct C2Not;
struct C2And;
struct C2Count;

class C2Formula {
public:
    enum class Cmp { Geq, Leq };
    using Node = std::variant<C2Unary, C2Binary, C2Not, C2And, C2Count>;

    static C2Formula unary(std::string predicate, C2Var var);
    static C2Formula binary(std::string predicate, C2Var first, C2Var second);
    static C2Formula negation(C2Formula arg);
    static C2Formula conjunction(C2Formula lhs, C2Formula rhs);
    static C2Formula count(Cmp cmp, Nat bound, C2Var var, C2Formula body);

    const Node& node() const;

    friend bool operator==(const C2Formula& a, const C2Formula& b);

private:
    explicit C2Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

struct C2Not {
    C2Formula arg;
};
struct C2And {
    C2Formula lhs;
    C2Formula rhs;
};
struct C2Count {
    C2Formula::Cmp cmp;
    Nat bound;
    C2Var var;
    C2Formula body;  // the bound variable may occur here; the other is free
};

inline C2Formula C2Formula::unary(std::string predicate, C2Var var) {
    return C2Formula(std::make_shared<const Node>(C2Unary{std::move(predicate), var}));
}
inline C2Formula C2Formula::binary(std::string predicate, C2Var first, C2Var second) {
    return C2Formula(std::make_shared<const Node>(C2Binary{std::move(predicate), first, second}));
}
inline C2Formula C2Formula::negation(C2Formula arg) {
    return C2Formula(std::make_shared<const Node>(C2Not{std::move(arg)}));
}
inline C2Formula C2Formula::conjunction(C2Formula lhs, C2Formula rhs) {
    return C2Formula(std::make_shared<const Node>(C2And{std::move(lhs), std::move(rhs)}));
}
inline C2Formula C2Formula::count(Cmp cmp, Nat bound, C2Var var, C2Formula body) {
    if (bound < 0) throw Error("counting quantifier bound must be a natural number");
    return C2Formula(
        std::make_shared<const Node>(C2Count{cmp, std::move(bound), var, std::move(body)}));
}

inline const C2Formula::Node& C2Formula::node() const { return *node_; }

inline bool operator==(const C2Formula& a, const C2Formula& b) {
    if (a.node_ == b.node_) return true;
    if (a.node_->index() != b.node_->index()) return false;
    return std::visit(
        overloaded{
            [&](const C2Unary& u) {
                const auto& v = std::get<C2Unary>(*b.node_);
                return u.predicate == v.predicate && u.var == v.var;
            },
            [&](const C2Binary& u) {
                const auto& v = std::get<C2Binary>(*b.node_);
                return u.predicate == v.predicate && u.first == v.first && u.second == v.second;
            },
            [&](const C2Not& u) { return u.arg == std::get<C2Not>(*b.node_).arg; },
            [&](const C2And& u) {
                const auto& v = std::get<C2And>(*b.node_);
                return u.lhs == v.lhs && u.rhs == v.rhs;
            },
            [&](const C2Count& u) {
                const auto& v = std::get<C2Count>(*b.node_);
                return u.cmp == v.cmp && u.bound == v.bound && u.var == v.var && u.body == v.body;
            },
        },
        *a.node_);
}

inline bool operator!=(const C2Formula& a, const C2Formula& b) { return !(a == b); }

/// Simultaneous exchange of x and y everywhere, including bound occurrences.
/// An involution.
inline C2Formula swap_vars(const C2Formula& f) {
    return std::visit(
        overloaded{
            [&](const C2Unary& u) { return C2Formula::unary(u.predicate, other(u.var)); },
            [&](const C2Binary& b) {
                return C2Formula::binary(b.predicate, other(b.first), other(b.second));
            },
            [&](const C2Not& n) { return C2Formula::negation(swap_vars(n.arg)); },
            [&](const C2And& a) {
                return C2Formula::conjunction(swap_vars(a.lhs), swap_vars(a.rhs));
            },
            [&](const C2Count& c) {
                return C2Formula::count(c.cmp, c.bound, other(c.var), swap_vars(c.body));
            },
        },
        f.node());
}

/// Reserved predicate used for the tautological translation of top.
inline const std::string kTopPredicate = "_top";

inline C2Formula c2_tautology(C2Var v) {
    return C2Formula::negation(C2Formula::conjunction(
        C2Formula::unary(kTopPredicate, v),
        C2Formula::negation(C2Formula::unary(kTopPredicate, v))));
}

/// Structural translation of a core nominal-free concept; the result's free
/// variables are contained in {v}.  Atoms become unary atoms on v, negation
/// and conjunction map homomorphically, and a qualified at-least restriction
/// becomes a counting quantifier over the other variable, with the role
/// atom's argument order flipped for inverse roles.
inline C2Formula to_c2(const Concept& c, C2Var v) {
    return std::visit(
        overloaded{
            [&](const AtomicConcept& a) { return C2Formula::unary(a.name, v); },
            [&](const NominalConcept& n) -> C2Formula {
                throw Error("nominal '" + n.name + "' has no two-variable translation");
            },
            [&](const TopConcept&) { return c2_tautology(v); },
            [&](const NotConcept& n) { return C2Formula::negation(to_c2(n.arg, v)); },
            [&](const AndConcept& a) {
                return C2Formula::conjunction(to_c2(a.lhs, v), to_c2(a.rhs, v));
            },
            [&](const AtLeastConcept& a) {
                C2Var w = other(v);
                C2Formula atom = a.role.inverted ? C2Formula::binary(a.role.name, w, v)
                                                 : C2Formula::binary(a.role.name, v, w);
                return C2Formula::count(
                    C2Formula::Cmp::Geq, a.bound, w,
                    C2Formula::conjunction(std::move(atom), to_c2(a.qualifier, w)));
            },
        },
        c.node());
}

/// Translation of a whole cardinality TBox into a sentence: one counting
/// quantifier per restriction, conjoined in the box's canonical order.  The
/// empty box becomes the tautology closed under a vacuous quantifier.
inline C2Formula to_c2(const TcBox& t) {
    std::vector<C2Formula> parts;
    parts.reserve(t.size());
    for (const auto& r : t) {
        auto cmp = r.kind == CardRestriction::Kind::AtLeast ? C2Formula::Cmp::Geq
                                                            : C2Formula::Cmp::Leq;
        parts.push_back(C2Formula::count(cmp, r.bound, C2Var::X, to_c2(r.subject, C2Var::X)));
    }
    if (parts.empty())
        return C2Formula::count(C2Formula::Cmp::Geq, 0, C2Var::X, c2_tautology(C2Var::X));
    C2Formula acc = parts.back();
    for (std::size_t i = parts.size() - 1; i-- > 0;)
        acc = C2Formula::conjunction(parts[i], std::move(acc));
    return acc;
}

// ---------------------------------------------------------------------------
// Finite first-order structures and evaluation
// ---------------------------------------------------------------------------

struct FoStructure {
    std::size_t domain_size = 1;
    std::map<std::string, std::set<std::size_t>> unary;
    std::map<std::string, std::set<std::pair<std::size_t, std::size_t>>> binary;
};

/// Views a nominal-free interpretation as a first-order structure.
inline FoStructure structure_of(const Interpretation& i) {
    if (!i.nominals.empty())
        throw Error("interpretation with nominals has no first-order structure view");
    FoStructure s;
    s.domain_size = i.domain_size;
    for (const auto& [name, ext] : i.concepts) s.unary[name] = ext;
    for (const auto& [name, pairs] : i.roles) s.binary[name] = pairs;
    return s;
}

struct C2Env {
    std::optional<std::size_t> x;
    std::optional<std::size_t> y;

    std::optional<std::size_t> get(C2Var v) const { return v == C2Var::X ? x : y; }

    C2Env with(C2Var v, std::size_t value) const {
        C2Env env = *this;
        (v == C2Var::X ? env.x : env.y) = value;
        return env;
    }
};

/// Standard semantics with counting quantifiers: a quantifier counts the
/// domain elements making its body true.  Every free variable of the formula
/// must be assigned by the environment.
inline bool evaluate(const FoStructure& s, const C2Formula& f, const C2Env& env = {}) {
    auto lookup = [&](C2Var v) -> std::size_t {
        auto val = env.get(v);
        if (!val) throw Error(std::string("unassigned free variable ") + name_of(v));
        return *val;
    };
    return std::visit(
        overloaded{
            [&](const C2Unary& u) {
                auto it = s.unary.find(u.predicate);
                return it != s.unary.end() && it->second.count(lookup(u.var)) != 0;
            },
            [&](const C2Binary& b) {
                auto it = s.binary.find(b.predicate);
                return it != s.binary.end() &&
                       it->second.count({lookup(b.first), lookup(b.second)}) != 0;
            },
            [&](const C2Not& n) { return !evaluate(s, n.arg, env); },
            [&](const C2And& a) { return evaluate(s, a.lhs, env) && evaluate(s, a.rhs, env); },
            [&](const C2Count& c) {
                std::size_t count = 0;
                for (std::size_t e = 0; e < s.domain_size; ++e)
                    if (evaluate(s, c.body, env.with(c.var, e))) ++count;
                return c.cmp == C2Formula::Cmp::Geq ? Nat(count) >= c.bound
                                                    : Nat(count) <= c.bound;
            },
        },
        f.node());
}

/// Output-only rendering: "E>=n x. (...)", "A(x)", "R(x,y)", "~f", "(f & g)".
inline void render_to(std::ostream& out, const C2Formula& f) {
    std::visit(overloaded{
                   [&](const C2Unary& u) { out << u.predicate << '(' << name_of(u.var) << ')'; },
                   [&](const C2Binary& b) {
                       out << b.predicate << '(' << name_of(b.first) << ',' << name_of(b.second)
                           << ')';
                   },
                   [&](const C2Not& n) {
                       out << '~';
                       render_to(out, n.arg);
                   },
                   [&](const C2And& a) {
                       out << '(';
                       render_to(out, a.lhs);
                       out << " & ";
                       render_to(out, a.rhs);
                       out << ')';
                   },
                   [&](const C2Count& c) {
                       out << 'E' << (c.cmp == C2Formula::Cmp::Geq ? ">=" : "<=")
                           << c.bound.str() << ' ' << name_of(c.var) << ". (";
                       render_to(out, c.body);
                       out << ')';
                   },
               },
               f.node());
}

inline std::string render(const C2Formula& f) {
    std::ostringstream out;
    render_to(out, f);
    return out.str();
}

/// Structural node count (constructor nodes plus quantifier bounds).
inline std::size_t node_count(const C2Formula& f) {
    return std::visit(
        overloaded{
            [&](const C2Unary&) -> std::size_t { return 1; },
            [&](const C2Binary&) -> std::size_t { return 1; },
            [&](const C2Not& n) -> std::size_t { return 1 + node_count(n.arg); },
            [&](const C2And& a) -> std::size_t {
                return 1 + node_count(a.lhs) + node_count(a.rhs);
            },
            [&](const C2Count& c) -> std::size_t { return 2 + node_count(c.body); },
        },
        f.node());
}

}  // namespace cardinal
