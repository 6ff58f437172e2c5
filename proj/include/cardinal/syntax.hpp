#pragma once

// Core concept language: atoms, nominals, top, negation, conjunction and
// qualified at-least restrictions over (possibly inverted) roles.  Everything
// else the surface syntax offers is sugar and lives in surface.hpp.
//
// All values in this header are immutable after construction and cheap to
// copy (shared subtrees).  TBoxes have set semantics: duplicates collapse and
// members are kept in canonical (rendered-text) order, so equal boxes compare
// equal and every traversal is deterministic.

#include <algorithm>
#include <cstddef>
#include <memory>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace cardinal {

/// Unbounded natural number; counting bounds never silently overflow.
using Nat = boost::multiprecision::cpp_int;

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Helper for std::visit.
template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// ---------------------------------------------------------------------------
// Roles
// ---------------------------------------------------------------------------

/// A role name or its converse.  `inverted` is the only inversion marker, so
/// double inversion is not representable.
struct RoleExpr {
    std::string name;
    bool inverted = false;

    [[nodiscard]] RoleExpr inverse() const { return RoleExpr{name, !inverted}; }

    friend bool operator==(const RoleExpr&, const RoleExpr&) = default;
};

inline RoleExpr role(std::string name) { return RoleExpr{std::move(name), false}; }
inline RoleExpr inverse_role(std::string name) { return RoleExpr{std::move(name), true}; }

// ---------------------------------------------------------------------------
// Concepts
// ---------------------------------------------------------------------------

class Concept;

struct AtomicConcept {
    std::string name;
};
struct NominalConcept {
    std::string name;
};
struct TopConcept {};
struct NotConcept;
struct AndConcept;
struct AtLeastConcept;

/// An immutable core concept term.
class Concept {
public:
    using Node = std::variant<AtomicConcept, NominalConcept, TopConcept, NotConcept,
                              AndConcept, AtLeastConcept>;

    static Concept atomic(std::string name);
    static Concept nominal(std::string name);
    static Concept top();
    static Concept negation(Concept arg);
    static Concept conjunction(Concept lhs, Concept rhs);
    static Concept at_least(Nat bound, RoleExpr role, Concept qualifier);

    const Node& node() const;
    bool is_top() const;

    friend bool operator==(const Concept& a, const Concept& b);

private:
    explicit Concept(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

struct NotConcept {
    Concept arg;
};
struct AndConcept {
    Concept lhs;
    Concept rhs;
};
struct AtLeastConcept {
    Nat bound;
    RoleExpr role;
    Concept qualifier;
};

inline Concept Concept::atomic(std::string name) {
    return Concept(std::make_shared<const Node>(AtomicConcept{std::move(name)}));
}
inline Concept Concept::nominal(std::string name) {
    return Concept(std::make_shared<const Node>(NominalConcept{std::move(name)}));
}
inline Concept Concept::top() {
    return Concept(std::make_shared<const Node>(TopConcept{}));
}
inline Concept Concept::negation(Concept arg) {
    return Concept(std::make_shared<const Node>(NotConcept{std::move(arg)}));
}
inline Concept Concept::conjunction(Concept lhs, Concept rhs) {
    return Concept(std::make_shared<const Node>(AndConcept{std::move(lhs), std::move(rhs)}));
}
inline Concept Concept::at_least(Nat bound, RoleExpr role, Concept qualifier) {
    if (bound < 0) throw Error("at-least bound must be a natural number");
    return Concept(std::make_shared<const Node>(
        AtLeastConcept{std::move(bound), std::move(role), std::move(qualifier)}));
}

inline const Concept::Node& Concept::node() const { return *node_; }

inline bool Concept::is_top() const { return std::holds_alternative<TopConcept>(*node_); }

inline bool operator==(const Concept& a, const Concept& b) {
    if (a.node_ == b.node_) return true;
    if (a.node_->index() != b.node_->index()) return false;
    return std::visit(
        overloaded{
            [&](const AtomicConcept& x) { return x.name == std::get<AtomicConcept>(*b.node_).name; },
            [&](const NominalConcept& x) { return x.name == std::get<NominalConcept>(*b.node_).name; },
            [&](const TopConcept&) { return true; },
            [&](const NotConcept& x) { return x.arg == std::get<NotConcept>(*b.node_).arg; },
            [&](const AndConcept& x) {
                const auto& y = std::get<AndConcept>(*b.node_);
                return x.lhs == y.lhs && x.rhs == y.rhs;
            },
            [&](const AtLeastConcept& x) {
                const auto& y = std::get<AtLeastConcept>(*b.node_);
                return x.bound == y.bound && x.role == y.role && x.qualifier == y.qualifier;
            },
        },
        *a.node_);
}

inline bool operator!=(const Concept& a, const Concept& b) { return !(a == b); }

/// Right-fold conjunction; the empty conjunction is top.
inline Concept conjunction_of(const std::vector<Concept>& parts) {
    if (parts.empty()) return Concept::top();
    Concept acc = parts.back();
    for (std::size_t i = parts.size() - 1; i-- > 0;)
        acc = Concept::conjunction(parts[i], std::move(acc));
    return acc;
}

// ---------------------------------------------------------------------------
// TBoxes
// ---------------------------------------------------------------------------

/// A global bound on the size of a concept's extension.
struct CardRestriction {
    enum class Kind { AtLeast, AtMost };
    Kind kind;
    Nat bound;
    Concept subject;

    friend bool operator==(const CardRestriction& a, const CardRestriction& b) {
        return a.kind == b.kind && a.bound == b.bound && a.subject == b.subject;
    }
};

/// A general concept inclusion axiom lhs ⊑ rhs.
struct Gci {
    Concept lhs;
    Concept rhs;

    friend bool operator==(const Gci& a, const Gci& b) { return a.lhs == b.lhs && a.rhs == b.rhs; }
};

// ---------------------------------------------------------------------------
// Rendering (canonical text, defined before the boxes that sort by it)
// ---------------------------------------------------------------------------

inline std::string render(const RoleExpr& r) {
    return r.inverted ? "inv(" + r.name + ")" : r.name;
}

inline void render_to(std::ostream& out, const Concept& c) {
    std::visit(overloaded{
                   [&](const AtomicConcept& a) { out << a.name; },
                   [&](const NominalConcept& n) { out << '{' << n.name << '}'; },
                   [&](const TopConcept&) { out << "top"; },
                   [&](const NotConcept& n) {
                       out << "not ";
                       render_to(out, n.arg);
                   },
                   [&](const AndConcept& a) {
                       out << '(';
                       render_to(out, a.lhs);
                       out << " & ";
                       render_to(out, a.rhs);
                       out << ')';
                   },
                   [&](const AtLeastConcept& a) {
                       out << "atleast " << a.bound.str() << ' ' << render(a.role) << " . ";
                       render_to(out, a.qualifier);
                   },
               },
               c.node());
}

inline std::string render(const Concept& c) {
    std::ostringstream out;
    render_to(out, c);
    return out.str();
}

inline std::string render(const CardRestriction& r) {
    std::ostringstream out;
    out << "card " << (r.kind == CardRestriction::Kind::AtLeast ? "atleast" : "atmost") << ' '
        << r.bound.str() << " : ";
    render_to(out, r.subject);
    return out.str();
}

inline std::string render(const Gci& g) {
    std::ostringstream out;
    out << "gci ";
    render_to(out, g.lhs);
    out << " => ";
    render_to(out, g.rhs);
    return out.str();
}

namespace detail {

// Canonical order: lexicographic on rendered text.  Rendering is injective on
// core terms (it round-trips through the parser), so text dedup equals value
// dedup.
template <typename Item>
std::vector<Item> canonicalize(std::vector<Item> items) {
    std::vector<std::pair<std::string, Item>> keyed;
    keyed.reserve(items.size());
    for (auto& it : items) keyed.emplace_back(render(it), std::move(it));
    std::sort(keyed.begin(), keyed.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Item> out;
    out.reserve(keyed.size());
    for (auto& [key, it] : keyed) {
        if (!out.empty() && key == render(out.back())) continue;
        out.push_back(std::move(it));
    }
    return out;
}

}  // namespace detail

/// A finite set of cardinality restrictions, kept in canonical order.
class TcBox {
public:
    TcBox() = default;
    explicit TcBox(std::vector<CardRestriction> restrictions)
        : restrictions_(detail::canonicalize(std::move(restrictions))) {}

    const std::vector<CardRestriction>& restrictions() const { return restrictions_; }
    bool empty() const { return restrictions_.empty(); }
    std::size_t size() const { return restrictions_.size(); }
    auto begin() const { return restrictions_.begin(); }
    auto end() const { return restrictions_.end(); }

    friend bool operator==(const TcBox& a, const TcBox& b) {
        return a.restrictions_ == b.restrictions_;
    }

private:
    std::vector<CardRestriction> restrictions_;
};

/// A finite set of general inclusion axioms, kept in canonical order.
class TiBox {
public:
    TiBox() = default;
    explicit TiBox(std::vector<Gci> axioms) : axioms_(detail::canonicalize(std::move(axioms))) {}

    const std::vector<Gci>& axioms() const { return axioms_; }
    bool empty() const { return axioms_.empty(); }
    std::size_t size() const { return axioms_.size(); }
    auto begin() const { return axioms_.begin(); }
    auto end() const { return axioms_.end(); }

    friend bool operator==(const TiBox& a, const TiBox& b) { return a.axioms_ == b.axioms_; }

private:
    std::vector<Gci> axioms_;
};

inline std::string render(const TcBox& t) {
    std::ostringstream out;
    for (const auto& r : t) out << render(r) << '\n';
    return out.str();
}

inline std::string render(const TiBox& t) {
    std::ostringstream out;
    for (const auto& g : t) out << render(g) << '\n';
    return out.str();
}

// ---------------------------------------------------------------------------
// Signatures
// ---------------------------------------------------------------------------

/// The names occurring in a term or box, split by category.  The three
/// categories must be pairwise disjoint.
struct Signature {
    std::set<std::string> concepts;
    std::set<std::string> roles;
    std::set<std::string> individuals;

    void merge(const Signature& other) {
        concepts.insert(other.concepts.begin(), other.concepts.end());
        roles.insert(other.roles.begin(), other.roles.end());
        individuals.insert(other.individuals.begin(), other.individuals.end());
    }

    bool contains(const Signature& other) const {
        return std::includes(concepts.begin(), concepts.end(), other.concepts.begin(),
                             other.concepts.end()) &&
               std::includes(roles.begin(), roles.end(), other.roles.begin(),
                             other.roles.end()) &&
               std::includes(individuals.begin(), individuals.end(), other.individuals.begin(),
                             other.individuals.end());
    }

    /// Throws if a name is used in more than one category.
    void check_disjoint() const {
        auto clash = [](const std::set<std::string>& a, const std::set<std::string>& b,
                        const char* what) {
            for (const auto& name : a)
                if (b.count(name))
                    throw Error("name '" + name + "' used both as " + what);
        };
        clash(concepts, roles, "concept and role");
        clash(concepts, individuals, "concept and individual");
        clash(roles, individuals, "role and individual");
    }

    friend bool operator==(const Signature&, const Signature&) = default;
};

inline void collect_signature(const Concept& c, Signature& sig) {
    std::visit(overloaded{
                   [&](const AtomicConcept& a) { sig.concepts.insert(a.name); },
                   [&](const NominalConcept& n) { sig.individuals.insert(n.name); },
                   [&](const TopConcept&) {},
                   [&](const NotConcept& n) { collect_signature(n.arg, sig); },
                   [&](const AndConcept& a) {
                       collect_signature(a.lhs, sig);
                       collect_signature(a.rhs, sig);
                   },
                   [&](const AtLeastConcept& a) {
                       sig.roles.insert(a.role.name);
                       collect_signature(a.qualifier, sig);
                   },
               },
               c.node());
}

inline Signature signature_of(const Concept& c) {
    Signature sig;
    collect_signature(c, sig);
    sig.check_disjoint();
    return sig;
}

inline Signature signature_of(const CardRestriction& r) { return signature_of(r.subject); }

inline Signature signature_of(const Gci& g) {
    Signature sig;
    collect_signature(g.lhs, sig);
    collect_signature(g.rhs, sig);
    sig.check_disjoint();
    return sig;
}

inline Signature signature_of(const TcBox& t) {
    Signature sig;
    for (const auto& r : t) collect_signature(r.subject, sig);
    sig.check_disjoint();
    return sig;
}

inline Signature signature_of(const TiBox& t) {
    Signature sig;
    for (const auto& g : t) {
        collect_signature(g.lhs, sig);
        collect_signature(g.rhs, sig);
    }
    sig.check_disjoint();
    return sig;
}

// ---------------------------------------------------------------------------
// Sizes
// ---------------------------------------------------------------------------

enum class NumberCoding { Unary, Binary };

/// Cost contributed by a numeric bound: max(n,1) under unary coding,
/// max(ceil(log2(n+1)),1) under binary coding.
inline Nat bound_cost(const Nat& n, NumberCoding coding) {
    if (coding == NumberCoding::Unary) return n > 1 ? n : Nat(1);
    if (n == 0) return 1;
    return Nat(boost::multiprecision::msb(n) + 1);
}

inline Nat concept_size(const Concept& c, NumberCoding coding) {
    return std::visit(overloaded{
                          [&](const AtomicConcept&) { return Nat(1); },
                          [&](const NominalConcept&) { return Nat(1); },
                          [&](const TopConcept&) { return Nat(1); },
                          [&](const NotConcept& n) { return Nat(1) + concept_size(n.arg, coding); },
                          [&](const AndConcept& a) {
                              return Nat(1) + concept_size(a.lhs, coding) +
                                     concept_size(a.rhs, coding);
                          },
                          [&](const AtLeastConcept& a) {
                              // constructor node, bound, role, qualifier
                              return Nat(2) + bound_cost(a.bound, coding) +
                                     concept_size(a.qualifier, coding);
                          },
                      },
                      c.node());
}

inline Nat tbox_size(const TcBox& t, NumberCoding coding) {
    Nat total = 0;
    for (const auto& r : t)
        total += Nat(1) + bound_cost(r.bound, coding) + concept_size(r.subject, coding);
    return total;
}

inline Nat tbox_size(const TiBox& t, NumberCoding coding) {
    Nat total = 0;
    for (const auto& g : t)
        total += Nat(1) + concept_size(g.lhs, coding) + concept_size(g.rhs, coding);
    return total;
}

/// Plain structural node count (each constructor, role and bound counts 1).
inline std::size_t node_count(const Concept& c) {
    return std::visit(
        overloaded{
            [&](const AtomicConcept&) -> std::size_t { return 1; },
            [&](const NominalConcept&) -> std::size_t { return 1; },
            [&](const TopConcept&) -> std::size_t { return 1; },
            [&](const NotConcept& n) -> std::size_t { return 1 + node_count(n.arg); },
            [&](const AndConcept& a) -> std::size_t {
                return 1 + node_count(a.lhs) + node_count(a.rhs);
            },
            [&](const AtLeastConcept& a) -> std::size_t { return 3 + node_count(a.qualifier); },
        },
        c.node());
}

inline std::size_t node_count(const TcBox& t) {
    std::size_t total = 0;
    for (const auto& r : t) total += 2 + node_count(r.subject);
    return total;
}

inline std::size_t node_count(const TiBox& t) {
    std::size_t total = 0;
    for (const auto& g : t) total += 1 + node_count(g.lhs) + node_count(g.rhs);
    return total;
}

}  // namespace cardinal
