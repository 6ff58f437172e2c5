#pragma once

// Bounded consistency oracle: searches for a model of a TBox over domains of
// size 1..k.  A ConsistentWitness verdict carries a model that is re-checked
// through the semantics module before being returned; NoModelUpTo(k) means
// the search exhausted every interpretation of the TBox's signature with at
// most k elements.  The search enumerates only names from the (effective)
// signature; fresh names never appear in a witness.
//
// Search order, which fixes the canonical witness: domain sizes ascending;
// within a size, nominal placements (names in lexicographic order, elements
// ascending), then concept membership cells in (name, element) order, then
// role edge cells in (name, source, target) order, trying "absent" before
// "present".  The first model found is therefore the least model in that
// order.  Pruning uses a three-valued evaluation of all constraints plus
// failed-literal propagation (a cell whose tentative value immediately
// violates a constraint is forced to the opposite value), both of which only
// ever discard non-models, so the canonical witness is unaffected.
//
// The engine is single-threaded; verdicts are deterministic functions of the
// input, and Verdict::canonical_witness records that the witness is the
// canonical one.

#include <bit>
#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cardinal/interpretation.hpp"
#include "cardinal/syntax.hpp"

namespace cardinal {

struct SearchOptions {
    /// Largest domain size to try; must be between 1 and 64.
    std::size_t max_domain_size = 4;
    /// Require distinct individual names to denote distinct elements.
    bool unique_name_assumption = false;
    /// Optional wall-clock budget for the whole search.
    std::optional<std::chrono::milliseconds> deadline;
    /// Search over this signature instead of the TBox's own.  Must contain
    /// the TBox's signature; useful to bring extra individual names into
    /// scope, which matters under the unique name assumption.
    std::optional<Signature> signature;
};

struct ConsistentWitness {
    Interpretation model;
};

struct NoModelUpTo {
    std::size_t bound;
};

struct Verdict {
    std::variant<ConsistentWitness, NoModelUpTo> outcome;
    /// True when the witness is the first model in the documented search
    /// order (always the case for this single-worker engine).
    bool canonical_witness = true;

    bool consistent() const { return std::holds_alternative<ConsistentWitness>(outcome); }
    const Interpretation& witness() const { return std::get<ConsistentWitness>(outcome).model; }
    std::size_t exhausted_bound() const { return std::get<NoModelUpTo>(outcome).bound; }
};

/// Raised when the deadline expires; reports the largest domain size whose
/// search completed exhaustively.
class DeadlineExceeded : public Error {
public:
    explicit DeadlineExceeded(std::size_t completed)
        : Error("search deadline exceeded; domain sizes exhausted up to " +
                std::to_string(completed)),
          completed_bound(completed) {}

    std::size_t completed_bound;
};

namespace detail {

using Mask = std::uint64_t;

// Concepts compiled against the effective signature: names become indices and
// counting bounds are clamped to 65 (a count over a <=64-element domain never
// reaches 65, so clamped bounds behave exactly like the originals).
struct CExpr {
    enum class Op : std::uint8_t { Atom, Nominal, Top, Not, And, AtLeast };
    Op op;
    std::int32_t index = -1;
    std::int32_t role = -1;
    bool inverted = false;
    unsigned bound = 0;
    std::vector<CExpr> kids;
};

struct CConstraint {
    enum class Kind : std::uint8_t { CardAtLeast, CardAtMost, Inclusion };
    Kind kind;
    unsigned bound = 0;
    CExpr lhs;
    std::optional<CExpr> rhs;  // Inclusion only
};

struct SearchState {
    // Three-valued cells: a bit set in *_poss but not in *_true is unknown;
    // the invariant true subset-of poss always holds.
    std::vector<Mask> concept_true, concept_poss;  // [concept]
    std::vector<Mask> row_true, row_poss;          // [role*m + source] -> targets
    std::vector<Mask> col_true, col_poss;          // [role*m + target] -> sources
    std::vector<int> nominal_at;                   // [nominal] element, -1 unplaced
};

/// Sorted name lists shared by compilation and search.
struct NameTable {
    std::vector<std::string> concepts, roles, nominals;

    explicit NameTable(const Signature& sig)
        : concepts(sig.concepts.begin(), sig.concepts.end()),
          roles(sig.roles.begin(), sig.roles.end()),
          nominals(sig.individuals.begin(), sig.individuals.end()) {}

    static std::int32_t index_in(const std::vector<std::string>& names, const std::string& name) {
        auto it = std::lower_bound(names.begin(), names.end(), name);
        if (it == names.end() || *it != name)
            throw std::logic_error("name outside the search signature: " + name);
        return static_cast<std::int32_t>(it - names.begin());
    }

    std::int32_t concept_index(const std::string& name) const { return index_in(concepts, name); }
    std::int32_t role_index(const std::string& name) const { return index_in(roles, name); }
    std::int32_t nominal_index(const std::string& name) const { return index_in(nominals, name); }
};

class ModelSearch {
public:
    ModelSearch(const NameTable& names, std::vector<CConstraint> constraints,
                const SearchOptions& opts)
        : opts_(opts),
          constraints_(std::move(constraints)),
          concept_names_(names.concepts),
          role_names_(names.roles),
          nominal_names_(names.nominals) {
        build_affect_maps();
        if (opts_.deadline)
            deadline_at_ = std::chrono::steady_clock::now() + *opts_.deadline;
    }

    template <typename Verify>
    Verdict run(Verify&& verify_model) {
        for (std::size_t m = 1; m <= opts_.max_domain_size; ++m) {
            m_ = m;
            full_ = m == 64 ? ~Mask{0} : ((Mask{1} << m) - 1);
            build_cells();
            SearchState state = initial_state();
            if (place_nominals(state, 0)) {
                Interpretation model = reconstruct(witness_);
                if (!verify_model(model))
                    throw std::logic_error("model search returned a non-model witness");
                return Verdict{ConsistentWitness{std::move(model)}, true};
            }
            completed_ = m;
        }
        return Verdict{NoModelUpTo{opts_.max_domain_size}, true};
    }

private:
    enum class Status : std::uint8_t { Violated, Unknown, Satisfied };

    struct Cell {
        enum class Kind : std::uint8_t { Concept, Role };
        Kind kind;
        std::int32_t idx;
        std::int32_t a;
        std::int32_t b;
    };

    struct Bounds {
        Mask lo;  // definitely in
        Mask hi;  // possibly in
    };

    void build_affect_maps() {
        affect_concept_.assign(concept_names_.size(), {});
        affect_role_.assign(role_names_.size(), {});
        affect_nominal_.assign(nominal_names_.size(), {});
        for (std::size_t i = 0; i < constraints_.size(); ++i) {
            collect(constraints_[i].lhs, i);
            if (constraints_[i].rhs) collect(*constraints_[i].rhs, i);
        }
    }

    void collect(const CExpr& e, std::size_t constraint) {
        auto add = [&](std::vector<std::vector<std::size_t>>& map, std::int32_t idx) {
            auto& list = map[static_cast<std::size_t>(idx)];
            if (list.empty() || list.back() != constraint) list.push_back(constraint);
        };
        switch (e.op) {
            case CExpr::Op::Atom: add(affect_concept_, e.index); break;
            case CExpr::Op::Nominal: add(affect_nominal_, e.index); break;
            case CExpr::Op::AtLeast: add(affect_role_, e.role); break;
            default: break;
        }
        for (const CExpr& kid : e.kids) collect(kid, constraint);
    }

    void build_cells() {
        cells_.clear();
        for (std::size_t c = 0; c < concept_names_.size(); ++c)
            for (std::size_t a = 0; a < m_; ++a)
                cells_.push_back(Cell{Cell::Kind::Concept, static_cast<std::int32_t>(c),
                                      static_cast<std::int32_t>(a), -1});
        for (std::size_t r = 0; r < role_names_.size(); ++r)
            for (std::size_t a = 0; a < m_; ++a)
                for (std::size_t b = 0; b < m_; ++b)
                    cells_.push_back(Cell{Cell::Kind::Role, static_cast<std::int32_t>(r),
                                          static_cast<std::int32_t>(a),
                                          static_cast<std::int32_t>(b)});
    }

    SearchState initial_state() const {
        SearchState st;
        st.concept_true.assign(concept_names_.size(), 0);
        st.concept_poss.assign(concept_names_.size(), full_);
        st.row_true.assign(role_names_.size() * m_, 0);
        st.row_poss.assign(role_names_.size() * m_, full_);
        st.col_true.assign(role_names_.size() * m_, 0);
        st.col_poss.assign(role_names_.size() * m_, full_);
        st.nominal_at.assign(nominal_names_.size(), -1);
        return st;
    }

    bool is_unknown(const SearchState& st, const Cell& cell) const {
        if (cell.kind == Cell::Kind::Concept) {
            Mask bit = Mask{1} << cell.a;
            return (st.concept_poss[cell.idx] & bit) && !(st.concept_true[cell.idx] & bit);
        }
        Mask bit = Mask{1} << cell.b;
        std::size_t row = static_cast<std::size_t>(cell.idx) * m_ + cell.a;
        return (st.row_poss[row] & bit) && !(st.row_true[row] & bit);
    }

    void assign(SearchState& st, const Cell& cell, bool value) const {
        if (cell.kind == Cell::Kind::Concept) {
            Mask bit = Mask{1} << cell.a;
            if (value)
                st.concept_true[cell.idx] |= bit;
            else
                st.concept_poss[cell.idx] &= ~bit;
            return;
        }
        std::size_t row = static_cast<std::size_t>(cell.idx) * m_ + cell.a;
        std::size_t col = static_cast<std::size_t>(cell.idx) * m_ + cell.b;
        if (value) {
            st.row_true[row] |= Mask{1} << cell.b;
            st.col_true[col] |= Mask{1} << cell.a;
        } else {
            st.row_poss[row] &= ~(Mask{1} << cell.b);
            st.col_poss[col] &= ~(Mask{1} << cell.a);
        }
    }

    void unassign(SearchState& st, const Cell& cell) const {
        if (cell.kind == Cell::Kind::Concept) {
            Mask bit = Mask{1} << cell.a;
            st.concept_true[cell.idx] &= ~bit;
            st.concept_poss[cell.idx] |= bit;
            return;
        }
        std::size_t row = static_cast<std::size_t>(cell.idx) * m_ + cell.a;
        std::size_t col = static_cast<std::size_t>(cell.idx) * m_ + cell.b;
        st.row_true[row] &= ~(Mask{1} << cell.b);
        st.row_poss[row] |= Mask{1} << cell.b;
        st.col_true[col] &= ~(Mask{1} << cell.a);
        st.col_poss[col] |= Mask{1} << cell.a;
    }

    Bounds eval(const CExpr& e, const SearchState& st) const {
        switch (e.op) {
            case CExpr::Op::Atom:
                return {st.concept_true[e.index], st.concept_poss[e.index]};
            case CExpr::Op::Nominal: {
                int at = st.nominal_at[e.index];
                if (at < 0) return {0, full_};
                Mask bit = Mask{1} << at;
                return {bit, bit};
            }
            case CExpr::Op::Top:
                return {full_, full_};
            case CExpr::Op::Not: {
                Bounds kid = eval(e.kids[0], st);
                return {full_ & ~kid.hi, full_ & ~kid.lo};
            }
            case CExpr::Op::And: {
                Bounds l = eval(e.kids[0], st);
                Bounds r = eval(e.kids[1], st);
                return {l.lo & r.lo, l.hi & r.hi};
            }
            case CExpr::Op::AtLeast: {
                Bounds kid = eval(e.kids[0], st);
                const Mask* sure = e.inverted ? &st.col_true[0] : &st.row_true[0];
                const Mask* poss = e.inverted ? &st.col_poss[0] : &st.row_poss[0];
                std::size_t base = static_cast<std::size_t>(e.role) * m_;
                Bounds out{0, 0};
                for (std::size_t a = 0; a < m_; ++a) {
                    unsigned definite =
                        static_cast<unsigned>(std::popcount(sure[base + a] & kid.lo));
                    unsigned possible =
                        static_cast<unsigned>(std::popcount(poss[base + a] & kid.hi));
                    if (definite >= e.bound) out.lo |= Mask{1} << a;
                    if (possible >= e.bound) out.hi |= Mask{1} << a;
                }
                return out;
            }
        }
        return {0, full_};  // unreachable
    }

    Status status(const CConstraint& con, const SearchState& st) const {
        Bounds l = eval(con.lhs, st);
        switch (con.kind) {
            case CConstraint::Kind::CardAtLeast: {
                if (static_cast<unsigned>(std::popcount(l.hi)) < con.bound) return Status::Violated;
                if (static_cast<unsigned>(std::popcount(l.lo)) >= con.bound)
                    return Status::Satisfied;
                return Status::Unknown;
            }
            case CConstraint::Kind::CardAtMost: {
                if (static_cast<unsigned>(std::popcount(l.lo)) > con.bound) return Status::Violated;
                if (static_cast<unsigned>(std::popcount(l.hi)) <= con.bound)
                    return Status::Satisfied;
                return Status::Unknown;
            }
            case CConstraint::Kind::Inclusion: {
                Bounds r = eval(*con.rhs, st);
                if (l.lo & ~r.hi) return Status::Violated;
                if ((l.hi & ~r.lo) == 0) return Status::Satisfied;
                return Status::Unknown;
            }
        }
        return Status::Unknown;  // unreachable
    }

    const std::vector<std::size_t>& affected(const Cell& cell) const {
        return cell.kind == Cell::Kind::Concept ? affect_concept_[cell.idx]
                                                : affect_role_[cell.idx];
    }

    bool probe(SearchState& st, const Cell& cell, bool value) const {
        assign(st, cell, value);
        bool violated = false;
        for (std::size_t ci : affected(cell)) {
            if (status(constraints_[ci], st) == Status::Violated) {
                violated = true;
                break;
            }
        }
        unassign(st, cell);
        return violated;
    }

    void check_deadline() {
        if (!deadline_at_) return;
        if ((++ticks_ & 0x3ff) != 0) return;
        if (std::chrono::steady_clock::now() >= *deadline_at_)
            throw DeadlineExceeded(completed_);
    }

    // Runs the three-valued check over all constraints and forces cells whose
    // tentative value immediately violates one, until a fixpoint.  Returns
    // false on conflict.  Only non-models are ever discarded here.
    bool propagate(SearchState& st) {
        check_deadline();
        bool changed = true;
        while (changed) {
            changed = false;
            for (const CConstraint& con : constraints_)
                if (status(con, st) == Status::Violated) return false;
            for (const Cell& cell : cells_) {
                if (!is_unknown(st, cell)) continue;
                bool bad_false = probe(st, cell, false);
                bool bad_true = probe(st, cell, true);
                if (bad_false && bad_true) return false;
                if (bad_false) {
                    assign(st, cell, true);
                    changed = true;
                } else if (bad_true) {
                    assign(st, cell, false);
                    changed = true;
                }
            }
            check_deadline();
        }
        return true;
    }

    bool place_nominals(SearchState& st, std::size_t idx) {
        if (!propagate(st)) return false;
        if (idx == nominal_names_.size()) return search(st);
        for (std::size_t e = 0; e < m_; ++e) {
            if (opts_.unique_name_assumption) {
                bool used = false;
                for (std::size_t j = 0; j < idx; ++j)
                    if (st.nominal_at[j] == static_cast<int>(e)) used = true;
                if (used) continue;
            }
            SearchState child = st;
            child.nominal_at[idx] = static_cast<int>(e);
            if (place_nominals(child, idx + 1)) return true;
        }
        return false;
    }

    bool search(SearchState& st) {
        if (!propagate(st)) return false;
        const Cell* open = nullptr;
        for (const Cell& cell : cells_) {
            if (is_unknown(st, cell)) {
                open = &cell;
                break;
            }
        }
        if (!open) {
            // Fully assigned and not violated: every constraint is satisfied.
            witness_ = st;
            return true;
        }
        for (bool value : {false, true}) {
            SearchState child = st;
            assign(child, *open, value);
            if (search(child)) return true;
        }
        return false;
    }

    Interpretation reconstruct(const SearchState& st) const {
        Interpretation out;
        out.domain_size = m_;
        for (std::size_t c = 0; c < concept_names_.size(); ++c) {
            auto& ext = out.concepts[concept_names_[c]];
            for (std::size_t a = 0; a < m_; ++a)
                if (st.concept_true[c] & (Mask{1} << a)) ext.insert(a);
        }
        for (std::size_t r = 0; r < role_names_.size(); ++r) {
            auto& pairs = out.roles[role_names_[r]];
            for (std::size_t a = 0; a < m_; ++a)
                for (std::size_t b = 0; b < m_; ++b)
                    if (st.row_true[r * m_ + a] & (Mask{1} << b)) pairs.emplace(a, b);
        }
        for (std::size_t n = 0; n < nominal_names_.size(); ++n)
            out.nominals[nominal_names_[n]] = static_cast<Element>(st.nominal_at[n]);
        return out;
    }

    SearchOptions opts_;
    std::vector<CConstraint> constraints_;
    std::vector<std::string> concept_names_, role_names_, nominal_names_;
    std::vector<std::vector<std::size_t>> affect_concept_, affect_role_, affect_nominal_;
    std::vector<Cell> cells_;
    std::size_t m_ = 1;
    Mask full_ = 1;
    std::size_t completed_ = 0;
    std::size_t ticks_ = 0;
    std::optional<std::chrono::steady_clock::time_point> deadline_at_;
    SearchState witness_;
};

inline CExpr compile_concept(const Concept& c, const NameTable& names) {
    return std::visit(
        overloaded{
            [&](const AtomicConcept& a) {
                CExpr e{CExpr::Op::Atom};
                e.index = names.concept_index(a.name);
                return e;
            },
            [&](const NominalConcept& n) {
                CExpr e{CExpr::Op::Nominal};
                e.index = names.nominal_index(n.name);
                return e;
            },
            [&](const TopConcept&) { return CExpr{CExpr::Op::Top}; },
            [&](const NotConcept& n) {
                CExpr e{CExpr::Op::Not};
                e.kids.push_back(compile_concept(n.arg, names));
                return e;
            },
            [&](const AndConcept& a) {
                CExpr e{CExpr::Op::And};
                e.kids.push_back(compile_concept(a.lhs, names));
                e.kids.push_back(compile_concept(a.rhs, names));
                return e;
            },
            [&](const AtLeastConcept& a) {
                CExpr e{CExpr::Op::AtLeast};
                e.role = names.role_index(a.role.name);
                e.inverted = a.role.inverted;
                e.bound = a.bound > 65 ? 65u : static_cast<unsigned>(a.bound);
                e.kids.push_back(compile_concept(a.qualifier, names));
                return e;
            },
        },
        c.node());
}

inline unsigned clamp_bound(const Nat& n) { return n > 65 ? 65u : static_cast<unsigned>(n); }

inline Signature effective_signature(const Signature& own, const SearchOptions& opts) {
    if (!opts.signature) return own;
    opts.signature->check_disjoint();
    if (!opts.signature->contains(own))
        throw Error("search signature does not cover the TBox's signature");
    return *opts.signature;
}

inline void validate_options(const SearchOptions& opts) {
    if (opts.max_domain_size < 1) throw Error("domain size bound must be at least 1");
    if (opts.max_domain_size > 64)
        throw Error("domain size bounds above 64 are not supported by the search engine");
}

}  // namespace detail

/// Searches for a model of a cardinality TBox over domains of size 1..k.
inline Verdict find_model(const TcBox& t, const SearchOptions& opts = {}) {
    detail::validate_options(opts);
    detail::NameTable names(detail::effective_signature(signature_of(t), opts));
    std::vector<detail::CConstraint> constraints;
    constraints.reserve(t.size());
    for (const auto& r : t) {
        constraints.push_back(detail::CConstraint{r.kind == CardRestriction::Kind::AtLeast
                                                      ? detail::CConstraint::Kind::CardAtLeast
                                                      : detail::CConstraint::Kind::CardAtMost,
                                                  detail::clamp_bound(r.bound),
                                                  detail::compile_concept(r.subject, names),
                                                  std::nullopt});
    }
    detail::ModelSearch search(names, std::move(constraints), opts);
    return search.run([&](const Interpretation& i) { return is_model(i, t); });
}

/// Searches for a model of an inclusion TBox over domains of size 1..k.
inline Verdict find_model(const TiBox& t, const SearchOptions& opts = {}) {
    detail::validate_options(opts);
    detail::NameTable names(detail::effective_signature(signature_of(t), opts));
    std::vector<detail::CConstraint> constraints;
    constraints.reserve(t.size());
    for (const auto& g : t) {
        constraints.push_back(detail::CConstraint{detail::CConstraint::Kind::Inclusion, 0,
                                                  detail::compile_concept(g.lhs, names),
                                                  detail::compile_concept(g.rhs, names)});
    }
    detail::ModelSearch search(names, std::move(constraints), opts);
    return search.run([&](const Interpretation& i) { return is_model(i, t); });
}

}  // namespace cardinal
