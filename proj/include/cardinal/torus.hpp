#pragma once

// Generators and checkers for the exponential-torus gadget: TBoxes whose
// models are exactly the 2^n x 2^n grid with wraparound successor roles
// "east" and "north".  An element's coordinates are coded in the concepts
// X0..X{n-1} and Y0..Y{n-1}: bit k of the x coordinate is membership in Xk.
//
// The increment concepts follow the carry-chain characterisation of binary
// successor: if all bits below k are set, bit k flips along the role; if some
// bit below k is clear, bit k is preserved.  is_increment_mod_pow2 evaluates
// that characterisation directly on bit vectors (the arithmetic reading is
// the test oracle, not the implementation).

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cardinal/interpretation.hpp"
#include "cardinal/surface.hpp"
#include "cardinal/syntax.hpp"

namespace cardinal {

/// Concept/role names used by the torus TBoxes.
inline std::string x_bit_name(std::size_t k) { return "X" + std::to_string(k); }
inline std::string y_bit_name(std::size_t k) { return "Y" + std::to_string(k); }
inline const std::string kEastRole = "east";
inline const std::string kNorthRole = "north";
inline const std::string kCreateRole = "create";
inline const std::string kCornerNominal = "o";

/// True iff xp reads as x+1 modulo 2^n, decided by the carry-chain formula
/// over the bit vectors (least significant bit first), not by arithmetic.
inline bool is_increment_mod_pow2(const std::vector<bool>& x, const std::vector<bool>& xp) {
    if (x.size() != xp.size()) throw Error("bit vectors differ in length");
    const std::size_t n = x.size();
    for (std::size_t k = 0; k < n; ++k) {
        bool all_below_set = true;
        for (std::size_t j = 0; j < k; ++j) all_below_set = all_below_set && x[j];
        if (all_below_set && !(x[k] != xp[k])) return false;
        bool some_below_clear = false;
        for (std::size_t j = 0; j < k; ++j) some_below_clear = some_below_clear || !x[j];
        if (some_below_clear && x[k] != xp[k]) return false;
    }
    return true;
}

/// Reads an element's grid position from its X/Y bit concepts.  Every Xk and
/// Yk for k < n must be interpreted (an explicitly empty valuation counts).
inline std::pair<std::size_t, std::size_t> grid_position(const Interpretation& i, Element a,
                                                         std::size_t n) {
    if (n >= 32) throw Error("torus exponent too large");
    std::size_t x = 0, y = 0;
    for (std::size_t k = 0; k < n; ++k) {
        auto xit = i.concepts.find(x_bit_name(k));
        auto yit = i.concepts.find(y_bit_name(k));
        if (xit == i.concepts.end()) throw Error("missing concept " + x_bit_name(k));
        if (yit == i.concepts.end()) throw Error("missing concept " + y_bit_name(k));
        if (xit->second.count(a)) x |= std::size_t{1} << k;
        if (yit->second.count(a)) y |= std::size_t{1} << k;
    }
    return {x, y};
}

/// The concept whose extension is exactly the elements at position (x, y):
/// a conjunction of positive or negated bit concepts matching the two
/// coordinates' binary representations.
inline Concept position_concept(std::size_t n, std::size_t x, std::size_t y) {
    if (n >= 32) throw Error("torus exponent too large");
    const std::size_t side = std::size_t{1} << n;
    if (x >= side || y >= side) throw Error("position outside the torus");
    std::vector<Concept> bits;
    bits.reserve(2 * n);
    for (std::size_t k = 0; k < n; ++k) {
        Concept atom = Concept::atomic(x_bit_name(k));
        bits.push_back((x >> k) & 1 ? atom : Concept::negation(atom));
    }
    for (std::size_t k = 0; k < n; ++k) {
        Concept atom = Concept::atomic(y_bit_name(k));
        bits.push_back((y >> k) & 1 ? atom : Concept::negation(atom));
    }
    return conjunction_of(bits);
}

namespace detail {

/// The increment concept for one role: along `step`, the `inc` bit family
/// advances by one (mod 2^n) and the `frozen` family is unchanged.  One
/// template serves both directions; east increments X and freezes Y, north
/// the other way around.
inline SurfaceConcept increment_concept(std::size_t n, const std::string& step,
                                        std::string (*inc)(std::size_t),
                                        std::string (*frozen)(std::size_t)) {
    auto step_role = role(step);
    std::vector<SurfaceConcept> flip_family, keep_family, frozen_family;
    for (std::size_t k = 0; k < n; ++k) {
        SurfaceConcept bit = SurfaceConcept::atomic(inc(k));
        std::vector<SurfaceConcept> lower_set, lower_clear;
        for (std::size_t j = 0; j < k; ++j) {
            lower_set.push_back(SurfaceConcept::atomic(inc(j)));
            lower_clear.push_back(SurfaceConcept::negation(SurfaceConcept::atomic(inc(j))));
        }
        flip_family.push_back(SurfaceConcept::implication(
            conjunction_of(lower_set),
            SurfaceConcept::conjunction(
                SurfaceConcept::implication(bit, SurfaceConcept::forall(
                                                     step_role, SurfaceConcept::negation(bit))),
                SurfaceConcept::implication(SurfaceConcept::negation(bit),
                                            SurfaceConcept::forall(step_role, bit)))));
        keep_family.push_back(SurfaceConcept::implication(
            disjunction_of(lower_clear),
            SurfaceConcept::conjunction(
                SurfaceConcept::implication(bit, SurfaceConcept::forall(step_role, bit)),
                SurfaceConcept::implication(
                    SurfaceConcept::negation(bit),
                    SurfaceConcept::forall(step_role, SurfaceConcept::negation(bit))))));
    }
    for (std::size_t k = 0; k < n; ++k) {
        SurfaceConcept bit = SurfaceConcept::atomic(frozen(k));
        frozen_family.push_back(SurfaceConcept::conjunction(
            SurfaceConcept::implication(bit, SurfaceConcept::forall(step_role, bit)),
            SurfaceConcept::implication(
                SurfaceConcept::negation(bit),
                SurfaceConcept::forall(step_role, SurfaceConcept::negation(bit)))));
    }
    return conjunction_of(std::vector<SurfaceConcept>{
        conjunction_of(flip_family), conjunction_of(keep_family), conjunction_of(frozen_family)});
}

inline SurfaceConcept east_increment(std::size_t n) {
    return increment_concept(n, kEastRole, &x_bit_name, &y_bit_name);
}

inline SurfaceConcept north_increment(std::size_t n) {
    return increment_concept(n, kNorthRole, &y_bit_name, &x_bit_name);
}

inline CardRestriction card_all(const SurfaceConcept& c) {
    return CardRestriction{CardRestriction::Kind::AtMost, 0,
                           Concept::negation(expand_abbreviations(c))};
}

}  // namespace detail

/// The eight cardinality restrictions pinning the 2^n x 2^n torus: east and
/// north successors exist everywhere and are inverse-functional, the origin
/// is occupied, the far corner is occupied exactly once, and the increment
/// concepts hold globally.
inline TcBox torus_tcbox(std::size_t n) {
    if (n < 1) throw Error("torus exponent must be at least 1");
    if (n >= 32) throw Error("torus exponent too large");
    const std::size_t corner = (std::size_t{1} << n) - 1;

    std::vector<CardRestriction> rs;
    rs.push_back(detail::card_all(
        SurfaceConcept::exists(role(kEastRole), SurfaceConcept::top())));
    rs.push_back(detail::card_all(
        SurfaceConcept::exists(role(kNorthRole), SurfaceConcept::top())));
    rs.push_back(detail::card_all(
        SurfaceConcept::exactly(1, inverse_role(kEastRole), SurfaceConcept::top())));
    rs.push_back(detail::card_all(
        SurfaceConcept::exactly(1, inverse_role(kNorthRole), SurfaceConcept::top())));
    rs.push_back(
        CardRestriction{CardRestriction::Kind::AtLeast, 1, position_concept(n, 0, 0)});
    rs.push_back(
        CardRestriction{CardRestriction::Kind::AtLeast, 1, position_concept(n, corner, corner)});
    rs.push_back(
        CardRestriction{CardRestriction::Kind::AtMost, 1, position_concept(n, corner, corner)});
    rs.push_back(detail::card_all(SurfaceConcept::conjunction(detail::east_increment(n),
                                                              detail::north_increment(n))));
    return TcBox(std::move(rs));
}

/// The single-nominal inclusion variant: the same torus axioms as general
/// inclusions, with a "create" role pointing every element at the origin and
/// the nominal "o" pinned to the far corner.  Uses one individual name, so
/// the unique name assumption cannot affect its consistency.
inline TiBox torus_tibox(std::size_t n) {
    if (n < 1) throw Error("torus exponent must be at least 1");
    if (n >= 32) throw Error("torus exponent too large");
    const std::size_t corner = (std::size_t{1} << n) - 1;
    Concept top = Concept::top();
    Concept far_corner = position_concept(n, corner, corner);

    std::vector<Gci> axioms;
    axioms.push_back(Gci{top, expand_abbreviations(SurfaceConcept::exists(
                              role(kEastRole), SurfaceConcept::top()))});
    axioms.push_back(Gci{top, expand_abbreviations(SurfaceConcept::exists(
                              role(kNorthRole), SurfaceConcept::top()))});
    axioms.push_back(Gci{top, expand_abbreviations(SurfaceConcept::exactly(
                              1, inverse_role(kEastRole), SurfaceConcept::top()))});
    axioms.push_back(Gci{top, expand_abbreviations(SurfaceConcept::exactly(
                              1, inverse_role(kNorthRole), SurfaceConcept::top()))});
    axioms.push_back(Gci{top, expand_abbreviations(SurfaceConcept::exists(
                              role(kCreateRole), as_surface(position_concept(n, 0, 0))))});
    axioms.push_back(Gci{Concept::nominal(kCornerNominal), far_corner});
    axioms.push_back(Gci{far_corner, Concept::nominal(kCornerNominal)});
    axioms.push_back(Gci{top, expand_abbreviations(SurfaceConcept::conjunction(
                              detail::east_increment(n), detail::north_increment(n)))});
    return TiBox(std::move(axioms));
}

/// Result of checking that an interpretation is (isomorphic to) the torus.
struct TorusReport {
    bool verdict = false;
    std::map<Element, std::pair<std::size_t, std::size_t>> positions;
    std::vector<std::pair<Element, std::string>> violations;
};

/// Checks that grid_position is a bijection onto the 2^n x 2^n grid, that
/// east and north are total functions, and that every east (north) edge
/// advances the x (y) coordinate by one modulo 2^n while fixing the other.
inline TorusReport verify_torus(const Interpretation& i, std::size_t n) {
    if (n >= 16) throw Error("torus exponent too large for verification");
    const std::size_t side = std::size_t{1} << n;
    TorusReport report;

    for (Element a = 0; a < i.domain_size; ++a) report.positions[a] = grid_position(i, a, n);

    if (i.domain_size != side * side)
        report.violations.emplace_back(
            0, "domain has " + std::to_string(i.domain_size) + " elements, expected " +
                   std::to_string(side * side));

    std::map<std::pair<std::size_t, std::size_t>, std::size_t> occupancy;
    for (const auto& [a, pos] : report.positions) ++occupancy[pos];
    for (const auto& [a, pos] : report.positions)
        if (occupancy[pos] > 1)
            report.violations.emplace_back(a, "position (" + std::to_string(pos.first) + "," +
                                                  std::to_string(pos.second) +
                                                  ") is shared with another element");

    auto check_role = [&](const std::string& name, bool advance_x) {
        auto it = i.roles.find(name);
        if (it == i.roles.end()) throw Error("missing role " + name);
        std::map<Element, std::size_t> out_degree;
        for (const auto& [a, b] : it->second) {
            ++out_degree[a];
            auto [ax, ay] = report.positions.at(a);
            auto [bx, by] = report.positions.at(b);
            std::size_t wantx = advance_x ? (ax + 1) % side : ax;
            std::size_t wanty = advance_x ? ay : (ay + 1) % side;
            if (bx != wantx || by != wanty)
                report.violations.emplace_back(a, name + " edge reaches position (" +
                                                      std::to_string(bx) + "," +
                                                      std::to_string(by) + "), expected (" +
                                                      std::to_string(wantx) + "," +
                                                      std::to_string(wanty) + ")");
        }
        for (Element a = 0; a < i.domain_size; ++a) {
            std::size_t degree = out_degree.count(a) ? out_degree[a] : 0;
            if (degree != 1)
                report.violations.emplace_back(a, "element has " + std::to_string(degree) + " " +
                                                      name + " successors, expected 1");
        }
    };
    check_role(kEastRole, true);
    check_role(kNorthRole, false);

    bool bijective = i.domain_size == side * side;
    for (const auto& [pos, count] : occupancy)
        if (count != 1) bijective = false;
    report.verdict = bijective && report.violations.empty();
    return report;
}

/// The canonical torus interpretation: element y * 2^n + x sits at (x, y).
/// A model of torus_tcbox(n) by construction; handy as a ground-truth
/// structure in checks that must not depend on the model search.
inline Interpretation torus_interpretation(std::size_t n) {
    if (n < 1 || n >= 16) throw Error("torus exponent out of range");
    const std::size_t side = std::size_t{1} << n;
    Interpretation out;
    out.domain_size = side * side;
    for (std::size_t k = 0; k < n; ++k) {
        out.concepts[x_bit_name(k)] = {};
        out.concepts[y_bit_name(k)] = {};
    }
    auto& east = out.roles[kEastRole];
    auto& north = out.roles[kNorthRole];
    for (std::size_t y = 0; y < side; ++y) {
        for (std::size_t x = 0; x < side; ++x) {
            Element e = y * side + x;
            for (std::size_t k = 0; k < n; ++k) {
                if ((x >> k) & 1) out.concepts[x_bit_name(k)].insert(e);
                if ((y >> k) & 1) out.concepts[y_bit_name(k)].insert(e);
            }
            east.emplace(e, y * side + (x + 1) % side);
            north.emplace(e, ((y + 1) % side) * side + x);
        }
    }
    return out;
}

}  // namespace cardinal
