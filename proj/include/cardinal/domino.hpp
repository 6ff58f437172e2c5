#pragma once

// Domino systems, torus tilings, the reduction from bounded tiling problems
// to cardinality-TBox consistency, and a brute-force tiler used as the other
// side of that reduction's iff.
//
// The encoding adds one atomic concept "C_<tile>" per tile to the torus TBox:
// every element carries exactly one tile, east neighbours must be
// horizontally compatible, north neighbours vertically compatible, and the
// first cells of the bottom row are pinned to the initial condition.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cardinal/parse.hpp"
#include "cardinal/surface.hpp"
#include "cardinal/syntax.hpp"
#include "cardinal/torus.hpp"

namespace cardinal {

struct DominoSystem {
    std::set<std::string> tiles;
    std::set<std::pair<std::string, std::string>> horizontal;
    std::set<std::pair<std::string, std::string>> vertical;

    void validate() const {
        for (const auto& [a, b] : horizontal)
            if (!tiles.count(a) || !tiles.count(b))
                throw Error("horizontal pair (" + a + "," + b + ") uses an undeclared tile");
        for (const auto& [a, b] : vertical)
            if (!tiles.count(a) || !tiles.count(b))
                throw Error("vertical pair (" + a + "," + b + ") uses an undeclared tile");
    }
};

/// A total tile assignment on the torus Z_width x Z_height.
struct Tiling {
    std::size_t width = 1;
    std::size_t height = 1;
    std::vector<std::string> cells;  // cells[y * width + x]

    const std::string& at(std::size_t x, std::size_t y) const { return cells[y * width + x]; }

    friend bool operator==(const Tiling&, const Tiling&) = default;
};

/// Checks the wraparound horizontal and vertical compatibility constraints.
inline bool tiling_valid(const Tiling& t, const DominoSystem& d) {
    if (t.cells.size() != t.width * t.height) return false;
    for (std::size_t y = 0; y < t.height; ++y) {
        for (std::size_t x = 0; x < t.width; ++x) {
            if (!d.tiles.count(t.at(x, y))) return false;
            if (!d.horizontal.count({t.at(x, y), t.at((x + 1) % t.width, y)})) return false;
            if (!d.vertical.count({t.at(x, y), t.at(x, (y + 1) % t.height)})) return false;
        }
    }
    return true;
}

/// Concept name carrying a tile in the TBox encoding.
inline std::string tile_concept_name(const std::string& tile) { return "C_" + tile; }

/// The tiling reduction: torus_tcbox(n) plus the tile cover, tile
/// disjointness, horizontal and vertical compatibility restrictions, plus one
/// restriction per initial-condition cell.  Requires |w| = n; every w[i] must
/// be a declared tile.
inline TcBox domino_tcbox(std::size_t n, const DominoSystem& d, const std::vector<std::string>& w) {
    d.validate();
    if (w.size() != n)
        throw Error("initial condition must have length " + std::to_string(n) + ", got " +
                    std::to_string(w.size()));
    for (const auto& tile : w)
        if (!d.tiles.count(tile)) throw Error("initial condition uses undeclared tile " + tile);

    auto tile_concept = [](const std::string& tile) {
        return SurfaceConcept::atomic(tile_concept_name(tile));
    };

    std::vector<CardRestriction> rs(torus_tcbox(n).restrictions());

    // Every element carries at least one tile...
    std::vector<SurfaceConcept> cover;
    for (const auto& tile : d.tiles) cover.push_back(tile_concept(tile));
    rs.push_back(detail::card_all(disjunction_of(cover)));

    // ...and no two different tiles at once.
    std::vector<SurfaceConcept> disjoint;
    for (const auto& a : d.tiles)
        for (const auto& b : d.tiles)
            if (a != b)
                disjoint.push_back(SurfaceConcept::negation(
                    SurfaceConcept::conjunction(tile_concept(a), tile_concept(b))));
    rs.push_back(detail::card_all(conjunction_of(disjoint)));

    // Compatibility along east and north.
    auto compatibility = [&](const std::set<std::pair<std::string, std::string>>& allowed,
                             const std::string& step) {
        std::vector<SurfaceConcept> parts;
        for (const auto& a : d.tiles) {
            std::vector<SurfaceConcept> successors;
            for (const auto& [from, to] : allowed)
                if (from == a) successors.push_back(tile_concept(to));
            parts.push_back(SurfaceConcept::implication(
                tile_concept(a),
                SurfaceConcept::forall(role(step), disjunction_of(successors))));
        }
        return conjunction_of(parts);
    };
    rs.push_back(detail::card_all(compatibility(d.horizontal, kEastRole)));
    rs.push_back(detail::card_all(compatibility(d.vertical, kNorthRole)));

    // Initial condition along the bottom row.
    for (std::size_t idx = 0; idx < w.size(); ++idx)
        rs.push_back(detail::card_all(SurfaceConcept::implication(
            as_surface(position_concept(n, idx, 0)), tile_concept(w[idx]))));

    return TcBox(std::move(rs));
}

/// Exhaustive backtracking tiler for the torus Z_s x Z_t with initial
/// condition w along the bottom row (|w| <= s).  Cells are filled in (y, x)
/// order and tiles tried in lexicographic order, so the first tiling found is
/// deterministic.
inline std::optional<Tiling> tile_torus(const DominoSystem& d, std::size_t s, std::size_t t,
                                        const std::vector<std::string>& w) {
    d.validate();
    if (s < 1 || t < 1) throw Error("torus dimensions must be positive");
    if (w.size() > s) throw Error("initial condition longer than the torus width");
    for (const auto& tile : w)
        if (!d.tiles.count(tile)) throw Error("initial condition uses undeclared tile " + tile);

    Tiling tiling;
    tiling.width = s;
    tiling.height = t;
    tiling.cells.assign(s * t, "");
    for (std::size_t x = 0; x < w.size(); ++x) tiling.cells[x] = w[x];

    // Both neighbours checked lazily: at cell (x, y) the left and lower
    // neighbours are already placed, and the wraparound pairs are checked
    // when the row/column closes.
    auto compatible = [&](std::size_t x, std::size_t y) {
        const std::string& here = tiling.at(x, y);
        if (x > 0 && !d.horizontal.count({tiling.at(x - 1, y), here})) return false;
        if (x == s - 1 && !d.horizontal.count({here, tiling.at(0, y)})) return false;
        if (y > 0 && !d.vertical.count({tiling.at(x, y - 1), here})) return false;
        if (y == t - 1) {
            // Column closes only when the top row is reached; the cell above
            // position (x, t-1) wraps to (x, 0), which is filled iff y > 0 or
            // the initial condition covers it.
            if (!tiling.at(x, 0).empty() && !d.vertical.count({here, tiling.at(x, 0)}))
                return false;
        }
        return true;
    };

    std::vector<std::string> order(d.tiles.begin(), d.tiles.end());
    auto solve = [&](const auto& self, std::size_t idx) -> bool {
        if (idx == s * t) return true;
        std::size_t x = idx % s;
        std::size_t y = idx / s;
        if (!tiling.cells[idx].empty())
            return compatible(x, y) && self(self, idx + 1);
        for (const auto& tile : order) {
            tiling.cells[idx] = tile;
            if (compatible(x, y) && self(self, idx + 1)) return true;
        }
        tiling.cells[idx].clear();
        return false;
    };
    if (!solve(solve, 0)) return std::nullopt;
    return tiling;
}

/// Reads a tiling back out of a model of domino_tcbox: the element at grid
/// position (x, y) determines the tile at (x, y) through the unique tile
/// concept containing it.
inline Tiling extract_tiling(const Interpretation& i, std::size_t n, const DominoSystem& d) {
    TorusReport report = verify_torus(i, n);
    if (!report.verdict) throw Error("interpretation is not a torus model");
    const std::size_t side = std::size_t{1} << n;

    Tiling tiling;
    tiling.width = side;
    tiling.height = side;
    tiling.cells.assign(side * side, "");
    for (Element a = 0; a < i.domain_size; ++a) {
        auto [x, y] = report.positions.at(a);
        std::vector<std::string> carried;
        for (const auto& tile : d.tiles) {
            auto it = i.concepts.find(tile_concept_name(tile));
            if (it != i.concepts.end() && it->second.count(a)) carried.push_back(tile);
        }
        if (carried.empty()) throw Error("element carries no tile concept");
        if (carried.size() > 1) throw Error("element carries more than one tile concept");
        tiling.cells[y * side + x] = carried.front();
    }
    if (!tiling_valid(tiling, d)) throw Error("extracted assignment violates tile compatibility");
    return tiling;
}

/// The inverse construction: a torus interpretation whose tile concepts
/// follow the given 2^n x 2^n tiling.
inline Interpretation tiling_to_interpretation(const Tiling& t, std::size_t n,
                                               const DominoSystem& d) {
    const std::size_t side = std::size_t{1} << n;
    if (t.width != side || t.height != side)
        throw Error("tiling dimensions do not match the torus size");
    Interpretation out = torus_interpretation(n);
    for (const auto& tile : d.tiles) out.concepts[tile_concept_name(tile)] = {};
    for (std::size_t y = 0; y < side; ++y)
        for (std::size_t x = 0; x < side; ++x)
            out.concepts[tile_concept_name(t.at(x, y))].insert(y * side + x);
    return out;
}

/// A parsed domino spec file: the system plus the initial condition.
struct DominoSpec {
    DominoSystem system;
    std::vector<std::string> initial;
};

/// Line-oriented domino spec format:
///   tiles a b c
///   h a b      (one horizontal pair per line)
///   v a b
///   init a b   (the initial condition, at most one line)
/// "#" starts a comment.
inline DominoSpec parse_domino_spec(std::string_view text) {
    DominoSpec spec;
    bool saw_init = false;

    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto nl = text.find('\n', start);
        std::string_view raw =
            text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
        ++line_no;
        start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;

        std::string line = detail::strip_comment(raw);
        if (detail::blank(line)) continue;

        std::istringstream words(line);
        std::string head;
        words >> head;
        std::vector<std::string> rest;
        for (std::string word; words >> word;) rest.push_back(word);

        if (head == "tiles") {
            spec.system.tiles.insert(rest.begin(), rest.end());
        } else if (head == "h" || head == "v") {
            if (rest.size() != 2)
                throw ParseError("expected two tiles after '" + head + "'", line_no, 1);
            auto& pairs = head == "h" ? spec.system.horizontal : spec.system.vertical;
            pairs.emplace(rest[0], rest[1]);
        } else if (head == "init") {
            if (saw_init) throw ParseError("duplicate 'init' line", line_no, 1);
            saw_init = true;
            spec.initial = rest;
        } else {
            throw ParseError("expected tiles/h/v/init, got '" + head + "'", line_no, 1);
        }
    }
    spec.system.validate();
    for (const auto& tile : spec.initial)
        if (!spec.system.tiles.count(tile))
            throw ParseError("initial condition uses undeclared tile " + tile, 1, 1);
    return spec;
}

/// Renders a tiling as a grid, top row (largest y) first.
inline std::string render(const Tiling& t) {
    std::ostringstream out;
    for (std::size_t y = t.height; y-- > 0;) {
        for (std::size_t x = 0; x < t.width; ++x) {
            if (x) out << ' ';
            out << t.at(x, y);
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace cardinal
