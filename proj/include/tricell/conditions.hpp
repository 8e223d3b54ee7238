#pragma once

// Jet-condition systems. Every cell is a family of subalgebras cut out by four
// linear conditions on jets of f at the support points p1 < p2 < ... of the
// circle; this header holds the symbolic four-functional template of each
// family and its instantiation at rational points and moduli.
//
// Notation used below: a tripod on (a, b, c) is f(a) = f(b) = f(c), written
// as the two functionals f(a) - f(b), f(b) - f(c); `*` at a point is
// f'(a) = 0; `**` is f'(a) = f''(a) = 0.

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cells.hpp"
#include "error.hpp"
#include "rational.hpp"

namespace tricell {

enum class Modulus : std::uint8_t { alpha, beta, gamma };

inline std::string_view modulus_name(Modulus m) {
    switch (m) {
        case Modulus::alpha: return "alpha";
        case Modulus::beta: return "beta";
        case Modulus::gamma: return "gamma";
    }
    return "?";
}

/// scale * modulus, or just scale when no modulus is attached.
struct SymbolicCoefficient {
    Rational scale{1};
    std::optional<Modulus> modulus;
};

struct SymbolicTerm {
    int point;  ///< 0-based support slot
    int order;  ///< derivative order, 0..5
    SymbolicCoefficient coefficient;
};

struct SymbolicFunctional {
    std::vector<SymbolicTerm> terms;
};

struct SymbolicSystem {
    Cell cell;
    int support_size = 0;
    std::vector<Modulus> moduli;  ///< moduli the family depends on
    std::vector<SymbolicFunctional> functionals;
};

struct JetTerm {
    int point;
    int order;
    Rational coefficient;
};

/// sum of coefficient * f^(order)(support[point]).
struct JetFunctional {
    std::vector<JetTerm> terms;
};

struct Moduli {
    std::optional<Rational> alpha;
    std::optional<Rational> beta;
    std::optional<Rational> gamma;

    const std::optional<Rational>& get(Modulus m) const {
        switch (m) {
            case Modulus::alpha: return alpha;
            case Modulus::beta: return beta;
            case Modulus::gamma: return gamma;
        }
        return alpha;
    }
    std::optional<Rational>& get(Modulus m) { return const_cast<std::optional<Rational>&>(std::as_const(*this).get(m)); }
};

struct ConditionSystem {
    Cell cell;
    std::vector<Rational> support;  ///< coordinates of p1, p2, ...
    Moduli moduli;
    std::vector<JetFunctional> functionals;
};

/// Rational stand-in for the length of the circle: support coordinates live in [0, 63/10).
inline Rational circle_length() { return make_rational(63, 10); }

namespace detail {

class TemplateBuilder {
public:
    explicit TemplateBuilder(SymbolicSystem& s) : s_(s) {}

    void value_eq(int a, int b) { add({{a, 0, {Rational(1), {}}}, {b, 0, {Rational(-1), {}}}}); }
    void tripod(int a, int b, int c) {
        value_eq(a, b);
        value_eq(b, c);
    }
    void chain_eq(const std::vector<int>& pts) {
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) value_eq(pts[i], pts[i + 1]);
    }
    void vanish(int a, int order) { add({{a, order, {Rational(1), {}}}}); }
    /// f^(k1)(a) - m * f^(k2)(b)
    void ratio(int a, int k1, int b, int k2, Modulus m) {
        add({{a, k1, {Rational(1), {}}}, {b, k2, {Rational(-1), m}}});
    }
    /// m1 * f^(k1)(a) - m2 * f^(k2)(b)
    void cross(Modulus m1, int a, int k1, Modulus m2, int b, int k2) {
        add({{a, k1, {Rational(1), m1}}, {b, k2, {Rational(-1), m2}}});
    }

private:
    void add(std::vector<SymbolicTerm> terms) { s_.functionals.push_back({std::move(terms)}); }
    SymbolicSystem& s_;
};

// Support slots other than the listed ones, in increasing order.
inline std::vector<int> others(int n, std::initializer_list<int> used) {
    std::vector<int> out;
    for (int i = 0; i < n; ++i)
        if (std::find(used.begin(), used.end(), i) == used.end()) out.push_back(i);
    return out;
}

}  // namespace detail

/// The symbolic four-functional system of a cell. Indices in cell names are
/// 1-based support positions; barred cells share the template of their
/// first-type partner.
inline SymbolicSystem template_for(const Cell& cell) {
    if (!is_catalog_cell(cell)) throw UnknownCell("not a catalog cell: " + cell.name());
    const auto& info = family_info(cell.family);
    SymbolicSystem s;
    s.cell = cell;
    s.support_size = info.support_size;
    detail::TemplateBuilder b(s);
    const auto n = info.support_size;
    const auto idx = [&](std::size_t k) { return cell.indices.at(k) - 1; };
    using detail::others;
    using M = Modulus;

    switch (cell.family) {
        case Family::A: {
            // Tripods on {p1, pj, pk} and on the remaining three points.
            const int j = idx(0), k = idx(1);
            b.tripod(0, j, k);
            const auto rest = others(n, {0, j, k});
            b.tripod(rest[0], rest[1], rest[2]);
            break;
        }
        case Family::B: b.chain_eq({0, 1, 2, 3, 4}); break;
        case Family::C: {
            // * at pi, f(pi) = f(pj), tripod on the rest.
            const int i = idx(0), j = idx(1);
            b.vanish(i, 1);
            b.value_eq(i, j);
            const auto rest = others(n, {i, j});
            b.tripod(rest[0], rest[1], rest[2]);
            break;
        }
        case Family::D:
            // Four-point value equality, f'(pi) = alpha f'(pj) with sign(alpha) fixed.
            s.moduli = {M::alpha};
            b.chain_eq({0, 1, 2, 3});
            b.ratio(idx(0), 1, idx(1), 1, M::alpha);
            break;
        case Family::E:
            // f(a) = f(b) = f(c), (f'(a) : f'(b) : f'(c)) = (alpha : beta : gamma).
            s.moduli = {M::alpha, M::beta, M::gamma};
            b.tripod(0, 1, 2);
            b.cross(M::beta, 0, 1, M::alpha, 1, 1);
            b.cross(M::gamma, 1, 1, M::beta, 2, 1);
            break;
        case Family::F: {
            const int i = idx(0);
            b.vanish(i, 1);
            b.vanish(i, 2);
            const auto rest = others(n, {i});
            b.tripod(rest[0], rest[1], rest[2]);
            break;
        }
        case Family::G:
            // * at pi with f(pi) = f(pj); * at pk with f(pk) = f(pl).
            b.vanish(idx(0), 1);
            b.value_eq(idx(0), idx(1));
            b.vanish(idx(2), 1);
            b.value_eq(idx(2), idx(3));
            break;
        case Family::H:
            b.chain_eq({0, 1, 2, 3});
            b.vanish(idx(0), 1);
            break;
        case Family::I:
            // Circled asterisk at pi: f'(pi) = 0, f'''(pi) = alpha f''(pi).
            s.moduli = {M::alpha};
            b.tripod(0, 1, 2);
            b.vanish(idx(0), 1);
            b.ratio(idx(0), 3, idx(0), 2, M::alpha);
            break;
        case Family::J:
            // Arc from the * point pi to pj, read as f''(pi) = alpha f'(pj).
            s.moduli = {M::alpha};
            b.tripod(0, 1, 2);
            b.vanish(idx(0), 1);
            b.ratio(idx(0), 2, idx(1), 1, M::alpha);
            break;
        case Family::K: {
            // * at pi, arc between the two other legs: f'(pj) = alpha f'(pl).
            s.moduli = {M::alpha};
            const int i = idx(0);
            const auto rest = others(n, {i});
            b.tripod(0, 1, 2);
            b.vanish(i, 1);
            b.ratio(rest[0], 1, rest[1], 1, M::alpha);
            break;
        }
        case Family::W: {
            // a = pi carries the circled asterisk; (f'''(a) : f''(a) : f'(b)) = (alpha : beta : gamma).
            s.moduli = {M::alpha, M::beta, M::gamma};
            const int a = idx(0), bb = others(n, {a})[0];
            b.value_eq(a, bb);
            b.vanish(a, 1);
            b.cross(M::gamma, a, 3, M::alpha, bb, 1);
            b.cross(M::gamma, a, 2, M::beta, bb, 1);
            break;
        }
        case Family::L:
            // ** at pi, * at pj, f(pj) = f(pl).
            b.vanish(idx(0), 1);
            b.vanish(idx(0), 2);
            b.vanish(idx(1), 1);
            b.value_eq(idx(1), idx(2));
            break;
        case Family::M:
            b.tripod(0, 1, 2);
            b.vanish(idx(0), 1);
            b.vanish(idx(0), 2);
            break;
        case Family::N: {
            const auto rest = others(n, {idx(0)});
            b.tripod(0, 1, 2);
            b.vanish(rest[0], 1);
            b.vanish(rest[1], 1);
            break;
        }
        case Family::P: {
            // Circled asterisk at a = pi, * at b, f(a) = f(b).
            s.moduli = {M::alpha};
            const int a = idx(0), bb = others(n, {a})[0];
            b.value_eq(a, bb);
            b.vanish(a, 1);
            b.ratio(a, 3, a, 2, M::alpha);
            b.vanish(bb, 1);
            break;
        }
        case Family::S: {
            s.moduli = {M::alpha};
            const int a = idx(0), bb = others(n, {a})[0];
            b.value_eq(a, bb);
            b.vanish(a, 1);
            b.vanish(a, 2);
            b.ratio(a, 4, a, 3, M::alpha);
            break;
        }
        case Family::X:
            s.moduli = {M::alpha};
            b.value_eq(0, 1);
            b.vanish(0, 1);
            b.vanish(1, 1);
            b.ratio(0, 2, 1, 2, M::alpha);
            break;
        case Family::V: {
            s.moduli = {M::alpha};
            const int a = idx(0), bb = others(n, {a})[0];
            b.value_eq(a, bb);
            b.vanish(a, 1);
            b.vanish(a, 2);
            b.ratio(a, 3, bb, 1, M::alpha);
            break;
        }
        case Family::Omega:
            s.moduli = {M::alpha, M::beta};
            b.vanish(0, 1);
            b.vanish(0, 2);
            b.ratio(0, 4, 0, 3, M::alpha);
            b.ratio(0, 5, 0, 3, M::beta);
            break;
        case Family::Y: {
            const int a = idx(0), bb = others(n, {a})[0];
            b.value_eq(a, bb);
            b.vanish(a, 1);
            b.vanish(a, 2);
            b.vanish(bb, 1);
            break;
        }
        case Family::U: {
            const int a = idx(0), bb = others(n, {a})[0];
            b.value_eq(a, bb);
            b.vanish(a, 1);
            b.vanish(a, 2);
            b.vanish(a, 3);
            break;
        }
        case Family::Z:
            b.vanish(0, 1);
            b.vanish(0, 2);
            b.vanish(1, 1);
            b.vanish(1, 2);
            break;
        case Family::Theta:
            s.moduli = {M::alpha};
            b.vanish(0, 1);
            b.vanish(0, 2);
            b.vanish(0, 3);
            b.ratio(0, 5, 0, 4, M::alpha);
            break;
        case Family::Nabla:
            for (int k = 1; k <= 4; ++k) b.vanish(0, k);
            break;
    }
    return s;
}

/// 1 + highest derivative order used at each support slot.
inline std::vector<int> template_multiplicities(const std::vector<JetFunctional>& functionals, std::size_t points) {
    std::vector<int> m(points, 0);
    for (const auto& f : functionals)
        for (const auto& t : f.terms) m.at(static_cast<std::size_t>(t.point)) = std::max(m[static_cast<std::size_t>(t.point)], t.order + 1);
    return m;
}

namespace detail {

inline std::string sign_word(Sign s) { return s == Sign::plus ? "+" : "-"; }

inline void check_moduli(const Cell& cell, const std::vector<Modulus>& needed, const Moduli& m) {
    for (auto mod : {Modulus::alpha, Modulus::beta, Modulus::gamma}) {
        const bool wanted = std::find(needed.begin(), needed.end(), mod) != needed.end();
        if (wanted && !m.get(mod))
            throw ConstraintError(cell.name() + ": missing modulus " + std::string(modulus_name(mod)));
        if (!wanted && m.get(mod))
            throw ConstraintError(cell.name() + ": family takes no modulus " + std::string(modulus_name(mod)));
    }
    const auto sgn = [&](Modulus mod) { return m.get(mod)->sign(); };
    const auto expect_sign = [&](int actual, const char* what) {
        const int want = cell.sign == Sign::plus ? 1 : -1;
        if (actual != want)
            throw ConstraintError(cell.name() + ": sign " + sign_word(cell.sign) + " requires " + what +
                                  (want > 0 ? " > 0" : " < 0"));
    };
    switch (cell.family) {
        case Family::D:
        case Family::J:
        case Family::K:
        case Family::X:
        case Family::V:
            if (sgn(Modulus::alpha) == 0) throw ConstraintError(cell.name() + ": alpha != 0 violated");
            expect_sign(sgn(Modulus::alpha), "alpha");
            break;
        case Family::E: {
            const int a = sgn(Modulus::alpha), b = sgn(Modulus::beta), c = sgn(Modulus::gamma);
            if (a * b * c == 0) throw ConstraintError(cell.name() + ": alpha*beta*gamma != 0 violated");
            if (cell.sign == Sign::plus) {
                if (!(a == b && b == c))
                    throw ConstraintError(cell.name() + ": E+ requires alpha, beta, gamma of one sign");
            } else {
                const int odd = cell.indices.at(0);
                const int s[3] = {a, b, c};
                const int x = s[odd - 1], y = s[odd % 3], z = s[(odd + 1) % 3];
                if (!(x != y && y == z))
                    throw ConstraintError(cell.name() + ": E" + std::to_string(odd) + " requires " +
                                          std::string(modulus_name(static_cast<Modulus>(odd - 1))) +
                                          " to differ in sign from the other two moduli");
            }
            break;
        }
        case Family::W: {
            const int b = sgn(Modulus::beta), c = sgn(Modulus::gamma);
            if (b * c == 0) throw ConstraintError(cell.name() + ": beta*gamma != 0 violated");
            expect_sign(b * c, "beta/gamma");
            break;
        }
        default: break;
    }
}

inline void check_support(const Cell& cell, const std::vector<Rational>& pts, int expected) {
    if (static_cast<int>(pts.size()) != expected)
        throw ConstraintError(cell.name() + ": expected " + std::to_string(expected) + " support points, got " +
                              std::to_string(pts.size()));
    const auto free_count = cell.barred ? pts.size() - 1 : pts.size();
    for (std::size_t i = 0; i < free_count; ++i) {
        if (pts[i] <= 0 || pts[i] >= circle_length())
            throw ConstraintError(cell.name() + ": support point p" + std::to_string(i + 1) + " = " +
                                  to_string(pts[i]) + " outside the open interval (0, 63/10)");
        if (i > 0 && pts[i] <= pts[i - 1])
            throw ConstraintError(cell.name() + ": support points must be strictly increasing");
    }
    if (cell.barred && pts.back() != 0)
        throw ConstraintError(cell.name() + ": second-type cells put the last support point at 0");
}

}  // namespace detail

/// Substitutes support coordinates and moduli into the cell's template.
inline ConditionSystem instantiate(const Cell& cell, std::vector<Rational> support, const Moduli& moduli) {
    const auto sym = template_for(cell);
    detail::check_support(cell, support, sym.support_size);
    detail::check_moduli(cell, sym.moduli, moduli);
    ConditionSystem out{cell, std::move(support), moduli, {}};
    for (const auto& f : sym.functionals) {
        JetFunctional jf;
        for (const auto& t : f.terms) {
            Rational c = t.coefficient.scale;
            if (t.coefficient.modulus) c *= *moduli.get(*t.coefficient.modulus);
            jf.terms.push_back({t.point, t.order, c});
        }
        out.functionals.push_back(std::move(jf));
    }
    return out;
}

/// Support points and moduli for one instantiation.
struct ParameterDraw {
    std::vector<Rational> support;
    Moduli moduli;
};

namespace detail {

// Uniform integer in [lo, hi]. Plain modulo on the engine output keeps draws
// identical across standard libraries.
inline std::int64_t draw_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline Rational draw_magnitude(std::mt19937_64& rng) {
    const auto p = draw_int(rng, 1, 97);
    const auto q = draw_int(rng, 1, 97);
    return make_rational(p, q);
}

inline Rational draw_point(std::mt19937_64& rng) {
    // p/q with p, q <= 97 and 0 < p/q < 63/10.
    for (;;) {
        const auto q = draw_int(rng, 1, 97);
        const auto p = draw_int(rng, 1, 97);
        if (10 * p < 63 * q) return make_rational(p, q);
    }
}

}  // namespace detail

/// Seeded legal parameters: numerators and denominators at most 97, points
/// sorted with gaps of at least 1/50, moduli honoring the family's sign rules.
inline ParameterDraw draw_parameters(const Cell& cell, std::mt19937_64& rng) {
    const auto sym = template_for(cell);
    ParameterDraw d;
    const auto free_count = static_cast<std::size_t>(sym.support_size - (cell.barred ? 1 : 0));
    const Rational min_gap = make_rational(1, 50);
    for (;;) {
        d.support.clear();
        for (std::size_t i = 0; i < free_count; ++i) d.support.push_back(detail::draw_point(rng));
        std::sort(d.support.begin(), d.support.end());
        bool ok = true;
        for (std::size_t i = 1; i < d.support.size(); ++i)
            if (d.support[i] - d.support[i - 1] < min_gap) ok = false;
        if (cell.barred && !d.support.empty() && d.support.front() < min_gap) ok = false;
        if (ok) break;
    }
    if (cell.barred) d.support.push_back(Rational(0));

    const auto random_sign = [&] { return detail::draw_int(rng, 0, 1) == 0 ? 1 : -1; };
    const int tag = cell.sign == Sign::minus ? -1 : 1;
    for (auto m : sym.moduli) d.moduli.get(m) = detail::draw_magnitude(rng);
    auto& a = d.moduli.alpha;
    auto& b = d.moduli.beta;
    auto& c = d.moduli.gamma;
    switch (cell.family) {
        case Family::D:
        case Family::J:
        case Family::K:
        case Family::X:
        case Family::V: *a *= tag; break;
        case Family::E: {
            const int s = random_sign();
            *a *= s;
            *b *= s;
            *c *= s;
            if (cell.sign != Sign::plus) *d.moduli.get(static_cast<Modulus>(cell.indices[0] - 1)) *= -1;
            break;
        }
        case Family::W: {
            const int s = random_sign();
            *a *= random_sign();
            *b *= s;
            *c *= s * tag;
            break;
        }
        default:
            for (auto m : sym.moduli) *d.moduli.get(m) *= random_sign();
    }
    return d;
}

/// One functional per line, terms written as `±c · D^k[pi]`.
inline std::string format_system(const ConditionSystem& s) {
    std::string out;
    for (const auto& f : s.functionals) {
        bool first = true;
        for (const auto& t : f.terms) {
            if (!first) out += ' ';
            first = false;
            const auto mag = to_string(abs(t.coefficient));
            out += (t.coefficient.sign() < 0 ? "-" : "+") + mag + " · D^" + std::to_string(t.order) + "[p" +
                   std::to_string(t.point + 1) + "]";
        }
        out += '\n';
    }
    return out;
}

}  // namespace tricell
