#pragma once

#include "sullivan/cohomology.hpp"
#include "sullivan/homotopy.hpp"

#include <algorithm>
#include <cstdint>
#include <future>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sullivan {

// ---------------------------------------------------------------------------
// Stage pairs (xi, alpha) and lifting
// ---------------------------------------------------------------------------

/// A candidate stage pair: an automorphism of the degree-`stage` generator
/// space together with an equivalence of the subalgebra below it.
struct StagePair {
    int stage = 0;
    RationalMatrix xi;                 // on the degree-`stage` generators
    CochainMorphism<Rational> alpha;   // defined (at least) on degrees < stage
};

namespace detail {

/// Residual (alpha o d - d o xi)(v_sigma) for each degree-`stage` generator,
/// as coordinate vectors over the (stage+1, cap stage-1) basis.
inline std::vector<std::vector<Rational>> stage_residuals(const SullivanAlgebra& a,
                                                          const StagePair& pair,
                                                          const DegreeBasis& codomain,
                                                          std::uint64_t limit) {
    std::vector<GenIndex> gens;
    for (GenIndex g = 0; g < a.generator_count(); ++g)
        if (a.table().degree(g) == pair.stage) gens.push_back(g);
    if (pair.xi.rows() != static_cast<int>(gens.size()) || pair.xi.rows() != pair.xi.cols())
        throw std::invalid_argument("stage automorphism has the wrong dimensions");
    (void)limit;

    std::vector<std::vector<Rational>> out;
    for (std::size_t s = 0; s < gens.size(); ++s) {
        Element<Rational> lhs = apply_morphism(pair.alpha, a.diff(gens[s]));
        Element<Rational> xi_image(&a.table());
        for (std::size_t t = 0; t < gens.size(); ++t) {
            Rational c = pair.xi.get(static_cast<int>(t), static_cast<int>(s));
            if (!is_zero(c)) xi_image = add(xi_image, scale(c, a.diff(gens[t])));
        }
        out.push_back(coordinates(sub(lhs, xi_image), codomain));
    }
    return out;
}

} // namespace detail

/// True when the pair satisfies the obstruction-square condition: every
/// residual is a coboundary of the filtered subalgebra below the stage.
inline bool check_cpair(const SullivanAlgebra& a, const StagePair& pair,
                        std::uint64_t limit = kDefaultBasisLimit) {
    if (rref(pair.xi).rank != pair.xi.rows())
        throw std::invalid_argument("stage automorphism is singular");
    DegreeBasis codomain = enumerate_basis(a, pair.stage + 1, pair.stage - 1, limit);
    RrefSolver boundary(differential_matrix(a, pair.stage, pair.stage - 1, limit));
    for (auto& r : detail::stage_residuals(a, pair, codomain, limit))
        if (!boundary.solve(r)) return false;
    return true;
}

/// Extends alpha over the stage generators by xi plus the membership
/// witnesses; the result is validated and its stage linear part is exactly
/// xi (witnesses are decomposable).  Throws if the pair fails the
/// obstruction condition.
inline CochainMorphism<Rational> lift_pair(std::shared_ptr<const SullivanAlgebra> shared,
                                           const StagePair& pair,
                                           std::uint64_t limit = kDefaultBasisLimit) {
    const SullivanAlgebra& a = *shared;
    std::vector<GenIndex> gens;
    for (GenIndex g = 0; g < a.generator_count(); ++g)
        if (a.table().degree(g) == pair.stage) gens.push_back(g);

    DegreeBasis domain = enumerate_basis(a, pair.stage, pair.stage - 1, limit);
    DegreeBasis codomain = enumerate_basis(a, pair.stage + 1, pair.stage - 1, limit);
    RationalMatrix boundary = differential_matrix(a, pair.stage, pair.stage - 1, limit);
    RrefSolver solver(boundary);

    CochainMorphism<Rational> lifted = pair.alpha;
    lifted.cap = pair.stage;
    auto residuals = detail::stage_residuals(a, pair, codomain, limit);
    for (std::size_t s = 0; s < gens.size(); ++s) {
        auto witness = solver.solve(residuals[s]);
        if (!witness)
            throw std::invalid_argument("pair is not in the stage group: residual of '" +
                                        a.table().name(gens[s]) + "' is not a coboundary");
        Element<Rational> image = from_coordinates(a.table(), domain, *witness);
        for (std::size_t t = 0; t < gens.size(); ++t) {
            Rational c = pair.xi.get(static_cast<int>(t), static_cast<int>(s));
            if (!is_zero(c))
                image = add(image, Element<Rational>::generator(a.table(), gens[t], c));
        }
        lifted.images[gens[s]] = std::move(image);
    }
    lifted.source = lifted.target = shared;
    return validate_morphism(std::move(lifted));
}

/// The collapse test for lifts at one stage: fibers of the stage projection
/// are singletons when the degree-`stage` part of the filtered subalgebra
/// has no cocycles, or when all of its cocycles bound.
struct UniquenessInfo {
    int stage = 0;
    int cocycle_dim = 0;
    int h_dim = 0;
    bool holds = false;
    std::string branch; // "no-cocycles" | "cocycles-bound" | "fails"
};

inline UniquenessInfo uniqueness_condition(const SullivanAlgebra& a, int stage,
                                           std::uint64_t limit = kDefaultBasisLimit) {
    UniquenessInfo info;
    info.stage = stage;
    CohomologySpace h = cohomology(a, stage, stage - 1, limit);
    info.cocycle_dim = h.cocycle_dim();
    info.h_dim = h.h_dim();
    if (info.cocycle_dim == 0) {
        info.holds = true;
        info.branch = "no-cocycles";
    } else if (info.h_dim == 0) {
        info.holds = true;
        info.branch = "cocycles-bound";
    } else {
        info.holds = false;
        info.branch = "fails";
    }
    return info;
}

// ---------------------------------------------------------------------------
// Unit monomial systems
// ---------------------------------------------------------------------------

/// One equation asserting equality of two power products of invertible
/// unknowns; stored normalized with disjoint supports and positive
/// exponents.
struct UnitEquation {
    std::map<ParamIndex, int> lhs, rhs;

    static UnitEquation from_difference(const std::map<ParamIndex, int>& diff) {
        UnitEquation eq;
        for (auto& [p, e] : diff) {
            if (e > 0) eq.lhs.emplace(p, e);
            else if (e < 0) eq.rhs.emplace(p, -e);
        }
        return eq;
    }

    std::map<ParamIndex, int> difference() const {
        std::map<ParamIndex, int> d;
        for (auto& [p, e] : lhs) d[p] += e;
        for (auto& [p, e] : rhs) d[p] -= e;
        std::erase_if(d, [](const auto& kv) { return kv.second == 0; });
        return d;
    }

    bool trivial() const { return lhs.empty() && rhs.empty(); }

    /// Canonical display: a side that is a single first-power unknown is the
    /// subject and goes left; otherwise the lexicographically smaller side.
    std::string to_string(const ParameterTable& params) const {
        auto side = [&](const std::map<ParamIndex, int>& m) {
            if (m.empty()) return std::string("1");
            std::string out;
            for (auto& [p, e] : m) {
                if (!out.empty()) out += " * ";
                out += params.name(p);
                if (e != 1) out += "^" + std::to_string(e);
            }
            return out;
        };
        bool lhs_is_subject = lhs.size() == 1 && lhs.begin()->second == 1;
        bool rhs_is_subject = rhs.size() == 1 && rhs.begin()->second == 1;
        if (!lhs_is_subject && rhs_is_subject) return side(rhs) + " = " + side(lhs);
        return side(lhs) + " = " + side(rhs);
    }

    friend bool operator==(const UnitEquation& a, const UnitEquation& b) {
        return (a.lhs == b.lhs && a.rhs == b.rhs) || (a.lhs == b.rhs && a.rhs == b.lhs);
    }
};

struct UnitMonomialSystem {
    std::shared_ptr<ParameterTable> params;
    std::vector<ParamIndex> unknowns; // solution vector component order
    std::vector<UnitEquation> equations;

    void add_unique(UnitEquation eq) {
        if (eq.trivial()) return;
        for (auto& e : equations)
            if (e == eq) return;
        equations.push_back(std::move(eq));
    }
};

/// Solution group of a unit system over the nonzero rationals, split into
/// the sign part (a subgroup of {+-1}^k listed exhaustively) and the free
/// part (integer lattice directions d: every (q^{d_1}, ..., q^{d_k}) with
/// q a positive rational is a solution).
struct UnitSolution {
    std::vector<ParamIndex> unknowns;
    std::vector<std::vector<int>> sign_solutions; // entries +1 / -1, sorted
    std::vector<std::vector<long long>> lattice_basis;

    bool finite() const { return lattice_basis.empty(); }
    std::size_t sign_count() const { return sign_solutions.size(); }

    /// log2 of the sign-group order.
    int sign_rank() const {
        std::size_t n = sign_solutions.size();
        int r = 0;
        while ((std::size_t(1) << r) < n) ++r;
        return r;
    }
};

inline UnitSolution solve_unit_system(const UnitMonomialSystem& sys) {
    const std::size_t k = sys.unknowns.size();
    std::map<ParamIndex, std::size_t> pos;
    for (std::size_t i = 0; i < k; ++i) pos.emplace(sys.unknowns[i], i);

    std::vector<IntVec> rows;
    Gf2System signs;
    signs.unknowns = k;
    for (auto& eq : sys.equations) {
        IntVec row(k, Integer(0));
        std::vector<std::uint8_t> srow(k, 0);
        for (auto& [p, e] : eq.difference()) {
            auto it = pos.find(p);
            if (it == pos.end()) throw std::invalid_argument("equation uses an unlisted unknown");
            row[it->second] = e;
            srow[it->second] = static_cast<std::uint8_t>(((e % 2) + 2) % 2);
        }
        rows.push_back(std::move(row));
        signs.add_equation(std::move(srow), 0);
    }

    UnitSolution out;
    out.unknowns = sys.unknowns;

    IntegerLattice lattice = integer_kernel(rows, k);
    for (auto& b : lattice.basis) {
        std::vector<long long> v;
        for (auto& x : b) v.push_back(static_cast<long long>(x));
        out.lattice_basis.push_back(std::move(v));
    }

    Gf2Solution sol = gf2_solve(signs); // homogeneous: always consistent
    for (auto& bits : sol.enumerate()) {
        std::vector<int> v(k, 1);
        for (std::size_t i = 0; i < k; ++i)
            if (bits[i]) v[i] = -1;
        out.sign_solutions.push_back(std::move(v));
    }
    std::sort(out.sign_solutions.begin(), out.sign_solutions.end());
    return out;
}

// ---------------------------------------------------------------------------
// Staged symbolic computation of a self-equivalence group
// ---------------------------------------------------------------------------

struct StageLog {
    int degree = 0;
    std::string generator;
    UniquenessInfo uniqueness;
    std::vector<UnitEquation> equations;  // recorded at this stage, display form
    std::vector<std::string> killed;      // correction parameters forced to zero
};

struct Discrepancy {
    std::string code;
    std::string detail;
};

struct SelfEquivGroupReport {
    std::string algebra;
    int family_n = 0; // 0 when run on a user algebra
    std::shared_ptr<ParameterTable> params;
    std::vector<ParamIndex> scale_params; // one per generator, declaration order
    std::vector<std::string> correction_legend; // q name -> monomial text
    std::vector<StageLog> stages;
    UnitMonomialSystem system;
    UnitSolution solution;
    bool uniqueness_all = false;
    bool classes_determined = true; // false: "homotopy classes not determined by linear part"
    std::vector<std::string> warnings;
    std::vector<Discrepancy> discrepancies;
    std::vector<std::string> comparison; // claimed-versus-computed notes

    bool group_closed = false;   // sign set closed under product, identity present
    bool elementary_abelian = false;
    int elementary_rank = 0;
    std::optional<std::uint64_t> order; // nullopt: infinite
    std::optional<int> exponent;        // nullopt: unbounded
};

class UnsupportedEquationForm : public std::runtime_error {
public:
    explicit UnsupportedEquationForm(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

struct SymbolicState {
    std::shared_ptr<const SullivanAlgebra> algebra;
    std::shared_ptr<ParameterTable> params;
    std::vector<ParamIndex> scale_of_gen;
    std::map<GenIndex, Element<ParamPoly>> images;
    std::map<ParamIndex, std::string> q_monomial_text;
    // display substitutions for stage scales solved at earlier stages
    std::map<ParamIndex, std::map<ParamIndex, int>> solved_display;
    std::set<ParamIndex> killed_q;

    void substitute_q_zero(ParamIndex q) {
        killed_q.insert(q);
        for (auto& [g, img] : images) {
            Element<ParamPoly> out(img.table());
            for (auto& [m, c] : img.terms()) out.add_term(m, c.substituted(q, ParamPoly(0)));
            img = std::move(out);
        }
    }
};

inline std::string scale_param_name(const GeneratorTable& table, GenIndex g) {
    const std::string& n = table.name(g);
    if (n.size() >= 2 && n[0] == 'x' &&
        n.find_first_not_of("0123456789", 1) == std::string::npos)
        return "p" + n.substr(1);
    return "p_" + n;
}

/// One constraint-normalization pass over the residual polynomials of one
/// stage.  Applies the three rules until a fixpoint:
///   R1: a single-monomial residual with exactly one correction unknown
///       forces that unknown to zero (scale unknowns are invertible);
///   R2: a two-monomial residual c*M1 - c*M2 in scale unknowns becomes the
///       unit equation M1 = M2;
///   R3: solved substitutions propagate (corrections into the stored state,
///       earlier stage scales into the displayed equations).
inline void normalize_stage_constraints(SymbolicState& state, int stage_degree,
                                        ParamIndex stage_scale,
                                        std::vector<ParamPoly> residuals, StageLog& log,
                                        UnitMonomialSystem& system) {
    auto is_pure_scale = [&](const ParamMonomial& m) {
        for (auto& [p, e] : m.powers)
            if (!state.params->invertible(p)) return false;
        return true;
    };

    bool progress = true;
    while (progress) {
        progress = false;
        for (auto& r : residuals) {
            for (ParamIndex q : state.killed_q) r = r.substituted(q, ParamPoly(0));
            if (r.is_zero()) continue;

            const auto& terms = r.terms();
            if (terms.size() == 1) {
                auto& [mono, coeff] = *terms.begin();
                std::vector<ParamIndex> qs;
                for (auto& [p, e] : mono.powers)
                    if (!state.params->invertible(p)) qs.push_back(p);
                if (qs.size() == 1) {
                    state.substitute_q_zero(qs.front());
                    log.killed.push_back(state.params->name(qs.front()));
                    r = ParamPoly(0);
                    progress = true;
                    continue;
                }
                if (qs.empty())
                    throw UnsupportedEquationForm(
                        "stage " + std::to_string(stage_degree) +
                        ": residual forces a product of invertible scales to vanish");
                continue; // several correction unknowns: retry after other rules
            }

            if (terms.size() == 2) {
                auto it = terms.begin();
                auto& [m1, c1] = *it;
                ++it;
                auto& [m2, c2] = *it;
                if (is_pure_scale(m1) && is_pure_scale(m2) && c1 + c2 == 0) {
                    std::map<ParamIndex, int> diff;
                    for (auto& [p, e] : m1.powers) diff[p] += e;
                    for (auto& [p, e] : m2.powers) diff[p] -= e;
                    // display form: substitute scales solved at earlier stages,
                    // keeping this stage's own scale as the subject
                    std::map<ParamIndex, int> display = diff;
                    bool changed = true;
                    while (changed) {
                        changed = false;
                        for (auto& [p, sub] : state.solved_display) {
                            if (p == stage_scale) continue;
                            auto found = display.find(p);
                            if (found == display.end() || found->second == 0) continue;
                            int e = found->second;
                            display.erase(found);
                            for (auto& [sp, se] : sub) display[sp] += e * se;
                            std::erase_if(display,
                                          [](const auto& kv) { return kv.second == 0; });
                            changed = true;
                        }
                    }
                    UnitEquation eq = UnitEquation::from_difference(display);
                    if (!eq.trivial()) {
                        bool seen = false;
                        for (auto& e : log.equations) seen = seen || e == eq;
                        if (!seen) log.equations.push_back(eq);
                        system.add_unique(eq);
                        // record a display solution for the stage scale
                        auto subject = [&](const std::map<ParamIndex, int>& side,
                                           const std::map<ParamIndex, int>& other) {
                            if (side.size() == 1 && side.begin()->first == stage_scale &&
                                side.begin()->second == 1 &&
                                !state.solved_display.count(stage_scale)) {
                                bool other_has_subject = other.count(stage_scale) != 0;
                                if (!other_has_subject)
                                    state.solved_display[stage_scale] = other;
                            }
                        };
                        subject(eq.lhs, eq.rhs);
                        subject(eq.rhs, eq.lhs);
                    }
                    r = ParamPoly(0);
                    progress = true;
                    continue;
                }
            }
            // anything else: leave for the fixpoint check below
        }
    }

    for (auto& r : residuals)
        if (!r.is_zero())
            throw UnsupportedEquationForm("stage " + std::to_string(stage_degree) +
                                          ": residual '" + r.to_string(*state.params) +
                                          "' survives normalization");
}

} // namespace detail

/// Runs the staged computation: parametrizes the closed generators with
/// scale-plus-corrections images, then processes the remaining generators in
/// ascending degree, turning each obstruction-square condition into unit
/// equations, and finally solves the assembled system over the nonzero
/// rationals.  Requires all generator degrees distinct (one-dimensional
/// stage spaces).
inline SelfEquivGroupReport compute_selfequiv_group(std::shared_ptr<const SullivanAlgebra> algebra,
                                                    std::uint64_t limit = kDefaultBasisLimit) {
    const SullivanAlgebra& a = *algebra;
    SelfEquivGroupReport report;
    report.algebra = a.name();
    report.params = std::make_shared<ParameterTable>();
    report.system.params = report.params;

    std::set<int> seen_degrees;
    std::vector<GenIndex> order(a.generator_count());
    for (GenIndex g = 0; g < a.generator_count(); ++g) {
        if (!seen_degrees.insert(a.table().degree(g)).second)
            throw std::invalid_argument(
                "stage spaces must be one-dimensional: two generators share degree " +
                std::to_string(a.table().degree(g)));
        order[g] = g;
    }
    std::sort(order.begin(), order.end(), [&](GenIndex x, GenIndex y) {
        return a.table().degree(x) < a.table().degree(y);
    });

    detail::SymbolicState state;
    state.algebra = algebra;
    state.params = report.params;
    state.scale_of_gen.resize(a.generator_count());
    for (GenIndex g = 0; g < a.generator_count(); ++g) {
        state.scale_of_gen[g] =
            report.params->add(detail::scale_param_name(a.table(), g), ParamClass::Invertible);
    }
    report.scale_params = state.scale_of_gen;
    // solution vectors are indexed by generator declaration order so they are
    // directly comparable with the oracle's
    for (GenIndex g = 0; g < a.generator_count(); ++g)
        report.system.unknowns.push_back(state.scale_of_gen[g]);

    bool any_uniqueness_failure = false;
    for (GenIndex g : order) {
        const int d = a.table().degree(g);
        if (a.diff(g).is_zero()) {
            // closed generator: scale plus corrections over every lower-degree
            // monomial of the same degree
            Element<ParamPoly> img = Element<ParamPoly>::generator(
                a.table(), g, ParamPoly::variable(state.scale_of_gen[g]));
            DegreeBasis corrections = enumerate_basis(a, d, d - 1, limit);
            int k = 0;
            for (auto& m : corrections.monomials) {
                ParamIndex q = report.params->add("q_" + a.table().name(g) + "_" +
                                                      std::to_string(k++),
                                                  ParamClass::Plain);
                state.q_monomial_text.emplace(q, m.to_string(a.table()));
                report.correction_legend.push_back(report.params->name(q) + " -> " +
                                                   m.to_string(a.table()));
                img.add_term(m, ParamPoly::variable(q));
            }
            state.images.emplace(g, std::move(img));
            continue;
        }

        StageLog log;
        log.degree = d;
        log.generator = a.table().name(g);
        log.uniqueness = uniqueness_condition(a, d, limit);
        if (!log.uniqueness.holds) {
            any_uniqueness_failure = true;
            report.warnings.push_back("stage " + std::to_string(d) +
                                      ": homotopy classes not determined by linear part "
                                      "(non-bounding cocycles of dimension " +
                                      std::to_string(log.uniqueness.h_dim) + ")");
        }

        // residual of the obstruction square, reduced modulo coboundaries
        CochainMorphism<ParamPoly> partial;
        partial.source = partial.target = algebra;
        partial.cap = d - 1;
        partial.images = state.images;
        Element<ParamPoly> lhs = apply_morphism(partial, a.diff(g));
        Element<ParamPoly> rhs =
            scale(ParamPoly::variable(state.scale_of_gen[g]), lift<ParamPoly>(a.diff(g)));
        Element<ParamPoly> residual = sub(lhs, rhs);

        DegreeBasis codomain = enumerate_basis(a, d + 1, d - 1, limit);
        std::vector<ParamPoly> coords = coordinates(residual, codomain);
        RrefResult image = rref(differential_matrix(a, d, d - 1, limit).transposed());
        reduce_mod_rref(coords, image.reduced, image.pivot_cols);

        std::vector<ParamPoly> constraints;
        for (auto& c : coords)
            if (!c.is_zero()) constraints.push_back(c);
        detail::normalize_stage_constraints(state, d, state.scale_of_gen[g],
                                            std::move(constraints), log, report.system);

        // diagonal representative for the later stages
        state.images.emplace(g, Element<ParamPoly>::generator(
                                    a.table(), g, ParamPoly::variable(state.scale_of_gen[g])));
        report.stages.push_back(std::move(log));
    }

    report.uniqueness_all = !any_uniqueness_failure;
    report.classes_determined = !any_uniqueness_failure;

    // surviving corrections would mean classes beyond the linear-part data
    for (ParamIndex q = 0; q < report.params->size(); ++q) {
        if (report.params->invertible(q) || state.killed_q.count(q)) continue;
        report.classes_determined = false;
        report.warnings.push_back("correction parameter " + report.params->name(q) +
                                  " is unconstrained: homotopy classes not determined by "
                                  "linear part");
    }

    report.solution = solve_unit_system(report.system);

    // group structure of the sign solutions
    auto& sols = report.solution.sign_solutions;
    std::set<std::vector<int>> sol_set(sols.begin(), sols.end());
    report.group_closed =
        sol_set.count(std::vector<int>(report.solution.unknowns.size(), 1)) != 0;
    for (auto& u : sols)
        for (auto& v : sols) {
            std::vector<int> prod(u.size());
            for (std::size_t i = 0; i < u.size(); ++i) prod[i] = u[i] * v[i];
            if (!sol_set.count(prod)) report.group_closed = false;
        }
    report.elementary_abelian = report.group_closed; // +-1 entries square to identity
    report.elementary_rank = report.solution.sign_rank();
    if (report.solution.finite()) {
        report.order = static_cast<std::uint64_t>(sols.size());
        report.exponent = sols.size() > 1 ? 2 : 1;
    } else {
        report.order = std::nullopt;   // infinite
        report.exponent = std::nullopt;
        report.elementary_abelian = false;
        report.discrepancies.push_back(
            {"computed-group-infinite",
             "the unit system has free directions; the computed linear-part group is infinite"});
    }
    return report;
}

// ---------------------------------------------------------------------------
// Brute-force oracle
// ---------------------------------------------------------------------------

class OracleLatticeError : public std::runtime_error {
public:
    explicit OracleLatticeError(const std::string& what) : std::runtime_error(what) {}
};

struct OracleResult {
    std::vector<std::vector<int>> solutions; // sign vectors over generators, sorted
    bool closed = false;
    bool contains_identity = false;
};

/// Exhaustive check over every assignment of +-1 to the generator scales,
/// keeping the assignments whose diagonal map commutes with the differential
/// exactly.  Justified as a complete list by first certifying, on the
/// integer exponent system read off the differential, that diagonal
/// commutation forces every scale to have absolute value 1.
inline OracleResult brute_force_diagonal_oracle(std::shared_ptr<const SullivanAlgebra> algebra,
                                                int jobs = 1) {
    const SullivanAlgebra& a = *algebra;
    const std::size_t n = a.generator_count();
    if (n >= 26) throw std::invalid_argument("too many generators for exhaustive enumeration");

    // |scale| = 1 certificate: one equation per monomial of each differential
    std::vector<IntVec> rows;
    for (GenIndex g = 0; g < n; ++g)
        for (auto& [m, c] : a.diff(g).terms()) {
            IntVec row(n, Integer(0));
            for (const Factor& f : m.factors()) row[f.gen] += f.exp;
            row[g] -= 1;
            rows.push_back(std::move(row));
        }
    IntegerLattice lattice = integer_kernel(rows, n);
    if (!lattice.trivial())
        throw OracleLatticeError(
            "diagonal commutation does not force unit scales (lattice rank " +
            std::to_string(lattice.rank()) + "); exhaustive +-1 enumeration would be incomplete");

    auto test_range = [&](std::uint64_t begin, std::uint64_t end) {
        std::vector<std::vector<int>> found;
        for (std::uint64_t mask = begin; mask < end; ++mask) {
            std::vector<Rational> scales(n);
            for (std::size_t i = 0; i < n; ++i)
                scales[i] = (mask >> i) & 1u ? Rational(-1) : Rational(1);
            CochainMorphism<Rational> m = diagonal_morphism(algebra, scales);
            if (morphism_residuals(m).ok()) {
                std::vector<int> v(n);
                for (std::size_t i = 0; i < n; ++i) v[i] = (mask >> i) & 1u ? -1 : 1;
                found.push_back(std::move(v));
            }
        }
        return found;
    };

    const std::uint64_t total = std::uint64_t(1) << n;
    OracleResult out;
    if (jobs <= 1) {
        out.solutions = test_range(0, total);
    } else {
        std::vector<std::future<std::vector<std::vector<int>>>> parts;
        const std::uint64_t chunk = (total + jobs - 1) / jobs;
        for (std::uint64_t b = 0; b < total; b += chunk)
            parts.push_back(std::async(std::launch::async, test_range, b,
                                       std::min(total, b + chunk)));
        for (auto& p : parts)
            for (auto& v : p.get()) out.solutions.push_back(std::move(v));
    }
    std::sort(out.solutions.begin(), out.solutions.end());

    std::set<std::vector<int>> sol_set(out.solutions.begin(), out.solutions.end());
    out.contains_identity = sol_set.count(std::vector<int>(n, 1)) != 0;
    out.closed = out.contains_identity;
    for (auto& u : out.solutions)
        for (auto& v : out.solutions) {
            std::vector<int> prod(u.size());
            for (std::size_t i = 0; i < u.size(); ++i) prod[i] = u[i] * v[i];
            if (!sol_set.count(prod)) out.closed = false;
        }
    return out;
}

} // namespace sullivan
