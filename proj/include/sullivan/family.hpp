#pragma once

#include "sullivan/algebra.hpp"

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace sullivan {

inline constexpr int kDefaultFamilyBound = 3;

/// Degree table of the built-in family, indexed by n >= 1:
///   x_k of degree 2^k for k <= n+1, x_{n+2} of degree 2^{n+2} - 2,
///   y1, y2, y3 of degrees 5*2^{n+1} - 3, 6*2^{n+1} - 5, 7*2^{n+1} - 7,
///   w of degree 9*2^{n+2} - 17 and z of degree 9*2^{n+2} - 1.
struct FamilyDegrees {
    int n = 1;
    std::vector<int> x;
    int y1, y2, y3, w, z;

    explicit FamilyDegrees(int n) : n(n) {
        const long p = 1L << (n + 1); // 2^{n+1}
        for (int k = 1; k <= n + 1; ++k) x.push_back(1 << k);
        x.push_back(static_cast<int>(2 * p - 2));
        y1 = static_cast<int>(5 * p - 3);
        y2 = static_cast<int>(6 * p - 5);
        y3 = static_cast<int>(7 * p - 7);
        w = static_cast<int>(18 * p - 17);
        z = static_cast<int>(18 * p - 1);
    }
};

/// The family instance for a given n: constructed generators plus the
/// differential, with the d^2 and minimality checks run on construction.
struct FamilyInstance {
    int n = 1;
    FamilyDegrees degrees{1};
    std::shared_ptr<SullivanAlgebra> algebra;

    GenIndex x(int k) const { return static_cast<GenIndex>(k - 1); } // 1-based
    GenIndex gen_y1() const { return static_cast<GenIndex>(n + 2); }
    GenIndex gen_y2() const { return static_cast<GenIndex>(n + 3); }
    GenIndex gen_y3() const { return static_cast<GenIndex>(n + 4); }
    GenIndex gen_w() const { return static_cast<GenIndex>(n + 5); }
    GenIndex gen_z() const { return static_cast<GenIndex>(n + 6); }
};

inline FamilyInstance build_family(int n, int bound = kDefaultFamilyBound) {
    if (n == 0)
        throw std::invalid_argument(
            "n = 0 is rejected: generator degrees collide (|x1| = |x2| = 2 and "
            "|y1| = |y2| = |y3| = 7), so stage spaces are not one-dimensional");
    if (n < 0) throw std::invalid_argument("n must be positive");
    if (n > bound)
        throw std::invalid_argument("n = " + std::to_string(n) +
                                    " exceeds the configured bound " + std::to_string(bound));

    FamilyDegrees deg(n);
    std::vector<GeneratorDecl> decls;
    for (int k = 1; k <= n + 2; ++k)
        decls.push_back({"x" + std::to_string(k), deg.x[k - 1], 0});
    decls.push_back({"y1", deg.y1, 0});
    decls.push_back({"y2", deg.y2, 0});
    decls.push_back({"y3", deg.y3, 0});
    decls.push_back({"w", deg.w, 0});
    decls.push_back({"z", deg.z, 0});

    GeneratorTable staging(decls);
    auto mono = [&](std::vector<Factor> fs) {
        return normalize<Rational>(staging, std::move(fs), Rational(1));
    };
    const GenIndex xn1 = static_cast<GenIndex>(n);     // x_{n+1}
    const GenIndex xn2 = static_cast<GenIndex>(n + 1); // x_{n+2}
    const GenIndex y1 = static_cast<GenIndex>(n + 2), y2 = y1 + 1, y3 = y1 + 2;

    std::vector<Element<Rational>> diffs(decls.size(), Element<Rational>(&staging));

    diffs[y1] = mono({{xn1, 3}, {xn2, 1}});
    diffs[y2] = mono({{xn1, 2}, {xn2, 2}});
    diffs[y3] = mono({{xn1, 1}, {xn2, 3}});

    {
        std::vector<Factor> fs{{0, 28}};
        for (int k = 2; k <= n; ++k) fs.push_back({static_cast<GenIndex>(k - 1), 18});
        diffs[y1 + 3] = mono(std::move(fs)); // w
    }

    {
        const std::uint32_t a = static_cast<std::uint32_t>((1u << n) + 7); // exponent of x1
        Element<Rational> dz =
            add(sub(mono({{0, a}, {y1, 1}, {y2, 1}, {xn2, 3}}),
                    mono({{0, a}, {y1, 1}, {y3, 1}, {xn1, 1}, {xn2, 2}})),
                mono({{0, a}, {y2, 1}, {y3, 1}, {xn1, 2}, {xn2, 1}}));
        for (int k = 1; k <= n + 1; ++k)
            dz = add(dz, mono({{static_cast<GenIndex>(k - 1),
                                static_cast<std::uint32_t>(9u << (n + 2 - k))}}));
        dz = add(dz, mono({{0, 9}, {xn2, 9}}));
        diffs[y1 + 4] = dz; // z
    }

    FamilyInstance inst;
    inst.n = n;
    inst.degrees = deg;
    inst.algebra = std::make_shared<SullivanAlgebra>("family_n" + std::to_string(n),
                                                     std::move(decls), std::move(diffs));

    GeneratorCheckReport dsq = check_d_squared(*inst.algebra);
    if (!dsq.ok())
        throw std::logic_error("family construction broke d^2 = 0 on '" +
                               inst.algebra->table().name(dsq.failures.front().generator) + "'");
    GeneratorCheckReport min = check_minimal_1connected(*inst.algebra);
    if (!min.ok()) throw std::logic_error("family construction is not minimal 1-connected");
    return inst;
}

} // namespace sullivan
