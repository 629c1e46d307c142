#pragma once

#include "fgames/fraisse.hpp"

namespace fgames {

/// Exact rational, normalized with positive denominator.
struct Rational {
    long long num = 0;
    long long den = 1;

    static Rational make(long long num, long long den);
    bool is_zero() const { return num == 0; }

    friend bool operator==(const Rational&, const Rational&) = default;
    auto operator<=>(const Rational& other) const {
        return num * other.den <=> other.num * den;
    }
};

/// Finite ultrametric space with distances in S = {0} u {1/n : n > 0} and a
/// marked point set.
struct UltraSpace {
    std::size_t size = 0;
    std::vector<std::vector<Rational>> dist;
    std::set<std::size_t> marked;
};

/// Diagonal zero, symmetric positive off-diagonal, ultrametric triangle law,
/// range inside S. Throws NotUltrametric / RangeOutsideS on violation.
void validate_ultraspace(const UltraSpace& m);

/// d(R, R') = 1 / (delta(R, R') + 1); marked points are the Alice runs.
UltraSpace met_of_game(const FiniteGame& g);

/// Dendrogram reconstruction: a finite game whose run metric realizes the given
/// space exactly (points in order, marks preserved).
FiniteGame game_of_met(const UltraSpace& m);

/// Transports a window automorphism to a finite sample of runs: images preserve
/// all pairwise distances exactly and the eventually-zero markings. Requires all
/// pairwise deltas to resolve within the automorphism's depth.
/// Throws DepthInsufficient.
std::vector<RunSpec> transport_automorphism(const PartialAutomorphism& u,
                                            const std::vector<RunSpec>& sample);

}  // namespace fgames
