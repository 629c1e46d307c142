#include "fgames/metric.hpp"

#include <numeric>

namespace fgames {

Rational Rational::make(long long num, long long den) {
    if (den == 0) throw GameError("RangeOutsideS", "zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return Rational{num, den};
}

void validate_ultraspace(const UltraSpace& m) {
    if (m.dist.size() != m.size)
        throw GameError("NotUltrametric", "distance matrix does not match the size");
    for (const auto& row : m.dist)
        if (row.size() != m.size)
            throw GameError("NotUltrametric", "distance matrix is not square");
    for (std::size_t i = 0; i < m.size; ++i) {
        if (!m.dist[i][i].is_zero())
            throw GameError("NotUltrametric", "nonzero distance on the diagonal");
        for (std::size_t j = 0; j < m.size; ++j) {
            if (m.dist[i][j] != m.dist[j][i])
                throw GameError("NotUltrametric", "distance matrix is not symmetric");
            if (i != j) {
                const Rational& d = m.dist[i][j];
                if (d.num <= 0)
                    throw GameError("NotUltrametric", "off-diagonal distance not positive");
                if (d.num != 1)
                    throw GameError("RangeOutsideS", "distance outside {0} u {1/n}");
            }
        }
    }
    for (std::size_t i = 0; i < m.size; ++i)
        for (std::size_t j = 0; j < m.size; ++j)
            for (std::size_t k = 0; k < m.size; ++k) {
                const Rational& ik = m.dist[i][k];
                const Rational& ij = m.dist[i][j];
                const Rational& jk = m.dist[j][k];
                const Rational& bound = (ij < jk) ? jk : ij;
                if (bound < ik)
                    throw GameError("NotUltrametric", "triangle " + std::to_string(i) + "," +
                                                          std::to_string(j) + "," +
                                                          std::to_string(k) + " fails");
            }
    for (std::size_t i : m.marked)
        if (i >= m.size) throw GameError("BadAliceIndex", "marked point out of range");
}

UltraSpace met_of_game(const FiniteGame& g) {
    UltraSpace m;
    m.size = g.size();
    m.dist.assign(m.size, std::vector<Rational>(m.size, Rational{0, 1}));
    for (std::size_t i = 0; i < m.size; ++i)
        for (std::size_t j = i + 1; j < m.size; ++j) {
            const auto d = static_cast<long long>(delta(g.runs[i], g.runs[j]));
            m.dist[i][j] = m.dist[j][i] = Rational::make(1, d + 1);
        }
    m.marked = g.alice;
    return m;
}

FiniteGame game_of_met(const UltraSpace& m) {
    validate_ultraspace(m);
    std::vector<std::vector<std::size_t>> d(m.size, std::vector<std::size_t>(m.size, kNoDelta));
    for (std::size_t i = 0; i < m.size; ++i)
        for (std::size_t j = 0; j < m.size; ++j)
            if (i != j) d[i][j] = static_cast<std::size_t>(m.dist[i][j].den - 1);
    std::vector<bool> flags(m.size, false);
    for (std::size_t i : m.marked) flags[i] = true;
    return build_game_from_delta(d, flags);
}

std::vector<RunSpec> transport_automorphism(const PartialAutomorphism& u,
                                            const std::vector<RunSpec>& sample) {
    for (std::size_t i = 0; i < sample.size(); ++i)
        for (std::size_t j = i + 1; j < sample.size(); ++j)
            if (delta(sample[i], sample[j]) >= u.depth)
                throw GameError("DepthInsufficient", "sample runs do not resolve in the window");
    std::vector<RunSpec> out;
    out.reserve(sample.size());
    for (const RunSpec& r : sample) {
        const std::optional<RunSpec> image = u.run_image(r);
        if (!image)
            throw GameError("DepthInsufficient", "sample run not resolvable in the window");
        out.push_back(*image);
    }
    return out;
}

}  // namespace fgames
