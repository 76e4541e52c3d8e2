#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "errors.hpp"
#include "fp.hpp"
#include "integer.hpp"
#include "matrix.hpp"
#include "polymod.hpp"
#include "polynomial.hpp"
#include "sequences.hpp"

namespace galseq {

// Everything needed to read off the splitting behaviour of a prime from the
// residue field F_p[x]/(g): the shared characteristic polynomial and each
// automorphism's action on xi written in powers of xi.
struct FrobeniusOracle {
    PolyQ charpoly;
    std::vector<PolyQ> images; // images[s](xi) = s(xi)
    Integer denomLcm = 1;      // lcm of all coefficient denominators in images
};

inline FrobeniusOracle build_frobenius_oracle(const GaloisGroup& gg, const FieldElement& xi,
                                              const PolyQ& charpoly) {
    const std::size_t d = static_cast<std::size_t>(gg.order());
    if (charpoly.degree() != static_cast<int>(d) || !charpoly.has_integer_coeffs())
        throw input_error("frobenius oracle: characteristic polynomial must be integral of "
                          "degree equal to the group order");

    // Change of basis: columns of W are the xi-powers in the ambient field's
    // power basis; solving W c = coords(s(xi)) rewrites each translate.
    Matrix<Rational> w(d, d);
    FieldElement power = gg.field->one();
    for (std::size_t k = 0; k < d; ++k) {
        auto coords = power.coords();
        for (std::size_t row = 0; row < d; ++row) w(row, k) = coords[row];
        power = power * xi;
    }
    Matrix<Rational> rhs(d, d);
    for (std::size_t s = 0; s < d; ++s) {
        auto coords = gg.apply(static_cast<int>(s), xi).coords();
        for (std::size_t row = 0; row < d; ++row) rhs(row, s) = coords[row];
    }
    Matrix<Rational> sol = mat_solve(w, rhs);

    FrobeniusOracle o;
    o.charpoly = charpoly;
    for (std::size_t s = 0; s < d; ++s) {
        std::vector<Rational> c;
        c.reserve(d);
        for (std::size_t k = 0; k < d; ++k) c.push_back(sol(k, s));
        PolyQ h(std::move(c));
        for (int k = 0; k <= h.degree(); ++k)
            o.denomLcm = int_lcm(o.denomLcm, h.coeff(k).den());
        o.images.push_back(std::move(h));
    }
    return o;
}

struct OracleOutcome {
    int classIdx = -1;
    std::string reason; // empty on success
};

// Conjugacy class of the Frobenius at p, determined inside one residue
// field: the unique automorphism whose image of xi reduces to xi^p there.
inline OracleOutcome frobenius_class(const FrobeniusOracle& o, const FiniteGroup& g,
                                     std::uint64_t p, std::uint64_t seed,
                                     std::size_t factorIndex = 0) {
    if (o.denomLcm % Integer(static_cast<unsigned long>(p)) == 0)
        return {-1, "oracle unavailable: p divides an automorphism-image denominator"};

    PolyModP f = PolyModP::from_rational(o.charpoly, p);
    PolyModP fp = f.derivative();
    if (polymod_gcd(f, fp).degree() != 0)
        return {-1, "oracle unavailable: F mod p is not squarefree"};

    auto factors = polymod_factor(f, seed);
    if (factorIndex >= factors.size()) factorIndex = 0;
    const PolyModP& modulus = factors[factorIndex].factor;

    PolyModP xp = polymod_powmod(PolyModP::x(p), Integer(static_cast<unsigned long>(p)), modulus);
    int match = -1;
    for (std::size_t s = 0; s < o.images.size(); ++s) {
        PolyModP hs = PolyModP::from_rational(o.images[s], p) % modulus;
        if (!(hs == xp)) continue;
        if (match >= 0) return {-1, "no unique match among the translates"};
        match = static_cast<int>(s);
    }
    if (match < 0) return {-1, "no translate reduces to the Frobenius image"};
    return {g.class_of(match), ""};
}

namespace detail {

// Initial columns with denominators cleared, ready for modular stepping.
struct ReducedFamily {
    std::vector<Integer> colDenom;                 // D_j = lcm of column j's denominators
    std::vector<std::vector<Integer>> colScaled;   // D_j * (a_0 .. a_{d-1})
    std::vector<Integer> companionRow;             // integer last row of R_F (i.e. -c_k)
    int degree = 0;

    explicit ReducedFamily(const SequenceFamily& fam) {
        if (!fam.charpoly.has_integer_coeffs())
            throw input_error("prime classification needs an integral characteristic polynomial");
        degree = fam.degree();
        const std::size_t d = static_cast<std::size_t>(degree);
        for (int j = 0; j < fam.classes(); ++j) {
            Integer den = 1;
            auto col = fam.initial_column(j);
            for (const Rational& a : col) den = int_lcm(den, a.den());
            std::vector<Integer> scaled;
            scaled.reserve(d);
            for (const Rational& a : col) {
                Rational s = a * Rational(den);
                scaled.push_back(s.to_integer());
            }
            colDenom.push_back(den);
            colScaled.push_back(std::move(scaled));
        }
        for (std::size_t k = 0; k < d; ++k)
            companionRow.push_back((-fam.charpoly.coeff(static_cast<int>(k))).to_integer());
    }
};

inline std::vector<std::vector<std::uint64_t>> companion_mod_p(const ReducedFamily& rf,
                                                               std::uint64_t p) {
    const std::size_t d = static_cast<std::size_t>(rf.degree);
    std::vector<std::vector<std::uint64_t>> m(d, std::vector<std::uint64_t>(d, 0));
    for (std::size_t k = 0; k + 1 < d; ++k) m[k][k + 1] = 1;
    for (std::size_t k = 0; k < d; ++k) m[d - 1][k] = mod_reduce(rf.companionRow[k], p);
    return m;
}

inline std::vector<std::vector<std::uint64_t>> mat_mul_mod(
    const std::vector<std::vector<std::uint64_t>>& a,
    const std::vector<std::vector<std::uint64_t>>& b, std::uint64_t p) {
    const std::size_t n = a.size();
    std::vector<std::vector<std::uint64_t>> c(n, std::vector<std::uint64_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            std::uint64_t aik = a[i][k];
            if (aik == 0) continue;
            for (std::size_t j = 0; j < n; ++j)
                c[i][j] = mod_add(c[i][j], mod_mul(aik, b[k][j], p), p);
        }
    return c;
}

inline std::vector<std::vector<std::uint64_t>> mat_pow_mod(
    std::vector<std::vector<std::uint64_t>> base, std::uint64_t e, std::uint64_t p) {
    const std::size_t n = base.size();
    std::vector<std::vector<std::uint64_t>> r(n, std::vector<std::uint64_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i) r[i][i] = 1;
    while (e > 0) {
        if (e & 1) r = mat_mul_mod(r, base, p);
        base = mat_mul_mod(base, base, p);
        e >>= 1;
    }
    return r;
}

// Residues of a_{K_j, p} mod p for each class; nullopt when p divides D_j.
inline std::vector<std::optional<std::uint64_t>> residues_mod_p(const ReducedFamily& rf,
                                                                std::uint64_t p) {
    const std::size_t d = static_cast<std::size_t>(rf.degree);
    std::vector<std::optional<std::uint64_t>> out;
    auto mp = mat_pow_mod(companion_mod_p(rf, p), p, p);
    for (std::size_t j = 0; j < rf.colDenom.size(); ++j) {
        std::uint64_t den = mod_reduce(rf.colDenom[j], p);
        if (den == 0) {
            out.push_back(std::nullopt);
            continue;
        }
        std::uint64_t first = 0;
        for (std::size_t k = 0; k < d; ++k)
            first = mod_add(first, mod_mul(mp[0][k], mod_reduce(rf.colScaled[j][k], p), p), p);
        out.push_back(mod_mul(first, mod_inv(den, p), p));
    }
    return out;
}

} // namespace detail

// Residue of each class sequence at index p, modulo p; -1 marks a class
// whose denominators collide with p.
inline std::vector<long long> term_mod_p(const SequenceFamily& fam, std::uint64_t p) {
    if (!is_prime_u64(p)) throw input_error("term_mod_p: modulus must be prime");
    detail::ReducedFamily rf(fam);
    std::vector<long long> out;
    for (const auto& r : detail::residues_mod_p(rf, p))
        out.push_back(r ? static_cast<long long>(*r) : -1LL);
    return out;
}

struct PrimeVerdict {
    std::uint64_t p = 0;
    bool skipped = false;
    std::string reason;                 // set when skipped
    std::vector<long long> residues;    // per class; -1 = column skipped
    int sequenceClass = -1;             // unique class with residue 1, else -1
    int oracleClass = -1;               // -1 when the oracle is unavailable
    std::string oracleReason;           // set when oracleClass is -1
    bool agree = false;                 // both defined and equal
    bool consistent = true;             // residues/oracle tell one coherent story
};

struct ExceptionalReport {
    std::vector<std::uint64_t> predicted;  // prime divisors found by trial division
    std::vector<Integer> cofactors;        // unfactored leftovers beyond the bound
    std::vector<std::uint64_t> observed;   // primes whose verdict is inconsistent
};

struct ClassifyOptions {
    std::uint64_t maxPrime = 300;
    int jobs = 1;
    bool oracle = true;
    std::uint64_t seed = 1;
    std::uint64_t trialBound = 1000000;
};

struct Classification {
    std::vector<PrimeVerdict> verdicts;
    ExceptionalReport report;
};

namespace detail {

inline void absorb_prime_support(const Integer& value, std::uint64_t bound,
                                 std::vector<std::uint64_t>& primes,
                                 std::vector<Integer>& cofactors) {
    Integer n = int_abs(value);
    if (n <= 1) return;
    TrialFactorization tf = trial_division(n, bound);
    for (const Integer& q : tf.primes) primes.push_back(to_u64(q));
    if (tf.cofactor > 1) {
        if (is_prime(tf.cofactor) && tf.cofactor.fits_ulong_p())
            primes.push_back(to_u64(tf.cofactor));
        else
            cofactors.push_back(tf.cofactor);
    }
}

inline void classify_one(const ReducedFamily& rf, const FrobeniusOracle& oracle,
                         const FiniteGroup& group, const Integer& disc,
                         const ClassifyOptions& opt, PrimeVerdict& v) {
    const std::uint64_t p = v.p;

    bool ramified = disc % Integer(static_cast<unsigned long>(p)) == 0;

    auto residues = residues_mod_p(rf, p);
    bool anyComputed = false;
    int ones = 0, onesClass = -1;
    bool binary = true;
    for (std::size_t j = 0; j < residues.size(); ++j) {
        if (!residues[j]) {
            v.residues.push_back(-1);
            continue;
        }
        anyComputed = true;
        std::uint64_t r = *residues[j];
        v.residues.push_back(static_cast<long long>(r));
        if (r == 1) {
            ++ones;
            onesClass = static_cast<int>(j);
        } else if (r != 0) {
            binary = false;
        }
    }
    if (ones == 1 && binary) v.sequenceClass = onesClass;

    if (ramified) {
        v.skipped = true;
        v.reason = "divides disc(F)";
        return;
    }
    if (!anyComputed) {
        v.skipped = true;
        v.reason = "divides denominators";
        return;
    }

    if (opt.oracle) {
        OracleOutcome out = frobenius_class(oracle, group, p, opt.seed ^ p);
        v.oracleClass = out.classIdx;
        v.oracleReason = out.reason;
    }
    v.agree = v.oracleClass >= 0 && v.sequenceClass == v.oracleClass;

    // Coherent outcomes: every computed residue is 0/1; at most one class
    // answers 1; a sole 1 must name the oracle's class (when known); an
    // all-zero row is only explained by the true class being skipped.
    v.consistent = binary && ones <= 1;
    if (v.consistent && v.oracleClass >= 0) {
        if (ones == 1)
            v.consistent = v.sequenceClass == v.oracleClass;
        else
            v.consistent = v.residues[static_cast<std::size_t>(v.oracleClass)] == -1;
    }
    if (v.consistent && v.oracleClass < 0 && opt.oracle && ones == 0) {
        // No witness either way; count the prime as unexplained only if
        // every column was in fact computed.
        bool anySkipped = false;
        for (long long r : v.residues) anySkipped |= r == -1;
        v.consistent = anySkipped;
    }
}

} // namespace detail

inline Classification classify_primes(const SequenceFamily& fam, const FrobeniusOracle& oracle,
                                      const ClassifyOptions& opt) {
    if (opt.maxPrime < 2) throw input_error("classify_primes: range must reach 2");
    detail::ReducedFamily rf(fam);
    Integer disc = poly_discriminant(fam.charpoly).to_integer();
    if (disc == 0) throw input_error("classify_primes: characteristic polynomial is inseparable");

    Classification result;

    // Predicted exceptional superset: divisors of disc(F), of det Gamma
    // squared (a rational number even in the mixed-parity case), and of the
    // initial-term denominators.
    {
        std::vector<std::uint64_t>& pred = result.report.predicted;
        detail::absorb_prime_support(disc, opt.trialBound, pred, result.report.cofactors);
        Rational det2 = (fam.gm.det * fam.gm.det).to_rational();
        detail::absorb_prime_support(det2.num(), opt.trialBound, pred, result.report.cofactors);
        detail::absorb_prime_support(det2.den(), opt.trialBound, pred, result.report.cofactors);
        for (const Integer& den : rf.colDenom)
            detail::absorb_prime_support(den, opt.trialBound, pred, result.report.cofactors);
        std::sort(pred.begin(), pred.end());
        pred.erase(std::unique(pred.begin(), pred.end()), pred.end());
    }

    auto primes = primes_up_to(opt.maxPrime);
    result.verdicts.resize(primes.size());
    for (std::size_t i = 0; i < primes.size(); ++i) result.verdicts[i].p = primes[i];

    const FiniteGroup& group = fam.gg.group;
    int jobs = opt.jobs > 0 ? opt.jobs : 1;
    if (jobs <= 1 || primes.size() < 2) {
        for (auto& v : result.verdicts) detail::classify_one(rf, oracle, group, disc, opt, v);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t)
            pool.emplace_back([&, t]() {
                for (std::size_t i = static_cast<std::size_t>(t); i < result.verdicts.size();
                     i += static_cast<std::size_t>(jobs))
                    detail::classify_one(rf, oracle, group, disc, opt, result.verdicts[i]);
            });
        for (auto& th : pool) th.join();
    }

    for (const auto& v : result.verdicts)
        if (!v.skipped && !v.consistent) result.report.observed.push_back(v.p);
    return result;
}

} // namespace galseq
