// Acceptance gate for the bundled jobs: six criteria, one PASS/FAIL line
// each, exit status 0 only when every criterion holds.  All comparisons are
// exact; there are no tolerances anywhere in this file.

#include <algorithm>
#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "galseq/chartab.hpp"
#include "galseq/config.hpp"
#include "galseq/declaw.hpp"
#include "galseq/groupdet.hpp"
#include "galseq/sequences.hpp"

namespace {

using namespace galseq;

struct check_failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void check(bool ok, const std::string& what) {
    if (!ok) throw check_failure(what);
}

std::string config_path(const std::string& name) {
    return std::string(GALSEQ_CONFIG_DIR) + "/" + name;
}

// ---------------------------------------------------------------------------
// Reference data for the degree-12 job (group A4 acting on a normal basis).

// Ascending coefficients of the shared characteristic polynomial, constant
// term first.
const char* const kDeg12Charpoly[13] = {
    "133318780807273404444",
    "262600792236322628544",
    "137777496999186460164",
    "8381731881286962404",
    "1238519020079163369",
    "172513732994029238",
    "7576066505433801",
    "32213365427586",
    "885646536828",
    "1180522454",
    "25493717",
    "-50",
    "1",
};

// The twelve initial terms of each class sequence, classes K1..K4.
const char* const kDeg12Initial[4][12] = {
    {
        "1/50",
        "1",
        "-4135364071611241/14424104400",
        "-260547744288653071/4808034800",
        "26300466432052004553821/3606026100",
        "500827742889717806352169/240401740",
        "-668975249439161245987029364843/3606026100",
        "-4263502226999619804770492844999/60100435",
        "4252431954040670758350722151769286953/901506525",
        "2718092977698862953735451274910193880983/1202008700",
        "-108084862311333479116432375783494868959858356/901506525",
        "-249332171693508539722479652354516785602310989741/3606026100",
    },
    {
        "3/50",
        "0",
        "-4964786092726823/14424104400",
        "-178110438425349713/4808034800",
        "31574757808051685512063/3606026100",
        "429793472896875575390307/240401740",
        "-803379315883723829261636004029/3606026100",
        "-4027348355322179825440668139282/60100435",
        "5108370449133905137640756221859719934/901506525",
        "2707893528532495505903540005737181936049/1202008700",
        "-129880723115465709986373470186715277529010493/901506525",
        "-256961308855093814076389357839704579900571992223/3606026100",
    },
    {
        "2/25",
        "0",
        "-379245606/1975",
        "-54786318908/1975",
        "9638668421452394/1975",
        "464962850044199918/395",
        "-245209041778488707648152/1975",
        "-16569309380188555032415002/395",
        "6235871278796055129644393225618/1975",
        "2710965787654331821079588907831936/1975",
        "-158525166496531958209545246760654609686/1975",
        "-84319186486699737581686554509272598366474/1975",
    },
    {
        "2/25",
        "0",
        "-388634156/1975",
        "-55962982458/1975",
        "9848511058081944/1975",
        "475084503041337148/395",
        "-250546971352416621277002/1975",
        "-16930004890600853013935032/395",
        "6371619289231042593431953974568/1975",
        "2769980509985893459404994437740986/1975",
        "-161976083777001208967454900637719599036/1975",
        "-86154721778368501577407226916799238923024/1975",
    },
};

// Classification of the primes up to 300, one list per class.
const std::vector<std::uint64_t> kDeg12ClassPrimes[4] = {
    {97, 173, 269},
    {41, 47, 59, 113, 127, 131, 151, 193, 199, 211, 223, 257, 293},
    {19, 23, 31, 37, 53, 67, 83, 89, 109, 139, 149, 167, 191, 227, 239, 263, 277, 281},
    {7, 13, 17, 29, 61, 71, 73, 101, 103, 157, 163, 179, 181, 197, 229, 233, 241, 251, 271,
     283},
};

// Primes that the exceptional report must flag in advance.
const std::uint64_t kDeg12MustPredict[] = {2, 3, 5, 11, 43, 107, 137};

PolyQ deg12_charpoly() {
    std::vector<Rational> c;
    c.reserve(13);
    for (const char* s : kDeg12Charpoly) c.push_back(Rational::parse(s));
    return PolyQ(std::move(c));
}

// ---------------------------------------------------------------------------

std::vector<std::vector<std::uint64_t>> collect_by_class(const SequenceFamily& fam,
                                                         const Classification& cls) {
    std::vector<std::vector<std::uint64_t>> byClass(static_cast<std::size_t>(fam.classes()));
    for (const PrimeVerdict& v : cls.verdicts)
        if (!v.skipped && v.consistent && v.sequenceClass >= 0)
            byClass[static_cast<std::size_t>(v.sequenceClass)].push_back(v.p);
    return byClass;
}

Classification classify_fixture(const JobConfig& cfg, const JobContext& ctx,
                                const SequenceFamily& fam, std::uint64_t maxPrime, int jobs) {
    FrobeniusOracle oracle = build_frobenius_oracle(ctx.gg, ctx.xi, fam.charpoly);
    ClassifyOptions opt;
    opt.maxPrime = maxPrime;
    opt.jobs = jobs;
    opt.seed = cfg.factorSeed;
    opt.trialBound = cfg.trialBound;
    return classify_primes(fam, oracle, opt);
}

// The cross-job property suite of criterion 6.
void run_property_suite(const std::string& label, const JobContext& ctx,
                        const SequenceFamily& fam, const Classification& cls) {
    auto require = [&](bool ok, const std::string& what) {
        if (!ok) throw check_failure(label + ": " + what);
    };

    const GaloisGroup& gg = ctx.gg;
    const FiniteGroup& g = gg.group;
    const int n = g.order();
    const FieldPtr& field = ctx.field;

    // Group matrix: nonzero determinant and the adjugate identity.
    require(!fam.gm.det.is_zero(), "group matrix determinant vanishes");
    {
        Matrix<FieldElement> prod = fam.gm.gamma * fam.gm.adjugate;
        for (std::size_t i = 0; i < prod.rows(); ++i)
            for (std::size_t j = 0; j < prod.cols(); ++j) {
                const FieldElement& want = i == j ? fam.gm.det : field->zero();
                require(prod(i, j) == want, "gamma * adjugate is not det * identity");
            }
    }

    // All three term formulas agree through index 50 (and stay rational,
    // which the conversions inside enforce).
    for (int j = 0; j < fam.classes(); ++j) {
        auto rec = recurrence_terms(fam.initial_column(j), fam.charpoly, 51);
        for (unsigned long i = 0; i <= 50; ++i) {
            Rational direct = term_direct(fam, j, i);
            require(rec[i] == direct, "recurrence and group-sum terms disagree at class " +
                                          std::to_string(j) + ", index " + std::to_string(i));
            require(direct == term_trace_form(fam, j, i),
                    "trace-form term disagrees at class " + std::to_string(j) + ", index " +
                        std::to_string(i));
        }
    }

    // The companion matrix diagonalizes through P with eigenvalues the
    // inverse translates of xi.
    {
        Matrix<Rational> rq = companion_matrix(fam.charpoly);
        Matrix<FieldElement> r(rq.rows(), rq.cols());
        for (std::size_t i = 0; i < rq.rows(); ++i)
            for (std::size_t j = 0; j < rq.cols(); ++j) r(i, j) = field->from_rational(rq(i, j));
        Matrix<FieldElement> lhs = r * fam.P;
        for (std::size_t i = 0; i < lhs.rows(); ++i)
            for (std::size_t j = 0; j < lhs.cols(); ++j) {
                FieldElement want = fam.P(i, j) * gg.apply(g.inverse(static_cast<int>(j)), ctx.xi);
                require(lhs(i, j) == want, "companion matrix is not diagonalized by P");
            }
    }

    // The class sequences evaluate to exact 0/1 indicator functions.
    for (int j = 0; j < fam.classes(); ++j) {
        std::vector<Rational> vals = class_function_values(fam, j);
        for (int t = 0; t < n; ++t)
            require(vals[static_cast<std::size_t>(t)] == Rational(g.class_of(t) == j ? 1 : 0),
                    "class function is not the indicator of class " + std::to_string(j));
    }

    // Character table: degree sum, both orthogonality forms, and the
    // indicator expansion.
    {
        CharacterTable t = character_table(g);
        Integer sum = 0;
        for (const Integer& d : t.degrees) sum += d * d;
        require(sum == g.order(), "character degree squares do not sum to the group order");

        Matrix<Rational> ind = indicator_matrix(t);
        for (std::size_t i = 0; i < ind.rows(); ++i)
            for (std::size_t j = 0; j < ind.cols(); ++j)
                require(ind(i, j) == Rational(i == j ? 1 : 0),
                        "indicator expansion is not the Kronecker delta");

        const FieldPtr& cf = t.cyclo.field;
        const int r = t.rows();
        for (int j = 0; j < r; ++j) {
            int rep = g.class_representative(j);
            int jInv = g.class_of(g.inverse(rep));
            for (int k = 0; k < r; ++k) {
                FieldElement s = cf->zero();
                for (int i = 0; i < r; ++i)
                    s += t.values(static_cast<std::size_t>(i), static_cast<std::size_t>(jInv)) *
                         t.values(static_cast<std::size_t>(i), static_cast<std::size_t>(k));
                FieldElement want = j == k
                                        ? cf->from_rational(Rational(g.centralizer_order(rep)))
                                        : cf->zero();
                require(s == want, "column orthogonality fails at classes " + std::to_string(j) +
                                       "," + std::to_string(k));
            }
        }
    }

    // Left translation moves the symbolic partials by sign; feasible to
    // expand fully for orders up to 6.
    if (n <= 6) {
        SymbolicGroupDet sym = sym_group_det(g);
        for (int gamma = 0; gamma < n; ++gamma) {
            auto perm = left_translation_perm(g, gamma);
            Rational sgn(g.sign(gamma));
            require(sym.det.relabel(perm) == sym.det * sgn,
                    "determinant sign action fails at element " + std::to_string(gamma));
            for (int t = 0; t < n; ++t)
                require(sym.partials[static_cast<std::size_t>(t)].relabel(perm) ==
                            sym.partials[static_cast<std::size_t>(g.op(gamma, t))] * sgn,
                        "partial sign action fails at (" + std::to_string(gamma) + "," +
                            std::to_string(t) + ")");
        }
    }

    // Classification discipline: outside the predicted exceptional set every
    // prime gets a clean one-hot residue row and the independent splitting
    // check agrees.
    const auto& pred = cls.report.predicted;
    auto predicted = [&](std::uint64_t p) {
        return std::find(pred.begin(), pred.end(), p) != pred.end();
    };
    for (const PrimeVerdict& v : cls.verdicts) {
        const std::string at = " at p=" + std::to_string(v.p);
        if (v.skipped) {
            require(predicted(v.p), "skipped prime was not predicted" + at);
            continue;
        }
        if (predicted(v.p)) continue;
        int ones = 0;
        for (long long r : v.residues) {
            require(r == 0 || r == 1, "residue outside {0,1}" + at);
            if (r == 1) ++ones;
        }
        require(ones == 1, "not exactly one class answers 1" + at);
        require(v.consistent, "inconsistent verdict" + at);
        require(v.agree, "independent splitting check disagrees" + at);
    }
}

struct Runner {
    int failed = 0;

    template <class F>
    void criterion(int idx, const std::string& name, F&& body) {
        try {
            body();
            std::cout << "PASS criterion " << idx << ": " << name << "\n";
        } catch (const std::exception& e) {
            ++failed;
            std::cout << "FAIL criterion " << idx << ": " << name << " (" << e.what() << ")\n";
        }
        std::cout.flush();
    }
};

} // namespace

int main() {
    Runner run;

    // Shared state for the degree-12 job, reused across criteria 2, 3 and 6.
    std::optional<JobContext> ctx12;
    std::optional<SequenceFamily> fam12;
    std::optional<Classification> cls12;

    run.criterion(1, "degree-12 job: minimal polynomial of the generator", [&] {
        JobConfig cfg = load_config_file(config_path("a4deg12.json"));
        FieldPtr field = NumberField::create(cfg.basePolynomial);
        FieldElement xi = field->element(PolyQ(cfg.generator));
        check(min_poly(xi) == deg12_charpoly(),
              "minimal polynomial does not match the reference coefficients");
    });

    run.criterion(2, "degree-12 job: twelve exact initial terms per class", [&] {
        JobConfig cfg = load_config_file(config_path("a4deg12.json"));
        ctx12 = build_context(cfg);
        fam12 = build_sequence_family(ctx12->gg, ctx12->xi);
        check(fam12->classes() == 4, "expected four conjugacy classes");
        check(fam12->charpoly == deg12_charpoly(), "recurrence polynomial mismatch");
        for (int j = 0; j < 4; ++j) {
            auto col = fam12->initial_column(j);
            check(col.size() == 12, "expected twelve initial terms");
            for (std::size_t i = 0; i < 12; ++i)
                check(col[i] == Rational::parse(kDeg12Initial[j][i]),
                      "initial term mismatch in column K" + std::to_string(j + 1) +
                          " at index " + std::to_string(i));
        }
    });

    run.criterion(3, "degree-12 job: prime classification up to 300", [&] {
        check(ctx12.has_value() && fam12.has_value(),
              "sequence family unavailable (criterion 2 failed)");
        JobConfig cfg = load_config_file(config_path("a4deg12.json"));
        cls12 = classify_fixture(cfg, *ctx12, *fam12, 300, 4);
        auto byClass = collect_by_class(*fam12, *cls12);
        for (int j = 0; j < 4; ++j)
            check(byClass[static_cast<std::size_t>(j)] == kDeg12ClassPrimes[j],
                  "prime list mismatch for class K" + std::to_string(j + 1));
        const auto& pred = cls12->report.predicted;
        for (std::uint64_t q : kDeg12MustPredict)
            check(std::find(pred.begin(), pred.end(), q) != pred.end(),
                  "predicted exceptional set is missing " + std::to_string(q));
    });

    run.criterion(4,
                  "order-6 group determinant: character factorization, identity partial "
                  "quadratic*cubic at unit scale (a 1/6 prefactor would contradict its "
                  "integer coefficients)",
                  [&] {
                      FiniteGroup g =
                          FiniteGroup::from_permutations(fixtures::s3_sextic_permutations());
                      SymbolicGroupDet sym = sym_group_det(g);
                      fixtures::S3DetFactors f = fixtures::s3_printed_factors();
                      check(sym.det == f.lin * f.sgn * f.quad * f.quad,
                            "determinant is not linear * sign * quadratic^2");
                      MultiPoly product = f.quad * f.cubic;
                      check(sym.partials[0] == product,
                            "identity partial is not the quadratic-cubic product");
                      check(!(sym.partials[0] == product * Rational(Integer(1), Integer(6))),
                            "scale cross-check collapsed");
                  });

    run.criterion(5, "golden field end to end: identity class exactly at p = +-1 mod 5", [&] {
        JobConfig cfg = load_config_file(config_path("golden.json"));
        JobContext ctx = build_context(cfg);
        SequenceFamily fam = build_sequence_family(ctx.gg, ctx.xi);
        check(fam.initial_column(0) == std::vector<Rational>{Rational(1), Rational(1)},
              "identity-class initial terms are not (1, 1)");
        check(fam.initial_column(1) == std::vector<Rational>{Rational(1), Rational(0)},
              "second-class initial terms are not (1, 0)");

        Classification cls = classify_fixture(cfg, ctx, fam, 1000, 2);
        const auto& pred = cls.report.predicted;
        for (const PrimeVerdict& v : cls.verdicts) {
            if (v.skipped) {
                check(std::find(pred.begin(), pred.end(), v.p) != pred.end(),
                      "skipped prime was not predicted: " + std::to_string(v.p));
                continue;
            }
            if (std::find(pred.begin(), pred.end(), v.p) != pred.end()) continue;
            bool identityClass = v.sequenceClass == 0;
            bool residueOne = v.p % 5 == 1 || v.p % 5 == 4;
            check(identityClass == residueOne,
                  "splitting law fails at p=" + std::to_string(v.p));
            check(v.consistent && v.agree,
                  "verdict not confirmed at p=" + std::to_string(v.p));
        }
    });

    run.criterion(6, "property suite on all four bundled jobs", [&] {
        const char* fresh[3] = {"golden.json", "cyclic3.json", "s3sextic.json"};
        const char* labels[3] = {"golden", "cubic", "sextic"};
        for (int k = 0; k < 3; ++k) {
            JobConfig cfg = load_config_file(config_path(fresh[k]));
            JobContext ctx = build_context(cfg);
            SequenceFamily fam = build_sequence_family(ctx.gg, ctx.xi);
            Classification cls = classify_fixture(cfg, ctx, fam, 300, 4);
            run_property_suite(labels[k], ctx, fam, cls);
        }
        if (!(ctx12 && fam12 && cls12)) {
            JobConfig cfg = load_config_file(config_path("a4deg12.json"));
            ctx12 = build_context(cfg);
            fam12 = build_sequence_family(ctx12->gg, ctx12->xi);
            cls12 = classify_fixture(cfg, *ctx12, *fam12, 300, 4);
        }
        run_property_suite("degree-12", *ctx12, *fam12, *cls12);
    });

    std::cout << "acceptance: " << (6 - run.failed) << "/6 criteria passed\n";
    return run.failed == 0 ? 0 : 1;
}
