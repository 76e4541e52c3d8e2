#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "galseq/chartab.hpp"
#include "galseq/config.hpp"
#include "galseq/declaw.hpp"
#include "galseq/groupdet.hpp"
#include "galseq/sequences.hpp"

namespace {

using nlohmann::ordered_json;
using namespace galseq;

std::string class_label(int j) { return "K" + std::to_string(j + 1); }

ordered_json poly_coeffs(const PolyQ& f) {
    ordered_json arr = ordered_json::array();
    for (int k = 0; k <= f.degree(); ++k) arr.push_back(f.coeff(k).str());
    return arr;
}

ordered_json class_summaries(const FiniteGroup& g) {
    ordered_json arr = ordered_json::array();
    for (int j = 0; j < g.class_count(); ++j) {
        int rep = g.class_representative(j);
        ordered_json c;
        c["label"] = class_label(j);
        c["representative"] = rep;
        c["size"] = g.conjugacy_classes()[static_cast<std::size_t>(j)].size();
        c["centralizer"] = g.centralizer_order(rep);
        arr.push_back(std::move(c));
    }
    return arr;
}

void emit_json(const ordered_json& out) { std::cout << out.dump(2) << "\n"; }

ordered_json prime_list(const std::vector<std::uint64_t>& v) {
    ordered_json arr = ordered_json::array();
    for (std::uint64_t p : v) arr.push_back(p);
    return arr;
}

std::string join_primes(const std::vector<std::uint64_t>& v) {
    if (v.empty()) return "none";
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += " ";
        out += std::to_string(v[i]);
    }
    return out;
}

// ---------------------------------------------------------------------------
// analyze

int cmd_analyze(const JobConfig& cfg, const std::string& format) {
    JobContext ctx = build_context(cfg);
    SequenceFamily fam = build_sequence_family(ctx.gg, ctx.xi);

    const FieldElement& det = fam.gm.det;
    const bool detRational = det.is_rational();
    // The determinant itself can be irrational (its square never is), so the
    // factored quantity is det Gamma when rational and det Gamma^2 otherwise.
    Rational factored = detRational ? det.to_rational() : (det * det).to_rational();
    TrialFactorization numF = trial_division(factored.num(), cfg.trialBound);
    TrialFactorization denF = trial_division(factored.den(), cfg.trialBound);
    auto primes_of = [](const TrialFactorization& tf) {
        std::vector<std::uint64_t> v;
        for (const Integer& q : tf.primes) v.push_back(to_u64(q));
        return v;
    };
    std::vector<std::uint64_t> numPrimes = primes_of(numF);
    std::vector<std::uint64_t> denPrimes = primes_of(denF);
    std::vector<std::string> unfactored;
    if (numF.cofactor != 1) unfactored.push_back(numF.cofactor.get_str());
    if (denF.cofactor != 1) unfactored.push_back(denF.cofactor.get_str());

    const FiniteGroup& g = ctx.gg.group;
    if (format == "json") {
        ordered_json out;
        out["command"] = "analyze";
        out["schemaVersion"] = 1;
        out["field"]["degree"] = ctx.field->degree();
        out["field"]["modulus"] = poly_coeffs(ctx.field->modulus());
        out["group"]["order"] = g.order();
        out["group"]["containedInAlternating"] = g.first_odd_element() < 0;
        out["group"]["classes"] = class_summaries(g);
        out["xi"] = ctx.xi.str("a");
        out["charpoly"] = poly_coeffs(fam.charpoly);
        out["detGamma"]["value"] = detRational ? det.to_rational().str() : det.str("a");
        out["detGamma"]["rational"] = detRational;
        out["detGamma"]["factoredQuantity"] = detRational ? "detGamma" : "detGammaSquared";
        out["detGamma"]["factoredValue"] = factored.str();
        out["detGamma"]["numeratorPrimes"] = prime_list(numPrimes);
        out["detGamma"]["denominatorPrimes"] = prime_list(denPrimes);
        out["detGamma"]["unfactored"] = unfactored;
        out["trialDivisionBound"] = cfg.trialBound;
        emit_json(out);
        return 0;
    }

    std::cout << "field degree: " << ctx.field->degree() << "\n";
    std::cout << "modulus: " << ctx.field->modulus().str("a") << "\n";
    std::cout << "group order: " << g.order() << "\n";
    std::cout << "contained in alternating: " << (g.first_odd_element() < 0 ? "yes" : "no")
              << "\n";
    std::cout << "classes:\n";
    for (int j = 0; j < g.class_count(); ++j) {
        int rep = g.class_representative(j);
        std::cout << "  " << class_label(j) << ": size "
                  << g.conjugacy_classes()[static_cast<std::size_t>(j)].size()
                  << ", representative " << rep << ", centralizer " << g.centralizer_order(rep)
                  << "\n";
    }
    std::cout << "xi: " << ctx.xi.str("a") << "\n";
    std::cout << "characteristic polynomial: " << fam.charpoly.str("X") << "\n";
    std::cout << "det Gamma: " << (detRational ? det.to_rational().str() : det.str("a")) << "\n";
    std::cout << "det Gamma rational: " << (detRational ? "yes" : "no") << "\n";
    std::cout << "factored quantity (" << (detRational ? "det Gamma" : "det Gamma squared")
              << "): " << factored.str() << "\n";
    std::cout << "numerator primes: " << join_primes(numPrimes) << "\n";
    std::cout << "denominator primes: " << join_primes(denPrimes) << "\n";
    std::cout << "unfactored: ";
    if (unfactored.empty()) {
        std::cout << "none\n";
    } else {
        for (std::size_t i = 0; i < unfactored.size(); ++i)
            std::cout << (i ? " " : "") << unfactored[i];
        std::cout << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------------------
// sequences

int cmd_sequences(const JobConfig& cfg, const std::string& format, int classSel, long from,
                  long to, const std::string& method) {
    JobContext ctx = build_context(cfg);
    SequenceFamily fam = build_sequence_family(ctx.gg, ctx.xi);
    const int r = fam.classes();
    if (classSel >= r) throw input_error("sequences: class index out of range");
    if (from < 0) throw input_error("sequences: --from must be nonnegative");
    if (to < 0) to = fam.degree() - 1;
    if (to < from) throw input_error("sequences: --to must be at least --from");

    std::vector<int> selected;
    if (classSel >= 0)
        selected.push_back(classSel);
    else
        for (int j = 0; j < r; ++j) selected.push_back(j);

    auto terms_for = [&](int j) {
        std::vector<Rational> terms;
        if (method == "matrix") {
            auto all = recurrence_terms(fam.initial_column(j), fam.charpoly,
                                        static_cast<std::size_t>(to) + 1);
            terms.assign(all.begin() + from, all.end());
        } else {
            for (long i = from; i <= to; ++i)
                terms.push_back(method == "direct" ? term_direct(fam, j, i)
                                                   : term_trace_form(fam, j, i));
        }
        return terms;
    };

    const FiniteGroup& g = ctx.gg.group;
    if (format == "json") {
        ordered_json out;
        out["command"] = "sequences";
        out["schemaVersion"] = 1;
        out["method"] = method;
        out["from"] = from;
        out["to"] = to;
        out["classes"] = ordered_json::array();
        for (int j : selected) {
            ordered_json c;
            c["label"] = class_label(j);
            c["index"] = j;
            c["representative"] = g.class_representative(j);
            c["size"] = g.conjugacy_classes()[static_cast<std::size_t>(j)].size();
            ordered_json arr = ordered_json::array();
            for (const Rational& t : terms_for(j)) arr.push_back(t.str());
            c["terms"] = std::move(arr);
            out["classes"].push_back(std::move(c));
        }
        emit_json(out);
        return 0;
    }

    for (int j : selected) {
        std::cout << "class " << class_label(j) << " (size "
                  << g.conjugacy_classes()[static_cast<std::size_t>(j)].size()
                  << ", representative " << g.class_representative(j) << ", method " << method
                  << ")\n";
        std::vector<Rational> terms = terms_for(j);
        for (std::size_t k = 0; k < terms.size(); ++k)
            std::cout << "  a[" << (from + static_cast<long>(k)) << "] = " << terms[k].str()
                      << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------------------
// classify

int cmd_classify(const JobConfig& cfg, const std::string& format, std::uint64_t maxPrime,
                 int jobs) {
    JobContext ctx = build_context(cfg);
    SequenceFamily fam = build_sequence_family(ctx.gg, ctx.xi);
    FrobeniusOracle oracle = build_frobenius_oracle(ctx.gg, ctx.xi, fam.charpoly);

    ClassifyOptions opt;
    opt.maxPrime = maxPrime;
    opt.jobs = jobs;
    opt.seed = cfg.factorSeed;
    opt.trialBound = cfg.trialBound;
    Classification c = classify_primes(fam, oracle, opt);

    std::vector<std::vector<std::uint64_t>> byClass(
        static_cast<std::size_t>(fam.classes()));
    for (const PrimeVerdict& v : c.verdicts)
        if (!v.skipped && v.consistent && v.sequenceClass >= 0)
            byClass[static_cast<std::size_t>(v.sequenceClass)].push_back(v.p);

    if (format == "json") {
        ordered_json out;
        out["command"] = "classify";
        out["schemaVersion"] = 1;
        out["maxPrime"] = maxPrime;
        out["verdicts"] = ordered_json::array();
        for (const PrimeVerdict& v : c.verdicts) {
            ordered_json e;
            e["p"] = v.p;
            e["skipped"] = v.skipped;
            if (v.skipped) e["reason"] = v.reason;
            e["residues"] = v.residues;
            e["sequenceClass"] = v.sequenceClass;
            e["oracleClass"] = v.oracleClass;
            if (v.oracleClass < 0 && !v.oracleReason.empty()) e["oracleReason"] = v.oracleReason;
            e["agree"] = v.agree;
            e["consistent"] = v.consistent;
            out["verdicts"].push_back(std::move(e));
        }
        out["byClass"] = ordered_json::object();
        for (std::size_t j = 0; j < byClass.size(); ++j)
            out["byClass"][class_label(static_cast<int>(j))] = prime_list(byClass[j]);
        out["exceptional"]["predicted"] = prime_list(c.report.predicted);
        ordered_json cof = ordered_json::array();
        for (const Integer& n : c.report.cofactors) cof.push_back(n.get_str());
        out["exceptional"]["unfactored"] = std::move(cof);
        out["exceptional"]["observed"] = prime_list(c.report.observed);
        emit_json(out);
        return 0;
    }

    for (const PrimeVerdict& v : c.verdicts) {
        std::cout << "p=" << v.p << ": ";
        if (v.skipped) {
            std::cout << "skipped (" << v.reason << ")\n";
            continue;
        }
        std::cout << (v.sequenceClass >= 0 ? class_label(v.sequenceClass) : std::string("-"));
        std::cout << " residues";
        for (long long rdg : v.residues) std::cout << " " << rdg;
        std::cout << " oracle "
                  << (v.oracleClass >= 0 ? class_label(v.oracleClass) : std::string("-"));
        std::cout << " agree " << (v.agree ? "yes" : "no");
        std::cout << " consistent " << (v.consistent ? "yes" : "no") << "\n";
    }
    for (std::size_t j = 0; j < byClass.size(); ++j)
        std::cout << "class " << class_label(static_cast<int>(j)) << ": "
                  << join_primes(byClass[j]) << "\n";
    std::cout << "predicted exceptional: " << join_primes(c.report.predicted) << "\n";
    std::cout << "unfactored cofactors: ";
    if (c.report.cofactors.empty()) {
        std::cout << "none\n";
    } else {
        for (std::size_t i = 0; i < c.report.cofactors.size(); ++i)
            std::cout << (i ? " " : "") << c.report.cofactors[i].get_str();
        std::cout << "\n";
    }
    std::cout << "observed exceptional: " << join_primes(c.report.observed) << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// chartab

int cmd_chartab(const JobConfig& cfg, const std::string& format) {
    JobContext ctx = build_context(cfg);
    CharacterTable t = character_table(ctx.gg.group);

    if (format == "json") {
        ordered_json out;
        out["command"] = "chartab";
        out["schemaVersion"] = 1;
        out["exponent"] = t.exponent;
        out["cyclotomicModulus"] = poly_coeffs(t.cyclo.field->modulus());
        out["classes"] = class_summaries(t.group);
        ordered_json degs = ordered_json::array();
        for (const Integer& d : t.degrees) degs.push_back(d.get_str());
        out["degrees"] = std::move(degs);
        out["rows"] = ordered_json::array();
        for (int i = 0; i < t.rows(); ++i) {
            ordered_json row = ordered_json::array();
            for (int j = 0; j < t.rows(); ++j)
                row.push_back(
                    t.values(static_cast<std::size_t>(i), static_cast<std::size_t>(j)).str("z"));
            out["rows"].push_back(std::move(row));
        }
        emit_json(out);
        return 0;
    }

    std::cout << "exponent: " << t.exponent << "\n";
    std::cout << "cyclotomic modulus: " << t.cyclo.field->modulus().str("z") << "\n";
    std::cout << "classes:";
    for (int j = 0; j < t.rows(); ++j)
        std::cout << " " << class_label(j) << "(size "
                  << t.group.conjugacy_classes()[static_cast<std::size_t>(j)].size() << ")";
    std::cout << "\n";
    for (int i = 0; i < t.rows(); ++i) {
        std::cout << "chi_" << (i + 1) << " [degree " << t.degrees[static_cast<std::size_t>(i)]
                  << "]:";
        for (int j = 0; j < t.rows(); ++j)
            std::cout << " "
                      << t.values(static_cast<std::size_t>(i), static_cast<std::size_t>(j))
                             .str("z");
        std::cout << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------------------
// verify

struct CheckReport {
    std::string name;
    bool ok = false;
    std::string detail;
};

class Verifier {
public:
    template <class F>
    void run(const std::string& name, F&& body) {
        CheckReport r;
        r.name = name;
        try {
            body();
            r.ok = true;
        } catch (const std::exception& e) {
            r.ok = false;
            r.detail = e.what();
        }
        checks_.push_back(std::move(r));
    }

    void skip(const std::string& name, const std::string& why) {
        checks_.push_back(CheckReport{name, false, why});
    }

    const std::vector<CheckReport>& checks() const { return checks_; }

    int failures() const {
        int n = 0;
        for (const auto& c : checks_)
            if (!c.ok) ++n;
        return n;
    }

private:
    std::vector<CheckReport> checks_;
};

[[noreturn]] void check_fail(const std::string& what) { throw error(what); }

void verify_group_axioms(const FiniteGroup& g) {
    const int n = g.order();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int v = g.op(i, j);
            if (v < 0 || v >= n) check_fail("composition table leaves the index range");
        }
    int e = g.identity();
    for (int i = 0; i < n; ++i) {
        if (g.op(e, i) != i || g.op(i, e) != i) check_fail("identity fails on element " +
                                                           std::to_string(i));
        if (g.op(i, g.inverse(i)) != e || g.op(g.inverse(i), i) != e)
            check_fail("inverse fails on element " + std::to_string(i));
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (g.op(g.op(i, j), k) != g.op(i, g.op(j, k)))
                    check_fail("associativity fails at (" + std::to_string(i) + "," +
                               std::to_string(j) + "," + std::to_string(k) + ")");
}

int cmd_verify(const JobConfig& cfg, const std::string& format) {
    Verifier ver;

    // Context construction is itself the first check: a corrupted
    // automorphism image or a non-normal field surfaces here.
    bool haveCtx = false;
    JobContext ctx;
    ver.run("context construction", [&] {
        ctx = build_context(cfg);
        haveCtx = true;
    });

    bool haveFam = false;
    SequenceFamily fam;
    if (!haveCtx) {
        ver.skip("group axioms", "not run: context unavailable");
    } else {
        const GaloisGroup& gg = ctx.gg;
        const FiniteGroup& g = gg.group;

        ver.run("group axioms", [&] { verify_group_axioms(g); });

        ver.run("automorphism images", [&] {
            for (const FieldElement& img : gg.images) verify_automorphism(ctx.field, img);
            for (std::size_t i = 0; i < gg.images.size(); ++i)
                for (std::size_t j = i + 1; j < gg.images.size(); ++j)
                    if (gg.images[i] == gg.images[j]) check_fail("duplicate automorphism image");
        });

        ver.run("class equation", [&] {
            std::size_t total = 0;
            for (const auto& cls : g.conjugacy_classes()) total += cls.size();
            if (total != static_cast<std::size_t>(g.order()))
                check_fail("class sizes do not add up to the group order");
            for (int j = 0; j < g.class_count(); ++j) {
                int rep = g.class_representative(j);
                if (static_cast<int>(g.conjugacy_classes()[static_cast<std::size_t>(j)].size()) *
                        g.centralizer_order(rep) !=
                    g.order())
                    check_fail("orbit-stabilizer fails for class " + class_label(j));
            }
        });

        ver.run("character table orthogonality", [&] {
            CharacterTable t = character_table(g);
            Integer sum = 0;
            for (const Integer& d : t.degrees) sum += d * d;
            if (sum != g.order()) check_fail("degree squares do not sum to the group order");
            Matrix<Rational> ind = indicator_matrix(t);
            for (std::size_t i = 0; i < ind.rows(); ++i)
                for (std::size_t j = 0; j < ind.cols(); ++j)
                    if (ind(i, j) != Rational(i == j ? 1 : 0))
                        check_fail("indicator expansion is not the Kronecker delta");
        });

        ver.run("sequence family construction", [&] {
            fam = build_sequence_family(gg, ctx.xi);
            haveFam = true;
        });

        if (!haveFam) {
            ver.skip("group matrix adjugate", "not run: sequence family unavailable");
            ver.skip("partials match adjugate", "not run: sequence family unavailable");
            ver.skip("sign action on partials", "not run: sequence family unavailable");
            ver.skip("theorem agreement", "not run: sequence family unavailable");
            ver.skip("indicator identity", "not run: sequence family unavailable");
            ver.skip("diagonalization", "not run: sequence family unavailable");
        } else {
            const int n = g.order();

            ver.run("group matrix adjugate", [&] {
                Matrix<FieldElement> prod = fam.gm.gamma * fam.gm.adjugate;
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) {
                        FieldElement want =
                            i == j ? fam.gm.det : ctx.field->zero();
                        if (prod(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) !=
                            want)
                            check_fail("Gamma * adjugate is not det * identity");
                    }
            });

            ver.run("partials match adjugate", [&] {
                for (int s = 0; s < n; ++s)
                    for (int t = 0; t < n; ++t)
                        if (fam.gm.adjugate(static_cast<std::size_t>(s),
                                            static_cast<std::size_t>(t)) !=
                            fam.gm.partials[static_cast<std::size_t>(g.op(t, g.inverse(s)))])
                            check_fail("adjugate entry disagrees with the matching partial");
            });

            ver.run("sign action on partials", [&] {
                for (int gam = 0; gam < n; ++gam)
                    for (int t = 0; t < n; ++t) {
                        FieldElement lhs = gg.apply(gam, fam.gm.partials[static_cast<std::size_t>(t)]);
                        FieldElement rhs = fam.gm.partials[static_cast<std::size_t>(g.op(gam, t))];
                        if (g.sign(gam) < 0) rhs = -rhs;
                        if (lhs != rhs)
                            check_fail("partial transforms with the wrong sign at gamma=" +
                                       std::to_string(gam) + ", tau=" + std::to_string(t));
                    }
            });

            if (n <= cfg.symbolicCap && n <= 6) {
                ver.run("symbolic determinant sign action", [&] {
                    SymbolicGroupDet sym = sym_group_det(g, cfg.symbolicCap);
                    std::vector<FieldElement> translates;
                    translates.reserve(static_cast<std::size_t>(n));
                    for (int i = 0; i < n; ++i) translates.push_back(gg.apply(i, ctx.xi));
                    for (int gam = 0; gam < n; ++gam) {
                        auto perm = left_translation_perm(g, gam);
                        MultiPoly moved = sym.det.relabel(perm);
                        MultiPoly want = g.sign(gam) < 0 ? -sym.det : sym.det;
                        if (moved != want) check_fail("symbolic determinant sign action fails");
                    }
                    for (int t = 0; t < n; ++t) {
                        FieldElement value = sym.partials[static_cast<std::size_t>(t)].eval(
                            translates, ctx.field->one());
                        if (value != fam.gm.partials[static_cast<std::size_t>(t)])
                            check_fail("symbolic partial disagrees with the adjugate value");
                    }
                });
            }

            ver.run("theorem agreement", [&] {
                for (int j = 0; j < fam.classes(); ++j)
                    for (long i = 0; i <= 20; ++i) {
                        Rational a = term_by_recurrence(fam, j, i);
                        Rational b = term_direct(fam, j, i);
                        Rational c = term_trace_form(fam, j, i);
                        if (a != b || b != c)
                            check_fail("term formulas disagree at class " + class_label(j) +
                                       ", index " + std::to_string(i));
                    }
            });

            ver.run("indicator identity", [&] {
                for (int j = 0; j < fam.classes(); ++j) {
                    std::vector<Rational> vals = class_function_values(fam, j);
                    for (int t = 0; t < n; ++t) {
                        Rational want(g.class_of(t) == j ? 1 : 0);
                        if (vals[static_cast<std::size_t>(t)] != want)
                            check_fail("class function is not the indicator of " +
                                       class_label(j));
                    }
                }
            });

            ver.run("diagonalization", [&] {
                Matrix<Rational> rq = companion_matrix(fam.charpoly);
                Matrix<FieldElement> r(static_cast<std::size_t>(n),
                                       static_cast<std::size_t>(n));
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j)
                        r(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
                            ctx.field->from_rational(
                                rq(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
                Matrix<FieldElement> lhs = r * fam.P;
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) {
                        FieldElement want =
                            fam.P(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) *
                            gg.apply(g.inverse(j), ctx.xi);
                        if (lhs(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) !=
                            want)
                            check_fail("companion matrix does not diagonalize through P");
                    }
            });
        }
    }

    const int failed = ver.failures();
    if (format == "json") {
        ordered_json out;
        out["command"] = "verify";
        out["schemaVersion"] = 1;
        out["checks"] = ordered_json::array();
        for (const CheckReport& c : ver.checks()) {
            ordered_json e;
            e["name"] = c.name;
            e["ok"] = c.ok;
            if (!c.ok) e["detail"] = c.detail;
            out["checks"].push_back(std::move(e));
        }
        out["passed"] = static_cast<int>(ver.checks().size()) - failed;
        out["failed"] = failed;
        emit_json(out);
    } else {
        for (const CheckReport& c : ver.checks()) {
            if (c.ok)
                std::cout << "ok   " << c.name << "\n";
            else
                std::cout << "FAIL " << c.name << ": " << c.detail << "\n";
        }
        std::cout << "verify: " << (ver.checks().size() - static_cast<std::size_t>(failed))
                  << "/" << ver.checks().size() << " checks passed\n";
    }
    return failed == 0 ? 0 : 1;
}

// ---------------------------------------------------------------------------

std::uint64_t env_trial_bound() {
    const char* raw = std::getenv("GALSEQ_TRIAL_BOUND");
    if (!raw) return 0;
    std::string s(raw);
    if (s.empty()) return 0;
    std::uint64_t value = 0;
    try {
        std::size_t used = 0;
        value = std::stoull(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
    } catch (const std::exception&) {
        throw input_error("environment: GALSEQ_TRIAL_BOUND must be a positive integer");
    }
    if (value < 2) throw input_error("environment: GALSEQ_TRIAL_BOUND must be at least 2");
    return value;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"decomposition-law sequences for Galois number fields"};
    app.require_subcommand(1);

    std::string cfgPath;
    std::string format; // empty = take the config's choice

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("config", cfgPath, "job configuration (JSON)")->required();
        sub->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"json", "table"}));
    };

    CLI::App* analyze = app.add_subcommand(
        "analyze", "field/group overview and det Gamma factorization");
    add_common(analyze);

    CLI::App* sequences = app.add_subcommand("sequences", "print sequence terms");
    add_common(sequences);
    int classSel = -1;
    long from = 0;
    long to = -1;
    std::string method = "matrix";
    sequences->add_option("--class", classSel, "restrict to one class (0-based index)");
    sequences->add_option("--from", from, "first index (default 0)");
    sequences->add_option("--to", to, "last index (default degree-1)");
    sequences->add_option("--method", method, "term computation method")
        ->check(CLI::IsMember({"matrix", "direct", "trace"}));

    CLI::App* classify = app.add_subcommand("classify", "classify primes by residues");
    add_common(classify);
    std::uint64_t maxPrime = 0;
    int jobs = 1;
    classify->add_option("--max-prime", maxPrime, "classify primes up to this bound")
        ->required();
    classify->add_option("--jobs", jobs, "worker threads (default 1)");

    CLI::App* chartab = app.add_subcommand("chartab", "print the character table");
    add_common(chartab);

    CLI::App* verify = app.add_subcommand("verify", "run the invariant checks");
    add_common(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        JobConfig cfg = load_config_file(cfgPath);
        if (!cfg.trialBoundSet) {
            std::uint64_t env = env_trial_bound();
            if (env) cfg.trialBound = env;
        }
        std::string fmt = format.empty() ? cfg.format : format;

        if (app.got_subcommand(analyze)) return cmd_analyze(cfg, fmt);
        if (app.got_subcommand(sequences))
            return cmd_sequences(cfg, fmt, classSel, from, to, method);
        if (app.got_subcommand(classify)) {
            if (jobs < 1) throw input_error("classify: --jobs must be positive");
            return cmd_classify(cfg, fmt, maxPrime, jobs);
        }
        if (app.got_subcommand(chartab)) return cmd_chartab(cfg, fmt);
        if (app.got_subcommand(verify)) return cmd_verify(cfg, fmt);
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
